//! Truncated Cauchy products of power series, the `(ℕ,+)` index case.

use std::fmt;
use std::sync::Arc;

use num::{BigRational, One, Signed, Zero};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SeriesError {
    #[error("stream has infinite support and no declared geometric bound")]
    UnboundedStream,
    #[error("invalid bound: {0}")]
    InvalidBound(String),
    #[error("coefficient {0} exceeds the declared bound")]
    BoundViolated(usize),
}

type Rule = Arc<dyn Fn(usize) -> BigRational + Send + Sync>;

/// A coefficient sequence `a_0, a_1, ...`.
#[derive(Clone)]
pub enum CoeffStream {
    /// Finite support; coefficients past the end are zero.
    Finite(Vec<BigRational>),
    /// `|a_n| <= c * r^n` with `0 <= r < 1`.
    Bounded { rule: Rule, c: BigRational, r: BigRational },
    Unbounded(Rule),
}

impl fmt::Debug for CoeffStream {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CoeffStream::Finite(v) => write!(f, "Finite({v:?})"),
            CoeffStream::Bounded { c, r, .. } => write!(f, "Bounded(c={c}, r={r})"),
            CoeffStream::Unbounded(_) => write!(f, "Unbounded"),
        }
    }
}

impl CoeffStream {
    pub fn bounded(
        rule: impl Fn(usize) -> BigRational + Send + Sync + 'static,
        c: BigRational,
        r: BigRational,
    ) -> Result<Self, SeriesError> {
        if c.is_negative() {
            return Err(SeriesError::InvalidBound(format!("C = {c} is negative")));
        }
        if r.is_negative() || r >= BigRational::one() {
            return Err(SeriesError::InvalidBound(format!("r = {r} is outside [0,1)")));
        }
        Ok(CoeffStream::Bounded { rule: Arc::new(rule), c, r })
    }

    /// `a_n = scale * ratio^n`, bounded by `|scale| |ratio|^n`.
    pub fn geometric(scale: BigRational, ratio: BigRational) -> Result<Self, SeriesError> {
        let (s, q) = (scale.clone(), ratio.clone());
        Self::bounded(move |n| &s * pow(&q, n), scale.abs(), ratio.abs())
    }

    pub fn coeff(&self, n: usize) -> BigRational {
        match self {
            CoeffStream::Finite(v) => v.get(n).cloned().unwrap_or_else(BigRational::zero),
            CoeffStream::Bounded { rule, .. } | CoeffStream::Unbounded(rule) => rule(n),
        }
    }
}

fn pow(q: &BigRational, n: usize) -> BigRational {
    num::pow::pow(q.clone(), n)
}

/// Coefficients `0..=N` of a product, with a bound on `Σ_{n>N} |c_n|`.
#[derive(Debug, Clone, PartialEq)]
pub struct SeriesProduct {
    pub coeffs: Vec<BigRational>,
    /// Exact for two finite streams; otherwise the `(n+1) r^n` majorant.
    pub tail_bound: BigRational,
}

/// `C` and `r` with `|a_n| <= C r^n`; a finite stream is bounded against
/// the given positive `r`, or `r = 1/2`.
fn bound_of(s: &CoeffStream, r_hint: Option<&BigRational>) -> (BigRational, BigRational) {
    match s {
        CoeffStream::Bounded { c, r, .. } => (c.clone(), r.clone()),
        CoeffStream::Finite(v) => {
            let r = r_hint
                .filter(|r| r.is_positive())
                .cloned()
                .unwrap_or_else(|| BigRational::new(1.into(), 2.into()));
            let c = v
                .iter()
                .enumerate()
                .map(|(n, a)| a.abs() / pow(&r, n))
                .max()
                .unwrap_or_else(BigRational::zero);
            (c, r)
        }
        CoeffStream::Unbounded(_) => unreachable!("rejected earlier"),
    }
}

/// `Σ_{n>N} (n+1) r^n = 1/(1-r)^2 - Σ_{n<=N} (n+1) r^n`.
fn majorant_tail(r: &BigRational, order: usize) -> BigRational {
    let one = BigRational::one();
    let total = &one / ((&one - r) * (&one - r));
    let mut head = BigRational::zero();
    let mut rn = BigRational::one();
    for n in 0..=order {
        head += BigRational::from_integer((n + 1).into()) * &rn;
        rn *= r;
    }
    total - head
}

/// The Cauchy product `c_n = Σ_{n=y+x} q(y) p(x)` up to order `N`.
pub fn series_convolve(p: &CoeffStream, q: &CoeffStream, order: usize) -> Result<SeriesProduct, SeriesError> {
    if matches!(p, CoeffStream::Unbounded(_)) || matches!(q, CoeffStream::Unbounded(_)) {
        return Err(SeriesError::UnboundedStream);
    }
    let pc: Vec<BigRational> = (0..=order).map(|n| p.coeff(n)).collect();
    let qc: Vec<BigRational> = (0..=order).map(|n| q.coeff(n)).collect();
    for s in [p, q] {
        if let CoeffStream::Bounded { c, r, .. } = s {
            for n in 0..=order {
                if s.coeff(n).abs() > c * pow(r, n) {
                    return Err(SeriesError::BoundViolated(n));
                }
            }
        }
    }
    let coeffs: Vec<BigRational> = (0..=order)
        .map(|n| (0..=n).map(|x| &qc[n - x] * &pc[x]).fold(BigRational::zero(), |acc, t| acc + t))
        .collect();
    let tail_bound = match (p, q) {
        (CoeffStream::Finite(a), CoeffStream::Finite(b)) => {
            let top = (a.len() + b.len()).saturating_sub(1);
            (order + 1..top)
                .map(|n| {
                    (0..=n)
                        .filter(|&x| x < a.len() && n - x < b.len())
                        .map(|x| &b[n - x] * &a[x])
                        .fold(BigRational::zero(), |acc, t| acc + t)
                        .abs()
                })
                .fold(BigRational::zero(), |acc, t| acc + t)
        }
        _ => {
            let hint = [p, q].into_iter().find_map(|s| match s {
                CoeffStream::Bounded { r, .. } => Some(r.clone()),
                _ => None,
            });
            let (cp, rp) = bound_of(p, hint.as_ref());
            let (cq, rq) = bound_of(q, hint.as_ref());
            let r = rp.max(rq);
            cp * cq * majorant_tail(&r, order)
        }
    };
    Ok(SeriesProduct { coeffs, tail_bound })
}
