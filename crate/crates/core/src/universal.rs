//! The substitution homomorphism out of a one-object Cauchy product `A[M]`,
//! its discrete Fourier instance, and the object obstruction for several
//! objects.

use std::f64::consts::PI;
use std::sync::Arc;

use num::{BigInt, Complex, Signed, ToPrimitive};
use rand::Rng;
use thiserror::Error;

use crate::cauchy::{cauchy_product, CauchyArrow, CauchyCategory};
use crate::family::{IndexedFamily, Label};
use crate::fincat::{FinCategory, ObjId};
use crate::pcm::{Element, ScalarKind};
use crate::pcmcat::{semiring_category, Object, PcmCatError, PcmCategory, PcmFunctor};
use crate::report::{CheckConfig, Report, Tally};

/// Largest prime accepted by [`dft_substitute`]; the index `ℤ_p` is
/// validated with a cubic associativity scan.
pub const MAX_DFT_PRIME: u64 = 101;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum UniversalError {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("residue {s} is not in 1..{p}")]
    BadResidue { s: u64, p: u64 },
    #[error("prime {0} exceeds {MAX_DFT_PRIME}")]
    TooLarge(u64),
    #[error("coefficient {0} is negative")]
    NegativeCoefficient(BigInt),
    #[error("substitution data: {0}")]
    Invalid(String),
    #[error("not summable: {0}")]
    NotSummable(String),
    #[error(transparent)]
    PcmCat(#[from] PcmCatError),
}

/// A semiring map `f: A -> B` and a monoid map `g: M -> (B, ·)`.
#[derive(Clone)]
pub struct SubstitutionData {
    /// The one-object product `A[M]`.
    pub source: Arc<CauchyCategory>,
    /// Scalar kind of `A`, used to sample coefficients.
    pub scalar: ScalarKind,
    /// `f` as a functor between the one-object categories `A` and `B`.
    pub f: PcmFunctor,
    /// `g(m)` for every `m` of `M`, in hom-set order.
    pub g: Vec<Element>,
}

impl SubstitutionData {
    pub fn new(
        source: Arc<CauchyCategory>,
        scalar: ScalarKind,
        f: PcmFunctor,
        g: Vec<Element>,
    ) -> Result<Self, UniversalError> {
        let data = SubstitutionData { source, scalar, f, g };
        let (a, u) = data.point()?;
        if data.f.target.objects().len() != 1 {
            return Err(UniversalError::Invalid("target must have one object".into()));
        }
        if data.g.len() != data.source.index().hom(u, u).len() {
            return Err(UniversalError::Invalid(format!(
                "g has {} values for {} monoid elements",
                data.g.len(),
                data.source.index().hom(u, u).len()
            )));
        }
        data.f.on_object(&a)?;
        Ok(data)
    }

    fn point(&self) -> Result<(Object, ObjId), UniversalError> {
        let objects = self.source.objects();
        if objects.len() != 1 {
            return Err(UniversalError::Invalid("A[M] must have exactly one object".into()));
        }
        Ok(self.source.split(&objects[0])?)
    }

    fn b_object(&self) -> Object {
        self.f.target.objects().remove(0)
    }

    /// `f` preserves 0, 1, + and · on `samples` random pairs of `A`, and `g`
    /// preserves the unit and all products of `M`.
    pub fn validate(&self, samples: usize, cfg: &CheckConfig) -> Report {
        let mut t = Tally::new("substitution_data");
        let Ok((a, u)) = self.point() else {
            t.fail("A[M] must have exactly one object", None);
            return t.finish();
        };
        let b = self.b_object();
        let base = self.source.base();
        let tol = cfg.tolerance;
        let fa = |x: &Element| self.f.on_arrow(&a, &a, x);
        let one_b = self.f.target.identity(&b);
        let zero_b = self.f.target.hom(&b, &b).map(|h| h.zero().clone());
        let (Ok(one_b), Ok(zero_b)) = (one_b, zero_b) else {
            t.fail("target has no identity or zero", None);
            return t.finish();
        };
        t.case();
        match (fa(&self.scalar.zero()), fa(&self.scalar.one())) {
            (Ok(z), Ok(o)) if z.close_to(&zero_b, tol) && o.close_to(&one_b, tol) => {}
            _ => t.fail("f does not preserve 0 and 1", None),
        }
        let mut rng = cfg.rng("substitution_data");
        for _ in 0..samples {
            if t.failed() {
                break;
            }
            t.case();
            let (x, y) = (self.scalar.from_i64(rng.gen_range(-3..=3)), self.scalar.from_i64(rng.gen_range(-3..=3)));
            let ok = (|| -> Result<bool, PcmCatError> {
                let sum = x.add(&y)?;
                let prod = base.compose(&a, &a, &a, &x, &y)?;
                let (fx, fy) = (fa(&x)?, fa(&y)?);
                Ok(fa(&sum)?.close_to(&fx.add(&fy)?, tol)
                    && fa(&prod)?.close_to(&self.f.target.compose(&b, &b, &b, &fx, &fy)?, tol))
            })();
            if !matches!(ok, Ok(true)) {
                t.fail(format!("f is not a semiring map at {x}, {y}"), None);
            }
        }
        let index = self.source.index();
        let hom = index.hom(u, u);
        t.case();
        if !self.g[index.hom_position(index.identity(u))].close_to(&one_b, tol) {
            t.fail("g does not preserve the unit", None);
        }
        for (i, &m) in hom.iter().enumerate() {
            for (j, &n) in hom.iter().enumerate() {
                if t.failed() {
                    break;
                }
                t.case();
                let mn = index.compose(m, n).expect("total");
                let prod = self.f.target.compose(&b, &b, &b, &self.g[i], &self.g[j]);
                if !matches!(prod, Ok(p) if p.close_to(&self.g[index.hom_position(mn)], tol)) {
                    t.fail(
                        format!("g({}{}) != g({})g({})", index.arrow_name(m), index.arrow_name(n), index.arrow_name(m), index.arrow_name(n)),
                        None,
                    );
                }
            }
        }
        t.finish()
    }
}

/// `h(α) = Σ_m f(α(m)) g(m)`, summed by the oracle of `B`.
pub fn substitution_hom(data: &SubstitutionData, alpha: &CauchyArrow) -> Result<Element, UniversalError> {
    let (a, u) = data.point()?;
    let b = data.b_object();
    let index = data.source.index();
    let hom = index.hom(u, u);
    if alpha.coeffs.len() != hom.len() {
        return Err(PcmCatError::NotInHom(alpha.src.to_string(), alpha.tgt.to_string()).into());
    }
    let mut terms = Vec::with_capacity(hom.len());
    for ((&m, c), gm) in hom.iter().zip(&alpha.coeffs).zip(&data.g) {
        let fc = data.f.on_arrow(&a, &a, c)?;
        terms.push((Label::new(index.arrow_name(m)), data.f.target.compose(&b, &b, &b, &fc, gm)?));
    }
    let fam = IndexedFamily::new(terms).map_err(PcmCatError::from)?;
    data.f
        .target
        .hom(&b, &b)?
        .sum(&fam)
        .map_err(PcmCatError::from)?
        .into_value()
        .ok_or_else(|| UniversalError::NotSummable(format!("{} rejects the substituted family {fam}", data.f.target.name())))
}

fn is_prime(p: u64) -> bool {
    p >= 2 && (2..).take_while(|d| d * d <= p).all(|d| !p.is_multiple_of(d))
}

/// `ι: ℤ -> ℂ`.
pub fn complex_inclusion() -> Result<PcmFunctor, PcmCatError> {
    let z: Arc<dyn PcmCategory> = Arc::new(semiring_category(ScalarKind::Int)?);
    let c: Arc<dyn PcmCategory> = Arc::new(semiring_category(ScalarKind::Complex)?);
    Ok(PcmFunctor::new("iota", z, c, |o| Ok(o.clone()), |x, y, e| match e {
        Element::Int(v) => Ok(Element::complex(v.to_f64().unwrap_or(f64::NAN), 0.0)),
        _ => Err(PcmCatError::NotInHom(x.to_string(), y.to_string())),
    }))
}

/// The character `m ↦ e^{2πi ms/n}` of `ℤ_n`, in the order `z0, z1, ...`.
pub fn character(n: u64, s: u64) -> Vec<Element> {
    (0..n)
        .map(|m| {
            let theta = 2.0 * PI * ((m * s) % n) as f64 / n as f64;
            Element::Complex(Complex::from_polar(1.0, theta))
        })
        .collect()
}

/// Substitution data for `ℤ[ℤ_p] -> ℂ` with `f = ι` and `g = χ_s`.
pub fn dft_data(p: u64, s: u64) -> Result<SubstitutionData, UniversalError> {
    if p > MAX_DFT_PRIME {
        return Err(UniversalError::TooLarge(p));
    }
    if !is_prime(p) {
        return Err(UniversalError::NotPrime(p));
    }
    if s == 0 || s >= p {
        return Err(UniversalError::BadResidue { s, p });
    }
    let source = cauchy_product(Arc::new(semiring_category(ScalarKind::Int)?), Arc::new(FinCategory::cyclic(p as usize)))?;
    SubstitutionData::new(source, ScalarKind::Int, complex_inclusion()?, character(p, s))
}

/// `Σ_m α(m) e^{2πi ms/p}` for nonnegative integer coefficients.
pub fn dft_substitute(p: u64, s: u64, alpha: &[BigInt]) -> Result<Complex<f64>, UniversalError> {
    let data = dft_data(p, s)?;
    if let Some(c) = alpha.iter().find(|c| c.is_negative()) {
        return Err(UniversalError::NegativeCoefficient(c.clone()));
    }
    if alpha.len() != p as usize {
        return Err(UniversalError::Invalid(format!("expected {p} coefficients, got {}", alpha.len())));
    }
    let obj = data.source.objects().remove(0);
    let coeffs = alpha.iter().map(|c| Element::Int(c.clone())).collect();
    let arrow = data.source.arrow(&obj, &obj, coeffs)?;
    match substitution_hom(&data, &arrow)? {
        Element::Complex(z) => Ok(z),
        other => Err(UniversalError::Invalid(format!("expected a complex value, got {other}"))),
    }
}

fn random_arrow(data: &SubstitutionData, bound: u64, rng: &mut impl Rng) -> Result<CauchyArrow, UniversalError> {
    let obj = data.source.objects().remove(0);
    let len = data.g.len();
    let coeffs = (0..len).map(|_| data.scalar.from_i64(rng.gen_range(0..=bound as i64))).collect();
    Ok(data.source.arrow(&obj, &obj, coeffs)?)
}

/// Samples pairs `α, β` with coefficients in `0..=bound` and checks that `h`
/// is additive and multiplicative, commutes with `η` and `γ`, and agrees
/// with the value forced by the decomposition `α = Σ_m η(α(m)) γ(m)`.
/// Uniqueness is thereby checked on samples only.
pub fn check_hom_property(data: &SubstitutionData, trials: usize, bound: u64, cfg: &CheckConfig) -> Report {
    let name = format!("hom_property[{}->{}]", data.source.name(), data.f.target.name());
    let mut t = Tally::new(name);
    let tol = cfg.tolerance;
    let mut rng = cfg.rng("hom_property");
    let body = |t: &mut Tally, rng: &mut rand_chacha::ChaCha8Rng| -> Result<(), UniversalError> {
        let (a, u) = data.point()?;
        let b = data.b_object();
        let cc = &data.source;
        let target = &data.f.target;
        let h = |x: &CauchyArrow| substitution_hom(data, x);
        let hom = cc.index().hom(u, u).to_vec();

        for k in -3..=3 {
            let x = data.scalar.from_i64(k);
            t.case();
            let lhs = h(&cc.eta(&a, &a, &x, u)?)?;
            if !lhs.close_to(&data.f.on_arrow(&a, &a, &x)?, tol) {
                t.fail(format!("h(eta({x})) = {lhs} differs from f({x})"), None);
                return Ok(());
            }
        }
        for (i, &m) in hom.iter().enumerate() {
            t.case();
            let lhs = h(&cc.gamma(&a, m)?)?;
            if !lhs.close_to(&data.g[i], tol) {
                t.fail(format!("h(gamma({})) = {lhs} differs from g", cc.index().arrow_name(m)), None);
                return Ok(());
            }
        }
        let hom_b = target.hom(&b, &b)?;
        for _ in 0..trials {
            let (x, y) = (random_arrow(data, bound, rng)?, random_arrow(data, bound, rng)?);
            let (hx, hy) = (h(&x)?, h(&y)?);
            t.case();
            let pair = IndexedFamily::from_values([x.clone(), y.clone()]);
            let sum = cc.sum_arrows(&x.src, &x.tgt, &pair)?.into_value();
            let sum_b = hom_b.sum(&IndexedFamily::from_values([hx.clone(), hy.clone()])).map_err(PcmCatError::from)?;
            if let (Some(s), Some(sb)) = (sum, sum_b.into_value()) {
                let Element::Coeffs(coeffs) = s else { unreachable!() };
                let hs = h(&CauchyArrow { src: x.src.clone(), tgt: x.tgt.clone(), coeffs })?;
                if !hs.close_to(&sb, tol) {
                    t.fail(format!("additivity: h({x:?}+{y:?}) = {hs}, h+h = {sb}", x = x.coeffs, y = y.coeffs), None);
                    return Ok(());
                }
            }
            t.case();
            let prod = cc.convolve(&y, &x)?;
            let hp = h(&prod)?;
            let rhs = target.compose(&b, &b, &b, &hy, &hx)?;
            if !hp.close_to(&rhs, tol) {
                t.fail(
                    format!("multiplicativity: h({:?}*{:?}) = {hp}, h*h = {rhs}", y.coeffs, x.coeffs),
                    None,
                );
                return Ok(());
            }
            t.case();
            let mut parts = Vec::with_capacity(hom.len());
            let mut forced = Vec::with_capacity(hom.len());
            for (i, &m) in hom.iter().enumerate() {
                let label = Label::new(cc.index().arrow_name(m));
                parts.push((label.clone(), cc.convolve(&cc.eta(&a, &a, &x.coeffs[i], u)?, &cc.gamma(&a, m)?)?));
                let fx = data.f.on_arrow(&a, &a, &x.coeffs[i])?;
                forced.push((label, target.compose(&b, &b, &b, &fx, &data.g[i])?));
            }
            let parts = IndexedFamily::new(parts).map_err(PcmCatError::from)?;
            let rebuilt = cc.sum_arrows(&x.src, &x.tgt, &parts)?;
            let forced = hom_b.sum(&IndexedFamily::new(forced).map_err(PcmCatError::from)?).map_err(PcmCatError::from)?;
            let agrees = rebuilt.value() == Some(&x.element()) && forced.value().is_some_and(|v| v.close_to(&hx, tol));
            if !agrees {
                t.fail(format!("uniqueness: {:?} is not pinned down by eta and gamma", x.coeffs), None);
                return Ok(());
            }
        }
        Ok(())
    };
    if let Err(e) = body(&mut t, &mut rng) {
        t.fail(e.to_string(), None);
    }
    t.finish()
}

/// Outcome of [`object_obstruction`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Obstruction {
    /// All forced equalities hold; the common image.
    Consistent(Option<String>),
    /// `Γ(x) != Δ(u)`.
    Obstructed { x: String, u: String, gamma_x: String, delta_u: String },
}

/// A forced equality `Γ(x) = Δ(u)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ForcedEquality {
    pub x: String,
    pub u: String,
    pub gamma_x: String,
    pub delta_u: String,
}

impl ForcedEquality {
    pub fn holds(&self) -> bool {
        self.gamma_x == self.delta_u
    }
}

/// A functor out of `C[D]` extending `Γ` along `η` and `Δ` along `γ` must
/// send `(X,U)` to both `Γ(X)` and `Δ(U)`. Lists those equalities and
/// decides whether they can all hold.
pub fn object_obstruction(gamma: &[(String, String)], delta: &[(String, String)]) -> (Vec<ForcedEquality>, Obstruction) {
    let mut forced = Vec::with_capacity(gamma.len() * delta.len());
    for (x, gx) in gamma {
        for (u, du) in delta {
            forced.push(ForcedEquality { x: x.clone(), u: u.clone(), gamma_x: gx.clone(), delta_u: du.clone() });
        }
    }
    let verdict = match forced.iter().find(|e| !e.holds()) {
        Some(e) => Obstruction::Obstructed {
            x: e.x.clone(),
            u: e.u.clone(),
            gamma_x: e.gamma_x.clone(),
            delta_u: e.delta_u.clone(),
        },
        None => Obstruction::Consistent(forced.first().map(|e| e.gamma_x.clone())),
    };
    (forced, verdict)
}
