//! Partial commutative monoids: a carrier together with a partial summation
//! on indexed families.
//!
//! A [`Pcm`] wraps a [`SumOracle`], the instance rule deciding which
//! families are summable and what they sum to. The oracle sees only
//! families whose entries already lie in its [`Carrier`].

mod carrier;
mod element;
mod hom;
mod instances;
mod unit_ball;

use std::fmt;
use std::sync::Arc;

use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::family::IndexedFamily;
use crate::report::Grid;

pub use carrier::{Carrier, ScalarKind};
pub use element::{format_complex, Element, ElementError, Matrix, PartialFn, Relation, Residue};
pub use hom::{check_hom, PcmHom};
pub use instances::{
    make_abs_convergence_pcm, make_finite_families_pcm, make_k_bounded_pcm, make_partial_fn_pcm,
    make_partial_injection_pcm, make_product_pcm, make_relations_pcm, make_unit_ball_pcm, CustomMonoid, FnMode,
    Monoid, Norm,
};
pub use unit_ball::{sum_of_square_roots_cmp_one, vector_norm_cmp};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum PcmError {
    #[error("entry `{label}` is a {found}, expected an element of {expected}")]
    CarrierMismatch { label: String, expected: String, found: String },
    #[error("entry `{0}` is not a finite number")]
    NonFinite(String),
    #[error("monoid is not commutative: {0}")]
    NotCommutative(String),
    #[error("monoid is not associative: {0}")]
    NotAssociative(String),
    #[error("monoid unit is not neutral: {0}")]
    NotUnital(String),
    #[error(transparent)]
    Element(#[from] ElementError),
    #[error("invalid instance parameter: {0}")]
    BadParameter(String),
    /// An oracle contradicted its own axioms; signals a faulty instance.
    #[error("inconsistent instance: {0}")]
    Inconsistent(String),
}

/// Outcome of asking a PCM to sum a family.
#[derive(Debug, Clone, PartialEq)]
pub enum SumResult {
    Summable(Element),
    NotSummable,
}

impl SumResult {
    pub fn is_summable(&self) -> bool {
        matches!(self, SumResult::Summable(_))
    }

    pub fn value(&self) -> Option<&Element> {
        match self {
            SumResult::Summable(v) => Some(v),
            SumResult::NotSummable => None,
        }
    }

    pub fn into_value(self) -> Option<Element> {
        match self {
            SumResult::Summable(v) => Some(v),
            SumResult::NotSummable => None,
        }
    }

    /// Same summability status and sums within `eps`.
    pub fn close_to(&self, other: &SumResult, eps: f64) -> bool {
        match (self, other) {
            (SumResult::Summable(a), SumResult::Summable(b)) => a.close_to(b, eps),
            (SumResult::NotSummable, SumResult::NotSummable) => true,
            _ => false,
        }
    }
}

impl fmt::Display for SumResult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SumResult::Summable(v) => write!(f, "{v}"),
            SumResult::NotSummable => f.write_str("NOT SUMMABLE"),
        }
    }
}

/// The summation rule of one PCM instance.
pub trait SumOracle: Send + Sync {
    fn carrier(&self) -> &Carrier;

    /// Decides summability of `fam`, whose entries all lie in the carrier.
    fn sum(&self, fam: &IndexedFamily<Element>) -> Result<SumResult, PcmError>;

    /// Sample elements for law checking. Defaults to the carrier grid.
    fn grid(&self, rng: &mut ChaCha8Rng) -> Grid {
        self.carrier().grid(rng)
    }
}

/// A partial commutative monoid.
#[derive(Clone)]
pub struct Pcm {
    name: Arc<str>,
    oracle: Arc<dyn SumOracle>,
    zero: Element,
}

impl fmt::Debug for Pcm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Pcm").field("name", &self.name).field("carrier", self.oracle.carrier()).finish()
    }
}

impl Pcm {
    /// Wraps an oracle. Fails if the oracle does not sum the empty family.
    pub fn new(name: impl Into<String>, oracle: Arc<dyn SumOracle>) -> Result<Self, PcmError> {
        let name: String = name.into();
        let zero = oracle
            .sum(&IndexedFamily::empty())?
            .into_value()
            .ok_or_else(|| PcmError::BadParameter(format!("{name}: empty family is not summable")))?;
        Ok(Pcm { name: name.into(), oracle, zero })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn carrier(&self) -> &Carrier {
        self.oracle.carrier()
    }

    pub fn oracle(&self) -> &Arc<dyn SumOracle> {
        &self.oracle
    }

    /// The sum of the empty family.
    pub fn zero(&self) -> &Element {
        &self.zero
    }

    pub fn grid(&self, rng: &mut ChaCha8Rng) -> Grid {
        self.oracle.grid(rng)
    }

    pub fn sum(&self, fam: &IndexedFamily<Element>) -> Result<SumResult, PcmError> {
        let carrier = self.oracle.carrier();
        for (label, v) in fam.iter() {
            if !carrier.contains(v) {
                return Err(PcmError::CarrierMismatch {
                    label: label.to_string(),
                    expected: carrier.to_string(),
                    found: v.kind().to_string(),
                });
            }
        }
        self.oracle.sum(fam)
    }

    /// Binary sum `a + b`, when defined.
    pub fn add(&self, a: &Element, b: &Element) -> Result<SumResult, PcmError> {
        self.sum(&IndexedFamily::from_values([a.clone(), b.clone()]))
    }

    pub fn renamed(&self, name: impl Into<String>) -> Pcm {
        Pcm { name: name.into().into(), oracle: self.oracle.clone(), zero: self.zero.clone() }
    }
}

/// Shorthand for `p.zero()`.
pub fn zero(p: &Pcm) -> Element {
    p.zero().clone()
}

/// Shorthand for `p.sum(fam)`.
pub fn sum(p: &Pcm, fam: &IndexedFamily<Element>) -> Result<SumResult, PcmError> {
    p.sum(fam)
}
