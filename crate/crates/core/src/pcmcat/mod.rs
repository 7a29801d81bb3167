//! PCM-categories: categories whose hom-sets carry PCMs, with composition
//! distributing over summation.
//!
//! A [`PcmCategory`] is given by its objects, one [`Pcm`] per hom-set, and
//! arrow composition on [`Element`]s. The checkers in this module test
//! strong distributivity, the laws derived from it, zero absorption, the
//! category laws and PCM-functors on sampled data.

mod checks;
mod descriptor;
mod instances;

use std::fmt;
use std::sync::Arc;

use rand::seq::SliceRandom;
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::family::FamilyError;
use crate::fincat::FinCatError;
use crate::pcm::{Element, ElementError, Pcm, PcmError};

pub use checks::{
    check_category_laws, check_pcm_functor, check_strong_distributivity, check_zero_absorption, derived_laws,
    product_family, MONOID_SUM_BOUND,
};
pub use descriptor::parse_base;
#[cfg(test)]
pub(crate) use checks::sd_violation;
pub use instances::{
    matrix_category, partial_fn_category, partial_injection_category, pcm_product, relation_category,
    semiring_category, unit_ball_category, MatrixCategory, ProductPcmCategory, SemiringCategory, SetCategory,
    UnitBallCategory,
};

/// An object of a PCM-category. Objects of Cauchy products and of product
/// categories are pairs.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Object {
    Named(String),
    Pair(Box<Object>, Box<Object>),
}

impl Object {
    pub fn named(name: impl Into<String>) -> Self {
        Object::Named(name.into())
    }

    pub fn pair(a: Object, b: Object) -> Self {
        Object::Pair(Box::new(a), Box::new(b))
    }
}

impl fmt::Display for Object {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Object::Named(n) => f.write_str(n),
            Object::Pair(a, b) => write!(f, "({a},{b})"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum PcmCatError {
    #[error("unknown object `{0}`")]
    UnknownObject(String),
    #[error("arrow is not in hom({0}, {1})")]
    NotInHom(String, String),
    #[error("not summable: {0}")]
    NotSummable(String),
    #[error("invalid base descriptor `{0}`: {1}")]
    BadDescriptor(String, String),
    #[error(transparent)]
    Element(#[from] ElementError),
    #[error(transparent)]
    Pcm(#[from] PcmError),
    #[error(transparent)]
    FinCat(#[from] FinCatError),
    #[error(transparent)]
    Family(#[from] FamilyError),
}

/// A category enriched with a PCM on every hom-set.
pub trait PcmCategory: Send + Sync {
    fn name(&self) -> String;

    fn objects(&self) -> Vec<Object>;

    /// The PCM on `hom(x, y)`.
    fn hom(&self, x: &Object, y: &Object) -> Result<Pcm, PcmCatError>;

    fn identity(&self, x: &Object) -> Result<Element, PcmCatError>;

    /// `g ∘ f` for `f: x -> y` and `g: y -> z`.
    fn compose(&self, x: &Object, y: &Object, z: &Object, g: &Element, f: &Element)
        -> Result<Element, PcmCatError>;

    /// A random arrow `x -> y`. Defaults to a draw from the hom grid.
    fn sample(&self, x: &Object, y: &Object, rng: &mut ChaCha8Rng) -> Result<Element, PcmCatError> {
        let hom = self.hom(x, y)?;
        let grid = hom.grid(rng);
        Ok(grid.elements.choose(rng).cloned().unwrap_or_else(|| hom.zero().clone()))
    }
}

impl fmt::Debug for dyn PcmCategory {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "PcmCategory({})", self.name())
    }
}

/// The zero arrow `x -> y`: the sum of the empty family in `hom(x, y)`.
pub fn zero_arrow(c: &dyn PcmCategory, x: &Object, y: &Object) -> Result<Element, PcmCatError> {
    Ok(c.hom(x, y)?.zero().clone())
}

type ObjectMap = Arc<dyn Fn(&Object) -> Result<Object, PcmCatError> + Send + Sync>;
type ArrowMap = Arc<dyn Fn(&Object, &Object, &Element) -> Result<Element, PcmCatError> + Send + Sync>;

/// A functor between PCM-categories, claimed to preserve summable families
/// and their sums. The arrow map receives the source and target of the arrow.
#[derive(Clone)]
pub struct PcmFunctor {
    pub name: String,
    pub source: Arc<dyn PcmCategory>,
    pub target: Arc<dyn PcmCategory>,
    objects: ObjectMap,
    arrows: ArrowMap,
}

impl fmt::Debug for PcmFunctor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "PcmFunctor({}: {} -> {})", self.name, self.source.name(), self.target.name())
    }
}

impl PcmFunctor {
    pub fn new(
        name: impl Into<String>,
        source: Arc<dyn PcmCategory>,
        target: Arc<dyn PcmCategory>,
        objects: impl Fn(&Object) -> Result<Object, PcmCatError> + Send + Sync + 'static,
        arrows: impl Fn(&Object, &Object, &Element) -> Result<Element, PcmCatError> + Send + Sync + 'static,
    ) -> Self {
        PcmFunctor { name: name.into(), source, target, objects: Arc::new(objects), arrows: Arc::new(arrows) }
    }

    pub fn identity(c: Arc<dyn PcmCategory>) -> Self {
        PcmFunctor::new(format!("id[{}]", c.name()), c.clone(), c, |x| Ok(x.clone()), |_, _, f| Ok(f.clone()))
    }

    pub fn on_object(&self, x: &Object) -> Result<Object, PcmCatError> {
        (self.objects)(x)
    }

    /// Image of `f: x -> y`.
    pub fn on_arrow(&self, x: &Object, y: &Object, f: &Element) -> Result<Element, PcmCatError> {
        (self.arrows)(x, y, f)
    }

    /// `next ∘ self`.
    pub fn then(&self, next: &PcmFunctor) -> PcmFunctor {
        let (o1, o2) = (self.objects.clone(), next.objects.clone());
        let (a1, a2) = (self.arrows.clone(), next.arrows.clone());
        let o1b = o1.clone();
        PcmFunctor {
            name: format!("{}.{}", next.name, self.name),
            source: self.source.clone(),
            target: next.target.clone(),
            objects: Arc::new(move |x| o2(&o1(x)?)),
            arrows: Arc::new(move |x, y, f| {
                let (fx, fy) = (o1b(x)?, o1b(y)?);
                a2(&fx, &fy, &a1(x, y, f)?)
            }),
        }
    }
}
