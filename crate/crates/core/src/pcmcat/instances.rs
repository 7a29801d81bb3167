//! Builders for the shipped PCM-categories.

use std::sync::Arc;

use num::rational::BigRational;
use num::One;

use super::{Object, PcmCatError, PcmCategory, PcmFunctor};
use crate::pcm::{
    make_abs_convergence_pcm, make_finite_families_pcm, make_k_bounded_pcm, make_partial_fn_pcm,
    make_partial_injection_pcm, make_product_pcm, make_relations_pcm, make_unit_ball_pcm, Carrier, Element, FnMode,
    Matrix, Monoid, Norm, PartialFn, Pcm, Relation, ScalarKind,
};

fn expect_object(objects: &[Object], x: &Object) -> Result<usize, PcmCatError> {
    objects.iter().position(|o| o == x).ok_or_else(|| PcmCatError::UnknownObject(x.to_string()))
}

/// A semiring as a one-object category with object `X`: composition is
/// multiplication and the hom PCM sums with addition.
pub struct SemiringCategory {
    name: String,
    scalar: ScalarKind,
    hom: Pcm,
}

impl SemiringCategory {
    pub fn scalar(&self) -> ScalarKind {
        self.scalar
    }

    pub fn object() -> Object {
        Object::named("X")
    }
}

/// Finite-families summation over addition; complex scalars use the
/// absolute-convergence PCM.
pub fn semiring_category(scalar: ScalarKind) -> Result<SemiringCategory, PcmCatError> {
    let hom = match scalar {
        ScalarKind::Complex => make_abs_convergence_pcm(),
        other => make_finite_families_pcm(Monoid::Additive(other.carrier()))?,
    };
    Ok(SemiringCategory { name: scalar.to_string(), scalar, hom })
}

impl SemiringCategory {
    /// The same composition with summation bounded to `k` nonzero entries.
    pub fn k_bounded(scalar: ScalarKind, k: usize) -> Result<SemiringCategory, PcmCatError> {
        let hom = make_k_bounded_pcm(Monoid::Additive(scalar.carrier()), k)?;
        let name = if scalar == ScalarKind::Int { format!("kbounded:{k}") } else { format!("kbounded:{k}:{scalar}") };
        Ok(SemiringCategory { name, scalar, hom })
    }
}

impl PcmCategory for SemiringCategory {
    fn name(&self) -> String {
        self.name.clone()
    }

    fn objects(&self) -> Vec<Object> {
        vec![Self::object()]
    }

    fn hom(&self, x: &Object, y: &Object) -> Result<Pcm, PcmCatError> {
        expect_object(&self.objects(), x)?;
        expect_object(&self.objects(), y)?;
        Ok(self.hom.clone())
    }

    fn identity(&self, x: &Object) -> Result<Element, PcmCatError> {
        expect_object(&self.objects(), x)?;
        Ok(self.scalar.one())
    }

    fn compose(&self, _: &Object, _: &Object, _: &Object, g: &Element, f: &Element) -> Result<Element, PcmCatError> {
        Ok(g.mul(f)?)
    }
}

/// Finite-dimensional linear maps: objects `X0, X1, ...` of the given
/// dimensions, `hom(Xi, Xj)` the `dj × di` matrices.
pub struct MatrixCategory {
    dims: Vec<usize>,
    scalar: ScalarKind,
    objects: Vec<Object>,
    homs: Vec<Pcm>,
}

pub fn matrix_category(dims: &[usize], scalar: ScalarKind) -> Result<MatrixCategory, PcmCatError> {
    if dims.is_empty() || dims.contains(&0) {
        return Err(PcmCatError::BadDescriptor(format!("{dims:?}"), "dimensions must be positive".into()));
    }
    let n = dims.len();
    let mut homs = Vec::with_capacity(n * n);
    for &di in dims {
        for &dj in dims {
            let carrier = Carrier::Matrix { rows: dj, cols: di, scalar };
            homs.push(make_finite_families_pcm(Monoid::Additive(carrier))?);
        }
    }
    let objects = (0..n).map(|i| Object::named(format!("X{i}"))).collect();
    Ok(MatrixCategory { dims: dims.to_vec(), scalar, objects, homs })
}

impl MatrixCategory {
    pub fn dims(&self) -> &[usize] {
        &self.dims
    }
}

impl PcmCategory for MatrixCategory {
    fn name(&self) -> String {
        let dims: Vec<String> = self.dims.iter().map(|d| d.to_string()).collect();
        match self.scalar {
            ScalarKind::Rational => format!("matrix:{}", dims.join(",")),
            s => format!("matrix:{}:{s}", dims.join(",")),
        }
    }

    fn objects(&self) -> Vec<Object> {
        self.objects.clone()
    }

    fn hom(&self, x: &Object, y: &Object) -> Result<Pcm, PcmCatError> {
        let (i, j) = (expect_object(&self.objects, x)?, expect_object(&self.objects, y)?);
        Ok(self.homs[i * self.dims.len() + j].clone())
    }

    fn identity(&self, x: &Object) -> Result<Element, PcmCatError> {
        let i = expect_object(&self.objects, x)?;
        Ok(Element::Matrix(Matrix::identity(self.dims[i], self.scalar.zero(), self.scalar.one())))
    }

    fn compose(&self, _: &Object, _: &Object, _: &Object, g: &Element, f: &Element) -> Result<Element, PcmCatError> {
        Ok(g.mul(f)?)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum SetArrows {
    PartialFns,
    PartialInjections,
    Relations,
}

/// Finite sets `S1..Sn` (object `Sk` has `k` elements) with partial
/// functions, partial injections or relations as arrows.
pub struct SetCategory {
    name: String,
    kind: SetArrows,
    objects: Vec<Object>,
    homs: Vec<Pcm>,
}

fn set_category(
    name: String,
    n: usize,
    kind: SetArrows,
    make: impl Fn(usize, usize) -> Result<Pcm, crate::pcm::PcmError>,
) -> Result<SetCategory, PcmCatError> {
    if n == 0 {
        return Err(PcmCatError::BadDescriptor(name, "need at least one object".into()));
    }
    let mut homs = Vec::with_capacity(n * n);
    for i in 1..=n {
        for j in 1..=n {
            homs.push(make(i, j)?);
        }
    }
    let objects = (1..=n).map(|k| Object::named(format!("S{k}"))).collect();
    Ok(SetCategory { name, kind, objects, homs })
}

/// Partial functions with the disjoint-domain summation.
pub fn partial_fn_category(n: usize) -> Result<SetCategory, PcmCatError> {
    set_category(format!("pfn:{n}"), n, SetArrows::PartialFns, |i, j| make_partial_fn_pcm(i, j, FnMode::Disjoint))
}

/// Partial injections with the overlap summation.
pub fn partial_injection_category(n: usize) -> Result<SetCategory, PcmCatError> {
    set_category(format!("pinj-overlap:{n}"), n, SetArrows::PartialInjections, |i, j| {
        make_partial_injection_pcm(i, j, FnMode::Overlap)
    })
}

/// Relations with union.
pub fn relation_category(n: usize) -> Result<SetCategory, PcmCatError> {
    set_category(format!("rel:{n}"), n, SetArrows::Relations, make_relations_pcm)
}

impl PcmCategory for SetCategory {
    fn name(&self) -> String {
        self.name.clone()
    }

    fn objects(&self) -> Vec<Object> {
        self.objects.clone()
    }

    fn hom(&self, x: &Object, y: &Object) -> Result<Pcm, PcmCatError> {
        let (i, j) = (expect_object(&self.objects, x)?, expect_object(&self.objects, y)?);
        Ok(self.homs[i * self.objects.len() + j].clone())
    }

    fn identity(&self, x: &Object) -> Result<Element, PcmCatError> {
        let k = expect_object(&self.objects, x)? + 1;
        Ok(match self.kind {
            SetArrows::Relations => Element::Relation(Relation::new(k, k, (0..k).map(|i| (i, i)))?),
            _ => Element::PartialFn(PartialFn::identity(k)),
        })
    }

    fn compose(&self, x: &Object, y: &Object, _: &Object, g: &Element, f: &Element) -> Result<Element, PcmCatError> {
        match (f, g) {
            (Element::PartialFn(f), Element::PartialFn(g)) => Ok(Element::PartialFn(f.then(g)?)),
            (Element::Relation(f), Element::Relation(g)) => Ok(Element::Relation(f.then(g)?)),
            _ => Err(PcmCatError::NotInHom(x.to_string(), y.to_string())),
        }
    }
}

/// Rational vectors in the unit ball with componentwise multiplication.
///
/// The all-ones vector is the identity, so a category exists only when it
/// lies in the ball: dimension 1, or the ℓ∞ norm.
pub struct UnitBallCategory {
    dim: usize,
    norm: Norm,
    hom: Pcm,
}

pub fn unit_ball_category(dim: usize, norm: Norm) -> Result<UnitBallCategory, PcmCatError> {
    let hom = make_unit_ball_pcm(dim, norm)?;
    if dim > 1 && norm != Norm::LInf {
        return Err(PcmCatError::BadDescriptor(
            format!("unitball:{dim}:{norm}"),
            "the componentwise identity lies outside the ball".into(),
        ));
    }
    Ok(UnitBallCategory { dim, norm, hom })
}

impl PcmCategory for UnitBallCategory {
    fn name(&self) -> String {
        format!("unitball:{}:{}", self.dim, self.norm)
    }

    fn objects(&self) -> Vec<Object> {
        vec![Object::named("X")]
    }

    fn hom(&self, x: &Object, y: &Object) -> Result<Pcm, PcmCatError> {
        expect_object(&self.objects(), x)?;
        expect_object(&self.objects(), y)?;
        Ok(self.hom.clone())
    }

    fn identity(&self, x: &Object) -> Result<Element, PcmCatError> {
        expect_object(&self.objects(), x)?;
        Ok(Element::Vector(vec![BigRational::one(); self.dim]))
    }

    fn compose(&self, _: &Object, _: &Object, _: &Object, g: &Element, f: &Element) -> Result<Element, PcmCatError> {
        Ok(g.mul(f)?)
    }
}

/// The product `A × B` of PCM-categories: objects and arrows are pairs,
/// composition is componentwise, summation is pairwise.
pub struct ProductPcmCategory {
    pub left: Arc<dyn PcmCategory>,
    pub right: Arc<dyn PcmCategory>,
}

fn split(o: &Object) -> Result<(&Object, &Object), PcmCatError> {
    match o {
        Object::Pair(a, b) => Ok((a, b)),
        other => Err(PcmCatError::UnknownObject(other.to_string())),
    }
}

fn split_arrow(e: &Element) -> Result<(&Element, &Element), PcmCatError> {
    match e {
        Element::Pair(a, b) => Ok((a, b)),
        other => Err(PcmCatError::Element(crate::pcm::ElementError::Mismatch("pair".into(), other.kind().into()))),
    }
}

pub fn pcm_product(left: Arc<dyn PcmCategory>, right: Arc<dyn PcmCategory>) -> ProductPcmCategory {
    ProductPcmCategory { left, right }
}

impl PcmCategory for ProductPcmCategory {
    fn name(&self) -> String {
        format!("{}*{}", self.left.name(), self.right.name())
    }

    fn objects(&self) -> Vec<Object> {
        let mut out = Vec::new();
        for a in self.left.objects() {
            for b in self.right.objects() {
                out.push(Object::pair(a.clone(), b));
            }
        }
        out
    }

    fn hom(&self, x: &Object, y: &Object) -> Result<Pcm, PcmCatError> {
        let ((a, b), (c, d)) = (split(x)?, split(y)?);
        Ok(make_product_pcm(self.left.hom(a, c)?, self.right.hom(b, d)?))
    }

    fn identity(&self, x: &Object) -> Result<Element, PcmCatError> {
        let (a, b) = split(x)?;
        Ok(Element::pair(self.left.identity(a)?, self.right.identity(b)?))
    }

    fn compose(&self, x: &Object, y: &Object, z: &Object, g: &Element, f: &Element) -> Result<Element, PcmCatError> {
        let ((xa, xb), (ya, yb), (za, zb)) = (split(x)?, split(y)?, split(z)?);
        let ((ga, gb), (fa, fb)) = (split_arrow(g)?, split_arrow(f)?);
        Ok(Element::pair(self.left.compose(xa, ya, za, ga, fa)?, self.right.compose(xb, yb, zb, gb, fb)?))
    }
}

impl ProductPcmCategory {
    /// The projections `A × B -> A` and `A × B -> B`.
    pub fn projections(self: &Arc<Self>) -> (PcmFunctor, PcmFunctor) {
        let me: Arc<dyn PcmCategory> = self.clone();
        let p1 = PcmFunctor::new(
            "pi1",
            me.clone(),
            self.left.clone(),
            |x| Ok(split(x)?.0.clone()),
            |_, _, f| Ok(split_arrow(f)?.0.clone()),
        );
        let p2 = PcmFunctor::new(
            "pi2",
            me,
            self.right.clone(),
            |x| Ok(split(x)?.1.clone()),
            |_, _, f| Ok(split_arrow(f)?.1.clone()),
        );
        (p1, p2)
    }

    /// The pairing `<g1, g2>: C -> A × B` of two functors out of a common source.
    pub fn pairing(self: &Arc<Self>, g1: &PcmFunctor, g2: &PcmFunctor) -> PcmFunctor {
        let (a, b) = (g1.clone(), g2.clone());
        let (a2, b2) = (g1.clone(), g2.clone());
        PcmFunctor::new(
            format!("<{},{}>", g1.name, g2.name),
            g1.source.clone(),
            self.clone(),
            move |x| Ok(Object::pair(a.on_object(x)?, b.on_object(x)?)),
            move |x, y, f| Ok(Element::pair(a2.on_arrow(x, y, f)?, b2.on_arrow(x, y, f)?)),
        )
    }
}
