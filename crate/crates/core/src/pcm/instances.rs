//! The shipped PCM instances.

use std::cmp::Ordering;
use std::fmt;
use std::sync::Arc;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::carrier::{Carrier, ScalarKind};
use super::element::{Element, PartialFn, Relation};
use super::unit_ball::vector_norm_cmp;
use super::{Pcm, PcmError, SumOracle, SumResult};
use crate::family::IndexedFamily;
use crate::report::Grid;

/// Number of sampled triples used to validate a monoid.
pub const MONOID_VALIDATION_TRIALS: usize = 1000;
const MONOID_VALIDATION_SEED: u64 = 0x6d6f6e6f6964;

type BinOp = Arc<dyn Fn(&Element, &Element) -> Element + Send + Sync>;

/// A user-supplied commutative monoid, validated on samples.
#[derive(Clone)]
pub struct CustomMonoid {
    pub name: String,
    pub carrier: Carrier,
    pub unit: Element,
    pub op: BinOp,
    /// Elements to draw validation triples from.
    pub samples: Vec<Element>,
}

/// A commutative monoid `(M, +, 0)` underlying the finite-families and
/// K-bounded summations.
#[derive(Clone)]
pub enum Monoid {
    /// Addition on a ring-like carrier: int, rational, residues, complex,
    /// vectors or matrices.
    Additive(Carrier),
    Custom(CustomMonoid),
}

impl fmt::Debug for Monoid {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Monoid({self})")
    }
}

impl fmt::Display for Monoid {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Monoid::Additive(c) => write!(f, "{c}"),
            Monoid::Custom(m) => f.write_str(&m.name),
        }
    }
}

impl Monoid {
    pub fn int() -> Self {
        Monoid::Additive(Carrier::Int)
    }

    pub fn rational() -> Self {
        Monoid::Additive(Carrier::Rational)
    }

    pub fn modular(n: u64) -> Self {
        Monoid::Additive(Carrier::Residue(n))
    }

    pub fn complex() -> Self {
        Monoid::Additive(Carrier::Complex)
    }

    pub fn carrier(&self) -> &Carrier {
        match self {
            Monoid::Additive(c) => c,
            Monoid::Custom(m) => &m.carrier,
        }
    }

    pub fn unit(&self) -> Result<Element, PcmError> {
        match self {
            Monoid::Additive(c) => additive_zero(c),
            Monoid::Custom(m) => Ok(m.unit.clone()),
        }
    }

    pub fn op(&self, a: &Element, b: &Element) -> Result<Element, PcmError> {
        match self {
            Monoid::Additive(_) => Ok(a.add(b)?),
            Monoid::Custom(m) => Ok((m.op)(a, b)),
        }
    }

    /// Checks unit, commutativity and associativity on seeded random triples.
    pub fn validate(&self) -> Result<(), PcmError> {
        let mut rng = ChaCha8Rng::seed_from_u64(MONOID_VALIDATION_SEED);
        let pool: Vec<Element> = match self {
            Monoid::Additive(c) => (0..64).map(|_| c.sample(&mut rng)).collect(),
            Monoid::Custom(m) => m.samples.clone(),
        };
        if pool.is_empty() {
            return Ok(());
        }
        let unit = self.unit()?;
        for _ in 0..MONOID_VALIDATION_TRIALS {
            let x = pool.choose(&mut rng).expect("nonempty");
            let y = pool.choose(&mut rng).expect("nonempty");
            let z = pool.choose(&mut rng).expect("nonempty");
            if self.op(x, &unit)? != *x || self.op(&unit, x)? != *x {
                return Err(PcmError::NotUnital(format!("{x}")));
            }
            if self.op(x, y)? != self.op(y, x)? {
                return Err(PcmError::NotCommutative(format!("{x}, {y}")));
            }
            if self.op(&self.op(x, y)?, z)? != self.op(x, &self.op(y, z)?)? {
                return Err(PcmError::NotAssociative(format!("{x}, {y}, {z}")));
            }
        }
        Ok(())
    }
}

fn additive_zero(c: &Carrier) -> Result<Element, PcmError> {
    Ok(match c {
        Carrier::Int => ScalarKind::Int.zero(),
        Carrier::Rational => ScalarKind::Rational.zero(),
        Carrier::Residue(n) => ScalarKind::Residue(*n).zero(),
        Carrier::Complex => ScalarKind::Complex.zero(),
        Carrier::Vector { dim } => Element::Vector(vec![num::rational::BigRational::from_integer(0.into()); *dim]),
        Carrier::Matrix { rows, cols, scalar } => {
            Element::Matrix(super::element::Matrix::filled(*rows, *cols, scalar.zero()))
        }
        other => return Err(PcmError::BadParameter(format!("{other} has no built-in addition"))),
    })
}

/// Finite-families summation over a monoid, optionally bounded to at most
/// `bound` non-identity entries. Folds in ascending label order.
struct MonoidSum {
    monoid: Monoid,
    unit: Element,
    bound: Option<usize>,
}

impl SumOracle for MonoidSum {
    fn carrier(&self) -> &Carrier {
        self.monoid.carrier()
    }

    fn sum(&self, fam: &IndexedFamily<Element>) -> Result<SumResult, PcmError> {
        if let Some((l, _)) = fam.iter().find(|(_, v)| !v.is_finite()) {
            return Err(PcmError::NonFinite(l.to_string()));
        }
        if let Some(k) = self.bound {
            let nonzero = fam.values().filter(|v| **v != self.unit).count();
            if nonzero > k {
                return Ok(SumResult::NotSummable);
            }
        }
        let mut acc = self.unit.clone();
        for (_, v) in fam.sorted_entries() {
            acc = self.monoid.op(&acc, v)?;
        }
        Ok(SumResult::Summable(acc))
    }
}

/// Every family is summable (all families are finite); the sum is the monoid fold.
pub fn make_finite_families_pcm(monoid: Monoid) -> Result<Pcm, PcmError> {
    monoid.validate()?;
    let unit = monoid.unit()?;
    let name = format!("ff({monoid})");
    Pcm::new(name, Arc::new(MonoidSum { monoid, unit, bound: None }))
}

/// Families with at most `k` non-identity entries are summable.
pub fn make_k_bounded_pcm(monoid: Monoid, k: usize) -> Result<Pcm, PcmError> {
    if k == 0 {
        return Err(PcmError::BadParameter("K must be positive".into()));
    }
    monoid.validate()?;
    let unit = monoid.unit()?;
    let name = format!("k{k}({monoid})");
    Pcm::new(name, Arc::new(MonoidSum { monoid, unit, bound: Some(k) }))
}

/// Complex numbers under absolute convergence. At desk scale every finite
/// family is summable.
pub fn make_abs_convergence_pcm() -> Pcm {
    make_finite_families_pcm(Monoid::complex())
        .expect("complex addition is a commutative monoid")
        .renamed("absconv(complex)")
}

/// Summability rule for families of partial functions.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FnMode {
    /// Domains pairwise disjoint.
    Disjoint,
    /// Functions agree wherever their domains overlap.
    Overlap,
}

impl fmt::Display for FnMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FnMode::Disjoint => f.write_str("disjoint"),
            FnMode::Overlap => f.write_str("overlap"),
        }
    }
}

struct PartialFnSum {
    carrier: Carrier,
    dom: usize,
    cod: usize,
    mode: FnMode,
    injective: bool,
}

impl SumOracle for PartialFnSum {
    fn carrier(&self) -> &Carrier {
        &self.carrier
    }

    fn sum(&self, fam: &IndexedFamily<Element>) -> Result<SumResult, PcmError> {
        let mut graph: Vec<Option<usize>> = vec![None; self.dom];
        for v in fam.values() {
            let Element::PartialFn(p) = v else { unreachable!("carrier checked") };
            for (x, y) in p.graph().iter().enumerate() {
                let Some(y) = y else { continue };
                match (graph[x], self.mode) {
                    (None, _) => graph[x] = Some(*y),
                    (Some(_), FnMode::Disjoint) => return Ok(SumResult::NotSummable),
                    (Some(prev), FnMode::Overlap) if prev != *y => return Ok(SumResult::NotSummable),
                    (Some(_), FnMode::Overlap) => {}
                }
            }
        }
        let total = PartialFn::new(graph, self.cod)?;
        if self.injective && !total.is_injective() {
            return Ok(SumResult::NotSummable);
        }
        Ok(SumResult::Summable(Element::PartialFn(total)))
    }
}

/// Partial functions `{0..dom} -> {0..cod}`; the sum is the union of graphs.
pub fn make_partial_fn_pcm(dom: usize, cod: usize, mode: FnMode) -> Result<Pcm, PcmError> {
    if dom == 0 || cod == 0 {
        return Err(PcmError::BadParameter("carrier sizes must be at least 1".into()));
    }
    Pcm::new(
        format!("pfn-{mode}:{dom}->{cod}"),
        Arc::new(PartialFnSum {
            carrier: Carrier::PartialFn { dom, cod, injective: false },
            dom,
            cod,
            mode,
            injective: false,
        }),
    )
}

/// Partial injections. Besides the mode's rule, the union must itself be
/// injective.
pub fn make_partial_injection_pcm(dom: usize, cod: usize, mode: FnMode) -> Result<Pcm, PcmError> {
    if dom == 0 || cod == 0 {
        return Err(PcmError::BadParameter("carrier sizes must be at least 1".into()));
    }
    Pcm::new(
        format!("pinj-{mode}:{dom}->{cod}"),
        Arc::new(PartialFnSum {
            carrier: Carrier::PartialFn { dom, cod, injective: true },
            dom,
            cod,
            mode,
            injective: true,
        }),
    )
}

struct RelationUnion {
    carrier: Carrier,
    rows: usize,
    cols: usize,
}

impl SumOracle for RelationUnion {
    fn carrier(&self) -> &Carrier {
        &self.carrier
    }

    fn sum(&self, fam: &IndexedFamily<Element>) -> Result<SumResult, PcmError> {
        let mut acc = Relation::empty(self.rows, self.cols);
        for v in fam.values() {
            let Element::Relation(r) = v else { unreachable!("carrier checked") };
            acc = acc.union(r);
        }
        Ok(SumResult::Summable(Element::Relation(acc)))
    }
}

/// Relations `{0..n} × {0..m}`, every family summable to its union.
pub fn make_relations_pcm(n: usize, m: usize) -> Result<Pcm, PcmError> {
    if n == 0 || m == 0 {
        return Err(PcmError::BadParameter("carrier sizes must be at least 1".into()));
    }
    Relation::new(n, m, [])?;
    Pcm::new(
        format!("rel:{n}x{m}"),
        Arc::new(RelationUnion { carrier: Carrier::Relation { rows: n, cols: m }, rows: n, cols: m }),
    )
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Norm {
    L1,
    L2,
    LInf,
}

impl fmt::Display for Norm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Norm::L1 => f.write_str("l1"),
            Norm::L2 => f.write_str("l2"),
            Norm::LInf => f.write_str("linf"),
        }
    }
}

struct UnitBall {
    carrier: Carrier,
    dim: usize,
    norm: Norm,
}

impl SumOracle for UnitBall {
    fn carrier(&self) -> &Carrier {
        &self.carrier
    }

    fn sum(&self, fam: &IndexedFamily<Element>) -> Result<SumResult, PcmError> {
        let vectors: Vec<&[num::rational::BigRational]> = fam
            .values()
            .map(|v| match v {
                Element::Vector(v) => v.as_slice(),
                _ => unreachable!("carrier checked"),
            })
            .collect();
        if vector_norm_cmp(vectors.iter().copied(), self.norm) == Ordering::Greater {
            return Ok(SumResult::NotSummable);
        }
        let mut acc = vec![num::rational::BigRational::from_integer(0.into()); self.dim];
        for v in vectors {
            for (a, x) in acc.iter_mut().zip(v) {
                *a += x;
            }
        }
        Ok(SumResult::Summable(Element::Vector(acc)))
    }

    fn grid(&self, rng: &mut ChaCha8Rng) -> Grid {
        // keep only elements of the ball itself
        let mut g = self.carrier.grid(rng);
        g.elements.retain(|e| match e {
            Element::Vector(v) => vector_norm_cmp([v.as_slice()], self.norm) != Ordering::Greater,
            _ => false,
        });
        g
    }
}

/// Rational vectors of dimension `dim`; a family is summable exactly when
/// the sum of its norms is at most 1.
pub fn make_unit_ball_pcm(dim: usize, norm: Norm) -> Result<Pcm, PcmError> {
    if dim == 0 {
        return Err(PcmError::BadParameter("dimension must be at least 1".into()));
    }
    Pcm::new(format!("unitball:{dim}:{norm}"), Arc::new(UnitBall { carrier: Carrier::Vector { dim }, dim, norm }))
}

struct ProductSum {
    carrier: Carrier,
    left: Pcm,
    right: Pcm,
}

impl SumOracle for ProductSum {
    fn carrier(&self) -> &Carrier {
        &self.carrier
    }

    fn sum(&self, fam: &IndexedFamily<Element>) -> Result<SumResult, PcmError> {
        if fam.is_empty() {
            return Ok(SumResult::Summable(Element::pair(self.left.zero().clone(), self.right.zero().clone())));
        }
        let firsts = fam.map(|v| match v {
            Element::Pair(a, _) => (**a).clone(),
            _ => unreachable!("carrier checked"),
        });
        let seconds = fam.map(|v| match v {
            Element::Pair(_, b) => (**b).clone(),
            _ => unreachable!("carrier checked"),
        });
        match (self.left.sum(&firsts)?, self.right.sum(&seconds)?) {
            (SumResult::Summable(a), SumResult::Summable(b)) => Ok(SumResult::Summable(Element::pair(a, b))),
            _ => Ok(SumResult::NotSummable),
        }
    }

    fn grid(&self, rng: &mut ChaCha8Rng) -> Grid {
        let ga = self.left.grid(rng);
        let gb = self.right.grid(rng);
        let mut elements = Vec::new();
        for x in ga.elements.iter().take(3) {
            for y in gb.elements.iter().take(3) {
                elements.push(Element::pair(x.clone(), y.clone()));
            }
        }
        Grid { elements, exhaustive: false }
    }
}

/// Pairwise summation on `A × B`: a nonempty family is summable exactly
/// when both projections are; the empty family sums to the pair of zeros.
pub fn make_product_pcm(left: Pcm, right: Pcm) -> Pcm {
    let carrier = Carrier::Pair(Box::new(left.carrier().clone()), Box::new(right.carrier().clone()));
    let name = format!("{}*{}", left.name(), right.name());
    Pcm::new(name, Arc::new(ProductSum { carrier, left, right })).expect("empty family sums to the zero pair")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fam(values: Vec<Element>) -> IndexedFamily<Element> {
        IndexedFamily::from_values(values)
    }

    fn ints(v: &[i64]) -> IndexedFamily<Element> {
        fam(v.iter().map(|&x| Element::int(x)).collect())
    }

    fn pf(map: &[Option<usize>], cod: usize) -> Element {
        Element::PartialFn(PartialFn::new(map.to_vec(), cod).unwrap())
    }

    fn vecq(xs: &[(i64, i64)]) -> Element {
        Element::Vector(xs.iter().map(|&(n, d)| num::rational::BigRational::new(n.into(), d.into())).collect())
    }

    #[test]
    fn finite_families_examples() {
        let z = make_finite_families_pcm(Monoid::int()).unwrap();
        assert_eq!(z.sum(&ints(&[1, -1])).unwrap(), SumResult::Summable(Element::int(0)));
        assert_eq!(z.sum(&ints(&[2, 3, -5])).unwrap(), SumResult::Summable(Element::int(0)));
        assert_eq!(z.zero(), &Element::int(0));

        let q = make_finite_families_pcm(Monoid::rational()).unwrap();
        assert_eq!(
            q.sum(&fam(vec![Element::ratio(1, 2), Element::ratio(1, 3)])).unwrap(),
            SumResult::Summable(Element::ratio(5, 6))
        );

        let m = make_finite_families_pcm(Monoid::modular(4)).unwrap();
        assert_eq!(
            m.sum(&fam(vec![Element::residue(2, 4), Element::residue(2, 4)])).unwrap(),
            SumResult::Summable(Element::residue(0, 4))
        );
    }

    #[test]
    fn k_bounded_examples() {
        let k1 = make_k_bounded_pcm(Monoid::int(), 1).unwrap();
        assert_eq!(k1.sum(&ints(&[5])).unwrap(), SumResult::Summable(Element::int(5)));
        assert_eq!(k1.sum(&ints(&[5, 1])).unwrap(), SumResult::NotSummable);
        let k2 = make_k_bounded_pcm(Monoid::int(), 2).unwrap();
        assert_eq!(k2.sum(&ints(&[1, 1, 0])).unwrap(), SumResult::Summable(Element::int(2)));
        assert!(matches!(make_k_bounded_pcm(Monoid::int(), 0), Err(PcmError::BadParameter(_))));
    }

    #[test]
    fn carrier_mismatch_is_reported() {
        let z = make_finite_families_pcm(Monoid::int()).unwrap();
        let bad = fam(vec![Element::int(1), Element::ratio(1, 2)]);
        assert!(matches!(z.sum(&bad), Err(PcmError::CarrierMismatch { .. })));
    }

    #[test]
    fn custom_monoid_validation() {
        let subtraction = CustomMonoid {
            name: "int-sub".into(),
            carrier: Carrier::Int,
            unit: Element::int(0),
            op: Arc::new(|a, b| match (a, b) {
                (Element::Int(x), Element::Int(y)) => Element::Int(x - y),
                _ => unreachable!(),
            }),
            samples: (-3..=3).map(Element::int).collect(),
        };
        assert!(matches!(
            make_finite_families_pcm(Monoid::Custom(subtraction)),
            Err(PcmError::NotUnital(_) | PcmError::NotCommutative(_))
        ));

        let max = CustomMonoid {
            name: "int-max0".into(),
            carrier: Carrier::Int,
            unit: Element::int(0),
            op: Arc::new(|a, b| match (a, b) {
                (Element::Int(x), Element::Int(y)) => Element::Int(x.max(y).clone()),
                _ => unreachable!(),
            }),
            samples: (0..=5).map(Element::int).collect(),
        };
        let p = make_finite_families_pcm(Monoid::Custom(max)).unwrap();
        assert_eq!(p.sum(&ints(&[3, 1, 4])).unwrap(), SumResult::Summable(Element::int(4)));
    }

    #[test]
    fn partial_function_rules() {
        let dis = make_partial_fn_pcm(2, 2, FnMode::Disjoint).unwrap();
        let f = pf(&[Some(1), None], 2);
        let g = pf(&[None, Some(0)], 2);
        assert_eq!(dis.sum(&fam(vec![f.clone(), g])).unwrap(), SumResult::Summable(pf(&[Some(1), Some(0)], 2)));
        let overlapping = pf(&[Some(1), Some(1)], 2);
        assert_eq!(dis.sum(&fam(vec![f.clone(), overlapping])).unwrap(), SumResult::NotSummable);
        assert_eq!(dis.zero(), &pf(&[None, None], 2));

        let ov = make_partial_injection_pcm(3, 3, FnMode::Overlap).unwrap();
        let f = pf(&[Some(1), None, None], 3);
        let g = pf(&[Some(1), Some(2), None], 3);
        assert_eq!(ov.sum(&fam(vec![f.clone(), g])).unwrap(), SumResult::Summable(pf(&[Some(1), Some(2), None], 3)));
        let h = pf(&[Some(2), None, None], 3);
        assert_eq!(ov.sum(&fam(vec![f.clone(), h])).unwrap(), SumResult::NotSummable);
        // compatible but the union is not injective
        let k = pf(&[None, Some(1), None], 3);
        assert_eq!(ov.sum(&fam(vec![f, k])).unwrap(), SumResult::NotSummable);
    }

    #[test]
    fn relations_union() {
        let r = make_relations_pcm(2, 2).unwrap();
        let a = Element::Relation(Relation::new(2, 2, [(0, 0)]).unwrap());
        let b = Element::Relation(Relation::new(2, 2, [(1, 1), (0, 0)]).unwrap());
        assert_eq!(r.sum(&fam(vec![a, b.clone()])).unwrap(), SumResult::Summable(b));
        assert_eq!(r.zero(), &Element::Relation(Relation::empty(2, 2)));
    }

    #[test]
    fn abs_convergence_examples() {
        let c = make_abs_convergence_pcm();
        let minus_one = num::complex::Complex64::from_polar(1.0, std::f64::consts::PI);
        let s = c.sum(&fam(vec![Element::complex(1.0, 0.0), Element::Complex(minus_one)])).unwrap();
        assert!(s.value().unwrap().close_to(&Element::complex(0.0, 0.0), 1e-9));
        let s = c.sum(&fam(vec![Element::complex(0.0, 1.0), Element::complex(0.0, 1.0)])).unwrap();
        assert_eq!(s, SumResult::Summable(Element::complex(0.0, 2.0)));
        assert!(matches!(c.sum(&fam(vec![Element::complex(f64::NAN, 0.0)])), Err(PcmError::NonFinite(_))));
    }

    #[test]
    fn unit_ball_examples() {
        let b = make_unit_ball_pcm(1, Norm::L1).unwrap();
        assert_eq!(b.sum(&fam(vec![vecq(&[(1, 2)]), vecq(&[(1, 2)])])).unwrap(), SumResult::Summable(vecq(&[(1, 1)])));
        assert_eq!(b.sum(&fam(vec![vecq(&[(1, 2)]), vecq(&[(2, 3)])])).unwrap(), SumResult::NotSummable);
        let inf = make_unit_ball_pcm(2, Norm::LInf).unwrap();
        let v = vecq(&[(1, 2), (-1, 2)]);
        assert_eq!(inf.sum(&fam(vec![v.clone()])).unwrap(), SumResult::Summable(v));
        let l2 = make_unit_ball_pcm(2, Norm::L2).unwrap();
        let w = vecq(&[(1, 2), (1, 2)]);
        // ‖w‖₂ = √2/2, twice that exceeds 1
        assert_eq!(l2.sum(&fam(vec![w.clone(), w])).unwrap(), SumResult::NotSummable);
    }

    #[test]
    fn product_sums() {
        let z = make_finite_families_pcm(Monoid::int()).unwrap();
        let k1 = make_k_bounded_pcm(Monoid::int(), 1).unwrap();
        let zz = make_product_pcm(z.clone(), z.clone());
        let p = |a, b| Element::pair(Element::int(a), Element::int(b));
        assert_eq!(zz.sum(&fam(vec![p(1, 2), p(3, 4)])).unwrap(), SumResult::Summable(p(4, 6)));
        assert_eq!(zz.sum(&IndexedFamily::empty()).unwrap(), SumResult::Summable(p(0, 0)));
        let kz = make_product_pcm(k1, z);
        assert_eq!(kz.sum(&fam(vec![p(1, 2), p(0, 4)])).unwrap(), SumResult::Summable(p(1, 6)));
        assert_eq!(kz.sum(&fam(vec![p(1, 2), p(1, 4)])).unwrap(), SumResult::NotSummable);
    }
}
