//! The Cauchy product `C[D]` of a PCM-category `C` with a finite category `D`.
//!
//! Objects are pairs `(X,U)`. An arrow `(X,U) -> (Y,V)` is a coefficient
//! map `D(U,V) -> C(X,Y)` whose coefficients form a summable family; it is
//! stored densely as an [`Element::Coeffs`] in the hom-set order of `D`.
//! Composition is convolution over factorizations `c = b∘a`, and a family
//! of arrows is summable when all of their coefficients together are.

mod series;

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use rand::Rng;
use rand_chacha::ChaCha8Rng;

use crate::family::{IndexedFamily, Label};
use crate::fincat::{validate_category, ArrowId, FinCatError, FinCategory, Functor, ObjId};
use crate::pcm::{Carrier, Element, Pcm, PcmError, SumOracle, SumResult};
use crate::pcmcat::{Object, PcmCatError, PcmCategory, PcmFunctor};
use crate::report::Grid;

pub use series::{series_convolve, CoeffStream, SeriesError, SeriesProduct};

/// Hom-sets with at most this many coefficient maps over an exhaustive base
/// grid are enumerated in full.
const EXHAUSTIVE_COEFF_MAPS: usize = 64;
const GRID_SIZE: usize = 7;

/// An arrow of a Cauchy product.
#[derive(Debug, Clone, PartialEq)]
pub struct CauchyArrow {
    pub src: Object,
    pub tgt: Object,
    /// One coefficient per arrow of `D(U,V)`, in hom-set order.
    pub coeffs: Vec<Element>,
}

impl CauchyArrow {
    pub fn element(&self) -> Element {
        Element::Coeffs(self.coeffs.clone())
    }
}

/// Summation on one hom-set of `C[D]`: the flattened family of all
/// coefficients must be summable in `C(X,Y)`.
struct CoeffSum {
    carrier: Carrier,
    base: Pcm,
    labels: Vec<Label>,
}

impl CoeffSum {
    fn coeffs<'a>(&self, e: &'a Element) -> &'a [Element] {
        match e {
            Element::Coeffs(cs) => cs,
            _ => unreachable!("carrier checked"),
        }
    }
}

impl SumOracle for CoeffSum {
    fn carrier(&self) -> &Carrier {
        &self.carrier
    }

    fn sum(&self, fam: &IndexedFamily<Element>) -> Result<SumResult, PcmError> {
        let mut flat = Vec::with_capacity(fam.len() * self.labels.len());
        for (l, v) in fam.iter() {
            for (a, c) in self.labels.iter().zip(self.coeffs(v)) {
                flat.push((Label::pair(l, a), c.clone()));
            }
        }
        let flat = IndexedFamily::new(flat).expect("pair labels are distinct");
        if !self.base.sum(&flat)?.is_summable() {
            return Ok(SumResult::NotSummable);
        }
        let mut out = Vec::with_capacity(self.labels.len());
        for k in 0..self.labels.len() {
            let column = fam.map(|v| self.coeffs(v)[k].clone());
            match self.base.sum(&column)? {
                SumResult::Summable(s) => out.push(s),
                SumResult::NotSummable => {
                    return Err(PcmError::Inconsistent(format!(
                        "{}: a block of a summable family is not summable",
                        self.base.name()
                    )))
                }
            }
        }
        Ok(SumResult::Summable(Element::Coeffs(out)))
    }

    fn grid(&self, rng: &mut ChaCha8Rng) -> Grid {
        let base = self.base.grid(rng);
        let len = self.labels.len();
        let zero = self.base.zero().clone();
        let admit = |cs: &Vec<Element>| {
            let fam = IndexedFamily::from_values(cs.iter().cloned());
            matches!(self.base.sum(&fam), Ok(SumResult::Summable(_)))
        };
        let total = base.elements.len().checked_pow(len as u32);
        if base.exhaustive && total.is_some_and(|t| t <= EXHAUSTIVE_COEFF_MAPS) {
            let mut elements = Vec::new();
            let mut digits = vec![0usize; len];
            loop {
                let cs: Vec<Element> = digits.iter().map(|&d| base.elements[d].clone()).collect();
                if admit(&cs) {
                    elements.push(Element::Coeffs(cs));
                }
                // odometer over grid positions
                let mut k = 0;
                while k < len && digits[k] + 1 == base.elements.len() {
                    digits[k] = 0;
                    k += 1;
                }
                if k == len {
                    break;
                }
                digits[k] += 1;
            }
            return Grid { elements, exhaustive: true };
        }
        let mut elements = vec![Element::Coeffs(vec![zero.clone(); len])];
        // monomials first, so that small enumerations see them
        for (m, value) in base.elements.iter().skip(1).take(2).enumerate() {
            for k in 0..len {
                if elements.len() >= GRID_SIZE || (m > 0 && k > 0) {
                    break;
                }
                let mut cs = vec![zero.clone(); len];
                cs[k] = value.clone();
                if admit(&cs) && !elements.contains(&Element::Coeffs(cs.clone())) {
                    elements.push(Element::Coeffs(cs));
                }
            }
        }
        let mut attempts = 0;
        while elements.len() < GRID_SIZE && attempts < 200 && base.elements.len() > 1 {
            attempts += 1;
            let cs: Vec<Element> = (0..len)
                .map(|_| {
                    if rng.gen_bool(0.5) {
                        zero.clone()
                    } else {
                        base.elements[rng.gen_range(0..base.elements.len())].clone()
                    }
                })
                .collect();
            let e = Element::Coeffs(cs.clone());
            if admit(&cs) && !elements.contains(&e) {
                elements.push(e);
            }
        }
        Grid { elements, exhaustive: false }
    }
}

/// The Cauchy product `C[D]`.
pub struct CauchyCategory {
    base: Arc<dyn PcmCategory>,
    index: Arc<FinCategory>,
    base_objects: Vec<Object>,
    objects: Vec<Object>,
    /// Hom PCMs by (source position, target position) in `objects`.
    homs: Vec<Pcm>,
    /// `factorizations[(u, v, w)][c] = [(b, a)]` with positions in the
    /// hom-sets `D(v,w)`, `D(u,v)` and `D(u,w)`, such that `c = b∘a`.
    factorizations: Vec<Vec<Vec<(usize, usize)>>>,
}

impl fmt::Debug for CauchyCategory {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CauchyCategory({})", self.name())
    }
}

/// Builds `C[D]`. The index category must pass [`validate_category`].
pub fn cauchy_product(base: Arc<dyn PcmCategory>, index: Arc<FinCategory>) -> Result<Arc<CauchyCategory>, PcmCatError> {
    let report = validate_category(&index);
    if !report.passed() {
        return Err(FinCatError::Invalid(report.witness.unwrap_or_default()).into());
    }
    let base_objects = base.objects();
    let mut objects = Vec::new();
    for x in &base_objects {
        for u in index.objects() {
            objects.push(Object::pair(x.clone(), Object::named(index.object_name(u))));
        }
    }
    let nu = index.num_objects();
    let mut homs = Vec::with_capacity(objects.len() * objects.len());
    for x in &base_objects {
        for u in index.objects() {
            for y in &base_objects {
                for v in index.objects() {
                    let base_hom = base.hom(x, y)?;
                    let labels: Vec<Label> =
                        index.hom(u, v).iter().map(|&a| Label::new(index.arrow_name(a))).collect();
                    let carrier = Carrier::Coeffs { len: labels.len(), base: Box::new(base_hom.carrier().clone()) };
                    let name = format!("{}[{}->{}]", base_hom.name(), index.object_name(u), index.object_name(v));
                    homs.push(Pcm::new(name, Arc::new(CoeffSum { carrier, base: base_hom, labels }))?);
                }
            }
        }
    }
    let mut factorizations = Vec::with_capacity(nu * nu * nu);
    for u in index.objects() {
        for v in index.objects() {
            for w in index.objects() {
                let mut table = vec![Vec::new(); index.hom(u, w).len()];
                for (ai, &a) in index.hom(u, v).iter().enumerate() {
                    for (bi, &b) in index.hom(v, w).iter().enumerate() {
                        let c = index.compose(b, a).expect("validated category is total");
                        table[index.hom_position(c)].push((bi, ai));
                    }
                }
                factorizations.push(table);
            }
        }
    }
    Ok(Arc::new(CauchyCategory { base, index, base_objects, objects, homs, factorizations }))
}

impl CauchyCategory {
    pub fn base(&self) -> &Arc<dyn PcmCategory> {
        &self.base
    }

    pub fn index(&self) -> &Arc<FinCategory> {
        &self.index
    }

    /// The object `(x, u)`.
    pub fn object(&self, x: &Object, u: ObjId) -> Object {
        Object::pair(x.clone(), Object::named(self.index.object_name(u)))
    }

    /// Splits `(X,U)` into the base object and the index object.
    pub fn split(&self, o: &Object) -> Result<(Object, ObjId), PcmCatError> {
        let unknown = || PcmCatError::UnknownObject(o.to_string());
        let Object::Pair(x, u) = o else { return Err(unknown()) };
        let Object::Named(u) = u.as_ref() else { return Err(unknown()) };
        let u = self.index.find_object(u).ok_or_else(unknown)?;
        if !self.base_objects.contains(x) {
            return Err(unknown());
        }
        Ok(((**x).clone(), u))
    }

    fn position(&self, o: &Object) -> Result<usize, PcmCatError> {
        self.objects.iter().position(|p| p == o).ok_or_else(|| PcmCatError::UnknownObject(o.to_string()))
    }

    fn factorization(&self, u: ObjId, v: ObjId, w: ObjId) -> &[Vec<(usize, usize)>] {
        let n = self.index.num_objects();
        &self.factorizations[(u.0 * n + v.0) * n + w.0]
    }

    fn coeffs<'a>(&self, e: &'a Element, len: usize, x: &Object, y: &Object) -> Result<&'a [Element], PcmCatError> {
        match e {
            Element::Coeffs(cs) if cs.len() == len => Ok(cs),
            _ => Err(PcmCatError::NotInHom(x.to_string(), y.to_string())),
        }
    }

    /// An arrow from explicit coefficients; fails unless they form a summable family.
    pub fn arrow(&self, src: &Object, tgt: &Object, coeffs: Vec<Element>) -> Result<CauchyArrow, PcmCatError> {
        let hom = self.hom(src, tgt)?;
        let e = Element::Coeffs(coeffs);
        if !hom.carrier().contains(&e) {
            return Err(PcmCatError::NotInHom(src.to_string(), tgt.to_string()));
        }
        let Element::Coeffs(coeffs) = e else { unreachable!() };
        let fam = IndexedFamily::from_values(coeffs.iter().cloned());
        let (x, _) = self.split(src)?;
        let (y, _) = self.split(tgt)?;
        if !self.base.hom(&x, &y)?.sum(&fam)?.is_summable() {
            return Err(PcmCatError::NotSummable(format!("coefficients of an arrow {src} -> {tgt}")));
        }
        Ok(CauchyArrow { src: src.clone(), tgt: tgt.clone(), coeffs })
    }

    /// An arrow given by named coefficients; unlisted index arrows get zero.
    pub fn arrow_from_names(
        &self,
        src: &Object,
        tgt: &Object,
        named: &BTreeMap<String, Element>,
    ) -> Result<CauchyArrow, PcmCatError> {
        let ((x, u), (y, v)) = (self.split(src)?, self.split(tgt)?);
        let zero = self.base.hom(&x, &y)?.zero().clone();
        let hom = self.index.hom(u, v);
        let mut coeffs = vec![zero; hom.len()];
        for (name, value) in named {
            let a = self.index.find_arrow(name).ok_or_else(|| FinCatError::UnknownArrow(name.clone()))?;
            let pos = hom.iter().position(|&b| b == a).ok_or_else(|| {
                PcmCatError::NotInHom(self.index.object_name(u).to_owned(), self.index.object_name(v).to_owned())
            })?;
            coeffs[pos] = value.clone();
        }
        self.arrow(src, tgt, coeffs)
    }

    /// `(name, coefficient)` pairs of an arrow in hom-set order.
    pub fn named_coeffs<'a>(&'a self, a: &'a CauchyArrow) -> Result<Vec<(&'a str, &'a Element)>, PcmCatError> {
        let ((_, u), (_, v)) = (self.split(&a.src)?, self.split(&a.tgt)?);
        Ok(self.index.hom(u, v).iter().map(|&b| self.index.arrow_name(b)).zip(&a.coeffs).collect())
    }

    /// `g ∘ f` by convolution.
    pub fn convolve(&self, g: &CauchyArrow, f: &CauchyArrow) -> Result<CauchyArrow, PcmCatError> {
        if f.tgt != g.src {
            return Err(PcmCatError::NotInHom(g.src.to_string(), f.tgt.to_string()));
        }
        let e = self.compose(&f.src, &f.tgt, &g.tgt, &g.element(), &f.element())?;
        let Element::Coeffs(coeffs) = e else { unreachable!("convolution yields coefficients") };
        Ok(CauchyArrow { src: f.src.clone(), tgt: g.tgt.clone(), coeffs })
    }

    /// `1_X` at `1_U`, zero elsewhere.
    pub fn identity_arrow(&self, o: &Object) -> Result<CauchyArrow, PcmCatError> {
        let Element::Coeffs(coeffs) = self.identity(o)? else { unreachable!() };
        Ok(CauchyArrow { src: o.clone(), tgt: o.clone(), coeffs })
    }

    /// Sums a family of arrows `src -> tgt`.
    pub fn sum_arrows(
        &self,
        src: &Object,
        tgt: &Object,
        fam: &IndexedFamily<CauchyArrow>,
    ) -> Result<SumResult, PcmCatError> {
        if let Some((l, _)) = fam.iter().find(|(_, a)| &a.src != src || &a.tgt != tgt) {
            return Err(PcmCatError::NotInHom(format!("{src} (entry {l})"), tgt.to_string()));
        }
        Ok(self.hom(src, tgt)?.sum(&fam.map(CauchyArrow::element))?)
    }

    /// `h ⋆ a`: coefficient `h` at the index arrow `a`, zero elsewhere.
    pub fn star(&self, x: &Object, y: &Object, h: &Element, a: ArrowId) -> Result<CauchyArrow, PcmCatError> {
        let (u, v) = (self.index.src(a), self.index.tgt(a));
        let (src, tgt) = (self.object(x, u), self.object(y, v));
        let zero = self.base.hom(x, y)?.zero().clone();
        let mut coeffs = vec![zero; self.index.hom(u, v).len()];
        coeffs[self.index.hom_position(a)] = h.clone();
        self.arrow(&src, &tgt, coeffs)
    }

    /// `γ_X(a) = 1_X ⋆ a`.
    pub fn gamma(&self, x: &Object, a: ArrowId) -> Result<CauchyArrow, PcmCatError> {
        self.star(x, x, &self.base.identity(x)?, a)
    }

    /// `η_U(h) = h ⋆ 1_U`.
    pub fn eta(&self, x: &Object, y: &Object, h: &Element, u: ObjId) -> Result<CauchyArrow, PcmCatError> {
        self.star(x, y, h, self.index.identity(u))
    }

    /// `σ(h) = Σ_a h(a)`.
    pub fn sigma(&self, a: &CauchyArrow) -> Result<Element, PcmCatError> {
        let ((x, _), (y, _)) = (self.split(&a.src)?, self.split(&a.tgt)?);
        let fam = IndexedFamily::from_values(a.coeffs.iter().cloned());
        self.base.hom(&x, &y)?.sum(&fam)?.into_value().ok_or_else(|| {
            PcmCatError::NotSummable(format!("coefficients of an arrow {} -> {}", a.src, a.tgt))
        })
    }
}

impl PcmCategory for CauchyCategory {
    fn name(&self) -> String {
        format!("{}[{}]", self.base.name(), self.index)
    }

    fn objects(&self) -> Vec<Object> {
        self.objects.clone()
    }

    fn hom(&self, x: &Object, y: &Object) -> Result<Pcm, PcmCatError> {
        let (i, j) = (self.position(x)?, self.position(y)?);
        Ok(self.homs[i * self.objects.len() + j].clone())
    }

    fn identity(&self, o: &Object) -> Result<Element, PcmCatError> {
        let (x, u) = self.split(o)?;
        let zero = self.base.hom(&x, &x)?.zero().clone();
        let mut coeffs = vec![zero; self.index.hom(u, u).len()];
        coeffs[self.index.hom_position(self.index.identity(u))] = self.base.identity(&x)?;
        Ok(Element::Coeffs(coeffs))
    }

    fn compose(&self, xo: &Object, yo: &Object, zo: &Object, g: &Element, f: &Element) -> Result<Element, PcmCatError> {
        let ((x, u), (y, v), (z, w)) = (self.split(xo)?, self.split(yo)?, self.split(zo)?);
        let f = self.coeffs(f, self.index.hom(u, v).len(), xo, yo)?;
        let g = self.coeffs(g, self.index.hom(v, w).len(), yo, zo)?;
        let target = self.base.hom(&x, &z)?;
        let (hom_uv, hom_vw) = (self.index.hom(u, v), self.index.hom(v, w));
        let mut out = Vec::with_capacity(self.index.hom(u, w).len());
        for (ci, pairs) in self.factorization(u, v, w).iter().enumerate() {
            let mut terms = Vec::with_capacity(pairs.len());
            for &(bi, ai) in pairs {
                let label = Label::pair(
                    &Label::new(self.index.arrow_name(hom_vw[bi])),
                    &Label::new(self.index.arrow_name(hom_uv[ai])),
                );
                terms.push((label, self.base.compose(&x, &y, &z, &g[bi], &f[ai])?));
            }
            let fam = IndexedFamily::new(terms)?;
            match target.sum(&fam)? {
                SumResult::Summable(s) => out.push(s),
                SumResult::NotSummable => {
                    let c = self.index.hom(u, w)[ci];
                    return Err(PcmCatError::NotSummable(format!(
                        "convolution coefficient at {} rejected by the base; the base violates strong distributivity",
                        self.index.arrow_name(c)
                    )));
                }
            }
        }
        Ok(Element::Coeffs(out))
    }

    fn sample(&self, xo: &Object, yo: &Object, rng: &mut ChaCha8Rng) -> Result<Element, PcmCatError> {
        let ((x, u), (y, v)) = (self.split(xo)?, self.split(yo)?);
        let base_hom = self.base.hom(&x, &y)?;
        let len = self.index.hom(u, v).len();
        for _ in 0..20 {
            let mut cs = Vec::with_capacity(len);
            for _ in 0..len {
                cs.push(if rng.gen_bool(0.5) { base_hom.zero().clone() } else { self.base.sample(&x, &y, rng)? });
            }
            if base_hom.sum(&IndexedFamily::from_values(cs.iter().cloned()))?.is_summable() {
                return Ok(Element::Coeffs(cs));
            }
        }
        Ok(Element::Coeffs(vec![base_hom.zero().clone(); len]))
    }
}

fn arrow_of(src: &Object, tgt: &Object, e: &Element) -> Result<Vec<Element>, PcmCatError> {
    match e {
        Element::Coeffs(cs) => Ok(cs.clone()),
        _ => Err(PcmCatError::NotInHom(src.to_string(), tgt.to_string())),
    }
}

/// `σ: C[D] -> C`, summing all coefficients.
pub fn sigma_functor(cc: &Arc<CauchyCategory>) -> PcmFunctor {
    let (c1, c2) = (cc.clone(), cc.clone());
    PcmFunctor::new(
        "sigma",
        cc.clone(),
        cc.base.clone(),
        move |o| Ok(c1.split(o)?.0),
        move |x, y, e| {
            let a = CauchyArrow { src: x.clone(), tgt: y.clone(), coeffs: arrow_of(x, y, e)? };
            c2.sigma(&a)
        },
    )
}

/// `η_U: C -> C[D]`.
pub fn eta_functor(cc: &Arc<CauchyCategory>, u: ObjId) -> PcmFunctor {
    let (c1, c2) = (cc.clone(), cc.clone());
    PcmFunctor::new(
        format!("eta[{}]", cc.index.object_name(u)),
        cc.base.clone(),
        cc.clone(),
        move |x| Ok(c1.object(x, u)),
        move |x, y, h| Ok(c2.eta(x, y, h, u)?.element()),
    )
}

/// `γ_X: D -> C[D]` as a map on arrows.
pub fn gamma_functor(cc: &Arc<CauchyCategory>, x: &Object) -> impl Fn(ArrowId) -> Result<CauchyArrow, PcmCatError> {
    let (cc, x) = (cc.clone(), x.clone());
    move |a| cc.gamma(&x, a)
}

/// `h ⋆ a` as a free function.
pub fn star_embed(cc: &CauchyCategory, x: &Object, y: &Object, h: &Element, a: ArrowId) -> Result<CauchyArrow, PcmCatError> {
    cc.star(x, y, h, a)
}

/// `Γ[D]: C[D] -> E[D]`, applying `Γ` to every coefficient. Returns the
/// functor together with the target `E[D]`.
pub fn map_base(gamma: &PcmFunctor, cc: &Arc<CauchyCategory>) -> Result<(PcmFunctor, Arc<CauchyCategory>), PcmCatError> {
    let target = cauchy_product(gamma.target.clone(), cc.index.clone())?;
    let (g1, g2) = (gamma.clone(), gamma.clone());
    let (s1, s2, t1) = (cc.clone(), cc.clone(), target.clone());
    let f = PcmFunctor::new(
        format!("{}[D]", gamma.name),
        cc.clone(),
        target.clone(),
        move |o| {
            let (x, u) = s1.split(o)?;
            Ok(t1.object(&g1.on_object(&x)?, u))
        },
        move |xo, yo, e| {
            let ((x, _), (y, _)) = (s2.split(xo)?, s2.split(yo)?);
            let cs = arrow_of(xo, yo, e)?;
            Ok(Element::Coeffs(cs.iter().map(|c| g2.on_arrow(&x, &y, c)).collect::<Result<_, _>>()?))
        },
    );
    Ok((f, target))
}

/// `C[Λ]: C[D] -> C[H]`: the coefficient at `x ∈ H(ΛU,ΛV)` is the sum over
/// the fiber `{a : Λ(a) = x}`. Returns the functor together with `C[H]`.
pub fn map_index(
    cc: &Arc<CauchyCategory>,
    lambda: &Functor,
    h: Arc<FinCategory>,
) -> Result<(PcmFunctor, Arc<CauchyCategory>), PcmCatError> {
    let report = crate::fincat::validate_functor(lambda, &cc.index, &h);
    if !report.passed() {
        return Err(FinCatError::Invalid(report.witness.unwrap_or_default()).into());
    }
    let target = cauchy_product(cc.base.clone(), h.clone())?;
    let (l1, l2) = (lambda.clone(), lambda.clone());
    let (s1, s2, t1, t2) = (cc.clone(), cc.clone(), target.clone(), target.clone());
    let f = PcmFunctor::new(
        "C[Lambda]",
        cc.clone(),
        target.clone(),
        move |o| {
            let (x, u) = s1.split(o)?;
            Ok(t1.object(&x, l1.on_object(u)))
        },
        move |xo, yo, e| {
            let ((x, u), (y, v)) = (s2.split(xo)?, s2.split(yo)?);
            let cs = arrow_of(xo, yo, e)?;
            let base_hom = s2.base.hom(&x, &y)?;
            let (lu, lv) = (l2.on_object(u), l2.on_object(v));
            let src_hom = s2.index.hom(u, v);
            let mut out = Vec::new();
            for &target_arrow in t2.index.hom(lu, lv) {
                let fiber: Vec<(Label, Element)> = src_hom
                    .iter()
                    .zip(cs.iter())
                    .filter(|(a, _)| l2.on_arrow(**a) == target_arrow)
                    .map(|(a, c)| (Label::new(s2.index.arrow_name(*a)), c.clone()))
                    .collect();
                let s = base_hom.sum(&IndexedFamily::new(fiber)?)?.into_value().ok_or_else(|| {
                    PcmCatError::NotSummable(format!(
                        "fiber over {} rejected by the base; the base violates partition-associativity",
                        t2.index.arrow_name(target_arrow)
                    ))
                })?;
                out.push(s);
            }
            Ok(Element::Coeffs(out))
        },
    );
    Ok((f, target))
}

#[cfg(test)]
mod tests;
