//! Finite categories given by explicit composition tables, functors between
//! them, and binary products.

use std::collections::BTreeMap;
use std::fmt;

use thiserror::Error;

use crate::report::{Report, Tally};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FinCatError {
    #[error("unknown object `{0}`")]
    UnknownObject(String),
    #[error("unknown arrow `{0}`")]
    UnknownArrow(String),
    #[error("name `{0}` declared twice")]
    DuplicateName(String),
    #[error("composite {0} given twice")]
    DuplicateComposite(String),
    #[error("not a monoid: {0}")]
    NotAMonoid(String),
    #[error("category laws violated: {0}")]
    Invalid(String),
    #[error("functor map incomplete: {0}")]
    IncompleteFunctor(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ObjId(pub usize);

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ArrowId(pub usize);

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ArrowInfo {
    pub name: String,
    pub src: ObjId,
    pub tgt: ObjId,
}

/// A category with finitely many objects and arrows.
///
/// Composition is stored as a dense table over all arrow pairs; entries
/// exist only where a composite was supplied. [`validate_category`] decides
/// whether the table actually forms a category.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FinCategory {
    objects: Vec<String>,
    arrows: Vec<ArrowInfo>,
    identities: Vec<ArrowId>,
    comp: Vec<Option<ArrowId>>,
    homs: Vec<Vec<ArrowId>>,
}

impl FinCategory {
    /// Assembles a category from named parts.
    ///
    /// `arrows` lists every arrow including identities, `identities` names
    /// the identity of each object in order, and `composites` lists
    /// `(g, f, g∘f)`. Identity composites that are not given are inferred.
    /// Only name resolution is checked here.
    pub fn from_parts(
        objects: Vec<String>,
        arrows: Vec<(String, String, String)>,
        identities: Vec<String>,
        composites: Vec<(String, String, String)>,
    ) -> Result<Self, FinCatError> {
        let mut obj_index = BTreeMap::new();
        for (i, o) in objects.iter().enumerate() {
            if obj_index.insert(o.clone(), ObjId(i)).is_some() {
                return Err(FinCatError::DuplicateName(o.clone()));
            }
        }
        let mut arrow_index = BTreeMap::new();
        let mut infos = Vec::with_capacity(arrows.len());
        for (i, (name, s, t)) in arrows.into_iter().enumerate() {
            let src = *obj_index.get(&s).ok_or(FinCatError::UnknownObject(s))?;
            let tgt = *obj_index.get(&t).ok_or(FinCatError::UnknownObject(t))?;
            if arrow_index.insert(name.clone(), ArrowId(i)).is_some() {
                return Err(FinCatError::DuplicateName(name));
            }
            infos.push(ArrowInfo { name, src, tgt });
        }
        if identities.len() != objects.len() {
            return Err(FinCatError::Invalid(format!(
                "{} identities for {} objects",
                identities.len(),
                objects.len()
            )));
        }
        let lookup = |n: &str| arrow_index.get(n).copied().ok_or_else(|| FinCatError::UnknownArrow(n.to_owned()));
        let ids = identities.iter().map(|n| lookup(n)).collect::<Result<Vec<_>, _>>()?;

        let n = infos.len();
        let mut comp = vec![None; n * n];
        for (g, f, h) in composites {
            let (gi, fi, hi) = (lookup(&g)?, lookup(&f)?, lookup(&h)?);
            let slot = &mut comp[gi.0 * n + fi.0];
            if slot.is_some() {
                return Err(FinCatError::DuplicateComposite(format!("{g} . {f}")));
            }
            *slot = Some(hi);
        }
        for (o, &id) in ids.iter().enumerate() {
            for (a, info) in infos.iter().enumerate() {
                if info.tgt.0 == o {
                    comp[id.0 * n + a].get_or_insert(ArrowId(a));
                }
                if info.src.0 == o {
                    comp[a * n + id.0].get_or_insert(ArrowId(a));
                }
            }
        }
        let k = objects.len();
        let mut homs = vec![Vec::new(); k * k];
        for (a, info) in infos.iter().enumerate() {
            homs[info.src.0 * k + info.tgt.0].push(ArrowId(a));
        }
        Ok(FinCategory { objects, arrows: infos, identities: ids, comp, homs })
    }

    /// [`FinCategory::from_parts`] followed by [`validate_category`].
    pub fn validated(
        objects: Vec<String>,
        arrows: Vec<(String, String, String)>,
        identities: Vec<String>,
        composites: Vec<(String, String, String)>,
    ) -> Result<Self, FinCatError> {
        let c = FinCategory::from_parts(objects, arrows, identities, composites)?;
        let r = validate_category(&c);
        if !r.passed() {
            return Err(FinCatError::Invalid(r.witness.unwrap_or_default()));
        }
        Ok(c)
    }

    /// One object, one arrow.
    pub fn trivial() -> Self {
        FinCategory::validated(
            vec!["U".into()],
            vec![("id_U".into(), "U".into(), "U".into())],
            vec!["id_U".into()],
            vec![],
        )
        .expect("trivial category")
    }

    /// The cyclic group `ℤ_n` as a one-object category with arrows `z0..z{n-1}`.
    pub fn cyclic(n: usize) -> Self {
        assert!(n >= 1, "cyclic group of order zero");
        let names: Vec<String> = (0..n).map(|i| format!("z{i}")).collect();
        let table: Vec<Vec<usize>> = (0..n).map(|i| (0..n).map(|j| (i + j) % n).collect()).collect();
        from_monoid(&names, &table).expect("cyclic groups are monoids")
    }

    pub fn num_objects(&self) -> usize {
        self.objects.len()
    }

    pub fn num_arrows(&self) -> usize {
        self.arrows.len()
    }

    pub fn objects(&self) -> impl Iterator<Item = ObjId> {
        (0..self.objects.len()).map(ObjId)
    }

    pub fn arrows(&self) -> impl Iterator<Item = ArrowId> {
        (0..self.arrows.len()).map(ArrowId)
    }

    pub fn object_name(&self, o: ObjId) -> &str {
        &self.objects[o.0]
    }

    pub fn arrow(&self, a: ArrowId) -> &ArrowInfo {
        &self.arrows[a.0]
    }

    pub fn arrow_name(&self, a: ArrowId) -> &str {
        &self.arrows[a.0].name
    }

    pub fn src(&self, a: ArrowId) -> ObjId {
        self.arrows[a.0].src
    }

    pub fn tgt(&self, a: ArrowId) -> ObjId {
        self.arrows[a.0].tgt
    }

    pub fn identity(&self, o: ObjId) -> ArrowId {
        self.identities[o.0]
    }

    pub fn find_object(&self, name: &str) -> Option<ObjId> {
        self.objects.iter().position(|o| o == name).map(ObjId)
    }

    pub fn find_arrow(&self, name: &str) -> Option<ArrowId> {
        self.arrows.iter().position(|a| a.name == name).map(ArrowId)
    }

    /// `g ∘ f`, if the table defines it.
    pub fn compose(&self, g: ArrowId, f: ArrowId) -> Option<ArrowId> {
        self.comp[g.0 * self.arrows.len() + f.0]
    }

    /// Arrows `u -> v`, in declaration order.
    pub fn hom(&self, u: ObjId, v: ObjId) -> &[ArrowId] {
        &self.homs[u.0 * self.objects.len() + v.0]
    }

    /// Position of `a` within its hom-set.
    pub fn hom_position(&self, a: ArrowId) -> usize {
        self.hom(self.src(a), self.tgt(a)).iter().position(|&b| b == a).expect("arrow lies in its hom-set")
    }

    /// Writes the category in `.fincat` form: implicit identities must be
    /// named `id_<object>`.
    pub fn to_fincat_text(&self) -> String {
        let mut out = String::new();
        out.push_str("objects");
        for o in &self.objects {
            out.push(' ');
            out.push_str(o);
        }
        out.push('\n');
        let is_id = |a: ArrowId| self.identities.contains(&a);
        for a in self.arrows() {
            if !is_id(a) {
                let info = self.arrow(a);
                out.push_str(&format!("arrow {} {} {}\n", info.name, self.objects[info.src.0], self.objects[info.tgt.0]));
            }
        }
        for g in self.arrows() {
            for f in self.arrows() {
                if is_id(g) || is_id(f) {
                    continue;
                }
                if let Some(h) = self.compose(g, f) {
                    out.push_str(&format!("compose {} {} = {}\n", self.arrow_name(g), self.arrow_name(f), self.arrow_name(h)));
                }
            }
        }
        out
    }
}

impl fmt::Display for FinCategory {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} objects, {} arrows", self.objects.len(), self.arrows.len())
    }
}

/// Checks that the table respects sources and targets, is total on
/// composable pairs, and satisfies the identity and associativity laws.
pub fn validate_category(c: &FinCategory) -> Report {
    let mut t = Tally::new("category");
    let name = |a: ArrowId| c.arrow_name(a).to_owned();
    for o in c.objects() {
        let id = c.identity(o);
        t.case();
        if c.src(id) != o || c.tgt(id) != o {
            t.fail(format!("identity {} is not an endo-arrow of {}", name(id), c.object_name(o)), None);
            return t.finish();
        }
    }
    for g in c.arrows() {
        for f in c.arrows() {
            t.case();
            let composable = c.src(g) == c.tgt(f);
            match (composable, c.compose(g, f)) {
                (false, Some(_)) => {
                    t.fail(format!("composite {} . {} defined for non-composable pair", name(g), name(f)), None);
                    return t.finish();
                }
                (true, None) => {
                    t.fail(format!("composite {} . {} missing (totality)", name(g), name(f)), None);
                    return t.finish();
                }
                (true, Some(h)) if c.src(h) != c.src(f) || c.tgt(h) != c.tgt(g) => {
                    t.fail(format!("{} . {} = {} has the wrong source or target", name(g), name(f), name(h)), None);
                    return t.finish();
                }
                _ => {}
            }
        }
    }
    for f in c.arrows() {
        t.case();
        let left = c.compose(c.identity(c.tgt(f)), f);
        let right = c.compose(f, c.identity(c.src(f)));
        if left != Some(f) || right != Some(f) {
            t.fail(format!("identity law fails at {}", name(f)), None);
            return t.finish();
        }
    }
    for h in c.arrows() {
        for g in c.arrows() {
            if c.src(h) != c.tgt(g) {
                continue;
            }
            let hg = c.compose(h, g).expect("totality checked");
            for f in c.arrows() {
                if c.src(g) != c.tgt(f) {
                    continue;
                }
                t.case();
                let gf = c.compose(g, f).expect("totality checked");
                if c.compose(hg, f) != c.compose(h, gf) {
                    t.fail(format!("associativity fails at ({}, {}, {})", name(h), name(g), name(f)), None);
                    return t.finish();
                }
            }
        }
    }
    t.finish()
}

/// One-object category of a monoid given by its multiplication table
/// (`table[i][j]` is the index of `elements[i] · elements[j]`). The unit
/// becomes the identity arrow.
pub fn from_monoid(elements: &[String], table: &[Vec<usize>]) -> Result<FinCategory, FinCatError> {
    let n = elements.len();
    if n == 0 || table.len() != n || table.iter().any(|row| row.len() != n || row.iter().any(|&k| k >= n)) {
        return Err(FinCatError::NotAMonoid("operation table is not total".into()));
    }
    let unit = (0..n)
        .find(|&e| (0..n).all(|x| table[e][x] == x && table[x][e] == x))
        .ok_or_else(|| FinCatError::NotAMonoid("no two-sided unit".into()))?;
    let arrows = elements.iter().map(|e| (e.clone(), "U".to_owned(), "U".to_owned())).collect();
    let mut composites = Vec::new();
    for i in 0..n {
        for j in 0..n {
            if i != unit && j != unit {
                composites.push((elements[i].clone(), elements[j].clone(), elements[table[i][j]].clone()));
            }
        }
    }
    let c = FinCategory::from_parts(vec!["U".into()], arrows, vec![elements[unit].clone()], composites)?;
    let r = validate_category(&c);
    if !r.passed() {
        return Err(FinCatError::NotAMonoid(r.witness.unwrap_or_default()));
    }
    Ok(c)
}

/// The product category: objects and arrows are pairs, composition is
/// componentwise. Object names are `(A,X)` and arrow names `(f,g)`.
pub fn product_category(a: &FinCategory, b: &FinCategory) -> FinCategory {
    let pair = |x: &str, y: &str| format!("({x},{y})");
    let mut objects = Vec::new();
    let mut identities = Vec::new();
    for oa in a.objects() {
        for ob in b.objects() {
            objects.push(pair(a.object_name(oa), b.object_name(ob)));
            identities.push(pair(a.arrow_name(a.identity(oa)), b.arrow_name(b.identity(ob))));
        }
    }
    let mut arrows = Vec::new();
    for fa in a.arrows() {
        for fb in b.arrows() {
            arrows.push((
                pair(a.arrow_name(fa), b.arrow_name(fb)),
                pair(a.object_name(a.src(fa)), b.object_name(b.src(fb))),
                pair(a.object_name(a.tgt(fa)), b.object_name(b.tgt(fb))),
            ));
        }
    }
    let mut composites = Vec::new();
    for ga in a.arrows() {
        for gb in b.arrows() {
            for fa in a.arrows() {
                for fb in b.arrows() {
                    if let (Some(ha), Some(hb)) = (a.compose(ga, fa), b.compose(gb, fb)) {
                        if identities.contains(&pair(a.arrow_name(ga), b.arrow_name(gb)))
                            || identities.contains(&pair(a.arrow_name(fa), b.arrow_name(fb)))
                        {
                            continue;
                        }
                        composites.push((
                            pair(a.arrow_name(ga), b.arrow_name(gb)),
                            pair(a.arrow_name(fa), b.arrow_name(fb)),
                            pair(a.arrow_name(ha), b.arrow_name(hb)),
                        ));
                    }
                }
            }
        }
    }
    FinCategory::from_parts(objects, arrows, identities, composites).expect("names of a product are unique")
}

/// Arrow of the product built by [`product_category`] for the pair `(fa, fb)`.
pub fn product_arrow(a: &FinCategory, b: &FinCategory, fa: ArrowId, fb: ArrowId) -> ArrowId {
    debug_assert!(fa.0 < a.num_arrows() && fb.0 < b.num_arrows());
    ArrowId(fa.0 * b.num_arrows() + fb.0)
}

/// A functor between finite categories, as object and arrow tables.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Functor {
    pub object_map: Vec<ObjId>,
    pub arrow_map: Vec<ArrowId>,
}

impl Functor {
    pub fn identity(c: &FinCategory) -> Self {
        Functor { object_map: c.objects().collect(), arrow_map: c.arrows().collect() }
    }

    /// Builds a functor from name tables; every object and arrow of `a` must be mapped.
    pub fn from_names(
        a: &FinCategory,
        b: &FinCategory,
        objects: &[(&str, &str)],
        arrows: &[(&str, &str)],
    ) -> Result<Self, FinCatError> {
        let mut object_map = vec![None; a.num_objects()];
        for (x, y) in objects {
            let xi = a.find_object(x).ok_or_else(|| FinCatError::UnknownObject((*x).into()))?;
            let yi = b.find_object(y).ok_or_else(|| FinCatError::UnknownObject((*y).into()))?;
            object_map[xi.0] = Some(yi);
        }
        let mut arrow_map = vec![None; a.num_arrows()];
        for (x, y) in arrows {
            let xi = a.find_arrow(x).ok_or_else(|| FinCatError::UnknownArrow((*x).into()))?;
            let yi = b.find_arrow(y).ok_or_else(|| FinCatError::UnknownArrow((*y).into()))?;
            arrow_map[xi.0] = Some(yi);
        }
        let object_map = object_map
            .into_iter()
            .enumerate()
            .map(|(i, o)| o.ok_or_else(|| FinCatError::IncompleteFunctor(a.object_name(ObjId(i)).into())))
            .collect::<Result<_, _>>()?;
        let arrow_map = arrow_map
            .into_iter()
            .enumerate()
            .map(|(i, o)| o.ok_or_else(|| FinCatError::IncompleteFunctor(a.arrow_name(ArrowId(i)).into())))
            .collect::<Result<_, _>>()?;
        Ok(Functor { object_map, arrow_map })
    }

    pub fn on_object(&self, o: ObjId) -> ObjId {
        self.object_map[o.0]
    }

    pub fn on_arrow(&self, a: ArrowId) -> ArrowId {
        self.arrow_map[a.0]
    }

    /// `next ∘ self`.
    pub fn then(&self, next: &Functor) -> Functor {
        Functor {
            object_map: self.object_map.iter().map(|&o| next.on_object(o)).collect(),
            arrow_map: self.arrow_map.iter().map(|&a| next.on_arrow(a)).collect(),
        }
    }

    /// The two projections out of `product_category(a, b)`.
    pub fn projections(a: &FinCategory, b: &FinCategory) -> (Functor, Functor) {
        let mut p1 = Functor { object_map: vec![], arrow_map: vec![] };
        let mut p2 = Functor { object_map: vec![], arrow_map: vec![] };
        for oa in a.objects() {
            for ob in b.objects() {
                p1.object_map.push(oa);
                p2.object_map.push(ob);
            }
        }
        for fa in a.arrows() {
            for fb in b.arrows() {
                p1.arrow_map.push(fa);
                p2.arrow_map.push(fb);
            }
        }
        (p1, p2)
    }
}

/// Checks that `func` preserves sources, targets, identities and every composite.
pub fn validate_functor(func: &Functor, a: &FinCategory, b: &FinCategory) -> Report {
    let mut t = Tally::new("functor");
    if func.object_map.len() != a.num_objects() || func.arrow_map.len() != a.num_arrows() {
        t.fail("object or arrow map does not cover the source category", None);
        return t.finish();
    }
    if func.object_map.iter().any(|o| o.0 >= b.num_objects()) || func.arrow_map.iter().any(|x| x.0 >= b.num_arrows())
    {
        t.fail("map leaves the target category", None);
        return t.finish();
    }
    for f in a.arrows() {
        t.case();
        let img = func.on_arrow(f);
        if b.src(img) != func.on_object(a.src(f)) || b.tgt(img) != func.on_object(a.tgt(f)) {
            t.fail(format!("{} is sent outside the image hom-set", a.arrow_name(f)), None);
            return t.finish();
        }
    }
    for o in a.objects() {
        t.case();
        if func.on_arrow(a.identity(o)) != b.identity(func.on_object(o)) {
            t.fail(format!("identity of {} not preserved", a.object_name(o)), None);
            return t.finish();
        }
    }
    for g in a.arrows() {
        for f in a.arrows() {
            let Some(h) = a.compose(g, f) else { continue };
            t.case();
            if b.compose(func.on_arrow(g), func.on_arrow(f)) != Some(func.on_arrow(h)) {
                t.fail(format!("composite ({}, {}) not preserved", a.arrow_name(g), a.arrow_name(f)), None);
                return t.finish();
            }
        }
    }
    t.finish()
}

#[cfg(test)]
pub(crate) mod tests {
    use super::*;

    fn s(x: &str) -> String {
        x.to_owned()
    }

    /// Objects A, B; an idempotent `e` on A; two arrows `f, g: A -> B` with
    /// `f∘e = f` and `g∘e = f`.
    pub(crate) fn two_object_five_arrow() -> FinCategory {
        FinCategory::validated(
            vec![s("A"), s("B")],
            vec![
                (s("id_A"), s("A"), s("A")),
                (s("id_B"), s("B"), s("B")),
                (s("e"), s("A"), s("A")),
                (s("f"), s("A"), s("B")),
                (s("g"), s("A"), s("B")),
            ],
            vec![s("id_A"), s("id_B")],
            vec![(s("e"), s("e"), s("e")), (s("f"), s("e"), s("f")), (s("g"), s("e"), s("f"))],
        )
        .unwrap()
    }

    #[test]
    fn trivial_and_cyclic_categories_validate() {
        assert!(validate_category(&FinCategory::trivial()).passed());
        let z2 = FinCategory::cyclic(2);
        let r = validate_category(&z2);
        assert!(r.passed());
        assert_eq!(z2.num_arrows(), 2);
        assert_eq!(FinCategory::cyclic(3).num_arrows(), 3);
        assert!(validate_category(&two_object_five_arrow()).passed());
    }

    #[test]
    fn associativity_failure_is_reported() {
        // one object, arrows a, b with a·a = b, a·b = a, b·a = b, b·b = b and
        // no unit among {a, b}: add an explicit identity
        let c = FinCategory::from_parts(
            vec![s("U")],
            vec![(s("id"), s("U"), s("U")), (s("a"), s("U"), s("U")), (s("b"), s("U"), s("U"))],
            vec![s("id")],
            vec![
                (s("a"), s("a"), s("b")),
                (s("a"), s("b"), s("a")),
                (s("b"), s("a"), s("b")),
                (s("b"), s("b"), s("b")),
            ],
        )
        .unwrap();
        let r = validate_category(&c);
        assert!(!r.passed());
        assert!(r.witness.unwrap().contains("associativity"));
    }

    #[test]
    fn missing_composite_fails_totality() {
        let c = FinCategory::from_parts(
            vec![s("U")],
            vec![(s("id"), s("U"), s("U")), (s("a"), s("U"), s("U"))],
            vec![s("id")],
            vec![],
        )
        .unwrap();
        let r = validate_category(&c);
        assert!(r.witness.unwrap().contains("totality"));
    }

    #[test]
    fn from_monoid_cases() {
        let names: Vec<String> = ["x", "y"].map(String::from).to_vec();
        // x·x = y is fine but the table below has no unit
        let no_unit = vec![vec![1, 1], vec![1, 1]];
        assert!(matches!(from_monoid(&names, &no_unit), Err(FinCatError::NotAMonoid(_))));
        let names3: Vec<String> = ["e", "a", "b"].map(String::from).to_vec();
        // unit e; a·a = b, a·b = a, b·a = b, b·b = b is not associative:
        // (a·a)·b = b·b = b but a·(a·b) = a·a = b ... pick a table that fails
        let bad = vec![vec![0, 1, 2], vec![1, 2, 1], vec![2, 1, 2]];
        // (a·a)·a = b·a = 1 = a, a·(a·a) = a·b = 1 = a; (a·b)·b = a·b = a, a·(b·b) = a·b = a;
        // (b·a)·a = a·a = b, b·(a·a) = b·b = b; (a·a)·b = b·b = b, a·(a·b) = a·a = b;
        // (b·a)·b = a·b = a, b·(a·b) = b·a = a; (a·b)·a = a·a = b, a·(b·a) = a·a = b;
        // (b·b)·a = b·a = a, b·(b·a) = b·a = a; (b·b)·b = b, b·(b·b) = b; associative
        assert!(from_monoid(&names3, &bad).is_ok());
        let nonassoc = vec![vec![0, 1, 2], vec![1, 2, 2], vec![2, 1, 2]];
        // (a·b)·a = b·a = a but a·(b·a) = a·a = b
        assert!(matches!(from_monoid(&names3, &nonassoc), Err(FinCatError::NotAMonoid(_))));
    }

    #[test]
    fn products() {
        let z2 = FinCategory::cyclic(2);
        let z3 = FinCategory::cyclic(3);
        let p = product_category(&z2, &z3);
        assert_eq!(p.num_objects(), 1);
        assert_eq!(p.num_arrows(), 6);
        assert!(validate_category(&p).passed());
        let (p1, p2) = Functor::projections(&z2, &z3);
        assert!(validate_functor(&p1, &p, &z2).passed());
        assert!(validate_functor(&p2, &p, &z3).passed());

        let t = product_category(&z3, &FinCategory::trivial());
        assert_eq!(t.num_arrows(), 3);
        assert!(validate_category(&t).passed());

        let c = two_object_five_arrow();
        let cc = product_category(&c, &c);
        assert!(validate_category(&cc).passed());
        assert_eq!(cc.num_objects(), 4);
        for u in c.objects() {
            for v in c.objects() {
                let (pu, pv) = (ObjId(u.0 * 2 + u.0), ObjId(v.0 * 2 + v.0));
                assert_eq!(cc.hom(pu, pv).len(), c.hom(u, v).len() * c.hom(u, v).len());
            }
        }
    }

    #[test]
    fn reduction_functor() {
        let z4 = FinCategory::cyclic(4);
        let z2 = FinCategory::cyclic(2);
        let red = Functor::from_names(
            &z4,
            &z2,
            &[("U", "U")],
            &[("z0", "z0"), ("z1", "z1"), ("z2", "z0"), ("z3", "z1")],
        )
        .unwrap();
        let r = validate_functor(&red, &z4, &z2);
        assert!(r.passed());
        assert!(validate_functor(&Functor::identity(&z4), &z4, &z4).passed());

        let broken = Functor::from_names(
            &z4,
            &z2,
            &[("U", "U")],
            &[("z0", "z0"), ("z1", "z1"), ("z2", "z1"), ("z3", "z1")],
        )
        .unwrap();
        let r = validate_functor(&broken, &z4, &z2);
        assert!(!r.passed());
        assert!(r.witness.unwrap().contains("not preserved"));
    }

    #[test]
    fn fincat_text_lists_non_identity_composites() {
        let t = two_object_five_arrow().to_fincat_text();
        assert!(t.starts_with("objects A B\n"));
        assert!(t.contains("compose g e = f\n"));
        assert!(!t.contains("id_A"));
    }
}
