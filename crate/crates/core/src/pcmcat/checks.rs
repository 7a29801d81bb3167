use std::collections::BTreeMap;

use rand::Rng;
use rand_chacha::ChaCha8Rng;

use super::{Object, PcmCatError, PcmCategory, PcmFunctor};
use crate::family::{IndexedFamily, Label};
use crate::pcm::{Element, Pcm, SumResult};
use crate::report::{families, random_family, CheckConfig, Counterexample, Report, Tally};

/// Largest `M` for which the monoid-sum law checks `Σ_{i=1..M} 1`.
pub const MONOID_SUM_BOUND: usize = 8;

/// Associativity samples per object quadruple when hom-sets are too large
/// to enumerate.
const ASSOCIATIVITY_SAMPLES: usize = 500;

/// Largest number of arrow triples checked exhaustively per object quadruple.
const EXHAUSTIVE_TRIPLES: usize = 512;

type Fam = IndexedFamily<Element>;

struct Hom {
    pcm: Pcm,
    grid: Vec<Element>,
    exhaustive: bool,
}

/// Hom PCMs and sample grids for every ordered object pair, keyed by object positions.
fn hom_table(c: &dyn PcmCategory, objs: &[Object], rng: &mut ChaCha8Rng) -> Result<BTreeMap<(usize, usize), Hom>, PcmCatError> {
    let mut out = BTreeMap::new();
    for (i, x) in objs.iter().enumerate() {
        for (j, y) in objs.iter().enumerate() {
            let pcm = c.hom(x, y)?;
            let g = pcm.grid(rng);
            out.insert((i, j), Hom { pcm, grid: g.elements, exhaustive: g.exhaustive });
        }
    }
    Ok(out)
}

fn summable_families(hom: &Hom, take: usize, max_size: usize, cfg: &CheckConfig, rng: &mut ChaCha8Rng) -> Vec<(Fam, Element)> {
    let grid = &hom.grid[..take.min(hom.grid.len())];
    families(grid, max_size, cfg.family_budget, rng)
        .into_iter()
        .filter_map(|f| match hom.pcm.sum(&f) {
            Ok(SumResult::Summable(s)) => Some((f, s)),
            _ => None,
        })
        .collect()
}

fn objects_cx(objs: &[&Object]) -> Vec<Object> {
    objs.iter().map(|o| (*o).clone()).collect()
}

/// The family `{g_j ∘ f_i}` indexed by `J × I`.
pub fn product_family(
    c: &dyn PcmCategory,
    x: &Object,
    y: &Object,
    z: &Object,
    g: &Fam,
    f: &Fam,
) -> Result<Fam, PcmCatError> {
    let mut entries = Vec::with_capacity(g.len() * f.len());
    for (j, gj) in g.iter() {
        for (i, fi) in f.iter() {
            entries.push((Label::pair(j, i), c.compose(x, y, z, gj, fi)?));
        }
    }
    Ok(IndexedFamily::new(entries)?)
}

/// Why `f ⊆ hom(x,y)`, `g ⊆ hom(y,z)` violate strong distributivity, if they do.
/// Returns `None` when either family is not summable.
pub(crate) fn sd_violation(
    c: &dyn PcmCategory,
    xyz: [&Object; 3],
    f: &Fam,
    g: &Fam,
    tol: f64,
) -> Result<Option<String>, PcmCatError> {
    let [x, y, z] = xyz;
    let (Some(sf), Some(sg)) = (c.hom(x, y)?.sum(f)?.into_value(), c.hom(y, z)?.sum(g)?.into_value()) else {
        return Ok(None);
    };
    let lhs = c.compose(x, y, z, &sg, &sf)?;
    let prod = product_family(c, x, y, z, g, f)?;
    Ok(match c.hom(x, z)?.sum(&prod)? {
        SumResult::NotSummable => Some("product family not summable".into()),
        SumResult::Summable(v) if !v.close_to(&lhs, tol) => Some(format!("(sum g)(sum f)={lhs} but sum g_j f_i={v}")),
        SumResult::Summable(_) => None,
    })
}

/// Checks strong distributivity: for summable `{f_i} ⊆ hom(x,y)` and
/// `{g_j} ⊆ hom(y,z)`, the family `{g_j f_i}` is summable with sum
/// `(Σg)(Σf)`.
///
/// Families of size at most `max_family` over the first three grid
/// elements of each hom-set are enumerated for every object triple, then
/// `cfg.trials` random triples and families are drawn from the full grids.
pub fn check_strong_distributivity(c: &dyn PcmCategory, max_family: usize, cfg: &CheckConfig) -> Report {
    let name = format!("strong_distributivity[{}]", c.name());
    let mut rng = cfg.rng(&name);
    let mut t = Tally::new(name);
    let objs = c.objects();
    let homs = match hom_table(c, &objs, &mut rng) {
        Ok(h) => h,
        Err(e) => {
            t.fail(e.to_string(), None);
            return t.finish();
        }
    };
    let small: BTreeMap<_, _> =
        homs.iter().map(|(k, h)| (*k, summable_families(h, 3, max_family, cfg, &mut rng))).collect();
    let n = objs.len();
    let check = |t: &mut Tally, i: usize, j: usize, k: usize, f: &Fam, g: &Fam| {
        t.case();
        let xyz = [&objs[i], &objs[j], &objs[k]];
        let msg = match sd_violation(c, xyz, f, g, cfg.tolerance) {
            Ok(m) => m,
            Err(e) => Some(e.to_string()),
        };
        if let Some(msg) = msg {
            let cx = Counterexample { objects: objects_cx(&xyz), families: vec![f.clone(), g.clone()] };
            t.fail(format!("f={f} g={g} {msg}"), Some(cx));
        }
    };
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                for (f, _) in &small[&(i, j)] {
                    for (g, _) in &small[&(j, k)] {
                        check(&mut t, i, j, k, f, g);
                        if t.failed() {
                            return t.finish();
                        }
                    }
                }
            }
        }
    }
    for _ in 0..cfg.trials {
        let (i, j, k) = (rng.gen_range(0..n), rng.gen_range(0..n), rng.gen_range(0..n));
        let f = draw_summable(&homs[&(i, j)], max_family, &mut rng);
        let g = draw_summable(&homs[&(j, k)], max_family, &mut rng);
        check(&mut t, i, j, k, &f, &g);
        if t.failed() {
            break;
        }
    }
    t.finish()
}

/// A random summable family; falls back to the empty family.
fn draw_summable(hom: &Hom, max_size: usize, rng: &mut ChaCha8Rng) -> Fam {
    for _ in 0..50 {
        let f = random_family(&hom.grid, max_size, rng);
        if matches!(hom.pcm.sum(&f), Ok(SumResult::Summable(_))) {
            return f;
        }
    }
    IndexedFamily::empty()
}

fn sum_of(p: &Pcm, f: &Fam) -> Result<Option<Element>, PcmCatError> {
    Ok(p.sum(f)?.into_value())
}

/// The laws derived from strong distributivity: left and right
/// distributivity, reordering of double sums, summability of composites of
/// sums (words of length up to 3) with their subfamilies, and sums of
/// repeated identities and arrows (up to `bound` copies) where a summable
/// endo-family containing the identity forces them.
pub fn derived_laws(c: &dyn PcmCategory, bound: usize, cfg: &CheckConfig) -> Vec<Report> {
    let base = c.name();
    let mut rng = cfg.rng(&format!("derived[{base}]"));
    let objs = c.objects();
    let homs = match hom_table(c, &objs, &mut rng) {
        Ok(h) => h,
        Err(e) => return vec![Report::fail(format!("derived[{base}]"), 0, e.to_string())],
    };
    vec![
        run(format!("distributivity[{base}]"), |t| distributivity(c, &objs, &homs, cfg, &mut rng, t)),
        run(format!("reordering[{base}]"), |t| reordering(c, &objs, &homs, cfg, &mut rng, t)),
        run(format!("composing_sums[{base}]"), |t| composing_sums(c, &objs, &homs, cfg, &mut rng, t)),
        run(format!("monoid_sums[{base}]"), |t| monoid_sums(c, &objs, &homs, bound, t)),
    ]
}

fn run(name: String, body: impl FnOnce(&mut Tally) -> Result<(), PcmCatError>) -> Report {
    let mut t = Tally::new(name);
    if let Err(e) = body(&mut t) {
        t.fail(e.to_string(), None);
    }
    t.finish()
}

fn distributivity(
    c: &dyn PcmCategory,
    objs: &[Object],
    homs: &BTreeMap<(usize, usize), Hom>,
    cfg: &CheckConfig,
    rng: &mut ChaCha8Rng,
    t: &mut Tally,
) -> Result<(), PcmCatError> {
    let n = objs.len();
    for i in 0..n {
        for j in 0..n {
            let fams = summable_families(&homs[&(i, j)], 4, 3, cfg, rng);
            for k in 0..n {
                let (x, y, z) = (&objs[i], &objs[j], &objs[k]);
                let hxz = &homs[&(i, k)].pcm;
                // h ∘ (Σ f) for h: y -> z
                for h in &homs[&(j, k)].grid {
                    for (f, sf) in &fams {
                        t.case();
                        let lhs = c.compose(x, y, z, h, sf)?;
                        let img = f.try_map(|fi| c.compose(x, y, z, h, fi))?;
                        if !sum_of(hxz, &img)?.is_some_and(|v| v.close_to(&lhs, cfg.tolerance)) {
                            t.fail(format!("left: h={h} f={f}"), None);
                            return Ok(());
                        }
                    }
                }
                // (Σ g) ∘ h for g ⊆ hom(y, z), h: x -> y
                let gfams = summable_families(&homs[&(j, k)], 4, 3, cfg, rng);
                for h in &homs[&(i, j)].grid {
                    for (g, sg) in &gfams {
                        t.case();
                        let lhs = c.compose(x, y, z, sg, h)?;
                        let img = g.try_map(|gj| c.compose(x, y, z, gj, h))?;
                        if !sum_of(hxz, &img)?.is_some_and(|v| v.close_to(&lhs, cfg.tolerance)) {
                            t.fail(format!("right: g={g} h={h}"), None);
                            return Ok(());
                        }
                    }
                }
            }
        }
    }
    Ok(())
}

fn reordering(
    c: &dyn PcmCategory,
    objs: &[Object],
    homs: &BTreeMap<(usize, usize), Hom>,
    cfg: &CheckConfig,
    rng: &mut ChaCha8Rng,
    t: &mut Tally,
) -> Result<(), PcmCatError> {
    let n = objs.len();
    for i in 0..n {
        for j in 0..n {
            let ffams = summable_families(&homs[&(i, j)], 3, 2, cfg, rng);
            for k in 0..n {
                let (x, y, z) = (&objs[i], &objs[j], &objs[k]);
                let hxz = &homs[&(i, k)].pcm;
                let gfams = summable_families(&homs[&(j, k)], 3, 2, cfg, rng);
                for (f, _) in &ffams {
                    for (g, _) in &gfams {
                        t.case();
                        let joint = sum_of(hxz, &product_family(c, x, y, z, g, f)?)?;
                        let by_i = iterated(hxz, f, |fi| g.try_map(|gj| c.compose(x, y, z, gj, fi)))?;
                        let by_j = iterated(hxz, g, |gj| f.try_map(|fi| c.compose(x, y, z, gj, fi)))?;
                        let agree = match (&joint, &by_i, &by_j) {
                            (Some(a), Some(b), Some(d)) => a.close_to(b, cfg.tolerance) && a.close_to(d, cfg.tolerance),
                            _ => false,
                        };
                        if !agree {
                            let show = |v: &Option<Element>| v.as_ref().map_or("undefined".to_owned(), |e| e.to_string());
                            t.fail(
                                format!(
                                    "f={f} g={g} joint={} by_i={} by_j={}",
                                    show(&joint),
                                    show(&by_i),
                                    show(&by_j)
                                ),
                                None,
                            );
                            return Ok(());
                        }
                    }
                }
            }
        }
    }
    Ok(())
}

/// `Σ_o Σ inner(o)`, or `None` if some sum is undefined.
fn iterated(
    p: &Pcm,
    outer: &Fam,
    inner: impl Fn(&Element) -> Result<Fam, PcmCatError>,
) -> Result<Option<Element>, PcmCatError> {
    let mut sums = Vec::with_capacity(outer.len());
    for (l, o) in outer.iter() {
        match sum_of(p, &inner(o)?)? {
            Some(s) => sums.push((l.clone(), s)),
            None => return Ok(None),
        }
    }
    sum_of(p, &IndexedFamily::new(sums)?)
}

/// All words `s_{i_n} ∘ ... ∘ s_{i_1}` over an endo-family, indexed by `I^n`.
fn words(c: &dyn PcmCategory, x: &Object, s: &Fam, n: usize) -> Result<Fam, PcmCatError> {
    let mut acc: Fam = s.clone();
    for _ in 1..n {
        let mut entries = Vec::new();
        for (l, si) in s.iter() {
            for (w, word) in acc.iter() {
                entries.push((Label::pair(l, w), c.compose(x, x, x, si, word)?));
            }
        }
        acc = IndexedFamily::new(entries)?;
    }
    Ok(acc)
}

fn composing_sums(
    c: &dyn PcmCategory,
    objs: &[Object],
    homs: &BTreeMap<(usize, usize), Hom>,
    cfg: &CheckConfig,
    rng: &mut ChaCha8Rng,
    t: &mut Tally,
) -> Result<(), PcmCatError> {
    for (i, x) in objs.iter().enumerate() {
        let hom = &homs[&(i, i)];
        for (s, total) in summable_families(hom, 4, 2, cfg, rng) {
            let mut power = total.clone();
            for n in 1..=3 {
                if n > 1 {
                    power = c.compose(x, x, x, &total, &power)?;
                }
                t.case();
                let w = words(c, x, &s, n)?;
                match sum_of(&hom.pcm, &w)? {
                    Some(v) if v.close_to(&power, cfg.tolerance) => {}
                    Some(v) => {
                        t.fail(format!("s={s} n={n}: sum of words {v} differs from (sum s)^n {power}"), None);
                        return Ok(());
                    }
                    None => {
                        t.fail(format!("s={s} n={n}: family of words not summable"), None);
                        return Ok(());
                    }
                }
                let labels: Vec<Label> = w.labels().cloned().collect();
                // at most 2^3 words, so every subfamily is checked
                for mask in 0..1u64 << labels.len() {
                    t.case();
                    let keep = labels.iter().enumerate().filter(|(b, _)| mask >> b & 1 == 1).map(|(_, l)| l.clone()).collect();
                    if sum_of(&hom.pcm, &w.subfamily(&keep)?)?.is_none() {
                        t.fail(format!("s={s} n={n}: a subfamily of the words is not summable"), None);
                        return Ok(());
                    }
                }
            }
        }
    }
    Ok(())
}

fn copies(x: &Element, m: usize) -> Fam {
    IndexedFamily::from_values(std::iter::repeat_n(x.clone(), m))
}

fn monoid_sums(
    c: &dyn PcmCategory,
    objs: &[Object],
    homs: &BTreeMap<(usize, usize), Hom>,
    bound: usize,
    t: &mut Tally,
) -> Result<(), PcmCatError> {
    for (i, x) in objs.iter().enumerate() {
        let hom = &homs[&(i, i)];
        let id = c.identity(x)?;
        let pool: Vec<&Element> = hom.grid.iter().take(5).collect();
        let mut candidates: Vec<Vec<Element>> = vec![vec![id.clone(), id.clone()]];
        for (a_ix, a) in pool.iter().enumerate() {
            candidates.push(vec![id.clone(), (*a).clone()]);
            for b in &pool[a_ix..] {
                candidates.push(vec![id.clone(), (*a).clone(), (*b).clone()]);
            }
        }
        for cand in candidates {
            let fam = IndexedFamily::from_values(cand.clone());
            if sum_of(&hom.pcm, &fam)?.is_none() {
                continue;
            }
            // finite subsets of the generated submonoid: distinct words of length <= 2
            t.case();
            let mut generated: Vec<Element> = Vec::new();
            for a in &cand {
                for b in &cand {
                    for w in [a.clone(), c.compose(x, x, x, a, b)?] {
                        if !generated.contains(&w) {
                            generated.push(w);
                        }
                    }
                }
            }
            if sum_of(&hom.pcm, &IndexedFamily::from_values(generated.clone()))?.is_none() {
                t.fail(format!("F={fam}: the generated elements {{{}}} are not summable", join(&generated)), None);
                return Ok(());
            }
            if !forces_repeated_sums(c, x, &id, &cand)? {
                continue;
            }
            for m in 1..=bound {
                t.case();
                if sum_of(&hom.pcm, &copies(&id, m))?.is_none() {
                    t.fail(format!("F={fam}: {m} copies of the identity are not summable"), None);
                    return Ok(());
                }
                for (j, y) in objs.iter().enumerate() {
                    for f in homs[&(i, j)].grid.iter().take(4) {
                        t.case();
                        if sum_of(&homs[&(i, j)].pcm, &copies(f, m))?.is_none() {
                            t.fail(format!("F={fam}: {m} copies of {f}: {x} -> {y} are not summable"), None);
                            return Ok(());
                        }
                    }
                    for g in homs[&(j, i)].grid.iter().take(4) {
                        t.case();
                        if sum_of(&homs[&(j, i)].pcm, &copies(g, m))?.is_none() {
                            t.fail(format!("F={fam}: {m} copies of {g}: {y} -> {x} are not summable"), None);
                            return Ok(());
                        }
                    }
                }
            }
        }
    }
    Ok(())
}

fn join(xs: &[Element]) -> String {
    xs.iter().map(|e| e.to_string()).collect::<Vec<_>>().join(",")
}

/// Whether a summable endo-family containing the identity forces every
/// finite multiple of the identity to be summable: either the identity
/// occurs twice, or a word of length at most 3 in the non-identity members
/// equals the identity.
fn forces_repeated_sums(c: &dyn PcmCategory, x: &Object, id: &Element, fam: &[Element]) -> Result<bool, PcmCatError> {
    if fam.iter().filter(|e| *e == id).count() >= 2 {
        return Ok(true);
    }
    let rest: Vec<&Element> = fam.iter().filter(|e| *e != id).collect();
    let mut layer: Vec<Element> = rest.iter().map(|e| (*e).clone()).collect();
    for _ in 0..3 {
        if layer.iter().any(|w| w == id) {
            return Ok(true);
        }
        let mut next = Vec::new();
        for w in &layer {
            for s in &rest {
                next.push(c.compose(x, x, x, s, w)?);
            }
        }
        layer = next;
    }
    Ok(false)
}

/// `f ∘ 0 = 0` and `0 ∘ g = 0` for every grid arrow and object triple.
pub fn check_zero_absorption(c: &dyn PcmCategory, cfg: &CheckConfig) -> Report {
    let name = format!("zero_absorption[{}]", c.name());
    let mut rng = cfg.rng(&name);
    run(name, |t| {
        let objs = c.objects();
        let homs = hom_table(c, &objs, &mut rng)?;
        let n = objs.len();
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    let (x, y, z) = (&objs[i], &objs[j], &objs[k]);
                    let (zxy, zyz, zxz) = (homs[&(i, j)].pcm.zero(), homs[&(j, k)].pcm.zero(), homs[&(i, k)].pcm.zero());
                    for f in &homs[&(j, k)].grid {
                        t.case();
                        if !c.compose(x, y, z, f, zxy)?.close_to(zxz, cfg.tolerance) {
                            t.fail(format!("{f} . 0 != 0 in hom({x},{z})"), None);
                            return Ok(());
                        }
                    }
                    for g in &homs[&(i, j)].grid {
                        t.case();
                        if !c.compose(x, y, z, zyz, g)?.close_to(zxz, cfg.tolerance) {
                            t.fail(format!("0 . {g} != 0 in hom({x},{z})"), None);
                            return Ok(());
                        }
                    }
                }
            }
        }
        Ok(())
    })
}

/// Identity laws on every grid arrow and associativity on every object
/// quadruple: exhaustive when the three hom-sets are fully enumerated and
/// small, otherwise on sampled triples.
pub fn check_category_laws(c: &dyn PcmCategory, cfg: &CheckConfig) -> Report {
    let name = format!("category_laws[{}]", c.name());
    let mut rng = cfg.rng(&name);
    run(name, |t| {
        let objs = c.objects();
        let homs = hom_table(c, &objs, &mut rng)?;
        let n = objs.len();
        for i in 0..n {
            for j in 0..n {
                let (x, y) = (&objs[i], &objs[j]);
                let (ix, iy) = (c.identity(x)?, c.identity(y)?);
                for f in &homs[&(i, j)].grid {
                    t.case();
                    let left = c.compose(x, y, y, &iy, f)?;
                    let right = c.compose(x, x, y, f, &ix)?;
                    if !left.close_to(f, cfg.tolerance) || !right.close_to(f, cfg.tolerance) {
                        t.fail(format!("identity law fails at {f}: {x} -> {y}"), None);
                        return Ok(());
                    }
                }
            }
        }
        for a in 0..n {
            for b in 0..n {
                for d in 0..n {
                    for e in 0..n {
                        let (w, x, y, z) = (&objs[a], &objs[b], &objs[d], &objs[e]);
                        let (hf, hg, hh) = (&homs[&(a, b)], &homs[&(b, d)], &homs[&(d, e)]);
                        let size = hf.grid.len() * hg.grid.len() * hh.grid.len();
                        let triples: Vec<(Element, Element, Element)> =
                            if hf.exhaustive && hg.exhaustive && hh.exhaustive && size <= EXHAUSTIVE_TRIPLES {
                                let mut v = Vec::with_capacity(size);
                                for f in &hf.grid {
                                    for g in &hg.grid {
                                        for h in &hh.grid {
                                            v.push((f.clone(), g.clone(), h.clone()));
                                        }
                                    }
                                }
                                v
                            } else {
                                (0..ASSOCIATIVITY_SAMPLES)
                                    .map(|_| Ok((c.sample(w, x, &mut rng)?, c.sample(x, y, &mut rng)?, c.sample(y, z, &mut rng)?)))
                                    .collect::<Result<_, PcmCatError>>()?
                            };
                        for (f, g, h) in triples {
                            t.case();
                            let hg_ = c.compose(x, y, z, &h, &g)?;
                            let gf = c.compose(w, x, y, &g, &f)?;
                            let l = c.compose(w, x, z, &hg_, &f)?;
                            let r = c.compose(w, y, z, &h, &gf)?;
                            if !l.close_to(&r, cfg.tolerance) {
                                t.fail(format!("associativity fails at h={h} g={g} f={f}"), None);
                                return Ok(());
                            }
                        }
                    }
                }
            }
        }
        Ok(())
    })
}

/// Checks that `func` sends summable families of size at most `bound` to
/// summable families with the image sum, then that it preserves identities
/// and composites of grid arrows.
pub fn check_pcm_functor(func: &PcmFunctor, bound: usize, cfg: &CheckConfig) -> Report {
    let name = format!("pcm_functor[{}]", func.name);
    let mut rng = cfg.rng(&name);
    run(name, |t| {
        let src = func.source.as_ref();
        let objs = src.objects();
        let homs = hom_table(src, &objs, &mut rng)?;
        let n = objs.len();
        for i in 0..n {
            for j in 0..n {
                let (x, y) = (&objs[i], &objs[j]);
                let (fx, fy) = (func.on_object(x)?, func.on_object(y)?);
                let target = func.target.hom(&fx, &fy)?;
                for fam in families(&homs[&(i, j)].grid, bound, cfg.family_budget, &mut rng) {
                    let Some(total) = sum_of(&homs[&(i, j)].pcm, &fam)? else { continue };
                    t.case();
                    let img = fam.try_map(|f| func.on_arrow(x, y, f))?;
                    let want = func.on_arrow(x, y, &total)?;
                    if !sum_of(&target, &img)?.is_some_and(|v| v.close_to(&want, cfg.tolerance)) {
                        let cx = Counterexample { objects: vec![x.clone(), y.clone()], families: vec![fam.clone()] };
                        t.fail(format!("{fam}"), Some(cx));
                        return Ok(());
                    }
                }
            }
        }
        for x in &objs {
            t.case();
            let fx = func.on_object(x)?;
            if !func.on_arrow(x, x, &src.identity(x)?)?.close_to(&func.target.identity(&fx)?, cfg.tolerance) {
                t.fail(format!("identity of {x} not preserved"), None);
                return Ok(());
            }
        }
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    let (x, y, z) = (&objs[i], &objs[j], &objs[k]);
                    let (fx, fy, fz) = (func.on_object(x)?, func.on_object(y)?, func.on_object(z)?);
                    for f in homs[&(i, j)].grid.iter().take(4) {
                        for g in homs[&(j, k)].grid.iter().take(4) {
                            t.case();
                            let lhs = func.on_arrow(x, z, &src.compose(x, y, z, g, f)?)?;
                            let rhs = func.target.compose(
                                &fx,
                                &fy,
                                &fz,
                                &func.on_arrow(y, z, g)?,
                                &func.on_arrow(x, y, f)?,
                            )?;
                            if !lhs.close_to(&rhs, cfg.tolerance) {
                                t.fail(format!("composite {g} . {f} not preserved"), None);
                                return Ok(());
                            }
                        }
                    }
                }
            }
        }
        Ok(())
    })
}
