//! Brute-force axiom checkers for PCMs, the instance classifier, the
//! double-loop monoid-semiring oracle, and counterexample shrinking.
//!
//! Every checker returns a [`Report`]; classifier results print as
//! `CLASS <instance> <verdict> [witness=...]`.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::sync::Arc;

use rand::seq::SliceRandom;
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::family::{enumerate_partitions, sample_partition, IndexedFamily, Label, Partition};
use crate::pcm::{
    make_abs_convergence_pcm, make_finite_families_pcm, make_k_bounded_pcm, make_partial_fn_pcm,
    make_partial_injection_pcm, make_relations_pcm, make_unit_ball_pcm, Element, ElementError, FnMode, Monoid,
    Norm, Pcm, PcmError, SumResult,
};
use crate::pcmcat::{
    check_category_laws, check_strong_distributivity, check_zero_absorption, derived_laws, PcmCategory,
    MONOID_SUM_BOUND,
};
use crate::report::{families, random_family, CheckConfig, Counterexample, Report, Tally};

/// Families above this size get sampled partitions instead of all of them.
const EXHAUSTIVE_PARTITION_LABELS: usize = 8;

/// The PCM instances exercised by the axiom suite.
pub fn shipped_pcms() -> Vec<Pcm> {
    let built: Vec<Result<Pcm, PcmError>> = vec![
        make_finite_families_pcm(Monoid::int()),
        make_finite_families_pcm(Monoid::rational()),
        make_finite_families_pcm(Monoid::modular(4)),
        make_k_bounded_pcm(Monoid::int(), 1),
        make_k_bounded_pcm(Monoid::int(), 2),
        Ok(make_abs_convergence_pcm()),
        make_partial_fn_pcm(2, 2, FnMode::Disjoint),
        make_partial_fn_pcm(3, 3, FnMode::Disjoint),
        make_partial_injection_pcm(3, 3, FnMode::Disjoint),
        make_partial_injection_pcm(3, 3, FnMode::Overlap),
        make_relations_pcm(2, 2),
        make_relations_pcm(3, 3),
        make_unit_ball_pcm(1, Norm::L1),
        make_unit_ball_pcm(2, Norm::L2),
        make_unit_ball_pcm(2, Norm::LInf),
    ];
    let mut out: Vec<Pcm> = built.into_iter().map(|p| p.expect("shipped instance")).collect();
    let matrices = crate::pcmcat::parse_base("matrix:2").expect("shipped category");
    let x0 = crate::pcmcat::Object::named("X0");
    out.push(matrices.hom(&x0, &x0).expect("hom of X0"));
    out
}

fn sums_agree(a: &SumResult, b: &SumResult, tol: f64) -> bool {
    a.close_to(b, tol)
}

/// `Σ{x} = x` for every sample.
pub fn check_unary(p: &Pcm, samples: &[Element], cfg: &CheckConfig) -> Report {
    let mut t = Tally::new(format!("unary[{}]", p.name()));
    for x in samples {
        t.case();
        let single = IndexedFamily::from_values([x.clone()]);
        match p.sum(&single) {
            Ok(SumResult::Summable(v)) if v.close_to(x, cfg.tolerance) => {}
            Ok(r) => {
                t.fail(format!("{single} sums to {r:?}"), Some(cx(single)));
                break;
            }
            Err(e) => {
                t.fail(format!("{single}: {e}"), None);
                break;
            }
        }
    }
    t.finish()
}

fn cx(fam: IndexedFamily<Element>) -> Counterexample {
    Counterexample { objects: vec![], families: vec![fam] }
}

fn partitions_of(fam: &IndexedFamily<Element>, cfg: &CheckConfig, rng: &mut ChaCha8Rng) -> Vec<Partition> {
    let labels: Vec<Label> = fam.labels().cloned().collect();
    if labels.len() <= EXHAUSTIVE_PARTITION_LABELS {
        enumerate_partitions(&labels).expect("within the exhaustive bound")
    } else {
        (0..cfg.trials).filter_map(|_| sample_partition(&labels, rng).ok()).collect()
    }
}

/// Block sums of `fam` over `part`, or the first unsummable block.
fn block_sums(
    p: &Pcm,
    fam: &IndexedFamily<Element>,
    part: &Partition,
) -> Result<Result<IndexedFamily<Element>, usize>, PcmError> {
    let mut sums = Vec::with_capacity(part.num_blocks());
    for (j, block) in part.blocks().iter().enumerate() {
        let b = fam.block(block).expect("partition of the family's labels");
        match p.sum(&b)? {
            SumResult::Summable(v) => sums.push((Partition::block_label(j), v)),
            SumResult::NotSummable => return Ok(Err(j)),
        }
    }
    Ok(Ok(IndexedFamily::new(sums).expect("block labels are distinct")))
}

fn wpa_into(t: &mut Tally, p: &Pcm, fam: &IndexedFamily<Element>, cfg: &CheckConfig, rng: &mut ChaCha8Rng) {
    let total = match p.sum(fam) {
        Ok(SumResult::Summable(v)) => v,
        Ok(SumResult::NotSummable) => return,
        Err(e) => return t.fail(format!("{fam}: {e}"), None),
    };
    for (k, part) in partitions_of(fam, cfg, rng).into_iter().enumerate() {
        // the coarsest partition also gets an empty block
        let parts = if k == 0 { vec![part.clone(), part.with_empty_blocks(1)] } else { vec![part] };
        for part in parts {
            t.case();
            let sums = match block_sums(p, fam, &part) {
                Ok(Ok(s)) => s,
                Ok(Err(j)) => return t.fail(format!("{fam} partition {part}: block {j} not summable"), Some(cx(fam.clone()))),
                Err(e) => return t.fail(format!("{fam}: {e}"), None),
            };
            match p.sum(&sums) {
                Ok(SumResult::Summable(v)) if v.close_to(&total, cfg.tolerance) => {}
                Ok(r) => {
                    return t.fail(
                        format!("{fam} partition {part}: block sums {sums} give {r:?}, total {total}"),
                        Some(cx(fam.clone())),
                    )
                }
                Err(e) => return t.fail(format!("{fam}: {e}"), None),
            }
        }
    }
}

/// One-way partition-associativity on a single family. Unsummable
/// families pass vacuously.
pub fn check_wpa(p: &Pcm, fam: &IndexedFamily<Element>, cfg: &CheckConfig) -> Report {
    let mut t = Tally::new(format!("wpa[{}]", p.name()));
    let mut rng = cfg.rng("wpa");
    wpa_into(&mut t, p, fam, cfg, &mut rng);
    t.finish()
}

/// Whether the converse of WPA held on everything tested.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PaClass {
    SigmaMonoidCompatible,
    /// Blocks and block sums summable, family not (or summing elsewhere).
    WpaOnly { witness: String },
}

/// Positivity on the tested families.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Positivity {
    Positive,
    /// A summable family with zero sum and a nonzero member.
    Nonpositive { witness: String },
}

fn converse_into(
    t: &mut Tally,
    p: &Pcm,
    fam: &IndexedFamily<Element>,
    cfg: &CheckConfig,
    rng: &mut ChaCha8Rng,
) -> Option<String> {
    let total = match p.sum(fam) {
        Ok(r) => r,
        Err(e) => {
            t.fail(format!("{fam}: {e}"), None);
            return None;
        }
    };
    for part in partitions_of(fam, cfg, rng) {
        t.case();
        let Ok(Ok(sums)) = block_sums(p, fam, &part) else { continue };
        let Ok(SumResult::Summable(v)) = p.sum(&sums) else { continue };
        if !sums_agree(&total, &SumResult::Summable(v.clone()), cfg.tolerance) {
            let why = match &total {
                SumResult::NotSummable => "family not summable".to_owned(),
                SumResult::Summable(s) => format!("family sums to {s}"),
            };
            return Some(format!("{fam} partition {part}: blocks summable, block sums {sums} give {v}, {why}"));
        }
    }
    None
}

/// Both directions of partition-associativity on one family.
pub fn check_full_pa(p: &Pcm, fam: &IndexedFamily<Element>, cfg: &CheckConfig) -> (Report, PaClass) {
    let mut t = Tally::new(format!("full_pa[{}]", p.name()));
    let mut rng = cfg.rng("full_pa");
    wpa_into(&mut t, p, fam, cfg, &mut rng);
    let class = match converse_into(&mut t, p, fam, cfg, &mut rng) {
        Some(w) => {
            t.fail(w.clone(), Some(cx(fam.clone())));
            PaClass::WpaOnly { witness: w }
        }
        None => PaClass::SigmaMonoidCompatible,
    };
    (t.finish(), class)
}

fn grid_families(p: &Pcm, size: usize, budget: usize, cfg: &CheckConfig, stream: &str) -> Vec<IndexedFamily<Element>> {
    let mut rng = cfg.rng(&format!("{stream}[{}]", p.name()));
    let grid = p.grid(&mut rng);
    families(&grid.elements, size, budget, &mut rng)
}

/// Looks for a summable family with zero sum and a nonzero member among
/// families of size `<= cfg.family_size`, smallest first.
pub fn check_positivity(p: &Pcm, cfg: &CheckConfig) -> (Report, Positivity) {
    let mut t = Tally::new(format!("positivity[{}]", p.name()));
    let zero = p.zero().clone();
    for fam in grid_families(p, cfg.family_size, cfg.family_budget, cfg, "positivity") {
        t.case();
        if let Ok(SumResult::Summable(v)) = p.sum(&fam) {
            if v.close_to(&zero, cfg.tolerance) && fam.values().any(|x| !x.close_to(&zero, cfg.tolerance)) {
                let witness = fam.to_string();
                // a report, not a law: nonpositivity is allowed in a PCM
                return (t.finish(), Positivity::Nonpositive { witness });
            }
        }
    }
    (t.finish(), Positivity::Positive)
}

/// The classifier's verdicts for one instance.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Classification {
    pub instance: String,
    pub pa: PaClass,
    pub positivity: Positivity,
}

impl fmt::Display for Classification {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.pa {
            PaClass::SigmaMonoidCompatible => writeln!(f, "CLASS {} SIGMA_MONOID_COMPATIBLE", self.instance)?,
            PaClass::WpaOnly { witness } => writeln!(f, "CLASS {} WPA_ONLY witness={witness}", self.instance)?,
        }
        match &self.positivity {
            Positivity::Positive => write!(f, "CLASS {} POSITIVE", self.instance),
            Positivity::Nonpositive { witness } => write!(f, "CLASS {} NONPOSITIVE witness={witness}", self.instance),
        }
    }
}

/// Full partition-associativity and positivity over the grid families.
/// The limit axiom quantifies over infinite families and is never claimed.
pub fn classify(p: &Pcm, cfg: &CheckConfig) -> Classification {
    let mut pa = PaClass::SigmaMonoidCompatible;
    let mut rng = cfg.rng(&format!("classify[{}]", p.name()));
    let mut t = Tally::new("classify");
    for fam in grid_families(p, cfg.family_size, cfg.family_budget, cfg, "classify") {
        if let Some(w) = converse_into(&mut t, p, &fam, cfg, &mut rng) {
            pa = PaClass::WpaOnly { witness: w };
            break;
        }
    }
    let (_, positivity) = check_positivity(p, cfg);
    Classification { instance: p.name().to_owned(), pa, positivity }
}

/// Unary sum, WPA, summable subfamilies, zero laws and reindexing
/// invariance over the grid families of `p`.
pub fn pcm_axiom_suite(p: &Pcm, cfg: &CheckConfig) -> Vec<Report> {
    let name = p.name().to_owned();
    let mut rng = cfg.rng(&format!("suite[{name}]"));
    let grid = p.grid(&mut rng);
    let fams = families(&grid.elements, cfg.family_size, cfg.family_budget, &mut rng);

    let mut wpa = Tally::new(format!("wpa[{name}]"));
    for fam in &fams {
        wpa_into(&mut wpa, p, fam, cfg, &mut rng);
        if wpa.failed() {
            break;
        }
    }
    vec![
        check_unary(p, &grid.elements, cfg),
        wpa.finish(),
        check_subfamilies(p, &fams),
        check_zero_laws(p, &grid.elements, cfg),
        check_reindexing(p, cfg),
    ]
}

/// Every subfamily of a summable family is summable.
pub fn check_subfamilies(p: &Pcm, fams: &[IndexedFamily<Element>]) -> Report {
    let mut t = Tally::new(format!("subfamilies[{}]", p.name()));
    'outer: for fam in fams {
        if !matches!(p.sum(fam), Ok(SumResult::Summable(_))) {
            continue;
        }
        let labels: Vec<Label> = fam.labels().cloned().collect();
        for mask in 0u32..(1 << labels.len()) {
            t.case();
            let keep: BTreeSet<Label> =
                labels.iter().enumerate().filter(|(i, _)| mask & (1 << i) != 0).map(|(_, l)| l.clone()).collect();
            let sub = fam.subfamily(&keep).expect("labels of the family");
            if !matches!(p.sum(&sub), Ok(SumResult::Summable(_))) {
                t.fail(format!("{sub} inside summable {fam}"), Some(cx(fam.clone())));
                break 'outer;
            }
        }
    }
    t.finish()
}

/// The empty family sums to the zero, `x + 0 = x`, and families of zeros
/// sum to zero.
pub fn check_zero_laws(p: &Pcm, samples: &[Element], cfg: &CheckConfig) -> Report {
    let mut t = Tally::new(format!("zero[{}]", p.name()));
    let zero = p.zero().clone();
    t.case();
    if p.sum(&IndexedFamily::empty()).ok().and_then(SumResult::into_value).as_ref() != Some(&zero) {
        t.fail("empty family does not sum to the zero", None);
    }
    for x in samples {
        t.case();
        let fam = IndexedFamily::from_values([x.clone(), zero.clone()]);
        if !matches!(p.sum(&fam), Ok(SumResult::Summable(v)) if v.close_to(x, cfg.tolerance)) {
            t.fail(format!("{fam} does not sum to {x}"), Some(cx(fam)));
            break;
        }
    }
    for n in 1..=cfg.family_size.max(1) {
        t.case();
        let fam = IndexedFamily::from_values(vec![zero.clone(); n]);
        if !matches!(p.sum(&fam), Ok(SumResult::Summable(v)) if v.close_to(&zero, cfg.tolerance)) {
            t.fail(format!("{fam} does not sum to zero"), Some(cx(fam)));
            break;
        }
    }
    t.finish()
}

/// Summability and sum are unchanged under `cfg.trials` random relabelings.
pub fn check_reindexing(p: &Pcm, cfg: &CheckConfig) -> Report {
    let name = format!("reindexing[{}]", p.name());
    let mut rng = cfg.rng(&name);
    let grid = p.grid(&mut rng);
    let mut t = Tally::new(name);
    for _ in 0..cfg.trials {
        let fam = random_family(&grid.elements, cfg.family_size.max(1), &mut rng);
        let mut fresh: Vec<Label> = (0..fam.len()).map(|i| Label::new(format!("r{i}"))).collect();
        fresh.shuffle(&mut rng);
        let bij: BTreeMap<Label, Label> = fam.labels().cloned().zip(fresh).collect();
        let moved = fam.reindex(&bij).expect("bijection onto fresh labels");
        t.case();
        match (p.sum(&fam), p.sum(&moved)) {
            (Ok(a), Ok(b)) if sums_agree(&a, &b, cfg.tolerance) => {}
            _ => {
                t.fail(format!("{fam} relabeled to {moved}"), Some(cx(fam)));
                break;
            }
        }
    }
    t.finish()
}

/// Category laws, zero absorption, strong distributivity, the derived laws,
/// and the PCM axiom suite on every hom-set.
pub fn pcmcat_suite(c: &dyn PcmCategory, cfg: &CheckConfig) -> Vec<Report> {
    let mut out = vec![
        check_category_laws(c, cfg),
        check_zero_absorption(c, cfg),
        check_strong_distributivity(c, cfg.family_size, cfg),
    ];
    out.extend(derived_laws(c, MONOID_SUM_BOUND, cfg));
    let objects = c.objects();
    for x in &objects {
        for y in &objects {
            match c.hom(x, y) {
                Ok(h) => {
                    let h = h.renamed(format!("{}({x},{y})", c.name()));
                    out.extend(pcm_axiom_suite(&h, cfg));
                }
                Err(e) => out.push(Report::fail(format!("hom[{}]", c.name()), 0, e.to_string())),
            }
        }
    }
    out
}

/// `(η * μ)(m) = Σ_{m=qp} η(q) μ(p)`, by a double loop over `M × M`.
/// `table[q][p]` is the position of `q·p`.
pub fn oracle_convolution(table: &[Vec<usize>], eta: &[Element], mu: &[Element]) -> Result<Vec<Element>, ElementError> {
    let n = table.len();
    if eta.len() != n || mu.len() != n {
        return Err(ElementError::ShapeMismatch(format!("{} and {} coefficients for {n} monoid elements", eta.len(), mu.len())));
    }
    let Some(zero) = eta.first().and_then(Element::zero_like) else { return Ok(vec![]) };
    let mut out = vec![zero; n];
    for q in 0..n {
        for p in 0..n {
            let m = table[q][p];
            out[m] = out[m].add(&eta[q].mul(&mu[p])?)?;
        }
    }
    Ok(out)
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MinimizeError {
    #[error("report {0} has no counterexample to shrink")]
    NotFailing(String),
}

/// Greedily drops family entries while `fails` keeps reporting a failure.
pub fn minimize(
    report: &Report,
    fails: impl Fn(&Counterexample) -> bool,
) -> Result<Counterexample, MinimizeError> {
    let Some(cx) = report.counterexample.clone().filter(|_| !report.passed()) else {
        return Err(MinimizeError::NotFailing(report.name.clone()));
    };
    let mut best = cx;
    loop {
        let mut shrunk = false;
        for i in 0..best.families.len() {
            let labels: Vec<Label> = best.families[i].labels().cloned().collect();
            for l in labels {
                let mut trial = best.clone();
                trial.families[i] = trial.families[i].without(&l);
                if fails(&trial) {
                    best = trial;
                    shrunk = true;
                }
            }
        }
        if !shrunk {
            return Ok(best);
        }
    }
}

/// A deliberately broken instance for exercising the checkers: wraps `p`
/// and refuses singletons.
pub fn mutate_reject_singletons(p: &Pcm) -> Pcm {
    struct NoSingletons(Pcm);
    impl crate::pcm::SumOracle for NoSingletons {
        fn carrier(&self) -> &crate::pcm::Carrier {
            self.0.carrier()
        }
        fn sum(&self, fam: &IndexedFamily<Element>) -> Result<SumResult, PcmError> {
            if fam.len() == 1 {
                return Ok(SumResult::NotSummable);
            }
            self.0.sum(fam)
        }
    }
    Pcm::new(format!("{}-nosingletons", p.name()), Arc::new(NoSingletons(p.clone()))).expect("empty family unchanged")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pcm::Carrier;
    use crate::pcmcat::{parse_base, sd_violation, Object};

    fn ints(v: &[i64]) -> IndexedFamily<Element> {
        IndexedFamily::from_values(v.iter().map(|&n| Element::int(n)))
    }

    fn cfg() -> CheckConfig {
        CheckConfig::default()
    }

    #[test]
    fn unary() {
        let z = make_finite_families_pcm(Monoid::int()).unwrap();
        assert!(check_unary(&z, &[Element::int(3)], &cfg()).passed());
        assert!(check_unary(&z, &[], &cfg()).passed());
        let broken = mutate_reject_singletons(&z);
        assert!(!check_unary(&broken, &[Element::int(3)], &cfg()).passed());
    }

    #[test]
    fn wpa_examples() {
        let z = make_finite_families_pcm(Monoid::int()).unwrap();
        let r = check_wpa(&z, &ints(&[1, 2, 3]), &cfg());
        assert!(r.passed());
        // five partitions plus the coarsest with an empty block
        assert_eq!(r.checked, 6);
        let c = make_abs_convergence_pcm();
        let fam = IndexedFamily::from_values([Element::complex(1.0, 0.0), Element::complex(-1.0, 0.0), Element::complex(0.0, 1.0)]);
        assert!(check_wpa(&c, &fam, &cfg()).passed());
        let k1 = make_k_bounded_pcm(Monoid::int(), 1).unwrap();
        let r = check_wpa(&k1, &ints(&[1, 2]), &cfg());
        assert!(r.passed());
        assert_eq!(r.checked, 0);
    }

    #[test]
    fn full_pa() {
        let pf = make_partial_fn_pcm(3, 3, FnMode::Disjoint).unwrap();
        assert_eq!(classify(&pf, &CheckConfig { family_size: 3, ..cfg() }).pa, PaClass::SigmaMonoidCompatible);
        let z = make_finite_families_pcm(Monoid::int()).unwrap();
        assert_eq!(check_full_pa(&z, &ints(&[1, -1, 2]), &cfg()).1, PaClass::SigmaMonoidCompatible);

        let k1 = make_k_bounded_pcm(Monoid::int(), 1).unwrap();
        let (r, class) = check_full_pa(&k1, &ints(&[1, 1]), &cfg());
        assert!(r.passed());
        assert_eq!(class, PaClass::SigmaMonoidCompatible);
        let k2 = make_k_bounded_pcm(Monoid::int(), 2).unwrap();
        let (r, class) = check_full_pa(&k2, &ints(&[1, 1, 1]), &cfg());
        assert!(!r.passed());
        assert!(matches!(class, PaClass::WpaOnly { .. }));
    }

    #[test]
    fn positivity() {
        let z = make_finite_families_pcm(Monoid::int()).unwrap();
        assert_eq!(check_positivity(&z, &cfg()).1, Positivity::Nonpositive { witness: "{x0:1,x1:-1}".into() });
        let small = CheckConfig { family_size: 3, family_budget: 50_000, ..cfg() };
        for p in [
            make_relations_pcm(3, 3).unwrap(),
            make_partial_fn_pcm(3, 3, FnMode::Disjoint).unwrap(),
            make_partial_injection_pcm(3, 3, FnMode::Overlap).unwrap(),
        ] {
            assert_eq!(check_positivity(&p, &small).1, Positivity::Positive, "{}", p.name());
        }
        let line = classify(&z, &cfg()).to_string();
        assert!(line.contains("NONPOSITIVE witness={x0:1,x1:-1}"), "{line}");
    }

    #[test]
    fn suite_on_small_instances() {
        let cfg = CheckConfig { family_size: 3, ..cfg() };
        for p in shipped_pcms().iter().filter(|p| !matches!(p.carrier(), Carrier::Relation { rows: 3, .. })) {
            for r in pcm_axiom_suite(p, &cfg) {
                assert!(r.passed(), "{r}");
            }
        }
    }

    #[test]
    fn convolution_oracle() {
        let z2 = [vec![0, 1], vec![1, 0]];
        let one_one = [Element::int(1), Element::int(1)];
        assert_eq!(oracle_convolution(&z2, &one_one, &one_one).unwrap(), vec![Element::int(2), Element::int(2)]);
        let z3: Vec<Vec<usize>> = (0..3).map(|i| (0..3).map(|j| (i + j) % 3).collect()).collect();
        let e = |k: usize| (0..3).map(|i| Element::int((i == k) as i64)).collect::<Vec<_>>();
        assert_eq!(oracle_convolution(&z3, &e(1), &e(2)).unwrap(), e(0));
        let a = [Element::int(4), Element::int(-1), Element::int(7)];
        assert_eq!(oracle_convolution(&z3, &a, &e(0)).unwrap(), a.to_vec());
    }

    #[test]
    fn minimizer() {
        let k2 = parse_base("kbounded:2").unwrap();
        let x = Object::named("X");
        let objs = [&x, &x, &x];
        let fails = |c: &Counterexample| {
            matches!(sd_violation(k2.as_ref(), objs, &c.families[0], &c.families[1], 1e-9), Ok(Some(_)))
        };
        let start = Counterexample { objects: vec![x.clone(); 3], families: vec![ints(&[1, 1, 0]), ints(&[1, 0, 1])] };
        let report = Report::fail("sd", 1, "x").with_counterexample(start.clone());
        assert!(fails(&start));
        let small = minimize(&report, fails).unwrap();
        assert_eq!(small.families.iter().map(|f| f.len()).collect::<Vec<_>>(), vec![2, 2]);
        let again = minimize(&Report::fail("sd", 1, "x").with_counterexample(small.clone()), fails).unwrap();
        assert_eq!(again, small);
        assert_eq!(minimize(&Report::pass("ok", 1), fails).unwrap_err(), MinimizeError::NotFailing("ok".into()));
    }
}
