//! Acceptance criteria, one PASS/FAIL line each. Exits nonzero if any fails.

use std::collections::BTreeSet;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::path::PathBuf;
use std::process::Command;
use std::sync::Arc;
use std::time::Instant;

use num::{BigInt, BigRational, One, Signed, Zero};
use pcmcat::cauchy::{cauchy_product, map_base, map_index, series_convolve, CoeffStream};
use pcmcat::cli::parse_fincat;
use pcmcat::fincat::{FinCategory, Functor};
use pcmcat::laws::{classify, oracle_convolution, pcm_axiom_suite, pcmcat_suite, shipped_pcms, Positivity};
use pcmcat::pcm::{
    make_finite_families_pcm, make_partial_fn_pcm, make_partial_injection_pcm, make_relations_pcm, Element, FnMode,
    Monoid, Residue, ScalarKind,
};
use pcmcat::pcmcat::{
    check_pcm_functor, check_strong_distributivity, parse_base, semiring_category, Object,
    PcmCategory, PcmFunctor,
};
use pcmcat::report::{CheckConfig, Report};
use pcmcat::universal::{check_hom_property, dft_data, dft_substitute, object_obstruction, Obstruction};

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn samples() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("samples")
}

fn two_object() -> FinCategory {
    parse_fincat(&std::fs::read_to_string(samples().join("two_object.fincat")).unwrap()).unwrap()
}

fn all_pass(reports: &[Report]) -> Result<u64, String> {
    match reports.iter().find(|r| !r.passed()) {
        Some(r) => Err(r.to_string()),
        None => Ok(reports.iter().map(|r| r.checked).sum()),
    }
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn c1_axioms() -> Outcome {
    let cfg = CheckConfig { family_size: 5, ..CheckConfig::default() };
    let mut cases = 0;
    for p in shipped_pcms() {
        let suite = pcm_axiom_suite(&p, &cfg);
        cases += all_pass(&suite[0..2])?;
    }
    Ok(format!("{} instances, {cases} cases", shipped_pcms().len()))
}

fn c2_basics() -> Outcome {
    let cfg = CheckConfig { family_size: 5, ..CheckConfig::default() };
    let mut cases = 0;
    for p in shipped_pcms() {
        let suite = pcm_axiom_suite(&p, &cfg);
        cases += all_pass(&suite[2..4])?;
    }
    Ok(format!("{cases} cases"))
}

fn c3_reindexing() -> Outcome {
    let cfg = CheckConfig { trials: 200, ..CheckConfig::default() };
    let mut cases = 0;
    for p in shipped_pcms() {
        let r = pcmcat::laws::check_reindexing(&p, &cfg);
        ensure(r.checked >= 200, || format!("{}: only {} trials", r.name, r.checked))?;
        cases += all_pass(&[r])?;
    }
    Ok(format!("{cases} (family, bijection) pairs"))
}

const SHIPPED_CATEGORIES: &[&str] = &[
    "int",
    "rational",
    "mod:5",
    "complex",
    "matrix:2",
    "matrix:1,2",
    "matrix:2:complex",
    "pfn:2",
    "pinj-overlap:2",
    "rel:2",
    "kbounded:1",
    "unitball:1:l1",
    "unitball:2:linf",
];

fn c4_strong_distributivity() -> Outcome {
    let cfg = CheckConfig { trials: 200, ..CheckConfig::default() };
    let mut cases = 0;
    for d in SHIPPED_CATEGORIES {
        let c = parse_base(d).map_err(|e| e.to_string())?;
        cases += all_pass(&[check_strong_distributivity(c.as_ref(), 4, &cfg)])?;
    }
    let k2 = parse_base("kbounded:2").unwrap();
    let r = check_strong_distributivity(k2.as_ref(), 4, &cfg);
    let w = r.witness.clone().unwrap_or_default();
    ensure(!r.passed() && w.contains("f={x0:1,x1:1} g={x0:1,x1:1}"), || format!("kbounded:2 gave {r}"))?;
    Ok(format!("{} categories, {cases} cases; kbounded:2 fails with {w}", SHIPPED_CATEGORIES.len()))
}

fn c5_cauchy_theorem() -> Outcome {
    let cfg = CheckConfig { family_size: 3, ..CheckConfig::default() };
    let indices: Vec<(&str, FinCategory)> =
        vec![("Z2", FinCategory::cyclic(2)), ("Z3", FinCategory::cyclic(3)), ("two_object", two_object())];
    let mut cases = 0;
    let mut n = 0;
    for base in ["int", "mod:5", "rational", "matrix:2", "rel:2"] {
        for (iname, index) in &indices {
            let cc = cauchy_product(parse_base(base).unwrap(), Arc::new(index.clone())).map_err(|e| e.to_string())?;
            let reports = pcmcat_suite(cc.as_ref(), &cfg);
            cases += all_pass(&reports).map_err(|e| format!("{base}/{iname}: {e}"))?;
            n += 1;
        }
    }
    Ok(format!("{n} products, {cases} cases"))
}

fn coeff_vectors(len: usize) -> Vec<Vec<i64>> {
    let mut out = vec![vec![]];
    for _ in 0..len {
        out = out.into_iter().flat_map(|v| (0..3).map(move |c| [v.clone(), vec![c]].concat())).collect();
    }
    out
}

fn c6_monoid_semiring() -> Outcome {
    let mut pairs = 0;
    for n in [2usize, 3] {
        let index = Arc::new(FinCategory::cyclic(n));
        let cc = cauchy_product(parse_base("int").unwrap(), index.clone()).unwrap();
        let xu = cc.objects()[0].clone();
        let u = index.objects().next().unwrap();
        let hom = index.hom(u, u);
        let table: Vec<Vec<usize>> =
            hom.iter().map(|&q| hom.iter().map(|&p| index.hom_position(index.compose(q, p).unwrap())).collect()).collect();
        let ints = |v: &[i64]| v.iter().map(|&c| Element::int(c)).collect::<Vec<_>>();
        for g in coeff_vectors(n) {
            for f in coeff_vectors(n) {
                let (ga, fa) = (cc.arrow(&xu, &xu, ints(&g)).unwrap(), cc.arrow(&xu, &xu, ints(&f)).unwrap());
                let got = cc.convolve(&ga, &fa).unwrap().coeffs;
                let want = oracle_convolution(&table, &ints(&g), &ints(&f)).unwrap();
                ensure(got == want, || format!("Z{n}: {g:?} * {f:?} gave {got:?}, oracle {want:?}"))?;
                pairs += 1;
            }
        }
    }
    Ok(format!("{pairs} pairs, 0 mismatches"))
}

fn c7_embeddings() -> Outcome {
    let cfg = CheckConfig::default();
    let mut checked = 0;
    for (base, index) in [("rel:2", two_object()), ("mod:5", FinCategory::cyclic(3))] {
        let cc = cauchy_product(parse_base(base).unwrap(), Arc::new(index)).unwrap();
        let mut rng = cfg.rng(&format!("embed[{base}]"));
        let objs = cc.base().objects();
        for u in cc.index().objects() {
            for x in &objs {
                ensure(cc.split(&cc.object(x, u)).unwrap().0 == *x, || format!("sigma eta moves {x}"))?;
                for y in &objs {
                    for _ in 0..100 {
                        let h = cc.base().sample(x, y, &mut rng).unwrap();
                        let back = cc.sigma(&cc.eta(x, y, &h, u).unwrap()).unwrap();
                        ensure(back == h, || format!("{base}: sigma(eta({h})) = {back}"))?;
                        checked += 1;
                    }
                }
            }
        }
    }
    // injectivity on fully enumerated homs
    let cc = cauchy_product(parse_base("mod:2").unwrap(), Arc::new(FinCategory::cyclic(3))).unwrap();
    let x = Object::named("X");
    let u = cc.index().objects().next().unwrap();
    let grid = cc.base().hom(&x, &x).unwrap().grid(&mut cfg.rng("eta"));
    ensure(grid.exhaustive, || "mod:2 grid not exhaustive".into())?;
    let etas: BTreeSet<String> = grid.elements.iter().map(|h| format!("{:?}", cc.eta(&x, &x, h, u).unwrap())).collect();
    ensure(etas.len() == grid.elements.len(), || "eta not injective".into())?;
    let gammas: BTreeSet<String> = cc.index().arrows().map(|a| format!("{:?}", cc.gamma(&x, a).unwrap())).collect();
    ensure(gammas.len() == cc.index().num_arrows(), || "gamma not injective".into())?;

    // interchange law for ⋆ on mod 5 and Z3
    let cc = cauchy_product(parse_base("mod:5").unwrap(), Arc::new(FinCategory::cyclic(3))).unwrap();
    let idx = cc.index().clone();
    let vals: Vec<Element> = (0..5).map(|v| Element::residue(v, 5)).collect();
    let mut star_cases = 0;
    for f in &vals {
        for f2 in &vals {
            for g in idx.arrows() {
                for g2 in idx.arrows() {
                    let left = cc.convolve(&cc.star(&x, &x, f2, g2).unwrap(), &cc.star(&x, &x, f, g).unwrap()).unwrap();
                    let ff = cc.base().compose(&x, &x, &x, f2, f).unwrap();
                    let right = cc.star(&x, &x, &ff, idx.compose(g2, g).unwrap()).unwrap();
                    ensure(left == right, || format!("interchange fails at {f2},{f},{g2:?},{g:?}"))?;
                    star_cases += 1;
                }
            }
        }
    }
    let one = cc.base().identity(&x).unwrap();
    let u = idx.objects().next().unwrap();
    let xu = cc.object(&x, u);
    ensure(cc.star(&x, &x, &one, idx.identity(u)).unwrap() == cc.identity_arrow(&xu).unwrap(), || "1*1 is not the identity".into())?;
    Ok(format!("{checked} retraction samples, {star_cases} interchange cases"))
}

fn reduction(from: ScalarKind, n: u64) -> PcmFunctor {
    let src: Arc<dyn PcmCategory> = Arc::new(semiring_category(from).unwrap());
    let tgt: Arc<dyn PcmCategory> = Arc::new(semiring_category(ScalarKind::Residue(n)).unwrap());
    PcmFunctor::new(format!("mod{n}"), src, tgt, |o| Ok(o.clone()), move |_, _, f| match f {
        Element::Int(v) => Ok(Element::Residue(Residue::from_bigint(v, n)?)),
        Element::Residue(r) => Ok(Element::Residue(Residue::from_bigint(&BigInt::from(r.value()), n)?)),
        other => Ok(other.clone()),
    })
}

/// `F(id) = id` and `F(g∘f) = F(g)∘F(f)` on sampled endomorphisms of the first object.
fn preserves_composition(f: &PcmFunctor, samples: usize, stream: &str) -> Result<(), String> {
    let cfg = CheckConfig::default();
    let mut rng = cfg.rng(stream);
    let src = f.source.clone();
    let x = src.objects()[0].clone();
    let fx = f.on_object(&x).map_err(|e| e.to_string())?;
    let id = f.on_arrow(&x, &x, &src.identity(&x).unwrap()).unwrap();
    ensure(id == f.target.identity(&fx).unwrap(), || format!("{}: identity not preserved", f.name))?;
    for _ in 0..samples {
        let (a, b) = (src.sample(&x, &x, &mut rng).unwrap(), src.sample(&x, &x, &mut rng).unwrap());
        let ba = src.compose(&x, &x, &x, &b, &a).unwrap();
        let lhs = f.on_arrow(&x, &x, &ba).unwrap();
        let rhs = f.target.compose(&fx, &fx, &fx, &f.on_arrow(&x, &x, &b).unwrap(), &f.on_arrow(&x, &x, &a).unwrap()).unwrap();
        ensure(lhs == rhs, || format!("{}: composite of {b} and {a} not preserved", f.name))?;
    }
    Ok(())
}

fn agree(f: &PcmFunctor, g: &PcmFunctor, samples: usize, stream: &str) -> Result<(), String> {
    let mut rng = CheckConfig::default().rng(stream);
    let x = f.source.objects()[0].clone();
    for _ in 0..samples {
        let a = f.source.sample(&x, &x, &mut rng).unwrap();
        let (l, r) = (f.on_arrow(&x, &x, &a).unwrap(), g.on_arrow(&x, &x, &a).unwrap());
        ensure(l == r, || format!("{} and {} differ at {a}: {l} vs {r}", f.name, g.name))?;
    }
    Ok(())
}

fn c8_bifunctoriality() -> Outcome {
    let cfg = CheckConfig { trials: 100, ..CheckConfig::default() };
    let z3 = Arc::new(FinCategory::cyclic(3));
    let cc = cauchy_product(Arc::new(semiring_category(ScalarKind::Int).unwrap()), z3).unwrap();
    let gamma = reduction(ScalarKind::Int, 4);
    let delta = reduction(ScalarKind::Residue(4), 2);
    let (g_d, e_d) = map_base(&gamma, &cc).map_err(|e| e.to_string())?;
    let (d_d, _) = map_base(&delta, &e_d).map_err(|e| e.to_string())?;
    let (dg_d, _) = map_base(&gamma.then(&delta), &cc).map_err(|e| e.to_string())?;
    preserves_composition(&g_d, 100, "map_base")?;
    all_pass(&[check_pcm_functor(&g_d, 3, &cfg)])?;
    agree(&g_d.then(&d_d), &dg_d, 100, "map_base_composite")?;

    let z4 = Arc::new(FinCategory::cyclic(4));
    let z2 = Arc::new(FinCategory::cyclic(2));
    let trivial = Arc::new(FinCategory::trivial());
    let lambda = Functor::from_names(&z4, &z2, &[("U", "U")], &[("z0", "z0"), ("z1", "z1"), ("z2", "z0"), ("z3", "z1")])
        .map_err(|e| e.to_string())?;
    let omega = Functor::from_names(&z2, &trivial, &[("U", "U")], &[("z0", "id_U"), ("z1", "id_U")]).map_err(|e| e.to_string())?;
    let c4 = cauchy_product(parse_base("int").unwrap(), z4).unwrap();
    let (c_lambda, c2) = map_index(&c4, &lambda, z2).map_err(|e| e.to_string())?;
    let (c_omega, _) = map_index(&c2, &omega, trivial.clone()).map_err(|e| e.to_string())?;
    let (c_omega_lambda, _) = map_index(&c4, &lambda.then(&omega), trivial).map_err(|e| e.to_string())?;
    preserves_composition(&c_lambda, 100, "map_index")?;
    all_pass(&[check_pcm_functor(&c_lambda, 3, &cfg)])?;
    agree(&c_lambda.then(&c_omega), &c_omega_lambda, 100, "map_index_composite")?;
    Ok("map_base and map_index on 100 samples each".into())
}

fn c9_universal() -> Outcome {
    let cfg = CheckConfig::default();
    let mut cases = 0;
    for p in [2u64, 3, 5, 7] {
        for s in 1..p {
            let data = dft_data(p, s).map_err(|e| e.to_string())?;
            let r = check_hom_property(&data, 100, 3, &cfg);
            cases += all_pass(&[r])?;
        }
    }
    let mut worst: f64 = 0.0;
    for p in [2u64, 3, 5, 7, 11, 13] {
        for s in 1..p {
            let z = dft_substitute(p, s, &vec![BigInt::one(); p as usize]).map_err(|e| e.to_string())?;
            worst = worst.max(z.norm());
        }
    }
    ensure(worst <= 1e-9, || format!("largest |dft| = {worst:e}"))?;
    Ok(format!("{cases} hom-property cases; max |Σχ| = {worst:.1e}"))
}

fn maps(domain: usize, codomain: usize) -> Vec<Vec<usize>> {
    let mut out = vec![vec![]];
    for _ in 0..domain {
        out = out.into_iter().flat_map(|v| (0..codomain).map(move |c| [v.clone(), vec![c]].concat())).collect();
    }
    out
}

fn c10_obstruction() -> Outcome {
    let mut n = 0;
    for nc in 1..=3 {
        for nd in 1..=3 {
            for g in maps(nc, 3) {
                for d in maps(nd, 3) {
                    let gamma: Vec<(String, String)> = g.iter().enumerate().map(|(i, e)| (format!("X{i}"), format!("E{e}"))).collect();
                    let delta: Vec<(String, String)> = d.iter().enumerate().map(|(i, e)| (format!("U{i}"), format!("E{e}"))).collect();
                    let constant_agree = g.iter().chain(&d).all(|&e| e == g[0]);
                    let (_, verdict) = object_obstruction(&gamma, &delta);
                    let consistent = matches!(verdict, Obstruction::Consistent(_));
                    ensure(consistent == constant_agree, || format!("Gamma={g:?} Delta={d:?} gave {verdict:?}"))?;
                    n += 1;
                }
            }
        }
    }
    Ok(format!("{n} pairs of object maps"))
}

fn c11_classifier() -> Outcome {
    let cfg = CheckConfig::default();
    let ff = classify(&make_finite_families_pcm(Monoid::int()).unwrap(), &cfg);
    match &ff.positivity {
        Positivity::Nonpositive { witness } if witness == "{x0:1,x1:-1}" => {}
        other => return Err(format!("finite families on Z: {other:?}")),
    }
    let mut positive = 0;
    let mut pcms = Vec::new();
    for d in 1..=3 {
        for c in 1..=3 {
            pcms.push(make_partial_fn_pcm(d, c, FnMode::Disjoint).unwrap());
            pcms.push(make_partial_injection_pcm(d, c, FnMode::Disjoint).unwrap());
            pcms.push(make_partial_injection_pcm(d, c, FnMode::Overlap).unwrap());
            pcms.push(make_relations_pcm(d, c).unwrap());
        }
    }
    for p in &pcms {
        let c = classify(p, &cfg);
        ensure(c.positivity == Positivity::Positive, || format!("{c}"))?;
        positive += 1;
    }
    Ok(format!("Z NONPOSITIVE witness {{x0:1,x1:-1}}; {positive} set-like instances POSITIVE"))
}

fn q(n: i64, d: i64) -> BigRational {
    BigRational::new(n.into(), d.into())
}

fn c12_series() -> Outcome {
    let one_z = CoeffStream::Finite(vec![q(1, 1), q(1, 1)]);
    let sq = series_convolve(&one_z, &one_z, 2).map_err(|e| e.to_string())?;
    ensure(sq.coeffs == vec![q(1, 1), q(2, 1), q(1, 1)] && sq.tail_bound.is_zero(), || format!("(1+z)^2 = {sq:?}"))?;
    // (Σ a^n z^n)(Σ b^n z^n) has c_n = (a^{n+1} - b^{n+1}) / (a - b), or (n+1) a^n when a = b
    let closed = |a: &BigRational, b: &BigRational, n: usize| -> BigRational {
        let pw = |x: &BigRational, k: usize| num::pow::pow(x.clone(), k);
        if a == b {
            BigRational::from_integer((n + 1).into()) * pw(a, n)
        } else {
            (pw(a, n + 1) - pw(b, n + 1)) / (a - b)
        }
    };
    let order = 10;
    for (a, b) in [(q(1, 2), q(1, 2)), (q(1, 2), q(-1, 3)), (q(2, 3), q(1, 5))] {
        let (p, r) = (CoeffStream::geometric(q(1, 1), a.clone()).unwrap(), CoeffStream::geometric(q(1, 1), b.clone()).unwrap());
        let prod = series_convolve(&p, &r, order).map_err(|e| e.to_string())?;
        for n in 0..=order {
            ensure(prod.coeffs[n] == closed(&a, &b, n), || format!("a={a} b={b}: c{n} = {}", prod.coeffs[n]))?;
        }
        let tail: BigRational = (order + 1..400).map(|n| closed(&a, &b, n).abs()).fold(BigRational::zero(), |s, t| s + t);
        ensure(prod.tail_bound >= tail, || format!("a={a} b={b}: bound {} below tail {tail}", prod.tail_bound))?;
    }
    Ok("(1+z)^2 exact; 3 geometric products to order 10; tail bounds hold".into())
}

fn cli_suite(bin: &str) -> Result<Vec<u8>, String> {
    let s = samples();
    let path = |f: &str| s.join(f).to_string_lossy().into_owned();
    let runs: Vec<Vec<String>> = vec![
        vec!["laws".into(), "--base".into(), "int".into()],
        vec!["laws".into(), "--base".into(), "kbounded:2".into()],
        vec!["laws".into(), "--base".into(), "mod:5".into(), "--index".into(), path("z3.fincat"), "--family-size".into(), "3".into()],
        vec!["laws".into(), "--base".into(), "rel:2".into(), "--index".into(), path("two_object.fincat"), "--family-size".into(), "3".into()],
        vec!["validate".into(), "--index".into(), path("missing_composite.fincat")],
        vec!["cauchy".into(), "describe".into(), "--base".into(), "rel:2".into(), "--index".into(), path("two_object.fincat")],
        vec!["convolve".into(), "--base".into(), "int".into(), "--index".into(), "cyclic:2".into(), path("one_plus_z.arrow"), path("one_plus_z.arrow")],
        vec!["sum".into(), "--base".into(), "kbounded:1".into(), "--index".into(), "cyclic:2".into(), path("two_at_unit.arrow"), path("one_plus_z.arrow")],
        vec!["substitute".into(), "--p".into(), "5".into(), "--s".into(), "1".into(), path("ones5.arrow")],
        vec!["embed".into(), "--which".into(), "sigma".into(), "--base".into(), "rel:2".into(), "--index".into(), path("two_object.fincat"), path("f_plus_g.arrow")],
        vec!["product".into(), "--base".into(), "mod:3".into(), "--base".into(), "rel:1".into(), "--trials".into(), "50".into()],
        vec!["series".into(), "--p".into(), "geom:1:1/2".into(), "--q".into(), "geom:1:1/3".into(), "--order".into(), "10".into()],
    ];
    let mut all = Vec::new();
    for args in runs {
        let out = Command::new(bin).args(&args).args(["--seed", "7"]).output().map_err(|e| e.to_string())?;
        all.extend(format!("$ {} -> {:?}\n", args.join(" "), out.status.code()).into_bytes());
        all.extend(out.stdout);
    }
    Ok(all)
}

fn c13_determinism() -> Outcome {
    let bin = env!("CARGO_BIN_EXE_pcmcat");
    let (a, b) = (cli_suite(bin)?, cli_suite(bin)?);
    ensure(a == b, || "outputs differ between runs".into())?;
    Ok(format!("{} bytes identical over 12 commands", a.len()))
}

fn main() {
    let criteria: Vec<Criterion> = vec![
        ("pcm axiom suite", c1_axioms),
        ("basic propositions", c2_basics),
        ("reindexing invariance", c3_reindexing),
        ("strong distributivity", c4_strong_distributivity),
        ("cauchy product theorem", c5_cauchy_theorem),
        ("monoid semiring equivalence", c6_monoid_semiring),
        ("embeddings and retraction", c7_embeddings),
        ("bifunctoriality", c8_bifunctoriality),
        ("universal property", c9_universal),
        ("no-go obstruction", c10_obstruction),
        ("classifier taxonomy", c11_classifier),
        ("series", c12_series),
        ("determinism", c13_determinism),
    ];
    let mut failed = 0;
    for (i, (name, f)) in criteria.into_iter().enumerate() {
        let start = Instant::now();
        let result = catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|p| {
            Err(p.downcast_ref::<String>().cloned().or(p.downcast_ref::<&str>().map(|s| s.to_string())).unwrap_or_default())
        });
        let secs = start.elapsed().as_secs_f64();
        match result {
            Ok(detail) => println!("CRITERION {:>2} {name}: PASS ({detail}; {secs:.1}s)", i + 1),
            Err(why) => {
                failed += 1;
                println!("CRITERION {:>2} {name}: FAIL ({why}; {secs:.1}s)", i + 1);
            }
        }
    }
    if failed > 0 {
        std::process::exit(1);
    }
}
