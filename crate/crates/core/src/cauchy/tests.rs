use super::*;
use crate::fincat::tests::two_object_five_arrow;
use crate::pcm::{Residue, ScalarKind};
use crate::pcmcat::{
    check_category_laws, check_pcm_functor, check_strong_distributivity, parse_base, semiring_category, zero_arrow,
};
use crate::report::CheckConfig;

fn int_base() -> Arc<dyn PcmCategory> {
    parse_base("int").unwrap()
}

fn over(base: &str, index: FinCategory) -> Arc<CauchyCategory> {
    cauchy_product(parse_base(base).unwrap(), Arc::new(index)).unwrap()
}

fn xu() -> Object {
    Object::pair(Object::named("X"), Object::named("U"))
}

fn ints(v: &[i64]) -> Vec<Element> {
    v.iter().map(|&n| Element::int(n)).collect()
}

fn arrow(cc: &CauchyCategory, v: &[i64]) -> CauchyArrow {
    cc.arrow(&xu(), &xu(), ints(v)).unwrap()
}

#[test]
fn objects_and_homs() {
    let cc = over("int", FinCategory::cyclic(2));
    assert_eq!(cc.objects(), vec![xu()]);
    assert_eq!(cc.hom(&xu(), &xu()).unwrap().carrier(), &Carrier::Coeffs { len: 2, base: Box::new(Carrier::Int) });
    let m2 = over("mod:2", FinCategory::cyclic(3));
    let grid = m2.hom(&xu(), &xu()).unwrap().grid(&mut CheckConfig::default().rng("t"));
    assert!(grid.exhaustive);
    assert_eq!(grid.elements.len(), 8);
}

#[test]
fn convolution_examples() {
    let z2 = over("int", FinCategory::cyclic(2));
    let one_one = arrow(&z2, &[1, 1]);
    assert_eq!(z2.convolve(&one_one, &one_one).unwrap().coeffs, ints(&[2, 2]));

    let z3 = over("int", FinCategory::cyclic(3));
    let (f, g) = (arrow(&z3, &[0, 1, 0]), arrow(&z3, &[0, 0, 1]));
    assert_eq!(z3.convolve(&g, &f).unwrap().coeffs, ints(&[1, 0, 0]));
}

#[test]
fn identity_is_a_unit() {
    let z2 = over("int", FinCategory::cyclic(2));
    assert_eq!(z2.identity_arrow(&xu()).unwrap().coeffs, ints(&[1, 0]));

    let m = over("matrix:2", FinCategory::cyclic(2));
    let x0u = Object::pair(Object::named("X0"), Object::named("U"));
    let id = m.identity_arrow(&x0u).unwrap();
    assert_eq!(id.coeffs[0], m.base().identity(&Object::named("X0")).unwrap());
    assert_eq!(id.coeffs[1], zero_arrow(m.base().as_ref(), &Object::named("X0"), &Object::named("X0")).unwrap());

    let cc = over("mod:2", FinCategory::cyclic(3));
    let id = cc.identity_arrow(&xu()).unwrap();
    let grid = cc.hom(&xu(), &xu()).unwrap().grid(&mut CheckConfig::default().rng("t"));
    for e in &grid.elements {
        let Element::Coeffs(cs) = e else { panic!() };
        let f = CauchyArrow { src: xu(), tgt: xu(), coeffs: cs.clone() };
        assert_eq!(cc.convolve(&id, &f).unwrap(), f);
        assert_eq!(cc.convolve(&f, &id).unwrap(), f);
    }
}

#[test]
fn summation() {
    let z2 = over("int", FinCategory::cyclic(2));
    let fam = IndexedFamily::from_values([arrow(&z2, &[1, 2]), arrow(&z2, &[3, -4])]);
    assert_eq!(
        z2.sum_arrows(&xu(), &xu(), &fam).unwrap(),
        SumResult::Summable(Element::Coeffs(ints(&[4, -2])))
    );
    assert_eq!(
        z2.sum_arrows(&xu(), &xu(), &IndexedFamily::empty()).unwrap(),
        SumResult::Summable(Element::Coeffs(ints(&[0, 0])))
    );

    let k1 = over("kbounded:1", FinCategory::cyclic(2));
    let a = arrow(&k1, &[1, 0]);
    let fam = IndexedFamily::from_values([a.clone(), a]);
    assert_eq!(k1.sum_arrows(&xu(), &xu(), &fam).unwrap(), SumResult::NotSummable);
    assert!(matches!(k1.arrow(&xu(), &xu(), ints(&[1, 1])), Err(PcmCatError::NotSummable(_))));
}

#[test]
fn theorem_on_small_instances() {
    let cfg = CheckConfig { trials: 40, ..CheckConfig::default() };
    for (base, index) in [("int", FinCategory::cyclic(2)), ("mod:5", FinCategory::cyclic(3)), ("rel:2", two_object_five_arrow())] {
        let cc = over(base, index);
        assert!(check_category_laws(cc.as_ref(), &cfg).passed(), "{base}");
        let r = check_strong_distributivity(cc.as_ref(), 3, &cfg);
        assert!(r.passed(), "{base}: {r}");
    }
}

#[test]
fn k_bounded_base_breaks_the_product() {
    let cc = over("kbounded:2", FinCategory::cyclic(2));
    assert!(!check_strong_distributivity(cc.as_ref(), 2, &CheckConfig::default()).passed());
}

#[test]
fn sigma_eta_gamma_star() {
    let cc = over("int", FinCategory::cyclic(2));
    let x = Object::named("X");
    let u = cc.index().find_object("U").unwrap();
    let z0 = cc.index().find_arrow("z0").unwrap();
    let z1 = cc.index().find_arrow("z1").unwrap();

    assert_eq!(cc.sigma(&arrow(&cc, &[2, 3])).unwrap(), Element::int(5));
    assert_eq!(cc.sigma(&cc.identity_arrow(&xu()).unwrap()).unwrap(), Element::int(1));
    assert_eq!(cc.sigma(&arrow(&cc, &[0, 0])).unwrap(), Element::int(0));

    let e5 = cc.eta(&x, &x, &Element::int(5), u).unwrap();
    assert_eq!(e5.coeffs, ints(&[5, 0]));
    assert_eq!(cc.sigma(&e5).unwrap(), Element::int(5));

    assert_eq!(cc.gamma(&x, z1).unwrap().coeffs, ints(&[0, 1]));
    let g1 = cc.gamma(&x, z1).unwrap();
    assert_eq!(cc.convolve(&g1, &g1).unwrap(), cc.gamma(&x, z0).unwrap());
    assert_eq!(cc.gamma(&x, z0).unwrap(), cc.identity_arrow(&xu()).unwrap());

    assert_eq!(star_embed(&cc, &x, &x, &Element::int(3), z1).unwrap().coeffs, ints(&[0, 3]));
    let (a, b) = (cc.star(&x, &x, &Element::int(2), z1).unwrap(), cc.star(&x, &x, &Element::int(3), z1).unwrap());
    assert_eq!(cc.convolve(&a, &b).unwrap(), cc.star(&x, &x, &Element::int(6), z0).unwrap());

    let cfg = CheckConfig::default();
    assert!(check_pcm_functor(&sigma_functor(&cc), 3, &cfg).passed());
    assert!(check_pcm_functor(&eta_functor(&cc, u), 3, &cfg).passed());
    let gamma = gamma_functor(&cc, &x);
    assert_eq!(gamma(z1).unwrap(), g1);
}

fn reduction(n: u64) -> PcmFunctor {
    let src: Arc<dyn PcmCategory> = Arc::new(semiring_category(ScalarKind::Int).unwrap());
    let tgt: Arc<dyn PcmCategory> = Arc::new(semiring_category(ScalarKind::Residue(n)).unwrap());
    PcmFunctor::new("mod", src, tgt, |o| Ok(o.clone()), move |_, _, f| match f {
        Element::Int(v) => Ok(Element::Residue(Residue::from_bigint(v, n)?)),
        other => Ok(other.clone()),
    })
}

#[test]
fn bifunctor_actions() {
    let cc = cauchy_product(Arc::new(semiring_category(ScalarKind::Int).unwrap()), Arc::new(FinCategory::cyclic(2))).unwrap();
    let (lifted, target) = map_base(&reduction(2), &cc).unwrap();
    let img = lifted.on_arrow(&xu(), &xu(), &Element::Coeffs(ints(&[3, 2]))).unwrap();
    assert_eq!(img, Element::Coeffs(vec![Element::residue(1, 2), Element::residue(0, 2)]));
    assert_eq!(target.name(), "mod:2[1 objects, 2 arrows]");
    assert!(check_pcm_functor(&lifted, 3, &CheckConfig::default()).passed());

    let z4 = Arc::new(FinCategory::cyclic(4));
    let z2 = Arc::new(FinCategory::cyclic(2));
    let lambda = Functor::from_names(&z4, &z2, &[("U", "U")], &[("z0", "z0"), ("z1", "z1"), ("z2", "z0"), ("z3", "z1")]).unwrap();
    let c4 = cauchy_product(int_base(), z4).unwrap();
    let (f, _) = map_index(&c4, &lambda, z2.clone()).unwrap();
    let img = f.on_arrow(&xu(), &xu(), &Element::Coeffs(ints(&[1, 1, 1, 1]))).unwrap();
    assert_eq!(img, Element::Coeffs(ints(&[2, 2])));
    assert!(check_pcm_functor(&f, 2, &CheckConfig { trials: 30, ..CheckConfig::default() }).passed());

    let (id, _) = map_index(&c4, &Functor::identity(c4.index()), c4.index().clone()).unwrap();
    let a = Element::Coeffs(ints(&[1, -2, 0, 5]));
    assert_eq!(id.on_arrow(&xu(), &xu(), &a).unwrap(), a);

    let trivial = Arc::new(FinCategory::trivial());
    let bang = Functor::from_names(&z2, &trivial, &[("U", "U")], &[("z0", "id_U"), ("z1", "id_U")]).unwrap();
    let c2 = cauchy_product(int_base(), z2).unwrap();
    let (total, _) = map_index(&c2, &bang, trivial).unwrap();
    assert_eq!(total.on_arrow(&xu(), &xu(), &Element::Coeffs(ints(&[2, 3]))).unwrap(), Element::Coeffs(ints(&[5])));
}
