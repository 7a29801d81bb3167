use std::fmt;
use std::sync::Arc;

use super::{Element, Pcm};
use crate::report::{families, CheckConfig, Counterexample, Report, Tally};

type ElementMap = Arc<dyn Fn(&Element) -> Element + Send + Sync>;

/// A map between PCMs, claimed to preserve summable families and their sums.
#[derive(Clone)]
pub struct PcmHom {
    pub name: String,
    pub source: Pcm,
    pub target: Pcm,
    map: ElementMap,
}

impl fmt::Debug for PcmHom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "PcmHom({}: {} -> {})", self.name, self.source.name(), self.target.name())
    }
}

impl PcmHom {
    pub fn new(
        name: impl Into<String>,
        source: Pcm,
        target: Pcm,
        map: impl Fn(&Element) -> Element + Send + Sync + 'static,
    ) -> Self {
        PcmHom { name: name.into(), source, target, map: Arc::new(map) }
    }

    pub fn identity(p: Pcm) -> Self {
        PcmHom::new(format!("id[{}]", p.name()), p.clone(), p, Element::clone)
    }

    pub fn apply(&self, x: &Element) -> Element {
        (self.map)(x)
    }

    /// `next ∘ self`.
    pub fn then(&self, next: &PcmHom) -> PcmHom {
        let first = self.map.clone();
        let second = next.map.clone();
        PcmHom {
            name: format!("{}.{}", next.name, self.name),
            source: self.source.clone(),
            target: next.target.clone(),
            map: Arc::new(move |x| second(&first(x))),
        }
    }
}

/// Checks that `h` sends every enumerated summable family of size at most
/// `max_size` (over the source grid) to a summable family with sum `h(Σ)`.
pub fn check_hom(h: &PcmHom, max_size: usize, cfg: &CheckConfig) -> Report {
    let name = format!("hom[{}]", h.name);
    let mut rng = cfg.rng(&name);
    let grid = h.source.grid(&mut rng);
    let mut tally = Tally::new(name);
    for fam in families(&grid.elements, max_size, cfg.family_budget, &mut rng) {
        let Ok(src) = h.source.sum(&fam) else {
            tally.fail(format!("source rejects {fam}"), None);
            break;
        };
        let Some(total) = src.into_value() else { continue };
        tally.case();
        let image = fam.map(|x| h.apply(x));
        let ok = match h.target.sum(&image) {
            Ok(r) => r.value().is_some_and(|v| v.close_to(&h.apply(&total), cfg.tolerance)),
            Err(_) => false,
        };
        if !ok {
            tally.fail(format!("{fam}"), Some(Counterexample { objects: vec![], families: vec![fam] }));
            break;
        }
    }
    tally.finish()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pcm::{make_finite_families_pcm, make_k_bounded_pcm, Monoid, Residue};
    use num::bigint::BigInt;

    fn int_ff() -> Pcm {
        make_finite_families_pcm(Monoid::int()).unwrap()
    }

    fn to_mod2(x: &Element) -> Element {
        match x {
            Element::Int(n) => Element::Residue(Residue::from_bigint(n, 2).unwrap()),
            other => other.clone(),
        }
    }

    #[test]
    fn identity_passes() {
        let cfg = CheckConfig::default();
        assert!(check_hom(&PcmHom::identity(int_ff()), 3, &cfg).passed());
        let k = make_k_bounded_pcm(Monoid::int(), 2).unwrap();
        assert!(check_hom(&PcmHom::identity(k), 3, &cfg).passed());
    }

    #[test]
    fn doubling_passes() {
        let double = PcmHom::new("double", int_ff(), int_ff(), |x| match x {
            Element::Int(n) => Element::Int(n * BigInt::from(2)),
            other => other.clone(),
        });
        let r = check_hom(&double, 4, &CheckConfig::default());
        assert!(r.passed());
        assert!(r.checked > 100);
    }

    #[test]
    fn reduction_from_bounded_to_finite_families_passes() {
        let source = make_k_bounded_pcm(Monoid::int(), 1).unwrap();
        let target = make_finite_families_pcm(Monoid::modular(2)).unwrap();
        let h = PcmHom::new("mod2", source, target, to_mod2);
        assert!(check_hom(&h, 3, &CheckConfig::default()).passed());
    }

    #[test]
    fn squaring_fails_with_witness() {
        let square = PcmHom::new("square", int_ff(), int_ff(), |x| x.mul(x).unwrap());
        let r = check_hom(&square, 3, &CheckConfig::default());
        assert!(!r.passed());
        assert!(r.counterexample.is_some());
    }

    #[test]
    fn composites_of_passing_homs_pass() {
        let double = PcmHom::new("double", int_ff(), int_ff(), |x| x.add(x).unwrap());
        let reduce = PcmHom::new("mod2", int_ff(), make_finite_families_pcm(Monoid::modular(2)).unwrap(), to_mod2);
        let cfg = CheckConfig::default();
        assert!(check_hom(&double, 3, &cfg).passed() && check_hom(&reduce, 3, &cfg).passed());
        assert!(check_hom(&double.then(&reduce), 3, &cfg).passed());
    }
}
