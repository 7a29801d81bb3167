#![no_main]

use std::sync::{Arc, OnceLock};

use libfuzzer_sys::fuzz_target;
use pcmcat::cauchy::{cauchy_product, CauchyCategory};
use pcmcat::cli::{format_arrow, parse_arrow};
use pcmcat::fincat::FinCategory;
use pcmcat::pcmcat::parse_base;

fn products() -> &'static [Arc<CauchyCategory>] {
    static P: OnceLock<Vec<Arc<CauchyCategory>>> = OnceLock::new();
    P.get_or_init(|| {
        ["int", "mod:5", "kbounded:1", "rel:2", "matrix:2", "complex"]
            .iter()
            .map(|b| cauchy_product(parse_base(b).unwrap(), Arc::new(FinCategory::cyclic(3))).unwrap())
            .collect()
    })
}

fuzz_target!(|input: (u8, &str)| {
    let (which, text) = input;
    let ps = products();
    let cc = &ps[which as usize % ps.len()];
    if let Ok((name, a)) = parse_arrow(text, cc) {
        let printed = format_arrow(&name, &a, cc).unwrap();
        let (_, back) = parse_arrow(&printed, cc).expect("printed arrow parses");
        if cc.base().name() != "complex" {
            assert_eq!(back, a);
        }
    }
});
