#![no_main]

use libfuzzer_sys::fuzz_target;
use pcmcat::cli::parse_element;
use pcmcat::pcm::{Carrier, ScalarKind};

fn carriers() -> Vec<Carrier> {
    vec![
        Carrier::Int,
        Carrier::Rational,
        Carrier::Residue(7),
        Carrier::Complex,
        Carrier::PartialFn { dom: 3, cod: 3, injective: false },
        Carrier::PartialFn { dom: 3, cod: 3, injective: true },
        Carrier::Relation { rows: 2, cols: 3 },
        Carrier::Vector { dim: 2 },
        Carrier::Matrix { rows: 2, cols: 2, scalar: ScalarKind::Rational },
        Carrier::Pair(Box::new(Carrier::Int), Box::new(Carrier::Residue(3))),
    ]
}

fuzz_target!(|input: (u8, &str)| {
    let (which, text) = input;
    let cs = carriers();
    let c = &cs[which as usize % cs.len()];
    if let Some(e) = parse_element(text, c) {
        let again = parse_element(&e.to_string(), c).expect("display parses");
        if *c != Carrier::Complex {
            assert_eq!(again, e);
        }
    }
});
