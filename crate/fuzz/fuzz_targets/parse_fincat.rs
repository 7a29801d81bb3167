#![no_main]

use libfuzzer_sys::fuzz_target;
use pcmcat::cli::parse_fincat;
use pcmcat::fincat::validate_category;

fuzz_target!(|text: &str| {
    if let Ok(c) = parse_fincat(text) {
        assert!(validate_category(&c).passed());
        let again = parse_fincat(&c.to_fincat_text()).expect("printed category parses");
        assert_eq!(again.num_arrows(), c.num_arrows());
    }
});
