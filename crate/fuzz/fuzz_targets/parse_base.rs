#![no_main]

use libfuzzer_sys::fuzz_target;
use pcmcat::pcmcat::parse_base;

fuzz_target!(|desc: &str| {
    if let Ok(c) = parse_base(desc) {
        for x in c.objects() {
            c.identity(&x).expect("every object has an identity");
        }
    }
});
