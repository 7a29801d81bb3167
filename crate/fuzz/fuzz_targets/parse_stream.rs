#![no_main]

use libfuzzer_sys::fuzz_target;
use pcmcat::cauchy::series_convolve;
use pcmcat::cli::parse_stream;

// `<p>\n<q>\n<order>`
fuzz_target!(|text: &str| {
    let mut lines = text.lines();
    let (Some(p), Some(q)) = (lines.next(), lines.next()) else { return };
    let order = lines.next().and_then(|o| o.parse::<usize>().ok()).unwrap_or(4) % 16;
    if let (Ok(p), Ok(q)) = (parse_stream(p), parse_stream(q)) {
        let _ = series_convolve(&p, &q, order);
    }
});
