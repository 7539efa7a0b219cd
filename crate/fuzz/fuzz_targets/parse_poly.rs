#![no_main]

use flt_core::exactmath::poly::parse_poly;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(s) = std::str::from_utf8(data) else { return };
    if s.len() > 256 {
        return;
    }
    if let Ok(f) = parse_poly(s) {
        // the printed form parses back to the same polynomial
        let again = parse_poly(&f.to_string()).expect("printed polynomial parses");
        assert_eq!(again, f);
    }
});
