#![no_main]

use flt_cli::dto::{CheckReport, TableReport};
use flt_cli::render::{self, Format};
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    if let Ok(t) = serde_json::from_slice::<TableReport>(data) {
        let back: TableReport = serde_json::from_str(&render::json(&t)).expect("re-encoded table parses");
        assert_eq!(back, t);
        for fmt in [Format::Csv, Format::Markdown] {
            let _ = render::table(&t, fmt);
        }
    }
    if let Ok(c) = serde_json::from_slice::<CheckReport>(data) {
        let back: CheckReport = serde_json::from_str(&render::json(&c)).expect("re-encoded check parses");
        assert_eq!(back, c);
        let _ = render::generic(&c, Format::Csv);
    }
});
