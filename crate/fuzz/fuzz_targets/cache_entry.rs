#![no_main]

use flt_cli::cache::CacheEntry;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(e) = CacheEntry::decode(data) else { return };
    let _ = e.is_current(&e.key);
    let back = CacheEntry::decode(&e.encode()).expect("re-encoded entry decodes");
    assert_eq!((back.schema, &back.tool_version, &back.key, back.timestamp), (e.schema, &e.tool_version, &e.key, e.timestamp));
});
