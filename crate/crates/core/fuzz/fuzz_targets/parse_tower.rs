#![no_main]

use formalis::towers::TowerFile;
use libfuzzer_sys::fuzz_target;

// Decoding and ring construction only; validation runs Gröbner bases and is
// left out to keep iterations cheap.
fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    if let Ok(file) = TowerFile::from_json(text) {
        if let Ok(parsed) = file.parse() {
            assert_eq!(parsed.chain.len(), file.chain.len());
        }
        let again = TowerFile::from_json(&file.to_json()).expect("serialized tower reparses");
        assert_eq!(again, file);
    }
});
