#![no_main]

use formalis::groebner::{decode_entry, encode_entry, MonomialOrder};
use formalis::VarSpec;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    let ring = VarSpec::polynomial(&["x", "y", "t"]).unwrap().shared();
    let order = MonomialOrder::grevlex(&ring);
    if let Some(basis) = decode_entry(text, &ring, &order) {
        let again = encode_entry(&ring, &order, &basis);
        assert_eq!(decode_entry(&again, &ring, &order), Some(basis));
    }
});
