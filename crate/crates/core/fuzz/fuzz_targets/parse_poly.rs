#![no_main]

use formalis::{Poly, VarSpec};
use libfuzzer_sys::fuzz_target;

// Any accepted input must print to text that parses back to the same value.
fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    let ring = VarSpec::new(&["x", "y", "t"], &["x"], Some("t")).unwrap().shared();
    match Poly::parse(text, &ring) {
        Ok(p) => {
            let back = Poly::parse(&p.to_string(), &ring).expect("printed polynomial reparses");
            assert_eq!(back, p);
        }
        Err(formalis::Error::Parse(e)) => assert!(e.pos <= text.len()),
        Err(_) => {}
    }
});
