#![no_main]

use libfuzzer_sys::fuzz_target;
use prtt_core::Natural;
use prtt_prir::{from_json, to_json, to_json_shared, Evaluator};

fuzz_target!(|data: &[u8]| {
    let Ok(value) = serde_json::from_slice::<serde_json::Value>(data) else { return };
    let Ok(f) = from_json(&value) else { return };
    assert_eq!(from_json(&to_json(&f)).as_ref(), Ok(&f));
    assert_eq!(from_json(&to_json_shared(&f)).as_ref(), Ok(&f));
    let k = f.arity().expect("decoded programs are well formed");
    let args = vec![Natural::from(2u64); k];
    let _ = Evaluator::new(10_000).eval(&f, &args);
});
