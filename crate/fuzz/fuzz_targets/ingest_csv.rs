#![no_main]

use genlogic::dataset::Dataset;
use genlogic::rational::ratio;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    // Any byte soup must either ingest cleanly or return an error.
    if let Ok(ds) = Dataset::ingest_bytes(data) {
        assert!(ds.total() >= 1);
        // the induced distribution always sums to exactly 1
        let dist = ds.distribution();
        let sum = dist.support().fold(ratio(0, 1), |acc, (_, p)| acc + p);
        assert_eq!(sum, ratio(1, 1));
    }
});
