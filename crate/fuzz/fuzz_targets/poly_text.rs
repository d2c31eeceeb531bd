#![no_main]

use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| logbundle_cli::fuzzing::poly_text(data));
