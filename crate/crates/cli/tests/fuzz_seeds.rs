//! Replays the checked-in fuzz corpus and a few thousand random inputs
//! through the fuzz target bodies, so the invariants run on stable.

use std::fs;
use std::path::PathBuf;

use logbundle_cli::fuzzing::TARGETS;
use proptest::prelude::*;

fn corpus_dir(target: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../fuzz/corpus").join(target)
}

#[test]
fn seeds_replay() {
    for (name, run) in TARGETS {
        let seeds: Vec<_> = fs::read_dir(corpus_dir(name)).unwrap().map(|e| e.unwrap().path()).collect();
        assert!(seeds.len() >= 3, "{name} has {} seeds", seeds.len());
        for path in seeds {
            run(&fs::read(&path).unwrap());
        }
    }
}

const ALPHABET: &str = "xyzt0123456789+-*/^(),; ";

proptest! {
    #![proptest_config(ProptestConfig::with_cases(2000))]

    #[test]
    fn text_targets_hold(s in proptest::collection::vec(proptest::sample::select(ALPHABET.chars().collect::<Vec<_>>()), 0..40)) {
        let s: String = s.into_iter().collect();
        for (_, run) in &TARGETS[..4] {
            run(s.as_bytes());
        }
    }

    #[test]
    fn decoders_survive_mutation(idx in 0usize..4096, byte in any::<u8>(), cut in 0usize..4096) {
        for (name, run) in &TARGETS[4..] {
            for path in fs::read_dir(corpus_dir(name)).unwrap() {
                let mut data = fs::read(path.unwrap().path()).unwrap();
                if !data.is_empty() {
                    let i = idx % data.len();
                    data[i] = byte;
                    data.truncate(cut.max(i + 1));
                }
                run(&data);
            }
        }
    }
}
