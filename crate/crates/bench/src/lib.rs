//! Deterministic workloads shared by the benchmarks.

use abl_core::corpus::{Corpus, Sentence};
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// A trip-request corpus with heavy token overlap, the shape alignment
/// learning is built for.
pub fn trip_corpus(seed: u64, sentences: usize) -> Corpus {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let places = [
        "amsterdam", "utrecht", "leiden", "delft", "haarlem", "breda", "arnhem", "zwolle",
    ];
    let verbs = ["go", "travel", "fly", "drive"];
    let list = (0..sentences)
        .map(|_| {
            let a = places[rng.gen_range(0..places.len())];
            let b = places[rng.gen_range(0..places.len())];
            let v = verbs[rng.gen_range(0..verbs.len())];
            let line = match rng.gen_range(0..4) {
                0 => format!("from {a} to {b}"),
                1 => format!("i want to {v} from {a} to {b}"),
                2 => format!("to {b}"),
                _ => format!("{v} from {a}"),
            };
            line.parse::<Sentence>().unwrap()
        })
        .collect();
    Corpus::new(list)
}
