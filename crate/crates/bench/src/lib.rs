//! Shared inputs for the benchmarks.

use kirkman_core::{build_cps_scale, chord_sequence, resolve, Chord, ChordOrder, Design, Scale, RUNNING_EXAMPLE};

pub fn running_example() -> Design {
    Design::from_q(&RUNNING_EXAMPLE).expect("running example seeds are valid")
}

/// The 35 week chords and the default scale.
pub fn week_chords() -> (Vec<Chord>, Scale) {
    let design = running_example();
    let res = resolve(&design, None).expect("running example resolves");
    let chords = chord_sequence(&design, ChordOrder::Resolution(&res)).expect("chords");
    (chords, build_cps_scale(&kirkman_core::audio::DEFAULT_PRIMES, kirkman_core::audio::DEFAULT_TONIC).expect("scale"))
}
