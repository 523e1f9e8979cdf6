//! Musical rendering of designs.

pub mod chords;
pub mod notes;
pub mod scale;
pub mod spectrum;
pub mod synth;

pub use chords::{chord_of, chord_sequence, Chord, ChordOrder};
pub use notes::{note_of, scale_degree, Letter, NoteLabel, PitchOrder, Signature};
pub use scale::{build_cps_scale, Scale, DEFAULT_PRIMES, DEFAULT_TONIC};
pub use spectrum::{detect_onsets, spectral_report};
pub use synth::{expected_len, synthesize, wav_bytes, write_wav, write_wav_to, SampleBuffer, SynthConfig, WindowParams};
