//! Pauli-operator designs: seed expansion of Steiner triple systems over
//! two-qubit Pauli labels, Kirkman resolution, and color and audio renderings.
//!
//! ```
//! use kirkman_core::{resolve, validate_resolution, Design};
//!
//! let design = Design::from_q(&[12, 10, 4, 11]).unwrap();
//! assert_eq!(design.kind_counts(), (15, 20));
//! let week = resolve(&design, None).unwrap();
//! assert!(validate_resolution(&design, &week).passed());
//! ```

pub mod audio;
pub mod color;
pub mod design;
pub mod dictionary;
pub mod document;
pub mod error;
pub mod fixtures;
pub mod geometry;
pub mod oracle;
pub mod pauli;
pub mod report;
pub mod resolve;
pub mod svg;
pub mod tables;

pub use audio::{
    build_cps_scale, chord_sequence, note_of, spectral_report, synthesize, write_wav, Chord, ChordOrder, NoteLabel,
    PitchOrder, SampleBuffer, Scale, SynthConfig, WindowParams,
};
pub use color::{color_of, hsv_of, rgb_of, Chroma, ColorLabel, HsvColor, Rgb};
pub use design::{
    enumerate_blocks, expand_seeds, validate_seeds, Block, BlockKind, Design, DesignParams, Point, Seeds,
    RUNNING_EXAMPLE,
};
pub use dictionary::{lookup, DictionaryEntry, DictionaryKey};
pub use document::DesignDocument;
pub use error::{Error, Result};
pub use geometry::{embed_coordinates, Layout, Placement};
pub use oracle::{count_valid_seeds, dense_of, verify_algebra, verify_design, DenseOp};
pub use pauli::{commutant, commutator, commutes, product, CommutatorEntry, NormalizedOp, OIndex, PauliLabel, Phase};
pub use report::{Check, VerificationReport};
pub use resolve::{
    enumerate_spreads, match_days, resolve, validate_resolution, DayLabel, DayMatching, ParallelClass, Resolution,
};
pub use svg::{render_diagram, render_tiling, TilingLayout, TilingSpec};
