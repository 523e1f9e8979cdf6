//! Fifteen-note labels: five letters times three signatures, with no
//! enharmonic equivalence.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::dictionary;
use crate::error::{Error, Result};
use crate::pauli::PauliLabel;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Letter {
    A,
    B,
    C,
    D,
    E,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Signature {
    Flat,
    Natural,
    Sharp,
}

/// Ordering is pitch order: `A♭ < A < A♯ < B♭ < … < E♯`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct NoteLabel {
    pub letter: Letter,
    pub signature: Signature,
}

const LETTERS: [Letter; 5] = [Letter::A, Letter::B, Letter::C, Letter::D, Letter::E];
const SIGNATURES: [Signature; 3] = [Signature::Flat, Signature::Natural, Signature::Sharp];

impl NoteLabel {
    pub fn new(letter: Letter, signature: Signature) -> Self {
        NoteLabel { letter, signature }
    }

    /// Position in pitch order, `0` (A♭) to `14` (E♯).
    pub fn rank(self) -> usize {
        self.letter as usize * 3 + self.signature as usize
    }

    pub fn from_rank(rank: usize) -> Option<Self> {
        (rank < 15).then(|| NoteLabel::new(LETTERS[rank / 3], SIGNATURES[rank % 3]))
    }

    pub fn all() -> impl Iterator<Item = NoteLabel> {
        (0..15).filter_map(NoteLabel::from_rank)
    }

    /// ASCII spelling, e.g. `Db`, `E#`.
    pub fn ascii(self) -> String {
        let sig = match self.signature {
            Signature::Flat => "b",
            Signature::Natural => "",
            Signature::Sharp => "#",
        };
        format!("{:?}{sig}", self.letter)
    }
}

impl fmt::Display for NoteLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let sig = match self.signature {
            Signature::Flat => "♭",
            Signature::Natural => "",
            Signature::Sharp => "♯",
        };
        write!(f, "{:?}{sig}", self.letter)
    }
}

impl FromStr for NoteLabel {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let unknown = || Error::UnknownKey(s.to_owned());
        let t = s.trim();
        let mut chars = t.chars();
        let letter = match chars.next() {
            Some('A') => Letter::A,
            Some('B') => Letter::B,
            Some('C') => Letter::C,
            Some('D') => Letter::D,
            Some('E') => Letter::E,
            _ => return Err(unknown()),
        };
        let signature = match chars.as_str() {
            "" => Signature::Natural,
            "b" | "♭" => Signature::Flat,
            "#" | "♯" => Signature::Sharp,
            _ => return Err(unknown()),
        };
        Ok(NoteLabel::new(letter, signature))
    }
}

impl Serialize for NoteLabel {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.ascii())
    }
}

impl<'de> Deserialize<'de> for NoteLabel {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// How operators are ranked onto ascending scale degrees.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum PitchOrder {
    /// Dictionary note order, which follows `Q_1 … Q_15`.
    #[default]
    Dictionary,
    /// Ascending `O_i` index.
    OIndex,
}

pub fn note_of(op: PauliLabel) -> Result<NoteLabel> {
    Ok(dictionary::lookup_label(op)?.note)
}

/// Scale degree `0..15` of a note under `order`.
pub fn scale_degree(note: NoteLabel, order: PitchOrder) -> Result<usize> {
    match order {
        PitchOrder::Dictionary => Ok(note.rank()),
        PitchOrder::OIndex => {
            let entry = dictionary::lookup(dictionary::DictionaryKey::Note(note))?;
            Ok(entry.o.get() as usize - 2)
        }
    }
}
