//! Dictionary of the fifteen two-qubit operators across every notation:
//! binary label, `Q_n`, `O_i`, Pauli tensor, gamma-matrix text, color and note.

use std::str::FromStr;
use std::sync::OnceLock;

use crate::audio::NoteLabel;
use crate::color::ColorLabel;
use crate::error::{Error, Result};
use crate::pauli::{OIndex, PauliLabel};

const DICTIONARY_FIXTURE: &str = include_str!("../data/dictionary.txt");

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DictionaryEntry {
    pub q: u8,
    pub o: OIndex,
    pub tensor: String,
    pub gamma: String,
    pub color: ColorLabel,
    pub note: NoteLabel,
}

impl DictionaryEntry {
    pub fn label(&self) -> PauliLabel {
        PauliLabel::q(self.q as u32).expect("dictionary Q indices are 1..=15")
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DictionaryKey {
    Q(u32),
    O(u32),
    Color(ColorLabel),
    Note(NoteLabel),
}

impl FromStr for DictionaryKey {
    type Err = Error;

    /// `Q12`, `O5`, `R0` / `R_0`, `Ab` / `A♭`.
    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim();
        let index = |rest: &str| rest.trim_start_matches('_').parse::<u32>().ok();
        if let Some(n) = t.strip_prefix(['Q', 'q']).and_then(index) {
            return Ok(DictionaryKey::Q(n));
        }
        if let Some(n) = t.strip_prefix(['O', 'o']).and_then(index) {
            return Ok(DictionaryKey::O(n));
        }
        if let Ok(c) = t.parse::<ColorLabel>() {
            return Ok(DictionaryKey::Color(c));
        }
        if let Ok(n) = t.parse::<NoteLabel>() {
            return Ok(DictionaryKey::Note(n));
        }
        Err(Error::UnknownKey(t.to_owned()))
    }
}

/// All fifteen entries in `Q` order.
pub fn entries() -> &'static [DictionaryEntry] {
    static ENTRIES: OnceLock<Vec<DictionaryEntry>> = OnceLock::new();
    ENTRIES.get_or_init(|| parse_fixture(DICTIONARY_FIXTURE).expect("embedded dictionary fixture is well formed"))
}

pub fn lookup(key: DictionaryKey) -> Result<&'static DictionaryEntry> {
    let found = match key {
        DictionaryKey::Q(n) => entries().iter().find(|e| e.q as u32 == n),
        DictionaryKey::O(n) => entries().iter().find(|e| e.o.get() as u32 == n),
        DictionaryKey::Color(c) => entries().iter().find(|e| e.color == c),
        DictionaryKey::Note(n) => entries().iter().find(|e| e.note == n),
    };
    found.ok_or_else(|| Error::UnknownKey(format!("{key:?}")))
}

/// Entry for a non-identity two-qubit label.
pub fn lookup_label(op: PauliLabel) -> Result<&'static DictionaryEntry> {
    if op.qubits() != 2 {
        return Err(Error::NotTwoQubit(op.qubits()));
    }
    if op.is_identity() {
        return Err(Error::IdentityOperator("dictionary lookup"));
    }
    lookup(DictionaryKey::Q(op.q_index() as u32))
}

fn parse_fixture(text: &str) -> Result<Vec<DictionaryEntry>> {
    let mut out = Vec::new();
    for line in text.lines().map(str::trim).filter(|l| !l.is_empty() && !l.starts_with('#')) {
        let cols: Vec<&str> = line.split('|').map(str::trim).collect();
        let [q, bits, o, tensor, gamma, color, note] = cols[..] else {
            return Err(Error::Fixture(format!("dictionary row `{line}`")));
        };
        let q: u8 = q.parse().map_err(|_| Error::Fixture(format!("Q index `{q}`")))?;
        let label: PauliLabel = bits.parse()?;
        if label.q_index() != q as u64 {
            return Err(Error::Fixture(format!("Q{q} carries bits {bits}")));
        }
        out.push(DictionaryEntry {
            q,
            o: o.parse()?,
            tensor: tensor.to_owned(),
            gamma: gamma.to_owned(),
            color: color.parse()?,
            note: note.parse()?,
        });
    }
    Ok(out)
}
