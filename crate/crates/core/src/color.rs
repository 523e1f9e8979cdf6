//! Chroma/flavor color labels and their HSV and RGB renderings.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::dictionary::{self, DictionaryKey};
use crate::error::{Error, Result};
use crate::pauli::PauliLabel;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Chroma {
    B,
    G,
    R,
}

impl Chroma {
    pub const ALL: [Chroma; 3] = [Chroma::B, Chroma::G, Chroma::R];

    /// Hue angle in degrees.
    pub fn hue(self) -> f64 {
        match self {
            Chroma::R => 0.0,
            Chroma::B => 120.0,
            Chroma::G => 240.0,
        }
    }

    fn letter(self) -> char {
        match self {
            Chroma::B => 'B',
            Chroma::G => 'G',
            Chroma::R => 'R',
        }
    }
}

/// Chroma plus flavor index `0..=4`; written `G_2`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ColorLabel {
    chroma: Chroma,
    flavor: u8,
}

impl ColorLabel {
    pub const FLAVORS: u8 = 5;

    pub fn new(chroma: Chroma, flavor: u8) -> Result<Self> {
        if flavor >= Self::FLAVORS {
            return Err(Error::UnknownKey(format!("{}{flavor}", chroma.letter())));
        }
        Ok(ColorLabel { chroma, flavor })
    }

    pub fn chroma(self) -> Chroma {
        self.chroma
    }

    pub fn flavor(self) -> u8 {
        self.flavor
    }

    /// All fifteen labels, chroma-major.
    pub fn all() -> impl Iterator<Item = ColorLabel> {
        Chroma::ALL
            .into_iter()
            .flat_map(|chroma| (0..Self::FLAVORS).map(move |flavor| ColorLabel { chroma, flavor }))
    }
}

impl fmt::Display for ColorLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}_{}", self.chroma.letter(), self.flavor)
    }
}

impl FromStr for ColorLabel {
    type Err = Error;

    /// Accepts `G2` or `G_2`; trailing primes (`B'''4`) are tolerated by callers that strip them.
    fn from_str(s: &str) -> Result<Self> {
        let unknown = || Error::UnknownKey(s.to_owned());
        let mut chars = s.trim().chars();
        let chroma = match chars.next() {
            Some('B') => Chroma::B,
            Some('G') => Chroma::G,
            Some('R') => Chroma::R,
            _ => return Err(unknown()),
        };
        let rest: String = chars.collect();
        let flavor: u8 = rest.trim_start_matches('_').parse().map_err(|_| unknown())?;
        ColorLabel::new(chroma, flavor).map_err(|_| unknown())
    }
}

impl Serialize for ColorLabel {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for ColorLabel {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct HsvColor {
    pub hue: f64,
    pub saturation: f64,
    pub value: f64,
}

/// `(saturation, value)` per flavor; higher flavors carry more white.
const FLAVOR_TABLE: [(f64, f64); 5] = [(1.00, 0.55), (0.90, 0.70), (0.75, 0.82), (0.55, 0.92), (0.30, 1.00)];

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Rgb {
    pub r: u8,
    pub g: u8,
    pub b: u8,
}

impl Rgb {
    pub fn hex(self) -> String {
        format!("#{:02x}{:02x}{:02x}", self.r, self.g, self.b)
    }
}

impl HsvColor {
    /// Hexagonal HSV → RGB, each channel rounded half-up to 8 bits.
    pub fn to_rgb(self) -> Rgb {
        let c = self.value * self.saturation;
        let h = self.hue.rem_euclid(360.0) / 60.0;
        let x = c * (1.0 - (h % 2.0 - 1.0).abs());
        let (r, g, b) = match h as u32 {
            0 => (c, x, 0.0),
            1 => (x, c, 0.0),
            2 => (0.0, c, x),
            3 => (0.0, x, c),
            4 => (x, 0.0, c),
            _ => (c, 0.0, x),
        };
        let m = self.value - c;
        // Tolerance absorbs binary representation error so decimal halves round up.
        let channel = |v: f64| ((v + m) * 255.0 + 0.5 + 1e-9).floor().clamp(0.0, 255.0) as u8;
        Rgb { r: channel(r), g: channel(g), b: channel(b) }
    }
}

pub fn color_of(op: PauliLabel) -> Result<ColorLabel> {
    Ok(dictionary::lookup_label(op)?.color)
}

pub fn hsv_of(c: ColorLabel) -> HsvColor {
    let (saturation, value) = FLAVOR_TABLE[c.flavor as usize];
    HsvColor { hue: c.chroma.hue(), saturation, value }
}

pub fn rgb_of(c: ColorLabel) -> Rgb {
    hsv_of(c).to_rgb()
}

/// Chroma classification of a three-tile row.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RowTone {
    /// One tile of each chroma.
    Colorless,
    Mono(Chroma),
    Mixed,
}

/// Classification by literal chroma.
pub fn literal_tone(row: [ColorLabel; 3]) -> RowTone {
    let [a, b, c] = row.map(ColorLabel::chroma);
    if a == b && b == c {
        RowTone::Mono(a)
    } else if a != b && b != c && a != c {
        RowTone::Colorless
    } else {
        RowTone::Mixed
    }
}

/// Literal classification, except that flavor-0 tiles take on the chroma
/// shared by the remaining tiles when the row is not already colorless.
pub fn chameleon_tone(row: [ColorLabel; 3]) -> RowTone {
    match literal_tone(row) {
        RowTone::Mixed => {}
        tone => return tone,
    }
    let mut vivid = row.iter().filter(|c| c.flavor != 0).map(|c| c.chroma);
    match vivid.next() {
        Some(first) if vivid.all(|c| c == first) => RowTone::Mono(first),
        _ => RowTone::Mixed,
    }
}

/// Dictionary lookup by color.
pub fn operator_of(c: ColorLabel) -> Result<PauliLabel> {
    Ok(dictionary::lookup(DictionaryKey::Color(c))?.label())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(s: &str) -> ColorLabel {
        s.parse().unwrap()
    }

    #[test]
    fn color_of_examples() {
        let q = |n| PauliLabel::q(n).unwrap();
        assert_eq!(color_of(q(11)).unwrap(), c("R0"));
        assert_eq!(color_of(q(5)).unwrap(), c("G0"));
        assert_eq!(color_of(q(14)).unwrap(), c("B0"));
        assert!(color_of(PauliLabel::identity(2).unwrap()).is_err());
        assert!(color_of("000001".parse().unwrap()).is_err());
    }

    #[test]
    fn hsv_examples() {
        assert_eq!(hsv_of(c("R0")), HsvColor { hue: 0.0, saturation: 1.0, value: 0.55 });
        assert_eq!(hsv_of(c("B4")), HsvColor { hue: 120.0, saturation: 0.30, value: 1.0 });
        for label in ColorLabel::all() {
            assert!([0.0, 120.0, 240.0].contains(&hsv_of(label).hue));
        }
    }

    #[test]
    fn rgb_conversion_rounds_half_up() {
        // 0.55 * 255 = 140.25
        assert_eq!(rgb_of(c("R0")), Rgb { r: 140, g: 0, b: 0 });
        // v = 1, s = 0.3: m = 0.7, 0.7 * 255 = 178.5 rounds up
        assert_eq!(rgb_of(c("B4")), Rgb { r: 179, g: 255, b: 179 });
        assert_eq!(rgb_of(c("G0")).hex(), "#00008c");
    }

    #[test]
    fn fifteen_distinct_rgb_values() {
        let mut hexes: Vec<String> = ColorLabel::all().map(|l| rgb_of(l).hex()).collect();
        hexes.sort();
        hexes.dedup();
        assert_eq!(hexes.len(), 15);
    }

    #[test]
    fn chameleon_rule() {
        assert_eq!(chameleon_tone([c("R0"), c("G0"), c("B0")]), RowTone::Colorless);
        assert_eq!(literal_tone([c("G0"), c("B2"), c("B4")]), RowTone::Mixed);
        assert_eq!(chameleon_tone([c("G0"), c("B2"), c("B4")]), RowTone::Mono(Chroma::B));
        assert_eq!(chameleon_tone([c("R2"), c("R0"), c("R3")]), RowTone::Mono(Chroma::R));
        assert_eq!(chameleon_tone([c("R1"), c("B2"), c("B4")]), RowTone::Mixed);
    }

    #[test]
    fn label_parsing() {
        assert_eq!(c("G_2"), c("G2"));
        assert_eq!(c("G2").to_string(), "G_2");
        assert!("G5".parse::<ColorLabel>().is_err());
        assert!("U1".parse::<ColorLabel>().is_err());
    }
}
