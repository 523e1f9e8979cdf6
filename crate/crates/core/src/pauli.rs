//! Label-level algebra of n-qubit Pauli tensors.
//!
//! Each qubit factor is a two-bit code (`I = 00`, `σz = 01`, `σy = 10`,
//! `σx = 11`); factors are concatenated with the first qubit in the most
//! significant position, so `[1100]` is `σx ⊗ I`. Multiplying two tensors
//! XORs their labels and accumulates a phase `i^k` per qubit.

use std::fmt;
use std::ops::{Mul, MulAssign, Neg};
use std::str::FromStr;

use num_complex::Complex;
use num_rational::Rational64;

use crate::error::{Error, Result};

/// Largest register the packed label representation holds.
pub const MAX_QUBITS: u8 = 32;

/// Commutant enumeration walks all `4^n` labels.
const MAX_COMMUTANT_QUBITS: u8 = 8;

/// One single-qubit factor of a tensor.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Factor {
    I,
    Z,
    Y,
    X,
}

impl Factor {
    pub fn from_code(code: u64) -> Self {
        match code & 0b11 {
            0b00 => Factor::I,
            0b01 => Factor::Z,
            0b10 => Factor::Y,
            _ => Factor::X,
        }
    }

    pub fn code(self) -> u64 {
        match self {
            Factor::I => 0b00,
            Factor::Z => 0b01,
            Factor::Y => 0b10,
            Factor::X => 0b11,
        }
    }

    /// Position in the cyclic order x → y → z.
    fn cyclic_rank(self) -> Option<u8> {
        match self {
            Factor::I => None,
            Factor::X => Some(0),
            Factor::Y => Some(1),
            Factor::Z => Some(2),
        }
    }

    /// Phase of `self · other` relative to the single-qubit result.
    fn product_phase(self, other: Factor) -> Phase {
        match (self.cyclic_rank(), other.cyclic_rank()) {
            (Some(a), Some(b)) if a != b => {
                if (b + 3 - a) % 3 == 1 {
                    Phase::I
                } else {
                    Phase::MINUS_I
                }
            }
            _ => Phase::ONE,
        }
    }
}

/// Phase `i^k`, `k` taken mod 4.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Phase(u8);

impl Phase {
    pub const ONE: Phase = Phase(0);
    pub const I: Phase = Phase(1);
    pub const MINUS_ONE: Phase = Phase(2);
    pub const MINUS_I: Phase = Phase(3);

    pub fn new(k: u8) -> Self {
        Phase(k % 4)
    }

    pub fn exponent(self) -> u8 {
        self.0
    }

    pub fn to_complex(self) -> Complex<Rational64> {
        let (re, im) = match self.0 {
            0 => (1, 0),
            1 => (0, 1),
            2 => (-1, 0),
            _ => (0, -1),
        };
        Complex::new(Rational64::from_integer(re), Rational64::from_integer(im))
    }
}

impl Mul for Phase {
    type Output = Phase;
    fn mul(self, rhs: Phase) -> Phase {
        Phase((self.0 + rhs.0) % 4)
    }
}

impl MulAssign for Phase {
    fn mul_assign(&mut self, rhs: Phase) {
        *self = *self * rhs;
    }
}

impl Neg for Phase {
    type Output = Phase;
    fn neg(self) -> Phase {
        self * Phase::MINUS_ONE
    }
}

impl fmt::Display for Phase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(["1", "i", "-1", "-i"][self.0 as usize])
    }
}

/// Binary label of an n-qubit Pauli tensor (`2n` bits).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PauliLabel {
    qubits: u8,
    bits: u64,
}

impl PauliLabel {
    pub fn new(bits: u64, qubits: u8) -> Result<Self> {
        if qubits == 0 || qubits > MAX_QUBITS {
            return Err(Error::TooManyQubits { qubits, max: MAX_QUBITS });
        }
        if qubits < 32 && bits >> (2 * qubits as u32) != 0 {
            return Err(Error::InvalidLabel(format!(
                "{bits:#b} does not fit in {} bits",
                2 * qubits
            )));
        }
        Ok(PauliLabel { qubits, bits })
    }

    pub fn identity(qubits: u8) -> Result<Self> {
        Self::new(0, qubits)
    }

    /// Two-qubit label `Q_n`; `n` is the base-10 reading of the bits.
    pub fn q(index: u32) -> Result<Self> {
        if index > 15 {
            return Err(Error::QIndexOutOfRange(index));
        }
        Self::new(index as u64, 2)
    }

    pub fn from_factors(factors: &[Factor]) -> Result<Self> {
        let qubits = u8::try_from(factors.len()).map_err(|_| Error::TooManyQubits {
            qubits: u8::MAX,
            max: MAX_QUBITS,
        })?;
        let bits = factors.iter().fold(0u64, |acc, f| (acc << 2) | f.code());
        Self::new(bits, qubits)
    }

    pub fn bits(self) -> u64 {
        self.bits
    }

    pub fn qubits(self) -> u8 {
        self.qubits
    }

    pub fn bit_len(self) -> u32 {
        2 * self.qubits as u32
    }

    /// Index `n` of `Q_n`.
    pub fn q_index(self) -> u64 {
        self.bits
    }

    pub fn is_identity(self) -> bool {
        self.bits == 0
    }

    /// Factor on `qubit`, counting from the most significant (first) qubit.
    pub fn factor(self, qubit: u8) -> Factor {
        let shift = 2 * (self.qubits - 1 - qubit) as u32;
        Factor::from_code(self.bits >> shift)
    }

    pub fn factors(self) -> impl Iterator<Item = Factor> {
        (0..self.qubits).map(move |q| self.factor(q))
    }

    /// Number of non-identity tensor factors.
    pub fn support(self) -> u32 {
        self.factors().filter(|f| *f != Factor::I).count() as u32
    }

    /// Every label of the register, identity first.
    pub fn all(qubits: u8) -> Result<impl Iterator<Item = PauliLabel>> {
        if qubits == 0 || qubits > MAX_COMMUTANT_QUBITS {
            return Err(Error::TooManyQubits { qubits, max: MAX_COMMUTANT_QUBITS });
        }
        Ok((0..1u64 << (2 * qubits as u32)).map(move |bits| PauliLabel { qubits, bits }))
    }

    fn check_same_width(self, other: PauliLabel) -> Result<()> {
        if self.qubits != other.qubits {
            return Err(Error::LengthMismatch { left: self.qubits, right: other.qubits });
        }
        Ok(())
    }

    pub(crate) fn xor(self, other: PauliLabel) -> PauliLabel {
        debug_assert_eq!(self.qubits, other.qubits);
        PauliLabel { qubits: self.qubits, bits: self.bits ^ other.bits }
    }
}

impl fmt::Display for PauliLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{:0width$b}]", self.bits, width = self.bit_len() as usize)
    }
}

impl FromStr for PauliLabel {
    type Err = Error;

    /// Accepts `[0110]`, `0110`, or `Q6` (two-qubit index form).
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if let Some(index) = s.strip_prefix('Q').or_else(|| s.strip_prefix('q')) {
            let index = index.trim_start_matches('_');
            let n: u32 = index.parse().map_err(|_| Error::InvalidLabel(s.to_owned()))?;
            return Self::q(n);
        }
        let digits = s.trim_start_matches('[').trim_end_matches(']');
        if digits.is_empty() || digits.len() % 2 != 0 || !digits.bytes().all(|b| b == b'0' || b == b'1') {
            return Err(Error::InvalidLabel(s.to_owned()));
        }
        if digits.len() > 2 * MAX_QUBITS as usize {
            return Err(Error::TooManyQubits { qubits: (digits.len() / 2) as u8, max: MAX_QUBITS });
        }
        let bits = u64::from_str_radix(digits, 2).map_err(|_| Error::InvalidLabel(s.to_owned()))?;
        Self::new(bits, (digits.len() / 2) as u8)
    }
}

/// Product of two tensors: `a · b = phase · P(a ⊕ b)`.
pub fn product(a: PauliLabel, b: PauliLabel) -> Result<(PauliLabel, Phase)> {
    a.check_same_width(b)?;
    let phase = a
        .factors()
        .zip(b.factors())
        .fold(Phase::ONE, |acc, (fa, fb)| acc * fa.product_phase(fb));
    Ok((a.xor(b), phase))
}

/// Symplectic test: true iff the number of anticommuting factor pairs is even.
pub fn commutes(a: PauliLabel, b: PauliLabel) -> Result<bool> {
    a.check_same_width(b)?;
    Ok(anticommuting_factors(a, b) % 2 == 0)
}

fn anticommuting_factors(a: PauliLabel, b: PauliLabel) -> u32 {
    let low = 0x5555_5555_5555_5555u64;
    let nonzero = |x: u64| (x | (x >> 1)) & low;
    (nonzero(a.bits) & nonzero(b.bits) & nonzero(a.bits ^ b.bits)).count_ones()
}

/// A tensor together with its normalization `2^-f`, `f` = number of non-identity factors.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct NormalizedOp {
    label: PauliLabel,
}

impl NormalizedOp {
    pub fn new(label: PauliLabel) -> Self {
        NormalizedOp { label }
    }

    pub fn label(self) -> PauliLabel {
        self.label
    }

    pub fn weight(self) -> Rational64 {
        Rational64::new(1, 1i64 << self.label.support())
    }
}

/// Operator `O_i` of the two-qubit basis, `i ∈ 1..=16` (`O_1` is the identity).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct OIndex(u8);

/// `Q` index of `O_1 ..= O_16`.
const O_TO_Q: [u8; 16] = [0, 4, 1, 5, 12, 8, 13, 9, 3, 2, 7, 6, 15, 10, 14, 11];

impl OIndex {
    pub fn new(index: u32) -> Result<Self> {
        if !(1..=16).contains(&index) {
            return Err(Error::OIndexOutOfRange(index));
        }
        Ok(OIndex(index as u8))
    }

    /// All non-identity operators `O_2 ..= O_16`.
    pub fn nonidentity() -> impl Iterator<Item = OIndex> {
        (2..=16).map(OIndex)
    }

    pub fn get(self) -> u8 {
        self.0
    }

    pub fn label(self) -> PauliLabel {
        PauliLabel { qubits: 2, bits: O_TO_Q[self.0 as usize - 1] as u64 }
    }

    pub fn of(label: PauliLabel) -> Result<Self> {
        if label.qubits != 2 {
            return Err(Error::NotTwoQubit(label.qubits));
        }
        let pos = O_TO_Q.iter().position(|&q| q as u64 == label.bits).expect("O table covers all 16 labels");
        Ok(OIndex(pos as u8 + 1))
    }

    pub fn weight(self) -> Rational64 {
        NormalizedOp::new(self.label()).weight()
    }
}

impl fmt::Display for OIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "O_{}", self.0)
    }
}

impl FromStr for OIndex {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let digits = s.trim().trim_start_matches(['O', 'o']).trim_start_matches('_');
        let n: u32 = digits.parse().map_err(|_| Error::UnknownKey(s.to_owned()))?;
        Self::new(n)
    }
}

/// Exact complex-rational coefficient.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Coefficient(pub Complex<Rational64>);

impl Coefficient {
    pub fn zero() -> Self {
        Coefficient(Complex::new(Rational64::from_integer(0), Rational64::from_integer(0)))
    }

    pub fn is_zero(self) -> bool {
        self.0.re == Rational64::from_integer(0) && self.0.im == Rational64::from_integer(0)
    }

    /// `i · r` for rational `r`.
    pub fn imaginary(r: Rational64) -> Self {
        Coefficient(Complex::new(Rational64::from_integer(0), r))
    }
}

impl Neg for Coefficient {
    type Output = Coefficient;
    fn neg(self) -> Coefficient {
        Coefficient(-self.0)
    }
}

impl fmt::Display for Coefficient {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let zero = Rational64::from_integer(0);
        let one = Rational64::from_integer(1);
        let Complex { re, im } = self.0;
        let abs = |r: Rational64| if r < zero { -r } else { r };
        if re == zero && im == zero {
            return f.write_str("0");
        }
        if re != zero {
            return write!(f, "({re}{}{}i)", if im < zero { "-" } else { "+" }, abs(im));
        }
        let sign = if im < zero { "-" } else { "" };
        let mag = abs(im);
        if mag == one {
            write!(f, "{sign}i")
        } else if *mag.numer() == 1 {
            write!(f, "{sign}i/{}", mag.denom())
        } else {
            write!(f, "{sign}{mag}i")
        }
    }
}

impl FromStr for Coefficient {
    type Err = Error;

    /// Parses `0`, `i`, `-i`, `i/4`, `-i/4`, `3i/4`.
    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Fixture(format!("bad coefficient `{s}`"));
        let t = s.trim();
        if t == "0" {
            return Ok(Coefficient::zero());
        }
        let (negative, rest) = match t.strip_prefix('-') {
            Some(r) => (true, r),
            None => (false, t),
        };
        let (numer, denom) = match rest.split_once('/') {
            Some((n, d)) => (n, d.parse::<i64>().map_err(|_| bad())?),
            None => (rest, 1),
        };
        let numer = numer.strip_suffix('i').ok_or_else(bad)?;
        let numer = if numer.is_empty() { 1 } else { numer.parse::<i64>().map_err(|_| bad())? };
        if denom == 0 {
            return Err(bad());
        }
        let r = Rational64::new(if negative { -numer } else { numer }, denom);
        Ok(Coefficient::imaginary(r))
    }
}

/// `[O_i, O_j] = coefficient · O_result`; zero commutators carry no result.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct CommutatorEntry {
    pub coefficient: Coefficient,
    pub result: Option<OIndex>,
}

impl CommutatorEntry {
    pub fn zero() -> Self {
        CommutatorEntry { coefficient: Coefficient::zero(), result: None }
    }

    pub fn is_zero(&self) -> bool {
        self.result.is_none()
    }
}

impl fmt::Display for CommutatorEntry {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.result {
            None => f.write_str("0"),
            Some(k) => {
                let c = self.coefficient.to_string();
                if c.contains('/') {
                    write!(f, "({c}){k}")
                } else {
                    write!(f, "{c}{k}")
                }
            }
        }
    }
}

/// Commutator of two normalized basis operators `O_i`, `O_j` (`i, j ∈ 2..=16`).
pub fn commutator(i: OIndex, j: OIndex) -> Result<CommutatorEntry> {
    for idx in [i, j] {
        if idx.0 == 1 {
            return Err(Error::OIndexOutOfRange(1));
        }
    }
    let (a, b) = (i.label(), j.label());
    if commutes(a, b)? {
        return Ok(CommutatorEntry::zero());
    }
    let (label, phase_ab) = product(a, b)?;
    let (_, phase_ba) = product(b, a)?;
    let k = OIndex::of(label)?;
    let scale = i.weight() * j.weight() / k.weight();
    let diff = phase_ab.to_complex() - phase_ba.to_complex();
    Ok(CommutatorEntry {
        coefficient: Coefficient(diff * scale),
        result: Some(k),
    })
}

/// The non-identity labels other than `a` that commute with `a`.
pub fn commutant(a: PauliLabel) -> Result<Vec<PauliLabel>> {
    if a.is_identity() {
        return Err(Error::IdentityOperator("commutant"));
    }
    let mut out = Vec::new();
    for b in PauliLabel::all(a.qubits)? {
        if !b.is_identity() && b != a && commutes(a, b)? {
            out.push(b);
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn l(s: &str) -> PauliLabel {
        s.parse().unwrap()
    }

    #[test]
    fn product_examples() {
        assert_eq!(product(l("1100"), l("1010")).unwrap(), (l("0110"), Phase::I));
        // τz · τy = -i τx
        assert_eq!(product(l("0001"), l("0010")).unwrap(), (l("0011"), Phase::MINUS_I));
        for q in 0..16 {
            let a = PauliLabel::q(q).unwrap();
            assert_eq!(product(a, a).unwrap(), (PauliLabel::identity(2).unwrap(), Phase::ONE));
        }
    }

    #[test]
    fn length_mismatch_is_rejected() {
        let err = product(l("01"), l("0101")).unwrap_err();
        assert!(matches!(err, Error::LengthMismatch { left: 1, right: 2 }));
        assert!(commutes(l("01"), l("0101")).is_err());
    }

    #[test]
    fn commutation_examples() {
        assert!(commutes(PauliLabel::q(4).unwrap(), PauliLabel::q(5).unwrap()).unwrap());
        assert!(!commutes(PauliLabel::q(12).unwrap(), PauliLabel::q(8).unwrap()).unwrap());
        let id = PauliLabel::identity(2).unwrap();
        for q in 0..16 {
            assert!(commutes(id, PauliLabel::q(q).unwrap()).unwrap());
        }
    }

    #[test]
    fn commutator_examples() {
        let o = |k| OIndex::new(k).unwrap();
        assert_eq!(commutator(o(2), o(5)).unwrap().to_string(), "iO_6");
        assert_eq!(commutator(o(4), o(7)).unwrap().to_string(), "(i/4)O_6");
        assert!(commutator(o(13), o(14)).unwrap().is_zero());
        assert!(commutator(o(1), o(5)).is_err());
        assert!(OIndex::new(17).is_err());
    }

    #[test]
    fn commutant_of_q5() {
        let got: Vec<u64> = commutant(PauliLabel::q(5).unwrap()).unwrap().iter().map(|x| x.q_index()).collect();
        assert_eq!(got, vec![1, 4, 10, 11, 14, 15]);
        assert!(matches!(
            commutant(PauliLabel::identity(2).unwrap()),
            Err(Error::IdentityOperator(_))
        ));
    }

    #[test]
    fn weights() {
        let w = |q| NormalizedOp::new(PauliLabel::q(q).unwrap()).weight();
        assert_eq!(w(0), Rational64::from_integer(1));
        assert_eq!(w(4), Rational64::new(1, 2));
        assert_eq!(w(15), Rational64::new(1, 4));
    }

    #[test]
    fn three_qubit_labels_follow_register_order() {
        assert_eq!(l("000010").q_index(), 2);
        let x = l("110110");
        assert_eq!(x.q_index(), 54);
        assert_eq!(x.factors().collect::<Vec<_>>(), vec![Factor::X, Factor::Z, Factor::Y]);
    }

    #[test]
    fn coefficient_text_roundtrip() {
        for s in ["0", "i", "-i", "i/4", "-i/4"] {
            assert_eq!(s.parse::<Coefficient>().unwrap().to_string(), s);
        }
    }

    #[test]
    fn o_index_table_is_a_bijection() {
        let mut seen: Vec<u64> = (1..=16).map(|k| OIndex::new(k).unwrap().label().q_index()).collect();
        seen.sort_unstable();
        assert_eq!(seen, (0..16).collect::<Vec<_>>());
        for q in 0..16 {
            let label = PauliLabel::q(q).unwrap();
            assert_eq!(OIndex::of(label).unwrap().label(), label);
        }
    }
}
