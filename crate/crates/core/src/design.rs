//! Seed expansion of `(2^m - 1, 3, 1)` designs.
//!
//! Points are nonzero `m`-bit coordinates; the seed at position `t` sits at
//! the unit point whose bit `t` (counted from the most significant end) is
//! set, and every other point carries the product of the seeds its bits
//! select. Blocks are the XOR-zero triples of coordinates.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::pauli::{commutes, product, PauliLabel, Phase};

/// Seeds of the design used throughout the documentation and tests.
pub const RUNNING_EXAMPLE: [u32; 4] = [12, 10, 4, 11];

pub const MAX_SEEDS: usize = 4;

/// A nonzero `m`-bit coordinate, written `(0111)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Point {
    m: u8,
    coord: u8,
}

impl Point {
    pub fn new(coord: u8, m: usize) -> Result<Self> {
        if !(1..=MAX_SEEDS).contains(&m) {
            return Err(Error::UnsupportedSeedCount(m));
        }
        if coord == 0 || coord as usize >= 1 << m {
            return Err(Error::InvalidBlock(format!("coordinate {coord} is not a nonzero {m}-bit word")));
        }
        Ok(Point { m: m as u8, coord })
    }

    /// Unit point carrying seed `t`.
    pub fn unit(t: usize, m: usize) -> Result<Self> {
        if t >= m {
            return Err(Error::InvalidBlock(format!("seed position {t} exceeds m = {m}")));
        }
        Point::new(1 << (m - 1 - t), m)
    }

    pub fn coord(self) -> u8 {
        self.coord
    }

    pub fn m(self) -> usize {
        self.m as usize
    }

    /// Bit `t` counted from the most significant position.
    pub fn bit(self, t: usize) -> bool {
        self.coord >> (self.m as usize - 1 - t) & 1 == 1
    }

    /// Coordinate without brackets, e.g. `0111`.
    pub fn bit_string(self) -> String {
        format!("{:0width$b}", self.coord, width = self.m as usize)
    }

    /// Same coordinate, left-padded with zeros to `m` bits.
    pub fn widen(self, m: usize) -> Result<Self> {
        Point::new(self.coord, m.max(self.m()))
    }

    /// Drops leading zero bits down to `m` bits.
    pub fn narrow(self, m: usize) -> Result<Self> {
        Point::new(self.coord, m)
    }

    pub fn xor(self, other: Point) -> u8 {
        self.coord ^ other.coord
    }
}

impl fmt::Display for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})", self.bit_string())
    }
}

impl FromStr for Point {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let digits = s.trim().trim_start_matches('(').trim_end_matches(')');
        if digits.is_empty() || digits.len() > MAX_SEEDS || !digits.bytes().all(|b| b == b'0' || b == b'1') {
            return Err(Error::InvalidBlock(format!("bad coordinate `{s}`")));
        }
        let coord = u8::from_str_radix(digits, 2).expect("validated binary digits");
        Point::new(coord, digits.len())
    }
}

/// Unordered triple of distinct points whose coordinates XOR to zero.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Block {
    points: [Point; 3],
}

impl Block {
    pub fn new(a: Point, b: Point, c: Point) -> Result<Self> {
        if a.m != b.m || b.m != c.m {
            return Err(Error::InvalidBlock(format!("{a}, {b}, {c} have different widths")));
        }
        if a == b || b == c || a == c {
            return Err(Error::InvalidBlock(format!("{a}, {b}, {c} are not distinct")));
        }
        if a.coord ^ b.coord ^ c.coord != 0 {
            return Err(Error::InvalidBlock(format!("{a} ⊕ {b} ⊕ {c} ≠ 0")));
        }
        let mut points = [a, b, c];
        points.sort();
        Ok(Block { points })
    }

    /// Block through two distinct points.
    pub fn through(a: Point, b: Point) -> Result<Self> {
        let third = Point::new(a.xor(b), a.m())?;
        Block::new(a, b, third)
    }

    /// Points in ascending coordinate order.
    pub fn points(&self) -> [Point; 3] {
        self.points
    }

    pub fn contains(&self, p: Point) -> bool {
        self.points.contains(&p)
    }

    pub fn m(&self) -> usize {
        self.points[0].m()
    }

    pub fn mask(&self) -> u16 {
        self.points.iter().fold(0, |acc, p| acc | 1 << p.coord)
    }

    pub fn map_points(&self, f: impl Fn(Point) -> Result<Point>) -> Result<Block> {
        let [a, b, c] = self.points;
        Block::new(f(a)?, f(b)?, f(c)?)
    }
}

impl fmt::Display for Block {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [a, b, c] = self.points;
        write!(f, "{{{a},{b},{c}}}")
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum BlockKind {
    /// The three operators pairwise commute.
    Commuting,
    /// The three operators pairwise anticommute.
    Cyclic,
}

impl fmt::Display for BlockKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            BlockKind::Commuting => "commuting",
            BlockKind::Cyclic => "cyclic",
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct DesignParams {
    pub v: usize,
    pub b: usize,
    pub r: usize,
    pub k: usize,
    pub lambda: usize,
}

impl DesignParams {
    pub fn for_seed_count(m: usize) -> Result<Self> {
        if !(1..=MAX_SEEDS).contains(&m) {
            return Err(Error::UnsupportedSeedCount(m));
        }
        let v = (1 << m) - 1;
        Ok(DesignParams { v, b: v * (v - 1) / 6, r: (v - 1) / 2, k: 3, lambda: 1 })
    }

    /// Only `v = 2^m - 1` is reachable by seed expansion; `v = 9` and the like are rejected.
    pub fn for_order(v: usize) -> Result<Self> {
        let m = (v + 1).trailing_zeros() as usize;
        if v == 0 || (v + 1).count_ones() != 1 {
            return Err(Error::UnsupportedOrder(v));
        }
        Self::for_seed_count(m).map_err(|_| Error::UnsupportedOrder(v))
    }
}

impl fmt::Display for DesignParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "v={} b={} r={} k={} λ={}", self.v, self.b, self.r, self.k, self.lambda)
    }
}

/// An ordered, GF(2)-independent tuple of non-identity operators.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Seeds(Vec<PauliLabel>);

impl Seeds {
    pub fn new(labels: Vec<PauliLabel>) -> Result<Self> {
        validate_seeds(&labels)?;
        Ok(Seeds(labels))
    }

    pub fn from_q(indices: &[u32]) -> Result<Self> {
        let labels = indices.iter().map(|&q| PauliLabel::q(q)).collect::<Result<Vec<_>>>()?;
        Seeds::new(labels)
    }

    pub fn labels(&self) -> &[PauliLabel] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

/// Ok iff the labels are nonzero, equally wide and GF(2)-independent.
pub fn validate_seeds(labels: &[PauliLabel]) -> Result<()> {
    let m = labels.len();
    if !(1..=MAX_SEEDS).contains(&m) {
        return Err(Error::UnsupportedSeedCount(m));
    }
    let qubits = labels[0].qubits();
    if let Some(bad) = labels.iter().find(|l| l.qubits() != qubits) {
        return Err(Error::LengthMismatch { left: qubits, right: bad.qubits() });
    }
    if let Some(position) = labels.iter().position(|l| l.is_identity()) {
        return Err(Error::IdentitySeed { position });
    }
    let dimension = 2 * qubits as usize;
    if m > dimension {
        return Err(Error::ExceedsOperatorSpace { seeds: m, dimension });
    }
    // Smallest dependent subset first, then lexicographic.
    let mut subsets: Vec<u32> = (1..1u32 << m).collect();
    subsets.sort_by_key(|s| (s.count_ones(), s.reverse_bits()));
    for subset in subsets {
        let xor = (0..m).filter(|t| subset >> t & 1 == 1).fold(0, |acc, t| acc ^ labels[t].bits());
        if xor == 0 {
            let positions: Vec<usize> = (0..m).filter(|t| subset >> t & 1 == 1).collect();
            let names: Vec<String> = positions.iter().map(|&t| format!("Q{}", labels[t].q_index())).collect();
            return Err(Error::DependentSeeds { positions, labels: names.join("·") });
        }
    }
    Ok(())
}

/// All XOR-zero triples over nonzero `m`-bit words, for `m ∈ {2, 3, 4}`.
pub fn enumerate_blocks(m: usize) -> Result<Vec<Block>> {
    if !(2..=MAX_SEEDS).contains(&m) {
        return Err(Error::WrongSeedCount { operation: "enumerate_blocks", expected: "m ∈ {2, 3, 4}", m });
    }
    Ok(blocks_of_width(m))
}

fn blocks_of_width(m: usize) -> Vec<Block> {
    let top = 1u8 << m;
    let mut out = Vec::new();
    for a in 1..top {
        for b in a + 1..top {
            let c = a ^ b;
            if c > b {
                let p = |x| Point { m: m as u8, coord: x };
                out.push(Block { points: [p(a), p(b), p(c)] });
            }
        }
    }
    out
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Design {
    m: usize,
    seeds: Vec<PauliLabel>,
    /// Operator at coordinate `c` is `assignment[c - 1]`.
    assignment: Vec<PauliLabel>,
    blocks: Vec<Block>,
    kinds: Vec<BlockKind>,
}

/// Seed expansion: each point carries the product of the seeds its coordinate selects.
pub fn expand_seeds(seeds: &Seeds) -> Design {
    let labels = seeds.labels();
    let m = labels.len();
    let assignment = (1u8..1 << m)
        .map(|coord| {
            (0..m)
                .filter(|t| coord >> (m - 1 - t) & 1 == 1)
                .fold(PauliLabel::identity(labels[0].qubits()).expect("seed width is valid"), |acc, t| {
                    acc.xor(labels[t])
                })
        })
        .collect();
    Design::assemble(m, labels.to_vec(), assignment, blocks_of_width(m))
}

impl Design {
    /// Design for the given `Q` indices.
    pub fn from_q(indices: &[u32]) -> Result<Self> {
        Ok(expand_seeds(&Seeds::from_q(indices)?))
    }

    /// Builds a design from raw parts without checking combinatorial validity;
    /// `oracle::verify_design` reports on that.
    pub fn from_parts(
        m: usize,
        seeds: Vec<PauliLabel>,
        assignment: Vec<PauliLabel>,
        blocks: Vec<Block>,
    ) -> Result<Self> {
        if !(1..=MAX_SEEDS).contains(&m) {
            return Err(Error::UnsupportedSeedCount(m));
        }
        if seeds.len() != m {
            return Err(Error::Document(format!("{} seeds for m = {m}", seeds.len())));
        }
        if assignment.len() != (1 << m) - 1 {
            return Err(Error::Document(format!("{} points for m = {m}", assignment.len())));
        }
        let qubits = assignment[0].qubits();
        if let Some(bad) = assignment.iter().chain(&seeds).find(|l| l.qubits() != qubits) {
            return Err(Error::LengthMismatch { left: qubits, right: bad.qubits() });
        }
        if let Some(bad) = blocks.iter().find(|b| b.m() != m) {
            return Err(Error::InvalidBlock(format!("{bad} is not a block over {m}-bit points")));
        }
        Ok(Design::assemble(m, seeds, assignment, blocks))
    }

    fn assemble(m: usize, seeds: Vec<PauliLabel>, assignment: Vec<PauliLabel>, blocks: Vec<Block>) -> Self {
        let mut design = Design { m, seeds, assignment, blocks, kinds: Vec::new() };
        design.kinds = design.blocks.iter().map(|b| design.kind_unchecked(b)).collect();
        design
    }

    fn kind_unchecked(&self, block: &Block) -> BlockKind {
        let [a, b, c] = block.points().map(|p| self.operator_at(p));
        let all = [(a, b), (b, c), (a, c)].iter().all(|&(x, y)| commutes(x, y).unwrap_or(false));
        if all {
            BlockKind::Commuting
        } else {
            BlockKind::Cyclic
        }
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn qubits(&self) -> u8 {
        self.assignment[0].qubits()
    }

    pub fn seeds(&self) -> &[PauliLabel] {
        &self.seeds
    }

    pub fn params(&self) -> DesignParams {
        DesignParams::for_seed_count(self.m).expect("m validated at construction")
    }

    pub fn points(&self) -> impl Iterator<Item = Point> + '_ {
        (1u8..1 << self.m).map(move |coord| Point { m: self.m as u8, coord })
    }

    /// Panics if `p` belongs to a design of a different width.
    pub fn operator_at(&self, p: Point) -> PauliLabel {
        assert_eq!(p.m(), self.m, "{p} is not a point of an m = {} design", self.m);
        self.assignment[p.coord as usize - 1]
    }

    pub fn point_of(&self, op: PauliLabel) -> Option<Point> {
        self.assignment
            .iter()
            .position(|&l| l == op)
            .map(|i| Point { m: self.m as u8, coord: i as u8 + 1 })
    }

    pub fn blocks(&self) -> &[Block] {
        &self.blocks
    }

    pub fn kinds(&self) -> &[BlockKind] {
        &self.kinds
    }

    pub fn block_index(&self, block: &Block) -> Option<usize> {
        self.blocks.iter().position(|b| b == block)
    }

    pub fn classify_block(&self, block: &Block) -> Result<BlockKind> {
        self.block_index(block).map(|i| self.kinds[i]).ok_or(Error::ForeignBlock(*block))
    }

    /// `(commuting, cyclic)` block counts.
    pub fn kind_counts(&self) -> (usize, usize) {
        let commuting = self.kinds.iter().filter(|k| **k == BlockKind::Commuting).count();
        (commuting, self.kinds.len() - commuting)
    }

    /// Display order of a block's points: commuting blocks by coordinate; cyclic
    /// blocks start at the lowest coordinate and follow the orientation in which
    /// each product of consecutive operators carries phase `+i`.
    pub fn display_order(&self, block: &Block) -> Result<[Point; 3]> {
        let [a, b, c] = block.points();
        match self.classify_block(block)? {
            BlockKind::Commuting => Ok([a, b, c]),
            BlockKind::Cyclic => {
                let (_, phase) = product(self.operator_at(a), self.operator_at(b))?;
                Ok(if phase == Phase::I { [a, b, c] } else { [a, c, b] })
            }
        }
    }

    /// Restriction of an `m = 4` design to its leading-zero points, as an `m = 3` design.
    pub fn fano_subdesign(&self) -> Result<Design> {
        if self.m != 4 {
            return Err(Error::WrongSeedCount { operation: "fano_subdesign", expected: "m = 4", m: self.m });
        }
        let assignment = self.assignment[..7].to_vec();
        Ok(Design::assemble(3, self.seeds[1..].to_vec(), assignment, blocks_of_width(3)))
    }

    /// `D(v,3,1)|Q12,Q10,Q4,Q11⟩`.
    pub fn notation(&self) -> String {
        let seeds: Vec<String> = self.seeds.iter().map(|s| format!("Q{}", s.q_index())).collect();
        format!("D({},3,1)|{}⟩", self.params().v, seeds.join(","))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> Point {
        s.parse().unwrap()
    }

    fn q(n: u32) -> PauliLabel {
        PauliLabel::q(n).unwrap()
    }

    #[test]
    fn seed_validation() {
        assert!(Seeds::from_q(&[10, 4, 11]).is_ok());
        assert!(Seeds::from_q(&RUNNING_EXAMPLE).is_ok());
        match Seeds::from_q(&[1, 2, 3]) {
            Err(Error::DependentSeeds { positions, .. }) => assert_eq!(positions, vec![0, 1, 2]),
            other => panic!("{other:?}"),
        }
        match Seeds::from_q(&[5, 7, 5]) {
            Err(Error::DependentSeeds { positions, .. }) => assert_eq!(positions, vec![0, 2]),
            other => panic!("{other:?}"),
        }
        assert!(matches!(Seeds::from_q(&[4, 0]), Err(Error::IdentitySeed { position: 1 })));
        assert!(matches!(Seeds::from_q(&[]), Err(Error::UnsupportedSeedCount(0))));
        assert!(matches!(Seeds::from_q(&[1, 2, 4, 8, 15]), Err(Error::UnsupportedSeedCount(5))));
        let one_qubit: Vec<PauliLabel> = ["01", "10", "11"].iter().map(|s| s.parse().unwrap()).collect();
        assert!(matches!(Seeds::new(one_qubit), Err(Error::ExceedsOperatorSpace { seeds: 3, dimension: 2 })));
        assert!(matches!(
            Seeds::new(vec![q(1), "000001".parse().unwrap()]),
            Err(Error::LengthMismatch { .. })
        ));
    }

    #[test]
    fn running_example_mapping() {
        let d = Design::from_q(&RUNNING_EXAMPLE).unwrap();
        assert_eq!(d.operator_at(p("1000")), q(12));
        assert_eq!(d.operator_at(p("0111")), q(5));
        assert_eq!(d.operator_at(p("1111")), q(9));
        assert_eq!(d.operator_at(p("0101")), q(1));
        assert_eq!(d.notation(), "D(15,3,1)|Q12,Q10,Q4,Q11⟩");
    }

    #[test]
    fn line_and_point_designs() {
        let line = Design::from_q(&[3, 6]).unwrap();
        assert_eq!(line.operator_at(p("10")), q(3));
        assert_eq!(line.operator_at(p("01")), q(6));
        assert_eq!(line.operator_at(p("11")), q(5));
        assert_eq!(line.blocks().len(), 1);
        let point = Design::from_q(&[7]).unwrap();
        assert_eq!(point.points().count(), 1);
        assert_eq!(point.operator_at(p("1")), q(7));
        assert!(point.blocks().is_empty());
        assert_eq!(point.params(), DesignParams { v: 1, b: 0, r: 0, k: 3, lambda: 1 });
    }

    #[test]
    fn block_enumeration() {
        assert_eq!(enumerate_blocks(2).unwrap().len(), 1);
        assert_eq!(enumerate_blocks(3).unwrap().len(), 7);
        assert_eq!(enumerate_blocks(4).unwrap().len(), 35);
        assert!(enumerate_blocks(1).is_err());
        assert!(enumerate_blocks(5).is_err());
        let only = enumerate_blocks(2).unwrap()[0];
        assert_eq!(only.points(), [p("01"), p("10"), p("11")]);
    }

    #[test]
    fn classification() {
        let fano = Design::from_q(&[10, 4, 11]).unwrap();
        assert_eq!(fano.kind_counts(), (3, 4));
        for block in fano.blocks() {
            let through_center = block.contains(p("111"));
            assert_eq!(fano.classify_block(block).unwrap() == BlockKind::Commuting, through_center);
        }
        let d = Design::from_q(&RUNNING_EXAMPLE).unwrap();
        assert_eq!(d.kind_counts(), (15, 20));
        let b = Block::new(p("0010"), p("0101"), p("0111")).unwrap();
        assert_eq!(d.classify_block(&b).unwrap(), BlockKind::Commuting);
        let foreign = Block::new(p("010"), p("101"), p("111")).unwrap();
        assert!(matches!(d.classify_block(&foreign), Err(Error::ForeignBlock(_))));
    }

    #[test]
    fn fano_subdesign_of_running_example() {
        let d = Design::from_q(&RUNNING_EXAMPLE).unwrap();
        let sub = d.fano_subdesign().unwrap();
        assert_eq!(sub, Design::from_q(&[10, 4, 11]).unwrap());
        assert_eq!((sub.params().v, sub.params().b, sub.params().r), (7, 7, 3));
        for block in sub.blocks() {
            let lifted = block.map_points(|x| x.widen(4)).unwrap();
            assert!(d.block_index(&lifted).is_some());
        }
        assert!(sub.fano_subdesign().is_err());
    }

    #[test]
    fn params_and_orders() {
        assert_eq!(DesignParams::for_order(15).unwrap(), DesignParams { v: 15, b: 35, r: 7, k: 3, lambda: 1 });
        assert_eq!(DesignParams::for_order(7).unwrap().b, 7);
        assert!(matches!(DesignParams::for_order(9), Err(Error::UnsupportedOrder(9))));
        assert!(DesignParams::for_order(31).is_err());
    }

    #[test]
    fn cyclic_display_order_has_positive_phases() {
        let d = Design::from_q(&RUNNING_EXAMPLE).unwrap();
        for block in d.blocks() {
            let order = d.display_order(block).unwrap();
            if d.classify_block(block).unwrap() == BlockKind::Cyclic {
                for i in 0..3 {
                    let (label, phase) = product(d.operator_at(order[i]), d.operator_at(order[(i + 1) % 3])).unwrap();
                    assert_eq!(label, d.operator_at(order[(i + 2) % 3]));
                    assert_eq!(phase, Phase::I);
                }
            } else {
                assert_eq!(order, block.points());
            }
        }
    }

    #[test]
    fn block_constructor_rejects_bad_triples() {
        assert!(Block::new(p("001"), p("010"), p("100")).is_err());
        assert!(Block::new(p("001"), p("001"), p("010")).is_err());
        assert!("000".parse::<Point>().is_err());
        assert!(Block::new(p("01"), p("010"), p("011")).is_err());
        assert!(Block::through(p("0001"), p("0001")).is_err());
    }
}
