//! Kirkman resolution of the `(15,3,1)` design into seven days of five blocks.
//!
//! Day `d` owns one Fano line (a block with leading bit 0) through the point
//! `(0‖d)`. The four Fano points off that line are each joined to a pair of
//! cube corners `{c, c ⊕ p}`, and the four pairs partition the eight corners.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use crate::design::{Block, Design, Point};
use crate::error::{Error, Result};
use crate::report::VerificationReport;

const NAMES: [&str; 7] = ["MON", "TU", "WED", "TH", "FRI", "SAT", "SUN"];

/// Nonzero 3-bit day word; `(001)` is MON through `(111)` SUN.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DayLabel(u8);

impl DayLabel {
    pub fn new(bits: u8) -> Result<Self> {
        if !(1..=7).contains(&bits) {
            return Err(Error::InvalidMatching(format!("day bits {bits} are not a nonzero 3-bit word")));
        }
        Ok(DayLabel(bits))
    }

    pub fn bits(self) -> u8 {
        self.0
    }

    pub fn name(self) -> &'static str {
        NAMES[self.0 as usize - 1]
    }

    pub fn index(self) -> usize {
        self.0 as usize - 1
    }

    /// MON, TU, …, SUN.
    pub fn all() -> impl Iterator<Item = DayLabel> {
        (1..=7).map(DayLabel)
    }

    /// SUN, MON, …, SAT, the column order of the printed week.
    pub fn calendar() -> impl Iterator<Item = DayLabel> {
        [7, 1, 2, 3, 4, 5, 6].into_iter().map(DayLabel)
    }

    /// The Fano point `(0‖d)` of a four-bit design.
    pub fn point(self) -> Point {
        Point::new(self.0, 4).expect("day bits are a nonzero 4-bit word")
    }

    pub fn bit_string(self) -> String {
        format!("{:03b}", self.0)
    }
}

impl fmt::Display for DayLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for DayLabel {
    type Err = Error;

    /// `MON` or `001`.
    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim();
        if let Some(i) = NAMES.iter().position(|n| n.eq_ignore_ascii_case(t)) {
            return Ok(DayLabel(i as u8 + 1));
        }
        let digits = t.trim_start_matches('(').trim_end_matches(')');
        if digits.len() == 3 {
            if let Ok(bits) = u8::from_str_radix(digits, 2) {
                return DayLabel::new(bits);
            }
        }
        Err(Error::InvalidMatching(format!("unknown day `{s}`")))
    }
}

fn is_fano(block: &Block) -> bool {
    block.m() == 4 && block.points().iter().all(|p| p.coord() < 8)
}

fn fano_lines() -> Vec<Block> {
    (1u8..8)
        .flat_map(|a| (a + 1..8).map(move |b| (a, b)))
        .filter(|&(a, b)| (a ^ b) > b)
        .map(|(a, b)| {
            let p = |c| Point::new(c, 4).expect("Fano coordinates");
            Block::new(p(a), p(b), p(a ^ b)).expect("XOR-zero triple")
        })
        .collect()
}

/// Bijection from days to Fano lines with each line through its day point.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct DayMatching {
    lines: [Block; 7],
}

impl DayMatching {
    /// `lines[i]` belongs to the day with bits `i + 1`.
    pub fn new(lines: [Block; 7]) -> Result<Self> {
        for (day, line) in DayLabel::all().zip(&lines) {
            if !is_fano(line) {
                return Err(Error::InvalidMatching(format!("{day}: {line} is not a Fano line")));
            }
            if !line.contains(day.point()) {
                return Err(Error::InvalidMatching(format!("{day}: {line} misses {}", day.point())));
            }
        }
        for i in 0..7 {
            for j in i + 1..7 {
                if lines[i] == lines[j] {
                    return Err(Error::InvalidMatching(format!("{} assigned to two days", lines[i])));
                }
            }
        }
        Ok(DayMatching { lines })
    }

    pub fn from_map(map: &BTreeMap<DayLabel, Block>) -> Result<Self> {
        let mut lines = Vec::with_capacity(7);
        for day in DayLabel::all() {
            lines.push(*map.get(&day).ok_or_else(|| Error::InvalidMatching(format!("{day} has no line")))?);
        }
        DayMatching::new(lines.try_into().expect("seven days"))
    }

    /// Lexicographically least valid matching, days in bit order and lines in coordinate order.
    pub fn lexicographic() -> Self {
        fn search(day: usize, lines: &[Block], chosen: &mut Vec<Block>) -> bool {
            if day == 7 {
                return true;
            }
            let point = DayLabel(day as u8 + 1).point();
            for line in lines {
                if line.contains(point) && !chosen.contains(line) {
                    chosen.push(*line);
                    if search(day + 1, lines, chosen) {
                        return true;
                    }
                    chosen.pop();
                }
            }
            false
        }
        let lines = fano_lines();
        let mut chosen = Vec::with_capacity(7);
        assert!(search(0, &lines, &mut chosen), "the Fano incidence graph has a perfect matching");
        DayMatching { lines: chosen.try_into().expect("seven days") }
    }

    /// The matching read off the first rows of the printed week.
    pub fn table4() -> Self {
        let line = |a: u8, b: u8, c: u8| {
            let p = |x| Point::new(x, 4).expect("Fano coordinates");
            Block::new(p(a), p(b), p(c)).expect("Fano line")
        };
        DayMatching::new([
            line(0b001, 0b010, 0b011), // MON
            line(0b010, 0b101, 0b111), // TU
            line(0b011, 0b101, 0b110), // WED
            line(0b011, 0b100, 0b111), // TH
            line(0b001, 0b100, 0b101), // FRI
            line(0b010, 0b100, 0b110), // SAT
            line(0b001, 0b110, 0b111), // SUN
        ])
        .expect("preset is a valid matching")
    }

    /// Every valid matching, in lexicographic order.
    pub fn all() -> Vec<DayMatching> {
        fn search(day: usize, lines: &[Block], chosen: &mut Vec<Block>, out: &mut Vec<DayMatching>) {
            if day == 7 {
                out.push(DayMatching { lines: chosen.clone().try_into().expect("seven days") });
                return;
            }
            let point = DayLabel(day as u8 + 1).point();
            for line in lines {
                if line.contains(point) && !chosen.contains(line) {
                    chosen.push(*line);
                    search(day + 1, lines, chosen, out);
                    chosen.pop();
                }
            }
        }
        let mut out = Vec::new();
        search(0, &fano_lines(), &mut Vec::new(), &mut out);
        out
    }

    pub fn line(&self, day: DayLabel) -> Block {
        self.lines[day.index()]
    }

    pub fn lines(&self) -> &[Block; 7] {
        &self.lines
    }

    pub fn iter(&self) -> impl Iterator<Item = (DayLabel, Block)> + '_ {
        DayLabel::all().zip(self.lines.iter().copied())
    }
}

/// `match_days` for a design: the lexicographic matching, defined only for `m = 4`.
pub fn match_days(design: &Design) -> Result<DayMatching> {
    if design.m() != 4 {
        return Err(Error::NotResolvable(design.m()));
    }
    Ok(DayMatching::lexicographic())
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ParallelClass {
    pub blocks: Vec<Block>,
}

impl ParallelClass {
    pub fn fano_blocks(&self) -> impl Iterator<Item = &Block> {
        self.blocks.iter().filter(|b| is_fano(b))
    }

    /// Point-occupancy bitmask; a parallel class has exactly bits 1..=15 set.
    pub fn coverage(&self) -> u16 {
        self.blocks.iter().fold(0, |acc, b| acc | b.mask())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Resolution {
    /// Indexed by day in bit order: `classes[d.index()]`.
    pub classes: Vec<ParallelClass>,
    pub matching: DayMatching,
}

impl Resolution {
    pub fn class(&self, day: DayLabel) -> &ParallelClass {
        &self.classes[day.index()]
    }

    pub fn days(&self) -> impl Iterator<Item = (DayLabel, &ParallelClass)> {
        DayLabel::all().zip(&self.classes)
    }
}

const COVERED: u16 = 0xfffe;

/// Backtracking search for a resolution honoring `matching` (the lexicographic one if `None`).
pub fn resolve(design: &Design, matching: Option<&DayMatching>) -> Result<Resolution> {
    let matching = match matching {
        Some(m) => {
            if design.m() != 4 {
                return Err(Error::NotResolvable(design.m()));
            }
            *m
        }
        None => match_days(design)?,
    };

    struct Search<'a> {
        matching: &'a DayMatching,
        used: u64,
        picks: Vec<Block>,
    }

    // Cube blocks are identified by (p, low corner); bit index = p * 16 + corner.
    impl Search<'_> {
        fn day(&mut self, day: usize) -> bool {
            if day == 7 {
                return true;
            }
            let line = self.matching.lines[day];
            let off: Vec<u8> = (1u8..8).filter(|&p| !line.contains(Point::new(p, 4).unwrap())).collect();
            self.pair(day, &off, 0, 0)
        }

        fn pair(&mut self, day: usize, off: &[u8], k: usize, corners: u16) -> bool {
            if k == off.len() {
                return self.day(day + 1);
            }
            let p = off[k];
            for c in 8u8..16 {
                let d = c ^ p;
                if d < c || corners >> c & 1 == 1 || corners >> d & 1 == 1 {
                    continue;
                }
                let id = 1u64 << (p as u64 * 8 + (c - 8) as u64);
                if self.used & id != 0 {
                    continue;
                }
                self.used |= id;
                let pt = |x| Point::new(x, 4).unwrap();
                self.picks.push(Block::new(pt(p), pt(c), pt(d)).unwrap());
                if self.pair(day, off, k + 1, corners | 1 << c | 1 << d) {
                    return true;
                }
                self.picks.pop();
                self.used &= !id;
            }
            false
        }
    }

    let mut search = Search { matching: &matching, used: 0, picks: Vec::with_capacity(28) };
    if !search.day(0) {
        return Err(Error::InfeasibleMatching);
    }
    let classes = search
        .picks
        .chunks(4)
        .zip(matching.lines)
        .map(|(cube, line)| {
            let mut blocks = vec![line];
            blocks.extend_from_slice(cube);
            ParallelClass { blocks }
        })
        .collect();
    Ok(Resolution { classes, matching })
}

/// Structural checks of a resolution against its design.
pub fn validate_resolution(design: &Design, res: &Resolution) -> VerificationReport {
    let mut report = VerificationReport::new(format!("resolution of {}", design.notation()));
    report.assert("seven classes of five blocks", res.classes.len() == 7 && res.classes.iter().all(|c| c.blocks.len() == 5), || {
        format!("class sizes {:?}", res.classes.iter().map(|c| c.blocks.len()).collect::<Vec<_>>())
    });
    let all: Vec<Block> = res.classes.iter().flat_map(|c| c.blocks.iter().copied()).collect();
    report.check(
        "blocks belong to the design",
        all.iter().map(|b| (design.block_index(b).is_some(), move || format!("{b} is not a design block"))),
    );
    report.check(
        "each class partitions the points",
        res.classes.iter().enumerate().map(|(i, c)| {
            let covered = c.blocks.iter().map(|b| b.mask().count_ones()).sum::<u32>() == 15 && c.coverage() == COVERED;
            (covered, move || format!("{} does not partition the 15 points", day_name(i)))
        }),
    );
    let mut sorted = all.clone();
    sorted.sort();
    sorted.dedup();
    report.assert("all 35 blocks used exactly once", sorted.len() == 35 && all.len() == 35, || {
        format!("{} blocks, {} distinct", all.len(), sorted.len())
    });
    let mut lines: Vec<Block> = res.matching.lines.to_vec();
    lines.sort();
    lines.dedup();
    report.check(
        "matching is a bijection onto the Fano lines",
        [(lines.len() == 7 && lines.iter().all(is_fano), || "matching repeats or leaves the Fano plane".to_owned())],
    );
    report.check(
        "day point lies on its matched line",
        res.matching.iter().map(|(day, line)| {
            (line.contains(day.point()), move || format!("{day}: {} not on {line}", day.point()))
        }),
    );
    report.check(
        "matched line belongs to its day",
        res.classes.iter().enumerate().map(|(i, c)| {
            let line = res.matching.lines.get(i).copied();
            (line.is_some_and(|l| c.blocks.contains(&l)), move || format!("{} lacks its matched line", day_name(i)))
        }),
    );
    report.check(
        "one Fano line per day",
        res.classes.iter().enumerate().map(|(i, c)| {
            let n = c.fano_blocks().count();
            (n == 1, move || format!("{} holds {n} Fano lines", day_name(i)))
        }),
    );
    report
}

fn day_name(i: usize) -> String {
    NAMES.get(i).map_or_else(|| format!("class {i}"), |n| (*n).to_owned())
}

/// All parallel classes of the `(15,3,1)` design, sorted.
pub fn enumerate_spreads(design: &Design) -> Result<Vec<ParallelClass>> {
    if design.m() != 4 {
        return Err(Error::WrongSeedCount { operation: "enumerate_spreads", expected: "m = 4", m: design.m() });
    }
    fn search(blocks: &[Block], covered: u16, chosen: &mut Vec<Block>, out: &mut Vec<ParallelClass>) {
        if covered == COVERED {
            out.push(ParallelClass { blocks: chosen.clone() });
            return;
        }
        let lowest = (!covered & COVERED).trailing_zeros() as u8;
        for b in blocks {
            let mask = b.mask();
            if b.points()[0].coord() == lowest && covered & mask == 0 {
                chosen.push(*b);
                search(blocks, covered | mask, chosen, out);
                chosen.pop();
            }
        }
    }
    let mut out = Vec::new();
    search(design.blocks(), 0, &mut Vec::with_capacity(5), &mut out);
    out.sort();
    Ok(out)
}

/// Number of Fano blocks per spread → number of spreads.
pub fn fano_block_distribution(spreads: &[ParallelClass]) -> BTreeMap<usize, usize> {
    let mut out = BTreeMap::new();
    for s in spreads {
        *out.entry(s.fano_blocks().count()).or_insert(0) += 1;
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::design::RUNNING_EXAMPLE;

    fn example() -> Design {
        Design::from_q(&RUNNING_EXAMPLE).unwrap()
    }

    #[test]
    fn day_labels() {
        let names: Vec<_> = DayLabel::calendar().map(DayLabel::name).collect();
        assert_eq!(names, ["SUN", "MON", "TU", "WED", "TH", "FRI", "SAT"]);
        assert_eq!("001".parse::<DayLabel>().unwrap().name(), "MON");
        assert_eq!("sun".parse::<DayLabel>().unwrap().bits(), 7);
        assert!("000".parse::<DayLabel>().is_err());
    }

    #[test]
    fn matchings() {
        let all = DayMatching::all();
        assert_eq!(all.len(), 24);
        assert_eq!(all[0], DayMatching::lexicographic());
        assert!(all.contains(&DayMatching::table4()));
        let mut bad = *DayMatching::table4().lines();
        bad.swap(0, 1);
        assert!(DayMatching::new(bad).is_err());
        assert!(matches!(match_days(&Design::from_q(&[10, 4, 11]).unwrap()), Err(Error::NotResolvable(3))));
    }

    #[test]
    fn every_matching_resolves() {
        let d = example();
        for m in DayMatching::all() {
            let res = resolve(&d, Some(&m)).unwrap();
            let report = validate_resolution(&d, &res);
            assert!(report.passed(), "{report}");
            assert_eq!(res.matching, m);
        }
    }

    #[test]
    fn class_layout() {
        let res = resolve(&example(), None).unwrap();
        for (day, class) in res.days() {
            assert_eq!(class.blocks[0], res.matching.line(day));
            let mids: Vec<u8> = class.blocks[1..].iter().map(|b| b.points()[0].coord()).collect();
            assert!(mids.windows(2).all(|w| w[0] < w[1]));
        }
    }

    #[test]
    fn swap_mutation_is_caught() {
        let d = example();
        let mut res = resolve(&d, None).unwrap();
        let moved = res.classes[0].blocks[1];
        res.classes[0].blocks[1] = res.classes[1].blocks[1];
        res.classes[1].blocks[1] = moved;
        let report = validate_resolution(&d, &res);
        assert!(!report.get("each class partitions the points").unwrap().passed());
    }

    #[test]
    fn spreads() {
        let d = example();
        let spreads = enumerate_spreads(&d).unwrap();
        assert_eq!(spreads.len(), 56);
        assert_eq!(fano_block_distribution(&spreads), BTreeMap::from([(1, 56)]));
        let res = resolve(&d, None).unwrap();
        for class in &res.classes {
            let mut sorted = class.clone();
            sorted.blocks.sort();
            assert!(spreads.binary_search(&sorted).is_ok());
        }
        assert!(enumerate_spreads(&Design::from_q(&[10, 4, 11]).unwrap()).is_err());
    }
}
