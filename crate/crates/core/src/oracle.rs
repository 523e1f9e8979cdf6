//! Dense-matrix oracle and exhaustive verifiers.
//!
//! Matrices are built directly from single-qubit Pauli matrices with exact
//! Gaussian-rational entries; nothing here goes through the label-level
//! product except where the two paths are compared.

use std::ops::{Mul, Sub};

use num_complex::Complex;
use num_rational::Rational64;

use crate::design::{Design, Point, Seeds};
use crate::error::{Error, Result};
use crate::fixtures::commutator_table;
use crate::pauli::{commutator, commutes, product, CommutatorEntry, OIndex, PauliLabel, Phase};
use crate::report::VerificationReport;

pub const MAX_DENSE_QUBITS: u8 = 4;

type Entry = Complex<Rational64>;

fn re(n: i64) -> Entry {
    Complex::new(Rational64::from_integer(n), Rational64::from_integer(0))
}

fn im(n: i64) -> Entry {
    Complex::new(Rational64::from_integer(0), Rational64::from_integer(n))
}

/// Square matrix of exact Gaussian rationals, row-major.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DenseOp {
    dim: usize,
    entries: Vec<Entry>,
}

impl DenseOp {
    pub fn zeros(dim: usize) -> Self {
        DenseOp { dim, entries: vec![re(0); dim * dim] }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn get(&self, r: usize, c: usize) -> Entry {
        self.entries[r * self.dim + c]
    }

    pub fn scale(&self, k: Entry) -> DenseOp {
        DenseOp { dim: self.dim, entries: self.entries.iter().map(|&e| e * k).collect() }
    }

    pub fn kron(&self, other: &DenseOp) -> DenseOp {
        let dim = self.dim * other.dim;
        let mut out = DenseOp::zeros(dim);
        for r in 0..dim {
            for c in 0..dim {
                out.entries[r * dim + c] = self.get(r / other.dim, c / other.dim) * other.get(r % other.dim, c % other.dim);
            }
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|e| *e == re(0))
    }

    pub fn is_hermitian(&self) -> bool {
        (0..self.dim).all(|r| (0..self.dim).all(|c| self.get(r, c) == self.get(c, r).conj()))
    }

    pub fn trace(&self) -> Entry {
        (0..self.dim).fold(re(0), |acc, i| acc + self.get(i, i))
    }

    pub fn commutator(&self, other: &DenseOp) -> DenseOp {
        &(self * other) - &(other * self)
    }
}

impl Mul for &DenseOp {
    type Output = DenseOp;
    fn mul(self, rhs: &DenseOp) -> DenseOp {
        let n = self.dim;
        let mut out = DenseOp::zeros(n);
        for r in 0..n {
            for k in 0..n {
                let a = self.get(r, k);
                if a == re(0) {
                    continue;
                }
                for c in 0..n {
                    out.entries[r * n + c] += a * rhs.get(k, c);
                }
            }
        }
        out
    }
}

impl Sub for &DenseOp {
    type Output = DenseOp;
    fn sub(self, rhs: &DenseOp) -> DenseOp {
        DenseOp { dim: self.dim, entries: self.entries.iter().zip(&rhs.entries).map(|(a, b)| a - b).collect() }
    }
}

/// Single-qubit matrix for a two-bit code `I = 0, σz = 1, σy = 2, σx = 3`.
fn pauli_matrix(code: u64) -> DenseOp {
    let entries = match code {
        0 => [re(1), re(0), re(0), re(1)],
        1 => [re(1), re(0), re(0), re(-1)],
        2 => [re(0), im(-1), im(1), re(0)],
        _ => [re(0), re(1), re(1), re(0)],
    };
    DenseOp { dim: 2, entries: entries.to_vec() }
}

/// Kronecker product of the label's factors, first qubit leftmost, times `2^-f`
/// for `f` non-identity factors.
pub fn dense_of(label: PauliLabel) -> Result<DenseOp> {
    let n = label.qubits();
    if n > MAX_DENSE_QUBITS {
        return Err(Error::TooManyQubits { qubits: n, max: MAX_DENSE_QUBITS });
    }
    let mut op = DenseOp { dim: 1, entries: vec![re(1)] };
    let mut weight = Rational64::from_integer(1);
    for q in 0..n {
        let code = label.bits() >> (2 * (n - 1 - q)) & 3;
        if code != 0 {
            weight /= 2;
        }
        op = op.kron(&pauli_matrix(code));
    }
    Ok(op.scale(Complex::new(weight, Rational64::from_integer(0))))
}

/// Weight of a label recomputed from its matrix: `|entry|` of any nonzero entry.
fn dense_weight(op: &DenseOp) -> Rational64 {
    let e = op.entries.iter().find(|e| **e != re(0)).expect("Pauli matrices have nonzero entries");
    if e.re != Rational64::from_integer(0) {
        e.re.abs_value()
    } else {
        e.im.abs_value()
    }
}

trait AbsValue {
    fn abs_value(self) -> Self;
}

impl AbsValue for Rational64 {
    fn abs_value(self) -> Self {
        if self < Rational64::from_integer(0) {
            -self
        } else {
            self
        }
    }
}

pub type ProductFn = dyn Fn(PauliLabel, PauliLabel) -> Result<(PauliLabel, Phase)>;

/// Label algebra against the dense oracle for every ordered pair of `n`-qubit labels.
pub fn verify_algebra(n: u8) -> Result<VerificationReport> {
    verify_algebra_with(n, &product)
}

/// `verify_algebra` with a substitute label-level product, for mutation testing.
pub fn verify_algebra_with(n: u8, product_fn: &ProductFn) -> Result<VerificationReport> {
    if n == 0 || n > 3 {
        return Err(Error::TooManyQubits { qubits: n, max: 3 });
    }
    let labels: Vec<PauliLabel> = PauliLabel::all(n)?.collect();
    let dense: Vec<DenseOp> = labels.iter().map(|&l| dense_of(l)).collect::<Result<_>>()?;
    let index = |l: PauliLabel| l.bits() as usize;
    let mut report = VerificationReport::new(format!("{n}-qubit label algebra"));

    let mut products = Vec::new();
    let mut commutation = Vec::new();
    for (i, &a) in labels.iter().enumerate() {
        for (j, &b) in labels.iter().enumerate() {
            let ab = &dense[i] * &dense[j];
            let ok = product_fn(a, b).is_ok_and(|(c, phase)| {
                let dc = &dense[index(c)];
                let scale = dense_weight(&dense[i]) * dense_weight(&dense[j]) / dense_weight(dc);
                ab == dc.scale(phase.to_complex() * Complex::new(scale, Rational64::from_integer(0)))
            });
            products.push((ok, move || {
                let claimed = product_fn(a, b).map_or_else(|e| e.to_string(), |(c, p)| format!("{p}·{c}"));
                format!("{a}·{b}: label algebra gives {claimed}")
            }));
            let dense_commute = (&ab - &(&dense[j] * &dense[i])).is_zero();
            let ok = commutes(a, b).is_ok_and(|c| c == dense_commute);
            commutation.push((ok, move || format!("{a},{b}: dense commute = {dense_commute}")));
        }
    }
    report.check("products match dense products", products);
    report.check("commutation matches dense commutators", commutation);
    report.check(
        "normalized operators are Hermitian",
        dense.iter().zip(&labels).map(|(d, &l)| (d.is_hermitian(), move || format!("{l} is not Hermitian"))),
    );
    report.check(
        "non-identity operators are traceless",
        dense.iter().zip(&labels).skip(1).map(|(d, &l)| {
            let t = d.trace();
            (t == re(0), move || format!("tr {l} = {t}"))
        }),
    );

    if n == 2 {
        verify_commutator_table(&mut report, &dense)?;
    }
    Ok(report)
}

fn verify_commutator_table(report: &mut VerificationReport, dense: &[DenseOp]) -> Result<()> {
    let fixture = commutator_table()?;
    let ops: Vec<OIndex> = OIndex::nonidentity().collect();
    let of = |o: OIndex| &dense[o.label().bits() as usize];
    let mut generated = vec![vec![CommutatorEntry::zero(); 15]; 15];
    let mut dense_cases = Vec::new();
    for (r, &i) in ops.iter().enumerate() {
        for (c, &j) in ops.iter().enumerate() {
            let entry = commutator(i, j)?;
            generated[r][c] = entry;
            let lhs = of(i).commutator(of(j));
            let ok = match entry.result {
                None => lhs.is_zero(),
                Some(k) => lhs == of(k).scale(entry.coefficient.0),
            };
            dense_cases.push((ok, move || format!("[{i},{j}] = {entry} disagrees with the matrices")));
        }
    }
    report.check("commutator table matches dense commutators", dense_cases);
    report.check(
        "commutator table matches fixture",
        ops.iter().enumerate().flat_map(|(r, &i)| {
            let (generated, fixture) = (&generated, &fixture);
            ops.iter().enumerate().map(move |(c, &j)| {
                let (ours, printed) = (generated[r][c], fixture[r][c]);
                (ours == printed, move || format!("[{i},{j}]: generated {ours}, fixture {printed}"))
            })
        }),
    );
    report.check(
        "seven zeros per row",
        ops.iter().enumerate().map(|(r, &i)| {
            let zeros = generated[r].iter().filter(|e| e.is_zero()).count();
            (zeros == 7, move || format!("row {i} has {zeros} zeros"))
        }),
    );
    Ok(())
}

/// Symplectic form computed factor by factor: two factors anticommute iff both
/// are non-identity and different.
fn anticommute(a: PauliLabel, b: PauliLabel) -> bool {
    let clashes = (0..a.qubits())
        .filter(|&q| {
            let shift = 2 * (a.qubits() - 1 - q);
            let (x, y) = (a.bits() >> shift & 3, b.bits() >> shift & 3);
            x != 0 && y != 0 && x != y
        })
        .count();
    clashes % 2 == 1
}

/// Combinatorial and algebraic checks of a design.
pub fn verify_design(design: &Design) -> VerificationReport {
    let mut report = VerificationReport::new(format!("design {}", design.notation()));
    let m = design.m();
    let v = (1usize << m) - 1;
    let points: Vec<Point> = design.points().collect();
    let blocks = design.blocks();

    report.assert("point count v = 2^m - 1", points.len() == v, || format!("{} points", points.len()));
    let b = v * (v - 1) / 6;
    report.assert("block count b = v(v-1)/6", blocks.len() == b, || format!("{} blocks, expected {b}", blocks.len()));

    let mut pair_hits = vec![0usize; 1 << (2 * m)];
    let key = |a: Point, b: Point| (a.coord() as usize) << m | b.coord() as usize;
    let mut point_hits = vec![0usize; v + 1];
    for block in blocks {
        let [x, y, z] = block.points();
        for (a, b) in [(x, y), (x, z), (y, z)] {
            pair_hits[key(a, b)] += 1;
        }
        for p in [x, y, z] {
            point_hits[p.coord() as usize] += 1;
        }
    }
    let mut pairs = Vec::new();
    for (i, &a) in points.iter().enumerate() {
        for &b in &points[i + 1..] {
            let hits = pair_hits[key(a, b)];
            pairs.push((hits == 1, move || format!("pair {a}{b} covered {hits} times")));
        }
    }
    report.check("every pair in exactly one block", pairs);
    let r = (v - 1) / 2;
    report.check(
        "every point in r blocks",
        points.iter().map(|&p| {
            let hits = point_hits[p.coord() as usize];
            (hits == r, move || format!("{p} lies in {hits} blocks, expected {r}"))
        }),
    );

    let ops: Vec<PauliLabel> = points.iter().map(|&p| design.operator_at(p)).collect();
    report.check(
        "operators are distinct and non-identity",
        ops.iter().enumerate().map(|(i, op)| {
            let ok = !op.is_identity() && !ops[..i].contains(op);
            let p = points[i];
            (ok, move || format!("{p} carries repeated or identity {op}"))
        }),
    );
    let mut linear = Vec::new();
    for (i, &a) in points.iter().enumerate() {
        for &b in &points[i + 1..] {
            let sum = a.xor(b);
            let ok = sum == 0
                || ops[sum as usize - 1].bits() == design.operator_at(a).bits() ^ design.operator_at(b).bits();
            linear.push((ok, move || format!("op{a}·op{b} is not proportional to op({sum:0m$b})")));
        }
    }
    report.check("assignment is linear", linear);

    let mut commuting = 0;
    let mut kinds = Vec::new();
    for (block, kind) in blocks.iter().zip(design.kinds()) {
        let [x, y, z] = block.points().map(|p| design.operator_at(p));
        let pattern = [anticommute(x, y), anticommute(y, z), anticommute(x, z)];
        let oracle_commuting = pattern == [false; 3];
        let consistent = oracle_commuting || pattern == [true; 3];
        commuting += oracle_commuting as usize;
        let agrees = consistent && oracle_commuting == (*kind == crate::design::BlockKind::Commuting);
        let block = *block;
        let kind = *kind;
        kinds.push((agrees, move || format!("{block}: classified {kind}, pattern {pattern:?}")));
    }
    report.check("block kinds match the symplectic form", kinds);
    let expected = match m {
        3 => Some((3, 4)),
        4 => Some((15, 20)),
        _ => None,
    };
    if let Some((c, y)) = expected {
        let counts = (commuting, blocks.len() - commuting);
        report.assert("commuting/cyclic counts", counts == (c, y), || format!("{counts:?}, expected ({c}, {y})"));
    }
    report
}

/// GF(2) rank by elimination.
fn rank(labels: &[u64]) -> usize {
    let mut rows = labels.to_vec();
    let mut rank = 0;
    for bit in (0..64).rev() {
        if let Some(pivot) = (rank..rows.len()).find(|&i| rows[i] >> bit & 1 == 1) {
            rows.swap(rank, pivot);
            for i in 0..rows.len() {
                if i != rank && rows[i] >> bit & 1 == 1 {
                    rows[i] ^= rows[rank];
                }
            }
            rank += 1;
        }
    }
    rank
}

/// Every ordered, GF(2)-independent `m`-tuple over the 15 two-qubit operators, as `Q` indices.
pub fn valid_seed_tuples(m: usize) -> Result<Vec<Vec<u32>>> {
    if !(1..=4).contains(&m) {
        return Err(Error::UnsupportedSeedCount(m));
    }
    let mut out = Vec::new();
    let mut tuple = vec![1u32; m];
    loop {
        let bits: Vec<u64> = tuple.iter().map(|&q| q as u64).collect();
        if rank(&bits) == m {
            out.push(tuple.clone());
        }
        let mut k = m;
        loop {
            if k == 0 {
                return Ok(out);
            }
            k -= 1;
            if tuple[k] < 15 {
                tuple[k] += 1;
                break;
            }
            tuple[k] = 1;
        }
    }
}

pub fn count_valid_seeds(m: usize) -> Result<usize> {
    Ok(valid_seed_tuples(m)?.len())
}

/// `verify_design` over every valid seed tuple of size `m`.
pub fn verify_all_seeds(m: usize) -> Result<VerificationReport> {
    let tuples = valid_seed_tuples(m)?;
    let mut report = VerificationReport::new(format!("all {} seed tuples for m = {m}", tuples.len()));
    let results: Vec<(bool, Vec<u32>, String)> = tuples
        .into_iter()
        .map(|t| match Seeds::from_q(&t) {
            Ok(seeds) => {
                let r = verify_design(&crate::design::expand_seeds(&seeds));
                let passed = r.passed();
                let why = r.failures().map(|c| c.name.clone()).collect::<Vec<_>>().join(", ");
                (passed, t, why)
            }
            Err(e) => (false, t, e.to_string()),
        })
        .collect();
    report.check(
        "every generated design verifies",
        results.into_iter().map(|(ok, t, why)| (ok, move || format!("seeds {t:?}: {why}"))),
    );
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::design::{Block, RUNNING_EXAMPLE};

    fn q(n: u32) -> PauliLabel {
        PauliLabel::q(n).unwrap()
    }

    fn half(n: i64) -> Entry {
        Complex::new(Rational64::new(n, 2), Rational64::from_integer(0))
    }

    #[test]
    fn dense_examples() {
        let d = dense_of(q(4)).unwrap();
        for i in 0..4 {
            for j in 0..4 {
                let want = if i != j { re(0) } else if i < 2 { half(1) } else { half(-1) };
                assert_eq!(d.get(i, j), want);
            }
        }
        assert_eq!(dense_of(PauliLabel::identity(2).unwrap()).unwrap(), dense_of(PauliLabel::identity(1).unwrap()).unwrap().kron(&dense_of(PauliLabel::identity(1).unwrap()).unwrap()));
        let d = dense_of(q(15)).unwrap();
        let quarter = Complex::new(Rational64::new(1, 4), Rational64::from_integer(0));
        for i in 0..4 {
            for j in 0..4 {
                assert_eq!(d.get(i, j), if i + j == 3 { quarter } else { re(0) });
            }
        }
        assert!(dense_of(PauliLabel::identity(5).unwrap()).is_err());
    }

    #[test]
    fn two_qubit_algebra_verifies() {
        let r = verify_algebra(2).unwrap();
        assert!(r.passed(), "{r}");
        assert_eq!(r.get("products match dense products").unwrap().checked, 256);
        assert_eq!(r.get("commutator table matches dense commutators").unwrap().checked, 225);
        assert_eq!(r.get("commutator table matches fixture").unwrap().checked, 225);
        assert!(verify_algebra(1).unwrap().passed());
    }

    #[test]
    fn mutated_phase_is_named() {
        let broken = |a: PauliLabel, b: PauliLabel| {
            let (c, p) = product(a, b)?;
            Ok(if a.bits() == 12 && b.bits() == 10 { (c, -p) } else { (c, p) })
        };
        let r = verify_algebra_with(2, &broken).unwrap();
        let check = r.get("products match dense products").unwrap();
        assert_eq!(check.failures, 1);
        assert!(check.counterexamples[0].starts_with("[1100]·[1010]"), "{}", check.counterexamples[0]);
    }

    #[test]
    fn deleted_block_breaks_coverage() {
        let d = Design::from_q(&RUNNING_EXAMPLE).unwrap();
        assert!(verify_design(&d).passed());
        let ops: Vec<PauliLabel> = d.points().map(|p| d.operator_at(p)).collect();
        let blocks: Vec<Block> = d.blocks()[1..].to_vec();
        let broken = Design::from_parts(4, d.seeds().to_vec(), ops, blocks).unwrap();
        let r = verify_design(&broken);
        let pairs = r.get("every pair in exactly one block").unwrap();
        assert_eq!(pairs.failures, 3);
        assert!(pairs.counterexamples.iter().all(|c| c.ends_with("covered 0 times")));
    }

    #[test]
    fn seed_counts() {
        assert_eq!(count_valid_seeds(1).unwrap(), 15);
        assert_eq!(count_valid_seeds(2).unwrap(), 210);
        assert_eq!(count_valid_seeds(3).unwrap(), 2520);
        assert!(count_valid_seeds(5).is_err());
        let fano = Design::from_q(&[10, 4, 11]).unwrap();
        let plane: Vec<u32> = fano.points().map(|p| fano.operator_at(p).q_index() as u32).collect();
        let inside = valid_seed_tuples(3).unwrap().into_iter().filter(|t| t.iter().all(|q| plane.contains(q))).count();
        assert_eq!(inside, 168);
    }

    #[test]
    fn rank_agrees_with_seed_validation() {
        for t in valid_seed_tuples(2).unwrap() {
            assert!(Seeds::from_q(&t).is_ok());
        }
        assert!(verify_all_seeds(3).unwrap().passed());
    }
}
