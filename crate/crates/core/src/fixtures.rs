//! Embedded reference tables: the commutator grid, the point mapping of the
//! running example, and its printed week of five rows per day.

use crate::color::{operator_of, ColorLabel};
use crate::design::{Block, Design, Point};
use crate::dictionary::lookup_label;
use crate::error::{Error, Result};
use crate::pauli::{Coefficient, CommutatorEntry, OIndex, PauliLabel};
use crate::report::VerificationReport;
use crate::resolve::{DayLabel, DayMatching, ParallelClass, Resolution};

pub const COMMUTATORS: &str = include_str!("../data/commutators.txt");
pub const POINT_MAPPING: &str = include_str!("../data/point_mapping.txt");
pub const KIRKMAN_DAYS: &str = include_str!("../data/kirkman_days.txt");

fn data_lines(text: &str) -> impl Iterator<Item = &str> {
    text.lines().map(str::trim).filter(|l| !l.is_empty() && !l.starts_with('#'))
}

/// `iO6`, `-i/4O9` or `0`.
pub fn parse_commutator_cell(cell: &str) -> Result<CommutatorEntry> {
    if cell == "0" {
        return Ok(CommutatorEntry::zero());
    }
    let (coeff, index) = cell.rsplit_once('O').ok_or_else(|| Error::Fixture(format!("cell `{cell}`")))?;
    let coefficient: Coefficient = coeff.parse()?;
    let index: u32 = index.parse().map_err(|_| Error::Fixture(format!("cell `{cell}`")))?;
    Ok(CommutatorEntry { coefficient, result: Some(OIndex::new(index)?) })
}

/// Rows and columns both run over `O_2 … O_16`.
pub fn commutator_table() -> Result<Vec<Vec<CommutatorEntry>>> {
    let mut rows = Vec::with_capacity(15);
    for (k, line) in data_lines(COMMUTATORS).enumerate() {
        let (head, cells) = line.split_once(':').ok_or_else(|| Error::Fixture(format!("row `{line}`")))?;
        let o: OIndex = head.trim().parse()?;
        if o.get() as usize != k + 2 {
            return Err(Error::Fixture(format!("row {} out of order", o)));
        }
        let row = cells.split_whitespace().map(parse_commutator_cell).collect::<Result<Vec<_>>>()?;
        if row.len() != 15 {
            return Err(Error::Fixture(format!("row {o} has {} cells", row.len())));
        }
        rows.push(row);
    }
    if rows.len() != 15 {
        return Err(Error::Fixture(format!("{} commutator rows", rows.len())));
    }
    Ok(rows)
}

/// One printed row of the point mapping; color and note stay verbatim.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PointRow {
    pub coord: String,
    pub o: u32,
    pub q: u32,
    pub color: String,
    pub note: String,
}

impl PointRow {
    pub fn is_null(&self) -> bool {
        self.coord.bytes().all(|b| b == b'0')
    }
}

pub fn point_mapping() -> Result<Vec<PointRow>> {
    data_lines(POINT_MAPPING)
        .map(|line| {
            let cols: Vec<&str> = line.split('|').map(str::trim).collect();
            let [coord, o, q, color, note] = cols[..] else {
                return Err(Error::Fixture(format!("mapping row `{line}`")));
            };
            let number = |s: &str| s.parse::<u32>().map_err(|_| Error::Fixture(format!("number `{s}` in `{line}`")));
            Ok(PointRow { coord: coord.into(), o: number(o)?, q: number(q)?, color: color.into(), note: note.into() })
        })
        .collect()
}

/// Compares a generated four-seed design column by column against the printed mapping.
pub fn compare_point_mapping(design: &Design) -> Result<VerificationReport> {
    let rows = point_mapping()?;
    let mut report = VerificationReport::new(format!("point mapping of {}", design.notation()));
    let (null, rows): (Vec<&PointRow>, Vec<&PointRow>) = rows.iter().partition(|r| r.is_null());
    report.assert("null ket carries O_1 = Q_0", null.len() == 1 && null[0].o == 1 && null[0].q == 0, || {
        format!("{} null rows", null.len())
    });
    report.assert("fifteen points", rows.len() == 15, || format!("{} rows", rows.len()));

    let mut generated = Vec::new();
    for row in &rows {
        let point: Point = row.coord.parse::<Point>()?.widen(design.m())?;
        let op = design.operator_at(point);
        lookup_label(op)?;
        generated.push((row, op));
    }
    let column = |report: &mut VerificationReport, name: &str, f: &dyn Fn(&PointRow, PauliLabel) -> (String, String)| {
        let cases: Vec<_> = generated
            .iter()
            .map(|(row, op)| {
                let (printed, ours) = f(row, *op);
                let label = format!("({}) {name}: printed {printed}, generated {ours}", row.coord);
                (printed == ours, move || label)
            })
            .collect();
        report.check(format!("{name} column"), cases);
    };
    column(&mut report, "Q", &|row, op| (row.q.to_string(), op.q_index().to_string()));
    column(&mut report, "O", &|row, op| (row.o.to_string(), OIndex::of(op).map_or("?".into(), |o| o.get().to_string())));
    column(&mut report, "color", &|row, op| {
        let printed = row.color.parse::<ColorLabel>().map_or(row.color.clone(), |c| c.to_string());
        (printed, lookup_label(op).map_or("?".into(), |e| e.color.to_string()))
    });
    column(&mut report, "note", &|row, op| {
        let printed = row.note.parse::<crate::audio::NoteLabel>().map_or(row.note.clone(), |n| n.to_string());
        (printed, lookup_label(op).map_or("?".into(), |e| e.note.to_string()))
    });
    Ok(report)
}

/// One printed day: its label and five rows of three color tokens (primes kept).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PrintedDay {
    pub day: DayLabel,
    pub rows: Vec<[String; 3]>,
}

impl PrintedDay {
    pub fn colors(&self) -> Result<Vec<[ColorLabel; 3]>> {
        self.rows
            .iter()
            .map(|row| {
                let mut out = [ColorLabel::new(crate::color::Chroma::B, 0)?; 3];
                for (slot, token) in out.iter_mut().zip(row) {
                    *slot = strip_primes(token).parse()?;
                }
                Ok(out)
            })
            .collect()
    }
}

/// Primes mark repeated drawing positions of one operator.
pub fn strip_primes(token: &str) -> String {
    token.chars().filter(|&c| c != '\'' && c != '′').collect()
}

/// Days in printed column order.
pub fn printed_week() -> Result<Vec<PrintedDay>> {
    let mut lines = data_lines(KIRKMAN_DAYS);
    let header = |line: Option<&str>, key: &str| -> Result<Vec<String>> {
        let line = line.ok_or_else(|| Error::Fixture(format!("missing `{key}` header")))?;
        let rest = line.strip_prefix(key).ok_or_else(|| Error::Fixture(format!("expected `{key}` header")))?;
        Ok(rest.split_whitespace().map(String::from).collect())
    };
    let names = header(lines.next(), "days")?;
    let labels = header(lines.next(), "labels")?;
    if names.len() != 7 || labels.len() != 7 {
        return Err(Error::Fixture("week header needs seven days".into()));
    }
    let mut days = Vec::with_capacity(7);
    for (name, bits) in names.iter().zip(&labels) {
        let day: DayLabel = bits.parse()?;
        if day.name() != name {
            return Err(Error::Fixture(format!("column {name} is labelled ({bits}) = {}", day.name())));
        }
        days.push(PrintedDay { day, rows: Vec::new() });
    }
    for line in lines {
        let tokens: Vec<&str> = line.split_whitespace().collect();
        if tokens.len() != 21 {
            return Err(Error::Fixture(format!("week row has {} tokens", tokens.len())));
        }
        for (day, chunk) in days.iter_mut().zip(tokens.chunks(3)) {
            day.rows.push([chunk[0].into(), chunk[1].into(), chunk[2].into()]);
        }
    }
    Ok(days)
}

/// Decodes the printed week through the color dictionary into a resolution of `design`.
/// The first row of each day is taken as its matched Fano line.
pub fn decode_printed_week(design: &Design) -> Result<Resolution> {
    let week = printed_week()?;
    let mut classes: Vec<Option<ParallelClass>> = vec![None; 7];
    let mut lines = [None; 7];
    for printed in &week {
        let mut blocks = Vec::new();
        for (r, row) in printed.colors()?.iter().enumerate() {
            let mut points = Vec::with_capacity(3);
            for c in row {
                let op = operator_of(*c)?;
                let p = design
                    .point_of(op)
                    .ok_or_else(|| Error::Fixture(format!("{} row {}: {c} is not in the design", printed.day, r + 1)))?;
                points.push(p);
            }
            let block = Block::new(points[0], points[1], points[2])
                .map_err(|e| Error::Fixture(format!("{} row {}: {e}", printed.day, r + 1)))?;
            blocks.push(block);
        }
        lines[printed.day.index()] = blocks.first().copied();
        classes[printed.day.index()] = Some(ParallelClass { blocks });
    }
    let lines: Vec<Block> =
        lines.into_iter().collect::<Option<Vec<_>>>().ok_or_else(|| Error::Fixture("a day has no rows".into()))?;
    let matching = DayMatching::new(lines.try_into().expect("seven days"))?;
    let classes = classes.into_iter().map(|c| c.expect("every day decoded")).collect();
    Ok(Resolution { classes, matching })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::design::RUNNING_EXAMPLE;
    use crate::resolve::validate_resolution;

    #[test]
    fn commutator_fixture_shape() {
        let t = commutator_table().unwrap();
        assert_eq!(t.len(), 15);
        assert_eq!(t[0][3].to_string(), "iO_6");
        assert_eq!(parse_commutator_cell("-i/4O9").unwrap().to_string(), "(-i/4)O_9");
        assert!(parse_commutator_cell("iX").is_err());
    }

    #[test]
    fn printed_week_decodes() {
        let d = Design::from_q(&RUNNING_EXAMPLE).unwrap();
        let res = decode_printed_week(&d).unwrap();
        assert_eq!(res.matching, DayMatching::table4());
        let report = validate_resolution(&d, &res);
        assert!(report.passed(), "{report}");
    }

    #[test]
    fn mapping_rows() {
        let rows = point_mapping().unwrap();
        assert_eq!(rows.len(), 16);
        assert!(rows[0].is_null());
        assert_eq!(strip_primes("R'''0"), "R0");
    }
}
