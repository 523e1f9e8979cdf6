//! Plain-text tables: the dictionary, the commutator grid and the week grid.

use std::fmt::Write as _;

use crate::color::color_of;
use crate::design::Design;
use crate::dictionary::entries;
use crate::error::{Error, Result};
use crate::pauli::{commutator, OIndex};
use crate::resolve::{DayLabel, Resolution};

/// `Q_12 | [1100] | O_5 | σx/2 | G_2 | D♯ | -1/2 γ5`, one row per operator.
pub fn dictionary_table() -> String {
    let mut out = String::from("Q    | label  | O    | tensor  | color | note | gamma\n");
    for e in entries() {
        writeln!(
            out,
            "{:<4} | {} | {:<4} | {:<7} | {:<5} | {:<4} | {}",
            format!("Q_{}", e.q),
            e.label(),
            e.o.to_string(),
            e.tensor,
            e.color.to_string(),
            e.note.to_string(),
            e.gamma
        )
        .unwrap();
    }
    out
}

/// `[O_i, O_j]` for `i, j = 2..16`, rows by `i`.
pub fn commutator_grid() -> Result<String> {
    let ops: Vec<OIndex> = OIndex::nonidentity().collect();
    let width = 10;
    let mut out = format!("{:<5}", "O_X");
    for j in &ops {
        write!(out, "{:>width$}", j.to_string()).unwrap();
    }
    out.push('\n');
    for &i in &ops {
        write!(out, "{:<5}", i.to_string()).unwrap();
        for &j in &ops {
            write!(out, "{:>width$}", commutator(i, j)?.to_string()).unwrap();
        }
        out.push('\n');
    }
    Ok(out)
}

/// Seven day columns (SUN first) of five rows, each row in display order.
pub fn resolution_grid(design: &Design, res: &Resolution) -> Result<String> {
    if design.m() != 4 {
        return Err(Error::NotResolvable(design.m()));
    }
    let cell_width = 14;
    let mut cells: Vec<Vec<String>> = Vec::with_capacity(7);
    for day in DayLabel::calendar() {
        let mut rows = Vec::with_capacity(5);
        for block in &res.class(day).blocks {
            let names: Vec<String> = design
                .display_order(block)?
                .iter()
                .map(|&p| {
                    let op = design.operator_at(p);
                    color_of(op).map_or_else(|_| format!("Q{}", op.q_index()), |c| c.to_string().replace('_', ""))
                })
                .collect();
            rows.push(names.join(" "));
        }
        cells.push(rows);
    }
    let mut out = String::new();
    for day in DayLabel::calendar() {
        write!(out, "{:<cell_width$}", day.name()).unwrap();
    }
    out = out.trim_end().to_owned() + "\n";
    let mut labels = String::new();
    for day in DayLabel::calendar() {
        write!(labels, "{:<cell_width$}", format!("({})", day.bit_string())).unwrap();
    }
    out += labels.trim_end();
    out.push('\n');
    let rows = cells.iter().map(Vec::len).max().unwrap_or(0);
    for r in 0..rows {
        let mut line = String::new();
        for col in &cells {
            write!(line, "{:<cell_width$}", col.get(r).map_or("", String::as_str)).unwrap();
        }
        out += line.trim_end();
        out.push('\n');
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::design::RUNNING_EXAMPLE;
    use crate::fixtures::decode_printed_week;
    use crate::resolve::resolve;

    #[test]
    fn dictionary_rows() {
        let t = dictionary_table();
        assert_eq!(t.lines().count(), 16);
        assert!(t.lines().any(|l| l.split('|').map(str::trim).collect::<Vec<_>>()
            == ["Q_12", "[1100]", "O_5", "σx/2", "G_2", "D♯", "-1/2 γ5"]));
    }

    #[test]
    fn commutator_rows() {
        let g = commutator_grid().unwrap();
        assert_eq!(g.lines().count(), 16);
        let row = g.lines().find(|l| l.starts_with("O_4 ")).unwrap();
        assert!(row.contains("(i/4)O_6"));
    }

    #[test]
    fn week_grid() {
        let d = Design::from_q(&RUNNING_EXAMPLE).unwrap();
        let g = resolution_grid(&d, &resolve(&d, None).unwrap()).unwrap();
        assert_eq!(g.lines().count(), 7);
        assert!(g.starts_with("SUN"));
        let printed = resolution_grid(&d, &decode_printed_week(&d).unwrap()).unwrap();
        let first = printed.lines().nth(2).unwrap();
        assert!(first.starts_with("R0 B0 G0      R0 B1 B2"), "{first}");
    }
}
