//! Chord sequences: one chord per block, in day order when a week is available.

use std::fmt;

use crate::audio::notes::{note_of, NoteLabel};
use crate::design::{Block, Design};
use crate::error::{Error, Result};
use crate::resolve::{DayLabel, DayMatching, Resolution};

/// Notes sounding together in one time slot.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Chord {
    pub notes: Vec<NoteLabel>,
}

impl fmt::Display for Chord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names: Vec<String> = self.notes.iter().map(NoteLabel::to_string).collect();
        write!(f, "{{{}}}", names.join(" "))
    }
}

#[derive(Clone, Copy, Debug)]
pub enum ChordOrder<'a> {
    /// The design's own block order.
    Blocks,
    /// Fano lines in calendar order SUN, MON, …, SAT.
    Days(&'a DayMatching),
    /// Every row of the week, SUN rows first.
    Resolution(&'a Resolution),
}

pub fn chord_of(design: &Design, block: &Block) -> Result<Chord> {
    let notes = design
        .display_order(block)?
        .iter()
        .map(|&p| note_of(design.operator_at(p)))
        .collect::<Result<Vec<_>>>()?;
    Ok(Chord { notes })
}

/// Fano lines of `matching` in calendar order, as blocks of a width-`m` design.
fn day_lines(matching: &DayMatching, m: usize) -> Result<Vec<Block>> {
    DayLabel::calendar().map(|d| matching.line(d).map_points(|p| p.narrow(m))).collect()
}

pub fn chord_sequence(design: &Design, order: ChordOrder<'_>) -> Result<Vec<Chord>> {
    let blocks: Vec<Block> = match (design.m(), order) {
        (4, ChordOrder::Resolution(res)) => {
            DayLabel::calendar().flat_map(|d| res.class(d).blocks.iter().copied()).collect()
        }
        (4, _) => return Err(Error::MissingResolution),
        (3, ChordOrder::Days(matching)) => day_lines(matching, 3)?,
        (3, ChordOrder::Resolution(res)) => day_lines(&res.matching, 3)?,
        (_, ChordOrder::Blocks) => design.blocks().to_vec(),
        (m, _) => return Err(Error::IncompatibleLayout { layout: "day order", m }),
    };
    blocks.iter().map(|b| chord_of(design, b)).collect()
}
