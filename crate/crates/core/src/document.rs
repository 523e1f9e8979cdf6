//! JSON document form of a design, optionally with its resolution.

use serde::{Deserialize, Serialize};

use crate::audio::NoteLabel;
use crate::color::ColorLabel;
use crate::design::{Block, BlockKind, Design, Point};
use crate::dictionary::lookup_label;
use crate::error::{Error, Result};
use crate::oracle::verify_design;
use crate::pauli::{OIndex, PauliLabel};
use crate::report::VerificationReport;
use crate::resolve::{validate_resolution, DayLabel, DayMatching, ParallelClass, Resolution};

fn two() -> u8 {
    2
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PointRecord {
    pub coord: String,
    pub q: u64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub o: Option<u8>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub color: Option<ColorLabel>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub note: Option<NoteLabel>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DayRecord {
    pub label: String,
    pub name: String,
    /// Indices into the document's `blocks`, matched Fano line first.
    pub blocks: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ResolutionRecord {
    pub days: Vec<DayRecord>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DesignDocument {
    pub m: usize,
    /// Qubits per operator; labels of other widths are written as raw `Q` indices.
    #[serde(default = "two")]
    pub qubits: u8,
    pub seeds: Vec<u64>,
    pub points: Vec<PointRecord>,
    pub blocks: Vec<[String; 3]>,
    pub kinds: Vec<BlockKind>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub resolution: Option<ResolutionRecord>,
}

impl DesignDocument {
    pub fn from_design(design: &Design, res: Option<&Resolution>) -> Result<Self> {
        let points = design
            .points()
            .map(|p| {
                let op = design.operator_at(p);
                let entry = lookup_label(op).ok();
                PointRecord {
                    coord: p.bit_string(),
                    q: op.q_index(),
                    o: entry.map(|e| e.o.get()),
                    color: entry.map(|e| e.color),
                    note: entry.map(|e| e.note),
                }
            })
            .collect();
        let blocks = design.blocks().iter().map(|b| b.points().map(Point::bit_string)).collect();
        let resolution = match res {
            None => None,
            Some(res) => {
                let mut days = Vec::with_capacity(7);
                for day in DayLabel::calendar() {
                    let blocks = res
                        .class(day)
                        .blocks
                        .iter()
                        .map(|b| design.block_index(b).ok_or(Error::ForeignBlock(*b)))
                        .collect::<Result<_>>()?;
                    days.push(DayRecord { label: day.bit_string(), name: day.name().into(), blocks });
                }
                Some(ResolutionRecord { days })
            }
        };
        Ok(DesignDocument {
            m: design.m(),
            qubits: design.qubits(),
            seeds: design.seeds().iter().map(|s| s.q_index()).collect(),
            points,
            blocks,
            kinds: design.kinds().to_vec(),
            resolution,
        })
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("documents serialize") + "\n"
    }

    pub fn from_json(text: &str) -> Result<Self> {
        Ok(serde_json::from_str(text)?)
    }

    fn label(&self, q: u64) -> Result<PauliLabel> {
        PauliLabel::new(q, self.qubits)
    }

    /// Rebuilds the design and resolution; structural problems are errors,
    /// combinatorial ones are left for `check`.
    pub fn to_design(&self) -> Result<(Design, Option<Resolution>)> {
        let m = self.m;
        let seeds = self.seeds.iter().map(|&q| self.label(q)).collect::<Result<Vec<_>>>()?;
        let v = (1usize << m.min(8)) - 1;
        if self.points.len() != v {
            return Err(Error::Document(format!("{} points for m = {m}", self.points.len())));
        }
        let mut assignment = Vec::with_capacity(v);
        for (i, rec) in self.points.iter().enumerate() {
            let p: Point = rec.coord.parse()?;
            if p.m() != m || p.coord() as usize != i + 1 {
                return Err(Error::Document(format!("point {} out of order (position {})", rec.coord, i + 1)));
            }
            assignment.push(self.label(rec.q)?);
        }
        let blocks = self
            .blocks
            .iter()
            .map(|[a, b, c]| Block::new(a.parse()?, b.parse()?, c.parse()?))
            .collect::<Result<Vec<_>>>()?;
        let design = Design::from_parts(m, seeds, assignment, blocks)?;
        let resolution = match &self.resolution {
            None => None,
            Some(record) => Some(self.resolution_of(&design, record)?),
        };
        Ok((design, resolution))
    }

    fn resolution_of(&self, design: &Design, record: &ResolutionRecord) -> Result<Resolution> {
        let mut classes: Vec<Option<ParallelClass>> = vec![None; 7];
        for day in &record.days {
            let label: DayLabel = day.label.parse()?;
            if label.name() != day.name {
                return Err(Error::Document(format!("day ({}) is {}, not {}", day.label, label.name(), day.name)));
            }
            let blocks = day
                .blocks
                .iter()
                .map(|&i| design.blocks().get(i).copied().ok_or_else(|| Error::Document(format!("block index {i}"))))
                .collect::<Result<Vec<_>>>()?;
            if blocks.is_empty() {
                return Err(Error::Document(format!("{} has no blocks", day.name)));
            }
            if classes[label.index()].replace(ParallelClass { blocks }).is_some() {
                return Err(Error::Document(format!("{} listed twice", day.name)));
            }
        }
        let classes: Vec<ParallelClass> =
            classes.into_iter().collect::<Option<_>>().ok_or_else(|| Error::Document("resolution needs all seven days".into()))?;
        let lines: [Block; 7] = std::array::from_fn(|i| classes[i].blocks[0]);
        let matching = DayMatching::new(lines)?;
        Ok(Resolution { classes, matching })
    }

    /// Full consistency report: design validity, recorded kinds, dictionary
    /// columns, seeds at unit points, and the resolution if present.
    pub fn check(&self) -> Result<VerificationReport> {
        let (design, res) = self.to_design()?;
        let mut report = verify_design(&design);
        report.subject = format!("document for {}", design.notation());
        report.check(
            "seeds sit at unit points",
            design.seeds().iter().enumerate().map(|(t, &s)| {
                let at = Point::unit(t, design.m()).map(|p| design.operator_at(p));
                (at.as_ref().is_ok_and(|&op| op == s), move || format!("seed {t} ({s}) is not at its unit point"))
            }),
        );
        report.assert("recorded kinds cover every block", self.kinds.len() == design.blocks().len(), || {
            format!("{} kinds for {} blocks", self.kinds.len(), design.blocks().len())
        });
        report.check(
            "recorded kinds match commutation",
            self.kinds.iter().zip(design.kinds()).zip(design.blocks()).map(|((rec, ours), b)| {
                let (rec, ours, b) = (*rec, *ours, *b);
                (rec == ours, move || format!("{b}: recorded {rec}, computed {ours}"))
            }),
        );
        if design.qubits() == 2 {
            report.check(
                "dictionary columns agree",
                self.points.iter().map(|rec| {
                    let ok = PauliLabel::new(rec.q, 2).ok().and_then(|l| lookup_label(l).ok()).is_some_and(|e| {
                        rec.o.map_or(true, |o| OIndex::new(o as u32).is_ok_and(|o| o == e.o))
                            && rec.color.map_or(true, |c| c == e.color)
                            && rec.note.map_or(true, |n| n == e.note)
                    });
                    let coord = rec.coord.clone();
                    (ok, move || format!("({coord}) disagrees with the dictionary"))
                }),
            );
        }
        if let Some(res) = res {
            report.merge(validate_resolution(&design, &res));
        }
        Ok(report)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::design::RUNNING_EXAMPLE;
    use crate::resolve::resolve;

    #[test]
    fn round_trip_with_resolution() {
        let d = Design::from_q(&RUNNING_EXAMPLE).unwrap();
        let res = resolve(&d, None).unwrap();
        let doc = DesignDocument::from_design(&d, Some(&res)).unwrap();
        let json = doc.to_json();
        let back = DesignDocument::from_json(&json).unwrap();
        assert_eq!(back, doc);
        let (d2, r2) = back.to_design().unwrap();
        assert_eq!(d2, d);
        assert_eq!(r2.unwrap(), res);
        assert!(back.check().unwrap().passed());
        let v: serde_json::Value = serde_json::from_str(&json).unwrap();
        assert_eq!(v["points"][6]["coord"], "0111");
        assert_eq!(v["points"][6]["q"], 5);
        assert_eq!(v["kinds"][0], d.kinds()[0].to_string());
        assert_eq!(v["resolution"]["days"][0]["name"], "SUN");
    }

    #[test]
    fn tampering_is_reported() {
        let d = Design::from_q(&[10, 4, 11]).unwrap();
        let mut doc = DesignDocument::from_design(&d, None).unwrap();
        doc.kinds[0] = match doc.kinds[0] {
            BlockKind::Commuting => BlockKind::Cyclic,
            BlockKind::Cyclic => BlockKind::Commuting,
        };
        doc.points[0].color = Some("G4".parse().unwrap());
        let report = doc.check().unwrap();
        assert!(!report.get("recorded kinds match commutation").unwrap().passed());
        assert!(!report.get("dictionary columns agree").unwrap().passed());
        doc.blocks.pop();
        assert!(!doc.check().unwrap().get("every pair in exactly one block").unwrap().passed());
        doc.points.pop();
        assert!(doc.to_design().is_err());
    }

    #[test]
    fn qubits_default_to_two() {
        let d = Design::from_q(&[3, 6]).unwrap();
        let mut v: serde_json::Value = serde_json::from_str(&DesignDocument::from_design(&d, None).unwrap().to_json()).unwrap();
        v.as_object_mut().unwrap().remove("qubits");
        let doc: DesignDocument = serde_json::from_value(v).unwrap();
        assert_eq!(doc.qubits, 2);
        assert!(doc.check().unwrap().passed());
    }
}
