//! Drawing positions for design points on the triangle, cube and tetrahedron.
//!
//! Positions are in abstract units with `y` pointing up. Every layout places a
//! point at the mean of some fixed anchor positions, so all three are affine
//! images of the underlying coordinate geometry.

use std::fmt;
use std::str::FromStr;

use crate::design::{Design, Point};
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Layout {
    Triangle,
    Cube,
    Tetrahedron,
}

impl Layout {
    pub fn name(self) -> &'static str {
        match self {
            Layout::Triangle => "triangle",
            Layout::Cube => "cube",
            Layout::Tetrahedron => "tetrahedron",
        }
    }

    pub fn seed_count(self) -> usize {
        match self {
            Layout::Triangle => 3,
            Layout::Cube | Layout::Tetrahedron => 4,
        }
    }

    /// Default drawing for a design of `m` seeds.
    pub fn for_m(m: usize) -> Result<Layout> {
        match m {
            3 => Ok(Layout::Triangle),
            4 => Ok(Layout::Tetrahedron),
            _ => Err(Error::IncompatibleLayout { layout: "diagram", m }),
        }
    }
}

impl fmt::Display for Layout {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Layout {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "triangle" | "fano" => Ok(Layout::Triangle),
            "cube" => Ok(Layout::Cube),
            "tetrahedron" | "tetra" => Ok(Layout::Tetrahedron),
            _ => Err(Error::UnknownKey(s.to_owned())),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Placement {
    pub point: Point,
    pub x: f64,
    pub y: f64,
    /// False for repeated drawing positions of a point already placed.
    pub primary: bool,
}

const H: f64 = 0.866_025_403_784_438_6;

fn triangle_vertex(t: usize) -> (f64, f64) {
    // seeds in bit order: (100), (010), (001)
    [(0.0, 0.0), (1.0, 0.0), (0.5, H)][t]
}

/// Oblique projection of the unit cube; `z` recedes up and to the right.
fn cube_corner(x: f64, y: f64, z: f64) -> (f64, f64) {
    (x + 0.45 * z, y + 0.35 * z)
}

fn tetra_vertex(t: usize) -> (f64, f64) {
    // (1000) apex, then the base (0100), (0010), (0001)
    [(0.5, 1.0), (0.0, 0.0), (1.0, 0.0), (0.62, 0.3)][t]
}

fn mean(points: &[(f64, f64)]) -> (f64, f64) {
    let n = points.len() as f64;
    let (sx, sy) = points.iter().fold((0.0, 0.0), |(a, b), (x, y)| (a + x, b + y));
    (sx / n, sy / n)
}

fn barycentric(p: Point, vertex: fn(usize) -> (f64, f64)) -> (f64, f64) {
    let anchors: Vec<(f64, f64)> = (0..p.m()).filter(|&t| p.bit(t)).map(vertex).collect();
    mean(&anchors)
}

/// Corner `(1xyz)` of the cube in drawing units.
fn corner_position(coord: u8) -> (f64, f64) {
    let bit = |k: u8| (coord >> k & 1) as f64;
    cube_corner(bit(2), bit(1), bit(0))
}

pub fn embed_coordinates(design: &Design, layout: Layout) -> Result<Vec<Placement>> {
    let m = design.m();
    if m != layout.seed_count() {
        return Err(Error::IncompatibleLayout { layout: layout.name(), m });
    }
    let mut out = Vec::new();
    for p in design.points() {
        match layout {
            Layout::Triangle => {
                let (x, y) = barycentric(p, triangle_vertex);
                out.push(Placement { point: p, x, y, primary: true });
            }
            Layout::Tetrahedron => {
                let (x, y) = barycentric(p, tetra_vertex);
                out.push(Placement { point: p, x, y, primary: true });
            }
            Layout::Cube if p.bit(0) => {
                let (x, y) = corner_position(p.coord());
                out.push(Placement { point: p, x, y, primary: true });
            }
            Layout::Cube => {
                // Midpoints of the corner pairs {c, c ⊕ p}; the pair through (1000) comes first.
                let mut seen: Vec<(f64, f64)> = Vec::new();
                for c in 8u8..16 {
                    let d = c ^ p.coord();
                    if d < c {
                        continue;
                    }
                    let at = mean(&[corner_position(c), corner_position(d)]);
                    if seen.iter().any(|s| (s.0 - at.0).abs() < 1e-9 && (s.1 - at.1).abs() < 1e-9) {
                        continue;
                    }
                    out.push(Placement { point: p, x: at.0, y: at.1, primary: seen.is_empty() });
                    seen.push(at);
                }
            }
        }
    }
    Ok(out)
}

/// Anchor segments of the drawing frame (triangle sides or solid edges).
pub fn frame_edges(layout: Layout) -> Vec<((f64, f64), (f64, f64))> {
    match layout {
        Layout::Triangle => (0..3).map(|i| (triangle_vertex(i), triangle_vertex((i + 1) % 3))).collect(),
        Layout::Tetrahedron => {
            let mut out = Vec::new();
            for i in 0..4 {
                for j in i + 1..4 {
                    out.push((tetra_vertex(i), tetra_vertex(j)));
                }
            }
            out
        }
        Layout::Cube => {
            let mut out = Vec::new();
            for a in 0u8..8 {
                for k in 0..3 {
                    let b = a ^ (1 << k);
                    if b > a {
                        out.push((corner_position(a), corner_position(b)));
                    }
                }
            }
            out
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::design::RUNNING_EXAMPLE;

    fn at(places: &[Placement], coord: &str) -> Vec<(f64, f64)> {
        let p: Point = coord.parse().unwrap();
        places.iter().filter(|pl| pl.point == p).map(|pl| (pl.x, pl.y)).collect()
    }

    fn close(a: (f64, f64), b: (f64, f64)) -> bool {
        (a.0 - b.0).abs() < 1e-9 && (a.1 - b.1).abs() < 1e-9
    }

    #[test]
    fn triangle() {
        let d = Design::from_q(&[10, 4, 11]).unwrap();
        let places = embed_coordinates(&d, Layout::Triangle).unwrap();
        assert_eq!(places.len(), 7);
        assert!(close(at(&places, "100")[0], (0.0, 0.0)));
        assert!(close(at(&places, "010")[0], (1.0, 0.0)));
        assert!(close(at(&places, "001")[0], (0.5, H)));
        assert!(close(at(&places, "111")[0], (0.5, H / 3.0)));
        assert!(embed_coordinates(&d, Layout::Cube).is_err());
    }

    #[test]
    fn cube() {
        let d = Design::from_q(&RUNNING_EXAMPLE).unwrap();
        let places = embed_coordinates(&d, Layout::Cube).unwrap();
        assert!(close(at(&places, "1000")[0], (0.0, 0.0)));
        let centre = at(&places, "0111");
        assert_eq!(centre.len(), 1);
        assert!(close(centre[0], cube_corner(0.5, 0.5, 0.5)));
        assert_eq!(at(&places, "0100").len(), 4);
        assert_eq!(at(&places, "0110").len(), 2);
        let primaries = places.iter().filter(|p| p.primary).count();
        assert_eq!(primaries, 15);
        assert_eq!(places.len(), 8 + 3 * 4 + 3 * 2 + 1);
    }

    #[test]
    fn tetrahedron() {
        let d = Design::from_q(&RUNNING_EXAMPLE).unwrap();
        let places = embed_coordinates(&d, Layout::Tetrahedron).unwrap();
        assert_eq!(places.len(), 15);
        for t in 0..4 {
            let unit = Point::unit(t, 4).unwrap();
            assert!(close(at(&places, &unit.bit_string())[0], tetra_vertex(t)));
        }
    }
}
