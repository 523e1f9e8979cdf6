//! Deterministic SVG output: color tilings and geometric diagrams.

use std::fmt::Write as _;

use crate::color::{color_of, rgb_of, ColorLabel};
use crate::design::{Block, Design, Point};
use crate::error::{Error, Result};
use crate::geometry::{embed_coordinates, frame_edges, Layout};
use crate::resolve::{DayLabel, Resolution};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TilingLayout {
    /// One row of three tiles per Fano line.
    FanoRows,
    /// Seven day columns of five rows each.
    KirkmanDays,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct TilingSpec {
    pub layout: TilingLayout,
    pub tile_width: f64,
    pub tile_height: f64,
    pub gap: f64,
    pub group_gap: f64,
    pub labels: bool,
}

impl TilingSpec {
    pub fn new(layout: TilingLayout) -> Self {
        TilingSpec { layout, tile_width: 40.0, tile_height: 40.0, gap: 4.0, group_gap: 24.0, labels: true }
    }
}

const MARGIN: f64 = 16.0;
const HEADER: f64 = 22.0;

struct Tile {
    point: Point,
    label: String,
    fill: String,
}

fn tile(design: &Design, p: Point) -> Tile {
    let op = design.operator_at(p);
    match color_of(op) {
        Ok(c) => Tile { point: p, label: c.to_string(), fill: rgb_of(c).hex() },
        Err(_) => Tile { point: p, label: format!("Q{}", op.q_index()), fill: "#808080".into() },
    }
}

fn row_tiles(design: &Design, block: &Block) -> Result<Vec<Tile>> {
    Ok(design.display_order(block)?.iter().map(|&p| tile(design, p)).collect())
}

fn open_svg(out: &mut String, width: f64, height: f64, title: &str) {
    writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{width:.1}" height="{height:.1}" viewBox="0 0 {width:.1} {height:.1}">"#
    )
    .unwrap();
    writeln!(out, "<title>{}</title>", escape(title)).unwrap();
    writeln!(out, r##"<rect class="background" x="0" y="0" width="{width:.1}" height="{height:.1}" fill="#ffffff"/>"##).unwrap();
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;").replace('"', "&quot;")
}

fn write_row(out: &mut String, spec: &TilingSpec, tiles: &[Tile], x0: f64, y: f64, indent: &str) {
    writeln!(out, r#"{indent}<g class="row">"#).unwrap();
    for (i, t) in tiles.iter().enumerate() {
        let x = x0 + i as f64 * (spec.tile_width + spec.gap);
        writeln!(
            out,
            r##"{indent}  <rect class="tile" data-point="{}" data-color="{}" x="{x:.1}" y="{y:.1}" width="{:.1}" height="{:.1}" fill="{}" stroke="#202020" stroke-width="0.5"/>"##,
            t.point.bit_string(),
            t.label,
            spec.tile_width,
            spec.tile_height,
            t.fill
        )
        .unwrap();
        if spec.labels {
            writeln!(
                out,
                r##"{indent}  <text x="{:.1}" y="{:.1}" font-family="sans-serif" font-size="10" text-anchor="middle" fill="#000000">{}</text>"##,
                x + spec.tile_width / 2.0,
                y + spec.tile_height / 2.0 + 3.5,
                t.label
            )
            .unwrap();
        }
    }
    writeln!(out, "{indent}</g>").unwrap();
}

/// Color tiling of a design's rows.
pub fn render_tiling(design: &Design, res: Option<&Resolution>, spec: &TilingSpec) -> Result<String> {
    match spec.layout {
        TilingLayout::FanoRows => {
            let fano;
            let (design, blocks): (&Design, Vec<Block>) = match design.m() {
                3 => match res {
                    Some(r) => {
                        let lines = DayLabel::calendar()
                            .map(|d| r.matching.line(d).map_points(|p| p.narrow(3)))
                            .collect::<Result<_>>()?;
                        (design, lines)
                    }
                    None => (design, design.blocks().to_vec()),
                },
                4 => {
                    fano = design.fano_subdesign()?;
                    let blocks = match res {
                        Some(r) => DayLabel::calendar()
                            .map(|d| r.matching.line(d).map_points(|p| p.narrow(3)))
                            .collect::<Result<_>>()?,
                        None => fano.blocks().to_vec(),
                    };
                    (&fano, blocks)
                }
                m => return Err(Error::IncompatibleLayout { layout: "fano-rows", m }),
            };
            let row_w = 3.0 * spec.tile_width + 2.0 * spec.gap;
            let width = 2.0 * MARGIN + row_w;
            let height = 2.0 * MARGIN + blocks.len() as f64 * (spec.tile_height + spec.gap) - spec.gap;
            let mut out = String::new();
            open_svg(&mut out, width, height, &format!("{} color tiling", design.notation()));
            writeln!(out, r#"<g class="tiling" data-layout="fano-rows">"#).unwrap();
            for (r, block) in blocks.iter().enumerate() {
                let y = MARGIN + r as f64 * (spec.tile_height + spec.gap);
                write_row(&mut out, spec, &row_tiles(design, block)?, MARGIN, y, "  ");
            }
            out.push_str("</g>\n</svg>\n");
            Ok(out)
        }
        TilingLayout::KirkmanDays => {
            if design.m() != 4 {
                return Err(Error::IncompatibleLayout { layout: "kirkman-days", m: design.m() });
            }
            let res = res.ok_or(Error::MissingResolution)?;
            let row_w = 3.0 * spec.tile_width + 2.0 * spec.gap;
            let width = 2.0 * MARGIN + 7.0 * row_w + 6.0 * spec.group_gap;
            let height = 2.0 * MARGIN + HEADER + 5.0 * (spec.tile_height + spec.gap) - spec.gap;
            let mut out = String::new();
            open_svg(&mut out, width, height, &format!("{} Kirkman color tiling", design.notation()));
            writeln!(out, r#"<g class="tiling" data-layout="kirkman-days">"#).unwrap();
            for (col, day) in DayLabel::calendar().enumerate() {
                let x0 = MARGIN + col as f64 * (row_w + spec.group_gap);
                writeln!(out, r#"  <g class="day" data-day="{}" data-label="{}">"#, day.name(), day.bit_string()).unwrap();
                writeln!(
                    out,
                    r##"    <text x="{:.1}" y="{:.1}" font-family="sans-serif" font-size="12" text-anchor="middle" fill="#000000">{} ({})</text>"##,
                    x0 + row_w / 2.0,
                    MARGIN + 12.0,
                    day.name(),
                    day.bit_string()
                )
                .unwrap();
                for (r, block) in res.class(day).blocks.iter().enumerate() {
                    let y = MARGIN + HEADER + r as f64 * (spec.tile_height + spec.gap);
                    write_row(&mut out, spec, &row_tiles(design, block)?, x0, y, "    ");
                }
                out.push_str("  </g>\n");
            }
            out.push_str("</g>\n</svg>\n");
            Ok(out)
        }
    }
}

/// Points drawn as colored disks over the layout's frame, with block lines.
pub fn render_diagram(design: &Design, layout: Layout, labels: bool) -> Result<String> {
    let places = embed_coordinates(design, layout)?;
    let scale = 320.0;
    let pad = 40.0;
    let (min_x, max_x, min_y, max_y) = frame_edges(layout)
        .iter()
        .flat_map(|(a, b)| [*a, *b])
        .chain(places.iter().map(|p| (p.x, p.y)))
        .fold((f64::MAX, f64::MIN, f64::MAX, f64::MIN), |(a, b, c, d), (x, y)| (a.min(x), b.max(x), c.min(y), d.max(y)));
    let width = (max_x - min_x) * scale + 2.0 * pad;
    let height = (max_y - min_y) * scale + 2.0 * pad;
    let to_svg = |(x, y): (f64, f64)| (pad + (x - min_x) * scale, pad + (max_y - y) * scale);

    let mut out = String::new();
    open_svg(&mut out, width, height, &format!("{} {layout} diagram", design.notation()));
    writeln!(out, r##"<g class="frame" stroke="#b0b0b0" stroke-width="1" fill="none">"##).unwrap();
    for (a, b) in frame_edges(layout) {
        let ((x1, y1), (x2, y2)) = (to_svg(a), to_svg(b));
        writeln!(out, r#"  <line x1="{x1:.2}" y1="{y1:.2}" x2="{x2:.2}" y2="{y2:.2}"/>"#).unwrap();
    }
    out.push_str("</g>\n");
    if layout == Layout::Triangle {
        writeln!(out, r##"<g class="blocks" stroke="#404040" stroke-width="1.5" fill="none">"##).unwrap();
        let primary = |p: Point| places.iter().find(|pl| pl.point == p && pl.primary).map(|pl| to_svg((pl.x, pl.y)));
        for block in design.blocks() {
            let kind = design.classify_block(block)?;
            let pts: Vec<(f64, f64)> = design.display_order(block)?.iter().filter_map(|&p| primary(p)).collect();
            let path: Vec<String> = pts.iter().map(|(x, y)| format!("{x:.2},{y:.2}")).collect();
            writeln!(out, r#"  <polyline class="block {kind}" points="{}"/>"#, path.join(" ")).unwrap();
        }
        out.push_str("</g>\n");
    }
    writeln!(out, r#"<g class="points">"#).unwrap();
    for pl in &places {
        let (x, y) = to_svg((pl.x, pl.y));
        let op = design.operator_at(pl.point);
        let color: Option<ColorLabel> = color_of(op).ok();
        let fill = color.map_or_else(|| "#808080".to_owned(), |c| rgb_of(c).hex());
        let class = if pl.primary { "point" } else { "point duplicate" };
        writeln!(
            out,
            r##"  <circle class="{class}" data-point="{}" cx="{x:.2}" cy="{y:.2}" r="11" fill="{fill}" stroke="#202020" stroke-width="0.75"/>"##,
            pl.point.bit_string()
        )
        .unwrap();
        if labels && pl.primary {
            let text = color.map_or_else(|| format!("Q{}", op.q_index()), |c| c.to_string());
            writeln!(
                out,
                r##"  <text x="{:.2}" y="{:.2}" font-family="sans-serif" font-size="10" fill="#000000">{} {text}</text>"##,
                x + 13.0,
                y - 9.0,
                pl.point
            )
            .unwrap();
        }
    }
    out.push_str("</g>\n</svg>\n");
    Ok(out)
}
