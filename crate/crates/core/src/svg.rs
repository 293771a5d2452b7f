//! Deterministic SVG plots: ticks and intervals on the line, dots and boxes
//! in the plane, and net diagrams over orbit samples. Layout uses float
//! approximations of the exact coordinates; all text is emitted in a fixed
//! order with fixed precision, so equal inputs produce identical bytes.

use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::geom::Vector;
use crate::hull::EpsNet;
use crate::pattern::Pattern;
use crate::region::{Bounds, Region};
use crate::scalar::QuadInt;

const CANVAS: f64 = 800.0;
const MARGIN: f64 = 40.0;

fn px(x: f64) -> String {
    format!("{x:.3}")
}

fn escape(text: &str) -> String {
    text.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}

struct Frame {
    lo: (f64, f64),
    hi: (f64, f64),
    height: f64,
}

impl Frame {
    fn new(lo: (f64, f64), hi: (f64, f64), height: f64) -> Self {
        let pad = |a: f64, b: f64| if (b - a).abs() < 1e-9 { (a - 1.0, b + 1.0) } else { (a, b) };
        let (x0, x1) = pad(lo.0, hi.0);
        let (y0, y1) = pad(lo.1, hi.1);
        Frame { lo: (x0, y0), hi: (x1, y1), height }
    }

    fn x(&self, wx: f64) -> f64 {
        MARGIN + (wx - self.lo.0) / (self.hi.0 - self.lo.0) * (CANVAS - 2.0 * MARGIN)
    }

    fn y(&self, wy: f64) -> f64 {
        MARGIN + (self.hi.1 - wy) / (self.hi.1 - self.lo.1) * (self.height - 2.0 * MARGIN)
    }
}

fn document(height: f64, body: &str) -> String {
    format!(
        concat!(
            "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{w}\" height=\"{h}\" ",
            "viewBox=\"0 0 {w} {h}\">\n",
            "<rect width=\"{w}\" height=\"{h}\" fill=\"white\"/>\n",
            "{body}</svg>\n"
        ),
        w = px(CANVAS),
        h = px(height),
        body = body
    )
}

fn viewport_box<T: QuadInt>(viewport: &Region<T>) -> Result<((f64, f64), (f64, f64))> {
    match viewport.bounds() {
        Bounds::Box { lo, hi } => {
            let get = |v: &crate::geom::Vector<T>, i: usize| {
                if i < v.dim() {
                    v.coord(i).to_f64()
                } else {
                    0.0
                }
            };
            Ok(((get(&lo, 0), get(&lo, 1)), (get(&hi, 0), get(&hi, 1))))
        }
        Bounds::Empty => Err(Error::UnboundedRegion("an empty plot viewport".into())),
        Bounds::Unbounded => Err(Error::UnboundedRegion("plot viewport".into())),
    }
}

/// Renders the part of `pattern` inside `viewport`. One-dimensional patterns
/// draw on an axis: point-like atoms as ticks, tiles as filled intervals,
/// letters and weights as text. Two-dimensional patterns draw dots and boxes.
pub fn render_pattern_svg<T: QuadInt>(
    pattern: &Pattern<T>,
    viewport: &Region<T>,
) -> Result<String> {
    let (lo, hi) = viewport_box(viewport)?;
    let window = pattern.cut(viewport);
    if pattern.dim() == 1 {
        render_line(&window, lo.0, hi.0)
    } else {
        render_plane(&window, lo, hi)
    }
}

fn render_line<T: QuadInt>(window: &Pattern<T>, lo: f64, hi: f64) -> Result<String> {
    let height = 200.0;
    let frame = Frame::new((lo, 0.0), (hi, 1.0), height);
    let axis_y = height / 2.0;
    let mut body = String::new();
    let _ = writeln!(
        body,
        "<line x1=\"{}\" y1=\"{}\" x2=\"{}\" y2=\"{}\" stroke=\"black\" stroke-width=\"1\"/>",
        px(MARGIN),
        px(axis_y),
        px(CANVAS - MARGIN),
        px(axis_y)
    );

    let tick = |body: &mut String, wx: f64, label: Option<&str>| {
        let x = frame.x(wx);
        let _ = writeln!(
            body,
            "<line x1=\"{x}\" y1=\"{}\" x2=\"{x}\" y2=\"{}\" stroke=\"black\" stroke-width=\"2\"/>",
            px(axis_y - 14.0),
            px(axis_y + 14.0),
            x = px(x)
        );
        if let Some(text) = label {
            let _ = writeln!(
                body,
                "<text x=\"{}\" y=\"{}\" font-size=\"12\" text-anchor=\"middle\">{}</text>",
                px(x),
                px(axis_y - 20.0),
                escape(text)
            );
        }
    };

    match window {
        Pattern::Points(ps) => {
            for p in ps.points() {
                tick(&mut body, p.coord(0).to_f64(), None);
            }
        }
        Pattern::Patch(patch) => {
            for t in patch.tiles() {
                let x0 = frame.x(t.lo.coord(0).to_f64());
                let x1 = frame.x(t.hi.coord(0).to_f64());
                let _ = writeln!(
                    body,
                    concat!(
                        "<rect x=\"{}\" y=\"{}\" width=\"{}\" height=\"28\" ",
                        "fill=\"lightsteelblue\" stroke=\"black\" stroke-width=\"1\"/>"
                    ),
                    px(x0),
                    px(axis_y - 14.0),
                    px((x1 - x0).max(1.0))
                );
                if let Some(label) = &t.label {
                    let _ = writeln!(
                        body,
                        "<text x=\"{}\" y=\"{}\" font-size=\"12\" text-anchor=\"middle\">{}</text>",
                        px((x0 + x1) / 2.0),
                        px(axis_y + 4.0),
                        escape(label)
                    );
                }
            }
        }
        Pattern::Symbolic(s) => {
            for (pos, letter) in s.entries() {
                tick(&mut body, pos as f64, Some(letter));
            }
        }
        Pattern::Comb(c) => {
            for (p, w) in c.entries() {
                tick(&mut body, p.coord(0).to_f64(), Some(&w.to_string()));
            }
        }
        Pattern::Multi(m) => {
            for (row, comp) in m.components().iter().enumerate() {
                let y = axis_y + 24.0 * (row as f64 + 1.0);
                for p in comp {
                    let x = frame.x(p.coord(0).to_f64());
                    let _ = writeln!(
                        body,
                        "<circle cx=\"{}\" cy=\"{}\" r=\"4\" fill=\"black\"/>",
                        px(x),
                        px(y)
                    );
                }
            }
        }
    }
    Ok(document(height, &body))
}

fn render_plane<T: QuadInt>(
    window: &Pattern<T>,
    lo: (f64, f64),
    hi: (f64, f64),
) -> Result<String> {
    let height = CANVAS;
    let frame = Frame::new(lo, hi, height);
    let mut body = String::new();
    match window {
        Pattern::Patch(patch) => {
            for t in patch.tiles() {
                let x0 = frame.x(t.lo.coord(0).to_f64());
                let y1 = frame.y(t.lo.coord(1).to_f64());
                let x1 = frame.x(t.hi.coord(0).to_f64());
                let y0 = frame.y(t.hi.coord(1).to_f64());
                let _ = writeln!(
                    body,
                    concat!(
                        "<rect x=\"{}\" y=\"{}\" width=\"{}\" height=\"{}\" ",
                        "fill=\"lightsteelblue\" stroke=\"black\" stroke-width=\"1\"/>"
                    ),
                    px(x0),
                    px(y0),
                    px((x1 - x0).max(1.0)),
                    px((y1 - y0).max(1.0))
                );
            }
        }
        other => {
            for a in other.anchors() {
                let _ = writeln!(
                    body,
                    "<circle cx=\"{}\" cy=\"{}\" r=\"3\" fill=\"black\"/>",
                    px(frame.x(a.coord(0).to_f64())),
                    px(frame.y(a.coord(1).to_f64()))
                );
            }
        }
    }
    Ok(document(height, &body))
}

/// Renders sampled shifts with their ε-net: every shift as a dot, an edge to
/// its assigned net point, and net points as larger ringed markers.
pub fn render_net_svg<T: QuadInt>(shifts: &[Vector<T>], net: &EpsNet<T>) -> Result<String> {
    let coords: Vec<(f64, f64)> = shifts
        .iter()
        .map(|s| {
            let x = s.coord(0).to_f64();
            let y = if s.dim() > 1 { s.coord(1).to_f64() } else { 0.0 };
            (x, y)
        })
        .collect();
    let fold = |f: fn(f64, f64) -> f64, pick: fn(&(f64, f64)) -> f64| {
        coords.iter().map(pick).fold(pick(&coords[0]), f)
    };
    if coords.is_empty() {
        return Err(Error::InvalidQuery("an empty sample has no net plot".into()));
    }
    let lo = (fold(f64::min, |c| c.0), fold(f64::min, |c| c.1));
    let hi = (fold(f64::max, |c| c.0), fold(f64::max, |c| c.1));
    let height = if shifts[0].dim() == 1 { 240.0 } else { CANVAS };
    let frame = Frame::new(lo, hi, height);

    let mut body = String::new();
    for (i, &(wx, wy)) in coords.iter().enumerate() {
        let (cx, cy) = (frame.x(wx), frame.y(wy));
        let (nx, ny) = coords[net.assignment[i]];
        let _ = writeln!(
            body,
            "<line x1=\"{}\" y1=\"{}\" x2=\"{}\" y2=\"{}\" stroke=\"gainsboro\" stroke-width=\"1\"/>",
            px(cx),
            px(cy),
            px(frame.x(nx)),
            px(frame.y(ny))
        );
    }
    for &(wx, wy) in &coords {
        let _ = writeln!(
            body,
            "<circle cx=\"{}\" cy=\"{}\" r=\"3\" fill=\"black\"/>",
            px(frame.x(wx)),
            px(frame.y(wy))
        );
    }
    for &i in &net.net {
        let (wx, wy) = coords[i];
        let _ = writeln!(
            body,
            concat!(
                "<circle cx=\"{}\" cy=\"{}\" r=\"8\" fill=\"none\" ",
                "stroke=\"crimson\" stroke-width=\"2\"/>"
            ),
            px(frame.x(wx)),
            px(frame.y(wy))
        );
    }
    Ok(document(height, &body))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::{integers, shifted_rows_default, WindowSource};
    use crate::geom::Vector;
    use crate::hull::{eps_net, orbit_sample};
    use crate::scalar::Quad;
    use num_bigint::BigInt;

    fn lit(s: &str) -> Quad<BigInt> {
        s.parse().unwrap()
    }

    #[test]
    fn line_plots_are_deterministic_and_well_formed() {
        let z = integers::<BigInt>().materialize(&Region::ball0(1, lit("5"))).unwrap();
        let view = Region::ball0(1, lit("5"));
        let svg = render_pattern_svg(&z, &view).unwrap();
        assert_eq!(svg, render_pattern_svg(&z, &view).unwrap());
        assert!(svg.starts_with("<svg"));
        assert!(svg.ends_with("</svg>\n"));
        assert_eq!(svg.matches("<line").count(), 12);
    }

    #[test]
    fn plane_plots_draw_a_dot_per_point() {
        let rows = shifted_rows_default::<BigInt>();
        let view = Region::ball0(2, lit("3"));
        let window = rows.materialize(&view).unwrap();
        let svg = render_pattern_svg(&window, &view).unwrap();
        assert_eq!(svg.matches("<circle").count(), window.anchors().len());
    }

    #[test]
    fn unbounded_viewports_are_rejected() {
        let z = integers::<BigInt>().materialize(&Region::ball0(1, lit("2"))).unwrap();
        assert!(matches!(
            render_pattern_svg(&z, &Region::All),
            Err(Error::UnboundedRegion(_))
        ));
    }

    #[test]
    fn net_plots_ring_every_net_point() {
        let z = WindowSource::generated(integers::<BigInt>());
        let shifts: Vec<Vector<BigInt>> =
            ["0", "1/4", "1/2", "3/4"].iter().map(|s| Vector::one_d(lit(s))).collect();
        let sample = orbit_sample(&z, &shifts, &lit("10")).unwrap();
        let net = eps_net(&sample, &lit("3/10")).unwrap();
        let svg = render_net_svg(&sample.shifts, &net).unwrap();
        assert_eq!(svg.matches("stroke=\"crimson\"").count(), net.net.len());
    }
}
