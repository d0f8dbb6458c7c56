//! SVG 1.1 drawing of a patch with optional net and grid overlays.

use std::fmt::Write;

use penrose_core::net::{Net, SourceKind};
use penrose_core::tiling::Patch;

use crate::config::{OverlayArg, RenderStyle};

const MARGIN: f64 = 0.5;
const MAX_PIXELS: f64 = 4000.0;

struct Frame {
    min_x: f64,
    max_y: f64,
    width: f64,
    height: f64,
}

impl Frame {
    fn x(&self, x: f64) -> f64 {
        x - self.min_x + MARGIN
    }

    // SVG's y axis points down
    fn y(&self, y: f64) -> f64 {
        self.max_y - y + MARGIN
    }
}

fn frame(patch: &Patch) -> Frame {
    let (mut x0, mut y0, mut x1, mut y1) = (f64::INFINITY, f64::INFINITY, f64::NEG_INFINITY, f64::NEG_INFINITY);
    for t in &patch.tiles {
        for (x, y) in patch.triangle(t) {
            x0 = x0.min(x);
            y0 = y0.min(y);
            x1 = x1.max(x);
            y1 = y1.max(y);
        }
    }
    if !x0.is_finite() {
        (x0, y0, x1, y1) = (0.0, 0.0, 1.0, 1.0);
    }
    Frame { min_x: x0, max_y: y1, width: x1 - x0 + 2.0 * MARGIN, height: y1 - y0 + 2.0 * MARGIN }
}

fn xml_escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;").replace('"', "&quot;")
}

/// One `<polygon>` per half-tile, plus one `<circle>` per net point when
/// `net` is given and the overlay asks for it.
pub fn render_svg(patch: &Patch, net: Option<&Net>, style: &RenderStyle) -> String {
    let f = frame(patch);
    let px = (MAX_PIXELS / f.width.max(f.height)).min(40.0);
    let mut s = String::new();
    writeln!(s, r#"<?xml version="1.0" encoding="UTF-8"?>"#).unwrap();
    writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{:.0}" height="{:.0}" viewBox="0 0 {:.4} {:.4}">"#,
        f.width * px,
        f.height * px,
        f.width,
        f.height
    )
    .unwrap();
    writeln!(
        s,
        r##"<g id="tiles" stroke="#333333" stroke-width="{}" stroke-linejoin="round">"##,
        style.stroke_width
    )
    .unwrap();
    let kite_fill = xml_escape(&style.kite_fill);
    let dart_fill = xml_escape(&style.dart_fill);
    for t in &patch.tiles {
        let (class, fill) = if t.is_kite() { ("kite", &kite_fill) } else { ("dart", &dart_fill) };
        let pts: Vec<String> =
            patch.triangle(t).iter().map(|&(x, y)| format!("{:.4},{:.4}", f.x(x), f.y(y))).collect();
        writeln!(s, r#"<polygon class="{class}" fill="{fill}" points="{}"/>"#, pts.join(" ")).unwrap();
    }
    writeln!(s, "</g>").unwrap();

    match (style.overlay, net) {
        (OverlayArg::Net, Some(net)) => {
            writeln!(s, r##"<g id="net" stroke="none">"##).unwrap();
            let r = 0.08;
            for p in &net.points {
                let fill = match p.source_kind {
                    SourceKind::Kite => "#b2182b",
                    SourceKind::Dart => "#2166ac",
                };
                writeln!(
                    s,
                    r#"<circle class="{}" cx="{:.4}" cy="{:.4}" r="{r}" fill="{fill}"/>"#,
                    p.source_kind.label(),
                    f.x(p.position.0),
                    f.y(p.position.1)
                )
                .unwrap();
            }
            writeln!(s, "</g>").unwrap();
        }
        (OverlayArg::Grid, _) if style.grid_step > 0.0 => {
            let step = style.grid_step;
            writeln!(s, r##"<g id="grid" stroke="#888888" stroke-width="{}">"##, style.stroke_width / 2.0).unwrap();
            let (x0, x1) = (f.min_x - MARGIN, f.min_x - MARGIN + f.width);
            let (y1, y0) = (f.max_y + MARGIN, f.max_y + MARGIN - f.height);
            let mut x = (x0 / step).ceil() * step;
            while x <= x1 {
                writeln!(s, r#"<line x1="{0:.4}" y1="0" x2="{0:.4}" y2="{1:.4}"/>"#, f.x(x), f.height).unwrap();
                x += step;
            }
            let mut y = (y0 / step).ceil() * step;
            while y <= y1 {
                writeln!(s, r#"<line x1="0" y1="{0:.4}" x2="{1:.4}" y2="{0:.4}"/>"#, f.y(y), f.width).unwrap();
                y += step;
            }
            writeln!(s, "</g>").unwrap();
        }
        _ => {}
    }
    writeln!(s, "</svg>").unwrap();
    s
}
