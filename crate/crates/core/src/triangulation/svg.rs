use std::fmt::Write;

use super::{centroid, exploded, FlowTriangulation, Point};

const SCALE: f64 = 100.0;
const CLASS_TOLERANCE: f64 = 1e-6;
const MARGIN: f64 = 20.0;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RenderMode {
    Attached,
    Exploded,
}

fn coord(x: f64) -> String {
    let s = format!("{x:.4}");
    if s == "-0.0000" {
        "0.0000".to_owned()
    } else {
        s
    }
}

fn screen(p: Point) -> (String, String) {
    (coord(p[0] * SCALE), coord(-p[1] * SCALE))
}

/// Renders the triangles as SVG 1.1. Shortest sides are bold, longest are
/// dashed, and the graph is overlaid in grey from each centroid to the
/// midpoints of its sides.
pub fn render_svg(t: &FlowTriangulation, mode: RenderMode) -> String {
    let t = match mode {
        RenderMode::Attached => t.clone(),
        RenderMode::Exploded => exploded(t),
    };
    let mut out = String::new();
    out.push_str("<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n");
    if t.vertex_count() == 0 {
        out.push_str(
            "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"0\" height=\"0\" viewBox=\"0 0 0 0\">\n</svg>\n",
        );
        return out;
    }

    let corners = t.triangles.iter().flatten();
    let (mut lo, mut hi) = ([f64::INFINITY; 2], [f64::NEG_INFINITY; 2]);
    for p in corners {
        let q = [p[0] * SCALE, -p[1] * SCALE];
        for i in 0..2 {
            lo[i] = lo[i].min(q[i]);
            hi[i] = hi[i].max(q[i]);
        }
    }
    let (x0, y0) = (lo[0] - MARGIN, lo[1] - MARGIN);
    let (w, h) = (hi[0] - lo[0] + 2.0 * MARGIN, hi[1] - lo[1] + 2.0 * MARGIN);
    let _ = writeln!(
        out,
        "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"{}\" height=\"{}\" viewBox=\"{} {} {} {}\">",
        coord(w),
        coord(h),
        coord(x0),
        coord(y0),
        coord(w),
        coord(h)
    );

    out.push_str("<g id=\"triangles\" fill=\"#f2f2f2\" stroke=\"none\">\n");
    for (v, tri) in t.triangles.iter().enumerate() {
        let [a, b, c] = tri.map(screen);
        let _ = writeln!(
            out,
            "<path id=\"t{v}\" d=\"M {} {} L {} {} L {} {} Z\"/>",
            a.0, a.1, b.0, b.1, c.0, c.1
        );
    }
    out.push_str("</g>\n");

    let lengths: Vec<f64> = t.side_lengths().collect();
    let shortest = lengths.iter().copied().fold(f64::INFINITY, f64::min);
    let longest = lengths.iter().copied().fold(0.0, f64::max);
    let spread = longest - shortest > CLASS_TOLERANCE;
    out.push_str("<g id=\"sides\" stroke=\"#000000\" fill=\"none\">\n");
    for (v, tri) in t.triangles.iter().enumerate() {
        for s in 0..3 {
            let len = lengths[3 * v + s];
            let style = if (len - shortest).abs() <= CLASS_TOLERANCE {
                " stroke-width=\"3\""
            } else if spread && (len - longest).abs() <= CLASS_TOLERANCE {
                " stroke-width=\"1\" stroke-dasharray=\"6 4\""
            } else {
                " stroke-width=\"1\""
            };
            let (p, q) = (screen(tri[s]), screen(tri[(s + 1) % 3]));
            let _ = writeln!(
                out,
                "<line class=\"side\" data-edge=\"{}\" x1=\"{}\" y1=\"{}\" x2=\"{}\" y2=\"{}\"{style}/>",
                t.side_map[v][s], p.0, p.1, q.0, q.1
            );
        }
    }
    out.push_str("</g>\n");

    out.push_str("<g id=\"graph\" stroke=\"#999999\" stroke-width=\"1.5\">\n");
    for tri in &t.triangles {
        let c = screen(centroid(tri));
        for s in 0..3 {
            let m = midpoint(tri[s], tri[(s + 1) % 3]);
            let m = screen(m);
            let _ = writeln!(
                out,
                "<line x1=\"{}\" y1=\"{}\" x2=\"{}\" y2=\"{}\"/>",
                c.0, c.1, m.0, m.1
            );
        }
    }
    out.push_str("</g>\n");

    out.push_str(
        "<g id=\"labels\" font-family=\"sans-serif\" font-size=\"14\" text-anchor=\"middle\">\n",
    );
    for (v, tri) in t.triangles.iter().enumerate() {
        let c = screen(centroid(tri));
        let _ = writeln!(out, "<text x=\"{}\" y=\"{}\">{v}</text>", c.0, c.1);
    }
    out.push_str("</g>\n");

    if mode == RenderMode::Exploded {
        out.push_str(
            "<g id=\"edge-labels\" font-family=\"sans-serif\" font-size=\"10\" fill=\"#555555\" text-anchor=\"middle\">\n",
        );
        for (v, tri) in t.triangles.iter().enumerate() {
            let c = centroid(tri);
            for s in 0..3 {
                let m = midpoint(tri[s], tri[(s + 1) % 3]);
                // Pull the label slightly inside its own triangle.
                let p = screen([0.8 * m[0] + 0.2 * c[0], 0.8 * m[1] + 0.2 * c[1]]);
                let _ = writeln!(
                    out,
                    "<text x=\"{}\" y=\"{}\">e{}</text>",
                    p.0, p.1, t.side_map[v][s]
                );
            }
        }
        out.push_str("</g>\n");
    }
    out.push_str("</svg>\n");
    out
}

fn midpoint(a: Point, b: Point) -> Point {
    [(a[0] + b[0]) / 2.0, (a[1] + b[1]) / 2.0]
}
