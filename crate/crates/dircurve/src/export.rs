//! Deterministic text artifacts: CSV tables and SVG projections.
//!
//! All numeric CSV cells use 17 significant digits (`{:.16e}`), `.` decimal
//! separator, LF line endings, no timestamps. Identical inputs produce
//! byte-identical files.

use crate::curve::Vec3;
use crate::field::DirectionField;
use crate::frenet::FrenetTable;

pub const FRENET_CSV_HEADER: &str = "s,x,y,z,Tx,Ty,Tz,Nx,Ny,Nz,Bx,By,Bz,kappa,tau";
pub const FIELD_CSV_HEADER: &str = "s,a,b,c,Xx,Xy,Xz";

fn cell(v: f64) -> String {
    format!("{v:.16e}")
}

fn push_row(out: &mut String, values: &[f64]) {
    for (i, v) in values.iter().enumerate() {
        if i > 0 {
            out.push(',');
        }
        out.push_str(&cell(*v));
    }
    out.push('\n');
}

/// One row per retained sample; dropped lattice points are simply absent.
pub fn frenet_csv(table: &FrenetTable) -> String {
    let mut out = String::new();
    out.push_str(FRENET_CSV_HEADER);
    out.push('\n');
    for x in table.samples() {
        push_row(
            &mut out,
            &[
                x.s,
                x.point.x,
                x.point.y,
                x.point.z,
                x.tangent.x,
                x.tangent.y,
                x.tangent.z,
                x.normal.x,
                x.normal.y,
                x.normal.z,
                x.binormal.x,
                x.binormal.y,
                x.binormal.z,
                x.kappa,
                x.tau,
            ],
        );
    }
    out
}

/// Frenet CSV prefixed with a comment naming how the curve was produced.
pub fn trace_csv(provenance: &str, table: &FrenetTable) -> String {
    format!("# provenance: {provenance}\n{}", frenet_csv(table))
}

/// Direction-field dump on the donor grid; gap samples are absent.
pub fn field_csv(field: &DirectionField) -> String {
    let mut out = String::new();
    out.push_str(FIELD_CSV_HEADER);
    out.push('\n');
    for fs in field.grid_samples() {
        push_row(&mut out, &[fs.s, fs.a, fs.b, fs.c, fs.x.x, fs.x.y, fs.x.z]);
    }
    out
}

const PANEL: f64 = 300.0;
const PAD: f64 = 12.0;
const MAX_POLYLINE_POINTS: usize = 1024;

/// Orthographic projections of a polyline onto the xy, xz, and yz planes,
/// side by side, each panel framed and labeled with its axes and ranges.
pub fn projection_svg(title: &str, points: &[Vec3]) -> String {
    let mut out = String::new();
    out.push_str(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"985\" height=\"380\" \
         viewBox=\"0 0 985 380\" font-family=\"monospace\" font-size=\"12\">\n",
    );
    out.push_str(&format!("<text x=\"12\" y=\"20\">{}</text>\n", xml_escape(title)));

    let step = points.len().div_ceil(MAX_POLYLINE_POINTS).max(1);
    for (panel, (h, v, h_name, v_name)) in
        [(0usize, 1usize, "x", "y"), (0, 2, "x", "z"), (1, 2, "y", "z")].iter().enumerate()
    {
        let x0 = 12.0 + panel as f64 * (PANEL + 25.0);
        let y0 = 32.0;
        out.push_str(&format!("<g transform=\"translate({x0},{y0})\">\n"));
        out.push_str(&format!(
            "<rect width=\"{PANEL}\" height=\"{PANEL}\" fill=\"none\" stroke=\"#999\"/>\n"
        ));

        let (mut hmin, mut hmax) = (f64::INFINITY, f64::NEG_INFINITY);
        let (mut vmin, mut vmax) = (f64::INFINITY, f64::NEG_INFINITY);
        for p in points {
            hmin = hmin.min(p[*h]);
            hmax = hmax.max(p[*h]);
            vmin = vmin.min(p[*v]);
            vmax = vmax.max(p[*v]);
        }
        let span = (hmax - hmin).max(vmax - vmin).max(1e-12);
        let scale = (PANEL - 2.0 * PAD) / span;
        let h_off = (PANEL - (hmax - hmin) * scale) / 2.0;
        let v_off = (PANEL - (vmax - vmin) * scale) / 2.0;

        out.push_str("<polyline fill=\"none\" stroke=\"#1f77b4\" stroke-width=\"1\" points=\"");
        for (i, p) in points.iter().step_by(step).enumerate() {
            if i > 0 {
                out.push(' ');
            }
            let px = h_off + (p[*h] - hmin) * scale;
            let py = PANEL - (v_off + (p[*v] - vmin) * scale);
            out.push_str(&format!("{px:.2},{py:.2}"));
        }
        out.push_str("\"/>\n");

        out.push_str(&format!(
            "<text x=\"{}\" y=\"{}\" text-anchor=\"middle\">{h_name}: [{:.3}, {:.3}]</text>\n",
            PANEL / 2.0,
            PANEL + 16.0,
            hmin,
            hmax
        ));
        out.push_str(&format!(
            "<text x=\"{}\" y=\"{}\" text-anchor=\"middle\">{v_name}: [{:.3}, {:.3}]</text>\n",
            PANEL / 2.0,
            PANEL + 32.0,
            vmin,
            vmax
        ));
        out.push_str("</g>\n");
    }
    out.push_str("</svg>\n");
    out
}

fn xml_escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::config::Tolerances;
    use crate::fixtures;
    use crate::frenet::frenet_apparatus;

    fn helix_table() -> FrenetTable {
        let cfg = Tolerances::default();
        let curve = fixtures::fixture("helix_ex39").unwrap().curve;
        frenet_apparatus(&curve, 64, &cfg).unwrap()
    }

    #[test]
    fn frenet_csv_shape_and_precision() {
        let table = helix_table();
        let csv = frenet_csv(&table);
        let mut lines = csv.lines();
        assert_eq!(lines.next().unwrap(), FRENET_CSV_HEADER);
        let first = lines.next().unwrap();
        let cells: Vec<&str> = first.split(',').collect();
        assert_eq!(cells.len(), 15);
        // 17 significant digits: mantissa d.16-digits, exponent suffix.
        assert!(cells[13].starts_with("5.0000000000"), "kappa cell: {}", cells[13]);
        assert!(cells[13].contains("e-"), "kappa cell: {}", cells[13]);
        assert_eq!(csv.lines().count(), 1 + table.samples().len());
        assert!(!csv.contains('\r'));

        // Byte-identical on repeated export.
        assert_eq!(csv, frenet_csv(&helix_table()));
    }

    #[test]
    fn trace_csv_carries_provenance_comment() {
        let table = helix_table();
        let csv = trace_csv("evolute_direction", &table);
        assert!(csv.starts_with("# provenance: evolute_direction\n"));
        assert_eq!(csv.lines().nth(1).unwrap(), FRENET_CSV_HEADER);
    }

    #[test]
    fn field_csv_shape() {
        let table = helix_table();
        let field = DirectionField::evolute(&table, 0.0).unwrap();
        let csv = field_csv(&field);
        assert_eq!(csv.lines().next().unwrap(), FIELD_CSV_HEADER);
        assert_eq!(csv.lines().count(), 1 + 64);
        let row: Vec<&str> = csv.lines().nth(1).unwrap().split(',').collect();
        assert_eq!(row.len(), 7);
    }

    #[test]
    fn svg_has_three_labeled_panels() {
        let points: Vec<Vec3> = (0..200)
            .map(|i| {
                let t = i as f64 * 0.05;
                Vec3::new(t.cos(), t.sin(), 0.3 * t)
            })
            .collect();
        let svg = projection_svg("demo <trace>", &points);
        assert_eq!(svg.matches("<polyline").count(), 3);
        assert_eq!(svg.matches("<rect").count(), 3);
        assert!(svg.contains("x: ["));
        assert!(svg.contains("z: ["));
        assert!(svg.contains("demo &lt;trace&gt;"));
        assert!(svg.ends_with("</svg>\n"));
    }
}
