//! File formats: CSV tables, JSON reports, run manifests and SVG figures.

use std::fmt::Write as _;
use std::io::{Read, Write};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::action::{ActionPath, LogEntry, WellPotential};
use crate::dynamics::{residual_profile, Trajectory, TrajectorySample};
use crate::error::{Error, Result};
use crate::geodesic::GeodesicCurve;
use crate::potential::{Potential, PotentialSpec};

pub const CURVE_HEADER: [&str; 5] = ["l", "re_z", "im_z", "W", "levelset_residual"];
pub const TRAJECTORY_HEADER: [&str; 6] = ["x", "re_u", "im_u", "W", "equip_residual", "el_residual"];

fn num(v: f64) -> String {
    if v.is_nan() {
        "nan".into()
    } else if v == 0.0 || (1e-4..1e15).contains(&v.abs()) {
        format!("{v}")
    } else {
        format!("{v:e}")
    }
}

fn csv_err(e: csv::Error) -> Error {
    let line = e.position().map(|p| p.line() as usize).unwrap_or(0);
    match e.into_kind() {
        csv::ErrorKind::Io(io) => Error::Io(io),
        other => Error::Parse { line, msg: format!("{other:?}") },
    }
}

/// `l,re_z,im_z,W,levelset_residual`, one row per sample.
pub fn write_curve_csv(out: impl Write, pot: &Potential, curve: &GeodesicCurve) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(CURVE_HEADER).map_err(csv_err)?;
    let ga = pot.g(curve.alpha, curve.branch)?;
    let span = pot.g(curve.beta, curve.branch)? - ga;
    for s in &curve.samples {
        let res = ((pot.g(s.z, curve.branch)? - ga) / span).im.abs();
        w.write_record([num(s.l), num(s.z.re), num(s.z.im), num(pot.w(s.z)?), num(res)])
            .map_err(csv_err)?;
    }
    w.flush()?;
    Ok(())
}

/// `x,re_u,im_u,W,equip_residual,el_residual`; residuals are `nan` where
/// they are not evaluated.
pub fn write_trajectory_csv(out: impl Write, pot: &Potential, traj: &Trajectory) -> Result<()> {
    let profile = residual_profile(pot, traj)?;
    let mut w = csv::Writer::from_writer(out);
    w.write_record(TRAJECTORY_HEADER).map_err(csv_err)?;
    for (j, s) in traj.samples.iter().enumerate() {
        let eq = profile.equipartition[j].unwrap_or(f64::NAN);
        let el = profile.euler_lagrange[j].unwrap_or(f64::NAN);
        w.write_record([num(s.x), num(s.u.re), num(s.u.im), num(pot.w(s.u)?), num(eq), num(el)])
            .map_err(csv_err)?;
    }
    w.flush()?;
    Ok(())
}

/// Reads the `x, u` columns of a trajectory table. Errors carry the 1-based
/// line number.
pub fn read_trajectory_csv(input: impl Read) -> Result<Vec<TrajectorySample>> {
    let mut r = csv::ReaderBuilder::new().has_headers(true).from_reader(input);
    let header = r.headers().map_err(csv_err)?.clone();
    let cols: Vec<&str> = header.iter().map(str::trim).collect();
    if cols.len() < 3 || cols[..3] != TRAJECTORY_HEADER[..3] {
        return Err(Error::Parse { line: 1, msg: format!("expected header starting with x,re_u,im_u, got {}", cols.join(",")) });
    }
    let mut samples = Vec::new();
    for rec in r.records() {
        let rec = rec.map_err(csv_err)?;
        let line = rec.position().map(|p| p.line() as usize).unwrap_or(0);
        let field = |k: usize| -> Result<f64> {
            let raw = rec.get(k).ok_or_else(|| Error::Parse { line, msg: format!("missing column {}", cols[k]) })?;
            let v: f64 = raw
                .trim()
                .parse()
                .map_err(|_| Error::Parse { line, msg: format!("column {}: `{raw}` is not a number", cols[k]) })?;
            if v.is_finite() {
                Ok(v)
            } else {
                Err(Error::Parse { line, msg: format!("column {} is not finite", cols[k]) })
            }
        };
        let x = field(0)?;
        if let Some(prev) = samples.last().map(|s: &TrajectorySample| s.x) {
            if !(x > prev) {
                return Err(Error::Parse { line, msg: format!("x = {x} does not increase") });
            }
        }
        samples.push(TrajectorySample { x, u: Complex64::new(field(1)?, field(2)?) });
    }
    if samples.len() < 5 {
        return Err(Error::Parse { line: samples.len() + 1, msg: "need at least 5 samples".into() });
    }
    Ok(samples)
}

/// `x,u_1,…,u_N,W`.
pub fn write_path_csv(out: impl Write, pot: &WellPotential, path: &ActionPath) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    let mut header = vec!["x".to_string()];
    header.extend((1..=path.dim).map(|d| format!("u_{d}")));
    header.push("W".into());
    w.write_record(&header).map_err(csv_err)?;
    for i in 0..path.len() {
        let u = path.node(i);
        let mut row = vec![num(path.x(i))];
        row.extend(u.iter().map(|v| num(*v)));
        row.push(num(pot.value(u)));
        w.write_record(&row).map_err(csv_err)?;
    }
    w.flush()?;
    Ok(())
}

/// One JSON object per line.
pub fn write_log_jsonl(mut out: impl Write, log: &[LogEntry]) -> Result<()> {
    for entry in log {
        serde_json::to_writer(&mut out, entry)?;
        out.write_all(b"\n")?;
    }
    Ok(())
}

pub fn write_json<T: Serialize>(mut out: impl Write, value: &T) -> Result<()> {
    serde_json::to_writer_pretty(&mut out, value)?;
    out.write_all(b"\n")?;
    Ok(())
}

/// SHA-256 of the spec's JSON form, hex encoded.
pub fn spec_hash(spec: &PotentialSpec) -> Result<String> {
    let bytes = serde_json::to_vec(spec)?;
    Ok(hex::encode(Sha256::digest(&bytes)))
}

/// Record of one command-line run.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct RunManifest {
    pub command: String,
    pub spec_hash: Option<String>,
    pub parameters: serde_json::Value,
    pub outputs: Vec<String>,
    pub verdicts: serde_json::Map<String, serde_json::Value>,
    pub wall_time_s: f64,
}

struct Frame {
    x0: f64,
    y0: f64,
    scale: f64,
    ox: f64,
    oy: f64,
}

impl Frame {
    /// Fits `points` into a `size × size` box at `(ox, oy)`, y pointing up.
    fn fit(points: &[Complex64], ox: f64, oy: f64, size: f64) -> Self {
        let (mut lo, mut hi) = (Complex64::new(f64::INFINITY, f64::INFINITY), Complex64::new(f64::NEG_INFINITY, f64::NEG_INFINITY));
        for p in points {
            lo = Complex64::new(lo.re.min(p.re), lo.im.min(p.im));
            hi = Complex64::new(hi.re.max(p.re), hi.im.max(p.im));
        }
        let extent = (hi.re - lo.re).max(hi.im - lo.im).max(1e-12) * 1.15;
        let mid = (lo + hi) * 0.5;
        Self { x0: mid.re - extent / 2.0, y0: mid.im - extent / 2.0, scale: size / extent, ox, oy: oy + size }
    }

    fn map(&self, z: Complex64) -> (f64, f64) {
        (self.ox + (z.re - self.x0) * self.scale, self.oy - (z.im - self.y0) * self.scale)
    }

    fn polyline(&self, pts: &[Complex64], style: &str) -> String {
        let mut d = String::new();
        for p in pts {
            let (x, y) = self.map(*p);
            let _ = write!(d, "{x:.2},{y:.2} ");
        }
        format!("<polyline fill=\"none\" {style} points=\"{}\"/>\n", d.trim_end())
    }
}

/// Static figure: the curve with the minima marked, and an inset showing the
/// image of the curve in the `g`-plane against the straight segment.
pub fn write_svg(mut out: impl Write, pot: &Potential, curve: &GeodesicCurve) -> Result<()> {
    let size = 480.0;
    let pts = curve.points();
    let mut frame_pts = pts.clone();
    frame_pts.extend_from_slice(pot.minima());
    let main = Frame::fit(&frame_pts, 20.0, 20.0, size);

    let mut svg = String::new();
    let _ = writeln!(svg, "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{w}\" height=\"{w}\" viewBox=\"0 0 {w} {w}\">", w = size + 40.0);
    svg.push_str("<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n");
    svg.push_str(&main.polyline(&pts, "stroke=\"#1f4e9c\" stroke-width=\"2\""));
    for (k, m) in pot.minima().iter().enumerate() {
        let (x, y) = main.map(*m);
        let _ = writeln!(svg, "<circle cx=\"{x:.2}\" cy=\"{y:.2}\" r=\"4\" fill=\"#c0392b\"/>");
        let _ = writeln!(svg, "<text x=\"{:.2}\" y=\"{:.2}\" font-size=\"12\" font-family=\"sans-serif\">{k}</text>", x + 6.0, y - 6.0);
    }

    let images: Vec<Complex64> = pts.iter().map(|z| pot.g(*z, curve.branch)).collect::<Result<_>>()?;
    let (ga, gb) = (images[0], images[images.len() - 1]);
    let inset = Frame::fit(&images, size + 20.0 - 150.0, 30.0, 140.0);
    let _ = writeln!(svg, "<rect x=\"{:.2}\" y=\"30\" width=\"140\" height=\"140\" fill=\"white\" stroke=\"#888\"/>", size + 20.0 - 150.0);
    svg.push_str(&inset.polyline(&[ga, gb], "stroke=\"#bbb\" stroke-width=\"4\""));
    svg.push_str(&inset.polyline(&images, "stroke=\"#1f4e9c\" stroke-width=\"1.5\""));
    let _ = writeln!(svg, "<text x=\"{:.2}\" y=\"185\" font-size=\"11\" font-family=\"sans-serif\">g-plane, L = {:.6}</text>", size + 20.0 - 150.0, curve.length);
    svg.push_str("</svg>\n");
    out.write_all(svg.as_bytes())?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::Family;
    use crate::dynamics::{reparametrize, ReparamOptions};
    use crate::geodesic::{trace, TraceOptions};
    use crate::potential::BranchTag;

    #[test]
    fn trajectory_round_trip() {
        let pot = Family::TripleWell(3).potential(2.0).unwrap();
        let m = pot.minima().to_vec();
        let curve = trace(&pot, m[0], m[1], BranchTag::None, &TraceOptions::default()).unwrap();
        let traj = reparametrize(&pot, &curve, &ReparamOptions { x_span: 4.0, dx: 1e-2 }).unwrap();
        let mut buf = Vec::new();
        write_trajectory_csv(&mut buf, &pot, &traj).unwrap();
        let back = read_trajectory_csv(buf.as_slice()).unwrap();
        assert_eq!(back, traj.samples);
    }

    #[test]
    fn malformed_rows_report_line_numbers() {
        let text = "x,re_u,im_u,W,equip_residual,el_residual\n0,1,0,0,nan,nan\n0.1,abc,0,0,nan,nan\n";
        match read_trajectory_csv(text.as_bytes()) {
            Err(Error::Parse { line, .. }) => assert_eq!(line, 3),
            other => panic!("{other:?}"),
        }
        let text = "x,re_u,im_u\n0,1,0\n0.1,1\n";
        assert!(matches!(read_trajectory_csv(text.as_bytes()), Err(Error::Parse { line: 3, .. })));
        assert!(matches!(read_trajectory_csv("a,b,c\n".as_bytes()), Err(Error::Parse { line: 1, .. })));
    }

    #[test]
    fn spec_hash_is_stable() {
        let a = spec_hash(&Family::TripleWell(3).spec(2.0)).unwrap();
        assert_eq!(a, spec_hash(&Family::TripleWell(3).spec(2.0)).unwrap());
        assert_ne!(a, spec_hash(&Family::TripleWell(3).spec(3.0)).unwrap());
        assert_eq!(a.len(), 64);
    }

    #[test]
    fn svg_is_well_formed() {
        let pot = Family::TripleWell(3).potential(2.0).unwrap();
        let m = pot.minima().to_vec();
        let curve = trace(&pot, m[0], m[1], BranchTag::None, &TraceOptions::default()).unwrap();
        let mut buf = Vec::new();
        write_svg(&mut buf, &pot, &curve).unwrap();
        let s = String::from_utf8(buf).unwrap();
        assert!(s.starts_with("<svg") && s.trim_end().ends_with("</svg>"));
        assert_eq!(s.matches("<circle").count(), 3);
    }
}
