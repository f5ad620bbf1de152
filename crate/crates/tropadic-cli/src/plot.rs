//! SVG of the region `ω + σ` in `N_ℝ = ℝ²` with the images of sample primes.

use rand::Rng;
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};
use std::fmt::Write;
use tropadic::spectrum::{extends_to_cnvg, phi};
use tropadic::{Error, ExtScalar, FieldScalar, PrimeCongruence, Result};

const PX: f64 = 40.0;

pub struct Plot {
    pub svg: String,
    pub samples: Vec<Value>,
}

fn finite_point(values: &[ExtScalar]) -> Option<(f64, f64)> {
    match values {
        [ExtScalar::Finite(a), ExtScalar::Finite(b)] => Some((a.to_f64(), b.to_f64())),
        _ => None,
    }
}

/// Random rational primes `(1 a b)` on a quarter grid around `ω`.
pub fn random_samples(p: &PrimeCongruence, omega: (f64, f64), count: usize, rng: &mut ChaCha8Rng) -> Result<Vec<PrimeCongruence>> {
    let (cx, cy) = (omega.0.round() as i64, omega.1.round() as i64);
    (0..count)
        .map(|_| {
            let a = FieldScalar::from_int(cx * 4 + rng.gen_range(-12..=12)).scale(&tropadic::scalar::rat(1, 4));
            let b = FieldScalar::from_int(cy * 4 + rng.gen_range(-12..=12)).scale(&tropadic::scalar::rat(1, 4));
            PrimeCongruence::from_finite(p.monoid().clone(), p.gamma().clone(), vec![vec![FieldScalar::one(), a, b]])
        })
        .collect()
}

pub fn omega(p: &PrimeCongruence) -> Result<(f64, f64)> {
    if p.rank() != 2 {
        return Err(Error::DimensionMismatch { expected: 2, got: p.rank() });
    }
    finite_point(&phi(p)?.values).ok_or(Error::NotInContInterior)
}

pub fn render(p: &PrimeCongruence, samples: &[PrimeCongruence]) -> Result<Plot> {
    let w = omega(p)?;
    let mut pts = Vec::new();
    let mut info = Vec::new();
    for s in samples {
        let ok = extends_to_cnvg(s, p)?;
        let img = phi(s)?;
        let at = finite_point(&img.values);
        if let Some(xy) = at {
            pts.push((xy, ok));
        }
        info.push(json!({
            "prime": crate::json::prime(s),
            "phi": img.values.iter().map(crate::json::ext).collect::<Vec<_>>(),
            "extends": ok,
            "drawn": at.is_some(),
        }));
    }
    let r = pts
        .iter()
        .map(|((x, y), _)| (x - w.0).abs().max((y - w.1).abs()) + 1.0)
        .fold(3.0f64, f64::max)
        .ceil();
    let to_px = |x: f64, y: f64| ((x - w.0 + r) * PX, (w.1 + r - y) * PX);
    let size = 2.0 * r * PX;
    let mut svg = String::new();
    let _ = writeln!(svg, r#"<svg xmlns="http://www.w3.org/2000/svg" width="{size:.0}" height="{size:.0}" viewBox="0 0 {size:.0} {size:.0}">"#);
    let _ = writeln!(svg, r#"<rect width="100%" height="100%" fill="white"/>"#);
    let (lo_x, hi_x) = ((w.0 - r).ceil() as i64, (w.0 + r).floor() as i64);
    let (lo_y, hi_y) = ((w.1 - r).ceil() as i64, (w.1 + r).floor() as i64);
    for gx in lo_x..=hi_x {
        let (x, _) = to_px(gx as f64, 0.0);
        let stroke = if gx == 0 { "#888" } else { "#eee" };
        let _ = writeln!(svg, r#"<line x1="{x:.2}" y1="0" x2="{x:.2}" y2="{size:.0}" stroke="{stroke}"/>"#);
    }
    for gy in lo_y..=hi_y {
        let (_, y) = to_px(0.0, gy as f64);
        let stroke = if gy == 0 { "#888" } else { "#eee" };
        let _ = writeln!(svg, r#"<line x1="0" y1="{y:.2}" x2="{size:.0}" y2="{y:.2}" stroke="{stroke}"/>"#);
    }
    let sigma = p.monoid().sigma();
    let far = 4.0 * r;
    let ray = |v: &Vec<i64>| {
        let n = ((v[0] * v[0] + v[1] * v[1]) as f64).sqrt();
        (w.0 + far * v[0] as f64 / n, w.1 + far * v[1] as f64 / n)
    };
    let (ox, oy) = to_px(w.0, w.1);
    match sigma.rays() {
        [] => {}
        [a] => {
            let (x, y) = ray(a);
            let (x, y) = to_px(x, y);
            let _ = writeln!(svg, r##"<line x1="{ox:.2}" y1="{oy:.2}" x2="{x:.2}" y2="{y:.2}" stroke="#3b6fb6" stroke-width="4"/>"##);
        }
        rays => {
            let mut poly = format!("{ox:.2},{oy:.2}");
            let (a, b) = (ray(&rays[0]), ray(&rays[1]));
            for (x, y) in [a, (a.0 + b.0 - w.0, a.1 + b.1 - w.1), b] {
                let (x, y) = to_px(x, y);
                let _ = write!(poly, " {x:.2},{y:.2}");
            }
            let _ = writeln!(svg, r##"<polygon points="{poly}" fill="#3b6fb6" fill-opacity="0.25" stroke="#3b6fb6"/>"##);
        }
    }
    let _ = writeln!(svg, r#"<circle cx="{ox:.2}" cy="{oy:.2}" r="5" fill="black"/>"#);
    for ((x, y), ok) in &pts {
        let (x, y) = to_px(*x, *y);
        let fill = if *ok { "#2a9d3a" } else { "#c8372d" };
        let _ = writeln!(svg, r#"<circle cx="{x:.2}" cy="{y:.2}" r="3.5" fill="{fill}"/>"#);
    }
    svg.push_str("</svg>\n");
    Ok(Plot { svg, samples: info })
}
