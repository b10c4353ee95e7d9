//! Minimal PNG line and scatter plots rendered from CSV text.

use image::{Rgb, RgbImage};
use spectra_core::{Error, Result};

const WIDTH: u32 = 800;
const HEIGHT: u32 = 500;
const MARGIN: u32 = 40;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Style {
    Line,
    Scatter,
}

/// Columns `x` and `y` of a CSV with a header row; rows with an empty
/// field in either column are skipped.
pub fn columns(csv: &str, x: &str, y: &str) -> Result<Vec<(f64, f64)>> {
    let mut lines = csv.lines();
    let header: Vec<&str> = lines.next().unwrap_or("").split(',').collect();
    let find = |name: &str| {
        header
            .iter()
            .position(|h| *h == name)
            .ok_or_else(|| Error::InvalidInput(format!("CSV has no column {name:?}")))
    };
    let (ix, iy) = (find(x)?, find(y)?);
    let mut out = Vec::new();
    for line in lines {
        let fields: Vec<&str> = line.split(',').collect();
        let (Some(a), Some(b)) = (fields.get(ix), fields.get(iy)) else {
            continue;
        };
        if let (Ok(a), Ok(b)) = (a.parse::<f64>(), b.parse::<f64>()) {
            out.push((a, b));
        }
    }
    Ok(out)
}

fn bounds(v: impl Iterator<Item = f64>) -> (f64, f64) {
    let (lo, hi) = v.fold((f64::INFINITY, f64::NEG_INFINITY), |(l, h), x| (l.min(x), h.max(x)));
    if !lo.is_finite() {
        (0.0, 1.0)
    } else if hi - lo < 1e-12 {
        (lo - 0.5, hi + 0.5)
    } else {
        (lo, hi)
    }
}

fn line(img: &mut RgbImage, (x0, y0): (i64, i64), (x1, y1): (i64, i64), c: Rgb<u8>) {
    let (dx, dy) = ((x1 - x0).abs(), -(y1 - y0).abs());
    let (sx, sy) = (if x0 < x1 { 1 } else { -1 }, if y0 < y1 { 1 } else { -1 });
    let (mut x, mut y, mut err) = (x0, y0, dx + dy);
    loop {
        if x >= 0 && y >= 0 && (x as u32) < img.width() && (y as u32) < img.height() {
            img.put_pixel(x as u32, y as u32, c);
        }
        if x == x1 && y == y1 {
            break;
        }
        let e2 = 2 * err;
        if e2 >= dy {
            err += dy;
            x += sx;
        }
        if e2 <= dx {
            err += dx;
            y += sy;
        }
    }
}

/// Draw the series on white with axes along the bottom and left edges.
pub fn render(series: &[Vec<(f64, f64)>], style: Style) -> RgbImage {
    let mut img = RgbImage::from_pixel(WIDTH, HEIGHT, Rgb([255, 255, 255]));
    let all = || series.iter().flatten();
    let (xl, xh) = bounds(all().map(|p| p.0));
    let (yl, yh) = bounds(all().map(|p| p.1));
    let (w, h) = ((WIDTH - 2 * MARGIN) as f64, (HEIGHT - 2 * MARGIN) as f64);
    let to_px = |(x, y): (f64, f64)| {
        (
            MARGIN as i64 + ((x - xl) / (xh - xl) * w).round() as i64,
            (HEIGHT - MARGIN) as i64 - ((y - yl) / (yh - yl) * h).round() as i64,
        )
    };
    let black = Rgb([0, 0, 0]);
    let (m, b, r) = (MARGIN as i64, (HEIGHT - MARGIN) as i64, (WIDTH - MARGIN) as i64);
    line(&mut img, (m, b), (r, b), black);
    line(&mut img, (m, b), (m, MARGIN as i64), black);
    let colors = [Rgb([31, 119, 180]), Rgb([214, 39, 40]), Rgb([44, 160, 44])];
    for (s, c) in series.iter().zip(colors.iter().cycle()) {
        match style {
            Style::Line => {
                for pair in s.windows(2) {
                    line(&mut img, to_px(pair[0]), to_px(pair[1]), *c);
                }
            }
            Style::Scatter => {
                for &p in s {
                    let (x, y) = to_px(p);
                    for dx in -1..=1 {
                        line(&mut img, (x + dx, y - 1), (x + dx, y + 1), *c);
                    }
                }
            }
        }
    }
    img
}

pub fn save(img: &RgbImage, path: &str) -> Result<()> {
    img.save(path)
        .map_err(|e| Error::InvalidInput(format!("cannot write {path}: {e}")))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reads_columns_and_skips_blanks() {
        let csv = "t,entropy_lower,entropy_upper\n1,,\n2,0,0.5\n";
        assert_eq!(columns(csv, "t", "entropy_upper").unwrap(), vec![(2.0, 0.5)]);
        assert!(columns(csv, "t", "missing").is_err());
    }

    #[test]
    fn draws_inside_the_frame() {
        let img = render(&[vec![(0.0, 0.0), (1.0, 1.0)]], Style::Line);
        assert_eq!(img.dimensions(), (WIDTH, HEIGHT));
        let corner = img.get_pixel(WIDTH - MARGIN, MARGIN);
        assert_ne!(*corner, Rgb([255, 255, 255]));
    }
}
