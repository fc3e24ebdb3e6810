//! Facets of `conv(points) + R^o_+` by brute-force enumeration of
//! supporting hyperplanes through `o` generators (points or unit rays).

use itertools::Itertools;

const RANK_TOL: f64 = 1e-10;
const SUPPORT_TOL: f64 = 1e-9;

/// Supporting hyperplane `normal·y = offset` with `normal >= 0`, unit length,
/// and every point on the side `normal·y >= offset`.
#[derive(Debug, Clone, PartialEq)]
pub(crate) struct Facet {
    pub normal: Vec<f64>,
    pub offset: f64,
}

/// Unique (up to scale) null vector of a `(d - 1) x d` matrix, if the rank
/// is exactly `d - 1`.
fn null_vector(mut rows: Vec<Vec<f64>>, d: usize) -> Option<Vec<f64>> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..d {
        if r == rows.len() {
            break;
        }
        let (best, value) = (r..rows.len())
            .map(|i| (i, rows[i][c].abs()))
            .max_by(|a, b| a.1.total_cmp(&b.1))?;
        if value <= RANK_TOL {
            continue;
        }
        rows.swap(r, best);
        let p = rows[r][c];
        rows[r].iter_mut().for_each(|v| *v /= p);
        let pivot_row = rows[r].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            let f = row[c];
            if i != r && f != 0.0 {
                row.iter_mut()
                    .zip(&pivot_row)
                    .for_each(|(v, p)| *v -= f * p);
            }
        }
        pivots.push(c);
        r += 1;
    }
    if pivots.len() + 1 != d {
        return None;
    }
    let free = (0..d).find(|c| !pivots.contains(c))?;
    let mut v = vec![0.0; d];
    v[free] = 1.0;
    for (i, &c) in pivots.iter().enumerate() {
        v[c] = -rows[i][free];
    }
    Some(v)
}

pub(crate) fn dominated_hull_facets(points: &[Vec<f64>]) -> Vec<Facet> {
    let Some(first) = points.first() else {
        return Vec::new();
    };
    let d = first.len();
    let scale = points
        .iter()
        .flat_map(|p| p.iter().map(|v| v.abs()))
        .fold(1.0, f64::max);
    let generators = points.len() + d;
    let mut facets: Vec<Facet> = Vec::new();
    for subset in (0..generators).combinations(d) {
        // Combinations are sorted, so the first index is a point if any is.
        if subset[0] >= points.len() {
            continue;
        }
        let base = &points[subset[0]];
        let rows: Vec<Vec<f64>> = subset[1..]
            .iter()
            .map(|&g| {
                if g < points.len() {
                    points[g].iter().zip(base).map(|(a, b)| a - b).collect()
                } else {
                    let mut e = vec![0.0; d];
                    e[g - points.len()] = 1.0;
                    e
                }
            })
            .collect();
        let Some(mut normal) = null_vector(rows, d) else {
            continue;
        };
        let norm = normal.iter().map(|v| v * v).sum::<f64>().sqrt();
        normal.iter_mut().for_each(|v| *v /= norm);
        if normal.iter().all(|v| *v <= RANK_TOL) {
            normal.iter_mut().for_each(|v| *v = -*v);
        }
        if normal.iter().any(|v| *v < -RANK_TOL) {
            continue;
        }
        normal.iter_mut().for_each(|v| *v = v.max(0.0));
        let offset: f64 = normal.iter().zip(base).map(|(a, b)| a * b).sum();
        let tol = SUPPORT_TOL * scale;
        let supports = points
            .iter()
            .all(|p| normal.iter().zip(p).map(|(a, b)| a * b).sum::<f64>() >= offset - tol);
        if !supports {
            continue;
        }
        let duplicate = facets.iter().any(|f| {
            (f.offset - offset).abs() <= tol
                && f.normal
                    .iter()
                    .zip(&normal)
                    .all(|(a, b)| (a - b).abs() <= 1e-9)
        });
        if !duplicate {
            facets.push(Facet { normal, offset });
        }
    }
    facets
}
