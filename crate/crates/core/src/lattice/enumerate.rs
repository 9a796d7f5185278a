//! Points of an affine integer lattice inside the box `[0, p)^d`.

use num_traits::ToPrimitive;

use super::bareiss_determinant;
use crate::error::{Error, Result};

fn floor_div(a: i128, b: i128) -> i128 {
    a.div_euclid(b) - if b < 0 && a.rem_euclid(b) != 0 { 1 } else { 0 }
}

fn ceil_div(a: i128, b: i128) -> i128 {
    -floor_div(-a, b)
}

fn det_i128(m: &[Vec<i64>]) -> i128 {
    bareiss_determinant(m)
        .to_i128()
        .expect("minors of short vectors fit in i128")
}

/// `adj[r][c]` with `M^{-1} = adj / det(M)`.
fn adjugate(m: &[Vec<i64>]) -> Vec<Vec<i128>> {
    let k = m.len();
    if k == 1 {
        return vec![vec![1]];
    }
    let mut adj = vec![vec![0i128; k]; k];
    for r in 0..k {
        for c in 0..k {
            let minor: Vec<Vec<i64>> = (0..k)
                .filter(|&i| i != r)
                .map(|i| (0..k).filter(|&j| j != c).map(|j| m[i][j]).collect())
                .collect();
            let sign = if (r + c) % 2 == 0 { 1 } else { -1 };
            // transpose of the cofactor matrix
            adj[c][r] = sign * det_i128(&minor);
        }
    }
    adj
}

fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    let mut idx: Vec<usize> = (0..k).collect();
    loop {
        out.push(idx.clone());
        let Some(i) = (0..k).rev().find(|&i| idx[i] < n - k + i) else {
            return out;
        };
        idx[i] += 1;
        for j in i + 1..k {
            idx[j] = idx[j - 1] + 1;
        }
    }
}

/// Every point `anchor + sum c_j gens[j]` with all coordinates in `[0, p)`.
///
/// Coefficient ranges come from Cramer's rule on the `k x k` minor of
/// largest determinant: a point of the box differs from the anchor by less
/// than `p` per coordinate, which bounds each `c_j` through the adjugate.
/// The last coefficient is solved exactly as an interval.
pub fn enumerate_affine_in_box(anchor: &[i64], gens: &[Vec<i64>], p: i64) -> Result<Vec<Vec<i64>>> {
    let d = anchor.len();
    let k = gens.len();
    if gens.iter().any(|g| g.len() != d) || k > d {
        return Err(Error::InvalidInput(
            "generator dimensions do not match".into(),
        ));
    }
    let in_box = |x: &[i64]| x.iter().all(|&c| (0..p).contains(&c));
    if k == 0 {
        return Ok(if in_box(anchor) {
            vec![anchor.to_vec()]
        } else {
            vec![]
        });
    }

    let (minor, det) = combinations(d, k)
        .into_iter()
        .map(|cols| {
            let m: Vec<Vec<i64>> = gens
                .iter()
                .map(|g| cols.iter().map(|&c| g[c]).collect())
                .collect();
            let det = det_i128(&m);
            (m, det)
        })
        .max_by_key(|(_, det)| det.abs())
        .expect("at least one minor");
    if det == 0 {
        return Err(Error::DegenerateBasis);
    }
    let adj = adjugate(&minor);
    let bounds: Vec<i64> = (0..k)
        .map(|j| {
            let s: i128 = (0..k).map(|c| adj[c][j].abs()).sum();
            ((p as i128 - 1) * s / det.abs()) as i64
        })
        .collect();

    let mut out = Vec::new();
    let mut coeffs = vec![0i64; k - 1];
    let mut base = anchor.to_vec();
    descend(0, k, gens, &bounds, p, &mut coeffs, &mut base, &mut out);
    out.sort();
    Ok(out)
}

#[allow(clippy::too_many_arguments)]
fn descend(
    level: usize,
    k: usize,
    gens: &[Vec<i64>],
    bounds: &[i64],
    p: i64,
    coeffs: &mut Vec<i64>,
    base: &mut Vec<i64>,
    out: &mut Vec<Vec<i64>>,
) {
    if level == k - 1 {
        let g = &gens[k - 1];
        let (mut lo, mut hi) = (i128::MIN, i128::MAX);
        for (&b, &gi) in base.iter().zip(g) {
            let (b, gi) = (b as i128, gi as i128);
            if gi == 0 {
                if !(0..p as i128).contains(&b) {
                    return;
                }
                continue;
            }
            // 0 <= b + c gi <= p - 1
            let (a, z) = if gi > 0 {
                (ceil_div(-b, gi), floor_div(p as i128 - 1 - b, gi))
            } else {
                (ceil_div(p as i128 - 1 - b, gi), floor_div(-b, gi))
            };
            lo = lo.max(a);
            hi = hi.min(z);
        }
        for c in lo..=hi {
            out.push(
                base.iter()
                    .zip(g)
                    .map(|(&b, &gi)| b + c as i64 * gi)
                    .collect(),
            );
        }
        return;
    }
    let g = &gens[level];
    for c in -bounds[level]..=bounds[level] {
        coeffs[level] = c;
        for (b, &gi) in base.iter_mut().zip(g) {
            *b += c * gi;
        }
        descend(level + 1, k, gens, bounds, p, coeffs, base, out);
        for (b, &gi) in base.iter_mut().zip(g) {
            *b -= c * gi;
        }
    }
}
