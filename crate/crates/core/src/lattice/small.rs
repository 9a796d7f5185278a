//! Pigeonhole searches for short multiples of a residue vector in three
//! dimensions, and central points of the multiple set.

use std::collections::{BTreeMap, HashMap};

use serde::Serialize;

use super::{cross, sup_norm, symmetric_residue};
use crate::error::{Error, Result};
use crate::modular::ResidueVector;

/// Largest `m` with `m^3 * k <= p`, at least 1.
fn cube_root_below(p: u64, k: u64) -> u64 {
    let mut m = 1;
    while (m + 1) * (m + 1) * (m + 1) * k <= p {
        m += 1;
    }
    m
}

fn symmetric_multiple(t: &ResidueVector, j: u64) -> Vec<i64> {
    let p = t.p() as i64;
    t.multiple(j)
        .into_iter()
        .map(|x| symmetric_residue(x as i64, p))
        .collect()
}

fn bucket(point: &[u64], m: u64, p: u64) -> Vec<u64> {
    point.iter().map(|&x| x * m / p).collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SmallVector {
    /// Symmetric representative of `multiplier * t mod p`.
    pub vector: Vec<i64>,
    pub multiplier: u64,
    /// `max |vector_i|`.
    pub size: i64,
    /// Grid resolution `m`; the guarantee is `size <= ceil(p / m)`.
    pub grid: u64,
}

/// Buckets the multiples `k t mod p` (k ascending) into an `m^3` grid with
/// `m^3 < p` and returns the difference of the first colliding pair.
pub fn small_vector_3d(t: &ResidueVector) -> Result<SmallVector> {
    if t.d() != 3 {
        return Err(Error::InvalidInput(format!(
            "small_vector_3d needs d = 3, got {}",
            t.d()
        )));
    }
    let p = t.p();
    let mut m = cube_root_below(p, 1);
    if m * m * m == p {
        m -= 1;
    }
    let m = m.max(1);
    let mut first: HashMap<Vec<u64>, u64> = HashMap::new();
    for k in 0..p {
        let key = bucket(&t.multiple(k), m, p);
        if let Some(&k0) = first.get(&key) {
            let multiplier = k - k0;
            let vector = symmetric_multiple(t, multiplier);
            let size = sup_norm(&vector);
            let bound = p.div_ceil(m) as i64;
            if size > bound {
                return Err(Error::invariant(
                    "short-vector-bound",
                    format!("size {size} exceeds ceil(p/m) = {bound}"),
                ));
            }
            return Ok(SmallVector {
                vector,
                multiplier,
                size,
                grid: m,
            });
        }
        first.insert(key, k);
    }
    Err(Error::invariant(
        "short-vector-bound",
        format!("no collision among {p} points in {m}^3 buckets"),
    ))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IndependentPair {
    pub v1: Vec<i64>,
    pub v2: Vec<i64>,
    pub s1: i64,
    pub s2: i64,
    /// Bucket occupancy threshold is `k + 1`.
    pub k: u64,
    pub grid: u64,
    pub used_fallback: bool,
}

/// Smallest integer `c` with `c >= p / s^(3/2)`, i.e. `c^2 s^3 >= p^2`.
fn ceil_p_over_s_three_halves(p: u64, s: u64) -> u64 {
    let s3 = (s as u128).pow(3);
    let p2 = (p as u128).pow(2);
    let mut c = ((p as f64) / (s as f64).powf(1.5)).floor().max(0.0) as u128;
    while c > 0 && (c - 1) * (c - 1) * s3 >= p2 {
        c -= 1;
    }
    while c * c * s3 < p2 {
        c += 1;
    }
    c as u64
}

fn is_parallel(a: &[i64], b: &[i64]) -> bool {
    cross(a, b) == [0, 0, 0]
}

/// A second short multiple not parallel to the first one.
///
/// Multiples are bucketed into an `m^3` grid with `m^3 k <= p`; in the first
/// bucket with at least `k + 1` points the non-parallel difference of least
/// sup-norm wins. If no bucket yields one, every lattice vector of sup-norm
/// at most `p` is tried.
pub fn independent_pair_3d(t: &ResidueVector) -> Result<IndependentPair> {
    let first = small_vector_3d(t)?;
    let p = t.p();
    let v1 = first.vector;
    let s1 = first.size;
    let k = ceil_p_over_s_three_halves(p, s1 as u64) + 1;
    let m = cube_root_below(p, k);

    let mut buckets: BTreeMap<Vec<u64>, Vec<u64>> = BTreeMap::new();
    for j in 0..p {
        buckets
            .entry(bucket(&t.multiple(j), m, p))
            .or_default()
            .push(j);
    }
    let mut best: Option<(i64, Vec<i64>)> = None;
    for members in buckets.values().filter(|b| b.len() as u64 > k) {
        for (x, &a) in members.iter().enumerate() {
            for &b in &members[x + 1..] {
                let diff = symmetric_multiple(t, b - a);
                if is_parallel(&diff, &v1) {
                    continue;
                }
                let s = sup_norm(&diff);
                if best.as_ref().is_none_or(|(bs, _)| s < *bs) {
                    best = Some((s, diff));
                }
            }
        }
        if best.is_some() {
            break;
        }
    }
    let used_fallback = best.is_none();
    if used_fallback {
        // Differences of multiples can all be parallel (t = (1,1) is the
        // extreme case), so widen the search to every lattice vector with
        // sup-norm at most p: each coordinate takes a representative r or
        // r - p, with p also allowed when r = 0.
        let pi = p as i64;
        for j in 0..p {
            let residues: Vec<i64> = t.multiple(j).into_iter().map(|x| x as i64).collect();
            let choices: Vec<Vec<i64>> = residues
                .iter()
                .map(|&r| {
                    if r == 0 {
                        vec![0, pi, -pi]
                    } else {
                        vec![r, r - pi]
                    }
                })
                .collect();
            for a in &choices[0] {
                for b in &choices[1] {
                    for c in &choices[2] {
                        let v = vec![*a, *b, *c];
                        if v == [0, 0, 0] || is_parallel(&v, &v1) {
                            continue;
                        }
                        let s = sup_norm(&v);
                        if best.as_ref().is_none_or(|(bs, _)| s < *bs) {
                            best = Some((s, v));
                        }
                    }
                }
            }
        }
    }
    let (s2, v2) = best
        .ok_or_else(|| Error::invariant("independent-pair", "every multiple is parallel to v1"))?;
    if !t.contains(&v2) || is_parallel(&v1, &v2) {
        return Err(Error::invariant(
            "independent-pair",
            "v2 is not an independent multiple",
        ));
    }
    Ok(IndependentPair {
        v1,
        v2,
        s1,
        s2,
        k,
        grid: m,
        used_fallback,
    })
}

/// Closed boxes around the center of `[0, p]^d`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Region {
    /// `[p/6, 5p/6]^3`.
    Central3,
    /// `[p/(2d), p(2d-1)/(2d)]^d`.
    CentralD,
}

impl Region {
    pub fn name(self) -> &'static str {
        match self {
            Region::Central3 => "[p/6, 5p/6]^3",
            Region::CentralD => "[p/(2d), p(2d-1)/(2d)]^d",
        }
    }

    fn contains(self, x: u64, p: u64, d: usize) -> bool {
        let q = match self {
            Region::Central3 => 6,
            Region::CentralD => 2 * d as u64,
        };
        q * x >= p && q * x <= p * (q - 1)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct InteriorPoint {
    pub k: u64,
    pub point: Vec<u64>,
}

/// First multiple `k t mod p`, scanning `k = 0..p-1`, inside the region.
pub fn interior_point(t: &ResidueVector, region: Region) -> Result<InteriorPoint> {
    if region == Region::Central3 && t.d() != 3 {
        return Err(Error::InvalidInput(
            "the [p/6, 5p/6]^3 region needs d = 3".into(),
        ));
    }
    let (p, d) = (t.p(), t.d());
    (0..p)
        .map(|k| (k, t.multiple(k)))
        .find(|(_, pt)| pt.iter().all(|&x| region.contains(x, p, d)))
        .map(|(k, point)| InteriorPoint { k, point })
        .ok_or(Error::NoInteriorPoint(region.name()))
}
