//! Residue vectors modulo a prime, the height of a residue vector, its dual
//! height, and the numeric check tying the two together.

use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Deterministic trial division; inputs here never exceed a few thousand.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n % 2 == 0 {
        return n == 2;
    }
    let mut f = 3;
    while f * f <= n {
        if n % f == 0 {
            return false;
        }
        f += 2;
    }
    true
}

/// Largest prime not exceeding `n`.
pub fn next_prime_leq(n: u64) -> Result<u64> {
    if n < 3 {
        return Err(Error::InvalidInput(format!(
            "next_prime_leq needs n >= 3, got {n}"
        )));
    }
    Ok((2..=n).rev().find(|&m| is_prime(m)).expect("2 is prime"))
}

/// Odd primes in `[lo, hi]`, ascending.
pub fn odd_primes_between(lo: u64, hi: u64) -> Vec<u64> {
    (lo.max(3)..=hi).filter(|&m| is_prime(m)).collect()
}

/// Orientation of one coordinate inside a family of visibility posets.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Sign {
    #[serde(rename = "+")]
    Plus,
    #[serde(rename = "-")]
    Minus,
}

impl Sign {
    pub fn is_minus(self) -> bool {
        self == Sign::Minus
    }
}

impl fmt::Display for Sign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Sign::Plus => "+",
            Sign::Minus => "-",
        })
    }
}

/// Every sign vector of length `len`, in lexicographic order with `+`
/// before `-`.
pub fn all_sign_vectors(len: usize) -> Vec<Vec<Sign>> {
    (0..1usize << len)
        .map(|mask| {
            (0..len)
                .map(|i| {
                    if mask >> (len - 1 - i) & 1 == 1 {
                        Sign::Minus
                    } else {
                        Sign::Plus
                    }
                })
                .collect()
        })
        .collect()
}

/// The residue vector `(t_1, ..., t_{d-1}, 1)` modulo an odd prime `p`.
///
/// Only the free coordinates are stored; the trailing 1 is implicit.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct ResidueVector {
    p: u64,
    coords: Vec<u64>,
}

impl ResidueVector {
    pub fn new(p: u64, coords: Vec<u64>) -> Result<Self> {
        if p < 3 || !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        if coords.len() < 2 {
            return Err(Error::InvalidResidue(format!(
                "dimension {} is below 3",
                coords.len() + 1
            )));
        }
        if let Some(&bad) = coords.iter().find(|&&c| c == 0 || c >= p) {
            return Err(Error::InvalidResidue(format!(
                "coordinate {bad} is outside [1, {}]",
                p - 1
            )));
        }
        Ok(ResidueVector { p, coords })
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    /// Ambient dimension, counting the implicit last coordinate.
    pub fn d(&self) -> usize {
        self.coords.len() + 1
    }

    /// The free coordinates `t_1, ..., t_{d-1}`.
    pub fn coords(&self) -> &[u64] {
        &self.coords
    }

    /// The full vector including the trailing 1.
    pub fn full(&self) -> Vec<u64> {
        let mut v = self.coords.clone();
        v.push(1);
        v
    }

    /// `k * t mod p` coordinate-wise, with the last coordinate `k mod p`.
    pub fn multiple(&self, k: u64) -> Vec<u64> {
        let k = k % self.p;
        let mut v: Vec<u64> = self.coords.iter().map(|&t| t * k % self.p).collect();
        v.push(k);
        v
    }

    /// Replaces `t_i` by `p - t_i` wherever the sign is minus.
    pub fn flipped(&self, signs: &[Sign]) -> ResidueVector {
        assert_eq!(
            signs.len(),
            self.coords.len(),
            "one sign per free coordinate"
        );
        let coords = self
            .coords
            .iter()
            .zip(signs)
            .map(|(&t, s)| if s.is_minus() { self.p - t } else { t })
            .collect();
        ResidueVector { p: self.p, coords }
    }

    /// `(t_1 - 1, ..., t_{d-1} - 1, 1)`; needs every `t_i >= 2`.
    pub fn shifted_down(&self) -> Result<ResidueVector> {
        if let Some(i) = self.coords.iter().position(|&t| t < 2) {
            return Err(Error::InvalidResidue(format!(
                "coordinate t_{} = 1 has no shifted counterpart",
                i + 1
            )));
        }
        ResidueVector::new(self.p, self.coords.iter().map(|t| t - 1).collect())
    }

    /// Whether `v` is congruent to some multiple of this vector mod `p`.
    pub fn contains(&self, v: &[i64]) -> bool {
        if v.len() != self.d() {
            return false;
        }
        let p = self.p as i64;
        let k = v[self.d() - 1].rem_euclid(p);
        self.coords
            .iter()
            .zip(v)
            .all(|(&t, &x)| x.rem_euclid(p) == (t as i64 * k).rem_euclid(p))
    }

    /// Every residue vector for `(p, d)`, in lexicographic order.
    pub fn enumerate(p: u64, d: usize) -> Result<Vec<ResidueVector>> {
        if p < 3 || !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        if d < 3 {
            return Err(Error::InvalidResidue(format!("dimension {d} is below 3")));
        }
        let free = d - 1;
        let total = (p - 1).pow(free as u32);
        let mut out = Vec::with_capacity(total as usize);
        let mut cur = vec![1u64; free];
        for _ in 0..total {
            out.push(ResidueVector {
                p,
                coords: cur.clone(),
            });
            for i in (0..free).rev() {
                if cur[i] + 1 < p {
                    cur[i] += 1;
                    break;
                }
                cur[i] = 1;
            }
        }
        Ok(out)
    }

    /// A uniformly random residue vector.
    pub fn random<R: Rng + ?Sized>(p: u64, d: usize, rng: &mut R) -> Result<ResidueVector> {
        let coords = (0..d.saturating_sub(1))
            .map(|_| rng.random_range(1..p))
            .collect();
        ResidueVector::new(p, coords)
    }
}

impl fmt::Display for ResidueVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.coords.iter().map(u64::to_string).collect();
        write!(f, "({}; p={})", parts.join(","), self.p)
    }
}

/// `h_p(t)` together with the smallest multiplier attaining it.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Height {
    pub value: u64,
    pub multiplier: u64,
}

/// Minimum over `a` in `1..p` of the largest coordinate of `a * t mod p`.
pub fn height(t: &ResidueVector) -> Height {
    let p = t.p;
    let mut residues = vec![0u64; t.coords.len()];
    let mut best = Height {
        value: u64::MAX,
        multiplier: 0,
    };
    for a in 1..p {
        let mut m = a;
        for (r, &ti) in residues.iter_mut().zip(&t.coords) {
            *r += ti;
            if *r >= p {
                *r -= p;
            }
            m = m.max(*r);
        }
        if m < best.value {
            best = Height {
                value: m,
                multiplier: a,
            };
        }
    }
    best
}

/// Smallest sup-norm of a nonzero integer relation `alpha . t = 0 (mod p)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DualHeight {
    pub value: u64,
    pub relation: Vec<i64>,
}

/// Searches radii `r = 1, 2, ...`; within a radius the lexicographically
/// least relation of sup-norm exactly `r` wins.
pub fn dual_height(t: &ResidueVector) -> DualHeight {
    let p = t.p as i64;
    let full: Vec<i64> = t.full().into_iter().map(|x| x as i64).collect();
    let d = full.len();
    // alpha = p * e_d always qualifies, so the loop ends by r = p.
    for r in 1..=p {
        let mut alpha = vec![-r; d];
        loop {
            if alpha.iter().any(|a| a.abs() == r) {
                let dot: i64 = alpha.iter().zip(&full).map(|(a, x)| a * x).sum();
                if dot.rem_euclid(p) == 0 {
                    return DualHeight {
                        value: r as u64,
                        relation: alpha,
                    };
                }
            }
            // odometer step over [-r, r]^d, last coordinate fastest
            match (0..d).rev().find(|&i| alpha[i] < r) {
                Some(i) => {
                    alpha[i] += 1;
                    for a in &mut alpha[i + 1..] {
                        *a = -r;
                    }
                }
                None => break,
            }
        }
    }
    unreachable!("p * e_d is a relation of radius p")
}

/// Both heights and the upper bound on `h_p` implied by the dual height.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct DualityReport {
    pub p: u64,
    pub d: usize,
    pub t: Vec<u64>,
    pub hp: u64,
    pub hp_witness: u64,
    pub hp_star: u64,
    pub hp_star_witness: Vec<i64>,
    pub bound: f64,
    pub holds: bool,
}

/// `ceil(ln p)` computed without trusting float rounding at exact powers.
pub fn ceil_ln(p: u64) -> u64 {
    let x = p as f64;
    let mut k = x.ln().ceil() as u64;
    while k > 0 && ((k - 1) as f64).exp() >= x {
        k -= 1;
    }
    while (k as f64).exp() < x {
        k += 1;
    }
    k
}

/// `h_p <= e (d-1) p ceil(ln p) / (2 h_p*)`.
pub fn check_height_duality(t: &ResidueVector) -> DualityReport {
    let h = height(t);
    let dual = dual_height(t);
    let d = t.d();
    let product_bound = std::f64::consts::E * (d as f64 - 1.0) * t.p as f64 * ceil_ln(t.p) as f64;
    let bound = product_bound / (2.0 * dual.value as f64);
    DualityReport {
        p: t.p,
        d,
        t: t.coords.clone(),
        hp: h.value,
        hp_witness: h.multiplier,
        hp_star: dual.value,
        hp_star_witness: dual.relation,
        bound,
        holds: (h.value * 2 * dual.value) as f64 <= product_bound,
    }
}

/// Which residue vectors `mean_height` averages over.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Sample {
    All,
    /// Uniform draws with replacement from a ChaCha8 stream.
    Uniform {
        size: usize,
        seed: u64,
    },
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct HeightStats {
    pub p: u64,
    pub d: usize,
    pub count: usize,
    pub mean: f64,
    pub max: u64,
    /// `mean / (p^((d-1)/d) ln p)`.
    pub ratio: f64,
}

pub fn mean_height(p: u64, d: usize, sample: Sample) -> Result<HeightStats> {
    let vectors = match sample {
        Sample::All => ResidueVector::enumerate(p, d)?,
        Sample::Uniform { size, seed } => {
            let total = (p - 1).checked_pow(d as u32 - 1).unwrap_or(u64::MAX);
            if size as u64 > total {
                return Err(Error::InvalidInput(format!(
                    "sample of {size} exceeds the {total} residue vectors"
                )));
            }
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            (0..size)
                .map(|_| ResidueVector::random(p, d, &mut rng))
                .collect::<Result<Vec<_>>>()?
        }
    };
    if vectors.is_empty() {
        return Err(Error::InvalidInput("empty sample".into()));
    }
    let heights: Vec<u64> = vectors.par_iter().map(|t| height(t).value).collect();
    let sum: u64 = heights.iter().sum();
    let mean = sum as f64 / heights.len() as f64;
    let scale = (p as f64).powf((d as f64 - 1.0) / d as f64) * (p as f64).ln();
    Ok(HeightStats {
        p,
        d,
        count: heights.len(),
        mean,
        max: heights.iter().copied().max().unwrap_or(0),
        ratio: mean / scale,
    })
}
