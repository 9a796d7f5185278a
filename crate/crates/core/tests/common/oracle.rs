//! Slow, direct versions of the quantities under test. Nothing here calls
//! into the library beyond reading plain data out of its types.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};

/// `min_a max(a, a t_1 mod p, ..., a t_{d-1} mod p)`.
pub fn height(p: u64, t: &[u64]) -> u64 {
    (1..p)
        .map(|a| t.iter().map(|&c| a * c % p).max().unwrap_or(0).max(a))
        .min()
        .unwrap()
}

/// Smallest sup-norm of a nonzero `alpha` with `alpha . (t, 1) = 0 mod p`,
/// searched over the cube of the smallest radius `r` with `(r+1)^d > p`,
/// which pigeonhole guarantees contains one.
pub fn dual_height(p: u64, t: &[u64]) -> u64 {
    let mut full: Vec<i64> = t.iter().map(|&x| x as i64).collect();
    full.push(1);
    let d = full.len();
    let mut r = 1i64;
    while (r + 1).pow(d as u32) <= p as i64 {
        r += 1;
    }
    let side = 2 * r + 1;
    let mut best = u64::MAX;
    for code in 0..side.pow(d as u32) {
        let mut c = code;
        let mut dot = 0i64;
        let mut sup = 0i64;
        for &x in &full {
            let a = c % side - r;
            c /= side;
            dot += a * x;
            sup = sup.max(a.abs());
        }
        if sup > 0 && dot.rem_euclid(p as i64) == 0 {
            best = best.min(sup as u64);
        }
    }
    best
}

/// Coordinates of `k` in the poset of `t` under `signs` (true = minus).
pub fn member(p: u64, t: &[u64], minus: &[bool], k: u64) -> Vec<i64> {
    let mut v: Vec<i64> = t
        .iter()
        .zip(minus)
        .map(|(&c, &m)| {
            let x = c * k % p;
            (if m { (p - x) % p } else { x }) as i64
        })
        .collect();
    v.push(k as i64);
    v
}

pub fn below(a: &[i64], b: &[i64]) -> bool {
    a.iter().zip(b).all(|(x, y)| x < y)
}

pub fn is_antichain(points: &[Vec<i64>]) -> bool {
    points.iter().enumerate().all(|(i, a)| {
        points[i + 1..]
            .iter()
            .all(|b| a != b && !below(a, b) && !below(b, a))
    })
}

/// Every index in `0..n` exactly once, each chain strictly increasing.
pub fn is_chain_partition(
    n: usize,
    chains: &[Vec<usize>],
    less: impl Fn(usize, usize) -> bool,
) -> bool {
    let mut seen = vec![false; n];
    for chain in chains {
        if chain.is_empty() {
            return false;
        }
        for &i in chain {
            if i >= n || std::mem::replace(&mut seen[i], true) {
                return false;
            }
        }
        if !chain.windows(2).all(|w| less(w[0], w[1])) {
            return false;
        }
    }
    seen.into_iter().all(|s| s)
}

fn dot(a: &[BigRational], b: &[BigRational]) -> BigRational {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// Gram-Schmidt over the rationals: squared norms of `b*_i` and `mu`.
pub fn gram_schmidt(basis: &[Vec<i64>]) -> (Vec<BigRational>, Vec<Vec<BigRational>>) {
    let n = basis.len();
    let rows: Vec<Vec<BigRational>> = basis
        .iter()
        .map(|r| {
            r.iter()
                .map(|&x| BigRational::from_integer(BigInt::from(x)))
                .collect()
        })
        .collect();
    let mut star: Vec<Vec<BigRational>> = Vec::new();
    let mut norms: Vec<BigRational> = Vec::new();
    let mut mu = vec![vec![BigRational::zero(); n]; n];
    for i in 0..n {
        let mut v = rows[i].clone();
        for j in 0..i {
            mu[i][j] = dot(&rows[i], &star[j]) / &norms[j];
            for (x, s) in v.iter_mut().zip(&star[j]) {
                *x -= &mu[i][j] * s;
            }
        }
        norms.push(dot(&v, &v));
        star.push(v);
    }
    (norms, mu)
}

/// Size reduction with `|mu| <= 1/2` and the Lovász condition at 3/4.
pub fn lll_conditions(basis: &[Vec<i64>]) -> bool {
    let (norms, mu) = gram_schmidt(basis);
    let half = BigRational::new(1.into(), 2.into());
    let delta = BigRational::new(3.into(), 4.into());
    let sized = (0..basis.len()).all(|i| (0..i).all(|j| mu[i][j].abs() <= half));
    let lovasz = (1..basis.len()).all(|i| {
        let m = &mu[i][i - 1];
        &norms[i] + m * m * &norms[i - 1] >= &delta * &norms[i - 1]
    });
    sized && lovasz
}

/// `det(L)^2` as the product of the Gram-Schmidt squared norms.
pub fn covolume_sq(basis: &[Vec<i64>]) -> BigRational {
    gram_schmidt(basis).0.into_iter().product()
}

pub fn norm_sq(v: &[i64]) -> BigInt {
    v.iter().map(|&x| BigInt::from(x) * BigInt::from(x)).sum()
}

/// Least-squares slope of `ln y` on `ln x`.
pub fn loglog_slope(points: &[(f64, f64)]) -> f64 {
    let n = points.len() as f64;
    let xs: Vec<f64> = points.iter().map(|p| p.0.ln()).collect();
    let ys: Vec<f64> = points.iter().map(|p| p.1.ln()).collect();
    let mx = xs.iter().sum::<f64>() / n;
    let my = ys.iter().sum::<f64>() / n;
    let num: f64 = xs.iter().zip(&ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    let den: f64 = xs.iter().map(|x| (x - mx).powi(2)).sum();
    num / den
}
