//! LLL reduction with `delta = 3/4` over exact rationals.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::{bareiss_determinant, norm_sq, IntegerLattice};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq)]
pub struct ReducedBasis {
    pub vectors: Vec<Vec<i64>>,
    /// Gram–Schmidt vectors `b_i*`.
    pub gram_schmidt: Vec<Vec<BigRational>>,
    /// `mu[i][j] = <b_i, b_j*> / |b_j*|^2` for `j < i`.
    pub mu: Vec<Vec<BigRational>>,
}

fn rat(x: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(x))
}

fn dot(a: &[BigRational], b: &[BigRational]) -> BigRational {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn gram_schmidt(b: &[Vec<i64>]) -> (Vec<Vec<BigRational>>, Vec<Vec<BigRational>>) {
    let n = b.len();
    let mut star: Vec<Vec<BigRational>> = Vec::with_capacity(n);
    let mut mu = vec![vec![BigRational::zero(); n]; n];
    for i in 0..n {
        let bi: Vec<BigRational> = b[i].iter().map(|&x| rat(x)).collect();
        let mut v = bi.clone();
        for j in 0..i {
            let bj_sq = dot(&star[j], &star[j]);
            mu[i][j] = dot(&bi, &star[j]) / bj_sq;
            for (vc, sc) in v.iter_mut().zip(&star[j]) {
                *vc -= &mu[i][j] * sc;
            }
        }
        mu[i][i] = BigRational::one();
        star.push(v);
    }
    (star, mu)
}

/// Nearest integer, halves rounded up.
fn round(x: &BigRational) -> i64 {
    let half = BigRational::new(BigInt::from(1), BigInt::from(2));
    (x + half)
        .floor()
        .to_integer()
        .to_i64()
        .expect("LLL coefficients stay far inside i64")
}

pub fn lll_reduce(lattice: &IntegerLattice) -> Result<ReducedBasis> {
    let mut b: Vec<Vec<i64>> = lattice.basis().to_vec();
    let n = b.len();
    let delta = BigRational::new(BigInt::from(3), BigInt::from(4));
    let (mut star, mut mu) = gram_schmidt(&b);
    let mut k = 1;
    while k < n {
        for j in (0..k).rev() {
            let q = round(&mu[k][j]);
            if q != 0 {
                let bj = b[j].clone();
                for (x, y) in b[k].iter_mut().zip(&bj) {
                    *x -= q * y;
                }
                let qr = rat(q);
                for i in 0..=j {
                    let m = &qr * &mu[j][i];
                    mu[k][i] -= m;
                }
            }
        }
        let bk = dot(&star[k], &star[k]);
        let bk1 = dot(&star[k - 1], &star[k - 1]);
        let m = &mu[k][k - 1];
        if bk >= (&delta - m * m) * bk1 {
            k += 1;
        } else {
            b.swap(k, k - 1);
            (star, mu) = gram_schmidt(&b);
            k = (k - 1).max(1);
        }
    }
    let reduced = ReducedBasis {
        vectors: b,
        gram_schmidt: star,
        mu,
    };
    reduced.verify(lattice)?;
    Ok(reduced)
}

impl ReducedBasis {
    /// Size condition, Lovász condition, covolume preservation, and
    /// `d(L) <= prod |b_i| <= 2^(d(d-1)/4) d(L)`, all on exact squares.
    pub fn verify(&self, original: &IntegerLattice) -> Result<()> {
        let n = self.vectors.len();
        let half = BigRational::new(BigInt::from(1), BigInt::from(2));
        let delta = BigRational::new(BigInt::from(3), BigInt::from(4));
        let (star, mu) = gram_schmidt(&self.vectors);
        if star != self.gram_schmidt || mu != self.mu {
            return Err(Error::invariant(
                "lll-gram-schmidt",
                "stored orthogonalization is stale",
            ));
        }
        for i in 0..n {
            for j in 0..i {
                if mu[i][j].abs() > half {
                    return Err(Error::invariant(
                        "lll-size",
                        format!("|mu[{i}][{j}]| = {} exceeds 1/2", mu[i][j].abs()),
                    ));
                }
            }
        }
        for i in 1..n {
            let bi = dot(&star[i], &star[i]);
            let bi1 = dot(&star[i - 1], &star[i - 1]);
            let m = &mu[i][i - 1];
            if bi + m * m * &bi1 < &delta * &bi1 {
                return Err(Error::invariant(
                    "lll-lovasz",
                    format!("fails at index {i}"),
                ));
            }
        }
        let det = bareiss_determinant(&self.vectors).abs();
        let orig = original.covolume();
        if det != orig {
            return Err(Error::invariant(
                "lll-covolume",
                format!("covolume changed from {orig} to {det}"),
            ));
        }
        let det_sq = &det * &det;
        let prod: BigInt = self
            .vectors
            .iter()
            .map(|v| BigInt::from(norm_sq(v)))
            .product();
        let slack = BigInt::from(2).pow((n * (n - 1) / 2) as u32);
        if prod < det_sq || prod > slack * det_sq {
            return Err(Error::invariant(
                "lll-norm-product",
                format!("norm product squared {prod} outside [d^2, 2^(d(d-1)/2) d^2]"),
            ));
        }
        Ok(())
    }

    /// Basis vectors sorted by Euclidean norm, ties in basis order.
    pub fn sorted_by_norm(&self) -> Vec<Vec<i64>> {
        let mut v = self.vectors.clone();
        v.sort_by_key(|b| norm_sq(b));
        v
    }

    pub fn norm_product_sq(&self) -> BigInt {
        self.vectors
            .iter()
            .map(|v| BigInt::from(norm_sq(v)))
            .product()
    }
}
