//! Integer lattices: covolume, exact LLL, the pigeonhole short vectors, and
//! the antichains cut out of visibility posets by lattice planes.

mod antichain;
mod enumerate;
mod lll;
mod small;

pub use antichain::{antichain_from_lattice, flipped_normal, integer_normal, LatticeAntichain};
pub use enumerate::enumerate_affine_in_box;
pub use lll::{lll_reduce, ReducedBasis};
pub use small::{
    independent_pair_3d, interior_point, small_vector_3d, IndependentPair, InteriorPoint, Region,
    SmallVector,
};

use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::modular::ResidueVector;

/// Square integer basis; rows are the basis vectors.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IntegerLattice {
    basis: Vec<Vec<i64>>,
}

impl IntegerLattice {
    pub fn new(basis: Vec<Vec<i64>>) -> Result<Self> {
        let n = basis.len();
        if n == 0 || basis.iter().any(|row| row.len() != n) {
            return Err(Error::InvalidInput(format!(
                "basis must be square, got {n} rows of lengths {:?}",
                basis.iter().map(Vec::len).collect::<Vec<_>>()
            )));
        }
        let lattice = IntegerLattice { basis };
        if lattice.determinant().is_zero() {
            return Err(Error::DegenerateBasis);
        }
        Ok(lattice)
    }

    /// `(t_1, ..., t_{d-1}, 1)` followed by `p e_1, ..., p e_{d-1}`: the
    /// lattice of integer points congruent to a multiple of `t`.
    pub fn parallelotope(t: &ResidueVector) -> IntegerLattice {
        let d = t.d();
        let p = t.p() as i64;
        let mut basis = vec![t.full().into_iter().map(|x| x as i64).collect::<Vec<_>>()];
        for i in 0..d - 1 {
            let mut row = vec![0; d];
            row[i] = p;
            basis.push(row);
        }
        IntegerLattice { basis }
    }

    pub fn basis(&self) -> &[Vec<i64>] {
        &self.basis
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn determinant(&self) -> BigInt {
        bareiss_determinant(&self.basis)
    }

    /// `|det|` of the basis.
    pub fn covolume(&self) -> BigInt {
        self.determinant().abs()
    }
}

/// Fraction-free Gaussian elimination; exact for any integer matrix.
pub fn bareiss_determinant(rows: &[Vec<i64>]) -> BigInt {
    let n = rows.len();
    let mut m: Vec<Vec<BigInt>> = rows
        .iter()
        .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
        .collect();
    let mut sign = 1;
    let mut prev = BigInt::from(1);
    for k in 0..n {
        if m[k][k].is_zero() {
            match (k + 1..n).find(|&i| !m[i][k].is_zero()) {
                Some(i) => {
                    m.swap(k, i);
                    sign = -sign;
                }
                None => return BigInt::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = &m[i][j] * &m[k][k] - &m[i][k] * &m[k][j];
                m[i][j] = v / &prev;
            }
        }
        prev = m[k][k].clone();
    }
    if n == 0 {
        return BigInt::from(1);
    }
    prev * sign
}

pub fn norm_sq(v: &[i64]) -> i128 {
    v.iter().map(|&x| (x as i128) * (x as i128)).sum()
}

/// Hadamard's inequality for a basis, checked exactly on squares.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HadamardCheck {
    pub holds: bool,
    pub equality: bool,
    pub orthogonal: bool,
}

pub fn hadamard_check(basis: &[Vec<i64>]) -> HadamardCheck {
    let det = bareiss_determinant(basis);
    let det_sq = &det * &det;
    let prod: BigInt = basis.iter().map(|b| BigInt::from(norm_sq(b))).product();
    let orthogonal = (0..basis.len()).all(|i| {
        (0..i).all(|j| {
            basis[i]
                .iter()
                .zip(&basis[j])
                .map(|(&a, &b)| a as i128 * b as i128)
                .sum::<i128>()
                == 0
        })
    });
    HadamardCheck {
        holds: det_sq <= prod,
        equality: det_sq == prod,
        orthogonal,
    }
}

/// Representative of `x mod p` in `(-p/2, p/2]`.
pub fn symmetric_residue(x: i64, p: i64) -> i64 {
    let r = x.rem_euclid(p);
    if 2 * r > p {
        r - p
    } else {
        r
    }
}

pub fn cross(a: &[i64], b: &[i64]) -> [i64; 3] {
    [
        a[1] * b[2] - a[2] * b[1],
        a[2] * b[0] - a[0] * b[2],
        a[0] * b[1] - a[1] * b[0],
    ]
}

pub fn sup_norm(v: &[i64]) -> i64 {
    v.iter().map(|x| x.abs()).max().unwrap_or(0)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn covolume_of_parallelotope_lattice() {
        let t = ResidueVector::new(5, vec![2, 3]).unwrap();
        let l = IntegerLattice::parallelotope(&t);
        assert_eq!(l.basis()[0], vec![2, 3, 1]);
        assert_eq!(l.covolume(), BigInt::from(25));
        let t = ResidueVector::new(7, vec![1, 2, 3]).unwrap();
        assert_eq!(
            IntegerLattice::parallelotope(&t).covolume(),
            BigInt::from(343)
        );
    }

    #[test]
    fn identity_and_degenerate() {
        let id: Vec<Vec<i64>> = (0..4)
            .map(|i| (0..4).map(|j| i64::from(i == j)).collect())
            .collect();
        assert_eq!(IntegerLattice::new(id).unwrap().covolume(), BigInt::from(1));
        assert!(matches!(
            IntegerLattice::new(vec![vec![1, 2], vec![2, 4]]),
            Err(Error::DegenerateBasis)
        ));
        assert!(IntegerLattice::new(vec![vec![1, 2]]).is_err());
    }

    #[test]
    fn bareiss_needs_pivoting() {
        // leading zero forces a row swap; det = -(1*1 - 0) ... computed by cofactors
        let m = vec![vec![0, 2, 1], vec![1, 0, 0], vec![3, 1, 1]];
        // cofactor expansion along row 1: -1 * (2*1 - 1*1) = -1
        assert_eq!(bareiss_determinant(&m), BigInt::from(-1));
    }

    #[test]
    fn hadamard_fixtures() {
        let orth = vec![vec![2, 0, 0], vec![0, 3, 0], vec![0, 0, 5]];
        let h = hadamard_check(&orth);
        assert!(h.holds && h.equality && h.orthogonal);
        let skew = vec![vec![1, 1, 0], vec![0, 1, 1], vec![1, 0, 1]];
        let h = hadamard_check(&skew);
        assert!(h.holds && !h.equality && !h.orthogonal);
    }

    #[test]
    fn symmetric_range() {
        assert_eq!(symmetric_residue(6, 11), -5);
        assert_eq!(symmetric_residue(5, 11), 5);
        assert_eq!(symmetric_residue(-1, 11), -1);
        assert_eq!(symmetric_residue(11, 11), 0);
    }
}
