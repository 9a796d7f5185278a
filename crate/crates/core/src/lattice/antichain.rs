//! Antichains of a visibility poset obtained as the points of a short
//! lattice plane through a central multiple.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};
use serde::Serialize;

use super::{cross, enumerate_affine_in_box, lll_reduce, norm_sq, IntegerLattice};
use super::{independent_pair_3d, interior_point, Region};
use crate::error::{Error, Result};
use crate::modular::{ResidueVector, Sign};
use crate::poset::{build_s_poset, Antichain};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LatticeAntichain {
    pub signs: Vec<Sign>,
    /// Multipliers `k` of the antichain elements, ascending.
    pub ks: Vec<u64>,
    /// Plane normal with nonnegative last component, before sign flips.
    pub normal: Vec<i64>,
    pub generators: Vec<Vec<i64>>,
    pub anchor: Vec<u64>,
    pub rank: usize,
}

impl LatticeAntichain {
    pub fn len(&self) -> usize {
        self.ks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ks.is_empty()
    }
}

/// A primitive integer vector orthogonal to every row of `rows`.
pub fn integer_normal(rows: &[Vec<i64>], d: usize) -> Result<Vec<i64>> {
    // reduced row echelon form over the rationals
    let mut m: Vec<Vec<BigRational>> = rows
        .iter()
        .map(|r| {
            r.iter()
                .map(|&x| BigRational::from_integer(BigInt::from(x)))
                .collect()
        })
        .collect();
    let mut pivots = Vec::new();
    let mut row = 0;
    for col in 0..d {
        let Some(piv) = (row..m.len()).find(|&i| !m[i][col].is_zero()) else {
            continue;
        };
        m.swap(row, piv);
        let lead = m[row][col].clone();
        for x in m[row].iter_mut() {
            *x /= lead.clone();
        }
        for i in 0..m.len() {
            if i != row && !m[i][col].is_zero() {
                let f = m[i][col].clone();
                let pivot_row = m[row].clone();
                for (x, y) in m[i].iter_mut().zip(&pivot_row) {
                    *x -= &f * y;
                }
            }
        }
        pivots.push(col);
        row += 1;
        if row == m.len() {
            break;
        }
    }
    let free = (0..d)
        .find(|c| !pivots.contains(c))
        .ok_or(Error::DegenerateBasis)?;
    let mut v = vec![BigRational::zero(); d];
    v[free] = BigRational::from_integer(BigInt::from(1));
    for (r, &pc) in pivots.iter().enumerate() {
        v[pc] = -m[r][free].clone();
    }
    let lcm = v.iter().fold(BigInt::from(1), |acc, x| acc.lcm(x.denom()));
    let ints: Vec<BigInt> = v.iter().map(|x| (x * &lcm).to_integer()).collect();
    let g = ints.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
    ints.iter()
        .map(|x| {
            (x / &g)
                .to_i64()
                .ok_or_else(|| Error::invariant("normal", "normal vector overflows i64"))
        })
        .collect()
}

/// Antichain from the lattice plane spanned by short multiples of `t`
/// through a central multiple, mapped into the family member whose sign
/// flips make the plane normal nonnegative.
///
/// For `d = 3` the plane is spanned by the pigeonhole pair; for larger `d`
/// it is spanned by the LLL basis vectors of norm at most `p / (2d)`.
pub fn antichain_from_lattice(t: &ResidueVector) -> Result<LatticeAntichain> {
    let d = t.d();
    let p = t.p() as i64;
    let (generators, anchor) = if d == 3 {
        let pair = independent_pair_3d(t)?;
        let anchor = interior_point(t, Region::Central3)?;
        (vec![pair.v1, pair.v2], anchor.point)
    } else {
        let reduced = lll_reduce(&IntegerLattice::parallelotope(t))?;
        let mut gens: Vec<Vec<i64>> = reduced
            .sorted_by_norm()
            .into_iter()
            .take_while(|b| 4 * (d as i128).pow(2) * norm_sq(b) <= (p as i128).pow(2))
            .collect();
        gens.truncate(d - 1);
        let anchor = interior_point(t, Region::CentralD)?;
        (gens, anchor.point)
    };
    let rank = generators.len();
    let anchor_i: Vec<i64> = anchor.iter().map(|&x| x as i64).collect();
    let points = enumerate_affine_in_box(&anchor_i, &generators, p)?;

    let mut normal = if rank == 0 {
        let mut e = vec![0; d];
        e[d - 1] = 1;
        e
    } else if d == 3 {
        let n = cross(&generators[0], &generators[1]);
        let g = n.iter().fold(0i64, |a, &x| a.gcd(&x));
        n.iter().map(|x| x / g).collect()
    } else {
        integer_normal(&generators, d)?
    };
    for x in &points {
        let dot: i128 = x
            .iter()
            .zip(&anchor_i)
            .zip(&normal)
            .map(|((&a, &b), &n)| (a - b) as i128 * n as i128)
            .sum();
        if dot != 0 {
            return Err(Error::invariant(
                "lattice-plane",
                "enumerated point leaves the plane",
            ));
        }
    }
    if normal[d - 1] < 0 {
        normal.iter_mut().for_each(|x| *x = -*x);
    }
    let signs: Vec<Sign> = normal[..d - 1]
        .iter()
        .map(|&n| if n < 0 { Sign::Minus } else { Sign::Plus })
        .collect();
    let any_flip = signs.iter().any(|s| s.is_minus());

    // A point x = k t mod p sits at k = x_d; reflecting coordinate i sends
    // x_i to p - x_i, which is affine except at x_i = 0, i.e. at k = 0.
    let mut ks: Vec<u64> = points
        .iter()
        .map(|x| x[d - 1] as u64)
        .filter(|&k| !(any_flip && k == 0))
        .collect();
    ks.sort_unstable();
    if ks.is_empty() {
        log::warn!("lattice plane for {t} has no points in the box");
    }

    let poset = build_s_poset(t, &signs)?;
    let members: Vec<usize> = ks
        .iter()
        .map(|&k| poset.index_of_k(k).expect("every multiplier is an element"))
        .collect();
    Antichain { members }.validate(&poset)?;
    for x in &points {
        if !t.contains(x) {
            return Err(Error::invariant(
                "lattice-plane",
                "point is not a multiple of t",
            ));
        }
    }
    Ok(LatticeAntichain {
        signs,
        ks,
        normal,
        generators,
        anchor,
        rank,
    })
}

/// Flipping coordinate `i` of every point negates `normal[i]`.
pub fn flipped_normal(normal: &[i64], signs: &[Sign]) -> Vec<i64> {
    normal
        .iter()
        .enumerate()
        .map(|(i, &n)| match signs.get(i) {
            Some(Sign::Minus) => -n,
            _ => n,
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poset::width_exact;

    fn rv(p: u64, c: &[u64]) -> ResidueVector {
        ResidueVector::new(p, c.to_vec()).unwrap()
    }

    #[test]
    fn normal_is_orthogonal_and_primitive() {
        let rows = vec![vec![1, 0, 2, -1], vec![0, 3, 1, 1]];
        let n = integer_normal(&rows, 4).unwrap();
        for r in &rows {
            assert_eq!(r.iter().zip(&n).map(|(a, b)| a * b).sum::<i64>(), 0);
        }
        assert_eq!(n.iter().fold(0i64, |a, &x| a.gcd(&x)), 1);
        assert!(n.iter().any(|&x| x != 0));
    }

    #[test]
    fn diagonal_antichain_lands_in_a_flipped_member() {
        let t = rv(11, &[1, 1]);
        let a = antichain_from_lattice(&t).unwrap();
        assert!(a.signs.iter().any(|s| s.is_minus()));
        let poset = build_s_poset(&t, &a.signs).unwrap();
        assert!(a.len() <= width_exact(&poset).unwrap().width);
        assert!(a.len() >= 2);
    }

    #[test]
    fn flips_negate_normal_components() {
        let t = rv(31, &[5, 12]);
        let a = antichain_from_lattice(&t).unwrap();
        let flipped = flipped_normal(&a.normal, &a.signs);
        assert!(flipped.iter().all(|&x| x >= 0));
        // reflected points stay on one plane with the flipped normal
        let p = 31i64;
        let pts: Vec<Vec<i64>> =
            a.ks.iter()
                .map(|&k| {
                    t.flipped(&a.signs)
                        .multiple(k)
                        .iter()
                        .map(|&x| x as i64)
                        .collect()
                })
                .collect();
        let level = |x: &Vec<i64>| x.iter().zip(&flipped).map(|(a, b)| a * b).sum::<i64>();
        let first = level(&pts[0]);
        assert!(pts.iter().all(|x| level(x) == first));
        assert!(pts.iter().all(|x| x.iter().all(|&c| (0..p).contains(&c))));
    }

    #[test]
    fn higher_dimensions_use_lll_prefix() {
        let t = rv(101, &[17, 45, 88]);
        let a = antichain_from_lattice(&t).unwrap();
        assert!(a.rank <= 3);
        for g in &a.generators {
            assert!(64 * norm_sq(g) <= 101 * 101);
        }
        let poset = build_s_poset(&t, &a.signs).unwrap();
        assert!(a.len() <= width_exact(&poset).unwrap().width);
    }
}
