//! Visibility among unit cubes: the lateral-edge model, an exact planar
//! oracle, a seeded sampling oracle for three dimensions, and the facet
//! tests used by the shallow-angle setting.

mod plane;
mod sampled;
mod segment;

pub use plane::{visible_2d_dense, visible_2d_exact, PLANE_LIMIT};
pub use sampled::{visible_sampled, SampleOptions, SampledVisibility};
pub use segment::{shallow_blocks, Frac, Segment};

use std::collections::BTreeSet;

use num_rational::Rational64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::modular::ResidueVector;
use crate::poset::{max_antichain_of_relation, ChainCover};

/// Obstructing unit cubes in `[0, n)^d`, each given by its lower corner.
/// The observer is the cube at the origin and is never obstructing.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "RawConfiguration")]
pub struct Configuration {
    n: i64,
    d: usize,
    cubes: Vec<Vec<i64>>,
}

#[derive(Deserialize)]
struct RawConfiguration {
    n: i64,
    d: usize,
    cubes: Vec<Vec<i64>>,
}

impl TryFrom<RawConfiguration> for Configuration {
    type Error = Error;

    fn try_from(raw: RawConfiguration) -> Result<Self> {
        Configuration::new(raw.n, raw.d, raw.cubes)
    }
}

impl Configuration {
    /// Cubes are sorted; duplicates, cubes outside the grid and the
    /// observer's own cell are rejected.
    pub fn new(n: i64, d: usize, mut cubes: Vec<Vec<i64>>) -> Result<Self> {
        if n < 1 || d < 2 {
            return Err(Error::InvalidInput(format!("grid {n}^{d} is degenerate")));
        }
        for c in &cubes {
            if c.len() != d || c.iter().any(|&x| x < 0 || x >= n) {
                return Err(Error::InvalidInput(format!(
                    "cube {c:?} is outside [0,{n})^{d}"
                )));
            }
            if c.iter().all(|&x| x == 0) {
                return Err(Error::InvalidInput(
                    "the observer cell cannot obstruct".into(),
                ));
            }
        }
        cubes.sort();
        if let Some(w) = cubes.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::InvalidInput(format!("cube {:?} listed twice", w[0])));
        }
        Ok(Configuration { n, d, cubes })
    }

    pub fn n(&self) -> i64 {
        self.n
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn cubes(&self) -> &[Vec<i64>] {
        &self.cubes
    }

    pub fn len(&self) -> usize {
        self.cubes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cubes.is_empty()
    }
}

/// Parallelotope with characteristic vertex `(t_1, ..., t_{d-1}, p)`.
/// Its lateral edge `E_P` runs from the origin to that vertex.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Parallelotope {
    vertex: Vec<i64>,
}

impl Parallelotope {
    pub fn new(vertex: Vec<i64>) -> Result<Self> {
        let d = vertex.len();
        if d < 2 {
            return Err(Error::InvalidInput(
                "vertex needs at least two coordinates".into(),
            ));
        }
        let p = vertex[d - 1];
        if p < 1 || vertex[..d - 1].iter().any(|&x| x < 0 || x >= p) {
            return Err(Error::InvalidInput(format!(
                "vertex {vertex:?} needs 0 <= t_i < p = last coordinate"
            )));
        }
        Ok(Parallelotope { vertex })
    }

    pub fn from_residue(t: &ResidueVector) -> Parallelotope {
        let mut vertex: Vec<i64> = t.coords().iter().map(|&x| x as i64).collect();
        vertex.push(t.p() as i64);
        Parallelotope { vertex }
    }

    pub fn vertex(&self) -> &[i64] {
        &self.vertex
    }

    pub fn p(&self) -> i64 {
        *self.vertex.last().expect("nonempty")
    }

    /// Lower corner of the cube whose interior `E_P` crosses between
    /// heights `k` and `k + 1`.
    pub fn cube_at(&self, k: i64) -> Vec<i64> {
        let p = self.p();
        let d = self.vertex.len();
        let mut c: Vec<i64> = self.vertex[..d - 1]
            .iter()
            .map(|&t| (t * k).div_euclid(p))
            .collect();
        c.push(k);
        c
    }

    /// The lateral edge as a segment.
    pub fn edge(&self) -> Segment {
        Segment::integer(vec![0; self.vertex.len()], self.vertex.clone())
    }

    /// Whether every `t_i <= p / tan(theta)`; these are the parallelotopes
    /// summed over for a shallow angle `theta`. Exact at 30, 45, 60 and 90.
    pub fn within_angle(&self, theta_deg: f64) -> bool {
        let p = self.p() as i128;
        let free = &self.vertex[..self.vertex.len() - 1];
        // tan^2 as num / den, when rational
        let tan_sq = match theta_deg {
            30.0 => Some((1, 3)),
            45.0 => Some((1, 1)),
            60.0 => Some((3, 1)),
            _ => None,
        };
        free.iter().all(|&t| {
            let t = t as i128;
            match tan_sq {
                Some((num, den)) => t * t * num <= p * p * den,
                None if theta_deg <= 0.0 => true,
                None if theta_deg >= 90.0 => t == 0,
                None => t as f64 * theta_deg.to_radians().tan() <= p as f64,
            }
        })
    }
}

/// Projection of the upper corner of the bottom face at height `k` onto the
/// observer face along `E_P`: `(1 - {t_i k / p})_i`.
pub fn project_corner(k: u64, t: &ResidueVector) -> Result<Vec<Rational64>> {
    let p = t.p();
    if k >= p {
        return Err(Error::InvalidInput(format!(
            "height {k} must be below p = {p}"
        )));
    }
    Ok(t.coords()
        .iter()
        .map(|&ti| {
            let frac = Rational64::new((ti * k % p) as i64, p as i64);
            Rational64::from_integer(1) - frac
        })
        .collect())
}

/// Visible part of a projected face: the face projects to the box
/// `[c - 1, c]`, and the observer face is `[0, 1]^(d-1)`.
fn visible_box(corner: &[Rational64]) -> Vec<(Rational64, Rational64)> {
    let zero = Rational64::from_integer(0);
    let one = Rational64::from_integer(1);
    corner
        .iter()
        .map(|&c| ((c - one).max(zero), c.min(one)))
        .collect()
}

fn covers(outer: &[(Rational64, Rational64)], inner: &[(Rational64, Rational64)]) -> bool {
    outer
        .iter()
        .zip(inner)
        .all(|(&(a, b), &(x, y))| a <= x && y <= b)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RestrictedVisibility {
    /// Heights of a largest set of faces visible together, ascending.
    pub visible: Vec<u64>,
    /// Pairs `(lower, upper)`: the face at height `lower` hides the one at
    /// height `upper` from the whole observer face.
    pub blocking: Vec<(u64, u64)>,
    /// Faces ordered by blocking; as many chains as visible faces.
    pub chains: Vec<Vec<u64>>,
}

impl RestrictedVisibility {
    pub fn len(&self) -> usize {
        self.visible.len()
    }

    pub fn is_empty(&self) -> bool {
        self.visible.is_empty()
    }
}

/// Faces along `E_P` seen through sightlines parallel to `E_P`.
///
/// Face `k` is seen through the part of the observer face it projects onto.
/// A lower face hides it iff its projection covers that part; the projected
/// boxes all contain the origin corner so pairwise covering decides
/// visibility of any subset.
pub fn restricted_visible_set(t: &ResidueVector) -> Result<RestrictedVisibility> {
    let p = t.p();
    let boxes: Vec<Vec<(Rational64, Rational64)>> = (0..p)
        .map(|k| project_corner(k, t).map(|c| visible_box(&c)))
        .collect::<Result<_>>()?;
    let hides = |lo: usize, hi: usize| lo < hi && covers(&boxes[lo], &boxes[hi]);
    let n = p as usize;
    let result = max_antichain_of_relation(n, hides)?;
    let mut blocking = Vec::new();
    for hi in 0..n {
        for lo in 0..hi {
            if hides(lo, hi) {
                blocking.push((lo as u64, hi as u64));
            }
        }
    }
    let mut visible: Vec<u64> = result.antichain.members.iter().map(|&i| i as u64).collect();
    visible.sort_unstable();
    let ChainCover { chains } = result.cover;
    let chains = chains
        .into_iter()
        .map(|c| c.into_iter().map(|i| i as u64).collect())
        .collect();
    Ok(RestrictedVisibility {
        visible,
        blocking,
        chains,
    })
}

/// Where the line through `a` and `b` crosses the hyperplane
/// `x_d = height`, as rationals; `None` when the line is horizontal.
fn line_at_height(a: &[i64], b: &[i64], height: i64) -> Option<Vec<Rational64>> {
    let d = a.len();
    let rise = b[d - 1] - a[d - 1];
    if rise == 0 {
        return None;
    }
    let s = Rational64::new(height - a[d - 1], rise);
    Some(
        a.iter()
            .zip(b)
            .map(|(&x, &y)| Rational64::from_integer(x) + s * (y - x))
            .collect(),
    )
}

/// Bottom facet `corner + [0,1]^(d-1) x {0}` of a unit cube, tested against
/// the point where a line crosses its height.
fn facet_contains(corner: &[i64], point: &[Rational64], open: bool) -> bool {
    let d = corner.len();
    corner[..d - 1].iter().zip(point).all(|(&c, &x)| {
        let (lo, hi) = (Rational64::from_integer(c), Rational64::from_integer(c + 1));
        if open {
            lo < x && x < hi
        } else {
            lo <= x && x <= hi
        }
    })
}

/// Whether the bottom facet of the cube at `corner` is a primitive
/// obstruction of `par`: it meets both the lateral edge and the line from
/// `(1, ..., 1, 0)` to the characteristic vertex in its relative interior.
pub fn is_primitive_obstruction(corner: &[i64], par: &Parallelotope) -> Result<bool> {
    let v = par.vertex();
    let d = v.len();
    if corner.len() != d {
        return Err(Error::InvalidInput(
            "facet and parallelotope dimensions differ".into(),
        ));
    }
    let k = corner[d - 1];
    if k < 0 || k > par.p() {
        return Err(Error::FacetMissesEdge);
    }
    let origin = vec![0; d];
    let on_edge = line_at_height(&origin, v, k).expect("edge rises");
    if !facet_contains(corner, &on_edge, false) {
        return Err(Error::FacetMissesEdge);
    }
    let mut base = vec![1; d];
    base[d - 1] = 0;
    let on_shifted = line_at_height(&base, v, k).expect("line rises");
    Ok(facet_contains(corner, &on_edge, true) && facet_contains(corner, &on_shifted, true))
}

/// The defining form of the same notion: the facet meets the lateral edge
/// (closed), and no line from the origin to `v - e_i` meets the closed facet.
pub fn is_primitive_by_definition(corner: &[i64], par: &Parallelotope) -> Result<bool> {
    let v = par.vertex();
    let d = v.len();
    let k = corner[d - 1];
    let origin = vec![0; d];
    let on_edge = line_at_height(&origin, v, k).ok_or(Error::FacetMissesEdge)?;
    if !facet_contains(corner, &on_edge, false) {
        return Err(Error::FacetMissesEdge);
    }
    Ok((0..d - 1).all(|i| {
        let mut w = v.to_vec();
        w[i] -= 1;
        let pt = line_at_height(&origin, &w, k).expect("line rises");
        !facet_contains(corner, &pt, false)
    }))
}

/// Heights `0 < k < p` whose facet on the lateral edge is a primitive
/// obstruction, found by the line tests alone.
pub fn primitive_heights_geometric(t: &ResidueVector) -> Result<Vec<u64>> {
    let par = Parallelotope::from_residue(t);
    let mut out = Vec::new();
    for k in 1..t.p() as i64 {
        if is_primitive_obstruction(&par.cube_at(k), &par)? {
            out.push(k as u64);
        }
    }
    Ok(out)
}

/// Cubes of `par` met by the interior of its lateral edge, as a set.
pub fn cubes_on_edge(par: &Parallelotope) -> BTreeSet<Vec<i64>> {
    let edge = par.edge();
    (0..par.p())
        .map(|k| par.cube_at(k))
        .filter(|c| edge.hits_open_cube(c))
        .collect()
}
