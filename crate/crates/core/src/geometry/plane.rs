//! Exact visibility among unit squares.

use rayon::prelude::*;

use super::segment::{Frac, Segment};
use super::Configuration;
use crate::error::{Error, Result};

pub const PLANE_LIMIT: i64 = 64;

fn check_plane(c: &Configuration) -> Result<()> {
    if c.d() != 2 {
        return Err(Error::InvalidInput(format!(
            "expected a planar configuration, got d = {}",
            c.d()
        )));
    }
    if c.n() > PLANE_LIMIT {
        return Err(Error::GridTooLarge {
            size: c.n() as u64,
            limit: PLANE_LIMIT as u64,
        });
    }
    Ok(())
}

fn occupancy(c: &Configuration) -> Vec<Vec<bool>> {
    let n = c.n() as usize;
    let mut occ = vec![vec![false; n]; n];
    for q in c.cubes() {
        occ[q[0] as usize][q[1] as usize] = true;
    }
    occ
}

/// Squares that may meet a segment between the observer and `target`.
fn blockers_for(occ: &[Vec<bool>], target: &[i64]) -> Vec<[i64; 2]> {
    let mut out = Vec::new();
    for x in 0..=target[0] {
        for y in 0..=target[1] {
            if occ[x as usize][y as usize] && !(x == target[0] && y == target[1]) {
                out.push([x, y]);
            }
        }
    }
    // nearest first, so blocked candidates are rejected early
    out.sort_by_key(|q| q[0] + q[1]);
    out
}

/// Parameter interval of the line `a + s (b - a)` inside a unit square.
/// Closed squares give a closed interval; open ones an open interval.
fn line_interval(a: [i64; 2], dir: [i64; 2], corner: [i64; 2], open: bool) -> Option<(Frac, Frac)> {
    let mut lo: Option<Frac> = None;
    let mut hi: Option<Frac> = None;
    for i in 0..2 {
        let (c0, c1) = (corner[i] as i128, corner[i] as i128 + 1);
        let x = a[i] as i128;
        if dir[i] == 0 {
            let inside = if open {
                c0 < x && x < c1
            } else {
                c0 <= x && x <= c1
            };
            if !inside {
                return None;
            }
            continue;
        }
        let mut u = Frac::new(c0 - x, dir[i] as i128);
        let mut v = Frac::new(c1 - x, dir[i] as i128);
        if u > v {
            std::mem::swap(&mut u, &mut v);
        }
        lo = Some(lo.map_or(u, |l| l.max(u)));
        hi = Some(hi.map_or(v, |h| h.min(v)));
    }
    let (lo, hi) = (lo?, hi?);
    let nonempty = if open { lo < hi } else { lo <= hi };
    nonempty.then_some((lo, hi))
}

fn corners(q: [i64; 2]) -> [[i64; 2]; 4] {
    [q, [q[0] + 1, q[1]], [q[0], q[1] + 1], [q[0] + 1, q[1] + 1]]
}

/// Whether the line through `a` and `b` carries an open segment from the
/// observer to `target` that misses every blocker.
fn line_sees(a: [i64; 2], b: [i64; 2], target: [i64; 2], blockers: &[[i64; 2]]) -> bool {
    let dir = [b[0] - a[0], b[1] - a[1]];
    let Some((o1, o2)) = line_interval(a, dir, [0, 0], false) else {
        return false;
    };
    let Some((t1, t2)) = line_interval(a, dir, target, false) else {
        return false;
    };
    let (s, e) = if o2 < t1 {
        (o2, t1)
    } else if t2 < o1 {
        (t2, o1)
    } else {
        return true;
    };
    blockers
        .iter()
        .all(|&q| match line_interval(a, dir, q, true) {
            Some((lo, hi)) => lo.max(s) >= hi.min(e),
            None => true,
        })
}

fn sees_exact(target: [i64; 2], blockers: &[[i64; 2]]) -> bool {
    if target[0] <= 1 && target[1] <= 1 {
        return true;
    }
    let mut pts: Vec<[i64; 2]> = corners([0, 0]).into_iter().chain(corners(target)).collect();
    let first = pts.len();
    for &q in blockers {
        pts.extend(corners(q));
    }
    pts[first..].sort_unstable();
    pts.dedup();
    for i in 0..pts.len() {
        for j in i + 1..pts.len() {
            if pts[i] != pts[j] && line_sees(pts[i], pts[j], target, blockers) {
                return true;
            }
        }
    }
    false
}

/// Squares seen from the observer square, decided exactly: if any open
/// segment joins the two squares while missing every other open square,
/// one lies on a line through two corners of the squares involved, so
/// those lines are all tested.
pub fn visible_2d_exact(c: &Configuration) -> Result<Vec<Vec<i64>>> {
    check_plane(c)?;
    let occ = occupancy(c);
    Ok(c.cubes()
        .par_iter()
        .filter(|q| {
            let target = [q[0], q[1]];
            sees_exact(target, &blockers_for(&occ, q))
        })
        .cloned()
        .collect())
}

fn boundary_points(q: [i64; 2], res: i64) -> Vec<[i64; 2]> {
    let (x, y) = (q[0] * res, q[1] * res);
    let mut pts = Vec::with_capacity(4 * res as usize);
    for s in 0..res {
        pts.push([x + s, y]);
        pts.push([x + res, y + s]);
        pts.push([x + res - s, y + res]);
        pts.push([x, y + res - s]);
    }
    pts
}

/// Squares seen along some segment between boundary points on the grid of
/// spacing `1 / res`. Sound, and complete once `res` resolves the scene.
pub fn visible_2d_dense(c: &Configuration, res: i64) -> Result<Vec<Vec<i64>>> {
    check_plane(c)?;
    if res < 1 {
        return Err(Error::InvalidInput("resolution must be positive".into()));
    }
    let occ = occupancy(c);
    let observer = boundary_points([0, 0], res);
    Ok(c.cubes()
        .par_iter()
        .filter(|q| {
            let blockers = blockers_for(&occ, q);
            let ends = boundary_points([q[0], q[1]], res);
            observer.iter().any(|s| {
                ends.iter().any(|e| {
                    let seg = Segment {
                        start: s.to_vec(),
                        end: e.to_vec(),
                        den: res,
                    };
                    blockers.iter().all(|b| !seg.hits_open_cube(b))
                })
            })
        })
        .cloned()
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn full_grid(n: i64) -> Configuration {
        let cubes = (0..n)
            .flat_map(|x| (0..n).map(move |y| vec![x, y]))
            .filter(|c| c != &vec![0, 0])
            .collect();
        Configuration::new(n, 2, cubes).unwrap()
    }

    #[test]
    fn lone_square_is_visible() {
        let c = Configuration::new(8, 2, vec![vec![5, 3]]).unwrap();
        assert_eq!(visible_2d_exact(&c).unwrap().len(), 1);
    }

    #[test]
    fn boundary_ring_all_visible() {
        let n = 6;
        let cubes = (0..n)
            .flat_map(|x| (0..n).map(move |y| vec![x, y]))
            .filter(|c| c[0] == n - 1 || c[1] == n - 1)
            .collect::<Vec<_>>();
        let c = Configuration::new(n, 2, cubes).unwrap();
        assert_eq!(visible_2d_exact(&c).unwrap().len(), c.len());
    }

    #[test]
    fn full_grid_sees_along_grid_lines() {
        // grazing the boundary of a square does not enter it, so the lines
        // x = 0, x = 1, y = 0, y = 1 stay open through a full grid
        let c = full_grid(5);
        let vis = visible_2d_exact(&c).unwrap();
        let expected: Vec<Vec<i64>> = c
            .cubes()
            .iter()
            .filter(|q| q[0] <= 1 || q[1] <= 1)
            .cloned()
            .collect();
        assert_eq!(vis, expected);
        assert_eq!(
            visible_2d_dense(&full_grid(4), 4).unwrap(),
            visible_2d_exact(&full_grid(4)).unwrap()
        );
    }

    #[test]
    fn wall_hides_what_is_behind() {
        // a solid column at x = 2 covering every row hides x = 4
        let mut cubes: Vec<Vec<i64>> = (0..6).map(|y| vec![2, y]).collect();
        cubes.push(vec![4, 2]);
        let c = Configuration::new(6, 2, cubes).unwrap();
        let vis = visible_2d_exact(&c).unwrap();
        assert!(!vis.contains(&vec![4, 2]));
        assert_eq!(vis.len(), 6);
    }

    #[test]
    fn exact_agrees_with_dense_on_random_scenes() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..25 {
            let n = rng.random_range(3..=7);
            let mut cubes = Vec::new();
            for x in 0..n {
                for y in 0..n {
                    if (x, y) != (0, 0) && rng.random_bool(0.35) {
                        cubes.push(vec![x, y]);
                    }
                }
            }
            let c = Configuration::new(n, 2, cubes).unwrap();
            let exact = visible_2d_exact(&c).unwrap();
            let dense = visible_2d_dense(&c, 12).unwrap();
            assert!(
                dense.iter().all(|q| exact.contains(q)),
                "dense not sound: {c:?}"
            );
            assert_eq!(exact, dense, "{c:?}");
        }
    }

    #[test]
    fn rejects_bad_input() {
        let c = Configuration::new(3, 3, vec![vec![1, 1, 1]]).unwrap();
        assert!(visible_2d_exact(&c).is_err());
        let big = Configuration::new(65, 2, vec![vec![1, 1]]).unwrap();
        assert!(matches!(
            visible_2d_exact(&big),
            Err(Error::GridTooLarge { .. })
        ));
    }
}
