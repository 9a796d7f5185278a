//! Exact segment tests against axis-aligned unit cubes.

use std::cmp::Ordering;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// `num / den` with `den > 0`.
#[derive(Clone, Copy, Debug)]
pub struct Frac {
    pub num: i128,
    pub den: i128,
}

impl Frac {
    pub fn new(num: i128, den: i128) -> Frac {
        debug_assert!(den != 0);
        if den < 0 {
            Frac {
                num: -num,
                den: -den,
            }
        } else {
            Frac { num, den }
        }
    }

    pub fn int(x: i128) -> Frac {
        Frac { num: x, den: 1 }
    }
}

impl PartialEq for Frac {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}

impl Eq for Frac {}

impl PartialOrd for Frac {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Frac {
    fn cmp(&self, other: &Self) -> Ordering {
        (self.num * other.den).cmp(&(other.num * self.den))
    }
}

/// Closed segment between two rational points `start / den` and `end / den`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Segment {
    pub start: Vec<i64>,
    pub end: Vec<i64>,
    pub den: i64,
}

impl Segment {
    pub fn new(start: Vec<i64>, end: Vec<i64>, den: i64) -> Result<Segment> {
        if start.len() != end.len() || den <= 0 {
            return Err(Error::InvalidInput("malformed segment".into()));
        }
        Ok(Segment { start, end, den })
    }

    pub fn integer(start: Vec<i64>, end: Vec<i64>) -> Segment {
        Segment { start, end, den: 1 }
    }

    pub fn dim(&self) -> usize {
        self.start.len()
    }

    pub fn direction(&self) -> Vec<i64> {
        self.end
            .iter()
            .zip(&self.start)
            .map(|(e, s)| e - s)
            .collect()
    }

    /// Parameter interval, open, on which the segment's line lies inside
    /// the open unit cube with lower corner `corner`; `None` when empty.
    /// Also returns the axes that bound the interval from below and above.
    fn open_cube_interval(&self, corner: &[i64]) -> Option<(Frac, Frac, usize, usize)> {
        let den = self.den as i128;
        let mut lo = Frac::int(0);
        let mut hi = Frac::int(1);
        let (mut lo_axis, mut hi_axis) = (usize::MAX, usize::MAX);
        for i in 0..self.dim() {
            let s = self.start[i] as i128;
            let dir = self.end[i] as i128 - s;
            let a = corner[i] as i128 * den;
            let b = a + den;
            if dir == 0 {
                if !(a < s && s < b) {
                    return None;
                }
                continue;
            }
            let (mut x, mut y) = (Frac::new(a - s, dir), Frac::new(b - s, dir));
            if x > y {
                std::mem::swap(&mut x, &mut y);
            }
            if x > lo {
                lo = x;
                lo_axis = i;
            }
            if y < hi {
                hi = y;
                hi_axis = i;
            }
        }
        (lo < hi).then_some((lo, hi, lo_axis, hi_axis))
    }

    /// The open segment meets the open cube `corner + (0,1)^d`.
    pub fn hits_open_cube(&self, corner: &[i64]) -> bool {
        self.open_cube_interval(corner).is_some()
    }

    /// Axes of the facets through which the segment enters and leaves the
    /// open cube, when it passes through it. An axis is `None` when the
    /// segment starts or ends inside the cube.
    pub fn crossing_axes(&self, corner: &[i64]) -> Option<(Option<usize>, Option<usize>)> {
        self.open_cube_interval(corner).map(|(_, _, a, b)| {
            (
                (a != usize::MAX).then_some(a),
                (b != usize::MAX).then_some(b),
            )
        })
    }

    /// Every point of the segment lies in the closed box `corner + [0,1]^d`
    /// at the given end.
    pub fn end_in_closed_cube(&self, corner: &[i64], at_start: bool) -> bool {
        let pt = if at_start { &self.start } else { &self.end };
        pt.iter()
            .zip(corner)
            .all(|(&x, &c)| c * self.den <= x && x <= (c + 1) * self.den)
    }
}

/// `sin^2` of the angles whose value is rational, as `(num, den)`.
fn exact_sin_sq(theta_deg: f64) -> Option<(i128, i128)> {
    match theta_deg {
        0.0 => Some((0, 1)),
        30.0 => Some((1, 4)),
        45.0 => Some((1, 2)),
        60.0 => Some((3, 4)),
        90.0 => Some((1, 1)),
        _ => None,
    }
}

/// Whether a segment with direction `dir` meets a facet with normal along
/// `axis` at an angle of at most `90 - theta` degrees from the normal, i.e.
/// `cos^2 >= sin^2(theta)`. Exact for 0, 30, 45, 60 and 90 degrees.
pub fn shallow_blocks(dir: &[i64], axis: usize, theta_deg: f64) -> Result<bool> {
    let norm_sq: i128 = dir.iter().map(|&x| x as i128 * x as i128).sum();
    if norm_sq == 0 {
        return Err(Error::InvalidInput("zero direction".into()));
    }
    if axis >= dir.len() || !(0.0..=90.0).contains(&theta_deg) {
        return Err(Error::InvalidInput(format!(
            "axis {axis} or angle {theta_deg} out of range"
        )));
    }
    let along = dir[axis] as i128 * dir[axis] as i128;
    Ok(match exact_sin_sq(theta_deg) {
        Some((num, den)) => along * den >= num * norm_sq,
        None => {
            let s = theta_deg.to_radians().sin();
            along as f64 >= s * s * norm_sq as f64
        }
    })
}
