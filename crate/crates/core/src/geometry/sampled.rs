//! Sampling oracle: a cube is reported visible only when an explicit
//! segment to it is checked free, so the count is a lower bound.

use std::collections::BTreeMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use super::segment::{shallow_blocks, Segment};
use super::Configuration;
use crate::error::{Error, Result};

/// Common denominator of sampled endpoints.
const SAMPLE_DEN: i64 = 64;

#[derive(Clone, Debug, Default)]
pub struct SampleOptions {
    pub rays_per_cube: usize,
    pub seed: u64,
    /// When set, a blocker only stops a segment that crosses one of its
    /// facets within `90 - theta` degrees of the facet normal.
    pub theta: Option<f64>,
    /// Extra segments to try first, keyed by target cube.
    pub hints: BTreeMap<Vec<i64>, Vec<Segment>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SampledVisibility {
    pub visible: Vec<Vec<i64>>,
    pub rays_tested: u64,
    /// Cubes first confirmed by a hint segment.
    pub via_hint: usize,
}

impl SampledVisibility {
    pub fn len(&self) -> usize {
        self.visible.len()
    }

    pub fn is_empty(&self) -> bool {
        self.visible.is_empty()
    }
}

fn blocks(seg: &Segment, cube: &[i64], theta: Option<f64>) -> Result<bool> {
    let Some((entry, exit)) = seg.crossing_axes(cube) else {
        return Ok(false);
    };
    let Some(theta) = theta else {
        return Ok(true);
    };
    let dir = seg.direction();
    for axis in [entry, exit] {
        match axis {
            // an endpoint inside the cube: nothing to pass through
            None => return Ok(true),
            Some(a) if shallow_blocks(&dir, a, theta)? => return Ok(true),
            Some(_) => {}
        }
    }
    Ok(false)
}

fn free(seg: &Segment, blockers: &[&Vec<i64>], theta: Option<f64>) -> Result<bool> {
    for b in blockers {
        if blocks(seg, b, theta)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// A point on the facet of the unit cube at `corner` normal to `axis` on
/// `side`, scaled by `SAMPLE_DEN`; free coordinates lean towards the ends.
fn facet_point(rng: &mut ChaCha8Rng, corner: &[i64], axis: usize, side: i64) -> Vec<i64> {
    corner
        .iter()
        .enumerate()
        .map(|(i, &c)| {
            let off = if i == axis {
                side * SAMPLE_DEN
            } else if rng.random_bool(0.25) {
                if rng.random_bool(0.5) {
                    0
                } else {
                    SAMPLE_DEN
                }
            } else {
                rng.random_range(0..=SAMPLE_DEN)
            };
            c * SAMPLE_DEN + off
        })
        .collect()
}

fn sample_segment(rng: &mut ChaCha8Rng, target: &[i64], ray: usize) -> Segment {
    let d = target.len();
    let origin = vec![0; d];
    let stratum = ray % (d * d);
    let (ao, at) = (stratum / d, stratum % d);
    // facing sides mostly, any side every fourth ray
    let (so, st) = if ray % 4 == 3 {
        (rng.random_range(0..=1), rng.random_range(0..=1))
    } else {
        (1, 0)
    };
    Segment {
        start: facet_point(rng, &origin, ao, so),
        end: facet_point(rng, target, at, st),
        den: SAMPLE_DEN,
    }
}

/// Visible cubes found by trying hint segments and then `rays_per_cube`
/// seeded samples per cube, each checked exactly against every other cube.
pub fn visible_sampled(c: &Configuration, opts: &SampleOptions) -> Result<SampledVisibility> {
    if !(2..=3).contains(&c.d()) {
        return Err(Error::InvalidInput(format!(
            "sampling supports d = 2 or 3, got {}",
            c.d()
        )));
    }
    let observer = vec![0; c.d()];
    for (target, segs) in &opts.hints {
        for s in segs {
            if s.dim() != c.d()
                || !s.end_in_closed_cube(&observer, true)
                || !s.end_in_closed_cube(target, false)
            {
                return Err(Error::InvalidInput(format!(
                    "hint segment for {target:?} does not join the observer to it"
                )));
            }
        }
    }
    // per cube: how it was confirmed (hint or sample), and segments tried
    let results: Vec<Result<(Option<bool>, u64)>> = c
        .cubes()
        .par_iter()
        .enumerate()
        .map(|(idx, target)| {
            let blockers: Vec<&Vec<i64>> = c
                .cubes()
                .iter()
                .filter(|b| *b != target && b.iter().zip(target).all(|(&x, &t)| x <= t))
                .collect();
            let mut tested = 0u64;
            if let Some(segs) = opts.hints.get(target) {
                for s in segs {
                    tested += 1;
                    if free(s, &blockers, opts.theta)? {
                        return Ok((Some(true), tested));
                    }
                }
            }
            let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
            rng.set_stream(idx as u64);
            for ray in 0..opts.rays_per_cube {
                tested += 1;
                let s = sample_segment(&mut rng, target, ray);
                if free(&s, &blockers, opts.theta)? {
                    return Ok((Some(false), tested));
                }
            }
            Ok((None, tested))
        })
        .collect();
    let mut visible = Vec::new();
    let mut rays_tested = 0;
    let mut via_hint = 0;
    for (r, cube) in results.into_iter().zip(c.cubes()) {
        let (found, n) = r?;
        rays_tested += n;
        if let Some(hint) = found {
            visible.push(cube.clone());
            via_hint += usize::from(hint);
        }
    }
    Ok(SampledVisibility {
        visible,
        rays_tested,
        via_hint,
    })
}
