//! Lower-bound configurations: one antichain of upper-half cubes per
//! family of parallelotopes, families kept apart by a coordinate spacing,
//! plus the log-log scaling harness.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write as _;

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::geometry::{visible_sampled, Configuration, Parallelotope, SampleOptions, Segment};
use crate::lattice::antichain_from_lattice;
use crate::modular::{all_sign_vectors, is_prime, ResidueVector, Sign};
use crate::poset::{build_s_poset, width_exact, Antichain};

pub const DEFAULT_SPACING: u64 = 6;

/// Base vectors on the stride-`spacing` grid `{1, 1 + s, ...}^(d-1)`.
pub fn enumerate_families(p: u64, d: usize, spacing: u64) -> Result<Vec<ResidueVector>> {
    if !is_prime(p) || p < 3 {
        return Err(Error::NotPrime(p));
    }
    if spacing == 0 || d < 3 {
        return Err(Error::InvalidInput(format!("spacing {spacing}, d = {d}")));
    }
    let vals: Vec<u64> = (1..p).step_by(spacing as usize).collect();
    let mut out = Vec::new();
    let mut idx = vec![0usize; d - 1];
    loop {
        out.push(ResidueVector::new(
            p,
            idx.iter().map(|&i| vals[i]).collect(),
        )?);
        let mut pos = d - 1;
        loop {
            if pos == 0 {
                return Ok(out);
            }
            pos -= 1;
            idx[pos] += 1;
            if idx[pos] < vals.len() {
                break;
            }
            idx[pos] = 0;
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum AntichainSource {
    Lattice,
    Exact,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FamilyPlan {
    pub base: Vec<u64>,
    pub signs: Vec<Sign>,
    /// Characteristic vertex of the chosen member, without the trailing p.
    pub vertex: Vec<u64>,
    /// Width of the chosen member's upper half.
    pub width: usize,
    /// Upper-half heights of the placed antichain, ascending.
    pub ks: Vec<u64>,
    pub source: AntichainSource,
    /// Upper-half size of the lattice antichain, in its own member.
    pub lattice_size: usize,
}

/// Per-member candidate, before spacing is enforced.
struct Candidate {
    signs: Vec<Sign>,
    vertex: Vec<u64>,
    width: usize,
    ks: Vec<u64>,
    source: AntichainSource,
}

fn upper(p: u64, k: u64) -> bool {
    2 * k > p - 1
}

fn family_candidates(base: &ResidueVector) -> Result<(Vec<Candidate>, usize)> {
    let p = base.p();
    let lattice = match antichain_from_lattice(base) {
        Ok(a) => Some(a),
        Err(e) if e.is_invariant() => return Err(e),
        Err(e) => {
            log::warn!("no lattice antichain for {base}: {e}");
            None
        }
    };
    let lattice_upper: Option<(Vec<Sign>, Vec<u64>)> = lattice.map(|a| {
        let ks = a.ks.iter().copied().filter(|&k| upper(p, k)).collect();
        (a.signs, ks)
    });
    let lattice_size = lattice_upper.as_ref().map_or(0, |(_, ks)| ks.len());
    let mut out = Vec::new();
    for signs in all_sign_vectors(base.d() - 1) {
        let poset = build_s_poset(base, &signs)?.restrict(|k| upper(p, k));
        let w = width_exact(&poset)?;
        let mut ks = poset.k_indices(&w.antichain.members);
        ks.sort_unstable();
        let mut source = AntichainSource::Exact;
        if let Some((ls, lks)) = &lattice_upper {
            if *ls == signs && lks.len() >= ks.len() {
                ks = lks.clone();
                source = AntichainSource::Lattice;
            }
        }
        let members = ks
            .iter()
            .map(|&k| poset.index_of_k(k).expect("upper-half height"))
            .collect();
        Antichain { members }.validate(&poset)?;
        out.push(Candidate {
            vertex: base.flipped(&signs).coords().to_vec(),
            signs,
            width: w.width,
            ks,
            source,
        });
    }
    // widest first; ties keep sign order
    out.sort_by_key(|c| std::cmp::Reverse(c.ks.len()));
    Ok((out, lattice_size))
}

fn spaced(a: &[u64], b: &[u64], spacing: u64) -> bool {
    a.iter().zip(b).any(|(&x, &y)| x.abs_diff(y) >= spacing)
}

/// Sightline parallel to the lateral edge of `vertex` from just inside the
/// projected corner on the observer face to the bottom face of the cube at
/// height `k`; coordinates over `2p`.
pub fn sightline(vertex: &[u64], p: u64, k: u64) -> Segment {
    let (p, k) = (p as i64, k as i64);
    let mut start: Vec<i64> = vertex
        .iter()
        .map(|&s| 2 * (p - (s as i64 * k) % p) - 1)
        .collect();
    let mut end: Vec<i64> = start
        .iter()
        .zip(vertex)
        .map(|(&q, &s)| q + 2 * k * s as i64)
        .collect();
    start.push(0);
    end.push(2 * p * k);
    Segment {
        start,
        end,
        den: 2 * p,
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct LowerBoundConfig {
    pub p: u64,
    pub d: usize,
    pub spacing: u64,
    pub families: Vec<FamilyPlan>,
    /// Families with no member far enough from those already chosen.
    pub skipped: usize,
    /// Sum of per-family antichain sizes.
    pub family_total: usize,
    /// Distinct cubes placed.
    pub predicted_count: usize,
    /// Cubes demanded by more than one family.
    pub collisions: usize,
    /// Present for `d = 3`.
    pub configuration: Option<Configuration>,
    #[serde(skip)]
    pub hints: BTreeMap<Vec<i64>, Vec<Segment>>,
}

/// Builds the configuration: for each family the member whose upper half
/// holds the largest antichain, families taken widest first and kept only
/// when their vertex differs from every chosen one by `spacing` somewhere.
pub fn build_lower_bound_config(p: u64, d: usize, spacing: u64) -> Result<LowerBoundConfig> {
    if p < 5 {
        return Err(Error::InvalidInput(format!("p = {p} is below 5")));
    }
    let bases = enumerate_families(p, d, spacing)?;
    let mut per_family: Vec<(Vec<Candidate>, usize, Vec<u64>)> = bases
        .par_iter()
        .map(|b| family_candidates(b).map(|(c, l)| (c, l, b.coords().to_vec())))
        .collect::<Result<_>>()?;
    // stable: equal widths keep enumeration order
    per_family.sort_by(|a, b| b.0[0].ks.len().cmp(&a.0[0].ks.len()));

    let mut families: Vec<FamilyPlan> = Vec::new();
    let mut skipped = 0;
    for (cands, lattice_size, base) in per_family {
        let chosen = cands.into_iter().find(|c| {
            families
                .iter()
                .all(|f| spaced(&c.vertex, &f.vertex, spacing))
        });
        match chosen {
            Some(c) => families.push(FamilyPlan {
                base,
                signs: c.signs,
                vertex: c.vertex,
                width: c.width,
                ks: c.ks,
                source: c.source,
                lattice_size,
            }),
            None => skipped += 1,
        }
    }

    let mut owners: BTreeMap<Vec<i64>, usize> = BTreeMap::new();
    let mut hints: BTreeMap<Vec<i64>, Vec<Segment>> = BTreeMap::new();
    for f in &families {
        let mut v: Vec<i64> = f.vertex.iter().map(|&x| x as i64).collect();
        v.push(p as i64);
        let par = Parallelotope::new(v)?;
        let edge = par.edge();
        for &k in &f.ks {
            let cube = par.cube_at(k as i64);
            if !edge.hits_open_cube(&cube) {
                return Err(Error::invariant(
                    "cube-placement",
                    format!("cube {cube:?} misses the edge of {:?}", par.vertex()),
                ));
            }
            *owners.entry(cube.clone()).or_default() += 1;
            if d == 3 {
                hints
                    .entry(cube)
                    .or_default()
                    .push(sightline(&f.vertex, p, k));
            }
        }
    }
    let family_total: usize = families.iter().map(|f| f.ks.len()).sum();
    let collisions = owners.values().filter(|&&n| n > 1).count();
    if collisions > 0 {
        log::warn!("{collisions} cubes claimed by several families at p = {p}");
    }
    let configuration = if d == 3 {
        Some(Configuration::new(
            p as i64,
            d,
            owners.keys().cloned().collect(),
        )?)
    } else {
        hints.clear();
        None
    };
    Ok(LowerBoundConfig {
        p,
        d,
        spacing,
        families,
        skipped,
        family_total,
        predicted_count: owners.len(),
        collisions,
        configuration,
        hints,
    })
}

/// Visible cubes of a three-dimensional construction found by the sampling
/// oracle, seeded with the construction's own sightlines.
pub fn sampled_count(cfg: &LowerBoundConfig, rays_per_cube: usize, seed: u64) -> Result<usize> {
    let c = cfg
        .configuration
        .as_ref()
        .ok_or_else(|| Error::InvalidInput("no geometry for d > 3".into()))?;
    let opts = SampleOptions {
        rays_per_cube,
        seed,
        theta: None,
        hints: cfg.hints.clone(),
    };
    Ok(visible_sampled(c, &opts)?.len())
}

/// Least-squares slope of `ln y` against `ln x`; needs three points.
pub fn fit_loglog_slope(points: &[(f64, f64)]) -> Option<f64> {
    if points.len() < 3 || points.iter().any(|&(x, y)| x <= 0.0 || y <= 0.0) {
        return None;
    }
    let logs: Vec<(f64, f64)> = points.iter().map(|&(x, y)| (x.ln(), y.ln())).collect();
    let n = logs.len() as f64;
    let mx = logs.iter().map(|l| l.0).sum::<f64>() / n;
    let my = logs.iter().map(|l| l.1).sum::<f64>() / n;
    let sxx: f64 = logs.iter().map(|l| (l.0 - mx).powi(2)).sum();
    let sxy: f64 = logs.iter().map(|l| (l.0 - mx) * (l.1 - my)).sum();
    (sxx > 0.0).then(|| sxy / sxx)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum ScalingMode {
    Model,
    Geometric,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ScalingRow {
    pub p: u64,
    pub families: usize,
    pub predicted: usize,
    pub sampled: Option<usize>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ScalingReport {
    pub d: usize,
    pub mode: ScalingMode,
    pub rows: Vec<ScalingRow>,
    pub slope: Option<f64>,
    /// Primes at which the predicted count fell below the previous prime's.
    pub non_monotone: Vec<u64>,
}

pub struct ScalingOptions {
    pub mode: ScalingMode,
    pub rays_per_cube: usize,
    pub seed: u64,
}

pub fn scaling_experiment(
    primes: &[u64],
    d: usize,
    opts: &ScalingOptions,
) -> Result<ScalingReport> {
    if opts.mode == ScalingMode::Geometric && d != 3 {
        return Err(Error::InvalidInput("geometric scaling needs d = 3".into()));
    }
    let mut rows = Vec::new();
    for &p in primes {
        let cfg = build_lower_bound_config(p, d, DEFAULT_SPACING)?;
        let sampled = match opts.mode {
            ScalingMode::Model => None,
            ScalingMode::Geometric => Some(sampled_count(&cfg, opts.rays_per_cube, opts.seed)?),
        };
        rows.push(ScalingRow {
            p,
            families: cfg.families.len(),
            predicted: cfg.predicted_count,
            sampled,
        });
    }
    let mut non_monotone = Vec::new();
    for w in rows.windows(2) {
        if w[0].p < w[1].p && w[1].predicted < w[0].predicted {
            log::warn!(
                "predicted count drops from p = {} to p = {}",
                w[0].p,
                w[1].p
            );
            non_monotone.push(w[1].p);
        }
    }
    let pts: Vec<(f64, f64)> = rows
        .iter()
        .map(|r| (r.p as f64, r.predicted as f64))
        .collect();
    Ok(ScalingReport {
        d,
        mode: opts.mode,
        slope: fit_loglog_slope(&pts),
        rows,
        non_monotone,
    })
}

impl ScalingReport {
    /// Columns `p, families, predicted, sampled, slope`; the slope repeats
    /// on every row, empty cells where absent.
    pub fn to_csv(&self) -> Result<String> {
        let mut w = csv::Writer::from_writer(Vec::new());
        let io = |e: csv::Error| Error::InvalidInput(format!("csv: {e}"));
        w.write_record(["p", "families", "predicted", "sampled", "slope"])
            .map_err(io)?;
        let slope = self.slope.map(|s| format!("{s:.6}")).unwrap_or_default();
        for r in &self.rows {
            w.write_record([
                r.p.to_string(),
                r.families.to_string(),
                r.predicted.to_string(),
                r.sampled.map(|s| s.to_string()).unwrap_or_default(),
                slope.clone(),
            ])
            .map_err(io)?;
        }
        let bytes = w
            .into_inner()
            .map_err(|e| Error::InvalidInput(format!("csv: {e}")))?;
        Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
    }

    /// Log-log scatter of the predicted counts with the fitted line.
    pub fn to_svg(&self) -> String {
        let (w, h, m) = (480.0, 360.0, 40.0);
        let pts: Vec<(f64, f64)> = self
            .rows
            .iter()
            .filter(|r| r.predicted > 0)
            .map(|r| ((r.p as f64).ln(), (r.predicted as f64).ln()))
            .collect();
        let mut s = String::new();
        let _ = writeln!(
            s,
            r#"<svg xmlns="http://www.w3.org/2000/svg" width="{w}" height="{h}" viewBox="0 0 {w} {h}">"#
        );
        let _ = writeln!(s, r#"<rect width="{w}" height="{h}" fill="white"/>"#);
        if let (Some(x0), Some(x1)) = (
            pts.iter().map(|p| p.0).reduce(f64::min),
            pts.iter().map(|p| p.0).reduce(f64::max),
        ) {
            let y0 = pts.iter().map(|p| p.1).fold(f64::INFINITY, f64::min);
            let y1 = pts.iter().map(|p| p.1).fold(f64::NEG_INFINITY, f64::max);
            let sx = |x: f64| m + (x - x0) / (x1 - x0).max(1e-9) * (w - 2.0 * m);
            let sy = |y: f64| h - m - (y - y0) / (y1 - y0).max(1e-9) * (h - 2.0 * m);
            for &(x, y) in &pts {
                let _ = writeln!(
                    s,
                    r#"<circle cx="{:.2}" cy="{:.2}" r="3" fill="black"/>"#,
                    sx(x),
                    sy(y)
                );
            }
            if let Some(b) = self.slope {
                let n = pts.len() as f64;
                let (mx, my) = (
                    pts.iter().map(|p| p.0).sum::<f64>() / n,
                    pts.iter().map(|p| p.1).sum::<f64>() / n,
                );
                let (ya, yb) = (my + b * (x0 - mx), my + b * (x1 - mx));
                let _ = writeln!(
                    s,
                    r#"<line x1="{:.2}" y1="{:.2}" x2="{:.2}" y2="{:.2}" stroke="steelblue"/>"#,
                    sx(x0),
                    sy(ya),
                    sx(x1),
                    sy(yb)
                );
                let _ = writeln!(
                    s,
                    r#"<text x="{m}" y="20" font-size="12">slope {b:.3}, d = {}</text>"#,
                    self.d
                );
            }
        }
        let _ = writeln!(
            s,
            r#"<text x="{:.0}" y="{:.0}" font-size="12">ln p</text>"#,
            w / 2.0,
            h - 8.0
        );
        s.push_str("</svg>\n");
        s
    }
}

/// Cube sets of two plans never meet when their vertices are spaced apart;
/// returns the cubes shared by any two families.
pub fn shared_cubes(cfg: &LowerBoundConfig) -> BTreeSet<Vec<i64>> {
    let p = cfg.p as i64;
    let mut seen: BTreeMap<Vec<i64>, usize> = BTreeMap::new();
    for f in &cfg.families {
        for &k in &f.ks {
            let k = k as i64;
            let mut c: Vec<i64> = f.vertex.iter().map(|&s| s as i64 * k / p).collect();
            c.push(k);
            *seen.entry(c).or_default() += 1;
        }
    }
    seen.into_iter()
        .filter(|(_, n)| *n > 1)
        .map(|(c, _)| c)
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn family_grid_counts() {
        let f = enumerate_families(13, 3, 6).unwrap();
        let coords: Vec<Vec<u64>> = f.iter().map(|t| t.coords().to_vec()).collect();
        assert_eq!(coords, vec![vec![1, 1], vec![1, 7], vec![7, 1], vec![7, 7]]);
        assert_eq!(enumerate_families(7, 3, 6).unwrap().len(), 1);
        assert_eq!(enumerate_families(7, 3, 1).unwrap().len(), 36);
        assert_eq!(enumerate_families(11, 4, 1).unwrap().len(), 1000);
        assert!(enumerate_families(9, 3, 6).is_err());
    }

    #[test]
    fn small_construction() {
        let cfg = build_lower_bound_config(5, 3, 6).unwrap();
        assert!(cfg.predicted_count >= cfg.families.len());
        for f in &cfg.families {
            assert!(!f.ks.is_empty());
            assert!(f.ks.iter().all(|&k| 2 * k > 4));
        }
        assert_eq!(
            cfg.configuration.as_ref().unwrap().len(),
            cfg.predicted_count
        );
    }

    #[test]
    fn families_are_spaced_and_disjoint() {
        for p in [11, 13, 17] {
            let cfg = build_lower_bound_config(p, 3, 6).unwrap();
            for (i, a) in cfg.families.iter().enumerate() {
                for b in &cfg.families[..i] {
                    assert!(spaced(&a.vertex, &b.vertex, 6));
                }
            }
            assert!(shared_cubes(&cfg).is_empty());
            assert_eq!(cfg.collisions, 0);
            assert_eq!(cfg.family_total, cfg.predicted_count);
        }
    }

    #[test]
    fn sightlines_join_observer_to_target() {
        let p = 11;
        let v = [3u64, 7];
        let par = Parallelotope::new(vec![3, 7, 11]).unwrap();
        for k in 1..p {
            let s = sightline(&v, p, k);
            assert!(s.end_in_closed_cube(&[0, 0, 0], true));
            assert!(s.end_in_closed_cube(&par.cube_at(k as i64), false));
        }
    }

    #[test]
    fn model_only_in_four_dimensions() {
        let cfg = build_lower_bound_config(11, 4, 6).unwrap();
        assert!(cfg.configuration.is_none());
        assert!(cfg.predicted_count >= cfg.families.len());
    }

    #[test]
    fn slope_fit() {
        let pts: Vec<(f64, f64)> = [2.0f64, 3.0, 5.0, 7.0]
            .iter()
            .map(|&x| (x, 4.0 * x.powf(2.5)))
            .collect();
        assert!((fit_loglog_slope(&pts).unwrap() - 2.5).abs() < 1e-12);
        assert!(fit_loglog_slope(&pts[..2]).is_none());
    }

    #[test]
    fn report_outputs() {
        let r = scaling_experiment(
            &[11],
            3,
            &ScalingOptions {
                mode: ScalingMode::Model,
                rays_per_cube: 0,
                seed: 0,
            },
        )
        .unwrap();
        assert!(r.slope.is_none());
        let csv = r.to_csv().unwrap();
        assert!(csv.starts_with("p,families,predicted,sampled,slope\n11,"));
        assert!(r.to_svg().contains("<circle"));
    }
}
