//! The discrete Fourier transform on `Z_p^d` with kernel `e_p(w . x)` and no
//! normalization, and numeric checks of the box and multiple-set identities
//! behind the height-duality bound.

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::modular::{height, ResidueVector};

pub const GRID_LIMIT: u64 = 1_000_000;

/// Relative tolerance for identities that hold exactly in real arithmetic.
pub const IDENTITY_TOL: f64 = 1e-9;
/// Relative tolerance for integer-valued closed forms.
pub const CLOSED_FORM_TOL: f64 = 1e-6;

/// Complex values on `Z_p^d`, stored row-major with the last coordinate
/// varying fastest.
#[derive(Clone, Debug, PartialEq)]
pub struct GridFunction {
    p: usize,
    d: usize,
    values: Vec<Complex64>,
}

fn grid_size(p: usize, d: usize) -> Result<usize> {
    let size = (p as u64).checked_pow(d as u32).unwrap_or(u64::MAX);
    if size > GRID_LIMIT {
        return Err(Error::GridTooLarge {
            size,
            limit: GRID_LIMIT,
        });
    }
    Ok(size as usize)
}

impl GridFunction {
    pub fn from_fn(p: u64, d: usize, f: impl Fn(&[usize]) -> Complex64) -> Result<Self> {
        let (p, size) = (p as usize, grid_size(p as usize, d)?);
        let mut w = vec![0usize; d];
        let mut values = Vec::with_capacity(size);
        for _ in 0..size {
            values.push(f(&w));
            for i in (0..d).rev() {
                w[i] += 1;
                if w[i] < p {
                    break;
                }
                w[i] = 0;
            }
        }
        Ok(GridFunction { p, d, values })
    }

    pub fn from_values(p: u64, d: usize, values: Vec<Complex64>) -> Result<Self> {
        let size = grid_size(p as usize, d)?;
        if values.len() != size {
            return Err(Error::InvalidInput(format!(
                "{} values for a grid of {size}",
                values.len()
            )));
        }
        Ok(GridFunction {
            p: p as usize,
            d,
            values,
        })
    }

    pub fn delta(p: u64, d: usize) -> Result<Self> {
        Self::from_fn(p, d, |w| real(w.iter().all(|&x| x == 0)))
    }

    pub fn constant(p: u64, d: usize, c: f64) -> Result<Self> {
        Self::from_fn(p, d, |_| Complex64::new(c, 0.0))
    }

    /// Indicator of `[0, n)^d`.
    pub fn box_indicator(p: u64, d: usize, n: u64) -> Result<Self> {
        Self::from_fn(p, d, |w| real(w.iter().all(|&x| (x as u64) < n)))
    }

    /// Indicator of the multiples `k t mod p`, `k = 0..p-1`.
    pub fn multiples_indicator(t: &ResidueVector) -> Result<Self> {
        let p = t.p();
        let mut f = Self::from_fn(p, t.d(), |_| Complex64::new(0.0, 0.0))?;
        for k in 0..p {
            let idx = f.index(
                &t.multiple(k)
                    .iter()
                    .map(|&x| x as usize)
                    .collect::<Vec<_>>(),
            );
            f.values[idx] = Complex64::new(1.0, 0.0);
        }
        Ok(f)
    }

    /// Independent uniform real and imaginary parts in `[-1, 1)`.
    pub fn random(p: u64, d: usize, seed: u64) -> Result<Self> {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let size = grid_size(p as usize, d)?;
        let values = (0..size)
            .map(|_| Complex64::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0)))
            .collect();
        Self::from_values(p, d, values)
    }

    pub fn p(&self) -> u64 {
        self.p as u64
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn values(&self) -> &[Complex64] {
        &self.values
    }

    pub fn index(&self, w: &[usize]) -> usize {
        w.iter().fold(0, |acc, &x| acc * self.p + x % self.p)
    }

    pub fn coords(&self, mut idx: usize) -> Vec<usize> {
        let mut w = vec![0; self.d];
        for i in (0..self.d).rev() {
            w[i] = idx % self.p;
            idx /= self.p;
        }
        w
    }

    pub fn at(&self, w: &[usize]) -> Complex64 {
        self.values[self.index(w)]
    }

    fn transform(&self, sign: f64) -> GridFunction {
        let p = self.p;
        let twiddle: Vec<Complex64> = (0..p)
            .map(|j| {
                Complex64::from_polar(1.0, sign * 2.0 * std::f64::consts::PI * j as f64 / p as f64)
            })
            .collect();
        let mut cur = self.values.clone();
        let mut line = vec![Complex64::new(0.0, 0.0); p];
        for axis in 0..self.d {
            let stride = p.pow((self.d - 1 - axis) as u32);
            let block = stride * p;
            for start in (0..cur.len()).step_by(block) {
                for offset in 0..stride {
                    let base = start + offset;
                    for (x, slot) in line.iter_mut().enumerate() {
                        *slot = (0..p)
                            .map(|w| cur[base + w * stride] * twiddle[(w * x) % p])
                            .sum();
                    }
                    for (x, v) in line.iter().enumerate() {
                        cur[base + x * stride] = *v;
                    }
                }
            }
        }
        GridFunction {
            p,
            d: self.d,
            values: cur,
        }
    }

    /// `f^(x) = sum_w e_p(w . x) f(w)`.
    pub fn dft(&self) -> GridFunction {
        self.transform(1.0)
    }

    /// Conjugate kernel with the full `1 / p^d`.
    pub fn inverse(&self) -> GridFunction {
        let mut g = self.transform(-1.0);
        let scale = 1.0 / g.values.len() as f64;
        g.values.iter_mut().for_each(|v| *v *= scale);
        g
    }

    pub fn pointwise(&self, other: &GridFunction) -> GridFunction {
        GridFunction {
            p: self.p,
            d: self.d,
            values: self
                .values
                .iter()
                .zip(&other.values)
                .map(|(a, b)| a * b)
                .collect(),
        }
    }

    pub fn powi(&self, k: u32) -> GridFunction {
        GridFunction {
            p: self.p,
            d: self.d,
            values: self.values.iter().map(|v| v.powu(k)).collect(),
        }
    }

    /// `sum_w f(w) conj(g(w))`.
    pub fn inner(&self, other: &GridFunction) -> Complex64 {
        self.values
            .iter()
            .zip(&other.values)
            .map(|(a, b)| a * b.conj())
            .sum()
    }

    /// Cyclic convolution by the defining double sum.
    pub fn convolve_direct(&self, other: &GridFunction) -> GridFunction {
        let n = self.values.len();
        let mut out = vec![Complex64::new(0.0, 0.0); n];
        for i in 0..n {
            if self.values[i] == Complex64::new(0.0, 0.0) {
                continue;
            }
            let a = self.coords(i);
            for j in 0..n {
                let b = other.coords(j);
                let sum: Vec<usize> = a.iter().zip(&b).map(|(x, y)| (x + y) % self.p).collect();
                out[self.index(&sum)] += self.values[i] * other.values[j];
            }
        }
        GridFunction {
            p: self.p,
            d: self.d,
            values: out,
        }
    }

    pub fn max_abs_diff(&self, other: &GridFunction) -> f64 {
        self.values
            .iter()
            .zip(&other.values)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    pub fn max_abs(&self) -> f64 {
        self.values.iter().map(|v| v.norm()).fold(0.0, f64::max)
    }
}

fn real(b: bool) -> Complex64 {
    Complex64::new(if b { 1.0 } else { 0.0 }, 0.0)
}

/// `|x|` for the representative of `x` in `(-p/2, p/2]`.
pub fn symmetric_abs(x: usize, p: usize) -> usize {
    x.min(p - x % p)
}

fn check_same_grid(f: &GridFunction, g: &GridFunction) -> Result<()> {
    if f.p != g.p || f.d != g.d {
        return Err(Error::InvalidInput(
            "functions live on different grids".into(),
        ));
    }
    Ok(())
}

/// Relative gap between `sum f conj(g)` and `p^-d sum f^ conj(g^)`.
pub fn parseval_check(f: &GridFunction, g: &GridFunction) -> Result<f64> {
    check_same_grid(f, g)?;
    let lhs = f.inner(g);
    let rhs = f.dft().inner(&g.dft()) / f.values.len() as f64;
    let scale = lhs.norm().max(rhs.norm()).max(1.0);
    Ok((lhs - rhs).norm() / scale)
}

/// Worst-case margin of an upper bound over all frequencies.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct BoundCheck {
    pub frequencies: usize,
    pub violations: usize,
    /// Smallest `bound - |value|`, relative to `p^d`.
    pub worst_slack: f64,
}

impl BoundCheck {
    pub fn holds(&self) -> bool {
        self.violations == 0
    }
}

fn bound_check(values: &GridFunction, bound: impl Fn(&[usize]) -> f64) -> BoundCheck {
    let scale = values.values.len() as f64;
    let mut worst = f64::INFINITY;
    let mut violations = 0;
    for (i, v) in values.values.iter().enumerate() {
        let b = bound(&values.coords(i));
        let slack = (b - v.norm()) / scale;
        if slack < -IDENTITY_TOL {
            violations += 1;
        }
        worst = worst.min(slack);
    }
    BoundCheck {
        frequencies: values.values.len(),
        violations,
        worst_slack: worst,
    }
}

/// `min(p / (2|x|), n)`, with `n` at `x = 0`.
fn box_factor(x: usize, p: usize, n: f64) -> f64 {
    let a = symmetric_abs(x, p);
    if a == 0 {
        n
    } else {
        (p as f64 / (2.0 * a as f64)).min(n)
    }
}

/// `|h^(x)| <= prod_k min(p / (2|x_k|), n)` for the indicator of `[0, n)^d`.
pub fn box_indicator_bound_check(p: u64, d: usize, n: u64) -> Result<BoundCheck> {
    if n == 0 || n > p {
        return Err(Error::InvalidInput(format!(
            "box side {n} outside [1, {p}]"
        )));
    }
    let h = GridFunction::box_indicator(p, d, n)?.dft();
    let pu = p as usize;
    Ok(bound_check(&h, |x| {
        x.iter().map(|&xi| box_factor(xi, pu, n as f64)).product()
    }))
}

/// Largest distance of the transform of the multiples indicator from the
/// values `p` (on `x . t = 0`) and 0 (elsewhere), relative to `p`.
pub fn multiples_dichotomy_error(t: &ResidueVector) -> Result<f64> {
    let f = GridFunction::multiples_indicator(t)?.dft();
    let p = t.p() as usize;
    let full: Vec<usize> = t.full().iter().map(|&x| x as usize).collect();
    Ok(f.values
        .iter()
        .enumerate()
        .map(|(i, v)| {
            let x = f.coords(i);
            let dot: usize = x.iter().zip(&full).map(|(a, b)| a * b).sum::<usize>() % p;
            let expect = if dot == 0 { p as f64 } else { 0.0 };
            (v - Complex64::new(expect, 0.0)).norm() / p as f64
        })
        .fold(0.0, f64::max))
}

/// Largest gap between direct cyclic convolution and the inverse transform
/// of the pointwise product, relative to the largest convolution value.
pub fn convolution_check(f: &GridFunction, g: &GridFunction) -> Result<f64> {
    check_same_grid(f, g)?;
    let direct = f.convolve_direct(g);
    let via = f.dft().pointwise(&g.dft()).inverse();
    Ok(direct.max_abs_diff(&via) / direct.max_abs().max(1.0))
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct GdkReport {
    pub p: u64,
    pub d: usize,
    pub k: u32,
    pub hp: u64,
    /// Box side `ceil(h_p / k)`.
    pub side: u64,
    /// `side^(k d)`.
    pub expected_at_zero: f64,
    pub observed_at_zero: f64,
    pub zero_rel_error: f64,
    pub bound: BoundCheck,
    /// `sum_w f(w) g(w)` for the multiples indicator `f`; should be 1.
    pub support_overlap: f64,
    pub support_error: f64,
}

impl GdkReport {
    pub fn holds(&self) -> bool {
        self.zero_rel_error <= CLOSED_FORM_TOL
            && self.bound.holds()
            && self.support_error <= CLOSED_FORM_TOL
    }
}

/// The `k`-fold self-convolution `g` of the indicator of `[0, ceil(h_p/k))^d`
/// through `g^ = (1^)^k`: its value at 0, its frequency bound, and its
/// overlap with the multiples of `t`.
pub fn g_dk_checks(t: &ResidueVector, k: u32) -> Result<GdkReport> {
    if k == 0 {
        return Err(Error::InvalidInput("k must be at least 1".into()));
    }
    let (p, d) = (t.p(), t.d());
    let hp = height(t).value;
    let side = hp.div_ceil(k as u64);
    let one_hat = GridFunction::box_indicator(p, d, side)?.dft();
    let g_hat = one_hat.powi(k);

    let expected = (side as f64).powi((k as usize * d) as i32);
    let observed = g_hat.values[0].norm();
    let zero_rel_error = (observed - expected).abs() / expected;

    let pu = p as usize;
    let bound = bound_check(&g_hat, |x| {
        x.iter()
            .map(|&xi| box_factor(xi, pu, side as f64).powi(k as i32))
            .product()
    });

    let g = g_hat.inverse();
    let f = GridFunction::multiples_indicator(t)?;
    let overlap = f.inner(&g);
    Ok(GdkReport {
        p,
        d,
        k,
        hp,
        side,
        expected_at_zero: expected,
        observed_at_zero: observed,
        zero_rel_error,
        bound,
        support_overlap: overlap.re,
        support_error: (overlap - Complex64::new(1.0, 0.0)).norm(),
    })
}

/// Every transform check at one residue vector.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct FourierReport {
    pub p: u64,
    pub d: usize,
    pub t: Vec<u64>,
    pub roundtrip_error: f64,
    pub parseval_error: f64,
    pub multiples_error: f64,
    pub box_bound: BoundCheck,
    pub line_bound: BoundCheck,
    pub convolution_error: f64,
    pub gdk: Vec<GdkReport>,
    pub holds: bool,
}

pub fn fourier_suite(t: &ResidueVector, seed: u64) -> Result<FourierReport> {
    let (p, d) = (t.p(), t.d());
    let f = GridFunction::random(p, d, seed)?;
    let g = GridFunction::random(p, d, seed.wrapping_add(1))?;
    let roundtrip_error = f.dft().inverse().max_abs_diff(&f) / f.max_abs();
    let parseval_error = parseval_check(&f, &g)?;
    let multiples_error = multiples_dichotomy_error(t)?;
    let n = p.div_ceil(3);
    let box_bound = box_indicator_bound_check(p, d, n)?;
    let line_bound = box_indicator_bound_check(p, 1, n)?;
    // the direct convolution is quadratic in the grid, so use a small one
    let cp = p.min(5);
    let convolution_error = convolution_check(
        &GridFunction::random(cp, 2, seed.wrapping_add(2))?,
        &GridFunction::random(cp, 2, seed.wrapping_add(3))?,
    )?;
    let hp = height(t).value;
    let gdk = (1..=hp.min(3) as u32)
        .map(|k| g_dk_checks(t, k))
        .collect::<Result<Vec<_>>>()?;
    let holds = roundtrip_error < IDENTITY_TOL
        && parseval_error < IDENTITY_TOL
        && multiples_error < CLOSED_FORM_TOL
        && box_bound.holds()
        && line_bound.holds()
        && convolution_error < IDENTITY_TOL
        && gdk.iter().all(GdkReport::holds);
    Ok(FourierReport {
        p,
        d,
        t: t.coords().to_vec(),
        roundtrip_error,
        parseval_error,
        multiples_error,
        box_bound,
        line_bound,
        convolution_error,
        gdk,
        holds,
    })
}
