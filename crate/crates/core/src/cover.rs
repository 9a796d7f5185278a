//! Constructive chain covers: the multiples walk along a low-height
//! generator, and the additive-step cover of the primitive poset.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::modular::{height, ResidueVector, Sign};
use crate::poset::{build_primitive_poset, build_s_poset, ChainCover, Poset};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum CoverKind {
    Toy,
    Primitive,
}

#[derive(Clone, Debug, Serialize)]
pub struct CoverReport {
    pub kind: CoverKind,
    #[serde(skip)]
    pub poset: Poset,
    pub cover: ChainCover,
    pub bound: u64,
    /// `u = a t mod p` for the walk, `[l]` for the additive step.
    pub generator: Vec<u64>,
    /// Chain starts beyond the unavoidable ones: wraps for the walk, cut
    /// steps for the additive cover.
    pub cuts: u64,
    /// Counting bound on the chain number: `sum u_i` for the walk,
    /// `l + sum (t_i l) % p` for the additive cover.
    pub cut_budget: u64,
}

impl CoverReport {
    pub fn len(&self) -> usize {
        self.cover.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cover.is_empty()
    }
}

fn check(cond: bool, tag: &'static str, detail: impl FnOnce() -> String) -> Result<()> {
    if cond {
        Ok(())
    } else {
        Err(Error::invariant(tag, detail()))
    }
}

/// Walks `k u` for `k = 1..p-1` where `u` is the height-minimizing multiple
/// of `t`, starting a new chain whenever some coordinate wraps past `p`.
/// The cover is of the all-plus poset of `t`.
pub fn toy_chain_cover(t: &ResidueVector) -> Result<CoverReport> {
    let p = t.p();
    let d = t.d() as u64;
    let h = height(t);
    let u = t.multiple(h.multiplier);
    let poset = build_s_poset(t, &vec![Sign::Plus; t.coords().len()])?;

    // element index of k t is k, so k u is index (k a) mod p
    let mut chains: Vec<Vec<usize>> = vec![vec![0]];
    let mut wraps = 0u64;
    let mut prev = vec![0u64; u.len()];
    for k in 1..p {
        let cur: Vec<u64> = u.iter().map(|&x| x * k % p).collect();
        if cur.iter().zip(&prev).any(|(c, q)| c < q) {
            wraps += 1;
            chains.push(Vec::new());
        }
        chains
            .last_mut()
            .expect("nonempty")
            .push((k * h.multiplier % p) as usize);
        prev = cur;
    }
    let cover = ChainCover { chains };
    cover.validate(&poset)?;

    let budget: u64 = u.iter().sum();
    let bound = d * h.value;
    let n = cover.len() as u64;
    check(n == 1 + wraps, "toy-cover-count", || {
        format!("{n} chains but {wraps} wraps")
    })?;
    check(wraps <= budget, "toy-cover-wraps", || {
        format!("{wraps} wraps exceed sum of u = {budget}")
    })?;
    check(budget <= bound, "toy-cover-generator", || {
        format!("sum of u = {budget} exceeds d h_p = {bound}")
    })?;
    check(n <= bound, "toy-cover-bound", || {
        format!("{n} chains exceed d h_p = {bound}")
    })?;
    Ok(CoverReport {
        kind: CoverKind::Toy,
        poset,
        cover,
        bound,
        generator: u,
        cuts: wraps,
        cut_budget: budget,
    })
}

/// Covers the primitive poset by chains `a, a + l, a + 2l, ...`, cutting
/// wherever some `(t_i a) % p + (t_i l) % p` reaches `p`. The step `l` is
/// the height witness of `t - 1` when that height is at most `p / 2`, and 1
/// otherwise.
pub fn primitive_chain_cover(t: &ResidueVector) -> Result<CoverReport> {
    let p = t.p();
    let d = t.d() as u64;
    let shifted = t.shifted_down()?;
    let hs = height(&shifted);
    let small = 2 * hs.value <= p;
    let l = if small { hs.multiplier } else { 1 };
    let steps: Vec<u64> = t.coords().iter().map(|&ti| ti * l % p).collect();
    if small {
        for (&s, &ti) in steps.iter().zip(t.coords()) {
            check(s == (ti - 1) * l % p + l, "primitive-step", || {
                format!("(t_i l) % p = {s} differs from ((t_i - 1) l) % p + l")
            })?;
        }
    }
    let poset = build_primitive_poset(t);

    let mut chain_of: Vec<Option<usize>> = vec![None; p as usize];
    let mut chains: Vec<Vec<usize>> = Vec::new();
    let mut cuts = 0u64;
    for (idx, e) in poset.elements().iter().enumerate() {
        let a = e.k;
        let extend = a > l && {
            let b = a - l;
            t.coords()
                .iter()
                .zip(&steps)
                .all(|(&ti, &s)| ti * b % p + s < p)
        };
        if extend {
            let b = a - l;
            for (&ti, &s) in t.coords().iter().zip(&steps) {
                check(ti * a % p == ti * b % p + s, "primitive-step", || {
                    format!("step identity fails from {b} to {a}")
                })?;
            }
            let c = chain_of[b as usize].ok_or_else(|| {
                Error::invariant(
                    "primitive-step",
                    format!("{b} is not primitive although {a} = {b} + {l} is"),
                )
            })?;
            chains[c].push(idx);
            chain_of[a as usize] = Some(c);
        } else {
            if a > l {
                cuts += 1;
            }
            chain_of[a as usize] = Some(chains.len());
            chains.push(vec![idx]);
        }
    }
    let cover = ChainCover { chains };
    cover.validate(&poset)?;

    let budget = l + steps.iter().sum::<u64>();
    let bound = if small {
        (2 * d - 1) * hs.value
    } else {
        (d - 1) * p
    };
    let n = cover.len() as u64;
    check(n <= budget, "primitive-cover-count", || {
        format!("{n} chains exceed l + sum (t_i l) % p = {budget}")
    })?;
    check(budget <= bound, "primitive-cover-bound", || {
        format!("budget {budget} exceeds the bound {bound}")
    })?;
    Ok(CoverReport {
        kind: CoverKind::Primitive,
        poset,
        cover,
        bound,
        generator: vec![l],
        cuts,
        cut_budget: budget,
    })
}
