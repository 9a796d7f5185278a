//! Desk-scale run of every checked invariant, one row per property.

use num_bigint::BigInt;
use rayon::prelude::*;
use serde::Serialize;

use crate::construct::{build_lower_bound_config, sampled_count, DEFAULT_SPACING};
use crate::cover::{primitive_chain_cover, toy_chain_cover};
use crate::error::{Error, Result};
use crate::fourier::fourier_suite;
use crate::geometry::{primitive_heights_geometric, restricted_visible_set};
use crate::lattice::{antichain_from_lattice, lll_reduce, IntegerLattice};
use crate::modular::{
    all_sign_vectors, check_height_duality, height, odd_primes_between, ResidueVector, Sign,
};
use crate::poset::{build_s_poset, split_halves, width_bruteforce, width_exact, BRUTEFORCE_LIMIT};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VerifyRow {
    pub tag: &'static str,
    pub description: &'static str,
    pub cases: usize,
    pub failures: usize,
    /// First failure, when any.
    pub detail: Option<String>,
}

impl VerifyRow {
    pub fn passed(&self) -> bool {
        self.failures == 0
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VerifyReport {
    pub max_p: u64,
    pub rows: Vec<VerifyRow>,
    pub passed: bool,
}

impl VerifyReport {
    /// Fixed-width table, one row per property.
    pub fn table(&self) -> String {
        let mut out = format!(
            "{:<24} {:>7} {:>8}  {}\n",
            "tag", "cases", "failures", "status"
        );
        for r in &self.rows {
            out.push_str(&format!(
                "{:<24} {:>7} {:>8}  {}\n",
                r.tag,
                r.cases,
                r.failures,
                if r.passed() { "PASS" } else { "FAIL" }
            ));
            if let Some(d) = &r.detail {
                out.push_str(&format!("    {d}\n"));
            }
        }
        out
    }
}

/// Runs `check` over every case in parallel; `Ok(false)` and errors both
/// count as failures, and the first one in case order is kept.
fn row<T: Sync + std::fmt::Display>(
    tag: &'static str,
    description: &'static str,
    cases: &[T],
    check: impl Fn(&T) -> Result<bool> + Sync,
) -> VerifyRow {
    let outcomes: Vec<Option<String>> = cases
        .par_iter()
        .map(|c| match check(c) {
            Ok(true) => None,
            Ok(false) => Some(format!("{c}")),
            Err(e) => Some(format!("{c}: {e}")),
        })
        .collect();
    let failures = outcomes.iter().filter(|o| o.is_some()).count();
    VerifyRow {
        tag,
        description,
        cases: cases.len(),
        failures,
        detail: outcomes.into_iter().flatten().next(),
    }
}

struct Member {
    t: ResidueVector,
    signs: Vec<Sign>,
}

impl std::fmt::Display for Member {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s: String = self.signs.iter().map(|s| s.to_string()).collect();
        write!(f, "{} signs {s}", self.t)
    }
}

fn members(primes: &[u64]) -> Result<Vec<Member>> {
    let mut out = Vec::new();
    for &p in primes {
        for t in ResidueVector::enumerate(p, 3)? {
            for signs in all_sign_vectors(2) {
                out.push(Member {
                    t: t.clone(),
                    signs,
                });
            }
        }
    }
    Ok(out)
}

fn vectors(primes: &[u64]) -> Result<Vec<ResidueVector>> {
    let mut out = Vec::new();
    for &p in primes {
        out.extend(ResidueVector::enumerate(p, 3)?);
    }
    Ok(out)
}

/// Every property over all `t` with `d = 3` and `5 <= p <= max_p`; brute
/// force and geometric rows stop at 13.
pub fn verify_all(max_p: u64) -> Result<VerifyReport> {
    if max_p < 5 {
        return Err(Error::InvalidInput(format!("max p {max_p} is below 5")));
    }
    let primes = odd_primes_between(5, max_p);
    let small: Vec<u64> = primes.iter().copied().filter(|&p| p <= 13).collect();
    let all_members = members(&primes)?;
    let small_members = members(&small)?;
    let all_t = vectors(&primes)?;
    let small_t = vectors(&small)?;
    let admissible: Vec<ResidueVector> = all_t
        .iter()
        .filter(|t| t.coords().iter().all(|&c| c >= 2))
        .cloned()
        .collect();

    let mut rows = vec![
        row(
            "width-oracle",
            "matching width equals brute force",
            &small_members,
            |m| {
                let poset = build_s_poset(&m.t, &m.signs)?;
                if poset.len() > BRUTEFORCE_LIMIT {
                    return Ok(true);
                }
                Ok(width_exact(&poset)?.width == width_bruteforce(&poset)?)
            },
        ),
        row(
            "dilworth",
            "antichain and chain cover witnesses agree",
            &all_members,
            |m| {
                let poset = build_s_poset(&m.t, &m.signs)?;
                let w = width_exact(&poset)?;
                Ok(w.antichain.len() == w.cover.len())
            },
        ),
        row(
            "halves-split",
            "halves have equal width, at least (w-1)/2",
            &all_members,
            |m| {
                let s = split_halves(&build_s_poset(&m.t, &m.signs)?, m.t.p())?;
                Ok(s.equal && s.bound_holds)
            },
        ),
        row(
            "toy-cover-bound",
            "walk cover has at most d h_p chains",
            &all_t,
            |t| {
                let r = toy_chain_cover(t)?;
                Ok(width_exact(&r.poset)?.width <= r.len())
            },
        ),
        row(
            "height-duality",
            "h_p 2h_p* <= e(d-1)p ceil(ln p)",
            &all_t,
            |t| Ok(check_height_duality(t).holds),
        ),
        row(
            "lll-reduced",
            "LLL conditions and covolume p^(d-1)",
            &all_t,
            |t| {
                let lattice = IntegerLattice::parallelotope(t);
                lll_reduce(&lattice)?;
                Ok(lattice.covolume() == BigInt::from(t.p()).pow(t.d() as u32 - 1))
            },
        ),
        row(
            "lattice-antichain",
            "lattice plane points form an antichain",
            &all_t,
            |t| {
                match antichain_from_lattice(t) {
                    Ok(_) => Ok(true),
                    // no central multiple is a legitimate outcome at small p
                    Err(Error::NoInteriorPoint(_)) => Ok(true),
                    Err(e) => Err(e),
                }
            },
        ),
        row(
            "restricted-model",
            "lateral-edge visibility equals width",
            &small_t,
            |t| {
                let poset = build_s_poset(t, &[Sign::Plus, Sign::Plus])?;
                Ok(restricted_visible_set(t)?.len() == width_exact(&poset)?.width)
            },
        ),
        row(
            "primitive-scan",
            "facet line tests match (t_i k) % p < k",
            &small_t,
            |t| {
                let p = t.p();
                let arith: Vec<u64> = (1..p)
                    .filter(|&k| t.coords().iter().all(|&c| c * k % p < k))
                    .collect();
                Ok(primitive_heights_geometric(t)? == arith)
            },
        ),
        row(
            "primitive-cover-bound",
            "additive cover within (2d-1) h_p(t-1)",
            &admissible,
            |t| {
                let r = primitive_chain_cover(t)?;
                let hs = height(&t.shifted_down()?).value;
                Ok(r.len() as u64 <= (2 * t.d() as u64 - 1) * hs)
            },
        ),
    ];
    let fourier_t: Vec<ResidueVector> = small_t.iter().step_by(7).cloned().collect();
    rows.push(row(
        "fourier-identities",
        "DFT identities and bounds",
        &fourier_t,
        |t| Ok(fourier_suite(t, 1)?.holds),
    ));
    if max_p >= 11 {
        rows.push(row(
            "construction-floor",
            "p = 11 construction fully seen",
            &[11u64],
            |&p| {
                let cfg = build_lower_bound_config(p, 3, DEFAULT_SPACING)?;
                Ok(sampled_count(&cfg, 64, 1)? >= cfg.family_total)
            },
        ));
    }
    let passed = rows.iter().all(VerifyRow::passed);
    Ok(VerifyReport {
        max_p,
        rows,
        passed,
    })
}
