//! Visibility posets under strict product order and their exact widths.

mod matching;

pub use matching::{dilworth, hopcroft_karp};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::modular::{all_sign_vectors, ResidueVector, Sign};

/// A point with rational coordinates `coords[i] / den`, remembering the
/// multiplier `k` it came from.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct PosetElement {
    pub coords: Vec<i64>,
    pub den: i64,
    pub k: u64,
}

impl PosetElement {
    pub fn integer(coords: Vec<i64>, k: u64) -> Self {
        PosetElement { coords, den: 1, k }
    }

    /// Every coordinate strictly smaller than the matching one of `other`.
    pub fn strictly_below(&self, other: &PosetElement) -> bool {
        self.coords
            .iter()
            .zip(&other.coords)
            .all(|(&a, &b)| (a as i128) * (other.den as i128) < (b as i128) * (self.den as i128))
    }

    pub fn as_f64(&self) -> Vec<f64> {
        self.coords
            .iter()
            .map(|&c| c as f64 / self.den as f64)
            .collect()
    }
}

/// Finite set of points in `d` dimensions; `a < b` iff `a` is below `b` in
/// every coordinate. Pairs that tie in some coordinate are incomparable.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Poset {
    d: usize,
    elements: Vec<PosetElement>,
}

impl Poset {
    pub fn new(d: usize, elements: Vec<PosetElement>) -> Result<Self> {
        if let Some(e) = elements.iter().find(|e| e.coords.len() != d || e.den <= 0) {
            return Err(Error::InvalidInput(format!(
                "element from k={} has {} coordinates over denominator {}",
                e.k,
                e.coords.len(),
                e.den
            )));
        }
        Ok(Poset { d, elements })
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn elements(&self) -> &[PosetElement] {
        &self.elements
    }

    pub fn less(&self, i: usize, j: usize) -> bool {
        self.elements[i].strictly_below(&self.elements[j])
    }

    pub fn comparable(&self, i: usize, j: usize) -> bool {
        self.less(i, j) || self.less(j, i)
    }

    /// Sub-poset on the elements whose multiplier satisfies `keep`.
    pub fn restrict(&self, keep: impl Fn(u64) -> bool) -> Poset {
        Poset {
            d: self.d,
            elements: self
                .elements
                .iter()
                .filter(|e| keep(e.k))
                .cloned()
                .collect(),
        }
    }

    pub fn index_of_k(&self, k: u64) -> Option<usize> {
        self.elements.iter().position(|e| e.k == k)
    }

    pub fn k_indices(&self, idx: &[usize]) -> Vec<u64> {
        idx.iter().map(|&i| self.elements[i].k).collect()
    }

    /// Matrix of `less` over all ordered pairs.
    pub fn comparability_matrix(&self) -> Vec<Vec<bool>> {
        (0..self.len())
            .map(|i| (0..self.len()).map(|j| self.less(i, j)).collect())
            .collect()
    }
}

/// Elements `((s_i k t_i) mod p, ..., k)` for `k = 0..p-1`, where `s_i` is
/// the sign of coordinate `i`.
pub fn build_s_poset(t: &ResidueVector, signs: &[Sign]) -> Result<Poset> {
    if signs.len() + 1 != t.d() {
        return Err(Error::InvalidInput(format!(
            "{} signs given for dimension {}",
            signs.len(),
            t.d()
        )));
    }
    let flipped = t.flipped(signs);
    let elements = (0..t.p())
        .map(|k| {
            let coords = flipped.multiple(k).into_iter().map(|c| c as i64).collect();
            PosetElement::integer(coords, k)
        })
        .collect();
    Poset::new(t.d(), elements)
}

/// Points `((t_i k) % p / k, ..., k)` for the multipliers `k` in `1..p`
/// with `(t_i k) % p < k` for every `i`.
pub fn build_primitive_poset(t: &ResidueVector) -> Poset {
    let p = t.p();
    let elements = (1..p)
        .filter(|&k| t.coords().iter().all(|&ti| ti * k % p < k))
        .map(|k| {
            let k_i = k as i64;
            let mut coords: Vec<i64> = t.coords().iter().map(|&ti| (ti * k % p) as i64).collect();
            // last coordinate k, written over the common denominator k
            coords.push(k_i * k_i);
            PosetElement {
                coords,
                den: k_i,
                k,
            }
        })
        .collect();
    Poset::new(t.d(), elements).expect("coordinates built with the right length")
}

/// Pairwise incomparable element indices.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Antichain {
    pub members: Vec<usize>,
}

impl Antichain {
    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn validate(&self, poset: &Poset) -> Result<()> {
        validate_antichain(&self.members, poset.len(), |i, j| poset.less(i, j))
    }
}

/// Partition of the element indices into chains, each listed bottom to top.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ChainCover {
    pub chains: Vec<Vec<usize>>,
}

impl ChainCover {
    pub fn len(&self) -> usize {
        self.chains.len()
    }

    pub fn is_empty(&self) -> bool {
        self.chains.is_empty()
    }

    pub fn validate(&self, poset: &Poset) -> Result<()> {
        validate_cover(&self.chains, poset.len(), |i, j| poset.less(i, j))
    }
}

pub fn validate_antichain(
    members: &[usize],
    n: usize,
    less: impl Fn(usize, usize) -> bool,
) -> Result<()> {
    let mut seen = vec![false; n];
    for &m in members {
        if m >= n || std::mem::replace(&mut seen[m], true) {
            return Err(Error::invariant(
                "antichain",
                format!("index {m} is repeated or out of range"),
            ));
        }
    }
    for (x, &a) in members.iter().enumerate() {
        for &b in &members[x + 1..] {
            if less(a, b) || less(b, a) {
                return Err(Error::invariant(
                    "antichain",
                    format!("elements {a} and {b} are comparable"),
                ));
            }
        }
    }
    Ok(())
}

pub fn validate_cover(
    chains: &[Vec<usize>],
    n: usize,
    less: impl Fn(usize, usize) -> bool,
) -> Result<()> {
    let mut seen = vec![false; n];
    for chain in chains {
        if chain.is_empty() {
            return Err(Error::invariant("chain-cover", "empty chain"));
        }
        for &m in chain {
            if m >= n || std::mem::replace(&mut seen[m], true) {
                return Err(Error::invariant(
                    "chain-cover",
                    format!("index {m} is repeated or out of range"),
                ));
            }
        }
        for (x, &a) in chain.iter().enumerate() {
            for &b in &chain[x + 1..] {
                if !less(a, b) {
                    return Err(Error::invariant(
                        "chain-cover",
                        format!("element {a} is not below {b} within a chain"),
                    ));
                }
            }
        }
    }
    if let Some(missing) = seen.iter().position(|s| !s) {
        return Err(Error::invariant(
            "chain-cover",
            format!("element {missing} is not covered"),
        ));
    }
    Ok(())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct WidthResult {
    pub width: usize,
    pub antichain: Antichain,
    pub cover: ChainCover,
}

/// Maximum antichain and minimum chain partition of any strict order on
/// `0..n`, both validated and of equal size.
pub fn max_antichain_of_relation(
    n: usize,
    less: impl Fn(usize, usize) -> bool,
) -> Result<WidthResult> {
    let (members, chains) = dilworth(n, &less);
    validate_antichain(&members, n, &less)?;
    validate_cover(&chains, n, &less)?;
    if members.len() != chains.len() {
        return Err(Error::invariant(
            "dilworth",
            format!(
                "antichain of {} but cover of {} chains",
                members.len(),
                chains.len()
            ),
        ));
    }
    Ok(WidthResult {
        width: members.len(),
        antichain: Antichain { members },
        cover: ChainCover { chains },
    })
}

pub fn width_exact(poset: &Poset) -> Result<WidthResult> {
    max_antichain_of_relation(poset.len(), |i, j| poset.less(i, j))
}

pub const BRUTEFORCE_LIMIT: usize = 24;

/// Largest antichain by exhaustive branching; the oracle for `width_exact`.
pub fn width_bruteforce(poset: &Poset) -> Result<usize> {
    let n = poset.len();
    if n > BRUTEFORCE_LIMIT {
        return Err(Error::PosetTooLarge {
            size: n,
            limit: BRUTEFORCE_LIMIT,
        });
    }
    // incompat[i] = bitmask of elements incomparable with i
    let incompat: Vec<u32> = (0..n)
        .map(|i| {
            (0..n)
                .filter(|&j| j != i && !poset.comparable(i, j))
                .fold(0u32, |m, j| m | 1 << j)
        })
        .collect();
    fn best(candidates: u32, incompat: &[u32]) -> usize {
        if candidates == 0 {
            return 0;
        }
        let i = candidates.trailing_zeros() as usize;
        let rest = candidates & !(1 << i);
        let with = 1 + best(rest & incompat[i], incompat);
        let without = best(rest, incompat);
        with.max(without)
    }
    let all = if n == 0 { 0 } else { u32::MAX >> (32 - n) };
    Ok(best(all, &incompat))
}

/// Widths of the whole poset and of its two halves by multiplier.
///
/// The lower half takes `k` in `[1, (p-1)/2]` and the upper half `k` in
/// `[(p+1)/2, p-1]`; the element `k = 0` belongs to neither. Under
/// `k -> p - k` with all coordinates reflected the halves are mirror images,
/// so their widths agree.
#[derive(Clone, Debug, Serialize)]
pub struct SplitHalves {
    #[serde(skip)]
    pub lower: Poset,
    #[serde(skip)]
    pub upper: Poset,
    pub width: usize,
    pub lower_width: usize,
    pub upper_width: usize,
    pub equal: bool,
    /// `upper_width >= (width - 1) / 2`.
    pub bound_holds: bool,
}

pub fn split_halves(poset: &Poset, p: u64) -> Result<SplitHalves> {
    let half = (p - 1) / 2;
    let lower = poset.restrict(|k| (1..=half).contains(&k));
    let upper = poset.restrict(|k| k > half);
    let width = width_exact(poset)?.width;
    let lower_width = width_exact(&lower)?.width;
    let upper_width = width_exact(&upper)?.width;
    Ok(SplitHalves {
        lower,
        upper,
        width,
        lower_width,
        upper_width,
        equal: lower_width == upper_width,
        bound_holds: 2 * upper_width + 1 >= width,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct FamilyBest {
    pub signs: Vec<Sign>,
    #[serde(skip)]
    pub poset: Poset,
    pub width: WidthResult,
}

/// Widest member of the sign family of `t`; ties go to the earliest sign
/// vector in lexicographic order.
pub fn best_in_family(t: &ResidueVector) -> Result<FamilyBest> {
    let mut best: Option<FamilyBest> = None;
    for signs in all_sign_vectors(t.d() - 1) {
        let poset = build_s_poset(t, &signs)?;
        let width = width_exact(&poset)?;
        if best.as_ref().is_none_or(|b| width.width > b.width.width) {
            best = Some(FamilyBest {
                signs,
                poset,
                width,
            });
        }
    }
    Ok(best.expect("at least one sign vector"))
}
