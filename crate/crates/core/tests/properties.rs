mod common;

use common::calibration::PAIR_PRODUCT_C;
use common::{random_t, seeded};
use gridsight_core::geometry::{shallow_blocks, Segment};
use gridsight_core::lattice::independent_pair_3d;
use gridsight_core::modular::{all_sign_vectors, height, ResidueVector};
use gridsight_core::poset::{
    build_s_poset, validate_antichain, validate_cover, width_bruteforce, width_exact, Poset,
    PosetElement,
};
use proptest::prelude::*;

fn poset_of(points: &[Vec<i64>]) -> Poset {
    let d = points.first().map_or(2, Vec::len);
    let elements = points
        .iter()
        .enumerate()
        .map(|(k, c)| PosetElement::integer(c.clone(), k as u64))
        .collect();
    Poset::new(d, elements).unwrap()
}

fn points(d: usize, max_len: usize) -> impl Strategy<Value = Vec<Vec<i64>>> {
    prop::collection::vec(prop::collection::vec(0i64..7, d), 1..=max_len)
}

fn residue() -> impl Strategy<Value = ResidueVector> {
    (
        prop::sample::select(vec![5u64, 7, 11, 13, 17, 19, 23]),
        2usize..=3,
    )
        .prop_flat_map(|(p, free)| {
            prop::collection::vec(1..p, free).prop_map(move |c| ResidueVector::new(p, c).unwrap())
        })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn width_matches_bruteforce(pts in (2usize..=4).prop_flat_map(|d| points(d, 20))) {
        let poset = poset_of(&pts);
        let w = width_exact(&poset).unwrap();
        prop_assert_eq!(w.width, width_bruteforce(&poset).unwrap());
        prop_assert_eq!(w.antichain.len(), w.cover.len());
        w.antichain.validate(&poset).unwrap();
        w.cover.validate(&poset).unwrap();
    }

    #[test]
    fn width_ignores_element_order(pts in points(3, 40), seed in any::<u64>()) {
        let mut shuffled = pts.clone();
        let mut rng = seeded(seed);
        use rand::seq::SliceRandom;
        shuffled.shuffle(&mut rng);
        prop_assert_eq!(
            width_exact(&poset_of(&pts)).unwrap().width,
            width_exact(&poset_of(&shuffled)).unwrap().width
        );
    }

    #[test]
    fn width_ignores_coordinate_order(pts in points(3, 30)) {
        let swapped: Vec<Vec<i64>> = pts.iter().map(|c| vec![c[2], c[0], c[1]]).collect();
        prop_assert_eq!(
            width_exact(&poset_of(&pts)).unwrap().width,
            width_exact(&poset_of(&swapped)).unwrap().width
        );
    }

    #[test]
    fn family_members_have_certified_widths(t in residue()) {
        for signs in all_sign_vectors(t.d() - 1) {
            let poset = build_s_poset(&t, &signs).unwrap();
            let w = width_exact(&poset).unwrap();
            w.antichain.validate(&poset).unwrap();
            w.cover.validate(&poset).unwrap();
            prop_assert!(w.width >= 1 && w.width <= poset.len());
            if poset.len() <= 24 {
                prop_assert_eq!(w.width, width_bruteforce(&poset).unwrap());
            }
        }
    }

    #[test]
    fn validators_reject_broken_witnesses(pts in points(2, 16)) {
        let poset = poset_of(&pts);
        let less = |i: usize, j: usize| poset.less(i, j);
        let n = poset.len();
        let w = width_exact(&poset).unwrap();
        // a comparable pair is never an antichain
        if let Some((i, j)) = (0..n).flat_map(|i| (0..n).map(move |j| (i, j))).find(|&(i, j)| less(i, j)) {
            prop_assert!(validate_antichain(&[i, j], n, less).is_err());
        }
        prop_assert!(validate_antichain(&[0, 0], n, less).is_err());
        // dropping or duplicating an element breaks the partition
        let mut chains = w.cover.chains.clone();
        let last = chains.last_mut().unwrap().pop().unwrap();
        prop_assert!(validate_cover(&chains, n, less).is_err());
        chains.push(vec![last, last]);
        prop_assert!(validate_cover(&chains, n, less).is_err());
    }

    #[test]
    fn open_cube_test_matches_dense_sampling(
        a in prop::collection::vec(-3i64..9, 3),
        b in prop::collection::vec(-3i64..9, 3),
        corner in prop::collection::vec(-1i64..5, 3),
        den in 1i64..=2,
    ) {
        prop_assume!(a != b);
        let seg = Segment::new(a.clone(), b.clone(), den).unwrap();
        // breakpoints of the parameter are fractions with denominators at
        // most n, so any open interval between them is longer than 1 / n^2
        // and a grid of spacing 1 / (2 n^2) lands inside it
        let n = a.iter().zip(&b).map(|(x, y)| (y - x).abs()).max().unwrap();
        let m = 2 * n * n;
        let inside = (0..=m).any(|s| {
            (0..3).all(|i| {
                let x = a[i] * m + s * (b[i] - a[i]);
                let lo = corner[i] * den * m;
                lo < x && x < lo + den * m
            })
        });
        prop_assert_eq!(seg.hits_open_cube(&corner), inside);
    }

    #[test]
    fn shallow_blocking_at_forty_five(dir in prop::collection::vec(-6i64..7, 3), axis in 0usize..3) {
        prop_assume!(dir.iter().any(|&x| x != 0));
        let norm: i64 = dir.iter().map(|x| x * x).sum();
        let expected = 2 * dir[axis] * dir[axis] >= norm;
        prop_assert_eq!(shallow_blocks(&dir, axis, 45.0).unwrap(), expected);
        prop_assert!(shallow_blocks(&dir, axis, 0.0).unwrap());
    }

    #[test]
    fn height_matches_definition(t in residue()) {
        let p = t.p();
        let oracle = (1..p)
            .map(|a| t.coords().iter().map(|&c| a * c % p).max().unwrap().max(a))
            .min()
            .unwrap();
        prop_assert_eq!(height(&t).value, oracle);
    }
}

#[test]
fn pair_product_stays_below_frozen_constant() {
    let mut rng = seeded(0xB0B5);
    for p in [53u64, 101, 199] {
        let limit = PAIR_PRODUCT_C * (p as f64).powf(4.0 / 3.0);
        for t in random_t(p, 3, 50, &mut rng) {
            let pair = independent_pair_3d(&t).unwrap();
            let product = (pair.s1 * pair.s2) as f64;
            assert!(product <= limit, "{t}: s1 s2 = {product} above {limit:.2}");
        }
    }
}
