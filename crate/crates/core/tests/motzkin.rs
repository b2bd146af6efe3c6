use std::collections::{BTreeSet, HashSet};

use mvp_fibres::fibre::{fibre_brute, valid_subgraphs};
use mvp_fibres::motzkin::{
    class_representative_dec, decreasing_fibre, distinct_rearrangements, enumerate_noncrossing,
    is_motzkin_pf, noncross_to_motzkin, phi, phi_inverse, psi_dec_to_split,
};
use mvp_fibres::{motzkin_u64, ArcSet, LatticePath, ParkingPreference, Permutation};

const MOTZKIN: [u64; 13] = [1, 1, 2, 4, 9, 21, 51, 127, 323, 835, 2188, 5798, 15511];

#[test]
fn motzkin_numbers() {
    for (n, &m) in MOTZKIN.iter().enumerate() {
        assert_eq!(motzkin_u64(n), m);
        if n <= 10 {
            assert_eq!(LatticePath::all_motzkin(n).len() as u64, m);
        }
    }
}

#[test]
fn motzkin_pf_iff_motzkin_path() {
    for n in 1..=6 {
        for p in ParkingPreference::parking_functions(n) {
            let max_mult = (1..=n)
                .map(|s| p.as_slice().iter().filter(|&&v| v == s).count())
                .max();
            let by_def = max_mult.unwrap() <= 2;
            assert_eq!(is_motzkin_pf(&p).unwrap(), by_def, "{p}");
            assert_eq!(phi(&p).is_motzkin_path(), by_def, "{p}");
        }
    }
}

#[test]
fn phi_inverse_is_a_section() {
    for n in 1..=12 {
        for path in LatticePath::all_motzkin(n) {
            let p = phi_inverse(&path).unwrap();
            assert!(p.as_slice().windows(2).all(|w| w[0] <= w[1]), "{path}");
            assert!(p.is_parking_function(), "{path}");
            assert_eq!(phi(&p), path);
        }
    }
}

#[test]
fn phi_inverse_is_sorted_multiset() {
    // sort each Motzkin parking function and compare with phi_inverse of its path
    for n in 1..=6 {
        for p in ParkingPreference::parking_functions(n) {
            if !is_motzkin_pf(&p).unwrap() {
                continue;
            }
            let mut sorted = p.as_slice().to_vec();
            sorted.sort_unstable();
            assert_eq!(phi_inverse(&phi(&p)).unwrap().into_vec(), sorted, "{p}");
        }
    }
}

#[test]
fn one_rearrangement_in_decreasing_fibre() {
    for n in 1..=6 {
        let fib: HashSet<ParkingPreference> = fibre_brute(&Permutation::dec(n).unwrap())
            .unwrap()
            .into_iter()
            .collect();
        for path in LatticePath::all_motzkin(n) {
            let p = phi_inverse(&path).unwrap();
            let hits = distinct_rearrangements(&p)
                .into_iter()
                .filter(|q| fib.contains(q))
                .count();
            assert_eq!(hits, 1, "{p}");
            assert!(fib.contains(&class_representative_dec(&p).unwrap()));
        }
        assert_eq!(fib.len() as u64, MOTZKIN[n]);
    }
}

#[test]
fn valid_decreasing_subgraphs_are_noncrossing_matchings() {
    for n in 1..=8 {
        let dec = Permutation::dec(n).unwrap();
        let valid: BTreeSet<ArcSet> = valid_subgraphs(&dec, false).into_iter().collect();
        let nc: BTreeSet<ArcSet> = enumerate_noncrossing(n)
            .into_iter()
            .map(|m| m.into_arcs())
            .collect();
        assert_eq!(valid, nc, "n={n}");
        assert_eq!(nc.len() as u64, MOTZKIN[n]);
        assert!(nc.iter().all(|s| s.is_matching() && s.is_non_crossing()));
        assert_eq!(decreasing_fibre(n).unwrap(), fibre_brute_or_subgraph(&dec));
    }
}

fn fibre_brute_or_subgraph(pi: &Permutation) -> Vec<ParkingPreference> {
    if pi.len() <= 7 {
        fibre_brute(pi).unwrap()
    } else {
        mvp_fibres::fibre_via_subgraphs(pi, true)
    }
}

#[test]
fn noncrossing_to_motzkin_is_bijective() {
    for n in 0..=10 {
        let ms = enumerate_noncrossing(n);
        let paths: HashSet<LatticePath> = ms.iter().map(noncross_to_motzkin).collect();
        assert_eq!(paths.len(), ms.len(), "n={n}");
        assert!(paths.iter().all(LatticePath::is_motzkin_path));
        assert_eq!(paths.len() as u64, MOTZKIN[n]);
    }
}

#[test]
fn psi_maps_decreasing_onto_split() {
    for n in 3..=8 {
        let dec = Permutation::dec(n).unwrap();
        let split = Permutation::split_left(2, n - 2).unwrap();
        let source = valid_subgraphs(&dec, true);
        let image: BTreeSet<ArcSet> = source
            .iter()
            .map(|s| psi_dec_to_split(s, n).unwrap())
            .collect();
        assert_eq!(image.len(), source.len(), "n={n}: not injective");
        let target: BTreeSet<ArcSet> = valid_subgraphs(&split, false).into_iter().collect();
        assert_eq!(image, target, "n={n}");
        assert_eq!(target.len() as u64, MOTZKIN[n]);
    }
}
