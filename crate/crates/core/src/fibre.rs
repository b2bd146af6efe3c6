//! MVP outcome fibres through 1-subgraphs of inversion graphs.
//!
//! A 1-subgraph of `G_π` picks, for every vertex `i`, at most one left-arc
//! `(j, i)` with `j ∈ LInv(π, i)`. The map [`subgraph_to_pf`] turns it into a
//! preference by letting the car that should end in spot `i` prefer `j`
//! (or `i` itself when no arc is chosen). A 1-subgraph is valid when that
//! preference really has MVP outcome `π`, and the valid 1-subgraphs are in
//! bijection with the fibre.
//!
//! Enumeration is a mixed-radix walk over the per-vertex choices, vertices
//! ascending and choices ordered "no arc" then `j` ascending. With P2
//! pruning a choice `(j, i)` is rejected whenever `j` already has a left-arc,
//! which removes every subgraph containing a directed path `a -> j -> i`
//! (none of those can be valid).

use std::collections::HashMap;

use rayon::prelude::*;

use crate::arcs::ArcSet;
use crate::error::{Error, Result};
use crate::parking::{mvp_into, ParkingPreference};
use crate::perm::Permutation;

/// Default size cap for [`fibre_brute`], which scans all of `[n]^n`.
pub const BRUTE_FORCE_CAP: usize = 7;

/// Left-arc choices: entry `i - 1` is `Some(j)` for the arc `(j, i)`.
pub type Choices = [Option<usize>];

/// `|Sub(π)| = Π_i (1 + |LInv(π, i)|)`.
pub fn one_subgraph_count(perm: &Permutation) -> u64 {
    perm.left_inversion_lists()
        .iter()
        .map(|l| 1 + l.len() as u64)
        .product()
}

/// Stream of every 1-subgraph of `G_π`, each exactly once.
pub fn enumerate_one_subgraphs(perm: &Permutation) -> OneSubgraphs {
    OneSubgraphs {
        lists: perm.left_inversion_lists(),
        digits: Some(vec![0; perm.len()]),
    }
}

/// Mixed-radix counter over left-arc choices; digit 0 is "no arc", digit
/// `d > 0` picks the `d`-th left inversion. The last vertex turns fastest.
#[derive(Debug, Clone)]
pub struct OneSubgraphs {
    lists: Vec<Vec<usize>>,
    digits: Option<Vec<usize>>,
}

impl Iterator for OneSubgraphs {
    type Item = ArcSet;

    fn next(&mut self) -> Option<ArcSet> {
        let digits = self.digits.as_mut()?;
        let choices: Vec<Option<usize>> = digits
            .iter()
            .zip(&self.lists)
            .map(|(&d, l)| (d > 0).then(|| l[d - 1]))
            .collect();
        let mut k = digits.len();
        loop {
            if k == 0 {
                self.digits = None;
                break;
            }
            k -= 1;
            if digits[k] < self.lists[k].len() {
                digits[k] += 1;
                break;
            }
            digits[k] = 0;
        }
        Some(ArcSet::from_left_choices(&choices))
    }
}

/// Depth-first walk over the same choice space, optionally pruning
/// choices that would create a directed 2-path.
struct Walker<'a> {
    lists: &'a [Vec<usize>],
    prune_p2: bool,
}

impl Walker<'_> {
    fn walk<F: FnMut(&Choices)>(
        &self,
        choices: &mut Vec<Option<usize>>,
        has_left: &mut [bool],
        stop: usize,
        visit: &mut F,
    ) {
        let k = choices.len();
        if k == stop {
            visit(choices);
            return;
        }
        let i = k + 1;
        choices.push(None);
        self.walk(choices, has_left, stop, visit);
        choices.pop();
        for &j in &self.lists[k] {
            if self.prune_p2 && has_left[j] {
                continue;
            }
            choices.push(Some(j));
            has_left[i] = true;
            self.walk(choices, has_left, stop, visit);
            has_left[i] = false;
            choices.pop();
        }
    }

    fn walk_from<F: FnMut(&Choices)>(&self, prefix: &[Option<usize>], visit: &mut F) {
        let n = self.lists.len();
        let mut choices = prefix.to_vec();
        choices.reserve(n - prefix.len());
        let mut has_left = vec![false; n + 1];
        for (k, c) in prefix.iter().enumerate() {
            has_left[k + 1] = c.is_some();
        }
        self.walk(&mut choices, &mut has_left, n, visit);
    }

    fn prefixes(&self, depth: usize) -> Vec<Vec<Option<usize>>> {
        let mut out = Vec::new();
        let mut has_left = vec![false; self.lists.len() + 1];
        self.walk(&mut Vec::new(), &mut has_left, depth, &mut |c: &Choices| {
            out.push(c.to_vec())
        });
        out
    }
}

/// Visits the left-arc choices of every 1-subgraph of `G_π` (every P2-free
/// one when `prune_p2` is set) in enumeration order.
pub fn for_each_one_subgraph<F: FnMut(&Choices)>(perm: &Permutation, prune_p2: bool, mut visit: F) {
    let lists = perm.left_inversion_lists();
    Walker {
        lists: &lists,
        prune_p2,
    }
    .walk_from(&[], &mut visit);
}

/// Parallel fold over the walk. The choice space is split on a prefix of
/// the vertices; every prefix is walked by one rayon task with its own
/// accumulator and the accumulators are combined in prefix order.
pub fn par_fold_one_subgraphs<T, Id, V, C>(
    perm: &Permutation,
    prune_p2: bool,
    identity: Id,
    visit: V,
    combine: C,
) -> T
where
    T: Send,
    Id: Fn() -> T + Sync + Send,
    V: Fn(&mut T, &mut ValidityChecker, &Choices) + Sync + Send,
    C: Fn(T, T) -> T + Sync + Send,
{
    let lists = perm.left_inversion_lists();
    let walker = Walker {
        lists: &lists,
        prune_p2,
    };
    let n = perm.len();
    let mut depth = 0;
    let mut width = 1u64;
    while depth < n && width < 256 {
        width *= 1 + lists[depth].len() as u64;
        depth += 1;
    }
    let prefixes = walker.prefixes(depth);
    prefixes
        .par_iter()
        .map(|prefix| {
            let mut acc = identity();
            let mut checker = ValidityChecker::new(perm);
            walker.walk_from(prefix, &mut |c: &Choices| visit(&mut acc, &mut checker, c));
            acc
        })
        .reduce(&identity, &combine)
}

/// Reusable buffers for deciding validity of left-arc choices against a
/// fixed permutation.
#[derive(Debug, Clone)]
pub struct ValidityChecker {
    perm: Vec<usize>,
    prefs: Vec<usize>,
    occupant: Vec<usize>,
}

impl ValidityChecker {
    pub fn new(perm: &Permutation) -> Self {
        let n = perm.len();
        Self {
            perm: perm.word().to_vec(),
            prefs: vec![0; n],
            occupant: vec![0; n + 1],
        }
    }

    /// Fills the preference buffer with `Ψ_{Sub→PF}(choices)`.
    pub fn load(&mut self, choices: &Choices) -> &[usize] {
        for (k, c) in choices.iter().enumerate() {
            let i = k + 1;
            self.prefs[self.perm[k] - 1] = c.unwrap_or(i);
        }
        &self.prefs
    }

    /// Runs the MVP process on `Ψ_{Sub→PF}(choices)` and compares with `π`.
    pub fn is_valid(&mut self, choices: &Choices) -> bool {
        self.load(choices);
        mvp_into(&self.prefs, &mut self.occupant, None) && self.occupant[1..] == self.perm[..]
    }
}

/// `Ψ_{PF→Sub}`: runs the MVP process and records, for each spot `i`, the arc
/// `(j, i)` when the car parked there originally preferred `j` and `(j, i)`
/// is an inversion of the outcome.
pub fn pf_to_subgraph(p: &ParkingPreference) -> Result<ArcSet> {
    pf_to_subgraph_with_outcome(p).map(|(s, _)| s)
}

/// [`pf_to_subgraph`] together with the outcome permutation it is a
/// subgraph of.
pub fn pf_to_subgraph_with_outcome(p: &ParkingPreference) -> Result<(ArcSet, Permutation)> {
    let perm = p.outcome_mvp()?.outcome;
    let arcs = perm
        .inversions()
        .iter()
        .filter(|&(j, i)| p.at(perm.at(i)) == j)
        .collect();
    Ok((ArcSet::from_set_unchecked(perm.len(), arcs), perm))
}

/// `Ψ_{Sub→PF}`: car `π_i` prefers `j` when `(j, i) ∈ S`, else `i`.
pub fn subgraph_to_pf(s: &ArcSet, perm: &Permutation) -> Result<ParkingPreference> {
    let choices = s.one_subgraph_choices(perm)?;
    Ok(choices_to_pf(&choices, perm))
}

pub fn choices_to_pf(choices: &Choices, perm: &Permutation) -> ParkingPreference {
    let mut prefs = vec![0; perm.len()];
    for (k, c) in choices.iter().enumerate() {
        prefs[perm.at(k + 1) - 1] = c.unwrap_or(k + 1);
    }
    ParkingPreference::from_vec_unchecked(prefs)
}

/// A 1-subgraph is valid iff its preference has MVP outcome `π`; a
/// preference that fails to park counts as invalid.
pub fn is_valid(s: &ArcSet, perm: &Permutation) -> Result<bool> {
    let choices = s.one_subgraph_choices(perm)?;
    Ok(ValidityChecker::new(perm).is_valid(&choices))
}

/// The fibre of `π` as the images of its valid 1-subgraphs, sorted.
pub fn fibre_via_subgraphs(perm: &Permutation, prune_p2: bool) -> Vec<ParkingPreference> {
    let mut out: Vec<ParkingPreference> = par_fold_one_subgraphs(
        perm,
        prune_p2,
        Vec::new,
        |acc: &mut Vec<ParkingPreference>, checker, c| {
            if checker.is_valid(c) {
                acc.push(ParkingPreference::from_vec_unchecked(
                    checker.load(c).to_vec(),
                ));
            }
        },
        |mut a, mut b| {
            a.append(&mut b);
            a
        },
    );
    out.sort_unstable();
    out
}

/// The valid 1-subgraphs of `G_π` in enumeration order.
pub fn valid_subgraphs(perm: &Permutation, prune_p2: bool) -> Vec<ArcSet> {
    let mut checker = ValidityChecker::new(perm);
    let mut out = Vec::new();
    for_each_one_subgraph(perm, prune_p2, |c| {
        if checker.is_valid(c) {
            out.push(ArcSet::from_left_choices(c));
        }
    });
    out
}

/// `|Fib(π)|` by pruned subgraph enumeration.
pub fn fibre_size(perm: &Permutation) -> u64 {
    par_fold_one_subgraphs(
        perm,
        true,
        || 0u64,
        |acc, checker, c| *acc += u64::from(checker.is_valid(c)),
        |a, b| a + b,
    )
}

/// The fibre of `π` by scanning every preference in `[n]^n`. Sorted.
pub fn fibre_brute(perm: &Permutation) -> Result<Vec<ParkingPreference>> {
    fibre_brute_with_cap(perm, BRUTE_FORCE_CAP)
}

pub fn fibre_brute_with_cap(perm: &Permutation, cap: usize) -> Result<Vec<ParkingPreference>> {
    let n = perm.len();
    if n > cap {
        return Err(Error::SizeCapExceeded { n, cap });
    }
    let mut occupant = vec![0; n + 1];
    Ok(ParkingPreference::all(n)
        .filter(|p| mvp_into(p.as_slice(), &mut occupant, None) && occupant[1..] == *perm.word())
        .collect())
}

/// Fibre sizes of every permutation of `[n]`, from one pass over `PF_n`.
pub fn outcome_histogram(n: usize) -> HashMap<Permutation, u64> {
    let mut hist = HashMap::new();
    let mut occupant = vec![0; n + 1];
    for p in ParkingPreference::all(n) {
        if mvp_into(p.as_slice(), &mut occupant, None) {
            *hist
                .entry(Permutation::from_word_unchecked(occupant[1..].to_vec()))
                .or_insert(0) += 1;
        }
    }
    hist
}

/// Upper and lower bounds on `|Fib(π)|` next to the true size.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Bounds {
    /// `|Sub(π)|`, the product over vertices of `1 + |LInv|`.
    pub product_upper: u64,
    pub p2free_count: u64,
    pub fibre_size: u64,
    pub hs_count: u64,
    /// `1 + |Inv(π)|`: the empty subgraph plus every single arc.
    pub single_arc_lower: u64,
}

impl Bounds {
    pub fn is_ordered(&self) -> bool {
        self.single_arc_lower <= self.hs_count
            && self.hs_count <= self.fibre_size
            && self.fibre_size <= self.p2free_count
            && self.p2free_count <= self.product_upper
    }
}

/// HS check on left-arc choices: scanning arcs by right endpoint, each
/// left endpoint must lie strictly right of the previous right endpoint.
pub fn choices_are_hs(choices: &Choices) -> bool {
    let mut last_end = 0;
    for (k, c) in choices.iter().enumerate() {
        if let Some(j) = *c {
            if j <= last_end {
                return false;
            }
            last_end = k + 1;
        }
    }
    true
}

pub fn choices_are_p2_free(choices: &Choices) -> bool {
    choices
        .iter()
        .all(|c| c.is_none_or(|j| choices[j - 1].is_none()))
}

/// All five statistics from one pruned walk (HS subgraphs are P2-free, so
/// none are lost to pruning).
pub fn bounds(perm: &Permutation) -> Bounds {
    let (p2free_count, fibre_size, hs_count) = par_fold_one_subgraphs(
        perm,
        true,
        || (0u64, 0u64, 0u64),
        |acc, checker, c| {
            acc.0 += 1;
            acc.1 += u64::from(checker.is_valid(c));
            acc.2 += u64::from(choices_are_hs(c));
        },
        |a, b| (a.0 + b.0, a.1 + b.1, a.2 + b.2),
    );
    let b = Bounds {
        product_upper: one_subgraph_count(perm),
        p2free_count,
        fibre_size,
        hs_count,
        single_arc_lower: 1 + perm.inversions().len() as u64,
    };
    debug_assert!(b.is_ordered(), "{b:?}");
    b
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::BTreeSet;

    fn perm(s: &str) -> Permutation {
        s.parse().unwrap()
    }

    fn pref(v: &[usize]) -> ParkingPreference {
        ParkingPreference::new(v.to_vec()).unwrap()
    }

    fn arcs(n: usize, v: &[(usize, usize)]) -> ArcSet {
        ArcSet::new(n, v.iter().copied()).unwrap()
    }

    #[test]
    fn one_subgraph_counts() {
        assert_eq!(enumerate_one_subgraphs(&perm("231")).count(), 3);
        assert_eq!(enumerate_one_subgraphs(&perm("312")).count(), 4);
        assert_eq!(
            enumerate_one_subgraphs(&Permutation::dec(4).unwrap()).count(),
            24
        );
        assert_eq!(one_subgraph_count(&Permutation::dec(4).unwrap()), 24);
    }

    #[test]
    fn stream_is_distinct_and_matches_product() {
        for pi in Permutation::all(5) {
            let all: Vec<ArcSet> = enumerate_one_subgraphs(&pi).collect();
            let distinct: BTreeSet<_> = all.iter().cloned().collect();
            assert_eq!(all.len(), distinct.len());
            assert_eq!(all.len() as u64, one_subgraph_count(&pi));
            assert!(all.iter().all(|s| s.is_one_subgraph_of(&pi)));
        }
    }

    #[test]
    fn pruned_walk_equals_filtered_stream() {
        for pi in Permutation::all(5) {
            let filtered: Vec<ArcSet> = enumerate_one_subgraphs(&pi)
                .filter(ArcSet::is_p2_free)
                .collect();
            let mut walked = Vec::new();
            for_each_one_subgraph(&pi, true, |c| walked.push(ArcSet::from_left_choices(c)));
            assert_eq!(walked, filtered, "{pi}");
            let mut unpruned = Vec::new();
            for_each_one_subgraph(&pi, false, |c| unpruned.push(ArcSet::from_left_choices(c)));
            assert_eq!(unpruned, enumerate_one_subgraphs(&pi).collect::<Vec<_>>());
        }
    }

    #[test]
    fn choice_predicates_match_arcset_predicates() {
        for pi in Permutation::all(5) {
            for_each_one_subgraph(&pi, false, |c| {
                let s = ArcSet::from_left_choices(c);
                assert_eq!(choices_are_hs(c), s.is_hs());
                assert_eq!(choices_are_p2_free(c), s.is_p2_free());
            });
        }
    }

    #[test]
    fn pf_to_subgraph_examples() {
        assert_eq!(
            pf_to_subgraph(&pref(&[1, 1, 1])).unwrap(),
            arcs(3, &[(1, 2), (1, 3)])
        );
        assert_eq!(pf_to_subgraph(&pref(&[2, 3, 1])).unwrap(), ArcSet::empty(3));
        let (s, pi) = pf_to_subgraph_with_outcome(&pref(&[2, 2, 1, 2, 5])).unwrap();
        assert_eq!(pi, perm("34125"));
        assert_eq!(s, arcs(5, &[(2, 3), (2, 4)]));
        assert!(matches!(
            pf_to_subgraph(&pref(&[2, 2])),
            Err(Error::NotAParkingFunction(_))
        ));
    }

    #[test]
    fn subgraph_to_pf_examples() {
        assert_eq!(
            subgraph_to_pf(&arcs(5, &[(2, 3), (2, 4)]), &perm("34125")).unwrap(),
            pref(&[2, 2, 1, 2, 5])
        );
        // empty subgraph: car π_i prefers i
        assert_eq!(
            subgraph_to_pf(&ArcSet::empty(4), &perm("3412")).unwrap(),
            pref(&[3, 4, 1, 2])
        );
        let d11 = Permutation::dec(11).unwrap();
        assert_eq!(
            subgraph_to_pf(&arcs(11, &[(1, 6), (3, 5), (7, 10), (8, 9)]), &d11).unwrap(),
            pref(&[11, 7, 8, 8, 7, 1, 3, 4, 3, 2, 1])
        );
        assert!(matches!(
            subgraph_to_pf(&arcs(5, &[(1, 2)]), &perm("34125")),
            Err(Error::NotASubgraphOf { .. })
        ));
    }

    #[test]
    fn validity_examples() {
        assert!(!is_valid(&arcs(3, &[(1, 2), (1, 3)]), &perm("321")).unwrap());
        for pi in Permutation::all(4) {
            assert!(is_valid(&ArcSet::empty(4), &pi).unwrap());
            for (j, i) in pi.inversions().iter() {
                assert!(is_valid(&arcs(4, &[(j, i)]), &pi).unwrap());
            }
        }
        assert!(is_valid(&arcs(3, &[(1, 3), (2, 3)]), &perm("321")).is_err());
    }

    #[test]
    fn fibre_examples() {
        let expected = vec![
            pref(&[1, 1, 1]),
            pref(&[1, 3, 1]),
            pref(&[2, 1, 1]),
            pref(&[2, 3, 1]),
        ];
        assert_eq!(fibre_via_subgraphs(&perm("312"), true), expected);
        assert_eq!(fibre_via_subgraphs(&perm("312"), false), expected);
        assert_eq!(fibre_brute(&perm("312")).unwrap(), expected);
        assert_eq!(
            fibre_via_subgraphs(&Permutation::dec(5).unwrap(), true).len(),
            21
        );
        assert_eq!(
            fibre_via_subgraphs(&Permutation::identity(6), true),
            vec![pref(&[1, 2, 3, 4, 5, 6])]
        );
        assert_eq!(
            fibre_brute(&Permutation::identity(3)).unwrap(),
            vec![pref(&[1, 2, 3])]
        );
        assert_eq!(fibre_brute(&perm("321")).unwrap().len(), 4);
        assert_eq!(
            fibre_brute(&Permutation::dec(8).unwrap()),
            Err(Error::SizeCapExceeded { n: 8, cap: 7 })
        );
    }

    #[test]
    fn bounds_examples() {
        let b = bounds(&Permutation::dec(7).unwrap());
        assert_eq!(
            (
                b.product_upper,
                b.p2free_count,
                b.fibre_size,
                b.hs_count,
                b.single_arc_lower
            ),
            (5040, 877, 127, 64, 22)
        );
        let b = bounds(&Permutation::identity(5));
        assert_eq!(
            (
                b.product_upper,
                b.p2free_count,
                b.fibre_size,
                b.hs_count,
                b.single_arc_lower
            ),
            (1, 1, 1, 1, 1)
        );
        let b = bounds(&Permutation::dec(9).unwrap());
        assert_eq!(
            (
                b.product_upper,
                b.p2free_count,
                b.fibre_size,
                b.hs_count,
                b.single_arc_lower
            ),
            (362880, 21147, 835, 256, 37)
        );
        assert!(b.is_ordered());
    }

    #[test]
    fn histogram_sums_to_pf_count() {
        let hist = outcome_histogram(4);
        assert_eq!(hist.values().sum::<u64>(), 125);
        assert_eq!(hist.get(&perm("1234")), Some(&1));
        assert_eq!(hist.get(&perm("4321")), Some(&9));
    }
}
