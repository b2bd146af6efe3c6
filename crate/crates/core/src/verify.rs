//! Exhaustive property suites. Each suite checks a family of claims over
//! every object up to a size cap and reports how much it checked and the
//! first counterexample it found.

use std::collections::{BTreeSet, HashSet};
use std::fmt;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::arcs::ArcSet;
use crate::fibre::{
    choices_are_hs, choices_are_p2_free, choices_to_pf, fibre_via_subgraphs, for_each_one_subgraph,
    is_valid, one_subgraph_count, pf_to_subgraph, pf_to_subgraph_with_outcome, subgraph_to_pf,
    valid_subgraphs, ValidityChecker,
};
use crate::motzkin::{
    enumerate_noncrossing, is_motzkin_pf, noncross_to_motzkin, phi, phi_inverse, psi_dec_to_split,
    LatticePath,
};
use crate::parking::ParkingPreference;
use crate::perm::Permutation;
use crate::sandpile::{classical_outcome_via_asm, mvp_outcome_via_asm, SandpileConfig};
use crate::sequences::{bipartite_two_fibre, motzkin};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SuiteReport {
    pub name: &'static str,
    pub coverage: String,
    pub checked: u64,
    pub counterexample: Option<String>,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.counterexample.is_none()
    }
}

impl fmt::Display for SuiteReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.counterexample {
            None => write!(
                f,
                "PASS {} ({}; {} checks)",
                self.name, self.coverage, self.checked
            ),
            Some(c) => write!(
                f,
                "FAIL {} ({}; {} checks) first counterexample: {c}",
                self.name, self.coverage, self.checked
            ),
        }
    }
}

/// Counts checks and keeps the first failure.
struct Tally {
    checked: u64,
    failure: Option<String>,
}

impl Tally {
    fn new() -> Self {
        Self {
            checked: 0,
            failure: None,
        }
    }

    fn check(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.checked += 1;
        if !ok && self.failure.is_none() {
            self.failure = Some(what());
        }
    }

    fn failed(&self) -> bool {
        self.failure.is_some()
    }

    fn finish(self, name: &'static str, coverage: String) -> SuiteReport {
        SuiteReport {
            name,
            coverage,
            checked: self.checked,
            counterexample: self.failure,
        }
    }
}

fn perms_up_to(n: usize) -> impl Iterator<Item = Permutation> {
    (1..=n).flat_map(Permutation::all)
}

fn pfs_up_to(n: usize) -> impl Iterator<Item = ParkingPreference> {
    (1..=n).flat_map(ParkingPreference::parking_functions)
}

/// Round trip `Ψ_{Sub→PF}(Ψ_{PF→Sub}(p)) = p` over every fibre, and
/// injectivity of `Ψ_{Sub→PF}` over every 1-subgraph.
pub fn round_trip_and_injectivity(n: usize) -> SuiteReport {
    let mut t = Tally::new();
    // the fibres partition PF_k, so walking PF_k covers every fibre once
    for p in pfs_up_to(n) {
        let back = pf_to_subgraph_with_outcome(&p).and_then(|(s, perm)| subgraph_to_pf(&s, &perm));
        t.check(back.as_ref() == Ok(&p), || format!("round trip of {p}"));
    }
    for perm in perms_up_to(n) {
        let mut seen = HashSet::new();
        for_each_one_subgraph(&perm, false, |c| {
            let p = choices_to_pf(c, &perm);
            let fresh = seen.insert(p.clone());
            t.check(fresh, || format!("{p} hit twice on {perm}"));
        });
        if t.failed() {
            break;
        }
    }
    t.finish("round-trip", format!("all permutations of length <= {n}"))
}

/// Acyclic inversion graph (by 321/3412 avoidance and by union-find) iff
/// every 1-subgraph is valid, and then the fibre size is the product.
pub fn acyclic_iff_all_valid(n: usize) -> SuiteReport {
    let mut t = Tally::new();
    for perm in perms_up_to(n) {
        let by_pattern = perm.inversion_graph_acyclic();
        let by_search = perm.inversion_graph_acyclic_by_search();
        let mut checker = ValidityChecker::new(&perm);
        let mut valid = 0u64;
        for_each_one_subgraph(&perm, false, |c| valid += u64::from(checker.is_valid(c)));
        let all_valid = valid == one_subgraph_count(&perm);
        t.check(by_pattern == by_search && by_pattern == all_valid, || {
            format!("{perm}: pattern {by_pattern}, search {by_search}, all valid {all_valid}")
        });
        if t.failed() {
            break;
        }
    }
    t.finish("acyclic", format!("all permutations of length <= {n}"))
}

/// Valid implies P2-free.
pub fn valid_implies_p2_free(n: usize) -> SuiteReport {
    let mut t = Tally::new();
    for perm in perms_up_to(n) {
        let mut checker = ValidityChecker::new(&perm);
        for_each_one_subgraph(&perm, false, |c| {
            let ok = !checker.is_valid(c) || choices_are_p2_free(c);
            t.check(ok, || format!("{} on {perm}", ArcSet::from_left_choices(c)));
        });
    }
    t.finish(
        "valid-p2-free",
        format!("all 1-subgraphs, permutations of length <= {n}"),
    )
}

/// HS implies valid.
pub fn hs_implies_valid(n: usize) -> SuiteReport {
    let mut t = Tally::new();
    for perm in perms_up_to(n) {
        let mut checker = ValidityChecker::new(&perm);
        for_each_one_subgraph(&perm, false, |c| {
            let ok = !choices_are_hs(c) || checker.is_valid(c);
            t.check(ok, || format!("{} on {perm}", ArcSet::from_left_choices(c)));
        });
    }
    t.finish(
        "hs-valid",
        format!("all 1-subgraphs, permutations of length <= {n}"),
    )
}

/// MVP displacement equals the total arc length of `Ψ_{PF→Sub}(p)`.
pub fn displacement_identity(n: usize) -> SuiteReport {
    let mut t = Tally::new();
    for p in pfs_up_to(n) {
        let d = p.displacement_mvp().expect("parking function");
        let s = pf_to_subgraph(&p).expect("parking function");
        let len: usize = s.iter().map(|(j, i)| i - j).sum();
        t.check(d == len, || {
            format!("{p}: displacement {d}, arc length {len}")
        });
    }
    t.finish(
        "displacement",
        format!("all parking functions of length <= {n}"),
    )
}

/// A parking function is Motzkin iff its Φ path is a Motzkin path.
pub fn motzkin_pf_iff_path(n: usize) -> SuiteReport {
    let mut t = Tally::new();
    for p in pfs_up_to(n) {
        let a = is_motzkin_pf(&p).expect("parking function");
        let b = phi(&p).is_motzkin_path();
        t.check(a == b, || format!("{p}: motzkin pf {a}, motzkin path {b}"));
    }
    t.finish(
        "motzkin-path",
        format!("all parking functions of length <= {n}"),
    )
}

/// `Φ ∘ Φ⁻¹` is the identity on Motzkin paths and `Φ⁻¹` lands on
/// non-decreasing parking functions.
pub fn phi_inverse_section(n: usize) -> SuiteReport {
    let mut t = Tally::new();
    for k in 1..=n {
        for path in LatticePath::all_motzkin(k) {
            let p = phi_inverse(&path).expect("motzkin path");
            let sorted = p.as_slice().windows(2).all(|w| w[0] <= w[1]);
            t.check(sorted && p.is_parking_function() && phi(&p) == path, || {
                format!("{path} -> {p}")
            });
        }
    }
    t.finish("phi-inverse", format!("all Motzkin paths of length <= {n}"))
}

/// Valid 1-subgraphs of `dec(k)` are exactly the non-crossing matchings,
/// counted by Motzkin numbers; the path encoding is injective.
pub fn decreasing_noncrossing(n: usize) -> SuiteReport {
    let mut t = Tally::new();
    for k in 1..=n {
        let dec = Permutation::dec(k).expect("k >= 1");
        let valid: BTreeSet<ArcSet> = valid_subgraphs(&dec, false).into_iter().collect();
        let matchings = enumerate_noncrossing(k);
        let nc: BTreeSet<ArcSet> = matchings.iter().map(|m| m.arcs().clone()).collect();
        t.check(valid == nc, || {
            format!("n={k}: valid set differs from non-crossing matchings")
        });
        t.check(nc.len() as u64 == motzkin::<u64>(k), || {
            format!(
                "n={k}: {} matchings, Motzkin number {}",
                nc.len(),
                motzkin::<u64>(k)
            )
        });
        let paths: HashSet<LatticePath> = matchings.iter().map(noncross_to_motzkin).collect();
        t.check(paths.len() == matchings.len(), || {
            format!("n={k}: path encoding not injective")
        });
    }
    t.finish(
        "noncrossing",
        format!("decreasing permutations of length <= {n}"),
    )
}

/// Enumerated fibre of `bipart(m, 2)` against the closed formula. `m = 0`
/// is the identity on two letters.
pub fn bipartite_two_count(max_m: usize) -> SuiteReport {
    let mut t = Tally::new();
    for m in 0..=max_m {
        let perm = bipart_or_identity(m, 2);
        let got = fibre_via_subgraphs(&perm, true).len() as u64;
        let want = bipartite_two_fibre(m as u64);
        t.check(got == want, || {
            format!("m={m}: enumerated {got}, formula {want}")
        });
    }
    t.finish("bipartite-two", format!("m = 0..={max_m}"))
}

pub(crate) fn bipart_or_identity(m: usize, n: usize) -> Permutation {
    if m == 0 {
        Permutation::identity(n)
    } else {
        Permutation::bipart(m, n).expect("m, n >= 1")
    }
}

/// Parity rules for two-arc subgraphs of `bipart(m, 2)`, `2 <= j <= m`.
pub fn bipartite_parity(max_m: usize) -> SuiteReport {
    let mut t = Tally::new();
    for m in 1..=max_m {
        let perm = Permutation::bipart(m, 2).expect("m >= 1");
        let valid = |arcs: [(usize, usize); 2]| {
            is_valid(&ArcSet::new(m + 2, arcs).expect("arcs in range"), &perm).expect("1-subgraph")
        };
        for j in 2..=m {
            let a = valid([(1, m + 1), (j, m + 2)]);
            t.check(a == ((m + j) % 2 == 0), || {
                format!("m={m} j={j}: (1,m+1),(j,m+2) valid={a}")
            });
            let b = valid([(1, m + 2), (j, m + 1)]);
            t.check(b == ((m + j) % 2 == 1), || {
                format!("m={m} j={j}: (1,m+2),(j,m+1) valid={b}")
            });
        }
        let c = valid([(1, m + 1), (1, m + 2)]);
        t.check(c == (m % 2 == 1), || {
            format!("m={m}: (1,m+1),(1,m+2) valid={c}")
        });
    }
    t.finish("bipartite-parity", format!("2 <= j <= m <= {max_m}"))
}

/// Valid subgraphs of `bipart(m, 2)` with vertex 1 isolated are as many as
/// all valid subgraphs of `bipart(m - 1, 2)`.
pub fn isolated_vertex_insertion(max_m: usize) -> SuiteReport {
    let mut t = Tally::new();
    for m in 1..=max_m {
        let isolated = valid_subgraphs(&Permutation::bipart(m, 2).expect("m >= 1"), true)
            .iter()
            .filter(|s| s.degree(1) == 0)
            .count();
        let smaller = valid_subgraphs(&bipart_or_identity(m - 1, 2), true).len();
        t.check(isolated == smaller, || {
            format!("m={m}: {isolated} vs {smaller}")
        });
    }
    t.finish("isolated-vertex", format!("m = 1..={max_m}"))
}

/// The sandpile route to both outcome maps agrees with direct simulation.
pub fn sandpile_outcomes(n: usize) -> SuiteReport {
    let mut t = Tally::new();
    for p in pfs_up_to(n) {
        let mvp = p.outcome_mvp().expect("parking function").outcome;
        let via = mvp_outcome_via_asm(&p);
        t.check(via.as_ref() == Ok(&mvp), || {
            format!("{p}: mvp {mvp}, sandpile {via:?}")
        });
        let classical = p.outcome_classical().expect("parking function");
        let via = classical_outcome_via_asm(&p);
        t.check(via.as_ref() == Ok(&classical), || {
            format!("{p}: classical {classical}, sandpile {via:?}")
        });
    }
    t.finish(
        "sandpile-outcome",
        format!("all parking functions of length <= {n}"),
    )
}

/// `psi_dec_to_split` maps the valid subgraphs of `dec(k)` injectively onto
/// those of `split_left(2, k - 2)`, for `3 <= k <= n`.
pub fn decreasing_to_split(n: usize) -> SuiteReport {
    let mut t = Tally::new();
    for k in 3..=n {
        let dec = Permutation::dec(k).expect("k >= 3");
        let split = Permutation::split_left(2, k - 2).expect("k >= 3");
        let source = valid_subgraphs(&dec, true);
        let mut image = BTreeSet::new();
        for s in &source {
            match psi_dec_to_split(s, k) {
                Ok(img) => {
                    let fresh = image.insert(img.clone());
                    t.check(fresh, || format!("n={k}: {img} hit twice"));
                }
                Err(e) => t.check(false, || format!("n={k}: {s}: {e}")),
            }
        }
        let target: BTreeSet<ArcSet> = valid_subgraphs(&split, true).into_iter().collect();
        t.check(image == target, || {
            let extra = image.symmetric_difference(&target).next().cloned();
            format!("n={k}: image differs from valid set, e.g. {extra:?}")
        });
        t.check(target.len() as u64 == motzkin::<u64>(k), || {
            format!(
                "n={k}: {} valid, Motzkin {}",
                target.len(),
                motzkin::<u64>(k)
            )
        });
    }
    t.finish("dec-to-split", format!("3 <= n <= {n}"))
}

/// Uniform parking function of length `n` by rejection from `[n]^n`.
pub fn random_parking_function<R: Rng>(n: usize, rng: &mut R) -> ParkingPreference {
    loop {
        let v: Vec<usize> = (0..n).map(|_| rng.gen_range(1..=n)).collect();
        let p = ParkingPreference::new(v).expect("entries in range");
        if p.is_parking_function() {
            return p;
        }
    }
}

/// Random recurrent configurations, each pushed out of stability by extra
/// grains, are stabilised in random toppling orders; every order has to
/// land on the same configuration as the lowest-index-first order.
pub fn abelian(max_n: usize, cases: usize, seed: u64) -> SuiteReport {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut t = Tally::new();
    for n in 1..=max_n {
        for _ in 0..cases {
            let base =
                SandpileConfig::from_parking_preference(&random_parking_function(n, &mut rng));
            let loaded = SandpileConfig::new(
                base.grains()
                    .iter()
                    .map(|&g| g + rng.gen_range(0..=2 * n as u64))
                    .collect(),
            );
            let (reference, _) = loaded.stabilise();
            for _ in 0..3 {
                let (other, _) = loaded.stabilise_by(|u| *u.choose(&mut rng).expect("non-empty"));
                t.check(other == reference, || {
                    format!("{loaded}: {reference} vs {other}")
                });
            }
        }
    }
    t.finish(
        "abelian",
        format!("{cases} random configurations per n <= {max_n}, seed {seed}"),
    )
}
