//! Motzkin parking functions, the path map Φ and its inverse, non-crossing
//! matchings, and the bijections onto the decreasing fibre and onto the
//! fibre of `split_left(2, n - 2)`.

use std::fmt;
use std::str::FromStr;

use crate::arcs::{Arc, ArcSet};
use crate::error::{Error, Result};
use crate::fibre::subgraph_to_pf;
use crate::parking::ParkingPreference;
use crate::perm::{next_permutation, Permutation};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Step {
    U,
    H,
    D,
}

impl Step {
    fn as_char(self) -> char {
        match self {
            Step::U => 'U',
            Step::H => 'H',
            Step::D => 'D',
        }
    }
}

/// A word over `{U, H, D}`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct LatticePath {
    steps: Vec<Step>,
}

impl LatticePath {
    pub fn new(steps: Vec<Step>) -> Self {
        Self { steps }
    }

    pub fn steps(&self) -> &[Step] {
        &self.steps
    }

    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    /// Never dips below the axis and ends on it.
    pub fn is_motzkin_path(&self) -> bool {
        let mut height: i64 = 0;
        for s in &self.steps {
            height += match s {
                Step::U => 1,
                Step::H => 0,
                Step::D => -1,
            };
            if height < 0 {
                return false;
            }
        }
        height == 0
    }

    /// Every Motzkin path of length `n`, lexicographic in `U < H < D`.
    pub fn all_motzkin(n: usize) -> Vec<LatticePath> {
        fn go(n: usize, height: usize, cur: &mut Vec<Step>, out: &mut Vec<LatticePath>) {
            let left = n - cur.len();
            if left == 0 {
                if height == 0 {
                    out.push(LatticePath::new(cur.clone()));
                }
                return;
            }
            if height + 1 < left {
                cur.push(Step::U);
                go(n, height + 1, cur, out);
                cur.pop();
            }
            if height < left {
                cur.push(Step::H);
                go(n, height, cur, out);
                cur.pop();
            }
            if height > 0 {
                cur.push(Step::D);
                go(n, height - 1, cur, out);
                cur.pop();
            }
        }
        let mut out = Vec::new();
        go(n, 0, &mut Vec::with_capacity(n), &mut out);
        out
    }
}

impl FromStr for LatticePath {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        s.trim()
            .chars()
            .map(|c| match c {
                'U' => Ok(Step::U),
                'H' => Ok(Step::H),
                'D' => Ok(Step::D),
                other => Err(Error::InvalidPath(format!("unexpected step {other:?}"))),
            })
            .collect::<Result<Vec<_>>>()
            .map(LatticePath::new)
    }
}

impl fmt::Display for LatticePath {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.steps
            .iter()
            .try_for_each(|s| write!(f, "{}", s.as_char()))
    }
}

fn spot_counts(p: &ParkingPreference) -> Vec<usize> {
    let mut counts = vec![0; p.len() + 1];
    for &v in p.as_slice() {
        counts[v] += 1;
    }
    counts
}

/// A parking function in which every spot is preferred by at most two cars.
pub fn is_motzkin_pf(p: &ParkingPreference) -> Result<bool> {
    if !p.is_parking_function() {
        return Err(Error::NotAParkingFunction(p.to_string()));
    }
    Ok(spot_counts(p).iter().all(|&c| c <= 2))
}

/// Step `j` is `U`, `H` or `D` as spot `j` is preferred by at least two,
/// exactly one, or no cars.
pub fn phi(p: &ParkingPreference) -> LatticePath {
    let counts = spot_counts(p);
    LatticePath::new(
        counts[1..]
            .iter()
            .map(|&c| match c {
                0 => Step::D,
                1 => Step::H,
                _ => Step::U,
            })
            .collect(),
    )
}

/// The non-decreasing parking function with path `path`: scanning steps
/// left to right, a `U` at position `k` writes `k` twice, an `H` writes it
/// once and a `D` writes nothing.
pub fn phi_inverse(path: &LatticePath) -> Result<ParkingPreference> {
    if !path.is_motzkin_path() {
        return Err(Error::NotAMotzkinPath(path.to_string()));
    }
    let n = path.len();
    if n == 0 {
        return Err(Error::InvalidSize(
            "the empty path has no preference".into(),
        ));
    }
    let mut p = vec![0; n];
    let mut i = 0;
    for (idx, step) in path.steps().iter().enumerate() {
        let k = idx + 1;
        match step {
            Step::U => {
                p[i] = k;
                p[i + 1] = k;
                i += 2;
            }
            Step::H => {
                p[i] = k;
                i += 1;
            }
            Step::D => {}
        }
    }
    debug_assert_eq!(i, n);
    Ok(ParkingPreference::from_vec_unchecked(p))
}

/// Every distinct rearrangement of `p`, lexicographically.
pub fn distinct_rearrangements(p: &ParkingPreference) -> Vec<ParkingPreference> {
    let mut v = p.as_slice().to_vec();
    v.sort_unstable();
    let mut out = vec![ParkingPreference::from_vec_unchecked(v.clone())];
    while next_permutation(&mut v) {
        out.push(ParkingPreference::from_vec_unchecked(v.clone()));
    }
    out
}

/// The unique rearrangement of a Motzkin parking function whose MVP outcome
/// is the decreasing permutation, found by searching all distinct
/// rearrangements.
pub fn class_representative_dec(p: &ParkingPreference) -> Result<ParkingPreference> {
    if !is_motzkin_pf(p)? {
        return Err(Error::NotAMotzkinParkingFunction(p.to_string()));
    }
    let dec = Permutation::dec(p.len())?;
    let hits: Vec<ParkingPreference> = distinct_rearrangements(p)
        .into_iter()
        .filter(|q| q.outcome_mvp().map(|o| o.outcome == dec).unwrap_or(false))
        .collect();
    assert_eq!(
        hits.len(),
        1,
        "expected exactly one rearrangement of {p} in the decreasing fibre, found {}",
        hits.len()
    );
    Ok(hits.into_iter().next().expect("one hit"))
}

/// An arc set that is a matching with no two crossing arcs.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct NonCrossingMatching(ArcSet);

impl NonCrossingMatching {
    pub fn new(arcs: ArcSet) -> Result<Self> {
        if !arcs.is_matching() {
            return Err(Error::NotANonCrossingMatching(format!(
                "{arcs}: shared vertex"
            )));
        }
        if !arcs.is_non_crossing() {
            return Err(Error::NotANonCrossingMatching(format!(
                "{arcs}: crossing arcs"
            )));
        }
        Ok(Self(arcs))
    }

    pub fn arcs(&self) -> &ArcSet {
        &self.0
    }

    pub fn into_arcs(self) -> ArcSet {
        self.0
    }

    pub fn n(&self) -> usize {
        self.0.n()
    }
}

impl fmt::Display for NonCrossingMatching {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

/// Every non-crossing matching on `[n]`. Vertex `lo` of an interval is
/// either isolated or matched to some `k`, which splits the rest into the
/// independent intervals inside and after the arc.
pub fn enumerate_noncrossing(n: usize) -> Vec<NonCrossingMatching> {
    fn interval(lo: usize, hi: usize) -> Vec<Vec<Arc>> {
        if lo > hi {
            return vec![Vec::new()];
        }
        let mut out = interval(lo + 1, hi);
        for k in lo + 1..=hi {
            let inside = interval(lo + 1, k - 1);
            let outside = interval(k + 1, hi);
            for a in &inside {
                for b in &outside {
                    let mut arcs = Vec::with_capacity(a.len() + b.len() + 1);
                    arcs.push((lo, k));
                    arcs.extend_from_slice(a);
                    arcs.extend_from_slice(b);
                    out.push(arcs);
                }
            }
        }
        out
    }
    interval(1, n)
        .into_iter()
        .map(|arcs| NonCrossingMatching(ArcSet::from_set_unchecked(n, arcs.into_iter().collect())))
        .collect()
}

/// `U` at right-arc openers, `D` at closers, `H` at isolated vertices.
pub fn noncross_to_motzkin(m: &NonCrossingMatching) -> LatticePath {
    let mut steps = vec![Step::H; m.n()];
    for (j, i) in m.arcs().iter() {
        steps[j - 1] = Step::U;
        steps[i - 1] = Step::D;
    }
    LatticePath::new(steps)
}

/// Intervals of the prime factors, left to right: outermost arcs `[i, j]`
/// and the isolated vertices not covered by any arc. Together they
/// partition `[n]`.
pub fn prime_decomposition(m: &NonCrossingMatching) -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    let n = m.n();
    let mut right_end = vec![0; n + 1];
    for (j, i) in m.arcs().iter() {
        right_end[j] = i;
    }
    let mut v = 1;
    while v <= n {
        if right_end[v] > 0 {
            out.push((v, right_end[v]));
            v = right_end[v] + 1;
        } else {
            out.push((v, v));
            v += 1;
        }
    }
    out
}

/// `Fib(dec(n))` as the images of all non-crossing matchings, sorted.
pub fn decreasing_fibre(n: usize) -> Result<Vec<ParkingPreference>> {
    let dec = Permutation::dec(n)?;
    let mut out = enumerate_noncrossing(n)
        .iter()
        .map(|m| subgraph_to_pf(m.arcs(), &dec))
        .collect::<Result<Vec<_>>>()?;
    out.sort_unstable();
    Ok(out)
}

/// The bijection from valid subgraphs of `G_dec(n)` (non-crossing matchings)
/// to valid subgraphs of `G_split_left(2, n-2)`:
///
/// 1. without the arc `(n-1, n)` the set is returned unchanged;
/// 2. with `(n-1, n)` and `n-2` isolated, that arc becomes
///    `(n-2, n-1), (n-2, n)`;
/// 3. with `(n-1, n)` and an arc `(i, n-2)`, both are replaced by
///    `(i, n-1), (i, n)` and every arc strictly inside `(i, n-2)` moves one
///    column right.
pub fn psi_dec_to_split(s: &ArcSet, n: usize) -> Result<ArcSet> {
    if n < 3 {
        return Err(Error::InvalidSize(format!("n must be at least 3, got {n}")));
    }
    if s.n() != n {
        return Err(Error::NotAValidDecSubgraph(format!(
            "arc set has {} vertices, expected {n}",
            s.n()
        )));
    }
    NonCrossingMatching::new(s.clone()).map_err(|e| Error::NotAValidDecSubgraph(e.to_string()))?;
    if !s.contains(n - 1, n) {
        return Ok(s.clone());
    }
    let mut arcs = s.arcs().clone();
    arcs.remove(&(n - 1, n));
    let into_n2 = s.left_neighbours(n - 2).next();
    match into_n2 {
        None => {
            arcs.insert((n - 2, n - 1));
            arcs.insert((n - 2, n));
        }
        Some(i) => {
            arcs.remove(&(i, n - 2));
            let inside: Vec<Arc> = arcs
                .iter()
                .copied()
                .filter(|&(j, k)| i < j && k < n - 2)
                .collect();
            for a in &inside {
                arcs.remove(a);
            }
            arcs.extend(inside.iter().map(|&(j, k)| (j + 1, k + 1)));
            arcs.insert((i, n - 1));
            arcs.insert((i, n));
        }
    }
    Ok(ArcSet::from_set_unchecked(n, arcs))
}
