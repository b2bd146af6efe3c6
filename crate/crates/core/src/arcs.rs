//! Arc sets over vertices `1..=n`: 1-subgraphs of inversion graphs,
//! matchings and arc diagrams all share this representation.

use std::collections::BTreeSet;
use std::fmt;

use crate::error::{Error, Result};
use crate::perm::Permutation;

/// An arc `(from, to)` with `from < to`.
pub type Arc = (usize, usize);

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ArcSet {
    n: usize,
    arcs: BTreeSet<Arc>,
}

impl ArcSet {
    pub fn empty(n: usize) -> Self {
        Self {
            n,
            arcs: BTreeSet::new(),
        }
    }

    pub fn new(n: usize, arcs: impl IntoIterator<Item = Arc>) -> Result<Self> {
        let mut set = BTreeSet::new();
        for (j, i) in arcs {
            if j == 0 || i > n || j >= i {
                return Err(Error::InvalidArcSet(format!(
                    "arc {j}-{i} is not of the form j<i within 1..={n}"
                )));
            }
            set.insert((j, i));
        }
        Ok(Self { n, arcs: set })
    }

    pub(crate) fn from_set_unchecked(n: usize, arcs: BTreeSet<Arc>) -> Self {
        Self { n, arcs }
    }

    /// Builds the arc set of a left-arc choice vector: `left[i - 1] = Some(j)`
    /// stands for the arc `(j, i)`.
    pub fn from_left_choices(left: &[Option<usize>]) -> Self {
        let arcs = left
            .iter()
            .enumerate()
            .filter_map(|(k, c)| c.map(|j| (j, k + 1)))
            .collect();
        Self {
            n: left.len(),
            arcs,
        }
    }

    /// Parses `"2-3,2-4"` (an empty string is the empty set).
    pub fn parse(n: usize, s: &str) -> Result<Self> {
        let s = s.trim();
        if s.is_empty() {
            return Ok(Self::empty(n));
        }
        let mut arcs = Vec::new();
        for tok in s.split(',') {
            let (a, b) = tok
                .trim()
                .split_once('-')
                .ok_or_else(|| Error::InvalidArcSet(format!("token {tok:?} is not j-i")))?;
            let parse = |t: &str| {
                t.trim()
                    .parse::<usize>()
                    .map_err(|e| Error::InvalidArcSet(format!("token {tok:?}: {e}")))
            };
            arcs.push((parse(a)?, parse(b)?));
        }
        Self::new(n, arcs)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn len(&self) -> usize {
        self.arcs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.arcs.is_empty()
    }

    pub fn contains(&self, j: usize, i: usize) -> bool {
        self.arcs.contains(&(j, i))
    }

    pub fn iter(&self) -> impl Iterator<Item = Arc> + '_ {
        self.arcs.iter().copied()
    }

    pub fn arcs(&self) -> &BTreeSet<Arc> {
        &self.arcs
    }

    /// Left endpoints of arcs ending at `i`.
    pub fn left_neighbours(&self, i: usize) -> impl Iterator<Item = usize> + '_ {
        self.arcs.iter().filter(move |a| a.1 == i).map(|a| a.0)
    }

    /// Right endpoints of arcs starting at `j`.
    pub fn right_neighbours(&self, j: usize) -> impl Iterator<Item = usize> + '_ {
        self.arcs.iter().filter(move |a| a.0 == j).map(|a| a.1)
    }

    pub fn degree(&self, v: usize) -> usize {
        self.arcs.iter().filter(|a| a.0 == v || a.1 == v).count()
    }

    /// Checks the 1-subgraph conditions for `G_π`: every arc is an inversion
    /// of `π` and no vertex has two left-arcs. On success returns the left-arc
    /// choice vector.
    pub fn one_subgraph_choices(&self, perm: &Permutation) -> Result<Vec<Option<usize>>> {
        let fail = |reason: String| Error::NotASubgraphOf {
            perm: perm.to_string(),
            reason,
        };
        if self.n != perm.len() {
            return Err(fail(format!(
                "arc set has {} vertices, permutation has {}",
                self.n,
                perm.len()
            )));
        }
        let mut left = vec![None; self.n];
        for &(j, i) in &self.arcs {
            if perm.at(j) < perm.at(i) {
                return Err(fail(format!("arc {j}-{i} is not an inversion")));
            }
            if let Some(prev) = left[i - 1].replace(j) {
                return Err(fail(format!(
                    "vertex {i} has left-arcs from {prev} and {j}"
                )));
            }
        }
        Ok(left)
    }

    pub fn is_one_subgraph_of(&self, perm: &Permutation) -> bool {
        self.one_subgraph_choices(perm).is_ok()
    }

    /// No directed path `i -> j -> k`, i.e. no vertex carries both a
    /// left-arc and a right-arc.
    pub fn is_p2_free(&self) -> bool {
        let mut has_left = vec![false; self.n + 1];
        for &(_, i) in &self.arcs {
            has_left[i] = true;
        }
        self.arcs.iter().all(|&(j, _)| !has_left[j])
    }

    /// Horizontally separated: for every two distinct arcs `(j, i)` and
    /// `(j', i')`, either `i < j'` or `i' < j` (shared endpoints count as
    /// overlap).
    pub fn is_hs(&self) -> bool {
        // sorted by left endpoint, so it is enough to compare neighbours
        self.arcs
            .iter()
            .zip(self.arcs.iter().skip(1))
            .all(|(a, b)| a.1 < b.0)
    }

    /// No two arcs share a vertex.
    pub fn is_matching(&self) -> bool {
        let mut seen = vec![false; self.n + 1];
        for &(j, i) in &self.arcs {
            if seen[j] || seen[i] {
                return false;
            }
            seen[j] = true;
            seen[i] = true;
        }
        true
    }

    /// No `a < b < c < d` with arcs `(a, c)` and `(b, d)`.
    pub fn is_non_crossing(&self) -> bool {
        self.arcs
            .iter()
            .all(|&(a, c)| self.arcs.iter().all(|&(b, d)| !(a < b && b < c && c < d)))
    }
}

/// Sorted `j-i` tokens joined by commas.
impl fmt::Display for ArcSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (j, i) in &self.arcs {
            if !first {
                f.write_str(",")?;
            }
            first = false;
            write!(f, "{j}-{i}")?;
        }
        Ok(())
    }
}
