//! Permutations in one-line notation: inversions, left-inversion sets,
//! pattern containment and the named families (decreasing, complete
//! bipartite, complete split).
//!
//! Positions and values are 1-based throughout the public API.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

/// A permutation of `1..=n` in one-line notation.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    word: Vec<usize>,
}

/// The inversion set `{(j, i) : j < i, π_j > π_i}`, which doubles as the
/// edge set of the inversion graph.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct InversionSet {
    n: usize,
    pairs: BTreeSet<(usize, usize)>,
}

impl InversionSet {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    pub fn contains(&self, j: usize, i: usize) -> bool {
        self.pairs.contains(&(j, i))
    }

    /// Pairs in lexicographic order.
    pub fn iter(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.pairs.iter().copied()
    }
}

impl Permutation {
    /// Builds a permutation from its one-line word, checking that it is a
    /// rearrangement of `1..=n`.
    pub fn new(word: Vec<usize>) -> Result<Self> {
        let n = word.len();
        let mut seen = vec![false; n + 1];
        for &v in &word {
            if v == 0 || v > n {
                return Err(Error::InvalidPermutation(format!(
                    "value {v} outside 1..={n}"
                )));
            }
            if seen[v] {
                return Err(Error::InvalidPermutation(format!("value {v} repeated")));
            }
            seen[v] = true;
        }
        Ok(Self { word })
    }

    pub(crate) fn from_word_unchecked(word: Vec<usize>) -> Self {
        debug_assert!(Self::new(word.clone()).is_ok());
        Self { word }
    }

    pub fn identity(n: usize) -> Self {
        Self {
            word: (1..=n).collect(),
        }
    }

    /// `n (n-1) ... 1`.
    pub fn dec(n: usize) -> Result<Self> {
        check_positive("n", n)?;
        Ok(Self {
            word: (1..=n).rev().collect(),
        })
    }

    /// `(n+1)(n+2)...(n+m) 1 2 ... n`, whose inversion graph is `K_{m,n}`.
    pub fn bipart(m: usize, n: usize) -> Result<Self> {
        check_positive("m", m)?;
        check_positive("n", n)?;
        Ok(Self {
            word: (n + 1..=n + m).chain(1..=n).collect(),
        })
    }

    /// `(n+1)...(n+m) n (n-1) ... 1`.
    pub fn split_right(m: usize, n: usize) -> Result<Self> {
        check_positive("m", m)?;
        check_positive("n", n)?;
        Ok(Self {
            word: (n + 1..=n + m).chain((1..=n).rev()).collect(),
        })
    }

    /// `(m+n)(m+n-1)...(m+1) 1 2 ... m`.
    pub fn split_left(m: usize, n: usize) -> Result<Self> {
        check_positive("m", m)?;
        check_positive("n", n)?;
        Ok(Self {
            word: (m + 1..=m + n).rev().chain(1..=m).collect(),
        })
    }

    pub fn len(&self) -> usize {
        self.word.len()
    }

    pub fn is_empty(&self) -> bool {
        self.word.is_empty()
    }

    /// `π_i` for `1 <= i <= n`. Panics when out of range.
    pub fn at(&self, i: usize) -> usize {
        self.word[i - 1]
    }

    pub fn word(&self) -> &[usize] {
        &self.word
    }

    pub fn is_identity(&self) -> bool {
        self.word.iter().enumerate().all(|(k, &v)| v == k + 1)
    }

    /// The inverse permutation: `inverse().at(c)` is the position of value `c`.
    pub fn inverse(&self) -> Self {
        let mut inv = vec![0; self.len()];
        for (k, &v) in self.word.iter().enumerate() {
            inv[v - 1] = k + 1;
        }
        Self { word: inv }
    }

    pub fn inversions(&self) -> InversionSet {
        let n = self.len();
        let mut pairs = BTreeSet::new();
        for j in 1..=n {
            for i in j + 1..=n {
                if self.at(j) > self.at(i) {
                    pairs.insert((j, i));
                }
            }
        }
        InversionSet { n, pairs }
    }

    /// `LInv(π, i) = {j : (j, i) is an inversion}`, ascending.
    pub fn left_inversions(&self, i: usize) -> Result<Vec<usize>> {
        let n = self.len();
        if i == 0 || i > n {
            return Err(Error::IndexOutOfRange { index: i, n });
        }
        let v = self.at(i);
        Ok((1..i).filter(|&j| self.at(j) > v).collect())
    }

    /// Left-inversion lists for every vertex; entry `i - 1` holds `LInv(π, i)`.
    pub fn left_inversion_lists(&self) -> Vec<Vec<usize>> {
        (1..=self.len())
            .map(|i| self.left_inversions(i).expect("index in range"))
            .collect()
    }

    /// True iff some subsequence of `self` is order-isomorphic to `pattern`.
    pub fn contains_pattern(&self, pattern: &Permutation) -> Result<bool> {
        let k = pattern.len();
        if k > self.len() {
            return Err(Error::PatternLongerThanHost {
                pattern: k,
                host: self.len(),
            });
        }
        if k == 0 {
            return Ok(true);
        }
        let mut chosen = Vec::with_capacity(k);
        Ok(self.extend_occurrence(pattern, 0, &mut chosen))
    }

    fn extend_occurrence(
        &self,
        pattern: &Permutation,
        start: usize,
        chosen: &mut Vec<usize>,
    ) -> bool {
        let k = chosen.len();
        if k == pattern.len() {
            return true;
        }
        let remaining = pattern.len() - k;
        for pos in start..=self.word.len() - remaining {
            let v = self.word[pos];
            // The new entry must compare with every earlier chosen entry the
            // way the pattern's entries compare.
            let consistent = chosen
                .iter()
                .enumerate()
                .all(|(t, &prev)| (pattern.word[t] < pattern.word[k]) == (prev < v));
            if consistent {
                chosen.push(v);
                if self.extend_occurrence(pattern, pos + 1, chosen) {
                    return true;
                }
                chosen.pop();
            }
        }
        false
    }

    /// The inversion graph is acyclic iff `π` avoids 321 and 3412.
    pub fn inversion_graph_acyclic(&self) -> bool {
        let p321 = Permutation::from_word_unchecked(vec![3, 2, 1]);
        let p3412 = Permutation::from_word_unchecked(vec![3, 4, 1, 2]);
        let contains =
            |p: &Permutation| p.len() <= self.len() && self.contains_pattern(p).unwrap_or(false);
        !contains(&p321) && !contains(&p3412)
    }

    /// Acyclicity of the inversion graph by union-find over its edges,
    /// independent of the pattern characterisation.
    pub fn inversion_graph_acyclic_by_search(&self) -> bool {
        let n = self.len();
        let mut parent: Vec<usize> = (0..=n).collect();
        fn find(parent: &mut [usize], mut x: usize) -> usize {
            while parent[x] != x {
                parent[x] = parent[parent[x]];
                x = parent[x];
            }
            x
        }
        for (j, i) in self.inversions().iter() {
            let (a, b) = (find(&mut parent, j), find(&mut parent, i));
            if a == b {
                return false;
            }
            parent[a] = b;
        }
        true
    }

    /// All permutations of `1..=n` in lexicographic order.
    pub fn all(n: usize) -> AllPermutations {
        AllPermutations {
            next: Some((1..=n).collect()),
        }
    }
}

fn check_positive(name: &str, v: usize) -> Result<()> {
    if v == 0 {
        Err(Error::InvalidSize(format!("{name} must be at least 1")))
    } else {
        Ok(())
    }
}

/// Lexicographic iterator over `S_n`.
#[derive(Debug, Clone)]
pub struct AllPermutations {
    next: Option<Vec<usize>>,
}

impl Iterator for AllPermutations {
    type Item = Permutation;

    fn next(&mut self) -> Option<Permutation> {
        let current = self.next.take()?;
        let mut succ = current.clone();
        if next_permutation(&mut succ) {
            self.next = Some(succ);
        }
        Some(Permutation { word: current })
    }
}

/// Advances `v` to its lexicographic successor; false when `v` was the last.
pub(crate) fn next_permutation<T: Ord>(v: &mut [T]) -> bool {
    if v.len() < 2 {
        return false;
    }
    let mut i = v.len() - 1;
    while i > 0 && v[i - 1] >= v[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = v.len() - 1;
    while v[j] <= v[i - 1] {
        j -= 1;
    }
    v.swap(i - 1, j);
    v[i..].reverse();
    true
}

/// Parses either a digit string (`"3412"`, one digit per entry) or a
/// comma-separated list (`"10,3,1,..."`).
pub(crate) fn parse_int_list(s: &str) -> std::result::Result<Vec<usize>, String> {
    let s = s.trim();
    if s.is_empty() {
        return Ok(Vec::new());
    }
    if s.contains(',') {
        s.split(',')
            .map(|t| {
                t.trim()
                    .parse::<usize>()
                    .map_err(|e| format!("bad entry {t:?}: {e}"))
            })
            .collect()
    } else {
        s.chars()
            .map(|c| {
                c.to_digit(10)
                    .map(|d| d as usize)
                    .ok_or_else(|| format!("bad digit {c:?}"))
            })
            .collect()
    }
}

pub(crate) fn render_compact(values: &[usize]) -> String {
    if values.len() <= 9 && values.iter().all(|&v| v <= 9) {
        values.iter().map(|v| v.to_string()).collect()
    } else {
        render_commas(values)
    }
}

pub(crate) fn render_commas(values: &[usize]) -> String {
    values
        .iter()
        .map(|v| v.to_string())
        .collect::<Vec<_>>()
        .join(",")
}

impl FromStr for Permutation {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let word = parse_int_list(s).map_err(Error::InvalidPermutation)?;
        Permutation::new(word)
    }
}

/// Digit string for `n <= 9`, comma-separated otherwise.
impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&render_compact(&self.word))
    }
}
