//! The Abelian sandpile model on the complete graph `K_n` with a sink.
//!
//! A vertex holding at least `n` grains is unstable; toppling it sends one
//! grain to each of the other `n - 1` vertices and one to the sink.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::parking::ParkingPreference;
use crate::perm::Permutation;

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SandpileConfig {
    grains: Vec<u64>,
}

/// One iteration of the minimal-recurrent reduction: `j` is the first index
/// repeating an earlier value, `i` the index being decremented, and
/// `values` the successive values it took (starting value first).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MinrecStep {
    pub j: usize,
    pub i: usize,
    pub values: Vec<u64>,
    pub after: SandpileConfig,
}

impl SandpileConfig {
    pub fn new(grains: Vec<u64>) -> Self {
        Self { grains }
    }

    pub fn n(&self) -> usize {
        self.grains.len()
    }

    pub fn grains(&self) -> &[u64] {
        &self.grains
    }

    /// Grains at vertex `v` (1-based).
    pub fn at(&self, v: usize) -> u64 {
        self.grains[v - 1]
    }

    pub fn total(&self) -> u64 {
        self.grains.iter().sum()
    }

    fn threshold(&self) -> u64 {
        self.n() as u64
    }

    pub fn is_stable(&self) -> bool {
        self.grains.iter().all(|&g| g < self.threshold())
    }

    /// Unstable vertices, ascending.
    pub fn unstable_vertices(&self) -> Vec<usize> {
        let t = self.threshold();
        (1..=self.n()).filter(|&v| self.at(v) >= t).collect()
    }

    fn topple_in_place(&mut self, v: usize) {
        let n = self.threshold();
        for (k, g) in self.grains.iter_mut().enumerate() {
            if k + 1 == v {
                *g -= n;
            } else {
                *g += 1;
            }
        }
    }

    pub fn topple(&self, v: usize) -> Result<Self> {
        let n = self.n();
        if v == 0 || v > n {
            return Err(Error::IndexOutOfRange { index: v, n });
        }
        if self.at(v) < self.threshold() {
            return Err(Error::VertexStable {
                vertex: v,
                grains: self.at(v),
                n,
            });
        }
        let mut out = self.clone();
        out.topple_in_place(v);
        Ok(out)
    }

    /// Stabilisation, toppling the lowest-index unstable vertex each time.
    /// Returns the stable configuration and the toppling sequence used.
    pub fn stabilise(&self) -> (Self, Vec<usize>) {
        self.stabilise_by(|unstable| unstable[0])
    }

    /// Stabilisation where `pick` chooses which of the currently unstable
    /// vertices (ascending, never empty) topples next.
    pub fn stabilise_by<F: FnMut(&[usize]) -> usize>(&self, mut pick: F) -> (Self, Vec<usize>) {
        let mut c = self.clone();
        let mut seq = Vec::new();
        loop {
            let unstable = c.unstable_vertices();
            if unstable.is_empty() {
                return (c, seq);
            }
            let v = pick(&unstable);
            debug_assert!(unstable.contains(&v));
            c.topple_in_place(v);
            seq.push(v);
        }
    }

    /// `c + (1, ..., 1)`.
    pub fn plus_one_everywhere(&self) -> Self {
        Self::new(self.grains.iter().map(|g| g + 1).collect())
    }

    /// Greedy burning on `c + (1, ..., 1)`: repeatedly topple the lowest
    /// not-yet-toppled unstable vertex. Returns the order when every vertex
    /// toppled exactly once.
    pub fn burning_sequence(&self) -> Option<Vec<usize>> {
        let mut c = self.plus_one_everywhere();
        let t = self.threshold();
        let mut burnt = vec![false; self.n() + 1];
        let mut seq = Vec::with_capacity(self.n());
        while seq.len() < self.n() {
            let v = (1..=self.n()).find(|&v| !burnt[v] && c.at(v) >= t)?;
            c.topple_in_place(v);
            burnt[v] = true;
            seq.push(v);
        }
        Some(seq)
    }

    /// Dhar's burning test.
    pub fn is_recurrent(&self) -> Result<bool> {
        if !self.is_stable() {
            return Err(Error::NotStable(self.to_string()));
        }
        match self.burning_sequence() {
            Some(_) => {
                let (stab, _) = self.plus_one_everywhere().stabilise();
                assert_eq!(&stab, self, "burning succeeded but Stab(c + 1) != c");
                Ok(true)
            }
            None => Ok(false),
        }
    }

    /// Grain counts form a permutation of `{0, ..., n-1}`.
    pub fn is_min_recurrent(&self) -> bool {
        let n = self.n();
        let mut seen = vec![false; n];
        self.grains.iter().all(|&g| {
            let g = g as usize;
            g < n && !std::mem::replace(&mut seen[g], true)
        })
    }

    /// `π_i` is the vertex holding `n - i` grains.
    pub fn canonical_toppling(&self) -> Result<Permutation> {
        if !self.is_min_recurrent() {
            return Err(Error::NotMinimalRecurrent(self.to_string()));
        }
        let n = self.n();
        let mut word = vec![0; n];
        for (k, &g) in self.grains.iter().enumerate() {
            word[n - 1 - g as usize] = k + 1;
        }
        Ok(Permutation::from_word_unchecked(word))
    }

    /// Cori–Rossin: `p = n - c`.
    pub fn to_parking_preference(&self) -> Result<ParkingPreference> {
        if !self.is_stable() {
            return Err(Error::NotStable(self.to_string()));
        }
        let n = self.threshold();
        ParkingPreference::new(self.grains.iter().map(|&g| (n - g) as usize).collect())
    }

    /// Inverse Cori–Rossin map: `c = n - p`.
    pub fn from_parking_preference(p: &ParkingPreference) -> Self {
        let n = p.len() as u64;
        Self::new(p.as_slice().iter().map(|&v| n - v as u64).collect())
    }

    fn require_recurrent(&self) -> Result<()> {
        match self.is_recurrent() {
            Ok(true) => Ok(()),
            _ => Err(Error::NotRecurrent(self.to_string())),
        }
    }

    /// Reduces a recurrent configuration to a minimal recurrent one: find
    /// the first index `j` repeating an earlier value at `i`, then decrement
    /// `c_i` one grain at a time while it collides with some other entry
    /// among indices `1..=j`; repeat until all values are distinct.
    pub fn minrec(&self) -> Result<Self> {
        self.minrec_trace().map(|(c, _)| c)
    }

    pub fn minrec_trace(&self) -> Result<(Self, Vec<MinrecStep>)> {
        self.require_recurrent()?;
        Ok(self.reduce(false))
    }

    /// Variant matching the classical outcome: the later duplicate `c_j` is
    /// decremented until distinct among indices `1..=j`.
    pub fn minrec_classical(&self) -> Result<Self> {
        self.minrec_classical_trace().map(|(c, _)| c)
    }

    pub fn minrec_classical_trace(&self) -> Result<(Self, Vec<MinrecStep>)> {
        self.require_recurrent()?;
        Ok(self.reduce(true))
    }

    fn reduce(&self, classical: bool) -> (Self, Vec<MinrecStep>) {
        let mut c = self.grains.clone();
        let mut steps = Vec::new();
        while let Some((i, j)) = first_duplicate(&c) {
            let target = if classical { j } else { i };
            let mut values = vec![c[target - 1]];
            while (1..=j).any(|k| k != target && c[k - 1] == c[target - 1]) {
                c[target - 1] = c[target - 1]
                    .checked_sub(1)
                    .expect("recurrent input never decrements below zero");
                values.push(c[target - 1]);
            }
            steps.push(MinrecStep {
                j,
                i: target,
                values,
                after: Self::new(c.clone()),
            });
        }
        (Self::new(c), steps)
    }
}

/// `(i, j)` with `j` the smallest index whose value already occurred at
/// the earlier index `i`.
fn first_duplicate(c: &[u64]) -> Option<(usize, usize)> {
    for j in 1..c.len() {
        if let Some(i) = (0..j).find(|&i| c[i] == c[j]) {
            return Some((i + 1, j + 1));
        }
    }
    None
}

/// MVP outcome read off the sandpile: canonical toppling of
/// `minrec(n - p)`.
pub fn mvp_outcome_via_asm(p: &ParkingPreference) -> Result<Permutation> {
    if !p.is_parking_function() {
        return Err(Error::NotAParkingFunction(p.to_string()));
    }
    SandpileConfig::from_parking_preference(p)
        .minrec()?
        .canonical_toppling()
}

/// Classical outcome read off the sandpile via the classical reduction.
pub fn classical_outcome_via_asm(p: &ParkingPreference) -> Result<Permutation> {
    if !p.is_parking_function() {
        return Err(Error::NotAParkingFunction(p.to_string()));
    }
    SandpileConfig::from_parking_preference(p)
        .minrec_classical()?
        .canonical_toppling()
}

impl FromStr for SandpileConfig {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.is_empty() {
            return Err(Error::InvalidConfig("empty configuration".into()));
        }
        s.split(',')
            .map(|t| {
                t.trim()
                    .parse::<u64>()
                    .map_err(|e| Error::InvalidConfig(format!("bad entry {t:?}: {e}")))
            })
            .collect::<Result<Vec<_>>>()
            .map(Self::new)
    }
}

impl fmt::Display for SandpileConfig {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.grains.iter().map(|g| g.to_string()).collect();
        f.write_str(&parts.join(","))
    }
}
