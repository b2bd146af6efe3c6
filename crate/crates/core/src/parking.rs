//! Parking preferences and the two parking processes.
//!
//! Cars `1..=n` enter a one-way street of spots `1..=n` in order. Under the
//! classical rule a car finding its preferred spot taken drives on to the
//! first free spot. Under the MVP rule the arriving car takes the spot and
//! the earlier occupant is bumped to the first free spot after it; bumped
//! cars never bump anyone themselves.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::perm::{parse_int_list, render_commas, Permutation};

/// A preference vector `p ∈ [n]^n`, `n >= 1`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ParkingPreference {
    prefs: Vec<usize>,
}

/// One bump in the MVP process: `car` was pushed out of `from_spot` by the
/// arriving car `by` and re-parked in `to_spot`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct BumpEvent {
    pub car: usize,
    pub by: usize,
    pub from_spot: usize,
    pub to_spot: usize,
}

/// Result of running the MVP process: the outcome permutation (spot `i`
/// holds car `outcome.at(i)`) and the chronological bump log.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParkingOutcome {
    pub outcome: Permutation,
    pub bump_log: Vec<BumpEvent>,
}

impl ParkingPreference {
    pub fn new(prefs: Vec<usize>) -> Result<Self> {
        let n = prefs.len();
        if n == 0 {
            return Err(Error::InvalidPreference("empty preference".into()));
        }
        if let Some(&bad) = prefs.iter().find(|&&v| v == 0 || v > n) {
            return Err(Error::InvalidPreference(format!(
                "preference {bad} outside 1..={n}"
            )));
        }
        Ok(Self { prefs })
    }

    pub(crate) fn from_vec_unchecked(prefs: Vec<usize>) -> Self {
        debug_assert!(Self::new(prefs.clone()).is_ok());
        Self { prefs }
    }

    pub fn len(&self) -> usize {
        self.prefs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.prefs.is_empty()
    }

    /// Preferred spot of car `car` (1-based).
    pub fn at(&self, car: usize) -> usize {
        self.prefs[car - 1]
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.prefs
    }

    pub fn into_vec(self) -> Vec<usize> {
        self.prefs
    }

    /// True iff all cars park. Decided by the classical process; the MVP
    /// process parks exactly the same preferences.
    pub fn is_parking_function(&self) -> bool {
        let classical = run_classical(&self.prefs).is_some();
        debug_assert_eq!(classical, run_mvp(&self.prefs, None).is_some());
        classical
    }

    fn not_pf(&self) -> Error {
        Error::NotAParkingFunction(self.to_string())
    }

    /// Outcome of the classical process (earlier car keeps its spot).
    pub fn outcome_classical(&self) -> Result<Permutation> {
        run_classical(&self.prefs)
            .map(Permutation::from_word_unchecked)
            .ok_or_else(|| self.not_pf())
    }

    /// Outcome and bump log of the MVP process (later car takes the spot).
    pub fn outcome_mvp(&self) -> Result<ParkingOutcome> {
        let mut log = Vec::new();
        let word = run_mvp(&self.prefs, Some(&mut log)).ok_or_else(|| self.not_pf())?;
        Ok(ParkingOutcome {
            outcome: Permutation::from_word_unchecked(word),
            bump_log: log,
        })
    }

    /// `Σ_i |p_i − final spot of car i|` under the MVP process.
    pub fn displacement_mvp(&self) -> Result<usize> {
        let outcome = self.outcome_mvp()?.outcome;
        let spot_of = outcome.inverse();
        Ok((1..=self.len())
            .map(|car| self.at(car).abs_diff(spot_of.at(car)))
            .sum())
    }

    /// All of `[n]^n` in lexicographic order.
    pub fn all(n: usize) -> AllPreferences {
        AllPreferences {
            n,
            next: if n == 0 { None } else { Some(vec![1; n]) },
        }
    }

    /// All parking functions of length `n`, lexicographically.
    pub fn parking_functions(n: usize) -> impl Iterator<Item = ParkingPreference> {
        Self::all(n).filter(|p| p.is_parking_function())
    }
}

/// Lexicographic iterator over `[n]^n`.
#[derive(Debug, Clone)]
pub struct AllPreferences {
    n: usize,
    next: Option<Vec<usize>>,
}

impl Iterator for AllPreferences {
    type Item = ParkingPreference;

    fn next(&mut self) -> Option<ParkingPreference> {
        let current = self.next.take()?;
        let mut succ = current.clone();
        let mut k = self.n;
        while k > 0 {
            if succ[k - 1] < self.n {
                succ[k - 1] += 1;
                self.next = Some(succ);
                break;
            }
            succ[k - 1] = 1;
            k -= 1;
        }
        Some(ParkingPreference { prefs: current })
    }
}

fn run_classical(prefs: &[usize]) -> Option<Vec<usize>> {
    let n = prefs.len();
    let mut occupant = vec![0usize; n + 1];
    for (idx, &want) in prefs.iter().enumerate() {
        let car = idx + 1;
        let spot = (want..=n).find(|&s| occupant[s] == 0)?;
        occupant[spot] = car;
    }
    Some(occupant[1..].to_vec())
}

fn run_mvp(prefs: &[usize], log: Option<&mut Vec<BumpEvent>>) -> Option<Vec<usize>> {
    let mut occupant = vec![0usize; prefs.len() + 1];
    if mvp_into(prefs, &mut occupant, log) {
        Some(occupant[1..].to_vec())
    } else {
        None
    }
}

/// Runs the MVP process writing occupants into `occupant[1..=n]`
/// (`occupant.len() == n + 1`). Returns false as soon as a car fails to park.
pub(crate) fn mvp_into(
    prefs: &[usize],
    occupant: &mut [usize],
    mut log: Option<&mut Vec<BumpEvent>>,
) -> bool {
    let n = prefs.len();
    debug_assert_eq!(occupant.len(), n + 1);
    occupant.iter_mut().for_each(|o| *o = 0);
    for (idx, &want) in prefs.iter().enumerate() {
        let car = idx + 1;
        let bumped = occupant[want];
        occupant[want] = car;
        if bumped != 0 {
            let Some(spot) = (want + 1..=n).find(|&s| occupant[s] == 0) else {
                return false;
            };
            occupant[spot] = bumped;
            if let Some(log) = log.as_deref_mut() {
                log.push(BumpEvent {
                    car: bumped,
                    by: car,
                    from_spot: want,
                    to_spot: spot,
                });
            }
        }
    }
    true
}

impl FromStr for ParkingPreference {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let prefs = parse_int_list(s).map_err(Error::InvalidPreference)?;
        ParkingPreference::new(prefs)
    }
}

/// Comma-separated entries, e.g. `3,1,1,2`.
impl fmt::Display for ParkingPreference {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&render_commas(&self.prefs))
    }
}
