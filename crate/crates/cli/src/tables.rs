//! Builders for the fibre-size tables.

use std::time::Instant;

use mvp_fibres::fibre::{bounds, fibre_size, outcome_histogram};
use mvp_fibres::Permutation;
use thiserror::Error;

use crate::report::{Cell, ReportTable};

pub const BOUNDS_MAX_N: usize = 9;
pub const BIPARTITE_MAX: usize = 7;
pub const DEC_VS_SPLIT_MAX_N: usize = 11;
pub const CONJECTURE_MAX_N: usize = 7;

#[derive(Debug, Error, PartialEq, Eq)]
#[error("{what} = {got} exceeds the limit {limit}; pass --force to run anyway")]
pub struct GuardError {
    pub what: &'static str,
    pub got: usize,
    pub limit: usize,
}

pub fn guard(what: &'static str, got: usize, limit: usize, force: bool) -> Result<(), GuardError> {
    if got > limit && !force {
        Err(GuardError { what, got, limit })
    } else {
        Ok(())
    }
}

fn stamp(t: &mut ReportTable, started: Instant) {
    t.meta("pruned", true);
    t.meta("seconds", format!("{:.3}", started.elapsed().as_secs_f64()));
}

/// Subgraph count, P2-free count, fibre size and HS count of `dec(n)`.
pub fn bounds_table(max_n: usize, force: bool) -> Result<ReportTable, GuardError> {
    guard("max-n", max_n, BOUNDS_MAX_N, force)?;
    let started = Instant::now();
    let mut t = ReportTable::new("bounds", &["n", "one_subgraphs", "p2_free", "valid", "hs"]);
    for n in 1..=max_n {
        let b = bounds(&Permutation::dec(n).expect("n >= 1"));
        t.push(vec![
            n.into(),
            b.product_upper.into(),
            b.p2free_count.into(),
            b.fibre_size.into(),
            b.hs_count.into(),
        ]);
    }
    t.meta("max_n", max_n);
    stamp(&mut t, started);
    Ok(t)
}

/// `|Fib(bipart(m, n))|`, one row per `n` and one column per `m`.
pub fn bipartite_table(max_m: usize, max_n: usize, force: bool) -> Result<ReportTable, GuardError> {
    guard("max-m", max_m, BIPARTITE_MAX, force)?;
    guard("max-n", max_n, BIPARTITE_MAX, force)?;
    let started = Instant::now();
    let mut headers = vec!["n".to_string()];
    headers.extend((1..=max_m).map(|m| format!("m{m}")));
    let mut t = ReportTable::new("bipartite", &[]);
    t.headers = headers;
    for n in 1..=max_n {
        let mut row: Vec<Cell> = vec![n.into()];
        for m in 1..=max_m {
            row.push(fibre_size(&Permutation::bipart(m, n).expect("m, n >= 1")).into());
        }
        t.push(row);
    }
    t.meta("max_m", max_m);
    t.meta("max_n", max_n);
    stamp(&mut t, started);
    Ok(t)
}

/// `|Fib(dec(n))|` next to `|Fib(split_right(2, n - 2))|` for `n >= 3`.
pub fn dec_vs_split_table(max_n: usize, force: bool) -> Result<ReportTable, GuardError> {
    guard("max-n", max_n, DEC_VS_SPLIT_MAX_N, force)?;
    let started = Instant::now();
    let mut t = ReportTable::new("dec-vs-split", &["n", "dec", "split_right"]);
    for n in 3..=max_n {
        let dec = fibre_size(&Permutation::dec(n).expect("n >= 3"));
        let split = fibre_size(&Permutation::split_right(2, n - 2).expect("n >= 3"));
        t.push(vec![n.into(), dec.into(), split.into()]);
    }
    t.meta("max_n", max_n);
    stamp(&mut t, started);
    Ok(t)
}

/// Largest fibre over all of `S_n` and the permutations attaining it.
pub fn conjecture_table(max_n: usize, force: bool) -> Result<ReportTable, GuardError> {
    guard("max-n", max_n, CONJECTURE_MAX_N, force)?;
    let started = Instant::now();
    let mut t = ReportTable::new(
        "conjecture",
        &[
            "n",
            "max_fibre",
            "argmax_count",
            "contains_split_right",
            "argmax",
        ],
    );
    for n in 3..=max_n {
        let hist = outcome_histogram(n);
        let best = *hist.values().max().expect("non-empty");
        let mut argmax: Vec<&Permutation> = hist
            .iter()
            .filter(|(_, &v)| v == best)
            .map(|(p, _)| p)
            .collect();
        argmax.sort();
        let split = Permutation::split_right(2, n - 2).expect("n >= 3");
        let names: Vec<String> = argmax.iter().map(|p| p.to_string()).collect();
        t.push(vec![
            n.into(),
            best.into(),
            argmax.len().into(),
            argmax.contains(&&split).into(),
            names.join(" ").into(),
        ]);
    }
    t.meta("max_n", max_n);
    t.meta("pruned", false);
    t.meta("seconds", format!("{:.3}", started.elapsed().as_secs_f64()));
    Ok(t)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_tables() {
        let t = bounds_table(5, false).unwrap();
        assert_eq!(
            t.rows[4],
            vec![
                5usize.into(),
                120u64.into(),
                52u64.into(),
                21u64.into(),
                16u64.into()
            ]
        );
        let t = bipartite_table(3, 2, false).unwrap();
        assert_eq!(t.headers, vec!["n", "m1", "m2", "m3"]);
        assert_eq!(
            t.rows[1],
            vec![2usize.into(), 4u64.into(), 7u64.into(), 12u64.into()]
        );
        let t = dec_vs_split_table(6, false).unwrap();
        assert_eq!(
            t.rows.last().unwrap(),
            &vec![6usize.into(), 51u64.into(), 51u64.into()]
        );
    }

    #[test]
    fn guards() {
        assert!(bounds_table(10, false).is_err());
        assert!(bipartite_table(8, 1, false).is_err());
        assert!(dec_vs_split_table(12, false).is_err());
        assert!(conjecture_table(8, false).is_err());
        assert!(guard("x", 10, 9, true).is_ok());
    }
}
