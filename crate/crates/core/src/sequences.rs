//! Integer sequences that show up as fibre sizes and enumeration counts.

use num_traits::{PrimInt, Unsigned};

/// Motzkin numbers `M_0, ..., M_n` from
/// `M_k = M_{k-1} + Σ_{i=0}^{k-2} M_i M_{k-2-i}`.
pub fn motzkin_numbers<T: PrimInt + Unsigned>(n: usize) -> Vec<T> {
    let mut m: Vec<T> = Vec::with_capacity(n + 1);
    for k in 0..=n {
        if k == 0 {
            m.push(T::one());
            continue;
        }
        let mut next = m[k - 1];
        for i in 0..k.saturating_sub(1) {
            next = next + m[i] * m[k - 2 - i];
        }
        m.push(next);
    }
    m
}

pub fn motzkin<T: PrimInt + Unsigned>(n: usize) -> T {
    motzkin_numbers::<T>(n)[n]
}

/// Bell numbers `B_0, ..., B_n` from the Bell triangle.
pub fn bell_numbers<T: PrimInt + Unsigned>(n: usize) -> Vec<T> {
    let mut out = vec![T::one()];
    let mut row = vec![T::one()];
    for _ in 0..n {
        let mut next = Vec::with_capacity(row.len() + 1);
        next.push(*row.last().unwrap());
        for &x in &row {
            let last = *next.last().unwrap();
            next.push(last + x);
        }
        out.push(next[0]);
        row = next;
    }
    out
}

pub fn bell<T: PrimInt + Unsigned>(n: usize) -> T {
    bell_numbers::<T>(n)[n]
}

/// `m + 1 + ⌊(m + 1)² / 2⌋`, the fibre size of the bipartite permutation
/// with two right vertices.
pub fn bipartite_two_fibre<T: PrimInt + Unsigned>(m: T) -> T {
    let two = T::one() + T::one();
    let s = m + T::one();
    s + s * s / two
}

pub fn factorial<T: PrimInt + Unsigned>(n: usize) -> T {
    (1..=n).fold(T::one(), |acc, k| {
        acc * T::from(k).expect("factorial argument fits")
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn motzkin_values() {
        assert_eq!(
            motzkin_numbers::<u64>(10),
            vec![1, 1, 2, 4, 9, 21, 51, 127, 323, 835, 2188]
        );
        assert_eq!(motzkin::<u32>(11), 5798);
    }

    #[test]
    fn bell_values() {
        assert_eq!(
            bell_numbers::<u64>(9),
            vec![1, 1, 2, 5, 15, 52, 203, 877, 4140, 21147]
        );
    }

    #[test]
    fn bipartite_formula() {
        let got: Vec<u64> = (1..=7u64).map(bipartite_two_fibre).collect();
        assert_eq!(got, vec![4, 7, 12, 17, 24, 31, 40]);
        assert_eq!(bipartite_two_fibre(0u8), 1);
    }

    #[test]
    fn factorial_values() {
        assert_eq!(factorial::<u64>(0), 1);
        assert_eq!(factorial::<u64>(9), 362880);
    }
}
