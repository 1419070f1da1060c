//! Fixtures shared by the benchmarks.

use bialg_core::{rat, Rational};

/// `(d, diagonal)` pairs for which a diagonal cocycle exists.
pub fn construction_cases() -> Vec<(i64, Vec<Rational>)> {
    [(-1, vec![2, 5, 13, 10]), (-1, vec![2, 2]), (5, vec![2, 2]), (5, vec![-1, -1]), (5, vec![2, 3, 6])]
        .into_iter()
        .map(|(d, ds)| (d, ds.into_iter().map(rat).collect()))
        .collect()
}

/// Small numerator/denominator pairs, deterministic.
pub fn symbol_pairs(count: usize) -> Vec<(Rational, Rational)> {
    (0..count as i64)
        .map(|i| {
            let a = Rational::new((7 * i % 61 - 30).max(1).into(), (i % 5 + 1).into());
            let b = Rational::new((-(11 * i % 53) - 1).into(), (i % 7 + 1).into());
            (a, b)
        })
        .collect()
}
