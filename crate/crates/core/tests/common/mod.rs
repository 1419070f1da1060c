//! Independent oracles shared by the integration tests.

#![allow(dead_code)]

use bialg_core::{rat, MatK, Rational, SpecRef, TowerElem};
use num::{BigInt, Integer, Signed, ToPrimitive, Zero};
use rand::Rng;

/// Reduces `q` to an integer of the same square class with `v_p ≤ 1`.
fn reduce_at(q: &Rational, p: i64) -> i64 {
    let mut m: BigInt = q.numer() * q.denom();
    let p2 = BigInt::from(p * p);
    while (&m % &p2).is_zero() {
        m /= &p2;
    }
    m.to_i64().expect("small test input")
}

/// `z² = a x² + b y²` has a primitive solution modulo `p^k`, by exhaustive
/// search with one unit coordinate normalised to 1.
pub fn locally_solvable_brute(a: &Rational, b: &Rational, p: i64, k: u32) -> bool {
    let m = p.pow(k);
    let a = reduce_at(a, p).rem_euclid(m);
    let b = reduce_at(b, p).rem_euclid(m);
    let mut square = vec![false; m as usize];
    for z in 0..m {
        square[(z * z % m) as usize] = true;
    }
    let unit = |x: i64| x.gcd(&p) == 1;
    let inv = |x: i64| (1..m).find(|y| x * y % m == 1).expect("unit");
    // x = 1: z² = a + b y²
    if (0..m).any(|y| square[((a + b * (y * y % m)) % m) as usize]) {
        return true;
    }
    // y = 1: z² = a x² + b
    if (0..m).any(|x| square[((a * (x * x % m) + b) % m) as usize]) {
        return true;
    }
    // z = 1: a x² + b y² = 1
    if unit(a) {
        let ia = inv(a);
        return (0..m).any(|y| square[(((1 - b * (y * y % m)).rem_euclid(m)) * ia % m) as usize]);
    }
    if unit(b) {
        let ib = inv(b);
        return (0..m).any(|x| square[(((1 - a * (x * x % m)).rem_euclid(m)) * ib % m) as usize]);
    }
    false
}

/// Real solvability: fails only when both coefficients are negative.
pub fn real_solvable(a: &Rational, b: &Rational) -> bool {
    !(a.is_negative() && b.is_negative())
}

pub fn random_rational<R: Rng>(rng: &mut R, num: i64, den: i64) -> Rational {
    loop {
        let n = rng.gen_range(-num..=num);
        if n != 0 {
            return Rational::new(n.into(), rng.gen_range(1..=den).into());
        }
    }
}

/// `a + b√d` with integer `a, b` of height at most `h`.
pub fn random_quadratic<R: Rng>(rng: &mut R, k: &SpecRef, h: i64) -> TowerElem {
    TowerElem::from_pair(k, 0, rat(rng.gen_range(-h..=h)), rat(rng.gen_range(-h..=h)))
}

pub fn random_matrix<R: Rng>(rng: &mut R, k: &SpecRef, n: usize, h: i64) -> MatK {
    let rows = (0..n)
        .map(|_| (0..n).map(|_| random_quadratic(rng, k, h)).collect())
        .collect();
    MatK::from_rows(k, rows).unwrap()
}

pub fn random_invertible<R: Rng>(rng: &mut R, k: &SpecRef, n: usize, h: i64) -> MatK {
    loop {
        let m = random_matrix(rng, k, n, h);
        if !m.det().is_zero() {
            return m;
        }
    }
}

/// Conjugate transpose computed entrywise, without the library's `star`.
pub fn star_entrywise(m: &MatK) -> MatK {
    let n = m.n();
    let rows = (0..n)
        .map(|i| (0..n).map(|j| m.get(j, i).conj()).collect())
        .collect();
    MatK::from_rows(m.spec(), rows).unwrap()
}

/// Schoolbook product, independent of `MatK::mul`.
pub fn product(a: &MatK, b: &MatK) -> MatK {
    let n = a.n();
    let k = a.spec();
    let rows = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| (0..n).fold(TowerElem::zero(k), |s, l| &s + &(a.get(i, l) * b.get(l, j))))
                .collect()
        })
        .collect();
    MatK::from_rows(k, rows).unwrap()
}

/// `star(X)·X`, computed by the oracle routines above.
pub fn gram(x: &MatK) -> MatK {
    product(&star_entrywise(x), x)
}

/// Norm membership in `Q(√d)` by bounded search over `(p + q√d)/r`, for
/// confirming positive answers.
pub fn norm_by_search(c: &Rational, d: i64, h: i64) -> bool {
    for r in 1..=h {
        for p in -h..=h {
            for q in -h..=h {
                let n = Rational::new((p * p - d * q * q).into(), (r * r).into());
                if &n == c {
                    return true;
                }
            }
        }
    }
    false
}
