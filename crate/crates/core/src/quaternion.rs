//! Quaternion algebras over Q and Hilbert symbols.

use std::collections::BTreeSet;
use std::fmt;

use num::{BigInt, Integer, One, Signed, Zero};
use thiserror::Error;

use crate::arith;
use crate::field::{rational_to_string, Rational};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum QuatError {
    #[error("quaternion parameters must be nonzero")]
    ZeroParameter,
    #[error("elements belong to different algebras")]
    AlgebraMismatch,
}

/// A place of Q.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Place {
    Prime(BigInt),
    Infinity,
}

impl fmt::Display for Place {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Place::Prime(p) => write!(f, "{p}"),
            Place::Infinity => f.write_str("inf"),
        }
    }
}

impl Place {
    pub fn prime(p: i64) -> Self {
        Place::Prime(BigInt::from(p))
    }

    /// Accepts a prime in decimal or one of `inf`, `infinity`, `oo`.
    pub fn parse(s: &str) -> Option<Self> {
        let s = s.trim();
        match s.to_ascii_lowercase().as_str() {
            "inf" | "infinity" | "oo" | "∞" => Some(Place::Infinity),
            _ => {
                let p: BigInt = s.parse().ok()?;
                if p > BigInt::one() && arith::is_prime(&p) {
                    Some(Place::Prime(p))
                } else {
                    None
                }
            }
        }
    }
}

/// Integer in the same square class as a nonzero rational.
fn square_class_int(q: &Rational) -> BigInt {
    q.numer() * q.denom()
}

fn odd_part_mod8(u: &BigInt) -> u8 {
    u.mod_floor(&BigInt::from(8)).try_into().expect("residue mod 8")
}

/// Hilbert symbol `(a, b)_v`: +1 iff `z² = a x² + b y²` has a nontrivial
/// solution over the completion of Q at `v`.
///
/// # Panics
/// If `a` or `b` is zero, or `v` is not a prime place.
pub fn hilbert_symbol(a: &Rational, b: &Rational, v: &Place) -> i8 {
    assert!(!a.is_zero() && !b.is_zero(), "Hilbert symbol of zero");
    let a = square_class_int(a);
    let b = square_class_int(b);
    match v {
        Place::Infinity => {
            if a.is_negative() && b.is_negative() {
                -1
            } else {
                1
            }
        }
        Place::Prime(p) => {
            let two = BigInt::from(2);
            let alpha = arith::valuation(&a, p);
            let beta = arith::valuation(&b, p);
            let u = &a / num::pow(p.clone(), alpha as usize);
            let w = &b / num::pow(p.clone(), beta as usize);
            if *p == two {
                let eps = |x: &BigInt| -> u32 { u32::from(odd_part_mod8(x) % 4 == 3) };
                let omega = |x: &BigInt| -> u32 { u32::from(matches!(odd_part_mod8(x), 3 | 5)) };
                let e = eps(&u) * eps(&w) + alpha * omega(&w) + beta * omega(&u);
                if e.is_multiple_of(2) {
                    1
                } else {
                    -1
                }
            } else {
                assert!(arith::is_prime(p), "place {p} is not prime");
                let eps_p = ((p - 1u32) / 2u32).is_odd();
                let mut s: i8 = if eps_p && alpha % 2 == 1 && beta % 2 == 1 { -1 } else { 1 };
                if beta % 2 == 1 {
                    s *= arith::legendre(&u, p);
                }
                if alpha % 2 == 1 {
                    s *= arith::legendre(&w, p);
                }
                s
            }
        }
    }
}

/// Places where symbols among `values` can be nontrivial: 2, every prime
/// dividing a numerator or denominator, and infinity. Sorted, primes first.
pub fn relevant_places(values: &[Rational]) -> Vec<Place> {
    let mut primes: BTreeSet<BigInt> = BTreeSet::new();
    primes.insert(BigInt::from(2));
    for q in values {
        for n in [q.numer(), q.denom()] {
            if n.is_zero() {
                continue;
            }
            for (p, _) in arith::factorize(n) {
                primes.insert(p);
            }
        }
    }
    let mut out: Vec<Place> = primes.into_iter().map(Place::Prime).collect();
    out.push(Place::Infinity);
    out
}

/// True iff `(a, b)_v = 1` everywhere.
pub fn hilbert_symbols_trivial(a: &Rational, b: &Rational) -> bool {
    relevant_places(&[a.clone(), b.clone()])
        .iter()
        .all(|v| hilbert_symbol(a, b, v) == 1)
}

/// The quaternion algebra `(a, b)`: `i² = a`, `j² = b`, `ji = -ij`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct QuatAlg {
    a: Rational,
    b: Rational,
}

impl QuatAlg {
    pub fn new(a: Rational, b: Rational) -> Result<Self, QuatError> {
        if a.is_zero() || b.is_zero() {
            return Err(QuatError::ZeroParameter);
        }
        Ok(QuatAlg { a, b })
    }

    pub fn a(&self) -> &Rational {
        &self.a
    }

    pub fn b(&self) -> &Rational {
        &self.b
    }

    pub fn elem(&self, x: Rational, y: Rational, z: Rational, w: Rational) -> QuatElem {
        QuatElem {
            alg: self.clone(),
            c: [x, y, z, w],
        }
    }

    pub fn basis(&self, k: usize) -> QuatElem {
        let mut c = [Rational::zero(), Rational::zero(), Rational::zero(), Rational::zero()];
        c[k] = Rational::one();
        QuatElem { alg: self.clone(), c }
    }

    /// `(a, b)_v` at the given place.
    pub fn symbol(&self, v: &Place) -> i8 {
        hilbert_symbol(&self.a, &self.b, v)
    }

    /// Places where the algebra ramifies (symbol −1). Its Brauer class is
    /// determined by this set.
    pub fn ramified_places(&self) -> Vec<Place> {
        relevant_places(&[self.a.clone(), self.b.clone()])
            .into_iter()
            .filter(|v| self.symbol(v) == -1)
            .collect()
    }
}

impl fmt::Display for QuatAlg {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", rational_to_string(&self.a), rational_to_string(&self.b))
    }
}

/// `x + y i + z j + w ij`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuatElem {
    alg: QuatAlg,
    c: [Rational; 4],
}

impl QuatElem {
    pub fn coeffs(&self) -> &[Rational; 4] {
        &self.c
    }

    pub fn algebra(&self) -> &QuatAlg {
        &self.alg
    }
}

pub fn quat_mul(p: &QuatElem, q: &QuatElem) -> Result<QuatElem, QuatError> {
    if p.alg != q.alg {
        return Err(QuatError::AlgebraMismatch);
    }
    let (a, b) = (&p.alg.a, &p.alg.b);
    let ab = a * b;
    let [x1, y1, z1, w1] = &p.c;
    let [x2, y2, z2, w2] = &q.c;
    let x = x1 * x2 + a * y1 * y2 + b * z1 * z2 - &ab * w1 * w2;
    let y = x1 * y2 + y1 * x2 - b * z1 * w2 + b * w1 * z2;
    let z = x1 * z2 + z1 * x2 + a * y1 * w2 - a * w1 * y2;
    let w = x1 * w2 + w1 * x2 + y1 * z2 - z1 * y2;
    Ok(QuatElem {
        alg: p.alg.clone(),
        c: [x, y, z, w],
    })
}

/// Reduced norm `(x² − a y²) − b (z² − a w²)`.
pub fn quat_norm(q: &QuatElem) -> Rational {
    let (a, b) = (&q.alg.a, &q.alg.b);
    let [x, y, z, w] = &q.c;
    (x * x - a * y * y) - b * (z * z - a * w * w)
}

/// Split iff every local symbol is +1.
pub fn is_split(alg: &QuatAlg) -> bool {
    hilbert_symbols_trivial(&alg.a, &alg.b)
}

/// Isomorphic iff the local symbols agree at every place.
pub fn quat_iso(x: &QuatAlg, y: &QuatAlg) -> bool {
    relevant_places(&[x.a.clone(), x.b.clone(), y.a.clone(), y.b.clone()])
        .iter()
        .all(|v| x.symbol(v) == y.symbol(v))
}
