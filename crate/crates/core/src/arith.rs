//! Integer number theory used by the field and quaternion layers: square
//! classes, factorization, modular square roots and sums of two squares.

use std::collections::HashMap;
use std::sync::{OnceLock, RwLock};

use num::bigint::Sign;
use num::{BigInt, BigRational, Integer, One, Signed, ToPrimitive, Zero};

/// Prime factorization as `(prime, exponent)` pairs in increasing order.
pub type Factorization = Vec<(BigInt, u32)>;

fn factor_cache() -> &'static RwLock<HashMap<BigInt, Factorization>> {
    static CACHE: OnceLock<RwLock<HashMap<BigInt, Factorization>>> = OnceLock::new();
    CACHE.get_or_init(|| RwLock::new(HashMap::new()))
}

/// Exact integer square root, if `n` is a perfect square.
pub fn exact_sqrt(n: &BigInt) -> Option<BigInt> {
    if n.is_negative() {
        return None;
    }
    let r = n.sqrt();
    if &r * &r == *n {
        Some(r)
    } else {
        None
    }
}

pub fn is_square_int(n: &BigInt) -> bool {
    exact_sqrt(n).is_some()
}

/// True iff `q` is a square in Q (zero counts as a square).
pub fn is_square_rational(q: &BigRational) -> bool {
    q.is_zero() || (is_square_int(q.numer()) && is_square_int(q.denom()))
}

const SMALL_PRIMES: [u32; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];

fn pow_mod(base: &BigInt, exp: &BigInt, m: &BigInt) -> BigInt {
    base.modpow(exp, m)
}

/// Miller-Rabin; deterministic for n < 3.3e24 with these bases, probabilistic
/// (but with the same fixed bases) above.
pub fn is_prime(n: &BigInt) -> bool {
    let two = BigInt::from(2);
    if *n < two {
        return false;
    }
    for p in SMALL_PRIMES {
        let p = BigInt::from(p);
        if *n == p {
            return true;
        }
        if (n % &p).is_zero() {
            return false;
        }
    }
    let n_minus_1: BigInt = n - 1u32;
    let mut d = n_minus_1.clone();
    let mut s = 0u32;
    while d.is_even() {
        d >>= 1;
        s += 1;
    }
    'witness: for a in SMALL_PRIMES {
        let a = BigInt::from(a);
        let mut x = pow_mod(&a, &d, n);
        if x.is_one() || x == n_minus_1 {
            continue;
        }
        for _ in 1..s {
            x = (&x * &x) % n;
            if x == n_minus_1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

fn pollard_brent(n: &BigInt) -> BigInt {
    // n is odd, composite, and not a prime power of a small prime.
    let mut c = BigInt::one();
    loop {
        let f = |x: &BigInt| (x * x + &c) % n;
        let mut y = BigInt::from(2);
        let mut r: u64 = 1;
        let mut q = BigInt::one();
        let m: u64 = 64;
        let mut g = BigInt::one();
        let mut x = y.clone();
        let mut ys = y.clone();
        while g.is_one() {
            x = y.clone();
            for _ in 0..r {
                y = f(&y);
            }
            let mut k = 0;
            while k < r && g.is_one() {
                ys = y.clone();
                for _ in 0..m.min(r - k) {
                    y = f(&y);
                    q = (q * (&x - &y).abs()) % n;
                }
                g = q.gcd(n);
                k += m;
            }
            r *= 2;
        }
        if g == *n {
            loop {
                ys = f(&ys);
                g = (&x - &ys).abs().gcd(n);
                if !g.is_one() {
                    break;
                }
            }
        }
        if g != *n {
            return g;
        }
        c += 1;
    }
}

fn factor_into(n: BigInt, out: &mut Vec<BigInt>) {
    if n.is_one() {
        return;
    }
    if is_prime(&n) {
        out.push(n);
        return;
    }
    if let Some(r) = exact_sqrt(&n) {
        factor_into(r.clone(), out);
        factor_into(r, out);
        return;
    }
    let g = pollard_brent(&n);
    let h = &n / &g;
    factor_into(g, out);
    factor_into(h, out);
}

/// Factorization of |n| (n ≠ 0). Results are memoized in a process-wide table.
pub fn factorize(n: &BigInt) -> Factorization {
    assert!(!n.is_zero(), "cannot factor zero");
    let n = n.abs();
    if let Some(f) = factor_cache().read().expect("factor cache").get(&n) {
        return f.clone();
    }
    let mut rest = n.clone();
    let mut primes: Vec<BigInt> = Vec::new();
    let mut p: u64 = 2;
    while p < 10_000 {
        let bp = BigInt::from(p);
        if &bp * &bp > rest {
            break;
        }
        while (&rest % &bp).is_zero() {
            rest /= &bp;
            primes.push(bp.clone());
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if !rest.is_one() {
        factor_into(rest, &mut primes);
    }
    primes.sort();
    let mut out: Factorization = Vec::new();
    for q in primes {
        match out.last_mut() {
            Some((last, e)) if *last == q => *e += 1,
            _ => out.push((q, 1)),
        }
    }
    factor_cache()
        .write()
        .expect("factor cache")
        .insert(n, out.clone());
    out
}

/// Writes a nonzero integer as `sign * core * root^2` with `core` square-free
/// and positive; returns `(sign * core, root)`.
pub fn squarefree_decompose(n: &BigInt) -> (BigInt, BigInt) {
    let mut core = BigInt::one();
    let mut root = BigInt::one();
    for (p, e) in factorize(n) {
        if e % 2 == 1 {
            core *= &p;
        }
        root *= num::pow(p, (e / 2) as usize);
    }
    if n.is_negative() {
        core = -core;
    }
    (core, root)
}

pub fn squarefree_part(n: &BigInt) -> BigInt {
    squarefree_decompose(n).0
}

/// Square-free integer in the square class of a nonzero rational.
pub fn squarefree_of_rational(q: &BigRational) -> BigInt {
    squarefree_part(&(q.numer() * q.denom()))
}

/// p-adic valuation of a nonzero integer.
pub fn valuation(n: &BigInt, p: &BigInt) -> u32 {
    let mut n = n.clone();
    let mut v = 0;
    while (&n % p).is_zero() {
        n /= p;
        v += 1;
    }
    v
}

/// Legendre symbol (a/p) for an odd prime p; returns 0, 1 or -1.
pub fn legendre(a: &BigInt, p: &BigInt) -> i8 {
    let a = a.mod_floor(p);
    if a.is_zero() {
        return 0;
    }
    let e = (p - 1u32) >> 1;
    if pow_mod(&a, &e, p).is_one() {
        1
    } else {
        -1
    }
}

/// Square root of `a` modulo an odd prime `p` (Tonelli-Shanks), if one exists.
pub fn sqrt_mod_prime(a: &BigInt, p: &BigInt) -> Option<BigInt> {
    let a = a.mod_floor(p);
    if a.is_zero() {
        return Some(BigInt::zero());
    }
    if *p == BigInt::from(2) {
        return Some(a);
    }
    if legendre(&a, p) != 1 {
        return None;
    }
    let one = BigInt::one();
    let mut q = p - 1u32;
    let mut s = 0u32;
    while q.is_even() {
        q >>= 1;
        s += 1;
    }
    let mut z = BigInt::from(2);
    while legendre(&z, p) != -1 {
        z += 1;
    }
    let mut m = s;
    let mut c = pow_mod(&z, &q, p);
    let mut t = pow_mod(&a, &q, p);
    let mut r = pow_mod(&a, &((&q + &one) >> 1), p);
    while !t.is_one() {
        let mut i = 0u32;
        let mut tt = t.clone();
        while !tt.is_one() {
            tt = (&tt * &tt) % p;
            i += 1;
        }
        let b = pow_mod(&c, &(BigInt::one() << (m - i - 1) as usize), p);
        m = i;
        c = (&b * &b) % p;
        t = (t * &c) % p;
        r = (r * b) % p;
    }
    Some(r)
}

/// Square root of `a` modulo a square-free modulus `m > 0`, combined by CRT.
/// Result is the representative in `(-m/2, m/2]`.
pub fn sqrt_mod_squarefree(a: &BigInt, m: &BigInt) -> Option<BigInt> {
    if m.is_one() {
        return Some(BigInt::zero());
    }
    let mut x = BigInt::zero();
    let mut modulus = BigInt::one();
    for (p, e) in factorize(m) {
        debug_assert_eq!(e, 1);
        let r = sqrt_mod_prime(a, &p)?;
        // x ≡ current mod modulus, x ≡ r mod p
        let inv = mod_inverse(&modulus, &p).expect("coprime moduli");
        let k = ((r - &x) * inv).mod_floor(&p);
        x += &modulus * k;
        modulus *= &p;
    }
    let x = x.mod_floor(m);
    let half = m >> 1;
    Some(if x > half { x - m } else { x })
}

pub fn mod_inverse(a: &BigInt, m: &BigInt) -> Option<BigInt> {
    let e = a.mod_floor(m).extended_gcd(m);
    if e.gcd.is_one() {
        Some(e.x.mod_floor(m))
    } else {
        None
    }
}

/// Cornacchia for x^2 + y^2 = p, p prime with p = 2 or p ≡ 1 (mod 4).
fn two_squares_prime(p: &BigInt) -> Option<(BigInt, BigInt)> {
    if *p == BigInt::from(2) {
        return Some((BigInt::one(), BigInt::one()));
    }
    if (p % 4u32) != BigInt::from(1) {
        return None;
    }
    let mut r0 = p.clone();
    let mut r1 = sqrt_mod_prime(&BigInt::from(-1), p)?;
    if &r1 * 2u32 > *p {
        r1 = p - r1;
    }
    let bound = p.sqrt();
    while r1 > bound {
        let r2 = &r0 % &r1;
        r0 = r1;
        r1 = r2;
    }
    let rest = p - &r1 * &r1;
    let y = exact_sqrt(&rest)?;
    Some((r1, y))
}

/// Writes a non-negative integer as a sum of two squares via Gaussian integer
/// factorization, if possible.
pub fn two_squares(n: &BigInt) -> Option<(BigInt, BigInt)> {
    if n.is_negative() {
        return None;
    }
    if n.is_zero() {
        return Some((BigInt::zero(), BigInt::zero()));
    }
    // (a + bi) accumulated
    let mut a = BigInt::one();
    let mut b = BigInt::zero();
    for (p, e) in factorize(n) {
        if (&p % 4u32) == BigInt::from(3) {
            if e % 2 == 1 {
                return None;
            }
            let s = num::pow(p.clone(), (e / 2) as usize);
            a *= &s;
            b *= &s;
            continue;
        }
        let (x, y) = two_squares_prime(&p)?;
        for _ in 0..e {
            let na = &a * &x - &b * &y;
            let nb = &a * &y + &b * &x;
            a = na;
            b = nb;
        }
    }
    Some((a.abs(), b.abs()))
}

/// Small helper for tests and diagnostics.
pub fn to_i64(n: &BigInt) -> Option<i64> {
    n.to_i64()
}

pub fn sign_of(n: &BigInt) -> i8 {
    match n.sign() {
        Sign::Minus => -1,
        Sign::NoSign => 0,
        Sign::Plus => 1,
    }
}
