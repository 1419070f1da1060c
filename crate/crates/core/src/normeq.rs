//! Norm equations over quadratic fields: explicit norm witnesses via
//! Legendre descent, and the two-norm stage equation `N(u) + c·N(v) = e`.

use std::time::{Duration, Instant};

use num::{BigInt, Integer, One, Signed, Zero};

use crate::arith;
use crate::field::{is_norm_from_quadratic, FieldError, Rational, SpecRef, TowerElem, TowerSpec, Verdict};
use crate::quaternion::{hilbert_symbols_trivial, Place};

/// Limits for searches that are not covered by a decision procedure.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Budget {
    /// Largest numerator/denominator magnitude tried.
    pub max_height: u32,
    pub max_time: Duration,
}

impl Default for Budget {
    fn default() -> Self {
        Budget {
            max_height: 64,
            max_time: Duration::from_secs(10),
        }
    }
}

/// Nontrivial integer solution of `x² = a y² + b z²` for square-free nonzero
/// `a`, `b`, or `None` when the conic has no rational point.
pub fn legendre_solve(a: &BigInt, b: &BigInt) -> Option<(BigInt, BigInt, BigInt)> {
    let (qa, qb) = (Rational::from_integer(a.clone()), Rational::from_integer(b.clone()));
    if !hilbert_symbols_trivial(&qa, &qb) {
        return None;
    }
    let sol = descend(a.clone(), b.clone(), 0)?;
    debug_assert_eq!(&sol.0 * &sol.0, a * &sol.1 * &sol.1 + b * &sol.2 * &sol.2);
    Some(sol)
}

fn descend(a: BigInt, b: BigInt, depth: u32) -> Option<(BigInt, BigInt, BigInt)> {
    let one = BigInt::one();
    let zero = BigInt::zero();
    if depth > 4096 {
        return None;
    }
    if a.is_one() {
        return Some((one.clone(), one, zero));
    }
    if b.is_one() {
        return Some((one.clone(), zero, one));
    }
    if a == -&b {
        return Some((zero, one.clone(), one));
    }
    if a.abs() > b.abs() {
        let (x, y, z) = descend(b, a, depth + 1)?;
        return Some((x, z, y));
    }
    let m = b.abs();
    if m.is_one() {
        // b = -1 and |a| <= 1 with a = -1: x² + y² + z² = 0
        return None;
    }
    let t = arith::sqrt_mod_squarefree(&a, &m)?;
    let k = (&t * &t - &a) / &b;
    if k.is_zero() {
        return None;
    }
    let (k1, root) = arith::squarefree_decompose(&k);
    let (x, y, z) = descend(a.clone(), k1.clone(), depth + 1)?;
    // N(t + √a)·N(x + y√a) = b·(k1·root·z)²
    let nx = &t * &x + &a * &y;
    let ny = &x + &t * &y;
    let nz = k1 * root * z;
    let g = nx.gcd(&ny).gcd(&nz);
    if g.is_zero() {
        return None;
    }
    Some((nx / &g, ny / &g, nz / g))
}

/// `x + y√d` in `K = Q(√d)` with norm `c`, if `c ∈ N(K*)`.
pub fn norm_witness(c: &Rational, k: &SpecRef) -> Option<TowerElem> {
    let i = 0;
    let d0 = k.generators().get(i)?.clone();
    if c.is_zero() {
        return Some(TowerElem::zero(k));
    }
    let m = c.numer() * c.denom();
    let cd = Rational::from_integer(c.denom().clone());
    let (m0, s) = arith::squarefree_decompose(&m);
    let s = Rational::from_integer(s);
    if d0 == BigInt::from(-1) {
        if let Some((x, y)) = arith::two_squares(&m) {
            let x = Rational::from_integer(x) / &cd;
            let y = Rational::from_integer(y) / &cd;
            return Some(TowerElem::from_pair(k, i, x, y));
        }
        return None;
    }
    let (x, y, z) = legendre_solve(&d0, &m0)?;
    if z.is_zero() {
        return None;
    }
    let scale = &s / (Rational::from_integer(z) * &cd);
    let u = TowerElem::from_pair(
        k,
        i,
        Rational::from_integer(x) * &scale,
        Rational::from_integer(y) * &scale,
    );
    debug_assert_eq!(u.norm().as_rational().as_ref(), Some(c));
    Some(u)
}

/// Outcome of [`solve_norm_equation`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum NormSolution {
    Solved { u: TowerElem, v: TowerElem },
    /// No solution exists; the place is where the local test fails.
    Obstructed(Place),
    Undecided,
}

impl NormSolution {
    pub fn verdict(&self) -> Verdict {
        match self {
            NormSolution::Solved { .. } => Verdict::True,
            NormSolution::Obstructed(_) => Verdict::False,
            NormSolution::Undecided => Verdict::Undecided,
        }
    }
}

/// Solves `N(u) + c·N(v) = e` over `K = Q(√d)`.
///
/// The equation asks whether `e` is represented by `⟨1, −d, c, −cd⟩`. Adding
/// `⟨−e⟩` gives a five-dimensional form, isotropic at every prime, so the
/// only obstruction is at the real place: `d < 0`, `c > 0`, `e < 0`.
/// Witnesses come from the `v = 0` and `u = 0` shortcuts when `e` or `e/c`
/// is a norm, then from a search over `v = (p + q√d)/r` of growing height
/// until `e − c·N(v)` is a norm.
pub fn solve_norm_equation(c: &Rational, e: &Rational, d: &Rational, budget: &Budget) -> Result<NormSolution, FieldError> {
    let k = TowerSpec::quadratic(d)?;
    solve_norm_equation_in(c, e, &k, budget)
}

/// As [`solve_norm_equation`], with the quadratic field given by its tower.
/// The first generator of `k` is taken as `√d`.
pub fn solve_norm_equation_in(c: &Rational, e: &Rational, k: &SpecRef, budget: &Budget) -> Result<NormSolution, FieldError> {
    if c.is_zero() || e.is_zero() {
        return Err(FieldError::NonzeroRequired);
    }
    let d0 = Rational::from_integer(k.generators().first().ok_or(FieldError::SpecMismatch("need √d".into()))?.clone());
    if d0.is_negative() && c.is_positive() && e.is_negative() {
        return Ok(NormSolution::Obstructed(Place::Infinity));
    }
    let start = Instant::now();
    if is_norm_from_quadratic(e, &d0)?.is_true() {
        if let Some(u) = norm_witness(e, k) {
            return Ok(checked(u, TowerElem::zero(k), c, e));
        }
    }
    let ec = e / c;
    if is_norm_from_quadratic(&ec, &d0)?.is_true() {
        if let Some(v) = norm_witness(&ec, k) {
            return Ok(checked(TowerElem::zero(k), v, c, e));
        }
    }
    for h in 1..=budget.max_height as i64 {
        for (p, q, r) in height_shell(h) {
            if start.elapsed() > budget.max_time {
                return Ok(NormSolution::Undecided);
            }
            let v = TowerElem::from_pair(k, 0, Rational::new(p.into(), r.into()), Rational::new(q.into(), r.into()));
            let nv = v.norm().as_rational().expect("norm is rational");
            let t = e - c * &nv;
            if t.is_zero() {
                return Ok(checked(TowerElem::zero(k), v, c, e));
            }
            if hilbert_symbols_trivial(&t, &d0) {
                if let Some(u) = norm_witness(&t, k) {
                    return Ok(checked(u, v, c, e));
                }
            }
        }
    }
    Ok(NormSolution::Undecided)
}

fn checked(u: TowerElem, v: TowerElem, c: &Rational, e: &Rational) -> NormSolution {
    let lhs = u.norm().as_rational().expect("rational norm") + c * v.norm().as_rational().expect("rational norm");
    assert_eq!(&lhs, e, "norm equation witness failed re-verification");
    NormSolution::Solved { u, v }
}

/// Triples `(p, q, r)` with `r ≥ 1`, `(p, q) ≠ 0` and `max(|p|, |q|, r) = h`,
/// in a fixed order.
fn height_shell(h: i64) -> impl Iterator<Item = (i64, i64, i64)> {
    // 0, 1, -1, 2, -2, ...
    let signed = move || (0..=2 * h).map(|k| if k % 2 == 1 { (k + 1) / 2 } else { -(k / 2) });
    (1..=h).flat_map(move |r| {
        signed().flat_map(move |p| {
            signed().filter_map(move |q| {
                let top = p.abs().max(q.abs()).max(r);
                if top != h || (p == 0 && q == 0) || num::integer::gcd(num::integer::gcd(p, q), r) != 1 {
                    None
                } else {
                    Some((p, q, r))
                }
            })
        })
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{rat, ratio};

    fn solved(s: NormSolution) -> (TowerElem, TowerElem) {
        match s {
            NormSolution::Solved { u, v } => (u, v),
            other => panic!("expected a witness, got {other:?}"),
        }
    }

    #[test]
    fn legendre_small_cases() {
        for (a, b) in [(2, 7), (-1, 2), (5, -1), (3, 13), (-7, 11), (6, 19), (-2, -1), (1, 5), (-3, 3), (5, 11)] {
            let (a, b) = (BigInt::from(a), BigInt::from(b));
            match legendre_solve(&a, &b) {
                Some((x, y, z)) => {
                    assert!(!(x.is_zero() && y.is_zero() && z.is_zero()));
                    assert_eq!(&x * &x, &a * &y * &y + &b * &z * &z);
                }
                None => assert!(!hilbert_symbols_trivial(
                    &Rational::from_integer(a),
                    &Rational::from_integer(b)
                )),
            }
        }
    }

    #[test]
    fn legendre_unsolvable() {
        assert!(legendre_solve(&BigInt::from(-1), &BigInt::from(-1)).is_none());
        assert!(legendre_solve(&BigInt::from(2), &BigInt::from(5)).is_none());
    }

    #[test]
    fn witnesses_have_the_right_norm() {
        for d in [-1i64, 5, 2, -3, 7, 13] {
            let k = TowerSpec::quadratic(&rat(d)).unwrap();
            for c in [rat(-1), rat(2), rat(5), ratio(13, 4), rat(-4), ratio(7, 3), rat(10)] {
                let member = is_norm_from_quadratic(&c, &rat(d)).unwrap().is_true();
                match norm_witness(&c, &k) {
                    Some(u) => {
                        assert!(member);
                        assert_eq!(u.norm(), TowerElem::from_rational(&k, c.clone()));
                    }
                    None => assert!(!member, "missing witness for {c} in Q(√{d})"),
                }
            }
        }
    }

    #[test]
    fn stage_equation_examples() {
        let b = Budget::default();
        let (u, v) = solved(solve_norm_equation(&rat(2), &rat(2), &rat(5), &b).unwrap());
        let k = u.spec().clone();
        assert!(u.is_zero());
        assert_eq!(v.norm(), TowerElem::one(&k));

        let (u, v) = solved(solve_norm_equation(&rat(1), &rat(13), &rat(-1), &b).unwrap());
        assert!(v.is_zero());
        assert_eq!(u.norm(), TowerElem::from_int(u.spec(), 13));

        assert_eq!(
            solve_norm_equation(&rat(1), &rat(-1), &rat(-1), &b).unwrap(),
            NormSolution::Obstructed(Place::Infinity)
        );
    }

    #[test]
    fn stage_equation_needs_search() {
        // 2 and 2/1 are not norms from Q(√5), so both shortcuts fail
        let (u, v) = solved(solve_norm_equation(&rat(1), &rat(2), &rat(5), &Budget::default()).unwrap());
        let lhs = &u.norm() + &v.norm();
        assert_eq!(lhs, TowerElem::from_int(u.spec(), 2));
        assert!(!u.is_zero() && !v.is_zero());
    }

    #[test]
    fn zero_arguments_rejected() {
        assert_eq!(
            solve_norm_equation(&rat(0), &rat(2), &rat(5), &Budget::default()),
            Err(FieldError::NonzeroRequired)
        );
    }
}
