//! Exact arithmetic in multi-quadratic towers Q(√a1, …, √ak).
//!
//! An element is stored on the subset basis: the coefficient of bitmask `S`
//! multiplies `∏_{i∈S} √a_i`. Products reduce `√a_i · √a_i = a_i`, so
//! multiplication is a symmetric difference of masks with the repeated
//! generators factored out as an integer.
//!
//! One generator may be designated as the conjugated one; conjugation flips
//! its sign and fixes the others.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num::{BigInt, BigRational, One, Signed, Zero};
use thiserror::Error;

use crate::arith;
use crate::quaternion::{self, Place};

/// Scalars of the base field Q.
pub type Rational = BigRational;

pub fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn ratio(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FieldError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("tower mismatch: {0}")]
    SpecMismatch(String),
    #[error("argument must be nonzero")]
    NonzeroRequired,
    #[error("{0} is a square in Q, so it does not define a quadratic extension")]
    SquareDiscriminant(Rational),
}

/// Three-valued answer for decisions that may run out of budget or fall
/// outside the rational decision procedure.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Verdict {
    True,
    False,
    Undecided,
}

impl Verdict {
    pub fn from_bool(b: bool) -> Self {
        if b {
            Verdict::True
        } else {
            Verdict::False
        }
    }

    pub fn is_true(self) -> bool {
        self == Verdict::True
    }

    /// Conjunction in the strong Kleene sense.
    pub fn and(self, other: Verdict) -> Verdict {
        match (self, other) {
            (Verdict::False, _) | (_, Verdict::False) => Verdict::False,
            (Verdict::True, Verdict::True) => Verdict::True,
            _ => Verdict::Undecided,
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Verdict::True => "true",
            Verdict::False => "false",
            Verdict::Undecided => "undecided",
        }
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl serde::Serialize for Verdict {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(self.as_str())
    }
}

/// The generators of a tower and which one (if any) conjugation flips.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TowerSpec {
    generators: Vec<BigInt>,
    conj_index: Option<usize>,
    // ∏_{i∈S} a_i for every mask S
    mask_products: Vec<BigInt>,
}

pub type SpecRef = Arc<TowerSpec>;

const MAX_GENERATORS: usize = 12;

impl TowerSpec {
    /// Builds a tower from rational generators. Each `p/q` is replaced by the
    /// square-free part of `pq`. Generators that are squares, or squares times
    /// a product of earlier generators, are rejected.
    pub fn new(generators: &[Rational], conj_index: Option<usize>) -> Result<SpecRef, FieldError> {
        let mut gens: Vec<BigInt> = Vec::with_capacity(generators.len());
        for g in generators {
            if g.is_zero() {
                return Err(FieldError::NonzeroRequired);
            }
            let sf = arith::squarefree_of_rational(g);
            gens.push(sf);
        }
        Self::from_squarefree(gens, conj_index)
    }

    pub fn from_squarefree(gens: Vec<BigInt>, conj_index: Option<usize>) -> Result<SpecRef, FieldError> {
        if gens.len() > MAX_GENERATORS {
            return Err(FieldError::SpecMismatch(format!(
                "at most {MAX_GENERATORS} generators are supported"
            )));
        }
        if let Some(c) = conj_index {
            if c >= gens.len() {
                return Err(FieldError::SpecMismatch(format!(
                    "conjugation index {c} out of range for {} generators",
                    gens.len()
                )));
            }
        }
        let mut mask_products = vec![BigInt::one()];
        for (k, g) in gens.iter().enumerate() {
            if g.is_zero() || arith::squarefree_part(g) != *g {
                return Err(FieldError::SpecMismatch(format!("generator {g} is not square-free")));
            }
            // independent of earlier generators: g · ∏_{S} a_i is never a square
            for prev in &mask_products[..1 << k] {
                if arith::is_square_int(&(g * prev)) {
                    return Err(FieldError::SpecMismatch(format!(
                        "generator {g} is already a square in the tower"
                    )));
                }
            }
            let ext: Vec<BigInt> = mask_products.iter().map(|p| p * g).collect();
            mask_products.extend(ext);
        }
        Ok(Arc::new(TowerSpec {
            generators: gens,
            conj_index,
            mask_products,
        }))
    }

    /// Q itself, with no conjugation.
    pub fn rationals() -> SpecRef {
        Self::from_squarefree(Vec::new(), None).expect("empty tower")
    }

    /// K = Q(√d) with conjugation √d ↦ −√d.
    pub fn quadratic(d: &Rational) -> Result<SpecRef, FieldError> {
        if d.is_zero() {
            return Err(FieldError::NonzeroRequired);
        }
        if arith::is_square_rational(d) {
            return Err(FieldError::SquareDiscriminant(d.clone()));
        }
        Self::new(std::slice::from_ref(d), Some(0))
    }

    /// Appends one more generator, keeping the conjugation index.
    pub fn extend(&self, g: &Rational) -> Result<SpecRef, FieldError> {
        if g.is_zero() {
            return Err(FieldError::NonzeroRequired);
        }
        let mut gens = self.generators.clone();
        gens.push(arith::squarefree_of_rational(g));
        Self::from_squarefree(gens, self.conj_index)
    }

    /// Same generators with a different conjugated generator.
    pub fn with_conjugation(&self, conj_index: Option<usize>) -> Result<SpecRef, FieldError> {
        Self::from_squarefree(self.generators.clone(), conj_index)
    }

    pub fn generators(&self) -> &[BigInt] {
        &self.generators
    }

    pub fn conj_index(&self) -> Option<usize> {
        self.conj_index
    }

    pub fn degree(&self) -> usize {
        1 << self.generators.len()
    }

    fn mask_product(&self, mask: u32) -> &BigInt {
        &self.mask_products[mask as usize]
    }

    /// Index of the generator equal to the square class of `q`, if present.
    pub fn generator_index(&self, q: &Rational) -> Option<usize> {
        if q.is_zero() {
            return None;
        }
        let sf = arith::squarefree_of_rational(q);
        self.generators.iter().position(|g| *g == sf)
    }

    /// True when `other` extends `self` by appending generators.
    pub fn is_prefix_of(&self, other: &TowerSpec) -> bool {
        other.generators.len() >= self.generators.len()
            && other.generators[..self.generators.len()] == self.generators[..]
    }
}

/// An element of a tower, canonical (no zero coefficients stored).
#[derive(Clone, PartialEq, Eq)]
pub struct TowerElem {
    spec: SpecRef,
    coeffs: BTreeMap<u32, Rational>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
    Div,
}

fn same_spec(a: &SpecRef, b: &SpecRef) -> bool {
    Arc::ptr_eq(a, b) || a == b
}

impl TowerElem {
    pub fn zero(spec: &SpecRef) -> Self {
        TowerElem {
            spec: spec.clone(),
            coeffs: BTreeMap::new(),
        }
    }

    pub fn one(spec: &SpecRef) -> Self {
        Self::from_rational(spec, Rational::one())
    }

    pub fn from_int(spec: &SpecRef, n: i64) -> Self {
        Self::from_rational(spec, rat(n))
    }

    pub fn from_rational(spec: &SpecRef, q: Rational) -> Self {
        let mut coeffs = BTreeMap::new();
        if !q.is_zero() {
            coeffs.insert(0, q);
        }
        TowerElem {
            spec: spec.clone(),
            coeffs,
        }
    }

    /// The basis element √a_i.
    pub fn sqrt_generator(spec: &SpecRef, i: usize) -> Self {
        assert!(i < spec.generators.len(), "generator index out of range");
        let mut coeffs = BTreeMap::new();
        coeffs.insert(1u32 << i, Rational::one());
        TowerElem {
            spec: spec.clone(),
            coeffs,
        }
    }

    /// Builds from `(mask, coefficient)` pairs; repeated masks are summed.
    pub fn from_terms(spec: &SpecRef, terms: impl IntoIterator<Item = (u32, Rational)>) -> Result<Self, FieldError> {
        let limit = spec.degree() as u32;
        let mut coeffs: BTreeMap<u32, Rational> = BTreeMap::new();
        for (m, c) in terms {
            if m >= limit {
                return Err(FieldError::SpecMismatch(format!("subset mask {m} out of range")));
            }
            *coeffs.entry(m).or_insert_with(Rational::zero) += c;
        }
        coeffs.retain(|_, c| !c.is_zero());
        Ok(TowerElem {
            spec: spec.clone(),
            coeffs,
        })
    }

    /// `a + b√d` where √d is generator `i`.
    pub fn from_pair(spec: &SpecRef, i: usize, a: Rational, b: Rational) -> Self {
        Self::from_terms(spec, [(0u32, a), (1u32 << i, b)]).expect("valid generator")
    }

    pub fn spec(&self) -> &SpecRef {
        &self.spec
    }

    pub fn terms(&self) -> impl Iterator<Item = (u32, &Rational)> {
        self.coeffs.iter().map(|(m, c)| (*m, c))
    }

    pub fn coeff(&self, mask: u32) -> Rational {
        self.coeffs.get(&mask).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs.get(&0).is_some_and(|c| c.is_one())
    }

    pub fn as_rational(&self) -> Option<Rational> {
        match self.coeffs.len() {
            0 => Some(Rational::zero()),
            1 => self.coeffs.get(&0).cloned(),
            _ => None,
        }
    }

    pub fn is_rational(&self) -> bool {
        self.as_rational().is_some()
    }

    /// Re-expresses the element in a tower whose generators extend this one's.
    pub fn embed(&self, target: &SpecRef) -> Result<Self, FieldError> {
        if !self.spec.is_prefix_of(target) {
            return Err(FieldError::SpecMismatch(
                "target tower does not extend the source tower".into(),
            ));
        }
        Ok(TowerElem {
            spec: target.clone(),
            coeffs: self.coeffs.clone(),
        })
    }

    fn check(&self, other: &Self) -> Result<(), FieldError> {
        if same_spec(&self.spec, &other.spec) {
            Ok(())
        } else {
            Err(FieldError::SpecMismatch(format!(
                "{:?} vs {:?}",
                self.spec.generators, other.spec.generators
            )))
        }
    }

    pub fn try_add(&self, other: &Self) -> Result<Self, FieldError> {
        self.check(other)?;
        let mut coeffs = self.coeffs.clone();
        for (m, c) in &other.coeffs {
            let e = coeffs.entry(*m).or_insert_with(Rational::zero);
            *e += c;
            if e.is_zero() {
                coeffs.remove(m);
            }
        }
        Ok(TowerElem {
            spec: self.spec.clone(),
            coeffs,
        })
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self, FieldError> {
        self.try_add(&other.neg_ref())
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self, FieldError> {
        self.check(other)?;
        let mut coeffs: BTreeMap<u32, Rational> = BTreeMap::new();
        for (s, a) in &self.coeffs {
            for (t, b) in &other.coeffs {
                let mut c = a * b;
                let shared = s & t;
                if shared != 0 {
                    c *= Rational::from_integer(self.spec.mask_product(shared).clone());
                }
                *coeffs.entry(s ^ t).or_insert_with(Rational::zero) += c;
            }
        }
        coeffs.retain(|_, c| !c.is_zero());
        Ok(TowerElem {
            spec: self.spec.clone(),
            coeffs,
        })
    }

    pub fn try_div(&self, other: &Self) -> Result<Self, FieldError> {
        self.check(other)?;
        Ok(self * &other.inv()?)
    }

    pub fn scale(&self, q: &Rational) -> Self {
        if q.is_zero() {
            return Self::zero(&self.spec);
        }
        TowerElem {
            spec: self.spec.clone(),
            coeffs: self.coeffs.iter().map(|(m, c)| (*m, c * q)).collect(),
        }
    }

    fn neg_ref(&self) -> Self {
        TowerElem {
            spec: self.spec.clone(),
            coeffs: self.coeffs.iter().map(|(m, c)| (*m, -c)).collect(),
        }
    }

    /// Automorphism flipping the sign of generator `i`.
    pub fn flip(&self, i: usize) -> Self {
        let bit = 1u32 << i;
        TowerElem {
            spec: self.spec.clone(),
            coeffs: self
                .coeffs
                .iter()
                .map(|(m, c)| (*m, if m & bit != 0 { -c } else { c.clone() }))
                .collect(),
        }
    }

    /// Multiplicative inverse by rationalizing against each generator in turn.
    pub fn inv(&self) -> Result<Self, FieldError> {
        if self.is_zero() {
            return Err(FieldError::DivisionByZero);
        }
        let mut num = Self::one(&self.spec);
        let mut den = self.clone();
        for i in 0..self.spec.generators.len() {
            let c = den.flip(i);
            num = &num * &c;
            den = &den * &c;
        }
        let q = den.as_rational().expect("fully rationalized denominator");
        debug_assert!(!q.is_zero());
        Ok(num.scale(&(Rational::one() / q)))
    }

    /// Galois conjugation flipping the designated generator. Identity when
    /// the tower has no conjugated generator.
    pub fn conj(&self) -> Self {
        match self.spec.conj_index {
            Some(i) => self.flip(i),
            None => self.clone(),
        }
    }

    /// `conj(z) · z`, an element of the fixed subfield.
    pub fn norm(&self) -> Self {
        &self.conj() * self
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut out = Self::one(&self.spec);
        for _ in 0..e {
            out = &out * self;
        }
        out
    }

    /// True iff the element is fixed by conjugation.
    pub fn is_conj_fixed(&self) -> bool {
        match self.spec.conj_index {
            Some(i) => self.coeffs.keys().all(|m| m & (1 << i) == 0),
            None => true,
        }
    }
}

/// An element of `spec` squaring to `q`, when `q` is a rational square times
/// a product of generators.
pub fn sqrt_in(spec: &SpecRef, q: &Rational) -> Option<TowerElem> {
    if q.is_zero() {
        return Some(TowerElem::zero(spec));
    }
    let core = arith::squarefree_of_rational(q);
    let mask = spec.mask_products.iter().position(|p| arith::squarefree_part(p) == core)?;
    let unit = TowerElem::from_terms(spec, [(mask as u32, Rational::one())]).expect("valid mask");
    let t = q / Rational::from_integer(spec.mask_products[mask].clone());
    let num = arith::exact_sqrt(t.numer())?;
    let den = arith::exact_sqrt(t.denom())?;
    Some(unit.scale(&Rational::new(num, den)))
}

/// Fallible entry point for the four field operations.
pub fn field_arith(x: &TowerElem, y: &TowerElem, op: ArithOp) -> Result<TowerElem, FieldError> {
    match op {
        ArithOp::Add => x.try_add(y),
        ArithOp::Sub => x.try_sub(y),
        ArithOp::Mul => x.try_mul(y),
        ArithOp::Div => x.try_div(y),
    }
}

impl<'a> Add<&'a TowerElem> for &'a TowerElem {
    type Output = TowerElem;
    fn add(self, rhs: &'a TowerElem) -> TowerElem {
        self.try_add(rhs).expect("tower mismatch in +")
    }
}

impl<'a> Sub<&'a TowerElem> for &'a TowerElem {
    type Output = TowerElem;
    fn sub(self, rhs: &'a TowerElem) -> TowerElem {
        self.try_sub(rhs).expect("tower mismatch in -")
    }
}

impl<'a> Mul<&'a TowerElem> for &'a TowerElem {
    type Output = TowerElem;
    fn mul(self, rhs: &'a TowerElem) -> TowerElem {
        self.try_mul(rhs).expect("tower mismatch in *")
    }
}

impl Neg for &TowerElem {
    type Output = TowerElem;
    fn neg(self) -> TowerElem {
        self.neg_ref()
    }
}

impl Neg for TowerElem {
    type Output = TowerElem;
    fn neg(self) -> TowerElem {
        self.neg_ref()
    }
}

fn fmt_rational(q: &Rational) -> String {
    if q.denom().is_one() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

impl fmt::Display for TowerElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return f.write_str("0");
        }
        let mut first = true;
        for (m, c) in &self.coeffs {
            let radical: Vec<String> = (0..self.spec.generators.len())
                .filter(|i| m & (1 << i) != 0)
                .map(|i| format!("√({})", self.spec.generators[i]))
                .collect();
            let neg = c.is_negative();
            let mag = c.abs();
            if first {
                if neg {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if neg { " - " } else { " + " })?;
            }
            first = false;
            if radical.is_empty() {
                f.write_str(&fmt_rational(&mag))?;
            } else if mag.is_one() {
                f.write_str(&radical.join("·"))?;
            } else {
                write!(f, "{}·{}", fmt_rational(&mag), radical.join("·"))?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for TowerElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "TowerElem({self})")
    }
}

/// Formats a rational as `p` or `p/q`.
pub fn rational_to_string(q: &Rational) -> String {
    fmt_rational(q)
}

/// Parses `p` or `p/q`.
pub fn parse_rational(s: &str) -> Option<Rational> {
    let s = s.trim();
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().ok()?;
            let d: BigInt = d.trim().parse().ok()?;
            if d.is_zero() {
                None
            } else {
                Some(Rational::new(n, d))
            }
        }
        None => s.parse::<BigInt>().ok().map(Rational::from_integer),
    }
}

pub fn is_square_rational(q: &Rational) -> bool {
    arith::is_square_rational(q)
}

/// Decides whether `c` is a norm from Q(√d) by the Hasse norm theorem: the
/// Hilbert symbol (c, d)_v must be +1 at the real place and at every prime
/// dividing 2cd. Always decided over Q.
pub fn is_norm_from_quadratic(c: &Rational, d: &Rational) -> Result<Verdict, FieldError> {
    if c.is_zero() || d.is_zero() {
        return Err(FieldError::NonzeroRequired);
    }
    Ok(Verdict::from_bool(quaternion::hilbert_symbols_trivial(c, d)))
}

/// The place at which `c ∉ N(Q(√d)*)` is witnessed, if any.
pub fn norm_obstruction(c: &Rational, d: &Rational) -> Option<Place> {
    quaternion::relevant_places(&[c.clone(), d.clone()])
        .into_iter()
        .find(|v| quaternion::hilbert_symbol(c, d, v) == -1)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn quad(d: i64) -> SpecRef {
        TowerSpec::quadratic(&rat(d)).unwrap()
    }

    #[test]
    fn sqrt2_times_sqrt3_is_sqrt6() {
        let spec = TowerSpec::new(&[rat(2), rat(3)], None).unwrap();
        let a = TowerElem::sqrt_generator(&spec, 0);
        let b = TowerElem::sqrt_generator(&spec, 1);
        let p = field_arith(&a, &b, ArithOp::Mul).unwrap();
        assert_eq!(p.terms().collect::<Vec<_>>(), vec![(0b11, &rat(1))]);
        assert_eq!(&p * &p, TowerElem::from_int(&spec, 6));
    }

    #[test]
    fn sum_with_conjugate_is_rational() {
        let k = quad(7);
        let a = TowerElem::from_pair(&k, 0, rat(1), rat(1));
        let b = TowerElem::from_pair(&k, 0, rat(1), rat(-1));
        assert_eq!(&a + &b, TowerElem::from_int(&k, 2));
    }

    #[test]
    fn gaussian_quotient() {
        let k = quad(-1);
        let a = TowerElem::from_pair(&k, 0, rat(1), rat(1));
        let b = TowerElem::from_pair(&k, 0, rat(1), rat(-1));
        let q = field_arith(&a, &b, ArithOp::Div).unwrap();
        assert_eq!(q, TowerElem::sqrt_generator(&k, 0));
    }

    #[test]
    fn division_by_zero_and_mismatch() {
        let k = quad(-1);
        let l = quad(5);
        let one = TowerElem::one(&k);
        assert_eq!(
            field_arith(&one, &TowerElem::zero(&k), ArithOp::Div),
            Err(FieldError::DivisionByZero)
        );
        assert!(matches!(
            field_arith(&one, &TowerElem::one(&l), ArithOp::Add),
            Err(FieldError::SpecMismatch(_))
        ));
    }

    #[test]
    fn conjugation_examples() {
        let k = quad(-3);
        let z = TowerElem::from_pair(&k, 0, rat(3), rat(4));
        assert_eq!(z.conj(), TowerElem::from_pair(&k, 0, rat(3), rat(-4)));
        let q = TowerElem::from_rational(&k, ratio(2, 7));
        assert_eq!(q.conj(), q);
        let t = TowerSpec::new(&[rat(2), rat(-1)], Some(1)).unwrap();
        let z = &(&TowerElem::one(&t) + &TowerElem::sqrt_generator(&t, 0)) + &TowerElem::sqrt_generator(&t, 1);
        assert_eq!(z.conj().conj(), z);
        assert_ne!(z.conj(), z);
    }

    #[test]
    fn norm_examples() {
        let k = quad(-1);
        assert_eq!(TowerElem::from_pair(&k, 0, rat(3), rat(4)).norm(), TowerElem::from_int(&k, 25));
        let k5 = quad(5);
        assert_eq!(TowerElem::from_pair(&k5, 0, rat(2), rat(1)).norm(), TowerElem::from_int(&k5, -1));
        let z = TowerElem::from_pair(&k, 0, rat(1), rat(1));
        let w = TowerElem::from_pair(&k, 0, rat(2), rat(-1));
        assert_eq!((&z * &w).norm(), TowerElem::from_int(&k, 10));
    }

    #[test]
    fn square_tests() {
        assert!(is_square_rational(&ratio(4, 9)));
        assert!(!is_square_rational(&rat(5)));
        assert!(is_square_rational(&rat(0)));
        assert!(!is_square_rational(&rat(-4)));
    }

    #[test]
    fn norm_membership_examples() {
        assert_eq!(is_norm_from_quadratic(&rat(2), &rat(-1)), Ok(Verdict::True));
        assert_eq!(is_norm_from_quadratic(&rat(2), &rat(5)), Ok(Verdict::False));
        assert_eq!(is_norm_from_quadratic(&rat(-1), &rat(5)), Ok(Verdict::True));
        assert_eq!(is_norm_from_quadratic(&rat(0), &rat(5)), Err(FieldError::NonzeroRequired));
    }

    #[test]
    fn rational_generators_are_normalized() {
        let t = TowerSpec::new(&[ratio(1, 2)], Some(0)).unwrap();
        assert_eq!(t.generators(), &[BigInt::from(2)]);
        assert!(TowerSpec::new(&[rat(2), rat(8)], None).is_err());
        assert!(TowerSpec::new(&[rat(2), rat(3), rat(6)], None).is_err());
        assert!(TowerSpec::new(&[rat(4)], None).is_err());
        assert!(TowerSpec::new(&[rat(-1), rat(2), rat(-2)], None).is_err());
    }

    #[test]
    fn square_roots_in_towers() {
        let t = TowerSpec::new(&[rat(-1), rat(5)], Some(1)).unwrap();
        for q in [rat(-4), rat(20), ratio(5, 9), rat(9)] {
            let r = sqrt_in(&t, &q).unwrap();
            assert_eq!(&r * &r, TowerElem::from_rational(&t, q));
        }
        assert!(sqrt_in(&t, &rat(2)).is_none());
        assert!(sqrt_in(&t, &rat(-5)).is_some());
    }

    #[test]
    fn display_is_readable() {
        let k = quad(-1);
        let z = TowerElem::from_pair(&k, 0, ratio(1, 2), rat(-3));
        assert_eq!(z.to_string(), "1/2 - 3·√(-1)");
    }
}
