//! Tensor calculus on gl(n) in matrix-unit coordinates.
//!
//! Elements of gl(n) and of its tensor powers are sparse maps from matrix
//! units `E_ij` (1-based) to tower coefficients. sl(n) sits inside gl(n);
//! the Casimir is the one dual to the trace form `tr(XY)`.

use std::collections::BTreeMap;
use std::fmt;

use num::{One, Zero};
use thiserror::Error;

use crate::field::{rat, ratio, FieldError, Rational, SpecRef, TowerElem, TowerSpec};
use crate::linalg;
use crate::matrix::{MatError, MatK};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LieError {
    #[error("matrix is singular")]
    Singular,
    #[error("dimension mismatch: {0} vs {1}")]
    DimMismatch(usize, usize),
    #[error("value is not rational")]
    NotRational,
    #[error(transparent)]
    Field(#[from] FieldError),
}

impl From<MatError> for LieError {
    fn from(e: MatError) -> Self {
        match e {
            MatError::Singular => LieError::Singular,
            MatError::DimMismatch(a, b) => LieError::DimMismatch(a, b),
            MatError::Field(f) => LieError::Field(f),
            MatError::InvalidTwist(s) => LieError::Field(FieldError::SpecMismatch(s)),
        }
    }
}

/// Matrix unit `E_ij`, 1-based.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct GlIndex {
    pub i: u16,
    pub j: u16,
}

impl GlIndex {
    pub const fn new(i: u16, j: u16) -> Self {
        GlIndex { i, j }
    }

    pub fn is_diagonal(self) -> bool {
        self.i == self.j
    }

    pub fn transpose(self) -> Self {
        GlIndex { i: self.j, j: self.i }
    }
}

impl fmt::Display for GlIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "E{},{}", self.i, self.j)
    }
}

/// `[E_ij, E_kl] = δ_jk E_il − δ_li E_kj`.
fn unit_bracket(a: GlIndex, b: GlIndex) -> impl Iterator<Item = (GlIndex, i8)> {
    let first = (a.j == b.i).then_some((GlIndex::new(a.i, b.j), 1i8));
    let second = (b.j == a.i).then_some((GlIndex::new(b.i, a.j), -1i8));
    first.into_iter().chain(second)
}

fn add_into<K: Ord>(map: &mut BTreeMap<K, TowerElem>, key: K, c: TowerElem) {
    if c.is_zero() {
        return;
    }
    match map.entry(key) {
        std::collections::btree_map::Entry::Vacant(v) => {
            v.insert(c);
        }
        std::collections::btree_map::Entry::Occupied(mut o) => {
            let s = o.get() + &c;
            if s.is_zero() {
                o.remove();
            } else {
                *o.get_mut() = s;
            }
        }
    }
}

fn signed(c: &TowerElem, s: i8) -> TowerElem {
    if s < 0 {
        -c
    } else {
        c.clone()
    }
}

/// An element of gl(n).
#[derive(Clone, PartialEq, Eq)]
pub struct GlElem {
    n: usize,
    spec: SpecRef,
    terms: BTreeMap<GlIndex, TowerElem>,
}

impl GlElem {
    pub fn zero(spec: &SpecRef, n: usize) -> Self {
        GlElem {
            n,
            spec: spec.clone(),
            terms: BTreeMap::new(),
        }
    }

    /// `E_ij`, 1-based.
    pub fn unit(spec: &SpecRef, n: usize, i: usize, j: usize) -> Self {
        assert!((1..=n).contains(&i) && (1..=n).contains(&j), "matrix unit out of range");
        let mut e = Self::zero(spec, n);
        e.terms.insert(GlIndex::new(i as u16, j as u16), TowerElem::one(spec));
        e
    }

    /// Simple coroot `E_ii − E_{i+1,i+1}`.
    pub fn simple_coroot(spec: &SpecRef, n: usize, i: usize) -> Self {
        Self::unit(spec, n, i, i).sub(&Self::unit(spec, n, i + 1, i + 1))
    }

    /// `h_i = Σ_{j≤i} E_jj − i·E_{i+1,i+1}`, orthogonal for the trace form.
    pub fn cartan_h(spec: &SpecRef, n: usize, i: usize) -> Self {
        let mut e = Self::zero(spec, n);
        for j in 1..=i {
            e = e.add(&Self::unit(spec, n, j, j));
        }
        e.add(&Self::unit(spec, n, i + 1, i + 1).scale_rat(&rat(-(i as i64))))
    }

    pub fn from_terms(spec: &SpecRef, n: usize, terms: impl IntoIterator<Item = (GlIndex, TowerElem)>) -> Self {
        let mut e = Self::zero(spec, n);
        for (k, c) in terms {
            add_into(&mut e.terms, k, c);
        }
        e
    }

    pub fn from_matrix(m: &MatK) -> Self {
        let n = m.n();
        let mut e = Self::zero(m.spec(), n);
        for i in 0..n {
            for j in 0..n {
                add_into(&mut e.terms, GlIndex::new(i as u16 + 1, j as u16 + 1), m.get(i, j).clone());
            }
        }
        e
    }

    pub fn to_matrix(&self) -> MatK {
        let mut m = MatK::zero(&self.spec, self.n);
        for (k, c) in &self.terms {
            m.set(k.i as usize - 1, k.j as usize - 1, c.clone());
        }
        m
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn spec(&self) -> &SpecRef {
        &self.spec
    }

    pub fn terms(&self) -> impl Iterator<Item = (GlIndex, &TowerElem)> {
        self.terms.iter().map(|(k, c)| (*k, c))
    }

    pub fn coeff(&self, k: GlIndex) -> TowerElem {
        self.terms.get(&k).cloned().unwrap_or_else(|| TowerElem::zero(&self.spec))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add(&self, o: &Self) -> Self {
        let mut out = self.clone();
        for (k, c) in &o.terms {
            add_into(&mut out.terms, *k, c.clone());
        }
        out
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }

    pub fn neg(&self) -> Self {
        self.map_coeffs(|c| -c)
    }

    pub fn scale(&self, s: &TowerElem) -> Self {
        let mut out = Self::zero(&self.spec, self.n);
        for (k, c) in &self.terms {
            add_into(&mut out.terms, *k, c * s);
        }
        out
    }

    pub fn scale_rat(&self, s: &Rational) -> Self {
        self.scale(&TowerElem::from_rational(&self.spec, s.clone()))
    }

    fn map_coeffs(&self, f: impl Fn(&TowerElem) -> TowerElem) -> Self {
        let mut out = Self::zero(&self.spec, self.n);
        for (k, c) in &self.terms {
            add_into(&mut out.terms, *k, f(c));
        }
        out
    }

    /// Coefficient-wise conjugation.
    pub fn conj(&self) -> Self {
        self.map_coeffs(TowerElem::conj)
    }

    /// Conjugate transpose.
    pub fn star(&self) -> Self {
        let mut out = Self::zero(&self.spec, self.n);
        for (k, c) in &self.terms {
            add_into(&mut out.terms, k.transpose(), c.conj());
        }
        out
    }

    pub fn trace(&self) -> TowerElem {
        self.terms
            .iter()
            .filter(|(k, _)| k.is_diagonal())
            .fold(TowerElem::zero(&self.spec), |s, (_, c)| &s + c)
    }

    pub fn is_traceless(&self) -> bool {
        self.trace().is_zero()
    }

    /// `tr(self · other)`.
    pub fn trace_form(&self, other: &Self) -> TowerElem {
        let mut s = TowerElem::zero(&self.spec);
        for (a, x) in &self.terms {
            if let Some(y) = other.terms.get(&a.transpose()) {
                s = &s + &(x * y);
            }
        }
        s
    }

    pub fn embed(&self, target: &SpecRef) -> Result<Self, FieldError> {
        let mut out = Self::zero(target, self.n);
        for (k, c) in &self.terms {
            out.terms.insert(*k, c.embed(target)?);
        }
        Ok(out)
    }
}

impl fmt::Debug for GlElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.terms.iter().map(|(k, c)| format!("({c})·{k}")).collect();
        if parts.is_empty() {
            f.write_str("0")
        } else {
            f.write_str(&parts.join(" + "))
        }
    }
}

/// Lie bracket in gl(n).
pub fn bracket(a: &GlElem, b: &GlElem) -> GlElem {
    assert_eq!(a.n, b.n, "bracket of different sizes");
    let mut out = GlElem::zero(&a.spec, a.n);
    for (ka, ca) in &a.terms {
        for (kb, cb) in &b.terms {
            let p = ca * cb;
            for (k, s) in unit_bracket(*ka, *kb) {
                add_into(&mut out.terms, k, signed(&p, s));
            }
        }
    }
    out
}

/// Sparse element of the K-fold tensor power of gl(n).
#[derive(Clone, PartialEq, Eq)]
pub struct Tensor<const K: usize> {
    n: usize,
    spec: SpecRef,
    terms: BTreeMap<[GlIndex; K], TowerElem>,
}

pub type Tensor2 = Tensor<2>;
pub type Tensor3 = Tensor<3>;

impl<const K: usize> Tensor<K> {
    pub fn zero(spec: &SpecRef, n: usize) -> Self {
        Tensor {
            n,
            spec: spec.clone(),
            terms: BTreeMap::new(),
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn spec(&self) -> &SpecRef {
        &self.spec
    }

    pub fn terms(&self) -> impl Iterator<Item = (&[GlIndex; K], &TowerElem)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, legs: &[GlIndex; K]) -> TowerElem {
        self.terms.get(legs).cloned().unwrap_or_else(|| TowerElem::zero(&self.spec))
    }

    pub fn add_term(&mut self, legs: [GlIndex; K], c: TowerElem) {
        add_into(&mut self.terms, legs, c);
    }

    pub fn from_terms(spec: &SpecRef, n: usize, terms: impl IntoIterator<Item = ([GlIndex; K], TowerElem)>) -> Self {
        let mut t = Self::zero(spec, n);
        for (legs, c) in terms {
            t.add_term(legs, c);
        }
        t
    }

    /// Pure tensor `x_1 ⊗ … ⊗ x_K`.
    pub fn pure(factors: [&GlElem; K]) -> Self {
        let spec = factors[0].spec.clone();
        let n = factors[0].n;
        let mut acc: Vec<([GlIndex; K], TowerElem)> = vec![([GlIndex::new(0, 0); K], TowerElem::one(&spec))];
        for (leg, f) in factors.iter().enumerate() {
            let mut next = Vec::with_capacity(acc.len() * f.terms.len());
            for (legs, c) in &acc {
                for (k, x) in &f.terms {
                    let mut l = *legs;
                    l[leg] = *k;
                    next.push((l, c * x));
                }
            }
            acc = next;
        }
        Self::from_terms(&spec, n, acc)
    }

    pub fn add(&self, o: &Self) -> Self {
        let mut out = self.clone();
        for (k, c) in &o.terms {
            out.add_term(*k, c.clone());
        }
        out
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.scale_rat(&rat(-1)))
    }

    pub fn scale(&self, s: &TowerElem) -> Self {
        Self::from_terms(&self.spec, self.n, self.terms.iter().map(|(k, c)| (*k, c * s)))
    }

    pub fn scale_rat(&self, s: &Rational) -> Self {
        self.scale(&TowerElem::from_rational(&self.spec, s.clone()))
    }

    /// Coefficient-wise conjugation.
    pub fn conj(&self) -> Self {
        Self::from_terms(&self.spec, self.n, self.terms.iter().map(|(k, c)| (*k, c.conj())))
    }

    /// Conjugate-transpose on every leg: `c·E_ij⊗E_kl ↦ conj(c)·E_ji⊗E_lk`.
    pub fn star(&self) -> Self {
        Self::from_terms(
            &self.spec,
            self.n,
            self.terms.iter().map(|(k, c)| (k.map(GlIndex::transpose), c.conj())),
        )
    }

    /// Restriction to terms whose every leg is diagonal.
    pub fn cartan_part(&self) -> Self {
        Self::from_terms(
            &self.spec,
            self.n,
            self.terms
                .iter()
                .filter(|(k, _)| k.iter().all(|g| g.is_diagonal()))
                .map(|(k, c)| (*k, c.clone())),
        )
    }

    pub fn embed(&self, target: &SpecRef) -> Result<Self, FieldError> {
        let mut out = Self::zero(target, self.n);
        for (k, c) in &self.terms {
            out.terms.insert(*k, c.embed(target)?);
        }
        Ok(out)
    }

    /// Applies `f` to leg `leg` of every term, extended linearly.
    pub fn map_leg(&self, leg: usize, f: impl Fn(GlIndex) -> GlElem) -> Self {
        let mut out = Self::zero(&self.spec, self.n);
        for (k, c) in &self.terms {
            for (g, x) in &f(k[leg]).terms {
                let mut l = *k;
                l[leg] = *g;
                out.add_term(l, c * x);
            }
        }
        out
    }

    /// Permutes legs: leg `i` of the result is leg `perm[i]` of the input.
    pub fn permute(&self, perm: [usize; K]) -> Self {
        Self::from_terms(
            &self.spec,
            self.n,
            self.terms.iter().map(|(k, c)| (std::array::from_fn(|i| k[perm[i]]), c.clone())),
        )
    }

    /// `(ad_x ⊗ 1 ⊗ … + … + 1 ⊗ … ⊗ ad_x)(self)`.
    pub fn ad_action(&self, x: &GlElem) -> Self {
        let mut out = Self::zero(&self.spec, self.n);
        for (k, c) in &self.terms {
            for leg in 0..K {
                for (g, xc) in &x.terms {
                    let p = c * xc;
                    for (r, s) in unit_bracket(*g, k[leg]) {
                        let mut l = *k;
                        l[leg] = r;
                        out.add_term(l, signed(&p, s));
                    }
                }
            }
        }
        out
    }
}

impl Tensor2 {
    /// Legs exchanged.
    pub fn swap(&self) -> Self {
        self.permute([1, 0])
    }

    /// `a ⊗ b`.
    pub fn tensor(a: &GlElem, b: &GlElem) -> Self {
        Self::pure([a, b])
    }

    /// `a ∧ b = a⊗b − b⊗a`.
    pub fn wedge(a: &GlElem, b: &GlElem) -> Self {
        Self::pure([a, b]).sub(&Self::pure([b, a]))
    }
}

impl Tensor3 {
    /// `x⊗y⊗z ↦ z⊗x⊗y`.
    pub fn cycle(&self) -> Self {
        self.permute([2, 0, 1])
    }
}

impl<const K: usize> fmt::Debug for Tensor<K> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(k, c)| {
                let legs: Vec<String> = k.iter().map(|g| g.to_string()).collect();
                format!("({c})·{}", legs.join("⊗"))
            })
            .collect();
        if parts.is_empty() {
            f.write_str("0")
        } else {
            f.write_str(&parts.join(" + "))
        }
    }
}

/// Casimir of sl(n) for the trace form:
/// `Σ_{i≠j} E_ij⊗E_ji + Σ_{i,j} (δ_ij − 1/n) E_ii⊗E_jj`.
pub fn casimir(spec: &SpecRef, n: usize) -> Tensor2 {
    let mut t = Tensor2::zero(spec, n);
    let nn = n as u16;
    for i in 1..=nn {
        for j in 1..=nn {
            let c = if i == j {
                ratio(n as i64 - 1, n as i64)
            } else {
                t.add_term(
                    [GlIndex::new(i, j), GlIndex::new(j, i)],
                    TowerElem::one(spec),
                );
                ratio(-1, n as i64)
            };
            t.add_term([GlIndex::new(i, i), GlIndex::new(j, j)], TowerElem::from_rational(spec, c));
        }
    }
    t
}

/// Standard r-matrix `½Ω_0 + Σ_{i<j} E_ij⊗E_ji`.
pub fn rdj(spec: &SpecRef, n: usize) -> Tensor2 {
    let mut t = casimir(spec, n).cartan_part().scale_rat(&ratio(1, 2));
    let nn = n as u16;
    for i in 1..=nn {
        for j in i + 1..=nn {
            t.add_term([GlIndex::new(i, j), GlIndex::new(j, i)], TowerElem::one(spec));
        }
    }
    t
}

pub fn cartan_part(t: &Tensor2) -> Tensor2 {
    t.cartan_part()
}

pub fn swap(t: &Tensor2) -> Tensor2 {
    t.swap()
}

/// `[r12, r13] + [r12, r23] + [r13, r23]`.
pub fn cyb(r: &Tensor2) -> Tensor3 {
    let mut out = Tensor3::zero(&r.spec, r.n);
    for ([a1, b1], c1) in &r.terms {
        for ([a2, b2], c2) in &r.terms {
            let p = c1 * c2;
            for (x, s) in unit_bracket(*a1, *a2) {
                out.add_term([x, *b1, *b2], signed(&p, s));
            }
            for (x, s) in unit_bracket(*b1, *a2) {
                out.add_term([*a1, x, *b2], signed(&p, s));
            }
            for (x, s) in unit_bracket(*b1, *b2) {
                out.add_term([*a1, *a2, x], signed(&p, s));
            }
        }
    }
    out
}

/// `δ(a) = [r, a⊗1 + 1⊗a]`.
pub fn coboundary(r: &Tensor2, a: &GlElem) -> Tensor2 {
    r.ad_action(a).scale_rat(&rat(-1))
}

/// Basis of sl(n): off-diagonal units, then simple coroots.
pub fn sl_basis(spec: &SpecRef, n: usize) -> Vec<GlElem> {
    let mut out = Vec::new();
    for i in 1..=n {
        for j in 1..=n {
            if i != j {
                out.push(GlElem::unit(spec, n, i, j));
            }
        }
    }
    for i in 1..n {
        out.push(GlElem::simple_coroot(spec, n, i));
    }
    out
}

/// Outcome of [`check_cobracket_axioms`]. `failures` names the first few
/// offending basis elements.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CobracketReport {
    pub cocycle: bool,
    pub skew: bool,
    pub co_jacobi: bool,
    pub failures: Vec<String>,
}

impl CobracketReport {
    pub fn passed(&self) -> bool {
        self.cocycle && self.skew && self.co_jacobi
    }
}

const MAX_REPORTED: usize = 8;

/// Checks the bialgebra axioms for `δ = ∂r` on the sl(n) basis: the cocycle
/// identity `δ([x,y]) = x·δ(y) − y·δ(x)`, skew-symmetry of `δ`, and
/// co-Jacobi, i.e. the cyclic sum of `(δ⊗id)δ(a)` vanishes.
pub fn check_cobracket_axioms(r: &Tensor2, n: usize) -> CobracketReport {
    assert_eq!(r.n, n, "tensor dimension");
    let basis = sl_basis(&r.spec, n);
    let deltas: Vec<Tensor2> = basis.iter().map(|a| coboundary(r, a)).collect();
    let mut failures = Vec::new();
    let mut note = |s: String| {
        if failures.len() < MAX_REPORTED {
            failures.push(s);
        }
    };

    let mut cocycle = true;
    for (x, dx) in basis.iter().zip(&deltas) {
        for (y, dy) in basis.iter().zip(&deltas) {
            let lhs = coboundary(r, &bracket(x, y));
            let rhs = dy.ad_action(x).sub(&dx.ad_action(y));
            if lhs != rhs {
                cocycle = false;
                note(format!("cocycle identity fails at ({x:?}, {y:?})"));
            }
        }
    }

    let mut skew = true;
    for (a, d) in basis.iter().zip(&deltas) {
        if !d.add(&d.swap()).is_zero() {
            skew = false;
            note(format!("δ({a:?}) is not skew"));
        }
    }

    let mut co_jacobi = true;
    for (a, d) in basis.iter().zip(&deltas) {
        let mut j = Tensor3::zero(&r.spec, n);
        for ([u, v], c) in &d.terms {
            let du = coboundary(r, &GlElem::unit(&r.spec, n, u.i as usize, u.j as usize));
            for ([p, q], e) in &du.terms {
                j.add_term([*p, *q, *v], c * e);
            }
        }
        let total = j.add(&j.cycle()).add(&j.cycle().cycle());
        if !total.is_zero() {
            co_jacobi = false;
            note(format!("co-Jacobi fails at {a:?}"));
        }
    }
    CobracketReport {
        cocycle,
        skew,
        co_jacobi,
        failures,
    }
}

/// Images `X E_ij X⁻¹` for every matrix unit.
fn conjugation_images(x: &MatK) -> Result<BTreeMap<GlIndex, GlElem>, LieError> {
    let n = x.n();
    let inv = x.inverse()?;
    let mut out = BTreeMap::new();
    for i in 1..=n {
        for j in 1..=n {
            let mut e = GlElem::zero(x.spec(), n);
            for k in 1..=n {
                let xk = x.get(k - 1, i - 1);
                if xk.is_zero() {
                    continue;
                }
                for l in 1..=n {
                    let yl = inv.get(j - 1, l - 1);
                    if !yl.is_zero() {
                        add_into(&mut e.terms, GlIndex::new(k as u16, l as u16), xk * yl);
                    }
                }
            }
            out.insert(GlIndex::new(i as u16, j as u16), e);
        }
    }
    Ok(out)
}

/// `Ad_X` on every leg.
pub fn ad_tensor<const K: usize>(x: &MatK, t: &Tensor<K>) -> Result<Tensor<K>, LieError> {
    if x.n() != t.n {
        return Err(LieError::DimMismatch(x.n(), t.n));
    }
    if x.spec() != &t.spec {
        return Err(FieldError::SpecMismatch("matrix and tensor over different towers".into()).into());
    }
    let images = conjugation_images(x)?;
    let mut out = t.clone();
    for leg in 0..K {
        out = out.map_leg(leg, |g| images[&g].clone());
    }
    Ok(out)
}

/// `Ad_X` on a single element.
pub fn ad_elem(x: &MatK, a: &GlElem) -> Result<GlElem, LieError> {
    let images = conjugation_images(x)?;
    let mut out = GlElem::zero(&a.spec, a.n);
    for (k, c) in &a.terms {
        out = out.add(&images[k].scale(c));
    }
    Ok(out)
}

/// The two bases of the Manin triple for su(n) inside sl(n, K):
///
/// * `B_+ = (√d·h_i; e_α − e_{−α}; √d(e_α + e_{−α}))`
/// * `B_− = (1/2n)·(h_i/(i+i²); −√d·e_α; e_α)`
///
/// with `α` over positive roots `E_ij`, `i < j`, in lexicographic order.
pub fn su_basis(n: usize, sqrt_d: &TowerElem) -> (Vec<GlElem>, Vec<GlElem>) {
    let spec = sqrt_d.spec().clone();
    let inv2n = ratio(1, 2 * n as i64);
    let mut plus = Vec::new();
    let mut minus = Vec::new();
    for i in 1..n {
        let h = GlElem::cartan_h(&spec, n, i);
        plus.push(h.scale(sqrt_d));
        let ii = (i * i + i) as i64;
        minus.push(h.scale_rat(&(&inv2n / rat(ii))));
    }
    for i in 1..=n {
        for j in i + 1..=n {
            let ea = GlElem::unit(&spec, n, i, j);
            let ena = GlElem::unit(&spec, n, j, i);
            plus.push(ea.sub(&ena));
            minus.push(ea.scale(sqrt_d).scale_rat(&(-inv2n.clone())));
        }
    }
    for i in 1..=n {
        for j in i + 1..=n {
            let ea = GlElem::unit(&spec, n, i, j);
            let ena = GlElem::unit(&spec, n, j, i);
            plus.push(ea.add(&ena).scale(sqrt_d));
            minus.push(ea.scale_rat(&inv2n));
        }
    }
    (plus, minus)
}

/// `⟨A + √d B, C + √d D⟩ = 2n·tr(AD + BC)` with `A, B, C, D` fixed by
/// conjugation. Computed as `2n·(t − conj t)/(2√d)` for `t = tr(uv)`.
pub fn manin_pairing_elem(u: &GlElem, v: &GlElem, sqrt_d: &TowerElem) -> Result<TowerElem, LieError> {
    let n = u.n;
    let t = u.trace_form(v);
    let diff = &t - &t.conj();
    let two_sqrt_d = sqrt_d.scale(&rat(2));
    Ok(diff.try_div(&two_sqrt_d)?.scale(&rat(2 * n as i64)))
}

/// Rational-valued form of [`manin_pairing_elem`] for `K = Q(√d)`.
pub fn manin_pairing(u: &GlElem, v: &GlElem, sqrt_d: &TowerElem) -> Result<Rational, LieError> {
    manin_pairing_elem(u, v, sqrt_d)?.as_rational().ok_or(LieError::NotRational)
}

/// Outcome of [`verify_manin_and_r`].
#[derive(Debug, Clone)]
pub struct ManinReport {
    pub n: usize,
    pub isotropic_plus: bool,
    pub isotropic_minus: bool,
    pub duality: bool,
    pub nondegenerate: bool,
    /// `Σ_{e∈B_+} e⊗e'` equals `√d·rdj(n)`.
    pub r_matches: bool,
    /// The reconstructed tensor, for inspection.
    pub reconstructed: Tensor2,
    /// `reconstructed = (√d/n)·swap(rdj(n))`; recorded so a mismatch in
    /// `r_matches` can be read against the normalization actually produced.
    pub matches_scaled_swap: bool,
}

impl ManinReport {
    pub fn passed(&self) -> bool {
        self.isotropic_plus && self.isotropic_minus && self.duality && self.nondegenerate && self.r_matches
    }
}

/// Checks the Manin triple built from [`su_basis`] for `K = Q(√d)`.
pub fn verify_manin_and_r(n: usize, d: &Rational) -> Result<ManinReport, LieError> {
    let k = TowerSpec::quadratic(d)?;
    let sqrt_d = crate::field::sqrt_in(&k, d).expect("√d lies in Q(√d)");
    let (plus, minus) = su_basis(n, &sqrt_d);
    verify_manin_with_bases(n, &sqrt_d, &plus, &minus)
}

/// As [`verify_manin_and_r`] with caller-supplied bases.
pub fn verify_manin_with_bases(
    n: usize,
    sqrt_d: &TowerElem,
    plus: &[GlElem],
    minus: &[GlElem],
) -> Result<ManinReport, LieError> {
    let spec = sqrt_d.spec().clone();
    let gram = |xs: &[GlElem], ys: &[GlElem]| -> Result<Vec<Vec<Rational>>, LieError> {
        xs.iter()
            .map(|x| ys.iter().map(|y| manin_pairing(x, y, sqrt_d)).collect())
            .collect()
    };
    let all_zero = |m: &[Vec<Rational>]| m.iter().flatten().all(Zero::is_zero);
    let isotropic_plus = all_zero(&gram(plus, plus)?);
    let isotropic_minus = all_zero(&gram(minus, minus)?);
    let dual = gram(plus, minus)?;
    let duality = plus.len() == minus.len()
        && dual
            .iter()
            .enumerate()
            .all(|(i, row)| row.iter().enumerate().all(|(j, x)| if i == j { x.is_one() } else { x.is_zero() }));
    let joint: Vec<GlElem> = plus.iter().chain(minus).cloned().collect();
    let nondegenerate = linalg::rank(&gram(&joint, &joint)?) == joint.len() && joint.len() == 2 * (n * n - 1);

    let mut reconstructed = Tensor2::zero(&spec, n);
    for (e, f) in plus.iter().zip(minus) {
        reconstructed = reconstructed.add(&Tensor2::tensor(e, f));
    }
    let target = rdj(&spec, n).scale(sqrt_d);
    let scaled_swap = rdj(&spec, n).swap().scale(&sqrt_d.scale(&ratio(1, n as i64)));
    Ok(ManinReport {
        n,
        isotropic_plus,
        isotropic_minus,
        duality,
        nondegenerate,
        r_matches: reconstructed == target,
        matches_scaled_swap: reconstructed == scaled_swap,
        reconstructed,
    })
}

/// True iff `∂r(a)` is fixed by the tensor star for every `a` in `plus`,
/// i.e. the cobracket restricts to the real form spanned by `plus`.
pub fn coboundary_is_real(r: &Tensor2, plus: &[GlElem]) -> bool {
    plus.iter().all(|a| {
        let d = coboundary(r, a);
        d.star() == d
    })
}

/// True iff `s − star(s)` is a multiple of the Casimir (with coefficient in
/// the tower).
pub fn descent_defect_is_invariant(s: &Tensor2) -> bool {
    let defect = s.sub(&s.star());
    let omega = casimir(&s.spec, s.n);
    let key = [GlIndex::new(1, 2), GlIndex::new(2, 1)];
    let c = defect.coeff(&key);
    defect == omega.scale(&c)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q() -> SpecRef {
        TowerSpec::rationals()
    }

    fn u(n: usize, i: usize, j: usize) -> GlElem {
        GlElem::unit(&q(), n, i, j)
    }

    #[test]
    fn bracket_examples() {
        let h = GlElem::simple_coroot(&q(), 2, 1);
        assert_eq!(bracket(&u(2, 1, 2), &u(2, 2, 1)), h);
        assert_eq!(bracket(&h, &u(2, 1, 2)), u(2, 1, 2).scale_rat(&rat(2)));
        let x = u(3, 1, 2).add(&u(3, 3, 1));
        assert!(bracket(&x, &x).is_zero());
    }

    #[test]
    fn casimir_n2() {
        let h = GlElem::simple_coroot(&q(), 2, 1);
        let want = Tensor2::tensor(&u(2, 1, 2), &u(2, 2, 1))
            .add(&Tensor2::tensor(&u(2, 2, 1), &u(2, 1, 2)))
            .add(&Tensor2::tensor(&h, &h).scale_rat(&ratio(1, 2)));
        assert_eq!(casimir(&q(), 2), want);
        assert_eq!(casimir(&q(), 2).cartan_part(), Tensor2::tensor(&h, &h).scale_rat(&ratio(1, 2)));
        let c3 = casimir(&q(), 3);
        assert_eq!(c3.swap(), c3);
    }

    #[test]
    fn casimir_is_invariant() {
        let x = MatK::diag_rational(&q(), &[rat(1), rat(2)]);
        assert_eq!(ad_tensor(&x, &casimir(&q(), 2)).unwrap(), casimir(&q(), 2));
        for a in sl_basis(&q(), 3) {
            assert!(coboundary(&casimir(&q(), 3), &a).is_zero());
        }
    }

    #[test]
    fn rdj_n2() {
        let h = GlElem::simple_coroot(&q(), 2, 1);
        let want = Tensor2::tensor(&h, &h)
            .scale_rat(&ratio(1, 4))
            .add(&Tensor2::tensor(&u(2, 1, 2), &u(2, 2, 1)));
        assert_eq!(rdj(&q(), 2), want);
        for n in 2..=3 {
            let r = rdj(&q(), n);
            assert_eq!(r.add(&r.swap()), casimir(&q(), n));
        }
        assert!(cyb(&rdj(&q(), 2)).is_zero());
        assert!(cyb(&rdj(&q(), 3)).is_zero());
    }

    #[test]
    fn cyb_small_cases() {
        // every bracket among the legs of E12⊗E12 vanishes
        let e = u(2, 1, 2);
        assert!(cyb(&Tensor2::tensor(&e, &e)).is_zero());
        assert!(cyb(&Tensor2::zero(&q(), 2)).is_zero());
        // E12⊗E21 alone: only the middle term survives
        let t = cyb(&Tensor2::tensor(&e, &u(2, 2, 1)));
        let h = GlElem::simple_coroot(&q(), 2, 1).neg();
        assert_eq!(t, Tensor3::pure([&e, &h, &u(2, 2, 1)]));
    }

    #[test]
    fn coboundary_examples() {
        let r = rdj(&q(), 2);
        let h = GlElem::simple_coroot(&q(), 2, 1);
        assert!(coboundary(&r, &h).is_zero());
        let e = u(2, 1, 2);
        let want = Tensor2::tensor(&h, &e).sub(&Tensor2::tensor(&e, &h)).scale_rat(&ratio(1, 2));
        assert_eq!(coboundary(&r, &e), want);
        assert!(coboundary(&casimir(&q(), 2), &e).is_zero());
    }

    #[test]
    fn cobracket_axioms() {
        let rep = check_cobracket_axioms(&rdj(&q(), 2), 2);
        assert!(rep.passed(), "{rep:?}");
        assert!(check_cobracket_axioms(&casimir(&q(), 2), 2).passed());
        let bare = Tensor2::tensor(&u(2, 1, 2), &u(2, 2, 1));
        let rep = check_cobracket_axioms(&bare, 2);
        assert!(rep.cocycle);
        assert!(!rep.co_jacobi);
    }

    #[test]
    fn adjoint_examples() {
        let t = Tensor2::tensor(&u(2, 1, 2), &u(2, 2, 1));
        assert_eq!(ad_tensor(&MatK::identity(&q(), 2), &t).unwrap(), t);
        let x = MatK::diag_rational(&q(), &[rat(2), rat(1)]);
        assert_eq!(ad_tensor(&x, &t).unwrap(), t);
        let single = Tensor2::tensor(&u(2, 1, 2), &u(2, 1, 1));
        assert_eq!(ad_tensor(&x, &single).unwrap(), single.scale_rat(&rat(2)));
        let z = MatK::zero(&q(), 2);
        assert_eq!(ad_tensor(&z, &t), Err(LieError::Singular));
    }

    #[test]
    fn su_basis_n2() {
        let k = TowerSpec::quadratic(&rat(-1)).unwrap();
        let s = TowerElem::sqrt_generator(&k, 0);
        let (plus, minus) = su_basis(2, &s);
        let h = GlElem::simple_coroot(&k, 2, 1);
        let e = GlElem::unit(&k, 2, 1, 2);
        let f = GlElem::unit(&k, 2, 2, 1);
        assert_eq!(plus, vec![h.scale(&s), e.sub(&f), e.add(&f).scale(&s)]);
        for v in &plus {
            assert_eq!(v.star(), v.neg());
        }
        for (i, x) in plus.iter().enumerate() {
            for (j, y) in minus.iter().enumerate() {
                let want = if i == j { rat(1) } else { rat(0) };
                assert_eq!(manin_pairing(x, y, &s).unwrap(), want);
            }
            assert_eq!(manin_pairing(x, x, &s).unwrap(), rat(0));
        }
        for y in &minus {
            assert_eq!(manin_pairing(y, y, &s).unwrap(), rat(0));
        }
        let quarter = h.scale_rat(&ratio(1, 8));
        assert_eq!(manin_pairing(&h.scale(&s), &quarter, &s).unwrap(), rat(1));
    }

    #[test]
    fn manin_report_components() {
        let rep = verify_manin_and_r(2, &rat(-1)).unwrap();
        assert!(rep.isotropic_plus && rep.isotropic_minus && rep.duality && rep.nondegenerate);
        assert!(rep.matches_scaled_swap);
        let k = TowerSpec::quadratic(&rat(5)).unwrap();
        let s = TowerElem::sqrt_generator(&k, 0);
        let (plus, mut minus) = su_basis(2, &s);
        minus[1] = minus[1].scale_rat(&rat(2));
        let rep = verify_manin_with_bases(2, &s, &plus, &minus).unwrap();
        assert!(!rep.duality);
    }

    #[test]
    fn real_descent_of_rdj() {
        let k = TowerSpec::quadratic(&rat(5)).unwrap();
        let s = TowerElem::sqrt_generator(&k, 0);
        let r = rdj(&k, 3).scale(&s);
        let (plus, _) = su_basis(3, &s);
        assert!(coboundary_is_real(&r, &plus));
        assert!(descent_defect_is_invariant(&r));
        assert!(!coboundary_is_real(&rdj(&k, 3), &plus));
    }
}
