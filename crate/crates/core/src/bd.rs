//! Belavin–Drinfeld data for sl(n): admissible triples, the r-matrices they
//! define, and the diagram involution `s(i) = n − i`.

use std::collections::{BTreeMap, BTreeSet};

use num::Zero;
use thiserror::Error;

use crate::field::{rat, ratio, Rational, SpecRef, TowerElem, TowerSpec};
use crate::lie::{ad_tensor, casimir, cyb, GlElem, GlIndex, LieError, Tensor2};
use crate::linalg;
use crate::matrix::MatK;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum BdError {
    #[error("invalid admissible triple: {0}")]
    InvalidTriple(String),
    #[error("the Cartan constraints have no solution")]
    Infeasible,
    #[error("expected {expected} skew parameters, got {got}")]
    ParamCount { expected: usize, got: usize },
    #[error("classical Yang-Baxter equation fails for the assembled r-matrix")]
    CybFailure,
}

/// `(Γ1, Γ2, τ)` on the simple roots `1..n-1` of sl(n).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AdmissibleTriple {
    pub n: usize,
    pub gamma1: BTreeSet<usize>,
    pub gamma2: BTreeSet<usize>,
    pub tau: BTreeMap<usize, usize>,
}

impl AdmissibleTriple {
    /// The empty triple.
    pub fn trivial(n: usize) -> Self {
        AdmissibleTriple {
            n,
            gamma1: BTreeSet::new(),
            gamma2: BTreeSet::new(),
            tau: BTreeMap::new(),
        }
    }

    /// Builds `Γ1`, `Γ2` from the pairs `(α, τ(α))`.
    pub fn from_pairs(n: usize, pairs: &[(usize, usize)]) -> Self {
        AdmissibleTriple {
            n,
            gamma1: pairs.iter().map(|p| p.0).collect(),
            gamma2: pairs.iter().map(|p| p.1).collect(),
            tau: pairs.iter().copied().collect(),
        }
    }

    pub fn is_trivial(&self) -> bool {
        self.gamma1.is_empty()
    }

    /// Reason the triple is not admissible, if any.
    pub fn check(&self) -> Result<(), String> {
        if self.n < 2 {
            return Err("n must be at least 2".into());
        }
        let in_range = |i: &usize| (1..self.n).contains(i);
        if !self.gamma1.iter().chain(&self.gamma2).all(in_range) {
            return Err(format!("simple roots must lie in 1..{}", self.n - 1));
        }
        let keys: BTreeSet<usize> = self.tau.keys().copied().collect();
        let vals: BTreeSet<usize> = self.tau.values().copied().collect();
        if keys != self.gamma1 || vals != self.gamma2 || vals.len() != keys.len() {
            return Err("tau is not a bijection from gamma1 to gamma2".into());
        }
        for &i in &self.gamma1 {
            for &j in &self.gamma1 {
                let adj = i.abs_diff(j) == 1;
                let adj_img = self.tau[&i].abs_diff(self.tau[&j]) == 1;
                if adj != adj_img {
                    return Err(format!("tau does not preserve adjacency of {i} and {j}"));
                }
            }
        }
        for &i in &self.gamma1 {
            let mut cur = i;
            let mut escaped = false;
            for _ in 0..=self.gamma1.len() {
                cur = self.tau[&cur];
                if !self.gamma1.contains(&cur) {
                    escaped = true;
                    break;
                }
            }
            if !escaped {
                return Err(format!("tau is not nilpotent on {i}"));
            }
        }
        Ok(())
    }
}

/// Bijection, isometry and nilpotency.
pub fn validate_triple(t: &AdmissibleTriple) -> bool {
    t.check().is_ok()
}

fn q() -> SpecRef {
    TowerSpec::rationals()
}

/// Image under the Lie homomorphism extending `E_{m,m+1} ↦ E_{τm,τm+1}` and
/// `E_{m+1,m} ↦ E_{τm+1,τm}` of the unit `E_ij` whose root segment `i..j-1`
/// (or `j..i-1`) lies in `Γ1`.
fn theta(t: &AdmissibleTriple, i: usize, j: usize) -> GlElem {
    let (lo, hi) = (i.min(j), i.max(j));
    debug_assert!((lo..hi).all(|m| t.gamma1.contains(&m)));
    let n = t.n;
    if hi == lo + 1 {
        let m = t.tau[&lo];
        return if i < j {
            GlElem::unit(&q(), n, m, m + 1)
        } else {
            GlElem::unit(&q(), n, m + 1, m)
        };
    }
    if i < j {
        // E_ij = [E_{i,i+1}, E_{i+1,j}]
        crate::lie::bracket(&theta(t, i, i + 1), &theta(t, i + 1, j))
    } else {
        // E_ji = [E_{j,i+1}, E_{i+1,i}] with roles renamed
        crate::lie::bracket(&theta(t, i, j + 1), &theta(t, j + 1, j))
    }
}

/// The single unit (with sign) of an element known to be `±E_ab`.
fn as_signed_unit(e: &GlElem) -> (GlIndex, TowerElem) {
    let mut it = e.terms();
    let (k, c) = it.next().expect("nonzero root vector");
    assert!(it.next().is_none(), "root vector is a single unit");
    (k, c.clone())
}

/// `Σ_{α>0} e_α⊗e_{−α} + Σ_α Σ_{k≥1} e_α ∧ θ^k(e_{−α})`, the second sum over
/// positive roots in the span of `Γ1` while `θ^k` stays defined.
pub fn build_r1(t: &AdmissibleTriple) -> Result<Tensor2, BdError> {
    t.check().map_err(BdError::InvalidTriple)?;
    let n = t.n;
    let spec = q();
    let mut r = Tensor2::zero(&spec, n);
    for i in 1..=n {
        for j in i + 1..=n {
            let ea = GlElem::unit(&spec, n, i, j);
            r = r.add(&Tensor2::tensor(&ea, &GlElem::unit(&spec, n, j, i)));
            // E_ji at the current stage of the orbit, tracked with its sign
            let mut cur = GlElem::unit(&spec, n, j, i);
            loop {
                let (k, c) = as_signed_unit(&cur);
                let (a, b) = (k.i as usize, k.j as usize);
                if !(b..a).all(|m| t.gamma1.contains(&m)) {
                    break;
                }
                cur = theta(t, a, b).scale(&c);
                r = r.add(&Tensor2::wedge(&ea, &cur));
            }
        }
    }
    Ok(r)
}

/// Solutions `r0 = ½Ω_0 + Σ_{i<j} c_ij·(H_i⊗H_j − H_j⊗H_i)` of the Cartan
/// constraints, `H_i` the simple coroots: a particular solution (free
/// parameters 0) and a basis of the homogeneous skew solutions.
#[derive(Debug, Clone)]
pub struct R0Solution {
    pub particular: Tensor2,
    pub homogeneous: Vec<Tensor2>,
}

fn coroot_wedge(n: usize, i: usize, j: usize) -> Tensor2 {
    let hi = GlElem::simple_coroot(&q(), n, i);
    let hj = GlElem::simple_coroot(&q(), n, j);
    Tensor2::wedge(&hi, &hj)
}

/// `R[p][m]` = coefficient of `E_pp⊗E_mm`.
fn cartan_matrix(t: &Tensor2) -> Vec<Vec<Rational>> {
    let n = t.n();
    let mut m = vec![vec![Rational::zero(); n + 2]; n + 2];
    for ([a, b], c) in t.terms() {
        if a.is_diagonal() && b.is_diagonal() {
            m[a.i as usize][b.i as usize] = c.as_rational().expect("rational Cartan tensor");
        }
    }
    m
}

/// For `α_a ∈ Γ1` with `τ(α_a) = α_t`, the coefficient of `E_mm` in
/// `(α_t⊗1 + 1⊗α_a)(r0)`, for each `m`.
fn constraint_values(t: &AdmissibleTriple, r: &[Vec<Rational>], a: usize) -> Vec<Rational> {
    let tt = t.tau[&a];
    (1..=t.n)
        .map(|m| &r[tt][m] - &r[tt + 1][m] + &r[m][a] - &r[m][a + 1])
        .collect()
}

pub fn solve_r0(t: &AdmissibleTriple) -> Result<R0Solution, BdError> {
    t.check().map_err(BdError::InvalidTriple)?;
    let n = t.n;
    let half = casimir(&q(), n).cartan_part().scale_rat(&ratio(1, 2));
    let pairs: Vec<(usize, usize)> = (1..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).collect();
    let basis: Vec<Tensor2> = pairs.iter().map(|&(i, j)| coroot_wedge(n, i, j)).collect();
    let base = cartan_matrix(&half);
    let cols: Vec<Vec<Vec<Rational>>> = basis.iter().map(cartan_matrix).collect();

    let mut a_rows = Vec::new();
    let mut b = Vec::new();
    for &a in &t.gamma1 {
        let rhs = constraint_values(t, &base, a);
        let per_col: Vec<Vec<Rational>> = cols.iter().map(|c| constraint_values(t, c, a)).collect();
        for m in 0..n {
            a_rows.push(per_col.iter().map(|v| v[m].clone()).collect::<Vec<_>>());
            b.push(-rhs[m].clone());
        }
    }
    let sol = linalg::solve_affine(&a_rows, &b, basis.len()).ok_or(BdError::Infeasible)?;
    let combine = |coeffs: &[Rational]| {
        basis
            .iter()
            .zip(coeffs)
            .fold(Tensor2::zero(&q(), n), |acc, (w, c)| acc.add(&w.scale_rat(c)))
    };
    Ok(R0Solution {
        particular: half.add(&combine(&sol.particular)),
        homogeneous: sol.kernel.iter().map(|k| combine(k)).collect(),
    })
}

/// Residual of the Cartan constraints for a candidate `r0`; all zero for a
/// solution.
pub fn r0_residuals(t: &AdmissibleTriple, r0: &Tensor2) -> Vec<Rational> {
    let m = cartan_matrix(r0);
    t.gamma1.iter().flat_map(|&a| constraint_values(t, &m, a)).collect()
}

/// `r_BD = r0 + r1` with its pieces.
#[derive(Debug, Clone)]
pub struct BDMatrix {
    pub triple: AdmissibleTriple,
    pub r0: Tensor2,
    pub r1: Tensor2,
}

impl BDMatrix {
    pub fn r(&self) -> Tensor2 {
        self.r0.add(&self.r1)
    }
}

/// Assembles `r0` (particular solution plus `Σ params_k·homogeneous_k`) and
/// `r1`, and checks the classical Yang–Baxter equation.
pub fn build_rbd(t: &AdmissibleTriple, skew_params: &[Rational]) -> Result<BDMatrix, BdError> {
    let sol = solve_r0(t)?;
    if sol.homogeneous.len() != skew_params.len() {
        return Err(BdError::ParamCount {
            expected: sol.homogeneous.len(),
            got: skew_params.len(),
        });
    }
    let r0 = sol
        .homogeneous
        .iter()
        .zip(skew_params)
        .fold(sol.particular.clone(), |acc, (h, c)| acc.add(&h.scale_rat(c)));
    let r1 = build_r1(t)?;
    let m = BDMatrix {
        triple: t.clone(),
        r0,
        r1,
    };
    if !cyb(&m.r()).is_zero() {
        return Err(BdError::CybFailure);
    }
    Ok(m)
}

/// `Ad_M ⊗ Ad_M` fixes `r`. The tensor is moved into `M`'s tower first.
pub fn centralizes(m: &MatK, r: &Tensor2) -> Result<bool, LieError> {
    let r = if r.spec() == m.spec() { r.clone() } else { r.embed(m.spec())? };
    Ok(ad_tensor(m, &r)? == r)
}

/// `s(i) = n − i` preserves `Γ1` and `Γ2` and commutes with `τ`.
pub fn s_compatibility(t: &AdmissibleTriple) -> bool {
    let s = |i: usize| t.n - i;
    let keeps = |g: &BTreeSet<usize>| g.iter().map(|&i| s(i)).collect::<BTreeSet<_>>() == *g;
    keeps(&t.gamma1) && keeps(&t.gamma2) && t.tau.iter().all(|(&i, &ti)| t.tau.get(&s(i)) == Some(&s(ti)))
}

/// `E_ij ↦ E_{n+1-i, n+1-j}` on both legs.
pub fn ad_s(t: &Tensor2) -> Tensor2 {
    let n = t.n() as u16;
    let f = |g: GlIndex| GlIndex::new(n + 1 - g.i, n + 1 - g.j);
    Tensor2::from_terms(t.spec(), t.n(), t.terms().map(|([a, b], c)| ([f(*a), f(*b)], c.clone())))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RealityMode {
    Quadratic,
    Basic,
    Twisted,
}

/// Quadratic: `conj(r_s) = −r_s` with `r_s = r0 − ½Ω_0`.
/// Basic and twisted: `conj(r0) = (Ad_S⊗Ad_S)(r0)`.
pub fn check_r0_reality(r0: &Tensor2, mode: RealityMode) -> bool {
    match mode {
        RealityMode::Quadratic => {
            let half = casimir(r0.spec(), r0.n()).cartan_part().scale_rat(&ratio(1, 2));
            let rs = r0.sub(&half);
            rs.conj() == rs.scale_rat(&rat(-1))
        }
        RealityMode::Basic | RealityMode::Twisted => r0.conj() == ad_s(r0),
    }
}
