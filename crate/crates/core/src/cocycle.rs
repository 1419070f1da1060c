//! Belavin–Drinfeld cocycles for su(n): the diagonal family `X*X = D`, the
//! anti-diagonal family `X*X = S·D`, and the twisted family
//! `Jᵀ Q* Q J = S·D`, together with the construction of diagonal cocycles
//! from norm-closed sets and their classification over Q.

use num::{One, Signed, Zero};
use thiserror::Error;

use crate::arith;
use crate::bd::{centralizes, check_r0_reality, s_compatibility, BDMatrix, RealityMode};
use crate::field::{is_norm_from_quadratic, is_square_rational, rat, FieldError, Rational, SpecRef, TowerElem, TowerSpec, Verdict};
use crate::lie::LieError;
use crate::matrix::{build_j, build_s, MatError, MatK};
use crate::normeq::{norm_witness, solve_norm_equation_in, Budget, NormSolution};
use crate::quaternion::{Place, QuatAlg};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CocycleError {
    #[error("matrix is singular")]
    Singular,
    #[error("not a cocycle: entry ({row}, {col}) of the product is {entry}")]
    NotCocycle { row: usize, col: usize, entry: String },
    #[error("the diagonal entries are not norm-closed")]
    NotClosed,
    #[error("the solver budget ran out before a nesting order was found")]
    NestingUndecided,
    #[error("no ordering satisfies the stage equations")]
    NoPermutationFound,
    #[error("zero pivot x_i^(i+1) encountered; the block is not minimal")]
    InternalZero,
    #[error("the norm decision is outside the rational procedure or over budget")]
    Undecided,
    #[error("the admissible triple is not compatible with the anti-diagonal family: {0}")]
    TripleIncompatible(String),
    #[error("invalid twist: {0}")]
    InvalidTwist(String),
    #[error("λ² does not lie in the base field")]
    Unclassifiable,
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("entry {0} is negative, but X*X is positive definite when d < 0")]
    NegativeEntry(usize),
    #[error("constructed matrix failed re-verification")]
    VerificationFailed,
    #[error(transparent)]
    Field(#[from] FieldError),
    #[error(transparent)]
    Lie(#[from] LieError),
}

impl From<MatError> for CocycleError {
    fn from(e: MatError) -> Self {
        match e {
            MatError::Singular => CocycleError::Singular,
            MatError::DimMismatch(a, b) => CocycleError::InvalidInput(format!("dimension mismatch: {a} vs {b}")),
            MatError::InvalidTwist(s) => CocycleError::InvalidTwist(s),
            MatError::Field(f) => CocycleError::Field(f),
        }
    }
}

/// `d` with `K = Q(√d)`, when the tower is exactly one conjugated generator.
pub fn quadratic_d(spec: &SpecRef) -> Option<Rational> {
    (spec.generators().len() == 1 && spec.conj_index() == Some(0))
        .then(|| Rational::from_integer(spec.generators()[0].clone()))
}

/// `X` together with the diagonal `D_X = X*X`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DiagCocycle {
    pub x: MatK,
    pub dx: MatK,
}

impl DiagCocycle {
    pub fn n(&self) -> usize {
        self.x.n()
    }

    /// Diagonal of `D_X` as rationals, when it is rational.
    pub fn diag_rationals(&self) -> Option<Vec<Rational>> {
        self.dx.diagonal().iter().map(TowerElem::as_rational).collect()
    }
}

fn not_cocycle(m: &MatK, i: usize, j: usize) -> CocycleError {
    CocycleError::NotCocycle {
        row: i + 1,
        col: j + 1,
        entry: m.get(i, j).to_string(),
    }
}

/// Accepts `X` when `X*X` is diagonal with conjugation-fixed entries.
pub fn is_diag_cocycle(x: &MatK) -> Result<DiagCocycle, CocycleError> {
    if x.det().is_zero() {
        return Err(CocycleError::Singular);
    }
    let p = x.star().mul(x);
    if let Some((i, j)) = p.off_diagonal_entry() {
        return Err(not_cocycle(&p, i, j));
    }
    if let Some(i) = (0..p.n()).find(|&i| !p.get(i, i).is_conj_fixed()) {
        return Err(not_cocycle(&p, i, i));
    }
    Ok(DiagCocycle { x: x.clone(), dx: p })
}

fn norm_verdict(c: &TowerElem, spec: &SpecRef) -> Result<Verdict, CocycleError> {
    match (quadratic_d(spec), c.as_rational()) {
        (Some(d), Some(q)) => Ok(is_norm_from_quadratic(&q, &d)?),
        _ => Ok(Verdict::Undecided),
    }
}

/// Cohomologous iff `(D_A)_ii / (D_B)_ii ∈ N(K*)` for every `i`.
pub fn cohomologous_diag(a: &DiagCocycle, b: &DiagCocycle) -> Result<Verdict, CocycleError> {
    if a.n() != b.n() || a.x.spec() != b.x.spec() {
        return Err(CocycleError::InvalidInput("cocycles over different data".into()));
    }
    let mut v = Verdict::True;
    for (p, q) in a.dx.diagonal().iter().zip(b.dx.diagonal()) {
        v = v.and(norm_verdict(&p.try_div(&q)?, a.x.spec())?);
        if v == Verdict::False {
            break;
        }
    }
    Ok(v)
}

/// As [`cohomologous_diag`] on the diagonals `D_A`, `D_B` over `Q(√d)`.
pub fn cohomologous_diagonals(a: &[Rational], b: &[Rational], d: &Rational) -> Result<Verdict, CocycleError> {
    if a.len() != b.len() {
        return Err(CocycleError::InvalidInput(format!("lengths {} and {} differ", a.len(), b.len())));
    }
    let mut v = Verdict::True;
    for (p, q) in a.iter().zip(b) {
        if p.is_zero() || q.is_zero() {
            return Err(FieldError::NonzeroRequired.into());
        }
        v = v.and(is_norm_from_quadratic(&(p / q), d)?);
        if v == Verdict::False {
            break;
        }
    }
    Ok(v)
}

fn product(ds: &[Rational]) -> Rational {
    ds.iter().fold(Rational::one(), |p, x| p * x)
}

/// The product of `ds` is a norm from `Q(√d)`.
pub fn is_norm_closed(ds: &[Rational], d: &Rational) -> Result<Verdict, FieldError> {
    if ds.iter().any(Zero::is_zero) {
        return Err(FieldError::NonzeroRequired);
    }
    is_norm_from_quadratic(&product(ds), d)
}

/// An ordering `σ` of the entries with witnesses `(x_i, y_i)` for
/// `N(x_i) + N(y_i)·∏_{k<i} d_σ(k) = d_σ(i)` (the first stage reads
/// `N(x_1) + N(y_1) = d_σ(1)`).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Nesting {
    /// 0-based positions into the input list.
    pub sigma: Vec<usize>,
    pub witnesses: Vec<(TowerElem, TowerElem)>,
}

const EXHAUSTIVE_LIMIT: usize = 8;

/// Lexicographic next permutation; false after the last one.
fn next_permutation(p: &mut [usize]) -> bool {
    let Some(i) = (1..p.len()).rev().find(|&i| p[i - 1] < p[i]) else {
        return false;
    };
    let j = (i..p.len()).rev().find(|&j| p[j] > p[i - 1]).expect("successor exists");
    p.swap(i - 1, j);
    p[i..].reverse();
    true
}

enum Stage<T> {
    Done(T),
    Blocked,
    Undecided,
}

fn nesting_for(order: &[usize], ds: &[Rational], k: &SpecRef, budget: &Budget) -> Result<Stage<Vec<(TowerElem, TowerElem)>>, CocycleError> {
    let mut partial = Rational::one();
    let mut out = Vec::new();
    for &i in order {
        match solve_norm_equation_in(&partial, &ds[i], k, budget)? {
            NormSolution::Solved { u, v } => out.push((u, v)),
            NormSolution::Obstructed(_) => return Ok(Stage::Blocked),
            NormSolution::Undecided => return Ok(Stage::Undecided),
        }
        partial *= &ds[i];
    }
    Ok(Stage::Done(out))
}

/// Searches orderings (all of them up to eight entries, greedily beyond)
/// for which every stage equation is solvable.
pub fn nesting_witness(ds: &[Rational], d: &Rational, budget: &Budget) -> Result<Nesting, CocycleError> {
    if ds.iter().any(Zero::is_zero) {
        return Err(FieldError::NonzeroRequired.into());
    }
    let k = TowerSpec::quadratic(d)?;
    let mut undecided = false;
    if ds.len() <= EXHAUSTIVE_LIMIT {
        let mut order: Vec<usize> = (0..ds.len()).collect();
        loop {
            match nesting_for(&order, ds, &k, budget)? {
                Stage::Done(w) => return Ok(Nesting { sigma: order, witnesses: w }),
                Stage::Undecided => undecided = true,
                Stage::Blocked => {}
            }
            if !next_permutation(&mut order) {
                break;
            }
        }
    } else {
        let mut remaining: Vec<usize> = (0..ds.len()).collect();
        let mut order = Vec::new();
        let mut witnesses = Vec::new();
        let mut partial = Rational::one();
        while !remaining.is_empty() {
            let mut picked = None;
            for (pos, &i) in remaining.iter().enumerate() {
                match solve_norm_equation_in(&partial, &ds[i], &k, budget)? {
                    NormSolution::Solved { u, v } => {
                        picked = Some((pos, u, v));
                        break;
                    }
                    NormSolution::Undecided => undecided = true,
                    NormSolution::Obstructed(_) => {}
                }
            }
            let Some((pos, u, v)) = picked else { break };
            let i = remaining.remove(pos);
            partial *= &ds[i];
            order.push(i);
            witnesses.push((u, v));
        }
        if remaining.is_empty() {
            return Ok(Nesting { sigma: order, witnesses });
        }
    }
    Err(if undecided {
        CocycleError::NestingUndecided
    } else {
        CocycleError::NoPermutationFound
    })
}

/// Partition into minimal closed subsets: repeatedly extract the first
/// closed subset of the remaining entries in size-then-lexicographic order.
/// Blocks hold 0-based positions.
pub fn closed_partition(ds: &[Rational], d: &Rational) -> Result<Vec<Vec<usize>>, CocycleError> {
    if is_norm_closed(ds, d)? != Verdict::True {
        return Err(CocycleError::NotClosed);
    }
    let mut remaining: Vec<usize> = (0..ds.len()).collect();
    let mut blocks = Vec::new();
    while !remaining.is_empty() {
        let m = remaining.len();
        let mut found = None;
        'size: for size in 1..=m {
            let mut comb: Vec<usize> = (0..size).collect();
            loop {
                let vals: Vec<Rational> = comb.iter().map(|&c| ds[remaining[c]].clone()).collect();
                if is_norm_closed(&vals, d)? == Verdict::True {
                    found = Some(comb.clone());
                    break 'size;
                }
                // next combination in lexicographic order
                let Some(i) = (0..size).rev().find(|&i| comb[i] < m - size + i) else {
                    break;
                };
                comb[i] += 1;
                for j in i + 1..size {
                    comb[j] = comb[j - 1] + 1;
                }
            }
        }
        let comb = found.expect("the remainder of a closed set is closed");
        let block: Vec<usize> = comb.iter().map(|&c| remaining[c]).collect();
        remaining.retain(|i| !block.contains(i));
        blocks.push(block);
    }
    Ok(blocks)
}

/// Hermitian pairing `(x, y) = Σ x_k·conj(y_k)`.
fn herm(x: &[TowerElem], y: &[TowerElem], k: &SpecRef) -> TowerElem {
    x.iter()
        .zip(y)
        .fold(TowerElem::zero(k), |s, (a, b)| &s + &(a * &b.conj()))
}

fn rational_of(x: &TowerElem) -> Rational {
    x.as_rational().expect("hermitian square is rational")
}

fn solve_stage(c: &Rational, e: &Rational, k: &SpecRef, budget: &Budget) -> Result<Stage<(TowerElem, TowerElem)>, CocycleError> {
    Ok(match solve_norm_equation_in(c, e, k, budget)? {
        NormSolution::Solved { u, v } => Stage::Done((u, v)),
        NormSolution::Obstructed(_) => Stage::Blocked,
        NormSolution::Undecided => Stage::Undecided,
    })
}

/// Rows `x_1, …, x_m ∈ K^m` with `(x_i, x_j) = δ_ij·d_i` for one minimal
/// closed block, in the given order.
fn build_block(ds: &[Rational], k: &SpecRef, budget: &Budget) -> Result<Stage<Vec<Vec<TowerElem>>>, CocycleError> {
    let m = ds.len();
    let zero = TowerElem::zero(k);
    if m == 1 {
        return Ok(match norm_witness(&ds[0], k) {
            Some(a) => Stage::Done(vec![vec![a]]),
            None => Stage::Blocked,
        });
    }
    let (a1, a2) = match solve_stage(&Rational::one(), &ds[0], k, budget)? {
        Stage::Done((u, v)) => {
            if v.is_zero() {
                (v, u)
            } else {
                (u, v)
            }
        }
        Stage::Blocked => return Ok(Stage::Blocked),
        Stage::Undecided => return Ok(Stage::Undecided),
    };
    if a2.is_zero() {
        return Err(CocycleError::InternalZero);
    }
    let mut first = vec![zero.clone(); m];
    first[0] = a1.clone();
    first[1] = a2.clone();
    let mut rows = vec![first];
    for i in 1..m {
        // w ⊥ x_1..x_i, supported on the first i+1 coordinates
        let prev = &rows[i - 1];
        let mut w = vec![zero.clone(); m];
        if i == 1 {
            w[0] = -a2.conj();
            w[1] = a1.conj();
        } else {
            let s = prev[..i].iter().fold(TowerElem::zero(k), |acc, x| &acc + &x.norm());
            w[..i].clone_from_slice(&prev[..i]);
            let last = prev[i].conj();
            if last.is_zero() {
                return Err(CocycleError::InternalZero);
            }
            w[i] = -&s.try_div(&last)?;
        }
        let c = rational_of(&herm(&w, &w, k));
        if c.is_zero() {
            return Err(CocycleError::InternalZero);
        }
        let e = &ds[i];
        if i + 1 == m {
            let Some(mu) = norm_witness(&(e / &c), k) else {
                return Ok(Stage::Blocked);
            };
            rows.push(w.iter().map(|x| &mu * x).collect());
        } else {
            let (a, mu) = match solve_stage(&c, e, k, budget)? {
                Stage::Done(p) => p,
                Stage::Blocked => return Ok(Stage::Blocked),
                Stage::Undecided => return Ok(Stage::Undecided),
            };
            if a.is_zero() {
                return Err(CocycleError::InternalZero);
            }
            let mut row: Vec<TowerElem> = w.iter().map(|x| &mu * x).collect();
            row[i + 1] = a;
            rows.push(row);
        }
    }
    Ok(Stage::Done(rows))
}

/// Builds `X ∈ GL(n, K)` with `X*X = diag(ds)` over `K = Q(√d)`.
///
/// The entries are split into minimal closed blocks. Within a block the
/// rows of `X*` are built one at a time: each new row is a multiple `μ` of
/// the unique direction orthogonal to the previous rows on their support,
/// extended by one fresh coordinate `a`, with `(μ, a)` solving a stage norm
/// equation. Orderings of a block are tried until every stage is solvable.
pub fn construct_cocycle(ds: &[Rational], d: &Rational, budget: &Budget) -> Result<DiagCocycle, CocycleError> {
    if ds.is_empty() {
        return Err(CocycleError::InvalidInput("empty diagonal".into()));
    }
    if ds.iter().any(Zero::is_zero) {
        return Err(FieldError::NonzeroRequired.into());
    }
    let k = TowerSpec::quadratic(d)?;
    if d.is_negative() {
        if let Some(i) = ds.iter().position(Signed::is_negative) {
            return Err(CocycleError::NegativeEntry(i + 1));
        }
    }
    let n = ds.len();
    let blocks = closed_partition(ds, d)?;
    let mut xstar = MatK::zero(&k, n);
    for block in &blocks {
        let mut order: Vec<usize> = (0..block.len()).collect();
        let mut undecided = false;
        let rows = loop {
            let vals: Vec<Rational> = order.iter().map(|&o| ds[block[o]].clone()).collect();
            match build_block(&vals, &k, budget)? {
                Stage::Done(rows) => break Some(rows),
                Stage::Undecided => undecided = true,
                Stage::Blocked => {}
            }
            if block.len() > EXHAUSTIVE_LIMIT || !next_permutation(&mut order) {
                break None;
            }
        };
        let Some(rows) = rows else {
            return Err(if undecided {
                CocycleError::NestingUndecided
            } else {
                CocycleError::NoPermutationFound
            });
        };
        // row r of the block belongs to entry block[order[r]]; its
        // coordinates fill the block's columns in the same order
        for (r, row) in rows.iter().enumerate() {
            for (c, x) in row.iter().enumerate() {
                xstar.set(block[order[r]], block[order[c]], x.clone());
            }
        }
    }
    let x = xstar.star();
    let dx = MatK::diag_rational(&k, ds);
    if x.star().mul(&x) != dx {
        return Err(CocycleError::VerificationFailed);
    }
    Ok(DiagCocycle { x, dx })
}

/// As [`construct_cocycle`] for a diagonal matrix over `Q(√d)`.
pub fn construct_cocycle_from_matrix(dmat: &MatK, budget: &Budget) -> Result<DiagCocycle, CocycleError> {
    let d = quadratic_d(dmat.spec()).ok_or_else(|| CocycleError::InvalidInput("expected a tower Q(√d)".into()))?;
    if let Some((i, j)) = dmat.off_diagonal_entry() {
        return Err(not_cocycle(dmat, i, j));
    }
    let ds: Option<Vec<Rational>> = dmat.diagonal().iter().map(TowerElem::as_rational).collect();
    let ds = ds.ok_or_else(|| CocycleError::InvalidInput("diagonal entries must be rational".into()))?;
    construct_cocycle(&ds, &d, budget)
}

/// Canonical representative of the class of `c` in `Q*/N(Q(√d)*)`: the
/// first of `1, −1, 2, −2, …` in the same class.
pub fn canonical_class(c: &Rational, d: &Rational) -> Result<Rational, FieldError> {
    if c.is_zero() {
        return Err(FieldError::NonzeroRequired);
    }
    // c·denom² is a class member, so the search ends by |numer·denom|
    let bound = (c.numer() * c.denom()).abs();
    let mut m = num::BigInt::one();
    while m <= bound {
        for s in [m.clone(), -m.clone()] {
            let cand = Rational::from_integer(s);
            if is_norm_from_quadratic(&(&cand / c), d)?.is_true() {
                return Ok(cand);
            }
        }
        m += 1;
    }
    unreachable!("c·denom² lies in the class of c")
}

/// Classes of the first `n − 1` diagonal entries of `D_X`; the last class
/// is determined by them and the determinant.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NormClassVector {
    pub classes: Vec<Rational>,
    pub determined: Rational,
}

pub fn norm_class_vector(a: &DiagCocycle) -> Result<NormClassVector, CocycleError> {
    let d = quadratic_d(a.x.spec()).ok_or(CocycleError::Undecided)?;
    let ds = a.diag_rationals().ok_or(CocycleError::Undecided)?;
    class_vector(&ds, &d)
}

/// Class vector of a diagonal `D_X` over `Q(√d)`.
pub fn class_vector(ds: &[Rational], d: &Rational) -> Result<NormClassVector, CocycleError> {
    if ds.is_empty() {
        return Err(CocycleError::InvalidInput("empty diagonal".into()));
    }
    let mut classes = ds
        .iter()
        .map(|x| canonical_class(x, d))
        .collect::<Result<Vec<_>, _>>()?;
    let determined = classes.pop().expect("n ≥ 1");
    Ok(NormClassVector { classes, determined })
}

/// `((d, d_1), …, (d, d_n))`.
pub fn quaternion_tuple(a: &DiagCocycle, d: &Rational) -> Result<Vec<QuatAlg>, CocycleError> {
    let ds = a.diag_rationals().ok_or(CocycleError::Undecided)?;
    quaternion_tuple_of(&ds, d)
}

pub fn quaternion_tuple_of(ds: &[Rational], d: &Rational) -> Result<Vec<QuatAlg>, CocycleError> {
    ds.iter()
        .cloned()
        .map(|x| QuatAlg::new(d.clone(), x).map_err(|e| CocycleError::InvalidInput(e.to_string())))
        .collect()
}

/// `X` with `X*X = S·D_X`; `dx` is the diagonal of `D_X`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AntiDiagCocycle {
    pub x: MatK,
    pub dx: Vec<TowerElem>,
    pub trivial_triple: bool,
}

/// Accepts `X` when `X*X = S·D` with `D` diagonal, invertible, in the
/// centralizer of `r_BD`, and `conj(d_i) = d_{n+1-i}`.
pub fn is_antidiag_cocycle(x: &MatK, rbd: &BDMatrix) -> Result<AntiDiagCocycle, CocycleError> {
    let t = &rbd.triple;
    if t.n != x.n() {
        return Err(CocycleError::InvalidInput(format!("triple for n = {}, matrix of size {}", t.n, x.n())));
    }
    if !s_compatibility(t) {
        return Err(CocycleError::TripleIncompatible("s does not commute with the triple".into()));
    }
    let r0 = rbd.r0.embed(x.spec())?;
    if !check_r0_reality(&r0, RealityMode::Basic) {
        return Err(CocycleError::TripleIncompatible("r0 fails the reality condition".into()));
    }
    if x.det().is_zero() {
        return Err(CocycleError::Singular);
    }
    let n = x.n();
    let dmat = build_s(x.spec(), n).mul(&x.star().mul(x));
    if let Some((i, j)) = dmat.off_diagonal_entry() {
        return Err(not_cocycle(&dmat, i, j));
    }
    let dx = dmat.diagonal();
    if let Some(i) = dx.iter().position(TowerElem::is_zero) {
        return Err(not_cocycle(&dmat, i, i));
    }
    if !t.is_trivial() && !centralizes(&dmat, &rbd.r())? {
        return Err(CocycleError::NotCocycle {
            row: 0,
            col: 0,
            entry: "D does not centralize r_BD".into(),
        });
    }
    if let Some(i) = (0..n).find(|&i| dx[i].conj() != dx[n - 1 - i]) {
        return Err(not_cocycle(&dmat, i, i));
    }
    Ok(AntiDiagCocycle {
        x: x.clone(),
        dx,
        trivial_triple: t.is_trivial(),
    })
}

/// Result of [`normalize_antidiag`]: `X' = X·D` with `X'*X' = rhs`, where
/// `rhs = S` for even `n` and `S·D(a)` (middle entry `a`) for odd `n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NormalizedAntiDiag {
    pub x: MatK,
    pub rhs: MatK,
    pub middle: Option<TowerElem>,
    /// Canonical class of the middle entry, when decidable over Q.
    pub class: Option<Rational>,
}

pub fn normalize_antidiag(a: &AntiDiagCocycle) -> Result<NormalizedAntiDiag, CocycleError> {
    if !a.trivial_triple {
        return Err(CocycleError::TripleIncompatible("normalization needs the trivial triple".into()));
    }
    let n = a.x.n();
    let spec = a.x.spec().clone();
    let scale: Vec<TowerElem> = (0..n)
        .map(|i| if 2 * (i + 1) <= n { a.dx[i].inv() } else { Ok(TowerElem::one(&spec)) })
        .collect::<Result<_, _>>()?;
    let x = a.x.mul(&MatK::diag(&spec, &scale));
    let rhs = x.star().mul(&x);
    let mut want = build_s(&spec, n);
    let middle = (n % 2 == 1).then(|| a.dx[n / 2].clone());
    if let Some(m) = &middle {
        want.set(n / 2, n / 2, m.clone());
    }
    if rhs != want {
        return Err(CocycleError::VerificationFailed);
    }
    let class = match (&middle, quadratic_d(&spec)) {
        (Some(m), Some(d)) => match m.as_rational() {
            Some(q) => Some(canonical_class(&q, &d)?),
            None => None,
        },
        _ => None,
    };
    Ok(NormalizedAntiDiag { x, rhs, middle, class })
}

/// Explicit anti-diagonal cocycle over `Q(i, √2, √d)` (conjugation on
/// `√d`): `X = Y/√2` where `Y_ii = Y_{i,n+1-i} = 1` for `i ≤ (n+1)/2` and
/// `Y_{i,n+1-i} = i`, `Y_ii = −i` below; for odd `n` the middle entry is
/// `√2`. Then `X*X = S`.
pub fn sqrt2_antidiag(n: usize, d: &Rational) -> Result<MatK, CocycleError> {
    if n == 0 {
        return Err(CocycleError::InvalidInput("n must be positive".into()));
    }
    let spec = TowerSpec::new(&[rat(-1), rat(2), d.clone()], Some(2))?;
    let i = TowerElem::sqrt_generator(&spec, 0);
    let r2 = TowerElem::sqrt_generator(&spec, 1);
    let one = TowerElem::one(&spec);
    let mut y = MatK::zero(&spec, n);
    for row in 1..=n {
        let anti = n + 1 - row;
        if row == anti {
            y.set(row - 1, row - 1, r2.clone());
        } else if 2 * row <= n + 1 {
            y.set(row - 1, row - 1, one.clone());
            y.set(row - 1, anti - 1, one.clone());
        } else {
            y.set(row - 1, anti - 1, i.clone());
            y.set(row - 1, row - 1, -&i);
        }
    }
    Ok(y.scale(&r2.inv()?))
}

/// `Q` with `Jᵀ Q* Q J = S·D_Q` over `K(√d')`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TwistedCocycle {
    pub q: MatK,
    pub j: MatK,
    pub dq: Vec<TowerElem>,
}

pub fn is_twisted_cocycle(q: &MatK, dprime: &Rational) -> Result<TwistedCocycle, CocycleError> {
    let n = q.n();
    if q.det().is_zero() {
        return Err(CocycleError::Singular);
    }
    let j = build_j(q.spec(), n, dprime)?;
    let ext = j.spec().clone();
    let qe = q.embed(&ext)?;
    let m = j.transpose().mul(&qe.star()).mul(&qe).mul(&j);
    let dmat = build_s(&ext, n).mul(&m);
    if let Some((r, c)) = dmat.off_diagonal_entry() {
        return Err(not_cocycle(&dmat, r, c));
    }
    let dq = dmat.diagonal();
    if let Some(i) = dq.iter().position(TowerElem::is_zero) {
        return Err(not_cocycle(&dmat, i, i));
    }
    Ok(TwistedCocycle { q: q.clone(), j, dq })
}

/// Every invertible 2×2 `Q` over `Q(√d)` with entries `a + b√d`,
/// `|a|, |b| ≤ height`, accepted by [`is_twisted_cocycle`].
pub fn search_twisted(d: &Rational, dprime: &Rational, height: i64) -> Result<Vec<MatK>, CocycleError> {
    let k = TowerSpec::quadratic(d)?;
    let vals: Vec<TowerElem> = (-height..=height)
        .flat_map(|a| (-height..=height).map(move |b| (a, b)))
        .map(|(a, b)| TowerElem::from_pair(&k, 0, rat(a), rat(b)))
        .collect();
    build_j(&k, 2, dprime)?;
    let mut out = Vec::new();
    for p in &vals {
        for q in &vals {
            for r in &vals {
                for s in &vals {
                    let m = MatK::from_rows(&k, vec![vec![p.clone(), q.clone()], vec![r.clone(), s.clone()]])?;
                    if m.det().is_zero() {
                        continue;
                    }
                    if is_twisted_cocycle(&m, dprime).is_ok() {
                        out.push(m);
                    }
                }
            }
        }
    }
    Ok(out)
}

/// Type of the Lie bialgebra structure `λ·r` according to `λ`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LambdaClass {
    /// `λ ∈ F*`.
    Basic,
    /// `λ ∈ F*·√d`.
    Quadratic,
    /// `λ² = d'` with `√d' ∉ K`.
    Twisted { dprime: Rational },
}

impl LambdaClass {
    pub fn name(&self) -> &'static str {
        match self {
            LambdaClass::Basic => "basic",
            LambdaClass::Quadratic => "quadratic",
            LambdaClass::Twisted { .. } => "twisted",
        }
    }
}

/// Classifies `λ` with `F = Q` and `K = Q(√d)`.
pub fn lambda_classify(lambda: &TowerElem, d: &Rational) -> Result<LambdaClass, CocycleError> {
    if lambda.is_zero() {
        return Err(CocycleError::InvalidInput("λ must be nonzero".into()));
    }
    if lambda.is_rational() {
        return Ok(LambdaClass::Basic);
    }
    let c = (lambda * lambda).as_rational().ok_or(CocycleError::Unclassifiable)?;
    if is_square_rational(&(&c * d)) {
        return Ok(LambdaClass::Quadratic);
    }
    if !is_square_rational(&c) {
        return Ok(LambdaClass::Twisted { dprime: c });
    }
    Err(CocycleError::Unclassifiable)
}

/// `P` with `P* · diag(e) · P = H` for a hermitian `H`, by congruence
/// elimination. Returns `(P, e)`.
pub fn hermitian_diagonalize(h: &MatK) -> Result<(MatK, Vec<Rational>), CocycleError> {
    if h.star() != *h {
        return Err(CocycleError::InvalidInput("matrix is not hermitian".into()));
    }
    let n = h.n();
    let spec = h.spec().clone();
    let mut m = h.clone();
    let mut t = MatK::identity(&spec, n);
    let apply = |m: &mut MatK, t: &mut MatK, g: &MatK| {
        *m = g.star().mul(m).mul(g);
        *t = t.mul(g);
    };
    for k in 0..n {
        if m.get(k, k).is_zero() {
            if let Some(j) = (k + 1..n).find(|&j| !m.get(j, j).is_zero()) {
                let mut p = MatK::identity(&spec, n);
                p.set(k, k, TowerElem::zero(&spec));
                p.set(j, j, TowerElem::zero(&spec));
                p.set(k, j, TowerElem::one(&spec));
                p.set(j, k, TowerElem::one(&spec));
                apply(&mut m, &mut t, &p);
            } else if let Some(j) = (k + 1..n).find(|&j| !m.get(k, j).is_zero()) {
                let mut candidates = vec![TowerElem::one(&spec)];
                if let Some(ci) = spec.conj_index() {
                    candidates.push(TowerElem::sqrt_generator(&spec, ci));
                }
                let mut done = false;
                for c in candidates {
                    let mut g = MatK::identity(&spec, n);
                    g.set(j, k, c);
                    let trial = g.star().mul(&m).mul(&g);
                    if !trial.get(k, k).is_zero() {
                        m = trial;
                        t = t.mul(&g);
                        done = true;
                        break;
                    }
                }
                if !done {
                    return Err(CocycleError::InvalidInput("cannot create a nonzero pivot".into()));
                }
            } else {
                return Err(CocycleError::Singular);
            }
        }
        let pivot = m.get(k, k).clone();
        for j in k + 1..n {
            if m.get(k, j).is_zero() {
                continue;
            }
            let f = m.get(k, j).try_div(&pivot)?;
            let mut g = MatK::identity(&spec, n);
            g.set(k, j, -f);
            apply(&mut m, &mut t, &g);
        }
    }
    debug_assert!(m.is_diagonal());
    let e: Option<Vec<Rational>> = m.diagonal().iter().map(TowerElem::as_rational).collect();
    let e = e.ok_or_else(|| CocycleError::InvalidInput("diagonal is not rational".into()))?;
    Ok((t.inverse()?, e))
}

/// `X` over `Q(√d)` with `X*X = H`, via [`hermitian_diagonalize`] and
/// [`construct_cocycle`].
pub fn realize_hermitian(h: &MatK, budget: &Budget) -> Result<MatK, CocycleError> {
    let d = quadratic_d(h.spec()).ok_or_else(|| CocycleError::InvalidInput("expected a tower Q(√d)".into()))?;
    let (p, e) = hermitian_diagonalize(h)?;
    let y = construct_cocycle(&e, &d, budget)?;
    let x = y.x.mul(&p);
    if x.star().mul(&x) != *h {
        return Err(CocycleError::VerificationFailed);
    }
    Ok(x)
}

/// The place witnessing that `c ∉ N(Q(√d)*)`, if any.
pub fn norm_obstruction_place(c: &Rational, d: &Rational) -> Option<Place> {
    crate::field::norm_obstruction(c, d)
}

/// Square-free integer representing the class of `q` in `Q*/Q*²`.
pub fn square_class(q: &Rational) -> num::BigInt {
    arith::squarefree_of_rational(q)
}
