//! Square matrices over a tower field with the conjugate-transpose involution.

use std::fmt;

use num::Zero;
use thiserror::Error;

use crate::field::{FieldError, Rational, SpecRef, TowerElem};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum MatError {
    #[error("matrix is singular")]
    Singular,
    #[error("dimension mismatch: {0} vs {1}")]
    DimMismatch(usize, usize),
    #[error("invalid twist: {0}")]
    InvalidTwist(String),
    #[error(transparent)]
    Field(#[from] FieldError),
}

/// Row-major n×n matrix; every entry shares `spec`.
#[derive(Clone, PartialEq, Eq)]
pub struct MatK {
    n: usize,
    spec: SpecRef,
    entries: Vec<TowerElem>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MatOp {
    Mul,
    Add,
    Inverse,
    Det,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum MatValue {
    Matrix(MatK),
    Scalar(TowerElem),
}

impl MatK {
    pub fn zero(spec: &SpecRef, n: usize) -> Self {
        MatK {
            n,
            spec: spec.clone(),
            entries: vec![TowerElem::zero(spec); n * n],
        }
    }

    pub fn identity(spec: &SpecRef, n: usize) -> Self {
        let mut m = Self::zero(spec, n);
        for i in 0..n {
            m.set(i, i, TowerElem::one(spec));
        }
        m
    }

    pub fn diag(spec: &SpecRef, d: &[TowerElem]) -> Self {
        let mut m = Self::zero(spec, d.len());
        for (i, x) in d.iter().enumerate() {
            m.set(i, i, x.clone());
        }
        m
    }

    pub fn diag_rational(spec: &SpecRef, d: &[Rational]) -> Self {
        let elems: Vec<TowerElem> = d.iter().map(|q| TowerElem::from_rational(spec, q.clone())).collect();
        Self::diag(spec, &elems)
    }

    pub fn from_rows(spec: &SpecRef, rows: Vec<Vec<TowerElem>>) -> Result<Self, MatError> {
        let n = rows.len();
        let mut entries = Vec::with_capacity(n * n);
        for r in rows {
            if r.len() != n {
                return Err(MatError::DimMismatch(n, r.len()));
            }
            for e in r {
                if e.spec() != spec {
                    return Err(MatError::Field(FieldError::SpecMismatch(
                        "matrix entry from another tower".into(),
                    )));
                }
                entries.push(e);
            }
        }
        Ok(MatK {
            n,
            spec: spec.clone(),
            entries,
        })
    }

    /// Convenience for rational matrices.
    pub fn from_rational_rows(spec: &SpecRef, rows: &[Vec<Rational>]) -> Result<Self, MatError> {
        Self::from_rows(
            spec,
            rows.iter()
                .map(|r| r.iter().map(|q| TowerElem::from_rational(spec, q.clone())).collect())
                .collect(),
        )
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn spec(&self) -> &SpecRef {
        &self.spec
    }

    /// Entry at 0-based `(i, j)`.
    pub fn get(&self, i: usize, j: usize) -> &TowerElem {
        &self.entries[i * self.n + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: TowerElem) {
        self.entries[i * self.n + j] = v;
    }

    pub fn rows(&self) -> Vec<Vec<TowerElem>> {
        self.entries.chunks(self.n.max(1)).map(|r| r.to_vec()).collect()
    }

    pub fn map(&self, f: impl Fn(&TowerElem) -> TowerElem) -> Self {
        MatK {
            n: self.n,
            spec: self.spec.clone(),
            entries: self.entries.iter().map(f).collect(),
        }
    }

    pub fn embed(&self, target: &SpecRef) -> Result<Self, MatError> {
        let entries = self.entries.iter().map(|e| e.embed(target)).collect::<Result<_, _>>()?;
        Ok(MatK {
            n: self.n,
            spec: target.clone(),
            entries,
        })
    }

    fn check(&self, other: &Self) -> Result<(), MatError> {
        if self.n != other.n {
            return Err(MatError::DimMismatch(self.n, other.n));
        }
        if self.spec != other.spec {
            return Err(FieldError::SpecMismatch("matrices over different towers".into()).into());
        }
        Ok(())
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self, MatError> {
        self.check(other)?;
        let n = self.n;
        let mut out = Self::zero(&self.spec, n);
        for i in 0..n {
            for k in 0..n {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..n {
                    let b = other.get(k, j);
                    if b.is_zero() {
                        continue;
                    }
                    let v = out.get(i, j) + &(a * b);
                    out.set(i, j, v);
                }
            }
        }
        Ok(out)
    }

    pub fn try_add(&self, other: &Self) -> Result<Self, MatError> {
        self.check(other)?;
        Ok(MatK {
            n: self.n,
            spec: self.spec.clone(),
            entries: self.entries.iter().zip(&other.entries).map(|(a, b)| a + b).collect(),
        })
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self, MatError> {
        self.check(other)?;
        Ok(MatK {
            n: self.n,
            spec: self.spec.clone(),
            entries: self.entries.iter().zip(&other.entries).map(|(a, b)| a - b).collect(),
        })
    }

    pub fn mul(&self, other: &Self) -> Self {
        self.try_mul(other).expect("matrix product")
    }

    pub fn scale(&self, c: &TowerElem) -> Self {
        self.map(|e| e * c)
    }

    pub fn transpose(&self) -> Self {
        let mut out = Self::zero(&self.spec, self.n);
        for i in 0..self.n {
            for j in 0..self.n {
                out.set(j, i, self.get(i, j).clone());
            }
        }
        out
    }

    pub fn conj(&self) -> Self {
        self.map(TowerElem::conj)
    }

    /// Conjugate transpose.
    pub fn star(&self) -> Self {
        self.conj().transpose()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(TowerElem::is_zero)
    }

    pub fn is_identity(&self) -> bool {
        (0..self.n).all(|i| (0..self.n).all(|j| if i == j { self.get(i, j).is_one() } else { self.get(i, j).is_zero() }))
    }

    /// First nonzero off-diagonal position, if any.
    pub fn off_diagonal_entry(&self) -> Option<(usize, usize)> {
        (0..self.n)
            .flat_map(|i| (0..self.n).map(move |j| (i, j)))
            .find(|&(i, j)| i != j && !self.get(i, j).is_zero())
    }

    pub fn is_diagonal(&self) -> bool {
        self.off_diagonal_entry().is_none()
    }

    pub fn diagonal(&self) -> Vec<TowerElem> {
        (0..self.n).map(|i| self.get(i, i).clone()).collect()
    }

    /// Determinant by Bareiss fraction-free elimination with row pivoting.
    pub fn det(&self) -> TowerElem {
        let n = self.n;
        if n == 0 {
            return TowerElem::one(&self.spec);
        }
        let mut m = self.rows();
        let mut sign = false;
        let mut prev = TowerElem::one(&self.spec);
        for k in 0..n.saturating_sub(1) {
            if m[k][k].is_zero() {
                match (k + 1..n).find(|&i| !m[i][k].is_zero()) {
                    Some(p) => {
                        m.swap(k, p);
                        sign = !sign;
                    }
                    None => return TowerElem::zero(&self.spec),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let num = &(&m[k][k] * &m[i][j]) - &(&m[i][k] * &m[k][j]);
                    m[i][j] = num.try_div(&prev).expect("Bareiss pivot is nonzero");
                }
                m[i][k] = TowerElem::zero(&self.spec);
            }
            prev = m[k][k].clone();
        }
        let d = m[n - 1][n - 1].clone();
        if sign {
            -d
        } else {
            d
        }
    }

    fn minor(&self, skip_r: usize, skip_c: usize) -> MatK {
        let n = self.n;
        let mut entries = Vec::with_capacity((n - 1) * (n - 1));
        for i in (0..n).filter(|&i| i != skip_r) {
            for j in (0..n).filter(|&j| j != skip_c) {
                entries.push(self.get(i, j).clone());
            }
        }
        MatK {
            n: n - 1,
            spec: self.spec.clone(),
            entries,
        }
    }

    pub fn inverse(&self) -> Result<Self, MatError> {
        let det = self.det();
        if det.is_zero() {
            return Err(MatError::Singular);
        }
        if self.n <= 4 {
            self.inverse_adjugate(&det)
        } else {
            self.inverse_elimination()
        }
    }

    fn inverse_adjugate(&self, det: &TowerElem) -> Result<Self, MatError> {
        let n = self.n;
        let inv_det = det.inv()?;
        if n == 1 {
            return Ok(MatK::diag(&self.spec, &[inv_det]));
        }
        let mut out = Self::zero(&self.spec, n);
        for i in 0..n {
            for j in 0..n {
                let c = self.minor(i, j).det();
                let c = if (i + j) % 2 == 1 { -c } else { c };
                out.set(j, i, &c * &inv_det);
            }
        }
        Ok(out)
    }

    fn inverse_elimination(&self) -> Result<Self, MatError> {
        let n = self.n;
        let mut a = self.rows();
        let mut b = Self::identity(&self.spec, n).rows();
        for c in 0..n {
            let p = (c..n).find(|&i| !a[i][c].is_zero()).ok_or(MatError::Singular)?;
            a.swap(c, p);
            b.swap(c, p);
            let inv = a[c][c].inv()?;
            for j in 0..n {
                a[c][j] = &a[c][j] * &inv;
                b[c][j] = &b[c][j] * &inv;
            }
            for i in 0..n {
                if i == c || a[i][c].is_zero() {
                    continue;
                }
                let f = a[i][c].clone();
                for j in 0..n {
                    a[i][j] = &a[i][j] - &(&f * &a[c][j]);
                    b[i][j] = &b[i][j] - &(&f * &b[c][j]);
                }
            }
        }
        MatK::from_rows(&self.spec, b)
    }

    /// `star(X)·X = I`.
    pub fn is_unitary(&self) -> bool {
        self.star().mul(self).is_identity()
    }
}

/// Cayley transform `(I − A)⁻¹(I + A)`; unitary whenever `star(A) = −A`.
pub fn cayley(a: &MatK) -> Result<MatK, MatError> {
    let id = MatK::identity(&a.spec, a.n);
    id.try_sub(a)?.inverse()?.try_mul(&id.try_add(a)?)
}

/// Dispatcher over the four matrix operations; `b` is required for the binary ones.
pub fn mat_arith(a: &MatK, b: Option<&MatK>, op: MatOp) -> Result<MatValue, MatError> {
    let missing = MatError::DimMismatch(a.n, 0);
    Ok(match op {
        MatOp::Mul => MatValue::Matrix(a.try_mul(b.ok_or(missing)?)?),
        MatOp::Add => MatValue::Matrix(a.try_add(b.ok_or(missing)?)?),
        MatOp::Inverse => MatValue::Matrix(a.inverse()?),
        MatOp::Det => MatValue::Scalar(a.det()),
    })
}

/// Anti-diagonal permutation matrix, `S_ij = 1` iff `i + j = n + 1`.
pub fn build_s(spec: &SpecRef, n: usize) -> MatK {
    let mut m = MatK::zero(spec, n);
    for i in 0..n {
        m.set(i, n - 1 - i, TowerElem::one(spec));
    }
    m
}

/// The twisting matrix over `spec(√d')`. Rows `i ≤ (n+1)/2` (1-based) carry 1
/// at columns `i` and `n+1-i`; later rows carry `-√d'` on the diagonal and
/// `√d'` on the anti-diagonal.
///
/// Fails when `√d'` already lies in the tower.
pub fn build_j(spec: &SpecRef, n: usize, dprime: &Rational) -> Result<MatK, MatError> {
    if dprime.is_zero() {
        return Err(MatError::InvalidTwist("d' must be nonzero".into()));
    }
    let ext = spec
        .extend(dprime)
        .map_err(|_| MatError::InvalidTwist(format!("√{dprime} already lies in the base field")))?;
    let root = TowerElem::sqrt_generator(&ext, ext.generators().len() - 1);
    // rescale when d' was not square-free: √d' = (√d')/√core · √core
    let root = root.scale(&sqrt_ratio(dprime, &ext.generators()[ext.generators().len() - 1]));
    let mut m = MatK::zero(&ext, n);
    for i in 1..=n {
        let a = n + 1 - i;
        if 2 * i <= n + 1 {
            m.set(i - 1, i - 1, TowerElem::one(&ext));
            m.set(i - 1, a - 1, TowerElem::one(&ext));
        } else {
            m.set(i - 1, a - 1, root.clone());
            m.set(i - 1, i - 1, -&root);
        }
    }
    Ok(m)
}

/// The rational `r > 0` with `r²·core = q`, for `q` in the square class of `core`.
pub(crate) fn sqrt_ratio(q: &Rational, core: &num::BigInt) -> Rational {
    let t = q / Rational::from_integer(core.clone());
    let num = crate::arith::exact_sqrt(t.numer()).expect("same square class");
    let den = crate::arith::exact_sqrt(t.denom()).expect("same square class");
    Rational::new(num, den)
}

impl fmt::Display for MatK {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for (i, r) in self.rows().iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            let cells: Vec<String> = r.iter().map(|e| e.to_string()).collect();
            write!(f, "[{}]", cells.join(", "))?;
        }
        f.write_str("]")
    }
}

impl fmt::Debug for MatK {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "MatK{self}")
    }
}
