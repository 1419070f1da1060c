//! Row reduction over Q.

use num::{One, Zero};

use crate::field::Rational;

/// Reduced row echelon form in place; returns the pivot columns.
pub fn rref(m: &mut [Vec<Rational>]) -> Vec<usize> {
    let rows = m.len();
    if rows == 0 {
        return Vec::new();
    }
    let cols = m[0].len();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        let inv = Rational::one() / &m[r][c];
        for x in m[r].iter_mut() {
            *x *= &inv;
        }
        for i in 0..rows {
            if i != r && !m[i][c].is_zero() {
                let f = m[i][c].clone();
                for j in c..cols {
                    let t = &f * &m[r][j];
                    m[i][j] -= t;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

pub fn rank(m: &[Vec<Rational>]) -> usize {
    let mut w = m.to_vec();
    rref(&mut w).len()
}

/// Solution set of `A x = b`: a particular solution with all free variables
/// set to zero, plus a basis of the null space of `A`.
#[derive(Debug, Clone, PartialEq)]
pub struct AffineSolution {
    pub particular: Vec<Rational>,
    pub kernel: Vec<Vec<Rational>>,
}

/// Returns `None` when the system is inconsistent.
pub fn solve_affine(a: &[Vec<Rational>], b: &[Rational], unknowns: usize) -> Option<AffineSolution> {
    assert_eq!(a.len(), b.len());
    let mut aug: Vec<Vec<Rational>> = a
        .iter()
        .zip(b)
        .map(|(row, bi)| {
            assert_eq!(row.len(), unknowns);
            let mut r = row.clone();
            r.push(bi.clone());
            r
        })
        .collect();
    let pivots = rref(&mut aug);
    if pivots.contains(&unknowns) {
        return None;
    }
    let mut particular = vec![Rational::zero(); unknowns];
    for (r, &c) in pivots.iter().enumerate() {
        particular[c] = aug[r][unknowns].clone();
    }
    let free: Vec<usize> = (0..unknowns).filter(|c| !pivots.contains(c)).collect();
    let kernel = free
        .iter()
        .map(|&f| {
            let mut v = vec![Rational::zero(); unknowns];
            v[f] = Rational::one();
            for (r, &c) in pivots.iter().enumerate() {
                v[c] = -aug[r][f].clone();
            }
            v
        })
        .collect();
    Some(AffineSolution { particular, kernel })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::rat;

    fn row(v: &[i64]) -> Vec<Rational> {
        v.iter().map(|&x| rat(x)).collect()
    }

    fn apply(a: &[Vec<Rational>], x: &[Rational]) -> Vec<Rational> {
        a.iter()
            .map(|r| r.iter().zip(x).fold(Rational::zero(), |s, (p, q)| s + p * q))
            .collect()
    }

    #[test]
    fn underdetermined_system() {
        let a = vec![row(&[1, 2, 3]), row(&[2, 4, 7])];
        let b = row(&[1, 3]);
        let s = solve_affine(&a, &b, 3).unwrap();
        assert_eq!(apply(&a, &s.particular), b);
        assert_eq!(s.kernel.len(), 1);
        assert_eq!(apply(&a, &s.kernel[0]), row(&[0, 0]));
    }

    #[test]
    fn inconsistent_system() {
        let a = vec![row(&[1, 1]), row(&[2, 2])];
        assert!(solve_affine(&a, &row(&[1, 3]), 2).is_none());
    }

    #[test]
    fn rank_of_singular() {
        assert_eq!(rank(&[row(&[1, 2]), row(&[2, 4])]), 1);
        assert_eq!(rank(&[row(&[1, 2]), row(&[2, 5])]), 2);
    }
}
