//! Exact dense linear algebra over `Scalar` and `BigRational`.

use std::cmp::Ordering;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::Result;
use crate::scalar::Scalar;

pub type Matrix<T> = Vec<Vec<T>>;

/// The operations Gaussian elimination needs from an exact field.
pub trait FieldElement: Clone + PartialEq {
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn add(&self, other: &Self) -> Self;
    fn sub(&self, other: &Self) -> Self;
    fn mul(&self, other: &Self) -> Self;
    fn neg(&self) -> Self;
    /// Multiplicative inverse; only called on nonzero elements.
    fn inverse(&self) -> Self;
    fn conj(&self) -> Self;
    /// Sign of a real element.
    fn real_sign(&self) -> Result<Ordering>;
}

impl FieldElement for BigRational {
    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn add(&self, other: &Self) -> Self {
        self + other
    }
    fn sub(&self, other: &Self) -> Self {
        self - other
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
    fn neg(&self) -> Self {
        -self
    }
    fn inverse(&self) -> Self {
        self.recip()
    }
    fn conj(&self) -> Self {
        self.clone()
    }
    fn real_sign(&self) -> Result<Ordering> {
        Ok(if self.is_positive() {
            Ordering::Greater
        } else if self.is_negative() {
            Ordering::Less
        } else {
            Ordering::Equal
        })
    }
}

impl FieldElement for Scalar {
    fn zero() -> Self {
        Scalar::zero()
    }
    fn one() -> Self {
        Scalar::one()
    }
    fn is_zero(&self) -> bool {
        Scalar::is_zero(self)
    }
    fn add(&self, other: &Self) -> Self {
        self + other
    }
    fn sub(&self, other: &Self) -> Self {
        self - other
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
    fn neg(&self) -> Self {
        -self
    }
    fn inverse(&self) -> Self {
        self.inv().expect("pivot is nonzero")
    }
    fn conj(&self) -> Self {
        Scalar::conj(self)
    }
    fn real_sign(&self) -> Result<Ordering> {
        self.sign()
    }
}

/// Reduced row echelon form in place; returns the pivot columns.
pub fn rref<T: FieldElement>(m: &mut Matrix<T>) -> Vec<usize> {
    let rows = m.len();
    let cols = m.first().map_or(0, |r| r.len());
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
        let inv = m[r][c].inverse();
        for x in m[r].iter_mut() {
            *x = x.mul(&inv);
        }
        let pivot_row = m[r].clone();
        for (i, row) in m.iter_mut().enumerate() {
            if i == r || row[c].is_zero() {
                continue;
            }
            let f = row[c].clone();
            for (x, p) in row.iter_mut().zip(&pivot_row).skip(c) {
                if !p.is_zero() {
                    *x = x.sub(&f.mul(p));
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

pub fn rank<T: FieldElement>(m: &Matrix<T>) -> usize {
    let mut a = m.clone();
    rref(&mut a).len()
}

/// Basis of `{x : m x = 0}`.
pub fn kernel<T: FieldElement>(m: &Matrix<T>, cols: usize) -> Vec<Vec<T>> {
    let mut a = m.clone();
    let pivots = rref(&mut a);
    let free: Vec<usize> = (0..cols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut x = vec![T::zero(); cols];
            x[f] = T::one();
            for (r, &p) in pivots.iter().enumerate() {
                x[p] = a[r][f].neg();
            }
            x
        })
        .collect()
}

/// Solves the square or overdetermined system `m x = rhs`, `None` when inconsistent
/// or underdetermined.
pub fn solve<T: FieldElement>(m: &Matrix<T>, rhs: &[T]) -> Option<Vec<T>> {
    let cols = m.first().map_or(0, |r| r.len());
    let mut aug: Matrix<T> = m
        .iter()
        .zip(rhs)
        .map(|(row, b)| {
            let mut r = row.clone();
            r.push(b.clone());
            r
        })
        .collect();
    let pivots = rref(&mut aug);
    if pivots.contains(&cols) || pivots.len() < cols {
        return None;
    }
    Some((0..cols).map(|i| aug[i][cols].clone()).collect())
}

/// Some solution of `m x = rhs` (free variables set to zero), `None` when inconsistent.
pub fn solve_any<T: FieldElement>(m: &Matrix<T>, rhs: &[T]) -> Option<Vec<T>> {
    let cols = m.first().map_or(0, |r| r.len());
    let mut aug: Matrix<T> = m
        .iter()
        .zip(rhs)
        .map(|(row, b)| {
            let mut r = row.clone();
            r.push(b.clone());
            r
        })
        .collect();
    let pivots = rref(&mut aug);
    if pivots.contains(&cols) {
        return None;
    }
    let mut x = vec![T::zero(); cols];
    for (r, &p) in pivots.iter().enumerate() {
        x[p] = aug[r][cols].clone();
    }
    Some(x)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, serde::Serialize, serde::Deserialize)]
pub struct Inertia {
    pub positive: usize,
    pub negative: usize,
    pub zero: usize,
}

/// Signature of a Hermitian matrix by congruence diagonalization.
pub fn inertia<T: FieldElement>(m: &Matrix<T>) -> Result<Inertia> {
    let mut a = m.clone();
    let mut active: Vec<usize> = (0..a.len()).collect();
    let mut out = Inertia::default();
    while !active.is_empty() {
        let diag = active.iter().position(|&i| !a[i][i].is_zero());
        let pos = match diag {
            Some(p) => p,
            None => {
                let pair = active.iter().enumerate().find_map(|(pi, &i)| {
                    active
                        .iter()
                        .find(|&&j| j != i && !a[i][j].is_zero())
                        .map(|&j| (pi, i, j))
                });
                let Some((pi, i, j)) = pair else {
                    out.zero += active.len();
                    break;
                };
                // row_i += t row_j, col_i += conj(t) col_j gives a_ii = 2|a_ij|²
                let t = a[i][j].clone();
                let tc = t.conj();
                let row_j = a[j].clone();
                for (x, y) in a[i].iter_mut().zip(&row_j) {
                    *x = x.add(&t.mul(y));
                }
                for row in a.iter_mut() {
                    let y = row[j].clone();
                    row[i] = row[i].add(&tc.mul(&y));
                }
                pi
            }
        };
        let p = active.remove(pos);
        let d = a[p][p].clone();
        match d.real_sign()? {
            Ordering::Greater => out.positive += 1,
            Ordering::Less => out.negative += 1,
            Ordering::Equal => unreachable!("pivot is nonzero"),
        }
        let dinv = d.inverse();
        let col: Vec<T> = active.iter().map(|&j| a[j][p].clone()).collect();
        let row: Vec<T> = active.iter().map(|&k| a[p][k].clone()).collect();
        for (x, &j) in active.iter().enumerate() {
            if col[x].is_zero() {
                continue;
            }
            let f = col[x].mul(&dinv);
            for (y, &k) in active.iter().enumerate() {
                if !row[y].is_zero() {
                    a[j][k] = a[j][k].sub(&f.mul(&row[y]));
                }
            }
        }
    }
    Ok(out)
}

/// The same matrix over `Q` when every entry is rational.
pub fn rational_matrix(m: &Matrix<Scalar>) -> Option<Matrix<BigRational>> {
    m.iter()
        .map(|row| row.iter().map(Scalar::as_rational).collect())
        .collect()
}

/// `rank`, computed over `Q` when possible.
pub fn scalar_rank(m: &Matrix<Scalar>) -> usize {
    match rational_matrix(m) {
        Some(q) => rank(&q),
        None => rank(m),
    }
}

/// `kernel`, computed over `Q` when possible.
pub fn scalar_kernel(m: &Matrix<Scalar>, cols: usize) -> Vec<Vec<Scalar>> {
    match rational_matrix(m) {
        Some(q) => kernel(&q, cols)
            .into_iter()
            .map(|v| v.into_iter().map(Scalar::from_rational).collect())
            .collect(),
        None => kernel(m, cols),
    }
}

/// `inertia`, computed over `Q` when possible.
pub fn scalar_inertia(m: &Matrix<Scalar>) -> Result<Inertia> {
    match rational_matrix(m) {
        Some(q) => Ok(rational_inertia(&q)),
        None => inertia(m),
    }
}

/// Inertia of a symmetric rational matrix by fraction-free elimination.
///
/// After clearing denominators, each pivot step keeps the active block equal to
/// bordered minors, so every division is exact. The `k`-th diagonal entry of the
/// congruent diagonal form is the ratio of consecutive leading minors, whose sign is
/// the product of the two minors' signs.
pub fn rational_inertia(m: &Matrix<BigRational>) -> Inertia {
    let n = m.len();
    let lcm = m
        .iter()
        .flatten()
        .fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    let mut a: Vec<Vec<BigInt>> = m
        .iter()
        .map(|row| row.iter().map(|x| x.numer() * (&lcm / x.denom())).collect())
        .collect();
    let mut active: Vec<usize> = (0..n).collect();
    let mut prev = BigInt::one();
    let mut out = Inertia::default();
    while !active.is_empty() {
        let pos = match active.iter().position(|&i| !a[i][i].is_zero()) {
            Some(p) => p,
            None => {
                let pair = active.iter().enumerate().find_map(|(pi, &i)| {
                    active.iter().find(|&&j| j != i && !a[i][j].is_zero()).map(|&j| (pi, i, j))
                });
                let Some((pi, i, j)) = pair else {
                    out.zero += active.len();
                    break;
                };
                // row_i += row_j, col_i += col_j on the active block makes a_ii = 2 a_ij
                for &k in &active {
                    let y = a[j][k].clone();
                    a[i][k] += y;
                }
                for &k in &active {
                    let y = a[k][j].clone();
                    a[k][i] += y;
                }
                pi
            }
        };
        let p = active.remove(pos);
        let d = a[p][p].clone();
        if d.is_positive() == prev.is_positive() {
            out.positive += 1;
        } else {
            out.negative += 1;
        }
        for &i in &active {
            for &j in &active {
                let v = (&d * &a[i][j] - &a[i][p] * &a[p][j]) / &prev;
                a[i][j] = v;
            }
        }
        prev = d;
    }
    out
}

pub fn transpose<T: Clone>(m: &Matrix<T>) -> Matrix<T> {
    let cols = m.first().map_or(0, |r| r.len());
    (0..cols).map(|c| m.iter().map(|r| r[c].clone()).collect()).collect()
}

pub fn mat_mul<T: FieldElement>(a: &Matrix<T>, b: &Matrix<T>) -> Matrix<T> {
    let inner = b.len();
    let cols = b.first().map_or(0, |r| r.len());
    a.iter()
        .map(|row| {
            (0..cols)
                .map(|c| {
                    (0..inner).fold(T::zero(), |acc, k| {
                        if row[k].is_zero() || b[k][c].is_zero() {
                            acc
                        } else {
                            acc.add(&row[k].mul(&b[k][c]))
                        }
                    })
                })
                .collect()
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64) -> BigRational {
        BigRational::from_integer(BigInt::from(n))
    }

    fn qm(rows: &[&[i64]]) -> Matrix<BigRational> {
        rows.iter().map(|r| r.iter().map(|&x| q(x)).collect()).collect()
    }

    #[test]
    fn kernel_of_rank_one() {
        let m = qm(&[&[1, 2, 3], &[2, 4, 6]]);
        assert_eq!(rank(&m), 1);
        let k = kernel(&m, 3);
        assert_eq!(k.len(), 2);
        for v in k {
            for row in &m {
                let s: BigRational = row.iter().zip(&v).map(|(a, b)| a * b).sum();
                assert!(Zero::is_zero(&s));
            }
        }
    }

    #[test]
    fn solves_square_system() {
        let m = qm(&[&[2, 1], &[1, 3]]);
        let x = solve(&m, &[q(3), q(5)]).unwrap();
        assert_eq!(x, vec![BigRational::new(4.into(), 5.into()), BigRational::new(7.into(), 5.into())]);
        assert!(solve(&qm(&[&[1, 1], &[1, 1]]), &[q(1), q(2)]).is_none());
    }

    #[test]
    fn inertia_of_hyperbolic_plane() {
        let m = qm(&[&[0, 1], &[1, 0]]);
        let s = inertia(&m).unwrap();
        assert_eq!((s.positive, s.negative, s.zero), (1, 1, 0));
        let m = qm(&[&[1, 2, 0], &[2, 4, 0], &[0, 0, -3]]);
        let s = inertia(&m).unwrap();
        assert_eq!((s.positive, s.negative, s.zero), (1, 1, 1));
    }

    #[test]
    fn inertia_of_complex_hermitian() {
        // [[0, i], [-i, 0]] has eigenvalues ±1
        let i = Scalar::i();
        let m = vec![vec![Scalar::zero(), i.clone()], vec![-&i, Scalar::zero()]];
        let s = inertia(&m).unwrap();
        assert_eq!((s.positive, s.negative, s.zero), (1, 1, 0));
    }

    #[test]
    fn fraction_free_inertia_agrees_with_congruence() {
        let r = |a: i64, b: i64| BigRational::new(BigInt::from(a), BigInt::from(b));
        let cases: Vec<Matrix<BigRational>> = vec![
            vec![vec![q(0), q(1)], vec![q(1), q(0)]],
            vec![
                vec![q(0), q(0), q(1)],
                vec![q(0), q(0), q(0)],
                vec![q(1), q(0), q(0)],
            ],
            vec![
                vec![r(1, 2), r(1, 3), q(0)],
                vec![r(1, 3), r(-2, 5), q(4)],
                vec![q(0), q(4), r(7, 3)],
            ],
            vec![
                vec![q(1), q(2), q(3)],
                vec![q(2), q(4), q(6)],
                vec![q(3), q(6), q(-1)],
            ],
        ];
        for m in cases {
            assert_eq!(rational_inertia(&m), inertia(&m).unwrap(), "{m:?}");
        }
    }
}
