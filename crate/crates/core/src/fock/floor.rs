//! Level-zero spaces: the representation of the zero modes `X^a_0` and its form.

use crate::error::{Error, Result};
use crate::lie::{sl2_basis, LieAlgebraData};
use crate::linalg::{mat_mul, Matrix};
use crate::scalar::Scalar;

#[derive(Debug, Clone, PartialEq)]
pub struct Floor {
    pub label: String,
    /// Hermitian form on the floor basis.
    pub gram: Matrix<Scalar>,
    /// `zero_modes[a][out][in]` is the matrix of `X^a_0`; empty for floors without bosons.
    pub zero_modes: Vec<Matrix<Scalar>>,
    /// Casimir eigenvalue `Σ_a (X^a_0)²` on the floor.
    pub casimir: Scalar,
}

impl Floor {
    /// One-dimensional floor with orthonormal vacuum.
    pub fn vacuum(colors: usize) -> Self {
        Floor {
            label: "vacuum".into(),
            gram: vec![vec![Scalar::one()]],
            zero_modes: vec![vec![vec![Scalar::zero()]]; colors],
            casimir: Scalar::zero(),
        }
    }

    pub fn dim(&self) -> usize {
        self.gram.len()
    }

    /// Spin-`j` representation of `sl2` in the weight basis `v_k = F^k v_0`, `twice_j = 2j`.
    pub fn sl2_spin(twice_j: i64) -> Result<Self> {
        if twice_j < 0 {
            return Err(Error::InvalidParameter("spin must be nonnegative".into()));
        }
        let d = (twice_j + 1) as usize;
        let zero = || vec![vec![Scalar::zero(); d]; d];
        let (mut e, mut f, mut h) = (zero(), zero(), zero());
        for k in 0..d {
            let ki = k as i64;
            h[k][k] = Scalar::from_int(twice_j - 2 * ki);
            if k + 1 < d {
                f[k + 1][k] = Scalar::one();
            }
            if k > 0 {
                e[k - 1][k] = Scalar::from_int(ki * (twice_j - ki + 1));
            }
        }
        let half_r2 = Scalar::sqrt_int(2).scale(&Scalar::from_frac(1, 2).as_rational().unwrap());
        let i_half_r2 = &Scalar::i() * &half_r2;
        let combine = |a: &Matrix<Scalar>, b: &Matrix<Scalar>, sign: i64, c: &Scalar| {
            let s = Scalar::from_int(sign);
            (0..d)
                .map(|r| {
                    (0..d)
                        .map(|col| c * &(&a[r][col] + &(&s * &b[r][col])))
                        .collect()
                })
                .collect::<Matrix<Scalar>>()
        };
        let x1 = combine(&e, &f, -1, &i_half_r2);
        let x2 = combine(&e, &f, 1, &half_r2);
        let x3: Matrix<Scalar> = h
            .iter()
            .map(|row| row.iter().map(|x| x * &half_r2).collect())
            .collect();
        let mut gram = zero();
        let mut norm = Scalar::one();
        for (k, row) in gram.iter_mut().enumerate() {
            if k > 0 {
                let ki = k as i64;
                norm = &norm * &Scalar::from_int(ki * (twice_j - ki + 1));
            }
            row[k] = norm.clone();
        }
        Ok(Floor {
            label: format!("sl2 spin {}", crate::modes::HalfInt::from_twice(twice_j)),
            gram,
            zero_modes: vec![x1, x2, x3],
            casimir: crate::lie::casimir_constant_sl2(twice_j)?,
        })
    }

    /// Floor for `algebra` and spin selector; nonzero spins exist only for the built-in `sl2`.
    pub fn for_algebra(algebra: &LieAlgebraData, twice_j: i64) -> Result<Self> {
        if twice_j == 0 {
            return Ok(Floor::vacuum(algebra.dim()));
        }
        let reference = sl2_basis();
        if algebra.dim() != 3 || algebra.bracket(0, 1) != reference.bracket(0, 1)
            || algebra.bracket(1, 2) != reference.bracket(1, 2)
            || algebra.bracket(2, 0) != reference.bracket(2, 0)
        {
            return Err(Error::InvalidParameter(format!(
                "highest-weight floors are only available for the built-in sl2, not `{}`",
                algebra.name()
            )));
        }
        Floor::sl2_spin(twice_j)
    }

    /// Checks `[X^a_0, X^b_0] = i Σ Γ_ab^c X^c_0`, self-adjointness and the Casimir.
    pub fn check(&self, algebra: &LieAlgebraData) -> Result<()> {
        let d = self.dim();
        let n = algebra.dim();
        if self.zero_modes.len() != n {
            return Err(Error::InvalidParameter("floor colors do not match algebra".into()));
        }
        let i = Scalar::i();
        for a in 0..n {
            for b in 0..n {
                let ab = mat_mul(&self.zero_modes[a], &self.zero_modes[b]);
                let ba = mat_mul(&self.zero_modes[b], &self.zero_modes[a]);
                for r in 0..d {
                    for c in 0..d {
                        let mut expected = Scalar::zero();
                        for (k, g) in algebra.bracket(a, b) {
                            expected += &(&(&i * g) * &self.zero_modes[*k][r][c]);
                        }
                        if &ab[r][c] - &ba[r][c] != expected {
                            return Err(Error::InvalidParameter(format!(
                                "floor bracket fails for ({a},{b})"
                            )));
                        }
                    }
                }
            }
            // (X v_c, v_r) = (v_c, X v_r)  <=>  Xᵀ G = G conj(X)
            let x = &self.zero_modes[a];
            let lhs = mat_mul(&crate::linalg::transpose(x), &self.gram);
            let conj_x: Matrix<Scalar> =
                x.iter().map(|r| r.iter().map(|v| v.conj()).collect()).collect();
            if lhs != mat_mul(&self.gram, &conj_x) {
                return Err(Error::InvalidParameter(format!("X^{a}_0 is not self-adjoint")));
            }
        }
        let mut cas = vec![vec![Scalar::zero(); d]; d];
        for x in &self.zero_modes {
            let sq = mat_mul(x, x);
            for r in 0..d {
                for c in 0..d {
                    cas[r][c] += &sq[r][c];
                }
            }
        }
        for (r, row) in cas.iter().enumerate() {
            for (c, v) in row.iter().enumerate() {
                let expected = if r == c { self.casimir.clone() } else { Scalar::zero() };
                if *v != expected {
                    return Err(Error::InvalidParameter("Casimir is not scalar on the floor".into()));
                }
            }
        }
        Ok(())
    }
}
