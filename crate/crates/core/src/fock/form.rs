//! The sesquilinear form, Gram matrices, radicals and signatures.

use std::sync::{Arc, OnceLock};

use rayon::prelude::*;
use serde::Serialize;
use serde_json::json;

use super::{BasisState, GradedModule, StateVector};
use crate::error::Result;
use crate::linalg::{scalar_inertia, scalar_kernel, scalar_rank, transpose, Inertia, Matrix};
use crate::modes::HalfInt;
use crate::scalar::Scalar;

/// Gram data of one level.
#[derive(Debug, Clone)]
pub struct LevelForm {
    pub grade: HalfInt,
    pub basis: Arc<Vec<BasisState>>,
    pub gram: Matrix<Scalar>,
    radical: OnceLock<Vec<Vec<Scalar>>>,
}

impl LevelForm {
    /// Coordinates of a basis of the radical `{x : (x, y) = 0 for all y}`.
    pub fn radical(&self) -> &[Vec<Scalar>] {
        // (x, y) = Σ x_i conj(y_j) G_ij vanishes for all y iff Gᵀ x = 0
        self.radical
            .get_or_init(|| scalar_kernel(&transpose(&self.gram), self.basis.len()))
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn rank(&self) -> usize {
        self.basis.len() - self.radical().len()
    }

    pub fn null_vectors(&self) -> Vec<StateVector> {
        self.radical()
            .iter()
            .map(|x| StateVector::from_coordinates(&self.basis, x))
            .collect()
    }

    pub fn to_json(&self) -> serde_json::Value {
        let basis: Vec<serde_json::Value> = self
            .basis
            .iter()
            .map(|b| {
                json!({
                    "word": b.word.iter().map(|m| m.to_string()).collect::<Vec<_>>(),
                    "floor": b.floor,
                })
            })
            .collect();
        json!({
            "grade": self.grade,
            "basis": basis,
            "gram": self.gram,
            "kernel": self.radical(),
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LevelSignature {
    pub grade: HalfInt,
    pub dim: usize,
    #[serde(flatten)]
    pub inertia: Inertia,
}

impl GradedModule {
    /// `(a, b)` on basis states: linear in `a`, conjugate-linear in `b`.
    pub fn basis_pair(&self, a: &BasisState, b: &BasisState) -> Scalar {
        if a.grade() != b.grade() {
            return Scalar::zero();
        }
        let Some((first, rest)) = a.word.split_first() else {
            return self.floor.gram[a.floor][b.floor].clone();
        };
        let key = (a.clone(), b.clone());
        if let Some(hit) = self.pairs.get(&key) {
            return hit.clone();
        }
        let rest = BasisState {
            word: rest.to_vec(),
            floor: a.floor,
        };
        // (c·rest, b) = (rest, c*·b)
        let moved = self.apply_basis(first.adjoint(), b);
        let mut out = Scalar::zero();
        for (e, k) in moved.iter() {
            out += &(&k.conj() * &self.basis_pair(&rest, e));
        }
        self.pairs.insert(key, out.clone());
        out
    }

    pub fn inner_product(&self, u: &StateVector, v: &StateVector) -> Scalar {
        let mut out = Scalar::zero();
        for (a, x) in u.iter() {
            for (b, y) in v.iter() {
                let p = self.basis_pair(a, b);
                if !p.is_zero() {
                    out += &(&(x * &y.conj()) * &p);
                }
            }
        }
        out
    }

    pub fn norm_sqr(&self, v: &StateVector) -> Scalar {
        self.inner_product(v, v)
    }

    /// Gram matrix of the grade-`grade` basis in `enumerate_basis` order.
    pub fn gram_matrix(&self, grade: HalfInt) -> Matrix<Scalar> {
        self.level_form(grade).gram.clone()
    }

    pub fn gram_of(&self, vectors: &[StateVector]) -> Matrix<Scalar> {
        let n = vectors.len();
        let upper: Vec<Vec<Scalar>> = (0..n)
            .into_par_iter()
            .map(|i| (i..n).map(|j| self.inner_product(&vectors[i], &vectors[j])).collect())
            .collect();
        let mut g = vec![vec![Scalar::zero(); n]; n];
        for (i, row) in upper.into_iter().enumerate() {
            for (k, v) in row.into_iter().enumerate() {
                let j = i + k;
                g[j][i] = v.conj();
                g[i][j] = v;
            }
        }
        g
    }

    /// Gram matrix and radical of one level, cached.
    pub fn level_form(&self, grade: HalfInt) -> Arc<LevelForm> {
        let mut forms = self.forms.lock().expect("lock");
        if let Some(f) = forms.get(&grade) {
            return f.clone();
        }
        let basis = self.enumerate_basis(grade);
        let n = basis.len();
        let upper: Vec<Vec<Scalar>> = (0..n)
            .into_par_iter()
            .map(|i| (i..n).map(|j| self.basis_pair(&basis[i], &basis[j])).collect())
            .collect();
        let mut gram = vec![vec![Scalar::zero(); n]; n];
        for (i, row) in upper.into_iter().enumerate() {
            for (k, v) in row.into_iter().enumerate() {
                let j = i + k;
                gram[j][i] = v.conj();
                gram[i][j] = v;
            }
        }
        let form = Arc::new(LevelForm {
            grade,
            basis,
            gram,
            radical: OnceLock::new(),
        });
        forms.insert(grade, form.clone());
        form
    }

    pub fn null_vectors(&self, grade: HalfInt) -> Vec<StateVector> {
        self.level_form(grade).null_vectors()
    }

    /// Per-level dimensions of the irreducible quotient.
    pub fn irreducible_dims(&self, up_to: HalfInt) -> Vec<(HalfInt, usize)> {
        self.grades_up_to(up_to)
            .into_iter()
            .map(|g| (g, self.level_form(g).rank()))
            .collect()
    }

    pub fn verma_dims(&self, up_to: HalfInt) -> Vec<(HalfInt, usize)> {
        self.grades_up_to(up_to)
            .into_iter()
            .map(|g| (g, self.dim(g)))
            .collect()
    }

    /// Whether `v` pairs to zero with every state.
    pub fn is_null(&self, v: &StateVector) -> bool {
        v.by_grade().into_iter().all(|(g, comp)| {
            self.enumerate_basis(g)
                .iter()
                .all(|b| self.inner_product(&StateVector::basis(b.clone()), &comp).is_zero())
        })
    }

    /// Equality in the module: literal for Verma modules, modulo the radical for quotients.
    pub fn equivalent(&self, u: &StateVector, v: &StateVector) -> bool {
        if u == v {
            return true;
        }
        self.quotient && self.is_null(&u.minus(v))
    }

    /// Dimension of the image of `vectors` in the module (modulo the radical for quotients).
    pub fn span_dim(&self, vectors: &[StateVector]) -> usize {
        if vectors.is_empty() {
            return 0;
        }
        if self.quotient {
            return scalar_rank(&self.gram_of(vectors));
        }
        let mut keys: Vec<BasisState> = vectors
            .iter()
            .flat_map(|v| v.iter().map(|(b, _)| b.clone()))
            .collect();
        keys.sort();
        keys.dedup();
        let rows: Matrix<Scalar> = vectors
            .iter()
            .map(|v| v.coordinates(&keys).expect("keys cover every term"))
            .collect();
        scalar_rank(&rows)
    }

    /// Inertia of the form on one level.
    pub fn signature(&self, grade: HalfInt) -> Result<LevelSignature> {
        let form = self.level_form(grade);
        Ok(LevelSignature {
            grade,
            dim: form.dim(),
            inertia: scalar_inertia(&form.gram)?,
        })
    }
}

/// Per-level inertia of the Neveu-Schwarz Verma module `V(c, h)`.
pub fn ghost_report(c: Scalar, h: Scalar, up_to: HalfInt) -> Result<Vec<LevelSignature>> {
    let module = GradedModule::ns_verma(c, h, false)?;
    module
        .grades_up_to(up_to)
        .into_iter()
        .map(|g| module.signature(g))
        .collect()
}
