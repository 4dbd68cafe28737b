//! The maps between states and fields, and closure under n-th products.

use std::collections::{BTreeMap, VecDeque};
use std::sync::Arc;

use dashmap::DashMap;
use serde::Serialize;

use super::field::Field;
use super::locality::{locality_order, LocalityOrder};
use crate::error::{Error, Result};
use crate::fock::{BasisState, GradedModule, StateVector};
use crate::linalg::{scalar_rank as rank, Matrix};
use crate::modes::{HalfInt, ModeKind};
use crate::scalar::Scalar;

/// `R(A) = A(-1)Ω`.
pub fn state_of_field(module: &GradedModule, f: &Field) -> Result<StateVector> {
    f.act(module, -1, &module.vacuum())
}

/// The generating fields of a module: one per mode family it carries.
pub fn module_generators(module: &GradedModule) -> Vec<Field> {
    let alg = module.algebra();
    let mut out: Vec<Field> = (0..alg.fermions).map(Field::psi).collect();
    if let Some(a) = &alg.affine {
        out.extend((0..a.lie.dim()).map(Field::boson));
    }
    if let Some(v) = &alg.virasoro {
        out.push(Field::virasoro());
        if v.supersymmetric {
            out.push(Field::supercurrent());
        }
    }
    out
}

/// `V(a)` built word by word: `V(C_n · rest) = C_{n+α-1} V(rest)`.
pub struct StateFieldMap {
    module: Arc<GradedModule>,
    cache: DashMap<BasisState, Field>,
}

impl StateFieldMap {
    pub fn new(module: Arc<GradedModule>) -> Self {
        StateFieldMap {
            module,
            cache: DashMap::new(),
        }
    }

    pub fn module(&self) -> &Arc<GradedModule> {
        &self.module
    }

    pub fn field_of_basis(&self, b: &BasisState) -> Result<Field> {
        if b.floor != 0 || self.module.floor().dim() != 1 {
            return Err(Error::NotGenerated(format!(
                "{b} does not lie in the vacuum sector"
            )));
        }
        if let Some(f) = self.cache.get(b) {
            return Ok(f.clone());
        }
        let f = match b.word.split_first() {
            None => Field::identity(),
            Some((first, rest)) => {
                if first.kind == ModeKind::Central {
                    return Err(Error::NotGenerated("central element in a word".into()));
                }
                let slot = (first.index + first.kind.weight() - HalfInt::ONE)
                    .as_integer()
                    .expect("slots are integers");
                let rest = self.field_of_basis(&BasisState {
                    word: rest.to_vec(),
                    floor: b.floor,
                })?;
                Field::generator(first.kind)?.nth_product(&rest, slot)
            }
        };
        self.cache.insert(b.clone(), f.clone());
        Ok(f)
    }

    pub fn field_of_state(&self, v: &StateVector) -> Result<Field> {
        let terms = v
            .iter()
            .map(|(b, c)| Ok((c.clone(), self.field_of_basis(b)?)))
            .collect::<Result<Vec<_>>>()?;
        Ok(Field::lincomb(terms))
    }
}

/// Row representing `v` inside its level: coordinates for Verma modules,
/// pairings against the basis for quotients (so the row rank is the quotient rank).
pub(crate) fn level_row(module: &GradedModule, grade: HalfInt, v: &StateVector) -> Vec<Scalar> {
    let form_basis = module.enumerate_basis(grade);
    let coords = v.coordinates(&form_basis).expect("state lies in its level");
    if !module.is_quotient() {
        return coords;
    }
    let gram = module.gram_matrix(grade);
    (0..form_basis.len())
        .map(|j| {
            let mut acc = Scalar::zero();
            for (i, x) in coords.iter().enumerate() {
                if !x.is_zero() && !gram[i][j].is_zero() {
                    acc += &(x * &gram[i][j]);
                }
            }
            acc
        })
        .collect()
}

#[derive(Debug, Clone)]
pub struct ClosureElement {
    pub field: Field,
    pub state: StateVector,
    pub grade: HalfInt,
}

#[derive(Debug, Clone, Serialize)]
pub struct LevelSpan {
    pub grade: HalfInt,
    pub spanned: usize,
    pub dim: usize,
}

/// Fields reached from `Id` by n-th products with generators, one per new direction.
#[derive(Debug, Clone)]
pub struct Closure {
    pub depth: HalfInt,
    pub elements: Vec<ClosureElement>,
    pub levels: Vec<LevelSpan>,
}

impl Closure {
    /// Whether the reached states span every level up to the depth.
    pub fn spans_module(&self) -> bool {
        self.levels.iter().all(|l| l.spanned == l.dim)
    }

    /// Whether `v` lies in the span of the reached states of its grade.
    pub fn contains_state(&self, module: &GradedModule, v: &StateVector) -> bool {
        let Some(g) = v.grade() else {
            return v.is_zero();
        };
        let mut rows: Matrix<Scalar> = self
            .elements
            .iter()
            .filter(|e| e.grade == g)
            .map(|e| level_row(module, g, &e.state))
            .collect();
        let before = rank(&rows);
        rows.push(level_row(module, g, v));
        rank(&rows) == before
    }

    /// Pairwise locality of every reached field.
    pub fn locality_table(&self, module: &GradedModule) -> Result<Vec<(usize, usize, LocalityOrder)>> {
        let mut out = Vec::new();
        for i in 0..self.elements.len() {
            for j in i..self.elements.len() {
                let loc = locality_order(module, &self.elements[i].field, &self.elements[j].field, self.depth)?;
                out.push((i, j, loc));
            }
        }
        Ok(out)
    }
}

/// Breadth-first closure of `Id` under `(A, F) ↦ A_n F` for generators `A`, keeping
/// only products whose state `A(n)·R(F)` enlarges the span of its level.
/// Fails once more than `budget` products have been evaluated.
pub fn generate_closure(module: &GradedModule, generators: &[Field], depth: HalfInt, budget: usize) -> Result<Closure> {
    for g in generators {
        g.check_support(module)?;
    }
    let mut rows: BTreeMap<HalfInt, Matrix<Scalar>> = BTreeMap::new();
    let vacuum = module.vacuum();
    let mut elements = vec![ClosureElement {
        field: Field::identity(),
        state: vacuum.clone(),
        grade: HalfInt::ZERO,
    }];
    rows.insert(HalfInt::ZERO, vec![level_row(module, HalfInt::ZERO, &vacuum)]);
    let mut queue = VecDeque::from([0usize]);
    let mut evaluated = 0usize;
    while let Some(idx) = queue.pop_front() {
        let (field, state, grade) = {
            let e = &elements[idx];
            (e.field.clone(), e.state.clone(), e.grade)
        };
        for a in generators {
            let alpha = a.weight().expect("generators are homogeneous");
            // out grade = grade + α - n - 1 must lie in [0, depth]
            let top = (grade + alpha - HalfInt::ONE).floor();
            let bottom = (grade + alpha - HalfInt::ONE - depth).ceil();
            for n in (bottom..=top).rev() {
                evaluated += 1;
                if evaluated > budget {
                    return Err(Error::Budget { grade: depth.to_string(), budget });
                }
                let out = a.act_vec(module, n, &state);
                if out.is_zero() {
                    continue;
                }
                let g = grade + alpha - HalfInt::int(n + 1);
                let row = level_row(module, g, &out);
                let level = rows.entry(g).or_default();
                let before = rank(level);
                level.push(row);
                if rank(level) == before {
                    level.pop();
                    continue;
                }
                elements.push(ClosureElement {
                    field: a.nth_product(&field, n),
                    state: out,
                    grade: g,
                });
                queue.push_back(elements.len() - 1);
            }
        }
    }
    let levels = module
        .grades_up_to(depth)
        .into_iter()
        .map(|g| {
            let dim = if module.is_quotient() {
                module.level_form(g).rank()
            } else {
                module.dim(g)
            };
            LevelSpan {
                grade: g,
                spanned: rows.get(&g).map_or(0, |r| r.len()),
                dim,
            }
        })
        .collect();
    Ok(Closure {
        depth,
        elements,
        levels,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::modes::ModeSymbol;

    fn h(twice: i64) -> HalfInt {
        HalfInt::from_twice(twice)
    }

    #[test]
    fn words_round_trip_through_fields() {
        let f = GradedModule::fermion(2).unwrap();
        let map = StateFieldMap::new(f.clone());
        for g in f.grades_up_to(h(6)) {
            for b in f.enumerate_basis(g).iter() {
                let field = map.field_of_basis(b).unwrap();
                assert_eq!(state_of_field(&f, &field).unwrap(), StateVector::basis(b.clone()), "{b}");
            }
        }
        let v = map.field_of_state(&StateVector::zero()).unwrap();
        assert!(v.is_zero());
    }

    #[test]
    fn psi_state_and_fields() {
        let f = GradedModule::fermion(1).unwrap();
        let psi_state = f.apply_mode(&ModeSymbol::psi(0, h(-1)), &f.vacuum()).unwrap();
        assert_eq!(state_of_field(&f, &Field::psi(0)).unwrap(), psi_state);
        let map = StateFieldMap::new(f.clone());
        assert_eq!(map.field_of_state(&f.vacuum()).unwrap().to_string(), "Id");
    }

    #[test]
    fn fermion_closure_spans_and_contains_virasoro() {
        let f = GradedModule::fermion(1).unwrap();
        let c = generate_closure(&f, &[Field::psi(0)], h(4), 10_000).unwrap();
        assert!(c.spans_module());
        let omega = f
            .apply_modes(&[ModeSymbol::psi(0, h(-3)), ModeSymbol::psi(0, h(-1))], &f.vacuum())
            .unwrap();
        assert!(c.contains_state(&f, &omega));
        assert!(generate_closure(&f, &[Field::psi(0)], h(8), 3).is_err());
        let empty = generate_closure(&f, &[], h(2), 100).unwrap();
        assert_eq!(empty.elements.len(), 1);
        assert!(!empty.spans_module());
    }
}
