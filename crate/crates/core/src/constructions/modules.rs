use std::sync::Arc;

use serde::Serialize;

use super::supersym::{super_charge, super_construction, super_relations, SuperConstruction};
use super::sugawara::boson_charge;
use crate::error::{Error, Result};
use crate::fock::{GradedModule, StateVector};
use crate::lie::LieAlgebraData;
use crate::modes::HalfInt;
use crate::scalar::Scalar;
use crate::vertex::locality::{states_up_to, vanishes};
use crate::vertex::{graded_commutator, CheckReport, Field, StateFieldMap};

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CentralCharges {
    pub c_fermion: Scalar,
    pub c_boson: Scalar,
    pub c_total: Scalar,
    pub h: Scalar,
}

/// Closed-form charges of `L(V_j, ℓ) ⊗ F^g`: `c_fermion = dim/2`,
/// `c_boson = ℓ dim/(ℓ+g)` and `h = c_V/(2(ℓ+g))` with `c_V` the Casimir of the floor.
pub fn central_charges(lie: &LieAlgebraData, level: i64, twice_j: i64) -> Result<CentralCharges> {
    check_floor(level, twice_j)?;
    let ell = Scalar::from_int(level);
    let c_fermion = Scalar::from_frac(lie.dim() as i64, 2);
    let c_boson = boson_charge(lie, &ell)?;
    let c_total = super_charge(lie, &ell)?;
    let d = &ell + &lie.dual_coxeter()?;
    let casimir = crate::fock::Floor::for_algebra(lie, twice_j)?.casimir;
    let h = casimir.div(&(&Scalar::from_int(2) * &d))?;
    Ok(CentralCharges {
        c_fermion,
        c_boson,
        c_total,
        h,
    })
}

fn check_floor(level: i64, twice_j: i64) -> Result<()> {
    if level < 0 {
        return Err(Error::InvalidParameter(format!("level {level} is negative")));
    }
    if twice_j < 0 || twice_j > level {
        return Err(Error::InvalidParameter(format!(
            "spin {} is outside 0 ≤ 2j ≤ ℓ = {level}",
            HalfInt::from_twice(twice_j)
        )));
    }
    Ok(())
}

/// `H^λ = L(V_j, ℓ) ⊗ F^g` carrying the fields of the vacuum construction.
pub struct VertexModule {
    pub module: Arc<GradedModule>,
    pub vacuum: SuperConstruction,
    pub h: Scalar,
}

pub fn vertex_module(lie: Arc<LieAlgebraData>, level: i64, twice_j: i64) -> Result<VertexModule> {
    check_floor(level, twice_j)?;
    let vacuum = super_construction(lie.clone(), level)?;
    let module = if level == 0 {
        GradedModule::fermion(lie.dim())?
    } else {
        GradedModule::tensor(lie.clone(), Scalar::from_int(level), twice_j)?
    };
    let h = central_charges(&lie, level, twice_j)?.h;
    Ok(VertexModule { module, vacuum, h })
}

impl VertexModule {
    /// The operator `D = L_0 - h` compared with the grading on every level up to `depth`,
    /// the vacuum-algebra fields acting with their relations, `V(Ω) = Id`,
    /// `V(a)_n V(b) = V(a(n)b)` for vacuum states of grade at most one, and the
    /// `L_0`, `L_{-1}` commutators.
    pub fn check(&self, depth: HalfInt, bound: i64) -> Result<CheckReport> {
        let m = self.module.clone();
        let f = &self.vacuum.fields;
        let states = states_up_to(&m, depth);
        let mut r = CheckReport::default();

        let fail = states.iter().find_map(|v| {
            let l0 = f.l.act_basis(&m, 1, v);
            let expected = StateVector::single(v.clone(), &v.grade().to_scalar() + &self.h);
            (!vanishes(&m, &l0.minus(&expected))).then(|| format!("on {v}"))
        });
        r.record(format!("D = L_0 - {}", self.h), depth, fail);

        let id = self.vacuum.instance.field_of_state(&self.vacuum.instance.module().vacuum())?;
        let fail = states.iter().find_map(|v| {
            (-3..=3).find_map(|n| {
                let out = id.act_basis(&m, n, v);
                let expected = if n == -1 { StateVector::basis(v.clone()) } else { StateVector::zero() };
                (!vanishes(&m, &out.minus(&expected))).then(|| format!("slot {n} on {v}"))
            })
        });
        r.record("V(Ω) = Id", depth, fail);

        r.extend(super_relations(&m, f, depth, bound)?);

        // products of vacuum fields act as the fields of products
        let vac = self.vacuum.instance.module().clone();
        let map: &StateFieldMap = &self.vacuum.instance.map;
        let small = states_up_to(&vac, HalfInt::ONE);
        let mut fail = None;
        'outer: for a in &small {
            let fa = map.field_of_basis(a)?;
            for b in &small {
                let fb = map.field_of_basis(b)?;
                let sb = StateVector::basis(b.clone());
                for n in -2..=(a.grade() + b.grade()).ceil() {
                    let prod = fa.nth_product(&fb, n);
                    let direct = map.field_of_state(&fa.act_vec(&vac, n, &sb))?;
                    for v in &states {
                        for s in -bound..=bound + 1 {
                            let d = prod.act_basis(&m, s, v).minus(&direct.act_basis(&m, s, v));
                            if !vanishes(&m, &d) {
                                fail = Some(format!("V({a})_{n} V({b}) at slot {s} on {v}"));
                                break 'outer;
                            }
                        }
                    }
                }
            }
        }
        r.record("V(a)_n V(b) = V(a(n)b)", depth, fail);

        let gens: Vec<(Field, HalfInt)> = f
            .psi
            .iter()
            .map(|p| (p.clone(), HalfInt::HALF))
            .chain(f.b.iter().map(|b| (b.clone(), HalfInt::ONE)))
            .collect();
        let mut fail = None;
        'gens: for (g, alpha) in &gens {
            for v in &states {
                for n in -bound - 1..=bound + 1 {
                    let l0 = graded_commutator(&m, &f.l, g, 1, n, v, false);
                    let e0 = g.act_basis(&m, n, v).scaled(&(*alpha - HalfInt::int(n + 1)).to_scalar());
                    let lm = graded_commutator(&m, &f.l, g, 0, n, v, false);
                    let em = g.act_basis(&m, n - 1, v).scaled(&Scalar::from_int(-n));
                    if !vanishes(&m, &l0.minus(&e0)) || !vanishes(&m, &lm.minus(&em)) {
                        fail = Some(format!("{g} at slot {n} on {v}"));
                        break 'gens;
                    }
                }
            }
        }
        r.record("[L_0, A(n)] = (α-n-1)A(n), [L_-1, A(n)] = -nA(n-1)", depth, fail);
        Ok(r)
    }
}

/// Per-level dimensions of the span of `L_{-n_1} ⋯ L_{-n_k} Ω` with `L_n = L(n+1)`.
pub fn virasoro_submodule_dims(module: &GradedModule, l: &Field, up_to: i64) -> Vec<(i64, usize)> {
    // level n holds the images of all partitions of n
    let mut levels: Vec<Vec<StateVector>> = vec![vec![module.vacuum()]];
    for n in 1..=up_to {
        let mut vectors = Vec::new();
        for part in 1..=n {
            for v in &levels[(n - part) as usize] {
                let w = l.act_vec(module, -part + 1, v);
                if !w.is_zero() {
                    vectors.push(w);
                }
            }
        }
        levels.push(vectors);
    }
    levels
        .iter()
        .enumerate()
        .map(|(n, vs)| (n as i64, module.span_dim(vs)))
        .collect()
}
