use std::sync::Arc;

use crate::error::{Error, Result};
use crate::fock::{GradedModule, StateVector};
use crate::lie::LieAlgebraData;
use crate::modes::{HalfInt, ModeSymbol};
use crate::scalar::Scalar;
use crate::vertex::locality::{states_up_to, vanishes};
use crate::vertex::{graded_commutator, virasoro_relations, CheckReport, Field, GeneratorSystem, VosaInstance};

/// `ω = Σ_a (X^a_{-1})² Ω / (2(ℓ + g))`.
pub fn sugawara_omega(module: &GradedModule, lie: &LieAlgebraData, level: &Scalar) -> Result<StateVector> {
    let shifted = level + &lie.dual_coxeter()?;
    if shifted.is_zero() {
        return Err(Error::InvalidParameter("ℓ + g vanishes".into()));
    }
    let scale = (&Scalar::from_int(2) * &shifted).inv()?;
    let mut omega = StateVector::zero();
    for a in 0..lie.dim() {
        let x = ModeSymbol::x(a, -1);
        omega.add_scaled(&scale, &module.apply_modes(&[x, x], &module.vacuum())?);
    }
    Ok(omega)
}

/// The level-`ℓ` vacuum module with its Sugawara conformal vector.
pub fn boson_sugawara(lie: Arc<LieAlgebraData>, level: i64) -> Result<VosaInstance> {
    if level < 0 {
        return Err(Error::InvalidParameter(format!("level {level} is negative")));
    }
    let level = Scalar::from_int(level);
    let module = GradedModule::affine(lie.clone(), level.clone(), 0)?;
    let omega = sugawara_omega(&module, &lie, &level)?;
    Ok(VosaInstance::new(
        format!("{} level {level}", lie.name()),
        GeneratorSystem::of_module(module),
        omega,
    ))
}

/// `c = ℓ dim / (ℓ + g)`.
pub(crate) fn boson_charge(lie: &LieAlgebraData, level: &Scalar) -> Result<Scalar> {
    let shifted = level + &lie.dual_coxeter()?;
    (level * &Scalar::from_int(lie.dim() as i64)).div(&shifted)
}

impl VosaInstance {
    /// Sugawara relations: measured and closed-form `c` agree, Virasoro brackets hold
    /// and `[L_m, X^a_n] = -n X^a_{m+n}`, for `|m|, |n| ≤ bound` on states up to `depth`.
    pub fn check_sugawara(&self, depth: HalfInt, bound: i64) -> Result<CheckReport> {
        let m = self.module().clone();
        let aff = m
            .algebra()
            .affine
            .clone()
            .ok_or_else(|| Error::InvalidParameter("not an affine module".into()))?;
        let mut r = CheckReport::default();
        let closed = boson_charge(&aff.lie, &aff.level)?;
        let c = self.central_charge();
        r.record(
            "2|ω|^2 = ℓ dim/(ℓ+g)",
            depth,
            (c != closed).then(|| format!("measured {c}, closed form {closed}")),
        );
        let l = self.virasoro_field()?;
        r.push(virasoro_relations(&m, &l, &c, depth, bound));
        let states = states_up_to(&m, depth);
        let mut fail = None;
        'outer: for a in 0..aff.lie.dim() {
            let x = Field::boson(a);
            for v in &states {
                for mm in -bound..=bound {
                    for n in -bound..=bound {
                        let lhs = graded_commutator(&m, &l, &x, mm + 1, n, v, false);
                        let rhs = x.act_basis(&m, mm + n, v).scaled(&Scalar::from_int(-n));
                        if !vanishes(&m, &lhs.minus(&rhs)) {
                            fail = Some(format!("[L_{mm}, X^{a}_{n}] on {v}"));
                            break 'outer;
                        }
                    }
                }
            }
        }
        r.record("[L_m, X^a_n] = -n X^a_{m+n}", depth, fail);
        Ok(r)
    }
}
