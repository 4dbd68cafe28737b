use std::sync::Arc;

use crate::error::Result;
use crate::fock::{GradedModule, StateVector};
use crate::lie::LieAlgebraData;
use crate::modes::{HalfInt, ModeSymbol};
use crate::scalar::Scalar;
use crate::vertex::{graded_commutator, CheckReport, Field, GeneratorSystem, VosaInstance};
use crate::vertex::locality::{states_up_to, vanishes};

fn psi(a: usize, twice: i64) -> ModeSymbol {
    ModeSymbol::psi(a, HalfInt::from_twice(twice))
}

/// `ω = ½ Σ_a ψ^a_{-3/2} ψ^a_{-1/2} Ω`.
pub fn fermion_omega(module: &GradedModule, colors: usize) -> Result<StateVector> {
    let mut omega = StateVector::zero();
    for a in 0..colors {
        let s = module.apply_modes(&[psi(a, -3), psi(a, -1)], &module.vacuum())?;
        omega.add_scaled(&Scalar::from_frac(1, 2), &s);
    }
    Ok(omega)
}

/// The Fock space of `colors` fermions as a vertex operator superalgebra, `c = colors/2`.
pub fn fermion_vosa(colors: usize) -> Result<VosaInstance> {
    let module = GradedModule::fermion(colors)?;
    let omega = fermion_omega(&module, colors)?;
    let system = GeneratorSystem::of_module(module);
    Ok(VosaInstance::new(format!("fermion x{colors}"), system, omega))
}

/// `s^a = -(i/2) Σ_{b,c} Γ_bc^a ψ^b_{-1/2} ψ^c_{-1/2} Ω`.
pub fn current_states(module: &GradedModule, lie: &LieAlgebraData) -> Result<Vec<StateVector>> {
    let coeff = &Scalar::i() * &Scalar::from_frac(-1, 2);
    (0..lie.dim())
        .map(|a| {
            let mut s = StateVector::zero();
            for b in 0..lie.dim() {
                for c in 0..lie.dim() {
                    let g = lie.gamma(b, c, a);
                    if g.is_zero() {
                        continue;
                    }
                    let w = module.apply_modes(&[psi(b, -1), psi(c, -1)], &module.vacuum())?;
                    s.add_scaled(&(&coeff * &g), &w);
                }
            }
            Ok(s)
        })
        .collect()
}

/// Fermions colored by a Lie algebra, with the currents `S^a = V(s^a)`.
pub struct GFermion {
    pub lie: Arc<LieAlgebraData>,
    pub instance: VosaInstance,
    pub current_states: Vec<StateVector>,
    pub currents: Vec<Field>,
}

pub fn g_fermion_system(lie: Arc<LieAlgebraData>) -> Result<GFermion> {
    let instance = fermion_vosa(lie.dim())?;
    let states = current_states(instance.module(), &lie)?;
    let currents = states
        .iter()
        .map(|s| instance.field_of_state(s))
        .collect::<Result<Vec<_>>>()?;
    Ok(GFermion {
        lie,
        instance: VosaInstance {
            label: "g-fermion".into(),
            ..instance
        },
        current_states: states,
        currents,
    })
}

impl GFermion {
    /// Current algebra at level `g`, the fermion-current bracket, `Σ_a (S^a_{-1})²Ω = 4gω`
    /// and `c = dim/2`, for modes `|m|, |n| ≤ bound` on states up to `depth`.
    pub fn check(&self, depth: HalfInt, bound: i64) -> Result<CheckReport> {
        let m = self.instance.module().clone();
        let lie = &self.lie;
        let g = lie.dual_coxeter()?;
        let dim = lie.dim();
        let i = Scalar::i();
        let states = states_up_to(&m, depth);
        let mut r = CheckReport::default();

        let expected_c = Scalar::from_frac(dim as i64, 2);
        let c = self.instance.central_charge();
        r.record(
            "c = dim/2",
            depth,
            (c != expected_c).then(|| format!("measured {c}")),
        );

        // [S^a_m, S^b_n] = i Γ_ab^c S^c_{m+n} + m g δ_ab δ_{m+n,0}
        let mut fail = None;
        'outer: for a in 0..dim {
            for b in 0..dim {
                for v in &states {
                    for mm in -bound..=bound {
                        for n in -bound..=bound {
                            let lhs = graded_commutator(&m, &self.currents[a], &self.currents[b], mm, n, v, false);
                            let mut rhs = StateVector::zero();
                            for (c, gam) in lie.bracket(a, b) {
                                rhs.add_scaled(&(&i * gam), &self.currents[*c].act_basis(&m, mm + n, v));
                            }
                            if a == b && mm + n == 0 {
                                rhs.add_term(v.clone(), &g * &Scalar::from_int(mm));
                            }
                            if !vanishes(&m, &lhs.minus(&rhs)) {
                                fail = Some(format!("[S^{a}_{mm}, S^{b}_{n}] on {v}"));
                                break 'outer;
                            }
                        }
                    }
                }
            }
        }
        r.record("[S^a_m, S^b_n] = iΓ_ab^c S^c_{m+n} + m g δ", depth, fail);

        // [ψ^a_r, S^b_n] = i Γ_ab^c ψ^c_{r+n}
        let mut fail = None;
        'outer2: for a in 0..dim {
            let pa = Field::psi(a);
            for b in 0..dim {
                for v in &states {
                    for slot in -bound..=bound {
                        for n in -bound..=bound {
                            let lhs = graded_commutator(&m, &pa, &self.currents[b], slot, n, v, false);
                            let mut rhs = StateVector::zero();
                            for (c, gam) in lie.bracket(a, b) {
                                rhs.add_scaled(&(&i * gam), &Field::psi(*c).act_basis(&m, slot + n, v));
                            }
                            if !vanishes(&m, &lhs.minus(&rhs)) {
                                fail = Some(format!("[psi^{a}, S^{b}_{n}] at slot {slot} on {v}"));
                                break 'outer2;
                            }
                        }
                    }
                }
            }
        }
        r.record("[psi^a_r, S^b_n] = iΓ_ab^c psi^c_{r+n}", depth, fail);

        // Σ_a (S^a_{-1})² Ω = 4 g ω
        let mut sum = StateVector::zero();
        for s in &self.currents {
            let once = s.act_vec(&m, -1, &m.vacuum());
            sum.add(&s.act_vec(&m, -1, &once));
        }
        let target = self.instance.omega.scaled(&(&Scalar::from_int(4) * &g));
        r.record(
            "Σ_a (S^a_-1)^2 Ω = 4gω",
            depth,
            (!vanishes(&m, &sum.minus(&target))).then(|| "mismatch".to_string()),
        );
        Ok(r)
    }
}
