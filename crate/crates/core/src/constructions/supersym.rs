use std::sync::Arc;

use super::fermion::{current_states, fermion_omega};
use super::sugawara::{boson_charge, sugawara_omega};
use crate::error::{Error, Result};
use crate::fock::{BasisState, GradedModule, StateVector};
use crate::lie::LieAlgebraData;
use crate::modes::{HalfInt, ModeSymbol};
use crate::scalar::Scalar;
use crate::vertex::locality::{states_up_to, vanishes};
use crate::vertex::{
    graded_commutator, ope_singular_part, same_action, virasoro_relations, CheckReport, Field, GeneratorSystem,
    VosaInstance,
};

/// The fields of the Neveu-Schwarz action: `L_m = L(m+1)`, `G_r = G(r+½)`,
/// `ψ^a_r = ψ^a(r-½)` and `B^a_n = B^a(n)`.
#[derive(Clone)]
pub struct SuperFields {
    pub l: Field,
    pub g: Field,
    pub psi: Vec<Field>,
    pub b: Vec<Field>,
    pub c: Scalar,
    /// `√(ℓ + g)`.
    pub sqrt_d: Scalar,
}

pub struct SuperConstruction {
    pub lie: Arc<LieAlgebraData>,
    pub level: i64,
    /// `ℓ + g`.
    pub d: Scalar,
    pub instance: VosaInstance,
    pub fields: SuperFields,
    pub current_states: Vec<StateVector>,
    /// `τ₂ = ⅓ Σ_a ψ^a_{-1/2} s^a`, without the `(ℓ+g)^{-1/2}` prefactor.
    pub tau2: StateVector,
}

fn psi(a: usize, twice: i64) -> ModeSymbol {
    ModeSymbol::psi(a, HalfInt::from_twice(twice))
}

/// `Σ_a ψ^a_{-1/2} s^a`.
fn psi_current_sum(module: &GradedModule, currents: &[StateVector]) -> StateVector {
    let mut out = StateVector::zero();
    for (a, s) in currents.iter().enumerate() {
        out.add(&module.apply_mode(&psi(a, -1), s).expect("fermion modes"));
    }
    out
}

/// `L(V_0, ℓ) ⊗ F^g` with `τ = (ℓ+g)^{-1/2}(Σ ψ^a_{-1/2} X^a_{-1}Ω + ⅓ Σ ψ^a_{-1/2} S^a_{-1}Ω)`.
/// At `ℓ = 0` the boson factor is trivial and the construction is carried by the fermions alone.
pub fn super_construction(lie: Arc<LieAlgebraData>, level: i64) -> Result<SuperConstruction> {
    if level < 0 {
        return Err(Error::InvalidParameter(format!("level {level} is negative")));
    }
    let ell = Scalar::from_int(level);
    let d = &ell + &lie.dual_coxeter()?;
    let sqrt_d = d.sqrt()?;
    let inv_sqrt_d = sqrt_d.inv()?;
    let dim = lie.dim();
    let module = if level == 0 {
        GradedModule::fermion(dim)?
    } else {
        GradedModule::tensor(lie.clone(), ell.clone(), 0)?
    };
    let currents = current_states(&module, &lie)?;
    let tau2 = psi_current_sum(&module, &currents).scaled(&Scalar::from_frac(1, 3));
    let mut tau = tau2.clone();
    let mut omega = fermion_omega(&module, dim)?;
    if level > 0 {
        for a in 0..dim {
            tau.add(&module.apply_modes(&[psi(a, -1), ModeSymbol::x(a, -1)], &module.vacuum())?);
        }
        omega.add(&sugawara_omega(&module, &lie, &ell)?);
    }
    let tau = tau.scaled(&inv_sqrt_d);
    let system = GeneratorSystem::of_module(module.clone());
    let mut instance = VosaInstance::new(format!("super {} level {level}", lie.name()), system, omega);
    instance.tau = Some(tau);
    let s_fields = currents
        .iter()
        .map(|s| instance.field_of_state(s))
        .collect::<Result<Vec<_>>>()?;
    let b = (0..dim)
        .map(|a| {
            if level > 0 {
                Field::boson(a).plus(&s_fields[a])
            } else {
                s_fields[a].clone()
            }
        })
        .collect();
    let fields = SuperFields {
        l: instance.virasoro_field()?,
        g: instance.super_field()?.expect("τ is set"),
        psi: (0..dim).map(Field::psi).collect(),
        b,
        c: instance.central_charge(),
        sqrt_d,
    };
    Ok(SuperConstruction {
        lie,
        level,
        d,
        instance,
        fields,
        current_states: currents,
        tau2,
    })
}

/// `c = (3/2)(ℓ + g/3)/(ℓ + g) dim`.
pub(crate) fn super_charge(lie: &LieAlgebraData, level: &Scalar) -> Result<Scalar> {
    let fermions = Scalar::from_frac(lie.dim() as i64, 2);
    Ok(&boson_charge(lie, level)? + &fermions)
}

/// Checks one family of mode identities `lhs(x, y, v) = rhs(x, y, v)` for slots in `xs × ys`.
fn sweep(
    module: &GradedModule,
    states: &[BasisState],
    xs: std::ops::RangeInclusive<i64>,
    ys: std::ops::RangeInclusive<i64>,
    f: impl Fn(i64, i64, &BasisState) -> (StateVector, StateVector) + Sync,
) -> Option<String> {
    use rayon::prelude::*;
    states.par_iter().find_map_first(|v| {
        for x in xs.clone() {
            for y in ys.clone() {
                let (lhs, rhs) = f(x, y, v);
                if !vanishes(module, &lhs.minus(&rhs)) {
                    return Some(format!("slots ({x}, {y}) on {v}"));
                }
            }
        }
        None
    })
}

fn adjoint_failure(module: &GradedModule, f: &Field, shift: i64, states: &[BasisState], bound: i64) -> Option<String> {
    // (A(s) x, y) = (x, A(2α - 2 - s) y) with α the weight; shift = 2α - 2
    let alpha = f.weight().unwrap_or(HalfInt::ZERO);
    for x in states {
        for y in states {
            for s in -bound..=bound + 1 {
                if x.grade() + alpha - HalfInt::int(s + 1) != y.grade() {
                    continue;
                }
                let lhs = module.inner_product(&f.act_basis(module, s, x), &StateVector::basis(y.clone()));
                let rhs = module.inner_product(&StateVector::basis(x.clone()), &f.act_basis(module, shift - s, y));
                if lhs != rhs {
                    return Some(format!("slot {s} between {x} and {y}"));
                }
            }
        }
    }
    None
}

/// The Neveu-Schwarz relations and the boson-fermion supersymmetry brackets,
/// for `|m|, |n| ≤ bound` (and `|r| ≤ bound + ½`) on states up to `depth`.
pub fn super_relations(module: &GradedModule, f: &SuperFields, depth: HalfInt, bound: i64) -> Result<CheckReport> {
    let m = module;
    let states = states_up_to(m, depth);
    let ints = -bound..=bound;
    // slots t of G with r = t - ½ ranging over |r| ≤ bound + ½
    let g_slots = -bound..=bound + 1;
    let psi_slots = -bound - 1..=bound;
    let c = &f.c;
    let inv_sqrt_d = f.sqrt_d.inv()?;
    let half = Scalar::from_frac(1, 2);
    let mut r = CheckReport::default();

    r.push(virasoro_relations(m, &f.l, c, depth, bound));

    r.record(
        "[L_m, G_r] = (m/2 - r) G_{m+r}",
        depth,
        sweep(m, &states, ints.clone(), g_slots.clone(), |mm, t, v| {
            let rr = HalfInt::from_twice(2 * t - 1);
            let coeff = &(&Scalar::from_int(mm) * &half) - &rr.to_scalar();
            (
                graded_commutator(m, &f.l, &f.g, mm + 1, t, v, false),
                f.g.act_basis(m, mm + t, v).scaled(&coeff),
            )
        }),
    );

    r.record(
        "[G_r, G_s]+ = 2L_{r+s} + (c/3)(r^2 - 1/4)δ",
        depth,
        sweep(m, &states, g_slots.clone(), g_slots.clone(), |t, u, v| {
            let rr = HalfInt::from_twice(2 * t - 1).to_scalar();
            // r + s = t + u - 1, so L_{r+s} = L(t + u)
            let mut rhs = f.l.act_basis(m, t + u, v).scaled(&Scalar::from_int(2));
            if t + u == 1 {
                let k = &(c * &Scalar::from_frac(1, 3)) * &(&(&rr * &rr) - &Scalar::from_frac(1, 4));
                rhs.add_term(v.clone(), k);
            }
            (graded_commutator(m, &f.g, &f.g, t, u, v, true), rhs)
        }),
    );

    let mut psi_fail = None;
    let mut b_fail = None;
    let mut gb_fail = None;
    let mut gpsi_fail = None;
    for a in 0..f.psi.len() {
        let (pa, ba) = (&f.psi[a], &f.b[a]);
        if psi_fail.is_none() {
            // [L_m, ψ_s] = -(s + m/2) ψ_{m+s} with ψ_s = ψ(s - ½)
            psi_fail = sweep(m, &states, ints.clone(), psi_slots.clone(), |mm, t, v| {
                let s = HalfInt::from_twice(2 * t + 1).to_scalar();
                let coeff = -(&s + &(&Scalar::from_int(mm) * &half));
                (
                    graded_commutator(m, &f.l, pa, mm + 1, t, v, false),
                    pa.act_basis(m, mm + t, v).scaled(&coeff),
                )
            })
            .map(|e| format!("color {a}: {e}"));
        }
        if b_fail.is_none() {
            b_fail = sweep(m, &states, ints.clone(), ints.clone(), |mm, n, v| {
                (
                    graded_commutator(m, &f.l, ba, mm + 1, n, v, false),
                    ba.act_basis(m, mm + n, v).scaled(&Scalar::from_int(-n)),
                )
            })
            .map(|e| format!("color {a}: {e}"));
        }
        if gb_fail.is_none() {
            // [G_r, B_n] = -n √d ψ_{r+n}; ψ_{r+n} = ψ(t + n - 1)
            gb_fail = sweep(m, &states, g_slots.clone(), ints.clone(), |t, n, v| {
                (
                    graded_commutator(m, &f.g, ba, t, n, v, false),
                    pa.act_basis(m, t + n - 1, v).scaled(&(&Scalar::from_int(-n) * &f.sqrt_d)),
                )
            })
            .map(|e| format!("color {a}: {e}"));
        }
        if gpsi_fail.is_none() {
            // [G_r, ψ_s]+ = B_{r+s}/√d; r + s = t + u
            gpsi_fail = sweep(m, &states, g_slots.clone(), psi_slots.clone(), |t, u, v| {
                (
                    graded_commutator(m, &f.g, pa, t, u, v, true),
                    ba.act_basis(m, t + u, v).scaled(&inv_sqrt_d),
                )
            })
            .map(|e| format!("color {a}: {e}"));
        }
    }
    r.record("[L_m, psi^a_s] = -(s + m/2) psi^a_{m+s}", depth, psi_fail);
    r.record("[L_m, B^a_n] = -n B^a_{m+n}", depth, b_fail);
    r.record("[G_r, B^a_n] = -n (ℓ+g)^{1/2} psi^a_{r+n}", depth, gb_fail);
    r.record("[G_r, psi^a_s]+ = (ℓ+g)^{-1/2} B^a_{r+s}", depth, gpsi_fail);

    r.record("L_n* = L_-n", depth, adjoint_failure(m, &f.l, 2, &states, bound));
    r.record("G_r* = G_-r", depth, adjoint_failure(m, &f.g, 1, &states, bound));

    // singular parts of the operator products
    let two_c_thirds = c * &Scalar::from_frac(2, 3);
    let expectations: [(&str, &Field, &Field, Vec<Field>); 3] = [
        (
            "OPE L(z)L(w) = (c/2)/(z-w)^4 + 2L/(z-w)^2 + L'/(z-w)",
            &f.l,
            &f.l,
            vec![
                Field::identity().scaled(&(c * &half)),
                Field::zero(),
                f.l.scaled(&Scalar::from_int(2)),
                f.l.derivative(),
            ],
        ),
        (
            "OPE L(z)G(w) = (3/2)G/(z-w)^2 + G'/(z-w)",
            &f.l,
            &f.g,
            vec![f.g.scaled(&Scalar::from_frac(3, 2)), f.g.derivative()],
        ),
        (
            "OPE G(z)G(w) = (2c/3)/(z-w)^3 + 2L/(z-w)",
            &f.g,
            &f.g,
            vec![
                Field::identity().scaled(&two_c_thirds),
                Field::zero(),
                f.l.scaled(&Scalar::from_int(2)),
            ],
        ),
    ];
    for (name, a, b, expected) in expectations {
        let (_, ope) = ope_singular_part(m, a, b, depth)?;
        let fail = if ope.len() != expected.len() {
            Some(format!("pole order {} instead of {}", ope.len(), expected.len()))
        } else {
            ope.iter()
                .zip(&expected)
                .find(|(t, e)| !same_action(m, &t.field, e, depth))
                .map(|(t, _)| format!("coefficient of the order {} pole", t.n + 1))
        };
        r.record(name, depth, fail);
    }
    Ok(r)
}

impl SuperConstruction {
    /// Closed-form charge, the full relation suite and the identities pinning down `τ`.
    pub fn check(&self, depth: HalfInt, bound: i64) -> Result<CheckReport> {
        let m = self.instance.module().clone();
        let mut r = CheckReport::default();
        let closed = super_charge(&self.lie, &Scalar::from_int(self.level))?;
        let c = &self.fields.c;
        r.record(
            "2|ω|^2 = (3/2)(ℓ + g/3)/(ℓ + g) dim",
            depth,
            (*c != closed).then(|| format!("measured {c}, closed form {closed}")),
        );
        r.extend(super_relations(&m, &self.fields, depth, bound)?);

        let tau = self.instance.tau.clone().expect("τ is set");
        // G_{3/2} τ = G(2) τ
        let top = self.fields.g.act_vec(&m, 2, &tau);
        let expected = m.vacuum().scaled(&(c * &Scalar::from_frac(2, 3)));
        r.record(
            "G_3/2 τ = (2c/3)Ω",
            depth,
            (!vanishes(&m, &top.minus(&expected))).then(|| "mismatch".to_string()),
        );

        let mut s0 = None;
        let mut lowered = None;
        for a in 0..self.lie.dim() {
            let sa = self.instance.field_of_state(&self.current_states[a])?;
            if s0.is_none() && !vanishes(&m, &sa.act_vec(&m, 0, &self.tau2)) {
                s0 = Some(format!("color {a}"));
            }
            let down = m.apply_mode(&psi(a, 1), &self.tau2)?;
            if lowered.is_none() && !vanishes(&m, &down.minus(&self.current_states[a])) {
                lowered = Some(format!("color {a}"));
            }
        }
        r.record("S^a_0 τ_2 = 0", depth, s0);
        r.record("psi^a_1/2 τ_2 = S^a_-1 Ω", depth, lowered);
        Ok(r)
    }
}

/// Whether `ψ^a_{1/2}(κ Σ_b ψ^b_{-1/2} S^b_{-1}Ω) = S^a_{-1}Ω` for every color.
pub fn tau2_coefficient_holds(lie: &LieAlgebraData, kappa: &Scalar) -> Result<bool> {
    let module = GradedModule::fermion(lie.dim())?;
    let currents = current_states(&module, lie)?;
    let t = psi_current_sum(&module, &currents).scaled(kappa);
    for (a, s) in currents.iter().enumerate() {
        if module.apply_mode(&psi(a, 1), &t)? != *s {
            return Ok(false);
        }
    }
    Ok(true)
}
