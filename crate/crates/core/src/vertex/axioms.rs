//! Systems of generators, vertex operator superalgebra instances and their axioms.

use std::sync::Arc;

use rayon::prelude::*;

use super::field::Field;
use super::locality::{graded_commutator, locality_order, states_up_to, vanishes, LocalityOrder};
use super::report::{CheckReport, CheckResult};
use super::state_field::{generate_closure, module_generators, Closure, StateFieldMap};
use crate::error::Result;
use crate::fock::{BasisState, GradedModule, StateVector};
use crate::modes::{HalfInt, Parity};
use crate::scalar::Scalar;

/// Work budget for closures run inside axiom checks.
pub const CLOSURE_BUDGET: usize = 1_000_000;

/// Slot window where `A(n)` maps grade `k` into `[0, depth]`.
fn slots(k: HalfInt, alpha: HalfInt, depth: HalfInt) -> std::ops::RangeInclusive<i64> {
    let top = k + alpha - HalfInt::ONE;
    (top - depth).ceil()..=top.floor()
}

fn first_failure<T: Sync>(items: &[T], f: impl Fn(&T) -> Option<String> + Sync + Send) -> Option<String> {
    items.par_iter().find_map_first(f)
}

#[derive(Clone)]
pub struct GeneratorSystem {
    pub module: Arc<GradedModule>,
    pub generators: Vec<Field>,
    pub vacuum: StateVector,
}

impl GeneratorSystem {
    pub fn new(module: Arc<GradedModule>, generators: Vec<Field>) -> Self {
        let vacuum = module.vacuum();
        GeneratorSystem {
            module,
            generators,
            vacuum,
        }
    }

    /// The system formed by the module's own mode families.
    pub fn of_module(module: Arc<GradedModule>) -> Self {
        let generators = module_generators(&module);
        GeneratorSystem::new(module, generators)
    }

    pub fn closure(&self, depth: HalfInt) -> Result<Closure> {
        generate_closure(&self.module, &self.generators, depth, CLOSURE_BUDGET)
    }

    pub fn locality_table(&self, depth: HalfInt) -> Result<Vec<(usize, usize, LocalityOrder)>> {
        let mut out = Vec::new();
        for i in 0..self.generators.len() {
            for j in i..self.generators.len() {
                out.push((i, j, locality_order(&self.module, &self.generators[i], &self.generators[j], depth)?));
            }
        }
        Ok(out)
    }

    fn check_locality(&self, depth: HalfInt) -> Result<Option<String>> {
        for (i, j, loc) in self.locality_table(depth)? {
            let expected = match (self.generators[i].parity(), self.generators[j].parity()) {
                (Some(p), Some(q)) if p.is_odd() && q.is_odd() => Parity::Odd,
                _ => Parity::Even,
            };
            if loc.parity != expected {
                return Ok(Some(format!(
                    "({}, {}) local with parity {:?}, expected {:?}",
                    self.generators[i], self.generators[j], loc.parity, expected
                )));
            }
        }
        Ok(None)
    }

    fn check_translation(&self, depth: HalfInt) -> Option<String> {
        let m = &self.module;
        let states = states_up_to(m, depth);
        first_failure(&states, |v| {
            let sv = StateVector::basis(v.clone());
            let tv = m.operator_t(&sv);
            for a in &self.generators {
                let alpha = a.weight()?;
                for n in slots(v.grade(), alpha, depth) {
                    let lhs = m.operator_t(&a.act_basis(m, n, v)).minus(&a.act_vec(m, n, &tv));
                    let rhs = a.act_basis(m, n - 1, v).scaled(&Scalar::from_int(-n));
                    if !vanishes(m, &lhs.minus(&rhs)) {
                        return Some(format!("[T, {a}({n})] on {v}"));
                    }
                }
            }
            None
        })
    }

    fn check_grading(&self, depth: HalfInt) -> Option<String> {
        for a in &self.generators {
            let (Some(alpha), Some(p)) = (a.weight(), a.parity()) else {
                return Some(format!("{a} is not homogeneous"));
            };
            if alpha.twice() < 0 || (alpha.twice() % 2 == 1) != p.is_odd() {
                return Some(format!("{a} has weight {alpha} and parity {p:?}"));
            }
        }
        let m = &self.module;
        let states = states_up_to(m, depth);
        first_failure(&states, |v| {
            let sv = StateVector::basis(v.clone());
            if m.operator_d(&sv) != sv.scaled(&v.grade().to_scalar()) {
                return Some(format!("D on {v}"));
            }
            for a in &self.generators {
                let alpha = a.weight()?;
                for n in slots(v.grade(), alpha, depth) {
                    let out = a.act_basis(m, n, v);
                    let expected = v.grade() + alpha - HalfInt::int(n + 1);
                    if out.iter().any(|(b, _)| b.grade() != expected) {
                        return Some(format!("{a}({n}) on {v} leaves grade {expected}"));
                    }
                }
            }
            None
        })
    }

    fn check_vacuum(&self, depth: HalfInt) -> Option<String> {
        let m = &self.module;
        let omega = &self.vacuum;
        if omega.grade() != Some(HalfInt::ZERO) {
            return Some("vacuum is not in grade 0".into());
        }
        if !m.norm_sqr(omega).is_one() {
            return Some("vacuum does not have norm 1".into());
        }
        if !vanishes(m, &m.operator_d(omega)) || !vanishes(m, &m.operator_t(omega)) {
            return Some("D or T does not kill the vacuum".into());
        }
        for a in &self.generators {
            let alpha = a.weight().unwrap_or(HalfInt::ZERO);
            for n in 0..=(depth + alpha).ceil() + 1 {
                if !vanishes(m, &a.act_vec(m, n, omega)) {
                    return Some(format!("{a}({n}) does not kill the vacuum"));
                }
            }
        }
        None
    }

    /// The clauses defining a system of generators, each on the truncation at `depth`.
    pub fn check(&self, depth: HalfInt) -> Result<CheckReport> {
        let mut r = CheckReport::default();
        r.record("generators: pairwise locality", depth, self.check_locality(depth)?);
        r.record("generators: [T, A] = A'", depth, self.check_translation(depth));
        r.record("generators: grading", depth, self.check_grading(depth));
        r.record("generators: vacuum", depth, self.check_vacuum(depth));
        let closure = self.closure(depth)?;
        r.record("generators: irreducibility", depth, spans_failure(&closure));
        Ok(r)
    }
}

fn spans_failure(closure: &Closure) -> Option<String> {
    closure
        .levels
        .iter()
        .find(|l| l.spanned != l.dim)
        .map(|l| format!("grade {} spanned {} of {}", l.grade, l.spanned, l.dim))
}

/// A module with its state-field map, vacuum and conformal vector.
pub struct VosaInstance {
    pub label: String,
    pub system: GeneratorSystem,
    pub map: StateFieldMap,
    pub omega: StateVector,
    pub tau: Option<StateVector>,
}

impl VosaInstance {
    pub fn new(label: impl Into<String>, system: GeneratorSystem, omega: StateVector) -> Self {
        let map = StateFieldMap::new(system.module.clone());
        VosaInstance {
            label: label.into(),
            system,
            map,
            omega,
            tau: None,
        }
    }

    pub fn module(&self) -> &Arc<GradedModule> {
        &self.system.module
    }

    pub fn field_of_state(&self, v: &StateVector) -> Result<Field> {
        self.map.field_of_state(v)
    }

    /// `c = 2‖ω‖²`.
    pub fn central_charge(&self) -> Scalar {
        &Scalar::from_int(2) * &self.module().norm_sqr(&self.omega)
    }

    /// `L(z) = V(ω, z)`, so `L_n = L(n+1)`.
    pub fn virasoro_field(&self) -> Result<Field> {
        self.field_of_state(&self.omega)
    }

    /// `G(z) = V(τ, z)`, so `G_r = G(r+½)`.
    pub fn super_field(&self) -> Result<Option<Field>> {
        self.tau.as_ref().map(|t| self.field_of_state(t)).transpose()
    }
}

/// `[L_m, L_n] = (m-n)L_{m+n} + (c/12)(m³-m)δ_{m+n,0}` for `|m|, |n| ≤ bound`.
pub fn virasoro_relations(module: &GradedModule, l: &Field, c: &Scalar, depth: HalfInt, bound: i64) -> CheckResult {
    let states = states_up_to(module, depth);
    let failure = first_failure(&states, |v| {
        for m in -bound..=bound {
            for n in -bound..=bound {
                let lhs = graded_commutator(module, l, l, m + 1, n + 1, v, false);
                let mut rhs = l.act_basis(module, m + n + 1, v).scaled(&Scalar::from_int(m - n));
                if m + n == 0 {
                    let k = &(c * &Scalar::from_frac(1, 12)) * &Scalar::from_int(m * m * m - m);
                    rhs.add_term(v.clone(), k);
                }
                if !vanishes(module, &lhs.minus(&rhs)) {
                    return Some(format!("[L_{m}, L_{n}] on {v}"));
                }
            }
        }
        None
    });
    CheckResult::new("[L_m, L_n] = (m-n)L_{m+n} + (c/12)(m^3-m)δ", depth, failure)
}

/// Commutation of `L_k` with every `V(a)`, `a` a basis state up to `depth`:
/// `[L_k, V(a)(n)] = expected(k, α, n)`, checked on states up to `depth`.
fn virasoro_commutation(
    inst: &VosaInstance,
    l: &Field,
    k: i64,
    depth: HalfInt,
    expected: impl Fn(&Field, HalfInt, i64, &BasisState) -> StateVector + Sync + Send,
) -> Result<Option<String>> {
    let m = inst.module();
    let states = states_up_to(m, depth);
    let fields = states
        .iter()
        .map(|a| Ok((a.clone(), inst.map.field_of_basis(a)?)))
        .collect::<Result<Vec<_>>>()?;
    Ok(first_failure(&fields, |(a, f)| {
        let alpha = a.grade();
        for v in &states {
            for n in slots(v.grade(), alpha, depth) {
                let lhs = graded_commutator(m, l, f, k + 1, n, v, false);
                if !vanishes(m, &lhs.minus(&expected(f, alpha, n, v))) {
                    return Some(format!("[L_{k}, V({a})({n})] on {v}"));
                }
            }
        }
        None
    }))
}

/// Checks the seven axioms of a vertex operator superalgebra on the truncation at `depth`.
pub fn check_vosa_axioms(inst: &VosaInstance, depth: HalfInt) -> Result<CheckReport> {
    let m = inst.module().clone();
    let states = states_up_to(&m, depth);
    let mut r = CheckReport::default();

    // 1. vacuum
    let mut vac = inst.system.check_vacuum(depth);
    if vac.is_none() {
        let id = inst.field_of_state(&inst.system.vacuum)?;
        vac = first_failure(&states, |v| {
            let span = depth.ceil() + 2;
            for n in -span..=span {
                let out = id.act_basis(&m, n, v);
                let expected = if n == -1 { StateVector::basis(v.clone()) } else { StateVector::zero() };
                if !vanishes(&m, &out.minus(&expected)) {
                    return Some(format!("V(Ω)({n}) on {v}"));
                }
            }
            None
        });
    }
    r.record("axiom 1: vacuum", depth, vac);

    // 2. irreducibility
    r.record("axiom 2: irreducibility", depth, spans_failure(&inst.system.closure(depth)?));

    // 3. locality
    r.record("axiom 3: locality", depth, inst.system.check_locality(depth)?);

    // 4. Virasoro
    let l = inst.virasoro_field()?;
    let c = inst.central_charge();
    let vir = if inst.omega.by_grade().keys().any(|g| *g != HalfInt::int(2)) || inst.omega.is_zero() {
        Some("ω is not in grade 2".to_string())
    } else {
        let bound = depth.floor().max(2);
        virasoro_relations(&m, &l, &c, depth, bound).detail
    };
    r.record("axiom 4: Virasoro with c = 2|ω|^2", depth, vir);

    // 5. L_0 is the grading and parity follows the grade
    let grading = first_failure(&states, |v| {
        let out = l.act_basis(&m, 1, v);
        let expected = StateVector::single(v.clone(), v.grade().to_scalar());
        if !vanishes(&m, &out.minus(&expected)) {
            return Some(format!("L_0 on {v}"));
        }
        if v.parity().is_odd() != (v.grade().twice() % 2 == 1) {
            return Some(format!("parity of {v}"));
        }
        None
    });
    r.record("axiom 5: L_0 = D and parity", depth, grading);

    // 6. [L_0, A(n)] = (α - n - 1) A(n)
    let six = virasoro_commutation(inst, &l, 0, depth, |f, alpha, n, v| {
        f.act_basis(&m, n, v).scaled(&(alpha - HalfInt::int(n + 1)).to_scalar())
    })?;
    r.record("axiom 6: [L_0, A(n)] = (α-n-1)A(n)", depth, six);

    // 7. [L_{-1}, A(n)] = -n A(n-1) and V(L_{-1}a) = V(a)'
    let mut seven = virasoro_commutation(inst, &l, -1, depth, |f, _, n, v| {
        f.act_basis(&m, n - 1, v).scaled(&Scalar::from_int(-n))
    })?;
    if seven.is_none() {
        let inner = states_up_to(&m, depth - HalfInt::ONE);
        let pairs = inner
            .iter()
            .map(|a| {
                let sa = StateVector::basis(a.clone());
                let ta = l.act_vec(&m, 0, &sa);
                Ok((a.clone(), inst.map.field_of_basis(a)?, inst.field_of_state(&ta)?))
            })
            .collect::<Result<Vec<_>>>()?;
        seven = first_failure(&pairs, |(a, fa, fta)| {
            for v in &states {
                for n in slots(v.grade(), a.grade() + HalfInt::ONE, depth) {
                    let lhs = fta.act_basis(&m, n, v);
                    let rhs = fa.act_basis(&m, n - 1, v).scaled(&Scalar::from_int(-n));
                    if !vanishes(&m, &lhs.minus(&rhs)) {
                        return Some(format!("V(L_-1 {a})({n}) on {v}"));
                    }
                }
            }
            None
        });
    }
    r.record("axiom 7: [L_-1, A(n)] = -nA(n-1), V(L_-1 a) = V(a)'", depth, seven);
    Ok(r)
}
