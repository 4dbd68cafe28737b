//! Locality orders, singular parts of operator products and mode brackets.

use rayon::prelude::*;
use serde::Serialize;

use super::field::{binomial, Field};
use super::report::CheckResult;
use crate::error::{Error, Result};
use crate::fock::{BasisState, GradedModule, StateVector};
use crate::modes::{HalfInt, Parity};
use crate::scalar::Scalar;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct LocalityOrder {
    pub order: usize,
    pub parity: Parity,
}

/// `A(m)B(n)b - (-1)^ε B(n)A(m)b`.
pub fn graded_commutator(
    module: &GradedModule,
    a: &Field,
    b: &Field,
    m: i64,
    n: i64,
    state: &BasisState,
    odd: bool,
) -> StateVector {
    let ab = a.act_vec(module, m, &b.act_basis(module, n, state));
    let ba = b.act_vec(module, n, &a.act_basis(module, m, state));
    if odd {
        ab.plus(&ba)
    } else {
        ab.minus(&ba)
    }
}

/// Whether `v` is zero in the module (modulo the radical for quotients).
pub(crate) fn vanishes(module: &GradedModule, v: &StateVector) -> bool {
    v.is_zero() || (module.is_quotient() && module.is_null(v))
}

/// Basis states of every grade up to `depth`.
pub(crate) fn states_up_to(module: &GradedModule, depth: HalfInt) -> Vec<BasisState> {
    module
        .grades_up_to(depth)
        .into_iter()
        .flat_map(|g| module.enumerate_basis(g).iter().cloned().collect::<Vec<_>>())
        .collect()
}

/// Whether two fields act identically on every basis state up to `depth`, for all
/// slots landing in grades `[0, depth]`.
pub fn same_action(module: &GradedModule, a: &Field, b: &Field, depth: HalfInt) -> bool {
    let w = a.max_weight().max(b.max_weight());
    states_up_to(module, depth).par_iter().all(|v| {
        let top = v.grade() + w - HalfInt::ONE;
        ((top - depth).ceil() - 1..=top.floor()).all(|n| {
            let d = a.act_basis(module, n, v).minus(&b.act_basis(module, n, v));
            vanishes(module, &d)
        })
    })
}

fn homogeneous(f: &Field) -> Result<(HalfInt, Parity)> {
    match (f.weight(), f.parity()) {
        (Some(w), Some(p)) => Ok((w, p)),
        _ => Err(Error::InvalidParameter(format!("field {f} is not homogeneous"))),
    }
}

/// Whether `(z-w)^N [A(z), B(w)]_ε` vanishes on every basis state up to `depth`.
///
/// Each coefficient `Σ_j C(N,j)(-1)^j [A(r+N-j), B(s+j)]_ε` is tested for all output
/// grades up to `depth`, with `s` ranging over the window where either factor can act
/// nontrivially on the input, widened by two on each side.
pub fn is_local_at(module: &GradedModule, a: &Field, b: &Field, order: usize, odd: bool, depth: HalfInt) -> Result<bool> {
    let (alpha, _) = homogeneous(a)?;
    let (beta, _) = homogeneous(b)?;
    a.check_support(module)?;
    b.check_support(module)?;
    let big_n = order as i64;
    let coeffs: Vec<Scalar> = (0..=big_n)
        .map(|j| &binomial(big_n, j) * &Scalar::from_int(if j % 2 == 0 { 1 } else { -1 }))
        .collect();
    let states = states_up_to(module, depth);
    let grades = module.grades_up_to(depth);
    Ok(states.par_iter().all(|v| {
        let k = v.grade();
        grades.iter().all(|&q| {
            let t = k + alpha + beta - HalfInt::int(2) - q;
            let Some(t) = t.as_integer() else {
                return true;
            };
            let lo = t - big_n - (k + alpha - HalfInt::ONE).floor() - 2;
            let hi = (k + beta - HalfInt::ONE).floor() + 2;
            (lo..=hi).all(|s| {
                let r = t - big_n - s;
                let mut acc = StateVector::zero();
                for (j, c) in coeffs.iter().enumerate() {
                    let j = j as i64;
                    let x = graded_commutator(module, a, b, r + big_n - j, s + j, v, odd);
                    acc.add_scaled(c, &x);
                }
                vanishes(module, &acc)
            })
        })
    }))
}

/// Minimal `N` and parity making `A` and `B` local on the truncation.
///
/// The parity predicted by the field degrees is tried first; the other one is tried
/// as well so a wrong prediction is detected rather than assumed away.
pub fn locality_order(module: &GradedModule, a: &Field, b: &Field, depth: HalfInt) -> Result<LocalityOrder> {
    if a.is_zero() || b.is_zero() {
        return Ok(LocalityOrder {
            order: 0,
            parity: Parity::Even,
        });
    }
    let (alpha, pa) = homogeneous(a)?;
    let (beta, pb) = homogeneous(b)?;
    let expected = if pa.is_odd() && pb.is_odd() { Parity::Odd } else { Parity::Even };
    let other = if expected == Parity::Odd { Parity::Even } else { Parity::Odd };
    let max_order = ((alpha + beta).ceil().max(1) + 2) as usize;
    for order in 0..=max_order {
        for parity in [expected, other] {
            if is_local_at(module, a, b, order, parity.is_odd(), depth)? {
                return Ok(LocalityOrder { order, parity });
            }
        }
    }
    Err(Error::NotLocal(format!(
        "no locality order up to {max_order} for ({a}, {b}) at depth {depth}"
    )))
}

#[derive(Debug, Clone)]
pub struct OpeTerm {
    /// The pole order minus one.
    pub n: i64,
    pub field: Field,
}

/// The fields `A_n B` for `N-1 ≥ n ≥ 0`, highest pole first.
pub fn ope_singular_part(module: &GradedModule, a: &Field, b: &Field, depth: HalfInt) -> Result<(LocalityOrder, Vec<OpeTerm>)> {
    let loc = locality_order(module, a, b, depth)?;
    let terms = (0..loc.order as i64)
        .rev()
        .map(|n| OpeTerm {
            n,
            field: a.nth_product(b, n),
        })
        .collect();
    Ok((loc, terms))
}

/// `Σ_p C(m,p) (A_p B)(m+n-p) v` over the singular part.
pub fn bracket_from_ope(module: &GradedModule, ope: &[OpeTerm], m: i64, n: i64, v: &BasisState) -> StateVector {
    let mut out = StateVector::zero();
    for t in ope {
        let c = binomial(m, t.n);
        if c.is_zero() {
            continue;
        }
        out.add_scaled(&c, &t.field.act_basis(module, m + n - t.n, v));
    }
    out
}

/// Compares `bracket_from_ope` with the direct graded commutator for all slots
/// `|m|, |n| ≤ bound` on every basis state up to `depth`.
pub fn check_bracket_from_ope(
    module: &GradedModule,
    a: &Field,
    b: &Field,
    depth: HalfInt,
    bound: i64,
) -> Result<CheckResult> {
    let relation = format!("bracket_from_ope[{a}, {b}]");
    let (loc, ope) = ope_singular_part(module, a, b, depth)?;
    let states = states_up_to(module, depth);
    let failure = states.par_iter().find_map_any(|v| {
        for m in -bound..=bound {
            for n in -bound..=bound {
                let lhs = graded_commutator(module, a, b, m, n, v, loc.parity.is_odd());
                let rhs = bracket_from_ope(module, &ope, m, n, v);
                if !vanishes(module, &lhs.minus(&rhs)) {
                    return Some(format!("slots ({m}, {n}) on {v}"));
                }
            }
        }
        None
    });
    Ok(CheckResult::new(relation, depth, failure))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn h(twice: i64) -> HalfInt {
        HalfInt::from_twice(twice)
    }

    #[test]
    fn psi_is_self_local_with_order_one() {
        let f = GradedModule::fermion(1).unwrap();
        let psi = Field::psi(0);
        let loc = locality_order(&f, &psi, &psi, h(6)).unwrap();
        assert_eq!(loc, LocalityOrder { order: 1, parity: Parity::Odd });
    }

    #[test]
    fn identity_has_empty_singular_part() {
        let f = GradedModule::fermion(1).unwrap();
        let (loc, ope) = ope_singular_part(&f, &Field::identity(), &Field::psi(0), h(4)).unwrap();
        assert_eq!(loc.order, 0);
        assert!(ope.is_empty());
    }

    #[test]
    fn ns_generators_from_the_ope() {
        let v = GradedModule::ns_verma(Scalar::from_frac(7, 10), Scalar::from_frac(1, 10), false).unwrap();
        let g = Field::supercurrent();
        let l = Field::virasoro();
        let (loc, _) = ope_singular_part(&v, &g, &g, h(3)).unwrap();
        assert_eq!(loc, LocalityOrder { order: 3, parity: Parity::Odd });
        assert!(check_bracket_from_ope(&v, &g, &g, h(3), 2).unwrap().passed());
        assert!(check_bracket_from_ope(&v, &l, &g, h(3), 2).unwrap().passed());
    }
}
