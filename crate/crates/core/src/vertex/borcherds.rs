//! Associativity of vertex operators on a truncation.

use super::axioms::VosaInstance;
use super::field::binomial;
use super::locality::{locality_order, vanishes};
use super::report::CheckResult;
use crate::error::{Error, Result};
use crate::fock::StateVector;
use crate::modes::HalfInt;
use crate::scalar::Scalar;

/// Compares `(z-w)^N V(a,z)V(b,w)v` with `(z-w)^N V(V(a,z-w)b, w)v`.
///
/// With `N` the locality order of `V(a)` and `V(b)`, the left side `P(z, w)` is a
/// Laurent polynomial. Writing `z = w + x`, the coefficient of `x^k` in `P(w + x, w)`
/// must equal `V(a(N-1-k)b, w)v`. Both sides are compared coefficient by coefficient
/// for every output grade up to `depth` and every `k` with `a(N-1-k)b` of grade at
/// most `grade(a) + grade(b) + depth`.
pub fn check_borcherds(
    inst: &VosaInstance,
    a: &StateVector,
    b: &StateVector,
    v: &StateVector,
    depth: HalfInt,
) -> Result<CheckResult> {
    let relation = "(z-w)^N V(a,z)V(b,w)v = (z-w)^N V(V(a,z-w)b,w)v";
    let m = inst.module();
    for (name, s) in [("a", a), ("b", b)] {
        if s.by_grade().len() > 1 {
            return Err(Error::InvalidParameter(format!("{name} is not homogeneous")));
        }
    }
    if a.is_zero() || b.is_zero() || v.is_zero() {
        return Ok(CheckResult::new(relation, depth, None));
    }
    let alpha = a.grade().expect("homogeneous");
    let beta = b.grade().expect("homogeneous");
    let fa = inst.field_of_state(a)?;
    let fb = inst.field_of_state(b)?;
    let big_n = locality_order(m, &fa, &fb, depth)?.order as i64;
    let top_k = big_n - 1 + depth.floor() + 1;

    // states a(N-1-k)b and their fields
    let mut products = Vec::new();
    for k in 0..=top_k {
        let s = fa.act_vec(m, big_n - 1 - k, b);
        products.push(inst.field_of_state(&s)?);
    }

    for (gv, comp) in v.by_grade() {
        for q in m.grades_up_to(depth) {
            let Some(total) = (q - gv - alpha - beta).as_integer() else {
                continue;
            };
            // i + j = S for z^i w^j contributing to output grade q
            let s_sum = total + big_n;
            let i_lo = -(gv + alpha).floor() - 2;
            let i_hi = s_sum + (gv + beta).floor() + 2;
            let mut p = Vec::new();
            for i in i_lo..=i_hi {
                let j = s_sum - i;
                let mut acc = StateVector::zero();
                for t in 0..=big_n {
                    let c = &binomial(big_n, t) * &Scalar::from_int(if t % 2 == 0 { 1 } else { -1 });
                    let inner = fb.act_vec(m, t - 1 - j, &comp);
                    acc.add_scaled(&c, &fa.act_vec(m, big_n - t - 1 - i, &inner));
                }
                p.push((i, acc));
            }
            for (k, field) in products.iter().enumerate() {
                let k = k as i64;
                let mut lhs = StateVector::zero();
                for (i, pij) in &p {
                    let c = binomial(*i, k);
                    if !c.is_zero() && !pij.is_zero() {
                        lhs.add_scaled(&c, pij);
                    }
                }
                let rhs = field.act_vec(m, k - s_sum - 1, &comp);
                if !vanishes(m, &lhs.minus(&rhs)) {
                    return Ok(CheckResult::new(
                        relation,
                        depth,
                        Some(format!("x^{k} coefficient at output grade {q}")),
                    ));
                }
            }
        }
    }
    Ok(CheckResult::new(relation, depth, None))
}
