use num_bigint::BigInt;
use num_rational::BigRational;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg::rank;
use crate::modes::HalfInt;
use crate::scalar::Scalar;
use crate::vertex::CheckResult;

/// `A(1), …, A(up_to)` from `(n-1)A(n+1) = (n+2)A(n) - (2n+1)A(1)`.
pub fn cocycle_sequence(a1: &BigRational, a2: &BigRational, up_to: usize) -> Vec<BigRational> {
    let mut seq = vec![a1.clone(), a2.clone()];
    for n in 2..up_to as i64 {
        let an = &seq[(n - 1) as usize];
        let next = (BigRational::from_integer(BigInt::from(n + 2)) * an
            - BigRational::from_integer(BigInt::from(2 * n + 1)) * a1)
            / BigRational::from_integer(BigInt::from(n - 1));
        seq.push(next);
    }
    seq.truncate(up_to);
    seq
}

#[derive(Debug, Clone, Serialize)]
pub struct CocycleBasis {
    pub up_to: usize,
    /// Solutions seeded by `(A(1), A(2)) = (1, 0)` and `(0, 1)`.
    pub basis: [Vec<Scalar>; 2],
    /// The solution space has dimension two and equals `span{n, n³}`.
    pub spans_linear_and_cubic: bool,
    /// Solutions with `A(1) = 0` are multiples of `n³ - n`.
    pub vanishing_a1_is_cubic: bool,
}

impl CocycleBasis {
    pub fn passed(&self) -> bool {
        self.spans_linear_and_cubic && self.vanishing_a1_is_cubic
    }
}

fn q(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

fn to_scalars(v: &[BigRational]) -> Vec<Scalar> {
    v.iter().cloned().map(Scalar::from_rational).collect()
}

pub fn cocycle_basis(up_to: usize) -> Result<CocycleBasis> {
    if up_to < 3 {
        return Err(Error::InvalidParameter("the recursion needs n ≥ 3".into()));
    }
    let e1 = cocycle_sequence(&q(1), &q(0), up_to);
    let e2 = cocycle_sequence(&q(0), &q(1), up_to);
    let linear: Vec<BigRational> = (1..=up_to as i64).map(q).collect();
    let cubic: Vec<BigRational> = (1..=up_to as i64).map(|n| q(n * n * n)).collect();
    let pair = rank(&vec![e1.clone(), e2.clone()]);
    let joint = rank(&vec![e1.clone(), e2.clone(), linear.clone(), cubic.clone()]);
    let spans = pair == 2
        && joint == 2
        && cocycle_sequence(&q(1), &q(2), up_to) == linear
        && cocycle_sequence(&q(1), &q(8), up_to) == cubic;
    let shape: Vec<BigRational> = (1..=up_to as i64).map(|n| q(n * n * n - n)).collect();
    let vanishing = cocycle_sequence(&q(0), &q(6), up_to) == shape;
    Ok(CocycleBasis {
        up_to,
        basis: [to_scalars(&e1), to_scalars(&e2)],
        spans_linear_and_cubic: spans,
        vanishing_a1_is_cubic: vanishing,
    })
}

/// `(c/6)(n³-n) + (s-n/2)C(r) + (r-n/2)C(s) = 0` whenever `r + s + n = 0`,
/// for half-odd `r, s` with `|r|, |s| ≤ depth`.
pub fn verify_odd_cocycle_with(c: &Scalar, depth: HalfInt, central: impl Fn(&Scalar) -> Scalar) -> CheckResult {
    let top = depth.twice().abs();
    let odd: Vec<i64> = (-top..=top).filter(|t| t.rem_euclid(2) == 1).collect();
    let half = Scalar::from_frac(1, 2);
    let mut failure = None;
    'outer: for &tr in &odd {
        for &ts in &odd {
            let n = -(tr + ts) / 2;
            let r = Scalar::from_frac(tr, 2);
            let s = Scalar::from_frac(ts, 2);
            let ns = Scalar::from_int(n);
            let nh = &ns * &half;
            let total = &(&(c * &Scalar::from_frac(1, 6)) * &Scalar::from_int(n * n * n - n))
                + &(&(&(&s - &nh) * &central(&r)) + &(&(&r - &nh) * &central(&s)));
            if !total.is_zero() {
                failure = Some(format!("r = {r}, s = {s}"));
                break 'outer;
            }
        }
    }
    CheckResult::new("odd cocycle (c/6)(n^3-n) + (s-n/2)C(r) + (r-n/2)C(s) = 0", depth, failure)
}

/// The odd cocycle check with `C(s) = (c/3)(s² - ¼)`.
pub fn verify_odd_cocycle(c: &Scalar, depth: HalfInt) -> CheckResult {
    let third = c * &Scalar::from_frac(1, 3);
    verify_odd_cocycle_with(c, depth, |s| &third * &(&(s * s) - &Scalar::from_frac(1, 4)))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn seeded_solutions() {
        let cube: Vec<BigRational> = (1..=12).map(|n| q(n * n * n)).collect();
        assert_eq!(cocycle_sequence(&q(1), &q(8), 12), cube);
        let b = cocycle_basis(12).unwrap();
        assert!(b.passed());
        assert!(cocycle_basis(2).is_err());
    }

    #[test]
    fn odd_cocycle() {
        let h = HalfInt::from_twice(11);
        for c in [Scalar::zero(), Scalar::from_frac(1, 2), Scalar::from_frac(5, 2)] {
            assert!(verify_odd_cocycle(&c, h).passed());
        }
        let wrong = verify_odd_cocycle_with(&Scalar::from_frac(1, 2), h, |s| s * s);
        assert!(!wrong.passed());
    }
}
