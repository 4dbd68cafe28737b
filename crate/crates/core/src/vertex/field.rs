//! Fields as lazily evaluated mode families.

use std::fmt;
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use serde_json::json;

use crate::error::{Error, Result};
use crate::fock::{BasisState, GradedModule, StateVector};
use crate::modes::{HalfInt, ModeKind, ModeSymbol, Parity};
use crate::scalar::Scalar;

static NEXT_FIELD: AtomicUsize = AtomicUsize::new(1);

#[derive(Clone)]
pub struct Field(Arc<Node>);

struct Node {
    id: usize,
    expr: Expr,
    weight: Option<HalfInt>,
    max_weight: HalfInt,
    parity: Option<Parity>,
}

#[derive(Clone)]
pub enum Expr {
    Zero,
    Identity,
    Generator(ModeKind),
    NProduct(Field, Field, i64),
    Derivative(Field),
    LinComb(Vec<(Scalar, Field)>),
}

/// `n (n-1) … (n-k+1) / k!` for any integer `n`.
pub fn binomial(n: i64, k: i64) -> Scalar {
    if k < 0 {
        return Scalar::zero();
    }
    let mut num = BigInt::from(1);
    let mut den = BigInt::from(1);
    for i in 0..k {
        num *= BigInt::from(n - i);
        den *= BigInt::from(i + 1);
    }
    Scalar::from_rational(BigRational::new(num, den))
}

fn sign(odd: bool) -> Scalar {
    Scalar::from_int(if odd { -1 } else { 1 })
}

impl Field {
    fn make(expr: Expr, weight: Option<HalfInt>, max_weight: HalfInt, parity: Option<Parity>) -> Field {
        Field(Arc::new(Node {
            id: NEXT_FIELD.fetch_add(1, Ordering::Relaxed),
            expr,
            weight,
            max_weight,
            parity,
        }))
    }

    pub fn zero() -> Field {
        Field::make(Expr::Zero, None, HalfInt::ZERO, None)
    }

    pub fn identity() -> Field {
        Field::make(Expr::Identity, Some(HalfInt::ZERO), HalfInt::ZERO, Some(Parity::Even))
    }

    /// The field `Σ_n A_n z^{-n-α}` of a mode family.
    pub fn generator(kind: ModeKind) -> Result<Field> {
        if kind == ModeKind::Central {
            return Err(Error::InvalidParameter("the central element is not a field".into()));
        }
        let w = kind.weight();
        Ok(Field::make(Expr::Generator(kind), Some(w), w, Some(kind.parity())))
    }

    pub fn psi(color: usize) -> Field {
        Field::generator(ModeKind::Fermion(color)).expect("fermion field")
    }

    pub fn boson(color: usize) -> Field {
        Field::generator(ModeKind::Boson(color)).expect("boson field")
    }

    pub fn virasoro() -> Field {
        Field::generator(ModeKind::Virasoro).expect("Virasoro field")
    }

    pub fn supercurrent() -> Field {
        Field::generator(ModeKind::Super).expect("super field")
    }

    pub fn id(&self) -> usize {
        self.0.id
    }

    pub fn expr(&self) -> &Expr {
        &self.0.expr
    }

    pub fn is_zero(&self) -> bool {
        matches!(self.0.expr, Expr::Zero)
    }

    /// Conformal weight when homogeneous.
    pub fn weight(&self) -> Option<HalfInt> {
        self.0.weight
    }

    pub fn max_weight(&self) -> HalfInt {
        self.0.max_weight
    }

    /// Parity when homogeneous; `None` for mixed combinations and the zero field.
    pub fn parity(&self) -> Option<Parity> {
        self.0.parity
    }

    /// The n-th product `A_n B`.
    pub fn nth_product(&self, other: &Field, n: i64) -> Field {
        if self.is_zero() || other.is_zero() {
            return Field::zero();
        }
        // split mixed-parity operands so every product node has definite parities
        if self.parity().is_none() {
            if let Expr::LinComb(terms) = &self.0.expr {
                return Field::lincomb(terms.iter().map(|(c, f)| (c.clone(), f.nth_product(other, n))).collect());
            }
        }
        if other.parity().is_none() {
            if let Expr::LinComb(terms) = &other.0.expr {
                return Field::lincomb(terms.iter().map(|(c, f)| (c.clone(), self.nth_product(f, n))).collect());
            }
        }
        let shift = HalfInt::int(n + 1);
        let weight = match (self.weight(), other.weight()) {
            (Some(a), Some(b)) => Some(a + b - shift),
            _ => None,
        };
        let parity = match (self.parity(), other.parity()) {
            (Some(a), Some(b)) => Some(a.plus(b)),
            _ => None,
        };
        Field::make(
            Expr::NProduct(self.clone(), other.clone(), n),
            weight,
            self.max_weight() + other.max_weight() - shift,
            parity,
        )
    }

    pub fn derivative(&self) -> Field {
        if self.is_zero() {
            return Field::zero();
        }
        Field::make(
            Expr::Derivative(self.clone()),
            self.weight().map(|w| w + HalfInt::ONE),
            self.max_weight() + HalfInt::ONE,
            self.parity(),
        )
    }

    pub fn lincomb(terms: Vec<(Scalar, Field)>) -> Field {
        let terms: Vec<(Scalar, Field)> = terms
            .into_iter()
            .filter(|(c, f)| !c.is_zero() && !f.is_zero())
            .collect();
        if terms.is_empty() {
            return Field::zero();
        }
        if terms.len() == 1 && terms[0].0.is_one() {
            return terms[0].1.clone();
        }
        let first_w = terms[0].1.weight();
        let weight = if terms.iter().all(|(_, f)| f.weight() == first_w) { first_w } else { None };
        let first_p = terms[0].1.parity();
        let parity = if terms.iter().all(|(_, f)| f.parity() == first_p) { first_p } else { None };
        let max_weight = terms.iter().map(|(_, f)| f.max_weight()).max().expect("nonempty");
        Field::make(Expr::LinComb(terms), weight, max_weight, parity)
    }

    pub fn scaled(&self, c: &Scalar) -> Field {
        Field::lincomb(vec![(c.clone(), self.clone())])
    }

    pub fn plus(&self, other: &Field) -> Field {
        Field::lincomb(vec![(Scalar::one(), self.clone()), (Scalar::one(), other.clone())])
    }

    /// Verifies every generator in the tree acts on `module`.
    pub fn check_support(&self, module: &GradedModule) -> Result<()> {
        match &self.0.expr {
            Expr::Zero | Expr::Identity => Ok(()),
            Expr::Generator(k) => {
                if module.supports(*k) {
                    Ok(())
                } else {
                    Err(Error::UnsupportedField(format!("{k:?}")))
                }
            }
            Expr::NProduct(a, b, _) => {
                a.check_support(module)?;
                b.check_support(module)
            }
            Expr::Derivative(a) => a.check_support(module),
            Expr::LinComb(t) => t.iter().try_for_each(|(_, f)| f.check_support(module)),
        }
    }

    /// The mode `A(n)` applied to `v`, after checking the module carries every generator.
    pub fn act(&self, module: &GradedModule, n: i64, v: &StateVector) -> Result<StateVector> {
        self.check_support(module)?;
        Ok(self.act_vec(module, n, v))
    }

    pub fn act_vec(&self, module: &GradedModule, n: i64, v: &StateVector) -> StateVector {
        let mut out = StateVector::zero();
        for (b, c) in v.iter() {
            out.add_scaled(c, &self.act_basis(module, n, b));
        }
        out
    }

    pub fn act_basis(&self, module: &GradedModule, n: i64, b: &BasisState) -> StateVector {
        // A(n) maps grade k to k - n + α - 1
        let k = b.grade();
        if (k - HalfInt::int(n) + self.max_weight() - HalfInt::ONE).twice() < 0 {
            return StateVector::zero();
        }
        match &self.0.expr {
            Expr::Zero => StateVector::zero(),
            Expr::Identity => {
                if n == -1 {
                    StateVector::basis(b.clone())
                } else {
                    StateVector::zero()
                }
            }
            Expr::Generator(kind) => {
                let index = HalfInt::int(n) - kind.weight() + HalfInt::ONE;
                module.apply_basis(ModeSymbol { kind: *kind, index }, b)
            }
            _ => {
                let key = (self.id(), n, b.clone());
                if let Some(hit) = module.field_cache.get(&key) {
                    return hit.clone();
                }
                let out = self.evaluate(module, n, b);
                module.field_cache.insert(key, out.clone());
                out
            }
        }
    }

    fn evaluate(&self, module: &GradedModule, m: i64, b: &BasisState) -> StateVector {
        match &self.0.expr {
            Expr::Derivative(a) => {
                // A'(m) = -m A(m-1)
                a.act_basis(module, m - 1, b).scaled(&Scalar::from_int(-m))
            }
            Expr::LinComb(terms) => {
                let mut out = StateVector::zero();
                for (c, f) in terms {
                    out.add_scaled(c, &f.act_basis(module, m, b));
                }
                out
            }
            Expr::NProduct(a, bf, n) => nth_product_mode(module, a, bf, *n, m, b),
            _ => unreachable!("leaf fields are evaluated directly"),
        }
    }

    pub fn to_json(&self) -> serde_json::Value {
        match &self.0.expr {
            Expr::Zero => json!({"lincomb": []}),
            Expr::Identity => json!({"gen": "id"}),
            Expr::Generator(k) => match k {
                ModeKind::Fermion(a) => json!({"gen": "psi", "color": a}),
                ModeKind::Boson(a) => json!({"gen": "X", "color": a}),
                ModeKind::Virasoro => json!({"gen": "L"}),
                ModeKind::Super => json!({"gen": "G"}),
                ModeKind::Central => json!({"gen": "central"}),
            },
            Expr::NProduct(a, b, n) => json!({"nprod": [a.to_json(), b.to_json(), n]}),
            Expr::Derivative(a) => json!({"deriv": a.to_json()}),
            Expr::LinComb(t) => json!({
                "lincomb": t.iter().map(|(c, f)| json!([c, f.to_json()])).collect::<Vec<_>>()
            }),
        }
    }

    pub fn from_json(value: &serde_json::Value) -> Result<Field> {
        let bad = |msg: &str| Error::Malformed(format!("field JSON: {msg}: {value}"));
        let obj = value.as_object().ok_or_else(|| bad("expected an object"))?;
        if let Some(g) = obj.get("gen") {
            let color = obj.get("color").and_then(|c| c.as_u64()).map(|c| c as usize);
            let kind = match g.as_str().ok_or_else(|| bad("gen must be a string"))? {
                "id" => return Ok(Field::identity()),
                "psi" => ModeKind::Fermion(color.ok_or_else(|| bad("psi needs a color"))?),
                "X" | "x" => ModeKind::Boson(color.ok_or_else(|| bad("X needs a color"))?),
                "L" => ModeKind::Virasoro,
                "G" => ModeKind::Super,
                _ => return Err(bad("unknown generator")),
            };
            return Field::generator(kind);
        }
        if let Some(p) = obj.get("nprod") {
            let arr = p.as_array().filter(|a| a.len() == 3).ok_or_else(|| bad("nprod takes [A, B, n]"))?;
            let n = arr[2].as_i64().ok_or_else(|| bad("n must be an integer"))?;
            return Ok(Field::from_json(&arr[0])?.nth_product(&Field::from_json(&arr[1])?, n));
        }
        if let Some(d) = obj.get("deriv") {
            return Ok(Field::from_json(d)?.derivative());
        }
        if let Some(l) = obj.get("lincomb") {
            let arr = l.as_array().ok_or_else(|| bad("lincomb takes a list"))?;
            let mut terms = Vec::new();
            for t in arr {
                let pair = t.as_array().filter(|p| p.len() == 2).ok_or_else(|| bad("lincomb entries are [c, field]"))?;
                let c: Scalar = serde_json::from_value(pair[0].clone()).map_err(|e| bad(&e.to_string()))?;
                terms.push((c, Field::from_json(&pair[1])?));
            }
            return Ok(Field::lincomb(terms));
        }
        Err(bad("unknown field form"))
    }
}

/// `(A_n B)(m) b` by the finite binomial formula.
fn nth_product_mode(module: &GradedModule, a: &Field, bf: &Field, n: i64, m: i64, b: &BasisState) -> StateVector {
    let eps = match (a.parity(), bf.parity()) {
        (Some(p), Some(q)) => p.is_odd() && q.is_odd(),
        _ => false,
    };
    let k = b.grade();
    let mut out = StateVector::zero();
    if n >= 0 {
        for p in 0..=n {
            let c = &binomial(n, p) * &sign(p % 2 == 1);
            let ab = a.act_vec(module, n - p, &bf.act_basis(module, m + p, b));
            let ba = bf.act_vec(module, m + p, &a.act_basis(module, n - p, b));
            out.add_scaled(&c, &ab);
            out.add_scaled(&(&c * &sign(!eps)), &ba);
        }
        return out;
    }
    // B(m+p) b vanishes once m + p > k + β - 1
    let first_max = (k + bf.max_weight() - HalfInt::ONE).floor() - m;
    for p in 0..=first_max.max(-1) {
        let c = binomial(p - n - 1, p);
        let inner = bf.act_basis(module, m + p, b);
        if inner.is_zero() {
            continue;
        }
        out.add_scaled(&c, &a.act_vec(module, n - p, &inner));
    }
    // A(p) b vanishes once p > k + α - 1
    let second_max = (k + a.max_weight() - HalfInt::ONE).floor();
    let s = sign(!(eps ^ (n.rem_euclid(2) == 1)));
    for p in 0..=second_max.max(-1) {
        let c = &binomial(p - n - 1, p) * &s;
        let inner = a.act_basis(module, p, b);
        if inner.is_zero() {
            continue;
        }
        out.add_scaled(&c, &bf.act_vec(module, m + n - p, &inner));
    }
    out
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.0.expr {
            Expr::Zero => write!(f, "0"),
            Expr::Identity => write!(f, "Id"),
            Expr::Generator(k) => match k {
                ModeKind::Fermion(a) => write!(f, "psi{a}"),
                ModeKind::Boson(a) => write!(f, "X{a}"),
                ModeKind::Virasoro => write!(f, "L"),
                ModeKind::Super => write!(f, "G"),
                ModeKind::Central => write!(f, "C"),
            },
            Expr::NProduct(a, b, n) => write!(f, "({a})_{n}({b})"),
            Expr::Derivative(a) => write!(f, "({a})'"),
            Expr::LinComb(t) => {
                for (i, (c, x)) in t.iter().enumerate() {
                    if i > 0 {
                        write!(f, " + ")?;
                    }
                    write!(f, "({c}){x}")?;
                }
                Ok(())
            }
        }
    }
}

impl fmt::Debug for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::vertex::locality::{locality_order, ope_singular_part, same_action, LocalityOrder};

    fn h(twice: i64) -> HalfInt {
        HalfInt::from_twice(twice)
    }

    fn virasoro_of_fermion() -> Field {
        let psi = Field::psi(0);
        psi.nth_product(&psi, -2).scaled(&Scalar::from_frac(1, 2))
    }

    #[test]
    fn generalized_binomials() {
        assert_eq!(binomial(5, 2), Scalar::from_int(10));
        assert_eq!(binomial(-1, 3), Scalar::from_int(-1));
        assert_eq!(binomial(-2, 2), Scalar::from_int(3));
        assert!(binomial(3, 5).is_zero());
        assert!(binomial(3, -1).is_zero());
    }

    #[test]
    fn fermion_products() {
        let f = GradedModule::fermion(1).unwrap();
        let psi = Field::psi(0);
        assert!(same_action(&f, &psi.nth_product(&psi, 0), &Field::identity(), h(6)));
        assert!(same_action(&f, &psi.nth_product(&psi, -1), &Field::zero(), h(6)));
        assert!(same_action(&f, &psi.nth_product(&psi, 1), &Field::zero(), h(6)));
        assert_eq!(psi.nth_product(&psi, -2).weight(), Some(HalfInt::int(2)));
        assert_eq!(psi.nth_product(&psi, -2).parity(), Some(Parity::Even));
    }

    #[test]
    fn fermion_virasoro_locality_and_ope() {
        let f = GradedModule::fermion(1).unwrap();
        let psi = Field::psi(0);
        let l = virasoro_of_fermion();
        assert_eq!(
            locality_order(&f, &psi, &l, h(4)).unwrap(),
            LocalityOrder { order: 2, parity: Parity::Even }
        );
        let (_, ope) = ope_singular_part(&f, &psi, &l, h(4)).unwrap();
        assert_eq!(ope.iter().map(|t| t.n).collect::<Vec<_>>(), vec![1, 0]);
        assert!(same_action(&f, &ope[0].field, &psi.scaled(&Scalar::from_frac(1, 2)), h(4)));
        assert!(same_action(&f, &ope[1].field, &psi.derivative().scaled(&Scalar::from_frac(-1, 2)), h(4)));

        let (loc, ope) = ope_singular_part(&f, &l, &l, h(4)).unwrap();
        assert_eq!(loc, LocalityOrder { order: 4, parity: Parity::Even });
        let quarter = Field::identity().scaled(&Scalar::from_frac(1, 4));
        assert!(same_action(&f, &ope[0].field, &quarter, h(4)));
        assert!(same_action(&f, &ope[1].field, &Field::zero(), h(4)));
        assert!(same_action(&f, &ope[2].field, &l.scaled(&Scalar::from_int(2)), h(4)));
        assert!(same_action(&f, &ope[3].field, &l.derivative(), h(4)));
    }

    #[test]
    fn json_round_trip() {
        let psi = Field::psi(0);
        let t = Field::lincomb(vec![
            (Scalar::from_frac(1, 2), psi.nth_product(&psi, -2)),
            (Scalar::sqrt_int(2), Field::boson(1).derivative()),
        ]);
        let back = Field::from_json(&t.to_json()).unwrap();
        assert_eq!(back.to_json(), t.to_json());
        assert!(Field::from_json(&serde_json::json!({"gen": "psi"})).is_err());
        assert!(Field::from_json(&serde_json::json!({"nprod": [1, 2]})).is_err());
    }
}
