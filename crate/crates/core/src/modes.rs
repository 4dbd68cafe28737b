//! Half-integers, parities and mode symbols.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Neg, Sub};

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// A half-integer stored as twice its value.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct HalfInt(i64);

impl HalfInt {
    pub const ZERO: HalfInt = HalfInt(0);
    pub const HALF: HalfInt = HalfInt(1);
    pub const ONE: HalfInt = HalfInt(2);

    pub const fn from_twice(twice: i64) -> Self {
        HalfInt(twice)
    }

    pub const fn int(n: i64) -> Self {
        HalfInt(2 * n)
    }

    pub const fn twice(self) -> i64 {
        self.0
    }

    pub fn is_integer(self) -> bool {
        self.0 % 2 == 0
    }

    /// Value as an integer when it is one.
    pub fn as_integer(self) -> Option<i64> {
        self.is_integer().then_some(self.0 / 2)
    }

    pub fn floor(self) -> i64 {
        self.0.div_euclid(2)
    }

    pub fn ceil(self) -> i64 {
        -(-self.0).div_euclid(2)
    }

    pub fn to_scalar(self) -> Scalar {
        Scalar::from_frac(self.0, 2)
    }

    pub fn abs(self) -> Self {
        HalfInt(self.0.abs())
    }

    pub fn parse(text: &str) -> Result<Self> {
        let q = crate::scalar::parse_rational(text)?;
        let twice = q * num_rational::BigRational::from_integer(2.into());
        if !twice.is_integer() {
            return Err(Error::Malformed(format!("`{text}` is not a half-integer")));
        }
        let v: i64 = num_traits::ToPrimitive::to_i64(&twice.to_integer())
            .ok_or_else(|| Error::Malformed(format!("`{text}` out of range")))?;
        Ok(HalfInt(v))
    }

    /// Half-integers `lo, lo+step, …` up to and including `hi`.
    pub fn range(lo: HalfInt, hi: HalfInt, step: HalfInt) -> impl Iterator<Item = HalfInt> {
        let s = step.0.max(1);
        (0..)
            .map(move |k| HalfInt(lo.0 + k * s))
            .take_while(move |x| x.0 <= hi.0)
    }
}

impl Add for HalfInt {
    type Output = HalfInt;
    fn add(self, o: HalfInt) -> HalfInt {
        HalfInt(self.0 + o.0)
    }
}

impl Sub for HalfInt {
    type Output = HalfInt;
    fn sub(self, o: HalfInt) -> HalfInt {
        HalfInt(self.0 - o.0)
    }
}

impl Neg for HalfInt {
    type Output = HalfInt;
    fn neg(self) -> HalfInt {
        HalfInt(-self.0)
    }
}

impl fmt::Display for HalfInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0 % 2 == 0 {
            write!(f, "{}", self.0 / 2)
        } else {
            write!(f, "{}/2", self.0)
        }
    }
}

impl fmt::Debug for HalfInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl Serialize for HalfInt {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self.as_integer() {
            Some(n) => s.serialize_i64(n),
            None => s.serialize_str(&self.to_string()),
        }
    }
}

impl<'de> Deserialize<'de> for HalfInt {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let v = serde_json::Value::deserialize(d)?;
        let text = match &v {
            serde_json::Value::String(s) => s.clone(),
            serde_json::Value::Number(n) => n.to_string(),
            other => {
                return Err(serde::de::Error::custom(format!(
                    "expected half-integer, found {other}"
                )))
            }
        };
        HalfInt::parse(&text).map_err(serde::de::Error::custom)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Parity {
    Even,
    Odd,
}

impl Parity {
    pub fn is_odd(self) -> bool {
        self == Parity::Odd
    }

    /// Sum in Z₂.
    pub fn plus(self, o: Parity) -> Parity {
        if self == o {
            Parity::Even
        } else {
            Parity::Odd
        }
    }

    /// `(-1)^(p q)` as ±1.
    pub fn exchange_sign(self, o: Parity) -> i64 {
        if self.is_odd() && o.is_odd() {
            -1
        } else {
            1
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(tag = "kind", content = "color", rename_all = "snake_case")]
pub enum ModeKind {
    Fermion(usize),
    Boson(usize),
    Virasoro,
    Super,
    /// Acts as the central scalar of the module (level, central charge or unit).
    Central,
}

impl ModeKind {
    pub fn parity(self) -> Parity {
        match self {
            ModeKind::Fermion(_) | ModeKind::Super => Parity::Odd,
            _ => Parity::Even,
        }
    }

    /// Whether indices are integers (`true`) or in `Z + ½`.
    pub fn integral(self) -> bool {
        !matches!(self, ModeKind::Fermion(_) | ModeKind::Super)
    }

    /// Conformal weight of the generating field.
    pub fn weight(self) -> HalfInt {
        match self {
            ModeKind::Fermion(_) => HalfInt::HALF,
            ModeKind::Boson(_) => HalfInt::ONE,
            ModeKind::Virasoro => HalfInt::int(2),
            ModeKind::Super => HalfInt::from_twice(3),
            ModeKind::Central => HalfInt::ZERO,
        }
    }

    fn rank(self) -> u8 {
        match self {
            ModeKind::Boson(_) => 0,
            ModeKind::Super => 1,
            ModeKind::Virasoro => 2,
            ModeKind::Fermion(_) => 3,
            ModeKind::Central => 4,
        }
    }

    fn color(self) -> usize {
        match self {
            ModeKind::Fermion(a) | ModeKind::Boson(a) => a,
            _ => 0,
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ModeSymbol {
    pub kind: ModeKind,
    pub index: HalfInt,
}

impl ModeSymbol {
    pub fn new(kind: ModeKind, index: HalfInt) -> Result<Self> {
        if kind.integral() != index.is_integer() {
            return Err(Error::InvalidParameter(format!(
                "index {index} has the wrong integrality for {kind:?}"
            )));
        }
        if kind == ModeKind::Central && index != HalfInt::ZERO {
            return Err(Error::InvalidParameter("central element has index 0".into()));
        }
        Ok(ModeSymbol { kind, index })
    }

    pub fn psi(color: usize, index: HalfInt) -> Self {
        Self::new(ModeKind::Fermion(color), index).expect("fermion index in Z+1/2")
    }

    pub fn x(color: usize, n: i64) -> Self {
        ModeSymbol {
            kind: ModeKind::Boson(color),
            index: HalfInt::int(n),
        }
    }

    pub fn l(n: i64) -> Self {
        ModeSymbol {
            kind: ModeKind::Virasoro,
            index: HalfInt::int(n),
        }
    }

    pub fn g(index: HalfInt) -> Self {
        Self::new(ModeKind::Super, index).expect("super index in Z+1/2")
    }

    pub fn parity(&self) -> Parity {
        self.kind.parity()
    }

    pub fn is_creation(&self) -> bool {
        self.index.twice() < 0
    }

    pub fn is_annihilation(&self) -> bool {
        self.index.twice() > 0
    }

    /// The adjoint mode: same kind, opposite index.
    pub fn adjoint(&self) -> Self {
        ModeSymbol {
            kind: self.kind,
            index: -self.index,
        }
    }

    /// Normal-order key: kind first (bosons, super, Virasoro, fermions), then
    /// larger `|index|` first for creation modes, then color.
    pub fn order_key(&self) -> (u8, i64, usize) {
        (self.kind.rank(), self.index.twice(), self.kind.color())
    }
}

impl PartialOrd for ModeSymbol {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for ModeSymbol {
    fn cmp(&self, other: &Self) -> Ordering {
        self.order_key().cmp(&other.order_key())
    }
}

impl fmt::Display for ModeSymbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.kind {
            ModeKind::Fermion(a) => write!(f, "psi{a}({})", self.index),
            ModeKind::Boson(a) => write!(f, "X{a}({})", self.index),
            ModeKind::Virasoro => write!(f, "L({})", self.index),
            ModeKind::Super => write!(f, "G({})", self.index),
            ModeKind::Central => write!(f, "C"),
        }
    }
}

impl fmt::Debug for ModeSymbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}
