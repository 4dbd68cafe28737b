//! Exact scalars in a multi-quadratic extension of the rationals.
//!
//! A scalar is a finite sum `Σ q_r √r` with rational `q_r` and square-free
//! integer radicands `r`. The radicand `1` is the rational part, `-1` is the
//! imaginary unit and a negative radicand `-s` stands for `i√s`.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Scalar {
    // sorted by radicand, no zero coefficients
    terms: Vec<(i64, BigRational)>,
}

/// Splits `n > 0` into `(s, f)` with `n = s² f` and `f` square-free.
pub fn square_free_part(n: u64) -> (u64, u64) {
    let mut rest = n;
    let mut outside = 1u64;
    let mut free = 1u64;
    let mut p = 2u64;
    while p * p <= rest {
        let mut e = 0;
        while rest.is_multiple_of(p) {
            rest /= p;
            e += 1;
        }
        outside *= p.pow(e / 2);
        if e % 2 == 1 {
            free *= p;
        }
        p += if p == 2 { 1 } else { 2 };
    }
    free *= rest;
    (outside, free)
}

/// Product of two basis radicals `√a √b = c √r`; returns `(c, r)`.
fn radical_product(a: i64, b: i64) -> (i64, i64) {
    let negatives = (a < 0) as u8 + (b < 0) as u8;
    let (ua, ub) = (a.unsigned_abs(), b.unsigned_abs());
    let g = ua.gcd(&ub);
    let free = (ua / g) * (ub / g);
    let coeff = if negatives == 2 { -(g as i64) } else { g as i64 };
    let key = if negatives == 1 { -(free as i64) } else { free as i64 };
    (coeff, key)
}

fn rat(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

impl Scalar {
    pub fn zero() -> Self {
        Scalar { terms: Vec::new() }
    }

    pub fn one() -> Self {
        Self::from_int(1)
    }

    pub fn from_int(n: i64) -> Self {
        Self::from_rational(rat(n))
    }

    pub fn from_frac(num: i64, den: i64) -> Self {
        Self::from_rational(BigRational::new(BigInt::from(num), BigInt::from(den)))
    }

    pub fn from_rational(q: BigRational) -> Self {
        Self::term(q, 1)
    }

    /// The imaginary unit.
    pub fn i() -> Self {
        Self::term(BigRational::one(), -1)
    }

    fn term(q: BigRational, radicand: i64) -> Self {
        if q.is_zero() {
            Self::zero()
        } else {
            Scalar {
                terms: vec![(radicand, q)],
            }
        }
    }

    /// `√n` for any integer `n`; negative `n` gives `i√|n|`.
    pub fn sqrt_int(n: i64) -> Self {
        if n == 0 {
            return Self::zero();
        }
        let (outside, free) = square_free_part(n.unsigned_abs());
        let key = if n < 0 { -(free as i64) } else { free as i64 };
        Self::term(rat(outside as i64), key)
    }

    /// `√q` for a rational `q`, written as `√(p d) / d` for `q = p/d`.
    pub fn sqrt_rational(q: &BigRational) -> Result<Self> {
        if q.is_zero() {
            return Ok(Self::zero());
        }
        let num = q.numer() * q.denom();
        let num = num
            .to_i64()
            .ok_or_else(|| Error::NotInExtension(format!("√({q}) radicand too large")))?;
        let den = BigRational::from_integer(q.denom().clone());
        Ok(Self::sqrt_int(num).scale(&den.recip()))
    }

    /// Square root of a rational scalar.
    pub fn sqrt(&self) -> Result<Self> {
        match self.as_rational() {
            Some(q) => Self::sqrt_rational(&q),
            None => Err(Error::NotInExtension(format!("√({self})"))),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms[0].0 == 1 && self.terms[0].1.is_one()
    }

    pub fn terms(&self) -> impl Iterator<Item = (i64, &BigRational)> {
        self.terms.iter().map(|(r, q)| (*r, q))
    }

    pub fn as_rational(&self) -> Option<BigRational> {
        match self.terms.as_slice() {
            [] => Some(BigRational::zero()),
            [(1, q)] => Some(q.clone()),
            _ => None,
        }
    }

    pub fn as_integer(&self) -> Option<i64> {
        self.as_rational()
            .filter(|q| q.is_integer())
            .and_then(|q| q.to_integer().to_i64())
    }

    pub fn is_rational(&self) -> bool {
        self.as_rational().is_some()
    }

    pub fn is_real(&self) -> bool {
        self.terms.iter().all(|(r, _)| *r > 0)
    }

    pub fn scale(&self, q: &BigRational) -> Self {
        if q.is_zero() {
            return Self::zero();
        }
        Scalar {
            terms: self.terms.iter().map(|(r, c)| (*r, c * q)).collect(),
        }
    }

    pub fn conj(&self) -> Self {
        Scalar {
            terms: self
                .terms
                .iter()
                .map(|(r, q)| (*r, if *r < 0 { -q } else { q.clone() }))
                .collect(),
        }
    }

    /// `|z|²` as a real scalar.
    pub fn norm_sqr(&self) -> Self {
        self * &self.conj()
    }

    pub fn real_part(&self) -> Self {
        Scalar {
            terms: self.terms.iter().filter(|(r, _)| *r > 0).cloned().collect(),
        }
    }

    pub fn imag_part(&self) -> Self {
        // i√s → √s
        Scalar {
            terms: self
                .terms
                .iter()
                .filter(|(r, _)| *r < 0)
                .map(|(r, q)| (-r, q.clone()))
                .collect(),
        }
    }

    fn from_unsorted(mut raw: Vec<(i64, BigRational)>) -> Self {
        raw.sort_by_key(|(r, _)| *r);
        let mut terms: Vec<(i64, BigRational)> = Vec::with_capacity(raw.len());
        for (r, q) in raw {
            match terms.last_mut() {
                Some((lr, lq)) if *lr == r => *lq += q,
                _ => terms.push((r, q)),
            }
        }
        terms.retain(|(_, q)| !q.is_zero());
        Scalar { terms }
    }

    fn merge(&self, other: &Self, negate: bool) -> Self {
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let (mut i, mut j) = (0, 0);
        let (a, b) = (&self.terms, &other.terms);
        while i < a.len() || j < b.len() {
            let ord = match (a.get(i), b.get(j)) {
                (Some(x), Some(y)) => x.0.cmp(&y.0),
                (Some(_), None) => Ordering::Less,
                _ => Ordering::Greater,
            };
            match ord {
                Ordering::Less => {
                    out.push(a[i].clone());
                    i += 1;
                }
                Ordering::Greater => {
                    let q = if negate { -&b[j].1 } else { b[j].1.clone() };
                    out.push((b[j].0, q));
                    j += 1;
                }
                Ordering::Equal => {
                    let q = if negate { &a[i].1 - &b[j].1 } else { &a[i].1 + &b[j].1 };
                    if !q.is_zero() {
                        out.push((a[i].0, q));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        Scalar { terms: out }
    }

    fn product(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        if let [(1, q)] = self.terms.as_slice() {
            return other.scale(q);
        }
        if let [(1, q)] = other.terms.as_slice() {
            return self.scale(q);
        }
        let mut raw = Vec::with_capacity(self.terms.len() * other.terms.len());
        for (ra, qa) in &self.terms {
            for (rb, qb) in &other.terms {
                let (c, r) = radical_product(*ra, *rb);
                raw.push((r, qa * qb * rat(c)));
            }
        }
        Self::from_unsorted(raw)
    }

    pub fn inv(&self) -> Result<Self> {
        match self.terms.as_slice() {
            [] => Err(Error::DivisionByZero),
            // (q√r)⁻¹ = √r / (q r) since √r√r = r
            [(r, q)] => Ok(Self::term((q * rat(*r)).recip(), *r)),
            _ => self.inv_general(),
        }
    }

    fn inv_general(&self) -> Result<Self> {
        // basis of the multiplicative closure of the radicands
        let mut basis: Vec<i64> = vec![1];
        let mut frontier: Vec<i64> = vec![1];
        while let Some(x) = frontier.pop() {
            for (r, _) in &self.terms {
                let (_, k) = radical_product(x, *r);
                if !basis.contains(&k) {
                    basis.push(k);
                    frontier.push(k);
                }
            }
        }
        basis.sort_unstable();
        let n = basis.len();
        let index = |k: i64| basis.iter().position(|&b| b == k).expect("closed set");
        // column j holds the coordinates of self * √basis[j]
        let mut m = vec![vec![BigRational::zero(); n]; n];
        for (j, &bj) in basis.iter().enumerate() {
            for (r, q) in &self.terms {
                let (c, k) = radical_product(*r, bj);
                m[index(k)][j] += q * rat(c);
            }
        }
        let mut rhs = vec![BigRational::zero(); n];
        rhs[index(1)] = BigRational::one();
        let x = crate::linalg::solve(&m, &rhs).ok_or(Error::DivisionByZero)?;
        Ok(Self::from_unsorted(
            basis.into_iter().zip(x).filter(|(_, q)| !q.is_zero()).collect(),
        ))
    }

    pub fn div(&self, other: &Self) -> Result<Self> {
        Ok(self * &other.inv()?)
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut out = Self::one();
        for _ in 0..e {
            out = &out * self;
        }
        out
    }

    /// Sign of a real scalar, by interval refinement of each radical.
    pub fn sign(&self) -> Result<Ordering> {
        if !self.is_real() {
            return Err(Error::NotReal(self.to_string()));
        }
        if self.is_zero() {
            return Ok(Ordering::Equal);
        }
        if let Some(q) = self.as_rational() {
            return Ok(q.cmp(&BigRational::zero()));
        }
        let mut bits: u32 = 16;
        loop {
            let scale = BigInt::one() << bits;
            let scale_sq = &scale * &scale;
            let mut lo = BigRational::zero();
            let mut hi = BigRational::zero();
            for (r, q) in &self.terms {
                if *r == 1 {
                    lo += q;
                    hi += q;
                    continue;
                }
                let root = (BigInt::from(*r) * &scale_sq).sqrt();
                let below = BigRational::new(root.clone(), scale.clone());
                let above = BigRational::new(root + 1, scale.clone());
                if q.is_positive() {
                    lo += q * &below;
                    hi += q * &above;
                } else {
                    lo += q * &above;
                    hi += q * &below;
                }
            }
            if lo.is_positive() {
                return Ok(Ordering::Greater);
            }
            if hi.is_negative() {
                return Ok(Ordering::Less);
            }
            bits *= 2;
        }
    }

    /// Floating-point approximation `(re, im)` for display and diagnostics.
    pub fn to_f64(&self) -> (f64, f64) {
        let mut re = 0.0;
        let mut im = 0.0;
        for (r, q) in &self.terms {
            let v = q.to_f64().unwrap_or(f64::NAN) * (r.unsigned_abs() as f64).sqrt();
            if *r > 0 {
                re += v;
            } else {
                im += v;
            }
        }
        (re, im)
    }

    /// Parses `"3"`, `"-1/2"`, or a decimal such as `"0.25"` into a rational scalar.
    pub fn parse_rational(text: &str) -> Result<Self> {
        parse_rational(text).map(Self::from_rational)
    }
}

pub fn parse_rational(text: &str) -> Result<BigRational> {
    let t = text.trim();
    let bad = || Error::Malformed(format!("not a rational number: `{text}`"));
    if let Some((n, d)) = t.split_once('/') {
        let n: BigInt = n.trim().parse().map_err(|_| bad())?;
        let d: BigInt = d.trim().parse().map_err(|_| bad())?;
        if d.is_zero() {
            return Err(bad());
        }
        return Ok(BigRational::new(n, d));
    }
    if let Some((whole, frac)) = t.split_once('.') {
        let negative = whole.trim_start().starts_with('-');
        let w: BigInt = if whole.is_empty() || whole == "-" {
            BigInt::zero()
        } else {
            whole.parse().map_err(|_| bad())?
        };
        if frac.is_empty() || !frac.chars().all(|c| c.is_ascii_digit()) {
            return Err(bad());
        }
        let f: BigInt = frac.parse().map_err(|_| bad())?;
        let den = num_traits::pow(BigInt::from(10), frac.len());
        let f = BigRational::new(f, den);
        let w = BigRational::from_integer(w);
        return Ok(if negative { w - f } else { w + f });
    }
    t.parse::<BigInt>().map(BigRational::from_integer).map_err(|_| bad())
}

impl From<i64> for Scalar {
    fn from(n: i64) -> Self {
        Scalar::from_int(n)
    }
}

impl From<BigRational> for Scalar {
    fn from(q: BigRational) -> Self {
        Scalar::from_rational(q)
    }
}

impl<'a> Add<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn add(self, rhs: &Scalar) -> Scalar {
        self.merge(rhs, false)
    }
}

impl<'a> Sub<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn sub(self, rhs: &Scalar) -> Scalar {
        self.merge(rhs, true)
    }
}

impl<'a> Mul<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn mul(self, rhs: &Scalar) -> Scalar {
        self.product(rhs)
    }
}

impl Add for Scalar {
    type Output = Scalar;
    fn add(self, rhs: Scalar) -> Scalar {
        &self + &rhs
    }
}

impl Sub for Scalar {
    type Output = Scalar;
    fn sub(self, rhs: Scalar) -> Scalar {
        &self - &rhs
    }
}

impl Mul for Scalar {
    type Output = Scalar;
    fn mul(self, rhs: Scalar) -> Scalar {
        &self * &rhs
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar {
            terms: self.terms.iter().map(|(r, q)| (*r, -q)).collect(),
        }
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -&self
    }
}

impl AddAssign<&Scalar> for Scalar {
    fn add_assign(&mut self, rhs: &Scalar) {
        if rhs.is_zero() {
            return;
        }
        *self = self.merge(rhs, false);
    }
}

impl SubAssign<&Scalar> for Scalar {
    fn sub_assign(&mut self, rhs: &Scalar) {
        if rhs.is_zero() {
            return;
        }
        *self = self.merge(rhs, true);
    }
}

fn fmt_rational(q: &BigRational) -> String {
    if q.is_integer() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (r, q)) in self.terms.iter().enumerate() {
            let negative = q.is_negative();
            let mag = q.abs();
            if k == 0 {
                if negative {
                    write!(f, "-")?;
                }
            } else {
                write!(f, "{}", if negative { " - " } else { " + " })?;
            }
            let radical = match *r {
                1 => String::new(),
                -1 => "i".to_string(),
                r if r < 0 => format!("i√{}", -r),
                r => format!("√{r}"),
            };
            if radical.is_empty() {
                write!(f, "{}", fmt_rational(&mag))?;
            } else if mag.is_one() {
                write!(f, "{radical}")?;
            } else if mag.is_integer() {
                write!(f, "{}{radical}", fmt_rational(&mag))?;
            } else {
                write!(f, "({}){radical}", fmt_rational(&mag))?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Scalar({self})")
    }
}

#[derive(Serialize, Deserialize)]
struct TermJson {
    num: serde_json::Number,
    den: serde_json::Number,
    rad: i64,
}

impl Serialize for Scalar {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let terms: Vec<TermJson> = self
            .terms
            .iter()
            .map(|(r, q)| TermJson {
                num: q.numer().to_string().parse().expect("integer literal"),
                den: q.denom().to_string().parse().expect("integer literal"),
                rad: *r,
            })
            .collect();
        terms.serialize(s)
    }
}

impl<'de> Deserialize<'de> for Scalar {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let terms = Vec::<TermJson>::deserialize(d)?;
        let mut acc = Scalar::zero();
        for t in terms {
            let num: BigInt = t.num.to_string().parse().map_err(D::Error::custom)?;
            let den: BigInt = t.den.to_string().parse().map_err(D::Error::custom)?;
            if den.is_zero() {
                return Err(D::Error::custom("zero denominator"));
            }
            if t.rad == 0 {
                return Err(D::Error::custom("radicand 0"));
            }
            // normalize non-square-free radicands
            let root = Scalar::sqrt_int(t.rad);
            acc += &root.scale(&BigRational::new(num, den));
        }
        Ok(acc)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sqrt_two_squared_is_two() {
        let s = Scalar::sqrt_int(2);
        assert_eq!(&s * &s, Scalar::from_int(2));
    }

    #[test]
    fn imaginary_unit_squares_to_minus_one() {
        assert_eq!(&Scalar::i() * &Scalar::i(), Scalar::from_int(-1));
        assert_eq!(Scalar::sqrt_int(-1), Scalar::i());
    }

    #[test]
    fn mixed_radicals_multiply() {
        // √6 · √10 = 2√15, i√2 · i√3 = -√6
        assert_eq!(
            &Scalar::sqrt_int(6) * &Scalar::sqrt_int(10),
            Scalar::sqrt_int(15).scale(&rat(2))
        );
        assert_eq!(
            &Scalar::sqrt_int(-2) * &Scalar::sqrt_int(-3),
            -Scalar::sqrt_int(6)
        );
        assert_eq!(Scalar::sqrt_int(12), Scalar::sqrt_int(3).scale(&rat(2)));
    }

    #[test]
    fn inverse_of_sum_of_radicals() {
        let x = &(&Scalar::one() + &Scalar::sqrt_int(2)) + &Scalar::sqrt_int(3);
        let y = x.inv().unwrap();
        assert!((&x * &y).is_one());
        let z = &Scalar::from_int(2) + &Scalar::i();
        assert!((&z * &z.inv().unwrap()).is_one());
        assert_eq!(Scalar::zero().inv(), Err(Error::DivisionByZero));
    }

    #[test]
    fn sign_of_close_values() {
        // √2 + √3 vs √10 (3.146 > 3.162 false)
        let a = &Scalar::sqrt_int(2) + &Scalar::sqrt_int(3);
        assert_eq!((&a - &Scalar::sqrt_int(10)).sign().unwrap(), Ordering::Less);
        let b = &Scalar::sqrt_int(2) - &Scalar::from_frac(141421, 100000);
        assert_eq!(b.sign().unwrap(), Ordering::Greater);
        assert!(Scalar::i().sign().is_err());
    }

    #[test]
    fn rational_square_roots() {
        let q = BigRational::new(BigInt::from(3), BigInt::from(8));
        let s = Scalar::sqrt_rational(&q).unwrap();
        assert_eq!(&s * &s, Scalar::from_rational(q));
        let neg = Scalar::sqrt_rational(&rat(-3)).unwrap();
        assert_eq!(&neg * &neg, Scalar::from_int(-3));
    }

    #[test]
    fn json_round_trip() {
        let x = &Scalar::from_frac(-1, 3) + &Scalar::sqrt_int(-2);
        let text = serde_json::to_string(&x).unwrap();
        assert_eq!(text, r#"[{"num":1,"den":1,"rad":-2},{"num":-1,"den":3,"rad":1}]"#);
        let back: Scalar = serde_json::from_str(&text).unwrap();
        assert_eq!(back, x);
    }

    #[test]
    fn parses_rationals() {
        assert_eq!(parse_rational("-3/6").unwrap(), BigRational::new((-1).into(), 2.into()));
        assert_eq!(parse_rational("0.25").unwrap(), BigRational::new(1.into(), 4.into()));
        assert_eq!(parse_rational("-0.5").unwrap(), BigRational::new((-1).into(), 2.into()));
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("abc").is_err());
    }

    #[test]
    fn display_forms() {
        let x = &Scalar::from_frac(1, 2) + &Scalar::sqrt_int(-2).scale(&BigRational::new((-3).into(), 2.into()));
        assert_eq!(x.to_string(), "-(3/2)i√2 + 1/2");
        assert_eq!(Scalar::zero().to_string(), "0");
    }
}
