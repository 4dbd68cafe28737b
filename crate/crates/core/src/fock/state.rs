use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::modes::{HalfInt, ModeSymbol, Parity};
use crate::scalar::Scalar;

/// A normal-ordered word of creation modes applied to a floor vector.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct BasisState {
    pub word: Vec<ModeSymbol>,
    pub floor: usize,
}

impl BasisState {
    pub fn floor_state(floor: usize) -> Self {
        BasisState {
            word: Vec::new(),
            floor,
        }
    }

    pub fn grade(&self) -> HalfInt {
        self.word
            .iter()
            .fold(HalfInt::ZERO, |acc, m| acc - m.index)
    }

    pub fn parity(&self) -> Parity {
        self.word
            .iter()
            .fold(Parity::Even, |acc, m| acc.plus(m.parity()))
    }
}

impl fmt::Display for BasisState {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for m in &self.word {
            write!(f, "{m} ")?;
        }
        write!(f, "|{}>", self.floor)
    }
}

impl fmt::Debug for BasisState {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// Finite linear combination of basis states with no zero coefficients.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct StateVector {
    terms: BTreeMap<BasisState, Scalar>,
}

impl StateVector {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn basis(b: BasisState) -> Self {
        Self::single(b, Scalar::one())
    }

    pub fn single(b: BasisState, c: Scalar) -> Self {
        let mut v = Self::zero();
        v.add_term(b, c);
        v
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&BasisState, &Scalar)> {
        self.terms.iter()
    }

    pub fn coeff(&self, b: &BasisState) -> Scalar {
        self.terms.get(b).cloned().unwrap_or_default()
    }

    pub fn add_term(&mut self, b: BasisState, c: Scalar) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(b) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += &c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    /// `self += c · other`
    pub fn add_scaled(&mut self, c: &Scalar, other: &StateVector) {
        if c.is_zero() {
            return;
        }
        let unit = c.is_one();
        for (b, x) in &other.terms {
            let v = if unit { x.clone() } else { c * x };
            self.add_term(b.clone(), v);
        }
    }

    pub fn add(&mut self, other: &StateVector) {
        self.add_scaled(&Scalar::one(), other);
    }

    pub fn sub(&mut self, other: &StateVector) {
        self.add_scaled(&Scalar::from_int(-1), other);
    }

    pub fn scaled(&self, c: &Scalar) -> StateVector {
        let mut out = StateVector::zero();
        out.add_scaled(c, self);
        out
    }

    pub fn minus(&self, other: &StateVector) -> StateVector {
        let mut out = self.clone();
        out.sub(other);
        out
    }

    pub fn plus(&self, other: &StateVector) -> StateVector {
        let mut out = self.clone();
        out.add(other);
        out
    }

    /// The common grade, if every term has the same one.
    pub fn grade(&self) -> Option<HalfInt> {
        let mut it = self.terms.keys().map(|b| b.grade());
        let first = it.next()?;
        it.all(|g| g == first).then_some(first)
    }

    pub fn max_grade(&self) -> Option<HalfInt> {
        self.terms.keys().map(|b| b.grade()).max()
    }

    /// Splits into homogeneous components.
    pub fn by_grade(&self) -> BTreeMap<HalfInt, StateVector> {
        let mut out: BTreeMap<HalfInt, StateVector> = BTreeMap::new();
        for (b, c) in &self.terms {
            out.entry(b.grade()).or_default().add_term(b.clone(), c.clone());
        }
        out
    }

    /// The common parity, if every term has the same one.
    pub fn parity(&self) -> Option<Parity> {
        let mut it = self.terms.keys().map(|b| b.parity());
        let first = it.next()?;
        it.all(|p| p == first).then_some(first)
    }

    /// Coordinates against an ordered basis; `None` if a term falls outside it.
    pub fn coordinates(&self, basis: &[BasisState]) -> Option<Vec<Scalar>> {
        let mut out = vec![Scalar::zero(); basis.len()];
        for (b, c) in &self.terms {
            let i = basis.binary_search(b).ok().or_else(|| basis.iter().position(|x| x == b))?;
            out[i] = c.clone();
        }
        Some(out)
    }

    pub fn from_coordinates(basis: &[BasisState], coords: &[Scalar]) -> StateVector {
        let mut v = StateVector::zero();
        for (b, c) in basis.iter().zip(coords) {
            v.add_term(b.clone(), c.clone());
        }
        v
    }
}

impl FromIterator<(BasisState, Scalar)> for StateVector {
    fn from_iter<I: IntoIterator<Item = (BasisState, Scalar)>>(iter: I) -> Self {
        let mut v = StateVector::zero();
        for (b, c) in iter {
            v.add_term(b, c);
        }
        v
    }
}

impl fmt::Display for StateVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (b, c)) in self.terms.iter().enumerate() {
            if k > 0 {
                write!(f, " + ")?;
            }
            write!(f, "({c}) {b}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for StateVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

#[derive(Serialize)]
struct TermJson<'a> {
    word: Vec<String>,
    floor: usize,
    coeff: &'a Scalar,
}

impl Serialize for StateVector {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let terms: Vec<TermJson> = self
            .terms
            .iter()
            .map(|(b, c)| TermJson {
                word: b.word.iter().map(|m| m.to_string()).collect(),
                floor: b.floor,
                coeff: c,
            })
            .collect();
        terms.serialize(s)
    }
}
