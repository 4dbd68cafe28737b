//! Level-graded state spaces with mode actions by normal-order rewriting.

mod descriptor;
mod floor;
mod form;
mod state;

use std::collections::BTreeMap;
use std::sync::{Arc, Mutex, RwLock};

use dashmap::DashMap;

pub use descriptor::ModuleDescriptor;
pub use floor::Floor;
pub use form::{ghost_report, LevelForm, LevelSignature};
pub use state::{BasisState, StateVector};

use crate::error::{Error, Result};
use crate::lie::LieAlgebraData;
use crate::modes::{HalfInt, ModeKind, ModeSymbol};
use crate::scalar::Scalar;

#[derive(Debug, Clone)]
pub struct AffinePart {
    pub lie: Arc<LieAlgebraData>,
    pub level: Scalar,
}

#[derive(Debug, Clone)]
pub struct VirasoroPart {
    pub c: Scalar,
    pub h: Scalar,
    /// Whether the odd generators `G_r` are present.
    pub supersymmetric: bool,
}

/// Which generators act and which relations rewrite them.
#[derive(Debug, Clone, Default)]
pub struct Algebra {
    pub fermions: usize,
    pub affine: Option<AffinePart>,
    pub virasoro: Option<VirasoroPart>,
}

pub struct GradedModule {
    label: String,
    algebra: Algebra,
    floor: Floor,
    quotient: bool,
    bases: RwLock<BTreeMap<HalfInt, Arc<Vec<BasisState>>>>,
    forms: Mutex<BTreeMap<HalfInt, Arc<LevelForm>>>,
    actions: DashMap<(ModeSymbol, BasisState), StateVector>,
    pairs: DashMap<(BasisState, BasisState), Scalar>,
    pub(crate) field_cache: DashMap<(usize, i64, BasisState), StateVector>,
}


impl std::fmt::Debug for GradedModule {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("GradedModule")
            .field("label", &self.label)
            .field("quotient", &self.quotient)
            .finish()
    }
}

impl GradedModule {
    pub fn new(label: impl Into<String>, algebra: Algebra, floor: Floor, quotient: bool) -> Result<Arc<Self>> {
        if let Some(a) = &algebra.affine {
            if !a.level.is_real() {
                return Err(Error::InvalidParameter(format!("level {} is not real", a.level)));
            }
            if floor.zero_modes.len() != a.lie.dim() {
                return Err(Error::InvalidParameter("floor does not match the algebra".into()));
            }
            floor.check(&a.lie)?;
        } else if floor.dim() != 1 {
            return Err(Error::InvalidParameter("only affine modules carry a nontrivial floor".into()));
        }
        if let Some(v) = &algebra.virasoro {
            if !v.c.is_real() || !v.h.is_real() {
                return Err(Error::InvalidParameter("c and h must be real".into()));
            }
            if algebra.fermions > 0 || algebra.affine.is_some() {
                return Err(Error::InvalidParameter(
                    "Virasoro generators act only on their own Verma modules".into(),
                ));
            }
        }
        Ok(Arc::new(GradedModule {
            label: label.into(),
            algebra,
            floor,
            quotient,
            bases: RwLock::new(BTreeMap::new()),
            forms: Mutex::new(BTreeMap::new()),
            actions: DashMap::new(),
            pairs: DashMap::new(),
            field_cache: DashMap::new(),
        }))
    }

    /// The fermion Fock space on `colors` fermions.
    pub fn fermion(colors: usize) -> Result<Arc<Self>> {
        if colors == 0 {
            return Err(Error::InvalidParameter("at least one fermion color".into()));
        }
        let algebra = Algebra {
            fermions: colors,
            ..Default::default()
        };
        Self::new(format!("F_NS^{colors}"), algebra, Floor::vacuum(0), false)
    }

    /// `L(V_j, ℓ)`: the affine highest-weight module, realized as Verma modulo radical.
    pub fn affine(lie: Arc<LieAlgebraData>, level: Scalar, twice_j: i64) -> Result<Arc<Self>> {
        let floor = Floor::for_algebra(&lie, twice_j)?;
        let label = format!("L({}, level {level}, {})", lie.name(), floor.label);
        let algebra = Algebra {
            fermions: 0,
            affine: Some(AffinePart { lie, level }),
            virasoro: None,
        };
        Self::new(label, algebra, floor, true)
    }

    /// `L(V_j, ℓ) ⊗ F_NS^g` with one fermion per basis element of the algebra.
    pub fn tensor(lie: Arc<LieAlgebraData>, level: Scalar, twice_j: i64) -> Result<Arc<Self>> {
        let floor = Floor::for_algebra(&lie, twice_j)?;
        let label = format!("L({}, level {level}, {}) ⊗ F_NS^{}", lie.name(), floor.label, lie.dim());
        let algebra = Algebra {
            fermions: lie.dim(),
            affine: Some(AffinePart { lie, level }),
            virasoro: None,
        };
        Self::new(label, algebra, floor, true)
    }

    /// The Neveu-Schwarz Verma module `V(c, h)`; `quotient` selects `L(c, h)`.
    pub fn ns_verma(c: Scalar, h: Scalar, quotient: bool) -> Result<Arc<Self>> {
        let label = format!("V_NS({c}, {h})");
        let algebra = Algebra {
            virasoro: Some(VirasoroPart {
                c,
                h,
                supersymmetric: true,
            }),
            ..Default::default()
        };
        Self::new(label, algebra, Floor::vacuum(0), quotient)
    }

    /// The Virasoro Verma module `V(c, h)` without odd generators.
    pub fn virasoro_verma(c: Scalar, h: Scalar, quotient: bool) -> Result<Arc<Self>> {
        let label = format!("V_Vir({c}, {h})");
        let algebra = Algebra {
            virasoro: Some(VirasoroPart {
                c,
                h,
                supersymmetric: false,
            }),
            ..Default::default()
        };
        Self::new(label, algebra, Floor::vacuum(0), quotient)
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn algebra(&self) -> &Algebra {
        &self.algebra
    }

    pub fn floor(&self) -> &Floor {
        &self.floor
    }

    pub fn is_quotient(&self) -> bool {
        self.quotient
    }


    pub fn lie(&self) -> Option<&Arc<LieAlgebraData>> {
        self.algebra.affine.as_ref().map(|a| &a.lie)
    }

    /// The value of the central element: `c` on Verma modules, `ℓ` on affine ones, `1` otherwise.
    pub fn central_value(&self) -> Scalar {
        if let Some(v) = &self.algebra.virasoro {
            v.c.clone()
        } else if let Some(a) = &self.algebra.affine {
            a.level.clone()
        } else {
            Scalar::one()
        }
    }

    /// The `L_0` eigenvalue of the floor on Verma modules, zero otherwise.
    pub fn highest_weight(&self) -> Scalar {
        self.algebra
            .virasoro
            .as_ref()
            .map(|v| v.h.clone())
            .unwrap_or_default()
    }

    /// Spacing of the grading: ½ when half-integer modes exist, 1 otherwise.
    pub fn grade_step(&self) -> HalfInt {
        let odd = self.algebra.fermions > 0
            || self.algebra.virasoro.as_ref().is_some_and(|v| v.supersymmetric);
        if odd {
            HalfInt::HALF
        } else {
            HalfInt::ONE
        }
    }

    pub fn grades_up_to(&self, depth: HalfInt) -> Vec<HalfInt> {
        HalfInt::range(HalfInt::ZERO, depth, self.grade_step()).collect()
    }

    pub fn supports(&self, kind: ModeKind) -> bool {
        match kind {
            ModeKind::Fermion(a) => a < self.algebra.fermions,
            ModeKind::Boson(a) => self.algebra.affine.as_ref().is_some_and(|x| a < x.lie.dim()),
            ModeKind::Virasoro => self.algebra.virasoro.is_some(),
            ModeKind::Super => self.algebra.virasoro.as_ref().is_some_and(|v| v.supersymmetric),
            ModeKind::Central => true,
        }
    }

    fn check_mode(&self, m: &ModeSymbol) -> Result<()> {
        if self.supports(m.kind) {
            Ok(())
        } else {
            Err(Error::UnsupportedMode { mode: m.to_string() })
        }
    }

    /// Creation modes of weight at most `grade`, in normal order.
    fn creation_modes(&self, grade: HalfInt) -> Vec<ModeSymbol> {
        let mut out = Vec::new();
        let g = grade.twice();
        for a in 0..self.algebra.fermions {
            out.extend((1..=g).step_by(2).map(|t| ModeSymbol::psi(a, HalfInt::from_twice(-t))));
        }
        if let Some(x) = &self.algebra.affine {
            for a in 0..x.lie.dim() {
                out.extend((1..=g / 2).map(|n| ModeSymbol::x(a, -n)));
            }
        }
        if let Some(v) = &self.algebra.virasoro {
            out.extend((1..=g / 2).map(|n| ModeSymbol::l(-n)));
            if v.supersymmetric {
                out.extend((1..=g).step_by(2).map(|t| ModeSymbol::g(HalfInt::from_twice(-t))));
            }
        }
        out.sort();
        out
    }

    /// Normal-ordered basis of the grade-`grade` subspace, sorted.
    pub fn enumerate_basis(&self, grade: HalfInt) -> Arc<Vec<BasisState>> {
        if let Some(b) = self.bases.read().expect("lock").get(&grade) {
            return b.clone();
        }
        let mut out = Vec::new();
        if grade.twice() >= 0 {
            let modes = self.creation_modes(grade);
            let mut words = Vec::new();
            let mut word = Vec::new();
            fill_words(&modes, 0, grade.twice(), &mut word, &mut words);
            for w in words {
                for f in 0..self.floor.dim() {
                    out.push(BasisState {
                        word: w.clone(),
                        floor: f,
                    });
                }
            }
        }
        out.sort();
        let out = Arc::new(out);
        self.bases
            .write()
            .expect("lock")
            .insert(grade, out.clone());
        out
    }

    pub fn dim(&self, grade: HalfInt) -> usize {
        self.enumerate_basis(grade).len()
    }

    pub fn vacuum(&self) -> StateVector {
        StateVector::basis(BasisState::floor_state(0))
    }

    pub fn floor_vector(&self, f: usize) -> StateVector {
        StateVector::basis(BasisState::floor_state(f))
    }

    /// Graded supercommutator `[a, b]_±` as modes plus a central scalar.
    pub fn supercommutator(&self, a: ModeSymbol, b: ModeSymbol) -> (Vec<(Scalar, ModeSymbol)>, Scalar) {
        let (m, n) = (a.index, b.index);
        let sum = m + n;
        let delta = sum == HalfInt::ZERO;
        let mut modes = Vec::new();
        let mut central = Scalar::zero();
        match (a.kind, b.kind) {
            (ModeKind::Fermion(x), ModeKind::Fermion(y)) => {
                if x == y && delta {
                    central = Scalar::one();
                }
            }
            (ModeKind::Boson(x), ModeKind::Boson(y)) => {
                let aff = self.algebra.affine.as_ref().expect("boson modes need an affine part");
                let i = Scalar::i();
                for (c, g) in aff.lie.bracket(x, y) {
                    modes.push((&i * g, ModeSymbol { kind: ModeKind::Boson(*c), index: sum }));
                }
                if x == y && delta {
                    central = &m.to_scalar() * &aff.level;
                }
            }
            (ModeKind::Virasoro, ModeKind::Virasoro) => {
                let v = self.algebra.virasoro.as_ref().expect("Virasoro part");
                let coeff = (m - n).to_scalar();
                if !coeff.is_zero() {
                    modes.push((coeff, ModeSymbol::l(sum.floor())));
                }
                if delta {
                    let ms = m.to_scalar();
                    let cube = &(&ms * &ms) * &ms;
                    central = &(&v.c * &Scalar::from_frac(1, 12)) * &(&cube - &ms);
                }
            }
            (ModeKind::Virasoro, ModeKind::Super) => {
                // [L_m, G_r] = (m/2 - r) G_{m+r}
                let coeff = &(&m.to_scalar() * &Scalar::from_frac(1, 2)) - &n.to_scalar();
                if !coeff.is_zero() {
                    modes.push((coeff, ModeSymbol::g(sum)));
                }
            }
            (ModeKind::Super, ModeKind::Virasoro) => {
                let coeff = &m.to_scalar() - &(&n.to_scalar() * &Scalar::from_frac(1, 2));
                if !coeff.is_zero() {
                    modes.push((coeff, ModeSymbol::g(sum)));
                }
            }
            (ModeKind::Super, ModeKind::Super) => {
                let v = self.algebra.virasoro.as_ref().expect("Virasoro part");
                modes.push((Scalar::from_int(2), ModeSymbol::l(sum.floor())));
                if delta {
                    let ms = m.to_scalar();
                    central = &(&v.c * &Scalar::from_frac(1, 3)) * &(&(&ms * &ms) - &Scalar::from_frac(1, 4));
                }
            }
            _ => {}
        }
        (modes, central)
    }

    /// Applies one mode to a vector.
    pub fn apply_mode(&self, m: &ModeSymbol, v: &StateVector) -> Result<StateVector> {
        self.check_mode(m)?;
        Ok(self.apply_vec(*m, v))
    }

    /// Applies `modes[0] modes[1] … modes[k-1]` (rightmost first).
    pub fn apply_modes(&self, modes: &[ModeSymbol], v: &StateVector) -> Result<StateVector> {
        for m in modes {
            self.check_mode(m)?;
        }
        let mut out = v.clone();
        for m in modes.iter().rev() {
            out = self.apply_vec(*m, &out);
        }
        Ok(out)
    }

    pub(crate) fn apply_vec(&self, m: ModeSymbol, v: &StateVector) -> StateVector {
        let mut out = StateVector::zero();
        for (b, c) in v.iter() {
            out.add_scaled(c, &self.apply_basis(m, b));
        }
        out
    }

    pub(crate) fn apply_basis(&self, m: ModeSymbol, b: &BasisState) -> StateVector {
        let key = (m, b.clone());
        if let Some(hit) = self.actions.get(&key) {
            return hit.clone();
        }
        let out = self.rewrite(m, b);
        self.actions.insert(key, out.clone());
        out
    }

    fn rewrite(&self, m: ModeSymbol, b: &BasisState) -> StateVector {
        if m.kind == ModeKind::Central {
            return StateVector::single(b.clone(), self.central_value());
        }
        let Some((first, rest)) = b.word.split_first() else {
            return self.floor_action(m, b.floor);
        };
        if m.is_creation() && (m < *first || (m == *first && !m.parity().is_odd())) {
            let mut word = Vec::with_capacity(b.word.len() + 1);
            word.push(m);
            word.extend_from_slice(&b.word);
            return StateVector::basis(BasisState { word, floor: b.floor });
        }
        let rest = BasisState {
            word: rest.to_vec(),
            floor: b.floor,
        };
        let (modes, central) = self.supercommutator(m, *first);
        let mut out = StateVector::zero();
        if m == *first {
            // odd creation mode squared: m m = ½ [m, m]_+
            let half = Scalar::from_frac(1, 2);
            for (c, k) in modes {
                out.add_scaled(&(&c * &half), &self.apply_basis(k, &rest));
            }
            out.add_term(rest, &central * &half);
            return out;
        }
        let inner = self.apply_basis(m, &rest);
        let sign = Scalar::from_int(m.parity().exchange_sign(first.parity()));
        out.add_scaled(&sign, &self.apply_vec(*first, &inner));
        for (c, k) in modes {
            out.add_scaled(&c, &self.apply_basis(k, &rest));
        }
        out.add_term(rest, central);
        out
    }

    fn floor_action(&self, m: ModeSymbol, f: usize) -> StateVector {
        if m.is_creation() {
            return StateVector::basis(BasisState {
                word: vec![m],
                floor: f,
            });
        }
        if m.is_annihilation() {
            return StateVector::zero();
        }
        match m.kind {
            ModeKind::Boson(a) => self.floor.zero_modes[a]
                .iter()
                .enumerate()
                .map(|(out, row)| (BasisState::floor_state(out), row[f].clone()))
                .collect(),
            ModeKind::Virasoro => StateVector::single(BasisState::floor_state(f), self.highest_weight()),
            _ => StateVector::zero(),
        }
    }

    /// The grading operator: multiplies each homogeneous component by its grade.
    pub fn operator_d(&self, v: &StateVector) -> StateVector {
        v.iter()
            .map(|(b, c)| (b.clone(), c * &b.grade().to_scalar()))
            .collect()
    }

    /// The translation operator: the derivation with `T|floor⟩ = 0` and
    /// `[T, A_k] = -(k + α - 1) A_{k-1}` for a mode of weight `α`.
    pub fn operator_t(&self, v: &StateVector) -> StateVector {
        let mut out = StateVector::zero();
        for (b, c) in v.iter() {
            for (i, m) in b.word.iter().enumerate() {
                let coeff = -(m.index + m.kind.weight() - HalfInt::ONE).to_scalar();
                if coeff.is_zero() {
                    continue;
                }
                let mut modes = b.word.clone();
                modes[i] = ModeSymbol {
                    kind: m.kind,
                    index: m.index - HalfInt::ONE,
                };
                let mut w = self.floor_vector(b.floor);
                for k in modes.iter().rev() {
                    w = self.apply_vec(*k, &w);
                }
                out.add_scaled(&(c * &coeff), &w);
            }
        }
        out
    }
}

fn fill_words(
    modes: &[ModeSymbol],
    start: usize,
    remaining: i64,
    word: &mut Vec<ModeSymbol>,
    out: &mut Vec<Vec<ModeSymbol>>,
) {
    if remaining == 0 {
        out.push(word.clone());
        return;
    }
    for i in start..modes.len() {
        let w = -modes[i].index.twice();
        if w > remaining {
            continue;
        }
        word.push(modes[i]);
        let next = if modes[i].parity().is_odd() { i + 1 } else { i };
        fill_words(modes, next, remaining - w, word, out);
        word.pop();
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lie::sl2_basis;

    fn h(twice: i64) -> HalfInt {
        HalfInt::from_twice(twice)
    }

    #[test]
    fn fermion_basis_dimensions() {
        let f = GradedModule::fermion(1).unwrap();
        assert_eq!(f.dim(h(2)), 0);
        assert_eq!(f.dim(h(4)), 1);
        let dims: Vec<usize> = (0..=8).map(|t| f.dim(h(t))).collect();
        assert_eq!(dims, vec![1, 1, 0, 1, 1, 1, 1, 1, 2]);
    }

    #[test]
    fn ns_verma_level_three_halves() {
        let v = GradedModule::ns_verma(Scalar::from_frac(1, 2), Scalar::zero(), false).unwrap();
        let b = v.enumerate_basis(h(3));
        assert_eq!(b.len(), 2);
        assert!(b.iter().any(|s| s.word == vec![ModeSymbol::g(h(-3))]));
        assert!(b.iter().any(|s| s.word == vec![ModeSymbol::g(h(-1)), ModeSymbol::l(-1)]));
    }

    #[test]
    fn fermion_annihilates_its_creation() {
        let f = GradedModule::fermion(1).unwrap();
        let up = f.apply_mode(&ModeSymbol::psi(0, h(-1)), &f.vacuum()).unwrap();
        let down = f.apply_mode(&ModeSymbol::psi(0, h(1)), &up).unwrap();
        assert_eq!(down, f.vacuum());
        let twice = f.apply_mode(&ModeSymbol::psi(0, h(-1)), &up).unwrap();
        assert!(twice.is_zero());
    }

    #[test]
    fn l0_on_vacuum_is_h() {
        let v = GradedModule::ns_verma(Scalar::from_int(1), Scalar::from_frac(3, 7), false).unwrap();
        let r = v.apply_mode(&ModeSymbol::l(0), &v.vacuum()).unwrap();
        assert_eq!(r, v.vacuum().scaled(&Scalar::from_frac(3, 7)));
    }

    #[test]
    fn boson_level_appears_in_commutator() {
        let lie = Arc::new(sl2_basis());
        let m = GradedModule::affine(lie, Scalar::from_int(3), 0).unwrap();
        for a in 0..3 {
            for b in 0..3 {
                let v = m.apply_mode(&ModeSymbol::x(b, -1), &m.vacuum()).unwrap();
                let r = m.apply_mode(&ModeSymbol::x(a, 1), &v).unwrap();
                let expected = if a == b { m.vacuum().scaled(&Scalar::from_int(3)) } else { StateVector::zero() };
                assert_eq!(r, expected);
            }
        }
    }

    #[test]
    fn super_generator_squares_to_virasoro() {
        let v = GradedModule::ns_verma(Scalar::from_int(1), Scalar::from_int(1), false).unwrap();
        let g = ModeSymbol::g(h(-1));
        let r = v.apply_modes(&[g, g], &v.vacuum()).unwrap();
        let l = v.apply_mode(&ModeSymbol::l(-1), &v.vacuum()).unwrap();
        assert_eq!(r, l);
    }

    #[test]
    fn unsupported_modes_are_rejected() {
        let f = GradedModule::fermion(1).unwrap();
        assert!(f.apply_mode(&ModeSymbol::l(-1), &f.vacuum()).is_err());
        assert!(f.apply_mode(&ModeSymbol::psi(1, h(-1)), &f.vacuum()).is_err());
    }

    #[test]
    fn translation_on_fermions() {
        let f = GradedModule::fermion(1).unwrap();
        assert!(f.operator_t(&f.vacuum()).is_zero());
        let one = f.apply_mode(&ModeSymbol::psi(0, h(-1)), &f.vacuum()).unwrap();
        let expected = f.apply_mode(&ModeSymbol::psi(0, h(-3)), &f.vacuum()).unwrap();
        assert_eq!(f.operator_t(&one), expected);
        let two = f.apply_mode(&ModeSymbol::psi(0, h(-3)), &one).unwrap();
        assert_eq!(f.operator_d(&two), two.scaled(&Scalar::from_int(2)));
    }
}
