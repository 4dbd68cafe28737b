//! Structure constants of compact simple Lie algebras in an orthonormal basis.
//!
//! Brackets read `[X_a, X_b] = i Σ_c Γ_ab^c X_c` with `Γ` real and totally
//! antisymmetric.

use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar::Scalar;

#[derive(Debug, Clone, PartialEq)]
pub struct LieAlgebraData {
    name: String,
    dim: usize,
    // gamma[a][b] = sorted sparse list of (c, Γ_ab^c)
    gamma: Vec<Vec<Vec<(usize, Scalar)>>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Violation {
    NotReal { a: usize, b: usize, c: usize },
    Antisymmetry { a: usize, b: usize, c: usize },
    Jacobi { a: usize, b: usize, c: usize, d: usize },
    Normalization { b: usize, d: usize },
    DegenerateNormalization,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::NotReal { a, b, c } => write!(f, "Γ_{a}{b}^{c} is not real"),
            Violation::Antisymmetry { a, b, c } => {
                write!(f, "antisymmetry fails at ({a},{b},{c})")
            }
            Violation::Jacobi { a, b, c, d } => write!(f, "Jacobi fails at ({a},{b},{c},{d})"),
            Violation::Normalization { b, d } => {
                write!(f, "Σ_ac Γ_ac^{b} Γ_ac^{d} breaks the normalization")
            }
            Violation::DegenerateNormalization => {
                write!(f, "normalization constant is not a positive rational")
            }
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }
}

#[derive(Serialize, Deserialize)]
struct GammaEntry {
    a: usize,
    b: usize,
    c: usize,
    val: Scalar,
}

#[derive(Serialize, Deserialize)]
struct LieJson {
    name: String,
    dim: usize,
    gamma: Vec<GammaEntry>,
}

impl LieAlgebraData {
    /// Builds data from explicit entries `Γ_ab^c`, without any completion.
    pub fn from_entries(
        name: impl Into<String>,
        dim: usize,
        entries: impl IntoIterator<Item = ((usize, usize, usize), Scalar)>,
    ) -> Result<Self> {
        if dim == 0 {
            return Err(Error::Malformed("dimension must be positive".into()));
        }
        let mut gamma = vec![vec![Vec::<(usize, Scalar)>::new(); dim]; dim];
        for ((a, b, c), v) in entries {
            if a >= dim || b >= dim || c >= dim {
                return Err(Error::Malformed(format!("index ({a},{b},{c}) out of range")));
            }
            let slot = &mut gamma[a][b];
            match slot.iter_mut().find(|(k, _)| *k == c) {
                Some((_, x)) => *x = v,
                None => slot.push((c, v)),
            }
        }
        for row in gamma.iter_mut() {
            for list in row.iter_mut() {
                list.retain(|(_, v)| !v.is_zero());
                list.sort_by_key(|(c, _)| *c);
            }
        }
        Ok(LieAlgebraData {
            name: name.into(),
            dim,
            gamma,
        })
    }

    /// Parses the JSON form; entries list `a < b` and are completed by `Γ_ba^c = -Γ_ab^c`.
    pub fn from_json(value: &serde_json::Value) -> Result<Self> {
        let raw: LieJson = serde_json::from_value(value.clone())
            .map_err(|e| Error::Malformed(format!("algebra JSON: {e}")))?;
        let mut entries = Vec::new();
        for e in raw.gamma {
            if e.a >= e.b {
                return Err(Error::Malformed(format!(
                    "gamma entry ({},{},{}) must have a < b",
                    e.a, e.b, e.c
                )));
            }
            entries.push(((e.b, e.a, e.c), -&e.val));
            entries.push(((e.a, e.b, e.c), e.val));
        }
        Self::from_entries(raw.name, raw.dim, entries)
    }

    pub fn to_json(&self) -> serde_json::Value {
        let mut gamma = Vec::new();
        for a in 0..self.dim {
            for b in a + 1..self.dim {
                for (c, v) in &self.gamma[a][b] {
                    gamma.push(GammaEntry {
                        a,
                        b,
                        c: *c,
                        val: v.clone(),
                    });
                }
            }
        }
        serde_json::to_value(LieJson {
            name: self.name.clone(),
            dim: self.dim,
            gamma,
        })
        .expect("serializable")
    }

    /// Parses and rejects anything that fails validation.
    pub fn from_json_validated(value: &serde_json::Value) -> Result<Arc<Self>> {
        let data = Self::from_json(value)?;
        data.into_validated()
    }

    pub fn into_validated(self) -> Result<Arc<Self>> {
        let report = self.validate();
        if let Some(v) = report.violations.first() {
            return Err(Error::InvalidStructureConstants(format!(
                "{v} ({} violations)",
                report.violations.len()
            )));
        }
        Ok(Arc::new(self))
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn gamma(&self, a: usize, b: usize, c: usize) -> Scalar {
        self.gamma[a][b]
            .iter()
            .find(|(k, _)| *k == c)
            .map(|(_, v)| v.clone())
            .unwrap_or_default()
    }

    /// Nonzero `Γ_ab^c` as `(c, value)`.
    pub fn bracket(&self, a: usize, b: usize) -> &[(usize, Scalar)] {
        &self.gamma[a][b]
    }

    pub fn validate(&self) -> ValidationReport {
        let n = self.dim;
        let mut violations = Vec::new();
        for a in 0..n {
            for b in 0..n {
                for (c, v) in &self.gamma[a][b] {
                    if !v.is_real() {
                        violations.push(Violation::NotReal { a, b, c: *c });
                    }
                }
            }
        }
        // total antisymmetry: Γ_abc = -Γ_bac = -Γ_acb
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    let v = self.gamma(a, b, c);
                    let swap_ab = self.gamma(b, a, c);
                    let swap_bc = self.gamma(a, c, b);
                    if !(&v + &swap_ab).is_zero() || !(&v + &swap_bc).is_zero() {
                        violations.push(Violation::Antisymmetry { a, b, c });
                    }
                }
            }
        }
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    for d in 0..n {
                        if !self.jacobi_sum(a, b, c, d).is_zero() {
                            violations.push(Violation::Jacobi { a, b, c, d });
                        }
                    }
                }
            }
        }
        let norms: Vec<Vec<Scalar>> = (0..n)
            .map(|b| (0..n).map(|d| self.normalization_sum(b, d)).collect())
            .collect();
        let reference = norms[0][0].clone();
        match reference.as_rational() {
            Some(q) if q > BigRational::from_integer(BigInt::from(0)) => {}
            _ => violations.push(Violation::DegenerateNormalization),
        }
        for (b, row) in norms.iter().enumerate() {
            for (d, v) in row.iter().enumerate() {
                let expected = if b == d { reference.clone() } else { Scalar::zero() };
                if *v != expected {
                    violations.push(Violation::Normalization { b, d });
                }
            }
        }
        ValidationReport { violations }
    }

    fn jacobi_sum(&self, a: usize, b: usize, c: usize, d: usize) -> Scalar {
        let mut s = Scalar::zero();
        for (p, q, r, t) in [(a, b, c, d), (d, a, c, b), (d, b, a, c)] {
            for (e, v) in &self.gamma[p][q] {
                let w = self.gamma(r, t, *e);
                if !w.is_zero() {
                    s += &(v * &w);
                }
            }
        }
        s
    }

    fn normalization_sum(&self, b: usize, d: usize) -> Scalar {
        let mut s = Scalar::zero();
        for a in 0..self.dim {
            for c in 0..self.dim {
                let x = self.gamma(a, c, b);
                if x.is_zero() {
                    continue;
                }
                let y = self.gamma(a, c, d);
                if !y.is_zero() {
                    s += &(&x * &y);
                }
            }
        }
        s
    }

    /// The dual Coxeter number `g = ½ Σ_{a,c} (Γ_ac^b)²`, required to agree for every `b`.
    pub fn dual_coxeter(&self) -> Result<Scalar> {
        let half = Scalar::from_frac(1, 2);
        let g = &self.normalization_sum(0, 0) * &half;
        for b in 1..self.dim {
            if &self.normalization_sum(b, b) * &half != g {
                return Err(Error::InvalidStructureConstants(format!(
                    "Σ_ac (Γ_ac^b)² differs between b = 0 and b = {b}"
                )));
            }
        }
        match g.as_rational() {
            Some(q) if q > BigRational::from_integer(BigInt::from(0)) => Ok(g),
            _ => Err(Error::InvalidStructureConstants(format!(
                "dual Coxeter number {g} is not a positive rational"
            ))),
        }
    }
}

/// `su(2)` in the basis `X_1 = (i√2/2)(E−F)`, `X_2 = (√2/2)(E+F)`, `X_3 = (√2/2)H`,
/// where `Γ_abc = √2 ε_abc`.
pub fn sl2_basis() -> LieAlgebraData {
    let r2 = Scalar::sqrt_int(2);
    let mut entries = Vec::new();
    for (a, b, c, s) in [
        (0, 1, 2, 1),
        (1, 2, 0, 1),
        (2, 0, 1, 1),
        (1, 0, 2, -1),
        (2, 1, 0, -1),
        (0, 2, 1, -1),
    ] {
        entries.push(((a, b, c), &r2 * &Scalar::from_int(s)));
    }
    LieAlgebraData::from_entries("sl2", 3, entries).expect("static data")
}

/// Looks up a built-in algebra with concrete structure constants.
pub fn builtin(name: &str) -> Result<Arc<LieAlgebraData>> {
    match name {
        "sl2" | "su2" | "A1" => sl2_basis().into_validated(),
        other => Err(Error::UnknownAlgebra(other.to_string())),
    }
}

/// `c_{V_j} = 2j² + 2j` for the spin-`j` representation of `sl2`; `twice_j = 2j`.
pub fn casimir_constant_sl2(twice_j: i64) -> Result<Scalar> {
    if twice_j < 0 {
        return Err(Error::InvalidParameter(format!("spin {twice_j}/2 is negative")));
    }
    // 2j² + 2j = (2j)²/2 + 2j
    Ok(Scalar::from_frac(twice_j * twice_j + 2 * twice_j, 2))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Family {
    A,
    B,
    C,
    D,
    E,
    F,
    G,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CatalogEntry {
    pub family: Family,
    pub rank: u32,
    pub dim: u64,
    pub dual_coxeter: u64,
}

impl CatalogEntry {
    pub fn label(&self) -> String {
        format!("{:?}{}", self.family, self.rank)
    }
}

/// Dimension and dual Coxeter number of a simple algebra by Cartan type.
pub fn catalog(family: Family, rank: u32) -> Result<CatalogEntry> {
    let n = rank as u64;
    let (dim, g) = match family {
        Family::A if n >= 1 => (n * n + 2 * n, n + 1),
        Family::B if n >= 2 => (2 * n * n + n, 2 * n - 1),
        Family::C if n >= 3 => (2 * n * n + n, n + 1),
        Family::D if n >= 4 => (2 * n * n - n, 2 * n - 2),
        Family::E if n == 6 => (78, 12),
        Family::E if n == 7 => (133, 18),
        Family::E if n == 8 => (248, 30),
        Family::F if n == 4 => (52, 9),
        Family::G if n == 2 => (14, 4),
        _ => {
            return Err(Error::UnknownAlgebra(format!("{family:?}{rank}")));
        }
    };
    Ok(CatalogEntry {
        family,
        rank,
        dim,
        dual_coxeter: g,
    })
}

/// Parses labels such as `A3`, `e8`, `G2`.
pub fn parse_catalog_label(label: &str) -> Result<CatalogEntry> {
    let t = label.trim();
    let mut chars = t.chars();
    let family = match chars.next().map(|c| c.to_ascii_uppercase()) {
        Some('A') => Family::A,
        Some('B') => Family::B,
        Some('C') => Family::C,
        Some('D') => Family::D,
        Some('E') => Family::E,
        Some('F') => Family::F,
        Some('G') => Family::G,
        _ => return Err(Error::UnknownAlgebra(label.to_string())),
    };
    let rank: u32 = chars
        .as_str()
        .trim_start_matches('_')
        .parse()
        .map_err(|_| Error::UnknownAlgebra(label.to_string()))?;
    catalog(family, rank)
}

/// One row per Cartan type, with dimension and dual Coxeter number as formulas in the rank `n`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CatalogRow {
    pub family: Family,
    pub ranks: String,
    pub dim: String,
    pub dual_coxeter: String,
}

pub fn catalog_rows() -> Vec<CatalogRow> {
    let row = |family, ranks: &str, dim: &str, g: &str| CatalogRow {
        family,
        ranks: ranks.into(),
        dim: dim.into(),
        dual_coxeter: g.into(),
    };
    vec![
        row(Family::A, "n >= 1", "n(n+2)", "n+1"),
        row(Family::B, "n >= 2", "n(2n+1)", "2n-1"),
        row(Family::C, "n >= 3", "n(2n+1)", "n+1"),
        row(Family::D, "n >= 4", "n(2n-1)", "2n-2"),
        row(Family::E, "6", "78", "12"),
        row(Family::E, "7", "133", "18"),
        row(Family::E, "8", "248", "30"),
        row(Family::F, "4", "52", "9"),
        row(Family::G, "2", "14", "4"),
    ]
}

/// The exceptional entries plus the classical families for ranks `1..=max_rank`.
pub fn catalog_table(max_rank: u32) -> Vec<CatalogEntry> {
    let mut out = Vec::new();
    for family in [Family::A, Family::B, Family::C, Family::D] {
        for r in 1..=max_rank {
            if let Ok(e) = catalog(family, r) {
                out.push(e);
            }
        }
    }
    for (family, r) in [
        (Family::E, 6),
        (Family::E, 7),
        (Family::E, 8),
        (Family::F, 4),
        (Family::G, 2),
    ] {
        out.push(catalog(family, r).expect("exceptional entry"));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sl2_is_valid_with_dual_coxeter_two() {
        let s = sl2_basis();
        assert!(s.validate().is_valid(), "{:?}", s.validate());
        assert_eq!(s.dual_coxeter().unwrap(), Scalar::from_int(2));
        assert_eq!(s.gamma(0, 1, 2), Scalar::sqrt_int(2));
        assert_eq!(s.gamma(1, 0, 2), -Scalar::sqrt_int(2));
    }

    #[test]
    fn symmetric_entry_breaks_antisymmetry() {
        let one = Scalar::one();
        let d = LieAlgebraData::from_entries(
            "bad",
            3,
            [((0, 1, 2), one.clone()), ((1, 0, 2), one)],
        )
        .unwrap();
        let report = d.validate();
        assert!(report
            .violations
            .contains(&Violation::Antisymmetry { a: 0, b: 1, c: 2 }));
    }

    #[test]
    fn zero_gamma_fails_only_normalization() {
        let d = LieAlgebraData::from_entries("zero", 3, []).unwrap();
        let report = d.validate();
        assert!(!report.violations.iter().any(|v| matches!(v, Violation::Jacobi { .. })));
        assert!(report.violations.contains(&Violation::DegenerateNormalization));
        assert!(d.dual_coxeter().is_err());
    }

    #[test]
    fn json_round_trip_completes_antisymmetry() {
        let s = sl2_basis();
        let back = LieAlgebraData::from_json(&s.to_json()).unwrap();
        assert_eq!(back, s);
        let bad = serde_json::json!({"name":"x","dim":3,"gamma":[{"a":1,"b":0,"c":2,"val":[]}]});
        assert!(LieAlgebraData::from_json(&bad).is_err());
    }

    #[test]
    fn casimir_values() {
        assert_eq!(casimir_constant_sl2(0).unwrap(), Scalar::zero());
        assert_eq!(casimir_constant_sl2(1).unwrap(), Scalar::from_frac(3, 2));
        assert_eq!(casimir_constant_sl2(2).unwrap(), Scalar::from_int(4));
        assert!(casimir_constant_sl2(-1).is_err());
    }

    #[test]
    fn catalog_values() {
        assert_eq!(catalog(Family::G, 2).unwrap().dual_coxeter, 4);
        assert_eq!(catalog(Family::A, 1).unwrap().dim, 3);
        assert_eq!(catalog(Family::A, 1).unwrap().dual_coxeter, 2);
        assert_eq!(parse_catalog_label("e8").unwrap().dim, 248);
        assert!(catalog(Family::E, 5).is_err());
        assert_eq!(catalog_table(1).len(), 6);
        assert_eq!(catalog_rows().len(), 9);
    }
}
