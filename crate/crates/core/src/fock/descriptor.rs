//! JSON module descriptors.

use std::sync::Arc;

use serde::{Deserialize, Serialize};

use super::GradedModule;
use crate::error::{Error, Result};
use crate::lie::{builtin, LieAlgebraData};
use crate::modes::HalfInt;
use crate::scalar::Scalar;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case", deny_unknown_fields)]
pub enum ModuleDescriptor {
    NsVerma {
        c: Scalar,
        h: Scalar,
        #[serde(default)]
        irreducible: bool,
    },
    VirVerma {
        c: Scalar,
        h: Scalar,
        #[serde(default)]
        irreducible: bool,
    },
    Affine {
        /// A built-in name such as `"sl2"` or an inline structure-constant object.
        algebra: serde_json::Value,
        level: i64,
        #[serde(default)]
        spin: HalfInt,
    },
    Fermion {
        colors: usize,
    },
    Tensor {
        factors: Vec<ModuleDescriptor>,
    },
}

pub fn resolve_algebra(value: &serde_json::Value) -> Result<Arc<LieAlgebraData>> {
    match value {
        serde_json::Value::String(name) => builtin(name),
        serde_json::Value::Object(_) => LieAlgebraData::from_json_validated(value),
        other => Err(Error::Malformed(format!("algebra must be a name or an object, found {other}"))),
    }
}

impl ModuleDescriptor {
    pub fn from_json(value: &serde_json::Value) -> Result<Self> {
        serde_json::from_value(value.clone()).map_err(|e| Error::Malformed(format!("module descriptor: {e}")))
    }

    pub fn build(&self) -> Result<Arc<GradedModule>> {
        match self {
            ModuleDescriptor::NsVerma { c, h, irreducible } => {
                GradedModule::ns_verma(c.clone(), h.clone(), *irreducible)
            }
            ModuleDescriptor::VirVerma { c, h, irreducible } => {
                GradedModule::virasoro_verma(c.clone(), h.clone(), *irreducible)
            }
            ModuleDescriptor::Affine { algebra, level, spin } => {
                check_level(*level)?;
                GradedModule::affine(resolve_algebra(algebra)?, Scalar::from_int(*level), spin.twice())
            }
            ModuleDescriptor::Fermion { colors } => GradedModule::fermion(*colors),
            ModuleDescriptor::Tensor { factors } => {
                let mut affine = None;
                let mut fermion = None;
                for f in factors {
                    match f {
                        ModuleDescriptor::Affine { algebra, level, spin } => {
                            if affine.replace((algebra, *level, *spin)).is_some() {
                                return Err(Error::Malformed("tensor has two affine factors".into()));
                            }
                        }
                        ModuleDescriptor::Fermion { colors } => {
                            if fermion.replace(*colors).is_some() {
                                return Err(Error::Malformed("tensor has two fermion factors".into()));
                            }
                        }
                        _ => {
                            return Err(Error::Malformed(
                                "tensor factors must be one affine and one fermion module".into(),
                            ))
                        }
                    }
                }
                let (Some((algebra, level, spin)), Some(colors)) = (affine, fermion) else {
                    return Err(Error::Malformed(
                        "tensor factors must be one affine and one fermion module".into(),
                    ));
                };
                check_level(level)?;
                let lie = resolve_algebra(algebra)?;
                if colors != lie.dim() {
                    return Err(Error::Malformed(format!(
                        "fermion factor needs {} colors to match {}",
                        lie.dim(),
                        lie.name()
                    )));
                }
                GradedModule::tensor(lie, Scalar::from_int(level), spin.twice())
            }
        }
    }
}

fn check_level(level: i64) -> Result<()> {
    if level < 0 {
        return Err(Error::InvalidParameter(format!("level {level} is negative")));
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::json;

    #[test]
    fn parses_all_descriptor_kinds() {
        let half = json!([{"num":1,"den":2,"rad":1}]);
        let ns = ModuleDescriptor::from_json(&json!({"type":"ns_verma","c":half,"h":[]})).unwrap();
        assert_eq!(ns.build().unwrap().dim(HalfInt::from_twice(3)), 2);
        let aff = ModuleDescriptor::from_json(&json!({"type":"affine","algebra":"sl2","level":1,"spin":"1/2"})).unwrap();
        assert_eq!(aff.build().unwrap().floor().dim(), 2);
        let t = json!({"type":"tensor","factors":[
            {"type":"affine","algebra":"sl2","level":1,"spin":0},
            {"type":"fermion","colors":3}]});
        assert!(ModuleDescriptor::from_json(&t).unwrap().build().is_ok());
        assert!(ModuleDescriptor::from_json(&json!({"type":"fermion"})).is_err());
        assert!(ModuleDescriptor::from_json(&json!({"type":"affine","algebra":"e9","level":1}))
            .unwrap()
            .build()
            .is_err());
    }
}
