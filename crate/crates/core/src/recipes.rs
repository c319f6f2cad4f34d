//! Subset specifications and the named recipes that pin every free choice
//! of the worked instances.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::{FieldSpec, FieldTower};
use crate::pds::{build_dj, quadric_pds, standard_gram};
use crate::subset::{QuadricKind, SubsetD};

/// JSON subset description.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SubsetSpec {
    Cyclotomic {
        #[serde(rename = "N")]
        n: u64,
        #[serde(rename = "J")]
        j: Vec<u64>,
    },
    Explicit {
        logs: Vec<u64>,
    },
    Quadric {
        /// Upper-triangular coefficients over F_q labels; `None` picks the standard form.
        #[serde(default)]
        gram: Option<Vec<Vec<u32>>>,
        kind: Option<QuadricKind>,
    },
    Complement(Box<SubsetSpec>),
}

impl SubsetSpec {
    pub fn build(&self, tower: &FieldTower) -> Result<SubsetD> {
        match self {
            SubsetSpec::Cyclotomic { n, j } => build_dj(tower, *n, j),
            SubsetSpec::Explicit { logs } => {
                if let Some(&l) = logs.iter().find(|&&l| l >= tower.order()) {
                    return Err(Error::InvalidSubset(format!("log {l} out of range")));
                }
                SubsetD::from_logs(tower, logs)
            }
            SubsetSpec::Quadric { gram, kind } => {
                let gram = match (gram, kind) {
                    (Some(g), _) => g.clone(),
                    (None, Some(k)) => standard_gram(tower, *k)?,
                    (None, None) => {
                        return Err(Error::InvalidSubset(
                            "quadric needs a gram matrix or a kind".into(),
                        ))
                    }
                };
                Ok(quadric_pds(tower, &gram, *kind)?.set)
            }
            SubsetSpec::Complement(inner) => Ok(inner.build(tower)?.complement()),
        }
    }
}

/// A fully pinned instance.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Recipe {
    pub name: String,
    pub field: FieldSpec,
    pub subset: SubsetSpec,
}

pub const RECIPE_NAMES: &[&str] = &[
    "example-3.1",
    "table-2-row-1",
    "example-3.2",
    "example-3.2-complement",
    "table-2-row-3",
    "example-3.3",
];

/// Parameters only the quadric recipe reads.
#[derive(Clone, Copy, Debug)]
pub struct QuadricChoice {
    pub kind: QuadricKind,
    pub p: u32,
    pub m: u32,
}

impl Default for QuadricChoice {
    fn default() -> Self {
        QuadricChoice {
            kind: QuadricKind::Hyperbolic,
            p: 3,
            m: 4,
        }
    }
}

fn cyclotomic(n: u64, j: &[u64]) -> SubsetSpec {
    SubsetSpec::Cyclotomic { n, j: j.to_vec() }
}

pub fn recipe(name: &str, quadric: QuadricChoice) -> Result<Recipe> {
    let (field, subset) = match name {
        "example-3.1" => (FieldSpec::new(2, 2, 4), cyclotomic(5, &[1, 2, 3, 4])),
        "table-2-row-1" | "example-3.2" => (FieldSpec::new(3, 1, 5), cyclotomic(11, &[0])),
        "example-3.2-complement" => (
            FieldSpec::new(3, 1, 5),
            SubsetSpec::Complement(Box::new(cyclotomic(11, &[0]))),
        ),
        "table-2-row-3" => (FieldSpec::new(3, 1, 12), cyclotomic(35, &[0])),
        "example-3.3" => (
            FieldSpec::new(quadric.p, 1, quadric.m),
            SubsetSpec::Quadric {
                gram: None,
                kind: Some(quadric.kind),
            },
        ),
        other => {
            return Err(Error::Domain(format!(
                "unknown recipe {other:?}; known: {}",
                RECIPE_NAMES.join(", ")
            )))
        }
    };
    Ok(Recipe {
        name: name.to_string(),
        field,
        subset,
    })
}

impl Recipe {
    pub fn build(&self) -> Result<(FieldTower, SubsetD)> {
        let tower = FieldTower::new(&self.field)?;
        let d = self.subset.build(&tower)?;
        Ok((tower, d))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn subset_json_forms() {
        let s: SubsetSpec =
            serde_json::from_str(r#"{"cyclotomic":{"N":5,"J":[1,2,3,4]}}"#).unwrap();
        assert_eq!(s, cyclotomic(5, &[1, 2, 3, 4]));
        let s: SubsetSpec = serde_json::from_str(r#"{"explicit":{"logs":[0,17,34]}}"#).unwrap();
        assert_eq!(
            s,
            SubsetSpec::Explicit {
                logs: vec![0, 17, 34]
            }
        );
        let s: SubsetSpec = serde_json::from_str(r#"{"quadric":{"kind":"elliptic"}}"#).unwrap();
        assert!(matches!(
            s,
            SubsetSpec::Quadric {
                gram: None,
                kind: Some(QuadricKind::Elliptic)
            }
        ));
        let s: SubsetSpec =
            serde_json::from_str(r#"{"complement":{"cyclotomic":{"N":11,"J":[0]}}}"#).unwrap();
        let t = FieldTower::new(&FieldSpec::new(3, 1, 5)).unwrap();
        assert_eq!(s.build(&t).unwrap().len(), 220);
    }

    #[test]
    fn small_recipes_build() {
        for (name, k) in [
            ("example-3.1", 204),
            ("table-2-row-1", 22),
            ("example-3.2-complement", 220),
            ("example-3.3", 32),
        ] {
            let (_, d) = recipe(name, QuadricChoice::default())
                .unwrap()
                .build()
                .unwrap();
            assert_eq!(d.len(), k, "{name}");
        }
        assert!(recipe("nope", QuadricChoice::default()).is_err());
    }
}
