//! JSON form of a matroid: labels plus the constructor recipe that rebuilds it.

use serde::{Deserialize, Serialize};

use super::{GroupTable, Matroid};
use crate::error::Result;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MatroidFile {
    pub labels: Vec<String>,
    #[serde(flatten)]
    pub recipe: Recipe,
}

/// How a matroid was built. Element references inside derived recipes are labels of the
/// parent; everything else uses 0-based positions.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", content = "data", rename_all = "snake_case")]
pub enum Recipe {
    Uniform {
        rank: usize,
        size: usize,
    },
    Graphic {
        vertices: usize,
        edges: Vec<[usize; 2]>,
    },
    Linear {
        prime: u64,
        columns: Vec<Vec<u64>>,
    },
    Projective {
        dim: usize,
        prime: u64,
    },
    Dowling {
        dim: usize,
        group: GroupTable,
    },
    Bases {
        size: usize,
        bases: Vec<Vec<usize>>,
    },
    Circuits {
        size: usize,
        circuits: Vec<Vec<usize>>,
    },
    ParallelConnection {
        left: Box<MatroidFile>,
        right: Box<MatroidFile>,
        left_point: String,
        right_point: String,
    },
    Minor {
        parent: Box<MatroidFile>,
        keep: Vec<String>,
        contract: Vec<String>,
    },
    Truncation {
        parent: Box<MatroidFile>,
        rank: usize,
    },
    DirectSum {
        parts: Vec<MatroidFile>,
    },
}

impl Recipe {
    pub fn kind(&self) -> &'static str {
        match self {
            Recipe::Uniform { .. } => "uniform",
            Recipe::Graphic { .. } => "graphic",
            Recipe::Linear { .. } => "linear",
            Recipe::Projective { .. } => "projective",
            Recipe::Dowling { .. } => "dowling",
            Recipe::Bases { .. } => "bases",
            Recipe::Circuits { .. } => "circuits",
            Recipe::ParallelConnection { .. } => "parallel_connection",
            Recipe::Minor { .. } => "minor",
            Recipe::Truncation { .. } => "truncation",
            Recipe::DirectSum { .. } => "direct_sum",
        }
    }
}

impl Matroid {
    pub fn to_file(&self) -> MatroidFile {
        MatroidFile {
            labels: self.labels().to_vec(),
            recipe: self.recipe().clone(),
        }
    }

    pub fn from_file(file: &MatroidFile) -> Result<Matroid> {
        let m = match &file.recipe {
            Recipe::Uniform { rank, size } => Matroid::uniform(*rank, *size)?,
            Recipe::Graphic { vertices, edges } => {
                let e: Vec<(usize, usize)> = edges.iter().map(|&[a, b]| (a, b)).collect();
                Matroid::graphic(*vertices, &e)?
            }
            Recipe::Linear { prime, columns } => Matroid::linear(*prime, columns.clone())?,
            Recipe::Projective { dim, prime } => Matroid::projective_geometry(*dim, *prime)?,
            Recipe::Dowling { dim, group } => Matroid::dowling(*dim, group.clone())?,
            Recipe::Bases { size, bases } => Matroid::from_bases(*size, bases)?,
            Recipe::Circuits { size, circuits } => Matroid::from_circuits(*size, circuits)?,
            Recipe::ParallelConnection {
                left,
                right,
                left_point,
                right_point,
            } => Matroid::parallel_connection(
                &Matroid::from_file(left)?,
                &Matroid::from_file(right)?,
                left_point,
                right_point,
            )?,
            Recipe::Minor {
                parent,
                keep,
                contract,
            } => {
                let p = Matroid::from_file(parent)?;
                let keep = p.ground().set_of(keep)?;
                let contract = p.ground().set_of(contract)?;
                p.minor(keep, contract)?
            }
            Recipe::Truncation { parent, rank } => Matroid::from_file(parent)?.truncate(*rank)?,
            Recipe::DirectSum { parts } => {
                let parts = parts
                    .iter()
                    .map(Matroid::from_file)
                    .collect::<Result<Vec<_>>>()?;
                Matroid::direct_sum_of(&parts)?
            }
        };
        if m.labels() == file.labels.as_slice() {
            Ok(m)
        } else {
            m.with_labels(file.labels.clone())
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.to_file()).expect("matroid files always serialize")
    }

    pub fn from_json(s: &str) -> Result<Matroid> {
        let file: MatroidFile = serde_json::from_str(s)?;
        Matroid::from_file(&file)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn json_shape() {
        let m = Matroid::uniform(2, 3).unwrap();
        let v: serde_json::Value = serde_json::from_str(&m.to_json()).unwrap();
        assert_eq!(v["kind"], "uniform");
        assert_eq!(v["data"]["rank"], 2);
        assert_eq!(v["labels"].as_array().unwrap().len(), 3);
    }

    #[test]
    fn derived_recipes_rebuild() {
        let k4 = Matroid::complete_graph(4).unwrap();
        let e = k4.ground().set_of(&["12"]).unwrap();
        let m = k4.contract(e).unwrap();
        let back = Matroid::from_json(&m.to_json()).unwrap();
        assert!(back.same_as(&m));
        assert_eq!(back.kind(), "minor");
    }

    #[test]
    fn relabelled_file_keeps_labels() {
        let m = Matroid::uniform(1, 2)
            .unwrap()
            .with_labels(vec!["p".into(), "q".into()])
            .unwrap();
        let back = Matroid::from_json(&m.to_json()).unwrap();
        assert_eq!(back.labels(), m.labels());
    }

    #[test]
    fn malformed_input_is_an_error() {
        assert!(Matroid::from_json(r#"{"labels":[],"kind":"nope","data":{}}"#).is_err());
        assert!(Matroid::from_json(r#"{"labels":["a"],"kind":"uniform","data":{"rank":3,"size":1}}"#).is_err());
    }
}
