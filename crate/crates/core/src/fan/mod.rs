//! Simplicial fans in R^E / R𝟙 and the fan structures on Bergman fans of matroids.

mod build;
mod membership;
mod quotient;
mod star;

use std::collections::{BTreeMap, HashMap, HashSet};
use std::fmt;

use num_traits::Signed;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::bitset::ElementSet;
use crate::error::{Error, Result};
use crate::linalg;
use crate::matroid::Matroid;

pub use quotient::QuotientVector;
pub use star::LocalMatroid;

/// Sorted ray indices.
pub type Cone = Vec<usize>;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Structure {
    Fine,
    Nested,
    Coarse,
    Product,
}

impl fmt::Display for Structure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Structure::Fine => "fine",
            Structure::Nested => "nested",
            Structure::Coarse => "coarse",
            Structure::Product => "product",
        })
    }
}

/// A primitive ray generator with the flat it comes from, when there is one.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Ray {
    pub vector: QuotientVector,
    pub flat: Option<ElementSet>,
    pub rank: Option<usize>,
}

impl Ray {
    /// Ray through `v`; flat metadata is attached when the class of `v` contains the
    /// indicator of a proper nonempty flat of `m`.
    pub fn through(m: &Matroid, v: &QuotientVector) -> Ray {
        let vector = v.primitive();
        let flat = vector
            .as_indicator()
            .filter(|&s| !s.is_empty() && s != m.full() && m.is_flat(s));
        Ray {
            rank: flat.map(|f| m.rank(f)),
            vector,
            flat,
        }
    }
}

/// A simplicial fan: rays plus a face-closed set of cones.
#[derive(Clone)]
pub struct Fan {
    labels: Vec<String>,
    rays: Vec<Ray>,
    /// `cones[k]` holds the cones with `k` rays, sorted.
    cones: Vec<Vec<Cone>>,
    cone_set: HashSet<Cone>,
    ray_index: HashMap<QuotientVector, usize>,
    structure: Structure,
}

impl Fan {
    /// Fan generated by `cones` and all their faces.
    pub fn from_cones(
        labels: Vec<String>,
        rays: Vec<Ray>,
        generators: impl IntoIterator<Item = Cone>,
        structure: Structure,
    ) -> Result<Fan> {
        let n = labels.len();
        let mut ray_index = HashMap::with_capacity(rays.len());
        for (k, r) in rays.iter().enumerate() {
            if r.vector.len() != n {
                return Err(Error::InvalidArgument(format!(
                    "ray {k} has {} coordinates, expected {n}",
                    r.vector.len()
                )));
            }
            if r.vector.is_zero() {
                return Err(Error::InvalidArgument(format!("ray {k} is zero")));
            }
            if ray_index.insert(r.vector.clone(), k).is_some() {
                return Err(Error::InvalidArgument(format!("ray {k} is repeated")));
            }
        }
        let mut cone_set: HashSet<Cone> = HashSet::new();
        cone_set.insert(Vec::new());
        for mut c in generators {
            c.sort_unstable();
            c.dedup();
            if let Some(&bad) = c.iter().find(|&&i| i >= rays.len()) {
                return Err(Error::InvalidArgument(format!("ray index {bad} out of range")));
            }
            if cone_set.contains(&c) {
                continue;
            }
            if c.len() <= 20 {
                for sub in ElementSet::full(c.len()).subsets() {
                    cone_set.insert(sub.iter().map(|k| c[k]).collect());
                }
            } else {
                add_faces_slow(&c, &mut cone_set);
            }
        }
        let top = cone_set.iter().map(Vec::len).max().unwrap_or(0);
        let mut cones = vec![Vec::new(); top + 1];
        for c in &cone_set {
            cones[c.len()].push(c.clone());
        }
        for level in cones.iter_mut() {
            level.sort();
        }
        Ok(Fan {
            labels,
            rays,
            cones,
            cone_set,
            ray_index,
            structure,
        })
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    /// |E|.
    pub fn ambient_len(&self) -> usize {
        self.labels.len()
    }

    pub fn structure(&self) -> Structure {
        self.structure
    }

    pub(crate) fn with_structure(mut self, s: Structure) -> Fan {
        self.structure = s;
        self
    }

    pub fn rays(&self) -> &[Ray] {
        &self.rays
    }

    pub fn ray(&self, k: usize) -> &Ray {
        &self.rays[k]
    }

    pub fn ray_index(&self, v: &QuotientVector) -> Option<usize> {
        self.ray_index.get(v).copied()
    }

    /// Dimension of the largest cone.
    pub fn dim(&self) -> usize {
        self.cones.len() - 1
    }

    pub fn cones_of_dim(&self, k: usize) -> &[Cone] {
        self.cones.get(k).map_or(&[], Vec::as_slice)
    }

    pub fn maximal_cones(&self) -> Vec<Cone> {
        self.cones
            .iter()
            .flatten()
            .filter(|c| {
                !(0..self.rays.len()).any(|r| {
                    if c.binary_search(&r).is_ok() {
                        return false;
                    }
                    let mut d = (*c).clone();
                    d.push(r);
                    d.sort_unstable();
                    self.cone_set.contains(&d)
                })
            })
            .cloned()
            .collect()
    }

    pub fn is_pure(&self) -> bool {
        self.maximal_cones().iter().all(|c| c.len() == self.dim())
    }

    pub fn cone_count(&self) -> usize {
        self.cone_set.len()
    }

    /// `cone` must be sorted.
    pub fn contains_cone(&self, cone: &[usize]) -> bool {
        self.cone_set.contains(cone)
    }

    /// Cones of dimension `dim()` that contain `cone`.
    pub fn top_cones_containing(&self, cone: &[usize]) -> Vec<&Cone> {
        self.cones_of_dim(self.dim())
            .iter()
            .filter(|c| cone.iter().all(|r| c.binary_search(r).is_ok()))
            .collect()
    }

    /// Quotient coordinates of the generators of `cone`, one row per ray.
    pub fn generator_rows(&self, cone: &[usize]) -> Vec<Vec<i64>> {
        cone.iter()
            .map(|&r| self.rays[r].vector.quotient_coords().to_vec())
            .collect()
    }

    /// Generators of `cone` extend to a basis of Z^E / Z𝟙.
    pub fn cone_is_unimodular(&self, cone: &[usize]) -> bool {
        linalg::is_unimodular_rows(&self.generator_rows(cone))
    }

    pub fn is_unimodular(&self) -> bool {
        self.cones_of_dim(self.dim())
            .iter()
            .all(|c| self.cone_is_unimodular(c))
            && self.is_pure()
    }

    /// Histogram of flat ranks over rays; rays without a flat are counted under `None`.
    pub fn ray_rank_profile(&self) -> BTreeMap<Option<usize>, usize> {
        let mut out = BTreeMap::new();
        for r in &self.rays {
            *out.entry(r.rank).or_insert(0) += 1;
        }
        out
    }

    /// A top-dimensional cone containing `x` (modulo 𝟙), if any.
    pub fn locate(&self, x: &QuotientVector) -> Option<&Cone> {
        let target = x.to_rationals()[1..].to_vec();
        self.cones_of_dim(self.dim()).iter().find(|c| {
            let cols = self.generator_rows(c);
            let rows: Vec<Vec<i64>> = (0..target.len())
                .map(|i| cols.iter().map(|g| g[i]).collect())
                .collect();
            match linalg::solve(&linalg::to_rational(&rows), &target) {
                Some(lambda) => {
                    // rays of a cone are independent, so the solution is unique
                    lambda.iter().all(|l| !l.is_negative())
                }
                None => false,
            }
        })
    }

    /// A point in the relative interior of `cone`: a combination with coefficients drawn
    /// from `1..=9`.
    pub fn interior_point(&self, cone: &[usize], rng: &mut impl Rng) -> QuotientVector {
        let mut v = QuotientVector::zero(self.ambient_len());
        for &r in cone {
            v = v.add(&self.rays[r].vector.scale(rng.gen_range(1..=9)));
        }
        v
    }

    /// `count` deterministic interior points of `cone`.
    pub fn sample_cone(&self, cone: &[usize], count: usize, seed: u64) -> Vec<QuotientVector> {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        (0..count).map(|_| self.interior_point(cone, &mut rng)).collect()
    }

    pub fn to_file(&self, m: Option<&Matroid>) -> FanFile {
        FanFile {
            labels: self.labels.clone(),
            rays: self
                .rays
                .iter()
                .map(|r| RayFile {
                    coords: r.vector.coords().to_vec(),
                    flat: match (r.flat, m) {
                        (Some(f), Some(m)) => Some(m.ground().names(f)),
                        (Some(f), None) => {
                            Some(f.iter().map(|i| self.labels[i].clone()).collect())
                        }
                        _ => None,
                    },
                    rank: r.rank,
                })
                .collect(),
            cones: self.maximal_cones(),
            structure: self.structure,
        }
    }

    pub fn from_file(file: &FanFile) -> Result<Fan> {
        let labels = file.labels.clone();
        let index: HashMap<&str, usize> = labels
            .iter()
            .enumerate()
            .map(|(i, l)| (l.as_str(), i))
            .collect();
        let rays = file
            .rays
            .iter()
            .map(|r| {
                let flat = match &r.flat {
                    Some(names) => Some(
                        names
                            .iter()
                            .map(|l| {
                                index
                                    .get(l.as_str())
                                    .copied()
                                    .ok_or_else(|| Error::UnknownLabel(l.clone()))
                            })
                            .collect::<Result<ElementSet>>()?,
                    ),
                    None => None,
                };
                Ok(Ray {
                    vector: QuotientVector::new(r.coords.clone()),
                    flat,
                    rank: r.rank,
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Fan::from_cones(labels, rays, file.cones.clone(), file.structure)
    }

    pub fn to_json(&self, m: Option<&Matroid>) -> String {
        serde_json::to_string_pretty(&self.to_file(m)).expect("fan files always serialize")
    }

    pub fn from_json(s: &str) -> Result<Fan> {
        Fan::from_file(&serde_json::from_str(s)?)
    }
}

fn add_faces_slow(c: &[usize], out: &mut HashSet<Cone>) {
    if !out.insert(c.to_vec()) {
        return;
    }
    for k in 0..c.len() {
        let mut d = c.to_vec();
        d.remove(k);
        add_faces_slow(&d, out);
    }
}

impl fmt::Debug for Fan {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "Fan({}, {} rays, {} top cones of dim {})",
            self.structure,
            self.rays.len(),
            self.cones_of_dim(self.dim()).len(),
            self.dim()
        )
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RayFile {
    pub coords: Vec<i64>,
    pub flat: Option<Vec<String>>,
    pub rank: Option<usize>,
}

/// JSON form of a fan; `cones` lists the maximal cones.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FanFile {
    pub labels: Vec<String>,
    pub rays: Vec<RayFile>,
    pub cones: Vec<Cone>,
    pub structure: Structure,
}
