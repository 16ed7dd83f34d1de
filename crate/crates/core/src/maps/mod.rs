//! Integer linear maps between the ambient spaces of Bergman fans.

mod cremona;
mod split;

use std::collections::{HashMap, HashSet, VecDeque};

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::fan::{Fan, QuotientVector};
use crate::linalg;
use crate::matroid::Matroid;

pub use cremona::{negation, CremonaCriterion};
pub use split::SplitSampleReport;

/// A matrix `Z^{E} → Z^{E'}` where source and target may be products of several spaces
/// `Z^{E_i} / Z𝟙_{E_i}`. Rows follow the concatenated target blocks, columns the
/// concatenated source blocks.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LatticeMap {
    pub source: Vec<Vec<String>>,
    pub target: Vec<Vec<String>>,
    pub matrix: Vec<Vec<i64>>,
}

fn offsets(blocks: &[Vec<String>]) -> Vec<usize> {
    let mut out = vec![0];
    for b in blocks {
        out.push(out.last().unwrap() + b.len());
    }
    out
}

impl LatticeMap {
    pub fn new(
        source: Vec<Vec<String>>,
        target: Vec<Vec<String>>,
        matrix: Vec<Vec<i64>>,
    ) -> Result<Self> {
        let cols: usize = source.iter().map(Vec::len).sum();
        let rows: usize = target.iter().map(Vec::len).sum();
        if source.iter().chain(&target).any(Vec::is_empty) {
            return Err(Error::InvalidArgument("empty block".into()));
        }
        if matrix.len() != rows || matrix.iter().any(|r| r.len() != cols) {
            return Err(Error::InvalidArgument(format!(
                "matrix must be {rows} x {cols}"
            )));
        }
        Ok(LatticeMap {
            source,
            target,
            matrix,
        })
    }

    /// A map between single spaces.
    pub fn single(source: Vec<String>, target: Vec<String>, matrix: Vec<Vec<i64>>) -> Result<Self> {
        LatticeMap::new(vec![source], vec![target], matrix)
    }

    pub fn identity(labels: &[String]) -> Self {
        let n = labels.len();
        let matrix = (0..n)
            .map(|i| (0..n).map(|j| (i == j) as i64).collect())
            .collect();
        LatticeMap {
            source: vec![labels.to_vec()],
            target: vec![labels.to_vec()],
            matrix,
        }
    }

    /// `c[t][s]` with A·𝟙_{source block s} = c[t][s]·𝟙 on target block t.
    pub fn ones_multipliers(&self) -> Result<Vec<Vec<i64>>> {
        let (so, to) = (offsets(&self.source), offsets(&self.target));
        let mut out = vec![vec![0; self.source.len()]; self.target.len()];
        for s in 0..self.source.len() {
            for t in 0..self.target.len() {
                let sums: Vec<i64> = (to[t]..to[t + 1])
                    .map(|r| self.matrix[r][so[s]..so[s + 1]].iter().sum())
                    .collect();
                if sums.iter().any(|&x| x != sums[0]) {
                    return Err(Error::NotWellDefined(format!(
                        "the ones vector of source block {s} maps to {sums:?} on target block {t}"
                    )));
                }
                out[t][s] = sums[0];
            }
        }
        Ok(out)
    }

    /// The constant c with A𝟙 = c𝟙, for maps between single spaces.
    pub fn ones_multiplier(&self) -> Option<i64> {
        match self.ones_multipliers() {
            Ok(c) if c.len() == 1 && c[0].len() == 1 => Some(c[0][0]),
            _ => None,
        }
    }

    pub fn is_well_defined(&self) -> bool {
        self.ones_multipliers().is_ok()
    }

    /// Matrix of the induced map in the quotient bases {e_i : i not first in its block}.
    pub fn quotient_matrix(&self) -> Result<Vec<Vec<i64>>> {
        self.ones_multipliers()?;
        let (so, to) = (offsets(&self.source), offsets(&self.target));
        let cols: Vec<usize> = (0..self.source.len())
            .flat_map(|s| so[s] + 1..so[s + 1])
            .collect();
        let mut rows = Vec::new();
        for t in 0..self.target.len() {
            for r in to[t] + 1..to[t + 1] {
                rows.push(
                    cols.iter()
                        .map(|&c| self.matrix[r][c] - self.matrix[to[t]][c])
                        .collect(),
                );
            }
        }
        Ok(rows)
    }

    /// The quotient map is square with determinant ±1.
    pub fn is_unimodular(&self) -> bool {
        match self.quotient_matrix() {
            Ok(q) if q.iter().all(|r| r.len() == q.len()) => {
                linalg::determinant(&q).abs().is_one()
            }
            _ => false,
        }
    }

    /// Image of a point given per source block.
    pub fn apply(&self, x: &[QuotientVector]) -> Result<Vec<QuotientVector>> {
        self.ones_multipliers()?;
        if x.len() != self.source.len()
            || x.iter().zip(&self.source).any(|(v, b)| v.len() != b.len())
        {
            return Err(Error::InvalidArgument("point does not match the source blocks".into()));
        }
        let lift: Vec<i64> = x.iter().flat_map(|v| v.coords().iter().copied()).collect();
        let image = linalg::mat_vec(&self.matrix, &lift);
        let to = offsets(&self.target);
        Ok((0..self.target.len())
            .map(|t| QuotientVector::new(image[to[t]..to[t + 1]].to_vec()))
            .collect())
    }

    pub fn apply_one(&self, x: &QuotientVector) -> Result<QuotientVector> {
        let mut out = self.apply(std::slice::from_ref(x))?;
        if out.len() != 1 {
            return Err(Error::InvalidArgument("map has a product target".into()));
        }
        Ok(out.remove(0))
    }

    /// A lift of the inverse quotient map; fails unless the quotient map is unimodular.
    pub fn inverse(&self) -> Result<LatticeMap> {
        let q = self.quotient_matrix()?;
        if q.iter().any(|r| r.len() != q.len()) {
            return Err(Error::NotUnimodular("non-square quotient map".into()));
        }
        let det = linalg::determinant(&q);
        if !det.abs().is_one() {
            return Err(Error::NotUnimodular(det.to_string()));
        }
        let inv = linalg::inverse(&linalg::to_rational(&q))
            .ok_or_else(|| Error::NotUnimodular("0".into()))?;
        let inv: Vec<Vec<i64>> = inv
            .iter()
            .map(|r| {
                r.iter()
                    .map(|x| x.to_integer().to_i64().expect("unimodular inverse is small"))
                    .collect()
            })
            .collect();
        // the quotient coordinates of the new source are those of the old target
        let (so, to) = (offsets(&self.target), offsets(&self.source));
        let rows_total = *to.last().unwrap();
        let cols_total = *so.last().unwrap();
        let mut m = vec![vec![0i64; cols_total]; rows_total];
        let new_cols: Vec<usize> = (0..self.target.len())
            .flat_map(|s| so[s] + 1..so[s + 1])
            .collect();
        let new_rows: Vec<usize> = (0..self.source.len())
            .flat_map(|t| to[t] + 1..to[t + 1])
            .collect();
        for (i, &r) in new_rows.iter().enumerate() {
            for (j, &c) in new_cols.iter().enumerate() {
                m[r][c] = inv[i][j];
            }
        }
        // e_first of each block is minus the sum of the others modulo 𝟙
        for s in 0..self.target.len() {
            let first = so[s];
            for row in m.iter_mut() {
                let rest: i64 = row[first + 1..so[s + 1]].iter().sum();
                row[first] = -rest;
            }
        }
        LatticeMap::new(self.target.clone(), self.source.clone(), m)
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &LatticeMap) -> Result<LatticeMap> {
        if other.target != self.source {
            return Err(Error::InvalidArgument("maps do not compose".into()));
        }
        LatticeMap::new(
            other.source.clone(),
            self.target.clone(),
            linalg::mat_mul(&self.matrix, &other.matrix),
        )
    }

    /// The induced quotient map squares to the identity.
    pub fn is_involution(&self) -> Result<bool> {
        let q = self.quotient_matrix()?;
        let sq = linalg::mat_mul(&q, &q);
        Ok(sq
            .iter()
            .enumerate()
            .all(|(i, r)| r.iter().enumerate().all(|(j, &x)| x == (i == j) as i64)))
    }

    pub fn to_json(&self) -> String {
        let file = MapFile {
            source: self.source.clone(),
            target: self.target.clone(),
            matrix: self.matrix.clone(),
            ones_multiplier: self.ones_multipliers().ok(),
        };
        serde_json::to_string_pretty(&file).expect("maps always serialize")
    }

    pub fn from_json(s: &str) -> Result<Self> {
        let file: MapFile = serde_json::from_str(s)?;
        LatticeMap::new(file.source, file.target, file.matrix)
    }

    /// Permutation matrix of a matroid isomorphism `f: M1 → M2`.
    pub fn from_matroid_iso(m1: &Matroid, m2: &Matroid, f: &[usize]) -> Result<LatticeMap> {
        m1.check_isomorphism(m2, f)?;
        let n = m1.n();
        let mut matrix = vec![vec![0; n]; n];
        for (i, &j) in f.iter().enumerate() {
            matrix[j][i] = 1;
        }
        LatticeMap::single(m1.labels().to_vec(), m2.labels().to_vec(), matrix)
    }
}

#[derive(Serialize, Deserialize)]
struct MapFile {
    source: Vec<Vec<String>>,
    target: Vec<Vec<String>>,
    matrix: Vec<Vec<i64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    ones_multiplier: Option<Vec<Vec<i64>>>,
}

/// x lies in B(M_1) × ⋯ × B(M_k).
pub fn product_contains(factors: &[&Matroid], x: &[QuotientVector]) -> bool {
    factors.len() == x.len() && factors.iter().zip(x).all(|(m, v)| m.bergman_contains(v))
}

/// Outcome of mapping sampled points of the source support.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct SupportReport {
    pub well_defined: bool,
    pub checked: usize,
    pub failures: Vec<String>,
}

impl SupportReport {
    pub fn passes(&self) -> bool {
        self.well_defined && self.failures.is_empty()
    }
}

/// Maps the rays and `samples` interior points of every maximal cone of the fine fan of
/// `source` and checks that the images lie in the product of the target supports.
pub fn preserves_support(
    map: &LatticeMap,
    source: &Matroid,
    targets: &[&Matroid],
    samples: usize,
    seed: u64,
) -> Result<SupportReport> {
    if map.source.len() != 1 || map.source[0].len() != source.n() {
        return Err(Error::InvalidArgument("map source is not the matroid's space".into()));
    }
    if map.target.len() != targets.len()
        || map.target.iter().zip(targets).any(|(b, m)| b.len() != m.n())
    {
        return Err(Error::InvalidArgument("map target does not match the factors".into()));
    }
    let mut report = SupportReport {
        well_defined: map.is_well_defined(),
        ..Default::default()
    };
    if !report.well_defined {
        report
            .failures
            .push(map.ones_multipliers().unwrap_err().to_string());
        return Ok(report);
    }
    let fan = source.fine_fan()?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let check = |x: &QuotientVector, what: &str, report: &mut SupportReport| -> Result<()> {
        report.checked += 1;
        let y = map.apply(std::slice::from_ref(x))?;
        if !product_contains(targets, &y) {
            report.failures.push(format!("{what}: {x:?} -> {y:?}"));
        }
        Ok(())
    };
    for (k, ray) in fan.rays().iter().enumerate() {
        check(&ray.vector, &format!("ray {k}"), &mut report)?;
    }
    for cone in fan.cones_of_dim(fan.dim()) {
        for _ in 0..samples {
            let x = fan.interior_point(cone, &mut rng);
            check(&x, &format!("cone {cone:?}"), &mut report)?;
        }
    }
    Ok(report)
}

/// Result of checking that a map induces an isomorphism of fans.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IsoReport {
    pub unimodular: bool,
    /// Image of each source ray, when every ray maps to a ray.
    pub ray_map: Option<Vec<usize>>,
    pub failures: Vec<String>,
}

impl IsoReport {
    pub fn is_isomorphism(&self) -> bool {
        self.unimodular && self.ray_map.is_some() && self.failures.is_empty()
    }
}

fn ray_images(map: &LatticeMap, from: &Fan, to: &Fan, failures: &mut Vec<String>) -> Option<Vec<usize>> {
    let mut images = Vec::with_capacity(from.rays().len());
    for (k, ray) in from.rays().iter().enumerate() {
        let img = match map.apply_one(&ray.vector) {
            Ok(v) => v,
            Err(e) => {
                failures.push(e.to_string());
                return None;
            }
        };
        match to.ray_index(&img) {
            Some(j) => images.push(j),
            None => {
                failures.push(format!("ray {k} {:?} maps to {img:?}, not a ray", ray.vector));
                return None;
            }
        }
    }
    let distinct: HashSet<usize> = images.iter().copied().collect();
    if distinct.len() != images.len() || images.len() != to.rays().len() {
        failures.push("ray map is not a bijection".into());
        return None;
    }
    Some(images)
}

fn cones_map(images: &[usize], from: &Fan, to: &Fan, failures: &mut Vec<String>) {
    for k in 0..=from.dim() {
        if from.cones_of_dim(k).len() != to.cones_of_dim(k).len() {
            failures.push(format!("different numbers of {k}-cones"));
        }
    }
    for cone in from.maximal_cones() {
        let mut img: Vec<usize> = cone.iter().map(|&r| images[r]).collect();
        img.sort_unstable();
        if !to.contains_cone(&img) {
            failures.push(format!("cone {cone:?} maps to {img:?}, not a cone"));
        }
    }
}

/// Checks that `map` is unimodular, sends rays of `fan1` bijectively to rays of `fan2`
/// and cones to cones, and that its inverse does the same in the other direction.
pub fn verify_fan_isomorphism(map: &LatticeMap, fan1: &Fan, fan2: &Fan) -> IsoReport {
    let mut failures = Vec::new();
    let unimodular = map.is_unimodular();
    if !unimodular {
        failures.push("quotient map is not unimodular".into());
        return IsoReport {
            unimodular,
            ray_map: None,
            failures,
        };
    }
    let forward = ray_images(map, fan1, fan2, &mut failures);
    if let Some(images) = &forward {
        cones_map(images, fan1, fan2, &mut failures);
    }
    match map.inverse() {
        Ok(inv) => {
            let mut back_failures = Vec::new();
            if let Some(back) = ray_images(&inv, fan2, fan1, &mut back_failures) {
                cones_map(&back, fan2, fan1, &mut back_failures);
            }
            failures.extend(back_failures.into_iter().map(|f| format!("inverse: {f}")));
        }
        Err(e) => failures.push(e.to_string()),
    }
    IsoReport {
        unimodular,
        ray_map: forward,
        failures,
    }
}

/// The permutation of rays induced by an automorphism of `fan`.
pub fn ray_permutation(map: &LatticeMap, fan: &Fan) -> Result<Vec<usize>> {
    let report = verify_fan_isomorphism(map, fan, fan);
    match report.ray_map {
        Some(p) if report.failures.is_empty() => Ok(p),
        _ => Err(Error::NotAFanIsomorphism(report.failures)),
    }
}

/// Order of the group generated by permutations of `0..n`, by breadth-first closure.
pub fn group_closure_order(generators: &[Vec<usize>]) -> Result<usize> {
    let Some(n) = generators.first().map(Vec::len) else {
        return Ok(1);
    };
    for g in generators {
        let seen: HashSet<usize> = g.iter().copied().collect();
        if g.len() != n || seen.len() != n || g.iter().any(|&x| x >= n) {
            return Err(Error::InvalidArgument("generator is not a permutation".into()));
        }
    }
    let identity: Vec<usize> = (0..n).collect();
    let mut seen: HashMap<Vec<usize>, ()> = HashMap::new();
    seen.insert(identity.clone(), ());
    let mut queue = VecDeque::from([identity]);
    while let Some(p) = queue.pop_front() {
        for g in generators {
            let q: Vec<usize> = p.iter().map(|&x| g[x]).collect();
            if seen.insert(q.clone(), ()).is_none() {
                queue.push_back(q);
            }
        }
    }
    Ok(seen.len())
}

/// Determinant of the quotient map, for reports.
pub fn quotient_determinant(map: &LatticeMap) -> Result<BigInt> {
    let q = map.quotient_matrix()?;
    if q.iter().any(|r| r.len() != q.len()) {
        return Err(Error::InvalidArgument("non-square quotient map".into()));
    }
    Ok(linalg::determinant(&q))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn k4() -> Matroid {
        Matroid::complete_graph(4).unwrap()
    }

    #[test]
    fn automorphisms_verify_on_both_structures() {
        let m = k4();
        let fine = m.fine_fan().unwrap();
        let nested = m.nested_fan().unwrap();
        let autos = m.automorphisms();
        assert_eq!(autos.len(), 24);
        for f in &autos {
            let map = LatticeMap::from_matroid_iso(&m, &m, f).unwrap();
            assert_eq!(map.ones_multiplier(), Some(1));
            assert!(verify_fan_isomorphism(&map, &fine, &fine).is_isomorphism());
            assert!(verify_fan_isomorphism(&map, &nested, &nested).is_isomorphism());
        }
        let perms: Vec<Vec<usize>> = autos
            .iter()
            .map(|f| ray_permutation(&LatticeMap::from_matroid_iso(&m, &m, f).unwrap(), &nested).unwrap())
            .collect();
        assert_eq!(group_closure_order(&perms).unwrap(), 24);
    }

    #[test]
    fn non_isomorphism_rejected_with_witness() {
        let m = k4();
        let mut f: Vec<usize> = (0..6).collect();
        f.swap(0, 1);
        let err = LatticeMap::from_matroid_iso(&m, &m, &f).unwrap_err();
        assert!(matches!(err, Error::NotAnIsomorphism(w) if !w.is_empty()));
    }

    #[test]
    fn inverse_and_composition() {
        let m = k4();
        let f = &m.automorphisms()[5];
        let map = LatticeMap::from_matroid_iso(&m, &m, f).unwrap();
        let inv = map.inverse().unwrap();
        let id = inv.compose(&map).unwrap();
        let x = QuotientVector::new(vec![3, -1, 4, 1, -5, 9]);
        assert_eq!(id.apply_one(&x).unwrap(), x);
        assert!(LatticeMap::identity(m.labels()).is_involution().unwrap());
    }

    #[test]
    fn ill_defined_map() {
        let labels: Vec<String> = ["a", "b"].iter().map(|s| s.to_string()).collect();
        let map = LatticeMap::single(labels.clone(), labels, vec![vec![1, 0], vec![0, 2]]).unwrap();
        assert!(!map.is_well_defined());
        assert!(matches!(map.quotient_matrix(), Err(Error::NotWellDefined(_))));
    }

    #[test]
    fn closure_orders() {
        let cycle = vec![1, 2, 3, 0];
        let swap = vec![1, 0, 2, 3];
        assert_eq!(group_closure_order(std::slice::from_ref(&cycle)).unwrap(), 4);
        assert_eq!(group_closure_order(&[cycle, swap]).unwrap(), 24);
    }
}
