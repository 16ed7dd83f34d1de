//! CSM classes of matroids as Minkowski weights on the fine fan.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::fan::{Cone, Fan, Structure};
use crate::invariants::{wedge_span_dimension, IntPolynomial};
use crate::linalg::RowSpace;
use crate::matroid::Matroid;

/// Integer weights on the `k`-dimensional cones of a fan, aligned by index.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MinkowskiWeight {
    pub k: usize,
    pub cones: Vec<Cone>,
    pub weights: Vec<i64>,
}

impl MinkowskiWeight {
    pub fn weight(&self, cone: &[usize]) -> Option<i64> {
        self.cones
            .binary_search_by(|c| c.as_slice().cmp(cone))
            .ok()
            .map(|i| self.weights[i])
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("weights always serialize")
    }

    pub fn from_json(s: &str) -> Result<Self> {
        Ok(serde_json::from_str(s)?)
    }

    /// For every (k-1)-cone τ: Σ_{σ ⊃ τ} w(σ) v_{σ∖τ} lies in the span of τ. Returns the
    /// cones τ where this fails.
    pub fn balancing_failures(&self, fan: &Fan) -> Vec<Cone> {
        if self.k == 0 {
            return Vec::new();
        }
        let width = fan.ambient_len().saturating_sub(1);
        let mut failures = Vec::new();
        for tau in fan.cones_of_dim(self.k - 1) {
            let mut sum = vec![0i64; width];
            for (sigma, &w) in self.cones.iter().zip(&self.weights) {
                if w == 0 || !tau.iter().all(|r| sigma.binary_search(r).is_ok()) {
                    continue;
                }
                let extra = sigma
                    .iter()
                    .find(|r| tau.binary_search(r).is_err())
                    .expect("σ has one ray more than τ");
                for (s, &x) in sum.iter_mut().zip(fan.ray(*extra).vector.quotient_coords()) {
                    *s += w * x;
                }
            }
            let mut span = RowSpace::new(width);
            for row in fan.generator_rows(tau) {
                span.insert(&row);
            }
            if !span.contains(&sum) {
                failures.push(tau.clone());
            }
        }
        failures
    }

    pub fn is_balanced(&self, fan: &Fan) -> bool {
        self.balancing_failures(fan).is_empty()
    }
}

impl Matroid {
    /// csm_k on the fine fan: the cone of F_1 ⊊ ⋯ ⊊ F_k gets
    /// (-1)^{d-k} ∏_{i=0}^{k} β(M|F_{i+1} / F_i) with F_0 = ∅ and F_{k+1} = E.
    pub fn csm_weights(&self, fan: &Fan, k: usize) -> Result<MinkowskiWeight> {
        let d = self.full_rank().saturating_sub(1);
        if k > d {
            return Err(Error::InvalidArgument(format!("k = {k} exceeds d = {d}")));
        }
        require_fine(fan)?;
        let cones = fan.cones_of_dim(k).to_vec();
        let weights = cones
            .iter()
            .map(|c| self.csm_flag_weight(fan, c))
            .collect::<Result<Vec<_>>>()?;
        Ok(MinkowskiWeight { k, cones, weights })
    }

    fn csm_flag_weight(&self, fan: &Fan, cone: &[usize]) -> Result<i64> {
        let d = self.full_rank() - 1;
        let mut flag: Vec<_> = cone
            .iter()
            .map(|&r| fan.ray(r).flat.expect("fine rays carry flats"))
            .collect();
        flag.sort_by_key(|f| f.len());
        let mut bounds = vec![crate::ElementSet::empty()];
        bounds.extend(flag);
        bounds.push(self.full());
        let mut w = if (d - cone.len()) % 2 == 0 { 1 } else { -1 };
        for pair in bounds.windows(2) {
            w *= self.interval_beta(pair[0], pair[1])?;
        }
        Ok(w)
    }

    /// The same weight read off the support near the cone: the dimensions of
    /// Σ_{σ' ⊇ σ} ⋀^p ⟨σ'⟩ are the unsigned coefficients of the reduced characteristic
    /// polynomial χ̃_σ of the star, and the weight is χ̃_σ / (t - 1)^k at t = 1.
    pub fn csm_weight_from_support(&self, fan: &Fan, cone: &[usize]) -> Result<i64> {
        require_fine(fan)?;
        if !fan.contains_cone(cone) {
            return Err(Error::InvalidArgument(format!("{cone:?} is not a cone")));
        }
        let r = self.full_rank();
        let tops = fan.top_cones_containing(cone);
        let mut coeffs = vec![0i64; r];
        for (p, slot) in coeffs.iter_mut().enumerate() {
            let faces: BTreeSet<Vec<usize>> = tops
                .iter()
                .flat_map(|top| {
                    crate::bitset::subsets_of_size(top.len(), p)
                        .map(|s| s.iter().map(|i| top[i]).collect::<Vec<_>>())
                })
                .collect();
            let dim = wedge_span_dimension(fan, faces.iter().map(Vec::as_slice), p) as i64;
            *slot = if p % 2 == 0 { dim } else { -dim };
        }
        // coeffs[p] multiplies t^{r-1-p}
        coeffs.reverse();
        IntPolynomial::new(coeffs)
            .div_linear_pow(1, cone.len())
            .map(|q| q.eval(1))
    }
}

fn require_fine(fan: &Fan) -> Result<()> {
    if fan.structure() == Structure::Fine {
        Ok(())
    } else {
        Err(Error::InvalidArgument(format!(
            "CSM weights live on the fine structure, got {}",
            fan.structure()
        )))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn k4_ray_weights() {
        let k4 = Matroid::complete_graph(4).unwrap();
        let fan = k4.fine_fan().unwrap();
        let w = k4.csm_weights(&fan, 1).unwrap();
        for (c, &x) in w.cones.iter().zip(&w.weights) {
            let f = fan.ray(c[0]).flat.unwrap();
            let disjoint_pair = f.len() == 2;
            assert_eq!(x, if disjoint_pair { 0 } else { -1 }, "{f:?}");
        }
        assert!(w.is_balanced(&fan));
        let top = k4.csm_weights(&fan, 2).unwrap();
        assert!(top.weights.iter().all(|&x| x == 1));
        assert_eq!(k4.csm_weights(&fan, 0).unwrap().weights, vec![k4.beta().unwrap()]);
    }

    #[test]
    fn routes_agree() {
        for m in [Matroid::complete_graph(4).unwrap(), Matroid::uniform(3, 4).unwrap(), Matroid::uniform(3, 3).unwrap()] {
            let fan = m.fine_fan().unwrap();
            for k in 0..m.full_rank() {
                let w = m.csm_weights(&fan, k).unwrap();
                for (c, &x) in w.cones.iter().zip(&w.weights) {
                    assert_eq!(m.csm_weight_from_support(&fan, c).unwrap(), x, "{c:?}");
                }
            }
        }
    }

    #[test]
    fn corrupted_weight_is_unbalanced() {
        let m = Matroid::uniform(3, 4).unwrap();
        let fan = m.fine_fan().unwrap();
        for k in 1..3 {
            let mut w = m.csm_weights(&fan, k).unwrap();
            assert!(w.is_balanced(&fan));
            w.weights[0] += 1;
            assert!(!w.is_balanced(&fan));
        }
    }

    #[test]
    fn lookup_and_json() {
        let m = Matroid::uniform(2, 3).unwrap();
        let fan = m.fine_fan().unwrap();
        let w = m.csm_weights(&fan, 1).unwrap();
        assert_eq!(w.weight(&[1]), Some(1));
        assert_eq!(MinkowskiWeight::from_json(&w.to_json()).unwrap(), w);
    }
}
