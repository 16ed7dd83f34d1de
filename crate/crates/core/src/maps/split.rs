use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::{product_contains, LatticeMap};
use crate::error::{Error, Result};
use crate::fan::QuotientVector;
use crate::matroid::Matroid;

/// Counts of sampled points whose membership was transported correctly by the splitting
/// map and its inverse.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct SplitSampleReport {
    pub forward_on: usize,
    pub forward_off: usize,
    pub backward_on: usize,
    pub backward_off: usize,
    pub failures: Vec<String>,
}

impl SplitSampleReport {
    pub fn passes(&self, at_least: usize) -> bool {
        self.failures.is_empty()
            && [self.forward_on, self.forward_off, self.backward_on, self.backward_off]
                .iter()
                .all(|&c| c >= at_least)
    }
}

impl Matroid {
    /// v_i ↦ w_i for i ≠ p and v_p ↦ w_{p_{E_1}} + w_{p_{E_2}}, into the product of the
    /// spaces of the two glued matroids.
    pub fn parallel_split_map(&self) -> Result<LatticeMap> {
        let g = self.gluing().ok_or(Error::NoGluing)?;
        let (n1, n2) = (g.left.n(), g.right.n());
        let mut matrix = vec![vec![0i64; self.n()]; n1 + n2];
        for (a, &i) in g.left_map.iter().enumerate() {
            matrix[a][i] = 1;
        }
        for (b, &i) in g.right_map.iter().enumerate() {
            matrix[n1 + b][i] = 1;
        }
        LatticeMap::new(
            vec![self.labels().to_vec()],
            vec![g.left.labels().to_vec(), g.right.labels().to_vec()],
            matrix,
        )
    }

    /// w_i ↦ v_i for i ≠ p and w_{p_{E_k}} ↦ -v_{E_k ∖ p}.
    pub fn parallel_split_inverse(&self) -> Result<LatticeMap> {
        let g = self.gluing().ok_or(Error::NoGluing)?;
        let n1 = g.left.n();
        let mut matrix = vec![vec![0i64; n1 + g.right.n()]; self.n()];
        for (offset, map) in [(0, &g.left_map), (n1, &g.right_map)] {
            let glued = map
                .iter()
                .position(|&i| i == g.point)
                .expect("both sides contain the glued element");
            for (a, &i) in map.iter().enumerate() {
                if a == glued {
                    continue;
                }
                matrix[i][offset + a] = 1;
                matrix[i][offset + glued] = -1;
            }
        }
        LatticeMap::new(
            vec![g.left.labels().to_vec(), g.right.labels().to_vec()],
            vec![self.labels().to_vec()],
            matrix,
        )
    }

    /// Transports `samples` points on and off the support in each direction through the
    /// splitting map and its inverse, comparing membership on both sides.
    pub fn verify_parallel_split(&self, samples: usize, seed: u64) -> Result<SplitSampleReport> {
        let g = self.gluing().ok_or(Error::NoGluing)?;
        let forward = self.parallel_split_map()?;
        let backward = self.parallel_split_inverse()?;
        let factors = [&g.left, &g.right];
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut report = SplitSampleReport::default();

        let fan = self.fine_fan()?;
        let tops = fan.cones_of_dim(fan.dim()).to_vec();
        for _ in 0..samples {
            let cone = &tops[rng.gen_range(0..tops.len())];
            let x = fan.interior_point(cone, &mut rng);
            let y = forward.apply(std::slice::from_ref(&x))?;
            if product_contains(&factors, &y) {
                report.forward_on += 1;
            } else {
                report.failures.push(format!("support point {x:?} maps to {y:?}"));
            }
        }
        let mut off = 0;
        while off < samples {
            let x = random_point(self.n(), &mut rng);
            if self.bergman_contains(&x) {
                continue;
            }
            off += 1;
            let y = forward.apply(std::slice::from_ref(&x))?;
            if product_contains(&factors, &y) {
                report.failures.push(format!("off-support point {x:?} maps to {y:?}"));
            } else {
                report.forward_off += 1;
            }
        }

        let fans = [g.left.fine_fan()?, g.right.fine_fan()?];
        for _ in 0..samples {
            let y: Vec<QuotientVector> = fans
                .iter()
                .map(|f| {
                    let tops = f.cones_of_dim(f.dim());
                    let cone = &tops[rng.gen_range(0..tops.len())];
                    f.interior_point(cone, &mut rng)
                })
                .collect();
            let x = backward.apply(&y)?.remove(0);
            if self.bergman_contains(&x) {
                report.backward_on += 1;
            } else {
                report.failures.push(format!("product point {y:?} maps to {x:?}"));
            }
        }
        let mut off = 0;
        while off < samples {
            let y: Vec<QuotientVector> = factors
                .iter()
                .map(|m| random_point(m.n(), &mut rng))
                .collect();
            if product_contains(&factors, &y) {
                continue;
            }
            off += 1;
            let x = backward.apply(&y)?.remove(0);
            if self.bergman_contains(&x) {
                report.failures.push(format!("off-product point {y:?} maps to {x:?}"));
            } else {
                report.backward_off += 1;
            }
        }
        Ok(report)
    }
}

fn random_point(n: usize, rng: &mut impl Rng) -> QuotientVector {
    QuotientVector::new((0..n).map(|_| rng.gen_range(-6..=6)).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bitset::ElementSet;

    fn glued() -> Matroid {
        let u = Matroid::uniform(2, 3).unwrap();
        Matroid::parallel_connection(&u, &u, "2", "0").unwrap()
    }

    #[test]
    fn split_matrices() {
        let m = glued();
        let f = m.parallel_split_map().unwrap();
        let vp = QuotientVector::indicator(5, ElementSet::singleton(2));
        let img = f.apply(std::slice::from_ref(&vp)).unwrap();
        assert_eq!(img[0], QuotientVector::indicator(3, ElementSet::singleton(2)));
        assert_eq!(img[1], QuotientVector::indicator(3, ElementSet::singleton(0)));
        let inv = m.parallel_split_inverse().unwrap();
        assert_eq!(inv.apply(&img).unwrap()[0], vp);
        assert!(f.is_unimodular());
        assert_eq!(f.inverse().unwrap().quotient_matrix().unwrap(), inv.quotient_matrix().unwrap());
    }

    #[test]
    fn split_transports_membership() {
        let report = glued().verify_parallel_split(60, 7).unwrap();
        assert!(report.passes(50), "{report:?}");
    }

    #[test]
    fn requires_gluing_data() {
        let m = Matroid::complete_graph(4).unwrap();
        assert!(matches!(m.parallel_split_map(), Err(Error::NoGluing)));
    }
}
