use std::cell::RefCell;
use std::collections::HashMap;

use super::{Cone, Fan, QuotientVector, Ray, Structure};
use crate::bitset::ElementSet;
use crate::error::{Error, Result};
use crate::linalg;
use crate::matroid::Matroid;

impl Matroid {
    fn flat_ray(&self, f: ElementSet) -> Ray {
        Ray {
            vector: QuotientVector::indicator(self.n(), f),
            flat: Some(f),
            rank: Some(self.rank(f)),
        }
    }

    /// Fan structure whose cones are the flags of proper nonempty flats.
    pub fn fine_fan(&self) -> Result<Fan> {
        self.require_loop_free()?;
        let lat = self.flats();
        let flats: Vec<ElementSet> = lat.proper().collect();
        let index: HashMap<ElementSet, usize> =
            flats.iter().enumerate().map(|(k, &f)| (f, k)).collect();
        let rays = flats.iter().map(|&f| self.flat_ray(f)).collect();
        let cones = lat
            .maximal_chains()
            .into_iter()
            .map(|chain| chain.iter().map(|f| index[f]).collect::<Cone>());
        Fan::from_cones(self.labels().to_vec(), rays, cones, Structure::Fine)
    }

    /// Proper nonempty flats `F` with `M|F` connected, by rank and then by mask.
    pub fn connected_flats(&self) -> Vec<ElementSet> {
        self.flats()
            .proper()
            .filter(|&f| self.is_minor_connected(f, ElementSet::empty()))
            .collect()
    }

    /// Every antichain of at least two members has a disconnected join.
    pub fn is_nested(&self, collection: &[ElementSet]) -> bool {
        let k = collection.len();
        if k > 20 {
            return false;
        }
        ElementSet::full(k).subsets().all(|pick| {
            let members: Vec<ElementSet> = pick.iter().map(|i| collection[i]).collect();
            if members.len() < 2 || !is_antichain(&members) {
                return true;
            }
            let join = self.closure(members.iter().fold(ElementSet::empty(), |a, &b| a | b));
            !self.is_minor_connected(join, ElementSet::empty())
        })
    }

    /// Minimal nested set structure: rays are the connected flats, cones the nested
    /// collections.
    pub fn nested_fan(&self) -> Result<Fan> {
        self.require_loop_free()?;
        if !self.is_connected() {
            return Err(Error::NotConnected);
        }
        let flats = self.connected_flats();
        let connected: RefCell<HashMap<ElementSet, bool>> = RefCell::new(HashMap::new());
        let join_connected = |s: ElementSet| -> bool {
            let join = self.closure(s);
            *connected
                .borrow_mut()
                .entry(join)
                .or_insert_with(|| self.is_minor_connected(join, ElementSet::empty()))
        };
        // can flat `f` join the nested collection `current`?
        let compatible = |current: &[usize], f: ElementSet| -> bool {
            let incomparable: Vec<ElementSet> = current
                .iter()
                .map(|&k| flats[k])
                .filter(|g| !g.comparable(f))
                .collect();
            ElementSet::full(incomparable.len()).subsets().all(|pick| {
                let members: Vec<ElementSet> = pick.iter().map(|i| incomparable[i]).collect();
                if members.is_empty() || !is_antichain(&members) {
                    return true;
                }
                !join_connected(members.iter().fold(f, |a, &b| a | b))
            })
        };
        let mut cones: Vec<Cone> = Vec::new();
        let mut current: Vec<usize> = Vec::new();
        fn extend(
            start: usize,
            flats: &[ElementSet],
            current: &mut Vec<usize>,
            cones: &mut Vec<Cone>,
            compatible: &dyn Fn(&[usize], ElementSet) -> bool,
        ) {
            let mut grew = false;
            for k in start..flats.len() {
                if compatible(current, flats[k]) {
                    grew = true;
                    current.push(k);
                    extend(k + 1, flats, current, cones, compatible);
                    current.pop();
                }
            }
            if !grew {
                cones.push(current.clone());
            }
        }
        extend(0, &flats, &mut current, &mut cones, &compatible);
        let rays = flats.iter().map(|&f| self.flat_ray(f)).collect();
        Fan::from_cones(self.labels().to_vec(), rays, cones, Structure::Nested)
    }

    /// For all connected flats `G` and flats `F ⊊ G`, the minor `M|G / F` is connected.
    pub fn coarse_criterion_holds(&self) -> bool {
        let lat = self.flats();
        let mut tops = self.connected_flats();
        if self.is_connected() {
            tops.push(self.full());
        }
        tops.iter().all(|&g| {
            lat.interval(lat.of_rank(0)[0], g)
                .into_iter()
                .filter(|&f| f != g)
                .all(|f| self.is_minor_connected(g - f, f))
        })
    }

    /// Coarse fan structure: the nested fan when the connectivity criterion holds, the
    /// pulled-back product of the factors' coarse fans for a non-trivial parallel
    /// connection, and an error otherwise.
    pub fn coarse_fan(&self) -> Result<Fan> {
        if !self.is_simple() {
            return Err(Error::NotSimple);
        }
        if !self.is_connected() {
            return Err(Error::NotConnected);
        }
        if self.coarse_criterion_holds() {
            return Ok(self.nested_fan()?.with_structure(Structure::Coarse));
        }
        for p in 0..self.n() {
            if let Some((a, b)) = self.split_along(p)? {
                return self.product_coarse_fan(p, a, b);
            }
        }
        Err(Error::CoarseUnsupported(
            "the connectivity criterion fails and the matroid is not a non-trivial parallel connection"
                .into(),
        ))
    }

    fn product_coarse_fan(&self, p: usize, a: ElementSet, b: ElementSet) -> Result<Fan> {
        let mut rays = Vec::new();
        let mut factor_cones = Vec::new();
        for part in [a, b] {
            let fan = self.restrict(part)?.coarse_fan()?;
            let positions: Vec<usize> = part.iter().collect();
            let at_p = positions
                .iter()
                .position(|&k| k == p)
                .expect("both parts contain the glued element");
            let offset = rays.len();
            for r in fan.rays() {
                // w ↦ Σ_{k ≠ p} (w_k - w_p) e_k
                let w = r.vector.coords();
                let mut v = vec![0i64; self.n()];
                for (j, &k) in positions.iter().enumerate() {
                    if j != at_p {
                        v[k] = w[j] - w[at_p];
                    }
                }
                rays.push(Ray::through(self, &QuotientVector::new(v)));
            }
            factor_cones.push(
                fan.cones_of_dim(fan.dim())
                    .iter()
                    .map(|c| c.iter().map(|&r| r + offset).collect::<Cone>())
                    .collect::<Vec<_>>(),
            );
        }
        let mut cones = Vec::new();
        for c1 in &factor_cones[0] {
            for c2 in &factor_cones[1] {
                cones.push(c1.iter().chain(c2).copied().collect::<Cone>());
            }
        }
        Fan::from_cones(self.labels().to_vec(), rays, cones, Structure::Product)
    }

    /// Dimension of the lineality space of B(M): one less than the number of components.
    pub fn lineality_dim(&self) -> usize {
        self.components().len().saturating_sub(1)
    }

    /// Dimension of the span of the v_F over proper nonempty flats whose complement is
    /// also a flat, i.e. over the lines through B(M) in both directions spanned by
    /// indicators.
    pub fn separator_span_dim(&self) -> usize {
        let rows: Vec<Vec<i64>> = self
            .flats()
            .proper()
            .filter(|&f| self.is_flat(self.full() - f))
            .map(|f| QuotientVector::indicator(self.n(), f).quotient_coords().to_vec())
            .collect();
        linalg::rank(&rows)
    }
}

fn is_antichain(sets: &[ElementSet]) -> bool {
    sets.iter()
        .enumerate()
        .all(|(i, a)| sets[i + 1..].iter().all(|b| !a.comparable(*b)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::BTreeMap;

    fn profile(f: &Fan) -> BTreeMap<Option<usize>, usize> {
        f.ray_rank_profile()
    }

    #[test]
    fn k4_fine_and_nested_counts() {
        let k4 = Matroid::complete_graph(4).unwrap();
        let fine = k4.fine_fan().unwrap();
        assert_eq!(fine.rays().len(), 13);
        assert_eq!(fine.cones_of_dim(2).len(), 18);
        assert_eq!(profile(&fine), BTreeMap::from([(Some(1), 6), (Some(2), 7)]));
        let nested = k4.nested_fan().unwrap();
        assert_eq!(nested.rays().len(), 10);
        assert_eq!(nested.cones_of_dim(2).len(), 15);
        assert_eq!(profile(&nested), BTreeMap::from([(Some(1), 6), (Some(2), 4)]));
        assert!(fine.is_unimodular());
        assert!(nested.is_unimodular());
    }

    #[test]
    fn small_fans() {
        let u23 = Matroid::uniform(2, 3).unwrap();
        let fine = u23.fine_fan().unwrap();
        assert_eq!((fine.rays().len(), fine.cones_of_dim(1).len()), (3, 3));
        let nested = u23.nested_fan().unwrap();
        assert_eq!(nested.cones_of_dim(1), fine.cones_of_dim(1));
        let u33 = Matroid::uniform(3, 3).unwrap();
        assert_eq!(
            profile(&u33.fine_fan().unwrap()),
            BTreeMap::from([(Some(1), 3), (Some(2), 3)])
        );
        assert!(matches!(u33.nested_fan(), Err(Error::NotConnected)));
    }

    #[test]
    fn fano_nested_equals_fine() {
        let fano = Matroid::projective_geometry(2, 2).unwrap();
        let fine = fano.fine_fan().unwrap();
        let nested = fano.nested_fan().unwrap();
        assert_eq!(fine.rays().len(), 14);
        assert_eq!(fine.cones_of_dim(2).len(), 21);
        assert_eq!(fine.rays(), nested.rays());
        assert_eq!(fine.cones_of_dim(2), nested.cones_of_dim(2));
    }

    #[test]
    fn k5_nested_is_m06() {
        let k5 = Matroid::complete_graph(5).unwrap();
        let nested = k5.nested_fan().unwrap();
        assert_eq!(nested.rays().len(), 25);
        assert_eq!(nested.cones_of_dim(3).len(), 105);
        assert!(nested.is_pure());
    }

    #[test]
    fn nestedness_matches_enumeration() {
        let k4 = Matroid::complete_graph(4).unwrap();
        let nested = k4.nested_fan().unwrap();
        let flats: Vec<ElementSet> = nested.rays().iter().map(|r| r.flat.unwrap()).collect();
        for a in 0..flats.len() {
            for b in a + 1..flats.len() {
                assert_eq!(
                    nested.contains_cone(&[a, b]),
                    k4.is_nested(&[flats[a], flats[b]])
                );
            }
        }
    }

    #[test]
    fn coarse_policies() {
        let k4 = Matroid::complete_graph(4).unwrap();
        assert!(k4.coarse_criterion_holds());
        let coarse = k4.coarse_fan().unwrap();
        assert_eq!(coarse.structure(), Structure::Coarse);
        assert_eq!(coarse.cones_of_dim(2), k4.nested_fan().unwrap().cones_of_dim(2));

        let u = Matroid::uniform(2, 3).unwrap();
        let p = Matroid::parallel_connection(&u, &u, "2", "0").unwrap();
        assert!(!p.coarse_criterion_holds());
        let c = p.coarse_fan().unwrap();
        assert_eq!(c.structure(), Structure::Product);
        assert_eq!(c.rays().len(), 6);
        assert_eq!(c.cones_of_dim(2).len(), 9);
        let vp = QuotientVector::indicator(5, ElementSet::singleton(2));
        assert!(c.ray_index(&vp).is_none());
        assert!(c.rays().iter().all(|r| r.flat.is_some()));
        assert!(c.is_unimodular());

        let two = Matroid::graphic(2, &[(0, 1), (0, 1)]).unwrap();
        assert!(matches!(two.coarse_fan(), Err(Error::NotSimple)));
    }

    #[test]
    fn lineality() {
        for n in 2..=4 {
            let u = Matroid::uniform(n, n).unwrap();
            assert_eq!(u.lineality_dim(), n - 1);
            assert_eq!(u.separator_span_dim(), n - 1);
        }
        let k4 = Matroid::complete_graph(4).unwrap();
        assert_eq!(k4.lineality_dim(), 0);
        assert_eq!(k4.separator_span_dim(), 0);
    }
}
