use super::QuotientVector;
use crate::bitset::ElementSet;
use crate::error::{Error, Result};
use crate::matroid::Matroid;

/// The matroid whose Bergman fan is the star of B(M) at a flag cone: the direct sum of
/// the minors M|F_{i+1} / F_i along ∅ = F_0 ⊊ F_1 ⊊ … ⊊ F_{k+1} = E.
#[derive(Clone, Debug)]
pub struct LocalMatroid {
    /// F_1, …, F_k.
    pub flag: Vec<ElementSet>,
    /// M|F_{i+1} / F_i for i = 0..=k.
    pub parts: Vec<Matroid>,
    pub sum: Matroid,
    /// `order[j]` is the element of E sitting at position `j` of `sum`.
    pub order: Vec<usize>,
}

impl LocalMatroid {
    /// Reorders a vector on E into the ground order of `sum`.
    pub fn to_local(&self, x: &QuotientVector) -> QuotientVector {
        QuotientVector::new(self.order.iter().map(|&i| x.coords()[i]).collect())
    }

    /// Membership in the star, i.e. in B(sum).
    pub fn contains(&self, x: &QuotientVector) -> bool {
        self.sum.bergman_contains(&self.to_local(x))
    }

    pub fn lineality_dim(&self) -> usize {
        self.sum.lineality_dim()
    }

    /// A point `N · Σ v_{F_i} + x` with `N` large enough that it lies in B(M) exactly
    /// when `x` lies in the star.
    pub fn push_off(&self, x: &QuotientVector) -> QuotientVector {
        let n = x.len();
        let big = 4 * x.coords().iter().map(|c| c.abs()).max().unwrap_or(0) + 1;
        self.flag.iter().fold(x.clone(), |acc, &f| {
            acc.add(&QuotientVector::indicator(n, f).scale(big))
        })
    }
}

impl Matroid {
    /// Star of B(M) at the cone of a flag of proper nonempty flats, given in any order.
    pub fn star(&self, flag: &[ElementSet]) -> Result<LocalMatroid> {
        self.require_loop_free()?;
        let mut flag = flag.to_vec();
        flag.sort_by_key(|f| f.len());
        flag.dedup();
        let proper = |f: ElementSet| !f.is_empty() && f != self.full() && self.is_flat(f);
        if !flag.iter().all(|&f| proper(f)) || flag.windows(2).any(|w| !w[0].is_subset(w[1])) {
            return Err(Error::NotAChain);
        }
        let mut bounds = vec![ElementSet::empty()];
        bounds.extend(flag.iter().copied());
        bounds.push(self.full());
        let mut parts = Vec::with_capacity(bounds.len() - 1);
        let mut order = Vec::with_capacity(self.n());
        for w in bounds.windows(2) {
            parts.push(self.interval_minor(w[0], w[1])?);
            order.extend((w[1] - w[0]).iter());
        }
        let sum = Matroid::direct_sum_of(&parts)?;
        Ok(LocalMatroid {
            flag,
            parts,
            sum,
            order,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn k4_triangle_star() {
        let k4 = Matroid::complete_graph(4).unwrap();
        let t = k4.ground().set_of(&["12", "13", "23"]).unwrap();
        let local = k4.star(&[t]).unwrap();
        assert_eq!(local.parts.len(), 2);
        assert!(local.parts[0].is_isomorphic(&Matroid::uniform(2, 3).unwrap()));
        let outer = &local.parts[1];
        assert_eq!(outer.full_rank(), 1);
        assert_eq!(outer.n(), 3);
        assert!(outer.is_loop_free());
        assert_eq!(local.sum.full_rank(), k4.full_rank());
        assert_eq!(local.lineality_dim(), 1);
    }

    #[test]
    fn non_chains_rejected() {
        let k4 = Matroid::complete_graph(4).unwrap();
        let a = k4.ground().set_of(&["12"]).unwrap();
        let b = k4.ground().set_of(&["34"]).unwrap();
        assert_eq!(k4.star(&[a, b]).unwrap_err(), Error::NotAChain);
        let not_flat = k4.ground().set_of(&["12", "34", "13"]).unwrap();
        assert_eq!(k4.star(&[not_flat]).unwrap_err(), Error::NotAChain);
        assert_eq!(k4.star(&[k4.full()]).unwrap_err(), Error::NotAChain);
    }

    #[test]
    fn glued_point_star_is_split() {
        let u = Matroid::uniform(2, 3).unwrap();
        let p = Matroid::parallel_connection(&u, &u, "2", "0").unwrap();
        let local = p.star(&[ElementSet::singleton(2)]).unwrap();
        assert!(local.lineality_dim() >= 2);
    }

    fn agree_on(m: &Matroid, flag: &[ElementSet], x: Vec<i64>) {
        let local = m.star(flag).unwrap();
        let x = QuotientVector::new(x);
        assert_eq!(local.contains(&x), m.bergman_contains(&local.push_off(&x)));
    }

    proptest! {
        #[test]
        fn star_matches_nearby_membership_k4(x in proptest::collection::vec(-3i64..=3, 6), pick in 0usize..18) {
            let k4 = Matroid::complete_graph(4).unwrap();
            let chains = k4.flats().maximal_chains();
            let chain = &chains[pick];
            agree_on(&k4, &chain[..1], x.clone());
            agree_on(&k4, &chain[1..], x.clone());
            agree_on(&k4, chain, x);
        }

        #[test]
        fn star_matches_nearby_membership_fano(x in proptest::collection::vec(-2i64..=2, 7), pick in 0usize..21) {
            let fano = Matroid::projective_geometry(2, 2).unwrap();
            let chains = fano.flats().maximal_chains();
            agree_on(&fano, &chains[pick], x.clone());
            agree_on(&fano, &chains[pick][1..], x);
        }
    }
}
