use std::collections::HashMap;

use super::Matroid;
use crate::bitset::{subsets_of_size, ElementSet};

/// Flats grouped by rank, with the covering relation.
#[derive(Clone, Debug)]
pub struct FlatsLattice {
    by_rank: Vec<Vec<ElementSet>>,
    position: HashMap<ElementSet, (usize, usize)>,
    /// `covers[r][k]`: positions in rank `r + 1` of the flats covering `by_rank[r][k]`.
    covers: Vec<Vec<Vec<usize>>>,
}

impl FlatsLattice {
    fn build(m: &Matroid) -> FlatsLattice {
        let bottom = m.closure(ElementSet::empty());
        let mut by_rank = vec![vec![bottom]];
        let mut covers = Vec::new();
        for r in 0..m.full_rank() {
            let mut next: Vec<ElementSet> = Vec::new();
            let mut index: HashMap<ElementSet, usize> = HashMap::new();
            let mut level_covers = Vec::with_capacity(by_rank[r].len());
            for &f in &by_rank[r] {
                let mut up = Vec::new();
                let mut rest = m.full() - f;
                while let Some(i) = rest.min_element() {
                    let g = m.closure(f.with(i));
                    rest = rest - g;
                    let k = *index.entry(g).or_insert_with(|| {
                        next.push(g);
                        next.len() - 1
                    });
                    up.push(k);
                }
                level_covers.push(up);
            }
            // canonical order inside a rank level
            let mut order: Vec<usize> = (0..next.len()).collect();
            order.sort_by_key(|&k| next[k]);
            let mut relabel = vec![0; next.len()];
            for (new, &old) in order.iter().enumerate() {
                relabel[old] = new;
            }
            for up in level_covers.iter_mut() {
                for k in up.iter_mut() {
                    *k = relabel[*k];
                }
                up.sort_unstable();
            }
            next.sort();
            covers.push(level_covers);
            by_rank.push(next);
        }
        covers.push(vec![Vec::new(); by_rank[m.full_rank()].len()]);
        let position = by_rank
            .iter()
            .enumerate()
            .flat_map(|(r, level)| level.iter().enumerate().map(move |(k, &f)| (f, (r, k))))
            .collect();
        FlatsLattice {
            by_rank,
            position,
            covers,
        }
    }

    pub fn rank(&self) -> usize {
        self.by_rank.len() - 1
    }

    pub fn of_rank(&self, r: usize) -> &[ElementSet] {
        self.by_rank.get(r).map_or(&[], Vec::as_slice)
    }

    /// All flats, by increasing rank.
    pub fn iter(&self) -> impl Iterator<Item = ElementSet> + '_ {
        self.by_rank.iter().flatten().copied()
    }

    /// Flats other than the bottom `cl(∅)` and the top `E`.
    pub fn proper(&self) -> impl Iterator<Item = ElementSet> + '_ {
        let top = self.rank();
        self.by_rank[1..top.max(1)].iter().flatten().copied()
    }

    pub fn len(&self) -> usize {
        self.position.len()
    }

    pub fn is_empty(&self) -> bool {
        self.position.is_empty()
    }

    pub fn contains(&self, f: ElementSet) -> bool {
        self.position.contains_key(&f)
    }

    /// Rank of a flat, if `f` is one.
    pub fn rank_of(&self, f: ElementSet) -> Option<usize> {
        self.position.get(&f).map(|&(r, _)| r)
    }

    /// Flats covering `f`.
    pub fn covers_of(&self, f: ElementSet) -> Vec<ElementSet> {
        let (r, k) = self.position[&f];
        self.covers[r][k]
            .iter()
            .map(|&j| self.by_rank[r + 1][j])
            .collect()
    }

    /// Counts of flats per rank.
    pub fn profile(&self) -> Vec<usize> {
        self.by_rank.iter().map(Vec::len).collect()
    }

    /// Flats `G` with `lower ⊆ G ⊆ upper`.
    pub fn interval(&self, lower: ElementSet, upper: ElementSet) -> Vec<ElementSet> {
        let lo = self.rank_of(lower).unwrap_or(0);
        let hi = self.rank_of(upper).unwrap_or(self.rank());
        self.by_rank[lo..=hi]
            .iter()
            .flatten()
            .copied()
            .filter(|g| lower.is_subset(*g) && g.is_subset(upper))
            .collect()
    }

    /// Saturated chains from rank 1 to rank `r - 1`.
    pub fn maximal_chains(&self) -> Vec<Vec<ElementSet>> {
        let top = self.rank();
        if top < 2 {
            return vec![Vec::new()];
        }
        let mut out = Vec::new();
        let mut chain = Vec::with_capacity(top - 1);
        fn walk(
            lat: &FlatsLattice,
            f: ElementSet,
            top: usize,
            chain: &mut Vec<ElementSet>,
            out: &mut Vec<Vec<ElementSet>>,
        ) {
            chain.push(f);
            if chain.len() == top - 1 {
                out.push(chain.clone());
            } else {
                for g in lat.covers_of(f) {
                    walk(lat, g, top, chain, out);
                }
            }
            chain.pop();
        }
        for &f in self.of_rank(1) {
            walk(self, f, top, &mut chain, &mut out);
        }
        out
    }
}

impl Matroid {
    /// cl(S) = {i : r(S + i) = r(S)}.
    pub fn closure(&self, s: ElementSet) -> ElementSet {
        let r = self.rank(s);
        let mut c = s;
        for i in (self.full() - s).iter() {
            if self.rank(s.with(i)) == r {
                c.insert(i);
            }
        }
        c
    }

    pub fn is_flat(&self, s: ElementSet) -> bool {
        self.closure(s) == s
    }

    pub fn flats(&self) -> &FlatsLattice {
        self.inner.flats.get_or_init(|| FlatsLattice::build(self))
    }

    pub fn flats_of_rank(&self, k: usize) -> Vec<ElementSet> {
        self.flats().of_rank(k).to_vec()
    }

    /// Inclusion-minimal dependent sets, by increasing size, then by mask.
    pub fn circuits(&self) -> &[ElementSet] {
        self.inner.circuits.get_or_init(|| {
            let mut out = Vec::new();
            let max = (self.full_rank() + 1).min(self.n());
            for k in 1..=max {
                for s in subsets_of_size(self.n(), k) {
                    // a circuit is a dependent set all of whose hyperplanes are independent
                    if self.rank(s) == k - 1 && s.iter().all(|i| self.rank(s.without(i)) == k - 1)
                    {
                        out.push(s);
                    }
                }
            }
            out
        })
    }
}
