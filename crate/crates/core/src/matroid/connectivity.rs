use super::Matroid;
use crate::bitset::ElementSet;
use crate::error::{Error, Result};

fn components_with(ground: ElementSet, rank: impl Fn(ElementSet) -> usize) -> Vec<ElementSet> {
    let mut basis = ElementSet::empty();
    for i in ground {
        if rank(basis.with(i)) > basis.len() {
            basis.insert(i);
        }
    }
    let r = basis.len();
    let fundamentals: Vec<ElementSet> = (ground - basis)
        .iter()
        .map(|e| {
            basis
                .iter()
                .filter(|&b| rank(basis.without(b).with(e)) == r)
                .collect::<ElementSet>()
                .with(e)
        })
        .collect();
    let mut blocks: Vec<ElementSet> = ground.iter().map(ElementSet::singleton).collect();
    loop {
        let mut merged = false;
        for &c in &fundamentals {
            let (hit, rest): (Vec<ElementSet>, Vec<ElementSet>) =
                blocks.iter().partition(|b| !b.is_disjoint(c));
            if hit.len() > 1 {
                blocks = rest;
                blocks.push(hit.into_iter().fold(ElementSet::empty(), |a, b| a | b));
                merged = true;
            }
        }
        if !merged {
            break;
        }
    }
    blocks.sort_by_key(|b| b.min_element());
    let total: usize = blocks.iter().map(|&b| rank(b)).sum();
    assert_eq!(total, r, "component ranks do not add up to the rank");
    blocks
}

impl Matroid {
    /// Some basis, chosen greedily in index order.
    pub fn greedy_basis(&self) -> ElementSet {
        let mut b = ElementSet::empty();
        for i in 0..self.n() {
            if self.rank(b.with(i)) > b.len() {
                b.insert(i);
            }
        }
        b
    }

    /// The unique circuit in `basis + e`, or `{e}` for a loop. Empty if `e ∈ basis`.
    pub fn fundamental_circuit(&self, basis: ElementSet, e: usize) -> ElementSet {
        if basis.contains(e) {
            return ElementSet::empty();
        }
        let r = basis.len();
        basis
            .iter()
            .filter(|&b| self.rank(basis.without(b).with(e)) == r)
            .collect::<ElementSet>()
            .with(e)
    }

    /// Connected components, ordered by least element.
    ///
    /// Blocks start as singletons and are merged whenever a fundamental circuit of a fixed
    /// basis meets both, until nothing changes. At the fixpoint the block ranks must add
    /// up to r(M).
    pub fn components(&self) -> &[ElementSet] {
        self.inner
            .components
            .get_or_init(|| components_with(self.full(), |s| self.rank(s)))
    }

    /// Components of the minor `M|keep / contract`, as subsets of `keep`, without
    /// building the minor.
    pub fn minor_components(&self, keep: ElementSet, contract: ElementSet) -> Vec<ElementSet> {
        debug_assert!(keep.is_disjoint(contract));
        let base = self.rank(contract);
        components_with(keep, |s| self.rank(s | contract) - base)
    }

    /// Is `M|keep / contract` connected?
    pub fn is_minor_connected(&self, keep: ElementSet, contract: ElementSet) -> bool {
        self.minor_components(keep, contract).len() <= 1
    }

    /// Components from the definition: `i ~ j` when a circuit contains both.
    pub fn components_by_circuits(&self) -> Vec<ElementSet> {
        let mut blocks: Vec<ElementSet> = (0..self.n()).map(ElementSet::singleton).collect();
        for &c in self.circuits() {
            let (hit, mut rest): (Vec<ElementSet>, Vec<ElementSet>) =
                blocks.into_iter().partition(|b| !b.is_disjoint(c));
            rest.push(hit.into_iter().fold(ElementSet::empty(), |a, b| a | b));
            blocks = rest;
        }
        blocks.sort_by_key(|b| b.min_element());
        blocks
    }

    pub fn is_connected(&self) -> bool {
        self.components().len() <= 1
    }

    /// Every component has rank at most one.
    pub fn is_totally_disconnected(&self) -> bool {
        self.components().iter().all(|&c| self.rank(c) <= 1)
    }

    /// No circuit has three or more elements.
    pub fn has_no_large_circuit(&self) -> bool {
        self.circuits().iter().all(|c| c.len() < 3)
    }

    /// `M / i` is disconnected.
    pub fn is_nontrivial_parallel_connection_along(&self, i: usize) -> Result<bool> {
        if i >= self.n() {
            return Err(Error::InvalidArgument(format!("element {i} out of range")));
        }
        if self.n() == 1 {
            return Ok(false);
        }
        Ok(!self.is_minor_connected(self.full().without(i), ElementSet::singleton(i)))
    }

    /// Splits `M` along `i` into the restrictions `M|(X1 + i)` and `M|(X2 + i)`, where
    /// `X1` is the first component of `M / i` and `X2` the rest. Returns `None` when the
    /// parallel connection of the two pieces is not `M`.
    pub fn split_along(&self, i: usize) -> Result<Option<(ElementSet, ElementSet)>> {
        if !self.is_nontrivial_parallel_connection_along(i)? {
            return Ok(None);
        }
        let comps = self.minor_components(self.full().without(i), ElementSet::singleton(i));
        let x1 = comps[0];
        let x2 = self.full().without(i) - x1;
        let (a, b) = (x1.with(i), x2.with(i));
        // parallel connection rank formula on every subset
        let ok = self.full().subsets().all(|s| {
            let (s1, s2) = (s & x1, s & x2);
            let glued = self.rank(s1.with(i)) + self.rank(s2.with(i)) - 1;
            let expect = if s.contains(i) {
                glued
            } else {
                (self.rank(s1) + self.rank(s2)).min(glued)
            };
            self.rank(s) == expect
        });
        Ok(ok.then_some((a, b)))
    }
}
