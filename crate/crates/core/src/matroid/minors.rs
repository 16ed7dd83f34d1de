use super::{Matroid, Oracle, Recipe};
use crate::bitset::ElementSet;
use crate::error::{Error, Result};

/// Result of [`Matroid::simplify`].
#[derive(Clone, Debug)]
pub struct Simplification {
    pub matroid: Matroid,
    /// For every original element, its class representative in `matroid`; `None` for
    /// loops.
    pub quotient: Vec<Option<usize>>,
}

impl Matroid {
    /// (M / contract) restricted to `keep`. The two sets must be disjoint; elements keep
    /// their labels and relative order.
    pub fn minor(&self, keep: ElementSet, contract: ElementSet) -> Result<Matroid> {
        if !keep.is_subset(self.full()) || !contract.is_subset(self.full()) {
            return Err(Error::InvalidArgument("minor sets outside ground set".into()));
        }
        if !keep.is_disjoint(contract) {
            return Err(Error::InvalidArgument(
                "kept and contracted elements overlap".into(),
            ));
        }
        if keep.is_empty() {
            return Err(Error::InvalidArgument("minor on an empty ground set".into()));
        }
        let recipe = Recipe::Minor {
            parent: Box::new(self.to_file()),
            keep: self.ground().names(keep),
            contract: self.ground().names(contract),
        };
        Matroid::assemble(
            self.ground().names(keep),
            Oracle::Minor {
                parent: self.clone(),
                keep: keep.iter().collect(),
                contracted: contract,
                contracted_rank: self.rank(contract),
            },
            recipe,
            None,
        )
    }

    /// M|F.
    pub fn restrict(&self, f: ElementSet) -> Result<Matroid> {
        self.minor(f, ElementSet::empty())
    }

    /// M \ S.
    pub fn delete(&self, s: ElementSet) -> Result<Matroid> {
        self.minor(self.full() - s, ElementSet::empty())
    }

    /// M / S.
    pub fn contract(&self, s: ElementSet) -> Result<Matroid> {
        self.minor(self.full() - s, s)
    }

    /// M|upper / lower for `lower ⊆ upper`.
    pub fn interval_minor(&self, lower: ElementSet, upper: ElementSet) -> Result<Matroid> {
        if !lower.is_subset(upper) {
            return Err(Error::InvalidArgument(format!(
                "{lower:?} is not contained in {upper:?}"
            )));
        }
        self.minor(upper - lower, lower)
    }

    /// Rank function min(r(A), k).
    pub fn truncate(&self, k: usize) -> Result<Matroid> {
        if k < 1 || k > self.full_rank() {
            return Err(Error::InvalidArgument(format!(
                "truncation rank {k} outside 1..={}",
                self.full_rank()
            )));
        }
        Matroid::assemble(
            self.labels().to_vec(),
            Oracle::Truncation {
                parent: self.clone(),
                rank: k,
            },
            Recipe::Truncation {
                parent: Box::new(self.to_file()),
                rank: k,
            },
            None,
        )
    }

    /// Classes of parallel non-loop elements, each sorted, ordered by least element.
    pub fn parallel_classes(&self) -> Vec<ElementSet> {
        let loops = self.loops();
        let mut seen = loops;
        let mut out = Vec::new();
        for i in 0..self.n() {
            if seen.contains(i) {
                continue;
            }
            let class = self.closure(ElementSet::singleton(i)) - loops;
            seen = seen | class;
            out.push(class);
        }
        out
    }

    /// Deletes loops and all but the least element of each parallel class.
    pub fn simplify(&self) -> Result<Simplification> {
        let classes = self.parallel_classes();
        if classes.is_empty() {
            return Err(Error::InvalidArgument(
                "simplification of a matroid consisting of loops".into(),
            ));
        }
        let keep: ElementSet = classes
            .iter()
            .map(|c| c.min_element().expect("classes are nonempty"))
            .collect();
        let mut quotient = vec![None; self.n()];
        for c in &classes {
            let rep = c.min_element().expect("classes are nonempty");
            let pos = (keep.bits() & ((1u64 << rep) - 1)).count_ones() as usize;
            for i in c.iter() {
                quotient[i] = Some(pos);
            }
        }
        let matroid = if keep == self.full() {
            self.clone()
        } else {
            self.restrict(keep)?
        };
        Ok(Simplification { matroid, quotient })
    }
}
