//! Matroids on labelled ground sets, represented by a memoised rank oracle.
//!
//! Every constructor produces the same [`Matroid`] type; what differs is the oracle that
//! answers rank queries. Derived matroids (minors, truncations, sums) wrap their parent.

mod connectivity;
mod constructors;
mod flats;
mod group;
mod iso;
mod minors;
mod serial;

use std::collections::HashMap;
use std::fmt;
use std::sync::atomic::{AtomicU8, Ordering};
use std::sync::{Arc, OnceLock, RwLock};

use crate::bitset::ElementSet;
use crate::error::{Error, Result};

pub use constructors::{complete_graph_edges, DowlingElement};
pub use flats::FlatsLattice;
pub use group::GroupTable;
pub use minors::Simplification;
pub use serial::{MatroidFile, Recipe};

/// Ordered, duplicate-free element labels.
#[derive(Clone, PartialEq, Eq)]
pub struct GroundSet {
    labels: Vec<String>,
    index: HashMap<String, usize>,
}

impl GroundSet {
    pub fn new(labels: Vec<String>) -> Result<Self> {
        if labels.len() > ElementSet::CAPACITY {
            return Err(Error::TooLarge(labels.len()));
        }
        let mut index = HashMap::with_capacity(labels.len());
        for (i, l) in labels.iter().enumerate() {
            if index.insert(l.clone(), i).is_some() {
                return Err(Error::InvalidArgument(format!("duplicate label `{l}`")));
            }
        }
        Ok(GroundSet { labels, index })
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, i: usize) -> &str {
        &self.labels[i]
    }

    pub fn index_of(&self, label: &str) -> Result<usize> {
        self.index
            .get(label)
            .copied()
            .ok_or_else(|| Error::UnknownLabel(label.to_string()))
    }

    pub fn set_of<S: AsRef<str>>(&self, labels: &[S]) -> Result<ElementSet> {
        labels
            .iter()
            .map(|l| self.index_of(l.as_ref()))
            .collect::<Result<Vec<_>>>()
            .map(ElementSet::from_iter)
    }

    pub fn names(&self, s: ElementSet) -> Vec<String> {
        s.iter().map(|i| self.labels[i].clone()).collect()
    }

    pub fn full(&self) -> ElementSet {
        ElementSet::full(self.len())
    }
}

impl fmt::Debug for GroundSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(&self.labels).finish()
    }
}

#[derive(Clone)]
pub(crate) enum Oracle {
    Uniform(usize),
    Graphic {
        vertices: usize,
        edges: Vec<(usize, usize)>,
    },
    Linear {
        prime: u64,
        columns: Vec<Vec<u64>>,
    },
    Dowling {
        dim: usize,
        group: GroupTable,
        elements: Vec<DowlingElement>,
    },
    Circuits(Vec<ElementSet>),
    Bases(Vec<ElementSet>),
    Minor {
        parent: Matroid,
        keep: Vec<usize>,
        contracted: ElementSet,
        contracted_rank: usize,
    },
    Truncation {
        parent: Matroid,
        rank: usize,
    },
    DirectSum(Vec<(Matroid, usize)>),
}

impl Oracle {
    fn rank(&self, s: ElementSet) -> usize {
        match self {
            Oracle::Uniform(r) => s.len().min(*r),
            Oracle::Graphic { vertices, edges } => constructors::graphic_rank(*vertices, edges, s),
            Oracle::Linear { prime, columns } => constructors::linear_rank(*prime, columns, s),
            Oracle::Dowling {
                dim,
                group,
                elements,
            } => constructors::dowling_rank(*dim, group, elements, s),
            Oracle::Circuits(circuits) => {
                let mut indep = ElementSet::empty();
                for i in s {
                    let cand = indep.with(i);
                    if !circuits.iter().any(|c| c.is_subset(cand)) {
                        indep = cand;
                    }
                }
                indep.len()
            }
            Oracle::Bases(bases) => bases.iter().map(|b| (*b & s).len()).max().unwrap_or(0),
            Oracle::Minor {
                parent,
                keep,
                contracted,
                contracted_rank,
            } => {
                let lifted: ElementSet = s.iter().map(|i| keep[i]).collect();
                parent.rank(lifted | *contracted) - contracted_rank
            }
            Oracle::Truncation { parent, rank } => parent.rank(s).min(*rank),
            Oracle::DirectSum(parts) => parts
                .iter()
                .map(|(m, off)| {
                    let local = ElementSet::from_bits(
                        (s.bits() >> off) & m.ground().full().bits(),
                    );
                    m.rank(local)
                })
                .sum(),
        }
    }
}

enum RankCache {
    // one byte per subset, `u8::MAX` meaning unknown
    Dense(Vec<AtomicU8>),
    Sparse(RwLock<HashMap<u64, u8>>),
}

const DENSE_LIMIT: usize = 20;

impl RankCache {
    fn new(n: usize) -> Self {
        if n <= DENSE_LIMIT {
            RankCache::Dense((0..1usize << n).map(|_| AtomicU8::new(u8::MAX)).collect())
        } else {
            RankCache::Sparse(RwLock::new(HashMap::new()))
        }
    }

    fn get(&self, s: ElementSet) -> Option<usize> {
        match self {
            RankCache::Dense(v) => {
                let r = v[s.bits() as usize].load(Ordering::Relaxed);
                (r != u8::MAX).then_some(r as usize)
            }
            RankCache::Sparse(m) => m
                .read()
                .expect("rank cache poisoned")
                .get(&s.bits())
                .map(|&r| r as usize),
        }
    }

    fn put(&self, s: ElementSet, r: usize) {
        match self {
            RankCache::Dense(v) => v[s.bits() as usize].store(r as u8, Ordering::Relaxed),
            RankCache::Sparse(m) => {
                m.write().expect("rank cache poisoned").insert(s.bits(), r as u8);
            }
        }
    }
}

/// Data recorded by [`Matroid::parallel_connection`]: the two factors and where their
/// elements landed.
#[derive(Clone)]
pub struct Gluing {
    pub left: Matroid,
    pub right: Matroid,
    /// Index of the glued element in the connection.
    pub point: usize,
    /// Position in the connection of every element of `left`.
    pub left_map: Vec<usize>,
    /// Position in the connection of every element of `right`; the glued element maps to
    /// `point`.
    pub right_map: Vec<usize>,
}

struct Inner {
    ground: GroundSet,
    oracle: Oracle,
    recipe: Recipe,
    full_rank: usize,
    cache: RankCache,
    flats: OnceLock<FlatsLattice>,
    circuits: OnceLock<Vec<ElementSet>>,
    components: OnceLock<Vec<ElementSet>>,
    gluing: Option<Gluing>,
}

/// A matroid: a labelled ground set and a rank function.
///
/// Cheap to clone; clones share the rank cache.
#[derive(Clone)]
pub struct Matroid {
    inner: Arc<Inner>,
}

impl Matroid {
    pub(crate) fn assemble(
        labels: Vec<String>,
        oracle: Oracle,
        recipe: Recipe,
        gluing: Option<Gluing>,
    ) -> Result<Matroid> {
        let ground = GroundSet::new(labels)?;
        let full_rank = oracle.rank(ground.full());
        let cache = RankCache::new(ground.len());
        Ok(Matroid {
            inner: Arc::new(Inner {
                ground,
                oracle,
                recipe,
                full_rank,
                cache,
                flats: OnceLock::new(),
                circuits: OnceLock::new(),
                components: OnceLock::new(),
                gluing,
            }),
        })
    }

    pub fn ground(&self) -> &GroundSet {
        &self.inner.ground
    }

    pub fn labels(&self) -> &[String] {
        self.inner.ground.labels()
    }

    pub fn label(&self, i: usize) -> &str {
        self.inner.ground.label(i)
    }

    /// Number of elements.
    pub fn n(&self) -> usize {
        self.inner.ground.len()
    }

    pub fn full(&self) -> ElementSet {
        self.inner.ground.full()
    }

    pub fn recipe(&self) -> &Recipe {
        &self.inner.recipe
    }

    /// Constructor kind, e.g. `"uniform"` or `"minor"`.
    pub fn kind(&self) -> &'static str {
        self.inner.recipe.kind()
    }

    pub fn gluing(&self) -> Option<&Gluing> {
        self.inner.gluing.as_ref()
    }

    pub fn rank(&self, s: ElementSet) -> usize {
        debug_assert!(s.is_subset(self.full()), "{s:?} outside ground set");
        if let Some(r) = self.inner.cache.get(s) {
            return r;
        }
        let r = self.inner.oracle.rank(s);
        self.inner.cache.put(s, r);
        r
    }

    /// r(M).
    pub fn full_rank(&self) -> usize {
        self.inner.full_rank
    }

    pub fn rank_of_labels<S: AsRef<str>>(&self, labels: &[S]) -> Result<usize> {
        Ok(self.rank(self.ground().set_of(labels)?))
    }

    pub fn is_independent(&self, s: ElementSet) -> bool {
        self.rank(s) == s.len()
    }

    pub fn is_basis(&self, s: ElementSet) -> bool {
        s.len() == self.full_rank() && self.is_independent(s)
    }

    pub fn bases(&self) -> Vec<ElementSet> {
        crate::bitset::subsets_of_size(self.n(), self.full_rank())
            .filter(|&s| self.is_independent(s))
            .collect()
    }

    pub fn loops(&self) -> ElementSet {
        (0..self.n())
            .filter(|&i| self.rank(ElementSet::singleton(i)) == 0)
            .collect()
    }

    pub fn is_loop_free(&self) -> bool {
        self.loops().is_empty()
    }

    pub fn is_coloop(&self, i: usize) -> bool {
        self.rank(self.full().without(i)) < self.full_rank()
    }

    pub fn is_simple(&self) -> bool {
        self.is_loop_free()
            && crate::bitset::subsets_of_size(self.n(), 2).all(|s| self.rank(s) == 2)
    }

    pub(crate) fn require_loop_free(&self) -> Result<()> {
        let loops = self.loops();
        if loops.is_empty() {
            Ok(())
        } else {
            Err(Error::HasLoops(self.ground().names(loops)))
        }
    }

    /// Verifies the rank axioms: exhaustively for at most 12 elements, on a
    /// deterministic sample of pairs otherwise.
    pub fn check_axioms(&self) -> Result<()> {
        use rand::{Rng, SeedableRng};
        let n = self.n();
        if self.rank(ElementSet::empty()) != 0 {
            return Err(Error::AxiomViolation("rank of the empty set is not 0".into()));
        }
        let full = self.full().bits();
        let sets: Vec<ElementSet> = if n <= 12 {
            self.full().subsets().collect()
        } else {
            let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(0x6d61_7472);
            (0..4096)
                .map(|_| ElementSet::from_bits(rng.gen::<u64>() & full))
                .collect()
        };
        for &a in &sets {
            let ra = self.rank(a);
            if ra > a.len() {
                return Err(Error::AxiomViolation(format!(
                    "r({:?}) exceeds its size",
                    self.ground().names(a)
                )));
            }
            for i in (self.full() - a).iter() {
                let rb = self.rank(a.with(i));
                if rb < ra || rb > ra + 1 {
                    return Err(Error::AxiomViolation(format!(
                        "unit increase fails at {:?} + {}",
                        self.ground().names(a),
                        self.label(i)
                    )));
                }
            }
        }
        let pairs: Vec<(ElementSet, ElementSet)> = if n <= 8 {
            sets.iter()
                .flat_map(|&a| sets.iter().map(move |&b| (a, b)))
                .collect()
        } else {
            let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(0x7375_626d);
            (0..20_000)
                .map(|_| {
                    (
                        ElementSet::from_bits(rng.gen::<u64>() & full),
                        ElementSet::from_bits(rng.gen::<u64>() & full),
                    )
                })
                .collect()
        };
        for (a, b) in pairs {
            if self.rank(a | b) + self.rank(a & b) > self.rank(a) + self.rank(b) {
                return Err(Error::AxiomViolation(format!(
                    "submodularity fails for {:?}, {:?}",
                    self.ground().names(a),
                    self.ground().names(b)
                )));
            }
        }
        Ok(())
    }

    /// Same matroid with new element labels.
    pub fn with_labels(&self, labels: Vec<String>) -> Result<Matroid> {
        if labels.len() != self.n() {
            return Err(Error::InvalidArgument(format!(
                "expected {} labels, got {}",
                self.n(),
                labels.len()
            )));
        }
        Matroid::assemble(
            labels,
            self.inner.oracle.clone(),
            self.inner.recipe.clone(),
            self.inner.gluing.clone(),
        )
    }

    /// True when both matroids have the same labels and the same rank function.
    pub fn same_as(&self, other: &Matroid) -> bool {
        self.labels() == other.labels()
            && self.full().subsets().all(|s| self.rank(s) == other.rank(s))
    }
}

impl fmt::Debug for Matroid {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "Matroid({}, rank {} on {:?})",
            self.kind(),
            self.full_rank(),
            self.ground()
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ground_set_rejects_duplicates() {
        assert!(GroundSet::new(vec!["a".into(), "a".into()]).is_err());
        let g = GroundSet::new(vec!["a".into(), "b".into()]).unwrap();
        assert_eq!(g.index_of("b").unwrap(), 1);
        assert!(matches!(g.index_of("c"), Err(Error::UnknownLabel(_))));
    }

    #[test]
    fn uniform_three_three_is_free() {
        let m = Matroid::uniform(3, 3).unwrap();
        assert_eq!(m.rank(m.full()), 3);
        assert!(m.check_axioms().is_ok());
        assert_eq!(m.bases().len(), 1);
    }

    #[test]
    fn relabelling_keeps_rank() {
        let m = Matroid::uniform(2, 3).unwrap();
        let r = m
            .with_labels(vec!["x".into(), "y".into(), "z".into()])
            .unwrap();
        assert_eq!(r.rank_of_labels(&["x", "z"]).unwrap(), 2);
        assert_eq!(r.rank(r.full()), 2);
    }
}
