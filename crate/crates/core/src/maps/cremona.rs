use serde::{Deserialize, Serialize};

use super::LatticeMap;
use crate::bitset::ElementSet;
use crate::error::{Error, Result};
use crate::matroid::Matroid;

/// Residues F_{ij} ∖ {i, j} of the lines spanned by pairs of basis elements, and whether
/// they partition E ∖ b.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CremonaCriterion {
    pub holds: bool,
    /// `((i, j), F_{ij} ∖ {i, j})` for basis elements `i < j`.
    pub residues: Vec<((usize, usize), ElementSet)>,
    pub failure: Option<String>,
}

impl Matroid {
    fn require_basis(&self, b: ElementSet) -> Result<()> {
        if self.is_basis(b) {
            Ok(())
        } else {
            Err(Error::NotABasis(self.ground().names(b)))
        }
    }

    /// Do the sets cl{i, j} ∖ {i, j}, for pairs in the basis `b`, partition E ∖ b?
    pub fn cremona_criterion(&self, b: ElementSet) -> Result<CremonaCriterion> {
        self.require_basis(b)?;
        if !self.is_simple() {
            return Err(Error::NotSimple);
        }
        if !self.is_connected() {
            return Err(Error::NotConnected);
        }
        let elems: Vec<usize> = b.iter().collect();
        let mut residues = Vec::new();
        for (x, &i) in elems.iter().enumerate() {
            for &j in &elems[x + 1..] {
                let pair = ElementSet::from_iter([i, j]);
                residues.push(((i, j), self.closure(pair) - pair));
            }
        }
        let mut covered = ElementSet::empty();
        let mut failure = None;
        for &((i, j), r) in &residues {
            if let Some(k) = (covered & r).min_element() {
                failure.get_or_insert_with(|| {
                    format!(
                        "{} lies on more than one line through two basis elements (one is {}{})",
                        self.label(k),
                        self.label(i),
                        self.label(j)
                    )
                });
            }
            covered = covered | r;
        }
        let missing = self.full() - b - covered;
        if !missing.is_empty() {
            failure.get_or_insert_with(|| {
                format!(
                    "{:?} lie on no line through two basis elements",
                    self.ground().names(missing)
                )
            });
        }
        Ok(CremonaCriterion {
            holds: failure.is_none(),
            residues,
            failure,
        })
    }

    /// The map v_{b_j} ↦ v_{B_j}, B_j = cl(b ∖ b_j), v_k ↦ v_k off the basis, whether or
    /// not it descends to the quotient.
    pub fn cremona_map_unchecked(&self, b: ElementSet) -> Result<LatticeMap> {
        self.require_basis(b)?;
        let n = self.n();
        let mut matrix = vec![vec![0i64; n]; n];
        for j in 0..n {
            let column = if b.contains(j) {
                self.closure(b.without(j))
            } else {
                ElementSet::singleton(j)
            };
            for i in column {
                matrix[i][j] = 1;
            }
        }
        LatticeMap::single(self.labels().to_vec(), self.labels().to_vec(), matrix)
    }

    /// The Cremona map of `b`, provided the partition criterion holds.
    pub fn cremona_map(&self, b: ElementSet) -> Result<LatticeMap> {
        let crit = self.cremona_criterion(b)?;
        if let Some(why) = crit.failure {
            return Err(Error::CremonaCriterion(why));
        }
        self.cremona_map_unchecked(b)
    }

    /// Bases whose Cremona map passes the criterion.
    pub fn cremona_bases(&self) -> Result<Vec<ElementSet>> {
        let mut out = Vec::new();
        for b in self.bases() {
            if self.cremona_criterion(b)?.holds {
                out.push(b);
            }
        }
        Ok(out)
    }
}

/// The map v ↦ -v on the full space, i.e. the Cremona map of the whole ground set of the
/// free matroid.
pub fn negation(labels: &[String]) -> LatticeMap {
    let n = labels.len();
    let matrix = (0..n)
        .map(|i| (0..n).map(|j| -((i == j) as i64)).collect())
        .collect();
    LatticeMap::single(labels.to_vec(), labels.to_vec(), matrix).expect("square matrix")
}
