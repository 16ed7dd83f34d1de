use std::collections::HashSet;

use super::Matroid;
use crate::bitset::ElementSet;
use crate::error::{Error, Result};

fn image(f: &[usize], s: ElementSet) -> ElementSet {
    s.iter().map(|i| f[i]).collect()
}

impl Matroid {
    /// Checks that `f` (element `i` goes to `f[i]`) is a bijection preserving rank. For at
    /// most 12 elements every subset is compared; above that, flats and circuits are
    /// transported. The error carries a witness subset.
    pub fn check_isomorphism(&self, other: &Matroid, f: &[usize]) -> Result<()> {
        let n = self.n();
        if f.len() != n || other.n() != n {
            return Err(Error::InvalidArgument(
                "map is not a bijection between the ground sets".into(),
            ));
        }
        let img: ElementSet = f.iter().copied().collect();
        if f.iter().any(|&x| x >= n) || img.len() != n {
            return Err(Error::InvalidArgument(
                "map is not a bijection between the ground sets".into(),
            ));
        }
        let witness = |s: ElementSet| Err(Error::NotAnIsomorphism(self.ground().names(s)));
        if n <= 12 {
            for s in self.full().subsets() {
                if self.rank(s) != other.rank(image(f, s)) {
                    return witness(s);
                }
            }
            return Ok(());
        }
        if self.full_rank() != other.full_rank() {
            return witness(self.full());
        }
        for flat in self.flats().iter() {
            let g = image(f, flat);
            if other.rank(g) != self.rank(flat) || !other.is_flat(g) {
                return witness(flat);
            }
        }
        if self.flats().len() != other.flats().len() {
            return witness(self.full());
        }
        let theirs: HashSet<ElementSet> = other.circuits().iter().copied().collect();
        for &c in self.circuits() {
            if !theirs.contains(&image(f, c)) {
                return witness(c);
            }
        }
        if self.circuits().len() != theirs.len() {
            return witness(self.full());
        }
        Ok(())
    }

    fn circuit_signature(&self, i: usize) -> Vec<usize> {
        let mut sig: Vec<usize> = self
            .circuits()
            .iter()
            .filter(|c| c.contains(i))
            .map(|c| c.len())
            .collect();
        sig.sort_unstable();
        sig
    }

    /// All isomorphisms `self → other`, found by backtracking on circuits. Results are in
    /// lexicographic order of the image vectors.
    pub fn isomorphisms_to(&self, other: &Matroid) -> Vec<Vec<usize>> {
        let n = self.n();
        if other.n() != n
            || other.full_rank() != self.full_rank()
            || other.circuits().len() != self.circuits().len()
        {
            return Vec::new();
        }
        let mine: Vec<Vec<usize>> = (0..n).map(|i| self.circuit_signature(i)).collect();
        let theirs: Vec<Vec<usize>> = (0..n).map(|i| other.circuit_signature(i)).collect();
        let targets: HashSet<ElementSet> = other.circuits().iter().copied().collect();
        // circuits grouped by their largest element
        let mut closing: Vec<Vec<ElementSet>> = vec![Vec::new(); n];
        for &c in self.circuits() {
            let top = 63 - c.bits().leading_zeros() as usize;
            closing[top].push(c);
        }
        let loops_self = self.loops();
        let loops_other = other.loops();
        let mut out = Vec::new();
        let mut f = vec![usize::MAX; n];
        let mut used = ElementSet::empty();
        #[allow(clippy::too_many_arguments)]
        fn go(
            k: usize,
            n: usize,
            f: &mut Vec<usize>,
            used: &mut ElementSet,
            mine: &[Vec<usize>],
            theirs: &[Vec<usize>],
            closing: &[Vec<ElementSet>],
            targets: &HashSet<ElementSet>,
            loops: (ElementSet, ElementSet),
            out: &mut Vec<Vec<usize>>,
        ) {
            if k == n {
                out.push(f.clone());
                return;
            }
            for t in 0..n {
                if used.contains(t)
                    || mine[k] != theirs[t]
                    || loops.0.contains(k) != loops.1.contains(t)
                {
                    continue;
                }
                f[k] = t;
                if closing[k].iter().all(|&c| targets.contains(&image(f, c))) {
                    used.insert(t);
                    go(k + 1, n, f, used, mine, theirs, closing, targets, loops, out);
                    used.remove(t);
                }
            }
            f[k] = usize::MAX;
        }
        go(
            0,
            n,
            &mut f,
            &mut used,
            &mine,
            &theirs,
            &closing,
            &targets,
            (loops_self, loops_other),
            &mut out,
        );
        out
    }

    pub fn automorphisms(&self) -> Vec<Vec<usize>> {
        self.isomorphisms_to(self)
    }

    pub fn is_isomorphic(&self, other: &Matroid) -> bool {
        let n = self.n();
        if other.n() != n {
            return false;
        }
        !self.isomorphisms_to(other).is_empty()
    }

    /// Position map for a bijection given by labels: `pairs` lists (label in self, label
    /// in other).
    pub fn bijection_from_labels<S: AsRef<str>>(
        &self,
        other: &Matroid,
        pairs: &[(S, S)],
    ) -> Result<Vec<usize>> {
        let mut f = vec![usize::MAX; self.n()];
        for (a, b) in pairs {
            let i = self.ground().index_of(a.as_ref())?;
            let j = other.ground().index_of(b.as_ref())?;
            f[i] = j;
        }
        if f.contains(&usize::MAX) {
            return Err(Error::InvalidArgument(
                "bijection does not cover every element".into(),
            ));
        }
        Ok(f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn k4_has_s4_automorphisms() {
        let k4 = Matroid::complete_graph(4).unwrap();
        let auts = k4.automorphisms();
        assert_eq!(auts.len(), 24);
        for f in &auts {
            assert!(k4.check_isomorphism(&k4, f).is_ok());
        }
    }

    #[test]
    fn non_isomorphism_has_witness() {
        let k4 = Matroid::complete_graph(4).unwrap();
        // swap an edge of a triangle with the edge disjoint from it
        let f = vec![5, 1, 2, 3, 4, 0];
        match k4.check_isomorphism(&k4, &f) {
            Err(Error::NotAnIsomorphism(w)) => assert!(!w.is_empty()),
            other => panic!("expected a witness, got {other:?}"),
        }
    }

    #[test]
    fn uniform_automorphisms_are_everything() {
        assert_eq!(Matroid::uniform(2, 4).unwrap().automorphisms().len(), 24);
        assert_eq!(Matroid::uniform(3, 3).unwrap().automorphisms().len(), 6);
    }

    #[test]
    fn fano_automorphism_group() {
        let fano = Matroid::projective_geometry(2, 2).unwrap();
        assert_eq!(fano.automorphisms().len(), 168);
    }

    #[test]
    fn dowling_trivial_group_isomorphic_to_k4() {
        let q = Matroid::dowling(3, super::super::GroupTable::trivial()).unwrap();
        assert!(q.is_isomorphic(&Matroid::complete_graph(4).unwrap()));
        assert!(!Matroid::uniform(2, 4).unwrap().is_isomorphic(&Matroid::uniform(3, 4).unwrap()));
    }
}
