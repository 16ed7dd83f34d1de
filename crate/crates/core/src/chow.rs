//! Degrees in Chow rings of matroid fans.

use std::cell::RefCell;
use std::collections::HashMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::bitset::ElementSet;
use crate::error::{Error, Result};
use crate::fan::Fan;
use crate::linalg;
use crate::matroid::Matroid;

/// x_{F_1}^{d_1} ⋯ x_{F_k}^{d_k} in the Chow ring of the fine fan. Flats are kept
/// sorted by size with repeated flats merged; they need not form a chain.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FlagMonomial {
    pub flats: Vec<ElementSet>,
    pub exponents: Vec<usize>,
}

impl FlagMonomial {
    pub fn new(factors: impl IntoIterator<Item = (ElementSet, usize)>) -> Self {
        let mut merged: Vec<(ElementSet, usize)> = Vec::new();
        for (f, d) in factors {
            if d == 0 {
                continue;
            }
            match merged.iter_mut().find(|(g, _)| *g == f) {
                Some(entry) => entry.1 += d,
                None => merged.push((f, d)),
            }
        }
        merged.sort_by_key(|&(f, _)| (f.len(), f));
        FlagMonomial {
            flats: merged.iter().map(|&(f, _)| f).collect(),
            exponents: merged.iter().map(|&(_, d)| d).collect(),
        }
    }

    /// Squarefree product over a list of flats.
    pub fn product(flats: &[ElementSet]) -> Self {
        FlagMonomial::new(flats.iter().map(|&f| (f, 1)))
    }

    pub fn times(&self, f: ElementSet) -> Self {
        FlagMonomial::new(
            self.flats
                .iter()
                .copied()
                .zip(self.exponents.iter().copied())
                .chain([(f, 1)]),
        )
    }

    pub fn total_degree(&self) -> usize {
        self.exponents.iter().sum()
    }

    pub fn is_chain(&self) -> bool {
        self.flats.windows(2).all(|w| w[0].is_subset(w[1]))
    }
}

/// Degree of a top-degree monomial; products over non-chains lie in the monomial ideal.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Degree {
    Value(i64),
    NonFace,
}

impl Degree {
    pub fn value(self) -> i64 {
        match self {
            Degree::Value(v) => v,
            Degree::NonFace => 0,
        }
    }
}

fn binomial(n: i64, k: i64) -> i64 {
    if k < 0 || n < 0 || k > n {
        return 0;
    }
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

impl Matroid {
    /// deg(x_{F_1}^{d_1} ⋯ x_{F_k}^{d_k}) =
    /// (-1)^{d-k} ∏_i binom(d_i - 1, d̃_i - r_i) μ^{d̃_i - r_i}(M|F_{i+1} / F_i)
    /// with d̃_i = d_1 + ⋯ + d_i, r_i = r(F_i) and F_{k+1} = E.
    pub fn eur_degree(&self, m: &FlagMonomial) -> Result<Degree> {
        let d = self.full_rank().saturating_sub(1);
        if m.total_degree() != d {
            return Err(Error::WrongDegree {
                expected: d,
                got: m.total_degree(),
            });
        }
        if let Some(&bad) = m
            .flats
            .iter()
            .find(|&&f| f.is_empty() || f == self.full() || !self.is_flat(f))
        {
            return Err(Error::InvalidArgument(format!(
                "{:?} is not a proper nonempty flat",
                self.ground().names(bad)
            )));
        }
        if !m.is_chain() {
            return Ok(Degree::NonFace);
        }
        let k = m.flats.len();
        let mut value = if (d - k) % 2 == 0 { 1 } else { -1 };
        let mut partial = 0usize;
        for i in 0..k {
            let di = m.exponents[i];
            partial += di;
            let j = partial as i64 - self.rank(m.flats[i]) as i64;
            let upper = m.flats.get(i + 1).copied().unwrap_or(self.full());
            let b = binomial(di as i64 - 1, j);
            if b == 0 {
                return Ok(Degree::Value(0));
            }
            value *= b * self.interval_mu(m.flats[i], upper, j as usize)?;
            if value == 0 {
                break;
            }
        }
        Ok(Degree::Value(value))
    }

    /// Squarefree monomials over maximal flags.
    pub fn maximal_flag_monomials(&self) -> Vec<FlagMonomial> {
        self.flats()
            .maximal_chains()
            .iter()
            .map(|c| FlagMonomial::product(c))
            .collect()
    }

    /// Σ_{F ∋ i} deg(partial · x_F) = Σ_{G ∋ j} deg(partial · x_G), sums over proper
    /// nonempty flats.
    pub fn relation_annihilation_check(
        &self,
        partial: &FlagMonomial,
        i: usize,
        j: usize,
    ) -> Result<bool> {
        let d = self.full_rank().saturating_sub(1);
        if partial.total_degree() + 1 != d {
            return Err(Error::WrongDegree {
                expected: d.saturating_sub(1),
                got: partial.total_degree(),
            });
        }
        let side = |x: usize| -> Result<i64> {
            self.flats()
                .proper()
                .filter(|f| f.contains(x))
                .map(|f| Ok(self.eur_degree(&partial.times(f))?.value()))
                .sum()
        };
        Ok(side(i)? == side(j)?)
    }

    /// Closed-form degrees of products of two rays of the coarse fan of a rank-3 matroid.
    /// Rays are the singletons and the rank-2 flats with at least three elements.
    pub fn coarse_rank3_degree(&self, a: ElementSet, b: ElementSet) -> Result<i64> {
        if self.full_rank() != 3 {
            return Err(Error::InvalidArgument(format!(
                "rank-3 closed forms need rank 3, got {}",
                self.full_rank()
            )));
        }
        if !self.is_simple() {
            return Err(Error::NotSimple);
        }
        if !self.coarse_criterion_holds() {
            return Err(Error::CoarseUnsupported(
                "closed forms need the coarse fan to be the nested fan".into(),
            ));
        }
        let is_ray = |f: ElementSet| {
            f.len() == 1 || (f.len() > 2 && self.rank(f) == 2 && self.is_flat(f))
        };
        for f in [a, b] {
            if !is_ray(f) {
                return Err(Error::InvalidArgument(format!(
                    "{:?} is not a ray of the coarse fan",
                    self.ground().names(f)
                )));
            }
        }
        let big_lines_through = |k: usize| {
            self.flats()
                .of_rank(2)
                .iter()
                .filter(|f| f.contains(k) && f.len() > 2)
                .count() as i64
        };
        Ok(match (a.len() == 1, b.len() == 1) {
            (true, true) if a == b => 1 - big_lines_through(a.min_element().unwrap_or(0)),
            (true, true) => (self.closure(a | b) == a | b) as i64,
            (true, false) => a.is_subset(b) as i64,
            (false, true) => b.is_subset(a) as i64,
            (false, false) if a == b => -1,
            (false, false) => 0,
        })
    }
}

/// Generators, minimal non-faces and linear relations of the Chow ring of a fan.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChowPresentation {
    /// One generator per ray, named by its ray index and, when known, its flat.
    pub generators: Vec<String>,
    pub non_faces: Vec<Vec<usize>>,
    /// `relations[i][ρ]`: coefficient of x_ρ in the relation of the i-th coordinate
    /// covector of Z^E / Z𝟙.
    pub relations: Vec<Vec<i64>>,
    pub unimodular: bool,
}

impl Fan {
    pub fn chow_presentation(&self) -> ChowPresentation {
        let generators = self
            .rays()
            .iter()
            .enumerate()
            .map(|(k, r)| match r.flat {
                Some(f) => format!(
                    "x{k}[{}]",
                    f.iter()
                        .map(|i| self.labels()[i].as_str())
                        .collect::<Vec<_>>()
                        .join(",")
                ),
                None => format!("x{k}"),
            })
            .collect();
        let mut non_faces = Vec::new();
        for level in 0..=self.dim() {
            for sigma in self.cones_of_dim(level) {
                let start = sigma.last().map_or(0, |&m| m + 1);
                for rho in start..self.rays().len() {
                    let mut t = sigma.clone();
                    t.push(rho);
                    if self.contains_cone(&t) {
                        continue;
                    }
                    let minimal = (0..t.len()).all(|skip| {
                        let face: Vec<usize> = t
                            .iter()
                            .enumerate()
                            .filter(|&(p, _)| p != skip)
                            .map(|(_, &x)| x)
                            .collect();
                        self.contains_cone(&face)
                    });
                    if minimal {
                        non_faces.push(t);
                    }
                }
            }
        }
        let width = self.ambient_len().saturating_sub(1);
        let relations = (0..width)
            .map(|i| {
                self.rays()
                    .iter()
                    .map(|r| r.vector.quotient_coords()[i])
                    .collect()
            })
            .collect();
        ChowPresentation {
            generators,
            non_faces,
            relations,
            unimodular: self.is_unimodular(),
        }
    }

    /// Degree of the monomial ∏ x_ρ over a multiset of `dim()` rays, computed in the
    /// presentation alone: repeated generators are rewritten through linear relations
    /// until every monomial is squarefree.
    pub fn chow_degree(&self, rays: &[usize]) -> Result<i64> {
        if rays.len() != self.dim() {
            return Err(Error::WrongDegree {
                expected: self.dim(),
                got: rays.len(),
            });
        }
        if let Some(&bad) = rays.iter().find(|&&r| r >= self.rays().len()) {
            return Err(Error::InvalidArgument(format!("ray index {bad} out of range")));
        }
        if !self.is_unimodular() {
            return Err(Error::InvalidArgument("fan is not unimodular".into()));
        }
        let mut key = rays.to_vec();
        key.sort_unstable();
        let memo = RefCell::new(HashMap::new());
        let value = self.degree_rec(key, &memo)?;
        value
            .to_integer()
            .to_i64()
            .filter(|_| value.is_integer())
            .ok_or_else(|| Error::Inconsistent(format!("non-integral degree {value}")))
    }

    fn degree_rec(
        &self,
        rays: Vec<usize>,
        memo: &RefCell<HashMap<Vec<usize>, BigRational>>,
    ) -> Result<BigRational> {
        if let Some(v) = memo.borrow().get(&rays) {
            return Ok(v.clone());
        }
        let mut support = rays.clone();
        support.dedup();
        let value = if !self.contains_cone(&support) {
            BigRational::zero()
        } else if support.len() == rays.len() {
            BigRational::from_integer(BigInt::from(1))
        } else {
            let a = *rays
                .windows(2)
                .find(|w| w[0] == w[1])
                .map(|w| &w[0])
                .expect("a repeated ray exists");
            // covector m with m(𝟙) = 0, m(v_a) = 1 and m = 0 on the rest of the support
            let rows = self.generator_rows(&support);
            let target: Vec<BigRational> = support
                .iter()
                .map(|&r| BigRational::from_integer(BigInt::from((r == a) as i64)))
                .collect();
            let m = linalg::solve(&linalg::to_rational(&rows), &target).ok_or_else(|| {
                Error::Inconsistent("cone generators are linearly dependent".into())
            })?;
            let pos = rays.iter().position(|&r| r == a).expect("a occurs");
            let mut acc = BigRational::zero();
            for (rho, ray) in self.rays().iter().enumerate() {
                if rho == a || support.binary_search(&rho).is_ok() {
                    continue;
                }
                let coeff: BigRational = ray
                    .vector
                    .quotient_coords()
                    .iter()
                    .zip(&m)
                    .map(|(&x, y)| y * BigInt::from(x))
                    .sum();
                if coeff.is_zero() {
                    continue;
                }
                let mut next = rays.clone();
                next[pos] = rho;
                next.sort_unstable();
                acc -= coeff * self.degree_rec(next, memo)?;
            }
            acc
        };
        memo.borrow_mut().insert(rays, value.clone());
        Ok(value)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn k4() -> Matroid {
        Matroid::complete_graph(4).unwrap()
    }

    #[test]
    fn maximal_flags_have_degree_one() {
        for m in [k4(), Matroid::projective_geometry(2, 2).unwrap(), Matroid::uniform(4, 5).unwrap()] {
            for mono in m.maximal_flag_monomials() {
                assert_eq!(m.eur_degree(&mono).unwrap(), Degree::Value(1));
            }
        }
    }

    #[test]
    fn k4_squares() {
        let m = k4();
        let e = m.ground().set_of(&["12"]).unwrap();
        assert_eq!(m.eur_degree(&FlagMonomial::new([(e, 2)])).unwrap(), Degree::Value(-2));
        let t = m.ground().set_of(&["12", "13", "23"]).unwrap();
        assert_eq!(m.eur_degree(&FlagMonomial::new([(t, 2)])).unwrap(), Degree::Value(-1));
        let pair = m.ground().set_of(&["12", "34"]).unwrap();
        assert_eq!(m.eur_degree(&FlagMonomial::new([(pair, 2)])).unwrap(), Degree::Value(-1));
        let f = m.ground().set_of(&["13"]).unwrap();
        assert_eq!(m.eur_degree(&FlagMonomial::product(&[e, f])).unwrap(), Degree::NonFace);
        assert!(matches!(
            m.eur_degree(&FlagMonomial::new([(e, 1)])),
            Err(Error::WrongDegree { expected: 2, got: 1 })
        ));
    }

    #[test]
    fn eur_agrees_with_presentation_on_fine_fans() {
        for m in [k4(), Matroid::uniform(3, 4).unwrap(), Matroid::projective_geometry(2, 2).unwrap()] {
            let fan = m.fine_fan().unwrap();
            let d = fan.dim();
            let n = fan.rays().len();
            for a in 0..n {
                for b in a..n {
                    let mono = FlagMonomial::product(&[fan.ray(a).flat.unwrap(), fan.ray(b).flat.unwrap()]);
                    let mono = if a == b { FlagMonomial::new([(fan.ray(a).flat.unwrap(), 2)]) } else { mono };
                    assert_eq!(d, 2);
                    assert_eq!(m.eur_degree(&mono).unwrap().value(), fan.chow_degree(&[a, b]).unwrap());
                }
            }
        }
    }

    #[test]
    fn relations_annihilate_top_degree() {
        let m = k4();
        for f in m.flats().of_rank(1) {
            let partial = FlagMonomial::new([(*f, 1)]);
            for i in 0..6 {
                for j in 0..6 {
                    assert!(m.relation_annihilation_check(&partial, i, j).unwrap());
                }
            }
        }
    }

    #[test]
    fn coarse_closed_forms_match_presentation() {
        let m = k4();
        let fan = m.coarse_fan().unwrap();
        for a in 0..fan.rays().len() {
            for b in a..fan.rays().len() {
                let (fa, fb) = (fan.ray(a).flat.unwrap(), fan.ray(b).flat.unwrap());
                assert_eq!(
                    m.coarse_rank3_degree(fa, fb).unwrap(),
                    fan.chow_degree(&[a, b]).unwrap(),
                    "{fa:?} {fb:?}"
                );
            }
        }
    }

    #[test]
    fn presentations() {
        let u = Matroid::uniform(2, 3).unwrap();
        let p = u.fine_fan().unwrap().chow_presentation();
        assert_eq!(p.generators.len(), 3);
        assert_eq!(p.non_faces, vec![vec![0, 1], vec![0, 2], vec![1, 2]]);
        assert_eq!(p.relations.len(), 2);
        let fine = k4().fine_fan().unwrap().chow_presentation();
        assert_eq!((fine.generators.len(), fine.relations.len()), (13, 5));
        let nested = k4().nested_fan().unwrap();
        let pres = nested.chow_presentation();
        let flats: Vec<ElementSet> = nested.rays().iter().map(|r| r.flat.unwrap()).collect();
        let pairs: Vec<Vec<usize>> = pres.non_faces.iter().filter(|t| t.len() == 2).cloned().collect();
        for a in 0..flats.len() {
            for b in a + 1..flats.len() {
                assert_eq!(pairs.contains(&vec![a, b]), !k4().is_nested(&[flats[a], flats[b]]));
            }
        }
        assert!(pres.non_faces.iter().all(|t| t.len() == 2));
    }
}
