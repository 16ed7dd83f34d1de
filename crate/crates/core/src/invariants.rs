//! Characteristic polynomials, beta invariants and the wedge-space dimensions of the
//! Bergman fan that recover the coefficients of the reduced polynomial.

use std::collections::HashMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::bitset::{subsets_of_size, ElementSet};
use crate::error::{Error, Result};
use crate::fan::Fan;
use crate::linalg::{self, RowSpace};
use crate::matroid::Matroid;

/// Integer polynomial, coefficients from the constant term up, without trailing zeros.
#[derive(Clone, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(into = "Vec<i64>", from = "Vec<i64>")]
pub struct IntPolynomial(Vec<i64>);

impl From<Vec<i64>> for IntPolynomial {
    fn from(v: Vec<i64>) -> Self {
        IntPolynomial::new(v)
    }
}

impl From<IntPolynomial> for Vec<i64> {
    fn from(p: IntPolynomial) -> Self {
        p.0
    }
}

impl IntPolynomial {
    pub fn new(mut coeffs: Vec<i64>) -> Self {
        while coeffs.last() == Some(&0) {
            coeffs.pop();
        }
        IntPolynomial(coeffs)
    }

    pub fn zero() -> Self {
        IntPolynomial(Vec::new())
    }

    pub fn one() -> Self {
        IntPolynomial(vec![1])
    }

    /// t - a.
    pub fn linear(a: i64) -> Self {
        IntPolynomial(vec![-a, 1])
    }

    /// c t^k.
    pub fn monomial(c: i64, k: usize) -> Self {
        let mut v = vec![0; k + 1];
        v[k] = c;
        IntPolynomial::new(v)
    }

    pub fn coeffs(&self) -> &[i64] {
        &self.0
    }

    pub fn coeff(&self, k: usize) -> i64 {
        self.0.get(k).copied().unwrap_or(0)
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.0.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn eval(&self, t: i64) -> i64 {
        self.0.iter().rev().fold(0, |acc, &c| acc * t + c)
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.0.len().max(other.0.len());
        IntPolynomial::new((0..n).map(|k| self.coeff(k) + other.coeff(k)).collect())
    }

    pub fn sub(&self, other: &Self) -> Self {
        let n = self.0.len().max(other.0.len());
        IntPolynomial::new((0..n).map(|k| self.coeff(k) - other.coeff(k)).collect())
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return IntPolynomial::zero();
        }
        let mut out = vec![0; self.0.len() + other.0.len() - 1];
        for (i, &a) in self.0.iter().enumerate() {
            for (j, &b) in other.0.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        IntPolynomial::new(out)
    }

    /// Exact quotient by `t - a`; fails when `a` is not a root.
    pub fn div_linear(&self, a: i64) -> Result<Self> {
        if self.is_zero() {
            return Ok(IntPolynomial::zero());
        }
        let n = self.0.len();
        let mut q = vec![0; n - 1];
        let mut carry = 0;
        for k in (1..n).rev() {
            carry = self.0[k] + carry * a;
            q[k - 1] = carry;
        }
        if self.0[0] + carry * a != 0 {
            return Err(Error::Inconsistent(format!("{a} is not a root of {self}")));
        }
        Ok(IntPolynomial::new(q))
    }

    /// Exact quotient by `(t - a)^k`.
    pub fn div_linear_pow(&self, a: i64, k: usize) -> Result<Self> {
        (0..k).try_fold(self.clone(), |p, _| p.div_linear(a))
    }
}

impl fmt::Display for IntPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (k, &c) in self.0.iter().enumerate().rev() {
            if c == 0 {
                continue;
            }
            let sign = if c < 0 { "-" } else { "+" };
            if first {
                if c < 0 {
                    f.write_str("-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            first = false;
            let a = c.unsigned_abs();
            match (k, a) {
                (0, _) => write!(f, "{a}")?,
                (1, 1) => f.write_str("t")?,
                (1, _) => write!(f, "{a}t")?,
                (_, 1) => write!(f, "t^{k}")?,
                _ => write!(f, "{a}t^{k}")?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for IntPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// Unsigned coefficients μ^0, …, μ^{r-1} of a reduced characteristic polynomial of a
/// rank-`r` matroid.
pub fn unsigned_coefficients(reduced: &IntPolynomial, rank: usize) -> Vec<i64> {
    (0..rank)
        .map(|k| {
            let c = reduced.coeff(rank - 1 - k);
            if k % 2 == 0 {
                c
            } else {
                -c
            }
        })
        .collect()
}

/// The size cap for wedge-space matrices: `BERGMANKIT_SIZE_CAP` if set, else 10^6.
pub fn size_cap() -> u128 {
    std::env::var("BERGMANKIT_SIZE_CAP")
        .ok()
        .and_then(|s| s.trim().parse().ok())
        .unwrap_or(1_000_000)
}

fn binomial(n: usize, k: usize) -> u128 {
    if k > n {
        return 0;
    }
    (0..k).fold(1u128, |acc, i| acc * (n - i) as u128 / (i + 1) as u128)
}

/// dim of the span of g_1 ∧ ⋯ ∧ g_p over the given `p`-element ray sets, in Plücker
/// coordinates with respect to the quotient basis.
pub fn wedge_span_dimension<'a>(
    fan: &Fan,
    faces: impl IntoIterator<Item = &'a [usize]>,
    p: usize,
) -> usize {
    let width = fan.ambient_len().saturating_sub(1);
    if p == 0 {
        return 1;
    }
    let columns: Vec<Vec<usize>> = subsets_of_size(width, p)
        .map(|s| s.iter().collect())
        .collect();
    let mut space = RowSpace::new(columns.len());
    for face in faces {
        debug_assert_eq!(face.len(), p);
        let rows = fan.generator_rows(face);
        let plucker: Vec<i64> = columns
            .iter()
            .map(|cols| {
                let minor: Vec<Vec<i64>> = rows
                    .iter()
                    .map(|r| cols.iter().map(|&c| r[c]).collect())
                    .collect();
                linalg::small_determinant(&minor)
            })
            .collect();
        space.insert(&plucker);
        if space.rank() == columns.len() {
            break;
        }
    }
    space.rank()
}

/// Dimension of the span of the p-th wedge powers of the cones of B(M).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WedgeSpaceReport {
    pub p: usize,
    pub dimension: usize,
    pub ambient: u128,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OsRow {
    pub p: usize,
    pub mu: i64,
    pub wedge_dim: usize,
    pub matches: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OsReport {
    pub reduced: IntPolynomial,
    pub rows: Vec<OsRow>,
}

impl OsReport {
    pub fn all_match(&self) -> bool {
        self.rows.iter().all(|r| r.matches)
    }
}

impl Matroid {
    /// μ(lower, F) for every flat `F` of the interval `[lower, upper]`, by increasing rank.
    fn mobius_on(&self, lower: ElementSet, upper: ElementSet) -> Vec<(ElementSet, i64)> {
        let flats = self.flats().interval(lower, upper);
        let mut mu: Vec<(ElementSet, i64)> = Vec::with_capacity(flats.len());
        for &f in &flats {
            let value = if f == lower {
                1
            } else {
                -mu.iter()
                    .filter(|(g, _)| g.is_subset(f))
                    .map(|&(_, m)| m)
                    .sum::<i64>()
            };
            mu.push((f, value));
        }
        mu
    }

    /// χ of `M|upper / lower` for flats `lower ⊆ upper`, read off the flats of M.
    pub fn interval_characteristic_polynomial(
        &self,
        lower: ElementSet,
        upper: ElementSet,
    ) -> Result<IntPolynomial> {
        let lat = self.flats();
        let (Some(lo), Some(hi)) = (lat.rank_of(lower), lat.rank_of(upper)) else {
            return Err(Error::InvalidArgument("interval ends must be flats".into()));
        };
        if !lower.is_subset(upper) {
            return Err(Error::InvalidArgument("interval is empty".into()));
        }
        Ok(self
            .mobius_on(lower, upper)
            .into_iter()
            .fold(IntPolynomial::zero(), |acc, (f, m)| {
                acc.add(&IntPolynomial::monomial(m, hi - lat.rank_of(f).unwrap_or(lo)))
            }))
    }

    /// χ_M(t) = Σ_F μ(cl(∅), F) t^{r(M) - r(F)}.
    pub fn characteristic_polynomial(&self) -> Result<IntPolynomial> {
        self.require_loop_free()?;
        self.interval_characteristic_polynomial(ElementSet::empty(), self.full())
    }

    /// χ_M computed by deletion and contraction, independently of the lattice of flats.
    pub fn characteristic_polynomial_by_deletion(&self) -> Result<IntPolynomial> {
        self.require_loop_free()?;
        let mut memo = HashMap::new();
        Ok(self.chi_minor(ElementSet::empty(), ElementSet::empty(), &mut memo))
    }

    // χ of M \ deleted / contracted
    fn chi_minor(
        &self,
        deleted: ElementSet,
        contracted: ElementSet,
        memo: &mut HashMap<(ElementSet, ElementSet), IntPolynomial>,
    ) -> IntPolynomial {
        let rest = self.full() - deleted - contracted;
        let Some(e) = rest.min_element() else {
            return IntPolynomial::one();
        };
        if let Some(p) = memo.get(&(deleted, contracted)) {
            return p.clone();
        }
        let rc = self.rank(contracted);
        let out = if self.rank(contracted.with(e)) == rc {
            IntPolynomial::zero()
        } else if self.rank(self.full() - deleted - ElementSet::singleton(e))
            < self.rank(self.full() - deleted)
        {
            IntPolynomial::linear(1).mul(&self.chi_minor(deleted, contracted.with(e), memo))
        } else {
            self.chi_minor(deleted.with(e), contracted, memo)
                .sub(&self.chi_minor(deleted, contracted.with(e), memo))
        };
        memo.insert((deleted, contracted), out.clone());
        out
    }

    /// χ̃_M = χ_M / (t - 1).
    pub fn reduced_characteristic_polynomial(&self) -> Result<IntPolynomial> {
        if self.full_rank() == 0 {
            return Err(Error::InvalidArgument(
                "rank-0 matroids have no reduced characteristic polynomial".into(),
            ));
        }
        self.characteristic_polynomial()?.div_linear(1)
    }

    /// Reduced polynomial of `M|upper / lower` for flats `lower ⊊ upper`.
    pub fn interval_reduced(&self, lower: ElementSet, upper: ElementSet) -> Result<IntPolynomial> {
        if lower == upper {
            return Err(Error::InvalidArgument("empty interval minor".into()));
        }
        self.interval_characteristic_polynomial(lower, upper)?
            .div_linear(1)
    }

    /// Unsigned coefficients μ^0(M), …, μ^{r-1}(M).
    pub fn mu_vector(&self) -> Result<Vec<i64>> {
        Ok(unsigned_coefficients(
            &self.reduced_characteristic_polynomial()?,
            self.full_rank(),
        ))
    }

    /// μ^k(M); zero outside `0..r(M)`.
    pub fn mu(&self, k: usize) -> Result<i64> {
        Ok(self.mu_vector()?.get(k).copied().unwrap_or(0))
    }

    /// μ^k(M|upper / lower) for flats `lower ⊊ upper`.
    pub fn interval_mu(&self, lower: ElementSet, upper: ElementSet, k: usize) -> Result<i64> {
        let r = self.rank(upper) - self.rank(lower);
        let coeffs = unsigned_coefficients(&self.interval_reduced(lower, upper)?, r);
        Ok(coeffs.get(k).copied().unwrap_or(0))
    }

    /// β(M) = (-1)^{r-1} χ̃_M(1).
    pub fn beta(&self) -> Result<i64> {
        let value = self.reduced_characteristic_polynomial()?.eval(1);
        Ok(if (self.full_rank() - 1) % 2 == 0 { value } else { -value })
    }

    /// β(M|upper / lower) for flats `lower ⊊ upper`.
    pub fn interval_beta(&self, lower: ElementSet, upper: ElementSet) -> Result<i64> {
        let r = self.rank(upper) - self.rank(lower);
        let value = self.interval_reduced(lower, upper)?.eval(1);
        Ok(if (r - 1) % 2 == 0 { value } else { -value })
    }

    /// dim Σ_σ ⋀^p ⟨σ⟩ inside ⋀^p (R^E / R𝟙), over the cones of the fine fan, subject to
    /// [`size_cap`].
    pub fn os_dimension(&self, p: usize) -> Result<WedgeSpaceReport> {
        self.os_dimension_with_cap(p, size_cap())
    }

    pub fn os_dimension_with_cap(&self, p: usize, cap: u128) -> Result<WedgeSpaceReport> {
        self.require_loop_free()?;
        let width = self.n().saturating_sub(1);
        let ambient = binomial(width, p);
        if p == 0 {
            return Ok(WedgeSpaceReport {
                p,
                dimension: 1,
                ambient,
            });
        }
        if ambient > cap {
            return Err(Error::SizeCapExceeded { size: ambient, cap });
        }
        let fan = self.fine_fan()?;
        let cones = fan.cones_of_dim(p);
        let size = ambient * cones.len() as u128;
        if size > cap {
            return Err(Error::SizeCapExceeded { size, cap });
        }
        let dimension = wedge_span_dimension(&fan, cones.iter().map(Vec::as_slice), p);
        Ok(WedgeSpaceReport {
            p,
            dimension,
            ambient,
        })
    }

    /// Compares μ^p(M) with the wedge-space dimension for every `p < r(M)`.
    pub fn verify_os_identity(&self) -> Result<OsReport> {
        let reduced = self.reduced_characteristic_polynomial()?;
        let mu = unsigned_coefficients(&reduced, self.full_rank());
        let rows = mu
            .iter()
            .enumerate()
            .map(|(p, &m)| {
                let wedge_dim = self.os_dimension(p)?.dimension;
                Ok(OsRow {
                    p,
                    mu: m,
                    wedge_dim,
                    matches: m == wedge_dim as i64,
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(OsReport { reduced, rows })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn polynomial_arithmetic() {
        let p = IntPolynomial::new(vec![6, -5, 1]);
        assert_eq!(p.to_string(), "t^2 - 5t + 6");
        assert_eq!(p.div_linear(2).unwrap(), IntPolynomial::linear(3));
        assert!(p.div_linear(1).is_err());
        assert_eq!(p.eval(1), 2);
        assert_eq!(IntPolynomial::new(vec![0, 0]).degree(), None);
        let cube = IntPolynomial::linear(1).mul(&IntPolynomial::linear(1)).mul(&IntPolynomial::linear(1));
        assert_eq!(cube.div_linear_pow(1, 3).unwrap(), IntPolynomial::one());
    }

    #[test]
    fn k4_polynomials() {
        let k4 = Matroid::complete_graph(4).unwrap();
        let chi = k4.characteristic_polynomial().unwrap();
        assert_eq!(chi, k4.characteristic_polynomial_by_deletion().unwrap());
        let reduced = k4.reduced_characteristic_polynomial().unwrap();
        assert_eq!(reduced, IntPolynomial::new(vec![6, -5, 1]));
        assert_eq!(k4.mu_vector().unwrap(), vec![1, 5, 6]);
        assert_eq!(k4.beta().unwrap(), 2);
    }

    #[test]
    fn small_cases() {
        let u23 = Matroid::uniform(2, 3).unwrap();
        assert_eq!(u23.reduced_characteristic_polynomial().unwrap(), IntPolynomial::linear(2));
        assert_eq!(u23.mu_vector().unwrap(), vec![1, 2]);
        assert_eq!(u23.beta().unwrap(), 1);
        assert_eq!(Matroid::uniform(2, 2).unwrap().beta().unwrap(), 0);
        let with_loop = Matroid::uniform(0, 1).unwrap().direct_sum(&u23).unwrap();
        assert!(matches!(with_loop.characteristic_polynomial(), Err(Error::HasLoops(_))));
    }

    #[test]
    fn fano_mu() {
        let fano = Matroid::projective_geometry(2, 2).unwrap();
        assert_eq!(fano.mu_vector().unwrap(), vec![1, 6, 8]);
        let report = fano.verify_os_identity().unwrap();
        assert!(report.all_match(), "{report:?}");
    }

    #[test]
    fn wedge_dimensions() {
        let k4 = Matroid::complete_graph(4).unwrap();
        assert_eq!(k4.os_dimension(1).unwrap().dimension, 5);
        assert_eq!(k4.os_dimension(2).unwrap().dimension, 6);
        assert_eq!(Matroid::uniform(3, 3).unwrap().os_dimension(2).unwrap().dimension, 1);
        assert!(matches!(
            k4.os_dimension_with_cap(2, 5),
            Err(Error::SizeCapExceeded { .. })
        ));
    }

    #[test]
    fn interval_invariants_match_built_minors() {
        let k5 = Matroid::complete_graph(5).unwrap();
        let lat = k5.flats();
        for f in lat.iter() {
            for g in lat.iter().filter(|&g| f.is_subset(g) && f != g) {
                let minor = k5.interval_minor(f, g).unwrap();
                assert_eq!(
                    k5.interval_characteristic_polynomial(f, g).unwrap(),
                    minor.characteristic_polynomial_by_deletion().unwrap()
                );
                assert_eq!(k5.interval_beta(f, g).unwrap(), minor.beta().unwrap());
            }
        }
    }

    proptest! {
        #[test]
        fn mobius_matches_deletion_on_random_linear(cols in proptest::collection::vec(proptest::collection::vec(0u64..3, 3), 4..8)) {
            let m = Matroid::linear(3, cols);
            prop_assume!(m.is_ok());
            let m = m.unwrap();
            prop_assume!(m.is_loop_free());
            prop_assert_eq!(m.characteristic_polynomial().unwrap(), m.characteristic_polynomial_by_deletion().unwrap());
            let mu = m.mu_vector().unwrap();
            prop_assert_eq!(mu[0], 1);
        }
    }
}
