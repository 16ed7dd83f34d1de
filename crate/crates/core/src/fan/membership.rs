use super::QuotientVector;
use crate::bitset::ElementSet;
use crate::matroid::Matroid;

/// The minimum of `x` over `c` is attained at least twice.
pub(crate) fn min_attained_twice(x: &[i64], c: ElementSet) -> bool {
    let mut min = i64::MAX;
    let mut count = 0;
    for i in c {
        match x[i].cmp(&min) {
            std::cmp::Ordering::Less => {
                min = x[i];
                count = 1;
            }
            std::cmp::Ordering::Equal => count += 1,
            std::cmp::Ordering::Greater => {}
        }
    }
    count >= 2
}

impl Matroid {
    /// x ∈ B(M): on every circuit the minimum coordinate is attained at least twice.
    pub fn bergman_contains(&self, x: &QuotientVector) -> bool {
        assert_eq!(x.len(), self.n(), "point has the wrong number of coordinates");
        self.circuits()
            .iter()
            .all(|&c| min_attained_twice(x.coords(), c))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn triangle_membership() {
        let u = Matroid::uniform(2, 3).unwrap();
        assert!(u.bergman_contains(&QuotientVector::new(vec![1, 0, 0])));
        assert!(!u.bergman_contains(&QuotientVector::new(vec![2, 1, 0])));
    }

    #[test]
    fn flats_are_exactly_the_indicators_in_the_fan() {
        for m in [
            Matroid::complete_graph(4).unwrap(),
            Matroid::projective_geometry(2, 2).unwrap(),
            Matroid::uniform(3, 4).unwrap(),
        ] {
            for s in m.full().subsets() {
                let v = QuotientVector::indicator(m.n(), s);
                assert_eq!(m.bergman_contains(&v), m.is_flat(s), "{s:?}");
            }
        }
    }
}
