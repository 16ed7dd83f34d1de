use bergmankit::fan::{Fan, QuotientVector};
use bergmankit::{GroupTable, Matroid};
use proptest::prelude::*;

fn connected_corpus() -> Vec<Matroid> {
    let u = Matroid::uniform(2, 3).unwrap();
    vec![
        u.clone(),
        Matroid::uniform(2, 4).unwrap(),
        Matroid::uniform(3, 4).unwrap(),
        Matroid::complete_graph(4).unwrap(),
        Matroid::projective_geometry(2, 2).unwrap(),
        Matroid::dowling(3, GroupTable::cyclic(2).unwrap()).unwrap(),
        Matroid::parallel_connection(&u, &u, "2", "0").unwrap(),
    ]
}

fn structures(m: &Matroid) -> Vec<Fan> {
    let mut fans = vec![m.fine_fan().unwrap(), m.nested_fan().unwrap()];
    if m.is_simple() {
        fans.push(m.coarse_fan().unwrap());
    }
    fans
}

#[test]
fn every_structure_samples_into_the_support() {
    for m in connected_corpus() {
        for fan in structures(&m) {
            for (k, cone) in fan.maximal_cones().iter().enumerate() {
                for x in fan.sample_cone(cone, 4, k as u64) {
                    assert!(m.bergman_contains(&x), "{} {x:?}", fan.structure());
                }
            }
        }
    }
}

#[test]
fn every_structure_has_the_fine_dimension() {
    for m in connected_corpus() {
        let d = m.full_rank() - 1;
        for fan in structures(&m) {
            assert!(fan.is_pure());
            assert_eq!(fan.dim(), d, "{}", fan.structure());
        }
    }
}

#[test]
fn coarse_rays_have_rank_or_corank_one() {
    let u = Matroid::uniform(2, 3).unwrap();
    for m in [
        Matroid::complete_graph(4).unwrap(),
        Matroid::uniform(3, 4).unwrap(),
        Matroid::parallel_connection(&u, &u, "2", "0").unwrap(),
    ] {
        let r = m.full_rank();
        for ray in m.coarse_fan().unwrap().rays() {
            let f = ray.vector.as_indicator().expect("coarse rays are indicators");
            let rank = m.rank(f);
            assert!(rank == 1 || rank + 1 == r, "{:?}", m.ground().names(f));
        }
    }
}

fn point(n: usize) -> impl Strategy<Value = QuotientVector> {
    prop::collection::vec(-3i64..=3, n).prop_map(QuotientVector::new)
}

proptest! {
    #[test]
    fn membership_agrees_with_fine_cones(idx in 0usize..7, raw in point(15)) {
        let corpus = connected_corpus();
        let m = &corpus[idx % corpus.len()];
        let fan = m.fine_fan().unwrap();
        let x = QuotientVector::new(raw.coords()[..m.n()].to_vec());
        prop_assert_eq!(m.bergman_contains(&x), fan.locate(&x).is_some());
    }

    #[test]
    fn perturbed_ray_sums_leave_the_support(idx in 0usize..7, e in 0usize..15, c in 1i64..4) {
        let corpus = connected_corpus();
        let m = &corpus[idx % corpus.len()];
        let fan = m.fine_fan().unwrap();
        let top = &fan.maximal_cones()[0];
        let mut x = QuotientVector::zero(m.n());
        for &r in top {
            x = x.add(&fan.ray(r).vector.scale(10));
        }
        let mut coords = x.coords().to_vec();
        coords[e % m.n()] += c;
        let y = QuotientVector::new(coords);
        prop_assert_eq!(m.bergman_contains(&y), fan.locate(&y).is_some());
    }
}
