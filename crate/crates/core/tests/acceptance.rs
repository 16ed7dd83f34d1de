use std::process::ExitCode;
use std::time::{Duration, Instant};

use bergmankit::chow::{Degree, FlagMonomial};
use bergmankit::fan::QuotientVector;
use bergmankit::maps::{
    group_closure_order, preserves_support, ray_permutation, verify_fan_isomorphism, LatticeMap,
};
use bergmankit::{ElementSet, Error, GroupTable, IntPolynomial, Matroid};

type Outcome = Result<(), String>;
type Criterion = (&'static str, fn() -> Outcome);

fn corpus() -> Vec<(&'static str, Matroid)> {
    let u23 = Matroid::uniform(2, 3).unwrap();
    vec![
        ("U23", u23.clone()),
        ("U24", Matroid::uniform(2, 4).unwrap()),
        ("U34", Matroid::uniform(3, 4).unwrap()),
        ("U33", Matroid::uniform(3, 3).unwrap()),
        ("U44", Matroid::uniform(4, 4).unwrap()),
        ("K4", Matroid::complete_graph(4).unwrap()),
        ("K5", Matroid::complete_graph(5).unwrap()),
        ("Fano", Matroid::projective_geometry(2, 2).unwrap()),
        ("PG(3,2)", Matroid::projective_geometry(3, 2).unwrap()),
        ("Dowling(3,Z2)", dowling()),
        ("P(U23,U23)", glued()),
    ]
}

fn dowling() -> Matroid {
    Matroid::dowling(3, GroupTable::cyclic(2).unwrap()).unwrap()
}

fn glued() -> Matroid {
    let u = Matroid::uniform(2, 3).unwrap();
    Matroid::parallel_connection(&u, &u, "2", "0").unwrap()
}

fn k4() -> Matroid {
    Matroid::complete_graph(4).unwrap()
}

fn ensure(ok: bool, why: impl FnOnce() -> String) -> Outcome {
    if ok {
        Ok(())
    } else {
        Err(why())
    }
}

fn within(start: Instant, limit: Duration) -> Outcome {
    let spent = start.elapsed();
    ensure(spent < limit, || format!("took {spent:?}, limit {limit:?}"))
}

fn err(e: Error) -> String {
    e.to_string()
}

fn charpoly_routes() -> Outcome {
    let start = Instant::now();
    for (name, m) in corpus() {
        let a = m.characteristic_polynomial().map_err(err)?;
        let b = m.characteristic_polynomial_by_deletion().map_err(err)?;
        ensure(a == b, || format!("{name}: {a} vs {b}"))?;
    }
    let m = k4();
    let reduced = m.reduced_characteristic_polynomial().map_err(err)?;
    ensure(reduced == IntPolynomial::new(vec![6, -5, 1]), || format!("K4 reduced {reduced}"))?;
    ensure(m.beta().map_err(err)? == 2, || "K4 beta".into())?;
    within(start, Duration::from_secs(5))
}

fn orlik_solomon() -> Outcome {
    let start = Instant::now();
    let mut required = vec!["K4", "K5", "Fano", "U34"];
    for (name, m) in corpus() {
        match m.verify_os_identity() {
            Ok(report) => {
                ensure(report.all_match(), || format!("{name}: {:?}", report.rows))?;
                required.retain(|r| *r != name);
            }
            Err(Error::SizeCapExceeded { .. }) => {}
            Err(e) => return Err(format!("{name}: {e}")),
        }
    }
    ensure(required.is_empty(), || format!("over the cap: {required:?}"))?;
    within(start, Duration::from_secs(60))
}

fn degree_normalization() -> Outcome {
    for (name, m) in corpus() {
        for mono in m.maximal_flag_monomials() {
            let d = m.eur_degree(&mono).map_err(err)?;
            ensure(d == Degree::Value(1), || format!("{name}: {mono:?} has degree {d:?}"))?;
        }
    }
    Ok(())
}

fn relation_annihilation() -> Outcome {
    for (name, m) in [("K4", k4()), ("U34", Matroid::uniform(3, 4).unwrap())] {
        for f in m.flats().proper().filter(|f| !f.is_empty()) {
            let partial = FlagMonomial::product(&[f]);
            for i in 0..m.n() {
                for j in 0..m.n() {
                    let ok = m.relation_annihilation_check(&partial, i, j).map_err(err)?;
                    ensure(ok, || format!("{name}: x_F = {f:?}, i = {i}, j = {j}"))?;
                }
            }
        }
    }
    Ok(())
}

fn coarse_rank3() -> Outcome {
    let m = k4();
    let fan = m.coarse_fan().map_err(err)?;
    let rays: Vec<ElementSet> = fan.rays().iter().map(|r| r.flat.expect("flat ray")).collect();
    for (a, &fa) in rays.iter().enumerate() {
        for (b, &fb) in rays.iter().enumerate() {
            let expected = match (fa.len(), fb.len()) {
                (1, 1) if a == b => Some(-1),
                (3, 3) if a == b => Some(-1),
                (3, 3) => Some(0),
                (1, 3) if fa.is_subset(fb) => Some(1),
                (3, 1) if fb.is_subset(fa) => Some(1),
                _ => None,
            };
            let Some(expected) = expected else { continue };
            let closed = m.coarse_rank3_degree(fa, fb).map_err(err)?;
            let presented = fan.chow_degree(&[a, b]).map_err(err)?;
            ensure(closed == expected && presented == expected, || {
                format!("{fa:?}·{fb:?}: closed {closed}, presentation {presented}, want {expected}")
            })?;
        }
    }
    Ok(())
}

fn cremona_instances() -> Vec<(&'static str, Matroid)> {
    vec![
        ("K4", k4()),
        ("U34", Matroid::uniform(3, 4).unwrap()),
        ("Fano", Matroid::projective_geometry(2, 2).unwrap()),
        ("Dowling(3,Z2)", dowling()),
    ]
}

fn cremona_iff_support() -> Outcome {
    for (name, m) in cremona_instances() {
        let mut passing = 0;
        for b in m.bases() {
            let holds = m.cremona_criterion(b).map_err(err)?.holds;
            let map = m.cremona_map_unchecked(b).map_err(err)?;
            let preserves = preserves_support(&map, &m, &[&m], 3, 11).map_err(err)?.passes();
            ensure(holds == preserves, || {
                format!("{name} {:?}: criterion {holds}, support {preserves}", m.ground().names(b))
            })?;
            passing += holds as usize;
        }
        if name == "Fano" {
            ensure(passing == 0, || format!("Fano has {passing} passing bases"))?;
        }
    }
    let d = dowling();
    let b = d.ground().set_of(&["b_1", "b_2", "b_3"]).map_err(err)?;
    ensure(d.cremona_criterion(b).map_err(err)?.holds, || "Dowling joints fail".into())
}

fn cremona_involution() -> Outcome {
    for (name, m) in cremona_instances() {
        for b in m.cremona_bases().map_err(err)? {
            let map = m.cremona_map(b).map_err(err)?;
            ensure(map.is_involution().map_err(err)?, || {
                format!("{name} {:?} is not an involution", m.ground().names(b))
            })?;
        }
    }
    Ok(())
}

fn star_cremona(m: &Matroid) -> Result<LatticeMap, String> {
    let b = m.ground().set_of(&["14", "24", "34"]).map_err(err)?;
    m.cremona_map(b).map_err(err)
}

fn braid_group() -> Outcome {
    let start = Instant::now();
    let m = k4();
    let fan = m.nested_fan().map_err(err)?;
    let mut gens = Vec::new();
    for f in m.automorphisms() {
        let map = LatticeMap::from_matroid_iso(&m, &m, &f).map_err(err)?;
        gens.push(ray_permutation(&map, &fan).map_err(err)?);
    }
    ensure(gens.len() == 24, || format!("{} automorphisms", gens.len()))?;
    gens.push(ray_permutation(&star_cremona(&m)?, &fan).map_err(err)?);
    let order = group_closure_order(&gens).map_err(err)?;
    ensure(order == 120, || format!("order {order}"))?;
    within(start, Duration::from_secs(10))
}

fn fine_coarse_gap() -> Outcome {
    let m = k4();
    let map = star_cremona(&m)?;
    let nested = m.nested_fan().map_err(err)?;
    let fine = m.fine_fan().map_err(err)?;
    let on_nested = verify_fan_isomorphism(&map, &nested, &nested);
    ensure(on_nested.is_isomorphism(), || format!("nested: {:?}", on_nested.failures))?;
    ensure(!verify_fan_isomorphism(&map, &fine, &fine).is_isomorphism(), || {
        "verifies on the fine fan".into()
    })
}

fn parallel_split() -> Outcome {
    let m = glued();
    let report = m.verify_parallel_split(60, 5).map_err(err)?;
    ensure(report.passes(50), || format!("{report:?}"))?;
    let p = m.gluing().expect("gluing data").point;
    let vp = QuotientVector::indicator(m.n(), ElementSet::singleton(p));
    let coarse = m.coarse_fan().map_err(err)?;
    ensure(coarse.ray_index(&vp).is_none(), || "v_p is a coarse ray".into())?;
    let contracted = m.contract(ElementSet::singleton(p)).map_err(err)?;
    ensure(!contracted.is_connected(), || "M/p is connected".into())
}

fn csm() -> Outcome {
    let m = k4();
    let fan = m.fine_fan().map_err(err)?;
    for k in 0..=2 {
        let w = m.csm_weights(&fan, k).map_err(err)?;
        for (c, &x) in w.cones.iter().zip(&w.weights) {
            let s = m.csm_weight_from_support(&fan, c).map_err(err)?;
            ensure(s == x, || format!("k = {k}, cone {c:?}: flag {x}, support {s}"))?;
        }
    }
    for (name, m) in [("K4", k4()), ("U34", Matroid::uniform(3, 4).unwrap())] {
        let fan = m.fine_fan().map_err(err)?;
        let d = m.full_rank() - 1;
        for k in 0..=d {
            let w = m.csm_weights(&fan, k).map_err(err)?;
            ensure(w.is_balanced(&fan), || format!("{name}: k = {k} unbalanced"))?;
        }
        let top = m.csm_weights(&fan, d).map_err(err)?;
        ensure(top.weights.iter().all(|&x| x == 1), || format!("{name}: top weights"))?;
    }
    Ok(())
}

fn totally_disconnected_items(m: &Matroid) -> Result<[bool; 4], String> {
    let d = m.full_rank() - 1;
    let fan = m.fine_fan().map_err(err)?;
    Ok([
        m.is_totally_disconnected(),
        m.has_no_large_circuit(),
        m.lineality_dim() == fan.dim(),
        m.mu(d).map_err(err)? == 1,
    ])
}

fn totally_disconnected() -> Outcome {
    let rank_one = |k: usize| Matroid::uniform(1, k).unwrap();
    let sums = [
        ("U12+U13", Matroid::direct_sum_of(&[rank_one(2), rank_one(3)]).map_err(err)?),
        ("U11+U12+U11", Matroid::direct_sum_of(&[rank_one(1), rank_one(2), rank_one(1)]).map_err(err)?),
    ];
    let yes = [
        ("U33", Matroid::uniform(3, 3).unwrap()),
        ("U44", Matroid::uniform(4, 4).unwrap()),
    ];
    for (name, m) in yes.iter().chain(&sums) {
        let items = totally_disconnected_items(m)?;
        ensure(items == [true; 4], || format!("{name}: {items:?}"))?;
    }
    let items = totally_disconnected_items(&k4())?;
    ensure(items == [false; 4], || format!("K4: {items:?}"))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 12] = [
        ("characteristic polynomial routes agree", charpoly_routes),
        ("mu^p equals wedge-space dimension", orlik_solomon),
        ("maximal flag monomials have degree 1", degree_normalization),
        ("linear relations annihilate degrees", relation_annihilation),
        ("rank-3 coarse degrees on K4", coarse_rank3),
        ("Cremona criterion iff support preserved", cremona_iff_support),
        ("passing Cremona maps are involutions", cremona_involution),
        ("braid automorphism group has order 120", braid_group),
        ("star Cremona: nested yes, fine no", fine_coarse_gap),
        ("parallel connection splitting", parallel_split),
        ("CSM routes, balancing, top weight", csm),
        ("totally disconnected equivalences", totally_disconnected),
    ];
    let mut failed = 0;
    for (k, (what, check)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = check();
        let time = start.elapsed().as_secs_f64();
        match outcome {
            Ok(()) => println!("criterion {:>2}: PASS  {what} ({time:.2}s)", k + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {:>2}: FAIL  {what} ({time:.2}s): {why}", k + 1);
            }
        }
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
