use std::collections::HashSet;

use super::{Gluing, GroupTable, Matroid, MatroidFile, Oracle, Recipe};
use crate::bitset::ElementSet;
use crate::error::{Error, Result};

/// Element of a Dowling geometry: a joint `b_i` or an edge `g_ij` with gain `g` read from
/// `i` to `j` (`i < j`, both 0-based).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DowlingElement {
    Joint(usize),
    Edge { i: usize, j: usize, gain: usize },
}

/// Edges of the complete graph on `n` vertices in lexicographic order.
pub fn complete_graph_edges(n: usize) -> Vec<(usize, usize)> {
    (0..n)
        .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
        .collect()
}

fn index_labels(n: usize) -> Vec<String> {
    (0..n).map(|i| i.to_string()).collect()
}

/// Appends primes to repeated labels until all are distinct.
fn disambiguate(labels: Vec<String>) -> Vec<String> {
    let mut seen = HashSet::new();
    labels
        .into_iter()
        .map(|mut l| {
            while !seen.insert(l.clone()) {
                l.push('\'');
            }
            l
        })
        .collect()
}

fn vertex_pair_label(a: usize, b: usize, short: bool) -> String {
    if short {
        format!("{a}{b}")
    } else {
        format!("{a}-{b}")
    }
}

pub(super) fn graphic_rank(vertices: usize, edges: &[(usize, usize)], s: ElementSet) -> usize {
    let mut parent: Vec<usize> = (0..vertices).collect();
    fn find(p: &mut [usize], mut x: usize) -> usize {
        while p[x] != x {
            p[x] = p[p[x]];
            x = p[x];
        }
        x
    }
    let mut r = 0;
    for e in s {
        let (a, b) = edges[e];
        let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
        if ra != rb {
            parent[ra] = rb;
            r += 1;
        }
    }
    r
}

fn pow_mod(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1;
    b %= p;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * b % p;
        }
        b = b * b % p;
        e >>= 1;
    }
    acc
}

pub(super) fn linear_rank(p: u64, columns: &[Vec<u64>], s: ElementSet) -> usize {
    let mut rows: Vec<Vec<u64>> = s.iter().map(|i| columns[i].clone()).collect();
    let width = columns.first().map_or(0, Vec::len);
    let mut rank = 0;
    for c in 0..width {
        let Some(piv) = (rank..rows.len()).find(|&i| rows[i][c] != 0) else {
            continue;
        };
        rows.swap(rank, piv);
        let inv = pow_mod(rows[rank][c], p - 2, p);
        for x in rows[rank].iter_mut() {
            *x = *x * inv % p;
        }
        for i in 0..rows.len() {
            if i != rank && rows[i][c] != 0 {
                let f = rows[i][c];
                for j in 0..width {
                    rows[i][j] = (rows[i][j] + p * p - f * rows[rank][j] % p) % p;
                }
            }
        }
        rank += 1;
        if rank == rows.len() {
            break;
        }
    }
    rank
}

/// `dim` minus the number of balanced components of the gain graph spanned by `s`.
/// Isolated vertices are balanced; a component containing a joint is not.
pub(super) fn dowling_rank(
    dim: usize,
    group: &GroupTable,
    elements: &[DowlingElement],
    s: ElementSet,
) -> usize {
    // adjacency: (neighbour, gain when travelling towards the neighbour)
    let mut adj: Vec<Vec<(usize, usize)>> = vec![Vec::new(); dim];
    let mut jointed = vec![false; dim];
    for e in s {
        match elements[e] {
            DowlingElement::Joint(i) => jointed[i] = true,
            DowlingElement::Edge { i, j, gain } => {
                adj[i].push((j, gain));
                adj[j].push((i, group.inv(gain)));
            }
        }
    }
    let mut potential: Vec<Option<usize>> = vec![None; dim];
    let mut balanced = 0;
    for start in 0..dim {
        if potential[start].is_some() {
            continue;
        }
        potential[start] = Some(group.identity());
        let mut ok = true;
        let mut stack = vec![start];
        while let Some(v) = stack.pop() {
            ok &= !jointed[v];
            let pv = potential[v].expect("visited vertices carry a potential");
            for &(w, g) in &adj[v] {
                let want = group.mul(pv, g);
                match potential[w] {
                    None => {
                        potential[w] = Some(want);
                        stack.push(w);
                    }
                    Some(pw) => ok &= pw == want,
                }
            }
        }
        if ok {
            balanced += 1;
        }
    }
    dim - balanced
}

fn is_prime(p: u64) -> bool {
    p >= 2 && (2..).take_while(|d| d * d <= p).all(|d| p % d != 0)
}

fn check_linear(prime: u64, columns: &mut [Vec<u64>]) -> Result<()> {
    if !is_prime(prime) || prime >= 1 << 31 {
        return Err(Error::InvalidArgument(format!(
            "{prime} is not a supported prime modulus"
        )));
    }
    let width = columns.first().map_or(0, Vec::len);
    for (k, c) in columns.iter_mut().enumerate() {
        if c.len() != width {
            return Err(Error::InvalidArgument(format!(
                "column {k} has length {}, expected {width}",
                c.len()
            )));
        }
        for x in c.iter_mut() {
            *x %= prime;
        }
        if c.iter().all(|&x| x == 0) {
            return Err(Error::InvalidArgument(format!("column {k} is zero")));
        }
    }
    Ok(())
}

impl Matroid {
    /// U_{r,n} on elements `0..n`.
    pub fn uniform(r: usize, n: usize) -> Result<Matroid> {
        if n == 0 || r > n {
            return Err(Error::InvalidArgument(format!(
                "uniform matroid needs 0 <= r <= n and n >= 1, got r={r}, n={n}"
            )));
        }
        Matroid::assemble(
            index_labels(n),
            Oracle::Uniform(r),
            Recipe::Uniform { rank: r, size: n },
            None,
        )
    }

    /// Cycle matroid of a graph. Edge labels use 1-based vertex numbers, e.g. `"14"`, or
    /// `"3-12"` once there are more than nine vertices.
    pub fn graphic(vertices: usize, edges: &[(usize, usize)]) -> Result<Matroid> {
        for &(a, b) in edges {
            if a >= vertices || b >= vertices {
                return Err(Error::InvalidArgument(format!(
                    "edge ({a}, {b}) out of range for {vertices} vertices"
                )));
            }
            if a == b {
                return Err(Error::InvalidArgument(format!("self-loop at vertex {a}")));
            }
        }
        let short = vertices <= 9;
        let labels = disambiguate(
            edges
                .iter()
                .map(|&(a, b)| vertex_pair_label(a.min(b) + 1, a.max(b) + 1, short))
                .collect(),
        );
        Matroid::assemble(
            labels,
            Oracle::Graphic {
                vertices,
                edges: edges.to_vec(),
            },
            Recipe::Graphic {
                vertices,
                edges: edges.iter().map(|&(a, b)| [a, b]).collect(),
            },
            None,
        )
    }

    /// Cycle matroid of K_n.
    pub fn complete_graph(n: usize) -> Result<Matroid> {
        Matroid::graphic(n, &complete_graph_edges(n))
    }

    /// Column matroid of a matrix over GF(prime).
    pub fn linear(prime: u64, mut columns: Vec<Vec<u64>>) -> Result<Matroid> {
        check_linear(prime, &mut columns)?;
        let recipe = Recipe::Linear {
            prime,
            columns: columns.clone(),
        };
        Matroid::assemble(
            index_labels(columns.len()),
            Oracle::Linear { prime, columns },
            recipe,
            None,
        )
    }

    /// PG(d, p): one point per line of GF(p)^{d+1}, represented by the vector whose first
    /// nonzero coordinate is 1. Labels are the coordinates.
    pub fn projective_geometry(d: usize, p: u64) -> Result<Matroid> {
        if d < 2 {
            return Err(Error::InvalidArgument(format!(
                "projective geometry needs d >= 2, got {d}"
            )));
        }
        if !is_prime(p) {
            return Err(Error::InvalidArgument(format!("{p} is not prime")));
        }
        let len = d + 1;
        let total = (p as u128).pow(len as u32);
        if total > 1 << 20 {
            return Err(Error::TooLarge(total as usize));
        }
        let mut columns = Vec::new();
        for code in 1..total as u64 {
            let mut v = vec![0u64; len];
            let mut c = code;
            for slot in v.iter_mut().rev() {
                *slot = c % p;
                c /= p;
            }
            if v.iter().find(|&&x| x != 0) == Some(&1) {
                columns.push(v);
            }
        }
        if columns.len() > ElementSet::CAPACITY {
            return Err(Error::TooLarge(columns.len()));
        }
        let sep = if p <= 10 { "" } else { "," };
        let labels = columns
            .iter()
            .map(|v| {
                v.iter()
                    .map(u64::to_string)
                    .collect::<Vec<_>>()
                    .join(sep)
            })
            .collect();
        check_linear(p, &mut columns)?;
        Matroid::assemble(
            labels,
            Oracle::Linear { prime: p, columns },
            Recipe::Projective { dim: d, prime: p },
            None,
        )
    }

    /// Dowling geometry Q_d(G): joints `b_1..b_d` followed by edges `g_ij` for each pair
    /// `i < j` and group element `g`.
    pub fn dowling(d: usize, group: GroupTable) -> Result<Matroid> {
        if d < 3 {
            return Err(Error::InvalidArgument(format!(
                "dowling geometry needs d >= 3, got {d}"
            )));
        }
        let mut elements: Vec<DowlingElement> = (0..d).map(DowlingElement::Joint).collect();
        for (i, j) in complete_graph_edges(d) {
            for gain in 0..group.order() {
                elements.push(DowlingElement::Edge { i, j, gain });
            }
        }
        if elements.len() > ElementSet::CAPACITY {
            return Err(Error::TooLarge(elements.len()));
        }
        let sep = if d <= 9 { "" } else { "," };
        let labels = disambiguate(
            elements
                .iter()
                .map(|e| match *e {
                    DowlingElement::Joint(i) => format!("b_{}", i + 1),
                    DowlingElement::Edge { i, j, gain } => {
                        format!("{}_{}{sep}{}", group.names()[gain], i + 1, j + 1)
                    }
                })
                .collect(),
        );
        Matroid::assemble(
            labels,
            Oracle::Dowling {
                dim: d,
                group: group.clone(),
                elements,
            },
            Recipe::Dowling { dim: d, group },
            None,
        )
    }

    /// Matroid with the given bases, after checking the exchange axiom.
    pub fn from_bases(n: usize, bases: &[Vec<usize>]) -> Result<Matroid> {
        let sets = to_sets(n, bases)?;
        let Some(first) = sets.first() else {
            return Err(Error::AxiomViolation("no bases given".into()));
        };
        let k = first.len();
        let lookup: HashSet<ElementSet> = sets.iter().copied().collect();
        for b in &sets {
            if b.len() != k {
                return Err(Error::AxiomViolation(format!(
                    "bases of different sizes: {first:?} and {b:?}"
                )));
            }
        }
        for &b1 in &lookup {
            for &b2 in &lookup {
                for x in (b1 - b2).iter() {
                    if !(b2 - b1).iter().any(|y| lookup.contains(&b1.without(x).with(y))) {
                        return Err(Error::AxiomViolation(format!(
                            "basis exchange fails for {b1:?}, {b2:?} at {x}"
                        )));
                    }
                }
            }
        }
        let mut uniq: Vec<ElementSet> = lookup.into_iter().collect();
        uniq.sort();
        let recipe = Recipe::Bases {
            size: n,
            bases: uniq.iter().map(|b| b.iter().collect()).collect(),
        };
        Matroid::assemble(index_labels(n), Oracle::Bases(uniq), recipe, None)
    }

    /// Matroid with the given circuits, after checking the antichain and elimination
    /// axioms.
    pub fn from_circuits(n: usize, circuits: &[Vec<usize>]) -> Result<Matroid> {
        let sets = to_sets(n, circuits)?;
        check_circuit_axioms(&sets)?;
        Matroid::from_circuit_sets(index_labels(n), sets, None)
    }

    fn from_circuit_sets(
        labels: Vec<String>,
        mut sets: Vec<ElementSet>,
        recipe: Option<Recipe>,
    ) -> Result<Matroid> {
        sets.sort();
        sets.dedup();
        let recipe = recipe.unwrap_or_else(|| Recipe::Circuits {
            size: labels.len(),
            circuits: sets.iter().map(|c| c.iter().collect()).collect(),
        });
        Matroid::assemble(labels, Oracle::Circuits(sets), recipe, None)
    }

    /// Parallel connection of `m1` and `m2`, identifying `p1` with `p2`. The ground set is
    /// `E(m1)` in order followed by `E(m2) - p2`; the glued element keeps the label `p1`.
    pub fn parallel_connection(m1: &Matroid, m2: &Matroid, p1: &str, p2: &str) -> Result<Matroid> {
        let a = m1.ground().index_of(p1)?;
        let b = m2.ground().index_of(p2)?;
        if m1.rank(ElementSet::singleton(a)) == 0 || m2.rank(ElementSet::singleton(b)) == 0 {
            return Err(Error::InvalidArgument(
                "cannot glue along a loop".to_string(),
            ));
        }
        let n1 = m1.n();
        if n1 + m2.n() - 1 > ElementSet::CAPACITY {
            return Err(Error::TooLarge(n1 + m2.n() - 1));
        }
        let left_map: Vec<usize> = (0..n1).collect();
        let mut right_map = Vec::with_capacity(m2.n());
        let mut next = n1;
        for k in 0..m2.n() {
            if k == b {
                right_map.push(a);
            } else {
                right_map.push(next);
                next += 1;
            }
        }
        let mut labels = m1.labels().to_vec();
        labels.extend((0..m2.n()).filter(|&k| k != b).map(|k| m2.label(k).to_string()));
        let labels = disambiguate(labels);

        let move_right = |c: ElementSet| -> ElementSet { c.iter().map(|k| right_map[k]).collect() };
        let c1 = m1.circuits();
        let c2: Vec<ElementSet> = m2.circuits().iter().map(|&c| move_right(c)).collect();
        let mut all: Vec<ElementSet> = c1.to_vec();
        all.extend(c2.iter().copied());
        for &x in c1.iter().filter(|c| c.contains(a)) {
            for &y in c2.iter().filter(|c| c.contains(a)) {
                all.push((x | y).without(a));
            }
        }
        let recipe = Recipe::ParallelConnection {
            left: Box::new(m1.to_file()),
            right: Box::new(m2.to_file()),
            left_point: p1.to_string(),
            right_point: p2.to_string(),
        };
        let m = Matroid::from_circuit_sets(labels, all, Some(recipe))?;
        let gluing = Gluing {
            left: m1.clone(),
            right: m2.clone(),
            point: a,
            left_map,
            right_map,
        };
        Matroid::assemble(
            m.labels().to_vec(),
            m.inner.oracle.clone(),
            m.inner.recipe.clone(),
            Some(gluing),
        )
    }

    pub fn direct_sum(&self, other: &Matroid) -> Result<Matroid> {
        Matroid::direct_sum_of(&[self.clone(), other.clone()])
    }

    /// Direct sum; ground sets are concatenated in order.
    pub fn direct_sum_of(parts: &[Matroid]) -> Result<Matroid> {
        let total: usize = parts.iter().map(Matroid::n).sum();
        if total > ElementSet::CAPACITY {
            return Err(Error::TooLarge(total));
        }
        if total == 0 {
            return Err(Error::InvalidArgument("direct sum of nothing".into()));
        }
        let mut offset = 0;
        let mut placed = Vec::with_capacity(parts.len());
        let mut labels = Vec::with_capacity(total);
        for m in parts {
            placed.push((m.clone(), offset));
            labels.extend(m.labels().iter().cloned());
            offset += m.n();
        }
        let recipe = Recipe::DirectSum {
            parts: parts.iter().map(Matroid::to_file).collect::<Vec<MatroidFile>>(),
        };
        Matroid::assemble(disambiguate(labels), Oracle::DirectSum(placed), recipe, None)
    }
}

fn to_sets(n: usize, lists: &[Vec<usize>]) -> Result<Vec<ElementSet>> {
    if n > ElementSet::CAPACITY {
        return Err(Error::TooLarge(n));
    }
    if n == 0 {
        return Err(Error::InvalidArgument("empty ground set".into()));
    }
    lists
        .iter()
        .map(|l| {
            if let Some(&x) = l.iter().find(|&&x| x >= n) {
                return Err(Error::InvalidArgument(format!(
                    "element {x} out of range for ground set of size {n}"
                )));
            }
            Ok(l.iter().copied().collect())
        })
        .collect()
}

fn check_circuit_axioms(sets: &[ElementSet]) -> Result<()> {
    for (k, &c) in sets.iter().enumerate() {
        if c.is_empty() {
            return Err(Error::AxiomViolation("empty circuit".into()));
        }
        for &d in &sets[k + 1..] {
            if c.comparable(d) {
                return Err(Error::AxiomViolation(format!(
                    "circuits {c:?} and {d:?} are not incomparable"
                )));
            }
        }
    }
    for &c1 in sets {
        for &c2 in sets {
            if c1 == c2 {
                continue;
            }
            for e in (c1 & c2).iter() {
                let u = (c1 | c2).without(e);
                if !sets.iter().any(|c3| c3.is_subset(u)) {
                    return Err(Error::AxiomViolation(format!(
                        "elimination fails for {c1:?}, {c2:?} at {e}: {u:?} must be dependent"
                    )));
                }
            }
        }
    }
    Ok(())
}
