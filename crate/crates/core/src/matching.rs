//! Fractional perfect matchings via the bipartite double cover.
//!
//! A graph has a fractional perfect matching exactly when `G x K2` has a
//! perfect matching. A perfect matching of the double cover is read as a
//! successor permutation on `V(G)` whose orbits are the cycles and edges of
//! a spanning `{1/2, 1}`-weighted factor. When no perfect matching exists,
//! alternating-path reachability yields a set `S` with `|N(S)| < |S|`, which
//! is then thinned to an independent violator.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{generate, neighborhood, tensor_product, Family, Graph, VertexSet};
use crate::ratio::{self, Rational};

/// A spanning factor of vertex-disjoint weight-1 edges and weight-1/2 cycles.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FpmCertificate {
    pub edges_weight_1: Vec<(usize, usize)>,
    pub cycles_weight_half: Vec<Vec<usize>>,
    pub covered: VertexSet,
}

impl FpmCertificate {
    /// `Σ f(e)`: one per matched edge, `ℓ/2` per cycle of length `ℓ`.
    pub fn total_weight(&self) -> Rational {
        let halves: usize =
            2 * self.edges_weight_1.len() + self.cycles_weight_half.iter().map(Vec::len).sum::<usize>();
        ratio::ratio(halves, 2)
    }

    pub fn verify(&self, g: &Graph) -> Result<()> {
        let n = g.n();
        let fail = |m: String| Err(Error::Certificate(m));
        let mut hits = vec![0usize; n];
        for &(u, v) in &self.edges_weight_1 {
            if u >= n || v >= n || !g.has_edge(u, v) {
                return fail(format!("{u}-{v} is not an edge"));
            }
            hits[u] += 1;
            hits[v] += 1;
        }
        for cycle in &self.cycles_weight_half {
            if cycle.len() < 3 {
                return fail(format!("cycle {cycle:?} is shorter than 3"));
            }
            for (i, &u) in cycle.iter().enumerate() {
                let v = cycle[(i + 1) % cycle.len()];
                if u >= n || v >= n || !g.has_edge(u, v) {
                    return fail(format!("cycle step {u}-{v} is not an edge"));
                }
                hits[u] += 1;
            }
        }
        if let Some(v) = hits.iter().position(|&h| h != 1) {
            return fail(format!("vertex {v} is covered {} times", hits[v]));
        }
        if self.covered != VertexSet::full(n) {
            return fail("covered set is not the whole vertex set".into());
        }
        if self.total_weight() != ratio::ratio(n, 2) {
            return fail("total weight differs from |V|/2".into());
        }
        Ok(())
    }

    /// Edge weights of the fractional matching, `(u, v, f)` with `u < v`.
    pub fn weights(&self) -> Vec<(usize, usize, Rational)> {
        let mut out: Vec<(usize, usize, Rational)> = self
            .edges_weight_1
            .iter()
            .map(|&(u, v)| (u.min(v), u.max(v), ratio::one()))
            .collect();
        for c in &self.cycles_weight_half {
            for (i, &u) in c.iter().enumerate() {
                let v = c[(i + 1) % c.len()];
                out.push((u.min(v), u.max(v), ratio::half()));
            }
        }
        out.sort();
        out
    }
}

/// An independent set with fewer neighbours than members.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct HallViolator {
    pub independent_set: VertexSet,
    pub boundary: VertexSet,
}

impl HallViolator {
    pub fn verify(&self, g: &Graph) -> Result<()> {
        let i = &self.independent_set;
        if i.universe() != g.n() {
            return Err(Error::Certificate("violator universe differs from graph".into()));
        }
        if i.is_empty() {
            return Err(Error::Certificate("violator is empty".into()));
        }
        if !g.is_independent(i) {
            return Err(Error::Certificate("violator is not independent".into()));
        }
        if neighborhood(g, i)? != self.boundary {
            return Err(Error::Certificate("boundary is not N(I)".into()));
        }
        if self.boundary.len() >= i.len() {
            return Err(Error::Certificate(format!(
                "|N(I)| = {} is not below |I| = {}",
                self.boundary.len(),
                i.len()
            )));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", tag = "kind")]
pub enum FpmOutcome {
    Certificate(FpmCertificate),
    Violator(HallViolator),
}

/// Verdict on whether the ultimate independence ratio equals one.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", tag = "verdict")]
pub enum AOneVerdict {
    /// No fractional perfect matching, so `A(G) = 1`.
    AEqualsOne { violator: HallViolator },
    /// A fractional perfect matching exists, so `A(G) <= 1/2`.
    AtMostHalf { certificate: FpmCertificate },
}

/// `G x K2`; `(v, 0)` is vertex `2v` and `(v, 1)` is `2v + 1`.
pub fn bipartite_double(g: &Graph) -> Graph {
    if g.n() == 0 {
        return Graph::empty(0);
    }
    let k2 = generate(&Family::Complete(2)).expect("K2");
    tensor_product(g, &k2, usize::MAX).expect("no guard")
}

/// Kuhn's augmenting-path matching. `right_of[l]` lists right vertices in
/// ascending order; returns the mate of each left vertex.
fn kuhn(left: usize, right: usize, right_of: &dyn Fn(usize) -> Vec<usize>) -> Vec<Option<usize>> {
    let adj: Vec<Vec<usize>> = (0..left).map(right_of).collect();
    let mut mate_left = vec![None; left];
    let mut mate_right: Vec<Option<usize>> = vec![None; right];

    fn augment(
        l: usize,
        adj: &[Vec<usize>],
        seen: &mut [bool],
        mate_left: &mut [Option<usize>],
        mate_right: &mut [Option<usize>],
    ) -> bool {
        for &r in &adj[l] {
            if seen[r] {
                continue;
            }
            seen[r] = true;
            let free = match mate_right[r] {
                None => true,
                Some(other) => augment(other, adj, seen, mate_left, mate_right),
            };
            if free {
                mate_left[l] = Some(r);
                mate_right[r] = Some(l);
                return true;
            }
        }
        false
    }

    // Greedy pass first, then augmenting paths for the rest.
    for l in 0..left {
        if let Some(&r) = adj[l].iter().find(|&&r| mate_right[r].is_none()) {
            mate_left[l] = Some(r);
            mate_right[r] = Some(l);
        }
    }
    let mut seen = vec![false; right];
    for l in 0..left {
        if mate_left[l].is_none() {
            seen.iter_mut().for_each(|s| *s = false);
            augment(l, &adj, &mut seen, &mut mate_left, &mut mate_right);
        }
    }
    mate_left
}

/// Maximum matching of a bipartite graph with the given left side, as
/// `(left, right)` pairs sorted by left vertex.
pub fn max_bipartite_matching(g: &Graph, left: &VertexSet) -> Result<Vec<(usize, usize)>> {
    let n = g.n();
    if left.universe() != n {
        return Err(Error::UniverseMismatch {
            expected: n,
            found: left.universe(),
        });
    }
    for (u, v) in g.edges() {
        if left.contains(u) == left.contains(v) {
            return Err(Error::Domain(format!(
                "edge {u}-{v} does not cross the given bipartition"
            )));
        }
    }
    let lefts = left.to_vec();
    let rights = left.complement().to_vec();
    let mut right_index = vec![usize::MAX; n];
    for (i, &r) in rights.iter().enumerate() {
        right_index[r] = i;
    }
    let mates = kuhn(lefts.len(), rights.len(), &|l| {
        g.neighbors(lefts[l]).iter().map(|r| right_index[r]).collect()
    });
    Ok(mates
        .iter()
        .enumerate()
        .filter_map(|(l, m)| m.map(|r| (lefts[l], rights[r])))
        .collect())
}

/// Mate of `(v, 0)` among `(w, 1)` in a maximum matching of the double cover.
fn double_cover_matching(g: &Graph) -> Vec<Option<usize>> {
    kuhn(g.n(), g.n(), &|v| g.neighbors(v).to_vec())
}

/// Does `g` have a fractional perfect matching?
pub fn has_fpm(g: &Graph) -> bool {
    double_cover_matching(g).iter().all(Option::is_some)
}

/// Thins `s` with `|N(s)| < |s|` to the independent set of members that have
/// no neighbour inside `s`; the result still has fewer neighbours than
/// members.
pub fn tutte_independent_violator(g: &Graph, s: &VertexSet) -> Result<HallViolator> {
    let ns = neighborhood(g, s)?;
    if ns.len() >= s.len() {
        return Err(Error::Domain(format!(
            "|N(S)| = {} is not below |S| = {}",
            ns.len(),
            s.len()
        )));
    }
    let touching = VertexSet::from_indices(g.n(), s.iter().filter(|&v| g.neighbors(v).intersects(s)));
    let independent_set = s.difference(&touching);
    let boundary = neighborhood(g, &independent_set)?;
    let v = HallViolator {
        independent_set,
        boundary,
    };
    debug_assert!(v.verify(g).is_ok());
    Ok(v)
}

/// Either a `{1/2, 1}` factor certificate or an independent Hall violator.
pub fn fpm_certificate(g: &Graph) -> FpmOutcome {
    let n = g.n();
    let mate = double_cover_matching(g);
    if mate.iter().all(Option::is_some) {
        let succ: Vec<usize> = mate.iter().map(|m| m.unwrap()).collect();
        let mut visited = vec![false; n];
        let mut edges = Vec::new();
        let mut cycles = Vec::new();
        for start in 0..n {
            if visited[start] {
                continue;
            }
            let mut orbit = vec![start];
            visited[start] = true;
            let mut v = succ[start];
            while v != start {
                visited[v] = true;
                orbit.push(v);
                v = succ[v];
            }
            if orbit.len() == 2 {
                edges.push((orbit[0], orbit[1]));
            } else {
                cycles.push(orbit);
            }
        }
        return FpmOutcome::Certificate(FpmCertificate {
            edges_weight_1: edges,
            cycles_weight_half: cycles,
            covered: VertexSet::full(n),
        });
    }

    // Alternating reachability from unmatched left copies. Left vertices
    // reached form S; the right vertices reached are exactly N(S), all
    // matched, and one fewer per unmatched root.
    let mut mate_right = vec![None; n];
    for (l, m) in mate.iter().enumerate() {
        if let Some(r) = m {
            mate_right[*r] = Some(l);
        }
    }
    let mut left_seen = VertexSet::new(n);
    let mut right_seen = VertexSet::new(n);
    let mut queue: Vec<usize> = (0..n).filter(|&v| mate[v].is_none()).collect();
    for &v in &queue {
        left_seen.insert(v);
    }
    while let Some(l) = queue.pop() {
        for r in g.neighbors(l) {
            if right_seen.contains(r) {
                continue;
            }
            right_seen.insert(r);
            let back = mate_right[r].expect("maximum matching leaves no augmenting path");
            if !left_seen.contains(back) {
                left_seen.insert(back);
                queue.push(back);
            }
        }
    }
    debug_assert_eq!(neighborhood(g, &left_seen).unwrap(), right_seen);
    let violator = tutte_independent_violator(g, &left_seen).expect("deficient set from reachability");
    FpmOutcome::Violator(violator)
}

/// Decides `A(G) = 1` versus `A(G) <= 1/2` in polynomial time, with a
/// certificate for either answer.
pub fn decide_a_one(g: &Graph) -> AOneVerdict {
    match fpm_certificate(g) {
        FpmOutcome::Certificate(certificate) => AOneVerdict::AtMostHalf { certificate },
        FpmOutcome::Violator(violator) => AOneVerdict::AEqualsOne { violator },
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{disjoint_union, FamilyTag};

    fn fam(f: Family) -> Graph {
        generate(&f).unwrap()
    }

    fn evens(n: usize) -> VertexSet {
        VertexSet::from_indices(2 * n, (0..n).map(|v| 2 * v))
    }

    #[test]
    fn double_cover_shapes() {
        let d = bipartite_double(&fam(Family::Complete(2)));
        assert_eq!(d.edges(), vec![(0, 3), (1, 2)]);
        let d = bipartite_double(&fam(Family::Cycle(5)));
        assert_eq!((d.n(), d.edge_count(), d.regular_degree()), (10, 10, Some(2)));
        assert!(d.is_connected(), "double cover of an odd cycle is one 10-cycle");
        let d = bipartite_double(&fam(Family::Complete(3)));
        assert_eq!((d.n(), d.regular_degree()), (6, Some(2)));
        assert!(d.is_connected());
    }

    #[test]
    fn matching_sizes() {
        let size = |g: Graph| {
            let d = bipartite_double(&g);
            max_bipartite_matching(&d, &evens(g.n())).unwrap().len()
        };
        assert_eq!(size(fam(Family::Complete(2))), 2);
        assert_eq!(size(fam(Family::Star(3))), 2);
        assert_eq!(size(fam(Family::Cycle(5))), 5);
    }

    #[test]
    fn matching_rejects_non_bipartite_side() {
        let c5 = fam(Family::Cycle(5));
        let left = VertexSet::from_indices(5, [0, 2]);
        assert!(matches!(max_bipartite_matching(&c5, &left), Err(Error::Domain(_))));
    }

    #[test]
    fn has_fpm_examples() {
        assert!(has_fpm(&fam(Family::Complete(3))));
        assert!(!has_fpm(&fam(Family::Star(3))));
        assert!(!has_fpm(&Graph::empty(1)));
    }

    #[test]
    fn triangle_certificate() {
        let g = fam(Family::Complete(3));
        let FpmOutcome::Certificate(c) = fpm_certificate(&g) else { panic!() };
        assert_eq!(c.cycles_weight_half, vec![vec![0, 1, 2]]);
        assert!(c.edges_weight_1.is_empty());
        assert_eq!(ratio::to_string(&c.total_weight()), "3/2");
        c.verify(&g).unwrap();
    }

    #[test]
    fn path_certificate() {
        let g = fam(Family::Path(4));
        let FpmOutcome::Certificate(c) = fpm_certificate(&g) else { panic!() };
        assert_eq!(c.edges_weight_1, vec![(0, 1), (2, 3)]);
        c.verify(&g).unwrap();
    }

    #[test]
    fn star_violator() {
        let g = fam(Family::Star(3));
        let FpmOutcome::Violator(v) = fpm_certificate(&g) else { panic!() };
        assert_eq!(v.independent_set.to_vec(), vec![1, 2, 3]);
        assert_eq!(v.boundary.to_vec(), vec![0]);
        v.verify(&g).unwrap();
    }

    #[test]
    fn tutte_examples() {
        let star = fam(Family::Star(3));
        let v = tutte_independent_violator(&star, &VertexSet::from_indices(4, [1, 2, 3])).unwrap();
        assert_eq!(v.independent_set.to_vec(), vec![1, 2, 3]);

        // Two disjoint stars: centres 0 and 4.
        let two = disjoint_union(&star, &star);
        let s = VertexSet::from_indices(8, [0, 1, 2, 3, 5, 6, 7]);
        assert_eq!(neighborhood(&two, &s).unwrap().len(), 5);
        let v = tutte_independent_violator(&two, &s).unwrap();
        assert_eq!(v.independent_set.to_vec(), vec![5, 6, 7]);
        assert_eq!(v.boundary.to_vec(), vec![4]);
        v.verify(&two).unwrap();

        let iso = Graph::empty(3);
        let s = VertexSet::from_indices(3, [0, 2]);
        assert_eq!(tutte_independent_violator(&iso, &s).unwrap().independent_set, s);

        let c5 = fam(Family::Cycle(5));
        assert!(tutte_independent_violator(&c5, &VertexSet::from_indices(5, [0])).is_err());
    }

    #[test]
    fn verdicts() {
        assert!(matches!(decide_a_one(&fam(Family::Star(3))), AOneVerdict::AEqualsOne { .. }));
        assert!(matches!(decide_a_one(&fam(Family::Complete(3))), AOneVerdict::AtMostHalf { .. }));
        assert!(matches!(decide_a_one(&fam(Family::Path(4))), AOneVerdict::AtMostHalf { .. }));
    }

    #[test]
    fn certificate_verification_catches_tampering() {
        let g = fam(Family::Path(4));
        let bad = FpmCertificate {
            edges_weight_1: vec![(0, 1), (1, 2)],
            cycles_weight_half: vec![],
            covered: VertexSet::full(4),
        };
        assert!(bad.verify(&g).is_err());
        let bad = HallViolator {
            independent_set: VertexSet::from_indices(4, [0, 2]),
            boundary: VertexSet::from_indices(4, [1, 3]),
        };
        assert!(bad.verify(&g).is_err());
    }

    mod props {
        use super::*;
        use crate::graph::tensor_power;
        use proptest::prelude::*;

        fn graph(max_n: usize) -> impl Strategy<Value = Graph> {
            (1usize..=max_n).prop_flat_map(|n| {
                proptest::collection::vec(any::<bool>(), n * (n - 1) / 2).prop_map(move |bits| {
                    let mut g = Graph::empty(n);
                    let mut k = 0;
                    for v in 1..n {
                        for u in 0..v {
                            if bits[k] {
                                g.add_edge(u, v);
                            }
                            k += 1;
                        }
                    }
                    g.with_tag(FamilyTag::Raw)
                })
            })
        }

        /// Brute-force Hall check over every subset of the left side.
        fn hall_holds(g: &Graph) -> bool {
            let n = g.n();
            (1u64..1 << n).all(|m| {
                let s = VertexSet::from_indices(n, (0..n).filter(|b| m >> b & 1 == 1));
                neighborhood(g, &s).unwrap().len() >= s.len()
            })
        }

        proptest! {
            #[test]
            fn outcome_certifies(g in graph(10)) {
                match fpm_certificate(&g) {
                    FpmOutcome::Certificate(c) => { c.verify(&g).unwrap(); prop_assert!(has_fpm(&g)); }
                    FpmOutcome::Violator(v) => {
                        v.verify(&g).unwrap();
                        let d = bipartite_double(&g);
                        let m = max_bipartite_matching(&d, &evens(g.n())).unwrap();
                        prop_assert!(m.len() < g.n());
                    }
                }
            }

            #[test]
            fn fpm_iff_hall(g in graph(9)) {
                prop_assert_eq!(has_fpm(&g), hall_holds(&g));
            }

            #[test]
            fn fpm_lifts_to_square(g in graph(6)) {
                if has_fpm(&g) {
                    let sq = tensor_power(&g, 2, 10_000).unwrap();
                    prop_assert!(has_fpm(&sq));
                }
            }
        }
    }
}
