//! Exact maximum independent sets, the expansion ratio `a(G)` and friends.
//!
//! Independent sets of `G` are searched as cliques of the complement with a
//! greedy colouring bound. The size is found first with vertices ordered by
//! descending complement degree; a second pass in index order then returns
//! the lexicographically smallest set of that size, so witnesses do not
//! depend on search heuristics.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{neighborhood, Graph, VertexSet};
use crate::limits::Limits;
use crate::ratio::{self, Rational};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MaxIndependentSet {
    pub size: usize,
    pub witness: VertexSet,
}

/// An independent set `I` with its boundary `N(I)` and the ratio
/// `|I| / (|I| + |N(I)|)` it certifies.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExpansionWitness {
    pub independent_set: VertexSet,
    pub boundary: VertexSet,
    #[serde(with = "crate::experiments::report::rational_serde")]
    pub ratio: Rational,
}

impl ExpansionWitness {
    pub fn from_set(g: &Graph, set: VertexSet) -> Result<Self> {
        if !g.is_independent(&set) {
            return Err(Error::Domain("set is not independent".into()));
        }
        if set.is_empty() {
            return Err(Error::Domain("expansion ratio of the empty set is undefined".into()));
        }
        let boundary = neighborhood(g, &set)?;
        let ratio = ratio::ratio(set.len(), set.len() + boundary.len());
        Ok(ExpansionWitness {
            independent_set: set,
            boundary,
            ratio,
        })
    }

    /// Recomputes independence, the boundary and the ratio from scratch.
    pub fn verify(&self, g: &Graph) -> Result<()> {
        let i = &self.independent_set;
        if i.universe() != g.n() || self.boundary.universe() != g.n() {
            return Err(Error::Certificate("witness universe differs from graph".into()));
        }
        if i.is_empty() {
            return Err(Error::Certificate("empty independent set".into()));
        }
        for u in i {
            for v in i {
                if u < v && g.has_edge(u, v) {
                    return Err(Error::Certificate(format!("{u} and {v} are adjacent")));
                }
            }
        }
        let mut boundary = VertexSet::new(g.n());
        for (u, v) in g.edges() {
            if i.contains(u) {
                boundary.insert(v);
            }
            if i.contains(v) {
                boundary.insert(u);
            }
        }
        if boundary != self.boundary {
            return Err(Error::Certificate("boundary is not N(I)".into()));
        }
        if boundary.intersects(i) {
            return Err(Error::Certificate("boundary meets the set".into()));
        }
        if self.ratio != ratio::ratio(i.len(), i.len() + boundary.len()) {
            return Err(Error::Certificate("ratio does not match cardinalities".into()));
        }
        Ok(())
    }
}

fn complement_rows(g: &Graph) -> Vec<VertexSet> {
    g.complement().adjacency().to_vec()
}

/// Greedy sequential colouring of `p` in the clique graph `adj`. Returns the
/// vertices grouped by colour and the colour (1-based) of each position.
fn colour_sort(adj: &[VertexSet], p: &VertexSet) -> (Vec<usize>, Vec<usize>) {
    let mut order = Vec::with_capacity(p.len());
    let mut colours = Vec::with_capacity(p.len());
    let mut uncoloured = p.clone();
    let mut colour = 0;
    while !uncoloured.is_empty() {
        colour += 1;
        let mut q = uncoloured.clone();
        while let Some(v) = q.first() {
            q.remove(v);
            q.difference_with(&adj[v]);
            uncoloured.remove(v);
            order.push(v);
            colours.push(colour);
        }
    }
    (order, colours)
}

fn colour_bound(adj: &[VertexSet], p: &VertexSet) -> usize {
    let mut uncoloured = p.clone();
    let mut colours = 0;
    while !uncoloured.is_empty() {
        colours += 1;
        let mut q = uncoloured.clone();
        while let Some(v) = q.first() {
            q.remove(v);
            q.difference_with(&adj[v]);
            uncoloured.remove(v);
        }
    }
    colours
}

fn max_clique_size(adj: &[VertexSet], p: VertexSet, depth: usize, best: &mut usize) {
    let (order, colours) = colour_sort(adj, &p);
    let mut p = p;
    for idx in (0..order.len()).rev() {
        if depth + colours[idx] <= *best {
            return;
        }
        let v = order[idx];
        let np = p.intersection(&adj[v]);
        if np.is_empty() {
            *best = (*best).max(depth + 1);
        } else {
            max_clique_size(adj, np, depth + 1, best);
        }
        p.remove(v);
    }
}

/// Index-order include-first search for cliques of exactly `target`
/// vertices. Calls `found` on each in lexicographic order; stops when it
/// returns false.
fn cliques_of_size(
    adj: &[VertexSet],
    p: &VertexSet,
    current: &mut Vec<usize>,
    target: usize,
    found: &mut dyn FnMut(&[usize]) -> bool,
) -> bool {
    if current.len() == target {
        return found(current);
    }
    let mut rest = p.clone();
    while let Some(v) = rest.first() {
        if current.len() + rest.len() < target || current.len() + colour_bound(adj, &rest) < target {
            return true;
        }
        rest.remove(v);
        let np = rest.intersection(&adj[v]);
        current.push(v);
        let go_on = cliques_of_size(adj, &np, current, target, found);
        current.pop();
        if !go_on {
            return false;
        }
    }
    true
}

/// Size of a maximum clique, searching vertices by descending degree.
fn clique_size(adj: &[VertexSet]) -> usize {
    let n = adj.len();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&v| (std::cmp::Reverse(adj[v].len()), v));
    let mut pos = vec![0; n];
    for (i, &v) in order.iter().enumerate() {
        pos[v] = i;
    }
    let permuted: Vec<VertexSet> = order
        .iter()
        .map(|&v| VertexSet::from_indices(n, adj[v].iter().map(|w| pos[w])))
        .collect();
    let mut best = 0;
    max_clique_size(&permuted, VertexSet::full(n), 0, &mut best);
    best
}

fn check_bnb(g: &Graph, limits: &Limits) -> Result<()> {
    Limits::check("independent set search", limits.bnb_vertices, g.n())
}

/// `α(G)` with the lexicographically smallest maximum independent set.
pub fn max_independent_set(g: &Graph, limits: &Limits) -> Result<MaxIndependentSet> {
    check_bnb(g, limits)?;
    let n = g.n();
    if n == 0 {
        return Ok(MaxIndependentSet {
            size: 0,
            witness: VertexSet::new(0),
        });
    }
    let comp = complement_rows(g);
    let size = clique_size(&comp);
    let mut witness = None;
    cliques_of_size(&comp, &VertexSet::full(n), &mut Vec::new(), size, &mut |s| {
        witness = Some(VertexSet::from_indices(n, s.iter().copied()));
        false
    });
    let witness = witness.expect("a set of the maximum size exists");
    Ok(MaxIndependentSet { size, witness })
}

/// Every maximum independent set, in lexicographic order, up to `cap`.
/// The flag is false when the cap cut the enumeration short.
pub fn all_maximum_independent_sets(
    g: &Graph,
    cap: usize,
    limits: &Limits,
) -> Result<(usize, Vec<VertexSet>, bool)> {
    check_bnb(g, limits)?;
    let n = g.n();
    if n == 0 {
        return Ok((0, vec![VertexSet::new(0)], true));
    }
    let comp = complement_rows(g);
    let size = clique_size(&comp);
    let mut sets = Vec::new();
    let mut complete = true;
    cliques_of_size(&comp, &VertexSet::full(n), &mut Vec::new(), size, &mut |s| {
        if sets.len() == cap {
            complete = false;
            return false;
        }
        sets.push(VertexSet::from_indices(n, s.iter().copied()));
        true
    });
    Ok((size, sets, complete))
}

/// `i(G) = α(G) / |V(G)|`.
pub fn independence_ratio(g: &Graph, limits: &Limits) -> Result<Rational> {
    if g.n() == 0 {
        return Err(Error::Domain("independence ratio of the empty graph".into()));
    }
    let mis = max_independent_set(g, limits)?;
    Ok(ratio::ratio(mis.size, g.n()))
}

/// `ω(G)`, as `α` of the complement.
pub fn clique_number(g: &Graph, limits: &Limits) -> Result<usize> {
    check_bnb(g, limits)?;
    Ok(clique_size(g.adjacency()))
}

struct ExpansionSearch<'a> {
    g: &'a Graph,
    best_num: usize,
    best_den: usize,
    best: Option<VertexSet>,
}

impl ExpansionSearch<'_> {
    // a/b > c/d
    #[inline]
    fn beats(a: usize, b: usize, c: usize, d: usize) -> bool {
        a * d > c * b
    }

    fn dfs(&mut self, set: &mut VertexSet, set_len: usize, boundary: &VertexSet, cand: &VertexSet) {
        let mut rest = cand.clone();
        while let Some(v) = rest.first() {
            // Any completion I + J with J a nonempty subset of `rest` has at
            // most |I| + |rest| members and keeps N(I), plus the new
            // neighbours of at least one member of J.
            let x = set_len + rest.len();
            let fresh = rest
                .iter()
                .map(|u| self.g.neighbors(u).len() - self.g.neighbors(u).intersection_len(boundary))
                .min()
                .unwrap_or(0);
            let m = boundary.len() + fresh;
            if !Self::beats(x, x + m, self.best_num, self.best_den) {
                return;
            }
            rest.remove(v);
            set.insert(v);
            let next_boundary = boundary.union(self.g.neighbors(v));
            let k = set_len + 1;
            let den = k + next_boundary.len();
            if Self::beats(k, den, self.best_num, self.best_den) {
                self.best_num = k;
                self.best_den = den;
                self.best = Some(set.clone());
            }
            let next_cand = rest.difference(self.g.neighbors(v));
            if !next_cand.is_empty() {
                self.dfs(set, k, &next_boundary, &next_cand);
            }
            set.remove(v);
        }
    }
}

/// `a(G)`: the nonempty independent set maximising `|I| / (|I| + |N(I)|)`,
/// lexicographically smallest among ties.
///
/// Every independent set is reachable; subtrees are cut only when the
/// completion bound cannot beat the incumbent, so the result does not rely
/// on the optimum being a maximal set.
pub fn expansion_max(g: &Graph, limits: &Limits) -> Result<ExpansionWitness> {
    if g.n() == 0 {
        return Err(Error::Domain("expansion ratio needs at least one vertex".into()));
    }
    Limits::check("expansion search", limits.expansion_vertices, g.n())?;
    let n = g.n();
    let mut search = ExpansionSearch {
        g,
        best_num: 0,
        best_den: 1,
        best: None,
    };
    search.dfs(
        &mut VertexSet::new(n),
        0,
        &VertexSet::new(n),
        &VertexSet::full(n),
    );
    let set = search.best.expect("a single vertex is always a candidate");
    ExpansionWitness::from_set(g, set)
}

pub fn expansion_ratio(g: &Graph, limits: &Limits) -> Result<Rational> {
    Ok(expansion_max(g, limits)?.ratio)
}

/// `a*(G)`: `a(G)` when at most one half, otherwise 1.
pub fn a_star_of(a: &Rational) -> Rational {
    if *a <= ratio::half() {
        a.clone()
    } else {
        ratio::one()
    }
}

pub fn a_star(g: &Graph, limits: &Limits) -> Result<Rational> {
    Ok(a_star_of(&expansion_ratio(g, limits)?))
}

/// A maximal independent set built greedily by ascending degree. Used as a
/// cheap expansion witness when the exact search is out of reach.
pub fn greedy_independent_set(g: &Graph) -> VertexSet {
    let mut order: Vec<usize> = (0..g.n()).collect();
    order.sort_by_key(|&v| (g.degree(v), v));
    let mut set = VertexSet::new(g.n());
    let mut blocked = VertexSet::new(g.n());
    for v in order {
        if !blocked.contains(v) {
            set.insert(v);
            blocked.insert(v);
            blocked.union_with(g.neighbors(v));
        }
    }
    set
}

/// `χ(G)` by DSATUR branch and bound, seeded with the clique number as lower
/// bound and a greedy DSATUR colouring as upper bound.
pub fn chromatic_number(g: &Graph, limits: &Limits) -> Result<usize> {
    let n = g.n();
    Limits::check("chromatic number", limits.chromatic_vertices, n)?;
    if n == 0 {
        return Ok(0);
    }
    let lower = clique_number(g, limits)?;
    let mut colours = vec![usize::MAX; n];
    let upper = dsatur_greedy(g, &mut colours);
    if upper == lower {
        return Ok(upper);
    }
    let mut best = upper;
    let mut colours = vec![usize::MAX; n];
    let mut forbidden = vec![0u64; n];
    dsatur_bnb(g, &mut colours, &mut forbidden, 0, 0, lower, &mut best);
    Ok(best)
}

fn pick_dsatur(g: &Graph, colours: &[usize], forbidden: &[u64]) -> Option<usize> {
    (0..g.n())
        .filter(|&v| colours[v] == usize::MAX)
        .max_by_key(|&v| (forbidden[v].count_ones(), g.degree(v), std::cmp::Reverse(v)))
}

fn dsatur_greedy(g: &Graph, colours: &mut [usize]) -> usize {
    let mut forbidden = vec![0u64; g.n()];
    let mut used = 0;
    while let Some(v) = pick_dsatur(g, colours, &forbidden) {
        let c = (!forbidden[v]).trailing_zeros() as usize;
        colours[v] = c;
        used = used.max(c + 1);
        for w in g.neighbors(v) {
            forbidden[w] |= 1 << c;
        }
    }
    used
}

fn dsatur_bnb(
    g: &Graph,
    colours: &mut [usize],
    forbidden: &mut [u64],
    coloured: usize,
    used: usize,
    lower: usize,
    best: &mut usize,
) {
    if *best == lower || used >= *best {
        return;
    }
    if coloured == g.n() {
        *best = (*best).min(used);
        return;
    }
    let v = pick_dsatur(g, colours, forbidden).expect("uncoloured vertex remains");
    for c in 0..(used + 1).min(*best - 1) {
        if forbidden[v] >> c & 1 == 1 {
            continue;
        }
        colours[v] = c;
        let saved: Vec<(usize, u64)> = g.neighbors(v).iter().map(|w| (w, forbidden[w])).collect();
        for w in g.neighbors(v) {
            forbidden[w] |= 1 << c;
        }
        dsatur_bnb(g, colours, forbidden, coloured + 1, used.max(c + 1), lower, best);
        for (w, f) in saved {
            forbidden[w] = f;
        }
        colours[v] = usize::MAX;
        if *best == lower {
            return;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{generate, tensor_product, Family};

    fn fam(f: Family) -> Graph {
        generate(&f).unwrap()
    }

    fn lim() -> Limits {
        Limits::default()
    }

    /// Exhaustive oracle: every subset, checked pairwise.
    fn brute_alpha(g: &Graph) -> usize {
        let n = g.n();
        (0u64..1 << n)
            .filter(|&m| g.edges().iter().all(|&(u, v)| m >> u & 1 == 0 || m >> v & 1 == 0))
            .map(|m| m.count_ones() as usize)
            .max()
            .unwrap()
    }

    /// Exhaustive oracle for a(G) as (num, den) in lowest terms and the
    /// lexicographically smallest optimal set.
    fn brute_a(g: &Graph) -> (Rational, Vec<usize>) {
        let n = g.n();
        let mut best: Option<(Rational, Vec<usize>)> = None;
        for m in 1u64..1 << n {
            let set: Vec<usize> = (0..n).filter(|b| m >> b & 1 == 1).collect();
            if set.iter().any(|&u| set.iter().any(|&v| g.has_edge(u, v))) {
                continue;
            }
            let nb = (0..n)
                .filter(|&w| set.iter().any(|&u| g.has_edge(u, w)))
                .count();
            let r = ratio::ratio(set.len(), set.len() + nb);
            let better = match &best {
                None => true,
                Some((br, bs)) => r > *br || (r == *br && set < *bs),
            };
            if better {
                best = Some((r, set));
            }
        }
        best.unwrap()
    }

    #[test]
    fn alpha_examples() {
        assert_eq!(max_independent_set(&fam(Family::Cycle(5)), &lim()).unwrap().size, 2);
        assert_eq!(max_independent_set(&fam(Family::Petersen), &lim()).unwrap().size, 4);
        let c5 = fam(Family::Cycle(5));
        let sq = tensor_product(&c5, &c5, 100).unwrap();
        let mis = max_independent_set(&sq, &lim()).unwrap();
        assert_eq!(mis.size, 10);
        assert!(sq.is_independent(&mis.witness));
    }

    #[test]
    fn lexicographic_witness() {
        // C6: maximum independent sets {0,2,4} and {1,3,5}.
        let mis = max_independent_set(&fam(Family::Cycle(6)), &lim()).unwrap();
        assert_eq!(mis.witness.to_vec(), vec![0, 2, 4]);
        // P4: {0,2}, {0,3}, {1,3}.
        let mis = max_independent_set(&fam(Family::Path(4)), &lim()).unwrap();
        assert_eq!(mis.witness.to_vec(), vec![0, 2]);
    }

    #[test]
    fn ratios() {
        let r = |g: Graph| ratio::to_string(&independence_ratio(&g, &lim()).unwrap());
        assert_eq!(r(fam(Family::Cycle(5))), "2/5");
        assert_eq!(r(fam(Family::Petersen)), "2/5");
        let p = tensor_product(&fam(Family::Complete(2)), &fam(Family::Complete(3)), 100).unwrap();
        assert_eq!(r(p), "1/2");
    }

    #[test]
    fn expansion_examples() {
        let w = expansion_max(&fam(Family::Star(3)), &lim()).unwrap();
        assert_eq!(w.independent_set.to_vec(), vec![1, 2, 3]);
        assert_eq!(w.boundary.to_vec(), vec![0]);
        assert_eq!(ratio::to_string(&w.ratio), "3/4");
        w.verify(&fam(Family::Star(3))).unwrap();
        assert_eq!(ratio::to_string(&expansion_ratio(&fam(Family::Cycle(5)), &lim()).unwrap()), "2/5");
        assert_eq!(ratio::to_string(&expansion_ratio(&fam(Family::Path(4)), &lim()).unwrap()), "1/2");
    }

    #[test]
    fn a_star_examples() {
        assert_eq!(a_star(&fam(Family::Star(3)), &lim()).unwrap(), ratio::one());
        assert_eq!(ratio::to_string(&a_star(&fam(Family::Cycle(5)), &lim()).unwrap()), "2/5");
        assert_eq!(ratio::to_string(&a_star(&fam(Family::Complete(2)), &lim()).unwrap()), "1/2");
    }

    #[test]
    fn isolated_vertex_gives_one() {
        let g = Graph::from_edges(3, [(0, 1)]).unwrap();
        let w = expansion_max(&g, &lim()).unwrap();
        assert_eq!(w.ratio, ratio::one());
        assert_eq!(w.independent_set.to_vec(), vec![2]);
    }

    #[test]
    fn empty_graph_is_domain_error() {
        assert!(matches!(expansion_max(&Graph::empty(0), &lim()), Err(Error::Domain(_))));
        assert!(independence_ratio(&Graph::empty(0), &lim()).is_err());
    }

    #[test]
    fn guard_is_enforced() {
        let g = fam(Family::Cycle(70));
        assert!(matches!(max_independent_set(&g, &lim()), Err(Error::SizeGuard { .. })));
        assert!(matches!(expansion_max(&g, &lim()), Err(Error::SizeGuard { .. })));
    }

    #[test]
    fn clique_and_chromatic() {
        assert_eq!(clique_number(&fam(Family::Complete(4)), &lim()).unwrap(), 4);
        assert_eq!(clique_number(&fam(Family::Cycle(5)), &lim()).unwrap(), 2);
        assert_eq!(clique_number(&fam(Family::Petersen), &lim()).unwrap(), 2);
        assert_eq!(chromatic_number(&fam(Family::Cycle(5)), &lim()).unwrap(), 3);
        assert_eq!(chromatic_number(&fam(Family::Petersen), &lim()).unwrap(), 3);
        let c6 = tensor_product(&fam(Family::Complete(2)), &fam(Family::Complete(3)), 100).unwrap();
        assert_eq!(chromatic_number(&c6, &lim()).unwrap(), 2);
        // Kneser(6,2) has chromatic number 6 - 4 + 2 = 4 but clique number 3.
        assert_eq!(chromatic_number(&fam(Family::Kneser(6, 2)), &lim()).unwrap(), 4);
        assert_eq!(chromatic_number(&Graph::empty(3), &lim()).unwrap(), 1);
    }

    #[test]
    fn enumerate_maximum_sets() {
        let (size, sets, complete) =
            all_maximum_independent_sets(&fam(Family::Path(4)), 10, &lim()).unwrap();
        assert_eq!(size, 2);
        assert!(complete);
        let sets: Vec<Vec<usize>> = sets.iter().map(|s| s.to_vec()).collect();
        assert_eq!(sets, vec![vec![0, 2], vec![0, 3], vec![1, 3]]);
        let (_, sets, complete) =
            all_maximum_independent_sets(&fam(Family::Path(4)), 2, &lim()).unwrap();
        assert_eq!(sets.len(), 2);
        assert!(!complete);
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        fn small_graph() -> impl Strategy<Value = Graph> {
            (1usize..=8).prop_flat_map(|n| {
                proptest::collection::vec(any::<bool>(), n * (n - 1) / 2).prop_map(move |bits| {
                    let mut edges = Vec::new();
                    let mut k = 0;
                    for v in 1..n {
                        for u in 0..v {
                            if bits[k] {
                                edges.push((u, v));
                            }
                            k += 1;
                        }
                    }
                    Graph::from_edges(n, edges).unwrap()
                })
            })
        }

        proptest! {
            #[test]
            fn alpha_matches_brute_force(g in small_graph()) {
                let mis = max_independent_set(&g, &lim()).unwrap();
                prop_assert_eq!(mis.size, brute_alpha(&g));
                prop_assert!(g.is_independent(&mis.witness));
                prop_assert_eq!(mis.witness.len(), mis.size);
            }

            #[test]
            fn a_matches_brute_force(g in small_graph()) {
                let w = expansion_max(&g, &lim()).unwrap();
                let (r, set) = brute_a(&g);
                prop_assert_eq!(&w.ratio, &r);
                prop_assert_eq!(w.independent_set.to_vec(), set);
                w.verify(&g).unwrap();
            }

            #[test]
            fn i_at_most_a(g in small_graph()) {
                let i = independence_ratio(&g, &lim()).unwrap();
                let a = expansion_ratio(&g, &lim()).unwrap();
                prop_assert!(i <= a);
            }

            #[test]
            fn chromatic_is_proper_bound(g in small_graph()) {
                let chi = chromatic_number(&g, &lim()).unwrap();
                let omega = clique_number(&g, &lim()).unwrap();
                prop_assert!(omega <= chi);
                // Oracle: try every assignment with chi - 1 colours.
                let n = g.n();
                if chi >= 2 && n <= 7 {
                    let k = chi - 1;
                    let total = k.pow(n as u32);
                    let proper = (0..total).any(|mut code| {
                        let cols: Vec<usize> = (0..n).map(|_| { let c = code % k; code /= k; c }).collect();
                        g.edges().iter().all(|&(u, v)| cols[u] != cols[v])
                    });
                    prop_assert!(!proper);
                }
            }
        }
    }
}
