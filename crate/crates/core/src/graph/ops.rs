use crate::error::{Error, Result};

use super::{FamilyTag, Graph, VertexSet};

fn label_of(g: &Graph, v: usize) -> Vec<usize> {
    match (&g.labels, &g.tag) {
        (Some(labels), FamilyTag::Product { .. }) => labels[v].clone(),
        _ => vec![v],
    }
}

fn factors_of(tag: &FamilyTag) -> Vec<FamilyTag> {
    match tag {
        FamilyTag::Product { factors } => factors.clone(),
        other => vec![other.clone()],
    }
}

/// Tensor product; `(u, v)` is vertex `u * |V(h)| + v`.
///
/// Labels carry the coordinate tuple, flattened when a factor is itself a
/// product, so `tensor_power(g, k)` labels have length `k`.
pub fn tensor_product(g: &Graph, h: &Graph, guard: usize) -> Result<Graph> {
    if g.n() == 0 || h.n() == 0 {
        return Err(Error::Domain("tensor product of an empty graph".into()));
    }
    let total = g.n() as u128 * h.n() as u128;
    if total > guard as u128 {
        return Err(Error::guard("tensor product", guard, total));
    }
    let (gn, hn) = (g.n(), h.n());
    let n = gn * hn;
    let mut adj = vec![VertexSet::new(n); n];
    for u in 0..gn {
        for v in 0..hn {
            let row = &mut adj[u * hn + v];
            for u2 in g.neighbors(u) {
                for v2 in h.neighbors(v) {
                    row.insert(u2 * hn + v2);
                }
            }
        }
    }
    let mut factors = factors_of(&g.tag);
    factors.extend(factors_of(&h.tag));
    let mut out = Graph::from_adjacency(adj, FamilyTag::Product { factors });
    let labels = (0..n)
        .map(|x| {
            let mut l = label_of(g, x / hn);
            l.extend(label_of(h, x % hn));
            l
        })
        .collect();
    out.set_labels(labels);
    Ok(out)
}

/// `g^k` as an iterated tensor product, `k >= 1`.
pub fn tensor_power(g: &Graph, k: usize, guard: usize) -> Result<Graph> {
    if k == 0 {
        return Err(Error::ParameterDomain("tensor power needs k >= 1".into()));
    }
    let total = (g.n() as u128).checked_pow(k as u32).unwrap_or(u128::MAX);
    if total > guard as u128 {
        return Err(Error::guard("tensor power", guard, total));
    }
    let mut acc = g.clone();
    if k == 1 {
        let labels = (0..g.n()).map(|v| vec![v]).collect();
        acc.set_labels(labels);
        acc.tag = FamilyTag::Product {
            factors: vec![g.tag.clone()],
        };
        return Ok(acc);
    }
    for _ in 1..k {
        acc = tensor_product(&acc, g, guard)?;
    }
    Ok(acc)
}

/// `g + h`: the vertices of `h` are shifted by `|V(g)|`.
pub fn disjoint_union(g: &Graph, h: &Graph) -> Graph {
    let (gn, hn) = (g.n(), h.n());
    let n = gn + hn;
    let mut adj = Vec::with_capacity(n);
    for v in 0..gn {
        adj.push(VertexSet::from_indices(n, g.neighbors(v).iter()));
    }
    for v in 0..hn {
        adj.push(VertexSet::from_indices(n, h.neighbors(v).iter().map(|w| w + gn)));
    }
    let (mut parts, mut sizes) = (Vec::new(), Vec::new());
    for part in [g, h] {
        match &part.tag {
            FamilyTag::Union { parts: p, sizes: s } => {
                parts.extend(p.iter().cloned());
                sizes.extend(s.iter().copied());
            }
            _ if part.n() == 0 => {}
            t => {
                parts.push(t.clone());
                sizes.push(part.n());
            }
        }
    }
    let tag = if parts.len() == 1 {
        parts.pop().unwrap()
    } else {
        FamilyTag::Union { parts, sizes }
    };
    Graph::from_adjacency(adj, tag)
}

/// `N(S)`: every vertex with a neighbour in `s`. May meet `s` itself.
pub fn neighborhood(g: &Graph, s: &VertexSet) -> Result<VertexSet> {
    if s.universe() != g.n() {
        return Err(Error::UniverseMismatch {
            expected: g.n(),
            found: s.universe(),
        });
    }
    let mut out = VertexSet::new(g.n());
    for v in s {
        out.union_with(g.neighbors(v));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{generate, Family};

    fn k(n: usize) -> Graph {
        generate(&Family::Complete(n)).unwrap()
    }

    #[test]
    fn k2_times_k2_is_two_edges() {
        let p = tensor_product(&k(2), &k(2), 100).unwrap();
        assert_eq!(p.n(), 4);
        // (0,0)=0 (0,1)=1 (1,0)=2 (1,1)=3
        assert_eq!(p.edges(), vec![(0, 3), (1, 2)]);
        assert_eq!(p.labels().unwrap()[2], vec![1, 0]);
    }

    #[test]
    fn degrees_multiply() {
        let c5 = generate(&Family::Cycle(5)).unwrap();
        let p = tensor_product(&c5, &k(3), 100).unwrap();
        assert_eq!(p.n(), 15);
        assert_eq!(p.regular_degree(), Some(4));
    }

    #[test]
    fn k2_cubed_is_perfect_matching() {
        let p = tensor_power(&k(2), 3, 100).unwrap();
        assert_eq!(p.n(), 8);
        assert_eq!(p.edge_count(), 4);
        assert_eq!(p.regular_degree(), Some(1));
        assert!(p.labels().unwrap().iter().all(|l| l.len() == 3));
        let c5sq = tensor_power(&generate(&Family::Cycle(5)).unwrap(), 2, 100).unwrap();
        assert_eq!((c5sq.n(), c5sq.regular_degree()), (25, Some(4)));
        let star = generate(&Family::Star(3)).unwrap();
        assert_eq!(tensor_power(&star, 2, 100).unwrap().n(), 16);
    }

    #[test]
    fn guard_names_limit() {
        let c5 = generate(&Family::Cycle(5)).unwrap();
        match tensor_power(&c5, 3, 100) {
            Err(Error::SizeGuard { limit, actual, .. }) => assert_eq!((limit, actual), (100, 125)),
            other => panic!("expected guard error, got {other:?}"),
        }
    }

    #[test]
    fn union_counts() {
        let u = disjoint_union(&k(2), &k(3));
        assert_eq!((u.n(), u.edge_count(), u.components().len()), (5, 4, 2));
        assert!(u.tag_is_consistent());
        let c5 = generate(&Family::Cycle(5)).unwrap();
        let cc = disjoint_union(&c5, &c5);
        assert_eq!((cc.n(), cc.edge_count()), (10, 10));
        let parts = cc.union_parts().unwrap();
        assert_eq!(parts.len(), 2);
        assert_eq!(parts[1].tag(), &FamilyTag::Cycle { len: 5 });
    }

    #[test]
    fn neighborhood_examples() {
        let c5 = generate(&Family::Cycle(5)).unwrap();
        let n0 = neighborhood(&c5, &VertexSet::from_indices(5, [0])).unwrap();
        assert_eq!(n0.to_vec(), vec![1, 4]);
        let n01 = neighborhood(&c5, &VertexSet::from_indices(5, [0, 1])).unwrap();
        assert_eq!(n01.to_vec(), vec![0, 1, 2, 4]);
        let star = generate(&Family::Star(3)).unwrap();
        let nc = neighborhood(&star, &VertexSet::from_indices(4, [0])).unwrap();
        assert_eq!(nc.to_vec(), vec![1, 2, 3]);
        assert!(matches!(
            neighborhood(&c5, &VertexSet::new(4)),
            Err(Error::UniverseMismatch { .. })
        ));
    }
}
