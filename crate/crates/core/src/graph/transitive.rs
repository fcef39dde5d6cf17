use serde::{Deserialize, Serialize};

use super::{FamilyTag, Graph};

/// Outcome of a vertex-transitivity check. `Unknown` is returned above the
/// size guard and must never be read as `false`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Transitivity {
    Transitive,
    NotTransitive,
    Unknown,
}

impl Transitivity {
    pub fn is_transitive(self) -> bool {
        self == Transitivity::Transitive
    }
}

/// Decides whether `Aut(g)` is transitive on vertices.
///
/// Generator tags that are transitive by construction short-circuit. Other
/// graphs up to `guard` vertices are searched exhaustively: for every target
/// `w` an automorphism mapping vertex 0 to `w` is looked for by backtracking
/// over degree-compatible images.
pub fn is_vertex_transitive(g: &Graph, guard: usize) -> Transitivity {
    if g.tag().is_transitive_by_construction() {
        return Transitivity::Transitive;
    }
    if let FamilyTag::Union { parts, .. } = g.tag() {
        // Identical transitive parts give a transitive union.
        if parts.iter().all(|p| p.is_transitive_by_construction() && p == &parts[0]) {
            return Transitivity::Transitive;
        }
    }
    let n = g.n();
    if n <= 1 {
        return Transitivity::Transitive;
    }
    if g.regular_degree().is_none() {
        return Transitivity::NotTransitive;
    }
    if n > guard {
        return Transitivity::Unknown;
    }
    let mut in_orbit = vec![false; n];
    in_orbit[0] = true;
    for w in 1..n {
        if in_orbit[w] {
            continue;
        }
        match find_automorphism(g, 0, w) {
            Some(perm) => {
                // Close the known orbit under this automorphism.
                let mut changed = true;
                while changed {
                    changed = false;
                    for v in 0..n {
                        if in_orbit[v] && !in_orbit[perm[v]] {
                            in_orbit[perm[v]] = true;
                            changed = true;
                        }
                    }
                }
            }
            None => return Transitivity::NotTransitive,
        }
    }
    Transitivity::Transitive
}

/// An automorphism of `g` sending `from` to `to`, if one exists.
pub fn find_automorphism(g: &Graph, from: usize, to: usize) -> Option<Vec<usize>> {
    let n = g.n();
    if g.degree(from) != g.degree(to) {
        return None;
    }
    // Map vertices in BFS order from `from` so every new vertex (after the
    // first in its component) already has a mapped neighbour.
    let mut order = Vec::with_capacity(n);
    let mut seen = vec![false; n];
    for root in std::iter::once(from).chain(0..n) {
        if seen[root] {
            continue;
        }
        seen[root] = true;
        let start = order.len();
        order.push(root);
        let mut i = start;
        while i < order.len() {
            let v = order[i];
            for w in g.neighbors(v) {
                if !seen[w] {
                    seen[w] = true;
                    order.push(w);
                }
            }
            i += 1;
        }
    }
    let degrees = g.degrees();
    let mut image = vec![usize::MAX; n];
    let mut used = vec![false; n];
    image[from] = to;
    used[to] = true;

    fn extend(
        g: &Graph,
        order: &[usize],
        pos: usize,
        degrees: &[usize],
        image: &mut [usize],
        used: &mut [bool],
    ) -> bool {
        if pos == order.len() {
            return true;
        }
        let v = order[pos];
        let mapped: Vec<usize> = order[..pos].to_vec();
        // Restrict candidates to neighbours of a mapped neighbour's image.
        let anchor = mapped.iter().find(|&&u| g.has_edge(u, v)).copied();
        let candidates: Vec<usize> = match anchor {
            Some(u) => g.neighbors(image[u]).iter().collect(),
            None => (0..g.n()).collect(),
        };
        for c in candidates {
            if used[c] || degrees[c] != degrees[v] {
                continue;
            }
            if mapped
                .iter()
                .all(|&u| g.has_edge(u, v) == g.has_edge(image[u], c))
            {
                image[v] = c;
                used[c] = true;
                if extend(g, order, pos + 1, degrees, image, used) {
                    return true;
                }
                used[c] = false;
                image[v] = usize::MAX;
            }
        }
        false
    }

    extend(g, &order, 1, &degrees, &mut image, &mut used).then_some(image)
}
