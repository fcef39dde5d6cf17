use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

use super::{FamilyTag, Graph};

/// Named graph families understood by [`generate`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Family {
    Cycle(usize),
    Path(usize),
    Complete(usize),
    CompleteBipartite(usize, usize),
    /// `K_{1,k}`: vertex 0 is the centre.
    Star(usize),
    /// k-subsets of an n-set, adjacent when disjoint.
    Kneser(usize, usize),
    /// Vertices `0..n`, `i ~ j` when `d <= |i - j| <= n - d`.
    Circular(usize, usize),
    Petersen,
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Family::Cycle(l) => write!(f, "cycle:{l}"),
            Family::Path(l) => write!(f, "path:{l}"),
            Family::Complete(k) => write!(f, "complete:{k}"),
            Family::CompleteBipartite(m, n) => write!(f, "complete_bipartite:{m}:{n}"),
            Family::Star(k) => write!(f, "star:{k}"),
            Family::Kneser(n, k) => write!(f, "kneser:{n}:{k}"),
            Family::Circular(n, d) => write!(f, "circular:{n}:{d}"),
            Family::Petersen => write!(f, "petersen"),
        }
    }
}

impl FromStr for Family {
    type Err = Error;

    /// Parses `name[:p[:q]]`, e.g. `cycle:5`, `kneser:5:2`, `petersen`.
    fn from_str(s: &str) -> Result<Self> {
        let mut parts = s.trim().split(':');
        let name = parts.next().unwrap_or_default().to_ascii_lowercase();
        let params: Vec<usize> = parts
            .map(|p| {
                p.parse()
                    .map_err(|_| Error::ParameterDomain(format!("bad parameter {p:?} in {s:?}")))
            })
            .collect::<Result<_>>()?;
        let want = |k: usize| -> Result<()> {
            if params.len() == k {
                Ok(())
            } else {
                Err(Error::ParameterDomain(format!(
                    "family {name} takes {k} parameter(s), got {}",
                    params.len()
                )))
            }
        };
        let family = match name.as_str() {
            "cycle" | "c" => {
                want(1)?;
                Family::Cycle(params[0])
            }
            "path" | "p" => {
                want(1)?;
                Family::Path(params[0])
            }
            "complete" | "k" => {
                want(1)?;
                Family::Complete(params[0])
            }
            "complete_bipartite" | "bipartite" | "kmn" => {
                want(2)?;
                Family::CompleteBipartite(params[0], params[1])
            }
            "star" => {
                want(1)?;
                Family::Star(params[0])
            }
            "kneser" => {
                want(2)?;
                Family::Kneser(params[0], params[1])
            }
            "circular" => {
                want(2)?;
                Family::Circular(params[0], params[1])
            }
            "petersen" => {
                want(0)?;
                Family::Petersen
            }
            other => return Err(Error::ParameterDomain(format!("unknown family {other:?}"))),
        };
        Ok(family)
    }
}

fn domain(msg: String) -> Error {
    Error::ParameterDomain(msg)
}

/// Builds the canonical labelled member of a family.
pub fn generate(family: &Family) -> Result<Graph> {
    let g = match *family {
        Family::Cycle(l) => {
            if l < 3 {
                return Err(domain(format!("cycle needs length >= 3, got {l}")));
            }
            Graph::from_edges(l, (0..l).map(|i| (i, (i + 1) % l)))?
                .with_tag(FamilyTag::Cycle { len: l })
        }
        Family::Path(l) => {
            if l < 1 {
                return Err(domain("path needs at least one vertex".into()));
            }
            Graph::from_edges(l, (1..l).map(|i| (i - 1, i)))?.with_tag(FamilyTag::Path { len: l })
        }
        Family::Complete(k) => {
            if k < 1 {
                return Err(domain("complete graph needs k >= 1".into()));
            }
            let edges = (0..k).flat_map(|u| (u + 1..k).map(move |v| (u, v)));
            Graph::from_edges(k, edges)?.with_tag(FamilyTag::Complete { k })
        }
        Family::CompleteBipartite(m, n) => {
            if m < 1 || n < 1 {
                return Err(domain(format!("complete bipartite needs m, n >= 1, got {m}, {n}")));
            }
            let edges = (0..m).flat_map(|u| (m..m + n).map(move |v| (u, v)));
            Graph::from_edges(m + n, edges)?.with_tag(FamilyTag::CompleteBipartite { m, n })
        }
        Family::Star(k) => {
            if k < 1 {
                return Err(domain("star needs at least one leaf".into()));
            }
            Graph::from_edges(k + 1, (1..=k).map(|v| (0, v)))?
                .with_tag(FamilyTag::Star { leaves: k })
        }
        Family::Kneser(n, k) => {
            if k < 1 || k > n {
                return Err(domain(format!("kneser needs n >= k >= 1, got {n}, {k}")));
            }
            if n > 63 {
                return Err(domain(format!("kneser ground set of {n} is too large")));
            }
            let subsets = k_subsets(n, k);
            let mut g = Graph::empty(subsets.len());
            for i in 0..subsets.len() {
                for j in i + 1..subsets.len() {
                    if subsets[i] & subsets[j] == 0 {
                        g.add_edge(i, j);
                    }
                }
            }
            let labels = subsets
                .iter()
                .map(|&m| (0..n).filter(|b| m >> b & 1 == 1).collect())
                .collect();
            g.set_labels(labels);
            g.with_tag(FamilyTag::Kneser { n, k })
        }
        Family::Circular(n, d) => {
            if d < 1 || n < 2 * d {
                return Err(domain(format!("circular complete needs n >= 2d >= 2, got {n}, {d}")));
            }
            let edges = (0..n).flat_map(|i| {
                (i + 1..n)
                    .filter(move |&j| {
                        let gap = j - i;
                        d <= gap && gap <= n - d
                    })
                    .map(move |j| (i, j))
            });
            Graph::from_edges(n, edges)?.with_tag(FamilyTag::Circular { n, d })
        }
        Family::Petersen => {
            let mut g = generate(&Family::Kneser(5, 2))?;
            g.tag = FamilyTag::Petersen;
            g
        }
    };
    Ok(g)
}

/// All k-subsets of `0..n` as bitmasks, in lexicographic order of their
/// sorted element lists.
fn k_subsets(n: usize, k: usize) -> Vec<u64> {
    let mut out = Vec::new();
    let mut idx: Vec<usize> = (0..k).collect();
    loop {
        out.push(idx.iter().fold(0u64, |m, &b| m | 1 << b));
        let mut i = k;
        while i > 0 && idx[i - 1] == n - k + i - 1 {
            i -= 1;
        }
        if i == 0 {
            return out;
        }
        idx[i - 1] += 1;
        for j in i..k {
            idx[j] = idx[j - 1] + 1;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cycle_five() {
        let g = generate(&Family::Cycle(5)).unwrap();
        assert_eq!((g.n(), g.edge_count(), g.regular_degree()), (5, 5, Some(2)));
    }

    #[test]
    fn kneser_five_two_is_petersen_sized() {
        // Oracle: count disjoint pairs among the C(5,2) subsets directly.
        let subsets: Vec<(usize, usize)> =
            (0..5).flat_map(|a| (a + 1..5).map(move |b| (a, b))).collect();
        let disjoint = subsets
            .iter()
            .enumerate()
            .flat_map(|(i, x)| subsets[i + 1..].iter().map(move |y| (x, y)))
            .filter(|(x, y)| x.0 != y.0 && x.0 != y.1 && x.1 != y.0 && x.1 != y.1)
            .count();
        let g = generate(&Family::Kneser(5, 2)).unwrap();
        assert_eq!(g.n(), subsets.len());
        assert_eq!(g.edge_count(), disjoint);
        assert_eq!((g.n(), g.edge_count(), g.regular_degree()), (10, 15, Some(3)));
    }

    #[test]
    fn circular_five_two_edges() {
        let g = generate(&Family::Circular(5, 2)).unwrap();
        assert_eq!(g.edges(), vec![(0, 2), (0, 3), (1, 3), (1, 4), (2, 4)]);
    }

    #[test]
    fn parameter_domain_errors() {
        for bad in [
            Family::Cycle(2),
            Family::Path(0),
            Family::Complete(0),
            Family::CompleteBipartite(0, 3),
            Family::Star(0),
            Family::Kneser(2, 3),
            Family::Kneser(4, 0),
            Family::Circular(5, 3),
            Family::Circular(4, 0),
        ] {
            assert!(
                matches!(generate(&bad), Err(Error::ParameterDomain(_))),
                "{bad} should be rejected"
            );
        }
    }

    #[test]
    fn family_spec_round_trip() {
        for s in ["cycle:5", "kneser:5:2", "circular:7:2", "petersen", "complete_bipartite:2:3"] {
            let f: Family = s.parse().unwrap();
            assert_eq!(f.to_string(), s);
        }
        assert!("cycle".parse::<Family>().is_err());
        assert!("dodecahedron:3".parse::<Family>().is_err());
    }

    #[test]
    fn tags_rebuild() {
        for f in [Family::Cycle(7), Family::Star(3), Family::Kneser(6, 2), Family::Petersen] {
            assert!(generate(&f).unwrap().tag_is_consistent());
        }
    }
}
