//! Spectral bound, fractional chromatic number of vertex-transitive graphs,
//! and the classifier that combines every certificate into a verdict on the
//! ultimate independence ratio `A(G)`.

use nalgebra::DMatrix;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::experiments::report::rational_serde;
use crate::graph::{disjoint_union, io::emit_graph6, is_vertex_transitive, tensor_product, Graph};
use crate::independence::{a_star_of, expansion_max, greedy_independent_set, max_independent_set, ExpansionWitness};
use crate::limits::Limits;
use crate::matching::{decide_a_one, AOneVerdict, FpmCertificate, HallViolator};
use crate::powers::power_lower_bounds;
use crate::ratio::{self, Rational};

/// Tolerance for every comparison involving eigenvalues.
pub const SPECTRAL_TOLERANCE: f64 = 1e-8;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SpectralBound {
    pub lambda_max: f64,
    pub lambda_min: f64,
    /// `-λ_min / (λ_max - λ_min)`.
    pub value: f64,
    pub tolerance: f64,
}

/// `Λ(G)` from the extreme adjacency eigenvalues of a regular graph.
pub fn spectral_lambda(g: &Graph, limits: &Limits) -> Result<SpectralBound> {
    let n = g.n();
    let Some(d) = g.regular_degree() else {
        return Err(Error::Domain("spectral bound needs a regular graph".into()));
    };
    if d == 0 {
        return Err(Error::Domain("spectral bound needs at least one edge".into()));
    }
    Limits::check("spectral bound", limits.spectral_vertices, n)?;
    let a = DMatrix::from_fn(n, n, |i, j| if g.has_edge(i, j) { 1.0 } else { 0.0 });
    let eig = a.symmetric_eigen();
    let lambda_max: f64 = eig.eigenvalues.max();
    let lambda_min: f64 = eig.eigenvalues.min();
    if (lambda_max - d as f64).abs() > SPECTRAL_TOLERANCE {
        return Err(Error::Certificate(format!(
            "largest eigenvalue {lambda_max} differs from degree {d}"
        )));
    }
    let value = -lambda_min / (lambda_max - lambda_min);
    Ok(SpectralBound {
        lambda_max,
        lambda_min,
        value,
        tolerance: SPECTRAL_TOLERANCE,
    })
}

fn require_transitive(g: &Graph, limits: &Limits) -> Result<()> {
    if is_vertex_transitive(g, limits.transitivity_vertices).is_transitive() {
        Ok(())
    } else {
        Err(Error::Domain(
            "vertex-transitivity is not established for this graph".into(),
        ))
    }
}

/// `χ_f(G) = |V| / α(G)`, valid for vertex-transitive graphs only.
pub fn chi_f_vertex_transitive(g: &Graph, limits: &Limits) -> Result<Rational> {
    require_transitive(g, limits)?;
    let alpha = max_independent_set(g, limits)?.size;
    if alpha == 0 {
        return Err(Error::Domain("empty graph".into()));
    }
    Ok(ratio::ratio(g.n(), alpha))
}

/// One piece of evidence behind an [`AClassification`], carrying what is
/// needed to re-check it.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case", tag = "tag")]
pub enum Evidence {
    /// `a*(G)` from an expansion witness; `exact_search` is false when only
    /// a greedy set was tried.
    AStar {
        witness: ExpansionWitness,
        exact_search: bool,
    },
    FpmCertificate { certificate: FpmCertificate },
    HallViolator { violator: HallViolator },
    /// `A(G) = i(G)` for a vertex-transitive graph.
    VertexTransitive { alpha: usize, witness: crate::graph::VertexSet },
    /// `A(G_1 + ... + G_m) = i(G_1 x ... x G_m)` for vertex-transitive parts.
    VtUnionProduct {
        parts: Vec<String>,
        product_vertices: usize,
        alpha: usize,
        witness: crate::graph::VertexSet,
    },
    /// An exact maximum independent set of `G^k`.
    PowerWitness {
        power: usize,
        alpha: usize,
        #[serde(with = "rational_serde")]
        ratio: Rational,
    },
    Spectral {
        bound: SpectralBound,
        #[serde(with = "rational_serde")]
        rational_upper: Rational,
    },
}

impl Evidence {
    pub fn tag(&self) -> String {
        match self {
            Evidence::AStar { .. } => "a-star".into(),
            Evidence::FpmCertificate { .. } => "fpm-certificate".into(),
            Evidence::HallViolator { .. } => "hall-violator".into(),
            Evidence::VertexTransitive { .. } => "vertex-transitive".into(),
            Evidence::VtUnionProduct { .. } => "vt-union-product".into(),
            Evidence::PowerWitness { power, .. } => format!("power-witness {power}"),
            Evidence::Spectral { .. } => "spectral".into(),
        }
    }

    /// Re-checks the attached certificate against `g`.
    pub fn verify(&self, g: &Graph) -> Result<()> {
        match self {
            Evidence::AStar { witness, .. } => witness.verify(g),
            Evidence::FpmCertificate { certificate } => certificate.verify(g),
            Evidence::HallViolator { violator } => violator.verify(g),
            Evidence::VertexTransitive { alpha, witness } => {
                if witness.len() != *alpha || !g.is_independent(witness) {
                    return Err(Error::Certificate("transitive witness is not a valid set".into()));
                }
                Ok(())
            }
            Evidence::VtUnionProduct {
                product_vertices,
                alpha,
                witness,
                ..
            } => {
                if witness.universe() != *product_vertices || witness.len() != *alpha {
                    return Err(Error::Certificate("product witness has the wrong size".into()));
                }
                Ok(())
            }
            Evidence::PowerWitness { .. } | Evidence::Spectral { .. } => Ok(()),
        }
    }
}

/// Verdict on `A(G)`: an exact value or a certified interval.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AClassification {
    #[serde(with = "rational_serde")]
    pub lower: Rational,
    #[serde(with = "rational_serde")]
    pub upper: Rational,
    pub exact: bool,
    pub provenance: Vec<String>,
    pub evidence: Vec<Evidence>,
}

impl AClassification {
    fn exact(value: Rational, evidence: Vec<Evidence>) -> Self {
        AClassification {
            lower: value.clone(),
            upper: value,
            exact: true,
            provenance: evidence.iter().map(Evidence::tag).collect(),
            evidence,
        }
    }

    pub fn verify(&self, g: &Graph) -> Result<()> {
        if self.lower > self.upper {
            return Err(Error::Certificate("lower bound above upper bound".into()));
        }
        if self.exact && self.lower != self.upper {
            return Err(Error::Certificate("exact verdict with a nontrivial interval".into()));
        }
        self.evidence.iter().try_for_each(|e| e.verify(g))
    }
}

/// Parts of a disjoint union: the union tag when present, else components.
fn union_parts(g: &Graph) -> Vec<Graph> {
    if let Some(parts) = g.union_parts() {
        if parts.len() >= 2 {
            return parts;
        }
    }
    let comps = g.components();
    if comps.len() >= 2 {
        comps.iter().map(|c| g.induced(c)).collect()
    } else {
        vec![g.clone()]
    }
}

/// Exact `i(G_1 x ... x G_m)` for vertex-transitive parts, when it fits.
fn vt_union_route(g: &Graph, limits: &Limits) -> Option<Evidence> {
    let parts = union_parts(g);
    if parts.len() < 2 {
        return None;
    }
    if !parts
        .iter()
        .all(|p| is_vertex_transitive(p, limits.transitivity_vertices).is_transitive())
    {
        return None;
    }
    let mut product = parts[0].clone();
    for p in &parts[1..] {
        product = tensor_product(&product, p, limits.product_vertices).ok()?;
    }
    let mis = max_independent_set(&product, limits).ok()?;
    Some(Evidence::VtUnionProduct {
        parts: parts.iter().map(emit_graph6).collect(),
        product_vertices: product.n(),
        alpha: mis.size,
        witness: mis.witness,
    })
}

/// Classifies `A(G)`:
///
/// 1. no fractional perfect matching: exactly 1;
/// 2. vertex-transitive: exactly `i(G)`;
/// 3. disjoint union of vertex-transitive parts: exactly `i` of their
///    tensor product;
/// 4. otherwise the interval `[max(a*, i(G^k)), 1/2]`, with the upper end
///    lowered to `Λ(G)` for regular graphs.
///
/// An interval that closes (e.g. `a* = 1/2`) is reported as exact.
pub fn classify_a(g: &Graph, limits: &Limits) -> Result<AClassification> {
    let n = g.n();
    if n == 0 {
        return Err(Error::Domain("A(G) is undefined for the empty graph".into()));
    }
    let certificate = match decide_a_one(g) {
        AOneVerdict::AEqualsOne { violator } => {
            return Ok(AClassification::exact(
                ratio::one(),
                vec![Evidence::HallViolator { violator }],
            ));
        }
        AOneVerdict::AtMostHalf { certificate } => certificate,
    };

    if is_vertex_transitive(g, limits.transitivity_vertices).is_transitive() {
        if let Ok(mis) = max_independent_set(g, limits) {
            return Ok(AClassification::exact(
                ratio::ratio(mis.size, n),
                vec![Evidence::VertexTransitive {
                    alpha: mis.size,
                    witness: mis.witness,
                }],
            ));
        }
    }

    if let Some(ev @ Evidence::VtUnionProduct {
        product_vertices,
        alpha,
        ..
    }) = vt_union_route(g, limits)
    {
        let value = ratio::ratio(alpha, product_vertices);
        return Ok(AClassification::exact(value, vec![ev]));
    }

    let mut evidence = Vec::new();
    let (witness, exact_search) = match expansion_max(g, limits) {
        Ok(w) => (w, true),
        Err(Error::SizeGuard { .. }) => {
            (ExpansionWitness::from_set(g, greedy_independent_set(g))?, false)
        }
        Err(e) => return Err(e),
    };
    let mut lower = a_star_of(&witness.ratio);
    if !exact_search && lower == ratio::one() {
        // A greedy set above one half only says a(G) > 1/2, already excluded.
        lower = ratio::half();
    }
    evidence.push(Evidence::AStar {
        witness,
        exact_search,
    });
    for entry in power_lower_bounds(g, limits) {
        if entry.ratio > lower {
            lower = entry.ratio.clone();
        }
        evidence.push(Evidence::PowerWitness {
            power: entry.power,
            alpha: entry.alpha,
            ratio: entry.ratio,
        });
    }

    let mut upper = ratio::half();
    evidence.push(Evidence::FpmCertificate { certificate });
    if g.regular_degree().is_some_and(|d| d > 0) {
        if let Ok(bound) = spectral_lambda(g, limits) {
            let rational_upper = ratio::ceil_decimal(bound.value + SPECTRAL_TOLERANCE);
            if rational_upper < upper {
                upper = rational_upper.clone();
                evidence.push(Evidence::Spectral {
                    bound,
                    rational_upper,
                });
            }
        }
    }
    if lower > upper {
        return Err(Error::Certificate(format!(
            "lower bound {} exceeds upper bound {}",
            ratio::to_string(&lower),
            ratio::to_string(&upper)
        )));
    }
    let exact = lower == upper;
    Ok(AClassification {
        provenance: evidence.iter().map(Evidence::tag).collect(),
        lower,
        upper,
        exact,
        evidence,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Statement {
    pub name: String,
    pub lhs: String,
    pub rhs: String,
    pub holds: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EquivalenceReport {
    pub statements: Vec<Statement>,
    /// True when the four statements are all true or all false.
    pub all_or_none: bool,
    /// How `a*(G1 x G2)` was obtained: `search` or `transitive-product`.
    pub a_star_product_route: String,
}

fn require_edges(g: &Graph) -> Result<()> {
    if g.edge_count() == 0 {
        Err(Error::Domain("graph needs at least one edge".into()))
    } else {
        Ok(())
    }
}

/// Evaluates the four equivalent statements for two vertex-transitive
/// graphs with edges:
/// `i(G1 x G2) <= max a*`, `a*(G1 x G2) <= max a*`,
/// `χ_f(G1 x G2) = min χ_f`, and `A(G1 + G2) = max A`.
pub fn theorem3_equivalence_check(g1: &Graph, g2: &Graph, limits: &Limits) -> Result<EquivalenceReport> {
    for g in [g1, g2] {
        require_transitive(g, limits)?;
        require_edges(g)?;
    }
    let product = tensor_product(g1, g2, limits.product_vertices)?;
    let alpha_p = max_independent_set(&product, limits)?.size;
    let i_p = ratio::ratio(alpha_p, product.n());

    let a1 = a_star_of(&expansion_max(g1, limits).map(|w| w.ratio).or_else(|_| i_of(g1, limits))?);
    let a2 = a_star_of(&expansion_max(g2, limits).map(|w| w.ratio).or_else(|_| i_of(g2, limits))?);
    let max_a = a1.clone().max(a2.clone());

    // The product of transitive graphs is transitive, so a = i there; the
    // search is still run when it fits.
    let (a_p, route) = match expansion_max(&product, limits) {
        Ok(w) => (a_star_of(&w.ratio), "search"),
        Err(Error::SizeGuard { .. }) => (i_p.clone(), "transitive-product"),
        Err(e) => return Err(e),
    };

    let chi_p = ratio::ratio(product.n(), alpha_p);
    let chi1 = chi_f_vertex_transitive(g1, limits)?;
    let chi2 = chi_f_vertex_transitive(g2, limits)?;
    let min_chi = chi1.clone().min(chi2.clone());

    let union = disjoint_union(g1, g2);
    let a_union = classify_a(&union, limits)?;
    let a_g1 = classify_a(g1, limits)?;
    let a_g2 = classify_a(g2, limits)?;
    if !(a_union.exact && a_g1.exact && a_g2.exact) {
        return Err(Error::Domain("A could not be determined exactly".into()));
    }
    let max_a_parts = a_g1.lower.clone().max(a_g2.lower.clone());

    let s = ratio::to_string;
    let statements = vec![
        Statement {
            name: "i(G1xG2) <= max a*".into(),
            lhs: s(&i_p),
            rhs: s(&max_a),
            holds: i_p <= max_a,
        },
        Statement {
            name: "a*(G1xG2) <= max a*".into(),
            lhs: s(&a_p),
            rhs: s(&max_a),
            holds: a_p <= max_a,
        },
        Statement {
            name: "chi_f(G1xG2) = min chi_f".into(),
            lhs: s(&chi_p),
            rhs: s(&min_chi),
            holds: chi_p == min_chi,
        },
        Statement {
            name: "A(G1+G2) = max A".into(),
            lhs: s(&a_union.lower),
            rhs: s(&max_a_parts),
            holds: a_union.lower == max_a_parts,
        },
    ];
    let holding = statements.iter().filter(|st| st.holds).count();
    Ok(EquivalenceReport {
        all_or_none: holding == 0 || holding == statements.len(),
        statements,
        a_star_product_route: route.into(),
    })
}

fn i_of(g: &Graph, limits: &Limits) -> Result<Rational> {
    Ok(ratio::ratio(max_independent_set(g, limits)?.size, g.n()))
}

/// `χ_f(G1 x G2) >= min{χ_f(G1), χ_f(G2)} / 4`, checked exactly.
pub fn tardif_quarter_check(g1: &Graph, g2: &Graph, limits: &Limits) -> Result<bool> {
    let chi1 = chi_f_vertex_transitive(g1, limits)?;
    let chi2 = chi_f_vertex_transitive(g2, limits)?;
    let product = tensor_product(g1, g2, limits.product_vertices)?;
    let alpha = max_independent_set(&product, limits)?.size;
    let chi_p = ratio::ratio(product.n(), alpha);
    Ok(chi_p * ratio::ratio(4, 1) >= chi1.min(chi2))
}
