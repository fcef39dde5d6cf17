//! Certified independent sets in tensor powers and the union-power identity.
//!
//! Power vertices are coordinate tuples in row-major order: the tuple
//! `(c_1, ..., c_k)` is vertex `((c_1 n + c_2) n + ...) n + c_k`, matching
//! [`tensor_power`]. Set sizes are exact big integers; a set is
//! materialized and checked only when the tuple space fits the guard.

use num_bigint::BigUint;
use num_integer::binomial;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::experiments::report::{biguint_serde, rational_serde};
use crate::graph::{disjoint_union, neighborhood, tensor_power, tensor_product, Graph, VertexSet};
use crate::independence::max_independent_set;
use crate::limits::Limits;
use crate::ratio::Rational;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Construction {
    /// Tuples whose first coordinate in `I ∪ N(I)` lies in `I`.
    FirstCoordinate,
    /// Tuples with strictly more than `k/2` coordinates in `I`.
    Majority,
}

/// How independence of the witness set was established.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum WitnessCheck {
    /// Materialized and checked edge by edge.
    Verified,
    /// Too large to materialize; independence follows from the construction.
    Analytic,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PowerWitness {
    #[serde(with = "crate::experiments::report::graph6_serde")]
    pub base: Graph,
    pub base_vertices: usize,
    pub power: usize,
    pub construction: Construction,
    #[serde(with = "biguint_serde")]
    pub set_size: BigUint,
    #[serde(with = "rational_serde")]
    pub ratio: Rational,
    pub explicit_set: Option<VertexSet>,
    pub check: WitnessCheck,
}

impl PowerWitness {
    /// Re-checks a materialized witness: size, ratio and independence.
    pub fn verify(&self) -> Result<()> {
        let total = BigUint::from(self.base.n()).pow(self.power as u32);
        if self.ratio != Rational::new(self.set_size.clone().into(), total.into()) {
            return Err(Error::Certificate("ratio differs from size / n^k".into()));
        }
        if let Some(set) = &self.explicit_set {
            if BigUint::from(set.len()) != self.set_size {
                return Err(Error::Certificate(format!(
                    "materialized {} tuples, closed form says {}",
                    set.len(),
                    self.set_size
                )));
            }
            if !is_independent_in_power(&self.base, self.power, set) {
                return Err(Error::Certificate("witness set is not independent".into()));
            }
        }
        Ok(())
    }
}

fn decode(mut idx: usize, n: usize, k: usize, out: &mut [usize]) {
    for slot in out[..k].iter_mut().rev() {
        *slot = idx % n;
        idx /= n;
    }
}

/// Checks independence of `set` inside `g^k` without building the power:
/// the neighbours of a tuple are all tuples adjacent in every coordinate.
pub fn is_independent_in_power(g: &Graph, k: usize, set: &VertexSet) -> bool {
    let n = g.n();
    let lists: Vec<Vec<usize>> = (0..n).map(|v| g.neighbors(v).to_vec()).collect();
    let mut coords = vec![0; k];
    let mut choice = vec![0; k];
    for x in set {
        decode(x, n, k, &mut coords);
        if coords.iter().any(|&c| lists[c].is_empty()) {
            continue;
        }
        choice.iter_mut().for_each(|c| *c = 0);
        loop {
            let y = coords
                .iter()
                .zip(&choice)
                .fold(0, |acc, (&c, &i)| acc * n + lists[c][i]);
            if y > x && set.contains(y) {
                return false;
            }
            // Odometer over the neighbour lists.
            let mut exhausted = true;
            for pos in (0..k).rev() {
                choice[pos] += 1;
                if choice[pos] < lists[coords[pos]].len() {
                    exhausted = false;
                    break;
                }
                choice[pos] = 0;
            }
            if exhausted {
                break;
            }
        }
    }
    true
}

fn tuple_space(n: usize, k: usize) -> Option<usize> {
    n.checked_pow(k as u32)
}

fn require_independent(g: &Graph, i: &VertexSet) -> Result<()> {
    if i.universe() != g.n() {
        return Err(Error::UniverseMismatch {
            expected: g.n(),
            found: i.universe(),
        });
    }
    if !g.is_independent(i) {
        return Err(Error::Domain("witness base set is not independent".into()));
    }
    Ok(())
}

fn build(
    g: &Graph,
    k: usize,
    construction: Construction,
    set_size: BigUint,
    member: impl Fn(&[usize]) -> bool,
    limits: &Limits,
) -> Result<PowerWitness> {
    let n = g.n();
    let total = BigUint::from(n).pow(k as u32);
    let ratio = Rational::new(set_size.clone().into(), total.into());
    let explicit_set = match tuple_space(n, k) {
        Some(space) if space <= limits.materialize_vertices => {
            let mut set = VertexSet::new(space);
            let mut coords = vec![0; k];
            for x in 0..space {
                decode(x, n, k, &mut coords);
                if member(&coords) {
                    set.insert(x);
                }
            }
            Some(set)
        }
        _ => None,
    };
    let check = if explicit_set.is_some() {
        WitnessCheck::Verified
    } else {
        WitnessCheck::Analytic
    };
    let w = PowerWitness {
        base: g.clone(),
        base_vertices: n,
        power: k,
        construction,
        set_size,
        ratio,
        explicit_set,
        check,
    };
    w.verify()?;
    Ok(w)
}

/// `Σ_{j=1..k} (n - s)^{j-1} |I| n^{k-j}` with `s = |I ∪ N(I)|`.
pub fn first_coordinate_count(n: usize, i: usize, s: usize, k: usize) -> BigUint {
    let (n_b, rest, i_b) = (BigUint::from(n), BigUint::from(n - s), BigUint::from(i));
    (1..=k)
        .map(|j| rest.pow(j as u32 - 1) * &i_b * n_b.pow((k - j) as u32))
        .sum()
}

/// `Σ_{j > k/2} C(k, j) |I|^j (n - |I|)^{k-j}`.
pub fn majority_count(n: usize, i: usize, k: usize) -> BigUint {
    let (i_b, rest) = (BigUint::from(i), BigUint::from(n - i));
    (0..=k)
        .filter(|&j| 2 * j > k)
        .map(|j| binomial(BigUint::from(k), BigUint::from(j)) * i_b.pow(j as u32) * rest.pow((k - j) as u32))
        .sum()
}

/// Tuples that meet `S = I ∪ N(I)` and whose first coordinate in `S` is in `I`.
pub fn witness_first_coordinate(
    g: &Graph,
    i: &VertexSet,
    k: usize,
    limits: &Limits,
) -> Result<PowerWitness> {
    if k == 0 {
        return Err(Error::ParameterDomain("power must be at least 1".into()));
    }
    require_independent(g, i)?;
    let s = i.union(&neighborhood(g, i)?);
    let size = first_coordinate_count(g.n(), i.len(), s.len(), k);
    build(
        g,
        k,
        Construction::FirstCoordinate,
        size,
        |coords| {
            coords
                .iter()
                .find(|&&c| s.contains(c))
                .is_some_and(|&c| i.contains(c))
        },
        limits,
    )
}

/// Tuples with more than `k/2` coordinates in `I`.
pub fn witness_majority(g: &Graph, i: &VertexSet, k: usize, limits: &Limits) -> Result<PowerWitness> {
    if k == 0 {
        return Err(Error::ParameterDomain("power must be at least 1".into()));
    }
    require_independent(g, i)?;
    let size = majority_count(g.n(), i.len(), k);
    build(
        g,
        k,
        Construction::Majority,
        size,
        |coords| 2 * coords.iter().filter(|&&c| i.contains(c)).count() > k,
        limits,
    )
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct UnionPowerSummand {
    /// Number of coordinates taken from the first graph.
    pub k: usize,
    #[serde(with = "biguint_serde")]
    pub binomial: BigUint,
    pub alpha: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct UnionPowerReport {
    pub power: usize,
    /// `α((G + H)^n)` computed directly.
    pub direct: usize,
    pub summands: Vec<UnionPowerSummand>,
    #[serde(with = "biguint_serde")]
    pub decomposed: BigUint,
    pub holds: bool,
}

/// Computes both sides of `α((G+H)^n) = Σ_k C(n,k) α(G^k H^{n-k})`.
pub fn union_power_decomposition(
    g: &Graph,
    h: &Graph,
    n: usize,
    limits: &Limits,
) -> Result<UnionPowerReport> {
    if n == 0 {
        return Err(Error::ParameterDomain("power must be at least 1".into()));
    }
    let guard = limits.product_vertices;
    let union = disjoint_union(g, h);
    let direct = max_independent_set(&tensor_power(&union, n, guard)?, limits)?.size;
    let summands = (0..=n)
        .into_par_iter()
        .map(|k| {
            let product = match (k, n - k) {
                (0, m) => tensor_power(h, m, guard)?,
                (k, 0) => tensor_power(g, k, guard)?,
                (k, m) => tensor_product(&tensor_power(g, k, guard)?, &tensor_power(h, m, guard)?, guard)?,
            };
            Ok(UnionPowerSummand {
                k,
                binomial: binomial(BigUint::from(n), BigUint::from(k)),
                alpha: max_independent_set(&product, limits)?.size,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let decomposed: BigUint = summands
        .iter()
        .map(|s| &s.binomial * BigUint::from(s.alpha))
        .sum();
    let holds = decomposed == BigUint::from(direct);
    Ok(UnionPowerReport {
        power: n,
        direct,
        summands,
        decomposed,
        holds,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PowerScanEntry {
    pub power: usize,
    pub alpha: usize,
    #[serde(with = "rational_serde")]
    pub ratio: Rational,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PowerScan {
    pub entries: Vec<PowerScanEntry>,
    /// First power that could not be computed, with the reason.
    pub cutoff: Option<(usize, String)>,
    pub monotone: bool,
}

/// Exact `i(G^k)` for `k = 1..=k_max`, stopping at the first guard hit.
pub fn power_ratio_scan(g: &Graph, k_max: usize, limits: &Limits) -> Result<PowerScan> {
    if g.n() == 0 {
        return Err(Error::Domain("power scan of the empty graph".into()));
    }
    let mut entries: Vec<PowerScanEntry> = Vec::new();
    let mut cutoff = None;
    for k in 1..=k_max {
        let step = tensor_power(g, k, limits.product_vertices.min(limits.bnb_vertices))
            .and_then(|p| max_independent_set(&p, limits).map(|m| (p.n(), m.size)));
        match step {
            Ok((size, alpha)) => entries.push(PowerScanEntry {
                power: k,
                alpha,
                ratio: crate::ratio::ratio(alpha, size),
            }),
            Err(e @ Error::SizeGuard { .. }) => {
                cutoff = Some((k, e.to_string()));
                break;
            }
            Err(e) => return Err(e),
        }
    }
    let monotone = entries.windows(2).all(|w| w[0].ratio <= w[1].ratio);
    Ok(PowerScan {
        entries,
        cutoff,
        monotone,
    })
}

/// `i(G^k)` lower bounds used by the classifier; empty when out of reach.
pub(crate) fn power_lower_bounds(g: &Graph, limits: &Limits) -> Vec<PowerScanEntry> {
    match power_ratio_scan(g, limits.power_scan_k, limits) {
        Ok(scan) => scan.entries,
        Err(_) => Vec::new(),
    }
}
