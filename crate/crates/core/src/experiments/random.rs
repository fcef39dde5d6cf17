//! Seeded random-graph experiments: the edge-process hitting times and
//! random regular graphs from the pairing model.

use rand::seq::SliceRandom;
use rand::Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use serde_json::json;

use crate::bounds::spectral_lambda;
use crate::error::{Error, Result};
use crate::graph::{io::emit_graph6, Graph};
use crate::independence::{expansion_max, max_independent_set};
use crate::limits::Limits;
use crate::matching::has_fpm;
use crate::ratio::{self, Rational};

use super::corpus::{trial_rng, RNG_ALGORITHM};
use super::report::{Counterexample, ExperimentReport, Record, Severity};

/// Largest order at which `a(G)` is computed at the matching hitting time.
pub const HITTING_EXPANSION_N: usize = 12;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct HittingTrial {
    pub trial: usize,
    /// First step with minimum degree at least one.
    pub tau_delta: usize,
    /// First step with a fractional perfect matching.
    pub tau_fpm: usize,
    /// Minimum degree of the graph at `tau_fpm`.
    pub delta_at_fpm: usize,
    #[serde(default, skip_serializing_if = "Option::is_none", with = "opt_rational")]
    pub a_at_fpm: Option<Rational>,
    pub graph6_at_fpm: String,
}

mod opt_rational {
    use serde::{Deserialize, Deserializer, Serializer};

    use crate::ratio::{self, Rational};

    pub fn serialize<S: Serializer>(r: &Option<Rational>, s: S) -> Result<S::Ok, S::Error> {
        match r {
            Some(r) => s.serialize_some(&ratio::to_string(r)),
            None => s.serialize_none(),
        }
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Option<Rational>, D::Error> {
        Ok(Option::<String>::deserialize(d)?.and_then(|t| ratio::parse(&t)))
    }
}

/// Runs one edge process: all `C(n,2)` edges in uniformly random order.
pub fn hitting_trial(n: usize, seed: u64, trial: usize, limits: &Limits) -> Result<HittingTrial> {
    let mut edges: Vec<(usize, usize)> = (1..n).flat_map(|j| (0..j).map(move |i| (i, j))).collect();
    let mut rng = trial_rng(seed, trial as u64);
    edges.shuffle(&mut rng);
    let mut g = Graph::empty(n);
    let mut degree = vec![0usize; n];
    let mut isolated = n;
    let mut tau_delta = None;
    for (t, &(u, v)) in edges.iter().enumerate() {
        let step = t + 1;
        g.add_edge(u, v);
        for w in [u, v] {
            degree[w] += 1;
            if degree[w] == 1 {
                isolated -= 1;
            }
        }
        if isolated > 0 {
            continue;
        }
        tau_delta.get_or_insert(step);
        if has_fpm(&g) {
            let a_at_fpm = if n <= HITTING_EXPANSION_N.min(limits.expansion_vertices) {
                Some(expansion_max(&g, limits)?.ratio)
            } else {
                None
            };
            return Ok(HittingTrial {
                trial,
                tau_delta: tau_delta.expect("set above"),
                tau_fpm: step,
                delta_at_fpm: g.min_degree(),
                a_at_fpm,
                graph6_at_fpm: emit_graph6(&g),
            });
        }
    }
    Err(Error::Sampling(format!("edge process on {n} vertices never reached a fractional perfect matching")))
}

/// Hitting times of `δ >= 1` and of a fractional perfect matching in the
/// random edge process. `τ_fpm >= τ_δ` is asserted in every trial.
pub fn process_hitting_time(n: usize, trials: usize, seed: u64, limits: &Limits) -> Result<ExperimentReport> {
    if n < 2 {
        return Err(Error::ParameterDomain(format!("edge process needs n >= 2, got {n}")));
    }
    let runs: Vec<Result<HittingTrial>> = (0..trials)
        .into_par_iter()
        .map(|t| hitting_trial(n, seed, t, limits))
        .collect();
    let mut rep = ExperimentReport::new("process-hitting");
    rep.param("n", n).param("trials", trials);
    rep.seed = Some(seed);
    rep.rng = Some(RNG_ALGORITHM.into());
    let (mut coincide, mut ordered, mut half) = (0usize, 0usize, 0usize);
    let mut measured_a = 0usize;
    for run in runs {
        let run = run?;
        let id = format!("trial{}", run.trial);
        let g = crate::graph::io::parse_graph6(&run.graph6_at_fpm)?;
        rep.results.push(Record::text(&id, &g, "tau_delta", run.tau_delta.to_string()));
        rep.results.push(Record::text(&id, &g, "tau_fpm", run.tau_fpm.to_string()));
        rep.results.push(Record::text(&id, &g, "delta_at_fpm", run.delta_at_fpm.to_string()));
        if let Some(a) = &run.a_at_fpm {
            measured_a += 1;
            if *a == ratio::half() {
                half += 1;
            }
            rep.results.push(Record::rational(&id, &g, "a_at_fpm", a));
        }
        if run.tau_fpm == run.tau_delta {
            coincide += 1;
        }
        if run.tau_fpm >= run.tau_delta {
            ordered += 1;
        } else {
            rep.counterexamples.push(Counterexample {
                severity: Severity::Violation,
                statement: "tau_fpm >= tau_delta".into(),
                graph: id,
                graph6: run.graph6_at_fpm.clone(),
                detail: format!("tau_fpm = {} < tau_delta = {}", run.tau_fpm, run.tau_delta),
                certificate: json!(run),
            });
        }
    }
    rep.summarize("trials", trials)
        .summarize("ordered", format!("{ordered}/{trials}"))
        .summarize("coincident", format!("{coincide}/{trials}"))
        .summarize("coincidence_frequency", ratio::to_string(&ratio::ratio(coincide, trials.max(1))));
    if measured_a > 0 {
        rep.summarize("a_half_at_fpm", format!("{half}/{measured_a}"));
    }
    Ok(rep)
}

/// A uniformly paired configuration with loops and repeated edges
/// rejected; gives up after `attempts` pairings.
pub fn random_regular_graph<R: Rng>(n: usize, d: usize, rng: &mut R, attempts: usize) -> Result<Graph> {
    if d >= n || (n * d) % 2 == 1 {
        return Err(Error::ParameterDomain(format!(
            "a {d}-regular graph on {n} vertices needs d < n and n*d even"
        )));
    }
    let mut points: Vec<usize> = (0..n * d).map(|p| p / d.max(1)).collect();
    'attempt: for _ in 0..attempts {
        points.shuffle(rng);
        let mut g = Graph::empty(n);
        for pair in points.chunks_exact(2) {
            let (u, v) = (pair[0], pair[1]);
            if u == v || g.has_edge(u, v) {
                continue 'attempt;
            }
            g.add_edge(u, v);
        }
        debug_assert_eq!(g.regular_degree(), Some(d));
        return Ok(g);
    }
    Err(Error::Sampling(format!(
        "no simple {d}-regular pairing on {n} vertices in {attempts} attempts"
    )))
}

/// A sample with `Λ` and, within the guards, `i` and `a`.
type Sample = (Graph, f64, Option<Rational>, Option<Rational>);

fn fixed(x: f64) -> String {
    format!("{x:.12}")
}

/// Samples `trials` random `d`-regular graphs on `n` vertices; reports
/// `Λ(G)` and, within the search guards, `i(G)` and `a(G)`. Asserts
/// `i(G) <= Λ(G) + 1e-9` per sample.
pub fn random_regular_experiment(
    n: usize,
    d: usize,
    trials: usize,
    seed: u64,
    attempts: usize,
    limits: &Limits,
) -> Result<ExperimentReport> {
    let samples: Vec<Result<Sample>> = (0..trials)
        .into_par_iter()
        .map(|t| {
            let g = random_regular_graph(n, d, &mut trial_rng(seed, t as u64), attempts)?;
            if g.regular_degree() != Some(d) {
                return Err(Error::Certificate("sample is not regular".into()));
            }
            let lambda = if d == 0 { 0.0 } else { spectral_lambda(&g, limits)?.value };
            let i = (n <= limits.bnb_vertices)
                .then(|| max_independent_set(&g, limits).map(|m| ratio::ratio(m.size, n)))
                .transpose()?;
            let a = (n <= limits.expansion_vertices)
                .then(|| expansion_max(&g, limits).map(|w| w.ratio))
                .transpose()?;
            Ok((g, lambda, i, a))
        })
        .collect();
    let mut rep = ExperimentReport::new("random-regular");
    rep.param("n", n).param("d", d).param("trials", trials).param("attempts", attempts);
    rep.seed = Some(seed);
    rep.rng = Some(RNG_ALGORITHM.into());
    let mut lambdas = Vec::new();
    for (t, s) in samples.into_iter().enumerate() {
        let (g, lambda, i, a) = s?;
        let id = format!("sample{t}");
        lambdas.push(lambda);
        rep.results.push(Record::text(&id, &g, "lambda", fixed(lambda)));
        if let Some(i) = &i {
            rep.results.push(Record::rational(&id, &g, "i", i));
            if ratio::to_f64(i) > lambda + 1e-9 {
                rep.counterexamples.push(Counterexample {
                    severity: Severity::Violation,
                    statement: "i(G) <= Lambda(G)".into(),
                    graph: id.clone(),
                    graph6: emit_graph6(&g),
                    detail: format!("i = {} but Lambda = {}", ratio::to_string(i), fixed(lambda)),
                    certificate: json!({ "i": ratio::to_string(i), "lambda": fixed(lambda) }),
                });
            }
        }
        if let Some(a) = &a {
            rep.results.push(Record::rational(&id, &g, "a", a));
        }
    }
    if !lambdas.is_empty() {
        let mean = lambdas.iter().sum::<f64>() / lambdas.len() as f64;
        let min = lambdas.iter().cloned().fold(f64::INFINITY, f64::min);
        let max = lambdas.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
        rep.summarize("lambda_mean", fixed(mean))
            .summarize("lambda_min", fixed(min))
            .summarize("lambda_max", fixed(max));
    }
    rep.summarize("samples", lambdas.len());
    Ok(rep)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn two_vertices_hit_together() {
        let rep = process_hitting_time(2, 5, 1, &Limits::default()).unwrap();
        for r in rep.results.iter().filter(|r| r.invariant.starts_with("tau")) {
            assert_eq!(r.value, "1");
        }
        assert_eq!(rep.summary["coincident"], "5/5");
    }

    #[test]
    fn three_vertices_match_hand_enumeration() {
        // Any two triangle edges cover all vertices (τ_δ = 2) but form a
        // star, which has no fractional perfect matching (τ_fpm = 3).
        let rep = process_hitting_time(3, 24, 7, &Limits::default()).unwrap();
        for r in &rep.results {
            match r.invariant.as_str() {
                "tau_delta" => assert_eq!(r.value, "2"),
                "tau_fpm" => assert_eq!(r.value, "3"),
                _ => {}
            }
        }
        assert_eq!(rep.summary["coincident"], "0/24");
    }

    #[test]
    fn hitting_time_is_reproducible() {
        let a = process_hitting_time(12, 20, 3, &Limits::default()).unwrap().to_json();
        let b = process_hitting_time(12, 20, 3, &Limits::default()).unwrap().to_json();
        assert_eq!(a, b);
        assert!(a.contains("\"ordered\": \"20/20\""));
    }

    #[test]
    fn pairing_model_is_regular() {
        for t in 0..20 {
            let g = random_regular_graph(12, 3, &mut trial_rng(5, t), 10_000).unwrap();
            assert_eq!(g.regular_degree(), Some(3));
            g.check_invariants().unwrap();
        }
        assert!(random_regular_graph(5, 3, &mut trial_rng(0, 0), 10).is_err());
        assert!(random_regular_graph(4, 4, &mut trial_rng(0, 0), 10).is_err());
        assert!(matches!(
            random_regular_graph(10, 9, &mut trial_rng(0, 0), 0),
            Err(Error::Sampling(_))
        ));
    }

    #[test]
    fn regular_experiment_bounds_hold() {
        let rep = random_regular_experiment(10, 3, 10, 11, 10_000, &Limits::default()).unwrap();
        assert!(rep.counterexamples.is_empty());
        assert_eq!(rep.summary["samples"], "10");
        let again = random_regular_experiment(10, 3, 10, 11, 10_000, &Limits::default()).unwrap();
        assert_eq!(rep.to_json(), again.to_json());
    }
}
