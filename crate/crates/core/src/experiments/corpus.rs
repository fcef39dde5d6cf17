//! Built-in corpus of small connected graphs and seeded random graphs.

use std::collections::BTreeSet;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::graph::Graph;

/// Largest order enumerated in-process; beyond it 2^15 labeled graphs times
/// n! relabelings stops being desk-scale.
pub const MAX_BUILTIN_N: usize = 6;

/// Algorithm identifier recorded in every randomized report.
pub const RNG_ALGORITHM: &str = "ChaCha8Rng (rand_chacha 0.9), seed_from_u64(seed), stream = trial index";

/// A generator for trial `stream` of a seeded run; streams are independent
/// so trials can run in any order.
pub fn trial_rng(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}

/// Upper-triangle pairs in graph6 order: `(0,1), (0,2), (1,2), (0,3), ...`.
fn pairs(n: usize) -> Vec<(usize, usize)> {
    (1..n).flat_map(|j| (0..j).map(move |i| (i, j))).collect()
}

fn pair_index(i: usize, j: usize) -> usize {
    let (i, j) = if i < j { (i, j) } else { (j, i) };
    j * (j - 1) / 2 + i
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut p: Vec<usize> = (0..n).collect();
    fn rec(k: usize, p: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if k == p.len() {
            out.push(p.clone());
            return;
        }
        for i in k..p.len() {
            p.swap(k, i);
            rec(k + 1, p, out);
            p.swap(k, i);
        }
    }
    rec(0, &mut p, &mut out);
    out
}

fn is_connected_code(n: usize, code: u32, pairs: &[(usize, usize)]) -> bool {
    let mut reach = 1u32;
    loop {
        let mut next = reach;
        for (b, &(i, j)) in pairs.iter().enumerate() {
            if code >> b & 1 == 1 && (reach >> i & 1 == 1 || reach >> j & 1 == 1) {
                next |= 1 << i | 1 << j;
            }
        }
        if next == reach {
            return reach.count_ones() as usize == n;
        }
        reach = next;
    }
}

/// Connected graphs on exactly `n` vertices, one per isomorphism class.
///
/// The representative is the relabeling with the smallest edge code (bit
/// `b` set iff the `b`-th graph6 pair is an edge); output is sorted by code.
pub fn connected_graphs_on(n: usize) -> Result<Vec<Graph>> {
    if n > MAX_BUILTIN_N {
        return Err(Error::ParameterDomain(format!(
            "built-in enumeration stops at {MAX_BUILTIN_N} vertices; supply larger corpora as a graph6 file with --input"
        )));
    }
    if n == 0 {
        return Ok(Vec::new());
    }
    let ps = pairs(n);
    // Pair b of the original maps to pair image[p][b] under permutation p.
    let image: Vec<Vec<usize>> = permutations(n)
        .iter()
        .map(|p| ps.iter().map(|&(i, j)| pair_index(p[i], p[j])).collect())
        .collect();
    let codes: BTreeSet<u32> = (0..1u32 << ps.len())
        .into_par_iter()
        .filter(|&code| is_connected_code(n, code, &ps))
        .map(|code| {
            image
                .iter()
                .map(|img| {
                    img.iter()
                        .enumerate()
                        .filter(|&(b, _)| code >> b & 1 == 1)
                        .fold(0u32, |acc, (_, &t)| acc | 1 << t)
                })
                .min()
                .expect("at least one permutation")
        })
        .collect::<Vec<_>>()
        .into_iter()
        .collect();
    codes
        .into_iter()
        .map(|code| {
            let edges = ps
                .iter()
                .enumerate()
                .filter(|&(b, _)| code >> b & 1 == 1)
                .map(|(_, &e)| e);
            Graph::from_edges(n, edges)
        })
        .collect()
}

/// Connected graphs on `1..=max_n` vertices, ordered by size then code.
pub fn corpus_connected_graphs(max_n: usize) -> Result<Vec<Graph>> {
    let mut out = Vec::new();
    for n in 1..=max_n {
        out.extend(connected_graphs_on(n)?);
    }
    Ok(out)
}

/// `count` graphs `G(n, 1/2)` with `n` uniform in `min_n..=max_n`, graph
/// `t` drawn from stream `t`.
pub fn random_graphs(count: usize, min_n: usize, max_n: usize, seed: u64) -> Result<Vec<Graph>> {
    if min_n == 0 || min_n > max_n {
        return Err(Error::ParameterDomain(format!(
            "need 1 <= min_n <= max_n, got {min_n}..={max_n}"
        )));
    }
    (0..count)
        .map(|t| {
            let mut rng = trial_rng(seed, t as u64);
            let n = rng.random_range(min_n..=max_n);
            let edges: Vec<_> = pairs(n).into_iter().filter(|_| rng.random_bool(0.5)).collect();
            Graph::from_edges(n, edges)
        })
        .collect()
}
