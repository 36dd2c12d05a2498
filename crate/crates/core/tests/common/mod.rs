#![allow(dead_code)]

use std::collections::VecDeque;

use rand::seq::SliceRandom;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use sparse_card::dsfm::{Component, DsfmInstance, PenaltySpec};
use sparse_card::flow::FlowNetwork;
use sparse_card::gadget::GadgetGraph;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Maximum flow by shortest augmenting paths, independent of the crate's solver.
pub fn edmonds_karp(net: &FlowNetwork) -> i64 {
    let n = net.node_count();
    let mut cap = vec![std::collections::HashMap::<usize, i64>::new(); n];
    for (u, v, c) in net.arcs() {
        *cap[u].entry(v).or_insert(0) += c;
        cap[v].entry(u).or_insert(0);
    }
    let (s, t) = (net.source(), net.sink());
    let mut total = 0;
    loop {
        let mut parent = vec![usize::MAX; n];
        parent[s] = s;
        let mut queue = VecDeque::from([s]);
        while let Some(u) = queue.pop_front() {
            let mut next: Vec<_> = cap[u]
                .iter()
                .filter(|(_, &c)| c > 0)
                .map(|(&v, _)| v)
                .collect();
            next.sort_unstable();
            for v in next {
                if parent[v] == usize::MAX {
                    parent[v] = u;
                    queue.push_back(v);
                }
            }
        }
        if parent[t] == usize::MAX {
            return total;
        }
        let mut bottleneck = i64::MAX;
        let mut v = t;
        while v != s {
            let u = parent[v];
            bottleneck = bottleneck.min(cap[u][&v]);
            v = u;
        }
        let mut v = t;
        while v != s {
            let u = parent[v];
            *cap[u].get_mut(&v).unwrap() -= bottleneck;
            *cap[v].get_mut(&u).unwrap() += bottleneck;
            v = u;
        }
        total += bottleneck;
    }
}

/// Minimum scaled cut of `gg` with `members` fixed, over every placement of
/// the auxiliary nodes.
pub fn enumerate_gadget_cut(gg: &GadgetGraph, members: &[bool], scale: u64) -> i64 {
    (0u32..1 << gg.aux_count)
        .map(|mask| {
            let aux: Vec<bool> = (0..gg.aux_count).map(|j| mask >> j & 1 == 1).collect();
            gg.fixed_cut_scaled(members, &aux, scale)
        })
        .min()
        .unwrap()
}

/// A random concave, nonnegative sequence of length `k + 1`.
pub fn random_concave(rng: &mut impl Rng, k: usize) -> Vec<f64> {
    let mut slopes: Vec<f64> = (0..k).map(|_| rng.gen_range(-3.0..3.0)).collect();
    slopes.sort_by(|a, b| b.total_cmp(a));
    let mut values = Vec::with_capacity(k + 1);
    values.push(rng.gen_range(0.0..3.0));
    for s in slopes {
        values.push(values.last().unwrap() + s);
    }
    let low = values.iter().copied().fold(f64::INFINITY, f64::min);
    if low < 0.0 {
        for v in &mut values {
            *v -= low;
        }
    }
    values
}

/// A random nondecreasing concave sequence on `0..=r` starting at zero.
pub fn random_half_curve(rng: &mut impl Rng, r: usize) -> Vec<f64> {
    let mut slopes: Vec<f64> = (0..r).map(|_| rng.gen_range(0.0..2.0)).collect();
    slopes.sort_by(|a, b| b.total_cmp(a));
    let mut values = vec![0.0];
    for s in slopes {
        values.push(values.last().unwrap() + s);
    }
    values
}

pub fn random_penalty(rng: &mut impl Rng, k: usize) -> PenaltySpec {
    match rng.gen_range(0..6) {
        0 => PenaltySpec::DeltaLinear(rng.gen_range(0.5..4.0)),
        1 => PenaltySpec::Clique,
        2 => PenaltySpec::Sqrt,
        3 => PenaltySpec::Pow(rng.gen_range(0.1..=1.0)),
        4 => PenaltySpec::ExplicitAsym(random_concave(rng, k)),
        _ => PenaltySpec::ExplicitSym(random_half_curve(rng, k / 2)),
    }
}

/// A random instance with at most `max_n` nodes, `max_r` components and
/// supports of at most `max_k` nodes.
pub fn random_instance(
    rng: &mut impl Rng,
    max_n: usize,
    max_r: usize,
    max_k: usize,
) -> DsfmInstance {
    let n = rng.gen_range(1..=max_n);
    let r = rng.gen_range(1..=max_r);
    let nodes: Vec<usize> = (0..n).collect();
    let components = (0..r)
        .map(|_| {
            let k = rng.gen_range(1..=max_k.min(n));
            let mut support: Vec<usize> = nodes.choose_multiple(rng, k).copied().collect();
            support.sort_unstable();
            let penalty = random_penalty(rng, k);
            Component::new(support, penalty)
        })
        .collect();
    DsfmInstance::new(n, components).expect("generated instance is valid")
}

/// A segmentation-style instance on a `side x side` pixel grid: one-sided
/// unary terms from a noisy disk, 4-neighbour smoothing terms, and clique
/// penalties on random connected regions.
pub fn grid_benchmark(
    seed: u64,
    side: usize,
    regions: usize,
    sizes: (usize, usize),
) -> DsfmInstance {
    let mut rng = rng(seed);
    let n = side * side;
    let id = |r: usize, c: usize| r * side + c;
    let mut components = Vec::new();

    let centre = side as f64 / 2.0;
    let radius = side as f64 / 3.0;
    for r in 0..side {
        for c in 0..side {
            let d = ((r as f64 - centre).powi(2) + (c as f64 - centre).powi(2)).sqrt();
            let signal = if d < radius { 1.0 } else { -1.0 };
            let w: f64 = signal + rng.gen_range(-1.5..1.5);
            let penalty = if w > 0.0 {
                PenaltySpec::ExplicitAsym(vec![w, 0.0])
            } else {
                PenaltySpec::ExplicitAsym(vec![0.0, -w])
            };
            components.push(Component::new(vec![id(r, c)], penalty));
        }
    }
    for r in 0..side {
        for c in 0..side {
            let w = 0.4 + rng.gen_range(0.0..0.4);
            if c + 1 < side {
                components.push(Component::new(
                    vec![id(r, c), id(r, c + 1)],
                    PenaltySpec::ExplicitSym(vec![0.0, w]),
                ));
            }
            if r + 1 < side {
                components.push(Component::new(
                    vec![id(r, c), id(r + 1, c)],
                    PenaltySpec::ExplicitSym(vec![0.0, w]),
                ));
            }
        }
    }
    for _ in 0..regions {
        let target = rng.gen_range(sizes.0..=sizes.1);
        let start = rng.gen_range(0..n);
        let mut seen = vec![false; n];
        let mut frontier = vec![start];
        seen[start] = true;
        let mut region = vec![start];
        while region.len() < target && !frontier.is_empty() {
            let at = rng.gen_range(0..frontier.len());
            let v = frontier.swap_remove(at);
            let (r, c) = (v / side, v % side);
            let mut nbrs = Vec::new();
            if r > 0 {
                nbrs.push(id(r - 1, c));
            }
            if r + 1 < side {
                nbrs.push(id(r + 1, c));
            }
            if c > 0 {
                nbrs.push(id(r, c - 1));
            }
            if c + 1 < side {
                nbrs.push(id(r, c + 1));
            }
            for w in nbrs {
                if !seen[w] && region.len() < target {
                    seen[w] = true;
                    region.push(w);
                    frontier.push(w);
                }
            }
            frontier.push(v);
            if frontier.iter().all(|&u| {
                let (r, c) = (u / side, u % side);
                [
                    (r.wrapping_sub(1), c),
                    (r + 1, c),
                    (r, c.wrapping_sub(1)),
                    (r, c + 1),
                ]
                .iter()
                .all(|&(a, b)| a >= side || b >= side || seen[id(a, b)])
            }) {
                break;
            }
        }
        region.sort_unstable();
        components.push(Component::new(region, PenaltySpec::Clique));
    }
    DsfmInstance::new(n, components).expect("benchmark is valid")
}

/// A random network on `nodes` nodes with about `arcs` arcs; node 0 is the
/// source and the last node the sink.
pub fn random_network(rng: &mut impl Rng, nodes: usize, arcs: usize, max_cap: i64) -> FlowNetwork {
    let list: Vec<(usize, usize, i64)> = (0..arcs)
        .map(|_| {
            let u = rng.gen_range(0..nodes);
            let v = rng.gen_range(0..nodes);
            (u, v, rng.gen_range(0..=max_cap))
        })
        .collect();
    FlowNetwork::from_arcs(nodes, 0, nodes - 1, 1, list).unwrap()
}
