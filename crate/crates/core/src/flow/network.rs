use crate::gadget::{quantize, GadgetGraph};

use super::{FlowError, CAPACITY_LIMIT};

pub const DEFAULT_SCALE: u64 = 1_000_000;

/// A directed network with integer capacities, stored as a residual graph.
///
/// Every arc `u -> v` is paired with a reverse arc `v -> u`; a real arc in
/// the opposite direction shares the pair instead of adding a third arc.
/// Arcs are grouped by tail and sorted by head, so construction is
/// deterministic regardless of input order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FlowNetwork {
    node_count: usize,
    source: usize,
    sink: usize,
    scale: u64,
    pub(crate) first: Vec<usize>,
    pub(crate) head: Vec<usize>,
    pub(crate) rev: Vec<usize>,
    pub(crate) cap: Vec<i64>,
}

impl FlowNetwork {
    /// Builds a network from `(tail, head, capacity)` triples. Parallel arcs
    /// are summed, and self-loops and zero capacities are dropped.
    pub fn from_arcs(
        node_count: usize,
        source: usize,
        sink: usize,
        scale: u64,
        arcs: impl IntoIterator<Item = (usize, usize, i64)>,
    ) -> Result<Self, FlowError> {
        if scale == 0 {
            return Err(FlowError::ZeroScale);
        }
        for node in [source, sink] {
            if node >= node_count {
                return Err(FlowError::NodeOutOfRange { node, node_count });
            }
        }
        if source == sink {
            return Err(FlowError::SourceIsSink);
        }

        let mut entries: Vec<(usize, usize, i64)> = Vec::new();
        let mut total: i64 = 0;
        for (tail, head, cap) in arcs {
            for node in [tail, head] {
                if node >= node_count {
                    return Err(FlowError::NodeOutOfRange { node, node_count });
                }
            }
            if cap < 0 {
                return Err(FlowError::NegativeCapacity { tail, head, cap });
            }
            if cap == 0 || tail == head {
                continue;
            }
            total = total.saturating_add(cap);
            if total >= CAPACITY_LIMIT {
                return Err(overflow(total as f64, scale));
            }
            entries.push((tail, head, cap));
            entries.push((head, tail, 0));
        }
        entries.sort_unstable_by_key(|&(u, v, _)| (u, v));

        let mut head = Vec::with_capacity(entries.len());
        let mut cap = Vec::with_capacity(entries.len());
        let mut first = vec![0; node_count + 1];
        let mut last: Option<(usize, usize)> = None;
        for (u, v, c) in entries {
            if last == Some((u, v)) {
                *cap.last_mut().unwrap() += c;
            } else {
                head.push(v);
                cap.push(c);
                first[u + 1] += 1;
                last = Some((u, v));
            }
        }
        for u in 0..node_count {
            first[u + 1] += first[u];
        }
        let mut rev = vec![0; head.len()];
        for u in 0..node_count {
            for a in first[u]..first[u + 1] {
                let v = head[a];
                let row = &head[first[v]..first[v + 1]];
                rev[a] = first[v] + row.binary_search(&u).expect("paired arc exists");
            }
        }
        Ok(Self {
            node_count,
            source,
            sink,
            scale,
            first,
            head,
            rev,
            cap,
        })
    }

    pub fn node_count(&self) -> usize {
        self.node_count
    }

    pub fn source(&self) -> usize {
        self.source
    }

    pub fn sink(&self) -> usize {
        self.sink
    }

    pub fn scale(&self) -> u64 {
        self.scale
    }

    /// Arcs with positive capacity as `(tail, head, capacity)`, sorted.
    pub fn arcs(&self) -> impl Iterator<Item = (usize, usize, i64)> + '_ {
        (0..self.node_count).flat_map(move |u| {
            (self.first[u]..self.first[u + 1])
                .filter(move |&a| self.cap[a] > 0)
                .map(move |a| (u, self.head[a], self.cap[a]))
        })
    }

    pub fn arc_count(&self) -> usize {
        self.cap.iter().filter(|&&c| c > 0).count()
    }

    pub fn total_capacity(&self) -> i64 {
        self.cap.iter().sum()
    }

    /// Capacity of the cut with `source_side` on the source side.
    pub fn cut_capacity(&self, source_side: &[bool]) -> i64 {
        self.arcs()
            .filter(|&(u, v, _)| source_side[u] && !source_side[v])
            .map(|(_, _, c)| c)
            .sum()
    }

    #[inline]
    pub(crate) fn out_arcs(&self, u: usize) -> std::ops::Range<usize> {
        self.first[u]..self.first[u + 1]
    }
}

fn overflow(total: f64, scale: u64) -> FlowError {
    let room = (CAPACITY_LIMIT as f64 / 2.0) / total * scale as f64;
    FlowError::Overflow {
        total,
        suggested_scale: room.floor().max(1.0) as u64,
    }
}

/// Size accounting for a network assembled from gadgets.
#[derive(Debug, Clone, PartialEq)]
pub struct BuildStats {
    pub ground_nodes: usize,
    pub aux_nodes: usize,
    /// Gadget edges before merging parallel arcs.
    pub gadget_edges: usize,
    /// Positive weights that rounded to a zero capacity.
    pub rounded_to_zero: usize,
    /// Largest possible gap between a descaled cut and the real-weighted cut
    /// of the same partition.
    pub quantization_bound: f64,
}

/// Places each gadget on its support nodes and merges everything into one
/// network over `n` ground nodes.
///
/// Ground nodes keep ids `0..n`, the auxiliary nodes of each gadget follow in
/// order, and the source and sink come last.
pub fn build_network(
    gadgets: &[(GadgetGraph, Vec<usize>)],
    n: usize,
    scale: u64,
) -> Result<(FlowNetwork, BuildStats), FlowError> {
    if scale == 0 {
        return Err(FlowError::ZeroScale);
    }
    let aux_nodes: usize = gadgets.iter().map(|(g, _)| g.aux_count).sum();
    let node_count = n + aux_nodes + 2;
    let (s, t) = (n + aux_nodes, n + aux_nodes + 1);

    let mut real_total = 0.0;
    for (gg, support) in gadgets {
        assert_eq!(gg.k, support.len(), "support size does not match gadget");
        for e in &gg.edges {
            if !(e.weight.is_finite() && e.weight >= 0.0) {
                return Err(FlowError::InvalidWeight(e.weight));
            }
            real_total += e.weight;
        }
    }
    let scaled_total = real_total * scale as f64;
    if scaled_total >= CAPACITY_LIMIT as f64 {
        return Err(overflow(scaled_total, scale));
    }

    let mut arcs = Vec::with_capacity(gadgets.iter().map(|(g, _)| g.edges.len()).sum());
    let mut offset = n;
    let mut rounded_to_zero = 0;
    for (gg, support) in gadgets {
        if let Some(&node) = support.iter().find(|&&v| v >= n) {
            return Err(FlowError::NodeOutOfRange {
                node,
                node_count: n,
            });
        }
        let place = |v: usize| -> usize {
            if v < gg.k {
                support[v]
            } else if v < gg.source() {
                offset + (v - gg.k)
            } else if v == gg.source() {
                s
            } else {
                t
            }
        };
        for e in &gg.edges {
            let c = quantize(e.weight, scale);
            if c == 0 && e.weight > 0.0 {
                rounded_to_zero += 1;
            }
            arcs.push((place(e.tail), place(e.head), c));
        }
        offset += gg.aux_count;
    }
    let gadget_edges = arcs.len();
    let net = FlowNetwork::from_arcs(node_count, s, t, scale, arcs)?;
    Ok((
        net,
        BuildStats {
            ground_nodes: n,
            aux_nodes,
            gadget_edges,
            rounded_to_zero,
            quantization_bound: gadget_edges as f64 * 0.5 / scale as f64,
        },
    ))
}

/// Forces nodes onto one side of every minimum cut by tying them to the
/// source or sink with arcs heavier than the whole network.
pub fn pin_nodes(
    net: &FlowNetwork,
    to_source: &[usize],
    to_sink: &[usize],
) -> Result<FlowNetwork, FlowError> {
    let mut side = vec![0u8; net.node_count()];
    for (set, mark) in [(to_source, 1u8), (to_sink, 2u8)] {
        for &v in set {
            if v >= net.node_count() {
                return Err(FlowError::NodeOutOfRange {
                    node: v,
                    node_count: net.node_count(),
                });
            }
            if side[v] != 0 && side[v] != mark {
                return Err(FlowError::OverlappingPins(v));
            }
            side[v] = mark;
        }
    }
    if to_source.is_empty() && to_sink.is_empty() {
        return Ok(net.clone());
    }
    let total = net.total_capacity();
    let sentinel = total + 1;
    let pins = to_source.len() + to_sink.len();
    let grown = (pins as i64)
        .checked_mul(sentinel)
        .and_then(|x| x.checked_add(total))
        .filter(|&x| x < CAPACITY_LIMIT);
    if grown.is_none() {
        return Err(overflow(total as f64 * (pins + 1) as f64, net.scale()));
    }
    let (s, t) = (net.source(), net.sink());
    let extra = to_source
        .iter()
        .map(|&v| (s, v, sentinel))
        .chain(to_sink.iter().map(|&v| (v, t, sentinel)));
    FlowNetwork::from_arcs(net.node_count(), s, t, net.scale(), net.arcs().chain(extra))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gadget::{unary_gadget, CgfParams, EdgeRole, GadgetEdge, GadgetModel};

    #[test]
    fn merges_parallel_and_pairs_antiparallel() {
        let net = FlowNetwork::from_arcs(
            3,
            0,
            2,
            1,
            vec![
                (0, 1, 2),
                (0, 1, 3),
                (1, 0, 4),
                (1, 2, 1),
                (1, 1, 9),
                (0, 2, 0),
            ],
        )
        .unwrap();
        let arcs: Vec<_> = net.arcs().collect();
        assert_eq!(arcs, vec![(0, 1, 5), (1, 0, 4), (1, 2, 1)]);
        // 0-1 pair and 1-2 pair
        assert_eq!(net.head.len(), 4);
        for a in 0..net.head.len() {
            assert_eq!(net.rev[net.rev[a]], a);
        }
        assert_eq!(net.total_capacity(), 10);
    }

    #[test]
    fn rejects_bad_input() {
        assert!(matches!(
            FlowNetwork::from_arcs(2, 0, 0, 1, vec![]),
            Err(FlowError::SourceIsSink)
        ));
        assert!(matches!(
            FlowNetwork::from_arcs(2, 0, 1, 1, vec![(0, 5, 1)]),
            Err(FlowError::NodeOutOfRange { node: 5, .. })
        ));
        assert!(matches!(
            FlowNetwork::from_arcs(2, 0, 1, 1, vec![(0, 1, -1)]),
            Err(FlowError::NegativeCapacity { .. })
        ));
        assert!(matches!(
            FlowNetwork::from_arcs(2, 0, 1, 1, vec![(0, 1, 1 << 61), (0, 1, 1 << 61)]),
            Err(FlowError::Overflow { .. })
        ));
    }

    #[test]
    fn unary_component_drops_zero_edge() {
        let gg = unary_gadget(0.0, 1.0).unwrap();
        let (net, stats) = build_network(&[(gg, vec![0])], 1, 1000).unwrap();
        assert_eq!(net.node_count(), 3);
        let arcs: Vec<_> = net.arcs().collect();
        assert_eq!(arcs, vec![(0, 2, 1000)]);
        assert_eq!(stats.gadget_edges, 1);
        assert_eq!(stats.aux_nodes, 0);
    }

    #[test]
    fn shared_source_edges_merge() {
        let a = unary_gadget(0.5, 0.0).unwrap();
        let b = unary_gadget(0.25, 0.0).unwrap();
        let (net, _) = build_network(&[(a, vec![0]), (b, vec![0])], 1, 100).unwrap();
        let arcs: Vec<_> = net.arcs().collect();
        assert_eq!(arcs, vec![(1, 0, 75)]);
    }

    #[test]
    fn aux_nodes_are_laid_out_per_component() {
        let p = CgfParams::new(2, 0.0, 0.0, vec![1.0], vec![1.0]).unwrap();
        let gg = crate::gadget::cgf_to_gadget(&p).unwrap();
        let (net, stats) =
            build_network(&[(gg.clone(), vec![0, 1]), (gg, vec![1, 2])], 3, 10).unwrap();
        assert_eq!(net.node_count(), 3 + 2 + 2);
        assert_eq!(stats.aux_nodes, 2);
        assert_eq!(stats.gadget_edges, 8);
        assert!((stats.quantization_bound - 0.4).abs() < 1e-15);
        let arcs: Vec<_> = net.arcs().collect();
        assert!(arcs.contains(&(1, 3, 10)));
        assert!(arcs.contains(&(2, 4, 10)));
        assert!(arcs.contains(&(4, 1, 10)));
    }

    #[test]
    fn counts_weights_lost_to_rounding() {
        let gg = GadgetGraph {
            k: 1,
            aux_count: 0,
            edges: vec![GadgetEdge {
                tail: 0,
                head: 2,
                weight: 1e-9,
                role: EdgeRole::SupportToSink,
            }],
            model: GadgetModel::Unary { g0: 0.0, g1: 1e-9 },
        };
        let (net, stats) = build_network(&[(gg, vec![0])], 1, 1000).unwrap();
        assert_eq!(stats.rounded_to_zero, 1);
        assert_eq!(net.arc_count(), 0);
    }

    #[test]
    fn pins_use_a_sentinel_heavier_than_everything() {
        let net = FlowNetwork::from_arcs(4, 2, 3, 1, vec![(0, 1, 5), (2, 0, 1)]).unwrap();
        let pinned = pin_nodes(&net, &[1], &[0]).unwrap();
        let arcs: Vec<_> = pinned.arcs().collect();
        assert!(arcs.contains(&(2, 1, 7)));
        assert!(arcs.contains(&(0, 3, 7)));
        assert!(arcs.contains(&(2, 0, 1)));
        assert_eq!(pin_nodes(&net, &[], &[]).unwrap(), net);
        assert!(matches!(
            pin_nodes(&net, &[0], &[0]),
            Err(FlowError::OverlappingPins(0))
        ));
    }
}
