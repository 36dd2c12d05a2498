use std::collections::VecDeque;

use super::network::FlowNetwork;

const NIL: usize = usize::MAX;

#[derive(Debug, Clone, PartialEq)]
pub struct CutResult {
    /// Membership of each node in the source side of the cut.
    pub source_side: Vec<bool>,
    pub cut_value_scaled: i64,
    pub cut_value: f64,
    /// Flow that reached the sink; always equal to `cut_value_scaled`.
    pub flow_value: i64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct MaxFlow {
    pub cut: CutResult,
    /// Net flow on each arc of positive capacity, as `(tail, head, flow)`.
    pub arc_flows: Vec<(usize, usize, i64)>,
}

/// Minimum s-t cut of `net` by highest-label push-relabel.
///
/// Only the preflow phase runs. The sink side of the returned cut is the set
/// of nodes that can still reach the sink in the residual graph. Every
/// minimum cut puts those nodes on the sink side, so this is the minimum cut
/// with the largest source side.
pub fn min_st_cut(net: &FlowNetwork) -> CutResult {
    let mut solver = Preflow::new(net);
    solver.run();
    solver.cut()
}

/// Maximum flow of `net`, with the preflow turned into a feasible flow.
pub fn max_flow(net: &FlowNetwork) -> MaxFlow {
    let mut solver = Preflow::new(net);
    solver.run();
    let cut = solver.cut();
    solver.return_excess();
    solver.check_flow();
    let mut arc_flows = Vec::new();
    for u in 0..net.node_count() {
        for a in net.out_arcs(u) {
            if net.cap[a] > 0 {
                let flow = (net.cap[a] - solver.res[a]).max(0);
                arc_flows.push((u, net.head[a], flow));
            }
        }
    }
    MaxFlow { cut, arc_flows }
}

struct Preflow<'a> {
    net: &'a FlowNetwork,
    n: usize,
    res: Vec<i64>,
    excess: Vec<i64>,
    label: Vec<usize>,
    current: Vec<usize>,
    // every node with label < n sits in the list for its label
    bucket_first: Vec<usize>,
    next_in_bucket: Vec<usize>,
    prev_in_bucket: Vec<usize>,
    // active nodes, FIFO per label; entries are checked when popped
    active: Vec<VecDeque<usize>>,
    max_active: usize,
    max_label: usize,
    relabels_since_global: usize,
}

impl<'a> Preflow<'a> {
    fn new(net: &'a FlowNetwork) -> Self {
        let n = net.node_count();
        Self {
            net,
            n,
            res: net.cap.clone(),
            excess: vec![0; n],
            label: vec![0; n],
            current: net.first[..n].to_vec(),
            bucket_first: vec![NIL; n],
            next_in_bucket: vec![NIL; n],
            prev_in_bucket: vec![NIL; n],
            active: vec![VecDeque::new(); n],
            max_active: 0,
            max_label: 0,
            relabels_since_global: 0,
        }
    }

    fn run(&mut self) {
        let s = self.net.source();
        for a in self.net.out_arcs(s) {
            let c = self.res[a];
            if c > 0 {
                let v = self.net.head[a];
                self.res[a] = 0;
                self.res[self.net.rev[a]] += c;
                self.excess[v] += c;
                self.excess[s] -= c;
            }
        }
        self.global_relabel();

        loop {
            if self.relabels_since_global >= self.n {
                self.global_relabel();
            }
            let Some(v) = self.pop_active() else { break };
            self.discharge(v);
        }
        if cfg!(debug_assertions) {
            self.check_residuals();
        }
    }

    fn pop_active(&mut self) -> Option<usize> {
        loop {
            let d = self.max_active;
            if let Some(v) = self.active[d].pop_front() {
                if self.label[v] == d && self.excess[v] > 0 {
                    return Some(v);
                }
                continue;
            }
            if d == 0 {
                return None;
            }
            self.max_active -= 1;
        }
    }

    fn activate(&mut self, v: usize) {
        let d = self.label[v];
        self.active[d].push_back(v);
        self.max_active = self.max_active.max(d);
    }

    fn bucket_insert(&mut self, v: usize, d: usize) {
        let head = self.bucket_first[d];
        self.next_in_bucket[v] = head;
        self.prev_in_bucket[v] = NIL;
        if head != NIL {
            self.prev_in_bucket[head] = v;
        }
        self.bucket_first[d] = v;
        self.max_label = self.max_label.max(d);
    }

    fn bucket_remove(&mut self, v: usize, d: usize) {
        let (prev, next) = (self.prev_in_bucket[v], self.next_in_bucket[v]);
        if prev == NIL {
            self.bucket_first[d] = next;
        } else {
            self.next_in_bucket[prev] = next;
        }
        if next != NIL {
            self.prev_in_bucket[next] = prev;
        }
    }

    fn discharge(&mut self, v: usize) {
        let t = self.net.sink();
        let end = self.net.first[v + 1];
        while self.excess[v] > 0 {
            let mut a = self.current[v];
            while a < end && self.excess[v] > 0 {
                let w = self.net.head[a];
                if self.res[a] > 0 && self.label[v] == self.label[w] + 1 {
                    let delta = self.excess[v].min(self.res[a]);
                    self.res[a] -= delta;
                    self.res[self.net.rev[a]] += delta;
                    self.excess[v] -= delta;
                    let was_idle = self.excess[w] == 0;
                    self.excess[w] += delta;
                    if was_idle && w != t {
                        self.activate(w);
                    }
                    if self.excess[v] == 0 {
                        break;
                    }
                }
                a += 1;
            }
            self.current[v] = a;
            if self.excess[v] == 0 {
                break;
            }
            self.relabel(v);
            if self.label[v] >= self.n {
                break;
            }
        }
    }

    fn relabel(&mut self, v: usize) {
        self.relabels_since_global += 1;
        let old = self.label[v];
        self.bucket_remove(v, old);
        if self.bucket_first[old] == NIL {
            // nothing left at `old`: every node above it is cut off from the sink
            for d in old + 1..=self.max_label {
                let mut u = self.bucket_first[d];
                while u != NIL {
                    self.label[u] = self.n;
                    u = self.next_in_bucket[u];
                }
                self.bucket_first[d] = NIL;
            }
            self.max_label = old.saturating_sub(1);
            self.label[v] = self.n;
            return;
        }
        let mut lowest = self.n;
        for a in self.net.out_arcs(v) {
            if self.res[a] > 0 {
                lowest = lowest.min(self.label[self.net.head[a]] + 1);
            }
        }
        self.label[v] = lowest;
        self.current[v] = self.net.first[v];
        if lowest < self.n {
            self.bucket_insert(v, lowest);
        }
    }

    /// Sets every label to the exact residual distance to the sink.
    fn global_relabel(&mut self) {
        self.relabels_since_global = 0;
        let (s, t) = (self.net.source(), self.net.sink());
        self.label.fill(self.n);
        self.label[t] = 0;
        let mut queue = VecDeque::from([t]);
        while let Some(w) = queue.pop_front() {
            for a in self.net.out_arcs(w) {
                let u = self.net.head[a];
                if u != s && self.label[u] == self.n && self.res[self.net.rev[a]] > 0 {
                    self.label[u] = self.label[w] + 1;
                    queue.push_back(u);
                }
            }
        }

        self.bucket_first.fill(NIL);
        for q in &mut self.active {
            q.clear();
        }
        self.max_active = 0;
        self.max_label = 0;
        for v in 0..self.n {
            self.current[v] = self.net.first[v];
            let d = self.label[v];
            if d < self.n {
                self.bucket_insert(v, d);
                if self.excess[v] > 0 && v != t {
                    self.activate(v);
                }
            }
        }
    }

    fn cut(&self) -> CutResult {
        let t = self.net.sink();
        let mut reaches_sink = vec![false; self.n];
        reaches_sink[t] = true;
        let mut queue = VecDeque::from([t]);
        while let Some(w) = queue.pop_front() {
            for a in self.net.out_arcs(w) {
                let u = self.net.head[a];
                if !reaches_sink[u] && self.res[self.net.rev[a]] > 0 {
                    reaches_sink[u] = true;
                    queue.push_back(u);
                }
            }
        }
        let source_side: Vec<bool> = reaches_sink.iter().map(|r| !r).collect();
        let cut_value_scaled = self.net.cut_capacity(&source_side);
        let flow_value = self.excess[t];
        assert_eq!(cut_value_scaled, flow_value, "flow and cut disagree");
        CutResult {
            source_side,
            cut_value_scaled,
            cut_value: cut_value_scaled as f64 / self.net.scale() as f64,
            flow_value,
        }
    }

    /// Sends leftover excess back to the source along residual paths.
    fn return_excess(&mut self) {
        let (s, t) = (self.net.source(), self.net.sink());
        let n = self.n;
        // labels are residual distances to the source; the sink is excluded
        let mut label = vec![2 * n; n];
        label[s] = 0;
        let mut queue = VecDeque::from([s]);
        while let Some(w) = queue.pop_front() {
            for a in self.net.out_arcs(w) {
                let u = self.net.head[a];
                if u != t && label[u] == 2 * n && self.res[self.net.rev[a]] > 0 {
                    label[u] = label[w] + 1;
                    queue.push_back(u);
                }
            }
        }
        let mut active: VecDeque<usize> = (0..n)
            .filter(|&v| v != s && v != t && self.excess[v] > 0)
            .collect();
        while let Some(v) = active.pop_front() {
            while self.excess[v] > 0 {
                let mut lowest = usize::MAX;
                for a in self.net.out_arcs(v) {
                    let w = self.net.head[a];
                    if self.res[a] == 0 || w == t {
                        continue;
                    }
                    if label[v] == label[w] + 1 {
                        let delta = self.excess[v].min(self.res[a]);
                        self.res[a] -= delta;
                        self.res[self.net.rev[a]] += delta;
                        self.excess[v] -= delta;
                        if self.excess[w] == 0 && w != s {
                            active.push_back(w);
                        }
                        self.excess[w] += delta;
                        if self.excess[v] == 0 {
                            break;
                        }
                    } else {
                        lowest = lowest.min(label[w] + 1);
                    }
                }
                if self.excess[v] > 0 {
                    assert!(lowest != usize::MAX, "excess has no way back to the source");
                    label[v] = lowest;
                }
            }
        }
    }

    fn check_residuals(&self) {
        for a in 0..self.res.len() {
            let r = self.net.rev[a];
            assert!(self.res[a] >= 0, "negative residual capacity");
            assert_eq!(
                self.res[a] + self.res[r],
                self.net.cap[a] + self.net.cap[r],
                "capacity not conserved on an arc pair"
            );
        }
    }

    fn check_flow(&self) {
        if !cfg!(debug_assertions) {
            return;
        }
        self.check_residuals();
        let (s, t) = (self.net.source(), self.net.sink());
        for v in 0..self.n {
            if v != s && v != t {
                assert_eq!(self.excess[v], 0, "flow not conserved at node {v}");
            }
        }
        assert_eq!(self.excess[t], -self.excess[s]);
    }
}
