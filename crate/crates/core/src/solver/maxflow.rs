//! Dinic's maximum flow on real-valued capacities.

use std::collections::VecDeque;

#[derive(Clone, Debug)]
pub(crate) struct FlowNetwork {
    adj: Vec<Vec<usize>>,
    to: Vec<usize>,
    cap: Vec<f64>,
    /// Residual capacities at or below this are treated as saturated.
    tol: f64,
}

impl FlowNetwork {
    pub(crate) fn new(nodes: usize, tol: f64) -> Self {
        FlowNetwork { adj: vec![Vec::new(); nodes], to: Vec::new(), cap: Vec::new(), tol }
    }

    pub(crate) fn add_edge(&mut self, u: usize, v: usize, cap: f64) {
        self.adj[u].push(self.to.len());
        self.to.push(v);
        self.cap.push(cap);
        self.adj[v].push(self.to.len());
        self.to.push(u);
        self.cap.push(0.0);
    }

    fn levels(&self, s: usize) -> Vec<u32> {
        let mut level = vec![u32::MAX; self.adj.len()];
        let mut queue = VecDeque::from([s]);
        level[s] = 0;
        while let Some(u) = queue.pop_front() {
            for &e in &self.adj[u] {
                let v = self.to[e];
                if self.cap[e] > self.tol && level[v] == u32::MAX {
                    level[v] = level[u] + 1;
                    queue.push_back(v);
                }
            }
        }
        level
    }

    pub(crate) fn max_flow(&mut self, s: usize, t: usize) -> f64 {
        let mut total = 0.0;
        let mut path: Vec<usize> = Vec::new();
        loop {
            let mut level = self.levels(s);
            if level[t] == u32::MAX {
                return total;
            }
            let mut it = vec![0usize; self.adj.len()];
            'phase: loop {
                path.clear();
                let mut u = s;
                loop {
                    if u == t {
                        let push = path.iter().map(|&e| self.cap[e]).fold(f64::INFINITY, f64::min);
                        for &e in &path {
                            self.cap[e] -= push;
                            self.cap[e ^ 1] += push;
                        }
                        total += push;
                        break;
                    }
                    let mut advanced = false;
                    while it[u] < self.adj[u].len() {
                        let e = self.adj[u][it[u]];
                        let v = self.to[e];
                        if self.cap[e] > self.tol && level[v] != u32::MAX && level[v] == level[u] + 1 {
                            path.push(e);
                            u = v;
                            advanced = true;
                            break;
                        }
                        it[u] += 1;
                    }
                    if !advanced {
                        if u == s {
                            break 'phase;
                        }
                        level[u] = u32::MAX;
                        let e = path.pop().expect("non-source node has an incoming path edge");
                        u = self.to[e ^ 1];
                        it[u] += 1;
                    }
                }
            }
        }
    }

    /// Nodes reachable from `s` in the residual graph.
    pub(crate) fn source_side(&self, s: usize) -> Vec<bool> {
        self.levels(s).into_iter().map(|l| l != u32::MAX).collect()
    }
}
