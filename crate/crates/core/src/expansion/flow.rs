//! Small Edmonds-Karp max-flow over a dense-index network.

use std::collections::VecDeque;

#[derive(Clone, Debug)]
struct Arc {
    to: usize,
    cap: u32,
    rev: usize,
}

#[derive(Clone, Debug)]
pub(crate) struct FlowNetwork {
    arcs: Vec<Vec<Arc>>,
}

impl FlowNetwork {
    pub(crate) fn new(nodes: usize) -> Self {
        Self {
            arcs: vec![Vec::new(); nodes],
        }
    }

    /// Adds `from -> to` with capacity `cap`; returns a handle for
    /// [`FlowNetwork::flow_on`].
    pub(crate) fn add_arc(&mut self, from: usize, to: usize, cap: u32) -> (usize, usize) {
        let fwd = self.arcs[from].len();
        let back = self.arcs[to].len() + usize::from(from == to);
        self.arcs[from].push(Arc { to, cap, rev: back });
        self.arcs[to].push(Arc {
            to: from,
            cap: 0,
            rev: fwd,
        });
        (from, fwd)
    }

    /// Flow currently pushed along an arc added with capacity `original`.
    pub(crate) fn flow_on(&self, handle: (usize, usize), original: u32) -> u32 {
        original - self.arcs[handle.0][handle.1].cap
    }

    pub(crate) fn max_flow(&mut self, source: usize, sink: usize) -> u32 {
        let mut total = 0;
        loop {
            let mut prev: Vec<Option<(usize, usize)>> = vec![None; self.arcs.len()];
            let mut queue = VecDeque::from([source]);
            let mut reached = false;
            while let Some(u) = queue.pop_front() {
                if u == sink {
                    reached = true;
                    break;
                }
                for (i, arc) in self.arcs[u].iter().enumerate() {
                    if arc.cap > 0 && arc.to != source && prev[arc.to].is_none() {
                        prev[arc.to] = Some((u, i));
                        queue.push_back(arc.to);
                    }
                }
            }
            if !reached {
                return total;
            }
            let mut push = u32::MAX;
            let mut cur = sink;
            while let Some((u, i)) = prev[cur] {
                push = push.min(self.arcs[u][i].cap);
                cur = u;
            }
            let mut cur = sink;
            while let Some((u, i)) = prev[cur] {
                self.arcs[u][i].cap -= push;
                let (to, rev) = (self.arcs[u][i].to, self.arcs[u][i].rev);
                self.arcs[to][rev].cap += push;
                cur = u;
            }
            total += push;
        }
    }
}
