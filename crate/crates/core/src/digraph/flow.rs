use std::collections::VecDeque;

use serde::{Deserialize, Serialize};

use super::Digraph;
use crate::error::{Error, Result};

const INF: u32 = u32::MAX / 2;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CutKind {
    Vertex,
    Edge,
}

/// A minimum separator together with the ordered pair it separates.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CutCertificate {
    pub kind: CutKind,
    pub size: usize,
    /// Separator vertices (vertex cuts).
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub vertices: Vec<usize>,
    /// Separator edges (edge cuts).
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub edges: Vec<(usize, usize)>,
    pub separated_pair: (usize, usize),
}

/// Residual network in CSR form; capacities are reset before every query.
struct FlowNetwork {
    start: Vec<usize>,
    to: Vec<usize>,
    rev: Vec<usize>,
    base_cap: Vec<u32>,
    cap: Vec<u32>,
    pred: Vec<usize>,
    queue: VecDeque<usize>,
}

impl FlowNetwork {
    fn new(nodes: usize, arcs: &[(usize, usize, u32)]) -> Self {
        let mut deg = vec![0usize; nodes + 1];
        for &(u, v, _) in arcs {
            deg[u] += 1;
            deg[v] += 1;
        }
        let mut start = vec![0usize; nodes + 1];
        for i in 0..nodes {
            start[i + 1] = start[i] + deg[i];
        }
        let m = start[nodes];
        let mut fill = start.clone();
        let mut to = vec![0; m];
        let mut rev = vec![0; m];
        let mut base_cap = vec![0; m];
        for &(u, v, c) in arcs {
            let a = fill[u];
            let b = fill[v];
            fill[u] += 1;
            fill[v] += 1;
            to[a] = v;
            to[b] = u;
            rev[a] = b;
            rev[b] = a;
            base_cap[a] = c;
        }
        Self {
            start,
            to,
            rev,
            cap: base_cap.clone(),
            base_cap,
            pred: vec![usize::MAX; nodes],
            queue: VecDeque::new(),
        }
    }

    /// Augments shortest paths from `s` to `t` until no path remains or the
    /// flow reaches `limit`. All capacities are integral so each augmentation
    /// adds at least one unit.
    fn max_flow(&mut self, s: usize, t: usize, limit: usize) -> usize {
        self.cap.copy_from_slice(&self.base_cap);
        let mut flow = 0;
        while flow < limit {
            self.pred.fill(usize::MAX);
            self.queue.clear();
            self.queue.push_back(s);
            self.pred[s] = usize::MAX - 1;
            'bfs: while let Some(u) = self.queue.pop_front() {
                for a in self.start[u]..self.start[u + 1] {
                    let v = self.to[a];
                    if self.cap[a] > 0 && self.pred[v] == usize::MAX {
                        self.pred[v] = a;
                        if v == t {
                            break 'bfs;
                        }
                        self.queue.push_back(v);
                    }
                }
            }
            if self.pred[t] == usize::MAX {
                break;
            }
            let mut bottleneck = u32::MAX;
            let mut v = t;
            while v != s {
                let a = self.pred[v];
                bottleneck = bottleneck.min(self.cap[a]);
                v = self.to[self.rev[a]];
            }
            let push = bottleneck.min((limit - flow) as u32);
            let mut v = t;
            while v != s {
                let a = self.pred[v];
                self.cap[a] -= push;
                self.cap[self.rev[a]] += push;
                v = self.to[self.rev[a]];
            }
            flow += push as usize;
        }
        flow
    }

    /// Nodes reachable from `s` in the current residual network.
    fn source_side(&self, s: usize) -> Vec<bool> {
        let mut seen = vec![false; self.pred.len()];
        let mut stack = vec![s];
        seen[s] = true;
        while let Some(u) = stack.pop() {
            for a in self.start[u]..self.start[u + 1] {
                let v = self.to[a];
                if self.cap[a] > 0 && !seen[v] {
                    seen[v] = true;
                    stack.push(v);
                }
            }
        }
        seen
    }
}

/// Vertex-split network: vertex `v` becomes `2v → 2v+1` with capacity one.
struct SplitNetwork {
    net: FlowNetwork,
    n: usize,
}

impl SplitNetwork {
    fn new(g: &Digraph) -> Self {
        let n = g.vertex_count();
        let mut arcs = Vec::with_capacity(n + g.edge_count());
        for v in 0..n {
            arcs.push((2 * v, 2 * v + 1, 1));
        }
        for (u, v) in g.edges() {
            arcs.push((2 * u + 1, 2 * v, INF));
        }
        Self {
            net: FlowNetwork::new(2 * n, &arcs),
            n,
        }
    }

    /// Maximum number of internally disjoint `s → t` paths, capped at `limit`.
    fn local(&mut self, s: usize, t: usize, limit: usize) -> usize {
        self.net.max_flow(2 * s + 1, 2 * t, limit)
    }

    /// Separator read off the last maximum flow.
    fn separator(&self, s: usize) -> Vec<usize> {
        let side = self.net.source_side(2 * s + 1);
        (0..self.n)
            .filter(|&v| side[2 * v] && !side[2 * v + 1])
            .collect()
    }
}

fn require_strong(g: &Digraph) -> Result<()> {
    if g.is_strongly_connected() {
        Ok(())
    } else {
        Err(Error::NotStronglyConnected)
    }
}

/// Local vertex connectivity `κ(s, t)` for a non-adjacent ordered pair.
pub fn local_vertex_connectivity(g: &Digraph, s: usize, t: usize) -> Result<usize> {
    if s == t || g.has_edge(s, t) {
        return Err(Error::InvalidArgument(format!(
            "local connectivity needs distinct non-adjacent vertices, got {s}->{t}"
        )));
    }
    Ok(SplitNetwork::new(g).local(s, t, usize::MAX))
}

/// Exact vertex connectivity by vertex-split max-flow.
///
/// A minimum separator misses at least one of any `κ + 1` vertices, and that
/// vertex lies on the source or the sink side of the cut. So it suffices to
/// run flows out of and into vertices `0, 1, …` while the index does not
/// exceed the best value found so far. The complete digraph on `n` vertices
/// has `κ = n − 1` and no certificate.
pub fn vertex_connectivity(g: &Digraph) -> Result<(usize, Option<CutCertificate>)> {
    require_strong(g)?;
    let n = g.vertex_count();
    if g.is_complete() {
        return Ok((n.saturating_sub(1), None));
    }
    let mut net = SplitNetwork::new(g);
    let mut best = n - 1;
    let mut cert: Option<CutCertificate> = None;
    let mut consider = |net: &mut SplitNetwork, s: usize, t: usize, best: &mut usize| {
        let f = net.local(s, t, *best);
        if f < *best {
            *best = f;
            let vertices = net.separator(s);
            debug_assert_eq!(vertices.len(), f);
            cert = Some(CutCertificate {
                kind: CutKind::Vertex,
                size: f,
                vertices,
                edges: Vec::new(),
                separated_pair: (s, t),
            });
        }
    };
    let mut v = 0;
    while v < n && v <= best {
        for w in 0..n {
            if w != v && !g.has_edge(v, w) {
                consider(&mut net, v, w, &mut best);
            }
            if w != v && !g.has_edge(w, v) {
                consider(&mut net, w, v, &mut best);
            }
        }
        v += 1;
    }
    Ok((best, cert))
}

/// Vertex connectivity of a vertex-transitive digraph: the minimum local
/// connectivity from `base` to every vertex it is not adjacent to.
/// Transitivity is the caller's responsibility.
pub fn vertex_connectivity_transitive(g: &Digraph, base: usize) -> Result<usize> {
    require_strong(g)?;
    let n = g.vertex_count();
    let mut net = SplitNetwork::new(g);
    let mut best = n.saturating_sub(1);
    for w in 0..n {
        if w != base && !g.has_edge(base, w) {
            best = best.min(net.local(base, w, best));
        }
    }
    Ok(best)
}

/// Exact edge connectivity with unit edge capacities. Every edge cut
/// separates vertex 0 from some vertex in one direction or the other, so
/// flows to and from vertex 0 suffice for arbitrary digraphs.
pub fn edge_connectivity(g: &Digraph) -> Result<(usize, CutCertificate)> {
    require_strong(g)?;
    let n = g.vertex_count();
    if n <= 1 {
        return Ok((
            0,
            CutCertificate {
                kind: CutKind::Edge,
                size: 0,
                vertices: Vec::new(),
                edges: Vec::new(),
                separated_pair: (0, 0),
            },
        ));
    }
    let arcs: Vec<(usize, usize, u32)> = g.edges().map(|(u, v)| (u, v, 1)).collect();
    let mut net = FlowNetwork::new(n, &arcs);
    let mut best = usize::MAX;
    let mut cert = None;
    for w in 1..n {
        for (s, t) in [(0, w), (w, 0)] {
            let f = net.max_flow(s, t, best);
            if f < best {
                best = f;
                let side = net.source_side(s);
                let edges: Vec<(usize, usize)> =
                    g.edges().filter(|&(u, v)| side[u] && !side[v]).collect();
                debug_assert_eq!(edges.len(), f);
                cert = Some(CutCertificate {
                    kind: CutKind::Edge,
                    size: f,
                    vertices: Vec::new(),
                    edges,
                    separated_pair: (s, t),
                });
            }
        }
    }
    Ok((best, cert.expect("n > 1 yields at least one flow")))
}
