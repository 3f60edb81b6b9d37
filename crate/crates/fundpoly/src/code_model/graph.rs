use super::ParityCheckMatrix;
use std::collections::VecDeque;

/// Bipartite Tanner graph. Variable node `i` has id `i`, check node `j` has id `n + j`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TannerGraph {
    n: usize,
    m: usize,
    adj: Vec<Vec<usize>>,
}

impl TannerGraph {
    pub fn new(h: &ParityCheckMatrix) -> Self {
        let (n, m) = (h.n(), h.m());
        let mut adj = vec![Vec::new(); n + m];
        for (j, i) in h.edges() {
            adj[i].push(n + j);
            adj[n + j].push(i);
        }
        TannerGraph { n, m, adj }
    }

    pub fn num_variables(&self) -> usize {
        self.n
    }

    pub fn num_checks(&self) -> usize {
        self.m
    }

    pub fn num_nodes(&self) -> usize {
        self.n + self.m
    }

    pub fn variable_node(&self, i: usize) -> usize {
        i
    }

    pub fn check_node(&self, j: usize) -> usize {
        self.n + j
    }

    pub fn is_variable(&self, v: usize) -> bool {
        v < self.n
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn edges(&self) -> Vec<(usize, usize)> {
        (0..self.n).flat_map(|i| self.adj[i].iter().map(move |&c| (i, c))).collect()
    }

    /// Breadth-first distances from `src`; unreachable nodes get `None`.
    pub fn distances(&self, src: usize) -> Vec<Option<usize>> {
        let mut dist = vec![None; self.num_nodes()];
        dist[src] = Some(0);
        let mut q = VecDeque::from([src]);
        while let Some(u) = q.pop_front() {
            let du = dist[u].unwrap();
            for &w in &self.adj[u] {
                if dist[w].is_none() {
                    dist[w] = Some(du + 1);
                    q.push_back(w);
                }
            }
        }
        dist
    }

    /// Length of the shortest cycle; `None` for a forest.
    pub fn girth(&self) -> Option<usize> {
        let mut best: Option<usize> = None;
        for s in 0..self.num_nodes() {
            let mut dist = vec![usize::MAX; self.num_nodes()];
            let mut parent = vec![usize::MAX; self.num_nodes()];
            dist[s] = 0;
            let mut q = VecDeque::from([s]);
            while let Some(u) = q.pop_front() {
                if best.is_some_and(|b| 2 * dist[u] + 1 >= b) {
                    break;
                }
                for &w in &self.adj[u] {
                    if dist[w] == usize::MAX {
                        dist[w] = dist[u] + 1;
                        parent[w] = u;
                        q.push_back(w);
                    } else if parent[u] != w {
                        let len = dist[u] + dist[w] + 1;
                        best = Some(best.map_or(len, |b| b.min(len)));
                    }
                }
            }
        }
        best
    }

    /// Largest distance between two nodes; `None` when disconnected.
    pub fn diameter(&self) -> Option<usize> {
        let mut d = 0;
        for s in 0..self.num_nodes() {
            for x in self.distances(s) {
                d = d.max(x?);
            }
        }
        Some(d)
    }

    pub fn is_forest(&self) -> bool {
        self.girth().is_none()
    }

    /// Connected component id per node (ids in order of smallest member).
    pub fn components(&self) -> Vec<usize> {
        let mut comp = vec![usize::MAX; self.num_nodes()];
        let mut next = 0;
        for s in 0..self.num_nodes() {
            if comp[s] != usize::MAX {
                continue;
            }
            comp[s] = next;
            let mut q = VecDeque::from([s]);
            while let Some(u) = q.pop_front() {
                for &w in &self.adj[u] {
                    if comp[w] == usize::MAX {
                        comp[w] = next;
                        q.push_back(w);
                    }
                }
            }
            next += 1;
        }
        comp
    }

    /// Edges (variable, check-node id) of a BFS spanning forest.
    pub fn spanning_forest(&self) -> Vec<(usize, usize)> {
        let mut seen = vec![false; self.num_nodes()];
        let mut tree = Vec::new();
        for s in 0..self.num_nodes() {
            if seen[s] {
                continue;
            }
            seen[s] = true;
            let mut q = VecDeque::from([s]);
            while let Some(u) = q.pop_front() {
                for &w in &self.adj[u] {
                    if !seen[w] {
                        seen[w] = true;
                        tree.push(if u < self.n { (u, w) } else { (w, u) });
                        q.push_back(w);
                    }
                }
            }
        }
        tree
    }
}
