//! Finite simple undirected graphs and s-arcs.

mod automorphism;
mod local;

pub use automorphism::{automorphism_group, MAX_AUTOMORPHISM_VERTICES};
pub use local::{arc_kernel, local_action, s_arc_profile, LocalAction, SArcProfile};

use std::collections::VecDeque;

use num_bigint::BigUint;

use crate::error::{Error, Result};
use crate::group::Group;
use crate::perm::Permutation;

/// Largest `s` accepted by s-arc operations.
pub const MAX_S: usize = 8;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Graph {
    n: usize,
    edges: Vec<(usize, usize)>,
    adj: Vec<Vec<usize>>,
}

/// An s-arc `(v_0, .., v_s)`: consecutive vertices adjacent and
/// `v_i != v_{i+2}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SArc(pub Vec<usize>);

impl SArc {
    pub fn s(&self) -> usize {
        self.0.len() - 1
    }

    pub fn is_valid_in(&self, g: &Graph) -> bool {
        let v = &self.0;
        !v.is_empty()
            && v.iter().all(|&x| x < g.n)
            && v.windows(2).all(|w| g.has_edge(w[0], w[1]))
            && v.windows(3).all(|w| w[0] != w[2])
    }
}

impl Graph {
    /// Builds a graph, rejecting loops, duplicates and out-of-range ends.
    pub fn new<I>(n: usize, edges: I) -> Result<Graph>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        if n == 0 {
            return Err(Error::ZeroDegree);
        }
        let mut adj = vec![Vec::new(); n];
        let mut list = Vec::new();
        for (u, v) in edges {
            if u >= n || v >= n {
                return Err(Error::MalformedEdge {
                    u,
                    v,
                    reason: "endpoint out of range",
                });
            }
            if u == v {
                return Err(Error::MalformedEdge {
                    u,
                    v,
                    reason: "loop",
                });
            }
            let e = (u.min(v), u.max(v));
            if adj[e.0].contains(&e.1) {
                return Err(Error::MalformedEdge {
                    u,
                    v,
                    reason: "duplicate edge",
                });
            }
            adj[e.0].push(e.1);
            adj[e.1].push(e.0);
            list.push(e);
        }
        list.sort_unstable();
        for a in adj.iter_mut() {
            a.sort_unstable();
        }
        Ok(Graph {
            n,
            edges: list,
            adj,
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Edges as sorted pairs, in lexicographic order.
    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.n && v < self.n && self.adj[u].binary_search(&v).is_ok()
    }

    /// Common valency, or `None` when the graph is irregular.
    pub fn valency(&self) -> Option<usize> {
        let d = self.adj[0].len();
        self.adj.iter().all(|a| a.len() == d).then_some(d)
    }

    pub fn distances_from(&self, s: usize) -> Vec<Option<usize>> {
        let mut dist = vec![None; self.n];
        dist[s] = Some(0);
        let mut q = VecDeque::from([s]);
        while let Some(x) = q.pop_front() {
            let dx = dist[x].unwrap();
            for &y in &self.adj[x] {
                if dist[y].is_none() {
                    dist[y] = Some(dx + 1);
                    q.push_back(y);
                }
            }
        }
        dist
    }

    pub fn is_connected(&self) -> bool {
        self.distances_from(0).iter().all(|d| d.is_some())
    }

    /// `None` when disconnected.
    pub fn diameter(&self) -> Option<usize> {
        let mut best = 0;
        for v in 0..self.n {
            for d in self.distances_from(v) {
                best = best.max(d?);
            }
        }
        Some(best)
    }

    /// Length of a shortest cycle; `None` for forests.
    pub fn girth(&self) -> Option<usize> {
        let mut best: Option<usize> = None;
        for s in 0..self.n {
            let mut dist = vec![usize::MAX; self.n];
            let mut parent = vec![usize::MAX; self.n];
            dist[s] = 0;
            let mut q = VecDeque::from([s]);
            while let Some(x) = q.pop_front() {
                for &y in &self.adj[x] {
                    if dist[y] == usize::MAX {
                        dist[y] = dist[x] + 1;
                        parent[y] = x;
                        q.push_back(y);
                    } else if parent[x] != y {
                        let len = dist[x] + dist[y] + 1;
                        best = Some(best.map_or(len, |b| b.min(len)));
                    }
                }
            }
        }
        best
    }

    /// A proper 2-colouring as `(colour 0, colour 1)`, if one exists.
    pub fn bipartition(&self) -> Option<(Vec<usize>, Vec<usize>)> {
        let mut colour = vec![u8::MAX; self.n];
        for s in 0..self.n {
            if colour[s] != u8::MAX {
                continue;
            }
            colour[s] = 0;
            let mut q = VecDeque::from([s]);
            while let Some(x) = q.pop_front() {
                for &y in &self.adj[x] {
                    if colour[y] == u8::MAX {
                        colour[y] = 1 - colour[x];
                        q.push_back(y);
                    } else if colour[y] == colour[x] {
                        return None;
                    }
                }
            }
        }
        let left = (0..self.n).filter(|&v| colour[v] == 0).collect();
        let right = (0..self.n).filter(|&v| colour[v] == 1).collect();
        Some((left, right))
    }

    /// `Some(d)` when the graph is `K_{d,d}` (detected structurally).
    pub fn complete_bipartite_valency(&self) -> Option<usize> {
        let (left, right) = self.bipartition()?;
        let d = left.len();
        (d > 0 && right.len() == d && self.edges.len() == d * d).then_some(d)
    }

    pub fn is_complete(&self) -> bool {
        self.edges.len() == self.n * (self.n - 1) / 2
    }

    /// A star `K_{1,m}`: one centre adjacent to every other vertex, no other edges.
    pub fn is_star(&self) -> bool {
        self.n >= 2
            && self.edges.len() == self.n - 1
            && self.adj.iter().any(|a| a.len() == self.n - 1)
    }

    pub fn is_automorphism(&self, p: &Permutation) -> bool {
        p.degree() == self.n
            && self
                .edges
                .iter()
                .all(|&(u, v)| self.has_edge(p.apply(u), p.apply(v)))
    }

    /// Fails on the first generator of `g` that does not preserve edges.
    pub fn check_automorphisms(&self, g: &Group) -> Result<()> {
        if g.degree() != self.n {
            return Err(Error::DegreeMismatch {
                expected: self.n,
                found: g.degree(),
            });
        }
        match g.generators().iter().position(|p| !self.is_automorphism(p)) {
            Some(index) => Err(Error::NotAutomorphism { index }),
            None => Ok(()),
        }
    }

    fn check_s(s: usize) -> Result<()> {
        if s == 0 || s > MAX_S {
            Err(Error::OutOfCap {
                what: "s",
                value: s,
                range: "1..=8",
            })
        } else {
            Ok(())
        }
    }

    /// All s-arcs, in lexicographic order.
    pub fn enumerate_s_arcs(&self, s: usize) -> Result<Vec<SArc>> {
        Graph::check_s(s)?;
        let mut out = Vec::new();
        let mut path = Vec::with_capacity(s + 1);
        for v in 0..self.n {
            path.push(v);
            self.extend_arcs(s, &mut path, &mut out);
            path.pop();
        }
        if let Some(expected) = self.s_arc_count(s) {
            assert_eq!(
                BigUint::from(out.len()),
                expected,
                "s-arc enumeration disagrees with n*d*(d-1)^(s-1)"
            );
        }
        Ok(out)
    }

    fn extend_arcs(&self, s: usize, path: &mut Vec<usize>, out: &mut Vec<SArc>) {
        if path.len() == s + 1 {
            out.push(SArc(path.clone()));
            return;
        }
        let last = *path.last().unwrap();
        let back = (path.len() >= 2).then(|| path[path.len() - 2]);
        for &y in &self.adj[last] {
            if Some(y) == back {
                continue;
            }
            path.push(y);
            self.extend_arcs(s, path, out);
            path.pop();
        }
    }

    /// The lexicographically first s-arc, if any.
    pub fn first_s_arc(&self, s: usize) -> Result<Option<SArc>> {
        Graph::check_s(s)?;
        for v in 0..self.n {
            let mut path = vec![v];
            if self.first_arc_from(s, &mut path) {
                return Ok(Some(SArc(path)));
            }
        }
        Ok(None)
    }

    fn first_arc_from(&self, s: usize, path: &mut Vec<usize>) -> bool {
        if path.len() == s + 1 {
            return true;
        }
        let last = *path.last().unwrap();
        let back = (path.len() >= 2).then(|| path[path.len() - 2]);
        for &y in &self.adj[last] {
            if Some(y) == back {
                continue;
            }
            path.push(y);
            if self.first_arc_from(s, path) {
                return true;
            }
            path.pop();
        }
        false
    }

    /// `n * d * (d-1)^(s-1)` for a `d`-regular graph; `None` if irregular.
    pub fn s_arc_count(&self, s: usize) -> Option<BigUint> {
        let d = self.valency()?;
        if s == 0 {
            return Some(BigUint::from(self.n));
        }
        let branch = BigUint::from(d.saturating_sub(1)).pow((s - 1) as u32);
        Some(BigUint::from(self.n) * BigUint::from(d) * branch)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn complete(n: usize) -> Graph {
        Graph::new(n, (0..n).flat_map(|a| (a + 1..n).map(move |b| (a, b)))).unwrap()
    }

    fn cycle(n: usize) -> Graph {
        Graph::new(n, (0..n).map(|i| (i, (i + 1) % n))).unwrap()
    }

    fn petersen() -> Graph {
        let mut e = Vec::new();
        for i in 0..5 {
            e.push((i, (i + 1) % 5));
            e.push((5 + i, 5 + (i + 2) % 5));
            e.push((i, i + 5));
        }
        Graph::new(10, e).unwrap()
    }

    #[test]
    fn k4_structure() {
        let g = complete(4);
        assert_eq!(g.valency(), Some(3));
        assert!(g.is_connected());
        assert_eq!(g.girth(), Some(3));
        assert_eq!(g.edge_count(), 6);
        assert!(g.is_complete());
    }

    #[test]
    fn petersen_structure() {
        let g = petersen();
        assert_eq!(g.valency(), Some(3));
        assert_eq!(g.girth(), Some(5));
        assert_eq!(g.diameter(), Some(2));
        assert!(g.bipartition().is_none());
    }

    #[test]
    fn forests_and_stars() {
        let star = Graph::new(4, [(0, 1), (0, 2), (0, 3)]).unwrap();
        assert_eq!(star.girth(), None);
        assert!(star.is_star());
        assert_eq!(star.valency(), None);
        let path = Graph::new(3, [(0, 1), (1, 2)]).unwrap();
        assert!(path.is_star());
        assert!(!complete(3).is_star());
        let two = Graph::new(4, [(0, 1), (2, 3)]).unwrap();
        assert!(!two.is_connected());
        assert_eq!(two.diameter(), None);
    }

    #[test]
    fn rejects_malformed_edges() {
        assert!(matches!(
            Graph::new(3, [(0, 0)]),
            Err(Error::MalformedEdge { reason: "loop", .. })
        ));
        assert!(matches!(
            Graph::new(3, [(0, 1), (1, 0)]),
            Err(Error::MalformedEdge {
                reason: "duplicate edge",
                ..
            })
        ));
        assert!(Graph::new(3, [(0, 3)]).is_err());
    }

    #[test]
    fn s_arc_counts() {
        for n in 3..8 {
            for s in 1..=5 {
                assert_eq!(cycle(n).enumerate_s_arcs(s).unwrap().len(), 2 * n);
            }
        }
        let k4 = complete(4);
        let arcs = k4.enumerate_s_arcs(2).unwrap();
        assert_eq!(arcs.len(), 24);
        assert!(arcs.iter().all(|a| a.is_valid_in(&k4) && a.s() == 2));
        let mut sorted = arcs.clone();
        sorted.dedup();
        assert_eq!(sorted.len(), arcs.len());
        assert!(k4.enumerate_s_arcs(0).is_err());
        assert!(k4.enumerate_s_arcs(9).is_err());
        assert_eq!(k4.first_s_arc(3).unwrap(), Some(SArc(vec![0, 1, 2, 0])));
    }

    #[test]
    fn complete_bipartite_detection() {
        let k33 = Graph::new(6, (0..3).flat_map(|a| (3..6).map(move |b| (a, b)))).unwrap();
        assert_eq!(k33.complete_bipartite_valency(), Some(3));
        assert_eq!(cycle(4).complete_bipartite_valency(), Some(2));
        assert_eq!(cycle(6).complete_bipartite_valency(), None);
        assert_eq!(complete(4).complete_bipartite_valency(), None);
    }
}
