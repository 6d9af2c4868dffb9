//! Automorphism groups by partition refinement and backtracking.
//!
//! Every node of the search tree is an ordered equitable partition. The first
//! path always individualizes the smallest vertex of the first smallest
//! non-singleton cell; the other branches are explored bottom-up, pruned by
//! the orbits of the automorphisms found so far and by refinement traces.

use super::Graph;
use crate::error::{Error, Result};
use crate::group::{orbit_of, Group};
use crate::perm::Permutation;

pub const MAX_AUTOMORPHISM_VERTICES: usize = 1000;

type Cells = Vec<Vec<usize>>;

fn mix(h: u64, x: u64) -> u64 {
    (h ^ x).wrapping_mul(0x0000_0100_0000_01b3).rotate_left(5)
}

/// Refines `cells` to the coarsest equitable partition below it.
fn refine(g: &Graph, cells: &mut Cells, mut trace: u64) -> u64 {
    let mut count = vec![0usize; g.n()];
    loop {
        let mut split_any = false;
        let mut s = 0;
        while s < cells.len() {
            count.iter_mut().for_each(|c| *c = 0);
            for &x in &cells[s] {
                for &y in g.neighbors(x) {
                    count[y] += 1;
                }
            }
            let mut next = Vec::with_capacity(cells.len());
            for (ci, mut cell) in std::mem::take(cells).into_iter().enumerate() {
                let first = count[cell[0]];
                if cell.iter().all(|&v| count[v] == first) {
                    next.push(cell);
                    continue;
                }
                split_any = true;
                trace = mix(trace, (s as u64) << 32 | ci as u64);
                cell.sort_unstable_by_key(|&v| (count[v], v));
                let mut start = 0;
                while start < cell.len() {
                    let c = count[cell[start]];
                    let end = start + cell[start..].iter().take_while(|&&v| count[v] == c).count();
                    trace = mix(trace, (c as u64) << 32 | (end - start) as u64);
                    next.push(cell[start..end].to_vec());
                    start = end;
                }
            }
            *cells = next;
            s += 1;
        }
        if !split_any {
            return trace;
        }
    }
}

fn target_cell(cells: &Cells) -> Option<usize> {
    cells
        .iter()
        .enumerate()
        .filter(|(_, c)| c.len() > 1)
        .min_by_key(|(i, c)| (c.len(), *i))
        .map(|(i, _)| i)
}

fn individualize(g: &Graph, cells: &Cells, target: usize, v: usize, trace: u64) -> (Cells, u64) {
    let mut out = Vec::with_capacity(cells.len() + 1);
    for (i, c) in cells.iter().enumerate() {
        if i == target {
            out.push(vec![v]);
            out.push(c.iter().copied().filter(|&x| x != v).collect());
        } else {
            out.push(c.clone());
        }
    }
    let trace = mix(trace, u64::MAX - target as u64);
    let trace = refine(g, &mut out, trace);
    (out, trace)
}

struct Node {
    cells: Cells,
    trace: u64,
    target: usize,
}

struct Search<'a> {
    graph: &'a Graph,
    path: Vec<Node>,
    leaf_trace: u64,
    first_leaf: Vec<usize>,
}

impl Search<'_> {
    fn explore(&self, depth: usize, cells: Cells, trace: u64) -> Option<Permutation> {
        let expected = self.path.get(depth).map_or(self.leaf_trace, |n| n.trace);
        if trace != expected {
            return None;
        }
        if depth == self.path.len() {
            if cells.iter().any(|c| c.len() != 1) {
                return None;
            }
            let mut images = vec![0; self.graph.n()];
            for (k, c) in cells.iter().enumerate() {
                images[self.first_leaf[k]] = c[0];
            }
            let p = Permutation::new(images).ok()?;
            return self.graph.is_automorphism(&p).then_some(p);
        }
        let target = self.path[depth].target;
        let mut options = cells[target].clone();
        options.sort_unstable();
        options.into_iter().find_map(|x| {
            let (next, t) = individualize(self.graph, &cells, target, x, trace);
            self.explore(depth + 1, next, t)
        })
    }
}

/// The full automorphism group of `g`, built with the first-path vertices
/// as the base prefix.
pub fn automorphism_group(g: &Graph) -> Result<Group> {
    let n = g.n();
    if n > MAX_AUTOMORPHISM_VERTICES {
        return Err(Error::scale(
            "automorphism search vertex count",
            n,
            MAX_AUTOMORPHISM_VERTICES as u64,
        ));
    }
    let mut cells = vec![(0..n).collect::<Vec<_>>()];
    let mut trace = refine(g, &mut cells, 0);
    let mut path = Vec::new();
    let mut base = Vec::new();
    while let Some(target) = target_cell(&cells) {
        let b = *cells[target].iter().min().unwrap();
        let (next, t) = individualize(g, &cells, target, b, trace);
        path.push(Node {
            cells,
            trace,
            target,
        });
        base.push(b);
        cells = next;
        trace = t;
    }
    let search = Search {
        graph: g,
        first_leaf: cells.iter().map(|c| c[0]).collect(),
        path,
        leaf_trace: trace,
    };

    let mut gens: Vec<Permutation> = Vec::new();
    for i in (0..search.path.len()).rev() {
        let node = &search.path[i];
        let mut candidates = node.cells[node.target].clone();
        candidates.sort_unstable();
        let mut orbit = orbit_of(&gens, n, base[i]);
        for w in candidates {
            if orbit.contains(&w) {
                continue;
            }
            let (next, t) = individualize(g, &node.cells, node.target, w, node.trace);
            if let Some(p) = search.explore(i + 1, next, t) {
                gens.push(p);
                orbit = orbit_of(&gens, n, base[i]);
            }
        }
    }
    if gens.is_empty() {
        return Ok(Group::trivial(n));
    }
    Group::build_with_base(&gens, &base)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigUint;
    use rand::rngs::StdRng;
    use rand::{Rng, SeedableRng};

    fn all_perms(n: usize) -> Vec<Vec<usize>> {
        fn go(n: usize, cur: &mut Vec<usize>, used: &mut [bool], out: &mut Vec<Vec<usize>>) {
            if cur.len() == n {
                out.push(cur.clone());
                return;
            }
            for x in 0..n {
                if !used[x] {
                    used[x] = true;
                    cur.push(x);
                    go(n, cur, used, out);
                    cur.pop();
                    used[x] = false;
                }
            }
        }
        let mut out = Vec::new();
        go(n, &mut Vec::new(), &mut vec![false; n], &mut out);
        out
    }

    fn brute_force_count(g: &Graph) -> usize {
        all_perms(g.n())
            .into_iter()
            .filter(|p| g.is_automorphism(&Permutation::new(p.clone()).unwrap()))
            .count()
    }

    #[test]
    fn known_groups() {
        let k4 = Graph::new(4, [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]).unwrap();
        assert_eq!(
            automorphism_group(&k4).unwrap().order(),
            BigUint::from(24u32)
        );
        let c7 = Graph::new(7, (0..7).map(|i| (i, (i + 1) % 7))).unwrap();
        assert_eq!(
            automorphism_group(&c7).unwrap().order(),
            BigUint::from(14u32)
        );
        let mut e = Vec::new();
        for i in 0..5 {
            e.push((i, (i + 1) % 5));
            e.push((5 + i, 5 + (i + 2) % 5));
            e.push((i, i + 5));
        }
        let petersen = Graph::new(10, e).unwrap();
        let aut = automorphism_group(&petersen).unwrap();
        assert_eq!(aut.order(), BigUint::from(120u32));
        assert!(aut.generators().iter().all(|p| petersen.is_automorphism(p)));
        let empty = Graph::new(5, []).unwrap();
        assert_eq!(
            automorphism_group(&empty).unwrap().order(),
            BigUint::from(120u32)
        );
        let single = Graph::new(1, []).unwrap();
        assert!(automorphism_group(&single).unwrap().is_trivial());
    }

    #[test]
    fn matches_brute_force_on_random_graphs() {
        let mut rng = StdRng::seed_from_u64(7);
        for _ in 0..40 {
            let n = rng.gen_range(1..=7);
            let p: f64 = rng.gen_range(0.1..0.9);
            let mut edges = Vec::new();
            for a in 0..n {
                for b in a + 1..n {
                    if rng.gen_bool(p) {
                        edges.push((a, b));
                    }
                }
            }
            let g = Graph::new(n, edges).unwrap();
            let aut = automorphism_group(&g).unwrap();
            assert_eq!(aut.order(), BigUint::from(brute_force_count(&g)));
        }
    }
}
