//! Graph families, standard groups and coset graphs.
//!
//! Not constructed: the bipartite graphs of valency 7 and 15 on the two
//! classes of `A_7` subgroups of the O'Nan group, with `ON.2` acting. They
//! have about 3.7 * 10^8 vertices, and the maximality of their edge
//! stabilizers `PGL(2,9)` and `PSL(2,7):2` in `ON.2` is an ATLAS fact that
//! this crate does not certify.

mod field;
mod groups;

pub use field::{FiniteField, MAX_FIELD_ORDER};
pub use groups::{
    agammal1, agl1, alternating, mathieu10, pgammal2, pgl2, psl2, symmetric, ProjectiveLine,
    Reference,
};

use crate::actions::CosetSpace;
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::group::Group;
use crate::perm::Permutation;

/// Largest index accepted by [`coset_graph`].
pub const MAX_COSET_GRAPH_VERTICES: usize = 10_000;

pub fn complete_graph(m: usize) -> Result<Graph> {
    Graph::new(m, (0..m).flat_map(|a| (a + 1..m).map(move |b| (a, b))))
}

/// `K_{d,d}` with parts `0..d` and `d..2d`.
pub fn complete_bipartite(d: usize) -> Result<Graph> {
    Graph::new(2 * d, (0..d).flat_map(|a| (d..2 * d).map(move |b| (a, b))))
}

pub fn cycle(m: usize) -> Result<Graph> {
    if m < 3 {
        return Err(Error::OutOfCap {
            what: "cycle length",
            value: m,
            range: ">= 3",
        });
    }
    Graph::new(m, (0..m).map(|i| (i, (i + 1) % m)))
}

/// Outer 5-cycle `0..5`, inner pentagram `5..10`, spokes `i ~ i + 5`.
pub fn petersen() -> Graph {
    let mut e = Vec::new();
    for i in 0..5 {
        e.push((i, (i + 1) % 5));
        e.push((5 + i, 5 + (i + 2) % 5));
        e.push((i, i + 5));
    }
    Graph::new(10, e).expect("valid edge list")
}

/// Incidence graph of the Fano plane: points `0..7`, lines `7..14`, line
/// `j` through the points `j, j+1, j+3 (mod 7)`.
pub fn heawood() -> Graph {
    let mut e = Vec::new();
    for j in 0..7 {
        for off in [0, 1, 3] {
            e.push(((j + off) % 7, 7 + j));
        }
    }
    Graph::new(14, e).expect("valid edge list")
}

/// The Hoffman–Singleton graph from five pentagons `P_h` and five
/// pentagrams `Q_i`: `P_h[j] = 5h + j`, `Q_i[j] = 25 + 5i + j`, with
/// `P_h[j] ~ Q_i[h i + j mod 5]`.
pub fn hoffman_singleton() -> Graph {
    let mut e = Vec::new();
    for h in 0..5 {
        for j in 0..5 {
            e.push((5 * h + j, 5 * h + (j + 1) % 5));
            e.push((25 + 5 * h + j, 25 + 5 * h + (j + 2) % 5));
            for i in 0..5 {
                e.push((5 * h + j, 25 + 5 * i + (h * i + j) % 5));
            }
        }
    }
    Graph::new(50, e).expect("valid edge list")
}

/// Input for [`coset_graph`]: `Cos(G, H, HaH)`.
#[derive(Clone, Debug)]
pub struct CosetGraphSpec {
    pub group: Group,
    pub subgroup: Group,
    pub connector: Permutation,
}

/// A coset graph together with the induced action of `G` on its vertices.
#[derive(Clone, Debug)]
pub struct CosetGraph {
    pub graph: Graph,
    pub action: Group,
    /// Whether `<H, a> = G`.
    pub connected: bool,
    pub valency: usize,
}

/// Vertices are the right cosets `Hx`; `Hx ~ Hy` iff `y x^-1 ∈ HaH`.
pub fn coset_graph(spec: &CosetGraphSpec) -> Result<CosetGraph> {
    let CosetGraphSpec {
        group,
        subgroup,
        connector,
    } = spec;
    if !group.contains(connector)? {
        return Err(Error::NotInGroup);
    }
    if subgroup.contains(connector)? {
        return Err(Error::ConnectorInSubgroup);
    }
    let space = CosetSpace::new(group, subgroup, MAX_COSET_GRAPH_VERTICES)?;
    let n = space.len();

    let start = space
        .coset_of(connector)
        .expect("connector lies in the group");
    let h_images: Vec<Permutation> = subgroup
        .generators()
        .iter()
        .map(|h| space.act(h).expect("subgroup lies in the group"))
        .collect();
    let neighbourhood = crate::group::orbit_of(&h_images, n, start);
    let inverse = space
        .coset_of(&connector.inverse())
        .expect("group is closed");
    if !neighbourhood.contains(&inverse) {
        return Err(Error::DirectedCosetGraph);
    }

    let a_inv = connector.inverse();
    let mut stab = 0u64;
    subgroup.try_for_each_element(crate::group::DEFAULT_ENUMERATION_CUTOFF, |h| {
        if subgroup.sift_is_member(&connector.then(h).then(&a_inv)) {
            stab += 1;
        }
        true
    })?;
    let h_order = subgroup.order_u64().expect("enumerated above");
    assert_eq!(
        h_order / stab,
        neighbourhood.len() as u64,
        "valency must equal |H : H ∩ H^a|"
    );

    let reps = space.representatives();
    let mut edges = Vec::new();
    for (x, rep) in reps.iter().enumerate() {
        for &s in &neighbourhood {
            let y = space.coset_of(&reps[s].then(rep)).expect("group is closed");
            if x < y {
                edges.push((x, y));
            }
        }
    }
    let graph = Graph::new(n, edges)?;
    let action = Group::build(space.generator_images())?;
    graph.check_automorphisms(&action)?;
    let mut gens = subgroup.generators().to_vec();
    gens.push(connector.clone());
    let connected = &Group::build(&gens)?.order() == group.order_ref();
    assert_eq!(connected, graph.is_connected());
    Ok(CosetGraph {
        graph,
        action,
        connected,
        valency: neighbourhood.len(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigUint;

    #[test]
    fn family_parameters() {
        let k5 = complete_graph(5).unwrap();
        assert_eq!((k5.n(), k5.valency()), (5, Some(4)));
        let k33 = complete_bipartite(3).unwrap();
        assert_eq!(k33.complete_bipartite_valency(), Some(3));
        assert!(cycle(2).is_err());
        let p = petersen();
        assert_eq!(
            (p.valency(), p.girth(), p.diameter()),
            (Some(3), Some(5), Some(2))
        );
        let h = heawood();
        assert_eq!(
            (h.valency(), h.girth(), h.diameter()),
            (Some(3), Some(6), Some(3))
        );
    }

    #[test]
    fn hoffman_singleton_is_a_moore_graph() {
        let g = hoffman_singleton();
        assert_eq!(g.n(), 50);
        assert_eq!(g.edge_count(), 175);
        assert_eq!(g.valency(), Some(7));
        assert_eq!(g.girth(), Some(5));
        assert_eq!(g.diameter(), Some(2));
    }

    #[test]
    fn hoffman_singleton_automorphism_group() {
        let g = hoffman_singleton();
        let aut = crate::graph::automorphism_group(&g).unwrap();
        assert_eq!(aut.order(), BigUint::from(252_000u32));
        assert!(aut.is_transitive());
        let v = aut.point_stabilizer(0).unwrap();
        assert_eq!(v.order(), BigUint::from(5040u32));
    }

    #[test]
    fn coset_graph_recovers_k4() {
        // S4 = Aut(K4); a vertex stabilizer S3 and a transposition moving the vertex.
        let s4 = symmetric(4).unwrap();
        let h = s4.point_stabilizer(3).unwrap();
        let a = Permutation::from_cycles(4, &[&[2, 3]]).unwrap();
        let cg = coset_graph(&CosetGraphSpec {
            group: s4.clone(),
            subgroup: h.clone(),
            connector: a,
        })
        .unwrap();
        assert_eq!(cg.graph.n(), 4);
        assert!(cg.graph.is_complete());
        assert!(cg.connected);
        assert_eq!(cg.valency, 3);
        assert_eq!(cg.action.order(), BigUint::from(24u32));

        let inside = Permutation::from_cycles(4, &[&[0, 1]]).unwrap();
        let err = coset_graph(&CosetGraphSpec {
            group: s4.clone(),
            subgroup: h,
            connector: inside,
        });
        assert!(matches!(err, Err(Error::ConnectorInSubgroup)));
    }

    #[test]
    fn directed_connector_is_rejected() {
        // In Z5 with trivial H, a 5-cycle and its inverse give different cosets.
        let c = Permutation::from_cycles(5, &[&[0, 1, 2, 3, 4]]).unwrap();
        let z5 = Group::build(std::slice::from_ref(&c)).unwrap();
        let err = coset_graph(&CosetGraphSpec {
            group: z5,
            subgroup: Group::trivial(5),
            connector: c,
        });
        assert!(matches!(err, Err(Error::DirectedCosetGraph)));
    }

    #[test]
    fn disconnected_coset_graph_is_reported() {
        // Z2 x Z2 on 4 points with trivial H: the connector generates only Z2.
        let a = Permutation::from_cycles(4, &[&[0, 1], &[2, 3]]).unwrap();
        let b = Permutation::from_cycles(4, &[&[0, 2], &[1, 3]]).unwrap();
        let v4 = Group::build(&[a.clone(), b]).unwrap();
        let cg = coset_graph(&CosetGraphSpec {
            group: v4,
            subgroup: Group::trivial(4),
            connector: a,
        })
        .unwrap();
        assert!(!cg.connected);
        assert_eq!(cg.graph.edge_count(), 2);
    }
}
