use num_bigint::BigUint;

use super::{Graph, SArc};
use crate::actions::Action;
use crate::error::{Error, Result};
use crate::group::Group;

/// `G_v` acting on the neighbourhood `Γ(v)`, with its kernel `G_v^[1]`.
#[derive(Clone, Debug)]
pub struct LocalAction {
    pub vertex: usize,
    pub stabilizer: Group,
    pub action: Action,
    pub kernel: Group,
}

pub fn local_action(g: &Group, graph: &Graph, v: usize) -> Result<LocalAction> {
    graph.check_automorphisms(g)?;
    let stabilizer = g.point_stabilizer(v)?;
    let nbrs = graph.neighbors(v);
    let action = Action::restrict_to_invariant_set(&stabilizer, nbrs)?;
    let mut fixed = vec![v];
    fixed.extend_from_slice(nbrs);
    let kernel = g.pointwise_stabilizer(&fixed)?;
    Ok(LocalAction {
        vertex: v,
        stabilizer,
        action,
        kernel,
    })
}

/// `G_uv^[1] = G_u^[1] ∩ G_v^[1]`: the pointwise stabilizer of
/// `Γ(u) ∪ Γ(v)`.
pub fn arc_kernel(g: &Group, graph: &Graph, u: usize, v: usize) -> Result<Group> {
    if !graph.has_edge(u, v) {
        return Err(Error::NotEdge { u, v });
    }
    graph.check_automorphisms(g)?;
    let mut fixed = vec![u, v];
    fixed.extend_from_slice(graph.neighbors(u));
    fixed.extend_from_slice(graph.neighbors(v));
    g.pointwise_stabilizer(&fixed)
}

/// Transitivity of `G` on s-arcs for `s = 1..=cap`, tested by comparing
/// `|G : G_(v_0, .., v_s)|` with the number of s-arcs along the first
/// `cap`-arc.
#[derive(Clone, Debug)]
pub struct SArcProfile {
    pub arc: SArc,
    /// `stabilizer_orders[s]` is the order of the pointwise stabilizer of
    /// `(v_0, .., v_s)`.
    pub stabilizer_orders: Vec<BigUint>,
    /// `transitive[s]` for `s = 0..=cap`; index 0 is vertex-transitivity.
    pub transitive: Vec<bool>,
}

impl SArcProfile {
    /// Largest `s` such that `G` is transitive on t-arcs for every
    /// `1 <= t <= s`.
    pub fn degree(&self) -> usize {
        self.transitive[1..].iter().take_while(|&&t| t).count()
    }

    pub fn cap(&self) -> usize {
        self.transitive.len() - 1
    }
}

/// Requires a connected regular graph of valency at least 2.
pub fn s_arc_profile(g: &Group, graph: &Graph, cap: usize) -> Result<SArcProfile> {
    graph.check_automorphisms(g)?;
    if !graph.is_connected() {
        return Err(Error::Disconnected);
    }
    let d = graph.valency().ok_or(Error::Irregular)?;
    if d < 2 {
        return Err(Error::OutOfCap {
            what: "valency",
            value: d,
            range: ">= 2",
        });
    }
    let arc = graph
        .first_s_arc(cap)?
        .expect("regular graphs of valency >= 2 have s-arcs of every length");
    let order = g.order();
    let mut stab = g.clone();
    let mut stabilizer_orders = Vec::with_capacity(cap + 1);
    let mut transitive = Vec::with_capacity(cap + 1);
    for (s, &v) in arc.0.iter().enumerate() {
        stab = stab.point_stabilizer(v)?;
        let orbit = &order / stab.order_ref();
        let count = graph.s_arc_count(s).expect("regular");
        transitive.push(orbit == count);
        stabilizer_orders.push(stab.order());
    }
    Ok(SArcProfile {
        arc,
        stabilizer_orders,
        transitive,
    })
}
