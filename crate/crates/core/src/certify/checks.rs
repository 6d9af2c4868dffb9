//! Checks on a pair `(G, Γ)`.

use std::sync::OnceLock;

use num_bigint::BigUint;
use serde_json::{json, Value};

use super::{big, Certificate, Checker, Evidence, Outcome};
use crate::actions::{is_primitive, Action};
use crate::constructions::Reference;
use crate::error::{Error, Result};
use crate::graph::{arc_kernel, local_action, s_arc_profile, Graph, SArcProfile};
use crate::group::{prime_divisors, Group, GroupFingerprint, DEFAULT_ENUMERATION_CUTOFF};

/// `G` is transitive on vertices and `G_v` is transitive on `Γ(v)`.
pub fn arc_transitive(g: &Group, graph: &Graph) -> Result<bool> {
    if !g.is_transitive() || graph.degree(0) == 0 {
        return Ok(false);
    }
    let stab = g.point_stabilizer(0)?;
    Ok(stab.orbit(graph.neighbors(0)[0])? == graph.neighbors(0))
}

fn first_edge(graph: &Graph) -> (usize, usize) {
    graph.edges()[0]
}

fn reference_fingerprints() -> &'static Vec<(Reference, GroupFingerprint)> {
    static REFS: OnceLock<Vec<(Reference, GroupFingerprint)>> = OnceLock::new();
    REFS.get_or_init(|| {
        Reference::ALL
            .iter()
            .map(|&r| {
                let g = r.build().expect("reference groups build");
                (r, g.fingerprint(DEFAULT_ENUMERATION_CUTOFF))
            })
            .collect()
    })
}

/// Reference groups whose fingerprint equals that of `g`.
pub(crate) fn identify(g: &Group, cutoff: u64) -> Result<Vec<Reference>> {
    let fp = g.fingerprint(cutoff);
    if fp.element_order_histogram.is_none() {
        return Err(Error::scale(
            "fingerprint identification",
            g.order(),
            cutoff,
        ));
    }
    Ok(reference_fingerprints()
        .iter()
        .filter(|(_, r)| *r == fp)
        .map(|(name, _)| *name)
        .collect())
}

fn names(refs: &[Reference]) -> Value {
    refs.iter().map(|r| r.name()).collect::<Vec<_>>().into()
}

impl Checker {
    pub(crate) fn edge_primitive_into(
        &self,
        g: &Group,
        graph: &Graph,
        ev: &mut Evidence,
    ) -> Result<Outcome> {
        graph.check_automorphisms(g)?;
        ev.set("edge_count", graph.edge_count());
        if graph.edge_count() == 0 {
            return Ok(Outcome::NotApplicable("graph has no edges".into()));
        }
        let labels: Vec<Vec<usize>> = graph.edges().iter().map(|&(u, v)| vec![u, v]).collect();
        let action = Action::on_sets(g, labels)?;
        let (u, v) = first_edge(graph);
        let stab = g.setwise_stabilizer(&[u, v])?;
        ev.order("group_order", g.order_ref());
        ev.set("edge", json!([u, v]));
        ev.order("edge_stabilizer_order", stab.order_ref());
        let transitive = action.is_transitive();
        ev.set("edge_transitive", transitive);
        if !transitive {
            return Ok(Outcome::NotApplicable("G is not edge-transitive".into()));
        }
        let index = g.order_ref() / stab.order_ref();
        assert_eq!(
            index,
            BigUint::from(graph.edge_count()),
            "orbit-stabilizer on edges"
        );
        ev.order("edge_stabilizer_index", &index);
        let (primitive, witness) = action.is_primitive()?;
        ev.set("primitive", primitive);
        if let Some(blocks) = witness {
            let edges: Vec<Vec<[usize; 2]>> = blocks
                .blocks
                .iter()
                .map(|b| {
                    b.iter()
                        .map(|&i| [action.labels()[i][0], action.labels()[i][1]])
                        .collect()
                })
                .collect();
            ev.set("block_size", blocks.block_size);
            ev.set("block_count", blocks.blocks.len());
            ev.set("block_witness", json!(edges));
            return Ok(Outcome::Fail(format!(
                "edge action preserves a system of {} blocks of size {}",
                blocks.blocks.len(),
                blocks.block_size
            )));
        }
        let arc_t = arc_transitive(g, graph)?;
        let star = graph.is_star();
        let connected = graph.is_connected();
        ev.set("arc_transitive", arc_t);
        ev.set("star", star);
        if connected && !star && !arc_t {
            return Ok(Outcome::Fail(
                "edge-primitive connected non-star graph is not arc-transitive".into(),
            ));
        }
        Ok(Outcome::Pass)
    }

    pub fn is_edge_primitive(&self, g: &Group, graph: &Graph) -> Result<Certificate> {
        self.run("edge-primitive", |ev| {
            self.edge_primitive_into(g, graph, ev)
        })
    }

    /// Records the s-arc profile; requires a connected regular graph.
    pub(crate) fn s_profile_into(
        &self,
        g: &Group,
        graph: &Graph,
        ev: &mut Evidence,
    ) -> Result<SArcProfile> {
        let p = s_arc_profile(g, graph, self.config.s_cap)?;
        ev.set("vertex_transitive", p.transitive[0]);
        ev.set("s_degree", p.degree());
        ev.set("s_cap", p.cap());
        ev.set("probe_transitive_at_cap", p.transitive[p.cap()]);
        ev.set("arc", json!(p.arc.0));
        ev.set(
            "arc_stabilizer_orders",
            p.stabilizer_orders.iter().map(big).collect::<Vec<_>>(),
        );
        Ok(p)
    }

    pub(crate) fn s_degree_into(
        &self,
        g: &Group,
        graph: &Graph,
        ev: &mut Evidence,
    ) -> Result<Outcome> {
        graph.check_automorphisms(g)?;
        if !graph.is_connected() {
            return Err(Error::Disconnected);
        }
        let d = graph.valency().ok_or(Error::Irregular)?;
        ev.set("valency", d);
        if d < 3 {
            return Ok(Outcome::NotApplicable("valency < 3".into()));
        }
        let p = self.s_profile_into(g, graph, ev)?;
        let s = p.degree();
        if s > 7 {
            return Ok(Outcome::Fail(format!(
                "2-arc-transitive graph reports s-degree {s} > 7"
            )));
        }
        Ok(Outcome::Pass)
    }

    pub fn s_transitivity_degree(&self, g: &Group, graph: &Graph) -> Result<Certificate> {
        self.run("s-degree", |ev| self.s_degree_into(g, graph, ev))
    }

    pub fn local_structure(&self, g: &Group, graph: &Graph) -> Result<Certificate> {
        self.run("local-structure", |ev| {
            graph.check_automorphisms(g)?;
            if !g.is_transitive() {
                let orbits: Vec<Value> = g
                    .orbits()
                    .iter()
                    .map(|o| {
                        let stab = g.point_stabilizer(o[0])?;
                        Ok(json!({
                            "representative": o[0],
                            "orbit_length": o.len(),
                            "stabilizer_order": big(stab.order_ref()),
                        }))
                    })
                    .collect::<Result<_>>()?;
                ev.set("orbits", orbits);
                return Ok(Outcome::NotApplicable("G is not vertex-transitive".into()));
            }
            let v = 0;
            if graph.degree(v) < 2 {
                return Ok(Outcome::NotApplicable("valency < 2".into()));
            }
            let u = graph.neighbors(v)[0];
            ev.set("edge", json!([v, u]));
            let local = local_action(g, graph, v)?;
            let kernel_uv = arc_kernel(g, graph, v, u)?;
            let kernel_image =
                Action::restrict_to_invariant_set(&local.kernel, graph.neighbors(u))?;
            let g_uv = local.stabilizer.point_stabilizer(u)?;
            let g_uv_image = Action::restrict_to_invariant_set(&g_uv, graph.neighbors(u))?;
            let image = local.action.image();
            let locally_primitive = image.is_transitive() && is_primitive(image)?.0;
            let locally_2t = local.action.is_k_transitive(2)?;
            let normal = g_uv_image.image().is_normal(kernel_image.image())?;
            let product = kernel_uv.order() * kernel_image.image().order() * image.order();
            let identity = &product == local.stabilizer.order_ref();
            let p_group = kernel_uv.is_p_group();
            let primes = prime_divisors(kernel_uv.order_u64().expect("kernel fits in u64"));

            ev.order("stabilizer_order", local.stabilizer.order_ref());
            ev.order("local_action_order", image.order_ref());
            ev.order("kernel_order", local.kernel.order_ref());
            ev.order("arc_kernel_order", kernel_uv.order_ref());
            ev.order("kernel_image_order", kernel_image.image().order_ref());
            ev.set("locally_primitive", locally_primitive);
            ev.set("locally_2_transitive", locally_2t);
            ev.set("faithful", local.kernel.is_trivial());
            ev.set("order_identity", identity);
            ev.set("kernel_image_normal", normal);
            ev.set("arc_kernel_p_group", p_group);
            ev.set("arc_kernel_prime", primes.first().copied());

            if !identity {
                return Ok(Outcome::Fail(
                    "|G_v| != |G_uv^[1]| * |(G_v^[1])^Γ(u)| * |G_v^Γ(v)|".into(),
                ));
            }
            if !normal {
                return Ok(Outcome::Fail(
                    "(G_v^[1])^Γ(u) is not normal in (G_uv)^Γ(u)".into(),
                ));
            }
            if locally_primitive && graph.is_connected() && !p_group {
                return Ok(Outcome::Fail(
                    "locally primitive but G_uv^[1] is not a p-group".into(),
                ));
            }
            Ok(Outcome::Pass)
        })
    }

    pub(crate) fn almost_simple_into(&self, g: &Group, ev: &mut Evidence) -> Result<Outcome> {
        let cutoff = self.config.enumeration_cutoff;
        let s = g.perfect_core();
        ev.order("group_order", g.order_ref());
        ev.order("socle_order", s.order_ref());
        ev.order("socle_index", &(g.order() / s.order()));
        if s.is_trivial() {
            return Ok(Outcome::Fail("perfect core is trivial".into()));
        }
        let simple = s.is_simple(cutoff)?;
        ev.set("socle_simple", simple);
        let normal = g.is_normal(&s)?;
        ev.set("socle_normal", normal);
        let centralizer = g.centralizer(&s, cutoff)?;
        ev.order("centralizer_order", centralizer.order_ref());
        if !simple {
            return Ok(Outcome::Fail("perfect core is not simple".into()));
        }
        if !normal {
            return Ok(Outcome::Fail("perfect core is not normal".into()));
        }
        if !centralizer.is_trivial() {
            return Ok(Outcome::Fail(
                "perfect core has nontrivial centralizer".into(),
            ));
        }
        Ok(Outcome::Pass)
    }

    pub fn almost_simple_certificate(&self, g: &Group) -> Result<Certificate> {
        self.run("almost-simple", |ev| self.almost_simple_into(g, ev))
    }

    /// Connected, regular of valency at least 3, and `G` edge-primitive.
    /// Returns the outcome to report when the setting does not hold.
    pub(crate) fn edge_primitive_setting(
        &self,
        g: &Group,
        graph: &Graph,
        ev: &mut Evidence,
    ) -> Result<Option<Outcome>> {
        graph.check_automorphisms(g)?;
        if !graph.is_connected() {
            return Ok(Some(Outcome::NotApplicable("graph is disconnected".into())));
        }
        let Some(d) = graph.valency() else {
            return Ok(Some(Outcome::NotApplicable("graph is not regular".into())));
        };
        ev.set("valency", d);
        if d < 3 {
            return Ok(Some(Outcome::NotApplicable("valency < 3".into())));
        }
        match self.nested(ev, "edge_primitive", |e| {
            self.edge_primitive_into(g, graph, e)
        })? {
            Outcome::Pass => Ok(None),
            Outcome::ScaleLimit(r) => Ok(Some(Outcome::ScaleLimit(r))),
            _ => Ok(Some(Outcome::NotApplicable(
                "G is not edge-primitive on the graph".into(),
            ))),
        }
    }

    pub fn theorem_main_check(&self, g: &Group, graph: &Graph) -> Result<Certificate> {
        self.run("main-theorem", |ev| {
            if let Some(gate) = self.edge_primitive_setting(g, graph, ev)? {
                return Ok(gate);
            }
            let p = self.s_profile_into(g, graph, ev)?;
            if p.degree() < 2 {
                return Ok(Outcome::NotApplicable("G is not 2-arc-transitive".into()));
            }
            let d = graph.valency().expect("checked regular");
            if graph.complete_bipartite_valency() == Some(d) {
                ev.set("branch", "complete-bipartite");
                return Ok(Outcome::Pass);
            }
            ev.set("branch", "almost-simple");
            match self.nested(ev, "almost_simple", |e| self.almost_simple_into(g, e))? {
                Outcome::Pass => Ok(Outcome::Pass),
                Outcome::ScaleLimit(r) => Ok(Outcome::ScaleLimit(r)),
                _ => Ok(Outcome::Fail(
                    "hypotheses hold, graph is not K_{d,d}, and G is not almost simple".into(),
                )),
            }
        })
    }

    pub fn prime_valency_check(&self, g: &Group, graph: &Graph) -> Result<Certificate> {
        self.run("prime-valency", |ev| {
            if let Some(gate) = self.edge_primitive_setting(g, graph, ev)? {
                return Ok(gate);
            }
            let d = graph.valency().expect("checked regular");
            if prime_divisors(d as u64) != [d as u64] {
                return Ok(Outcome::NotApplicable("valency is not prime".into()));
            }
            if graph.complete_bipartite_valency() == Some(d) {
                return Ok(Outcome::NotApplicable("graph is K_{d,d}".into()));
            }
            let p = self.s_profile_into(g, graph, ev)?;
            if p.degree() >= 2 {
                ev.set("branch", "2-arc-transitive");
                return match self.nested(ev, "almost_simple", |e| self.almost_simple_into(g, e))? {
                    Outcome::Pass => Ok(Outcome::Pass),
                    Outcome::ScaleLimit(r) => Ok(Outcome::ScaleLimit(r)),
                    _ => Ok(Outcome::Fail(
                        "2-arc-transitive G is not almost simple".into(),
                    )),
                };
            }
            ev.set("branch", "psl2-on-complete-graph");
            let d64 = d as u64;
            let expected = BigUint::from(d64 * (d64 * d64 - 1) / 2);
            let complete = graph.is_complete();
            ev.set("complete_graph", complete);
            ev.order("expected_order", &expected);
            ev.order("group_order", g.order_ref());
            if !complete || g.order_ref() != &expected || d <= 11 {
                return Ok(Outcome::Fail(
                    "not 2-arc-transitive and not PSL(2,d) on K_{d+1} with d > 11".into(),
                ));
            }
            match self.nested(ev, "almost_simple", |e| self.almost_simple_into(g, e))? {
                Outcome::Pass => Ok(Outcome::Pass),
                Outcome::ScaleLimit(r) => Ok(Outcome::ScaleLimit(r)),
                _ => Ok(Outcome::Fail(
                    "G of order d(d^2-1)/2 is not almost simple".into(),
                )),
            }
        })
    }

    pub fn three_arc_criterion(&self, g: &Group, graph: &Graph) -> Result<Certificate> {
        self.run("three-arc", |ev| {
            graph.check_automorphisms(g)?;
            if !graph.is_connected() {
                return Ok(Outcome::NotApplicable("graph is disconnected".into()));
            }
            let Some(d) = graph.valency() else {
                return Ok(Outcome::NotApplicable("graph is not regular".into()));
            };
            ev.set("valency", d);
            if d < 3 {
                return Ok(Outcome::NotApplicable("valency < 3".into()));
            }
            let p = self.s_profile_into(g, graph, ev)?;
            if p.degree() < 2 {
                return Ok(Outcome::NotApplicable("G is not 2-arc-transitive".into()));
            }
            let (v, u) = (0, graph.neighbors(0)[0]);
            let local = local_action(g, graph, v)?;
            ev.order("stabilizer_order", local.stabilizer.order_ref());
            ev.order("kernel_order", local.kernel.order_ref());
            if !local.kernel.is_trivial() {
                return Ok(Outcome::NotApplicable("G_v is not faithful on Γ(v)".into()));
            }
            let cutoff = self.config.enumeration_cutoff;
            let core = local.stabilizer.perfect_core();
            let edge_stab = g.setwise_stabilizer(&[v, u])?;
            let core_matches = identify(&core, cutoff)?;
            let edge_matches = identify(&edge_stab, cutoff)?;
            ev.order("stabilizer_socle_order", core.order_ref());
            ev.order("edge_stabilizer_order", edge_stab.order_ref());
            ev.set("stabilizer_socle_matches", names(&core_matches));
            ev.set("edge_stabilizer_matches", names(&edge_matches));
            if core_matches.len() > 1 || edge_matches.len() > 1 {
                return Ok(Outcome::ScaleLimit(
                    "fingerprint matches more than one reference group".into(),
                ));
            }
            let left = p.degree() >= 3;
            let socle_a7 = core_matches == [Reference::A7];
            let edge_s6 = edge_matches == [Reference::S6];
            let right = d == 7 && socle_a7 && !edge_s6;
            ev.set("three_arc_transitive", left);
            ev.set("socle_is_a7", socle_a7);
            ev.set("edge_stabilizer_is_s6", edge_s6);
            ev.set("criterion_holds", right);
            if left == right {
                Ok(Outcome::Pass)
            } else {
                Ok(Outcome::Fail(format!(
                    "3-arc-transitivity is {left} but the criterion evaluates to {right}"
                )))
            }
        })
    }
}
