//! Checks involving a normal subgroup `N` of `G`.

use num_bigint::BigUint;
use serde_json::{json, Value};

use super::{arc_transitive, big, Certificate, Checker, Evidence, Outcome};
use crate::actions::{is_frobenius, is_k_transitive, is_primitive, is_regular};
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::group::{p_part, prime_divisors, Group};

fn require_normal(g: &Group, n: &Group) -> Result<()> {
    if g.degree() != n.degree() {
        return Err(Error::DegreeMismatch {
            expected: g.degree(),
            found: n.degree(),
        });
    }
    if n.is_trivial() {
        return Err(Error::TrivialSubgroup);
    }
    if !g.is_normal(n)? {
        return Err(Error::NotNormal);
    }
    Ok(())
}

/// `N_v`, `N_uv` and `N_{u,v}` for the first edge `{u, v}`.
struct EdgeStabilizers {
    vertex: Group,
    arc: Group,
    edge: Group,
}

fn edge_stabilizers(n: &Group, graph: &Graph, ev: &mut Evidence) -> Result<EdgeStabilizers> {
    let (u, v) = graph.edges()[0];
    let s = EdgeStabilizers {
        vertex: n.point_stabilizer(u)?,
        arc: n.pointwise_stabilizer(&[u, v])?,
        edge: n.setwise_stabilizer(&[u, v])?,
    };
    ev.set("edge", json!([u, v]));
    ev.order("n_order", n.order_ref());
    ev.order("n_vertex_stabilizer_order", s.vertex.order_ref());
    ev.order("n_arc_stabilizer_order", s.arc.order_ref());
    ev.order("n_edge_stabilizer_order", s.edge.order_ref());
    Ok(s)
}

impl Checker {
    fn normal_pair_setting(
        &self,
        g: &Group,
        n: &Group,
        graph: &Graph,
        ev: &mut Evidence,
    ) -> Result<Option<Outcome>> {
        require_normal(g, n)?;
        self.edge_primitive_setting(g, graph, ev)
    }

    pub fn lemma_counting_check(&self, g: &Group, n: &Group, graph: &Graph) -> Result<Certificate> {
        self.run("counting", |ev| {
            if let Some(gate) = self.normal_pair_setting(g, n, graph, ev)? {
                return Ok(gate);
            }
            let d = BigUint::from(graph.valency().expect("checked regular"));
            let s = edge_stabilizers(n, graph, ev)?;
            let transitive = n.is_transitive();
            let orbit_count = n.orbits().len();
            ev.set("n_transitive", transitive);
            ev.set("n_orbit_count", orbit_count);
            let (nv, nuv, ne) = (s.vertex.order(), s.arc.order(), s.edge.order());
            let identity = if transitive {
                BigUint::from(2u32) * &nv == &d * &ne
            } else {
                orbit_count == 2 && nv == &d * &ne && nv == &d * &nuv
            };
            let nontrivial = !s.vertex.is_trivial();
            let distinct = s.vertex != s.edge;
            ev.set("identity_holds", identity);
            ev.set("n_vertex_stabilizer_nontrivial", nontrivial);
            ev.set("n_vertex_differs_from_edge_stabilizer", distinct);
            if !identity {
                let expected = if transitive {
                    "2|N_v| = d|N_{u,v}|"
                } else {
                    "|N_v| = d|N_{u,v}| = d|N_uv| with two orbits"
                };
                return Ok(Outcome::Fail(format!("{expected} does not hold")));
            }
            if !nontrivial || !distinct {
                return Ok(Outcome::Fail("N_v is trivial or equals N_{u,v}".into()));
            }
            Ok(Outcome::Pass)
        })
    }

    pub fn corollary_selfnorm_check(
        &self,
        g: &Group,
        n: &Group,
        graph: &Graph,
    ) -> Result<Certificate> {
        self.run("self-normalizing", |ev| {
            if let Some(gate) = self.normal_pair_setting(g, n, graph, ev)? {
                return Ok(gate);
            }
            let d = graph.valency().expect("checked regular");
            if graph.complete_bipartite_valency() == Some(d) {
                ev.set("branch", "complete-bipartite");
                return Ok(Outcome::Pass);
            }
            ev.set("branch", "general");
            let s = edge_stabilizers(n, graph, ev)?;
            let normalizer = n.normalizer(&s.edge, self.config.enumeration_cutoff)?;
            ev.order("normalizer_order", normalizer.order_ref());
            let arc_nontrivial = !s.arc.is_trivial();
            let self_normalized = normalizer.order_ref() == s.edge.order_ref();
            ev.set("n_arc_stabilizer_nontrivial", arc_nontrivial);
            ev.set("self_normalized", self_normalized);
            if !arc_nontrivial {
                return Ok(Outcome::Fail("N_uv is trivial".into()));
            }
            if !self_normalized {
                return Ok(Outcome::Fail("N_{u,v} is not self-normalized in N".into()));
            }
            Ok(Outcome::Pass)
        })
    }

    pub fn sylow_arc_check(&self, g: &Group, n: &Group, graph: &Graph) -> Result<Certificate> {
        self.run("sylow-arc", |ev| {
            if let Some(gate) = self.normal_pair_setting(g, n, graph, ev)? {
                return Ok(gate);
            }
            let d = graph.valency().expect("checked regular");
            if graph.complete_bipartite_valency() == Some(d) {
                return Ok(Outcome::NotApplicable("graph is K_{d,d}".into()));
            }
            let cutoff = self.config.enumeration_cutoff;
            let s = edge_stabilizers(n, graph, ev)?;
            let edge_order = s.edge.order_u64().expect("edge stabilizer fits in u64");
            let mut all_ok = true;
            let mut rows: Vec<Value> = Vec::new();
            for p in prime_divisors(edge_order) {
                let sylow = s.edge.sylow_subgroup(p, cutoff)?;
                let normal = s.edge.is_normal(&sylow)?;
                let full = p_part(n.order_ref(), p);
                let ok = !normal || sylow.order_ref() == &full;
                all_ok &= ok;
                rows.push(json!({
                    "prime": p,
                    "sylow_order": big(sylow.order_ref()),
                    "normal": normal,
                    "n_p_part": big(&full),
                    "holds": ok,
                }));
            }
            ev.set("sylow", rows);
            let nonabelian = !s.edge.is_abelian();
            ev.set("n_edge_stabilizer_nonabelian", nonabelian);
            let arc_abelian = s.arc.is_abelian();
            ev.set("n_arc_stabilizer_abelian", arc_abelian);
            let mut arc_ok = true;
            if arc_abelian {
                let t = arc_transitive(n, graph)?;
                ev.set("n_arc_transitive", t);
                arc_ok = t;
            }
            if !all_ok {
                return Ok(Outcome::Fail(
                    "a normal Sylow subgroup of N_{u,v} is not Sylow in N".into(),
                ));
            }
            if !nonabelian {
                return Ok(Outcome::Fail("N_{u,v} is abelian".into()));
            }
            if !arc_ok {
                return Ok(Outcome::Fail(
                    "N_uv is abelian but N is not arc-transitive".into(),
                ));
            }
            Ok(Outcome::Pass)
        })
    }

    /// `G` is a 2-transitive affine group on its points and `N` a nontrivial
    /// normal subgroup acting imprimitively.
    pub fn affine_normal_check(&self, g: &Group, n: &Group) -> Result<Certificate> {
        self.run("affine-normal", |ev| {
            require_normal(g, n)?;
            let cutoff = self.config.enumeration_cutoff;
            ev.set("degree", g.degree());
            ev.order("group_order", g.order_ref());
            ev.order("n_order", n.order_ref());
            if !is_k_transitive(g, 2)? {
                return Ok(Outcome::NotApplicable("G is not 2-transitive".into()));
            }
            let translations = g
                .minimal_normal_subgroups(cutoff)?
                .into_iter()
                .find(|m| m.is_abelian() && is_regular(m));
            let Some(translations) = translations else {
                return Ok(Outcome::NotApplicable(
                    "G has no abelian regular normal subgroup".into(),
                ));
            };
            ev.order("translation_order", translations.order_ref());
            if is_regular(n) {
                return Ok(Outcome::NotApplicable("N is regular".into()));
            }
            let primitive = is_primitive(n)?.0;
            ev.set("n_primitive", primitive);
            if primitive {
                return Ok(Outcome::NotApplicable("N is primitive".into()));
            }
            let soluble = n.is_soluble();
            let frobenius = is_frobenius(n)?;
            let n0 = n.point_stabilizer(0)?;
            let generator = n0.cyclic_generator(cutoff)?;
            ev.order("n_point_stabilizer_order", n0.order_ref());
            ev.set("soluble", soluble);
            ev.set("frobenius", frobenius);
            ev.set("n_point_stabilizer_cyclic", generator.is_some());
            if let Some(x) = &generator {
                ev.set("n_point_stabilizer_generator", x.to_string());
            }
            // Reported without judgement.
            let g0 = g.point_stabilizer(0)?;
            let centre = g0.center(cutoff)?;
            ev.set("n_point_stabilizer_central", centre.contains_group(&n0));
            ev.set(
                "degree_is_prime",
                prime_divisors(g.degree() as u64) == [g.degree() as u64],
            );
            if !soluble {
                return Ok(Outcome::Fail("N is not soluble".into()));
            }
            if !frobenius {
                return Ok(Outcome::Fail("N is not a Frobenius group".into()));
            }
            if generator.is_none() {
                return Ok(Outcome::Fail("N_0 is not cyclic".into()));
            }
            Ok(Outcome::Pass)
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::certify::Verdict;
    use crate::constructions::{
        agammal1, agl1, alternating, complete_bipartite, complete_graph, heawood, pgl2, psl2,
        symmetric,
    };
    use crate::graph::automorphism_group;

    #[test]
    fn counting_on_k5() {
        let c = Checker::default();
        let (g, n, k5) = (
            symmetric(5).unwrap(),
            alternating(5).unwrap(),
            complete_graph(5).unwrap(),
        );
        let cert = c.lemma_counting_check(&g, &n, &k5).unwrap();
        assert_eq!(cert.verdict, Verdict::Pass);
        assert_eq!(cert.get_u64("n_vertex_stabilizer_order"), Some(12));
        assert_eq!(cert.get_u64("n_edge_stabilizer_order"), Some(6));
        let cert = c.corollary_selfnorm_check(&g, &n, &k5).unwrap();
        assert_eq!(cert.verdict, Verdict::Pass);
        assert_eq!(cert.get_u64("normalizer_order"), Some(6));
        let cert = c.sylow_arc_check(&g, &n, &k5).unwrap();
        assert_eq!(cert.verdict, Verdict::Pass);
    }

    #[test]
    fn counting_intransitive_branch_on_k33() {
        let k33 = complete_bipartite(3).unwrap();
        let g = automorphism_group(&k33).unwrap();
        let n = g.normal_subgroups(1_000_000).unwrap();
        let index2 = n
            .iter()
            .find(|m| m.order_u64() == Some(36))
            .expect("bipartition-preserving subgroup");
        let cert = Checker::default()
            .lemma_counting_check(&g, index2, &k33)
            .unwrap();
        assert_eq!(cert.verdict, Verdict::Pass);
        assert_eq!(cert.get_bool("n_transitive"), Some(false));
        assert_eq!(cert.get_u64("n_vertex_stabilizer_order"), Some(12));
    }

    #[test]
    fn errors_on_bad_normal_subgroups() {
        let c = Checker::default();
        let g = symmetric(5).unwrap();
        let k5 = complete_graph(5).unwrap();
        let h = g.point_stabilizer(0).unwrap();
        assert!(matches!(
            c.lemma_counting_check(&g, &h, &k5),
            Err(Error::NotNormal)
        ));
        assert!(matches!(
            c.lemma_counting_check(&g, &Group::trivial(5), &k5),
            Err(Error::TrivialSubgroup)
        ));
    }

    #[test]
    fn sylow_on_k14_verifies_arc_transitivity() {
        let g = psl2(13).unwrap();
        let k14 = complete_graph(14).unwrap();
        let cert = Checker::default().sylow_arc_check(&g, &g, &k14).unwrap();
        assert_eq!(cert.verdict, Verdict::Pass);
        assert_eq!(cert.get_u64("n_edge_stabilizer_order"), Some(12));
        assert_eq!(cert.get_bool("n_arc_transitive"), Some(true));
    }

    #[test]
    fn selfnorm_on_heawood() {
        let h = heawood();
        let g = automorphism_group(&h).unwrap();
        assert_eq!(g.order(), pgl2(7).unwrap().order());
        let n = g.perfect_core();
        assert_eq!(n.order_u64(), Some(168));
        let cert = Checker::default()
            .corollary_selfnorm_check(&g, &n, &h)
            .unwrap();
        assert_eq!(cert.verdict, Verdict::Pass);
    }

    #[test]
    fn affine_normal_subgroups() {
        let c = Checker::default();
        let g = agammal1(8).unwrap();
        for n in g.normal_subgroups(1_000_000).unwrap() {
            assert_eq!(
                c.affine_normal_check(&g, &n).unwrap().verdict,
                Verdict::NotApplicable
            );
        }
        let g = agl1(9).unwrap();
        let verdicts: Vec<(u64, Verdict)> = g
            .normal_subgroups(1_000_000)
            .unwrap()
            .iter()
            .map(|n| {
                (
                    n.order_u64().unwrap(),
                    c.affine_normal_check(&g, n).unwrap().verdict,
                )
            })
            .collect();
        assert!(verdicts.contains(&(18, Verdict::Pass)));
        assert!(verdicts.contains(&(9, Verdict::NotApplicable)));
        assert!(verdicts.iter().all(|(_, v)| v.is_success()));
    }
}
