//! Subgroup constructions: closures, derived series, normalizers,
//! centralizers, Sylow subgroups, conjugacy classes and normal subgroups.
//!
//! Normalizer, centralizer, Sylow and class computations enumerate the
//! group and refuse to run above the caller's cutoff.

use num_traits::One;

use super::{p_part, Group};
use crate::error::{Error, Result};
use crate::perm::Permutation;

#[derive(Clone, Debug)]
pub struct ConjugacyClass {
    pub representative: Permutation,
    pub size: usize,
}

impl Group {
    fn ensure_subgroup(&self, h: &Group) -> Result<()> {
        if h.degree() != self.degree() {
            return Err(Error::DegreeMismatch {
                expected: self.degree(),
                found: h.degree(),
            });
        }
        if !self.contains_group(h) {
            return Err(Error::NotSubgroup);
        }
        Ok(())
    }

    /// Smallest normal subgroup of `self` containing `seeds`.
    pub fn normal_closure(&self, seeds: &[Permutation]) -> Result<Group> {
        for s in seeds {
            if !self.contains(s)? {
                return Err(Error::NotInGroup);
            }
        }
        let mut gens: Vec<Permutation> = Vec::new();
        for s in seeds {
            if !s.is_identity() && !gens.contains(s) {
                gens.push(s.clone());
            }
        }
        if gens.is_empty() {
            return Ok(Group::trivial(self.degree()));
        }
        let mut n = self.subgroup(gens.clone(), None);
        let mut i = 0;
        while i < gens.len() && n.order_ref() != self.order_ref() {
            for g in self.generators() {
                let c = gens[i].conjugate_by(g);
                if !n.sift_is_member(&c) {
                    gens.push(c);
                    n = self.subgroup(gens.clone(), None);
                }
            }
            i += 1;
        }
        Ok(n)
    }

    pub fn derived_subgroup(&self) -> Group {
        let gens = self.generators();
        let mut comms = Vec::new();
        for (i, a) in gens.iter().enumerate() {
            for b in &gens[i + 1..] {
                let c = a.commutator(b);
                if !c.is_identity() && !comms.contains(&c) {
                    comms.push(c);
                }
            }
        }
        self.normal_closure(&comms)
            .expect("commutators of generators lie in the group")
    }

    /// `[G, G', G'', ...]` up to and including the first repeat.
    pub fn derived_series(&self) -> Vec<Group> {
        let mut series = vec![self.clone()];
        loop {
            let last = series.last().unwrap();
            let next = last.derived_subgroup();
            let stable = next.order_ref() == last.order_ref();
            series.push(next);
            if stable {
                return series;
            }
        }
    }

    /// Limit of the derived series.
    pub fn perfect_core(&self) -> Group {
        self.derived_series().pop().unwrap()
    }

    pub fn is_soluble(&self) -> bool {
        self.perfect_core().is_trivial()
    }

    pub fn is_perfect(&self) -> bool {
        self.derived_subgroup().order_ref() == self.order_ref()
    }

    /// Checks `g^-1 h g` in `H` for generators only, which is exact.
    pub fn is_normal(&self, h: &Group) -> Result<bool> {
        self.ensure_subgroup(h)?;
        Ok(self.generators().iter().all(|g| {
            h.generators()
                .iter()
                .all(|x| h.sift_is_member(&x.conjugate_by(g)))
        }))
    }

    /// Collects the elements passing `keep` into a subgroup, starting from `start`.
    fn collect_subgroup<F>(&self, start: Group, cutoff: u64, mut keep: F) -> Result<Group>
    where
        F: FnMut(&Permutation) -> bool,
    {
        let mut k = start;
        let mut gens: Vec<Permutation> = k
            .generators()
            .iter()
            .filter(|g| !g.is_identity())
            .cloned()
            .collect();
        self.try_for_each_element(cutoff, |g| {
            if !k.sift_is_member(g) && keep(g) {
                gens.push(g.clone());
                k = self.subgroup(gens.clone(), None);
            }
            true
        })?;
        Ok(k)
    }

    /// `N_G(H)` by enumeration of `G`.
    pub fn normalizer(&self, h: &Group, cutoff: u64) -> Result<Group> {
        self.ensure_subgroup(h)?;
        self.check_cutoff("normalizer", cutoff)?;
        let hg = h.small_generating_set();
        self.collect_subgroup(h.clone(), cutoff, |g| {
            hg.iter().all(|x| h.sift_is_member(&x.conjugate_by(g)))
        })
    }

    /// `C_G(H)` by enumeration of `G`.
    pub fn centralizer(&self, h: &Group, cutoff: u64) -> Result<Group> {
        self.ensure_subgroup(h)?;
        self.check_cutoff("centralizer", cutoff)?;
        let hg = h.small_generating_set();
        self.collect_subgroup(Group::trivial(self.degree()), cutoff, |g| {
            hg.iter().all(|x| x.then(g) == g.then(x))
        })
    }

    pub fn center(&self, cutoff: u64) -> Result<Group> {
        self.centralizer(self, cutoff)
    }

    /// A Sylow `p`-subgroup, grown one factor of `p` at a time inside the
    /// normalizer of the current `p`-subgroup.
    pub fn sylow_subgroup(&self, p: u64, cutoff: u64) -> Result<Group> {
        if !super::prime_divisors(p).eq(&[p]) {
            return Err(Error::NotPrime(p));
        }
        self.check_cutoff("Sylow subgroup", cutoff)?;
        let target = p_part(self.order_ref(), p);
        let mut current = Group::trivial(self.degree());
        let mut gens: Vec<Permutation> = Vec::new();
        while current.order_ref() < &target {
            let mut found = None;
            self.try_for_each_element(cutoff, |x| {
                if current.sift_is_member(x) || !current.sift_is_member(&x.pow(p)) {
                    return true;
                }
                let normalizes = current
                    .generators()
                    .iter()
                    .all(|c| current.sift_is_member(&c.conjugate_by(x)));
                if normalizes {
                    found = Some(x.clone());
                    false
                } else {
                    true
                }
            })?;
            let x =
                found.expect("a p-subgroup of non-maximal order has a p-element in its normalizer");
            gens.push(x);
            current = self.subgroup(gens.clone(), None);
        }
        Ok(current)
    }

    /// `O_p(G)`: the intersection of all Sylow `p`-subgroups.
    pub fn p_core(&self, p: u64, cutoff: u64) -> Result<Group> {
        let sylow = self.sylow_subgroup(p, cutoff)?;
        let mut survivors = sylow.elements(cutoff)?;
        self.try_for_each_element(cutoff, |g| {
            survivors.retain(|x| sylow.sift_is_member(&x.conjugate_by(g)));
            survivors.len() > 1
        })?;
        Ok(self.subgroup_from_elements(&survivors))
    }

    pub(crate) fn subgroup_from_elements(&self, elems: &[Permutation]) -> Group {
        let mut gens: Vec<Permutation> = Vec::new();
        let mut k = Group::trivial(self.degree());
        for e in elems {
            if !k.sift_is_member(e) {
                gens.push(e.clone());
                k = self.subgroup(gens.clone(), None);
            }
        }
        k
    }

    /// `H ∩ K` by enumerating the smaller of the two.
    pub fn intersection(&self, other: &Group, cutoff: u64) -> Result<Group> {
        let (small, big) = if self.order_ref() <= other.order_ref() {
            (self, other)
        } else {
            (other, self)
        };
        small.collect_subgroup(Group::trivial(self.degree()), cutoff, |g| {
            big.sift_is_member(g)
        })
    }

    /// Conjugacy classes in enumeration order of their first element.
    pub fn conjugacy_classes(&self, cutoff: u64) -> Result<Vec<ConjugacyClass>> {
        let order = self.check_cutoff("conjugacy classes", cutoff)? as usize;
        let gens = self.small_generating_set();
        let mut seen = vec![false; order];
        let mut out = Vec::new();
        for idx in 0..order {
            if seen[idx] {
                continue;
            }
            let rep = self.element_at(idx);
            seen[idx] = true;
            let mut queue = vec![rep.clone()];
            let mut size = 1;
            while let Some(x) = queue.pop() {
                for g in &gens {
                    let y = x.conjugate_by(g);
                    let j = self
                        .element_index(&y)
                        .expect("conjugate stays in the group");
                    if !seen[j] {
                        seen[j] = true;
                        size += 1;
                        queue.push(y);
                    }
                }
            }
            out.push(ConjugacyClass {
                representative: rep,
                size,
            });
        }
        Ok(out)
    }

    /// Simple iff every nontrivial class has normal closure `G`.
    pub fn is_simple(&self, cutoff: u64) -> Result<bool> {
        if self.is_trivial() {
            return Ok(false);
        }
        let classes = self.conjugacy_classes(cutoff)?;
        for c in classes.iter().filter(|c| !c.representative.is_identity()) {
            let n = self.normal_closure(std::slice::from_ref(&c.representative))?;
            if n.order_ref() != self.order_ref() {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Distinct normal closures of class representatives, by ascending order.
    fn class_closures(&self, cutoff: u64) -> Result<Vec<Group>> {
        self.check_cutoff("normal subgroup sweep", cutoff)?;
        let mut found: Vec<Group> = Vec::new();
        for c in self.conjugacy_classes(cutoff)? {
            if c.representative.is_identity() {
                continue;
            }
            let n = self.normal_closure(std::slice::from_ref(&c.representative))?;
            if !found.contains(&n) {
                found.push(n);
            }
        }
        found.sort_by(|a, b| a.order_ref().cmp(b.order_ref()));
        Ok(found)
    }

    pub fn minimal_normal_subgroups(&self, cutoff: u64) -> Result<Vec<Group>> {
        let closures = self.class_closures(cutoff)?;
        let minimal = closures
            .iter()
            .filter(|n| {
                !closures
                    .iter()
                    .any(|m| m.order_ref() < n.order_ref() && n.contains_group(m))
            })
            .cloned()
            .collect();
        Ok(minimal)
    }

    /// Every nontrivial normal subgroup: joins of normal closures of classes.
    pub fn normal_subgroups(&self, cutoff: u64) -> Result<Vec<Group>> {
        let mut all = self.class_closures(cutoff)?;
        let mut i = 0;
        while i < all.len() {
            for j in 0..i {
                if all[i].contains_group(&all[j]) || all[j].contains_group(&all[i]) {
                    continue;
                }
                let mut gens = all[i].generators().to_vec();
                gens.extend(all[j].generators().iter().cloned());
                let join = self.subgroup(gens, None);
                if !all.contains(&join) {
                    all.push(join);
                }
            }
            i += 1;
        }
        all.sort_by(|a, b| a.order_ref().cmp(b.order_ref()));
        Ok(all)
    }

    /// An element generating the whole group, if it is cyclic.
    pub fn cyclic_generator(&self, cutoff: u64) -> Result<Option<Permutation>> {
        if self.is_trivial() {
            return Ok(Some(self.identity()));
        }
        let order = self.check_cutoff("cyclicity test", cutoff)?;
        let mut found = None;
        self.try_for_each_element(cutoff, |g| {
            if g.order() == order {
                found = Some(g.clone());
                false
            } else {
                true
            }
        })?;
        Ok(found)
    }

    pub fn is_p_group(&self) -> bool {
        self.order_ref().is_one()
            || num_traits::ToPrimitive::to_u64(self.order_ref())
                .and_then(super::prime_power_base)
                .is_some()
    }
}
