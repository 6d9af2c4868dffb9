//! Finitely generated permutation groups backed by a stabilizer chain.

mod chain;
mod fingerprint;
mod subgroups;

pub use fingerprint::GroupFingerprint;

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive};

use crate::error::{Error, Result};
use crate::perm::Permutation;
use chain::{chain_order, schreier_sims, strip, Level};

/// Default bound on the number of elements any enumeration may visit.
pub const DEFAULT_ENUMERATION_CUTOFF: u64 = 1_000_000;
/// Default bound on the group order for normal-subgroup sweeps.
pub const DEFAULT_NORMAL_SWEEP_CUTOFF: u64 = 100_000;

#[derive(Clone, Debug)]
pub struct Group {
    degree: usize,
    generators: Vec<Permutation>,
    levels: Vec<Level>,
    order: BigUint,
}

impl PartialEq for Group {
    /// Equality as subgroups of `Sym(degree)`.
    fn eq(&self, other: &Self) -> bool {
        self.degree == other.degree
            && self.order == other.order
            && other.generators.iter().all(|g| self.sift_is_member(g))
    }
}

impl Eq for Group {}

impl Group {
    pub fn build(gens: &[Permutation]) -> Result<Group> {
        Group::build_with_base(gens, &[])
    }

    /// Builds the group with a base starting at `prefix`.
    pub fn build_with_base(gens: &[Permutation], prefix: &[usize]) -> Result<Group> {
        let first = gens.first().ok_or(Error::EmptyGenerators)?;
        let degree = first.degree();
        for g in gens {
            if g.degree() != degree {
                return Err(Error::DegreeMismatch {
                    expected: degree,
                    found: g.degree(),
                });
            }
        }
        for &p in prefix {
            check_point(p, degree)?;
        }
        Ok(Group::from_levels(
            degree,
            gens.to_vec(),
            schreier_sims(degree, gens, prefix, None),
        ))
    }

    pub fn trivial(degree: usize) -> Group {
        Group::from_levels(degree, vec![Permutation::identity(degree)], Vec::new())
    }

    fn from_levels(degree: usize, generators: Vec<Permutation>, levels: Vec<Level>) -> Group {
        let order = chain_order(&levels);
        Group {
            degree,
            generators,
            levels,
            order,
        }
    }

    /// Rebuilds the chain so that the base starts with `prefix`; the order is
    /// known, which lets Schreier–Sims stop early.
    pub(crate) fn rebased(&self, prefix: &[usize]) -> Group {
        if self.base().starts_with(prefix) {
            return self.clone();
        }
        let gens = self.strong_generators();
        let gens = if gens.is_empty() {
            vec![Permutation::identity(self.degree)]
        } else {
            gens
        };
        let levels = schreier_sims(self.degree, &gens, prefix, Some(&self.order));
        Group::from_levels(self.degree, self.generators.clone(), levels)
    }

    /// The subgroup described by the chain below level `from`.
    fn tail(&self, from: usize) -> Group {
        let levels: Vec<Level> = self.levels[from.min(self.levels.len())..].to_vec();
        let generators = match levels.first() {
            Some(l) if !l.gens.is_empty() => l.gens.clone(),
            _ => vec![Permutation::identity(self.degree)],
        };
        Group::from_levels(self.degree, generators, levels)
    }

    /// Builds the subgroup generated by `gens`, which must lie in `self`.
    /// `known_order` short-circuits the chain construction when available.
    pub(crate) fn subgroup(&self, gens: Vec<Permutation>, known_order: Option<&BigUint>) -> Group {
        let gens = if gens.is_empty() {
            vec![Permutation::identity(self.degree)]
        } else {
            gens
        };
        let levels = schreier_sims(self.degree, &gens, &[], known_order);
        Group::from_levels(self.degree, gens, levels)
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn generators(&self) -> &[Permutation] {
        &self.generators
    }

    pub fn base(&self) -> Vec<usize> {
        self.levels.iter().map(|l| l.base_point).collect()
    }

    /// All strong generators in level order, without repetition.
    pub fn strong_generators(&self) -> Vec<Permutation> {
        let mut out: Vec<Permutation> = Vec::new();
        for l in &self.levels {
            for g in &l.gens {
                if !out.contains(g) {
                    out.push(g.clone());
                }
            }
        }
        out
    }

    /// Strong generators of level `i` (they fix `base[..i]` pointwise).
    pub fn level_generators(&self, i: usize) -> &[Permutation] {
        &self.levels[i].gens
    }

    /// `(orbit point, coset representative)` pairs of level `i`.
    pub fn transversal(&self, i: usize) -> Vec<(usize, &Permutation)> {
        let l = &self.levels[i];
        l.orbit.iter().copied().zip(l.transversal.iter()).collect()
    }

    pub fn transversal_sizes(&self) -> Vec<usize> {
        self.levels.iter().map(|l| l.orbit_len()).collect()
    }

    pub fn chain_len(&self) -> usize {
        self.levels.len()
    }

    pub fn order(&self) -> BigUint {
        self.order.clone()
    }

    pub fn order_ref(&self) -> &BigUint {
        &self.order
    }

    pub fn order_u64(&self) -> Option<u64> {
        self.order.to_u64()
    }

    pub fn is_trivial(&self) -> bool {
        self.order.is_one()
    }

    pub fn identity(&self) -> Permutation {
        Permutation::identity(self.degree)
    }

    pub fn contains(&self, p: &Permutation) -> Result<bool> {
        if p.degree() != self.degree {
            return Err(Error::DegreeMismatch {
                expected: self.degree,
                found: p.degree(),
            });
        }
        Ok(self.sift_is_member(p))
    }

    pub(crate) fn sift_is_member(&self, p: &Permutation) -> bool {
        let (residue, j) = strip(&self.levels, p.clone(), 0);
        j == self.levels.len() && residue.is_identity()
    }

    /// True when every generator of `h` lies in `self`.
    pub fn contains_group(&self, h: &Group) -> bool {
        h.degree == self.degree && h.generators.iter().all(|g| self.sift_is_member(g))
    }

    pub fn is_abelian(&self) -> bool {
        let gens = &self.generators;
        gens.iter()
            .enumerate()
            .all(|(i, a)| gens[i + 1..].iter().all(|b| a.then(b) == b.then(a)))
    }

    /// The orbit of `point`, sorted.
    pub fn orbit(&self, point: usize) -> Result<Vec<usize>> {
        check_point(point, self.degree)?;
        Ok(orbit_of(&self.generators, self.degree, point))
    }

    /// All orbits, each sorted, ordered by smallest element.
    pub fn orbits(&self) -> Vec<Vec<usize>> {
        orbits_of(&self.generators, self.degree)
    }

    pub fn is_transitive(&self) -> bool {
        orbit_of(&self.generators, self.degree, 0).len() == self.degree
    }

    pub fn point_stabilizer(&self, point: usize) -> Result<Group> {
        self.pointwise_stabilizer(&[point])
    }

    pub fn pointwise_stabilizer(&self, points: &[usize]) -> Result<Group> {
        for &p in points {
            check_point(p, self.degree)?;
        }
        let mut prefix: Vec<usize> = Vec::with_capacity(points.len());
        for &p in points {
            if !prefix.contains(&p) {
                prefix.push(p);
            }
        }
        Ok(self.rebased(&prefix).tail(prefix.len()))
    }

    /// Exact setwise stabilizer of a small set, by backtracking over the
    /// images of the set's points through the chain.
    pub fn setwise_stabilizer(&self, points: &[usize]) -> Result<Group> {
        if points.is_empty() {
            return Err(Error::EmptyPointSet);
        }
        for &p in points {
            check_point(p, self.degree)?;
        }
        let mut set = points.to_vec();
        set.sort_unstable();
        set.dedup();
        let chain = self.rebased(&set);
        let fixer = chain.tail(set.len());
        let mut in_set = vec![false; self.degree];
        for &p in &set {
            in_set[p] = true;
        }
        // Coset representatives u_{k-1} ... u_0 of the pointwise stabilizer,
        // one for each way of permuting the set.
        let mut reps = Vec::new();
        let mut used = vec![false; self.degree];
        set_images(
            &chain.levels[..set.len()],
            0,
            &Permutation::identity(self.degree),
            &in_set,
            &mut used,
            &mut reps,
        );
        let known = fixer.order() * BigUint::from(reps.len());
        let mut gens = fixer.strong_generators();
        gens.extend(reps.into_iter().filter(|r| !r.is_identity()));
        Ok(self.subgroup(gens, Some(&known)))
    }

    /// Visits every element; `f` returns `false` to stop early.
    /// Fails if the order exceeds `cutoff`.
    pub fn try_for_each_element<F>(&self, cutoff: u64, mut f: F) -> Result<()>
    where
        F: FnMut(&Permutation) -> bool,
    {
        self.check_cutoff("element enumeration", cutoff)?;
        let k = self.levels.len();
        let id = Permutation::identity(self.degree);
        if k == 0 {
            f(&id);
            return Ok(());
        }
        enumerate_rec(&self.levels, k - 1, &id, &mut f);
        Ok(())
    }

    pub fn elements(&self, cutoff: u64) -> Result<Vec<Permutation>> {
        let mut out = Vec::new();
        self.try_for_each_element(cutoff, |g| {
            out.push(g.clone());
            true
        })?;
        Ok(out)
    }

    pub(crate) fn check_cutoff(&self, what: &'static str, cutoff: u64) -> Result<u64> {
        match self.order_u64() {
            Some(o) if o <= cutoff => Ok(o),
            _ => Err(Error::scale(what, format!("|G| = {}", self.order), cutoff)),
        }
    }

    /// Mixed-radix index of a member in `0..order`; `None` for non-members.
    /// Only the images of base points are tracked.
    pub(crate) fn element_index(&self, g: &Permutation) -> Option<usize> {
        let mut imgs: Vec<usize> = self.levels.iter().map(|l| g.apply(l.base_point)).collect();
        let mut index = 0usize;
        let mut stride = 1usize;
        for (l, level) in self.levels.iter().enumerate() {
            let c = level.pos[imgs[l]];
            if c == chain::NOT_IN_ORBIT {
                return None;
            }
            index += c * stride;
            stride *= level.orbit_len();
            if c != 0 {
                let inv = &level.inv_transversal[c];
                for x in imgs[l + 1..].iter_mut() {
                    *x = inv.apply(*x);
                }
            }
        }
        Some(index)
    }

    pub(crate) fn element_at(&self, mut index: usize) -> Permutation {
        let mut digits = Vec::with_capacity(self.levels.len());
        for level in &self.levels {
            digits.push(index % level.orbit_len());
            index /= level.orbit_len();
        }
        let mut g = Permutation::identity(self.degree);
        for (level, &c) in self.levels.iter().zip(&digits).rev() {
            if c != 0 {
                g = g.then(&level.transversal[c]);
            }
        }
        g
    }

    /// The same group with base `0, 1, .., n-1`; the chain needed by
    /// [`Group::min_in_right_coset`].
    pub(crate) fn lex_chain(&self) -> Group {
        let prefix: Vec<usize> = (0..self.degree).collect();
        self.rebased(&prefix)
    }

    /// Lexicographically least element (by image list) of the right coset
    /// `self * x`. `self` must come from [`Group::lex_chain`].
    pub(crate) fn min_in_right_coset(&self, x: &Permutation) -> Permutation {
        let mut g = x.clone();
        for (i, level) in self.levels.iter().enumerate() {
            debug_assert_eq!(level.base_point, i);
            if level.orbit_len() == 1 {
                continue;
            }
            let (best, _) = level
                .orbit
                .iter()
                .enumerate()
                .min_by_key(|(_, &beta)| g.apply(beta))
                .unwrap();
            if best != 0 {
                g = level.transversal[best].then(&g);
            }
        }
        g
    }

    /// A generating subset chosen greedily from the strong generators.
    pub fn small_generating_set(&self) -> Vec<Permutation> {
        let mut chosen: Vec<Permutation> = Vec::new();
        let mut current = Group::trivial(self.degree);
        let mut candidates = self.generators.clone();
        candidates.extend(self.strong_generators());
        for g in candidates {
            if current.order == self.order {
                break;
            }
            if !current.sift_is_member(&g) {
                chosen.push(g);
                current = self.subgroup(chosen.clone(), None);
            }
        }
        if chosen.is_empty() {
            chosen.push(self.identity());
        }
        chosen
    }
}

fn enumerate_rec<F>(levels: &[Level], l: usize, partial: &Permutation, f: &mut F) -> bool
where
    F: FnMut(&Permutation) -> bool,
{
    for t in &levels[l].transversal {
        let next = partial.then(t);
        let keep_going = if l == 0 {
            f(&next)
        } else {
            enumerate_rec(levels, l - 1, &next, f)
        };
        if !keep_going {
            return false;
        }
    }
    true
}

/// Depth-first choice of transversal elements so that the partial product
/// `u_i ... u_0` keeps mapping `base[..=i]` into the set.
fn set_images(
    levels: &[Level],
    depth: usize,
    suffix: &Permutation,
    in_set: &[bool],
    used: &mut [bool],
    out: &mut Vec<Permutation>,
) {
    if depth == levels.len() {
        out.push(suffix.clone());
        return;
    }
    let level = &levels[depth];
    for t in &level.transversal {
        let img = suffix.apply(t.apply(level.base_point));
        if in_set[img] && !used[img] {
            used[img] = true;
            let next = t.then(suffix);
            set_images(levels, depth + 1, &next, in_set, used, out);
            used[img] = false;
        }
    }
}

pub(crate) fn check_point(p: usize, degree: usize) -> Result<()> {
    if p >= degree {
        Err(Error::PointOutOfRange { point: p, degree })
    } else {
        Ok(())
    }
}

pub(crate) fn orbit_of(gens: &[Permutation], degree: usize, point: usize) -> Vec<usize> {
    let mut seen = vec![false; degree];
    let mut orbit = vec![point];
    seen[point] = true;
    let mut head = 0;
    while head < orbit.len() {
        let x = orbit[head];
        for g in gens {
            let y = g.apply(x);
            if !seen[y] {
                seen[y] = true;
                orbit.push(y);
            }
        }
        head += 1;
    }
    orbit.sort_unstable();
    orbit
}

pub(crate) fn orbits_of(gens: &[Permutation], degree: usize) -> Vec<Vec<usize>> {
    let mut seen = vec![false; degree];
    let mut out = Vec::new();
    for p in 0..degree {
        if seen[p] {
            continue;
        }
        let orb = orbit_of(gens, degree, p);
        for &x in &orb {
            seen[x] = true;
        }
        out.push(orb);
    }
    out
}

/// The largest power of `p` dividing `n`.
pub fn p_part(n: &BigUint, p: u64) -> BigUint {
    let p = BigUint::from(p);
    let zero = BigUint::from(0u32);
    let mut out = BigUint::one();
    let mut m = n.clone();
    while &m % &p == zero && m > zero {
        m /= &p;
        out *= &p;
    }
    out
}

/// Prime divisors of `n`, ascending.
pub fn prime_divisors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            out.push(d);
            while n.is_multiple_of(d) {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// `Some(p)` when `n` is a positive power of the prime `p`.
pub fn prime_power_base(n: u64) -> Option<u64> {
    match prime_divisors(n).as_slice() {
        [p] => Some(*p),
        _ => None,
    }
}
