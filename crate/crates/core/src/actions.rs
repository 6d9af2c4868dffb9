//! Induced actions on derived domains and the classical permutation-group
//! predicates: transitivity, semiregularity, Frobenius, 3/2-transitivity,
//! block systems and primitivity.

use std::collections::HashMap;

use num_bigint::BigUint;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::group::{check_point, orbit_of, orbits_of, Group};
use crate::perm::Permutation;

/// Largest `k` accepted by [`Action::is_k_transitive`].
pub const MAX_K_TRANSITIVITY: usize = 5;
/// Largest coset space built by [`CosetSpace::new`] by default.
pub const DEFAULT_COSET_CAP: usize = 100_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LabelKind {
    /// Labels are unordered; images are re-sorted.
    Set,
    /// Labels are ordered tuples.
    Tuple,
}

/// A group acting on an explicit list of labels, with the induced
/// permutation group on label indices.
#[derive(Clone, Debug)]
pub struct Action {
    group: Group,
    labels: Vec<Vec<usize>>,
    image: Group,
    kernel_order: BigUint,
}

/// A partition of the domain into equal cells permuted by the group.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BlockSystem {
    pub blocks: Vec<Vec<usize>>,
    pub block_size: usize,
}

impl BlockSystem {
    pub fn is_trivial(&self) -> bool {
        self.blocks.len() == 1 || self.block_size == 1
    }

    /// Checks the partition invariants and that each generator permutes
    /// the cells.
    pub fn is_preserved_by(&self, gens: &[Permutation]) -> bool {
        let n: usize = self.blocks.iter().map(|b| b.len()).sum();
        let mut cell = vec![usize::MAX; n];
        for (i, b) in self.blocks.iter().enumerate() {
            if b.len() != self.block_size {
                return false;
            }
            for &x in b {
                if x >= n || cell[x] != usize::MAX {
                    return false;
                }
                cell[x] = i;
            }
        }
        gens.iter().all(|g| {
            self.blocks.iter().all(|b| {
                let target = cell[g.apply(b[0])];
                b.iter().all(|&x| cell[g.apply(x)] == target)
            })
        })
    }
}

impl Action {
    /// The action of `group` on `labels`, which must form an invariant set.
    pub fn on_labels(group: &Group, labels: Vec<Vec<usize>>, kind: LabelKind) -> Result<Action> {
        let mut labels: Vec<Vec<usize>> = labels
            .into_iter()
            .map(|mut l| {
                if kind == LabelKind::Set {
                    l.sort_unstable();
                }
                l
            })
            .collect();
        for l in &labels {
            for &x in l {
                check_point(x, group.degree())?;
            }
        }
        labels.sort();
        labels.dedup();
        if labels.is_empty() {
            return Err(Error::EmptyPointSet);
        }
        let index: HashMap<&[usize], usize> = labels
            .iter()
            .enumerate()
            .map(|(i, l)| (l.as_slice(), i))
            .collect();
        let mut image_gens = Vec::with_capacity(group.generators().len());
        for g in group.generators() {
            let mut images = Vec::with_capacity(labels.len());
            let mut buf = Vec::new();
            for l in &labels {
                buf.clear();
                buf.extend(l.iter().map(|&x| g.apply(x)));
                if kind == LabelKind::Set {
                    buf.sort_unstable();
                }
                images.push(*index.get(buf.as_slice()).ok_or(Error::NotInvariant)?);
            }
            image_gens.push(Permutation::new(images)?);
        }
        let image = Group::build(&image_gens)?;
        let kernel_order = group.order() / image.order();
        Ok(Action {
            group: group.clone(),
            labels,
            image,
            kernel_order,
        })
    }

    /// The action on all 2-subsets of the points.
    pub fn on_2sets(group: &Group) -> Result<Action> {
        let n = group.degree();
        if n < 2 {
            return Err(Error::OutOfCap {
                what: "degree",
                value: n,
                range: ">= 2",
            });
        }
        let labels = (0..n)
            .flat_map(|a| (a + 1..n).map(move |b| vec![a, b]))
            .collect();
        Action::on_labels(group, labels, LabelKind::Set)
    }

    pub fn on_tuples(group: &Group, tuples: Vec<Vec<usize>>) -> Result<Action> {
        Action::on_labels(group, tuples, LabelKind::Tuple)
    }

    pub fn on_sets(group: &Group, sets: Vec<Vec<usize>>) -> Result<Action> {
        Action::on_labels(group, sets, LabelKind::Set)
    }

    /// Restriction to an invariant subset of the points.
    pub fn restrict_to_invariant_set(group: &Group, subset: &[usize]) -> Result<Action> {
        let labels = subset.iter().map(|&x| vec![x]).collect();
        Action::on_labels(group, labels, LabelKind::Tuple)
    }

    /// The group acting on its own points.
    pub fn natural(group: &Group) -> Action {
        Action {
            group: group.clone(),
            labels: (0..group.degree()).map(|x| vec![x]).collect(),
            image: group.clone(),
            kernel_order: BigUint::from(1u32),
        }
    }

    pub fn group(&self) -> &Group {
        &self.group
    }

    pub fn labels(&self) -> &[Vec<usize>] {
        &self.labels
    }

    pub fn image(&self) -> &Group {
        &self.image
    }

    pub fn kernel_order(&self) -> &BigUint {
        &self.kernel_order
    }

    pub fn domain_size(&self) -> usize {
        self.labels.len()
    }

    pub fn label_index(&self, label: &[usize]) -> Option<usize> {
        self.labels
            .binary_search_by(|l| l.as_slice().cmp(label))
            .ok()
    }

    pub fn is_transitive(&self) -> bool {
        self.image.is_transitive()
    }

    /// `k`-transitivity through iterated point stabilizers: the stabilizer
    /// of the first `i` points must be transitive on the other `n - i`.
    pub fn is_k_transitive(&self, k: usize) -> Result<bool> {
        is_k_transitive(&self.image, k)
    }

    pub fn is_semiregular(&self) -> bool {
        is_semiregular(&self.image)
    }

    pub fn is_regular(&self) -> bool {
        self.is_transitive() && self.is_semiregular()
    }

    pub fn is_frobenius(&self) -> Result<bool> {
        is_frobenius(&self.image)
    }

    pub fn is_three_halves_transitive(&self) -> Result<bool> {
        is_three_halves_transitive(&self.image)
    }

    pub fn minimal_blocks(&self, alpha: usize, beta: usize) -> Result<BlockSystem> {
        minimal_blocks(&self.image, alpha, beta)
    }

    pub fn is_primitive(&self) -> Result<(bool, Option<BlockSystem>)> {
        is_primitive(&self.image)
    }
}

pub fn is_k_transitive(g: &Group, k: usize) -> Result<bool> {
    if k == 0 || k > MAX_K_TRANSITIVITY {
        return Err(Error::OutOfCap {
            what: "k",
            value: k,
            range: "1..=5",
        });
    }
    let n = g.degree();
    if k > n {
        return Ok(false);
    }
    let prefix: Vec<usize> = (0..k).collect();
    let chain = g.rebased(&prefix);
    let sizes = chain.transversal_sizes();
    Ok((0..k).all(|i| sizes[i] == n - i))
}

pub fn is_semiregular(g: &Group) -> bool {
    let order = g.order();
    g.orbits().iter().all(|o| BigUint::from(o.len()) == order)
}

pub fn is_regular(g: &Group) -> bool {
    g.is_transitive() && is_semiregular(g)
}

fn require_transitive(g: &Group) -> Result<()> {
    if g.is_transitive() {
        Ok(())
    } else {
        Err(Error::NotTransitive)
    }
}

/// Orbits of the stabilizer of point 0 on the remaining points.
fn suborbits(g: &Group) -> (Group, Vec<Vec<usize>>) {
    let stab = g.point_stabilizer(0).expect("degree is positive");
    let orbits = orbits_of(stab.generators(), g.degree())
        .into_iter()
        .filter(|o| o[0] != 0)
        .collect();
    (stab, orbits)
}

/// Transitive, nontrivial point stabilizer, and the stabilizer acts
/// semiregularly on the remaining points. Regular groups are not Frobenius.
pub fn is_frobenius(g: &Group) -> Result<bool> {
    require_transitive(g)?;
    let (stab, orbits) = suborbits(g);
    if stab.is_trivial() {
        return Ok(false);
    }
    let s = stab.order();
    Ok(orbits.iter().all(|o| BigUint::from(o.len()) == s))
}

/// All stabilizer orbits off the fixed point have one common length > 1.
pub fn is_three_halves_transitive(g: &Group) -> Result<bool> {
    require_transitive(g)?;
    let (_, orbits) = suborbits(g);
    let Some(first) = orbits.first() else {
        return Ok(false);
    };
    let len = first.len();
    Ok(len > 1 && orbits.iter().all(|o| o.len() == len))
}

/// Finest block system with `alpha` and `beta` in one block.
pub fn minimal_blocks(g: &Group, alpha: usize, beta: usize) -> Result<BlockSystem> {
    check_point(alpha, g.degree())?;
    check_point(beta, g.degree())?;
    require_transitive(g)?;
    Ok(block_closure(g.generators(), g.degree(), alpha, beta))
}

fn find(parent: &mut [usize], mut x: usize) -> usize {
    while parent[x] != x {
        parent[x] = parent[parent[x]];
        x = parent[x];
    }
    x
}

fn block_closure(gens: &[Permutation], n: usize, alpha: usize, beta: usize) -> BlockSystem {
    let mut parent: Vec<usize> = (0..n).collect();
    let mut queue = Vec::new();
    let (ra, rb) = (find(&mut parent, alpha), find(&mut parent, beta));
    if ra != rb {
        parent[ra.max(rb)] = ra.min(rb);
        queue.push((alpha, beta));
    }
    while let Some((x, y)) = queue.pop() {
        for g in gens {
            let (gx, gy) = (g.apply(x), g.apply(y));
            let (rx, ry) = (find(&mut parent, gx), find(&mut parent, gy));
            if rx != ry {
                parent[rx.max(ry)] = rx.min(ry);
                queue.push((gx, gy));
            }
        }
    }
    let mut cells: HashMap<usize, Vec<usize>> = HashMap::new();
    for x in 0..n {
        let r = find(&mut parent, x);
        cells.entry(r).or_default().push(x);
    }
    let mut blocks: Vec<Vec<usize>> = cells.into_values().collect();
    blocks.sort();
    let block_size = blocks[0].len();
    BlockSystem { blocks, block_size }
}

/// A nontrivial block system for the transitive group generated by `gens`,
/// given generators of the stabilizer of point 0. Seeds `(0, beta)` with one
/// `beta` per stabilizer orbit suffice: every nontrivial block containing 0
/// contains a whole suborbit, hence its minimal representative.
fn nontrivial_blocks(
    gens: &[Permutation],
    n: usize,
    stab_gens: &[Permutation],
) -> Option<BlockSystem> {
    if n <= 2 {
        return None;
    }
    for orbit in orbits_of(stab_gens, n) {
        let beta = orbit[0];
        if beta == 0 {
            continue;
        }
        let blocks = block_closure(gens, n, 0, beta);
        if blocks.blocks.len() > 1 {
            return Some(blocks);
        }
    }
    None
}

pub fn is_primitive(g: &Group) -> Result<(bool, Option<BlockSystem>)> {
    require_transitive(g)?;
    let stab = g.point_stabilizer(0)?;
    let witness = nontrivial_blocks(g.generators(), g.degree(), stab.generators());
    Ok((witness.is_none(), witness))
}

/// The right cosets `Hx` of `subgroup` in `group`, with `group` acting by
/// right multiplication.
#[derive(Clone, Debug)]
pub struct CosetSpace {
    lex: Group,
    reps: Vec<Permutation>,
    index: HashMap<Vec<usize>, usize>,
    generator_images: Vec<Permutation>,
}

impl CosetSpace {
    pub fn new(group: &Group, subgroup: &Group, cap: usize) -> Result<CosetSpace> {
        if !group.contains_group(subgroup) {
            return Err(Error::NotSubgroup);
        }
        let idx = group.order() / subgroup.order();
        if idx > BigUint::from(cap) {
            return Err(Error::scale(
                "coset enumeration",
                format!("index {idx}"),
                cap as u64,
            ));
        }
        let lex = subgroup.lex_chain();
        let first = lex.min_in_right_coset(&group.identity());
        let mut reps = vec![first.clone()];
        let mut index = HashMap::new();
        index.insert(first.into_images(), 0usize);
        let gens = group.generators();
        let mut images: Vec<Vec<usize>> = vec![Vec::new(); gens.len()];
        let mut head = 0;
        while head < reps.len() {
            for (gi, g) in gens.iter().enumerate() {
                let y = lex.min_in_right_coset(&reps[head].then(g));
                let next = reps.len();
                let j = *index.entry(y.images().to_vec()).or_insert(next);
                if j == next {
                    reps.push(y);
                }
                images[gi].push(j);
            }
            head += 1;
        }
        let generator_images = images
            .into_iter()
            .map(Permutation::new)
            .collect::<Result<Vec<_>>>()?;
        Ok(CosetSpace {
            lex,
            reps,
            index,
            generator_images,
        })
    }

    pub fn len(&self) -> usize {
        self.reps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.reps.is_empty()
    }

    /// Canonical representatives; coset 0 is the subgroup itself.
    pub fn representatives(&self) -> &[Permutation] {
        &self.reps
    }

    /// Index of the coset `Hx`, if `x` lies in the group.
    pub fn coset_of(&self, x: &Permutation) -> Option<usize> {
        let key = self.lex.min_in_right_coset(x);
        self.index.get(key.images()).copied()
    }

    /// The permutation of cosets induced by right multiplication with `x`.
    pub fn act(&self, x: &Permutation) -> Option<Permutation> {
        let images = self
            .reps
            .iter()
            .map(|r| self.coset_of(&r.then(x)))
            .collect::<Option<Vec<_>>>()?;
        Permutation::new(images).ok()
    }

    /// Images of the group's generators, in order.
    pub fn generator_images(&self) -> &[Permutation] {
        &self.generator_images
    }
}

/// `H` is maximal in `G` iff `G` acts primitively on the cosets of `H`.
pub fn maximality_via_primitivity(group: &Group, subgroup: &Group) -> Result<bool> {
    maximality_witness(group, subgroup).map(|w| w.is_none())
}

/// As [`maximality_via_primitivity`], returning a block system on the
/// cosets when `H` is not maximal.
pub fn maximality_witness(group: &Group, subgroup: &Group) -> Result<Option<BlockSystem>> {
    if !group.contains_group(subgroup) {
        return Err(Error::NotSubgroup);
    }
    if group.order_ref() == subgroup.order_ref() {
        return Err(Error::NotProper);
    }
    let space = CosetSpace::new(group, subgroup, DEFAULT_COSET_CAP)?;
    let stab: Vec<Permutation> = subgroup
        .generators()
        .iter()
        .map(|h| space.act(h).expect("subgroup elements lie in the group"))
        .collect();
    Ok(nontrivial_blocks(
        space.generator_images(),
        space.len(),
        &stab,
    ))
}

/// Orbit of a label index under the image group.
pub fn label_orbit(action: &Action, index: usize) -> Vec<usize> {
    orbit_of(action.image().generators(), action.domain_size(), index)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cyc(n: usize, cs: &[&[usize]]) -> Permutation {
        Permutation::from_cycles(n, cs).unwrap()
    }

    fn sym(n: usize) -> Group {
        let cycle: Vec<usize> = (0..n).collect();
        Group::build(&[cyc(n, &[&[0, 1]]), cyc(n, &[&cycle])]).unwrap()
    }

    fn dihedral(n: usize) -> Group {
        let rot: Vec<usize> = (0..n).map(|i| (i + 1) % n).collect();
        let refl: Vec<usize> = (0..n).map(|i| (n - i) % n).collect();
        Group::build(&[
            Permutation::new(rot).unwrap(),
            Permutation::new(refl).unwrap(),
        ])
        .unwrap()
    }

    /// AGL(1,5): x -> x + 1 and x -> 2x.
    fn agl15() -> Group {
        let t = Permutation::new((0..5).map(|i| (i + 1) % 5).collect()).unwrap();
        let m = Permutation::new((0..5).map(|i| (2 * i) % 5).collect()).unwrap();
        Group::build(&[t, m]).unwrap()
    }

    #[test]
    fn two_sets_of_s3_and_s5() {
        let a = Action::on_2sets(&sym(3)).unwrap();
        assert_eq!(a.domain_size(), 3);
        assert_eq!(a.image().order_u64(), Some(6));
        assert_eq!(a.kernel_order(), &BigUint::from(1u32));
        let b = Action::on_2sets(&sym(5)).unwrap();
        assert_eq!(b.domain_size(), 10);
        assert_eq!(b.image().order_u64(), Some(120));
        assert_eq!(b.group().order(), b.image().order() * b.kernel_order());
        let t = Action::on_2sets(&Group::trivial(4)).unwrap();
        assert!(t.image().is_trivial());
        assert!(t.kernel_order() == &BigUint::from(1u32));
    }

    #[test]
    fn restriction_requires_invariance() {
        let g = Group::build(&[cyc(5, &[&[0, 1, 2]]), cyc(5, &[&[3, 4]])]).unwrap();
        let r = Action::restrict_to_invariant_set(&g, &[3, 4]).unwrap();
        assert_eq!(r.image().order_u64(), Some(2));
        assert_eq!(r.kernel_order(), &BigUint::from(3u32));
        assert!(matches!(
            Action::restrict_to_invariant_set(&g, &[2, 3]),
            Err(Error::NotInvariant)
        ));
    }

    #[test]
    fn k_transitivity() {
        assert!(is_k_transitive(&sym(4), 2).unwrap());
        assert!(is_k_transitive(&sym(4), 4).unwrap());
        assert!(!is_k_transitive(&sym(4), 5).unwrap());
        assert!(is_k_transitive(&agl15(), 2).unwrap());
        assert!(!is_k_transitive(&agl15(), 3).unwrap());
        assert!(is_k_transitive(&sym(4), 6).is_err());
        assert!(is_k_transitive(&sym(4), 0).is_err());
    }

    #[test]
    fn regular_and_frobenius() {
        let z5 = Group::build(&[cyc(5, &[&[0, 1, 2, 3, 4]])]).unwrap();
        assert!(is_regular(&z5));
        assert!(is_semiregular(&z5));
        assert!(!is_frobenius(&z5).unwrap());
        assert!(is_frobenius(&agl15()).unwrap());
        assert!(!is_frobenius(&sym(4)).unwrap());
        assert!(is_three_halves_transitive(&sym(4)).unwrap());
        let intrans = Group::build(&[cyc(4, &[&[0, 1]])]).unwrap();
        assert!(matches!(is_frobenius(&intrans), Err(Error::NotTransitive)));
        assert!(is_three_halves_transitive(&intrans).is_err());
    }

    #[test]
    fn primitivity_of_dihedral_groups() {
        let (p, w) = is_primitive(&dihedral(5)).unwrap();
        assert!(p && w.is_none());
        let (p, w) = is_primitive(&dihedral(6)).unwrap();
        assert!(!p);
        let w = w.unwrap();
        assert!(w.block_size == 2 || w.block_size == 3);
        assert!(w.is_preserved_by(dihedral(6).generators()));
        let b = minimal_blocks(&dihedral(6), 0, 3).unwrap();
        assert_eq!(b.blocks, vec![vec![0, 3], vec![1, 4], vec![2, 5]]);
        assert!(is_primitive(&Group::build(&[cyc(4, &[&[0, 1]])]).unwrap()).is_err());
    }

    #[test]
    fn maximality_through_cosets() {
        let s4 = sym(4);
        let a4 = s4.derived_subgroup();
        assert!(maximality_via_primitivity(&s4, &a4).unwrap());
        let s5 = sym(5);
        let d8 = Group::build(&[cyc(5, &[&[0, 1, 2, 3]]), cyc(5, &[&[0, 2]])]).unwrap();
        assert_eq!(d8.order_u64(), Some(8));
        assert!(!maximality_via_primitivity(&s5, &d8).unwrap());
        let s4_in_s5 = s5.point_stabilizer(4).unwrap();
        assert!(maximality_via_primitivity(&s5, &s4_in_s5).unwrap());
        assert!(matches!(
            maximality_via_primitivity(&s5, &s5),
            Err(Error::NotProper)
        ));
    }

    #[test]
    fn coset_space_is_consistent() {
        let s4 = sym(4);
        let h = s4.point_stabilizer(3).unwrap();
        let space = CosetSpace::new(&s4, &h, 100).unwrap();
        assert_eq!(space.len(), 4);
        assert_eq!(space.coset_of(&s4.identity()), Some(0));
        for x in s4.elements(100).unwrap() {
            let c = space.coset_of(&x).unwrap();
            // Hx is determined by where x sends the fixed point 3.
            let r = &space.representatives()[c];
            assert_eq!(r.apply(3), x.apply(3));
        }
    }
}
