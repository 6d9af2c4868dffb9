//! Deterministic Schreier–Sims.
//!
//! The chain is a list of levels; level `i` holds the strong generators
//! fixing `base[..i]` pointwise, the orbit of `base[i]` under them and an
//! explicit transversal (`transversal[j]` maps `base[i]` to `orbit[j]`).

use num_bigint::BigUint;

use crate::perm::Permutation;

pub(crate) const NOT_IN_ORBIT: usize = usize::MAX;

#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) struct Level {
    pub base_point: usize,
    pub gens: Vec<Permutation>,
    pub orbit: Vec<usize>,
    pub pos: Vec<usize>,
    pub transversal: Vec<Permutation>,
    pub inv_transversal: Vec<Permutation>,
}

impl Level {
    pub fn new(degree: usize, base_point: usize, gens: Vec<Permutation>) -> Level {
        let mut level = Level {
            base_point,
            gens,
            orbit: Vec::new(),
            pos: vec![NOT_IN_ORBIT; degree],
            transversal: Vec::new(),
            inv_transversal: Vec::new(),
        };
        level.recompute();
        level
    }

    fn recompute(&mut self) {
        let degree = self.pos.len();
        self.pos.iter_mut().for_each(|p| *p = NOT_IN_ORBIT);
        self.orbit.clear();
        self.transversal.clear();
        self.orbit.push(self.base_point);
        self.pos[self.base_point] = 0;
        self.transversal.push(Permutation::identity(degree));
        let mut head = 0;
        while head < self.orbit.len() {
            let x = self.orbit[head];
            for g in &self.gens {
                let y = g.apply(x);
                if self.pos[y] == NOT_IN_ORBIT {
                    self.pos[y] = self.orbit.len();
                    self.orbit.push(y);
                    let t = self.transversal[head].then(g);
                    self.transversal.push(t);
                }
            }
            head += 1;
        }
        self.inv_transversal = self.transversal.iter().map(|t| t.inverse()).collect();
    }

    #[inline]
    pub fn orbit_len(&self) -> usize {
        self.orbit.len()
    }
}

pub(crate) fn chain_order(levels: &[Level]) -> BigUint {
    levels.iter().fold(BigUint::from(1u32), |acc, l| {
        acc * BigUint::from(l.orbit_len())
    })
}

/// Sifts `g` through `levels[start..]`. Returns the residue and the index of
/// the level where sifting stopped (`levels.len()` if it went all the way).
pub(crate) fn strip(levels: &[Level], mut g: Permutation, start: usize) -> (Permutation, usize) {
    for (l, level) in levels.iter().enumerate().skip(start) {
        let beta = g.apply(level.base_point);
        let p = level.pos[beta];
        if p == NOT_IN_ORBIT {
            return (g, l);
        }
        if p != 0 {
            g = g.then(&level.inv_transversal[p]);
        }
    }
    (g, levels.len())
}

/// Builds a stabilizer chain for `<gens>`, whose base starts with `prefix`.
///
/// New base points are the smallest point moved by the offending generator.
/// When `known_order` is given the construction stops as soon as the
/// transversal sizes multiply to it.
pub(crate) fn schreier_sims(
    degree: usize,
    gens: &[Permutation],
    prefix: &[usize],
    known_order: Option<&BigUint>,
) -> Vec<Level> {
    let mut strong: Vec<Permutation> = Vec::new();
    for g in gens {
        if !g.is_identity() && !strong.contains(g) {
            strong.push(g.clone());
        }
    }
    let mut base: Vec<usize> = prefix.to_vec();
    for s in &strong {
        if s.fixes_all(&base) {
            base.push(s.smallest_moved_point().expect("non-identity"));
        }
    }
    let mut levels: Vec<Level> = base
        .iter()
        .enumerate()
        .map(|(i, &b)| {
            let lg = strong
                .iter()
                .filter(|s| s.fixes_all(&base[..i]))
                .cloned()
                .collect();
            Level::new(degree, b, lg)
        })
        .collect();

    let done = |levels: &[Level]| match known_order {
        Some(o) => &chain_order(levels) == o,
        None => false,
    };
    if levels.is_empty() || done(&levels) {
        return levels;
    }

    let mut i = levels.len() - 1;
    loop {
        let mut added = None;
        'scan: for (oi, &beta) in levels[i].orbit.iter().enumerate() {
            for x in &levels[i].gens {
                let image = x.apply(beta);
                let tp = levels[i].pos[image];
                let h = levels[i].transversal[oi]
                    .then(x)
                    .then(&levels[i].inv_transversal[tp]);
                if h.is_identity() {
                    continue;
                }
                let (residue, j) = strip(&levels, h, i + 1);
                if j < levels.len() || !residue.is_identity() {
                    added = Some((residue, j));
                    break 'scan;
                }
            }
        }
        match added {
            Some((residue, j)) => {
                if j == levels.len() {
                    let b = residue
                        .smallest_moved_point()
                        .expect("non-identity residue");
                    levels.push(Level::new(degree, b, Vec::new()));
                }
                for level in levels.iter_mut().take(j + 1).skip(i + 1) {
                    level.gens.push(residue.clone());
                    level.recompute();
                }
                if done(&levels) {
                    return levels;
                }
                i = j;
            }
            None => {
                if i == 0 {
                    break;
                }
                i -= 1;
            }
        }
    }
    levels
}
