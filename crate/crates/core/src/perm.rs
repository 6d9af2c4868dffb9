//! Permutations of `{0, .., n-1}` acting on the right.
//!
//! Products are read left to right: `p.then(q)` applies `p` first, so
//! `x^(pq) = (x^p)^q`. Conjugation follows the same convention,
//! `p^g = g^-1 p g`.

use std::fmt;

use crate::error::{Error, Result};

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    images: Vec<usize>,
}

impl Permutation {
    /// Builds a permutation from its image list, checking bijectivity.
    pub fn new(images: Vec<usize>) -> Result<Self> {
        let n = images.len();
        if n == 0 {
            return Err(Error::ZeroDegree);
        }
        let mut seen = vec![false; n];
        for &x in &images {
            if x >= n || seen[x] {
                return Err(Error::InvalidPermutation { degree: n });
            }
            seen[x] = true;
        }
        Ok(Permutation { images })
    }

    pub fn identity(n: usize) -> Self {
        Permutation {
            images: (0..n).collect(),
        }
    }

    /// Builds a permutation from disjoint cycles, e.g. `&[&[0, 1, 2]]`.
    pub fn from_cycles(n: usize, cycles: &[&[usize]]) -> Result<Self> {
        if n == 0 {
            return Err(Error::ZeroDegree);
        }
        let mut images: Vec<usize> = (0..n).collect();
        let mut touched = vec![false; n];
        for cycle in cycles {
            for (i, &a) in cycle.iter().enumerate() {
                if a >= n {
                    return Err(Error::PointOutOfRange {
                        point: a,
                        degree: n,
                    });
                }
                if touched[a] {
                    return Err(Error::InvalidPermutation { degree: n });
                }
                touched[a] = true;
                images[a] = cycle[(i + 1) % cycle.len()];
            }
        }
        Permutation::new(images)
    }

    #[inline]
    pub fn degree(&self) -> usize {
        self.images.len()
    }

    #[inline]
    pub fn apply(&self, x: usize) -> usize {
        self.images[x]
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    pub fn into_images(self) -> Vec<usize> {
        self.images
    }

    /// `x -> other(self(x))`, with a degree check.
    pub fn compose(&self, other: &Permutation) -> Result<Permutation> {
        if self.degree() != other.degree() {
            return Err(Error::DegreeMismatch {
                expected: self.degree(),
                found: other.degree(),
            });
        }
        Ok(self.then(other))
    }

    /// Unchecked product: apply `self`, then `other`.
    #[inline]
    pub fn then(&self, other: &Permutation) -> Permutation {
        debug_assert_eq!(self.degree(), other.degree());
        Permutation {
            images: self.images.iter().map(|&x| other.images[x]).collect(),
        }
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0; self.images.len()];
        for (i, &x) in self.images.iter().enumerate() {
            inv[x] = i;
        }
        Permutation { images: inv }
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &x)| i == x)
    }

    /// `g^-1 self g`.
    pub fn conjugate_by(&self, g: &Permutation) -> Permutation {
        // x -> g(self(g^-1(x))); relabel through g.
        let mut images = vec![0; self.images.len()];
        for (i, &x) in self.images.iter().enumerate() {
            images[g.images[i]] = g.images[x];
        }
        Permutation { images }
    }

    /// `self^-1 other^-1 self other`.
    pub fn commutator(&self, other: &Permutation) -> Permutation {
        self.inverse().then(&other.inverse()).then(self).then(other)
    }

    pub fn pow(&self, mut e: u64) -> Permutation {
        let mut base = self.clone();
        let mut acc = Permutation::identity(self.degree());
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.then(&base);
            }
            base = base.then(&base);
            e >>= 1;
        }
        acc
    }

    /// Cycle lengths, including fixed points.
    pub fn cycle_type(&self) -> Vec<usize> {
        let n = self.degree();
        let mut seen = vec![false; n];
        let mut lens = Vec::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            let mut len = 0;
            let mut x = start;
            while !seen[x] {
                seen[x] = true;
                x = self.images[x];
                len += 1;
            }
            lens.push(len);
        }
        lens
    }

    /// Element order: lcm of the cycle lengths.
    pub fn order(&self) -> u64 {
        self.cycle_type()
            .into_iter()
            .fold(1u64, |acc, l| lcm(acc, l as u64))
    }

    pub fn smallest_moved_point(&self) -> Option<usize> {
        self.images.iter().enumerate().position(|(i, &x)| i != x)
    }

    pub fn fixes_all(&self, points: &[usize]) -> bool {
        points.iter().all(|&p| self.images[p] == p)
    }

    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let n = self.degree();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for start in 0..n {
            if seen[start] || self.images[start] == start {
                continue;
            }
            let mut cycle = Vec::new();
            let mut x = start;
            while !seen[x] {
                seen[x] = true;
                cycle.push(x);
                x = self.images[x];
            }
            out.push(cycle);
        }
        out
    }
}

pub(crate) fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

pub(crate) fn lcm(a: u64, b: u64) -> u64 {
    if a == 0 || b == 0 {
        0
    } else {
        a / gcd(a, b) * b
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cycles = self.cycles();
        if cycles.is_empty() {
            return write!(f, "()");
        }
        for c in cycles {
            write!(f, "(")?;
            for (i, x) in c.iter().enumerate() {
                if i > 0 {
                    write!(f, " ")?;
                }
                write!(f, "{x}")?;
            }
            write!(f, ")")?;
        }
        Ok(())
    }
}
