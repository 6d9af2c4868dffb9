//! Standard permutation groups: symmetric and alternating groups, linear
//! groups on the projective line and one-dimensional affine groups.

use super::field::FiniteField;
use crate::error::{Error, Result};
use crate::group::Group;
use crate::perm::Permutation;

pub fn symmetric(n: usize) -> Result<Group> {
    if n == 0 {
        return Err(Error::ZeroDegree);
    }
    if n == 1 {
        return Ok(Group::trivial(1));
    }
    let cycle: Vec<usize> = (0..n).collect();
    Group::build(&[
        Permutation::from_cycles(n, &[&[0, 1]])?,
        Permutation::from_cycles(n, &[&cycle])?,
    ])
}

pub fn alternating(n: usize) -> Result<Group> {
    if n == 0 {
        return Err(Error::ZeroDegree);
    }
    if n < 3 {
        return Ok(Group::trivial(n));
    }
    let long: Vec<usize> = if n % 2 == 1 {
        (0..n).collect()
    } else {
        (1..n).collect()
    };
    Group::build(&[
        Permutation::from_cycles(n, &[&[0, 1, 2]])?,
        Permutation::from_cycles(n, &[&long])?,
    ])
}

/// Points of `PG(1, q)`: field elements `0..q`, with `q` standing for ∞.
pub struct ProjectiveLine {
    field: FiniteField,
}

impl ProjectiveLine {
    pub fn new(q: u64) -> Result<ProjectiveLine> {
        Ok(ProjectiveLine {
            field: FiniteField::new(q)?,
        })
    }

    pub fn field(&self) -> &FiniteField {
        &self.field
    }

    pub fn infinity(&self) -> usize {
        self.field.order()
    }

    pub fn len(&self) -> usize {
        self.field.order() + 1
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// `z -> (a z + b) / (c z + d)`, requiring `ad - bc != 0`.
    pub fn mobius(&self, a: usize, b: usize, c: usize, d: usize) -> Permutation {
        let f = &self.field;
        assert!(f.sub(f.mul(a, d), f.mul(b, c)) != 0, "singular matrix");
        let inf = self.infinity();
        let images = (0..self.len())
            .map(|z| {
                let (num, den) = if z == inf {
                    (a, c)
                } else {
                    (f.add(f.mul(a, z), b), f.add(f.mul(c, z), d))
                };
                if den == 0 {
                    inf
                } else {
                    f.mul(num, f.inv(den))
                }
            })
            .collect();
        Permutation::new(images).expect("invertible maps permute the line")
    }

    /// `z -> z^p`, fixing ∞.
    pub fn frobenius(&self) -> Permutation {
        let inf = self.infinity();
        let images = (0..self.len())
            .map(|z| {
                if z == inf {
                    inf
                } else {
                    self.field.frobenius(z)
                }
            })
            .collect();
        Permutation::new(images).expect("field automorphism")
    }

    fn translation(&self) -> Permutation {
        self.mobius(1, 1, 0, 1)
    }

    fn inversion(&self) -> Permutation {
        self.mobius(0, self.field.neg(1), 1, 0)
    }
}

/// `PGL(2, q)` on the `q + 1` points of the projective line.
pub fn pgl2(q: u64) -> Result<Group> {
    let line = ProjectiveLine::new(q)?;
    let lambda = line.field.primitive_element();
    Group::build(&[
        line.translation(),
        line.mobius(lambda, 0, 0, 1),
        line.inversion(),
    ])
}

/// `PSL(2, q)` on the projective line.
pub fn psl2(q: u64) -> Result<Group> {
    let line = ProjectiveLine::new(q)?;
    let f = &line.field;
    let square = f.mul(f.primitive_element(), f.primitive_element());
    Group::build(&[
        line.translation(),
        line.mobius(square, 0, 0, 1),
        line.inversion(),
    ])
}

/// `PΓL(2, q)`: `PGL(2, q)` extended by the Frobenius map.
pub fn pgammal2(q: u64) -> Result<Group> {
    let line = ProjectiveLine::new(q)?;
    let lambda = line.field.primitive_element();
    Group::build(&[
        line.translation(),
        line.mobius(lambda, 0, 0, 1),
        line.inversion(),
        line.frobenius(),
    ])
}

/// `M10` on 10 points: `PSL(2, 9)` extended by `z -> λ z^3`.
pub fn mathieu10() -> Result<Group> {
    let line = ProjectiveLine::new(9)?;
    let f = &line.field;
    let square = f.mul(f.primitive_element(), f.primitive_element());
    let twisted = line
        .frobenius()
        .then(&line.mobius(f.primitive_element(), 0, 0, 1));
    Group::build(&[
        line.translation(),
        line.mobius(square, 0, 0, 1),
        line.inversion(),
        twisted,
    ])
}

fn affine_map(f: &FiniteField, scale: usize, shift: usize) -> Permutation {
    let images = (0..f.order())
        .map(|z| f.add(f.mul(scale, z), shift))
        .collect();
    Permutation::new(images).expect("affine maps are bijective")
}

/// `AGL(1, q)`: the maps `z -> a z + b` on `GF(q)`.
pub fn agl1(q: u64) -> Result<Group> {
    let f = FiniteField::new(q)?;
    Group::build(&[
        affine_map(&f, 1, 1),
        affine_map(&f, f.primitive_element(), 0),
    ])
}

/// `AΓL(1, q)`: `AGL(1, q)` extended by `z -> z^p`.
pub fn agammal1(q: u64) -> Result<Group> {
    let f = FiniteField::new(q)?;
    let frob = Permutation::new((0..f.order()).map(|z| f.frobenius(z)).collect())?;
    Group::build(&[
        affine_map(&f, 1, 1),
        affine_map(&f, f.primitive_element(), 0),
        frob,
    ])
}

/// Named groups used for identification by fingerprint.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Reference {
    A6,
    S6,
    A7,
    S7,
    M10,
    Pgl29,
    Pgammal29,
}

impl Reference {
    pub const ALL: [Reference; 7] = [
        Reference::A6,
        Reference::S6,
        Reference::A7,
        Reference::S7,
        Reference::M10,
        Reference::Pgl29,
        Reference::Pgammal29,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Reference::A6 => "A6",
            Reference::S6 => "S6",
            Reference::A7 => "A7",
            Reference::S7 => "S7",
            Reference::M10 => "M10",
            Reference::Pgl29 => "PGL(2,9)",
            Reference::Pgammal29 => "PGammaL(2,9)",
        }
    }

    pub fn build(self) -> Result<Group> {
        match self {
            Reference::A6 => alternating(6),
            Reference::S6 => symmetric(6),
            Reference::A7 => alternating(7),
            Reference::S7 => symmetric(7),
            Reference::M10 => mathieu10(),
            Reference::Pgl29 => pgl2(9),
            Reference::Pgammal29 => pgammal2(9),
        }
    }
}
