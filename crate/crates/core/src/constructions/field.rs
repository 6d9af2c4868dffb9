//! Small finite fields with table arithmetic.
//!
//! Elements of `GF(p^k)` are encoded as integers `a_0 + a_1 p + .. `, the
//! coefficients of a polynomial reduced modulo a fixed irreducible.

use crate::error::{Error, Result};

pub const MAX_FIELD_ORDER: u64 = 64;

/// Irreducible moduli, coefficients from the constant term up.
const MODULI: &[(u64, u32, &[u64])] = &[
    (2, 2, &[1, 1, 1]),
    (2, 3, &[1, 1, 0, 1]),
    (2, 4, &[1, 1, 0, 0, 1]),
    (2, 5, &[1, 0, 1, 0, 0, 1]),
    (2, 6, &[1, 1, 0, 0, 0, 0, 1]),
    (3, 2, &[1, 0, 1]),
    (3, 3, &[1, 2, 0, 1]),
    (5, 2, &[2, 0, 1]),
    (7, 2, &[1, 0, 1]),
];

#[derive(Clone, Debug)]
pub struct FiniteField {
    p: u64,
    k: u32,
    q: usize,
    add: Vec<usize>,
    mul: Vec<usize>,
    neg: Vec<usize>,
    inv: Vec<usize>,
    primitive: usize,
}

fn is_prime(n: u64) -> bool {
    n >= 2 && (2..).take_while(|d| d * d <= n).all(|d| !n.is_multiple_of(d))
}

fn digits(mut x: usize, p: usize, k: usize) -> Vec<usize> {
    let mut out = vec![0; k];
    for d in out.iter_mut() {
        *d = x % p;
        x /= p;
    }
    out
}

fn encode(coeffs: &[usize], p: usize) -> usize {
    coeffs.iter().rev().fold(0, |acc, &c| acc * p + c)
}

impl FiniteField {
    /// `GF(q)` for a supported prime power `q <= 64`.
    pub fn new(q: u64) -> Result<FiniteField> {
        if !(2..=MAX_FIELD_ORDER).contains(&q) {
            return Err(Error::UnsupportedField(q));
        }
        if is_prime(q) {
            return Ok(FiniteField::from_modulus(q, 1, &[0, 1]));
        }
        MODULI
            .iter()
            .find(|(p, k, _)| p.pow(*k) == q)
            .map(|&(p, k, m)| FiniteField::from_modulus(p, k, m))
            .ok_or(Error::UnsupportedField(q))
    }

    fn from_modulus(p: u64, k: u32, modulus: &[u64]) -> FiniteField {
        let pu = p as usize;
        let ku = k as usize;
        let q = pu.pow(k);
        let mut add = vec![0; q * q];
        let mut mul = vec![0; q * q];
        for a in 0..q {
            let da = digits(a, pu, ku);
            for b in 0..q {
                let db = digits(b, pu, ku);
                let sum: Vec<usize> = da.iter().zip(&db).map(|(x, y)| (x + y) % pu).collect();
                add[a * q + b] = encode(&sum, pu);
                let mut prod = vec![0; 2 * ku];
                for (i, x) in da.iter().enumerate() {
                    for (j, y) in db.iter().enumerate() {
                        prod[i + j] = (prod[i + j] + x * y) % pu;
                    }
                }
                if ku == 1 {
                    mul[a * q + b] = prod[0];
                    continue;
                }
                // Reduce with the monic modulus: x^k = -(m_0 + .. + m_{k-1} x^{k-1}).
                for deg in (ku..2 * ku).rev() {
                    let c = prod[deg];
                    if c == 0 {
                        continue;
                    }
                    prod[deg] = 0;
                    for (i, &m) in modulus[..ku].iter().enumerate() {
                        let sub = c * m as usize % pu;
                        prod[deg - ku + i] = (prod[deg - ku + i] + pu - sub) % pu;
                    }
                }
                mul[a * q + b] = encode(&prod[..ku], pu);
            }
        }
        let neg = (0..q)
            .map(|a| (0..q).find(|&b| add[a * q + b] == 0).unwrap())
            .collect();
        let inv = (0..q)
            .map(|a| {
                if a == 0 {
                    0
                } else {
                    (1..q)
                        .find(|&b| mul[a * q + b] == 1)
                        .expect("modulus is irreducible")
                }
            })
            .collect();
        let mut field = FiniteField {
            p,
            k,
            q,
            add,
            mul,
            neg,
            inv,
            primitive: 0,
        };
        field.primitive = (1..q)
            .find(|&a| field.multiplicative_order(a) == q - 1)
            .expect("multiplicative group is cyclic");
        field
    }

    pub fn order(&self) -> usize {
        self.q
    }

    pub fn characteristic(&self) -> u64 {
        self.p
    }

    pub fn degree(&self) -> u32 {
        self.k
    }

    pub fn add(&self, a: usize, b: usize) -> usize {
        self.add[a * self.q + b]
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.mul[a * self.q + b]
    }

    pub fn neg(&self, a: usize) -> usize {
        self.neg[a]
    }

    pub fn sub(&self, a: usize, b: usize) -> usize {
        self.add(a, self.neg(b))
    }

    /// Multiplicative inverse; `inv(0)` is 0.
    pub fn inv(&self, a: usize) -> usize {
        self.inv[a]
    }

    pub fn pow(&self, a: usize, e: u64) -> usize {
        (0..e).fold(1, |acc, _| self.mul(acc, a))
    }

    /// The smallest element generating the multiplicative group.
    pub fn primitive_element(&self) -> usize {
        self.primitive
    }

    pub fn frobenius(&self, a: usize) -> usize {
        self.pow(a, self.p)
    }

    pub fn multiplicative_order(&self, a: usize) -> usize {
        assert!(a != 0);
        let mut x = a;
        let mut k = 1;
        while x != 1 {
            x = self.mul(x, a);
            k += 1;
        }
        k
    }
}
