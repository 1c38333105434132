//! Table-driven arithmetic in 𝔽_{p^k}.
//!
//! An element is a `u16` index `Σ cᵢ pⁱ` encoding the polynomial `Σ cᵢ xⁱ` modulo a
//! monic irreducible of degree `k`. Index 0 is zero and index 1 is one.

use crate::error::{QcaError, Result};

pub type Fe = u16;

#[derive(Clone, Debug)]
pub struct Field {
    p: u32,
    degree: u32,
    q: usize,
    add: Vec<Fe>,
    mul: Vec<Fe>,
    neg: Vec<Fe>,
    inv: Vec<Fe>,
    modulus: Vec<u32>,
}

fn digits(mut x: usize, p: u32, k: u32) -> Vec<u32> {
    (0..k)
        .map(|_| {
            let d = (x % p as usize) as u32;
            x /= p as usize;
            d
        })
        .collect()
}

fn undigits(ds: &[u32], p: u32) -> usize {
    ds.iter().rev().fold(0usize, |acc, &d| acc * p as usize + d as usize)
}

/// Product of two polynomials modulo the monic `modulus` (low-degree coefficients first).
fn poly_mulmod(a: &[u32], b: &[u32], modulus: &[u32], p: u32) -> Vec<u32> {
    let k = modulus.len() - 1;
    let mut prod = vec![0u32; 2 * k.max(1)];
    for (i, &x) in a.iter().enumerate() {
        for (j, &y) in b.iter().enumerate() {
            prod[i + j] = (prod[i + j] + x * y) % p;
        }
    }
    for top in (k..prod.len()).rev() {
        let c = prod[top];
        if c == 0 {
            continue;
        }
        for (j, &mcoef) in modulus.iter().enumerate() {
            let idx = top - k + j;
            prod[idx] = (prod[idx] + p * p - c * mcoef % p) % p;
        }
    }
    prod.truncate(k);
    prod
}

impl Field {
    /// Builds 𝔽_{p^k}; `p` must be prime and `p^k ≤ 343`.
    pub fn new(p: u32, degree: u32) -> Result<Field> {
        if p < 2 || (2..p).any(|d| p % d == 0) {
            return Err(QcaError::InvalidContext(format!("{p} is not prime")));
        }
        if degree == 0 {
            return Err(QcaError::InvalidContext("field degree must be positive".into()));
        }
        let q = (p as u64).pow(degree);
        if q > 343 {
            return Err(QcaError::resource("field order", q, 343));
        }
        let q = q as usize;
        let k = degree;

        let mut add = vec![0; q * q];
        let mut neg = vec![0; q];
        for a in 0..q {
            let da = digits(a, p, k);
            neg[a] = undigits(&da.iter().map(|&x| (p - x) % p).collect::<Vec<_>>(), p) as Fe;
            for b in 0..q {
                let db = digits(b, p, k);
                let s: Vec<u32> = da.iter().zip(&db).map(|(x, y)| (x + y) % p).collect();
                add[a * q + b] = undigits(&s, p) as Fe;
            }
        }

        // Try monic moduli x^k + (lower) in index order until the product has no zero divisors.
        for low in 0..q {
            let mut modulus = digits(low, p, k);
            modulus.push(1);
            if k > 1 && modulus[0] == 0 {
                continue;
            }
            let mut mul = vec![0; q * q];
            for a in 0..q {
                let da = digits(a, p, k);
                for b in a..q {
                    let db = digits(b, p, k);
                    let c = undigits(&poly_mulmod(&da, &db, &modulus, p), p) as Fe;
                    mul[a * q + b] = c;
                    mul[b * q + a] = c;
                }
            }
            let domain = (1..q).all(|a| (1..q).all(|b| mul[a * q + b] != 0));
            if !domain {
                continue;
            }
            let mut inv = vec![0; q];
            for a in 1..q {
                inv[a] = (1..q).find(|&b| mul[a * q + b] == 1).expect("field has inverses") as Fe;
            }
            let f = Field {
                p,
                degree,
                q,
                add,
                mul,
                neg,
                inv,
                modulus,
            };
            f.check_axioms()?;
            return Ok(f);
        }
        Err(QcaError::Invariant(format!("no irreducible polynomial of degree {k} over F_{p}")))
    }

    /// Verifies the field axioms on the full tables.
    pub fn check_axioms(&self) -> Result<()> {
        let q = self.q;
        let fail = |what: &str| Err(QcaError::Invariant(format!("field table violates {what}")));
        for a in 0..q as Fe {
            if self.add(a, 0) != a || self.mul(a, 1) != a {
                return fail("identity");
            }
            if self.add(a, self.neg(a)) != 0 {
                return fail("additive inverse");
            }
            if a != 0 && self.mul(a, self.inv(a)) != 1 {
                return fail("multiplicative inverse");
            }
            for b in 0..q as Fe {
                if self.add(a, b) != self.add(b, a) || self.mul(a, b) != self.mul(b, a) {
                    return fail("commutativity");
                }
                let ab = self.add(a, b);
                let mab = self.mul(a, b);
                for c in 0..q as Fe {
                    if self.add(ab, c) != self.add(a, self.add(b, c)) {
                        return fail("additive associativity");
                    }
                    if self.mul(mab, c) != self.mul(a, self.mul(b, c)) {
                        return fail("multiplicative associativity");
                    }
                    if self.mul(a, self.add(b, c)) != self.add(mab, self.mul(a, c)) {
                        return fail("distributivity");
                    }
                }
            }
        }
        Ok(())
    }

    #[inline]
    pub fn order(&self) -> usize {
        self.q
    }

    #[inline]
    pub fn characteristic(&self) -> u32 {
        self.p
    }

    #[inline]
    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn modulus(&self) -> &[u32] {
        &self.modulus
    }

    #[inline]
    pub fn add(&self, a: Fe, b: Fe) -> Fe {
        self.add[a as usize * self.q + b as usize]
    }

    #[inline]
    pub fn sub(&self, a: Fe, b: Fe) -> Fe {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn mul(&self, a: Fe, b: Fe) -> Fe {
        self.mul[a as usize * self.q + b as usize]
    }

    #[inline]
    pub fn neg(&self, a: Fe) -> Fe {
        self.neg[a as usize]
    }

    /// Inverse of a nonzero element; `inv(0)` is 0.
    #[inline]
    pub fn inv(&self, a: Fe) -> Fe {
        self.inv[a as usize]
    }

    /// The 𝔽_p-basis `1, x, …, x^{k−1}` as element indices.
    pub fn prime_basis(&self) -> Vec<Fe> {
        (0..self.degree).map(|r| self.p.pow(r) as Fe).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn builds_all_supported_fields() {
        for (p, k) in [(2, 1), (2, 2), (2, 3), (2, 8), (3, 1), (3, 2), (3, 5), (5, 2), (5, 3), (7, 1), (7, 2), (7, 3)] {
            let f = Field::new(p, k).unwrap();
            assert_eq!(f.order(), (p as usize).pow(k));
        }
        assert!(Field::new(2, 9).is_err());
        assert!(Field::new(4, 1).is_err());
    }

    #[test]
    fn f4_multiplicative_group_is_cyclic_of_order_3() {
        let f = Field::new(2, 2).unwrap();
        let g = 2;
        assert_eq!(f.mul(g, g), 3);
        assert_eq!(f.mul(f.mul(g, g), g), 1);
    }

    #[test]
    fn frobenius_fixes_prime_field() {
        let f = Field::new(3, 2).unwrap();
        for a in 0..9u16 {
            let a3 = f.mul(f.mul(a, a), a);
            assert_eq!(a3 == a, a < 3);
        }
    }
}
