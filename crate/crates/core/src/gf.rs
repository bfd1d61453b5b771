//! Arithmetic in GF(q), q = p^m, for q up to 32.
//!
//! Elements are encoded as integers whose base-p digits are the coefficients
//! of the polynomial representative, lowest degree first. All operations go
//! through tables built once in [`FieldSpec::new`].

use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};

pub const MAX_ORDER: u32 = 32;

/// A field element, identified by its index in `0..q`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(transparent)]
pub struct Fe(pub u8);

impl Fe {
    pub const ZERO: Fe = Fe(0);
    pub const ONE: Fe = Fe(1);

    #[inline]
    pub fn idx(self) -> usize {
        self.0 as usize
    }

    #[inline]
    pub fn is_zero(self) -> bool {
        self.0 == 0
    }
}

impl fmt::Display for Fe {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// Arithmetic context for GF(p^m).
#[derive(Clone, Debug)]
pub struct FieldSpec {
    q: u32,
    p: u32,
    m: u32,
    /// Coefficients c_0..c_m of the monic reduction polynomial, low degree first.
    reduction_polynomial: Vec<u32>,
    primitive_element: Fe,
    exp_table: Vec<Fe>,
    log_table: Vec<u32>,
    add_table: Vec<Fe>,
    mul_table: Vec<Fe>,
    neg_table: Vec<Fe>,
    inv_table: Vec<Fe>,
}

impl PartialEq for FieldSpec {
    fn eq(&self, other: &Self) -> bool {
        self.q == other.q
    }
}

impl Eq for FieldSpec {}

/// Splits `q` into `(p, m)` with `q = p^m`, or `None` if `q` is not a prime power.
pub fn prime_power(q: u32) -> Option<(u32, u32)> {
    if q < 2 {
        return None;
    }
    let p = (2..=q).find(|d| q.is_multiple_of(*d))?;
    let mut rest = q;
    let mut m = 0;
    while rest.is_multiple_of(p) {
        rest /= p;
        m += 1;
    }
    (rest == 1).then_some((p, m))
}

// Polynomials over GF(p) as coefficient vectors, low degree first.

fn poly_trim(a: &mut Vec<u32>) {
    while a.len() > 1 && *a.last().unwrap() == 0 {
        a.pop();
    }
}

fn poly_rem(a: &[u32], b: &[u32], p: u32) -> Vec<u32> {
    let mut r = a.to_vec();
    poly_trim(&mut r);
    let db = b.len() - 1;
    let lead_inv = modinv(b[db], p);
    while r.len() > db && !(r.len() == 1 && r[0] == 0) {
        let shift = r.len() - 1 - db;
        let factor = r[r.len() - 1] * lead_inv % p;
        for (i, &c) in b.iter().enumerate() {
            let t = &mut r[shift + i];
            *t = (*t + p * p - factor * c % p) % p;
        }
        poly_trim(&mut r);
        if r.len() - 1 < db {
            break;
        }
    }
    r
}

fn modinv(a: u32, p: u32) -> u32 {
    (1..p)
        .find(|x| a * x % p == 1)
        .expect("non-zero residue mod prime")
}

fn is_irreducible(poly: &[u32], p: u32) -> bool {
    let deg = poly.len() - 1;
    if deg <= 1 {
        return deg == 1;
    }
    for d in 1..=deg / 2 {
        let count = p.pow(d as u32);
        for tail in 0..count {
            let mut divisor: Vec<u32> = (0..d).map(|i| tail / p.pow(i as u32) % p).collect();
            divisor.push(1);
            let r = poly_rem(poly, &divisor, p);
            if r.iter().all(|&c| c == 0) {
                return false;
            }
        }
    }
    true
}

/// Smallest monic irreducible polynomial of degree `m` over GF(p), comparing
/// coefficient sequences lexicographically from the constant term up.
fn smallest_irreducible(p: u32, m: u32) -> Vec<u32> {
    let count = p.pow(m);
    for rank in 0..count {
        // c_0 is the most significant digit of the lexicographic rank.
        let mut coeffs = vec![0u32; m as usize + 1];
        let mut r = rank;
        for i in (0..m as usize).rev() {
            coeffs[i] = r % p;
            r /= p;
        }
        coeffs[m as usize] = 1;
        if is_irreducible(&coeffs, p) {
            return coeffs;
        }
    }
    unreachable!("irreducible polynomials exist in every degree")
}

impl FieldSpec {
    /// Builds GF(q). Deterministic: the same `q` always yields identical tables.
    pub fn new(q: u32) -> Result<Self> {
        let (p, m) = prime_power(q).ok_or(Error::NotPrimePower(q))?;
        if q > MAX_ORDER {
            return Err(Error::FieldTooLarge(q));
        }
        let poly = smallest_irreducible(p, m);
        let qs = q as usize;
        let digits = |x: usize| -> Vec<u32> { (0..m).map(|i| (x as u32 / p.pow(i)) % p).collect() };
        let encode = |c: &[u32]| -> u8 {
            c.iter()
                .enumerate()
                .map(|(i, &d)| d * p.pow(i as u32))
                .sum::<u32>() as u8
        };

        let mut add_table = vec![Fe::ZERO; qs * qs];
        let mut mul_table = vec![Fe::ZERO; qs * qs];
        for a in 0..qs {
            let da = digits(a);
            for b in 0..qs {
                let db = digits(b);
                let sum: Vec<u32> = da.iter().zip(&db).map(|(x, y)| (x + y) % p).collect();
                add_table[a * qs + b] = Fe(encode(&sum));

                let mut prod = vec![0u32; 2 * m as usize - 1];
                for (i, x) in da.iter().enumerate() {
                    for (j, y) in db.iter().enumerate() {
                        prod[i + j] = (prod[i + j] + x * y) % p;
                    }
                }
                let mut r = poly_rem(&prod, &poly, p);
                r.resize(m as usize, 0);
                mul_table[a * qs + b] = Fe(encode(&r));
            }
        }
        let neg_table: Vec<Fe> = (0..qs)
            .map(|a| {
                let d: Vec<u32> = digits(a).iter().map(|x| (p - x) % p).collect();
                Fe(encode(&d))
            })
            .collect();

        let order_of = |g: usize| -> usize {
            let mut x = 1usize;
            for k in 1..qs {
                x = mul_table[x * qs + g].idx();
                if x == 1 {
                    return k;
                }
            }
            0
        };
        let primitive = (1..qs)
            .find(|&g| order_of(g) == qs - 1)
            .expect("multiplicative group is cyclic");

        let mut exp_table = Vec::with_capacity(qs - 1);
        let mut log_table = vec![0u32; qs];
        let mut x = 1usize;
        for k in 0..qs - 1 {
            exp_table.push(Fe(x as u8));
            log_table[x] = k as u32;
            x = mul_table[x * qs + primitive].idx();
        }
        let inv_table: Vec<Fe> = (0..qs)
            .map(|a| {
                if a == 0 {
                    Fe::ZERO
                } else {
                    let l = log_table[a] as usize;
                    exp_table[(qs - 1 - l) % (qs - 1)]
                }
            })
            .collect();

        Ok(FieldSpec {
            q,
            p,
            m,
            reduction_polynomial: poly,
            primitive_element: Fe(primitive as u8),
            exp_table,
            log_table,
            add_table,
            mul_table,
            neg_table,
            inv_table,
        })
    }

    pub fn q(&self) -> u32 {
        self.q
    }

    pub fn order(&self) -> usize {
        self.q as usize
    }

    pub fn characteristic(&self) -> u32 {
        self.p
    }

    pub fn degree(&self) -> u32 {
        self.m
    }

    pub fn reduction_polynomial(&self) -> &[u32] {
        &self.reduction_polynomial
    }

    pub fn primitive_element(&self) -> Fe {
        self.primitive_element
    }

    pub fn elem(&self, idx: u32) -> Result<Fe> {
        if idx < self.q {
            Ok(Fe(idx as u8))
        } else {
            Err(Error::ElementOutOfRange { idx, q: self.q })
        }
    }

    /// All elements in index order.
    pub fn elements(&self) -> impl Iterator<Item = Fe> + Clone {
        (0..self.q as u8).map(Fe)
    }

    pub fn nonzero(&self) -> impl Iterator<Item = Fe> + Clone {
        (1..self.q as u8).map(Fe)
    }

    /// `α^k` for the primitive element α.
    pub fn exp(&self, k: usize) -> Fe {
        self.exp_table[k % (self.order() - 1)]
    }

    /// Discrete logarithm to base α; `None` for zero.
    pub fn log(&self, a: Fe) -> Option<u32> {
        (!a.is_zero()).then(|| self.log_table[a.idx()])
    }

    #[inline]
    pub fn add(&self, a: Fe, b: Fe) -> Fe {
        self.add_table[a.idx() * self.order() + b.idx()]
    }

    #[inline]
    pub fn sub(&self, a: Fe, b: Fe) -> Fe {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn mul(&self, a: Fe, b: Fe) -> Fe {
        self.mul_table[a.idx() * self.order() + b.idx()]
    }

    #[inline]
    pub fn neg(&self, a: Fe) -> Fe {
        self.neg_table[a.idx()]
    }

    /// The inversion map: `a ↦ a⁻¹` on non-zero elements, `0 ↦ 0`.
    #[inline]
    pub fn inv_scalar(&self, a: Fe) -> Fe {
        self.inv_table[a.idx()]
    }

    /// `a / b`; panics on division by zero.
    #[inline]
    pub fn div(&self, a: Fe, b: Fe) -> Fe {
        assert!(!b.is_zero(), "division by zero in GF({})", self.q);
        self.mul(a, self.inv_scalar(b))
    }

    pub fn pow(&self, a: Fe, e: i64) -> Result<Fe> {
        if a.is_zero() {
            return match e {
                0 => Ok(Fe::ONE),
                e if e > 0 => Ok(Fe::ZERO),
                _ => Err(Error::ZeroToNegativePower),
            };
        }
        let n = self.order() as i64 - 1;
        let l = self.log_table[a.idx()] as i64;
        Ok(self.exp_table[(l * e).rem_euclid(n) as usize])
    }

    /// Sum of all non-zero elements (zero whenever q > 2).
    pub fn nonzero_sum(&self) -> Fe {
        self.nonzero().fold(Fe::ZERO, |acc, a| self.add(acc, a))
    }

    /// Embeds an integer via repeated addition of 1.
    pub fn from_int(&self, k: i64) -> Fe {
        let r = k.rem_euclid(self.p as i64) as u8;
        Fe(r)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const ORDERS: [u32; 18] = [
        2, 3, 4, 5, 7, 8, 9, 11, 13, 16, 17, 19, 23, 25, 27, 29, 31, 32,
    ];

    #[test]
    fn gf5_primitive_element_is_two() {
        let f = FieldSpec::new(5).unwrap();
        assert_eq!(f.primitive_element(), Fe(2));
        // powers of 2 mod 5 hit every non-zero residue
        let mut seen = [false; 5];
        let mut x = 1u32;
        for _ in 0..4 {
            x = x * 2 % 5;
            seen[x as usize] = true;
        }
        assert!(seen[1..].iter().all(|&s| s));
    }

    #[test]
    fn gf4_reduction_polynomial() {
        let f = FieldSpec::new(4).unwrap();
        assert_eq!(f.reduction_polynomial(), &[1, 1, 1]);
        assert_eq!(f.characteristic(), 2);
        assert_eq!(f.degree(), 2);
    }

    #[test]
    fn rejects_bad_orders() {
        assert_eq!(FieldSpec::new(6).unwrap_err(), Error::NotPrimePower(6));
        assert_eq!(FieldSpec::new(1).unwrap_err(), Error::NotPrimePower(1));
        assert_eq!(FieldSpec::new(37).unwrap_err(), Error::FieldTooLarge(37));
        assert_eq!(FieldSpec::new(64).unwrap_err(), Error::FieldTooLarge(64));
    }

    #[test]
    fn small_arithmetic() {
        let f = FieldSpec::new(5).unwrap();
        assert_eq!(f.add(Fe(2), Fe(4)), Fe(1));
        assert_eq!(f.mul(Fe(2), Fe(4)), Fe(3));
        assert_eq!(f.inv_scalar(Fe(0)), Fe(0));
        assert_eq!(f.inv_scalar(Fe(2)), Fe(3));
        assert_eq!(f.pow(Fe(2), 4).unwrap(), Fe(1));
        assert_eq!(f.pow(Fe(0), -1).unwrap_err(), Error::ZeroToNegativePower);
        assert_eq!(f.pow(Fe(2), -1).unwrap(), Fe(3));

        let f7 = FieldSpec::new(7).unwrap();
        assert_eq!(f7.pow(Fe(3), 0).unwrap(), Fe(1));
        assert_eq!(f7.primitive_element(), Fe(3));

        let f9 = FieldSpec::new(9).unwrap();
        let a = f9.primitive_element();
        assert_eq!(f9.pow(a, 8).unwrap(), Fe(1));
        assert_ne!(f9.pow(a, 4).unwrap(), Fe(1));

        let f4 = FieldSpec::new(4).unwrap();
        let alpha = f4.primitive_element();
        assert_eq!(f4.add(alpha, alpha), Fe(0));
        for a in f4.elements() {
            assert_eq!(f4.inv_scalar(a), f4.mul(a, a));
        }

        assert_eq!(FieldSpec::new(11).unwrap().primitive_element(), Fe(2));
    }

    #[test]
    fn nonzero_sums() {
        assert_eq!(FieldSpec::new(5).unwrap().nonzero_sum(), Fe(0));
        assert_eq!(FieldSpec::new(4).unwrap().nonzero_sum(), Fe(0));
        assert_eq!(FieldSpec::new(2).unwrap().nonzero_sum(), Fe(1));
        for q in ORDERS.into_iter().filter(|&q| q > 2) {
            assert_eq!(FieldSpec::new(q).unwrap().nonzero_sum(), Fe(0), "q = {q}");
        }
    }

    #[test]
    fn inversion_is_an_involution_everywhere() {
        for q in ORDERS {
            let f = FieldSpec::new(q).unwrap();
            for a in f.elements() {
                assert_eq!(f.inv_scalar(f.inv_scalar(a)), a);
                if !a.is_zero() {
                    assert_eq!(f.mul(a, f.inv_scalar(a)), Fe::ONE, "q = {q}, a = {a}");
                    assert_eq!(f.exp(f.log(a).unwrap() as usize), a);
                }
            }
        }
    }

    #[test]
    fn primitive_element_generates_group() {
        for q in ORDERS {
            let f = FieldSpec::new(q).unwrap();
            let mut seen = vec![false; q as usize];
            for k in 0..q as usize - 1 {
                let x = f.pow(f.primitive_element(), k as i64).unwrap();
                assert!(!seen[x.idx()]);
                seen[x.idx()] = true;
            }
            assert!(!seen[0]);
            // it is the smallest generator
            for g in 2..f.primitive_element().0 {
                let g = Fe(g);
                let hits: std::collections::BTreeSet<_> =
                    (0..q as i64 - 1).map(|k| f.pow(g, k).unwrap()).collect();
                assert!(hits.len() < q as usize - 1);
            }
        }
    }

    #[test]
    fn deterministic_tables() {
        for q in [8, 27, 32] {
            let a = FieldSpec::new(q).unwrap();
            let b = FieldSpec::new(q).unwrap();
            assert_eq!(a.mul_table, b.mul_table);
            assert_eq!(a.reduction_polynomial, b.reduction_polynomial);
        }
        assert_eq!(
            FieldSpec::new(8).unwrap().reduction_polynomial(),
            &[1, 0, 1, 1]
        );
    }

    #[test]
    fn field_axioms_exhaustive_small() {
        for q in [2, 3, 4, 5, 7, 8, 9] {
            let f = FieldSpec::new(q).unwrap();
            for a in f.elements() {
                assert_eq!(f.add(a, Fe::ZERO), a);
                assert_eq!(f.mul(a, Fe::ONE), a);
                assert_eq!(f.add(a, f.neg(a)), Fe::ZERO);
                for b in f.elements() {
                    assert_eq!(f.add(a, b), f.add(b, a));
                    assert_eq!(f.mul(a, b), f.mul(b, a));
                    for c in f.elements() {
                        assert_eq!(f.add(f.add(a, b), c), f.add(a, f.add(b, c)));
                        assert_eq!(f.mul(f.mul(a, b), c), f.mul(a, f.mul(b, c)));
                        assert_eq!(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
                    }
                }
            }
        }
    }

    #[test]
    fn field_axioms_randomized_large() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(0);
        for q in [11, 13, 16, 17, 19, 23, 25, 27, 29, 31, 32] {
            let f = FieldSpec::new(q).unwrap();
            for _ in 0..10_000 {
                let [a, b, c] = [0; 3].map(|_| Fe(rng.random_range(0..q) as u8));
                assert_eq!(f.add(f.add(a, b), c), f.add(a, f.add(b, c)));
                assert_eq!(f.mul(f.mul(a, b), c), f.mul(a, f.mul(b, c)));
                assert_eq!(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
                assert_eq!(f.mul(a, b), f.mul(b, a));
            }
        }
    }
}
