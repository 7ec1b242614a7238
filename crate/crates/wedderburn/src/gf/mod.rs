//! Exact arithmetic in finite fields `F_{p^m}`.
//!
//! A [`FiniteField`] fixes a characteristic `p` and a monic irreducible
//! modulus of degree `m` over `F_p`; elements are coefficient vectors of
//! length `m`, least-significant first.  The modulus is always the
//! lexicographically smallest irreducible of its degree, so two fields of
//! the same cardinality are identical and all downstream constructions
//! (generators, roots of unity, idempotents) are reproducible.

mod extension;
pub mod linalg;
pub mod poly;

pub use extension::{ExtensionWithRoot, RootChoice};
pub use poly::Poly;

use std::sync::{Arc, OnceLock};

use crate::arith::{factorize_u128, gcd_u128, is_prime_u128};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum GfError {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("{0} is not a prime power")]
    NotPrimePower(u128),
    #[error("{q} and {k} are not coprime")]
    NotCoprime { q: u128, k: u64 },
    #[error("field of characteristic {p} and degree {m} exceeds the supported size")]
    FieldTooLarge { p: u64, m: usize },
    #[error("division by zero")]
    DivisionByZero,
    #[error("element does not lie in the base field")]
    NotInBaseField,
}

/// An element of a [`FiniteField`], as a length-`m` coefficient vector over
/// `F_p`, least-significant first.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FqElem {
    pub(crate) coeffs: Vec<u64>,
}

impl FqElem {
    pub fn coeffs(&self) -> &[u64] {
        &self.coeffs
    }
}

/// The field `F_{p^m}` with the canonical (lexicographically smallest
/// irreducible) modulus.
#[derive(Debug)]
pub struct FiniteField {
    p: u64,
    m: usize,
    modulus: Vec<u64>,
    generator: OnceLock<FqElem>,
    unit_group_factors: OnceLock<Vec<(u128, u32)>>,
}

impl PartialEq for FiniteField {
    fn eq(&self, other: &Self) -> bool {
        self.p == other.p && self.m == other.m && self.modulus == other.modulus
    }
}
impl Eq for FiniteField {}

impl FiniteField {
    /// The prime field `F_p`.
    pub fn prime(p: u64) -> Result<Arc<Self>, GfError> {
        Self::extension(p, 1)
    }

    /// `F_{p^m}` with the canonical modulus.
    pub fn extension(p: u64, m: usize) -> Result<Arc<Self>, GfError> {
        if !is_prime_u128(p as u128) {
            return Err(GfError::NotPrime(p));
        }
        if p >= 1 << 31 || m == 0 || (m as u32 as f64) * (p as f64).log2() > 126.0 {
            return Err(GfError::FieldTooLarge { p, m });
        }
        let modulus = smallest_irreducible(p, m)?;
        Ok(Arc::new(FiniteField {
            p,
            m,
            modulus,
            generator: OnceLock::new(),
            unit_group_factors: OnceLock::new(),
        }))
    }

    /// The field with `q` elements, for `q` a prime power.
    pub fn with_cardinality(q: u128) -> Result<Arc<Self>, GfError> {
        let (p, m) = crate::arith::as_prime_power(q).ok_or(GfError::NotPrimePower(q))?;
        if p >= 1 << 31 {
            return Err(GfError::FieldTooLarge { p: 0, m: m as usize });
        }
        Self::extension(p as u64, m as usize)
    }

    pub fn characteristic(&self) -> u64 {
        self.p
    }

    pub fn degree(&self) -> usize {
        self.m
    }

    pub fn cardinality(&self) -> u128 {
        (self.p as u128).pow(self.m as u32)
    }

    pub fn modulus(&self) -> &[u64] {
        &self.modulus
    }

    pub fn zero(&self) -> FqElem {
        FqElem { coeffs: vec![0; self.m] }
    }

    pub fn one(&self) -> FqElem {
        self.scalar(1)
    }

    /// The prime-field scalar `c mod p` as a field element.
    pub fn scalar(&self, c: u64) -> FqElem {
        let mut coeffs = vec![0; self.m];
        coeffs[0] = c % self.p;
        FqElem { coeffs }
    }

    /// Builds an element from raw coefficients, reducing mod `p` and padding
    /// or rejecting on length mismatch.
    pub fn from_coeffs(&self, v: &[u64]) -> FqElem {
        assert!(v.len() <= self.m, "coefficient vector longer than field degree");
        let mut coeffs = vec![0; self.m];
        for (i, &c) in v.iter().enumerate() {
            coeffs[i] = c % self.p;
        }
        FqElem { coeffs }
    }

    pub fn is_zero(&self, a: &FqElem) -> bool {
        a.coeffs.iter().all(|&c| c == 0)
    }

    pub fn is_one(&self, a: &FqElem) -> bool {
        a.coeffs[0] == 1 && a.coeffs[1..].iter().all(|&c| c == 0)
    }

    pub fn add(&self, a: &FqElem, b: &FqElem) -> FqElem {
        let mut out = a.clone();
        self.flat_add_assign(&mut out.coeffs, &b.coeffs);
        out
    }

    pub fn sub(&self, a: &FqElem, b: &FqElem) -> FqElem {
        let mut out = a.clone();
        self.flat_sub_assign(&mut out.coeffs, &b.coeffs);
        out
    }

    pub fn neg(&self, a: &FqElem) -> FqElem {
        FqElem { coeffs: a.coeffs.iter().map(|&c| if c == 0 { 0 } else { self.p - c }).collect() }
    }

    pub fn mul(&self, a: &FqElem, b: &FqElem) -> FqElem {
        let mut out = self.zero();
        let mut scratch = vec![0u64; 2 * self.m];
        self.flat_mul_into(&a.coeffs, &b.coeffs, &mut out.coeffs, &mut scratch);
        out
    }

    pub fn inv(&self, a: &FqElem) -> Result<FqElem, GfError> {
        if self.is_zero(a) {
            return Err(GfError::DivisionByZero);
        }
        // Extended Euclid in F_p[x] on (a, modulus).
        let (g, u) = pf_ext_gcd(self.p, &a.coeffs, &self.modulus);
        debug_assert_eq!(pf_degree(&g), Some(0));
        let ginv = pf_inv_scalar(self.p, g[0]);
        let mut coeffs: Vec<u64> = u.iter().map(|&c| mulp(c, ginv, self.p)).collect();
        coeffs.resize(self.m, 0);
        Ok(FqElem { coeffs })
    }

    pub fn div(&self, a: &FqElem, b: &FqElem) -> Result<FqElem, GfError> {
        Ok(self.mul(a, &self.inv(b)?))
    }

    pub fn pow(&self, a: &FqElem, mut e: u128) -> FqElem {
        let mut base = a.clone();
        let mut acc = self.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            base = self.mul(&base, &base);
            e >>= 1;
        }
        acc
    }

    /// Inverse of the integer `n` in the prime field, lifted into this field.
    pub fn inv_scalar(&self, n: u64) -> Result<FqElem, GfError> {
        let c = n % self.p;
        if c == 0 {
            return Err(GfError::DivisionByZero);
        }
        Ok(self.scalar(pf_inv_scalar(self.p, c)))
    }

    fn unit_group_factors(&self) -> &[(u128, u32)] {
        self.unit_group_factors.get_or_init(|| factorize_u128(self.cardinality() - 1))
    }

    /// Multiplicative order of a nonzero element.
    pub fn element_order(&self, a: &FqElem) -> u128 {
        assert!(!self.is_zero(a));
        let mut order = self.cardinality() - 1;
        for &(r, mult) in self.unit_group_factors() {
            for _ in 0..mult {
                if self.is_one(&self.pow(a, order / r)) {
                    order /= r;
                } else {
                    break;
                }
            }
        }
        order
    }

    /// The deterministic multiplicative generator: the first element, in
    /// coefficient-counter order, whose order is `p^m - 1`.
    pub fn multiplicative_generator(&self) -> FqElem {
        self.generator
            .get_or_init(|| {
                let n_units = self.cardinality() - 1;
                let mut counter: u128 = 1;
                loop {
                    let cand = self.element_from_counter(counter);
                    if !self.is_zero(&cand) && self.element_order(&cand) == n_units {
                        return cand;
                    }
                    counter += 1;
                }
            })
            .clone()
    }

    /// Element whose base-`p` digits (least significant first) are the
    /// coefficients; the enumeration order behind "smallest" choices.
    fn element_from_counter(&self, mut n: u128) -> FqElem {
        let mut coeffs = vec![0u64; self.m];
        for c in coeffs.iter_mut() {
            *c = (n % self.p as u128) as u64;
            n /= self.p as u128;
        }
        debug_assert_eq!(n, 0, "counter out of field range");
        FqElem { coeffs }
    }

    // ---- flat-slice kernels used by the group algebra ----

    pub fn flat_add_assign(&self, dst: &mut [u64], src: &[u64]) {
        for (d, &s) in dst.iter_mut().zip(src) {
            *d = addp(*d, s, self.p);
        }
    }

    pub fn flat_sub_assign(&self, dst: &mut [u64], src: &[u64]) {
        for (d, &s) in dst.iter_mut().zip(src) {
            *d = subp(*d, s, self.p);
        }
    }

    /// `out = a * b` reduced by the modulus; `scratch` must hold `2m` words.
    pub fn flat_mul_into(&self, a: &[u64], b: &[u64], out: &mut [u64], scratch: &mut [u64]) {
        let m = self.m;
        if m == 1 {
            out[0] = mulp(a[0], b[0], self.p);
            return;
        }
        let prod = &mut scratch[..2 * m];
        prod.fill(0);
        for (i, &ai) in a.iter().enumerate() {
            if ai == 0 {
                continue;
            }
            for (j, &bj) in b.iter().enumerate() {
                prod[i + j] = addp(prod[i + j], mulp(ai, bj, self.p), self.p);
            }
        }
        // Reduce by the monic modulus.
        for i in (m..2 * m).rev() {
            let c = prod[i];
            if c == 0 {
                continue;
            }
            prod[i] = 0;
            for j in 0..m {
                let t = mulp(c, self.modulus[j], self.p);
                prod[i - m + j] = subp(prod[i - m + j], t, self.p);
            }
        }
        out.copy_from_slice(&prod[..m]);
    }

    /// `dst += a * b` on length-`m` slices.
    pub fn flat_addmul(&self, dst: &mut [u64], a: &[u64], b: &[u64], scratch: &mut [u64]) {
        if self.m == 1 {
            dst[0] = addp(dst[0], mulp(a[0], b[0], self.p), self.p);
            return;
        }
        let (out, rest) = scratch.split_at_mut(self.m);
        self.flat_mul_into(a, b, out, rest);
        self.flat_add_assign(dst, out);
    }

    /// Scratch size required by [`FiniteField::flat_addmul`].
    pub fn scratch_len(&self) -> usize {
        3 * self.m
    }
}

#[inline]
pub(crate) fn addp(a: u64, b: u64, p: u64) -> u64 {
    let s = a + b;
    if s >= p {
        s - p
    } else {
        s
    }
}

#[inline]
pub(crate) fn subp(a: u64, b: u64, p: u64) -> u64 {
    if a >= b {
        a - b
    } else {
        a + p - b
    }
}

#[inline]
pub(crate) fn mulp(a: u64, b: u64, p: u64) -> u64 {
    // p < 2^31 so the product fits in u64.
    a * b % p
}

pub(crate) fn pf_inv_scalar(p: u64, a: u64) -> u64 {
    // Fermat.
    crate::arith::pow_mod_u128(a as u128, (p - 2) as u128, p as u128) as u64
}

// ---- dense polynomials over F_p, used for moduli and element inversion ----

pub(crate) fn pf_degree(a: &[u64]) -> Option<usize> {
    a.iter().rposition(|&c| c != 0)
}

fn pf_trim(mut a: Vec<u64>) -> Vec<u64> {
    while a.last() == Some(&0) {
        a.pop();
    }
    a
}

fn pf_rem(p: u64, mut a: Vec<u64>, b: &[u64]) -> Vec<u64> {
    let db = pf_degree(b).expect("division by zero polynomial");
    let binv = pf_inv_scalar(p, b[db]);
    while let Some(da) = pf_degree(&a) {
        if da < db {
            break;
        }
        let c = mulp(a[da], binv, p);
        for j in 0..=db {
            a[da - db + j] = subp(a[da - db + j], mulp(c, b[j], p), p);
        }
    }
    pf_trim(a)
}

/// Returns `(g, u)` with `g = gcd(a, b)` and `u*a ≡ g (mod b)`.
fn pf_ext_gcd(p: u64, a: &[u64], b: &[u64]) -> (Vec<u64>, Vec<u64>) {
    let mut r0 = pf_trim(b.to_vec());
    let mut r1 = pf_trim(a.to_vec());
    let mut u0: Vec<u64> = vec![];
    let mut u1: Vec<u64> = vec![1];
    while !r1.is_empty() {
        // (q, rem) = r0 / r1
        let d1 = pf_degree(&r1).unwrap();
        let inv = pf_inv_scalar(p, r1[d1]);
        let mut q = vec![0u64; pf_degree(&r0).map_or(0, |d| d.saturating_sub(d1)) + 1];
        let mut rem = r0.clone();
        while let Some(d0) = pf_degree(&rem) {
            if d0 < d1 {
                break;
            }
            let c = mulp(rem[d0], inv, p);
            q[d0 - d1] = c;
            for j in 0..=d1 {
                rem[d0 - d1 + j] = subp(rem[d0 - d1 + j], mulp(c, r1[j], p), p);
            }
        }
        rem = pf_trim(rem);
        // u_next = u0 - q * u1
        let mut qu = vec![0u64; q.len() + u1.len()];
        for (i, &qi) in q.iter().enumerate() {
            if qi == 0 {
                continue;
            }
            for (j, &uj) in u1.iter().enumerate() {
                qu[i + j] = addp(qu[i + j], mulp(qi, uj, p), p);
            }
        }
        let n = qu.len().max(u0.len());
        let mut unext = vec![0u64; n];
        for i in 0..n {
            let x = u0.get(i).copied().unwrap_or(0);
            let y = qu.get(i).copied().unwrap_or(0);
            unext[i] = subp(x, y, p);
        }
        r0 = std::mem::replace(&mut r1, rem);
        u0 = std::mem::replace(&mut u1, pf_trim(unext));
    }
    (r0, u0)
}

/// The lexicographically smallest monic irreducible of degree `m` over `F_p`
/// (coefficient counter order: constant term least significant).
fn smallest_irreducible(p: u64, m: usize) -> Result<Vec<u64>, GfError> {
    if m == 1 {
        // x itself; F_p[x]/(x) is F_p.
        return Ok(vec![0, 1]);
    }
    let mut counter: u128 = 0;
    loop {
        let mut f = vec![0u64; m + 1];
        let mut n = counter;
        for c in f.iter_mut().take(m) {
            *c = (n % p as u128) as u64;
            n /= p as u128;
        }
        if n != 0 {
            // Exhausted all monic polynomials of degree m without finding an
            // irreducible one; impossible over a finite field.
            unreachable!("no irreducible polynomial of degree {m} over F_{p}");
        }
        f[m] = 1;
        if pf_is_irreducible(p, &f) {
            return Ok(f);
        }
        counter += 1;
    }
}

/// Irreducibility over `F_p` via the Frobenius criterion:
/// `x^{p^m} ≡ x (mod f)` and `gcd(x^{p^{m/r}} - x, f) = 1` for primes `r | m`.
fn pf_is_irreducible(p: u64, f: &[u64]) -> bool {
    let m = match pf_degree(f) {
        Some(d) if d >= 1 => d,
        _ => return false,
    };
    if m == 1 {
        return true;
    }
    let xp_pow = |e: u32| -> Vec<u64> {
        // x^{p^e} mod f by iterated p-th powers.
        let mut acc = vec![0u64, 1]; // x
        for _ in 0..e {
            acc = pf_powmod(p, &acc, p as u128, f);
        }
        acc
    };
    let xq = xp_pow(m as u32);
    // x^{p^m} - x must be 0 mod f.
    let mut diff = xq;
    if diff.len() < 2 {
        diff.resize(2, 0);
    }
    diff[1] = subp(diff[1], 1, p);
    if !pf_trim(diff).is_empty() {
        return false;
    }
    for (r, _) in factorize_u128(m as u128) {
        let e = m / r as usize;
        let mut g = xp_pow(e as u32);
        if g.len() < 2 {
            g.resize(2, 0);
        }
        g[1] = subp(g[1], 1, p);
        let (gcd, _) = pf_ext_gcd(p, &pf_trim(g), f);
        if pf_degree(&gcd) != Some(0) {
            return false;
        }
    }
    true
}

fn pf_powmod(p: u64, base: &[u64], mut e: u128, modulus: &[u64]) -> Vec<u64> {
    let mut acc = vec![1u64];
    let mut b = pf_rem(p, base.to_vec(), modulus);
    while e > 0 {
        if e & 1 == 1 {
            acc = pf_rem(p, pf_mul(p, &acc, &b), modulus);
        }
        b = pf_rem(p, pf_mul(p, &b, &b), modulus);
        e >>= 1;
    }
    acc
}

fn pf_mul(p: u64, a: &[u64], b: &[u64]) -> Vec<u64> {
    if a.is_empty() || b.is_empty() {
        return vec![];
    }
    let mut out = vec![0u64; a.len() + b.len() - 1];
    for (i, &ai) in a.iter().enumerate() {
        if ai == 0 {
            continue;
        }
        for (j, &bj) in b.iter().enumerate() {
            out[i + j] = addp(out[i + j], mulp(ai, bj, p), p);
        }
    }
    out
}

/// Smallest `o ≥ 1` with `q^o ≡ 1 (mod k)`.
pub fn mult_order(q: u128, k: u64) -> Result<u64, GfError> {
    assert!(k >= 1, "modulus must be positive");
    if gcd_u128(q % k as u128, k as u128) != 1 && k > 1 {
        return Err(GfError::NotCoprime { q, k });
    }
    if k == 1 {
        return Ok(1);
    }
    let k128 = k as u128;
    let q0 = q % k128;
    let mut acc = q0;
    let mut o = 1u64;
    while acc != 1 {
        acc = acc * q0 % k128;
        o += 1;
    }
    Ok(o)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn mult_order_examples() {
        assert_eq!(mult_order(7, 1).unwrap(), 1);
        assert_eq!(mult_order(3, 8).unwrap(), 2);
        // q ≡ 2 or 3 (mod 5) has order 4 mod 5.
        assert_eq!(mult_order(7, 5).unwrap(), 4);
        assert_eq!(mult_order(13, 5).unwrap(), 4);
        assert_eq!(mult_order(41, 5).unwrap(), 1);
        assert_eq!(mult_order(19, 5).unwrap(), 2);
        assert!(matches!(mult_order(10, 5), Err(GfError::NotCoprime { .. })));
    }

    #[test]
    fn f4_is_the_usual_one() {
        let f4 = FiniteField::extension(2, 2).unwrap();
        // Smallest irreducible quadratic over F_2 is x^2 + x + 1.
        assert_eq!(f4.modulus(), &[1, 1, 1]);
        let x = f4.from_coeffs(&[0, 1]);
        let x2 = f4.mul(&x, &x);
        assert_eq!(x2, f4.from_coeffs(&[1, 1])); // x^2 = x + 1
        assert!(f4.is_one(&f4.pow(&x, 3)));
        assert_eq!(f4.multiplicative_generator(), x);
    }

    #[test]
    fn f7_generator_is_three() {
        let f7 = FiniteField::prime(7).unwrap();
        assert_eq!(f7.multiplicative_generator(), f7.scalar(3));
        assert_eq!(f7.element_order(&f7.scalar(2)), 3);
    }

    #[test]
    fn inverse_and_division() {
        let f9 = FiniteField::extension(3, 2).unwrap();
        for n in 1..9u128 {
            let a = f9.element_from_counter(n);
            let ainv = f9.inv(&a).unwrap();
            assert!(f9.is_one(&f9.mul(&a, &ainv)));
        }
        assert_eq!(f9.inv(&f9.zero()), Err(GfError::DivisionByZero));
    }

    #[test]
    fn frobenius_fixes_exactly_the_prime_field() {
        let f8 = FiniteField::extension(2, 3).unwrap();
        let fixed: Vec<u128> =
            (0..8u128).filter(|&n| {
                let a = f8.element_from_counter(n);
                f8.pow(&a, 2) == a
            })
            .collect();
        assert_eq!(fixed, vec![0, 1]);
    }
}
