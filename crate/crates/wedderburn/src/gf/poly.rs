//! Dense univariate polynomials over a [`FiniteField`] and their complete
//! factorization (squarefree split, distinct-degree, Cantor-Zassenhaus
//! equal-degree splitting with a seeded probe sequence).
//!
//! The factor list itself is canonical — monic irreducible factors sorted by
//! degree and then by coefficient vectors — so the output does not depend on
//! the probe seed.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{FiniteField, FqElem};

/// Coefficients least-significant first, no trailing zeros (zero = empty).
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Poly {
    coeffs: Vec<FqElem>,
}

impl Poly {
    pub fn zero() -> Self {
        Poly { coeffs: vec![] }
    }

    pub fn from_coeffs(field: &FiniteField, mut coeffs: Vec<FqElem>) -> Self {
        while coeffs.last().is_some_and(|c| field.is_zero(c)) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    /// The monomial `x`.
    pub fn x(field: &FiniteField) -> Self {
        Poly { coeffs: vec![field.zero(), field.one()] }
    }

    pub fn constant(field: &FiniteField, c: FqElem) -> Self {
        Self::from_coeffs(field, vec![c])
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        if self.coeffs.is_empty() {
            None
        } else {
            Some(self.coeffs.len() - 1)
        }
    }

    pub fn coeffs(&self) -> &[FqElem] {
        &self.coeffs
    }

    pub fn coeff(&self, field: &FiniteField, i: usize) -> FqElem {
        self.coeffs.get(i).cloned().unwrap_or_else(|| field.zero())
    }

    pub fn lead(&self) -> Option<&FqElem> {
        self.coeffs.last()
    }

    pub fn is_one(&self, field: &FiniteField) -> bool {
        self.coeffs.len() == 1 && field.is_one(&self.coeffs[0])
    }
}

pub fn add(field: &FiniteField, a: &Poly, b: &Poly) -> Poly {
    let n = a.coeffs.len().max(b.coeffs.len());
    let coeffs = (0..n)
        .map(|i| field.add(&a.coeff(field, i), &b.coeff(field, i)))
        .collect();
    Poly::from_coeffs(field, coeffs)
}

pub fn sub(field: &FiniteField, a: &Poly, b: &Poly) -> Poly {
    let n = a.coeffs.len().max(b.coeffs.len());
    let coeffs = (0..n)
        .map(|i| field.sub(&a.coeff(field, i), &b.coeff(field, i)))
        .collect();
    Poly::from_coeffs(field, coeffs)
}

pub fn mul(field: &FiniteField, a: &Poly, b: &Poly) -> Poly {
    if a.is_zero() || b.is_zero() {
        return Poly::zero();
    }
    let mut coeffs = vec![field.zero(); a.coeffs.len() + b.coeffs.len() - 1];
    for (i, ai) in a.coeffs.iter().enumerate() {
        if field.is_zero(ai) {
            continue;
        }
        for (j, bj) in b.coeffs.iter().enumerate() {
            let t = field.mul(ai, bj);
            coeffs[i + j] = field.add(&coeffs[i + j], &t);
        }
    }
    Poly::from_coeffs(field, coeffs)
}

pub fn scale(field: &FiniteField, a: &Poly, c: &FqElem) -> Poly {
    let coeffs = a.coeffs.iter().map(|x| field.mul(x, c)).collect();
    Poly::from_coeffs(field, coeffs)
}

/// `(quotient, remainder)` with `a = q*b + r`, `deg r < deg b`.
pub fn divrem(field: &FiniteField, a: &Poly, b: &Poly) -> (Poly, Poly) {
    let db = b.degree().expect("polynomial division by zero");
    let lead_inv = field.inv(b.lead().unwrap()).expect("nonzero leading coefficient");
    let mut rem = a.coeffs.clone();
    let mut quot = vec![field.zero(); a.coeffs.len().saturating_sub(db)];
    while rem.len() > db {
        let da = rem.len() - 1;
        let c = field.mul(&rem[da], &lead_inv);
        if !field.is_zero(&c) {
            quot[da - db] = c.clone();
            for j in 0..=db {
                let t = field.mul(&c, &b.coeffs[j]);
                rem[da - db + j] = field.sub(&rem[da - db + j], &t);
            }
        }
        rem.pop();
        while rem.last().is_some_and(|c| field.is_zero(c)) {
            rem.pop();
        }
    }
    (Poly::from_coeffs(field, quot), Poly { coeffs: rem })
}

pub fn rem(field: &FiniteField, a: &Poly, b: &Poly) -> Poly {
    divrem(field, a, b).1
}

/// Monic gcd.
pub fn gcd(field: &FiniteField, a: &Poly, b: &Poly) -> Poly {
    let mut r0 = a.clone();
    let mut r1 = b.clone();
    while !r1.is_zero() {
        let r = rem(field, &r0, &r1);
        r0 = std::mem::replace(&mut r1, r);
    }
    make_monic(field, &r0)
}

pub fn make_monic(field: &FiniteField, a: &Poly) -> Poly {
    match a.lead() {
        None => Poly::zero(),
        Some(l) if field.is_one(l) => a.clone(),
        Some(l) => {
            let inv = field.inv(l).unwrap();
            scale(field, a, &inv)
        }
    }
}

pub fn derivative(field: &FiniteField, a: &Poly) -> Poly {
    if a.coeffs.len() <= 1 {
        return Poly::zero();
    }
    let p = field.characteristic();
    let coeffs = a.coeffs[1..]
        .iter()
        .enumerate()
        .map(|(i, c)| {
            let k = field.scalar((i as u64 + 1) % p);
            field.mul(c, &k)
        })
        .collect();
    Poly::from_coeffs(field, coeffs)
}

pub fn eval(field: &FiniteField, a: &Poly, x: &FqElem) -> FqElem {
    let mut acc = field.zero();
    for c in a.coeffs.iter().rev() {
        acc = field.mul(&acc, x);
        acc = field.add(&acc, c);
    }
    acc
}

/// `base^e mod modulus`.
pub fn powmod(field: &FiniteField, base: &Poly, mut e: u128, modulus: &Poly) -> Poly {
    let mut acc = Poly::constant(field, field.one());
    let mut b = rem(field, base, modulus);
    while e > 0 {
        if e & 1 == 1 {
            acc = rem(field, &mul(field, &acc, &b), modulus);
        }
        b = rem(field, &mul(field, &b, &b), modulus);
        e >>= 1;
    }
    acc
}

/// `f(x) = g(x^p)` has `g` with coefficients the p-th roots of `f`'s.
fn pth_root_poly(field: &FiniteField, f: &Poly) -> Poly {
    let p = field.characteristic() as usize;
    // p-th root in F_{p^m} is Frobenius applied m-1 times.
    let root_exp = (field.characteristic() as u128).pow(field.degree() as u32 - 1);
    let mut coeffs = Vec::new();
    for (i, c) in f.coeffs.iter().enumerate() {
        if i % p == 0 {
            coeffs.push(field.pow(c, root_exp));
        } else {
            debug_assert!(field.is_zero(c), "not a p-th power polynomial");
        }
    }
    Poly::from_coeffs(field, coeffs)
}

/// Squarefree decomposition: returns `(g, mult)` pairs with
/// `f = lead * prod g^mult`, each `g` monic squarefree, pairwise coprime.
fn squarefree_decomposition(field: &FiniteField, f: &Poly) -> Vec<(Poly, usize)> {
    let f = make_monic(field, f);
    let mut out = Vec::new();
    if f.degree().unwrap_or(0) == 0 {
        return out;
    }
    let deriv = derivative(field, &f);
    if deriv.is_zero() {
        let r = pth_root_poly(field, &f);
        for (g, m) in squarefree_decomposition(field, &r) {
            out.push((g, m * field.characteristic() as usize));
        }
        return out;
    }
    let mut c = gcd(field, &f, &deriv);
    let mut w = divrem(field, &f, &c).0;
    let mut i = 1usize;
    while !w.is_one(field) {
        let y = gcd(field, &w, &c);
        let z = divrem(field, &w, &y).0;
        if z.degree().unwrap_or(0) > 0 {
            out.push((z, i));
        }
        i += 1;
        w = y;
        c = divrem(field, &c, &w).0;
    }
    if !c.is_one(field) {
        let r = pth_root_poly(field, &c);
        for (g, m) in squarefree_decomposition(field, &r) {
            out.push((g, m * field.characteristic() as usize));
        }
    }
    out
}

/// Splits a monic squarefree polynomial whose irreducible factors all have
/// degree `d` (Cantor-Zassenhaus).
fn equal_degree_split(field: &FiniteField, f: &Poly, d: usize, rng: &mut ChaCha8Rng, out: &mut Vec<Poly>) {
    let n = f.degree().unwrap();
    if n == d {
        out.push(f.clone());
        return;
    }
    let q = field.cardinality();
    loop {
        // Random probe of degree < n.
        let coeffs: Vec<FqElem> = (0..n)
            .map(|_| {
                let c: u64 = rng.gen();
                let mut v = vec![0u64; field.degree()];
                let mut x = c;
                for vi in v.iter_mut() {
                    *vi = x % field.characteristic();
                    x /= field.characteristic();
                }
                field.from_coeffs(&v)
            })
            .collect();
        let a = Poly::from_coeffs(field, coeffs);
        if a.degree().unwrap_or(0) == 0 {
            continue;
        }
        let g0 = gcd(field, &a, f);
        if g0.degree().unwrap() > 0 && g0.degree().unwrap() < n {
            equal_degree_split(field, &g0, d, rng, out);
            equal_degree_split(field, &divrem(field, f, &g0).0, d, rng, out);
            return;
        }
        let b = if field.characteristic() == 2 {
            // Absolute trace map: sum of a^{2^i} for i < m*d.
            let reps = field.degree() * d;
            let mut acc = rem(field, &a, f);
            let mut t = acc.clone();
            for _ in 1..reps {
                t = rem(field, &mul(field, &t, &t), f);
                acc = add(field, &acc, &t);
            }
            acc
        } else {
            // a^{(q^d-1)/2} = norm(a)^{(q-1)/2} with norm via Frobenius chain,
            // avoiding the overflowing exponent q^d.
            let mut norm = rem(field, &a, f);
            let mut frob = norm.clone();
            for _ in 1..d {
                frob = powmod(field, &frob, q, f);
                norm = rem(field, &mul(field, &norm, &frob), f);
            }
            powmod(field, &norm, (q - 1) / 2, f)
        };
        let shifted = sub(field, &b, &Poly::constant(field, field.one()));
        let g = gcd(field, &shifted, f);
        let dg = g.degree().unwrap_or(0);
        if dg > 0 && dg < n {
            equal_degree_split(field, &g, d, rng, out);
            equal_degree_split(field, &divrem(field, f, &g).0, d, rng, out);
            return;
        }
        let g2 = gcd(field, &b, f);
        let dg2 = g2.degree().unwrap_or(0);
        if dg2 > 0 && dg2 < n {
            equal_degree_split(field, &g2, d, rng, out);
            equal_degree_split(field, &divrem(field, f, &g2).0, d, rng, out);
            return;
        }
    }
}

/// Complete factorization of a nonzero polynomial into monic irreducibles
/// with multiplicities, in canonical order (degree, then coefficients).
///
/// The probe `seed` only affects the internal splitting path; the returned
/// factorization is unique and sorted, hence deterministic regardless.
pub fn factor(field: &FiniteField, f: &Poly, seed: u64) -> Vec<(Poly, usize)> {
    assert!(!f.is_zero(), "cannot factor the zero polynomial");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out: Vec<(Poly, usize)> = Vec::new();
    for (g, mult) in squarefree_decomposition(field, f) {
        // Distinct-degree split of the squarefree g.
        let mut g = g;
        let q = field.cardinality();
        let x = Poly::x(field);
        let mut h = rem(field, &x, &g);
        let mut d = 0usize;
        while let Some(dg) = g.degree() {
            if dg == 0 {
                break;
            }
            d += 1;
            if 2 * d > dg {
                // Remainder is irreducible.
                out.push((g.clone(), mult));
                break;
            }
            h = powmod(field, &h, q, &g);
            let diff = sub(field, &h, &rem(field, &x, &g));
            let factor_d = gcd(field, &diff, &g);
            if factor_d.degree().unwrap_or(0) > 0 {
                let mut pieces = Vec::new();
                equal_degree_split(field, &factor_d, d, &mut rng, &mut pieces);
                for piece in pieces {
                    out.push((piece, mult));
                }
                g = divrem(field, &g, &factor_d).0;
                h = rem(field, &h, &g);
            }
        }
    }
    out.sort_by(|(a, _), (b, _)| {
        a.coeffs.len().cmp(&b.coeffs.len()).then_with(|| a.coeffs.cmp(&b.coeffs))
    });
    out
}

/// Irreducibility test (used for moduli and for oracle certification).
pub fn is_irreducible(field: &FiniteField, f: &Poly) -> bool {
    let n = match f.degree() {
        Some(d) if d >= 1 => d,
        _ => return false,
    };
    if n == 1 {
        return true;
    }
    let q = field.cardinality();
    let x = Poly::x(field);
    // x^{q^n} computed by n-fold q-power Frobenius.
    let mut xq = rem(field, &x, f);
    let mut frob_chain = Vec::with_capacity(n);
    for _ in 0..n {
        xq = powmod(field, &xq, q, f);
        frob_chain.push(xq.clone());
    }
    if sub(field, &frob_chain[n - 1], &rem(field, &x, f)).degree().is_some() {
        return false;
    }
    for (r, _) in crate::arith::factorize_u128(n as u128) {
        let e = n / r as usize;
        let diff = sub(field, &frob_chain[e - 1], &rem(field, &x, f));
        if gcd(field, &diff, f).degree() != Some(0) {
            return false;
        }
    }
    true
}

/// All roots of `f` in the coefficient field, sorted.
pub fn roots(field: &FiniteField, f: &Poly, seed: u64) -> Vec<FqElem> {
    let mut out: Vec<FqElem> = factor(field, f, seed)
        .into_iter()
        .filter(|(g, _)| g.degree() == Some(1))
        .map(|(g, _)| field.neg(&g.coeffs[0]))
        .collect();
    out.sort();
    out.dedup();
    out
}

/// Lifts a polynomial with prime-field coefficients into `target`.
pub fn map_coeffs(target: &FiniteField, f_coeffs: &[u64]) -> Poly {
    let coeffs = f_coeffs.iter().map(|&c| target.scalar(c)).collect();
    Poly::from_coeffs(target, coeffs)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gf::FiniteField;

    fn poly_from_ints(field: &FiniteField, ints: &[u64]) -> Poly {
        Poly::from_coeffs(field, ints.iter().map(|&c| field.scalar(c)).collect())
    }

    #[test]
    fn x2_minus_1_over_f7() {
        let f7 = FiniteField::prime(7).unwrap();
        let f = poly_from_ints(&f7, &[6, 0, 1]); // x^2 - 1
        let factors = factor(&f7, &f, 0);
        assert_eq!(factors.len(), 2);
        // (x - 1)(x + 1) = (x + 6)(x + 1); sorted by coefficients: x+1 < x+6.
        assert_eq!(factors[0].0, poly_from_ints(&f7, &[1, 1]));
        assert_eq!(factors[1].0, poly_from_ints(&f7, &[6, 1]));
        assert_eq!(factors[0].1, 1);
    }

    #[test]
    fn x3_minus_1_over_f2() {
        let f2 = FiniteField::prime(2).unwrap();
        let f = poly_from_ints(&f2, &[1, 0, 0, 1]); // x^3 + 1 = x^3 - 1
        let factors = factor(&f2, &f, 0);
        assert_eq!(factors.len(), 2);
        assert_eq!(factors[0].0, poly_from_ints(&f2, &[1, 1]));
        assert_eq!(factors[1].0, poly_from_ints(&f2, &[1, 1, 1]));
    }

    #[test]
    fn irreducible_input_returned_whole() {
        let f3 = FiniteField::prime(3).unwrap();
        let f = poly_from_ints(&f3, &[1, 0, 1]); // x^2 + 1, irreducible mod 3
        assert!(is_irreducible(&f3, &f));
        let factors = factor(&f3, &f, 0);
        assert_eq!(factors, vec![(f, 1)]);
    }

    #[test]
    fn multiplicities_and_product_roundtrip() {
        let f5 = FiniteField::prime(5).unwrap();
        // (x+1)^2 (x^2+2) over F_5; x^2+2 irreducible (squares mod 5: 0,1,4).
        let a = poly_from_ints(&f5, &[1, 1]);
        let b = poly_from_ints(&f5, &[2, 0, 1]);
        let f = mul(&f5, &mul(&f5, &a, &a), &b);
        let factors = factor(&f5, &f, 7);
        assert_eq!(factors, vec![(a.clone(), 2), (b.clone(), 1)]);
        // Multiply back.
        let mut prod = Poly::constant(&f5, f5.one());
        for (g, m) in &factors {
            for _ in 0..*m {
                prod = mul(&f5, &prod, g);
            }
        }
        assert_eq!(prod, f);
    }

    #[test]
    fn factor_over_extension_field() {
        let f4 = FiniteField::extension(2, 2).unwrap();
        // x^3 - 1 over F_4 splits into three linear factors.
        let f = poly_from_ints(&f4, &[1, 0, 0, 1]);
        let factors = factor(&f4, &f, 0);
        assert_eq!(factors.len(), 3);
        assert!(factors.iter().all(|(g, m)| g.degree() == Some(1) && *m == 1));
        let rs = roots(&f4, &f, 0);
        assert_eq!(rs.len(), 3);
        for r in &rs {
            assert!(f4.is_one(&f4.pow(r, 3)));
        }
    }

    #[test]
    fn inseparable_power_factorizations() {
        let f3 = FiniteField::prime(3).unwrap();
        // (x+2)^3 = x^3 + 2 over F_3 (Frobenius), derivative zero.
        let f = poly_from_ints(&f3, &[2, 0, 0, 1]);
        let factors = factor(&f3, &f, 0);
        assert_eq!(factors, vec![(poly_from_ints(&f3, &[2, 1]), 3)]);
    }
}
