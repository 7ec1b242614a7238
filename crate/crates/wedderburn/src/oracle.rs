//! Algorithm-independent ground truth: splits the center of `F_q G` along
//! class sums into primitive idempotents and recovers each component's
//! `(n, l)` from ideal dimensions.
//!
//! The center is commutative semisimple, so it is a product of finite
//! fields; splitting proceeds by factoring minimal polynomials of center
//! elements (class sums first, then seeded random probes) and refining
//! blocks with the Chinese-remainder idempotents.  Nothing here calls the
//! Shoda-pair machinery.

use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::algebra::{ideal_dimension, AlgebraElement, AlgebraError};
use crate::decomposer::DecompositionReport;
use crate::gf::poly::{self, Poly};
use crate::gf::{FiniteField, FqElem, GfError};
use crate::group::{FiniteGroup, GroupError};

/// The oracle handles groups up to this order.
pub const ORACLE_ORDER_BOUND: usize = 1200;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum OracleError {
    #[error("F_q G is not semisimple: characteristic {p} divides the group order {order}")]
    NotSemisimple { p: u64, order: usize },
    #[error("group of order {order} exceeds the oracle bound {bound}")]
    GroupTooLarge { order: usize, bound: usize },
    #[error("element is not central (not constant on conjugacy classes)")]
    NotCentral,
    #[error("ideal dimension {ideal_dim} is not a square multiple of the center dimension {center_dim}")]
    NonSquareDimension { ideal_dim: usize, center_dim: usize },
    #[error("internal invariant violated: {0}")]
    Internal(String),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error(transparent)]
    Gf(#[from] GfError),
}

/// The center `Z(F_q G)` with its class-sum basis and structure constants.
#[derive(Debug, Clone)]
pub struct CenterAlgebra {
    group: FiniteGroup,
    field: Arc<FiniteField>,
    classes: Vec<Vec<usize>>,
    /// `struct_consts[i][j][k]`: coefficient of class `k` in `S_i S_j`,
    /// as a prime-field scalar (the counts are integers).
    struct_consts: Vec<Vec<Vec<u64>>>,
    /// Index of the identity's (singleton) class.
    unit_class: usize,
}

impl CenterAlgebra {
    pub fn dimension(&self) -> usize {
        self.classes.len()
    }

    pub fn classes(&self) -> &[Vec<usize>] {
        &self.classes
    }

    /// Coordinates of the algebra unit (the identity class sum).
    pub fn unit(&self) -> Vec<FqElem> {
        let mut v = vec![self.field.zero(); self.dimension()];
        v[self.unit_class] = self.field.one();
        v
    }

    /// Product in class-sum coordinates.
    pub fn mul(&self, u: &[FqElem], v: &[FqElem]) -> Vec<FqElem> {
        let dim = self.dimension();
        let mut out = vec![self.field.zero(); dim];
        for i in 0..dim {
            if self.field.is_zero(&u[i]) {
                continue;
            }
            for j in 0..dim {
                if self.field.is_zero(&v[j]) {
                    continue;
                }
                let uv = self.field.mul(&u[i], &v[j]);
                for k in 0..dim {
                    let c = self.struct_consts[i][j][k];
                    if c == 0 {
                        continue;
                    }
                    let t = self.field.mul(&uv, &self.field.scalar(c));
                    out[k] = self.field.add(&out[k], &t);
                }
            }
        }
        out
    }

    /// Lifts center coordinates to a group-algebra element.
    pub fn to_algebra(&self, coords: &[FqElem]) -> AlgebraElement {
        let mut out = AlgebraElement::zero(&self.group, &self.field);
        for (k, class) in self.classes.iter().enumerate() {
            if self.field.is_zero(&coords[k]) {
                continue;
            }
            for &g in class {
                out.set_coeff(g, &coords[k]);
            }
        }
        out
    }

    /// Center coordinates of a central algebra element.
    pub fn coordinates(&self, e: &AlgebraElement) -> Result<Vec<FqElem>, OracleError> {
        let mut coords = Vec::with_capacity(self.dimension());
        for class in &self.classes {
            let c = e.coeff(class[0]);
            for &g in class {
                if e.coeff(g) != c {
                    return Err(OracleError::NotCentral);
                }
            }
            coords.push(c);
        }
        Ok(coords)
    }
}

/// Builds the center of `F_q G`: class sums and exact structure constants.
pub fn center_basis(g: &FiniteGroup, field: &Arc<FiniteField>) -> Result<CenterAlgebra, OracleError> {
    let p = field.characteristic();
    if g.order() as u64 % p == 0 {
        return Err(OracleError::NotSemisimple { p, order: g.order() });
    }
    if g.order() > ORACLE_ORDER_BOUND {
        return Err(OracleError::GroupTooLarge { order: g.order(), bound: ORACLE_ORDER_BOUND });
    }
    let classes = g.conjugacy_classes();
    let dim = classes.len();
    let mut class_of = vec![0usize; g.order()];
    for (k, class) in classes.iter().enumerate() {
        for &x in class {
            class_of[x] = k;
        }
    }
    let unit_class = class_of[g.identity()];
    // Counts c_{ijk} = #{(x, y) in C_i x C_j : xy = z_k}, constant over the
    // choice of z_k in C_k.
    let mut struct_consts = vec![vec![vec![0u64; dim]; dim]; dim];
    let mut counts = vec![0u64; g.order()];
    for i in 0..dim {
        for j in 0..dim {
            counts.fill(0);
            for &x in &classes[i] {
                for &y in &classes[j] {
                    counts[g.mul(x, y)] += 1;
                }
            }
            for k in 0..dim {
                let rep = classes[k][0];
                debug_assert!(classes[k].iter().all(|&z| counts[z] == counts[rep]));
                struct_consts[i][j][k] = counts[rep] % p;
            }
        }
    }
    Ok(CenterAlgebra { group: g.clone(), field: field.clone(), classes, struct_consts, unit_class })
}

/// Minimal polynomial of `z` inside the unital block `(Z e, e)`, together
/// with the power list `[e, z, z^2, ...]` used to evaluate polynomials at
/// `z` later.
fn minimal_poly(ca: &CenterAlgebra, e: &[FqElem], z: &[FqElem]) -> (Poly, Vec<Vec<FqElem>>) {
    let field = &ca.field;
    let dim = ca.dimension();
    // Incremental echelon with coefficient tracking: rows are center
    // vectors, tracked against their expansion in powers of z.
    let mut powers: Vec<Vec<FqElem>> = vec![e.to_vec()];
    let mut echelon: Vec<(Vec<FqElem>, Vec<FqElem>)> = Vec::new(); // (vector, expansion in powers)
    let mut t = 0usize;
    loop {
        let cur = powers[t].clone();
        // Reduce cur against the echelon.
        let mut vec = cur;
        let mut expansion = vec![field.zero(); t + 2];
        expansion[t] = field.one();
        for (evec, eexp) in &echelon {
            // Find pivot of evec.
            let piv = evec.iter().position(|c| !field.is_zero(c)).unwrap();
            if field.is_zero(&vec[piv]) {
                continue;
            }
            let f = field.div(&vec[piv], &evec[piv]).unwrap();
            for idx in 0..dim {
                let tmp = field.mul(&f, &evec[idx]);
                vec[idx] = field.sub(&vec[idx], &tmp);
            }
            for idx in 0..eexp.len().min(expansion.len()) {
                let tmp = field.mul(&f, &eexp[idx]);
                expansion[idx] = field.sub(&expansion[idx], &tmp);
            }
        }
        if vec.iter().all(|c| field.is_zero(c)) {
            // Dependency found: Σ expansion[i] z^i = 0 with expansion[t] = 1,
            // so the expansion is exactly the monic minimal polynomial.
            let mut coeffs: Vec<FqElem> = (0..t).map(|i| expansion[i].clone()).collect();
            coeffs.push(field.one());
            return (Poly::from_coeffs(field, coeffs), powers);
        }
        echelon.push((vec, expansion));
        let next = ca.mul(&powers[t], z);
        powers.push(next);
        t += 1;
        debug_assert!(t <= dim + 1, "minimal polynomial degree exceeded the center dimension");
    }
}

/// Evaluates `f(z)` in the block with unit `e`, given the power list.
fn eval_at(ca: &CenterAlgebra, f: &Poly, powers: &[Vec<FqElem>]) -> Vec<FqElem> {
    let field = &ca.field;
    let mut out = vec![field.zero(); ca.dimension()];
    for (i, c) in f.coeffs().iter().enumerate() {
        if field.is_zero(c) {
            continue;
        }
        for k in 0..ca.dimension() {
            let t = field.mul(c, &powers[i][k]);
            out[k] = field.add(&out[k], &t);
        }
    }
    out
}

/// Dimension of the block ideal `Z e` (rank of `{b_i e}` over `F_q`).
fn block_dimension(ca: &CenterAlgebra, e: &[FqElem]) -> usize {
    let field = &ca.field;
    let dim = ca.dimension();
    let d = field.degree();
    let mut rows = Vec::with_capacity(dim);
    for i in 0..dim {
        let mut basis = vec![field.zero(); dim];
        basis[i] = field.one();
        let prod = ca.mul(&basis, e);
        let mut row = vec![0u64; dim * d];
        for (k, c) in prod.iter().enumerate() {
            row[k * d..(k + 1) * d].copy_from_slice(c.coeffs());
        }
        rows.push(row);
    }
    crate::gf::linalg::rank_flat(field, &mut rows, dim)
}

/// Splits `Z(F_q G)` into primitive idempotents, each certified by a probe
/// whose minimal polynomial is irreducible of degree the block dimension.
/// Deterministic: class-sum probes in order, then probes from a seeded RNG.
pub fn split_center(
    g: &FiniteGroup,
    field: &Arc<FiniteField>,
    seed: u64,
) -> Result<Vec<AlgebraElement>, OracleError> {
    let ca = center_basis(g, field)?;
    let dim = ca.dimension();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut pending: Vec<Vec<FqElem>> = vec![ca.unit()];
    let mut done: Vec<Vec<FqElem>> = Vec::new();
    let max_rounds = 64 * dim + 64;
    let mut rounds = 0usize;
    while let Some(e) = pending.pop() {
        rounds += 1;
        if rounds > max_rounds {
            return Err(OracleError::Internal("center splitting did not converge".into()));
        }
        let bdim = block_dimension(&ca, &e);
        if bdim == 1 {
            done.push(e);
            continue;
        }
        // Probes: class sums first, then random center elements.
        let mut split_happened = false;
        let mut probe_idx = 0usize;
        loop {
            let z: Vec<FqElem> = if probe_idx < dim {
                let mut v = vec![ca.field.zero(); dim];
                v[probe_idx] = ca.field.one();
                ca.mul(&v, &e)
            } else {
                let v: Vec<FqElem> = (0..dim)
                    .map(|_| {
                        let r: u64 = rng.gen();
                        let mut coeffs = vec![0u64; field.degree()];
                        let mut x = r;
                        for c in coeffs.iter_mut() {
                            *c = x % field.characteristic();
                            x /= field.characteristic();
                        }
                        field.from_coeffs(&coeffs)
                    })
                    .collect();
                ca.mul(&v, &e)
            };
            probe_idx += 1;
            let (mu, powers) = minimal_poly(&ca, &e, &z);
            let factors = poly::factor(field, &mu, seed);
            if factors.iter().any(|(_, m)| *m > 1) {
                return Err(OracleError::Internal(
                    "minimal polynomial of a center element is not squarefree".into(),
                ));
            }
            if factors.len() == 1 {
                let deg = factors[0].0.degree().unwrap();
                if deg == bdim {
                    // Certified: the block is the field F_{q^bdim}.
                    done.push(e.clone());
                    break;
                }
                // Probe generates a proper subfield; try the next probe.
                continue;
            }
            // CRT split: e_t = u_t(z) * (mu / f_t)(z) with
            // u_t * (mu / f_t) ≡ 1 mod f_t.
            for (f_t, _) in &factors {
                let (quot, rem) = poly::divrem(field, &mu, f_t);
                debug_assert!(rem.is_zero());
                // Invert quot mod f_t via extended Euclid on polynomials.
                let inv = poly_inverse_mod(field, &quot, f_t).ok_or_else(|| {
                    OracleError::Internal("cofactor not invertible mod its factor".into())
                })?;
                let gpoly = poly::mul(field, &inv, &quot);
                let et = eval_at(&ca, &gpoly, &powers);
                pending.push(et);
            }
            split_happened = true;
            break;
        }
        let _ = split_happened;
    }
    // Exactness checks and deterministic ordering.
    let mut out: Vec<AlgebraElement> = done.iter().map(|e| ca.to_algebra(e)).collect();
    for e in &out {
        if !e.is_idempotent() {
            return Err(OracleError::Internal("split produced a non-idempotent".into()));
        }
    }
    for i in 0..out.len() {
        for j in i + 1..out.len() {
            if !out[i].is_orthogonal_to(&out[j])? {
                return Err(OracleError::Internal("split idempotents are not orthogonal".into()));
            }
        }
    }
    let mut sum = AlgebraElement::zero(g, field);
    for e in &out {
        sum = sum.add(e);
    }
    if sum != AlgebraElement::one(g, field) {
        return Err(OracleError::Internal("split idempotents do not sum to 1".into()));
    }
    out.sort_by_key(|e| {
        let support = e.support();
        (support.first().copied().unwrap_or(usize::MAX), e.coeff(support[0]).coeffs().to_vec())
    });
    Ok(out)
}

fn poly_inverse_mod(field: &Arc<FiniteField>, a: &Poly, modulus: &Poly) -> Option<Poly> {
    // Extended Euclid: find u with u*a ≡ 1 mod modulus.
    let mut r0 = modulus.clone();
    let mut r1 = poly::rem(field, a, modulus);
    let mut u0 = Poly::zero();
    let mut u1 = Poly::constant(field, field.one());
    while !r1.is_zero() {
        let (q, r) = poly::divrem(field, &r0, &r1);
        let qu = poly::mul(field, &q, &u1);
        let unext = poly::sub(field, &u0, &qu);
        r0 = std::mem::replace(&mut r1, r);
        u0 = std::mem::replace(&mut u1, unext);
    }
    if r0.degree() != Some(0) {
        return None;
    }
    let lead_inv = field.inv(r0.lead().unwrap()).ok()?;
    Some(poly::rem(field, &poly::scale(field, &u0, &lead_inv), modulus))
}

/// `(n, l)` for a primitive central idempotent: `l = dim Z(F_q G) e`,
/// `d = dim F_q G e`, `n = sqrt(d / l)` (exactness asserted).
pub fn component_params_from_idempotent(
    e: &AlgebraElement,
    g: &FiniteGroup,
    field: &Arc<FiniteField>,
) -> Result<(usize, usize), OracleError> {
    let ca = center_basis(g, field)?;
    let coords = ca.coordinates(e)?;
    let l = {
        let dim = ca.dimension();
        let d = field.degree();
        let mut rows = Vec::with_capacity(dim);
        for i in 0..dim {
            let mut basis = vec![field.zero(); dim];
            basis[i] = field.one();
            let prod = ca.mul(&basis, &coords);
            let mut row = vec![0u64; dim * d];
            for (k, c) in prod.iter().enumerate() {
                row[k * d..(k + 1) * d].copy_from_slice(c.coeffs());
            }
            rows.push(row);
        }
        crate::gf::linalg::rank_flat(field, &mut rows, dim)
    };
    let d = ideal_dimension(e);
    if l == 0 || d % l != 0 {
        return Err(OracleError::NonSquareDimension { ideal_dim: d, center_dim: l });
    }
    let n2 = d / l;
    let n = (n2 as f64).sqrt().round() as usize;
    if n * n != n2 {
        return Err(OracleError::NonSquareDimension { ideal_dim: d, center_dim: l });
    }
    Ok((n, l))
}

/// The oracle's own report: primitive central idempotents with `(n, l)`.
#[derive(Debug, Clone)]
pub struct OracleReport {
    pub group_desc: String,
    pub group_order: usize,
    pub q: u128,
    pub components: Vec<(usize, usize, AlgebraElement)>,
    pub elapsed_ms: u128,
}

impl OracleReport {
    pub fn component_multiset(&self) -> Vec<((usize, u64), usize)> {
        let mut counts: Vec<((usize, u64), usize)> = Vec::new();
        for (n, l, _) in &self.components {
            let key = (*n, *l as u64);
            match counts.iter_mut().find(|(k, _)| *k == key) {
                Some((_, c)) => *c += 1,
                None => counts.push((key, 1)),
            }
        }
        counts.sort_unstable();
        counts
    }
}

/// Runs the full oracle: split the center, recover `(n, l)` per idempotent.
pub fn oracle_report(g: &FiniteGroup, field: &Arc<FiniteField>, seed: u64) -> Result<OracleReport, OracleError> {
    let start = std::time::Instant::now();
    let idempotents = split_center(g, field, seed)?;
    let mut components = Vec::with_capacity(idempotents.len());
    for e in idempotents {
        let (n, l) = component_params_from_idempotent(&e, g, field)?;
        components.push((n, l, e));
    }
    Ok(OracleReport {
        group_desc: g.description().to_string(),
        group_order: g.order(),
        q: field.cardinality(),
        components,
        elapsed_ms: start.elapsed().as_millis(),
    })
}

/// Structured difference between a decomposition report and the oracle.
#[derive(Debug, Clone, Default)]
pub struct CompareDiff {
    /// Idempotents produced by the decomposer but not the oracle.
    pub only_in_report: Vec<usize>,
    /// Idempotents produced by the oracle but not the decomposer.
    pub only_in_oracle: Vec<usize>,
    /// `((n, l), report_count, oracle_count)` where the counts differ.
    pub param_mismatches: Vec<((usize, u64), usize, usize)>,
}

impl CompareDiff {
    pub fn is_empty(&self) -> bool {
        self.only_in_report.is_empty() && self.only_in_oracle.is_empty() && self.param_mismatches.is_empty()
    }
}

/// Diffs the decomposer's report against an independent oracle run: empty
/// iff the idempotent sets are equal and the `(n, l)` multisets agree.
pub fn compare(
    report: &DecompositionReport,
    g: &FiniteGroup,
    field: &Arc<FiniteField>,
    seed: u64,
) -> Result<CompareDiff, OracleError> {
    let oracle = oracle_report(g, field, seed)?;
    let mut diff = CompareDiff::default();
    for (i, c) in report.components.iter().enumerate() {
        if !oracle.components.iter().any(|(_, _, e)| e == &c.idempotent) {
            diff.only_in_report.push(i);
        }
    }
    for (j, (_, _, e)) in oracle.components.iter().enumerate() {
        if !report.components.iter().any(|c| &c.idempotent == e) {
            diff.only_in_oracle.push(j);
        }
    }
    let mr = report.component_multiset();
    let mo = oracle.component_multiset();
    let keys: std::collections::BTreeSet<(usize, u64)> =
        mr.iter().map(|(k, _)| *k).chain(mo.iter().map(|(k, _)| *k)).collect();
    for key in keys {
        let a = mr.iter().find(|(k, _)| *k == key).map_or(0, |(_, c)| *c);
        let b = mo.iter().find(|(k, _)| *k == key).map_or(0, |(_, c)| *c);
        if a != b {
            diff.param_mismatches.push((key, a, b));
        }
    }
    Ok(diff)
}
