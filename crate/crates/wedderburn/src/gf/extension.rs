//! Extensions `F_{q^o}` carrying a primitive `k`-th root of unity, the
//! embedding of the base field, and the trace map back down.
//!
//! `o` is the multiplicative order of `q` mod `k`, so `F_{q^o}` is the
//! smallest extension containing a primitive `k`-th root.  Both fields are
//! realized over the prime field with canonical moduli; the base embeds via
//! the lexicographically smallest root of its modulus in the extension.

use std::sync::Arc;

use super::poly;
use super::{linalg, mult_order, FiniteField, FqElem, GfError};
use crate::arith::gcd_u64;

/// Which primitive `k`-th root to take; `Alternate` exists to check that the
/// decomposition is invariant under the choice (it relabels cyclotomic
/// classes but fixes the idempotent set).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum RootChoice {
    #[default]
    Canonical,
    Alternate,
}

/// `F_{q^o}` together with `ξ_k`, the base-field embedding and the trace.
#[derive(Debug)]
pub struct ExtensionWithRoot {
    base: Arc<FiniteField>,
    ext: Arc<FiniteField>,
    k: u64,
    o: u64,
    root: FqElem,
    /// Images of the base basis `β^i` in the extension.
    embed_cols: Vec<FqElem>,
    /// Extension basis images under `y ↦ y^q`, as columns.
    frob_cols: Vec<FqElem>,
}

impl ExtensionWithRoot {
    pub fn new(base: &Arc<FiniteField>, k: u64, choice: RootChoice) -> Result<Self, GfError> {
        let q = base.cardinality();
        if k == 0 || (k > 1 && gcd_u64((q % k as u128) as u64, k) != 1) {
            return Err(GfError::NotCoprime { q, k });
        }
        let o = mult_order(q, k)?;
        let p = base.characteristic();
        let ext_degree = base.degree() * o as usize;
        let ext = if ext_degree == base.degree() { base.clone() } else { FiniteField::extension(p, ext_degree)? };

        // ξ_k = γ^{(q^o - 1)/k} for the canonical generator γ; the alternate
        // choice is the power by the smallest unit t ≥ 2 of Z_k.
        let n_units = ext.cardinality() - 1;
        debug_assert_eq!(n_units % k as u128, 0);
        let gamma = ext.multiplicative_generator();
        let mut root = ext.pow(&gamma, n_units / k as u128);
        if choice == RootChoice::Alternate {
            let t = (2..k).find(|&t| gcd_u64(t, k) == 1).unwrap_or(1);
            root = ext.pow(&root, t as u128);
        }
        debug_assert_eq!(ext.element_order(&root), k as u128);

        // Embedding: β = smallest root of the base modulus inside ext.
        let embed_cols: Vec<FqElem> = if base.degree() == 1 {
            vec![ext.one()]
        } else if Arc::ptr_eq(base, &ext) {
            // Identity embedding.
            (0..base.degree())
                .map(|i| {
                    let mut v = vec![0u64; base.degree()];
                    v[i] = 1;
                    ext.from_coeffs(&v)
                })
                .collect()
        } else {
            let modulus = poly::map_coeffs(&ext, base.modulus());
            let rs = poly::roots(&ext, &modulus, 0);
            let beta = rs.first().cloned().expect("base modulus splits in the extension");
            let mut cols = Vec::with_capacity(base.degree());
            let mut acc = ext.one();
            for _ in 0..base.degree() {
                cols.push(acc.clone());
                acc = ext.mul(&acc, &beta);
            }
            cols
        };

        // q-power Frobenius as a matrix: columns are (x^j)^q = (x^q)^j.
        let x = {
            let mut v = vec![0u64; ext.degree()];
            if ext.degree() > 1 {
                v[1] = 1;
            } else {
                // degree-1 extension: x ≡ 0 mod (x); Frobenius is identity.
                v[0] = 0;
            }
            ext.from_coeffs(&v)
        };
        let xq = ext.pow(&x, q);
        let mut frob_cols = Vec::with_capacity(ext.degree());
        let mut acc = ext.one();
        for _ in 0..ext.degree() {
            frob_cols.push(acc.clone());
            acc = ext.mul(&acc, &xq);
        }

        Ok(ExtensionWithRoot { base: base.clone(), ext, k, o, root, embed_cols, frob_cols })
    }

    pub fn base(&self) -> &Arc<FiniteField> {
        &self.base
    }

    pub fn ext(&self) -> &Arc<FiniteField> {
        &self.ext
    }

    pub fn k(&self) -> u64 {
        self.k
    }

    /// The degree `o = [F_{q^o} : F_q]`.
    pub fn o(&self) -> u64 {
        self.o
    }

    /// The chosen primitive `k`-th root of unity `ξ_k`.
    pub fn root(&self) -> &FqElem {
        &self.root
    }

    /// `x^q` via the precomputed Frobenius matrix.
    pub fn frobenius_q(&self, x: &FqElem) -> FqElem {
        let mut out = self.ext.zero();
        for (j, col) in self.frob_cols.iter().enumerate() {
            let c = x.coeffs[j];
            if c == 0 {
                continue;
            }
            let scaled = self.ext.mul(col, &self.ext.scalar(c));
            out = self.ext.add(&out, &scaled);
        }
        out
    }

    /// Lifts a base-field element into the extension.
    pub fn lift(&self, x: &FqElem) -> FqElem {
        debug_assert_eq!(x.coeffs.len(), self.base.degree());
        let mut out = self.ext.zero();
        for (j, col) in self.embed_cols.iter().enumerate() {
            let c = x.coeffs[j];
            if c == 0 {
                continue;
            }
            let scaled = self.ext.mul(col, &self.ext.scalar(c));
            out = self.ext.add(&out, &scaled);
        }
        out
    }

    /// Expresses an extension element in base-field coordinates, if it lies
    /// in the embedded copy of the base field.
    pub fn project(&self, x: &FqElem) -> Result<FqElem, GfError> {
        let cols: Vec<Vec<u64>> = self.embed_cols.iter().map(|c| c.coeffs.clone()).collect();
        let sol = linalg::fp_solve(self.base.characteristic(), &cols, &x.coeffs)
            .ok_or(GfError::NotInBaseField)?;
        Ok(self.base.from_coeffs(&sol))
    }

    /// Field trace `tr(x) = Σ_{t<o} x^{q^t}`, asserted Frobenius-fixed and
    /// returned as a base-field element.
    pub fn trace_to_base(&self, x: &FqElem) -> Result<FqElem, GfError> {
        let mut acc = x.clone();
        let mut pw = x.clone();
        for _ in 1..self.o {
            pw = self.frobenius_q(&pw);
            acc = self.ext.add(&acc, &pw);
        }
        debug_assert_eq!(self.frobenius_q(&acc), acc, "trace must be Frobenius-fixed");
        self.project(&acc)
    }
}
