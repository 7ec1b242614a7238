//! Arithmetic in the group algebra `F_q G` and the idempotent building
//! blocks: subgroup averages `Ĥ`, the idempotents `ε(H,K)` and `ε_C(H,K)`,
//! conjugation, orbit sums and centralizers.
//!
//! Elements are dense coefficient vectors of length `|G|` over the carrier
//! field (flat storage, one length-`m` block per group element).  Products
//! iterate over supports, so sparse idempotents multiply fast.

use std::collections::HashMap;
use std::sync::Arc;

use crate::cyclotomic::{cyclotomic_classes, CyclotomicClass};
use crate::gf::{ExtensionWithRoot, FiniteField, FqElem, GfError, RootChoice};
use crate::group::{FiniteGroup, GroupError, Subgroup};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum AlgebraError {
    #[error("elements live on different groups or fields")]
    MismatchedCarrier,
    #[error("characteristic {p} divides the subgroup order {order}")]
    CharacteristicDividesOrder { p: u64, order: usize },
    #[error("cyclotomic class is not a generator class for [H:K] = {k}")]
    NotGeneratorClass { k: u64 },
    #[error("H/K is not cyclic, so (H, K) has no Shoda shape")]
    NotShodaShape,
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error(transparent)]
    Gf(#[from] GfError),
}

/// An element of `F_q G`.
#[derive(Clone)]
pub struct AlgebraElement {
    group: FiniteGroup,
    field: Arc<FiniteField>,
    coeffs: Vec<u64>,
}

impl PartialEq for AlgebraElement {
    fn eq(&self, other: &Self) -> bool {
        self.group == other.group
            && self.field.cardinality() == other.field.cardinality()
            && self.coeffs == other.coeffs
    }
}
impl Eq for AlgebraElement {}

impl std::hash::Hash for AlgebraElement {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.coeffs.hash(state);
    }
}

impl std::fmt::Debug for AlgebraElement {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "AlgebraElement(")?;
        let mut first = true;
        for x in self.support() {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            write!(f, "{:?}*{}", self.coeff(x).coeffs(), self.group.element_name(x))?;
        }
        if first {
            write!(f, "0")?;
        }
        write!(f, ")")
    }
}

impl AlgebraElement {
    pub fn zero(group: &FiniteGroup, field: &Arc<FiniteField>) -> Self {
        AlgebraElement {
            group: group.clone(),
            field: field.clone(),
            coeffs: vec![0; group.order() * field.degree()],
        }
    }

    /// The multiplicative identity (basis vector at the group identity).
    pub fn one(group: &FiniteGroup, field: &Arc<FiniteField>) -> Self {
        Self::basis(group, field, group.identity())
    }

    /// The basis vector at group element `g`.
    pub fn basis(group: &FiniteGroup, field: &Arc<FiniteField>, g: usize) -> Self {
        let mut out = Self::zero(group, field);
        out.coeffs[g * field.degree()] = 1;
        out
    }

    pub fn group(&self) -> &FiniteGroup {
        &self.group
    }

    pub fn field(&self) -> &Arc<FiniteField> {
        &self.field
    }

    pub fn coeff(&self, g: usize) -> FqElem {
        let d = self.field.degree();
        self.field.from_coeffs(&self.coeffs[g * d..(g + 1) * d])
    }

    pub fn set_coeff(&mut self, g: usize, value: &FqElem) {
        let d = self.field.degree();
        self.coeffs[g * d..(g + 1) * d].copy_from_slice(value.coeffs());
    }

    /// Indices of group elements with nonzero coefficient.
    pub fn support(&self) -> Vec<usize> {
        let d = self.field.degree();
        (0..self.group.order()).filter(|&g| self.coeffs[g * d..(g + 1) * d].iter().any(|&c| c != 0)).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|&c| c == 0)
    }

    fn check_carrier(&self, other: &Self) -> Result<(), AlgebraError> {
        if self.group != other.group || self.field.cardinality() != other.field.cardinality() {
            return Err(AlgebraError::MismatchedCarrier);
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Self {
        self.check_carrier(other).expect("matching carrier");
        let mut out = self.clone();
        out.field.clone().flat_add_assign(&mut out.coeffs, &other.coeffs);
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.check_carrier(other).expect("matching carrier");
        let mut out = self.clone();
        out.field.clone().flat_sub_assign(&mut out.coeffs, &other.coeffs);
        out
    }

    pub fn scale(&self, c: &FqElem) -> Self {
        let d = self.field.degree();
        let mut out = Self::zero(&self.group, &self.field);
        let mut scratch = vec![0u64; self.field.scratch_len()];
        for g in self.support() {
            self.field.flat_mul_into(&self.coeffs[g * d..(g + 1) * d], c.coeffs(), &mut out.coeffs[g * d..(g + 1) * d], &mut scratch);
        }
        out
    }

    /// Convolution `(a b)(g) = sum over xy = g of a(x) b(y)`.
    pub fn mul(&self, other: &Self) -> Result<Self, AlgebraError> {
        self.check_carrier(other)?;
        let d = self.field.degree();
        let mut out = Self::zero(&self.group, &self.field);
        let sa = self.support();
        let sb = other.support();
        let mut scratch = vec![0u64; self.field.scratch_len()];
        // Fast path for prime fields.
        if d == 1 {
            let p = self.field.characteristic();
            for &x in &sa {
                let ax = self.coeffs[x];
                for &y in &sb {
                    let z = self.group.mul(x, y);
                    out.coeffs[z] = (out.coeffs[z] + ax * other.coeffs[y]) % p;
                }
            }
        } else {
            for &x in &sa {
                let ax = &self.coeffs[x * d..(x + 1) * d];
                for &y in &sb {
                    let z = self.group.mul(x, y);
                    self.field.flat_addmul(&mut out.coeffs[z * d..(z + 1) * d], ax, &other.coeffs[y * d..(y + 1) * d], &mut scratch);
                }
            }
        }
        Ok(out)
    }

    /// `a^g = g^-1 a g`: the coefficient of `x` moves to `g^-1 x g`.
    pub fn conjugate(&self, g: usize) -> Self {
        let d = self.field.degree();
        let mut out = Self::zero(&self.group, &self.field);
        for x in self.support() {
            let y = self.group.conj(x, g);
            out.coeffs[y * d..(y + 1) * d].copy_from_slice(&self.coeffs[x * d..(x + 1) * d]);
        }
        out
    }

    /// The distinct conjugates `{a^m : m in M}`, found by orbit closure over
    /// a generating set of `M`; the first entry is `a` itself.
    pub fn distinct_conjugates(&self, m: &Subgroup) -> Vec<AlgebraElement> {
        let gens = self.group.small_generating_set(m);
        let mut orbit = vec![self.clone()];
        let mut seen: HashMap<Vec<u64>, ()> = HashMap::new();
        seen.insert(self.coeffs.clone(), ());
        let mut head = 0;
        while head < orbit.len() {
            let cur = orbit[head].clone();
            head += 1;
            for &g in &gens {
                let c = cur.conjugate(g);
                if !seen.contains_key(&c.coeffs) {
                    seen.insert(c.coeffs.clone(), ());
                    orbit.push(c);
                }
            }
        }
        orbit
    }

    /// Sum of the distinct `M`-conjugates of `a`.
    pub fn sum_distinct_conjugates(&self, m: &Subgroup) -> Self {
        let orbit = self.distinct_conjugates(m);
        let mut out = Self::zero(&self.group, &self.field);
        for c in &orbit {
            self.field.flat_add_assign(&mut out.coeffs, &c.coeffs);
        }
        out
    }

    /// `{ m in M : a^m = a }`, always a subgroup of `M`.
    pub fn centralizer_in(&self, m: &Subgroup) -> Subgroup {
        let fixed: Vec<usize> = m.iter().filter(|&g| self.conjugate(g) == *self).collect();
        Subgroup::from_elements(&self.group, &fixed).expect("stabilizer is a subgroup")
    }

    pub fn is_idempotent(&self) -> bool {
        self.mul(self).map(|sq| sq == *self).unwrap_or(false)
    }

    /// Central in `F_q M` in the sense of being fixed by conjugation by all
    /// of `M` (checked on a generating set).
    pub fn is_central_in(&self, m: &Subgroup) -> bool {
        let gens = self.group.small_generating_set(m);
        gens.iter().all(|&g| self.conjugate(g) == *self)
    }

    pub fn is_orthogonal_to(&self, other: &Self) -> Result<bool, AlgebraError> {
        Ok(self.mul(other)?.is_zero() && other.mul(self)?.is_zero())
    }
}

/// `F_q`-dimension of the left ideal `F_q G * e`: the rank of the left
/// translates `{g e : g in G}`.  For a central idempotent this is the
/// dimension of the two-sided ideal it generates.
pub fn ideal_dimension(e: &AlgebraElement) -> usize {
    let g = e.group();
    let field = e.field();
    let n = g.order();
    let d = field.degree();
    let mut rows: Vec<Vec<u64>> = Vec::with_capacity(n);
    for t in 0..n {
        // (t * e)(x) = e(t^-1 x)
        let tinv = g.inv(t);
        let mut row = vec![0u64; n * d];
        for x in 0..n {
            let src = g.mul(tinv, x);
            row[x * d..(x + 1) * d].copy_from_slice(e.coeff(src).coeffs());
        }
        rows.push(row);
    }
    crate::gf::linalg::rank_flat(field, &mut rows, n)
}

/// Exact predicate record over an element (and optional partner/subgroup).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IdempotentPredicates {
    pub is_idempotent: bool,
    pub is_central_in_m: Option<bool>,
    pub orthogonal_to_b: Option<bool>,
}

pub fn idempotent_predicates(
    a: &AlgebraElement,
    b: Option<&AlgebraElement>,
    m: Option<&Subgroup>,
) -> Result<IdempotentPredicates, AlgebraError> {
    Ok(IdempotentPredicates {
        is_idempotent: a.is_idempotent(),
        is_central_in_m: m.map(|m| a.is_central_in(m)),
        orthogonal_to_b: b.map(|b| a.is_orthogonal_to(b)).transpose()?,
    })
}

/// `Ĥ = |H|^{-1} Σ_{h in H} h`, the averaging idempotent.
pub fn hat(h: &Subgroup, field: &Arc<FiniteField>) -> Result<AlgebraElement, AlgebraError> {
    let p = field.characteristic();
    if h.order() as u64 % p == 0 {
        return Err(AlgebraError::CharacteristicDividesOrder { p, order: h.order() });
    }
    let inv = field.inv_scalar(h.order() as u64)?;
    let mut out = AlgebraElement::zero(h.group(), field);
    for x in h.iter() {
        out.set_coeff(x, &inv);
    }
    Ok(out)
}

/// `ε(H,K) = K̂` if `H = K`, else `Π (K̂ - L̂)` over the normal subgroups
/// `L` of `H` minimal over `K`.
pub fn eps(h: &Subgroup, k: &Subgroup, field: &Arc<FiniteField>) -> Result<AlgebraElement, AlgebraError> {
    let g = h.group();
    let minimals = g.minimal_normals_over(h, k)?;
    let khat = hat(k, field)?;
    if minimals.is_empty() {
        return Ok(khat);
    }
    let mut acc: Option<AlgebraElement> = None;
    for l in &minimals {
        let factor = khat.sub(&hat(l, field)?);
        acc = Some(match acc {
            None => factor,
            Some(prev) => prev.mul(&factor)?,
        });
    }
    Ok(acc.unwrap())
}

/// `ε_C(H,K) = |H|^{-1} Σ_{h in H} tr(χ(hK)) h^{-1}` for any character χ in
/// the generator class `C`; computed over `F_{q^o}` and projected to `F_q`.
pub fn eps_class(
    h: &Subgroup,
    k: &Subgroup,
    class: &CyclotomicClass,
    field: &Arc<FiniteField>,
    choice: RootChoice,
) -> Result<AlgebraElement, AlgebraError> {
    let g = h.group();
    let (quot_gen, index) = match g.cyclic_quotient_generator(h, k) {
        Ok(x) => x,
        Err(GroupError::NotCyclic) => return Err(AlgebraError::NotShodaShape),
        Err(e) => return Err(e.into()),
    };
    let kk = index as u64;
    if class.k != kk || !class.is_generator_class() {
        return Err(AlgebraError::NotGeneratorClass { k: kk });
    }
    // The class must be a genuine q-orbit mod k.
    let valid = cyclotomic_classes(kk, field.cardinality())?.into_iter().any(|c| c == *class);
    if !valid {
        return Err(AlgebraError::NotGeneratorClass { k: kk });
    }

    let ext = ExtensionWithRoot::new(field, kk, choice)?;
    // Discrete log of each coset of K in H relative to the quotient generator.
    let mut dlog: HashMap<usize, u64> = HashMap::new();
    let mut rep = g.identity();
    for j in 0..kk {
        for s in k.iter() {
            dlog.insert(g.mul(rep, s), j);
        }
        rep = g.mul(rep, quot_gen);
    }
    debug_assert_eq!(dlog.len(), h.order());

    // Traces tr(ξ^{c*j}) for j = 0..k, then spread over cosets.
    let c = class.representative();
    let mut traces = Vec::with_capacity(kk as usize);
    for j in 0..kk {
        let x = ext.ext().pow(ext.root(), ((c as u128) * (j as u128)) % kk as u128);
        traces.push(ext.trace_to_base(&x)?);
    }
    let hin = field.inv_scalar(h.order() as u64)?;
    let mut out = AlgebraElement::zero(g, field);
    let mut scratch = vec![0u64; field.scratch_len()];
    let d = field.degree();
    for x in h.iter() {
        let j = dlog[&x];
        let target = g.inv(x);
        let mut val = vec![0u64; d];
        field.flat_mul_into(traces[j as usize].coeffs(), hin.coeffs(), &mut val, &mut scratch);
        field.flat_add_assign(&mut out.coeffs[target * d..(target + 1) * d], &val);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus;
    use crate::gf::FiniteField;

    fn f(q: u64) -> Arc<FiniteField> {
        FiniteField::prime(q).unwrap()
    }

    #[test]
    fn identity_is_neutral() {
        let c3 = corpus::cyclic(3);
        let f7 = f(7);
        let mut a = AlgebraElement::zero(&c3, &f7);
        a.set_coeff(0, &f7.scalar(3));
        a.set_coeff(2, &f7.scalar(5));
        let e = AlgebraElement::one(&c3, &f7);
        assert_eq!(a.mul(&e).unwrap(), a);
        assert_eq!(e.mul(&a).unwrap(), a);
    }

    #[test]
    fn char2_c3_square() {
        // (g + g^2)^2 = g^2 + 2g^3 + g^4 = g + g^2 over F_2 C_3.
        let c3 = corpus::cyclic(3);
        let f2 = f(2);
        let mut a = AlgebraElement::zero(&c3, &f2);
        a.set_coeff(1, &f2.one());
        a.set_coeff(2, &f2.one());
        assert_eq!(a.mul(&a).unwrap(), a);
        assert!(a.is_idempotent());
    }

    #[test]
    fn hats_are_idempotent() {
        let c4 = corpus::cyclic(4);
        let f3 = f(3);
        let h = hat(&c4.full_subgroup(), &f3).unwrap();
        // 4^{-1} = 1 mod 3.
        assert_eq!(h.coeff(0), f3.one());
        assert!(h.is_idempotent());

        let c3 = corpus::cyclic(3);
        let f2 = f(2);
        let h = hat(&c3.full_subgroup(), &f2).unwrap();
        for g in 0..3 {
            assert_eq!(h.coeff(g), f2.one());
        }
        assert!(h.is_idempotent());

        // Trivial subgroup: the basis vector at the identity.
        let h = hat(&c3.trivial_subgroup(), &f2).unwrap();
        assert_eq!(h, AlgebraElement::one(&c3, &f2));

        // Characteristic dividing the order is rejected.
        assert!(matches!(
            hat(&c3.full_subgroup(), &f(3)),
            Err(AlgebraError::CharacteristicDividesOrder { .. })
        ));
    }

    #[test]
    fn eps_c4_over_f3() {
        let c4 = corpus::cyclic(4);
        let f3 = f(3);
        let e = eps(&c4.full_subgroup(), &c4.trivial_subgroup(), &f3).unwrap();
        // e - (e + g^2)/2 = 2e + g^2 over F_3.
        assert_eq!(e.coeff(0), f3.scalar(2));
        assert_eq!(e.coeff(2), f3.scalar(1));
        assert_eq!(e.coeff(1), f3.scalar(0));
        assert!(e.is_idempotent());
    }

    #[test]
    fn eps_c6_over_f5() {
        let c6 = corpus::cyclic(6);
        let f5 = f(5);
        let e = eps(&c6.full_subgroup(), &c6.trivial_subgroup(), &f5).unwrap();
        assert!(e.is_idempotent());
        // Two minimal normals, <g^2> and <g^3>.
        let mins = c6.minimal_normals_over(&c6.full_subgroup(), &c6.trivial_subgroup()).unwrap();
        assert_eq!(mins.len(), 2);
    }

    #[test]
    fn eps_h_equals_k() {
        let c4 = corpus::cyclic(4);
        let f3 = f(3);
        let h2 = c4.subgroup_closure(&[2]).unwrap();
        let e = eps(&h2, &h2, &f3).unwrap();
        assert_eq!(e, hat(&h2, &f3).unwrap());
    }

    #[test]
    fn eps_class_trivial_class() {
        let c4 = corpus::cyclic(4);
        let f3 = f(3);
        let h2 = c4.subgroup_closure(&[2]).unwrap();
        let class = CyclotomicClass { k: 1, exponents: vec![0] };
        let e = eps_class(&h2, &h2, &class, &f3, RootChoice::Canonical).unwrap();
        assert_eq!(e, hat(&h2, &f3).unwrap());
    }

    #[test]
    fn eps_class_c3_over_f2() {
        let c3 = corpus::cyclic(3);
        let f2 = f(2);
        let class = CyclotomicClass { k: 3, exponents: vec![1, 2] };
        let e = eps_class(&c3.full_subgroup(), &c3.trivial_subgroup(), &class, &f2, RootChoice::Canonical).unwrap();
        // tr(1) = 0, tr(ξ) = tr(ξ^2) = 1: so 0*e + g + g^2.
        assert_eq!(e.coeff(0), f2.scalar(0));
        assert_eq!(e.coeff(1), f2.one());
        assert_eq!(e.coeff(2), f2.one());
        assert!(e.is_idempotent());
        // ε_C + Ĥ = 1.
        let h = hat(&c3.full_subgroup(), &f2).unwrap();
        assert_eq!(e.add(&h), AlgebraElement::one(&c3, &f2));
    }

    #[test]
    fn eps_class_c3_over_f7() {
        let c3 = corpus::cyclic(3);
        let f7 = f(7);
        let class = CyclotomicClass { k: 3, exponents: vec![1] };
        let e = eps_class(&c3.full_subgroup(), &c3.trivial_subgroup(), &class, &f7, RootChoice::Canonical).unwrap();
        // o = 1, ξ_3 = 2, |H|^{-1} = 5: coefficients (5, 5*4, 5*2) on (e, g, g^2).
        assert_eq!(e.coeff(0), f7.scalar(5));
        assert_eq!(e.coeff(1), f7.scalar(6));
        assert_eq!(e.coeff(2), f7.scalar(3));
        assert!(e.is_idempotent());
        assert!(e.is_central_in(&c3.full_subgroup()));
    }

    #[test]
    fn eps_class_rejects_non_generator_class() {
        let c4 = corpus::cyclic(4);
        let f3 = f(3);
        let class = CyclotomicClass { k: 4, exponents: vec![2] }; // gcd(2,4) = 2
        assert!(matches!(
            eps_class(&c4.full_subgroup(), &c4.trivial_subgroup(), &class, &f3, RootChoice::Canonical),
            Err(AlgebraError::NotGeneratorClass { .. })
        ));
        // Non-cyclic quotient.
        let v4 = corpus::abelian(&[2, 2]);
        let cls = CyclotomicClass { k: 4, exponents: vec![1, 3] };
        assert!(matches!(
            eps_class(&v4.full_subgroup(), &v4.trivial_subgroup(), &cls, &f3, RootChoice::Canonical),
            Err(AlgebraError::NotShodaShape)
        ));
    }

    #[test]
    fn eps_class_constant_on_cosets() {
        // ε_C(H,K) is supported on cosets of K with a constant value each.
        let c12 = corpus::cyclic(12);
        let f5 = f(5);
        let h = c12.full_subgroup();
        let k = c12.subgroup_closure(&[4]).unwrap(); // order 3, quotient C_4
        // q = 5 ≡ 1 mod 4, so generator classes are singletons.
        let class = CyclotomicClass { k: 4, exponents: vec![1] };
        let e = eps_class(&h, &k, &class, &f5, RootChoice::Canonical).unwrap();
        assert!(e.is_idempotent());
        for x in 0..12 {
            for s in k.iter() {
                let y = c12.mul(x, s);
                assert_eq!(e.coeff(x), e.coeff(y), "constant on coset");
            }
        }
    }

    #[test]
    fn conjugation_swaps_classes_in_s3() {
        let s3 = corpus::dihedral(3);
        let f7 = f(7);
        let r = (0..6).find(|&x| s3.element_order(x) == 3).unwrap();
        let s = (0..6).find(|&x| s3.element_order(x) == 2).unwrap();
        let hr = s3.subgroup_closure(&[r]).unwrap();
        let t = s3.trivial_subgroup();
        let c1 = CyclotomicClass { k: 3, exponents: vec![1] };
        let c2 = CyclotomicClass { k: 3, exponents: vec![2] };
        let e1 = eps_class(&hr, &t, &c1, &f7, RootChoice::Canonical).unwrap();
        let e2 = eps_class(&hr, &t, &c2, &f7, RootChoice::Canonical).unwrap();
        // s inverts r, swapping the two generator classes.
        assert_eq!(e1.conjugate(s), e2);
        assert_eq!(e1.conjugate(s3.identity()), e1);

        // Orbit under the full group has both, and their sum is central.
        let orbit = e1.distinct_conjugates(&s3.full_subgroup());
        assert_eq!(orbit.len(), 2);
        let sum = e1.sum_distinct_conjugates(&s3.full_subgroup());
        assert_eq!(sum, e1.add(&e2));
        assert!(sum.is_central_in(&s3.full_subgroup()));

        // Centralizer of e1 inside S_3 is <r>.
        let cen = e1.centralizer_in(&s3.full_subgroup());
        assert_eq!(cen.elements(), hr.elements());
    }

    #[test]
    fn conjugation_is_ring_automorphism() {
        let s3 = corpus::dihedral(3);
        let f5 = f(5);
        let mut a = AlgebraElement::zero(&s3, &f5);
        let mut b = AlgebraElement::zero(&s3, &f5);
        for g in 0..6 {
            a.set_coeff(g, &f5.scalar((3 * g + 1) as u64));
            b.set_coeff(g, &f5.scalar((2 * g + 3) as u64));
        }
        for g in 0..6 {
            let lhs = a.mul(&b).unwrap().conjugate(g);
            let rhs = a.conjugate(g).mul(&b.conjugate(g)).unwrap();
            assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn ghat_orthogonal_to_eps() {
        let s3 = corpus::dihedral(3);
        let f7 = f(7);
        let g = s3.full_subgroup();
        let a3 = {
            let r = (0..6).find(|&x| s3.element_order(x) == 3).unwrap();
            s3.subgroup_closure(&[r]).unwrap()
        };
        let ghat = hat(&g, &f7).unwrap();
        let e = eps(&g, &a3, &f7).unwrap();
        let preds = idempotent_predicates(&ghat, Some(&e), Some(&g)).unwrap();
        assert!(preds.is_idempotent);
        assert_eq!(preds.is_central_in_m, Some(true));
        assert_eq!(preds.orthogonal_to_b, Some(true));

        let one = AlgebraElement::one(&s3, &f7);
        let preds = idempotent_predicates(&one, Some(&AlgebraElement::zero(&s3, &f7)), Some(&g)).unwrap();
        assert!(preds.is_idempotent);
        assert_eq!(preds.orthogonal_to_b, Some(true));
    }

    #[test]
    fn mismatched_carriers_rejected() {
        let c3 = corpus::cyclic(3);
        let c4 = corpus::cyclic(4);
        let f5 = f(5);
        let a = AlgebraElement::one(&c3, &f5);
        let b = AlgebraElement::one(&c4, &f5);
        assert!(matches!(a.mul(&b), Err(AlgebraError::MismatchedCarrier)));
    }
}
