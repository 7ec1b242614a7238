//! Finite groups with indexed elements, and the subgroup-level operations
//! the idempotent machinery is built on.
//!
//! Every backend (Cayley table, permutation generators, polycyclic
//! presentation) is canonicalized to a full multiplication table at
//! construction and validated: two-sided identity, total inverses, and
//! associativity (exhaustive up to order 256, a seeded 10^4-triple sample
//! above that).  All operations are pure and deterministic; ties always
//! break towards the smallest element index.

pub mod polycyclic;

pub use polycyclic::{PcError, PcPresentation, DEFAULT_STEP_BUDGET};

use std::collections::HashMap;
use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Subgroup enumeration refuses groups larger than this by default.
pub const DEFAULT_SUBGROUP_CEILING: usize = 512;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum GroupError {
    #[error("invalid Cayley table: {0}")]
    InvalidCayley(String),
    #[error("invalid permutation generators: {0}")]
    InvalidPermutation(String),
    #[error("element index {0} out of range")]
    BadElementIndex(usize),
    #[error("invalid subgroup: {0}")]
    InvalidSubgroup(String),
    #[error("K is not normal in H")]
    NotNormal,
    #[error("H/K is not cyclic")]
    NotCyclic,
    #[error("group of order {order} exceeds the search ceiling {ceiling}")]
    GroupTooLarge { order: usize, ceiling: usize },
    #[error(transparent)]
    Pc(#[from] PcError),
}

#[derive(Debug)]
struct GroupInner {
    order: usize,
    identity: u32,
    table: Vec<u32>,
    inverse: Vec<u32>,
    names: Vec<String>,
    desc: String,
    pc: Option<PcPresentation>,
}

/// A finite group with elements indexed `0..order`; cheap to clone.
#[derive(Clone)]
pub struct FiniteGroup {
    inner: Arc<GroupInner>,
}

impl std::fmt::Debug for FiniteGroup {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "FiniteGroup({}, order {})", self.inner.desc, self.inner.order)
    }
}

impl PartialEq for FiniteGroup {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.inner, &other.inner)
    }
}
impl Eq for FiniteGroup {}

impl FiniteGroup {
    /// Builds a group from a full multiplication table
    /// (`table[a][b] = a * b`).
    pub fn from_cayley_table(table: Vec<Vec<usize>>, names: Option<Vec<String>>, desc: &str) -> Result<Self, GroupError> {
        let n = table.len();
        if n == 0 {
            return Err(GroupError::InvalidCayley("empty table".into()));
        }
        let mut flat = vec![0u32; n * n];
        for (a, row) in table.iter().enumerate() {
            if row.len() != n {
                return Err(GroupError::InvalidCayley(format!("row {a} has length {}", row.len())));
            }
            let mut seen = vec![false; n];
            for (b, &c) in row.iter().enumerate() {
                if c >= n {
                    return Err(GroupError::InvalidCayley(format!("entry ({a},{b}) out of range")));
                }
                if seen[c] {
                    return Err(GroupError::InvalidCayley(format!("row {a} repeats element {c}")));
                }
                seen[c] = true;
                flat[a * n + b] = c as u32;
            }
        }
        for b in 0..n {
            let mut seen = vec![false; n];
            for a in 0..n {
                let c = flat[a * n + b] as usize;
                if seen[c] {
                    return Err(GroupError::InvalidCayley(format!("column {b} repeats element {c}")));
                }
                seen[c] = true;
            }
        }
        let names = names.unwrap_or_else(|| (0..n).map(|i| format!("g{i}")).collect());
        Self::finish(n, flat, names, desc.to_string(), None)
    }

    /// Builds a group generated by permutations of `0..degree`
    /// (`gens[g][x]` is the image of point `x`).  Elements are indexed in
    /// BFS discovery order, the identity first.
    pub fn from_permutations(degree: usize, gens: &[Vec<usize>], desc: &str) -> Result<Self, GroupError> {
        if degree == 0 {
            return Err(GroupError::InvalidPermutation("degree must be positive".into()));
        }
        for (i, g) in gens.iter().enumerate() {
            let mut seen = vec![false; degree];
            if g.len() != degree {
                return Err(GroupError::InvalidPermutation(format!("generator {i} has wrong length")));
            }
            for &x in g {
                if x >= degree || seen[x] {
                    return Err(GroupError::InvalidPermutation(format!("generator {i} is not a permutation")));
                }
                seen[x] = true;
            }
        }
        let id: Vec<usize> = (0..degree).collect();
        let mut elements: Vec<Vec<usize>> = vec![id.clone()];
        let mut index: HashMap<Vec<usize>, u32> = HashMap::new();
        index.insert(id, 0);
        let mut head = 0usize;
        while head < elements.len() {
            let cur = elements[head].clone();
            head += 1;
            for g in gens {
                // (cur * g)(x) = g[cur[x]]  (apply cur first, then g)
                let prod: Vec<usize> = cur.iter().map(|&x| g[x]).collect();
                if !index.contains_key(&prod) {
                    index.insert(prod.clone(), elements.len() as u32);
                    elements.push(prod);
                    if elements.len() > 1 << 20 {
                        return Err(GroupError::InvalidPermutation("generated group too large".into()));
                    }
                }
            }
        }
        let n = elements.len();
        let mut flat = vec![0u32; n * n];
        for a in 0..n {
            for b in 0..n {
                let prod: Vec<usize> = elements[a].iter().map(|&x| elements[b][x]).collect();
                flat[a * n + b] = index[&prod];
            }
        }
        let names = (0..n).map(|i| format!("p{i}")).collect();
        Self::finish(n, flat, names, desc.to_string(), None)
    }

    /// Builds a group from a (consistency-checked) polycyclic presentation.
    /// Element `i` is the normal word with mixed-radix rank `i`, so the
    /// identity is element 0.
    pub fn from_presentation(pres: PcPresentation, desc: &str) -> Result<Self, GroupError> {
        pres.consistency_check()?;
        let n = pres.order();
        let mut flat = vec![0u32; n * n];
        // table[a][b] incrementally: b = b_prev * x_t for the last nonzero
        // position t of b, so a*b = (a*b_prev) * x_t.
        let mut names = Vec::with_capacity(n);
        for b in 0..n {
            let nfb = pres.unrank(b);
            names.push(pres.word_name(&nfb));
            let t = match nfb.iter().rposition(|&e| e != 0) {
                None => {
                    for a in 0..n {
                        flat[a * n + b] = a as u32;
                    }
                    continue;
                }
                Some(t) => t,
            };
            let b_prev = b - pres.strides()[t];
            for a in 0..n {
                let prev = flat[a * n + b_prev] as usize;
                let prod = pres.multiply_by_generator(&pres.unrank(prev), t)?;
                flat[a * n + b] = pres.rank(&prod) as u32;
            }
        }
        Self::finish(n, flat, names, desc.to_string(), Some(pres))
    }

    fn finish(
        n: usize,
        flat: Vec<u32>,
        names: Vec<String>,
        desc: String,
        pc: Option<PcPresentation>,
    ) -> Result<Self, GroupError> {
        // Identity: the unique e with e*g = g*e = g for all g.
        let mut identity = None;
        'outer: for e in 0..n {
            for g in 0..n {
                if flat[e * n + g] != g as u32 || flat[g * n + e] != g as u32 {
                    continue 'outer;
                }
            }
            identity = Some(e as u32);
            break;
        }
        let identity = identity.ok_or_else(|| GroupError::InvalidCayley("no two-sided identity".into()))?;
        let mut inverse = vec![u32::MAX; n];
        for a in 0..n {
            match (0..n).find(|&b| flat[a * n + b] == identity) {
                Some(b) => {
                    if flat[b * n + a] != identity {
                        return Err(GroupError::InvalidCayley(format!("one-sided inverse for element {a}")));
                    }
                    inverse[a] = b as u32;
                }
                None => return Err(GroupError::InvalidCayley(format!("element {a} has no inverse"))),
            }
        }
        // Associativity: exhaustive on small groups, seeded sample above.
        let assoc = |a: usize, b: usize, c: usize| -> bool {
            let ab = flat[a * n + b] as usize;
            let bc = flat[b * n + c] as usize;
            flat[ab * n + c] == flat[a * n + bc]
        };
        if n <= 256 {
            for a in 0..n {
                for b in 0..n {
                    for c in 0..n {
                        if !assoc(a, b, c) {
                            return Err(GroupError::InvalidCayley(format!("associativity fails at ({a},{b},{c})")));
                        }
                    }
                }
            }
        } else {
            let mut rng = ChaCha8Rng::seed_from_u64(0);
            for _ in 0..10_000 {
                let a = rng.gen_range(0..n);
                let b = rng.gen_range(0..n);
                let c = rng.gen_range(0..n);
                if !assoc(a, b, c) {
                    return Err(GroupError::InvalidCayley(format!("associativity fails at ({a},{b},{c})")));
                }
            }
        }
        Ok(FiniteGroup {
            inner: Arc::new(GroupInner { order: n, identity, table: flat, inverse, names, desc, pc }),
        })
    }

    pub fn order(&self) -> usize {
        self.inner.order
    }

    pub fn identity(&self) -> usize {
        self.inner.identity as usize
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.inner.table[a * self.inner.order + b] as usize
    }

    #[inline]
    pub fn inv(&self, a: usize) -> usize {
        self.inner.inverse[a] as usize
    }

    /// `g^-1 a g`.
    #[inline]
    pub fn conj(&self, a: usize, g: usize) -> usize {
        self.mul(self.mul(self.inv(g), a), g)
    }

    /// `[a, b] = a^-1 b^-1 a b`.
    pub fn commutator(&self, a: usize, b: usize) -> usize {
        self.mul(self.mul(self.inv(a), self.inv(b)), self.mul(a, b))
    }

    pub fn pow(&self, a: usize, e: i64) -> usize {
        let mut base = if e < 0 { self.inv(a) } else { a };
        let mut e = e.unsigned_abs();
        let mut acc = self.identity();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    pub fn element_order(&self, a: usize) -> usize {
        let mut x = a;
        let mut n = 1;
        while x != self.identity() {
            x = self.mul(x, a);
            n += 1;
        }
        n
    }

    pub fn element_name(&self, a: usize) -> &str {
        &self.inner.names[a]
    }

    pub fn description(&self) -> &str {
        &self.inner.desc
    }

    pub fn presentation(&self) -> Option<&PcPresentation> {
        self.inner.pc.as_ref()
    }

    /// Resolves a word in the presentation generators to an element index;
    /// errors when the group has no polycyclic backend.
    pub fn element_from_word(&self, word: &[(usize, i64)]) -> Result<usize, GroupError> {
        let pc = self.inner.pc.as_ref().ok_or_else(|| {
            GroupError::InvalidSubgroup("generator words require a polycyclic group".into())
        })?;
        Ok(pc.rank(&pc.collect(word)?))
    }

    // ---- subgroup machinery ----

    pub fn trivial_subgroup(&self) -> Subgroup {
        Subgroup::from_sorted_unchecked(self.clone(), vec![self.identity() as u32])
    }

    pub fn full_subgroup(&self) -> Subgroup {
        Subgroup::from_sorted_unchecked(self.clone(), (0..self.order() as u32).collect())
    }

    /// The smallest subgroup containing `gens` (breadth-first closure).
    pub fn subgroup_closure(&self, gens: &[usize]) -> Result<Subgroup, GroupError> {
        let n = self.order();
        for &g in gens {
            if g >= n {
                return Err(GroupError::BadElementIndex(g));
            }
        }
        let mut member = vec![false; n];
        member[self.identity()] = true;
        let mut queue: Vec<usize> = vec![self.identity()];
        let mut head = 0;
        while head < queue.len() {
            let x = queue[head];
            head += 1;
            for &g in gens {
                let y = self.mul(x, g);
                if !member[y] {
                    member[y] = true;
                    queue.push(y);
                }
            }
        }
        let mut elements: Vec<u32> = queue.into_iter().map(|x| x as u32).collect();
        elements.sort_unstable();
        Ok(Subgroup { group: self.clone(), member: member.into_boxed_slice(), elements, gens: Some(gens.to_vec()) })
    }

    /// `N_G(K) = { g : K^g = K }`.
    pub fn normalizer(&self, k: &Subgroup) -> Subgroup {
        let elems: Vec<usize> = (0..self.order())
            .filter(|&g| k.iter().all(|s| k.contains(self.conj(s, g))))
            .collect();
        Subgroup::from_sorted_unchecked(self.clone(), elems.into_iter().map(|x| x as u32).collect())
    }

    /// Right-coset representatives of `H` in `G`: the identity first (for
    /// `H` itself), then ascending smallest index per coset.
    pub fn right_transversal(&self, h: &Subgroup) -> Vec<usize> {
        let n = self.order();
        let mut covered = vec![false; n];
        for s in h.iter() {
            covered[s] = true;
        }
        let mut reps = vec![self.identity()];
        for g in 0..n {
            if covered[g] {
                continue;
            }
            reps.push(g);
            for s in h.iter() {
                covered[self.mul(s, g)] = true;
            }
        }
        reps
    }

    /// Conjugacy classes, each sorted, ordered by their minimal element.
    pub fn conjugacy_classes(&self) -> Vec<Vec<usize>> {
        let n = self.order();
        let mut assigned = vec![false; n];
        let mut classes = Vec::new();
        for x in 0..n {
            if assigned[x] {
                continue;
            }
            let mut class = Vec::new();
            for g in 0..n {
                let y = self.conj(x, g);
                if !assigned[y] {
                    assigned[y] = true;
                    class.push(y);
                }
            }
            class.sort_unstable();
            classes.push(class);
        }
        classes
    }

    /// A short generating set found greedily over ascending indices.
    pub fn small_generating_set(&self, sub: &Subgroup) -> Vec<usize> {
        let mut gens: Vec<usize> = Vec::new();
        let mut current = self.trivial_subgroup();
        for x in sub.iter() {
            if !current.contains(x) {
                gens.push(x);
                current = self.subgroup_closure(&gens).expect("indices valid");
                if current.order() == sub.order() {
                    break;
                }
            }
        }
        gens
    }

    /// Normal closure of `seed` in the subgroup `h` (all elements of `seed`
    /// must lie in `h`).
    pub fn normal_closure_in(&self, h: &Subgroup, seed: &[usize]) -> Subgroup {
        let hgens = self.small_generating_set(h);
        let mut gens: Vec<usize> = seed.to_vec();
        loop {
            let s = self.subgroup_closure(&gens).expect("indices valid");
            let mut added = false;
            for &t in &hgens {
                for &x in gens.clone().iter() {
                    let c = self.conj(x, t);
                    if !s.contains(c) {
                        gens.push(c);
                        added = true;
                    }
                }
            }
            if !added {
                return s;
            }
        }
    }

    /// All normal subgroups of `H` minimal with respect to properly
    /// containing `K` (requires `K` normal in `H`).
    pub fn minimal_normals_over(&self, h: &Subgroup, k: &Subgroup) -> Result<Vec<Subgroup>, GroupError> {
        if !k.is_subgroup_of(h) || !k.normal_in(h) {
            return Err(GroupError::NotNormal);
        }
        if h.order() == k.order() {
            return Ok(vec![]);
        }
        let mut candidates: Vec<Subgroup> = Vec::new();
        let mut kgens = self.small_generating_set(k);
        kgens.sort_unstable();
        for x in h.iter() {
            if k.contains(x) {
                continue;
            }
            let mut seed = kgens.clone();
            seed.push(x);
            let l = self.normal_closure_in(h, &seed);
            if !candidates.iter().any(|c| c.elements == l.elements) {
                candidates.push(l);
            }
        }
        // Keep the inclusion-minimal ones.
        let mut minimal: Vec<Subgroup> = Vec::new();
        for (i, l) in candidates.iter().enumerate() {
            let is_minimal = candidates
                .iter()
                .enumerate()
                .all(|(j, m)| j == i || !(m.order() < l.order() && m.is_subgroup_of(l)));
            if is_minimal {
                minimal.push(l.clone());
            }
        }
        minimal.sort_by(|a, b| a.order().cmp(&b.order()).then_with(|| a.elements.cmp(&b.elements)));
        minimal.dedup_by(|a, b| a.elements == b.elements);
        Ok(minimal)
    }

    /// Deterministic generator of the cyclic quotient `H/K`: the smallest
    /// element index whose coset generates, together with `[H:K]`.
    pub fn cyclic_quotient_generator(&self, h: &Subgroup, k: &Subgroup) -> Result<(usize, usize), GroupError> {
        if !k.is_subgroup_of(h) || !k.normal_in(h) {
            return Err(GroupError::NotNormal);
        }
        let index = h.order() / k.order();
        if index == 1 {
            return Ok((self.identity(), 1));
        }
        for x in h.iter() {
            let mut y = x;
            let mut j = 1;
            while !k.contains(y) {
                y = self.mul(y, x);
                j += 1;
            }
            if j == index {
                return Ok((x, index));
            }
        }
        Err(GroupError::NotCyclic)
    }

    /// Condition (ii) of a Shoda pair for one element: whether the subgroup
    /// generated by `{[h, g] : h in H}` meets `H` inside `K`.
    pub fn shoda_condition_ii(&self, h: &Subgroup, k: &Subgroup, g: usize) -> bool {
        let comms: Vec<usize> = h.iter().map(|x| self.commutator(x, g)).collect();
        let gen = self.subgroup_closure(&comms).expect("indices valid");
        let ok = gen.iter().filter(|&x| h.contains(x)).all(|x| k.contains(x));
        ok
    }

    /// All subgroups, deduplicated, sorted by (order, elements).
    pub fn enumerate_subgroups(&self, ceiling: usize) -> Result<Vec<Subgroup>, GroupError> {
        let n = self.order();
        if n > ceiling {
            return Err(GroupError::GroupTooLarge { order: n, ceiling });
        }
        let mut found: HashMap<Vec<u32>, Subgroup> = HashMap::new();
        let trivial = self.trivial_subgroup();
        let mut queue = vec![trivial.elements.clone()];
        found.insert(trivial.elements.clone(), trivial);
        let mut head = 0;
        while head < queue.len() {
            let base = queue[head].clone();
            head += 1;
            for g in 0..n {
                if found[&base].contains(g) {
                    continue;
                }
                let mut gens: Vec<usize> = found[&base].gens.clone().unwrap_or_else(|| {
                    base.iter().map(|&x| x as usize).collect()
                });
                gens.push(g);
                let sub = self.subgroup_closure(&gens).expect("indices valid");
                if !found.contains_key(&sub.elements) {
                    queue.push(sub.elements.clone());
                    found.insert(sub.elements.clone(), sub);
                }
            }
        }
        let mut subs: Vec<Subgroup> = found.into_values().collect();
        subs.sort_by(|a, b| a.order().cmp(&b.order()).then_with(|| a.elements.cmp(&b.elements)));
        Ok(subs)
    }
}

/// A subgroup: parent handle, sorted element list, membership mask.
#[derive(Clone)]
pub struct Subgroup {
    group: FiniteGroup,
    elements: Vec<u32>,
    member: Box<[bool]>,
    gens: Option<Vec<usize>>,
}

impl std::fmt::Debug for Subgroup {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Subgroup(order {})", self.elements.len())
    }
}

impl PartialEq for Subgroup {
    fn eq(&self, other: &Self) -> bool {
        self.group == other.group && self.elements == other.elements
    }
}
impl Eq for Subgroup {}

impl Subgroup {
    fn from_sorted_unchecked(group: FiniteGroup, elements: Vec<u32>) -> Self {
        let mut member = vec![false; group.order()].into_boxed_slice();
        for &x in &elements {
            member[x as usize] = true;
        }
        Subgroup { group, elements, member, gens: None }
    }

    /// Validates closure, identity and inverses of an explicit element set.
    pub fn from_elements(group: &FiniteGroup, elements: &[usize]) -> Result<Self, GroupError> {
        let n = group.order();
        let mut sorted: Vec<u32> = Vec::with_capacity(elements.len());
        let mut member = vec![false; n];
        for &x in elements {
            if x >= n {
                return Err(GroupError::BadElementIndex(x));
            }
            if !member[x] {
                member[x] = true;
                sorted.push(x as u32);
            }
        }
        sorted.sort_unstable();
        if !member[group.identity()] {
            return Err(GroupError::InvalidSubgroup("missing identity".into()));
        }
        for &a in &sorted {
            if !member[group.inv(a as usize)] {
                return Err(GroupError::InvalidSubgroup("not closed under inverse".into()));
            }
            for &b in &sorted {
                if !member[group.mul(a as usize, b as usize)] {
                    return Err(GroupError::InvalidSubgroup("not closed under multiplication".into()));
                }
            }
        }
        if group.order() % sorted.len() != 0 {
            return Err(GroupError::InvalidSubgroup("order does not divide the group order".into()));
        }
        Ok(Subgroup { group: group.clone(), elements: sorted, member: member.into_boxed_slice(), gens: None })
    }

    pub fn group(&self) -> &FiniteGroup {
        &self.group
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    #[inline]
    pub fn contains(&self, x: usize) -> bool {
        self.member[x]
    }

    pub fn elements(&self) -> &[u32] {
        &self.elements
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.elements.iter().map(|&x| x as usize)
    }

    pub fn generators(&self) -> Option<&[usize]> {
        self.gens.as_deref()
    }

    pub fn is_subgroup_of(&self, other: &Subgroup) -> bool {
        self.elements.iter().all(|&x| other.member[x as usize])
    }

    pub fn is_full_group(&self) -> bool {
        self.order() == self.group.order()
    }

    /// Whether `other` normalizes this subgroup elementwise.
    pub fn normal_in(&self, other: &Subgroup) -> bool {
        let g = &self.group;
        other.iter().all(|t| self.iter().all(|s| self.contains(g.conj(s, t))))
    }
}
