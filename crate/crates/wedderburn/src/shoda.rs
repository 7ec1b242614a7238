//! Shoda pairs, strong inductive chains, and the iterated conjugate-sum
//! idempotents `ε^{(i)}(H,K)` and `ε_C^{(i)}(H,K)`.
//!
//! A chain `H = H_0 ≤ ... ≤ H_n = G` certifies when, at every level,
//! `H_i` is normal in the centralizer of `ε^{(i)}(H,K)` in `H_{i+1}` and
//! the distinct `H_{i+1}`-conjugates of `ε^{(i)}(H,K)` are mutually
//! orthogonal.  Certification caches the `ε^{(i)}` and the centralizers,
//! which is everything the decomposer needs later.

use std::sync::Arc;

use crate::algebra::{eps, eps_class, AlgebraElement, AlgebraError};
use crate::cyclotomic::CyclotomicClass;
use crate::gf::{FiniteField, RootChoice};
use crate::group::{FiniteGroup, GroupError, Subgroup, DEFAULT_SUBGROUP_CEILING};

/// A pair `(H, K)` with `K` normal in `H` and `H/K` cyclic, satisfying the
/// Shoda condition against the ambient group.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ShodaPair {
    pub h: Subgroup,
    pub k: Subgroup,
    /// Smallest element whose coset generates `H/K`.
    pub quotient_gen: usize,
    /// `[H:K]`.
    pub index: usize,
}

/// Outcome of the Shoda-pair test; failures carry their witness.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ShodaCheck {
    Pair(ShodaPair),
    NotCyclic,
    /// `g` outside `H` with `[H,g] ∩ H ⊆ K`.
    ConditionIiViolated { witness: usize },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ChainCondition {
    /// Condition (i): `H_i` normal in `Cen_{H_{i+1}}(ε^{(i)})`.
    CentralizerNormality,
    /// Condition (ii): distinct `H_{i+1}`-conjugates mutually orthogonal.
    OrthogonalConjugates,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ChainWitness {
    /// `moved ∈ H_i` is conjugated outside `H_i` by `conjugator`.
    NonNormal { conjugator: usize, moved: usize },
    /// `ε^{(i)} · (ε^{(i)})^conjugator ≠ 0` with the conjugate distinct.
    NonOrthogonal { conjugator: usize },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CertificationFailure {
    pub level: usize,
    pub condition: ChainCondition,
    pub witness: ChainWitness,
}

impl std::fmt::Display for CertificationFailure {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match (&self.condition, &self.witness) {
            (ChainCondition::CentralizerNormality, ChainWitness::NonNormal { conjugator, moved }) => write!(
                f,
                "level {}: H_i not normal in the centralizer (element {} conjugates {} outside H_i)",
                self.level, conjugator, moved
            ),
            (ChainCondition::OrthogonalConjugates, ChainWitness::NonOrthogonal { conjugator }) => write!(
                f,
                "level {}: conjugate by element {} overlaps eps non-orthogonally",
                self.level, conjugator
            ),
            _ => write!(f, "level {}: condition failed", self.level),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ChainError {
    #[error("bad chain endpoints: {0}")]
    BadChainEndpoints(String),
    #[error("chain certification failed: {0}")]
    Certification(CertificationFailure),
    #[error("no strong inductive chain found within budget {budget}")]
    NotFound { budget: usize },
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error(transparent)]
    Algebra(AlgebraError),
}

impl From<AlgebraError> for ChainError {
    fn from(e: AlgebraError) -> Self {
        match e {
            AlgebraError::Group(g) => ChainError::Group(g),
            other => ChainError::Algebra(other),
        }
    }
}

/// A certified strong inductive chain with its per-level cache.
#[derive(Debug, Clone)]
pub struct InductiveChain {
    pub pair: ShodaPair,
    /// `H_0, ..., H_n` (so `len() = n + 1`).
    pub levels: Vec<Subgroup>,
    /// `ε^{(0)}, ..., ε^{(n)}`.
    eps_levels: Vec<AlgebraElement>,
    /// `Cen_{H_{i+1}}(ε^{(i)})` for `0 <= i < n`.
    centralizers: Vec<Subgroup>,
    field: Arc<FiniteField>,
}

impl InductiveChain {
    /// The iterated conjugate sums `[ε^{(0)}, ..., ε^{(n)}]`.
    pub fn eps_iter(&self) -> &[AlgebraElement] {
        &self.eps_levels
    }

    /// `𝔢(G,H,K) = ε^{(n)}(H,K)`.
    pub fn final_eps(&self) -> &AlgebraElement {
        self.eps_levels.last().unwrap()
    }

    /// `Cen_{H_{i+1}}(ε^{(i)})` for each level transition.
    pub fn centralizers(&self) -> &[Subgroup] {
        &self.centralizers
    }

    pub fn field(&self) -> &Arc<FiniteField> {
        &self.field
    }

    pub fn num_steps(&self) -> usize {
        self.levels.len() - 1
    }

    /// `[ε_C^{(0)}, ..., ε_C^{(n)}]` for a generator class `C`.
    pub fn eps_class_iter(
        &self,
        class: &CyclotomicClass,
        choice: RootChoice,
    ) -> Result<Vec<AlgebraElement>, AlgebraError> {
        let mut out = Vec::with_capacity(self.levels.len());
        out.push(eps_class(&self.pair.h, &self.pair.k, class, &self.field, choice)?);
        for i in 1..self.levels.len() {
            let next = out[i - 1].sum_distinct_conjugates(&self.levels[i]);
            out.push(next);
        }
        Ok(out)
    }
}

/// Tests the Shoda-pair conditions; `K ⊴ H` is a precondition (error), the
/// rest is reported in the `ShodaCheck`.
pub fn is_shoda_pair(g: &FiniteGroup, h: &Subgroup, k: &Subgroup) -> Result<ShodaCheck, GroupError> {
    let (quotient_gen, index) = match g.cyclic_quotient_generator(h, k) {
        Ok(x) => x,
        Err(GroupError::NotCyclic) => return Ok(ShodaCheck::NotCyclic),
        Err(e) => return Err(e),
    };
    for x in 0..g.order() {
        if h.contains(x) {
            continue;
        }
        if g.shoda_condition_ii(h, k, x) {
            return Ok(ShodaCheck::ConditionIiViolated { witness: x });
        }
    }
    Ok(ShodaCheck::Pair(ShodaPair { h: h.clone(), k: k.clone(), quotient_gen, index }))
}

/// Certifies the chain `levels` (which must run from `pair.h` to the full
/// group) against conditions (i) and (ii), caching `ε^{(i)}`.
pub fn check_chain(
    g: &FiniteGroup,
    pair: &ShodaPair,
    levels: Vec<Subgroup>,
    field: &Arc<FiniteField>,
) -> Result<InductiveChain, ChainError> {
    if levels.is_empty() || levels[0].elements() != pair.h.elements() {
        return Err(ChainError::BadChainEndpoints("chain must start at H".into()));
    }
    if !levels.last().unwrap().is_full_group() {
        return Err(ChainError::BadChainEndpoints("chain must end at G".into()));
    }
    for i in 0..levels.len() - 1 {
        if !levels[i].is_subgroup_of(&levels[i + 1]) {
            return Err(ChainError::BadChainEndpoints(format!("level {} is not contained in level {}", i, i + 1)));
        }
    }
    let mut eps_levels = vec![eps(&pair.h, &pair.k, field)?];
    let mut centralizers = Vec::new();
    for i in 0..levels.len() - 1 {
        let current = &eps_levels[i];
        let cen = current.centralizer_in(&levels[i + 1]);
        // Condition (i): H_i normal in the centralizer.
        for z in cen.iter() {
            for x in levels[i].iter() {
                let moved = g.conj(x, z);
                if !levels[i].contains(moved) {
                    return Err(ChainError::Certification(CertificationFailure {
                        level: i,
                        condition: ChainCondition::CentralizerNormality,
                        witness: ChainWitness::NonNormal { conjugator: z, moved: x },
                    }));
                }
            }
        }
        // Condition (ii): distinct conjugates mutually orthogonal.
        let orbit = current.distinct_conjugates(&levels[i + 1]);
        'pairs: for a in 0..orbit.len() {
            for b in a + 1..orbit.len() {
                if !orbit[a].is_orthogonal_to(&orbit[b])? {
                    // Locate a concrete conjugator witness.
                    for z in levels[i + 1].iter() {
                        let c = current.conjugate(z);
                        if c != *current
                            && (!current.mul(&c)?.is_zero() || !c.mul(current)?.is_zero())
                        {
                            return Err(ChainError::Certification(CertificationFailure {
                                level: i,
                                condition: ChainCondition::OrthogonalConjugates,
                                witness: ChainWitness::NonOrthogonal { conjugator: z },
                            }));
                        }
                    }
                    break 'pairs; // unreachable: a witness must exist
                }
            }
        }
        let mut next = AlgebraElement::zero(g, field);
        for c in &orbit {
            next = next.add(c);
        }
        eps_levels.push(next);
        centralizers.push(cen);
    }
    Ok(InductiveChain { pair: pair.clone(), levels, eps_levels, centralizers, field: field.clone() })
}

/// Chain-search limits; the fast path `[H, G]` is always free.
#[derive(Debug, Clone, Copy)]
pub struct SearchLimits {
    pub subgroup_ceiling: usize,
    /// Number of non-trivial chain candidates `find_chain` may certify-test.
    pub chain_budget: usize,
    /// Maximum number of intermediate levels inserted between H and G.
    pub max_intermediates: usize,
}

impl Default for SearchLimits {
    fn default() -> Self {
        SearchLimits { subgroup_ceiling: DEFAULT_SUBGROUP_CEILING, chain_budget: 256, max_intermediates: 2 }
    }
}

/// Finds one strong inductive chain: `[H, G]` first, then a shortest-first
/// backtracking search through the subgroup lattice.  `NotFound` is a budget
/// statement, not a proof that no chain exists.
pub fn find_chain(
    g: &FiniteGroup,
    pair: &ShodaPair,
    field: &Arc<FiniteField>,
    limits: &SearchLimits,
) -> Result<InductiveChain, ChainError> {
    let mut found = find_chains(g, pair, field, limits, 1)?;
    found.pop().ok_or(ChainError::NotFound { budget: limits.chain_budget })
}

/// Collects up to `max_count` distinct certified chains (used to exercise
/// chain independence); the `[H, G]` fast path is tried first.
pub fn find_chains(
    g: &FiniteGroup,
    pair: &ShodaPair,
    field: &Arc<FiniteField>,
    limits: &SearchLimits,
    max_count: usize,
) -> Result<Vec<InductiveChain>, ChainError> {
    let mut out = Vec::new();
    let full = g.full_subgroup();
    let fast: Vec<Subgroup> =
        if pair.h.is_full_group() { vec![full.clone()] } else { vec![pair.h.clone(), full.clone()] };
    if let Ok(chain) = check_chain(g, pair, fast, field) {
        out.push(chain);
    }
    if out.len() >= max_count || limits.chain_budget == 0 || pair.h.is_full_group() {
        if out.is_empty() && limits.chain_budget == 0 {
            return Err(ChainError::NotFound { budget: 0 });
        }
        return Ok(out);
    }
    // Intermediate candidates: proper subgroups strictly between H and G.
    let subgroups = g.enumerate_subgroups(limits.subgroup_ceiling)?;
    let mids: Vec<Subgroup> = subgroups
        .into_iter()
        .filter(|m| m.order() > pair.h.order() && m.order() < g.order() && pair.h.is_subgroup_of(m))
        .collect();
    let mut budget = limits.chain_budget;
    // Iterative deepening: all chains with 1 intermediate, then 2, ...
    for depth in 1..=limits.max_intermediates {
        let mut stack: Vec<Vec<usize>> = vec![vec![]];
        while let Some(prefix) = stack.pop() {
            if prefix.len() == depth {
                if budget == 0 {
                    return if out.is_empty() { Err(ChainError::NotFound { budget: limits.chain_budget }) } else { Ok(out) };
                }
                budget -= 1;
                let mut levels = vec![pair.h.clone()];
                levels.extend(prefix.iter().map(|&i| mids[i].clone()));
                levels.push(full.clone());
                if let Ok(chain) = check_chain(g, pair, levels, field) {
                    out.push(chain);
                    if out.len() >= max_count {
                        return Ok(out);
                    }
                }
                continue;
            }
            // Extend with any mid strictly containing the previous level;
            // push in reverse so smaller candidates are explored first.
            let lower = prefix.last().map(|&i| &mids[i]);
            for i in (0..mids.len()).rev() {
                let ok = match lower {
                    None => true,
                    Some(prev) => prev.order() < mids[i].order() && prev.is_subgroup_of(&mids[i]),
                };
                if ok {
                    let mut next = prefix.clone();
                    next.push(i);
                    stack.push(next);
                }
            }
        }
    }
    if out.is_empty() {
        Err(ChainError::NotFound { budget: limits.chain_budget })
    } else {
        Ok(out)
    }
}

/// Whether `(H, K)` is a strong Shoda pair: a Shoda pair whose chain
/// `[H, G]` certifies.
pub fn is_strong_shoda_pair(
    g: &FiniteGroup,
    h: &Subgroup,
    k: &Subgroup,
    field: &Arc<FiniteField>,
) -> Result<bool, ChainError> {
    let pair = match is_shoda_pair(g, h, k)? {
        ShodaCheck::Pair(p) => p,
        _ => return Ok(false),
    };
    let levels: Vec<Subgroup> =
        if pair.h.is_full_group() { vec![g.full_subgroup()] } else { vec![pair.h.clone(), g.full_subgroup()] };
    match check_chain(g, &pair, levels, field) {
        Ok(_) => Ok(true),
        Err(ChainError::Certification(_)) => Ok(false),
        Err(e) => Err(e),
    }
}
