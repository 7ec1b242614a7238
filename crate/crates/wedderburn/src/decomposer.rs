//! Wedderburn decomposition of `F_q G` from generalized strong Shoda pairs:
//! computes `R_(H,K)` by orbit refinement along a certified chain, the
//! simple-component parameters `(n, l)` with `n = [G:H]` and
//! `l = o / Π [C_i : H_i]`, and the complete decomposition with its
//! sum-to-one and orthogonality checks.

use std::collections::HashMap;
use std::sync::Arc;
use std::time::Instant;

use crate::algebra::{AlgebraElement, AlgebraError};
use crate::cyclotomic::{generator_classes, CyclotomicClass};
use crate::gf::{mult_order, FiniteField, GfError, RootChoice};
use crate::group::{FiniteGroup, GroupError, Subgroup};
use crate::shoda::{
    check_chain, find_chain, is_shoda_pair, ChainError, InductiveChain, SearchLimits, ShodaCheck,
};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum DecomposeError {
    #[error("F_q G is not semisimple: characteristic {p} divides the group order {order}")]
    NotSemisimple { p: u64, order: usize },
    #[error("(H, K) with |H| = {h_order}, |K| = {k_order} is not a Shoda pair: {reason}")]
    NotShodaPair { h_order: usize, k_order: usize, reason: String },
    #[error("pair idempotents do not sum to 1; defect supported on {defect_support} elements")]
    IncompletePairSet { defect_support: usize },
    #[error("centralizer index product {product} does not divide o = {o}")]
    DivisibilityViolation { o: u64, product: u64 },
    #[error("pair search exhausted after {pairs_found} pairs; defect supported on {defect_support} elements")]
    Incomplete { pairs_found: usize, defect_support: usize },
    #[error("internal invariant violated: {0}")]
    Internal(String),
    #[error(transparent)]
    Chain(#[from] ChainError),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error(transparent)]
    Gf(#[from] GfError),
}

/// One simple component `M_n(F_{q^l})` of `F_q G`.
#[derive(Debug, Clone)]
pub struct WedderburnComponent {
    /// Position of the originating pair in the (deduplicated) input list.
    pub pair_index: usize,
    /// The cyclotomic class representative in `R_(H,K)`.
    pub class: CyclotomicClass,
    /// `n = [G:H]`.
    pub matrix_size: usize,
    /// `l`: the component is a matrix ring over `F_{q^l}`.
    pub field_degree: u64,
    /// Multiplicative order of `q` mod `[H:K]`.
    pub o: u64,
    /// `[C_i : H_i]` for each chain step.
    pub centralizer_indices: Vec<usize>,
    /// The primitive central idempotent generating the component.
    pub idempotent: AlgebraElement,
}

impl WedderburnComponent {
    /// `n^2 * l`, the `F_q`-dimension of the component.
    pub fn dimension(&self) -> usize {
        self.matrix_size * self.matrix_size * self.field_degree as usize
    }

    /// Exact dimension of the two-sided ideal `F_q G * e`, by the rank of
    /// the left translates of the idempotent.
    pub fn ideal_dimension(&self) -> usize {
        crate::algebra::ideal_dimension(&self.idempotent)
    }
}

/// Per-level orbit data from the `R_(H,K)` refinement: entering `level` `i`,
/// the centralizer of `ε^{(i-1)}` in `H_i` acts on the surviving classes.
#[derive(Debug, Clone)]
pub struct LevelOrbits {
    /// The level being entered (1-based: orbits under `Cen_{H_i}(ε^{(i-1)})`).
    pub level: usize,
    /// Orbits, each listing the class representatives it merges.
    pub orbits: Vec<Vec<u64>>,
    /// Chosen representatives (smallest exponent per orbit).
    pub survivors: Vec<u64>,
}

/// Computes `R_(H,K)` along the chain: `R_0 = C_q(H/K)`, then per level the
/// orbit representatives of `{ε_C^{(i)}}` under the cached centralizer.
pub fn compute_r(
    chain: &InductiveChain,
    choice: RootChoice,
) -> Result<(Vec<CyclotomicClass>, Vec<LevelOrbits>), DecomposeError> {
    let g = chain.pair.h.group().clone();
    let field = chain.field().clone();
    let q = field.cardinality();
    let k = chain.pair.index as u64;
    let mut current: Vec<CyclotomicClass> = generator_classes(k, q)?;
    let mut eps_c: Vec<AlgebraElement> = current
        .iter()
        .map(|c| crate::algebra::eps_class(&chain.pair.h, &chain.pair.k, c, &field, choice))
        .collect::<Result<_, _>>()?;
    let mut level_data = Vec::new();
    for i in 0..chain.num_steps() {
        let z = &chain.centralizers()[i];
        let zgens = g.small_generating_set(z);
        // Match conjugates back to classes by coefficient vector.
        let lookup: HashMap<&AlgebraElement, usize> =
            eps_c.iter().enumerate().map(|(idx, e)| (e, idx)).collect();
        let mut orbit_of = vec![usize::MAX; current.len()];
        let mut orbits: Vec<Vec<u64>> = Vec::new();
        for s in 0..current.len() {
            if orbit_of[s] != usize::MAX {
                continue;
            }
            let id = orbits.len();
            let mut members = vec![s];
            orbit_of[s] = id;
            let mut head = 0;
            while head < members.len() {
                let m = members[head];
                head += 1;
                for &zg in &zgens {
                    let conj = eps_c[m].conjugate(zg);
                    let idx = *lookup.get(&conj).ok_or_else(|| {
                        DecomposeError::Internal(
                            "conjugate of a class idempotent does not match any class".into(),
                        )
                    })?;
                    if orbit_of[idx] == usize::MAX {
                        orbit_of[idx] = id;
                        members.push(idx);
                    }
                }
            }
            let mut reps: Vec<u64> = members.iter().map(|&m| current[m].representative()).collect();
            reps.sort_unstable();
            orbits.push(reps);
        }
        let survivors: Vec<u64> = orbits.iter().map(|o| o[0]).collect();
        level_data.push(LevelOrbits { level: i + 1, orbits: orbits.clone(), survivors: survivors.clone() });
        // Advance the surviving classes to level i+1.
        let mut next_classes = Vec::with_capacity(survivors.len());
        let mut next_eps = Vec::with_capacity(survivors.len());
        for &rep in &survivors {
            let pos = current.iter().position(|c| c.representative() == rep).unwrap();
            next_classes.push(current[pos].clone());
            next_eps.push(eps_c[pos].sum_distinct_conjugates(&chain.levels[i + 1]));
        }
        current = next_classes;
        eps_c = next_eps;
    }
    Ok((current, level_data))
}

/// Builds the component for one class `C ∈ R_(H,K)`.
pub fn component(
    chain: &InductiveChain,
    class: &CyclotomicClass,
    pair_index: usize,
    choice: RootChoice,
) -> Result<WedderburnComponent, DecomposeError> {
    let g = chain.pair.h.group();
    let field = chain.field();
    let q = field.cardinality();
    let o = mult_order(q, chain.pair.index as u64)?;
    let iter = chain.eps_class_iter(class, choice)?;
    let mut product = 1u64;
    let mut centralizer_indices = Vec::with_capacity(chain.num_steps());
    for i in 0..chain.num_steps() {
        let cen = iter[i].centralizer_in(&chain.levels[i + 1]);
        if !chain.levels[i].is_subgroup_of(&cen) {
            return Err(DecomposeError::Internal(
                "H_i does not centralize its own class idempotent".into(),
            ));
        }
        let idx = cen.order() / chain.levels[i].order();
        centralizer_indices.push(idx);
        product *= idx as u64;
    }
    if o % product != 0 {
        return Err(DecomposeError::DivisibilityViolation { o, product });
    }
    let l = o / product;
    let matrix_size = g.order() / chain.pair.h.order();
    Ok(WedderburnComponent {
        pair_index,
        class: class.clone(),
        matrix_size,
        field_degree: l,
        o,
        centralizer_indices,
        idempotent: iter.into_iter().last().unwrap(),
    })
}

/// Per-pair diagnostics included in the report.
#[derive(Debug, Clone)]
pub struct PairReport {
    pub pair_index: usize,
    pub h_order: usize,
    pub k_order: usize,
    pub quotient_index: usize,
    /// Orders of the chain levels `H_0, ..., H_n`.
    pub chain_orders: Vec<usize>,
    /// Whether the pair certified along `[H, G]` (i.e. is strong over F_q).
    pub strong: bool,
    pub r_classes: Vec<CyclotomicClass>,
    pub level_orbits: Vec<LevelOrbits>,
}

/// The full decomposition of `F_q G`.
#[derive(Debug, Clone)]
pub struct DecompositionReport {
    pub group_desc: String,
    pub group_order: usize,
    pub q: u128,
    pub components: Vec<WedderburnComponent>,
    pub pair_reports: Vec<PairReport>,
    pub complete: bool,
    pub duplicates_dropped: usize,
    pub dims_verified: bool,
    pub elapsed_ms: u128,
}

impl DecompositionReport {
    /// Multiset of `(n, l)` with multiplicities, sorted by `(n, l)`.
    pub fn component_multiset(&self) -> Vec<((usize, u64), usize)> {
        let mut counts: Vec<((usize, u64), usize)> = Vec::new();
        for c in &self.components {
            let key = (c.matrix_size, c.field_degree);
            match counts.iter_mut().find(|(k, _)| *k == key) {
                Some((_, n)) => *n += 1,
                None => counts.push((key, 1)),
            }
        }
        counts.sort_unstable();
        counts
    }

    /// The decomposition in ⊕-notation with multiplicities, e.g.
    /// `F_41^(8) ⊕ M_8(F_41)^(3) ⊕ M_20(F_41)^(2)`.
    pub fn aggregate_string(&self) -> String {
        let parts: Vec<String> = self
            .component_multiset()
            .into_iter()
            .map(|((n, l), count)| {
                let base = field_name(self.q, l);
                let term = if n == 1 { base } else { format!("M_{n}({base})") };
                if count == 1 {
                    term
                } else {
                    format!("{term}^({count})")
                }
            })
            .collect();
        parts.join(" ⊕ ")
    }

    /// Sum over components of `n^2 l`.
    pub fn total_dimension(&self) -> usize {
        self.components.iter().map(|c| c.dimension()).sum()
    }
}

pub fn field_name(q: u128, l: u64) -> String {
    if l == 1 {
        return format!("F_{q}");
    }
    match u32::try_from(l).ok().and_then(|l32| q.checked_pow(l32)) {
        Some(ql) => format!("F_{ql}"),
        None => format!("F_{q}^{l}"),
    }
}

/// How much of the `dim(F_q G e) = n^2 l` invariant to check exactly.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum VerifyDims {
    /// Check for groups of order at most 256.
    #[default]
    Auto,
    Always,
    Never,
}

#[derive(Debug, Clone, Copy, Default)]
pub struct DecomposeOptions {
    pub root_choice: RootChoice,
    pub verify_dims: VerifyDims,
    pub limits: SearchLimits,
}

/// A pair to decompose with, optionally with an explicit chain.
#[derive(Debug, Clone)]
pub struct PairSpec {
    pub h: Subgroup,
    pub k: Subgroup,
    pub chain: Option<Vec<Subgroup>>,
}

fn ensure_semisimple(g: &FiniteGroup, field: &Arc<FiniteField>) -> Result<(), DecomposeError> {
    let p = field.characteristic();
    if g.order() as u64 % p == 0 {
        return Err(DecomposeError::NotSemisimple { p, order: g.order() });
    }
    Ok(())
}

/// Certifies the pairs (via explicit chains or chain search), deduplicates
/// equivalent pairs by equality of `𝔢(G,H,K)`, and returns the chains.
fn certify_pairs(
    g: &FiniteGroup,
    field: &Arc<FiniteField>,
    pairs: &[PairSpec],
    limits: &SearchLimits,
) -> Result<(Vec<InductiveChain>, usize), DecomposeError> {
    let mut chains: Vec<InductiveChain> = Vec::new();
    let mut dropped = 0usize;
    for spec in pairs {
        let pair = match is_shoda_pair(g, &spec.h, &spec.k)? {
            ShodaCheck::Pair(p) => p,
            ShodaCheck::NotCyclic => {
                return Err(DecomposeError::NotShodaPair {
                    h_order: spec.h.order(),
                    k_order: spec.k.order(),
                    reason: "H/K is not cyclic".into(),
                })
            }
            ShodaCheck::ConditionIiViolated { witness } => {
                return Err(DecomposeError::NotShodaPair {
                    h_order: spec.h.order(),
                    k_order: spec.k.order(),
                    reason: format!("condition (ii) violated by element {witness}"),
                })
            }
        };
        let chain = match &spec.chain {
            Some(levels) => check_chain(g, &pair, levels.clone(), field)?,
            None => find_chain(g, &pair, field, limits)?,
        };
        if chains.iter().any(|c| c.final_eps() == chain.final_eps()) {
            dropped += 1;
            continue;
        }
        chains.push(chain);
    }
    Ok((chains, dropped))
}

/// The complete Wedderburn decomposition of `F_q G` from the given pairs.
pub fn decompose(
    g: &FiniteGroup,
    field: &Arc<FiniteField>,
    pairs: &[PairSpec],
    opts: &DecomposeOptions,
) -> Result<DecompositionReport, DecomposeError> {
    let start = Instant::now();
    ensure_semisimple(g, field)?;
    let (chains, duplicates_dropped) = certify_pairs(g, field, pairs, &opts.limits)?;
    assemble(g, field, chains, duplicates_dropped, opts, start)
}

fn assemble(
    g: &FiniteGroup,
    field: &Arc<FiniteField>,
    chains: Vec<InductiveChain>,
    duplicates_dropped: usize,
    opts: &DecomposeOptions,
    start: Instant,
) -> Result<DecompositionReport, DecomposeError> {
    let mut components = Vec::new();
    let mut pair_reports = Vec::new();
    for (pair_index, chain) in chains.iter().enumerate() {
        let (r_classes, level_orbits) = compute_r(chain, opts.root_choice)?;
        for class in &r_classes {
            components.push(component(chain, class, pair_index, opts.root_choice)?);
        }
        pair_reports.push(PairReport {
            pair_index,
            h_order: chain.pair.h.order(),
            k_order: chain.pair.k.order(),
            quotient_index: chain.pair.index,
            chain_orders: chain.levels.iter().map(|l| l.order()).collect(),
            strong: chain.num_steps() <= 1,
            r_classes,
            level_orbits,
        });
    }
    components.sort_by_key(|c| (c.pair_index, c.class.representative()));

    // Eqn-(10)-style exact checks: mutual orthogonality and sum-to-one.
    for i in 0..components.len() {
        for j in i + 1..components.len() {
            if !components[i].idempotent.is_orthogonal_to(&components[j].idempotent)? {
                return Err(DecomposeError::Internal(format!(
                    "component idempotents {i} and {j} are not orthogonal"
                )));
            }
        }
    }
    let mut sum = AlgebraElement::zero(g, field);
    for c in &components {
        sum = sum.add(&c.idempotent);
    }
    if sum != AlgebraElement::one(g, field) {
        let defect = AlgebraElement::one(g, field).sub(&sum);
        return Err(DecomposeError::IncompletePairSet { defect_support: defect.support().len() });
    }
    let total: usize = components.iter().map(|c| c.dimension()).sum();
    if total != g.order() {
        return Err(DecomposeError::Internal(format!(
            "dimension count {total} does not match |G| = {}",
            g.order()
        )));
    }
    let dims_verified = match opts.verify_dims {
        VerifyDims::Never => false,
        VerifyDims::Auto if g.order() > 256 => false,
        _ => {
            for c in &components {
                let d = c.ideal_dimension();
                if d != c.dimension() {
                    return Err(DecomposeError::Internal(format!(
                        "ideal dimension {d} does not match n^2 l = {}",
                        c.dimension()
                    )));
                }
            }
            true
        }
    };
    Ok(DecompositionReport {
        group_desc: g.description().to_string(),
        group_order: g.order(),
        q: field.cardinality(),
        components,
        pair_reports,
        complete: true,
        duplicates_dropped,
        dims_verified,
        elapsed_ms: start.elapsed().as_millis(),
    })
}

/// Searches for a complete irredundant set of pairs: enumerates `(H, K)`
/// candidates, filters by the Shoda conditions, finds chains, deduplicates
/// by `𝔢(G,H,K)`, and stops once the accumulated idempotents sum to 1.
pub fn search_pairs(
    g: &FiniteGroup,
    field: &Arc<FiniteField>,
    limits: &SearchLimits,
) -> Result<Vec<InductiveChain>, DecomposeError> {
    ensure_semisimple(g, field)?;
    let subgroups = g.enumerate_subgroups(limits.subgroup_ceiling)?;
    let one = AlgebraElement::one(g, field);
    let mut accum = AlgebraElement::zero(g, field);
    let mut found: Vec<InductiveChain> = Vec::new();
    for h in subgroups.iter().rev() {
        for k in subgroups.iter() {
            if k.order() > h.order() || !k.is_subgroup_of(h) || !k.normal_in(h) {
                continue;
            }
            let pair = match is_shoda_pair(g, h, k)? {
                ShodaCheck::Pair(p) => p,
                _ => continue,
            };
            let chain = match find_chain(g, &pair, field, limits) {
                Ok(c) => c,
                Err(ChainError::NotFound { .. }) => continue,
                Err(e) => return Err(e.into()),
            };
            if found.iter().any(|c| c.final_eps() == chain.final_eps()) {
                continue;
            }
            // Distinct pairs reduce distinct rational idempotents, which stay
            // orthogonal mod p; anything else is a bug.
            if !accum.mul(chain.final_eps())?.is_zero() {
                return Err(DecomposeError::Internal(
                    "new pair idempotent overlaps the accumulated sum".into(),
                ));
            }
            accum = accum.add(chain.final_eps());
            found.push(chain);
            if accum == one {
                return Ok(found);
            }
        }
    }
    let defect = one.sub(&accum);
    Err(DecomposeError::Incomplete { pairs_found: found.len(), defect_support: defect.support().len() })
}

/// Search-then-decompose convenience used by the CLI and the oracle diff.
pub fn decompose_by_search(
    g: &FiniteGroup,
    field: &Arc<FiniteField>,
    opts: &DecomposeOptions,
) -> Result<DecompositionReport, DecomposeError> {
    let start = Instant::now();
    ensure_semisimple(g, field)?;
    let chains = search_pairs(g, field, &opts.limits)?;
    assemble(g, field, chains, 0, opts, start)
}
