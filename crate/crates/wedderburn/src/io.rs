//! File formats: group descriptions, pair/chain lists, and reports.
//!
//! Groups are JSON with a `type` tag (`cayley`, `perm`, `polycyclic`).
//! Polycyclic relations and subgroup generators may be written either as
//! word strings like `"x3*x4^2"` or as `[generator, exponent]` pair arrays
//! with 1-based generators.  Reports serialize idempotents as sparse
//! `{element index: coefficient vector}` maps, least-significant
//! prime-field coefficient first.

use std::collections::BTreeMap;
use std::path::Path;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::algebra::AlgebraElement;
use crate::cyclotomic::CyclotomicClass;
use crate::decomposer::{field_name, DecompositionReport, PairSpec};
use crate::gf::FiniteField;
use crate::group::{FiniteGroup, GroupError, PcPresentation, Subgroup, DEFAULT_STEP_BUDGET};
use crate::oracle::OracleReport;

#[derive(Debug, thiserror::Error)]
pub enum IoError {
    #[error("cannot read {path}: {source}")]
    Read { path: String, source: std::io::Error },
    #[error("cannot write {path}: {source}")]
    Write { path: String, source: std::io::Error },
    #[error("parse error: {0}")]
    Parse(String),
    #[error("invalid word: {0}")]
    BadWord(String),
    #[error(transparent)]
    Group(#[from] GroupError),
}

/// A word in the polycyclic generators: either `"x1*x4^-2"` or
/// `[[1, 1], [4, -2]]` (1-based generator indices).
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(untagged)]
pub enum WordSpec {
    Text(String),
    Letters(Vec<(usize, i64)>),
}

impl WordSpec {
    /// 0-based letters.
    pub fn letters(&self) -> Result<Vec<(usize, i64)>, IoError> {
        match self {
            WordSpec::Letters(ls) => ls
                .iter()
                .map(|&(g, e)| {
                    if g == 0 {
                        Err(IoError::BadWord("generator indices are 1-based".into()))
                    } else {
                        Ok((g - 1, e))
                    }
                })
                .collect(),
            WordSpec::Text(s) => parse_word(s),
        }
    }
}

/// Parses `"x1*x4^-2"`; `"e"` or the empty string is the identity.
pub fn parse_word(s: &str) -> Result<Vec<(usize, i64)>, IoError> {
    let s = s.trim();
    if s.is_empty() || s == "e" || s == "1" {
        return Ok(vec![]);
    }
    let mut out = Vec::new();
    for term in s.split('*') {
        let term = term.trim();
        let rest = term
            .strip_prefix('x')
            .ok_or_else(|| IoError::BadWord(format!("term `{term}` must start with x")))?;
        let (gen_str, exp) = match rest.split_once('^') {
            None => (rest, 1i64),
            Some((g, e)) => {
                let exp: i64 =
                    e.parse().map_err(|_| IoError::BadWord(format!("bad exponent in `{term}`")))?;
                (g, exp)
            }
        };
        let gen: usize =
            gen_str.parse().map_err(|_| IoError::BadWord(format!("bad generator in `{term}`")))?;
        if gen == 0 {
            return Err(IoError::BadWord("generator indices are 1-based".into()));
        }
        out.push((gen - 1, exp));
    }
    Ok(out)
}

/// On-disk group description.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "lowercase")]
pub enum GroupFile {
    Cayley {
        table: Vec<Vec<usize>>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        names: Option<Vec<String>>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        name: Option<String>,
    },
    Perm {
        degree: usize,
        generators: Vec<Vec<usize>>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        name: Option<String>,
    },
    Polycyclic {
        orders: Vec<u32>,
        /// `"i"` (1-based) to the word for `x_i^{r_i}`; missing means trivial.
        #[serde(default)]
        powers: BTreeMap<String, WordSpec>,
        /// `"i,j"` (j < i) to the word for `x_i^{x_j}`.
        #[serde(default)]
        conjugates: BTreeMap<String, WordSpec>,
        /// `"i,j"` to the word for `[x_i, x_j]`; converted via
        /// `x_i^{x_j} = x_i [x_i,x_j]`.  A key may appear in only one of
        /// `conjugates`/`commutators`.
        #[serde(default)]
        commutators: BTreeMap<String, WordSpec>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        name: Option<String>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        step_budget: Option<usize>,
    },
}

impl GroupFile {
    pub fn build(&self) -> Result<FiniteGroup, IoError> {
        match self {
            GroupFile::Cayley { table, names, name } => Ok(FiniteGroup::from_cayley_table(
                table.clone(),
                names.clone(),
                name.as_deref().unwrap_or("cayley group"),
            )?),
            GroupFile::Perm { degree, generators, name } => Ok(FiniteGroup::from_permutations(
                *degree,
                generators,
                name.as_deref().unwrap_or("permutation group"),
            )?),
            GroupFile::Polycyclic { orders, powers, conjugates, commutators, name, step_budget } => {
                let k = orders.len();
                let mut power_words: Vec<Vec<(usize, i64)>> = vec![vec![]; k];
                for (key, word) in powers {
                    let i: usize = key
                        .parse()
                        .map_err(|_| IoError::Parse(format!("bad power key `{key}`")))?;
                    if i == 0 || i > k {
                        return Err(IoError::Parse(format!("power key `{key}` out of range")));
                    }
                    power_words[i - 1] = word.letters()?;
                }
                let parse_key = |key: &str| -> Result<(usize, usize), IoError> {
                    let (i, j) = key
                        .split_once(',')
                        .ok_or_else(|| IoError::Parse(format!("bad relation key `{key}`")))?;
                    let i: usize =
                        i.trim().parse().map_err(|_| IoError::Parse(format!("bad key `{key}`")))?;
                    let j: usize =
                        j.trim().parse().map_err(|_| IoError::Parse(format!("bad key `{key}`")))?;
                    if i == 0 || j == 0 || i > k || j > k || j >= i {
                        return Err(IoError::Parse(format!("relation key `{key}` must have i > j >= 1")));
                    }
                    Ok((i - 1, j - 1))
                };
                let mut conj: Vec<((usize, usize), Vec<(usize, i64)>)> = Vec::new();
                for (key, word) in conjugates {
                    let (i, j) = parse_key(key)?;
                    conj.push(((i, j), word.letters()?));
                }
                for (key, word) in commutators {
                    let (i, j) = parse_key(key)?;
                    if conj.iter().any(|&((a, b), _)| (a, b) == (i, j)) {
                        return Err(IoError::Parse(format!(
                            "relation ({},{}) given both as conjugate and commutator",
                            i + 1,
                            j + 1
                        )));
                    }
                    conj.push(((i, j), PcPresentation::commutator_to_conjugate(i, &word.letters()?)));
                }
                let pres = PcPresentation::new(
                    orders.clone(),
                    power_words,
                    conj,
                    step_budget.unwrap_or(DEFAULT_STEP_BUDGET),
                )
                .map_err(GroupError::from)?;
                Ok(FiniteGroup::from_presentation(
                    pres,
                    name.as_deref().unwrap_or("polycyclic group"),
                )?)
            }
        }
    }
}

pub fn load_group(path: &Path) -> Result<FiniteGroup, IoError> {
    let text = std::fs::read_to_string(path)
        .map_err(|source| IoError::Read { path: path.display().to_string(), source })?;
    let file: GroupFile =
        serde_json::from_str(&text).map_err(|e| IoError::Parse(format!("{}: {e}", path.display())))?;
    file.build()
}

/// A subgroup, as generator words, explicit elements, or generator indices.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(untagged)]
pub enum SubgroupSpec {
    Words(Vec<WordSpec>),
    Elements { elements: Vec<usize> },
    Generators { generators: Vec<usize> },
}

impl SubgroupSpec {
    pub fn resolve(&self, g: &FiniteGroup) -> Result<Subgroup, IoError> {
        match self {
            SubgroupSpec::Words(words) => {
                let gens: Vec<usize> = words
                    .iter()
                    .map(|w| Ok(g.element_from_word(&w.letters()?)?))
                    .collect::<Result<_, IoError>>()?;
                Ok(g.subgroup_closure(&gens)?)
            }
            SubgroupSpec::Elements { elements } => Ok(Subgroup::from_elements(g, elements)?),
            SubgroupSpec::Generators { generators } => Ok(g.subgroup_closure(generators)?),
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct PairEntry {
    #[serde(rename = "H")]
    pub h: SubgroupSpec,
    #[serde(rename = "K")]
    pub k: SubgroupSpec,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub chain: Option<Vec<SubgroupSpec>>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct PairsFile {
    pub pairs: Vec<PairEntry>,
}

pub fn load_pairs(g: &FiniteGroup, path: &Path) -> Result<Vec<PairSpec>, IoError> {
    let text = std::fs::read_to_string(path)
        .map_err(|source| IoError::Read { path: path.display().to_string(), source })?;
    let file: PairsFile =
        serde_json::from_str(&text).map_err(|e| IoError::Parse(format!("{}: {e}", path.display())))?;
    file.pairs
        .iter()
        .map(|entry| {
            let h = entry.h.resolve(g)?;
            let k = entry.k.resolve(g)?;
            let chain = entry
                .chain
                .as_ref()
                .map(|specs| specs.iter().map(|s| s.resolve(g)).collect::<Result<Vec<_>, _>>())
                .transpose()?;
            Ok(PairSpec { h, k, chain })
        })
        .collect()
}

/// Sparse serialization of an algebra element.
pub fn idempotent_to_sparse(e: &AlgebraElement) -> BTreeMap<usize, Vec<u64>> {
    e.support().into_iter().map(|g| (g, e.coeff(g).coeffs().to_vec())).collect()
}

/// Rebuilds an algebra element from its sparse form.
pub fn idempotent_from_sparse(
    g: &FiniteGroup,
    field: &Arc<FiniteField>,
    sparse: &BTreeMap<usize, Vec<u64>>,
) -> Result<AlgebraElement, IoError> {
    let mut out = AlgebraElement::zero(g, field);
    for (&idx, coeffs) in sparse {
        if idx >= g.order() {
            return Err(IoError::Parse(format!("element index {idx} out of range")));
        }
        if coeffs.len() > field.degree() {
            return Err(IoError::Parse("coefficient vector longer than the field degree".into()));
        }
        out.set_coeff(idx, &field.from_coeffs(coeffs));
    }
    Ok(out)
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ComponentJson {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub pair: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub class: Option<CyclotomicClass>,
    pub n: usize,
    pub l: u64,
    pub field: String,
    pub dim: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub idempotent: Option<BTreeMap<usize, Vec<u64>>>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct PairJson {
    pub index: usize,
    pub h_order: usize,
    pub k_order: usize,
    pub quotient_index: usize,
    pub chain_orders: Vec<usize>,
    pub strong: bool,
    pub r_classes: Vec<CyclotomicClass>,
    /// Orbit merges per level: `[level, orbits...]`.
    pub level_orbits: Vec<LevelOrbitsJson>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct LevelOrbitsJson {
    pub level: usize,
    pub orbits: Vec<Vec<u64>>,
    pub survivors: Vec<u64>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ReportJson {
    pub source: String,
    pub group: String,
    pub group_order: usize,
    pub q: u64,
    pub components: Vec<ComponentJson>,
    pub complete: bool,
    pub summary: String,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub pairs: Vec<PairJson>,
    pub elapsed_ms: u64,
}

pub fn report_to_json(report: &DecompositionReport, emit_idempotents: bool) -> ReportJson {
    ReportJson {
        source: "decomposer".into(),
        group: report.group_desc.clone(),
        group_order: report.group_order,
        q: report.q as u64,
        components: report
            .components
            .iter()
            .map(|c| ComponentJson {
                pair: Some(c.pair_index),
                class: Some(c.class.clone()),
                n: c.matrix_size,
                l: c.field_degree,
                field: field_name(report.q, c.field_degree),
                dim: c.dimension(),
                idempotent: emit_idempotents.then(|| idempotent_to_sparse(&c.idempotent)),
            })
            .collect(),
        complete: report.complete,
        summary: report.aggregate_string(),
        pairs: report
            .pair_reports
            .iter()
            .map(|p| PairJson {
                index: p.pair_index,
                h_order: p.h_order,
                k_order: p.k_order,
                quotient_index: p.quotient_index,
                chain_orders: p.chain_orders.clone(),
                strong: p.strong,
                r_classes: p.r_classes.clone(),
                level_orbits: p
                    .level_orbits
                    .iter()
                    .map(|lo| LevelOrbitsJson {
                        level: lo.level,
                        orbits: lo.orbits.clone(),
                        survivors: lo.survivors.clone(),
                    })
                    .collect(),
            })
            .collect(),
        elapsed_ms: report.elapsed_ms as u64,
    }
}

pub fn oracle_to_json(report: &OracleReport, emit_idempotents: bool) -> ReportJson {
    let mut counts: BTreeMap<(usize, usize), usize> = BTreeMap::new();
    for (n, l, _) in &report.components {
        *counts.entry((*n, *l)).or_insert(0) += 1;
    }
    let summary = counts
        .iter()
        .map(|(&(n, l), &c)| {
            let base = field_name(report.q, l as u64);
            let term = if n == 1 { base } else { format!("M_{n}({base})") };
            if c == 1 {
                term
            } else {
                format!("{term}^({c})")
            }
        })
        .collect::<Vec<_>>()
        .join(" ⊕ ");
    ReportJson {
        source: "oracle".into(),
        group: report.group_desc.clone(),
        group_order: report.group_order,
        q: report.q as u64,
        components: report
            .components
            .iter()
            .map(|(n, l, e)| ComponentJson {
                pair: None,
                class: None,
                n: *n,
                l: *l as u64,
                field: field_name(report.q, *l as u64),
                dim: n * n * l,
                idempotent: emit_idempotents.then(|| idempotent_to_sparse(e)),
            })
            .collect(),
        complete: true,
        summary,
        pairs: vec![],
        elapsed_ms: report.elapsed_ms as u64,
    }
}

/// Human-readable rendering of a report.
pub fn render_text(json: &ReportJson) -> String {
    let mut out = String::new();
    out.push_str(&format!(
        "{} of F_{} {} (order {})\n",
        if json.source == "oracle" { "Oracle decomposition" } else { "Wedderburn decomposition" },
        json.q,
        json.group,
        json.group_order
    ));
    out.push_str(&format!("  {}\n", json.summary));
    out.push_str(&format!(
        "  {} components, complete: {}, {} ms\n",
        json.components.len(),
        json.complete,
        json.elapsed_ms
    ));
    for (i, c) in json.components.iter().enumerate() {
        let origin = match (c.pair, &c.class) {
            (Some(p), Some(cl)) => format!(" [pair {p}, class {:?} mod {}]", cl.exponents, cl.k),
            _ => String::new(),
        };
        let ring = if c.n == 1 { c.field.clone() } else { format!("M_{}({})", c.n, c.field) };
        out.push_str(&format!("  #{i}: {ring} dim {}{}\n", c.dim, origin));
    }
    for p in &json.pairs {
        out.push_str(&format!(
            "  pair {}: |H| = {}, |K| = {}, [H:K] = {}, chain {:?}{}, |R| = {}\n",
            p.index,
            p.h_order,
            p.k_order,
            p.quotient_index,
            p.chain_orders,
            if p.strong { " (strong)" } else { "" },
            p.r_classes.len()
        ));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus;

    #[test]
    fn word_parsing() {
        assert_eq!(parse_word("x1*x4^2").unwrap(), vec![(0, 1), (3, 2)]);
        assert_eq!(parse_word("x4^-1*x5").unwrap(), vec![(3, -1), (4, 1)]);
        assert_eq!(parse_word("e").unwrap(), vec![]);
        assert_eq!(parse_word("").unwrap(), vec![]);
        assert!(parse_word("y2").is_err());
        assert!(parse_word("x0").is_err());
    }

    #[test]
    fn group_file_roundtrip_cayley() {
        let file = GroupFile::Cayley {
            table: vec![vec![0, 1, 2], vec![1, 2, 0], vec![2, 0, 1]],
            names: None,
            name: Some("C_3".into()),
        };
        let g = file.build().unwrap();
        assert_eq!(g.order(), 3);
        let text = serde_json::to_string(&file).unwrap();
        let back: GroupFile = serde_json::from_str(&text).unwrap();
        assert_eq!(back.build().unwrap().order(), 3);
    }

    #[test]
    fn polycyclic_file_with_string_words() {
        let text = r#"{
            "type": "polycyclic",
            "orders": [2, 3],
            "powers": {"1": "x2"},
            "name": "C_12-ish"
        }"#;
        let file: GroupFile = serde_json::from_str(text).unwrap();
        let g = file.build().unwrap();
        assert_eq!(g.order(), 6);
    }

    #[test]
    fn malformed_files_are_parse_errors() {
        let bad: Result<GroupFile, _> = serde_json::from_str("{\"type\": \"nope\"}");
        assert!(bad.is_err());
        // Bad Cayley table (not a Latin square) is a build error.
        let file = GroupFile::Cayley { table: vec![vec![0, 0], vec![1, 1]], names: None, name: None };
        assert!(file.build().is_err());
    }

    #[test]
    fn subgroup_specs_resolve() {
        let g = corpus::g1000();
        let spec: SubgroupSpec =
            serde_json::from_str(r#"["x4", "x5", "x6"]"#).unwrap();
        assert_eq!(spec.resolve(&g).unwrap().order(), 125);
        let spec: SubgroupSpec = serde_json::from_str(r#"{"elements": [0]}"#).unwrap();
        assert_eq!(spec.resolve(&g).unwrap().order(), 1);
        let s3 = corpus::dihedral(3);
        let spec: SubgroupSpec = serde_json::from_str(r#"{"generators": [2]}"#).unwrap();
        assert_eq!(spec.resolve(&s3).unwrap().order(), 3);
    }

    #[test]
    fn sparse_idempotent_roundtrip() {
        let c3 = corpus::cyclic(3);
        let f2 = crate::gf::FiniteField::prime(2).unwrap();
        let mut e = AlgebraElement::zero(&c3, &f2);
        e.set_coeff(1, &f2.one());
        e.set_coeff(2, &f2.one());
        let sparse = idempotent_to_sparse(&e);
        assert_eq!(sparse.len(), 2);
        let back = idempotent_from_sparse(&c3, &f2, &sparse).unwrap();
        assert_eq!(back, e);
    }
}
