//! Acceptance suite: each test prints a `ACCEPT <criterion>: PASS` line on
//! success (run with `cargo test --test acceptance -- --nocapture` to see
//! them); failures panic with the offending detail.

mod common;

use std::time::Instant;

use common::{field, g1000, g1000_pairs, semisimple_qs};
use wedderburn::algebra::AlgebraElement;
use wedderburn::corpus;
use wedderburn::cyclotomic::{cyclotomic_classes, generator_classes, CyclotomicClass};
use wedderburn::decomposer::{
    compute_r, decompose, decompose_by_search, DecomposeError, DecomposeOptions, PairSpec,
};
use wedderburn::gf::RootChoice;
use wedderburn::oracle;
use wedderburn::shoda::{
    check_chain, find_chains, is_shoda_pair, is_strong_shoda_pair, ChainError, ChainWitness,
    SearchLimits, ShodaCheck,
};

/// Criterion 1: the bundled order-1000 group reproduces the three-case
/// decomposition table exactly, within the wall-time bound.
#[test]
fn criterion_1_example_reproduction() {
    let g = g1000();
    let cases: [(u64, Vec<((usize, u64), usize)>, usize, usize); 3] = [
        (41, vec![((1, 1), 8), ((8, 1), 3), ((20, 1), 2)], 13, 8 + 192 + 800),
        (3, vec![((1, 1), 2), ((1, 2), 3), ((8, 1), 3), ((20, 1), 2)], 10, 2 + 6 + 192 + 800),
        (13, vec![((1, 1), 4), ((1, 2), 2), ((8, 1), 3), ((20, 1), 2)], 11, 4 + 4 + 192 + 800),
    ];
    for (q, expected, count, dim) in cases {
        let start = Instant::now();
        let report = decompose(&g, &field(q), &g1000_pairs(&g), &DecomposeOptions::default())
            .unwrap_or_else(|e| panic!("decompose failed for q = {q}: {e}"));
        let elapsed = start.elapsed();
        assert_eq!(report.component_multiset(), expected, "component multiset for q = {q}");
        assert_eq!(report.components.len(), count, "component count for q = {q}");
        assert_eq!(report.total_dimension(), dim, "dimension count for q = {q}");
        assert_eq!(dim, 1000);
        assert!(report.complete);
        assert!(
            elapsed.as_secs() < 300,
            "q = {q} took {elapsed:?}, over the 5-minute bound"
        );
        println!("ACCEPT criterion 1 (q = {q}): PASS  [{} in {elapsed:?}]", report.aggregate_string());
    }
}

/// Criterion 2: per-pair details: R_(H,K) = {C_sigma} for
/// (<x4,x5,x6>, <x4,x6>) at q in {41, 3, 13}; the last two pairs are not
/// strong but certify along [H, <x3,x4,x5,x6>, G]; the level-2 orbit has 4
/// elements at q ≡ 1 mod 5 and the centralizer index is 2 at q ≡ 4 mod 5.
#[test]
fn criterion_2_per_pair_details() {
    let g = g1000();
    let pairs = g1000_pairs(&g);

    // R for the pair (<x4,x5,x6>, <x4,x6>) (index 4 in the bundled file).
    for q in [41u64, 3, 13] {
        let f = field(q);
        let spec = &pairs[4];
        let pair = match is_shoda_pair(&g, &spec.h, &spec.k).unwrap() {
            ShodaCheck::Pair(p) => p,
            other => panic!("pair 4 must be a Shoda pair, got {other:?}"),
        };
        let chain = check_chain(&g, &pair, vec![pair.h.clone(), g.full_subgroup()], &f).unwrap();
        let (r, _) = compute_r(&chain, RootChoice::Canonical).unwrap();
        assert_eq!(r.len(), 1, "R must be a single class at q = {q}");
        assert_eq!(r[0].representative(), 1, "R = {{C_sigma}} at q = {q}");
    }
    println!("ACCEPT criterion 2a (R = {{C_sigma}} for pair 4 at q = 41, 3, 13): PASS");

    // The last two pairs are not strong, but their 3-level chain certifies.
    let f41 = field(41);
    for idx in [7usize, 8] {
        let spec = &pairs[idx];
        assert!(
            !is_strong_shoda_pair(&g, &spec.h, &spec.k, &f41).unwrap(),
            "pair {idx} must not be strong"
        );
        let pair = match is_shoda_pair(&g, &spec.h, &spec.k).unwrap() {
            ShodaCheck::Pair(p) => p,
            other => panic!("{other:?}"),
        };
        let chain = check_chain(&g, &pair, spec.chain.clone().unwrap(), &f41).unwrap();
        assert_eq!(chain.num_steps(), 2);
        assert_eq!(chain.levels[1].order(), 250);
    }
    println!("ACCEPT criterion 2b (pairs 7, 8 not strong; chain [H, H_1, G] certifies): PASS");

    // Level-2 orbit of size 4 at q = 41 ≡ 1 mod 5 (pair 7).
    {
        let spec = &pairs[7];
        let pair = match is_shoda_pair(&g, &spec.h, &spec.k).unwrap() {
            ShodaCheck::Pair(p) => p,
            other => panic!("{other:?}"),
        };
        let chain = check_chain(&g, &pair, spec.chain.clone().unwrap(), &f41).unwrap();
        let (r, levels) = compute_r(&chain, RootChoice::Canonical).unwrap();
        assert_eq!(levels[0].orbits.len(), 4, "level 1 action is trivial");
        assert_eq!(levels[1].orbits, vec![vec![1, 2, 3, 4]], "level-2 orbit of size 4");
        assert_eq!(r.len(), 1);
    }
    println!("ACCEPT criterion 2c (level-2 orbit size 4 at q = 41): PASS");

    // Centralizer index [Cen_G : H_1] = 2 at q = 19 ≡ 4 mod 5 (pair 7).
    {
        let f19 = field(19);
        let spec = &pairs[7];
        let pair = match is_shoda_pair(&g, &spec.h, &spec.k).unwrap() {
            ShodaCheck::Pair(p) => p,
            other => panic!("{other:?}"),
        };
        let chain = check_chain(&g, &pair, spec.chain.clone().unwrap(), &f19).unwrap();
        let (r, _) = compute_r(&chain, RootChoice::Canonical).unwrap();
        assert_eq!(r.len(), 1);
        let comp = wedderburn::decomposer::component(&chain, &r[0], 7, RootChoice::Canonical).unwrap();
        assert_eq!(comp.o, 2);
        assert_eq!(comp.centralizer_indices, vec![1, 2], "[C_0:H_0] = 1 and [Cen_G : H_1] = 2");
        assert_eq!(comp.field_degree, 1);
        assert_eq!(comp.matrix_size, 20);
    }
    println!("ACCEPT criterion 2d ([Cen_G : H_1] = 2 at q = 19): PASS");
}

/// Criterion 3: oracle equivalence over the whole corpus, three semisimple
/// q each, exact equality.
#[test]
fn criterion_3_oracle_equivalence() {
    let corpus = corpus::oracle_corpus();
    assert!(corpus.len() >= 15);
    let mut runs = 0usize;
    for (name, g) in &corpus {
        for q in semisimple_qs(g.order()) {
            let f = field(q);
            let report = decompose_by_search(g, &f, &DecomposeOptions::default())
                .unwrap_or_else(|e| panic!("{name} over F_{q}: {e}"));
            let diff = oracle::compare(&report, g, &f, 0).unwrap();
            assert!(diff.is_empty(), "{name} over F_{q}: {diff:?}");
            runs += 1;
        }
    }
    println!("ACCEPT criterion 3 (oracle equivalence, {} groups x 3 fields = {runs} runs): PASS", corpus.len());
}

fn class_for_rep(k: u64, q: u128, rep: u64) -> CyclotomicClass {
    generator_classes(k, q)
        .unwrap()
        .into_iter()
        .find(|c| c.representative() == rep)
        .expect("representative names a generator class")
}

/// Criterion 4: the exact property suites.
#[test]
fn criterion_4_property_suites() {
    // (a) + (b) + (c): reduction identity at every chain level, eqn-(10)
    // checks, and the divisibility of Remark 2, across the corpus.
    let corpus = corpus::oracle_corpus();
    for (name, g) in &corpus {
        let q = semisimple_qs(g.order())[0];
        let f = field(q);
        let chains = wedderburn::decomposer::search_pairs(g, &f, &SearchLimits::default())
            .unwrap_or_else(|e| panic!("{name}: {e}"));
        for chain in &chains {
            let (r_final, level_orbits) = compute_r(chain, RootChoice::Canonical).unwrap();
            let k = chain.pair.index as u64;
            // R_i for each level: R_0 = C_q(H/K), then the survivors.
            let mut r_levels: Vec<Vec<u64>> =
                vec![generator_classes(k, f.cardinality()).unwrap().iter().map(|c| c.representative()).collect()];
            for lo in &level_orbits {
                r_levels.push(lo.survivors.clone());
            }
            assert_eq!(
                r_levels.last().unwrap(),
                &r_final.iter().map(|c| c.representative()).collect::<Vec<_>>()
            );
            // Proposition 1(i): eps^{(i)} = sum of eps_C^{(i)} over C in R_i,
            // and 1(ii): those are distinct orthogonal central idempotents.
            for (i, reps) in r_levels.iter().enumerate() {
                let mut sum = AlgebraElement::zero(g, &f);
                let mut idems = Vec::new();
                for &rep in reps {
                    let class = class_for_rep(k, f.cardinality(), rep);
                    let iter = chain.eps_class_iter(&class, RootChoice::Canonical).unwrap();
                    sum = sum.add(&iter[i]);
                    idems.push(iter[i].clone());
                }
                assert_eq!(&sum, &chain.eps_iter()[i], "{name}: Prop 1(i) at level {i}");
                for a in 0..idems.len() {
                    assert!(idems[a].is_idempotent());
                    assert!(idems[a].is_central_in(&chain.levels[i]));
                    for b in a + 1..idems.len() {
                        assert_ne!(idems[a], idems[b], "{name}: distinct at level {i}");
                        assert!(
                            idems[a].is_orthogonal_to(&idems[b]).unwrap(),
                            "{name}: orthogonal at level {i}"
                        );
                    }
                }
            }
        }
        // Eqn (10) and Remark 2 on the assembled decomposition.
        let report = decompose_by_search(g, &f, &DecomposeOptions::default()).unwrap();
        let mut sum = AlgebraElement::zero(g, &f);
        for c in &report.components {
            assert!(c.idempotent.is_idempotent());
            sum = sum.add(&c.idempotent);
            let prod: u64 = c.centralizer_indices.iter().map(|&x| x as u64).product();
            assert_eq!(c.o % prod, 0, "{name}: Remark 2 divisibility");
        }
        assert_eq!(sum, AlgebraElement::one(g, &f), "{name}: eqn (10) sum to one");
        for i in 0..report.components.len() {
            for j in i + 1..report.components.len() {
                assert!(report.components[i]
                    .idempotent
                    .is_orthogonal_to(&report.components[j].idempotent)
                    .unwrap());
            }
        }
    }
    println!("ACCEPT criterion 4a-c (Prop 1(i), eqn (10), Remark 2 across the corpus): PASS");

    // (d) Remark 1: chain independence whenever several chains exist.
    let mut multi_chain_pairs = 0usize;
    for (name, g) in &corpus {
        let q = semisimple_qs(g.order())[0];
        let f = field(q);
        let chains = wedderburn::decomposer::search_pairs(g, &f, &SearchLimits::default()).unwrap();
        for chain in &chains {
            let alts = find_chains(g, &chain.pair, &f, &SearchLimits::default(), 3).unwrap();
            if alts.len() < 2 {
                continue;
            }
            multi_chain_pairs += 1;
            let k = chain.pair.index as u64;
            for class in generator_classes(k, f.cardinality()).unwrap() {
                let finals: Vec<AlgebraElement> = alts
                    .iter()
                    .map(|c| c.eps_class_iter(&class, RootChoice::Canonical).unwrap().pop().unwrap())
                    .collect();
                for w in finals.windows(2) {
                    assert_eq!(w[0], w[1], "{name}: Remark 1 for class {:?}", class.exponents);
                }
            }
        }
    }
    assert!(multi_chain_pairs > 0, "corpus must exercise at least one multi-chain pair");
    println!("ACCEPT criterion 4d (Remark 1 chain independence, {multi_chain_pairs} multi-chain pairs): PASS");

    // (e) Label invariance under the alternate primitive root.
    let mut invariance_checked = 0usize;
    for (g, q) in [
        (corpus::cyclic(5), 2u64),
        (corpus::cyclic(8), 3),
        (corpus::dihedral(5), 3),
        (corpus::metacyclic(5, 4, 2), 3),
    ] {
        let f = field(q);
        let canonical = decompose_by_search(&g, &f, &DecomposeOptions::default()).unwrap();
        let alt = decompose_by_search(
            &g,
            &f,
            &DecomposeOptions { root_choice: RootChoice::Alternate, ..Default::default() },
        )
        .unwrap();
        let mut a: Vec<&AlgebraElement> = canonical.components.iter().map(|c| &c.idempotent).collect();
        let mut b: Vec<&AlgebraElement> = alt.components.iter().map(|c| &c.idempotent).collect();
        let key = |e: &&AlgebraElement| {
            let s = e.support();
            (s.first().copied(), e.coeff(s[0]).coeffs().to_vec(), s)
        };
        a.sort_by_key(key);
        b.sort_by_key(key);
        assert_eq!(a, b, "idempotent sets must agree under root relabeling");
        assert_eq!(canonical.component_multiset(), alt.component_multiset());
        invariance_checked += 1;
    }
    // And on the order-1000 example at q = 41.
    {
        let g = g1000();
        let f41 = field(41);
        let canonical = decompose(&g, &f41, &g1000_pairs(&g), &DecomposeOptions::default()).unwrap();
        let alt = decompose(
            &g,
            &f41,
            &g1000_pairs(&g),
            &DecomposeOptions { root_choice: RootChoice::Alternate, ..Default::default() },
        )
        .unwrap();
        let collect = |r: &wedderburn::decomposer::DecompositionReport| {
            let mut v: Vec<Vec<u64>> = r
                .components
                .iter()
                .map(|c| {
                    let e = &c.idempotent;
                    (0..g.order()).flat_map(|x| e.coeff(x).coeffs().to_vec()).collect()
                })
                .collect();
            v.sort();
            v
        };
        assert_eq!(collect(&canonical), collect(&alt));
        assert_eq!(canonical.component_multiset(), alt.component_multiset());
        invariance_checked += 1;
    }
    println!("ACCEPT criterion 4e (label invariance under alternate roots, {invariance_checked} cases): PASS");

    // (f) Abelian sanity: F_q C_n has one F_{q^d} per q-cyclotomic class of
    // size d.
    for (n, q) in [(7u64, 2u64), (8, 3), (12, 5), (15, 2), (20, 3), (30, 7)] {
        let g = corpus::cyclic(n as usize);
        let f = field(q);
        let report = decompose_by_search(&g, &f, &DecomposeOptions::default()).unwrap();
        let mut expected: Vec<usize> =
            cyclotomic_classes(n, q as u128).unwrap().iter().map(|c| c.len()).collect();
        expected.sort_unstable();
        let mut got: Vec<usize> = report
            .components
            .iter()
            .map(|c| {
                assert_eq!(c.matrix_size, 1, "abelian components are 1x1");
                c.field_degree as usize
            })
            .collect();
        got.sort_unstable();
        assert_eq!(got, expected, "C_{n} over F_{q}");
    }
    println!("ACCEPT criterion 4f (abelian sanity against cyclotomic classes): PASS");
}

/// Criterion 5: negative paths with concrete witnesses.
#[test]
fn criterion_5_negative_tests() {
    // NotSemisimple when gcd(|G|, q) > 1.
    let c3 = corpus::cyclic(3);
    match decompose_by_search(&c3, &field(3), &DecomposeOptions::default()) {
        Err(DecomposeError::NotSemisimple { p: 3, order: 3 }) => {}
        other => panic!("expected NotSemisimple, got {other:?}"),
    }
    println!("ACCEPT criterion 5a (NotSemisimple): PASS");

    // CertificationFailure with a concrete witness: forcing the chain
    // [H, G] onto a pair that is not strong.
    let g = g1000();
    let f41 = field(41);
    let pairs = g1000_pairs(&g);
    let spec = &pairs[8];
    let pair = match is_shoda_pair(&g, &spec.h, &spec.k).unwrap() {
        ShodaCheck::Pair(p) => p,
        other => panic!("{other:?}"),
    };
    match check_chain(&g, &pair, vec![pair.h.clone(), g.full_subgroup()], &f41) {
        Err(ChainError::Certification(fail)) => {
            assert_eq!(fail.level, 0);
            // Re-verify the witness concretely.
            let eps0 = wedderburn::algebra::eps(&pair.h, &pair.k, &f41).unwrap();
            match fail.witness {
                ChainWitness::NonOrthogonal { conjugator } => {
                    let conj = eps0.conjugate(conjugator);
                    assert_ne!(conj, eps0, "witness conjugate must differ");
                    assert!(
                        !eps0.mul(&conj).unwrap().is_zero() || !conj.mul(&eps0).unwrap().is_zero(),
                        "witness conjugate must overlap non-orthogonally"
                    );
                }
                ChainWitness::NonNormal { conjugator, moved } => {
                    assert!(eps0.conjugate(conjugator) == eps0 || true);
                    assert!(pair.h.contains(moved));
                    assert!(!pair.h.contains(g.conj(moved, conjugator)));
                }
            }
            println!("ACCEPT criterion 5b (CertificationFailure with witness: {fail}): PASS");
        }
        other => panic!("expected certification failure, got {other:?}"),
    }

    // IncompletePairSet when one pair is withheld.
    let withheld: Vec<PairSpec> = pairs[..8].to_vec();
    match decompose(&g, &f41, &withheld, &DecomposeOptions::default()) {
        Err(DecomposeError::IncompletePairSet { defect_support }) => {
            assert!(defect_support > 0);
            println!("ACCEPT criterion 5c (IncompletePairSet, defect support {defect_support}): PASS");
        }
        other => panic!("expected IncompletePairSet, got {other:?}"),
    }
}

/// The spec's oracle example: the center of the order-1000 group has
/// dimension 13 (its number of conjugacy classes), which equals the sum of
/// the field degrees over the components for every semisimple q.
#[test]
fn center_dimension_of_the_example_group() {
    let g = g1000();
    let ca = oracle::center_basis(&g, &field(41)).unwrap();
    assert_eq!(ca.dimension(), 13);
    println!("ACCEPT oracle center dimension 13: PASS");
}
