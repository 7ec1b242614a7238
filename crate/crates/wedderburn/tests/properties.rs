//! Property suites: randomized algebra laws (proptest) and the
//! paper-level cross-checks that do not fit a single module.

mod common;

use std::collections::BTreeSet;
use std::sync::Arc;

use proptest::prelude::*;

use common::{field, semisimple_qs};
use wedderburn::algebra::eps_class;
use wedderburn::arith::gcd_u64;
use wedderburn::corpus;
use wedderburn::cyclotomic::{cyclotomic_classes, generator_classes};
use wedderburn::decomposer::{compute_r, search_pairs};
use wedderburn::gf::poly::{self, Poly};
use wedderburn::gf::{mult_order, ExtensionWithRoot, FiniteField, RootChoice};
use wedderburn::group::Subgroup;
use wedderburn::shoda::SearchLimits;

fn arb_field() -> impl Strategy<Value = Arc<FiniteField>> {
    (prop_oneof![Just(2u64), Just(3), Just(5), Just(7), Just(13)], 1usize..=3)
        .prop_map(|(p, m)| FiniteField::extension(p, m).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn field_axioms((f, seed) in arb_field().prop_flat_map(|f| {
        let e = proptest::collection::vec(0..f.characteristic(), f.degree() * 3);
        (Just(f), e)
    })) {
        let m = f.degree();
        let a = f.from_coeffs(&seed[0..m]);
        let b = f.from_coeffs(&seed[m..2 * m]);
        let c = f.from_coeffs(&seed[2 * m..3 * m]);
        // Associativity and distributivity.
        prop_assert_eq!(f.mul(&f.mul(&a, &b), &c), f.mul(&a, &f.mul(&b, &c)));
        prop_assert_eq!(f.mul(&a, &f.add(&b, &c)), f.add(&f.mul(&a, &b), &f.mul(&a, &c)));
        prop_assert_eq!(f.add(&a, &f.neg(&a)), f.zero());
        if !f.is_zero(&a) {
            let inv = f.inv(&a).unwrap();
            prop_assert!(f.is_one(&f.mul(&a, &inv)));
        }
        // Frobenius is additive and multiplicative.
        let p = f.characteristic() as u128;
        prop_assert_eq!(f.pow(&f.add(&a, &b), p), f.add(&f.pow(&a, p), &f.pow(&b, p)));
        prop_assert_eq!(f.pow(&f.mul(&a, &b), p), f.mul(&f.pow(&a, p), &f.pow(&b, p)));
    }

    #[test]
    fn trace_is_linear_and_frobenius_stable(
        k in prop_oneof![Just(3u64), Just(5), Just(7), Just(8), Just(9), Just(12)],
        q in prop_oneof![Just(2u64), Just(3), Just(5), Just(7)],
        seed in proptest::collection::vec(0u64..1000, 8),
    ) {
        prop_assume!(gcd_u64(q, k) == 1);
        let base = FiniteField::prime(q).unwrap();
        let ext = ExtensionWithRoot::new(&base, k, RootChoice::Canonical).unwrap();
        let deg = ext.ext().degree();
        let a = ext.ext().from_coeffs(&seed[..deg.min(seed.len())].iter().map(|&x| x % q).collect::<Vec<_>>());
        let b = ext.ext().from_coeffs(&seed[seed.len() - deg.min(seed.len())..].iter().map(|&x| x % q).collect::<Vec<_>>());
        let ta = ext.trace_to_base(&a).unwrap();
        let tb = ext.trace_to_base(&b).unwrap();
        let tsum = ext.trace_to_base(&ext.ext().add(&a, &b)).unwrap();
        prop_assert_eq!(base.add(&ta, &tb), tsum);
        // tr(x^q) = tr(x).
        prop_assert_eq!(ext.trace_to_base(&ext.frobenius_q(&a)).unwrap(), ta);
        // The root has exact order k.
        prop_assert!(ext.ext().is_one(&ext.ext().pow(ext.root(), k as u128)));
        for d in 1..k {
            if k % d == 0 && d < k {
                prop_assert!(!ext.ext().is_one(&ext.ext().pow(ext.root(), d as u128)));
            }
        }
    }

    #[test]
    fn factorization_multiplies_back(
        q in prop_oneof![Just(2u64), Just(3), Just(5), Just(7)],
        coeffs in proptest::collection::vec(0u64..7, 2..9),
        seed in 0u64..4,
    ) {
        let f = FiniteField::prime(q).unwrap();
        let poly = Poly::from_coeffs(&f, coeffs.iter().map(|&c| f.scalar(c)).collect());
        prop_assume!(poly.degree().unwrap_or(0) >= 1);
        let factors = poly::factor(&f, &poly, seed);
        // Rebuild lead * prod(factors^mult).
        let mut prod = Poly::constant(&f, poly.lead().unwrap().clone());
        for (g, mult) in &factors {
            prop_assert!(poly::is_irreducible(&f, g), "factor must be irreducible");
            for _ in 0..*mult {
                prod = poly::mul(&f, &prod, g);
            }
        }
        prop_assert_eq!(prod, poly);
    }

    #[test]
    fn collection_is_homomorphic(
        word1 in proptest::collection::vec((0usize..6, -6i64..7), 0..8),
        word2 in proptest::collection::vec((0usize..6, -6i64..7), 0..8),
    ) {
        let pres = corpus::g1000_presentation();
        let mut joined = word1.clone();
        joined.extend_from_slice(&word2);
        let lhs = pres.collect(&joined).unwrap();
        let nu = pres.collect(&word1).unwrap();
        let nv = pres.collect(&word2).unwrap();
        let rhs = pres.multiply(&nu, &nv).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn cyclotomic_classes_partition(k in 1u64..40, q in 2u128..50) {
        prop_assume!(gcd_u64((q % k as u128) as u64, k) == 1 || k == 1);
        let classes = cyclotomic_classes(k, q).unwrap();
        let total: usize = classes.iter().map(|c| c.len()).sum();
        prop_assert_eq!(total, k as usize);
        let gens = generator_classes(k, q).unwrap();
        if k > 1 {
            let o = mult_order(q, k).unwrap() as usize;
            for c in &gens {
                prop_assert_eq!(c.len(), o);
            }
        }
    }
}

/// For strong pairs, the component's field degree is `o / [C_0 : H]` with
/// `C_0 = Cen_G(ε_C(H,K))`, and `C_0` coincides with the stabilizer of the
/// class under the character action of `N_G(K)` whenever that action is
/// defined (N_G(K) normalizes H).
#[test]
fn br_consistency_for_strong_pairs() {
    let mut checked = 0usize;
    for (name, g) in corpus::oracle_corpus() {
        let q = semisimple_qs(g.order())[0];
        let f = field(q);
        let chains = search_pairs(&g, &f, &SearchLimits::default()).unwrap();
        for chain in &chains {
            if chain.num_steps() != 1 {
                continue;
            }
            let h = &chain.pair.h;
            let k_sub = &chain.pair.k;
            let n_k = g.normalizer(k_sub);
            // The character action needs N_G(K) to normalize H.
            if !h.normal_in(&n_k) {
                continue;
            }
            let k = chain.pair.index as u64;
            let (r, _) = compute_r(chain, RootChoice::Canonical).unwrap();
            for class in &r {
                let e0 = eps_class(h, k_sub, class, &f, RootChoice::Canonical).unwrap();
                let c0 = e0.centralizer_in(&g.full_subgroup());
                // Stabilizer of the class under the exponent action
                // chi_c -> chi_{c t(g)} with t(g) the dlog of g y g^-1.
                let stab = character_action_stabilizer(&g, k_sub, chain.pair.quotient_gen, k, class);
                assert_eq!(
                    c0.elements(),
                    stab.elements(),
                    "{name}: Cen_G(eps_C) must equal the BR stabilizer"
                );
                let o = mult_order(f.cardinality(), k).unwrap();
                let comp = wedderburn::decomposer::component(chain, class, 0, RootChoice::Canonical).unwrap();
                assert_eq!(comp.field_degree, o / (c0.order() / h.order()) as u64, "{name}: l = o/[E:H]");
                checked += 1;
            }
        }
    }
    assert!(checked >= 10, "checked only {checked} strong-pair components");
    println!("BR consistency checked on {checked} strong-pair components");
}

fn character_action_stabilizer(
    g: &wedderburn::group::FiniteGroup,
    k_sub: &Subgroup,
    quotient_gen: usize,
    k: u64,
    class: &wedderburn::cyclotomic::CyclotomicClass,
) -> Subgroup {
    // dlog of each coset of K in H with respect to the quotient generator.
    let mut dlog = vec![u64::MAX; g.order()];
    let mut rep = g.identity();
    for j in 0..k {
        for s in k_sub.iter() {
            dlog[g.mul(rep, s)] = j;
        }
        rep = g.mul(rep, quotient_gen);
    }
    let n_k = g.normalizer(k_sub);
    let members: Vec<usize> = n_k
        .iter()
        .filter(|&x| {
            // chi^x has exponent c * t where t = dlog(x y x^{-1}).
            let conj = g.mul(g.mul(x, quotient_gen), g.inv(x));
            let t = dlog[conj];
            debug_assert_ne!(t, u64::MAX, "normalizer element must fix the coset structure");
            class.contains(class.representative() * t % k)
        })
        .collect();
    Subgroup::from_elements(g, &members).expect("stabilizer is a subgroup")
}

/// Step II(c) of the algorithm: at the first level, the orbit partition of
/// the classes matches the orbits of the character action of N_{H_1}(K),
/// whenever that action is defined.
#[test]
fn level_one_orbits_match_normalizer_action() {
    let mut checked = 0usize;
    for (name, g) in corpus::oracle_corpus() {
        let q = semisimple_qs(g.order())[0];
        let f = field(q);
        let chains = search_pairs(&g, &f, &SearchLimits::default()).unwrap();
        for chain in &chains {
            if chain.num_steps() == 0 {
                continue;
            }
            let h = &chain.pair.h;
            let k_sub = &chain.pair.k;
            let h1 = &chain.levels[1];
            // N_{H_1}(K):
            let n_h1_k: Vec<usize> = g
                .normalizer(k_sub)
                .iter()
                .filter(|&x| h1.contains(x))
                .collect();
            let n_sub = Subgroup::from_elements(&g, &n_h1_k).unwrap();
            if !h.normal_in(&n_sub) {
                continue;
            }
            let k = chain.pair.index as u64;
            let classes = generator_classes(k, f.cardinality()).unwrap();
            // Orbits of class representatives under the character action.
            let mut dlog = vec![u64::MAX; g.order()];
            let mut rep = g.identity();
            for j in 0..k {
                for s in k_sub.iter() {
                    dlog[g.mul(rep, s)] = j;
                }
                rep = g.mul(rep, chain.pair.quotient_gen);
            }
            let mut expected: Vec<BTreeSet<u64>> = Vec::new();
            let mut assigned: BTreeSet<u64> = BTreeSet::new();
            for class in &classes {
                let c = class.representative();
                if assigned.contains(&c) {
                    continue;
                }
                let mut orbit: BTreeSet<u64> = BTreeSet::new();
                let mut frontier = vec![c];
                while let Some(cur) = frontier.pop() {
                    // Map cur to its class representative.
                    let cur_rep = classes
                        .iter()
                        .find(|cl| cl.contains(cur))
                        .expect("unit exponent stays a unit")
                        .representative();
                    if !orbit.insert(cur_rep) {
                        continue;
                    }
                    assigned.insert(cur_rep);
                    for x in n_sub.iter() {
                        let conj = g.mul(g.mul(x, chain.pair.quotient_gen), g.inv(x));
                        let t = dlog[conj];
                        frontier.push(cur_rep * t % k);
                    }
                }
                expected.push(orbit);
            }
            let (_, level_orbits) = compute_r(chain, RootChoice::Canonical).unwrap();
            let got: Vec<BTreeSet<u64>> = level_orbits[0]
                .orbits
                .iter()
                .map(|o| o.iter().copied().collect())
                .collect();
            let expected_sorted: BTreeSet<BTreeSet<u64>> = expected.into_iter().collect();
            let got_sorted: BTreeSet<BTreeSet<u64>> = got.into_iter().collect();
            assert_eq!(got_sorted, expected_sorted, "{name}: level-1 orbit partition");
            checked += 1;
        }
    }
    assert!(checked > 5, "checked only {checked} level-1 actions");
    println!("Step II(c) cross-check on {checked} chains");
}
