//! Constructors for the bundled small-group corpus: cyclic and general
//! abelian groups, dihedral/dicyclic/metacyclic families, the quaternion
//! group, A_4, and the order-1000 polycyclic example group.

use crate::group::{FiniteGroup, PcPresentation, DEFAULT_STEP_BUDGET};

/// Cyclic group of order `n`.
pub fn cyclic(n: usize) -> FiniteGroup {
    assert!(n >= 1);
    let table: Vec<Vec<usize>> = (0..n).map(|a| (0..n).map(|b| (a + b) % n).collect()).collect();
    let names = (0..n).map(|i| if i == 0 { "e".into() } else { format!("g^{i}") }).collect();
    FiniteGroup::from_cayley_table(table, Some(names), &format!("C_{n}")).expect("cyclic group")
}

/// Direct product of cyclic groups of the given orders.
pub fn abelian(orders: &[usize]) -> FiniteGroup {
    assert!(!orders.is_empty());
    let n: usize = orders.iter().product();
    let mix = |v: &[usize]| -> usize {
        let mut idx = 0;
        for (a, &r) in v.iter().zip(orders) {
            idx = idx * r + a;
        }
        idx
    };
    let unmix = |mut idx: usize| -> Vec<usize> {
        let mut v = vec![0; orders.len()];
        for i in (0..orders.len()).rev() {
            v[i] = idx % orders[i];
            idx /= orders[i];
        }
        v
    };
    let table: Vec<Vec<usize>> = (0..n)
        .map(|a| {
            let va = unmix(a);
            (0..n)
                .map(|b| {
                    let vb = unmix(b);
                    let sum: Vec<usize> = va.iter().zip(&vb).zip(orders).map(|((&x, &y), &r)| (x + y) % r).collect();
                    mix(&sum)
                })
                .collect()
        })
        .collect();
    let desc = format!("C_{}", orders.iter().map(|o| o.to_string()).collect::<Vec<_>>().join("xC_"));
    FiniteGroup::from_cayley_table(table, None, &desc).expect("abelian group")
}

/// Metacyclic group `C_m x| C_n` with `b a b^-1 = a^r`; needs `r^n = 1 mod m`.
/// Elements are `a^i b^j` at index `i*n + j`.
pub fn metacyclic(m: usize, n: usize, r: usize) -> FiniteGroup {
    assert!(m >= 1 && n >= 1);
    let mut rn = 1usize;
    for _ in 0..n {
        rn = rn * r % m;
    }
    assert_eq!(rn % m, 1 % m, "r^n must be 1 mod m");
    let rpow = |j: usize| -> usize {
        let mut acc = 1usize;
        for _ in 0..j {
            acc = acc * r % m;
        }
        acc
    };
    let order = m * n;
    let table: Vec<Vec<usize>> = (0..order)
        .map(|x| {
            let (i1, j1) = (x / n, x % n);
            (0..order)
                .map(|y| {
                    let (i2, j2) = (y / n, y % n);
                    // a^{i1} b^{j1} a^{i2} b^{j2} = a^{i1 + i2 r^{j1}} b^{j1+j2}
                    let i = (i1 + i2 * rpow(j1)) % m;
                    let j = (j1 + j2) % n;
                    i * n + j
                })
                .collect()
        })
        .collect();
    let desc = format!("C_{m}x|C_{n}(r={r})");
    FiniteGroup::from_cayley_table(table, None, &desc).expect("metacyclic group")
}

/// Dihedral group of order `2n`.
pub fn dihedral(n: usize) -> FiniteGroup {
    assert!(n >= 2);
    metacyclic(n, 2, n - 1)
}

/// Dicyclic group of order `4n` (`n = 2` is the quaternion group):
/// `a` of order `2n`, `b^2 = a^n`, `b a b^-1 = a^-1`.
/// Elements are `a^i b^j` at index `i*2 + j` with `j < 2`.
pub fn dicyclic(n: usize) -> FiniteGroup {
    assert!(n >= 1);
    let m = 2 * n;
    let order = 4 * n;
    let table: Vec<Vec<usize>> = (0..order)
        .map(|x| {
            let (i1, j1) = (x / 2, x % 2);
            (0..order)
                .map(|y| {
                    let (i2, j2) = (y / 2, y % 2);
                    // b a^i = a^{-i} b
                    let (i, j) = if j1 == 0 {
                        ((i1 + i2) % m, j2)
                    } else if j2 == 0 {
                        ((i1 + m - i2 % m) % m, 1)
                    } else {
                        // b a^{i2} b = a^{-i2} b^2 = a^{n - i2}
                        ((i1 + m - i2 % m + n) % m, 0)
                    };
                    i * 2 + j
                })
                .collect()
        })
        .collect();
    FiniteGroup::from_cayley_table(table, None, &format!("Dic_{n}")).expect("dicyclic group")
}

/// The quaternion group Q_8.
pub fn quaternion8() -> FiniteGroup {
    dicyclic(2)
}

/// The alternating group A_4 on four points.
pub fn alternating4() -> FiniteGroup {
    // Generators (0 1)(2 3) and (0 1 2).
    let g1 = vec![1, 0, 3, 2];
    let g2 = vec![1, 2, 0, 3];
    FiniteGroup::from_permutations(4, &[g1, g2], "A_4").expect("A_4")
}

/// The polycyclic presentation of the order-1000 example group
/// (SmallGroup(1000,86)): orders (2,2,2,5,5,5), `x1^2 = x2`, `x2^2 = x3`,
/// and the commutator relations listed below.
pub fn g1000_presentation() -> PcPresentation {
    let commutators: Vec<((usize, usize), Vec<(usize, i64)>)> = vec![
        ((4, 3), vec![(5, 1)]),                 // [x5,x4] = x6
        ((4, 0), vec![(3, 1), (4, 1)]),         // [x5,x1] = x4 x5
        ((5, 0), vec![(5, 2)]),                 // [x6,x1] = x6^2
        ((3, 1), vec![(3, 1), (5, 2)]),         // [x4,x2] = x4 x6^2
        ((5, 1), vec![(5, 3)]),                 // [x6,x2] = x6^3
        ((4, 1), vec![(4, 1), (5, 2)]),         // [x5,x2] = x5 x6^2
        ((4, 2), vec![(4, 3), (5, 2)]),         // [x5,x3] = x5^3 x6^2
        ((3, 2), vec![(3, 3), (5, 2)]),         // [x4,x3] = x4^3 x6^2
        ((3, 0), vec![(3, 2), (4, 3), (5, 4)]), // [x4,x1] = x4^2 x5^3 x6^4
    ];
    let conjugates = commutators
        .into_iter()
        .map(|((i, j), w)| ((i, j), PcPresentation::commutator_to_conjugate(i, &w)))
        .collect();
    PcPresentation::new(
        vec![2, 2, 2, 5, 5, 5],
        vec![vec![(1, 1)], vec![(2, 1)], vec![], vec![], vec![], vec![]],
        conjugates,
        DEFAULT_STEP_BUDGET,
    )
    .expect("valid presentation")
}

/// The order-1000 example group itself.
pub fn g1000() -> FiniteGroup {
    FiniteGroup::from_presentation(g1000_presentation(), "SmallGroup(1000,86)").expect("consistent")
}

/// The complete irredundant set of nine generalized strong Shoda pairs of
/// the order-1000 group, with explicit chains for the two pairs that are
/// not strong.
pub fn g1000_pair_specs(g: &FiniteGroup) -> Vec<crate::decomposer::PairSpec> {
    use crate::decomposer::PairSpec;
    let el = |w: &[(usize, i64)]| g.element_from_word(w).expect("valid word");
    let x: Vec<usize> = (0..6).map(|i| el(&[(i, 1)])).collect();
    let sub = |gens: &[usize]| g.subgroup_closure(gens).expect("valid generators");

    let full = g.full_subgroup();
    let h456 = sub(&[x[3], x[4], x[5]]);
    let h56y = sub(&[x[4], x[5], el(&[(2, 1), (3, 2)])]);
    let h3456 = sub(&[x[2], x[3], x[4], x[5]]);
    let chain = Some(vec![h56y.clone(), h3456, full.clone()]);

    vec![
        PairSpec { h: full.clone(), k: full.clone(), chain: None },
        PairSpec { h: full.clone(), k: sub(&[x[1], x[2], x[3], x[4], x[5]]), chain: None },
        PairSpec { h: full.clone(), k: sub(&[x[2], x[3], x[4], x[5]]), chain: None },
        PairSpec { h: full.clone(), k: h456.clone(), chain: None },
        PairSpec { h: h456.clone(), k: sub(&[x[3], x[5]]), chain: None },
        PairSpec { h: h456.clone(), k: sub(&[x[4], x[5]]), chain: None },
        PairSpec { h: h456, k: sub(&[el(&[(3, -1), (4, 1)]), x[5]]), chain: None },
        PairSpec { h: h56y.clone(), k: sub(&[el(&[(2, 1), (3, 2), (5, 3)]), x[4]]), chain: chain.clone() },
        PairSpec { h: h56y, k: sub(&[x[4]]), chain },
    ]
}

/// `(name, group)` pairs for the oracle-equivalence corpus: all abelian
/// groups of order at most 30, dihedral groups up to D_8, Q_8 and Dic_3,
/// A_4, and a few metacyclic examples.  S_4 is not included: its pair
/// search does not reach a complete set under this crate's limits.
pub fn oracle_corpus() -> Vec<(String, FiniteGroup)> {
    let mut out: Vec<(String, FiniteGroup)> = Vec::new();
    for spec in abelian_specs_up_to(30) {
        let name = format!("C_{}", spec.iter().map(|o| o.to_string()).collect::<Vec<_>>().join("xC_"));
        out.push((name, abelian(&spec)));
    }
    for n in 3..=8 {
        out.push((format!("D_{n}"), dihedral(n)));
    }
    out.push(("Q_8".into(), quaternion8()));
    out.push(("Dic_3".into(), dicyclic(3)));
    out.push(("A_4".into(), alternating4()));
    out.push(("C_7x|C_3".into(), metacyclic(7, 3, 2)));
    out.push(("C_5x|C_4".into(), metacyclic(5, 4, 2)));
    out.push(("C_9x|C_3".into(), metacyclic(9, 3, 4)));
    out
}

/// All isomorphism types of abelian groups of order 2..=bound, as lists of
/// prime-power cyclic factors.
fn abelian_specs_up_to(bound: usize) -> Vec<Vec<usize>> {
    fn partitions(n: usize) -> Vec<Vec<usize>> {
        fn rec(n: usize, max: usize) -> Vec<Vec<usize>> {
            if n == 0 {
                return vec![vec![]];
            }
            let mut out = Vec::new();
            for first in (1..=max.min(n)).rev() {
                for mut rest in rec(n - first, first) {
                    let mut p = vec![first];
                    p.append(&mut rest);
                    out.push(p);
                }
            }
            out
        }
        rec(n, n)
    }
    let mut out = Vec::new();
    for n in 2..=bound {
        let factors = crate::arith::factorize_u128(n as u128);
        let mut specs: Vec<Vec<usize>> = vec![vec![]];
        for &(p, e) in &factors {
            let mut next = Vec::new();
            for part in partitions(e as usize) {
                for base in &specs {
                    let mut s = base.clone();
                    for &piece in &part {
                        s.push((p as usize).pow(piece as u32));
                    }
                    next.push(s);
                }
            }
            specs = next;
        }
        for mut s in specs {
            s.sort_unstable();
            out.push(s);
        }
    }
    out
}
