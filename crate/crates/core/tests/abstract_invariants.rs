//! Structural invariants of groups, cyclotomic arithmetic, tables and class-function
//! operations, checked against brute force.

use std::collections::BTreeSet;
use std::sync::{Arc, OnceLock};

use charforge::chartable::{character_table, table_for, CharacterTable};
use charforge::charops::{decompose, decompose_product, product, recompose, restrict, ClassFunction};
use charforge::constructions::{build_from_text, BuildOptions, Built};
use charforge::cyclotomic::{rational, root_of_unity, Cyclotomic};
use charforge::group::{generate_group, subgroup_generated, FiniteGroup, Subgroup};
use charforge::perm::Permutation;
use proptest::prelude::*;

fn built(spec: &str) -> Built {
    build_from_text(spec, &BuildOptions::default()).unwrap()
}

fn random_group() -> impl Strategy<Value = Arc<FiniteGroup>> {
    (2usize..=6)
        .prop_flat_map(|n| {
            let perm = Just((0..n).collect::<Vec<usize>>()).prop_shuffle();
            (Just(n), prop::collection::vec(perm, 1..=3))
        })
        .prop_map(|(n, gens)| {
            let gens = gens.into_iter().map(|g| Permutation::new(g).unwrap()).collect();
            generate_group(n, gens).unwrap()
        })
}

fn check_classes(g: &FiniteGroup) {
    let cl = g.classes();
    assert_eq!(cl.sizes.iter().sum::<usize>(), g.order());
    for c in 0..cl.len() {
        let rep = cl.representative(c);
        let orbit: BTreeSet<usize> = g.all().map(|y| g.conjugate(rep, y)).collect();
        let members: BTreeSet<usize> = cl.members[c].iter().map(|&x| x as usize).collect();
        assert_eq!(orbit, members);
        assert!(orbit.iter().all(|&x| cl.class_of(x) == c && x >= rep));
    }
}

fn check_quotient(g: &Arc<FiniteGroup>, n: &Subgroup) {
    let q = g.quotient_group(n).unwrap();
    assert_eq!(q.group.order() * n.order(), g.order());
    for a in g.all() {
        for b in g.all() {
            let lhs = q.projection[g.mul(a, b)] as usize;
            let rhs = q.group.mul(q.projection[a] as usize, q.projection[b] as usize);
            assert_eq!(lhs, rhs);
        }
    }
}

fn check_sylow(g: &Arc<FiniteGroup>) {
    match g.sylow_decomposition() {
        Ok(factors) => {
            assert_eq!(factors.iter().map(|(_, s)| s.order()).product::<usize>(), g.order());
            for (i, (_, a)) in factors.iter().enumerate() {
                for (_, b) in &factors[i + 1..] {
                    assert_eq!(a.intersection(b).order(), 1);
                }
            }
            assert!(g.is_nilpotent());
        }
        Err(_) => assert!(!g.is_nilpotent()),
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn random_permutation_groups(g in random_group()) {
        prop_assert!(g.element(0).is_identity());
        for a in g.all() {
            let inv = g.inverse(a);
            prop_assert_eq!(g.mul(a, inv), 0);
            for b in g.all().step_by(3) {
                // products compose left to right
                let ab = g.element(g.mul(a, b));
                prop_assert_eq!(ab, g.element(a).then(&g.element(b)));
            }
        }
        check_classes(&g);
        check_quotient(&g, &g.derived_subgroup());
        check_quotient(&g, &g.center());
        check_sylow(&g);
    }
}

#[test]
fn family_groups_satisfy_class_and_quotient_invariants() {
    for spec in [
        "wreath:p=2",
        "extraspecial:p=3,exp=p",
        "extraspecial:p=3,exp=p2",
        "wreath:p=3",
        "extraspecial:p=3,exp=p*cyclic:2",
        "abelian:4x3",
        "perm:degree=4;gens=(0 1 2 3);(0 1)",
    ] {
        let g = built(spec).group;
        check_classes(&g);
        check_quotient(&g, &g.derived_subgroup());
        check_quotient(&g, &g.center());
        check_sylow(&g);
    }
}

/// Index-`p` subgroups as kernels of the nonzero homomorphisms `G -> Z/p`, found by
/// trying every assignment of generator images.
fn brute_force_index_p(g: &Arc<FiniteGroup>, p: u64) -> BTreeSet<Vec<u32>> {
    let gens = g.generator_indices().len();
    let mut kernels = BTreeSet::new();
    for code in 1..p.pow(gens as u32) {
        let images: Vec<u64> = (0..gens).map(|i| code / p.pow(i as u32) % p).collect();
        let mut phi = vec![u64::MAX; g.order()];
        phi[0] = 0;
        let mut stack = vec![0usize];
        let mut consistent = true;
        while let Some(x) = stack.pop() {
            for (i, &a) in images.iter().enumerate() {
                let y = g.mul_generator(x, i);
                let want = (phi[x] + a) % p;
                if phi[y] == u64::MAX {
                    phi[y] = want;
                    stack.push(y);
                } else if phi[y] != want {
                    consistent = false;
                }
            }
        }
        if consistent {
            let kernel: Vec<u32> = g.all().filter(|&x| phi[x] == 0).map(|x| x as u32).collect();
            assert_eq!(kernel.len() as u64 * p, g.order() as u64);
            kernels.insert(kernel);
        }
    }
    kernels
}

#[test]
fn maximal_subgroups_match_brute_force() {
    for spec in [
        "wreath:p=2",
        charforge::constructions::Q8_SPEC,
        "abelian:2x2x2",
        "extraspecial:p=3,exp=p",
        "extraspecial:p=3,exp=p2",
        "wreath:p=3",
        "abelian:9x3",
        "abelian:3x3x3x3x3",
        "extraspecial:p=3,exp=p*cyclic:3",
        "extraspecial:p=3,exp=p2*cyclic:9",
    ] {
        let g = built(spec).group;
        let p = g.p_group_prime().unwrap();
        let got: BTreeSet<Vec<u32>> = g
            .maximal_subgroups_index_p()
            .unwrap()
            .iter()
            .map(|h| {
                assert!(g.is_normal(h));
                h.members().to_vec()
            })
            .collect();
        assert_eq!(got, brute_force_index_p(&g, p), "{spec}");
    }
}

#[test]
fn family_parameters() {
    // (spec, order, exponent, centre order, classes)
    let cases: [(&str, usize, u64, usize, usize); 7] = [
        ("cyclic:12", 12, 12, 12, 12),
        ("abelian:2x6", 12, 6, 12, 12),
        ("extraspecial:p=3,exp=p", 27, 3, 3, 11),
        ("extraspecial:p=3,exp=p2", 27, 9, 3, 11),
        ("extraspecial:p=5,exp=p", 125, 5, 5, 29),
        ("extraspecial:p=5,exp=p2", 125, 25, 5, 29),
        ("wreath:p=3", 81, 9, 3, 17),
    ];
    for (spec, order, exponent, centre, classes) in cases {
        let g = built(spec).group;
        assert_eq!(g.order(), order, "{spec}");
        assert_eq!(g.exponent(), exponent, "{spec}");
        assert_eq!(g.center().order(), centre, "{spec}");
        assert_eq!(g.classes().len(), classes, "{spec}");
        if spec.starts_with("extraspecial") {
            assert_eq!(g.derived_subgroup(), g.center());
        }
    }
    for (a, b) in [("wreath:p=2", "cyclic:3"), ("extraspecial:p=3,exp=p", "wreath:p=2")] {
        let prod = built(&format!("{a}*{b}")).group;
        let (ga, gb) = (built(a).group, built(b).group);
        assert_eq!(prod.order(), ga.order() * gb.order());
        assert_eq!(prod.classes().len(), ga.classes().len() * gb.classes().len());
    }
}

fn cyclotomic_element(m: u32) -> impl Strategy<Value = Cyclotomic> {
    prop::collection::vec((0..m as i64, -4i64..=4, 1i64..=3), 0..5).prop_map(move |terms| {
        terms.into_iter().fold(Cyclotomic::zero(), |acc, (k, n, d)| {
            &acc + &root_of_unity(m, k).scale(&rational(n, d))
        })
    })
}

fn field_triples() -> impl Strategy<Value = (Cyclotomic, Cyclotomic, Cyclotomic)> {
    prop::sample::select(vec![3u32, 4, 5, 6, 8, 9, 12, 15, 25, 45])
        .prop_flat_map(|m| (cyclotomic_element(m), cyclotomic_element(m), cyclotomic_element(m)))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn cyclotomic_field_axioms((a, b, c) in field_triples()) {
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        prop_assert!((&a - &a).is_zero());
        prop_assert_eq!(a == b, (&a - &b).is_zero());
        prop_assert_eq!(a.conjugate().conjugate(), a.clone());
        prop_assert_eq!((&a * &b).conjugate(), &a.conjugate() * &b.conjugate());
        let norm = &a * &a.conjugate();
        prop_assert_eq!(norm.conjugate(), norm);
    }

    #[test]
    fn roots_of_unity_sum_to_zero(m in 2u32..=60) {
        let s = (0..m as i64).fold(Cyclotomic::zero(), |acc, k| &acc + &root_of_unity(m, k));
        prop_assert!(s.is_zero());
        prop_assert_eq!(root_of_unity(m, m as i64), Cyclotomic::one());
        prop_assert_eq!(root_of_unity(2 * m, 2), root_of_unity(m, 1));
    }
}

fn corpus_tables() -> &'static Vec<(String, Built, CharacterTable)> {
    static TABLES: OnceLock<Vec<(String, Built, CharacterTable)>> = OnceLock::new();
    TABLES.get_or_init(|| {
        charforge::harness::Corpus::builtin()
            .groups
            .iter()
            .filter(|e| !e.stretch)
            .map(|e| {
                let b = built(&e.spec);
                let t = table_for(&b);
                (e.name.clone(), b, t)
            })
            .collect()
    })
}

#[test]
fn corpus_tables_are_orthogonal() {
    for (name, b, t) in corpus_tables() {
        t.check_orthogonality().unwrap_or_else(|e| panic!("{name}: {e}"));
        t.check_orthogonality_modular().unwrap();
        assert_eq!(t.sum_of_squared_degrees(), b.group.order() as u64, "{name}");
        assert_eq!(t.len(), b.group.classes().len());
    }
}

#[test]
fn tensor_tables_equal_dixon_tables() {
    for spec in ["extraspecial:p=3,exp=p*extraspecial:p=3,exp=p", "wreath:p=3*cyclic:3", "wreath:p=2*extraspecial:p=3,exp=p2"] {
        let b = built(spec);
        let tensor = table_for(&b);
        let dixon = character_table(&b.group);
        let rows = |t: &CharacterTable| -> BTreeSet<String> {
            t.irreducibles().iter().map(|r| format!("{r:?}")).collect()
        };
        assert_eq!(rows(&tensor), rows(&dixon), "{spec}");
        assert_eq!(tensor.degrees(), dixon.degrees());
    }
}

#[test]
fn decompose_then_recompose_on_corpus_products() {
    for (name, _, t) in corpus_tables() {
        if t.len() > 40 {
            continue;
        }
        for a in 0..t.len() {
            for b in a..t.len() {
                let d = decompose_product(t, a, b).unwrap();
                let f = product(&ClassFunction::from_row(t, a).unwrap(), &ClassFunction::from_row(t, b).unwrap()).unwrap();
                assert_eq!(recompose(&d, t), f, "{name} ({a}, {b})");
                let degree: u64 = d.constituents.iter().map(|&(r, m)| m * t.degree(r)).sum();
                assert_eq!(degree, t.degree(a) * t.degree(b));
            }
        }
    }
}

#[test]
fn central_restriction_is_a_multiple_of_one_linear() {
    for (name, b, t) in corpus_tables() {
        let g = &b.group;
        let Some(p) = g.p_group_prime() else { continue };
        let z = g.center();
        let zt = character_table(&z.as_group().group);
        for chi in (0..t.len()).filter(|&r| t.degree(r) == p) {
            let res = restrict(&ClassFunction::from_row(t, chi).unwrap(), &z).unwrap();
            let d = decompose(&res, &zt).unwrap();
            assert_eq!(d.eta, 1, "{name} row {chi}");
            assert_eq!(d.constituents[0].1, p);
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn fast_and_exact_decompositions_agree(a in 0usize..17, b in 0usize..17) {
        let (_, _, t) = corpus_tables().iter().find(|(n, _, _)| n == "C3wrC3").unwrap();
        let f = product(&ClassFunction::from_row(t, a).unwrap(), &ClassFunction::from_row(t, b).unwrap()).unwrap();
        prop_assert_eq!(decompose(&f, t).unwrap(), decompose_product(t, a, b).unwrap());
    }
}

#[test]
fn generated_subgroups_are_closed() {
    let g = built("wreath:p=3").group;
    for x in g.all().step_by(7) {
        let h = subgroup_generated(&g, &[x, g.inverse(x)]);
        assert_eq!(h.order() as u64, g.element_order(x));
        for &a in h.members() {
            for &b in h.members() {
                assert!(h.contains(g.mul(a as usize, b as usize)));
            }
        }
    }
}
