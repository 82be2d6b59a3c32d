//! Randomized invariants.

use proptest::prelude::*;

use grouplat::classes::{is_in_class, radical, residual, section_in_class, GroupClass};
use grouplat::group::{direct_product, semidirect_product, Action};
use grouplat::harness::corpus::corpus;
use grouplat::iso::is_isomorphic;
use grouplat::lattice::{distinguished_subgroups, SubgroupLattice};
use grouplat::permutability::permutability_profile;
use grouplat::series::{
    all_chief_factors, chief_series_between_with, g_isomorphic, hypercenter, normal_subgroups,
    TieBreak,
};
use grouplat::sublattices::{z_delta_between, Delta};
use grouplat::{Group, Permutation, Subgroup};

fn perm(max_degree: usize) -> impl Strategy<Value = Permutation> {
    (1..=max_degree).prop_flat_map(|n| {
        Just((0..n as u32).collect::<Vec<_>>())
            .prop_shuffle()
            .prop_map(|v| Permutation::from_images(v).unwrap())
    })
}

fn perms_of_degree(n: usize, count: usize) -> impl Strategy<Value = Vec<Permutation>> {
    prop::collection::vec(
        Just((0..n as u32).collect::<Vec<_>>())
            .prop_shuffle()
            .prop_map(|v| Permutation::from_images(v).unwrap()),
        0..=count,
    )
}

fn corpus_group() -> impl Strategy<Value = &'static Group> {
    (0..corpus().len()).prop_map(|i| &corpus()[i])
}

/// A corpus group with two of its subgroups.
fn group_and_pair() -> impl Strategy<Value = (&'static Group, Subgroup, Subgroup)> {
    (corpus_group(), any::<usize>(), any::<usize>()).prop_map(|(g, i, j)| {
        let l = SubgroupLattice::of(g).unwrap();
        let a = l.get(i % l.len()).clone();
        let b = l.get(j % l.len()).clone();
        (g, a, b)
    })
}

/// A corpus group with normal subgroups `L ≤ T`.
fn group_and_section() -> impl Strategy<Value = (&'static Group, Subgroup, Subgroup)> {
    (corpus_group(), any::<usize>(), any::<usize>()).prop_map(|(g, i, j)| {
        let normals = normal_subgroups(g);
        let a = normals[i % normals.len()].clone();
        let b = normals[j % normals.len()].clone();
        if a.is_subgroup_of(&b) {
            (g, a, b)
        } else {
            let m = g.meet(&a, &b).unwrap();
            (g, m, b)
        }
    })
}

fn all_deltas() -> Vec<Delta> {
    let mut v = Delta::builtins();
    v.extend(GroupClass::ALL.iter().map(|&c| Delta::FMember(c)));
    v
}

proptest! {
    #[test]
    fn permutation_inverse_and_cycles(p in perm(9)) {
        let id = Permutation::identity(p.degree());
        prop_assert_eq!(p.then(&p.inverse()), id.clone());
        prop_assert_eq!(p.inverse().then(&p), id);
        let back = Permutation::parse_cycles(p.degree(), &p.to_cycle_string()).unwrap();
        prop_assert_eq!(back, p);
    }

    #[test]
    fn composition_is_associative(v in (1usize..8).prop_flat_map(|n| perms_of_degree(n, 3))) {
        if v.len() == 3 {
            let left = v[0].then(&v[1]).then(&v[2]);
            let right = v[0].then(&v[1].then(&v[2]));
            prop_assert_eq!(left, right);
        }
    }

    #[test]
    fn generated_group_is_closed(gens in (1usize..=5).prop_flat_map(|n| perms_of_degree(n, 3))) {
        let degree = gens.first().map_or(1, Permutation::degree);
        let g = Group::generate(degree, &gens).unwrap();
        let fact: usize = (1..=degree).product();
        prop_assert_eq!(fact % g.order(), 0);
        prop_assert!(g.element(0).is_identity());
        for a in 0..g.order() {
            prop_assert_eq!(g.mul(a, g.inv(a)), 0);
        }
        // the table agrees with composition for a few products
        for a in (0..g.order()).step_by(3) {
            for b in (0..g.order()).step_by(5) {
                let c = g.mul(a, b);
                let direct = g.element(a).then(g.element(b));
                let other = g.element(b).then(g.element(a));
                prop_assert!(g.element(c) == &direct || g.element(c) == &other);
            }
        }
        for p in &gens {
            prop_assert!(g.index_of(p).is_some());
        }
    }

    #[test]
    fn cayley_table_round_trip(gens in (1usize..=5).prop_flat_map(|n| perms_of_degree(n, 2))) {
        let degree = gens.first().map_or(1, Permutation::degree);
        let g = Group::generate(degree, &gens).unwrap();
        let n = g.order();
        let table: Vec<usize> = (0..n * n).map(|i| g.mul(i / n, i % n)).collect();
        let h = Group::from_cayley_table(n, &table, None).unwrap();
        prop_assert!(is_isomorphic(&g, &h).unwrap());
    }

    #[test]
    fn lattice_operations((g, a, b) in group_and_pair()) {
        let m = g.meet(&a, &b).unwrap();
        let j = g.join(&a, &b).unwrap();
        prop_assert!(m.is_subgroup_of(&a) && m.is_subgroup_of(&b));
        prop_assert!(a.is_subgroup_of(&j) && b.is_subgroup_of(&j));
        let l = SubgroupLattice::of(g).unwrap();
        let (ia, ib) = (l.position(&a).unwrap(), l.position(&b).unwrap());
        prop_assert_eq!(l.get(l.meet_index(ia, ib)), &m);
        prop_assert_eq!(l.get(l.join_index(g, ia, ib)), &j);
        // (A∩B)_G = A_G ∩ B_G and ⟨A,B⟩^G = A^G B^G
        let core_m = g.core(&m).unwrap();
        prop_assert_eq!(core_m, g.meet(&g.core(&a).unwrap(), &g.core(&b).unwrap()).unwrap());
        let ca = g.normal_closure(&a).unwrap();
        let cb = g.normal_closure(&b).unwrap();
        let prod = g.product_set(&ca, &cb).unwrap();
        let closure_j = g.normal_closure(&j).unwrap();
        prop_assert_eq!(closure_j.mask(), &prod);
    }

    #[test]
    fn product_set_size((g, a, b) in group_and_pair()) {
        let ab = g.product_set(&a, &b).unwrap();
        let m = g.meet(&a, &b).unwrap();
        prop_assert_eq!(ab.count_ones(..) * m.order(), a.order() * b.order());
        if g.permutes(&a, &b).unwrap() {
            prop_assert_eq!(ab.count_ones(..), g.join(&a, &b).unwrap().order());
        }
    }

    #[test]
    fn profile_implications((g, a, _b) in group_and_pair()) {
        let p = permutability_profile(g, &a).unwrap();
        if p.normal {
            prop_assert!(p.subnormal);
            prop_assert_eq!(p.quasinormal, Some(true));
        }
        if p.quasinormal == Some(true) {
            prop_assert_eq!(p.s_permutable, Some(true));
            prop_assert_eq!(p.modular, Some(true));
            prop_assert!(p.subnormal);
        }
    }

    #[test]
    fn central_delta_is_hypercentral((g, a, _b) in group_and_pair()) {
        let closure = g.normal_closure(&a).unwrap();
        let core = g.core(&a).unwrap();
        let lhs = z_delta_between(g, &core, &closure, Delta::Central).unwrap();
        let (q, pi) = g.quotient(&core).unwrap();
        let rhs = pi.image(&closure, &q).unwrap().is_subgroup_of(&hypercenter(&q));
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn chief_series_tie_break_independent((g, lower, upper) in group_and_section()) {
        let a = chief_series_between_with(g, &lower, &upper, TieBreak::Canonical).unwrap();
        let b = chief_series_between_with(g, &lower, &upper, TieBreak::Reversed).unwrap();
        let key = |f: &grouplat::ChiefFactor| (f.order(), f.centralizer.elements().collect::<Vec<_>>());
        let mut oa: Vec<_> = a.iter().map(key).collect();
        let mut ob: Vec<_> = b.iter().map(key).collect();
        oa.sort_unstable();
        ob.sort_unstable();
        prop_assert_eq!(oa, ob);
        for d in all_deltas() {
            let va = a.iter().all(|f| d.holds(g, f).unwrap());
            let vb = b.iter().all(|f| d.holds(g, f).unwrap());
            prop_assert_eq!(va, vb, "{}", d);
        }
    }

    #[test]
    fn quotient_map((g, _l, n) in group_and_section()) {
        let (q, pi) = g.quotient(&n).unwrap();
        prop_assert_eq!(q.order() * n.order(), g.order());
        prop_assert!(pi.is_surjective(&q));
        prop_assert_eq!(pi.kernel(g), n);
        if g.order() <= 24 {
            prop_assert!(pi.is_homomorphism(g, &q));
        }
    }

    #[test]
    fn cyclic_products(m in 1usize..7, n in 1usize..7, r in 0usize..7) {
        let cyc = |k: usize| {
            let gens = if k > 1 {
                vec![Permutation::from_cycles(k, &[(0..k).collect()]).unwrap()]
            } else {
                vec![]
            };
            Group::generate(k, &gens).unwrap()
        };
        let (a, b) = (cyc(m), cyc(n));
        let d = direct_product(&a, &b).unwrap();
        prop_assert_eq!(d.order(), m * n);
        prop_assert!(d.is_abelian());
        // x ↦ x^r is a valid action of C_n on C_m iff it is bijective and its
        // n-th power is the identity
        let gen_b = b.generator_indices().first().copied().unwrap_or(0);
        let auto: Vec<usize> = (0..m).map(|x| a.power(x, r)).collect();
        let mut sorted = auto.clone();
        sorted.sort_unstable();
        sorted.dedup();
        let bijective = sorted.len() == m;
        let periodic = (0..m).all(|x| (0..n).fold(x, |y, _| auto[y]) == x);
        let action = Action::from_generator_image(&a, &b, gen_b, &auto);
        match action.and_then(|action| semidirect_product(&a, &b, &action)) {
            Ok(s) => {
                prop_assert!(bijective && periodic);
                prop_assert_eq!(s.order(), m * n);
                prop_assert_eq!(s.is_abelian(), r % m.max(1) == 1 % m.max(1) || m <= 2 || n == 1);
            }
            Err(_) => prop_assert!(!(bijective && periodic)),
        }
    }
}

#[test]
fn g_isomorphic_factors_get_equal_verdicts() {
    for g in corpus() {
        let factors = all_chief_factors(g);
        for (i, f1) in factors.iter().enumerate() {
            for f2 in &factors[i + 1..] {
                if f1.order() != f2.order() || !g_isomorphic(g, f1, f2).unwrap() {
                    continue;
                }
                for d in all_deltas() {
                    assert_eq!(
                        d.holds(g, f1).unwrap(),
                        d.holds(g, f2).unwrap(),
                        "{} {} {} {}",
                        g.label(),
                        d,
                        f1.describe(),
                        f2.describe()
                    );
                }
            }
        }
    }
}

#[test]
fn class_flags_spot_checks() {
    for g in corpus() {
        let normals = normal_subgroups(g);
        let whole = g.whole();
        let one = g.trivial_subgroup();
        let phi = distinguished_subgroups(g).unwrap().frattini;
        for c in GroupClass::ALL {
            let f = c.flags();
            let member = is_in_class(g, c);
            if f.formation && member {
                for n in normals.iter() {
                    assert!(section_in_class(g, &whole, n, c).unwrap(), "{} {c}", g.label());
                }
            }
            if f.normally_hereditary && member {
                for n in normals.iter() {
                    assert!(section_in_class(g, n, &one, c).unwrap(), "{} {c}", g.label());
                }
            }
            if f.formation {
                let r = residual(g, c).unwrap();
                assert!(section_in_class(g, &whole, &r, c).unwrap(), "{} {c}", g.label());
                if f.saturated && r.is_subgroup_of(&phi) {
                    assert!(member, "{} {c}", g.label());
                }
            }
            if f.fitting {
                let r = radical(g, c).unwrap();
                assert!(section_in_class(g, &r, &one, c).unwrap(), "{} {c}", g.label());
            }
            if f.contains_nilpotent && is_in_class(g, GroupClass::Nilpotent) {
                assert!(member, "{} {c}", g.label());
            }
        }
    }
}

#[test]
fn residual_and_radical_are_order_independent() {
    for g in corpus() {
        let normals = normal_subgroups(g);
        let whole = g.whole();
        let one = g.trivial_subgroup();
        for c in GroupClass::ALL {
            let mut res = whole.clone();
            let mut rad = one.clone();
            for n in normals.iter().rev() {
                if section_in_class(g, &whole, n, c).unwrap() {
                    res = g.meet(&res, n).unwrap();
                }
                if section_in_class(g, n, &one, c).unwrap() {
                    rad = g.join(&rad, n).unwrap();
                }
            }
            assert_eq!(residual(g, c).unwrap(), res, "{} {c}", g.label());
            assert_eq!(radical(g, c).unwrap(), rad, "{} {c}", g.label());
        }
    }
}
