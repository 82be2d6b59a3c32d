//! The fixed corpus of named small groups.

use std::sync::OnceLock;

use crate::group::{direct_product, Group};
use crate::perm::Permutation;

fn cyclic(n: usize) -> Group {
    let gens = if n > 1 {
        vec![Permutation::from_cycles(n, &[(0..n).collect()]).expect("n-cycle")]
    } else {
        Vec::new()
    };
    Group::generate_named(n, &gens, &format!("C{n}")).expect("small cyclic group")
}

fn from_cycles(name: &str, degree: usize, gens: &[&str]) -> Group {
    let gens: Vec<Permutation> = gens
        .iter()
        .map(|s| Permutation::parse_cycles(degree, s).expect("corpus generator"))
        .collect();
    Group::generate_named(degree, &gens, name).expect("corpus group")
}

/// Symmetries of the regular `m`-gon, order `2m`.
fn dihedral(order: usize) -> Group {
    let m = order / 2;
    let rotation: Vec<u32> = (0..m).map(|i| ((i + 1) % m) as u32).collect();
    let reflection: Vec<u32> = (0..m).map(|i| ((m - i) % m) as u32).collect();
    let gens = [
        Permutation::from_images(rotation).expect("rotation"),
        Permutation::from_images(reflection).expect("reflection"),
    ];
    Group::generate_named(m, &gens, &format!("D{order}")).expect("dihedral group")
}

/// `⟨a, x | a^{2n}, x² = a^n, x a x⁻¹ = a⁻¹⟩`, order `4n`. Elements are
/// `a^k x^e`, labelled `2k + e`.
fn dicyclic(n: usize, name: &str) -> Group {
    let m = 2 * n;
    let size = 2 * m;
    let mut table = vec![0; size * size];
    for k1 in 0..m {
        for e1 in 0..2 {
            for k2 in 0..m {
                for e2 in 0..2 {
                    let (k, e) = match (e1, e2) {
                        (0, _) => (k1 + k2, e2),
                        (_, 0) => (k1 + m - k2, 1),
                        _ => (k1 + m - k2 + n, 0),
                    };
                    table[(2 * k1 + e1) * size + 2 * k2 + e2] = 2 * (k % m) + e;
                }
            }
        }
    }
    Group::from_cayley_table(size, &table, Some(name)).expect("dicyclic table")
}

/// `C_m ⋊ C_n` with the generator of `C_n` acting by `a ↦ a^r`. Elements are
/// `a^k h^e`, labelled `k·n + e`.
fn metacyclic(m: usize, n: usize, r: usize, name: &str) -> Group {
    let mut powers = vec![1usize; n];
    for e in 1..n {
        powers[e] = powers[e - 1] * r % m;
    }
    assert_eq!(powers[n - 1] * r % m, 1, "r must have order dividing n mod m");
    let size = m * n;
    let mut table = vec![0; size * size];
    for k1 in 0..m {
        for e1 in 0..n {
            for k2 in 0..m {
                for e2 in 0..n {
                    let k = (k1 + powers[e1] * k2) % m;
                    let e = (e1 + e2) % n;
                    table[(k1 * n + e1) * size + k2 * n + e2] = k * n + e;
                }
            }
        }
    }
    Group::from_cayley_table(size, &table, Some(name)).expect("metacyclic table")
}

fn product(a: &Group, b: &Group, name: &str) -> Group {
    direct_product(a, b).expect("small direct product").renamed(name)
}

fn build() -> Vec<Group> {
    let mut groups: Vec<Group> = (1..=12).map(cyclic).collect();
    groups.push(from_cycles("V4", 4, &["(0 1)(2 3)", "(0 2)(1 3)"]));
    groups.push(from_cycles("C2^3", 6, &["(0 1)", "(2 3)", "(4 5)"]));
    groups.extend([8, 10, 12, 16].map(dihedral));
    let q8 = dicyclic(2, "Q8");
    groups.push(q8.clone());
    groups.push(dicyclic(4, "Q16"));
    let s3 = from_cycles("S3", 3, &["(0 1)", "(0 1 2)"]);
    groups.push(s3.clone());
    groups.push(from_cycles("S4", 4, &["(0 1)", "(0 1 2 3)"]));
    groups.push(from_cycles("A4", 4, &["(0 1 2)", "(0 1)(2 3)"]));
    groups.push(from_cycles("A5", 5, &["(0 1 2 3 4)", "(0 1 2)"]));
    groups.push(dicyclic(3, "Dic3"));
    groups.push(metacyclic(8, 2, 5, "M16"));
    groups.push(metacyclic(5, 4, 2, "F20"));
    groups.push(metacyclic(7, 3, 2, "C7:C3"));
    groups.push(product(&s3, &cyclic(2), "S3xC2"));
    groups.push(product(&s3, &cyclic(3), "S3xC3"));
    groups.push(product(&dihedral(8), &cyclic(2), "D8xC2"));
    groups.push(product(&q8, &cyclic(3), "Q8xC3"));
    groups
}

/// The corpus, built once per process so lattice caches are shared.
pub fn corpus() -> &'static [Group] {
    static CORPUS: OnceLock<Vec<Group>> = OnceLock::new();
    CORPUS.get_or_init(build)
}

/// Case-insensitive lookup by name.
pub fn builtin(name: &str) -> Option<&'static Group> {
    corpus()
        .iter()
        .find(|g| g.name().is_some_and(|n| n.eq_ignore_ascii_case(name)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::SubgroupLattice;

    fn get(name: &str) -> &'static Group {
        builtin(name).unwrap()
    }

    #[test]
    fn orders_and_names() {
        let c = corpus();
        assert_eq!(c.len(), 32);
        let names: std::collections::HashSet<_> = c.iter().map(|g| g.label()).collect();
        assert_eq!(names.len(), c.len());
        for g in c {
            assert!(g.order() <= 64);
        }
        assert_eq!(get("C1").order(), 1);
        assert_eq!(get("Q8").order(), 8);
        assert_eq!(SubgroupLattice::of(get("Q8")).unwrap().len(), 6);
        assert_eq!(get("A5").order(), 60);
        assert_eq!(get("Dic3").order(), 12);
        assert_eq!(get("M16").order(), 16);
        assert_eq!(get("C7:C3").order(), 21);
        assert_eq!(get("Q8xC3").order(), 24);
        assert_eq!(get("D16").order(), 16);
        assert!(builtin("q16").is_some());
        assert!(builtin("nope").is_none());
    }

    #[test]
    fn element_order_profiles() {
        // Q16 has a single involution; D16 has nine
        let inv = |g: &Group| g.element_orders().iter().filter(|&&o| o == 2).count();
        assert_eq!(inv(get("Q16")), 1);
        assert_eq!(inv(get("D16")), 9);
        assert_eq!(inv(get("Q8")), 1);
        assert_eq!(inv(get("Dic3")), 1);
        assert_eq!(get("M16").exponent(), 8);
        assert_eq!(inv(get("M16")), 3);
        assert_eq!(inv(get("F20")), 5);
        assert!(!get("C7:C3").is_abelian());
        assert_eq!(get("C7:C3").center().order(), 1);
    }
}
