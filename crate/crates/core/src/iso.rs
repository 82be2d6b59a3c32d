//! Isomorphism testing by backtracking over generator images.

use fixedbitset::FixedBitSet;

use crate::error::{GroupError, Result};
use crate::group::Group;
use crate::Limits;

pub fn is_isomorphic(a: &Group, b: &Group) -> Result<bool> {
    is_isomorphic_with(a, b, &Limits::default())
}

pub fn is_isomorphic_with(a: &Group, b: &Group, limits: &Limits) -> Result<bool> {
    Ok(find_isomorphism(a, b, limits)?.is_some())
}

/// An isomorphism `a → b` as a table on element indices, if one exists.
pub fn find_isomorphism(a: &Group, b: &Group, limits: &Limits) -> Result<Option<Vec<usize>>> {
    if a.order() != b.order() {
        return Ok(None);
    }
    if a.order() > limits.iso_order {
        return Err(GroupError::SearchCapExceeded {
            cap: limits.iso_order,
        });
    }
    if order_profile(a) != order_profile(b)
        || a.center().order() != b.center().order()
        || a.is_abelian() != b.is_abelian()
    {
        return Ok(None);
    }
    let gens = a.small_generators(&a.whole());
    let orders_b = b.element_orders();
    let candidates: Vec<Vec<usize>> = gens
        .iter()
        .map(|&g| {
            let o = a.element_order(g) as u32;
            (0..b.order()).filter(|&y| orders_b[y] == o).collect()
        })
        .collect();
    let mut images = Vec::with_capacity(gens.len());
    Ok(search(a, b, &gens, &candidates, &mut images))
}

fn search(
    a: &Group,
    b: &Group,
    gens: &[usize],
    candidates: &[Vec<usize>],
    images: &mut Vec<usize>,
) -> Option<Vec<usize>> {
    let level = images.len();
    if level == gens.len() {
        let map = partial_map(a, b, gens, images)?;
        return Some(map.into_iter().map(|x| x as usize).collect());
    }
    for &y in &candidates[level] {
        images.push(y);
        if partial_map(a, b, &gens[..=level], images).is_some() {
            if let Some(found) = search(a, b, gens, candidates, images) {
                return Some(found);
            }
        }
        images.pop();
    }
    None
}

/// Extends `gens[i] ↦ images[i]` to the subgroup the generators span.
/// Returns `None` if the extension is not a well-defined injective
/// homomorphism. Unmapped entries are `u32::MAX`.
fn partial_map(a: &Group, b: &Group, gens: &[usize], images: &[usize]) -> Option<Vec<u32>> {
    let mut map = vec![u32::MAX; a.order()];
    let mut used = FixedBitSet::with_capacity(b.order());
    map[0] = 0;
    used.insert(0);
    let mut queue = vec![0usize];
    let mut i = 0;
    while i < queue.len() {
        let x = queue[i];
        i += 1;
        for (k, &g) in gens.iter().enumerate() {
            let y = a.mul(x, g);
            let fy = b.mul(map[x] as usize, images[k]);
            if map[y] == u32::MAX {
                if used.contains(fy) {
                    return None;
                }
                map[y] = fy as u32;
                used.insert(fy);
                queue.push(y);
            } else if map[y] as usize != fy {
                return None;
            }
        }
    }
    Some(map)
}

fn order_profile(g: &Group) -> Vec<u32> {
    let mut v = g.element_orders().to_vec();
    v.sort_unstable();
    v
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::perm::Permutation;

    fn cyc(n: usize) -> Group {
        let pts: Vec<usize> = (0..n).collect();
        Group::generate(n, &[Permutation::from_cycles(n, &[pts]).unwrap()]).unwrap()
    }

    #[test]
    fn c4_not_v4() {
        let c2 = cyc(2);
        let v4 = crate::group::direct_product(&c2, &c2).unwrap();
        assert!(!is_isomorphic(&cyc(4), &v4).unwrap());
        assert!(is_isomorphic(&v4, &v4.renamed("V")).unwrap());
    }

    #[test]
    fn c6_is_c2_times_c3() {
        let prod = crate::group::direct_product(&cyc(2), &cyc(3)).unwrap();
        let map = find_isomorphism(&cyc(6), &prod, &Limits::default())
            .unwrap()
            .unwrap();
        let c6 = cyc(6);
        for x in 0..6 {
            for y in 0..6 {
                assert_eq!(map[c6.mul(x, y)], prod.mul(map[x], map[y]));
            }
        }
    }

    #[test]
    fn cap_applies_only_to_equal_orders() {
        let limits = Limits {
            iso_order: 3,
            ..Limits::default()
        };
        assert!(!is_isomorphic_with(&cyc(4), &cyc(5), &limits).unwrap());
        assert!(matches!(
            is_isomorphic_with(&cyc(4), &cyc(4), &limits),
            Err(GroupError::SearchCapExceeded { cap: 3 })
        ));
    }
}
