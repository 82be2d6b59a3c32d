//! The lattice of all subgroups of a group.

use std::collections::{HashMap, HashSet};
use std::sync::{Arc, OnceLock};

use fixedbitset::FixedBitSet;

use crate::error::{GroupError, Result};
use crate::group::{Group, GroupId};
use crate::subgroup::Subgroup;
use crate::Limits;

/// Every subgroup of a group, sorted canonically (by order, then by mask).
pub struct SubgroupLattice {
    parent: GroupId,
    members: Vec<Subgroup>,
    index: HashMap<FixedBitSet, usize>,
    /// `below[i]` holds `j` iff `members[j] ≤ members[i]`.
    below: Vec<FixedBitSet>,
    joins: OnceLock<Vec<u32>>,
}

impl SubgroupLattice {
    /// Lattice of `g`, computed once per group with the default caps.
    pub fn of(g: &Group) -> Result<Arc<SubgroupLattice>> {
        if let Some(l) = g.caches().lattice.get() {
            return Ok(l.clone());
        }
        let l = Arc::new(SubgroupLattice::enumerate_with(g, &Limits::default())?);
        Ok(g.caches().lattice.get_or_init(|| l).clone())
    }

    /// Cyclic extension: start from the trivial subgroup and keep joining
    /// found subgroups with cyclic subgroups of prime-power order until no
    /// new subgroup appears.
    pub fn enumerate_with(g: &Group, limits: &Limits) -> Result<SubgroupLattice> {
        if g.order() > limits.lattice_order {
            return Err(GroupError::OrderCapExceeded {
                cap: limits.lattice_order,
            });
        }
        let mut cyclic_gens: Vec<usize> = Vec::new();
        let mut seen_cyclic: HashSet<FixedBitSet> = HashSet::new();
        for x in 1..g.order() {
            if !is_prime_power(g.element_order(x)) {
                continue;
            }
            let c = g.cyclic_subgroup(x);
            if seen_cyclic.insert(c.mask.clone()) {
                cyclic_gens.push(x);
            }
        }
        let trivial = g.trivial_subgroup();
        let mut found: HashSet<FixedBitSet> = HashSet::from([trivial.mask.clone()]);
        let mut members = vec![trivial];
        let mut i = 0;
        while i < members.len() {
            let h = members[i].clone();
            i += 1;
            for &x in &cyclic_gens {
                if h.contains(x) {
                    continue;
                }
                let j = g.extend(&h, x);
                if found.insert(j.mask.clone()) {
                    if members.len() >= limits.max_subgroups {
                        return Err(GroupError::SubgroupCapExceeded {
                            cap: limits.max_subgroups,
                        });
                    }
                    members.push(j);
                }
            }
        }
        Ok(SubgroupLattice::from_members(g.id(), members))
    }

    pub(crate) fn from_members(parent: GroupId, mut members: Vec<Subgroup>) -> SubgroupLattice {
        members.sort();
        let index = members
            .iter()
            .enumerate()
            .map(|(i, s)| (s.mask.clone(), i))
            .collect();
        let n = members.len();
        let below = (0..n)
            .map(|i| {
                let mut b = FixedBitSet::with_capacity(n);
                for j in 0..=i {
                    if members[j].is_subgroup_of(&members[i]) {
                        b.insert(j);
                    }
                }
                b
            })
            .collect();
        SubgroupLattice {
            parent,
            members,
            index,
            below,
            joins: OnceLock::new(),
        }
    }

    pub fn parent_id(&self) -> GroupId {
        self.parent
    }

    pub fn members(&self) -> &[Subgroup] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn get(&self, i: usize) -> &Subgroup {
        &self.members[i]
    }

    pub fn position(&self, s: &Subgroup) -> Option<usize> {
        if s.group != self.parent {
            return None;
        }
        self.index.get(&s.mask).copied()
    }

    pub fn top(&self) -> usize {
        self.members.len() - 1
    }

    /// `members[j] ≤ members[i]`.
    pub fn le(&self, j: usize, i: usize) -> bool {
        self.below[i].contains(j)
    }

    pub fn meet_index(&self, i: usize, j: usize) -> usize {
        let mut m = self.members[i].mask.clone();
        m.intersect_with(&self.members[j].mask);
        self.index[&m]
    }

    pub fn join_index(&self, g: &Group, i: usize, j: usize) -> usize {
        let n = self.members.len();
        self.join_table(g)[i * n + j] as usize
    }

    fn join_table(&self, g: &Group) -> &[u32] {
        assert_eq!(g.id(), self.parent, "lattice used with a different group");
        self.joins.get_or_init(|| {
            let n = self.members.len();
            let mut t = vec![0u32; n * n];
            for i in 0..n {
                for j in i..n {
                    let k = if self.le(j, i) {
                        i
                    } else if self.le(i, j) {
                        j
                    } else {
                        let joined = g
                            .join(&self.members[i], &self.members[j])
                            .expect("members share the parent");
                        self.index[&joined.mask]
                    };
                    t[i * n + j] = k as u32;
                    t[j * n + i] = k as u32;
                }
            }
            t
        })
    }

    /// Covering pairs `(lower, upper)` of the containment order.
    pub fn hasse_edges(&self) -> Vec<(usize, usize)> {
        let n = self.members.len();
        let mut edges = Vec::new();
        for upper in 0..n {
            for lower in self.below[upper].ones() {
                if lower == upper {
                    continue;
                }
                let covered = self.below[upper]
                    .ones()
                    .filter(|&k| k != lower && k != upper)
                    .any(|k| self.le(lower, k));
                if !covered {
                    edges.push((lower, upper));
                }
            }
        }
        edges.sort_unstable();
        edges
    }

    /// Members that are normal in `g`.
    pub fn normal_members(&self, g: &Group) -> Vec<Subgroup> {
        self.members
            .iter()
            .filter(|s| g.is_normal(s))
            .cloned()
            .collect()
    }
}

pub(crate) fn is_prime_power(n: usize) -> bool {
    if n < 2 {
        return false;
    }
    let p = smallest_prime_factor(n);
    let mut m = n;
    while m.is_multiple_of(p) {
        m /= p;
    }
    m == 1
}

pub(crate) fn smallest_prime_factor(n: usize) -> usize {
    (2..=n).find(|&d| n.is_multiple_of(d)).unwrap_or(n)
}

pub fn is_prime(n: usize) -> bool {
    n >= 2 && smallest_prime_factor(n) == n
}

/// Distinct prime divisors in increasing order.
pub fn prime_divisors(mut n: usize) -> Vec<usize> {
    let mut out = Vec::new();
    let mut d = 2;
    while n > 1 {
        if n.is_multiple_of(d) {
            out.push(d);
            while n.is_multiple_of(d) {
                n /= d;
            }
        }
        d += 1;
    }
    out
}

/// `meet = A ∩ B`, `join = ⟨A, B⟩`.
pub fn meet_join(g: &Group, a: &Subgroup, b: &Subgroup) -> Result<(Subgroup, Subgroup)> {
    Ok((g.meet(a, b)?, g.join(a, b)?))
}

#[derive(Clone, Debug)]
pub struct Distinguished {
    pub normal: Vec<Subgroup>,
    pub minimal_normal: Vec<Subgroup>,
    pub maximal: Vec<Subgroup>,
    pub frattini: Subgroup,
}

pub fn distinguished_subgroups(g: &Group) -> Result<Distinguished> {
    let lattice = SubgroupLattice::of(g)?;
    let normal = lattice.normal_members(g);
    let minimal_normal: Vec<Subgroup> = normal
        .iter()
        .filter(|n| !n.is_trivial())
        .filter(|n| {
            !normal
                .iter()
                .any(|m| !m.is_trivial() && m.is_proper_subgroup_of(n))
        })
        .cloned()
        .collect();
    let top = lattice.top();
    let maximal: Vec<Subgroup> = (0..top)
        .filter(|&i| !(0..top).any(|j| j != i && lattice.le(i, j)))
        .map(|i| lattice.get(i).clone())
        .collect();
    let mut mask = g.whole().mask;
    for m in &maximal {
        mask.intersect_with(&m.mask);
    }
    let frattini = Subgroup::from_mask(g.id(), mask);
    Ok(Distinguished {
        normal,
        minimal_normal,
        maximal,
        frattini,
    })
}

/// Frattini subgroup of the subgroup `d`, as a subgroup of `g`.
pub fn frattini_of(g: &Group, d: &Subgroup) -> Result<Subgroup> {
    let (dg, incl) = g.subgroup_as_group(d)?;
    let phi = distinguished_subgroups(&dg)?.frattini;
    incl.image(&phi, g)
}

/// All Sylow `p`-subgroups, taken from the lattice.
pub fn sylow_subgroups(g: &Group, p: usize) -> Result<Vec<Subgroup>> {
    if !is_prime(p) {
        return Err(GroupError::NotPrime(p));
    }
    let mut part = 1;
    let mut n = g.order();
    while n.is_multiple_of(p) {
        part *= p;
        n /= p;
    }
    if part == 1 {
        return Ok(vec![g.trivial_subgroup()]);
    }
    let lattice = SubgroupLattice::of(g)?;
    let sylows: Vec<Subgroup> = lattice
        .members()
        .iter()
        .filter(|s| s.order() == part)
        .cloned()
        .collect();
    assert_eq!(sylows.len() % p, 1, "Sylow count must be 1 mod p");
    let first = &sylows[0];
    let conjugates: HashSet<FixedBitSet> = (0..g.order())
        .map(|x| g.conjugate(first, x).mask)
        .collect();
    assert_eq!(conjugates.len(), sylows.len(), "Sylow subgroups must be conjugate");
    Ok(sylows)
}

/// Kurosh modularity of `m` in the subgroup lattice: for all `X ≤ Z`,
/// `⟨X, M ∩ Z⟩ = ⟨X, M⟩ ∩ Z`, and for all `Y`, `Z ≥ M`,
/// `⟨M, Y ∩ Z⟩ = ⟨M, Y⟩ ∩ Z`.
pub fn is_modular_subgroup(g: &Group, m: &Subgroup) -> Result<bool> {
    g.check_owns(m)?;
    let lattice = SubgroupLattice::of(g)?;
    let mi = lattice.position(m).ok_or(GroupError::ForeignSubgroup)?;
    Ok(is_modular_index(g, &lattice, mi))
}

pub(crate) fn is_modular_index(g: &Group, lattice: &SubgroupLattice, m: usize) -> bool {
    let n = lattice.len();
    for z in 0..n {
        let mz = lattice.meet_index(m, z);
        for x in lattice.below[z].ones() {
            let lhs = lattice.join_index(g, x, mz);
            let rhs = lattice.meet_index(lattice.join_index(g, x, m), z);
            if lhs != rhs {
                return false;
            }
        }
        if lattice.le(m, z) {
            for y in 0..n {
                let lhs = lattice.join_index(g, m, lattice.meet_index(y, z));
                let rhs = lattice.meet_index(lattice.join_index(g, m, y), z);
                if lhs != rhs {
                    return false;
                }
            }
        }
    }
    true
}
