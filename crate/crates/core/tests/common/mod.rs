//! Brute-force reference computations over raw image arrays. Nothing here
//! goes through the library's Cayley tables, lattices or series code; only
//! the element list of a group is read.

#![allow(dead_code)]

use std::collections::{BTreeSet, HashMap, HashSet};
use std::sync::OnceLock;

use grouplat::Group;

pub type Set = BTreeSet<usize>;

pub struct Oracle {
    pub n: usize,
    mul: Vec<usize>,
    inv: Vec<usize>,
    subgroups: OnceLock<Vec<Set>>,
}

impl Oracle {
    pub fn new(g: &Group) -> Oracle {
        let perms: Vec<Vec<u32>> = g.elements().iter().map(|p| p.images().to_vec()).collect();
        let n = perms.len();
        let index: HashMap<&[u32], usize> =
            perms.iter().enumerate().map(|(i, p)| (p.as_slice(), i)).collect();
        let mut mul = vec![0; n * n];
        for a in 0..n {
            for b in 0..n {
                // a first, then b
                let c: Vec<u32> = perms[a].iter().map(|&x| perms[b][x as usize]).collect();
                mul[a * n + b] = index[c.as_slice()];
            }
        }
        let id = (0..n)
            .find(|&e| perms[e].iter().enumerate().all(|(i, &x)| i == x as usize))
            .expect("identity present");
        let inv = (0..n)
            .map(|a| (0..n).find(|&b| mul[a * n + b] == id).expect("inverse present"))
            .collect();
        Oracle {
            n,
            mul,
            inv,
            subgroups: OnceLock::new(),
        }
    }

    /// All subgroups, sorted by order then elements. Exponential in
    /// ⌊log₂ n⌋; keep to small groups.
    pub fn subgroups(&self) -> &[Set] {
        self.subgroups.get_or_init(|| self.enumerate_subgroups())
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.mul[a * self.n + b]
    }

    pub fn conj(&self, a: usize, x: usize) -> usize {
        self.mul(self.mul(self.inv[x], a), x)
    }

    pub fn comm(&self, a: usize, b: usize) -> usize {
        self.mul(self.mul(self.inv[a], self.inv[b]), self.mul(a, b))
    }

    pub fn whole(&self) -> Set {
        (0..self.n).collect()
    }

    pub fn identity(&self) -> usize {
        self.mul(0, self.inv[0])
    }

    pub fn closure(&self, gens: impl IntoIterator<Item = usize>) -> Set {
        let mut set: Set = [self.identity()].into_iter().collect();
        let gens: Vec<usize> = gens.into_iter().collect();
        let mut frontier: Vec<usize> = vec![self.identity()];
        while let Some(x) = frontier.pop() {
            for &g in &gens {
                let y = self.mul(x, g);
                if set.insert(y) {
                    frontier.push(y);
                }
            }
        }
        set
    }

    /// Every subgroup is generated by at most ⌊log₂ n⌋ elements, so closing
    /// all subsets of that size finds them all.
    fn enumerate_subgroups(&self) -> Vec<Set> {
        let k = (usize::BITS - 1 - self.n.leading_zeros()) as usize;
        let mut found: HashSet<Set> = HashSet::new();
        let mut stack: Vec<(usize, Vec<usize>)> = vec![(0, Vec::new())];
        while let Some((start, chosen)) = stack.pop() {
            found.insert(self.closure(chosen.iter().copied()));
            if chosen.len() == k {
                continue;
            }
            for x in start..self.n {
                let mut next = chosen.clone();
                next.push(x);
                stack.push((x + 1, next));
            }
        }
        let mut v: Vec<Set> = found.into_iter().collect();
        v.sort_by(|a, b| a.len().cmp(&b.len()).then(a.cmp(b)));
        v
    }

    pub fn is_normal(&self, a: &Set) -> bool {
        a.iter().all(|&x| (0..self.n).all(|g| a.contains(&self.conj(x, g))))
    }

    pub fn normals(&self) -> Vec<Set> {
        self.subgroups().iter().filter(|s| self.is_normal(s)).cloned().collect()
    }

    pub fn product(&self, a: &Set, b: &Set) -> Set {
        a.iter()
            .flat_map(|&x| b.iter().map(move |&y| (x, y)))
            .map(|(x, y)| self.mul(x, y))
            .collect()
    }

    pub fn permutes(&self, a: &Set, b: &Set) -> bool {
        self.product(a, b) == self.product(b, a)
    }

    pub fn normal_closure(&self, a: &Set) -> Set {
        let conjugates: Vec<usize> = a
            .iter()
            .flat_map(|&x| (0..self.n).map(move |g| (x, g)))
            .map(|(x, g)| self.conj(x, g))
            .collect();
        self.closure(conjugates)
    }

    pub fn core(&self, a: &Set) -> Set {
        a.iter()
            .copied()
            .filter(|&x| (0..self.n).all(|g| a.contains(&self.conj(x, self.inv[g]))))
            .collect()
    }

    /// Climb `Z_{i+1}/K = Z(G/Z_i)` starting at `K`.
    pub fn hypercenter_over(&self, k: &Set) -> Set {
        let mut z = k.clone();
        loop {
            let next: Set = (0..self.n)
                .filter(|&x| (0..self.n).all(|g| z.contains(&self.comm(x, g))))
                .collect();
            if next == z {
                return z;
            }
            z = next;
        }
    }

    /// `H/K` nilpotent: the lower central series of `H` relative to `K` reaches `K`.
    pub fn section_nilpotent(&self, h: &Set, k: &Set) -> bool {
        let mut term = h.clone();
        loop {
            let gens: Vec<usize> = term
                .iter()
                .flat_map(|&x| h.iter().map(move |&y| (x, y)))
                .map(|(x, y)| self.comm(x, y))
                .chain(k.iter().copied())
                .collect();
            let next = self.closure(gens);
            if next == *k {
                return true;
            }
            if next == term {
                return false;
            }
            term = next;
        }
    }

    pub fn in_l_nilpotent(&self, a: &Set) -> bool {
        self.section_nilpotent(&self.normal_closure(a), &self.core(a))
    }

    pub fn in_l_central(&self, a: &Set) -> bool {
        let closure = self.normal_closure(a);
        closure.is_subset(&self.hypercenter_over(&self.core(a)))
    }

    /// Subgroups through which `a` is reachable by normal inclusions.
    pub fn is_subnormal(&self, a: &Set) -> bool {
        let mut reached: Vec<&Set> = vec![a];
        let mut changed = true;
        while changed {
            changed = false;
            for h in self.subgroups() {
                if reached.contains(&h) {
                    continue;
                }
                let step = reached.iter().any(|k| {
                    k.is_subset(h) && k.iter().all(|&x| h.iter().all(|&y| k.contains(&self.conj(x, y))))
                });
                if step {
                    reached.push(h);
                    changed = true;
                }
            }
        }
        reached.iter().any(|s| s.len() == self.n)
    }

    pub fn sylows(&self) -> Vec<Set> {
        let mut out = Vec::new();
        let mut m = self.n;
        let mut p = 2;
        while m > 1 {
            if m.is_multiple_of(p) {
                let mut part = 1;
                while m.is_multiple_of(p) {
                    m /= p;
                    part *= p;
                }
                out.extend(self.subgroups().iter().filter(|s| s.len() == part).cloned());
            }
            p += 1;
        }
        out
    }

    /// "T", "PT", "PST" or "NONE", straight from the definitions.
    pub fn classify(&self) -> &'static str {
        let sylows = self.sylows();
        let sn: Vec<&Set> = self.subgroups().iter().filter(|a| self.is_subnormal(a)).collect();
        if sn.iter().all(|a| self.is_normal(a)) {
            "T"
        } else if sn.iter().all(|a| self.subgroups().iter().all(|h| self.permutes(a, h))) {
            "PT"
        } else if sn.iter().all(|a| sylows.iter().all(|s| self.permutes(a, s))) {
            "PST"
        } else {
            "NONE"
        }
    }

    pub fn is_soluble(&self) -> bool {
        let mut term = self.whole();
        loop {
            let gens: Vec<usize> = term
                .iter()
                .flat_map(|&x| term.iter().map(move |&y| (x, y)))
                .map(|(x, y)| self.comm(x, y))
                .collect();
            let next = self.closure(gens);
            if next.len() == 1 {
                return true;
            }
            if next == term {
                return false;
            }
            term = next;
        }
    }
}

pub fn set_of(s: &grouplat::Subgroup) -> Set {
    s.elements().collect()
}
