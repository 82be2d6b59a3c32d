//! Fully enumerated finite permutation groups.
//!
//! A [`Group`] stores every element, sorted lexicographically by image array,
//! together with its Cayley table. Element 0 is always the identity. All
//! subgroup arithmetic runs on element indices through the table.

use std::collections::{HashMap, HashSet, VecDeque};
use std::fmt;
use std::sync::atomic::{AtomicU64, Ordering as AtomicOrdering};
use std::sync::{Arc, Mutex, OnceLock};

use fixedbitset::FixedBitSet;
use rayon::prelude::*;

use crate::error::{GroupError, Result};
use crate::lattice::SubgroupLattice;
use crate::perm::Permutation;
use crate::series::FactorInfo;
use crate::subgroup::Subgroup;
use crate::Limits;

static NEXT_GROUP_ID: AtomicU64 = AtomicU64::new(1);

#[derive(Copy, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct GroupId(u64);

impl GroupId {
    fn fresh() -> Self {
        GroupId(NEXT_GROUP_ID.fetch_add(1, AtomicOrdering::Relaxed))
    }
}

/// A finite group realized as a set of permutations of `{0, .., degree-1}`.
///
/// Cloning is cheap; the element data is shared.
#[derive(Clone)]
pub struct Group {
    inner: Arc<GroupData>,
}

struct GroupData {
    id: GroupId,
    name: Option<String>,
    degree: usize,
    generators: Vec<usize>,
    elements: Vec<Permutation>,
    table: Vec<u32>,
    inverse: Vec<u32>,
    caches: Caches,
}

/// Memoized derived data. None of it is observable except through timing.
#[derive(Default)]
pub(crate) struct Caches {
    pub(crate) index: OnceLock<HashMap<Permutation, u32>>,
    pub(crate) element_orders: OnceLock<Vec<u32>>,
    pub(crate) lattice: OnceLock<Arc<SubgroupLattice>>,
    pub(crate) normals: OnceLock<Arc<Vec<Subgroup>>>,
    pub(crate) factors: Mutex<HashMap<(Subgroup, Subgroup), Arc<FactorInfo>>>,
}

impl Group {
    /// Closure of `gens` under composition, with the default order cap.
    pub fn generate(degree: usize, gens: &[Permutation]) -> Result<Group> {
        Group::generate_with(degree, gens, None, &Limits::default())
    }

    pub fn generate_named(degree: usize, gens: &[Permutation], name: &str) -> Result<Group> {
        Group::generate_with(degree, gens, Some(name.to_string()), &Limits::default())
    }

    pub fn generate_with(
        degree: usize,
        gens: &[Permutation],
        name: Option<String>,
        limits: &Limits,
    ) -> Result<Group> {
        if degree == 0 {
            return Err(GroupError::DegreeMismatch {
                expected: 1,
                found: 0,
            });
        }
        for g in gens {
            if g.degree() != degree {
                return Err(GroupError::DegreeMismatch {
                    expected: degree,
                    found: g.degree(),
                });
            }
        }
        let identity = Permutation::identity(degree);
        let mut seen: HashSet<Permutation> = HashSet::new();
        seen.insert(identity.clone());
        let mut queue = VecDeque::from([identity]);
        while let Some(x) = queue.pop_front() {
            for g in gens {
                let y = x.then(g);
                if !seen.contains(&y) {
                    if seen.len() >= limits.max_order {
                        return Err(GroupError::OrderCapExceeded {
                            cap: limits.max_order,
                        });
                    }
                    seen.insert(y.clone());
                    queue.push_back(y);
                }
            }
        }
        let mut elements: Vec<Permutation> = seen.into_iter().collect();
        elements.sort();
        let index: HashMap<Permutation, u32> = elements
            .iter()
            .enumerate()
            .map(|(i, p)| (p.clone(), i as u32))
            .collect();
        let n = elements.len();
        let mut table = vec![0u32; n * n];
        table.par_chunks_mut(n).enumerate().for_each(|(i, row)| {
            for (j, slot) in row.iter_mut().enumerate() {
                *slot = index[&elements[i].then(&elements[j])];
            }
        });
        let mut generators: Vec<usize> = gens.iter().map(|g| index[g] as usize).collect();
        generators.retain(|&g| g != 0);
        dedup_keep_order(&mut generators);
        let caches = Caches::default();
        let _ = caches.index.set(index);
        Ok(Group::assemble(name, degree, generators, elements, table, caches))
    }

    /// Builds the group from an explicit Cayley table over abstract labels
    /// `0..n`, realized through its right regular representation. The table
    /// is checked for closure, identity, inverses and associativity.
    pub fn from_cayley_table(n: usize, table: &[usize], name: Option<&str>) -> Result<Group> {
        if n == 0 || table.len() != n * n {
            return Err(GroupError::InvalidAction(
                "Cayley table has the wrong size".into(),
            ));
        }
        if table.iter().any(|&x| x >= n) {
            return Err(GroupError::InvalidAction("Cayley table entry out of range".into()));
        }
        let identity = (0..n)
            .find(|&e| (0..n).all(|x| table[e * n + x] == x && table[x * n + e] == x))
            .ok_or_else(|| GroupError::InvalidAction("no identity".into()))?;
        for x in 0..n {
            if !(0..n).any(|y| table[x * n + y] == identity) {
                return Err(GroupError::InvalidAction(format!("element {x} has no inverse")));
            }
        }
        for a in 0..n {
            for b in 0..n {
                let ab = table[a * n + b];
                for c in 0..n {
                    if table[ab * n + c] != table[a * n + table[b * n + c]] {
                        return Err(GroupError::InvalidAction("table is not associative".into()));
                    }
                }
            }
        }
        let t: Vec<u32> = table.iter().map(|&x| x as u32).collect();
        let gens: Vec<usize> = (0..n).collect();
        let (g, _) = Group::regular_from_table(n, &t, &gens, name.map(str::to_string));
        Ok(g.with_small_generators())
    }

    /// Right regular representation of an abstract group given by `table`
    /// (row-major, `table[a*n+b] = a·b`). The caller guarantees the group
    /// axioms. Returns the group and the map abstract label → element index.
    pub(crate) fn regular_from_table(
        n: usize,
        table: &[u32],
        gens: &[usize],
        name: Option<String>,
    ) -> (Group, Vec<u32>) {
        // element x acts on the points 0..n by y ↦ y·x
        let perms: Vec<Permutation> = (0..n)
            .into_par_iter()
            .map(|x| {
                let images = (0..n).map(|y| table[y * n + x]).collect();
                Permutation::from_images(images).expect("Cayley table column is not a bijection")
            })
            .collect();
        let mut order: Vec<usize> = (0..n).collect();
        order.par_sort_by(|&a, &b| perms[a].cmp(&perms[b]));
        let mut pos = vec![0u32; n];
        for (sorted, &abstract_idx) in order.iter().enumerate() {
            pos[abstract_idx] = sorted as u32;
        }
        let mut sorted_table = vec![0u32; n * n];
        sorted_table
            .par_chunks_mut(n)
            .enumerate()
            .for_each(|(i, row)| {
                let a = order[i];
                for (j, slot) in row.iter_mut().enumerate() {
                    *slot = pos[table[a * n + order[j]] as usize];
                }
            });
        let mut slots: Vec<Option<Permutation>> = perms.into_iter().map(Some).collect();
        let elements: Vec<Permutation> = order
            .iter()
            .map(|&a| slots[a].take().expect("each label used once"))
            .collect();
        assert!(elements[0].is_identity());
        let mut generators: Vec<usize> = gens.iter().map(|&g| pos[g] as usize).collect();
        generators.retain(|&g| g != 0);
        dedup_keep_order(&mut generators);
        let g = Group::assemble(name, n, generators, elements, sorted_table, Caches::default());
        (g, pos)
    }

    fn assemble(
        name: Option<String>,
        degree: usize,
        generators: Vec<usize>,
        elements: Vec<Permutation>,
        table: Vec<u32>,
        caches: Caches,
    ) -> Group {
        let n = elements.len();
        let mut inverse = vec![0u32; n];
        for a in 0..n {
            let row = &table[a * n..(a + 1) * n];
            let b = row.iter().position(|&x| x == 0).expect("every element has an inverse");
            inverse[a] = b as u32;
        }
        Group {
            inner: Arc::new(GroupData {
                id: GroupId::fresh(),
                name,
                degree,
                generators,
                elements,
                table,
                inverse,
                caches,
            }),
        }
    }

    /// Same group under another name (and a fresh identity).
    pub fn renamed(&self, name: &str) -> Group {
        let d = &self.inner;
        Group::assemble(
            Some(name.to_string()),
            d.degree,
            d.generators.clone(),
            d.elements.clone(),
            d.table.clone(),
            Caches::default(),
        )
    }

    /// Replaces the generator list by a greedy small generating set.
    fn with_small_generators(self) -> Group {
        let whole = self.whole();
        let gens = self.small_generators(&whole);
        let d = &self.inner;
        Group::assemble(
            d.name.clone(),
            d.degree,
            gens,
            d.elements.clone(),
            d.table.clone(),
            Caches::default(),
        )
    }

    pub fn id(&self) -> GroupId {
        self.inner.id
    }

    pub fn name(&self) -> Option<&str> {
        self.inner.name.as_deref()
    }

    /// Name for reports; unnamed groups show their order.
    pub fn label(&self) -> String {
        match self.name() {
            Some(n) => n.to_string(),
            None => format!("<order {}>", self.order()),
        }
    }

    pub fn degree(&self) -> usize {
        self.inner.degree
    }

    pub fn order(&self) -> usize {
        self.inner.elements.len()
    }

    pub fn elements(&self) -> &[Permutation] {
        &self.inner.elements
    }

    pub fn element(&self, i: usize) -> &Permutation {
        &self.inner.elements[i]
    }

    /// Generator element indices (identity excluded).
    pub fn generator_indices(&self) -> &[usize] {
        &self.inner.generators
    }

    pub fn generators(&self) -> Vec<Permutation> {
        self.inner
            .generators
            .iter()
            .map(|&g| self.inner.elements[g].clone())
            .collect()
    }

    pub fn index_of(&self, p: &Permutation) -> Option<usize> {
        let index = self.inner.caches.index.get_or_init(|| {
            self.inner
                .elements
                .iter()
                .enumerate()
                .map(|(i, p)| (p.clone(), i as u32))
                .collect()
        });
        index.get(p).map(|&i| i as usize)
    }

    pub(crate) fn caches(&self) -> &Caches {
        &self.inner.caches
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.inner.table[a * self.order() + b] as usize
    }

    #[inline]
    pub fn inv(&self, a: usize) -> usize {
        self.inner.inverse[a] as usize
    }

    /// `g⁻¹ a g`.
    #[inline]
    pub fn conj(&self, a: usize, g: usize) -> usize {
        self.mul(self.mul(self.inv(g), a), g)
    }

    /// `a⁻¹ b⁻¹ a b`.
    #[inline]
    pub fn commutator(&self, a: usize, b: usize) -> usize {
        self.mul(self.mul(self.inv(a), self.inv(b)), self.mul(a, b))
    }

    pub fn power(&self, a: usize, k: usize) -> usize {
        let mut acc = 0;
        for _ in 0..k {
            acc = self.mul(acc, a);
        }
        acc
    }

    pub fn element_orders(&self) -> &[u32] {
        self.inner.caches.element_orders.get_or_init(|| {
            (0..self.order())
                .map(|a| {
                    let mut x = a;
                    let mut k = 1;
                    while x != 0 {
                        x = self.mul(x, a);
                        k += 1;
                    }
                    k
                })
                .collect()
        })
    }

    pub fn element_order(&self, a: usize) -> usize {
        self.element_orders()[a] as usize
    }

    pub fn is_abelian(&self) -> bool {
        let gens = self.generator_indices();
        gens.iter()
            .all(|&a| gens.iter().all(|&b| self.mul(a, b) == self.mul(b, a)))
    }

    /// Largest `k` with every element order dividing it.
    pub fn exponent(&self) -> usize {
        self.element_orders()
            .iter()
            .fold(1usize, |acc, &o| num_integer::lcm(acc, o as usize))
    }

    // ---- subgroups --------------------------------------------------------

    pub fn trivial_subgroup(&self) -> Subgroup {
        let mut mask = FixedBitSet::with_capacity(self.order());
        mask.insert(0);
        Subgroup::from_mask(self.id(), mask)
    }

    pub fn whole(&self) -> Subgroup {
        let mut mask = FixedBitSet::with_capacity(self.order());
        mask.insert_range(..);
        Subgroup::from_mask(self.id(), mask)
    }

    pub fn check_owns(&self, s: &Subgroup) -> Result<()> {
        if s.group != self.id() {
            return Err(GroupError::ForeignSubgroup);
        }
        Ok(())
    }

    /// Validates that `elements` is closed and returns it as a subgroup.
    pub fn subgroup_from_elements(&self, elements: &[usize]) -> Option<Subgroup> {
        let mut mask = FixedBitSet::with_capacity(self.order());
        for &e in elements {
            if e >= self.order() {
                return None;
            }
            mask.insert(e);
        }
        if !mask.contains(0) {
            return None;
        }
        for a in mask.ones() {
            for b in mask.ones() {
                if !mask.contains(self.mul(a, b)) {
                    return None;
                }
            }
        }
        Some(Subgroup::from_mask(self.id(), mask))
    }

    /// Subgroup generated by the given element indices.
    pub fn generate_subgroup(&self, gens: &[usize]) -> Subgroup {
        let mut current = self.trivial_subgroup();
        for &g in gens {
            if !current.contains(g) {
                current = self.extend(&current, g);
            }
        }
        current
    }

    pub fn cyclic_subgroup(&self, a: usize) -> Subgroup {
        let mut mask = FixedBitSet::with_capacity(self.order());
        let mut x = 0;
        loop {
            mask.insert(x);
            x = self.mul(x, a);
            if x == 0 {
                break;
            }
        }
        Subgroup::from_mask(self.id(), mask)
    }

    /// `⟨A, x⟩`, built as a union of right cosets of `A`.
    pub(crate) fn extend(&self, a: &Subgroup, x: usize) -> Subgroup {
        if a.contains(x) {
            return a.clone();
        }
        let a_elems: Vec<usize> = a.elements().collect();
        let mut mask = FixedBitSet::with_capacity(self.order());
        let mut list: Vec<usize> = Vec::with_capacity(a_elems.len() * 2);
        let push_coset = |r: usize, mask: &mut FixedBitSet, list: &mut Vec<usize>| {
            for &e in &a_elems {
                let w = self.mul(r, e);
                mask.insert(w);
                list.push(w);
            }
        };
        push_coset(0, &mut mask, &mut list);
        // right multiplication by A is covered by whole cosets; only `x`
        // has to be applied element by element
        let mut i = 0;
        while i < list.len() {
            let z = self.mul(list[i], x);
            i += 1;
            if !mask.contains(z) {
                push_coset(z, &mut mask, &mut list);
            }
        }
        Subgroup::from_mask(self.id(), mask)
    }

    /// Greedy generating set: repeatedly add the first element (by
    /// decreasing element order, then index) not yet covered.
    pub fn small_generators(&self, s: &Subgroup) -> Vec<usize> {
        let orders = self.element_orders();
        let mut candidates: Vec<usize> = s.elements().filter(|&x| x != 0).collect();
        candidates.sort_by(|&a, &b| orders[b].cmp(&orders[a]).then(a.cmp(&b)));
        let mut current = self.trivial_subgroup();
        let mut gens = Vec::new();
        for x in candidates {
            if current.order == s.order {
                break;
            }
            if !current.contains(x) {
                current = self.extend(&current, x);
                gens.push(x);
            }
        }
        gens
    }

    pub fn meet(&self, a: &Subgroup, b: &Subgroup) -> Result<Subgroup> {
        self.check_pair(a, b)?;
        let mut mask = a.mask.clone();
        mask.intersect_with(&b.mask);
        Ok(Subgroup::from_mask(self.id(), mask))
    }

    pub fn join(&self, a: &Subgroup, b: &Subgroup) -> Result<Subgroup> {
        self.check_pair(a, b)?;
        let (small, big) = if a.order <= b.order { (a, b) } else { (b, a) };
        let mut current = big.clone();
        for x in small.elements() {
            if !current.contains(x) {
                current = self.extend(&current, x);
            }
        }
        Ok(current)
    }

    fn check_pair(&self, a: &Subgroup, b: &Subgroup) -> Result<()> {
        if a.group != b.group {
            return Err(GroupError::ParentMismatch);
        }
        self.check_owns(a)
    }

    /// The complex `AB = {ab : a ∈ A, b ∈ B}` as an element mask.
    pub fn product_set(&self, a: &Subgroup, b: &Subgroup) -> Result<FixedBitSet> {
        self.check_owns(a)?;
        self.check_owns(b)?;
        let mut mask = FixedBitSet::with_capacity(self.order());
        for x in a.elements() {
            for y in b.elements() {
                mask.insert(self.mul(x, y));
            }
        }
        let inter = a.mask.intersection(&b.mask).count();
        assert_eq!(
            mask.count_ones(..) * inter,
            a.order * b.order,
            "product formula |AB||A∩B| = |A||B| violated"
        );
        Ok(mask)
    }

    /// `AB = BA`.
    pub fn permutes(&self, a: &Subgroup, b: &Subgroup) -> Result<bool> {
        if a.is_subgroup_of(b) || b.is_subgroup_of(a) {
            return Ok(true);
        }
        Ok(self.product_set(a, b)? == self.product_set(b, a)?)
    }

    pub fn conjugate(&self, a: &Subgroup, g: usize) -> Subgroup {
        let mut mask = FixedBitSet::with_capacity(self.order());
        for x in a.elements() {
            mask.insert(self.conj(x, g));
        }
        Subgroup::from_mask(self.id(), mask)
    }

    pub fn is_normal(&self, a: &Subgroup) -> bool {
        let gens = self.small_generators(a);
        self.generator_indices()
            .iter()
            .all(|&g| gens.iter().all(|&x| a.contains(self.conj(x, g))))
    }

    /// Smallest normal subgroup containing `a`.
    pub fn normal_closure(&self, a: &Subgroup) -> Result<Subgroup> {
        self.check_owns(a)?;
        let mut gens = self.small_generators(a);
        let mut current = a.clone();
        let mut i = 0;
        while i < gens.len() {
            let x = gens[i];
            i += 1;
            for &g in self.generator_indices() {
                let c = self.conj(x, g);
                if !current.contains(c) {
                    current = self.extend(&current, c);
                    gens.push(c);
                }
            }
        }
        Ok(current)
    }

    /// Largest normal subgroup contained in `a`: the intersection of all
    /// conjugates of `a`.
    pub fn core(&self, a: &Subgroup) -> Result<Subgroup> {
        self.check_owns(a)?;
        let mut mask = a.mask.clone();
        for g in 0..self.order() {
            if mask.count_ones(..) == 1 {
                break;
            }
            let conj = self.conjugate(a, g);
            mask.intersect_with(&conj.mask);
        }
        Ok(Subgroup::from_mask(self.id(), mask))
    }

    pub fn centralizer(&self, a: &Subgroup) -> Result<Subgroup> {
        self.check_owns(a)?;
        let gens = self.small_generators(a);
        let mut mask = FixedBitSet::with_capacity(self.order());
        for g in 0..self.order() {
            if gens.iter().all(|&x| self.mul(g, x) == self.mul(x, g)) {
                mask.insert(g);
            }
        }
        Ok(Subgroup::from_mask(self.id(), mask))
    }

    pub fn normalizer(&self, a: &Subgroup) -> Result<Subgroup> {
        self.check_owns(a)?;
        let gens = self.small_generators(a);
        let mut mask = FixedBitSet::with_capacity(self.order());
        for g in 0..self.order() {
            if gens.iter().all(|&x| a.contains(self.conj(x, g))) {
                mask.insert(g);
            }
        }
        Ok(Subgroup::from_mask(self.id(), mask))
    }

    pub fn center(&self) -> Subgroup {
        self.centralizer(&self.whole()).expect("own subgroup")
    }

    /// Subgroup generated by all commutators `[a, b]`, `a ∈ A`, `b ∈ B`.
    pub fn commutator_subgroup(&self, a: &Subgroup, b: &Subgroup) -> Result<Subgroup> {
        self.check_owns(a)?;
        self.check_owns(b)?;
        let mut current = self.trivial_subgroup();
        for x in a.elements() {
            for y in b.elements() {
                let c = self.commutator(x, y);
                if !current.contains(c) {
                    current = self.extend(&current, c);
                }
            }
        }
        Ok(current)
    }

    // ---- derived groups ---------------------------------------------------

    /// `G/N` realized on the right cosets of `N`, with the projection.
    pub fn quotient(&self, n: &Subgroup) -> Result<(Group, Morphism)> {
        self.check_owns(n)?;
        if !self.is_normal(n) {
            return Err(GroupError::NotNormal);
        }
        let order = self.order();
        let mut coset_of = vec![u32::MAX; order];
        let mut reps = Vec::with_capacity(order / n.order);
        let n_elems: Vec<usize> = n.elements().collect();
        for x in 0..order {
            if coset_of[x] != u32::MAX {
                continue;
            }
            let id = reps.len() as u32;
            reps.push(x);
            for &m in &n_elems {
                coset_of[self.mul(m, x)] = id;
            }
        }
        let m = reps.len();
        assert_eq!(m * n.order, order, "|G| = |N|·|G/N|");
        let mut table = vec![0u32; m * m];
        for i in 0..m {
            for j in 0..m {
                table[i * m + j] = coset_of[self.mul(reps[i], reps[j])];
            }
        }
        let gens: Vec<usize> = self
            .generator_indices()
            .iter()
            .map(|&g| coset_of[g] as usize)
            .collect();
        let (q, pos) = Group::regular_from_table(m, &table, &gens, None);
        let map = coset_of.iter().map(|&c| pos[c as usize]).collect();
        let proj = Morphism {
            source: self.id(),
            target: q.id(),
            map,
        };
        Ok((q, proj))
    }

    /// `H` as a group in its own right, with the inclusion into `self`.
    pub fn subgroup_as_group(&self, h: &Subgroup) -> Result<(Group, Morphism)> {
        self.check_owns(h)?;
        let elems: Vec<usize> = h.elements().collect();
        let mut local = vec![u32::MAX; self.order()];
        for (i, &e) in elems.iter().enumerate() {
            local[e] = i as u32;
        }
        let k = elems.len();
        let mut table = vec![0u32; k * k];
        for i in 0..k {
            for j in 0..k {
                table[i * k + j] = local[self.mul(elems[i], elems[j])];
            }
        }
        let generators: Vec<usize> = self
            .small_generators(h)
            .into_iter()
            .map(|g| local[g] as usize)
            .collect();
        let elements: Vec<Permutation> = elems.iter().map(|&e| self.element(e).clone()).collect();
        let g = Group::assemble(None, self.degree(), generators, elements, table, Caches::default());
        let incl = Morphism {
            source: g.id(),
            target: self.id(),
            map: elems.iter().map(|&e| e as u32).collect(),
        };
        Ok((g, incl))
    }
}

impl fmt::Debug for Group {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "Group({}, order {}, degree {})",
            self.label(),
            self.order(),
            self.degree()
        )
    }
}

impl PartialEq for Group {
    /// Equal as permutation sets.
    fn eq(&self, other: &Self) -> bool {
        self.degree() == other.degree() && self.elements() == other.elements()
    }
}

fn dedup_keep_order(v: &mut Vec<usize>) {
    let mut seen = HashSet::new();
    v.retain(|x| seen.insert(*x));
}

/// A homomorphism between two groups given by its table on element indices.
#[derive(Clone, Debug)]
pub struct Morphism {
    source: GroupId,
    target: GroupId,
    map: Vec<u32>,
}

impl Morphism {
    pub fn source_id(&self) -> GroupId {
        self.source
    }

    pub fn target_id(&self) -> GroupId {
        self.target
    }

    pub fn apply(&self, x: usize) -> usize {
        self.map[x] as usize
    }

    pub fn is_homomorphism(&self, source: &Group, target: &Group) -> bool {
        source.id() == self.source
            && target.id() == self.target
            && (0..source.order()).all(|x| {
                (0..source.order()).all(|y| {
                    self.apply(source.mul(x, y)) == target.mul(self.apply(x), self.apply(y))
                })
            })
    }

    pub fn is_surjective(&self, target: &Group) -> bool {
        let mut hit = FixedBitSet::with_capacity(target.order());
        for &y in &self.map {
            hit.insert(y as usize);
        }
        hit.is_full()
    }

    pub fn kernel(&self, source: &Group) -> Subgroup {
        let mut mask = FixedBitSet::with_capacity(source.order());
        for (x, &y) in self.map.iter().enumerate() {
            if y == 0 {
                mask.insert(x);
            }
        }
        Subgroup::from_mask(source.id(), mask)
    }

    pub fn image(&self, s: &Subgroup, target: &Group) -> Result<Subgroup> {
        if s.group != self.source {
            return Err(GroupError::ForeignSubgroup);
        }
        let mut mask = FixedBitSet::with_capacity(target.order());
        for x in s.elements() {
            mask.insert(self.apply(x));
        }
        Ok(Subgroup::from_mask(target.id(), mask))
    }

    pub fn preimage(&self, s: &Subgroup, source: &Group) -> Result<Subgroup> {
        if s.group != self.target {
            return Err(GroupError::ForeignSubgroup);
        }
        let mut mask = FixedBitSet::with_capacity(source.order());
        for (x, &y) in self.map.iter().enumerate() {
            if s.contains(y as usize) {
                mask.insert(x);
            }
        }
        Ok(Subgroup::from_mask(source.id(), mask))
    }
}

/// `A × B` acting on the disjoint union of the two point sets.
pub fn direct_product(a: &Group, b: &Group) -> Result<Group> {
    direct_product_with(a, b, &Limits::default())
}

pub fn direct_product_with(a: &Group, b: &Group, limits: &Limits) -> Result<Group> {
    if a.order() * b.order() > limits.max_order {
        return Err(GroupError::OrderCapExceeded {
            cap: limits.max_order,
        });
    }
    let (da, db) = (a.degree(), b.degree());
    let degree = da + db;
    let mut gens = Vec::new();
    for g in a.generators() {
        let mut images: Vec<u32> = g.images().to_vec();
        images.extend((da..degree).map(|x| x as u32));
        gens.push(Permutation::from_images(images)?);
    }
    for g in b.generators() {
        let mut images: Vec<u32> = (0..da as u32).collect();
        images.extend(g.images().iter().map(|&x| x + da as u32));
        gens.push(Permutation::from_images(images)?);
    }
    let name = match (a.name(), b.name()) {
        (Some(x), Some(y)) => Some(format!("{x}x{y}")),
        _ => None,
    };
    Group::generate_with(degree, &gens, name, limits)
}

/// Maps on `N`'s element indices, one per element of `H`: `maps[h][n]` is
/// the image of `n` under the automorphism attached to `h`. The action is a
/// left action: `maps[h1·h2] = maps[h1] ∘ maps[h2]`.
#[derive(Clone, Debug)]
pub struct Action {
    pub maps: Vec<Vec<usize>>,
}

impl Action {
    pub fn trivial(n: &Group, h: &Group) -> Action {
        Action {
            maps: vec![(0..n.order()).collect(); h.order()],
        }
    }

    /// Action of a cyclic group generated by `h_gen` in which `h_gen`
    /// sends each element of `N` to `auto(n)`.
    pub fn from_generator_image(
        n: &Group,
        h: &Group,
        h_gen: usize,
        auto: &[usize],
    ) -> Result<Action> {
        let mut maps: Vec<Option<Vec<usize>>> = vec![None; h.order()];
        let mut current: Vec<usize> = (0..n.order()).collect();
        let mut x = 0;
        loop {
            maps[x] = Some(current.clone());
            x = h.mul(x, h_gen);
            current = current.iter().map(|&m| auto[m]).collect();
            if x == 0 {
                break;
            }
        }
        if current.iter().enumerate().any(|(i, &m)| i != m) {
            return Err(GroupError::InvalidAction(
                "order of the automorphism does not divide the order of the generator".into(),
            ));
        }
        let maps = maps
            .into_iter()
            .collect::<Option<Vec<_>>>()
            .ok_or_else(|| GroupError::InvalidAction("H is not generated by the given element".into()))?;
        Ok(Action { maps })
    }
}

/// `N ⋊ H` with `(n1,h1)(n2,h2) = (n1·φ_{h1}(n2), h1h2)`, realized through
/// its right regular representation.
pub fn semidirect_product(n: &Group, h: &Group, action: &Action) -> Result<Group> {
    semidirect_product_with(n, h, action, &Limits::default())
}

pub fn semidirect_product_with(
    n: &Group,
    h: &Group,
    action: &Action,
    limits: &Limits,
) -> Result<Group> {
    let (nn, nh) = (n.order(), h.order());
    if nn * nh > limits.max_order {
        return Err(GroupError::OrderCapExceeded {
            cap: limits.max_order,
        });
    }
    verify_action(n, h, action)?;
    let total = nn * nh;
    let mut table = vec![0u32; total * total];
    table
        .par_chunks_mut(total)
        .enumerate()
        .for_each(|(x, row)| {
            let (n1, h1) = (x / nh, x % nh);
            let phi = &action.maps[h1];
            for (y, slot) in row.iter_mut().enumerate() {
                let (n2, h2) = (y / nh, y % nh);
                let nm = n.mul(n1, phi[n2]);
                let hm = h.mul(h1, h2);
                *slot = (nm * nh + hm) as u32;
            }
        });
    let mut gens: Vec<usize> = n.generator_indices().iter().map(|&g| g * nh).collect();
    gens.extend(h.generator_indices().iter().copied());
    let name = match (n.name(), h.name()) {
        (Some(x), Some(y)) => Some(format!("{x}:{y}")),
        _ => None,
    };
    let (g, _) = Group::regular_from_table(total, &table, &gens, name);
    Ok(g)
}

fn verify_action(n: &Group, h: &Group, action: &Action) -> Result<()> {
    let bad = |m: &str| Err(GroupError::InvalidAction(m.to_string()));
    if action.maps.len() != h.order() {
        return bad("one map per element of H is required");
    }
    for (hi, phi) in action.maps.iter().enumerate() {
        if phi.len() != n.order() || phi.iter().any(|&x| x >= n.order()) {
            return bad(&format!("map for element {hi} has the wrong shape"));
        }
        let mut seen = FixedBitSet::with_capacity(n.order());
        for &x in phi {
            seen.insert(x);
        }
        if !seen.is_full() {
            return bad(&format!("map for element {hi} is not bijective"));
        }
        for a in 0..n.order() {
            for b in 0..n.order() {
                if phi[n.mul(a, b)] != n.mul(phi[a], phi[b]) {
                    return bad(&format!("map for element {hi} is not an endomorphism"));
                }
            }
        }
    }
    if action.maps[0].iter().enumerate().any(|(i, &x)| i != x) {
        return bad("identity of H must act trivially");
    }
    for &g in h.generator_indices() {
        for y in 0..h.order() {
            let composed = &action.maps[h.mul(g, y)];
            let (pg, py) = (&action.maps[g], &action.maps[y]);
            if (0..n.order()).any(|m| composed[m] != pg[py[m]]) {
                return bad("action does not respect composition");
            }
        }
    }
    Ok(())
}
