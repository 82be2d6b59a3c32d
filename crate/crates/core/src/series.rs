//! Normal series, chief factors and their centralizers, G-isomorphism of
//! chief factors, and the semidirect product attached to a chief factor.

use std::collections::HashSet;
use std::sync::{Arc, OnceLock};

use fixedbitset::FixedBitSet;

use crate::classes::{is_in_class, GroupClass};
use crate::error::{GroupError, Result};
use crate::group::{semidirect_product_with, Action, Group};
use crate::subgroup::Subgroup;
use crate::Limits;

#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum SeriesKind {
    Derived,
    LowerCentral,
    UpperCentral,
}

/// The requested series, computed until it stabilizes. Derived and lower
/// central series descend from `G`; the upper central series ascends from 1.
pub fn standard_series(g: &Group, kind: SeriesKind) -> Vec<Subgroup> {
    let mut series = Vec::new();
    match kind {
        SeriesKind::Derived | SeriesKind::LowerCentral => {
            let whole = g.whole();
            let mut current = whole.clone();
            loop {
                series.push(current.clone());
                let next = match kind {
                    SeriesKind::Derived => commutator_of_normals(g, &current, &current),
                    _ => commutator_of_normals(g, &current, &whole),
                };
                if next == current {
                    break;
                }
                current = next;
            }
        }
        SeriesKind::UpperCentral => {
            let mut current = g.trivial_subgroup();
            loop {
                series.push(current.clone());
                let next = centralizer_mod(g, &g.whole(), &current);
                if next == current {
                    break;
                }
                current = next;
            }
        }
    }
    series
}

/// `[A, B]` for normal subgroups: the normal closure of the commutators of
/// their generators.
pub(crate) fn commutator_of_normals(g: &Group, a: &Subgroup, b: &Subgroup) -> Subgroup {
    let ga = g.small_generators(a);
    let gb = g.small_generators(b);
    let comms: Vec<usize> = ga
        .iter()
        .flat_map(|&x| gb.iter().map(move |&y| (x, y)))
        .map(|(x, y)| g.commutator(x, y))
        .collect();
    let s = g.generate_subgroup(&comms);
    g.normal_closure(&s).expect("own subgroup")
}

/// `{x ∈ G : [x, h] ∈ K for all h ∈ H}` for `K` normal in `G`. With `H = G`
/// this is the preimage of `Z(G/K)`; with `K ≤ H` normal it is `C_G(H/K)`.
pub(crate) fn centralizer_mod(g: &Group, h: &Subgroup, k: &Subgroup) -> Subgroup {
    let gens = g.small_generators(h);
    let mut mask = FixedBitSet::with_capacity(g.order());
    for x in 0..g.order() {
        if gens.iter().all(|&y| k.contains(g.commutator(x, y))) {
            mask.insert(x);
        }
    }
    Subgroup::from_mask(g.id(), mask)
}

/// Terminal member of the upper central series.
pub fn hypercenter(g: &Group) -> Subgroup {
    let z = standard_series(g, SeriesKind::UpperCentral)
        .pop()
        .expect("series is never empty");
    debug_assert_eq!(centralizer_mod(g, &g.whole(), &z), z);
    z
}

/// Hypercenter computed independently of the upper central series: the
/// largest normal subgroup all of whose chief factors below it are central.
pub fn hypercenter_by_chief_factors(g: &Group) -> Subgroup {
    let qualifying: Vec<Subgroup> = normal_subgroups(g)
        .iter()
        .filter(|n| {
            chief_series_between(g, &g.trivial_subgroup(), n)
                .expect("normal subgroups")
                .iter()
                .all(|f| is_central_factor(g, f))
        })
        .cloned()
        .collect();
    let top = qualifying
        .iter()
        .max_by_key(|n| n.order())
        .expect("the trivial subgroup qualifies")
        .clone();
    assert!(
        qualifying.iter().all(|n| n.is_subgroup_of(&top)),
        "qualifying normal subgroups must have a unique maximum"
    );
    top
}

/// All normal subgroups, sorted canonically. Built from the normal closures
/// of conjugacy classes, closed under products; no subgroup lattice needed.
pub fn normal_subgroups(g: &Group) -> Arc<Vec<Subgroup>> {
    g.caches()
        .normals
        .get_or_init(|| Arc::new(compute_normal_subgroups(g)))
        .clone()
}

fn compute_normal_subgroups(g: &Group) -> Vec<Subgroup> {
    let mut visited = FixedBitSet::with_capacity(g.order());
    let mut class_closures: Vec<Subgroup> = Vec::new();
    let mut seen: HashSet<FixedBitSet> = HashSet::new();
    visited.insert(0);
    for x in 1..g.order() {
        if visited.contains(x) {
            continue;
        }
        let mut stack = vec![x];
        visited.insert(x);
        while let Some(y) = stack.pop() {
            for &s in g.generator_indices() {
                let c = g.conj(y, s);
                if !visited.contains(c) {
                    visited.insert(c);
                    stack.push(c);
                }
            }
        }
        let n = g
            .normal_closure(&g.cyclic_subgroup(x))
            .expect("own subgroup");
        if seen.insert(n.mask.clone()) {
            class_closures.push(n);
        }
    }
    let trivial = g.trivial_subgroup();
    seen.insert(trivial.mask.clone());
    let mut all = vec![trivial];
    all.extend(class_closures.iter().cloned());
    let mut i = 0;
    while i < all.len() {
        let a = all[i].clone();
        i += 1;
        for n in &class_closures {
            if n.is_subgroup_of(&a) {
                continue;
            }
            let prod = Subgroup::from_mask(g.id(), g.product_set(&a, n).expect("own subgroups"));
            if seen.insert(prod.mask.clone()) {
                all.push(prod);
            }
        }
    }
    all.sort();
    all
}

/// `T/L` with `L ≤ T` both normal in the parent.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct NormalSection {
    pub lower: Subgroup,
    pub upper: Subgroup,
}

impl NormalSection {
    pub fn new(g: &Group, lower: Subgroup, upper: Subgroup) -> Result<NormalSection> {
        g.check_owns(&lower)?;
        g.check_owns(&upper)?;
        if !g.is_normal(&lower) || !g.is_normal(&upper) {
            return Err(GroupError::NotNormal);
        }
        if !lower.is_subgroup_of(&upper) {
            return Err(GroupError::NotContained);
        }
        Ok(NormalSection { lower, upper })
    }

    pub fn order(&self) -> usize {
        self.upper.order() / self.lower.order()
    }
}

/// A chief factor `H/K` with its centralizer `C_G(H/K)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ChiefFactor {
    pub section: NormalSection,
    pub centralizer: Subgroup,
}

impl ChiefFactor {
    pub fn upper(&self) -> &Subgroup {
        &self.section.upper
    }

    pub fn lower(&self) -> &Subgroup {
        &self.section.lower
    }

    pub fn order(&self) -> usize {
        self.section.order()
    }

    pub fn is_abelian(&self) -> bool {
        self.section.upper.is_subgroup_of(&self.centralizer)
    }

    pub fn describe(&self) -> String {
        format!(
            "{}/{} (orders {}/{})",
            self.upper().describe(),
            self.lower().describe(),
            self.upper().order(),
            self.lower().order()
        )
    }
}

/// Builds the chief factor `upper/lower`, checking chiefness.
pub fn chief_factor(g: &Group, lower: &Subgroup, upper: &Subgroup) -> Result<ChiefFactor> {
    let section = NormalSection::new(g, lower.clone(), upper.clone())?;
    if lower == upper {
        return Err(GroupError::NotContained);
    }
    let normals = normal_subgroups(g);
    if normals
        .iter()
        .any(|n| lower.is_proper_subgroup_of(n) && n.is_proper_subgroup_of(upper))
    {
        return Err(GroupError::NotContained);
    }
    Ok(make_factor(g, section))
}

fn make_factor(g: &Group, section: NormalSection) -> ChiefFactor {
    let info = factor_info(g, &section.upper, &section.lower);
    ChiefFactor {
        section,
        centralizer: info.centralizer.clone(),
    }
}

/// Cached per-factor data.
pub(crate) struct FactorInfo {
    centralizer: Subgroup,
    classes: OnceLock<std::result::Result<[bool; 4], GroupError>>,
}

fn factor_info(g: &Group, upper: &Subgroup, lower: &Subgroup) -> Arc<FactorInfo> {
    let key = (upper.clone(), lower.clone());
    if let Some(info) = g.caches().factors.lock().expect("cache lock").get(&key) {
        return info.clone();
    }
    let info = Arc::new(FactorInfo {
        centralizer: centralizer_mod(g, upper, lower),
        classes: OnceLock::new(),
    });
    g.caches()
        .factors
        .lock()
        .expect("cache lock")
        .entry(key)
        .or_insert(info)
        .clone()
}

/// Which minimal candidate the greedy chief-series construction takes.
#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum TieBreak {
    Canonical,
    Reversed,
}

/// A chief series from `lower` up to `upper`, as its list of factors.
pub fn chief_series_between(
    g: &Group,
    lower: &Subgroup,
    upper: &Subgroup,
) -> Result<Vec<ChiefFactor>> {
    chief_series_between_with(g, lower, upper, TieBreak::Canonical)
}

pub fn chief_series_between_with(
    g: &Group,
    lower: &Subgroup,
    upper: &Subgroup,
    tie: TieBreak,
) -> Result<Vec<ChiefFactor>> {
    NormalSection::new(g, lower.clone(), upper.clone())?;
    let normals = normal_subgroups(g);
    let mut current = lower.clone();
    let mut factors = Vec::new();
    while current != *upper {
        let candidates: Vec<&Subgroup> = normals
            .iter()
            .filter(|n| current.is_proper_subgroup_of(n) && n.is_subgroup_of(upper))
            .collect();
        let mut minimal = candidates
            .iter()
            .filter(|n| !candidates.iter().any(|m| m.is_proper_subgroup_of(n)));
        let next = match tie {
            TieBreak::Canonical => minimal.next(),
            TieBreak::Reversed => minimal.next_back(),
        }
        .expect("upper is always a candidate")
        .to_owned()
        .clone();
        factors.push(make_factor(
            g,
            NormalSection {
                lower: current,
                upper: next.clone(),
            },
        ));
        current = next;
    }
    let product: usize = factors.iter().map(ChiefFactor::order).product();
    assert_eq!(product * lower.order(), upper.order());
    Ok(factors)
}

/// Every chief factor of `g`: all covering pairs of normal subgroups.
pub fn all_chief_factors(g: &Group) -> Vec<ChiefFactor> {
    let normals = normal_subgroups(g);
    let mut out = Vec::new();
    for upper in normals.iter() {
        for lower in normals.iter() {
            if !lower.is_proper_subgroup_of(upper) {
                continue;
            }
            let between = normals
                .iter()
                .any(|n| lower.is_proper_subgroup_of(n) && n.is_proper_subgroup_of(upper));
            if !between {
                out.push(make_factor(
                    g,
                    NormalSection {
                        lower: lower.clone(),
                        upper: upper.clone(),
                    },
                ));
            }
        }
    }
    out
}

/// `C_G(H/K) = G`, i.e. `H/K ≤ Z(G/K)`.
pub fn is_central_factor(g: &Group, f: &ChiefFactor) -> bool {
    f.centralizer.order() == g.order()
}

/// Cosets of `K` inside `H`, for arithmetic in the section `H/K` of `G`.
struct SectionCosets {
    reps: Vec<usize>,
    coset_of: Vec<u32>,
}

impl SectionCosets {
    fn new(g: &Group, upper: &Subgroup, lower: &Subgroup) -> SectionCosets {
        let mut coset_of = vec![u32::MAX; g.order()];
        let mut reps = Vec::new();
        let k: Vec<usize> = lower.elements().collect();
        for x in upper.elements() {
            if coset_of[x] != u32::MAX {
                continue;
            }
            let id = reps.len() as u32;
            reps.push(x);
            for &m in &k {
                coset_of[g.mul(m, x)] = id;
            }
        }
        SectionCosets { reps, coset_of }
    }

    fn len(&self) -> usize {
        self.reps.len()
    }

    fn mul(&self, g: &Group, a: usize, b: usize) -> usize {
        self.coset_of[g.mul(self.reps[a], self.reps[b])] as usize
    }

    /// `(aK)^x`.
    fn conj(&self, g: &Group, a: usize, x: usize) -> usize {
        self.coset_of[g.conj(self.reps[a], x)] as usize
    }
}

pub fn g_isomorphic(g: &Group, f1: &ChiefFactor, f2: &ChiefFactor) -> Result<bool> {
    g_isomorphic_with(g, f1, f2, &Limits::default())
}

/// Whether the chief factors are isomorphic through a map commuting with
/// conjugation by `G`.
///
/// A chief factor is generated by the `G`-conjugates of any nontrivial
/// element `v`, so a `G`-isomorphism is fixed by the image `w` of `v`. Every
/// candidate `w` is tried and the induced map checked.
pub fn g_isomorphic_with(
    g: &Group,
    f1: &ChiefFactor,
    f2: &ChiefFactor,
    limits: &Limits,
) -> Result<bool> {
    g.check_owns(f1.upper())?;
    g.check_owns(f2.upper())?;
    if f1.order() != f2.order() {
        return Ok(false);
    }
    if f1.order() > limits.g_iso_order {
        return Err(GroupError::SearchCapExceeded {
            cap: limits.g_iso_order,
        });
    }
    let s1 = SectionCosets::new(g, f1.upper(), f1.lower());
    let s2 = SectionCosets::new(g, f2.upper(), f2.lower());
    let n = s1.len();
    let v = 1;
    // x ↦ v^x for every x ∈ G; the orbit of v generates the factor
    let v_conj: Vec<usize> = (0..g.order()).map(|x| s1.conj(g, v, x)).collect();
    'candidate: for w in 1..s2.len() {
        // G-equivariance on the orbit of v: f(v^x) = w^x
        let mut on_orbit = vec![usize::MAX; n];
        for x in 0..g.order() {
            let img = s2.conj(g, w, x);
            let slot = &mut on_orbit[v_conj[x]];
            if *slot == usize::MAX {
                *slot = img;
            } else if *slot != img {
                continue 'candidate;
            }
        }
        let orbit: Vec<usize> = (0..n).filter(|&o| on_orbit[o] != usize::MAX).collect();
        let mut map = vec![usize::MAX; n];
        let mut used = FixedBitSet::with_capacity(n);
        map[0] = 0;
        used.insert(0);
        let mut queue = vec![0usize];
        let mut i = 0;
        while i < queue.len() {
            let a = queue[i];
            i += 1;
            for &o in &orbit {
                let b = s1.mul(g, a, o);
                let fb = s2.mul(g, map[a], on_orbit[o]);
                if map[b] == usize::MAX {
                    if used.contains(fb) {
                        continue 'candidate;
                    }
                    map[b] = fb;
                    used.insert(fb);
                    queue.push(b);
                } else if map[b] != fb {
                    continue 'candidate;
                }
            }
        }
        if queue.len() == n {
            return Ok(true);
        }
    }
    Ok(false)
}

pub fn factor_semidirect(g: &Group, f: &ChiefFactor) -> Result<Group> {
    factor_semidirect_with(g, f, &Limits::default())
}

/// `(H/K) ⋊ (G/C_G(H/K))`, with `gC` acting on `H/K` by `hK ↦ (g h g⁻¹)K`.
pub fn factor_semidirect_with(g: &Group, f: &ChiefFactor, limits: &Limits) -> Result<Group> {
    g.check_owns(f.upper())?;
    let c = &f.centralizer;
    let top_order = g.order() / c.order();
    if f.order() * top_order > limits.max_order {
        return Err(GroupError::OrderCapExceeded {
            cap: limits.max_order,
        });
    }
    let (hg, incl) = g.subgroup_as_group(f.upper())?;
    let k_local = incl.preimage(f.lower(), &hg)?;
    let (factor, proj_h) = hg.quotient(&k_local)?;
    let (top, proj_g) = g.quotient(c)?;

    let mut local = vec![usize::MAX; g.order()];
    for i in 0..hg.order() {
        local[incl.apply(i)] = i;
    }
    let mut factor_rep = vec![usize::MAX; factor.order()];
    for i in 0..hg.order() {
        let q = proj_h.apply(i);
        if factor_rep[q] == usize::MAX {
            factor_rep[q] = incl.apply(i);
        }
    }
    let mut top_rep = vec![usize::MAX; top.order()];
    for x in 0..g.order() {
        let q = proj_g.apply(x);
        if top_rep[q] == usize::MAX {
            top_rep[q] = x;
        }
    }
    let maps: Vec<Vec<usize>> = top_rep
        .iter()
        .map(|&x| {
            let x_inv = g.inv(x);
            factor_rep
                .iter()
                .map(|&h| proj_h.apply(local[g.conj(h, x_inv)]))
                .collect()
        })
        .collect();
    for (q, m) in maps.iter().enumerate().skip(1) {
        assert!(
            m.iter().enumerate().any(|(i, &y)| i != y),
            "G/C_G(H/K) must act faithfully (coset {q} acts trivially)"
        );
    }
    semidirect_product_with(&factor, &top, &Action { maps }, limits)
}

pub fn is_f_central(g: &Group, f: &ChiefFactor, class: GroupClass) -> Result<bool> {
    let info = factor_info(g, f.upper(), f.lower());
    let memberships = info.classes.get_or_init(|| {
        let prod = factor_semidirect(g, f)?;
        Ok(GroupClass::ALL.map(|c| is_in_class(&prod, c)))
    });
    match memberships {
        Ok(m) => Ok(m[class.index()]),
        Err(e) => Err(e.clone()),
    }
}
