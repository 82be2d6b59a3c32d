//! Subnormality, permutability, T/PT/PST classification, power
//! automorphisms, Hall subgroups and the Sylow permutability condition.

use std::fmt;

use num_integer::gcd;

use crate::error::{GroupError, Result};
use crate::group::Group;
use crate::lattice::{is_modular_index, prime_divisors, sylow_subgroups, SubgroupLattice};
use crate::subgroup::Subgroup;

/// `A ⊴⊴ G`: the chain `H₀ = G`, `Hᵢ₊₁ = A^{Hᵢ}` reaches `A`.
pub fn is_subnormal(g: &Group, a: &Subgroup) -> Result<bool> {
    g.check_owns(a)?;
    let mut current = g.whole();
    loop {
        if current == *a {
            return Ok(true);
        }
        // normal closure of A inside the current term
        let (hg, incl) = g.subgroup_as_group(&current)?;
        let local = incl.preimage(a, &hg)?;
        let next = incl.image(&hg.normal_closure(&local)?, g)?;
        if next == current {
            return Ok(false);
        }
        current = next;
    }
}

/// Every Sylow subgroup of `g`, for every prime divisor of `|G|`.
pub fn all_sylow_subgroups(g: &Group) -> Result<Vec<Subgroup>> {
    let mut out = Vec::new();
    for p in prime_divisors(g.order()) {
        out.extend(sylow_subgroups(g, p)?);
    }
    Ok(out)
}

pub fn is_quasinormal(g: &Group, a: &Subgroup) -> Result<bool> {
    let lattice = SubgroupLattice::of(g)?;
    for h in lattice.members() {
        if !g.permutes(a, h)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Permutes with every Sylow subgroup (all conjugates, every prime).
pub fn is_s_permutable(g: &Group, a: &Subgroup) -> Result<bool> {
    for s in all_sylow_subgroups(g)? {
        if !g.permutes(a, &s)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Lattice-dependent bits are `None` when the lattice is out of reach.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PermutabilityProfile {
    pub subject: Subgroup,
    pub normal: bool,
    pub subnormal: bool,
    pub s_permutable: Option<bool>,
    pub quasinormal: Option<bool>,
    pub modular: Option<bool>,
}

pub fn permutability_profile(g: &Group, a: &Subgroup) -> Result<PermutabilityProfile> {
    g.check_owns(a)?;
    let normal = g.is_normal(a);
    let subnormal = is_subnormal(g, a)?;
    let undecided = |r: Result<bool>| match r {
        Ok(v) => Ok(Some(v)),
        Err(e) if e.is_cap() => Ok(None),
        Err(e) => Err(e),
    };
    let lattice = SubgroupLattice::of(g);
    let s_permutable = undecided(is_s_permutable(g, a))?;
    let quasinormal = undecided(is_quasinormal(g, a))?;
    let modular = match &lattice {
        Ok(l) => Some(is_modular_index(
            g,
            l,
            l.position(a).ok_or(GroupError::ForeignSubgroup)?,
        )),
        Err(e) if e.is_cap() => None,
        Err(e) => return Err(e.clone()),
    };
    let profile = PermutabilityProfile {
        subject: a.clone(),
        normal,
        subnormal,
        s_permutable,
        quasinormal,
        modular,
    };
    if normal {
        assert_ne!(profile.quasinormal, Some(false), "normal ⇒ quasinormal");
    }
    if profile.quasinormal == Some(true) {
        assert_ne!(profile.s_permutable, Some(false), "quasinormal ⇒ S-permutable");
        assert_ne!(profile.modular, Some(false), "quasinormal ⇒ modular");
    }
    Ok(profile)
}

/// Strongest of the T ⇒ PT ⇒ PST properties.
#[derive(Copy, Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum TClass {
    T,
    PT,
    PST,
    None,
}

impl TClass {
    pub fn is_pt(self) -> bool {
        matches!(self, TClass::T | TClass::PT)
    }

    pub fn is_pst(self) -> bool {
        self != TClass::None
    }
}

impl fmt::Display for TClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            TClass::T => "T",
            TClass::PT => "PT",
            TClass::PST => "PST",
            TClass::None => "NONE",
        })
    }
}

pub fn classify_t_pt_pst(g: &Group) -> Result<TClass> {
    let lattice = SubgroupLattice::of(g)?;
    let sylows = all_sylow_subgroups(g)?;
    let (mut t, mut pt, mut pst) = (true, true, true);
    for a in lattice.members() {
        if !is_subnormal(g, a)? {
            continue;
        }
        if g.is_normal(a) {
            continue;
        }
        t = false;
        if pt && !lattice.members().iter().all(|h| g.permutes(a, h).unwrap_or(false)) {
            pt = false;
        }
        if !sylows.iter().all(|s| g.permutes(a, s).unwrap_or(false)) {
            pst = false;
            break;
        }
    }
    Ok(if t {
        TClass::T
    } else if pt {
        TClass::PT
    } else if pst {
        TClass::PST
    } else {
        TClass::None
    })
}

/// Every `g ∈ G` maps each `d ∈ D` into `⟨d⟩` (modulo `M` when given), i.e.
/// conjugation induces power automorphisms on `D` (or `D/M`).
pub fn induces_power_automorphisms(
    g: &Group,
    d: &Subgroup,
    modulo: Option<&Subgroup>,
) -> Result<bool> {
    g.check_owns(d)?;
    if !g.is_normal(d) {
        return Err(GroupError::NotNormal);
    }
    if let Some(m) = modulo {
        g.check_owns(m)?;
        if !g.is_normal(m) {
            return Err(GroupError::NotNormal);
        }
        if !m.is_subgroup_of(d) {
            return Err(GroupError::NotContained);
        }
    }
    for x in d.elements() {
        let mut target = g.cyclic_subgroup(x);
        if let Some(m) = modulo {
            target = g.join(&target, m)?;
        }
        for y in 0..g.order() {
            if !target.contains(g.conj(x, y)) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

pub fn is_hall_in(g: &Group, d: &Subgroup) -> Result<bool> {
    g.check_owns(d)?;
    Ok(gcd(d.order(), g.order() / d.order()) == 1)
}

/// For every prime, any two subgroups of a Sylow subgroup permute. One
/// Sylow subgroup per prime is examined (they are all conjugate).
pub fn iwasawa_sylow_condition(g: &Group) -> Result<bool> {
    for p in prime_divisors(g.order()) {
        let sylow = sylow_subgroups(g, p)?.swap_remove(0);
        if !subgroups_pairwise_permute(g, &sylow)? {
            return Ok(false);
        }
    }
    Ok(true)
}

pub(crate) fn subgroups_pairwise_permute(g: &Group, s: &Subgroup) -> Result<bool> {
    let lattice = SubgroupLattice::of(g)?;
    let inside: Vec<&Subgroup> = lattice
        .members()
        .iter()
        .filter(|h| h.is_subgroup_of(s))
        .collect();
    for (i, a) in inside.iter().enumerate() {
        for b in &inside[i + 1..] {
            if !g.permutes(a, b)? {
                return Ok(false);
            }
        }
    }
    Ok(true)
}
