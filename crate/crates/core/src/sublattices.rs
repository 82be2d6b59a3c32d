//! Chief-factor predicates `Δ`, `Z_Δ` containment, and the subgroup sets
//! `L_F(G)` and `L_Δ(G)`.

use std::collections::{HashMap, HashSet};
use std::fmt;
use std::str::FromStr;

use fixedbitset::FixedBitSet;

use crate::classes::{section_in_class, GroupClass};
use crate::error::{GroupError, Result};
use crate::group::Group;
use crate::lattice::SubgroupLattice;
use crate::series::{chief_series_between, is_central_factor, is_f_central, ChiefFactor, NormalSection};
use crate::subgroup::Subgroup;

/// A predicate on chief factors. All built-ins give equal verdicts on
/// `G`-isomorphic chief factors.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash)]
pub enum Delta {
    /// `H/K ≤ Z(G/K)`.
    Central,
    /// `(H/K) ⋊ (G/C_G(H/K))` lies in the class.
    FCentral(GroupClass),
    /// `H/K` itself lies in the class.
    FMember(GroupClass),
}

impl Delta {
    /// The predicates every sublattice check runs over.
    pub fn builtins() -> Vec<Delta> {
        let mut v = vec![Delta::Central];
        v.extend(GroupClass::ALL.iter().map(|&c| Delta::FCentral(c)));
        v
    }

    pub fn holds(&self, g: &Group, f: &ChiefFactor) -> Result<bool> {
        match *self {
            Delta::Central => Ok(is_central_factor(g, f)),
            Delta::FCentral(c) => is_f_central(g, f, c),
            Delta::FMember(c) => section_in_class(g, f.upper(), f.lower(), c),
        }
    }
}

impl fmt::Display for Delta {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Delta::Central => write!(f, "central"),
            Delta::FCentral(c) => write!(f, "f-central:{c}"),
            Delta::FMember(c) => write!(f, "member:{c}"),
        }
    }
}

impl FromStr for Delta {
    type Err = GroupError;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.eq_ignore_ascii_case("central") {
            return Ok(Delta::Central);
        }
        if let Some(c) = s.strip_prefix("f-central:") {
            return Ok(Delta::FCentral(c.parse()?));
        }
        if let Some(c) = s.strip_prefix("member:") {
            return Ok(Delta::FMember(c.parse()?));
        }
        Err(GroupError::UnknownClass(s.to_string()))
    }
}

/// `T/L ≤ Z_Δ(G)`: `L = T`, or every chief factor between them satisfies `Δ`.
pub fn z_delta_contains(g: &Group, section: &NormalSection, delta: Delta) -> Result<bool> {
    z_delta_between(g, &section.lower, &section.upper, delta)
}

pub fn z_delta_between(g: &Group, lower: &Subgroup, upper: &Subgroup, delta: Delta) -> Result<bool> {
    if lower == upper {
        NormalSection::new(g, lower.clone(), upper.clone())?;
        return Ok(true);
    }
    for f in chief_series_between(g, lower, upper)? {
        if !delta.holds(g, &f)? {
            return Ok(false);
        }
    }
    Ok(true)
}

#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum LatticeSpec {
    /// `{A : A^G/A_G ∈ F}`.
    ClassQuotient(GroupClass),
    /// `{A : A^G/A_G ≤ Z_Δ(G)}`.
    DeltaHyper(Delta),
}

/// Membership flag for every member of the subgroup lattice, in lattice order.
pub fn membership(g: &Group, spec: LatticeSpec) -> Result<Vec<bool>> {
    let lattice = SubgroupLattice::of(g)?;
    let mut memo: HashMap<(FixedBitSet, FixedBitSet), bool> = HashMap::new();
    let mut out = Vec::with_capacity(lattice.len());
    for a in lattice.members() {
        let closure = g.normal_closure(a)?;
        let core = g.core(a)?;
        let key = (closure.mask().clone(), core.mask().clone());
        let verdict = match memo.get(&key) {
            Some(&v) => v,
            None => {
                let v = match spec {
                    LatticeSpec::ClassQuotient(c) => section_in_class(g, &closure, &core, c)?,
                    LatticeSpec::DeltaHyper(d) => z_delta_between(g, &core, &closure, d)?,
                };
                memo.insert(key, v);
                v
            }
        };
        out.push(verdict);
    }
    Ok(out)
}

pub fn lattice_members(g: &Group, spec: LatticeSpec) -> Result<Vec<Subgroup>> {
    let lattice = SubgroupLattice::of(g)?;
    let flags = membership(g, spec)?;
    let members: Vec<Subgroup> = lattice
        .members()
        .iter()
        .zip(flags)
        .filter(|(_, f)| *f)
        .map(|(s, _)| s.clone())
        .collect();
    assert!(members.last() == Some(&g.whole()), "G always belongs");
    Ok(members)
}

#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum ClosureMode {
    Meet,
    Join,
    Both,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Closure {
    Closed,
    /// `a op b` is missing from the set.
    Counterexample {
        a: Subgroup,
        b: Subgroup,
        join: bool,
        result: Subgroup,
    },
}

impl Closure {
    pub fn is_closed(&self) -> bool {
        matches!(self, Closure::Closed)
    }
}

pub fn is_closed_sublattice(g: &Group, set: &[Subgroup], mode: ClosureMode) -> Result<Closure> {
    for s in set {
        g.check_owns(s)?;
    }
    let masks: HashSet<&FixedBitSet> = set.iter().map(Subgroup::mask).collect();
    for (i, a) in set.iter().enumerate() {
        for b in &set[i + 1..] {
            if mode != ClosureMode::Join {
                let m = g.meet(a, b)?;
                if !masks.contains(m.mask()) {
                    return Ok(Closure::Counterexample {
                        a: a.clone(),
                        b: b.clone(),
                        join: false,
                        result: m,
                    });
                }
            }
            if mode != ClosureMode::Meet {
                let j = g.join(a, b)?;
                if !masks.contains(j.mask()) {
                    return Ok(Closure::Counterexample {
                        a: a.clone(),
                        b: b.clone(),
                        join: true,
                        result: j,
                    });
                }
            }
        }
    }
    Ok(Closure::Closed)
}

/// Subgroups on which `A^G/A_G ∈ F` and "every chief factor between `A_G`
/// and `A^G` lies in `F`" disagree.
pub fn class_lattice_divergence(g: &Group, class: GroupClass) -> Result<Vec<Subgroup>> {
    let lattice = SubgroupLattice::of(g)?;
    let quotient = membership(g, LatticeSpec::ClassQuotient(class))?;
    let factors = membership(g, LatticeSpec::DeltaHyper(Delta::FMember(class)))?;
    Ok(lattice
        .members()
        .iter()
        .zip(quotient.iter().zip(&factors))
        .filter(|(_, (a, b))| a != b)
        .map(|(s, _)| s.clone())
        .collect())
}
