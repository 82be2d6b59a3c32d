//! Registered group classes and the residual/radical operators.

use std::fmt;
use std::str::FromStr;

use crate::error::{GroupError, Result};
use crate::group::Group;
use crate::series::{chief_series_between, normal_subgroups, standard_series, SeriesKind};
use crate::subgroup::Subgroup;

#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum GroupClass {
    Abelian,
    Nilpotent,
    Supersoluble,
    Soluble,
}

/// Declared closure properties of a class. These quantify over all finite
/// groups and cannot be computed; the corpus tests spot-check them.
#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub struct ClassFlags {
    pub formation: bool,
    pub normally_hereditary: bool,
    pub saturated: bool,
    pub fitting: bool,
    pub contains_nilpotent: bool,
}

impl GroupClass {
    pub const ALL: [GroupClass; 4] = [
        GroupClass::Abelian,
        GroupClass::Nilpotent,
        GroupClass::Supersoluble,
        GroupClass::Soluble,
    ];

    pub fn index(self) -> usize {
        self as usize
    }

    pub fn name(self) -> &'static str {
        match self {
            GroupClass::Abelian => "abelian",
            GroupClass::Nilpotent => "nilpotent",
            GroupClass::Supersoluble => "supersoluble",
            GroupClass::Soluble => "soluble",
        }
    }

    pub fn flags(self) -> ClassFlags {
        let (formation, normally_hereditary, saturated, fitting, contains_nilpotent) = match self {
            GroupClass::Abelian => (true, true, false, false, false),
            GroupClass::Nilpotent => (true, true, true, true, true),
            GroupClass::Supersoluble => (true, true, true, false, true),
            GroupClass::Soluble => (true, true, true, true, true),
        };
        ClassFlags {
            formation,
            normally_hereditary,
            saturated,
            fitting,
            contains_nilpotent,
        }
    }
}

impl fmt::Display for GroupClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for GroupClass {
    type Err = GroupError;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "abelian" => Ok(GroupClass::Abelian),
            "nilpotent" => Ok(GroupClass::Nilpotent),
            "supersoluble" | "supersolvable" => Ok(GroupClass::Supersoluble),
            "soluble" | "solvable" => Ok(GroupClass::Soluble),
            _ => Err(GroupError::UnknownClass(s.to_string())),
        }
    }
}

pub fn is_in_class(g: &Group, class: GroupClass) -> bool {
    if g.order() == 1 {
        return true;
    }
    match class {
        GroupClass::Abelian => g.is_abelian(),
        GroupClass::Nilpotent => series_reaches_trivial(g, SeriesKind::LowerCentral),
        GroupClass::Soluble => series_reaches_trivial(g, SeriesKind::Derived),
        GroupClass::Supersoluble => {
            is_in_class(g, GroupClass::Soluble)
                && chief_series_between(g, &g.trivial_subgroup(), &g.whole())
                    .expect("1 ≤ G are normal")
                    .iter()
                    .all(|f| crate::lattice::is_prime(f.order()))
        }
    }
}

fn series_reaches_trivial(g: &Group, kind: SeriesKind) -> bool {
    standard_series(g, kind)
        .last()
        .is_some_and(Subgroup::is_trivial)
}

/// Whether the section `upper/lower` (with `lower` normal in `upper`), taken
/// as an abstract group, lies in `class`.
pub fn section_in_class(
    g: &Group,
    upper: &Subgroup,
    lower: &Subgroup,
    class: GroupClass,
) -> Result<bool> {
    if !lower.is_subgroup_of(upper) {
        return Err(GroupError::NotContained);
    }
    if upper.order() == lower.order() {
        return Ok(true);
    }
    let (hg, incl) = g.subgroup_as_group(upper)?;
    let k = incl.preimage(lower, &hg)?;
    let (q, _) = hg.quotient(&k)?;
    Ok(is_in_class(&q, class))
}

/// The `class`-residual: intersection of all normal `N` with `G/N` in the class.
pub fn residual(g: &Group, class: GroupClass) -> Result<Subgroup> {
    let whole = g.whole();
    let mut mask = whole.mask().clone();
    for n in normal_subgroups(g).iter() {
        if section_in_class(g, &whole, n, class)? {
            mask.intersect_with(n.mask());
        }
    }
    Ok(Subgroup::from_mask(g.id(), mask))
}

/// The `class`-radical: product of all normal `N` lying in the class.
pub fn radical(g: &Group, class: GroupClass) -> Result<Subgroup> {
    let one = g.trivial_subgroup();
    let mut acc = one.clone();
    for n in normal_subgroups(g).iter() {
        if section_in_class(g, n, &one, class)? {
            acc = g.join(&acc, n)?;
        }
    }
    Ok(acc)
}
