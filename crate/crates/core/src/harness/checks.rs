//! The catalog of lattice-theoretic claims, each an executable check over a
//! single group.

use std::collections::{HashMap, HashSet};
use std::fmt;
use std::str::FromStr;

use fixedbitset::FixedBitSet;
use rayon::prelude::*;

use crate::classes::{is_in_class, residual, section_in_class, GroupClass};
use crate::error::{GroupError, Result};
use crate::group::Group;
use crate::iso::is_isomorphic;
use crate::lattice::{frattini_of, is_modular_index, is_prime, SubgroupLattice};
use crate::permutability::{
    classify_t_pt_pst, induces_power_automorphisms, is_hall_in, is_quasinormal, is_subnormal,
    iwasawa_sylow_condition,
};
use crate::series::{
    all_chief_factors, chief_factor, chief_series_between, factor_semidirect, g_isomorphic,
    hypercenter, is_f_central, normal_subgroups, ChiefFactor,
};
use crate::subgroup::Subgroup;
use crate::sublattices::{
    is_closed_sublattice, lattice_members, membership, z_delta_between, Closure, ClosureMode,
    Delta, LatticeSpec,
};

#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum CheckId {
    Thm11i,
    Thm11ii,
    Thm11iii,
    Cor12,
    Cor13,
    Thm14i,
    Thm14ii,
    Thm15,
    Cor16,
    Cor17,
    Cor18,
    Lem21,
    Lem22,
    Rem31,
    QnHyp,
}

impl CheckId {
    pub const ALL: [CheckId; 15] = [
        CheckId::Thm11i,
        CheckId::Thm11ii,
        CheckId::Thm11iii,
        CheckId::Cor12,
        CheckId::Cor13,
        CheckId::Thm14i,
        CheckId::Thm14ii,
        CheckId::Thm15,
        CheckId::Cor16,
        CheckId::Cor17,
        CheckId::Cor18,
        CheckId::Lem21,
        CheckId::Lem22,
        CheckId::Rem31,
        CheckId::QnHyp,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            CheckId::Thm11i => "THM-1.1i",
            CheckId::Thm11ii => "THM-1.1ii",
            CheckId::Thm11iii => "THM-1.1iii",
            CheckId::Cor12 => "COR-1.2",
            CheckId::Cor13 => "COR-1.3",
            CheckId::Thm14i => "THM-1.4i",
            CheckId::Thm14ii => "THM-1.4ii",
            CheckId::Thm15 => "THM-1.5",
            CheckId::Cor16 => "COR-1.6",
            CheckId::Cor17 => "COR-1.7",
            CheckId::Cor18 => "COR-1.8",
            CheckId::Lem21 => "LEM-2.1",
            CheckId::Lem22 => "LEM-2.2",
            CheckId::Rem31 => "REM-3.1",
            CheckId::QnHyp => "QN-HYP",
        }
    }

    /// The claim being checked, in words.
    pub fn statement(self) -> &'static str {
        match self {
            CheckId::Thm11i => "L_Delta(G) is closed under meet and join for every G-closed Delta",
            CheckId::Thm11ii => "L_F(G) is meet-closed for a normally hereditary formation F",
            CheckId::Thm11iii => "L_F(G) is meet- and join-closed for a Fitting formation F",
            CheckId::Cor12 => {
                "for modular A, B every chief factor between (A^B)_G and (A^B)^G is cyclic"
            }
            CheckId::Cor13 => "for quasinormal A, B: (A^B)^G/(A^B)_G lies in the hypercenter mod (A^B)_G",
            CheckId::Thm14i => {
                "D = G^F soluble and L_F = L_Delta(F-central) imply D abelian odd-order Hall, \
                 power automorphisms on D/Phi(D), cyclic chief factors below D"
            }
            CheckId::Thm14ii => {
                "G soluble and L_N = L_Delta(central) imply power automorphisms on G^N"
            }
            CheckId::Thm15 => "G soluble: G is PST iff L_N = L_Delta(central)",
            CheckId::Cor16 => {
                "G soluble and A/A_G in the hypercenter mod A_G for all subnormal A imply PST"
            }
            CheckId::Cor17 => {
                "G soluble PT has a normal abelian odd-order Hall D with G/D nilpotent \
                 and power automorphisms on D"
            }
            CheckId::Cor18 => {
                "G soluble: G is PT iff L_N = L_Delta(central) and subgroups of each Sylow permute"
            }
            CheckId::Lem21 => {
                "factor semidirect products survive quotients below K and G-isomorphism; \
                 G-isomorphic chief factors share centralizers"
            }
            CheckId::Lem22 => "closure identities for Z_Delta on normal sections",
            CheckId::Rem31 => {
                "G in F makes every chief factor F-central; the converse for saturated F"
            }
            CheckId::QnHyp => "quasinormal A: A^G/A_G lies in the hypercenter mod A_G",
        }
    }

    fn takes_class(self) -> bool {
        matches!(
            self,
            CheckId::Thm11ii | CheckId::Thm11iii | CheckId::Thm14i | CheckId::Rem31
        )
    }

    fn takes_delta(self) -> bool {
        matches!(self, CheckId::Thm11i | CheckId::Lem22)
    }
}

impl fmt::Display for CheckId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for CheckId {
    type Err = GroupError;

    fn from_str(s: &str) -> Result<Self> {
        CheckId::ALL
            .into_iter()
            .find(|c| c.as_str().eq_ignore_ascii_case(s.trim()))
            .ok_or_else(|| GroupError::UnknownCheck(s.trim().to_string()))
    }
}

#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum Selector {
    Class(GroupClass),
    Delta(Delta),
}

/// A check id, optionally restricted to one class or one `Δ`.
#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub struct Check {
    pub id: CheckId,
    pub selector: Option<Selector>,
}

impl Check {
    pub fn all() -> Vec<Check> {
        CheckId::ALL.into_iter().map(Check::from).collect()
    }
}

impl From<CheckId> for Check {
    fn from(id: CheckId) -> Check {
        Check { id, selector: None }
    }
}

impl fmt::Display for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.selector {
            None => write!(f, "{}", self.id),
            Some(Selector::Class(c)) => write!(f, "{}[{c}]", self.id),
            Some(Selector::Delta(d)) => write!(f, "{}[{d}]", self.id),
        }
    }
}

/// `ID` or `ID[selector]`, e.g. `THM-1.1ii[nilpotent]`, `LEM-2.2[central]`.
impl FromStr for Check {
    type Err = GroupError;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let Some((head, rest)) = s.split_once('[') else {
            return Ok(Check::from(s.parse::<CheckId>()?));
        };
        let id: CheckId = head.parse()?;
        let inner = rest
            .strip_suffix(']')
            .ok_or_else(|| GroupError::UnknownCheck(s.to_string()))?;
        let selector = if id.takes_class() {
            Selector::Class(inner.parse()?)
        } else if id.takes_delta() {
            Selector::Delta(inner.parse()?)
        } else {
            return Err(GroupError::UnknownCheck(s.to_string()));
        };
        Ok(Check {
            id,
            selector: Some(selector),
        })
    }
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Verdict {
    Pass,
    Fail,
    Vacuous,
    Undecided,
}

impl Verdict {
    pub fn as_str(self) -> &'static str {
        match self {
            Verdict::Pass => "PASS",
            Verdict::Fail => "FAIL",
            Verdict::Vacuous => "VACUOUS",
            Verdict::Undecided => "UNDECIDED",
        }
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CheckResult {
    pub check: String,
    pub group: String,
    pub verdict: Verdict,
    /// Counterexample for FAIL, the blocking error for UNDECIDED.
    pub witness: Option<String>,
    /// Human-readable summary of what was evaluated.
    pub detail: String,
}

#[derive(Clone, Debug)]
struct Outcome {
    verdict: Verdict,
    witness: Option<String>,
    detail: String,
}

impl Outcome {
    fn pass(detail: impl Into<String>) -> Outcome {
        Outcome {
            verdict: Verdict::Pass,
            witness: None,
            detail: detail.into(),
        }
    }

    fn fail(witness: impl Into<String>) -> Outcome {
        let witness = witness.into();
        Outcome {
            verdict: Verdict::Fail,
            detail: witness.clone(),
            witness: Some(witness),
        }
    }

    fn vacuous(detail: impl Into<String>) -> Outcome {
        Outcome {
            verdict: Verdict::Vacuous,
            witness: None,
            detail: detail.into(),
        }
    }

    fn undecided(e: &GroupError) -> Outcome {
        Outcome {
            verdict: Verdict::Undecided,
            witness: Some(e.to_string()),
            detail: e.to_string(),
        }
    }

    fn from_result(r: Result<Outcome>) -> Outcome {
        r.unwrap_or_else(|e| Outcome::undecided(&e))
    }
}

/// Merges per-part outcomes: FAIL dominates, then UNDECIDED, then PASS.
fn combine(parts: Vec<(String, Outcome)>) -> Outcome {
    let label = |(name, o): &(String, Outcome)| format!("{name}: {}", o.detail);
    for v in [Verdict::Fail, Verdict::Undecided] {
        if let Some((name, o)) = parts.iter().find(|(_, o)| o.verdict == v) {
            return Outcome {
                verdict: v,
                witness: o.witness.as_ref().map(|w| format!("{name}: {w}")),
                detail: parts.iter().map(label).collect::<Vec<_>>().join("; "),
            };
        }
    }
    let verdict = if parts.iter().any(|(_, o)| o.verdict == Verdict::Pass) {
        Verdict::Pass
    } else {
        Verdict::Vacuous
    };
    Outcome {
        verdict,
        witness: None,
        detail: parts.iter().map(label).collect::<Vec<_>>().join("; "),
    }
}

pub fn run_check(check: &Check, g: &Group) -> CheckResult {
    let outcome = Outcome::from_result(evaluate(check, g));
    assert!(
        outcome.verdict != Verdict::Fail || outcome.witness.is_some(),
        "FAIL must carry a witness"
    );
    CheckResult {
        check: check.to_string(),
        group: g.label(),
        verdict: outcome.verdict,
        witness: outcome.witness,
        detail: outcome.detail,
    }
}

/// Every (group, check) cell, group-major, in input order.
pub fn run_suite(groups: &[Group], checks: &[Check]) -> Vec<CheckResult> {
    let cells: Vec<(&Group, &Check)> = groups
        .iter()
        .flat_map(|g| checks.iter().map(move |c| (g, c)))
        .collect();
    cells
        .into_par_iter()
        .map(|(g, c)| run_check(c, g))
        .collect()
}

fn evaluate(check: &Check, g: &Group) -> Result<Outcome> {
    let classes = |pred: fn(GroupClass) -> bool| -> Vec<GroupClass> {
        match check.selector {
            Some(Selector::Class(c)) => vec![c],
            _ => GroupClass::ALL.into_iter().filter(|&c| pred(c)).collect(),
        }
    };
    let deltas = || match check.selector {
        Some(Selector::Delta(d)) => vec![d],
        _ => Delta::builtins(),
    };
    match check.id {
        CheckId::Thm11i => Ok(per_part(deltas(), |d| delta_sublattice(g, d))),
        CheckId::Thm11ii => Ok(per_part(
            classes(|c| c.flags().normally_hereditary && c.flags().formation),
            |c| {
                let f = c.flags();
                if !(f.normally_hereditary && f.formation) {
                    return Ok(Outcome::vacuous("not a normally hereditary formation"));
                }
                class_sublattice(g, c, ClosureMode::Meet)
            },
        )),
        CheckId::Thm11iii => Ok(per_part(
            classes(|c| c.flags().fitting && c.flags().formation),
            |c| {
                let f = c.flags();
                if !(f.fitting && f.formation) {
                    return Ok(Outcome::vacuous("not a Fitting formation"));
                }
                class_sublattice(g, c, ClosureMode::Both)
            },
        )),
        CheckId::Cor12 => modular_pairs(g),
        CheckId::Cor13 => quasinormal_pairs(g),
        CheckId::Thm14i => Ok(per_part(
            classes(|c| {
                let f = c.flags();
                f.formation && f.normally_hereditary && f.saturated && f.contains_nilpotent
            }),
            |c| residual_structure(g, c),
        )),
        CheckId::Thm14ii => nilpotent_residual_powers(g),
        CheckId::Thm15 => pst_criterion(g),
        CheckId::Cor16 => subnormal_hypercentral(g),
        CheckId::Cor17 => pt_structure(g),
        CheckId::Cor18 => pt_criterion(g),
        CheckId::Lem21 => factor_semidirect_invariance(g),
        CheckId::Lem22 => Ok(per_part(deltas(), |d| z_delta_identities(g, d))),
        CheckId::Rem31 => Ok(per_part(classes(|_| true), |c| class_vs_f_central(g, c))),
        CheckId::QnHyp => quasinormal_single(g),
    }
}

fn per_part<T: fmt::Display>(items: Vec<T>, f: impl Fn(T) -> Result<Outcome>) -> Outcome {
    combine(
        items
            .into_iter()
            .map(|item| {
                let name = item.to_string();
                (name, Outcome::from_result(f(item)))
            })
            .collect(),
    )
}

fn closure_witness(c: &Closure, set_name: &str) -> Option<String> {
    match c {
        Closure::Closed => None,
        Closure::Counterexample { a, b, join, result } => Some(format!(
            "{}(A={}, B={}) = {} not in {set_name}",
            if *join { "join" } else { "meet" },
            a.describe(),
            b.describe(),
            result.describe()
        )),
    }
}

fn delta_sublattice(g: &Group, d: Delta) -> Result<Outcome> {
    let members = lattice_members(g, LatticeSpec::DeltaHyper(d))?;
    let closure = is_closed_sublattice(g, &members, ClosureMode::Both)?;
    Ok(match closure_witness(&closure, "L_Delta") {
        Some(w) => Outcome::fail(w),
        None => Outcome::pass(format!("|L_Delta| = {}", members.len())),
    })
}

fn class_sublattice(g: &Group, c: GroupClass, mode: ClosureMode) -> Result<Outcome> {
    let members = lattice_members(g, LatticeSpec::ClassQuotient(c))?;
    let closure = is_closed_sublattice(g, &members, mode)?;
    Ok(match closure_witness(&closure, "L_F") {
        Some(w) => Outcome::fail(w),
        None => Outcome::pass(format!("|L_F| = {}", members.len())),
    })
}

/// The image of `upper` in `G/lower` lies in `Z_∞(G/lower)`.
pub(crate) fn hypercentral_mod(g: &Group, upper: &Subgroup, lower: &Subgroup) -> Result<bool> {
    let (q, pi) = g.quotient(lower)?;
    let image = pi.image(upper, &q)?;
    Ok(image.is_subgroup_of(&hypercenter(&q)))
}

fn modular_pairs(g: &Group) -> Result<Outcome> {
    let lattice = SubgroupLattice::of(g)?;
    let modular: Vec<usize> = (0..lattice.len())
        .filter(|&i| is_modular_index(g, &lattice, i))
        .collect();
    let mut seen = HashSet::new();
    for (x, &i) in modular.iter().enumerate() {
        for &j in &modular[x..] {
            let m = lattice.meet_index(i, j);
            if !seen.insert(m) {
                continue;
            }
            let meet = lattice.get(m);
            let core = g.core(meet)?;
            let closure = g.normal_closure(meet)?;
            for f in chief_series_between(g, &core, &closure)? {
                if !is_prime(f.order()) {
                    return Ok(Outcome::fail(format!(
                        "A={} B={}: chief factor {} not cyclic",
                        lattice.get(i).describe(),
                        lattice.get(j).describe(),
                        f.describe()
                    )));
                }
            }
        }
    }
    Ok(Outcome::pass(format!(
        "{} modular subgroups, {} distinct intersections",
        modular.len(),
        seen.len()
    )))
}

fn quasinormal_indices(g: &Group, lattice: &SubgroupLattice) -> Result<Vec<usize>> {
    let mut out = Vec::new();
    for (i, a) in lattice.members().iter().enumerate() {
        if is_quasinormal(g, a)? {
            out.push(i);
        }
    }
    Ok(out)
}

fn quasinormal_pairs(g: &Group) -> Result<Outcome> {
    let lattice = SubgroupLattice::of(g)?;
    let qn = quasinormal_indices(g, &lattice)?;
    let mut seen = HashSet::new();
    for (x, &i) in qn.iter().enumerate() {
        for &j in &qn[x..] {
            let m = lattice.meet_index(i, j);
            if !seen.insert(m) {
                continue;
            }
            let meet = lattice.get(m);
            if !hypercentral_mod(g, &g.normal_closure(meet)?, &g.core(meet)?)? {
                return Ok(Outcome::fail(format!(
                    "A={} B={}: (A^B)^G/(A^B)_G not hypercentral",
                    lattice.get(i).describe(),
                    lattice.get(j).describe()
                )));
            }
        }
    }
    let non_normal = qn.iter().filter(|&&i| !g.is_normal(lattice.get(i))).count();
    Ok(Outcome::pass(format!(
        "{} quasinormal subgroups ({non_normal} non-normal)",
        qn.len()
    )))
}

fn quasinormal_single(g: &Group) -> Result<Outcome> {
    let lattice = SubgroupLattice::of(g)?;
    let qn = quasinormal_indices(g, &lattice)?;
    for &i in &qn {
        let a = lattice.get(i);
        if !hypercentral_mod(g, &g.normal_closure(a)?, &g.core(a)?)? {
            return Ok(Outcome::fail(format!(
                "A={}: A^G/A_G not hypercentral",
                a.describe()
            )));
        }
    }
    let non_normal = qn.iter().filter(|&&i| !g.is_normal(lattice.get(i))).count();
    Ok(Outcome::pass(format!(
        "{} quasinormal subgroups ({non_normal} non-normal)",
        qn.len()
    )))
}

fn is_soluble(g: &Group) -> bool {
    is_in_class(g, GroupClass::Soluble)
}

/// First subgroup on which the two membership vectors disagree.
fn lattice_separator(g: &Group, a: LatticeSpec, b: LatticeSpec) -> Result<Option<Subgroup>> {
    let lattice = SubgroupLattice::of(g)?;
    let ma = membership(g, a)?;
    let mb = membership(g, b)?;
    Ok(ma
        .iter()
        .zip(&mb)
        .position(|(x, y)| x != y)
        .map(|i| lattice.get(i).clone()))
}

fn nilpotent_vs_central(g: &Group) -> Result<Option<Subgroup>> {
    lattice_separator(
        g,
        LatticeSpec::ClassQuotient(GroupClass::Nilpotent),
        LatticeSpec::DeltaHyper(Delta::Central),
    )
}

fn residual_structure(g: &Group, c: GroupClass) -> Result<Outcome> {
    let d = residual(g, c)?;
    let one = g.trivial_subgroup();
    if !section_in_class(g, &d, &one, GroupClass::Soluble)? {
        return Ok(Outcome::vacuous("residual insoluble"));
    }
    let sep = lattice_separator(
        g,
        LatticeSpec::ClassQuotient(c),
        LatticeSpec::DeltaHyper(Delta::FCentral(c)),
    )?;
    if let Some(s) = sep {
        return Ok(Outcome::vacuous(format!("lattices differ at {}", s.describe())));
    }
    let dd = d.describe();
    if !section_in_class(g, &d, &one, GroupClass::Abelian)? {
        return Ok(Outcome::fail(format!("D={dd} not abelian")));
    }
    if !is_hall_in(g, &d)? {
        return Ok(Outcome::fail(format!("D={dd} not a Hall subgroup")));
    }
    if d.order() % 2 == 0 {
        return Ok(Outcome::fail(format!("D={dd} has even order")));
    }
    let phi = frattini_of(g, &d)?;
    if !induces_power_automorphisms(g, &d, Some(&phi))? {
        return Ok(Outcome::fail(format!(
            "D={dd}: no power automorphisms modulo Phi(D)={}",
            phi.describe()
        )));
    }
    for f in all_chief_factors(g) {
        if f.upper().is_subgroup_of(&d) && !is_prime(f.order()) {
            return Ok(Outcome::fail(format!(
                "D={dd}: chief factor {} below D not cyclic",
                f.describe()
            )));
        }
    }
    Ok(Outcome::pass(format!("|D| = {}", d.order())))
}

fn nilpotent_residual_powers(g: &Group) -> Result<Outcome> {
    if !is_soluble(g) {
        return Ok(Outcome::vacuous("G insoluble"));
    }
    if let Some(s) = nilpotent_vs_central(g)? {
        return Ok(Outcome::vacuous(format!("lattices differ at {}", s.describe())));
    }
    let d = residual(g, GroupClass::Nilpotent)?;
    Ok(if induces_power_automorphisms(g, &d, None)? {
        Outcome::pass(format!("|G^N| = {}", d.order()))
    } else {
        Outcome::fail(format!("G^N={}: not power automorphisms", d.describe()))
    })
}

fn pst_criterion(g: &Group) -> Result<Outcome> {
    if !is_soluble(g) {
        return Ok(Outcome::vacuous("G insoluble"));
    }
    let t = classify_t_pt_pst(g)?;
    let sep = nilpotent_vs_central(g)?;
    let lattices = match &sep {
        None => "lattices equal".to_string(),
        Some(s) => format!("lattices differ at {}", s.describe()),
    };
    let detail = format!("class {t}, {lattices}");
    Ok(if t.is_pst() == sep.is_none() {
        Outcome::pass(detail)
    } else {
        Outcome::fail(detail)
    })
}

fn subnormal_hypercentral(g: &Group) -> Result<Outcome> {
    if !is_soluble(g) {
        return Ok(Outcome::vacuous("G insoluble"));
    }
    let lattice = SubgroupLattice::of(g)?;
    for a in lattice.members() {
        if is_subnormal(g, a)? && !hypercentral_mod(g, a, &g.core(a)?)? {
            return Ok(Outcome::vacuous(format!(
                "subnormal {} not hypercentral mod its core",
                a.describe()
            )));
        }
    }
    let t = classify_t_pt_pst(g)?;
    Ok(if t.is_pst() {
        Outcome::pass(format!("class {t}"))
    } else {
        Outcome::fail(format!("hypothesis holds but class is {t}"))
    })
}

fn pt_structure(g: &Group) -> Result<Outcome> {
    if !is_soluble(g) {
        return Ok(Outcome::vacuous("G insoluble"));
    }
    let t = classify_t_pt_pst(g)?;
    if !t.is_pt() {
        return Ok(Outcome::vacuous(format!("class {t}")));
    }
    let whole = g.whole();
    let one = g.trivial_subgroup();
    for d in normal_subgroups(g).iter() {
        if d.order() % 2 == 1
            && is_hall_in(g, d)?
            && section_in_class(g, d, &one, GroupClass::Abelian)?
            && section_in_class(g, &whole, d, GroupClass::Nilpotent)?
            && induces_power_automorphisms(g, d, None)?
        {
            return Ok(Outcome::pass(format!("class {t}, D={}", d.describe())));
        }
    }
    Ok(Outcome::fail(format!("class {t} but no suitable D")))
}

fn pt_criterion(g: &Group) -> Result<Outcome> {
    if !is_soluble(g) {
        return Ok(Outcome::vacuous("G insoluble"));
    }
    let t = classify_t_pt_pst(g)?;
    let sep = nilpotent_vs_central(g)?;
    let iwasawa = iwasawa_sylow_condition(g)?;
    let rhs = sep.is_none() && iwasawa;
    let detail = format!(
        "{}, Iwasawa condition {}, lattice equality {}",
        if t.is_pt() { "PT" } else { "not PT" },
        iwasawa,
        if sep.is_none() { "holds" } else { "fails" },
    );
    Ok(if t.is_pt() == rhs {
        Outcome::pass(format!("{detail} => biconditional satisfied"))
    } else {
        Outcome::fail(detail)
    })
}

fn factor_semidirect_invariance(g: &Group) -> Result<Outcome> {
    let factors = all_chief_factors(g);
    if factors.is_empty() {
        return Ok(Outcome::vacuous("no chief factors"));
    }
    let normals = normal_subgroups(g);
    let mut undecided: Option<GroupError> = None;
    let mut quotient_cases = 0;
    let mut pair_cases = 0;
    let mut note = |e: GroupError| -> Result<()> {
        if e.is_cap() {
            undecided.get_or_insert(e);
            Ok(())
        } else {
            Err(e)
        }
    };
    // (1) passing to G/N for 1 < N ≤ K
    for f in &factors {
        for n in normals.iter() {
            if n.is_trivial() || !n.is_subgroup_of(f.lower()) {
                continue;
            }
            quotient_cases += 1;
            let (q, pi) = g.quotient(n)?;
            let fq = chief_factor(&q, &pi.image(f.lower(), &q)?, &pi.image(f.upper(), &q)?)?;
            if pi.image(&f.centralizer, &q)? != fq.centralizer {
                return Ok(Outcome::fail(format!(
                    "{} mod N={}: centralizers do not correspond",
                    f.describe(),
                    n.describe()
                )));
            }
            match semidirects_isomorphic(g, f, &q, &fq) {
                Ok(true) => {}
                Ok(false) => {
                    return Ok(Outcome::fail(format!(
                        "{} mod N={}: semidirect products not isomorphic",
                        f.describe(),
                        n.describe()
                    )))
                }
                Err(e) => note(e)?,
            }
        }
    }
    // (2) G-isomorphic pairs
    for (i, f1) in factors.iter().enumerate() {
        for f2 in &factors[i + 1..] {
            if f1.order() != f2.order() {
                continue;
            }
            match g_isomorphic(g, f1, f2) {
                Ok(false) => continue,
                Ok(true) => {}
                Err(e) => {
                    note(e)?;
                    continue;
                }
            }
            pair_cases += 1;
            if f1.centralizer != f2.centralizer {
                return Ok(Outcome::fail(format!(
                    "{} and {} G-isomorphic with different centralizers",
                    f1.describe(),
                    f2.describe()
                )));
            }
            match semidirects_isomorphic(g, f1, g, f2) {
                Ok(true) => {}
                Ok(false) => {
                    return Ok(Outcome::fail(format!(
                        "{} and {} G-isomorphic, semidirect products not isomorphic",
                        f1.describe(),
                        f2.describe()
                    )))
                }
                Err(e) => note(e)?,
            }
        }
    }
    let detail = format!(
        "{} chief factors, {quotient_cases} quotient cases, {pair_cases} G-isomorphic pairs",
        factors.len()
    );
    Ok(match undecided {
        Some(e) => Outcome {
            verdict: Verdict::Undecided,
            witness: Some(e.to_string()),
            detail,
        },
        None => Outcome::pass(detail),
    })
}

fn semidirects_isomorphic(g1: &Group, f1: &ChiefFactor, g2: &Group, f2: &ChiefFactor) -> Result<bool> {
    let a = factor_semidirect(g1, f1)?;
    let b = factor_semidirect(g2, f2)?;
    is_isomorphic(&a, &b)
}

fn z_delta_identities(g: &Group, delta: Delta) -> Result<Outcome> {
    let normals = normal_subgroups(g);
    let n = normals.len();
    let index: HashMap<&FixedBitSet, usize> =
        normals.iter().enumerate().map(|(i, s)| (s.mask(), i)).collect();
    let mut meet = vec![0usize; n * n];
    let mut join = vec![0usize; n * n];
    for i in 0..n {
        for j in 0..n {
            let mut m = normals[i].mask().clone();
            m.intersect_with(normals[j].mask());
            meet[i * n + j] = index[&m];
            join[i * n + j] = index[g.join(&normals[i], &normals[j])?.mask()];
        }
    }
    let le = |a: usize, b: usize| normals[a].is_subgroup_of(&normals[b]);
    let mut memo: HashMap<(usize, usize), bool> = HashMap::new();
    let mut zd = |lo: usize, hi: usize| -> Result<bool> {
        if let Some(&v) = memo.get(&(lo, hi)) {
            return Ok(v);
        }
        let v = z_delta_between(g, &normals[lo], &normals[hi], delta)?;
        memo.insert((lo, hi), v);
        Ok(v)
    };
    let name = |i: usize| normals[i].describe();
    let mut cases = 0usize;
    for k in 0..n {
        for h in 0..n {
            if !le(k, h) || !zd(k, h)? {
                continue;
            }
            for m in 0..n {
                if le(m, h) {
                    cases += 1;
                    let km = join[k * n + m];
                    let k_cap_m = meet[k * n + m];
                    if zd(k, km)? != zd(k_cap_m, m)? {
                        return Ok(Outcome::fail(format!(
                            "(1) K={} H={} N={}",
                            name(k),
                            name(h),
                            name(m)
                        )));
                    }
                    if zd(m, h)? && !zd(k_cap_m, h)? {
                        return Ok(Outcome::fail(format!(
                            "(2) K={} H={} N={}",
                            name(k),
                            name(h),
                            name(m)
                        )));
                    }
                }
                if le(k, m) && zd(k, m)? {
                    cases += 1;
                    let hv = join[h * n + m];
                    if !zd(k, hv)? {
                        return Ok(Outcome::fail(format!(
                            "(3) K={} H={} V={}",
                            name(k),
                            name(h),
                            name(m)
                        )));
                    }
                }
            }
        }
    }
    Ok(Outcome::pass(format!("{n} normal subgroups, {cases} cases")))
}

fn class_vs_f_central(g: &Group, c: GroupClass) -> Result<Outcome> {
    let member = is_in_class(g, c);
    let factors = all_chief_factors(g);
    let mut not_central = None;
    for f in &factors {
        if !is_f_central(g, f, c)? {
            not_central = Some(f);
            break;
        }
    }
    if member {
        if let Some(f) = not_central {
            return Ok(Outcome::fail(format!(
                "G in class but {} not F-central",
                f.describe()
            )));
        }
        return Ok(Outcome::pass(format!(
            "G in class, {} chief factors F-central",
            factors.len()
        )));
    }
    let flags = c.flags();
    if flags.saturated && flags.formation {
        if not_central.is_none() {
            return Ok(Outcome::fail("every chief factor F-central but G not in class"));
        }
        return Ok(Outcome::pass("G not in class, some chief factor not F-central"));
    }
    Ok(Outcome::vacuous("G not in class"))
}

/// Coverage table: every check id with its statement.
pub fn catalog() -> Vec<(CheckId, &'static str)> {
    CheckId::ALL.into_iter().map(|c| (c, c.statement())).collect()
}
