//! Structural summary of a single group, as printed by `analyze`.

use std::fmt::Write as _;

use serde::Serialize;

use crate::classes::{is_in_class, radical, residual, GroupClass};
use crate::error::Result;
use crate::group::Group;
use crate::lattice::{distinguished_subgroups, SubgroupLattice};
use crate::permutability::classify_t_pt_pst;
use crate::series::{chief_series_between, hypercenter, normal_subgroups};
use crate::sublattices::{class_lattice_divergence, lattice_members, Delta, LatticeSpec};

#[derive(Clone, Debug, Serialize)]
pub struct ClassRow {
    pub class: String,
    pub member: bool,
    pub residual_order: usize,
    pub radical_order: usize,
    pub lf_size: usize,
    /// Subgroups where `A^G/A_G ∈ F` and the chief-factor reading disagree.
    pub lf_divergence: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct DeltaRow {
    pub delta: String,
    pub ldelta_size: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct Analysis {
    pub group: String,
    pub order: usize,
    pub degree: usize,
    pub generators: Vec<String>,
    pub exponent: usize,
    pub center_order: usize,
    pub derived_order: usize,
    pub hypercenter_order: usize,
    pub frattini_order: usize,
    pub subgroups: usize,
    pub normal_subgroups: usize,
    pub chief_factor_orders: Vec<usize>,
    pub classification: String,
    pub classes: Vec<ClassRow>,
    pub deltas: Vec<DeltaRow>,
}

pub fn analyze(g: &Group) -> Result<Analysis> {
    let lattice = SubgroupLattice::of(g)?;
    let chief = chief_series_between(g, &g.trivial_subgroup(), &g.whole())?;
    let mut classes = Vec::new();
    for c in GroupClass::ALL {
        classes.push(ClassRow {
            class: c.to_string(),
            member: is_in_class(g, c),
            residual_order: residual(g, c)?.order(),
            radical_order: radical(g, c)?.order(),
            lf_size: lattice_members(g, LatticeSpec::ClassQuotient(c))?.len(),
            lf_divergence: class_lattice_divergence(g, c)?.len(),
        });
    }
    let mut deltas = Vec::new();
    for d in Delta::builtins() {
        deltas.push(DeltaRow {
            delta: d.to_string(),
            ldelta_size: lattice_members(g, LatticeSpec::DeltaHyper(d))?.len(),
        });
    }
    Ok(Analysis {
        group: g.label(),
        order: g.order(),
        degree: g.degree(),
        generators: g.generators().iter().map(|p| p.to_cycle_string()).collect(),
        exponent: g.exponent(),
        center_order: g.center().order(),
        derived_order: g.commutator_subgroup(&g.whole(), &g.whole())?.order(),
        hypercenter_order: hypercenter(g).order(),
        frattini_order: distinguished_subgroups(g)?.frattini.order(),
        subgroups: lattice.len(),
        normal_subgroups: normal_subgroups(g).len(),
        chief_factor_orders: chief.iter().map(|f| f.order()).collect(),
        classification: classify_t_pt_pst(g)?.to_string(),
        classes,
        deltas,
    })
}

impl Analysis {
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "group {} (order {}, degree {})", self.group, self.order, self.degree);
        let _ = writeln!(out, "generators {}", self.generators.join(" "));
        let _ = writeln!(out, "exponent {}", self.exponent);
        let _ = writeln!(
            out,
            "|Z| {}  |G'| {}  |Z_inf| {}  |Phi| {}",
            self.center_order, self.derived_order, self.hypercenter_order, self.frattini_order
        );
        let _ = writeln!(
            out,
            "subgroups {}  normal {}",
            self.subgroups, self.normal_subgroups
        );
        let orders: Vec<String> = self.chief_factor_orders.iter().map(usize::to_string).collect();
        let _ = writeln!(out, "chief factors {}", orders.join(" "));
        let _ = writeln!(out, "T/PT/PST {}", self.classification);
        for c in &self.classes {
            let _ = writeln!(
                out,
                "{:<13} member {:<5} residual {:<4} radical {:<4} |L_F| {:<4} divergence {}",
                c.class, c.member, c.residual_order, c.radical_order, c.lf_size, c.lf_divergence
            );
        }
        for d in &self.deltas {
            let _ = writeln!(out, "{:<26} |L_Delta| {}", d.delta, d.ldelta_size);
        }
        out
    }
}
