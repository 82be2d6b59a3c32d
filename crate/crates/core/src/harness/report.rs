//! Suite reports (text, JSON) and subgroup-lattice exports (DOT, JSON).

use std::fmt::Write as _;
use std::str::FromStr;

use serde::Serialize;

use crate::classes::GroupClass;
use crate::error::{GroupError, Result};
use crate::group::Group;
use crate::harness::checks::{CheckResult, Verdict};
use crate::lattice::SubgroupLattice;
use crate::sublattices::{membership, Delta, LatticeSpec};

#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum Format {
    Text,
    Json,
    Dot,
}

impl FromStr for Format {
    type Err = GroupError;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "text" => Ok(Format::Text),
            "json" => Ok(Format::Json),
            "dot" => Ok(Format::Dot),
            other => Err(GroupError::UnsupportedFormat(other.to_string())),
        }
    }
}

#[derive(Copy, Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Summary {
    pub pass: usize,
    pub fail: usize,
    pub vacuous: usize,
    pub undecided: usize,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Report {
    pub results: Vec<CheckResult>,
}

#[derive(Serialize)]
struct JsonResult<'a> {
    group: &'a str,
    check: &'a str,
    verdict: &'static str,
    witness: Option<&'a str>,
}

#[derive(Serialize)]
struct JsonReport<'a> {
    results: Vec<JsonResult<'a>>,
    summary: Summary,
}

impl Report {
    pub fn new(results: Vec<CheckResult>) -> Report {
        Report { results }
    }

    pub fn summary(&self) -> Summary {
        let mut s = Summary::default();
        for r in &self.results {
            match r.verdict {
                Verdict::Pass => s.pass += 1,
                Verdict::Fail => s.fail += 1,
                Verdict::Vacuous => s.vacuous += 1,
                Verdict::Undecided => s.undecided += 1,
            }
        }
        s
    }

    pub fn has_failures(&self) -> bool {
        self.results.iter().any(|r| r.verdict == Verdict::Fail)
    }

    pub fn render(&self, format: Format) -> Result<String> {
        match format {
            Format::Text => Ok(self.to_text()),
            Format::Json => Ok(self.to_json()),
            Format::Dot => Err(GroupError::UnsupportedFormat(
                "dot applies to lattice exports only".into(),
            )),
        }
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for r in &self.results {
            let _ = write!(out, "{:<8} {:<24} {:<9}", r.group, r.check, r.verdict);
            if let Some(w) = &r.witness {
                let _ = write!(out, " witness: {w}");
            } else if !r.detail.is_empty() {
                let _ = write!(out, " {}", r.detail);
            }
            out.push('\n');
        }
        let s = self.summary();
        let _ = writeln!(
            out,
            "pass {} fail {} vacuous {} undecided {}",
            s.pass, s.fail, s.vacuous, s.undecided
        );
        out
    }

    pub fn to_json(&self) -> String {
        let doc = JsonReport {
            results: self
                .results
                .iter()
                .map(|r| JsonResult {
                    group: &r.group,
                    check: &r.check,
                    verdict: r.verdict.as_str(),
                    witness: r.witness.as_deref(),
                })
                .collect(),
            summary: self.summary(),
        };
        serde_json::to_string_pretty(&doc).expect("report serializes")
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LatticeNode {
    pub index: usize,
    pub order: usize,
    pub elements: Vec<usize>,
    pub normal: bool,
    pub in_lf: bool,
    pub in_ldelta: bool,
}

/// The subgroup lattice with `L_F` / `L_Δ` membership marks.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LatticeExport {
    pub group: String,
    pub order: usize,
    pub class: String,
    pub delta: String,
    pub nodes: Vec<LatticeNode>,
    /// Covering pairs `(lower, upper)`.
    pub edges: Vec<(usize, usize)>,
}

pub fn lattice_export(g: &Group, class: GroupClass, delta: Delta) -> Result<LatticeExport> {
    let lattice = SubgroupLattice::of(g)?;
    let lf = membership(g, LatticeSpec::ClassQuotient(class))?;
    let ld = membership(g, LatticeSpec::DeltaHyper(delta))?;
    let nodes = lattice
        .members()
        .iter()
        .enumerate()
        .map(|(i, s)| LatticeNode {
            index: i,
            order: s.order(),
            elements: s.elements().collect(),
            normal: g.is_normal(s),
            in_lf: lf[i],
            in_ldelta: ld[i],
        })
        .collect();
    Ok(LatticeExport {
        group: g.label(),
        order: g.order(),
        class: class.to_string(),
        delta: delta.to_string(),
        nodes,
        edges: lattice.hasse_edges(),
    })
}

impl LatticeExport {
    pub fn render(&self, format: Format) -> Result<String> {
        match format {
            Format::Dot => Ok(self.to_dot()),
            Format::Json => Ok(serde_json::to_string_pretty(self).expect("lattice serializes")),
            Format::Text => Err(GroupError::UnsupportedFormat(
                "lattice exports are dot or json".into(),
            )),
        }
    }

    pub fn to_dot(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "digraph \"{}\" {{", self.group.replace('"', "'"));
        out.push_str("  rankdir=BT;\n  node [style=filled];\n");
        let _ = writeln!(
            out,
            "  // green: L_F({}) and L_Delta({}); blue: L_F only; yellow: L_Delta only",
            self.class, self.delta
        );
        for n in &self.nodes {
            let color = match (n.in_lf, n.in_ldelta) {
                (true, true) => "palegreen",
                (true, false) => "lightblue",
                (false, true) => "khaki",
                (false, false) => "white",
            };
            let shape = if n.normal { "box" } else { "ellipse" };
            let _ = writeln!(
                out,
                "  s{} [label=\"#{} |{}|\", shape={shape}, fillcolor={color}];",
                n.index, n.index, n.order
            );
        }
        for (lo, hi) in &self.edges {
            let _ = writeln!(out, "  s{lo} -> s{hi};");
        }
        out.push_str("}\n");
        out
    }
}
