//! Acceptance run: one line per criterion, nonzero exit if any fails.

mod common;

use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

use common::{set_of, Oracle, Set};
use grouplat::harness::checks::{run_suite, Check, CheckId, CheckResult, Verdict};
use grouplat::harness::corpus::{builtin, corpus};
use grouplat::lattice::SubgroupLattice;
use grouplat::permutability::{classify_t_pt_pst, is_quasinormal};
use grouplat::series::{
    chief_series_between_with, hypercenter, hypercenter_by_chief_factors, normal_subgroups,
    TieBreak,
};
use grouplat::sublattices::Delta;
use grouplat::{ChiefFactor, GroupClass};

struct Outcome {
    ok: bool,
    note: String,
}

fn outcome(ok: bool, note: impl Into<String>) -> Outcome {
    Outcome {
        ok,
        note: note.into(),
    }
}

fn suite(ids: &[CheckId]) -> Vec<CheckResult> {
    let checks: Vec<Check> = ids.iter().map(|&id| Check::from(id)).collect();
    run_suite(corpus(), &checks)
}

fn count(results: &[CheckResult], id: CheckId, v: Verdict) -> usize {
    results
        .iter()
        .filter(|r| r.check == id.as_str() && r.verdict == v)
        .count()
}

fn failures(results: &[CheckResult]) -> Vec<String> {
    results
        .iter()
        .filter(|r| r.verdict == Verdict::Fail)
        .map(|r| format!("{} {}: {}", r.group, r.check, r.witness.as_deref().unwrap_or("")))
        .collect()
}

fn zero_fail(results: &[CheckResult]) -> Outcome {
    let f = failures(results);
    if f.is_empty() {
        outcome(true, format!("{} cells, 0 FAIL", results.len()))
    } else {
        outcome(false, f.join("; "))
    }
}

fn sublattice_delta() -> Outcome {
    let start = Instant::now();
    let results = suite(&[CheckId::Thm11i]);
    let elapsed = start.elapsed();
    let base = zero_fail(&results);
    let undecided = count(&results, CheckId::Thm11i, Verdict::Undecided);
    outcome(
        base.ok && undecided == 0 && elapsed < Duration::from_secs(60),
        format!("{}, {undecided} UNDECIDED, {:.2?} (limit 60s)", base.note, elapsed),
    )
}

fn sublattice_class() -> Outcome {
    zero_fail(&suite(&[CheckId::Thm11ii, CheckId::Thm11iii]))
}

fn pst_criterion() -> Outcome {
    let results = suite(&[CheckId::Thm15]);
    let base = zero_fail(&results);
    let mut wrong = Vec::new();
    for (name, want) in [("S3", "T"), ("Q8", "T"), ("D8", "PST"), ("S4", "NONE"), ("A4", "NONE")] {
        let g = builtin(name).expect("corpus group");
        let ours = classify_t_pt_pst(g).map(|t| t.to_string()).unwrap_or_default();
        let reference = Oracle::new(g).classify();
        if ours != want || reference != want {
            wrong.push(format!("{name}: library {ours}, reference {reference}, expected {want}"));
        }
    }
    let soluble = corpus()
        .iter()
        .filter(|g| grouplat::is_in_class(g, GroupClass::Soluble))
        .count();
    let decided = count(&results, CheckId::Thm15, Verdict::Pass);
    outcome(
        base.ok && wrong.is_empty() && decided == soluble,
        format!(
            "{}, {decided}/{soluble} soluble groups decided, spot values {}",
            base.note,
            if wrong.is_empty() { "match".to_string() } else { wrong.join("; ") }
        ),
    )
}

fn permutable_pairs() -> Outcome {
    let results = suite(&[CheckId::Cor12, CheckId::Cor13, CheckId::QnHyp]);
    let base = zero_fail(&results);
    let g = builtin("M16").expect("corpus group");
    let lattice = SubgroupLattice::of(g).expect("small lattice");
    let witness = lattice
        .members()
        .iter()
        .find(|a| !a.is_trivial() && !g.is_normal(a) && is_quasinormal(g, a).unwrap_or(false));
    let m16_passed = results
        .iter()
        .filter(|r| r.group == "M16")
        .all(|r| r.verdict == Verdict::Pass);
    outcome(
        base.ok && witness.is_some() && m16_passed,
        format!(
            "{}, M16 quasinormal non-normal witness {}",
            base.note,
            witness.map_or("missing".to_string(), |a| a.describe())
        ),
    )
}

fn implications() -> Outcome {
    let ids = [
        CheckId::Thm14i,
        CheckId::Thm14ii,
        CheckId::Cor16,
        CheckId::Cor17,
        CheckId::Cor18,
        CheckId::Thm15,
    ];
    let results = suite(&ids);
    let base = zero_fail(&results);
    let mut notes = vec![base.note];
    let mut ok = base.ok;
    for id in [CheckId::Thm14i, CheckId::Thm15, CheckId::Cor18] {
        let exercised = count(&results, id, Verdict::Pass);
        ok &= exercised >= 5;
        notes.push(format!("{id} non-vacuous on {exercised} groups"));
    }
    outcome(ok, notes.join(", "))
}

fn lemmas() -> Outcome {
    let results = suite(&[CheckId::Lem21, CheckId::Lem22, CheckId::Rem31]);
    let base = zero_fail(&results);
    let all = suite(&CheckId::ALL);
    let undecided = all.iter().filter(|r| r.verdict == Verdict::Undecided).count();
    let share = undecided as f64 / all.len() as f64;
    outcome(
        base.ok && share <= 0.05,
        format!(
            "{}, UNDECIDED {undecided}/{} cells of the full suite ({:.1}%, limit 5%)",
            base.note,
            all.len(),
            share * 100.0
        ),
    )
}

fn oracle_equivalences() -> Outcome {
    let mut problems = Vec::new();
    let one: Set = [0].into_iter().collect();
    let mut lattices = 0;
    let mut sections = 0;
    let mut deltas = Delta::builtins();
    deltas.extend(GroupClass::ALL.iter().map(|&c| Delta::FMember(c)));
    for g in corpus() {
        let o = Oracle::new(g);
        let a = hypercenter(g);
        let b = hypercenter_by_chief_factors(g);
        if a != b || set_of(&a) != o.hypercenter_over(&one) {
            problems.push(format!("{}: hypercenters disagree", g.label()));
        }
        if g.order() <= 24 {
            lattices += 1;
            let ours: std::collections::HashSet<Set> = SubgroupLattice::of(g)
                .expect("small lattice")
                .members()
                .iter()
                .map(set_of)
                .collect();
            let theirs: std::collections::HashSet<Set> = o.subgroups().iter().cloned().collect();
            if ours != theirs {
                problems.push(format!(
                    "{}: {} subgroups vs {} from subset closure",
                    g.label(),
                    ours.len(),
                    theirs.len()
                ));
            }
        }
        let normals = normal_subgroups(g);
        for lower in normals.iter() {
            for upper in normals.iter().filter(|u| lower.is_subgroup_of(u)) {
                sections += 1;
                let x = chief_series_between_with(g, lower, upper, TieBreak::Canonical);
                let y = chief_series_between_with(g, lower, upper, TieBreak::Reversed);
                let (Ok(x), Ok(y)) = (x, y) else {
                    problems.push(format!("{}: chief series failed", g.label()));
                    continue;
                };
                let key = |f: &ChiefFactor| (f.order(), set_of(&f.centralizer));
                let mut ox: Vec<_> = x.iter().map(key).collect();
                let mut oy: Vec<_> = y.iter().map(key).collect();
                ox.sort_unstable();
                oy.sort_unstable();
                if ox != oy {
                    problems.push(format!("{}: factors or centralizers depend on tie-break", g.label()));
                }
                for d in &deltas {
                    let vx = x.iter().all(|f| d.holds(g, f).unwrap_or(false));
                    let vy = y.iter().all(|f| d.holds(g, f).unwrap_or(false));
                    if vx != vy {
                        problems.push(format!(
                            "{}: {d} verdict on {}/{} depends on tie-break",
                            g.label(),
                            upper.describe(),
                            lower.describe()
                        ));
                    }
                }
            }
        }
    }
    outcome(
        problems.is_empty(),
        if problems.is_empty() {
            format!(
                "hypercenters agree on {} groups, {lattices} lattices match, {sections} sections tie-break independent",
                corpus().len()
            )
        } else {
            problems.join("; ")
        },
    )
}

fn full_suite() -> Outcome {
    let run = || {
        Command::new(env!("CARGO_BIN_EXE_grouplat"))
            .args(["verify", "--format", "json"])
            .output()
    };
    let start = Instant::now();
    let first = run();
    let elapsed = start.elapsed();
    let second = run();
    let (Ok(first), Ok(second)) = (first, second) else {
        return outcome(false, "could not run the binary");
    };
    let identical = first.stdout == second.stdout;
    let exit = first.status.code();
    let cells = serde_json::from_slice::<serde_json::Value>(&first.stdout)
        .ok()
        .and_then(|v| v["results"].as_array().map(Vec::len))
        .unwrap_or(0);
    let expected = corpus().len() * CheckId::ALL.len();
    outcome(
        identical && exit == Some(0) && cells == expected && elapsed < Duration::from_secs(600),
        format!(
            "{cells}/{expected} cells in {:.2?} (limit 600s), exit {:?}, byte-identical {identical}",
            elapsed, exit
        ),
    )
}

fn main() -> ExitCode {
    type Criterion = (&'static str, fn() -> Outcome);
    let criteria: [Criterion; 8] = [
        ("1 THM-1.1i L_Delta sublattice", sublattice_delta),
        ("2 THM-1.1ii/iii L_F meet/join closure", sublattice_class),
        ("3 THM-1.5 PST criterion and spot values", pst_criterion),
        ("4 COR-1.2, COR-1.3, QN-HYP", permutable_pairs),
        ("5 THM-1.4i/ii, COR-1.6, COR-1.7, COR-1.8", implications),
        ("6 LEM-2.1, LEM-2.2, REM-3.1", lemmas),
        ("7 oracle equivalences", oracle_equivalences),
        ("8 full suite runtime and determinism", full_suite),
    ];
    let mut failed = 0;
    for (name, f) in criteria {
        let o = f();
        println!("{} criterion {name}: {}", if o.ok { "PASS" } else { "FAIL" }, o.note);
        if !o.ok {
            failed += 1;
        }
    }
    println!("{} of 8 criteria passed", 8 - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
