//! Plain-text rendering of reports.

use std::fmt::{Debug, Write};

use gradering::corpus::report::{Existence, Report};
use gradering::lab::StatementOutcome;
use gradering::Verdict;

fn verdict<W: Debug>(v: &Verdict<W>) -> String {
    match v {
        Verdict::Pass => "yes".into(),
        Verdict::Fail(w) => format!("no, witness {w:?}"),
    }
}

fn yes(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

pub fn text(report: &Report) -> String {
    let mut s = String::new();
    let out = &mut s;
    match report {
        Report::Validation(r) => {
            let _ = writeln!(out, "associative: {}", verdict(&r.ring));
            let _ = writeln!(out, "grading multiplicative: {}", verdict(&r.grading));
        }
        Report::Classification(r) => {
            let _ = writeln!(out, "map {}", r.map);
            let _ = writeln!(out, "  derivation: {}", verdict(&r.derivation));
            let _ = writeln!(out, "  homogeneous map: {}", verdict(&r.homogeneous_map));
            let _ = writeln!(out, "  homogeneous derivation: {}", yes(r.homogeneous_derivation));
            match &r.associated_derivation {
                Some(d) => {
                    let _ = writeln!(out, "  generalized derivation: yes, associate {d:?}");
                    if let Some(n) = r.associated_dimension {
                        let _ = writeln!(out, "  associate space dimension: {n}");
                    }
                }
                None => {
                    let _ = writeln!(out, "  generalized derivation: no");
                }
            }
            let gh = match (&r.generalized_homogeneous, &r.homogeneous_associate) {
                (Existence::Yes, Some(d)) => format!("yes, homogeneous associate {d:?}"),
                (Existence::Yes, None) => "yes".into(),
                (Existence::No, _) => "no".into(),
                (Existence::Undecided, _) => "undecided within budget".into(),
            };
            let _ = writeln!(out, "  generalized homogeneous derivation: {gh}");
        }
        Report::Primeness(r) => {
            let _ = writeln!(out, "gr-prime: {}", yes(r.gr_prime));
            if let Some(w) = &r.gr_witness {
                let _ = writeln!(out, "  homogeneous annihilating pair a={:?} b={:?}", w.a, w.b);
            }
            if let Some(p) = r.prime {
                let _ = writeln!(out, "prime: {}", yes(p));
            }
            if let Some(w) = &r.prime_witness {
                let _ = writeln!(out, "  annihilating pair a={:?} b={:?}", w.a, w.b);
            }
        }
        Report::Center(r) => {
            let _ = writeln!(out, "center dimension {}", r.dimension);
            for z in &r.basis {
                let _ = writeln!(out, "  {z:?}");
            }
        }
        Report::Theorem(v) => {
            let _ = writeln!(out, "{}", v.summary());
            let _ = writeln!(out, "condition {}: {}", v.condition, yes(v.hypotheses.condition));
            if let Some(w) = &v.condition_witness {
                let _ = writeln!(out, "  fails at x={:?} y={:?}, value {:?}", w.x, w.y, w.value);
            }
            if let Some(w) = &v.commutativity_witness {
                let _ = writeln!(out, "non-commuting basis pair {w:?}");
            }
        }
        Report::Statement(r) => {
            let line = match &r.outcome {
                StatementOutcome::Consistent => "consistent".to_string(),
                StatementOutcome::OutsideHypotheses(why) => format!("outside hypotheses ({why})"),
                StatementOutcome::Violation(why) => format!("VIOLATION: {why}"),
            };
            let _ = writeln!(out, "{}: {line}", r.criterion);
        }
        Report::Lemma(r) => {
            let _ = writeln!(
                out,
                "one homogeneous side suffices: {}",
                verdict(&r.one_side_homogeneous)
            );
            let _ = writeln!(
                out,
                "centralizers of graded one-sided ideals equal the center: {} ({} ideals)",
                verdict(&r.centralizer_is_center),
                r.ideals_checked
            );
        }
        Report::Sweep(r) => {
            let t = &r.totals;
            let _ = writeln!(out, "{} over {} [{}]", r.criterion, r.family, r.params);
            let _ = writeln!(
                out,
                "{} instances ({} gr-prime), {} verdicts, {} with hypotheses satisfied, {} outside, {} inconsistent",
                t.instances, t.gr_prime_instances, t.evaluated, t.hypotheses_satisfied, t.outside_hypotheses, t.inconsistent
            );
            if t.undecided_maps > 0 {
                let _ = writeln!(out, "{} maps undecided within budget", t.undecided_maps);
            }
            for d in &r.dossiers {
                let _ = writeln!(out, "INCONSISTENT {}: {}", d.instance, d.detail);
            }
            if r.dossiers_truncated {
                let _ = writeln!(out, "(further inconsistencies omitted)");
            }
        }
        Report::Evidence(r) => {
            let conds: Vec<String> = r.conditions.iter().map(|c| c.to_string()).collect();
            let _ = writeln!(out, "{} [{}]: {}", r.problem, r.bounds, conds.join(", "));
            for f in &r.frontier {
                let _ = writeln!(
                    out,
                    "  {} [{}]: {} instances, {} gr-prime, {} excluded by modulus",
                    f.family, f.params, f.instances, f.gr_prime, f.excluded_by_modulus
                );
            }
            let _ = writeln!(
                out,
                "{} evaluated, {} with hypotheses satisfied ({} commutative, {} not), {} undecided",
                r.evaluated, r.hypotheses_satisfied, r.satisfied_commutative, r.satisfied_noncommutative, r.undecided
            );
            for s in &r.survivors {
                let _ = writeln!(out, "  survivor {} under {}", s.instance, s.condition);
            }
            if !r.survivors.is_empty() {
                let _ = writeln!(out, "{}", r.note);
            }
        }
        Report::Demo(r) => {
            let _ = writeln!(out, "{} over Z_{} (truncation {})", r.example, r.modulus, r.truncation);
            for c in &r.checks {
                let mark = if c.pass { "ok  " } else { "FAIL" };
                let _ = write!(out, "  {mark} {}", c.name);
                if c.pass {
                    let _ = writeln!(out);
                } else {
                    let _ = writeln!(out, ": expected {}, found {}", c.expected, c.found);
                }
            }
            let _ = writeln!(out, "{} passed, {} failed", r.passed, r.failed);
        }
    }
    s
}
