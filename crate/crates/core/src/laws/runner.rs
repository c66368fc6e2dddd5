use std::fmt;
use std::time::Instant;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::grid::{instances, GridSpec, Instance};
use super::ops::Ops;
use super::registry::law_registry;
use super::Law;
use crate::error::{Error, Result};

/// Outcome of one law over the grid.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LawReport {
    pub law_id: String,
    pub paper_ref: String,
    pub instances: usize,
    pub passes: usize,
    pub failures: Vec<String>,
    pub skipped: usize,
}

impl LawReport {
    pub fn ok(&self) -> bool {
        self.failures.is_empty()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Report {
    pub laws: Vec<LawReport>,
    pub wall_time_ms: u64,
}

impl Report {
    pub fn failures(&self) -> usize {
        self.laws.iter().map(|l| l.failures.len()).sum()
    }

    pub fn instances(&self) -> usize {
        self.laws.iter().map(|l| l.instances).sum()
    }

    pub fn ok(&self) -> bool {
        self.failures() == 0
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let w = self
            .laws
            .iter()
            .map(|l| l.law_id.len())
            .max()
            .unwrap_or(3)
            .max(3);
        writeln!(
            f,
            "{:<w$}  {:>9}  {:>6}  {:>6}  {:>7}  equation",
            "law", "instances", "pass", "fail", "skipped"
        )?;
        for l in &self.laws {
            writeln!(
                f,
                "{:<w$}  {:>9}  {:>6}  {:>6}  {:>7}  {}",
                l.law_id,
                l.instances,
                l.passes,
                l.failures.len(),
                l.skipped,
                l.paper_ref
            )?;
            for msg in l.failures.iter().take(3) {
                writeln!(f, "    {msg}")?;
            }
            if l.failures.len() > 3 {
                writeln!(f, "    ... {} more", l.failures.len() - 3)?;
            }
        }
        write!(
            f,
            "{} laws, {} instances, {} failures, {} ms",
            self.laws.len(),
            self.instances(),
            self.failures(),
            self.wall_time_ms
        )
    }
}

fn render_row(k: &crate::finstoch::Kernel, i: usize) -> String {
    let parts: Vec<String> = k
        .row(i)
        .iter()
        .map(|(j, w)| format!("{}:{}", k.cod().label(*j), crate::rat::format_rat(w)))
        .collect();
    format!("{{{}}}", parts.join(", "))
}

enum Outcome {
    Pass,
    Fail(String),
    Skip,
}

fn check(law: &Law, inst: &Instance, ops: &Ops, span_limit: usize) -> Outcome {
    let (lhs, rhs) = match (law.build)(inst, ops) {
        Ok(p) => p,
        Err(e) => return Outcome::Fail(format!("{inst}: {e}")),
    };
    if lhs.span().max(rhs.span()) > span_limit {
        return Outcome::Skip;
    }
    if lhs.dom() != rhs.dom() || lhs.cod() != rhs.cod() {
        return Outcome::Fail(format!("{inst}: sides have different types"));
    }
    match lhs.first_difference(&rhs) {
        None => Outcome::Pass,
        Some(i) => Outcome::Fail(format!(
            "{inst}: differ at {}: {} vs {}",
            lhs.dom().label(i),
            render_row(&lhs, i),
            render_row(&rhs, i)
        )),
    }
}

/// Checks one law over the grid.
pub fn check_law(law: &Law, spec: &GridSpec, ops: &Ops) -> LawReport {
    let insts: Vec<Instance> = instances(spec, law.dims)
        .into_iter()
        .filter(|i| (law.applies)(i))
        .collect();
    let outcomes: Vec<Outcome> = insts
        .par_iter()
        .map(|i| check(law, i, ops, spec.span_limit))
        .collect();
    let mut report = LawReport {
        law_id: law.id.to_string(),
        paper_ref: law.anchor.to_string(),
        instances: 0,
        passes: 0,
        failures: Vec::new(),
        skipped: 0,
    };
    for o in outcomes {
        match o {
            Outcome::Pass => {
                report.instances += 1;
                report.passes += 1;
            }
            Outcome::Fail(msg) => {
                report.instances += 1;
                report.failures.push(msg);
            }
            Outcome::Skip => report.skipped += 1,
        }
    }
    report
}

/// Runs the selected laws (all when `selection` is `None`) over the grid.
/// Results come back in registry order whatever `jobs` is.
pub fn run_laws(
    spec: &GridSpec,
    selection: Option<&[String]>,
    jobs: Option<usize>,
    ops: &Ops,
) -> Result<Report> {
    let registry = law_registry();
    let chosen: Vec<Law> = match selection {
        None => registry,
        Some(ids) => {
            for id in ids {
                if !registry.iter().any(|l| l.id == id) {
                    return Err(Error::UnknownLaw(id.clone()));
                }
            }
            registry
                .into_iter()
                .filter(|l| ids.iter().any(|id| id == l.id))
                .collect()
        }
    };
    let start = Instant::now();
    let run = || -> Vec<LawReport> { chosen.par_iter().map(|l| check_law(l, spec, ops)).collect() };
    let laws = match jobs {
        Some(n) => rayon::ThreadPoolBuilder::new()
            .num_threads(n.max(1))
            .build()
            .map_err(|e| Error::Invalid(e.to_string()))?
            .install(run),
        None => run(),
    };
    Ok(Report {
        laws,
        wall_time_ms: start.elapsed().as_millis() as u64,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn unknown_and_empty_selections() {
        let spec = GridSpec::with_bounds(2, 2);
        let bad = vec!["no-such-law".to_string()];
        assert!(matches!(
            run_laws(&spec, Some(&bad), Some(1), &Ops::default()),
            Err(Error::UnknownLaw(_))
        ));
        let r = run_laws(&spec, Some(&[]), None, &Ops::default()).unwrap();
        assert!(r.laws.is_empty());
    }

    #[test]
    fn registry_ids_are_unique() {
        let reg = law_registry();
        let mut ids: Vec<_> = reg.iter().map(|l| l.id).collect();
        ids.sort();
        ids.dedup();
        assert_eq!(ids.len(), reg.len());
    }

    #[test]
    fn small_grid_passes_and_is_deterministic() {
        let spec = GridSpec::with_bounds(2, 2);
        let a = run_laws(&spec, None, Some(1), &Ops::default()).unwrap();
        assert!(a.ok(), "{a}");
        let b = run_laws(&spec, None, Some(4), &Ops::default()).unwrap();
        assert_eq!(a.laws, b.laws);
    }
}
