//! Per-group and corpus-wide verification runs, rendered as JSON or markdown.

use std::collections::BTreeMap;
use std::fmt::Write;
use std::time::{Duration, Instant};

use rayon::prelude::*;
use serde::Serialize;

use super::{
    check_nilpotent_reduction, verify_linear_shift_lemma, verify_product_classification,
    verify_self_product_lemma, CaseTag, Corpus, EtaSpectrum, ExamplesReport, RowIndex, VerificationReport,
};
use crate::chartable::table_for;
use crate::constructions::{build_from_text, BuildOptions};
use crate::error::{Error, Result};
use crate::numtheory::is_prime;

/// Results of every check on one group at one prime.
#[derive(Debug, Clone, Serialize)]
pub struct GroupReport {
    pub name: String,
    pub spec: String,
    pub order: usize,
    pub classes: usize,
    pub prime: u64,
    pub classification: VerificationReport,
    /// Shape counts of `chi conj(chi)` over the degree-`p` rows (p-groups only).
    pub self_product: BTreeMap<CaseTag, usize>,
    pub self_product_violations: Vec<String>,
    pub linear_shift_checked: usize,
    pub linear_shift_failures: Vec<String>,
    pub reduction_mismatches: Vec<String>,
    pub pass: bool,
    #[serde(skip)]
    pub elapsed: Duration,
}

/// Runs the classification sweep and both lemma checks on one group.
pub fn run_group(name: &str, spec: &str, p: u64, opts: &BuildOptions, linear_shift: bool) -> Result<GroupReport> {
    let start = Instant::now();
    let built = build_from_text(spec, opts)?;
    let table = table_for(&built);
    let classification = verify_product_classification(&table, p, name)?;

    let mut self_product = BTreeMap::new();
    let mut self_product_violations = Vec::new();
    if table.group().p_group_prime() == Some(p) {
        for chi in (0..table.len()).filter(|&r| table.degree(r) == p) {
            match verify_self_product_lemma(&table, chi) {
                Ok((tag, _)) => *self_product.entry(tag).or_insert(0) += 1,
                Err(e) => self_product_violations.push(format!("row {chi}: {e}")),
            }
        }
    }

    let mut linear_shift_checked = 0;
    let mut linear_shift_failures = Vec::new();
    if linear_shift && is_prime(p) {
        let index = RowIndex::new(&table);
        let pairs: Vec<(usize, usize)> = classification.results.iter().map(|r| (r.chi, r.psi)).collect();
        let outcomes: Vec<Result<super::LinearShiftOutcome>> = pairs
            .par_iter()
            .map(|&(chi, psi)| verify_linear_shift_lemma(&table, &index, chi, psi))
            .collect();
        for o in outcomes {
            let o = o?;
            linear_shift_checked += 1;
            if let Some(w) = o.witness {
                linear_shift_failures.push(format!("rows ({}, {}): {w}", o.chi, o.psi));
            }
        }
    }

    let reduction_mismatches = check_nilpotent_reduction(&built, &table, p)?;
    let pass = classification.pass
        && self_product_violations.is_empty()
        && linear_shift_failures.is_empty()
        && reduction_mismatches.is_empty();
    Ok(GroupReport {
        name: name.to_string(),
        spec: spec.to_string(),
        order: table.group().order(),
        classes: table.len(),
        prime: p,
        classification,
        self_product,
        self_product_violations,
        linear_shift_checked,
        linear_shift_failures,
        reduction_mismatches,
        pass,
        elapsed: start.elapsed(),
    })
}

#[derive(Debug, Clone, Serialize)]
pub struct CorpusReport {
    pub groups: Vec<GroupReport>,
    /// Stretch entries left out of this run.
    pub skipped: Vec<String>,
    pub pass: bool,
}

/// Runs [`run_group`] over every corpus entry and listed prime.
pub fn run_corpus(corpus: &Corpus, opts: &BuildOptions) -> Result<CorpusReport> {
    let mut groups = Vec::new();
    let mut skipped = Vec::new();
    for entry in &corpus.groups {
        if entry.stretch && !opts.stretch {
            skipped.push(entry.name.clone());
            continue;
        }
        for &p in &entry.primes {
            // the linear-shift sweep is quadratic in the table size; the stretch group skips it
            groups.push(run_group(&entry.name, &entry.spec, p, opts, !entry.stretch)?);
        }
    }
    let pass = groups.iter().all(|g| g.pass);
    Ok(CorpusReport { groups, skipped, pass })
}

fn verdict(pass: bool) -> &'static str {
    if pass {
        "PASS"
    } else {
        "FAIL"
    }
}

pub trait Markdown {
    fn to_markdown(&self) -> String;
}

impl Markdown for VerificationReport {
    fn to_markdown(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "## {} (order {}), p = {}: {}\n", self.group, self.order, self.prime, verdict(self.pass));
        let _ = writeln!(s, "- ordered pairs checked: {}", self.pairs_checked);
        let _ = writeln!(s, "- unordered pairs reported: {}", self.results.len());
        let _ = writeln!(s, "- eta values: {:?}", self.eta_values);
        for (tag, n) in &self.case_counts {
            let _ = writeln!(s, "- {tag:?}: {n}");
        }
        if !self.results.is_empty() {
            let _ = writeln!(s, "\n| chi | psi | degrees | case | eta | multiplicities |");
            let _ = writeln!(s, "|---|---|---|---|---|---|");
            for r in &self.results {
                let (case, eta, mults) = match &r.case {
                    Some(c) => (format!("{:?}", c.tag), c.eta.to_string(), format!("{:?}", c.multiplicity_profile)),
                    None => ("violation".into(), "-".into(), "-".into()),
                };
                let _ = writeln!(
                    s,
                    "| {} | {} | {}x{} | {case} | {eta} | {mults} |",
                    r.chi, r.psi, r.chi_degree, r.psi_degree
                );
            }
        }
        for v in &self.violations {
            let _ = writeln!(s, "\n- violation: {v}");
        }
        s
    }
}

impl Markdown for GroupReport {
    fn to_markdown(&self) -> String {
        let mut s = self.classification.to_markdown();
        let _ = writeln!(s, "\n- group: `{}` ({} classes)", self.spec, self.classes);
        if !self.self_product.is_empty() || !self.self_product_violations.is_empty() {
            let _ = writeln!(s, "- chi conj(chi) shapes: {:?}", self.self_product);
        }
        let _ = writeln!(s, "- linear-shift pairs checked: {}", self.linear_shift_checked);
        for v in self
            .self_product_violations
            .iter()
            .chain(&self.linear_shift_failures)
            .chain(&self.reduction_mismatches)
        {
            let _ = writeln!(s, "- failure: {v}");
        }
        let _ = writeln!(s, "- overall: {}", verdict(self.pass));
        s
    }
}

impl Markdown for CorpusReport {
    fn to_markdown(&self) -> String {
        let mut s = format!("# Corpus verification: {}\n\n", verdict(self.pass));
        let _ = writeln!(s, "| group | order | p | pairs | eta values | result |");
        let _ = writeln!(s, "|---|---|---|---|---|---|");
        for g in &self.groups {
            let _ = writeln!(
                s,
                "| {} | {} | {} | {} | {:?} | {} |",
                g.name,
                g.order,
                g.prime,
                g.classification.pairs_checked,
                g.classification.eta_values,
                verdict(g.pass)
            );
        }
        if !self.skipped.is_empty() {
            let _ = writeln!(s, "\nSkipped (stretch only): {}", self.skipped.join(", "));
        }
        for g in &self.groups {
            s.push('\n');
            s.push_str(&g.to_markdown());
        }
        s
    }
}

impl Markdown for ExamplesReport {
    fn to_markdown(&self) -> String {
        let mut s = format!("# Examples at p = {}: {}\n", self.prime, verdict(self.pass));
        for o in &self.outcomes {
            let status = match &o.skipped {
                Some(reason) => format!("SKIPPED ({reason})"),
                None => verdict(o.pass).to_string(),
            };
            let _ = writeln!(s, "\n## {} on `{}`: {status}\n", o.name, o.group);
            let _ = writeln!(s, "- claim: {}", o.claim);
            if !o.observed.is_empty() {
                let _ = writeln!(s, "- observed: {}", o.observed);
            }
        }
        s
    }
}

impl Markdown for EtaSpectrum {
    fn to_markdown(&self) -> String {
        let mut s = format!("# eta spectrum, p = {}, degree-{} pairs\n\n", self.prime, self.degree);
        let _ = writeln!(s, "| eta | witness |");
        let _ = writeln!(s, "|---|---|");
        for (eta, (a, b)) in &self.values {
            let _ = writeln!(s, "| {eta} | ({a}, {b}) |");
        }
        s
    }
}

/// Serializes any report as pretty JSON with a trailing newline.
pub fn to_json<T: Serialize>(value: &T) -> Result<String> {
    serde_json::to_string_pretty(value)
        .map(|s| s + "\n")
        .map_err(|e| Error::Io(e.to_string()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reports_are_deterministic() {
        let opts = BuildOptions::default();
        let a = run_group("E27", "extraspecial:p=3,exp=p", 3, &opts, true).unwrap();
        let b = run_group("E27", "extraspecial:p=3,exp=p", 3, &opts, true).unwrap();
        assert_eq!(to_json(&a).unwrap(), to_json(&b).unwrap());
        assert_eq!(a.to_markdown(), b.to_markdown());
        assert!(a.pass);
        assert_eq!(a.self_product.get(&CaseTag::SumOfLinears), Some(&2));
    }

    #[test]
    fn corpus_without_stretch() {
        let r = run_corpus(&Corpus::builtin(), &BuildOptions::default()).unwrap();
        assert!(r.pass, "{}", r.to_markdown());
        assert_eq!(r.skipped, vec!["C5wrC5".to_string()]);
        assert_eq!(r.groups.len(), 10);
    }
}
