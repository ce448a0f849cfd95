//! Executable checks of the classification of products of prime-degree
//! characters of nilpotent groups, over single groups and over the corpus.

mod corpus;
mod examples;
mod report;

use std::collections::{BTreeMap, HashMap};
use std::time::{Duration, Instant};

use rayon::prelude::*;
use serde::Serialize;

pub use corpus::{Corpus, CorpusEntry};
pub use examples::{reproduce_examples, ExampleOutcome, ExamplesReport};
pub use report::{run_corpus, run_group, to_json, CorpusReport, GroupReport, Markdown};

use crate::chartable::{table_for, CharacterTable};
use crate::charops::{decompose_product, Decomposition};
use crate::constructions::Built;
use crate::error::{Error, Result};
use crate::modp::Fp;
use crate::numtheory::is_prime;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum CaseTag {
    /// Sum of `p^2` distinct linear characters.
    SumOfLinears,
    /// `p` distinct linear and `p - 1` distinct degree-`p` constituents.
    MixedLinearAndDegreeP,
    /// Every constituent has degree `p`, with `eta = 1` or `(p+1)/2 <= eta <= p`.
    AllDegreeP,
    Irreducible,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ProductCase {
    pub tag: CaseTag,
    pub eta: usize,
    pub constituents: Decomposition,
    /// Constituent degree -> number of distinct constituents of that degree.
    pub degree_histogram: BTreeMap<u64, usize>,
    /// Multiplicities, descending.
    pub multiplicity_profile: Vec<u64>,
}

fn histogram(table: &CharacterTable, d: &Decomposition) -> BTreeMap<u64, usize> {
    let mut h = BTreeMap::new();
    for r in d.rows() {
        *h.entry(table.degree(r)).or_insert(0) += 1;
    }
    h
}

/// Assigns the matching case to a decomposition of a product `chi psi` with `chi(1) = p`.
pub fn classify_decomposition(table: &CharacterTable, d: &Decomposition, p: u64) -> Result<ProductCase> {
    let degree_histogram = histogram(table, d);
    let mut multiplicity_profile: Vec<u64> = d.constituents.iter().map(|&(_, m)| m).collect();
    multiplicity_profile.sort_unstable_by(|a, b| b.cmp(a));
    let eta = d.eta;
    let all_simple = multiplicity_profile.iter().all(|&m| m == 1);
    let count = |deg: u64| degree_histogram.get(&deg).copied().unwrap_or(0);
    let all_degree = |deg: u64| count(deg) == eta;
    let p_us = p as usize;

    let tag = if eta == 1 && all_simple {
        CaseTag::Irreducible
    } else if all_degree(1) && all_simple && eta == p_us * p_us {
        CaseTag::SumOfLinears
    } else if all_simple && count(1) == p_us && count(p) == p_us - 1 && eta == 2 * p_us - 1 {
        CaseTag::MixedLinearAndDegreeP
    } else if all_degree(p) && (eta == 1 || (2 * eta > p_us && eta <= p_us)) {
        CaseTag::AllDegreeP
    } else {
        return Err(Error::TheoremViolation(format!(
            "no case matches: eta = {eta}, degrees {degree_histogram:?}, multiplicities {multiplicity_profile:?}"
        )));
    };
    Ok(ProductCase {
        tag,
        eta,
        constituents: d.clone(),
        degree_histogram,
        multiplicity_profile,
    })
}

fn require_nilpotent(table: &CharacterTable) -> Result<()> {
    table
        .group()
        .sylow_decomposition()
        .map(|_| ())
        .map_err(|e| Error::HypothesisViolation(e.to_string()))
}

fn require_degrees(table: &CharacterTable, chi: usize, psi: usize, p: u64) -> Result<()> {
    table.check_row(chi)?;
    table.check_row(psi)?;
    if !is_prime(p) || table.degree(chi) != p {
        return Err(Error::HypothesisViolation(format!(
            "chi = row {chi} has degree {}, expected the prime {p}",
            table.degree(chi)
        )));
    }
    if !is_prime(table.degree(psi)) {
        return Err(Error::HypothesisViolation(format!(
            "psi = row {psi} has degree {}, which is not prime",
            table.degree(psi)
        )));
    }
    Ok(())
}

/// Decomposes `chi psi` and classifies it. `TheoremViolation` means the classification failed.
pub fn classify_product(table: &CharacterTable, chi: usize, psi: usize, p: u64) -> Result<ProductCase> {
    require_degrees(table, chi, psi, p)?;
    require_nilpotent(table)?;
    classify_decomposition(table, &decompose_product(table, chi, psi)?, p)
}

/// One unordered pair of the sweep.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PairRecord {
    pub chi: usize,
    pub psi: usize,
    pub chi_degree: u64,
    pub psi_degree: u64,
    /// Whether `(psi, chi)` was also an admissible ordered pair.
    pub both_orders: bool,
    pub case: Option<ProductCase>,
    pub violation: Option<String>,
}

#[derive(Debug, Clone, Serialize)]
pub struct VerificationReport {
    pub group: String,
    pub order: usize,
    pub prime: u64,
    pub pairs_checked: usize,
    pub results: Vec<PairRecord>,
    pub case_counts: BTreeMap<CaseTag, usize>,
    pub eta_values: Vec<usize>,
    pub violations: Vec<String>,
    pub skipped: Vec<String>,
    pub pass: bool,
    #[serde(skip)]
    pub elapsed: Duration,
}

/// Classifies every ordered pair `(chi, psi)` with `chi(1) = p` and `psi(1)` prime.
pub fn verify_product_classification(table: &CharacterTable, p: u64, group_name: &str) -> Result<VerificationReport> {
    let start = Instant::now();
    if !is_prime(p) {
        return Err(Error::HypothesisViolation(format!("{p} is not prime")));
    }
    require_nilpotent(table)?;
    let n = table.len();
    let admissible = |chi: usize, psi: usize| table.degree(chi) == p && is_prime(table.degree(psi));
    let mut unordered = Vec::new();
    let mut pairs_checked = 0;
    for a in 0..n {
        for b in a..n {
            let (ab, ba) = (admissible(a, b), admissible(b, a) && a != b);
            pairs_checked += ab as usize + ba as usize;
            if ab || ba {
                unordered.push((a, b, ab, ba));
            }
        }
    }
    let results: Vec<PairRecord> = unordered
        .par_iter()
        .map(|&(a, b, ab, ba)| {
            let (chi, psi) = if ab { (a, b) } else { (b, a) };
            let outcome = decompose_product(table, chi, psi)
                .and_then(|d| classify_decomposition(table, &d, p));
            let (case, violation) = match outcome {
                Ok(c) => (Some(c), None),
                Err(e) => (None, Some(format!("rows ({chi}, {psi}): {e}"))),
            };
            PairRecord {
                chi,
                psi,
                chi_degree: table.degree(chi),
                psi_degree: table.degree(psi),
                both_orders: ab && ba,
                case,
                violation,
            }
        })
        .collect();
    let mut case_counts = BTreeMap::new();
    let mut etas = std::collections::BTreeSet::new();
    let mut violations = Vec::new();
    for r in &results {
        if let Some(c) = &r.case {
            *case_counts.entry(c.tag).or_insert(0) += 1;
            etas.insert(c.eta);
        }
        if let Some(v) = &r.violation {
            violations.push(v.clone());
        }
    }
    Ok(VerificationReport {
        group: group_name.to_string(),
        order: table.group().order(),
        prime: p,
        pairs_checked,
        pass: violations.is_empty(),
        results,
        case_counts,
        eta_values: etas.into_iter().collect(),
        violations,
        skipped: Vec::new(),
        elapsed: start.elapsed(),
    })
}

fn require_p_group_degree(table: &CharacterTable, chi: usize) -> Result<u64> {
    table.check_row(chi)?;
    let g = table.group();
    let p = g.p_group_prime().ok_or_else(|| {
        Error::HypothesisViolation(format!("group of order {} is not a p-group", g.order()))
    })?;
    if table.degree(chi) != p {
        return Err(Error::HypothesisViolation(format!(
            "row {chi} has degree {}, expected {p}",
            table.degree(chi)
        )));
    }
    Ok(p)
}

/// Shape of `chi conj(chi)` for `chi(1) = p` in a `p`-group: case (i) or (ii).
pub fn verify_self_product_lemma(table: &CharacterTable, chi: usize) -> Result<(CaseTag, Decomposition)> {
    let p = require_p_group_degree(table, chi)?;
    let d = decompose_product(table, chi, table.conjugate_row(chi))?;
    let h = histogram(table, &d);
    let simple = d.constituents.iter().all(|&(_, m)| m == 1);
    let count = |deg: u64| h.get(&deg).copied().unwrap_or(0);
    let p_us = p as usize;
    if simple && d.eta == p_us * p_us && count(1) == d.eta {
        Ok((CaseTag::SumOfLinears, d))
    } else if simple && count(1) == p_us && count(p) == p_us - 1 && d.eta == 2 * p_us - 1 {
        Ok((CaseTag::MixedLinearAndDegreeP, d))
    } else {
        Err(Error::TheoremViolation(format!(
            "row {chi}: chi conj(chi) has degrees {h:?} and multiplicities {:?}",
            d.constituents
        )))
    }
}

/// Row lookup by modular image; exact equality is confirmed on the dense values.
pub struct RowIndex<'a> {
    table: &'a CharacterTable,
    by_residue: HashMap<Vec<u64>, usize>,
}

impl<'a> RowIndex<'a> {
    pub fn new(table: &'a CharacterTable) -> Self {
        let by_residue = table
            .modular()
            .residues
            .iter()
            .enumerate()
            .map(|(r, v)| (v.clone(), r))
            .collect();
        RowIndex { table, by_residue }
    }

    /// Row equal to `theta_a * theta_b` (conjugated when `conj_b`), if that product is irreducible.
    pub fn product_row(&self, a: usize, b: usize, conj_b: bool) -> Option<usize> {
        let t = self.table;
        let mi = t.modular();
        let f = Fp(mi.prime);
        let inv = &t.classes().inverse_class;
        let b_at = |c: usize| if conj_b { inv[c] as usize } else { c };
        let res: Vec<u64> = (0..t.classes().len())
            .map(|c| f.mul(mi.residues[a][c], mi.residues[b][b_at(c)]))
            .collect();
        let row = *self.by_residue.get(&res)?;
        let r = t.ring();
        let exact = (0..t.classes().len()).all(|c| {
            r.mul(t.dense(a, c), t.dense(b, b_at(c))) == t.dense(row, c)
        });
        exact.then_some(row)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LinearShiftOutcome {
    pub chi: usize,
    pub psi: usize,
    /// Linear constituents of `chi psi` that were checked.
    pub linear_constituents: Vec<usize>,
    pub pass: bool,
    pub witness: Option<String>,
}

/// For each linear constituent `alpha` of `chi psi`: `psi conj(alpha) = conj(chi)`, and
/// the constituents of `chi conj(chi)` are `conj(alpha) alpha_i` with the same multiplicities.
pub fn verify_linear_shift_lemma(
    table: &CharacterTable,
    index: &RowIndex<'_>,
    chi: usize,
    psi: usize,
) -> Result<LinearShiftOutcome> {
    let d = decompose_product(table, chi, psi)?;
    let linear: Vec<usize> = d.rows().filter(|&r| table.is_linear(r)).collect();
    let chi_bar = table.conjugate_row(chi);
    let mut witness = None;
    if !linear.is_empty() {
        let self_product = decompose_product(table, chi, chi_bar)?;
        for &alpha in &linear {
            if index.product_row(psi, alpha, true) != Some(chi_bar) {
                witness = Some(format!("psi conj(alpha) != conj(chi) for alpha = row {alpha}"));
                break;
            }
            let mut shifted: Vec<(usize, u64)> = Vec::new();
            for &(r, m) in &d.constituents {
                match index.product_row(r, alpha, true) {
                    Some(s) => shifted.push((s, m)),
                    None => {
                        witness = Some(format!("conj(alpha) theta_{r} is not irreducible"));
                        break;
                    }
                }
            }
            shifted.sort_unstable();
            if witness.is_none() && shifted != self_product.constituents {
                witness = Some(format!(
                    "shifted constituents {shifted:?} differ from chi conj(chi) = {:?}",
                    self_product.constituents
                ));
            }
            if witness.is_some() {
                break;
            }
        }
    }
    Ok(LinearShiftOutcome {
        chi,
        psi,
        pass: witness.is_none(),
        linear_constituents: linear,
        witness,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct EtaSpectrum {
    pub prime: u64,
    /// Degree of the characters surveyed: `p`, or 1 when the group has none of degree `p`.
    pub degree: u64,
    /// Achieved eta with the first witness pair in row order.
    pub values: BTreeMap<usize, (usize, usize)>,
}

impl EtaSpectrum {
    pub fn etas(&self) -> Vec<usize> {
        self.values.keys().copied().collect()
    }
}

/// All values of `eta(chi psi)` over ordered pairs of degree-`p` irreducibles.
pub fn eta_spectrum(table: &CharacterTable, p: u64) -> Result<EtaSpectrum> {
    let g = table.group();
    if g.order() > 1 && g.p_group_prime() != Some(p) {
        return Err(Error::HypothesisViolation(format!(
            "group of order {} is not a {p}-group",
            g.order()
        )));
    }
    let mut degree = p;
    let mut rows: Vec<usize> = (0..table.len()).filter(|&r| table.degree(r) == p).collect();
    if rows.is_empty() {
        degree = 1;
        rows = (0..table.len()).filter(|&r| table.is_linear(r)).collect();
    }
    let pairs: Vec<(usize, usize)> = rows
        .iter()
        .flat_map(|&a| rows.iter().filter(move |&&b| b >= a).map(move |&b| (a, b)))
        .collect();
    let etas: Vec<Result<usize>> = pairs
        .par_iter()
        .map(|&(a, b)| decompose_product(table, a, b).map(|d| d.eta))
        .collect();
    let mut values: BTreeMap<usize, (usize, usize)> = BTreeMap::new();
    for (&(a, b), eta) in pairs.iter().zip(etas) {
        let eta = eta?;
        let e = values.entry(eta).or_insert((a, b));
        // the first witness in ordered-pair order
        if (a, b) < *e {
            *e = (a, b);
        }
    }
    Ok(EtaSpectrum {
        prime: p,
        degree,
        values,
    })
}

/// `p`-part consistency for `G = G1 x G2` with coprime factor orders: the case of
/// `(chi1 x chi2)(psi1 x psi2)` equals the case of `chi1 psi1` whenever `chi2, psi2` are linear.
pub fn check_nilpotent_reduction(built: &Built, table: &CharacterTable, p: u64) -> Result<Vec<String>> {
    let Some(dp) = &built.product else {
        return Ok(Vec::new());
    };
    let (lo, ro) = (dp.left.group.order(), dp.right.group.order());
    let is_p_power = |n: usize| n > 1 && crate::numtheory::factorize(n as u64).iter().all(|&(q, _)| q == p);
    let coprime = |n: usize| n % p as usize != 0;
    let p_left = if is_p_power(lo) && coprime(ro) {
        true
    } else if is_p_power(ro) && coprime(lo) {
        false
    } else {
        return Ok(Vec::new());
    };
    let factors = table.factors().expect("product tables carry factor rows");
    let sylow_table = table_for(if p_left { &dp.left } else { &dp.right });
    let split = |row: usize| {
        let (a, b) = factors[row];
        if p_left {
            (a, b)
        } else {
            (b, a)
        }
    };
    let other_is_linear = |row: usize| {
        let (_, o) = split(row);
        let other = table_for(if p_left { &dp.right } else { &dp.left });
        other.is_linear(o)
    };
    let mut mismatches = Vec::new();
    let rows: Vec<usize> = (0..table.len()).filter(|&r| table.degree(r) == p).collect();
    for &chi in &rows {
        for &psi in &rows {
            if !other_is_linear(chi) || !other_is_linear(psi) {
                continue;
            }
            let whole = classify_product(table, chi, psi, p)?;
            let part = classify_product(&sylow_table, split(chi).0, split(psi).0, p)?;
            if whole.tag != part.tag || whole.eta != part.eta {
                mismatches.push(format!(
                    "rows ({chi}, {psi}): {:?}/{} on the product, {:?}/{} on the Sylow factor",
                    whole.tag, whole.eta, part.tag, part.eta
                ));
            }
        }
    }
    Ok(mismatches)
}
