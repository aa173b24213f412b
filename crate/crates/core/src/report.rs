//! Report documents produced by the command line tool.
//!
//! Every report renders to deterministic text via `Display` and to JSON via
//! serde; scalars are carried as their canonical `p` / `p/q` strings.

use std::fmt::{self, Display, Formatter};

use serde::{Deserialize, Serialize};

use crate::decompose::{Component, DecompositionReport, MinimalityVerdict};
use crate::identities::IdentityReport;
use crate::jideal::{IdealWitness, SplitMode, SplitSystem};
use crate::linalg::Vector;
use crate::scalar::Scalar;
use crate::system::TripleSystem;

/// At most this many identity violations are listed individually.
pub const MAX_LISTED_VIOLATIONS: usize = 50;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Source {
    pub file: String,
    pub hash: String,
    pub dim: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EntryDto {
    pub i: usize,
    pub j: usize,
    pub k: usize,
    pub coeff: String,
    pub target: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ViolationDto {
    pub identity: String,
    pub tuple: [usize; 5],
    pub residual: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerifyReport {
    pub source: Source,
    pub family: String,
    pub cap: usize,
    pub leibniz: bool,
    /// Always true: the file format only admits tables on a multiplicative basis.
    pub multiplicative: bool,
    pub violation_count: usize,
    pub violations: Vec<ViolationDto>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct JidealReport {
    pub source: Source,
    pub generators: Vec<[usize; 3]>,
    pub closure_rounds: usize,
    pub basis: Vec<Vec<String>>,
    pub adapted: bool,
    pub iset: Option<Vec<usize>>,
    pub jset: Option<Vec<usize>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SplitReport {
    pub source: Source,
    pub mode: String,
    pub iset: Vec<usize>,
    pub jset: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComponentDto {
    pub id: usize,
    pub indices: Vec<usize>,
    pub iset: Vec<usize>,
    pub jset: Vec<usize>,
    /// Products in the indices of the whole system.
    pub entries: Vec<EntryDto>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DecomposeReport {
    pub source: Source,
    pub mode: String,
    pub iset: Vec<usize>,
    pub jset: Vec<usize>,
    pub classes: Vec<Vec<usize>>,
    pub components: Vec<ComponentDto>,
    pub orthogonality: Vec<Vec<bool>>,
    pub ideal_flags: Vec<bool>,
    pub covers: bool,
    pub leaks: Vec<[usize; 3]>,
    pub holds: bool,
    /// The partition of the other connection mode, when it differs.
    pub other_mode_classes: Option<Vec<Vec<usize>>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MinimalReport {
    pub source: Source,
    pub mode: String,
    pub verdict: String,
    pub mu_multiplicative: bool,
    pub mu_counterexample: Option<String>,
    pub i_connected: bool,
    pub j_connected: bool,
    pub oracle_used: bool,
    pub counterexample_ideal: Option<Vec<usize>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LiftReport {
    pub source: Source,
    pub system: String,
    pub system_hash: String,
}

/// The whole pipeline; later stages are absent when an earlier one failed.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PipelineReport {
    pub verify: Option<VerifyReport>,
    pub jideal: JidealReport,
    pub split: Option<SplitReport>,
    pub decompose: Option<DecomposeReport>,
    pub minimal: Option<MinimalReport>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "command", rename_all = "kebab-case")]
#[allow(clippy::large_enum_variant)]
pub enum Report {
    Verify(VerifyReport),
    Jideal(JidealReport),
    Split(SplitReport),
    Decompose(DecomposeReport),
    Minimal(MinimalReport),
    LiftLeibniz(LiftReport),
    Report(PipelineReport),
}

fn coords<F: Scalar>(v: &Vector<F>) -> Vec<String> {
    v.coords().iter().map(ToString::to_string).collect()
}

fn entries_of<F: Scalar>(sys: &TripleSystem<F>, rename: impl Fn(usize) -> usize) -> Vec<EntryDto> {
    sys.entries()
        .map(|(&(i, j, k), p)| EntryDto {
            i: rename(i),
            j: rename(j),
            k: rename(k),
            coeff: p.coeff.to_string(),
            target: rename(p.target),
        })
        .collect()
}

fn split_mode_name(mode: SplitMode) -> String {
    match mode {
        SplitMode::Leibniz => "leibniz".into(),
        SplitMode::Generic => "generic".into(),
    }
}

impl VerifyReport {
    pub fn new<F: Scalar>(source: Source, cap: usize, report: &IdentityReport<F>) -> Self {
        VerifyReport {
            source,
            family: report.family.to_string(),
            cap,
            leibniz: report.is_satisfied(),
            multiplicative: true,
            violation_count: report.violations.len(),
            violations: report
                .violations
                .iter()
                .take(MAX_LISTED_VIOLATIONS)
                .map(|v| ViolationDto {
                    identity: v.identity.to_string(),
                    tuple: v.tuple,
                    residual: coords(&v.residual),
                })
                .collect(),
        }
    }
}

impl JidealReport {
    pub fn new<F: Scalar>(source: Source, witness: &IdealWitness<F>) -> Self {
        let support = witness.subspace.unit_support().ok();
        let jset = support.as_ref().map(|iset| (1..=source.dim).filter(|k| !iset.contains(k)).collect());
        JidealReport {
            generators: witness.generators.iter().map(|&(i, j, k)| [i, j, k]).collect(),
            closure_rounds: witness.closure_rounds,
            basis: witness.subspace.rows().iter().map(coords).collect(),
            adapted: support.is_some(),
            iset: support,
            jset,
            source,
        }
    }
}

impl SplitReport {
    pub fn new<F: Scalar>(source: Source, s: &SplitSystem<F>) -> Self {
        SplitReport { source, mode: split_mode_name(s.mode()), iset: s.iset().to_vec(), jset: s.jset().to_vec() }
    }
}

impl ComponentDto {
    pub fn new<F: Scalar>(c: &Component<F>) -> Self {
        ComponentDto {
            id: c.id(),
            indices: c.indices.clone(),
            iset: c.iset_part.clone(),
            jset: c.jset_part.clone(),
            entries: entries_of(&c.subsystem, |l| c.parent_index(l)),
        }
    }
}

impl DecomposeReport {
    pub fn new<F: Scalar>(
        source: Source,
        s: &SplitSystem<F>,
        report: &DecompositionReport<F>,
        other_mode_classes: Option<Vec<Vec<usize>>>,
    ) -> Self {
        DecomposeReport {
            source,
            mode: report.mode.to_string(),
            iset: s.iset().to_vec(),
            jset: s.jset().to_vec(),
            classes: report.components.iter().map(|c| c.indices.clone()).collect(),
            components: report.components.iter().map(ComponentDto::new).collect(),
            orthogonality: report.orthogonality.clone(),
            ideal_flags: report.ideal_flags.clone(),
            covers: report.covers,
            leaks: report.leaks.iter().map(|l| [l.entry.0, l.entry.1, l.entry.2]).collect(),
            holds: report.all_hold(),
            other_mode_classes,
        }
    }
}

impl MinimalReport {
    pub fn new(source: Source, v: &MinimalityVerdict) -> Self {
        MinimalReport {
            source,
            mode: v.mode.to_string(),
            verdict: v.verdict.to_string(),
            mu_multiplicative: v.mu_multiplicative,
            mu_counterexample: v.mu_counterexample.map(|c| c.to_string()),
            i_connected: v.i_connected,
            j_connected: v.j_connected,
            oracle_used: v.oracle_used,
            counterexample_ideal: v.counterexample_ideal.clone(),
        }
    }
}

fn yes(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

struct Set<'a>(&'a [usize]);

impl Display for Set<'_> {
    fn fmt(&self, f: &mut Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(ToString::to_string).collect();
        write!(f, "{{{}}}", parts.join(","))
    }
}

struct Classes<'a>(&'a [Vec<usize>]);

impl Display for Classes<'_> {
    fn fmt(&self, f: &mut Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|c| Set(c).to_string()).collect();
        f.write_str(&parts.join(" "))
    }
}

impl Display for Source {
    fn fmt(&self, f: &mut Formatter<'_>) -> fmt::Result {
        writeln!(f, "file: {}", self.file)?;
        writeln!(f, "hash: {}", self.hash)?;
        writeln!(f, "dim: {}", self.dim)
    }
}

impl Display for EntryDto {
    fn fmt(&self, f: &mut Formatter<'_>) -> fmt::Result {
        write!(f, "prod {} {} {} = {} * {}", self.i, self.j, self.k, self.coeff, self.target)
    }
}

impl Display for VerifyReport {
    fn fmt(&self, f: &mut Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.source)?;
        writeln!(f, "family: {}", self.family)?;
        writeln!(f, "leibniz: {}; multiplicative: {}", yes(self.leibniz), yes(self.multiplicative))?;
        if self.violation_count > 0 {
            writeln!(f, "violations: {}", self.violation_count)?;
            for v in &self.violations {
                let t: Vec<String> = v.tuple.iter().map(ToString::to_string).collect();
                writeln!(f, "  {} at ({}): ({})", v.identity, t.join(","), v.residual.join(","))?;
            }
            if self.violation_count > self.violations.len() {
                writeln!(f, "  ... {} more", self.violation_count - self.violations.len())?;
            }
        }
        Ok(())
    }
}

impl Display for JidealReport {
    fn fmt(&self, f: &mut Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.source)?;
        let gens: Vec<String> = self.generators.iter().map(|[i, j, k]| format!("({i},{j},{k})")).collect();
        writeln!(f, "nonzero generators: {}", if gens.is_empty() { "none".into() } else { gens.join(" ") })?;
        writeln!(f, "closure rounds: {}", self.closure_rounds)?;
        if self.basis.is_empty() {
            writeln!(f, "jideal: 0")?;
        } else {
            writeln!(f, "jideal: rank {}", self.basis.len())?;
            for row in &self.basis {
                writeln!(f, "  ({})", row.join(","))?;
            }
        }
        writeln!(f, "adapted: {}", yes(self.adapted))?;
        if let (Some(i), Some(j)) = (&self.iset, &self.jset) {
            writeln!(f, "I = {}", Set(i))?;
            writeln!(f, "J = {}", Set(j))?;
        }
        Ok(())
    }
}

impl Display for SplitReport {
    fn fmt(&self, f: &mut Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.source)?;
        writeln!(f, "mode: {}", self.mode)?;
        writeln!(f, "I = {}", Set(&self.iset))?;
        writeln!(f, "J = {}", Set(&self.jset))
    }
}

impl Display for DecomposeReport {
    fn fmt(&self, f: &mut Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.source)?;
        writeln!(f, "mode: {}", self.mode)?;
        writeln!(f, "I = {}", Set(&self.iset))?;
        writeln!(f, "J = {}", Set(&self.jset))?;
        writeln!(f, "classes: {}", Classes(&self.classes))?;
        for c in &self.components {
            writeln!(f, "component {} = {} (I {}, J {})", c.id, Set(&c.indices), Set(&c.iset), Set(&c.jset))?;
            if c.entries.is_empty() {
                writeln!(f, "  zero product")?;
            }
            for e in &c.entries {
                writeln!(f, "  {e}")?;
            }
        }
        writeln!(f, "orthogonality:")?;
        for row in &self.orthogonality {
            let cells: Vec<&str> = row.iter().map(|&b| if b { "1" } else { "0" }).collect();
            writeln!(f, "  {}", cells.join(" "))?;
        }
        let flags: Vec<&str> = self.ideal_flags.iter().map(|&b| yes(b)).collect();
        writeln!(f, "ideals: {}", flags.join(" "))?;
        writeln!(f, "covers: {}", yes(self.covers))?;
        if !self.leaks.is_empty() {
            let leaks: Vec<String> = self.leaks.iter().map(|[i, j, k]| format!("({i},{j},{k})")).collect();
            writeln!(f, "leaking entries: {}", leaks.join(" "))?;
        }
        if let Some(other) = &self.other_mode_classes {
            let other_mode = if self.mode == "literal" { "restricted" } else { "literal" };
            writeln!(f, "{other_mode} classes differ: {}", Classes(other))?;
        }
        writeln!(f, "decomposition: {}", if self.holds { "holds" } else { "fails" })
    }
}

impl Display for MinimalReport {
    fn fmt(&self, f: &mut Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.source)?;
        writeln!(f, "mode: {}", self.mode)?;
        match &self.mu_counterexample {
            Some(c) => writeln!(f, "mu-multiplicative: no, counterexample {c}")?,
            None => writeln!(f, "mu-multiplicative: yes")?,
        }
        writeln!(f, "I connected: {}", yes(self.i_connected))?;
        writeln!(f, "J connected: {}", yes(self.j_connected))?;
        writeln!(f, "oracle used: {}", yes(self.oracle_used))?;
        writeln!(f, "verdict: {}", self.verdict)?;
        if let Some(ideal) = &self.counterexample_ideal {
            writeln!(f, "counterexample ideal: {}", Set(ideal))?;
        }
        Ok(())
    }
}

impl Display for LiftReport {
    fn fmt(&self, f: &mut Formatter<'_>) -> fmt::Result {
        writeln!(f, "# lifted from {}", self.source.file)?;
        writeln!(f, "# bracket hash {}", self.source.hash)?;
        f.write_str(&self.system)
    }
}

impl Display for PipelineReport {
    fn fmt(&self, f: &mut Formatter<'_>) -> fmt::Result {
        if let Some(v) = &self.verify {
            writeln!(f, "[verify]\n{v}")?;
        }
        writeln!(f, "[jideal]\n{}", self.jideal)?;
        if let Some(s) = &self.split {
            writeln!(f, "[split]\n{s}")?;
        }
        if let Some(d) = &self.decompose {
            writeln!(f, "[decompose]\n{d}")?;
        }
        if let Some(m) = &self.minimal {
            writeln!(f, "[minimal]\n{m}")?;
        }
        Ok(())
    }
}

impl Display for Report {
    fn fmt(&self, f: &mut Formatter<'_>) -> fmt::Result {
        match self {
            Report::Verify(r) => r.fmt(f),
            Report::Jideal(r) => r.fmt(f),
            Report::Split(r) => r.fmt(f),
            Report::Decompose(r) => r.fmt(f),
            Report::Minimal(r) => r.fmt(f),
            Report::LiftLeibniz(r) => r.fmt(f),
            Report::Report(r) => r.fmt(f),
        }
    }
}
