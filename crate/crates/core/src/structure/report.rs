use std::fmt;

use crate::expr::Poly;
use crate::oracle::SamplePoint;
use crate::tensor::{Metric, OneForm, Tensor11, VectorField};

/// How an entry was decided.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CheckMode {
    /// Every residual component is the zero polynomial.
    Symbolic,
    /// Exact evaluation at the report's sample points.
    Numeric,
}

impl fmt::Display for CheckMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            CheckMode::Symbolic => "symbolic",
            CheckMode::Numeric => "numeric",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReportEntry {
    pub name: String,
    pub holds: bool,
    pub mode: CheckMode,
    /// Nonzero residual components as `(label, value)`.
    pub residual: Vec<(String, Poly)>,
    pub detail: Option<String>,
    /// Reported but excluded from the verdict.
    pub informational: bool,
}

impl ReportEntry {
    /// A symbolic entry; holds iff every component is zero.
    pub fn symbolic(name: impl Into<String>, components: impl IntoIterator<Item = (String, Poly)>) -> Self {
        let residual: Vec<_> = components.into_iter().filter(|(_, p)| !p.is_zero()).collect();
        Self { name: name.into(), holds: residual.is_empty(), mode: CheckMode::Symbolic, residual, detail: None, informational: false }
    }

    pub fn numeric(name: impl Into<String>, holds: bool, detail: impl Into<String>) -> Self {
        Self {
            name: name.into(),
            holds,
            mode: CheckMode::Numeric,
            residual: Vec::new(),
            detail: Some(detail.into()),
            informational: false,
        }
    }

    pub fn informational(mut self) -> Self {
        self.informational = true;
        self
    }

    pub fn with_detail(mut self, detail: impl Into<String>) -> Self {
        self.detail = Some(detail.into());
        self
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct StructureReport {
    pub title: String,
    pub entries: Vec<ReportEntry>,
    pub points: Vec<SamplePoint>,
}

impl StructureReport {
    pub fn new(title: impl Into<String>) -> Self {
        Self { title: title.into(), ..Self::default() }
    }

    pub fn push(&mut self, entry: ReportEntry) {
        self.entries.push(entry);
    }

    pub fn extend(&mut self, other: StructureReport) {
        self.entries.extend(other.entries);
        for p in other.points {
            if !self.points.contains(&p) {
                self.points.push(p);
            }
        }
    }

    /// True iff every non-informational entry holds.
    pub fn holds(&self) -> bool {
        self.entries.iter().filter(|e| !e.informational).all(|e| e.holds)
    }

    pub fn entry(&self, name: &str) -> Option<&ReportEntry> {
        self.entries.iter().find(|e| e.name == name)
    }

    pub fn failures(&self) -> impl Iterator<Item = &ReportEntry> {
        self.entries.iter().filter(|e| !e.informational && !e.holds)
    }
}

impl fmt::Display for StructureReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{}", self.title)?;
        for e in &self.entries {
            let verdict = if e.holds { "PASS" } else { "FAIL" };
            let info = if e.informational { " (informational)" } else { "" };
            write!(f, "  {}: {verdict} [{}]{info}", e.name, e.mode)?;
            if let Some(d) = &e.detail {
                write!(f, " {d}")?;
            }
            writeln!(f)?;
            for (label, p) in &e.residual {
                writeln!(f, "    residual {label} = {p}")?;
            }
        }
        if !self.points.is_empty() {
            writeln!(f, "  sample points:")?;
            for p in &self.points {
                writeln!(f, "    {p}")?;
            }
        }
        write!(f, "  verdict: {}", if self.holds() { "PASS" } else { "FAIL" })
    }
}

pub(crate) fn tensor_components(t: &Tensor11) -> Vec<(String, Poly)> {
    let mut out = Vec::new();
    for (r, row) in t.rows().iter().enumerate() {
        for (c, p) in row.iter().enumerate() {
            out.push((format!("[{}][{}]", t.chart().name(r), t.chart().name(c)), p.clone()));
        }
    }
    out
}

pub(crate) fn metric_components(g: &Metric) -> Vec<(String, Poly)> {
    let mut out = Vec::new();
    for (r, row) in g.rows().iter().enumerate() {
        for (c, p) in row.iter().enumerate().skip(r) {
            out.push((format!("[{}][{}]", g.chart().name(r), g.chart().name(c)), p.clone()));
        }
    }
    out
}

pub(crate) fn vector_components(tag: &str, v: &VectorField) -> Vec<(String, Poly)> {
    v.comp().iter().enumerate().map(|(i, p)| (format!("{tag}[{}]", v.chart().name(i)), p.clone())).collect()
}

pub(crate) fn oneform_components(tag: &str, w: &OneForm) -> Vec<(String, Poly)> {
    w.comp().iter().enumerate().map(|(i, p)| (format!("{tag}[{}]", w.chart().name(i)), p.clone())).collect()
}
