//! The line-oriented model definition format.
//!
//! ```text
//! # comment
//! chart x y t
//! connection y x x = 1            # Γ^y_{x x}: value, contracted, form
//! scalar f = x*y
//! vector xi1 = [0, 0, 1]          # or a sum such as x*d/dy + d/dt
//! oneform eta1 = [0, 0, 1]
//! tensor F = [[0,1,0],[1,0,0],[0,0,0]]
//! metric G = [[1,0,0],[0,1,0],[0,0,1]]
//! signs eps1=-1 eps2=+1
//! structure F xi=xi1 eta=eta1
//! profile a=+1 b=+1 mode=complete
//! options seed=7 points=10
//! ```

use std::fmt;

use sha2::{Digest, Sha256};

use paralift_core::expr::{is_identifier, parse_expr, Chart, Monomial, ParseErrorKind, Poly};
use paralift_core::lift::Connection;
use paralift_core::structure::{LiftMode, RParacontactModel, Sign};
use paralift_core::tensor::{Metric, OneForm, Tensor11, VectorField};

use crate::error::CliError;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Object {
    Scalar(Poly),
    Vector(VectorField),
    OneForm(OneForm),
    Tensor(Tensor11),
    Metric(Metric),
}

impl Object {
    pub fn kind(&self) -> &'static str {
        match self {
            Object::Scalar(_) => "scalar",
            Object::Vector(_) => "vector",
            Object::OneForm(_) => "oneform",
            Object::Tensor(_) => "tensor",
            Object::Metric(_) => "metric",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StructureDecl {
    pub f: String,
    pub xi: Vec<String>,
    pub eta: Vec<String>,
    pub line: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Profile {
    pub a: Sign,
    pub b: Sign,
    pub mode: LiftMode,
}

impl Default for Profile {
    fn default() -> Self {
        Self { a: Sign::Plus, b: Sign::Plus, mode: LiftMode::Complete }
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct FileOptions {
    pub seed: Option<u64>,
    pub points: Option<usize>,
}

#[derive(Clone, Debug)]
pub struct ModelFile {
    pub name: String,
    pub digest: String,
    pub chart: Chart,
    pub connection: Option<Connection>,
    pub objects: Vec<(String, Object)>,
    pub signs: Option<(Sign, Sign)>,
    pub structure: Option<StructureDecl>,
    pub profile: Profile,
    pub options: FileOptions,
}

impl ModelFile {
    pub fn get(&self, name: &str) -> Option<&Object> {
        self.objects.iter().find(|(n, _)| n == name).map(|(_, o)| o)
    }

    pub fn metrics(&self) -> impl Iterator<Item = (&str, &Metric)> {
        self.objects.iter().filter_map(|(n, o)| match o {
            Object::Metric(m) => Some((n.as_str(), m)),
            _ => None,
        })
    }

    /// The structure named by the `structure` line, or inferred from a
    /// tensor `F` and the vectors `xi*` and one-forms `eta*` in order.
    pub fn model(&self) -> Result<RParacontactModel, CliError> {
        let (eps1, eps2) = self.signs.ok_or_else(|| self.error(0, 0, "no `signs eps1=.. eps2=..` line"))?;
        let decl = match &self.structure {
            Some(d) => d.clone(),
            None => self.infer_structure()?,
        };
        let line = decl.line;
        let f = match self.get(&decl.f) {
            Some(Object::Tensor(t)) => t.clone(),
            _ => return Err(self.error(line, 0, format!("`{}` is not a tensor", decl.f))),
        };
        let xi = decl
            .xi
            .iter()
            .map(|n| match self.get(n) {
                Some(Object::Vector(v)) => Ok(v.clone()),
                _ => Err(self.error(line, 0, format!("`{n}` is not a vector"))),
            })
            .collect::<Result<Vec<_>, _>>()?;
        let eta = decl
            .eta
            .iter()
            .map(|n| match self.get(n) {
                Some(Object::OneForm(w)) => Ok(w.clone()),
                _ => Err(self.error(line, 0, format!("`{n}` is not a oneform"))),
            })
            .collect::<Result<Vec<_>, _>>()?;
        RParacontactModel::new(f, xi, eta, eps1, eps2).map_err(|e| self.error(line, 0, e.to_string()))
    }

    fn infer_structure(&self) -> Result<StructureDecl, CliError> {
        let tensors: Vec<&str> = self.objects.iter().filter(|(_, o)| matches!(o, Object::Tensor(_))).map(|(n, _)| n.as_str()).collect();
        let f = if tensors.contains(&"F") {
            "F".to_string()
        } else if tensors.len() == 1 {
            tensors[0].to_string()
        } else {
            return Err(self.error(0, 0, "no `structure` line and no unique structure tensor"));
        };
        let pick = |prefix: &str, want: fn(&Object) -> bool| -> Vec<String> {
            self.objects.iter().filter(|(n, o)| n.starts_with(prefix) && want(o)).map(|(n, _)| n.clone()).collect()
        };
        let xi = pick("xi", |o| matches!(o, Object::Vector(_)));
        let eta = pick("eta", |o| matches!(o, Object::OneForm(_)));
        if xi.is_empty() || xi.len() != eta.len() {
            return Err(self.error(0, 0, "no `structure` line and no matching xi*/eta* declarations"));
        }
        Ok(StructureDecl { f, xi, eta, line: 0 })
    }

    fn error(&self, line: usize, column: usize, message: impl Into<String>) -> CliError {
        CliError::Syntax { file: self.name.clone(), line, column, message: message.into() }
    }
}

/// Hex SHA-256 of the raw input.
pub fn digest(bytes: &[u8]) -> String {
    Sha256::digest(bytes).iter().map(|b| format!("{b:02x}")).collect()
}

/// A slice of the current line with its 1-based starting column.
#[derive(Clone, Copy, Debug)]
struct Span<'a> {
    text: &'a str,
    column: usize,
}

impl<'a> Span<'a> {
    fn trim(self) -> Span<'a> {
        let lead = self.text.len() - self.text.trim_start().len();
        Span { text: self.text.trim(), column: self.column + self.text[..lead].chars().count() }
    }

    fn split_at(self, byte: usize) -> (Span<'a>, Span<'a>) {
        let (a, b) = self.text.split_at(byte);
        (Span { text: a, column: self.column }, Span { text: b, column: self.column + a.chars().count() })
    }

    /// Whitespace-separated words.
    fn words(self) -> Vec<Span<'a>> {
        let mut out = Vec::new();
        let mut start = None;
        for (i, c) in self.text.char_indices().chain(std::iter::once((self.text.len(), ' '))) {
            match (c.is_whitespace(), start) {
                (true, Some(s)) => {
                    out.push(self.split_at(s).1.split_at(i - s).0);
                    start = None;
                }
                (false, None) => start = Some(i),
                _ => {}
            }
        }
        out
    }
}

struct Parser {
    name: String,
    line: usize,
}

impl Parser {
    fn err(&self, column: usize, message: impl Into<String>) -> CliError {
        CliError::Syntax { file: self.name.clone(), line: self.line, column, message: message.into() }
    }

    fn expr(&self, span: Span<'_>, chart: &Chart) -> Result<Poly, CliError> {
        let span = span.trim();
        if span.text.is_empty() {
            return Err(self.err(span.column, "missing expression"));
        }
        parse_expr(span.text, chart).map_err(|e| {
            let e = e.relocate(self.line, span.column - 1);
            let message = match e.kind {
                ParseErrorKind::Syntax(m) => m,
                ParseErrorKind::UnknownIdentifier(n) => format!("unknown identifier `{n}`"),
            };
            self.err(e.column, message)
        })
    }

    /// `[a, b, ...]` into its items.
    fn list<'a>(&self, span: Span<'a>) -> Result<Vec<Span<'a>>, CliError> {
        let span = span.trim();
        let inner = span
            .text
            .strip_prefix('[')
            .and_then(|s| s.strip_suffix(']'))
            .ok_or_else(|| self.err(span.column, "expected a bracketed list `[..]`"))?;
        let inner = Span { text: inner, column: span.column + 1 };
        if inner.text.contains('[') || inner.text.contains(']') {
            return Err(self.err(inner.column, "unexpected nested bracket"));
        }
        let mut out = Vec::new();
        let mut rest = inner;
        loop {
            match rest.text.find(',') {
                Some(i) => {
                    let (item, tail) = rest.split_at(i);
                    out.push(item);
                    rest = tail.split_at(1).1;
                }
                None => {
                    out.push(rest);
                    return Ok(out);
                }
            }
        }
    }

    /// `[[..], [..]]` into rows of items.
    fn matrix<'a>(&self, span: Span<'a>) -> Result<Vec<Vec<Span<'a>>>, CliError> {
        let span = span.trim();
        let inner = span
            .text
            .strip_prefix('[')
            .and_then(|s| s.strip_suffix(']'))
            .ok_or_else(|| self.err(span.column, "expected a matrix `[[..], ..]`"))?;
        let mut rest = Span { text: inner, column: span.column + 1 }.trim();
        let mut rows = Vec::new();
        loop {
            if !rest.text.starts_with('[') {
                return Err(self.err(rest.column, "expected `[` starting a matrix row"));
            }
            let close = rest.text.find(']').ok_or_else(|| self.err(rest.column, "unterminated matrix row"))?;
            let (row, tail) = rest.split_at(close + 1);
            rows.push(self.list(row)?);
            let tail = tail.trim();
            if tail.text.is_empty() {
                return Ok(rows);
            }
            if !tail.text.starts_with(',') {
                return Err(self.err(tail.column, "expected `,` between matrix rows"));
            }
            rest = tail.split_at(1).1.trim();
        }
    }

    fn components(&self, span: Span<'_>, chart: &Chart) -> Result<Vec<Poly>, CliError> {
        let items = self.list(span)?;
        if items.len() != chart.dim() {
            return Err(self.err(span.trim().column, format!("expected {} components, found {}", chart.dim(), items.len())));
        }
        items.into_iter().map(|s| self.expr(s, chart)).collect()
    }

    fn square(&self, span: Span<'_>, chart: &Chart) -> Result<Vec<Vec<Poly>>, CliError> {
        let rows = self.matrix(span)?;
        let n = chart.dim();
        if rows.len() != n || rows.iter().any(|r| r.len() != n) {
            return Err(self.err(span.trim().column, format!("expected a {n}x{n} matrix")));
        }
        rows.into_iter().map(|r| r.into_iter().map(|s| self.expr(s, chart)).collect()).collect()
    }

    /// `c1*d/dx + c2*d/dy`, parsed by treating each `d/dNAME` as a
    /// placeholder coordinate that must occur linearly.
    fn vector_sum(&self, span: Span<'_>, chart: &Chart) -> Result<Vec<Poly>, CliError> {
        let mut names: Vec<String> = chart.names().iter().map(|s| s.to_string()).collect();
        let placeholders: Vec<String> = names.iter().map(|n| format!("dd_{n}")).collect();
        if let Some(p) = placeholders.iter().find(|p| names.contains(p)) {
            return Err(self.err(span.column, format!("coordinate name `{p}` is reserved in vector sums")));
        }
        names.extend(placeholders.iter().cloned());
        let ext = Chart::new(&names).map_err(|e| self.err(span.column, e.to_string()))?;
        let text = span.text.replace("d/d", "dd_");
        let p = self.expr(Span { text: &text, column: span.column }, &ext)?;
        let n = chart.dim();
        let mut comp = vec![Vec::new(); n];
        for (m, c) in p.terms() {
            let exps = m.exponents();
            let slots: Vec<usize> = (0..n).filter(|&i| exps[n + i] > 0).collect();
            if slots.len() != 1 || exps[n + slots[0]] != 1 {
                return Err(self.err(span.column, "each term must contain exactly one d/dNAME factor"));
            }
            comp[slots[0]].push((Monomial::from_exponents(exps[..n].to_vec()), c.clone()));
        }
        comp.into_iter().map(|terms| Poly::from_terms(chart, terms).map_err(|e| self.err(span.column, e.to_string()))).collect()
    }

    fn sign(&self, span: Span<'_>) -> Result<Sign, CliError> {
        span.text.parse().map_err(|e: String| self.err(span.column, e))
    }

    /// `key=value` pairs.
    fn pairs<'a>(&self, words: &[Span<'a>]) -> Result<Vec<(Span<'a>, Span<'a>)>, CliError> {
        words
            .iter()
            .map(|w| {
                let i = w.text.find('=').ok_or_else(|| self.err(w.column, format!("expected key=value, found `{}`", w.text)))?;
                let (k, v) = w.split_at(i);
                Ok((k, v.split_at(1).1))
            })
            .collect()
    }

    fn ident<'a>(&self, span: Span<'a>) -> Result<&'a str, CliError> {
        if is_identifier(span.text) {
            Ok(span.text)
        } else {
            Err(self.err(span.column, format!("invalid name `{}`", span.text)))
        }
    }
}

/// Parses a model file; `name` is used in error messages.
pub fn parse_model(name: &str, source: &str) -> Result<ModelFile, CliError> {
    let mut p = Parser { name: name.to_string(), line: 0 };
    let mut chart: Option<Chart> = None;
    let mut connection: Option<Connection> = None;
    let mut objects: Vec<(String, Object)> = Vec::new();
    let mut signs = None;
    let mut structure = None;
    let mut profile = Profile::default();
    let mut options = FileOptions::default();
    for (idx, raw) in source.lines().enumerate() {
        p.line = idx + 1;
        let content = raw.split('#').next().unwrap_or_default();
        let line = Span { text: content, column: 1 }.trim();
        if line.text.is_empty() {
            continue;
        }
        let words = line.words();
        let keyword = words[0];
        if keyword.text != "chart" && chart.is_none() {
            return Err(p.err(keyword.column, "the first declaration must be `chart`"));
        }
        match keyword.text {
            "chart" => {
                if chart.is_some() {
                    return Err(p.err(keyword.column, "duplicate chart declaration"));
                }
                if words.len() < 2 {
                    return Err(p.err(keyword.column, "chart needs at least one coordinate"));
                }
                for w in &words[1..] {
                    p.ident(*w)?;
                }
                let names: Vec<&str> = words[1..].iter().map(|w| w.text).collect();
                chart = Some(Chart::new(&names).map_err(|e| p.err(words[1].column, e.to_string()))?);
            }
            "connection" => {
                let c = chart.as_ref().expect("checked above");
                let eq = line.text.find('=').ok_or_else(|| p.err(line.column, "expected `connection V C A = expr`"))?;
                let (head, value) = line.split_at(eq);
                let idx = head.words();
                if idx.len() != 4 {
                    return Err(p.err(line.column, "expected three coordinate names before `=`"));
                }
                let mut pos = [0usize; 3];
                for (slot, w) in pos.iter_mut().zip(&idx[1..]) {
                    *slot = c.index_of(w.text).ok_or_else(|| p.err(w.column, format!("unknown coordinate `{}`", w.text)))?;
                }
                let expr = p.expr(value.split_at(1).1, c)?;
                let conn = connection.get_or_insert_with(|| Connection::flat(c));
                conn.set(pos[0], pos[1], pos[2], expr).map_err(|e| p.err(line.column, e.to_string()))?;
            }
            kind @ ("scalar" | "vector" | "oneform" | "tensor" | "metric") => {
                let c = chart.as_ref().expect("checked above");
                let eq = line.text.find('=').ok_or_else(|| p.err(line.column, format!("expected `{kind} NAME = ..`")))?;
                let (head, value) = line.split_at(eq);
                let value = value.split_at(1).1.trim();
                let head = head.words();
                if head.len() != 2 {
                    return Err(p.err(line.column, format!("expected `{kind} NAME = ..`")));
                }
                let name = p.ident(head[1])?;
                if objects.iter().any(|(n, _)| n == name) {
                    return Err(p.err(head[1].column, format!("`{name}` is already defined")));
                }
                let obj = match kind {
                    "scalar" => Object::Scalar(p.expr(value, c)?),
                    "vector" => {
                        let comp = if value.text.starts_with('[') { p.components(value, c)? } else { p.vector_sum(value, c)? };
                        Object::Vector(VectorField::new(c, comp).map_err(|e| p.err(value.column, e.to_string()))?)
                    }
                    "oneform" => Object::OneForm(OneForm::new(c, p.components(value, c)?).map_err(|e| p.err(value.column, e.to_string()))?),
                    "tensor" => Object::Tensor(Tensor11::new(c, p.square(value, c)?).map_err(|e| p.err(value.column, e.to_string()))?),
                    _ => Object::Metric(Metric::new(c, p.square(value, c)?).map_err(|e| p.err(value.column, e.to_string()))?),
                };
                objects.push((name.to_string(), obj));
            }
            "signs" => {
                if signs.is_some() {
                    return Err(p.err(keyword.column, "duplicate signs declaration"));
                }
                let (mut e1, mut e2) = (None, None);
                for (k, v) in p.pairs(&words[1..])? {
                    match k.text {
                        "eps1" => e1 = Some(p.sign(v)?),
                        "eps2" => e2 = Some(p.sign(v)?),
                        other => return Err(p.err(k.column, format!("unknown sign `{other}`"))),
                    }
                }
                match (e1, e2) {
                    (Some(a), Some(b)) => signs = Some((a, b)),
                    _ => return Err(p.err(keyword.column, "signs needs both eps1 and eps2")),
                }
            }
            "structure" => {
                if structure.is_some() {
                    return Err(p.err(keyword.column, "only one structure block is allowed"));
                }
                if words.len() != 4 {
                    return Err(p.err(keyword.column, "expected `structure F xi=.. eta=..`"));
                }
                let f = p.ident(words[1])?.to_string();
                let (mut xi, mut eta) = (Vec::new(), Vec::new());
                for (k, v) in p.pairs(&words[2..])? {
                    let names = v.text.split(',').map(|s| s.trim().to_string()).collect::<Vec<_>>();
                    if names.iter().any(|n| !is_identifier(n)) {
                        return Err(p.err(v.column, "expected a comma-separated list of names"));
                    }
                    match k.text {
                        "xi" => xi = names,
                        "eta" => eta = names,
                        other => return Err(p.err(k.column, format!("unknown structure key `{other}`"))),
                    }
                }
                for n in std::iter::once(&f).chain(&xi).chain(&eta) {
                    if !objects.iter().any(|(m, _)| m == n) {
                        return Err(p.err(keyword.column, format!("`{n}` is used before it is defined")));
                    }
                }
                structure = Some(StructureDecl { f, xi, eta, line: p.line });
            }
            "profile" => {
                for (k, v) in p.pairs(&words[1..])? {
                    match k.text {
                        "a" => profile.a = p.sign(v)?,
                        "b" => profile.b = p.sign(v)?,
                        "mode" => profile.mode = v.text.parse().map_err(|e: String| p.err(v.column, e))?,
                        other => return Err(p.err(k.column, format!("unknown profile key `{other}`"))),
                    }
                }
            }
            "options" => {
                for (k, v) in p.pairs(&words[1..])? {
                    let bad = |_| p.err(v.column, format!("expected a non-negative integer, found `{}`", v.text));
                    match k.text {
                        "seed" => options.seed = Some(v.text.parse().map_err(bad)?),
                        "points" => options.points = Some(v.text.parse().map_err(bad)?),
                        other => return Err(p.err(k.column, format!("unknown option `{other}`"))),
                    }
                }
            }
            other => return Err(p.err(keyword.column, format!("unknown declaration `{other}`"))),
        }
    }
    let chart = chart.ok_or_else(|| CliError::Syntax { file: name.to_string(), line: 1, column: 1, message: "missing chart declaration".into() })?;
    Ok(ModelFile {
        name: name.to_string(),
        digest: digest(source.as_bytes()),
        chart,
        connection,
        objects,
        signs,
        structure,
        profile,
        options,
    })
}

/// `c1*d/dx + ...` in chart order; `0` for the zero field.
pub struct VectorDisplay<'a>(pub &'a VectorField);

/// `c1*dx + ...` in chart order; `0` for the zero form.
pub struct OneFormDisplay<'a>(pub &'a OneForm);

fn write_sum(f: &mut fmt::Formatter<'_>, chart: &Chart, comp: &[Poly], prefix: &str) -> fmt::Result {
    let mut first = true;
    for (i, c) in comp.iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        if !first {
            f.write_str(" + ")?;
        }
        first = false;
        if !c.is_one() {
            write!(f, "{}*", c.to_factor_string())?;
        }
        write!(f, "{prefix}{}", chart.name(i))?;
    }
    if first {
        f.write_str("0")?;
    }
    Ok(())
}

impl fmt::Display for VectorDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_sum(f, self.0.chart(), self.0.comp(), "d/d")
    }
}

impl fmt::Display for OneFormDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_sum(f, self.0.chart(), self.0.comp(), "d")
    }
}

/// Matrix rows as `[a, b, ...]`, one per line.
pub fn matrix_lines(rows: &[Vec<Poly>]) -> Vec<String> {
    rows.iter().map(|r| format!("[{}]", r.iter().map(Poly::to_string).collect::<Vec<_>>().join(", "))).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    const STANDARD: &str = "chart x y t\ntensor F = [[0,1,0],[1,0,0],[0,0,0]]\nvector xi1 = [0,0,1]\noneform eta1 = [0,0,1]\nsigns eps1=-1 eps2=+1\n";

    #[test]
    fn standard_model_file() {
        let m = parse_model("std", STANDARD).unwrap();
        let model = m.model().unwrap();
        assert_eq!(model, paralift_core::structure::standard_model());
        assert_eq!(m.digest.len(), 64);
    }

    #[test]
    fn vector_sums() {
        let m = parse_model("v", "chart x y\nvector X = x*d/dy + d/dx\nvector Z = [0, 0]\n").unwrap();
        let Some(Object::Vector(v)) = m.get("X") else { panic!() };
        assert_eq!(*v, VectorField::parse(&m.chart, &["1", "x"]).unwrap());
        assert_eq!(VectorDisplay(v).to_string(), "d/dx + x*d/dy");
        let Some(Object::Vector(z)) = m.get("Z") else { panic!() };
        assert_eq!(VectorDisplay(z).to_string(), "0");
        assert!(parse_model("v", "chart x y\nvector X = x*y\n").is_err());
    }

    #[test]
    fn error_locations() {
        let e = parse_model("m", "chart x y\nscalar f = x + \n").unwrap_err();
        assert!(matches!(e, CliError::Syntax { line: 2, column: 15, .. }), "{e}");
        let e = parse_model("m", "chart x y\ntensor F = [[0,1],[1,q]]\n").unwrap_err();
        assert!(matches!(e, CliError::Syntax { line: 2, column: 22, .. }), "{e}");
        let e = parse_model("m", "scalar f = x\n").unwrap_err();
        assert!(matches!(e, CliError::Syntax { line: 1, column: 1, .. }));
        let e = parse_model("m", "chart x\nsigns eps1=2 eps2=1\n").unwrap_err();
        assert!(matches!(e, CliError::Syntax { line: 2, column: 12, .. }), "{e}");
    }

    #[test]
    fn connection_and_profile() {
        let m = parse_model("c", "chart x y\nconnection y x x = 1\nprofile a=-1 mode=horizontal\noptions seed=4 points=3\n").unwrap();
        assert_eq!(m.connection.as_ref().unwrap().get(1, 0, 0), &Poly::int(&m.chart, 1));
        assert_eq!(m.profile, Profile { a: Sign::Minus, b: Sign::Plus, mode: LiftMode::Horizontal });
        assert_eq!(m.options, FileOptions { seed: Some(4), points: Some(3) });
    }

    #[test]
    fn structure_block_rules() {
        let twice = format!("{STANDARD}structure F xi=xi1 eta=eta1\nstructure F xi=xi1 eta=eta1\n");
        assert!(parse_model("s", &twice).is_err());
        let early = "chart x\nstructure F xi=a eta=b\n";
        assert!(parse_model("s", early).is_err());
        let dup = "chart x\nscalar f = 1\nvector f = [1]\n";
        assert!(parse_model("s", dup).is_err());
    }
}
