use std::fmt;
use std::str::FromStr;

use paralift_core::lift::{tangent_chart, Connection};
use paralift_core::oracle::SamplePoint;
use paralift_core::structure::{
    axiom_consistency, check_almost_paracomplex, check_metric_compat, check_r_paracontact, rank_entry, DefectAnalysis,
    LiftMode, StructureReport, TmLift,
};
use paralift_core::tensor::Tensor11;
use paralift_core::Error;

use crate::error::CliError;
use crate::model_file::{matrix_lines, parse_model, ModelFile, Object, OneFormDisplay, VectorDisplay};
use crate::report::Report;

pub const DEFAULT_SEED: u64 = 0x5eed;
pub const DEFAULT_POINTS: usize = 10;

/// Command-line overrides; `None` falls back to the file, then the default.
#[derive(Clone, Copy, Debug, Default)]
pub struct Settings {
    pub seed: Option<u64>,
    pub points: Option<usize>,
    pub mode: Option<LiftMode>,
    pub floating: bool,
}

impl Settings {
    pub fn seed(&self, file: Option<&ModelFile>) -> u64 {
        self.seed.or(file.and_then(|f| f.options.seed)).unwrap_or(DEFAULT_SEED)
    }

    pub fn points(&self, file: Option<&ModelFile>) -> usize {
        self.points.or(file.and_then(|f| f.options.points)).unwrap_or(DEFAULT_POINTS)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LiftKind {
    Vertical,
    Complete,
    Horizontal,
}

impl FromStr for LiftKind {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "v" | "vertical" => Ok(LiftKind::Vertical),
            "c" | "complete" => Ok(LiftKind::Complete),
            "h" | "horizontal" => Ok(LiftKind::Horizontal),
            other => Err(format!("unknown lift kind `{other}` (expected v, c or h)")),
        }
    }
}

impl fmt::Display for LiftKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            LiftKind::Vertical => "v",
            LiftKind::Complete => "c",
            LiftKind::Horizontal => "h",
        })
    }
}

pub fn load(path: &str) -> Result<ModelFile, CliError> {
    let bytes = std::fs::read(path).map_err(|source| CliError::Io { path: path.to_string(), source })?;
    let text = String::from_utf8(bytes).map_err(|_| CliError::Usage(format!("{path}: not valid UTF-8")))?;
    parse_model(path, &text)
}

fn header(rep: &mut Report, file: &ModelFile, seed: u64, points: usize) {
    rep.field("input", &file.name);
    rep.field("sha256", &file.digest);
    rep.field("seed", seed);
    rep.field("points", points);
}

fn connection<'a>(file: &'a ModelFile, mode: LiftMode) -> Result<Option<&'a Connection>, CliError> {
    match (mode, &file.connection) {
        (LiftMode::Horizontal, None) => Err(CliError::Usage(format!("{}: horizontal mode needs a connection block", file.name))),
        (_, c) => Ok(c.as_ref()),
    }
}

/// The lift of one named object, in the expression grammar.
pub fn lift(file: &ModelFile, target: &str, kind: LiftKind) -> Result<String, CliError> {
    let obj = file.get(target).ok_or_else(|| CliError::Usage(format!("{}: `{target}` is not defined", file.name)))?;
    let lc = tangent_chart(&file.chart)?;
    let conn = match kind {
        LiftKind::Horizontal => Some(
            file.connection
                .as_ref()
                .ok_or_else(|| CliError::Usage(format!("{}: horizontal lifts need a connection block", file.name)))?,
        ),
        _ => None,
    };
    let text = match (obj, kind, conn) {
        (Object::Scalar(f), LiftKind::Vertical, _) => lc.vlift_scalar(f)?.to_string(),
        (Object::Scalar(f), LiftKind::Complete, _) => lc.clift_scalar(f)?.to_string(),
        (Object::Scalar(f), LiftKind::Horizontal, _) => lc.hlift_scalar(f)?.to_string(),
        (Object::Vector(z), LiftKind::Vertical, _) => VectorDisplay(&lc.vlift_vector(z)?).to_string(),
        (Object::Vector(z), LiftKind::Complete, _) => VectorDisplay(&lc.clift_vector(z)?).to_string(),
        (Object::Vector(z), LiftKind::Horizontal, Some(c)) => VectorDisplay(&lc.hlift_vector(z, c)?).to_string(),
        (Object::OneForm(w), LiftKind::Vertical, _) => OneFormDisplay(&lc.vlift_oneform(w)?).to_string(),
        (Object::OneForm(w), LiftKind::Complete, _) => OneFormDisplay(&lc.clift_oneform(w)?).to_string(),
        (Object::OneForm(w), LiftKind::Horizontal, Some(c)) => OneFormDisplay(&lc.hlift_oneform(w, c)?).to_string(),
        (Object::Tensor(t), LiftKind::Vertical, _) => matrix_lines(lc.vlift_tensor(t)?.rows()).join("\n"),
        (Object::Tensor(t), LiftKind::Complete, _) => matrix_lines(lc.clift_tensor(t)?.rows()).join("\n"),
        (Object::Tensor(t), LiftKind::Horizontal, Some(c)) => matrix_lines(lc.hlift_tensor(t, c)?.rows()).join("\n"),
        (Object::Metric(_), ..) => return Err(CliError::Usage(format!("{}: metrics are not lifted", file.name))),
        _ => unreachable!("horizontal lifts always carry a connection"),
    };
    Ok(text)
}

pub fn verify(file: &ModelFile, settings: &Settings) -> Result<Report, CliError> {
    let (seed, npoints) = (settings.seed(Some(file)), settings.points(Some(file)));
    let mut rep = Report::new("verify");
    header(&mut rep, file, seed, npoints);
    let model = file.model()?;
    let points = SamplePoint::batch(model.chart(), seed, npoints, true);

    rep.section(&check_r_paracontact(&model));

    let c = axiom_consistency(model.eps1, model.eps2);
    rep.blank();
    rep.line("axiom consistency");
    rep.line(format!("  {c}"));
    rep.key("consistency", if c.consistent() { "consistent" } else { "inconsistent" });
    rep.key("consistency.witness", c.witness);
    rep.require(c.consistent());

    let mut rank = StructureReport::new(format!("rank of {} at sample points", name_of_f(file)));
    rank.push(rank_entry(&model.f, model.r(), &points)?);
    rank.points = points.clone();
    rep.section(&rank);

    for (name, g) in file.metrics() {
        let mut r = check_metric_compat(g, &model, model.eps1, &points)?;
        r.title = format!("metric {name}, s = {}", model.eps1);
        r.points.clear();
        rep.section(&r);
    }
    Ok(rep)
}

fn name_of_f(file: &ModelFile) -> String {
    file.structure.as_ref().map_or_else(|| "F".to_string(), |s| s.f.clone())
}

/// `defect coefficient c; J^2 = I: ...` with the closed-form match appended
/// unless `J² = I` holds as predicted.
pub fn summary_line(d: &DefectAnalysis) -> String {
    let verdict = |b: bool| if b { "PASS" } else { "FAIL" };
    let mut line = format!("defect coefficient {}; J^2 = I: {}", d.coefficient, verdict(d.squares_to_identity()));
    if !(d.squares_to_identity() && d.matches) {
        line.push_str(&format!("; residual matches closed form: {}", verdict(d.matches)));
    }
    line
}

fn residual_lines(t: &Tensor11) -> Vec<String> {
    let entries = t.nonzero_entries();
    if entries.is_empty() {
        return vec!["  0".to_string()];
    }
    let c = t.chart();
    entries.into_iter().map(|(r, col, p)| format!("  [{}][{}] = {p}", c.name(r), c.name(col))).collect()
}

pub fn build_tm(file: &ModelFile, settings: &Settings) -> Result<Report, CliError> {
    let (seed, npoints) = (settings.seed(Some(file)), settings.points(Some(file)));
    let mode = settings.mode.unwrap_or(file.profile.mode);
    let (a, b) = (file.profile.a, file.profile.b);
    let mut rep = Report::new("build-tm");
    header(&mut rep, file, seed, npoints);
    rep.field("mode", mode);
    rep.field("a", a);
    rep.field("b", b);
    let model = file.model()?;
    let lift = TmLift::new(&model, mode, connection(file, mode)?)?;
    let d = lift.square_defect(a, b);

    rep.line(format!("J on T(M) in chart {}", lift.chart().total()));
    for l in matrix_lines(d.j.rows()) {
        rep.line(format!("  {l}"));
    }
    rep.blank();
    rep.line("J^2 - I");
    for l in residual_lines(&d.residual) {
        rep.line(l);
    }
    rep.blank();
    let tag = mode.tag();
    rep.line(format!("closed form ({}) * sum(xi^v (x) eta^{tag} + xi^{tag} (x) eta^v)", d.coefficient));
    for l in residual_lines(&d.predicted) {
        rep.line(l);
    }
    rep.section(&d.precondition);
    if d.squares_to_identity() {
        let points = SamplePoint::batch(lift.chart().total(), seed, npoints, true);
        let mut r = check_almost_paracomplex(&d.j, &points)?;
        r.points.clear();
        rep.section(&r);
    }
    rep.blank();
    rep.line(summary_line(&d));
    rep.key("defect.coefficient", d.coefficient);
    rep.key("defect.j2_equals_i", d.squares_to_identity());
    rep.key("defect.matches_closed_form", d.matches);
    rep.require(d.squares_to_identity() && d.matches);
    Ok(rep)
}

pub fn defect(file: &ModelFile, settings: &Settings) -> Result<Report, CliError> {
    let (seed, npoints) = (settings.seed(Some(file)), settings.points(Some(file)));
    let mode = settings.mode.unwrap_or(file.profile.mode);
    let mut rep = Report::new("defect");
    header(&mut rep, file, seed, npoints);
    rep.field("mode", mode);
    let model = file.model()?;
    let lift = TmLift::new(&model, mode, connection(file, mode)?)?;

    rep.section(&lift.interaction_report());
    match lift.square_identity() {
        Ok(r) => rep.section(&r),
        Err(Error::Precondition(msg)) => {
            rep.blank();
            rep.line(format!("(F^{tag})^2 closed form: not applicable ({msg})", tag = mode.tag()));
            rep.key("square_identity", "skipped");
            rep.fail();
        }
        Err(e) => return Err(e.into()),
    }
    rep.blank();
    rep.line("sign profiles");
    for (a, b) in paralift_core::structure::SignProfile::CORRECTIONS {
        let d = lift.square_defect(a, b);
        rep.line(format!("  a={a} b={b}: {}", summary_line(&d)));
        let key = format!("profile.a{}b{}", sign_tag(a), sign_tag(b));
        rep.key(format!("{key}.coefficient"), d.coefficient);
        rep.key(format!("{key}.j2_equals_i"), d.squares_to_identity());
        rep.key(format!("{key}.matches_closed_form"), d.matches);
        rep.require(d.matches);
    }
    Ok(rep)
}

fn sign_tag(s: paralift_core::structure::Sign) -> &'static str {
    match s {
        paralift_core::structure::Sign::Plus => "p",
        paralift_core::structure::Sign::Minus => "m",
    }
}
