use std::fmt;

use num_rational::BigRational;
use num_traits::{Signed, Zero};

use super::model::{RParacontactModel, Sign};
use super::report::{metric_components, oneform_components, tensor_components, vector_components, ReportEntry, StructureReport};
use crate::error::{Error, Result};
use crate::expr::{Poly, SplitComplex};
use crate::oracle::{matrix_at, RationalMatrix, SamplePoint};
use crate::tensor::{Metric, OneForm, Tensor11, VectorField};

pub const ALMOST_PRODUCT: &str = "J^2 = I";
pub const TRACE_FREE: &str = "trace J = 0";
pub const EQUAL_EIGENBUNDLES: &str = "eigenbundle ranks equal";
pub const PAIRING: &str = "eta(xi) = eps2*delta";
pub const KILLS_XI: &str = "F(xi) = 0";
pub const ETA_KILLS_F: &str = "eta o F = 0";
pub const F_SQUARED: &str = "F^2 = I + eps1*sum xi(x)eta";
pub const RANK: &str = "rank(F) = n - r";
pub const COMPATIBLE: &str = "G(FX,FY) = G(X,Y) + s*sum eta(X)eta(Y)";
pub const ETA_IS_DUAL: &str = "eta = G(xi, .)";
pub const SIGNATURE: &str = "signature of G";

/// `Σ_α ξ_α ⊗ η^α`.
pub(crate) fn outer_sum(xi: &[VectorField], eta: &[OneForm]) -> Result<Tensor11> {
    let chart = xi.first().map(|x| x.chart().clone()).ok_or_else(|| Error::Precondition("empty frame".into()))?;
    let mut acc = Tensor11::zero(&chart);
    for (x, e) in xi.iter().zip(eta) {
        acc = acc.add(&Tensor11::tensor_product(x, e)?)?;
    }
    Ok(acc)
}

pub fn check_almost_product(j: &Tensor11) -> StructureReport {
    let residual = j.square().sub(&Tensor11::identity(j.chart())).expect("same chart");
    let mut report = StructureReport::new("almost product structure");
    report.push(ReportEntry::symbolic(ALMOST_PRODUCT, tensor_components(&residual)));
    report
}

/// Requires `J² = I`; then compares the ranks of `(I ± J)/2` per null
/// component at every point.
pub fn check_almost_paracomplex(j: &Tensor11, points: &[SamplePoint]) -> Result<StructureReport> {
    let mut report = check_almost_product(j);
    if !report.holds() {
        return Err(Error::Precondition("J^2 = I fails, so J is not an almost product structure".into()));
    }
    report.title = "almost paracomplex structure".into();
    report.push(ReportEntry::symbolic(TRACE_FREE, [("trace".to_string(), j.trace())]));
    let half = SplitComplex::from_ratio(1, 2);
    let id = Tensor11::identity(j.chart());
    let plus = id.add(j)?.scale_by(&half);
    let minus = id.sub(j)?.scale_by(&half);
    let mut holds = true;
    let mut seen = Vec::new();
    for p in points {
        let (pp, pm) = matrix_at(&plus, p)?.ranks();
        let (mp, mm) = matrix_at(&minus, p)?.ranks();
        holds &= pp == mp && pm == mm;
        let d = format!("e+ {pp}/{mp}, e- {pm}/{mm}");
        if !seen.contains(&d) {
            seen.push(d);
        }
    }
    let detail = format!("ranks (I+J)/2 vs (I-J)/2: {} at {} points", seen.join("; "), points.len());
    report.push(ReportEntry::numeric(EQUAL_EIGENBUNDLES, holds && !points.is_empty(), detail));
    report.points = points.to_vec();
    Ok(report)
}

/// The four axiom families of an almost `r`-paracontact structure.
pub fn check_r_paracontact(model: &RParacontactModel) -> StructureReport {
    let chart = model.chart();
    let mut report = StructureReport::new(format!("almost {}-paracontact structure", model.r()));
    let mut pairing = Vec::new();
    for (a, e) in model.eta.iter().enumerate() {
        for (b, x) in model.xi.iter().enumerate() {
            let want = if a == b { Poly::int(chart, model.eps2.value()) } else { Poly::zero(chart) };
            pairing.push((format!("[{}][{}]", a + 1, b + 1), &e.pair(x).expect("same chart") - &want));
        }
    }
    report.push(ReportEntry::symbolic(PAIRING, pairing));
    let mut kills = Vec::new();
    for (a, x) in model.xi.iter().enumerate() {
        kills.extend(vector_components(&format!("xi{}", a + 1), &model.f.apply(x).expect("same chart")));
    }
    report.push(ReportEntry::symbolic(KILLS_XI, kills));
    let mut eta_f = Vec::new();
    for (a, e) in model.eta.iter().enumerate() {
        eta_f.extend(oneform_components(&format!("eta{}", a + 1), &e.compose(&model.f).expect("same chart")));
    }
    report.push(ReportEntry::symbolic(ETA_KILLS_F, eta_f));
    let rhs = Tensor11::identity(chart)
        .add(&outer_sum(&model.xi, &model.eta).expect("nonempty").scale_by(&model.eps1.scalar()))
        .expect("same chart");
    report.push(ReportEntry::symbolic(F_SQUARED, tensor_components(&model.f.square().sub(&rhs).expect("same chart"))));
    report
}

/// `rank(F) = n − r` per null component at every point.
pub fn rank_entry(f: &Tensor11, r: usize, points: &[SamplePoint]) -> Result<ReportEntry> {
    let want = f.dim().saturating_sub(r);
    let mut holds = !points.is_empty();
    let mut seen = Vec::new();
    for p in points {
        let (a, b) = matrix_at(f, p)?.ranks();
        holds &= a == want && b == want;
        let d = format!("{a}/{b}");
        if !seen.contains(&d) {
            seen.push(d);
        }
    }
    Ok(ReportEntry::numeric(RANK, holds, format!("expected {want}, found {} (e+/e-) at {} points", seen.join("; "), points.len())))
}

/// `(φ, ξ, η)` with `φ² = I + eps1 ξ⊗η` and `η(ξ) = eps2`, plus the rank
/// condition at `points`.
pub fn check_paracontact(
    phi: &Tensor11,
    xi: &VectorField,
    eta: &OneForm,
    eps1: Sign,
    eps2: Sign,
    points: &[SamplePoint],
) -> Result<StructureReport> {
    let model = RParacontactModel::new(phi.clone(), vec![xi.clone()], vec![eta.clone()], eps1, eps2)?;
    let mut report = check_r_paracontact(&model);
    report.title = "almost paracontact structure".into();
    report.push(rank_entry(phi, 1, points)?);
    report.points = points.to_vec();
    Ok(report)
}

/// Whether `F(ξ) = 0` is compatible with `F² = I + eps1 Σ ξ⊗η` and
/// `η(ξ) = eps2 δ`: substituting `ξ_β` gives `F²(ξ_β) = (1 + eps1 eps2) ξ_β`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Consistency {
    pub eps1: Sign,
    pub eps2: Sign,
    pub witness: i64,
}

impl Consistency {
    pub fn consistent(&self) -> bool {
        self.witness == 0
    }
}

impl fmt::Display for Consistency {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.consistent() {
            write!(f, "CONSISTENT (eps1={}, eps2={}): F^2(xi) = 0 = F(F(xi))", self.eps1, self.eps2)
        } else {
            write!(
                f,
                "INCONSISTENT (eps1={}, eps2={}): F^2(xi) = {}*xi but F(F(xi)) = F(0) = 0; witness {}",
                self.eps1, self.eps2, self.witness, self.witness
            )
        }
    }
}

pub fn axiom_consistency(eps1: Sign, eps2: Sign) -> Consistency {
    Consistency { eps1, eps2, witness: 1 + (eps1 * eps2).value() }
}

/// `Fᵀ G F − G − s Σ η⊗η` and, when `s = −1`, `G ξ_α − η^α`; the signature
/// of `G` at `points` is reported without being asserted.
pub fn check_metric_compat(g: &Metric, model: &RParacontactModel, s: Sign, points: &[SamplePoint]) -> Result<StructureReport> {
    let chart = model.chart();
    g.chart().ensure_same(chart)?;
    let n = chart.dim();
    for a in 0..n {
        for b in a + 1..n {
            if g.get(a, b) != g.get(b, a) {
                return Err(Error::NonSymmetricMetric(a, b));
            }
        }
    }
    let mut report = StructureReport::new("metric compatibility");
    let pulled = g.pullback(&model.f)?;
    let mut rows = vec![vec![Poly::zero(chart); n]; n];
    for (a, row) in rows.iter_mut().enumerate() {
        for (b, slot) in row.iter_mut().enumerate() {
            let mut eta_eta = Poly::zero(chart);
            for e in &model.eta {
                eta_eta = &eta_eta + &(e.component(a) * e.component(b));
            }
            *slot = &(pulled.get(a, b) - g.get(a, b)) - &eta_eta.scale_int(s.value());
        }
    }
    report.push(ReportEntry::symbolic(COMPATIBLE, metric_components(&Metric::new(chart, rows)?)).with_detail(format!("s = {s}")));
    if s == Sign::Minus {
        let mut dual = Vec::new();
        for (a, (x, e)) in model.xi.iter().zip(&model.eta).enumerate() {
            dual.extend(oneform_components(&format!("xi{}", a + 1), &g.lower(x)?.sub(e)?));
        }
        report.push(ReportEntry::symbolic(ETA_IS_DUAL, dual));
    }
    if !points.is_empty() {
        let mut seen = Vec::new();
        for p in points {
            let values = g
                .rows()
                .iter()
                .map(|row| row.iter().map(|e| e.eval(p.values())).collect::<Result<Vec<_>>>())
                .collect::<Result<Vec<_>>>()?;
            let m = crate::oracle::NullSplitMatrix::from_entries(&values);
            let (sp, sm) = (signature(&m.plus), signature(&m.minus));
            let d = if sp == sm { fmt_sig(sp) } else { format!("e+ {}, e- {}", fmt_sig(sp), fmt_sig(sm)) };
            if !seen.contains(&d) {
                seen.push(d);
            }
        }
        report.push(ReportEntry::numeric(SIGNATURE, true, format!("{} at {} points", seen.join("; "), points.len())).informational());
        report.points = points.to_vec();
    }
    Ok(report)
}

fn fmt_sig((p, n, z): (usize, usize, usize)) -> String {
    format!("(+{p}, -{n}, 0:{z})")
}

/// `(positive, negative, zero)` counts of a symmetric rational matrix, by
/// symmetric elimination.
pub fn signature(m: &RationalMatrix) -> (usize, usize, usize) {
    let mut a = m.clone();
    let n = a.len();
    let (mut pos, mut neg) = (0, 0);
    let mut active: Vec<usize> = (0..n).collect();
    while !active.is_empty() {
        let pivot = active.iter().copied().find(|&i| !a[i][i].is_zero());
        let p = match pivot {
            Some(p) => p,
            None => {
                let pair = active.iter().flat_map(|&i| active.iter().map(move |&k| (i, k))).find(|&(i, k)| i != k && !a[i][k].is_zero());
                let Some((i, k)) = pair else { break };
                // Row and column i += row and column k makes a[i][i] = 2 a[i][k].
                for c in 0..n {
                    let v = a[k][c].clone();
                    a[i][c] += v;
                }
                for r in 0..n {
                    let v = a[r][k].clone();
                    a[r][i] += v;
                }
                i
            }
        };
        let d = a[p][p].clone();
        if d.is_positive() {
            pos += 1;
        } else {
            neg += 1;
        }
        active.retain(|&i| i != p);
        for &i in &active {
            let f: BigRational = &a[i][p] / &d;
            if f.is_zero() {
                continue;
            }
            for &k in &active {
                let v = &f * &a[p][k];
                a[i][k] -= v;
            }
        }
    }
    (pos, neg, n - pos - neg)
}
