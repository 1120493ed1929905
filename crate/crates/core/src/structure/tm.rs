//! Structures on `TM` built from an almost `r`-paracontact model:
//!
//! ```text
//! J = F^L + Σ_α (a ξ_α^v⊗η^{α v} + b ξ_α^L⊗η^{α L}),   L ∈ {c, h}
//! ```
//!
//! Whenever `F(ξ) = 0`, `η∘F = 0`, `η(ξ) = eps2 δ` and
//! `F² = I + eps1 Σ ξ⊗η`, squaring gives
//!
//! ```text
//! J² − I = (eps1 + a b eps2) Σ_α (ξ_α^v⊗η^{α L} + ξ_α^L⊗η^{α v}).
//! ```

use std::fmt;
use std::str::FromStr;

use super::checks::{check_r_paracontact, outer_sum, F_SQUARED};
use super::model::{RParacontactModel, Sign};
use super::report::{oneform_components, tensor_components, vector_components, ReportEntry, StructureReport};
use crate::error::{Error, Result};
use crate::expr::{Poly, SplitComplex};
use crate::lift::{tangent_chart, Connection, LiftedChart};
use crate::tensor::{OneForm, Tensor11, VectorField};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum LiftMode {
    Complete,
    Horizontal,
}

impl LiftMode {
    pub const BOTH: [LiftMode; 2] = [LiftMode::Complete, LiftMode::Horizontal];

    /// The superscript used in report names.
    pub fn tag(self) -> &'static str {
        match self {
            LiftMode::Complete => "c",
            LiftMode::Horizontal => "h",
        }
    }
}

impl fmt::Display for LiftMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            LiftMode::Complete => "complete",
            LiftMode::Horizontal => "horizontal",
        })
    }
}

impl FromStr for LiftMode {
    type Err = String;
    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "complete" | "c" => Ok(LiftMode::Complete),
            "horizontal" | "h" => Ok(LiftMode::Horizontal),
            other => Err(format!("unknown mode `{other}` (expected complete or horizontal)")),
        }
    }
}

/// The model's signs together with the signs `a`, `b` of the two
/// correction terms.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct SignProfile {
    pub eps1: Sign,
    pub eps2: Sign,
    pub a: Sign,
    pub b: Sign,
}

impl SignProfile {
    pub fn new(model: &RParacontactModel, a: Sign, b: Sign) -> Self {
        Self { eps1: model.eps1, eps2: model.eps2, a, b }
    }

    /// `eps1 + a b eps2`.
    pub fn defect_coefficient(&self) -> i64 {
        self.eps1.value() + (self.a * self.b * self.eps2).value()
    }

    pub const CORRECTIONS: [(Sign, Sign); 4] =
        [(Sign::Plus, Sign::Plus), (Sign::Plus, Sign::Minus), (Sign::Minus, Sign::Plus), (Sign::Minus, Sign::Minus)];
}

/// The lifts of one model in one mode, shared across sign profiles.
#[derive(Clone, Debug)]
pub struct TmLift {
    mode: LiftMode,
    chart: LiftedChart,
    model: RParacontactModel,
    f_l: Tensor11,
    f_v: Tensor11,
    xi_v: Vec<VectorField>,
    xi_l: Vec<VectorField>,
    eta_v: Vec<OneForm>,
    eta_l: Vec<OneForm>,
}

impl TmLift {
    /// `conn` is required in horizontal mode and ignored otherwise.
    pub fn new(model: &RParacontactModel, mode: LiftMode, conn: Option<&Connection>) -> Result<Self> {
        let chart = tangent_chart(model.chart())?;
        let (f_l, xi_l, eta_l) = match mode {
            LiftMode::Complete => (
                chart.clift_tensor(&model.f)?,
                model.xi.iter().map(|x| chart.clift_vector(x)).collect::<Result<Vec<_>>>()?,
                model.eta.iter().map(|e| chart.clift_oneform(e)).collect::<Result<Vec<_>>>()?,
            ),
            LiftMode::Horizontal => {
                let h = chart.horizontal(conn.ok_or(Error::MissingConnection)?)?;
                (
                    h.tensor(&model.f)?,
                    model.xi.iter().map(|x| h.vector(x)).collect::<Result<Vec<_>>>()?,
                    model.eta.iter().map(|e| h.oneform(e)).collect::<Result<Vec<_>>>()?,
                )
            }
        };
        Ok(Self {
            mode,
            f_v: chart.vlift_tensor(&model.f)?,
            xi_v: model.xi.iter().map(|x| chart.vlift_vector(x)).collect::<Result<Vec<_>>>()?,
            eta_v: model.eta.iter().map(|e| chart.vlift_oneform(e)).collect::<Result<Vec<_>>>()?,
            chart,
            model: model.clone(),
            f_l,
            xi_l,
            eta_l,
        })
    }

    pub fn mode(&self) -> LiftMode {
        self.mode
    }

    pub fn chart(&self) -> &LiftedChart {
        &self.chart
    }

    pub fn model(&self) -> &RParacontactModel {
        &self.model
    }

    pub fn f_lift(&self) -> &Tensor11 {
        &self.f_l
    }

    /// `Σ_α (ξ_α^v⊗η^{α L} + ξ_α^L⊗η^{α v})`.
    pub fn cross_sum(&self) -> Tensor11 {
        outer_sum(&self.xi_v, &self.eta_l).and_then(|a| a.add(&outer_sum(&self.xi_l, &self.eta_v)?)).expect("same chart")
    }

    pub fn structure(&self, a: Sign, b: Sign) -> Tensor11 {
        let vv = outer_sum(&self.xi_v, &self.eta_v).expect("same chart").scale_by(&a.scalar());
        let ll = outer_sum(&self.xi_l, &self.eta_l).expect("same chart").scale_by(&b.scalar());
        self.f_l.add(&vv).and_then(|t| t.add(&ll)).expect("same chart")
    }

    pub fn square_defect(&self, a: Sign, b: Sign) -> DefectAnalysis {
        let profile = SignProfile::new(&self.model, a, b);
        let j = self.structure(a, b);
        let residual = j.square().sub(&Tensor11::identity(self.chart.total())).expect("same chart");
        let coefficient = profile.defect_coefficient();
        let predicted = self.cross_sum().scale_by(&SplitComplex::from_int(coefficient));
        let precondition = check_r_paracontact(&self.model);
        let matches = precondition.holds() && residual == predicted;
        DefectAnalysis { mode: self.mode, profile, j, residual, predicted, coefficient, matches, precondition }
    }

    /// The eight lift-interaction identities, plus `η^c∘F^v = 0` as an
    /// informational line in complete mode.
    pub fn interaction_report(&self) -> StructureReport {
        let l = self.mode.tag();
        let total = self.chart.total();
        let eps2 = Poly::int(total, self.model.eps2.value());
        let mut report = StructureReport::new(format!("lift interaction identities ({} lift)", self.mode));
        let kills = |f: &Tensor11, xs: &[VectorField]| -> Vec<(String, Poly)> {
            xs.iter()
                .enumerate()
                .flat_map(|(a, x)| vector_components(&format!("xi{}", a + 1), &f.apply(x).expect("same chart")))
                .collect()
        };
        let after = |es: &[OneForm], f: &Tensor11| -> Vec<(String, Poly)> {
            es.iter()
                .enumerate()
                .flat_map(|(a, e)| oneform_components(&format!("eta{}", a + 1), &e.compose(f).expect("same chart")))
                .collect()
        };
        let pairing = |es: &[OneForm], xs: &[VectorField], diag: &Poly| -> Vec<(String, Poly)> {
            let mut out = Vec::new();
            for (a, e) in es.iter().enumerate() {
                for (b, x) in xs.iter().enumerate() {
                    let want = if a == b { diag.clone() } else { Poly::zero(total) };
                    out.push((format!("[{}][{}]", a + 1, b + 1), &e.pair(x).expect("same chart") - &want));
                }
            }
            out
        };
        let zero = Poly::zero(total);
        report.push(ReportEntry::symbolic(format!("F^{l}(xi^v) = 0"), kills(&self.f_l, &self.xi_v)));
        report.push(ReportEntry::symbolic(format!("F^{l}(xi^{l}) = 0"), kills(&self.f_l, &self.xi_l)));
        report.push(ReportEntry::symbolic(format!("eta^v o F^{l} = 0"), after(&self.eta_v, &self.f_l)));
        report.push(ReportEntry::symbolic(format!("eta^{l} o F^{l} = 0"), after(&self.eta_l, &self.f_l)));
        report.push(ReportEntry::symbolic("eta^v(xi^v) = 0", pairing(&self.eta_v, &self.xi_v, &zero)));
        report.push(ReportEntry::symbolic(format!("eta^v(xi^{l}) = eps2*delta"), pairing(&self.eta_v, &self.xi_l, &eps2)));
        report.push(ReportEntry::symbolic(format!("eta^{l}(xi^v) = eps2*delta"), pairing(&self.eta_l, &self.xi_v, &eps2)));
        report.push(ReportEntry::symbolic(format!("eta^{l}(xi^{l}) = 0"), pairing(&self.eta_l, &self.xi_l, &zero)));
        if self.mode == LiftMode::Complete {
            report.push(ReportEntry::symbolic("eta^c o F^v = 0", after(&self.eta_l, &self.f_v)).informational());
        }
        report
    }

    /// `(F^L)² = I + eps1 Σ (ξ^v⊗η^L + ξ^L⊗η^v)`; requires the model's
    /// `F²` axiom.
    pub fn square_identity(&self) -> Result<StructureReport> {
        let base = check_r_paracontact(&self.model);
        if !base.entry(F_SQUARED).is_some_and(|e| e.holds) {
            return Err(Error::Precondition("the model violates F^2 = I + eps1*sum xi(x)eta".into()));
        }
        let rhs = Tensor11::identity(self.chart.total())
            .add(&self.cross_sum().scale_by(&self.model.eps1.scalar()))
            .expect("same chart");
        let residual = self.f_l.square().sub(&rhs).expect("same chart");
        let l = self.mode.tag();
        let mut report = StructureReport::new(format!("square of F^{l}"));
        report.push(ReportEntry::symbolic(
            format!("(F^{l})^2 = I + eps1*sum(xi^v(x)eta^{l} + xi^{l}(x)eta^v)"),
            tensor_components(&residual),
        ));
        Ok(report)
    }
}

/// Outcome of squaring a constructed `J`.
#[derive(Clone, Debug)]
pub struct DefectAnalysis {
    pub mode: LiftMode,
    pub profile: SignProfile,
    pub j: Tensor11,
    /// `J² − I`.
    pub residual: Tensor11,
    /// `(eps1 + a b eps2) Σ (ξ^v⊗η^L + ξ^L⊗η^v)`.
    pub predicted: Tensor11,
    pub coefficient: i64,
    /// Residual equals the prediction and the model satisfies its axioms.
    pub matches: bool,
    pub precondition: StructureReport,
}

impl DefectAnalysis {
    pub fn squares_to_identity(&self) -> bool {
        self.residual.is_zero()
    }

    pub fn precondition_holds(&self) -> bool {
        self.precondition.holds()
    }
}

pub fn build_tm_structure(model: &RParacontactModel, mode: LiftMode, a: Sign, b: Sign, conn: Option<&Connection>) -> Result<Tensor11> {
    Ok(TmLift::new(model, mode, conn)?.structure(a, b))
}

pub fn square_defect(model: &RParacontactModel, mode: LiftMode, a: Sign, b: Sign, conn: Option<&Connection>) -> Result<DefectAnalysis> {
    Ok(TmLift::new(model, mode, conn)?.square_defect(a, b))
}

pub fn lift_interaction_report(model: &RParacontactModel, mode: LiftMode, conn: Option<&Connection>) -> Result<StructureReport> {
    Ok(TmLift::new(model, mode, conn)?.interaction_report())
}

pub fn fc_square_identity(model: &RParacontactModel, mode: LiftMode, conn: Option<&Connection>) -> Result<StructureReport> {
    TmLift::new(model, mode, conn)?.square_identity()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::structure::{block_model, lorentzian_model, standard_model};
    use Sign::{Minus, Plus};

    #[test]
    fn complete_example() {
        let m = standard_model();
        let lift = TmLift::new(&m, LiftMode::Complete, None).unwrap();
        let t = lift.chart().total().clone();
        assert_eq!(t.names(), vec!["x", "y", "t", "x'", "y'", "t'"]);
        let j = lift.structure(Plus, Plus);
        let mut want = vec![vec![0; 6]; 6];
        for (r, c) in [(0, 1), (1, 0), (3, 4), (4, 3), (5, 2), (2, 5)] {
            want[r][c] = 1;
        }
        assert_eq!(j, Tensor11::from_ints(&t, &want).unwrap());
        let flipped = lift.structure(Plus, Minus);
        assert_eq!(flipped.get(2, 5), &Poly::int(&t, -1));
        let flat = Connection::flat(m.chart());
        assert_eq!(build_tm_structure(&m, LiftMode::Horizontal, Plus, Plus, Some(&flat)).unwrap(), j);
        assert_eq!(build_tm_structure(&m, LiftMode::Horizontal, Plus, Plus, None), Err(Error::MissingConnection));
    }

    #[test]
    fn defect_examples() {
        let d = square_defect(&standard_model(), LiftMode::Complete, Plus, Plus, None).unwrap();
        assert!(d.squares_to_identity() && d.matches && d.coefficient == 0);
        let l = square_defect(&lorentzian_model(), LiftMode::Complete, Minus, Plus, None).unwrap();
        assert_eq!(l.coefficient, 2);
        assert!(!l.squares_to_identity() && l.matches);
        let t = l.j.chart().clone();
        assert_eq!(l.residual.get(2, 2), &Poly::int(&t, -2));
        assert_eq!(l.residual.get(5, 5), &Poly::int(&t, -2));
    }

    #[test]
    fn interactions_and_square() {
        for eps2 in Sign::BOTH {
            let m = block_model(2, 1, eps2).unwrap();
            let flat = Connection::flat(m.chart());
            for mode in LiftMode::BOTH {
                let lift = TmLift::new(&m, mode, Some(&flat)).unwrap();
                let r = lift.interaction_report();
                assert!(r.holds(), "{r}");
                assert_eq!(r.entries.iter().filter(|e| !e.informational).count(), 8);
                assert!(lift.square_identity().unwrap().holds());
            }
        }
        let mut bad = standard_model();
        bad.eps1 = Plus;
        assert!(fc_square_identity(&bad, LiftMode::Complete, None).is_err());
    }

    #[test]
    fn horizontal_defect_with_curved_connection() {
        let m = block_model(1, 1, Minus).unwrap();
        let mut conn = Connection::flat(m.chart());
        conn.set_expr("x", "t", "y", "x*t + 1").unwrap();
        conn.set_expr("t", "y", "t", "j*y").unwrap();
        let lift = TmLift::new(&m, LiftMode::Horizontal, Some(&conn)).unwrap();
        assert!(lift.interaction_report().holds());
        for (a, b) in SignProfile::CORRECTIONS {
            let d = lift.square_defect(a, b);
            assert!(d.matches, "{a} {b}");
            assert_eq!(d.squares_to_identity(), d.coefficient == 0);
        }
    }
}
