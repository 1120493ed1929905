//! One line per acceptance criterion; exits nonzero if any fails.

use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

use paralift_core::expr::{Chart, Poly};
use paralift_core::lift::identities::TABLE;
use paralift_core::lift::{tangent_chart, Connection};
use paralift_core::oracle::{matrix_at, rank_at, Generator, PolyShape, SamplePoint};
use paralift_core::structure::*;
use paralift_core::tensor::{Metric, Tensor11};
use paralift_core::SplitComplex;

const SEED: u64 = 20_161_016;
const INSTANCES: u64 = 50;
const POINTS: usize = 10;
const MAX_K: usize = 3;
const MAX_R: usize = 3;
const INTERACTION_CONNECTIONS: usize = 5;
const DEFECT_CONNECTIONS: usize = 3;
const CANONICAL_BUDGET: Duration = Duration::from_secs(1);

struct Outcome {
    ok: bool,
    detail: String,
}

fn outcome(ok: bool, detail: impl Into<String>) -> Outcome {
    Outcome { ok, detail: detail.into() }
}

fn canonical_square() -> Outcome {
    let start = Instant::now();
    let mut ok = true;
    for m in 1..=3 {
        let names: Vec<String> = (1..=m).map(|i| format!("x{i}")).chain((1..=m).map(|i| format!("y{i}"))).collect();
        let c = Chart::new(&names).unwrap();
        let mut j = Tensor11::zero(&c);
        for i in 0..m {
            j.set(i, m + i, Poly::one(&c)).unwrap();
            j.set(m + i, i, Poly::one(&c)).unwrap();
        }
        let lc = tangent_chart(&c).unwrap();
        let jc = lc.clift_tensor(&j).unwrap();
        ok &= jc.square() == Tensor11::identity(lc.total());
    }
    let elapsed = start.elapsed();
    outcome(ok && elapsed < CANONICAL_BUDGET, format!("m = 1..3 in {} ms", elapsed.as_millis()))
}

fn identity_tables() -> Outcome {
    let mut failures = 0;
    for id in &TABLE {
        for k in 0..INSTANCES {
            if !id.run(SEED, k).map(|f| f.is_empty()).unwrap_or(false) {
                failures += 1;
            }
        }
    }
    outcome(failures == 0, format!("{} identities x {INSTANCES} instances, {failures} failures", TABLE.len()))
}

fn xyz() -> Chart {
    Chart::new(&["x", "y", "z"]).unwrap()
}

fn horizontal_scalar() -> Outcome {
    let c = xyz();
    let lc = tangent_chart(&c).unwrap();
    let mut g = Generator::new(SEED);
    let zero = (0..100).filter(|_| lc.hlift_scalar(&g.poly(&c, PolyShape::default())).unwrap().is_zero()).count();
    outcome(zero == 100, format!("{zero}/100 exact zero"))
}

fn coframe_duality() -> Outcome {
    let mut g = Generator::new(SEED + 1);
    let mut ok = 0;
    for k in 0..20 {
        let c = if k % 2 == 0 { Chart::new(&["x", "y"]).unwrap() } else { xyz() };
        let lc = tangent_chart(&c).unwrap();
        let conn = g.connection(&c, c.dim() * c.dim(), PolyShape::default());
        let m = lc.adapted_frame(&conn).unwrap().duality_matrix().unwrap();
        let id = m.iter().enumerate().all(|(r, row)| row.iter().enumerate().all(|(s, p)| *p == Poly::int(lc.total(), (r == s) as i64)));
        ok += id as usize;
    }
    outcome(ok == 20, format!("{ok}/20 connections, dims 2-3"))
}

#[derive(Default)]
struct Family {
    interactions: (usize, usize),
    squares: (usize, usize),
    defects: (usize, usize),
    oracle: (usize, usize),
}

fn tally(t: &mut (usize, usize), ok: bool) {
    t.0 += ok as usize;
    t.1 += 1;
}

fn family() -> Family {
    let mut out = Family::default();
    for k in 1..=MAX_K {
        for r in 1..=MAX_R {
            for eps2 in Sign::BOTH {
                let model = block_model(k, r, eps2).unwrap();
                let mut g = Generator::new(SEED ^ (100 * k + 10 * r) as u64 ^ (eps2 == Sign::Minus) as u64);
                let mut conns = vec![Connection::flat(model.chart())];
                conns.extend((0..INTERACTION_CONNECTIONS).map(|_| g.connection(model.chart(), model.n(), PolyShape::default())));
                for mode in LiftMode::BOTH {
                    for (ci, conn) in conns.iter().enumerate() {
                        let lift = TmLift::new(&model, mode, Some(conn)).unwrap();
                        tally(&mut out.interactions, lift.interaction_report().holds());
                        tally(&mut out.squares, lift.square_identity().map(|r| r.holds()).unwrap_or(false));
                        if ci > DEFECT_CONNECTIONS {
                            continue;
                        }
                        let points = SamplePoint::batch(lift.chart().total(), SEED, POINTS, true);
                        for (a, b) in SignProfile::CORRECTIONS {
                            let d = lift.square_defect(a, b);
                            let c = SignProfile::new(&model, a, b).defect_coefficient();
                            let sized = if c == 0 { d.squares_to_identity() } else { !d.residual.is_zero() && c.abs() == 2 };
                            tally(&mut out.defects, d.matches && d.coefficient == c && sized);
                            if c != 0 || ci > 1 {
                                continue;
                            }
                            let zero_at_points = points.iter().all(|p| matrix_at(&d.residual, p).unwrap().is_zero());
                            let report = check_almost_paracomplex(&d.j, &points).unwrap();
                            let n = model.n();
                            let detail = report.entry(EQUAL_EIGENBUNDLES).and_then(|e| e.detail.clone()).unwrap_or_default();
                            tally(&mut out.oracle, zero_at_points && report.holds() && detail.contains(&format!("e+ {n}/{n}, e- {n}/{n}")));
                        }
                    }
                }
            }
        }
    }
    out
}

fn counted(t: (usize, usize), what: &str) -> Outcome {
    outcome(t.0 == t.1 && t.1 > 0, format!("{}/{} {what}", t.0, t.1))
}

fn consistency() -> Outcome {
    let expect = [(Sign::Plus, Sign::Plus, false), (Sign::Minus, Sign::Minus, false), (Sign::Minus, Sign::Plus, true), (Sign::Plus, Sign::Minus, true)];
    let ok = expect.iter().all(|&(e1, e2, consistent)| {
        let c = axiom_consistency(e1, e2);
        c.consistent() == consistent && (consistent || (c.witness == 2 && c.to_string().starts_with("INCONSISTENT")))
    });
    outcome(ok, "(+1,+1), (-1,-1) inconsistent with witness 2; (-1,+1), (+1,-1) consistent")
}

fn metric_compatibility() -> Outcome {
    let std = standard_model();
    let c = std.chart().clone();
    let points = SamplePoint::batch(&c, SEED, POINTS, true);
    let euclid = Metric::from_ints(&c, &[vec![1, 0, 0], vec![0, 1, 0], vec![0, 0, 1]]).unwrap();
    let lorentz = Metric::from_ints(&c, &[vec![1, 0, 0], vec![0, 1, 0], vec![0, 0, -1]]).unwrap();
    let riemann = check_metric_compat(&euclid, &std, Sign::Minus, &points).unwrap().holds();
    let lor = check_metric_compat(&lorentz, &lorentzian_model(), Sign::Plus, &points).unwrap().holds();
    let bad = check_metric_compat(&euclid.scale_by(&SplitComplex::from_int(2)), &std, Sign::Minus, &points).unwrap();
    let printed = bad.to_string();
    let rejected = !bad.holds() && printed.contains("residual [t][t] = -1");
    outcome(riemann && lor && rejected, format!("examples {riemann}/{lor}, perturbed rejected {rejected}"))
}

fn rank_condition() -> Outcome {
    let mut ok = true;
    for model in [standard_model(), lorentzian_model()] {
        let points = SamplePoint::batch(model.chart(), SEED, POINTS, true);
        let n = model.n();
        ok &= points.iter().all(|p| rank_at(&model.f, p).unwrap() == (n - 1, n - 1));
        ok &= rank_entry(&model.f, model.r(), &points).unwrap().holds;
    }
    outcome(ok, format!("rank n-1 at {POINTS} points, standard and Lorentzian"))
}

fn determinism() -> Outcome {
    let run = || {
        Command::new(env!("CARGO_BIN_EXE_paralift"))
            .args(["selftest", "--seed", &SEED.to_string()])
            .env_remove("PARALIFT_SEED")
            .output()
            .unwrap()
    };
    let (a, b) = (run(), run());
    let same = a.stdout == b.stdout && !a.stdout.is_empty();
    outcome(same && a.status.success(), format!("{} bytes, identical {same}, exit {:?}", a.stdout.len(), a.status.code()))
}

fn main() -> ExitCode {
    let fam = family();
    let results: Vec<(&str, Outcome)> = vec![
        ("canonical (J^c)^2 = I", canonical_square()),
        ("lift identity tables", identity_tables()),
        ("f^h = 0", horizontal_scalar()),
        ("adapted coframe duality", coframe_duality()),
        ("interaction identities", counted(fam.interactions, "lifts")),
        ("(F^L)^2 closed form", counted(fam.squares, "lifts")),
        ("defect theorem", counted(fam.defects, "profiles")),
        ("consistency analyzer", consistency()),
        ("metric compatibility", metric_compatibility()),
        ("rank condition", rank_condition()),
        ("oracle/symbolic agreement", counted(fam.oracle, "zero-defect structures")),
        ("selftest determinism", determinism()),
    ];
    let mut all = true;
    for (i, (name, o)) in results.iter().enumerate() {
        println!("criterion {:>2} {}: {} ({})", i + 1, name, if o.ok { "PASS" } else { "FAIL" }, o.detail);
        all &= o.ok;
    }
    if all {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
