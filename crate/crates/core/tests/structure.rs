use paralift_core::lift::Connection;
use paralift_core::oracle::{matrix_at, random_conjugate, Generator, PolyShape, SamplePoint};
use paralift_core::structure::*;
use paralift_core::tensor::Tensor11;

fn connections(model: &RParacontactModel, seed: u64, random: usize) -> Vec<Connection> {
    let mut g = Generator::new(seed);
    let mut out = vec![Connection::flat(model.chart())];
    for _ in 0..random {
        out.push(g.connection(model.chart(), model.n(), PolyShape::default()));
    }
    out
}

#[test]
fn defect_theorem_over_block_models() {
    for k in 1..=3 {
        for r in 1..=3 {
            for eps2 in Sign::BOTH {
                let model = block_model(k, r, eps2).unwrap();
                for (ci, conn) in connections(&model, (10 * k + r) as u64, 3).iter().enumerate() {
                    for mode in LiftMode::BOTH {
                        if mode == LiftMode::Complete && ci > 0 {
                            continue;
                        }
                        let lift = TmLift::new(&model, mode, Some(conn)).unwrap();
                        for (a, b) in SignProfile::CORRECTIONS {
                            let d = lift.square_defect(a, b);
                            assert!(d.matches, "B({k},{r}) eps2={eps2} {mode} a={a} b={b}");
                            assert_eq!(d.squares_to_identity(), d.coefficient == 0);
                            assert!(d.coefficient == 0 || d.coefficient.abs() == 2);
                        }
                    }
                }
            }
        }
    }
}

#[test]
fn conjugated_models_keep_every_verdict() {
    let mut g = Generator::new(77);
    for (k, r) in [(1, 1), (2, 1), (1, 2), (2, 2)] {
        for eps2 in Sign::BOTH {
            let model = block_model(k, r, eps2).unwrap();
            let conj = random_conjugate(&model, g.int(0, 1000) as u64).unwrap();
            assert!(check_r_paracontact(&conj).holds());
            let conn = g.connection(conj.chart(), conj.n(), PolyShape::default());
            for mode in LiftMode::BOTH {
                let lift = TmLift::new(&conj, mode, Some(&conn)).unwrap();
                assert!(lift.interaction_report().holds());
                assert!(lift.square_identity().unwrap().holds());
                for (a, b) in SignProfile::CORRECTIONS {
                    let d = lift.square_defect(a, b);
                    assert!(d.matches);
                    let base = square_defect(&model, mode, a, b, Some(&Connection::flat(model.chart()))).unwrap();
                    assert_eq!(d.squares_to_identity(), base.squares_to_identity());
                }
            }
        }
    }
}

#[test]
fn zero_defect_structures_are_paracomplex() {
    for (k, r) in [(1, 1), (2, 1), (1, 2)] {
        for eps2 in Sign::BOTH {
            let model = block_model(k, r, eps2).unwrap();
            let conn = Generator::new(5).connection(model.chart(), model.n(), PolyShape::default());
            for mode in LiftMode::BOTH {
                let lift = TmLift::new(&model, mode, Some(&conn)).unwrap();
                for (a, b) in SignProfile::CORRECTIONS {
                    if SignProfile::new(&model, a, b).defect_coefficient() != 0 {
                        continue;
                    }
                    let j = lift.structure(a, b);
                    let points = SamplePoint::batch(j.chart(), 3, 10, true);
                    let report = check_almost_paracomplex(&j, &points).unwrap();
                    assert!(report.holds(), "{report}");
                    let n = model.n();
                    assert!(report.entry(EQUAL_EIGENBUNDLES).unwrap().detail.as_deref().unwrap().contains(&format!("e+ {n}/{n}")));
                }
            }
        }
    }
}

#[test]
fn residuals_vanish_pointwise() {
    let model = block_model(2, 1, Sign::Minus).unwrap();
    let conn = Generator::new(8).connection(model.chart(), 5, PolyShape::default());
    let lift = TmLift::new(&model, LiftMode::Horizontal, Some(&conn)).unwrap();
    let d = lift.square_defect(Sign::Plus, Sign::Plus);
    assert!(d.residual.is_zero());
    for p in SamplePoint::batch(d.residual.chart(), 4, 10, false) {
        assert!(matrix_at(&d.residual, &p).unwrap().is_zero());
        let j = matrix_at(&d.j, &p).unwrap();
        assert_eq!(j.mul(&j), matrix_at(&Tensor11::identity(d.j.chart()), &p).unwrap());
    }
}

#[test]
fn single_frame_checker_agrees_with_paracontact_checker() {
    let mut g = Generator::new(13);
    for k in 0..20 {
        let eps2 = g.sign();
        let mut model = g.conjugated_block_model(1 + k % 2, 1, eps2).unwrap();
        if k % 3 == 0 {
            model.eps1 = g.sign();
        }
        if k % 5 == 0 {
            model.f = g.tensor(model.chart(), PolyShape::default());
        }
        let general = check_r_paracontact(&model);
        let single = check_paracontact(&model.f, &model.xi[0], &model.eta[0], model.eps1, model.eps2, &[]).unwrap();
        for e in &general.entries {
            assert_eq!(single.entry(&e.name).unwrap(), e);
        }
    }
}

#[test]
fn interaction_signs_follow_eps2() {
    let plus = lift_interaction_report(&standard_model(), LiftMode::Complete, None).unwrap();
    assert!(plus.holds());
    let minus = lift_interaction_report(&lorentzian_model(), LiftMode::Complete, None).unwrap();
    assert!(minus.holds());
    assert!(minus.entry("eta^c o F^v = 0").unwrap().informational);
}
