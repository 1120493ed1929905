use paralift_core::expr::{parse_expr, Chart, Poly, SplitComplex};
use paralift_core::oracle::{Generator, PolyShape};
use paralift_core::tensor::{ParacomplexChange, VectorField};
use proptest::prelude::*;

fn chart() -> Chart {
    Chart::new(&["x", "y", "t"]).unwrap()
}

fn shape() -> PolyShape {
    PolyShape { max_degree: 3, max_terms: 4, split: true }
}

fn poly() -> impl Strategy<Value = Poly> {
    any::<u64>().prop_map(|s| Generator::new(s).poly(&chart(), shape()))
}

fn point() -> impl Strategy<Value = Vec<SplitComplex>> {
    prop::collection::vec((-6i64..=6, 1i64..=4, -2i64..=2), 3).prop_map(|v| {
        v.into_iter()
            .map(|(n, d, j)| SplitComplex::new(SplitComplex::from_ratio(n, d).re, SplitComplex::from_int(j).re))
            .collect()
    })
}

proptest! {
    #[test]
    fn printing_round_trips(p in poly()) {
        let text = p.to_string();
        prop_assert_eq!(parse_expr(&text, &chart()).unwrap(), p);
    }

    #[test]
    fn canonical_form_is_order_independent(p in poly(), q in poly(), r in poly()) {
        prop_assert_eq!(&(&p + &q) + &r, &p + &(&r + &q));
        prop_assert_eq!(&(&p * &q) * &r, &q * &(&r * &p));
        prop_assert_eq!(&p * &(&q + &r), &(&p * &q) + &(&p * &r));
        prop_assert!((&p - &p).is_zero());
    }

    #[test]
    fn leibniz_rule(p in poly(), q in poly(), i in 0usize..3) {
        let lhs = (&p * &q).diff(i).unwrap();
        let rhs = &(&p.diff(i).unwrap() * &q) + &(&p * &q.diff(i).unwrap());
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn evaluation_is_a_ring_homomorphism(p in poly(), q in poly(), x in point()) {
        let (a, b) = (p.eval(&x).unwrap(), q.eval(&x).unwrap());
        prop_assert_eq!((&p * &q).eval(&x).unwrap(), &a * &b);
        prop_assert_eq!((&p + &q).eval(&x).unwrap(), &a + &b);
    }

    #[test]
    fn idempotent_decomposition_is_multiplicative(p in poly(), q in poly()) {
        let (pp, pm) = p.idempotent_decompose();
        let (qp, qm) = q.idempotent_decompose();
        let (rp, rm) = (&p * &q).idempotent_decompose();
        prop_assert_eq!(rp, &pp * &qp);
        prop_assert_eq!(rm, &pm * &qm);
        prop_assert_eq!(Poly::from_null_components(&pp, &pm).unwrap(), p);
    }

    #[test]
    fn jacobi_identity(s in any::<u64>()) {
        let c = chart();
        let mut g = Generator::new(s);
        let sh = PolyShape { max_degree: 2, max_terms: 2, split: true };
        let (x, y, z) = (g.vector(&c, sh), g.vector(&c, sh), g.vector(&c, sh));
        let br = |a: &VectorField, b: &VectorField| a.lie_bracket(b).unwrap();
        let sum = br(&x, &br(&y, &z)).add(&br(&y, &br(&z, &x))).unwrap().add(&br(&z, &br(&x, &y))).unwrap();
        prop_assert!(sum.is_zero());
    }

    #[test]
    fn paracomplex_change_round_trips(s in any::<u64>()) {
        let c = Chart::new(&["x", "y"]).unwrap();
        let change = ParacomplexChange::new(&c, &[("x", "y")]).unwrap();
        let mut g = Generator::new(s);
        let sh = PolyShape { max_degree: 2, max_terms: 3, split: true };
        let (f, v, w) = (g.poly(&c, sh), g.vector(&c, sh), g.oneform(&c, sh));
        prop_assert_eq!(change.backward(&change.forward(&f).unwrap()).unwrap(), f);
        let (fv, fw) = (change.forward(&v).unwrap(), change.forward(&w).unwrap());
        prop_assert_eq!(change.backward(&fw.pair(&fv).unwrap()).unwrap(), w.pair(&v).unwrap());
    }
}

#[test]
fn parse_error_location() {
    let e = parse_expr("x + ", &chart()).unwrap_err();
    assert_eq!((e.offset, e.line, e.column), (4, 1, 5));
    assert!(parse_expr("x + q", &chart()).is_err());
    assert!(parse_expr("2^x", &chart()).is_err());
}
