use num_rational::BigRational;
use num_traits::Zero;
use paralift_core::expr::Chart;
use paralift_core::oracle::{matrix_at, random_model, rank, rank_at, Generator, PolyShape, SamplePoint};
use paralift_core::structure::{block_model, Sign};
use paralift_core::tensor::Tensor11;
use proptest::prelude::*;

fn naive_rank(m: &[Vec<BigRational>]) -> usize {
    let mut a = m.to_vec();
    let cols = a.first().map_or(0, Vec::len);
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..a.len()).find(|&i| !a[i][c].is_zero()) else { continue };
        a.swap(r, p);
        for i in 0..a.len() {
            if i != r && !a[i][c].is_zero() {
                let f = &a[i][c] / &a[r][c];
                for k in 0..cols {
                    let v = &f * &a[r][k];
                    a[i][k] -= v;
                }
            }
        }
        r += 1;
    }
    r
}

proptest! {
    #[test]
    fn fraction_free_rank_matches_elimination(
        rows in prop::collection::vec(prop::collection::vec((-3i64..=3, 1i64..=3), 5), 1..6),
        dup in any::<bool>(),
    ) {
        let mut m: Vec<Vec<BigRational>> = rows
            .iter()
            .map(|r| r.iter().map(|&(n, d)| BigRational::new(n.into(), d.into())).collect())
            .collect();
        if dup {
            let first = m[0].clone();
            m.push(first.iter().map(|v| v * BigRational::from_integer(2.into())).collect());
        }
        prop_assert_eq!(rank(&m), naive_rank(&m));
    }
}

#[test]
fn evaluation_respects_composition() {
    let c = Chart::new(&["x", "y", "z"]).unwrap();
    let mut g = Generator::new(21);
    for k in 0..20 {
        let (s, t) = (g.tensor(&c, PolyShape::default()), g.tensor(&c, PolyShape::default()));
        let p = SamplePoint::random(&c, 21, k, false);
        let lhs = matrix_at(&s.compose(&t).unwrap(), &p).unwrap();
        assert_eq!(lhs, matrix_at(&s, &p).unwrap().mul(&matrix_at(&t, &p).unwrap()));
        assert_eq!(lhs.reconstruct().len(), 3);
    }
}

#[test]
fn rank_is_conjugation_invariant() {
    for (k, r) in [(1, 1), (2, 1), (1, 3), (3, 2)] {
        for seed in 0..4 {
            let base = block_model(k, r, Sign::Plus).unwrap();
            let conj = random_model(k, r, Sign::Plus, Some(seed)).unwrap();
            let p = SamplePoint::random(base.chart(), seed, 0, true);
            assert_eq!(rank_at(&base.f, &p).unwrap(), rank_at(&conj.f, &p).unwrap());
            assert_eq!(rank_at(&conj.f, &p).unwrap(), (2 * k, 2 * k));
        }
    }
}

#[test]
fn canonical_structure_is_a_swap() {
    let c = Chart::new(&["x", "y"]).unwrap();
    let j = Tensor11::from_ints(&c, &[vec![0, 1], vec![1, 0]]).unwrap();
    for p in SamplePoint::batch(&c, 9, 5, false) {
        let m = matrix_at(&j, &p).unwrap();
        assert_eq!(m.plus, m.minus);
        assert_eq!(m.mul(&m), matrix_at(&Tensor11::identity(&c), &p).unwrap());
    }
    assert_eq!(rank_at(&Tensor11::zero(&c), &SamplePoint::from_ints(&c, &[1, 1]).unwrap()).unwrap(), (0, 0));
}
