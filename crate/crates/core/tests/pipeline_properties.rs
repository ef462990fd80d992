//! Cross-module properties of the A4 pipeline: grading, Poisson bracket and
//! the rank of the Gram matrix at random parameter values.

use std::sync::OnceLock;

use proptest::prelude::*;

use severi_core::arith::{int, rat, Matrix, Monomial, Poly, Rational};
use severi_core::groebner::Budget;
use severi_core::jacobian::JacobianModule;
use severi_core::period::{choose_truncation, omega_matrix};
use severi_core::singularity::{CurveSingularity, VersalDeformation};
use severi_core::strata::{rank_at, skew_gram, PoissonStructure, SkewGram};

struct A4 {
    v: VersalDeformation,
    chi: Matrix,
    gram: SkewGram,
    poisson: PoissonStructure,
}

fn a4() -> &'static A4 {
    static CELL: OnceLock<A4> = OnceLock::new();
    CELL.get_or_init(|| {
        let v = CurveSingularity::catalog("A4").unwrap().versal().unwrap();
        let chi = JacobianModule::new(&v).unwrap().saito_matrix().unwrap();
        let w = omega_matrix(&v, choose_truncation(&v), &Budget::unlimited()).unwrap().w;
        let gram = skew_gram(&chi, &w).unwrap();
        let poisson = PoissonStructure::new(&w).unwrap();
        A4 { v, chi, gram, poisson }
    })
}

fn point() -> impl Strategy<Value = Vec<i64>> {
    prop::collection::vec(-4i64..=4, 4)
}

/// Small polynomials in `a, b, c, d` of total degree at most 2.
fn poly() -> impl Strategy<Value = Vec<(usize, usize, i64)>> {
    prop::collection::vec((0usize..5, 0usize..5, -3i64..=3), 0..5)
}

fn build(terms: &[(usize, usize, i64)]) -> Poly {
    let r = a4().v.params_ring();
    let mut p = Poly::zero(r);
    for &(i, j, c) in terms {
        let mut e = [0u32; 4];
        if i < 4 {
            e[i] += 1;
        }
        if j < 4 {
            e[j] += 1;
        }
        p = p.add(&Poly::monomial(r, Monomial::from_exps(&e), int(c)));
    }
    p
}

fn rationals(xs: &[i64]) -> Vec<Rational> {
    xs.iter().map(|&x| int(x)).collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn gram_rank_is_even_and_weight_invariant(u in point(), t in prop::sample::select(vec![-2i64, 2, 3])) {
        let s = a4();
        let r = rank_at(&s.gram, &rationals(&u)).unwrap();
        prop_assert!(r % 2 == 0 && r <= 4);
        // u ↦ t·u scales M_ij by t^weight, leaving the rank unchanged
        let scaled: Vec<Rational> = u.iter().zip(&s.v.weights).map(|(&x, &w)| int(x) * int(t).pow(w as i32)).collect();
        prop_assert_eq!(rank_at(&s.gram, &scaled).unwrap(), r);
    }

    #[test]
    fn saito_matrix_is_weighted_homogeneous_at_points(u in point()) {
        let s = a4();
        let t = rat(1, 2);
        let at = |u: &[Rational]| s.chi.evaluate(&u.iter().cloned().enumerate().collect::<Vec<_>>()).as_constants().unwrap();
        let base = at(&rationals(&u));
        let scaled: Vec<Rational> = u.iter().zip(&s.v.weights).map(|(&x, &w)| int(x) * t.pow(w as i32)).collect();
        let moved = at(&scaled);
        let j = JacobianModule::new(&s.v).unwrap();
        for i in 0..4 {
            for k in 0..4 {
                let e = j.saito_entry_weight(i, k) as i32;
                prop_assert_eq!(&moved[i][k], &(&base[i][k] * t.pow(e)));
            }
        }
    }

    #[test]
    fn bracket_is_antisymmetric_and_a_derivation(f in poly(), g in poly(), h in poly()) {
        let p = &a4().poisson;
        let (f, g, h) = (build(&f), build(&g), build(&h));
        prop_assert_eq!(p.bracket(&f, &g).unwrap(), p.bracket(&g, &f).unwrap().neg());
        let lhs = p.bracket(&f, &g.mul(&h)).unwrap();
        let rhs = p.bracket(&f, &g).unwrap().mul(&h).add(&g.mul(&p.bracket(&f, &h).unwrap()));
        prop_assert_eq!(lhs, rhs);
    }
}

#[test]
fn inverse_is_exact() {
    let p = &a4().poisson;
    let r = a4().v.params_ring();
    let prod = p.w().mul(p.inverse()).unwrap();
    assert_eq!(prod, Matrix::identity(r, 4));
}
