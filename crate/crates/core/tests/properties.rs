use proptest::prelude::*;

use rigidtrace::bord::{bord_trace, cyclic_rational_irreps, evaluate, Bordism, FinGroup, SignedWord};
use rigidtrace::field::{Field, PrimeField, Rationals};
use rigidtrace::gamma::{compose, gamma_maps, nerve_monoid, FinCMonoid};
use rigidtrace::matrix::Matrix;
use rigidtrace::smc::{trace, MatrixCategory, SymmetricMonoidal};

fn rational_matrix(rows: usize, cols: usize) -> impl Strategy<Value = Matrix<Rationals>> {
    prop::collection::vec((-4i64..=4, 1i64..=3), rows * cols).prop_map(move |v| {
        let q = Rationals;
        Matrix::from_fn(q, rows, cols, |r, c| {
            let (n, d) = v[r * cols + c];
            q.mul(&q.from_i64(n), &q.inv(&q.from_i64(d)).unwrap())
        })
    })
}

fn square_pair() -> impl Strategy<Value = (Matrix<Rationals>, Matrix<Rationals>)> {
    (1usize..=3, 1usize..=3).prop_flat_map(|(x, y)| (rational_matrix(y, x), rational_matrix(x, y)))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn categorical_trace_is_cyclic_and_matches_matrix_trace((f, g) in square_pair()) {
        let a = MatrixCategory::new(Rationals, 9);
        let (x, y) = (f.cols(), f.rows());
        let gf = a.compose(&g, &f).unwrap();
        let fg = a.compose(&f, &g).unwrap();
        let t1 = trace(&a, &a.standard_duality(x), &gf).unwrap();
        let t2 = trace(&a, &a.standard_duality(y), &fg).unwrap();
        prop_assert_eq!(&t1, &t2);
        prop_assert_eq!(t1.get(0, 0), &gf.trace().unwrap());
    }

    #[test]
    fn prime_field_laws(a in 0i64..7, b in 0i64..7, c in 1i64..7) {
        let f = PrimeField::new(7).unwrap();
        let (a, b, c) = (f.from_i64(a), f.from_i64(b), f.from_i64(c));
        prop_assert_eq!(f.mul(&f.add(&a, &b), &c), f.add(&f.mul(&a, &c), &f.mul(&b, &c)));
        prop_assert!(f.is_one(&f.mul(&c, &f.inv(&c).unwrap())));
        prop_assert_eq!(f.parse(&f.format(&a)).unwrap(), a);
    }

    #[test]
    fn rational_elements_print_and_parse_back(n in -50i64..50, d in 1i64..20) {
        let q = Rationals;
        let x = q.mul(&q.from_i64(n), &q.inv(&q.from_i64(d)).unwrap());
        prop_assert_eq!(q.parse(&q.format(&x)).unwrap(), x);
    }

    #[test]
    fn monoid_nerve_respects_composition(n in 0usize..=2, m in 0usize..=2, k in 0usize..=2, i in 0usize..64, j in 0usize..64, x in 0usize..9) {
        let e = FinCMonoid::cyclic(3);
        let nerve = nerve_monoid(&e, 2);
        let us = gamma_maps(n, m);
        let vs = gamma_maps(m, k);
        let (u, v) = (&us[i % us.len()], &vs[j % vs.len()]);
        let x = x % nerve.size(n);
        let vu = compose(v, u).unwrap();
        prop_assert_eq!(nerve.apply(v, nerve.apply(u, x)), nerve.apply(&vu, x));
    }

    #[test]
    fn holonomy_evaluation_is_multiplicative(g in 0usize..3, h in 0usize..3, which in 0usize..2) {
        let grp = FinGroup::cyclic(3);
        let rho = &cyclic_rational_irreps(&grp, 3, Rationals).unwrap()[which];
        let (bg, bh) = (Bordism::holonomy(&grp, g), Bordism::holonomy(&grp, h));
        let composite = bg.then(&bh, &grp).unwrap();
        let lhs = evaluate(rho, &grp, &composite);
        let rhs = evaluate(rho, &grp, &bh).mul(&evaluate(rho, &grp, &bg)).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn closing_a_holonomy_gives_its_trace(g in 0usize..6) {
        let grp = FinGroup::s3();
        let cup = Bordism::cup(&grp);
        let cap = Bordism::cap(&grp);
        let middle = Bordism::identity(&grp, &SignedWord(vec![false])).tensor(&Bordism::holonomy(&grp, g), &grp);
        let closed = cup.then(&middle, &grp).unwrap();
        let swapped = closed.then(&Bordism::permutation(&grp, &SignedWord(vec![false, true]), &[1, 0]), &grp).unwrap();
        let circle = swapped.then(&cap, &grp).unwrap();
        prop_assert_eq!(circle, bord_trace(&grp, g));
    }
}
