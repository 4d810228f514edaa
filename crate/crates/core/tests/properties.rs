//! Randomized invariants over the rationals, where the exhaustive loops in
//! the per-module unit tests cannot reach. Element generation keeps numbers
//! small so each case stays cheap; proptest shrinks any counterexample.

use brauer_core::linalg::{determinant, invert, rank, reduced_echelon, Matrix};
use brauer_core::projective::ProjPoint;
use brauer_core::rings::{Elem, Ring};
use proptest::prelude::*;

fn qq() -> Ring {
    Ring::rationals()
}

/// A small rational n/d built through ring arithmetic.
fn rat(ring: &Ring, n: i64, d: i64) -> Elem {
    let inv = ring
        .unit_inverse(&ring.from_i64(d))
        .expect("denominator is nonzero");
    ring.mul(&ring.from_i64(n), &inv)
}

fn elem_strategy() -> impl Strategy<Value = (i64, i64)> {
    (-30i64..=30, 1i64..=12)
}

fn matrix_strategy(rows: usize, cols: usize) -> impl Strategy<Value = Vec<Vec<(i64, i64)>>> {
    prop::collection::vec(prop::collection::vec(elem_strategy(), cols), rows)
}

fn build(ring: &Ring, raw: &[Vec<(i64, i64)>]) -> Matrix {
    Matrix::from_rows(
        raw.iter()
            .map(|row| row.iter().map(|&(n, d)| rat(ring, n, d)).collect())
            .collect(),
    )
}

proptest! {
    #[test]
    fn field_axioms_hold_for_random_rationals(
        a in elem_strategy(), b in elem_strategy(), c in elem_strategy()
    ) {
        let q = qq();
        let (a, b, c) = (rat(&q, a.0, a.1), rat(&q, b.0, b.1), rat(&q, c.0, c.1));
        prop_assert_eq!(q.add(&a, &b), q.add(&b, &a));
        prop_assert_eq!(q.mul(&a, &b), q.mul(&b, &a));
        prop_assert_eq!(q.add(&q.add(&a, &b), &c), q.add(&a, &q.add(&b, &c)));
        prop_assert_eq!(q.mul(&q.mul(&a, &b), &c), q.mul(&a, &q.mul(&b, &c)));
        prop_assert_eq!(
            q.mul(&a, &q.add(&b, &c)),
            q.add(&q.mul(&a, &b), &q.mul(&a, &c))
        );
        // Exact inverses: (a + b) - b = a, and (a * b) / b = a for b != 0.
        prop_assert_eq!(q.sub(&q.add(&a, &b), &b), a.clone());
        if !q.is_zero(&b) {
            let binv = q.unit_inverse(&b).unwrap();
            prop_assert_eq!(q.mul(&q.mul(&a, &b), &binv), a);
        }
    }

    #[test]
    fn echelon_form_is_exact_and_canonical(raw in matrix_strategy(3, 4)) {
        let q = qq();
        let m = build(&q, &raw);
        let ech = reduced_echelon(&q, &m);
        // The transform is recorded exactly: E = M * T, with T invertible.
        prop_assert_eq!(m.mul(&q, &ech.t), ech.e.clone());
        prop_assert!(invert(&q, &ech.t).is_ok());
        // Echelon form is a fixed point, so it is a canonical representative.
        let again = reduced_echelon(&q, &ech.e);
        prop_assert_eq!(again.e, ech.e);
        prop_assert_eq!(rank(&q, &m), ech.pivots.len());
    }

    #[test]
    fn inversion_roundtrips_when_it_succeeds(raw in matrix_strategy(3, 3)) {
        let q = qq();
        let m = build(&q, &raw);
        match invert(&q, &m) {
            Ok(minv) => {
                prop_assert_eq!(m.mul(&q, &minv), Matrix::identity(&q, 3));
                prop_assert_eq!(minv.mul(&q, &m), Matrix::identity(&q, 3));
                prop_assert!(!q.is_zero(&determinant(&q, &m)));
            }
            Err(_) => {
                prop_assert!(q.is_zero(&determinant(&q, &m)));
                prop_assert!(rank(&q, &m) < 3);
            }
        }
    }

    #[test]
    fn matrix_product_is_compatible_with_matvec(
        ra in matrix_strategy(2, 3), rb in matrix_strategy(3, 2), v in
            prop::collection::vec(elem_strategy(), 2)
    ) {
        let q = qq();
        let a = build(&q, &ra);
        let b = build(&q, &rb);
        let v: Vec<Elem> = v.into_iter().map(|(n, d)| rat(&q, n, d)).collect();
        let ab = a.mul(&q, &b);
        prop_assert_eq!(ab.matvec(&q, &v), a.matvec(&q, &b.matvec(&q, &v)));
    }

    #[test]
    fn projective_representatives_ignore_scale(
        coords in prop::collection::vec(elem_strategy(), 3),
        lam in (1i64..=20, 1i64..=20)
    ) {
        let q = qq();
        let v: Vec<Elem> = coords.iter().map(|&(n, d)| rat(&q, n, d)).collect();
        prop_assume!(v.iter().any(|e| !q.is_zero(e)));
        let lam = rat(&q, lam.0, lam.1);
        let scaled: Vec<Elem> = v.iter().map(|e| q.mul(&lam, e)).collect();
        prop_assert_eq!(
            ProjPoint::normalize(&q, v).unwrap(),
            ProjPoint::normalize(&q, scaled).unwrap()
        );
    }
}
