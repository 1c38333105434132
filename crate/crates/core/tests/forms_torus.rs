use proptest::prelude::*;
use qca::quiver::{a2_valued, kronecker, IntMatrix};
use qca::torus::{monomial, torus_mul};
use qca::{DimVec, ExactScalar, QuiverContext};

fn dv(v: &[i64]) -> DimVec {
    DimVec(v.to_vec())
}

fn vec2() -> impl Strategy<Value = DimVec> {
    prop::collection::vec(-6i64..=6, 2).prop_map(DimVec)
}

fn ctx() -> impl Strategy<Value = QuiverContext> {
    prop::sample::select(vec![kronecker(2), a2_valued(2), kronecker(3)])
}

#[test]
fn kronecker_forms_by_hand() {
    let k = kronecker(2);
    let (e1, e2) = (dv(&[1, 0]), dv(&[0, 1]));
    assert_eq!(k.euler(&e1, &e2), -4);
    assert_eq!(k.euler(&e1, &e1), 2);
    assert_eq!(k.euler(&e2, &e1), 0);
    assert_eq!(k.sym(&e1, &e2), -4);
    assert_eq!(k.sym(&e2, &e1), -4);
    assert_eq!(k.star_left(&e1), dv(&[1, 0]));
    assert_eq!(k.star_left(&e2), dv(&[-2, 1]));
    assert_eq!(k.star_right(&e1), dv(&[1, -2]));
    assert_eq!(k.star_left(&dv(&[0, 0])), dv(&[0, 0]));
    assert_eq!(k.lambda_form(&e1, &e2), 1);
    // (1,−2)ᵀ Λ (−2,1) with Λ = [[0,1],[−1,0]]
    assert_eq!(k.lambda_form(&k.star_right(&e1), &k.star_right(&e2)), 1);
    assert_eq!(k.coxeter(&e1), dv(&[3, 2]));
    assert_eq!(k.coxeter(&e2), dv(&[-2, -1]));
}

#[test]
fn euler_gram_commutes_with_valuations() {
    for c in [kronecker(2), a2_valued(2)] {
        let d = IntMatrix::diag(&vec![c.d; c.m]);
        assert_eq!(c.e.mul(&d), d.mul(&c.e));
    }
}

#[test]
fn kronecker_monomial_product() {
    let k = kronecker(2);
    let p = torus_mul(&k, &monomial(2, dv(&[1, 0])), &monomial(2, dv(&[0, 1])));
    assert_eq!(p, monomial(2, dv(&[1, 1])).scale(&ExactScalar::vpow(2, 1)));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn bilinear_form_identities(c in ctx(), a in vec2(), b in vec2()) {
        let (ba, bb) = (c.b.apply(&a), c.b.apply(&b));
        prop_assert_eq!(c.lambda_form(&ba, &c.star_left(&b)), c.euler(&a, &b));
        prop_assert_eq!(c.lambda_form(&ba, &c.star_right(&b)), c.euler(&b, &a));
        prop_assert_eq!(c.lambda_form(&ba, &bb), c.euler(&b, &a) - c.euler(&a, &b));
        prop_assert_eq!(
            c.lambda_form(&c.star_right(&a), &c.star_right(&b)),
            c.lambda_form(&c.star_left(&a), &c.star_left(&b))
        );
        prop_assert_eq!(c.sym(&a, &b), c.sym(&b, &a));
        prop_assert_eq!(c.sym(&a, &a), 2 * c.euler(&a, &a));
        prop_assert_eq!(c.lambda_form(&a, &b), -c.lambda_form(&b, &a));
    }

    #[test]
    fn translate_identities(c in ctx(), x in vec2(), y in vec2()) {
        let ty = c.coxeter(&y);
        prop_assert_eq!(c.euler(&x, &ty), -c.euler(&y, &x));
        prop_assert_eq!(c.star_left(&ty), -&c.star_right(&y));
        prop_assert_eq!(c.coxeter_inv(&ty), y);
    }

    #[test]
    fn torus_associativity_and_commutation(c in ctx(), a in vec2(), b in vec2(), d in vec2()) {
        let q0 = c.q0;
        let (x, y, z) = (monomial(q0, a.clone()), monomial(q0, b.clone()), monomial(q0, d));
        prop_assert_eq!(torus_mul(&c, &torus_mul(&c, &x, &y), &z), torus_mul(&c, &x, &torus_mul(&c, &y, &z)));
        let twist = ExactScalar::vpow(q0, 2 * c.lambda_form(&a, &b));
        prop_assert_eq!(torus_mul(&c, &x, &y), torus_mul(&c, &y, &x).scale(&twist));
        let inv = monomial(q0, -&a);
        prop_assert_eq!(torus_mul(&c, &x, &inv), monomial(q0, DimVec::zero(2)));
    }
}
