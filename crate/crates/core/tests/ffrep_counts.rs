use std::collections::BTreeMap;
use std::sync::Arc;

use num_bigint::BigUint;
use proptest::prelude::*;
use qca::ffrep::rep::{cokernel, hom_space};
use qca::ffrep::{Bounds, Catalog, Mat, Rep, RepClassId};
use qca::quiver::{a2_valued, kronecker, DimVec};

fn k2(q0: u32) -> Catalog {
    Catalog::new(Arc::new(kronecker(q0)), Bounds::default()).unwrap()
}

fn shared_k2() -> &'static Catalog {
    static CAT: std::sync::OnceLock<Catalog> = std::sync::OnceLock::new();
    CAT.get_or_init(|| k2(2))
}

fn a2() -> Catalog {
    Catalog::new(Arc::new(a2_valued(2)), Bounds::default()).unwrap()
}

fn dv(v: &[i64]) -> DimVec {
    DimVec(v.to_vec())
}

/// Regular modules of dimension (1,1): both arrow maps nonzero somewhere.
fn regular_11(cat: &Catalog) -> Vec<RepClassId> {
    let split = cat.sum(&[cat.simple(0), cat.simple(1)]).unwrap();
    cat.classes(&dv(&[1, 1])).unwrap().into_iter().filter(|c| *c != split).collect()
}

#[test]
fn hom_dimensions_kronecker() {
    let cat = k2(2);
    assert_eq!(cat.hom_dim(&cat.simple(0), &cat.simple(1)).unwrap(), 0);
    assert_eq!(cat.hom_dim(&cat.projective(0), &cat.projective(0)).unwrap(), 1);
    for c in cat.classes_up_to(2, None).unwrap() {
        let r = cat.rep(&c).unwrap();
        let h = hom_space(cat.algebra(), &r, &r);
        // identity lies in the span of the basis
        let id: Vec<u16> = r.identity().iter().flat_map(|m| m.data.clone()).collect();
        let cols: Vec<Vec<u16>> = h.basis.clone();
        let mut aug = Mat::from_cols(id.len(), &cols);
        let rank = aug.rank(cat.algebra().f());
        aug = aug.hstack(&Mat::from_cols(id.len(), &[id]));
        assert_eq!(aug.rank(cat.algebra().f()), rank, "identity of {c}");
    }
}

#[test]
fn ext_dimensions_kronecker() {
    let cat = k2(2);
    assert_eq!(cat.ext_count(&cat.simple(0), &cat.simple(1)).unwrap(), 4);
    assert_eq!(cat.ext_count(&cat.simple(1), &cat.simple(0)).unwrap(), 0);
    for x in cat.classes_up_to(2, None).unwrap() {
        for p in [cat.projective(0), cat.projective(1)] {
            assert_eq!(cat.ext_count(&p, &x).unwrap(), 0, "Ext(P, {x})");
        }
    }
}

#[test]
fn grassmannians() {
    let cat = k2(2);
    for c in cat.classes_up_to(2, None).unwrap() {
        assert_eq!(cat.grassmannian_count(&c, &DimVec::zero(2)).unwrap(), 1);
        assert_eq!(cat.grassmannian_count(&c, &c.dim).unwrap(), 1);
    }
    for r in regular_11(&cat) {
        assert_eq!(cat.grassmannian_count(&r, &dv(&[0, 1])).unwrap(), 1);
        assert_eq!(cat.grassmannian_count(&r, &dv(&[1, 0])).unwrap(), 0);
    }
    // |Gr_e M| = Σ_{A,B: B̂ = e} F^M_{AB}
    for m in cat.classes_up_to(2, None).unwrap() {
        for e in cat.dims_up_to(2, None) {
            if !e.le(&m.dim) {
                continue;
            }
            let total: u64 = cat.sub_profile(&m, &e).unwrap().values().sum();
            assert_eq!(total, cat.grassmannian_count(&m, &e).unwrap());
        }
    }
}

#[test]
fn hall_numbers_small() {
    let cat = k2(2);
    let (s1, s2) = (cat.simple(0), cat.simple(1));
    let split = cat.sum(&[s1.clone(), s2.clone()]).unwrap();
    assert_eq!(cat.hall_number(&split, &s1, &s2).unwrap(), 1);
    for m in cat.classes_up_to(2, None).unwrap() {
        assert_eq!(cat.hall_number(&m, &m, &cat.zero()).unwrap(), 1);
    }
    let a = a2();
    assert_eq!(a.hall_number(&a.projective(0), &a.simple(0), &a.simple(1)).unwrap(), 1);
}

#[test]
fn automorphism_orders() {
    let cat = k2(2);
    assert_eq!(cat.aut_order(&cat.simple(0)).unwrap(), 3);
    assert_eq!(cat.aut_order(&cat.zero()).unwrap(), 1);
    let s1s1 = cat.sum(&[cat.simple(0), cat.simple(0)]).unwrap();
    assert_eq!(cat.aut_order(&s1s1).unwrap(), (16 - 1) * (16 - 4));
    for cat in [k2(2), k2(3), a2()] {
        for v in 0..2 {
            for c in [cat.simple(v), cat.projective(v), cat.injective(v)] {
                assert_eq!(BigUint::from(cat.aut_order(&c).unwrap()), cat.local_aut_order(&c).unwrap());
            }
        }
    }
}

#[test]
fn extension_counts() {
    for q0 in [2, 3] {
        let cat = k2(q0);
        let (s1, s2) = (cat.simple(0), cat.simple(1));
        let q4 = BigUint::from(q0).pow(4);
        let regular: BigUint = regular_11(&cat)
            .iter()
            .map(|r| cat.ext_class_count(&s1, &s2, r).unwrap())
            .sum();
        assert_eq!(regular, &q4 - 1u32);
        let split = cat.sum(&[s1.clone(), s2.clone()]).unwrap();
        assert_eq!(cat.ext_class_count(&s1, &s2, &split).unwrap(), BigUint::from(1u32));
    }
}

#[test]
fn extension_counts_partition_ext_and_match_cocycles() {
    for cat in [k2(2), a2()] {
        let classes = cat.classes_up_to(1, None).unwrap();
        for m in &classes {
            for n in &classes {
                let prof = cat.ext_profile(m, n).unwrap();
                let total: BigUint = prof.values().sum();
                let expect = BigUint::from(cat.context().q0).pow(cat.ext_count(m, n).unwrap() as u32);
                assert_eq!(total, expect, "Σ ε for ({m}, {n})");
                let split = cat.sum(&[m.clone(), n.clone()]).unwrap();
                assert!(prof[&split] >= BigUint::from(1u32));
                let coc = cat.ext_profile_cocycles(m, n).unwrap();
                let prof: BTreeMap<_, _> = prof.as_ref().clone();
                assert_eq!(prof, coc, "two routes to ε for ({m}, {n})");
            }
        }
    }
}

#[test]
fn hom_strata_into_tau_s1() {
    let cat = k2(2);
    let (s1, s2) = (cat.simple(0), cat.simple(1));
    let ts1 = cat.tau(&s1).unwrap();
    assert_eq!(ts1.dim, dv(&[3, 2]));
    let strata = cat.hom_strata(&s2, &ts1).unwrap();
    let i12 = cat.sum(&[cat.injective(0), cat.injective(1)]).unwrap();
    let mut expect = BTreeMap::new();
    expect.insert((cat.zero(), i12), 15u64);
    expect.insert((s2.clone(), ts1.clone()), 1u64);
    assert_eq!(*strata, expect);
    let total: u64 = strata.values().sum();
    assert_eq!(BigUint::from(total), cat.hom_size(&s2, &ts1).unwrap());
}

#[test]
fn decompositions() {
    let cat = k2(2);
    let (s1, s2) = (cat.simple(0), cat.simple(1));
    let split = cat.sum(&[s1.clone(), s2.clone()]).unwrap();
    let mut expect = vec![s1.clone(), s2.clone()];
    expect.sort();
    assert_eq!(*cat.decompose(&split).unwrap(), expect);

    let ts1 = cat.tau(&s1).unwrap();
    let (s2r, tr) = (cat.rep(&s2).unwrap(), cat.rep(&ts1).unwrap());
    let h = hom_space(cat.algebra(), &s2r, &tr);
    let theta = h.unflatten(&h.basis[0]);
    let c = cat.identify(&cokernel(cat.algebra(), &tr, &theta)).unwrap();
    let mut inj = vec![cat.injective(0), cat.injective(1)];
    inj.sort();
    assert_eq!(*cat.decompose(&c).unwrap(), inj);

    let p1s1 = cat.sum(&[cat.projective(0), s1.clone()]).unwrap();
    assert_eq!(cat.strip_projective(&p1s1).unwrap(), (s1.clone(), vec![1, 0]));
}

#[test]
fn krull_schmidt_roundtrip() {
    let cat = k2(2);
    for c in cat.classes_up_to(2, None).unwrap() {
        let parts = cat.decompose(&c).unwrap();
        for p in parts.iter() {
            assert!(cat.is_indecomposable(p).unwrap());
        }
        let reps: Vec<Rep> = parts.iter().map(|p| cat.rep(p).unwrap()).collect();
        let sum = Rep::direct_sum_all(cat.algebra(), reps.iter());
        assert_eq!(cat.identify(&sum).unwrap(), c);
    }
}

#[test]
fn theta_strata_s2_s1() {
    let cat = k2(2);
    let (s1, s2) = (cat.simple(0), cat.simple(1));
    let strata = cat.theta_strata(&s2, &s1).unwrap();
    let mut expect = BTreeMap::new();
    expect.insert(
        qca::ffrep::ThetaKey {
            d: s2.clone(),
            a: s1.clone(),
            inj: vec![0, 0],
        },
        1u64,
    );
    expect.insert(
        qca::ffrep::ThetaKey {
            d: cat.zero(),
            a: cat.zero(),
            inj: vec![1, 1],
        },
        15u64,
    );
    assert_eq!(*strata, expect);
}

#[test]
fn tau_links() {
    let cat = k2(2);
    for r in regular_11(&cat) {
        assert_eq!(cat.tau(&r).unwrap(), r, "regular modules are τ-periodic");
    }
    for cat in [k2(2), a2(), k2(3)] {
        let ctx = cat.context().clone();
        let cap = if cat.q() > 4 { 1 } else { 2 };
        for c in cat.classes_up_to(cap, None).unwrap() {
            if !cat.is_indecomposable(&c).unwrap() || cat.is_projective(&c).unwrap() {
                continue;
            }
            let t = cat.tau(&c).unwrap();
            assert_eq!(t.dim, ctx.coxeter(&c.dim), "dim τ{c}");
            assert_eq!(cat.tau_inv(&t).unwrap(), c, "τ⁻¹τ{c}");
        }
    }
    let p1s1 = cat.sum(&[cat.projective(0), cat.simple(0)]).unwrap();
    assert!(cat.tau(&p1s1).is_err());
}

#[test]
fn ar_formula() {
    for cat in [k2(2), a2()] {
        let classes = cat.classes_up_to(1, None).unwrap();
        for m in &classes {
            let (mp, _) = cat.strip_projective(m).unwrap();
            let tm = cat.tau(&mp).unwrap();
            for n in &classes {
                let lhs = cat.context().d * cat.hom_dim(n, &tm).unwrap() as i64;
                assert_eq!(lhs, cat.ext_count(m, n).unwrap(), "AR formula ({m}, {n})");
            }
        }
    }
}

#[test]
fn classification_and_orbits() {
    let cat = k2(2);
    let c11 = cat.classes(&dv(&[1, 1])).unwrap();
    // the split class plus one regular class per point of P¹(𝔽₄)
    assert_eq!(c11.len(), 4 + 2);
    let orbits: u64 = c11.iter().map(|c| cat.orbit_size(c).unwrap().unwrap()).sum();
    assert_eq!(orbits, 16);
    assert_eq!(cat.classes(&dv(&[2, 2])).unwrap().len(), 34);
    for d in cat.dims_up_to(2, None) {
        assert!(cat.orbit_sum_check(&d).unwrap());
    }
    let c9 = k2(3).classes(&dv(&[1, 1])).unwrap();
    assert_eq!(c9.len(), 9 + 2);
}

#[test]
fn canonical_representatives_are_lex_minimal() {
    let cat = k2(2);
    let d = dv(&[1, 2]);
    let classes = cat.classes(&d).unwrap();
    let codes: Vec<Vec<u16>> = classes.iter().map(|c| cat.rep(c).unwrap().code()).collect();
    let mut sorted = codes.clone();
    sorted.sort();
    assert_eq!(codes, sorted);
    assert_eq!(codes[0], vec![0; 4]);
}

#[test]
fn resource_errors_are_reported() {
    let tight = Bounds {
        rep_space: 1 << 10,
        ..Bounds::default()
    };
    let cat = Catalog::new(Arc::new(kronecker(2)), tight).unwrap();
    let err = cat.classes(&dv(&[2, 2])).unwrap_err();
    assert!(err.is_resource());
    assert!(err.to_string().contains("1024"));
}

fn gl_elem(q: u16, n: usize) -> impl Strategy<Value = Vec<u16>> {
    proptest::collection::vec(0..q, n * n)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn conjugate_reps_share_a_class(code in proptest::collection::vec(0u16..4, 8), g1 in gl_elem(4, 2), g2 in gl_elem(4, 2)) {
        let cat = shared_k2();
        let f = cat.algebra().f();
        let (a, b) = (Mat::from_vec(2, 2, g1), Mat::from_vec(2, 2, g2));
        prop_assume!(a.is_invertible(f) && b.is_invertible(f));
        let rep = Rep::from_code(cat.algebra(), &[2, 2], &code);
        let ainv = a.inverse(f).unwrap();
        let conj = Rep {
            dim: rep.dim.clone(),
            maps: rep.maps.iter().map(|m| b.mul(f, &m.mul(f, &ainv))).collect(),
        };
        prop_assert_eq!(cat.identify(&rep).unwrap(), cat.identify(&conj).unwrap());
        prop_assert!(cat.is_isomorphic(&rep, &conj).unwrap());
    }
}
