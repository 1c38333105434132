//! The Kronecker quiver `1 ⇉ 2` worked example: both cluster multiplication
//! identities checked literally and against the general theorems.

use std::sync::Arc;

use serde::Serialize;
use serde_json::json;

use super::expr::{Expr, Relation};
use super::{CheckConfig, Outcome, Report, Verifier};
use crate::error::Result;
use crate::ffrep::{Bounds, Catalog};
use crate::hall::DecoratedObject;
use crate::quiver::{kronecker, DimVec};
use crate::scalar::ExactScalar;
use crate::torus::{monomial, torus_mul, TorusElement};

/// Checks plus the rendered identities.
#[derive(Clone, Debug, Serialize)]
pub struct KroneckerReport {
    pub q0: u32,
    pub report: Report,
    pub lines: Vec<String>,
}

impl KroneckerReport {
    pub fn ok(&self) -> bool {
        self.report.ok() && self.report.skipped == 0
    }
}

/// Runs the example over `𝔽_{q0²}`.
pub fn kronecker_example(q0: u32, bounds: Bounds) -> Result<KroneckerReport> {
    let cat = Arc::new(Catalog::new(Arc::new(kronecker(q0)), bounds)?);
    let ver = Verifier::new(cat.clone(), CheckConfig::default());
    let ctx = cat.context();
    let v = |k: i64| ExactScalar::vpow(q0, k);
    let x = |a: &[i64]| monomial(q0, DimVec(a.to_vec()));
    let mut report = Report::new("kronecker", &ctx.hash());
    let mut lines = Vec::new();

    let x_delta = x(&[1, -1]).add(&x(&[-1, -1])).add(&x(&[-1, 1]));
    lines.push(format!("X_delta = {x_delta}"));
    for r in cat.classes(&DimVec(vec![1, 1]))? {
        if cat.is_indecomposable(&r)? {
            let ch = ver.character(&DecoratedObject::module(r.clone()))?;
            report.record(Outcome::compare(json!({"check": "X_R = X_delta", "R": r.to_string()}), &ch, &x_delta));
        }
    }

    let (s1, s2, p1, p2) = (cat.simple(0), cat.simple(1), cat.projective(0), cat.projective(1));
    let ch = |o: &DecoratedObject| ver.character(o);
    let xs1 = ch(&DecoratedObject::module(s1.clone()))?;
    let xs2 = ch(&DecoratedObject::module(s2.clone()))?;
    let xi12 = ch(&DecoratedObject::shifted_injective(&cat, vec![1, 1]))?;
    let lhs1 = torus_mul(ctx, &xs1, &xs2);
    let rhs1 = x_delta.scale(&v(1)).add(&xi12.scale(&v(-3)));
    lines.push(format!("X_S1 X_S2 = {lhs1}"));
    lines.push(format!("          = v X_delta + v^-3 X_(I1+I2)[-1] = {rhs1}"));
    report.record(Outcome::compare(json!({"check": "X_S1 X_S2"}), &lhs1, &rhs1));

    let xp2 = ch(&DecoratedObject::shifted_projective(&cat, vec![0, 1]))?;
    let xp1 = ch(&DecoratedObject::module(p1.clone()))?;
    let s2i1 = DecoratedObject::new(vec![1, 0], s2.clone(), vec![0, 0]);
    let lhs2 = torus_mul(ctx, &xp2, &xp1);
    let rhs2 = x_delta.scale(&v(1)).add(&ch(&s2i1)?.scale(&v(-3)));
    lines.push(format!("X_P2[1] X_P1 = {lhs2}"));
    lines.push(format!("             = v X_delta + v^-3 X_(S2+I1[-1]) = {rhs2}"));
    report.record(Outcome::compare(json!({"check": "X_P2[1] X_P1"}), &lhs2, &rhs2));

    // (q⁴ − 1)-scaled multiplication theorem at (M, N) = (S1, S2)
    let q4 = &ExactScalar::qpow(q0, 4) - &ExactScalar::one(q0);
    let scaled = |t: &TorusElement| t.scale(&q4);
    let (l, r) = ver.ddlz_sides(&s1, &s2, |key| {
        let a = &key.a.dim;
        ver.ls(&(&s1.dim - a), &(&s2.dim + a)) + ver.eu(&(&s1.dim - a), &s2.dim)
    })?;
    let (l, r) = (ver.eval_torus(&l)?, ver.eval_torus(&r)?);
    report.record(Outcome::compare(json!({"check": "theorem at (S1,S2): lhs"}), &l, &scaled(&lhs1)));
    report.record(Outcome::compare(json!({"check": "theorem at (S1,S2): rhs"}), &r, &scaled(&rhs1)));
    let eps: num_bigint::BigUint = cat
        .ext_profile(&s1, &s2)?
        .iter()
        .filter(|(e, _)| cat.is_indecomposable(e).unwrap_or(false))
        .map(|(_, k)| k.clone())
        .sum();
    report.record(Outcome::compare(
        json!({"check": "sum of regular extension counts"}),
        &eps,
        &num_bigint::BigUint::from(u64::from(q0).pow(4) - 1),
    ));
    let strata: Vec<_> = cat.theta_strata(&s2, &s1)?.iter().filter(|(k, _)| k.d != s2).map(|(k, c)| (k.clone(), *c)).collect();
    let expect = format!("D=0 A=0 I=(1,1) count={}", u64::from(q0).pow(4) - 1);
    let got = strata
        .iter()
        .map(|(k, c)| format!("D={} A={} I=({},{}) count={c}", cat.describe(&k.d), cat.describe(&k.a), k.inj[0], k.inj[1]))
        .collect::<Vec<_>>()
        .join("; ");
    report.record(Outcome::compare(json!({"check": "nonzero maps S2 -> tau S1"}), &got, &expect));
    lines.push(format!("(q^4-1) X_S1 X_S2 = {r}"));

    // (q⁴ − 1)-scaled first identity of the injective/projective theorem at M = P1, P = P2
    let (sf, sg, _, _) = ver.dyggs_sums(&p1, 1)?;
    let i2 = cat.injective(1);
    let (pd, mi) = (ver.eu(&p2.dim, &p1.dim), ver.eu(&p1.dim, &i2.dim));
    let mut rhs = sf;
    rhs.extend(sg.scale(&v(-mi)));
    let rel = Relation {
        name: "P2[1]*P1",
        instance: json!("M=P1, P=P2, I=I2"),
        lhs: Expr::prod(&ExactScalar::qpow(q0, pd) - &ExactScalar::one(q0), vec![
            DecoratedObject::shifted_projective(&cat, vec![0, 1]),
            DecoratedObject::module(p1.clone()),
        ]),
        rhs: rhs.scale(&v(ver.ls(&p1.dim, &p2.dim))),
    };
    let (l, r) = (ver.eval_torus(&rel.lhs)?, ver.eval_torus(&rel.rhs)?);
    let literal = x_delta.scale(&q4).add(&ch(&s2i1)?.scale(&(&v(-4) * &q4))).scale(&v(1));
    report.record(Outcome::compare(json!({"check": "injective/projective theorem at P1: lhs"}), &l, &scaled(&lhs2)));
    report.record(Outcome::compare(json!({"check": "injective/projective theorem at P1: rhs"}), &r, &literal));
    lines.push(format!("(q^4-1) X_P2[1] X_P1 = {r}"));

    Ok(KroneckerReport { q0, report, lines })
}
