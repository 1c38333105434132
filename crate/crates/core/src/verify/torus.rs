//! Suites in the quantum torus: commutation, factorization chains and the
//! multiplication theorems evaluated on cluster characters.

use serde_json::json;

use super::expr::{Expr, Relation};
use super::{Outcome, Report, Suite, Verifier};
use crate::error::Result;
use crate::ffrep::{RepClassId, ThetaKey};
use crate::hall::DecoratedObject;
use crate::quiver::DimVec;
use crate::scalar::ExactScalar;
use crate::torus::{monomial, torus_mul};

/// `(q^k − 1)`.
fn q_minus_one(q0: u32, k: i64) -> ExactScalar {
    &ExactScalar::qpow(q0, k) - &ExactScalar::one(q0)
}

impl Verifier {
    pub(super) fn unit_counts(&self, v: usize) -> Vec<u32> {
        let mut c = vec![0u32; self.hall().context().m];
        c[v] = 1;
        c
    }

    fn module_vertex_pairs(&self) -> Result<Vec<(RepClassId, usize)>> {
        let m = self.hall().context().m;
        Ok(self
            .modules()?
            .into_iter()
            .flat_map(|x| (0..m).map(move |v| (x.clone(), v)))
            .collect())
    }

    fn module_pairs(&self) -> Result<Vec<(RepClassId, RepClassId)>> {
        let mods = self.modules()?;
        Ok(mods
            .iter()
            .flat_map(|x| mods.iter().map(move |y| (x.clone(), y.clone())))
            .collect())
    }

    fn pair_json(&self, m: &RepClassId, n: &RepClassId) -> serde_json::Value {
        json!({"M": self.describe(m), "N": self.describe(n)})
    }

    pub(super) fn cor410(&self) -> Result<Report> {
        let mut items = Vec::new();
        for (m, v) in self.module_vertex_pairs()? {
            items.push((m.clone(), v, true));
            items.push((m, v, false));
        }
        let ctx = self.hall().context();
        let cat = self.catalog();
        Ok(self.run(Suite::Cor410, &items, |(m, v, injective)| {
            let xm = self.character(&self.md(m))?;
            let inst = json!({"M": self.describe(m), "vertex": v + 1, "side": if *injective { "injective" } else { "projective" }});
            if *injective {
                let i = cat.injective(*v);
                if cat.hom_dim(m, &i)? != 0 {
                    return Ok(Outcome::Skip("Hom(M,I) is nonzero".into()));
                }
                let si = ctx.star_left(&i.dim);
                let x = monomial(ctx.q0, si.clone());
                let k = -2 * ctx.lambda_form(&ctx.star_left(&m.dim), &si);
                Ok(Outcome::compare(inst, &torus_mul(ctx, &xm, &x), &torus_mul(ctx, &x, &xm).scale(&self.v(k))))
            } else {
                let p = cat.projective(*v);
                if cat.hom_dim(&p, m)? != 0 {
                    return Ok(Outcome::Skip("Hom(P,M) is nonzero".into()));
                }
                let ps = ctx.star_right(&p.dim);
                let x = monomial(ctx.q0, ps.clone());
                let k = -2 * ctx.lambda_form(&ctx.star_right(&m.dim), &ps);
                Ok(Outcome::compare(inst, &torus_mul(ctx, &xm, &x), &torus_mul(ctx, &x, &xm).scale(&self.v(k))))
            }
        }))
    }

    pub(super) fn cor411(&self) -> Result<Report> {
        let shifts = self.shifts();
        let mods = self.modules()?;
        let mut items = Vec::new();
        for i in &shifts {
            for m in &mods {
                for p in &shifts {
                    items.push((i.clone(), m.clone(), p.clone()));
                }
            }
        }
        Ok(self.run(Suite::Cor411, &items, |(i, m, p)| {
            let z = vec![0u32; i.len()];
            let (id, pd) = (self.inj_dim(i), self.proj_dim(p));
            let (xi, xp, xm) = (self.inj_obj(i), self.proj_obj(p), self.md(m));
            let mp = DecoratedObject::new(z.clone(), m.clone(), p.clone());
            let mi = DecoratedObject::new(i.clone(), m.clone(), z.clone());
            let all = DecoratedObject::new(i.clone(), m.clone(), p.clone());
            let whole = Expr::prod(self.v(self.ls(&id, &pd)), vec![all.clone()]);
            let chain = [
                ("I[-1]*(M+P[1])", Expr::prod(self.v(self.ls(&id, &m.dim)), vec![xi.clone(), mp])),
                ("(M+I[-1])*P[1]", Expr::prod(self.v(self.ls(&m.dim, &pd)), vec![mi.clone(), xp.clone()])),
                ("I[-1]*M*P[1]", Expr::prod(self.v(self.ls(&m.dim, &(&pd - &id))), vec![xi, xm, xp.clone()])),
            ];
            let mut parts = Vec::new();
            for (name, e) in chain {
                parts.push(self.torus_outcome(&Relation {
                    name,
                    instance: json!(all.descriptor()),
                    lhs: e,
                    rhs: whole.clone(),
                })?);
            }
            parts.push(self.hall_outcome(&Relation {
                name: "Hall factorization",
                instance: json!(all.descriptor()),
                lhs: Expr::prod(self.v(0), vec![all.clone()]),
                rhs: Expr::prod(self.v(self.ls(&m.dim, &pd) - self.ls(&id, &pd)), vec![mi, xp]),
            })?);
            Ok(Outcome::all(parts))
        }))
    }

    /// `Σ_{P′≇P}` and `Σ_{I′≇I}` for `P = P_v`, `I = I_v`.
    pub(super) fn dyggs_sums(&self, m: &RepClassId, v: usize) -> Result<(Expr, Expr, Vec<(DecoratedObject, u64)>, Vec<(DecoratedObject, u64)>)> {
        let cat = self.catalog();
        let c = self.unit_counts(v);
        let (mut sf, mut sg) = (Expr::zero(), Expr::zero());
        let (mut fs, mut gs) = (Vec::new(), Vec::new());
        for (obj, k, ker) in self.proj_strata(&c, m)? {
            if ker != cat.projective(v) {
                sf.push(self.int(k), vec![obj.clone()]);
                fs.push((obj, k));
            }
        }
        for (obj, k, coker) in self.inj_strata(m, &c)? {
            if coker != cat.injective(v) {
                sg.push(self.int(k), vec![obj.clone()]);
                gs.push((obj, k));
            }
        }
        Ok((sf, sg, fs, gs))
    }

    pub(super) fn thm_dyggs(&self) -> Result<Report> {
        let items = self.module_vertex_pairs()?;
        let q0 = self.hall().q0();
        Ok(self.run(Suite::ThmDyggs, &items, |(m, v)| {
            let c = self.unit_counts(*v);
            let (pd, id) = (self.proj_dim(&c), self.inj_dim(&c));
            let (xp, xi, xm) = (self.proj_obj(&c), self.inj_obj(&c), self.md(m));
            let (sf, sg, _, _) = self.dyggs_sums(m, *v)?;
            let (pm, mi) = (self.eu(&pd, &m.dim), self.eu(&m.dim, &id));
            let inst = json!({"M": self.describe(m), "vertex": v + 1});
            let mut rhs1 = sf.clone();
            rhs1.extend(sg.clone().scale(&self.v(-mi)));
            let mut rhs2 = sf.scale(&self.v(-pm));
            rhs2.extend(sg);
            let eq1 = Relation {
                name: "P[1]*M",
                instance: inst.clone(),
                lhs: Expr::prod(q_minus_one(q0, pm), vec![xp, xm.clone()]),
                rhs: rhs1.scale(&self.v(self.ls(&m.dim, &pd))),
            };
            let eq2 = Relation {
                name: "M*I[-1]",
                instance: inst,
                lhs: Expr::prod(q_minus_one(q0, mi), vec![xm, xi]),
                rhs: rhs2.scale(&self.v(self.ls(&id, &m.dim))),
            };
            Ok(Outcome::all([self.torus_outcome(&eq1)?, self.torus_outcome(&eq2)?]))
        }))
    }

    pub(super) fn cor57(&self) -> Result<Report> {
        let items = self.module_vertex_pairs()?;
        let cat = self.catalog();
        let q0 = self.hall().q0();
        Ok(self.run(Suite::Cor57, &items, |(m, v)| {
            let (p, i) = (cat.projective(*v), cat.injective(*v));
            if cat.hom_dim(&p, m)? != 1 || cat.hom_dim(m, &i)? != 1 {
                return Ok(Outcome::Skip("Hom(P,M) or Hom(M,I) is not one-dimensional".into()));
            }
            let c = self.unit_counts(*v);
            let inst = json!({"M": self.describe(m), "vertex": v + 1});
            let (_, _, fs, gs) = self.dyggs_sums(m, *v)?;
            let ([(f, kf)], [(g, kg)]) = (fs.as_slice(), gs.as_slice()) else {
                return Ok(Outcome::Fail(json!({
                    "instance": inst,
                    "error": format!("expected one nonzero stratum on each side, found {} and {}", fs.len(), gs.len()),
                })));
            };
            let (pd, id) = (p.dim.clone(), i.dim.clone());
            let (pp, ii) = (self.eu(&pd, &pd), self.eu(&id, &id));
            let (xp, xi, xm) = (self.proj_obj(&c), self.inj_obj(&c), self.md(m));
            let mut rhs1 = Expr::prod(self.v(0), vec![f.clone()]);
            rhs1.push(self.v(-ii), vec![g.clone()]);
            let mut rhs2 = Expr::prod(self.v(-pp), vec![f.clone()]);
            rhs2.push(self.v(0), vec![g.clone()]);
            Ok(Outcome::all([
                Outcome::compare(json!({"instance": inst, "count": "P side"}), &self.int(*kf), &q_minus_one(q0, pp)),
                Outcome::compare(json!({"instance": inst, "count": "I side"}), &self.int(*kg), &q_minus_one(q0, ii)),
                self.torus_outcome(&Relation {
                    name: "P[1]*M",
                    instance: inst.clone(),
                    lhs: Expr::prod(self.v(0), vec![xp, xm.clone()]),
                    rhs: rhs1.scale(&self.v(self.ls(&m.dim, &pd))),
                })?,
                self.torus_outcome(&Relation {
                    name: "M*I[-1]",
                    instance: inst.clone(),
                    lhs: Expr::prod(self.v(0), vec![xm, xi]),
                    rhs: rhs2.scale(&self.v(self.ls(&id, &m.dim))),
                })?,
            ]))
        }))
    }

    /// `A` and `D ⊕ I[−1]` of a stratum, with `d − i`.
    fn theta_parts(&self, key: &ThetaKey) -> (DecoratedObject, DecoratedObject, DimVec) {
        let di = DecoratedObject::new(key.inj.clone(), key.d.clone(), vec![0; key.inj.len()]);
        let dmi = &key.d.dim - &self.inj_dim(&key.inj);
        (self.md(&key.a), di, dmi)
    }

    /// Both sides of the multiplication theorem; the θ-sum is built with `exponent(key)`.
    pub(super) fn ddlz_sides(&self, m: &RepClassId, n: &RepClassId, exponent: impl Fn(&ThetaKey) -> i64) -> Result<(Expr, Expr)> {
        let cat = self.catalog();
        let e = cat.ext_count(m, n)?;
        let split = cat.sum(&[m.clone(), n.clone()])?;
        let lam = self.ls(&m.dim, &n.dim);
        let mut rhs = Expr::zero();
        for (ext, eps) in cat.ext_counts(m, n)?.iter() {
            if *ext != split {
                rhs.push(&self.v(lam) * &self.ratio(eps, &1u32.into()), vec![self.md(ext)]);
            }
        }
        for (key, &k) in cat.theta_strata(n, m)?.iter() {
            if key.d == *n {
                continue;
            }
            let (a, di, _) = self.theta_parts(key);
            rhs.push(&self.v(exponent(key)) * &self.int(k), vec![a, di]);
        }
        let lhs = Expr::prod(q_minus_one(self.hall().q0(), e), vec![self.md(m), self.md(n)]);
        Ok((lhs, rhs))
    }

    pub(super) fn thm_ddlz(&self) -> Result<Report> {
        let items = self.module_pairs()?;
        Ok(self.run(Suite::ThmDdlz, &items, |(m, n)| {
            let inst = self.pair_json(m, n);
            let (lhs, rhs) = self.ddlz_sides(m, n, |key| {
                let a = &key.a.dim;
                self.ls(&(&m.dim - a), &(&n.dim + a)) + self.eu(&(&m.dim - a), &n.dim)
            })?;
            let (_, rhs75) = self.ddlz_sides(m, n, |key| {
                let (a, dmi) = (&key.a.dim, self.theta_parts(key).2);
                self.ls(&m.dim, &n.dim) + self.eu(&m.dim, &n.dim) - self.eu(a, &dmi) - self.ls(a, &dmi)
            })?;
            Ok(Outcome::all([
                self.torus_outcome(&Relation { name: "theorem", instance: inst.clone(), lhs: lhs.clone(), rhs })?,
                self.torus_outcome(&Relation { name: "reformulation", instance: inst, lhs, rhs: rhs75 })?,
            ]))
        }))
    }

    pub(super) fn lemma73(&self) -> Result<Report> {
        let items = self.module_pairs()?;
        Ok(self.run(Suite::Lemma73, &items, |(m, n)| {
            let mut parts = Vec::new();
            for key in self.catalog().theta_strata(n, m)?.keys() {
                let (a, d) = (&key.a.dim, &key.d.dim);
                let i = self.inj_dim(&key.inj);
                let dmi = d - &i;
                let lhs = self.ls(&(&m.dim - a), &(&n.dim + a)) + self.eu(&(&m.dim - a), &n.dim);
                let rhs = self.ls(&m.dim, &n.dim) + self.eu(&m.dim, &n.dim) - self.eu(a, d) - self.ls(a, &dmi) + self.eu(a, &i);
                let inst = json!({"M": self.describe(m), "N": self.describe(n), "D": self.describe(&key.d), "A": self.describe(&key.a), "I": key.inj});
                parts.push(Outcome::compare(inst, &lhs, &rhs));
            }
            Ok(Outcome::all(parts))
        }))
    }

    pub(super) fn cor76(&self) -> Result<Report> {
        let items = self.module_pairs()?;
        let cat = self.catalog();
        let ctx = self.hall().context();
        Ok(self.run(Suite::Cor76, &items, |(m, n)| {
            if m.dim.is_zero() || cat.end_dim(m)? != 1 || cat.ext_count(m, n)? != ctx.d {
                return Ok(Outcome::Skip("End(M) is not the vertex field or Ext¹(M,N) is not one-dimensional".into()));
            }
            let inst = self.pair_json(m, n);
            let split = cat.sum(&[m.clone(), n.clone()])?;
            let es: Vec<RepClassId> = cat.ext_counts(m, n)?.keys().filter(|e| **e != split).cloned().collect();
            let keys: Vec<ThetaKey> = cat.theta_strata(n, m)?.keys().filter(|k| k.d != *n).cloned().collect();
            let ([e], [key]) = (es.as_slice(), keys.as_slice()) else {
                return Ok(Outcome::Fail(json!({
                    "instance": inst,
                    "error": format!("expected one non-split extension and one nonzero stratum, found {} and {}", es.len(), keys.len()),
                })));
            };
            let lam = self.ls(&m.dim, &n.dim);
            let mn = self.eu(&m.dim, &n.dim);
            let (a, di, dmi) = self.theta_parts(key);
            let lhs = Expr::prod(self.v(0), vec![self.md(m), self.md(n)]);
            let mut rhs = Expr::prod(self.v(lam), vec![self.md(e)]);
            rhs.push(self.v(lam + mn - self.eu(&key.a.dim, &dmi) - self.ls(&key.a.dim, &dmi)), vec![a, di]);
            let mut parts = vec![self.torus_outcome(&Relation { name: "general", instance: inst.clone(), lhs: lhs.clone(), rhs })?];
            let imod = cat.injective_sum(&key.inj)?;
            if cat.hom_dim(&key.a, &imod)? == 0 && cat.ext_count(&key.a, &key.d)? == 0 {
                let ad = cat.sum(&[key.a.clone(), key.d.clone()])?;
                let joined = DecoratedObject::new(key.inj.clone(), ad, vec![0; key.inj.len()]);
                let mut rhs = Expr::prod(self.v(lam), vec![self.md(e)]);
                rhs.push(self.v(lam + mn - self.eu(&key.a.dim, &key.d.dim)), vec![joined]);
                parts.push(self.torus_outcome(&Relation { name: "split", instance: inst, lhs, rhs })?);
            }
            Ok(Outcome::all(parts))
        }))
    }
}
