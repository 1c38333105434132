//! Suites over the counting layer: identities between Hall numbers, extension
//! counts and Hom dimensions.

use std::collections::BTreeMap;
use std::fmt::{Debug, Display};

use num_bigint::BigUint;
use num_traits::{One, Zero};
use serde_json::{json, Value};

use super::{Outcome, Report, Suite, Verifier};
use crate::error::Result;
use crate::ffrep::RepClassId;
use crate::scalar::ExactScalar;
use crate::torus::sub_dims;

fn map_outcome<K: Ord + Debug, V: PartialEq + Display>(inst: Value, a: &BTreeMap<K, V>, b: &BTreeMap<K, V>) -> Outcome {
    if a == b {
        return Outcome::Pass;
    }
    let show = |m: &BTreeMap<K, V>| m.iter().map(|(k, v)| format!("{k:?} => {v}")).collect::<Vec<_>>();
    Outcome::Fail(json!({"instance": inst, "lhs": show(a), "rhs": show(b)}))
}

impl Verifier {
    fn qpow_big(&self, k: i64) -> BigUint {
        num_traits::pow(BigUint::from(self.hall().q0()), k as usize)
    }

    fn big(&self, n: &BigUint) -> ExactScalar {
        self.ratio(n, &BigUint::one())
    }

    pub(super) fn green(&self) -> Result<Report> {
        let mods = self.modules()?;
        let mut items = Vec::new();
        for m in &mods {
            for n in &mods {
                let total = &m.dim + &n.dim;
                for x in &mods {
                    for y in &mods {
                        if &x.dim + &y.dim == total {
                            items.push([m.clone(), n.clone(), x.clone(), y.clone()]);
                        }
                    }
                }
            }
        }
        let cat = self.catalog();
        let q0 = self.hall().q0();
        Ok(self.run(Suite::Green, &items, |[m, n, x, y]| {
            let mut lhs = ExactScalar::zero(q0);
            for (e, eps) in cat.ext_counts(m, n)?.iter() {
                let f = cat.hall_number(e, x, y)?;
                if f > 0 {
                    lhs += &(&self.big(eps) * &self.int(f));
                }
            }
            let mut rhs = ExactScalar::zero(q0);
            let mn = cat.hom0(m, n)?;
            for b in sub_dims(&m.dim) {
                for ((a, bb), &fm) in cat.sub_profile(m, &b)?.iter() {
                    for d in sub_dims(&n.dim) {
                        if &a.dim + &(&n.dim - &d) != x.dim {
                            continue;
                        }
                        for ((c, dd), &fnn) in cat.sub_profile(n, &d)?.iter() {
                            let ex = cat.ext_class_count(a, c, x)?;
                            let ey = cat.ext_class_count(bb, dd, y)?;
                            if ex.is_zero() || ey.is_zero() {
                                continue;
                            }
                            let k = mn - cat.hom0(a, c)? - cat.hom0(bb, dd)? - self.eu(&a.dim, &dd.dim);
                            let term = &ExactScalar::qpow(q0, k) * &self.big(&(ex * ey * BigUint::from(fm * fnn)));
                            rhs += &term;
                        }
                    }
                }
            }
            let inst = json!({"M": self.describe(m), "N": self.describe(n), "X": self.describe(x), "Y": self.describe(y)});
            Ok(Outcome::compare(inst, &lhs, &rhs))
        }))
    }

    /// `Σ_A F^A_{KL} F^M_{AB} = Σ_Ã F^M_{KÃ} F^Ã_{LB}` for every `(K, L, B)`.
    pub(super) fn hall_assoc(&self) -> Result<Report> {
        let items = self.modules()?;
        let cat = self.catalog();
        Ok(self.run(Suite::HallAssoc, &items, |m| {
            let mut lhs: BTreeMap<(RepClassId, RepClassId, RepClassId), u64> = BTreeMap::new();
            let mut rhs = lhs.clone();
            for b in sub_dims(&m.dim) {
                for ((a, bb), &f1) in cat.sub_profile(m, &b)?.iter() {
                    for l in sub_dims(&a.dim) {
                        for ((k, ll), &f2) in cat.sub_profile(a, &l)?.iter() {
                            *lhs.entry((k.clone(), ll.clone(), bb.clone())).or_insert(0) += f1 * f2;
                        }
                    }
                }
            }
            for at in sub_dims(&m.dim) {
                for ((k, a), &f1) in cat.sub_profile(m, &at)?.iter() {
                    for b in sub_dims(&a.dim) {
                        for ((ll, bb), &f2) in cat.sub_profile(a, &b)?.iter() {
                            *rhs.entry((k.clone(), ll.clone(), bb.clone())).or_insert(0) += f1 * f2;
                        }
                    }
                }
            }
            Ok(map_outcome(json!(self.describe(m)), &lhs, &rhs))
        }))
    }

    /// `Σ_{dim Y = y} F^{M⊕N}_{XY} = Σ_{b+d=y} q^{[B,C]⁰} F^M_{AB} F^N_{CD}` for every `y`.
    pub(super) fn split_sum(&self) -> Result<Report> {
        let mods = self.modules()?;
        let items: Vec<(RepClassId, RepClassId)> = mods
            .iter()
            .flat_map(|x| mods.iter().map(move |y| (x.clone(), y.clone())))
            .collect();
        let cat = self.catalog();
        Ok(self.run(Suite::SplitSum, &items, |(m, n)| {
            let s = cat.sum(&[m.clone(), n.clone()])?;
            let mut lhs = BTreeMap::new();
            let mut rhs = BTreeMap::new();
            for y in sub_dims(&s.dim) {
                let total: u64 = cat.sub_profile(&s, &y)?.values().sum();
                lhs.insert(y.to_string(), BigUint::from(total));
                let mut acc = BigUint::zero();
                for b in sub_dims(&m.dim) {
                    let d = &y - &b;
                    if !d.is_nonneg() || !d.le(&n.dim) {
                        continue;
                    }
                    for ((_, bb), &fm) in cat.sub_profile(m, &b)?.iter() {
                        for ((c, _), &fnn) in cat.sub_profile(n, &d)?.iter() {
                            acc += self.qpow_big(cat.hom0(bb, c)?) * BigUint::from(fm * fnn);
                        }
                    }
                }
                rhs.insert(y.to_string(), acc);
            }
            Ok(map_outcome(json!({"M": self.describe(m), "N": self.describe(n)}), &lhs, &rhs))
        }))
    }

    /// `Σ_E ε^E_{MN} = q^{[M,N]¹}`, and Hall-number extension counts against cocycle counts.
    pub(super) fn riedtmann(&self) -> Result<Report> {
        let mods = self.modules()?;
        let items: Vec<(RepClassId, RepClassId)> = mods
            .iter()
            .flat_map(|x| mods.iter().map(move |y| (x.clone(), y.clone())))
            .collect();
        let cat = self.catalog();
        Ok(self.run(Suite::Riedtmann, &items, |(m, n)| {
            let inst = json!({"M": self.describe(m), "N": self.describe(n)});
            let hall = cat.ext_profile(m, n)?;
            let total: BigUint = hall.values().sum();
            let cocycles = cat.ext_profile_cocycles(m, n)?;
            Ok(Outcome::all([
                Outcome::compare(inst.clone(), &total, &self.qpow_big(cat.ext_count(m, n)?)),
                map_outcome(inst, &*hall, &cocycles),
            ]))
        }))
    }

    /// `d·dim_𝔽 Hom(N, τM′) = [M,N]¹` with `M′` the non-projective part of `M`.
    pub(super) fn ar_formula(&self) -> Result<Report> {
        let mods = self.modules()?;
        let items: Vec<(RepClassId, RepClassId)> = mods
            .iter()
            .flat_map(|x| mods.iter().map(move |y| (x.clone(), y.clone())))
            .collect();
        let cat = self.catalog();
        let d = self.hall().context().d;
        Ok(self.run(Suite::ArFormula, &items, |(m, n)| {
            let (mp, _) = cat.strip_projective(m)?;
            let lhs = d * cat.hom_dim(n, &cat.tau(&mp)?)? as i64;
            Ok(Outcome::compare(json!({"M": self.describe(m), "N": self.describe(n)}), &lhs, &cat.ext_count(m, n)?))
        }))
    }

    pub(super) fn orbit(&self) -> Result<Report> {
        let cat = self.catalog();
        let dims = cat.dims_up_to(self.config().cap, self.config().total_cap);
        Ok(self.run(Suite::Orbit, &dims, |d| {
            if !cat.classifiable(&d.as_usize()) {
                return Ok(Outcome::Skip(format!("dimension {d} is not classified")));
            }
            let ok = cat.orbit_sum_check(d)?;
            Ok(Outcome::compare(json!(d.to_string()), &ok, &true))
        }))
    }
}
