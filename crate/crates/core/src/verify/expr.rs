//! Sums of products of basis objects, evaluated in the Hall algebra or in the torus.

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use serde_json::{json, Value};

use super::{Outcome, Verifier};
use crate::error::{QcaError, Result};
use crate::ffrep::RepClassId;
use crate::hall::{DecoratedObject, HallElement};
use crate::quiver::DimVec;
use crate::scalar::ExactScalar;
use crate::torus::{self, TorusElement};

#[derive(Clone, Debug)]
pub(super) struct Expr {
    terms: Vec<(ExactScalar, Vec<DecoratedObject>)>,
}

impl Expr {
    pub fn zero() -> Self {
        Expr { terms: Vec::new() }
    }

    pub fn prod(c: ExactScalar, factors: Vec<DecoratedObject>) -> Self {
        Expr { terms: vec![(c, factors)] }
    }

    pub fn push(&mut self, c: ExactScalar, factors: Vec<DecoratedObject>) {
        self.terms.push((c, factors));
    }

    pub fn extend(&mut self, other: Expr) {
        self.terms.extend(other.terms);
    }

    pub fn scale(mut self, c: &ExactScalar) -> Self {
        for (k, _) in &mut self.terms {
            *k = &*k * c;
        }
        self
    }
}

/// A named equation between two expressions.
pub(super) struct Relation {
    pub name: &'static str,
    pub instance: Value,
    pub lhs: Expr,
    pub rhs: Expr,
}

impl Verifier {
    pub(super) fn v(&self, k: i64) -> ExactScalar {
        ExactScalar::vpow(self.hall().q0(), k)
    }

    pub(super) fn int(&self, n: u64) -> ExactScalar {
        ExactScalar::from_u64(self.hall().q0(), n)
    }

    pub(super) fn ratio(&self, num: &BigUint, den: &BigUint) -> ExactScalar {
        let r = BigRational::new(BigInt::from(num.clone()), BigInt::from(den.clone()));
        ExactScalar::new(self.hall().q0(), r, BigRational::from_integer(0.into()))
    }

    /// `Λ(a*, b*)`.
    pub(super) fn ls(&self, a: &DimVec, b: &DimVec) -> i64 {
        let ctx = self.hall().context();
        ctx.lambda_form(&ctx.star_right(a), &ctx.star_right(b))
    }

    pub(super) fn eu(&self, a: &DimVec, b: &DimVec) -> i64 {
        self.hall().context().euler(a, b)
    }

    pub(super) fn md(&self, m: &RepClassId) -> DecoratedObject {
        DecoratedObject::module(m.clone())
    }

    pub(super) fn inj_obj(&self, counts: &[u32]) -> DecoratedObject {
        DecoratedObject::shifted_injective(self.catalog(), counts.to_vec())
    }

    pub(super) fn proj_obj(&self, counts: &[u32]) -> DecoratedObject {
        DecoratedObject::shifted_projective(self.catalog(), counts.to_vec())
    }

    /// Dimension vector of the module underlying shifted summands.
    pub(super) fn inj_dim(&self, counts: &[u32]) -> DimVec {
        self.inj_obj(counts).part_dims(self.catalog()).0
    }

    pub(super) fn proj_dim(&self, counts: &[u32]) -> DimVec {
        self.proj_obj(counts).part_dims(self.catalog()).2
    }

    /// `X_{I[−1]⊕M⊕P[1]}` from Grassmannian counts.
    pub(super) fn character(&self, x: &DecoratedObject) -> Result<TorusElement> {
        torus::character(self.catalog(), &x.inj, &x.module, &x.proj)
    }

    pub(super) fn eval_hall(&self, e: &Expr) -> Result<HallElement> {
        let h = self.hall();
        let mut out = HallElement::zero(h.q0());
        for (c, fs) in &e.terms {
            let mut acc = h.unit();
            for f in fs {
                acc = h.mul(&acc, &h.basis(f.clone()))?;
            }
            out.add_scaled(&acc, c);
        }
        Ok(out)
    }

    pub(super) fn eval_torus(&self, e: &Expr) -> Result<TorusElement> {
        let ctx = self.hall().context();
        let mut out = TorusElement::zero(ctx.q0);
        for (c, fs) in &e.terms {
            let chars: Vec<TorusElement> = fs.iter().map(|f| self.character(f)).collect::<Result<_>>()?;
            let refs: Vec<&TorusElement> = chars.iter().collect();
            out.add_scaled(&torus::torus_product(ctx, &refs), c);
        }
        Ok(out)
    }

    pub(super) fn hall_outcome(&self, r: &Relation) -> Result<Outcome> {
        let (l, rr) = (self.eval_hall(&r.lhs)?, self.eval_hall(&r.rhs)?);
        Ok(Outcome::compare(json!({"relation": r.name, "objects": r.instance}), &l, &rr))
    }

    pub(super) fn torus_outcome(&self, r: &Relation) -> Result<Outcome> {
        let (l, rr) = (self.eval_torus(&r.lhs)?, self.eval_torus(&r.rhs)?);
        Ok(Outcome::compare(json!({"relation": r.name, "objects": r.instance}), &l, &rr))
    }

    /// Strata of `Hom(P, M)` as `(F ⊕ P′[1], count, kernel P′)`.
    pub(super) fn proj_strata(&self, p: &[u32], m: &RepClassId) -> Result<Vec<(DecoratedObject, u64, RepClassId)>> {
        let cat = self.catalog();
        let pm = cat.projective_sum(p)?;
        let mut out = Vec::new();
        for ((ker, coker), &k) in cat.hom_strata(&pm, m)?.iter() {
            let (rest, counts) = cat.strip_projective(ker)?;
            if !rest.dim.is_zero() {
                return Err(QcaError::Invariant(format!("kernel {ker} of a map from a projective is not projective")));
            }
            out.push((DecoratedObject::new(vec![0; counts.len()], coker.clone(), counts), k, ker.clone()));
        }
        Ok(out)
    }

    /// Strata of `Hom(M, I)` as `(G ⊕ I′[−1], count, cokernel I′)`.
    pub(super) fn inj_strata(&self, m: &RepClassId, i: &[u32]) -> Result<Vec<(DecoratedObject, u64, RepClassId)>> {
        let cat = self.catalog();
        let im = cat.injective_sum(i)?;
        let mut out = Vec::new();
        for ((ker, coker), &k) in cat.hom_strata(m, &im)?.iter() {
            let (rest, counts) = cat.split_injective(coker)?;
            if !rest.dim.is_zero() {
                return Err(QcaError::Invariant(format!("cokernel {coker} of a map to an injective is not injective")));
            }
            out.push((DecoratedObject::new(counts.clone(), ker.clone(), vec![0; counts.len()]), k, coker.clone()));
        }
        Ok(out)
    }
}
