//! The quantum torus `𝒯_Λ`, the commutative torus `𝒯_m` with its twisted tensor square,
//! and quantum cluster characters.

use crate::error::Result;
use crate::ffrep::{Catalog, RepClassId};
use crate::lincomb::LinComb;
use crate::quiver::{DimVec, QuiverContext};
use crate::scalar::ExactScalar;

/// Element of `𝒯_Λ` (or of `𝒯_m`, depending on which product is applied).
pub type TorusElement = LinComb<DimVec>;

/// Element of `𝒯_m ⊗ 𝒯_m`.
pub type TorusTensor = LinComb<(DimVec, DimVec)>;

pub fn monomial(q0: u32, alpha: DimVec) -> TorusElement {
    LinComb::basis(q0, alpha)
}

/// `X^α ⋆ X^β = v^{Λ(α,β)} X^{α+β}`.
pub fn torus_mul(ctx: &QuiverContext, x: &TorusElement, y: &TorusElement) -> TorusElement {
    let mut out = TorusElement::zero(ctx.q0);
    for (a, ca) in x.iter() {
        for (b, cb) in y.iter() {
            let s = ExactScalar::vpow(ctx.q0, ctx.lambda_form(a, b));
            out.add_term(a + b, &(ca * cb) * &s);
        }
    }
    out
}

/// Product of several torus elements, left to right.
pub fn torus_product(ctx: &QuiverContext, xs: &[&TorusElement]) -> TorusElement {
    xs.iter()
        .fold(monomial(ctx.q0, DimVec::zero(ctx.m)), |acc, x| torus_mul(ctx, &acc, x))
}

/// The untwisted product `X^α ⋄ X^β = X^{α+β}` of `𝒯_m`.
pub fn comm_mul(x: &TorusElement, y: &TorusElement) -> TorusElement {
    let mut out = TorusElement::zero(x.q0());
    for (a, ca) in x.iter() {
        for (b, cb) in y.iter() {
            out.add_term(a + b, ca * cb);
        }
    }
    out
}

/// `(X^α⊗X^β) ⋆ (X^γ⊗X^δ) = v^{Λ((α+β)*,(γ+δ)*)} q^{(β,γ)+⟨α,δ⟩} X^{α+γ} ⊗ X^{β+δ}`.
pub fn tensor_torus_mul(ctx: &QuiverContext, x: &TorusTensor, y: &TorusTensor) -> TorusTensor {
    let mut out = TorusTensor::zero(ctx.q0);
    for ((a, b), cx) in x.iter() {
        for ((c, d), cy) in y.iter() {
            let lam = ctx.lambda_form(&ctx.star_right(&(a + b)), &ctx.star_right(&(c + d)));
            let k = lam + 2 * (ctx.sym(b, c) + ctx.euler(a, d));
            out.add_term((a + c, b + d), &(cx * cy) * &ExactScalar::vpow(ctx.q0, k));
        }
    }
    out
}

/// `μ(X^α ⊗ X^β) = v^{−(α,β)−⟨α,β⟩} X^{−*α−β*}`.
pub fn mu(ctx: &QuiverContext, x: &TorusTensor) -> TorusElement {
    x.map(|(a, b)| {
        let k = -ctx.sym(a, b) - ctx.euler(a, b);
        (-&ctx.star_left(a) - ctx.star_right(b), ExactScalar::vpow(ctx.q0, k))
    })
}

fn weighted(counts: &[u32], dims: impl Fn(usize) -> DimVec, m: usize) -> DimVec {
    counts
        .iter()
        .enumerate()
        .fold(DimVec::zero(m), |acc, (v, &k)| &acc + &dims(v).scale(k as i64))
}

/// `X_{I[−1]⊕M⊕P[1]} = Σ_e v^{⟨p−e,m−e−i⟩} |Gr_e M| X^{(p−e)*−*(m−e−i)}`,
/// with `I` and `P` given as multiplicities of the indecomposables per vertex.
pub fn character(cat: &Catalog, inj: &[u32], module: &RepClassId, proj: &[u32]) -> Result<TorusElement> {
    let ctx = cat.context();
    let m = &module.dim;
    let i = weighted(inj, |v| cat.injective(v).dim, ctx.m);
    let p = weighted(proj, |v| cat.projective(v).dim, ctx.m);
    let mut out = TorusElement::zero(ctx.q0);
    for e in sub_dims(m) {
        let gr = cat.grassmannian_count(module, &e)?;
        if gr == 0 {
            continue;
        }
        let pe = &p - &e;
        let rest = &(m - &e) - &i;
        let s = ExactScalar::vpow(ctx.q0, ctx.euler(&pe, &rest)) * ExactScalar::from_u64(ctx.q0, gr);
        out.add_term(&ctx.star_right(&pe) - &ctx.star_left(&rest), s);
    }
    Ok(out)
}

/// Every `0 ≤ e ≤ m`, lexicographically.
pub fn sub_dims(m: &DimVec) -> Vec<DimVec> {
    let mut out = vec![DimVec(Vec::new())];
    for &k in &m.0 {
        out = out
            .into_iter()
            .flat_map(|pre| {
                (0..=k).map(move |x| {
                    let mut v = pre.0.clone();
                    v.push(x);
                    DimVec(v)
                })
            })
            .collect();
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quiver::kronecker;

    #[test]
    fn kronecker_twist() {
        let ctx = kronecker(2);
        let x = torus_mul(&ctx, &monomial(2, ctx.unit(0)), &monomial(2, ctx.unit(1)));
        assert_eq!(x, LinComb::term(DimVec(vec![1, 1]), ExactScalar::vpow(2, 1)));
        let a = DimVec(vec![3, -2]);
        let y = torus_mul(&ctx, &monomial(2, a.clone()), &monomial(2, -&a));
        assert_eq!(y, monomial(2, DimVec::zero(2)));
    }

    #[test]
    fn mu_of_simple_leg() {
        let ctx = kronecker(2);
        let x = TorusTensor::basis(2, (ctx.unit(0), DimVec::zero(2)));
        assert_eq!(mu(&ctx, &x), monomial(2, DimVec(vec![-1, 0])));
    }

    #[test]
    fn sub_dims_enumerates_box() {
        assert_eq!(sub_dims(&DimVec(vec![1, 2])).len(), 6);
        assert_eq!(sub_dims(&DimVec(vec![0, 0])), vec![DimVec(vec![0, 0])]);
    }
}
