//! Products, coproduct and the maps to the torus.
//!
//! A basis product `u_X ⋆ u_Y` is computed by splitting both symbols into generator
//! letters `[I][M][P]`, rewriting adjacent pairs out of the order injective < module <
//! projective with the defining relations, and fusing the normal words back into symbols.

use std::collections::BTreeMap;
use std::sync::Arc;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;

use super::object::{DecoratedObject, HallElement, TensorElement};
use crate::error::{QcaError, Result};
use crate::ffrep::catalog::Memo;
use crate::ffrep::{Catalog, RepClassId};
use crate::quiver::{DimVec, QuiverContext};
use crate::scalar::ExactScalar;
use crate::torus::{self, TorusElement, TorusTensor};

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
enum Letter {
    Inj(Vec<u32>),
    Mod(RepClassId),
    Proj(Vec<u32>),
}

impl Letter {
    fn rank(&self) -> u8 {
        match self {
            Letter::Inj(_) => 0,
            Letter::Mod(_) => 1,
            Letter::Proj(_) => 2,
        }
    }

    fn is_trivial(&self) -> bool {
        match self {
            Letter::Inj(c) | Letter::Proj(c) => c.iter().all(|&k| k == 0),
            Letter::Mod(m) => m.dim.is_zero(),
        }
    }
}

type Word = Vec<Letter>;

/// How the legs of `(a⊗b)⋆(c⊗d)` are multiplied.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LegProduct {
    /// `a∗c = v^{−Λ(|a|*,|c|*)} a⋆c`, the product without the Λ-twist.
    Untwisted,
    /// `a⋆c` directly.
    Twisted,
}

/// The Λ-twisted derived Hall algebra over a catalog, with memoized structure constants.
pub struct HallAlgebra {
    cat: Arc<Catalog>,
    products: Memo<(DecoratedObject, DecoratedObject), Arc<HallElement>>,
    mod_products: Memo<(RepClassId, RepClassId), Arc<Vec<(RepClassId, ExactScalar)>>>,
    coproducts: Memo<DecoratedObject, Arc<TensorElement>>,
}

fn add(a: &[u32], b: &[u32]) -> Vec<u32> {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

fn ratio(q0: u32, num: &BigUint, den: &BigUint) -> ExactScalar {
    ExactScalar::new(
        q0,
        BigRational::new(BigInt::from(num.clone()), BigInt::from(den.clone())),
        BigRational::from_integer(BigInt::from(0)),
    )
}

impl HallAlgebra {
    pub fn new(cat: Arc<Catalog>) -> Self {
        HallAlgebra {
            cat,
            products: Memo::new(),
            mod_products: Memo::new(),
            coproducts: Memo::new(),
        }
    }

    pub fn catalog(&self) -> &Catalog {
        &self.cat
    }

    pub fn catalog_arc(&self) -> Arc<Catalog> {
        self.cat.clone()
    }

    pub fn context(&self) -> &QuiverContext {
        self.cat.context()
    }

    pub fn q0(&self) -> u32 {
        self.context().q0
    }

    fn v(&self, k: i64) -> ExactScalar {
        ExactScalar::vpow(self.q0(), k)
    }

    /// `Λ(a*, b*)`.
    fn lam_star(&self, a: &DimVec, b: &DimVec) -> i64 {
        let ctx = self.context();
        ctx.lambda_form(&ctx.star_right(a), &ctx.star_right(b))
    }

    pub fn unit(&self) -> HallElement {
        HallElement::basis(self.q0(), DecoratedObject::zero(&self.cat))
    }

    pub fn basis(&self, x: DecoratedObject) -> HallElement {
        HallElement::basis(self.q0(), x)
    }

    fn inj_dim(&self, c: &[u32]) -> DimVec {
        DecoratedObject::new(c.to_vec(), self.cat.zero(), vec![0; c.len()]).part_dims(&self.cat).0
    }

    fn proj_dim(&self, c: &[u32]) -> DimVec {
        DecoratedObject::new(vec![0; c.len()], self.cat.zero(), c.to_vec()).part_dims(&self.cat).2
    }

    /// `k` with `u_{I⊕M⊕P} = v^k·[I][M][P]`.
    fn fusion_exponent(&self, i: &DimVec, m: &DimVec, p: &DimVec) -> i64 {
        self.lam_star(i, m) + self.lam_star(m, p) - self.lam_star(i, p)
    }

    fn split(&self, x: &DecoratedObject) -> (Word, ExactScalar) {
        let (i, m, p) = x.part_dims(&self.cat);
        let word = vec![
            Letter::Inj(x.inj.clone()),
            Letter::Mod(x.module.clone()),
            Letter::Proj(x.proj.clone()),
        ];
        (word, self.v(self.fusion_exponent(&i, &m, &p)))
    }

    fn fuse(&self, word: &[Letter]) -> (DecoratedObject, ExactScalar) {
        let m = self.context().m;
        let mut obj = DecoratedObject::new(vec![0; m], self.cat.zero(), vec![0; m]);
        for l in word {
            match l {
                Letter::Inj(c) => obj.inj = c.clone(),
                Letter::Mod(x) => obj.module = x.clone(),
                Letter::Proj(c) => obj.proj = c.clone(),
            }
        }
        let (i, mm, p) = obj.part_dims(&self.cat);
        let s = self.v(-self.fusion_exponent(&i, &mm, &p));
        (obj, s)
    }

    /// `u_M ⋆ u_N = v^{Λ(m*,n*)} q^{⟨m,n⟩} Σ_L ε^L_{MN}/|Hom(M,N)| u_L`.
    pub fn module_product(&self, m: &RepClassId, n: &RepClassId) -> Result<Arc<Vec<(RepClassId, ExactScalar)>>> {
        self.mod_products.get_or((m.clone(), n.clone()), || {
            let ctx = self.context();
            let pre = self.v(self.lam_star(&m.dim, &n.dim) + 2 * ctx.euler(&m.dim, &n.dim));
            let hom = self.cat.hom_size(m, n)?;
            let prof = self.cat.ext_counts(m, n)?;
            Ok(Arc::new(
                prof.iter()
                    .map(|(l, eps)| (l.clone(), &pre * &ratio(self.q0(), eps, &hom)))
                    .collect(),
            ))
        })
    }

    /// Rewrites one adjacent pair `(x, y)` with `rank(x) ≥ rank(y)`.
    fn rewrite_pair(&self, x: &Letter, y: &Letter) -> Result<Vec<(Word, ExactScalar)>> {
        let ctx = self.context();
        let q0 = self.q0();
        Ok(match (x, y) {
            (Letter::Inj(a), Letter::Inj(b)) => {
                let k = self.lam_star(&self.inj_dim(a), &self.inj_dim(b));
                vec![(vec![Letter::Inj(add(a, b))], self.v(k))]
            }
            (Letter::Proj(a), Letter::Proj(b)) => {
                let k = self.lam_star(&self.proj_dim(a), &self.proj_dim(b));
                vec![(vec![Letter::Proj(add(a, b))], self.v(k))]
            }
            (Letter::Mod(m), Letter::Mod(n)) => self
                .module_product(m, n)?
                .iter()
                .map(|(l, c)| (vec![Letter::Mod(l.clone())], c.clone()))
                .collect(),
            (Letter::Proj(pc), Letter::Inj(ic)) => {
                let (p, i) = (self.proj_dim(pc), self.inj_dim(ic));
                let k = -2 * self.lam_star(&i, &p) + 2 * ctx.euler(&p, &i);
                vec![(vec![Letter::Inj(ic.clone()), Letter::Proj(pc.clone())], self.v(k))]
            }
            (Letter::Proj(pc), Letter::Mod(m)) => {
                let p = self.proj_dim(pc);
                let pre = self.v(-self.lam_star(&p, &m.dim) - 2 * ctx.euler(&p, &m.dim));
                let pid = self.cat.projective_sum(pc)?;
                let mut out = Vec::new();
                for ((ker, coker), n) in self.cat.hom_strata(&pid, m)?.iter() {
                    let (rest, kc) = self.cat.strip_projective(ker)?;
                    if !rest.dim.is_zero() {
                        return Err(QcaError::Invariant(format!("kernel {ker} of a map from {pid} is not projective")));
                    }
                    let fuse = self.v(self.lam_star(&coker.dim, &self.proj_dim(&kc)));
                    let c = &(&pre * &ExactScalar::from_u64(q0, *n)) * &fuse;
                    out.push((vec![Letter::Mod(coker.clone()), Letter::Proj(kc)], c));
                }
                out
            }
            (Letter::Mod(m), Letter::Inj(ic)) => {
                let i = self.inj_dim(ic);
                let pre = self.v(-self.lam_star(&m.dim, &i) - 2 * ctx.euler(&m.dim, &i));
                let iid = self.cat.injective_sum(ic)?;
                let mut out = Vec::new();
                for ((ker, coker), n) in self.cat.hom_strata(m, &iid)?.iter() {
                    let (rest, cc) = self.cat.split_injective(coker)?;
                    if !rest.dim.is_zero() {
                        return Err(QcaError::Invariant(format!("cokernel {coker} of a map into {iid} is not injective")));
                    }
                    let fuse = self.v(self.lam_star(&self.inj_dim(&cc), &ker.dim));
                    let c = &(&pre * &ExactScalar::from_u64(q0, *n)) * &fuse;
                    out.push((vec![Letter::Inj(cc), Letter::Mod(ker.clone())], c));
                }
                out
            }
            _ => unreachable!("pair is already in normal order"),
        })
    }

    fn normalize(&self, start: BTreeMap<Word, ExactScalar>) -> Result<HallElement> {
        let mut work = start;
        let mut out = HallElement::zero(self.q0());
        while let Some((word, c)) = work.pop_first() {
            if c.is_zero() {
                continue;
            }
            let word: Word = word.into_iter().filter(|l| !l.is_trivial()).collect();
            match (1..word.len()).find(|&k| word[k - 1].rank() >= word[k].rank()) {
                None => {
                    let (obj, s) = self.fuse(&word);
                    out.add_term(obj, &c * &s);
                }
                Some(k) => {
                    for (repl, s) in self.rewrite_pair(&word[k - 1], &word[k])? {
                        let mut w = word[..k - 1].to_vec();
                        w.extend(repl);
                        w.extend_from_slice(&word[k + 1..]);
                        let slot = work.entry(w).or_insert_with(|| ExactScalar::zero(self.q0()));
                        *slot += &(&c * &s);
                    }
                }
            }
        }
        Ok(out)
    }

    /// `u_X ⋆ u_Y`.
    pub fn mul_basis(&self, x: &DecoratedObject, y: &DecoratedObject) -> Result<Arc<HallElement>> {
        self.products.get_or((x.clone(), y.clone()), || {
            let (mut w, sx) = self.split(x);
            let (wy, sy) = self.split(y);
            w.extend(wy);
            let mut start = BTreeMap::new();
            start.insert(w, &sx * &sy);
            Ok(Arc::new(self.normalize(start)?))
        })
    }

    /// Bilinear `a ⋆ b`.
    pub fn mul(&self, a: &HallElement, b: &HallElement) -> Result<HallElement> {
        let mut out = HallElement::zero(self.q0());
        for (x, cx) in a.iter() {
            for (y, cy) in b.iter() {
                out.add_scaled(&*self.mul_basis(x, y)?, &(cx * cy));
            }
        }
        Ok(out)
    }

    /// The product without the Λ-twist: `a∗b = v^{−Λ(|a|*,|b|*)} a⋆b` on basis symbols.
    pub fn mul_untwisted(&self, a: &HallElement, b: &HallElement) -> Result<HallElement> {
        let mut out = HallElement::zero(self.q0());
        for (x, cx) in a.iter() {
            for (y, cy) in b.iter() {
                let t = self.v(-self.lam_star(&x.dim(&self.cat), &y.dim(&self.cat)));
                out.add_scaled(&*self.mul_basis(x, y)?, &(&(cx * cy) * &t));
            }
        }
        Ok(out)
    }

    /// `Δ(u_{I[−1]⊕L⊕P[1]}) = Σ q^{⟨m−i,n−p⟩} F^L_{MN} u_{M⊕I[−1]} ⊗ u_{N⊕P[1]}`.
    pub fn comult_basis(&self, x: &DecoratedObject) -> Result<Arc<TensorElement>> {
        self.coproducts.get_or(x.clone(), || {
            let ctx = self.context();
            let (i, l, p) = x.part_dims(&self.cat);
            let zeros = vec![0; ctx.m];
            let mut out = TensorElement::zero(self.q0());
            for e in torus::sub_dims(&l) {
                for ((mq, ns), f) in self.cat.sub_profile(&x.module, &e)?.iter() {
                    let k = 2 * ctx.euler(&(&mq.dim - &i), &(&ns.dim - &p));
                    let left = DecoratedObject::new(x.inj.clone(), mq.clone(), zeros.clone());
                    let right = DecoratedObject::new(zeros.clone(), ns.clone(), x.proj.clone());
                    out.add_term((left, right), &self.v(k) * &ExactScalar::from_u64(self.q0(), *f));
                }
            }
            Ok(Arc::new(out))
        })
    }

    pub fn comult(&self, a: &HallElement) -> Result<TensorElement> {
        let mut out = TensorElement::zero(self.q0());
        for (x, c) in a.iter() {
            out.add_scaled(&*self.comult_basis(x)?, c);
        }
        Ok(out)
    }

    /// `(a⊗b)⋆(c⊗d) = v^{Λ((|a|+|b|)*,(|c|+|d|)*)} q^{(|b|,|c|)+⟨|a|,|d|⟩} (a·c ⊗ b·d)`
    /// with the leg product chosen by `legs`.
    pub fn tensor_mul(&self, x: &TensorElement, y: &TensorElement, legs: LegProduct) -> Result<TensorElement> {
        let ctx = self.context();
        let leg = |a: &DecoratedObject, c: &DecoratedObject| -> Result<HallElement> {
            let one = |o: &DecoratedObject| self.basis(o.clone());
            match legs {
                LegProduct::Untwisted => self.mul_untwisted(&one(a), &one(c)),
                LegProduct::Twisted => Ok((*self.mul_basis(a, c)?).clone()),
            }
        };
        let mut out = TensorElement::zero(self.q0());
        for ((a, b), cx) in x.iter() {
            for ((c, d), cy) in y.iter() {
                let (da, db, dc, dd) = (a.dim(&self.cat), b.dim(&self.cat), c.dim(&self.cat), d.dim(&self.cat));
                let k = self.lam_star(&(&da + &db), &(&dc + &dd)) + 2 * (ctx.sym(&db, &dc) + ctx.euler(&da, &dd));
                let s = &(cx * cy) * &self.v(k);
                let (ac, bd) = (leg(a, c)?, leg(b, d)?);
                for (l, cl) in ac.iter() {
                    for (r, cr) in bd.iter() {
                        out.add_term((l.clone(), r.clone()), &(&s * cl) * cr);
                    }
                }
            }
        }
        Ok(out)
    }

    /// `∫u_X = X^{Dim X}` into the commutative torus.
    pub fn integrate(&self, a: &HallElement) -> TorusElement {
        a.map(|x| (x.dim(&self.cat), ExactScalar::one(self.q0())))
    }

    pub fn integrate_tensor(&self, t: &TensorElement) -> TorusTensor {
        t.map(|(x, y)| ((x.dim(&self.cat), y.dim(&self.cat)), ExactScalar::one(self.q0())))
    }

    /// `ψ = μ∘(∫⊗∫)∘Δ`.
    pub fn psi_composed(&self, a: &HallElement) -> Result<TorusElement> {
        Ok(torus::mu(self.context(), &self.integrate_tensor(&self.comult(a)?)))
    }

    /// `ψ(u_{I[−1]⊕M⊕P[1]}) = Σ_e v^{⟨p−e,m−e−i⟩} |Gr_e M| X^{(p−e)*−*(m−e−i)}`,
    /// with `|Gr_e M|` summed from the submodule profile.
    pub fn psi_closed_basis(&self, x: &DecoratedObject) -> Result<TorusElement> {
        let ctx = self.context();
        let (i, m, p) = x.part_dims(&self.cat);
        let mut out = TorusElement::zero(self.q0());
        for e in torus::sub_dims(&m) {
            let gr: u64 = self.cat.sub_profile(&x.module, &e)?.values().sum();
            let pe = &p - &e;
            let rest = &(&m - &e) - &i;
            let s = &self.v(ctx.euler(&pe, &rest)) * &ExactScalar::from_u64(self.q0(), gr);
            out.add_term(&ctx.star_right(&pe) - &ctx.star_left(&rest), s);
        }
        Ok(out)
    }

    pub fn psi_closed(&self, a: &HallElement) -> Result<TorusElement> {
        let mut out = TorusElement::zero(self.q0());
        for (x, c) in a.iter() {
            out.add_scaled(&self.psi_closed_basis(x)?, c);
        }
        Ok(out)
    }
}
