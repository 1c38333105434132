//! Sampled identities between the bilinear forms, and multiplicativity of μ.

use rand::Rng;
use rand_chacha::ChaCha8Rng;
use serde_json::json;

use super::{Outcome, Report, Suite, Verifier};
use crate::quiver::DimVec;
use crate::torus::{mu, tensor_torus_mul, torus_mul, TorusTensor};

fn sample(rng: &mut ChaCha8Rng, m: usize) -> DimVec {
    DimVec((0..m).map(|_| rng.gen_range(-3..=3)).collect())
}

impl Verifier {
    fn vectors<const K: usize>(&self, suite: Suite) -> Vec<[DimVec; K]> {
        let m = self.hall().context().m;
        let mut rng = self.rng(suite as u64);
        (0..self.config().samples)
            .map(|_| std::array::from_fn(|_| sample(&mut rng, m)))
            .collect()
    }

    pub(super) fn lemma42(&self) -> Report {
        let ctx = self.hall().context();
        let items = self.vectors::<2>(Suite::Lemma42);
        self.run(Suite::Lemma42, &items, |[a, b]| {
            let (ba, bb) = (ctx.b.apply(a), ctx.b.apply(b));
            let inst = |w: &str| json!({"identity": w, "alpha": a.to_string(), "beta": b.to_string()});
            Ok(Outcome::all([
                Outcome::compare(inst("Λ(Bα,Eβ)=⟨α,β⟩"), &ctx.lambda_form(&ba, &ctx.star_left(b)), &ctx.euler(a, b)),
                Outcome::compare(inst("Λ(Bα,E′β)=⟨β,α⟩"), &ctx.lambda_form(&ba, &ctx.star_right(b)), &ctx.euler(b, a)),
                Outcome::compare(
                    inst("Λ(Bα,Bβ)=⟨β,α⟩−⟨α,β⟩"),
                    &ctx.lambda_form(&ba, &bb),
                    &(ctx.euler(b, a) - ctx.euler(a, b)),
                ),
                Outcome::compare(
                    inst("Λ(E′α,E′β)=Λ(Eα,Eβ)"),
                    &ctx.lambda_form(&ctx.star_right(a), &ctx.star_right(b)),
                    &ctx.lambda_form(&ctx.star_left(a), &ctx.star_left(b)),
                ),
            ]))
        })
    }

    pub(super) fn lemma72(&self) -> Report {
        let ctx = self.hall().context();
        let items = self.vectors::<4>(Suite::Lemma72);
        self.run(Suite::Lemma72, &items, |[a, b, c, d]| {
            let left = -&ctx.star_right(b) - ctx.star_left(a);
            let right = -&ctx.star_right(d) - ctx.star_left(c);
            let lhs = ctx.lambda_form(&left, &right);
            let rhs = ctx.lambda_form(&ctx.star_right(&(a + b)), &ctx.star_right(&(c + d))) + ctx.euler(b, c)
                - ctx.euler(d, a);
            let inst = json!([a.to_string(), b.to_string(), c.to_string(), d.to_string()]);
            Ok(Outcome::compare(inst, &lhs, &rhs))
        })
    }

    pub(super) fn ar_lemma(&self) -> Report {
        let ctx = self.hall().context();
        let items = self.vectors::<2>(Suite::ArLemma);
        self.run(Suite::ArLemma, &items, |[x, y]| {
            let ty = ctx.coxeter(y);
            let inst = |w: &str| json!({"identity": w, "x": x.to_string(), "y": y.to_string()});
            Ok(Outcome::all([
                Outcome::compare(inst("⟨x,τy⟩=−⟨y,x⟩"), &ctx.euler(x, &ty), &-ctx.euler(y, x)),
                Outcome::compare(inst("*(τy)=−y*"), &ctx.star_left(&ty), &-&ctx.star_right(y)),
                Outcome::compare(inst("τ⁻¹τy=y"), &ctx.coxeter_inv(&ty), y),
            ]))
        })
    }

    pub(super) fn mu_hom(&self) -> Report {
        let ctx = self.hall().context();
        let items = self.vectors::<4>(Suite::MuHom);
        self.run(Suite::MuHom, &items, |[a, b, c, d]| {
            let x = TorusTensor::basis(ctx.q0, (a.clone(), b.clone()));
            let y = TorusTensor::basis(ctx.q0, (c.clone(), d.clone()));
            let lhs = mu(ctx, &tensor_torus_mul(ctx, &x, &y));
            let rhs = torus_mul(ctx, &mu(ctx, &x), &mu(ctx, &y));
            let inst = json!([a.to_string(), b.to_string(), c.to_string(), d.to_string()]);
            Ok(Outcome::compare(inst, &lhs, &rhs))
        })
    }
}
