//! Loading contexts from JSON. The first has a Λ that is not compatible with the
//! quiver and is rejected; the second is accepted and checked.

use std::sync::Arc;

use qca::ffrep::{Bounds, Catalog};
use qca::verify::{CheckConfig, Suite, Verifier};
use qca::QuiverContext;

const WRONG: &str = r#"{"name":"A2 wrong sign","m":2,"n":2,"d":2,
  "arrows":[{"from":1,"to":2,"mult":1}],"lambda":[[0,-2],[2,0]],"q0":2}"#;

const A2: &str = r#"{
  "name": "A2 valued",
  "m": 2, "n": 2, "d": 2,
  "arrows": [{"from": 1, "to": 2, "mult": 1}],
  "lambda": [[0, 2], [-2, 0]],
  "q0": 3
}"#;

fn main() -> qca::Result<()> {
    match QuiverContext::from_json(WRONG) {
        Ok(_) => println!("unexpectedly accepted"),
        Err(e) => println!("rejected: {e}"),
    }
    let ctx = QuiverContext::from_json(A2)?;
    println!("{}", ctx.matrices_report());
    let cat = Arc::new(Catalog::new(Arc::new(ctx), Bounds::default())?);
    println!("{} classes up to dimension 1 per vertex", cat.classes_up_to(1, None)?.len());
    let ver = Verifier::new(cat, CheckConfig::default());
    for s in [Suite::Lemma42, Suite::Prop41, Suite::PsiHom, Suite::ThmDdlz] {
        println!("{}", ver.check(s).summary_line());
    }
    Ok(())
}
