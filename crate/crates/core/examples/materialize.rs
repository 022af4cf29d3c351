//! Integer matrices for the generator, with the validation checks.

use cp2genus::iso::indecomposable_templates;
use cp2genus::materialize::{rep_of, validate_rep};
use cp2genus::{parse, Context};

fn main() -> cp2genus::Result<()> {
    let ctx = Context::builtin(3)?;
    let rep = rep_of(&parse("B(0,0;1,1+l)", &ctx, true)?)?;
    println!("{} has rank {}:", rep.source, rep.n);
    for row in rep.a.to_i64_rows().unwrap_or_default() {
        println!("  {row:?}");
    }
    for t in indecomposable_templates(&ctx) {
        let report = validate_rep(&rep_of(&t)?);
        let names: Vec<&str> = report.checks.iter().map(|c| c.name).collect();
        println!("{t:<12} passed={} [{}]", report.passed(), names.join(" "));
    }
    Ok(())
}
