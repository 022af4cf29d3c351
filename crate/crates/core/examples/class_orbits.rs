//! Orbit counting on a class group given as data: a synthetic C_43 at p = 7.

use cp2genus::classdata::ClassData;
use cp2genus::genus::{genus_report, SemidirectDescriptor};
use cp2genus::{parse, Context};

const DATA: &str = r#"{
  "p": 7,
  "H_p": {"invariant_factors": [], "generator_residue": 3, "generator_matrix": []},
  "H_p2": {"invariant_factors": [43], "generator_residue": 3, "generator_matrix": [[3]]},
  "provenance": "synthetic"
}"#;

fn main() -> cp2genus::Result<()> {
    let ctx = Context::new(ClassData::from_json_str(DATA)?);
    let h = &ctx.classes().h_p2;
    let orbits = h.orbits(ctx.limit())?;
    println!("orbits on C_43: {:?}", orbits.iter().map(Vec::len).collect::<Vec<_>>());
    for text in ["Z + c(5)", "c(1) + c(2)", "E(0,16;0,1+6l^3)"] {
        let r = genus_report(&SemidirectDescriptor::new(parse(text, &ctx, true)?));
        println!("{text}: {r:?}");
    }
    Ok(())
}
