//! At p = 5 the types C and D have the same completions but give
//! non-isomorphic groups.

use cp2genus::genus::{group_isomorphic, profinite_isomorphic, SemidirectDescriptor};
use cp2genus::{parse, Context};

fn main() -> cp2genus::Result<()> {
    let ctx = Context::builtin(5)?;
    for (a, b) in [("C(0,0;1)", "D(0,0;1)"), ("Z + C(0,0;1)", "Z + D(0,0;1)")] {
        let e = SemidirectDescriptor::new(parse(a, &ctx, false)?);
        let f = SemidirectDescriptor::new(parse(b, &ctx, false)?);
        println!(
            "{a} vs {b}: profinite {} group {}",
            profinite_isomorphic(&e, &f)?,
            group_isomorphic(&e, &f)?
        );
    }
    Ok(())
}
