//! The Galois action M -> M^beta on descriptors.

use cp2genus::galois::{twist, twisted_isomorphic};
use cp2genus::{parse, Context};

fn main() -> cp2genus::Result<()> {
    let ctx = Context::builtin(5)?;
    let d = parse("B(0,0;0,1+2l^3) + E(0,0;0,1+l^3)", &ctx, true)?;
    println!("M = {d}");
    for k in ctx.galois_elements().into_iter().take(8) {
        println!("  M^{k:<2} = {}", twist(&d, k)?);
    }
    let t = twist(&d, 7)?;
    println!("M^7 twisted-isomorphic to M via k = {:?}", twisted_isomorphic(&t, &d)?.map(|g| g.k()));
    Ok(())
}
