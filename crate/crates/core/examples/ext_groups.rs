//! Ext^1(S, X) for small targets X, as finite abelian groups.

use cp2genus::materialize::{ext_group, ExtTarget};

fn main() -> cp2genus::Result<()> {
    for p in [2, 3, 5] {
        for name in ["Z", "R", "E", "ZR", "ZE"] {
            let x: ExtTarget = name.parse()?;
            let g = ext_group(x, p)?;
            println!("p={p} Ext(S, {name:<2}) = {:?} (order {})", g.invariant_factors(), g.order());
        }
    }
    Ok(())
}
