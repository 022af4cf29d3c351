//! Parse descriptors and print their isomorphism and genus invariants.

use cp2genus::iso::{invariants_of, isomorphic, padic_completion, same_genus};
use cp2genus::{parse, Context};

fn main() -> cp2genus::Result<()> {
    let ctx = Context::builtin(5)?;
    let texts = [
        "Z + c(0) + B(0,0;1,1+l)",
        "C(0,0;1)",
        "D(0,0;1)",
        "Z + C(0,0;1)",
        "Z + D(0,0;1)",
    ];
    let ds = texts
        .iter()
        .map(|t| parse(t, &ctx, true))
        .collect::<cp2genus::Result<Vec<_>>>()?;
    for d in &ds {
        println!("{d}");
        println!("  rank {}  genus vector {:?}", d.rank(), d.genus_vector());
        println!("  completion {:?}", padic_completion(d));
        println!("  invariants {:?}", invariants_of(d)?);
    }
    for (i, a) in ds.iter().enumerate() {
        for b in &ds[i + 1..] {
            if same_genus(a, b)? {
                println!("{a}  ~  {b}: isomorphic = {}", isomorphic(a, b)?);
            }
        }
    }
    Ok(())
}
