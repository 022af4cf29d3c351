//! Profinite genus sizes of Z^n x| C_{p^2}: closed form against enumeration.

use cp2genus::genus::{genus_report, SemidirectDescriptor};
use cp2genus::{parse, Context};

fn main() -> cp2genus::Result<()> {
    let cases = [
        (2, "Z + c(0)"),
        (3, "b(0) + Ec(0) + F(0,0;0)"),
        (3, "Z + B(0,0;1)"),
        (5, "C(0,0;1)"),
        (5, "Z + C(0,0;1)"),
        (5, "C(0,0;1) + E(0,0;2)"),
        (5, "b(0) + D(0,0;2)"),
        (5, "Eb(0) + Ec(0) + B(0,0;3)"),
    ];
    for (p, text) in cases {
        let ctx = Context::builtin(p)?;
        let e = SemidirectDescriptor::new(parse(text, &ctx, true)?);
        let r = genus_report(&e);
        let cf = r
            .closed_form
            .map(|c| format!("{} ({:?})", c.value, c.case))
            .unwrap_or_else(|| "none".into());
        println!(
            "p={p} {text:<28} closed form {cf:<18} enumeration {:?} bounds {:?}",
            r.enumeration, r.bounds
        );
    }
    Ok(())
}
