//! The quotients U_m for small primes and their Galois orbits.

use cp2genus::abelian::{burnside_count, DEFAULT_ENUMERATION_LIMIT};
use cp2genus::arith::primitive_root;
use cp2genus::modring::{compute_um, ExtraUnits};

fn main() -> cp2genus::Result<()> {
    for p in [2u32, 3, 5, 7] {
        let gamma = primitive_root(p as u64, 2);
        let order = (p * (p - 1)) as u64;
        for m in 1..=p as usize {
            let q = compute_um(p, m, &ExtraUnits::default(), DEFAULT_ENUMERATION_LIMIT)?;
            let orbits = burnside_count(&[q.galois_permutation(gamma)?], order);
            let reps: Vec<String> = q.reps().iter().take(5).map(|u| u.to_string()).collect();
            println!(
                "p={p} m={m}: |U_m|={:<3} subgroup={:<6} orbits={orbits:<3} reps: {}{}",
                q.len(),
                q.subgroup().order(),
                reps.join(", "),
                if q.len() > 5 { ", ..." } else { "" }
            );
        }
    }
    Ok(())
}
