#![allow(dead_code)]

use std::sync::Arc;

use cp2genus::abelian::GroupElement;
use cp2genus::classdata::ClassData;
use cp2genus::lattice::ExtKind;
use cp2genus::modring::PolyMod;
use cp2genus::{Context, LatticeDescriptor, Summand};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

pub const SMALL_PRIMES: [u32; 3] = [2, 3, 5];

pub fn ctx(p: u32) -> Arc<Context> {
    Context::builtin(p).expect("built-in class data")
}

/// `p = 7` with `H(Z[ζ_49]) = C_43` and the generator acting by `x ↦ 3x`.
pub const SYNTHETIC_C43: &str = r#"{
  "p": 7,
  "H_p": {"invariant_factors": [], "generator_residue": 3, "generator_matrix": []},
  "H_p2": {"invariant_factors": [43], "generator_residue": 3, "generator_matrix": [[3]]},
  "provenance": "synthetic"
}"#;

pub fn c43_ctx() -> Arc<Context> {
    Context::new(ClassData::from_json_str(SYNTHETIC_C43).expect("valid synthetic data"))
}

pub fn rng(seed: u64) -> StdRng {
    StdRng::seed_from_u64(seed)
}

fn random_element(rng: &mut StdRng, factors: &[u64]) -> GroupElement {
    GroupElement(factors.iter().map(|&n| rng.gen_range(0..n)).collect())
}

fn random_unit(rng: &mut StdRng, p: u32, m: usize) -> PolyMod {
    let mut c: Vec<i64> = (0..m).map(|_| rng.gen_range(0..p as i64)).collect();
    if let Some(c0) = c.first_mut() {
        *c0 = rng.gen_range(1..p as i64);
    }
    PolyMod::from_coeffs(p, m, &c)
}

/// A random summand of any type admissible at `p`, with random classes and
/// a random (not yet canonical) unit.
pub fn random_summand(rng: &mut StdRng, ctx: &Context) -> Summand {
    let p = ctx.p();
    let hp = ctx.classes().h_p.target().invariant_factors().to_vec();
    let hp2 = ctx.classes().h_p2.target().invariant_factors().to_vec();
    let kinds: Vec<ExtKind> = ExtKind::ALL.into_iter().filter(|k| k.exists_at(p)).collect();
    match rng.gen_range(0..5 + kinds.len()) {
        0 => Summand::Z,
        1 => Summand::IdealR { b: random_element(rng, &hp) },
        2 => Summand::IdealS { c: random_element(rng, &hp2) },
        3 => Summand::ExtB { b: random_element(rng, &hp) },
        4 => Summand::ExtC { c: random_element(rng, &hp2) },
        i => {
            let kind = kinds[i - 5];
            let range = kind.r_range(p);
            let r = rng.gen_range(*range.start()..=*range.end()) as u32;
            let u = random_unit(rng, p, kind.unit_degree(p, r));
            Summand::ext(kind, random_element(rng, &hp), random_element(rng, &hp2), r, u)
        }
    }
}

/// A random nonzero descriptor with `1..=max_len` summands.
pub fn random_descriptor(rng: &mut StdRng, ctx: &Arc<Context>, max_len: usize) -> LatticeDescriptor {
    let n = rng.gen_range(1..=max_len);
    let summands = (0..n).map(|_| random_summand(rng, ctx)).collect();
    LatticeDescriptor::new_lenient(ctx.clone(), summands).expect("lenient construction")
}

/// A random descriptor containing an `S`-type summand.
pub fn random_faithful(rng: &mut StdRng, ctx: &Arc<Context>, max_len: usize) -> LatticeDescriptor {
    loop {
        let d = random_descriptor(rng, ctx, max_len);
        if d.faithfulness() == cp2genus::lattice::Faithfulness::Faithful {
            return d;
        }
    }
}

/// `Z^a ⊕ S^s ⊕ E(𝔠)^c` for all small `(a, s, c)` with `s + c ≥ 1`.
pub fn so_cs_corpus(ctx: &Arc<Context>) -> Vec<LatticeDescriptor> {
    let mut out = Vec::new();
    for a in 0..4 {
        for s in 0..3 {
            for c in 0..3 {
                if s + c == 0 {
                    continue;
                }
                let text = join(&[("Z", a), ("c(0)", s), ("Ec(0)", c)]);
                out.push(cp2genus::parse(&text, ctx, false).expect("corpus descriptor"));
            }
        }
    }
    out
}

/// Shapes with at least two of the `R`, `S` and extension sides present.
pub fn absorption_corpus(ctx: &Arc<Context>) -> Vec<LatticeDescriptor> {
    let p = ctx.p();
    let r_sides = ["", "b(0)", "Eb(0)"];
    let s_sides = ["", "c(0)", "Ec(0)"];
    let q_sides = ["", "B(0,0;0)", "E(0,0;0)", "F(0,0;0)"];
    let mut out = Vec::new();
    for a in 0..2 {
        for r in r_sides {
            for s in s_sides {
                for q in q_sides {
                    let present = [r, s, q].iter().filter(|x| !x.is_empty()).count();
                    if present < 2 {
                        continue;
                    }
                    let mut parts: Vec<&str> = vec!["Z"; a];
                    parts.extend([r, s, q].iter().filter(|x| !x.is_empty()));
                    let text = parts.join(" + ");
                    out.push(cp2genus::parse(&text, ctx, false).unwrap_or_else(|e| {
                        panic!("corpus descriptor {text} at p = {p}: {e}")
                    }));
                }
            }
        }
    }
    out
}

fn join(parts: &[(&str, usize)]) -> String {
    let v: Vec<&str> = parts
        .iter()
        .flat_map(|&(s, n)| std::iter::repeat_n(s, n))
        .collect();
    v.join(" + ")
}
