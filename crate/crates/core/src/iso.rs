//! Genus and isomorphism decisions for descriptors.
//!
//! Two lattices lie in the same genus iff their `p`-adic completions agree,
//! which forgets classes and units and merges types C and D. Within a genus
//! the isomorphism class is fixed by the ideal classes, the image of `u_0`
//! in `U_t` (when no `𝔟`, `E(𝔟)`, `𝔠`, `E(𝔠)` summand absorbs it) and, for
//! `p ≡ 1 (mod 4)`, the quadratic character of `u_0` (when no `Z`, `E(𝔟)`,
//! `E(𝔠)`, B or F summand absorbs it).

use serde::Serialize;

use crate::abelian::GroupElement;
use crate::arith;
use crate::error::Result;
use crate::lattice::{ExtKind, LatticeDescriptor, Summand};
use crate::modring::PolyMod;

/// Counts of the `4p+1` indecomposable `Z_p C_{p²}`-lattices in a completion.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct PadicDescriptor {
    pub p: u32,
    /// `Z_p`.
    pub a: usize,
    /// `R_p`.
    pub r: usize,
    /// `E_p = (Z_p, R_p; 1)`.
    pub e: usize,
    /// `S_p`.
    pub s: usize,
    /// `(Z_p, S_p; 1)`.
    pub zs: usize,
    pub beta: Vec<usize>,
    /// Types C and D together, indexed by `r = 1, ..., p-2`.
    pub gamma_delta: Vec<usize>,
    pub epsilon: Vec<usize>,
    pub eta: Vec<usize>,
}

impl PadicDescriptor {
    pub fn is_zero(&self) -> bool {
        self.a + self.r + self.e + self.s + self.zs == 0
            && self
                .beta
                .iter()
                .chain(&self.gamma_delta)
                .chain(&self.epsilon)
                .chain(&self.eta)
                .all(|&x| x == 0)
    }
}

/// A full set of isomorphism invariants.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct IsoInvariants {
    pub padic: PadicDescriptor,
    pub r_class: GroupElement,
    pub s_class: GroupElement,
    /// Canonical representative of `u_0` in `Ũ_t`.
    pub u0_class: Option<PolyMod>,
    /// Legendre symbol of the constant term of `u_0`.
    pub quad_char: Option<i8>,
}

impl IsoInvariants {
    /// Equality, comparing optional entries only where both are present.
    pub fn matches(&self, other: &IsoInvariants) -> bool {
        fn opt_eq<T: PartialEq>(a: &Option<T>, b: &Option<T>) -> bool {
            match (a, b) {
                (Some(x), Some(y)) => x == y,
                _ => true,
            }
        }
        self.padic == other.padic
            && self.r_class == other.r_class
            && self.s_class == other.s_class
            && opt_eq(&self.u0_class, &other.u0_class)
            && opt_eq(&self.quad_char, &other.quad_char)
    }
}

pub fn padic_completion(d: &LatticeDescriptor) -> PadicDescriptor {
    let gv = d.genus_vector();
    PadicDescriptor {
        p: d.p(),
        a: gv.a,
        r: gv.b,
        e: gv.d - gv.b,
        s: gv.c,
        zs: gv.e - gv.c,
        beta: gv.beta,
        gamma_delta: gv.gamma.iter().zip(&gv.delta).map(|(x, y)| x + y).collect(),
        epsilon: gv.epsilon,
        eta: gv.eta,
    }
}

pub fn same_genus(d1: &LatticeDescriptor, d2: &LatticeDescriptor) -> Result<bool> {
    d1.check_same_context(d2)?;
    Ok(padic_completion(d1) == padic_completion(d2))
}

/// Whether `u_0` modulo `U_t` is an invariant: no summand `𝔟`, `E(𝔟)`, `𝔠`, `E(𝔠)`.
pub fn u0_class_applies(d: &LatticeDescriptor) -> bool {
    let n = d.counts();
    n.ideal_r + n.ext_b + n.ideal_s + n.ext_c == 0
}

/// Whether the quadratic character of `u_0` is an invariant: `p ≡ 1 (mod 4)`
/// and no summand `Z`, `E(𝔟)`, `E(𝔠)`, B or F.
pub fn quad_char_applies(d: &LatticeDescriptor) -> bool {
    let n = d.counts();
    arith::is_one_mod_four(d.p()) && n.z + n.ext_b + n.ext_c + n.b + n.f == 0
}

pub fn invariants_of(d: &LatticeDescriptor) -> Result<IsoInvariants> {
    let (r_class, s_class) = d.ideal_classes();
    let needs_u0 = u0_class_applies(d);
    let needs_chi = quad_char_applies(d);
    let u0 = if needs_u0 || needs_chi { Some(d.u0()) } else { None };
    let u0_class = match (&u0, needs_u0) {
        (Some(u0), true) => {
            let t = d.t() as usize;
            Some(d.context().quotient(t)?.canonical(&u0.resize(t))?)
        }
        _ => None,
    };
    let quad_char = match (&u0, needs_chi) {
        (Some(u0), true) => Some(arith::quadratic_character(u0.constant_term() as u64, d.p() as u64)),
        _ => None,
    };
    Ok(IsoInvariants {
        padic: padic_completion(d),
        r_class,
        s_class,
        u0_class,
        quad_char,
    })
}

pub fn isomorphic(d1: &LatticeDescriptor, d2: &LatticeDescriptor) -> Result<bool> {
    d1.check_same_context(d2)?;
    if padic_completion(d1) != padic_completion(d2) {
        return Ok(false);
    }
    Ok(invariants_of(d1)?.matches(&invariants_of(d2)?))
}

/// One descriptor per indecomposable type admissible at `p`, with trivial
/// classes and `u = 1`.
pub fn indecomposable_templates(ctx: &std::sync::Arc<crate::context::Context>) -> Vec<LatticeDescriptor> {
    let p = ctx.p();
    let hp = ctx.classes().h_p.target().identity();
    let hp2 = ctx.classes().h_p2.target().identity();
    let mut out = vec![
        Summand::Z,
        Summand::IdealR { b: hp.clone() },
        Summand::IdealS { c: hp2.clone() },
        Summand::ExtB { b: hp.clone() },
        Summand::ExtC { c: hp2.clone() },
    ];
    for kind in ExtKind::ALL {
        if !kind.exists_at(p) {
            continue;
        }
        for r in kind.r_range(p) {
            let r = r as u32;
            out.push(Summand::ext(
                kind,
                hp.clone(),
                hp2.clone(),
                r,
                PolyMod::one(p, kind.unit_degree(p, r)),
            ));
        }
    }
    out.into_iter()
        .map(|s| LatticeDescriptor::from_sorted_parts(ctx.clone(), vec![s]))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::context::Context;
    use crate::lattice::parse;
    use std::collections::HashSet;
    use std::sync::Arc;

    fn ctx(p: u32) -> Arc<Context> {
        Context::builtin(p).unwrap()
    }

    fn d(c: &Arc<Context>, t: &str) -> LatticeDescriptor {
        parse(t, c, false).unwrap()
    }

    #[test]
    fn four_p_plus_one_completions() {
        for p in [2, 3, 5] {
            let c = ctx(p);
            let set: HashSet<_> = indecomposable_templates(&c).iter().map(padic_completion).collect();
            assert_eq!(set.len(), 4 * p as usize + 1, "p = {p}");
        }
    }

    #[test]
    fn completion_merges_c_and_d() {
        let c = ctx(5);
        let x = d(&c, "C(0,0;1) + E(0,0;0)");
        let y = d(&c, "D(0,0;1) + E(0,0;0)");
        assert_eq!(padic_completion(&x), padic_completion(&y));
        assert!(same_genus(&x, &y).unwrap());
        assert!(!same_genus(&d(&c, "Z"), &d(&c, "b(0)")).unwrap());
        let z = padic_completion(&d(&c, "3*Z"));
        assert_eq!(z.a, 3);
        assert!(!z.is_zero());
    }

    #[test]
    fn invariant_examples() {
        let c = ctx(5);
        let inv = invariants_of(&d(&c, "2*Z")).unwrap();
        assert_eq!(inv.u0_class, Some(PolyMod::one(5, 4)));
        assert_eq!(inv.quad_char, None);
        assert_eq!(invariants_of(&d(&c, "D(0,0;1)")).unwrap().quad_char, Some(-1));
        assert_eq!(invariants_of(&d(&c, "C(0,0;1)")).unwrap().quad_char, Some(1));
        // Only type D contributes n₀, so C + D has u_0 = 2, a non-residue.
        assert_eq!(invariants_of(&d(&c, "C(0,0;1) + D(0,0;1)")).unwrap().quad_char, Some(-1));
        assert_eq!(invariants_of(&d(&c, "2*D(0,0;1)")).unwrap().quad_char, Some(1));
        let inv = invariants_of(&d(&c, "c(0) + C(0,0;1)")).unwrap();
        assert_eq!(inv.u0_class, None);
    }

    #[test]
    fn c_and_d_twins() {
        let c = ctx(5);
        let x = d(&c, "C(0,0;1)");
        let y = d(&c, "D(0,0;1)");
        assert!(same_genus(&x, &y).unwrap());
        assert!(!isomorphic(&x, &y).unwrap());
        assert!(isomorphic(&x, &x).unwrap());
        // A Z summand absorbs the character.
        assert!(isomorphic(&d(&c, "Z + C(0,0;1)"), &d(&c, "Z + D(0,0;1)")).unwrap());
    }

    #[test]
    fn unit_classes_distinguish() {
        let c = ctx(5);
        // B with r = 1 has u in U_4, t = 5 - 1 = 4; U_4 has 5 classes.
        let q = c.quotient(4).unwrap();
        let descs: Vec<_> = q.reps().iter().map(|u| d(&c, &format!("B(0,0;1,{u})"))).collect();
        for (i, x) in descs.iter().enumerate() {
            for (j, y) in descs.iter().enumerate() {
                assert_eq!(isomorphic(x, y).unwrap(), i == j);
            }
        }
    }

    #[test]
    fn context_mismatch() {
        assert!(isomorphic(&d(&ctx(3), "Z"), &d(&ctx(5), "Z")).is_err());
    }
}
