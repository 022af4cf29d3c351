//! The action of `G(p²) = (Z/p²)^*` on descriptors, `M ↦ M^β` with
//! `β(g) = g^k`, and the twisted-isomorphism search.

use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::iso;
use crate::lattice::{LatticeDescriptor, Summand};
use crate::modring::galois_on_unit;

/// A residue `1 ≤ k < p²` prime to `p`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct GaloisElement {
    k: u64,
    p: u32,
}

impl GaloisElement {
    /// Reduces `k` mod `p²`; fails if `p | k`.
    pub fn new(k: u64, p: u32) -> Result<Self> {
        let p64 = p as u64;
        if k.is_multiple_of(p64) {
            return Err(Error::NotCoprime(k, p));
        }
        Ok(GaloisElement { k: k % (p64 * p64), p })
    }

    pub fn k(self) -> u64 {
        self.k
    }

    pub fn p(self) -> u32 {
        self.p
    }

    /// `β_1 ∘ β_2`, i.e. the residue `k_1 k_2`.
    pub fn compose(self, other: GaloisElement) -> GaloisElement {
        let n = (self.p as u64).pow(2);
        GaloisElement {
            k: self.k * other.k % n,
            p: self.p,
        }
    }

    pub fn inverse(self) -> GaloisElement {
        let n = (self.p as u64).pow(2);
        let order = self.p as u64 * (self.p as u64 - 1);
        GaloisElement {
            k: crate::arith::mod_pow(self.k, order - 1, n),
            p: self.p,
        }
    }
}

impl fmt::Display for GaloisElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.k)
    }
}

/// `M^β` for `β(g) = g^k`: classes move under the class-group actions (by
/// `k mod p` on `H(p)`, by `k` on `H(p²)`), each unit `u` is replaced by the
/// canonical representative of `β̄(u)`, and type tags are kept.
pub fn twist(d: &LatticeDescriptor, k: u64) -> Result<LatticeDescriptor> {
    let ctx = d.context();
    let beta = GaloisElement::new(k, ctx.p())?;
    let p = ctx.p() as u64;
    let k = beta.k();
    let classes = ctx.classes();
    let on_r = |b| classes.h_p.apply_action(k % p, b);
    let on_s = |c| classes.h_p2.apply_action(k, c);
    let summands = d
        .summands()
        .iter()
        .map(|s| {
            Ok(match s {
                Summand::Z => Summand::Z,
                Summand::IdealR { b } => Summand::IdealR { b: on_r(b)? },
                Summand::IdealS { c } => Summand::IdealS { c: on_s(c)? },
                Summand::ExtB { b } => Summand::ExtB { b: on_r(b)? },
                Summand::ExtC { c } => Summand::ExtC { c: on_s(c)? },
                Summand::Ext { kind, b, c, r, u } => {
                    let q = ctx.quotient(u.m())?;
                    Summand::Ext {
                        kind: *kind,
                        b: on_r(b)?,
                        c: on_s(c)?,
                        r: *r,
                        u: q.canonical(&galois_on_unit(k, u)?)?,
                    }
                }
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(LatticeDescriptor::from_sorted_parts(ctx.clone(), summands))
}

/// The smallest `k` with `d1 ≅ d2^β`, if any.
pub fn twisted_isomorphic(
    d1: &LatticeDescriptor,
    d2: &LatticeDescriptor,
) -> Result<Option<GaloisElement>> {
    d1.check_same_context(d2)?;
    if iso::padic_completion(d1) != iso::padic_completion(d2) {
        return Ok(None);
    }
    let inv1 = iso::invariants_of(d1)?;
    let p = d1.p();
    for k in d1.context().galois_elements() {
        let t = twist(d2, k)?;
        if inv1.matches(&iso::invariants_of(&t)?) {
            return Ok(Some(GaloisElement::new(k, p)?));
        }
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::context::Context;
    use crate::lattice::parse;
    use crate::modring::PolyMod;
    use std::sync::Arc;

    fn ctx(p: u32) -> Arc<Context> {
        Context::builtin(p).unwrap()
    }

    #[test]
    fn identity_twist() {
        let c = ctx(5);
        let d = parse("Z + B(0,0;1,1+l) + C(0,0;1) + D(0,0;2)", &c, true).unwrap();
        assert_eq!(twist(&d, 1).unwrap(), d);
        assert!(twist(&d, 10).is_err());
    }

    #[test]
    fn twist_of_type_b_at_three() {
        let c = ctx(3);
        let d = parse("B(0,0;1,1+l)", &c, true).unwrap();
        let u = match &d.summands()[0] {
            Summand::Ext { u, .. } => u.clone(),
            _ => unreachable!(),
        };
        let moved = galois_on_unit(2, &u).unwrap();
        let expect = c.quotient(2).unwrap().canonical(&moved).unwrap();
        match &twist(&d, 2).unwrap().summands()[0] {
            Summand::Ext { u, r, .. } => {
                assert_eq!(*r, 1);
                assert_eq!(*u, expect);
            }
            _ => unreachable!(),
        }
        // 1+l ↦ (1+l)^2 = 1+2l in F_3[l]/(l^2).
        let x = PolyMod::from_coeffs(3, 2, &[1, 1]);
        assert_eq!(galois_on_unit(2, &x).unwrap(), PolyMod::from_coeffs(3, 2, &[1, 2]));
    }

    #[test]
    fn composition_law() {
        let c = ctx(5);
        let d = parse("B(0,0;1,1+l) + B(0,0;0,1+l^4) + E(0,0;0)", &c, true).unwrap();
        let ks = c.galois_elements();
        for &k1 in &ks {
            for &k2 in &ks {
                let lhs = twist(&twist(&d, k2).unwrap(), k1).unwrap();
                assert_eq!(lhs, twist(&d, k1 * k2 % 25).unwrap());
            }
        }
    }

    #[test]
    fn element_arithmetic() {
        let a = GaloisElement::new(7, 5).unwrap();
        assert_eq!(a.compose(a.inverse()).k(), 1);
        assert_eq!(GaloisElement::new(27, 5).unwrap().k(), 2);
        assert!(GaloisElement::new(15, 5).is_err());
    }

    #[test]
    fn twisted_search() {
        let c = ctx(5);
        let d = parse("C(0,0;1) + E(0,0;0)", &c, false).unwrap();
        assert_eq!(twisted_isomorphic(&d, &d).unwrap().map(GaloisElement::k), Some(1));
        let e = parse("Z", &c, false).unwrap();
        assert_eq!(twisted_isomorphic(&d, &e).unwrap(), None);
        let cc = parse("C(0,0;1)", &c, false).unwrap();
        let dd = parse("D(0,0;1)", &c, false).unwrap();
        assert_eq!(twisted_isomorphic(&cc, &dd).unwrap(), None);
    }
}
