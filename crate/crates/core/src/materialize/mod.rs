//! Integer matrices for descriptors with trivial ideal classes.
//!
//! `Λ = Z[x]/(x^{p²}-1)`, `E = Z[x]/(x^p-1)`, `R = Z[x]/(Φ_p)` and
//! `S = Z[x]/(Φ_{p²})` act through shift and companion matrices. An
//! extension of `S` by `X` with class `f` is the pushout
//! `(Λ ⊕ X) / ⟨(y, -f(y)) : y ∈ E⟩`, where `E ⊂ Λ` is spanned by
//! `x^j Φ_{p²}(x)`; its basis and the induced action of `g` come from a
//! Smith normal form of the relations.

mod matrix;
mod snf;

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use crate::abelian::AbGroup;
use crate::error::{Error, Result};
use crate::lattice::{ExtKind, Faithfulness, LatticeDescriptor, Summand};
use crate::modring::PolyMod;

pub use matrix::{companion, cyclic_shift, IntMatrix};
pub use snf::{kernel_basis, snf, Snf};

/// Integer polynomials, constant term first.
pub mod poly {
    use num_bigint::BigInt;
    use num_traits::Zero;

    pub fn trim(mut a: Vec<BigInt>) -> Vec<BigInt> {
        while a.len() > 1 && a.last().is_some_and(Zero::is_zero) {
            a.pop();
        }
        a
    }

    pub fn from_i64(c: &[i64]) -> Vec<BigInt> {
        trim(c.iter().map(|&x| BigInt::from(x)).collect())
    }

    pub fn mul(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
        let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
        for (i, x) in a.iter().enumerate() {
            for (j, y) in b.iter().enumerate() {
                out[i + j] += x * y;
            }
        }
        trim(out)
    }

    pub fn pow(a: &[BigInt], e: usize) -> Vec<BigInt> {
        (0..e).fold(vec![BigInt::from(1)], |acc, _| mul(&acc, a))
    }

    /// `Φ_p(x^{p^{i-1}})`, i.e. the `p^i`-th cyclotomic polynomial.
    pub fn cyclotomic_prime_power(p: usize, i: u32) -> Vec<BigInt> {
        let step = p.pow(i - 1);
        let mut c = vec![BigInt::zero(); (p - 1) * step + 1];
        for k in 0..p {
            c[k * step] = BigInt::from(1);
        }
        c
    }

    /// `x^n - 1`.
    pub fn x_pow_minus_one(n: usize) -> Vec<BigInt> {
        let mut c = vec![BigInt::zero(); n + 1];
        c[0] = BigInt::from(-1);
        c[n] = BigInt::from(1);
        c
    }

    /// Remainder modulo a monic polynomial, padded to its degree.
    pub fn rem_monic(a: &[BigInt], m: &[BigInt]) -> Vec<BigInt> {
        let n = m.len() - 1;
        let mut r = a.to_vec();
        for k in (n..r.len()).rev() {
            let c = r[k].clone();
            if c.is_zero() {
                continue;
            }
            for (j, mj) in m.iter().enumerate() {
                r[k - n + j] -= &c * mj;
            }
        }
        r.resize(n.max(r.len()), BigInt::zero());
        r.truncate(n);
        r
    }
}

/// An `n × n` integer matrix giving the action of the generator `g`.
#[derive(Clone, Debug)]
pub struct IntegerRep {
    pub n: usize,
    pub a: IntMatrix,
    pub source: LatticeDescriptor,
}

impl Serialize for IntegerRep {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let rows = self
            .a
            .to_i64_rows()
            .ok_or_else(|| serde::ser::Error::custom("matrix entry exceeds i64"))?;
        let mut st = s.serialize_struct("IntegerRep", 4)?;
        st.serialize_field("p", &self.source.p())?;
        st.serialize_field("descriptor", &self.source.render())?;
        st.serialize_field("n", &self.n)?;
        st.serialize_field("matrix", &rows)?;
        st.end()
    }
}

/// The coefficient module `X` of an extension of `S`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ExtTarget {
    Z,
    R,
    E,
    ZR,
    ZE,
}

impl std::str::FromStr for ExtTarget {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.replace(' ', "").as_str() {
            "Z" => Ok(ExtTarget::Z),
            "R" => Ok(ExtTarget::R),
            "E" => Ok(ExtTarget::E),
            "Z+R" | "ZR" => Ok(ExtTarget::ZR),
            "Z+E" | "ZE" => Ok(ExtTarget::ZE),
            other => Err(Error::UnsupportedExt(other.to_string())),
        }
    }
}

fn matrix_z() -> IntMatrix {
    IntMatrix::identity(1)
}

fn to_i64(c: &[BigInt]) -> Vec<i64> {
    c.iter().map(|x| x.to_i64().expect("small coefficient")).collect()
}

/// Companion matrix of `Φ_p` (the action on `R`).
pub fn matrix_r(p: u32) -> IntMatrix {
    companion(&to_i64(&poly::cyclotomic_prime_power(p as usize, 1)))
}

/// Companion matrix of `Φ_{p²}` (the action on `S`).
pub fn matrix_s(p: u32) -> IntMatrix {
    companion(&to_i64(&poly::cyclotomic_prime_power(p as usize, 2)))
}

/// The shift on `Z^p` (the action on `E = Z C_p`).
pub fn matrix_e(p: u32) -> IntMatrix {
    cyclic_shift(p as usize)
}

fn target_matrix(x: ExtTarget, p: u32) -> IntMatrix {
    match x {
        ExtTarget::Z => matrix_z(),
        ExtTarget::R => matrix_r(p),
        ExtTarget::E => matrix_e(p),
        ExtTarget::ZR => IntMatrix::direct_sum(&[matrix_z(), matrix_r(p)]),
        ExtTarget::ZE => IntMatrix::direct_sum(&[matrix_z(), matrix_e(p)]),
    }
}

/// Lift of `λ^r u` with `λ = x - 1`, reduced into `X = E` or `X = R`.
fn lambda_r_u(p: u32, r: u32, u: &PolyMod, scale: i64, into_e: bool) -> Vec<BigInt> {
    let lambda = poly::from_i64(&[-1, 1]);
    let mut w = vec![BigInt::zero()];
    for (j, &c) in u.coeffs().iter().enumerate() {
        let term: Vec<BigInt> = poly::pow(&lambda, j)
            .into_iter()
            .map(|x| x * BigInt::from(c))
            .collect();
        w = add_poly(&w, &term);
    }
    let v: Vec<BigInt> = poly::mul(&poly::pow(&lambda, r as usize), &w)
        .into_iter()
        .map(|x| x * BigInt::from(scale))
        .collect();
    let modulus = if into_e {
        poly::x_pow_minus_one(p as usize)
    } else {
        poly::cyclotomic_prime_power(p as usize, 1)
    };
    poly::rem_monic(&v, &modulus)
}

fn add_poly(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let n = a.len().max(b.len());
    (0..n)
        .map(|i| a.get(i).cloned().unwrap_or_default() + b.get(i).cloned().unwrap_or_default())
        .collect()
}

/// `(P ⊕ X) / ⟨(k_i, -f(k_i))⟩` with the relations given as columns of
/// `P ⊕ X`; returns the action on the quotient.
fn pushout(a_p: &IntMatrix, a_x: &IntMatrix, k: &[Vec<BigInt>], fk: &[Vec<BigInt>]) -> Result<IntMatrix> {
    let np = a_p.rows();
    let big = IntMatrix::direct_sum(&[a_p.clone(), a_x.clone()]);
    let n = big.rows();
    let cols: Vec<Vec<BigInt>> = k
        .iter()
        .zip(fk)
        .map(|(y, fy)| {
            assert_eq!(y.len(), np);
            y.iter().cloned().chain(fy.iter().map(|x| -x)).collect()
        })
        .collect();
    let rel = IntMatrix::from_columns(n, &cols);
    let s = snf(&rel);
    let f = s.invariant_factors();
    if f.len() != cols.len() || !f.iter().all(One::is_one) {
        return Err(Error::Internal(
            "relation lattice is not saturated; quotient is not free".into(),
        ));
    }
    let rk = f.len();
    let b = s.u.mul(&big).mul(&s.u_inv);
    if !b.submatrix(rk, n, 0, rk).is_zero() {
        return Err(Error::Internal("relations are not g-stable".into()));
    }
    Ok(b.submatrix(rk, n, rk, n))
}

/// Basis `x^j Φ_{p²}(x)`, `j < p`, of `E ⊂ Λ`.
fn e_in_lambda(p: u32) -> Vec<Vec<BigInt>> {
    let p = p as usize;
    (0..p)
        .map(|j| {
            let mut v = vec![BigInt::zero(); p * p];
            for i in 0..p {
                v[(j + i * p) % (p * p)] = BigInt::one();
            }
            v
        })
        .collect()
}

/// `f(x^j e) = A_X^j f(e)`.
fn orbit_images(a_x: &IntMatrix, fe: Vec<BigInt>, count: usize) -> Vec<Vec<BigInt>> {
    let mut out = Vec::with_capacity(count);
    let mut cur = fe;
    for _ in 0..count {
        let next = a_x.mul_vec(&cur);
        out.push(cur);
        cur = next;
    }
    out
}

fn extension_of_s(p: u32, x: ExtTarget, fe: Vec<BigInt>) -> Result<IntMatrix> {
    let a_x = target_matrix(x, p);
    let lambda = cyclic_shift((p * p) as usize);
    let k = e_in_lambda(p);
    let fk = orbit_images(&a_x, fe, p as usize);
    pushout(&lambda, &a_x, &k, &fk)
}

fn summand_matrix(d: &LatticeDescriptor, s: &Summand) -> Result<IntMatrix> {
    let p = d.p();
    let one = || vec![BigInt::one()];
    match s {
        Summand::Z => Ok(matrix_z()),
        Summand::IdealR { .. } => Ok(matrix_r(p)),
        Summand::IdealS { .. } => Ok(matrix_s(p)),
        Summand::ExtB { .. } => {
            // (E ⊕ Z) / ⟨(N, -1)⟩ with N = Φ_p(x), i.e. (Z, R; 1).
            let n = vec![BigInt::one(); p as usize];
            pushout(&matrix_e(p), &matrix_z(), &[n], &[one()])
        }
        Summand::ExtC { .. } => extension_of_s(p, ExtTarget::Z, one()),
        Summand::Ext { kind, r, u, .. } => {
            let n0 = d.context().n0().unwrap_or(1) as i64;
            match kind {
                ExtKind::B => extension_of_s(p, ExtTarget::E, lambda_r_u(p, *r, u, 1, true)),
                ExtKind::E => extension_of_s(p, ExtTarget::R, lambda_r_u(p, *r, u, 1, false)),
                ExtKind::C | ExtKind::D => {
                    let scale = if *kind == ExtKind::D { n0 } else { 1 };
                    let mut fe = one();
                    fe.extend(lambda_r_u(p, *r, u, scale, true));
                    extension_of_s(p, ExtTarget::ZE, fe)
                }
                ExtKind::F => {
                    let mut fe = one();
                    fe.extend(lambda_r_u(p, *r, u, 1, false));
                    extension_of_s(p, ExtTarget::ZR, fe)
                }
            }
        }
    }
}

/// Block-diagonal integer representation of `d`.
pub fn rep_of(d: &LatticeDescriptor) -> Result<IntegerRep> {
    if !d.has_trivial_classes() {
        return Err(Error::NontrivialClass(format!(
            "{d}: only trivial ideal classes can be materialized"
        )));
    }
    let blocks = d
        .summands()
        .iter()
        .map(|s| summand_matrix(d, s))
        .collect::<Result<Vec<_>>>()?;
    let a = IntMatrix::direct_sum(&blocks);
    let n = a.rows();
    let p2 = (d.p() as u64).pow(2);
    if !a.pow(p2).is_identity() {
        return Err(Error::Internal(format!("{d}: A^{p2} is not the identity")));
    }
    Ok(IntegerRep {
        n,
        a,
        source: d.clone(),
    })
}

/// `Ext^1_Λ(S, X)`.
///
/// From `0 → E → Λ → S → 0` and `Ext(Λ, X) = 0`, `Ext(S, X)` is the
/// cokernel of restriction `Hom(Λ, X) → Hom(E, X)`. With
/// `Hom(Λ, X) = X` and `Hom(E, X) = ker(A^p - 1)` this is the map
/// `x ↦ Φ_{p²}(A) x` into `ker(A^p - 1)`.
pub fn ext_group(x: ExtTarget, p: u32) -> Result<AbGroup> {
    if !crate::arith::is_prime(p as u64) {
        return Err(Error::OutOfRange(format!("{p} is not prime")));
    }
    let a = target_matrix(x, p);
    let n = a.rows();
    let ap = a.pow(p as u64);
    let hom_e = ap.sub(&IntMatrix::identity(n));
    let s = snf(&hom_e);
    let rank = s.rank();
    let k = n - rank;
    // Φ_{p²}(A) = Σ_i A^{ip}.
    let mut phi = IntMatrix::zeros(n, n);
    let mut cur = IntMatrix::identity(n);
    for _ in 0..p {
        phi = phi.add(&cur);
        cur = cur.mul(&ap);
    }
    // Coordinates of the images in the kernel basis: rows of V^{-1} past the rank.
    let coords = s.v_inv.mul(&phi);
    if !coords.submatrix(0, rank, 0, n).is_zero() {
        return Err(Error::Internal("restriction does not land in Hom(E, X)".into()));
    }
    let y = coords.submatrix(rank, n, 0, n);
    let c = snf(&y);
    let f = c.invariant_factors();
    if f.len() != k {
        return Err(Error::Internal("Ext group is infinite".into()));
    }
    let factors = f
        .iter()
        .filter(|x| !x.is_one())
        .map(|x| x.to_u64().ok_or_else(|| Error::Internal("factor too large".into())))
        .collect::<Result<Vec<_>>>()?;
    AbGroup::new(factors)
}

/// Characteristic polynomial `det(x I - A)` by Faddeev–LeVerrier.
pub fn char_poly(a: &IntMatrix) -> Vec<BigInt> {
    let n = a.rows();
    let mut c = vec![BigInt::zero(); n + 1];
    c[n] = BigInt::one();
    let mut m = IntMatrix::zeros(n, n);
    let id = IntMatrix::identity(n);
    for k in 1..=n {
        m = a.mul(&m).add(&id.scale(&c[n - k + 1]));
        let t = a.mul(&m).trace();
        let kk = BigInt::from(k);
        debug_assert!((&t % &kk).is_zero());
        c[n - k] = -(t / kk);
    }
    c
}

/// Predicted characteristic polynomial from the summand types.
pub fn predicted_char_poly(d: &LatticeDescriptor) -> Vec<BigInt> {
    let p = d.p() as usize;
    let x1 = poly::from_i64(&[-1, 1]);
    let phi1 = poly::cyclotomic_prime_power(p, 1);
    let phi2 = poly::cyclotomic_prime_power(p, 2);
    let xp1 = poly::x_pow_minus_one(p);
    let mut acc = vec![BigInt::one()];
    for s in d.summands() {
        let factors: Vec<&Vec<BigInt>> = match s {
            Summand::Z => vec![&x1],
            Summand::IdealR { .. } => vec![&phi1],
            Summand::IdealS { .. } => vec![&phi2],
            Summand::ExtB { .. } => vec![&x1, &phi1],
            Summand::ExtC { .. } => vec![&x1, &phi2],
            Summand::Ext { kind, .. } => match kind {
                ExtKind::B => vec![&xp1, &phi2],
                ExtKind::C | ExtKind::D => vec![&x1, &xp1, &phi2],
                ExtKind::E => vec![&phi1, &phi2],
                ExtKind::F => vec![&x1, &phi1, &phi2],
            },
        };
        for f in factors {
            acc = poly::mul(&acc, f);
        }
    }
    acc
}

/// Rank of the fixed lattice `ker(A - 1)`: the multiplicity of the root 1
/// in the characteristic polynomial.
pub fn predicted_fixed_rank(d: &LatticeDescriptor) -> usize {
    let n = d.counts();
    n.z + n.ext_b + n.ext_c + n.b + 2 * (n.c + n.d) + n.f
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Check {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ValidationReport {
    pub checks: Vec<Check>,
}

impl ValidationReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn failures(&self) -> Vec<&Check> {
        self.checks.iter().filter(|c| !c.passed).collect()
    }
}

fn fmt_poly(c: &[BigInt]) -> String {
    let v: Vec<String> = c.iter().map(|x| x.to_string()).collect();
    format!("[{}]", v.join(", "))
}

/// Checks `A^{p²} = 1`, the exact order of `A`, the characteristic
/// polynomial, `det A = ±1`, the rank and the rank of the fixed lattice.
pub fn validate_rep(rep: &IntegerRep) -> ValidationReport {
    let d = &rep.source;
    let p = d.p() as u64;
    let a = &rep.a;
    let n = rep.n;
    let mut checks = Vec::new();
    let mut push = |name, passed, detail: String| checks.push(Check { name, passed, detail });

    push(
        "rank",
        n == d.rank() && a.rows() == n && a.is_square(),
        format!("matrix {}x{}, descriptor rank {}", a.rows(), a.cols(), d.rank()),
    );
    push("period", a.pow(p * p).is_identity(), format!("A^{} = I", p * p));

    let order = [1, p, p * p].into_iter().find(|&e| a.pow(e).is_identity());
    let expected = match d.faithfulness() {
        Faithfulness::TrivialAction => 1,
        Faithfulness::OrderP => p,
        Faithfulness::Faithful => p * p,
    };
    push(
        "order",
        order == Some(expected),
        format!("order {order:?}, expected {expected}"),
    );

    let cp = char_poly(a);
    let predicted = predicted_char_poly(d);
    push(
        "char_poly",
        poly::trim(cp.clone()) == poly::trim(predicted.clone()),
        format!("{} vs predicted {}", fmt_poly(&cp), fmt_poly(&predicted)),
    );

    let det = if n.is_multiple_of(2) { cp[0].clone() } else { -cp[0].clone() };
    push("unimodular", det.abs().is_one() || n == 0, format!("det {det}"));

    let fixed = n - snf(&a.sub(&IntMatrix::identity(n))).rank();
    let want = predicted_fixed_rank(d);
    push(
        "fixed_rank",
        fixed == want,
        format!("rank ker(A - 1) = {fixed}, expected {want}"),
    );
    ValidationReport { checks }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::context::Context;
    use crate::lattice::parse;
    use std::sync::Arc;

    fn ctx(p: u32) -> Arc<Context> {
        Context::builtin(p).unwrap()
    }

    fn rep(p: u32, text: &str) -> IntegerRep {
        rep_of(&parse(text, &ctx(p), true).unwrap()).unwrap()
    }

    fn big(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn basic_blocks() {
        assert_eq!(rep(3, "Z").a, IntMatrix::identity(1));
        assert_eq!(rep(2, "c(0)").a, IntMatrix::from_rows(&[vec![0, -1], vec![1, 0]]));
        let r = rep(3, "3*Z");
        assert!(validate_rep(&r).passed());
    }

    #[test]
    fn extension_of_s_by_z_at_two() {
        let r = rep(2, "Ec(0)");
        assert_eq!(r.n, 3);
        let v = validate_rep(&r);
        assert!(v.passed(), "{v:?}");
        assert_eq!(char_poly(&r.a), big(&[-1, 1, -1, 1]));
        // Z ⊕ S has coker(A - 1) = Z ⊕ Z/2; the nonsplit extension does not.
        let split = rep(2, "Z + c(0)");
        let inv = |r: &IntegerRep| snf(&r.a.sub(&IntMatrix::identity(r.n))).invariant_factors();
        assert_ne!(inv(&r), inv(&split));
    }

    #[test]
    fn type_e_at_three() {
        let r = rep(3, "E(0,0;0)");
        assert_eq!(r.n, 8);
        let v = validate_rep(&r);
        assert!(v.passed(), "{v:?}");
        let phi3 = poly::cyclotomic_prime_power(3, 1);
        let phi9 = poly::cyclotomic_prime_power(3, 2);
        assert_eq!(char_poly(&r.a), poly::mul(&phi3, &phi9));
    }

    #[test]
    fn every_indecomposable_validates() {
        for p in [2, 3] {
            for d in crate::iso::indecomposable_templates(&ctx(p)) {
                let r = rep_of(&d).unwrap();
                let v = validate_rep(&r);
                assert!(v.passed(), "{d}: {:?}", v.failures());
            }
        }
    }

    #[test]
    fn ext_orders() {
        for p in [2, 3, 5] {
            let g = ext_group(ExtTarget::ZR, p).unwrap();
            assert_eq!(g.order(), (p as u128).pow(p));
            assert!(g.invariant_factors().iter().all(|&d| d == p as u64));
        }
        assert_eq!(ext_group(ExtTarget::Z, 2).unwrap().order(), 2);
        assert_eq!(ext_group(ExtTarget::Z, 3).unwrap().order(), 3);
        assert_eq!(ext_group(ExtTarget::R, 3).unwrap().order(), 9);
    }

    #[test]
    fn nontrivial_classes_refused() {
        let text = r#"{"p": 7,
            "H_p": {"invariant_factors": [], "generator_residue": 3, "generator_matrix": []},
            "H_p2": {"invariant_factors": [43], "generator_residue": 3, "generator_matrix": [[3]]}}"#;
        let c = Context::new(crate::classdata::ClassData::from_json_str(text).unwrap());
        let d = parse("c(1)", &c, false).unwrap();
        assert!(matches!(rep_of(&d), Err(Error::NontrivialClass(_))));
    }

    #[test]
    fn polynomial_helpers() {
        assert_eq!(poly::rem_monic(&big(&[0, 0, 1]), &big(&[1, 0, 1])), big(&[-1, 0]));
        assert_eq!(poly::cyclotomic_prime_power(2, 2), big(&[1, 0, 1]));
        assert_eq!(poly::mul(&big(&[-1, 1]), &big(&[1, 1, 1])), big(&[-1, 0, 0, 1]));
    }
}
