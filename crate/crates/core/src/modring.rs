//! Truncated polynomial rings `F_p[λ]/(λ^m)`, their unit groups, and the
//! unit quotients `U_m` that parametrize the extension classes of the
//! indecomposable lattices.
//!
//! `λ` stands for `g - 1`, so the image of the generator `g` is `1 + λ`.
//! For `1 ≤ m ≤ p-1`, `U_m` is the unit group modulo the image of the units
//! of `Z[ζ_p]`; for `m = p` it is `u(F_p[λ]/(λ^p))` modulo the images of the
//! units of `Z C_p` and `Z[ζ_{p²}]`. Both images are generated from the
//! trivial and cyclotomic unit families plus optional configured extras.

use std::collections::HashSet;
use std::fmt;

use serde::{Serialize, Serializer};

use crate::arith;
use crate::error::{Error, Result};

/// An element of `F_p[λ]/(λ^m)`; `coeffs[j]` is the coefficient of `λ^j`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PolyMod {
    p: u32,
    coeffs: Vec<u32>,
}

impl Serialize for PolyMod {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.coeffs.serialize(s)
    }
}

impl PolyMod {
    /// Builds an element from arbitrary integer coefficients, reducing mod `p`
    /// and zero-padding or truncating to length `m`.
    pub fn from_coeffs(p: u32, m: usize, coeffs: &[i64]) -> Self {
        let mut c = vec![0u32; m];
        for (j, &x) in coeffs.iter().enumerate().take(m) {
            c[j] = x.rem_euclid(p as i64) as u32;
        }
        PolyMod { p, coeffs: c }
    }

    pub fn zero(p: u32, m: usize) -> Self {
        PolyMod { p, coeffs: vec![0; m] }
    }

    pub fn one(p: u32, m: usize) -> Self {
        Self::constant(p, m, 1)
    }

    pub fn constant(p: u32, m: usize, c: i64) -> Self {
        Self::from_coeffs(p, m, &[c])
    }

    /// `λ^r`, which is zero once `r ≥ m`.
    pub fn lambda_pow(p: u32, m: usize, r: usize) -> Self {
        let mut x = Self::zero(p, m);
        if r < m {
            x.coeffs[r] = 1 % p;
        }
        x
    }

    /// The image `1 + λ` of the group generator.
    pub fn one_plus_lambda(p: u32, m: usize) -> Self {
        Self::from_coeffs(p, m, &[1, 1])
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    /// Truncation degree.
    pub fn m(&self) -> usize {
        self.coeffs.len()
    }

    pub fn coeffs(&self) -> &[u32] {
        &self.coeffs
    }

    pub fn constant_term(&self) -> u32 {
        self.coeffs.first().copied().unwrap_or(0)
    }

    pub fn is_one(&self) -> bool {
        *self == Self::one(self.p, self.m())
    }

    /// In the zero ring (`m = 0`) every element is a unit.
    pub fn is_unit(&self) -> bool {
        self.m() == 0 || self.constant_term() != 0
    }

    fn same_ring(&self, other: &Self) -> Result<()> {
        if self.p != other.p || self.m() != other.m() {
            return Err(Error::RingMismatch(format!(
                "F_{}[l]/(l^{}) vs F_{}[l]/(l^{})",
                self.p,
                self.m(),
                other.p,
                other.m()
            )));
        }
        Ok(())
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.same_ring(other)?;
        Ok(self.mul_unchecked(other))
    }

    pub(crate) fn mul_unchecked(&self, other: &Self) -> Self {
        let m = self.m();
        let p = self.p as u64;
        let mut acc = vec![0u64; m];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in other.coeffs.iter().enumerate().take(m - i) {
                acc[i + j] += a as u64 * b as u64;
            }
        }
        PolyMod {
            p: self.p,
            coeffs: acc.into_iter().map(|x| (x % p) as u32).collect(),
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.same_ring(other)?;
        Ok(PolyMod {
            p: self.p,
            coeffs: self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| (a + b) % self.p)
                .collect(),
        })
    }

    pub fn pow(&self, mut e: u64) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one(self.p, self.m());
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul_unchecked(&base);
            }
            base = base.mul_unchecked(&base);
            e >>= 1;
        }
        acc
    }

    /// Inverse by solving `a·r = 1` coefficient by coefficient.
    pub fn inv(&self) -> Result<Self> {
        if !self.is_unit() {
            return Err(Error::NonUnit(self.to_string()));
        }
        let m = self.m();
        if m == 0 {
            return Ok(self.clone());
        }
        let p = self.p as i64;
        let c0_inv = arith::mod_pow(self.coeffs[0] as u64, self.p as u64 - 2, self.p as u64) as i64;
        let mut r = vec![0i64; m];
        r[0] = c0_inv;
        for k in 1..m {
            let s: i64 = (1..=k)
                .map(|i| self.coeffs[i] as i64 * r[k - i])
                .sum::<i64>()
                % p;
            r[k] = (-s * c0_inv).rem_euclid(p);
        }
        Ok(Self::from_coeffs(self.p, m, &r))
    }

    /// Zero-pads (or truncates) to length `m`.
    pub fn resize(&self, m: usize) -> Self {
        let mut c = self.coeffs.clone();
        c.resize(m, 0);
        PolyMod { p: self.p, coeffs: c }
    }

    /// Base-`p` encoding with the constant term most significant, so that
    /// increasing indices enumerate the ring in lexicographic order.
    pub fn index(&self) -> u64 {
        self.coeffs
            .iter()
            .fold(0u64, |acc, &c| acc * self.p as u64 + c as u64)
    }

    pub fn from_index(p: u32, m: usize, mut idx: u64) -> Self {
        let mut c = vec![0u32; m];
        for j in (0..m).rev() {
            c[j] = (idx % p as u64) as u32;
            idx /= p as u64;
        }
        PolyMod { p, coeffs: c }
    }
}

impl fmt::Display for PolyMod {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (j, &c) in self.coeffs.iter().enumerate() {
            if c == 0 {
                continue;
            }
            if !first {
                write!(f, "+")?;
            }
            first = false;
            match (j, c) {
                (0, _) => write!(f, "{c}")?,
                (1, 1) => write!(f, "l")?,
                (1, _) => write!(f, "{c}l")?,
                (_, 1) => write!(f, "l^{j}")?,
                _ => write!(f, "{c}l^{j}")?,
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

pub fn poly_mul(a: &PolyMod, b: &PolyMod) -> Result<PolyMod> {
    a.mul(b)
}

pub fn poly_inv(a: &PolyMod) -> Result<PolyMod> {
    a.inv()
}

fn check_prime(p: u32) -> Result<()> {
    if !arith::is_prime(p as u64) {
        return Err(Error::OutOfRange(format!("{p} is not prime")));
    }
    Ok(())
}

fn ring_size(p: u32, m: usize, limit: usize) -> Result<u64> {
    let size = (p as u128).pow(m as u32);
    if size > limit as u128 {
        return Err(Error::TooLarge { size, limit });
    }
    Ok(size as u64)
}

/// All units of `F_p[λ]/(λ^m)` in lexicographic order.
pub fn unit_group(p: u32, m: usize) -> Result<Vec<PolyMod>> {
    check_prime(p)?;
    if m == 0 {
        return Err(Error::OutOfRange("unit_group needs m >= 1".into()));
    }
    let size = ring_size(p, m, usize::MAX)?;
    Ok((0..size)
        .map(|i| PolyMod::from_index(p, m, i))
        .filter(PolyMod::is_unit)
        .collect())
}

/// A subgroup of `u(F_p[λ]/(λ^m))`, stored as the set of encoded members.
#[derive(Clone, Debug)]
pub struct UnitSubgroup {
    p: u32,
    m: usize,
    generators: Vec<PolyMod>,
    members: HashSet<u64>,
}

impl UnitSubgroup {
    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn generators(&self) -> &[PolyMod] {
        &self.generators
    }

    pub fn order(&self) -> usize {
        self.members.len()
    }

    pub fn contains(&self, x: &PolyMod) -> bool {
        x.p == self.p && x.m() == self.m && self.members.contains(&x.index())
    }

    /// Members in lexicographic order.
    pub fn elements(&self) -> Vec<PolyMod> {
        let mut idx: Vec<u64> = self.members.iter().copied().collect();
        idx.sort_unstable();
        idx.into_iter()
            .map(|i| PolyMod::from_index(self.p, self.m, i))
            .collect()
    }
}

/// Smallest subgroup containing `gens` (a finite monoid of units is a group).
pub fn subgroup_closure(p: u32, m: usize, gens: &[PolyMod]) -> Result<UnitSubgroup> {
    for g in gens {
        if g.p != p || g.m() != m {
            return Err(Error::RingMismatch(format!(
                "generator {g} is not in F_{p}[l]/(l^{m})"
            )));
        }
        if !g.is_unit() {
            return Err(Error::NonUnit(g.to_string()));
        }
    }
    let one = PolyMod::one(p, m);
    let mut members = HashSet::from([one.index()]);
    let mut frontier = vec![one];
    while !frontier.is_empty() {
        let mut next = Vec::new();
        for x in &frontier {
            for g in gens {
                let y = x.mul_unchecked(g);
                if members.insert(y.index()) {
                    next.push(y);
                }
            }
        }
        frontier = next;
    }
    Ok(UnitSubgroup {
        p,
        m,
        generators: gens.to_vec(),
        members,
    })
}

/// `Δ_l = 1 + (1+λ) + ... + (1+λ)^{l-1}`, the image of the cyclotomic unit
/// `(g^l - 1)/(g - 1)`.
pub fn cyclotomic_delta(p: u32, m: usize, l: u64) -> PolyMod {
    let step = PolyMod::one_plus_lambda(p, m);
    let mut term = PolyMod::one(p, m);
    let mut sum = PolyMod::zero(p, m);
    for _ in 0..l {
        sum = sum.add(&term).expect("same ring");
        term = term.mul_unchecked(&step);
    }
    sum
}

/// The ring map induced by `g ↦ g^k`: `λ ↦ (1+λ)^k - 1`.
pub fn galois_on_unit(k: u64, x: &PolyMod) -> Result<PolyMod> {
    let p = x.p;
    if k.is_multiple_of(p as u64) {
        return Err(Error::NotCoprime(k, p));
    }
    let m = x.m();
    let image_of_lambda = {
        let mut y = PolyMod::one_plus_lambda(p, m).pow(k);
        if m > 0 {
            y.coeffs[0] = (y.coeffs[0] + p - 1) % p;
        }
        y
    };
    // Horner evaluation of x at the image of λ.
    let mut acc = PolyMod::zero(p, m);
    for &c in x.coeffs.iter().rev() {
        acc = acc.mul_unchecked(&image_of_lambda);
        if m > 0 {
            acc.coeffs[0] = (acc.coeffs[0] + c) % p;
        }
    }
    Ok(acc)
}

/// Closes a generator list under one Galois generator until stable, so the
/// resulting subgroup is stable under every `g ↦ g^k`.
fn galois_stable_closure(p: u32, m: usize, mut gens: Vec<PolyMod>) -> Result<UnitSubgroup> {
    let gamma = arith::primitive_root(p as u64, 2);
    loop {
        let sub = subgroup_closure(p, m, &gens)?;
        let missing: Vec<PolyMod> = gens
            .iter()
            .map(|g| galois_on_unit(gamma, g))
            .collect::<Result<Vec<_>>>()?
            .into_iter()
            .filter(|g| !sub.contains(g))
            .collect();
        if missing.is_empty() {
            return Ok(sub);
        }
        gens.extend(missing);
    }
}

fn fitted(p: u32, m: usize, extra: &[PolyMod]) -> Result<Vec<PolyMod>> {
    extra
        .iter()
        .map(|g| {
            if g.p != p {
                return Err(Error::RingMismatch(format!("extra generator {g} is not mod {p}")));
            }
            let g = g.resize(m);
            if !g.is_unit() {
                return Err(Error::NonUnit(g.to_string()));
            }
            Ok(g)
        })
        .collect()
}

/// Image of `u(Z[ζ_p])` in `F_p[λ]/(λ^m)`, `1 ≤ m ≤ p-1`: generated by `-1`,
/// `1+λ` and the cyclotomic units `Δ_l`, `2 ≤ l ≤ p-1`, plus `extra`.
pub fn image_of_r_units(p: u32, m: usize, extra: &[PolyMod]) -> Result<UnitSubgroup> {
    check_prime(p)?;
    if m == 0 || m > p as usize - 1 {
        return Err(Error::OutOfRange(format!(
            "image of u(R) needs 1 <= m <= p-1, got m = {m}"
        )));
    }
    let mut gens = vec![
        PolyMod::constant(p, m, -1),
        PolyMod::one_plus_lambda(p, m),
    ];
    gens.extend((2..p as u64).map(|l| cyclotomic_delta(p, m, l)));
    gens.extend(fitted(p, m, extra)?);
    galois_stable_closure(p, m, gens)
}

/// Image of `u(Z C_p) · u(Z[ζ_{p²}])` in `F_p[λ]/(λ^p)`: `±(1+λ)^k` and the
/// cyclotomic units `Δ_l(ζ_{p²})`, `p ∤ l`, plus `extra`.
pub fn image_of_es_units(p: u32, extra: &[PolyMod]) -> Result<UnitSubgroup> {
    check_prime(p)?;
    let m = p as usize;
    let mut gens = vec![
        PolyMod::constant(p, m, -1),
        PolyMod::one_plus_lambda(p, m),
    ];
    let p2 = (p as u64) * (p as u64);
    gens.extend(
        (2..p2)
            .filter(|l| l % p as u64 != 0)
            .map(|l| cyclotomic_delta(p, m, l)),
    );
    gens.extend(fitted(p, m, extra)?);
    galois_stable_closure(p, m, gens)
}

/// Extra unit generators beyond the built-in trivial and cyclotomic families.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ExtraUnits {
    pub r: Vec<PolyMod>,
    pub es: Vec<PolyMod>,
}

/// `U_m` together with its canonical representatives `Ũ_m`.
#[derive(Clone, Debug)]
pub struct UnitQuotient {
    p: u32,
    m: usize,
    subgroup: UnitSubgroup,
    reps: Vec<PolyMod>,
    /// Encoded element -> position in `reps`; `u32::MAX` marks non-units.
    class_of: Vec<u32>,
}

impl UnitQuotient {
    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn subgroup(&self) -> &UnitSubgroup {
        &self.subgroup
    }

    /// The canonical representatives, in lexicographic order; `reps()[0]` is 1.
    pub fn reps(&self) -> &[PolyMod] {
        &self.reps
    }

    pub fn len(&self) -> usize {
        self.reps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.reps.is_empty()
    }

    pub fn is_trivial(&self) -> bool {
        self.reps.len() == 1
    }

    fn check(&self, u: &PolyMod) -> Result<()> {
        if u.p != self.p || u.m() != self.m {
            return Err(Error::RingMismatch(format!(
                "{u} is not in F_{}[l]/(l^{})",
                self.p, self.m
            )));
        }
        if !u.is_unit() {
            return Err(Error::NonUnit(u.to_string()));
        }
        Ok(())
    }

    /// Position of the coset of `u` among `reps()`.
    pub fn class_index(&self, u: &PolyMod) -> Result<usize> {
        self.check(u)?;
        Ok(self.class_of[u.index() as usize] as usize)
    }

    pub fn canonical(&self, u: &PolyMod) -> Result<PolyMod> {
        Ok(self.reps[self.class_index(u)?].clone())
    }

    pub fn is_canonical(&self, u: &PolyMod) -> bool {
        self.canonical(u).map(|c| c == *u).unwrap_or(false)
    }

    /// The permutation of `reps()` induced by `g ↦ g^k`.
    pub fn galois_permutation(&self, k: u64) -> Result<Vec<usize>> {
        self.reps
            .iter()
            .map(|u| self.class_index(&galois_on_unit(k, u)?))
            .collect()
    }
}

/// Computes `U_m` for `0 ≤ m ≤ p`, refusing rings with more than `limit` elements.
pub fn compute_um(p: u32, m: usize, extra: &ExtraUnits, limit: usize) -> Result<UnitQuotient> {
    check_prime(p)?;
    if m > p as usize {
        return Err(Error::OutOfRange(format!("U_m needs m <= p, got m = {m}")));
    }
    if m == 0 {
        let one = PolyMod::one(p, 0);
        return Ok(UnitQuotient {
            p,
            m,
            subgroup: subgroup_closure(p, 0, &[])?,
            reps: vec![one],
            class_of: vec![0],
        });
    }
    let size = ring_size(p, m, limit)?;
    let subgroup = if m == p as usize {
        image_of_es_units(p, &extra.es)?
    } else {
        image_of_r_units(p, m, &extra.r)?
    };
    let members = subgroup.elements();
    let mut class_of = vec![u32::MAX; size as usize];
    let mut reps = Vec::new();
    // Walking in lexicographic order makes the first member met in each coset
    // its smallest one; every coset meets constant term 1 first because all
    // nonzero constants lie in the subgroup.
    for idx in 0..size {
        if class_of[idx as usize] != u32::MAX {
            continue;
        }
        let u = PolyMod::from_index(p, m, idx);
        if !u.is_unit() {
            continue;
        }
        let cls = reps.len() as u32;
        for h in &members {
            class_of[u.mul_unchecked(h).index() as usize] = cls;
        }
        reps.push(u);
    }
    Ok(UnitQuotient {
        p,
        m,
        subgroup,
        reps,
        class_of,
    })
}
