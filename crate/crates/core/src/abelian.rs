//! Finite abelian groups with an action of a cyclic group of units, plus
//! orbit counting by enumeration and by Burnside's lemma.
//!
//! Class groups enter only through this module: an [`AbGroup`] in Smith form
//! and a [`CyclicAction`] giving how a generator of `(Z/p^i)^*` moves
//! exponent vectors.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::arith;
use crate::error::{Error, Result};

/// Default cap on the number of elements enumerated anywhere in the crate.
pub const DEFAULT_ENUMERATION_LIMIT: usize = 1_000_000;

/// `Z/d_1 ⊕ ... ⊕ Z/d_k` with `d_1 | d_2 | ... | d_k`, all `d_i ≥ 2`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct AbGroup {
    invariant_factors: Vec<u64>,
}

/// Exponent vector of an element, one residue per invariant factor.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct GroupElement(pub Vec<u64>);

impl GroupElement {
    pub fn is_identity(&self) -> bool {
        self.0.iter().all(|&x| x == 0)
    }
}

impl fmt::Display for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self.0.iter().map(u64::to_string).collect();
        write!(f, "{}", parts.join(":"))
    }
}

impl AbGroup {
    pub fn new(invariant_factors: Vec<u64>) -> Result<Self> {
        for (i, &d) in invariant_factors.iter().enumerate() {
            if d < 2 {
                return Err(Error::OutOfRange(format!("invariant factor {d} < 2")));
            }
            if let Some(&next) = invariant_factors.get(i + 1) {
                if next % d != 0 {
                    return Err(Error::OutOfRange(format!(
                        "invariant factors must divide each other: {d} does not divide {next}"
                    )));
                }
            }
        }
        Ok(AbGroup { invariant_factors })
    }

    pub fn trivial() -> Self {
        AbGroup::default()
    }

    pub fn cyclic(n: u64) -> Result<Self> {
        if n == 1 {
            Ok(Self::trivial())
        } else {
            Self::new(vec![n])
        }
    }

    pub fn invariant_factors(&self) -> &[u64] {
        &self.invariant_factors
    }

    pub fn rank(&self) -> usize {
        self.invariant_factors.len()
    }

    pub fn order(&self) -> u128 {
        self.invariant_factors.iter().map(|&d| d as u128).product()
    }

    pub fn is_trivial(&self) -> bool {
        self.invariant_factors.is_empty()
    }

    pub fn identity(&self) -> GroupElement {
        GroupElement(vec![0; self.rank()])
    }

    pub fn contains(&self, x: &GroupElement) -> bool {
        x.0.len() == self.rank() && x.0.iter().zip(&self.invariant_factors).all(|(a, d)| a < d)
    }

    fn check(&self, x: &GroupElement) -> Result<()> {
        if x.0.len() != self.rank() {
            return Err(Error::OutOfRange(format!(
                "element {x} has {} coordinates, group has {}",
                x.0.len(),
                self.rank()
            )));
        }
        if !self.contains(x) {
            return Err(Error::OutOfRange(format!("element {x} is not reduced")));
        }
        Ok(())
    }

    pub fn add(&self, x: &GroupElement, y: &GroupElement) -> Result<GroupElement> {
        self.check(x)?;
        self.check(y)?;
        Ok(GroupElement(
            x.0.iter()
                .zip(&y.0)
                .zip(&self.invariant_factors)
                .map(|((a, b), d)| (a + b) % d)
                .collect(),
        ))
    }

    pub fn neg(&self, x: &GroupElement) -> Result<GroupElement> {
        self.check(x)?;
        Ok(GroupElement(
            x.0.iter()
                .zip(&self.invariant_factors)
                .map(|(a, d)| (d - a) % d)
                .collect(),
        ))
    }

    /// Mixed-radix position of `x` in [`AbGroup::elements`].
    pub fn index_of(&self, x: &GroupElement) -> usize {
        x.0.iter()
            .zip(&self.invariant_factors)
            .fold(0usize, |acc, (a, d)| acc * *d as usize + *a as usize)
    }

    pub fn element_at(&self, mut idx: usize) -> GroupElement {
        let mut v = vec![0; self.rank()];
        for j in (0..self.rank()).rev() {
            let d = self.invariant_factors[j] as usize;
            v[j] = (idx % d) as u64;
            idx /= d;
        }
        GroupElement(v)
    }

    pub fn elements(&self, limit: usize) -> Result<Vec<GroupElement>> {
        let n = self.order();
        if n > limit as u128 {
            return Err(Error::TooLarge { size: n, limit });
        }
        Ok((0..n as usize).map(|i| self.element_at(i)).collect())
    }
}

pub fn element_add(g: &AbGroup, x: &GroupElement, y: &GroupElement) -> Result<GroupElement> {
    g.add(x, y)
}

/// Action of `(Z/modulus)^*` (cyclic, generated by `generator_residue`) on an
/// abelian group, given by the integer matrix of the generator's action on
/// exponent vectors (column convention: `x ↦ A x`).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CyclicAction {
    target: AbGroup,
    modulus: u64,
    acting_order: u64,
    generator_residue: u64,
    generator_matrix: Vec<Vec<i64>>,
}

impl CyclicAction {
    /// Validates the matrix: square, well defined on the quotient,
    /// injective, and of order dividing `φ(modulus)`.
    pub fn new(
        target: AbGroup,
        modulus: u64,
        generator_residue: u64,
        generator_matrix: Vec<Vec<i64>>,
    ) -> Result<Self> {
        let n = target.rank();
        if generator_matrix.len() != n || generator_matrix.iter().any(|row| row.len() != n) {
            return Err(Error::OutOfRange(format!(
                "generator matrix must be {n}x{n}"
            )));
        }
        let acting_order = (1..=modulus)
            .filter(|k| num_integer::Integer::gcd(k, &modulus) == 1)
            .count() as u64;
        if arith::mult_order(generator_residue, modulus) != Some(acting_order) {
            return Err(Error::OutOfRange(format!(
                "{generator_residue} does not generate (Z/{modulus})^*"
            )));
        }
        let d = target.invariant_factors();
        for j in 0..n {
            for i in 0..n {
                if (generator_matrix[i][j] as i128 * d[j] as i128).rem_euclid(d[i] as i128) != 0 {
                    return Err(Error::OutOfRange(format!(
                        "generator matrix is not well defined on the group (entry {i},{j})"
                    )));
                }
            }
        }
        let action = CyclicAction {
            target,
            modulus,
            acting_order,
            generator_residue,
            generator_matrix,
        };
        if action.target.order() <= DEFAULT_ENUMERATION_LIMIT as u128 {
            let kernel_nontrivial = (1..action.target.order() as usize)
                .map(|i| action.target.element_at(i))
                .any(|x| action.apply_generator(&x).is_identity());
            if kernel_nontrivial {
                return Err(Error::OutOfRange(
                    "generator matrix is singular on the group".into(),
                ));
            }
        }
        for j in 0..n {
            let mut e = action.target.identity();
            e.0[j] = 1;
            let mut x = e.clone();
            for _ in 0..acting_order {
                x = action.apply_generator(&x);
            }
            if x != e {
                return Err(Error::OutOfRange(format!(
                    "generator matrix does not have order dividing {acting_order}"
                )));
            }
        }
        Ok(action)
    }

    /// The identity action of `(Z/modulus)^*` on the trivial group.
    pub fn trivial(modulus: u64) -> Self {
        let (p, i) = prime_power(modulus);
        CyclicAction::new(
            AbGroup::trivial(),
            modulus,
            arith::primitive_root(p, i),
            vec![],
        )
        .expect("trivial action is valid")
    }

    pub fn target(&self) -> &AbGroup {
        &self.target
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn acting_order(&self) -> u64 {
        self.acting_order
    }

    pub fn generator_residue(&self) -> u64 {
        self.generator_residue
    }

    pub fn generator_matrix(&self) -> &[Vec<i64>] {
        &self.generator_matrix
    }

    pub fn apply_generator(&self, x: &GroupElement) -> GroupElement {
        let d = self.target.invariant_factors();
        GroupElement(
            (0..self.target.rank())
                .map(|i| {
                    let s: i128 = (0..self.target.rank())
                        .map(|j| self.generator_matrix[i][j] as i128 * x.0[j] as i128)
                        .sum();
                    s.rem_euclid(d[i] as i128) as u64
                })
                .collect(),
        )
    }

    /// Exponent `d` with `generator_residue^d ≡ k`.
    pub fn exponent_of(&self, k: u64) -> Result<u64> {
        if num_integer::Integer::gcd(&k, &self.modulus) != 1 {
            return Err(Error::NotCoprime(k, self.modulus as u32));
        }
        arith::discrete_log(self.generator_residue, k, self.modulus, self.acting_order).ok_or_else(
            || Error::Internal(format!("{k} is not a power of {}", self.generator_residue)),
        )
    }

    pub fn apply_action(&self, k: u64, x: &GroupElement) -> Result<GroupElement> {
        self.target.check(x)?;
        let d = self.exponent_of(k)?;
        let mut y = x.clone();
        for _ in 0..d {
            y = self.apply_generator(&y);
        }
        Ok(y)
    }

    /// Permutation of [`AbGroup::elements`] induced by `k`.
    pub fn permutation(&self, k: u64, limit: usize) -> Result<Vec<usize>> {
        let d = self.exponent_of(k)?;
        let elems = self.target.elements(limit)?;
        let step: Vec<usize> = elems
            .iter()
            .map(|x| self.target.index_of(&self.apply_generator(x)))
            .collect();
        let mut perm: Vec<usize> = (0..elems.len()).collect();
        for _ in 0..d {
            perm = perm.iter().map(|&i| step[i]).collect();
        }
        Ok(perm)
    }

    pub fn orbits(&self, limit: usize) -> Result<Vec<Vec<GroupElement>>> {
        orbits(self, limit)
    }
}

fn prime_power(modulus: u64) -> (u64, u32) {
    let p = (2..=modulus).find(|d| modulus.is_multiple_of(*d)).unwrap_or(1);
    let mut i = 0;
    let mut n = modulus;
    while n > 1 && n.is_multiple_of(p) {
        n /= p;
        i += 1;
    }
    (p, i)
}

pub fn apply_action(a: &CyclicAction, k: u64, x: &GroupElement) -> Result<GroupElement> {
    a.apply_action(k, x)
}

/// Orbits of the full acting group, cross-checked against Burnside's count.
pub fn orbits(a: &CyclicAction, limit: usize) -> Result<Vec<Vec<GroupElement>>> {
    let perm = a.permutation(a.generator_residue, limit)?;
    let mut seen = vec![false; perm.len()];
    let mut out = Vec::new();
    for start in 0..perm.len() {
        if seen[start] {
            continue;
        }
        let mut orbit = Vec::new();
        let mut i = start;
        while !seen[i] {
            seen[i] = true;
            orbit.push(a.target.element_at(i));
            i = perm[i];
        }
        out.push(orbit);
    }
    let burnside = burnside_count(&[perm], a.acting_order);
    if burnside != out.len() as u128 {
        return Err(Error::Internal(format!(
            "orbit enumeration found {} orbits, Burnside gives {burnside}",
            out.len()
        )));
    }
    Ok(out)
}

/// Cycle lengths of a permutation.
fn cycle_lengths(perm: &[usize]) -> Vec<u64> {
    let mut seen = vec![false; perm.len()];
    let mut out = Vec::new();
    for s in 0..perm.len() {
        let mut len = 0;
        let mut i = s;
        while !seen[i] {
            seen[i] = true;
            i = perm[i];
            len += 1;
        }
        if len > 0 {
            out.push(len);
        }
    }
    out
}

/// Burnside's lemma for a cyclic group of order `order` acting diagonally
/// on a product of sets, where `perms[i]` is the generator's permutation of
/// the i-th factor: `(1/order) Σ_j Π_i |Fix(σ_i^j)|`.
pub fn burnside_count(perms: &[Vec<usize>], order: u64) -> u128 {
    let cycles: Vec<Vec<u64>> = perms.iter().map(|p| cycle_lengths(p)).collect();
    let total: u128 = (0..order.max(1))
        .map(|j| {
            cycles
                .iter()
                .map(|cs| cs.iter().filter(|&&l| j % l == 0).map(|&l| l as u128).sum::<u128>())
                .product::<u128>()
        })
        .sum();
    total / order.max(1) as u128
}

/// Orbit count of the diagonal action by direct enumeration of the product.
pub fn enumerate_diagonal_count(perms: &[Vec<usize>], limit: usize) -> Result<u128> {
    let sizes: Vec<usize> = perms.iter().map(Vec::len).collect();
    let total: u128 = sizes.iter().map(|&s| s as u128).product();
    if total > limit as u128 {
        return Err(Error::TooLarge { size: total, limit });
    }
    let total = total as usize;
    let encode = |coords: &[usize]| coords.iter().zip(&sizes).fold(0usize, |acc, (c, s)| acc * s + c);
    let decode = |mut idx: usize| {
        let mut c = vec![0; sizes.len()];
        for j in (0..sizes.len()).rev() {
            c[j] = idx % sizes[j];
            idx /= sizes[j];
        }
        c
    };
    let mut seen = vec![false; total];
    let mut count = 0u128;
    for start in 0..total {
        if seen[start] {
            continue;
        }
        count += 1;
        let mut coords = decode(start);
        loop {
            let idx = encode(&coords);
            if seen[idx] {
                break;
            }
            seen[idx] = true;
            for (c, perm) in coords.iter_mut().zip(perms) {
                *c = perm[*c];
            }
        }
    }
    Ok(count)
}

/// Number of orbits of `(Z/modulus)^*`, generated by `gamma`, acting on
/// `Π actions × Π extras` diagonally; the `extras` are sets of the given
/// sizes with trivial action. Enumeration and Burnside must agree.
pub fn diagonal_orbits(
    gamma: u64,
    order: u64,
    actions: &[&CyclicAction],
    extras: &[usize],
    limit: usize,
) -> Result<u128> {
    let mut perms = actions
        .iter()
        .map(|a| a.permutation(gamma % a.modulus(), limit))
        .collect::<Result<Vec<_>>>()?;
    perms.extend(extras.iter().map(|&n| (0..n).collect::<Vec<_>>()));
    let enumerated = enumerate_diagonal_count(&perms, limit)?;
    let burnside = burnside_count(&perms, order);
    if enumerated != burnside {
        return Err(Error::Internal(format!(
            "diagonal enumeration found {enumerated} orbits, Burnside gives {burnside}"
        )));
    }
    Ok(enumerated)
}
