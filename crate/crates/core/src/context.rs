use std::sync::{Arc, OnceLock};

use crate::abelian::DEFAULT_ENUMERATION_LIMIT;
use crate::arith;
use crate::classdata::{self, ClassData};
use crate::error::Result;
use crate::modring::{compute_um, UnitQuotient};

/// The fixed data every descriptor over a prime `p` shares: class groups,
/// the non-residue `n₀`, the chosen generator of `(Z/p²)^*`, and lazily
/// computed unit quotients `U_0, ..., U_p`.
#[derive(Debug)]
pub struct Context {
    classes: ClassData,
    n0: Option<u32>,
    gamma: u64,
    limit: usize,
    quotients: Vec<OnceLock<Result<UnitQuotient>>>,
}

impl Context {
    pub fn new(classes: ClassData) -> Arc<Self> {
        Self::with_limit(classes, DEFAULT_ENUMERATION_LIMIT)
    }

    pub fn with_limit(classes: ClassData, limit: usize) -> Arc<Self> {
        let p = classes.p;
        Arc::new(Context {
            n0: arith::smallest_nonresidue(p as u64).map(|n| n as u32),
            gamma: arith::primitive_root(p as u64, 2),
            limit,
            quotients: (0..=p).map(|_| OnceLock::new()).collect(),
            classes,
        })
    }

    pub fn builtin(p: u32) -> Result<Arc<Self>> {
        Ok(Self::new(classdata::builtin(p)?))
    }

    pub fn p(&self) -> u32 {
        self.classes.p
    }

    pub fn classes(&self) -> &ClassData {
        &self.classes
    }

    /// Smallest positive quadratic non-residue mod `p` (odd `p` only).
    pub fn n0(&self) -> Option<u32> {
        self.n0
    }

    /// Generator of `(Z/p²)^*` through which every Galois element is a power.
    pub fn galois_generator(&self) -> u64 {
        self.gamma
    }

    /// `|G(p²)| = p(p-1)`.
    pub fn galois_order(&self) -> u64 {
        let p = self.p() as u64;
        p * (p - 1)
    }

    /// Residues `1 ≤ k < p²` prime to `p`, in increasing order.
    pub fn galois_elements(&self) -> Vec<u64> {
        let p = self.p() as u64;
        (1..p * p).filter(|k| k % p != 0).collect()
    }

    pub fn limit(&self) -> usize {
        self.limit
    }

    pub fn quotient(&self, m: usize) -> Result<&UnitQuotient> {
        let p = self.p();
        if m > p as usize {
            return Err(crate::error::Error::OutOfRange(format!(
                "U_m needs m <= p, got {m}"
            )));
        }
        self.quotients[m]
            .get_or_init(|| compute_um(p, m, &self.classes.extra_units, self.limit))
            .as_ref()
            .map_err(Clone::clone)
    }

    pub fn same_as(&self, other: &Context) -> bool {
        std::ptr::eq(self, other) || self.classes == other.classes
    }
}
