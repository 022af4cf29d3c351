//! Descriptors of `Z C_{p²}`-lattices as direct sums of indecomposables,
//! and the data read off a decomposition: rank, genus vector, `u_0`,
//! `r_1`, `r_2`, `t`, `Σ_M`, faithfulness and ideal classes.
//!
//! The indecomposables are `Z`, an `R`-ideal `𝔟`, an `S`-ideal `𝔠`, the
//! extensions `E(𝔟) = (Z, 𝔟; 1)`, `E(𝔠) = (Z, 𝔠; 1)`, and five families of
//! extensions of `𝔠` by `E(𝔟)`, `Z ⊕ E(𝔟)`, `𝔟` or `Z ⊕ 𝔟` with class
//! `λ^r u` (types B–F), where `R = Z[ζ_p]` and `S = Z[ζ_{p²}]`.

mod parser;

use std::fmt;
use std::sync::Arc;

use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use crate::abelian::{AbGroup, GroupElement};
use crate::arith;
use crate::context::Context;
use crate::error::{Error, Result};
use crate::modring::PolyMod;

pub use parser::parse;

/// The five extension families.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum ExtKind {
    /// `(E(𝔟), 𝔠; λ^r u)`, `0 ≤ r ≤ p-1`, `u ∈ Ũ_{p-r}`.
    B,
    /// `(Z ⊕ E(𝔟), 𝔠; 1 ⊕ λ^r u)`, `1 ≤ r ≤ p-2`, `u ∈ Ũ_{p-1-r}`.
    C,
    /// As C with `u n₀`; only for `p ≡ 1 (mod 4)`.
    D,
    /// `(𝔟, 𝔠; λ^r u)`, `0 ≤ r ≤ p-2`, `u ∈ Ũ_{p-1-r}`.
    E,
    /// `(Z ⊕ 𝔟, 𝔠; 1 ⊕ λ^r u)`, `0 ≤ r ≤ p-2`, `u ∈ Ũ_{p-1-r}`.
    F,
}

impl ExtKind {
    pub const ALL: [ExtKind; 5] = [ExtKind::B, ExtKind::C, ExtKind::D, ExtKind::E, ExtKind::F];

    pub fn letter(self) -> char {
        match self {
            ExtKind::B => 'B',
            ExtKind::C => 'C',
            ExtKind::D => 'D',
            ExtKind::E => 'E',
            ExtKind::F => 'F',
        }
    }

    /// Admissible exponents `r` at prime `p` (possibly empty).
    pub fn r_range(self, p: u32) -> std::ops::RangeInclusive<i64> {
        let p = p as i64;
        match self {
            ExtKind::B => 0..=p - 1,
            ExtKind::C | ExtKind::D => 1..=p - 2,
            ExtKind::E | ExtKind::F => 0..=p - 2,
        }
    }

    pub fn exists_at(self, p: u32) -> bool {
        !self.r_range(p).is_empty() && (self != ExtKind::D || arith::is_one_mod_four(p))
    }

    /// The `m` with `u ∈ Ũ_m`.
    pub fn unit_degree(self, p: u32, r: u32) -> usize {
        match self {
            ExtKind::B => (p - r) as usize,
            _ => (p - 1 - r) as usize,
        }
    }

    /// Whether the extension has a trivial `Z` summand on the left.
    pub fn has_z(self) -> bool {
        matches!(self, ExtKind::C | ExtKind::D | ExtKind::F)
    }
}

/// One indecomposable summand.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(tag = "type")]
pub enum Summand {
    Z,
    IdealR { b: GroupElement },
    IdealS { c: GroupElement },
    ExtB { b: GroupElement },
    ExtC { c: GroupElement },
    Ext {
        kind: ExtKind,
        b: GroupElement,
        c: GroupElement,
        r: u32,
        u: PolyMod,
    },
}

impl Summand {
    pub fn ext(kind: ExtKind, b: GroupElement, c: GroupElement, r: u32, u: PolyMod) -> Self {
        Summand::Ext { kind, b, c, r, u }
    }

    pub fn kind(&self) -> Option<ExtKind> {
        match self {
            Summand::Ext { kind, .. } => Some(*kind),
            _ => None,
        }
    }

    pub fn r_class(&self) -> Option<&GroupElement> {
        match self {
            Summand::IdealR { b } | Summand::ExtB { b } | Summand::Ext { b, .. } => Some(b),
            _ => None,
        }
    }

    pub fn s_class(&self) -> Option<&GroupElement> {
        match self {
            Summand::IdealS { c } | Summand::ExtC { c } | Summand::Ext { c, .. } => Some(c),
            _ => None,
        }
    }

    /// Z-rank of the summand.
    pub fn rank(&self, p: u32) -> usize {
        let p = p as usize;
        match self {
            Summand::Z => 1,
            Summand::IdealR { .. } => p - 1,
            Summand::IdealS { .. } => p * (p - 1),
            Summand::ExtB { .. } => p,
            Summand::ExtC { .. } => p * (p - 1) + 1,
            Summand::Ext { kind, .. } => match kind {
                ExtKind::B | ExtKind::F => p * p,
                ExtKind::C | ExtKind::D => p * p + 1,
                ExtKind::E => p * p - 1,
            },
        }
    }

    fn validate(&self, ctx: &Context) -> Result<()> {
        let p = ctx.p();
        let classes = ctx.classes();
        let check_class = |g: &AbGroup, x: &GroupElement, which: &str| {
            if g.contains(x) {
                Ok(())
            } else {
                Err(Error::InvalidDescriptor(format!(
                    "{which}-class {x} is not an element of the class group"
                )))
            }
        };
        if let Some(b) = self.r_class() {
            check_class(classes.h_p.target(), b, "R")?;
        }
        if let Some(c) = self.s_class() {
            check_class(classes.h_p2.target(), c, "S")?;
        }
        if let Summand::Ext { kind, r, u, .. } = self {
            if *kind == ExtKind::D && !arith::is_one_mod_four(p) {
                return Err(Error::InvalidDescriptor(format!(
                    "type D needs p = 1 mod 4, got p = {p}"
                )));
            }
            if !kind.r_range(p).contains(&(*r as i64)) {
                return Err(Error::InvalidDescriptor(format!(
                    "r = {r} is out of range {:?} for type {}",
                    kind.r_range(p),
                    kind.letter()
                )));
            }
            let m = kind.unit_degree(p, *r);
            if u.p() != p || u.m() != m {
                return Err(Error::InvalidDescriptor(format!(
                    "unit {u} must live in F_{p}[l]/(l^{m})"
                )));
            }
            if !ctx.quotient(m)?.is_canonical(u) {
                return Err(Error::InvalidDescriptor(format!(
                    "unit {u} is not the canonical representative of its class in U_{m}"
                )));
            }
        }
        Ok(())
    }

    /// Replaces the unit by its canonical representative.
    fn canonicalize(self, ctx: &Context) -> Result<Self> {
        match self {
            Summand::Ext { kind, b, c, r, u } => {
                let p = ctx.p();
                if !kind.r_range(p).contains(&(r as i64)) {
                    return Err(Error::InvalidDescriptor(format!(
                        "r = {r} is out of range for type {}",
                        kind.letter()
                    )));
                }
                let m = kind.unit_degree(p, r);
                let u = ctx.quotient(m)?.canonical(&u.resize(m))?;
                Ok(Summand::Ext { kind, b, c, r, u })
            }
            s => Ok(s),
        }
    }

    pub fn render(&self) -> String {
        match self {
            Summand::Z => "Z".into(),
            Summand::IdealR { b } => format!("b({b})"),
            Summand::IdealS { c } => format!("c({c})"),
            Summand::ExtB { b } => format!("Eb({b})"),
            Summand::ExtC { c } => format!("Ec({c})"),
            Summand::Ext { kind, b, c, r, u } => {
                if u.is_one() {
                    format!("{}({b},{c};{r})", kind.letter())
                } else {
                    format!("{}({b},{c};{r},{u})", kind.letter())
                }
            }
        }
    }
}

/// How `C_{p²}` acts on the lattice.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Faithfulness {
    TrivialAction,
    OrderP,
    Faithful,
}

/// The parameters `(a,b,c,d,e; β,γ,δ,ε,η)` determining the genus.
///
/// `b` and `c` count the ideals `𝔟`, `𝔠`; `d` and `e` are cumulative, so
/// `d - b` counts `E(𝔟)` and `e - c` counts `E(𝔠)`. `gamma[i]`, `delta[i]`
/// are indexed by `r = i + 1`; the other vectors by `r = i`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct GenusVector {
    pub a: usize,
    pub b: usize,
    pub c: usize,
    pub d: usize,
    pub e: usize,
    pub beta: Vec<usize>,
    pub gamma: Vec<usize>,
    pub delta: Vec<usize>,
    pub epsilon: Vec<usize>,
    pub eta: Vec<usize>,
}

/// Summand counts by type.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct TypeCounts {
    pub z: usize,
    pub ideal_r: usize,
    pub ideal_s: usize,
    pub ext_b: usize,
    pub ext_c: usize,
    pub b: usize,
    pub c: usize,
    pub d: usize,
    pub e: usize,
    pub f: usize,
}

impl TypeCounts {
    /// Number of summands of types B–F.
    pub fn ext_total(&self) -> usize {
        self.b + self.c + self.d + self.e + self.f
    }
}

/// A finite direct sum of indecomposables over a shared [`Context`].
///
/// Summands are kept sorted, so equality is multiset equality.
#[derive(Clone, Debug)]
pub struct LatticeDescriptor {
    ctx: Arc<Context>,
    summands: Vec<Summand>,
}

impl PartialEq for LatticeDescriptor {
    fn eq(&self, other: &Self) -> bool {
        self.ctx.same_as(&other.ctx) && self.summands == other.summands
    }
}

impl Eq for LatticeDescriptor {}

impl Serialize for LatticeDescriptor {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("LatticeDescriptor", 3)?;
        st.serialize_field("p", &self.p())?;
        st.serialize_field("text", &self.render())?;
        st.serialize_field("summands", &self.summands)?;
        st.end()
    }
}

impl fmt::Display for LatticeDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

impl LatticeDescriptor {
    /// Validates every summand strictly: units must already be canonical.
    pub fn new(ctx: Arc<Context>, mut summands: Vec<Summand>) -> Result<Self> {
        for s in &summands {
            s.validate(&ctx)?;
        }
        summands.sort();
        Ok(LatticeDescriptor { ctx, summands })
    }

    /// Like [`LatticeDescriptor::new`] but replaces units by their canonical
    /// representatives first.
    pub fn new_lenient(ctx: Arc<Context>, summands: Vec<Summand>) -> Result<Self> {
        let summands = summands
            .into_iter()
            .map(|s| s.canonicalize(&ctx))
            .collect::<Result<Vec<_>>>()?;
        Self::new(ctx, summands)
    }

    pub fn zero(ctx: Arc<Context>) -> Self {
        LatticeDescriptor {
            ctx,
            summands: Vec::new(),
        }
    }

    pub fn context(&self) -> &Arc<Context> {
        &self.ctx
    }

    pub fn p(&self) -> u32 {
        self.ctx.p()
    }

    pub fn summands(&self) -> &[Summand] {
        &self.summands
    }

    pub fn is_zero(&self) -> bool {
        self.summands.is_empty()
    }

    pub(crate) fn from_sorted_parts(ctx: Arc<Context>, mut summands: Vec<Summand>) -> Self {
        summands.sort();
        LatticeDescriptor { ctx, summands }
    }

    pub fn check_same_context(&self, other: &Self) -> Result<()> {
        if self.ctx.same_as(&other.ctx) {
            Ok(())
        } else {
            Err(Error::ContextMismatch)
        }
    }

    pub fn direct_sum(&self, other: &Self) -> Result<Self> {
        self.check_same_context(other)?;
        let mut s = self.summands.clone();
        s.extend(other.summands.iter().cloned());
        Ok(Self::from_sorted_parts(self.ctx.clone(), s))
    }

    pub fn render(&self) -> String {
        if self.summands.is_empty() {
            return "0".into();
        }
        self.summands
            .iter()
            .map(Summand::render)
            .collect::<Vec<_>>()
            .join(" + ")
    }

    pub fn rank(&self) -> usize {
        self.summands.iter().map(|s| s.rank(self.p())).sum()
    }

    pub fn counts(&self) -> TypeCounts {
        let mut n = TypeCounts::default();
        for s in &self.summands {
            match s {
                Summand::Z => n.z += 1,
                Summand::IdealR { .. } => n.ideal_r += 1,
                Summand::IdealS { .. } => n.ideal_s += 1,
                Summand::ExtB { .. } => n.ext_b += 1,
                Summand::ExtC { .. } => n.ext_c += 1,
                Summand::Ext { kind, .. } => match kind {
                    ExtKind::B => n.b += 1,
                    ExtKind::C => n.c += 1,
                    ExtKind::D => n.d += 1,
                    ExtKind::E => n.e += 1,
                    ExtKind::F => n.f += 1,
                },
            }
        }
        n
    }

    pub fn genus_vector(&self) -> GenusVector {
        let p = self.p() as usize;
        let n = self.counts();
        let mut gv = GenusVector {
            a: n.z,
            b: n.ideal_r,
            c: n.ideal_s,
            d: n.ideal_r + n.ext_b,
            e: n.ideal_s + n.ext_c,
            beta: vec![0; p],
            gamma: vec![0; p.saturating_sub(2)],
            delta: vec![0; p.saturating_sub(2)],
            epsilon: vec![0; p - 1],
            eta: vec![0; p - 1],
        };
        for s in &self.summands {
            if let Summand::Ext { kind, r, .. } = s {
                let r = *r as usize;
                match kind {
                    ExtKind::B => gv.beta[r] += 1,
                    ExtKind::C => gv.gamma[r - 1] += 1,
                    ExtKind::D => gv.delta[r - 1] += 1,
                    ExtKind::E => gv.epsilon[r] += 1,
                    ExtKind::F => gv.eta[r] += 1,
                }
            }
        }
        gv
    }

    /// Product in `u(F_p[λ]/(λ^p))` of the units of the B–F summands, each
    /// zero-padded to length `p`, with an extra `n₀` for every type D summand.
    pub fn u0(&self) -> PolyMod {
        let p = self.p();
        let mut acc = PolyMod::one(p, p as usize);
        for s in &self.summands {
            if let Summand::Ext { kind, u, .. } = s {
                acc = acc.mul_unchecked(&u.resize(p as usize));
                if *kind == ExtKind::D {
                    let n0 = self.ctx.n0().expect("type D only exists for odd p");
                    acc = acc.mul_unchecked(&PolyMod::constant(p, p as usize, n0 as i64));
                }
            }
        }
        acc
    }

    /// Largest `r` among type B summands, 0 if none.
    pub fn r1(&self) -> u32 {
        self.summands
            .iter()
            .filter_map(|s| match s {
                Summand::Ext { kind: ExtKind::B, r, .. } => Some(*r),
                _ => None,
            })
            .max()
            .unwrap_or(0)
    }

    /// Largest `r` among type C–F summands, 0 if none.
    pub fn r2(&self) -> u32 {
        self.summands
            .iter()
            .filter_map(|s| match s {
                Summand::Ext { kind, r, .. } if *kind != ExtKind::B => Some(*r),
                _ => None,
            })
            .max()
            .unwrap_or(0)
    }

    /// `t = p - 1 - max(r_2, r_1 - 1)`, except `t = p` when the lattice is
    /// `Z^a` plus at least one type B summand, all with `r = 0`.
    pub fn t(&self) -> u32 {
        let p = self.p();
        let only_b0 = self.summands.iter().all(|s| {
            matches!(s, Summand::Z | Summand::Ext { kind: ExtKind::B, r: 0, .. })
        });
        if only_b0 && self.counts().b >= 1 {
            return p;
        }
        let m = (self.r2() as i64).max(self.r1() as i64 - 1);
        (p as i64 - 1 - m) as u32
    }

    pub fn sigma(&self) -> u32 {
        if !arith::is_one_mod_four(self.p()) {
            return 1;
        }
        let n = self.counts();
        let has_cd = n.c + n.d >= 1;
        let blocked = n.z + n.ext_b + n.ext_c + n.b + n.f > 0;
        if has_cd && !blocked {
            2
        } else {
            1
        }
    }

    pub fn faithfulness(&self) -> Faithfulness {
        let n = self.counts();
        if self.summands.iter().all(|s| matches!(s, Summand::Z)) {
            Faithfulness::TrivialAction
        } else if n.ideal_s + n.ext_c + n.ext_total() == 0 {
            Faithfulness::OrderP
        } else {
            Faithfulness::Faithful
        }
    }

    /// Sums of all `𝔟`-classes and all `𝔠`-classes.
    pub fn ideal_classes(&self) -> (GroupElement, GroupElement) {
        let classes = self.ctx.classes();
        let hp = classes.h_p.target();
        let hp2 = classes.h_p2.target();
        let mut b = hp.identity();
        let mut c = hp2.identity();
        for s in &self.summands {
            if let Some(x) = s.r_class() {
                b = hp.add(&b, x).expect("validated class");
            }
            if let Some(x) = s.s_class() {
                c = hp2.add(&c, x).expect("validated class");
            }
        }
        (b, c)
    }

    pub fn has_trivial_classes(&self) -> bool {
        self.summands.iter().all(|s| {
            s.r_class().is_none_or(GroupElement::is_identity)
                && s.s_class().is_none_or(GroupElement::is_identity)
        })
    }
}
