//! Semidirect products `ℰ = M ⋊ C_{p²}`: isomorphism, profinite
//! isomorphism, and the size of the profinite genus, computed both by the
//! closed formulas and by counting `G(p²)`-orbits on the genus of `M`.

use serde::Serialize;

use crate::abelian::{burnside_count, enumerate_diagonal_count, GroupElement};
use crate::error::{Error, Result};
use crate::galois;
use crate::iso::{self, IsoInvariants};
use crate::lattice::{Faithfulness, LatticeDescriptor};

/// The group `M ⋊ C_{p²}` with the action recorded in `module`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SemidirectDescriptor {
    pub module: LatticeDescriptor,
}

impl SemidirectDescriptor {
    pub fn new(module: LatticeDescriptor) -> Self {
        SemidirectDescriptor { module }
    }

    pub fn is_faithful(&self) -> bool {
        self.module.faithfulness() == Faithfulness::Faithful
    }

    fn require_faithful(&self) -> Result<()> {
        if self.is_faithful() {
            Ok(())
        } else {
            Err(Error::NotFaithful)
        }
    }
}

/// `ℰ ≅ ℰ'` iff `M ≅ (M')^β` for some `β`; stated for faithful actions only.
pub fn group_isomorphic(e1: &SemidirectDescriptor, e2: &SemidirectDescriptor) -> Result<bool> {
    e1.require_faithful()?;
    e2.require_faithful()?;
    Ok(galois::twisted_isomorphic(&e1.module, &e2.module)?.is_some())
}

/// Profinite completions agree iff the modules lie in the same genus.
pub fn profinite_isomorphic(e1: &SemidirectDescriptor, e2: &SemidirectDescriptor) -> Result<bool> {
    e1.require_faithful()?;
    e2.require_faithful()?;
    iso::same_genus(&e1.module, &e2.module)
}

/// Which closed formula produced a count.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum CaseTag {
    SoCs,
    CsBsAbsorption,
    SemAbsorcaoSemD,
    MaisSimples,
    ComBC,
    Ultimao,
    NonFaithfulNontrivial,
    TrivialModule,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ClosedForm {
    pub value: u128,
    pub case: CaseTag,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GenusReport {
    pub closed_form: Option<ClosedForm>,
    pub enumeration: Option<u128>,
    pub agree: Option<bool>,
    /// `(lower, upper)` from the general inequality, for faithful modules.
    pub bounds: Option<(u128, u128)>,
    pub within_bounds: Option<bool>,
    pub notes: Vec<String>,
}

/// Which coordinates vary across the genus of `d`.
struct GenusShape {
    r_classes: bool,
    s_classes: bool,
    units: Option<usize>,
    sign: bool,
}

fn genus_shape(d: &LatticeDescriptor) -> GenusShape {
    let n = d.counts();
    GenusShape {
        r_classes: d.summands().iter().any(|s| s.r_class().is_some()),
        s_classes: d.summands().iter().any(|s| s.s_class().is_some()),
        units: (iso::u0_class_applies(d) && n.ext_total() > 0).then(|| d.t() as usize),
        sign: iso::quad_char_applies(d) && n.c + n.d > 0,
    }
}

fn check_size(sizes: &[usize], limit: usize) -> Result<()> {
    let total: u128 = sizes.iter().map(|&s| s as u128).product();
    if total > limit as u128 {
        return Err(Error::TooLarge { size: total, limit });
    }
    Ok(())
}

/// Every invariant tuple realized in the genus of `d`.
///
/// A class coordinate varies only if some summand carries an ideal of that
/// kind, the `U_t` coordinate only if some B–F summand carries a unit, and
/// the sign only if a C or D summand can flip it.
pub fn enumerate_genus(d: &LatticeDescriptor) -> Result<Vec<IsoInvariants>> {
    let ctx = d.context();
    let limit = ctx.limit();
    let base = iso::invariants_of(d)?;
    let shape = genus_shape(d);
    let classes = ctx.classes();
    let r_vals = if shape.r_classes {
        classes.h_p.target().elements(limit)?
    } else {
        vec![base.r_class.clone()]
    };
    let s_vals = if shape.s_classes {
        classes.h_p2.target().elements(limit)?
    } else {
        vec![base.s_class.clone()]
    };
    let u_vals = match shape.units {
        Some(t) => ctx.quotient(t)?.reps().iter().cloned().map(Some).collect(),
        None => vec![base.u0_class.clone()],
    };
    let q_vals = if shape.sign {
        vec![Some(1), Some(-1)]
    } else {
        vec![base.quad_char]
    };
    check_size(&[r_vals.len(), s_vals.len(), u_vals.len(), q_vals.len()], limit)?;
    let mut out = Vec::new();
    for r in &r_vals {
        for s in &s_vals {
            for u in &u_vals {
                for q in &q_vals {
                    out.push(IsoInvariants {
                        padic: base.padic.clone(),
                        r_class: r.clone(),
                        s_class: s.clone(),
                        u0_class: u.clone(),
                        quad_char: *q,
                    });
                }
            }
        }
    }
    Ok(out)
}

/// Number of `G(p²)`-orbits on the genus of `d`, acting diagonally on the
/// class coordinates, on `U_t` through `β̄`, and trivially on the sign.
/// Direct enumeration is cross-checked against Burnside's lemma.
pub fn orbit_genus_count(d: &LatticeDescriptor) -> Result<u128> {
    let ctx = d.context();
    let limit = ctx.limit();
    let gamma = ctx.galois_generator();
    let p = ctx.p() as u64;
    let shape = genus_shape(d);
    let mut perms = Vec::new();
    if shape.r_classes {
        perms.push(ctx.classes().h_p.permutation(gamma % p, limit)?);
    }
    if shape.s_classes {
        perms.push(ctx.classes().h_p2.permutation(gamma, limit)?);
    }
    if let Some(t) = shape.units {
        perms.push(ctx.quotient(t)?.galois_permutation(gamma)?);
    }
    if shape.sign {
        perms.push(vec![0, 1]);
    }
    let enumerated = enumerate_diagonal_count(&perms, limit)?;
    let burnside = burnside_count(&perms, ctx.galois_order());
    if enumerated != burnside {
        return Err(Error::Internal(format!(
            "genus orbits: enumeration {enumerated}, Burnside {burnside}"
        )));
    }
    Ok(enumerated)
}

/// `|G(p) \ H(Z[ζ_p])|`.
pub fn h1_orbits(d: &LatticeDescriptor) -> Result<u128> {
    let ctx = d.context();
    let a = &ctx.classes().h_p;
    let perm = a.permutation(a.generator_residue(), ctx.limit())?;
    Ok(burnside_count(&[perm], a.acting_order()))
}

/// `|G(p²) \ H(Z[ζ_{p²}])|`.
pub fn h2_orbits(d: &LatticeDescriptor) -> Result<u128> {
    let ctx = d.context();
    let a = &ctx.classes().h_p2;
    let perm = a.permutation(a.generator_residue(), ctx.limit())?;
    Ok(burnside_count(&[perm], a.acting_order()))
}

/// `|G(p²) \ Ũ_t|` for `t = t(M)`.
pub fn unit_orbits(d: &LatticeDescriptor) -> Result<u128> {
    let ctx = d.context();
    let q = ctx.quotient(d.t() as usize)?;
    let perm = q.galois_permutation(ctx.galois_generator())?;
    Ok(burnside_count(&[perm], ctx.galois_order()))
}

/// The closed formula for `|𝔤(ℰ)|` matching the shape of `M`, or `None`
/// for shapes no formula covers.
pub fn closed_form_count(e: &SemidirectDescriptor) -> Result<Option<ClosedForm>> {
    let d = &e.module;
    let n = d.counts();
    let one_mod_four = crate::arith::is_one_mod_four(d.p());
    let found = |value, case| Ok(Some(ClosedForm { value, case }));
    match d.faithfulness() {
        Faithfulness::TrivialAction => return found(1, CaseTag::TrivialModule),
        Faithfulness::OrderP => return found(h1_orbits(d)?, CaseTag::NonFaithfulNontrivial),
        Faithfulness::Faithful => {}
    }
    let mq = n.ext_total();
    let r_side = n.ideal_r + n.ext_b >= 1;
    let s_side = n.ideal_s + n.ext_c >= 1;
    if !r_side && mq == 0 && s_side {
        return found(h2_orbits(d)?, CaseTag::SoCs);
    }
    let product = || -> Result<u128> { Ok(h1_orbits(d)? * h2_orbits(d)?) };
    let only_z_and_q = !r_side && !s_side && mq > 0;
    if !one_mod_four {
        let sides = [r_side, s_side, mq > 0].iter().filter(|&&x| x).count();
        if sides >= 2 {
            return found(product()?, CaseTag::CsBsAbsorption);
        }
        if only_z_and_q {
            return found(product()? * unit_orbits(d)?, CaseTag::SemAbsorcaoSemD);
        }
        return Ok(None);
    }
    if only_z_and_q {
        let v = product()? * unit_orbits(d)? * d.sigma() as u128;
        return found(v, CaseTag::MaisSimples);
    }
    let cd_e = n.c + n.d + n.e > 0;
    if n.z == 0
        && n.ext_b + n.ext_c == 0
        && n.b + n.f == 0
        && ((n.ideal_r >= 1 && (n.ideal_s >= 1 || cd_e)) || (n.ideal_r + n.ideal_s >= 1 && cd_e))
    {
        return found(product()? * d.sigma() as u128, CaseTag::ComBC);
    }
    if (n.ext_c >= 1 && n.ext_b >= 1)
        || (n.ideal_r + n.ideal_s >= 1 && (n.z + n.ext_b + n.ext_c >= 1 || n.b + n.f > 0))
    {
        return found(product()?, CaseTag::Ultimao);
    }
    Ok(None)
}

/// Runs both engines, compares them and checks the general bounds.
pub fn genus_report(e: &SemidirectDescriptor) -> GenusReport {
    let d = &e.module;
    let mut notes = Vec::new();
    let closed_form = match closed_form_count(e) {
        Ok(Some(c)) => Some(c),
        Ok(None) => {
            notes.push(format!("no closed formula covers the shape of {d}"));
            None
        }
        Err(err) => {
            notes.push(format!("closed form failed: {err}"));
            None
        }
    };
    let enumeration = match orbit_genus_count(d) {
        Ok(v) => Some(v),
        Err(err) => {
            notes.push(format!("enumeration failed: {err}"));
            None
        }
    };
    let agree = match (&closed_form, enumeration) {
        (Some(c), Some(v)) => Some(c.value == v),
        _ => None,
    };
    if agree == Some(false) {
        notes.push("closed form and enumeration disagree".into());
    }
    let mut bounds = None;
    let mut within_bounds = None;
    if e.is_faithful() {
        match (h1_orbits(d), h2_orbits(d), unit_orbits(d)) {
            (Ok(h1), Ok(h2), Ok(u)) => {
                let b = (h2, 2 * h1 * h2 * u);
                if let Some(v) = enumeration.or(closed_form.as_ref().map(|c| c.value)) {
                    within_bounds = Some(b.0 <= v && v <= b.1);
                    if within_bounds == Some(false) {
                        notes.push(format!("value {v} lies outside the bounds [{}, {}]", b.0, b.1));
                    }
                }
                bounds = Some(b);
            }
            (Err(err), _, _) | (_, Err(err), _) | (_, _, Err(err)) => {
                notes.push(format!("bounds unavailable: {err}"));
            }
        }
    }
    GenusReport {
        closed_form,
        enumeration,
        agree,
        bounds,
        within_bounds,
        notes,
    }
}

/// Representatives of the `G(p²)`-orbits on the genus, as invariant tuples.
pub fn genus_orbit_representatives(d: &LatticeDescriptor) -> Result<Vec<IsoInvariants>> {
    let ctx = d.context();
    let all = enumerate_genus(d)?;
    let classes = ctx.classes();
    let p = ctx.p() as u64;
    let shape = genus_shape(d);
    let mut seen = std::collections::HashSet::new();
    let mut reps = Vec::new();
    for inv in all {
        if seen.contains(&inv) {
            continue;
        }
        for k in ctx.galois_elements() {
            let r_class: GroupElement = classes.h_p.apply_action(k % p, &inv.r_class)?;
            let s_class = classes.h_p2.apply_action(k, &inv.s_class)?;
            let u0_class = match (&inv.u0_class, shape.units) {
                (Some(u), Some(t)) => {
                    let q = ctx.quotient(t)?;
                    Some(q.canonical(&crate::modring::galois_on_unit(k, u)?)?)
                }
                (u, _) => u.clone(),
            };
            seen.insert(IsoInvariants {
                padic: inv.padic.clone(),
                r_class,
                s_class,
                u0_class,
                quad_char: inv.quad_char,
            });
        }
        reps.push(inv);
    }
    Ok(reps)
}
