//! The `cp2genus` command line. [`run`] does all the work and returns the
//! exit code with captured output, so the binary is a thin shell.

use std::fmt::Write as _;
use std::path::PathBuf;
use std::sync::Arc;

use clap::{Parser, Subcommand};
use serde::Serialize;

use crate::abelian::DEFAULT_ENUMERATION_LIMIT;
use crate::classdata;
use crate::context::Context;
use crate::error::{Error, Result};
use crate::galois;
use crate::genus::{self, SemidirectDescriptor};
use crate::iso;
use crate::lattice::{parse, LatticeDescriptor};
use crate::materialize;
use crate::modring::{compute_um, ExtraUnits, UnitQuotient};

#[derive(Debug, Parser)]
#[command(name = "cp2genus", version, about = "Lattices over Z C_{p^2} and the genus of Z^n x| C_{p^2}")]
struct Cli {
    /// The prime p.
    #[arg(long, global = true)]
    p: Option<u32>,
    /// Class-group data (JSON) instead of the built-in data for p.
    #[arg(long, global = true)]
    classdata: Option<PathBuf>,
    /// Print JSON.
    #[arg(long, global = true)]
    json: bool,
    /// Print nothing for yes/no questions; answer with the exit code.
    #[arg(long, global = true)]
    quiet: bool,
    /// Replace units by canonical representatives instead of rejecting them.
    #[arg(long, global = true)]
    lenient_units: bool,
    /// Largest set the enumeration engines may build.
    #[arg(long, global = true, default_value_t = DEFAULT_ENUMERATION_LIMIT)]
    max_enum: usize,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Parse a descriptor and print its normal form and basic data.
    Check { descriptor: String },
    /// Print the full set of isomorphism invariants.
    Invariants { descriptor: String },
    /// Decide whether two lattices are isomorphic.
    Iso { first: String, second: String },
    /// Decide whether two lattices lie in the same genus.
    GenusEq { first: String, second: String },
    /// Print the p-adic completion.
    Padic { descriptor: String },
    /// Twist by g -> g^k.
    Twist {
        #[arg(long)]
        k: u64,
        descriptor: String,
    },
    /// Decide whether M x| C_{p^2} and M' x| C_{p^2} are isomorphic.
    GroupIso { first: String, second: String },
    /// Decide whether the two groups have isomorphic profinite completions.
    ProfiniteIso { first: String, second: String },
    /// Size of the profinite genus of M x| C_{p^2}, both ways.
    GenusCount { descriptor: String },
    /// The quotient U_m and its canonical representatives.
    Um {
        #[arg(long)]
        m: usize,
    },
    /// Galois orbits on the class groups (and on U_m with --m).
    Orbits {
        #[arg(long)]
        m: Option<usize>,
    },
    /// An integer matrix for the action of g, with validation.
    Materialize { descriptor: String },
}

/// Output of one invocation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

/// Runs the command line `args` (including the program name).
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            return if code == 0 {
                Outcome { code, stdout: text, stderr: String::new() }
            } else {
                Outcome { code, stdout: String::new(), stderr: text }
            };
        }
    };
    match execute(&cli) {
        Ok(Reply::Text(stdout)) => Outcome { code: 0, stdout, stderr: String::new() },
        Ok(Reply::Answer(yes, text)) => Outcome {
            code: if cli.quiet { i32::from(!yes) } else { 0 },
            stdout: if cli.quiet { String::new() } else { text },
            stderr: String::new(),
        },
        Err(e) => Outcome {
            code: exit_code(&e),
            stdout: String::new(),
            stderr: format!("error: {e}\n"),
        },
    }
}

fn exit_code(e: &Error) -> i32 {
    match e {
        Error::UnsupportedPrime(_) | Error::NeedsConfig(..) => 3,
        _ => 2,
    }
}

enum Reply {
    Text(String),
    Answer(bool, String),
}

fn context(cli: &Cli) -> Result<Arc<Context>> {
    let data = match (&cli.classdata, cli.p) {
        (Some(path), p) => {
            let d = classdata::load_config(path)?;
            if let Some(p) = p {
                if p != d.p {
                    return Err(Error::InvalidClassData {
                        path: path.display().to_string(),
                        msg: format!("file is for p = {}, --p is {p}", d.p),
                    });
                }
            }
            d
        }
        (None, Some(p)) => classdata::builtin(p)?,
        (None, None) => return Err(Error::OutOfRange("--p is required".into())),
    };
    Ok(Context::with_limit(data, cli.max_enum))
}

fn json<T: Serialize>(v: &T) -> Result<String> {
    Ok(serde_json::to_string_pretty(v)? + "\n")
}

fn answer(cli: &Cli, yes: bool, yes_text: &str, no_text: &str) -> Result<Reply> {
    let text = if cli.json {
        json(&serde_json::json!({ "result": yes }))?
    } else {
        format!("{}\n", if yes { yes_text } else { no_text })
    };
    Ok(Reply::Answer(yes, text))
}

fn render_invariants(inv: &iso::IsoInvariants) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "padic: {}", render_padic(&inv.padic));
    let _ = writeln!(s, "R-class: {}", inv.r_class);
    let _ = writeln!(s, "S-class: {}", inv.s_class);
    match &inv.u0_class {
        Some(u) => {
            let _ = writeln!(s, "u0 class: {u}");
        }
        None => s.push_str("u0 class: absorbed\n"),
    }
    match inv.quad_char {
        Some(q) => {
            let _ = writeln!(s, "quadratic character: {q:+}");
        }
        None => s.push_str("quadratic character: absorbed\n"),
    }
    s
}

fn render_padic(pd: &iso::PadicDescriptor) -> String {
    format!(
        "a={} R={} E={} S={} (Z,S;1)={} beta={:?} gamma+delta={:?} epsilon={:?} eta={:?}",
        pd.a, pd.r, pd.e, pd.s, pd.zs, pd.beta, pd.gamma_delta, pd.epsilon, pd.eta
    )
}

fn um_reply(cli: &Cli, q: &UnitQuotient, m: usize) -> Result<Reply> {
    let reps: Vec<String> = q.reps().iter().map(ToString::to_string).collect();
    if cli.json {
        return Ok(Reply::Text(json(&serde_json::json!({
            "p": q.p(),
            "m": m,
            "order": q.len(),
            "subgroup_order": q.subgroup().order(),
            "representatives": reps,
        }))?));
    }
    let mut s = String::new();
    let _ = writeln!(
        s,
        "U_{m} at p = {}: order {}{}",
        q.p(),
        q.len(),
        if q.is_trivial() { " (trivial)" } else { "" }
    );
    let _ = writeln!(s, "subgroup order: {}", q.subgroup().order());
    let _ = writeln!(s, "representatives: {}", reps.join(", "));
    Ok(Reply::Text(s))
}

fn execute(cli: &Cli) -> Result<Reply> {
    // U_m needs no class groups unless a config adds unit generators.
    if let (Command::Um { m }, None, Some(p)) = (&cli.command, &cli.classdata, cli.p) {
        let q = compute_um(p, *m, &ExtraUnits::default(), cli.max_enum)?;
        return um_reply(cli, &q, *m);
    }
    let ctx = context(cli)?;
    let lenient = cli.lenient_units;
    let desc = |text: &str| -> Result<LatticeDescriptor> { parse(text, &ctx, lenient) };
    match &cli.command {
        Command::Check { descriptor } => {
            let d = desc(descriptor)?;
            if cli.json {
                return Ok(Reply::Text(json(&serde_json::json!({
                    "descriptor": d,
                    "rank": d.rank(),
                    "faithfulness": d.faithfulness(),
                    "genus_vector": d.genus_vector(),
                    "u0": d.u0(),
                    "r1": d.r1(),
                    "r2": d.r2(),
                    "t": d.t(),
                    "sigma": d.sigma(),
                }))?));
            }
            let gv = d.genus_vector();
            let mut s = String::new();
            let _ = writeln!(s, "{d}");
            let _ = writeln!(s, "rank: {}", d.rank());
            let _ = writeln!(s, "action: {:?}", d.faithfulness());
            let _ = writeln!(
                s,
                "genus vector: a={} b={} c={} d={} e={} beta={:?} gamma={:?} delta={:?} epsilon={:?} eta={:?}",
                gv.a, gv.b, gv.c, gv.d, gv.e, gv.beta, gv.gamma, gv.delta, gv.epsilon, gv.eta
            );
            let _ = writeln!(s, "u0: {}", d.u0());
            let _ = writeln!(s, "r1: {}  r2: {}  t: {}  sigma: {}", d.r1(), d.r2(), d.t(), d.sigma());
            Ok(Reply::Text(s))
        }
        Command::Invariants { descriptor } => {
            let inv = iso::invariants_of(&desc(descriptor)?)?;
            Ok(Reply::Text(if cli.json { json(&inv)? } else { render_invariants(&inv) }))
        }
        Command::Iso { first, second } => {
            let yes = iso::isomorphic(&desc(first)?, &desc(second)?)?;
            answer(cli, yes, "isomorphic", "not isomorphic")
        }
        Command::GenusEq { first, second } => {
            let yes = iso::same_genus(&desc(first)?, &desc(second)?)?;
            answer(cli, yes, "same genus", "different genus")
        }
        Command::Padic { descriptor } => {
            let pd = iso::padic_completion(&desc(descriptor)?);
            Ok(Reply::Text(if cli.json { json(&pd)? } else { render_padic(&pd) + "\n" }))
        }
        Command::Twist { k, descriptor } => {
            let t = galois::twist(&desc(descriptor)?, *k)?;
            Ok(Reply::Text(if cli.json { json(&t)? } else { format!("{t}\n") }))
        }
        Command::GroupIso { first, second } => {
            let e1 = SemidirectDescriptor::new(desc(first)?);
            let e2 = SemidirectDescriptor::new(desc(second)?);
            let yes = genus::group_isomorphic(&e1, &e2)?;
            answer(cli, yes, "isomorphic", "not isomorphic")
        }
        Command::ProfiniteIso { first, second } => {
            let e1 = SemidirectDescriptor::new(desc(first)?);
            let e2 = SemidirectDescriptor::new(desc(second)?);
            let yes = genus::profinite_isomorphic(&e1, &e2)?;
            answer(cli, yes, "isomorphic", "not isomorphic")
        }
        Command::GenusCount { descriptor } => {
            let e = SemidirectDescriptor::new(desc(descriptor)?);
            let rep = genus::genus_report(&e);
            if cli.json {
                return Ok(Reply::Text(json(&rep)?));
            }
            let mut s = String::new();
            match (&rep.closed_form, rep.enumeration) {
                (Some(c), _) => {
                    let _ = writeln!(s, "{} ({:?})", c.value, c.case);
                }
                (None, Some(v)) => {
                    let _ = writeln!(s, "{v} (enumeration)");
                }
                (None, None) => return Err(Error::Internal(rep.notes.join("; "))),
            }
            if let Some(v) = rep.enumeration {
                let _ = writeln!(s, "enumeration: {v}");
            }
            if let Some(a) = rep.agree {
                let _ = writeln!(s, "agree: {a}");
            }
            if let (Some((lo, hi)), Some(ok)) = (rep.bounds, rep.within_bounds) {
                let _ = writeln!(s, "bounds: {lo} <= v <= {hi} ({})", if ok { "ok" } else { "VIOLATED" });
            }
            for n in &rep.notes {
                let _ = writeln!(s, "note: {n}");
            }
            Ok(Reply::Text(s))
        }
        Command::Um { m } => um_reply(cli, ctx.quotient(*m)?, *m),
        Command::Orbits { m } => {
            let limit = ctx.limit();
            let h1 = ctx.classes().h_p.orbits(limit)?;
            let h2 = ctx.classes().h_p2.orbits(limit)?;
            let units = match m {
                Some(m) => {
                    let q = ctx.quotient(*m)?;
                    let perm = q.galois_permutation(ctx.galois_generator())?;
                    Some(crate::abelian::burnside_count(&[perm], ctx.galois_order()))
                }
                None => None,
            };
            let show = |o: &Vec<Vec<crate::abelian::GroupElement>>| -> Vec<Vec<String>> {
                o.iter().map(|orb| orb.iter().map(ToString::to_string).collect()).collect()
            };
            if cli.json {
                return Ok(Reply::Text(json(&serde_json::json!({
                    "p": ctx.p(),
                    "h_p_orbits": show(&h1),
                    "h_p2_orbits": show(&h2),
                    "u_m": m,
                    "u_m_orbit_count": units,
                }))?));
            }
            let mut s = String::new();
            let _ = writeln!(s, "G(p) orbits on H(p): {}", h1.len());
            let _ = writeln!(s, "G(p^2) orbits on H(p^2): {}", h2.len());
            if let (Some(m), Some(u)) = (m, units) {
                let _ = writeln!(s, "G(p^2) orbits on U_{m}: {u}");
            }
            Ok(Reply::Text(s))
        }
        Command::Materialize { descriptor } => {
            let rep = materialize::rep_of(&desc(descriptor)?)?;
            let report = materialize::validate_rep(&rep);
            if cli.json {
                return Ok(Reply::Text(json(&serde_json::json!({
                    "rep": rep,
                    "validation": report,
                }))?));
            }
            let mut s = String::new();
            let _ = writeln!(s, "n = {}", rep.n);
            for i in 0..rep.a.rows() {
                let row: Vec<String> = rep.a.row(i).iter().map(ToString::to_string).collect();
                let _ = writeln!(s, "[{}]", row.join(" "));
            }
            for c in &report.checks {
                let _ = writeln!(s, "{}: {} ({})", c.name, if c.passed { "ok" } else { "FAILED" }, c.detail);
            }
            Ok(Reply::Text(s))
        }
    }
}
