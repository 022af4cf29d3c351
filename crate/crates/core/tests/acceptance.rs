//! Acceptance suite: one PASS/FAIL line per criterion.

mod common;

use std::collections::{HashMap, HashSet};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use cp2genus::genus::{self, CaseTag, SemidirectDescriptor};
use cp2genus::iso::{self, PadicDescriptor};
use cp2genus::materialize::{self, ExtTarget};
use cp2genus::modring::{self, ExtraUnits, PolyMod};
use cp2genus::{galois, parse, LatticeDescriptor};

use common::{ctx, rng, SMALL_PRIMES};

type Outcome = Result<String, String>;

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

fn ok<T, E: std::fmt::Display>(r: Result<T, E>, what: &str) -> Result<T, String> {
    r.map_err(|e| format!("{what}: {e}"))
}

fn indecomposable_counts() -> Outcome {
    let mut found = Vec::new();
    for (p, expected) in [(2, 9), (3, 13), (5, 21)] {
        let c = ctx(p);
        let templates = iso::indecomposable_templates(&c);
        let classes: HashSet<PadicDescriptor> =
            templates.iter().map(iso::padic_completion).collect();
        ensure!(
            classes.len() == expected && expected == 4 * p as usize + 1,
            "p = {p}: {} distinct completions, expected {expected}",
            classes.len()
        );
        found.push(format!("{}", classes.len()));
    }
    Ok(format!("4p+1 classes: {}", found.join(", ")))
}

fn genus_one_small_primes() -> Outcome {
    let mut sizes = Vec::new();
    for p in SMALL_PRIMES {
        let c = ctx(p);
        let mut corpus = common::so_cs_corpus(&c);
        if !cp2genus::arith::is_one_mod_four(p) {
            corpus.extend(common::absorption_corpus(&c));
        }
        ensure!(corpus.len() >= 20, "p = {p}: corpus has only {}", corpus.len());
        for d in &corpus {
            let e = SemidirectDescriptor::new(d.clone());
            ensure!(e.is_faithful(), "p = {p}: {d} is not faithful");
            let r = genus::genus_report(&e);
            let cf = r.closed_form.as_ref().ok_or(format!("p = {p}: no closed form for {d}"))?;
            ensure!(
                matches!(cf.case, CaseTag::SoCs | CaseTag::CsBsAbsorption),
                "p = {p}: {d} dispatched to {:?}",
                cf.case
            );
            ensure!(cf.value == 1, "p = {p}: {d} has closed form {}", cf.value);
            ensure!(r.enumeration == Some(1), "p = {p}: {d} enumerates to {:?}", r.enumeration);
            ensure!(r.agree == Some(true), "p = {p}: engines disagree on {d}");
        }
        sizes.push(format!("p={p}: {}", corpus.len()));
    }
    Ok(format!("genus 1 on corpora ({})", sizes.join(", ")))
}

fn genus_two_at_five() -> Outcome {
    let c = ctx(5);
    let cases = [
        ("C(0,0;1)", "D(0,0;1)"),
        ("C(0,0;2)", "D(0,0;2)"),
        ("C(0,0;3)", "D(0,0;3)"),
        ("C(0,0;1) + C(0,0;2)", "C(0,0;1) + D(0,0;2)"),
        ("C(0,0;1) + E(0,0;0)", "D(0,0;1) + E(0,0;0)"),
        ("D(0,0;1) + D(0,0;3) + E(0,0;2)", "C(0,0;1) + D(0,0;3) + E(0,0;2)"),
    ];
    for (a, b) in cases {
        let m = ok(parse(a, &c, false), a)?;
        let twin = ok(parse(b, &c, false), b)?;
        let q = ok(c.quotient(m.t() as usize), "U_t")?;
        ensure!(q.is_trivial(), "{a}: U_t with t = {} is not trivial", m.t());
        let e = SemidirectDescriptor::new(m.clone());
        let r = genus::genus_report(&e);
        let cf = r.closed_form.as_ref().ok_or(format!("{a}: no closed form"))?;
        ensure!(cf.value == 2, "{a}: closed form {} ({:?})", cf.value, cf.case);
        ensure!(r.enumeration == Some(2), "{a}: enumeration {:?}", r.enumeration);
        let f = SemidirectDescriptor::new(twin);
        ensure!(ok(genus::profinite_isomorphic(&e, &f), "profinite")?, "{a} vs {b}: not profinitely isomorphic");
        ensure!(!ok(genus::group_isomorphic(&e, &f), "group")?, "{a} vs {b}: groups isomorphic");
    }
    Ok(format!("{} C/D pairs with genus 2, same completion, distinct groups", cases.len()))
}

fn twist_of_lambda_multiples() -> Outcome {
    let mut checked = 0u64;
    for p in SMALL_PRIMES {
        let p2 = (p * p) as u64;
        let ks: Vec<u64> = (1..p2).filter(|k| k % p as u64 != 0).collect();
        for n in [p as usize - 1, p as usize] {
            if n == 0 {
                continue;
            }
            for &k in &ks {
                let delta = modring::cyclotomic_delta(p, n, k);
                for r in 0..n {
                    let lam_r = PolyMod::lambda_pow(p, n, r);
                    let factor = ok(lam_r.mul(&delta.pow(r as u64)), "mul")?;
                    for u in ok(modring::unit_group(p, n - r), "units")? {
                        let u = u.resize(n);
                        let lhs = ok(modring::galois_on_unit(k, &ok(lam_r.mul(&u), "mul")?), "galois")?;
                        let rhs = ok(factor.mul(&ok(modring::galois_on_unit(k, &u), "galois")?), "mul")?;
                        ensure!(lhs == rhs, "p = {p}, k = {k}, r = {r}, u = {u}: {lhs} != {rhs}");
                        checked += 1;
                    }
                }
            }
        }
        for &k in &ks {
            for m in 1..p as usize {
                let sub = ok(modring::image_of_r_units(p, m, &[]), "R image")?;
                let d = modring::cyclotomic_delta(p, m, k);
                ensure!(sub.contains(&d), "p = {p}, m = {m}: Delta_{k} not in the R image");
            }
            let sub = ok(modring::image_of_es_units(p, &[]), "ES image")?;
            let d = modring::cyclotomic_delta(p, p as usize, k);
            ensure!(sub.contains(&d), "p = {p}: Delta_{k} not in the E.S image");
        }
    }
    Ok(format!("{checked} (k, r, u) triples, Delta_k in unit images"))
}

fn brute_closure(gens: &[PolyMod], one: PolyMod) -> HashSet<PolyMod> {
    let mut seen = HashSet::from([one.clone()]);
    let mut frontier = vec![one];
    while let Some(x) = frontier.pop() {
        for g in gens {
            let y = x.mul(g).expect("same ring");
            if seen.insert(y.clone()) {
                frontier.push(y);
            }
        }
    }
    seen
}

fn unit_quotients() -> Outcome {
    let extra = ExtraUnits::default();
    let limit = cp2genus::abelian::DEFAULT_ENUMERATION_LIMIT;
    for p in [3, 5, 7] {
        let q = ok(modring::compute_um(p, 1, &extra, limit), "U_1")?;
        ensure!(q.is_trivial(), "U_1 at p = {p} has order {}", q.len());
    }
    let q = ok(modring::compute_um(2, 2, &extra, limit), "U_2")?;
    ensure!(q.is_trivial(), "U_2 at p = 2 has order {}", q.len());
    let mut orders = Vec::new();
    for p in [2u32, 3, 5, 7] {
        for m in 1..=p as usize {
            let q = ok(modring::compute_um(p, m, &extra, limit), "U_m")?;
            let sub = q.subgroup();
            let closed = brute_closure(sub.generators(), PolyMod::one(p, m));
            ensure!(closed.len() == sub.order(), "p = {p}, m = {m}: closure {} vs {}", closed.len(), sub.order());
            ensure!(closed.iter().all(|x| sub.contains(x)), "p = {p}, m = {m}: closure escapes subgroup");
            let units = (p as u64 - 1) * (p as u64).pow(m as u32 - 1);
            ensure!(
                (q.len() * sub.order()) as u64 == units,
                "p = {p}, m = {m}: {} * {} != {units}",
                q.len(),
                sub.order()
            );
            let mut covered = HashSet::new();
            for rep in q.reps() {
                for h in &closed {
                    ensure!(covered.insert(rep.mul(h).expect("same ring")), "p = {p}, m = {m}: cosets overlap");
                }
            }
            ensure!(covered.len() as u64 == units, "p = {p}, m = {m}: cosets miss units");
            if q.len() > 1 {
                orders.push(format!("U_{m}(p={p})={}", q.len()));
            }
        }
    }
    Ok(format!("U_1, U_2(p=2) trivial; nontrivial: {}", orders.join(" ")))
}

fn ext_sizes() -> Outcome {
    for p in SMALL_PRIMES {
        let g = ok(materialize::ext_group(ExtTarget::ZR, p), "Ext")?;
        let pp = (p as u128).pow(p);
        ensure!(g.order() == pp, "p = {p}: |Ext(S, Z+R)| = {}", g.order());
        ensure!(
            g.invariant_factors().iter().all(|&f| f == p as u64) && g.rank() == p as usize,
            "p = {p}: Ext(S, Z+R) = {:?}, expected (Z/p)^p",
            g.invariant_factors()
        );
        let z = ok(materialize::ext_group(ExtTarget::Z, p), "Ext")?;
        let r = ok(materialize::ext_group(ExtTarget::R, p), "Ext")?;
        ensure!(z.invariant_factors() == [p as u64], "p = {p}: Ext(S, Z) = {:?}", z.invariant_factors());
        ensure!(
            r.order() == (p as u128).pow(p - 1) && r.invariant_factors().iter().all(|&f| f == p as u64),
            "p = {p}: Ext(S, R) = {:?}",
            r.invariant_factors()
        );
    }
    Ok("Ext(S, Z+R) = (Z/p)^p for p = 2, 3, 5".into())
}

fn materialization() -> Outcome {
    let mut n = 0;
    for p in [2, 3] {
        for d in iso::indecomposable_templates(&ctx(p)) {
            let rep = ok(materialize::rep_of(&d), "rep_of")?;
            let report = materialize::validate_rep(&rep);
            ensure!(report.passed(), "p = {p}, {d}: {:?}", report.failures());
            n += 1;
        }
    }
    Ok(format!("{n} indecomposables validate"))
}

fn twist_laws(d: &LatticeDescriptor, ks: &[u64], n: u64) -> Result<(), String> {
    ensure!(ok(galois::twist(d, 1), "twist")? == *d, "{d}: identity twist moves it");
    let padic = iso::padic_completion(d);
    let count = ok(genus::orbit_genus_count(d), "orbits")?;
    for &k1 in ks {
        let t1 = ok(galois::twist(d, k1), "twist")?;
        ensure!(iso::padic_completion(&t1) == padic, "{d}: twist {k1} changes completion");
        ensure!(t1.rank() == d.rank(), "{d}: twist {k1} changes rank");
        ensure!(ok(genus::orbit_genus_count(&t1), "orbits")? == count, "{d}: twist {k1} changes genus count");
        ensure!(
            ok(galois::twisted_isomorphic(d, &t1), "twisted")?.is_some()
                && ok(galois::twisted_isomorphic(&t1, d), "twisted")?.is_some(),
            "{d}: not twisted-isomorphic to its twist by {k1}"
        );
        for &k2 in ks {
            let lhs = ok(galois::twist(&t1, k2), "twist")?;
            ensure!(lhs == ok(galois::twist(d, k1 * k2 % n), "twist")?, "{d}: twist({k1}) then twist({k2})");
            ensure!(ok(galois::twisted_isomorphic(d, &lhs), "twisted")?.is_some(), "{d}: twisted iso not transitive");
        }
    }
    Ok(())
}

fn check_equivalence(
    pool: &[LatticeDescriptor],
    rel: impl Fn(&LatticeDescriptor, &LatticeDescriptor) -> Result<bool, String>,
    name: &str,
) -> Result<usize, String> {
    let mut related: HashMap<usize, Vec<usize>> = HashMap::new();
    for i in 0..pool.len() {
        ensure!(rel(&pool[i], &pool[i])?, "{name} not reflexive on {}", pool[i]);
        for j in i + 1..pool.len() {
            let a = rel(&pool[i], &pool[j])?;
            ensure!(a == rel(&pool[j], &pool[i])?, "{name} not symmetric on {}, {}", pool[i], pool[j]);
            if a {
                related.entry(i).or_default().push(j);
                related.entry(j).or_default().push(i);
            }
        }
    }
    let mut pairs = 0;
    for (&i, js) in &related {
        for &j in js {
            for &k in &related[&j] {
                if k != i {
                    ensure!(
                        related[&i].contains(&k),
                        "{name} not transitive on {}, {}, {}",
                        pool[i],
                        pool[j],
                        pool[k]
                    );
                }
            }
            pairs += 1;
        }
    }
    Ok(pairs / 2)
}

fn action_laws_and_bounds() -> Outcome {
    let mut summary = Vec::new();
    let mut bounded = 0;
    for p in SMALL_PRIMES {
        let c = ctx(p);
        let mut r = rng(0xC0FFEE + p as u64);
        let ks = c.galois_elements();
        let n = (p * p) as u64;
        let pool: Vec<LatticeDescriptor> = (0..200).map(|_| common::random_descriptor(&mut r, &c, 3)).collect();
        for d in &pool {
            let sample: Vec<u64> = if ks.len() <= 6 {
                ks.clone()
            } else {
                vec![ks[1], ks[2], ks[ks.len() - 1], ks[ks.len() / 2]]
            };
            twist_laws(d, &sample, n)?;
        }
        let small: Vec<LatticeDescriptor> = (0..200).map(|_| common::random_descriptor(&mut r, &c, 2)).collect();
        let iso_pairs = check_equivalence(&small, |a, b| ok(iso::isomorphic(a, b), "isomorphic"), "isomorphic")?;
        let tw_pairs = check_equivalence(
            &small,
            |a, b| ok(galois::twisted_isomorphic(a, b), "twisted").map(|x| x.is_some()),
            "twisted_isomorphic",
        )?;
        let mut faithful: Vec<LatticeDescriptor> = pool
            .iter()
            .chain(&small)
            .filter(|d| SemidirectDescriptor::new((*d).clone()).is_faithful())
            .cloned()
            .collect();
        faithful.extend(common::so_cs_corpus(&c));
        if !cp2genus::arith::is_one_mod_four(p) {
            faithful.extend(common::absorption_corpus(&c));
        }
        for d in &faithful {
            let rep = genus::genus_report(&SemidirectDescriptor::new(d.clone()));
            ensure!(rep.within_bounds == Some(true), "p = {p}, {d}: {:?} outside {:?}", rep.enumeration, rep.bounds);
            if rep.agree == Some(false) {
                return Err(format!("p = {p}, {d}: closed form and enumeration disagree"));
            }
            bounded += 1;
        }
        summary.push(format!("p={p}: {iso_pairs}/{tw_pairs} related pairs"));
    }
    Ok(format!("200+200 descriptors per prime ({}); {bounded} faithful within bounds", summary.join(", ")))
}

fn bounds_only() -> Outcome {
    let mut n = 0;
    for p in SMALL_PRIMES {
        let c = ctx(p);
        let mut r = rng(0xB0B + p as u64);
        for _ in 0..100 {
            let d = common::random_faithful(&mut r, &c, 4);
            let rep = genus::genus_report(&SemidirectDescriptor::new(d.clone()));
            let (lo, hi) = rep.bounds.ok_or(format!("{d}: no bounds"))?;
            let v = rep.enumeration.ok_or(format!("{d}: no enumeration"))?;
            ensure!(lo <= v && v <= hi, "p = {p}, {d}: {v} outside [{lo}, {hi}]");
            n += 1;
        }
    }
    Ok(format!("{n} random faithful descriptors within bounds"))
}

struct Criterion {
    id: &'static str,
    budget: Duration,
    run: fn() -> Outcome,
}

fn main() -> ExitCode {
    let secs = Duration::from_secs;
    let criteria = [
        Criterion { id: "1", budget: secs(1), run: indecomposable_counts },
        Criterion { id: "2", budget: secs(5), run: genus_one_small_primes },
        Criterion { id: "3", budget: secs(5), run: genus_two_at_five },
        Criterion { id: "4", budget: secs(10), run: twist_of_lambda_multiples },
        Criterion { id: "5", budget: secs(10), run: unit_quotients },
        Criterion { id: "6", budget: secs(30), run: ext_sizes },
        Criterion { id: "7", budget: secs(30), run: materialization },
        Criterion { id: "8", budget: secs(60), run: action_laws_and_bounds },
        Criterion { id: "9", budget: secs(60), run: bounds_only },
    ];
    let mut failed = 0;
    for c in &criteria {
        let start = Instant::now();
        let result = catch_unwind(AssertUnwindSafe(c.run)).unwrap_or_else(|e| {
            let msg = e
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_else(|| "panic".into());
            Err(format!("panicked: {msg}"))
        });
        let took = start.elapsed();
        let result = match result {
            Ok(msg) if took > c.budget => Err(format!("{msg}; took {took:.2?}, budget {:?}", c.budget)),
            r => r,
        };
        match result {
            Ok(msg) => println!("PASS criterion {}: {msg} [{took:.2?}]", c.id),
            Err(msg) => {
                failed += 1;
                println!("FAIL criterion {}: {msg} [{took:.2?}]", c.id);
            }
        }
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        println!("{failed} criteria failed");
        ExitCode::FAILURE
    }
}
