//! Acceptance run: one line per criterion. Exits non-zero only when a
//! criterion's outcome differs from the recorded one in `EXPECTED`.

use std::time::{Duration, Instant};

use crossbi::bundle::StructureBundle;
use crossbi::catalog::{self, random_bundle, RandomSpec};
use crossbi::conditions::{self, equivalence_suite, gates};
use crossbi::products::{construction, lifts, oracle};
use crossbi::report::Verdict;
use crossbi::sweedler::Equation;
use crossbi::tensor::multi_indices;
use crossbi::{Field, Result};

/// All comparisons are exact: rational or F_p arithmetic, no tolerance.
const TOLERANCE: u32 = 0;
const C1_LIMIT: Duration = Duration::from_secs(60);
const C3_LIMIT: Duration = Duration::from_secs(600);
const SEEDS: u64 = 100;
const MAX_DIM: usize = 3;
const MIN_MUTATIONS: usize = 20;
const MUTATION_TARGET: usize = 25;
const MUTATIONS_PER_INSTANCE: usize = 2;
const MUTATION_SEED_CAP: u64 = 600;
const IFF_GATES: [&str; 5] = ["prop1.1", "prop2.1", "thm2.3", "thm_bialg_2sec", "thm_D"];

/// Recorded outcome per criterion. Criterion 1 fails: the worked example's
/// cocycle is not associative (see the decisions ledger).
const EXPECTED: [bool; 7] = [false, true, true, true, true, true, true];

type Criterion = fn() -> Result<Outcome>;

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: impl Into<String>) -> Outcome {
    Outcome {
        pass,
        detail: detail.into(),
    }
}

fn f2() -> Field {
    Field::Prime(2)
}

/// Factor dimensions for a seed, each in `1..=MAX_DIM`.
fn dims(seed: u64) -> [usize; 3] {
    let m = MAX_DIM as u64;
    [1 + (seed % m) as usize, 1 + (seed / m % m) as usize, 1 + (seed / (m * m) % m) as usize]
}

fn single_threaded<T: Send>(f: impl FnOnce() -> T + Send) -> T {
    rayon::ThreadPoolBuilder::new().num_threads(1).build().unwrap().install(f)
}

fn criterion1() -> Result<Outcome> {
    let e = catalog::kc2_kc4(Field::Rational)?;
    let t = Instant::now();
    let built = construction("two_sided_crossed")?.build_unchecked(&e.bundle)?;
    let assoc = single_threaded(|| oracle("assoc")?.run(&built))?;
    let elapsed = t.elapsed();
    let cor_p = gates::gate("cor_P", &e.bundle)?;
    let assoc_ok = assoc.iter().all(|r| r.passed());
    let mut detail = format!(
        "dim {}, assoc over {} triples: {}",
        built.carrier.dim(),
        built.carrier.dim().pow(3),
        if assoc_ok { "pass".to_string() } else { String::new() }
    );
    for r in assoc.iter().filter(|r| !r.passed()) {
        if let Some(w) = &r.witness {
            detail.push_str(&format!("FAIL {w}"));
        }
    }
    detail.push_str(&format!("; cor_P {}; {:.1}s single-threaded", cor_p.verdict(), elapsed.as_secs_f64()));
    let pass = built.carrier.dim() == 32 && assoc_ok && cor_p.verdict() == Verdict::Pass && elapsed <= C1_LIMIT;
    Ok(outcome(pass, detail))
}

fn criterion2() -> Result<Outcome> {
    let e = catalog::kc2_kc4(Field::Rational)?;
    let i1 = conditions::check("I1", &e.bundle)?;
    let built = construction("two_sided_bialgebra")?.build(&e.bundle)?;
    let anti = oracle("antipode")?.run(&built)?;
    let w1 = i1.witness.clone();
    let w2 = anti.iter().find(|r| !r.passed()).and_then(|r| r.witness.clone());
    let (Some(w1), Some(w2)) = (w1, w2) else {
        return Ok(outcome(false, "I1 or the antipode oracle did not fail"));
    };
    let flat = |s: &str| s.replace(" % ", "|");
    let pass = w1.input == ["a"] && w1.lhs == "x % 1 % x" && w2.input == ["1|a|1"] && flat(&w1.lhs) == w2.lhs;
    Ok(outcome(
        pass,
        format!("I1 at {}: {}; id*S at {}: {}", w1.input.join(","), w1.lhs, w2.input.join(","), w2.lhs),
    ))
}

fn criterion3() -> Result<Outcome> {
    let t = Instant::now();
    let mut parts = vec![];
    let mut pass = true;
    for g in IFF_GATES {
        let (mut consistent, mut main_pass) = (0, 0);
        for seed in 0..SEEDS {
            let b = random_bundle(&RandomSpec::for_gate(g, dims(seed), f2(), seed)?)?;
            let r = gates::gate(g, &b)?;
            if r.consistent == Some(true) {
                consistent += 1;
            }
            if r.main_holds() {
                main_pass += 1;
            }
        }
        pass &= consistent == SEEDS;
        parts.push(format!("{g} {consistent}/{SEEDS} (main holds {main_pass})"));
    }
    let elapsed = t.elapsed();
    pass &= elapsed <= C3_LIMIT;
    Ok(outcome(pass, format!("{}; {:.1}s", parts.join(", "), elapsed.as_secs_f64())))
}

/// Maps whose entries are mutated for a gate.
fn mutable_maps(gate: &str) -> &'static [&'static str] {
    match gate {
        "thm_D" => &["act_l", "act_r", "coact_l", "coact_r", "sigma", "tau"],
        _ => &["G", "R", "T", "F", "sigma", "tau", "act_l", "act_r"],
    }
}

/// `thm_D` keeps `H` two-dimensional: its prerequisites leave little room
/// for single-entry changes otherwise.
fn mutation_dims(gate: &str, seed: u64) -> [usize; 3] {
    let d = dims(seed);
    if gate == "thm_D" {
        [d[0], 2, d[1]]
    } else {
        d
    }
}

/// (qualifying mutations, exceptions, instances used)
fn mutate_gate(gate: &str) -> Result<(usize, usize, usize)> {
    let g = gates::find_gate(gate).expect("gate");
    let (c, os) = g.oracle.expect("oracle");
    let (mut hits, mut exceptions, mut used) = (0, 0, 0);
    for seed in 0..MUTATION_SEED_CAP {
        if hits >= MUTATION_TARGET {
            break;
        }
        let b = random_bundle(&RandomSpec::for_gate(gate, mutation_dims(gate, seed), f2(), seed)?)?;
        let r = gates::gate_with(g, &b)?;
        if r.verdict() != Verdict::Pass || r.oracle.as_ref().is_some_and(|o| !o.passed()) {
            continue;
        }
        let mut here = 0;
        'maps: for name in mutable_maps(gate) {
            let m = b.get(name)?;
            for i in multi_indices(&m.domain_dims()) {
                for o in multi_indices(&m.codomain_dims()) {
                    if here >= MUTATIONS_PER_INSTANCE || hits >= MUTATION_TARGET {
                        break 'maps;
                    }
                    let v = m.entry(&o, &i).add_ref(&b.field.one());
                    let mb = b.mutated(name, &o, &i, v)?;
                    if !single_main_failure(g, &mb)? {
                        continue;
                    }
                    here += 1;
                    hits += 1;
                    if gates::run_oracle(c, os, &mb)?.passed() {
                        exceptions += 1;
                    }
                }
            }
        }
        used += (here > 0) as usize;
    }
    Ok((hits, exceptions, used))
}

/// Prerequisites hold and exactly one main condition fails.
fn single_main_failure(g: &gates::Gate, b: &StructureBundle) -> Result<bool> {
    for p in &g.prerequisites {
        if !gates::check_item(p, b)?.passed() {
            return Ok(false);
        }
    }
    let mut fails = 0;
    for m in &g.main {
        if !gates::check_item(m, b)?.passed() {
            fails += 1;
            if fails > 1 {
                return Ok(false);
            }
        }
    }
    Ok(fails == 1)
}

fn criterion4() -> Result<Outcome> {
    let mut parts = vec![];
    let mut pass = true;
    for g in IFF_GATES {
        let (hits, exceptions, used) = mutate_gate(g)?;
        pass &= hits >= MIN_MUTATIONS && exceptions == 0;
        parts.push(format!("{g} {hits} broken on {used} instances, {exceptions} exceptions"));
    }
    Ok(outcome(pass, parts.join(", ")))
}

fn criterion5() -> Result<Outcome> {
    let mut bundles: Vec<StructureBundle> = vec![];
    for name in catalog::names() {
        bundles.push(catalog::entry(&name, Field::Rational)?.bundle);
    }
    let n_catalog = bundles.len();
    for seed in 0..SEEDS {
        bundles.push(random_bundle(&RandomSpec::for_gate("thm_D", dims(seed), f2(), seed)?)?);
    }
    let (mut checks, mut discrepancies, mut long_fails) = (0, 0, 0);
    for b in &bundles {
        for r in equivalence_suite(b)? {
            checks += 1;
            discrepancies += (!r.equivalent) as usize;
            long_fails += (!r.long_holds) as usize;
        }
    }
    Ok(outcome(
        discrepancies == 0,
        format!(
            "{n_catalog} catalog + {SEEDS} random bundles, {checks} equivalences, {long_fails} with the long form failing, {discrepancies} discrepancies"
        ),
    ))
}

fn criterion6() -> Result<Outcome> {
    let mut left_eq = 0;
    for seed in 0..SEEDS {
        let d = dims(seed);
        let b = random_bundle(&RandomSpec::new([d[0], d[1], 1], f2(), seed, &["LB1", "RB1", "tau_trivial"]))?;
        let two = construction("two_sided_crossed")?.build_unchecked(&b)?;
        let left = construction("left_brzezinski")?.build_unchecked(&b)?;
        left_eq += (two.algebra()?.mult.entries() == left.algebra()?.mult.entries()) as usize;
    }
    let mut smash_eq = 0;
    for seed in 0..SEEDS {
        let b = random_bundle(&RandomSpec::new(dims(seed), f2(), seed, &["sigma_trivial", "tau_trivial"]))?;
        let smash = construction("smash_product2")?.build_unchecked(&b)?;
        let crossed = construction("two_sided_crossed")?.build_unchecked(&lifts::two_sided_specialize(&b, "crossed")?)?;
        smash_eq += (smash.algebra()?.mult.entries() == crossed.algebra()?.mult.entries()) as usize;
    }
    let base = catalog::majid_dual(false)?;
    let graded = catalog::majid_dual(true)?;
    let base_ok = ["cor_F", "thm_D"]
        .iter()
        .map(|g| gates::gate(g, &base.bundle))
        .collect::<Result<Vec<_>>>()?
        .iter()
        .all(|r| r.verdict() == Verdict::Pass && r.consistent == Some(true));
    let gf = gates::gate("cor_F", &graded.bundle)?;
    let failing: Vec<&str> = gf.main.iter().filter(|m| !m.passed()).map(|m| m.id.as_str()).collect();
    let graded_ok = gf.prerequisites_hold() && failing == ["D21"] && gf.oracle.as_ref().is_some_and(|o| !o.passed());
    let n = SEEDS as usize;
    Ok(outcome(
        left_eq == n && smash_eq == n && base_ok && graded_ok,
        format!(
            "B = K vs left: {left_eq}/{n}; smash vs untwisted crossed: {smash_eq}/{n}; trivial coactions pass cor_F and thm_D: {base_ok}; graded coaction breaks {failing:?} and the bialgebra oracle: {graded_ok}"
        ),
    ))
}

fn criterion7() -> Result<Outcome> {
    let rows = conditions::concordance();
    let mut missing = vec![];
    let mut unparsed = vec![];
    for id in conditions::closed_id_set() {
        match rows.iter().find(|r| r.id == id) {
            Some(r) if !r.anchor.is_empty() && !r.location.is_empty() => {
                if Equation::parse_line(&r.dsl, 1).is_err() {
                    unparsed.push(id);
                }
            }
            _ => missing.push(id),
        }
    }
    Ok(outcome(
        missing.is_empty() && unparsed.is_empty(),
        format!("{} rows, missing {missing:?}, not reparsing {unparsed:?}", rows.len()),
    ))
}

fn main() {
    println!("acceptance: exact arithmetic (tolerance {TOLERANCE}), limits {}s / {}s", C1_LIMIT.as_secs(), C3_LIMIT.as_secs());
    let criteria: [(&str, Criterion); 7] = [
        ("worked example product", criterion1),
        ("antipode failure", criterion2),
        ("iff consistency", criterion3),
        ("necessity by mutation", criterion4),
        ("long/split equivalences", criterion5),
        ("reduction identities", criterion6),
        ("registry integrity", criterion7),
    ];
    let mut unexpected = 0;
    for (k, (name, f)) in criteria.iter().enumerate() {
        let t = Instant::now();
        let o = f().unwrap_or_else(|e| outcome(false, format!("error: {e}")));
        let tag = if o.pass { "PASS" } else { "FAIL" };
        let note = if o.pass == EXPECTED[k] { "" } else { "  [unexpected]" };
        unexpected += (o.pass != EXPECTED[k]) as usize;
        println!("criterion {} {tag} {name}: {} ({:.1}s){note}", k + 1, o.detail, t.elapsed().as_secs_f64());
    }
    if unexpected > 0 {
        std::process::exit(1);
    }
}
