use std::time::Instant;

use crossbi::bundle::StructureBundle;
use crossbi::catalog::{self, RandomSpec};
use crossbi::conditions::{self, gates};
use crossbi::instance::Instance;
use crossbi::products::{self, BuiltStructure};
use crossbi::report::{ConditionReport, Record, RunReport};
use crossbi::{Error, Field, Result};

use crate::{CatalogCommand, Cli, Command};

/// Exit code for a report-producing command, or an error (exit 2).
pub fn run(cli: &Cli) -> Result<u8> {
    match &cli.command {
        Command::Build {
            construction,
            instance,
            output,
            strict,
        } => build(cli, construction, instance, output.as_deref(), *strict),
        Command::Check { args } => {
            let (ids, inst) = args.split_at(args.len() - 1);
            check(cli, ids, &inst[0])
        }
        Command::Oracle {
            oracle,
            instance,
            construction,
        } => run_oracle(cli, oracle, instance, construction.as_deref()),
        Command::Catalog(c) => catalog_cmd(cli, &c.command),
        Command::Concordance => {
            if cli.json {
                let rows = conditions::concordance();
                println!("{}", serde_json::to_string_pretty(&rows).map_err(|e| Error::Io(e.to_string()))?);
            } else {
                print!("{}", conditions::concordance_text());
            }
            Ok(0)
        }
        Command::List { what } => list(what),
    }
}

fn field(cli: &Cli) -> Field {
    cli.field.unwrap_or(Field::Rational)
}

/// A catalog name (`trivial` is `trivial_1_1_1`) or an instance file.
fn load(cli: &Cli, arg: &str) -> Result<Instance> {
    let name = if arg == "trivial" { "trivial_1_1_1" } else { arg };
    if !std::path::Path::new(arg).exists() && (catalog::names().iter().any(|n| n == name) || name.starts_with("trivial_")) {
        let e = catalog::entry(name, field(cli))?;
        let mut inst = Instance::from_bundle(&e.bundle);
        inst.provenance = vec![format!("catalog {}", e.name), e.description];
        return Ok(inst);
    }
    let text = std::fs::read_to_string(arg).map_err(|e| Error::Io(format!("{arg}: {e}")))?;
    let inst = Instance::parse(&text)?;
    if let Some(f) = cli.field {
        if f != inst.field {
            return Err(Error::Field(format!("{arg} is over {} but --field {f} was given", inst.field)));
        }
    }
    Ok(inst)
}

fn emit(cli: &Cli, report: &RunReport) -> u8 {
    if cli.json {
        println!("{}", report.to_json());
    } else {
        print!("{}", report.to_text());
    }
    report.exit as u8
}

fn write_out(output: Option<&str>, text: &str) -> Result<()> {
    match output {
        Some(p) => std::fs::write(p, text).map_err(|e| Error::Io(format!("{p}: {e}"))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn build(cli: &Cli, name: &str, instance: &str, output: Option<&str>, strict: bool) -> Result<u8> {
    let c = products::construction(name)?;
    let bundle = load(cli, instance)?.to_bundle()?;
    let built = if strict {
        match c.build(&bundle) {
            Err(e @ Error::Prerequisite { .. }) => {
                eprintln!("refused: {e}");
                return Ok(1);
            }
            r => r?,
        }
    } else {
        let prepared = c.prepare(&bundle)?;
        for id in c.prerequisites() {
            let r = conditions::check(id, &prepared)?;
            if !r.passed() {
                eprintln!("warning: prerequisite {r}");
            }
        }
        c.assemble(&prepared)?
    };
    let mut inst = Instance::from_built(&built);
    inst.provenance.insert(0, format!("crossbi build {name} {instance}"));
    write_out(output, &inst.write())?;
    eprintln!("{name}: dimension {}", built.carrier.dim());
    Ok(0)
}

fn timed<T>(cli: &Cli, f: impl FnOnce() -> Result<T>) -> Result<(T, Option<f64>)> {
    let t = Instant::now();
    let v = f()?;
    Ok((v, cli.timings.then(|| t.elapsed().as_secs_f64() * 1e3)))
}

fn record(r: &ConditionReport, prefix: &str, ms: Option<f64>) -> Record {
    let mut rec = Record::from(r);
    rec.id = format!("{prefix}{}", r.id);
    rec.wall_ms = ms;
    rec
}

fn check(cli: &Cli, ids: &[String], instance: &str) -> Result<u8> {
    let inst = load(cli, instance)?;
    let bundle = inst.to_bundle()?;
    let mut records = vec![];
    for id in ids {
        if gates::is_gate(id) {
            let (g, ms) = timed(cli, || gates::gate(id, &bundle))?;
            for r in &g.prerequisites {
                records.push(record(r, &format!("{id}/pre/"), None));
            }
            for r in &g.main {
                records.push(record(r, &format!("{id}/main/"), None));
            }
            if let Some(o) = &g.oracle {
                let mut rec = record(o, "", None);
                rec.id = format!("{id}/oracle");
                records.push(rec);
            }
            let note = match g.consistent {
                Some(c) => format!("iff-consistent: {c}"),
                None if !g.prerequisites_hold() => "prerequisites fail".to_string(),
                None => "iff-consistent: n/a".to_string(),
            };
            records.push(Record {
                id: id.clone(),
                verdict: g.verdict(),
                witness: None,
                note: Some(note),
                wall_ms: ms,
            });
        } else {
            let (r, ms) = timed(cli, || gates::check_item(id, &bundle))?;
            records.push(record(&r, "", ms));
        }
    }
    let cmd = format!("check {} {instance}", ids.join(" "));
    Ok(emit(cli, &RunReport::new(cmd, bundle.field.to_string(), records)))
}

fn built_from(cli: &Cli, instance: &str, construction: Option<&str>) -> Result<(BuiltStructure, Field)> {
    let inst = load(cli, instance)?;
    let f = inst.field;
    match construction {
        Some(c) => Ok((products::construction(c)?.build_unchecked(&inst.to_bundle()?)?, f)),
        None => Ok((inst.to_built()?, f)),
    }
}

fn run_oracle(cli: &Cli, name: &str, instance: &str, construction: Option<&str>) -> Result<u8> {
    let o = products::oracle(name)?;
    let (built, f) = built_from(cli, instance, construction)?;
    let (reports, ms) = timed(cli, || o.run(&built))?;
    let mut records: Vec<Record> = reports.iter().map(|r| record(r, "", None)).collect();
    if let Some(last) = records.last_mut() {
        last.wall_ms = ms;
    }
    let mut cmd = format!("oracle {name} {instance}");
    if let Some(c) = construction {
        cmd.push_str(&format!(" --construction {c}"));
    }
    Ok(emit(cli, &RunReport::new(cmd, f.to_string(), records)))
}

fn catalog_cmd(cli: &Cli, c: &CatalogCommand) -> Result<u8> {
    match c {
        CatalogCommand::List => {
            for n in catalog::names() {
                let e = catalog::entry(&n, field(cli))?;
                println!("{:<18} {}", e.name, e.description);
            }
            Ok(0)
        }
        CatalogCommand::Dump { name, output } => {
            let inst = load(cli, name)?;
            write_out(output.as_deref(), &inst.write())?;
            Ok(0)
        }
        CatalogCommand::Random {
            dims,
            gate,
            enforce,
            output,
        } => {
            let f = cli.field.unwrap_or(Field::Prime(2));
            let d: [usize; 3] = dims
                .as_slice()
                .try_into()
                .map_err(|_| Error::Shape(format!("--dims takes three values, got {}", dims.len())))?;
            let mut spec = match gate {
                Some(g) => RandomSpec::for_gate(g, d, f, cli.seed)?,
                None => RandomSpec::new(d, f, cli.seed, &[]),
            };
            spec.enforce.extend(enforce.iter().cloned());
            let b: StructureBundle = catalog::random_bundle(&spec)?;
            let mut inst = Instance::from_bundle(&b);
            inst.provenance = vec![format!(
                "catalog random dims {},{},{} seed {} enforce {}",
                d[0],
                d[1],
                d[2],
                cli.seed,
                if spec.enforce.is_empty() { "-".to_string() } else { spec.enforce.join(",") }
            )];
            write_out(output.as_deref(), &inst.write())?;
            Ok(0)
        }
    }
}

fn list(what: &str) -> Result<u8> {
    match what {
        "constructions" => {
            for c in products::constructions() {
                println!("{:<28} {}", c.name(), c.describe());
            }
        }
        "oracles" => {
            for o in products::oracles() {
                println!("{:<10} {}", o.name(), o.describe());
            }
        }
        "gates" => {
            for g in gates::gates() {
                println!("{:<16} {}", g.id, g.title);
            }
        }
        "enforceable" => {
            for e in catalog::random::ENFORCEABLE {
                println!("{e}");
            }
        }
        _ => return Err(Error::UnknownId(format!("list {what}: expected constructions, oracles, gates or enforceable"))),
    }
    Ok(0)
}
