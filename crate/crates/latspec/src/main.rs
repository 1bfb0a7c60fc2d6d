//! Command-line front end: batch reproduction of catalog verification,
//! product closures, free lattices, and spectrum enumerations.
//!
//! Exit status: 0 on success, 1 on domain errors (non-lattice input, closure
//! capacity, verification or `--expect` mismatches), 2 on usage and parse
//! errors.

use latspec::catalog::{self, Catalog, CatalogError};
use latspec::product::{self, GeneratedLattice};
use latspec::runfile;
use latspec::spectra::{self, GenMode, SpectrumMode, SpectrumOptions};
use std::collections::BTreeSet;
use std::path::PathBuf;
use std::sync::atomic::{AtomicU64, Ordering};
use std::time::Duration;

const USAGE: &str = "\
latspec - finite lattice workbench

usage:
  latspec validate --catalog DIR [--run FILE]
  latspec catalog-verify DIR
  latspec closure --catalog DIR --run FILE [--budget N] [--dump-elements] [--dot]
  latspec free --catalog DIR --run FILE [--budget N]
  latspec spectrum --catalog DIR --run FILE --mode atoms|coatoms|double
                   [--jobs N] [--budget N] [--expect SET] [--log-per-subset]
                   [--format text|machine]
  latspec genrunfile --catalog DIR --mode atoms|double --lattices A,B,C [--output FILE]
  latspec dual --catalog DIR --name NAME

The LATSPEC_BUDGET environment variable overrides the default closure element
budget (2^20); a --budget flag overrides both.
";

struct UsageError(String);

enum CliError {
    Domain(String),
    Usage(String),
}

impl From<UsageError> for CliError {
    fn from(e: UsageError) -> Self {
        CliError::Usage(e.0)
    }
}

impl From<CatalogError> for CliError {
    fn from(e: CatalogError) -> Self {
        match e {
            CatalogError::Io { .. } | CatalogError::Syntax { .. } => {
                CliError::Usage(e.to_string())
            }
            _ => CliError::Domain(e.to_string()),
        }
    }
}

fn main() {
    let args: Vec<String> = std::env::args().skip(1).collect();
    let code = match run(&args) {
        Ok(()) => 0,
        Err(CliError::Domain(msg)) => {
            eprintln!("error: {msg}");
            1
        }
        Err(CliError::Usage(msg)) => {
            eprintln!("error: {msg}");
            eprintln!("{USAGE}");
            2
        }
    };
    std::process::exit(code);
}

fn run(args: &[String]) -> Result<(), CliError> {
    let sub = args.first().ok_or(UsageError("missing subcommand".into()))?;
    let rest = &args[1..];
    match sub.as_str() {
        "validate" => cmd_validate(rest),
        "catalog-verify" => cmd_catalog_verify(rest),
        "closure" => cmd_closure(rest),
        "free" => cmd_free(rest),
        "spectrum" => cmd_spectrum(rest),
        "genrunfile" => cmd_genrunfile(rest),
        "dual" => cmd_dual(rest),
        "--help" | "-h" | "help" => {
            print!("{USAGE}");
            Ok(())
        }
        other => Err(UsageError(format!("unknown subcommand `{other}`")).into()),
    }
}

/// Minimal flag walker: --key value pairs, bare switches, and positionals.
struct Flags {
    values: Vec<(String, String)>,
    switches: Vec<String>,
    positionals: Vec<String>,
}

impl Flags {
    fn parse(args: &[String], switch_names: &[&str]) -> Result<Flags, UsageError> {
        let mut f = Flags { values: Vec::new(), switches: Vec::new(), positionals: Vec::new() };
        let mut i = 0;
        while i < args.len() {
            let a = &args[i];
            if let Some(name) = a.strip_prefix("--") {
                if switch_names.contains(&name) {
                    f.switches.push(name.to_string());
                    i += 1;
                } else {
                    let v = args
                        .get(i + 1)
                        .ok_or_else(|| UsageError(format!("flag --{name} needs a value")))?;
                    f.values.push((name.to_string(), v.clone()));
                    i += 2;
                }
            } else {
                f.positionals.push(a.clone());
                i += 1;
            }
        }
        Ok(f)
    }

    fn get(&self, name: &str) -> Option<&str> {
        self.values.iter().rev().find(|(k, _)| k == name).map(|(_, v)| v.as_str())
    }

    fn has(&self, name: &str) -> bool {
        self.switches.iter().any(|s| s == name)
    }

    fn require(&self, name: &str) -> Result<&str, UsageError> {
        self.get(name)
            .ok_or_else(|| UsageError(format!("missing required flag --{name}")))
    }
}

fn load_catalog(flags: &Flags) -> Result<Catalog, CliError> {
    let dir = flags.require("catalog")?;
    Ok(catalog::load_catalog_dir(&PathBuf::from(dir))?)
}

fn budget_from(flags: &Flags) -> Result<usize, CliError> {
    if let Some(b) = flags.get("budget") {
        let v = b
            .parse::<usize>()
            .map_err(|_| CliError::Usage(format!("invalid --budget `{b}`")))?;
        if v == 0 {
            return Err(CliError::Usage("--budget must be at least 1".into()));
        }
        return Ok(v);
    }
    if let Ok(env) = std::env::var("LATSPEC_BUDGET") {
        return env
            .parse::<usize>()
            .map_err(|_| CliError::Usage(format!("invalid LATSPEC_BUDGET `{env}`")));
    }
    Ok(product::DEFAULT_BUDGET)
}

fn read_run_file(flags: &Flags, cat: &Catalog) -> Result<runfile::RunSpec, CliError> {
    let path = flags.require("run")?;
    let text =
        std::fs::read_to_string(path).map_err(|e| CliError::Usage(format!("{path}: {e}")))?;
    runfile::parse_run_file(&text, cat).map_err(|e| CliError::Usage(format!("{path}: {e}")))
}

fn cmd_validate(args: &[String]) -> Result<(), CliError> {
    let flags = Flags::parse(args, &[])?;
    let cat = load_catalog(&flags)?;
    let mut bad = 0;
    for name in cat.names() {
        let l = cat.get(name).unwrap();
        let violations = latspec::lattice::validate_axioms(l);
        if !violations.is_empty() {
            bad += violations.len();
            println!("{name}: {} axiom violations", violations.len());
        }
    }
    println!("catalog ok: {} lattices, {} axiom violations", cat.len(), bad);
    if flags.get("run").is_some() {
        let rs = read_run_file(&flags, &cat)?;
        println!(
            "run file ok: {} assignments, {} constraints",
            rs.assignments.len(),
            rs.constraints.len()
        );
    }
    if bad > 0 {
        return Err(CliError::Domain(format!("{bad} axiom violations")));
    }
    Ok(())
}

fn cmd_catalog_verify(args: &[String]) -> Result<(), CliError> {
    let flags = Flags::parse(args, &[])?;
    let dir = flags
        .positionals
        .first()
        .map(String::as_str)
        .or_else(|| flags.get("catalog"))
        .ok_or_else(|| UsageError("catalog-verify needs a catalog directory".into()))?;
    let cat = catalog::load_catalog_dir(&PathBuf::from(dir))?;
    let report = catalog::verify_catalog(&cat);
    for e in &report.entries {
        let sep = match e.monolith_separating {
            Some((z, o)) => format!("monolith 0-sep={z} 1-sep={o}"),
            None => "no monolith".to_string(),
        };
        print!(
            "{}: n={} |Aut|={} SI={} {} meet-cond={} join-cond={}",
            e.name, e.size, e.aut, e.si, sep, e.conditions.0, e.conditions.1
        );
        if e.mismatches.is_empty() {
            println!();
        } else {
            println!("  MISMATCH: {}", e.mismatches.join("; "));
        }
    }
    let n = report.mismatch_count();
    println!("verified {} entries, {} mismatches", report.entries.len(), n);
    if n > 0 {
        return Err(CliError::Domain(format!("{n} catalog mismatches")));
    }
    Ok(())
}

fn run_closure(flags: &Flags) -> Result<(GeneratedLattice, runfile::RunSpec), CliError> {
    let cat = load_catalog(flags)?;
    let rs = read_run_file(flags, &cat)?;
    let budget = budget_from(flags)?;
    let g =
        spectra::free_lattice(&rs, &cat, budget).map_err(|e| CliError::Domain(e.to_string()))?;
    Ok((g, rs))
}

fn cmd_closure(args: &[String]) -> Result<(), CliError> {
    let flags = Flags::parse(args, &["dump-elements", "dot"])?;
    let (g, _) = run_closure(&flags)?;
    println!(
        "n={} atoms={} coatoms={}",
        g.element_count(),
        g.count_atoms(),
        g.count_coatoms()
    );
    if flags.has("dump-elements") {
        for &e in g.elements() {
            println!("{}", g.format_element(e));
        }
    }
    if flags.has("dot") {
        if g.element_count() > 200 {
            return Err(CliError::Domain(format!(
                "dot output is limited to 200 elements, closure has {}",
                g.element_count()
            )));
        }
        print!("{}", render_dot(&g));
    }
    Ok(())
}

fn cmd_free(args: &[String]) -> Result<(), CliError> {
    let flags = Flags::parse(args, &[])?;
    let cat = load_catalog(&flags)?;
    let rs = read_run_file(&flags, &cat)?;
    let budget = budget_from(&flags)?;
    let report = spectra::free_report(&rs, &cat, budget)
        .map_err(|e| CliError::Domain(e.to_string()))?;
    let rec = report.per_subset.as_ref().and_then(|l| l.first()).copied();
    let rec = rec.expect("free report logs its single closure");
    println!(
        "assignments={} n={} atoms={} coatoms={}",
        rs.assignments.len(),
        rec.elements,
        rec.atoms.unwrap_or(0),
        rec.coatoms.unwrap_or(0)
    );
    Ok(())
}

fn render_dot(g: &GeneratedLattice) -> String {
    let mut out = String::from("digraph lattice {\n  rankdir=BT;\n  node [shape=plaintext];\n");
    for &(u, v) in &g.cover_pairs() {
        out.push_str(&format!(
            "  \"{}\" -> \"{}\";\n",
            g.format_element(u),
            g.format_element(v)
        ));
    }
    out.push_str("}\n");
    out
}

fn parse_mode(s: &str) -> Result<SpectrumMode, UsageError> {
    match s {
        "atoms" => Ok(SpectrumMode::Atoms),
        "coatoms" => Ok(SpectrumMode::Coatoms),
        "double" => Ok(SpectrumMode::Double),
        other => Err(UsageError(format!("invalid --mode `{other}`"))),
    }
}

fn format_int_set(s: &BTreeSet<usize>) -> String {
    let items: Vec<String> = s.iter().map(|v| v.to_string()).collect();
    format!("{{{}}}", items.join(","))
}

fn format_pair_set(s: &BTreeSet<(usize, usize)>) -> String {
    let items: Vec<String> = s.iter().map(|(a, b)| format!("({a},{b})")).collect();
    format!("{{{}}}", items.join(","))
}

fn parse_int_set(s: &str) -> Result<BTreeSet<usize>, UsageError> {
    let inner = s
        .trim()
        .strip_prefix('{')
        .and_then(|t| t.strip_suffix('}'))
        .ok_or_else(|| UsageError(format!("expected a set like {{1,2,3}}, got `{s}`")))?;
    let mut out = BTreeSet::new();
    for part in inner.split(',') {
        let part = part.trim();
        if part.is_empty() {
            continue;
        }
        out.insert(
            part.parse::<usize>()
                .map_err(|_| UsageError(format!("invalid set element `{part}`")))?,
        );
    }
    Ok(out)
}

fn parse_pair_set(s: &str) -> Result<BTreeSet<(usize, usize)>, UsageError> {
    let inner = s
        .trim()
        .strip_prefix('{')
        .and_then(|t| t.strip_suffix('}'))
        .ok_or_else(|| UsageError(format!("expected a set like {{(1,1),(1,2)}}, got `{s}`")))?;
    let mut out = BTreeSet::new();
    let mut rest = inner.trim();
    while !rest.is_empty() {
        rest = rest.trim_start_matches(',').trim_start();
        if rest.is_empty() {
            break;
        }
        let body = rest
            .strip_prefix('(')
            .ok_or_else(|| UsageError(format!("expected `(a,b)` in `{s}`")))?;
        let close = body
            .find(')')
            .ok_or_else(|| UsageError(format!("unclosed pair in `{s}`")))?;
        let (pair, tail) = body.split_at(close);
        let (a, b) = pair
            .split_once(',')
            .ok_or_else(|| UsageError(format!("expected `a,b` inside pair in `{s}`")))?;
        let a = a
            .trim()
            .parse::<usize>()
            .map_err(|_| UsageError(format!("invalid pair element `{a}`")))?;
        let b = b
            .trim()
            .parse::<usize>()
            .map_err(|_| UsageError(format!("invalid pair element `{b}`")))?;
        out.insert((a, b));
        rest = &tail[1..];
    }
    Ok(out)
}

fn cmd_spectrum(args: &[String]) -> Result<(), CliError> {
    let flags = Flags::parse(args, &["log-per-subset"])?;
    let cat = load_catalog(&flags)?;
    let rs = read_run_file(&flags, &cat)?;
    let mode = parse_mode(flags.require("mode")?)?;
    let budget = budget_from(&flags)?;
    let jobs = match flags.get("jobs") {
        Some(j) => j
            .parse::<usize>()
            .ok()
            .filter(|&v| v >= 1)
            .ok_or_else(|| UsageError(format!("invalid --jobs `{j}`")))?,
        None => std::thread::available_parallelism().map(|n| n.get()).unwrap_or(1),
    };
    let machine = match flags.get("format").unwrap_or("text") {
        "text" => false,
        "machine" => true,
        other => return Err(UsageError(format!("invalid --format `{other}`")).into()),
    };
    let opts = SpectrumOptions { jobs, budget, log_per_subset: flags.has("log-per-subset") };

    // progress to stderr, results to stdout
    let progress = AtomicU64::new(0);
    let done = AtomicU64::new(0);
    let total = (1u64 << rs.assignments.len().min(63)) - 1;
    let report = std::thread::scope(|scope| {
        let progress_ref = &progress;
        let done_ref = &done;
        let reporter = scope.spawn(move || loop {
            for _ in 0..20 {
                std::thread::sleep(Duration::from_millis(100));
                if done_ref.load(Ordering::Relaxed) == 1 {
                    return;
                }
            }
            let p = progress_ref.load(Ordering::Relaxed);
            eprintln!("progress: {p}/{total} masks");
        });
        let r = spectra::enumerate_spectrum(&rs, &cat, mode, &opts, Some(progress_ref));
        done.store(1, Ordering::Relaxed);
        let _ = reporter.join();
        r
    })
    .map_err(|e| CliError::Domain(e.to_string()))?;

    if let Some(log) = &report.per_subset {
        for r in log {
            print!("mask={:x} n={}", r.mask, r.elements);
            if let Some(a) = r.atoms {
                print!(" atoms={a}");
            }
            if let Some(c) = r.coatoms {
                print!(" coatoms={c}");
            }
            println!();
        }
    }
    if !machine {
        println!(
            "subsets: total={} valid={} skipped={}",
            report.subsets_total, report.subsets_valid, report.subsets_skipped
        );
    }
    let (label, summary) = match mode {
        SpectrumMode::Atoms => ("AS", format_int_set(&report.atom_set)),
        SpectrumMode::Coatoms => ("CS", format_int_set(&report.coatom_set)),
        SpectrumMode::Double | SpectrumMode::Free => ("DS", format_pair_set(&report.pair_set)),
    };
    println!("{label}={summary}");

    if let Some(expect) = flags.get("expect") {
        let ok = match mode {
            SpectrumMode::Atoms => parse_int_set(expect)? == report.atom_set,
            SpectrumMode::Coatoms => parse_int_set(expect)? == report.coatom_set,
            SpectrumMode::Double | SpectrumMode::Free => {
                parse_pair_set(expect)? == report.pair_set
            }
        };
        if !ok {
            return Err(CliError::Domain(format!(
                "computed {label}={summary} does not match --expect {expect}"
            )));
        }
    }
    Ok(())
}

fn cmd_genrunfile(args: &[String]) -> Result<(), CliError> {
    let flags = Flags::parse(args, &[])?;
    let cat = load_catalog(&flags)?;
    let mode = match flags.require("mode")? {
        "atoms" => GenMode::Atoms,
        "double" => GenMode::Double,
        other => return Err(UsageError(format!("invalid --mode `{other}`")).into()),
    };
    let list = flags.require("lattices")?;
    let names: Vec<&str> =
        list.split(',').map(|s| s.trim()).filter(|s| !s.is_empty()).collect();
    if names.is_empty() {
        return Err(UsageError("--lattices needs at least one name".into()).into());
    }
    let rs = spectra::generate_run_spec(&cat, &names, mode)
        .map_err(|e| CliError::Usage(e.to_string()))?;
    let text = runfile::render_run_file(&rs);
    match flags.get("output") {
        Some(path) => {
            std::fs::write(path, &text).map_err(|e| CliError::Usage(format!("{path}: {e}")))?
        }
        None => print!("{text}"),
    }
    Ok(())
}

fn cmd_dual(args: &[String]) -> Result<(), CliError> {
    let flags = Flags::parse(args, &[])?;
    let cat = load_catalog(&flags)?;
    let name = flags.require("name")?;
    let l = cat
        .get(name)
        .ok_or_else(|| UsageError(format!("unknown lattice `{name}`")))?;
    let g = l.dual().to_cover_graph();
    println!("lattice {}", g.name);
    println!("elements {}", g.elements.join(" "));
    let covers: Vec<String> = g.covers.iter().map(|(a, b)| format!("{a}<{b}")).collect();
    println!("covers {}", covers.join(" "));
    println!("end");
    Ok(())
}
