//! Command line front end: reads a net description (JSON), runs one
//! analysis, and prints a report (JSON) to stdout.
//!
//! Exit codes are a stable contract: 0 success, 1 I/O or syntax trouble,
//! 2 semantic violation, 3 resource bound exceeded. Reports are byte
//! identical across runs unless --timing is given.

use std::collections::BTreeMap;
use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand};
use serde::Serialize;
use serde_json::{json, Value};

use causalnet::closure::{closures_coincide, ClosureError};
use causalnet::logic::{interpret, Formula, Interpretation};
use causalnet::net::{Net, NetDescription, ValidationError};
use causalnet::order::Poset;
use causalnet::set::ElementSet;
use causalnet::{Lattice, LatticeError};

const EXIT_OK: u8 = 0;
const EXIT_IO_SYNTAX: u8 = 1;
const EXIT_SEMANTIC: u8 = 2;
const EXIT_RESOURCE: u8 = 3;

#[derive(Parser)]
#[command(
    name = "causalnet",
    version,
    about = "Analyze finite causal nets: axioms, cuts and lines, closed-set lattices, states, and formulas"
)]
struct Cli {
    /// Add wall-clock milliseconds to the report (makes output vary)
    #[arg(long, global = true)]
    timing: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check the causal-net axioms
    Validate(NetArg),
    /// Enumerate cuts and lines, flag B-cuts, test K-density
    Analyze(NetArg),
    /// Build the lattice of closed sets and check its laws
    Lattice(LatticeArgs),
    /// Derive and verify the two-valued state of every line
    States(SweepArg),
    /// Boolean subalgebra generated by a B-cut
    Boolean(BooleanArgs),
    /// Evaluate a formula under an atom binding and a line
    Eval(EvalArgs),
}

#[derive(Args)]
struct NetArg {
    /// Net description file
    path: PathBuf,
}

#[derive(Args)]
struct SweepArg {
    path: PathBuf,
    /// Largest net size the lattice sweep will accept
    #[arg(long, default_value_t = 16)]
    sweep_bound: usize,
}

#[derive(Args)]
struct LatticeArgs {
    path: PathBuf,
    #[arg(long, default_value_t = 16)]
    sweep_bound: usize,
    /// Also compare the two closure operators over every subset
    #[arg(long)]
    sweep_check: bool,
    /// Write the Hasse diagram to this file as DOT
    #[arg(long)]
    dot: Option<PathBuf>,
}

#[derive(Args)]
struct BooleanArgs {
    path: PathBuf,
    #[arg(long, default_value_t = 16)]
    sweep_bound: usize,
    /// Comma-separated condition names forming a B-cut
    #[arg(long)]
    cut: String,
}

#[derive(Args)]
struct EvalArgs {
    path: PathBuf,
    #[arg(long, default_value_t = 16)]
    sweep_bound: usize,
    /// Formula over the bound atoms, e.g. "f | g"
    #[arg(long)]
    formula: String,
    /// Atom binding "atom=member,names"; repeat per atom
    #[arg(long = "bind")]
    bind: Vec<String>,
    /// Comma-separated element names forming a line
    #[arg(long)]
    line: String,
}

#[derive(Serialize)]
struct NetDigest {
    conditions: usize,
    events: usize,
    arcs: usize,
}

#[derive(Serialize)]
struct Violation {
    code: String,
    message: String,
}

#[derive(Serialize)]
struct RunReport {
    command: &'static str,
    net: NetDigest,
    payload: Value,
    violations: Vec<Violation>,
    #[serde(skip_serializing_if = "Option::is_none")]
    timing_ms: Option<u128>,
}

/// Either a finished report with its exit code, or a bare message for the
/// I/O-or-syntax path that never gets as far as a report.
enum Outcome {
    Report(Box<RunReport>, u8),
    Fatal(String),
}

fn done(report: RunReport, code: u8) -> Outcome {
    Outcome::Report(Box::new(report), code)
}

fn main() -> ExitCode {
    let started = Instant::now();
    let cli = Cli::parse();
    let outcome = match &cli.command {
        Command::Validate(args) => cmd_validate(args),
        Command::Analyze(args) => cmd_analyze(args),
        Command::Lattice(args) => cmd_lattice(args),
        Command::States(args) => cmd_states(args),
        Command::Boolean(args) => cmd_boolean(args),
        Command::Eval(args) => cmd_eval(args),
    };
    match outcome {
        Outcome::Report(mut report, code) => {
            if cli.timing {
                report.timing_ms = Some(started.elapsed().as_millis());
            }
            let text = serde_json::to_string_pretty(&report).expect("report serializes");
            // a closed pipe downstream is not our failure
            match writeln!(io::stdout(), "{text}") {
                Err(e) if e.kind() != io::ErrorKind::BrokenPipe => {
                    eprintln!("causalnet: stdout: {e}");
                    ExitCode::from(EXIT_IO_SYNTAX)
                }
                _ => ExitCode::from(code),
            }
        }
        Outcome::Fatal(message) => {
            eprintln!("causalnet: {message}");
            ExitCode::from(EXIT_IO_SYNTAX)
        }
    }
}

fn violation(code: &str, message: impl ToString) -> Violation {
    Violation {
        code: code.to_string(),
        message: message.to_string(),
    }
}

fn report(command: &'static str, digest: NetDigest, payload: Value) -> RunReport {
    RunReport {
        command,
        net: digest,
        payload,
        violations: Vec::new(),
        timing_ms: None,
    }
}

fn digest_of(desc: &NetDescription) -> NetDigest {
    NetDigest {
        conditions: desc.conditions.len(),
        events: desc.events.len(),
        arcs: desc.arcs.len(),
    }
}

fn read_description(path: &Path) -> Result<NetDescription, Outcome> {
    let text = fs::read_to_string(path)
        .map_err(|e| Outcome::Fatal(format!("{}: {e}", path.display())))?;
    NetDescription::parse(&text)
        .map_err(|e| Outcome::Fatal(format!("{}: {e}", path.display())))
}

/// Validation failures become a report: resource class exits 3, the
/// axiom violations exit 2.
fn validated(
    command: &'static str,
    desc: NetDescription,
) -> Result<(Net, NetDigest), Outcome> {
    let digest = digest_of(&desc);
    match desc.validate() {
        Ok(net) => Ok((net, digest)),
        Err(err) => {
            let code = match err {
                ValidationError::TooLarge { .. } => EXIT_RESOURCE,
                _ => EXIT_SEMANTIC,
            };
            let mut rep = report(command, digest, json!({ "valid": false }));
            rep.violations.push(violation(err.code(), &err));
            Err(done(rep, code))
        }
    }
}

fn name_list(net: &Net, set: ElementSet) -> Vec<String> {
    net.names(set).into_iter().map(str::to_string).collect()
}

fn parse_set(net: &Net, text: &str) -> Result<ElementSet, Violation> {
    let names = text.split(',').map(str::trim).filter(|s| !s.is_empty());
    net.set_from_names(names)
        .map_err(|e| violation("unknown-element", e))
}

fn lattice_error(err: &LatticeError) -> (Violation, u8) {
    let code = match err {
        LatticeError::BoundExceeded { .. } => return (violation("bound-exceeded", err), EXIT_RESOURCE),
        LatticeError::NotAMember { .. } => "not-a-member",
        LatticeError::NotALine { .. } => "not-a-line",
        LatticeError::NotABCut { .. } => "not-a-b-cut",
        LatticeError::NotOrthogonal { .. } => "not-orthogonal",
        LatticeError::JoinNotTop { .. } => "join-not-top",
        LatticeError::NotDistributive { .. } => "not-distributive",
    };
    (violation(code, err), EXIT_SEMANTIC)
}

fn build_lattice(
    command: &'static str,
    net: &Net,
    poset: &Poset,
    digest: &NetDigest,
    bound: usize,
) -> Result<Lattice, Outcome> {
    Lattice::build(net, poset, bound).map_err(|err| {
        let (v, code) = lattice_error(&err);
        let mut rep = report(
            command,
            NetDigest { ..*digest },
            json!({}),
        );
        rep.violations.push(v);
        done(rep, code)
    })
}

fn cmd_validate(args: &NetArg) -> Outcome {
    let desc = match read_description(&args.path) {
        Ok(d) => d,
        Err(o) => return o,
    };
    match validated("validate", desc) {
        Ok((net, digest)) => {
            let payload = json!({ "valid": true, "simple": net.is_simple() });
            done(report("validate", digest, payload), EXIT_OK)
        }
        Err(outcome) => outcome,
    }
}

fn cmd_analyze(args: &NetArg) -> Outcome {
    let desc = match read_description(&args.path) {
        Ok(d) => d,
        Err(o) => return o,
    };
    let (net, digest) = match validated("analyze", desc) {
        Ok(pair) => pair,
        Err(o) => return o,
    };
    let poset = Poset::from_net(&net);
    let cuts: Vec<Value> = poset
        .cuts()
        .iter()
        .map(|cut| {
            json!({
                "members": name_list(&net, cut.members()),
                "b_cut": poset.is_b_cut(cut),
            })
        })
        .collect();
    let lines: Vec<Vec<String>> = poset
        .lines()
        .iter()
        .map(|line| name_list(&net, line.members()))
        .collect();
    let density = poset.k_density();
    let witness = density.witness.as_ref().map(|(cut, line)| {
        json!({
            "cut": name_list(&net, cut.members()),
            "line": name_list(&net, line.members()),
        })
    });
    let payload = json!({
        "cuts": cuts,
        "lines": lines,
        "k_dense": density.k_dense,
        "witness": witness,
    });
    done(report("analyze", digest, payload), EXIT_OK)
}

fn cmd_lattice(args: &LatticeArgs) -> Outcome {
    let desc = match read_description(&args.path) {
        Ok(d) => d,
        Err(o) => return o,
    };
    let (net, digest) = match validated("lattice", desc) {
        Ok(pair) => pair,
        Err(o) => return o,
    };
    let poset = Poset::from_net(&net);
    let lattice = match build_lattice("lattice", &net, &poset, &digest, args.sweep_bound) {
        Ok(l) => l,
        Err(o) => return o,
    };

    let mut violations = Vec::new();
    let ortholattice = lattice.check_ortholattice();
    if let Err(v) = &ortholattice {
        violations.push(violation("ortholattice-law", format!("{v:?}")));
    }
    let orthomodular = lattice.check_orthomodular();
    if let Err(v) = &orthomodular {
        violations.push(violation("orthomodular-law", format!("{v:?}")));
    }

    let mut payload = serde_json::Map::new();
    payload.insert("elements".into(), json!(lattice.len()));
    payload.insert(
        "members".into(),
        json!(lattice
            .elements()
            .iter()
            .map(|&m| name_list(&net, m))
            .collect::<Vec<_>>()),
    );
    payload.insert("hasse_covers".into(), json!(lattice.hasse()));
    payload.insert("ortholattice".into(), json!(ortholattice.is_ok()));
    payload.insert("orthomodular".into(), json!(orthomodular.is_ok()));

    if args.sweep_check {
        match closures_coincide(&net, &poset, args.sweep_bound) {
            Ok(coincidence) => {
                if let Some(gap) = &coincidence.counterexample {
                    violations.push(violation(
                        "closure-divergence",
                        format!(
                            "closures differ on {:?}",
                            name_list(&net, gap.subset)
                        ),
                    ));
                }
                payload.insert(
                    "coincidence".into(),
                    json!({
                        "subsets_checked": coincidence.subsets_checked,
                        "coincide": coincidence.coincide(),
                    }),
                );
            }
            Err(err @ ClosureError::BoundExceeded { .. }) => {
                let mut rep = report("lattice", digest, Value::Object(payload));
                rep.violations.push(violation("bound-exceeded", err));
                return done(rep, EXIT_RESOURCE);
            }
        }
    }

    if let Some(dot_path) = &args.dot {
        if let Err(e) = fs::write(dot_path, render_dot(&net, &lattice)) {
            return Outcome::Fatal(format!("{}: {e}", dot_path.display()));
        }
        payload.insert("dot_written".into(), json!(dot_path.display().to_string()));
    }

    let exit = if violations.is_empty() { EXIT_OK } else { EXIT_SEMANTIC };
    let mut rep = report("lattice", digest, Value::Object(payload));
    rep.violations = violations;
    done(rep, exit)
}

fn cmd_states(args: &SweepArg) -> Outcome {
    let desc = match read_description(&args.path) {
        Ok(d) => d,
        Err(o) => return o,
    };
    let (net, digest) = match validated("states", desc) {
        Ok(pair) => pair,
        Err(o) => return o,
    };
    let poset = Poset::from_net(&net);
    let lattice = match build_lattice("states", &net, &poset, &digest, args.sweep_bound) {
        Ok(l) => l,
        Err(o) => return o,
    };

    let bound = lattice.default_family_bound();
    let mut violations = Vec::new();
    let mut states = Vec::new();
    for line in poset.lines() {
        let state = lattice
            .line_state(&poset, line.members())
            .expect("enumerated lines are lines");
        match lattice.verify_state(&state, bound) {
            Ok(check) => states.push(json!({
                "line": name_list(&net, line.members()),
                "values": state.values,
                "families_checked": check.families_checked,
            })),
            Err(broken) => {
                violations.push(violation(
                    "state-violation",
                    format!("line {:?}: {broken:?}", name_list(&net, line.members())),
                ));
                states.push(json!({
                    "line": name_list(&net, line.members()),
                    "values": state.values,
                }));
            }
        }
    }
    let payload = json!({
        "members": lattice
            .elements()
            .iter()
            .map(|&m| name_list(&net, m))
            .collect::<Vec<_>>(),
        "family_bound": bound,
        "states": states,
        "all_verified": violations.is_empty(),
    });
    let exit = if violations.is_empty() { EXIT_OK } else { EXIT_SEMANTIC };
    let mut rep = report("states", digest, payload);
    rep.violations = violations;
    done(rep, exit)
}

fn cmd_boolean(args: &BooleanArgs) -> Outcome {
    let desc = match read_description(&args.path) {
        Ok(d) => d,
        Err(o) => return o,
    };
    let (net, digest) = match validated("boolean", desc) {
        Ok(pair) => pair,
        Err(o) => return o,
    };
    let poset = Poset::from_net(&net);
    let lattice = match build_lattice("boolean", &net, &poset, &digest, args.sweep_bound) {
        Ok(l) => l,
        Err(o) => return o,
    };

    let fail = |v: Violation, digest: NetDigest| {
        let mut rep = report("boolean", digest, json!({}));
        rep.violations.push(v);
        done(rep, EXIT_SEMANTIC)
    };

    let set = match parse_set(&net, &args.cut) {
        Ok(s) => s,
        Err(v) => return fail(v, digest),
    };
    let Some(cut) = poset.as_cut(set) else {
        return fail(
            violation(
                "not-a-cut",
                format!("{:?} is not a maximal coset", name_list(&net, set)),
            ),
            digest,
        );
    };
    match lattice.boolean_from_bcut(&poset, &cut) {
        Ok(block) => {
            let payload = json!({
                "cut": name_list(&net, cut.members()),
                "atoms": block
                    .atoms
                    .iter()
                    .map(|&a| name_list(&net, a))
                    .collect::<Vec<_>>(),
                "carrier": block
                    .carrier
                    .iter()
                    .map(|&c| name_list(&net, c))
                    .collect::<Vec<_>>(),
                "distributive": true,
            });
            done(report("boolean", digest, payload), EXIT_OK)
        }
        Err(err) => {
            let (v, code) = lattice_error(&err);
            let mut rep = report("boolean", digest, json!({}));
            rep.violations.push(v);
            done(rep, code)
        }
    }
}

fn cmd_eval(args: &EvalArgs) -> Outcome {
    let formula = match Formula::parse(&args.formula) {
        Ok(f) => f,
        Err(e) => return Outcome::Fatal(format!("formula: {e}")),
    };
    let desc = match read_description(&args.path) {
        Ok(d) => d,
        Err(o) => return o,
    };
    let (net, digest) = match validated("eval", desc) {
        Ok(pair) => pair,
        Err(o) => return o,
    };
    let poset = Poset::from_net(&net);
    let lattice = match build_lattice("eval", &net, &poset, &digest, args.sweep_bound) {
        Ok(l) => l,
        Err(o) => return o,
    };

    let fail = |v: Violation, digest: NetDigest| {
        let mut rep = report("eval", digest, json!({}));
        rep.violations.push(v);
        done(rep, EXIT_SEMANTIC)
    };

    let mut binding = BTreeMap::new();
    for item in &args.bind {
        let Some((atom, names)) = item.split_once('=') else {
            return Outcome::Fatal(format!(
                "binding {item:?} must look like atom=member,names"
            ));
        };
        let set = match parse_set(&net, names) {
            Ok(s) => s,
            Err(v) => return fail(v, digest),
        };
        binding.insert(atom.trim().to_string(), set);
    }
    let line = match parse_set(&net, &args.line) {
        Ok(s) => s,
        Err(v) => return fail(v, digest),
    };

    let them = match Interpretation::new(&lattice, &poset, binding, line) {
        Ok(i) => i,
        Err(causalnet::logic::LogicError::Lattice(err)) => {
            let (v, code) = lattice_error(&err);
            let mut rep = report("eval", digest, json!({}));
            rep.violations.push(v);
            return done(rep, code);
        }
        Err(other) => return fail(violation("unbound-atom", other), digest),
    };

    let value = match interpret(&formula, them.binding(), &lattice) {
        Ok(v) => v,
        Err(causalnet::logic::LogicError::UnboundAtom { name }) => {
            return fail(
                violation("unbound-atom", format!("atom {name:?} has no binding")),
                digest,
            )
        }
        Err(causalnet::logic::LogicError::Lattice(err)) => {
            let (v, code) = lattice_error(&err);
            let mut rep = report("eval", digest, json!({}));
            rep.violations.push(v);
            return done(rep, code);
        }
    };
    let satisfied = value.intersects(&line);

    let payload = json!({
        "formula": formula.to_string(),
        "binding": them
            .binding()
            .iter()
            .map(|(atom, &set)| (atom.clone(), name_list(&net, set)))
            .collect::<BTreeMap<String, Vec<String>>>(),
        "line": name_list(&net, line),
        "value": name_list(&net, value),
        "satisfied": satisfied,
    });
    done(report("eval", digest, payload), EXIT_OK)
}

/// Hasse diagram in DOT: one node per lattice member labeled with its
/// member list, one edge per cover pair, drawn bottom-up.
fn render_dot(net: &Net, lattice: &Lattice) -> String {
    let mut out = String::from("digraph lattice {\n  rankdir=BT;\n  node [shape=box];\n");
    for (i, &member) in lattice.elements().iter().enumerate() {
        let label = name_list(net, member).join(", ");
        out.push_str(&format!("  n{i} [label=\"{{{label}}}\"];\n"));
    }
    for (lower, upper) in lattice.hasse() {
        out.push_str(&format!("  n{lower} -> n{upper};\n"));
    }
    out.push_str("}\n");
    out
}
