use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use polarity::bits::BitSet;
use polarity::classification::{fundamental_witness, Classification};
use polarity::concept_lattice::{concepts, ConceptLattice};
use polarity::error::Error;
use polarity::galois::GaloisConnection;
use polarity::io::json::{ConnectionJson, ContextJson, InfomorphismJson, LatticeJson, PolarJson};
use polarity::io::{emit_cxt, emit_dot, parse_cxt};
use polarity::verify;

#[derive(Parser)]
#[command(name = "polarity", version, about = "Formal contexts, concept lattices and Galois connections")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Seed for generated cases.
    #[arg(long, global = true, default_value_t = 7)]
    seed: u64,
    /// Write the result here instead of standard output.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Output format. Each subcommand accepts a subset.
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Cxt,
    Dot,
}

#[derive(Subcommand)]
enum Command {
    /// List the formal concepts of a context (CXT or JSON).
    Concepts { input: PathBuf },
    /// Hasse diagram of the concept lattice as DOT.
    LatticeDot { input: PathBuf },
    /// Validate an infomorphism bundle.
    CheckInfo { input: PathBuf },
    /// Validate a Galois connection bundle.
    CheckGalois { input: PathBuf },
    /// Polar factorization of a Galois connection bundle.
    Factorize { input: PathBuf },
    /// Concept lattice of a context.
    Clg { input: PathBuf },
    /// Context read off a concept lattice bundle.
    Clsn { input: PathBuf },
    /// Rebuild a context through its concept lattice and compare.
    Roundtrip { input: PathBuf },
    /// Closed theories of a context and the closure of every type subset.
    Theories { input: PathBuf },
    /// Run the law battery on an input, or on seeded cases when none is given.
    Verify { input: Option<PathBuf> },
}

/// Why the command stopped. Usage covers unreadable or malformed input.
enum Failure {
    Usage(String),
    Violation(Value),
}

impl From<Failure> for ExitCode {
    fn from(f: Failure) -> Self {
        match f {
            Failure::Usage(msg) => {
                eprintln!("error: {msg}");
                ExitCode::from(2)
            }
            Failure::Violation(w) => {
                println!("{}", serde_json::to_string_pretty(&w).expect("witness serializes"));
                ExitCode::from(1)
            }
        }
    }
}

type Outcome = Result<String, Failure>;

fn usage(e: impl std::fmt::Display) -> Failure {
    Failure::Usage(e.to_string())
}

fn read(path: &Path) -> Result<String, Failure> {
    std::fs::read_to_string(path).map_err(|e| usage(format!("{}: {e}", path.display())))
}

fn is_json(text: &str) -> bool {
    text.trim_start().starts_with('{')
}

fn parse_json<T: serde::de::DeserializeOwned>(text: &str) -> Result<T, Failure> {
    serde_json::from_str(text).map_err(|e| usage(format!("malformed JSON: {e}")))
}

/// A context from CXT or JSON, told apart by the first character.
fn read_context(path: &Path) -> Result<Classification, Failure> {
    let text = read(path)?;
    if is_json(&text) {
        parse_json::<ContextJson>(&text)?.decode().map_err(usage)
    } else {
        parse_cxt(&text).map_err(usage)
    }
}

fn lattice(a: &Classification) -> Result<ConceptLattice, Failure> {
    ConceptLattice::of(a).map_err(usage)
}

fn pretty(v: &impl serde::Serialize) -> String {
    serde_json::to_string_pretty(v).expect("serializable") + "\n"
}

fn labels(set: &BitSet, names: &[String]) -> Vec<String> {
    set.iter().map(|i| names[i].clone()).collect()
}

fn violation(law: &str, e: &Error, detail: Value) -> Failure {
    Failure::Violation(json!({
        "valid": false,
        "law": law,
        "message": e.to_string(),
        "error": e,
        "witness": detail,
    }))
}

fn format_for(cmd: &str, chosen: Option<Format>, allowed: &[Format]) -> Result<Format, Failure> {
    match chosen {
        None => Ok(allowed[0]),
        Some(f) if allowed.contains(&f) => Ok(f),
        Some(_) => Err(usage(format!("{cmd} does not support the requested --format"))),
    }
}

fn cmd_concepts(input: &Path) -> Outcome {
    let a = read_context(input)?;
    let cs = concepts(&a).map_err(usage)?;
    let list: Vec<Value> = cs
        .iter()
        .map(|c| json!({"extent": labels(&c.extent, a.instances()), "intent": labels(&c.intent, a.types())}))
        .collect();
    Ok(pretty(&list))
}

fn cmd_check_info(input: &Path) -> Outcome {
    let bundle: InfomorphismJson = parse_json(&read(input)?)?;
    let src = bundle.source.decode().map_err(usage)?;
    let tgt = bundle.target.decode().map_err(usage)?;
    match bundle.decode() {
        Ok(f) => Ok(pretty(&json!({
            "valid": true,
            "instances": f.inst_map().map().len(),
            "types": f.typ_map().map().len(),
        }))),
        Err(e @ Error::FundamentalConditionViolated { .. }) => {
            let (x2, y1) = fundamental_witness(&src, &tgt, &bundle.inst_map, &bundle.typ_map)
                .ok()
                .flatten()
                .expect("violation has a witness");
            let (x1, y2) = (bundle.inst_map[x2], bundle.typ_map[y1]);
            Err(violation(
                "fundamental condition",
                &e,
                json!({
                    "target_instance": tgt.instances()[x2],
                    "source_type": src.types()[y1],
                    "source_holds": src.holds(x1, y1),
                    "target_holds": tgt.holds(x2, y2),
                    "mapped_instance": src.instances()[x1],
                    "mapped_type": tgt.types()[y2],
                }),
            ))
        }
        Err(e) => Err(violation("map shape", &e, Value::Null)),
    }
}

fn connection_witness(bundle: &ConnectionJson, e: &Error) -> Value {
    let src = &bundle.source.elements;
    let tgt = &bundle.target.elements;
    match *e {
        Error::AdjointnessViolated { a, b, left_holds, right_holds } => json!({
            "source": src[a], "target": tgt[b],
            "left_of_source": tgt[bundle.left[a]], "right_of_target": src[bundle.right[b]],
            "left_holds": left_holds, "right_holds": right_holds,
        }),
        Error::NotMonotone { side, a, b } => {
            let (dom, cod, map) = match side {
                polarity::error::Side::Left => (src, tgt, &bundle.left),
                polarity::error::Side::Right => (tgt, src, &bundle.right),
            };
            json!({"side": side, "lower": dom[a], "upper": dom[b], "lower_image": cod[map[a]], "upper_image": cod[map[b]]})
        }
        _ => Value::Null,
    }
}

fn read_connection(input: &Path) -> Result<(ConnectionJson, Result<GaloisConnection, Error>), Failure> {
    let bundle: ConnectionJson = parse_json(&read(input)?)?;
    bundle.source.decode().map_err(usage)?;
    bundle.target.decode().map_err(usage)?;
    let g = bundle.decode();
    Ok((bundle, g))
}

fn cmd_check_galois(input: &Path) -> Outcome {
    let (bundle, g) = read_connection(input)?;
    match g {
        Ok(g) => {
            let kind = g.classify();
            Ok(pretty(&json!({"valid": true, "reflection": kind.reflection, "coreflection": kind.coreflection})))
        }
        Err(e) => {
            let law = match e {
                Error::NotMonotone { .. } => "monotonicity",
                Error::AdjointnessViolated { .. } => "adjointness",
                _ => "map shape",
            };
            Err(violation(law, &e, connection_witness(&bundle, &e)))
        }
    }
}

fn cmd_factorize(input: &Path) -> Outcome {
    let (bundle, g) = read_connection(input)?;
    let g = g.map_err(|e| violation("adjointness", &e, connection_witness(&bundle, &e)))?;
    let pf = g.polar_factorize().map_err(usage)?;
    Ok(pretty(&PolarJson::from(&pf)))
}

fn cmd_clsn(input: &Path, format: Format) -> Outcome {
    let bundle: LatticeJson = parse_json(&read(input)?)?;
    let l = bundle.decode().map_err(|e| violation("concept lattice bundle", &e, Value::Null))?;
    let a = l.clsn();
    Ok(match format {
        Format::Json => pretty(&ContextJson::from(&a)),
        _ => emit_cxt(&a),
    })
}

fn cmd_roundtrip(input: &Path) -> Outcome {
    let a = read_context(input)?;
    let l = lattice(&a)?;
    let back = l.clsn();
    let rt = l.roundtrip_iso().map_err(|e| violation("round trip", &e, Value::Null))?;
    let inverse = rt.forward.iter().enumerate().all(|(i, &j)| rt.backward[j] == i);
    let report = json!({
        "context_recovered": back == a,
        "concepts": l.len(),
        "forward": rt.forward,
        "backward": rt.backward,
        "mutually_inverse": inverse,
    });
    if back == a && inverse {
        Ok(pretty(&report))
    } else {
        Err(Failure::Violation(report))
    }
}

fn cmd_theories(input: &Path) -> Outcome {
    let a = read_context(input)?;
    let th = lattice(&a)?.theories().map_err(usage)?;
    let ny = a.n_types();
    let set = |m: usize| labels(&BitSet::from_mask(ny, m as u64), a.types());
    let mut closed: Vec<usize> = (0..th.closure.len()).filter(|&m| th.closure[m] == m).collect();
    closed.sort_by_key(|&m| (m.count_ones(), m));
    Ok(pretty(&json!({
        "types": a.types(),
        "closed": closed.iter().map(|&m| set(m)).collect::<Vec<_>>(),
        "closure": (0..th.closure.len())
            .map(|m| json!({"theory": set(m), "closure": set(th.closure[m])}))
            .collect::<Vec<_>>(),
    })))
}

fn cmd_verify(input: Option<&Path>, seed: u64, as_json: bool) -> Outcome {
    let report = match input {
        None => verify::verify_seeded(seed),
        Some(path) => {
            let text = read(path)?;
            if !is_json(&text) {
                verify::verify_context(&parse_cxt(&text).map_err(usage)?, seed)
            } else {
                let v: Value = parse_json(&text)?;
                let mut r = verify::Report::default();
                if v.get("inst_map").is_some() {
                    let f = parse_json::<InfomorphismJson>(&text)?
                        .decode()
                        .map_err(|e| violation("infomorphism bundle", &e, Value::Null))?;
                    verify::check_context(&mut r, "source", f.source());
                    verify::check_context(&mut r, "target", f.target());
                    verify::check_infomorphism(&mut r, "input", &f);
                } else if v.get("left").is_some() {
                    let (bundle, g) = read_connection(path)?;
                    let g = g.map_err(|e| violation("adjointness", &e, connection_witness(&bundle, &e)))?;
                    verify::check_connection(&mut r, "input", &g);
                } else {
                    let a = parse_json::<ContextJson>(&text)?.decode().map_err(usage)?;
                    r = verify::verify_context(&a, seed);
                }
                r
            }
        }
    };
    let text = if as_json { pretty(&report) } else { report.render() };
    if report.all_passed() {
        Ok(text)
    } else {
        // the table names each failing law and its first failing case
        print!("{text}");
        Err(Failure::Violation(json!({"valid": false, "failing": report.laws.iter().filter(|l| l.failed > 0).collect::<Vec<_>>()})))
    }
}

fn run(cli: &Cli) -> Outcome {
    use Format::*;
    match &cli.command {
        Command::Concepts { input } => {
            format_for("concepts", cli.format, &[Json])?;
            cmd_concepts(input)
        }
        Command::LatticeDot { input } => {
            format_for("lattice-dot", cli.format, &[Dot])?;
            Ok(emit_dot(&lattice(&read_context(input)?)?))
        }
        Command::CheckInfo { input } => {
            format_for("check-info", cli.format, &[Json])?;
            cmd_check_info(input)
        }
        Command::CheckGalois { input } => {
            format_for("check-galois", cli.format, &[Json])?;
            cmd_check_galois(input)
        }
        Command::Factorize { input } => {
            format_for("factorize", cli.format, &[Json])?;
            cmd_factorize(input)
        }
        Command::Clg { input } => {
            let l = lattice(&read_context(input)?)?;
            Ok(match format_for("clg", cli.format, &[Json, Dot])? {
                Dot => emit_dot(&l),
                _ => pretty(&LatticeJson::from(&l)),
            })
        }
        Command::Clsn { input } => cmd_clsn(input, format_for("clsn", cli.format, &[Cxt, Json])?),
        Command::Roundtrip { input } => {
            format_for("roundtrip", cli.format, &[Json])?;
            cmd_roundtrip(input)
        }
        Command::Theories { input } => {
            format_for("theories", cli.format, &[Json])?;
            cmd_theories(input)
        }
        Command::Verify { input } => {
            let as_json = match cli.format {
                None => false,
                Some(Json) => true,
                Some(_) => return Err(usage("verify supports --format json only")),
            };
            cmd_verify(input.as_deref(), cli.seed, as_json)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(text) => match &cli.out {
            Some(path) => match std::fs::write(path, text) {
                Ok(()) => ExitCode::SUCCESS,
                Err(e) => usage(format!("{}: {e}", path.display())).into(),
            },
            None => {
                print!("{text}");
                ExitCode::SUCCESS
            }
        },
        Err(f) => f.into(),
    }
}
