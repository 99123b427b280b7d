//! `grm`: command-line front end over the engine. Inputs and outputs are
//! JSON with sorted keys; identical invocations produce identical bytes.
//! Exit codes: 0 success, 2 validation or parse error, 3 enumeration cap
//! exceeded. Diagnostics go to standard error only.

use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::sync::Arc;

use clap::{Parser, Subcommand};
use serde_json::{json, Value};

use gr_core::error::Error;
use gr_core::io::{
    measure_to_value, module_to_value, parse_algebra, parse_module, parse_universe,
    to_canonical_string, universe_to_value,
};
use gr_core::kronecker::{self, FamilyKind, KroneckerFamily, Lambda};
use gr_core::measures::Measure;
use gr_core::quiver::{is_indecomposable, is_isomorphic, Algebra, Representation};
use gr_core::subcat::{check_all_laws, enumerate_ind, intersect_with_witness, IndUniverse};
use gr_core::submod::{all_submodules, Submodule};
use gr_core::{grm, Caps};

#[derive(Parser)]
#[command(
    name = "grm",
    about = "Gabriel-Roiter measures of quiver representations over prime fields",
    version
)]
struct Cli {
    /// Cap on exhaustive vector/submodule enumerations (default 2^20;
    /// env GRM_ENUM_CAP)
    #[arg(long, global = true)]
    enum_cap: Option<u64>,
    /// Cap on hom/endomorphism space searches (default 2^20; env GRM_HOM_CAP)
    #[arg(long, global = true)]
    hom_cap: Option<u64>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Gabriel-Roiter measure of a module, with a witness chain
    Measure {
        #[arg(long)]
        algebra: PathBuf,
        #[arg(long)]
        module: PathBuf,
    },
    /// The full submodule lattice of a module
    Submodules {
        #[arg(long)]
        algebra: PathBuf,
        #[arg(long)]
        module: PathBuf,
    },
    /// Indecomposability test
    Indec {
        #[arg(long)]
        algebra: PathBuf,
        #[arg(long)]
        module: PathBuf,
    },
    /// Isomorphism test between two modules over the same algebra
    Iso {
        #[arg(long)]
        algebra: PathBuf,
        #[arg(long)]
        module: PathBuf,
        #[arg(long)]
        other: PathBuf,
    },
    /// Enumerate all indecomposables up to a length bound
    Enumerate {
        #[arg(long)]
        algebra: PathBuf,
        #[arg(long)]
        max_length: usize,
        /// Cache bundle: read it if present, write it after enumerating otherwise
        #[arg(long)]
        cache: Option<PathBuf>,
    },
    /// Downward closure of seed members (the finite model of sub C)
    SubClosure {
        #[arg(long)]
        algebra: PathBuf,
        #[arg(long)]
        max_length: usize,
        /// Comma-separated member indices into the enumerated universe
        #[arg(long)]
        seeds: String,
        #[arg(long)]
        cache: Option<PathBuf>,
    },
    /// Zg of the down-set generated by the seeds
    Zg {
        #[arg(long)]
        algebra: PathBuf,
        #[arg(long)]
        max_length: usize,
        #[arg(long)]
        seeds: String,
        #[arg(long)]
        cache: Option<PathBuf>,
    },
    /// Intersection of a family of down-sets, with a finite witness subfamily
    Intersect {
        #[arg(long)]
        algebra: PathBuf,
        #[arg(long)]
        max_length: usize,
        /// Semicolon-separated seed lists, e.g. "0,1;2;0,3"; each list is
        /// closed downward to a down-set
        #[arg(long)]
        families: String,
        #[arg(long)]
        cache: Option<PathBuf>,
    },
    /// The GR filtration level at a measure
    Filtration {
        #[arg(long)]
        algebra: PathBuf,
        #[arg(long)]
        max_length: usize,
        /// A measure as JSON, e.g. `{"prefix":[1,2],"tail":null}`
        #[arg(long)]
        measure: String,
        #[arg(long)]
        cache: Option<PathBuf>,
    },
    /// Run every order-theoretic law check on the finite model
    Laws {
        #[arg(long)]
        algebra: PathBuf,
        #[arg(long)]
        max_length: usize,
        #[arg(long)]
        cache: Option<PathBuf>,
    },
    /// Kronecker-algebra constructors and ground-truth verification
    Kronecker {
        #[command(subcommand)]
        command: KroneckerCommand,
    },
}

#[derive(Subcommand)]
enum KroneckerCommand {
    /// Check computed measures against the closed forms, lambda-independence,
    /// and the order chain, for all families up to max-n
    Verify {
        #[arg(long)]
        max_n: usize,
        #[arg(long, default_value_t = 2)]
        field: u64,
    },
    /// Emit a family member as a module file
    Build {
        /// P (preprojective), R (regular), or Q (preinjective)
        #[arg(long)]
        kind: String,
        #[arg(long)]
        n: usize,
        /// Point of the projective line for R: a residue or "inf"
        #[arg(long)]
        lambda: Option<String>,
        #[arg(long, default_value_t = 2)]
        field: u64,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let caps = resolve_caps(&cli);
    match run(cli.command, caps) {
        Ok(value) => {
            print!("{}", to_canonical_string(&value));
            ExitCode::SUCCESS
        }
        Err(e) => {
            let value = json!({ "error": { "code": e.code(), "message": e.to_string() } });
            eprint!("{}", to_canonical_string(&value));
            if matches!(e, Error::CapExceeded { .. }) {
                ExitCode::from(3)
            } else {
                ExitCode::from(2)
            }
        }
    }
}

fn resolve_caps(cli: &Cli) -> Caps {
    let from_env = |name: &str| {
        std::env::var(name).ok().and_then(|v| v.parse::<u64>().ok())
    };
    let defaults = Caps::default();
    Caps {
        enum_cap: cli.enum_cap.or_else(|| from_env("GRM_ENUM_CAP")).unwrap_or(defaults.enum_cap),
        hom_cap: cli.hom_cap.or_else(|| from_env("GRM_HOM_CAP")).unwrap_or(defaults.hom_cap),
    }
}

fn run(command: Command, caps: Caps) -> Result<Value, Error> {
    match command {
        Command::Measure { algebra, module } => {
            let (alg, x) = load_module(&algebra, &module)?;
            let result = grm::gr_measure(&x, caps)?;
            Ok(json!({
                "config": config(caps, Some(&alg)),
                "length": x.length(),
                "measure": measure_to_value(&result.measure),
                "witness": result.witness.iter().map(submodule_to_value).collect::<Vec<_>>(),
            }))
        }
        Command::Submodules { algebra, module } => {
            let (alg, x) = load_module(&algebra, &module)?;
            let lattice = all_submodules(&x, caps)?;
            let elements: Vec<Value> = lattice
                .elements()
                .iter()
                .map(|s| {
                    let mut v = submodule_to_value(s);
                    v["length"] = json!(s.length());
                    v
                })
                .collect();
            let inclusions: Vec<Value> = lattice
                .strict_pairs()
                .into_iter()
                .map(|(i, j)| json!([i, j]))
                .collect();
            Ok(json!({
                "config": config(caps, Some(&alg)),
                "count": lattice.len(),
                "inclusions": inclusions,
                "submodules": elements,
            }))
        }
        Command::Indec { algebra, module } => {
            let (alg, x) = load_module(&algebra, &module)?;
            let answer = is_indecomposable(&x, caps)?;
            Ok(json!({
                "config": config(caps, Some(&alg)),
                "indecomposable": answer,
            }))
        }
        Command::Iso { algebra, module, other } => {
            let (alg, x) = load_module(&algebra, &module)?;
            let y = parse_module(&alg, &read_file(&other)?)?;
            let answer = is_isomorphic(&x, &y, caps)?;
            Ok(json!({
                "config": config(caps, Some(&alg)),
                "isomorphic": answer,
            }))
        }
        Command::Enumerate { algebra, max_length, cache } => {
            let alg = parse_algebra(&read_file(&algebra)?)?;
            let universe = load_universe(&alg, max_length, cache.as_deref(), caps)?;
            Ok(json!({
                "config": config(caps, Some(&alg)),
                "universe": universe_to_value(&universe),
            }))
        }
        Command::SubClosure { algebra, max_length, seeds, cache } => {
            let alg = parse_algebra(&read_file(&algebra)?)?;
            let universe = load_universe(&alg, max_length, cache.as_deref(), caps)?;
            let seeds = parse_indices(&seeds)?;
            let closure = universe.sub_closure(&seeds)?;
            Ok(json!({
                "config": config(caps, Some(&alg)),
                "closure": closure.indices(),
                "seeds": seeds,
            }))
        }
        Command::Zg { algebra, max_length, seeds, cache } => {
            let alg = parse_algebra(&read_file(&algebra)?)?;
            let universe = load_universe(&alg, max_length, cache.as_deref(), caps)?;
            let seeds = parse_indices(&seeds)?;
            let down = universe.sub_closure(&seeds)?;
            Ok(json!({
                "config": config(caps, Some(&alg)),
                "down_set": down.indices(),
                "seeds": seeds,
                "zg": universe.zg_set(&down),
            }))
        }
        Command::Intersect { algebra, max_length, families, cache } => {
            let alg = parse_algebra(&read_file(&algebra)?)?;
            let universe = load_universe(&alg, max_length, cache.as_deref(), caps)?;
            let seed_lists: Vec<Vec<usize>> = families
                .split(';')
                .map(parse_indices)
                .collect::<Result<_, _>>()?;
            let family = seed_lists
                .iter()
                .map(|seeds| universe.sub_closure(seeds))
                .collect::<Result<Vec<_>, _>>()?;
            let (intersection, witness) = intersect_with_witness(&family)?;
            Ok(json!({
                "config": config(caps, Some(&alg)),
                "families": seed_lists,
                "intersection": intersection.indices(),
                "witness": witness,
            }))
        }
        Command::Filtration { algebra, max_length, measure, cache } => {
            let alg = parse_algebra(&read_file(&algebra)?)?;
            let universe = load_universe(&alg, max_length, cache.as_deref(), caps)?;
            let bound: Measure = serde_json::from_str(&measure).map_err(|e| Error::Parse {
                context: "measure argument".to_string(),
                message: e.to_string(),
            })?;
            let filt = universe.gr_filtration(&bound)?;
            Ok(json!({
                "config": config(caps, Some(&alg)),
                "measure": measure_to_value(&bound),
                "sub": filt.sub.indices(),
                "zg": filt.zg,
            }))
        }
        Command::Laws { algebra, max_length, cache } => {
            let alg = parse_algebra(&read_file(&algebra)?)?;
            let universe = load_universe(&alg, max_length, cache.as_deref(), caps)?;
            let report = check_all_laws(&universe, caps.enum_cap)?;
            Ok(json!({
                "config": config(caps, Some(&alg)),
                "pass": report.pass(),
                "galois_sub_zg": {
                    "holds": report.galois_sub_zg.holds(),
                    "pairs_checked": report.galois_sub_zg.pairs_checked,
                },
                "galois_mu_sub": {
                    "holds": report.galois_mu_sub.holds(),
                    "pairs_checked": report.galois_mu_sub.pairs_checked,
                },
                "quotient": {
                    "down_sets_checked": report.quotient.down_sets_checked,
                    "failures": report.quotient.failures,
                    "measures_checked": report.quotient.measures_checked,
                },
                "closure": {
                    "failures": report.closure_failures,
                    "subsets_checked": report.closure_subsets_checked,
                },
                "filtration": {
                    "failures": report.filtration_failures,
                    "pairs_checked": report.filtration_pairs_checked,
                },
                "intersection": {
                    "failures": report.intersection_failures,
                    "pairs_checked": report.intersection_pairs_checked,
                },
                "reconstruction_failures": report.reconstruction_failures,
                "universal_failures": report.universal_failures,
                "minimal_element_failures": report.minimal_element_failures,
                "universe_size": universe.len(),
            }))
        }
        Command::Kronecker { command } => run_kronecker(command, caps),
    }
}

fn run_kronecker(command: KroneckerCommand, caps: Caps) -> Result<Value, Error> {
    match command {
        KroneckerCommand::Verify { max_n, field } => {
            let report = kronecker::verify(max_n, field, caps)?;
            let limits = kronecker::limit_measures(64)?;
            let checks: Vec<Value> = report
                .checks
                .iter()
                .map(|c| {
                    json!({
                        "computed": measure_to_value(&c.computed),
                        "expected": measure_to_value(&c.expected),
                        "label": c.label,
                        "match": c.matches,
                    })
                })
                .collect();
            let chain: Vec<Value> = report
                .chain
                .iter()
                .map(|(label, m)| json!([label, measure_to_value(m)]))
                .collect();
            Ok(json!({
                "config": json!({
                    "enum_cap": caps.enum_cap,
                    "hom_cap": caps.hom_cap,
                    "field": report.p,
                    "max_n": report.max_n,
                }),
                "chain": chain,
                "chain_ok": report.chain_ok,
                "checks": checks,
                "lambda_independent": report.lambda_independent,
                "limits": {
                    "adic": measure_to_value(&limits.adic),
                    "generic": measure_to_value(&limits.generic),
                    "prufer": measure_to_value(&limits.prufer),
                },
                "mismatches": report.mismatches,
                "pass": report.pass(),
            }))
        }
        KroneckerCommand::Build { kind, n, lambda, field } => {
            let fam = parse_family(&kind, n, lambda.as_deref(), field)?;
            let rep = kronecker::build(&fam, field)?;
            // the output is a valid module file; the config echo is an
            // extra key that module parsing ignores
            let mut value = module_to_value(&rep);
            value["config"] = config(caps, Some(rep.algebra()));
            Ok(value)
        }
    }
}

fn parse_family(
    kind: &str,
    n: usize,
    lambda: Option<&str>,
    field: u64,
) -> Result<KroneckerFamily, Error> {
    if n == 0 {
        return Err(Error::Parse {
            context: "kronecker build".to_string(),
            message: "family index n must be at least 1".to_string(),
        });
    }
    let kind = match kind.to_ascii_uppercase().as_str() {
        "P" => FamilyKind::Preprojective,
        "R" => FamilyKind::Regular,
        "Q" => FamilyKind::Preinjective,
        other => {
            return Err(Error::Parse {
                context: "kronecker build".to_string(),
                message: format!("unknown family kind `{other}` (expected P, R, or Q)"),
            })
        }
    };
    match (kind, lambda) {
        (FamilyKind::Regular, Some(l)) => {
            let lambda = if l.eq_ignore_ascii_case("inf") || l.eq_ignore_ascii_case("infinity") {
                Lambda::Infinity
            } else {
                let value: u64 = l.parse().map_err(|_| Error::Parse {
                    context: "kronecker build".to_string(),
                    message: format!("lambda must be a residue or \"inf\", got `{l}`"),
                })?;
                if value >= field {
                    return Err(Error::EntryOutOfRange { entry: value, modulus: field });
                }
                Lambda::Finite(value as u8)
            };
            Ok(KroneckerFamily::regular(n, lambda))
        }
        (FamilyKind::Regular, None) => Err(Error::Parse {
            context: "kronecker build".to_string(),
            message: "regular families require --lambda".to_string(),
        }),
        (FamilyKind::Preprojective, None) => Ok(KroneckerFamily::preprojective(n)),
        (FamilyKind::Preinjective, None) => Ok(KroneckerFamily::preinjective(n)),
        (_, Some(_)) => Err(Error::Parse {
            context: "kronecker build".to_string(),
            message: "--lambda only applies to regular families".to_string(),
        }),
    }
}

fn config(caps: Caps, algebra: Option<&Arc<Algebra>>) -> Value {
    match algebra {
        Some(alg) => json!({
            "enum_cap": caps.enum_cap,
            "hom_cap": caps.hom_cap,
            "p": alg.modulus(),
        }),
        None => json!({ "enum_cap": caps.enum_cap, "hom_cap": caps.hom_cap }),
    }
}

fn read_file(path: &Path) -> Result<Vec<u8>, Error> {
    std::fs::read(path).map_err(|e| Error::Parse {
        context: path.display().to_string(),
        message: e.to_string(),
    })
}

fn load_module(algebra: &Path, module: &Path) -> Result<(Arc<Algebra>, Representation), Error> {
    let alg = parse_algebra(&read_file(algebra)?)?;
    let x = parse_module(&alg, &read_file(module)?)?;
    Ok((alg, x))
}

fn load_universe(
    algebra: &Arc<Algebra>,
    max_length: usize,
    cache: Option<&Path>,
    caps: Caps,
) -> Result<IndUniverse, Error> {
    if let Some(path) = cache {
        if path.exists() {
            let universe = parse_universe(&read_file(path)?)?;
            if universe.algebra() != algebra || universe.max_length() != max_length {
                return Err(Error::Parse {
                    context: path.display().to_string(),
                    message: "cached universe does not match the requested algebra and bound"
                        .to_string(),
                });
            }
            return Ok(universe);
        }
    }
    let universe = enumerate_ind(algebra, max_length, caps)?;
    if let Some(path) = cache {
        let text = to_canonical_string(&universe_to_value(&universe));
        std::fs::write(path, text).map_err(|e| Error::Parse {
            context: path.display().to_string(),
            message: e.to_string(),
        })?;
    }
    Ok(universe)
}

fn parse_indices(s: &str) -> Result<Vec<usize>, Error> {
    let trimmed = s.trim();
    if trimmed.is_empty() {
        return Ok(Vec::new());
    }
    trimmed
        .split(',')
        .map(|part| {
            part.trim().parse::<usize>().map_err(|_| Error::Parse {
                context: "member indices".to_string(),
                message: format!("`{part}` is not an index"),
            })
        })
        .collect()
}

fn submodule_to_value(s: &Submodule) -> Value {
    let quiver = s.parent().algebra().quiver();
    let spaces: serde_json::Map<String, Value> = quiver
        .vertices()
        .iter()
        .enumerate()
        .map(|(v, name)| {
            let space = s.space(v);
            let rows: Vec<Value> = space
                .basis_rows()
                .map(|row| Value::Array(row.iter().map(|&e| json!(e)).collect()))
                .collect();
            (name.clone(), Value::Array(rows))
        })
        .collect();
    json!({ "spaces": spaces })
}
