//! Command-line front end. [`run`] captures output so it can be tested
//! without spawning a process; `main` only forwards it.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};

use crate::algebra::{product, sum, superpose, Combiner};
use crate::error::Error;
use crate::markov::{
    steady_state, tdmc_similarity, transition_matrix, verify_power_bound, ChainDistanceReport,
    DEFAULT_STEADY_MAX_ITER, DEFAULT_STEADY_TOL,
};
use crate::morphisms::{
    check_homomorphism, describe_counterexample, enumerate_homomorphisms, EnumOptions,
    MorphismCertificate, DEFAULT_ENUM_CAP,
};
use crate::netio::{
    self, export_dot, fmt_g, matrix_to_csv, parse_network, parse_network_raw, parse_pbn_json,
    parse_state_map_json, serialize_network,
};
use crate::network::{expand_pbn, validate_prn, Prn, DEFAULT_EXPANSION_CAP};
use crate::subnet::{invariant_subnetworks, subset_ids, DEFAULT_SUBNET_CAP};

/// Environment variable overriding the default enumeration cap.
pub const ENUM_CAP_ENV: &str = "PRN_ENUM_CAP";

pub const EXIT_OK: i32 = 0;
pub const EXIT_NEGATIVE: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_CAPACITY: i32 = 3;

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct CommandResult {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

#[derive(Parser, Debug)]
#[command(
    name = "prn",
    version,
    about = "Analyze probabilistic regulatory networks"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Check a network file and report every problem found.
    Validate { file: PathBuf },
    /// Print the transition matrix as CSV.
    Matrix {
        file: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Print the stationary distribution.
    Steady {
        file: PathBuf,
        #[arg(long, default_value_t = DEFAULT_STEADY_TOL)]
        tol: f64,
        #[arg(long, default_value_t = DEFAULT_STEADY_MAX_ITER)]
        max_iter: usize,
    },
    /// Expand a gene-level network (JSON) into a network file.
    Expand {
        file: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
        #[arg(long, default_value_t = DEFAULT_EXPANSION_CAP)]
        cap: u64,
    },
    /// Homomorphism checks and enumeration.
    Hom {
        #[command(subcommand)]
        command: HomCommand,
    },
    /// Compare the chains of two networks along a bijective state map.
    Compare {
        a: PathBuf,
        b: PathBuf,
        #[arg(long)]
        map: PathBuf,
        #[arg(long)]
        epsilon: f64,
        #[arg(long, default_value_t = 10)]
        max_power: u32,
    },
    /// Disjoint sum of two networks.
    Sum {
        a: PathBuf,
        b: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Product of two networks.
    Product {
        a: PathBuf,
        b: PathBuf,
        #[arg(long, value_enum, default_value_t = CombineArg::Product)]
        combine: CombineArg,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Superpose single-function networks, or normalize one network file.
    Superpose {
        #[arg(required = true)]
        files: Vec<PathBuf>,
        /// One probability per file, comma separated.
        #[arg(long, value_delimiter = ',')]
        probs: Option<Vec<f64>>,
        #[arg(long, default_value = "superposition")]
        name: String,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// List the invariant subnetworks, one per line.
    Subnets {
        file: PathBuf,
        #[arg(long)]
        irreducible: bool,
        #[arg(long, default_value_t = DEFAULT_SUBNET_CAP)]
        cap: usize,
    },
    /// Graphviz rendering of the state space.
    Dot {
        file: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
}

#[derive(Subcommand, Debug)]
enum HomCommand {
    /// Certify one state map.
    Check {
        src: PathBuf,
        dst: PathBuf,
        #[arg(long)]
        map: PathBuf,
    },
    /// Enumerate every homomorphism.
    Enum {
        src: PathBuf,
        dst: PathBuf,
        #[arg(long)]
        bijective: bool,
        #[arg(long)]
        injective: bool,
        /// Also require the inverse to be a homomorphism.
        #[arg(long)]
        inverse: bool,
        #[arg(long)]
        max_epsilon: Option<f64>,
        #[arg(long)]
        cap: Option<u64>,
    },
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
enum CombineArg {
    Product,
    Average,
}

struct Failure {
    code: i32,
    message: String,
}

type CliResult = std::result::Result<i32, Failure>;

fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Capacity { .. } => EXIT_CAPACITY,
        Error::NotHomomorphism(_)
        | Error::NotInvariant(_)
        | Error::NotProjection(_)
        | Error::MultipleRecurrentClasses(_)
        | Error::NoConvergence(_) => EXIT_NEGATIVE,
        _ => EXIT_USAGE,
    }
}

fn fail(e: Error) -> Failure {
    Failure {
        code: exit_code(&e),
        message: e.to_string(),
    }
}

fn fail_at(path: &Path, e: Error) -> Failure {
    Failure {
        code: exit_code(&e),
        message: match e {
            // I/O errors already carry the path
            Error::Io { .. } => e.to_string(),
            _ => format!("{}: {e}", path.display()),
        },
    }
}

fn usage(message: impl Into<String>) -> Failure {
    Failure {
        code: EXIT_USAGE,
        message: message.into(),
    }
}

fn load(path: &Path) -> std::result::Result<Prn, Failure> {
    let text = netio::read_text(path).map_err(|e| fail_at(path, e))?;
    parse_network(&text).map_err(|e| fail_at(path, e))
}

fn emit(out: &mut String, output: Option<&Path>, text: &str) -> std::result::Result<(), Failure> {
    match output {
        Some(path) => netio::write_text(path, text).map_err(fail),
        None => {
            out.push_str(text);
            Ok(())
        }
    }
}

fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn num(x: f64) -> String {
    fmt_g(x, 10)
}

fn enum_cap(flag: Option<u64>) -> std::result::Result<u64, Failure> {
    if let Some(cap) = flag {
        return Ok(cap);
    }
    match std::env::var(ENUM_CAP_ENV) {
        Ok(v) => v.trim().parse().map_err(|_| {
            usage(format!(
                "{ENUM_CAP_ENV}=`{v}` is not a non-negative integer"
            ))
        }),
        Err(_) => Ok(DEFAULT_ENUM_CAP),
    }
}

fn map_line(cert: &MorphismCertificate, src: &Prn, dst: &Prn) -> String {
    cert.state_map
        .id_pairs(src, dst)
        .iter()
        .map(|(a, b)| format!("{a}->{b}"))
        .collect::<Vec<_>>()
        .join(" ")
}

fn write_certificate(out: &mut String, cert: &MorphismCertificate, src: &Prn, dst: &Prn) {
    match cert.epsilon {
        Some(e) if cert.holds() => {
            writeln!(out, "homomorphism: yes, epsilon = {}", num(e)).unwrap()
        }
        _ => writeln!(out, "homomorphism: no").unwrap(),
    }
    writeln!(out, "condition 1: {}", yes_no(cert.holds_condition1)).unwrap();
    writeln!(out, "condition 2: {}", yes_no(cert.holds_condition2)).unwrap();
    writeln!(out, "bijective: {}", yes_no(cert.bijective)).unwrap();
    writeln!(out, "isomorphism: {}", yes_no(cert.is_isomorphism)).unwrap();
    if let Some(c) = &cert.correspondence {
        let pairs: Vec<String> =
            c.0.iter()
                .enumerate()
                .map(|(i, &j)| format!("{}->{}", src.functions()[i].name, dst.functions()[j].name))
                .collect();
        writeln!(out, "correspondence: {}", pairs.join(" ")).unwrap();
    }
    if let Some(c) = &cert.counterexample {
        writeln!(out, "counterexample: {}", describe_counterexample(src, c)).unwrap();
    }
}

fn write_chain_report(out: &mut String, title: &str, r: &ChainDistanceReport) {
    writeln!(out, "[{title}]").unwrap();
    writeln!(out, "epsilon: {}", num(r.epsilon)).unwrap();
    writeln!(out, "observed: {}", num(r.epsilon_observed)).unwrap();
    writeln!(out, "rows sum to zero: {}", yes_no(r.row_sum_zero)).unwrap();
    for p in &r.per_power {
        writeln!(
            out,
            "n={} max={} row_sum={} col_sum={} support_equal={}",
            p.n,
            num(p.max_abs),
            num(p.max_row_sum),
            num(p.max_col_sum),
            yes_no(p.support_equal)
        )
        .unwrap();
    }
    if let Some(d) = r.stationary_distance {
        writeln!(out, "stationary distance: {}", num(d)).unwrap();
    }
    writeln!(out, "verdict: {}", yes_no(r.verdict)).unwrap();
}

fn execute(cmd: Command, out: &mut String, err: &mut String) -> CliResult {
    match cmd {
        Command::Validate { file } => {
            let text = netio::read_text(&file).map_err(fail)?;
            let raw = parse_network_raw(&text).map_err(|e| fail_at(&file, e))?;
            let report = validate_prn(&raw);
            for issue in &report.issues {
                writeln!(err, "{}: {issue}", file.display()).unwrap();
            }
            if !report.ok() {
                return Err(usage(format!("{}: invalid network", file.display())));
            }
            writeln!(
                out,
                "ok: {} ({} states, {} functions)",
                raw.name,
                raw.states.len(),
                raw.functions.len()
            )
            .unwrap();
            Ok(EXIT_OK)
        }
        Command::Matrix { file, output } => {
            let net = load(&file)?;
            let csv = matrix_to_csv(&transition_matrix(&net)).map_err(fail)?;
            emit(out, output.as_deref(), &csv)?;
            Ok(EXIT_OK)
        }
        Command::Steady {
            file,
            tol,
            max_iter,
        } => {
            let net = load(&file)?;
            let pi = steady_state(&transition_matrix(&net), tol, max_iter)
                .map_err(|e| fail_at(&file, e))?;
            for (id, w) in pi.order.iter().zip(&pi.weights) {
                writeln!(out, "{id} {}", fmt_g(*w, 12)).unwrap();
            }
            Ok(EXIT_OK)
        }
        Command::Expand { file, output, cap } => {
            let text = netio::read_text(&file).map_err(fail)?;
            let pbn = parse_pbn_json(&text).map_err(|e| fail_at(&file, e))?;
            let prn = expand_pbn(&pbn, cap).map_err(|e| fail_at(&file, e))?;
            emit(out, output.as_deref(), &serialize_network(&prn))?;
            Ok(EXIT_OK)
        }
        Command::Hom { command } => execute_hom(command, out),
        Command::Compare {
            a,
            b,
            map,
            epsilon,
            max_power,
        } => {
            let na = load(&a)?;
            let nb = load(&b)?;
            let text = netio::read_text(&map).map_err(fail)?;
            let phi = parse_state_map_json(&text, &na, &nb).map_err(|e| fail_at(&map, e))?;
            if !phi.is_bijective() {
                return Err(usage(format!("{}: map must be a bijection", map.display())));
            }
            let ta = transition_matrix(&na);
            let tb = transition_matrix(&nb)
                .pull_back(phi.as_slice(), na.states().to_vec())
                .map_err(fail)?;
            let power = verify_power_bound(&ta, &tb, epsilon, max_power).map_err(fail)?;
            let tdmc = tdmc_similarity(&ta, &tb, epsilon, max_power).map_err(fail)?;
            write_chain_report(out, "power bound", &power);
            write_chain_report(out, "chain similarity", &tdmc);
            Ok(if power.verdict && tdmc.verdict {
                EXIT_OK
            } else {
                EXIT_NEGATIVE
            })
        }
        Command::Sum { a, b, output } => {
            let s = sum(&load(&a)?, &load(&b)?).map_err(fail)?;
            emit(out, output.as_deref(), &serialize_network(&s.network))?;
            Ok(EXIT_OK)
        }
        Command::Product {
            a,
            b,
            combine,
            output,
        } => {
            let combiner = match combine {
                CombineArg::Product => Combiner::Product,
                CombineArg::Average => Combiner::Average,
            };
            let p = product(&load(&a)?, &load(&b)?, &combiner).map_err(fail)?;
            emit(out, output.as_deref(), &serialize_network(&p.network))?;
            Ok(EXIT_OK)
        }
        Command::Superpose {
            files,
            probs,
            name,
            output,
        } => {
            let net = if files.len() == 1 && probs.is_none() {
                load(&files[0])?
            } else {
                let probs = probs.ok_or_else(|| usage("--probs is required for several files"))?;
                if probs.len() != files.len() {
                    return Err(usage(format!(
                        "{} probabilities for {} files",
                        probs.len(),
                        files.len()
                    )));
                }
                let mut systems = Vec::new();
                for (f, p) in files.iter().zip(probs) {
                    let net = load(f)?;
                    let mut fds = net.systems();
                    if fds.len() != 1 {
                        return Err(usage(format!(
                            "{}: expected a single-function network, found {} functions",
                            f.display(),
                            fds.len()
                        )));
                    }
                    systems.push((fds.remove(0).0, p));
                }
                superpose(name, &systems).map_err(fail)?
            };
            emit(out, output.as_deref(), &serialize_network(&net))?;
            Ok(EXIT_OK)
        }
        Command::Subnets {
            file,
            irreducible,
            cap,
        } => {
            let net = load(&file)?;
            let rep = invariant_subnetworks(&net, cap).map_err(|e| fail_at(&file, e))?;
            let sets = if irreducible {
                &rep.irreducible_sets
            } else {
                &rep.invariant_sets
            };
            for s in sets {
                writeln!(out, "{{{}}}", subset_ids(&net, s).join(", ")).unwrap();
            }
            writeln!(err, "lattice closed: {}", yes_no(rep.lattice_closed)).unwrap();
            Ok(EXIT_OK)
        }
        Command::Dot { file, output } => {
            let net = load(&file)?;
            emit(out, output.as_deref(), &export_dot(&net))?;
            Ok(EXIT_OK)
        }
    }
}

fn execute_hom(cmd: HomCommand, out: &mut String) -> CliResult {
    match cmd {
        HomCommand::Check { src, dst, map } => {
            let s = load(&src)?;
            let d = load(&dst)?;
            let text = netio::read_text(&map).map_err(fail)?;
            let phi = parse_state_map_json(&text, &s, &d).map_err(|e| fail_at(&map, e))?;
            let cert = check_homomorphism(&s, &d, &phi).map_err(fail)?;
            write_certificate(out, &cert, &s, &d);
            Ok(if cert.holds() { EXIT_OK } else { EXIT_NEGATIVE })
        }
        HomCommand::Enum {
            src,
            dst,
            bijective,
            injective,
            inverse,
            max_epsilon,
            cap,
        } => {
            let s = load(&src)?;
            let d = load(&dst)?;
            let opts = EnumOptions {
                bijective_only: bijective,
                injective_only: injective,
                require_inverse_hom: inverse,
                max_epsilon,
                cap: enum_cap(cap)?,
            };
            let found = enumerate_homomorphisms(&s, &d, &opts).map_err(fail)?;
            for cert in &found {
                writeln!(
                    out,
                    "{}  epsilon = {}{}",
                    map_line(cert, &s, &d),
                    cert.epsilon.map_or("-".into(), num),
                    if cert.is_isomorphism {
                        "  isomorphism"
                    } else {
                        ""
                    }
                )
                .unwrap();
            }
            writeln!(out, "total: {}", found.len()).unwrap();
            Ok(if found.is_empty() {
                EXIT_NEGATIVE
            } else {
                EXIT_OK
            })
        }
    }
}

/// Run the CLI on `argv` (including the program name).
pub fn run<I, T>(argv: I) -> CommandResult
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                CommandResult {
                    code: EXIT_USAGE,
                    stdout: String::new(),
                    stderr: text,
                }
            } else {
                CommandResult {
                    code: EXIT_OK,
                    stdout: text,
                    stderr: String::new(),
                }
            };
        }
    };
    let mut stdout = String::new();
    let mut stderr = String::new();
    let code = match execute(cli.command, &mut stdout, &mut stderr) {
        Ok(code) => code,
        Err(f) => {
            writeln!(stderr, "error: {}", f.message).unwrap();
            f.code
        }
    };
    CommandResult {
        code,
        stdout,
        stderr,
    }
}
