use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use e8cm::changemaker::{ambient_lattice, is_changemaker, is_e8_changemaker, stream_e8_changemakers, EnumerateOptions, Tau};
use e8cm::e8;
use e8cm::linear::recognize_linear;
use e8cm::standard_basis::{complement_basis, standard_basis, verify_standard_basis};
use e8cm::surgery::{complement_shape, knot_invariants, solve_quadratic_congruence, family_row, verify_family_row};
use e8cm_cli::claims;
use e8cm_cli::io::{parse_list, parse_s_star, read_json, CliError, GramFile, TauFile};
use serde_json::{json, Value};

#[derive(Parser)]
#[command(name = "e8cm", version, about = "E8-changemaker lattices and lens space surgeries")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// The 120 positive roots in simple-root coordinates, with heights.
    Roots,
    /// Whether a sorted tail of non-negative integers is a changemaker.
    IsChangemaker {
        #[arg(long, allow_hyphen_values = true)]
        sigma: String,
    },
    /// Whether (s*, σ) is an E8-changemaker.
    IsE8cm(TauArgs),
    /// Gram matrix and recognised shape of the orthogonal complement of τ.
    Complement(TauArgs),
    /// Recognises a lattice as a sum of linear lattices Λ(p, q).
    Recognize {
        #[arg(long)]
        gram: PathBuf,
    },
    /// Streams the E8-changemakers with tail length n + 1 as JSON lines.
    Enumerate {
        #[arg(long, allow_hyphen_values = true)]
        n: i64,
        /// Restrict to one tail.
        #[arg(long)]
        sigma: Option<String>,
        /// Tails with Σσᵢ² above this are skipped and reported on stderr.
        #[arg(long, default_value_t = EnumerateOptions::default().norm_cap)]
        norm_cap: i64,
        /// Stop after this many vectors.
        #[arg(long)]
        limit: Option<usize>,
        #[arg(long, default_value_t = 1)]
        jobs: usize,
    },
    /// Standard basis of the complement of τ and its verification.
    Basis(TauArgs),
    /// Genus, torsion coefficients and Alexander polynomial attached to τ.
    Knot(TauArgs),
    /// One member of a named surgery family.
    Family {
        #[arg(long)]
        name: String,
        #[arg(long)]
        j: i64,
        /// Also check the member end to end.
        #[arg(long)]
        verify: bool,
    },
    /// Solutions of x² ≡ ±r (mod p) in [0, p).
    Congruence {
        #[arg(long)]
        p: i64,
        #[arg(long, allow_hyphen_values = true)]
        rhs: i64,
    },
    /// Recomputes a registered claim, or all of them.
    Verify {
        #[arg(default_value = "all")]
        id: String,
    },
}

/// τ from a JSON file or from the command line.
#[derive(Args)]
struct TauArgs {
    /// `{"s_star": [...8], "sigma": [...]}`
    #[arg(long, conflicts_with_all = ["s_star", "sigma"])]
    tau: Option<PathBuf>,
    /// Eight comma-separated dual coordinates.
    #[arg(long, allow_hyphen_values = true, requires = "sigma")]
    s_star: Option<String>,
    /// Comma-separated tail; may be empty.
    #[arg(long, allow_hyphen_values = true)]
    sigma: Option<String>,
}

impl TauArgs {
    fn load(&self) -> Result<Tau, CliError> {
        let file = match (&self.tau, &self.s_star, &self.sigma) {
            (Some(path), _, _) => read_json::<TauFile>(path)?,
            (None, Some(s), Some(sigma)) => TauFile { s_star: parse_s_star(s)?, sigma: parse_list(sigma)? },
            _ => return Err(CliError::Usage("give --tau FILE or both --s-star and --sigma".into())),
        };
        let t = file.to_tau();
        if t.sigma().iter().any(|&x| x < 0) {
            return Err(CliError::Usage("tail entries must be non-negative".into()));
        }
        Ok(t)
    }
}

fn tau_json(t: &Tau) -> Value {
    json!({ "s_star": t.s_star(), "sigma": t.sigma(), "norm": t.norm() })
}

fn shape_json(shape: &Option<Vec<(i64, i64)>>) -> Value {
    match shape {
        Some(s) => json!(s.iter().map(|&(p, q)| [p, q]).collect::<Vec<_>>()),
        None => Value::Null,
    }
}

fn print(v: &Value) {
    println!("{}", serde_json::to_string(v).expect("JSON values serialise"));
}

fn run(cli: Cli) -> Result<(), CliError> {
    match cli.command {
        Command::Roots => {
            let roots: Vec<Value> = e8::positive_roots()
                .iter()
                .map(|r| json!({ "index": r.index, "height": r.height(), "coords": r.coords }))
                .collect();
            print(&json!({ "count": e8::roots().len(), "positive": roots }));
        }
        Command::IsChangemaker { sigma } => {
            print(&json!({ "changemaker": is_changemaker(&parse_list(&sigma)?)? }));
        }
        Command::IsE8cm(args) => {
            let t = args.load()?;
            print(&json!({ "e8_changemaker": !t.is_zero() && is_e8_changemaker(&t), "tau": tau_json(&t) }));
        }
        Command::Complement(args) => {
            let t = args.load()?;
            let (comp, basis) = ambient_lattice(t.sigma().len()).orthogonal_complement(&t.ambient_vector())?;
            print(&json!({
                "tau": tau_json(&t),
                "rank": comp.rank(),
                "gram": comp.gram(),
                "basis": basis,
                "discriminant": comp.discriminant(),
                "summands": shape_json(&recognize_linear(&comp)?),
            }));
        }
        Command::Recognize { gram } => {
            let lat = read_json::<GramFile>(&gram)?.to_lattice()?;
            print(&json!({ "summands": shape_json(&recognize_linear(&lat)?) }));
        }
        Command::Enumerate { n, sigma, norm_cap, limit, jobs } => {
            let opts = EnumerateOptions { norm_cap, sigma_filter: sigma.as_deref().map(parse_list).transpose()?, jobs };
            let stdout = io::stdout();
            let mut out = BufWriter::new(stdout.lock());
            let mut emitted = 0usize;
            let mut write_error = None;
            let skipped = stream_e8_changemakers(n, &opts, |t| {
                if limit.is_some_and(|l| emitted >= l) {
                    return false;
                }
                let line = serde_json::to_string(&TauFile::from_tau(t)).expect("JSON values serialise");
                if let Err(e) = writeln!(out, "{line}") {
                    write_error = Some(e);
                    return false;
                }
                emitted += 1;
                true
            })?;
            if let Some(e) = write_error.or_else(|| out.flush().err()) {
                if e.kind() != io::ErrorKind::BrokenPipe {
                    return Err(CliError::Usage(e.to_string()));
                }
            }
            for tail in skipped {
                eprintln!("skipped tail {tail:?}: Σσ² is above the norm cap {norm_cap}");
            }
        }
        Command::Basis(args) => {
            let t = args.load()?;
            match standard_basis(&t) {
                Ok(sb) => {
                    let report = verify_standard_basis(&t)?;
                    let summands = complement_shape(&t)?;
                    let pass = if summands.is_some() { report.pass_if_linear() } else { report.pass() };
                    let kinds: Vec<String> = sb.classes.iter().map(|c| format!("{:?}", c.kind)).collect();
                    print(&json!({
                        "tau": tau_json(&t),
                        "v": sb.v_list,
                        "w": sb.w_list,
                        "kinds": kinds,
                        "summands": shape_json(&summands),
                        "pass": pass,
                        "failures": report.failures,
                        "linear_only": report.linear_only,
                    }));
                    if !pass {
                        let all: Vec<String> = report.failures.iter().chain(&report.linear_only).cloned().collect();
                        return Err(CliError::Failed(all.join("; ")));
                    }
                }
                Err(e) => {
                    let (lat, rows) = complement_basis(&t)?;
                    print(&json!({
                        "tau": tau_json(&t),
                        "standard_basis": Value::Null,
                        "reason": e.to_string(),
                        "complement_basis": rows,
                        "gram": lat.gram(),
                    }));
                    let sigma = t.sigma();
                    let in_scope = sigma.len() >= 3 && sigma[0] == 1 && is_changemaker(sigma)?;
                    if in_scope {
                        return Err(CliError::Failed(e.to_string()));
                    }
                }
            }
        }
        Command::Knot(args) => {
            let t = args.load()?;
            let k = knot_invariants(&t)?;
            print(&json!({ "p": k.p, "genus": k.genus, "torsion": k.torsion, "alexander": k.alexander }));
        }
        Command::Family { name, j, verify } => {
            let row = family_row(&name, j)?;
            let mut v = json!({
                "family": row.family, "j": row.j, "p": row.p, "k": row.k, "q": row.q,
                "s_star": row.s_star, "sigma": row.sigma,
            });
            if verify {
                let report = verify_family_row(&row);
                v["complement"] = shape_json(&complement_shape(&row.tau()?)?);
                v["pass"] = json!(report.pass());
                v["failures"] = json!(report.failures);
                print(&v);
                if !report.pass() {
                    return Err(CliError::Failed(report.failures.join("; ")));
                }
            } else {
                print(&v);
            }
        }
        Command::Congruence { p, rhs } => {
            print(&json!({ "solutions": solve_quadratic_congruence(p, rhs)? }));
        }
        Command::Verify { id } => {
            let reports = claims::verify(&id)?;
            let mut failed = Vec::new();
            for r in &reports {
                print(&serde_json::to_value(r).expect("reports serialise"));
                if !r.pass {
                    failed.push(r.claim.clone());
                }
            }
            if !failed.is_empty() {
                return Err(CliError::Failed(failed.join(", ")));
            }
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("{e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
