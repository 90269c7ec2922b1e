//! `eigensteps`: command-line access to the eigenstep polytope library.
//!
//! Exit status is 0 on success, 1 on domain errors (including checks that
//! come out false) and 2 on usage errors.

mod plot;

use std::fs;
use std::io::{self, IsTerminal, Read, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use eigensteps::condition::ConditionId;
use eigensteps::frames::{
    self, FloatTableau, FloatTableauJson, FrameMatrix, CONSTRUCTION_TOL, CORRESPONDENCE_TOL,
};
use eigensteps::geometry::{self, HRep, HRepJson, Variant, VertexJson};
use eigensteps::json::TableauJson;
use eigensteps::rational::{self, Rational};
use eigensteps::validate::{validate_with, ReportJson};
use eigensteps::{oracle, Params, System, Tableau};
use serde_json::json;

#[derive(Parser)]
#[command(name = "eigensteps", version, about = "Eigenstep polytopes of equal norm tight frames")]
struct Cli {
    /// Emit machine-readable JSON.
    #[arg(long, global = true)]
    json: bool,

    /// Rescale printed eigenvalues: d (as stored), one (unit norm vectors)
    /// or parseval (Parseval frames). Human-readable output only.
    #[arg(long, global = true, value_enum, default_value_t = MuDisplay::D)]
    mu_display: MuDisplay,

    #[arg(long, global = true, env = "EIGENSTEPS_COLOR", value_enum, default_value_t = Color::Auto, hide = true)]
    color: Color,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum MuDisplay {
    D,
    One,
    Parseval,
}

#[derive(Clone, Copy, ValueEnum)]
enum Color {
    Auto,
    Never,
}

#[derive(Args, Clone, Copy)]
struct ParamArgs {
    #[arg(long = "N")]
    n: usize,
    #[arg(long = "d")]
    d: usize,
}

impl ParamArgs {
    fn params(self) -> Result<Params> {
        Ok(Params::new(self.n, self.d)?)
    }
}

#[derive(Args, Clone, Copy)]
struct OptParamArgs {
    /// Expected N of the input.
    #[arg(long = "N")]
    n: Option<usize>,
    /// Expected d of the input.
    #[arg(long = "d")]
    d: Option<usize>,
}

#[derive(Args)]
struct FrameIn {
    /// Frame CSV (d rows, N columns, no header); `-` reads stdin.
    #[arg(long = "in")]
    input: PathBuf,
    #[arg(long, default_value = ",")]
    delimiter: char,
}

#[derive(Args)]
struct FrameIo {
    #[command(flatten)]
    input: FrameIn,
    #[arg(long, default_value_t = CONSTRUCTION_TOL)]
    tol: f64,
}

#[derive(Subcommand)]
enum Command {
    /// Check a tableau against the full or reduced system.
    Validate {
        #[command(flatten)]
        params: OptParamArgs,
        /// Tableau JSON; `-` reads stdin.
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long, default_value = "full")]
        system: System,
    },
    /// The special point λ̂.
    Special(ParamArgs),
    /// Dimension of the polytope.
    Dim {
        #[command(flatten)]
        params: ParamArgs,
        /// Also compute it by the LP oracle.
        #[arg(long)]
        oracle: bool,
    },
    /// Number of facets.
    Facets {
        #[command(flatten)]
        params: ParamArgs,
        /// Also count irredundant inequalities by LP.
        #[arg(long)]
        oracle: bool,
    },
    /// Inequalities over the free coordinates.
    Hrep {
        #[command(flatten)]
        params: ParamArgs,
        #[arg(long, default_value = "non-redundant")]
        variant: Variant,
    },
    /// A point violating exactly one reduced inequality.
    Witness {
        #[command(flatten)]
        params: ParamArgs,
        /// Condition id such as `horizontal:2:2` or `lower-bound:2:2`.
        #[arg(long)]
        target: ConditionId,
    },
    /// Vertices of small polytopes.
    Vertices {
        #[command(flatten)]
        params: ParamArgs,
        #[arg(long, default_value_t = 1000)]
        limit: usize,
    },
    /// Deterministic interior points.
    Sample {
        #[command(flatten)]
        params: ParamArgs,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 1)]
        count: usize,
    },
    /// Apply the involution Φ to a tableau.
    Phi {
        #[arg(long = "in")]
        input: PathBuf,
    },
    /// Apply the isomorphism Ψ to a tableau.
    Psi {
        #[arg(long = "in")]
        input: PathBuf,
    },
    /// Check Φ∘Φ = id, Ψ∘Ψ = id and ΦΨ = ΨΦ on sampled or given points.
    Identities {
        #[command(flatten)]
        params: ParamArgs,
        /// JSON array of tableaux; sampled points are used otherwise.
        #[arg(long = "in")]
        input: Option<PathBuf>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 100)]
        count: usize,
    },
    /// Eigensteps of a frame.
    FrameEigensteps(FrameIn),
    /// Whether a frame is equal norm tight with norms d.
    FrameTightCheck(FrameIo),
    /// Frame vectors in reverse order.
    Reverse(FrameIn),
    /// A Naimark complement of an equal norm tight frame.
    Naimark(FrameIo),
    /// Real harmonic equal norm tight frame.
    Harmonic(ParamArgs),
    /// Check Φ(λ_F) = λ of the reversed frame.
    VerifyPhi(Correspondence),
    /// Check Ψ(λ_F) = λ of the reversed Naimark complement.
    VerifyPsi(Correspondence),
    /// SVG of a two-dimensional polytope with its facets and witnesses.
    Plot2d {
        #[command(flatten)]
        params: ParamArgs,
        /// Output file; stdout otherwise.
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Args)]
struct Correspondence {
    #[command(flatten)]
    input: FrameIn,
    #[arg(long, default_value_t = CORRESPONDENCE_TOL)]
    tol: f64,
}

struct Output {
    json: bool,
    mu: MuDisplay,
    color: bool,
}

impl Output {
    fn scale(&self, p: Params) -> Rational {
        match self.mu {
            MuDisplay::D => rational::int(1),
            MuDisplay::One if p.d() > 0 => Rational::new(1.into(), (p.d() as i64).into()),
            MuDisplay::Parseval if p.n() > 0 => Rational::new(1.into(), (p.n() as i64).into()),
            _ => rational::int(1),
        }
    }

    fn verdict(&self, ok: bool, yes: &str, no: &str) -> String {
        let (word, code) = if ok { (yes, "32") } else { (no, "31") };
        if self.color {
            format!("\x1b[{code}m{word}\x1b[0m")
        } else {
            word.to_string()
        }
    }

    fn tableau(&self, t: &Tableau) -> String {
        let s = self.scale(t.params());
        if num_traits::One::is_one(&s) {
            t.to_string()
        } else {
            t.map(|v| v * &s).to_string()
        }
    }

    fn float_tableau(&self, t: &FloatTableau) -> String {
        let s = rational::to_f64(&self.scale(t.params));
        let rows = t.rows();
        let mut out = String::new();
        for (k, row) in rows.iter().enumerate().rev() {
            out.push_str(&format!("i={:<3}", k + 1));
            for v in row {
                out.push_str(&format!(" {:>12.8}", v * s));
            }
            out.push('\n');
        }
        out
    }
}

fn read_input(path: &Path) -> Result<String> {
    if path == Path::new("-") {
        let mut s = String::new();
        io::stdin().read_to_string(&mut s)?;
        Ok(s)
    } else {
        fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))
    }
}

fn read_tableau(path: &Path) -> Result<Tableau> {
    let text = read_input(path)?;
    let j: TableauJson = serde_json::from_str(&text).context("parsing tableau JSON")?;
    Ok(Tableau::try_from(&j)?)
}

fn read_frame(input: &FrameIn) -> Result<FrameMatrix> {
    let delimiter = u8::try_from(input.delimiter).context("delimiter must be ASCII")?;
    let text = read_input(&input.input)?;
    Ok(FrameMatrix::read_csv(text.as_bytes(), delimiter)?)
}

fn tableau_json(t: &Tableau) -> serde_json::Value {
    serde_json::to_value(TableauJson::from(t)).expect("tableau serializes")
}

fn print_frame(out: &Output, f: &FrameMatrix) -> Result<()> {
    if out.json {
        println!("{}", json!({ "d": f.d(), "N": f.n(), "rows": f.rows() }));
    } else {
        f.write_csv(io::stdout().lock(), b',')?;
    }
    Ok(())
}

fn run(cli: Cli) -> Result<ExitCode> {
    let out = Output {
        json: cli.json,
        mu: cli.mu_display,
        color: matches!(cli.color, Color::Auto) && io::stdout().is_terminal(),
    };
    let ok = |flag: bool| if flag { ExitCode::SUCCESS } else { ExitCode::from(1) };
    match cli.command {
        Command::Validate { params, input, system } => {
            let t = read_tableau(&input)?;
            if params.n.is_some_and(|n| n != t.params().n())
                || params.d.is_some_and(|d| d != t.params().d())
            {
                bail!("input is a tableau for {}, not the requested parameters", t.params());
            }
            let report = validate_with(&t, system);
            if out.json {
                println!("{}", serde_json::to_string(&ReportJson::from(&report))?);
            } else {
                println!("{}", out.verdict(report.valid, "valid", "invalid"));
                for (id, amount) in &report.violations {
                    println!("  violated {id} by {amount}");
                }
            }
            Ok(ok(report.valid))
        }
        Command::Special(p) => {
            let t = eigensteps::special_point(p.params()?);
            if out.json {
                println!("{}", tableau_json(&t));
            } else {
                print!("{}", out.tableau(&t));
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Dim { params, oracle: use_oracle } => {
            let p = params.params()?;
            let formula = geometry::dimension(p);
            let checked = use_oracle.then(|| oracle::dimension_oracle(p));
            if out.json {
                let mut v = json!({ "N": p.n(), "d": p.d(), "dimension": formula });
                if let Some(o) = checked {
                    v["oracle"] = json!(o);
                }
                println!("{v}");
            } else if let Some(o) = checked {
                let o = o.map_or("empty".to_string(), |v| v.to_string());
                println!("{formula} (oracle {o})");
            } else {
                println!("{formula}");
            }
            Ok(ok(checked.is_none_or(|o| o == Some(formula))))
        }
        Command::Facets { params, oracle: use_oracle } => {
            let p = params.params()?;
            let formula = geometry::facet_count(p);
            let checked = if use_oracle {
                if p.d() < 2 || p.d() + 2 > p.n() {
                    bail!("the facet oracle needs 2 <= d <= N-2");
                }
                Some(oracle::irredundant_count(&HRep::new(p, Variant::FullReduced)?))
            } else {
                None
            };
            if out.json {
                let mut v = json!({ "N": p.n(), "d": p.d(), "facets": formula });
                if let Some(o) = checked {
                    v["oracle"] = json!(o);
                }
                println!("{v}");
            } else if let Some(o) = checked {
                println!("{formula} (oracle {o})");
            } else {
                println!("{formula}");
            }
            Ok(ok(checked.is_none_or(|o| o == formula)))
        }
        Command::Hrep { params, variant } => {
            let h = HRep::new(params.params()?, variant)?;
            if out.json {
                println!("{}", serde_json::to_string(&HRepJson::from(&h))?);
            } else {
                let vars: Vec<String> =
                    h.free_vars.iter().map(|(i, n)| format!("λ_{{{i},{n}}}")).collect();
                println!("{} over {}", h.variant, vars.join(", "));
                for q in &h.inequalities {
                    let terms: Vec<String> = q.coeffs.iter().map(rational::format).collect();
                    println!("  {:<18} [{}] · x <= {}", q.id.to_string(), terms.join(", "), q.rhs);
                }
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Witness { params, target } => {
            let w = geometry::witness(params.params()?, target)?;
            if out.json {
                println!(
                    "{}",
                    json!({
                        "target": target,
                        "strategy": w.strategy,
                        "tableau": tableau_json(&w.tableau),
                    })
                );
            } else {
                println!("violates exactly {target} ({})", w.strategy);
                print!("{}", out.tableau(&w.tableau));
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Vertices { params, limit } => {
            let vs = geometry::enumerate_vertices(params.params()?, limit)?;
            if out.json {
                let list: Vec<VertexJson> = vs.iter().map(VertexJson::from).collect();
                println!("{}", serde_json::to_string(&list)?);
            } else {
                println!("{} vertices", vs.len());
                for v in &vs {
                    let tight: Vec<String> =
                        v.tight_conditions.iter().map(ToString::to_string).collect();
                    println!("tight: {}", tight.join(" "));
                    print!("{}", out.tableau(&v.tableau));
                }
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Sample { params, seed, count } => {
            let p = params.params()?;
            let samples = geometry::sample_interior(p, seed, count);
            if out.json {
                let list: Vec<_> = samples.iter().map(tableau_json).collect();
                println!("{}", serde_json::Value::Array(list));
            } else {
                for t in &samples {
                    print!("{}", out.tableau(t));
                    println!();
                }
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Phi { input } => {
            let t = eigensteps::phi(&read_tableau(&input)?);
            if out.json {
                println!("{}", tableau_json(&t));
            } else {
                print!("{}", out.tableau(&t));
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Psi { input } => {
            let t = eigensteps::psi(&read_tableau(&input)?)?;
            if out.json {
                println!("{}", tableau_json(&t));
            } else {
                print!("{}", out.tableau(&t));
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Identities { params, input, seed, count } => {
            let p = params.params()?;
            let samples = match input {
                Some(path) => {
                    let list: Vec<TableauJson> = serde_json::from_str(&read_input(&path)?)
                        .context("parsing a JSON array of tableaux")?;
                    list.iter().map(Tableau::try_from).collect::<Result<Vec<_>, _>>()?
                }
                None => geometry::sample_interior(p, seed, count),
            };
            let holds = eigensteps::check_identities(p, &samples)?;
            if out.json {
                println!("{}", json!({ "holds": holds, "samples": samples.len() }));
            } else {
                println!("{} on {} samples", out.verdict(holds, "hold", "fail"), samples.len());
            }
            Ok(ok(holds))
        }
        Command::FrameEigensteps(input) => {
            let lam = frames::eigensteps_of_frame(&read_frame(&input)?)?;
            if out.json {
                println!("{}", serde_json::to_string(&FloatTableauJson::from(&lam))?);
            } else {
                print!("{}", out.float_tableau(&lam));
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::FrameTightCheck(io_args) => {
            let f = read_frame(&io_args.input)?;
            let deviation = frames::tightness_deviation(&f);
            let tight = deviation <= io_args.tol;
            if out.json {
                println!("{}", json!({ "tight": tight, "deviation": deviation }));
            } else {
                println!(
                    "{} (deviation {deviation:.3e})",
                    out.verdict(tight, "equal norm tight", "not equal norm tight")
                );
            }
            Ok(ok(tight))
        }
        Command::Reverse(input) => {
            print_frame(&out, &frames::reverse_frame(&read_frame(&input)?))?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Naimark(io_args) => {
            let g = frames::naimark_complement(&read_frame(&io_args.input)?, io_args.tol)?;
            print_frame(&out, &g)?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Harmonic(p) => {
            print_frame(&out, &frames::harmonic_frame(p.params()?)?)?;
            Ok(ExitCode::SUCCESS)
        }
        Command::VerifyPhi(c) => {
            let err = frames::phi_correspondence_error(&read_frame(&c.input)?, c.tol)?;
            report_correspondence(&out, "Φ", err, c.tol)
        }
        Command::VerifyPsi(c) => {
            let err = frames::psi_correspondence_error(&read_frame(&c.input)?, c.tol)?;
            report_correspondence(&out, "Ψ", err, c.tol)
        }
        Command::Plot2d { params, out: path } => {
            let svg = plot::render(params.params()?)?;
            match path {
                Some(path) => {
                    fs::write(&path, svg).with_context(|| format!("writing {}", path.display()))?
                }
                None => io::stdout().lock().write_all(svg.as_bytes())?,
            }
            Ok(ExitCode::SUCCESS)
        }
    }
}

fn report_correspondence(out: &Output, map: &str, err: f64, tol: f64) -> Result<ExitCode> {
    let holds = err <= tol;
    if out.json {
        println!("{}", json!({ "holds": holds, "max_error": err, "tol": tol }));
    } else {
        println!(
            "{map} correspondence {} (max error {err:.3e}, tol {tol:e})",
            out.verdict(holds, "holds", "fails")
        );
    }
    Ok(if holds { ExitCode::SUCCESS } else { ExitCode::from(1) })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}
