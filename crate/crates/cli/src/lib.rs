//! Command-line front end for `splicenorm`.
//!
//! Exit status is 0 on success, 1 on a domain error (unreadable or invalid
//! input, a failed check) and 2 on a usage error.

mod svg;

use std::ffi::OsString;
use std::fmt::Write as _;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use serde::Serialize;
use serde_json::json;

use splicenorm::alexander::Factor;
use splicenorm::diagram::{parse_diagram, parse_unvalidated, random_diagram, validate, RandomParams};
use splicenorm::geometry::Polytope;
use splicenorm::rational;
use splicenorm::verify::{verify_corpus, VerifyOptions};
use splicenorm::{CohomologyClass, GraphLink};

#[derive(Parser, Debug)]
#[command(name = "splicenorm", version, about = "Alexander and Thurston norms of graph links")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug)]
struct Input {
    /// Splice diagram in `.spl` format
    file: PathBuf,
}

#[derive(Args, Debug)]
struct Json {
    /// Emit JSON
    #[arg(long)]
    json: bool,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Check a diagram and list structural errors and warnings
    Validate {
        #[command(flatten)]
        input: Input,
        #[command(flatten)]
        out: Json,
    },
    /// Linking numbers of arrowheads with nodes and leaves
    Linking {
        #[command(flatten)]
        input: Input,
        #[command(flatten)]
        out: Json,
    },
    /// Canonical multivariable Alexander polynomial
    Alexander {
        #[command(flatten)]
        input: Input,
        /// Print the numerator and denominator factors instead
        #[arg(long)]
        raw: bool,
        #[command(flatten)]
        out: Json,
    },
    /// Vertices of the Newton polytope
    Newton {
        #[command(flatten)]
        input: Input,
        /// Hull of the expanded polynomial's support instead of the zonotope
        #[arg(long)]
        expand: bool,
        /// Project to essential coordinates
        #[arg(long)]
        essential: bool,
        #[command(flatten)]
        out: Json,
    },
    /// Thurston and Alexander norms of a class
    Norm {
        #[command(flatten)]
        input: Input,
        /// Class as comma separated integers or p/q rationals
        #[arg(long, allow_hyphen_values = true)]
        phi: CohomologyClass,
        #[command(flatten)]
        out: Json,
        /// Report format; `json` is the same as --json
        #[arg(long, value_parser = ["text", "json"])]
        report: Option<String>,
    },
    /// Vertices of the reduced unit ball
    Ball {
        #[command(flatten)]
        input: Input,
        #[command(flatten)]
        out: Json,
    },
    /// Whether a class is fibered
    Fibered {
        #[command(flatten)]
        input: Input,
        #[arg(long, allow_hyphen_values = true)]
        phi: CohomologyClass,
        #[command(flatten)]
        out: Json,
    },
    /// Characteristic hyperplanes, one per node
    Hyperplanes {
        #[command(flatten)]
        input: Input,
        #[command(flatten)]
        out: Json,
    },
    /// Classify the facets of the reduced unit ball
    Facets {
        #[command(flatten)]
        input: Input,
        #[command(flatten)]
        out: Json,
    },
    /// SVG of a two-dimensional reduced unit ball and its hyperplanes
    Plot {
        #[command(flatten)]
        input: Input,
        /// Output file; standard output if omitted
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Run the consistency checks on random diagrams
    Verify {
        #[arg(long, default_value_t = 50)]
        count: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Random classes per diagram
        #[arg(long, default_value_t = 20)]
        classes: usize,
        #[command(flatten)]
        gen: GenParams,
        #[command(flatten)]
        out: Json,
    },
    /// Print a random diagram
    Gen {
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[command(flatten)]
        gen: GenParams,
    },
}

#[derive(Args, Debug)]
struct GenParams {
    #[arg(long, default_value_t = 4)]
    max_nodes: usize,
    #[arg(long, default_value_t = 4)]
    max_degree: usize,
    #[arg(long, default_value_t = 5)]
    weight_bound: u64,
}

impl From<&GenParams> for RandomParams {
    fn from(p: &GenParams) -> Self {
        RandomParams { max_nodes: p.max_nodes, max_degree: p.max_degree, weight_bound: p.weight_bound }
    }
}

/// A failure reported with exit status 1.
struct Failure(String);

impl<E: std::fmt::Display> From<E> for Failure {
    fn from(e: E) -> Self {
        Failure(e.to_string())
    }
}

type Outcome = Result<String, Failure>;

/// Runs the CLI on `args` (including the program name) and returns the
/// exit status.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> u8
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = e.exit_code();
            let text = e.render().to_string();
            if code == 0 {
                let _ = out.write_all(text.as_bytes());
            } else {
                let _ = err.write_all(text.as_bytes());
            }
            return code as u8;
        }
    };
    match dispatch(&cli.command) {
        Ok(text) => {
            let _ = out.write_all(text.as_bytes());
            0
        }
        Err(Failure(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            1
        }
    }
}

fn read(path: &Path) -> Result<String, Failure> {
    std::fs::read_to_string(path).map_err(|e| Failure(format!("cannot read {}: {e}", path.display())))
}

fn load(input: &Input) -> Result<GraphLink, Failure> {
    let d = parse_diagram(&read(&input.file)?)?;
    Ok(GraphLink::new(d)?)
}

/// Pretty JSON with object keys sorted.
fn to_json<T: Serialize>(value: &T) -> Outcome {
    let v = serde_json::to_value(value)?;
    Ok(serde_json::to_string_pretty(&v)? + "\n")
}

fn yes(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn vertices_text(p: &Polytope) -> String {
    p.vertices().iter().map(|v| rational::format_vec(v) + "\n").collect()
}

fn check_class(g: &GraphLink, phi: &CohomologyClass) -> Result<(), Failure> {
    phi.check_len(g.r()).map_err(|_| {
        Failure(format!("--phi has {} entries, the diagram has {} components", phi.len(), g.r()))
    })
}

fn dispatch(cmd: &Command) -> Outcome {
    match cmd {
        Command::Validate { input, out } => {
            let d = parse_unvalidated(&read(&input.file)?)?;
            let report = validate(&d);
            let text = if out.json {
                to_json(&json!({
                    "name": d.name(),
                    "r": d.r(), "p": d.p(), "q": d.q(),
                    "valid": report.is_valid(),
                    "errors": report.errors,
                    "warnings": report.warnings,
                }))?
            } else {
                let mut s = format!("{}: r={} p={} q={}\n", d.name(), d.r(), d.p(), d.q());
                for e in &report.errors {
                    let _ = writeln!(s, "error: {e}");
                }
                for w in &report.warnings {
                    let _ = writeln!(s, "warning: {w}");
                }
                s.push_str(if report.is_valid() { "valid\n" } else { "invalid\n" });
                s
            };
            if report.is_valid() {
                Ok(text)
            } else {
                Err(Failure(format!("{}{}", text, "diagram is invalid").trim_end().to_string()))
            }
        }
        Command::Linking { input, out } => {
            let g = load(input)?;
            let lm = g.linking();
            if out.json {
                return to_json(lm);
            }
            let mut s = String::from("arrow");
            for c in &lm.columns {
                let _ = write!(s, "\t{c}");
            }
            s.push('\n');
            for (j, row) in lm.rows.iter().zip(&lm.entries) {
                s.push_str(j);
                for x in row {
                    let _ = write!(s, "\t{x}");
                }
                s.push('\n');
            }
            Ok(s)
        }
        Command::Alexander { input, raw, out } => {
            let g = load(input)?;
            if *raw {
                let f = g.factors();
                if out.json {
                    return to_json(f);
                }
                let line = |f: &Factor| {
                    let exps: Vec<String> = f.exponent.iter().map(|e| e.to_string()).collect();
                    format!(
                        "{}\t({})\t{}\n",
                        f.vertex.as_deref().unwrap_or("knot"),
                        exps.join(","),
                        f.multiplicity
                    )
                };
                let mut s = String::from("numerator\n");
                f.numerator.iter().for_each(|x| s.push_str(&line(x)));
                s.push_str("denominator\n");
                f.denominator.iter().for_each(|x| s.push_str(&line(x)));
                return Ok(s);
            }
            let delta = g.alexander()?;
            if out.json {
                to_json(&json!({
                    "nvars": delta.nvars(),
                    "polynomial": delta.to_string(),
                    "terms": delta.to_json_terms(),
                }))
            } else {
                Ok(format!("{delta}\n"))
            }
        }
        Command::Newton { input, expand, essential, out } => {
            let g = load(input)?;
            let mut p = if *expand { g.support_polytope()?.clone() } else { g.zonotope()?.clone() };
            if *essential {
                let red = g.reduction()?;
                p = p.map_linear(&red.forward)?.project(red.rank)?;
            }
            if out.json {
                to_json(&p)
            } else {
                Ok(vertices_text(&p))
            }
        }
        Command::Norm { input, phi, out, report } => {
            let g = load(input)?;
            check_class(&g, phi)?;
            let r = g.norm_report(phi)?;
            if out.json || report.as_deref() == Some("json") {
                return to_json(&r);
            }
            let mut s = format!(
                "thurston={} alexander={} coincide={} fibered={}",
                rational::format(&r.thurston),
                rational::format(&r.alexander),
                yes(r.coincide),
                yes(r.fibered)
            );
            if let Some(offset) = &r.knot_offset {
                let _ = write!(s, " knot_offset={}", rational::format(offset));
            }
            s.push('\n');
            Ok(s)
        }
        Command::Ball { input, out } => {
            let g = load(input)?;
            let ball = g.unit_ball()?;
            if out.json {
                to_json(ball)
            } else {
                Ok(vertices_text(ball))
            }
        }
        Command::Fibered { input, phi, out } => {
            let g = load(input)?;
            check_class(&g, phi)?;
            let fibered = g.is_fibered(phi)?;
            let on: Vec<String> = g
                .characteristic_hyperplanes()?
                .into_iter()
                .filter(|h| h.contains(phi))
                .map(|h| h.node)
                .collect();
            if out.json {
                return to_json(&json!({ "phi": phi, "fibered": fibered, "hyperplanes": on }));
            }
            Ok(if fibered {
                "fibered\n".to_string()
            } else {
                format!("not fibered: on the hyperplanes of {}\n", on.join(", "))
            })
        }
        Command::Hyperplanes { input, out } => {
            let g = load(input)?;
            let hs = g.characteristic_hyperplanes()?;
            if out.json {
                return to_json(&hs);
            }
            let ints = |v: &[num_bigint::BigInt]| {
                let parts: Vec<String> = v.iter().map(|x| x.to_string()).collect();
                format!("({})", parts.join(","))
            };
            Ok(hs
                .iter()
                .map(|h| {
                    let normal: Vec<String> = h.normal.iter().map(|x| x.to_string()).collect();
                    format!(
                        "{}\tnormal=({})\treduced={}\tprimitive={}\n",
                        h.node,
                        normal.join(","),
                        ints(&h.reduced),
                        ints(&h.primitive)
                    )
                })
                .collect())
        }
        Command::Facets { input, out } => {
            let g = load(input)?;
            let report = g.classify_facets()?;
            if out.json {
                return to_json(&report);
            }
            let mut s = String::new();
            for (k, f) in report.facets.iter().enumerate() {
                let verts: Vec<String> =
                    f.vertices.iter().map(|&i| rational::format_vec(&report.ball.vertices()[i])).collect();
                let _ = writeln!(
                    s,
                    "facet {k}: vertices {} sample {} fibered={}{}",
                    verts.join(" "),
                    rational::format_vec(&f.sample),
                    yes(f.fibered),
                    if f.crossing.is_empty() {
                        String::new()
                    } else {
                        format!(" crossed by {}", f.crossing.join(","))
                    }
                );
            }
            for (v, hs) in report.ball.vertices().iter().zip(&report.vertex_hyperplanes) {
                let _ = writeln!(
                    s,
                    "vertex {}: on {}",
                    rational::format_vec(v),
                    if hs.is_empty() { "-".into() } else { hs.join(",") }
                );
            }
            let _ = writeln!(
                s,
                "{} facets, {} fibered, {} interior crossings",
                report.facets.len(),
                report.facets.iter().filter(|f| f.fibered).count(),
                report.interior_crossings()
            );
            if report.all_fibered() && report.interior_crossings() == 0 {
                Ok(s)
            } else {
                Err(Failure(format!("{s}non-fibered facet or interior crossing found")))
            }
        }
        Command::Plot { input, output } => {
            let g = load(input)?;
            let rank = g.reduction()?.rank;
            if rank != 2 {
                return Err(Failure(format!("plot needs 2 essential coordinates, this diagram has {rank}")));
            }
            let figure = svg::render(g.diagram().name(), g.unit_ball()?, &g.characteristic_hyperplanes()?);
            match output {
                Some(path) => {
                    std::fs::write(path, &figure)
                        .map_err(|e| Failure(format!("cannot write {}: {e}", path.display())))?;
                    Ok(String::new())
                }
                None => Ok(figure),
            }
        }
        Command::Verify { count, seed, classes, gen, out } => {
            let opts = VerifyOptions {
                count: *count,
                seed: *seed,
                params: gen.into(),
                classes: *classes,
                ..VerifyOptions::default()
            };
            let report = verify_corpus(&opts)?;
            let text = if out.json {
                to_json(&report)?
            } else {
                let mut s = format!("{} diagrams, seed {seed}\n", report.diagrams);
                for c in &report.checks {
                    let status = if c.failures.is_empty() { "ok" } else { "FAILED" };
                    let _ = writeln!(s, "{:<20} {:>6} runs  {status}", c.name, c.runs);
                    for f in c.failures.iter().take(5) {
                        let _ = writeln!(s, "    {f}");
                    }
                }
                s
            };
            if report.passed() {
                Ok(text)
            } else {
                Err(Failure(text.trim_end().to_string()))
            }
        }
        Command::Gen { seed, gen } => Ok(random_diagram(*seed, gen.into())?.to_string()),
    }
}
