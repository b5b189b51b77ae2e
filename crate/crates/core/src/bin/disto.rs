use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};

use disto::annulus;
use disto::cayley;
use disto::distortion::{self, ClassicalKind, Profile, SurfaceKind};
use disto::exact::{self, Exact, Q};
use disto::suites;
use disto::torus_grid::{self, GridFootprint};
use disto::{Ball, Error, Presentation, Rewriter, Word};

#[derive(Parser)]
#[command(name = "disto", version, about = "Surface-group word problems, Cayley-ball geometry and distortion certificates")]
struct Cli {
    /// Seed for randomized checks; recorded in every report.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Write the report here instead of standard output.
    #[arg(long, short, global = true)]
    output: Option<PathBuf>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
    Dot,
}

#[derive(Args, Clone)]
struct GroupArgs {
    /// Genus of the closed surface.
    #[arg(long, conflicts_with = "free_rank")]
    genus: Option<usize>,
    /// Rank of a free group instead.
    #[arg(long)]
    free_rank: Option<usize>,
}

impl GroupArgs {
    fn presentation(&self) -> Result<Presentation, Error> {
        match (self.genus, self.free_rank) {
            (_, Some(k)) => Presentation::free(k),
            (g, None) => Presentation::closed_surface(g.unwrap_or(2)),
        }
    }
}

#[derive(Args, Clone)]
struct BallArgs {
    #[command(flatten)]
    group: GroupArgs,
    #[arg(long, default_value_t = 4)]
    radius: usize,
    /// Face budget; defaults to DISTO_BALL_BUDGET or 5000000.
    #[arg(long)]
    budget: Option<usize>,
}

impl BallArgs {
    fn build(&self) -> Result<Ball, Error> {
        let p = self.group.presentation()?;
        Ball::enumerate_with_budget(&p, self.radius, self.budget.unwrap_or_else(cayley::default_budget))
    }
}

#[derive(Subcommand)]
enum Command {
    /// Enumerate a ball of the Cayley graph.
    Ball(BallArgs),
    /// Run Dehn's algorithm on a word.
    Reduce {
        #[command(flatten)]
        group: GroupArgs,
        #[arg(long)]
        word: String,
    },
    /// Canonical form, distance and exceptionality of a face.
    Classify {
        #[command(flatten)]
        ball: BallArgs,
        #[arg(long)]
        word: String,
    },
    /// All geodesics from the base face to a face.
    Geodesics {
        #[command(flatten)]
        ball: BallArgs,
        #[arg(long)]
        word: String,
        #[arg(long, default_value_t = suites::GEODESIC_CAP)]
        cap: usize,
    },
    /// Discrete diameter and éloignement of a face set given by words separated by `;`.
    Diam {
        #[command(flatten)]
        ball: BallArgs,
        #[arg(long)]
        faces: String,
        /// Base face for the éloignement; the base face D0 by default.
        #[arg(long, default_value = "")]
        base: String,
    },
    /// Length, height, diameter and reduction plan of a torus footprint.
    TorusFootprint {
        /// Squares `i,j` separated by `;`.
        #[arg(long)]
        faces: String,
        /// Crossed vertical lines `x` (multiples of 1/2) separated by `;`.
        #[arg(long, default_value = "")]
        vlines: String,
        #[arg(long, default_value = "")]
        hlines: String,
    },
    /// Decide the growth criteria for `d_n` (and `w_n`).
    Criterion {
        #[arg(long)]
        d: String,
        #[arg(long)]
        w: Option<String>,
    },
    /// The n-th word over {a, b} and its word-length bound.
    Avila {
        #[arg(long)]
        n: u64,
    },
    /// Build the subsequence σ for a decomposition profile.
    Sigma {
        /// JSON file `{"l": {...}, "k": {...}}`.
        #[arg(long)]
        profile: PathBuf,
        #[arg(long, default_value_t = 1_000_000)]
        horizon: u64,
        #[arg(long)]
        terms: Option<usize>,
    },
    /// Fragmentation or classical word-length certificates.
    Cert(CertArgs),
    /// Delay schedule for pushing arcs back across the annulus.
    Annulus(AnnulusArgs),
    /// Run every check and print a pass/fail matrix.
    VerifyLemmas {
        #[arg(long, default_value_t = 2)]
        genus: usize,
        #[arg(long, default_value_t = 5)]
        radius: usize,
        /// Random target sequences for the schedule checks.
        #[arg(long, default_value_t = 20)]
        sequences: usize,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Surface {
    Boundary,
    Torus,
    Closed,
}

#[derive(Clone, Copy, ValueEnum)]
enum Classic {
    Baumslag,
    Heisenberg,
}

#[derive(Args)]
struct CertArgs {
    #[arg(long, conflicts_with = "group")]
    surface: Option<Surface>,
    #[arg(long, default_value_t = 2)]
    genus: u32,
    #[arg(long, conflicts_with = "el")]
    diam: Option<u64>,
    #[arg(long)]
    el: Option<u64>,
    /// A classical distortion certificate instead.
    #[arg(long)]
    group: Option<Classic>,
    #[arg(long, default_value_t = 2, allow_hyphen_values = true)]
    p: i64,
    #[arg(long)]
    n: Option<u64>,
    /// Also emit the `(12λ − 6)·ln 18` bound for this λ.
    #[arg(long)]
    lambda: Option<u64>,
}

#[derive(Args)]
struct AnnulusArgs {
    /// JSON array of target values (numbers or "p/q" strings).
    #[arg(long, conflicts_with = "reach")]
    v: Option<PathBuf>,
    /// A reach map `i(0),i(1),…,i(N)` instead of a target sequence.
    #[arg(long)]
    reach: Option<String>,
    #[arg(long, default_value_t = 1)]
    l: u64,
    /// Also run the λ growth check up to this power.
    #[arg(long)]
    lmax: Option<u64>,
    /// Write the schedule JSON here as well.
    #[arg(long)]
    emit: Option<PathBuf>,
}

struct Outcome {
    result: Value,
    text: Option<String>,
    passed: bool,
}

impl Outcome {
    fn ok(result: impl Serialize) -> Result<Outcome, Error> {
        Ok(Outcome { result: serde_json::to_value(result)?, text: None, passed: true })
    }
}

fn usage(msg: impl Into<String>) -> Error {
    Error::InvalidParameter(msg.into())
}

fn run(cli: &Cli) -> Result<Outcome, Error> {
    let want = |f: Format| cli.format == Format::Json || cli.format == f;
    let allowed = match &cli.command {
        Command::Ball(_) => want(Format::Dot),
        Command::Annulus(_) => want(Format::Csv),
        _ => cli.format == Format::Json,
    };
    if !allowed {
        return Err(usage("this command does not support the requested format"));
    }
    match &cli.command {
        Command::Ball(args) => {
            let ball = args.build()?;
            let text = (cli.format == Format::Dot).then(|| ball.to_dot());
            Ok(Outcome { result: serde_json::to_value(ball.report())?, text, passed: true })
        }
        Command::Reduce { group, word } => {
            let p = group.presentation()?;
            let rw = Rewriter::new(&p)?;
            let w = p.parse_word(word)?.free_reduce();
            let trace = rw.reduction_trace(&w);
            let last = trace.last().cloned().unwrap_or_else(Word::empty);
            let steps: Vec<String> = trace.iter().map(|s| p.format_word(s)).collect();
            let matches = rw.find_simplifiable(&w);
            Outcome::ok(json!({
                "word": p.format_word(&w),
                "matches": matches,
                "steps": steps,
                "reduced": p.format_word(&last),
                "trivial": last.is_empty(),
            }))
        }
        Command::Classify { ball, word } => {
            let b = ball.build()?;
            let p = b.presentation();
            let f = b.locate(&p.parse_word(word)?)?;
            let exceptional = if f == b.root() { None } else { Some(b.is_exceptional(f)?) };
            let down: Vec<String> = b.down_neighbors(f).iter().map(|&(x, n)| format!("{} via {}", p.format_word(&b.canonical(n)), p.symbol(x))).collect();
            Outcome::ok(json!({
                "canonical": p.format_word(&b.canonical(f)),
                "distance": b.distance_from_root(f),
                "exceptional": exceptional,
                "down_neighbors": down,
                "distinct_vertex_rings": b.distinct_vertex_rings(f).ok(),
            }))
        }
        Command::Geodesics { ball, word, cap } => {
            let b = ball.build()?;
            let p = b.presentation();
            let f = b.locate(&p.parse_word(word)?)?;
            let geos: Vec<String> = b.geodesics_to(f, *cap)?.iter().map(|g| p.format_word(g)).collect();
            Outcome::ok(json!({ "face": p.format_word(&b.canonical(f)), "count": geos.len(), "geodesics": geos }))
        }
        Command::Diam { ball, faces, base } => {
            let b = ball.build()?;
            let p = b.presentation();
            let set = faces.split(';').filter(|t| !t.trim().is_empty()).map(|t| b.locate(&p.parse_word(t)?)).collect::<Result<Vec<_>, _>>()?;
            let base = b.locate(&p.parse_word(base)?)?;
            Outcome::ok(json!({
                "faces": set.iter().map(|&f| p.format_word(&b.canonical(f))).collect::<Vec<_>>(),
                "diam": b.diam_discrete(&set)?,
                "el": b.eloignement(base, &set)?,
            }))
        }
        Command::TorusFootprint { faces, vlines, hlines } => {
            let f = GridFootprint::new(torus_grid::parse_squares(faces)?, torus_grid::parse_lines(vlines)?, torus_grid::parse_lines(hlines)?)?;
            let plan = torus_grid::footprint_plan(&f);
            Outcome::ok(json!({
                "length": f.length(),
                "height": f.height(),
                "diam": f.diam(),
                "connected": f.is_connected(),
                "plan": plan,
            }))
        }
        Command::Criterion { d, w } => {
            let d = distortion::GrowthModel::parse(d)?;
            let mut out = json!({
                "d": d,
                "sublinear": distortion::criterion_sublinear(&d),
                "nlogn": distortion::criterion_nlogn(&d),
            });
            if let Some(w) = w {
                let w = distortion::GrowthModel::parse(w)?;
                out["w"] = serde_json::to_value(&w)?;
                out["wn"] = serde_json::to_value(distortion::criterion_wn(&d, &w))?;
            }
            Outcome::ok(out)
        }
        Command::Avila { n } => {
            let word = distortion::avila_enumerate(*n)?;
            Outcome::ok(json!({ "n": n, "word": word, "length": word.len(), "bound": distortion::avila_bound(*n)?, "log_base": "2" }))
        }
        Command::Sigma { profile, horizon, terms } => {
            let profile: Profile = serde_json::from_str(&fs::read_to_string(profile)?)?;
            let s = distortion::build_sigma(&profile, *horizon, *terms)?;
            let verified = s.verify();
            Ok(Outcome { result: json!({ "schedule": s, "verified": verified }), text: None, passed: verified })
        }
        Command::Cert(args) => cert(args),
        Command::Annulus(args) => annulus_command(args, cli.format),
        Command::VerifyLemmas { genus, radius, sequences } => verify(*genus, *radius, *sequences, cli.seed),
    }
}

fn cert(args: &CertArgs) -> Result<Outcome, Error> {
    let mut out = serde_json::Map::new();
    if let Some(group) = args.group {
        let n = args.n.ok_or_else(|| usage("--n is required with --group"))?;
        let kind = match group {
            Classic::Baumslag => ClassicalKind::Baumslag { p: args.p },
            Classic::Heisenberg => ClassicalKind::Heisenberg,
        };
        out.insert("classical".into(), serde_json::to_value(distortion::classical_certificates(kind, n)?)?);
    }
    if let Some(surface) = args.surface {
        let (kind, value) = match surface {
            Surface::Boundary => (SurfaceKind::Boundary, args.diam.ok_or_else(|| usage("--diam is required for this surface"))?),
            Surface::Torus => (SurfaceKind::Torus, args.diam.ok_or_else(|| usage("--diam is required for this surface"))?),
            Surface::Closed => (SurfaceKind::Closed { genus: args.genus }, args.el.ok_or_else(|| usage("--el is required for closed surfaces"))?),
        };
        out.insert("fragmentation".into(), serde_json::to_value(distortion::frag_certificates(kind, value)?)?);
    }
    if let Some(lambda) = args.lambda {
        out.insert("a_bound".into(), serde_json::to_value(distortion::a_bound_from_lambda(lambda)?)?);
    }
    if out.is_empty() {
        return Err(usage("give --surface, --group or --lambda"));
    }
    let passed = out.get("fragmentation").and_then(|f| f["consistent_at_unit_constant"].as_bool()).unwrap_or(true);
    Ok(Outcome { result: Value::Object(out), text: None, passed })
}

fn read_values(path: &Path) -> Result<Vec<Q>, Error> {
    let raw: Value = serde_json::from_str(&fs::read_to_string(path)?)?;
    let items = match &raw {
        Value::Array(a) => a.clone(),
        Value::Object(o) => o.get("values").and_then(Value::as_array).cloned().ok_or_else(|| Error::Parse("expected an array or {\"values\": [...]}".into()))?,
        _ => return Err(Error::Parse("expected an array of values".into())),
    };
    items
        .iter()
        .map(|v| match v {
            Value::String(s) => exact::parse(s),
            Value::Number(n) => exact::parse(&n.to_string()),
            _ => Err(Error::Parse(format!("not a number: {v}"))),
        })
        .collect()
}

fn annulus_command(args: &AnnulusArgs, format: Format) -> Result<Outcome, Error> {
    let mut extra = serde_json::Map::new();
    let schedule = match (&args.v, &args.reach) {
        (Some(path), None) => {
            let v = annulus::make_admissible(&read_values(path)?)?;
            let model = annulus::build_orbit(&v, v.len())?;
            extra.insert("target".into(), json!({ "values": v.values().iter().cloned().map(Exact).collect::<Vec<_>>(), "lift": v.lift() }));
            extra.insert("perturbations".into(), serde_json::to_value(model.perturbations())?);
            if let Some(lmax) = args.lmax {
                extra.insert("lambda_growth".into(), serde_json::to_value(annulus::lambda_growth_check(&v, &model, lmax)?)?);
            }
            annulus::compute_schedule(&model, args.l)?
        }
        (None, Some(reach)) => {
            let reach = reach.split(',').map(|t| t.trim().parse::<u64>().map_err(|_| Error::Parse(format!("bad reach value `{t}`")))).collect::<Result<Vec<_>, _>>()?;
            annulus::schedule_from_reach(&reach, None)?
        }
        _ => return Err(usage("give exactly one of --v and --reach")),
    };
    let fin = annulus::verify_final(&schedule);
    let l = schedule.l.unwrap_or(args.l);
    let mut result = json!({
        "lambda": schedule.lambda,
        "N": schedule.n_max,
        "reach": schedule.reach,
        "partition": schedule.partition,
        "i0": schedule.i0,
        "delays": schedule.delays,
        "trajectory": annulus::crossing_trajectory(&schedule),
        "final_ok": fin.ok,
        "final_violation": fin.violation,
        "l": l,
        "lambda_over_l": Exact(Q::new((schedule.lambda as i64).into(), (l as i64).into())),
        "a_bound": distortion::a_bound_from_lambda(schedule.lambda)?,
    });
    if let Value::Object(o) = &mut result {
        o.extend(extra);
    }
    if let Some(path) = &args.emit {
        fs::write(path, serde_json::to_string_pretty(&result)? + "\n")?;
    }
    let text = (format == Format::Csv).then(|| annulus::trajectory_csv(&schedule));
    Ok(Outcome { result, text, passed: fin.ok })
}

fn verify(genus: usize, radius: usize, sequences: usize, seed: u64) -> Result<Outcome, Error> {
    let p = Presentation::closed_surface(genus)?;
    let ball = Ball::enumerate(&p, radius)?;
    let mut checks = suites::lambda_facts(&p);
    checks.extend(suites::ball_suites(&ball, seed)?);
    checks.push(suites::figure_schedule()?);
    checks.push(suites::random_schedules(sequences, 50, seed)?);
    checks.push(suites::lambda_growth(50)?);
    let passed = checks.iter().all(|c| c.passed);
    let matrix: Vec<Value> = checks.iter().map(|c| json!({ "id": c.id, "passed": c.passed })).collect();
    Ok(Outcome { result: json!({ "genus": genus, "radius": radius, "passed": passed, "matrix": matrix, "checks": checks }), text: None, passed })
}

fn exit_code(e: &Error) -> u8 {
    match e {
        Error::InvalidParameter(_) | Error::Parse(_) | Error::Json(_) | Error::Io(_) => 2,
        Error::BudgetExceeded { .. } | Error::OutsideBall { .. } | Error::CapExceeded { .. } | Error::Horizon(_) => 3,
        Error::Violation(_) => 1,
    }
}

fn command_name(c: &Command) -> &'static str {
    match c {
        Command::Ball(_) => "ball",
        Command::Reduce { .. } => "reduce",
        Command::Classify { .. } => "classify",
        Command::Geodesics { .. } => "geodesics",
        Command::Diam { .. } => "diam",
        Command::TorusFootprint { .. } => "torus-footprint",
        Command::Criterion { .. } => "criterion",
        Command::Avila { .. } => "avila",
        Command::Sigma { .. } => "sigma",
        Command::Cert(_) => "cert",
        Command::Annulus(_) => "annulus",
        Command::VerifyLemmas { .. } => "verify-lemmas",
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    let outcome = match run(&cli) {
        Ok(o) => o,
        Err(e) => {
            eprintln!("disto: {e}");
            return ExitCode::from(exit_code(&e));
        }
    };
    let body = match outcome.text {
        Some(text) => text,
        None => {
            let envelope = json!({ "schema": 1, "command": command_name(&cli.command), "seed": cli.seed, "result": outcome.result });
            serde_json::to_string_pretty(&envelope).expect("reports serialize") + "\n"
        }
    };
    let written = match &cli.output {
        Some(path) => fs::write(path, body),
        None => {
            use std::io::Write;
            std::io::stdout().write_all(body.as_bytes())
        }
    };
    if let Err(e) = written {
        eprintln!("disto: {e}");
        return ExitCode::from(2);
    }
    ExitCode::from(if outcome.passed { 0 } else { 1 })
}
