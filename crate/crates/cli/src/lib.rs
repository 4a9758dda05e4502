//! `rootcomp` command-line front end. [`run`] parses arguments, executes one
//! subcommand inside a bounded thread pool and returns the process exit code:
//! 0 pass, 1 hard failure, 2 usage or input error, 3 inconclusive.

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};

use rootcomp_core::charmult::freudenthal_mults;
use rootcomp_core::gko::{central_charge, l0_scalar, predict_series, wahl_positivity};
use rootcomp_core::rational::fmt_q;
use rootcomp_core::tensor::compare_reports;
use rootcomp_core::verify::{self, classify_wahl_case, hom_dim_prediction};
use rootcomp_core::weight::{enumerate_wahl_triples, is_wahl_triple};
use rootcomp_core::{
    AffineType, CartanData, Decomposer, Error, IndexSet, Method, Root, RootClass, Status, VerificationReport,
    Weight, WeylWord,
};

pub const EXIT_PASS: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_INCONCLUSIVE: i32 = 3;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Tsv,
    #[default]
    Text,
}

#[derive(Debug, Parser)]
#[command(name = "rootcomp", version, about = "Exact affine Kac-Moody combinatorics and root-component checks")]
pub struct CliConfig {
    /// Affine type label such as `A1~`, `C2~`, `G2~`.
    #[arg(long = "type", short = 't', global = true)]
    pub type_label: Option<String>,
    /// Truncation depth in powers of δ.
    #[arg(long, global = true, default_value_t = 4)]
    pub depth: u32,
    #[arg(long, global = true, default_value_t = 2)]
    pub max_level: i64,
    #[arg(long, global = true, default_value_t = 1)]
    pub max_k: u32,
    #[arg(long, global = true, default_value_t = 2)]
    pub coord_bound: i64,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    #[arg(long, short = 'o', global = true)]
    pub output: Option<PathBuf>,
    /// Worker threads; 0 uses every core.
    #[arg(long, global = true, default_value_t = 0)]
    pub parallelism: usize,
    /// Cap on the depth of any multiplicity table; exceeding it is inconclusive.
    #[arg(long, global = true)]
    pub max_table_depth: Option<u32>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Root classification and root-set queries.
    #[command(subcommand)]
    Roots(RootsCmd),
    /// Dominant weight multiplicities of an integrable module.
    Mult {
        #[arg(long)]
        lambda: String,
    },
    /// Truncated tensor product decomposition.
    Tensor(TensorArgs),
    /// Coset Virasoro scalars.
    #[command(subcommand)]
    Gko(GkoCmd),
    /// Wahl triple enumeration and checks.
    #[command(subcommand)]
    Wahl(WahlCmd),
    /// Verification harnesses.
    #[command(subcommand)]
    Verify(VerifyCmd),
}

#[derive(Debug, Subcommand)]
pub enum RootsCmd {
    Classify { root: String },
    Fset { root: String },
    Rhobeta { root: String },
    Exceptional,
    LemmaRootScan,
}

#[derive(Debug, Args)]
pub struct TensorArgs {
    #[arg(long)]
    pub lambda: String,
    #[arg(long)]
    pub mu: String,
    /// Use the character-product method instead of Racah-Speiser.
    #[arg(long, conflicts_with = "both")]
    pub oracle: bool,
    /// Run both methods and cross-check entrywise.
    #[arg(long)]
    pub both: bool,
}

#[derive(Debug, Args)]
pub struct TripleArgs {
    #[arg(long)]
    pub lambda: String,
    #[arg(long)]
    pub mu: String,
    #[arg(long)]
    pub nu: String,
}

#[derive(Debug, Args)]
pub struct WahlArgs {
    #[arg(long)]
    pub lambda: String,
    #[arg(long)]
    pub mu: String,
    #[arg(long)]
    pub beta: String,
}

#[derive(Debug, Subcommand)]
pub enum GkoCmd {
    Charge {
        #[arg(short = 'l')]
        l: i64,
        #[arg(short = 'm')]
        m: i64,
    },
    L0(TripleArgs),
    Predict(TripleArgs),
    Positivity(WahlArgs),
}

#[derive(Debug, Subcommand)]
pub enum WahlCmd {
    List,
    Check(WahlArgs),
}

#[derive(Debug, Subcommand)]
pub enum VerifyCmd {
    Theorem1,
    Table1,
    Prv {
        #[arg(long, required_unless_present = "witnesses")]
        lambda: Option<String>,
        #[arg(long, required_unless_present = "witnesses")]
        mu: Option<String>,
        /// Weyl word acting on λ, e.g. `s1s0`.
        #[arg(long, default_value = "e")]
        v: String,
        /// Weyl word acting on μ.
        #[arg(long, default_value = "e")]
        w: String,
        /// Replay the built-in witnesses for the current type.
        #[arg(long)]
        witnesses: bool,
    },
    DeltaSeries {
        #[arg(long)]
        lambda: String,
        #[arg(long)]
        mu: String,
    },
    Homdim {
        #[arg(long)]
        lambda: String,
        #[arg(long)]
        mu: String,
        #[arg(long)]
        theta: String,
        /// Index set such as `0,2` or `{0,2}`; empty by default.
        #[arg(long, default_value = "")]
        subset: String,
    },
    Positivity,
    RhoBeta,
    LemmaScan,
}

/// Failure modes of a command, each with its own exit code.
#[derive(Debug)]
enum CliError {
    Usage(String),
    Core(Error),
    Io(std::io::Error),
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::Core(e)
    }
}

impl CliError {
    fn code(&self) -> i32 {
        match self {
            CliError::Usage(_) => EXIT_USAGE,
            CliError::Io(_) => EXIT_FAIL,
            CliError::Core(e) => match e {
                Error::WindowInsufficient { .. } => EXIT_INCONCLUSIVE,
                Error::Invariant(_) => EXIT_FAIL,
                _ => EXIT_USAGE,
            },
        }
    }

    fn message(&self) -> String {
        match self {
            CliError::Usage(m) => format!("usage error: {m}"),
            CliError::Io(e) => format!("i/o error: {e}"),
            CliError::Core(e @ Error::WindowInsufficient { .. }) => format!("inconclusive: {e}"),
            CliError::Core(e) => format!("error: {e}"),
        }
    }
}

/// A rendered command result.
struct Rendered {
    json: Value,
    text: String,
    header: Vec<&'static str>,
    rows: Vec<Vec<String>>,
    code: i32,
}

impl Rendered {
    fn scalar(name: &'static str, value: String, json: Value) -> Self {
        Rendered {
            json,
            text: value.clone(),
            header: vec![name],
            rows: vec![vec![value]],
            code: EXIT_PASS,
        }
    }

    fn body(&self, format: Format) -> String {
        match format {
            Format::Json => {
                let mut s = serde_json::to_string_pretty(&self.json).expect("json value");
                s.push('\n');
                s
            }
            Format::Tsv => {
                let mut s = self.header.join("\t");
                s.push('\n');
                for r in &self.rows {
                    s.push_str(&r.join("\t"));
                    s.push('\n');
                }
                s
            }
            Format::Text => {
                let mut s = self.text.clone();
                if !s.ends_with('\n') {
                    s.push('\n');
                }
                s
            }
        }
    }
}

fn to_value<T: Serialize>(x: &T) -> Value {
    // Round trip through `Value` so keys come out sorted and stable.
    serde_json::to_value(x).expect("serializable")
}

fn status_code(s: Status) -> i32 {
    match s {
        Status::Pass => EXIT_PASS,
        Status::Fail => EXIT_FAIL,
        Status::Inconclusive | Status::PreconditionUnmet => EXIT_INCONCLUSIVE,
    }
}

fn render_report(r: &VerificationReport) -> Rendered {
    let mut text = format!(
        "{} {}: {:?} ({} checked, {} failures, {} inconclusive)\n",
        r.claim,
        r.ty,
        r.status,
        r.instances_checked,
        r.failures.len(),
        r.inconclusive
    );
    for f in &r.failures {
        text.push_str(&format!("FAIL {}: expected {}, got {}\n", f.input, f.expected, f.got));
    }
    for n in &r.notes {
        text.push_str(&format!("  {n}\n"));
    }
    let status = to_value(&r.status).as_str().unwrap_or_default().to_string();
    let mut rows = vec![vec![
        "summary".into(),
        r.claim.clone(),
        status,
        r.instances_checked.to_string(),
        r.inconclusive.to_string(),
        String::new(),
    ]];
    for f in &r.failures {
        rows.push(vec![
            "failure".into(),
            f.input.clone(),
            f.expected.clone(),
            f.got.clone(),
            String::new(),
            String::new(),
        ]);
    }
    for n in &r.notes {
        rows.push(vec![
            "note".into(),
            n.clone(),
            String::new(),
            String::new(),
            String::new(),
            String::new(),
        ]);
    }
    eprintln!("elapsed: {:.3}s", r.elapsed.as_secs_f64());
    Rendered {
        json: to_value(r),
        text,
        header: vec!["kind", "claim_or_input", "status_or_expected", "checked_or_got", "inconclusive", ""],
        rows,
        code: status_code(r.status),
    }
}

struct Ctx<'a> {
    cfg: &'a CliConfig,
}

impl Ctx<'_> {
    fn cartan(&self) -> Result<CartanData, CliError> {
        let label = self
            .cfg
            .type_label
            .as_deref()
            .ok_or_else(|| CliError::Usage("--type is required for this command".into()))?;
        let ty: AffineType = label.parse()?;
        Ok(CartanData::new(ty))
    }

    fn decomposer<'c>(&self, cd: &'c CartanData) -> Decomposer<'c> {
        Decomposer::new(cd).with_table_depth_limit(self.cfg.max_table_depth)
    }
}

fn weight(cd: &CartanData, s: &str) -> Result<Weight, CliError> {
    Ok(Weight::parse(cd, s)?)
}

fn root(cd: &CartanData, s: &str) -> Result<Root, CliError> {
    Ok(Root::parse(cd, s)?)
}

fn word(s: &str) -> Result<WeylWord, CliError> {
    s.parse::<WeylWord>().map_err(CliError::Core)
}

fn index_set(s: &str) -> Result<IndexSet, CliError> {
    let inner = s.trim().trim_start_matches('{').trim_end_matches('}');
    let mut set = IndexSet::empty();
    for part in inner.split(',').map(str::trim).filter(|p| !p.is_empty()) {
        let i: usize = part
            .parse()
            .map_err(|_| CliError::Usage(format!("bad index `{part}` in subset `{s}`")))?;
        set.insert(i);
    }
    Ok(set)
}

fn class_text(c: &RootClass) -> String {
    match c {
        RootClass::Real => "real".into(),
        RootClass::Imaginary { multiplicity } => format!("imaginary (multiplicity {multiplicity})"),
        RootClass::NotRoot => "not a root".into(),
    }
}

fn run_roots(ctx: &Ctx, cmd: &RootsCmd) -> Result<Rendered, CliError> {
    let cd = ctx.cartan()?;
    Ok(match cmd {
        RootsCmd::Classify { root: r } => {
            let r = root(&cd, r)?;
            let class = cd.classify(&r);
            Rendered::scalar(
                "class",
                class_text(&class),
                json!({ "root": r.display(&cd), "classification": to_value(&class) }),
            )
        }
        RootsCmd::Fset { root: r } => {
            let r = root(&cd, r)?;
            let f = cd.f_set(&r)?;
            Rendered::scalar("f_set", f.to_string(), json!({ "root": r.display(&cd), "f_set": to_value(&f) }))
        }
        RootsCmd::Rhobeta { root: r } => {
            let r = root(&cd, r)?;
            let w = cd.rho_beta(&r)?;
            Rendered::scalar(
                "rho_beta",
                w.display(&cd),
                json!({ "root": r.display(&cd), "rho_beta": to_value(&w) }),
            )
        }
        RootsCmd::Exceptional => {
            let rows = cd.exceptional_roots();
            let mut text = String::new();
            let mut tsv = Vec::new();
            for r in &rows {
                let beta = Root::new(r.gamma.iter().map(|x| -x).collect(), 1);
                text.push_str(&format!("beta={} simple=a{}\n", beta.display(&cd), r.simple));
                tsv.push(vec![beta.display(&cd), r.simple.to_string()]);
            }
            if rows.is_empty() {
                text.push_str("no exceptional roots\n");
            }
            Rendered {
                json: json!({ "type": cd.ty.to_string(), "rows": to_value(&rows) }),
                text,
                header: vec!["beta", "simple"],
                rows: tsv,
                code: EXIT_PASS,
            }
        }
        RootsCmd::LemmaRootScan => render_report(&verify::verify_lemma_scan(&cd, ctx.cfg.max_k)),
    })
}

fn run_mult(ctx: &Ctx, lambda: &str) -> Result<Rendered, CliError> {
    let cd = ctx.cartan()?;
    let lam = weight(&cd, lambda)?;
    let table = freudenthal_mults(&cd, &lam, ctx.cfg.depth)?;
    let export = table.export(&cd);
    let mut text = String::new();
    let mut rows = Vec::new();
    for e in &export.entries {
        text.push_str(&format!("{}\t{}\n", e.weight.display(&cd), e.mult));
        rows.push(vec![e.weight.display(&cd), e.mult.to_string()]);
    }
    Ok(Rendered {
        json: to_value(&export),
        text,
        header: vec!["weight", "mult"],
        rows,
        code: EXIT_PASS,
    })
}

fn run_tensor(ctx: &Ctx, args: &TensorArgs) -> Result<Rendered, CliError> {
    let cd = ctx.cartan()?;
    let dec = ctx.decomposer(&cd);
    let lam = weight(&cd, &args.lambda)?;
    let mu = weight(&cd, &args.mu)?;
    let method = if args.oracle { Method::CharOracle } else { Method::Racah };
    let report = dec.decompose(&lam, &mu, ctx.cfg.depth, method)?;
    let mut json = to_value(&report);
    let mut text = String::new();
    let mut rows = Vec::new();
    for c in &report.components {
        text.push_str(&format!("{}\t{}\t{}\n", c.nu.display(&cd), c.delta_degree, c.mult));
        rows.push(vec![c.nu.display(&cd), c.delta_degree.to_string(), c.mult.to_string()]);
    }
    let mut code = EXIT_PASS;
    if args.both {
        let other = dec.decompose(&lam, &mu, ctx.cfg.depth, Method::CharOracle)?;
        let mismatches = compare_reports(&report, &other);
        let agree = mismatches.is_empty();
        if !agree {
            code = EXIT_FAIL;
        }
        json["cross_check"] = json!({
            "method": to_value(&Method::CharOracle),
            "table_depth": other.table_depth,
            "agree": agree,
            "mismatches": mismatches.iter().map(|w| w.display(&cd)).collect::<Vec<_>>(),
        });
        text.push_str(&format!(
            "cross-check: {}\n",
            if agree { "agree".to_string() } else { format!("{} mismatches", mismatches.len()) }
        ));
    }
    Ok(Rendered {
        json,
        text,
        header: vec!["nu", "delta_degree", "mult"],
        rows,
        code,
    })
}

fn run_gko(ctx: &Ctx, cmd: &GkoCmd) -> Result<Rendered, CliError> {
    let cd = ctx.cartan()?;
    Ok(match cmd {
        GkoCmd::Charge { l, m } => {
            let c = fmt_q(&central_charge(&cd, *l, *m)?);
            Rendered::scalar("central_charge", c.clone(), json!({ "central_charge": c }))
        }
        GkoCmd::L0(t) => {
            let v = fmt_q(&l0_scalar(&cd, &weight(&cd, &t.lambda)?, &weight(&cd, &t.mu)?, &weight(&cd, &t.nu)?)?);
            Rendered::scalar("l0_scalar", v.clone(), json!({ "l0_scalar": v }))
        }
        GkoCmd::Predict(t) => {
            let p = predict_series(&cd, &weight(&cd, &t.lambda)?, &weight(&cd, &t.mu)?, &weight(&cd, &t.nu)?)?;
            let kind = to_value(&p.kind).as_str().unwrap_or_default().to_string();
            let (l0, c) = (fmt_q(&p.l0_scalar), fmt_q(&p.central_charge));
            Rendered {
                json: to_value(&p),
                text: format!("{kind} (l0 = {l0}, c = {c})"),
                header: vec!["kind", "l0_scalar", "central_charge"],
                rows: vec![vec![kind, l0, c]],
                code: EXIT_PASS,
            }
        }
        GkoCmd::Positivity(t) => {
            let v = fmt_q(&wahl_positivity(
                &cd,
                &weight(&cd, &t.lambda)?,
                &weight(&cd, &t.mu)?,
                &root(&cd, &t.beta)?,
            )?);
            Rendered::scalar("l0_scalar", v.clone(), json!({ "l0_scalar": v }))
        }
    })
}

fn run_wahl(ctx: &Ctx, cmd: &WahlCmd) -> Result<Rendered, CliError> {
    let cd = ctx.cartan()?;
    Ok(match cmd {
        WahlCmd::List => {
            let triples = enumerate_wahl_triples(&cd, ctx.cfg.max_level, ctx.cfg.max_k, ctx.cfg.coord_bound);
            let mut text = String::new();
            let mut rows = Vec::new();
            for t in &triples {
                let row = vec![t.lambda.display(&cd), t.mu.display(&cd), t.beta.display(&cd)];
                text.push_str(&row.join("\t"));
                text.push('\n');
                rows.push(row);
            }
            Rendered {
                json: json!({ "type": cd.ty.to_string(), "count": triples.len(), "triples": to_value(&triples) }),
                text,
                header: vec!["lambda", "mu", "beta"],
                rows,
                code: EXIT_PASS,
            }
        }
        WahlCmd::Check(t) => {
            let (lam, mu, beta) = (weight(&cd, &t.lambda)?, weight(&cd, &t.mu)?, root(&cd, &t.beta)?);
            let verdict = is_wahl_triple(&cd, &lam, &mu, &beta);
            let case = if verdict.holds() {
                Some(classify_wahl_case(&cd, &lam, &mu, &beta)?)
            } else {
                None
            };
            let verdict_text = to_value(&verdict)["verdict"].as_str().unwrap_or_default().to_string();
            let case_text = case
                .as_ref()
                .map(|c| to_value(c)["case"].as_str().unwrap_or_default().to_string())
                .unwrap_or_default();
            Rendered {
                json: json!({ "verdict": to_value(&verdict), "case": case.as_ref().map(to_value) }),
                text: if case_text.is_empty() {
                    format!("{verdict:?}")
                } else {
                    format!("holds; case {case:?}", case = case.as_ref().expect("case"))
                },
                header: vec!["verdict", "case"],
                rows: vec![vec![verdict_text, case_text]],
                code: if verdict.holds() { EXIT_PASS } else { EXIT_FAIL },
            }
        }
    })
}

fn run_verify(ctx: &Ctx, cmd: &VerifyCmd) -> Result<Rendered, CliError> {
    let cd = ctx.cartan()?;
    let cfg = ctx.cfg;
    let dec = ctx.decomposer(&cd);
    let report = match cmd {
        VerifyCmd::Theorem1 => {
            verify::verify_theorem_main(&dec, cfg.max_level, cfg.max_k, cfg.coord_bound, cfg.depth)
        }
        VerifyCmd::Table1 => verify::verify_table1(&cd),
        VerifyCmd::Prv {
            witnesses: true, ..
        } => verify::verify_witnesses(&dec, cfg.depth),
        VerifyCmd::Prv { lambda, mu, v, w, .. } => {
            let lam = weight(&cd, lambda.as_deref().unwrap_or_default())?;
            let mu = weight(&cd, mu.as_deref().unwrap_or_default())?;
            verify::verify_prv(&dec, &lam, &mu, &word(v)?, &word(w)?, cfg.depth)
        }
        VerifyCmd::DeltaSeries { lambda, mu } => {
            verify::delta_series_report(&dec, &weight(&cd, lambda)?, &weight(&cd, mu)?, cfg.depth)
        }
        VerifyCmd::Homdim { lambda, mu, theta, subset } => {
            let s = index_set(subset)?;
            let d = hom_dim_prediction(&cd, &weight(&cd, lambda)?, &weight(&cd, mu)?, &weight(&cd, theta)?, &s)?;
            return Ok(Rendered::scalar(
                "dimension",
                d.to_string(),
                json!({ "subset": to_value(&s), "dimension": d }),
            ));
        }
        VerifyCmd::Positivity => verify::verify_positivity(&cd, cfg.max_level, cfg.max_k, cfg.coord_bound),
        VerifyCmd::RhoBeta => verify::verify_rho_beta_dominance(&cd, cfg.max_k),
        VerifyCmd::LemmaScan => verify::verify_lemma_scan(&cd, cfg.max_k),
    };
    Ok(render_report(&report))
}

fn execute(cfg: &CliConfig) -> Result<Rendered, CliError> {
    let ctx = Ctx { cfg };
    match &cfg.command {
        Command::Roots(c) => run_roots(&ctx, c),
        Command::Mult { lambda } => run_mult(&ctx, lambda),
        Command::Tensor(a) => run_tensor(&ctx, a),
        Command::Gko(c) => run_gko(&ctx, c),
        Command::Wahl(c) => run_wahl(&ctx, c),
        Command::Verify(c) => run_verify(&ctx, c),
    }
}

fn emit(cfg: &CliConfig, body: &str) -> Result<(), CliError> {
    match &cfg.output {
        Some(path) => std::fs::write(path, body).map_err(CliError::Io),
        None => {
            let mut out = std::io::stdout().lock();
            out.write_all(body.as_bytes()).map_err(CliError::Io)
        }
    }
}

/// Runs the CLI on `argv` (including the program name) and returns the exit code.
pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cfg = match CliConfig::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_PASS };
            let _ = e.print();
            return code;
        }
    };
    let pool = match rayon::ThreadPoolBuilder::new().num_threads(cfg.parallelism).build() {
        Ok(p) => p,
        Err(e) => {
            eprintln!("error: cannot build thread pool: {e}");
            return EXIT_FAIL;
        }
    };
    let result = pool.install(|| execute(&cfg)).and_then(|r| {
        emit(&cfg, &r.body(cfg.format))?;
        Ok(r.code)
    });
    match result {
        Ok(code) => code,
        Err(e) => {
            eprintln!("{}", e.message());
            e.code()
        }
    }
}
