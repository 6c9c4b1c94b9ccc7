// `!(x > 0.0)` is used on purpose so NaN is rejected too.
#![allow(clippy::neg_cmp_op_on_partial_ord, clippy::excessive_precision)]

use std::collections::BTreeMap;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use foxwright_core::bcfw::RegionGrid;
use foxwright_core::continuous::nu_with;
use foxwright_core::foxwright::Sign;
use foxwright_core::hfunction::{eval_h, moment_check, moment_check_b};
use foxwright_core::selftest::{self, models, SelftestConfig};
use foxwright_core::{
    Bicomplex, Complex64, ContourConfig, Error, EvalOptions, HWeightParams, Hyperbolic, MomentCheck, QuadConfig,
    Scheme,
};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::{json, Value};

mod input;
mod verify;

use input::{Model, Point};

#[derive(Parser)]
#[command(name = "foxwright", version, about = "Fox-Wright functions, bicomplex domains and coherent states")]
struct Cli {
    /// Write a JSON run manifest for this invocation to the given path.
    #[arg(long, global = true, value_name = "PATH")]
    manifest: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Complex Fox-Wright series.
    #[command(subcommand)]
    Fw(FwCmd),
    /// Bicomplex Fox-Wright series.
    #[command(subcommand)]
    Bcfw(BcfwCmd),
    /// Discrete-spectrum coherent states.
    #[command(subcommand)]
    Cs(CsCmd),
    /// Continuous-spectrum nu-function.
    #[command(subcommand)]
    Nu(NuCmd),
    /// Weight function and the moment identity.
    #[command(subcommand)]
    Measure(MeasureCmd),
    /// Run the acceptance suite.
    Selftest(SelftestArgs),
}

#[derive(Subcommand)]
enum FwCmd {
    /// Evaluate the series at a point.
    Eval(FwEvalArgs),
    /// Margin, radius of convergence and boundary behaviour.
    Radius(ParamsArg),
}

#[derive(Args)]
struct ParamsArg {
    #[arg(long, value_name = "FILE")]
    params: PathBuf,
}

#[derive(Args)]
struct FwEvalArgs {
    #[arg(long, value_name = "FILE")]
    params: PathBuf,
    /// Evaluation point `re,im` (or `z1re,z1im,z2re,z2im` for bcfw).
    #[arg(long, allow_hyphen_values = true)]
    z: String,
    #[arg(long, default_value_t = 1e-14)]
    tol: f64,
    #[arg(long, default_value_t = 10_000)]
    max_terms: usize,
    /// Permit evaluation on the circle of convergence.
    #[arg(long)]
    allow_boundary: bool,
}

#[derive(Subcommand)]
enum BcfwCmd {
    /// Convergence report with the nine-case domain.
    Classify(ParamsArg),
    /// Evaluate at a bicomplex point.
    Eval(FwEvalArgs),
    /// Membership grid over (|z1|, |z2|) as CSV.
    Region(RegionArgs),
}

#[derive(Args)]
struct RegionArgs {
    #[arg(long, value_name = "FILE")]
    params: PathBuf,
    /// Grid intervals per axis.
    #[arg(long, default_value_t = 40)]
    steps: usize,
    /// Axis extents `e1,e2`; defaults to 1.5 radii.
    #[arg(long)]
    extent: Option<String>,
}

#[derive(Subcommand)]
enum CsCmd {
    /// State coefficients as JSON.
    Coeffs(CoeffsArgs),
    /// Overlap table for every pair of the given points, as CSV.
    Overlap(OverlapArgs),
    /// Structural invariants of a model; exit 4 on any failure.
    Verify(VerifyArgs),
}

#[derive(Args)]
struct CoeffsArgs {
    #[arg(long, value_name = "FILE")]
    model: PathBuf,
    #[arg(long, allow_hyphen_values = true)]
    z: String,
    /// Fixed truncation instead of the automatic one.
    #[arg(long)]
    k: Option<usize>,
}

#[derive(Args)]
struct OverlapArgs {
    #[arg(long, value_name = "FILE")]
    model: PathBuf,
    /// Points `re,im`; repeat the flag for more.
    #[arg(long, allow_hyphen_values = true, required = true)]
    z: Vec<String>,
}

#[derive(Args)]
struct VerifyArgs {
    #[arg(long, value_name = "FILE", conflicts_with = "random")]
    model: Option<PathBuf>,
    /// Verify this many seeded random models instead of a file.
    #[arg(long)]
    random: Option<usize>,
    #[arg(long, default_value_t = selftest::DEFAULT_SEED as i64)]
    seed: i64,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    format: Format,
}

#[derive(Subcommand)]
enum NuCmd {
    /// nu(zeta) by quadrature; repeat --zeta for a grid.
    Eval(NuArgs),
}

#[derive(Args)]
struct NuArgs {
    #[arg(long, value_name = "FILE")]
    model: PathBuf,
    /// `zeta`, or `w1,w2` for a bicomplex model.
    #[arg(long, required = true)]
    zeta: Vec<String>,
    #[arg(long, default_value = "gk")]
    scheme: Scheme,
    #[arg(long, default_value_t = QuadConfig::default().rel_tol)]
    rel_tol: f64,
    /// Also run the other scheme and report the agreement.
    #[arg(long)]
    dual: bool,
}

#[derive(Subcommand)]
enum MeasureCmd {
    /// Moment table (k, lhs, rhs, rel_err, pass); exit 4 on any failure.
    Check(MeasureArgs),
    /// Weight H-function on (0, x_max]; exit 4 if it dips below -1e-10.
    Weight(WeightArgs),
}

#[derive(Args)]
struct MeasureArgs {
    #[arg(long, value_name = "FILE")]
    model: PathBuf,
    /// `k`, `a..b` or a comma list.
    #[arg(long, default_value = "0..6")]
    k: String,
    /// Pass threshold on the relative error.
    #[arg(long, default_value_t = 1e-6)]
    tol: f64,
    /// Relative tolerance of the outer quadrature.
    #[arg(long, default_value_t = 1e-9)]
    rel_tol: f64,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    format: Format,
}

#[derive(Args)]
struct WeightArgs {
    #[arg(long, value_name = "FILE")]
    model: PathBuf,
    #[arg(long, default_value_t = 20.0)]
    x_max: f64,
    #[arg(long, default_value_t = 200)]
    steps: usize,
}

#[derive(Args)]
struct SelftestArgs {
    #[arg(long, default_value_t = selftest::DEFAULT_SEED as i64)]
    seed: i64,
    /// Multiplier on every pass threshold.
    #[arg(long, default_value_t = 1.0)]
    tolerance_scale: f64,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
enum Format {
    Json,
    Csv,
    #[value(skip)]
    Text,
}

#[derive(Debug)]
pub enum Failure {
    BadInput(String),
    Numeric(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Numeric(e)
    }
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::BadInput(_) => 1,
            Failure::Numeric(Error::Validation(_) | Error::SingularElement) => 1,
            Failure::Numeric(Error::DomainViolation { .. } | Error::Domain(_)) => 2,
            Failure::Numeric(_) => 3,
        }
    }

    fn message(&self) -> String {
        match self {
            Failure::BadInput(m) => m.clone(),
            Failure::Numeric(e) => e.to_string(),
        }
    }
}

#[derive(Serialize)]
struct RunManifest {
    command: String,
    params_file: Option<PathBuf>,
    tolerances: BTreeMap<&'static str, f64>,
    seed: Option<i64>,
    output_format: Format,
}

struct Output {
    text: String,
    /// Name of the first failed verification, if any.
    failed: Option<String>,
    manifest: RunManifest,
}

impl Output {
    fn new(command: &str, params_file: Option<&Path>, format: Format, text: String) -> Self {
        Output {
            text,
            failed: None,
            manifest: RunManifest {
                command: command.to_string(),
                params_file: params_file.map(Path::to_path_buf),
                tolerances: BTreeMap::new(),
                seed: None,
                output_format: format,
            },
        }
    }

    fn tol(mut self, name: &'static str, v: f64) -> Self {
        self.manifest.tolerances.insert(name, v);
        self
    }

    fn seed(mut self, seed: i64) -> Self {
        self.manifest.seed = Some(seed);
        self
    }

    fn failed(mut self, failed: Option<String>) -> Self {
        self.failed = failed;
        self
    }
}

fn pretty(v: &impl Serialize) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("serializable");
    s.push('\n');
    s
}

fn csv_table(header: &[&str], rows: impl IntoIterator<Item = Vec<String>>) -> String {
    let mut w = csv::WriterBuilder::new()
        .terminator(csv::Terminator::Any(b'\n'))
        .from_writer(Vec::new());
    w.write_record(header).expect("in-memory write");
    for r in rows {
        w.write_record(&r).expect("in-memory write");
    }
    String::from_utf8(w.into_inner().expect("in-memory flush")).expect("utf-8")
}

fn c2(z: Complex64) -> Value {
    json!([z.re, z.im])
}

fn extended(x: f64) -> Value {
    if x == f64::INFINITY {
        json!("inf")
    } else {
        json!(x)
    }
}

fn fw_eval(a: &FwEvalArgs) -> Result<Output, Failure> {
    let params = input::fw_params(&a.params)?;
    let z = input::complex(&a.z)?;
    let opts = EvalOptions {
        tol: a.tol,
        max_terms: a.max_terms,
        allow_boundary: a.allow_boundary,
    };
    let r = params.eval(z, &opts)?;
    let text = pretty(&json!({
        "value": c2(r.value),
        "terms": r.terms_used,
        "tail_bound": r.tail_bound,
    }));
    Ok(Output::new("fw eval", Some(&a.params), Format::Json, text).tol("tol", a.tol))
}

fn fw_radius(a: &ParamsArg) -> Result<Output, Failure> {
    let params = input::fw_params(&a.params)?;
    let sign = match params.margin_sign() {
        Sign::Negative => "negative",
        Sign::Zero => "zero",
        Sign::Positive => "positive",
    };
    let text = pretty(&json!({
        "p": params.p(),
        "q": params.q(),
        "margin": params.margin(),
        "margin_sign": sign,
        "radius": extended(params.radius()),
        "lambda": c2(params.lambda()),
        "boundary_abs_convergent": params.margin_sign() == Sign::Zero && params.boundary_convergent(),
    }));
    Ok(Output::new("fw radius", Some(&a.params), Format::Json, text))
}

fn bcfw_classify(a: &ParamsArg) -> Result<Output, Failure> {
    let report = input::bcfw_params(&a.params)?.classify()?;
    Ok(Output::new("bcfw classify", Some(&a.params), Format::Json, pretty(&report)))
}

fn bcfw_eval(a: &FwEvalArgs) -> Result<Output, Failure> {
    let params = input::bcfw_params(&a.params)?;
    let z = input::bicomplex(&a.z)?;
    let opts = EvalOptions {
        tol: a.tol,
        max_terms: a.max_terms,
        allow_boundary: a.allow_boundary,
    };
    let r = params.eval(z, &opts)?;
    let text = pretty(&json!({
        "value": r.value,
        "terms": r.terms_used,
        "tail_bound": r.tail_bound,
    }));
    Ok(Output::new("bcfw eval", Some(&a.params), Format::Json, text).tol("tol", a.tol))
}

fn bcfw_region(a: &RegionArgs) -> Result<Output, Failure> {
    let params = input::bcfw_params(&a.params)?;
    let report = params.classify()?;
    let mut grid = RegionGrid::auto(&report, a.steps);
    if let Some(e) = &a.extent {
        match input::numbers(e)?[..] {
            [e1, e2] if e1 > 0.0 && e2 > 0.0 => grid.extent = Hyperbolic::new(e1, e2),
            _ => return Err(Failure::BadInput(format!("extent '{e}' must be two positive numbers"))),
        }
    }
    let points = params.region_sample(&grid)?;
    let text = csv_table(
        &["z1_abs", "z2_abs", "inside"],
        points
            .iter()
            .map(|p| vec![p.z1_abs.to_string(), p.z2_abs.to_string(), p.inside.to_string()]),
    );
    Ok(Output::new("bcfw region", Some(&a.params), Format::Csv, text))
}

fn cs_coeffs(a: &CoeffsArgs) -> Result<Output, Failure> {
    let text = match (input::model(&a.model)?, input::point(&a.z)?) {
        (Model::Complex(m), Point::Complex(z)) => {
            let st = match a.k {
                Some(k) => m.make_state_with_k(z, k)?,
                None => m.make_state(z)?,
            };
            pretty(&json!({
                "z": c2(st.z),
                "coeffs": st.coeffs.iter().map(|&c| c2(c)).collect::<Vec<_>>(),
                "tail": st.tail_mass,
            }))
        }
        (Model::Bicomplex(m), Point::Bicomplex(z)) => {
            let st = match a.k {
                Some(k) => m.make_state_b_with_k(z, k)?,
                None => m.make_state_b(z)?,
            };
            let n = st.components[0].coeffs.len();
            pretty(&json!({
                "z": z,
                "coeffs": (0..n).map(|k| st.coeff(k)).collect::<Vec<Bicomplex>>(),
                "tail": st.tail_mass(),
            }))
        }
        (Model::Complex(_), Point::Bicomplex(_)) => {
            return Err(Failure::BadInput("complex model needs --z re,im".into()))
        }
        (Model::Bicomplex(_), Point::Complex(_)) => {
            return Err(Failure::BadInput("bicomplex model needs --z z1re,z1im,z2re,z2im".into()))
        }
    };
    Ok(Output::new("cs coeffs", Some(&a.model), Format::Json, text))
}

fn cs_overlap(a: &OverlapArgs) -> Result<Output, Failure> {
    let Model::Complex(m) = input::model(&a.model)? else {
        return Err(Failure::BadInput(
            "overlap tables take a complex model; bicomplex overlaps are checked by `cs verify`".into(),
        ));
    };
    let points = a.z.iter().map(|s| input::complex(s)).collect::<Result<Vec<_>, _>>()?;
    let mut rows = Vec::new();
    for &z in &points {
        for &w in &points {
            let o = m.overlap(z, w)?;
            rows.push(vec![
                z.re.to_string(),
                z.im.to_string(),
                w.re.to_string(),
                w.im.to_string(),
                o.re.to_string(),
                o.im.to_string(),
                o.norm().to_string(),
            ]);
        }
    }
    let text = csv_table(&["z_re", "z_im", "zp_re", "zp_im", "re", "im", "abs"], rows);
    Ok(Output::new("cs overlap", Some(&a.model), Format::Csv, text))
}

fn cs_verify(a: &VerifyArgs) -> Result<Output, Failure> {
    let rows = match (&a.model, a.random) {
        (Some(path), _) => match input::model(path)? {
            Model::Complex(m) => verify::complex_suite("model", &m),
            Model::Bicomplex(m) => verify::bicomplex_suite("model", &m),
        },
        (None, Some(n)) => {
            let mut rng = ChaCha8Rng::seed_from_u64(a.seed as u64);
            (0..n)
                .flat_map(|i| verify::complex_suite(&format!("random-{i}"), &models::coherent_model(&mut rng)))
                .collect()
        }
        (None, None) => return Err(Failure::BadInput("give --model FILE or --random N".into())),
    };
    let failed = rows.iter().find(|r| !r.pass).map(|r| format!("{}: {}", r.model, r.check));
    let text = match a.format {
        Format::Json => pretty(&rows),
        Format::Csv | Format::Text => csv_table(
            &["model", "check", "worst", "limit", "pass", "note"],
            rows.iter().map(|r| {
                vec![
                    r.model.clone(),
                    r.check.to_string(),
                    format!("{:e}", r.worst),
                    format!("{:e}", r.limit),
                    r.pass.to_string(),
                    r.note.clone(),
                ]
            }),
        ),
    };
    let out = Output::new("cs verify", a.model.as_deref(), a.format, text).failed(failed);
    Ok(if a.random.is_some() { out.seed(a.seed) } else { out })
}

fn nu_eval(a: &NuArgs) -> Result<Output, Failure> {
    let model = input::model(&a.model)?;
    let cfg = QuadConfig {
        rel_tol: a.rel_tol,
        ..QuadConfig::default()
    };
    let one = |m: &foxwright_core::CoherentModel, zeta: f64| -> Result<Value, Failure> {
        let r = nu_with(m, zeta, &cfg, a.scheme)?;
        let mut v = json!({"value": r.value, "err_est": r.err_est, "scheme": r.scheme.to_string()});
        if a.dual {
            let o = nu_with(m, zeta, &cfg, a.scheme.other())?;
            let rel = (o.value - r.value).abs() / r.value.abs();
            v["dual"] = json!({
                "scheme": o.scheme.to_string(),
                "value": o.value,
                "rel_diff": rel,
                "agree": rel <= 1e-8,
            });
        }
        Ok(v)
    };
    let mut results = Vec::new();
    for s in &a.zeta {
        let v = match (&model, &input::numbers(s)?[..]) {
            (Model::Complex(m), &[zeta]) => {
                let mut v = one(m, zeta)?;
                v["zeta"] = json!(zeta);
                v
            }
            (Model::Bicomplex(m), &[w1, w2]) => {
                let c1 = one(m.component(1), w1).map_err(|f| tag(f, 1))?;
                let c2 = one(m.component(2), w2).map_err(|f| tag(f, 2))?;
                json!({"zeta": {"c1": w1, "c2": w2}, "e1": c1, "e2": c2})
            }
            (Model::Complex(_), _) => return Err(Failure::BadInput(format!("zeta '{s}' must be one number"))),
            (Model::Bicomplex(_), _) => return Err(Failure::BadInput(format!("zeta '{s}' must be w1,w2"))),
        };
        results.push(v);
    }
    let text = if results.len() == 1 {
        pretty(&results[0])
    } else {
        pretty(&results)
    };
    Ok(Output::new("nu eval", Some(&a.model), Format::Json, text).tol("rel_tol", a.rel_tol))
}

fn tag(f: Failure, p: u8) -> Failure {
    match f {
        Failure::Numeric(e) => Failure::Numeric(e.in_component(p)),
        other => other,
    }
}

fn measure_check(a: &MeasureArgs) -> Result<Output, Failure> {
    let model = input::model(&a.model)?;
    let ks = input::index_range(&a.k)?;
    let cfg = QuadConfig {
        rel_tol: a.rel_tol,
        ..QuadConfig::default()
    };
    let mut rows: Vec<(Option<u8>, MomentCheck)> = Vec::new();
    for &k in &ks {
        match &model {
            Model::Complex(m) => rows.push((None, moment_check(m, k, &cfg)?)),
            Model::Bicomplex(m) => {
                let [c1, c2] = moment_check_b(m, k, &cfg)?;
                rows.push((Some(1), c1));
                rows.push((Some(2), c2));
            }
        }
    }
    let failed = rows
        .iter()
        .find(|(_, c)| !(c.rel_err <= a.tol))
        .map(|(p, c)| match p {
            Some(p) => format!("moment k = {} in component {p}", c.k),
            None => format!("moment k = {}", c.k),
        });
    let text = match a.format {
        Format::Json => pretty(
            &rows
                .iter()
                .map(|(p, c)| {
                    let mut v = json!({"k": c.k, "lhs": c.lhs, "rhs": c.rhs, "rel_err": c.rel_err, "pass": c.rel_err <= a.tol});
                    if let Some(p) = p {
                        v["component"] = json!(p);
                    }
                    v
                })
                .collect::<Vec<_>>(),
        ),
        Format::Csv | Format::Text => {
            let bc = matches!(model, Model::Bicomplex(_));
            let mut header = vec!["k", "lhs", "rhs", "rel_err", "pass"];
            if bc {
                header.insert(0, "component");
            }
            csv_table(
                &header,
                rows.iter().map(|(p, c)| {
                    let mut r = vec![
                        c.k.to_string(),
                        c.lhs.to_string(),
                        c.rhs.to_string(),
                        format!("{:e}", c.rel_err),
                        (c.rel_err <= a.tol).to_string(),
                    ];
                    if let Some(p) = p {
                        r.insert(0, p.to_string());
                    }
                    r
                }),
            )
        }
    };
    Ok(Output::new("measure check", Some(&a.model), a.format, text)
        .tol("pass", a.tol)
        .tol("rel_tol", a.rel_tol)
        .failed(failed))
}

/// The weight is not clamped: negative values are printed as computed and
/// reported as a violation.
fn measure_weight(a: &WeightArgs) -> Result<Output, Failure> {
    const FLOOR: f64 = -1e-10;
    let models = match input::model(&a.model)? {
        Model::Complex(m) => vec![(None, HWeightParams::from_model(&m))],
        Model::Bicomplex(m) => vec![
            (Some(1u8), HWeightParams::from_model(m.component(1))),
            (Some(2), HWeightParams::from_model(m.component(2))),
        ],
    };
    if !(a.x_max > 0.0) || a.steps == 0 {
        return Err(Failure::BadInput("x_max and steps must be positive".into()));
    }
    let cc = ContourConfig::default();
    let mut rows = Vec::new();
    let mut failed = None;
    for (p, hp) in &models {
        for i in 1..=a.steps {
            let x = a.x_max * i as f64 / a.steps as f64;
            let h = eval_h(hp, x, &cc).map_err(|e| match p {
                Some(p) => Failure::Numeric(e.in_component(*p)),
                None => Failure::Numeric(e),
            })?;
            if h < FLOOR && failed.is_none() {
                failed = Some(format!("weight H({x}) = {h:e} is negative"));
            }
            let mut r = vec![x.to_string(), h.to_string(), (h >= FLOOR).to_string()];
            if let Some(p) = p {
                r.insert(0, p.to_string());
            }
            rows.push(r);
        }
    }
    let header: &[&str] = if models.len() == 2 {
        &["component", "x", "h", "nonnegative"]
    } else {
        &["x", "h", "nonnegative"]
    };
    Ok(Output::new("measure weight", Some(&a.model), Format::Csv, csv_table(header, rows))
        .tol("floor", FLOOR)
        .failed(failed))
}

fn run_selftest(a: &SelftestArgs) -> Result<Output, Failure> {
    if !(a.tolerance_scale > 0.0) {
        return Err(Failure::BadInput("tolerance scale must be positive".into()));
    }
    let cfg = SelftestConfig {
        seed: a.seed as u64,
        tolerance_scale: a.tolerance_scale,
    };
    let start = Instant::now();
    let reports = selftest::run_all(&cfg);
    let mut text: String = reports.iter().map(|r| r.line() + "\n").collect();
    text.push_str(&format!("total {:.2} s\n", start.elapsed().as_secs_f64()));
    let failed = reports
        .iter()
        .find(|r| !r.passed)
        .map(|r| format!("criterion {} ({})", r.id, r.name));
    Ok(Output::new("selftest", None, Format::Text, text)
        .seed(a.seed)
        .tol("scale", a.tolerance_scale)
        .failed(failed))
}

fn configure_threads() -> Result<(), Failure> {
    if let Ok(v) = std::env::var("FW_THREADS") {
        let n: usize = v
            .trim()
            .parse()
            .ok()
            .filter(|&n| n > 0)
            .ok_or_else(|| Failure::BadInput(format!("FW_THREADS='{v}' is not a positive integer")))?;
        rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()
            .map_err(|e| Failure::BadInput(format!("FW_THREADS: {e}")))?;
    }
    Ok(())
}

fn run(cli: &Cli) -> Result<Output, Failure> {
    configure_threads()?;
    match &cli.command {
        Command::Fw(FwCmd::Eval(a)) => fw_eval(a),
        Command::Fw(FwCmd::Radius(a)) => fw_radius(a),
        Command::Bcfw(BcfwCmd::Classify(a)) => bcfw_classify(a),
        Command::Bcfw(BcfwCmd::Eval(a)) => bcfw_eval(a),
        Command::Bcfw(BcfwCmd::Region(a)) => bcfw_region(a),
        Command::Cs(CsCmd::Coeffs(a)) => cs_coeffs(a),
        Command::Cs(CsCmd::Overlap(a)) => cs_overlap(a),
        Command::Cs(CsCmd::Verify(a)) => cs_verify(a),
        Command::Nu(NuCmd::Eval(a)) => nu_eval(a),
        Command::Measure(MeasureCmd::Check(a)) => measure_check(a),
        Command::Measure(MeasureCmd::Weight(a)) => measure_weight(a),
        Command::Selftest(a) => run_selftest(a),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let out = match run(&cli) {
        Ok(out) => out,
        Err(f) => {
            eprintln!("error: {}", f.message());
            return ExitCode::from(f.code());
        }
    };
    if let Some(path) = &cli.manifest {
        if let Err(e) = std::fs::write(path, pretty(&out.manifest)) {
            eprintln!("error: {}: {e}", path.display());
            return ExitCode::from(1);
        }
    }
    let mut stdout = std::io::stdout().lock();
    if stdout.write_all(out.text.as_bytes()).and_then(|_| stdout.flush()).is_err() {
        return ExitCode::from(1);
    }
    match out.failed {
        Some(what) => {
            eprintln!("verification failed: {what}");
            ExitCode::from(4)
        }
        None => ExitCode::SUCCESS,
    }
}
