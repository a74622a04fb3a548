use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use algdyn::compose::load_composition;
use algdyn::harmonic::fix_row;
use algdyn::laurent::shell_order;
use algdyn::lyapunov::{coordinate_sum, one_sided_constant};
use algdyn::uniformity::rates::log_theta;
use algdyn::uniformity::fit_line;
use algdyn::{
    correlation, default_b, directional_entropy, enumerate_hk, periodic_pairing, scan_radius, ComposedCheck, Error,
    ExponentVector, FunctionsFile, GaussQ, LeafCheck, Property, Q, RadiusReport, Result, System, SystemConfig,
    ThetaSchedule, TrigPolynomial, DEFAULT_CAP,
};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

#[derive(Parser)]
#[command(name = "algdyn", version, about = "Exact arithmetic for entropy rank one algebraic Z^d-actions")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum Output {
    Json,
    Csv,
}

#[derive(Args)]
struct Common {
    /// System configuration (TOML or JSON).
    #[arg(long)]
    config: PathBuf,
    #[arg(long, value_enum)]
    output: Option<Output>,
    /// Working precision in bits for archimedean enclosures.
    #[arg(long, default_value_t = 128)]
    precision: u32,
}

#[derive(Args)]
struct ScanArgs {
    /// Range of k, e.g. 1..6 (inclusive) or a single value.
    #[arg(long, default_value = "1..3")]
    k: String,
    #[arg(long, default_value = "I")]
    property: Property,
    /// Scan window radius.
    #[arg(long, default_value_t = 10.0)]
    window: f64,
    /// Maximal size of an exhaustive set.
    #[arg(long, default_value_t = DEFAULT_CAP)]
    cap: usize,
}

#[derive(Args)]
struct HarmonicArgs {
    /// Functions file with the Fourier coefficients of f (and g).
    #[arg(long)]
    functions: PathBuf,
    /// Exponent vector, comma separated.
    #[arg(long, allow_hyphen_values = true)]
    n: String,
}

#[derive(Subcommand)]
enum Cmd {
    /// Places, Lyapunov vectors, mixing and the separation constant.
    Analyze {
        #[command(flatten)]
        common: Common,
    },
    /// Periodic point counts with the oracle cross-check.
    Perpoints {
        #[command(flatten)]
        common: Common,
        #[arg(long, default_value_t = 6.0)]
        radius: f64,
    },
    /// Radius scans of the uniformity properties over a range of k.
    Scan {
        #[command(flatten)]
        common: Common,
        #[command(flatten)]
        scan: ScanArgs,
    },
    /// Exact correlation of f and g under u^n.
    Correlate {
        #[command(flatten)]
        common: Common,
        #[command(flatten)]
        h: HarmonicArgs,
    },
    /// Exact pairing of f against the periodic measure of u^n.
    Pairing {
        #[command(flatten)]
        common: Common,
        #[command(flatten)]
        h: HarmonicArgs,
    },
    /// Scans on a composed module described by a composition tree.
    Compose {
        #[command(flatten)]
        common: Common,
        #[command(flatten)]
        scan: ScanArgs,
    },
}

fn exit_code(e: &Error) -> u8 {
    match e {
        Error::SetTooLarge { .. } => 4,
        e if e.is_config_error() => 2,
        _ => 3,
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.cmd) {
        Ok(text) => {
            print!("{text}");
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}

fn run(cmd: Cmd) -> Result<String> {
    match cmd {
        Cmd::Analyze { common } => analyze(&common),
        Cmd::Perpoints { common, radius } => perpoints(&common, radius),
        Cmd::Scan { common, scan: args } => scan(&common, &args),
        Cmd::Correlate { common, h } => harmonic(&common, &h, false),
        Cmd::Pairing { common, h } => harmonic(&common, &h, true),
        Cmd::Compose { common, scan: args } => compose(&common, &args),
    }
}

fn load(common: &Common) -> Result<(SystemConfig, System)> {
    let cfg = SystemConfig::from_path(&common.config)?;
    if cfg.field.is_none() {
        return Err(Error::Malformed {
            field: "field".into(),
            message: "missing (composition documents are handled by `compose`)".into(),
        });
    }
    let sys = System::from_config(&cfg, common.precision)?;
    Ok((cfg, sys))
}

fn pretty(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("json");
    s.push('\n');
    s
}

fn parse_k(s: &str) -> Result<(u32, u32)> {
    let bad = || Error::InvalidArgument(format!("bad k range `{s}` (expected MIN..MAX)"));
    let (lo, hi) = match s.split_once("..") {
        Some((a, b)) => (a.trim().parse().map_err(|_| bad())?, b.trim().parse().map_err(|_| bad())?),
        None => {
            let k = s.trim().parse().map_err(|_| bad())?;
            (k, k)
        }
    };
    if lo == 0 || lo > hi {
        return Err(bad());
    }
    Ok((lo, hi))
}

fn parse_n(s: &str, d: usize) -> Result<ExponentVector> {
    let v: Vec<i64> = s
        .trim_matches(|c| c == '(' || c == ')')
        .split(',')
        .map(|x| x.trim().parse().map_err(|_| Error::InvalidArgument(format!("bad exponent vector `{s}`"))))
        .collect::<Result<_>>()?;
    if v.len() != d {
        return Err(Error::DimensionMismatch { expected: d, got: v.len() });
    }
    Ok(ExponentVector(v))
}

fn analyze(common: &Common) -> Result<String> {
    let (_, sys) = load(common)?;
    let l = &sys.lyapunov;
    let d = sys.dim();
    let mut sums = Vec::new();
    for i in 0..d {
        let s = coordinate_sum(l, i);
        let ok = match &s.exact {
            Some(c) => c.is_zero(),
            None => s.ball.contains_zero() && s.ball.width() < Q::new(1.into(), num_pow10(20)),
        };
        if !ok {
            return Err(Error::ProductFormulaViolation {
                coordinate: i + 1,
                sum: s.to_string(),
            });
        }
        sums.push(json!({ "coordinate": i + 1, "sum": s.to_string(), "exact": s.exact.is_some() }));
    }
    let (c, c_sigma, b) = if sys.mixing {
        let c = sys.separation_constant()?;
        let cs = one_sided_constant(l)?;
        let b = default_b(c.to_f64());
        (json!(c.to_string()), json!(cs.to_string()), json!(b))
    } else {
        (Value::Null, Value::Null, Value::Null)
    };
    let mut entropy = Vec::new();
    for i in 0..d {
        for sign in [1i64, -1] {
            let w: Vec<Q> = (0..d).map(|j| Q::from_integer(if i == j { sign.into() } else { 0.into() })).collect();
            let h = directional_entropy(l, &w)?;
            let dir: Vec<String> = w.iter().map(|x| x.to_string()).collect();
            entropy.push(json!({ "direction": dir, "entropy": h.to_string() }));
        }
    }
    if common.output == Some(Output::Csv) {
        let mut out = String::new();
        let head: Vec<String> = (1..=d).map(|i| format!("l{i}")).collect();
        writeln!(out, "place,kind,{}", head.join(",")).unwrap();
        for (v, row) in sys.places.iter().zip(&l.vectors) {
            let cells: Vec<String> = row.iter().map(|x| format!("\"{x}\"")).collect();
            writeln!(out, "{},{},{}", v.label, v.kind_name(), cells.join(",")).unwrap();
        }
        return Ok(out);
    }
    let places: Vec<Value> = sys
        .places
        .iter()
        .zip(&l.vectors)
        .map(|(v, row)| {
            json!({
                "label": v.label,
                "kind": v.kind_name(),
                "lyapunov": row.iter().map(|x| x.to_string()).collect::<Vec<_>>(),
            })
        })
        .collect();
    Ok(pretty(&json!({
        "system": sys.pres.name(),
        "d": d,
        "places": places,
        "product_formula": sums,
        "mixing": sys.mixing,
        "sigma": l.sigma,
        "separation_constant": c,
        "c_over_sigma": c_sigma,
        "default_b": b,
        "entropy": entropy,
    })))
}

fn num_pow10(e: u32) -> num_bigint::BigInt {
    num_bigint::BigInt::from(10u32).pow(e)
}

fn perpoints(common: &Common, radius: f64) -> Result<String> {
    let (_, sys) = load(common)?;
    if !(radius >= 1.0) {
        return Err(Error::InvalidArgument(format!("radius {radius} must be at least 1")));
    }
    let d = sys.dim();
    let ns: Vec<ExponentVector> = if d == 1 {
        (1..=radius.floor() as i64).map(|n| ExponentVector(vec![n])).collect()
    } else {
        shell_order(d, radius)
    };
    let rows = ns.iter().map(|n| fix_row(&sys, n)).collect::<Result<Vec<_>>>()?;
    if common.output == Some(Output::Json) {
        return Ok(pretty(&json!({ "system": sys.pres.name(), "rows": rows })));
    }
    let mut out = String::new();
    writeln!(out, "{}", algdyn::FixRow::csv_header(d)).unwrap();
    for r in &rows {
        writeln!(out, "{}", r.csv_row()).unwrap();
    }
    Ok(out)
}

struct Fitted {
    reports: Vec<RadiusReport>,
    log_thetas: Vec<f64>,
}

fn fit_json(f: &Fitted, b: Option<f64>) -> Value {
    let ys: Vec<f64> = f.reports.iter().map(|r| r.radius()).collect();
    json!({
        "fit": fit_line(&f.log_thetas, &ys),
        "b": b,
    })
}

fn render_scan(f: &Fitted, b: Option<f64>, output: Option<Output>, extra: Option<&[String]>) -> String {
    if output == Some(Output::Json) {
        let mut v = fit_json(f, b);
        v["reports"] = json!(f.reports);
        return pretty(&v);
    }
    let mut out = String::new();
    match extra {
        Some(_) => writeln!(out, "{},leaf_r,bound,implied", RadiusReport::CSV_HEADER).unwrap(),
        None => writeln!(out, "{}", RadiusReport::CSV_HEADER).unwrap(),
    }
    for (i, r) in f.reports.iter().enumerate() {
        match extra {
            Some(e) => writeln!(out, "{},{}", r.csv_row(), e[i]).unwrap(),
            None => writeln!(out, "{}", r.csv_row()).unwrap(),
        }
    }
    let ys: Vec<f64> = f.reports.iter().map(|r| r.radius()).collect();
    match fit_line(&f.log_thetas, &ys) {
        Some(fit) => {
            let res: Vec<String> = fit.residuals.iter().map(|&x| fixed(x)).collect();
            writeln!(out, "# fit r = slope * log(theta) + intercept").unwrap();
            writeln!(out, "# slope,{}", fixed(fit.slope)).unwrap();
            writeln!(out, "# intercept,{}", fixed(fit.intercept)).unwrap();
            writeln!(out, "# residuals,{}", res.join(",")).unwrap();
        }
        None => writeln!(out, "# fit needs at least two values of k").unwrap(),
    }
    if let Some(b) = b {
        writeln!(out, "# b,{b:.6}").unwrap();
    }
    out
}

/// Six decimals, without a sign on zero.
fn fixed(x: f64) -> String {
    let s = format!("{x:.6}");
    if s.trim_start_matches('-').chars().all(|c| c == '0' || c == '.') {
        s.trim_start_matches('-').to_string()
    } else {
        s
    }
}

fn rate_b(cfg: &SystemConfig, computed: impl FnOnce() -> Result<Option<f64>>) -> Result<Option<f64>> {
    match cfg.rates.as_ref().and_then(|r| r.b) {
        Some(b) => Ok(Some(b)),
        None => computed(),
    }
}

fn scan(common: &Common, args: &ScanArgs) -> Result<String> {
    let (cfg, sys) = load(common)?;
    let sched = ThetaSchedule::from_section(cfg.schedule.as_ref())?;
    let (lo, hi) = parse_k(&args.k)?;
    let mut f = Fitted {
        reports: Vec::new(),
        log_thetas: Vec::new(),
    };
    for k in lo..=hi {
        let theta = sched.value(k)?;
        let h = enumerate_hk(&sys, k, &theta, args.cap)?;
        let check = LeafCheck { sys: &sys, set: &h };
        f.reports.push(scan_radius(&check, k, &theta, args.property, args.window)?);
        f.log_thetas.push(log_theta(&theta)?);
    }
    let b = rate_b(&cfg, || {
        Ok(if sys.mixing {
            Some(default_b(sys.separation_constant()?.to_f64()))
        } else {
            None
        })
    })?;
    Ok(render_scan(&f, b, common.output, None))
}

fn harmonic(common: &Common, args: &HarmonicArgs, pairing: bool) -> Result<String> {
    let (_, sys) = load(common)?;
    let funcs = FunctionsFile::from_path(&args.functions)?;
    let n = parse_n(&args.n, sys.dim())?;
    let f = TrigPolynomial::from_terms(&sys, &funcs.f, "f")?;
    let value: GaussQ = if pairing {
        periodic_pairing(&sys, &f, &n)?
    } else {
        if funcs.g.is_empty() {
            return Err(Error::Malformed {
                field: "g".into(),
                message: "correlation needs a second function g".into(),
            });
        }
        let g = TrigPolynomial::from_terms(&sys, &funcs.g, "g")?;
        correlation(&sys, &f, &g, &n)?
    };
    if common.output == Some(Output::Csv) {
        let [re, im] = value.parts();
        return Ok(format!("n,re_num,re_den,im_num,im_den\n\"{n}\",{},{},{},{}\n", re.0, re.1, im.0, im.1));
    }
    Ok(pretty(&json!({
        "n": n,
        "value": value,
        "display": value.to_string(),
    })))
}

fn compose(common: &Common, args: &ScanArgs) -> Result<String> {
    let cfg = SystemConfig::from_path(&common.config)?;
    let node = cfg.composition.as_ref().ok_or_else(|| Error::Malformed {
        field: "composition".into(),
        message: "missing".into(),
    })?;
    let origin: &Path = &common.config;
    let m = load_composition(node, origin, common.precision)?;
    if m.dim() != cfg.system.d {
        return Err(Error::DimensionMismatch {
            expected: cfg.system.d,
            got: m.dim(),
        });
    }
    let sched = ThetaSchedule::from_section(cfg.schedule.as_ref())?;
    let (lo, hi) = parse_k(&args.k)?;
    let rate = m.composed_rate()?;
    let b = rate_b(&cfg, || Ok(Some(rate.b)))?;
    let mut f = Fitted {
        reports: Vec::new(),
        log_thetas: Vec::new(),
    };
    let mut extra = Vec::new();
    for k in lo..=hi {
        let theta = sched.value(k)?;
        let set = m.exhaustive_set(k, &theta, args.cap)?;
        let check = ComposedCheck { module: &m, set: &set };
        let report = scan_radius(&check, k, &theta, args.property, args.window)?;
        let composed = algdyn::property_map(&check, args.property, args.window)?;
        let mut leaf_r = 0.0f64;
        let mut parent = vec![true; composed.len()];
        for (l, s) in m.leaves().iter().zip(&set.leaf_sets) {
            let lc = LeafCheck { sys: l, set: s };
            leaf_r = leaf_r.max(scan_radius(&lc, k, &theta, args.property, args.window)?.radius());
            for (p, (_, ok)) in parent.iter_mut().zip(algdyn::property_map(&lc, args.property, args.window)?) {
                *p &= ok;
            }
        }
        let implied = parent.iter().zip(&composed).all(|(p, (_, c))| !p || *c);
        let lt = log_theta(&theta)?;
        let bound = b.map(|b| format!("{:.6}", b * lt)).unwrap_or_default();
        extra.push(format!("{leaf_r:.6},{bound},{implied}"));
        f.reports.push(report);
        f.log_thetas.push(lt);
    }
    if common.output == Some(Output::Json) {
        let mut v = fit_json(&f, b);
        v["reports"] = json!(f.reports);
        v["leaves"] = json!(rate.leaves);
        v["checks"] = json!(extra);
        return Ok(pretty(&v));
    }
    let mut out = render_scan(&f, b, common.output, Some(&extra));
    for (name, lb) in &rate.leaves {
        writeln!(out, "# leaf,{name},{lb:.6}").unwrap();
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn k_ranges() {
        assert_eq!(parse_k("1..6").unwrap(), (1, 6));
        assert_eq!(parse_k("3").unwrap(), (3, 3));
        assert!(parse_k("0..2").is_err());
        assert!(parse_k("4..2").is_err());
        assert!(parse_k("a..b").is_err());
    }

    #[test]
    fn exponent_vectors() {
        assert_eq!(parse_n("1,-1", 2).unwrap(), ExponentVector(vec![1, -1]));
        assert_eq!(parse_n("(5,-3)", 2).unwrap(), ExponentVector(vec![5, -3]));
        assert!(parse_n("1", 2).is_err());
    }

    #[test]
    fn exit_codes() {
        assert_eq!(exit_code(&Error::SetTooLarge { cap: 1 }), 4);
        assert_eq!(exit_code(&Error::MaximalityNotAttested), 2);
        assert_eq!(exit_code(&Error::NotMixing), 3);
    }

    #[test]
    fn signless_zero() {
        assert_eq!(fixed(-1e-12), "0.000000");
        assert_eq!(fixed(-0.5), "-0.500000");
    }
}
