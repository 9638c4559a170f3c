use std::fs;
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};

use lorenzkit::exec::par_map;
use lorenzkit::kneading::{cutting_csv, cutting_data_symbolic, is_long_branched};
use lorenzkit::maps::{
    derive_decreasing_lorenz, derive_increasing_lorenz, make_family, Family, MapSpec,
};
use lorenzkit::outside::{
    accessibility_certificate, least_grace, verify_certificate, BackwardOrbit, LiftCertificate,
};
use lorenzkit::periodic::{
    classify_type, enumerate_periods, map_id, sweep_csv_rows, verify_sharkovsky_closure, Mode,
};
use lorenzkit::rotation::{
    height, kneading_from_cf_denjoy, ostrowski_cutting_times, rotation_number_counting,
    rotation_number_cutting, stunted_tent, ContinuedFraction, Offset,
};
use lorenzkit::sturmian::{
    complexity_csv, factor_complexity, is_balanced, rotational_sequence_window, Window,
};
use lorenzkit::symbolic::{kneading_sequence, lorenz_recode, SymbolSeq};
use lorenzkit::verify::{run_suite, Suite};
use lorenzkit::{Error, ExactScalar};

#[derive(Parser)]
#[command(
    name = "lorenzkit",
    version,
    about = "Exact kneading theory for unimodal and Lorenz maps"
)]
struct Cli {
    /// Write the report here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum FamilyArg {
    Tent,
    TentCore,
    Logistic,
}

impl FamilyArg {
    fn family(self) -> Family {
        match self {
            FamilyArg::Tent => Family::TentSymmetric,
            FamilyArg::TentCore => Family::TentCore,
            FamilyArg::Logistic => Family::Logistic,
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
    Text,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum MapArg {
    F,
    Phi,
    Psi,
    All,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum SweepKind {
    Periods,
    Rotation,
}

#[derive(Subcommand)]
enum Command {
    /// Kneading sequence, cutting and co-cutting times, Q and Q̂.
    Kneading {
        #[arg(long, value_enum, default_value = "tent")]
        family: FamilyArg,
        #[arg(long)]
        param: Option<String>,
        /// Use this kneading word instead of a map, e.g. "10(011)".
        #[arg(long, conflicts_with = "param")]
        nu: Option<String>,
        #[arg(long, default_value_t = 40)]
        depth: usize,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
    },
    /// Rotation number of the stunted map by counting and by cutting times.
    Rotation {
        #[arg(long, value_enum, default_value = "tent")]
        family: FamilyArg,
        #[arg(long)]
        param: String,
        #[arg(long, default_value_t = 10_000)]
        n: usize,
        #[arg(long, default_value_t = 400)]
        depth: usize,
        #[arg(long, default_value = "0")]
        x0: String,
    },
    /// Periodic orbits of f, φ, ψ and the Sharkovsky verdicts.
    Periods {
        #[arg(long, value_enum, default_value = "tent")]
        family: FamilyArg,
        #[arg(long)]
        param: String,
        #[arg(long = "max-period", default_value_t = 8)]
        max_period: usize,
        #[arg(long, value_enum, default_value = "all")]
        map: MapArg,
    },
    /// Cutting times from a continued fraction such as "[0;(1)]".
    Ostrowski {
        #[arg(long)]
        cf: String,
        #[arg(long, default_value_t = 100)]
        max: usize,
    },
    /// Kneading sequence with prescribed height, plus Sturmian checks of its recoding.
    Denjoy {
        #[arg(long)]
        cf: String,
        #[arg(long, default_value_t = 200)]
        n: usize,
        /// One of 0-, 0, alpha, 1-alpha; all are tried in that order by default.
        #[arg(long)]
        offset: Option<String>,
        #[arg(long, default_value_t = 10)]
        maxlen: usize,
    },
    /// Rotational word of R_α started at β, its balance and factor complexity.
    Sturmian {
        #[arg(long)]
        alpha: String,
        #[arg(long, default_value = "0")]
        beta: String,
        #[arg(long, default_value_t = 1000)]
        n: usize,
        #[arg(long, default_value_t = 20)]
        maxlen: usize,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
    },
    /// Accessibility certificate for a backward orbit of the core tent.
    Access {
        #[arg(long)]
        param: String,
        /// Comma-separated exact points x_0,x_1,…
        #[arg(long)]
        orbit: String,
        /// Fixed grace index; without it the least N up to --max-grace is reported.
        #[arg(long)]
        grace: Option<usize>,
        #[arg(long = "max-grace", default_value_t = 3)]
        max_grace: usize,
    },
    /// Run the acceptance suite.
    Verify {
        #[arg(long, default_value = "all")]
        suite: String,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Grid over the tent slope, one CSV row per sample.
    Sweep {
        #[arg(long, value_enum, default_value = "periods")]
        kind: SweepKind,
        #[arg(long)]
        from: String,
        #[arg(long)]
        to: String,
        #[arg(long, default_value_t = 10)]
        steps: usize,
        #[arg(long = "max-period", default_value_t = 8)]
        max_period: usize,
        #[arg(long, value_enum, default_value = "phi")]
        mode: MapArg,
        #[arg(long, default_value_t = 5000)]
        n: usize,
    },
}

enum Failure {
    Usage(String),
    Verify(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Usage(e.to_string())
    }
}

type Out = Result<(String, bool), Failure>;

fn scalar(s: &str) -> Result<ExactScalar, Failure> {
    Ok(s.parse::<ExactScalar>()?)
}

fn to_json<T: Serialize>(v: &T) -> String {
    serde_json::to_string_pretty(v).expect("reports serialize") + "\n"
}

fn csv_string(header: &[&str], rows: impl IntoIterator<Item = Vec<String>>) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(header).expect("in-memory write");
    for r in rows {
        w.write_record(&r).expect("in-memory write");
    }
    String::from_utf8(w.into_inner().expect("in-memory flush")).expect("utf-8")
}

fn base_map(family: FamilyArg, param: &str) -> Result<MapSpec, Failure> {
    Ok(make_family(family.family(), scalar(param)?)?)
}

fn kneading(
    family: FamilyArg,
    param: Option<String>,
    nu: Option<String>,
    depth: usize,
    format: Format,
) -> Out {
    let nu: SymbolSeq = match (nu, param) {
        (Some(w), _) => w.parse()?,
        (None, Some(p)) => kneading_sequence(&base_map(family, &p)?, depth)?,
        (None, None) => return Err(Failure::Usage("give --param or --nu".into())),
    };
    let data = cutting_data_symbolic(&nu, depth)?;
    Ok(match format {
        Format::Csv => (cutting_csv(&data), true),
        Format::Text => {
            let text = format!(
                "nu    {}\nS     {:?}\nShat  {:?}\nQ     {:?}\nQhat  {:?}\n",
                word_prefix(&nu, depth),
                data.s,
                data.shat,
                data.q,
                data.qhat
            );
            (text, true)
        }
        Format::Json => (
            to_json(&json!({
                "nu": nu,
                "nu_prefix": word_prefix(&nu, depth),
                "cutting": data,
                "long_branched": is_long_branched(&data),
            })),
            true,
        ),
    })
}

fn word_prefix(nu: &SymbolSeq, depth: usize) -> String {
    nu.symbols(depth.min(nu.available()))
        .iter()
        .map(|s| char::from(b'0' + s))
        .collect()
}

fn rotation(family: FamilyArg, param: &str, n: usize, depth: usize, x0: &str) -> Out {
    let f = base_map(family, param)?;
    let counting = match family {
        FamilyArg::Tent => Some(rotation_number_counting(
            &stunted_tent(&f.parameter)?,
            &scalar(x0)?,
            n,
        )?),
        _ => None,
    };
    let nu = kneading_sequence(&f, depth)?;
    let cutting = rotation_number_cutting(&nu, depth)?;
    let h = height(&nu, depth)?;
    Ok((
        to_json(&json!({
            "map": map_id(&f),
            "nu_prefix": word_prefix(&nu, 64),
            "nu_phi_prefix": lorenz_recode(&nu, depth.min(nu.available()).min(64)),
            "counting": counting,
            "cutting": cutting,
            "height": h,
            "prime_end": cutting.prime_end,
        })),
        true,
    ))
}

fn lorenz_maps(f: &MapSpec, which: MapArg) -> Result<Vec<(MapSpec, Mode)>, Failure> {
    let mut out = Vec::new();
    if matches!(which, MapArg::F | MapArg::All) {
        out.push((f.clone(), Mode::Unimodal));
    }
    if matches!(which, MapArg::Phi | MapArg::All) {
        out.push((derive_increasing_lorenz(f)?, Mode::IncreasingLorenz));
    }
    if matches!(which, MapArg::Psi | MapArg::All) {
        out.push((derive_decreasing_lorenz(f)?, Mode::DecreasingLorenz));
    }
    Ok(out)
}

fn periods(family: FamilyArg, param: &str, n: usize, which: MapArg) -> Out {
    let f = base_map(family, param)?;
    let mut items = Vec::new();
    for (g, mode) in lorenz_maps(&f, which)? {
        let rep = enumerate_periods(&g, n)?;
        let verdict = verify_sharkovsky_closure(&rep, mode);
        let kind = classify_type(&rep);
        items.push(json!({ "report": rep, "verdict": verdict, "type": kind }));
    }
    Ok((to_json(&Value::Array(items)), true))
}

fn ostrowski(cf: &str, max: usize) -> Out {
    let cf: ContinuedFraction = cf.parse()?;
    let s = ostrowski_cutting_times(&cf, max);
    Ok((to_json(&json!({ "cf": cf, "S": s })), true))
}

fn denjoy(cf: &str, n: usize, offset: Option<String>, maxlen: usize) -> Out {
    let cf: ContinuedFraction = cf.parse()?;
    let offset = offset.map(|o| o.parse::<Offset>()).transpose()?;
    let w = kneading_from_cf_denjoy(&cf, n, offset)?;
    let data = cutting_data_symbolic(&w.nu, n)?;
    let maxlen = maxlen.min(w.nu_phi.len().unwrap_or(n) / 10).max(1);
    let complexity = factor_complexity(&w.nu_phi, maxlen)?;
    Ok((
        to_json(&json!({
            "cf": cf,
            "word": w,
            "S": data.s,
            "Shat": data.shat,
            "sup_Q": data.q.iter().max(),
            "balanced": is_balanced(&w.nu_phi, maxlen),
            "complexity": complexity,
            "height": height(&w.nu, n)?,
        })),
        true,
    ))
}

fn sturmian(alpha: &str, beta: &str, n: usize, maxlen: usize, format: Format) -> Out {
    let alpha = scalar(alpha)?;
    let beta = scalar(beta)?;
    let word = match rotational_sequence_window(&alpha, &beta, n, Window::ClosedOpen) {
        Ok(w) => w,
        Err(Error::BoundaryHit {
            position,
            lower,
            upper,
        }) => {
            let v = json!({ "boundary_hit": position, "lower": lower, "upper": upper });
            return Ok((to_json(&v), true));
        }
        Err(e) => return Err(e.into()),
    };
    let p = factor_complexity(&word, maxlen.min(n / 10).max(1))?;
    Ok(match format {
        Format::Csv => (complexity_csv(&p), true),
        _ => (
            to_json(&json!({
                "alpha": alpha,
                "beta": beta,
                "word": word,
                "balanced": is_balanced(&word, maxlen),
                "complexity": p,
            })),
            true,
        ),
    })
}

fn access(param: &str, orbit: &str, grace: Option<usize>, max_grace: usize) -> Out {
    let lambda = scalar(param)?;
    let points = orbit
        .split(',')
        .map(scalar)
        .collect::<Result<Vec<_>, _>>()?;
    let orbit = BackwardOrbit::new(lambda, points)?;
    let cert: LiftCertificate = match grace {
        Some(g) => accessibility_certificate(&orbit, g)?,
        None => least_grace(&orbit, max_grace)?,
    };
    let rechecked = verify_certificate(&orbit, &cert)?;
    Ok((
        to_json(&json!({ "orbit": orbit, "certificate": cert, "rechecked": rechecked })),
        true,
    ))
}

fn verify(suite: &str, format: Format) -> Out {
    let suite: Suite = suite.parse()?;
    let reports = run_suite(suite);
    let ok = reports.iter().all(|r| r.passed);
    let text = match format {
        Format::Json => to_json(&reports),
        _ => {
            let mut s: String = reports.iter().map(|r| format!("{r}\n")).collect();
            let passed = reports.iter().filter(|r| r.passed).count();
            s.push_str(&format!("{passed}/{} criteria passed\n", reports.len()));
            s
        }
    };
    Ok((text, ok))
}

fn grid(from: &str, to: &str, steps: usize) -> Result<Vec<ExactScalar>, Failure> {
    let a = scalar(from)?;
    let b = scalar(to)?;
    if steps == 0 {
        return Err(Failure::Usage("--steps must be positive".into()));
    }
    if steps == 1 {
        return Ok(vec![a]);
    }
    let h = &(&b - &a) / &ExactScalar::from((steps - 1) as i64);
    Ok((0..steps)
        .map(|i| &a + &(&h * &ExactScalar::from(i as i64)))
        .collect())
}

fn sweep(
    kind: SweepKind,
    from: &str,
    to: &str,
    steps: usize,
    max_period: usize,
    mode: MapArg,
    n: usize,
) -> Out {
    let lambdas = grid(from, to, steps)?;
    match kind {
        SweepKind::Periods => {
            let rows = par_map(&lambdas, |l| -> Result<Vec<Vec<String>>, Failure> {
                let f = make_family(Family::TentSymmetric, l.clone())?;
                let mut rows = Vec::new();
                for (g, m) in lorenz_maps(&f, mode)? {
                    let rep = enumerate_periods(&g, max_period)?;
                    rows.extend(sweep_csv_rows(l, m, &rep).into_iter().map(|r| r.to_vec()));
                }
                Ok(rows)
            });
            let mut all = Vec::new();
            for r in rows {
                all.extend(r?);
            }
            Ok((csv_string(&["lambda", "mode", "m", "present"], all), true))
        }
        SweepKind::Rotation => {
            let rows = par_map(&lambdas, |l| -> Result<Vec<String>, Failure> {
                let f = make_family(Family::TentSymmetric, l.clone())?;
                let est = rotation_number_counting(&stunted_tent(l)?, &ExactScalar::zero(), n)?;
                let nu = kneading_sequence(&f, 400)?;
                let cut = rotation_number_cutting(&nu, 400)?;
                let status = serde_json::to_value(cut.status).expect("enum serializes");
                Ok(vec![
                    l.to_string(),
                    est.estimate.to_string(),
                    cut.alpha.to_string(),
                    status.as_str().unwrap_or_default().to_string(),
                    cut.prime_end.to_string(),
                ])
            });
            let rows = rows.into_iter().collect::<Result<Vec<_>, _>>()?;
            Ok((
                csv_string(
                    &["lambda", "counting", "alpha", "status", "prime_end"],
                    rows,
                ),
                true,
            ))
        }
    }
}

fn run(cli: Cli) -> Out {
    match cli.command {
        Command::Kneading {
            family,
            param,
            nu,
            depth,
            format,
        } => kneading(family, param, nu, depth, format),
        Command::Rotation {
            family,
            param,
            n,
            depth,
            x0,
        } => rotation(family, &param, n, depth, &x0),
        Command::Periods {
            family,
            param,
            max_period,
            map,
        } => periods(family, &param, max_period, map),
        Command::Ostrowski { cf, max } => ostrowski(&cf, max),
        Command::Denjoy {
            cf,
            n,
            offset,
            maxlen,
        } => denjoy(&cf, n, offset, maxlen),
        Command::Sturmian {
            alpha,
            beta,
            n,
            maxlen,
            format,
        } => sturmian(&alpha, &beta, n, maxlen, format),
        Command::Access {
            param,
            orbit,
            grace,
            max_grace,
        } => access(&param, &orbit, grace, max_grace),
        Command::Verify { suite, format } => verify(&suite, format),
        Command::Sweep {
            kind,
            from,
            to,
            steps,
            max_period,
            mode,
            n,
        } => sweep(kind, &from, &to, steps, max_period, mode, n),
    }
    .and_then(|(text, ok)| {
        if ok {
            Ok((text, true))
        } else {
            Err(Failure::Verify(text))
        }
    })
}

fn emit(out: &Option<PathBuf>, text: &str) -> std::io::Result<()> {
    match out {
        Some(p) => fs::write(p, text),
        None => std::io::stdout().write_all(text.as_bytes()),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let out = cli.out.clone();
    match run(cli) {
        Ok((text, _)) => match emit(&out, &text) {
            Ok(()) => ExitCode::SUCCESS,
            Err(e) => {
                eprintln!("error: {e}");
                ExitCode::from(2)
            }
        },
        Err(Failure::Verify(text)) => {
            let _ = emit(&out, &text);
            ExitCode::from(1)
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
