use std::io::{self, Write};
use std::process::ExitCode;
use std::str::FromStr;

use clap::{Parser, Subcommand};
use pattern_lab::character::pad;
use pattern_lab::closed_forms::{a_id_closed, a_sigma_one, a_sigma_one_leading, positivity_test, SmallShape};
use pattern_lab::error::Error;
use pattern_lab::moments::BruteForce;
use pattern_lab::partition::Partition;
use pattern_lab::perm::{class_size, Permutation, DEFAULT_ENUMERATION_CAP};
use pattern_lab::poly_lab::{analyze_roots, interpolate_a, RationalPolynomial};
use pattern_lab::rational::{int, to_display_string, to_fraction_string};
use pattern_lab::verify::{run_suite, Suite, VerifyConfig};
use serde_json::{json, Map, Value};

mod output;

use output::{Cell, Format, Output};

#[derive(Parser, Debug)]
#[command(name = "pattern-lab", version, about = "Exact moments of permutation pattern counts on conjugacy classes")]
struct Cli {
    #[arg(long, global = true, value_enum, default_value = "text")]
    format: Format,

    /// Worker threads (defaults to one per core).
    #[arg(long, global = true)]
    threads: Option<usize>,

    /// Largest n for which S_n may be enumerated.
    #[arg(long, global = true, env = "PATTERN_LAB_CAP", default_value_t = DEFAULT_ENUMERATION_CAP)]
    cap: usize,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Class-wise average of the product of pattern counts.
    Moments {
        #[arg(long = "pattern", required = true)]
        patterns: Vec<Permutation>,
        #[arg(long)]
        n: usize,
    },
    /// Multiplicity of the irreducible character labelled by lambda[n].
    Alpha {
        #[arg(long = "pattern", required = true)]
        patterns: Vec<Permutation>,
        #[arg(long, default_value = "")]
        lambda: Partition,
        #[arg(long)]
        n: NRange,
    },
    /// Polynomial in n through the enumerated coefficients, with root analysis.
    Interpolate {
        #[arg(long = "pattern", required = true)]
        patterns: Vec<Permutation>,
        #[arg(long, default_value = "")]
        lambda: Partition,
    },
    /// Closed forms for identity patterns (--lambda, --k) or for lambda = (1)
    /// and an arbitrary pattern (--pattern).
    ClosedForm {
        #[arg(long, conflicts_with = "pattern", requires = "k")]
        lambda: Option<Partition>,
        #[arg(long)]
        k: Option<u32>,
        #[arg(long, required_unless_present = "lambda")]
        pattern: Option<Permutation>,
        #[arg(long)]
        n: Option<NRange>,
    },
    /// Run a verification suite.
    Verify {
        #[arg(long)]
        suite: Suite,
        #[arg(long)]
        max_n: Option<usize>,
        #[arg(long)]
        max_k: Option<usize>,
    },
}

/// `N` or the inclusive range `A..B`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
struct NRange {
    lo: usize,
    hi: usize,
}

impl FromStr for NRange {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        let num = |t: &str| t.trim().parse::<usize>().map_err(|_| format!("not a nonnegative integer: {t:?}"));
        match s.split_once("..") {
            None => {
                let n = num(s)?;
                Ok(NRange { lo: n, hi: n })
            }
            Some((a, b)) => {
                let (lo, hi) = (num(a)?, num(b)?);
                if lo > hi {
                    return Err(format!("empty range {s}"));
                }
                Ok(NRange { lo, hi })
            }
        }
    }
}

impl NRange {
    fn iter(self) -> impl Iterator<Item = usize> {
        self.lo..=self.hi
    }

    fn json(self) -> Value {
        if self.lo == self.hi {
            json!(self.lo)
        } else {
            json!(format!("{}..{}", self.lo, self.hi))
        }
    }
}

fn pattern_list(patterns: &[Permutation]) -> Value {
    Value::Array(patterns.iter().map(|p| json!(p.to_string())).collect())
}

fn lambda_json(lambda: &Partition) -> Value {
    json!(lambda.parts().iter().map(u32::to_string).collect::<Vec<_>>().join(","))
}

fn config(cap: usize, fields: Vec<(&str, Value)>) -> Map<String, Value> {
    let mut m: Map<String, Value> = fields.into_iter().map(|(k, v)| (k.to_string(), v)).collect();
    m.insert("cap".into(), json!(cap));
    m
}

/// JSON record and text notes for a polynomial with its root analysis.
fn describe_poly(p: &RationalPolynomial, root_bound: i64) -> Result<(Value, Vec<(String, String)>), Error> {
    let mut obj = Map::new();
    let mut notes = vec![("polynomial".to_string(), p.to_string())];
    obj.insert(
        "coefficients".into(),
        Value::Array(p.coeffs().iter().map(|c| json!(to_fraction_string(c))).collect()),
    );
    obj.insert("degree".into(), p.degree().map_or(Value::Null, |d| json!(d)));
    obj.insert("display".into(), json!(p.to_string()));
    notes.push(("degree".into(), p.degree().map_or("none".into(), |d| d.to_string())));
    let Ok(lc) = p.leading_coefficient() else {
        obj.insert("leading_coefficient".into(), Value::Null);
        obj.insert("roots".into(), Value::Null);
        return Ok((Value::Object(obj), notes));
    };
    obj.insert("leading_coefficient".into(), json!(to_fraction_string(lc)));
    notes.push(("leading coefficient".into(), to_display_string(lc)));
    let r = analyze_roots(p, &int(root_bound))?;
    let intervals: Vec<Value> = r
        .isolating_intervals
        .iter()
        .map(|(a, b)| json!([to_fraction_string(a), to_fraction_string(b)]))
        .collect();
    obj.insert(
        "roots".into(),
        json!({
            "isolating_intervals": intervals,
            "exact_rational_roots": r.exact_rational_roots.iter().map(to_fraction_string).collect::<Vec<_>>(),
            "multiplicities": r.multiplicities,
            "is_real_rooted": r.is_real_rooted,
            "bound": root_bound,
            "all_roots_below_bound": r.all_roots_below_bound,
            "max_root_upper_bound": r.max_root_upper_bound.as_ref().map(to_fraction_string),
        }),
    );
    let exact: Vec<String> = r.exact_rational_roots.iter().map(to_display_string).collect();
    notes.push(("real roots".into(), r.isolating_intervals.len().to_string()));
    notes.push(("exact rational roots".into(), if exact.is_empty() { "none".into() } else { exact.join(", ") }));
    notes.push(("real-rooted".into(), r.is_real_rooted.to_string()));
    notes.push((format!("all roots < {root_bound}"), r.all_roots_below_bound.to_string()));
    Ok((Value::Object(obj), notes))
}

fn run(cli: &Cli) -> Result<Output, Error> {
    let engine = BruteForce::new(cli.cap);
    let cap = cli.cap;
    match &cli.command {
        Command::Moments { patterns, n } => {
            let m = engine.moment_class_function(patterns, *n)?;
            let rows = m
                .iter()
                .map(|(ct, v)| {
                    let size = i64::try_from(&class_size(ct)).expect("class size fits i64");
                    vec![Cell::Text(ct.to_string()), Cell::Int(size), Cell::from(v)]
                })
                .collect();
            let cfg = config(cap, vec![("patterns", pattern_list(patterns)), ("n", json!(n))]);
            Ok(Output::rows("moments", cfg, vec!["cycle_type", "class_size", "value"], rows))
        }
        Command::Alpha { patterns, lambda, n } => {
            let mut rows = Vec::new();
            for m in n.iter() {
                let value = match engine.coefficient_alpha(patterns, lambda, m) {
                    Ok(v) => Cell::from(&v),
                    Err(Error::Domain(_)) if pad(lambda, m).is_err() => Cell::Text("undefined".into()),
                    Err(e) => return Err(e),
                };
                rows.push(vec![Cell::Int(m as i64), value]);
            }
            let cfg = config(
                cap,
                vec![("patterns", pattern_list(patterns)), ("lambda", lambda_json(lambda)), ("n", n.json())],
            );
            Ok(Output::rows("alpha", cfg, vec!["n", "alpha"], rows))
        }
        Command::Interpolate { patterns, lambda } => {
            let p = interpolate_a(&engine, patterns, lambda)?;
            let bound: usize = patterns.iter().map(Permutation::len).sum();
            let rows = p
                .coeffs()
                .iter()
                .enumerate()
                .map(|(i, c)| vec![Cell::Int(i as i64), Cell::from(c)])
                .collect();
            let cfg = config(cap, vec![("patterns", pattern_list(patterns)), ("lambda", lambda_json(lambda))]);
            let mut out = Output::rows("interpolate", cfg, vec!["power", "coefficient"], rows);
            let (poly, notes) = describe_poly(&p, bound as i64)?;
            out.notes = notes;
            out.extra.insert("polynomial".into(), poly);
            Ok(out)
        }
        Command::ClosedForm { lambda, k, pattern, n } => match (lambda, pattern) {
            (Some(lambda), _) => {
                let k = k.expect("clap enforces --k with --lambda");
                let p = a_id_closed(lambda, k)?;
                let start = SmallShape::from_partition(lambda).map_or(k, |s| s.validity_start(k)) as usize;
                let range = n.unwrap_or(NRange { lo: start, hi: start + 5 });
                let rows = range
                    .iter()
                    .map(|m| vec![Cell::Int(m as i64), Cell::from(&p.eval(&int(m as i64)))])
                    .collect();
                let cfg = config(
                    cap,
                    vec![("lambda", lambda_json(lambda)), ("k", json!(k)), ("n", range.json())],
                );
                let mut out = Output::rows("closed-form", cfg, vec!["n", "value"], rows);
                let (poly, notes) = describe_poly(&p, k as i64)?;
                out.notes = notes;
                out.extra.insert("polynomial".into(), poly);
                Ok(out)
            }
            (None, Some(sigma)) => {
                let k = sigma.len();
                let range = n.unwrap_or(NRange { lo: k, hi: k + 5 });
                let rows = range
                    .iter()
                    .map(|m| Ok(vec![Cell::Int(m as i64), Cell::from(&a_sigma_one(sigma, m as u32)?)]))
                    .collect::<Result<Vec<_>, Error>>()?;
                let cfg = config(cap, vec![("pattern", json!(sigma.to_string())), ("lambda", json!("1")), ("n", range.json())]);
                let mut out = Output::rows("closed-form", cfg, vec!["n", "value"], rows);
                let lead = a_sigma_one_leading(sigma)?;
                let t = positivity_test(sigma);
                out.extra.insert("leading_coefficient".into(), json!(to_fraction_string(&lead)));
                out.extra.insert(
                    "positivity".into(),
                    json!({
                        "positive": t.positive,
                        "sum": t.sum.to_string(),
                        "threshold": t.threshold.to_string(),
                        "margin": t.margin.to_string(),
                    }),
                );
                out.notes = vec![
                    ("leading coefficient".into(), to_display_string(&lead)),
                    ("positive".into(), t.positive.to_string()),
                    ("margin".into(), format!("{} ({} vs {})", t.margin, t.sum, t.threshold)),
                ];
                Ok(out)
            }
            (None, None) => unreachable!("clap requires --lambda or --pattern"),
        },
        Command::Verify { suite, max_n, max_k } => {
            let mut vc = VerifyConfig::default();
            if let Some(m) = max_n {
                vc.brute_max_n = *m;
                vc.identity_max_n = u32::try_from(*m).map_err(|_| Error::Domain(format!("--max-n {m} too large")))?;
            }
            if let Some(k) = max_k {
                vc.max_k = *k;
            }
            let report = run_suite(*suite, &engine, &vc)?;
            let cfg = config(
                cap,
                vec![
                    ("suite", json!(suite.name())),
                    ("max_n", json!(if suite.enumerates() { vc.brute_max_n } else { vc.identity_max_n as usize })),
                    ("identity_max_n", json!(vc.identity_max_n)),
                    ("max_k", json!(vc.max_k)),
                    ("root_max_k", json!(vc.root_max_k)),
                ],
            );
            Ok(Output::checks("verify", cfg, report))
        }
    }
}

fn exit_code(e: &Error) -> u8 {
    match e {
        Error::CapExceeded { .. } => 3,
        Error::Domain(_) | Error::Parse(_) => 2,
        Error::PolynomialityViolation { .. } | Error::Consistency(_) => 1,
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Some(t) = cli.threads {
        if t == 0 {
            eprintln!("error: --threads must be positive");
            return ExitCode::from(2);
        }
        builder = builder.num_threads(t);
    }
    let pool = match builder.build() {
        Ok(p) => p,
        Err(e) => {
            eprintln!("error: cannot start worker pool: {e}");
            return ExitCode::from(2);
        }
    };
    match pool.install(|| run(&cli)) {
        Ok(out) => {
            let stdout = io::stdout();
            let mut lock = stdout.lock();
            if let Err(e) = out.write(cli.format, &mut lock).and_then(|_| lock.flush()) {
                eprintln!("error: {e}");
                return ExitCode::from(1);
            }
            if out.all_passed() {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}
