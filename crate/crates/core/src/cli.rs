//! Command-line front end. `run` does the work and returns an
//! [`OutputRecord`]; the binary only parses arguments and prints.
//!
//! Exit codes: 0 success, 1 verification mismatch, 2 usage error,
//! 3 domain-precondition error.

use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};

use crate::bijections::{
    b_to_d, compose_132, d_to_b, decompose_132, perm_to_scattered, scattered_to_perm, split_321,
    unsplit_321, ScatteredSet,
};
use crate::counting::{
    a_sequence_recurrence, binomial, catalan, count_132_formula, count_21, count_321, d_sequence,
    fibonacci, BigCount,
};
use crate::error::Error;
use crate::oracle::{ClassLabel, Oracle, DEFAULT_CEILING};
use crate::perm::{Pattern, Permutation};
use crate::series::{
    catalan_series_by_sqrt, gf_132_coefficients, gf_321_coefficients, gf_d_coefficients,
    Gf132Method,
};

pub const EXIT_MISMATCH: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_DOMAIN: i32 = 3;

#[derive(Debug, Parser)]
#[command(
    name = "ncperm",
    version,
    about = "Count, enumerate and biject permutations avoiding nonconsecutive 21, 321 and 132"
)]
pub struct Cli {
    /// Emit a JSON record instead of plain text.
    #[arg(long, global = true)]
    pub json: bool,
    /// Largest n the brute-force oracle will walk.
    #[arg(long, global = true, default_value_t = DEFAULT_CEILING)]
    pub oracle_ceiling: usize,
    /// Suppress stdout; the exit status still reports the outcome.
    #[arg(long, global = true)]
    pub quiet: bool,
    /// Also write the JSON record to this file.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum PatternArg {
    #[value(name = "21")]
    P21,
    #[value(name = "321")]
    P321,
    #[value(name = "132")]
    P132,
}

impl PatternArg {
    fn pattern(self) -> Pattern {
        match self {
            PatternArg::P21 => Pattern::p21(),
            PatternArg::P321 => Pattern::p321(),
            PatternArg::P132 => Pattern::p132(),
        }
    }

    fn name(self) -> &'static str {
        match self {
            PatternArg::P21 => "21",
            PatternArg::P321 => "321",
            PatternArg::P132 => "132",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Method {
    Oracle,
    Formula,
    Recurrence,
    Gf,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Plain,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum BijectionName {
    Swap21,
    BToD,
    DToB,
    Split321,
    Unsplit321,
    Decompose132,
    Compose132,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SeriesName {
    #[value(name = "catalan")]
    Catalan,
    #[value(name = "D321")]
    D321,
    #[value(name = "A321")]
    A321,
    #[value(name = "GF132-composed")]
    Gf132Composed,
    #[value(name = "GF132-closed")]
    Gf132Closed,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Count avoiders of a nonconsecutive pattern on [n].
    Count {
        #[arg(long, value_enum)]
        pattern: PatternArg,
        #[arg(long)]
        n: usize,
        #[arg(long, value_enum, default_value = "formula")]
        method: Method,
    },
    /// List a class such as A(5), B(4), E(6,2) by brute force.
    Enumerate {
        class: String,
        #[arg(long, value_enum, default_value = "plain")]
        format: Format,
    },
    /// Cross-check every counting route and class identity for n <= max_n.
    Verify {
        #[arg(long, value_enum)]
        pattern: PatternArg,
        #[arg(long)]
        max_n: usize,
    },
    /// Apply one of the structural bijections.
    Bijection {
        #[arg(value_enum)]
        name: BijectionName,
        #[arg(long)]
        perm: Option<String>,
        #[arg(long)]
        n: Option<usize>,
        /// Comma-separated positions.
        #[arg(long, allow_hyphen_values = true)]
        set: Option<String>,
        #[arg(long)]
        sigma: Option<String>,
        #[arg(long)]
        tau: Option<String>,
        /// Apply the inverse to the image and confirm the input comes back.
        #[arg(long)]
        roundtrip: bool,
    },
    /// Expand a generating function.
    Series {
        #[arg(value_enum)]
        which: SeriesName,
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
        terms: u64,
    },
}

#[derive(Debug)]
pub struct CliError {
    pub code: i32,
    pub message: String,
}

impl CliError {
    fn usage(msg: impl Into<String>) -> Self {
        CliError {
            code: EXIT_USAGE,
            message: msg.into(),
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::Inconsistent(_) => EXIT_MISMATCH,
            _ => EXIT_DOMAIN,
        };
        CliError {
            code,
            message: e.to_string(),
        }
    }
}

/// Machine-readable result of one command. Keys serialize sorted, so a
/// parse and re-serialize reproduces the same bytes.
#[derive(Debug, Clone, Serialize)]
pub struct OutputRecord {
    pub command: String,
    pub params: Value,
    pub result: Value,
    pub methods: Vec<String>,
    pub version: String,
    /// Plain-text rendering.
    #[serde(skip)]
    pub lines: Vec<String>,
    /// False when a verification or round trip failed.
    #[serde(skip)]
    pub ok: bool,
}

impl OutputRecord {
    fn new(command: &str, params: Value) -> Self {
        OutputRecord {
            command: command.to_string(),
            params,
            result: Value::Null,
            methods: Vec::new(),
            version: env!("CARGO_PKG_VERSION").to_string(),
            lines: Vec::new(),
            ok: true,
        }
    }

    pub fn to_json(&self) -> String {
        let value = serde_json::to_value(self).expect("record serializes");
        serde_json::to_string_pretty(&value).expect("value serializes")
    }

    pub fn exit_code(&self) -> i32 {
        if self.ok {
            0
        } else {
            EXIT_MISMATCH
        }
    }
}

fn counts_json(v: &[BigCount]) -> Value {
    Value::Array(v.iter().map(|c| Value::String(c.to_string())).collect())
}

fn parse_perm(arg: &Option<String>, flag: &str) -> Result<Permutation, CliError> {
    let s = arg
        .as_deref()
        .ok_or_else(|| CliError::usage(format!("missing --{flag}")))?;
    s.parse()
        .map_err(|e: Error| CliError::usage(format!("--{flag}: {e}")))
}

fn parse_set(arg: &Option<String>) -> Result<Vec<usize>, CliError> {
    let s = arg
        .as_deref()
        .ok_or_else(|| CliError::usage("missing --set"))?;
    let s = s.trim().trim_start_matches('{').trim_end_matches('}');
    if s.trim().is_empty() {
        return Ok(Vec::new());
    }
    s.split(',')
        .map(|t| {
            t.trim()
                .parse()
                .map_err(|_| CliError::usage(format!("--set: bad position {t:?}")))
        })
        .collect()
}

fn fmt_set(s: &ScatteredSet) -> String {
    let items: Vec<String> = s.elements().iter().map(|e| e.to_string()).collect();
    format!("{{{}}}", items.join(","))
}

pub fn run(cli: &Cli) -> Result<OutputRecord, CliError> {
    let oracle = Oracle::new().with_ceiling(cli.oracle_ceiling);
    match &cli.command {
        Command::Count { pattern, n, method } => cmd_count(&oracle, *pattern, *n, *method),
        Command::Enumerate { class, .. } => cmd_enumerate(&oracle, class),
        Command::Verify { pattern, max_n } => cmd_verify(&oracle, *pattern, *max_n),
        Command::Bijection {
            name,
            perm,
            n,
            set,
            sigma,
            tau,
            roundtrip,
        } => cmd_bijection(*name, perm, *n, set, sigma, tau, *roundtrip),
        Command::Series { which, terms } => cmd_series(*which, *terms as usize),
    }
}

pub fn cmd_count(
    oracle: &Oracle,
    pattern: PatternArg,
    n: usize,
    method: Method,
) -> Result<OutputRecord, CliError> {
    let (count, tag) = match (pattern, method) {
        (p, Method::Oracle) => (oracle.count_avoiders_bruteforce(n, &p.pattern())?, "oracle"),
        (PatternArg::P21, Method::Formula | Method::Recurrence) => (count_21(n), "fibonacci"),
        (PatternArg::P132, Method::Formula | Method::Recurrence) => {
            (count_132_formula(n), "binomial-catalan-sum")
        }
        (PatternArg::P321, Method::Recurrence) => (count_321(n)?, "recurrence"),
        (PatternArg::P321, Method::Gf) => {
            let v = if n == 0 {
                1u32.into()
            } else {
                gf_321_coefficients(n)?.pop().expect("n >= 1")
            };
            (v, "gf")
        }
        (PatternArg::P132, Method::Gf) => (
            gf_132_coefficients(n, Gf132Method::Composition)?
                .pop()
                .expect("order n"),
            "gf-composed",
        ),
        (PatternArg::P321, Method::Formula) => {
            return Err(CliError::usage(
                "pattern 321 has no closed formula; use --method recurrence or gf",
            ))
        }
        (PatternArg::P21, Method::Gf) => {
            return Err(CliError::usage(
                "pattern 21 has no generating-function route; use --method formula",
            ))
        }
    };
    let mut rec = OutputRecord::new(
        "count",
        json!({"pattern": pattern.name(), "n": n, "method": format!("{method:?}").to_lowercase()}),
    );
    rec.result = json!({"count": count.to_string()});
    rec.methods = vec![tag.to_string()];
    rec.lines = vec![count.to_string()];
    Ok(rec)
}

pub fn cmd_enumerate(oracle: &Oracle, class: &str) -> Result<OutputRecord, CliError> {
    let label: ClassLabel = class
        .parse()
        .map_err(|e: Error| CliError::usage(e.to_string()))?;
    let members = oracle.enumerate_class(label)?;
    let mut rec = OutputRecord::new("enumerate", json!({"class": label.to_string()}));
    rec.result = json!({
        "count": members.len().to_string(),
        "members": members.iter().map(|p| p.to_string()).collect::<Vec<_>>(),
    });
    rec.methods = vec!["oracle".into()];
    rec.lines = members.iter().map(|p| p.to_string()).collect();
    Ok(rec)
}

struct Checks {
    items: Vec<Value>,
    lines: Vec<String>,
    all_pass: bool,
}

impl Checks {
    fn new() -> Self {
        Checks {
            items: Vec::new(),
            lines: Vec::new(),
            all_pass: true,
        }
    }

    fn eq(&mut self, name: String, values: &[(&str, &BigCount)]) {
        let pass = values.windows(2).all(|w| w[0].1 == w[1].1);
        let detail: Vec<String> = values.iter().map(|(k, v)| format!("{k}={v}")).collect();
        let detail = detail.join(" ");
        self.all_pass &= pass;
        self.lines.push(format!(
            "{} {name}: {detail}",
            if pass { "PASS" } else { "FAIL" }
        ));
        self.items
            .push(json!({"name": name, "pass": pass, "detail": detail}));
    }
}

pub fn cmd_verify(
    oracle: &Oracle,
    pattern: PatternArg,
    max_n: usize,
) -> Result<OutputRecord, CliError> {
    if max_n > oracle.ceiling() {
        return Err(Error::CeilingExceeded {
            n: max_n,
            ceiling: oracle.ceiling(),
        }
        .into());
    }
    let pat = pattern.pattern();
    let mut checks = Checks::new();
    let methods: Vec<&str>;
    match pattern {
        PatternArg::P21 => {
            methods = vec!["oracle", "fibonacci", "swap21"];
            for n in 0..=max_n {
                let brute = oracle.count_avoiders_bruteforce(n, &pat)?;
                let fib = fibonacci(n + 1);
                let sets = BigCount::from(ScatteredSet::all(1, n.saturating_sub(1), 2).len());
                checks.eq(
                    format!("n={n} avoiders = F(n+1)"),
                    &[
                        ("oracle", &brute),
                        ("fibonacci", &fib),
                        ("gap2-sets", &sets),
                    ],
                );
            }
        }
        PatternArg::P321 => {
            methods = vec!["oracle", "recurrence", "gf"];
            let rec = a_sequence_recurrence(max_n.max(1))?;
            let gf = gf_321_coefficients(max_n.max(1))?;
            let d = d_sequence(max_n.max(1));
            let dn = |n: usize| d[n - 1].clone();
            for n in 0..=max_n {
                let brute = oracle.count_avoiders_bruteforce(n, &pat)?;
                let (r, g) = if n == 0 {
                    (1u32.into(), 1u32.into())
                } else {
                    (rec[n - 1].clone(), gf[n - 1].clone())
                };
                checks.eq(
                    format!("n={n} a_n"),
                    &[("oracle", &brute), ("recurrence", &r), ("gf", &g)],
                );
            }
            for n in 3..=max_n {
                let a = oracle.count_class(ClassLabel::A(n))?;
                let b = oracle.count_class(ClassLabel::B(n))?;
                let c = oracle.count_class(ClassLabel::C(n))?;
                let dd = oracle.count_class(ClassLabel::D(n))?;
                checks.eq(
                    format!("n={n} |B_n| = d_(n-2)"),
                    &[("oracle", &b), ("d", &dn(n - 2))],
                );
                checks.eq(
                    format!("n={n} |D_n| = d_n"),
                    &[("oracle", &dd), ("d", &dn(n))],
                );
                checks.eq(
                    format!("n={n} |A_n| = |B_n| + |D_n|"),
                    &[("A", &a), ("B+D", &(&b + &dd))],
                );
                checks.eq(
                    format!("n={n} |C_n| = Catalan(n)"),
                    &[("oracle", &c), ("catalan", &catalan(n))],
                );
                let mut total = c;
                for k in 1..=n - 2 {
                    let ank = oracle.count_class(ClassLabel::Ak(n, k))?;
                    let product = catalan(k) * dn(n - k - 1);
                    checks.eq(
                        format!("n={n} k={k} |A_(n,k)| = C_k d_(n-k-1)"),
                        &[("oracle", &ank), ("product", &product)],
                    );
                    total += ank;
                }
                checks.eq(
                    format!("n={n} |A_n| = C_n + sum |A_(n,k)|"),
                    &[("A", &a), ("sum", &total)],
                );
            }
        }
        PatternArg::P132 => {
            methods = vec!["oracle", "binomial-catalan-sum", "gf-composed", "gf-closed"];
            let comp = gf_132_coefficients(max_n, Gf132Method::Composition)?;
            let closed = gf_132_coefficients(max_n, Gf132Method::ClosedForm)?;
            for n in 0..=max_n {
                let brute = oracle.count_avoiders_bruteforce(n, &pat)?;
                checks.eq(
                    format!("n={n} e_n"),
                    &[
                        ("oracle", &brute),
                        ("sum", &count_132_formula(n)),
                        ("composed", &comp[n]),
                        ("closed", &closed[n]),
                    ],
                );
                for k in 0..=n / 3 {
                    let enk = oracle.count_class(ClassLabel::Ek(n, k))?;
                    let product = binomial((n - 2 * k) as u64, k as u64) * catalan(n - 2 * k);
                    checks.eq(
                        format!("n={n} k={k} |E_(n,k)| = binom(n-2k,k) C_(n-2k)"),
                        &[("oracle", &enk), ("product", &product)],
                    );
                }
            }
        }
    }
    let mut rec = OutputRecord::new("verify", json!({"pattern": pattern.name(), "max_n": max_n}));
    rec.ok = checks.all_pass;
    rec.lines = checks.lines;
    rec.lines.push(if checks.all_pass {
        "all checks passed".into()
    } else {
        "MISMATCH".into()
    });
    rec.result = json!({"all_pass": checks.all_pass, "checks": checks.items});
    rec.methods = methods.into_iter().map(String::from).collect();
    Ok(rec)
}

type PermMap = fn(&Permutation) -> crate::Result<Permutation>;

pub fn cmd_bijection(
    name: BijectionName,
    perm: &Option<String>,
    n: Option<usize>,
    set: &Option<String>,
    sigma: &Option<String>,
    tau: &Option<String>,
    roundtrip: bool,
) -> Result<OutputRecord, CliError> {
    let need_n = || n.ok_or_else(|| CliError::usage("missing --n"));
    let mut params = serde_json::Map::new();
    let mut lines = Vec::new();
    let result: Value;
    // (inverse image matches input) when --roundtrip is set
    let mut round: Option<bool> = None;
    match name {
        BijectionName::Swap21 => {
            if perm.is_some() {
                let p = parse_perm(perm, "perm")?;
                params.insert("perm".into(), json!(p.to_string()));
                let s = perm_to_scattered(&p)?;
                lines.push(format!("swaps {}", fmt_set(&s)));
                if roundtrip {
                    round = Some(scattered_to_perm(p.len(), &s)? == p);
                }
                result = json!({"set": s.elements()});
            } else {
                let n = need_n()?;
                let elems = parse_set(set)?;
                params.insert("n".into(), json!(n));
                params.insert("set".into(), json!(elems));
                let s = ScatteredSet::new(1, n.saturating_sub(1), 2, elems)?;
                let p = scattered_to_perm(n, &s)?;
                lines.push(p.to_string());
                if roundtrip {
                    round = Some(perm_to_scattered(&p)? == s);
                }
                result = json!({"perm": p.to_string()});
            }
        }
        BijectionName::BToD | BijectionName::DToB => {
            let p = parse_perm(perm, "perm")?;
            params.insert("perm".into(), json!(p.to_string()));
            let (fwd, back): (PermMap, PermMap) = if name == BijectionName::BToD {
                (b_to_d, d_to_b)
            } else {
                (d_to_b, b_to_d)
            };
            let image = fwd(&p)?;
            lines.push(image.to_string());
            if roundtrip {
                round = Some(back(&image)? == p);
            }
            result = json!({"perm": image.to_string()});
        }
        BijectionName::Split321 => {
            let p = parse_perm(perm, "perm")?;
            params.insert("perm".into(), json!(p.to_string()));
            let pair = split_321(&p)?;
            lines.push(format!("k {}", pair.sigma.len()));
            lines.push(format!("sigma {}", pair.sigma));
            lines.push(format!("tau {}", pair.tau));
            if roundtrip {
                round = Some(unsplit_321(&pair.sigma, &pair.tau)? == p);
            }
            result = json!({"k": pair.sigma.len(), "sigma": pair.sigma.to_string(), "tau": pair.tau.to_string()});
        }
        BijectionName::Unsplit321 => {
            let s = parse_perm(sigma, "sigma")?;
            let t = parse_perm(tau, "tau")?;
            params.insert("sigma".into(), json!(s.to_string()));
            params.insert("tau".into(), json!(t.to_string()));
            let p = unsplit_321(&s, &t)?;
            lines.push(p.to_string());
            if roundtrip {
                let pair = split_321(&p)?;
                round = Some(pair.sigma == s && pair.tau == t);
            }
            result = json!({"perm": p.to_string()});
        }
        BijectionName::Decompose132 => {
            let p = parse_perm(perm, "perm")?;
            params.insert("perm".into(), json!(p.to_string()));
            let (s, q) = decompose_132(&p)?;
            lines.push(format!("positions {}", fmt_set(&s)));
            lines.push(format!("remainder {q}"));
            if roundtrip {
                round = Some(compose_132(p.len(), &s, &q)? == p);
            }
            result = json!({"positions": s.elements(), "remainder": q.to_string()});
        }
        BijectionName::Compose132 => {
            let n = need_n()?;
            let elems = parse_set(set)?;
            let q = parse_perm(perm, "perm")?;
            params.insert("n".into(), json!(n));
            params.insert("set".into(), json!(elems));
            params.insert("perm".into(), json!(q.to_string()));
            let s = ScatteredSet::new(2, n.saturating_sub(1), 3, elems)?;
            let p = compose_132(n, &s, &q)?;
            lines.push(p.to_string());
            if roundtrip {
                round = Some(decompose_132(&p)? == (s, q));
            }
            result = json!({"perm": p.to_string()});
        }
    }
    params.insert("roundtrip".into(), json!(roundtrip));
    let name_str = name
        .to_possible_value()
        .expect("not skipped")
        .get_name()
        .to_string();
    params.insert("name".into(), json!(name_str));
    let mut rec = OutputRecord::new("bijection", Value::Object(params));
    rec.methods = vec![name_str];
    rec.result = result;
    if let Some(ok) = round {
        rec.ok = ok;
        lines.push(if ok {
            "roundtrip ok".into()
        } else {
            "roundtrip FAILED".into()
        });
        rec.result["roundtrip_ok"] = json!(ok);
    }
    rec.lines = lines;
    Ok(rec)
}

pub fn cmd_series(which: SeriesName, terms: usize) -> Result<OutputRecord, CliError> {
    if terms == 0 {
        return Err(CliError::usage("--terms must be at least 1"));
    }
    let (coeffs, first_index, tag) = match which {
        SeriesName::Catalan => (catalan_series_by_sqrt(terms - 1)?.to_counts()?, 0, "sqrt"),
        SeriesName::D321 => (gf_d_coefficients(terms)?, 1, "division"),
        SeriesName::A321 => (gf_321_coefficients(terms)?, 1, "division"),
        SeriesName::Gf132Composed => (
            gf_132_coefficients(terms - 1, Gf132Method::Composition)?,
            0,
            "composition",
        ),
        SeriesName::Gf132Closed => (
            gf_132_coefficients(terms - 1, Gf132Method::ClosedForm)?,
            0,
            "closed-form",
        ),
    };
    let name = which
        .to_possible_value()
        .expect("not skipped")
        .get_name()
        .to_string();
    let mut rec = OutputRecord::new("series", json!({"which": name, "terms": terms}));
    rec.result = json!({"first_index": first_index, "coefficients": counts_json(&coeffs)});
    rec.methods = vec![tag.to_string()];
    rec.lines = vec![coeffs
        .iter()
        .map(|c| c.to_string())
        .collect::<Vec<_>>()
        .join(" ")];
    Ok(rec)
}
