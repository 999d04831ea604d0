//! Command-line front end. Every subcommand validates its flags, runs one
//! operation, and prints a single JSON document (or, with `--format table`,
//! aligned plain text) to standard output. Exit codes: 0 success, 2 bad
//! input, 1 internal failure.

use std::io::Read as _;
use std::path::PathBuf;

use clap::error::ErrorKind;
use clap::{Parser, Subcommand, ValueEnum};
use qtoric::charmat::enumerate_pairs;
use qtoric::classify::{gb_diffeo, normal_form};
use qtoric::fan::{gb_fan, is_smooth, lens_cohomology, star_subdivide, wps_fan};
use qtoric::realize::{realize_automorphism, word_product};
use qtoric::ring::bigint_to_number;
use qtoric::ring_iso::{find_isomorphisms_within, is_isomorphism};
use qtoric::verify::{
    criterion_aut_tables, criterion_blowup, criterion_bundle_equivalence,
    criterion_classification, criterion_free_module, criterion_lens_table,
    criterion_realization, criterion_reduction_oracles, criterion_sum_matrices,
};
use qtoric::{CriterionReport, Fan, QuasitoricPair, RingMap, RingPresentation};

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Table,
}

#[derive(Parser)]
#[command(
    name = "qtoric",
    version,
    about = "Exact invariants of quasitoric manifolds with second Betti number 2"
)]
struct Cli {
    /// Output format
    #[arg(long, global = true, value_enum, default_value = "json")]
    format: Format,
    #[command(subcommand)]
    command: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// List every valid twist pair over a product of two simplices
    Enumerate {
        /// Dimension of the first simplex factor
        #[arg(long)]
        n: usize,
        /// Dimension of the second simplex factor
        #[arg(long)]
        m: usize,
        /// Largest absolute entry
        #[arg(long, default_value_t = 3, allow_hyphen_values = true)]
        bound: i64,
    },
    /// Rank and torsion of one integral cohomology group
    Cohomology {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        m: usize,
        /// Twist vector of length m, comma-separated
        #[arg(long, required = true, value_delimiter = ',', allow_hyphen_values = true)]
        a: Vec<i64>,
        /// Twist vector of length n, comma-separated
        #[arg(long, required = true, value_delimiter = ',', allow_hyphen_values = true)]
        b: Vec<i64>,
        /// Topological degree
        #[arg(long)]
        degree: usize,
    },
    /// Graded automorphism group of the cohomology ring
    Aut {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        m: usize,
        #[arg(long, required = true, value_delimiter = ',', allow_hyphen_values = true)]
        a: Vec<i64>,
        #[arg(long, required = true, value_delimiter = ',', allow_hyphen_values = true)]
        b: Vec<i64>,
        /// Search radius for matrix entries
        #[arg(long, default_value_t = 3, allow_hyphen_values = true)]
        bound: i64,
    },
    /// Graded ring isomorphisms between two cohomology rings
    Iso {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        m: usize,
        #[arg(long, required = true, value_delimiter = ',', allow_hyphen_values = true)]
        a: Vec<i64>,
        #[arg(long, required = true, value_delimiter = ',', allow_hyphen_values = true)]
        b: Vec<i64>,
        /// Twist vector of the second manifold, length inferred
        #[arg(long, required = true, value_delimiter = ',', allow_hyphen_values = true)]
        aprime: Vec<i64>,
        /// Twist vector of the second manifold, length inferred
        #[arg(long, required = true, value_delimiter = ',', allow_hyphen_values = true)]
        bprime: Vec<i64>,
        /// Search radius for matrix entries
        #[arg(long, default_value_t = 3, allow_hyphen_values = true)]
        bound: i64,
    },
    /// Homeomorphism normal form of a pair
    Classify {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        m: usize,
        #[arg(long, required = true, value_delimiter = ',', allow_hyphen_values = true)]
        a: Vec<i64>,
        #[arg(long, required = true, value_delimiter = ',', allow_hyphen_values = true)]
        b: Vec<i64>,
    },
    /// Diffeomorphism test for two projectivized sums of line bundles over CP^n
    DiffeoGb {
        /// Dimension of the base projective space
        #[arg(long)]
        n: usize,
        /// Twist vector of the first bundle, comma-separated
        #[arg(long, required = true, value_delimiter = ',', allow_hyphen_values = true)]
        a: Vec<i64>,
        /// Twist vector of the second bundle, same length
        #[arg(long, required = true, value_delimiter = ',', allow_hyphen_values = true)]
        aprime: Vec<i64>,
    },
    /// Fans of the weighted projective space and projective bundle families
    Fan {
        #[command(subcommand)]
        op: FanCmd,
    },
    /// Express a ring automorphism as a word in the standard sphere-level maps
    Realize {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        m: usize,
        #[arg(long, required = true, value_delimiter = ',', allow_hyphen_values = true)]
        a: Vec<i64>,
        #[arg(long, required = true, value_delimiter = ',', allow_hyphen_values = true)]
        b: Vec<i64>,
        /// Target matrix as a JSON array of two rows, e.g. '[[-1,0],[2,1]]'
        #[arg(long)]
        target: String,
    },
    /// Run the cross-check suite over a bounded corpus
    Verify {
        /// Run a single check (1-9) instead of all of them
        #[arg(long)]
        criterion: Option<usize>,
    },
}

#[derive(Subcommand)]
enum FanCmd {
    /// Fan of the weighted projective space with weights (1,...,1,a)
    Wps {
        #[arg(long)]
        n: usize,
        #[arg(long, allow_hyphen_values = true)]
        a: i64,
    },
    /// Fan of the projectivization of O + O(a) over CP^n
    Gb {
        #[arg(long)]
        n: usize,
        #[arg(long, allow_hyphen_values = true)]
        a: i64,
    },
    /// Star subdivision of the weighted projective fan at its apex cone
    Blowup {
        #[arg(long)]
        n: usize,
        #[arg(long, allow_hyphen_values = true)]
        a: i64,
    },
    /// Check unimodularity of every maximal cone of a fan
    Smooth {
        /// Fan JSON file; standard input when omitted
        #[arg(long)]
        file: Option<PathBuf>,
    },
    /// Cohomology groups of the lens space S^{2n+1} / Z_a
    Lens {
        #[arg(long)]
        n: usize,
        #[arg(long, allow_hyphen_values = true)]
        a: i64,
    },
}

enum CliError {
    Validation(String),
    Internal(String),
}

type CResult<T> = Result<T, CliError>;

fn invalid(msg: impl ToString) -> CliError {
    CliError::Validation(msg.to_string())
}

struct Output {
    json: serde_json::Value,
    table: String,
    code: i32,
}

impl Output {
    fn new(json: serde_json::Value, table: String) -> Output {
        Output { json, table, code: 0 }
    }
}

fn vec_str(v: &[i64]) -> String {
    let body: Vec<String> = v.iter().map(|x| x.to_string()).collect();
    format!("({})", body.join(", "))
}

fn matrix_block(m: &RingMap) -> String {
    let [[a, b], [c, d]] = m.0;
    let w = [a, b, c, d].iter().map(|x| x.to_string().len()).max().unwrap_or(1);
    format!("[ {a:>w$}  {b:>w$} ]\n[ {c:>w$}  {d:>w$} ]")
}

fn matrix_list_table(header: String, mats: &[RingMap]) -> String {
    let mut out = header;
    for m in mats {
        out.push_str("\n\n");
        out.push_str(&matrix_block(m));
    }
    out
}

fn pair_from(n: usize, m: usize, a: &[i64], b: &[i64]) -> CResult<QuasitoricPair> {
    if a.len() != m {
        return Err(invalid(format!("--a needs m = {m} entries, got {}", a.len())));
    }
    if b.len() != n {
        return Err(invalid(format!("--b needs n = {n} entries, got {}", b.len())));
    }
    QuasitoricPair::new(a.to_vec(), b.to_vec()).map_err(invalid)
}

fn group_str<T: std::fmt::Display>(rank: usize, torsion: &[T]) -> String {
    let mut parts = Vec::new();
    match rank {
        0 => {}
        1 => parts.push("Z".to_string()),
        r => parts.push(format!("Z^{r}")),
    }
    for t in torsion {
        parts.push(format!("Z_{t}"));
    }
    if parts.is_empty() {
        "0".to_string()
    } else {
        parts.join(" + ")
    }
}

fn cmd_enumerate(n: usize, m: usize, bound: i64) -> CResult<Output> {
    if n == 0 || m == 0 {
        return Err(invalid("both simplex dimensions must be at least 1"));
    }
    if bound < 0 {
        return Err(invalid(format!("--bound must be nonnegative, got {bound}")));
    }
    let pairs = enumerate_pairs(n, m, bound);
    let json: Vec<serde_json::Value> = pairs
        .iter()
        .map(|p| serde_json::json!({ "a": p.a(), "b": p.b() }))
        .collect();
    let mut lines: Vec<String> = pairs
        .iter()
        .map(|p| format!("a={} b={}", vec_str(p.a()), vec_str(p.b())))
        .collect();
    if lines.is_empty() {
        lines.push("no valid pairs".to_string());
    }
    Ok(Output::new(serde_json::Value::Array(json), lines.join("\n")))
}

fn cmd_cohomology(n: usize, m: usize, a: &[i64], b: &[i64], degree: usize) -> CResult<Output> {
    let pair = pair_from(n, m, a, b)?;
    let ring = RingPresentation::new(pair);
    let (rank, torsion) = if degree % 2 == 0 {
        ring.rank_of_degree(degree / 2)
    } else {
        (0, Vec::new())
    };
    let torsion_json: Vec<serde_json::Value> = torsion
        .iter()
        .map(|t| serde_json::Value::Number(bigint_to_number(t)))
        .collect();
    let json = serde_json::json!({
        "degree": degree,
        "rank": rank,
        "torsion": torsion_json,
    });
    let table = format!("H^{degree} = {}", group_str(rank, &torsion));
    Ok(Output::new(json, table))
}

fn cmd_aut(n: usize, m: usize, a: &[i64], b: &[i64], bound: i64) -> CResult<Output> {
    if bound < 0 {
        return Err(invalid(format!("--bound must be nonnegative, got {bound}")));
    }
    let pair = pair_from(n, m, a, b)?;
    let ring = RingPresentation::new(pair);
    let mats = find_isomorphisms_within(&ring, &ring, bound);
    let json: Vec<serde_json::Value> = mats.iter().map(RingMap::to_json).collect();
    let table = matrix_list_table(format!("order {}", mats.len()), &mats);
    Ok(Output::new(serde_json::Value::Array(json), table))
}

fn cmd_iso(
    n: usize,
    m: usize,
    a: &[i64],
    b: &[i64],
    aprime: &[i64],
    bprime: &[i64],
    bound: i64,
) -> CResult<Output> {
    if bound < 0 {
        return Err(invalid(format!("--bound must be nonnegative, got {bound}")));
    }
    let source = pair_from(n, m, a, b)?;
    let target = QuasitoricPair::new(aprime.to_vec(), bprime.to_vec()).map_err(invalid)?;
    let source = RingPresentation::new(source);
    let target = RingPresentation::new(target);
    let mats = find_isomorphisms_within(&source, &target, bound);
    let json: Vec<serde_json::Value> = mats.iter().map(RingMap::to_json).collect();
    let table = if mats.is_empty() {
        "no isomorphisms".to_string()
    } else {
        matrix_list_table(format!("{} isomorphism(s)", mats.len()), &mats)
    };
    Ok(Output::new(serde_json::Value::Array(json), table))
}

fn cmd_classify(n: usize, m: usize, a: &[i64], b: &[i64]) -> CResult<Output> {
    let pair = pair_from(n, m, a, b)?;
    let form = normal_form(&pair);
    let json = form.to_json();
    let mut lines = Vec::new();
    if let serde_json::Value::Object(obj) = &json {
        for (k, v) in obj {
            let shown = match v {
                serde_json::Value::Null => "-".to_string(),
                serde_json::Value::String(s) => s.clone(),
                other => other.to_string(),
            };
            lines.push(format!("{k}: {shown}"));
        }
    }
    Ok(Output::new(json, lines.join("\n")))
}

fn cmd_diffeo_gb(n: usize, a: &[i64], aprime: &[i64]) -> CResult<Output> {
    if n == 0 {
        return Err(invalid("--n must be at least 1"));
    }
    if a.is_empty() || aprime.is_empty() {
        return Err(invalid("--a and --aprime must be nonempty"));
    }
    if a.len() != aprime.len() {
        return Err(invalid(format!(
            "--a and --aprime need the same length, got {} and {}",
            a.len(),
            aprime.len()
        )));
    }
    let witness = gb_diffeo(n, a, aprime);
    let json = match witness {
        Some(w) => serde_json::json!({
            "diffeomorphic": true,
            "epsilon": w.epsilon,
            "w": w.w,
        }),
        None => serde_json::json!({
            "diffeomorphic": false,
            "epsilon": null,
            "w": null,
        }),
    };
    let table = match witness {
        Some(w) => format!("diffeomorphic: yes (epsilon = {}, w = {})", w.epsilon, w.w),
        None => "diffeomorphic: no".to_string(),
    };
    Ok(Output::new(json, table))
}

fn fan_output(fan: &Fan) -> Output {
    let mut lines = vec![format!("rank: {}", fan.rank)];
    for (i, r) in fan.rays.iter().enumerate() {
        lines.push(format!("ray {i}: {}", vec_str(r)));
    }
    for (i, c) in fan.max_cones.iter().enumerate() {
        let body: Vec<String> = c.iter().map(|x| x.to_string()).collect();
        lines.push(format!("cone {i}: {}", body.join(" ")));
    }
    Output::new(fan.to_json(), lines.join("\n"))
}

fn cmd_fan_blowup(n: usize, a: i64) -> CResult<Output> {
    let w = wps_fan(n, a).map_err(invalid)?;
    let mut sigma = vec![vec![0i64; n + 1]; n + 1];
    sigma[0] = w.rays[0].clone();
    for (i, row) in sigma.iter_mut().enumerate().skip(1) {
        row[i - 1] = 1;
    }
    let mut apex = vec![0i64; n + 1];
    apex[n] = -1;
    let sub = star_subdivide(&w, &sigma, &apex).map_err(|e| CliError::Internal(e.to_string()))?;
    Ok(fan_output(&sub))
}

fn cmd_fan_smooth(file: Option<&PathBuf>) -> CResult<Output> {
    let text = match file {
        Some(path) => std::fs::read_to_string(path)
            .map_err(|e| invalid(format!("cannot read {}: {e}", path.display())))?,
        None => {
            let mut buf = String::new();
            std::io::stdin()
                .read_to_string(&mut buf)
                .map_err(|e| invalid(format!("cannot read standard input: {e}")))?;
            buf
        }
    };
    let value: serde_json::Value =
        serde_json::from_str(&text).map_err(|e| invalid(format!("fan is not valid JSON: {e}")))?;
    let fan = Fan::from_json(&value).map_err(invalid)?;
    let report = is_smooth(&fan).map_err(invalid)?;
    let (json, table) = match &report.offending {
        None => (
            serde_json::json!({ "smooth": true, "offending_rays": null, "index": null }),
            "smooth: yes".to_string(),
        ),
        Some((rays, index)) => {
            let shown: Vec<String> = rays.iter().map(|r| vec_str(r)).collect();
            (
                serde_json::json!({
                    "smooth": false,
                    "offending_rays": rays,
                    "index": serde_json::Value::Number(bigint_to_number(index)),
                }),
                format!("smooth: no (index {index}, cone rays {})", shown.join(" ")),
            )
        }
    };
    Ok(Output::new(json, table))
}

fn cmd_fan_lens(n: usize, a: i64) -> CResult<Output> {
    if n == 0 {
        return Err(invalid("--n must be at least 1"));
    }
    let groups = lens_cohomology(n, a).map_err(invalid)?;
    let json = serde_json::json!({ "groups": groups });
    let lines: Vec<String> = groups
        .iter()
        .enumerate()
        .map(|(i, g)| format!("H^{i} = {g}"))
        .collect();
    Ok(Output::new(json, lines.join("\n")))
}

fn cmd_realize(n: usize, m: usize, a: &[i64], b: &[i64], target: &str) -> CResult<Output> {
    let pair = pair_from(n, m, a, b)?;
    let value: serde_json::Value = serde_json::from_str(target)
        .map_err(|e| invalid(format!("--target is not valid JSON: {e}")))?;
    let target = RingMap::from_json(&value).ok_or_else(|| {
        invalid("--target must be a JSON array of two rows of two integers")
    })?;
    let ring = RingPresentation::new(pair.clone());
    if !is_isomorphism(&target, &ring, &ring) {
        return Err(invalid(format!(
            "{value} is not a graded automorphism of the cohomology ring of {pair}"
        )));
    }
    let word = realize_automorphism(&pair, &target)
        .map_err(|e| CliError::Internal(e.to_string()))?
        .ok_or_else(|| {
            CliError::Internal(format!(
                "no word of length at most 4 over the standard maps reaches {value} on {pair}"
            ))
        })?;
    let product = word_product(&pair, &word).map_err(|e| CliError::Internal(e.to_string()))?;
    if product != target {
        return Err(CliError::Internal(format!(
            "word product {:?} does not match the requested target {value}",
            product.0
        )));
    }
    let json = serde_json::json!({
        "word": word,
        "theta": product.to_json(),
    });
    let shown = if word.is_empty() {
        "(empty)".to_string()
    } else {
        word.join(" ")
    };
    let table = format!("word: {shown}\ntheta:\n{}", matrix_block(&product));
    Ok(Output::new(json, table))
}

fn cmd_verify(criterion: Option<usize>) -> CResult<Output> {
    let reports: Vec<CriterionReport> = match criterion {
        None => qtoric::run_all(),
        Some(k) => vec![match k {
            1 => criterion_free_module(),
            2 => criterion_aut_tables(),
            3 => criterion_bundle_equivalence(),
            4 => criterion_classification(),
            5 => criterion_blowup(),
            6 => criterion_sum_matrices(),
            7 => criterion_realization(),
            8 => criterion_lens_table(),
            9 => criterion_reduction_oracles(),
            _ => return Err(invalid(format!("--criterion must be 1..=9, got {k}"))),
        }],
    };
    let code = if reports.iter().all(|r| r.passed) { 0 } else { 1 };
    let json: Vec<serde_json::Value> = reports.iter().map(CriterionReport::to_json).collect();
    let lines: Vec<String> = reports
        .iter()
        .map(|r| {
            let status = if r.passed { "PASS" } else { "FAIL" };
            format!("criterion {} ({}): {status} — {}", r.id, r.name, r.detail)
        })
        .collect();
    Ok(Output {
        json: serde_json::Value::Array(json),
        table: lines.join("\n"),
        code,
    })
}

fn execute(command: &Cmd) -> CResult<Output> {
    match command {
        Cmd::Enumerate { n, m, bound } => cmd_enumerate(*n, *m, *bound),
        Cmd::Cohomology { n, m, a, b, degree } => cmd_cohomology(*n, *m, a, b, *degree),
        Cmd::Aut { n, m, a, b, bound } => cmd_aut(*n, *m, a, b, *bound),
        Cmd::Iso { n, m, a, b, aprime, bprime, bound } => {
            cmd_iso(*n, *m, a, b, aprime, bprime, *bound)
        }
        Cmd::Classify { n, m, a, b } => cmd_classify(*n, *m, a, b),
        Cmd::DiffeoGb { n, a, aprime } => cmd_diffeo_gb(*n, a, aprime),
        Cmd::Fan { op } => match op {
            FanCmd::Wps { n, a } => Ok(fan_output(&wps_fan(*n, *a).map_err(invalid)?)),
            FanCmd::Gb { n, a } => Ok(fan_output(&gb_fan(*n, *a).map_err(invalid)?)),
            FanCmd::Blowup { n, a } => cmd_fan_blowup(*n, *a),
            FanCmd::Smooth { file } => cmd_fan_smooth(file.as_ref()),
            FanCmd::Lens { n, a } => cmd_fan_lens(*n, *a),
        },
        Cmd::Realize { n, m, a, b, target } => cmd_realize(*n, *m, a, b, target),
        Cmd::Verify { criterion } => cmd_verify(*criterion),
    }
}

fn print_error(msg: &str) {
    eprintln!("{msg}");
    let doc = serde_json::json!({ "error": msg });
    println!("{doc}");
}

pub fn run() -> i32 {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) => {
            print!("{e}");
            return 0;
        }
        Err(e) => {
            print_error(e.to_string().trim_end());
            return 2;
        }
    };
    match execute(&cli.command) {
        Ok(out) => {
            match cli.format {
                Format::Json => println!("{}", out.json),
                Format::Table => println!("{}", out.table),
            }
            out.code
        }
        Err(CliError::Validation(msg)) => {
            print_error(&msg);
            2
        }
        Err(CliError::Internal(msg)) => {
            print_error(&msg);
            1
        }
    }
}
