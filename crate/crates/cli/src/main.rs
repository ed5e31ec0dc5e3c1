use clap::{Parser, Subcommand, ValueEnum};
use ea_core::algebra::state::Q;
use ea_core::algebra::{sharp_elements, EffectAlgebra};
use ea_core::comparability::spectral_report;
use ea_core::compbase::{blocks, c_block, center, CompressionBase};
use ea_core::group::UnitalGroup;
use ea_core::instances::{
    format_rational, matrix_spot_checks, parse_rational, parse_spec, validate_instance, value_to_f64, Built,
};
use ea_core::matrix::{fmt_entry, Mat, MatrixAlgebra};
use ea_core::spectral::{
    binary_resolution, expectation_bounds, expectation_bounds_real, rational_resolution, splitting_tree,
    DEFAULT_DEPTH_FINITE, DEFAULT_DEPTH_MATRIX,
};
use ea_core::{Budget, Error, FiniteBase, Report, State};
use serde_json::{json, Value};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

#[derive(Parser)]
#[command(name = "ea", version, about = "Effect algebras, compression bases and spectral resolutions")]
struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Table)]
    format: Format,
    /// Seed for sampled checks.
    #[arg(long, global = true)]
    seed: Option<u64>,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Table,
    Csv,
    Json,
}

#[derive(Subcommand)]
enum Cmd {
    /// Check the effect algebra axioms and the compression base.
    Validate { file: PathBuf },
    /// Sharp elements, center, projections, blocks and spectrality.
    Analyze { file: PathBuf },
    /// The binary spectral resolution of an element.
    Spectral {
        file: PathBuf,
        #[arg(long)]
        element: String,
        #[arg(long)]
        depth: Option<u32>,
        /// A single rational λ in [0, 1].
        #[arg(long)]
        lambda: Option<String>,
    },
    /// Exit 0 if the instance is spectral, 1 if not.
    CheckSpectral { file: PathBuf },
    /// Spectral projections and dyadic approximation in the universal group.
    Group {
        file: PathBuf,
        /// Group element, e.g. "3,-1".
        #[arg(long, allow_hyphen_values = true)]
        g: String,
        #[arg(long, conflicts_with = "approx")]
        lambda: Option<String>,
        /// Integer grid m_0 < … < m_N, e.g. "-2,-1,0,1,2".
        #[arg(long, allow_hyphen_values = true)]
        approx: Option<String>,
        /// Multiplier n for --approx.
        #[arg(long, default_value_t = 1)]
        n: i64,
    },
    /// Lower and upper bounds for s(a) from the resolution.
    Expect {
        file: PathBuf,
        #[arg(long)]
        element: String,
        /// Atom values ("1/24,1/24,…"), "average", or a row-major density matrix.
        #[arg(long)]
        state: String,
        #[arg(long)]
        depth: Option<u32>,
    },
}

enum Failure {
    /// A definite "no" answer.
    No,
    Err(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Err(e.to_string())
    }
}

type Outcome = Result<(), Failure>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    let budget = match cli.seed {
        Some(s) => Budget::from_env().with_seed(s),
        None => Budget::from_env(),
    };
    let out = match &cli.cmd {
        Cmd::Validate { file } => validate(file, cli.format, &budget),
        Cmd::Analyze { file } => analyze(file, cli.format, &budget),
        Cmd::Spectral {
            file,
            element,
            depth,
            lambda,
        } => spectral(file, element, *depth, lambda.as_deref(), cli.format),
        Cmd::CheckSpectral { file } => check_spectral(file, cli.format, &budget),
        Cmd::Group {
            file,
            g,
            lambda,
            approx,
            n,
        } => group(file, g, lambda.as_deref(), approx.as_deref(), *n, cli.format),
        Cmd::Expect {
            file,
            element,
            state,
            depth,
        } => expect(file, element, state, *depth, cli.format),
    };
    match out {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::No) => ExitCode::from(1),
        Err(Failure::Err(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

fn load(path: &Path) -> Result<Built, Failure> {
    let text = std::fs::read_to_string(path).map_err(|e| Failure::Err(format!("{}: {e}", path.display())))?;
    let spec = parse_spec(&text).map_err(|e| Failure::Err(format!("{}: {e}", path.display())))?;
    Ok(ea_core::instances::build_unchecked(&spec)?)
}

fn load_valid(path: &Path, budget: &Budget) -> Result<Built, Failure> {
    let built = load(path)?;
    let report = instance_report(&built, budget);
    if let Some(c) = report.first_failure() {
        return Err(Failure::Err(format!(
            "instance is invalid: {}: {}",
            c.name,
            c.witness.as_deref().unwrap_or("")
        )));
    }
    Ok(built)
}

fn instance_report(built: &Built, budget: &Budget) -> Report {
    match (built.finite(), built.matrix()) {
        (Some(cb), _) => validate_instance(cb, budget),
        (_, Some(m)) => matrix_spot_checks(m, budget),
        _ => unreachable!("an instance is finite or a matrix algebra"),
    }
}

fn emit_report(report: &Report, format: Format) {
    match format {
        Format::Table => print!("{report}"),
        Format::Json => println!("{}", serde_json::to_string_pretty(report).expect("reports serialize")),
        Format::Csv => {
            println!("check,passed,mode,witness");
            for c in &report.checks {
                println!(
                    "{},{},{},{}",
                    csv(&c.name),
                    c.passed,
                    csv(&c.mode.to_string()),
                    csv(c.witness.as_deref().unwrap_or(""))
                );
            }
        }
    }
}

fn csv(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

fn verdict(report: &Report) -> Outcome {
    if report.passed() {
        Ok(())
    } else {
        Err(Failure::No)
    }
}

fn validate(file: &Path, format: Format, budget: &Budget) -> Outcome {
    let built = load(file)?;
    let report = instance_report(&built, budget);
    emit_report(&report, format);
    verdict(&report)
}

fn check_spectral(file: &Path, format: Format, budget: &Budget) -> Outcome {
    let built = load_valid(file, budget)?;
    let report = match (built.finite(), built.matrix()) {
        (Some(cb), _) => spectral_report(cb, budget),
        (_, Some(m)) => {
            let mut r = matrix_spot_checks(m, budget);
            r.title = format!("spectrality: E(R^{})", m.dim());
            r
        }
        _ => unreachable!(),
    };
    emit_report(&report, format);
    verdict(&report)
}

fn failing_names(report: &Report) -> String {
    let names: Vec<&str> = report
        .checks
        .iter()
        .filter(|c| !c.passed)
        .map(|c| c.name.as_str())
        .collect();
    names.join("; ").replace("P = E_S", "P ≠ E_S")
}

fn analyze(file: &Path, format: Format, budget: &Budget) -> Outcome {
    let built = load_valid(file, budget)?;
    let Some(cb) = built.finite() else {
        let m = built.matrix().expect("matrix instance");
        return analyze_matrix(m, format);
    };
    let alg = cb.algebra();
    let labels = |xs: &[usize]| -> Vec<String> { xs.iter().map(|&x| alg.label(x)).collect() };
    let sharp = sharp_elements(alg);
    let centre = center(alg);
    let bl = blocks(cb)?;
    let sizes: Vec<usize> = bl.iter().map(|b| c_block(cb, b).len()).collect();
    let report = spectral_report(cb, budget);
    let spectral = report.passed();
    let line = if spectral {
        format!("spectral: yes; blocks: {}; |P|={}", bl.len(), cb.projections().len())
    } else {
        format!("spectral: no ({})", failing_names(&report))
    };
    match format {
        Format::Json => {
            let v = json!({
                "instance": cb.name(),
                "size": alg.size(),
                "sharp": labels(&sharp),
                "center": labels(&centre),
                "projections": labels(cb.projections()),
                "blocks": bl.iter().map(|b| labels(b)).collect::<Vec<_>>(),
                "c_block_sizes": sizes,
                "spectral": spectral,
                "report": report,
            });
            println!("{}", serde_json::to_string_pretty(&v).expect("json"));
        }
        Format::Csv => {
            println!("key,value");
            println!("instance,{}", csv(cb.name()));
            println!("size,{}", alg.size());
            println!("sharp,{}", sharp.len());
            println!("center,{}", centre.len());
            println!("projections,{}", cb.projections().len());
            println!("blocks,{}", bl.len());
            let s: Vec<String> = sizes.iter().map(usize::to_string).collect();
            println!("c_block_sizes,{}", csv(&s.join(" ")));
            println!("spectral,{spectral}");
        }
        Format::Table => {
            println!("instance: {}", cb.name());
            println!("|E| = {}", alg.size());
            println!("sharp elements ({}): {}", sharp.len(), abbreviate(&labels(&sharp)));
            println!("center ({}): {}", centre.len(), abbreviate(&labels(&centre)));
            println!("P ({}): {}", cb.projections().len(), abbreviate(&labels(cb.projections())));
            for (i, (b, n)) in bl.iter().zip(&sizes).enumerate() {
                println!("block {i}: {} projections, C-block of size {n}", b.len());
            }
            if !spectral {
                for c in report.checks.iter().filter(|c| !c.passed) {
                    println!("  failed: {}: {}", c.name, c.witness.as_deref().unwrap_or(""));
                }
            }
            println!("{line}");
        }
    }
    Ok(())
}

fn abbreviate(xs: &[String]) -> String {
    if xs.len() <= 16 {
        xs.join(" ")
    } else {
        format!("{} … {}", xs[..8].join(" "), xs[xs.len() - 4..].join(" "))
    }
}

fn analyze_matrix(m: &MatrixAlgebra, format: Format) -> Outcome {
    let line = "spectral: yes (E(H), spot-checked)";
    match format {
        Format::Json => println!("{}", json!({"instance": format!("E(R^{})", m.dim()), "dim": m.dim(), "spectral": true})),
        Format::Csv => println!("key,value\ndim,{}\nspectral,true", m.dim()),
        Format::Table => println!("instance: E(R^{})\n{line}", m.dim()),
    }
    Ok(())
}

/// A JSON address, or a bare comma-separated list.
fn parse_json_loose(s: &str) -> Value {
    serde_json::from_str(s).unwrap_or_else(|_| {
        let items: Vec<Value> = s
            .trim_matches(|c| c == '(' || c == ')' || c == '[' || c == ']')
            .split(',')
            .map(|t| {
                let t = t.trim();
                t.parse::<u64>().map(Value::from).unwrap_or_else(|_| Value::from(t))
            })
            .collect();
        Value::Array(items)
    })
}

fn matrix_entries(s: &str) -> Result<Vec<f64>, Failure> {
    let v = parse_json_loose(s);
    let Value::Array(items) = v else {
        return Err(Failure::Err(format!("{s:?} is not a row-major list")));
    };
    let flat: Vec<&Value> = items
        .iter()
        .flat_map(|x| match x {
            Value::Array(row) => row.iter().collect::<Vec<_>>(),
            other => vec![other],
        })
        .collect();
    Ok(flat.into_iter().map(value_to_f64).collect::<ea_core::Result<_>>()?)
}

fn matrix_element(m: &MatrixAlgebra, s: &str) -> Result<Mat, Failure> {
    m.element(&matrix_entries(s)?).map_err(|e| Failure::Err(format!("element not found: {e}")))
}

fn finite_element(cb: &FiniteBase, s: &str) -> Result<usize, Failure> {
    Ok(cb.algebra().parse_address(&parse_json_loose(s))?)
}

fn show_matrix(m: &MatrixAlgebra, p: &Mat) -> String {
    m.describe(p)
}

fn spectral(file: &Path, element: &str, depth: Option<u32>, lambda: Option<&str>, format: Format) -> Outcome {
    let budget = Budget::from_env();
    let built = load_valid(file, &budget)?;
    if let Some(cb) = built.finite() {
        let report = spectral_report(cb, &budget);
        if !report.passed() {
            return Err(Error::NotSpectral(failing_names(&report)).into());
        }
        let a = finite_element(cb, element)?;
        let n = depth.unwrap_or(DEFAULT_DEPTH_FINITE);
        let show = |p: &usize| cb.algebra().label(*p);
        let addr = |p: &usize| cb.algebra().address(*p);
        return emit_spectral(&**cb, &a, n, lambda, format, show, addr);
    }
    let m = built.matrix().expect("matrix instance");
    let a = matrix_element(m, element)?;
    let n = depth.unwrap_or(DEFAULT_DEPTH_MATRIX);
    let show = |p: &Mat| show_matrix(m, p);
    let addr = |p: &Mat| json!(p.row_iter().map(|r| r.iter().copied().collect::<Vec<f64>>()).collect::<Vec<_>>());
    emit_spectral(m, &a, n, lambda, format, show, addr)
}

fn emit_spectral<B: CompressionBase>(
    cb: &B,
    a: &B::Elem,
    n: u32,
    lambda: Option<&str>,
    format: Format,
    show: impl Fn(&B::Elem) -> String,
    addr: impl Fn(&B::Elem) -> Value,
) -> Outcome {
    if let Some(l) = lambda {
        let q = parse_rational(l)?;
        let v = rational_resolution(cb, a, q, n.max(1))?;
        match format {
            Format::Json => println!(
                "{}",
                json!({"lambda": format_rational(q), "depth": v.depth, "projection": addr(&v.projection), "label": show(&v.projection)})
            ),
            Format::Csv => println!("lambda,projection\n{},{}", format_rational(q), csv(&show(&v.projection))),
            Format::Table => println!("p_{} = {}", format_rational(q), show(&v.projection)),
        }
        return Ok(());
    }
    let res = binary_resolution(cb, a, n)?;
    let tree = splitting_tree(cb, a, n)?;
    match format {
        Format::Csv => {
            println!("level,k,lambda,projection");
            for (l, p) in res.entries() {
                println!("{},{},{},{}", l.level(), l.numerator(), l, csv(&show(&p)));
            }
        }
        Format::Json => {
            let rows: Vec<Value> = res
                .entries()
                .map(|(l, p)| json!({"level": l.level(), "k": l.numerator(), "lambda": l.to_string(), "projection": addr(&p), "label": show(&p)}))
                .collect();
            let layers: Vec<Value> = (0..=n)
                .map(|l| {
                    let cells: Vec<Value> = tree
                        .layer(l)
                        .iter()
                        .map(|node| json!({"k": node.k, "u": addr(&node.u), "c": addr(&node.c)}))
                        .collect();
                    Value::Array(cells)
                })
                .collect();
            println!("{}", serde_json::to_string_pretty(&json!({"element": show(a), "depth": n, "rows": rows, "layers": layers})).expect("json"));
        }
        Format::Table => {
            println!("element {} at depth {n}", show(a));
            println!("{:>12}  projection", "lambda");
            for (l, p) in res.entries() {
                println!("{:>12}  {}", l.to_string(), show(&p));
            }
            println!("layers (nonzero u_w):");
            for l in 0..=n {
                for node in tree.layer(l) {
                    let w = format_word(node.k, l);
                    println!("  w={w:<8} u={}  c={}", show(&node.u), show(&node.c));
                }
            }
        }
    }
    Ok(())
}

fn format_word(k: u64, len: u32) -> String {
    if len == 0 {
        "ε".into()
    } else {
        format!("{k:0width$b}", width = len as usize)
    }
}

fn int_vector(s: &str) -> Result<Vec<i64>, Failure> {
    s.trim_matches(|c| c == '(' || c == ')' || c == '[' || c == ']')
        .split(',')
        .map(|t| t.trim().parse::<i64>().map_err(|_| Failure::Err(format!("{t:?} is not an integer"))))
        .collect()
}

fn group(file: &Path, g: &str, lambda: Option<&str>, approx: Option<&str>, n: i64, format: Format) -> Outcome {
    let built = load(file)?;
    let cb = built
        .finite()
        .ok_or_else(|| Failure::Err("the group engine needs a finite MV or Boolean instance".into()))?;
    let unit = cb
        .algebra()
        .group_unit()
        .ok_or_else(|| Failure::Err(format!("{} has no ℤ^X universal group", cb.name())))?;
    let grp = UnitalGroup::new(unit)?;
    let g = int_vector(g)?;
    let vec_str = |v: &[i64]| format!("({})", v.iter().map(i64::to_string).collect::<Vec<_>>().join(","));

    if let Some(l) = lambda {
        let q = parse_rational(l)?;
        let p = grp.vector(grp.spectral_at(&g, q)?);
        match format {
            Format::Json => println!("{}", json!({"g": g, "lambda": format_rational(q), "projection": p})),
            Format::Csv => println!("lambda,projection\n{},{}", format_rational(q), csv(&vec_str(&p))),
            Format::Table => println!("p_{{g,{}}} = {}", format_rational(q), vec_str(&p)),
        }
        return Ok(());
    }
    if let Some(grid) = approx {
        let grid = int_vector(grid)?;
        let a = grp.dyadic_approximation(&g, &grid, n)?;
        let parts: Vec<Vec<i64>> = a.parts.iter().map(|&p| grp.vector(p)).collect();
        match format {
            Format::Json => println!(
                "{}",
                json!({"g": g, "n": n, "grid": grid, "parts": parts, "bound": a.bound, "error": format_rational(a.error)})
            ),
            Format::Csv => {
                println!("m,part");
                for (m, p) in grid[1..].iter().zip(&parts) {
                    println!("{m},{}", csv(&vec_str(p)));
                }
            }
            Format::Table => {
                for (m, p) in grid[1..].iter().zip(&parts) {
                    println!("m={m:<4} u_i={}", vec_str(p));
                }
                println!("error {} ≤ bound {}", format_rational(a.error), a.bound);
            }
        }
        return Ok(());
    }
    let d = grp.orthogonal_decomposition(&g)?;
    let (lo, hi) = grp.bounds(&g)?;
    let norm = grp.norm(&g)?;
    let rickart = grp.vector(grp.rickart(&g)?);
    let p = grp.vector(d.p);
    match format {
        Format::Json => println!(
            "{}",
            json!({"g": g, "plus": d.plus, "minus": d.minus, "p": p, "rickart": rickart,
                   "lower": format_rational(lo), "upper": format_rational(hi), "norm": format_rational(norm)})
        ),
        Format::Csv => {
            println!("key,value");
            for (k, v) in [("plus", vec_str(&d.plus)), ("minus", vec_str(&d.minus)), ("p", vec_str(&p)), ("rickart", vec_str(&rickart))] {
                println!("{k},{}", csv(&v));
            }
            println!("lower,{}\nupper,{}\nnorm,{}", format_rational(lo), format_rational(hi), format_rational(norm));
        }
        Format::Table => {
            println!("g+ = {}  g- = {}  p = {}", vec_str(&d.plus), vec_str(&d.minus), vec_str(&p));
            println!("g* = {}", vec_str(&rickart));
            println!("l_g = {}  u_g = {}  ‖g‖ = {}", format_rational(lo), format_rational(hi), format_rational(norm));
        }
    }
    Ok(())
}

fn expect(file: &Path, element: &str, state: &str, depth: Option<u32>, format: Format) -> Outcome {
    let budget = Budget::from_env();
    let built = load_valid(file, &budget)?;
    let (lo, hi, value) = if let Some(cb) = built.finite() {
        let alg = cb.algebra();
        let a = finite_element(cb, element)?;
        let s = if matches!(state.trim(), "average" | "avg") {
            State::coordinate_average(alg)?
        } else {
            let vals = state
                .trim_matches(|c| c == '(' || c == ')' || c == '[' || c == ']')
                .split(',')
                .map(|t| parse_rational(t.trim().trim_matches('"')))
                .collect::<ea_core::Result<Vec<Q>>>()?;
            State::from_atom_values(alg, &vals)?
        };
        let n = depth.unwrap_or(DEFAULT_DEPTH_FINITE).min(30);
        let (lo, hi) = expectation_bounds(cb, a, &s, n)?;
        (format_rational(lo), format_rational(hi), format_rational(s.value(a)))
    } else {
        let m = built.matrix().expect("matrix instance");
        let a = matrix_element(m, element)?;
        let rho = Mat::from_row_slice(m.dim(), m.dim(), &matrix_entries(state)?);
        if (rho.trace() - 1.0).abs() > 1e-9 || !m.leq(&m.zero(), &rho) {
            return Err(Error::InvalidState("density matrix must be positive with trace 1".into()).into());
        }
        let n = depth.unwrap_or(DEFAULT_DEPTH_MATRIX);
        let (lo, hi) = expectation_bounds_real(m, &a, |x| MatrixAlgebra::trace_state(&rho, x), n)?;
        (fmt_entry(lo), fmt_entry(hi), fmt_entry(MatrixAlgebra::trace_state(&rho, &a)))
    };
    match format {
        Format::Json => println!("{}", json!({"lo": lo, "hi": hi, "value": value})),
        Format::Csv => println!("lo,hi,value\n{lo},{hi},{value}"),
        Format::Table => println!("{lo} ≤ s(a) = {value} ≤ {hi}"),
    }
    Ok(())
}
