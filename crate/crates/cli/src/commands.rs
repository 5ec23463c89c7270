//! Subcommand implementations and the report format.

use std::fmt::Write as _;
use std::path::Path;

use anyhow::{bail, Context, Result};
use coxlie::catalog;
use coxlie::coxeter::{conjecture_status, default_conjecture_degree, ConjectureReport};
use coxlie::exec::Exec;
use coxlie::expr;
use coxlie::lcs::{Calculator, LElem};
use coxlie::nk::{nk_dims, LieTree};
use coxlie::series::{extract_exponents, rhs_poly, DimTable};
use coxlie::worked;
use coxlie::FlagComplex;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::{Command, Common};

const DEFAULT_DIMS_DEGREE: u32 = 6;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub command: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub complex: Option<ComplexSummary>,
    pub result: Value,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ComplexSummary {
    pub source: String,
    pub m: usize,
    pub edges: Vec<[usize; 2]>,
    pub facets: Vec<Vec<usize>>,
}

impl ComplexSummary {
    fn new(source: &str, k: &FlagComplex) -> Self {
        ComplexSummary {
            source: source.to_string(),
            m: k.m(),
            edges: k.edges().into_iter().map(|(i, j)| [i, j]).collect(),
            facets: k.facets().into_iter().map(|f| f.to_vec()).collect(),
        }
    }

    fn header(&self) -> String {
        let edges: Vec<String> = self.edges.iter().map(|[i, j]| format!("{i}-{j}")).collect();
        let edges = if edges.is_empty() {
            "none".to_string()
        } else {
            edges.join(" ")
        };
        format!("complex {} (m = {}, edges: {edges})\n", self.source, self.m)
    }
}

pub fn load_complex(spec: &str, seed: u64) -> Result<FlagComplex> {
    if let Some(m) = spec.strip_prefix("random:") {
        let m: usize = m
            .parse()
            .with_context(|| format!("bad vertex count in '{spec}'"))?;
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut edges = Vec::new();
        for i in 1..=m {
            for j in i + 1..=m {
                if rng.gen_bool(0.5) {
                    edges.push((i, j));
                }
            }
        }
        return Ok(FlagComplex::new(m, &edges)?);
    }
    let path = Path::new(spec);
    if path.is_file() {
        let text = std::fs::read_to_string(path).with_context(|| format!("reading {spec}"))?;
        return catalog::from_json(&text).with_context(|| format!("loading {spec}"));
    }
    if spec.ends_with(".json") {
        bail!("complex file {spec} not found");
    }
    Ok(catalog::by_name(spec)?)
}

/// Runs `f` with `threads` workers; one worker means sequential execution.
fn with_threads<T: Send>(threads: usize, f: impl FnOnce(Exec) -> T + Send) -> Result<T> {
    if threads == 0 {
        bail!("--threads must be at least 1");
    }
    #[cfg(feature = "parallel")]
    if threads > 1 {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build()?;
        return Ok(pool.install(|| f(Exec::Parallel)));
    }
    #[cfg(not(feature = "parallel"))]
    if threads > 1 {
        eprintln!("warning: built without the parallel feature; running on one thread");
    }
    Ok(f(Exec::Sequential))
}

fn dim_rows(t: &DimTable, max_degree: u32) -> Vec<Value> {
    let mut rows = Vec::new();
    for alpha in multidegrees(t.nvars, max_degree) {
        let n = t.get(&alpha);
        if n != 0 {
            rows.push(json!({ "alpha": alpha, "n": n }));
        }
    }
    rows
}

/// Multidegrees of total degree `2..=max_degree`, ordered by degree.
fn multidegrees(nvars: usize, max_degree: u32) -> Vec<Vec<u32>> {
    fn rec(i: usize, left: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if i == cur.len() {
            if cur.iter().sum::<u32>() >= 2 {
                out.push(cur.clone());
            }
            return;
        }
        for a in 0..=left {
            cur[i] = a;
            rec(i + 1, left - a, cur, out);
        }
        cur[i] = 0;
    }
    let mut out = Vec::new();
    rec(0, max_degree, &mut vec![0; nvars], &mut out);
    out.sort_by_key(|a| (a.iter().sum::<u32>(), std::cmp::Reverse(a.clone())));
    out
}

fn emit(report: &Report, text: &str, json_out: bool) -> Result<()> {
    if json_out {
        println!("{}", serde_json::to_string_pretty(report)?);
    } else {
        print!("{text}");
    }
    Ok(())
}

pub fn run(command: Command, echo: String) -> Result<bool> {
    match command {
        Command::Examples { json, threads } => examples(echo, json, threads),
        Command::Bracket { common, lhs, rhs } => with_complex(&common, echo, |k, exec, text| {
            bracket(k, exec, &lhs, &rhs, text)
        }),
        Command::Analyze(c) => with_complex(&c, echo, |k, exec, text| {
            analyze(k, exec, c.max_degree, text)
        }),
        Command::Gptw(c) => with_complex(&c, echo, |k, _, text| Ok((gptw(k, text), true))),
        Command::Dims(c) => {
            with_complex(&c, echo, |k, exec, text| dims(k, exec, c.max_degree, text))
        }
        Command::Series(c) => with_complex(&c, echo, |k, _, text| series(k, c.max_degree, text)),
        Command::Conjecture(c) => with_complex(&c, echo, |k, exec, text| {
            conjecture(k, exec, c.max_degree, text)
        }),
    }
}

fn with_complex(
    c: &Common,
    echo: String,
    body: impl FnOnce(&FlagComplex, Exec, &mut String) -> Result<(Value, bool)> + Send,
) -> Result<bool> {
    let k = load_complex(&c.complex, c.seed)?;
    let summary = ComplexSummary::new(&c.complex, &k);
    let mut text = summary.header();
    let (result, ok) = with_threads(c.threads, |exec| body(&k, exec, &mut text))??;
    let report = Report {
        command: echo,
        complex: Some(summary),
        result,
    };
    emit(&report, &text, c.json)?;
    Ok(ok)
}

fn gptw(k: &FlagComplex, text: &mut String) -> Value {
    let gens = k.gptw_index();
    let _ = writeln!(text, "{} GPTW generators", gens.len());
    let rows: Vec<Value> = gens
        .iter()
        .map(|c| {
            let comm = LieTree::nested(&c.letters()).to_string();
            let _ = writeln!(
                text,
                "  {:<16} degree {}  {}",
                c.to_string(),
                c.degree(),
                comm
            );
            json!({
                "index": c.to_string(),
                "set": c.set.to_vec(),
                "last": c.last,
                "degree": c.degree(),
                "commutator": comm,
            })
        })
        .collect();
    json!({ "count": gens.len(), "generators": rows })
}

fn totals_text(label: &str, totals: &[u64], text: &mut String) {
    let shown: Vec<String> = totals
        .iter()
        .enumerate()
        .skip(2)
        .map(|(k, n)| format!("n{k}={n}"))
        .collect();
    let _ = writeln!(text, "{label}: {}", shown.join(" "));
}

fn series(k: &FlagComplex, max_degree: Option<u32>, text: &mut String) -> Result<(Value, bool)> {
    let d = max_degree.unwrap_or(coxlie::series::DEFAULT_MAX_DEGREE);
    let rhs = rhs_poly(k);
    let single = rhs.single_variable();
    let exps = extract_exponents(&rhs, d)?;
    let totals = exps.totals();
    let _ = writeln!(text, "rhs (single variable): {single}");
    let _ = writeln!(text, "rhs: {rhs}");
    totals_text(&format!("exponents through degree {d}"), &totals, text);
    let value = json!({
        "max_degree": d,
        "rhs_single": single.to_string(),
        "rhs": rhs.to_string(),
        "exponents": dim_rows(&exps, d),
        "totals": totals,
    });
    Ok((value, true))
}

fn dims(
    k: &FlagComplex,
    exec: Exec,
    max_degree: Option<u32>,
    text: &mut String,
) -> Result<(Value, bool)> {
    let d = max_degree.unwrap_or(DEFAULT_DIMS_DEGREE);
    let span = nk_dims(k, d, exec)?.dims();
    let predicted = extract_exponents(&rhs_poly(k), d)?;
    let mismatches: Vec<Value> = multidegrees(k.m(), d)
        .into_iter()
        .filter(|a| span.get(a) != predicted.get(a))
        .map(|a| json!({ "alpha": a, "span": span.get(&a), "series": predicted.get(&a) }))
        .collect();
    let ok = mismatches.is_empty();
    totals_text(&format!("dim N_K through degree {d}"), &span.totals(), text);
    let _ = writeln!(
        text,
        "series prediction: {}",
        if ok {
            "agrees at every multidegree".to_string()
        } else {
            format!("{} mismatches", mismatches.len())
        }
    );
    for alpha in multidegrees(k.m(), d) {
        let n = span.get(&alpha);
        if n != 0 {
            let _ = writeln!(text, "  {alpha:?}  {n}");
        }
    }
    let value = json!({
        "max_degree": d,
        "dims": dim_rows(&span, d),
        "totals": span.totals(),
        "series_totals": predicted.totals(),
        "matches_series": ok,
        "mismatches": mismatches,
    });
    Ok((value, ok))
}

fn conjecture_text(r: &ConjectureReport, text: &mut String) {
    let _ = writeln!(text, "  k  lower  upper  verdict");
    for d in &r.degrees {
        let verdict = serde_json::to_value(d.verdict).unwrap();
        let _ = writeln!(
            text,
            "{:>3}  {:>5}  {:>5}  {}",
            d.k,
            d.lower,
            d.upper,
            verdict.as_str().unwrap()
        );
    }
}

fn conjecture(
    k: &FlagComplex,
    exec: Exec,
    max_degree: Option<u32>,
    text: &mut String,
) -> Result<(Value, bool)> {
    let d = max_degree.unwrap_or_else(|| default_conjecture_degree(k.m()));
    let r = conjecture_status(k, d, exec)?;
    conjecture_text(&r, text);
    let _ = writeln!(
        text,
        "{}",
        if r.all_verified() {
            "verified at every degree"
        } else {
            "some degrees inconclusive"
        }
    );
    let mut value = serde_json::to_value(&r)?;
    value["all_verified"] = json!(r.all_verified());
    Ok((value, true))
}

fn analyze(
    k: &FlagComplex,
    exec: Exec,
    max_degree: Option<u32>,
    text: &mut String,
) -> Result<(Value, bool)> {
    let h1_total: usize = k
        .subsets()
        .map(|j| k.h1_dim_gf2(j))
        .sum::<coxlie::Result<usize>>()?;
    let counts = k.subcomplex_type_counts();
    let gens = k.gptw_index();
    let rhs = rhs_poly(k);
    let d = max_degree.unwrap_or(DEFAULT_DIMS_DEGREE);
    let exps = extract_exponents(&rhs, d)?;
    let cd = d.min(default_conjecture_degree(k.m()));
    let r = conjecture_status(k, cd, exec)?;
    let _ = writeln!(
        text,
        "chordal: {}   sum of h1 over full subcomplexes: {h1_total}",
        k.is_chordal()
    );
    let _ = writeln!(text, "GPTW generators: {}", gens.len());
    let _ = writeln!(text, "rhs (single variable): {}", rhs.single_variable());
    totals_text(&format!("dim N_K through degree {d}"), &exps.totals(), text);
    let _ = writeln!(text, "conjecture through degree {cd}:");
    conjecture_text(&r, text);
    let value = json!({
        "chordal": k.is_chordal(),
        "h1_total": h1_total,
        "type_counts": counts,
        "gptw_count": gens.len(),
        "rhs_single": rhs.single_variable().to_string(),
        "max_degree": d,
        "totals": exps.totals(),
        "conjecture": r,
    });
    Ok((value, true))
}

fn max_tree_degree(x: &LElem) -> usize {
    x.comm
        .monomials()
        .map(|(_, t)| t.degree())
        .max()
        .unwrap_or(0)
}

fn bracket(
    k: &FlagComplex,
    exec: Exec,
    lhs: &str,
    rhs: &str,
    text: &mut String,
) -> Result<(Value, bool)> {
    let calc = Calculator::new(k)?;
    let x = expr::eval_str(lhs, &calc).with_context(|| format!("--lhs {lhs}"))?;
    let y = expr::eval_str(rhs, &calc).with_context(|| format!("--rhs {rhs}"))?;
    let z = calc.bracket_l(&x, &y)?;
    let d = [&x, &y, &z]
        .iter()
        .map(|e| max_tree_degree(e))
        .max()
        .unwrap_or(0)
        .max(2) as u32;
    let basis = nk_dims(k, d, exec)?;
    let (x, y, z) = (
        calc.canonical_l(&x, &basis)?,
        calc.canonical_l(&y, &basis)?,
        calc.canonical_l(&z, &basis)?,
    );
    let _ = writeln!(text, "[{x}, {y}] = {z}");
    let _ = writeln!(
        text,
        "(conjectural: exact in span(g) + N_K[t]; describes L(RC_K) if psi is injective)"
    );
    let value = json!({
        "lhs": x.to_string(),
        "rhs": y.to_string(),
        "bracket": z.to_string(),
        "conjectural": true,
    });
    Ok((value, true))
}

fn examples(echo: String, json_out: bool, threads: usize) -> Result<bool> {
    let checks = with_threads(threads, worked::run_all)??;
    let all = checks.iter().all(worked::Check::ok);
    let mut text = String::new();
    for c in &checks {
        let tag = if c.ok() { "ok  " } else { "DIFF" };
        let _ = writeln!(text, "{tag} {:<15} {:<30} {}", c.example, c.item, c.actual);
        if !c.ok() {
            let _ = writeln!(text, "     expected {}", c.expected);
        }
    }
    let passed = checks.iter().filter(|c| c.ok()).count();
    let _ = writeln!(text, "{passed}/{} checks match", checks.len());
    let report = Report {
        command: echo,
        complex: None,
        result: json!({ "all_match": all, "checks": checks }),
    };
    emit(&report, &text, json_out)?;
    Ok(all)
}
