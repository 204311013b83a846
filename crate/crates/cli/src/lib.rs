//! Command implementations behind the `seifert-delta` binary. Every command yields an
//! [`Outcome`]: a JSON report, a plain-text rendering of it, and a process exit code.

use std::fmt::Write as _;

use serde::Serialize;
use serde_json::{json, Value};

use seifert_core::arith::{
    dedekind_sum, dedekind_sum_numeric, lambda_sum, lambda_sum_numeric, to_f64, Rational,
};
use seifert_core::invariants::{delta, delta_multiset, delta_via_n, swf_descriptor, SignedValue};
use seifert_core::lens::{lens_delta, LensSpace, LensSpinC};
use seifert_core::plumbing::{chain_lengths, double_graph, lattice_signature, sigma_relation_check};
use seifert_core::prism::{eta_diff_closed, metacyclic_eta_dir, pinc_sign_rp2a, MetacyclicParams};
use seifert_core::seifert::{degree_l, euler_char, h1_order};
use seifert_core::spinc::{enumerate_spinc, holonomy, HolonomyClass};
use seifert_core::verify::run_suite;
use seifert_core::{Error, PlusFirst, SeifertData, SignPolicy, Unresolved};

pub const SCHEMA: &str = "seifert-delta/1";

pub const EXIT_OK: i32 = 0;
pub const EXIT_SUITE_FAILURE: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_DOMAIN: i32 = 3;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, clap::ValueEnum)]
pub enum Policy {
    #[default]
    Unresolved,
    PlusFirst,
}

impl Policy {
    fn as_dyn(self) -> &'static dyn SignPolicy {
        match self {
            Policy::Unresolved => &Unresolved,
            Policy::PlusFirst => &PlusFirst,
        }
    }
}

/// Finished command: report, table rendering and exit code.
#[derive(Debug, Clone)]
pub struct Outcome {
    pub report: Value,
    pub table: String,
    pub code: i32,
}

/// Failed command with its exit code.
#[derive(Debug, Clone, PartialEq)]
pub struct CliError {
    pub code: i32,
    pub message: String,
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.message)
    }
}

impl std::error::Error for CliError {}

fn usage(e: Error) -> CliError {
    CliError { code: EXIT_USAGE, message: e.to_string() }
}

/// Parse failures are usage errors; anything else is a domain violation.
fn domain(e: Error) -> CliError {
    match e {
        Error::Parse(_) | Error::UnknownSuite(_) => usage(e),
        other => CliError { code: EXIT_DOMAIN, message: other.to_string() },
    }
}

fn report(command: &str, inputs: Value, result: Value, diagnostics: Value) -> Value {
    json!({
        "schema": SCHEMA,
        "command": command,
        "inputs": inputs,
        "result": result,
        "diagnostics": diagnostics,
    })
}

fn q(x: &Rational) -> String {
    x.to_string()
}

#[derive(Serialize)]
struct MultisetEntry {
    value: String,
    multiplicity: usize,
}

fn signed_json(v: &SignedValue) -> Value {
    match v {
        SignedValue::Exact(x) => Value::from(q(x)),
        pm => json!({ "unresolved": pm.candidates().iter().map(q).collect::<Vec<_>>() }),
    }
}

fn parse_spec(spec: &str) -> Result<SeifertData, CliError> {
    spec.parse::<SeifertData>().map_err(domain)
}

pub fn cmd_delta(spec: &str, policy: Policy) -> Result<Outcome, CliError> {
    let raw = parse_spec(spec)?;
    let s = raw.normalize();
    let p = policy.as_dyn();
    let mut rows = Vec::new();
    let mut table = String::new();
    let mut routes_agree = true;
    writeln!(table, "S = {s}   l = {}   chi = {}", degree_l(&s), euler_char(&s)).unwrap();
    writeln!(table, "{:>3} {:>3} {:>8} {:<20} {:<20} d/2", "m", "tau", "e", "gamma", "delta").unwrap();
    for x in enumerate_spinc(&s) {
        let d = delta(&x, &s, p).map_err(domain)?;
        routes_agree &= delta_via_n(&x, &s, p).map_err(domain)? == d;
        let mut row = x.to_json();
        row["holonomy"] = Value::from(match holonomy(&x) {
            HolonomyClass::Trivial => "trivial",
            HolonomyClass::NonTrivial => "non-trivial",
        });
        row["delta_invariant"] = signed_json(&d);
        row["swf"] = Value::from(swf_descriptor(&x, &s, p).map_err(domain)?);
        writeln!(
            table,
            "{:>3} {:>3} {:>8} {:<20} {:<20} {}",
            x.m,
            x.tau.symbol(),
            x.cls.e().to_string(),
            format!("{:?}", x.cls.gammas()),
            format!("{:?}", x.cls.deltas()),
            d
        )
        .unwrap();
        rows.push(row);
    }
    let multiset: Vec<MultisetEntry> = delta_multiset(&s)
        .into_iter()
        .map(|(v, k)| MultisetEntry { value: q(&v), multiplicity: k })
        .collect();
    writeln!(table, "multiset:").unwrap();
    for e in &multiset {
        writeln!(table, "  {} x{}", e.value, e.multiplicity).unwrap();
    }
    let result = json!({
        "normalized": s.to_string(),
        "l": q(&degree_l(&s)),
        "chi": q(&euler_char(&s)),
        "h1_order": h1_order(&s).to_string(),
        "structures": rows,
        "multiset": multiset,
    });
    let inputs = json!({ "spec": spec, "policy": p.name() });
    let diagnostics = json!({ "assembly_routes_agree": routes_agree });
    Ok(Outcome { report: report("delta", inputs, result, diagnostics), table, code: EXIT_OK })
}

pub fn cmd_lens(a: i64, b: i64, u: Option<i64>) -> Result<Outcome, CliError> {
    let lens = LensSpace::new(a, b).map_err(usage)?;
    let labels: Vec<LensSpinC> = match u {
        Some(u) => vec![LensSpinC::new(u, &lens)],
        None => lens.spinc().collect(),
    };
    let mut table = format!("L({a},{b})\n");
    let rows: Vec<Value> = labels
        .iter()
        .map(|&su| {
            let d = lens_delta(&lens, su);
            writeln!(table, "  u={} delta={}", su.u(), d).unwrap();
            json!({ "u": su.u(), "delta": q(&d) })
        })
        .collect();
    let inputs = json!({ "a": a, "b": b, "u": u });
    Ok(Outcome { report: report("lens", inputs, Value::from(rows), json!({})), table, code: EXIT_OK })
}

pub fn cmd_dedekind(b: i64, a: i64) -> Result<Outcome, CliError> {
    let s = dedekind_sum(b, a).map_err(usage)?;
    let z = dedekind_sum_numeric(b, a).map_err(usage)?;
    let diagnostics = json!({ "numeric_re": z.re, "numeric_im": z.im, "residue": (z.re - to_f64(&s)).abs() });
    Ok(Outcome {
        report: report("dedekind", json!({ "b": b, "a": a }), Value::from(q(&s)), diagnostics),
        table: format!("s({b},{a}) = {s}\n"),
        code: EXIT_OK,
    })
}

pub fn cmd_lambda(b: i64, a: i64, n: i64) -> Result<Outcome, CliError> {
    let v = lambda_sum(b, a, n).map_err(usage)?;
    let z = lambda_sum_numeric(b, a, n).map_err(usage)?;
    let diagnostics = json!({ "numeric_re": z.re, "numeric_im": z.im, "residue": (z.re - to_f64(&v)).abs() });
    Ok(Outcome {
        report: report("lambda", json!({ "b": b, "a": a, "n": n }), Value::from(q(&v)), diagnostics),
        table: format!("lambda({b},{a};{n}) = {v}\n"),
        code: EXIT_OK,
    })
}

pub fn cmd_prism(m: i64, r: i64) -> Result<Outcome, CliError> {
    let p = MetacyclicParams::new(m, r).map_err(usage)?;
    let mut rows = Vec::new();
    let mut diag = Vec::new();
    let mut table = format!("metacyclic group m={m} r={r}, order {}\n", p.order());
    for c in p.characters() {
        let partner = c.partner(m);
        let closed = eta_diff_closed(m, &c);
        let a = metacyclic_eta_dir(&p, &c).map_err(domain)?;
        let b = metacyclic_eta_dir(&p, &partner).map_err(domain)?;
        let pinc = (c.nu == 0).then(|| pinc_sign_rp2a(m, c.u).value().map(|v| q(&v))).flatten();
        writeln!(
            table,
            "  nu={} u={:<3} partner={:<3} delta_diff={:<5} pinc={}",
            c.nu,
            c.u,
            partner.u,
            closed.to_string(),
            pinc.clone().unwrap_or_else(|| "-".into())
        )
        .unwrap();
        rows.push(json!({
            "nu": c.nu,
            "u": c.u,
            "partner_u": partner.u,
            "delta_difference": q(&closed),
            "pinc_eta": pinc,
        }));
        diag.push(json!({
            "nu": c.nu,
            "u": c.u,
            "eta_dir": a,
            "eta_difference": a - b,
            "residue": (a - b + 2.0 * to_f64(&closed)).abs(),
        }));
    }
    let result = json!({ "order": p.order(), "characters": rows });
    Ok(Outcome {
        report: report("prism", json!({ "m": m, "r": r }), result, json!({ "group_sums": diag })),
        table,
        code: EXIT_OK,
    })
}

pub fn cmd_plumb(spec: &str) -> Result<Outcome, CliError> {
    let s = parse_spec(spec)?.normalize();
    let g = double_graph(&s);
    let lattice = g.to_lattice();
    let sigma_tilde = lattice_signature(&lattice);
    let sigma_x = -(chain_lengths(&s).iter().sum::<usize>() as i64);
    let eps = seifert_core::arith::signum(&degree_l(&s));
    let holds = sigma_relation_check(&s);
    let mut table = format!("S = {s}\nmatrix:\n");
    for row in &lattice.q {
        writeln!(table, "  {}", row.iter().map(|x| format!("{x:>3}")).collect::<Vec<_>>().join(" ")).unwrap();
    }
    writeln!(table, "sigma(X~) = {sigma_tilde}, sigma(X) = {sigma_x}, eps = {eps}, relation holds: {holds}").unwrap();
    let result = json!({
        "normalized": s.to_string(),
        "central_weight": g.central_weight,
        "chains": g.arms,
        "matrix": lattice.q,
        "sigma_double": sigma_tilde,
        "sigma_base": sigma_x,
        "epsilon": eps,
        "relation_holds": holds,
    });
    let code = if holds { EXIT_OK } else { EXIT_SUITE_FAILURE };
    Ok(Outcome { report: report("plumb", json!({ "spec": spec }), result, json!({})), table, code })
}

pub fn cmd_verify(suite: &str, bound: i64) -> Result<Outcome, CliError> {
    if bound < 1 {
        return Err(CliError { code: EXIT_USAGE, message: format!("bound must be positive, got {bound}") });
    }
    let reports = run_suite(suite, bound).map_err(usage)?;
    let ok = reports.iter().all(|r| r.ok());
    let mut table = String::new();
    let mut rows = Vec::new();
    let mut residues = Vec::new();
    for r in &reports {
        writeln!(
            table,
            "{:<11} bound={:<3} passed={:<8} failed={:<5} {}",
            r.suite,
            r.bound,
            r.passed,
            r.failed,
            if r.ok() { "PASS".to_string() } else { format!("FAIL: {}", r.counterexample.clone().unwrap_or_default()) }
        )
        .unwrap();
        rows.push(json!({
            "suite": r.suite,
            "bound": r.bound,
            "passed": r.passed,
            "failed": r.failed,
            "counterexample": r.counterexample,
        }));
        residues.push(json!({ "suite": r.suite, "max_residue": r.max_residue }));
    }
    let result = json!({ "ok": ok, "suites": rows });
    Ok(Outcome {
        report: report("verify", json!({ "suite": suite, "bound": bound }), result, json!({ "residues": residues })),
        table,
        code: if ok { EXIT_OK } else { EXIT_SUITE_FAILURE },
    })
}
