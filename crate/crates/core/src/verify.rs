//! Identity sweeps grouped into named suites. Each suite walks its cases in a fixed
//! order and reports the first failing case, which is therefore the smallest one in
//! that order.

use std::collections::BTreeMap;

use num_integer::Integer;
use num_traits::{Signed, Zero};
use rayon::prelude::*;

use crate::arith::{
    dedekind_rademacher, dedekind_sum, dedekind_sum_numeric, frac, int, lambda_sum, lambda_sum_numeric, mod_inverse,
    rat, sawtooth, to_f64, Rational,
};
use crate::error::{Error, Result};
use crate::invariants::{
    delta, delta_multiset, delta_pair, delta_via_n, eta_f0, eta_f0_raw, eta_sig, transgression, PlusFirst,
    SignPolicy, Unresolved,
};
use crate::lens::{lens_delta_closed_b1, lens_delta_raw};
use crate::plumbing::{arm_chain, eval_neg_cont_frac, froyshov_equality_check, is_negative_definite, neg_cont_frac, sigma_relation_check, PlumbingGraph};
use crate::prism::{eta_diff_closed, metacyclic_eta_dir, rootsum_identity_check, rp2_circle_bundle_deltas, MetacyclicParams};
use crate::seifert::{degree_l, h1_order, Arm, SeifertData};
use crate::spinc::{enumerate_spinc, holonomy, trivial_holonomy_classes, HolonomyClass, Tau};

pub const SUITES: [&str; 5] = ["arith", "lens", "invariants", "prism", "plumbing"];

/// Outcome of one suite run.
#[derive(Debug, Clone, PartialEq)]
pub struct SuiteReport {
    pub suite: String,
    pub bound: i64,
    pub passed: usize,
    pub failed: usize,
    pub counterexample: Option<String>,
    /// Largest floating discrepancy seen by oracle comparisons.
    pub max_residue: f64,
}

impl SuiteReport {
    pub fn ok(&self) -> bool {
        self.failed == 0
    }
}

/// Per-case tally.
#[derive(Debug, Default)]
struct Tally {
    passed: usize,
    failures: Vec<String>,
    residue: f64,
}

impl Tally {
    fn check(&mut self, ok: bool, what: impl FnOnce() -> String) {
        if ok {
            self.passed += 1;
        } else {
            self.failures.push(what());
        }
    }

    fn close(&mut self, residue: f64, tol: f64, what: impl FnOnce() -> String) {
        self.residue = self.residue.max(residue);
        self.check(residue <= tol, what);
    }
}

fn run_cases<T: Sync>(suite: &str, bound: i64, cases: &[T], f: impl Fn(&T) -> Tally + Sync + Send) -> SuiteReport {
    let tallies: Vec<Tally> = cases.par_iter().map(f).collect();
    let mut report = SuiteReport {
        suite: suite.to_string(),
        bound,
        passed: 0,
        failed: 0,
        counterexample: None,
        max_residue: 0.0,
    };
    for t in tallies {
        report.passed += t.passed;
        report.failed += t.failures.len();
        report.max_residue = report.max_residue.max(t.residue);
        if report.counterexample.is_none() {
            report.counterexample = t.failures.into_iter().next();
        }
    }
    report
}

/// Runs one named suite, or every suite for `"all"`.
pub fn run_suite(name: &str, bound: i64) -> Result<Vec<SuiteReport>> {
    let one = |n: &str| -> SuiteReport {
        match n {
            "arith" => arith_suite(bound),
            "lens" => lens_suite(bound),
            "invariants" => invariants_suite(bound),
            "prism" => prism_suite(bound),
            _ => plumbing_suite(bound),
        }
    };
    match name {
        "all" => Ok(SUITES.iter().map(|n| one(n)).collect()),
        n if SUITES.contains(&n) => Ok(vec![one(n)]),
        n => Err(Error::UnknownSuite(n.to_string())),
    }
}

/// Coprime pairs `(b, a)` with `1 ≤ a ≤ max_a` and `1 ≤ b ≤ a`.
pub fn coprime_pairs(max_a: i64) -> Vec<(i64, i64)> {
    (1..=max_a)
        .flat_map(|a| (1..=a).filter(move |b| b.gcd(&a) == 1).map(move |b| (b, a)))
        .collect()
}

/// Normalized arms `(a, b)` with `2 ≤ a ≤ max_a`, `0 < b < a`, `gcd = 1`.
pub fn normalized_arms(max_a: i64) -> Vec<Arm> {
    (2..=max_a)
        .flat_map(|a| (1..a).filter(move |b| b.gcd(&a) == 1).map(move |b| Arm { a, b }))
        .collect()
}

/// All normalized Seifert data with at most `max_n` arms drawn from `arms` as a multiset
/// (arm order does not affect any invariant), and Euler number in `bs`.
pub fn seifert_corpus(arms: &[Arm], max_n: usize, bs: impl IntoIterator<Item = i64> + Clone) -> Vec<SeifertData> {
    let mut tuples: Vec<Vec<usize>> = vec![vec![]];
    let mut frontier = tuples.clone();
    for _ in 0..max_n {
        let mut next = Vec::new();
        for t in &frontier {
            let start = t.last().copied().unwrap_or(0);
            for i in start..arms.len() {
                let mut u = t.clone();
                u.push(i);
                next.push(u);
            }
        }
        tuples.extend(next.iter().cloned());
        frontier = next;
    }
    let mut out = Vec::new();
    for t in &tuples {
        for b in bs.clone() {
            out.push(SeifertData { b, arms: t.iter().map(|&i| arms[i]).collect() });
        }
    }
    out
}

fn arith_suite(bound: i64) -> SuiteReport {
    let cases = coprime_pairs(bound);
    run_cases("arith", bound, &cases, |&(b, a)| {
        let mut t = Tally::default();
        let label = |what: &str, extra: String| format!("{what} fails at b={b}, a={a}{extra}");
        let s = dedekind_sum(b, a).unwrap();
        let z = dedekind_sum_numeric(b, a).unwrap();
        t.close((z.re - to_f64(&s)).abs().max(z.im.abs()), 1e-9, || label("dedekind oracle", String::new()));
        let recip = dedekind_sum(a, b).unwrap();
        let rhs = rat(-1, 4) + (rat(a, b) + rat(b, a) + rat(1, a * b)) / int(12);
        t.check(&s + recip == rhs, || label("reciprocity", String::new()));
        let binv = mod_inverse(b, a).unwrap();
        let half = rat(1, 2);
        for n in 0..a {
            let lam = lambda_sum(b, a, n).unwrap();
            let w = lambda_sum_numeric(b, a, n).unwrap();
            t.close((w.re - to_f64(&lam)).abs().max(w.im.abs()), 1e-9, || label("lambda oracle", format!(", n={n}")));
            let x = rat(n, a);
            let rel = -dedekind_rademacher(b, a, &x, &int(0)).unwrap() + rat(a - 1, 4 * a)
                - frac(&x) / int(2)
                - sawtooth(&rat(binv * n, a)) / int(2);
            t.check(lam == rel, || label("lambda/Rademacher relation", format!(", n={n}")));
            let xs = (int(n) + rat(b, 2)) / int(a);
            let hs = dedekind_rademacher(b, a, &xs, &half).unwrap()
                + sawtooth(&((int(binv * n) + &half) / int(a))) / int(2);
            t.check(hs == -lam.clone(), || label("half-shift lemma", format!(", gamma={n}")));
            t.check(
                dedekind_rademacher(-b, a, &xs, &half).unwrap() == -dedekind_rademacher(b, a, &xs, &half).unwrap(),
                || label("oddness in b", format!(", x={xs}")),
            );
            t.check(lambda_sum(b, a, -1 - b - n).unwrap() == lam, || label("lambda conjugation", format!(", gamma={n}")));
            for y in [int(0), half.clone()] {
                let base = dedekind_rademacher(b, a, &x, &y).unwrap();
                for m in -3..=3i64 {
                    if m == 0 {
                        continue;
                    }
                    let shifted = dedekind_rademacher(b - m * a, a, &(&x + int(m) * &y), &y).unwrap();
                    t.check(shifted == base, || label("Rademacher shift", format!(", x={x}, y={y}, m={m}")));
                }
            }
        }
        t
    })
}

fn lens_suite(bound: i64) -> SuiteReport {
    let cases = coprime_pairs(bound);
    run_cases("lens", bound, &cases, |&(b, a)| {
        let mut t = Tally::default();
        let mut total = Rational::zero();
        for u in 0..a {
            let d = lens_delta_raw(a, b, u).unwrap();
            total += &d;
            let conj = lens_delta_raw(a, b, (-1 - b - u).rem_euclid(a)).unwrap();
            t.check(d == conj, || format!("conjugation symmetry fails at L({a},{b}), u={u}"));
            if b == 1 {
                t.check(d == lens_delta_closed_b1(a, u), || format!("closed form fails at L({a},1), u={u}"));
                let mirror = lens_delta_raw(a, 1, (a - 2 - u).rem_euclid(a)).unwrap();
                t.check(d == mirror, || format!("u -> a-2-u symmetry fails at L({a},1), u={u}"));
            }
        }
        if a == 2 {
            t.check(total.is_zero(), || "L(2,1) values do not sum to zero".into());
        }
        t
    })
}

fn invariants_corpus(bound: i64) -> Vec<SeifertData> {
    seifert_corpus(&normalized_arms(bound), 2, -2..=2)
}

fn invariants_suite(bound: i64) -> SuiteReport {
    let cases = invariants_corpus(bound);
    let policies: [&dyn SignPolicy; 2] = [&Unresolved, &PlusFirst];
    run_cases("invariants", bound, &cases, |s| {
        let mut t = Tally::default();
        let count = enumerate_spinc(s).count() as u64;
        t.check(h1_order(s) == (4 * s.order_product()).into() && count == 4 * s.order_product(), || {
            format!("spin^c count mismatch on {s}")
        });
        let trivial = enumerate_spinc(s).filter(|x| holonomy(x) == HolonomyClass::Trivial).count() as u64;
        t.check(2 * trivial == count, || format!("holonomy classes unbalanced on {s}"));
        let geo = eta_sig(s).scale(&rat(1, 8)) + transgression(s);
        let ded: Rational = s.arms.iter().map(|arm| dedekind_sum(arm.b, arm.a).unwrap()).sum();
        t.check(geo.is_constant() && geo.c0 == degree_l(s) / int(24) + ded / int(2), || {
            format!("geometric cancellation fails on {s}: {geo}")
        });
        for x in enumerate_spinc(s) {
            t.check(eta_f0(&x, s).unwrap() == eta_f0_raw(&x, s).unwrap(), || format!("raw eta_f differs on {s}, {x}"));
            for p in policies {
                t.check(delta_via_n(&x, s, p).unwrap() == delta(&x, s, p).unwrap(), || {
                    format!("delta_via_n differs on {s}, {x}, policy {}", p.name())
                });
            }
            if x.m == -1 && x.tau == Tau::Plus {
                let d = delta(&x, s, &Unresolved).unwrap();
                let swapped = enumerate_spinc(s)
                    .find(|y| y.m == -1 && y.cls.gammas() == x.cls.deltas())
                    .expect("every residue tuple is enumerated");
                t.check(delta(&swapped, s, &Unresolved).unwrap() == d, || format!("gamma/delta swap changes delta on {s}, {x}"));
            }
        }
        for cls in trivial_holonomy_classes(s) {
            let (lo, hi) = delta_pair(&cls, s).unwrap();
            let x = enumerate_spinc(s).find(|y| y.m == 0 && y.cls == cls).unwrap();
            let plus = delta(&x, s, &PlusFirst).unwrap().exact().cloned().unwrap();
            let minus = delta(&x.with_tau(Tau::Minus), s, &PlusFirst).unwrap().exact().cloned().unwrap();
            t.check(&hi - &lo == rat(1, 2) && (&plus - &minus).abs() == rat(1, 2), || {
                format!("tau pair does not differ by 1/2 on {s}, {cls}")
            });
            t.check(plus + minus == lo + hi, || format!("tau pair mean is wrong on {s}, {cls}"));
        }
        let mut reversed = s.clone();
        reversed.arms.reverse();
        let m = delta_multiset(s);
        t.check(m == delta_multiset(&reversed), || format!("multiset depends on arm order for {s}"));
        t.check(m.values().sum::<usize>() as u64 == count, || format!("multiset size wrong for {s}"));
        if s.arms.is_empty() && s.b != 0 {
            t.check(rp2_circle_bundle_deltas(s.b).unwrap() == m, || format!("circle bundle values wrong for {s}"));
        }
        t
    })
}

fn prism_suite(bound: i64) -> SuiteReport {
    let mut cases: Vec<(i64, i64)> = Vec::new();
    for m in 1..=bound {
        for r in 1..=bound {
            if m.gcd(&r) == 1 {
                cases.push((m, r));
            }
        }
    }
    let roots: Vec<(i64, i64)> = (1..=6 * bound).flat_map(|p| (0..p).map(move |q| (p, q))).collect();
    let mut rep = run_cases("prism", bound, &cases, |&(m, r)| {
        let mut t = Tally::default();
        let p = MetacyclicParams::new(m, r).unwrap();
        for c in p.characters() {
            let a = metacyclic_eta_dir(&p, &c);
            let b = metacyclic_eta_dir(&p, &c.partner(m));
            match (a, b) {
                (Ok(a), Ok(b)) => {
                    let want = -2.0 * to_f64(&eta_diff_closed(m, &c));
                    t.close((a - b - want).abs(), 1e-8, || {
                        format!("eta difference at m={m}, r={r}, nu={}, u={}: got {}, want {want}", c.nu, c.u, a - b)
                    });
                }
                _ => t.check(false, || format!("non-real group sum at m={m}, r={r}, {c:?}")),
            }
        }
        t
    });
    let roots_rep = run_cases("prism", bound, &roots, |&(p, q)| {
        let mut t = Tally::default();
        t.check(rootsum_identity_check(p, q), || format!("root-of-unity identity fails at p={p}, q={q}"));
        t
    });
    rep.passed += roots_rep.passed;
    rep.failed += roots_rep.failed;
    rep.counterexample = rep.counterexample.or(roots_rep.counterexample);
    rep
}

/// Special-form data `S(B; (a_1, a_1 − 1), …)` with `a_i ≤ max_a`, `n ≤ max_n`, `|B| ≤ max_b`.
pub fn special_corpus(max_a: i64, max_n: usize, max_b: i64) -> Vec<SeifertData> {
    let arms: Vec<Arm> = (2..=max_a).map(|a| Arm { a, b: a - 1 }).collect();
    seifert_corpus(&arms, max_n, -max_b..=max_b)
}

fn plumbing_suite(bound: i64) -> SuiteReport {
    let arms = normalized_arms(bound);
    let mut rep = run_cases("plumbing", bound, &arms, |arm| {
        let mut t = Tally::default();
        let chain = neg_cont_frac(arm.a, arm.b).unwrap();
        t.check(eval_neg_cont_frac(&chain) == rat(arm.a, arm.b), || format!("continued fraction of {}/{}", arm.a, arm.b));
        t.check(chain.iter().all(|&d| d >= 2), || format!("weights below 2 for {}/{}", arm.a, arm.b));
        let lat = PlumbingGraph { central_weight: 0, arms: vec![arm_chain(arm.a, arm.b).unwrap()] }.to_lattice();
        let idx: Vec<usize> = (1..lat.dim()).collect();
        t.check(is_negative_definite(&lat.sub_block(&idx)), || format!("arm chain of ({},{}) not negative definite", arm.a, arm.b));
        t
    });
    let sigma_cases = seifert_corpus(&arms, 4, -4..=4);
    let sig = run_cases("plumbing", bound, &sigma_cases, |s| {
        let mut t = Tally::default();
        t.check(sigma_relation_check(s), || format!("signature relation fails on {s}"));
        t
    });
    let special = special_corpus(bound, 3, 4);
    let fro = run_cases("plumbing", bound, &special, |s| {
        let mut t = Tally::default();
        for cls in trivial_holonomy_classes(s) {
            t.check(froyshov_equality_check(s, &cls).unwrap(), || format!("Froyshov equality fails on {s}, {cls}"));
        }
        t
    });
    for r in [sig, fro] {
        rep.passed += r.passed;
        rep.failed += r.failed;
        rep.counterexample = rep.counterexample.or(r.counterexample);
    }
    rep
}

/// Counts of how many times each value occurs, as `(value, multiplicity)` in increasing order.
pub fn multiset_entries(m: &BTreeMap<Rational, usize>) -> Vec<(Rational, usize)> {
    m.iter().map(|(k, v)| (k.clone(), *v)).collect()
}
