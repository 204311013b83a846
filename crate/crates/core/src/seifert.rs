//! Seifert data `S(b; (a_1,b_1), …, (a_n,b_n))` over ℝP², the double cover over S²,
//! and orbifold line bundle classes on the doubled orbifold.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde_json::Value;

use crate::arith::{frac, int, rat, Rational};
use crate::error::{Error, Result};

/// One exceptional fibre of multiplicity `a` with Seifert invariant `b`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Arm {
    pub a: i64,
    pub b: i64,
}

impl Arm {
    pub fn new(a: i64, b: i64) -> Result<Self> {
        if a < 1 {
            return Err(Error::NonPositiveModulus(a));
        }
        if b.gcd(&a) != 1 {
            return Err(Error::NotCoprime { b, a });
        }
        Ok(Arm { a, b })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SeifertData {
    pub b: i64,
    pub arms: Vec<Arm>,
}

impl SeifertData {
    /// Validates every arm; the result need not be normalized.
    pub fn new(b: i64, arms: &[(i64, i64)]) -> Result<Self> {
        let arms = arms
            .iter()
            .map(|&(a, bi)| Arm::new(a, bi))
            .collect::<Result<Vec<_>>>()?;
        Ok(SeifertData { b, arms })
    }

    /// The circle bundle `S(b)` with no exceptional fibres.
    pub fn circle_bundle(b: i64) -> Self {
        SeifertData { b, arms: Vec::new() }
    }

    pub fn n(&self) -> usize {
        self.arms.len()
    }

    /// Moves every `b_i` into `(0, a_i)`, compensating in `b`, and drops arms with `a_i = 1`.
    pub fn normalize(&self) -> SeifertData {
        let mut b = self.b;
        let mut arms = Vec::with_capacity(self.arms.len());
        for arm in &self.arms {
            let (k, r) = arm.b.div_mod_floor(&arm.a);
            b -= k;
            if arm.a > 1 {
                arms.push(Arm { a: arm.a, b: r });
            }
        }
        SeifertData { b, arms }
    }

    pub fn is_normalized(&self) -> bool {
        self.arms.iter().all(|arm| arm.a > 1 && 0 < arm.b && arm.b < arm.a)
    }

    /// `∏ a_i` as a machine integer.
    pub fn order_product(&self) -> u64 {
        self.arms.iter().map(|arm| arm.a as u64).product()
    }

    /// Parses JSON of the shape `[b, [a1, b1], [a2, b2], …]`.
    pub fn from_json(v: &Value) -> Result<Self> {
        let bad = || Error::Parse(format!("expected [b, [a1, b1], ...], got {v}"));
        let items = v.as_array().ok_or_else(bad)?;
        let (first, rest) = items.split_first().ok_or_else(bad)?;
        let b = first.as_i64().ok_or_else(bad)?;
        let mut arms = Vec::with_capacity(rest.len());
        for item in rest {
            let pair = item.as_array().filter(|p| p.len() == 2).ok_or_else(bad)?;
            let a = pair[0].as_i64().ok_or_else(bad)?;
            let bi = pair[1].as_i64().ok_or_else(bad)?;
            arms.push((a, bi));
        }
        SeifertData::new(b, &arms)
    }

    pub fn to_json(&self) -> Value {
        let mut items = vec![Value::from(self.b)];
        items.extend(self.arms.iter().map(|arm| Value::from(vec![arm.a, arm.b])));
        Value::Array(items)
    }
}

fn parse_int(s: &str, what: &str) -> Result<i64> {
    s.parse::<i64>()
        .map_err(|_| Error::Parse(format!("invalid {what} '{s}'")))
}

impl FromStr for SeifertData {
    type Err = Error;

    /// Accepts `b;(a1,b1),(a2,b2),…`, `b;` and `b`, with arbitrary whitespace,
    /// or the JSON array form.
    fn from_str(s: &str) -> Result<Self> {
        let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if compact.starts_with('[') {
            let v: Value = serde_json::from_str(&compact).map_err(|e| Error::Parse(e.to_string()))?;
            return SeifertData::from_json(&v);
        }
        let (head, tail) = compact.split_once(';').unwrap_or((compact.as_str(), ""));
        let b = parse_int(head, "Euler number")?;
        let mut arms = Vec::new();
        let mut rest = tail;
        while !rest.is_empty() {
            let body = rest
                .strip_prefix('(')
                .ok_or_else(|| Error::Parse(format!("expected '(' at '{rest}'")))?;
            let close = body
                .find(')')
                .ok_or_else(|| Error::Parse("unclosed '('".to_string()))?;
            let (a, bi) = body[..close]
                .split_once(',')
                .ok_or_else(|| Error::Parse(format!("expected a pair in '({})'", &body[..close])))?;
            arms.push((parse_int(a, "multiplicity")?, parse_int(bi, "Seifert invariant")?));
            rest = &body[close + 1..];
            if let Some(r) = rest.strip_prefix(',') {
                if r.is_empty() {
                    return Err(Error::Parse("trailing ','".to_string()));
                }
                rest = r;
            } else if !rest.is_empty() {
                return Err(Error::Parse(format!("unexpected '{rest}'")));
            }
        }
        SeifertData::new(b, &arms)
    }
}

impl fmt::Display for SeifertData {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{};", self.b)?;
        for (i, arm) in self.arms.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "({},{})", arm.a, arm.b)?;
        }
        Ok(())
    }
}

/// `l = b − Σ b_i/a_i`, the rational degree of the bundle.
pub fn degree_l(s: &SeifertData) -> Rational {
    s.arms
        .iter()
        .fold(int(s.b), |acc, arm| acc - rat(arm.b, arm.a))
}

/// Orbifold Euler characteristic `χ = 1 − Σ (a_i − 1)/a_i` of the base.
pub fn euler_char(s: &SeifertData) -> Rational {
    s.arms
        .iter()
        .fold(int(1), |acc, arm| acc - rat(arm.a - 1, arm.a))
}

/// The `(n+2)×(n+2)` relation matrix of `H_1(Y)` in the generators
/// `q_1, …, q_n, h, x`.
pub fn presentation_matrix(s: &SeifertData) -> Vec<Vec<i64>> {
    let n = s.n();
    let mut m = vec![vec![0i64; n + 2]; n + 2];
    for (i, arm) in s.arms.iter().enumerate() {
        m[i][i] = arm.a;
        m[i][n] = arm.b;
    }
    for v in m[n].iter_mut().take(n) {
        *v = 1;
    }
    m[n][n] = s.b;
    m[n][n + 1] = 2;
    m[n + 1][n] = 2;
    m
}

/// Exact integer determinant by fraction-free (Bareiss) elimination.
pub fn bareiss_det(m: &[Vec<i64>]) -> BigInt {
    let n = m.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut a: Vec<Vec<BigInt>> = m
        .iter()
        .map(|row| row.iter().map(|&x| BigInt::from(x)).collect())
        .collect();
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            match (k + 1..n).find(|&r| !a[r][k].is_zero()) {
                Some(r) => {
                    a.swap(k, r);
                    sign = -sign;
                }
                None => return BigInt::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = (&a[i][j] * &a[k][k] - &a[i][k] * &a[k][j]) / &prev;
                a[i][j] = v;
            }
        }
        prev = a[k][k].clone();
    }
    sign * &a[n - 1][n - 1]
}

/// Order of `H_1(Y; Z)`, computed as `|det|` of the presentation matrix.
///
/// # Panics
/// If the determinant disagrees with `4 ∏ a_i`; that would indicate a bug.
pub fn h1_order(s: &SeifertData) -> BigInt {
    let det = bareiss_det(&presentation_matrix(s)).abs();
    let expected = s
        .arms
        .iter()
        .fold(BigInt::from(4), |acc, arm| acc * BigInt::from(arm.a));
    assert_eq!(det, expected, "H_1 order mismatch for {s}");
    det
}

/// Seifert data of the orientable double cover over S².
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct DoubleCoverData {
    pub b: i64,
    pub arms: Vec<Arm>,
}

pub fn double_cover(s: &SeifertData) -> DoubleCoverData {
    let arms = s.arms.iter().flat_map(|&arm| [arm, arm]).collect();
    DoubleCoverData { b: 2 * s.b, arms }
}

/// Local data `(γ, δ)` at one pair of cone points of order `a` on the doubled orbifold.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ResiduePair {
    pub a: i64,
    pub gamma: i64,
    pub delta: i64,
}

/// Isomorphism class `(e; γ_1, δ_1, …, γ_n, δ_n)` of an orbifold line bundle on the double cover.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct LineBundleClass {
    e: Rational,
    pairs: Vec<ResiduePair>,
}

impl LineBundleClass {
    /// Reduces every residue into `[0, a)` and checks `e ≡ Σ (γ_i + δ_i)/a_i (mod 1)`.
    pub fn new(e: Rational, pairs: &[(i64, i64, i64)]) -> Result<Self> {
        let mut reduced = Vec::with_capacity(pairs.len());
        for &(a, gamma, delta) in pairs {
            if a < 1 {
                return Err(Error::NonPositiveModulus(a));
            }
            reduced.push(ResiduePair {
                a,
                gamma: gamma.rem_euclid(a),
                delta: delta.rem_euclid(a),
            });
        }
        let cls = LineBundleClass { e, pairs: reduced };
        if !frac(&cls.fractional_sum()).eq(&frac(&cls.e)) {
            return Err(Error::InconsistentClass(cls.to_string()));
        }
        Ok(cls)
    }

    /// Builds a class whose invariant is already known to hold.
    pub(crate) fn from_parts(e: Rational, pairs: Vec<ResiduePair>) -> Self {
        LineBundleClass { e, pairs }
    }

    pub fn e(&self) -> &Rational {
        &self.e
    }

    pub fn pairs(&self) -> &[ResiduePair] {
        &self.pairs
    }

    pub fn gammas(&self) -> Vec<i64> {
        self.pairs.iter().map(|p| p.gamma).collect()
    }

    pub fn deltas(&self) -> Vec<i64> {
        self.pairs.iter().map(|p| p.delta).collect()
    }

    fn fractional_sum(&self) -> Rational {
        self.pairs.iter().fold(Rational::zero(), |acc, p| {
            acc + rat(p.gamma, p.a) + rat(p.delta, p.a)
        })
    }
}

impl fmt::Display for LineBundleClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}", self.e)?;
        for p in &self.pairs {
            write!(f, "; {},{} mod {}", p.gamma, p.delta, p.a)?;
        }
        write!(f, ")")
    }
}

/// Integer degree `u − Σ({γ_i/a_i} + {δ_i/a_i})` of the desingularized bundle.
pub fn desing_degree(c: &LineBundleClass) -> Result<BigInt> {
    let d = &c.e - c.fractional_sum();
    if !d.is_integer() {
        return Err(Error::InconsistentClass(c.to_string()));
    }
    Ok(d.to_integer())
}
