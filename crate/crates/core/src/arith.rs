//! Exact rational kernel: sawtooth, Dedekind, Dedekind–Rademacher and λ sums,
//! together with floating root-of-unity oracles used only for cross-checking.

use num_bigint::BigInt;
use num_complex::Complex64;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use std::f64::consts::PI;

use crate::error::{Error, Result};

/// Arbitrary precision fraction, always kept in lowest terms with a positive denominator.
pub type Rational = BigRational;

/// Floating complex value, used only by the `*_numeric` oracles.
pub type ComplexF = Complex64;

/// Builds `n/d` from machine integers. Panics if `d == 0`.
pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// The integer `n` as a rational.
pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Renders `p/q`, dropping the denominator when it is 1.
pub fn fmt_rational(x: &Rational) -> String {
    x.to_string()
}

/// Parses `p/q` or `p`.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let s = s.trim();
    let bad = || Error::Parse(format!("not a rational: '{s}'"));
    match s.split_once('/') {
        None => s.parse::<BigInt>().map(Rational::from_integer).map_err(|_| bad()),
        Some((p, q)) => {
            let p: BigInt = p.trim().parse().map_err(|_| bad())?;
            let q: BigInt = q.trim().parse().map_err(|_| bad())?;
            if q.is_zero() {
                return Err(bad());
            }
            Ok(Rational::new(p, q))
        }
    }
}

/// Fractional part in `[0, 1)`.
pub fn frac(x: &Rational) -> Rational {
    x - x.floor()
}

/// `((x))`: zero at integers, `frac(x) - 1/2` elsewhere.
pub fn sawtooth(x: &Rational) -> Rational {
    if x.is_integer() {
        Rational::zero()
    } else {
        frac(x) - rat(1, 2)
    }
}

fn check_pair(b: i64, a: i64) -> Result<()> {
    if a < 1 {
        return Err(Error::NonPositiveModulus(a));
    }
    if b.gcd(&a) != 1 {
        return Err(Error::NotCoprime { b, a });
    }
    Ok(())
}

/// `b'` in `[0, a)` with `b b' = 1 (mod a)`; zero when `a = 1`.
pub fn mod_inverse(b: i64, a: i64) -> Result<i64> {
    check_pair(b, a)?;
    if a == 1 {
        return Ok(0);
    }
    let ext = i128::from(b.rem_euclid(a)).extended_gcd(&i128::from(a));
    Ok(ext.x.rem_euclid(i128::from(a)) as i64)
}

/// Twice the sawtooth of `k/a` times `a`, i.e. `2a((k/a))` as an integer.
fn saw2(k: i128, a: i128) -> i128 {
    let r = k.rem_euclid(a);
    if r == 0 {
        0
    } else {
        2 * r - a
    }
}

/// Dedekind sum `s(b, a) = sum_{j=1}^{a-1} ((bj/a))((j/a))`.
pub fn dedekind_sum(b: i64, a: i64) -> Result<Rational> {
    check_pair(b, a)?;
    let (bb, aa) = (i128::from(b), i128::from(a));
    let total: i128 = (1..aa).map(|j| saw2(bb * j, aa) * saw2(j, aa)).sum();
    Ok(Rational::new(BigInt::from(total), BigInt::from(4 * aa * aa)))
}

/// Dedekind–Rademacher sum `s(b, a; x, y) = sum_{j=0}^{a-1} ((x + b(j+y)/a)) (((j+y)/a))`.
///
/// Unlike the plain Dedekind sum this depends on `b` as an integer, not only on its residue.
pub fn dedekind_rademacher(b: i64, a: i64, x: &Rational, y: &Rational) -> Result<Rational> {
    check_pair(b, a)?;
    Ok(dedekind_rademacher_small(b, a, x, y).unwrap_or_else(|| dedekind_rademacher_generic(b, a, x, y)))
}

fn dedekind_rademacher_generic(b: i64, a: i64, x: &Rational, y: &Rational) -> Rational {
    let ar = int(a);
    let br = int(b);
    let mut acc = Rational::zero();
    for j in 0..a {
        let jy = int(j) + y;
        let inner = x + &br * &jy / &ar;
        acc += sawtooth(&inner) * sawtooth(&(jy / &ar));
    }
    acc
}

/// Same sum over the common denominator `D = lcm(den x, a · den y)` in machine
/// integers; `None` when the numbers are too large for that to be safe.
fn dedekind_rademacher_small(b: i64, a: i64, x: &Rational, y: &Rational) -> Option<Rational> {
    use num_traits::ToPrimitive;
    const LIMIT: i128 = 1 << 31;
    let (p, q) = (x.numer().to_i128()?, x.denom().to_i128()?);
    let (r, t) = (y.numer().to_i128()?, y.denom().to_i128()?);
    let (bb, aa) = (i128::from(b), i128::from(a));
    if p.abs() > LIMIT || r.abs() > LIMIT || bb.abs() > LIMIT || t * aa > LIMIT {
        return None;
    }
    let d = q.lcm(&(t * aa));
    if d > LIMIT {
        return None;
    }
    let (fx, fy) = (d / q, d / (t * aa));
    let total: i128 = (0..aa)
        .map(|j| {
            let jy = j * t + r;
            saw2(p * fx + bb * jy * fy, d) * saw2(jy * fy, d)
        })
        .sum();
    Some(Rational::new(BigInt::from(total), BigInt::from(4 * d * d)))
}

/// λ(b, a; n) = (1/a) Σ_{j=1}^{a-1} ω^{nj} / ((1 - ω^{-j})(1 - ω^{-bj})), ω = exp(2πi/a).
///
/// Evaluated exactly by expanding each factor as `1/(1-x) = -(1/a) Σ_k k x^k` and
/// collapsing the character sum, which leaves
/// `(1/a²) Σ_{l=0}^{a-1} l · ((n - b l) mod a) - (a-1)²/(4a)`.
pub fn lambda_sum(b: i64, a: i64, n: i64) -> Result<Rational> {
    check_pair(b, a)?;
    let (bb, aa, nn) = (i128::from(b), i128::from(a), i128::from(n));
    let conv: i128 = (0..aa).map(|l| l * (nn - bb * l).rem_euclid(aa)).sum();
    let main = Rational::new(BigInt::from(conv), BigInt::from(aa * aa));
    let corr = Rational::new(BigInt::from((aa - 1) * (aa - 1)), BigInt::from(4 * aa));
    Ok(main - corr)
}

fn root(k: i64, a: i64) -> Complex64 {
    let t = 2.0 * PI * (k.rem_euclid(a) as f64) / (a as f64);
    Complex64::new(t.cos(), t.sin())
}

/// Root-of-unity evaluation of the Dedekind sum.
pub fn dedekind_sum_numeric(b: i64, a: i64) -> Result<ComplexF> {
    check_pair(b, a)?;
    let one = Complex64::new(1.0, 0.0);
    let mut acc = Complex64::new(0.0, 0.0);
    for j in 1..a {
        let x = root(-j, a);
        let y = root(-(b.rem_euclid(a) * j), a);
        acc += (one + x) * (one + y) / ((one - x) * (one - y));
    }
    Ok(acc * (-1.0 / (4.0 * a as f64)))
}

/// Root-of-unity evaluation of λ(b, a; n) straight from its defining sum.
pub fn lambda_sum_numeric(b: i64, a: i64, n: i64) -> Result<ComplexF> {
    check_pair(b, a)?;
    let one = Complex64::new(1.0, 0.0);
    let mut acc = Complex64::new(0.0, 0.0);
    for j in 1..a {
        let num = root(n.rem_euclid(a) * j, a);
        let den = (one - root(-j, a)) * (one - root(-(b.rem_euclid(a) * j), a));
        acc += num / den;
    }
    Ok(acc / a as f64)
}

/// Sign of a rational as -1, 0 or 1.
pub fn signum(x: &Rational) -> i64 {
    if x.is_positive() {
        1
    } else if x.is_negative() {
        -1
    } else {
        0
    }
}

/// Converts a rational to the nearest `f64` (diagnostics only).
pub fn to_f64(x: &Rational) -> f64 {
    use num_traits::ToPrimitive;
    x.to_f64().unwrap_or(f64::NAN)
}
