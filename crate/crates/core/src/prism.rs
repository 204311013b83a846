//! Metacyclic group sums for prism manifolds `S³/G` and circle bundles over ℝP².

use std::collections::BTreeMap;
use std::f64::consts::PI;

use num_complex::Complex64;
use num_integer::Integer;

use crate::arith::{frac, int, rat, Rational};
use crate::error::{Error, Result};
use crate::invariants::{delta_multiset, Sign, SignPolicy, SignedHalf};
use crate::seifert::{LineBundleClass, SeifertData};

/// The group generated by `v = [[0, z], [1, 0]]` and `h = diag(w, w⁻¹)`,
/// `z = e^{πi/m}`, `w = e^{πi/r}`, of order `4mr`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct MetacyclicParams {
    m: i64,
    r: i64,
}

impl MetacyclicParams {
    pub fn new(m: i64, r: i64) -> Result<Self> {
        if m < 1 || r < 1 || m.gcd(&r) != 1 {
            return Err(Error::InvalidPrism { m, r });
        }
        Ok(MetacyclicParams { m, r })
    }

    pub fn m(&self) -> i64 {
        self.m
    }

    pub fn r(&self) -> i64 {
        self.r
    }

    pub fn order(&self) -> i64 {
        4 * self.m * self.r
    }

    /// All `4m` characters: `ν ∈ {0, 1}`, `u ∈ [0, 2m)`.
    pub fn characters(&self) -> Vec<Character> {
        (0..2)
            .flat_map(|nu| (0..2 * self.m).map(move |u| Character { nu, u }))
            .collect()
    }
}

/// One-dimensional character with `φ(h) = (−1)^ν`, `φ(v) = e^{πirν/2m} e^{πiu/m}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Character {
    pub nu: i64,
    pub u: i64,
}

impl Character {
    pub fn new(nu: i64, u: i64, p: &MetacyclicParams) -> Result<Self> {
        if !(nu == 0 || nu == 1) || !(0..2 * p.m).contains(&u) {
            return Err(Error::InvalidCharacter(format!("nu={nu}, u={u}, m={}", p.m)));
        }
        Ok(Character { nu, u })
    }

    /// The character agreeing on `h` and differing by `−1` on `v`.
    pub fn partner(&self, m: i64) -> Character {
        Character { nu: self.nu, u: (self.u + m).rem_euclid(2 * m) }
    }
}

fn cis(theta: f64) -> Complex64 {
    Complex64::new(theta.cos(), theta.sin())
}

/// `η_dir = −(2/|G|) Σ_{g ≠ 1} φ(g) / det(1 − g⁻¹)`, summed over `g = v^i h^j`.
pub fn metacyclic_eta_dir(p: &MetacyclicParams, c: &Character) -> Result<f64> {
    let (m, r) = (p.m as f64, p.r as f64);
    let one = Complex64::new(1.0, 0.0);
    let z = |k: i64| cis(PI * (k.rem_euclid(2 * p.m)) as f64 / m);
    let w = |k: i64| cis(PI * (k.rem_euclid(2 * p.r)) as f64 / r);
    let phi_v = cis(PI * r * c.nu as f64 / (2.0 * m)) * cis(PI * c.u as f64 / m);
    let mut acc = Complex64::new(0.0, 0.0);
    for i in 0..2 * p.m {
        let k = i / 2;
        for j in 0..2 * p.r {
            if i == 0 && j == 0 {
                continue;
            }
            let h_sign = if c.nu * j % 2 == 0 { 1.0 } else { -1.0 };
            let phi = phi_v.powi(i as i32) * h_sign;
            let det = if i % 2 == 0 {
                let lam = z(k) * w(j);
                let mu = z(k) * w(-j);
                (one - lam.inv()) * (one - mu.inv())
            } else {
                one - z(-(2 * k + 1))
            };
            acc += phi / det;
        }
    }
    let eta = acc * (-2.0 / p.order() as f64);
    if eta.im.abs() > 1e-9 {
        return Err(Error::NonRealResult(eta.im));
    }
    Ok(eta.re)
}

/// `δ(φ) − δ(φ′)`: zero for `ν = 1`, `1/2` for `ν = 0, u < m`, `−1/2` for `ν = 0, u ≥ m`.
pub fn eta_diff_closed(m: i64, c: &Character) -> Rational {
    if c.nu == 1 {
        int(0)
    } else if c.u < m {
        rat(1, 2)
    } else {
        rat(-1, 2)
    }
}

/// Pin^c η sign on ℝP²(m) indexed by the `ν = 0` character label `u`.
pub fn pinc_sign_rp2a(m: i64, u: i64) -> SignedHalf {
    let sign = if u.rem_euclid(2 * m) < m { Sign::Minus } else { Sign::Plus };
    SignedHalf { sign }
}

/// Checks `(1/p) Σ_{k=1}^{p−1} e^{2πikq/p} / (1 − e^{−2πik/p}) = (p−1)/(2p) − {q/p}` numerically.
pub fn rootsum_identity_check(p: i64, q: i64) -> bool {
    if p < 1 {
        return false;
    }
    let mut acc = Complex64::new(0.0, 0.0);
    for k in 1..p {
        let num = cis(2.0 * PI * ((k * q).rem_euclid(p)) as f64 / p as f64);
        let den = Complex64::new(1.0, 0.0) - cis(-2.0 * PI * k as f64 / p as f64);
        acc += num / den;
    }
    acc /= p as f64;
    let exact = rat(p - 1, 2 * p) - frac(&rat(q, p));
    let exact = crate::arith::to_f64(&exact);
    (acc.re - exact).abs() < 1e-9 && acc.im.abs() < 1e-9
}

/// `{0, 0, (b+2)/8, (b−2)/8}` for the circle bundle `S(b)`.
///
/// # Panics
/// If the value disagrees with the general enumeration of `delta_multiset`.
pub fn rp2_circle_bundle_deltas(b: i64) -> Result<BTreeMap<Rational, usize>> {
    if b == 0 {
        return Err(Error::ZeroEuler);
    }
    let mut out = BTreeMap::new();
    for v in [int(0), int(0), rat(b + 2, 8), rat(b - 2, 8)] {
        *out.entry(v).or_insert(0) += 1;
    }
    assert_eq!(out, delta_multiset(&SeifertData::circle_bundle(b)));
    Ok(out)
}

/// Resolves pin^c signs on one-arm data `S(b; (a, b₁))` through the ℝP²(a) table.
///
/// The dictionary between characters and `(class, τ)` is a convention: the class
/// with first residue `γ` and `τ = +` is matched with the character `u = γ`, and its
/// `τ = −` partner with `u = γ + a`. On any other data the sign stays unresolved.
#[derive(Debug, Clone, Copy, Default)]
pub struct Rp2aPolicy;

impl SignPolicy for Rp2aPolicy {
    fn base_sign(&self, cls: &LineBundleClass, s: &SeifertData) -> Sign {
        match (s.arms.as_slice(), cls.pairs()) {
            ([arm], [pair]) if pair.a == arm.a => pinc_sign_rp2a(arm.a, pair.gamma).sign,
            _ => Sign::Unresolved,
        }
    }
    fn name(&self) -> &'static str {
        "rp2a-table"
    }
}
