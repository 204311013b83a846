//! Assembly of η-invariants and δ-invariants for every spin^c structure.
//!
//! The geometric pieces (`eta_sig`, `transgression`) depend on the metric scale
//! only through the formal variable `t`; they are carried as [`GeomPoly`] and must
//! cancel in the final δ. The Dirac pieces are closed rational expressions in
//! λ-sums. The sign of the pin^c η-invariant is supplied by a [`SignPolicy`].

use std::collections::BTreeMap;
use std::fmt;
use std::ops::Add;

use num_traits::Zero;

use crate::arith::{dedekind_rademacher, dedekind_sum, int, lambda_sum, mod_inverse, rat, sawtooth, Rational};
use crate::error::{Error, Result};
use crate::lens::{lens_delta, LensSpace, LensSpinC};
use crate::seifert::{degree_l, euler_char, LineBundleClass, SeifertData};
use crate::spinc::{check_conditions, enumerate_spinc, trivial_holonomy_classes, SpinCStructure, Tau};

/// `c0 + c1 t + c2 t²` with exact coefficients.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct GeomPoly {
    pub c0: Rational,
    pub c1: Rational,
    pub c2: Rational,
}

impl GeomPoly {
    pub fn new(c0: Rational, c1: Rational, c2: Rational) -> Self {
        GeomPoly { c0, c1, c2 }
    }

    pub fn constant(c0: Rational) -> Self {
        GeomPoly::new(c0, Rational::zero(), Rational::zero())
    }

    pub fn scale(&self, k: &Rational) -> GeomPoly {
        GeomPoly::new(&self.c0 * k, &self.c1 * k, &self.c2 * k)
    }

    pub fn is_constant(&self) -> bool {
        self.c1.is_zero() && self.c2.is_zero()
    }
}

impl Add for GeomPoly {
    type Output = GeomPoly;
    fn add(self, o: GeomPoly) -> GeomPoly {
        GeomPoly::new(self.c0 + o.c0, self.c1 + o.c1, self.c2 + o.c2)
    }
}

impl fmt::Display for GeomPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} + ({})t + ({})t^2", self.c0, self.c1, self.c2)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Sign {
    Plus,
    Minus,
    Unresolved,
}

impl Sign {
    pub fn times(self, tau: Tau) -> Sign {
        match (self, tau) {
            (Sign::Unresolved, _) => Sign::Unresolved,
            (s, Tau::Plus) => s,
            (Sign::Plus, Tau::Minus) => Sign::Minus,
            (Sign::Minus, Tau::Minus) => Sign::Plus,
        }
    }
}

/// A quantity of magnitude exactly 1/2 whose sign may be unknown.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct SignedHalf {
    pub sign: Sign,
}

impl SignedHalf {
    pub fn magnitude(&self) -> Rational {
        rat(1, 2)
    }

    pub fn value(&self) -> Option<Rational> {
        match self.sign {
            Sign::Plus => Some(rat(1, 2)),
            Sign::Minus => Some(rat(-1, 2)),
            Sign::Unresolved => None,
        }
    }
}

/// Either an exact value, or the unordered pair `{center − offset, center + offset}`
/// when the answer hinges on an unresolved pin^c sign.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum SignedValue {
    Exact(Rational),
    PlusMinus { center: Rational, offset: Rational },
}

impl SignedValue {
    fn from_half(h: SignedHalf) -> SignedValue {
        match h.value() {
            Some(v) => SignedValue::Exact(v),
            None => SignedValue::PlusMinus { center: Rational::zero(), offset: rat(1, 2) },
        }
    }

    pub fn shift(self, x: &Rational) -> SignedValue {
        match self {
            SignedValue::Exact(v) => SignedValue::Exact(v + x),
            SignedValue::PlusMinus { center, offset } => SignedValue::PlusMinus { center: center + x, offset },
        }
    }

    pub fn scale(self, k: &Rational) -> SignedValue {
        match self {
            SignedValue::Exact(v) => SignedValue::Exact(v * k),
            SignedValue::PlusMinus { center, offset } => SignedValue::PlusMinus {
                center: center * k,
                offset: num_traits::Signed::abs(&(offset * k)),
            },
        }
    }

    pub fn exact(&self) -> Option<&Rational> {
        match self {
            SignedValue::Exact(v) => Some(v),
            SignedValue::PlusMinus { .. } => None,
        }
    }

    /// The possible values in increasing order.
    pub fn candidates(&self) -> Vec<Rational> {
        match self {
            SignedValue::Exact(v) => vec![v.clone()],
            SignedValue::PlusMinus { center, offset } => vec![center - offset, center + offset],
        }
    }
}

impl fmt::Display for SignedValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SignedValue::Exact(v) => write!(f, "{v}"),
            SignedValue::PlusMinus { center, offset } => {
                write!(f, "{} | {}", center - offset, center + offset)
            }
        }
    }
}

/// Chooses the pin^c η sign for the `τ = +` member of each `m = 0` class.
/// The `τ = −` member always receives the opposite sign.
pub trait SignPolicy: Send + Sync {
    fn base_sign(&self, cls: &LineBundleClass, s: &SeifertData) -> Sign;
    fn name(&self) -> &'static str;
}

/// Leaves every sign undetermined.
#[derive(Debug, Clone, Copy, Default)]
pub struct Unresolved;

impl SignPolicy for Unresolved {
    fn base_sign(&self, _: &LineBundleClass, _: &SeifertData) -> Sign {
        Sign::Unresolved
    }
    fn name(&self) -> &'static str {
        "unresolved"
    }
}

/// Gives the `τ = +` member the value `+1/2`.
#[derive(Debug, Clone, Copy, Default)]
pub struct PlusFirst;

impl SignPolicy for PlusFirst {
    fn base_sign(&self, _: &LineBundleClass, _: &SeifertData) -> Sign {
        Sign::Plus
    }
    fn name(&self) -> &'static str {
        "plus-first"
    }
}

/// `η_sig = l/3 + 4 Σ s(b_i, a_i) + (2/3) l χ t − (2/3) l³ t²`.
pub fn eta_sig(s: &SeifertData) -> GeomPoly {
    let l = degree_l(s);
    let chi = euler_char(s);
    let ded = sum_dedekind(s);
    GeomPoly::new(
        &l / int(3) + int(4) * ded,
        rat(2, 3) * &l * chi,
        rat(-2, 3) * &l * &l * &l,
    )
}

/// Transgression of the adiabatic connection: `−(1/12)(l χ t − l³ t²)`.
pub fn transgression(s: &SeifertData) -> GeomPoly {
    let l = degree_l(s);
    let chi = euler_char(s);
    GeomPoly::new(Rational::zero(), -(&l * chi) / int(12), &l * &l * &l / int(12))
}

fn sum_dedekind(s: &SeifertData) -> Rational {
    s.arms
        .iter()
        .map(|arm| dedekind_sum(arm.b, arm.a).expect("arms are coprime"))
        .fold(Rational::zero(), |acc, x| acc + x)
}

fn ensure(x: &SpinCStructure, s: &SeifertData) -> Result<()> {
    if (x.m == 0 || x.m == -1) && check_conditions(&x.cls, x.m, s) {
        Ok(())
    } else {
        Err(Error::ConditionViolation(format!("{x} on {s}")))
    }
}

fn lam(b: i64, a: i64, n: i64) -> Rational {
    lambda_sum(b, a, n).expect("arms are coprime")
}

/// Σ_i (λ(b_i, a_i; γ_i) + λ(b_i, a_i; δ_i)).
fn lambda_pairs(x: &SpinCStructure, s: &SeifertData) -> Rational {
    x.cls
        .pairs()
        .iter()
        .zip(&s.arms)
        .fold(Rational::zero(), |acc, (p, arm)| {
            acc + lam(arm.b, arm.a, p.gamma) + lam(arm.b, arm.a, p.delta)
        })
}

fn lambda_gammas(x: &SpinCStructure, s: &SeifertData) -> Rational {
    x.cls
        .pairs()
        .iter()
        .zip(&s.arms)
        .fold(Rational::zero(), |acc, (p, arm)| acc + lam(arm.b, arm.a, p.gamma))
}

/// η of the odd signature-type operator on the fibre at the adiabatic limit, λ form.
pub fn eta_f0(x: &SpinCStructure, s: &SeifertData) -> Result<Rational> {
    ensure(x, s)?;
    let l = degree_l(s);
    Ok(if x.m == 0 {
        -l / int(3) + int(2) * lambda_pairs(x, s)
    } else {
        l / int(6) + int(4) * lambda_gammas(x, s)
    })
}

/// The same quantity written with Dedekind–Rademacher sums before any simplification.
pub fn eta_f0_raw(x: &SpinCStructure, s: &SeifertData) -> Result<Rational> {
    ensure(x, s)?;
    let l = degree_l(s);
    let zero = Rational::zero();
    let half = rat(1, 2);
    let mut acc = Rational::zero();
    for (p, arm) in x.cls.pairs().iter().zip(&s.arms) {
        let (a, b) = (arm.a, arm.b);
        let binv = mod_inverse(b, a)?;
        for n in [p.gamma, p.delta] {
            if x.m == 0 {
                let dr = dedekind_rademacher(b, a, &rat(n, a), &zero)?;
                acc -= int(2) * dr + sawtooth(&rat(binv * n, a));
            } else {
                let shift = (int(n) + rat(b, 2)) / int(a);
                let dr = dedekind_rademacher(-b, a, &shift, &half)?;
                let saw = sawtooth(&((int(binv * n) + &half) / int(a)));
                acc += int(2) * dr - saw;
            }
        }
    }
    Ok(if x.m == 0 { -l / int(3) + acc } else { l / int(6) + acc })
}

/// η of the pin^c Dirac operator on the base, signed by `policy`.
pub fn eta_pinc(x: &SpinCStructure, s: &SeifertData, policy: &dyn SignPolicy) -> Result<SignedHalf> {
    if x.m != 0 {
        return Err(Error::WrongHolonomy);
    }
    Ok(SignedHalf { sign: policy.base_sign(&x.cls, s).times(x.tau) })
}

/// η of the Dirac operator at the reducible, trivial holonomy case depending on pin^c sign.
pub fn eta_dirac_pm(x: &SpinCStructure, s: &SeifertData, policy: &dyn SignPolicy) -> Result<SignedValue> {
    ensure(x, s)?;
    let l = degree_l(s);
    if x.m == 0 {
        let base = -l / int(6) + lambda_pairs(x, s);
        Ok(SignedValue::from_half(eta_pinc(x, s, policy)?).shift(&base))
    } else {
        Ok(SignedValue::Exact(l / int(12) + int(2) * lambda_gammas(x, s)))
    }
}

fn lens_at(a: i64, b: i64, u: i64) -> Rational {
    let lens = LensSpace::new(a, b).expect("arms are coprime");
    lens_delta(&lens, LensSpinC::new(u, &lens))
}

/// Midpoint `l/8 − (1/2) Σ (δ_L(γ_i) + δ_L(δ_i))` of the two δ values of an `m = 0` class.
fn pair_center(cls: &LineBundleClass, s: &SeifertData) -> Rational {
    let sum = cls
        .pairs()
        .iter()
        .zip(&s.arms)
        .fold(Rational::zero(), |acc, (p, arm)| {
            acc + lens_at(arm.a, arm.b, p.gamma) + lens_at(arm.a, arm.b, p.delta)
        });
    degree_l(s) / int(8) - sum / int(2)
}

/// δ(Y, s) as a sum of lens space δ-invariants.
pub fn delta(x: &SpinCStructure, s: &SeifertData, policy: &dyn SignPolicy) -> Result<SignedValue> {
    ensure(x, s)?;
    if x.m == 0 {
        let eta = SignedValue::from_half(eta_pinc(x, s, policy)?);
        Ok(eta.scale(&rat(-1, 2)).shift(&pair_center(&x.cls, s)))
    } else {
        let sum = x
            .cls
            .pairs()
            .iter()
            .zip(&s.arms)
            .fold(Rational::zero(), |acc, (p, arm)| acc + lens_at(arm.a, arm.b, p.gamma));
        Ok(SignedValue::Exact(-sum))
    }
}

/// The two δ values `{v − 1/4, v + 1/4}` of the `τ`-pair over an `m = 0` class, low first.
pub fn delta_pair(cls: &LineBundleClass, s: &SeifertData) -> Result<(Rational, Rational)> {
    if !check_conditions(cls, 0, s) {
        return Err(Error::ConditionViolation(format!("{cls} is not an m = 0 class on {s}")));
    }
    let v = pair_center(cls, s);
    Ok((&v - rat(1, 4), v + rat(1, 4)))
}

/// δ = −½ η_D⁺ + η_sig/8 + transgression, with the `t`-dependence required to vanish.
pub fn delta_via_n(x: &SpinCStructure, s: &SeifertData, policy: &dyn SignPolicy) -> Result<SignedValue> {
    let geo = eta_sig(s).scale(&rat(1, 8)) + transgression(s);
    if !geo.is_constant() {
        return Err(Error::GeometricResidue { c1: geo.c1.to_string(), c2: geo.c2.to_string() });
    }
    Ok(eta_dirac_pm(x, s, policy)?.scale(&rat(-1, 2)).shift(&geo.c0))
}

/// Human readable Floer homotopy type; every such `Y` is an L-space.
pub fn swf_descriptor(x: &SpinCStructure, s: &SeifertData, policy: &dyn SignPolicy) -> Result<String> {
    let d = delta(x, s, policy)?;
    Ok(match d {
        SignedValue::Exact(v) => format!("SWF = Σ^{{{v}·C}} S^0, L-space: true"),
        pm => format!("SWF = Σ^{{({pm})·C}} S^0, L-space: true"),
    })
}

/// Multiset of δ over all `4 ∏ a_i` structures. Independent of any sign convention.
pub fn delta_multiset(s: &SeifertData) -> BTreeMap<Rational, usize> {
    let tables: Vec<Vec<Rational>> = s
        .arms
        .iter()
        .map(|arm| (0..arm.a).map(|u| lens_at(arm.a, arm.b, u)).collect())
        .collect();
    let quarter = rat(1, 4);
    let l8 = degree_l(s) / int(8);
    let mut out = BTreeMap::new();
    for x in enumerate_spinc(s).filter(|x| x.tau == Tau::Plus) {
        let pairs = x.cls.pairs();
        if x.m == 0 {
            let sum = pairs.iter().zip(&tables).fold(Rational::zero(), |acc, (p, t)| {
                acc + &t[p.gamma as usize] + &t[p.delta as usize]
            });
            let v = &l8 - sum / int(2);
            *out.entry(&v - &quarter).or_insert(0) += 1;
            *out.entry(v + &quarter).or_insert(0) += 1;
        } else {
            let sum = pairs
                .iter()
                .zip(&tables)
                .fold(Rational::zero(), |acc, (p, t)| acc + &t[p.gamma as usize]);
            *out.entry(-sum).or_insert(0) += 2;
        }
    }
    out
}

/// The `m = 0` classes with their δ pairs, in canonical order.
pub fn delta_pairs(s: &SeifertData) -> Vec<(LineBundleClass, (Rational, Rational))> {
    trivial_holonomy_classes(s)
        .map(|cls| {
            let pair = delta_pair(&cls, s).expect("enumerated classes satisfy the conditions");
            (cls, pair)
        })
        .collect()
}
