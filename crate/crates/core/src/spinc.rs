//! Spin^c structures on `Y` as triples `(E₀-class, τ, m)` with `m ∈ {0, −1}`.

use std::fmt;

use serde_json::{json, Value};

use crate::arith::{int, Rational};
use crate::seifert::{degree_l, euler_char, LineBundleClass, ResiduePair, SeifertData};

/// Sign of τ relative to a fixed base choice for each `(class, m)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Tau {
    Plus,
    Minus,
}

impl Tau {
    pub fn flip(self) -> Tau {
        match self {
            Tau::Plus => Tau::Minus,
            Tau::Minus => Tau::Plus,
        }
    }

    pub fn value(self) -> i64 {
        match self {
            Tau::Plus => 1,
            Tau::Minus => -1,
        }
    }

    pub fn symbol(self) -> &'static str {
        match self {
            Tau::Plus => "+",
            Tau::Minus => "-",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum HolonomyClass {
    Trivial,
    NonTrivial,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SpinCStructure {
    pub cls: LineBundleClass,
    pub tau: Tau,
    /// Weight, always 0 or −1.
    pub m: i64,
}

impl SpinCStructure {
    pub fn with_tau(&self, tau: Tau) -> SpinCStructure {
        SpinCStructure { tau, ..self.clone() }
    }

    pub fn to_json(&self) -> Value {
        json!({
            "m": self.m,
            "tau": self.tau.symbol(),
            "e": self.cls.e().to_string(),
            "gamma": self.cls.gammas(),
            "delta": self.cls.deltas(),
        })
    }
}

impl fmt::Display for SpinCStructure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "m={} tau={} e={} gamma={:?} delta={:?}",
            self.m,
            self.tau.symbol(),
            self.cls.e(),
            self.cls.gammas(),
            self.cls.deltas()
        )
    }
}

pub fn holonomy(s: &SpinCStructure) -> HolonomyClass {
    if s.m == 0 {
        HolonomyClass::Trivial
    } else {
        HolonomyClass::NonTrivial
    }
}

/// `e = −χ − m l` and `γ_i + δ_i ≡ −1 + m b_i (mod a_i)` for every arm.
pub fn check_conditions(cls: &LineBundleClass, m: i64, s: &SeifertData) -> bool {
    if cls.pairs().len() != s.n() {
        return false;
    }
    let e = -euler_char(s) - int(m) * degree_l(s);
    if cls.e() != &e {
        return false;
    }
    cls.pairs().iter().zip(&s.arms).all(|(p, arm)| {
        p.a == arm.a && (p.gamma + p.delta + 1 - m * arm.b).rem_euclid(arm.a) == 0
    })
}

/// Lazy enumeration in canonical order: the `m = 0` block, then `m = −1`;
/// γ-tuples lexicographically with `γ_1` most significant; `τ = +` before `τ = −`.
pub struct SpinCIter {
    arms: Vec<(i64, i64)>,
    e: [Rational; 2],
    block: usize,
    gamma: Vec<i64>,
    tau: Tau,
    done: bool,
}

impl SpinCIter {
    fn weight(&self) -> i64 {
        -(self.block as i64)
    }

    fn advance(&mut self) {
        if self.tau == Tau::Plus {
            self.tau = Tau::Minus;
            return;
        }
        self.tau = Tau::Plus;
        for i in (0..self.gamma.len()).rev() {
            self.gamma[i] += 1;
            if self.gamma[i] < self.arms[i].0 {
                return;
            }
            self.gamma[i] = 0;
        }
        self.block += 1;
        if self.block == 2 {
            self.done = true;
        }
    }
}

impl Iterator for SpinCIter {
    type Item = SpinCStructure;

    fn next(&mut self) -> Option<SpinCStructure> {
        if self.done {
            return None;
        }
        let m = self.weight();
        let pairs = self
            .arms
            .iter()
            .zip(&self.gamma)
            .map(|(&(a, b), &gamma)| ResiduePair {
                a,
                gamma,
                delta: (-1 + m * b - gamma).rem_euclid(a),
            })
            .collect();
        let out = SpinCStructure {
            cls: LineBundleClass::from_parts(self.e[self.block].clone(), pairs),
            tau: self.tau,
            m,
        };
        self.advance();
        Some(out)
    }
}

/// All `4 ∏ a_i` spin^c structures of `Y`.
pub fn enumerate_spinc(s: &SeifertData) -> SpinCIter {
    let chi = euler_char(s);
    let l = degree_l(s);
    SpinCIter {
        arms: s.arms.iter().map(|arm| (arm.a, arm.b)).collect(),
        e: [-chi.clone(), -chi + l],
        block: 0,
        gamma: vec![0; s.n()],
        tau: Tau::Plus,
        done: false,
    }
}

/// The `m = 0` line bundle classes, one per γ-tuple, in canonical order.
pub fn trivial_holonomy_classes(s: &SeifertData) -> impl Iterator<Item = LineBundleClass> {
    enumerate_spinc(s)
        .take_while(|x| x.m == 0)
        .filter(|x| x.tau == Tau::Plus)
        .map(|x| x.cls)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rat;
    use std::collections::HashSet;

    #[test]
    fn counts() {
        let hw = SeifertData::new(1, &[(2, 1), (2, 1)]).unwrap();
        assert_eq!(enumerate_spinc(&hw).count(), 16);
        assert_eq!(enumerate_spinc(&SeifertData::circle_bundle(3)).count(), 4);
        assert_eq!(enumerate_spinc(&SeifertData::new(0, &[(3, 1)]).unwrap()).count(), 12);
    }

    #[test]
    fn order_and_conditions() {
        let s = SeifertData::new(1, &[(3, 1), (2, 1)]).unwrap();
        let all: Vec<_> = enumerate_spinc(&s).collect();
        assert_eq!(all[0].m, 0);
        assert_eq!(all[0].tau, Tau::Plus);
        assert_eq!(all[1].tau, Tau::Minus);
        assert_eq!(all[0].cls.gammas(), vec![0, 0]);
        assert_eq!(all[2].cls.gammas(), vec![0, 1]);
        assert_eq!(all[4].cls.gammas(), vec![1, 0]);
        assert_eq!(all[12].m, -1);
        for x in &all {
            assert!(check_conditions(&x.cls, x.m, &s), "{x}");
            assert!(!check_conditions(&x.cls, -1 - x.m, &s));
        }
        let distinct: HashSet<_> = all.iter().collect();
        assert_eq!(distinct.len(), all.len());
    }

    #[test]
    fn hantzsche_wendt_conditions() {
        let hw = SeifertData::new(1, &[(2, 1), (2, 1)]).unwrap();
        let c = LineBundleClass::new(int(0), &[(2, 0, 0), (2, 1, 1)]).unwrap();
        assert!(check_conditions(&c, -1, &hw));
        let c = LineBundleClass::new(int(0), &[(2, 0, 0), (2, 1, 1)]).unwrap();
        assert!(!check_conditions(&c, 0, &hw));
        let c = LineBundleClass::new(int(1), &[(2, 0, 0), (2, 1, 1)]).unwrap();
        assert!(!check_conditions(&c, -1, &hw));
        let c = LineBundleClass::new(rat(0, 1), &[(2, 0, 0)]).unwrap();
        assert!(!check_conditions(&c, -1, &hw));
    }

    #[test]
    fn holonomy_split() {
        let s = SeifertData::new(2, &[(5, 2)]).unwrap();
        let trivial = enumerate_spinc(&s)
            .filter(|x| holonomy(x) == HolonomyClass::Trivial)
            .count();
        assert_eq!(trivial, 10);
        let x = enumerate_spinc(&s).next().unwrap();
        assert_eq!(holonomy(&x), holonomy(&x.with_tau(Tau::Minus)));
        assert_eq!(trivial_holonomy_classes(&s).count(), 5);
    }
}
