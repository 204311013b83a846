//! Lens spaces `L(a, b)` and their δ-invariants.

use num_integer::Integer;

use crate::arith::{dedekind_sum, int, lambda_sum, rat, Rational};
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct LensSpace {
    a: i64,
    b: i64,
}

impl LensSpace {
    pub fn new(a: i64, b: i64) -> Result<Self> {
        if a < 1 {
            return Err(Error::NonPositiveModulus(a));
        }
        if b.gcd(&a) != 1 {
            return Err(Error::NotCoprime { b, a });
        }
        Ok(LensSpace { a, b })
    }

    pub fn a(&self) -> i64 {
        self.a
    }

    pub fn b(&self) -> i64 {
        self.b
    }

    /// All spin^c labels `0..a`.
    pub fn spinc(&self) -> impl Iterator<Item = LensSpinC> + '_ {
        (0..self.a).map(|u| LensSpinC { u })
    }
}

/// Spin^c label `u` in `Z_a`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LensSpinC {
    u: i64,
}

impl LensSpinC {
    /// Reduces `u` into `[0, a)`.
    pub fn new(u: i64, lens: &LensSpace) -> Self {
        LensSpinC { u: u.rem_euclid(lens.a) }
    }

    pub fn u(&self) -> i64 {
        self.u
    }
}

/// δ(L(a,b), s_u) = λ(b, a; u) − s(b, a)/2.
pub fn lens_delta(lens: &LensSpace, u: LensSpinC) -> Rational {
    let b = lens.b.rem_euclid(lens.a);
    let lam = lambda_sum(b, lens.a, u.u).expect("lens space invariants hold");
    let s = dedekind_sum(b, lens.a).expect("lens space invariants hold");
    lam - s / int(2)
}

/// Shorthand for `lens_delta` on raw integers; `u` is reduced mod `a`.
pub fn lens_delta_raw(a: i64, b: i64, u: i64) -> Result<Rational> {
    let l = LensSpace::new(a, b)?;
    Ok(lens_delta(&l, LensSpinC::new(u, &l)))
}

/// Closed form for `L(a, 1)`: `−(2u + 2 − a)²/(8a) + 1/8`.
pub fn lens_delta_closed_b1(a: i64, u: i64) -> Rational {
    let t = 2 * u + 2 - a;
    -rat(t * t, 8 * a) + rat(1, 8)
}

/// `L(a, −1)` is `L(a, 1)` with reversed orientation.
pub fn lens_delta_negative(a: i64, u: i64) -> Rational {
    -lens_delta_closed_b1(a, u)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_values() {
        assert_eq!(lens_delta_raw(2, 1, 0).unwrap(), rat(1, 8));
        assert_eq!(lens_delta_raw(2, 1, 1).unwrap(), rat(-1, 8));
        assert_eq!(lens_delta_raw(3, 1, 0).unwrap(), rat(1, 12));
        assert_eq!(lens_delta_raw(1, 5, 0).unwrap(), int(0));
    }

    #[test]
    fn closed_forms() {
        assert_eq!(lens_delta_closed_b1(2, 0), rat(1, 8));
        assert_eq!(lens_delta_closed_b1(3, 0), rat(1, 12));
        assert_eq!(lens_delta_closed_b1(3, 1), rat(1, 12));
        assert_eq!(lens_delta_negative(2, 0), rat(-1, 8));
        assert_eq!(lens_delta_negative(3, 0), rat(-1, 12));
        assert_eq!(lens_delta_negative(4, 1), rat(-1, 8));
    }

    #[test]
    fn minus_one_matches_negative_closed_form_up_to_relabelling() {
        for a in 2..30 {
            for u in 0..a {
                let shifted = (u - 1i64).rem_euclid(a);
                assert_eq!(lens_delta_raw(a, -1, u).unwrap(), lens_delta_negative(a, shifted));
            }
        }
    }

    #[test]
    fn unreduced_b_gives_same_values() {
        for u in 0..7 {
            assert_eq!(lens_delta_raw(7, 3, u).unwrap(), lens_delta_raw(7, 10, u).unwrap());
            assert_eq!(lens_delta_raw(7, 3, u).unwrap(), lens_delta_raw(7, -4, u).unwrap());
        }
    }

    #[test]
    fn rejects_bad_data() {
        assert!(LensSpace::new(4, 2).is_err());
        assert!(LensSpace::new(0, 1).is_err());
    }
}
