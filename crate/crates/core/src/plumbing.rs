//! Star-shaped plumbings, their intersection lattices and signatures, and the
//! sharp Frøyshov bound for data of the form `S(B; (a_1, a_1 − 1), …)`.

use num_integer::Integer;
use num_rational::Ratio;
use num_traits::{CheckedAdd, CheckedDiv, CheckedMul, CheckedSub, Zero};

use crate::arith::{int, rat, signum, Rational};
use crate::error::{Error, Result};
use crate::invariants::delta_pair;
use crate::seifert::{degree_l, LineBundleClass, SeifertData};
use crate::spinc::check_conditions;

/// Central vertex plus linear arms; arm weights `d_j ≥ 2` enter the matrix as `−d_j`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PlumbingGraph {
    pub central_weight: i64,
    pub arms: Vec<Vec<i64>>,
}

impl PlumbingGraph {
    /// Vertex order: the centre, then each arm from head (adjacent to the centre) to tail.
    pub fn to_lattice(&self) -> IntLattice {
        let dim = 1 + self.arms.iter().map(Vec::len).sum::<usize>();
        let mut q = vec![vec![0i64; dim]; dim];
        q[0][0] = self.central_weight;
        let mut next = 1;
        for arm in &self.arms {
            let mut prev = 0;
            for &d in arm {
                q[next][next] = -d;
                q[prev][next] = 1;
                q[next][prev] = 1;
                prev = next;
                next += 1;
            }
        }
        IntLattice { q }
    }
}

/// Symmetric integer matrix.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntLattice {
    pub q: Vec<Vec<i64>>,
}

impl IntLattice {
    pub fn new(q: Vec<Vec<i64>>) -> Result<Self> {
        let n = q.len();
        let ok = q.iter().all(|row| row.len() == n)
            && (0..n).all(|i| (0..i).all(|j| q[i][j] == q[j][i]));
        if !ok {
            return Err(Error::Parse("matrix is not square and symmetric".into()));
        }
        Ok(IntLattice { q })
    }

    pub fn dim(&self) -> usize {
        self.q.len()
    }

    /// Principal sub-block on the given indices.
    pub fn sub_block(&self, idx: &[usize]) -> IntLattice {
        IntLattice { q: idx.iter().map(|&i| idx.iter().map(|&j| self.q[i][j]).collect()).collect() }
    }
}

/// Expansion `a/b = d_1 − 1/(d_2 − 1/(…))` with every `d_j ≥ 2`.
pub fn neg_cont_frac(a: i64, b: i64) -> Result<Vec<i64>> {
    if !(0 < b && b < a) || a.gcd(&b) != 1 {
        return Err(Error::InvalidFraction { a, b });
    }
    let (mut p, mut q) = (a, b);
    let mut out = Vec::new();
    while q > 0 {
        let d = (p + q - 1) / q;
        out.push(d);
        (p, q) = (q, d * q - p);
    }
    Ok(out)
}

/// Evaluates `[d_1, …, d_s]` back to a rational.
pub fn eval_neg_cont_frac(ds: &[i64]) -> Rational {
    let mut it = ds.iter().rev();
    let mut acc = int(*it.next().expect("nonempty expansion"));
    for &d in it {
        acc = int(d) - acc.recip();
    }
    acc
}

/// Chain of an arm `(a, b)` with `0 < b < a`, taken after rewriting it as `(a, b − a)`:
/// the expansion of `a / (a − b)`.
pub fn arm_chain(a: i64, b: i64) -> Result<Vec<i64>> {
    neg_cont_frac(a, a - b)
}

/// Plumbing graph of the double cover. Arms are rewritten as `(a_i, b_i − a_i)`, which
/// moves the Euler number to `b − n`; the centre then carries `2(b − n)` and each arm
/// appears twice with chain `a_i / (a_i − b_i)`.
pub fn double_graph(s: &SeifertData) -> PlumbingGraph {
    let mut arms = Vec::with_capacity(2 * s.n());
    for arm in &s.arms {
        let chain = arm_chain(arm.a, arm.b).expect("normalized arms");
        arms.push(chain.clone());
        arms.push(chain);
    }
    PlumbingGraph { central_weight: 2 * (s.b - s.n() as i64), arms }
}

/// Intersection form of the plumbing bounded by the double cover (see [`double_graph`]).
pub fn star_lattice_double(s: &SeifertData) -> IntLattice {
    double_graph(s).to_lattice()
}

/// `n₊ − n₋` by exact symmetric elimination (congruence diagonalization over ℚ).
///
/// Pivots are taken from the last remaining index when possible, so tree-shaped
/// lattices listed root first are reduced leaf by leaf with no fill-in. The work is
/// first attempted in checked 128-bit fractions and redone with big rationals if
/// anything overflows.
pub fn lattice_signature(l: &IntLattice) -> i64 {
    let small = l.q.iter().map(|row| row.iter().map(|&x| Ratio::from_integer(i128::from(x))).collect()).collect();
    if let Some(sig) = congruence_signature::<Ratio<i128>>(small) {
        return sig;
    }
    let big = l.q.iter().map(|row| row.iter().map(|&x| int(x)).collect()).collect();
    congruence_signature::<Rational>(big).expect("big rationals cannot overflow")
}

/// Field operations used by the elimination; `None` reports overflow.
trait Exact: Clone + Zero + PartialOrd {
    fn add_c(&self, o: &Self) -> Option<Self>;
    fn sub_c(&self, o: &Self) -> Option<Self>;
    fn mul_c(&self, o: &Self) -> Option<Self>;
    fn div_c(&self, o: &Self) -> Option<Self>;
}

impl Exact for Ratio<i128> {
    fn add_c(&self, o: &Self) -> Option<Self> {
        self.checked_add(o)
    }
    fn sub_c(&self, o: &Self) -> Option<Self> {
        self.checked_sub(o)
    }
    fn mul_c(&self, o: &Self) -> Option<Self> {
        self.checked_mul(o)
    }
    fn div_c(&self, o: &Self) -> Option<Self> {
        self.checked_div(o)
    }
}

impl Exact for Rational {
    fn add_c(&self, o: &Self) -> Option<Self> {
        Some(self + o)
    }
    fn sub_c(&self, o: &Self) -> Option<Self> {
        Some(self - o)
    }
    fn mul_c(&self, o: &Self) -> Option<Self> {
        Some(self * o)
    }
    fn div_c(&self, o: &Self) -> Option<Self> {
        Some(self / o)
    }
}

fn congruence_signature<F: Exact>(mut a: Vec<Vec<F>>) -> Option<i64> {
    let zero = F::zero();
    let mut alive: Vec<usize> = (0..a.len()).collect();
    let mut sig = 0;
    while let Some(&last) = alive.last() {
        let pivot = if !a[last][last].is_zero() {
            Some(last)
        } else {
            alive.iter().rev().copied().find(|&k| !a[k][k].is_zero())
        };
        let k = match pivot {
            Some(k) => k,
            None => {
                // Zero diagonal: fold a partner into `last` to create a nonzero pivot.
                match alive.iter().copied().find(|&j| j != last && !a[last][j].is_zero()) {
                    None => {
                        alive.pop();
                        continue;
                    }
                    Some(j) => {
                        for &i in &alive {
                            a[last][i] = a[last][i].add_c(&a[j][i])?;
                        }
                        for &i in &alive {
                            a[i][last] = a[i][last].add_c(&a[i][j])?;
                        }
                        last
                    }
                }
            }
        };
        let p = a[k][k].clone();
        sig += if p > zero { 1 } else { -1 };
        alive.retain(|&i| i != k);
        let nz: Vec<usize> = alive.iter().copied().filter(|&i| !a[i][k].is_zero()).collect();
        for &i in &nz {
            let f = a[i][k].div_c(&p)?;
            for &j in &nz {
                let v = f.mul_c(&a[k][j])?;
                a[i][j] = a[i][j].sub_c(&v)?;
            }
        }
    }
    Some(sig)
}

/// Checks `σ(X̃) = 2σ(X) + ε`, where `σ(X) = −Σ s_i` and `ε = sign(l)`.
pub fn sigma_relation_check(s: &SeifertData) -> bool {
    let g = double_graph(s);
    let sigma_tilde = lattice_signature(&g.to_lattice());
    let sigma_x: i64 = -g.arms.iter().step_by(2).map(|c| c.len() as i64).sum::<i64>();
    sigma_tilde == 2 * sigma_x + signum(&degree_l(s))
}

fn special_form(s: &SeifertData) -> Result<()> {
    if s.arms.iter().all(|arm| arm.a > 1 && arm.b == arm.a - 1) {
        Ok(())
    } else {
        Err(Error::WrongForm(format!("{s}: every arm must be (a, a-1)")))
    }
}

/// `c² = −Σ (2γ_i + 1 − a_i)² / a_i` for data with every `b_i = a_i − 1`.
pub fn c_squared(s: &SeifertData, gammas: &[i64]) -> Result<Rational> {
    special_form(s)?;
    if gammas.len() != s.n() {
        return Err(Error::WrongForm(format!("expected {} residues, got {}", s.n(), gammas.len())));
    }
    let mut acc = Rational::zero();
    for (arm, &g) in s.arms.iter().zip(gammas) {
        if !(0..arm.a).contains(&g) {
            return Err(Error::WrongForm(format!("residue {g} outside [0, {})", arm.a)));
        }
        let t = 2 * g + 1 - arm.a;
        acc -= rat(t * t, arm.a);
    }
    Ok(acc)
}

/// Compares the δ pair of an `m = 0` class with `{b/8 ± 1/4 + (c² + n)/8}`, where
/// `b = B − n` is the Euler number when the arms are written as `(a_i, −1)`.
pub fn froyshov_equality_check(s: &SeifertData, cls: &LineBundleClass) -> Result<bool> {
    special_form(s)?;
    if !check_conditions(cls, 0, s) {
        return Err(Error::ConditionViolation(format!("{cls} is not an m = 0 class on {s}")));
    }
    let n = s.n() as i64;
    let c2 = c_squared(s, &cls.gammas())?;
    let centre = rat(s.b - n, 8) + (c2 + int(n)) / int(8);
    let expected = (&centre - rat(1, 4), centre + rat(1, 4));
    Ok(delta_pair(cls, s)? == expected)
}

/// Length of the continued fraction chain of every arm.
pub fn chain_lengths(s: &SeifertData) -> Vec<usize> {
    s.arms
        .iter()
        .map(|arm| arm_chain(arm.a, arm.b).map(|c| c.len()).unwrap_or(0))
        .collect()
}

pub fn is_negative_definite(l: &IntLattice) -> bool {
    lattice_signature(l) == -(l.dim() as i64)
}
