//! Closed-form minimal state count `f_b(k)`.
//!
//! With `λ(x, y) = x / gcd(x, y)`:
//!
//! ```text
//! f_b(k) = λ(k, b^∞) + Σ_α min{ λ(b^α, k), λ(k, b^α) − λ(k, b^(α+1)) }
//!        = min_A { λ(k, b^A) + Σ_{α<A} λ(b^α, k) }
//!        = λ(k, b^A₀) + Σ_{α<A₀} λ(b^α, k)
//! ```
//!
//! where `A₀` is the least `α` with `λ(k, b^α) − λ(k, b^(α+1)) < λ(b^α, k)`.
//!
//! `gcd(k, b^α)` is tracked by the recurrence `g₍α+1₎ = g_α · gcd(k / g_α, b)`
//! and never by forming `b^α`. `λ(b^α, k)` grows without bound, so it is
//! carried with saturating arithmetic: it is only ever compared with values
//! at most `k`, and a saturated term is never part of a returned sum.

use std::fmt;
use std::str::FromStr;

use num_integer::Integer;

use crate::automaton::DivSpec;
use crate::error::{Error, Result};

/// `x / gcd(x, y)`.
pub fn lam(x: u64, y: u64) -> Result<u64> {
    if x == 0 || y == 0 {
        return Err(Error::Domain(format!("lam({x}, {y}) needs positive arguments")));
    }
    Ok(x / x.gcd(&y))
}

/// The values `gcd(k, b^α)` for `α = 0, 1, …` up to the point where they
/// stop changing.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GcdPowers {
    values: Vec<u64>,
}

impl GcdPowers {
    /// `gcd(k, b^0) = 1, gcd(k, b^1), …, gcd(k, b^∞)`.
    pub fn values(&self) -> &[u64] {
        &self.values
    }

    /// The first `α` with `gcd(k, b^α) = gcd(k, b^∞)`.
    pub fn stabilization_index(&self) -> usize {
        self.values.len() - 1
    }

    /// `gcd(k, b^α)` for any `α`.
    pub fn at(&self, alpha: usize) -> u64 {
        self.values[alpha.min(self.stabilization_index())]
    }

    /// `gcd(k, b^∞)`.
    pub fn limit(&self) -> u64 {
        *self.values.last().expect("sequence starts with 1")
    }
}

pub fn gcd_pow_sequence(spec: DivSpec) -> GcdPowers {
    let (b, k) = (spec.base(), spec.modulus());
    let mut values = vec![1u64];
    let mut g = 1u64;
    loop {
        let step = (k / g).gcd(&b);
        if step == 1 {
            break;
        }
        g *= step;
        values.push(g);
    }
    GcdPowers { values }
}

/// `λ(k, b^∞)`: the largest divisor of `k` coprime to `b`.
pub fn lam_inf(spec: DivSpec) -> u64 {
    spec.modulus() / gcd_pow_sequence(spec).limit()
}

/// Which of the three equivalent expressions to evaluate.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Expr {
    /// `λ(k, b^∞)` plus the sum of per-row minima.
    Sum,
    /// Minimum over all path lengths `A`.
    MinPath,
    /// The path of length `A₀`.
    Cutoff,
}

impl Expr {
    pub const ALL: [Expr; 3] = [Expr::Sum, Expr::MinPath, Expr::Cutoff];

    pub fn number(self) -> u8 {
        match self {
            Expr::Sum => 1,
            Expr::MinPath => 2,
            Expr::Cutoff => 3,
        }
    }
}

impl FromStr for Expr {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "1" => Ok(Expr::Sum),
            "2" => Ok(Expr::MinPath),
            "3" => Ok(Expr::Cutoff),
            other => Err(Error::Domain(format!(
                "unknown expression {other:?}, expected 1, 2 or 3"
            ))),
        }
    }
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.number())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BreakdownRow {
    pub alpha: usize,
    /// `λ(b^α, k)`, saturated at `u64::MAX`.
    pub lam_bk: u64,
    /// `λ(k, b^α)`.
    pub lam_kb: u64,
    /// `λ(k, b^α) − λ(k, b^(α+1))`.
    pub diff: u64,
    /// The term of the row-minimum sum contributed by this row.
    pub chosen: u64,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FormulaBreakdown {
    pub spec: DivSpec,
    pub rows: Vec<BreakdownRow>,
    pub a_zero: usize,
    pub lam_k_binf: u64,
    pub f: u64,
    pub alpha_max: usize,
}

impl FormulaBreakdown {
    /// Evaluates one of the three expressions from the stored rows.
    pub fn evaluate(&self, expr: Expr) -> u64 {
        match expr {
            Expr::Sum => self
                .rows
                .iter()
                .fold(self.lam_k_binf, |acc, row| acc.saturating_add(row.chosen)),
            Expr::MinPath => {
                let mut prefix = 0u64;
                let mut best = u64::MAX;
                for row in &self.rows {
                    best = best.min(prefix.saturating_add(row.lam_kb));
                    prefix = prefix.saturating_add(row.lam_bk);
                }
                best
            }
            Expr::Cutoff => self.rows[..self.a_zero]
                .iter()
                .fold(self.rows[self.a_zero].lam_kb, |acc, row| {
                    acc.saturating_add(row.lam_bk)
                }),
        }
    }
}

/// Tabulates every row from `α = 0` through the stabilization index of
/// `gcd(k, b^α)`.
pub fn breakdown(spec: DivSpec) -> FormulaBreakdown {
    breakdown_through(spec, 0)
}

/// Like [`breakdown`], but keeps tabulating through at least `alpha_max`.
/// Rows past stabilization only repeat `λ(k, b^∞)` with zero differences, so
/// the result is unchanged; this exists for display.
pub fn breakdown_through(spec: DivSpec, alpha_max: usize) -> FormulaBreakdown {
    let b = spec.base();
    let k = spec.modulus();
    let powers = gcd_pow_sequence(spec);
    let stable = powers.stabilization_index();
    let last = alpha_max.max(stable);

    let mut rows = Vec::with_capacity(last + 1);
    let mut lam_bk = 1u64;
    for alpha in 0..=last {
        if alpha > 0 {
            // b^α / g_α = (b^(α-1) / g_(α-1)) · (b / (g_α / g_(α-1)))
            let ratio = powers.at(alpha) / powers.at(alpha - 1);
            lam_bk = lam_bk.saturating_mul(b / ratio);
        }
        let lam_kb = k / powers.at(alpha);
        let diff = lam_kb - k / powers.at(alpha + 1);
        rows.push(BreakdownRow {
            alpha,
            lam_bk,
            lam_kb,
            diff,
            chosen: 0,
        });
    }

    let a_zero = rows
        .iter()
        .position(|row| row.diff < row.lam_bk)
        .expect("the difference vanishes at stabilization");
    for row in &mut rows {
        row.chosen = if row.alpha < a_zero { row.lam_bk } else { row.diff };
    }

    let mut table = FormulaBreakdown {
        spec,
        rows,
        a_zero,
        lam_k_binf: k / powers.limit(),
        f: 0,
        alpha_max: last,
    };
    table.f = table.evaluate(Expr::Cutoff);
    table
}

/// `f_b(k)` by the selected expression.
pub fn f_count(spec: DivSpec, expr: Expr) -> u64 {
    breakdown(spec).evaluate(expr)
}

/// The three upper bounds obtained from paths of length 0, 1 and 2.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct UpperBounds {
    /// `k`
    pub trivial: u128,
    /// `1 + k / gcd(k, b)`
    pub one_step: u128,
    /// `1 + b / gcd(b, k) + k / gcd(k, b²)`
    pub two_step: u128,
}

impl UpperBounds {
    pub fn as_array(&self) -> [u128; 3] {
        [self.trivial, self.one_step, self.two_step]
    }

    pub fn min(&self) -> u128 {
        self.trivial.min(self.one_step).min(self.two_step)
    }
}

pub fn upper_bounds(spec: DivSpec) -> UpperBounds {
    let (b, k) = (spec.base() as u128, spec.modulus() as u128);
    let g1 = k.gcd(&b);
    let g2 = k.gcd(&(b * b % k));
    UpperBounds {
        trivial: k,
        one_step: 1 + k / g1,
        two_step: 1 + b / g1 + k / g2,
    }
}

/// Whether the canonical `k`-state automaton is already minimal.
pub fn canonical_is_minimal(spec: DivSpec) -> bool {
    spec.modulus().gcd(&spec.base()) == 1 || spec.modulus() == 2
}

/// `f_b(k)` for `b = pⁿ` and `k = pᵐ·x` with `gcd(x, p) = 1`: `x + ⌈m/n⌉`.
pub fn prime_power_f(p: u64, n: u32, m: u32, x: u64) -> Result<u64> {
    if p < 2 || n < 1 || x < 1 {
        return Err(Error::Domain(format!(
            "prime-power form needs p ≥ 2, n ≥ 1, x ≥ 1 (got p={p}, n={n}, x={x})"
        )));
    }
    if x.gcd(&p) != 1 {
        return Err(Error::Domain(format!("gcd({x}, {p}) must be 1")));
    }
    x.checked_add(m.div_ceil(n) as u64)
        .ok_or_else(|| Error::Domain("result overflows".into()))
}

/// Splits `k` as `pᵐ·x` with `p ∤ x`.
pub fn split_power(k: u64, p: u64) -> (u32, u64) {
    assert!(p >= 2 && k >= 1);
    let (mut m, mut x) = (0, k);
    while x % p == 0 {
        x /= p;
        m += 1;
    }
    (m, x)
}

/// `f_6(2^z) = 1 + Σ_{α<z} min(3^α, 2^(z−α−1))`.
pub fn f6_power2_closed_form(z: u32) -> u64 {
    let sum: u128 = (0..z)
        .map(|alpha| {
            let three = 3u128.saturating_pow(alpha);
            let two = 1u128.checked_shl(z - alpha - 1).unwrap_or(u128::MAX);
            three.min(two)
        })
        .fold(0u128, u128::saturating_add);
    u64::try_from(1 + sum).unwrap_or(u64::MAX)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigUint;

    fn spec(b: u64, k: u64) -> DivSpec {
        DivSpec::new(b, k).unwrap()
    }

    fn big_gcd_pow(k: u64, b: u64, alpha: u32) -> u64 {
        let p = BigUint::from(b).pow(alpha);
        let g = num_integer::Integer::gcd(&p, &BigUint::from(k));
        u64::try_from(g).unwrap()
    }

    #[test]
    fn lam_examples() {
        assert_eq!(lam(16, 6).unwrap(), 8);
        assert_eq!(lam(36, 16).unwrap(), 9);
        for x in [1, 7, 12, 1 << 40] {
            assert_eq!(lam(x, x).unwrap(), 1);
        }
        assert!(lam(0, 3).is_err());
        assert!(lam(3, 0).is_err());
    }

    #[test]
    fn lam_asymmetry() {
        for x in 1..=60 {
            for y in 1..=60 {
                assert_eq!(lam(x, y).unwrap() == lam(y, x).unwrap(), x == y, "{x} {y}");
            }
        }
    }

    #[test]
    fn gcd_sequence_examples() {
        let g = gcd_pow_sequence(spec(6, 16));
        assert_eq!(g.values(), &[1, 2, 4, 8, 16]);
        let lam_kb: Vec<u64> = g.values().iter().map(|g| 16 / g).collect();
        assert_eq!(lam_kb, vec![16, 8, 4, 2, 1]);

        let g = gcd_pow_sequence(spec(10, 21));
        assert_eq!(g.values(), &[1]);
        assert_eq!(g.stabilization_index(), 0);

        let g = gcd_pow_sequence(spec(20, 150));
        assert_eq!(g.values(), &[1, 10, 50]);
        for alpha in 0..6 {
            assert_eq!(g.at(alpha as usize), big_gcd_pow(150, 20, alpha));
        }
    }

    #[test]
    fn gcd_recurrence_matches_big_powers() {
        for k in (1..=1000).step_by(7) {
            for b in (2..=1000).step_by(13) {
                let g = gcd_pow_sequence(spec(b, k));
                assert!(g.stabilization_index() as f64 <= (k as f64).log2().ceil());
                for alpha in 0..=10 {
                    assert_eq!(g.at(alpha as usize), big_gcd_pow(k, b, alpha), "b={b} k={k}");
                }
            }
        }
    }

    #[test]
    fn lam_inf_examples() {
        assert_eq!(lam_inf(spec(6, 16)), 1);
        assert_eq!(lam_inf(spec(10, 21)), 21);
        assert_eq!(lam_inf(spec(20, 150)), 3);
    }

    #[test]
    fn breakdown_6_16() {
        let t = breakdown_through(spec(6, 16), 6);
        let col = |f: fn(&BreakdownRow) -> u64| t.rows.iter().map(f).collect::<Vec<_>>();
        assert_eq!(col(|r| r.lam_bk), vec![1, 3, 9, 27, 81, 486, 2916]);
        assert_eq!(col(|r| r.lam_kb), vec![16, 8, 4, 2, 1, 1, 1]);
        assert_eq!(col(|r| r.diff), vec![8, 4, 2, 1, 0, 0, 0]);
        assert_eq!(col(|r| r.chosen), vec![1, 3, 2, 1, 0, 0, 0]);
        assert_eq!(t.a_zero, 2);
        assert_eq!(t.lam_k_binf, 1);
        assert_eq!(t.f, 8);

        let plain = breakdown(spec(6, 16));
        assert_eq!(plain.alpha_max, 4);
        assert_eq!(plain.rows.len(), 5);
        assert_eq!(plain.f, 8);
    }

    #[test]
    fn breakdown_coprime() {
        for (b, k) in [(2, 3), (10, 7), (9, 100)] {
            let t = breakdown(spec(b, k));
            assert_eq!(t.a_zero, 0);
            assert_eq!(t.f, k);
            assert_eq!(t.rows.len(), 1);
        }
    }

    #[test]
    fn breakdown_6_2() {
        // λ(b^α,2): 1, 3;  λ(2,b^α): 2, 1;  diffs 1, 0.  A₀ = 1, f = 1 + 1.
        let t = breakdown(spec(6, 2));
        assert_eq!(t.a_zero, 1);
        assert_eq!(t.f, 2);
    }

    #[test]
    fn f_count_examples() {
        for expr in Expr::ALL {
            assert_eq!(f_count(spec(6, 16), expr), 8);
            assert_eq!(f_count(spec(20, 468_750), expr), 246);
            assert_eq!(f_count(spec(7, 1), expr), 1);
        }
    }

    #[test]
    fn f_count_extreme_widths() {
        // b = 2^63, k = 2^63: one digit clears everything.
        let s = spec(1 << 63, 1 << 63);
        for expr in Expr::ALL {
            assert_eq!(f_count(s, expr), 2);
        }
        let s = spec(3, 1 << 63);
        for expr in Expr::ALL {
            assert_eq!(f_count(s, expr), 1 << 63);
        }
        let s = spec(u64::MAX, u64::MAX - 1);
        assert_eq!(f_count(s, Expr::Sum), u64::MAX - 1);
    }

    #[test]
    fn upper_bound_examples() {
        let u = upper_bounds(spec(6, 16));
        assert_eq!(u.as_array(), [16, 9, 8]);
        let u = upper_bounds(spec(10, 21));
        assert_eq!(u.as_array(), [21, 22, 32]);
        let u = upper_bounds(spec(20, 150));
        // 1 + 20/gcd(20,150) + 150/gcd(150,400) = 1 + 2 + 3
        assert_eq!(u.as_array(), [150, 16, 6]);
        assert_eq!(f_count(spec(20, 150), Expr::Cutoff), 6);
    }

    #[test]
    fn canonical_minimality_examples() {
        assert!(canonical_is_minimal(spec(2, 3)));
        assert!(canonical_is_minimal(spec(6, 2)));
        assert!(!canonical_is_minimal(spec(6, 16)));
    }

    #[test]
    fn prime_power_examples() {
        assert_eq!(prime_power_f(2, 2, 3, 1).unwrap(), 3);
        assert_eq!(prime_power_f(5, 3, 0, 7).unwrap(), 7);
        assert_eq!(prime_power_f(2, 1, 2, 3).unwrap(), 5);
        assert!(prime_power_f(2, 1, 2, 4).is_err());
        assert!(prime_power_f(1, 1, 2, 3).is_err());
        assert!(prime_power_f(2, 0, 2, 3).is_err());
        assert_eq!(split_power(12, 2), (2, 3));
        assert_eq!(split_power(7, 2), (0, 7));
    }

    #[test]
    fn f6_closed_form() {
        assert_eq!(f6_power2_closed_form(0), 1);
        assert_eq!(f6_power2_closed_form(4), 8);
        assert_eq!(f6_power2_closed_form(10), 104);
        for z in 0..=63 {
            assert_eq!(f6_power2_closed_form(z), f_count(spec(6, 1 << z), Expr::Sum), "z={z}");
        }
    }

    #[test]
    fn expr_parsing() {
        assert_eq!("2".parse::<Expr>().unwrap(), Expr::MinPath);
        assert!("4".parse::<Expr>().is_err());
        assert_eq!(Expr::Cutoff.to_string(), "3");
    }
}
