//! Exact bounds on `p_n` and the Lagrange stationarity diagnostics.
//!
//! The bound formulas return exact integers or rationals. Floating point
//! appears only in [`lambda_from_mu`], [`stationarity_residual`] and
//! [`mu_implied`].

use core::cmp::Ordering;

use crate::error::{Error, Result};
use crate::exact::{self, ExactInt, Rational};
use crate::grid::RealMatrix;

/// Smallest magnitude of `q − s²/n²` for which [`mu_implied`] divides.
pub const MU_DENOMINATOR_EPS: f64 = 1e-12;

/// Entry sum of a permutation grid of side `n`: `n²(n²+1)/2`.
pub fn permutation_sum(n: usize) -> Result<ExactInt> {
    let n2 = exact::mul(exact::from_usize(n)?, exact::from_usize(n)?)?;
    exact::div_exact(exact::mul(n2, exact::add(n2, 1)?)?, 2, "permutation_sum")
}

/// Sum of squares of a permutation grid of side `n`: `n²(n²+1)(2n²+1)/6`.
pub fn permutation_square_sum(n: usize) -> Result<ExactInt> {
    let n2 = exact::mul(exact::from_usize(n)?, exact::from_usize(n)?)?;
    let num = exact::product(&[n2, exact::add(n2, 1)?, exact::add(exact::mul(2, n2)?, 1)?])?;
    exact::div_exact(num, 6, "permutation_square_sum")
}

fn positive(n: usize) -> Result<ExactInt> {
    if n == 0 {
        return Err(Error::EmptyGrid);
    }
    exact::from_usize(n)
}

/// Upper bound on `s(A²)` for any real `n×n` matrix with entry sum `s` and
/// square sum `q`: `s²/n + (n/2)·|q − s²/n²|`.
///
/// Evaluated as `(2s² + |q·n² − s²|) / (2n)`.
pub fn ub_general(s: ExactInt, q: ExactInt, n: usize) -> Result<Rational> {
    let n = positive(n)?;
    let s2 = exact::mul(s, s)?;
    let spread = exact::sub(exact::mul(q, exact::mul(n, n)?)?, s2)?;
    let num = exact::add(exact::mul(2, s2)?, spread.checked_abs().ok_or(Error::Overflow)?)?;
    Rational::new(num, exact::mul(2, n)?)
}

/// `n³(n²+1)(7n²+5)`, the numerator of [`ub_pn`].
pub fn ub_pn_numerator(n: usize) -> Result<ExactInt> {
    let n = positive(n)?;
    let n2 = exact::mul(n, n)?;
    exact::product(&[n2, n, exact::add(n2, 1)?, exact::add(exact::mul(7, n2)?, 5)?])
}

/// Upper bound on `p_n`: `n³(n²+1)(7n²+5)/24`.
pub fn ub_pn(n: usize) -> Result<Rational> {
    Rational::new(ub_pn_numerator(n)?, 24)
}

/// `n(240n⁶+28n⁵+364n⁴+210n²−28n+26−105((−1)ⁿ+1))`, the numerator of [`lb_pn`].
pub fn lb_pn_numerator(n: usize) -> Result<ExactInt> {
    let nn = positive(n)?;
    let mut pow = [1 as ExactInt; 7];
    for i in 1..7 {
        pow[i] = exact::mul(pow[i - 1], nn)?;
    }
    let parity: ExactInt = if n.is_multiple_of(2) { 2 } else { 0 };
    let terms = [
        exact::mul(240, pow[6])?,
        exact::mul(28, pow[5])?,
        exact::mul(364, pow[4])?,
        exact::mul(210, pow[2])?,
        exact::mul(-28, pow[1])?,
        26,
        -105 * parity,
    ];
    let poly = terms.iter().try_fold(0, |acc, &t| exact::add(acc, t))?;
    exact::mul(nn, poly)
}

/// Lower bound on `p_n`, attained by the border construction.
pub fn lb_pn(n: usize) -> Result<ExactInt> {
    exact::div_exact(lb_pn_numerator(n)?, 840, "lb_pn")
}

/// The bound obtained by taking `μ = −n/2`: `s²/n − (n/2)(q − s²/n²)` with
/// the permutation-grid values of `s` and `q`.
pub fn trivial_lb(n: usize) -> Result<Rational> {
    let s = permutation_sum(n)?;
    let q = permutation_square_sum(n)?;
    let nn = positive(n)?;
    let s2 = exact::mul(s, s)?;
    // (2s² − (q·n² − s²)) / (2n)
    let spread = exact::sub(exact::mul(q, exact::mul(nn, nn)?)?, s2)?;
    Rational::new(exact::sub(exact::mul(2, s2)?, spread)?, exact::mul(2, nn)?)
}

/// `λ = 2s(n − μ)/n²`.
pub fn lambda_from_mu(s: ExactInt, n: usize, mu: f64) -> f64 {
    let n = n as f64;
    2.0 * s as f64 * (n - mu) / (n * n)
}

/// Known optimal values `p_1`, `p_2`, `p_3`.
pub fn known_exact(n: usize) -> Option<ExactInt> {
    match n {
        1 => Some(1),
        2 => Some(54),
        3 => Some(761),
        _ => None,
    }
}

/// Every bound on `p_n` for one `n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BoundsReport {
    pub n: usize,
    pub lower: ExactInt,
    pub trivial_lower: Rational,
    pub upper: Rational,
    pub known_exact: Option<ExactInt>,
}

impl BoundsReport {
    pub fn compute(n: usize) -> Result<Self> {
        Ok(BoundsReport {
            n,
            lower: lb_pn(n)?,
            trivial_lower: trivial_lb(n)?,
            upper: ub_pn(n)?,
            known_exact: known_exact(n),
        })
    }

    /// `trivial_lower ≤ lower ≤ upper`, compared exactly.
    pub fn is_ordered(&self) -> Result<bool> {
        let lower = Rational::from_int(self.lower);
        Ok(self.trivial_lower.checked_cmp(&lower)? != Ordering::Greater
            && lower.checked_cmp(&self.upper)? != Ordering::Greater)
    }
}

/// Inputs to [`stationarity_residual`].
#[derive(Debug, Clone, PartialEq)]
pub struct StationarityProbe {
    pub x: RealMatrix,
    pub lambda: f64,
    pub mu: f64,
    pub m: u32,
}

/// Frobenius norm of
/// `Σ_{r=0}^{m−1} (J(Xᵀ)^{m−1−r}) ∘ ((Xᵀ)^r J) − λJ − 2μX`,
/// the violation of the first-order conditions for maximizing `s(X^m)`
/// under fixed `s(X)` and `q(X)`.
pub fn stationarity_residual(probe: &StationarityProbe) -> Result<f64> {
    if probe.m < 2 {
        return Err(Error::InvalidArgument("power m must be at least 2"));
    }
    let n = probe.x.n();
    let ones = RealMatrix::filled(n, 1.0)?;
    let xt = probe.x.transpose();

    let m = probe.m as usize;
    let mut powers = alloc::vec::Vec::with_capacity(m);
    powers.push(RealMatrix::identity(n)?);
    for r in 1..m {
        let next = powers[r - 1].matmul(&xt);
        powers.push(next);
    }

    let mut total = RealMatrix::filled(n, 0.0)?;
    for r in 0..m {
        let left = ones.matmul(&powers[m - 1 - r]);
        let right = powers[r].matmul(&ones);
        total = total.add_scaled(&left.hadamard(&right), 1.0);
    }
    let residual = total.add_scaled(&ones, -probe.lambda).add_scaled(&probe.x, -2.0 * probe.mu);
    Ok(residual.frobenius_norm())
}

/// The multiplier `μ = (s(A²) − s²/n)/(q − s²/n²)` implied by a matrix, or
/// `None` when the denominator is below [`MU_DENOMINATOR_EPS`] in magnitude.
pub fn mu_implied(a: &RealMatrix) -> Option<f64> {
    let n = a.n() as f64;
    let s = a.entry_sum();
    let q = a.square_entry_sum();
    let denom = q - s * s / (n * n);
    if denom.abs() <= MU_DENOMINATOR_EPS {
        return None;
    }
    let s_sq = a.matmul(a).entry_sum();
    Some((s_sq - s * s / n) / denom)
}
