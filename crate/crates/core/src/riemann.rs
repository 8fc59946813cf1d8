//! The boundary coefficient `G`, its argument, and the winding index.
//!
//! The homogeneous Riemann problem behind the factorization lives on the
//! positive half-axis with coefficient
//!
//! ```text
//!     G(mu) = lambda^+(mu) / lambda^-(mu)
//!           = (A(mu) + i B(mu)) / |lambda^-(mu)|^2,
//!     A = lambda0^2 + omega1^2 - s^2,    B = 2 lambda0 s.
//! ```
//!
//! `G` tends to 1 at both ends of the contour, so its argument `theta(mu)`,
//! normalized by `theta(0) = 0`, increases by `2 pi kappa` overall, where the
//! integer `kappa` is the winding number ("index") of `G`. The argument
//! principle ties `kappa` to the zero count of the dispersion function: the
//! problem has `2 kappa` complex zeros.
//!
//! Two independent computations of `theta` are provided and cross-checked:
//!
//! * [`theta_branch`] — closed-form `atan2(B, A)` with the regime-appropriate
//!   branch correction (equivalent to the arc-cotangent form with range
//!   `(0, pi)` plus a half-turn where `lambda0 <= 0` in the index-1 regime,
//!   and to the plain arctangent form wherever `A > 0` in the index-0
//!   regime, but free of their domain restrictions);
//! * [`theta_unwrapped`] — continuous phase unwrapping of `arg G` along a
//!   grid, which also measures the index by counting full turns.
//!
//! The index changes where `G` acquires a zero on the contour. Since
//! `Im lambda^- = -(s + omega1) < 0` for positive frequency, only
//! `lambda^+(mu) = lambda0(mu) + i(s(mu) - omega1)` can vanish, and it does so
//! exactly at `mu = mu0`, `omega1 = s(mu0)` — see
//! [`dispersion::index_transition`](crate::dispersion::index_transition). The
//! often-quoted threshold `~0.733` computed by [`critical_frequency`] is the
//! envelope value `max sqrt(s^2 - lambda0^2)` above which `Re G > 0`
//! everywhere; it bounds the transition from above but does not locate it.

use num_complex::Complex64;
use std::sync::OnceLock;

use crate::dispersion::{lambda0_real, lambda_boundary, s, ProblemParams, Regime};
use crate::{Error, Result};

const TAU: f64 = 2.0 * std::f64::consts::PI;

/// The coefficient `G(mu) = lambda^+(mu)/lambda^-(mu)` of the Riemann problem.
///
/// Approaches 1 as `mu -> 0` (both boundary values collapse to `1 - i omega1`)
/// and as `mu -> inf` (the jump dies with the Gaussian envelope).
///
/// # Errors
///
/// [`Error::DegenerateDenominator`] if `lambda^-` vanishes. Unreachable for
/// `omega1 > 0`, where `Im lambda^- = -(s + omega1) < 0`; the check guards
/// the `omega1 = 0` degeneracy.
pub fn coefficient_g(mu: f64, p: &ProblemParams) -> Result<Complex64> {
    let pair = lambda_boundary(mu, p);
    if pair.minus.norm() < 1e-300 {
        return Err(Error::DegenerateDenominator(mu));
    }
    Ok(pair.plus / pair.minus)
}

/// `theta` from the real and imaginary parts of `G`'s numerator.
///
/// Shared by the closed-form branch and the density evaluations in the
/// factorization module, so both see the identical seam handling.
pub(crate) fn theta_from_parts(lambda0: f64, weight: f64, p: &ProblemParams) -> f64 {
    let omega1 = p.omega1();
    let a = lambda0 * lambda0 + omega1 * omega1 - weight * weight;
    let b = 2.0 * lambda0 * weight;
    let principal = b.atan2(a);
    match p.regime() {
        // The principal value crosses the negative real axis only at mu0
        // (where B changes sign with A < 0); lifting the negative side by a
        // full turn glues the two pieces into a continuous angle that runs
        // from 0 to 2 pi.
        Regime::IndexOne => {
            if principal < 0.0 {
                principal + TAU
            } else {
                principal
            }
        }
        // Above the transition A > 0 wherever B = 0, so the principal value
        // is already continuous and returns to 0 at infinity.
        Regime::IndexZero => principal,
    }
}

/// Closed-form argument `theta(mu) = arg G(mu)`, continuous with
/// `theta(0) = 0`.
///
/// Index-1 regime: rises from 0 to `2 pi`, passing `pi` at `mu0`. Index-0
/// regime: returns to 0 at infinity. Equivalent to phase unwrapping (see
/// [`theta_unwrapped`]) but pointwise and grid-free.
pub fn theta_branch(mu: f64, p: &ProblemParams) -> f64 {
    theta_from_parts(lambda0_real(mu), s(mu), p)
}

/// The shifted angle `zeta(mu) = theta(mu) - 2 pi` of the index-1 regime.
///
/// This is the branch of `arg G` that vanishes at infinity; it enters the
/// Cauchy density of `V(z)` and equals `-2 pi` at the origin, which is what
/// makes the factorizing function `X` bounded there despite its explicit
/// `1/z` factor.
///
/// # Errors
///
/// [`Error::WrongRegime`] in the index-0 regime, where `theta` itself already
/// vanishes at infinity and no shift is involved.
pub fn zeta(mu: f64, p: &ProblemParams) -> Result<f64> {
    p.require(Regime::IndexOne)?;
    Ok(theta_branch(mu, p) - TAU)
}

/// A tabulated, continuously unwrapped angle profile along a grid.
#[derive(Debug, Clone)]
pub struct AngleProfile {
    /// Strictly increasing nodes on `(0, cutoff]`.
    pub grid: Vec<f64>,
    /// Unwrapped `theta` at the nodes, anchored by `theta(0) = 0`.
    pub theta: Vec<f64>,
    /// `ln |G|` at the nodes.
    pub ln_mod_g: Vec<f64>,
    /// Winding number measured from the total increment: `theta(end)/(2 pi)`
    /// rounded.
    pub index: i32,
}

/// Unwraps `arg G` continuously along `grid` and measures the index.
///
/// The first node anchors the profile: it must sit close enough to the
/// origin that the principal argument there is already the continuous one
/// (`theta(0) = 0` normalization). Subsequent nodes accumulate principal-value
/// steps folded into `(-pi, pi)`.
///
/// # Errors
///
/// [`Error::GridTooCoarse`] when a folded step reaches `pi/2`. A step of
/// exactly `pi` would be directionally ambiguous, and anything between
/// `pi/2` and `pi` is indistinguishable from an aliased larger jump, so the
/// guard keeps a factor-of-two margin below the point of silent wraparound.
/// [`Error::DegenerateDenominator`] propagated from [`coefficient_g`].
pub fn theta_unwrapped(grid: &[f64], p: &ProblemParams) -> Result<AngleProfile> {
    assert!(
        grid.len() >= 2 && grid.windows(2).all(|w| w[0] < w[1]) && grid[0] > 0.0,
        "grid must be strictly increasing with positive nodes"
    );
    let mut theta = Vec::with_capacity(grid.len());
    let mut ln_mod_g = Vec::with_capacity(grid.len());

    let first = coefficient_g(grid[0], p)?;
    let mut previous_principal = first.arg();
    let mut unwrapped = previous_principal;
    theta.push(unwrapped);
    ln_mod_g.push(first.norm().ln());

    for pair in grid.windows(2) {
        let g = coefficient_g(pair[1], p)?;
        let principal = g.arg();
        let mut step = principal - previous_principal;
        if step > std::f64::consts::PI {
            step -= TAU;
        } else if step < -std::f64::consts::PI {
            step += TAU;
        }
        if step.abs() >= std::f64::consts::FRAC_PI_2 {
            return Err(Error::GridTooCoarse {
                step: step.abs(),
                left: pair[0],
                right: pair[1],
            });
        }
        unwrapped += step;
        previous_principal = principal;
        theta.push(unwrapped);
        ln_mod_g.push(g.norm().ln());
    }

    let index = (unwrapped / TAU).round() as i32;
    Ok(AngleProfile {
        grid: grid.to_vec(),
        theta,
        ln_mod_g,
        index,
    })
}

/// Logarithmically spaced grid, the library's default for angle profiles.
///
/// 4000 nodes on `[1e-6, cutoff]` resolve both the origin (where the shifted
/// angle matters for `V`) and the seam near `mu0`.
pub fn log_grid(min: f64, max: f64, nodes: usize) -> Vec<f64> {
    assert!(min > 0.0 && min < max && nodes >= 2);
    let ratio = (max / min).ln();
    (0..nodes)
        .map(|k| min * (ratio * k as f64 / (nodes - 1) as f64).exp())
        .collect()
}

/// Default unwrapping grid for a given truncation point: 4000 logarithmic
/// nodes on `[1e-6, cutoff]` plus a linear refinement across the seam near
/// `mu0`. The closer the frequency sits to the index transition, the
/// narrower and steeper the near-`pi` swing of the angle at the seam; the
/// refinement keeps the per-step change below the unwrapping guard for every
/// frequency outside the guard band.
pub fn default_grid(cutoff: f64) -> Vec<f64> {
    let mu0 = crate::dispersion::find_mu0();
    let (lo, hi) = (mu0 - 0.1, mu0 + 0.1);
    let mut grid = log_grid(1e-6, cutoff, 4000);
    grid.extend((0..=3000).map(|k| lo + (hi - lo) * k as f64 / 3000.0));
    grid.sort_by(f64::total_cmp);
    grid.dedup();
    grid
}

/// The envelope threshold `max_mu sqrt(s^2(mu) - lambda0^2(mu)) ~ 0.7328`
/// (with the maximum over the set where `s^2 >= lambda0^2`).
///
/// Computed by a coarse scan over `(0, 7]` followed by golden-section
/// refinement; cached after the first call. See the module docs and
/// [`crate::dispersion::ENVELOPE_THRESHOLD`] for what this value does and
/// does not mean for the index.
pub fn critical_frequency() -> f64 {
    critical_frequency_detailed().0
}

/// [`critical_frequency`] together with its argmax `mu*`.
pub fn critical_frequency_detailed() -> (f64, f64) {
    static CACHE: OnceLock<(f64, f64)> = OnceLock::new();
    *CACHE.get_or_init(|| envelope_maximum(10_000))
}

/// Scan-plus-golden-section maximization of `s^2 - lambda0^2`; the node count
/// is a parameter so the tests can verify stability under grid refinement.
pub(crate) fn envelope_maximum(scan_nodes: usize) -> (f64, f64) {
    let maximand = |mu: f64| {
        let weight = s(mu);
        let l0 = lambda0_real(mu);
        weight * weight - l0 * l0
    };

    let step = 7.0 / scan_nodes as f64;
    let (mut best_k, mut best) = (1, f64::MIN);
    for k in 1..=scan_nodes {
        let value = maximand(step * k as f64);
        if value > best {
            best = value;
            best_k = k;
        }
    }

    // Golden-section refinement inside the bracketing pair of scan intervals.
    let inv_phi = 0.5 * (5.0_f64.sqrt() - 1.0);
    let mut lo = step * (best_k - 1) as f64;
    let mut hi = step * (best_k + 1) as f64;
    let mut inner_lo = hi - inv_phi * (hi - lo);
    let mut inner_hi = lo + inv_phi * (hi - lo);
    let mut at_inner_lo = maximand(inner_lo);
    let mut at_inner_hi = maximand(inner_hi);
    while hi - lo > 1e-10 {
        if at_inner_lo < at_inner_hi {
            lo = inner_lo;
            inner_lo = inner_hi;
            at_inner_lo = at_inner_hi;
            inner_hi = lo + inv_phi * (hi - lo);
            at_inner_hi = maximand(inner_hi);
        } else {
            hi = inner_hi;
            inner_hi = inner_lo;
            at_inner_hi = at_inner_lo;
            inner_lo = hi - inv_phi * (hi - lo);
            at_inner_lo = maximand(inner_lo);
        }
    }
    let argmax = 0.5 * (lo + hi);
    (maximand(argmax).max(0.0).sqrt(), argmax)
}
