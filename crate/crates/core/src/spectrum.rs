//! The discrete spectrum and the eigenfunctions of the kinetic operator.
//!
//! In the index-1 regime the dispersion function has exactly two zeros
//! `±eta0`, conjugate-reflected across the imaginary axis, which deliver the
//! decaying discrete mode of the half-space problem. The factorization turns
//! the transcendental root-finding problem into an explicit formula:
//! dividing `lambda(z) = i omega1 (z^2 - eta0^2) X(z) X(-z)` by its own
//! boundary behavior at `z = i` gives
//!
//! ```text
//!     eta0(omega1) = sqrt( -1 + (i lambda(i)/omega1) exp(-V(i) - V(-i)) ),
//! ```
//!
//! with the square-root branch fixed by the physical selection rule
//! `Re(z0/eta0) > 0` (the discrete mode must decay away from the plate). An
//! independent Newton iteration on `lambda` ([`eta0_newton_oracle`]) guards
//! the formula; the two agree to well below `1e-8` across the regime, and
//! both reproduce the small-frequency asymptote `(1+i)/(2 sqrt(omega1))`.
//!
//! Above the transition the zeros are gone — they died on the cut at `±mu0`
//! when `omega1` crossed `s(mu0)` — and the factorization degenerates to
//! `lambda(z) = -i omega1 X(z) X(-z)` with no polynomial factor. Both forms
//! are enforced here as residuals, off the axis and in boundary values.
//!
//! The continuum eigenfunctions are distributions,
//!
//! ```text
//!     Phi(eta, mu) = (eta/sqrt(pi)) P 1/(eta - mu)
//!                  + exp(eta^2) lambda(eta) delta(eta - mu),
//! ```
//!
//! exposed as structured coefficients plus an apply-to-Gaussian normalization
//! integral (the convention `n(eta) = 1`); no pointwise evaluation exists. At
//! `omega1 = 0` the discrete pair escapes to infinity and leaves behind the
//! polynomial modes `h1 = 1`, `h2 = x1 - mu`, which satisfy the kinetic
//! equation exactly; [`kinetic_equation_residual`] checks any candidate mode
//! against the transport operator by quadrature.

use num_complex::Complex64;

use crate::dispersion::{lambda, lambda0_real, lambda_boundary, s, ProblemParams, Regime, SQRT_PI};
use crate::factorization::Factorizer;
use crate::quadrature::{cauchy_pv, integrate, integrate_semi_infinite, QuadratureConfig};
use crate::{Error, Result};

const I: Complex64 = Complex64::new(0.0, 1.0);

/// Small-frequency asymptote of the discrete zero:
/// `eta0 ~ (1+i)/(2 sqrt(omega1))` as `omega1 -> 0`.
pub fn eta0_asymptotic(omega1: f64) -> Complex64 {
    assert!(omega1 > 0.0, "the asymptote blows up at omega1 = 0");
    Complex64::new(1.0, 1.0) / (2.0 * omega1.sqrt())
}

/// The discrete zero `eta0` by the explicit factorization formula.
///
/// # Errors
///
/// [`Error::WrongRegime`] in the index-0 regime (no zeros exist);
/// [`Error::DegenerateFrequency`] at `omega1 = 0` (the zeros sit at
/// infinity); [`Error::BranchAmbiguity`] if neither square root satisfies the
/// selection rule, which would mean the upstream `V` values are wrong.
pub fn eta0_explicit(f: &Factorizer) -> Result<Complex64> {
    let p = f.params();
    p.require(Regime::IndexOne)?;
    if p.omega1() == 0.0 {
        return Err(Error::DegenerateFrequency);
    }
    let lambda_at_i = lambda(I, p)?;
    let exponent = -(f.v_at_i(true)? + f.v_at_i(false)?);
    let square = -1.0 + I * lambda_at_i / p.omega1() * exponent.exp();
    let root = square.sqrt();
    for candidate in [root, -root] {
        if (p.z0() / candidate).re > 0.0 {
            return Ok(candidate);
        }
    }
    Err(Error::BranchAmbiguity)
}

/// Independent Newton oracle for the zero of `lambda`.
///
/// Seeds at the small-frequency asymptote and iterates with a
/// central-difference derivative (step `1e-6 |z|`), declaring convergence at
/// `|lambda| < 1e-13`; deliberately shares nothing with the factorization
/// path. The returned root is normalized by the selection rule
/// `Re(z0/eta0) > 0` (by evenness `-eta0` is the other root).
///
/// # Errors
///
/// [`Error::NoConvergence`] after 100 steps (also the honest outcome when no
/// zero exists — e.g. seeds in the index-0 regime — though the regime gate
/// rejects that case up front); regime errors as [`eta0_explicit`].
pub fn eta0_newton_oracle(p: &ProblemParams) -> Result<Complex64> {
    p.require(Regime::IndexOne)?;
    if p.omega1() == 0.0 {
        return Err(Error::DegenerateFrequency);
    }
    newton_zero(eta0_asymptotic(p.omega1()), p)
}

/// Damped Newton iteration on `lambda(z) = 0` from an arbitrary complex
/// seed: the primitive behind [`eta0_newton_oracle`], public so that
/// zero-count scans can probe the plane from wherever they like.
///
/// Each step is halved until it reduces `|lambda|`; without that guard the
/// iterates hop across the real-axis branch cut near the transition, where
/// the zero hovers a hundredth above the cut and the jump `2 i s` dwarfs
/// `|lambda|`. A step that cannot reduce `|lambda|` after twelve halvings
/// means the iterate is pinned at a positive local minimum — the immediate,
/// honest outcome in the zero-free index-0 regime.
///
/// Convergent runs are normalized by the selection rule, so in the index-1
/// regime every seed either fails or lands on the one canonical root.
pub fn newton_zero(seed: Complex64, p: &ProblemParams) -> Result<Complex64> {
    let mut z = seed;
    let mut value = lambda(z, p)?;
    for _ in 0..100 {
        if value.norm() < 1e-13 {
            let root = if (p.z0() / z).re > 0.0 { z } else { -z };
            return Ok(root);
        }
        let step = 1e-6 * z.norm();
        let derivative = (lambda(z + step, p)? - lambda(z - step, p)?) / (2.0 * step);
        let mut update = value / derivative;
        if !update.re.is_finite() || !update.im.is_finite() {
            return Err(Error::NoConvergence(100));
        }
        let mut halvings = 0;
        loop {
            let candidate = z - update;
            let candidate_value = lambda(candidate, p)?;
            if candidate_value.norm() < value.norm() {
                z = candidate;
                value = candidate_value;
                break;
            }
            halvings += 1;
            if halvings > 12 {
                return Err(Error::NoConvergence(100));
            }
            update *= 0.5;
        }
    }
    Err(Error::NoConvergence(100))
}

/// Off-axis evaluation grid for the factorization residuals: `points` radii
/// log-spaced on `[0.5, 20]` along the six rays `arg z = ±pi/4, ±pi/2,
/// ±3pi/4` (both factors `X(±z)` need the full real axis kept clear).
pub fn spectral_test_grid(points: usize) -> Vec<Complex64> {
    assert!(points >= 2, "a one-point ray has no log spacing");
    let rays = [1.0, 2.0, 3.0, -1.0, -2.0, -3.0].map(|k| k * std::f64::consts::FRAC_PI_4);
    let mut grid = Vec::with_capacity(points * rays.len());
    let ratio = (20.0_f64 / 0.5).ln();
    for k in 0..points {
        let radius = 0.5 * (ratio * k as f64 / (points - 1).max(1) as f64).exp();
        for arg in rays {
            grid.push(Complex64::from_polar(radius, arg));
        }
    }
    grid
}

/// Max relative residual of the dispersion-function factorization over a
/// grid of off-axis points:
///
/// ```text
///     lambda(z) = i omega1 (z^2 - eta0^2) X(z) X(-z)    (index 1),
///     lambda(z) = -i omega1 X(z) X(-z)                  (index 0).
/// ```
pub fn factorization_residual(z_grid: &[Complex64], f: &Factorizer) -> Result<f64> {
    let p = f.params();
    let prefactor = prefactor(f)?;
    let mut worst = 0.0_f64;
    for &z in z_grid {
        let lhs = lambda(z, p)?;
        let rhs = prefactor(z) * f.x_of_z(z)? * f.x_of_z(-z)?;
        worst = worst.max((lhs - rhs).norm() / lhs.norm());
    }
    Ok(worst)
}

/// Max relative residual of the boundary-value factorization over a grid of
/// nonzero real nodes (both signs admitted):
///
/// ```text
///     lambda^{+-}(mu) = i omega1 (mu^2 - eta0^2) X^{+-}(mu) X(-mu),  mu > 0,
/// ```
///
/// with the `mu < 0` form obtained through the reflection
/// `lambda^{+}(-mu) = lambda^{-}(mu)`: the boundary limit transfers to the
/// factor on the cut, `lambda^{+-}(mu) = prefactor * X(mu) X^{-+}(-mu)`.
pub fn boundary_factorization_residual(mu_grid: &[f64], f: &Factorizer) -> Result<f64> {
    let p = f.params();
    let prefactor = prefactor(f)?;
    let mut worst = 0.0_f64;
    for &mu in mu_grid {
        assert!(mu != 0.0, "the origin joins the two cuts");
        let lhs = lambda_boundary(mu, p);
        let scale = prefactor(Complex64::new(mu, 0.0));
        let (rhs_plus, rhs_minus) = if mu > 0.0 {
            let pair = f.x_boundary(mu)?;
            let opposite = f.x_of_z(Complex64::new(-mu, 0.0))?;
            (scale * pair.plus * opposite, scale * pair.minus * opposite)
        } else {
            let pair = f.x_boundary(-mu)?;
            let this_side = f.x_of_z(Complex64::new(mu, 0.0))?;
            (
                scale * this_side * pair.minus,
                scale * this_side * pair.plus,
            )
        };
        worst = worst.max((lhs.plus - rhs_plus).norm() / lhs.plus.norm());
        worst = worst.max((lhs.minus - rhs_minus).norm() / lhs.minus.norm());
    }
    Ok(worst)
}

/// The regime-appropriate polynomial prefactor of the factorization.
fn prefactor(f: &Factorizer) -> Result<impl Fn(Complex64) -> Complex64> {
    let omega1 = f.params().omega1();
    let eta0_squared = match f.params().regime() {
        Regime::IndexOne => Some(eta0_explicit(f)?.powi(2)),
        Regime::IndexZero => None,
    };
    Ok(move |z: Complex64| match eta0_squared {
        Some(eta2) => I * omega1 * (z * z - eta2),
        None => -I * omega1,
    })
}

/// Residual of the nonlinear representation of `X` (index 1): the
/// factorization solved for `X(z)` under the jump representation,
///
/// ```text
///     X(z) = (1/(i omega1 pi)) int_0^inf s(mu)
///            / ((mu^2 - eta0^2) X(-mu) (mu - z)) dmu.
/// ```
///
/// Evaluating the right side needs only `X` on the negative half-axis, which
/// is why iterating this identity is a viable construction of `X` in
/// transport problems; here it stays a residual.
///
/// # Errors
///
/// [`Error::WrongRegime`] in the index-0 regime; quadrature and regime errors
/// propagated.
pub fn nonlinear_representation_residual(z: Complex64, f: &Factorizer) -> Result<f64> {
    let p = f.params();
    p.require(Regime::IndexOne)?;
    let eta0_squared = eta0_explicit(f)?.powi(2);
    let lhs = f.x_of_z(z)?;
    let integrand = |mu: f64| {
        let x_neg = f
            .x_of_z(Complex64::new(-mu, 0.0))
            .expect("negative half-axis is regular");
        s(mu) / ((mu * mu - eta0_squared) * x_neg * (mu - z))
    };
    let loose = f.residual_config();
    let head = integrate(&integrand, 0.0, 1.0, &loose)?;
    let tail = integrate(&integrand, 1.0, loose.cutoff, &loose)?;
    let rhs = (head + tail) / (I * p.omega1() * std::f64::consts::PI);
    Ok((lhs - rhs).norm() / lhs.norm())
}

/// Everything the discrete spectrum of one frequency amounts to.
#[derive(Debug, Clone, PartialEq)]
pub struct SpectrumResult {
    /// The explicit-formula zero (`None` in the index-0 regime).
    pub eta0: Option<Complex64>,
    /// Small-frequency asymptote (`None` in the index-0 regime).
    pub eta0_asymptotic: Option<Complex64>,
    /// Newton-oracle zero (`None` in the index-0 regime).
    pub eta0_oracle: Option<Complex64>,
    /// Max relative factorization residual over [`spectral_test_grid`].
    pub factorization_residual_max: f64,
    /// Number of dispersion-function zeros: twice the index.
    pub count: usize,
}

/// Assembles the [`SpectrumResult`] for a factorizer: zeros by both methods
/// where they exist, plus the factorization residual over a 60-point grid.
pub fn discrete_spectrum(f: &Factorizer) -> Result<SpectrumResult> {
    let p = f.params();
    let (eta0, asymptotic, oracle) = match p.regime() {
        Regime::IndexOne => (
            Some(eta0_explicit(f)?),
            Some(eta0_asymptotic(p.omega1())),
            Some(eta0_newton_oracle(p)?),
        ),
        Regime::IndexZero => (None, None, None),
    };
    Ok(SpectrumResult {
        eta0,
        eta0_asymptotic: asymptotic,
        eta0_oracle: oracle,
        factorization_residual_max: factorization_residual(&spectral_test_grid(10), f)?,
        count: 2 * p.index() as usize,
    })
}

/// What kind of eigen-object a coefficient bundle describes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EigenfunctionKind {
    /// Distributional mode of the continuous spectrum (real `eta`).
    Continuum,
    /// The discrete mode at the complex zero `eta0`.
    Discrete,
    /// `h1 = 1`, one of the two polynomial modes surviving at `omega1 = 0`.
    DegenerateH1,
    /// `h2 = x1 - mu`, the other polynomial mode at `omega1 = 0`.
    DegenerateH2,
}

/// Structured coefficients of an eigenfunction.
///
/// The continuum mode is a distribution — a principal-value part plus a
/// delta part — so no pointwise evaluation is offered; the meaningful
/// operation is integrating it against a test function, packaged here as the
/// Gaussian normalization integral.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Eigenfunction {
    /// Spectral parameter: real for the continuum, `eta0` for the discrete
    /// mode.
    pub eta: Complex64,
    /// Coefficient of `P 1/(eta - mu)`: `eta/sqrt(pi)`.
    pub pv_coefficient: Complex64,
    /// Coefficient of `delta(eta - mu)`: `exp(eta^2) lambda(eta)`; only the
    /// continuum mode carries it.
    pub singular_coefficient: Option<Complex64>,
    /// Which family this bundle belongs to.
    pub kind: EigenfunctionKind,
}

/// The continuum eigenfunction at real `eta`.
///
/// The delta coefficient uses the real-axis value
/// `lambda(eta) = lambda0(eta) - i omega1` (the principal-value branch of the
/// dispersion function along the continuous spectrum).
pub fn continuum_eigenfunction(eta: f64, p: &ProblemParams) -> Eigenfunction {
    Eigenfunction {
        eta: Complex64::new(eta, 0.0),
        pv_coefficient: Complex64::new(eta / SQRT_PI, 0.0),
        singular_coefficient: Some(
            (eta * eta).exp() * Complex64::new(lambda0_real(eta), -p.omega1()),
        ),
        kind: EigenfunctionKind::Continuum,
    }
}

/// The discrete eigenfunction coefficients at `eta0` (no delta part).
pub fn discrete_eigenfunction(f: &Factorizer) -> Result<Eigenfunction> {
    let eta0 = eta0_explicit(f)?;
    Ok(Eigenfunction {
        eta: eta0,
        pv_coefficient: eta0 / SQRT_PI,
        singular_coefficient: None,
        kind: EigenfunctionKind::Discrete,
    })
}

impl Eigenfunction {
    /// The normalization integral `n(eta)`: the eigenfunction applied to the
    /// Gaussian test function `exp(-mu^2)` over the whole velocity line,
    /// divided by `z0`. The normalization convention makes this identically 1
    /// for the continuum family:
    ///
    /// ```text
    ///     n(eta) = (1/z0) [ (eta/sqrt(pi)) P int_R exp(-mu^2)/(eta - mu) dmu
    ///                       + lambda(eta) ] = 1.
    /// ```
    ///
    /// The principal value is folded onto the half-line: the reflected piece
    /// `int_0^inf exp(-t^2)/(eta + t) dt` is regular, the rest is
    /// `-P int_0^inf exp(-t^2)/(t - eta) dt`, a half-line principal value at
    /// `eta`.
    ///
    /// # Panics
    ///
    /// Panics if called on a non-continuum bundle or outside
    /// `0 <= eta < cutoff` (the delta evaluation and the fold assume it).
    pub fn normalization(&self, p: &ProblemParams, cfg: &QuadratureConfig) -> Result<Complex64> {
        assert_eq!(self.kind, EigenfunctionKind::Continuum);
        let eta = self.eta.re;
        assert!((0.0..cfg.cutoff).contains(&eta));
        let delta_part = Complex64::new(lambda0_real(eta), -p.omega1());
        if eta == 0.0 {
            // The PV coefficient vanishes with eta; only the delta term acts.
            return Ok(delta_part / p.z0());
        }
        let reflected =
            integrate_semi_infinite(|t| Complex64::new((-t * t).exp() / (eta + t), 0.0), cfg)?;
        let principal = -cauchy_pv(|t| Complex64::new((-t * t).exp(), 0.0), eta, cfg)?;
        let pv_part = self.pv_coefficient * (reflected + principal);
        Ok((pv_part + delta_part) / p.z0())
    }
}

/// The decaying discrete mode of the half-space problem:
///
/// ```text
///     h(x1, mu) = (1/sqrt(pi)) exp(-x1 z0 / eta0) eta0 / (eta0 - mu).
/// ```
///
/// The selection rule `Re(z0/eta0) > 0` is exactly what makes `|h|` decay in
/// `x1`.
///
/// # Errors
///
/// [`Error::WrongRegime`] in the index-0 regime (no discrete solutions
/// exist); [`Error::DegenerateFrequency`] at `omega1 = 0`, where the mode
/// degenerates into the pair of [`degenerate_modes`].
pub fn discrete_mode(x1: f64, mu: f64, f: &Factorizer) -> Result<Complex64> {
    assert!(x1 >= 0.0, "the half-space coordinate is non-negative");
    let eta0 = eta0_explicit(f)?;
    let z0 = f.params().z0();
    Ok((-x1 * z0 / eta0).exp() / SQRT_PI * eta0 / (eta0 - mu))
}

/// The polynomial modes surviving at `omega1 = 0`: `h1 = 1` and
/// `h2 = x1 - mu`.
pub fn degenerate_modes(x1: f64, mu: f64) -> (f64, f64) {
    (1.0, x1 - mu)
}

/// Residual of the kinetic equation
///
/// ```text
///     mu dh/dx1 + z0 h = (1/sqrt(pi)) int_R exp(-mu'^2) h(x1, mu') dmu'
/// ```
///
/// for a candidate mode `h` at one phase-space point. The mode comes with
/// its own `x1` derivative `dh` — every candidate here has one in closed
/// form, and a finite difference would bury a `1e-12` residual under
/// cancellation noise. The collision integral folds onto the half-line and
/// runs at 100x-tightened tolerance so the quadrature clears the residual
/// the degenerate modes actually satisfy.
pub fn kinetic_equation_residual<H, D>(
    h: H,
    dh: D,
    x1: f64,
    mu: f64,
    p: &ProblemParams,
    cfg: &QuadratureConfig,
) -> Result<f64>
where
    H: Fn(f64, f64) -> Complex64,
    D: Fn(f64, f64) -> Complex64,
{
    let transport = mu * dh(x1, mu) + p.z0() * h(x1, mu);
    let tight = cfg.tightened(100.0);
    let collision =
        integrate_semi_infinite(|t| (-t * t).exp() * (h(x1, t) + h(x1, -t)), &tight)? / SQRT_PI;
    Ok((transport - collision).norm())
}
