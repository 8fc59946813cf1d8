//! The factorizing function `X(z)` and its integral representations.
//!
//! # Construction
//!
//! The homogeneous problem `X^+(mu) = G(mu) X^-(mu)` on the half-line is
//! solved by taking logarithms. With the continuous branch of `ln G` that
//! vanishes at infinity — `ln|G(u)| + i zeta(u)`, `zeta = theta - 2 pi`, in
//! the index-1 regime, and `ln|G(u)| + i theta(u)` in the index-0 regime —
//! define the Cauchy integral
//!
//! ```text
//!     V(z) = (1/(2 pi i)) int_0^inf d(u)/(u - z) du,      d(u) = 2 Theta(u),
//! ```
//!
//! and then
//!
//! ```text
//!     X(z) = exp(V(z)) / z        (index 1),
//!     X(z) = exp(V(z))            (index 0).
//! ```
//!
//! In the index-1 regime `d(0) = -2 pi i`, which gives `V` a logarithmic
//! singularity at the origin, `Re V(z) = ln|z| + O(1)`; the exponential turns
//! that into a simple zero cancelling the explicit `1/z`, so this `X` is the
//! solution *bounded* near the origin, with `z X(z) -> 1` at infinity.
//!
//! On the cut, `V(mu)` denotes the principal-value integral and the boundary
//! values obey the Sokhotski relations `V^{+-} = V +- Theta`, hence
//!
//! ```text
//!     X^{+-}(mu) = X(mu) exp(+-Theta(mu)),
//!     X^+ - X^- = 2 X sh Theta = 2 i s X^+ / lambda^+,
//!     (X^+ + X^-)/2 = X ch Theta.
//! ```
//!
//! # Representations as residuals
//!
//! `X` admits several independent integral representations (pure Cauchy
//! integrals of its own boundary data). Each is implemented here as a
//! *residual*: evaluate both sides by code paths that share as little as
//! possible and report the relative defect. These residuals are the library's
//! strongest self-test — they couple the angle computation, the quadrature,
//! the principal values, and the boundary calculus, and they only vanish if
//! everything does its job at once.
//!
//! A note on one sign: the reciprocal representation is sometimes quoted with
//! `+(1/(pi i)) int sh Theta / (X (tau - z)) dtau` on the right; the residual
//! identifies the correct sign as minus (the flipped version misses by `O(1)`,
//! see the regression test), consistent with its own on-cut and index-0
//! variants.

use num_complex::Complex64;
use std::sync::OnceLock;

use crate::dispersion::{lambda0_real, lambda_boundary, s, ProblemParams, Regime};
use crate::quadrature::{cauchy_pv, integrate, QuadratureConfig};
use crate::riemann::{default_grid, theta_from_parts, theta_unwrapped, AngleProfile};
use crate::{BoundaryPair, Error, Result};

const TAU: f64 = 2.0 * std::f64::consts::PI;
const I: Complex64 = Complex64::new(0.0, 1.0);

/// Everything needed to evaluate `V`, `Theta`, `X` and their boundary values
/// at one frequency. Immutable; evaluations are pure and cache only two
/// expensive constants (`V(±i)` at tightened tolerance, and `V1`).
pub struct Factorizer {
    params: ProblemParams,
    profile: AngleProfile,
    cfg: QuadratureConfig,
    v_at_i: OnceLock<Result<Complex64>>,
    v_at_minus_i: OnceLock<Result<Complex64>>,
    v1: OnceLock<Result<Complex64>>,
}

impl Factorizer {
    /// Builds a factorizer with the default quadrature configuration.
    pub fn new(params: ProblemParams) -> Result<Self> {
        Self::with_config(params, QuadratureConfig::default())
    }

    /// Builds a factorizer, unwrapping the angle along the default grid as a
    /// consistency gate: the measured winding must reproduce the regime the
    /// parameters were classified into.
    ///
    /// # Errors
    ///
    /// Propagates [`Error::GridTooCoarse`] from the unwrapping.
    pub fn with_config(params: ProblemParams, cfg: QuadratureConfig) -> Result<Self> {
        let profile = theta_unwrapped(&default_grid(cfg.cutoff), &params)?;
        assert_eq!(
            profile.index,
            params.index(),
            "winding measured by unwrapping contradicts the regime classification"
        );
        Ok(Self {
            params,
            profile,
            cfg,
            v_at_i: OnceLock::new(),
            v_at_minus_i: OnceLock::new(),
            v1: OnceLock::new(),
        })
    }

    /// The problem parameters this factorizer was built for.
    pub fn params(&self) -> &ProblemParams {
        &self.params
    }

    /// The unwrapped angle profile used for the consistency gate.
    pub fn profile(&self) -> &AngleProfile {
        &self.profile
    }

    /// The quadrature configuration in effect.
    pub fn config(&self) -> &QuadratureConfig {
        &self.cfg
    }

    /// The Cauchy density `d(u) = ln|G(u)| + i(theta(u) - 2 pi kappa)`,
    /// which equals `2 Theta(u)`.
    ///
    /// Evaluated pointwise from closed forms (one `lambda0` evaluation per
    /// call): integrands stay smooth, deterministic, and free of any
    /// interpolation error.
    fn density(&self, u: f64) -> Complex64 {
        let l0 = lambda0_real(u);
        let weight = s(u);
        let omega1 = self.params.omega1();
        let theta = theta_from_parts(l0, weight, &self.params);
        let shifted = theta - TAU * self.params.index() as f64;
        let above = l0 * l0 + (weight - omega1) * (weight - omega1);
        let below = l0 * l0 + (weight + omega1) * (weight + omega1);
        Complex64::new(0.5 * (above / below).ln(), shifted)
    }

    /// `Theta(mu)`: half the logarithm of the jump, `(1/2)[ln|G| + i zeta]`
    /// in the index-1 regime and `(1/2) ln G` (continuous branch) in the
    /// index-0 regime.
    pub fn half_log_jump(&self, mu: f64) -> Complex64 {
        0.5 * self.density(mu)
    }

    /// Rejects points on or numerically on the cut `[0, cutoff]`.
    ///
    /// Within `|Im z| < 1e-4` of the cut the plain Cauchy integral silently
    /// loses accuracy; callers must choose the boundary-value operations
    /// explicitly instead.
    fn check_off_cut(&self, z: Complex64) -> Result<()> {
        let on_axis = z.im == 0.0 && z.re >= 0.0;
        let near_cut = z.im.abs() < 1e-4 && z.re > 0.0 && z.re < self.cfg.cutoff;
        if on_axis || near_cut {
            Err(Error::OnCut(z))
        } else {
            Ok(())
        }
    }

    /// The Cauchy integral of the density with a given configuration; split
    /// at `u = 1` so the adaptive rule spends its effort near the origin,
    /// where the index-1 density approaches `-2 pi i` along a mildly varying
    /// path.
    fn v_integral(&self, z: Complex64, cfg: &QuadratureConfig) -> Result<Complex64> {
        let f = |u: f64| self.density(u) / (u - z);
        let head = integrate(f, 0.0, 1.0, cfg)?;
        let tail = integrate(f, 1.0, cfg.cutoff, cfg)?;
        Ok((head + tail) / (TAU * I))
    }

    /// `V(z)` off the cut.
    ///
    /// Vanishes like `V1/z` at infinity; in the index-1 regime it has the
    /// logarithmic origin behavior `Re V = ln|z| + O(1)`.
    ///
    /// # Errors
    ///
    /// [`Error::OnCut`] per [`Self::check_off_cut`]; [`Error::NonConvergence`]
    /// from quadrature.
    pub fn v_of_z(&self, z: Complex64) -> Result<Complex64> {
        self.check_off_cut(z)?;
        self.v_integral(z, &self.cfg)
    }

    /// `V(±i)` at 100x-tightened tolerance, cached: the explicit zero formula
    /// exponentiates `-V(i) - V(-i)`, so these two numbers propagate into
    /// every discrete-spectrum residual.
    pub(crate) fn v_at_i(&self, upper: bool) -> Result<Complex64> {
        let slot = if upper {
            &self.v_at_i
        } else {
            &self.v_at_minus_i
        };
        slot.get_or_init(|| {
            let z = Complex64::new(0.0, if upper { 1.0 } else { -1.0 });
            self.v_integral(z, &self.cfg.tightened(100.0))
        })
        .clone()
    }

    /// Principal value `V(mu)` on the cut.
    pub fn v_on_cut(&self, mu: f64) -> Result<Complex64> {
        Ok(cauchy_pv(|u| self.density(u), mu, &self.cfg)? / (TAU * I))
    }

    /// Boundary values `V^{+-}(mu) = V(mu) +- Theta(mu)` (Sokhotski).
    ///
    /// The jump is `2 Theta(mu)` and the half-sum is `V(mu)`, both exactly by
    /// construction; the numerical content is the principal value.
    pub fn v_boundary(&self, mu: f64) -> Result<BoundaryPair> {
        let principal = self.v_on_cut(mu)?;
        let theta = self.half_log_jump(mu);
        Ok(BoundaryPair {
            plus: principal + theta,
            minus: principal - theta,
        })
    }

    /// `X(z)`: `exp(V(z))/z` in the index-1 regime, `exp(V(z))` in the
    /// index-0 regime.
    ///
    /// # Errors
    ///
    /// [`Error::ZeroArgument`] at the index-1 pole `z = 0`; otherwise as
    /// [`Self::v_of_z`].
    pub fn x_of_z(&self, z: Complex64) -> Result<Complex64> {
        if self.params.regime() == Regime::IndexOne && z == Complex64::new(0.0, 0.0) {
            return Err(Error::ZeroArgument);
        }
        self.check_off_cut(z)?;
        let v = self.v_integral(z, &self.cfg)?;
        Ok(match self.params.regime() {
            Regime::IndexOne => v.exp() / z,
            Regime::IndexZero => v.exp(),
        })
    }

    /// The on-cut principal branch `X(mu)`: `exp(V(mu))/mu` resp.
    /// `exp(V(mu))` with the principal-value `V(mu)`.
    ///
    /// This is the natural midpoint of the boundary values: multiplying by
    /// `exp(+-Theta)` produces `X^{+-}`, so the hyperbolic identities below
    /// hold exactly by construction.
    pub fn x_on_cut(&self, mu: f64) -> Result<Complex64> {
        let v = self.v_on_cut(mu)?;
        Ok(match self.params.regime() {
            Regime::IndexOne => v.exp() / mu,
            Regime::IndexZero => v.exp(),
        })
    }

    /// Boundary values `X^{+-}(mu) = X(mu) exp(+-Theta(mu))`.
    pub fn x_boundary(&self, mu: f64) -> Result<BoundaryPair> {
        let x = self.x_on_cut(mu)?;
        let theta = self.half_log_jump(mu);
        Ok(BoundaryPair {
            plus: x * theta.exp(),
            minus: x * (-theta).exp(),
        })
    }

    /// The constant `V1 = -(1/(2 pi i)) int_0^inf d(u) du`, cached.
    ///
    /// Controls the first correction at infinity: `V(z) = V1/z + O(1/z^2)`,
    /// hence `z X(z) = 1 + V1/z + O(1/z^2)` in the index-1 regime. The same
    /// continuous branch of the density is used in both regimes.
    pub fn v1_constant(&self) -> Result<Complex64> {
        self.v1
            .get_or_init(|| {
                let f = |u: f64| self.density(u);
                let head = integrate(f, 0.0, 1.0, &self.cfg)?;
                let tail = integrate(f, 1.0, self.cfg.cutoff, &self.cfg)?;
                Ok(-(head + tail) / (TAU * I))
            })
            .clone()
    }

    // ------------------------------------------------------------------
    // Integral-representation residuals.
    // ------------------------------------------------------------------

    /// Residual of the boundary-jump representation: off the cut,
    ///
    /// ```text
    ///     X(z) = kappa0 + (1/(2 pi i)) int_0^inf (X^+(u) - X^-(u))/(u - z) du,
    /// ```
    ///
    /// with `kappa0 = 0` in the index-1 regime and `1` in the index-0 regime
    /// (where `X(inf) = 1` survives the contour at infinity).
    ///
    /// The jump `X^+ - X^-` is evaluated as `2 X(u) sh Theta(u)` through the
    /// principal-value path, making left and right sides genuinely different
    /// pipelines.
    pub fn jump_representation_residual(&self, z: Complex64) -> Result<f64> {
        let lhs = self.x_of_z(z)?;
        let integral = self.adaptive_cut_integral(|u| {
            Ok(2.0 * self.x_on_cut(u)? * self.half_log_jump(u).sinh() / (u - z))
        })?;
        let rhs = self.leading_constant() + integral / (TAU * I);
        Ok((lhs - rhs).norm() / lhs.norm())
    }

    /// Residual of the spectral-weight representation: same Cauchy integral
    /// with the jump written through the dispersion function,
    ///
    /// ```text
    ///     X(z) = kappa0 + (1/pi) int_0^inf s(u) X^+(u) / lambda^+(u) * du/(u - z),
    /// ```
    ///
    /// using `X^+ - X^- = 2 i s X^+ / lambda^+`.
    pub fn weighted_jump_representation_residual(&self, z: Complex64) -> Result<f64> {
        let lhs = self.x_of_z(z)?;
        let integral = self.adaptive_cut_integral(|u| {
            let x_plus = self.x_boundary(u)?.plus;
            let lambda_plus = lambda_boundary(u, &self.params).plus;
            Ok(s(u) * x_plus / (lambda_plus * (u - z)))
        })?;
        let rhs = self.leading_constant() + integral / std::f64::consts::PI;
        Ok((lhs - rhs).norm() / lhs.norm())
    }

    /// Defect of the index-1 normalization
    /// `(1/pi) int_0^inf s(u) X^+(u)/lambda^+(u) du = -1`
    /// (the `z -> inf` limit of the spectral-weight representation against
    /// `z X -> 1`).
    ///
    /// # Errors
    ///
    /// [`Error::WrongRegime`] in the index-0 regime, where the corresponding
    /// limit is settled by `X(inf) = 1` instead and carries no constraint.
    pub fn normalization_residual(&self) -> Result<f64> {
        self.params.require(Regime::IndexOne)?;
        let integral = self.adaptive_cut_integral(|u| {
            let x_plus = self.x_boundary(u)?.plus;
            let lambda_plus = lambda_boundary(u, &self.params).plus;
            Ok(s(u) * x_plus / lambda_plus)
        })?;
        Ok((integral / std::f64::consts::PI + 1.0).norm())
    }

    /// Residual of the reciprocal representation off the cut:
    ///
    /// ```text
    ///     1/X(z) - z + V1 = -(1/(pi i)) int_0^inf sh Theta(tau)
    ///                                   / (X(tau) (tau - z)) dtau   (index 1),
    ///     1/X(z)          = 1 - the same integral                   (index 0).
    /// ```
    pub fn reciprocal_representation_residual(&self, z: Complex64) -> Result<f64> {
        let lhs = self.reciprocal_lhs(1.0 / self.x_of_z(z)?, z)?;
        let integral = self.adaptive_cut_integral(|tau| {
            Ok(self.half_log_jump(tau).sinh() / (self.x_on_cut(tau)? * (tau - z)))
        })?;
        let rhs = self.leading_constant() - integral / (std::f64::consts::PI * I);
        Ok((lhs - rhs).norm() / lhs.norm().max(1.0))
    }

    /// Residual of the on-cut reciprocal representation (principal value):
    ///
    /// ```text
    ///     ch Theta(mu)/X(mu) - mu + V1 = -(1/(pi i)) P int_0^inf sh Theta(tau)
    ///                                    / (X(tau)(tau - mu)) dtau   (index 1),
    ///     ch Theta(mu)/X(mu)           = 1 - the same P-integral     (index 0).
    /// ```
    pub fn reciprocal_on_cut_residual(&self, mu: f64) -> Result<f64> {
        let half_sum_recip = self.half_log_jump(mu).cosh() / self.x_on_cut(mu)?;
        let lhs = self.reciprocal_lhs(half_sum_recip, Complex64::new(mu, 0.0))?;
        let integrand = |tau: f64| {
            self.half_log_jump(tau).sinh()
                / self
                    .x_on_cut(tau)
                    .expect("principal branch on the open cut")
        };
        let integral = cauchy_pv(integrand, mu, &self.residual_config())?;
        let rhs = self.leading_constant() - integral / (std::f64::consts::PI * I);
        Ok((lhs - rhs).norm() / lhs.norm().max(1.0))
    }

    /// Residual of the on-cut half-sum representation:
    ///
    /// ```text
    ///     X(mu) ch Theta(mu) = (1/(pi i)) P int_0^inf X(tau) sh Theta(tau)
    ///                          / (tau - mu) dtau                    (index 1),
    ///     X(mu) ch Theta(mu) = 1 + (1/pi) P int_0^inf s X^+/lambda^+
    ///                          / (tau - mu) dtau                    (index 0),
    /// ```
    ///
    /// the two kernels being the same jump density in different clothes.
    pub fn half_sum_representation_residual(&self, mu: f64) -> Result<f64> {
        let lhs = self.x_on_cut(mu)? * self.half_log_jump(mu).cosh();
        let rhs = match self.params.regime() {
            Regime::IndexOne => {
                let integrand = |tau: f64| {
                    self.x_on_cut(tau)
                        .expect("principal branch on the open cut")
                        * self.half_log_jump(tau).sinh()
                };
                cauchy_pv(integrand, mu, &self.residual_config())? / (std::f64::consts::PI * I)
            }
            Regime::IndexZero => {
                let integrand = |tau: f64| {
                    let x_plus = self
                        .x_boundary(tau)
                        .expect("principal branch on the open cut")
                        .plus;
                    s(tau) * x_plus / lambda_boundary(tau, &self.params).plus
                };
                1.0 + cauchy_pv(integrand, mu, &self.residual_config())? / std::f64::consts::PI
            }
        };
        Ok((lhs - rhs).norm() / lhs.norm())
    }

    /// Configuration for the outer integral of a nested residual: one digit
    /// looser than the inner principal values, whose ~`abs_tol` noise the
    /// outer error estimator would otherwise chase forever.
    pub(crate) fn residual_config(&self) -> QuadratureConfig {
        QuadratureConfig {
            abs_tol: self.cfg.abs_tol * 10.0,
            rel_tol: self.cfg.rel_tol * 10.0,
            ..self.cfg
        }
    }

    /// `0` in the index-1 regime, `1` in the index-0 regime: the value the
    /// closing contour at infinity contributes to each representation.
    fn leading_constant(&self) -> Complex64 {
        match self.params.regime() {
            Regime::IndexOne => Complex64::new(0.0, 0.0),
            Regime::IndexZero => Complex64::new(1.0, 0.0),
        }
    }

    /// Left side of the reciprocal representations from the reciprocal value
    /// at the probe point (off-cut `1/X(z)`, on-cut `ch Theta/X`).
    fn reciprocal_lhs(&self, reciprocal: Complex64, z: Complex64) -> Result<Complex64> {
        Ok(match self.params.regime() {
            Regime::IndexOne => reciprocal - z + self.v1_constant()?,
            Regime::IndexZero => reciprocal,
        })
    }

    /// Adaptive integral over the cut of a fallible integrand, split at 1
    /// like the `V` integrals. The integrand's own errors surface as poisoned
    /// values that fail the tolerance check rather than panicking mid-rule,
    /// except for principal-branch evaluations on the open cut, which cannot
    /// fail for interior nodes.
    fn adaptive_cut_integral<F>(&self, f: F) -> Result<Complex64>
    where
        F: Fn(f64) -> Result<Complex64>,
    {
        let cfg = self.residual_config();
        let g = |u: f64| f(u).expect("integrand defined on the open cut");
        let head = integrate(&g, 0.0, 1.0, &cfg)?;
        let tail = integrate(&g, 1.0, cfg.cutoff, &cfg)?;
        Ok(head + tail)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn factorizer(omega1: f64) -> Factorizer {
        Factorizer::new(ProblemParams::new(omega1).unwrap()).unwrap()
    }

    #[test]
    fn v_frozen_values_off_cut() {
        let f = factorizer(0.3);
        let cases = [
            (
                Complex64::new(0.0, 1.0),
                Complex64::new(-4.271_662_569_958_339_4e-1, -5.812_647_709_000_603_5e-1),
            ),
            (
                Complex64::new(0.0, -1.0),
                Complex64::new(-2.288_149_374_739_836_3e-1, 7.724_337_209_510_306_9e-1),
            ),
            (
                Complex64::new(2.0, 2.0),
                Complex64::new(1.144_615_803_549_203_4e-1, -3.523_537_805_905_231_9e-1),
            ),
            (
                Complex64::new(-1.0, 0.0),
                Complex64::new(-6.178_886_300_878_812_0e-1, 1.034_968_224_632_363_8e-1),
            ),
        ];
        for (z, expected) in cases {
            let got = f.v_of_z(z).unwrap();
            assert!(
                (got - expected).norm() < 1e-8,
                "V({z}) = {got} != {expected}"
            );
        }
        let f = factorizer(1.0);
        let got = f.v_of_z(Complex64::new(0.0, 1.0)).unwrap();
        let expected = Complex64::new(-1.351_734_494_240_698_9e-1, 1.650_417_312_623_435_3e-1);
        assert!((got - expected).norm() < 1e-8);
    }

    #[test]
    fn v_tightened_path_agrees_with_plain_path() {
        let f = factorizer(0.3);
        let plain = f.v_of_z(Complex64::new(0.0, 1.0)).unwrap();
        let tight = f.v_at_i(true).unwrap();
        assert!((plain - tight).norm() < 1e-9);
    }

    #[test]
    fn v_decays_at_infinity() {
        let f = factorizer(0.3);
        let z = Complex64::from_polar(1e3, 2.0);
        // |V| ~ |V1|/|z| ~ 1e-3.
        assert!(f.v_of_z(z).unwrap().norm() < 2e-3);
    }

    #[test]
    fn v_has_logarithmic_origin_in_index_one() {
        // Re V(z) = ln|z| + O(1) near 0: the shifted angle contributes
        // -(theta(0) - 2 pi)/(2 pi) = +1 as the coefficient of ln z.
        let f = factorizer(0.3);
        let v = f.v_of_z(Complex64::new(-1e-4, 0.0)).unwrap();
        let ratio = v.re / (1e-4_f64).ln();
        assert!(
            (0.9..=1.05).contains(&ratio),
            "Re V(-1e-4) = {} should track ln(1e-4) = {}",
            v.re,
            (1e-4_f64).ln()
        );
    }

    #[test]
    fn v_principal_value_frozen() {
        let f = factorizer(0.3);
        let got = f.v_on_cut(0.5).unwrap();
        let expected = Complex64::new(2.756_942_745_223_915_9e-1, 3.143_262_949_952_668_2e-1);
        assert!((got - expected).norm() < 1e-9);
        let got = f.v_on_cut(1.0).unwrap();
        let expected = Complex64::new(1.126_339_296_755_267_4, 1.232_088_151_345_424_3e-1);
        assert!((got - expected).norm() < 1e-9);

        let f = factorizer(1.0);
        let got = f.v_on_cut(0.5).unwrap();
        let expected = Complex64::new(1.818_501_615_544_540_5e-2, 5.012_064_993_605_296_3e-1);
        assert!((got - expected).norm() < 1e-9);
    }

    #[test]
    fn v_boundary_sokhotski_structure() {
        let f = factorizer(0.3);
        let mu = 0.6;
        let pair = f.v_boundary(mu).unwrap();
        let theta = f.half_log_jump(mu);
        assert!((pair.jump() - 2.0 * theta).norm() < 1e-15);
        assert!((pair.half_sum() - f.v_on_cut(mu).unwrap()).norm() < 1e-15);
        // The upper boundary value is the limit of V from above the cut
        // (one-sided convergence is O(eps); Richardson removes the leading
        // term). The nearest admissible off-cut line is |Im z| = 1e-4.
        let off = |eps: f64| f.v_of_z(Complex64::new(mu, eps)).unwrap();
        let extrapolated = 2.0 * off(1e-4) - off(2e-4);
        assert!((extrapolated - pair.plus).norm() < 1e-6);
    }

    #[test]
    fn x_frozen_values() {
        let f = factorizer(0.3);
        let got = f.x_of_z(Complex64::new(0.0, 1.0)).unwrap();
        let expected = Complex64::new(-3.581_960_639_065_442_4e-1, -5.452_180_630_029_254_1e-1);
        assert!((got - expected).norm() < 1e-8);
        let got = f.x_of_z(Complex64::new(-1.0, 0.0)).unwrap();
        let expected = Complex64::new(-5.361_968_032_087_945_9e-1, -5.569_366_343_438_320_7e-2);
        assert!((got - expected).norm() < 1e-8);

        let f = factorizer(1.0);
        let got = f.x_of_z(Complex64::new(-1.0, 0.0)).unwrap();
        let expected = Complex64::new(1.026_641_878_066_381_3, 1.480_066_393_513_911_6e-1);
        assert!((got - expected).norm() < 1e-8);
    }

    #[test]
    fn x_boundary_frozen_and_jump_coefficient() {
        let f = factorizer(0.3);
        let pair = f.x_boundary(0.5).unwrap();
        let expected_plus = Complex64::new(-8.678_929_585_419_208_3e-1, -1.860_607_159_447_814_9);
        let expected_minus = Complex64::new(-2.958_355_202_097_570_3, 1.638_077_690_402_826_5);
        assert!((pair.plus - expected_plus).norm() < 1e-8);
        assert!((pair.minus - expected_minus).norm() < 1e-8);

        // Independent check of the boundary relation: the ratio must
        // reproduce the Riemann coefficient.
        for mu in [0.5, 1.2, 2.5] {
            let pair = f.x_boundary(mu).unwrap();
            let g = crate::riemann::coefficient_g(mu, f.params()).unwrap();
            assert!((pair.plus / pair.minus - g).norm() < 1e-9);
        }
    }

    #[test]
    fn x_jump_identities_two_ways() {
        let f = factorizer(0.3);
        let mu = 0.8;
        let pair = f.x_boundary(mu).unwrap();
        let x = f.x_on_cut(mu).unwrap();
        let theta = f.half_log_jump(mu);
        // By construction.
        assert!((pair.jump() - 2.0 * x * theta.sinh()).norm() < 1e-14);
        assert!((pair.half_sum() - x * theta.cosh()).norm() < 1e-14);
        // Through the dispersion function: X^+ - X^- = 2 i s X^+/lambda^+.
        let lam = lambda_boundary(mu, f.params());
        let via_dispersion = 2.0 * I * s(mu) * pair.plus / lam.plus;
        assert!((pair.jump() - via_dispersion).norm() < 1e-12);
        // And 1/X^+ - 1/X^- = -2 sh Theta / X.
        let reciprocal_jump = 1.0 / pair.plus - 1.0 / pair.minus;
        assert!((reciprocal_jump + 2.0 * theta.sinh() / x).norm() < 1e-12);
    }

    #[test]
    fn x_limits_at_infinity() {
        // Index 1: z X(z) -> 1, with first correction V1/z.
        let f = factorizer(0.3);
        let z = Complex64::from_polar(1e3, 3.0 * std::f64::consts::FRAC_PI_4);
        let zx = z * f.x_of_z(z).unwrap();
        assert!((zx - 1.0).norm() < 1e-3);
        let v1 = f.v1_constant().unwrap();
        assert!((zx - 1.0 - v1 / z).norm() < 1e-4);
        // Index 0: X -> 1.
        let f = factorizer(1.0);
        assert!((f.x_of_z(z).unwrap() - 1.0).norm() < 1e-3);
    }

    #[test]
    fn v1_frozen_and_oracle_checked() {
        let f = factorizer(0.3);
        let v1 = f.v1_constant().unwrap();
        let expected = Complex64::new(9.364_210_277_402_326_1e-1, -2.133_889_915_019_139_0e-1);
        assert!((v1 - expected).norm() < 1e-9);

        // Index-0 value against a brute-force trapezoid of the density.
        let f = factorizer(1.0);
        let v1 = f.v1_constant().unwrap();
        let nodes = 1_000_000usize;
        let h = 7.0 / nodes as f64;
        let mut acc = Complex64::new(0.0, 0.0);
        for k in 0..=nodes {
            let u = (k as f64 * h).max(1e-12);
            let weight = if k == 0 || k == nodes { 0.5 } else { 1.0 };
            acc += weight * f.density(u);
        }
        let oracle = -acc * h / (TAU * I);
        assert!((v1 - oracle).norm() < 1e-8);

        // The density dies like 2 s/omega1 as the frequency grows, and V1
        // with it.
        let v1_large = factorizer(5.0).v1_constant().unwrap();
        assert!(v1_large.norm() < 0.06);
    }

    #[test]
    fn reciprocal_representation_off_cut() {
        let f = factorizer(0.3);
        assert!(
            f.reciprocal_representation_residual(Complex64::new(-2.0, 0.0))
                .unwrap()
                < 1e-8
        );
        let f = factorizer(0.1);
        assert!(
            f.reciprocal_representation_residual(Complex64::new(0.0, 3.0))
                .unwrap()
                < 1e-8
        );
    }

    #[test]
    fn reciprocal_representation_sign_regression() {
        // The Cauchy kernel enters with a minus sign; the flipped sign is
        // wrong by O(1) and must stay wrong (guards against "fixing" it back
        // to the occasionally-quoted plus form).
        let f = factorizer(0.3);
        let z = Complex64::new(-2.0, 0.0);
        let lhs = 1.0 / f.x_of_z(z).unwrap() - z + f.v1_constant().unwrap();
        let integral = f
            .adaptive_cut_integral(|tau| {
                Ok(f.half_log_jump(tau).sinh() / (f.x_on_cut(tau)? * (tau - z)))
            })
            .unwrap();
        let plus_version = integral / (std::f64::consts::PI * I);
        assert!((lhs - plus_version).norm() > 0.1);
        assert!((lhs + plus_version).norm() < 1e-8);
    }

    #[test]
    fn reciprocal_representation_on_cut() {
        assert!(factorizer(0.3).reciprocal_on_cut_residual(0.8).unwrap() < 1e-8);
        assert!(factorizer(1.0).reciprocal_on_cut_residual(0.5).unwrap() < 1e-8);
    }

    #[test]
    fn jump_representations_both_regimes() {
        let f = factorizer(0.3);
        for z in [Complex64::new(-1.0, 0.0), Complex64::new(0.0, 2.0)] {
            assert!(f.jump_representation_residual(z).unwrap() < 1e-7);
            assert!(f.weighted_jump_representation_residual(z).unwrap() < 1e-7);
        }
        let f = factorizer(1.0);
        for z in [Complex64::new(-1.0, 0.0), Complex64::new(1.0, 2.0)] {
            assert!(f.jump_representation_residual(z).unwrap() < 1e-7);
            assert!(f.weighted_jump_representation_residual(z).unwrap() < 1e-7);
        }
    }

    #[test]
    fn half_sum_representation_on_cut() {
        let f = factorizer(0.3);
        for mu in [0.3, 0.9, 2.0] {
            assert!(f.half_sum_representation_residual(mu).unwrap() < 1e-7);
        }
        assert!(
            factorizer(1.0)
                .half_sum_representation_residual(0.7)
                .unwrap()
                < 1e-7
        );
    }

    #[test]
    fn normalization_defect_and_regime_gate() {
        assert!(factorizer(0.3).normalization_residual().unwrap() < 1e-8);
        assert!(matches!(
            factorizer(1.0).normalization_residual(),
            Err(Error::WrongRegime { .. })
        ));
    }

    #[test]
    fn cut_rejection() {
        let f = factorizer(0.3);
        assert!(matches!(
            f.v_of_z(Complex64::new(0.5, 0.0)),
            Err(Error::OnCut(_))
        ));
        assert!(matches!(
            f.v_of_z(Complex64::new(0.5, 1e-5)),
            Err(Error::OnCut(_))
        ));
        assert!(matches!(
            f.x_of_z(Complex64::new(0.0, 0.0)),
            Err(Error::ZeroArgument)
        ));
        // The negative half-axis is regular.
        assert!(f.x_of_z(Complex64::new(-0.5, 0.0)).is_ok());
    }
}
