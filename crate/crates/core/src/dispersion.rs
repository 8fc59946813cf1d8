//! The dispersion function of the oscillating half-space problem.
//!
//! Separating variables in the kinetic equation produces the function
//!
//! ```text
//!     lambda(z) = -i*omega1 + lambda0(z),
//!     lambda0(z) = (1/sqrt(pi)) * int_R tau*exp(-tau^2) / (tau - z) dtau,
//! ```
//!
//! analytic off the real axis. `lambda0` is even, satisfies the reflection
//! rule `lambda0(conj z) = conj(lambda0(z))`, and its boundary values from
//! above/below the axis differ by the Sokhotski jump `2i*s(mu)` with
//! `s(mu) = sqrt(pi)*mu*exp(-mu^2)`:
//!
//! ```text
//!     lambda^{+-}(mu) = lambda0(mu) +- i*s(mu) - i*omega1.
//! ```
//!
//! On the axis the principal-value integral collapses to the purely real
//! one-dimensional form
//!
//! ```text
//!     lambda0(mu) = 1 - 2 mu^2 int_0^1 exp(-mu^2 (1 - t^2)) dt,
//! ```
//!
//! which is what [`lambda0_real`] evaluates (by a fixed Gauss–Legendre rule —
//! the integrand is entire, so the rule converges geometrically). Off the
//! axis, [`lambda0_complex`] uses the Faddeeva function `w(z)` in the upper
//! half-plane, `lambda0(z) = 1 + i*sqrt(pi)*z*w(z)`, and reflection below it;
//! this stays accurate arbitrarily close to the axis, where direct quadrature
//! of the defining integral loses digits. The two routes are independent of
//! each other and cross-checked in the tests.
//!
//! `lambda0` has exactly two real zeros `±mu0`, `mu0 = 0.924...`, located by
//! [`find_mu0`]. Where the *complex* zeros of `lambda` sit — and whether they
//! exist at all — depends on `omega1` and is the business of the [`crate::riemann`]
//! and [`crate::spectrum`] modules; [`ProblemParams`] records the resulting
//! regime classification.

use num_complex::Complex64;
use std::sync::OnceLock;

use errorfunctions::ComplexErrorFunctions;

use crate::{Error, Result};

pub(crate) const SQRT_PI: f64 = 1.772_453_850_905_516;

/// Half-width of the guard bands around the classification thresholds.
pub const GUARD_BAND: f64 = 1e-3;

/// The envelope threshold `max_mu sqrt(s^2(mu) - lambda0^2(mu)) ~ 0.7328`.
///
/// For `omega1` above this value the boundary curve `G(mu)` is confined to
/// the right half-plane, which forces winding number zero. It is therefore an
/// *upper bound* for the index transition, and the value usually quoted for
/// it — but not the transition itself, which happens earlier, at
/// [`index_transition`]; between the two the curve dips into the left
/// half-plane without encircling the origin. The constant here is frozen for
/// cheap guard-band checks; `riemann::critical_frequency` recomputes it by
/// optimization and the tests pin the two against each other.
pub const ENVELOPE_THRESHOLD: f64 = 0.732_758_710_001_408_8;

/// The Gaussian-envelope weight `s(mu) = sqrt(pi) * mu * exp(-mu^2)`.
///
/// Half the Sokhotski jump of `lambda0` across the axis, and the decay
/// envelope that justifies truncating every half-line integral in the
/// library. Odd in `mu`, with its positive maximum at `mu = 1/sqrt(2)`.
pub fn s(mu: f64) -> f64 {
    SQRT_PI * mu * (-mu * mu).exp()
}

/// 64-point Gauss–Legendre nodes and weights, mapped to `[0, 1]`.
///
/// Generated once by Newton iteration on the Legendre recurrence (the
/// standard construction: Chebyshev initial guesses, derivative from the
/// recurrence pair). For the entire integrands below, 64 points deliver full
/// double precision up to `mu = 7`, the library's truncation point.
fn gauss_legendre_unit() -> &'static [(f64, f64); 64] {
    static NODES: OnceLock<[(f64, f64); 64]> = OnceLock::new();
    NODES.get_or_init(|| {
        const N: usize = 64;
        let mut table = [(0.0_f64, 0.0_f64); N];
        for (i, slot) in table.iter_mut().enumerate() {
            let mut x = (std::f64::consts::PI * (i as f64 + 0.75) / (N as f64 + 0.5)).cos();
            let mut dp = 0.0;
            for _ in 0..100 {
                // Three-term recurrence up to P_64 and its derivative.
                let mut p_prev = 1.0_f64;
                let mut p = x;
                for k in 1..N {
                    let kf = k as f64;
                    let p_next = ((2.0 * kf + 1.0) * x * p - kf * p_prev) / (kf + 1.0);
                    p_prev = p;
                    p = p_next;
                }
                dp = N as f64 * (x * p - p_prev) / (x * x - 1.0);
                let delta = p / dp;
                x -= delta;
                if delta.abs() < 1e-15 {
                    break;
                }
            }
            let weight = 2.0 / ((1.0 - x * x) * dp * dp);
            // Map [-1, 1] -> [0, 1].
            *slot = (0.5 * (1.0 + x), 0.5 * weight);
        }
        table
    })
}

/// `lambda0` on the real axis: `1 - 2 mu^2 int_0^1 exp(-mu^2(1 - t^2)) dt`.
///
/// Even in `mu`; equals 1 at the origin, decreases through its unique
/// positive zero `mu0` (see [`find_mu0`]) and approaches `-1/(2 mu^2)` from
/// below. Accurate to machine precision for `|mu| <= 7` (all library call
/// sites); beyond that the fixed rule slowly loses digits as the integrand
/// turns into a boundary layer at `t = 1`.
pub fn lambda0_real(mu: f64) -> f64 {
    let mu2 = mu * mu;
    let mut integral = 0.0;
    for &(t, w) in gauss_legendre_unit() {
        integral += w * (-mu2 * (1.0 - t * t)).exp();
    }
    1.0 - 2.0 * mu2 * integral
}

/// `lambda0` off the real axis, via the Faddeeva function.
///
/// For `Im z > 0`, `lambda0(z) = 1 + i*sqrt(pi)*z*w(z)`; the lower half-plane
/// follows from `lambda0(conj z) = conj(lambda0(z))`. Even in `z`.
///
/// # Errors
///
/// [`Error::OnRealAxis`] when `Im z = 0`: the axis is the cut, where the
/// two-sided limits differ — use [`lambda0_real`] or [`lambda_boundary`].
pub fn lambda0_complex(z: Complex64) -> Result<Complex64> {
    if z.im == 0.0 {
        return Err(Error::OnRealAxis(z.re));
    }
    if z.im > 0.0 {
        let i = Complex64::new(0.0, 1.0);
        Ok(1.0 + i * SQRT_PI * z * z.w())
    } else {
        let upper = lambda0_complex(z.conj())?;
        Ok(upper.conj())
    }
}

/// The dispersion function `lambda(z) = -i*omega1 + lambda0(z)`.
///
/// Tends to `-i*omega1` at infinity. Its zero structure classifies the
/// problem: a conjugate-symmetric pair `±eta0` in the index-1 regime, none in
/// the index-0 regime.
///
/// # Errors
///
/// As [`lambda0_complex`].
pub fn lambda(z: Complex64, p: &ProblemParams) -> Result<Complex64> {
    Ok(lambda0_complex(z)? - Complex64::new(0.0, p.omega1))
}

/// Two-sided boundary values of a function across a cut.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BoundaryPair {
    /// Limit from the upper half-plane.
    pub plus: Complex64,
    /// Limit from the lower half-plane.
    pub minus: Complex64,
}

impl BoundaryPair {
    /// The Sokhotski jump `plus - minus`.
    pub fn jump(&self) -> Complex64 {
        self.plus - self.minus
    }

    /// The principal-value half-sum `(plus + minus)/2`.
    pub fn half_sum(&self) -> Complex64 {
        0.5 * (self.plus + self.minus)
    }
}

/// Boundary values `lambda^{+-}(mu) = lambda0(mu) +- i s(mu) - i omega1`.
///
/// The jump is `2i*s(mu)` and the half-sum is `lambda0(mu) - i*omega1`
/// identically; both halves reduce to `1 - i*omega1` at `mu = 0`.
pub fn lambda_boundary(mu: f64, p: &ProblemParams) -> BoundaryPair {
    let base = Complex64::new(lambda0_real(mu), -p.omega1);
    let jump_half = Complex64::new(0.0, s(mu));
    BoundaryPair {
        plus: base + jump_half,
        minus: base - jump_half,
    }
}

/// Large-`|z|` tail of the dispersion function:
/// `-i*omega1 - 1/(2 z^2) - 3/(4 z^4) - 15/(8 z^6)`.
///
/// The omitted term is `105/(16 z^8)`, so the truncation error decays like
/// `|z|^-8`.
///
/// # Errors
///
/// [`Error::TooClose`] for `|z| <= 3`, where the asymptotic series has not
/// yet taken over.
pub fn laurent_tail(z: Complex64, p: &ProblemParams) -> Result<Complex64> {
    let radius = z.norm();
    if radius <= 3.0 {
        return Err(Error::TooClose(radius));
    }
    let z2 = z * z;
    let z4 = z2 * z2;
    let z6 = z4 * z2;
    Ok(Complex64::new(0.0, -p.omega1) - 0.5 / z2 - 0.75 / z4 - 15.0 / (8.0 * z6))
}

/// The positive real zero `mu0 = 0.924...` of [`lambda0_real`].
///
/// Located by bisection on `[0.5, 1.5]`, where `lambda0` decreases through
/// zero (`lambda0(0.5) ~ 0.58 > 0 > lambda0(1.5) ~ -0.29`), run to interval
/// collapse so the residual is at roundoff; cached after the first call. By
/// evenness `-mu0` is the other real zero.
pub fn find_mu0() -> f64 {
    static MU0: OnceLock<f64> = OnceLock::new();
    *MU0.get_or_init(|| {
        let (mut lo, mut hi) = (0.5_f64, 1.5_f64);
        debug_assert!(lambda0_real(lo) > 0.0 && lambda0_real(hi) < 0.0);
        while hi - lo > f64::EPSILON * lo {
            let mid = 0.5 * (lo + hi);
            if lambda0_real(mid) > 0.0 {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        0.5 * (lo + hi)
    })
}

/// The true index-transition frequency: `s(mu0) ~ 0.69729`.
///
/// The winding number of the boundary coefficient `G = lambda^+/lambda^-`
/// can only change where `G` passes through zero or infinity on the contour.
/// `lambda^-` never vanishes for positive frequency (`Im lambda^- < 0`), and
/// `lambda^+(mu) = lambda0(mu) + i(s(mu) - omega1)` vanishes exactly when
/// `mu = mu0` and `omega1 = s(mu0)`: the conjugate zero pair `±eta0` of the
/// dispersion function lands on the cut at `±mu0` and annihilates there. So
/// the index is 1 below this frequency and 0 above it — including the window
/// up to [`ENVELOPE_THRESHOLD`], where the curve `G` still enters the left
/// half-plane but no longer encircles the origin.
pub fn index_transition() -> f64 {
    s(find_mu0())
}

/// Which index regime a frequency belongs to.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Regime {
    /// Winding number 1: the dispersion function has the zero pair `±eta0`.
    IndexOne,
    /// Winding number 0: no discrete spectrum.
    IndexZero,
}

/// Immutable problem parameters: the frequency, the derived constant
/// `z0 = 1 - i*omega1`, and the index regime.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ProblemParams {
    omega1: f64,
    z0: Complex64,
    regime: Regime,
}

impl ProblemParams {
    /// Classifies a frequency and packages the derived constants.
    ///
    /// The regime is `IndexOne` for `omega1 < ` [`index_transition`] and
    /// `IndexZero` above it.
    ///
    /// # Errors
    ///
    /// [`Error::CriticalGuardBand`] when `omega1` lies within [`GUARD_BAND`]
    /// of either classification threshold: at [`index_transition`] the index
    /// genuinely jumps (the coefficient develops a zero on the contour, and
    /// phase unwrapping would need ever denser grids), and at
    /// [`ENVELOPE_THRESHOLD`] the closed-form branch formulas for the angle
    /// sit at their domain boundary. Neither point gets assigned behavior.
    ///
    /// # Panics
    ///
    /// Panics for negative or non-finite `omega1`.
    pub fn new(omega1: f64) -> Result<Self> {
        assert!(
            omega1.is_finite() && omega1 >= 0.0,
            "omega1 must be finite and non-negative, got {omega1}"
        );
        let transition = index_transition();
        for threshold in [transition, ENVELOPE_THRESHOLD] {
            if (omega1 - threshold).abs() < GUARD_BAND {
                return Err(Error::CriticalGuardBand {
                    omega1,
                    threshold,
                    band: GUARD_BAND,
                });
            }
        }
        let regime = if omega1 < transition {
            Regime::IndexOne
        } else {
            Regime::IndexZero
        };
        Ok(Self {
            omega1,
            z0: Complex64::new(1.0, -omega1),
            regime,
        })
    }

    /// The dimensionless oscillation frequency.
    pub fn omega1(&self) -> f64 {
        self.omega1
    }

    /// The constant `z0 = 1 - i*omega1`.
    pub fn z0(&self) -> Complex64 {
        self.z0
    }

    /// The index regime this frequency belongs to.
    pub fn regime(&self) -> Regime {
        self.regime
    }

    /// Winding number as an integer: 1 in `IndexOne`, 0 in `IndexZero`.
    pub fn index(&self) -> i32 {
        match self.regime {
            Regime::IndexOne => 1,
            Regime::IndexZero => 0,
        }
    }

    /// Error helper: demands a specific regime.
    pub(crate) fn require(&self, required: Regime) -> Result<()> {
        if self.regime == required {
            Ok(())
        } else {
            Err(Error::WrongRegime {
                required,
                actual: self.regime,
                omega1: self.omega1,
            })
        }
    }
}
