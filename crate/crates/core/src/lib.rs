//! Riemann–Hilbert factorization machinery for the kinetic second Stokes
//! problem: a rarefied gas filling a half-space over a plate that oscillates
//! harmonically in its own plane, described by a BGK kinetic equation.
//!
//! Everything in this crate revolves around the dispersion function
//!
//! ```text
//!     lambda(z) = -i*omega1 + lambda0(z),
//!     lambda0(z) = (1/sqrt(pi)) * integral over R of tau*exp(-tau^2)/(tau - z) dtau,
//! ```
//!
//! where `omega1` is the dimensionless oscillation frequency. The half-space
//! expansion of the kinetic equation leads to a homogeneous Riemann boundary
//! value problem on the positive real axis with coefficient
//! `G(mu) = lambda^+(mu)/lambda^-(mu)`; its winding number (the index `kappa`)
//! controls whether the dispersion function has a pair of complex zeros
//! `±eta0` (index 1) or none (index 0). The factorizing function `X(z)` solves
//! `X^+/X^- = G` and yields an explicit closed formula for `eta0` as well as a
//! family of integral representations, each of which this crate exposes as a
//! computable residual.
//!
//! Module layout:
//!
//! * [`quadrature`] — adaptive Gauss–Kronrod integration, semi-infinite
//!   truncation, Cauchy principal values; the numerical bedrock.
//! * [`dispersion`] — `s(mu)`, `lambda0` on and off the real axis, boundary
//!   values, the Laurent tail, the real zero `mu0`, and problem parameters.
//! * [`riemann`] — the coefficient `G`, its argument by closed-form branches
//!   and by phase unwrapping, the index, and the critical frequency.
//! * [`factorization`] — `V(z)`, `Theta(mu)`, `X(z)`, boundary values, and the
//!   integral-representation residuals.
//! * [`spectrum`] — the explicit zero `eta0`, an independent Newton oracle,
//!   the dispersion-function factorization residuals, and the eigenfunctions
//!   of the kinetic operator.
//!
//! All operations are pure functions of immutable inputs and are safe to call
//! concurrently. Results are deterministic: the same inputs produce bitwise
//! identical outputs.

// Frozen oracle constants keep their full printed precision, and reused
// integrand closures are passed by reference (some captures are not `Copy`);
// both are deliberate where these style lints fire.
#![allow(clippy::excessive_precision, clippy::needless_borrows_for_generic_args)]

pub mod dispersion;
pub mod factorization;
pub mod quadrature;
pub mod riemann;
pub mod spectrum;

pub use dispersion::{BoundaryPair, ProblemParams, Regime};
pub use factorization::Factorizer;
pub use quadrature::QuadratureConfig;
pub use riemann::AngleProfile;
pub use spectrum::{Eigenfunction, EigenfunctionKind, SpectrumResult};

use num_complex::Complex64;

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;

/// Everything that can go wrong across the library.
///
/// Numerical failures ([`Error::NonConvergence`], [`Error::NoConvergence`])
/// indicate that a documented tolerance could not be met; domain errors
/// (the rest) indicate a call outside an operation's contract and are always
/// detectable before any expensive work starts.
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    /// Adaptive quadrature exhausted its subdivision budget above tolerance.
    #[error("quadrature did not converge: error estimate {estimate:.3e} exceeds tolerance {tolerance:.3e} after {subdivisions} subdivisions")]
    NonConvergence {
        estimate: f64,
        tolerance: f64,
        subdivisions: usize,
    },
    /// Principal-value pole outside the integration range (or too close to an
    /// endpoint for the finite-difference derivative fill-in).
    #[error("principal-value pole {pole:.6e} outside the admissible range (0, {cutoff}) or within the derivative stencil of an endpoint")]
    PoleOutOfRange { pole: f64, cutoff: f64 },
    /// `lambda0_complex` asked for a real argument; the real axis is the cut.
    #[error("lambda0 requested on the real axis at z = {0}; use lambda0_real or lambda_boundary")]
    OnRealAxis(f64),
    /// The Laurent tail of the dispersion function is unreliable this close in.
    #[error("Laurent tail requested at |z| = {0:.3}, inside its reliable region |z| > 3")]
    TooClose(f64),
    /// Frequency within the guard band of an index-classification threshold.
    #[error("omega1 = {omega1} lies within critical guard band {band} of the classification threshold {threshold}; the index is not computed this close to the transition")]
    CriticalGuardBand {
        omega1: f64,
        threshold: f64,
        band: f64,
    },
    /// Off-axis evaluation requested on (or numerically on) the cut `[0, inf)`.
    #[error(
        "z = {0} lies on or within 1e-4 of the cut [0, inf); use the boundary-value operations"
    )]
    OnCut(Complex64),
    /// The index-1 factorizing function has a simple pole at the origin.
    #[error("X(z) has a pole at z = 0 in the index-1 regime")]
    ZeroArgument,
    /// Operation defined only in the other index regime.
    #[error("operation requires the {required:?} regime but omega1 = {omega1} is {actual:?}")]
    WrongRegime {
        required: Regime,
        actual: Regime,
        omega1: f64,
    },
    /// Phase unwrapping detected a step that a denser grid must resolve.
    #[error("angle grid too coarse: phase step {step:.3} rad >= pi/2 between mu = {left:.6e} and mu = {right:.6e}")]
    GridTooCoarse { step: f64, left: f64, right: f64 },
    /// `G = lambda^+/lambda^-` with a vanishing denominator (omega1 = 0 misuse).
    #[error("jump coefficient denominator lambda^- vanishes at mu = {0:.6e}; G is undefined at omega1 = 0 there")]
    DegenerateDenominator(f64),
    /// Neither square root of the explicit zero formula passes the selection
    /// rule `Re(z0/eta0) > 0`; upstream values must be wrong.
    #[error("neither square-root branch of the explicit eta0 formula satisfies Re(z0/eta0) > 0")]
    BranchAmbiguity,
    /// Newton's method on the dispersion function ran out of iterations.
    #[error("Newton iteration on lambda(z) failed to converge within {0} steps")]
    NoConvergence(usize),
    /// At `omega1 = 0` the discrete mode degenerates into the pair `h1, h2`.
    #[error(
        "the dispersion function has no finite zeros at omega1 = 0; use spectrum::degenerate_modes"
    )]
    DegenerateFrequency,
}
