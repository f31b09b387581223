#pragma once

namespace fracrel {

/// Modified Bessel function K_ν(y) for ν >= 0, y > 0, evaluated by
/// trapezoid quadrature of the integral representation
///     K_ν(y) = ∫₀^∞ e^{-y cosh t} cosh(νt) dt.
/// The integrand is even and decays double-exponentially, so the trapezoid
/// rule converges superalgebraically; the step is refined until two
/// consecutive grids agree to rel_tol. Throws on non-convergence.
double modified_bessel_k(double nu, double y, double rel_tol = 2e-15);

} // namespace fracrel
