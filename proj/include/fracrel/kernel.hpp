#pragma once

#include <array>

#include "fracrel/field.hpp"
#include "fracrel/params.hpp"

namespace fracrel {

/// Quadrature scheme for the δ-integral of the modified Bessel kernel
///     g_s(x) = (4π)^{-s}/Γ(s) ∫₀^∞ e^{-π|x|²/δ} e^{-m²δ/(4π)} δ^{(2s-N)/2} dδ/δ,
/// split at δ = 1 with log substitution on each piece. validate() runs a
/// refinement self-check at probe radii and throws (naming the worst
/// probe) if the scheme has not converged to rel_tol.
struct KernelSpec {
    OperatorParams params;
    int panel_order = 16;    // Gauss-Legendre order per unit panel in log δ
    double rel_tol = 1e-10;

    explicit KernelSpec(const OperatorParams& p) : params(p) {}
    void validate() const;
};

/// g_s at radius r > 0 (r > 0 required when 2s <= N: singular at the origin).
double kernel_value_radial(double r, const KernelSpec& spec);

/// g_s at a point; radially symmetric.
double kernel_value(const std::array<double, 3>& x, const KernelSpec& spec);

/// ∫_{|x| < eps} g_s dx from the leading small-r behavior (power r^{2s-N},
/// or the K₀ logarithm when 2s = N). Used to patch the singular cell in
/// grid quadratures of the kernel.
double kernel_small_ball_mass(double eps, const KernelSpec& spec);

/// Rectangle-rule quadrature of ∫ g_s(x) e^{-2πi x·ξ} dx over the box
/// [-L/2, L/2)^N with the singular node replaced by the small-ball mass;
/// ξ = 0 gives the kernel mass (→ m^{-2s} as the box grows).
double kernel_fourier_quadrature(const KernelSpec& spec, double L, int n,
                                 const std::array<double, 3>& xi);

/// Radial quadrature of ĝ_s(ξ): 2∫₀^∞ g(r)cos(2πξr)dr for N = 1,
/// ∫₀^∞ g(r) sin(2πξr)/(2πξr) 4πr² dr for N = 3. Geometric panels absorb
/// the origin singularity; compares against (m²+4π²ξ²)^{-s}. N = 2 (an
/// oscillatory Bessel-J₀ weight) is not supported.
double kernel_fourier_radial(const KernelSpec& spec, double xi, double r_max = 0.0);

/// Bessel potential I_σ f = g_σ * f, realized spectrally as the multiplier
/// (m²+4π²|ξ|²)^{-σ}. σ > 0 required.
Field bessel_potential(const Field& f, const OperatorParams& params, double sigma);

} // namespace fracrel
