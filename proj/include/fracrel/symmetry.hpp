#pragma once

#include <array>
#include <vector>

#include "fracrel/field.hpp"
#include "fracrel/kernel.hpp"
#include "fracrel/nonlinearity.hpp"
#include "fracrel/params.hpp"

namespace fracrel {

/// Reflection x ↦ x_λ = (2λ - x_axis, rest) across the plane {x_axis = λ}.
/// λ must be commensurate with the grid (2λ a multiple of the spacing) so
/// the reflection is an exact node permutation (and an involution).
struct ReflectionSpec {
    int axis = 0;
    double lambda = 0.0;
    bool keep_left = true;  // half-space Σ_λ = {x_axis <= λ} when true
};

/// Exact node-permutation reflection; bit-exact involution.
Field reflect_field(const Field& u, const ReflectionSpec& spec);

enum class FixedPointMode { Plain, Normalized };

struct FixedPointResult {
    Field field;
    double residual = 0.0;     // |u - I_s(f(u))|₂ / |u|₂ of the final iterate
    double r_factor = 1.0;     // last normalization factor (Normalized mode)
    int iterations = 0;
    bool converged = false;
    bool diverged = false;     // norm growth past 1e6·|u₀|
    bool collapsed = false;    // iterate fell to ~0
};

/// Picard iteration on u = g_s * f(u):
///   Plain:       u ← I_s(f(u))
///   Normalized:  u ← r·I_s(f(u)) with r keeping |u|₂ = |u₀|₂
/// Iterates are clamped at 0 from below (positive solutions). Divergence
/// and collapse are reported with the iteration index in the result.
FixedPointResult fixed_point_iterate(const Field& u0, const OperatorParams& params,
                                     const Nonlinearity& nl, FixedPointMode mode,
                                     int max_iter = 400, double tol = 1e-12);

struct ReflectionReport {
    double sup_residual = 0.0;      // sup over sampled x of |lhs - rhs|
    double sup_lhs = 0.0;           // sup |u - u_λ| over the samples
    double max_lhs_signed = -1e300; // max of u - u_λ (≤ 0 for a centered
                                    // decreasing solution when λ < 0)
    double field_max = 0.0;         // max |u|
    double excluded_ball_bound = 0.0; // worst analytic bound for the removed cell
    int samples = 0;
};

/// Residual of the reflection identity
///   u(x) - u_λ(x) = ∫_{Σ_λ} (g_s(x-y) - g_s(x_λ-y)) (f(u(y)) - f(u_λ(y))) dy
/// by half-space rectangle quadrature with kernel lookups on grid
/// distances; the singular y = x cell is replaced by its analytic
/// small-ball estimate. Small for numerical solutions, reported raw for
/// anything else.
ReflectionReport reflection_residual(const Field& u, const Nonlinearity& nl,
                                     const ReflectionSpec& spec, const OperatorParams& params);

struct RadialShell {
    double radius = 0.0;
    double mean = 0.0;
    double stddev = 0.0;
    int count = 0;
};

struct RadialReport {
    std::vector<RadialShell> shells;  // exact squared-distance classes
    double asymmetry = 0.0;           // max shell stddev / peak |shell mean|
    int monotonicity_violations = 0;  // increases between consecutive shell means
    double worst_violation = 0.0;
    std::array<double, 3> center_used{0.0, 0.0, 0.0}; // snapped to a node
};

/// Shell statistics about a center (snapped to the nearest node). Shells
/// are exact integer squared-distance classes, so an exactly radial field
/// has zero within-shell variance.
RadialReport radial_monotonicity_check(const Field& u, const std::array<double, 3>& center);

struct HypothesisSReport {
    double beta = 0.0;
    double q = 0.0;
    double fprime_norm = 0.0;   // |f'(w)|_{q/(β-1)} on the grid
    bool loglin_bound_ok = true; // f'(t) <= 2t on samples (LogLin only)
    bool fprime_nonneg = true;
    bool fsecond_nonneg = true;
};

/// Check the (s₂)-type integrability datum |f'(w)|_{q/(β-1)} plus the
/// sampled sign conditions. Preconditions (violations rejected, naming
/// the failed constraint): β in (1, 2*_s - 1), q in [2, 2*_s],
/// q > max{β, N(β-1)/(2s)}.
HypothesisSReport hypothesis_s_check(const Nonlinearity& nl, double beta, double q,
                                     const Field& witness, const OperatorParams& params);

} // namespace fracrel
