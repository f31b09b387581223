#pragma once

#include <cstdint>
#include <vector>

#include "fracrel/field.hpp"
#include "fracrel/nonlinearity.hpp"
#include "fracrel/params.hpp"
#include "fracrel/variational.hpp"

namespace fracrel {

struct GroundStateConfig {
    OperatorParams params;
    Grid grid;
    Nonlinearity nl;
    double tol_nehari = 1e-6;    // |Φ'(u)·u| / ‖u‖²
    double tol_manifold = 1e-6;  // |J(u)| / ‖u‖²
    double tol_grad = 1e-4;      // |euler_gradient|₂ / |u|₂
    double tol_poho = 1e-3;      // Pohozaev relative residual
    int max_iter = 2000;
    std::uint64_t seed = 1;
    double seed_sigma = 0.0;     // Gaussian seed width; 0 → extent/12
    double seed_amplitude = 1.0;

    GroundStateConfig(const OperatorParams& p, const Grid& g, const Nonlinearity& n)
        : params(p), grid(g), nl(n) {}
};

struct GroundStateTraceRow {
    int iter;
    double energy;
    double manifold_defect;
    double nehari_defect;
    double grad_rel;
};

struct GroundStateResult {
    explicit GroundStateResult(Field f) : u(std::move(f)) {}
    Field u;
    double energy = 0.0;
    double manifold_defect = 0.0;   // |J(u*)| / ‖u*‖²
    double nehari_defect = 0.0;     // |Φ'(u*)·u*| / ‖u*‖²
    double grad_rel = 0.0;          // |Φ' representative|₂ / |u*|₂
    double poho_rel = 0.0;          // Pohozaev relative residual
    double t_last = 1.0;            // final fibering parameter
    double min_value = 0.0;         // pointwise minimum (sign reported, not enforced)
    double boundary_decay = 0.0;    // periodization warning metric
    int iterations = 0;
    bool converged = false;
    bool degenerate = false;        // collapsed toward 0
    std::vector<GroundStateTraceRow> trace;
};

/// Numerical estimate of the small-sphere radius ρ below which J > 0
/// (collapse threshold ρ/10): grid Sobolev constants from random samples,
/// growth constants of the nonlinearity from a t-sample.
double estimate_rho(const OperatorParams& params, const Grid& grid, const Nonlinearity& nl,
                    std::uint64_t seed = 7);

/// Minimize Φ over the Nehari-Pohozaev manifold: iterate
/// project-to-manifold, multiplier-preconditioned gradient step with
/// backtracking on the fibered energy, and peak re-centering. Requires an
/// asymptotic slope k > m^{2s} (rejected otherwise, naming the bound).
GroundStateResult ground_state_solve(const GroundStateConfig& config);

} // namespace fracrel
