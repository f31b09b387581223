#pragma once

#include <cstdint>
#include <vector>

#include "fracrel/field.hpp"
#include "fracrel/nonlinearity.hpp"
#include "fracrel/params.hpp"

namespace fracrel {

/// Terms of a Pohozaev identity: residual = lhs_gradient_term +
/// lhs_low_order_term - rhs_potential_term, relative residual normalized
/// by max(|lhs|, |rhs|).
struct PohozaevReport {
    double lhs_gradient_term = 0.0;
    double lhs_low_order_term = 0.0;
    double rhs_potential_term = 0.0;
    double residual = 0.0;
    double relative_residual = 0.0;
};

/// h^N Σ F(u_j) — grid potential integral.
double potential_integral(const Field& u, const Nonlinearity& nl);

/// h^N Σ f(u_j) u_j.
double nonlinear_pairing(const Field& u, const Nonlinearity& nl);

/// Energy Φ(u) = ½‖u‖² - ∫F(u).
double energy(const Field& u, const OperatorParams& params, const Nonlinearity& nl);

/// L² Riesz representative of Φ'(u): g = (-Δ+m²)^s u - f(u), so that
/// l2_inner(g, v) = Φ'(u)·v for band-limited v.
Field euler_gradient(const Field& u, const OperatorParams& params, const Nonlinearity& nl);

/// Φ'(u)·u = ‖u‖² - ∫f(u)u, the Nehari functional.
double nehari_value(const Field& u, const OperatorParams& params, const Nonlinearity& nl);

/// Pohozaev functional as a term-by-term report:
/// (N-2s)/2 ‖u‖² + s m² · low_order_mass(u) - N ∫F(u).
PohozaevReport pohozaev_P(const Field& u, const OperatorParams& params, const Nonlinearity& nl);

/// J(u) = Φ'(u)·u + 2P(u), evaluated both composed and in the expanded
/// spectral form (N+1-2s)‖u‖² + 2sm²·LOM - 2N∫F - ∫fu. The two routes must
/// agree to 1e-8·scale (internal consistency fault otherwise); the expanded
/// value is returned.
double nehari_pohozaev_J(const Field& u, const OperatorParams& params, const Nonlinearity& nl);

/// Fibering map h_u(t) = Φ(u_t) along u_t(x) = t·u(x/t²), evaluated
/// spectrally without materializing u_t.
double fibering_value(const Field& u, double t, const OperatorParams& params, const Nonlinearity& nl);

/// h'_u(t); h'_u(1) = J(u).
double fibering_derivative(const Field& u, double t, const OperatorParams& params, const Nonlinearity& nl);

struct FiberingResult {
    double t_u = 1.0;        // unique maximizer of h_u
    double h_at_t = 0.0;     // h_u(t_u)
    double bracket_lo = 0.0; // sign-change bracket found by doubling/halving
    double bracket_hi = 0.0;
    int iterations = 0;
};

/// Locate the unique critical point of the fibering map on [1e-4, 1e4].
/// Verifies the single sign change of h'_u on a log scan and reports the
/// bracket; throws when no sign change exists (nonlinearity hypotheses
/// violated for this u).
FiberingResult find_t_u(const Field& u, const OperatorParams& params, const Nonlinearity& nl);

/// Projection onto the Nehari-Pohozaev manifold: u_{t_u} materialized by
/// band-limited dilation.
Field project_to_manifold(const Field& u, const OperatorParams& params, const Nonlinearity& nl);

/// Explicit form of Φ(u) - J(u)/(2N+2):
/// (2s/(2N+2))·∫4π²|ξ|²|û|²/(m²+4π²|ξ|²)^{1-s} + (1/(2N+2))·∫[f(u)u - 2F(u)];
/// strictly positive for u ≠ 0.
double energy_gap(const Field& u, const OperatorParams& params, const Nonlinearity& nl);

/// Sampled hypothesis checks (f₁), growth bound, the fibering comparison
/// inequality and the super-quadraticity witness; violations are reported,
/// never thrown.
struct HypothesisSample {
    double t;
    double u;       // 0 for the single-variable inequalities
    double margin;  // >= 0 means the inequality holds at this sample
    bool ok;
};

struct HypothesisReport {
    bool f1_monotone_ok = true;       // f(t)/t increasing on sampled t > 0
    double f1_worst_margin = 0.0;     // most negative increment observed
    bool comparison_ok = true;        // t²/2 f(u)u - F(tu) <= 1/2 f(u)u - F(u)
    double comparison_worst = 0.0;    // worst violation magnitude
    bool superquad_ok = true;         // t f(t) - 2F(t) > 0 for sampled t != 0
    double superquad_min = 0.0;
    bool f3_growing_ok = true;        // t f(t) - 2F(t) increasing at large samples
    int samples = 0;
    std::vector<HypothesisSample> f1_rows;
    std::vector<HypothesisSample> comparison_rows;
    std::vector<HypothesisSample> superquad_rows;
};

HypothesisReport hypothesis_checks(const Nonlinearity& nl, double t_max = 10.0, double u_max = 5.0,
                                   int count = 41);

/// Non-existence certificate for pure powers p >= 2*_s: combining the Pohozaev identity and the Nehari identity,
/// D·|u|_p^p = m²s·LOM must hold at a solution with D = N/p - (N-2s)/2 <= 0,
/// impossible since the right side is positive.
struct NonexistenceReport {
    double critical_exponent = 0.0;
    double p = 0.0;
    double D = 0.0;              // N/p - (N-2s)/2
    double nehari_defect = 0.0;  // ‖u‖² - |u|_p^p
    double obstruction_gap = 0.0; // m²s·LOM - D·|u|_p^p
    double margin_reference = 0.0; // m²s·LOM
    bool supercritical = false;    // p >= 2*_s
    bool certified = false;        // supercritical && gap > 0
};

/// Rejects N <= 2s (critical exponent undefined) and p < 2.
NonexistenceReport nonexistence_certificate(const Field& u, const OperatorParams& params, double p);

/// One row of the Λ = S scaling scan.
struct SobolevScanRow {
    double t;
    double lambda_quotient;  // massive quotient of v_t
    double s_quotient;       // massless quotient of v_t
    double mass_model;       // m^{2s} t^{-2s} |U|₂²
    double pnorm_scaled;     // t^N |v_t|_{2*}^{2*} with |U|_{2*} = 1 (exactly 1 in continuum)
};

struct SobolevScanTable {
    std::vector<SobolevScanRow> rows;
    double u_l2_sq = 0.0;      // |U|₂² with |U|_{2*_s} = 1 on the reference grid
    double mu = 0.0;
    double box_over_mu = 0.0;  // reference box / μ
    int points = 0;
};

/// Scan the scaled extremal family v_t(x) = U(tx),
/// U = c(μ²+|x|²)^{-(N-2s)/2}, |U|_{2*_s} = 1 on the grid. Each t uses the
/// commensurate box L_t = (box_over_mu·μ)/t with a deterministic fractional
/// grid offset, so the S-quotient constancy check compares genuinely
/// different sample sets. Requires N > 4s.
SobolevScanTable sobolev_quotient_scan(const OperatorParams& params, double mu,
                                       const std::vector<double>& t_list, int points = 64,
                                       double box_over_mu = 50.0);

} // namespace fracrel
