#pragma once

#include <vector>

namespace fracrel {

/// Tabulation of the Bessel profile Φ_s and its derivative on a graded
/// mesh, with fitted small-argument and tail models so Φ_s can be
/// evaluated on all of (0, ∞).
///
/// Φ_s solves  Φ'' + ((1-2s)/y) Φ' - Φ = 0,  Φ(0) = 1,  Φ(∞) = 0,
/// and is built from Φ_s(y) = (2^{1-s}/Γ(s)) y^s K_s(y); the derivative
/// uses the exact identity d/dy [y^s K_s(y)] = -y^s K_{s-1}(y).
struct ProfileTable {
    double s = 0.5;
    std::vector<double> mesh;  // strictly increasing, (0, y_max]
    std::vector<double> phi;   // Φ_s at mesh nodes, in (0, 1], decreasing
    std::vector<double> dphi;  // Φ'_s at mesh nodes, negative

    // Tail model Φ_s(y) ≈ tail_A · y^{(2s-1)/2} e^{-y} for y > tail_cut,
    // amplitude fitted on the last mesh decade.
    double tail_A = 1.0;
    double tail_cut = 30.0;

    // Small-y model 1 - Φ_s(y) ≈ c1_fit·y^{2s} + a2_fit·y², fitted on the
    // smallest nodes; used below the mesh and in singular quadratures.
    double c1_fit = 0.0;
    double a2_fit = 0.0;

    // Construction diagnostics.
    double max_ode_residual = 0.0;   // worst |Φ'' + (1-2s)/y Φ' - Φ| over checked nodes
    double tail_fit_spread = 0.0;    // relative spread of the tail amplitude over the fit window

    /// Φ_s(y) anywhere on [0, ∞): small-y model below the mesh, cubic
    /// Hermite inside it, fitted tail beyond tail_cut.
    double eval(double y) const;

    /// Φ'_s(y) with the same piecewise strategy.
    double eval_deriv(double y) const;
};

/// Build the profile table. y_max >= 30 (also used as tail_cut);
/// mesh_density is nodes per decade of the geometric mesh from 1e-8.
/// Validates the table invariants (positivity, monotone decrease, ODE
/// residual < 1e-6 away from round-off-dominated regions) and throws on
/// violation.
ProfileTable compute_profile(double s, double y_max = 30.0, int mesh_density = 160);

/// Weight selector for the profile quadratures below.
enum class ProfileWeight { Mass, Energy, Gradient };

/// ∫₀^∞ G(c·y) y^{1-2s} dy with G = Φ² (Mass), Φ²+Φ'² (Energy) or Φ'²
/// (Gradient). Geometrically graded Gauss-Legendre panels plus the
/// analytic small-y contribution from the fitted model; the exponential
/// tail beyond tail_cut/c contributes < e^{-2·tail_cut} and is dropped.
double profile_weighted_integral(const ProfileTable& table, double c, ProfileWeight weight);

/// 𝒦(Φ_s) = ∫₀^∞ (Φ² + Φ'²) y^{1-2s} dy; equals k_s (a classical identity,
/// verified numerically — see verify_profile_identities).
double profile_energy(const ProfileTable& table);

/// ∫₀^∞ Φ_s(t)² t^{1-2s} dt; equals s·k_s.
double profile_weighted_mass(const ProfileTable& table);

/// Identity report for the two profile quadratures against k_constant.
struct ProfileIdentityReport {
    double s;
    double energy;          // 𝒦(Φ_s) by quadrature
    double energy_target;   // k_s
    double energy_rel_err;
    double mass;            // ∫Φ² t^{1-2s} by quadrature
    double mass_target;     // s·k_s
    double mass_rel_err;
    bool ok;                // both within tol
};

ProfileIdentityReport verify_profile_identities(const ProfileTable& table, double rel_tol = 1e-5);

} // namespace fracrel
