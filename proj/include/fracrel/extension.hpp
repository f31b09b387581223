#pragma once

#include <complex>
#include <memory>
#include <vector>

#include "fracrel/field.hpp"
#include "fracrel/params.hpp"
#include "fracrel/profile.hpp"
#include "fracrel/variational.hpp"

namespace fracrel {

/// Spectral representation of the weighted harmonic extension
///     ŵ(ξ_k, y_j) = û(ξ_k) · Φ_s(√(m²+4π²|ξ_k|²) · y_j)
/// on a graded y-mesh. Energies are evaluated per Fourier mode by 1-D
/// quadrature in y; the (x, y) volume grid is never materialized.
class ExtensionField {
public:
    const Grid& base() const { return base_; }
    const OperatorParams& params() const { return params_; }
    const std::vector<double>& ymesh() const { return ymesh_; }
    const ProfileTable& table() const { return *table_; }

    /// Boundary spectrum û(ξ_k).
    const std::vector<std::complex<double>>& boundary_spectrum() const { return boundary_; }

    /// ŵ(ξ_k, y_j), layer-major: layers()[j * base().size() + k].
    const std::vector<std::complex<double>>& layers() const { return layers_; }

    /// Multiplier root c_k = √(m² + 4π²|ξ_k|²) for a flat spectral index.
    double mode_root(std::size_t k) const;

    /// Materialize w(·, y_j) as a Field (inverse transform of one layer).
    Field layer_field(std::size_t j) const;

private:
    friend ExtensionField extend(const Field&, const OperatorParams&,
                                 std::shared_ptr<const ProfileTable>, std::vector<double>);
    ExtensionField(const Grid& base, const OperatorParams& params) : base_(base), params_(params) {}
    Grid base_;
    OperatorParams params_;
    std::vector<double> ymesh_;
    std::shared_ptr<const ProfileTable> table_;
    std::vector<std::complex<double>> boundary_;
    std::vector<std::complex<double>> layers_;
};

/// Default y-mesh: geometric from 1e-8 to 50/m, graded toward 0.
std::vector<double> default_ymesh(const OperatorParams& params, int count = 200);

/// Build the extension of u. Requires table->s == params.s, a tail fit in
/// the table (arguments beyond the mesh use it), and a y-mesh graded
/// toward 0 with at least 8 nodes below 1e-3.
ExtensionField extend(const Field& u, const OperatorParams& params,
                      std::shared_ptr<const ProfileTable> table, std::vector<double> ymesh = {});

/// ∬ y^{1-2s} (|∇w|² + m² w²) dx dy, per-mode quadrature. Equals
/// k_s·‖u‖² (intnorm identity, checked in tests at 1e-4).
double weighted_energy(const ExtensionField& w);

/// ∬ y^{1-2s} w² dx dy without the m² prefactor; equals
/// s·k_s·low_order_mass(u).
double weighted_mass(const ExtensionField& w);

/// Per-mode Neumann trace lim_{y→0} -y^{1-2s} ∂_y ŵ, extracted by fitting
/// 1 - ŵ/û = β(cy)^{2s} + γ(cy)² on the layers with cy in [1e-5, 1e-2];
/// equals k_s·(-Δ+m²)^s u for the exact extension.
Field neumann_trace(const ExtensionField& w);

/// Extension-side Pohozaev report:
/// lhs = (N-2s)/2·∬y^{1-2s}|∇w|² + m²(N+2-2s)/2·∬y^{1-2s}w²,
/// rhs = N·k_s·∫F(w(·,0)). Diagnostic even for non-solutions.
PohozaevReport extension_pohozaev_residual(const ExtensionField& w, const Field& u,
                                           const OperatorParams& params, const Nonlinearity& nl);

} // namespace fracrel
