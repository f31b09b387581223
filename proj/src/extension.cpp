#include "fracrel/extension.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>

#include "fracrel/constants.hpp"
#include "fracrel/detail/leastsq.hpp"
#include "fracrel/spectral.hpp"

namespace fracrel {

double ExtensionField::mode_root(std::size_t k) const {
    return std::sqrt(params_.m * params_.m + 4.0 * M_PI * M_PI * base_.freq_sq(k));
}

Field ExtensionField::layer_field(std::size_t j) const {
    if (j >= ymesh_.size()) throw std::out_of_range("ExtensionField::layer_field: bad layer index");
    const std::size_t total = base_.size();
    std::vector<std::complex<double>> spec(layers_.begin() + j * total, layers_.begin() + (j + 1) * total);
    return Field::from_spectral(base_, spec);
}

std::vector<double> default_ymesh(const OperatorParams& params, int count) {
    if (count < 32) throw std::invalid_argument("default_ymesh: need at least 32 nodes");
    const double y0 = 1e-8, y1 = 50.0 / params.m;
    std::vector<double> mesh(count);
    for (int i = 0; i < count; ++i)
        mesh[i] = y0 * std::pow(y1 / y0, static_cast<double>(i) / (count - 1));
    return mesh;
}

ExtensionField extend(const Field& u, const OperatorParams& params,
                      std::shared_ptr<const ProfileTable> table, std::vector<double> ymesh) {
    if (!table) throw std::invalid_argument("extend: missing profile table");
    if (table->s != params.s)
        throw std::invalid_argument("extend: profile table order does not match operator order");
    if (!(table->tail_A > 0.0) || !std::isfinite(table->tail_A))
        throw std::invalid_argument("extend: profile table has no usable tail fit");
    if (ymesh.empty()) ymesh = default_ymesh(params);
    int below = 0;
    for (std::size_t j = 0; j < ymesh.size(); ++j) {
        if (!(ymesh[j] > 0.0) || (j > 0 && ymesh[j] <= ymesh[j - 1]))
            throw std::invalid_argument("extend: y-mesh must be positive and increasing");
        if (ymesh[j] < 1e-3) ++below;
    }
    if (below < 8)
        throw std::invalid_argument(
            "extend: y-mesh does not resolve the y^{2s} boundary layer; "
            "use at least 8 nodes below y = 1e-3 (geometric grading from ~1e-8)");

    ExtensionField w(u.grid(), params);
    w.ymesh_ = std::move(ymesh);
    w.table_ = std::move(table);
    w.boundary_ = u.spectral();

    const std::size_t total = w.base_.size();
    w.layers_.resize(w.ymesh_.size() * total);
    for (std::size_t k = 0; k < total; ++k) {
        const double c = w.mode_root(k);
        for (std::size_t j = 0; j < w.ymesh_.size(); ++j)
            w.layers_[j * total + k] = w.boundary_[k] * w.table_->eval(c * w.ymesh_[j]);
    }
    return w;
}

namespace {

// Per-mode weighted y-integrals depend on the mode only through c; the
// |ξ|² shells repeat heavily, so cache per distinct c.
double cached_integral(std::map<double, double>& cache, const ProfileTable& table, double c,
                       ProfileWeight weight) {
    auto it = cache.find(c);
    if (it == cache.end()) it = cache.emplace(c, profile_weighted_integral(table, c, weight)).first;
    return it->second;
}

} // namespace

double weighted_energy(const ExtensionField& w) {
    const Grid& g = w.base();
    const double invLN = 1.0 / std::pow(g.extent(), g.dim());
    std::map<double, double> cache;
    double acc = 0.0;
    const auto& spec = w.boundary_spectrum();
    for (std::size_t k = 0; k < spec.size(); ++k) {
        const double wk = std::norm(spec[k]) * invLN;
        if (wk == 0.0) continue;
        const double c = w.mode_root(k);
        acc += wk * c * c * cached_integral(cache, w.table(), c, ProfileWeight::Energy);
    }
    return acc;
}

double weighted_mass(const ExtensionField& w) {
    const Grid& g = w.base();
    const double invLN = 1.0 / std::pow(g.extent(), g.dim());
    std::map<double, double> cache;
    double acc = 0.0;
    const auto& spec = w.boundary_spectrum();
    for (std::size_t k = 0; k < spec.size(); ++k) {
        const double wk = std::norm(spec[k]) * invLN;
        if (wk == 0.0) continue;
        acc += wk * cached_integral(cache, w.table(), w.mode_root(k), ProfileWeight::Mass);
    }
    return acc;
}

Field neumann_trace(const ExtensionField& w) {
    const Grid& g = w.base();
    const std::size_t total = g.size();
    const auto& ymesh = w.ymesh();
    const auto& boundary = w.boundary_spectrum();
    const double s = w.params().s;

    // Fit coefficients depend on the mode only through c; cache β per c.
    std::map<double, double> beta_cache;
    std::vector<std::complex<double>> trace(total);
    for (std::size_t k = 0; k < total; ++k) {
        if (std::norm(boundary[k]) == 0.0) {
            trace[k] = 0.0;
            continue;
        }
        const double c = w.mode_root(k);
        auto it = beta_cache.find(c);
        if (it == beta_cache.end()) {
            std::vector<double> A, b;
            int count = 0;
            for (std::size_t j = 0; j < ymesh.size(); ++j) {
                const double cy = c * ymesh[j];
                if (cy < 1e-5 || cy > 1e-2) continue;
                const double w2s = std::pow(cy, 2.0 * s);
                A.push_back(1.0);
                A.push_back(cy * cy / w2s);
                b.push_back((1.0 - w.table().eval(cy)) / w2s);
                ++count;
            }
            if (count < 8)
                throw std::runtime_error(
                    "neumann_trace: fewer than 8 layers with c·y in [1e-5, 1e-2] for mode root c = " +
                    std::to_string(c) + "; refine the y-mesh grading");
            auto x = detail::least_squares(std::move(A), std::move(b), count, 2);
            it = beta_cache.emplace(c, x[0]).first;
        }
        // -y^{1-2s} ∂_y ŵ → û · 2s β c^{2s}
        trace[k] = boundary[k] * (2.0 * s * it->second * std::pow(c, 2.0 * s));
    }
    return Field::from_spectral(g, trace);
}

PohozaevReport extension_pohozaev_residual(const ExtensionField& w, const Field& u,
                                           const OperatorParams& params, const Nonlinearity& nl) {
    if (u.grid() != w.base())
        throw std::invalid_argument("extension_pohozaev_residual: boundary field grid mismatch");
    {
        // w must extend u: compare boundary spectra.
        const auto& bu = u.spectral();
        const auto& bw = w.boundary_spectrum();
        double diff = 0.0, scale = 0.0;
        for (std::size_t k = 0; k < bu.size(); ++k) {
            diff += std::norm(bu[k] - bw[k]);
            scale += std::norm(bu[k]);
        }
        if (scale > 0.0 && diff > 1e-20 * scale)
            throw std::invalid_argument("extension_pohozaev_residual: extension does not match the field");
    }

    const double N = params.dim;
    const double energy = weighted_energy(w);       // ∬ y^{1-2s}(|∇w|² + m²w²)
    const double mass = weighted_mass(w);           // ∬ y^{1-2s} w²
    const double grad_only = energy - params.m * params.m * mass;

    PohozaevReport r;
    r.lhs_gradient_term = 0.5 * (N - 2.0 * params.s) * grad_only;
    r.lhs_low_order_term = 0.5 * params.m * params.m * (N + 2.0 - 2.0 * params.s) * mass;
    r.rhs_potential_term = N * k_constant(params.s) * potential_integral(u, nl);
    r.residual = r.lhs_gradient_term + r.lhs_low_order_term - r.rhs_potential_term;
    const double scale = std::max(std::abs(r.lhs_gradient_term + r.lhs_low_order_term),
                                  std::abs(r.rhs_potential_term));
    r.relative_residual = scale > 0.0 ? std::abs(r.residual) / scale : 0.0;
    return r;
}

} // namespace fracrel
