#include "fracrel/spectral.hpp"

#include <cmath>
#include <random>
#include <stdexcept>

namespace fracrel {

double multiplier_value(const OperatorParams& params, double freq_sq, double sigma) {
    return std::pow(params.m * params.m + 4.0 * M_PI * M_PI * freq_sq, sigma);
}

double OperatorParams::multiplier_floor() const { return std::pow(m, 2.0 * s); }

Field apply_multiplier(const Field& u, const OperatorParams& params, double sigma) {
    if (!std::isfinite(sigma))
        throw std::invalid_argument("apply_multiplier: order must be finite");
    if (!u.all_finite())
        throw std::invalid_argument("apply_multiplier: input field has non-finite samples");
    const auto& spec = u.spectral();
    std::vector<std::complex<double>> out(spec.size());
    const Grid& g = u.grid();
    for (std::size_t k = 0; k < spec.size(); ++k)
        out[k] = spec[k] * multiplier_value(params, g.freq_sq(k), sigma);
    return Field::from_spectral(g, out);
}

double l2_inner(const Field& u, const Field& v) {
    if (u.grid() != v.grid())
        throw std::invalid_argument("l2_inner: fields live on different grids");
    const auto uu = u.values();
    const auto vv = v.values();
    double acc = 0.0;
    for (std::size_t j = 0; j < uu.size(); ++j) acc += uu[j] * vv[j];
    return acc * std::pow(u.grid().spacing(), u.grid().dim());
}

namespace {

double spectral_weighted_sum(const Field& u, const Field& v, const OperatorParams& params,
                             double sigma, double extra_freq_sq_factor) {
    if (u.grid() != v.grid())
        throw std::invalid_argument("spectral inner product: fields live on different grids");
    const auto& su = u.spectral();
    const auto& sv = v.spectral();
    const Grid& g = u.grid();
    double acc = 0.0;
    for (std::size_t k = 0; k < su.size(); ++k) {
        const double fsq = g.freq_sq(k);
        double w = multiplier_value(params, fsq, sigma);
        if (extra_freq_sq_factor != 0.0) w *= extra_freq_sq_factor * fsq;
        acc += w * (su[k].real() * sv[k].real() + su[k].imag() * sv[k].imag());
    }
    return acc / std::pow(g.extent(), g.dim());
}

} // namespace

double hs_inner(const Field& u, const Field& v, const OperatorParams& params) {
    return spectral_weighted_sum(u, v, params, params.s, 0.0);
}

double low_order_mass(const Field& u, const OperatorParams& params) {
    return spectral_weighted_sum(u, u, params, params.s - 1.0, 0.0);
}

double gradient_weighted_mass(const Field& u, const OperatorParams& params) {
    return spectral_weighted_sum(u, u, params, params.s - 1.0, 4.0 * M_PI * M_PI);
}

double lp_pow(const Field& u, double p) {
    if (!(p >= 1.0))
        throw std::invalid_argument("lp norm: p must be >= 1");
    double acc = 0.0;
    for (double v : u.values()) acc += std::pow(std::abs(v), p);
    return acc * std::pow(u.grid().spacing(), u.grid().dim());
}

double lp_norm(const Field& u, double p) { return std::pow(lp_pow(u, p), 1.0 / p); }

Field random_band_limited(const Grid& grid, int band, std::uint64_t seed) {
    if (band < 1 || band >= grid.points() / 2)
        throw std::invalid_argument("random_band_limited: band must lie in [1, n/2)");
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> gauss(0.0, 1.0);
    std::vector<std::complex<double>> spec(grid.size(), {0.0, 0.0});
    // Fill low modes, then symmetrize û(-ξ) = conj(û(ξ)).
    for (std::size_t k = 0; k < spec.size(); ++k) {
        auto idx = grid.unflatten(k);
        bool in_band = true;
        for (int d = 0; d < grid.dim(); ++d)
            in_band = in_band && std::abs(grid.centered_index(idx[d])) <= band;
        if (in_band) spec[k] = {gauss(rng), gauss(rng)};
    }
    const int n = grid.points();
    std::vector<std::complex<double>> sym(spec.size());
    for (std::size_t k = 0; k < spec.size(); ++k) {
        auto idx = grid.unflatten(k);
        std::array<int, 3> neg{0, 0, 0};
        for (int d = 0; d < grid.dim(); ++d) neg[d] = (n - idx[d]) % n;
        const std::size_t kneg = grid.flatten(neg);
        sym[k] = 0.5 * (spec[k] + std::conj(spec[kneg]));
    }
    return Field::from_spectral(grid, sym);
}

Field gaussian_bump(const Grid& grid, double sigma, double amplitude, const std::array<double, 3>& center) {
    std::vector<double> vals(grid.size());
    for (std::size_t j = 0; j < vals.size(); ++j) {
        auto idx = grid.unflatten(j);
        double r2 = 0.0;
        for (int d = 0; d < grid.dim(); ++d) {
            const double dx = grid.coord(idx[d]) - center[d];
            r2 += dx * dx;
        }
        vals[j] = amplitude * std::exp(-r2 / (2.0 * sigma * sigma));
    }
    return Field(grid, std::move(vals));
}

int effective_band(const Field& u, double rel_tol) {
    const auto& spec = u.spectral();
    double peak = 0.0;
    for (const auto& c : spec) peak = std::max(peak, std::abs(c));
    if (peak == 0.0) return 0;
    int band = 0;
    const Grid& g = u.grid();
    for (std::size_t k = 0; k < spec.size(); ++k) {
        if (std::abs(spec[k]) <= rel_tol * peak) continue;
        auto idx = g.unflatten(k);
        for (int d = 0; d < g.dim(); ++d)
            band = std::max(band, std::abs(g.centered_index(idx[d])));
    }
    return band;
}

} // namespace fracrel
