#include "fracrel/resample.hpp"

#include <cmath>
#include <complex>
#include <stdexcept>
#include <string>
#include <vector>

#include "fracrel/spectral.hpp"

namespace fracrel {

double min_dilation(const Field& u, double band_tol) {
    const int band = effective_band(u, band_tol);
    const double limit = 0.95 * (u.grid().points() / 2.0 - 1.0);
    return std::sqrt(std::max(static_cast<double>(band), 1.0) / limit);
}

Field dilate_field(const Field& u, double t, double band_tol) {
    if (!(t > 0.0)) throw std::invalid_argument("dilate_field: scale t must be positive");
    const Grid& g = u.grid();
    const int n = g.points();
    const int band = effective_band(u, band_tol);
    if (static_cast<double>(band) / (t * t) > 0.95 * (n / 2.0 - 1.0))
        throw std::invalid_argument(
            "dilate_field: t = " + std::to_string(t) + " pushes the effective band " +
            std::to_string(band) + " past Nyquist; use a finer grid (larger n) or a larger box");

    // Frequency-side realization: û_t(ξ_k) = t^{2N+1} Û(t²ξ_k), with
    // Û(η) = h^N Σ_j u(x_j) e^{-2πi x_j·η} the continuous extension of the
    // boundary transform. Sampling the spectrum off-lattice keeps a single
    // dilated copy in the box (real-space evaluation of u(x/t²) would wrap
    // extra copies in when t < 1).
    const double h = g.spacing();
    std::vector<std::complex<double>> E(static_cast<std::size_t>(n) * n);
    for (int k = 0; k < n; ++k) {
        const double eta = t * t * g.freq(k); // target frequency t²ξ_k
        // Û is n/L-periodic; outside the principal domain the true
        // spectrum is negligible (band guard) while the periodic sum
        // aliases, so those bins are zeroed instead of sampled.
        if (std::abs(eta) > g.nyquist()) {
            for (int j = 0; j < n; ++j) E[static_cast<std::size_t>(k) * n + j] = 0.0;
            continue;
        }
        for (int j = 0; j < n; ++j)
            E[static_cast<std::size_t>(k) * n + j] = std::polar(h, -2.0 * M_PI * g.coord(j) * eta);
    }

    const std::size_t total = g.size();
    std::vector<std::complex<double>> work(total);
    const auto vals = u.values();
    for (std::size_t j = 0; j < total; ++j) work[j] = vals[j];

    // Contract the (contiguous) last axis against E and transpose; dim
    // sweeps cover every axis and restore the layout.
    std::vector<std::complex<double>> next(total);
    const std::size_t outer = total / n;
    for (int sweep = 0; sweep < g.dim(); ++sweep) {
        for (std::size_t row = 0; row < outer; ++row) {
            const std::complex<double>* src = work.data() + row * n;
            for (int k = 0; k < n; ++k) {
                std::complex<double> acc{0.0, 0.0};
                const std::complex<double>* e = E.data() + static_cast<std::size_t>(k) * n;
                for (int j = 0; j < n; ++j) acc += e[j] * src[j];
                next[static_cast<std::size_t>(k) * outer + row] = acc;
            }
        }
        work.swap(next);
    }

    const double amp = std::pow(t, 2.0 * g.dim() + 1.0);
    for (auto& c : work) c *= amp;
    // Unpaired -Nyquist bins would break Hermitian symmetry; the band
    // guard keeps their content negligible, so drop them.
    for (std::size_t k = 0; k < total; ++k) {
        auto idx = g.unflatten(k);
        for (int d = 0; d < g.dim(); ++d)
            if (idx[d] == n / 2) work[k] = 0.0;
    }
    return Field::from_spectral(g, work);
}

Field recenter_peak(const Field& u, std::array<int, 3>* shift_out) {
    const Grid& g = u.grid();
    const auto vals = u.values();
    std::size_t peak = 0;
    double best = -1.0;
    for (std::size_t j = 0; j < vals.size(); ++j) {
        const double a = std::abs(vals[j]);
        if (a > best) {
            best = a;
            peak = j;
        }
    }
    const int n = g.points();
    auto pidx = g.unflatten(peak);
    std::array<int, 3> shift{0, 0, 0};
    for (int d = 0; d < g.dim(); ++d) shift[d] = (n / 2 - pidx[d] + n) % n;
    if (shift_out) *shift_out = shift;

    std::vector<double> out(vals.size());
    for (std::size_t j = 0; j < vals.size(); ++j) {
        auto idx = g.unflatten(j);
        std::array<int, 3> src{0, 0, 0};
        for (int d = 0; d < g.dim(); ++d) src[d] = (idx[d] - shift[d] + n) % n;
        out[j] = vals[g.flatten(src)];
    }
    return Field(g, std::move(out));
}

} // namespace fracrel
