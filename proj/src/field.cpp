#include "fracrel/field.hpp"

#include <fftw3.h>

#include <cmath>
#include <mutex>
#include <stdexcept>

namespace fracrel {

namespace detail {

namespace {
std::mutex& planner_mutex() {
    static std::mutex m;
    return m;
}
} // namespace

void dft(std::vector<std::complex<double>>& data, const Grid& grid, int sign) {
    if (data.size() != grid.size())
        throw std::invalid_argument("dft: buffer size does not match grid");
    int n[3] = {grid.points(), grid.points(), grid.points()};
    auto* ptr = reinterpret_cast<fftw_complex*>(data.data());
    fftw_plan plan;
    {
        // FFTW's planner is not thread safe; execution of a ready plan is.
        std::lock_guard<std::mutex> lock(planner_mutex());
        plan = fftw_plan_dft(grid.dim(), n, ptr, ptr,
                             sign < 0 ? FFTW_FORWARD : FFTW_BACKWARD, FFTW_ESTIMATE);
    }
    if (!plan) throw std::runtime_error("dft: FFTW plan creation failed");
    fftw_execute(plan);
    {
        std::lock_guard<std::mutex> lock(planner_mutex());
        fftw_destroy_plan(plan);
    }
}

namespace {

// Phase (-1)^{k1+...+kN} relating the raw DFT to the box-centered transform.
// Centered and raw bin indices differ by n (even), so raw indices work.
double center_phase(const Grid& g, std::size_t flat) {
    auto idx = g.unflatten(flat);
    int sum = 0;
    for (int d = 0; d < g.dim(); ++d) sum += idx[d];
    return (sum & 1) ? -1.0 : 1.0;
}

} // namespace
} // namespace detail

Field::Field(const Grid& grid) : grid_(grid), values_(grid.size(), 0.0) {}

Field::Field(const Grid& grid, std::vector<double> values) : grid_(grid), values_(std::move(values)) {
    if (values_.size() != grid_.size())
        throw std::invalid_argument("Field: sample count does not match grid");
}

void Field::set_values(std::vector<double> v) {
    if (v.size() != grid_.size())
        throw std::invalid_argument("Field::set_values: sample count does not match grid");
    values_ = std::move(v);
    spectral_valid_ = false;
}

const std::vector<std::complex<double>>& Field::spectral() const {
    if (!spectral_valid_) {
        const std::size_t total = grid_.size();
        spectral_.assign(total, {0.0, 0.0});
        for (std::size_t j = 0; j < total; ++j) spectral_[j] = values_[j];
        detail::dft(spectral_, grid_, -1);
        const double hN = std::pow(grid_.spacing(), grid_.dim());
        for (std::size_t k = 0; k < total; ++k)
            spectral_[k] *= hN * detail::center_phase(grid_, k);
        spectral_valid_ = true;
    }
    return spectral_;
}

Field Field::from_spectral(const Grid& grid, const std::vector<std::complex<double>>& spec) {
    if (spec.size() != grid.size())
        throw std::invalid_argument("Field::from_spectral: coefficient count does not match grid");
    std::vector<std::complex<double>> buf(spec);
    const std::size_t total = grid.size();
    for (std::size_t k = 0; k < total; ++k) buf[k] *= detail::center_phase(grid, k);
    detail::dft(buf, grid, +1);
    // inverse of û = h^N · DFT: divide by h^N n^N = L^N
    const double scale = 1.0 / std::pow(grid.extent(), grid.dim());
    std::vector<double> vals(total);
    for (std::size_t j = 0; j < total; ++j) vals[j] = buf[j].real() * scale;
    Field out(grid, std::move(vals));
    return out;
}

double Field::interpolate(const std::array<double, 3>& x) const {
    const auto& spec = spectral();
    const int n = grid_.points();
    const double invLN = 1.0 / std::pow(grid_.extent(), grid_.dim());
    std::complex<double> acc{0.0, 0.0};
    const std::size_t total = grid_.size();
    for (std::size_t k = 0; k < total; ++k) {
        auto idx = grid_.unflatten(k);
        double phase = 0.0;
        double weight = 1.0;
        for (int d = 0; d < grid_.dim(); ++d) {
            phase += grid_.freq(idx[d]) * x[d];
            if (idx[d] == n / 2) weight *= 0.0; // Nyquist handled below
        }
        if (weight == 0.0) continue;
        acc += spec[k] * std::polar(1.0, 2.0 * M_PI * phase);
    }
    // Nyquist bins: coefficient is real for a real field; add as cosines.
    for (std::size_t k = 0; k < total; ++k) {
        auto idx = grid_.unflatten(k);
        bool has_nyq = false;
        for (int d = 0; d < grid_.dim(); ++d) has_nyq = has_nyq || idx[d] == n / 2;
        if (!has_nyq) continue;
        double phase = 0.0;
        for (int d = 0; d < grid_.dim(); ++d) phase += grid_.freq(idx[d]) * x[d];
        acc += spec[k].real() * std::cos(2.0 * M_PI * phase);
    }
    return acc.real() * invLN;
}

double Field::boundary_decay_ratio() const {
    double global = 0.0, face = 0.0;
    const std::size_t total = grid_.size();
    for (std::size_t j = 0; j < total; ++j) {
        const double a = std::abs(values_[j]);
        global = std::max(global, a);
        auto idx = grid_.unflatten(j);
        bool on_face = false;
        for (int d = 0; d < grid_.dim(); ++d)
            on_face = on_face || idx[d] == 0 || idx[d] == grid_.points() - 1;
        if (on_face) face = std::max(face, a);
    }
    return global > 0.0 ? face / global : 0.0;
}

bool Field::all_finite() const {
    for (double v : values_)
        if (!std::isfinite(v)) return false;
    return true;
}

} // namespace fracrel
