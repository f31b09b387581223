#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

#include "fracrel/grid.hpp"

namespace fracrel {

/// Real scalar field sampled on a Grid, with a lazily computed spectral
/// cache in continuum normalization:
///     û(ξ_k) = h^N · Σ_j u(x_j) e^{-2πi x_j·ξ_k},
/// i.e. the rectangle-rule approximation of ∫ e^{-2πi x·ξ} u(x) dx for the
/// box-centered sample points. The cache is stored in raw DFT bin order and
/// invalidated whenever samples are mutated.
///
/// Fields are safe to hand between threads after construction; the lazy
/// cache is not synchronized, so concurrent spectral() calls on one shared
/// instance are not.
class Field {
public:
    explicit Field(const Grid& grid);
    Field(const Grid& grid, std::vector<double> values);

    /// Build a field from continuum-normalized spectral coefficients
    /// (imaginary part of the inverse transform must be round-off only).
    static Field from_spectral(const Grid& grid, const std::vector<std::complex<double>>& spec);

    const Grid& grid() const { return grid_; }

    std::span<const double> values() const { return values_; }

    /// Mutable access to samples; invalidates the spectral cache.
    std::span<double> values_mut() {
        spectral_valid_ = false;
        return values_;
    }

    void set_values(std::vector<double> v);

    /// Continuum-normalized spectral coefficients (computed on first use).
    const std::vector<std::complex<double>>& spectral() const;

    bool spectral_cached() const { return spectral_valid_; }

    /// Evaluate the band-limited (trigonometric) interpolant at an arbitrary
    /// point of the box; the Nyquist bin is treated as a pure cosine so the
    /// result is real. Cost is O(n^N) per call — intended for diagnostics,
    /// not bulk resampling.
    double interpolate(const std::array<double, 3>& x) const;

    /// max|u| over the box faces divided by max|u|; a periodization warning
    /// metric for fields that are supposed to live on ℝ^N.
    double boundary_decay_ratio() const;

    bool all_finite() const;

private:
    Grid grid_;
    std::vector<double> values_;
    mutable std::vector<std::complex<double>> spectral_;
    mutable bool spectral_valid_ = false;
};

namespace detail {
/// In-place complex DFT (FFTW backed), unnormalized, sign -1 forward.
void dft(std::vector<std::complex<double>>& data, const Grid& grid, int sign);
} // namespace detail

} // namespace fracrel
