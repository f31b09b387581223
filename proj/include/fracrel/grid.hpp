#pragma once

#include <array>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace fracrel {

/// Uniform periodic grid on the isotropic box [-L/2, L/2)^N.
/// Nodes x_j = -L/2 + j·h per axis with h = L/n; the discrete frequency
/// set is ξ_k = k/L for centered integers k in [-n/2, n/2).
class Grid {
public:
    Grid(int dim, double extent, int points) : dim_(dim), extent_(extent), points_(points) {
        if (dim < 1 || dim > 3)
            throw std::invalid_argument("Grid: dimension must be 1, 2 or 3");
        if (!(extent > 0.0))
            throw std::invalid_argument("Grid: box extent must be positive");
        if (points < 4 || (points & (points - 1)) != 0)
            throw std::invalid_argument("Grid: points per axis must be a power of two >= 4, got " +
                                        std::to_string(points));
    }

    int dim() const { return dim_; }
    double extent() const { return extent_; }
    int points() const { return points_; }

    double spacing() const { return extent_ / points_; }

    std::size_t size() const {
        std::size_t n = 1;
        for (int d = 0; d < dim_; ++d) n *= static_cast<std::size_t>(points_);
        return n;
    }

    /// Node coordinate along one axis.
    double coord(int index) const { return -0.5 * extent_ + spacing() * index; }

    /// Centered integer frequency index for a raw DFT bin (bin n/2 is -Nyquist).
    int centered_index(int bin) const { return bin < points_ / 2 ? bin : bin - points_; }

    /// Frequency ξ = k/L for a raw DFT bin.
    double freq(int bin) const { return centered_index(bin) / extent_; }

    double nyquist() const { return points_ / (2.0 * extent_); }

    /// Decompose a flat row-major index into per-axis indices.
    std::array<int, 3> unflatten(std::size_t flat) const {
        std::array<int, 3> idx{0, 0, 0};
        for (int d = dim_ - 1; d >= 0; --d) {
            idx[d] = static_cast<int>(flat % points_);
            flat /= points_;
        }
        return idx;
    }

    std::size_t flatten(const std::array<int, 3>& idx) const {
        std::size_t flat = 0;
        for (int d = 0; d < dim_; ++d)
            flat = flat * points_ + static_cast<std::size_t>(((idx[d] % points_) + points_) % points_);
        return flat;
    }

    /// |ξ|² of the flat spectral bin.
    double freq_sq(std::size_t flat) const {
        auto idx = unflatten(flat);
        double acc = 0.0;
        for (int d = 0; d < dim_; ++d) {
            double f = freq(idx[d]);
            acc += f * f;
        }
        return acc;
    }

    bool operator==(const Grid& o) const {
        return dim_ == o.dim_ && extent_ == o.extent_ && points_ == o.points_;
    }
    bool operator!=(const Grid& o) const { return !(*this == o); }

private:
    int dim_;
    double extent_;
    int points_;
};

} // namespace fracrel
