#pragma once

#include <optional>
#include <stdexcept>
#include <string>

namespace fracrel {

/// Parameters of the pseudo-relativistic operator (-Δ + m²)^s on ℝ^N.
/// m > 0 keeps the Fourier multiplier strictly positive, so every real
/// power of the operator is well defined.
struct OperatorParams {
    double m;    // mass, > 0
    double s;    // fractional order, in (0,1)
    int    dim;  // spatial dimension N, 1..3

    OperatorParams(double m_, double s_, int dim_) : m(m_), s(s_), dim(dim_) {
        if (!(m > 0.0))
            throw std::invalid_argument("OperatorParams: mass m must be > 0, got " + std::to_string(m_));
        if (!(s > 0.0 && s < 1.0))
            throw std::invalid_argument("OperatorParams: order s must lie in (0,1), got " + std::to_string(s_));
        if (dim < 1 || dim > 3)
            throw std::invalid_argument("OperatorParams: dimension N must be 1, 2 or 3, got " + std::to_string(dim_));
    }

    /// m^{2s}, the bottom of the multiplier spectrum.
    double multiplier_floor() const;

    /// Critical exponent 2N/(N-2s). Empty when N <= 2s (exponent infinite);
    /// operations that need it must reject that regime themselves.
    std::optional<double> critical_exponent() const {
        if (static_cast<double>(dim) <= 2.0 * s) return std::nullopt;
        return 2.0 * dim / (dim - 2.0 * s);
    }
};

} // namespace fracrel
