#include "fracrel/bessel_k.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace fracrel {

namespace {

double trapezoid(double nu, double y, double step, double t_max) {
    // Half weight at t = 0 (integrand value e^{-y}).
    double acc = 0.5 * std::exp(-y);
    for (double t = step; t <= t_max; t += step)
        acc += std::exp(-y * std::cosh(t)) * std::cosh(nu * t);
    return acc * step;
}

} // namespace

double modified_bessel_k(double nu, double y, double rel_tol) {
    if (!(rel_tol > 0.0)) throw std::invalid_argument("modified_bessel_k: rel_tol must be positive");
    if (!(y > 0.0))
        throw std::invalid_argument("modified_bessel_k: argument must be positive, got " + std::to_string(y));
    if (nu < 0.0) nu = -nu; // K_{-ν} = K_ν

    // Cut where y(cosh t - 1) - νt exceeds ~50 e-folds below the t=0 value.
    double t_max = 1.0;
    while (y * (std::cosh(t_max) - 1.0) - nu * t_max < 50.0 && t_max < 60.0) t_max += 0.5;

    double step = 0.5;
    double prev = trapezoid(nu, y, step, t_max);
    for (int level = 0; level < 12; ++level) {
        step *= 0.5;
        const double cur = trapezoid(nu, y, step, t_max);
        if (std::abs(cur - prev) <= rel_tol * std::abs(cur)) return cur;
        prev = cur;
    }
    throw std::runtime_error("modified_bessel_k: quadrature failed to converge at y = " + std::to_string(y) +
                             ", nu = " + std::to_string(nu));
}

} // namespace fracrel
