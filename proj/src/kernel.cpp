#include "fracrel/kernel.hpp"

#include <cmath>
#include <complex>
#include <stdexcept>
#include <string>

#include "fracrel/bessel_k.hpp"
#include "fracrel/quadrature.hpp"
#include "fracrel/spectral.hpp"

namespace fracrel {

namespace {

// ∫ e^{-πr²/δ - m²δ/(4π)} δ^{(2s-N)/2 - 1} dδ over (0,1] ∪ [1,∞), log
// substitution on each piece, unit panels of Gauss-Legendre.
double delta_integral(double r, const KernelSpec& spec, int order) {
    const double m = spec.params.m, s = spec.params.s;
    const double N = spec.params.dim;
    const double a = M_PI * r * r;
    const double b = m * m / (4.0 * M_PI);
    const double p = 0.5 * (2.0 * s - N);

    // (0,1]: δ = e^{-v}, dδ/δ = -dv
    const double v_max = std::max(1.0, std::log(46.0 / a) + 2.0);
    auto lower = [&](double v) { return std::exp(-a * std::exp(v) - b * std::exp(-v) - p * v); };
    // [1,∞): δ = e^{w}
    const double w_max = std::log(46.0 / b) + 2.0;
    auto upper = [&](double w) { return std::exp(-a * std::exp(-w) - b * std::exp(w) + p * w); };

    double acc = 0.0;
    for (double lo = 0.0; lo < v_max; lo += 1.0)
        acc += gl_panel(lower, lo, std::min(lo + 1.0, v_max), order);
    for (double lo = 0.0; lo < w_max; lo += 1.0)
        acc += gl_panel(upper, lo, std::min(lo + 1.0, w_max), order);
    return acc;
}

double front_factor(const KernelSpec& spec) {
    return std::pow(4.0 * M_PI, -spec.params.s) / std::tgamma(spec.params.s);
}

} // namespace

void KernelSpec::validate() const {
    double worst = 0.0, worst_r = 0.0;
    for (double r : {1e-3, 1e-2, 0.1, 0.5, 1.0, 2.0, 5.0}) {
        const double coarse = delta_integral(r, *this, panel_order);
        const double fine = delta_integral(r, *this, panel_order + 8);
        const double rel = std::abs(coarse - fine) / std::abs(fine);
        if (rel > worst) {
            worst = rel;
            worst_r = r;
        }
    }
    if (worst > rel_tol)
        throw std::runtime_error("KernelSpec: δ-integral not converged, relative change " +
                                 std::to_string(worst) + " at radius " + std::to_string(worst_r));
}

double kernel_value_radial(double r, const KernelSpec& spec) {
    const double N = spec.params.dim;
    if (!(r > 0.0)) {
        if (2.0 * spec.params.s <= N)
            throw std::invalid_argument("kernel_value: g_s is singular at the origin for 2s <= N");
        // 2s > N: finite value at 0 (only reachable for N = 1, s > 1/2)
        const double p = 0.5 * (2.0 * spec.params.s - N);
        const double b = spec.params.m * spec.params.m / (4.0 * M_PI);
        return front_factor(spec) * std::tgamma(p) * std::pow(b, -p);
    }
    return front_factor(spec) * delta_integral(r, spec, spec.panel_order);
}

double kernel_value(const std::array<double, 3>& x, const KernelSpec& spec) {
    double r2 = 0.0;
    for (int d = 0; d < spec.params.dim; ++d) r2 += x[d] * x[d];
    return kernel_value_radial(std::sqrt(r2), spec);
}

double kernel_small_ball_mass(double eps, const KernelSpec& spec) {
    if (!(eps > 0.0)) throw std::invalid_argument("kernel_small_ball_mass: eps must be positive");
    const double N = spec.params.dim;
    const double s = spec.params.s;
    const double m = spec.params.m;
    const double surface = N == 1 ? 2.0 : (N == 2 ? 2.0 * M_PI : 4.0 * M_PI);

    if (std::abs(2.0 * s - N) < 0.02) {
        // Log case (N = 1, s = 1/2 in range): g = C·2K₀(m r),
        // ∫₀^ε K₀(mr) dr ≈ ε(1 - γ - ln(mε/2)) for small mε.
        const double gamma_e = 0.57721566490153286;
        const double c2k = front_factor(spec) * 2.0;
        return surface * c2k * eps * (1.0 - gamma_e - std::log(0.5 * m * eps));
    }
    if (2.0 * s < N) {
        // g ≈ A r^{2s-N}, A = C·Γ((N-2s)/2)·π^{(2s-N)/2}
        const double A = front_factor(spec) * std::tgamma(0.5 * (N - 2.0 * s)) *
                         std::pow(M_PI, 0.5 * (2.0 * s - N));
        return surface * A * std::pow(eps, 2.0 * s) / (2.0 * s);
    }
    // 2s > N: bounded kernel, rectangle estimate.
    return surface * kernel_value_radial(0.0, spec) * std::pow(eps, N) / N;
}

double kernel_fourier_quadrature(const KernelSpec& spec, double L, int n,
                                 const std::array<double, 3>& xi) {
    const Grid g(spec.params.dim, L, n);
    const double hN = std::pow(g.spacing(), g.dim());
    std::complex<double> acc{0.0, 0.0};
    for (std::size_t j = 0; j < g.size(); ++j) {
        auto idx = g.unflatten(j);
        double r2 = 0.0, phase = 0.0;
        for (int d = 0; d < g.dim(); ++d) {
            const double x = g.coord(idx[d]);
            r2 += x * x;
            phase += x * xi[d];
        }
        if (r2 == 0.0) continue; // singular node patched below
        acc += kernel_value_radial(std::sqrt(r2), spec) * std::polar(1.0, -2.0 * M_PI * phase);
    }
    acc *= hN;
    // Singular cell: e^{-2πi x·ξ} ≈ 1 over a cell around the origin; use the
    // small-ball mass of the equal-volume ball.
    const double vol_ball = g.dim() == 1 ? 2.0 : (g.dim() == 2 ? M_PI : 4.0 * M_PI / 3.0);
    const double eps = std::pow(hN / vol_ball, 1.0 / g.dim());
    acc += kernel_small_ball_mass(eps, spec);
    return acc.real();
}

double kernel_fourier_radial(const KernelSpec& spec, double xi, double r_max) {
    const int N = spec.params.dim;
    if (N == 2)
        throw std::invalid_argument("kernel_fourier_radial: N = 2 not supported (Bessel-J weight)");
    if (xi < 0.0) xi = -xi;
    if (r_max <= 0.0) r_max = 40.0 / spec.params.m;

    auto radial = [&](double r) {
        const double g = kernel_value_radial(r, spec);
        if (N == 1) return 2.0 * g * std::cos(2.0 * M_PI * xi * r);
        const double a = 2.0 * M_PI * xi * r;
        const double sinc = a == 0.0 ? 1.0 : std::sin(a) / a;
        return 4.0 * M_PI * r * r * g * sinc;
    };

    // Geometric panels absorb the r→0 singularity; switch to uniform
    // panels short enough for the oscillation once r is order one.
    const double r_switch = std::min(1.0, r_max);
    double acc = gl_geometric(radial, 1e-12, r_switch, 2.0, 12);
    const double width = std::min(0.5, 0.2 / std::max(xi, 0.25));
    for (double lo = r_switch; lo < r_max; lo += width)
        acc += gl_panel(radial, lo, std::min(lo + width, r_max), 12);
    return acc;
}

Field bessel_potential(const Field& f, const OperatorParams& params, double sigma) {
    if (!(sigma > 0.0)) throw std::invalid_argument("bessel_potential: order must be positive");
    return apply_multiplier(f, params, -sigma);
}

} // namespace fracrel
