#include "fracrel/symmetry.hpp"
#include "fracrel/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>
#include <string>

#include "fracrel/spectral.hpp"

namespace fracrel {

namespace {

// Reflected node index along the axis, or -1 if λ is not grid-commensurate.
int reflected_index(const Grid& g, const ReflectionSpec& spec, int idx) {
    const double h = g.spacing();
    const double two_lambda_steps = 2.0 * spec.lambda / h;
    const double rounded = std::round(two_lambda_steps);
    if (std::abs(two_lambda_steps - rounded) > 1e-9) return -1;
    // x = -L/2 + idx·h ; x' = 2λ - x = -L/2 + (2λ/h + n - idx)·h mod n
    const int n = g.points();
    long j = static_cast<long>(rounded) - idx;
    j %= n;
    if (j < 0) j += n;
    return static_cast<int>(j);
}

} // namespace

Field reflect_field(const Field& u, const ReflectionSpec& spec) {
    const Grid& g = u.grid();
    if (spec.axis < 0 || spec.axis >= g.dim())
        throw std::invalid_argument("reflect_field: axis out of range");
    if (reflected_index(g, spec, 0) < 0)
        throw std::invalid_argument("reflect_field: plane offset is not grid-commensurate "
                                    "(2λ must be a multiple of the spacing)");
    const auto vals = u.values();
    std::vector<double> out(vals.size());
    for (std::size_t j = 0; j < vals.size(); ++j) {
        auto idx = g.unflatten(j);
        idx[spec.axis] = reflected_index(g, spec, idx[spec.axis]);
        out[g.flatten(idx)] = vals[j];
    }
    return Field(g, std::move(out));
}

FixedPointResult fixed_point_iterate(const Field& u0, const OperatorParams& params,
                                     const Nonlinearity& nl, FixedPointMode mode, int max_iter,
                                     double tol) {
    const double norm0 = lp_norm(u0, 2.0);
    FixedPointResult res{u0};
    if (norm0 == 0.0) {
        res.converged = true;
        return res;
    }

    Field u = u0;
    for (int it = 1; it <= max_iter; ++it) {
        Field fu(u.grid());
        {
            auto fv = fu.values_mut();
            const auto uv = u.values();
            for (std::size_t j = 0; j < fv.size(); ++j) fv[j] = nl.f(std::max(uv[j], 0.0));
        }
        Field next = bessel_potential(fu, params, params.s);
        {
            auto nv = next.values_mut();
            for (auto& v : nv) v = std::max(v, 0.0);
        }
        double r = 1.0;
        const double nn = lp_norm(next, 2.0);
        if (mode == FixedPointMode::Normalized) {
            if (nn == 0.0) {
                res.collapsed = true;
                res.iterations = it;
                break;
            }
            r = norm0 / nn;
            auto nv = next.values_mut();
            for (auto& v : nv) v *= r;
        } else {
            if (nn > 1e6 * norm0) {
                res.diverged = true;
                res.field = std::move(next);
                res.iterations = it;
                break;
            }
            if (nn < 1e-12 * norm0) {
                res.collapsed = true;
                res.field = std::move(next);
                res.iterations = it;
                break;
            }
        }

        double delta = 0.0, scale = 0.0;
        {
            const auto a = next.values();
            const auto b = u.values();
            for (std::size_t j = 0; j < a.size(); ++j) {
                delta += (a[j] - b[j]) * (a[j] - b[j]);
                scale += a[j] * a[j];
            }
        }
        u = std::move(next);
        res.r_factor = r;
        res.iterations = it;
        if (scale > 0.0 && std::sqrt(delta / scale) < tol) {
            res.converged = true;
            break;
        }
    }

    res.field = u;
    // Residual of the unnormalized fixed-point map at the final iterate.
    Field fu(u.grid());
    {
        auto fv = fu.values_mut();
        const auto uv = u.values();
        for (std::size_t j = 0; j < fv.size(); ++j) fv[j] = nl.f(uv[j]);
    }
    const Field img = bessel_potential(fu, params, params.s);
    double diff = 0.0, nrm = 0.0;
    {
        const auto a = u.values();
        const auto b = img.values();
        for (std::size_t j = 0; j < a.size(); ++j) {
            diff += (a[j] - b[j]) * (a[j] - b[j]);
            nrm += a[j] * a[j];
        }
    }
    res.residual = nrm > 0.0 ? std::sqrt(diff / nrm) : 0.0;
    return res;
}

ReflectionReport reflection_residual(const Field& u, const Nonlinearity& nl,
                                     const ReflectionSpec& spec, const OperatorParams& params) {
    const Grid& g = u.grid();
    if (g.dim() > 2)
        throw std::invalid_argument("reflection_residual: supported for N = 1, 2");
    const Field ul = reflect_field(u, spec);
    KernelSpec kspec(params);

    const double h = g.spacing();
    const double hN = std::pow(h, g.dim());

    // N = 1: integrate the kernel exactly over each grid cell (the
    // rectangle rule converges too slowly near the singularity); the cell
    // mass table M[k] = ∫_{(k-1/2)h}^{(k+1/2)h} g(|t|) dt covers all node
    // distances. N = 2 keeps point values with a small-ball patch.
    std::vector<double> cell_mass;
    if (g.dim() == 1) {
        // distances reach 2n cells once the reflected point leaves the box
        cell_mass.resize(2 * g.points() + 2);
        auto gr = [&](double r) { return kernel_value_radial(std::abs(r), kspec); };
        cell_mass[0] = 2.0 * gl_geometric(gr, 1e-12, 0.5 * h, 2.0, 8);
        for (int k = 1; k < static_cast<int>(cell_mass.size()); ++k) {
            const int panels = k <= 4 ? 4 : 1;
            double acc = 0.0;
            const double lo = (k - 0.5) * h, hi = (k + 0.5) * h;
            for (int p = 0; p < panels; ++p)
                acc += gl_panel(gr, lo + (hi - lo) * p / panels, lo + (hi - lo) * (p + 1) / panels, 8);
            cell_mass[k] = acc;
        }
    }

    // Kernel lookups on squared index distances (grid distances repeat).
    std::map<long, double> ktable;
    auto kernel_at = [&](long idx_dist_sq) {
        auto it = ktable.find(idx_dist_sq);
        if (it == ktable.end()) {
            const double r = h * std::sqrt(static_cast<double>(idx_dist_sq));
            it = ktable.emplace(idx_dist_sq, kernel_value_radial(r, kspec)).first;
        }
        return it->second;
    };

    const auto uv = u.values();
    const auto lv = ul.values();
    // Equal-volume ball replacing the singular grid cell (N = 2 path).
    const double vol_ball = g.dim() == 1 ? 2.0 : M_PI;
    const double ball_eps = std::pow(hN / vol_ball, 1.0 / g.dim());
    const double ball_mass = kernel_small_ball_mass(ball_eps, kspec);

    // Σ_λ node set along the reflection axis.
    auto in_half_space = [&](int axis_idx) {
        const double x = g.coord(axis_idx);
        return spec.keep_left ? x <= spec.lambda + 1e-12 : x >= spec.lambda - 1e-12;
    };

    ReflectionReport rep;
    for (double v : uv) rep.field_max = std::max(rep.field_max, std::abs(v));

    // Sample x over Σ_λ nodes (every node for N=1; every 4th per axis for N=2).
    const int stride = g.dim() == 1 ? 1 : 4;
    const long lambda_steps = std::lround(2.0 * spec.lambda / h);
    const int n = g.points();
    for (std::size_t jx = 0; jx < uv.size(); ++jx) {
        auto xi = g.unflatten(jx);
        if (!in_half_space(xi[spec.axis])) continue;
        bool strided = false;
        for (int d = 0; d < g.dim(); ++d)
            if (xi[d] % stride != 0) strided = true;
        if (strided) continue;
        if (lambda_steps == 2L * xi[spec.axis] - n) continue; // on the plane: 0 = 0

        const double lhs = uv[jx] - lv[jx];
        double rhs = 0.0;
        for (std::size_t jy = 0; jy < uv.size(); ++jy) {
            auto yi = g.unflatten(jy);
            if (!in_half_space(yi[spec.axis])) continue;
            const double fdiff = nl.f(uv[jy]) - nl.f(lv[jy]);
            if (fdiff == 0.0) continue;
            long d2 = 0, d2r = 0;
            for (int d = 0; d < g.dim(); ++d) {
                const long diff = xi[d] - yi[d];
                // geometric displacement of the reflected point (x_λ may
                // leave the box; no periodic wrap here)
                const long diff_r = d == spec.axis ? lambda_steps + n - xi[d] - yi[d]
                                                   : static_cast<long>(xi[d]) - yi[d];
                d2 += diff * diff;
                d2r += diff_r * diff_r;
            }
            if (g.dim() == 1) {
                const long k = std::lround(std::sqrt(static_cast<double>(d2)));
                const long kr = std::lround(std::sqrt(static_cast<double>(d2r)));
                rhs += (cell_mass[k] - cell_mass[kr]) * fdiff;
                if (k == 0)
                    rep.excluded_ball_bound =
                        std::max(rep.excluded_ball_bound, std::abs(cell_mass[0] * fdiff));
            } else if (d2 == 0) {
                // singular cell: analytic small-ball estimate for g(x-y),
                // plain rectangle rule for the regular reflected kernel
                rhs += ball_mass * fdiff - kernel_at(d2r) * fdiff * hN;
                rep.excluded_ball_bound = std::max(rep.excluded_ball_bound, std::abs(ball_mass * fdiff));
            } else {
                rhs += (kernel_at(d2) - kernel_at(d2r)) * fdiff * hN;
            }
        }
        rep.sup_residual = std::max(rep.sup_residual, std::abs(lhs - rhs));
        rep.sup_lhs = std::max(rep.sup_lhs, std::abs(lhs));
        rep.max_lhs_signed = std::max(rep.max_lhs_signed, lhs);
        ++rep.samples;
    }
    return rep;
}

RadialReport radial_monotonicity_check(const Field& u, const std::array<double, 3>& center) {
    const Grid& g = u.grid();
    const int n = g.points();
    RadialReport rep;

    std::array<int, 3> cidx{0, 0, 0};
    for (int d = 0; d < g.dim(); ++d) {
        cidx[d] = static_cast<int>(std::round((center[d] + 0.5 * g.extent()) / g.spacing()));
        cidx[d] = std::clamp(cidx[d], 0, n - 1);
        rep.center_used[d] = g.coord(cidx[d]);
    }

    // Exact integer squared-distance classes (periodic minimal image);
    // two-pass variance so identical members give exactly zero spread.
    const auto vals = u.values();
    auto class_of = [&](std::size_t j) {
        auto idx = g.unflatten(j);
        long d2 = 0;
        for (int d = 0; d < g.dim(); ++d) {
            int diff = std::abs(idx[d] - cidx[d]);
            diff = std::min(diff, n - diff);
            d2 += static_cast<long>(diff) * diff;
        }
        return d2;
    };
    std::map<long, double> sums;
    std::map<long, int> counts;
    for (std::size_t j = 0; j < vals.size(); ++j) {
        sums[class_of(j)] += vals[j];
        counts[class_of(j)] += 1;
    }
    std::map<long, double> sqdev;
    for (std::size_t j = 0; j < vals.size(); ++j) {
        const long d2 = class_of(j);
        const double dev = vals[j] - sums[d2] / counts[d2];
        sqdev[d2] += dev * dev;
    }

    double peak_mean = 0.0;
    for (const auto& [d2, sum] : sums) {
        const int c = counts[d2];
        RadialShell shell;
        shell.radius = g.spacing() * std::sqrt(static_cast<double>(d2));
        shell.mean = sum / c;
        shell.stddev = std::sqrt(sqdev[d2] / c);
        shell.count = c;
        peak_mean = std::max(peak_mean, std::abs(shell.mean));
        rep.shells.push_back(shell);
    }

    double max_std = 0.0;
    for (const auto& sh : rep.shells) max_std = std::max(max_std, sh.stddev);
    rep.asymmetry = peak_mean > 0.0 ? max_std / peak_mean : 0.0;

    for (std::size_t i = 1; i < rep.shells.size(); ++i) {
        const double rise = rep.shells[i].mean - rep.shells[i - 1].mean;
        if (rise > 0.0) {
            ++rep.monotonicity_violations;
            rep.worst_violation = std::max(rep.worst_violation, rise);
        }
    }
    return rep;
}

HypothesisSReport hypothesis_s_check(const Nonlinearity& nl, double beta, double q,
                                     const Field& witness, const OperatorParams& params) {
    const auto crit = params.critical_exponent();
    if (!crit)
        throw std::invalid_argument("hypothesis_s_check: requires N > 2s");
    const double twostar = *crit;
    if (!(beta > 1.0 && beta < twostar - 1.0))
        throw std::invalid_argument("hypothesis_s_check: failed constraint beta in (1, 2*_s - 1)");
    if (!(q >= 2.0 && q <= twostar))
        throw std::invalid_argument("hypothesis_s_check: failed constraint q in [2, 2*_s]");
    const double lower = std::max(beta, params.dim * (beta - 1.0) / (2.0 * params.s));
    if (!(q > lower))
        throw std::invalid_argument("hypothesis_s_check: failed constraint q > max{beta, N(beta-1)/(2s)}");

    HypothesisSReport rep;
    rep.beta = beta;
    rep.q = q;

    Field fp(witness.grid());
    {
        auto fv = fp.values_mut();
        const auto wv = witness.values();
        for (std::size_t j = 0; j < fv.size(); ++j) fv[j] = nl.fprime(wv[j]);
    }
    rep.fprime_norm = lp_norm(fp, q / (beta - 1.0));

    const double dt = 1e-4;
    for (int i = 0; i <= 200; ++i) {
        const double t = 10.0 * i / 200.0;
        const double f1 = nl.fprime(t);
        if (f1 < 0.0) rep.fprime_nonneg = false;
        const double f2 = (nl.fprime(t + dt) - f1) / dt;
        if (f2 < -1e-6) rep.fsecond_nonneg = false;
        if (nl.kind() == NonlinKind::LogLin && f1 > 2.0 * t + 1e-12) rep.loglin_bound_ok = false;
    }
    return rep;
}

} // namespace fracrel
