#include "fracrel/variational.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "fracrel/resample.hpp"
#include "fracrel/spectral.hpp"

namespace fracrel {

double potential_integral(const Field& u, const Nonlinearity& nl) {
    double acc = 0.0;
    for (double v : u.values()) acc += nl.F(v);
    return acc * std::pow(u.grid().spacing(), u.grid().dim());
}

double nonlinear_pairing(const Field& u, const Nonlinearity& nl) {
    double acc = 0.0;
    for (double v : u.values()) acc += nl.f(v) * v;
    return acc * std::pow(u.grid().spacing(), u.grid().dim());
}

double energy(const Field& u, const OperatorParams& params, const Nonlinearity& nl) {
    return 0.5 * hs_norm_sq(u, params) - potential_integral(u, nl);
}

Field euler_gradient(const Field& u, const OperatorParams& params, const Nonlinearity& nl) {
    Field g = apply_multiplier(u, params, params.s);
    auto gv = g.values_mut();
    const auto uv = u.values();
    for (std::size_t j = 0; j < gv.size(); ++j) gv[j] -= nl.f(uv[j]);
    return g;
}

double nehari_value(const Field& u, const OperatorParams& params, const Nonlinearity& nl) {
    return hs_norm_sq(u, params) - nonlinear_pairing(u, nl);
}

PohozaevReport pohozaev_P(const Field& u, const OperatorParams& params, const Nonlinearity& nl) {
    PohozaevReport r;
    const double N = params.dim;
    r.lhs_gradient_term = 0.5 * (N - 2.0 * params.s) * hs_norm_sq(u, params);
    r.lhs_low_order_term = params.s * params.m * params.m * low_order_mass(u, params);
    r.rhs_potential_term = N * potential_integral(u, nl);
    r.residual = r.lhs_gradient_term + r.lhs_low_order_term - r.rhs_potential_term;
    const double scale = std::max(std::abs(r.lhs_gradient_term + r.lhs_low_order_term),
                                  std::abs(r.rhs_potential_term));
    r.relative_residual = scale > 0.0 ? std::abs(r.residual) / scale : 0.0;
    return r;
}

double nehari_pohozaev_J(const Field& u, const OperatorParams& params, const Nonlinearity& nl) {
    const double N = params.dim;
    const double ns = hs_norm_sq(u, params);
    const double lom = low_order_mass(u, params);
    const double intF = potential_integral(u, nl);
    const double pair = nonlinear_pairing(u, nl);

    const double expanded =
        (N + 1.0 - 2.0 * params.s) * ns + 2.0 * params.s * params.m * params.m * lom -
        2.0 * N * intF - pair;

    const PohozaevReport P = pohozaev_P(u, params, nl);
    const double composed = (ns - pair) + 2.0 * P.residual;

    const double scale = std::abs(expanded) + std::abs(ns) + std::abs(pair) + 1e-300;
    if (std::abs(expanded - composed) > 1e-8 * scale)
        throw std::logic_error("nehari_pohozaev_J: composed and expanded forms disagree by " +
                               std::to_string(std::abs(expanded - composed)));
    return expanded;
}

namespace {

// Spectral sums reused across fibering evaluations of one field.
struct FiberingCache {
    std::vector<double> weight;   // |û_k|² / L^N
    std::vector<double> freq_sq;  // |ξ_k|²
    const Field* u;
    double m2;
    double s;
    int dim;

    FiberingCache(const Field& field, const OperatorParams& params) : u(&field) {
        const auto& spec = field.spectral();
        const Grid& g = field.grid();
        const double invLN = 1.0 / std::pow(g.extent(), g.dim());
        weight.resize(spec.size());
        freq_sq.resize(spec.size());
        for (std::size_t k = 0; k < spec.size(); ++k) {
            weight[k] = std::norm(spec[k]) * invLN;
            freq_sq[k] = g.freq_sq(k);
        }
        m2 = params.m * params.m;
        s = params.s;
        dim = params.dim;
    }

    // A(t) = Σ (t⁴m² + 4π²|ξ|²)^s |û|² / L^N
    double high_sum(double t) const {
        const double t4 = t * t * t * t;
        double acc = 0.0;
        for (std::size_t k = 0; k < weight.size(); ++k)
            acc += std::pow(t4 * m2 + 4.0 * M_PI * M_PI * freq_sq[k], s) * weight[k];
        return acc;
    }

    // B(t) = Σ |û|² / (t⁴m² + 4π²|ξ|²)^{1-s} / L^N
    double low_sum(double t) const {
        const double t4 = t * t * t * t;
        double acc = 0.0;
        for (std::size_t k = 0; k < weight.size(); ++k)
            acc += std::pow(t4 * m2 + 4.0 * M_PI * M_PI * freq_sq[k], s - 1.0) * weight[k];
        return acc;
    }

    double intF(double t, const Nonlinearity& nl) const {
        double acc = 0.0;
        for (double v : u->values()) acc += nl.F(t * v);
        return acc * std::pow(u->grid().spacing(), u->grid().dim());
    }

    double pair(double t, const Nonlinearity& nl) const {
        double acc = 0.0;
        for (double v : u->values()) acc += nl.f(t * v) * v;
        return acc * std::pow(u->grid().spacing(), u->grid().dim());
    }

    double value(double t, const Nonlinearity& nl) const {
        const double N = dim;
        return 0.5 * std::pow(t, 2.0 * N + 2.0 - 4.0 * s) * high_sum(t) -
               std::pow(t, 2.0 * N) * intF(t, nl);
    }

    double derivative(double t, const Nonlinearity& nl) const {
        const double N = dim;
        return (N + 1.0 - 2.0 * s) * std::pow(t, 2.0 * N + 1.0 - 4.0 * s) * high_sum(t) +
               2.0 * s * m2 * std::pow(t, 2.0 * N + 5.0 - 4.0 * s) * low_sum(t) -
               2.0 * N * std::pow(t, 2.0 * N - 1.0) * intF(t, nl) -
               std::pow(t, 2.0 * N) * pair(t, nl);
    }
};

void require_positive_t(double t, const char* who) {
    if (!(t > 0.0)) throw std::invalid_argument(std::string(who) + ": t must be positive");
}

} // namespace

double fibering_value(const Field& u, double t, const OperatorParams& params, const Nonlinearity& nl) {
    require_positive_t(t, "fibering_value");
    return FiberingCache(u, params).value(t, nl);
}

double fibering_derivative(const Field& u, double t, const OperatorParams& params, const Nonlinearity& nl) {
    require_positive_t(t, "fibering_derivative");
    return FiberingCache(u, params).derivative(t, nl);
}

FiberingResult find_t_u(const Field& u, const OperatorParams& params, const Nonlinearity& nl) {
    if (hs_norm_sq(u, params) == 0.0)
        throw std::invalid_argument("find_t_u: field must be nonzero");
    const FiberingCache cache(u, params);
    constexpr double t_min = 1e-4, t_max = 1e4;

    FiberingResult res;
    double lo = 1.0, hi = 1.0;
    double d1 = cache.derivative(1.0, nl);
    if (d1 > 0.0) {
        lo = 1.0;
        hi = 2.0;
        while (cache.derivative(hi, nl) > 0.0) {
            lo = hi;
            hi *= 2.0;
            if (hi > t_max)
                throw std::runtime_error(
                    "find_t_u: no sign change of h'_u on [1e-4, 1e4]; the nonlinearity "
                    "violates the fibering hypotheses for this field");
        }
    } else {
        hi = 1.0;
        lo = 0.5;
        while (cache.derivative(lo, nl) < 0.0) {
            hi = lo;
            lo *= 0.5;
            if (lo < t_min)
                throw std::runtime_error(
                    "find_t_u: no sign change of h'_u on [1e-4, 1e4]; the nonlinearity "
                    "violates the fibering hypotheses for this field");
        }
    }
    res.bracket_lo = lo;
    res.bracket_hi = hi;

    // Bisection to relative width ~1e-14; h' is smooth and changes sign once.
    double a = lo, b = hi;
    int it = 0;
    while ((b - a) > 1e-14 * b && it < 200) {
        const double mid = 0.5 * (a + b);
        if (cache.derivative(mid, nl) > 0.0)
            a = mid;
        else
            b = mid;
        ++it;
    }
    res.t_u = 0.5 * (a + b);
    res.h_at_t = cache.value(res.t_u, nl);
    res.iterations = it;

    // Uniqueness scan: h' positive strictly below t_u, negative above.
    for (int i = 0; i <= 24; ++i) {
        const double t = t_min * std::pow(t_max / t_min, i / 24.0);
        if (std::abs(std::log(t / res.t_u)) < 0.05) continue;
        const double d = cache.derivative(t, nl);
        if ((t < res.t_u && d <= 0.0) || (t > res.t_u && d >= 0.0))
            throw std::runtime_error("find_t_u: h'_u changes sign more than once (at scan node t = " +
                                     std::to_string(t) + ")");
    }
    return res;
}

Field project_to_manifold(const Field& u, const OperatorParams& params, const Nonlinearity& nl) {
    const FiberingResult fr = find_t_u(u, params, nl);
    return dilate_field(u, fr.t_u);
}

double energy_gap(const Field& u, const OperatorParams& params, const Nonlinearity& nl) {
    const double N = params.dim;
    const double gwm = gradient_weighted_mass(u, params);
    const double pair = nonlinear_pairing(u, nl);
    const double intF = potential_integral(u, nl);
    return (2.0 * params.s * gwm + (pair - 2.0 * intF)) / (2.0 * N + 2.0);
}

HypothesisReport hypothesis_checks(const Nonlinearity& nl, double t_max, double u_max, int count) {
    HypothesisReport r;
    r.superquad_min = 1e300;

    // (f₁): f(t)/t increasing on t > 0.
    double prev = -1e300;
    for (int i = 1; i <= count; ++i) {
        const double t = t_max * i / count;
        const double q = nl.f(t) / t;
        const double margin = q - prev;
        if (i > 1) {
            if (margin < r.f1_worst_margin) r.f1_worst_margin = margin;
            if (margin <= 0.0) r.f1_monotone_ok = false;
            r.f1_rows.push_back({t, 0.0, margin, margin > 0.0});
        }
        prev = q;
        ++r.samples;
    }

    // Fibering comparison: t²/2 f(u)u - F(tu) <= 1/2 f(u)u - F(u).
    for (int i = 1; i <= count; ++i) {
        const double t = 0.1 + (t_max - 0.1) * (i - 1) / (count - 1);
        for (int j = 0; j < count; ++j) {
            const double uu = -u_max + 2.0 * u_max * j / (count - 1);
            if (uu == 0.0) continue;
            const double lhs = 0.5 * t * t * nl.f(uu) * uu - nl.F(t * uu);
            const double rhs = 0.5 * nl.f(uu) * uu - nl.F(uu);
            const double viol = lhs - rhs;
            const bool ok = viol <= 1e-12 * (std::abs(lhs) + std::abs(rhs) + 1.0);
            if (viol > r.comparison_worst) r.comparison_worst = viol;
            if (!ok) r.comparison_ok = false;
            r.comparison_rows.push_back({t, uu, rhs - lhs, ok});
            ++r.samples;
        }
    }

    // Super-quadraticity witness and (f₃) growth.
    double prev_w = -1e300;
    for (int i = 1; i <= count; ++i) {
        const double t = 10.0 + 10.0 * i; // large-sample ramp
        const double w = t * nl.f(t) - 2.0 * nl.F(t);
        if (w <= prev_w) r.f3_growing_ok = false;
        prev_w = w;
    }
    for (int i = 1; i <= count; ++i) {
        const double t = -u_max + 2.0 * u_max * i / (count + 1.0);
        if (t == 0.0) continue;
        const double w = t * nl.f(t) - 2.0 * nl.F(t);
        r.superquad_min = std::min(r.superquad_min, w);
        if (w <= 0.0) r.superquad_ok = false;
        r.superquad_rows.push_back({t, 0.0, w, w > 0.0});
        ++r.samples;
    }
    return r;
}

NonexistenceReport nonexistence_certificate(const Field& u, const OperatorParams& params, double p) {
    const auto crit = params.critical_exponent();
    if (!crit)
        throw std::invalid_argument(
            "nonexistence_certificate: requires N > 2s (critical exponent 2N/(N-2s) undefined for N = " +
            std::to_string(params.dim) + ", s = " + std::to_string(params.s) + ")");
    if (!(p >= 2.0)) throw std::invalid_argument("nonexistence_certificate: p must be >= 2");
    if (hs_norm_sq(u, params) == 0.0)
        throw std::invalid_argument("nonexistence_certificate: field must be nonzero");

    NonexistenceReport r;
    r.critical_exponent = *crit;
    r.p = p;
    const double N = params.dim;
    r.D = N / p - 0.5 * (N - 2.0 * params.s);
    const double lpp = lp_pow(u, p);
    r.nehari_defect = hs_norm_sq(u, params) - lpp;
    r.margin_reference = params.m * params.m * params.s * low_order_mass(u, params);
    r.obstruction_gap = r.margin_reference - r.D * lpp;
    r.supercritical = p >= *crit - 1e-12;
    r.certified = r.supercritical && r.obstruction_gap > 0.0;
    return r;
}

SobolevScanTable sobolev_quotient_scan(const OperatorParams& params, double mu,
                                       const std::vector<double>& t_list, int points,
                                       double box_over_mu) {
    if (!(static_cast<double>(params.dim) > 4.0 * params.s))
        throw std::invalid_argument("sobolev_quotient_scan: requires N > 4s (else U is not in H^s)");
    if (!(mu > 0.0)) throw std::invalid_argument("sobolev_quotient_scan: mu must be positive");
    for (std::size_t i = 0; i < t_list.size(); ++i) {
        if (!(t_list[i] > 0.0) || (i > 0 && t_list[i] <= t_list[i - 1]))
            throw std::invalid_argument("sobolev_quotient_scan: t_list must be positive and increasing");
    }

    const double N = params.dim;
    const double pstar = 2.0 * N / (N - 2.0 * params.s);
    const double expo = 0.5 * (N - 2.0 * params.s);
    const double L_ref = box_over_mu * mu;

    SobolevScanTable table;
    table.mu = mu;
    table.box_over_mu = box_over_mu;
    table.points = points;

    auto build = [&](double t, double offset_frac) {
        const double L = L_ref / t;
        const Grid g(params.dim, L, points);
        const double h = g.spacing();
        std::vector<double> vals(g.size());
        for (std::size_t j = 0; j < vals.size(); ++j) {
            auto idx = g.unflatten(j);
            double r2 = 0.0;
            for (int d = 0; d < g.dim(); ++d) {
                const double x = t * (g.coord(idx[d]) + offset_frac * h);
                r2 += x * x;
            }
            vals[j] = std::pow(mu * mu + r2, -expo);
        }
        return Field(g, std::move(vals));
    };

    // Reference run fixes the normalization |U|_{2*_s} = 1 on the grid.
    const Field Uref = build(1.0, 0.0);
    const double cnorm = 1.0 / lp_norm(Uref, pstar);
    {
        const auto& spec = Uref.spectral();
        const Grid& g = Uref.grid();
        double l2 = 0.0;
        const double invLN = 1.0 / std::pow(g.extent(), g.dim());
        for (std::size_t k = 0; k < spec.size(); ++k) l2 += std::norm(spec[k]) * invLN;
        table.u_l2_sq = l2 * cnorm * cnorm;
    }

    const double m2s = std::pow(params.m, 2.0 * params.s);
    for (std::size_t i = 0; i < t_list.size(); ++i) {
        const double t = t_list[i];
        // deterministic per-t fractional offset, never 0 for t != 1 runs
        const double offset = std::fmod(0.381966011 * static_cast<double>(i + 1), 0.5) + 0.1;
        const Field v = build(t, offset);
        const Grid& g = v.grid();
        const auto& spec = v.spectral();
        const double invLN = 1.0 / std::pow(g.extent(), g.dim());
        double lam = 0.0, sless = 0.0;
        for (std::size_t k = 0; k < spec.size(); ++k) {
            const double w = std::norm(spec[k]) * invLN;
            const double fsq = g.freq_sq(k);
            lam += std::pow(params.m * params.m + 4.0 * M_PI * M_PI * fsq, params.s) * w;
            sless += std::pow(4.0 * M_PI * M_PI * fsq, params.s) * w;
        }
        const double pp = lp_pow(v, pstar);
        const double denom = std::pow(pp, 2.0 / pstar);
        SobolevScanRow row;
        row.t = t;
        row.lambda_quotient = lam / denom;
        row.s_quotient = sless / denom;
        row.mass_model = m2s * std::pow(t, -2.0 * params.s) * table.u_l2_sq;
        row.pnorm_scaled = std::pow(t, N) * pp * std::pow(cnorm, pstar);
        table.rows.push_back(row);
    }
    return table;
}

} // namespace fracrel
