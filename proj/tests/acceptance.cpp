// Acceptance suite: one line per criterion, nonzero exit when any fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include "fracrel/constants.hpp"
#include "fracrel/extension.hpp"
#include "fracrel/groundstate.hpp"
#include "fracrel/kernel.hpp"
#include "fracrel/profile.hpp"
#include "fracrel/resample.hpp"
#include "fracrel/spectral.hpp"
#include "fracrel/symmetry.hpp"
#include "fracrel/variational.hpp"

using namespace fracrel;

namespace {

struct Outcome {
    bool pass = true;
    std::ostringstream detail;

    void require(bool ok, const std::string& what) {
        pass = pass && ok;
        if (!ok) detail << " [FAILED: " << what << "]";
    }
    template <typename T>
    void note(const std::string& key, T value) {
        detail << " " << key << "=" << value;
    }
};

double rel(double a, double b) { return std::abs(a - b) / std::max(std::abs(b), 1e-300); }

// ---------------------------------------------------------------- criterion 1
Outcome constants_suite() {
    Outcome o;
    for (double s : {0.25, 0.5, 0.75}) {
        const ProfileTable t = compute_profile(s);
        const auto rep = verify_profile_identities(t);
        o.require(rep.energy_rel_err < 1e-5, "K(Phi) vs k_s at s=" + std::to_string(s));
        o.require(rep.mass_rel_err < 1e-5, "mass vs s*k_s at s=" + std::to_string(s));
        if (s == 0.5) {
            o.require(std::abs(k_constant(0.5) - 1.0) < 1e-8, "k_{1/2} = 1");
            double worst = 0.0;
            for (std::size_t i = 0; i < t.mesh.size(); ++i)
                worst = std::max(worst, std::abs(t.phi[i] - std::exp(-t.mesh[i])));
            o.require(worst < 1e-8, "Phi_{1/2} = e^{-y}");
            o.note("sup|Phi-exp|", worst);
        }
    }
    return o;
}

// ---------------------------------------------------------------- criterion 2
Outcome operator_suite() {
    Outcome o;
    double worst_eig = 0.0, worst_semi = 0.0, worst_sym = 0.0;
    for (int dim : {1, 2}) {
        for (int n : dim == 1 ? std::vector<int>{64, 256} : std::vector<int>{64, 128}) {
            Grid g(dim, 8.0, n);
            OperatorParams op(1.0, 0.45, dim);
            std::vector<double> v(g.size());
            for (std::size_t j = 0; j < v.size(); ++j) {
                auto idx = g.unflatten(j);
                double prod = 1.0;
                for (int d = 0; d < dim; ++d)
                    prod *= std::cos(2.0 * M_PI * 3.0 * g.coord(idx[d]) / g.extent());
                v[j] = prod;
            }
            Field mode(g, v);
            const double lam = multiplier_value(op, dim * std::pow(3.0 / g.extent(), 2.0), op.s);
            Field Am = apply_multiplier(mode, op, op.s);
            for (std::size_t j = 0; j < v.size(); ++j)
                worst_eig = std::max(worst_eig, std::abs(Am.values()[j] - lam * v[j]) / lam);

            Field u = random_band_limited(g, n / 8, 7 * n + dim);
            Field w = random_band_limited(g, n / 8, 7 * n + dim + 1);
            Field a = apply_multiplier(apply_multiplier(u, op, 0.2), op, 0.25);
            Field b = apply_multiplier(u, op, 0.45);
            double diff = 0.0, scale = 0.0;
            for (std::size_t j = 0; j < v.size(); ++j) {
                diff += std::pow(a.values()[j] - b.values()[j], 2);
                scale += std::pow(b.values()[j], 2);
            }
            worst_semi = std::max(worst_semi, std::sqrt(diff / scale));
            worst_sym = std::max(worst_sym, std::abs(l2_inner(apply_multiplier(u, op, op.s), w) -
                                                     l2_inner(u, apply_multiplier(w, op, op.s))) /
                                                hs_norm_sq(u, op));
        }
    }
    o.require(worst_eig < 1e-12, "plane-wave eigenvalues");
    o.require(worst_semi < 1e-12, "semigroup");
    o.require(worst_sym < 1e-12, "operator symmetry");
    o.note("eig", worst_eig);
    o.note("semi", worst_semi);
    o.note("sym", worst_sym);
    return o;
}

// ---------------------------------------------------------------- criterion 3
Outcome extension_suite() {
    Outcome o;
    Grid g(1, 8.0, 128);
    double worst_energy = 0.0, worst_mass = 0.0, worst_trace = 0.0;
    for (double s : {0.25, 0.5, 0.75}) {
        OperatorParams op(1.0, s, 1);
        auto table = std::make_shared<const ProfileTable>(compute_profile(s));
        for (std::uint64_t seed = 0; seed < 10; ++seed) {
            Field u = random_band_limited(g, 12, 1000 + seed);
            auto w = extend(u, op, table);
            worst_energy = std::max(
                worst_energy, std::abs(weighted_energy(w) / (k_constant(s) * hs_norm_sq(u, op)) - 1.0));
            worst_mass = std::max(
                worst_mass,
                std::abs(weighted_mass(w) / (s * k_constant(s) * low_order_mass(u, op)) - 1.0));
            Field tr = neumann_trace(w);
            Field want = apply_multiplier(u, op, s);
            double d = 0.0, sc = 0.0;
            for (std::size_t j = 0; j < tr.values().size(); ++j) {
                const double t = k_constant(s) * want.values()[j];
                d += std::pow(tr.values()[j] - t, 2);
                sc += t * t;
            }
            worst_trace = std::max(worst_trace, std::sqrt(d / sc));
        }
    }
    o.require(worst_energy < 1e-4, "energy ratio 1 ± 1e-4");
    o.require(worst_mass < 1e-4, "mass ratio 1 ± 1e-4");
    o.require(worst_trace < 1e-3, "Neumann trace vs k_s (-Δ+m²)^s u");
    o.note("energy", worst_energy);
    o.note("mass", worst_mass);
    o.note("trace", worst_trace);
    return o;
}

// ---------------------------------------------------------------- criterion 4
Outcome kernel_suite() {
    Outcome o;
    OperatorParams op(1.0, 0.5, 1);
    KernelSpec spec(op);
    spec.validate();
    double worst_ft = 0.0;
    for (double xi : {0.1, 0.25, 0.5, 1.0, 2.0})
        worst_ft = std::max(worst_ft, rel(kernel_fourier_radial(spec, xi),
                                          multiplier_value(op, xi * xi, -op.s)));
    o.require(worst_ft < 1e-4, "ghat vs multiplier at 5 frequencies");
    o.note("ft", worst_ft);

    Grid g(1, 16.0, 128);
    Field u = random_band_limited(g, 12, 4);
    Field a = bessel_potential(bessel_potential(u, op, 0.3), op, 0.4);
    Field b = bessel_potential(u, op, 0.7);
    double diff = 0.0, scale = 0.0;
    for (std::size_t j = 0; j < a.values().size(); ++j) {
        diff += std::pow(a.values()[j] - b.values()[j], 2);
        scale += std::pow(b.values()[j], 2);
    }
    o.require(std::sqrt(diff / scale) < 1e-12, "I-semigroup");
    o.note("semigroup", std::sqrt(diff / scale));

    bool bound_ok = true;
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        Field f = random_band_limited(g, 16, 2000 + seed);
        bound_ok = bound_ok && lp_norm(bessel_potential(f, op, op.s), 2.0) <=
                                   lp_norm(f, 2.0) / std::pow(op.m, 2.0 * op.s) * (1.0 + 1e-13);
    }
    o.require(bound_ok, "|I_s f|_2 <= m^{-2s}|f|_2 on 20 fields");
    return o;
}

// ---------------------------------------------------------------- criterion 5
Outcome groundstate_suite() {
    Outcome o;
    // N = 1
    {
        OperatorParams op(1.0, 0.5, 1);
        Grid g(1, 32.0, 256);
        GroundStateConfig cfg(op, g, Nonlinearity::model(2.0));
        cfg.tol_nehari = 1e-4;
        cfg.tol_manifold = 1e-4;
        cfg.tol_grad = 1e-4;
        GroundStateConfig cfg2 = cfg;
        cfg2.seed = 11;
        const auto r1 = ground_state_solve(cfg);
        const auto r2 = ground_state_solve(cfg2);
        o.require(r1.converged && r2.converged, "N=1 convergence");
        o.require(r1.nehari_defect < 1e-4 && r1.manifold_defect < 1e-4 && r1.grad_rel < 1e-4,
                  "N=1 defects < 1e-4");
        o.require(r1.poho_rel < 1e-3, "N=1 Pohozaev residual < 1e-3");
        o.require(r1.energy > 0.0, "N=1 positive level");
        o.require(std::abs(r1.energy - r2.energy) < 1e-4, "N=1 seed independence");
        o.note("E1", r1.energy);
        o.note("poho1", r1.poho_rel);
    }
    // N = 2
    {
        OperatorParams op(1.0, 0.5, 2);
        Grid g(2, 20.0, 128);
        GroundStateConfig cfg(op, g, Nonlinearity::model(2.0));
        cfg.tol_nehari = 1e-4;
        cfg.tol_manifold = 1e-4;
        cfg.tol_grad = 1e-4;
        GroundStateConfig cfg2 = cfg;
        cfg2.seed = 23;
        const auto r1 = ground_state_solve(cfg);
        const auto r2 = ground_state_solve(cfg2);
        o.require(r1.converged && r2.converged, "N=2 convergence");
        o.require(r1.nehari_defect < 1e-4 && r1.manifold_defect < 1e-4 && r1.grad_rel < 1e-4,
                  "N=2 defects < 1e-4");
        o.require(r1.poho_rel < 1e-3, "N=2 Pohozaev residual < 1e-3");
        o.require(r1.energy > 0.0, "N=2 positive level");
        o.require(std::abs(r1.energy - r2.energy) < 1e-4, "N=2 seed independence");
        o.note("E2", r1.energy);
        o.note("poho2", r1.poho_rel);
    }
    return o;
}

// ---------------------------------------------------------------- criterion 6
Outcome fibering_suite() {
    Outcome o;
    OperatorParams op(1.0, 0.5, 1);
    auto nl = Nonlinearity::model(2.0);
    {
        Grid g(1, 48.0, 1024);
        Field u = gaussian_bump(g, 1.0, 1.3);
        const double scale = std::abs(energy(u, op, nl)) + hs_norm_sq(u, op);
        o.require(std::abs(fibering_value(u, 1.0, op, nl) - energy(u, op, nl)) < 1e-10 * scale,
                  "h(1) = Phi");
        o.require(std::abs(fibering_derivative(u, 1.0, op, nl) - nehari_pohozaev_J(u, op, nl)) <
                      1e-10 * scale,
                  "h'(1) = J");
        double worst_t = 0.0;
        for (double t : {0.5, 0.9, 1.5}) {
            Field ut = dilate_field(u, t);
            worst_t = std::max(worst_t, rel(fibering_derivative(ut, 1.0, op, nl),
                                            t * fibering_derivative(u, t, op, nl)));
        }
        o.require(worst_t < 1e-6, "h'_{u_t}(1) = t h'_u(t)");
        o.note("t-identity", worst_t);
    }
    {
        Grid g(1, 24.0, 256);
        int unique_ok = 0;
        bool gaps_ok = true;
        for (std::uint64_t seed = 0; seed < 20; ++seed) {
            Field u = random_band_limited(g, 10, 4000 + seed);
            const auto fr = find_t_u(u, op, nl); // throws if the sign change is not unique
            unique_ok += fr.t_u > 0.0 ? 1 : 0;
            gaps_ok = gaps_ok && energy_gap(u, op, nl) > 0.0;
        }
        o.require(unique_ok == 20, "unique sign change of h' on 20 random fields");
        o.require(gaps_ok, "energy gap positive on all fields");
    }
    return o;
}

// ---------------------------------------------------------------- criterion 7
Outcome nonexistence_suite() {
    Outcome o;
    OperatorParams op(1.0, 0.5, 3);
    Grid g(3, 12.0, 32);
    for (double p : {3.0, 4.0}) {
        for (std::uint64_t seed = 0; seed < 6; ++seed) {
            Field u = seed == 0 ? gaussian_bump(g, 1.5, 1.0) : random_band_limited(g, 4, 600 + seed);
            const double lam = std::pow(hs_norm_sq(u, op) / lp_pow(u, p), 1.0 / (p - 2.0));
            for (auto& v : u.values_mut()) v *= lam;
            const auto rep = nonexistence_certificate(u, op, p);
            o.require(std::abs(rep.nehari_defect) < 1e-6 * hs_norm_sq(u, op),
                      "Nehari defect below 1e-6 after rescaling");
            o.require(rep.obstruction_gap > 0.0, "obstruction gap positive");
            o.require(rep.obstruction_gap >= rep.margin_reference * (1.0 - 1e-12),
                      "gap >= m^2 s LOM margin");
            o.require(rep.certified, "certificate issued");
        }
    }
    return o;
}

// ---------------------------------------------------------------- criterion 8
Outcome sobolev_suite() {
    Outcome o;
    OperatorParams op(1.0, 0.5, 3);
    std::vector<double> ts;
    for (int i = 0; i <= 12; ++i) ts.push_back(4.0 * std::pow(8.0, i / 12.0));

    // box-convergence study: the excess at the endpoints across growing boxes
    double excess_prev = 0.0;
    for (double box : {25.0, 50.0, 100.0}) {
        const auto tab = sobolev_quotient_scan(op, 256.0, ts, 128, box);
        const double excess_end = tab.rows.back().lambda_quotient - tab.rows.back().s_quotient;
        if (box > 25.0)
            o.note("box" + std::to_string(static_cast<int>(box)) + "_drift",
                   rel(excess_end, excess_prev));
        excess_prev = excess_end;
    }

    const auto tab = sobolev_quotient_scan(op, 256.0, ts, 128, 50.0);
    double s0 = tab.rows.front().s_quotient, sdrift = 0.0;
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (const auto& r : tab.rows) {
        sdrift = std::max(sdrift, std::abs(r.s_quotient - s0) / s0);
        const double lx = std::log(r.t), ly = std::log(r.lambda_quotient - r.s_quotient);
        sx += lx;
        sy += ly;
        sxx += lx * lx;
        sxy += lx * ly;
    }
    const double n = static_cast<double>(tab.rows.size());
    const double slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
    o.require(sdrift < 1e-3, "S-quotient constant in t within 1e-3");
    o.require(std::abs(slope + 2.0 * op.s) / (2.0 * op.s) < 0.10, "excess slope -2s within 10%");
    o.note("sdrift", sdrift);
    o.note("slope", slope);
    return o;
}

// ---------------------------------------------------------------- criterion 9
Outcome symmetry_suite() {
    Outcome o;
    // N = 1 solution: reflection identity at lambda in {-2, -1}
    {
        OperatorParams op(1.0, 0.5, 1);
        Grid g(1, 32.0, 256);
        GroundStateConfig cfg(op, g, Nonlinearity::model(2.0));
        const auto res = ground_state_solve(cfg);
        o.require(res.converged, "N=1 solve for the reflection test");
        for (double lam : {-2.0, -1.0}) {
            ReflectionSpec spec{0, lam, true};
            const auto rep = reflection_residual(res.u, cfg.nl, spec, op);
            o.require(rep.sup_residual < 5e-3 * rep.field_max,
                      "reflection residual at lambda=" + std::to_string(lam));
            o.require(rep.max_lhs_signed <= 5e-3 * rep.field_max,
                      "u <= u_lambda on the half space at lambda=" + std::to_string(lam));
            o.note("refl" + std::to_string(static_cast<int>(lam)), rep.sup_residual / rep.field_max);
        }
        // fixed-point / variational cross-residual
        const auto fp = fixed_point_iterate(res.u, op, cfg.nl, FixedPointMode::Plain, 0);
        o.require(fp.residual < 1e-3, "fixed-point residual of the variational solution");
        o.note("fp", fp.residual);
    }
    // converse direction: a converged fixed point has a small euler gradient
    {
        OperatorParams op(1.0, 0.25, 1);
        Grid g(1, 24.0, 256);
        auto nl = Nonlinearity::power(3.0);
        const auto fp =
            fixed_point_iterate(gaussian_bump(g, 1.0, 1.0), op, nl, FixedPointMode::Normalized, 500);
        o.require(fp.converged, "normalized fixed point converged");
        const double lambda = fp.r_factor; // alpha = 2: lambda = r
        Field w = fp.field;
        for (auto& v : w.values_mut()) v *= lambda;
        const double grel = lp_norm(euler_gradient(w, op, nl), 2.0) / lp_norm(w, 2.0);
        o.require(grel < 1e-2, "euler gradient of the rescaled fixed point");
        o.note("grad", grel);
    }
    // N = 2 ground state: radial asymmetry after centering
    {
        OperatorParams op(1.0, 0.5, 2);
        Grid g(2, 20.0, 128);
        GroundStateConfig cfg(op, g, Nonlinearity::model(2.0));
        const auto res = ground_state_solve(cfg);
        o.require(res.converged, "N=2 solve for the radial test");
        const auto rad = radial_monotonicity_check(res.u, {0.0, 0.0, 0.0});
        o.require(rad.asymmetry < 1e-2, "radial asymmetry of the N=2 ground state");
        o.note("asym", rad.asymmetry);
    }
    return o;
}

// --------------------------------------------------------------- criterion 10
Outcome cli_suite() {
    Outcome o;
#ifdef FRACREL_BIN
    const std::string bin = FRACREL_BIN;
    const int ok = std::system((bin + " verify-all --s 0.25 --m 1 --N 1 > /dev/null").c_str());
    o.require(WIFEXITED(ok) && WEXITSTATUS(ok) == 0, "verify-all exits 0 on the reference config");
    const int tightened =
        std::system((bin + " verify-all --s 0.25 --m 1 --N 1 --tighten 1000 > /dev/null").c_str());
    o.require(WIFEXITED(tightened) && WEXITSTATUS(tightened) == 3,
              "verify-all exits 3 when tolerances are tightened 1e3x");
    o.note("exit", WEXITSTATUS(ok));
    o.note("tightened_exit", WEXITSTATUS(tightened));
#else
    o.require(false, "FRACREL_BIN not configured");
#endif
    return o;
}

} // namespace

int main() {
    struct Entry {
        int id;
        const char* label;
        std::function<Outcome()> run;
    };
    const std::vector<Entry> entries = {
        {1, "constants suite (profile identities, s=1/2 closed forms)", constants_suite},
        {2, "operator suite (eigenvalues, semigroup, symmetry)", operator_suite},
        {3, "extension suite (energy/mass ratios, Neumann trace)", extension_suite},
        {4, "kernel suite (transform, I-semigroup, L2 bound)", kernel_suite},
        {5, "ground state (N=1 and N=2, defects and Pohozaev)", groundstate_suite},
        {6, "fibering suite (t=1 identities, scaling, uniqueness)", fibering_suite},
        {7, "non-existence certificate (N=3, p in {3,4})", nonexistence_suite},
        {8, "Lambda = S scan (S-constancy, excess slope)", sobolev_suite},
        {9, "symmetry suite (reflection, radial, cross-residuals)", symmetry_suite},
        {10, "CLI verify-all exit codes (reference + negative control)", cli_suite},
    };

    int failures = 0;
    for (const auto& e : entries) {
        const auto start = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = e.run();
        } catch (const std::exception& ex) {
            o.pass = false;
            o.detail << " [EXCEPTION: " << ex.what() << "]";
        }
        const double sec =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        std::printf("[%s] criterion %2d: %s (%.1fs)%s\n", o.pass ? "PASS" : "FAIL", e.id, e.label,
                    sec, o.detail.str().c_str());
        std::fflush(stdout);
        if (!o.pass) ++failures;
    }
    if (failures > 0) std::printf("%d criterion(s) failed\n", failures);
    return failures == 0 ? 0 : 1;
}
