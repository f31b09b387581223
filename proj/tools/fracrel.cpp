// fracrel — command-line driver for the pseudo-relativistic spectral toolkit.
//
// Exit codes: 0 success, 2 configuration error, 3 numerical tolerance
// breach, 4 solver non-convergence.

#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>

#include "fracrel/constants.hpp"
#include "fracrel/extension.hpp"
#include "fracrel/groundstate.hpp"
#include "fracrel/io.hpp"
#include "fracrel/kernel.hpp"
#include "fracrel/profile.hpp"
#include "fracrel/resample.hpp"
#include "fracrel/spectral.hpp"
#include "fracrel/symmetry.hpp"
#include "fracrel/variational.hpp"

using nlohmann::json;
using namespace fracrel;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitConfig = 2;
constexpr int kExitTolerance = 3;
constexpr int kExitNoConvergence = 4;

struct NonlinFlags {
    std::string kind = "model";
    double c = 2.0;
    double p = 3.0;
    double alpha = 2.0;
    double gamma = 3.0;
};

void add_nonlin_flags(CLI::App* cmd, NonlinFlags& nf) {
    cmd->add_option("--nl", nf.kind, "nonlinearity kind: model|power|powersum|loglin");
    cmd->add_option("--c", nf.c, "model constant c");
    cmd->add_option("--p", nf.p, "power exponent p");
    cmd->add_option("--alpha", nf.alpha, "power-sum exponent alpha");
    cmd->add_option("--gamma-exp", nf.gamma, "power-sum exponent gamma");
}

Nonlinearity make_nonlinearity(const NonlinFlags& nf) {
    if (nf.kind == "model") return Nonlinearity::model(nf.c);
    if (nf.kind == "power") return Nonlinearity::power(nf.p);
    if (nf.kind == "powersum") return Nonlinearity::power_sum(nf.alpha, nf.gamma);
    if (nf.kind == "loglin") return Nonlinearity::loglin();
    throw std::invalid_argument("unknown nonlinearity kind '" + nf.kind + "'");
}

Nonlinearity nonlinearity_from_config(const KeyValueConfig& cfg) {
    const std::string kind = cfg.get_string("nonlinearity.kind");
    if (kind == "model") return Nonlinearity::model(cfg.get_double("nonlinearity.c"));
    if (kind == "power") return Nonlinearity::power(cfg.get_double("nonlinearity.p"));
    if (kind == "powersum")
        return Nonlinearity::power_sum(cfg.get_double("nonlinearity.alpha"),
                                       cfg.get_double("nonlinearity.gamma"));
    if (kind == "loglin") return Nonlinearity::loglin();
    throw std::runtime_error("config: unknown nonlinearity.kind '" + kind + "'");
}

json config_echo(const KeyValueConfig& cfg) {
    json j = json::object();
    for (const auto& [k, v] : cfg.entries()) j[k] = v;
    return j;
}

json flags_echo(std::initializer_list<std::pair<std::string, json>> kv) {
    json j = json::object();
    for (const auto& [k, v] : kv) j[k] = v;
    return j;
}

void emit(const json& j, const std::string& path) {
    if (path.empty()) {
        std::cout << j.dump(2) << "\n";
    } else {
        std::ofstream os(path);
        if (!os) throw std::runtime_error("cannot open output file " + path);
        os << j.dump(2) << "\n";
    }
}

struct CheckTable {
    json rows = json::array();
    bool ok = true;

    void add(const std::string& name, double value, double tol) {
        const bool pass = std::abs(value) <= tol;
        rows.push_back({{"check", name}, {"residual", value}, {"tolerance", tol}, {"pass", pass}});
        ok = ok && pass;
        std::printf("%-54s %12.3e  tol %8.1e  %s\n", name.c_str(), value, tol, pass ? "ok" : "FAIL");
    }
};

int cmd_constants(double s, const std::string& out, bool plot_data) {
    const ProfileTable table = compute_profile(s);
    const auto rep = verify_profile_identities(table);
    if (plot_data) {
        std::printf("s,k_s,c1,c2_formula,tail_A,K_quadrature,mass_quadrature,K_rel_err,mass_rel_err\n");
        std::printf("%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.3e,%.3e\n", s, k_constant(s),
                    c1_constant(s), c2_constant(s), table.tail_A, rep.energy, rep.mass,
                    rep.energy_rel_err, rep.mass_rel_err);
        return rep.ok ? kExitOk : kExitTolerance;
    }
    json j;
    j["config"] = flags_echo({{"s", s}});
    j["k_s"] = k_constant(s);
    j["c1"] = c1_constant(s);
    j["c2_formula"] = c2_constant(s);
    j["tail_A_fitted"] = table.tail_A;
    j["tail_vs_c2_discrepancy"] = std::abs(table.tail_A - c2_constant(s));
    j["profile_energy"] = rep.energy;
    j["profile_energy_target"] = rep.energy_target;
    j["profile_energy_rel_err"] = rep.energy_rel_err;
    j["weighted_mass"] = rep.mass;
    j["weighted_mass_target"] = rep.mass_target;
    j["weighted_mass_rel_err"] = rep.mass_rel_err;
    j["identity_2sc1_minus_ks"] = 2.0 * s * c1_constant(s) - k_constant(s);
    j["max_ode_residual"] = table.max_ode_residual;
    emit(j, out);
    return rep.ok ? kExitOk : kExitTolerance;
}

int cmd_profile(double s, double y_max, int density, const std::string& out,
                const std::string& sidecar) {
    const ProfileTable table = compute_profile(s, y_max, density);
    if (!out.empty()) write_profile_csv(out, table);
    const std::string sc = profile_sidecar_json(table);
    if (sidecar.empty()) {
        std::cout << sc << "\n";
    } else {
        std::ofstream os(sidecar);
        os << sc << "\n";
    }
    return kExitOk;
}

int cmd_apply(const std::string& field_path, double m, double s, double sigma,
              const std::string& out) {
    const Field u = read_field_binary(field_path);
    OperatorParams params(m, s, u.grid().dim());
    const Field v = apply_multiplier(u, params, sigma);
    write_field_binary(out, v);
    json j;
    j["config"] = flags_echo({{"field", field_path}, {"m", m}, {"s", s}, {"sigma", sigma}});
    j["boundary_decay_ratio"] = u.boundary_decay_ratio();
    if (u.boundary_decay_ratio() > 1e-6)
        j["warning"] = "field does not decay at the box faces; periodization error is yours";
    j["output"] = out;
    emit(j, "");
    return kExitOk;
}

int cmd_kernel_check(int N, double m, double s, double tighten) {
    OperatorParams params(m, s, N);
    KernelSpec spec(params);
    spec.validate();
    CheckTable t;
    if (N != 2) {
        for (double xi : {0.0, 0.25, 0.5, 1.0, 2.0}) {
            const double ft = kernel_fourier_radial(spec, xi);
            const double target = multiplier_value(params, xi * xi, -s);
            t.add("ghat(" + std::to_string(xi) + ") vs multiplier", (ft - target) / target,
                  1e-4 / tighten);
        }
    }
    {
        Grid g(N, 16.0, N == 3 ? 32 : 64);
        const Field f = random_band_limited(g, 6, 11);
        const Field a = bessel_potential(bessel_potential(f, params, 0.3), params, 0.4);
        const Field b = bessel_potential(f, params, 0.7);
        double diff = 0.0, scale = 0.0;
        for (std::size_t j = 0; j < a.values().size(); ++j) {
            diff += std::pow(a.values()[j] - b.values()[j], 2);
            scale += std::pow(b.values()[j], 2);
        }
        t.add("bessel potential semigroup", std::sqrt(diff / scale), 1e-12 / tighten);
        const double bound_violation =
            lp_norm(bessel_potential(f, params, s), 2.0) -
            lp_norm(f, 2.0) / std::pow(m, 2.0 * s);
        t.add("bessel potential L2 bound violation", std::max(0.0, bound_violation),
              1e-12 / tighten);
    }
    json j;
    j["config"] = flags_echo({{"N", N}, {"m", m}, {"s", s}});
    j["checks"] = t.rows;
    return t.ok ? kExitOk : kExitTolerance;
}

int cmd_extend_check(const std::string& field_path, double m, double s, const NonlinFlags& nf,
                     const std::string& out) {
    const Field u = read_field_binary(field_path);
    OperatorParams params(m, s, u.grid().dim());
    auto table = std::make_shared<const ProfileTable>(compute_profile(s));
    const auto w = extend(u, params, table);
    const Nonlinearity nl = make_nonlinearity(nf);

    const double energy_ratio = weighted_energy(w) / (k_constant(s) * hs_norm_sq(u, params));
    const double mass_ratio = weighted_mass(w) / (s * k_constant(s) * low_order_mass(u, params));
    const Field tr = neumann_trace(w);
    const Field ref = apply_multiplier(u, params, s);
    double tdiff = 0.0, tscale = 0.0;
    for (std::size_t j = 0; j < tr.values().size(); ++j) {
        const double target = k_constant(s) * ref.values()[j];
        tdiff += std::pow(tr.values()[j] - target, 2);
        tscale += target * target;
    }
    const auto rep = extension_pohozaev_residual(w, u, params, nl);
    const auto rn = pohozaev_P(u, params, nl);
    const double lhs_ext = rep.lhs_gradient_term + rep.lhs_low_order_term;
    const double lhs_rn = rn.lhs_gradient_term + rn.lhs_low_order_term;

    json j;
    j["config"] = flags_echo({{"field", field_path}, {"m", m}, {"s", s}, {"nl", nl.describe()}});
    j["energy_ratio"] = energy_ratio;
    j["mass_ratio"] = mass_ratio;
    j["trace_error"] = std::sqrt(tdiff / tscale);
    j["poho_residual"] = rep.relative_residual;
    j["poho_ks_consistency"] = lhs_ext / (k_constant(s) * lhs_rn) - 1.0;
    j["boundary_decay_ratio"] = u.boundary_decay_ratio();
    emit(j, out);
    const bool ok = std::abs(energy_ratio - 1.0) < 1e-4 && std::abs(mass_ratio - 1.0) < 1e-4 &&
                    std::sqrt(tdiff / tscale) < 1e-3;
    return ok ? kExitOk : kExitTolerance;
}

int cmd_pohozaev(const std::string& field_path, double m, double s, const NonlinFlags& nf,
                 const std::string& out) {
    const Field u = read_field_binary(field_path);
    OperatorParams params(m, s, u.grid().dim());
    const Nonlinearity nl = make_nonlinearity(nf);
    const auto rep = pohozaev_P(u, params, nl);
    json j;
    j["config"] = flags_echo({{"field", field_path}, {"m", m}, {"s", s}, {"nl", nl.describe()}});
    j["lhs_gradient_term"] = rep.lhs_gradient_term;
    j["lhs_low_order_term"] = rep.lhs_low_order_term;
    j["rhs_potential_term"] = rep.rhs_potential_term;
    j["residual"] = rep.residual;
    j["relative_residual"] = rep.relative_residual;
    j["nehari_value"] = nehari_value(u, params, nl);
    j["J"] = nehari_pohozaev_J(u, params, nl);
    emit(j, out);
    return kExitOk;
}

int cmd_groundstate(const std::string& config_path) {
    const KeyValueConfig cfg = KeyValueConfig::parse_file(config_path);
    OperatorParams params(cfg.get_double("operator.m"), cfg.get_double("operator.s"),
                          static_cast<int>(cfg.get_int("operator.N")));
    Grid grid(params.dim, cfg.get_double("grid.L"), static_cast<int>(cfg.get_int("grid.n")));
    GroundStateConfig gs(params, grid, nonlinearity_from_config(cfg));
    gs.tol_nehari = cfg.get_double_or("solver.tol_nehari", gs.tol_nehari);
    gs.tol_manifold = cfg.get_double_or("solver.tol_manifold", gs.tol_manifold);
    gs.tol_grad = cfg.get_double_or("solver.tol_grad", gs.tol_grad);
    gs.tol_poho = cfg.get_double_or("solver.tol_poho", gs.tol_poho);
    gs.max_iter = static_cast<int>(cfg.get_int_or("solver.max_iter", gs.max_iter));
    gs.seed = static_cast<std::uint64_t>(cfg.get_int_or("solver.seed", 1));
    gs.seed_sigma = cfg.get_double_or("solver.seed_sigma", 0.0);
    gs.seed_amplitude = cfg.get_double_or("solver.seed_amplitude", 1.0);
    const std::string dir = cfg.get_string_or("output.dir", ".");
    const std::string prefix = cfg.get_string_or("output.prefix", "groundstate");

    const auto res = ground_state_solve(gs);

    const std::string base = dir + "/" + prefix;
    write_field_binary(base + ".field", res.u);
    {
        json meta;
        meta["config"] = config_echo(cfg);
        meta["artifact"] = prefix + ".field";
        std::ofstream os(base + ".field.meta.json");
        os << meta.dump(2) << "\n";
    }
    {
        std::ofstream os(base + "_trace.csv");
        os << "# fracrel groundstate trace\n";
        for (const auto& [k, v] : cfg.entries()) os << "# config " << k << " = " << v << "\n";
        os << "iter,phi,J_defect,nehari_defect,grad_norm\n";
        os.precision(17);
        for (const auto& r : res.trace)
            os << r.iter << "," << r.energy << "," << r.manifold_defect << "," << r.nehari_defect
               << "," << r.grad_rel << "\n";
    }
    json j;
    j["config"] = config_echo(cfg);
    j["resolved"] = {{"operator.N", params.dim},      {"operator.m", params.m},
                     {"operator.s", params.s},        {"grid.L", grid.extent()},
                     {"grid.n", grid.points()},       {"nonlinearity", gs.nl.describe()},
                     {"solver.tol_nehari", gs.tol_nehari}, {"solver.tol_manifold", gs.tol_manifold},
                     {"solver.tol_grad", gs.tol_grad}, {"solver.tol_poho", gs.tol_poho},
                     {"solver.max_iter", gs.max_iter}, {"solver.seed", gs.seed},
                     {"solver.seed_sigma", gs.seed_sigma},
                     {"solver.seed_amplitude", gs.seed_amplitude}};
    j["converged"] = res.converged;
    j["degenerate"] = res.degenerate;
    j["iterations"] = res.iterations;
    j["energy"] = res.energy;
    j["nehari_defect"] = res.nehari_defect;
    j["manifold_defect"] = res.manifold_defect;
    j["grad_rel"] = res.grad_rel;
    j["poho_relative_residual"] = res.poho_rel;
    j["min_value"] = res.min_value;
    j["boundary_decay_ratio"] = res.boundary_decay;
    j["artifacts"] = {{"field", base + ".field"},
                      {"trace", base + "_trace.csv"},
                      {"summary", base + "_summary.json"}};
    {
        std::ofstream os(base + "_summary.json");
        os << j.dump(2) << "\n";
    }
    std::cout << j.dump(2) << "\n";
    if (res.degenerate) {
        std::cerr << "groundstate: iterate collapsed toward zero (degenerate run)\n";
        return kExitNoConvergence;
    }
    if (!res.converged) {
        std::cerr << "groundstate: iteration cap reached without convergence; partial result written\n";
        return kExitNoConvergence;
    }
    if (res.poho_rel > gs.tol_poho) {
        std::cerr << "groundstate: Pohozaev residual " << res.poho_rel << " exceeds tolerance "
                  << gs.tol_poho << "\n";
        return kExitTolerance;
    }
    return kExitOk;
}

int cmd_nonexist(int N, double s, double p, double m, const std::string& out) {
    OperatorParams params(m, s, N);
    std::ostringstream csv;
    csv << "# fracrel nonexist N=" << N << " s=" << s << " p=" << p << " m=" << m << "\n";
    csv << "field,D,nehari_defect,obstruction_gap,margin_reference,certified\n";
    csv.precision(17);
    bool all_positive = true;
    Grid grid(N, 16.0, N == 3 ? 32 : 128);
    for (int i = 0; i < 8; ++i) {
        Field u = i == 0 ? gaussian_bump(grid, 2.0, 1.0) : random_band_limited(grid, 4, 100 + i);
        // rescale onto the Nehari set: ‖λu‖² = |λu|_p^p
        const double ns = hs_norm_sq(u, params);
        const double lpp = lp_pow(u, p);
        const double lam = std::pow(ns / lpp, 1.0 / (p - 2.0));
        auto uv = u.values_mut();
        for (auto& v : uv) v *= lam;
        const auto rep = nonexistence_certificate(u, params, p);
        csv << i << "," << rep.D << "," << rep.nehari_defect << "," << rep.obstruction_gap << ","
            << rep.margin_reference << "," << (rep.certified ? 1 : 0) << "\n";
        all_positive = all_positive && rep.obstruction_gap > 0.0;
    }
    if (out.empty())
        std::cout << csv.str();
    else {
        std::ofstream os(out);
        os << csv.str();
    }
    return all_positive ? kExitOk : kExitTolerance;
}

int cmd_sobolev_scan(int N, double s, double m, double mu, double tmin, double tmax, int steps,
                     int points, double box_over_mu, const std::string& out) {
    OperatorParams params(m, s, N);
    std::vector<double> ts;
    for (int i = 0; i < steps; ++i)
        ts.push_back(tmin *
                     std::pow(tmax / tmin, steps == 1 ? 0.0 : static_cast<double>(i) / (steps - 1)));
    const auto table = sobolev_quotient_scan(params, mu, ts, points, box_over_mu);
    std::ostringstream csv;
    csv << "# fracrel sobolev-scan N=" << N << " s=" << s << " m=" << m << " mu=" << mu
        << " points=" << points << " box_over_mu=" << box_over_mu << " U_l2_sq=" << table.u_l2_sq
        << "\n";
    csv << "t,lambda_quotient,s_quotient,excess,mass_model,pnorm_scaled\n";
    csv.precision(17);
    for (const auto& r : table.rows)
        csv << r.t << "," << r.lambda_quotient << "," << r.s_quotient << ","
            << r.lambda_quotient - r.s_quotient << "," << r.mass_model << ","
            << r.pnorm_scaled << "\n";
    if (out.empty())
        std::cout << csv.str();
    else {
        std::ofstream os(out);
        os << csv.str();
    }
    return kExitOk;
}

int cmd_fixpoint(const std::string& config_path) {
    const KeyValueConfig cfg = KeyValueConfig::parse_file(config_path);
    OperatorParams params(cfg.get_double("operator.m"), cfg.get_double("operator.s"),
                          static_cast<int>(cfg.get_int("operator.N")));
    Grid grid(params.dim, cfg.get_double("grid.L"), static_cast<int>(cfg.get_int("grid.n")));
    const Nonlinearity nl = nonlinearity_from_config(cfg);
    const std::string mode_str = cfg.get_string_or("fixpoint.mode", "normalized");
    if (mode_str != "plain" && mode_str != "normalized")
        throw std::runtime_error("config: fixpoint.mode must be plain or normalized");
    const FixedPointMode mode =
        mode_str == "plain" ? FixedPointMode::Plain : FixedPointMode::Normalized;
    const Field u0 =
        gaussian_bump(grid, cfg.get_double_or("fixpoint.seed_sigma", grid.extent() / 12.0),
                      cfg.get_double_or("fixpoint.seed_amplitude", 1.0));
    const auto res =
        fixed_point_iterate(u0, params, nl, mode,
                            static_cast<int>(cfg.get_int_or("fixpoint.max_iter", 400)),
                            cfg.get_double_or("fixpoint.tol", 1e-12));
    json j;
    j["config"] = config_echo(cfg);
    j["mode"] = mode_str;
    j["converged"] = res.converged;
    j["diverged"] = res.diverged;
    j["collapsed"] = res.collapsed;
    j["iterations"] = res.iterations;
    j["residual"] = res.residual;
    j["r_factor"] = res.r_factor;
    if (mode == FixedPointMode::Normalized && nl.kind() == NonlinKind::Power) {
        // homogeneity: w = r^{1/(α-1)} u solves w = I_s f(w), α = p - 1
        const double alpha = nl.param_a() - 1.0;
        Field w = res.field;
        const double lam = std::pow(res.r_factor, 1.0 / (alpha - 1.0));
        for (auto& v : w.values_mut()) v *= lam;
        const auto check = fixed_point_iterate(w, params, nl, FixedPointMode::Plain, 0);
        j["rescaled_solution_residual"] = check.residual;
        j["rescale_factor"] = lam;
    }
    const std::string out = cfg.get_string_or("output.field", "");
    if (!out.empty()) {
        write_field_binary(out, res.field);
        j["artifact"] = out;
    }
    std::cout << j.dump(2) << "\n";
    if (res.diverged || res.collapsed) return kExitNoConvergence;
    return kExitOk;
}

int cmd_symmetry(const std::string& field_path, double lambda, int axis, double m, double s,
                 const NonlinFlags& nf, const std::string& out, const std::string& shell_csv,
                 bool plot_data) {
    const Field u = read_field_binary(field_path);
    OperatorParams params(m, s, u.grid().dim());
    const Nonlinearity nl = make_nonlinearity(nf);
    ReflectionSpec spec{axis, lambda, true};
    const auto rep = reflection_residual(u, nl, spec, params);
    const auto rad = radial_monotonicity_check(u, {0.0, 0.0, 0.0});
    if (plot_data) {
        std::printf("radius,mean,std,count\n");
        for (const auto& sh : rad.shells)
            std::printf("%.17g,%.17g,%.17g,%d\n", sh.radius, sh.mean, sh.stddev, sh.count);
        return kExitOk;
    }
    json j;
    j["config"] = flags_echo({{"field", field_path},
                              {"lambda", lambda},
                              {"axis", axis},
                              {"m", m},
                              {"s", s},
                              {"nl", nl.describe()}});
    j["reflection"] = {{"sup_residual", rep.sup_residual},
                       {"sup_residual_over_max", rep.sup_residual / std::max(rep.field_max, 1e-300)},
                       {"sup_lhs", rep.sup_lhs},
                       {"excluded_ball_bound", rep.excluded_ball_bound},
                       {"samples", rep.samples}};
    j["radial"] = {{"asymmetry", rad.asymmetry},
                   {"monotonicity_violations", rad.monotonicity_violations},
                   {"worst_violation", rad.worst_violation}};
    if (!shell_csv.empty()) {
        std::ofstream os(shell_csv);
        os << "radius,mean,std,count\n";
        os.precision(17);
        for (const auto& sh : rad.shells)
            os << sh.radius << "," << sh.mean << "," << sh.stddev << "," << sh.count << "\n";
        j["shell_profile"] = shell_csv;
    }
    emit(j, out);
    return kExitOk;
}

int cmd_verify_all(int N, double m, double s, double tighten, std::uint64_t seed) {
    OperatorParams params(m, s, N);
    CheckTable t;

    // Operator suite.
    {
        Grid g(N, 8.0, N == 1 ? 128 : 64);
        std::vector<double> vals(g.size());
        for (std::size_t j = 0; j < vals.size(); ++j)
            vals[j] = std::cos(2.0 * M_PI * g.coord(g.unflatten(j)[0]) * 2.0 / g.extent());
        Field mode(g, vals);
        const double lam = multiplier_value(params, std::pow(2.0 / g.extent(), 2.0), s);
        const Field Am = apply_multiplier(mode, params, s);
        double worst = 0.0;
        for (std::size_t j = 0; j < vals.size(); ++j)
            worst = std::max(worst, std::abs(Am.values()[j] - lam * vals[j]));
        t.add("plane-wave eigenfunction", worst / lam, 1e-12 / tighten);

        const Field u = random_band_limited(g, g.points() / 8, seed);
        const Field v = random_band_limited(g, g.points() / 8, seed + 1);
        const Field a = apply_multiplier(apply_multiplier(u, params, 0.3), params, s - 0.3);
        const Field b = apply_multiplier(u, params, s);
        double diff = 0.0, scale = 0.0;
        for (std::size_t j = 0; j < vals.size(); ++j) {
            diff += std::pow(a.values()[j] - b.values()[j], 2);
            scale += std::pow(b.values()[j], 2);
        }
        t.add("multiplier semigroup", std::sqrt(diff / scale), 1e-12 / tighten);
        const double sym = l2_inner(apply_multiplier(u, params, s), v) -
                           l2_inner(u, apply_multiplier(v, params, s));
        t.add("operator symmetry", sym / hs_norm_sq(u, params), 1e-12 / tighten);
        const Field rt = apply_multiplier(u, params, 0.0);
        double rdiff = 0.0, rscale = 0.0;
        for (std::size_t j = 0; j < vals.size(); ++j) {
            rdiff += std::pow(rt.values()[j] - u.values()[j], 2);
            rscale += std::pow(u.values()[j], 2);
        }
        t.add("transform round-trip", std::sqrt(rdiff / rscale), 1e-12 / tighten);
    }

    // Constants suite.
    {
        const ProfileTable table = compute_profile(s);
        const auto rep = verify_profile_identities(table);
        t.add("profile energy K(Phi_s) vs k_s", rep.energy_rel_err, 1e-5 / tighten);
        t.add("profile weighted mass vs s*k_s", rep.mass_rel_err, 1e-5 / tighten);
        t.add("2s*c1 - k_s", 2.0 * s * c1_constant(s) - k_constant(s), 1e-12 / tighten);
    }

    // Kernel suite (radial transform not available for N = 2).
    if (N != 2) {
        KernelSpec spec(params);
        spec.validate();
        for (double xi : {0.5, 1.0, 2.0}) {
            const double ft = kernel_fourier_radial(spec, xi);
            const double target = multiplier_value(params, xi * xi, -s);
            t.add("kernel transform at xi=" + std::to_string(xi), (ft - target) / target,
                  1e-4 / tighten);
        }
    }

    // Extension suite.
    {
        Grid g(N, 8.0, N == 1 ? 128 : 64);
        auto table = std::make_shared<const ProfileTable>(compute_profile(s));
        for (int i = 0; i < 3; ++i) {
            const Field u = random_band_limited(g, 6, seed + 10 + i);
            const auto w = extend(u, params, table);
            t.add("extension energy ratio (field " + std::to_string(i) + ")",
                  weighted_energy(w) / (k_constant(s) * hs_norm_sq(u, params)) - 1.0,
                  1e-4 / tighten);
            t.add("extension mass ratio (field " + std::to_string(i) + ")",
                  weighted_mass(w) / (s * k_constant(s) * low_order_mass(u, params)) - 1.0,
                  1e-4 / tighten);
        }
    }

    // Fibering suite.
    {
        Grid g(N, 16.0, N == 1 ? 256 : 64);
        const Nonlinearity nl = Nonlinearity::model(2.0 * std::pow(m, 2.0 * s));
        const Field u = gaussian_bump(g, g.extent() / 14.0, 1.2);
        const double scale = std::abs(energy(u, params, nl)) + hs_norm_sq(u, params);
        t.add("fibering h(1) vs Phi",
              (fibering_value(u, 1.0, params, nl) - energy(u, params, nl)) / scale, 1e-10 / tighten);
        t.add("fibering h'(1) vs J",
              (fibering_derivative(u, 1.0, params, nl) - nehari_pohozaev_J(u, params, nl)) / scale,
              1e-10 / tighten);
        const double gap = energy_gap(u, params, nl);
        t.add("energy gap positivity margin", std::min(0.0, gap), 1e-12 / tighten);
        const double gap_consistency =
            gap - (energy(u, params, nl) - nehari_pohozaev_J(u, params, nl) / (2.0 * N + 2.0));
        t.add("energy gap explicit vs composed", gap_consistency / scale, 1e-10 / tighten);
    }

    std::printf("verify-all: %s\n", t.ok ? "all checks passed" : "TOLERANCE BREACH");
    return t.ok ? kExitOk : kExitTolerance;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"fracrel — spectral toolkit for the pseudo-relativistic operator (-Δ+m²)^s"};
    app.require_subcommand(1);

    double s = 0.5, m = 1.0;
    int N = 1;
    std::string out, field_path, config_path, sidecar, shell_csv;
    double sigma_order = 0.5, lambda = 0.0;
    int axis = 0;
    double y_max = 30.0;
    int density = 160;
    NonlinFlags nf;
    double tighten = 1.0;
    std::uint64_t seed = 1;
    double p = 3.0, mu = 256.0, tmin = 4.0, tmax = 32.0, box_over_mu = 50.0;
    int steps = 13, points = 128;

    bool plot_data = false;
    auto* c_const = app.add_subcommand("constants", "profile constants and identity residuals");
    c_const->add_option("--s", s, "fractional order")->required();
    c_const->add_option("--json-out", out, "write the JSON report here instead of stdout");
    c_const->add_flag("--plot-data", plot_data, "emit a tidy CSV row instead of JSON");

    auto* c_prof = app.add_subcommand("profile", "tabulate the Bessel profile");
    c_prof->add_option("--s", s)->required();
    c_prof->add_option("--y-max", y_max);
    c_prof->add_option("--density", density, "mesh nodes per decade");
    c_prof->add_option("--out", out, "CSV path (y, phi, dphi)");
    c_prof->add_option("--sidecar", sidecar, "JSON sidecar path");

    auto* c_apply = app.add_subcommand("apply", "apply the multiplier (-Δ+m²)^σ to a field");
    c_apply->add_option("--field", field_path)->required();
    c_apply->add_option("--m", m)->required();
    c_apply->add_option("--s", s)->required();
    c_apply->add_option("--sigma", sigma_order)->required();
    c_apply->add_option("--out", out)->required();

    auto* c_kernel = app.add_subcommand("kernel-check", "modified Bessel kernel identities");
    c_kernel->add_option("--N", N)->required();
    c_kernel->add_option("--m", m)->required();
    c_kernel->add_option("--s", s)->required();
    c_kernel->add_option("--tighten", tighten, "divide tolerances (negative control)");

    auto* c_ext = app.add_subcommand("extend-check", "extension energy/mass/trace report");
    c_ext->add_option("--field", field_path)->required();
    c_ext->add_option("--s", s)->required();
    c_ext->add_option("--m", m)->required();
    c_ext->add_option("--json-out", out);
    add_nonlin_flags(c_ext, nf);

    auto* c_poho = app.add_subcommand("pohozaev", "Pohozaev report for a field");
    c_poho->add_option("--field", field_path)->required();
    c_poho->add_option("--m", m)->required();
    c_poho->add_option("--s", s)->required();
    c_poho->add_option("--json-out", out);
    add_nonlin_flags(c_poho, nf);

    auto* c_gs = app.add_subcommand("groundstate", "Nehari-Pohozaev ground-state solve");
    c_gs->add_option("--config", config_path)->required();

    auto* c_nonex = app.add_subcommand("nonexist", "non-existence certificate table");
    c_nonex->add_option("--N", N)->required();
    c_nonex->add_option("--s", s)->required();
    c_nonex->add_option("--p", p)->required();
    c_nonex->add_option("--m", m);
    c_nonex->add_option("--out", out, "CSV path (stdout otherwise)");

    auto* c_scan = app.add_subcommand("sobolev-scan", "Λ = S scaling scan");
    c_scan->add_option("--N", N)->required();
    c_scan->add_option("--s", s)->required();
    c_scan->add_option("--m", m)->required();
    c_scan->add_option("--mu", mu)->required();
    c_scan->add_option("--tmin", tmin);
    c_scan->add_option("--tmax", tmax);
    c_scan->add_option("--steps", steps);
    c_scan->add_option("--points", points, "grid points per axis");
    c_scan->add_option("--box-over-mu", box_over_mu, "reference box in units of mu");
    c_scan->add_option("--out", out, "CSV path (stdout otherwise)");

    auto* c_fix = app.add_subcommand("fixpoint", "Bessel-potential fixed-point iteration");
    c_fix->add_option("--config", config_path)->required();

    auto* c_sym = app.add_subcommand("symmetry", "reflection and radial diagnostics");
    c_sym->add_option("--field", field_path)->required();
    c_sym->add_option("--lambda", lambda)->required();
    c_sym->add_option("--axis", axis);
    c_sym->add_option("--m", m)->required();
    c_sym->add_option("--s", s)->required();
    c_sym->add_option("--json-out", out);
    c_sym->add_option("--shell-csv", shell_csv, "radial shell profile CSV");
    c_sym->add_flag("--plot-data", plot_data, "emit the shell profile as tidy CSV on stdout");
    add_nonlin_flags(c_sym, nf);

    auto* c_ver = app.add_subcommand("verify-all", "full identity suite; nonzero exit on breach");
    c_ver->add_option("--s", s)->required();
    c_ver->add_option("--m", m)->required();
    c_ver->add_option("--N", N)->required();
    c_ver->add_option("--tighten", tighten, "divide every tolerance by this factor");
    c_ver->add_option("--seed", seed);

    CLI11_PARSE(app, argc, argv);

    try {
        if (c_const->parsed()) return cmd_constants(s, out, plot_data);
        if (c_prof->parsed()) return cmd_profile(s, y_max, density, out, sidecar);
        if (c_apply->parsed()) return cmd_apply(field_path, m, s, sigma_order, out);
        if (c_kernel->parsed()) return cmd_kernel_check(N, m, s, tighten);
        if (c_ext->parsed()) return cmd_extend_check(field_path, m, s, nf, out);
        if (c_poho->parsed()) return cmd_pohozaev(field_path, m, s, nf, out);
        if (c_gs->parsed()) return cmd_groundstate(config_path);
        if (c_nonex->parsed()) return cmd_nonexist(N, s, p, m, out);
        if (c_scan->parsed())
            return cmd_sobolev_scan(N, s, m, mu, tmin, tmax, steps, points, box_over_mu, out);
        if (c_fix->parsed()) return cmd_fixpoint(config_path);
        if (c_sym->parsed())
            return cmd_symmetry(field_path, lambda, axis, m, s, nf, out, shell_csv, plot_data);
        if (c_ver->parsed()) return cmd_verify_all(N, m, s, tighten, seed);
    } catch (const std::invalid_argument& ex) {
        std::cerr << "configuration error: " << ex.what() << "\n";
        return kExitConfig;
    } catch (const std::runtime_error& ex) {
        const std::string what = ex.what();
        std::cerr << "error: " << what << "\n";
        if (what.find("config") != std::string::npos || what.find("cannot open") != std::string::npos)
            return kExitConfig;
        return kExitTolerance;
    }
    return kExitOk;
}
