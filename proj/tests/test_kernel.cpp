#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "fracrel/bessel_k.hpp"
#include "fracrel/kernel.hpp"
#include "fracrel/spectral.hpp"
#include "test_util.hpp"

using namespace fracrel;
using testutil::rel_err;
using testutil::rel_l2_diff;

TEST_CASE("kernel is radially decreasing and positive") {
    OperatorParams op(1.0, 0.4, 2);
    KernelSpec spec(op);
    spec.validate();
    double prev = kernel_value_radial(0.05, spec);
    CHECK(prev > 0.0);
    for (double r = 0.1; r < 10.0; r *= 1.5) {
        const double g = kernel_value_radial(r, spec);
        CHECK(g > 0.0);
        CHECK(g < prev);
        prev = g;
    }
    // radial symmetry through the point interface
    CHECK(rel_err(kernel_value({0.3, 0.4, 0.0}, spec), kernel_value_radial(0.5, spec)) < 1e-12);
}

TEST_CASE("N=1 s=1/2 kernel equals K_0(m|x|)/pi") {
    OperatorParams op(1.0, 0.5, 1);
    KernelSpec spec(op);
    for (double r : {0.05, 0.3, 1.0, 4.0})
        CHECK(rel_err(kernel_value_radial(r, spec), modified_bessel_k(0.0, r) / M_PI) < 1e-9);
}

TEST_CASE("kernel singular at origin iff 2s <= N") {
    OperatorParams op(1.0, 0.4, 1);
    KernelSpec spec(op);
    CHECK_THROWS_AS(kernel_value_radial(0.0, spec), std::invalid_argument);
    OperatorParams op_reg(1.0, 0.75, 1); // 2s > N: bounded at the origin
    KernelSpec spec_reg(op_reg);
    CHECK(kernel_value_radial(0.0, spec_reg) > 0.0);
}

TEST_CASE("Fourier transform of g_s matches the inverse multiplier (radial route)") {
    for (double s : {0.3, 0.5, 0.7}) {
        OperatorParams op(1.0, s, 1);
        KernelSpec spec(op);
        int checked = 0;
        for (double xi : {0.1, 0.25, 0.5, 1.0, 2.0}) {
            const double got = kernel_fourier_radial(spec, xi);
            const double want = multiplier_value(op, xi * xi, -s);
            CHECK(rel_err(got, want) < 1e-4);
            ++checked;
        }
        CHECK(checked == 5);
    }
}

TEST_CASE("kernel mass approaches m^{-2s}; box quadrature converges with the box") {
    OperatorParams op(1.3, 0.5, 1);
    KernelSpec spec(op);
    CHECK(rel_err(kernel_fourier_radial(spec, 0.0), std::pow(op.m, -2.0 * op.s)) < 1e-8);

    // grid quadrature with the singular-cell patch: L1 mass settles as the
    // box grows (g_s integrable)
    const double m20 = kernel_fourier_quadrature(spec, 20.0, 1024, {0, 0, 0});
    const double m40 = kernel_fourier_quadrature(spec, 40.0, 2048, {0, 0, 0});
    CHECK(std::abs(m40 - std::pow(op.m, -2.0 * op.s)) < std::abs(m20 - std::pow(op.m, -2.0 * op.s)) + 1e-9);
    CHECK(rel_err(m40, std::pow(op.m, -2.0 * op.s)) < 5e-3);
}

TEST_CASE("1-D kernel values vs spectral-inversion oracle away from the origin") {
    // oracle: inverse DFT of (m^2+4pi^2 xi^2)^{-s} on a fine grid
    OperatorParams op(1.0, 0.5, 1);
    KernelSpec spec(op);
    Grid g(1, 64.0, 8192);
    std::vector<std::complex<double>> mult(g.size());
    for (std::size_t k = 0; k < mult.size(); ++k)
        mult[k] = multiplier_value(op, g.freq_sq(k), -op.s);
    Field oracle = Field::from_spectral(g, mult);
    for (double r : {0.5, 1.0, 2.0, 5.0}) {
        const int idx = static_cast<int>(std::round((r + g.extent() / 2) / g.spacing()));
        CHECK(rel_err(kernel_value_radial(std::abs(g.coord(idx)), spec), oracle.values()[idx]) < 1e-4);
    }
}

TEST_CASE("bessel potential: constant and single-mode eigenvalues") {
    Grid g(1, 8.0, 128);
    OperatorParams op(1.4, 0.6, 1);
    Field ones(g, std::vector<double>(g.size(), 1.0));
    Field image = bessel_potential(ones, op, 0.6);
    const double want = std::pow(op.m, -1.2);
    for (double v : image.values()) CHECK(rel_err(v, want) < 1e-12);

    std::vector<double> mode(g.size());
    for (std::size_t j = 0; j < mode.size(); ++j)
        mode[j] = std::cos(2.0 * M_PI * g.coord(g.unflatten(j)[0]) / g.extent());
    Field u(g, mode);
    Field iu = bessel_potential(u, op, 0.6);
    const double lam = multiplier_value(op, 1.0 / (g.extent() * g.extent()), -0.6);
    for (std::size_t j = 0; j < mode.size(); ++j)
        CHECK(std::abs(iu.values()[j] - lam * mode[j]) < 1e-12);
}

TEST_CASE("bessel potential semigroup and L2 bound") {
    Grid g(2, 8.0, 32);
    OperatorParams op(1.1, 0.35, 2);
    Field u = random_band_limited(g, 6, 77);
    CHECK(rel_l2_diff(bessel_potential(bessel_potential(u, op, 0.3), op, 0.4),
                      bessel_potential(u, op, 0.7)) < 1e-12);
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        Field f = random_band_limited(g, 8, 500 + seed);
        const double lhs = lp_norm(bessel_potential(f, op, op.s), 2.0);
        CHECK(lhs <= lp_norm(f, 2.0) / std::pow(op.m, 2.0 * op.s) * (1.0 + 1e-13));
    }
    CHECK_THROWS_AS(bessel_potential(u, op, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(bessel_potential(u, op, -0.5), std::invalid_argument);
}
