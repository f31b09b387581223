#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "fracrel/kernel.hpp"
#include "fracrel/spectral.hpp"
#include "fracrel/symmetry.hpp"
#include "test_util.hpp"

using namespace fracrel;
using testutil::rel_err;
using testutil::rel_l2_diff;

TEST_CASE("reflection is a bit-exact involution for commensurate planes") {
    Grid g(1, 16.0, 64);
    Field u = random_band_limited(g, 10, 3);
    for (double lam : {0.0, -2.0, 1.5}) { // 2λ multiples of h = 0.25
        ReflectionSpec spec{0, lam, true};
        Field r = reflect_field(u, spec);
        Field rr = reflect_field(r, spec);
        for (std::size_t j = 0; j < u.values().size(); ++j)
            CHECK(rr.values()[j] == u.values()[j]);
    }
    ReflectionSpec bad{0, 0.1, true}; // 2λ = 0.2 not a multiple of 0.25
    CHECK_THROWS_AS(reflect_field(u, bad), std::invalid_argument);
    ReflectionSpec bad_axis{2, 0.0, true};
    CHECK_THROWS_AS(reflect_field(u, bad_axis), std::invalid_argument);
}

TEST_CASE("kernel difference is positive for points in the half space") {
    OperatorParams op(1.0, 0.5, 1);
    KernelSpec spec(op);
    // |x_λ - y| > |x - y| for x, y < λ, and g is radially decreasing
    const double lam = -1.0;
    for (auto [x, y] : {std::pair{-3.0, -2.0}, std::pair{-5.0, -1.5}, std::pair{-2.0, -6.0}}) {
        const double xl = 2.0 * lam - x;
        CHECK(kernel_value_radial(std::abs(x - y), spec) >
              kernel_value_radial(std::abs(xl - y), spec));
    }
}

TEST_CASE("fixed point: zero seed is fixed; Picard image stays clamped") {
    Grid g(1, 16.0, 64);
    OperatorParams op(1.0, 0.5, 1);
    auto nl = Nonlinearity::model(2.0);
    auto res = fixed_point_iterate(Field(g), op, nl, FixedPointMode::Plain, 50);
    CHECK(res.converged);
    CHECK(res.residual == 0.0);
    for (double v : res.field.values()) CHECK(v == 0.0);
}

TEST_CASE("normalized fixed point for a subcritical power converges to a positive bump") {
    OperatorParams op(1.0, 0.25, 1); // 2*_s = 4, f = t², alpha = 2 in (1, 3)
    Grid g(1, 24.0, 256);
    auto nl = Nonlinearity::power(3.0);
    Field u0 = gaussian_bump(g, 1.0, 1.0);
    auto res = fixed_point_iterate(u0, op, nl, FixedPointMode::Normalized, 500);
    REQUIRE(res.converged);
    CHECK(*std::min_element(res.field.values().begin(), res.field.values().end()) >= 0.0);
    CHECK(*std::max_element(res.field.values().begin(), res.field.values().end()) > 0.0);

    // homogeneity maps the normalized fixed point to a true solution:
    // u = r I_s(u^α) and w = λu with λ^{α-1} = r solves w = I_s(w^α)
    const double alpha = 2.0;
    const double lambda = std::pow(res.r_factor, 1.0 / (alpha - 1.0));
    Field w = res.field;
    for (auto& v : w.values_mut()) v *= lambda;
    auto check = fixed_point_iterate(w, op, nl, FixedPointMode::Plain, 0);
    CHECK(check.residual < 1e-3);
}

TEST_CASE("radial monotonicity: exact Gaussian, off-center bump detection") {
    Grid g(2, 16.0, 64);
    Field u = gaussian_bump(g, 2.0, 1.0);
    auto rep = radial_monotonicity_check(u, {0.0, 0.0, 0.0});
    CHECK(rep.asymmetry < 1e-12);
    CHECK(rep.monotonicity_violations == 0);

    Field off = u;
    {
        Field bump2 = gaussian_bump(g, 1.0, 0.1, {3.0, 2.0, 0.0});
        auto ov = off.values_mut();
        const auto bv = bump2.values();
        for (std::size_t j = 0; j < ov.size(); ++j) ov[j] += bv[j];
    }
    auto rep2 = radial_monotonicity_check(off, {0.0, 0.0, 0.0});
    CHECK(rep2.asymmetry > 1e-3);
}

TEST_CASE("reflection residual: radial field at lambda = 0 vanishes; two bumps do not") {
    Grid g(1, 16.0, 128);
    OperatorParams op(1.0, 0.5, 1);
    auto nl = Nonlinearity::model(2.0);
    Field u = gaussian_bump(g, 1.0, 1.0);

    ReflectionSpec origin{0, 0.0, true};
    auto rep0 = reflection_residual(u, nl, origin, op);
    // u = u_λ identically: both sides are exactly zero
    CHECK(rep0.sup_lhs < 1e-14);
    CHECK(rep0.sup_residual < 1e-14);

    // deliberately asymmetric data: the identity fails at O(max|u|)
    Field two = u;
    {
        Field b2 = gaussian_bump(g, 0.7, 0.6, {-5.0, 0.0, 0.0});
        auto tv = two.values_mut();
        const auto bv = b2.values();
        for (std::size_t j = 0; j < tv.size(); ++j) tv[j] += bv[j];
    }
    ReflectionSpec left{0, -1.0, true};
    auto rep2 = reflection_residual(two, nl, left, op);
    CHECK(rep2.sup_residual > 0.05 * rep2.field_max);
}

TEST_CASE("hypothesis (s2) report: powers, loglin bound, constraint naming") {
    OperatorParams op(1.0, 0.5, 2); // 2*_s = 4
    Grid g(2, 8.0, 32);
    Field w = gaussian_bump(g, 1.0, 1.0);

    // Power(alpha): |f'(w)|_{q/(β-1)} with β = alpha gives the alpha-scaled
    // q-norm of w: f' = alpha |w|^{alpha-1}, so the norm is
    // alpha · (∫ |w|^q)^{(β-1)/q}
    const double alpha = 2.0, q = 3.0;
    auto pw = Nonlinearity::power(alpha + 1.0); // f(t) = |t|^{alpha-1} t = t^alpha on t>0
    auto rep = hypothesis_s_check(pw, alpha, q, w, op);
    const double want = alpha * std::pow(lp_pow(w, q), (alpha - 1.0) / q);
    CHECK(rel_err(rep.fprime_norm, want) < 1e-12);
    CHECK(rep.fprime_nonneg);

    // power-sum example: beta = max(alpha, gamma), finite q-norm
    auto ps = hypothesis_s_check(Nonlinearity::power_sum(2.0, 2.5), 2.5, 3.6, w, op);
    CHECK(ps.fprime_norm > 0.0);
    CHECK(ps.fprime_nonneg);

    auto ll = hypothesis_s_check(Nonlinearity::loglin(), 1.5, 3.0, w, op);
    CHECK(ll.loglin_bound_ok); // f'(t) <= 2t
    CHECK(ll.fprime_nonneg);
    CHECK(ll.fsecond_nonneg);

    CHECK_THROWS_WITH_AS(hypothesis_s_check(pw, 2.5, 2.0, w, op), doctest::Contains("q >"),
                         std::invalid_argument); // q <= beta
    CHECK_THROWS_WITH_AS(hypothesis_s_check(pw, 0.5, 3.0, w, op), doctest::Contains("beta"),
                         std::invalid_argument);
    CHECK_THROWS_AS(hypothesis_s_check(pw, 2.0, 5.0, w, op), std::invalid_argument); // q > 2*_s
    OperatorParams bad(1.0, 0.5, 1);
    CHECK_THROWS_AS(hypothesis_s_check(pw, 2.0, 3.0, w, bad), std::invalid_argument);
}
