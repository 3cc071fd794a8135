#include "cdgsk/errors.hpp"
#include "cdgsk/profile.hpp"
#include "cdgsk/report.hpp"
#include "generators.hpp"
#include "oracles.hpp"

#include <doctest.h>

#include <cmath>
#include <vector>

using namespace cdgsk;
using doctest::Approx;

TEST_CASE("a = 0 is the exact flat root")
{
    const auto r = newton_solve(0.0, 1.0);
    CHECK(r.profile.c == 1.0);
    CHECK(r.iterations <= 1);
    CHECK(sup_norm(r.profile.w) == 0.0);
    CHECK(newton_solve(0.0, 2.0).profile.c == 16.0);
}

TEST_CASE("Newton matches the collocation oracle")
{
    for (const auto& o : oracle::profiles) {
        CAPTURE(o.a);
        CAPTURE(o.k);
        const auto r = continue_branch(o.a, o.k);
        CHECK(r.residual_norm <= 1e-12);
        CHECK(r.iterations <= 10);
        // the collocation oracle stops at a residual of about 1e-11
        CHECK(std::abs(r.profile.c - o.c) <= 1e-11 * o.c);
        CHECK(std::abs(r.profile.w[0].real() - o.w0) <= 1e-12);
        CHECK(std::abs(r.profile.w[2].real() - o.w2) <= 1e-12);
        CHECK(std::abs(r.profile.w[3].real() - o.w3) <= 1e-12);
        CHECK(2 * r.profile.w[1].real() == Approx(o.a).epsilon(1e-13));
        CHECK(r.tail_ratio <= 1e-14);
    }
}

TEST_CASE("reference values for the solver")
{
    const auto r = newton_solve(0.01, 1.0);
    CHECK(r.iterations <= 6);
    CHECK(std::abs(r.profile.c - 1.0 - 105e-4) <= 1e4 * std::pow(0.01, 4));

    const auto r2 = continue_branch(0.05, 2.0);
    CHECK(std::abs(r2.profile.c - (16 + 105 * 0.0025)) <= 1e3 * std::pow(0.05, 4));
}

TEST_CASE("asymptotic profile coefficients")
{
    const double a = 0.01, k = 2.0;
    const auto p = asymptotic_profile(a, k, 3);
    CHECK(p.w[1].real() == Approx(a / 2));
    CHECK(p.w[0].real() == Approx(-15 * a * a / 8));
    CHECK(p.w[2].real() == Approx(a * a / 16));
    CHECK(p.w[3].real() == Approx(3 * a * a * a / (32 * 16)));
    CHECK(p.c == Approx(16 + 105 * a * a));
    CHECK(asymptotic_profile(a, k, 1).c == 16.0);
    CHECK_THROWS_AS(asymptotic_profile(a, k, 4), ValidationError);
    CHECK_THROWS_AS(asymptotic_profile(a, -1.0, 3), ValidationError);
}

TEST_CASE("solver input validation and failures")
{
    CHECK_THROWS_AS(newton_solve(0.2, 1.0), ValidationError);
    CHECK_THROWS_AS(newton_solve(0.01, 0.0), ValidationError);
    NewtonOptions small;
    small.truncation = 8;
    CHECK_THROWS_AS(newton_solve(0.01, 1.0, small), ValidationError);
    NewtonOptions none;
    none.max_iterations = 0;
    CHECK_THROWS_AS(newton_solve(0.02, 1.0, none), NonConvergence);
    try {
        newton_solve(0.02, 1.0, none);
    } catch (const NumericalError& e) {
        CHECK(e.kind() == "NonConvergence");
    }
}

TEST_CASE("speed fit")
{
    SUBCASE("exact quadratic samples are reproduced")
    {
        std::vector<SpeedSample> s;
        for (double a : {0.001, 0.005, 0.01, 0.015, 0.02}) s.push_back({a, 16 + 105 * a * a});
        const auto f = fit_speed_coefficients(s, 2.0);
        CHECK(f.c0 == Approx(16.0).epsilon(1e-13));
        CHECK(f.c2 == Approx(105.0).epsilon(1e-9));
        CHECK(std::abs(f.c4) < 1e-3);
    }
    SUBCASE("rejects too few or too large amplitudes")
    {
        std::vector<SpeedSample> s{{0.01, 1}, {0.01, 1}, {-0.01, 1}, {0.02, 1}};
        CHECK_THROWS_AS(fit_speed_coefficients(s, 1.0), ValidationError);
        std::vector<SpeedSample> t{{0.01, 1}, {0.012, 1}, {0.015, 1}, {0.03, 1}};
        CHECK_THROWS_AS(fit_speed_coefficients(t, 1.0), ValidationError);
    }
    SUBCASE("Newton samples give c0 = k^4 and c2 = 105")
    {
        for (double k : {1.0, 2.0}) {
            std::vector<SpeedSample> s;
            for (int i = 0; i < 8; ++i) {
                const double a = 0.001 + (0.02 - 0.001) * i / 7.0;
                s.push_back({a, continue_branch(a, k).profile.c});
            }
            const auto f = fit_speed_coefficients(s, k);
            CHECK(std::abs(f.c0 / std::pow(k, 4) - 1) < 1e-8);
            CHECK(std::abs(f.c2 / 105 - 1) < 5e-3);
        }
    }
}

TEST_CASE("remainder of the third-order expansion is O(a^4)")
{
    std::vector<double> as, errs;
    for (int j = 0; j < 5; ++j) {
        const double a = 0.02 / std::pow(2.0, j);
        as.push_back(a);
        errs.push_back(sup_norm(continue_branch(a, 1.0).profile.w - asymptotic_profile(a, 1.0, 3).w));
    }
    CHECK(loglog_slope(as, errs) == Approx(4.0).epsilon(0.05));
}

// ---------------------------------------------------------------- properties

TEST_CASE("property: c(a) = c(-a) and the negated branch is the half-period shift")
{
    gen::for_all(8, 21, [](gen::Gen& g) {
        const double a = g.uniform(0.001, 0.05);
        const double k = g.uniform(0.7, 2.0);
        const auto p = continue_branch(a, k).profile;
        const auto m = continue_branch(-a, k).profile;
        CHECK(std::abs(p.c - m.c) <= 1e-13 * p.c);
        for (int n = 0; n <= 6; ++n) {
            const double sign = n % 2 ? -1.0 : 1.0;
            CHECK(std::abs(m.w[n].real() - sign * p.w[n].real()) <= 1e-14);
        }
    });
}

TEST_CASE("property: Newton output is even and real, and the mean follows -15 a^2 / (2 k^2)")
{
    gen::for_all(8, 22, [](gen::Gen& g) {
        const double a = g.uniform(0.001, 0.02);
        const double k = g.uniform(0.8, 2.0);
        const auto p = continue_branch(a, k).profile;
        CHECK(p.w.is_even());
        CHECK(p.w.is_real());
        for (int n = 1; n <= p.w.order(); ++n) CHECK(p.w[n] == p.w[-n]);
        const double leading = -15 * a * a / (2 * k * k);
        CHECK(std::abs(p.w.mean() - leading) <= 1e3 * std::pow(a, 4) / std::pow(k, 6));
    });
}

TEST_CASE("property: residual of the expansion scales like a^4")
{
    gen::for_all(6, 23, [](gen::Gen& g) {
        const double a = g.uniform(0.002, 0.02);
        const double k = g.uniform(0.8, 1.5);
        const double r1 = residual_norm(asymptotic_profile(a, k, 3));
        const double r2 = residual_norm(asymptotic_profile(a / 2, k, 3));
        CHECK(r1 / r2 == Approx(16.0).epsilon(0.15));
    });
}
