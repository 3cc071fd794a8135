#include "cdgsk/errors.hpp"
#include "cdgsk/fourier.hpp"
#include "generators.hpp"

#include <doctest.h>

#include <cmath>
#include <numbers>

using namespace cdgsk;
using doctest::Approx;

namespace {

double max_diff(const FourierSeries& f, const FourierSeries& g)
{
    const int N = std::max(f.order(), g.order());
    double m = 0.0;
    for (int n = -N; n <= N; ++n) m = std::max(m, std::abs(f[n] - g[n]));
    return m;
}

} // namespace

TEST_CASE("cosine and sine carry the sign convention f = sum c_n e^{inz}")
{
    const auto c = FourierSeries::cosine(4, 2, 3.0);
    CHECK(c[2] == Complex(1.5, 0));
    CHECK(c[-2] == Complex(1.5, 0));
    CHECK(c.is_even());

    const auto s = FourierSeries::sine(4, 1, 2.0);
    CHECK(s[1] == Complex(0, -1.0));
    CHECK(s[-1] == Complex(0, 1.0));
    CHECK(s.evaluate(std::numbers::pi / 2).real() == Approx(2.0));
    CHECK(s.parity() == Parity::odd);
}

TEST_CASE("out-of-band access")
{
    FourierSeries f(3);
    CHECK(f[7] == Complex(0, 0));
    CHECK(f[-4] == Complex(0, 0));
    CHECK_THROWS_AS(f.at(4), ValidationError);
    CHECK_THROWS_AS(FourierSeries(-1), ValidationError);
}

TEST_CASE("from_coefficients validates symmetries")
{
    CHECK_THROWS_AS(FourierSeries::from_coefficients({1.0, 2.0}, true), ValidationError);
    // c_{-1} != conj(c_1)
    CHECK_THROWS_AS(FourierSeries::from_coefficients({Complex(1, 1), 0.0, Complex(1, 1)}, true), ValidationError);
    CHECK_THROWS_AS(FourierSeries::from_coefficients({1.0, 0.0, 2.0}, false, Parity::even), ValidationError);
    CHECK_NOTHROW(FourierSeries::from_coefficients({Complex(1, -1), 0.5, Complex(1, 1)}, true));
}

TEST_CASE("derivatives of cos(3z)")
{
    const auto f = FourierSeries::cosine(5, 3, 1.0);
    const auto d1 = differentiate(f, 1);
    const auto d2 = differentiate(f, 2);
    CHECK(max_diff(d1, FourierSeries::sine(5, 3, -3.0)) < 1e-15);
    CHECK(max_diff(d2, FourierSeries::cosine(5, 3, -9.0)) < 1e-15);
    CHECK(d1.parity() == Parity::odd);
    CHECK(d2.parity() == Parity::even);
    CHECK_THROWS_AS(differentiate(f, 0), ValidationError);
}

TEST_CASE("products: cos z * cos z = 1/2 + cos(2z)/2")
{
    const auto c = FourierSeries::cosine(4, 1, 1.0);
    const auto expect = FourierSeries::constant(4, 0.5) + FourierSeries::cosine(4, 2, 0.5);
    CHECK(max_diff(multiply(c, c), expect) < 1e-15);
    CHECK(max_diff(multiply(c, c, ProductMode::dealias), expect) < 1e-15);
    CHECK(convolve_full(c, c).order() == 8);
    CHECK_THROWS_AS(multiply(c, FourierSeries::cosine(5, 1, 1.0)), ValidationError);
}

TEST_CASE("inner product and norm")
{
    const auto c = FourierSeries::cosine(3, 1, 1.0);
    const auto s = FourierSeries::sine(3, 1, 1.0);
    CHECK(inner_product(c, c).real() == Approx(1.0));
    CHECK(std::abs(inner_product(c, s)) < 1e-16);
    CHECK(norm(FourierSeries::constant(3, 1.0)) == Approx(std::sqrt(2.0)));
}

TEST_CASE("RealGrid rejects grids that alias the band")
{
    CHECK_THROWS_AS(RealGrid(8, 16), ValidationError);
    CHECK_NOTHROW(RealGrid(8, 17));
}

// ---------------------------------------------------------------- properties

TEST_CASE("property: dealiased and Galerkin products agree for band-limited factors")
{
    gen::for_all(40, 11, [](gen::Gen& g) {
        const int N = g.integer(2, 24);
        const auto f = g.real_series(N);
        const auto h = g.real_series(N);
        CHECK(max_diff(multiply(f, h), multiply(f, h, ProductMode::dealias)) < 1e-13);
    });
}

TEST_CASE("property: Leibniz rule on the full convolution")
{
    gen::for_all(30, 12, [](gen::Gen& g) {
        const int N = g.integer(1, 12);
        const auto f = g.series(N, g.coin(), Parity::none);
        const auto h = g.series(N, g.coin(), Parity::none);
        const auto lhs = differentiate(convolve_full(f, h), 1);
        const auto rhs = convolve_full(differentiate(f, 1), h.resized(N)) + convolve_full(f, differentiate(h, 1));
        CHECK(max_diff(lhs, rhs) < 1e-12);
    });
}

TEST_CASE("property: convolution is commutative and pointwise")
{
    gen::for_all(30, 13, [](gen::Gen& g) {
        const int N = g.integer(1, 10);
        const auto f = g.real_series(N);
        const auto h = g.real_series(N);
        const auto fh = convolve_full(f, h);
        CHECK(max_diff(fh, convolve_full(h, f)) < 1e-14);
        const double z = g.uniform(0, 2 * std::numbers::pi);
        CHECK(std::abs(fh.evaluate(z) - f.evaluate(z) * h.evaluate(z)) < 1e-12);
    });
}

TEST_CASE("property: Parseval against trapezoidal quadrature")
{
    gen::for_all(30, 14, [](gen::Gen& g) {
        const int N = g.integer(1, 16);
        const auto f = g.real_series(N);
        const auto h = g.real_series(N);
        const int M = 4 * N + 3;
        Complex quad{};
        for (int j = 0; j < M; ++j) {
            const double z = 2 * std::numbers::pi * j / M;
            quad += f.evaluate(z) * std::conj(h.evaluate(z));
        }
        quad *= 2.0 / M; // (1/pi) * (2 pi / M)
        CHECK(std::abs(inner_product(f, h) - quad) < 1e-12);
    });
}

TEST_CASE("property: grid round trip")
{
    gen::for_all(30, 15, [](gen::Gen& g) {
        const int N = g.integer(0, 40);
        const int M = 2 * N + 1 + g.integer(0, 20);
        const auto f = g.real_series(N);
        RealGrid grid(N, M);
        std::vector<Complex> half(N + 1), back(N + 1);
        for (int n = 0; n <= N; ++n) half[n] = f[n];
        std::vector<double> samples(M);
        grid.to_grid(half, samples);
        CHECK(samples[0] == Approx(f.evaluate(0.0).real()).epsilon(1e-12));
        grid.from_grid(samples, back);
        for (int n = 0; n <= N; ++n) CHECK(std::abs(back[n] - half[n]) < 1e-14);
    });
}

TEST_CASE("property: parity bookkeeping under products and derivatives")
{
    gen::for_all(30, 16, [](gen::Gen& g) {
        const int N = g.integer(1, 12);
        const auto e = g.series(N, true, Parity::even);
        const auto o = g.series(N, true, Parity::odd);
        CHECK(multiply(e, o).parity() == Parity::odd);
        CHECK(multiply(o, o).parity() == Parity::even);
        CHECK(differentiate(o, 1).parity() == Parity::even);
        for (int n = 1; n <= N; ++n) CHECK(std::abs(multiply(e, e)[n] - multiply(e, e)[-n]) == 0.0);
    });
}

TEST_CASE("property: sup norm is bounded by the coefficient l1 norm")
{
    gen::for_all(30, 17, [](gen::Gen& g) {
        const auto f = g.real_series(g.integer(0, 20));
        CHECK(sup_norm(f) <= coefficient_l1(f) * (1 + 1e-14));
        CHECK(norm(f) >= 0.0);
    });
}
