#include "cdgsk/profile.hpp"

#include "cdgsk/errors.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <set>
#include <string>
#include <tuple>

namespace cdgsk {

namespace {

void require_wavenumber(double k)
{
    if (!(k > 0.0) || !std::isfinite(k)) throw ValidationError("wavenumber k must be positive");
}

// Exact truncation of w^3 to the band of w.
FourierSeries cube_truncated(const FourierSeries& w)
{
    const FourierSeries w2 = convolve_full(w, w);
    const int order = w.order();
    FourierSeries out(order, true, w.parity());
    for (int m = -order; m <= order; ++m) {
        Complex sum{};
        for (int n = -order; n <= order; ++n) sum += w2[m - n] * w[n];
        out.at(m) = sum;
    }
    out.symmetrize();
    return out;
}

} // namespace

WaveProfile asymptotic_profile(double a, double k, int order, int truncation)
{
    require_wavenumber(k);
    if (order < 1 || order > 3) throw ValidationError("asymptotic_profile: order must be 1, 2 or 3");
    if (!(std::abs(a) < 1.0)) throw ValidationError("asymptotic_profile: |a| must be < 1");
    if (truncation < 3) throw ValidationError("asymptotic_profile: truncation must be >= 3");

    const double k2 = k * k;
    const double k4 = k2 * k2;
    FourierSeries w = FourierSeries::cosine(truncation, 1, a);
    double c = k4;
    if (order >= 2) {
        const double a2 = a * a;
        w += FourierSeries::constant(truncation, -15.0 * a2 / (2.0 * k2));
        w += FourierSeries::cosine(truncation, 2, a2 / (2.0 * k2));
        c += 105.0 * a2;
    }
    if (order >= 3) w += FourierSeries::cosine(truncation, 3, 3.0 * a * a * a / (16.0 * k4));
    return {std::move(w), a, k, c};
}

FourierSeries residual(const WaveProfile& p)
{
    const double k2 = p.k * p.k;
    const FourierSeries& w = p.w;
    const FourierSeries wzz = differentiate(w, 2);
    FourierSeries r = (k2 * k2) * differentiate(w, 4);
    r -= p.c * w;
    r += (15.0 * k2) * multiply(w, wzz);
    r += 15.0 * cube_truncated(w);
    return r;
}

double residual_norm(const WaveProfile& p) { return sup_norm(residual(p)); }

NewtonResult newton_solve(double a, double k, const NewtonOptions& options,
                          const std::optional<WaveProfile>& guess)
{
    require_wavenumber(k);
    if (!(std::abs(a) <= 0.1)) throw ValidationError("newton_solve: |a| must be <= 0.1");
    const int N = options.truncation;
    if (N < 16) throw ValidationError("newton_solve: truncation must be >= 16");

    WaveProfile p = guess ? *guess : asymptotic_profile(a, k, 3, N);
    if (p.w.order() != N) p.w = p.w.resized(N);
    if (!p.w.is_real() || !p.w.is_even()) throw ValidationError("newton_solve: guess must be even and real");
    p.a = a;
    p.k = k;

    const double k2 = k * k;
    const double k4 = k2 * k2;
    const int unknowns = N + 2;

    auto evaluate = [&](const WaveProfile& q) {
        const FourierSeries r = residual(q);
        Eigen::VectorXd f(unknowns);
        for (int m = 0; m <= N; ++m) f(m) = r[m].real();
        f(N + 1) = 2.0 * q.w[1].real() - a;
        return std::pair{f, sup_norm(r)};
    };

    auto [f, rnorm] = evaluate(p);
    int iterations = 0;
    while (!(rnorm <= options.tol && std::abs(f(N + 1)) <= options.tol)) {
        if (iterations == options.max_iterations)
            throw NonConvergence("newton_solve: no convergence after " + std::to_string(iterations)
                                 + " iterations (a=" + std::to_string(a) + ", k=" + std::to_string(k)
                                 + ", residual=" + std::to_string(rnorm) + ")");

        // Linearization k^4 d^4 - c + 15k^2 (w d^2 + w'') + 45 w^2 in the
        // exponential basis, folded onto cosine unknowns.
        const FourierSeries w2 = convolve_full(p.w, p.w);
        auto lin = [&](int m, int n) {
            const int d = m - n;
            double v = 15.0 * k2 * (-static_cast<double>(d) * d * p.w[d].real()
                                    - static_cast<double>(n) * n * p.w[d].real())
                       + 45.0 * w2[d].real();
            if (m == n) v += k4 * std::pow(static_cast<double>(n), 4) - p.c;
            return v;
        };
        Eigen::MatrixXd J = Eigen::MatrixXd::Zero(unknowns, unknowns);
        for (int m = 0; m <= N; ++m) {
            J(m, 0) = lin(m, 0);
            for (int j = 1; j <= N; ++j) J(m, j) = lin(m, j) + lin(m, -j);
            J(m, N + 1) = -p.w[m].real();
        }
        J(N + 1, 1) = 2.0;

        Eigen::PartialPivLU<Eigen::MatrixXd> lu(J);
        if (!(lu.rcond() > 1e-14))
            throw SingularJacobian("newton_solve: Jacobian is numerically singular (rcond="
                                   + std::to_string(lu.rcond()) + ")");
        const Eigen::VectorXd delta = lu.solve(f);

        for (int j = 0; j <= N; ++j) {
            const double v = p.w[j].real() - delta(j);
            p.w.at(j) = v;
            p.w.at(-j) = v;
        }
        p.c -= delta(N + 1);
        ++iterations;
        std::tie(f, rnorm) = evaluate(p);
        if (!std::isfinite(rnorm)) throw NonConvergence("newton_solve: iteration diverged");
    }

    double wmax = 0.0;
    for (int n = 0; n <= N; ++n) wmax = std::max(wmax, std::abs(p.w[n]));
    const double tail = wmax > 0.0 ? std::abs(p.w[N]) / wmax : 0.0;
    return {std::move(p), iterations, rnorm, tail};
}

NewtonResult continue_branch(double a, double k, const NewtonOptions& options, double step)
{
    if (!(step > 0.0)) throw ValidationError("continue_branch: step must be positive");
    const double sign = a < 0.0 ? -1.0 : 1.0;
    const int steps = std::max(1, static_cast<int>(std::ceil(std::abs(a) / step - 1e-12)));
    std::optional<WaveProfile> guess;
    NewtonResult result;
    for (int s = 1; s <= steps; ++s) {
        const double as = s == steps ? a : sign * s * step;
        result = newton_solve(as, k, options, guess);
        guess = result.profile;
    }
    return result;
}

WaveProfile stability_profile(double a, double k, int truncation)
{
    if (std::abs(a) <= 1e-3) return asymptotic_profile(a, k, 3, truncation);
    NewtonOptions options;
    options.truncation = truncation;
    return continue_branch(a, k, options).profile;
}

SpeedFit fit_speed_coefficients(std::span<const SpeedSample> samples, double k)
{
    require_wavenumber(k);
    std::set<double> distinct;
    double amax = 0.0;
    for (const auto& s : samples) {
        if (!(std::abs(s.a) <= 0.02))
            throw ValidationError("fit_speed_coefficients: amplitudes must satisfy |a| <= 0.02");
        distinct.insert(std::abs(s.a));
        amax = std::max(amax, std::abs(s.a));
    }
    if (distinct.size() < 4)
        throw ValidationError("fit_speed_coefficients: need at least 4 distinct amplitudes");

    // Even powers 1, s, ..., s^(m-1) with s = (a/amax)^2. At k = 1 the a^6
    // coefficient is O(1e6), so stopping at a^4 biases c0 by ~1e-6; up to
    // five terms are used when the samples leave a spare degree of freedom.
    const int terms = std::clamp(static_cast<int>(distinct.size()) - 1, 3, 5);
    const auto rows = static_cast<Eigen::Index>(samples.size());
    Eigen::MatrixXd design(rows, terms);
    Eigen::VectorXd rhs(rows);
    for (Eigen::Index i = 0; i < rows; ++i) {
        const double s = std::pow(samples[static_cast<std::size_t>(i)].a / amax, 2);
        double p = 1.0;
        for (int j = 0; j < terms; ++j, p *= s) design(i, j) = p;
        rhs(i) = samples[static_cast<std::size_t>(i)].c;
    }
    const Eigen::VectorXd coef = design.colPivHouseholderQr().solve(rhs);
    SpeedFit fit;
    fit.terms = terms;
    fit.c0 = coef(0);
    fit.c2 = coef(1) / (amax * amax);
    fit.c4 = coef(2) / std::pow(amax, 4);
    return fit;
}

} // namespace cdgsk
