#include "cdgsk/bloch.hpp"

#include "cdgsk/errors.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <mutex>
#include <numeric>
#include <numbers>
#include <thread>
#include <type_traits>

namespace cdgsk {

double flat_symbol(int n, double xi, double k)
{
    const double q = n + xi;
    const double k2 = k * k;
    return k2 * k2 * q * (1.0 - q * q * q * q);
}

void require_floquet_exponent(double xi)
{
    if (!(xi >= -0.5 && xi <= 0.5)) throw ValidationError("Floquet exponent must lie in [-1/2, 1/2]");
}

bool BlochMatrix::has_real_form() const
{
    const double scale = T.cwiseAbs().maxCoeff();
    return T.real().cwiseAbs().maxCoeff() <= 1e-15 * scale;
}

Eigen::MatrixXd BlochMatrix::real_form() const { return T.imag(); }

BlochMatrix assemble(const WaveProfile& profile, double xi, int N)
{
    require_floquet_exponent(xi);
    const FourierSeries& w = profile.w;
    if (N < w.order()) throw ValidationError("assemble: N must be >= the profile truncation");

    const double k2 = profile.k * profile.k;
    const double k4 = k2 * k2;
    const FourierSeries wzz = differentiate(w, 2);
    const FourierSeries w2 = convolve_full(w, w);

    const int dim = 2 * N + 1;
    BlochMatrix M{xi, N, profile.a, profile.k, Eigen::MatrixXcd::Zero(dim, dim)};
    for (int m = -N; m <= N; ++m) {
        const double qm = m + xi;
        for (int n = -N; n <= N; ++n) {
            const int d = m - n;
            if (std::abs(d) > w2.order()) continue;
            const double qn = n + xi;
            // inner operator c - k^4 D^4 - 15 (k^2 (W D^2 + W_zz) + 3 W2), then D from the left
            Complex inner = -15.0 * (k2 * (-qn * qn * w[d] + wzz[d]) + 3.0 * w2[d]);
            if (d == 0) inner += profile.c - k4 * qn * qn * qn * qn;
            M.T(M.index(m), M.index(n)) = Complex(0.0, qm) * inner;
        }
    }
    return M;
}

namespace {

bool is_diagonal(const Eigen::MatrixXcd& T)
{
    for (Eigen::Index j = 0; j < T.cols(); ++j)
        for (Eigen::Index i = 0; i < T.rows(); ++i)
            if (i != j && T(i, j) != Complex{}) return false;
    return true;
}

// Contour moments A0 = (1/M) sum z (z - X)^{-1} V, A1 = (1/M) sum z^2 (z - X)^{-1} V
// followed by Beyn's rank reduction. For real X the nodes pair up as
// conjugates and only half of the solves are needed.
template <typename Scalar>
void moments(const Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>& X, int N, double radius, int nodes,
             Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>& A0,
             Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>& A1)
{
    constexpr bool real = std::is_same_v<Scalar, double>;
    const Eigen::Index dim = X.rows();
    const int probes = static_cast<int>(std::min<Eigen::Index>(7, dim));
    const int first = std::max(0, N - probes / 2);
    Eigen::MatrixXcd V = Eigen::MatrixXcd::Zero(dim, probes);
    for (int p = 0; p < probes; ++p) V(first + p, p) = 1.0;

    Eigen::MatrixXcd S0 = Eigen::MatrixXcd::Zero(dim, probes);
    Eigen::MatrixXcd S1 = Eigen::MatrixXcd::Zero(dim, probes);
    const Eigen::MatrixXcd Xc = X.template cast<Complex>();
    const int count = real ? nodes / 2 : nodes;
    for (int j = 0; j < count; ++j) {
        const Complex z = std::polar(radius, 2.0 * std::numbers::pi * (j + 0.5) / nodes);
        Eigen::MatrixXcd S = -Xc;
        S.diagonal().array() += z;
        const Eigen::MatrixXcd R = S.partialPivLu().solve(V);
        S0 += z * R;
        S1 += z * z * R;
    }
    if constexpr (real) {
        A0 = 2.0 * S0.real() / nodes;
        A1 = 2.0 * S1.real() / nodes;
    } else {
        A0 = S0 / static_cast<double>(nodes);
        A1 = S1 / static_cast<double>(nodes);
    }
}

template <typename Scalar>
Eigen::VectorXcd beyn(const Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>& X, int N, double radius,
                      int expected, int nodes)
{
    using Mat = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
    Mat A0, A1;
    moments(X, N, radius, nodes, A0, A1);
    Eigen::JacobiSVD<Mat> svd(A0, Eigen::ComputeThinU | Eigen::ComputeThinV);
    const auto& s = svd.singularValues();
    if (!(s(expected - 1) > 1e-13 * s(0)))
        throw WrongRank("cluster_eigenvalues: moment matrix has rank below " + std::to_string(expected));
    const Mat U = svd.matrixU().leftCols(expected);
    const Mat W = svd.matrixV().leftCols(expected);
    const Mat B = U.adjoint() * A1 * W * s.head(expected).cwiseInverse().asDiagonal();

    if constexpr (std::is_same_v<Scalar, double>) {
        Eigen::EigenSolver<Mat> es(B, false);
        if (es.info() != Eigen::Success) throw EigenFailure("cluster_eigenvalues: reduced eigenproblem failed");
        return es.eigenvalues();
    } else {
        Eigen::ComplexEigenSolver<Mat> es(B, false);
        if (es.info() != Eigen::Success) throw EigenFailure("cluster_eigenvalues: reduced eigenproblem failed");
        return es.eigenvalues();
    }
}

} // namespace

std::vector<Complex> cluster_eigenvalues(const BlochMatrix& M, double radius, int expected, int nodes)
{
    if (expected < 1 || expected > 7) throw ValidationError("cluster_eigenvalues: expected must be in 1..7");
    if (nodes < 8 || nodes % 4 != 0) throw ValidationError("cluster_eigenvalues: nodes must be a multiple of 4");
    if (expected > M.dim()) throw ValidationError("cluster_eigenvalues: expected exceeds the matrix size");
    if (!M.has_real_form()) {
        const Eigen::VectorXcd l = beyn<Complex>(M.T, M.N, radius, expected, nodes);
        return {l.begin(), l.end()};
    }
    // T = iA, so |lambda| = |mu| and the disc is the same.
    const Eigen::VectorXcd mu = beyn<double>(M.real_form(), M.N, radius, expected, nodes);
    std::vector<Complex> out;
    for (const Complex& m : mu) out.push_back(Complex(0.0, 1.0) * m);
    return out;
}

SpectrumSlice eigenvalues(const BlochMatrix& M, bool refine)
{
    SpectrumSlice slice{M.xi, {}};
    const int dim = M.dim();
    slice.eigenvalues.reserve(static_cast<std::size_t>(dim));

    if (M.has_real_form()) {
        const Eigen::MatrixXd A = M.real_form();
        // Graded ordering (largest diagonal first) keeps small eigenvalues accurate.
        std::vector<int> perm(static_cast<std::size_t>(dim));
        std::iota(perm.begin(), perm.end(), 0);
        std::stable_sort(perm.begin(), perm.end(),
                         [&](int i, int j) { return std::abs(A(i, i)) > std::abs(A(j, j)); });
        Eigen::MatrixXd Ap(dim, dim);
        for (int j = 0; j < dim; ++j)
            for (int i = 0; i < dim; ++i) Ap(i, j) = A(perm[static_cast<std::size_t>(i)], perm[static_cast<std::size_t>(j)]);
        Eigen::EigenSolver<Eigen::MatrixXd> es(Ap, false);
        if (es.info() != Eigen::Success)
            throw EigenFailure("eigenvalues: QR iteration failed at xi=" + std::to_string(M.xi));
        for (Eigen::Index i = 0; i < dim; ++i) slice.eigenvalues.push_back(Complex(0.0, 1.0) * es.eigenvalues()(i));
    } else {
        Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(M.T, false);
        if (es.info() != Eigen::Success)
            throw EigenFailure("eigenvalues: QR iteration failed at xi=" + std::to_string(M.xi));
        slice.eigenvalues.assign(es.eigenvalues().begin(), es.eigenvalues().end());
    }

    if (!refine || is_diagonal(M.T)) return slice;

    // Radius with an eigenvalue-free annulus [r/2, 2r] around the circle.
    const double R = 5.0 * std::pow(M.k, 4);
    auto& ev = slice.eigenvalues;
    for (double r : {R / 3.0, R / 6.0, R / 12.0, R / 24.0}) {
        std::vector<std::size_t> inside;
        bool clear = true;
        for (std::size_t i = 0; i < ev.size(); ++i) {
            const double m = std::abs(ev[i]);
            if (m >= 0.5 * r && m <= 2.0 * r) clear = false;
            if (m < r) inside.push_back(i);
        }
        if (!clear) continue;
        if (inside.size() < 2 || inside.size() > 7) break;

        bool tight = false;
        for (std::size_t p = 0; p < inside.size(); ++p) {
            if (ev[inside[p]].real() != 0.0) tight = true;
            for (std::size_t q = p + 1; q < inside.size(); ++q)
                if (std::abs(ev[inside[p]] - ev[inside[q]]) < 1e-3 * r) tight = true;
        }
        if (!tight) break;

        const auto refined = cluster_eigenvalues(M, r, static_cast<int>(inside.size()));
        for (std::size_t p = 0; p < inside.size(); ++p) ev[inside[p]] = refined[p];
        break;
    }
    return slice;
}

std::vector<double> floquet_grid(int points)
{
    if (points < 1 || points % 2 == 0) throw ValidationError("floquet_grid: number of points must be odd");
    if (points == 1) return {0.0};
    std::vector<double> grid(static_cast<std::size_t>(points));
    const int den = 2 * (points - 1);
    for (int j = 0; j < points; ++j) grid[static_cast<std::size_t>(j)] = static_cast<double>(2 * j - (points - 1)) / den;
    return grid;
}

std::string to_string(Verdict v)
{
    switch (v) {
    case Verdict::stable: return "stable";
    case Verdict::unstable: return "unstable";
    case Verdict::inconclusive: return "inconclusive";
    }
    return "unknown";
}

Verdict classify(double max_re, double tol)
{
    if (max_re <= tol) return Verdict::stable;
    if (max_re > 10.0 * tol) return Verdict::unstable;
    return Verdict::inconclusive;
}

StabilityReport scan(const WaveProfile& profile, std::span<const double> grid, int N, double tol, int workers)
{
    if (grid.empty()) throw ValidationError("scan: empty Floquet grid");
    for (double xi : grid) require_floquet_exponent(xi);
    if (!(tol > 0.0)) throw ValidationError("scan: tolerance must be positive");

    StabilityReport report;
    report.slices.resize(grid.size());
    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;

    auto work = [&] {
        for (;;) {
            const std::size_t i = next.fetch_add(1);
            if (i >= grid.size()) return;
            try {
                report.slices[i] = eigenvalues(assemble(profile, grid[i], N));
            } catch (const NumericalError& e) {
                std::lock_guard lock(failure_mutex);
                if (!failure)
                    failure = std::make_exception_ptr(
                        EigenFailure(std::string(e.what()) + " (xi=" + std::to_string(grid[i]) + ")"));
                next = grid.size();
                return;
            } catch (...) {
                std::lock_guard lock(failure_mutex);
                if (!failure) failure = std::current_exception();
                next = grid.size();
                return;
            }
        }
    };

    const int threads = std::clamp(workers, 1, static_cast<int>(grid.size()));
    if (threads == 1) {
        work();
    } else {
        std::vector<std::jthread> pool;
        for (int t = 0; t < threads; ++t) pool.emplace_back(work);
    }
    if (failure) std::rethrow_exception(failure);

    report.max_re = -std::numeric_limits<double>::infinity();
    for (const auto& s : report.slices)
        for (const Complex& l : s.eigenvalues) {
            report.max_abs_re = std::max(report.max_abs_re, std::abs(l.real()));
            if (l.real() > report.max_re) {
                report.max_re = l.real();
                report.argmax_xi = s.xi;
                report.argmax_lambda = l;
            }
        }
    report.grid_points = static_cast<int>(grid.size());
    report.grid_min = *std::min_element(grid.begin(), grid.end());
    report.grid_max = *std::max_element(grid.begin(), grid.end());
    report.N = N;
    report.tol = tol;
    report.verdict = classify(report.max_re, tol);
    return report;
}

std::vector<Collision> collision_analysis(double k, int n_max, std::span<const double> grid, double rel_threshold)
{
    if (!(k > 0.0)) throw ValidationError("collision_analysis: k must be positive");
    if (n_max < 1) throw ValidationError("collision_analysis: n_max must be >= 1");
    const double k4 = std::pow(k, 4);
    std::vector<Collision> out;
    std::vector<std::pair<double, int>> omega;
    for (double xi : grid) {
        omega.clear();
        for (int n = -n_max; n <= n_max; ++n) omega.emplace_back(flat_symbol(n, xi, k), n);
        std::sort(omega.begin(), omega.end());
        for (std::size_t i = 0; i < omega.size();) {
            std::size_t j = i + 1;
            while (j < omega.size()
                   && omega[j].first - omega[j - 1].first
                          <= rel_threshold * k4 * std::max(1.0, std::abs(omega[j].first) / k4))
                ++j;
            if (j - i >= 2) {
                Collision c{xi, {}, omega[i].first};
                for (std::size_t p = i; p < j; ++p) c.modes.push_back(omega[p].second);
                std::sort(c.modes.begin(), c.modes.end());
                out.push_back(std::move(c));
            }
            i = j;
        }
    }
    return out;
}

namespace {

double greedy_mismatch(const std::vector<Complex>& images, const std::vector<Complex>& sources,
                       const std::vector<Complex>& targets)
{
    std::vector<bool> used(targets.size(), false);
    double worst = 0.0;
    for (std::size_t i = 0; i < images.size(); ++i) {
        double best = std::numeric_limits<double>::infinity();
        std::size_t arg = targets.size();
        for (std::size_t j = 0; j < targets.size(); ++j) {
            if (used[j]) continue;
            const double d = std::abs(images[i] - targets[j]);
            if (d < best) {
                best = d;
                arg = j;
            }
        }
        if (arg == targets.size()) return std::numeric_limits<double>::infinity();
        used[arg] = true;
        worst = std::max(worst, best / std::max(1.0, std::abs(sources[i])));
    }
    return worst;
}

} // namespace

double quadfold_mismatch(const SpectrumSlice& slice, const SpectrumSlice& mirror)
{
    const auto& ev = slice.eigenvalues;
    std::vector<Complex> neg_conj, conj, neg;
    for (const Complex& l : ev) {
        neg_conj.push_back(-std::conj(l));
        conj.push_back(std::conj(l));
        neg.push_back(-l);
    }
    return std::max({greedy_mismatch(neg_conj, ev, ev), greedy_mismatch(conj, ev, mirror.eigenvalues),
                     greedy_mismatch(neg, ev, mirror.eigenvalues)});
}

} // namespace cdgsk
