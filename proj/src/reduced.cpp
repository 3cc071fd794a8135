#include "cdgsk/reduced.hpp"

#include "cdgsk/errors.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/LU>
#include <Eigen/SVD>

#include <algorithm>
#include <cmath>
#include <functional>
#include <initializer_list>
#include <limits>
#include <numeric>
#include <numbers>

namespace cdgsk {

namespace {

using Eigen::MatrixXcd;

const Complex I1{0.0, 1.0};

double opnorm(const MatrixXcd& X)
{
    if (X.size() == 0) return 0.0;
    Eigen::JacobiSVD<MatrixXcd> svd(X);
    return svd.singularValues()(0);
}

double opnorm3(const Eigen::Matrix3cd& X) { return opnorm(MatrixXcd(X)); }

std::vector<Complex> interior_eigenvalues(const BlochMatrix& M, double radius)
{
    std::vector<Complex> out;
    for (const Complex& l : eigenvalues(M).eigenvalues)
        if (std::abs(l) < radius) out.push_back(l);
    return out;
}

MatrixXcd contour_sum(const BlochMatrix& M, double radius, int nodes)
{
    const int dim = M.dim();
    if (M.has_real_form()) {
        // T = iA and the node set is invariant under rotation by -pi/2, so the
        // projector of T equals that of A with the same nodes; it is real.
        const MatrixXcd A = M.real_form().cast<Complex>();
        MatrixXcd S = MatrixXcd::Zero(dim, dim);
        for (int j = 0; j < nodes / 2; ++j) {
            const Complex z = std::polar(radius, 2.0 * std::numbers::pi * (j + 0.5) / nodes);
            MatrixXcd Z = -A;
            Z.diagonal().array() += z;
            S += z * Z.partialPivLu().inverse();
        }
        return (2.0 * S.real() / nodes).cast<Complex>();
    }
    MatrixXcd S = MatrixXcd::Zero(dim, dim);
    for (int j = 0; j < nodes; ++j) {
        const Complex z = std::polar(radius, 2.0 * std::numbers::pi * (j + 0.5) / nodes);
        MatrixXcd Z = -M.T;
        Z.diagonal().array() += z;
        S += z * Z.partialPivLu().inverse();
    }
    return S / static_cast<double>(nodes);
}

MatrixXcd eigenbasis_projector(const BlochMatrix& M)
{
    Eigen::ComplexEigenSolver<MatrixXcd> es(M.T, true);
    if (es.info() != Eigen::Success) throw EigenFailure("eigenbasis projector: eigensolver failed");
    const auto& lam = es.eigenvalues();
    std::vector<int> order(static_cast<std::size_t>(lam.size()));
    std::iota(order.begin(), order.end(), 0);
    std::partial_sort(order.begin(), order.begin() + 3, order.end(),
                      [&](int i, int j) { return std::abs(lam(i)) < std::abs(lam(j)); });

    const MatrixXcd& V = es.eigenvectors();
    MatrixXcd X(V.rows(), 3);
    for (int j = 0; j < 3; ++j) X.col(j) = V.col(order[static_cast<std::size_t>(j)]).normalized();
    // nearly parallel eigenvectors: a Jordan block split by rounding
    const double smin = Eigen::JacobiSVD<MatrixXcd>(X).singularValues()(2);
    if (!(smin > 1e-6))
        throw DefectiveCluster("eigenbasis projector: cluster eigenvectors are dependent (sigma_min "
                               + std::to_string(smin) + ")");
    const Eigen::PartialPivLU<MatrixXcd> lu(V);
    const MatrixXcd Vinv = lu.inverse();
    MatrixXcd P = MatrixXcd::Zero(V.rows(), V.cols());
    for (int j = 0; j < 3; ++j) {
        const int i = order[static_cast<std::size_t>(j)];
        P += V.col(i) * Vinv.row(i);
    }
    if (!P.allFinite()) throw DefectiveCluster("eigenbasis projector: eigenvector matrix is singular");
    return P;
}

Eigen::VectorXcd mode_vector(int N, std::initializer_list<std::pair<int, Complex>> entries)
{
    Eigen::VectorXcd v = Eigen::VectorXcd::Zero(2 * N + 1);
    for (const auto& [n, c] : entries) v(n + N) += c;
    return v;
}

Eigen::VectorXcd cos_mode(int N, int m, double amp)
{
    if (m == 0) return mode_vector(N, {{0, amp}});
    return mode_vector(N, {{m, 0.5 * amp}, {-m, 0.5 * amp}});
}

Eigen::VectorXcd sin_mode(int N, int m, double amp)
{
    return mode_vector(N, {{m, Complex(0.0, -0.5 * amp)}, {-m, Complex(0.0, 0.5 * amp)}});
}

} // namespace

std::string to_string(ProjectorMethod m) { return m == ProjectorMethod::contour ? "contour" : "eigenbasis"; }

Eigen::MatrixXcd flat_projector(int N)
{
    MatrixXcd P = MatrixXcd::Zero(2 * N + 1, 2 * N + 1);
    for (int n = -1; n <= 1; ++n) P(n + N, n + N) = 1.0;
    return P;
}

Eigen::MatrixXcd flat_basis(int N)
{
    MatrixXcd E(2 * N + 1, 3);
    E.col(0) = cos_mode(N, 1, 1.0);
    E.col(1) = sin_mode(N, 1, 1.0);
    E.col(2) = cos_mode(N, 0, 1.0 / std::numbers::sqrt2);
    return E;
}

double projector_radius(double k) { return 5.0 * std::pow(k, 4) / 3.0; }

ProjectorPair projector(const BlochMatrix& M, ProjectorMethod method, int nodes)
{
    if (nodes < 8 || nodes % 4 != 0) throw ValidationError("projector: nodes must be a multiple of 4, >= 8");
    const double r = projector_radius(M.k);
    const auto inside = interior_eigenvalues(M, r);
    if (inside.size() != 3)
        throw WrongRank("projector: " + std::to_string(inside.size()) + " eigenvalues inside |lambda| < R/3");

    ProjectorPair out;
    out.method = method;
    if (method == ProjectorMethod::contour) {
        MatrixXcd P = contour_sum(M, r, nodes);
        int level = nodes;
        for (int doubling = 0;; ++doubling) {
            MatrixXcd P2 = contour_sum(M, r, 2 * level);
            const double change = opnorm(P2 - P);
            P = std::move(P2);
            level *= 2;
            if (change <= 1e-8) {
                out.quadrature_change = change;
                break;
            }
            if (doubling == 3)
                throw QuadratureStall("projector: node doubling still changes the projector by "
                                      + std::to_string(change));
        }
        out.P = std::move(P);
        out.nodes = level;
    } else {
        out.P = eigenbasis_projector(M);
    }
    out.deviation = opnorm(out.P - flat_projector(M.N));
    return out;
}

TransportedBasis transported_basis(const Eigen::MatrixXcd& P, int N)
{
    const int dim = 2 * N + 1;
    if (P.rows() != dim || P.cols() != dim) throw ValidationError("transported_basis: size mismatch");
    const MatrixXcd P0 = flat_projector(N);
    const MatrixXcd Id = MatrixXcd::Identity(dim, dim);
    const MatrixXcd E = P - P0;
    TransportedBasis out;
    out.deviation = opnorm(E);
    if (!(out.deviation < 0.5))
        throw NotAPerturbation("transported_basis: ||P - P00|| = " + std::to_string(out.deviation) + " >= 1/2");

    // (I - E^2)^{-1/2} = sum_j binom(2j, j) 4^{-j} E^{2j}
    const MatrixXcd E2 = E * E;
    const double q = opnorm(E2);
    MatrixXcd S = Id;
    MatrixXcd power = Id;
    double coef = 1.0;
    int j = 0;
    for (;;) {
        ++j;
        coef *= (2.0 * j - 1.0) / (2.0 * j);
        power = power * E2;
        S += coef * power;
        const double next = coef * (2.0 * j + 1.0) / (2.0 * j + 2.0);
        if (j >= 2 && next * std::pow(q, j + 1) / (1.0 - q) <= 1e-15) break;
        if (j == 200) throw NotAPerturbation("transported_basis: binomial series did not converge");
    }
    out.neumann_terms = j;

    const MatrixXcd U = S * (P * P0 + (Id - P) * (Id - P0));
    const MatrixXcd Uinv = S * (P0 * P + (Id - P0) * (Id - P));
    out.similarity_error = opnorm(U * P0 * Uinv - P);
    if (!(out.similarity_error <= 1e-8))
        throw NotAPerturbation("transported_basis: U P00 U^{-1} differs from P by "
                               + std::to_string(out.similarity_error));
    out.phi = S * P * flat_basis(N);
    return out;
}

Eigen::Matrix3cd closed_form_matrix(double a, double xi, double k)
{
    const double k2 = k * k;
    const double k4 = k2 * k2;
    const double s2 = std::numbers::sqrt2;
    Eigen::Matrix3cd B;
    B << -4.0 * I1 * k4 * xi, -15.0 * a * a + 10.0 * k4 * xi * xi, 15.0 * I1 * s2 * k2 * a * xi,
        -10.0 * k4 * xi * xi, -4.0 * I1 * k4 * xi, 0.0,
        15.0 * I1 * s2 * k2 * a * xi / 2.0, -15.0 * s2 * k2 * a / 2.0, I1 * k4 * xi;
    return B;
}

Cubic characteristic_cubic(const Eigen::Matrix3cd& B)
{
    const Complex minors = B(0, 0) * B(1, 1) - B(0, 1) * B(1, 0) + B(0, 0) * B(2, 2) - B(0, 2) * B(2, 0)
                           + B(1, 1) * B(2, 2) - B(1, 2) * B(2, 1);
    return {B.trace(), -minors, B.determinant()};
}

Cubic closed_form_cubic(double a, double xi, double k)
{
    const double k4 = std::pow(k, 4);
    const double k8 = k4 * k4;
    const double k12 = k8 * k4;
    const double a2 = a * a;
    const double x2 = xi * xi;
    const double x3 = x2 * xi;
    return {-7.0 * I1 * k4 * xi, -(75.0 * a2 * k4 * x2 - 8.0 * k8 * x2 + 100.0 * k8 * x2 * x2),
            I1 * (1200.0 * a2 * k8 * x3 - 16.0 * k12 * x3 + 100.0 * k12 * x3 * x2)};
}

std::array<Complex, 3> cubic_roots(const Cubic& c)
{
    // -l^3 + c2 l^2 + c1 l + c0 = 0  <=>  l^3 - c2 l^2 - c1 l - c0 = 0
    Eigen::Matrix3cd C = Eigen::Matrix3cd::Zero();
    C(0, 0) = c[0];
    C(0, 1) = c[1];
    C(0, 2) = c[2];
    C(1, 0) = 1.0;
    C(2, 1) = 1.0;
    Eigen::ComplexEigenSolver<Eigen::Matrix3cd> es(C, false);
    if (es.info() != Eigen::Success) throw EigenFailure("cubic_roots: companion eigenproblem failed");
    return {es.eigenvalues()(0), es.eigenvalues()(1), es.eigenvalues()(2)};
}

double root_set_distance(const std::array<Complex, 3>& x, const std::array<Complex, 3>& y)
{
    std::array<int, 3> perm{0, 1, 2};
    double best = std::numeric_limits<double>::infinity();
    do {
        double worst = 0.0;
        for (int i = 0; i < 3; ++i) worst = std::max(worst, std::abs(x[i] - y[perm[i]]));
        best = std::min(best, worst);
    } while (std::next_permutation(perm.begin(), perm.end()));
    return best;
}

std::array<double, 3> real_cubic(double a, double xi, double k)
{
    const double k4 = std::pow(k, 4);
    const double k8 = k4 * k4;
    const double k12 = k8 * k4;
    const double a2 = a * a;
    const double x2 = xi * xi;
    const double x3 = x2 * xi;
    return {7.0 * k4 * xi, -75.0 * a2 * k4 * x2 + 8.0 * k8 * x2 - 100.0 * k8 * x2 * x2,
            1200.0 * a2 * k8 * x3 - 16.0 * k12 * x3 + 100.0 * k12 * x3 * x2};
}

DiscriminantResult discriminant(double a, double xi, double k)
{
    if (!(k > 0.0)) throw ValidationError("discriminant: k must be positive");
    const double k4 = std::pow(k, 4);
    const double k8 = k4 * k4;
    const double k12 = k8 * k4;
    const double a2 = a * a;
    const double a4 = a2 * a2;
    const double x2 = xi * xi;
    const double x4 = x2 * x2;

    DiscriminantResult out;
    const double bracket = 108.0 * a4 * a2 - 3231.0 * a4 * k4 + 48.0 * a2 * k8 + 432.0 * a4 * k4 * x2
                           - 1488.0 * a2 * k8 * x2 + 16.0 * k12 * x2 + 576.0 * a2 * k8 * x4
                           - 128.0 * k12 * x4 + 256.0 * k12 * x4 * x2;
    const double pre = 15625.0 * k12 * x4 * x2;
    out.delta = pre * bracket;
    out.leading = pre * 16.0 * k8 * (3.0 * a2 + k4 * x2);

    const auto [b, c, d] = real_cubic(a, xi, k);
    out.delta_generic = 18.0 * b * c * d - 4.0 * b * b * b * d + b * b * c * c - 4.0 * c * c * c - 27.0 * d * d;

    Eigen::Matrix3d C = Eigen::Matrix3d::Zero();
    C(0, 0) = -b;
    C(0, 1) = -c;
    C(0, 2) = -d;
    C(1, 0) = 1.0;
    C(2, 1) = 1.0;
    Eigen::EigenSolver<Eigen::Matrix3d> es(C, false);
    if (es.info() != Eigen::Success) throw EigenFailure("discriminant: companion eigenproblem failed");
    for (int i = 0; i < 3; ++i) {
        out.roots[static_cast<std::size_t>(i)] = es.eigenvalues()(i);
        out.max_imag = std::max(out.max_imag, std::abs(es.eigenvalues()(i).imag()));
        out.scale = std::max(out.scale, std::abs(es.eigenvalues()(i)));
    }
    out.all_roots_real = out.max_imag <= 1e-10 * out.scale;
    out.consistent = out.delta == 0.0 || ((out.delta > 0.0) == out.all_roots_real);
    return out;
}

ReducedModel reduced_matrix(const WaveProfile& profile, double xi, int N, int nodes)
{
    const BlochMatrix M = assemble(profile, xi, N);
    const ProjectorPair pc = projector(M, ProjectorMethod::contour, nodes);
    ReducedModel out;
    out.a = profile.a;
    out.xi = xi;
    out.k = profile.k;
    out.N = N;
    out.projector_deviation = pc.deviation;
    out.idempotency = opnorm(pc.P * pc.P - pc.P);
    out.commutation = opnorm(pc.P * M.T - M.T * pc.P);
    try {
        const ProjectorPair pe = projector(M, ProjectorMethod::eigenbasis);
        out.contour_vs_eigenbasis = opnorm(pc.P - pe.P);
    } catch (const DefectiveCluster&) {
        out.contour_vs_eigenbasis.reset();
    }

    const TransportedBasis tb = transported_basis(pc.P, N);
    out.neumann_terms = tb.neumann_terms;
    out.similarity_error = tb.similarity_error;
    const MatrixXcd& phi = tb.phi;
    const MatrixXcd Tphi = M.T * phi;
    out.B_inner = 2.0 * Tphi.transpose() * phi.conjugate();
    out.gram = 2.0 * phi.transpose() * phi.conjugate();
    out.B_num = out.B_inner * out.gram.inverse();
    out.B_closed = closed_form_matrix(profile.a, xi, profile.k);
    out.error_closed = opnorm3(out.B_num - out.B_closed);
    out.error_closed_transposed = opnorm3(out.B_num.transpose() - out.B_closed);
    out.cubic_num = characteristic_cubic(out.B_num);
    out.cubic_closed = closed_form_cubic(profile.a, xi, profile.k);

    const auto inside = interior_eigenvalues(M, projector_radius(profile.k));
    std::copy(inside.begin(), inside.end(), out.interior.begin());
    Eigen::ComplexEigenSolver<Eigen::Matrix3cd> es(out.B_num, false);
    if (es.info() != Eigen::Success) throw EigenFailure("reduced_matrix: 3x3 eigenproblem failed");
    for (int i = 0; i < 3; ++i) out.b_eigenvalues[static_cast<std::size_t>(i)] = es.eigenvalues()(i);

    const DiscriminantResult d = discriminant(profile.a, xi, profile.k);
    out.delta = d.delta;
    out.all_roots_real = d.all_roots_real;
    return out;
}

AppendixReport appendix_derivative_checks(double k, int N, double tol)
{
    if (!(k > 0.0)) throw ValidationError("appendix_derivative_checks: k must be positive");
    if (N < 16) throw ValidationError("appendix_derivative_checks: N must be >= 16");
    const int dim = 2 * N + 1;
    const double k2 = k * k;
    const double k4 = k2 * k2;

    NewtonOptions opts;
    opts.truncation = N;
    opts.tol = 1e-15;
    auto T = [&](double a, double xi) -> MatrixXcd {
        WaveProfile p = a == 0.0 ? WaveProfile{FourierSeries(N, true, Parity::even), 0.0, k, k4}
                                 : newton_solve(a, k, opts).profile;
        return assemble(p, xi, N).T;
    };

    MatrixXcd D = MatrixXcd::Zero(dim, dim);
    for (int n = -N; n <= N; ++n) D(n + N, n + N) = Complex(0.0, n);
    auto toeplitz = [&](std::initializer_list<std::pair<int, Complex>> entries) {
        MatrixXcd X = MatrixXcd::Zero(dim, dim);
        for (int m = -N; m <= N; ++m)
            for (const auto& [d, c] : entries)
                if (std::abs(m - d) <= N) X(m + N, m - d + N) += c;
        return X;
    };
    const MatrixXcd Id = MatrixXcd::Identity(dim, dim);
    const MatrixXcd C1 = toeplitz({{1, 0.5}, {-1, 0.5}});
    const MatrixXcd S1 = toeplitz({{1, Complex(0.0, -0.5)}, {-1, Complex(0.0, 0.5)}});
    const MatrixXcd C2 = toeplitz({{2, 0.5}, {-2, 0.5}});
    const MatrixXcd D2 = D * D;

    const MatrixXcd T1 = -15.0 * k2 * D * C1 * (D2 - Id);
    const MatrixXcd Tdot = I1 * k4 * (Id - 5.0 * D2 * D2);
    const MatrixXcd Tdot1 = -15.0 * I1 * k2 * (3.0 * C1 * D2 - 2.0 * S1 * D - C1);
    const MatrixXcd T2 = 7.5 * D * (11.0 * Id + 15.0 * D2 - C2 * (D2 - Id));
    const MatrixXcd Tddot = 10.0 * k4 * D2 * D;

    const MatrixXcd T00 = T(0.0, 0.0);
    using Quotient = std::function<MatrixXcd(double)>;
    auto check = [&](const std::string& name, const MatrixXcd& exact, const Quotient& q, double h) {
        const MatrixXcd coarse = q(h);
        const MatrixXcd fine = q(h / 2.0);
        const MatrixXcd rich = (4.0 * fine - coarse) / 3.0;
        const double scale = exact.cwiseAbs().maxCoeff();
        OperatorCheck c{name, (rich - exact).cwiseAbs().maxCoeff() / scale,
                        (fine - exact).cwiseAbs().maxCoeff() / scale, false};
        c.pass = c.error <= tol;
        return c;
    };

    AppendixReport rep;
    rep.derivatives.push_back(check("T'", T1, [&](double h) { return MatrixXcd((T(h, 0) - T(-h, 0)) / (2 * h)); }, 1e-4));
    rep.derivatives.push_back(check("T_xi", Tdot, [&](double h) { return MatrixXcd((T(0, h) - T(0, -h)) / (2 * h)); }, 1e-4));
    rep.derivatives.push_back(check("T'_xi", Tdot1, [&](double h) {
        return MatrixXcd((T(h, h) - T(h, -h) - T(-h, h) + T(-h, -h)) / (4 * h * h));
    }, 1e-3));
    rep.derivatives.push_back(check("T''/2", T2, [&](double h) {
        return MatrixXcd((T(h, 0) - 2.0 * T00 + T(-h, 0)) / (2 * h * h));
    }, 1e-3));
    rep.derivatives.push_back(check("T_xixi/2", Tddot, [&](double h) {
        return MatrixXcd((T(0, h) - 2.0 * T00 + T(0, -h)) / (2 * h * h));
    }, 1e-3));

    // Resolvent of the flat operator on cos(nz), sin(nz).
    double worst = 0.0;
    auto resolvent_case = [&](int n, Complex lambda) {
        const double w = flat_symbol(n, 0.0, k);
        MatrixXcd Z = T00;
        Z.diagonal().array() -= lambda;
        const Eigen::PartialPivLU<MatrixXcd> lu(Z);
        const Complex den = w * w + lambda * lambda;
        const Eigen::VectorXcd rc = lu.solve(cos_mode(N, n, 1.0));
        const Eigen::VectorXcd ec = (-lambda / den) * cos_mode(N, n, 1.0) + (w / den) * sin_mode(N, n, 1.0);
        const Eigen::VectorXcd rs = lu.solve(sin_mode(N, n, 1.0));
        const Eigen::VectorXcd es = (-w / den) * cos_mode(N, n, 1.0) + (-lambda / den) * sin_mode(N, n, 1.0);
        const double scale = std::max(ec.cwiseAbs().maxCoeff(), es.cwiseAbs().maxCoeff());
        worst = std::max(worst, std::max((rc - ec).cwiseAbs().maxCoeff(), (rs - es).cwiseAbs().maxCoeff()) / scale);
    };
    resolvent_case(2, Complex(0.0, 2.0 * k4));
    const double r = projector_radius(k);
    for (int n = 1; n <= 4; ++n)
        for (int j = 0; j < 16; ++j) resolvent_case(n, std::polar(r, 2.0 * std::numbers::pi * (j + 0.5) / 16));
    rep.resolvent_error = worst;

    double flat = 0.0;
    for (int n = 1; n <= N; ++n) {
        const Eigen::VectorXcd got = T00 * cos_mode(N, n, 1.0);
        const Eigen::VectorXcd want = sin_mode(N, n, -flat_symbol(n, 0.0, k));
        flat = std::max(flat, (got - want).cwiseAbs().maxCoeff() / std::max(1.0, want.cwiseAbs().maxCoeff()));
    }
    rep.flat_action_error = flat;

    rep.pass = rep.resolvent_error <= 1e-10 && rep.flat_action_error <= 1e-12;
    for (const auto& c : rep.derivatives) rep.pass = rep.pass && c.pass;
    return rep;
}

Eigen::MatrixXcd basis_at(double a, double xi, double k, int N, BasisKind kind)
{
    const WaveProfile p = stability_profile(a, k, std::min(N, kDefaultProfileOrder));
    const BlochMatrix M = assemble(p, xi, N);
    const MatrixXcd P = projector(M, ProjectorMethod::contour).P;
    if (kind == BasisKind::projected) return P * flat_basis(N);
    return transported_basis(P, N).phi;
}

std::vector<CoefficientCheck> basis_coefficient_checks(double k, int N, double h, BasisKind kind)
{
    const double k2 = k * k;
    const double k4 = k2 * k2;
    auto f = [&](double a, double xi) { return basis_at(a, xi, k, N, kind); };
    const MatrixXcd f00 = f(0.0, 0.0);

    auto rich = [](const MatrixXcd& coarse, const MatrixXcd& fine) -> MatrixXcd { return (4.0 * fine - coarse) / 3.0; };
    auto first_a = [&](double s) -> MatrixXcd { return (f(s, 0) - f(-s, 0)) / (2 * s); };
    auto first_x = [&](double s) -> MatrixXcd { return (f(0, s) - f(0, -s)) / (2 * s); };
    auto second_a = [&](double s) -> MatrixXcd { return (f(s, 0) - 2.0 * f00 + f(-s, 0)) / (2 * s * s); };
    auto second_x = [&](double s) -> MatrixXcd { return (f(0, s) - 2.0 * f00 + f(0, -s)) / (2 * s * s); };
    auto mixed = [&](double s) -> MatrixXcd {
        return (f(s, s) - f(s, -s) - f(-s, s) + f(-s, -s)) / (4 * s * s);
    };

    // Taylor coefficients; columns are the three basis functions.
    const std::vector<std::pair<std::string, MatrixXcd>> numerical = {
        {"a", rich(first_a(h), first_a(h / 2))},
        {"xi", rich(first_x(h), first_x(h / 2))},
        {"a^2", rich(second_a(h), second_a(h / 2))},
        {"a xi", rich(mixed(h), mixed(h / 2))},
        {"xi^2", rich(second_x(h), second_x(h / 2))},
    };

    const int dim = 2 * N + 1;
    auto zero = [&] { return Eigen::VectorXcd::Zero(dim); };
    auto expected = [&](int basis, const std::string& order) -> std::pair<Eigen::VectorXcd, bool> {
        if (basis == 1) {
            if (order == "a") return {cos_mode(N, 2, 1.0 / k2), true};
            if (order == "a^2") return {cos_mode(N, 3, 9.0 / (16 * k4)) + cos_mode(N, 1, -20.0 / (16 * k4)), true};
            if (order == "a xi") return {-I1 * sin_mode(N, 2, 1.0 / k2), true};
        } else if (basis == 2) {
            if (order == "a") return {sin_mode(N, 2, 1.0 / k2), true};
            if (order == "a^2") return {sin_mode(N, 3, 9.0 / (16 * k4)) + sin_mode(N, 1, -20.0 / (16 * k4)), true};
            if (order == "a xi") return {I1 * cos_mode(N, 2, 1.0 / k2), true};
        }
        return {zero(), false};
    };

    std::vector<CoefficientCheck> out;
    for (int b = 1; b <= 3; ++b)
        for (const auto& [order, coef] : numerical) {
            const auto [want, listed] = expected(b, order);
            const Eigen::VectorXcd got = coef.col(b - 1);
            out.push_back({b, order, (got - want).cwiseAbs().maxCoeff(), got.cwiseAbs().maxCoeff(), listed});
        }
    return out;
}

} // namespace cdgsk
