#pragma once

// Reduction of the Bloch operator to the three-dimensional spectral subspace
// near the origin: Riesz projector, transformation-operator basis, the 3x3
// matrix with its characteristic cubic, and the closed forms they are
// compared against.

#include "cdgsk/bloch.hpp"
#include "cdgsk/profile.hpp"

#include <Eigen/Dense>

#include <array>
#include <optional>
#include <string>
#include <vector>

namespace cdgsk {

inline constexpr int kDefaultReducedOrder = 32;
inline constexpr int kDefaultContourNodes = 64;

enum class ProjectorMethod { contour, eigenbasis };
std::string to_string(ProjectorMethod m);

struct ProjectorPair {
    Eigen::MatrixXcd P;
    ProjectorMethod method = ProjectorMethod::contour;
    double deviation = 0.0;         // ||P - P00||_2
    int nodes = 0;                  // contour nodes actually used
    double quadrature_change = 0.0; // ||P(2M) - P(M)||_2 at the accepted level
};

// Orthogonal projector onto the modes n = -1, 0, 1.
Eigen::MatrixXcd flat_projector(int N);

// Columns: cos z, sin z, 1/sqrt(2) in mode space.
Eigen::MatrixXcd flat_basis(int N);

// Radius of the enclosing circle, R/3 with R = 5 k^4.
double projector_radius(double k);

// Contour: trapezoidal rule on |lambda| = R/3, nodes doubled (up to 4 times)
// until the change is <= 1e-8; QuadratureStall otherwise.
// Eigenbasis: sum of eigenprojections from inverse-iteration eigenvectors;
// DefectiveCluster when the interior eigenvalues are (nearly) defective.
// WrongRank unless exactly three eigenvalues lie inside the circle.
ProjectorPair projector(const BlochMatrix& M, ProjectorMethod method, int nodes = kDefaultContourNodes);

struct TransportedBasis {
    Eigen::MatrixXcd phi;            // dim x 3
    int neumann_terms = 0;           // powers of (P - P00)^2 summed
    double similarity_error = 0.0;   // ||U P00 U^{-1} - P||_2
    double deviation = 0.0;          // ||P - P00||_2
};

// phi_i = (I - E^2)^{-1/2} P e_i with E = P - P00, the inverse square root
// summed as a binomial series (at least through E^4, until the remainder
// bound drops below 1e-15). NotAPerturbation if ||E|| >= 1/2.
TransportedBasis transported_basis(const Eigen::MatrixXcd& P, int N);

using Cubic = std::array<Complex, 3>; // coefficients of lambda^2, lambda, 1 in -lambda^3 + ...

struct ReducedModel {
    double a = 0.0;
    double xi = 0.0;
    double k = 1.0;
    int N = 0;
    Eigen::Matrix3cd B_inner;  // <T phi_i, phi_j>
    Eigen::Matrix3cd gram;     // <phi_i, phi_j>
    Eigen::Matrix3cd B_num;    // T phi_i = sum_j B_num(i, j) phi_j, i.e. B_inner * gram^{-1}
    Eigen::Matrix3cd B_closed;
    Cubic cubic_num{};
    Cubic cubic_closed{};
    std::array<Complex, 3> interior{}; // eigenvalues of the full matrix inside |lambda| < R/3
    std::array<Complex, 3> b_eigenvalues{};
    double error_closed = 0.0;            // ||B_num - B_closed||_2
    double error_closed_transposed = 0.0; // ||B_num^T - B_closed||_2
    double projector_deviation = 0.0;
    double idempotency = 0.0;
    double commutation = 0.0;
    std::optional<double> contour_vs_eigenbasis; // empty when the cluster is defective
    int neumann_terms = 0;
    double similarity_error = 0.0;
    double delta = 0.0;
    bool all_roots_real = false;
};

Eigen::Matrix3cd closed_form_matrix(double a, double xi, double k);

// Coefficients of det(B - lambda I) = -lambda^3 + c2 lambda^2 + c1 lambda + c0.
Cubic characteristic_cubic(const Eigen::Matrix3cd& B);
Cubic closed_form_cubic(double a, double xi, double k);
std::array<Complex, 3> cubic_roots(const Cubic& c);

// min over pairings of max |x_i - y_pi(i)|.
double root_set_distance(const std::array<Complex, 3>& x, const std::array<Complex, 3>& y);

ReducedModel reduced_matrix(const WaveProfile& profile, double xi, int N = kDefaultReducedOrder,
                            int nodes = kDefaultContourNodes);

// Real cubic obtained with lambda = i mu: mu^3 + q2 mu^2 + q1 mu + q0.
std::array<double, 3> real_cubic(double a, double xi, double k);

struct DiscriminantResult {
    double delta = 0.0;          // closed form
    double delta_generic = 0.0;  // 18bcd - 4b^3 d + b^2 c^2 - 4c^3 - 27d^2 of the same cubic
    double leading = 0.0;        // 15625 k^12 xi^6 * 16 k^8 (3a^2 + k^4 xi^2)
    std::array<Complex, 3> roots{};
    double max_imag = 0.0;
    double scale = 0.0;
    bool all_roots_real = false;
    bool consistent = false;     // sign of delta agrees with root reality
};

DiscriminantResult discriminant(double a, double xi, double k);

struct OperatorCheck {
    std::string name;
    double error = 0.0;     // max-entry error relative to the largest closed-form entry
    double error_coarse = 0.0; // same without Richardson extrapolation
    bool pass = false;
};

struct AppendixReport {
    std::vector<OperatorCheck> derivatives;
    double resolvent_error = 0.0;
    double flat_action_error = 0.0;
    bool pass = false;
};

// Difference quotients of the assembled matrix at (a, xi) = (0, 0) against
// the closed-form Taylor coefficients, and the resolvent of the flat operator
// on cos(nz), sin(nz).
AppendixReport appendix_derivative_checks(double k, int N = 16, double tol = 1e-6);

struct CoefficientCheck {
    int basis = 0;         // 1, 2, 3
    std::string order;     // "a", "xi", "a^2", "a xi", "xi^2"
    double error = 0.0;    // max |numerical - expected| over modes
    double magnitude = 0.0; // max |numerical|
    bool listed = false;   // nonzero expected value
};

// transported: (I - E^2)^{-1/2} P e_i.  projected: P e_i only (diagnostic).
enum class BasisKind { transported, projected };

// Basis at (a, xi) built from the contour projector.
Eigen::MatrixXcd basis_at(double a, double xi, double k, int N = kDefaultReducedOrder,
                          BasisKind kind = BasisKind::transported);

// Taylor coefficients of the basis at (0, 0) from Richardson-extrapolated
// difference quotients with step h.
std::vector<CoefficientCheck> basis_coefficient_checks(double k, int N = kDefaultReducedOrder, double h = 1e-2,
                                                       BasisKind kind = BasisKind::transported);

} // namespace cdgsk
