#pragma once

// Bloch-Floquet (Hill's method) spectra of the linearization about a wave.
//
// For a Floquet exponent xi the conjugated operator acts on e^{i(n+xi)z} as
//     T = D (c - k^4 D^4 - 15 (k^2 (W D^2 + W_zz) + 3 W2)),  D = diag(i(n+xi)),
// with W, W_zz, W2 the convolution matrices of w, w'' and w^2.

#include "cdgsk/fourier.hpp"
#include "cdgsk/profile.hpp"

#include <Eigen/Dense>

#include <span>
#include <string>
#include <vector>

namespace cdgsk {

inline constexpr int kDefaultBlochOrder = 64;
inline constexpr double kDefaultStabilityTol = 1e-8;

// k^4 (n + xi) (1 - (n + xi)^4)
double flat_symbol(int n, double xi, double k);

// Accepts the closed interval [-1/2, 1/2]; -1/2 is the same Floquet class as 1/2.
void require_floquet_exponent(double xi);

struct BlochMatrix {
    double xi = 0.0;
    int N = 0;
    double a = 0.0;
    double k = 1.0;
    Eigen::MatrixXcd T;

    int index(int n) const noexcept { return n + N; }
    int dim() const noexcept { return 2 * N + 1; }
    // For an even real profile T = i A with A real.
    bool has_real_form() const;
    Eigen::MatrixXd real_form() const;
};

BlochMatrix assemble(const WaveProfile& profile, double xi, int N = kDefaultBlochOrder);

struct SpectrumSlice {
    double xi = 0.0;
    std::vector<Complex> eigenvalues;
};

// All 2N+1 eigenvalues. When `refine` is set and the matrix is not diagonal,
// a tight cluster around the origin is recomputed by a contour-moment method.
SpectrumSlice eigenvalues(const BlochMatrix& M, bool refine = true);

// Eigenvalues of T strictly inside |lambda| < radius, from contour moments
// of the resolvent (probe vectors e_n, |n| <= 3). `expected` is the number of
// enclosed eigenvalues.
std::vector<Complex> cluster_eigenvalues(const BlochMatrix& M, double radius, int expected,
                                         int nodes = 48);

// `points` uniformly spaced values on [-1/2, 1/2]; points must be odd so that
// 0 is included. points == 1 gives {0}.
std::vector<double> floquet_grid(int points);

enum class Verdict { stable, unstable, inconclusive };
std::string to_string(Verdict v);
Verdict classify(double max_re, double tol);

struct StabilityReport {
    double max_re = 0.0;
    double max_abs_re = 0.0;
    double argmax_xi = 0.0;
    Complex argmax_lambda{};
    int grid_points = 0;
    double grid_min = 0.0;
    double grid_max = 0.0;
    int N = 0;
    double tol = kDefaultStabilityTol;
    Verdict verdict = Verdict::stable;
    std::vector<SpectrumSlice> slices; // in grid order
};

// Scans the grid; slices are independent and spread over `workers` threads.
StabilityReport scan(const WaveProfile& profile, std::span<const double> grid,
                     int N = kDefaultBlochOrder, double tol = kDefaultStabilityTol, int workers = 1);

struct Collision {
    double xi = 0.0;
    std::vector<int> modes;
    double omega = 0.0;
};

// Groups of distinct modes |n| <= n_max whose flat symbols agree to
// rel_threshold * k^4 * max(1, |omega| / k^4).
std::vector<Collision> collision_analysis(double k, int n_max, std::span<const double> grid,
                                          double rel_threshold = 1e-8);

// Largest scaled mismatch |image - match| / max(1, |lambda|) over the images
// -conj(lambda) (looked up in `slice`) and conj(lambda), -lambda (looked up in
// `mirror`, the slice at -xi). Greedy one-to-one nearest-neighbour pairing.
double quadfold_mismatch(const SpectrumSlice& slice, const SpectrumSlice& mirror);

} // namespace cdgsk
