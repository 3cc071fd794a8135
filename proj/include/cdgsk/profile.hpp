#pragma once

// Small-amplitude periodic traveling waves u(x,t) = w(k(x - ct)).
//
// w is 2*pi-periodic, even and real, and satisfies the once-integrated
// profile equation (zero integration constant)
//     k^4 w'''' - c w + 15 k^2 w w'' + 15 w^3 = 0.
// The amplitude a is pinned as the exact coefficient of cos(z) in w.

#include "cdgsk/fourier.hpp"

#include <optional>
#include <span>
#include <vector>

namespace cdgsk {

struct WaveProfile {
    FourierSeries w;
    double a = 0.0;
    double k = 1.0;
    double c = 1.0;
};

inline constexpr int kDefaultProfileOrder = 32;

// Closed-form expansion through O(a^order), order in {1, 2, 3}:
//   w = a cos z + a^2 (-15/(2k^2) + cos 2z/(2k^2)) + a^3 (3/(16k^4)) cos 3z,
//   c = k^4 + 105 a^2 (the a^2 term is included for order >= 2).
WaveProfile asymptotic_profile(double a, double k, int order, int truncation = kDefaultProfileOrder);

// k^4 w'''' - c w + 15 k^2 w w'' + 15 w^3, Galerkin-truncated to the order of w.
FourierSeries residual(const WaveProfile& p);

// Sup norm of the residual sampled on a fine grid.
double residual_norm(const WaveProfile& p);

struct NewtonOptions {
    int truncation = kDefaultProfileOrder;
    double tol = 1e-12;
    int max_iterations = 25;
};

struct NewtonResult {
    WaveProfile profile;
    int iterations = 0;
    double residual_norm = 0.0;
    // |w_N| / max_n |w_n|; geometric decay of the tail makes this tiny.
    double tail_ratio = 0.0;
};

// Fourier-Galerkin Newton iteration in the cosine subspace. Unknowns are the
// coefficients w_0..w_N and c; equations are the residual modes 0..N plus the
// amplitude constraint. Throws NonConvergence or SingularJacobian.
NewtonResult newton_solve(double a, double k, const NewtonOptions& options = {},
                          const std::optional<WaveProfile>& guess = std::nullopt);

// Natural continuation from a = 0 in steps of `step`, each solve seeded with
// the previous solution.
NewtonResult continue_branch(double a, double k, const NewtonOptions& options = {}, double step = 0.01);

// Profile used to build linearized operators: order-3 asymptotics for
// |a| <= 1e-3, a converged Newton solution otherwise.
WaveProfile stability_profile(double a, double k, int truncation = kDefaultProfileOrder);

struct SpeedSample {
    double a;
    double c;
};

struct SpeedFit {
    double c0 = 0.0;
    double c2 = 0.0;
    double c4 = 0.0;
    int terms = 3; // even powers fitted, 3..5
};

// Least-squares fit of c(a) in even powers of a: c0 + c2 a^2 + c4 a^4, plus
// a^6 and a^8 terms when there are enough distinct amplitudes (m distinct
// values give min(5, max(3, m - 1)) terms). Requires at least four distinct
// |a| values, all with |a| <= 0.02.
SpeedFit fit_speed_coefficients(std::span<const SpeedSample> samples, double k);

} // namespace cdgsk
