#pragma once

// Pseudospectral time stepping of the PDE in the frame z = k(x - ct):
//     u_t = c k u_z - k^5 u_zzzzz - 15 k d/dz (k^2 u u_zz + u^3).
// The linear part is integrated exactly; the nonlinear part by fourth-order
// exponential time differencing (Cox-Matthews ETDRK4). Products are formed on a grid of at least 4N+1 points so the
// cubic term is alias-free.

#include "cdgsk/fourier.hpp"
#include "cdgsk/profile.hpp"

#include <cstdint>
#include <optional>
#include <vector>

namespace cdgsk {

inline constexpr int kDefaultEvolveOrder = 128;
inline constexpr double kDefaultEvolveStep = 1e-4;

struct EvolutionState {
    FourierSeries u;
    double t = 0.0;
    double c = 1.0;
    double k = 1.0;
};

class Integrator {
public:
    // Blow-up is declared once sup |u| exceeds `blowup_factor` times the
    // reference set by `reset_reference` (or the first step taken).
    Integrator(double k, double c, int N, double blowup_factor = 1e3);
    Integrator(const Integrator&) = delete;
    Integrator& operator=(const Integrator&) = delete;
    Integrator(Integrator&&) noexcept = default;
    Integrator& operator=(Integrator&&) noexcept = default;

    int order() const noexcept { return N_; }
    int grid_size() const noexcept { return grid_.grid_size(); }
    double k() const noexcept { return k_; }
    double c() const noexcept { return c_; }

    // Advances by dt in place. Throws BlowUp.
    void step(EvolutionState& s, double dt);
    void advance(EvolutionState& s, double dt, long steps);

    double sup_norm(const FourierSeries& u) const;
    void reset_reference(double sup) { reference_ = sup; }

private:
    using Half = std::vector<Complex>;
    void nonlinear(const Half& u, Half& out);
    void prepare(double dt);

    double k_, c_;
    int N_;
    double blowup_factor_;
    double reference_ = -1.0;
    RealGrid grid_;
    double cached_dt_ = -1.0;
    Half E_, E2_, Q_, f1_, f2_, f3_;
    Half k1_, k2_, k3_, k4_, tmp_;
    std::vector<double> ug_, uzzg_;
    Half uzz_;
};

// One step with a freshly built integrator. Convenient, not fast.
EvolutionState step(const EvolutionState& s, double dt);

// Reproducible perturbation: modes 1..4 with coefficients drawn from a seeded
// 64-bit Mersenne twister, zero mean, unit norm.
FourierSeries random_perturbation(int N, std::uint64_t seed);

// min over shifts s of || u - w(. - s) ||, searched on 512 samples and refined
// by a parabola through the best sample and its neighbours.
double distance_mod_translation(const FourierSeries& u, const FourierSeries& w);

struct GrowthOptions {
    std::uint64_t seed = 7;
    double epsilon = 1e-5;
    double T = 50.0;
    double dt = kDefaultEvolveStep;
    int N = kDefaultEvolveOrder;
    double sample_interval = 0.1;
    // Replaces the random direction (normalized to unit norm) when set.
    std::optional<FourierSeries> direction;
};

struct GrowthSample {
    double t;
    double distance;
    double sup;
    double mean_drift;
};

struct GrowthRecord {
    std::vector<GrowthSample> series;
    double d0 = 0.0;
    double max_distance = 0.0;
    std::optional<double> growth_factor; // max d(t)/d(0); empty when d(0) = 0
    double max_mean_drift = 0.0;
    long steps = 0;
};

GrowthRecord perturbation_growth(const WaveProfile& profile, const GrowthOptions& options);

struct DtStudyRow {
    double dt;
    double error;                // sup-norm distance to the reference at time T
    std::optional<double> ratio; // error(previous row) / error(this row)
};

// Terminal-state errors for dt0, dt0/2, dt0/4 against a dt0/32 reference.
std::vector<DtStudyRow> dt_study(const WaveProfile& profile, const GrowthOptions& options, double dt0, double T);

} // namespace cdgsk
