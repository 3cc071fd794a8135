#include "cdgsk/fourier.hpp"

#include "cdgsk/errors.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <mutex>
#include <numbers>
#include <string>

namespace cdgsk {

namespace {

// The FFTW planner is not re-entrant.
std::mutex& planner_mutex()
{
    static std::mutex m;
    return m;
}

Parity product_parity(Parity p, Parity q)
{
    if (p == Parity::none || q == Parity::none) return Parity::none;
    return p == q ? Parity::even : Parity::odd;
}

void check_same_order(const FourierSeries& f, const FourierSeries& g, const char* op)
{
    if (f.order() != g.order())
        throw ValidationError(std::string(op) + ": series have different truncation orders ("
                              + std::to_string(f.order()) + " vs " + std::to_string(g.order()) + ")");
}

} // namespace

FourierSeries::FourierSeries(int order, bool real, Parity parity)
    : order_(order), real_(real), parity_(parity)
{
    if (order < 0) throw ValidationError("FourierSeries: negative truncation order");
    coeffs_.assign(static_cast<std::size_t>(2 * order + 1), Complex{});
}

FourierSeries FourierSeries::from_coefficients(std::vector<Complex> coeffs, bool real, Parity parity)
{
    if (coeffs.empty() || coeffs.size() % 2 == 0)
        throw ValidationError("FourierSeries: coefficient count must be odd (2N+1)");
    const int order = static_cast<int>(coeffs.size() / 2);
    FourierSeries f(order, real, parity);
    f.coeffs_ = std::move(coeffs);

    double scale = 0.0;
    for (const auto& c : f.coeffs_) scale = std::max(scale, std::abs(c));
    const double tol = 1e-12 * std::max(scale, 1e-300);
    for (int n = 0; n <= order; ++n) {
        const Complex cp = f[n];
        const Complex cm = f[-n];
        if (real && std::abs(cm - std::conj(cp)) > tol)
            throw ValidationError("FourierSeries: realness violated at mode " + std::to_string(n));
        if (parity == Parity::even && std::abs(cm - cp) > tol)
            throw ValidationError("FourierSeries: evenness violated at mode " + std::to_string(n));
        if (parity == Parity::odd && std::abs(cm + cp) > tol)
            throw ValidationError("FourierSeries: oddness violated at mode " + std::to_string(n));
    }
    f.symmetrize();
    return f;
}

FourierSeries FourierSeries::constant(int order, double value)
{
    FourierSeries f(order, true, Parity::even);
    f.coeffs_[order] = value;
    return f;
}

FourierSeries FourierSeries::cosine(int order, int mode, double amplitude)
{
    FourierSeries f(order, true, Parity::even);
    if (mode == 0) {
        f.coeffs_[order] = amplitude;
    } else if (std::abs(mode) <= order) {
        f.at(mode) += 0.5 * amplitude;
        f.at(-mode) += 0.5 * amplitude;
    }
    return f;
}

FourierSeries FourierSeries::sine(int order, int mode, double amplitude)
{
    FourierSeries f(order, true, Parity::odd);
    if (mode != 0 && std::abs(mode) <= order) {
        // sin(mz) = (e^{imz} - e^{-imz}) / 2i
        f.at(mode) += Complex(0.0, -0.5 * amplitude);
        f.at(-mode) += Complex(0.0, 0.5 * amplitude);
    }
    return f;
}

Complex FourierSeries::operator[](int n) const noexcept
{
    if (n < -order_ || n > order_) return {};
    return coeffs_[static_cast<std::size_t>(n + order_)];
}

Complex& FourierSeries::at(int n)
{
    if (n < -order_ || n > order_)
        throw ValidationError("FourierSeries::at: mode " + std::to_string(n) + " outside band");
    return coeffs_[static_cast<std::size_t>(n + order_)];
}

Complex FourierSeries::evaluate(double z) const
{
    // Real series: c_0 + 2 Re sum_{n>0} c_n e^{inz}.
    if (real_) {
        double sum = coeffs_[order_].real();
        for (int n = 1; n <= order_; ++n)
            sum += 2.0 * ((*this)[n] * std::polar(1.0, n * z)).real();
        return sum;
    }
    Complex sum{};
    for (int n = -order_; n <= order_; ++n) sum += (*this)[n] * std::polar(1.0, n * z);
    return sum;
}

FourierSeries FourierSeries::resized(int order) const
{
    FourierSeries g(order, real_, parity_);
    const int m = std::min(order, order_);
    for (int n = -m; n <= m; ++n) g.at(n) = (*this)[n];
    return g;
}

void FourierSeries::symmetrize()
{
    for (int n = 0; n <= order_; ++n) {
        Complex& cp = coeffs_[static_cast<std::size_t>(order_ + n)];
        Complex& cm = coeffs_[static_cast<std::size_t>(order_ - n)];
        if (real_) {
            const Complex avg = 0.5 * (cp + std::conj(cm));
            cp = avg;
            cm = std::conj(avg);
        }
        if (parity_ == Parity::even) {
            const Complex avg = 0.5 * (cp + cm);
            cp = cm = avg;
        } else if (parity_ == Parity::odd) {
            const Complex avg = 0.5 * (cp - cm);
            cp = avg;
            cm = -avg;
        }
    }
}

FourierSeries& FourierSeries::operator+=(const FourierSeries& other)
{
    check_same_order(*this, other, "operator+=");
    for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] += other.coeffs_[i];
    real_ = real_ && other.real_;
    if (parity_ != other.parity_) parity_ = Parity::none;
    symmetrize();
    return *this;
}

FourierSeries& FourierSeries::operator-=(const FourierSeries& other)
{
    check_same_order(*this, other, "operator-=");
    for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] -= other.coeffs_[i];
    real_ = real_ && other.real_;
    if (parity_ != other.parity_) parity_ = Parity::none;
    symmetrize();
    return *this;
}

FourierSeries& FourierSeries::operator*=(double s)
{
    for (auto& c : coeffs_) c *= s;
    return *this;
}

FourierSeries operator+(FourierSeries lhs, const FourierSeries& rhs) { return lhs += rhs; }
FourierSeries operator-(FourierSeries lhs, const FourierSeries& rhs) { return lhs -= rhs; }
FourierSeries operator*(double s, FourierSeries f) { return f *= s; }

FourierSeries differentiate(const FourierSeries& f, int order)
{
    if (order < 1) throw ValidationError("differentiate: order must be >= 1");
    Parity parity = f.parity();
    if (order % 2 == 1 && parity != Parity::none)
        parity = parity == Parity::even ? Parity::odd : Parity::even;
    FourierSeries g(f.order(), f.is_real(), parity);
    for (int n = -f.order(); n <= f.order(); ++n) {
        Complex factor = 1.0;
        for (int j = 0; j < order; ++j) factor *= Complex(0.0, n);
        g.at(n) = factor * f[n];
    }
    g.symmetrize();
    return g;
}

FourierSeries convolve_full(const FourierSeries& f, const FourierSeries& g)
{
    const int order = f.order() + g.order();
    FourierSeries h(order, f.is_real() && g.is_real(), product_parity(f.parity(), g.parity()));
    for (int m = -f.order(); m <= f.order(); ++m) {
        const Complex fm = f[m];
        if (fm == Complex{}) continue;
        for (int n = -g.order(); n <= g.order(); ++n) h.at(m + n) += fm * g[n];
    }
    h.symmetrize();
    return h;
}

namespace {

FourierSeries multiply_truncate(const FourierSeries& f, const FourierSeries& g)
{
    const int order = f.order();
    FourierSeries h(order, f.is_real() && g.is_real(), product_parity(f.parity(), g.parity()));
    for (int m = -order; m <= order; ++m) {
        Complex sum{};
        const int lo = std::max(-order, m - order);
        const int hi = std::min(order, m + order);
        for (int n = lo; n <= hi; ++n) sum += f[n] * g[m - n];
        h.at(m) = sum;
    }
    h.symmetrize();
    return h;
}

// Real and imaginary parts of a general series as real series.
std::pair<FourierSeries, FourierSeries> split_real_imag(const FourierSeries& f)
{
    FourierSeries re(f.order(), true), im(f.order(), true);
    for (int n = -f.order(); n <= f.order(); ++n) {
        re.at(n) = 0.5 * (f[n] + std::conj(f[-n]));
        im.at(n) = Complex(0.0, -0.5) * (f[n] - std::conj(f[-n]));
    }
    return {re, im};
}

FourierSeries multiply_dealias_real(const FourierSeries& f, const FourierSeries& g, const RealGrid& grid)
{
    const int order = f.order();
    std::vector<double> fs(static_cast<std::size_t>(grid.grid_size()));
    std::vector<double> gs(fs.size());
    grid.to_grid(f.coefficients().subspan(static_cast<std::size_t>(order)), fs);
    grid.to_grid(g.coefficients().subspan(static_cast<std::size_t>(order)), gs);
    for (std::size_t j = 0; j < fs.size(); ++j) fs[j] *= gs[j];
    std::vector<Complex> half(static_cast<std::size_t>(order + 1));
    grid.from_grid(fs, half);
    FourierSeries h(order, true, product_parity(f.parity(), g.parity()));
    for (int n = 0; n <= order; ++n) {
        h.at(n) = half[static_cast<std::size_t>(n)];
        h.at(-n) = std::conj(half[static_cast<std::size_t>(n)]);
    }
    h.symmetrize();
    return h;
}

FourierSeries multiply_dealias(const FourierSeries& f, const FourierSeries& g)
{
    const int order = f.order();
    const int padded = (3 * order + 1) / 2; // ceil(3N/2)
    RealGrid grid(order, 2 * padded + 1);
    if (f.is_real() && g.is_real()) return multiply_dealias_real(f, g, grid);

    auto [fr, fi] = split_real_imag(f);
    auto [gr, gi] = split_real_imag(g);
    const FourierSeries re = multiply_dealias_real(fr, gr, grid) - multiply_dealias_real(fi, gi, grid);
    const FourierSeries im = multiply_dealias_real(fr, gi, grid) + multiply_dealias_real(fi, gr, grid);
    FourierSeries h(order, false, product_parity(f.parity(), g.parity()));
    for (int n = -order; n <= order; ++n) h.at(n) = re[n] + Complex(0.0, 1.0) * im[n];
    h.symmetrize();
    return h;
}

} // namespace

FourierSeries multiply(const FourierSeries& f, const FourierSeries& g, ProductMode mode)
{
    check_same_order(f, g, "multiply");
    return mode == ProductMode::truncate ? multiply_truncate(f, g) : multiply_dealias(f, g);
}

Complex inner_product(const FourierSeries& f, const FourierSeries& g)
{
    check_same_order(f, g, "inner_product");
    Complex sum{};
    for (int n = -f.order(); n <= f.order(); ++n) sum += f[n] * std::conj(g[n]);
    return 2.0 * sum;
}

double norm(const FourierSeries& f) { return std::sqrt(inner_product(f, f).real()); }

double sup_norm(const FourierSeries& f, int samples)
{
    if (samples <= 0) samples = 8 * f.size();
    double best = 0.0;
    for (int j = 0; j < samples; ++j) {
        const double z = 2.0 * std::numbers::pi * j / samples;
        best = std::max(best, std::abs(f.evaluate(z)));
    }
    return best;
}

double coefficient_l1(const FourierSeries& f)
{
    double sum = 0.0;
    for (const auto& c : f.coefficients()) sum += std::abs(c);
    return sum;
}

// ---------------------------------------------------------------------------

struct RealGrid::Impl {
    int order;
    int size;
    double* samples;
    fftw_complex* spectrum;
    fftw_plan forward;
    fftw_plan backward;

    ~Impl()
    {
        std::lock_guard lock(planner_mutex());
        fftw_destroy_plan(forward);
        fftw_destroy_plan(backward);
        fftw_free(samples);
        fftw_free(spectrum);
    }
};

RealGrid::RealGrid(int order, int grid_size) : impl_(std::make_unique<Impl>())
{
    if (grid_size < 2 * order + 1)
        throw ValidationError("RealGrid: grid too small for the requested band");
    impl_->order = order;
    impl_->size = grid_size;
    const int nspec = grid_size / 2 + 1;
    std::lock_guard lock(planner_mutex());
    impl_->samples = fftw_alloc_real(static_cast<std::size_t>(grid_size));
    impl_->spectrum = fftw_alloc_complex(static_cast<std::size_t>(nspec));
    impl_->forward = fftw_plan_dft_r2c_1d(grid_size, impl_->samples, impl_->spectrum, FFTW_ESTIMATE);
    impl_->backward = fftw_plan_dft_c2r_1d(grid_size, impl_->spectrum, impl_->samples, FFTW_ESTIMATE);
}

RealGrid::~RealGrid() = default;

RealGrid::RealGrid(RealGrid&&) noexcept = default;
RealGrid& RealGrid::operator=(RealGrid&&) noexcept = default;

int RealGrid::order() const noexcept { return impl_->order; }
int RealGrid::grid_size() const noexcept { return impl_->size; }

void RealGrid::to_grid(std::span<const Complex> half, std::span<double> samples) const
{
    const int nspec = impl_->size / 2 + 1;
    for (int n = 0; n < nspec; ++n) {
        const Complex c = n < static_cast<int>(half.size()) && n <= impl_->order ? half[static_cast<std::size_t>(n)] : Complex{};
        impl_->spectrum[n][0] = c.real();
        impl_->spectrum[n][1] = c.imag();
    }
    // A Nyquist mode (even grid) must be real for a real signal.
    if (impl_->size % 2 == 0) impl_->spectrum[nspec - 1][1] = 0.0;
    fftw_execute(impl_->backward);
    std::copy_n(impl_->samples, impl_->size, samples.begin());
}

void RealGrid::from_grid(std::span<const double> samples, std::span<Complex> half) const
{
    std::copy_n(samples.begin(), impl_->size, impl_->samples);
    fftw_execute(impl_->forward);
    const double inv = 1.0 / impl_->size;
    const int nspec = impl_->size / 2 + 1;
    for (int n = 0; n < static_cast<int>(half.size()); ++n) {
        half[static_cast<std::size_t>(n)] =
            n < nspec && n <= impl_->order ? Complex(impl_->spectrum[n][0], impl_->spectrum[n][1]) * inv : Complex{};
    }
    half[0] = Complex(half[0].real(), 0.0);
}

} // namespace cdgsk
