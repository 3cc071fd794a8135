#pragma once

// Truncated Fourier series on the 2*pi torus.
//
// A series of order N stores the coefficients c_n, n = -N..N, of
//     f(z) = sum_n c_n exp(i n z),   c_n = (1/2pi) int_0^{2pi} f(z) exp(-i n z) dz.
// Two structural flags are carried explicitly and re-imposed after every
// operation: `real` (c_{-n} = conj(c_n)) and a parity (even: c_{-n} = c_n,
// odd: c_{-n} = -c_n).

#include <complex>
#include <memory>
#include <span>
#include <vector>

namespace cdgsk {

using Complex = std::complex<double>;

enum class Parity { none, even, odd };

class FourierSeries {
public:
    FourierSeries() : FourierSeries(0) {}
    explicit FourierSeries(int order, bool real = true, Parity parity = Parity::none);

    // Validates the requested symmetries (relative tolerance 1e-12) and then
    // imposes them exactly. Throws ValidationError on violation.
    static FourierSeries from_coefficients(std::vector<Complex> coeffs, bool real,
                                           Parity parity = Parity::none);

    static FourierSeries constant(int order, double value);
    // amplitude * cos(mode z) and amplitude * sin(mode z).
    static FourierSeries cosine(int order, int mode, double amplitude);
    static FourierSeries sine(int order, int mode, double amplitude);

    int order() const noexcept { return order_; }
    int size() const noexcept { return 2 * order_ + 1; }
    bool is_real() const noexcept { return real_; }
    Parity parity() const noexcept { return parity_; }
    bool is_even() const noexcept { return parity_ == Parity::even; }

    // Coefficient of exp(i n z); zero outside the stored band.
    Complex operator[](int n) const noexcept;
    // Mutable access; symmetry flags are not re-imposed until `symmetrize`.
    Complex& at(int n);
    std::span<const Complex> coefficients() const noexcept { return coeffs_; }

    Complex evaluate(double z) const;
    double mean() const noexcept { return coeffs_[order_].real(); }

    // Truncates or zero-pads to a new order.
    FourierSeries resized(int order) const;
    // Re-imposes the realness and parity flags exactly.
    void symmetrize();

    FourierSeries& operator+=(const FourierSeries& other);
    FourierSeries& operator-=(const FourierSeries& other);
    FourierSeries& operator*=(double s);

private:
    int order_ = 0;
    bool real_ = true;
    Parity parity_ = Parity::none;
    std::vector<Complex> coeffs_;
};

FourierSeries operator+(FourierSeries lhs, const FourierSeries& rhs);
FourierSeries operator-(FourierSeries lhs, const FourierSeries& rhs);
FourierSeries operator*(double s, FourierSeries f);

FourierSeries differentiate(const FourierSeries& f, int order);

enum class ProductMode {
    truncate, // Galerkin: exact convolution, modes |n| > N dropped
    dealias   // pseudospectral product on a zero-padded grid (3/2 rule)
};

FourierSeries multiply(const FourierSeries& f, const FourierSeries& g,
                       ProductMode mode = ProductMode::truncate);

// Full convolution without truncation; the result has order f.order() + g.order().
FourierSeries convolve_full(const FourierSeries& f, const FourierSeries& g);

// <f, g> = (1/pi) int_0^{2pi} f conj(g) dz = 2 sum_n f_n conj(g_n).
Complex inner_product(const FourierSeries& f, const FourierSeries& g);

// L2 norm induced by inner_product.
double norm(const FourierSeries& f);

// max |f(z)| sampled on a uniform grid (default 8 (2N+1) points).
double sup_norm(const FourierSeries& f, int samples = 0);

// Sum of |c_n|, an upper bound for the sup norm.
double coefficient_l1(const FourierSeries& f);

// Transforms between coefficients of a real series and samples on a uniform
// grid of `grid_size` points z_j = 2 pi j / grid_size. Plans are created once.
class RealGrid {
public:
    RealGrid(int order, int grid_size);
    ~RealGrid();
    RealGrid(const RealGrid&) = delete;
    RealGrid& operator=(const RealGrid&) = delete;
    RealGrid(RealGrid&&) noexcept;
    RealGrid& operator=(RealGrid&&) noexcept;

    int order() const noexcept;
    int grid_size() const noexcept;

    // half: coefficients c_0..c_N (negative modes implied by realness).
    void to_grid(std::span<const Complex> half, std::span<double> samples) const;
    // Writes c_0..c_N, discarding modes above N.
    void from_grid(std::span<const double> samples, std::span<Complex> half) const;

private:
    struct Impl;
    std::unique_ptr<Impl> impl_;
};

} // namespace cdgsk
