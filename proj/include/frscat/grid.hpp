#pragma once

#include <complex>
#include <vector>

namespace frscat {

using cplx = std::complex<double>;

/// Row-major 2D grid of complex samples; the carrier for every signal,
/// spectrum and frequency-domain filter in the library.
struct ComplexImage {
    int width = 0;
    int height = 0;
    std::vector<cplx> data;

    ComplexImage() = default;
    ComplexImage(int w, int h) : width(w), height(h), data(static_cast<std::size_t>(w) * h) {}

    cplx& at(int row, int col) { return data[static_cast<std::size_t>(row) * width + col]; }
    const cplx& at(int row, int col) const { return data[static_cast<std::size_t>(row) * width + col]; }
    std::size_t size() const { return data.size(); }
    bool same_shape(const ComplexImage& o) const { return width == o.width && height == o.height; }
};

/// Row-major 2D grid of real samples (inputs, modulus outputs, masks of
/// weights). Values produced by modulus() are nonnegative.
struct RealImage {
    int width = 0;
    int height = 0;
    std::vector<double> data;

    RealImage() = default;
    RealImage(int w, int h) : width(w), height(h), data(static_cast<std::size_t>(w) * h, 0.0) {}

    double& at(int row, int col) { return data[static_cast<std::size_t>(row) * width + col]; }
    const double& at(int row, int col) const { return data[static_cast<std::size_t>(row) * width + col]; }
    std::size_t size() const { return data.size(); }
    bool same_shape(const RealImage& o) const { return width == o.width && height == o.height; }
};

/// Pair of fractional orders, one per image axis. Each order alpha maps to
/// the rotation angle theta = alpha*pi/2 and must lie strictly inside (0, 2)
/// so that cot(theta) is defined.
struct FractionalOrderPair {
    double alpha1 = 1.0;  // rows
    double alpha2 = 1.0;  // columns

    void validate() const;
    bool operator==(const FractionalOrderPair&) const = default;
};

/// cot(alpha*pi/2), computed as tan((1-alpha)*pi/2) so that alpha == 1 yields
/// exactly zero. Throws std::invalid_argument outside (0, 2).
double cot_theta(double alpha);

/// Separable two-axis chirp exp(sign*(i/2)*(u1^2 cot(theta1) + u2^2 cot(theta2)))
/// sampled on the dimensionless grid u = (n - N/2)/sqrt(N) per axis (N/2 is
/// the integer floor). Every sample has unit modulus; at alpha = (1,1) the
/// image is exactly all ones.
ComplexImage chirp(int width, int height, const FractionalOrderPair& orders, int sign);

/// Pointwise magnitude. Preserves the L2 norm.
RealImage modulus(const ComplexImage& x);

/// Unitary 2D discrete Fourier transform and its inverse: both scale by
/// 1/sqrt(width*height), so spectra satisfy Parseval and the round trip is
/// the identity. Arbitrary (non power-of-two) sizes are supported.
ComplexImage spectrum(const ComplexImage& x);
ComplexImage inverse_spectrum(const ComplexImage& x);

double norm_sq(const ComplexImage& x);
double norm_sq(const RealImage& x);
double l2_norm(const ComplexImage& x);
double l2_norm(const RealImage& x);

ComplexImage to_complex(const RealImage& x);

/// Pointwise products. Shapes must match.
ComplexImage hadamard(const ComplexImage& a, const ComplexImage& b);
void hadamard_inplace(ComplexImage& a, const ComplexImage& b);
/// chirp * real signal without an intermediate complex copy of the signal.
ComplexImage modulate(const RealImage& x, const ComplexImage& chirp);

bool all_finite(const ComplexImage& x);
bool all_finite(const RealImage& x);

}  // namespace frscat
