#include "frscat/grid.hpp"

#include <cmath>
#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <numbers>
#include <stdexcept>
#include <string>

#include "frscat/errors.hpp"

namespace frscat {

namespace {

constexpr double kPi = std::numbers::pi;

bool is_pow2(std::size_t n) { return n != 0 && (n & (n - 1)) == 0; }

std::size_t next_pow2(std::size_t n) {
    std::size_t m = 1;
    while (m < n) m <<= 1;
    return m;
}

// Raw (unnormalized) forward DFT of one dimension. Power-of-two sizes take
// the iterative radix-2 path; everything else goes through Bluestein's chirp
// reindexing on a padded power-of-two grid.
struct Fft1d {
    std::size_t n = 0;
    bool pow2 = false;

    // radix-2 tables
    std::vector<std::uint32_t> rev;
    std::vector<cplx> roots;  // exp(-2*pi*i*k/n), k < n/2

    // bluestein tables
    std::size_t m = 0;                  // padded size (power of two)
    std::shared_ptr<const Fft1d> sub;   // FFT of size m
    std::vector<cplx> w;                // exp(-pi*i*k^2/n), k < n
    std::vector<cplx> b_hat;            // forward FFT of the matching chirp kernel

    explicit Fft1d(std::size_t size);
    void forward(std::vector<cplx>& a) const;
    void transform(std::vector<cplx>& a, bool inverse) const;

private:
    void forward_pow2(std::vector<cplx>& a) const;
    void forward_bluestein(std::vector<cplx>& a) const;
};

std::shared_ptr<const Fft1d> plan_for(std::size_t n) {
    static std::mutex mu;
    static std::map<std::size_t, std::shared_ptr<const Fft1d>> cache;
    {
        std::lock_guard<std::mutex> lock(mu);
        auto it = cache.find(n);
        if (it != cache.end()) return it->second;
    }
    // built outside the lock: the constructor recurses into plan_for for the
    // padded Bluestein size
    auto plan = std::make_shared<const Fft1d>(n);
    std::lock_guard<std::mutex> lock(mu);
    auto [it, inserted] = cache.emplace(n, std::move(plan));
    (void)inserted;
    return it->second;
}

Fft1d::Fft1d(std::size_t size) : n(size), pow2(is_pow2(size)) {
    if (n == 0) throw std::invalid_argument("fft size must be positive");
    if (pow2) {
        rev.resize(n);
        std::uint32_t bits = 0;
        while ((std::size_t{1} << bits) < n) ++bits;
        for (std::size_t i = 0; i < n; ++i) {
            std::uint32_t r = 0;
            for (std::uint32_t b = 0; b < bits; ++b)
                if (i & (std::size_t{1} << b)) r |= std::uint32_t{1} << (bits - 1 - b);
            rev[i] = r;
        }
        roots.resize(n / 2);
        for (std::size_t k = 0; k < n / 2; ++k) {
            double ang = -2.0 * kPi * static_cast<double>(k) / static_cast<double>(n);
            roots[k] = cplx(std::cos(ang), std::sin(ang));
        }
        return;
    }
    m = next_pow2(2 * n - 1);
    sub = plan_for(m);
    w.resize(n);
    for (std::size_t k = 0; k < n; ++k) {
        // k^2 mod 2n keeps the chirp argument small and exact.
        std::size_t q = (k * k) % (2 * n);
        double ang = -kPi * static_cast<double>(q) / static_cast<double>(n);
        w[k] = cplx(std::cos(ang), std::sin(ang));
    }
    std::vector<cplx> b(m, cplx(0.0, 0.0));
    b[0] = std::conj(w[0]);
    for (std::size_t k = 1; k < n; ++k) {
        b[k] = std::conj(w[k]);
        b[m - k] = std::conj(w[k]);
    }
    sub->forward(b);
    b_hat = std::move(b);
}

void Fft1d::forward_pow2(std::vector<cplx>& a) const {
    for (std::size_t i = 0; i < n; ++i) {
        std::size_t j = rev[i];
        if (i < j) std::swap(a[i], a[j]);
    }
    for (std::size_t len = 2; len <= n; len <<= 1) {
        std::size_t stride = n / len;
        for (std::size_t blk = 0; blk < n; blk += len) {
            for (std::size_t j = 0; j < len / 2; ++j) {
                cplx wj = roots[j * stride];
                cplx u = a[blk + j];
                cplx v = a[blk + j + len / 2] * wj;
                a[blk + j] = u + v;
                a[blk + j + len / 2] = u - v;
            }
        }
    }
}

void Fft1d::forward_bluestein(std::vector<cplx>& a) const {
    std::vector<cplx> f(m, cplx(0.0, 0.0));
    for (std::size_t k = 0; k < n; ++k) f[k] = a[k] * w[k];
    sub->forward(f);
    for (std::size_t k = 0; k < m; ++k) f[k] *= b_hat[k];
    // inverse FFT of size m via conjugation
    for (auto& z : f) z = std::conj(z);
    sub->forward(f);
    double inv_m = 1.0 / static_cast<double>(m);
    for (std::size_t k = 0; k < n; ++k) a[k] = std::conj(f[k]) * inv_m * w[k];
}

void Fft1d::forward(std::vector<cplx>& a) const {
    if (pow2) forward_pow2(a);
    else forward_bluestein(a);
}

void Fft1d::transform(std::vector<cplx>& a, bool inverse) const {
    if (!inverse) {
        forward(a);
        return;
    }
    for (auto& z : a) z = std::conj(z);
    forward(a);
    for (auto& z : a) z = std::conj(z);
}

ComplexImage dft_2d(const ComplexImage& x, bool inverse) {
    if (x.width < 1 || x.height < 1)
        throw std::invalid_argument("spectrum: image must be non-empty");
    ComplexImage out = x;
    auto row_plan = plan_for(static_cast<std::size_t>(x.width));
    auto col_plan = plan_for(static_cast<std::size_t>(x.height));

    std::vector<cplx> buf(static_cast<std::size_t>(std::max(x.width, x.height)));
    for (int r = 0; r < x.height; ++r) {
        buf.assign(out.data.begin() + static_cast<std::size_t>(r) * x.width,
                   out.data.begin() + static_cast<std::size_t>(r + 1) * x.width);
        row_plan->transform(buf, inverse);
        std::copy(buf.begin(), buf.end(), out.data.begin() + static_cast<std::size_t>(r) * x.width);
    }
    std::vector<cplx> col(static_cast<std::size_t>(x.height));
    for (int c = 0; c < x.width; ++c) {
        for (int r = 0; r < x.height; ++r) col[static_cast<std::size_t>(r)] = out.at(r, c);
        col_plan->transform(col, inverse);
        for (int r = 0; r < x.height; ++r) out.at(r, c) = col[static_cast<std::size_t>(r)];
    }
    double scale = 1.0 / std::sqrt(static_cast<double>(x.width) * static_cast<double>(x.height));
    for (auto& z : out.data) z *= scale;
    return out;
}

}  // namespace

void FractionalOrderPair::validate() const {
    auto check = [](double a, const char* name) {
        if (!(a > 0.0 && a < 2.0))
            throw std::invalid_argument(std::string("fractional order ") + name +
                                        " must lie strictly in (0, 2), got " + std::to_string(a));
    };
    check(alpha1, "alpha1");
    check(alpha2, "alpha2");
}

double cot_theta(double alpha) {
    if (!(alpha > 0.0 && alpha < 2.0))
        throw std::invalid_argument("fractional order must lie strictly in (0, 2), got " +
                                    std::to_string(alpha));
    return std::tan((1.0 - alpha) * (kPi / 2.0));
}

ComplexImage chirp(int width, int height, const FractionalOrderPair& orders, int sign) {
    if (width < 1 || height < 1) throw std::invalid_argument("chirp: grid must be at least 1x1");
    if (sign != 1 && sign != -1) throw std::invalid_argument("chirp: sign must be +1 or -1");
    orders.validate();
    double c1 = cot_theta(orders.alpha1);
    double c2 = cot_theta(orders.alpha2);

    std::vector<double> row_phase(static_cast<std::size_t>(height));
    std::vector<double> col_phase(static_cast<std::size_t>(width));
    double inv_h = 1.0 / std::sqrt(static_cast<double>(height));
    double inv_w = 1.0 / std::sqrt(static_cast<double>(width));
    for (int r = 0; r < height; ++r) {
        double u = static_cast<double>(r - height / 2) * inv_h;
        row_phase[static_cast<std::size_t>(r)] = 0.5 * c1 * u * u;
    }
    for (int c = 0; c < width; ++c) {
        double u = static_cast<double>(c - width / 2) * inv_w;
        col_phase[static_cast<std::size_t>(c)] = 0.5 * c2 * u * u;
    }

    ComplexImage out(width, height);
    double s = static_cast<double>(sign);
    for (int r = 0; r < height; ++r) {
        for (int c = 0; c < width; ++c) {
            double p = s * (row_phase[static_cast<std::size_t>(r)] + col_phase[static_cast<std::size_t>(c)]);
            out.at(r, c) = cplx(std::cos(p), std::sin(p));
        }
    }
    return out;
}

RealImage modulus(const ComplexImage& x) {
    RealImage out(x.width, x.height);
    for (std::size_t i = 0; i < x.size(); ++i) out.data[i] = std::abs(x.data[i]);
    return out;
}

ComplexImage spectrum(const ComplexImage& x) { return dft_2d(x, false); }

ComplexImage inverse_spectrum(const ComplexImage& x) { return dft_2d(x, true); }

double norm_sq(const ComplexImage& x) {
    double s = 0.0;
    for (const auto& z : x.data) s += z.real() * z.real() + z.imag() * z.imag();
    return s;
}

double norm_sq(const RealImage& x) {
    double s = 0.0;
    for (double v : x.data) s += v * v;
    return s;
}

double l2_norm(const ComplexImage& x) { return std::sqrt(norm_sq(x)); }
double l2_norm(const RealImage& x) { return std::sqrt(norm_sq(x)); }

ComplexImage to_complex(const RealImage& x) {
    ComplexImage out(x.width, x.height);
    for (std::size_t i = 0; i < x.size(); ++i) out.data[i] = cplx(x.data[i], 0.0);
    return out;
}

ComplexImage hadamard(const ComplexImage& a, const ComplexImage& b) {
    ComplexImage out = a;
    hadamard_inplace(out, b);
    return out;
}

void hadamard_inplace(ComplexImage& a, const ComplexImage& b) {
    if (!a.same_shape(b)) throw shape_error("hadamard: image dimensions differ");
    for (std::size_t i = 0; i < a.size(); ++i) a.data[i] *= b.data[i];
}

ComplexImage modulate(const RealImage& x, const ComplexImage& chirp) {
    if (x.width != chirp.width || x.height != chirp.height)
        throw shape_error("modulate: image dimensions differ");
    ComplexImage out(x.width, x.height);
    for (std::size_t i = 0; i < x.size(); ++i) out.data[i] = chirp.data[i] * x.data[i];
    return out;
}

bool all_finite(const ComplexImage& x) {
    for (const auto& z : x.data)
        if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) return false;
    return true;
}

bool all_finite(const RealImage& x) {
    for (double v : x.data)
        if (!std::isfinite(v)) return false;
    return true;
}

}  // namespace frscat
