#include "plcsim/fft.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace plcsim::fft {

namespace {

constexpr double kPi = std::numbers::pi;

bool is_pow2(std::size_t n) { return n != 0 && (n & (n - 1)) == 0; }

}  // namespace

std::size_t next_pow2(std::size_t n) {
    std::size_t p = 1;
    while (p < n) p <<= 1;
    return p;
}

void transform_pow2(std::vector<cplx>& a, bool inverse) {
    const std::size_t n = a.size();
    if (n == 0) return;
    if (!is_pow2(n)) {
        throw std::invalid_argument("transform_pow2: length must be a power of two");
    }
    // bit-reversal permutation
    for (std::size_t i = 1, j = 0; i < n; ++i) {
        std::size_t bit = n >> 1;
        for (; j & bit; bit >>= 1) j ^= bit;
        j ^= bit;
        if (i < j) std::swap(a[i], a[j]);
    }
    for (std::size_t len = 2; len <= n; len <<= 1) {
        const double ang = 2.0 * kPi / static_cast<double>(len) * (inverse ? 1.0 : -1.0);
        const cplx wlen(std::cos(ang), std::sin(ang));
        for (std::size_t i = 0; i < n; i += len) {
            cplx w(1.0, 0.0);
            for (std::size_t k = 0; k < len / 2; ++k) {
                const cplx u = a[i + k];
                const cplx v = a[i + k + len / 2] * w;
                a[i + k] = u + v;
                a[i + k + len / 2] = u - v;
                w *= wlen;
            }
        }
    }
    if (inverse) {
        const double inv = 1.0 / static_cast<double>(n);
        for (auto& v : a) v *= inv;
    }
}

std::vector<cplx> dft(const std::vector<cplx>& in) {
    const std::size_t n = in.size();
    if (n == 0) return {};
    if (is_pow2(n)) {
        std::vector<cplx> a = in;
        transform_pow2(a, false);
        return a;
    }
    // Bluestein: X_k = b*_k * (a ⊛ b)_k with a_n = x_n b*_n, b_n = exp(i*pi*n^2/N).
    const std::size_t m = next_pow2(2 * n - 1);
    std::vector<cplx> b(n);
    for (std::size_t k = 0; k < n; ++k) {
        // n^2 mod 2N keeps the argument small for large N
        const auto q = static_cast<double>((static_cast<unsigned long long>(k) * k) %
                                           (2ULL * n));
        const double ang = kPi * q / static_cast<double>(n);
        b[k] = cplx(std::cos(ang), std::sin(ang));
    }
    std::vector<cplx> fa(m, cplx(0.0, 0.0)), fb(m, cplx(0.0, 0.0));
    for (std::size_t k = 0; k < n; ++k) fa[k] = in[k] * std::conj(b[k]);
    fb[0] = b[0];
    for (std::size_t k = 1; k < n; ++k) {
        fb[k] = b[k];
        fb[m - k] = b[k];
    }
    transform_pow2(fa, false);
    transform_pow2(fb, false);
    for (std::size_t k = 0; k < m; ++k) fa[k] *= fb[k];
    transform_pow2(fa, true);
    std::vector<cplx> out(n);
    for (std::size_t k = 0; k < n; ++k) out[k] = std::conj(b[k]) * fa[k];
    return out;
}

std::vector<cplx> dft_real(const std::vector<double>& in) {
    std::vector<cplx> c(in.size());
    for (std::size_t i = 0; i < in.size(); ++i) c[i] = cplx(in[i], 0.0);
    return dft(c);
}

namespace {

std::vector<double> convolve_direct(const std::vector<double>& x,
                                    const std::vector<double>& h) {
    if (x.empty() || h.empty()) return {};
    std::vector<double> y(x.size() + h.size() - 1, 0.0);
    // iterate over the shorter sequence in the outer loop
    const auto& a = x.size() >= h.size() ? x : h;
    const auto& b = x.size() >= h.size() ? h : x;
    for (std::size_t j = 0; j < b.size(); ++j) {
        const double c = b[j];
        if (c == 0.0) continue;
        for (std::size_t i = 0; i < a.size(); ++i) y[i + j] += c * a[i];
    }
    return y;
}

std::vector<double> convolve_overlap_add(const std::vector<double>& x,
                                         const std::vector<double>& h) {
    const std::size_t nh = h.size();
    const std::size_t fft_len = std::max<std::size_t>(next_pow2(8 * nh), 8192);
    const std::size_t block = fft_len - nh + 1;

    std::vector<cplx> hf(fft_len, cplx(0.0, 0.0));
    for (std::size_t i = 0; i < nh; ++i) hf[i] = cplx(h[i], 0.0);
    transform_pow2(hf, false);

    std::vector<double> y(x.size() + nh - 1, 0.0);
    std::vector<cplx> buf(fft_len);
    for (std::size_t off = 0; off < x.size(); off += 2 * block) {
        // pack two consecutive real blocks into one complex transform
        std::fill(buf.begin(), buf.end(), cplx(0.0, 0.0));
        const std::size_t n1 = std::min(block, x.size() - off);
        for (std::size_t i = 0; i < n1; ++i) buf[i] = cplx(x[off + i], 0.0);
        const std::size_t off2 = off + block;
        if (off2 < x.size()) {
            const std::size_t n2 = std::min(block, x.size() - off2);
            for (std::size_t i = 0; i < n2; ++i) buf[i] += cplx(0.0, x[off2 + i]);
        }
        transform_pow2(buf, false);
        for (std::size_t k = 0; k < fft_len; ++k) buf[k] *= hf[k];
        transform_pow2(buf, true);
        const std::size_t m1 = std::min(fft_len, y.size() - off);
        for (std::size_t i = 0; i < m1; ++i) y[off + i] += buf[i].real();
        if (off2 < x.size()) {
            const std::size_t m2 = std::min(fft_len, y.size() - off2);
            for (std::size_t i = 0; i < m2; ++i) y[off2 + i] += buf[i].imag();
        }
    }
    return y;
}

}  // namespace

std::vector<double> convolve_full(const std::vector<double>& x,
                                  const std::vector<double>& h) {
    if (x.empty() || h.empty()) return {};
    const std::size_t work = x.size() * h.size();
    const std::size_t min_len = std::min(x.size(), h.size());
    if (work < 1u << 24 || min_len < 64) return convolve_direct(x, h);
    return convolve_overlap_add(x, h);
}

}  // namespace plcsim::fft
