// Test-only reference computations, independent of the library's FFT /
// filtering / statistics paths.
#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>
#include <vector>

namespace oracles {

// O(N^2) DFT straight from the definition.
inline std::vector<std::complex<double>> naive_dft(const std::vector<double>& x) {
    const std::size_t n = x.size();
    std::vector<std::complex<double>> out(n);
    for (std::size_t k = 0; k < n; ++k) {
        std::complex<double> acc(0.0, 0.0);
        for (std::size_t i = 0; i < n; ++i) {
            const double ang = -2.0 * std::numbers::pi * static_cast<double>(k) *
                               static_cast<double>(i) / static_cast<double>(n);
            acc += x[i] * std::complex<double>(std::cos(ang), std::sin(ang));
        }
        out[k] = acc;
    }
    return out;
}

// amplitude of the tone at freq_hz in x, by direct correlation over the
// whole record (exact for an integer number of cycles)
inline double tone_amplitude(const std::vector<double>& x, double freq_hz,
                             double sample_rate_hz) {
    std::complex<double> acc(0.0, 0.0);
    const double w = 2.0 * std::numbers::pi * freq_hz / sample_rate_hz;
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double ang = w * static_cast<double>(i);
        acc += x[i] * std::complex<double>(std::cos(ang), -std::sin(ang));
    }
    return 2.0 * std::abs(acc) / static_cast<double>(x.size());
}

// Gaussian tail probability by Simpson quadrature over [x, x+12].
inline double q_function_quadrature(double x) {
    const double a = x, b = x + 12.0;
    const std::size_t n = 20000;  // even
    const double h = (b - a) / static_cast<double>(n);
    auto pdf = [](double t) {
        return std::exp(-0.5 * t * t) / std::sqrt(2.0 * std::numbers::pi);
    };
    double acc = pdf(a) + pdf(b);
    for (std::size_t i = 1; i < n; ++i) {
        acc += pdf(a + h * static_cast<double>(i)) * ((i % 2) ? 4.0 : 2.0);
    }
    return acc * h / 3.0;
}

// deterministic test-vector generator (xorshift-style, independent of the
// library's splitmix64)
struct TestRng {
    std::uint64_t s;
    explicit TestRng(std::uint64_t seed) : s(seed ? seed : 0x9e3779b9ULL) {}
    std::uint64_t next() {
        s ^= s << 13;
        s ^= s >> 7;
        s ^= s << 17;
        return s;
    }
    double uniform(double lo = 0.0, double hi = 1.0) {
        return lo + (hi - lo) * (static_cast<double>(next() >> 11) * 0x1.0p-53);
    }
};

}  // namespace oracles
