#include "plcsim/spectrum.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "plcsim/fft.hpp"

namespace plcsim {

double window_coherent_gain(WindowKind window) {
    switch (window) {
        case WindowKind::rect: return 1.0;
        case WindowKind::hann: return 0.5;
        case WindowKind::hamming: return 0.54;
    }
    return 1.0;
}

Spectrum spectrum(const DiscreteSignal& signal, WindowKind window) {
    const std::size_t n = signal.samples.size();
    if (n < 2) {
        throw std::invalid_argument("spectrum: signal must have at least 2 samples");
    }
    signal.validate("spectrum");

    std::vector<double> x = signal.samples;
    if (window != WindowKind::rect) {
        const double a0 = window == WindowKind::hann ? 0.5 : 0.54;
        const double a1 = window == WindowKind::hann ? 0.5 : 0.46;
        for (std::size_t i = 0; i < n; ++i) {
            x[i] *= a0 - a1 * std::cos(2.0 * std::numbers::pi * static_cast<double>(i) /
                                       static_cast<double>(n - 1));
        }
    }
    const auto bins = fft::dft_real(x);

    Spectrum s;
    s.window = window;
    s.resolution_hz = signal.sample_rate_hz / static_cast<double>(n);
    const std::size_t half = n / 2;  // inclusive index of the last single-sided bin
    const double norm = 1.0 / (static_cast<double>(n) * window_coherent_gain(window));
    s.bin_freqs_hz.resize(half + 1);
    s.magnitudes.resize(half + 1);
    for (std::size_t k = 0; k <= half; ++k) {
        s.bin_freqs_hz[k] = static_cast<double>(k) * s.resolution_hz;
        s.magnitudes[k] = std::abs(bins[k]) * norm;
    }
    return s;
}

}  // namespace plcsim
