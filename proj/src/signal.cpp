#include "plcsim/signal.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace plcsim {

void DiscreteSignal::validate(const char* context) const {
    if (!(sample_rate_hz > 0.0)) {
        throw std::invalid_argument(std::string(context) +
                                    ": sample_rate_hz must be > 0, got " +
                                    std::to_string(sample_rate_hz));
    }
    for (double v : samples) {
        if (!std::isfinite(v)) {
            throw std::invalid_argument(std::string(context) +
                                        ": non-finite sample value");
        }
    }
}

double mean_power(const DiscreteSignal& s) {
    if (s.samples.empty()) return 0.0;
    double acc = 0.0;
    for (double v : s.samples) acc += v * v;
    return acc / static_cast<double>(s.samples.size());
}

double rms(const DiscreteSignal& s) { return std::sqrt(mean_power(s)); }

DiscreteSignal generate_carrier(double freq_hz, double amplitude,
                                double phase_rad, double duration_s,
                                double sample_rate_hz) {
    if (!(sample_rate_hz > 0.0)) {
        throw std::invalid_argument("generate_carrier: sample_rate_hz must be > 0");
    }
    const double nyquist = sample_rate_hz / 2.0;
    if (!(freq_hz > 0.0) || freq_hz >= nyquist) {
        throw std::invalid_argument(
            "generate_carrier: frequency " + std::to_string(freq_hz) +
            " Hz outside (0, Nyquist = " + std::to_string(nyquist) + " Hz)");
    }
    if (duration_s < 0.0) {
        throw std::invalid_argument("generate_carrier: negative duration");
    }
    const auto n = static_cast<std::size_t>(std::llround(duration_s * sample_rate_hz));
    DiscreteSignal out;
    out.sample_rate_hz = sample_rate_hz;
    out.samples.resize(n);
    const double w = 2.0 * std::numbers::pi * freq_hz / sample_rate_hz;
    for (std::size_t i = 0; i < n; ++i) {
        out.samples[i] = amplitude * std::sin(w * static_cast<double>(i) + phase_rad);
    }
    return out;
}

}  // namespace plcsim
