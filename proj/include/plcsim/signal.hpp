#pragma once

#include <cstddef>
#include <string>
#include <vector>

namespace plcsim {

/// Uniformly sampled real-valued waveform. The common currency between the
/// generator, filter, channel, modem and relay stages.
///
/// Invariants (checked by validate()): sample_rate_hz > 0, every sample finite.
struct DiscreteSignal {
    std::vector<double> samples;
    double sample_rate_hz = 0.0;
    double start_time_s = 0.0;

    std::size_t size() const { return samples.size(); }
    bool empty() const { return samples.empty(); }

    /// duration = length / sample_rate, exactly.
    double duration_s() const {
        return static_cast<double>(samples.size()) / sample_rate_hz;
    }

    /// Time of sample n.
    double time_at(std::size_t n) const {
        return start_time_s + static_cast<double>(n) / sample_rate_hz;
    }

    /// Throws std::invalid_argument if an invariant is broken.
    void validate(const char* context = "DiscreteSignal") const;
};

/// Mean power (mean of squared samples); 0 for an empty signal.
double mean_power(const DiscreteSignal& s);

/// Root-mean-square amplitude.
double rms(const DiscreteSignal& s);

/// Sine carrier: samples[n] = amplitude * sin(2*pi*freq*n/fs + phase).
/// Length is round(duration_s * sample_rate_hz).
///
/// Throws std::invalid_argument if freq_hz is not inside (0, fs/2); the
/// message names both the requested frequency and the Nyquist limit.
DiscreteSignal generate_carrier(double freq_hz, double amplitude,
                                double phase_rad, double duration_s,
                                double sample_rate_hz);

}  // namespace plcsim
