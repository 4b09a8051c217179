#pragma once

#include <complex>
#include <cstdint>

#include "plcsim/filter.hpp"
#include "plcsim/noise.hpp"
#include "plcsim/signal.hpp"

namespace plcsim {

/// Series-RL two-port into a resistive termination: the high-voltage line
/// between two substations reduced to a linear time-invariant channel.
///
///   H(f) = Z_term / (Z_term + R_tot + j*2*pi*f*L_tot)
///
/// with R_tot = r_per_m * length_m and L_tot = l_per_m * length_m. A 60 Hz
/// power-frequency interference term (at the channel output scale) and
/// seeded noise are superposed at the receiver; an optional AGC stage
/// rescales the communication component back to its transmitted in-band
/// power.
struct LineChannel {
    double r_per_m = 0.2;          // ohm per meter
    double l_per_m = 5e-4;         // henry per meter
    double length_m = 9800.0;
    double termination_ohm = 1000.0;
    double band_low_hz = 99e3;
    double band_high_hz = 400e3;
    double power_freq_hz = 60.0;
    double power_amplitude = 10.0;  // volts at the channel output scale
    NoiseSpec noise = NoiseSpec::disabled();
    bool agc_enabled = true;
    std::size_t fir_taps = 1025;

    double r_total_ohm() const { return r_per_m * length_m; }
    double l_total_h() const { return l_per_m * length_m; }

    void validate() const;

    /// Identity channel (r = l = 0, no interference, no noise, AGC off):
    /// the AWGN-only reference configuration.
    static LineChannel identity();
};

/// Complex channel gain H(f); |H| in (0, 1], strictly decreasing in f,
/// phase in (-90, 0] degrees.
std::complex<double> transfer_gain(const LineChannel& channel, double freq_hz);

/// Real FIR realization of H(f) at the given sample rate. Weighted
/// least-squares fit on a dense frequency grid with relative-error
/// weighting across [band_low, band_high], a light absolute weight
/// elsewhere, and the DC gain pinned exactly to H(0). Tap 0 corresponds to
/// zero delay (apply causally).
///
/// Throws std::invalid_argument if the band does not fit below Nyquist or
/// tap_count is even, and std::runtime_error naming the achieved error if
/// the realization misses the 1% in-band magnitude tolerance.
FirFilter channel_fir(const LineChannel& channel, double sample_rate_hz,
                      std::size_t tap_count);

struct PropagationResult {
    DiscreteSignal output;
    double agc_gain = 1.0;
};

/// Transmit -> receive: y = agc * (h_channel (*) x) + interference + noise.
///
/// The AGC gain is computed so the in-band power of the received
/// communication component matches the transmitted in-band power (1 if
/// disabled). Interference = power_amplitude * sin(2*pi*power_freq*t) is
/// added at the output scale, unscaled by AGC. Noise (per channel.noise) is
/// referenced to the measured mean power of the composite comm+interference
/// waveform when given as an SNR.
PropagationResult propagate(const DiscreteSignal& signal, const LineChannel& channel);

/// The 60 Hz interference term alone (sampled like `like`).
DiscreteSignal interference_waveform(const LineChannel& channel,
                                     const DiscreteSignal& like);

/// Mean power of the signal content inside [band_low, band_high], measured
/// with an averaged segmented periodogram (deterministic).
double inband_power(const DiscreteSignal& signal, double band_low_hz,
                    double band_high_hz);

}  // namespace plcsim
