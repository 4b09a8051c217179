#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "plcsim/signal.hpp"

namespace plcsim {

enum class FirKind { lowpass, bandpass, channel };

/// Linear FIR filter. Filters produced by design_fir() are odd-length
/// Hamming windowed-sinc designs, symmetric about the center tap (linear
/// phase, integer group delay (taps-1)/2). apply_filter() removes that
/// delay by centering the convolution, so designed filters are effectively
/// zero-delay. FirKind::channel marks externally designed tap sets (channel
/// realizations) that are not symmetric.
struct FirFilter {
    std::vector<double> taps;
    FirKind kind = FirKind::lowpass;
    double center_hz = 0.0;     // bandpass only
    double bandwidth_hz = 0.0;  // bandpass only
    double cutoff_hz = 0.0;     // lowpass only
    double design_sample_rate_hz = 0.0;
    std::string window_name;

    std::size_t tap_count() const { return taps.size(); }
    std::size_t group_delay_samples() const { return (taps.size() - 1) / 2; }
};

/// Width of the transition band of a Hamming windowed-sinc design, in Hz.
/// The stopband spec (>= 40 dB) is met one transition width beyond the
/// band edge.
double fir_transition_width_hz(std::size_t tap_count, double sample_rate_hz);

/// Windowed-sinc (Hamming) linear-phase design.
///   lowpass : center_or_cutoff_hz = cutoff, bandwidth_hz ignored
///   bandpass: center_or_cutoff_hz = center, bandwidth_hz = full width
/// tap_count must be odd and >= 31; the passband must lie inside
/// (0, sample_rate/2). Passband ripple <= 1 dB; stopband >= 40 dB one
/// transition width beyond the band edges.
FirFilter design_fir(FirKind kind, double center_or_cutoff_hz, double bandwidth_hz,
                     std::size_t tap_count, double sample_rate_hz);

FirFilter design_lowpass(double cutoff_hz, std::size_t tap_count,
                         double sample_rate_hz);
FirFilter design_bandpass(double center_hz, double bandwidth_hz,
                          std::size_t tap_count, double sample_rate_hz);

/// Exact discrete convolution, trimmed to the input length with the kernel
/// centered ("same" convolution, zero-padded edges). A symmetric filter
/// therefore introduces no net delay; signals keep their time alignment.
DiscreteSignal apply_filter(const DiscreteSignal& signal, const FirFilter& filter);

/// Same-length causal convolution (output[n] = sum_k h[k] x[n-k]); used for
/// channel realizations where tap 0 corresponds to zero delay.
DiscreteSignal apply_filter_causal(const DiscreteSignal& signal,
                                   const FirFilter& filter);

/// Complex frequency response of a tap set at one frequency (DTFT).
void fir_response(const std::vector<double>& taps, double freq_hz,
                  double sample_rate_hz, double* mag_out, double* phase_rad_out);

}  // namespace plcsim
