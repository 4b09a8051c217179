#include "plcsim/filter.hpp"

#include <cmath>
#include <complex>
#include <numbers>
#include <stdexcept>

#include "plcsim/fft.hpp"

namespace plcsim {

namespace {

constexpr double kPi = std::numbers::pi;

double sinc(double x) {
    if (x == 0.0) return 1.0;
    return std::sin(kPi * x) / (kPi * x);
}

// Ideal lowpass taps (cutoff as a fraction of fs), before windowing.
std::vector<double> ideal_lowpass(double cutoff_over_fs, std::size_t taps) {
    const auto m = static_cast<long long>((taps - 1) / 2);
    std::vector<double> h(taps);
    for (std::size_t i = 0; i < taps; ++i) {
        const double n = static_cast<double>(static_cast<long long>(i) - m);
        h[i] = 2.0 * cutoff_over_fs * sinc(2.0 * cutoff_over_fs * n);
    }
    return h;
}

}  // namespace

double fir_transition_width_hz(std::size_t tap_count, double sample_rate_hz) {
    // Hamming window: transition ~= 3.3 / N in normalized frequency.
    return 3.3 * sample_rate_hz / static_cast<double>(tap_count);
}

FirFilter design_fir(FirKind kind, double center_or_cutoff_hz, double bandwidth_hz,
                     std::size_t tap_count, double sample_rate_hz) {
    if (!(sample_rate_hz > 0.0)) {
        throw std::invalid_argument("design_fir: sample_rate_hz must be > 0");
    }
    if (tap_count % 2 == 0) {
        throw std::invalid_argument("design_fir: tap_count must be odd, got " +
                                    std::to_string(tap_count));
    }
    if (tap_count < 31) {
        throw std::invalid_argument("design_fir: tap_count must be >= 31, got " +
                                    std::to_string(tap_count));
    }
    const double nyq = sample_rate_hz / 2.0;

    std::vector<double> h;
    if (kind == FirKind::lowpass) {
        const double fc = center_or_cutoff_hz;
        if (!(fc > 0.0) || fc >= nyq) {
            throw std::invalid_argument(
                "design_fir: lowpass cutoff " + std::to_string(fc) +
                " Hz outside (0, Nyquist = " + std::to_string(nyq) + " Hz)");
        }
        h = ideal_lowpass(fc / sample_rate_hz, tap_count);
    } else if (kind == FirKind::bandpass) {
        const double lo = center_or_cutoff_hz - bandwidth_hz / 2.0;
        const double hi = center_or_cutoff_hz + bandwidth_hz / 2.0;
        if (!(bandwidth_hz > 0.0) || !(lo > 0.0) || hi >= nyq) {
            throw std::invalid_argument(
                "design_fir: bandpass [" + std::to_string(lo) + ", " +
                std::to_string(hi) + "] Hz outside (0, Nyquist = " +
                std::to_string(nyq) + " Hz)");
        }
        const auto hh = ideal_lowpass(hi / sample_rate_hz, tap_count);
        const auto hl = ideal_lowpass(lo / sample_rate_hz, tap_count);
        h.resize(tap_count);
        for (std::size_t i = 0; i < tap_count; ++i) h[i] = hh[i] - hl[i];
    } else {
        throw std::invalid_argument("design_fir: channel kind is produced by channel_fir");
    }

    // Hamming window
    for (std::size_t i = 0; i < tap_count; ++i) {
        const double w = 0.54 - 0.46 * std::cos(2.0 * kPi * static_cast<double>(i) /
                                                static_cast<double>(tap_count - 1));
        h[i] *= w;
    }

    FirFilter f;
    f.taps = std::move(h);
    f.kind = kind;
    f.design_sample_rate_hz = sample_rate_hz;
    f.window_name = "hamming";
    if (kind == FirKind::lowpass) {
        f.cutoff_hz = center_or_cutoff_hz;
    } else {
        f.center_hz = center_or_cutoff_hz;
        f.bandwidth_hz = bandwidth_hz;
    }
    return f;
}

FirFilter design_lowpass(double cutoff_hz, std::size_t tap_count,
                         double sample_rate_hz) {
    return design_fir(FirKind::lowpass, cutoff_hz, 0.0, tap_count, sample_rate_hz);
}

FirFilter design_bandpass(double center_hz, double bandwidth_hz,
                          std::size_t tap_count, double sample_rate_hz) {
    return design_fir(FirKind::bandpass, center_hz, bandwidth_hz, tap_count,
                      sample_rate_hz);
}

namespace {

DiscreteSignal trimmed_convolution(const DiscreteSignal& signal,
                                   const FirFilter& filter, std::size_t offset) {
    if (filter.taps.empty()) {
        throw std::invalid_argument("apply_filter: empty filter");
    }
    DiscreteSignal out;
    out.sample_rate_hz = signal.sample_rate_hz;
    out.start_time_s = signal.start_time_s;
    if (signal.samples.empty()) return out;

    const auto full = fft::convolve_full(signal.samples, filter.taps);
    out.samples.resize(signal.samples.size());
    for (std::size_t i = 0; i < out.samples.size(); ++i) {
        out.samples[i] = full[i + offset];
    }
    return out;
}

}  // namespace

DiscreteSignal apply_filter(const DiscreteSignal& signal, const FirFilter& filter) {
    return trimmed_convolution(signal, filter, (filter.taps.size() - 1) / 2);
}

DiscreteSignal apply_filter_causal(const DiscreteSignal& signal,
                                   const FirFilter& filter) {
    return trimmed_convolution(signal, filter, 0);
}

void fir_response(const std::vector<double>& taps, double freq_hz,
                  double sample_rate_hz, double* mag_out, double* phase_rad_out) {
    const double w = 2.0 * kPi * freq_hz / sample_rate_hz;
    std::complex<double> acc(0.0, 0.0);
    // phase rotation recurrence; renormalized implicitly by short lengths
    const std::complex<double> step(std::cos(w), -std::sin(w));
    std::complex<double> e(1.0, 0.0);
    for (double t : taps) {
        acc += t * e;
        e *= step;
    }
    if (mag_out) *mag_out = std::abs(acc);
    if (phase_rad_out) *phase_rad_out = std::arg(acc);
}

}  // namespace plcsim
