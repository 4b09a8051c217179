#include "plcsim/modem.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <stdexcept>

#include "plcsim/noise.hpp"

namespace plcsim {

namespace {

constexpr double kPi = std::numbers::pi;

// sum of x[n] * exp(-j*w*n) over [begin, begin+len), phase referenced to the
// global sample index; rotation recurrence seeded per call
std::complex<double> quadrature_sum(const std::vector<double>& x, std::size_t begin,
                                    std::size_t len, double w) {
    const double phase0 = -std::fmod(w * static_cast<double>(begin), 2.0 * kPi);
    std::complex<double> e(std::cos(phase0), std::sin(phase0));
    const std::complex<double> rot(std::cos(w), -std::sin(w));
    std::complex<double> acc(0.0, 0.0);
    for (std::size_t i = begin; i < begin + len; ++i) {
        acc += x[i] * e;
        e *= rot;
    }
    return acc;
}

}  // namespace

const char* scheme_name(Scheme s) {
    switch (s) {
        case Scheme::ask: return "ask";
        case Scheme::bfsk: return "bfsk";
        case Scheme::bpsk: return "bpsk";
    }
    return "?";
}

Scheme scheme_from_name(const std::string& name) {
    if (name == "ask") return Scheme::ask;
    if (name == "bfsk" || name == "fsk") return Scheme::bfsk;
    if (name == "bpsk" || name == "psk") return Scheme::bpsk;
    throw std::invalid_argument("unknown scheme '" + name + "' (ask|bfsk|bpsk)");
}

void BitStream::validate() const {
    for (auto b : bits) {
        if (b > 1) throw std::invalid_argument("BitStream: values must be 0 or 1");
    }
}

BitStream BitStream::random(std::size_t n, std::uint64_t seed) {
    BitStream out;
    out.bits.resize(n);
    Splitmix64 g(seed);
    for (std::size_t i = 0; i < n; ++i) out.bits[i] = static_cast<std::uint8_t>(g.next() >> 63);
    return out;
}

BitStream BitStream::from_string(const std::string& s) {
    BitStream out;
    out.bits.reserve(s.size());
    for (char c : s) {
        if (c == '0') out.bits.push_back(0);
        else if (c == '1') out.bits.push_back(1);
        else if (c == '\n' || c == '\r' || c == ' ' || c == '\t') continue;
        else throw std::invalid_argument(std::string("BitStream: invalid character '") + c + "'");
    }
    return out;
}

std::string BitStream::to_string() const {
    std::string s;
    s.reserve(bits.size());
    for (auto b : bits) s.push_back(b ? '1' : '0');
    return s;
}

std::size_t ModemConfig::samples_per_bit() const {
    const double spb = sample_rate_hz / bit_rate_hz;
    const double rounded = std::round(spb);
    if (!(std::abs(spb - rounded) < 1e-9) || rounded < 8.0) {
        throw std::invalid_argument(
            "ModemConfig: sample_rate / bit_rate must be an integer >= 8, got " +
            std::to_string(spb));
    }
    return static_cast<std::size_t>(rounded);
}

void ModemConfig::validate() const {
    if (!(bit_rate_hz > 0.0) || !(sample_rate_hz > 0.0) || !(amplitude >= 0.0)) {
        throw std::invalid_argument("ModemConfig: rates must be positive, amplitude >= 0");
    }
    (void)samples_per_bit();
    const double nyq = sample_rate_hz / 2.0;
    if (scheme == Scheme::bfsk) {
        if (!(deviation_hz > 0.0) || !(f0_hz() > 0.0) || f1_hz() >= nyq) {
            throw std::invalid_argument(
                "ModemConfig: BFSK tones f0 = " + std::to_string(f0_hz()) + ", f1 = " +
                std::to_string(f1_hz()) + " Hz must lie inside (0, " +
                std::to_string(nyq) + " Hz)");
        }
    } else {
        if (!(carrier_hz > 0.0) || carrier_hz >= nyq) {
            throw std::invalid_argument("ModemConfig: carrier " +
                                        std::to_string(carrier_hz) +
                                        " Hz outside (0, Nyquist)");
        }
    }
}

DiscreteSignal ask_modulate(const BitStream& bits, const ModemConfig& config) {
    config.validate();
    bits.validate();
    const std::size_t spb = config.samples_per_bit();
    DiscreteSignal out;
    out.sample_rate_hz = config.sample_rate_hz;
    out.samples.assign(bits.size() * spb, 0.0);
    const double w = 2.0 * kPi * config.carrier_hz / config.sample_rate_hz;
    for (std::size_t k = 0; k < bits.size(); ++k) {
        if (!bits.bits[k]) continue;
        for (std::size_t i = k * spb; i < (k + 1) * spb; ++i) {
            out.samples[i] = config.amplitude * std::sin(w * static_cast<double>(i));
        }
    }
    return out;
}

DiscreteSignal fsk_modulate(const BitStream& bits, const ModemConfig& config) {
    config.validate();
    bits.validate();
    const std::size_t spb = config.samples_per_bit();
    DiscreteSignal out;
    out.sample_rate_hz = config.sample_rate_hz;
    out.samples.resize(bits.size() * spb);
    const double w0 = 2.0 * kPi * config.f0_hz() / config.sample_rate_hz;
    const double w1 = 2.0 * kPi * config.f1_hz() / config.sample_rate_hz;
    double phase = 0.0;  // continuous across bit boundaries
    std::size_t n = 0;
    for (std::size_t k = 0; k < bits.size(); ++k) {
        const double w = bits.bits[k] ? w1 : w0;
        for (std::size_t i = 0; i < spb; ++i, ++n) {
            out.samples[n] = config.amplitude * std::sin(phase);
            phase += w;
            if (phase > 2.0 * kPi) phase -= 2.0 * kPi;
        }
    }
    return out;
}

DiscreteSignal psk_modulate(const BitStream& bits, const ModemConfig& config) {
    config.validate();
    bits.validate();
    const std::size_t spb = config.samples_per_bit();
    DiscreteSignal out;
    out.sample_rate_hz = config.sample_rate_hz;
    out.samples.resize(bits.size() * spb);
    const double w = 2.0 * kPi * config.carrier_hz / config.sample_rate_hz;
    for (std::size_t k = 0; k < bits.size(); ++k) {
        const double ph = bits.bits[k] ? kPi : 0.0;
        for (std::size_t i = k * spb; i < (k + 1) * spb; ++i) {
            out.samples[i] = config.amplitude * std::sin(w * static_cast<double>(i) + ph);
        }
    }
    return out;
}

namespace {

FirFilter rx_bandpass(const ModemConfig& c) {
    return design_bandpass(c.rx_bandpass_center_hz, c.rx_bandpass_bandwidth_hz,
                           c.rx_bandpass_taps, c.sample_rate_hz);
}

void require_at_least_one_bit(const DiscreteSignal& s, std::size_t spb, const char* op) {
    if (s.samples.size() < spb) {
        throw std::invalid_argument(std::string(op) +
                                    ": signal shorter than one bit period");
    }
}

}  // namespace

BitStream ask_demodulate(const DiscreteSignal& signal, const ModemConfig& config) {
    config.validate();
    const std::size_t spb = config.samples_per_bit();
    require_at_least_one_bit(signal, spb, "ask_demodulate");

    DiscreteSignal env = apply_filter(signal, rx_bandpass(config));
    for (double& v : env.samples) v = std::abs(v);
    env = apply_filter(env, design_lowpass(config.rx_lowpass_effective_cutoff_hz(),
                                           config.rx_lowpass_taps,
                                           config.sample_rate_hz));

    // decision threshold: half the 90th-percentile envelope level
    std::vector<double> sorted = env.samples;
    const std::size_t q = static_cast<std::size_t>(0.9 * static_cast<double>(sorted.size() - 1));
    std::nth_element(sorted.begin(), sorted.begin() + static_cast<std::ptrdiff_t>(q),
                     sorted.end());
    const double threshold = 0.5 * sorted[q];

    const std::size_t n_bits = env.samples.size() / spb;
    BitStream out;
    out.bits.resize(n_bits);
    for (std::size_t k = 0; k < n_bits; ++k) {
        double acc = 0.0;
        for (std::size_t i = k * spb; i < (k + 1) * spb; ++i) acc += env.samples[i];
        out.bits[k] = acc / static_cast<double>(spb) > threshold ? 1 : 0;
    }
    return out;
}

BitStream fsk_demodulate(const DiscreteSignal& signal, const ModemConfig& config) {
    config.validate();
    const std::size_t spb = config.samples_per_bit();
    require_at_least_one_bit(signal, spb, "fsk_demodulate");

    const DiscreteSignal filt = apply_filter(signal, rx_bandpass(config));
    const double w0 = 2.0 * kPi * config.f0_hz() / config.sample_rate_hz;
    const double w1 = 2.0 * kPi * config.f1_hz() / config.sample_rate_hz;

    const std::size_t n_bits = filt.samples.size() / spb;
    BitStream out;
    out.bits.resize(n_bits);
    for (std::size_t k = 0; k < n_bits; ++k) {
        const double e0 = std::abs(quadrature_sum(filt.samples, k * spb, spb, w0));
        const double e1 = std::abs(quadrature_sum(filt.samples, k * spb, spb, w1));
        out.bits[k] = e1 > e0 ? 1 : 0;
    }
    return out;
}

BitStream psk_demodulate(const DiscreteSignal& signal, const ModemConfig& config,
                         const DemodOptions& options) {
    config.validate();
    const std::size_t spb = config.samples_per_bit();
    require_at_least_one_bit(signal, spb, "psk_demodulate");

    const DiscreteSignal filt = apply_filter(signal, rx_bandpass(config));
    const double w = 2.0 * kPi * config.carrier_hz / config.sample_rate_hz;
    const std::size_t n_bits = filt.samples.size() / spb;

    double phase;
    if (options.psk_reference_phase_rad) {
        phase = *options.psk_reference_phase_rad;
    } else {
        // squaring estimator; the resulting pi ambiguity is resolved to the
        // canonical range (-pi/2, pi/2]
        std::complex<double> acc(0.0, 0.0);
        for (std::size_t k = 0; k < n_bits; ++k) {
            const auto c = quadrature_sum(filt.samples, k * spb, spb, w);
            acc += c * c;
        }
        phase = 0.5 * (std::arg(acc) + kPi);
        if (phase > kPi / 2.0) phase -= kPi;
    }

    BitStream out;
    out.bits.resize(n_bits);
    for (std::size_t k = 0; k < n_bits; ++k) {
        // d = sum r[n] sin(w n + phase) = Im(conj(c_k) * e^{j phase}) with
        // c_k the quadrature sum; sign decides the bit
        const auto c = quadrature_sum(filt.samples, k * spb, spb, w);
        const double d = (std::conj(c) * std::polar(1.0, phase)).imag();
        out.bits[k] = d < 0.0 ? 1 : 0;
    }
    return out;
}

DiscreteSignal modulate(const BitStream& bits, const ModemConfig& config) {
    switch (config.scheme) {
        case Scheme::ask: return ask_modulate(bits, config);
        case Scheme::bfsk: return fsk_modulate(bits, config);
        case Scheme::bpsk: return psk_modulate(bits, config);
    }
    throw std::logic_error("modulate: bad scheme");
}

BitStream demodulate(const DiscreteSignal& signal, const ModemConfig& config,
                     const DemodOptions& options) {
    switch (config.scheme) {
        case Scheme::ask: return ask_demodulate(signal, config);
        case Scheme::bfsk: return fsk_demodulate(signal, config);
        case Scheme::bpsk: return psk_demodulate(signal, config, options);
    }
    throw std::logic_error("demodulate: bad scheme");
}

}  // namespace plcsim
