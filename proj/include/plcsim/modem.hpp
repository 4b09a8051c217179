#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "plcsim/filter.hpp"
#include "plcsim/signal.hpp"

namespace plcsim {

enum class Scheme { ask, bfsk, bpsk };

const char* scheme_name(Scheme s);
Scheme scheme_from_name(const std::string& name);

/// Binary payload; values are 0/1 only.
struct BitStream {
    std::vector<std::uint8_t> bits;

    std::size_t size() const { return bits.size(); }
    void validate() const;

    static BitStream random(std::size_t n, std::uint64_t seed);
    static BitStream from_string(const std::string& zeros_and_ones);
    std::string to_string() const;
};

/// Modulator/demodulator parameters. samples_per_bit() = fs / bit_rate must
/// be an integer >= 8. BFSK signals at f0 = center - deviation (bit 0) and
/// f1 = center + deviation (bit 1); both tones must lie inside (0, fs/2).
struct ModemConfig {
    Scheme scheme = Scheme::bfsk;
    double bit_rate_hz = 10e3;
    double carrier_hz = 250e3;    // ASK / BPSK
    double center_hz = 250e3;     // BFSK
    double deviation_hz = 50e3;   // BFSK
    double amplitude = 1.0;
    double sample_rate_hz = 2.4e6;
    double rx_bandpass_center_hz = 250e3;
    double rx_bandpass_bandwidth_hz = 150e3;
    std::size_t rx_bandpass_taps = 301;
    double rx_lowpass_cutoff_hz = 0.0;  // 0 -> bit_rate_hz
    std::size_t rx_lowpass_taps = 301;

    double f0_hz() const { return center_hz - deviation_hz; }
    double f1_hz() const { return center_hz + deviation_hz; }
    std::size_t samples_per_bit() const;
    double rx_lowpass_effective_cutoff_hz() const {
        return rx_lowpass_cutoff_hz > 0.0 ? rx_lowpass_cutoff_hz : bit_rate_hz;
    }
    void validate() const;
};

struct DemodOptions {
    /// Coherent BPSK reference phase (radians). Unset -> estimated from the
    /// signal by a squaring (Viterbi&Viterbi) estimator, canonical range
    /// (-pi/2, pi/2].
    std::optional<double> psk_reference_phase_rad;
};

/// On-off keying: bit 1 -> carrier at the configured amplitude, bit 0 ->
/// silence. Segment boundaries fall on exact bit multiples.
DiscreteSignal ask_modulate(const BitStream& bits, const ModemConfig& config);

/// rx bandpass -> full-wave rectify -> rx lowpass -> per-bit mean ->
/// threshold at half the 90th-percentile envelope level.
BitStream ask_demodulate(const DiscreteSignal& signal, const ModemConfig& config);

/// Binary FSK, phase-continuous across bit boundaries, constant envelope.
DiscreteSignal fsk_modulate(const BitStream& bits, const ModemConfig& config);

/// rx bandpass -> dual tone-matched quadrature correlators (bandwidth on
/// the bit-rate scale) -> per-bit envelope comparison, larger wins.
BitStream fsk_demodulate(const DiscreteSignal& signal, const ModemConfig& config);

/// Binary PSK: s(t) = A sin(2 pi fc t + b pi).
DiscreteSignal psk_modulate(const BitStream& bits, const ModemConfig& config);

/// rx bandpass -> multiply by coherent reference -> integrate-and-dump per
/// bit -> sign decision.
BitStream psk_demodulate(const DiscreteSignal& signal, const ModemConfig& config,
                         const DemodOptions& options = {});

DiscreteSignal modulate(const BitStream& bits, const ModemConfig& config);
BitStream demodulate(const DiscreteSignal& signal, const ModemConfig& config,
                     const DemodOptions& options = {});

}  // namespace plcsim
