#pragma once

#include <cstdint>
#include <vector>

#include "plcsim/signal.hpp"

namespace plcsim {

enum class NoiseKind { white, one_over_f };

/// Seeded noise description. Exactly one of snr_db / noise_power drives the
/// noise variance:
///   - noise_power finite: variance in signal units squared, used as-is;
///   - otherwise snr_db finite: variance = mean_power(input) / 10^(snr/10);
///   - snr_db = +inf (or enabled == false): no noise.
/// The seed fully determines the sequence for a given length and kind.
struct NoiseSpec {
    NoiseKind kind = NoiseKind::white;
    double snr_db = 0.0;
    double noise_power = 0.0;
    bool use_power = false;
    bool enabled = false;
    std::uint64_t seed = 1;

    static NoiseSpec disabled() { return NoiseSpec{}; }
    static NoiseSpec from_snr_db(double snr_db, std::uint64_t seed,
                                 NoiseKind kind = NoiseKind::white);
    static NoiseSpec from_power(double variance, std::uint64_t seed,
                                NoiseKind kind = NoiseKind::white);
};

/// input + seeded noise; bit-identical for a fixed seed and spec.
/// White noise is zero-mean Gaussian. one_over_f shapes white noise with a
/// -10 dB/decade power-slope magnitude filter (|G(f)| ~ f^-1/2, DC removed)
/// and then rescales to the requested variance.
DiscreteSignal add_noise(const DiscreteSignal& signal, const NoiseSpec& spec);

/// Standard-normal sequence from a 64-bit seed (splitmix64 + Box-Muller).
std::vector<double> gaussian_sequence(std::uint64_t seed, std::size_t n);

/// Deterministic seed mixing for derived streams (index decorrelation).
std::uint64_t mix_seed(std::uint64_t base, std::uint64_t a, std::uint64_t b = 0);

/// splitmix64 generator; the project-wide deterministic PRNG primitive.
struct Splitmix64 {
    std::uint64_t state;
    explicit Splitmix64(std::uint64_t seed) : state(seed) {}
    std::uint64_t next();
    /// uniform in [0, 1)
    double next_double();
};

}  // namespace plcsim
