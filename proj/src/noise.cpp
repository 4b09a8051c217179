#include "plcsim/noise.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "plcsim/fft.hpp"

namespace plcsim {

std::uint64_t Splitmix64::next() {
    state += 0x9E3779B97F4A7C15ULL;
    std::uint64_t z = state;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

double Splitmix64::next_double() {
    return static_cast<double>(next() >> 11) * 0x1.0p-53;
}

std::uint64_t mix_seed(std::uint64_t base, std::uint64_t a, std::uint64_t b) {
    Splitmix64 g(base ^ (a * 0x9E3779B97F4A7C15ULL) ^ (b * 0xC2B2AE3D27D4EB4FULL));
    return g.next();
}

std::vector<double> gaussian_sequence(std::uint64_t seed, std::size_t n) {
    std::vector<double> out(n);
    Splitmix64 g(seed);
    for (std::size_t i = 0; i < n; i += 2) {
        double u1 = g.next_double();
        const double u2 = g.next_double();
        u1 = 1.0 - u1;  // (0, 1], keeps log finite
        const double r = std::sqrt(-2.0 * std::log(u1));
        const double a = 2.0 * std::numbers::pi * u2;
        out[i] = r * std::cos(a);
        if (i + 1 < n) out[i + 1] = r * std::sin(a);
    }
    return out;
}

NoiseSpec NoiseSpec::from_snr_db(double snr_db, std::uint64_t seed, NoiseKind kind) {
    NoiseSpec s;
    s.kind = kind;
    s.snr_db = snr_db;
    s.use_power = false;
    s.enabled = std::isfinite(snr_db);
    if (std::isnan(snr_db) || snr_db == -std::numeric_limits<double>::infinity()) {
        throw std::invalid_argument("NoiseSpec: snr_db must be finite or +inf");
    }
    s.seed = seed;
    return s;
}

NoiseSpec NoiseSpec::from_power(double variance, std::uint64_t seed, NoiseKind kind) {
    if (!std::isfinite(variance) || variance < 0.0) {
        throw std::invalid_argument("NoiseSpec: noise power must be finite and >= 0");
    }
    NoiseSpec s;
    s.kind = kind;
    s.noise_power = variance;
    s.use_power = true;
    s.enabled = variance > 0.0;
    s.seed = seed;
    return s;
}

namespace {

std::vector<double> pink_sequence(std::uint64_t seed, std::size_t n) {
    // white -> FFT -> |G(f)| ~ f^-1/2 (a -10 dB/decade power slope), DC = 0.
    const std::size_t m = fft::next_pow2(std::max<std::size_t>(n, 2));
    const auto white = gaussian_sequence(seed, m);
    auto bins = fft::dft_real(white);
    bins[0] = 0.0;
    for (std::size_t k = 1; k <= m / 2; ++k) {
        const double gain = 1.0 / std::sqrt(static_cast<double>(k));
        bins[k] *= gain;
        if (k != m - k) bins[m - k] *= gain;
    }
    fft::transform_pow2(bins, true);
    std::vector<double> out(n);
    for (std::size_t i = 0; i < n; ++i) out[i] = bins[i].real();
    return out;
}

}  // namespace

DiscreteSignal add_noise(const DiscreteSignal& signal, const NoiseSpec& spec) {
    signal.validate("add_noise");
    DiscreteSignal out = signal;
    if (!spec.enabled) return out;

    double variance;
    if (spec.use_power) {
        variance = spec.noise_power;
    } else {
        if (spec.snr_db == std::numeric_limits<double>::infinity()) return out;
        if (!std::isfinite(spec.snr_db)) {
            throw std::invalid_argument("add_noise: snr_db must be finite or +inf");
        }
        variance = mean_power(signal) / std::pow(10.0, spec.snr_db / 10.0);
    }
    if (!std::isfinite(variance)) {
        throw std::invalid_argument("add_noise: derived noise power is not finite");
    }
    if (variance == 0.0) return out;

    const std::size_t n = out.samples.size();
    std::vector<double> noise;
    if (spec.kind == NoiseKind::white) {
        noise = gaussian_sequence(spec.seed, n);
    } else {
        noise = pink_sequence(spec.seed, n);
        // rescale measured variance to 1 before applying the target
        double p = 0.0;
        for (double v : noise) p += v * v;
        p /= static_cast<double>(n);
        const double inv = p > 0.0 ? 1.0 / std::sqrt(p) : 0.0;
        for (double& v : noise) v *= inv;
    }
    const double amp = std::sqrt(variance);
    for (std::size_t i = 0; i < n; ++i) out.samples[i] += amp * noise[i];
    return out;
}

}  // namespace plcsim
