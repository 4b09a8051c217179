#include "plcsim/channel.hpp"

#include <Eigen/Cholesky>
#include <Eigen/Dense>

#include <array>
#include <cmath>
#include <map>
#include <mutex>
#include <numbers>
#include <stdexcept>

#include "plcsim/fft.hpp"

namespace plcsim {

namespace {

constexpr double kPi = std::numbers::pi;

// designs are pure functions of these parameters; memoized for reuse
using FirKey = std::array<double, 8>;

std::mutex g_fir_cache_mutex;
std::map<FirKey, FirFilter> g_fir_cache;

}  // namespace

void LineChannel::validate() const {
    auto positive = [](double v, const char* name) {
        if (!(v > 0.0) || !std::isfinite(v)) {
            throw std::invalid_argument(std::string("LineChannel: ") + name +
                                        " must be positive and finite");
        }
    };
    if (r_per_m < 0.0 || !std::isfinite(r_per_m)) {
        throw std::invalid_argument("LineChannel: r_per_m must be >= 0");
    }
    if (l_per_m < 0.0 || !std::isfinite(l_per_m)) {
        throw std::invalid_argument("LineChannel: l_per_m must be >= 0");
    }
    positive(length_m, "length_m");
    positive(termination_ohm, "termination_ohm");
    positive(band_low_hz, "band_low_hz");
    positive(band_high_hz, "band_high_hz");
    positive(power_freq_hz, "power_freq_hz");
    if (!(band_low_hz < band_high_hz)) {
        throw std::invalid_argument("LineChannel: band_low_hz must be < band_high_hz");
    }
    if (power_amplitude < 0.0 || !std::isfinite(power_amplitude)) {
        throw std::invalid_argument("LineChannel: power_amplitude must be >= 0");
    }
    if (fir_taps % 2 == 0 || fir_taps < 3) {
        throw std::invalid_argument("LineChannel: fir_taps must be odd and >= 3");
    }
}

LineChannel LineChannel::identity() {
    LineChannel c;
    c.r_per_m = 0.0;
    c.l_per_m = 0.0;
    c.power_amplitude = 0.0;
    c.noise = NoiseSpec::disabled();
    c.agc_enabled = false;
    return c;
}

std::complex<double> transfer_gain(const LineChannel& channel, double freq_hz) {
    if (freq_hz < 0.0) {
        throw std::invalid_argument("transfer_gain: freq_hz must be >= 0");
    }
    const double zt = channel.termination_ohm;
    const std::complex<double> z_line(channel.r_total_ohm(),
                                      2.0 * kPi * freq_hz * channel.l_total_h());
    return zt / (zt + z_line);
}

FirFilter channel_fir(const LineChannel& channel, double sample_rate_hz,
                      std::size_t tap_count) {
    channel.validate();
    if (!(sample_rate_hz > 0.0)) {
        throw std::invalid_argument("channel_fir: sample_rate_hz must be > 0");
    }
    if (tap_count % 2 == 0) {
        throw std::invalid_argument("channel_fir: tap_count must be odd");
    }
    const double nyq = sample_rate_hz / 2.0;
    if (channel.band_high_hz >= nyq) {
        throw std::invalid_argument(
            "channel_fir: band_high_hz " + std::to_string(channel.band_high_hz) +
            " Hz must be below Nyquist " + std::to_string(nyq) + " Hz");
    }

    const FirKey key = {channel.r_total_ohm(), channel.l_total_h(),
                        channel.termination_ohm, channel.band_low_hz,
                        channel.band_high_hz, sample_rate_hz,
                        static_cast<double>(tap_count), 0.0};
    {
        std::lock_guard<std::mutex> lock(g_fir_cache_mutex);
        const auto it = g_fir_cache.find(key);
        if (it != g_fir_cache.end()) return it->second;
    }

    const std::size_t n_taps = tap_count;
    const std::size_t grid = 16384;

    // dense grid over [0, fs/2]; relative-error weights across the band,
    // loose absolute weights elsewhere, near-zero in the sub-band gap
    std::vector<double> freq(grid), wgt(grid);
    std::vector<std::complex<double>> target(grid);
    const double in_lo = channel.band_low_hz * 0.98;
    const double in_hi = std::min(channel.band_high_hz * 1.02, 0.98 * nyq);
    double wgt_inband_sum = 0.0;
    std::size_t inband_count = 0;
    for (std::size_t i = 0; i < grid; ++i) {
        freq[i] = nyq * static_cast<double>(i) / static_cast<double>(grid - 1);
        target[i] = transfer_gain(channel, freq[i]);
        const double mag = std::abs(target[i]);
        if (freq[i] >= in_lo && freq[i] <= in_hi) {
            wgt[i] = 1.0 / (mag * mag);
            wgt_inband_sum += wgt[i];
            ++inband_count;
        } else {
            wgt[i] = 0.0;  // filled below
        }
    }
    const double wgt_mean = wgt_inband_sum / static_cast<double>(inband_count);
    for (std::size_t i = 0; i < grid; ++i) {
        if (wgt[i] != 0.0) continue;
        wgt[i] = freq[i] < in_lo ? 1e-8 * wgt_mean : 1e-6 * wgt_mean;
    }

    // normal equations: Toeplitz kernel T[d] = sum_i w_i cos(om_i d),
    // rhs b[m] = sum_i w_i Re(H_i exp(j om_i m))
    std::vector<double> toe(n_taps, 0.0), rhs(n_taps, 0.0);
    for (std::size_t i = 0; i < grid; ++i) {
        const double om = 2.0 * kPi * freq[i] / sample_rate_hz;
        const std::complex<double> rot(std::cos(om), std::sin(om));
        std::complex<double> e(1.0, 0.0);
        const double w = wgt[i];
        const std::complex<double> wh = w * target[i];
        for (std::size_t d = 0; d < n_taps; ++d) {
            toe[d] += w * e.real();
            rhs[d] += (wh * e).real();
            e *= rot;
        }
    }

    Eigen::MatrixXd a(n_taps, n_taps);
    for (std::size_t m = 0; m < n_taps; ++m) {
        for (std::size_t n = 0; n < n_taps; ++n) {
            a(static_cast<Eigen::Index>(m), static_cast<Eigen::Index>(n)) =
                toe[m >= n ? m - n : n - m];
        }
    }
    const double ridge = 1e-10 * toe[0];
    for (std::size_t m = 0; m < n_taps; ++m) {
        a(static_cast<Eigen::Index>(m), static_cast<Eigen::Index>(m)) += ridge;
    }
    Eigen::Map<const Eigen::VectorXd> b(rhs.data(), static_cast<Eigen::Index>(n_taps));

    const Eigen::LDLT<Eigen::MatrixXd> solver(a);
    Eigen::VectorXd h = solver.solve(b);

    // pin the DC gain exactly to H(0) (KKT correction along A^-1 * 1)
    const Eigen::VectorXd ones = Eigen::VectorXd::Ones(static_cast<Eigen::Index>(n_taps));
    const Eigen::VectorXd corr = solver.solve(ones);
    const double dc_target = transfer_gain(channel, 0.0).real();
    const double lambda = (dc_target - h.sum()) / corr.sum();
    h += lambda * corr;

    FirFilter f;
    f.kind = FirKind::channel;
    f.design_sample_rate_hz = sample_rate_hz;
    f.window_name = "least-squares";
    f.taps.assign(h.data(), h.data() + h.size());

    // self-check: 1% relative magnitude across the allocated band
    double worst = 0.0;
    const std::size_t check_points = 601;
    for (std::size_t i = 0; i < check_points; ++i) {
        const double fq = channel.band_low_hz +
                          (channel.band_high_hz - channel.band_low_hz) *
                              static_cast<double>(i) / static_cast<double>(check_points - 1);
        double mag = 0.0;
        fir_response(f.taps, fq, sample_rate_hz, &mag, nullptr);
        const double want = std::abs(transfer_gain(channel, fq));
        worst = std::max(worst, std::abs(mag - want) / want);
    }
    if (worst > 0.01) {
        throw std::runtime_error(
            "channel_fir: tap_count " + std::to_string(tap_count) +
            " too small for the 1% in-band tolerance (achieved " +
            std::to_string(worst * 100.0) + "%)");
    }
    {
        std::lock_guard<std::mutex> lock(g_fir_cache_mutex);
        g_fir_cache.emplace(key, f);
    }
    return f;
}

DiscreteSignal interference_waveform(const LineChannel& channel,
                                     const DiscreteSignal& like) {
    DiscreteSignal out;
    out.sample_rate_hz = like.sample_rate_hz;
    out.start_time_s = like.start_time_s;
    out.samples.resize(like.samples.size());
    const double w = 2.0 * kPi * channel.power_freq_hz / like.sample_rate_hz;
    for (std::size_t i = 0; i < out.samples.size(); ++i) {
        out.samples[i] = channel.power_amplitude * std::sin(w * static_cast<double>(i));
    }
    return out;
}

double inband_power(const DiscreteSignal& signal, double band_low_hz,
                    double band_high_hz) {
    const std::size_t n = signal.samples.size();
    if (n == 0) return 0.0;
    const std::size_t seg = std::min<std::size_t>(fft::next_pow2(n), 65536);
    std::vector<fft::cplx> buf(seg);
    double acc = 0.0;
    for (std::size_t off = 0; off < n; off += seg) {
        const std::size_t m = std::min(seg, n - off);
        for (std::size_t i = 0; i < m; ++i) buf[i] = fft::cplx(signal.samples[off + i], 0.0);
        for (std::size_t i = m; i < seg; ++i) buf[i] = fft::cplx(0.0, 0.0);
        fft::transform_pow2(buf, false);
        const double res = signal.sample_rate_hz / static_cast<double>(seg);
        // single-sided accumulation of |X|^2 inside the band
        for (std::size_t k = 0; k <= seg / 2; ++k) {
            const double fq = res * static_cast<double>(k);
            if (fq < band_low_hz || fq > band_high_hz) continue;
            const double e = std::norm(buf[k]);
            acc += (k == 0 || k == seg / 2) ? e : 2.0 * e;
        }
    }
    // Parseval: sum_k |X_k|^2 / seg = segment energy
    return acc / static_cast<double>(seg) / static_cast<double>(n);
}

PropagationResult propagate(const DiscreteSignal& signal, const LineChannel& channel) {
    channel.validate();
    signal.validate("propagate");

    const FirFilter h = channel_fir(channel, signal.sample_rate_hz, channel.fir_taps);
    DiscreteSignal comm = apply_filter_causal(signal, h);

    double gain = 1.0;
    if (channel.agc_enabled) {
        const double p_tx = inband_power(signal, channel.band_low_hz, channel.band_high_hz);
        const double p_rx = inband_power(comm, channel.band_low_hz, channel.band_high_hz);
        if (p_rx > 0.0 && p_tx > 0.0) gain = std::sqrt(p_tx / p_rx);
        for (double& v : comm.samples) v *= gain;
    }

    if (channel.power_amplitude > 0.0) {
        const DiscreteSignal pf = interference_waveform(channel, comm);
        for (std::size_t i = 0; i < comm.samples.size(); ++i) {
            comm.samples[i] += pf.samples[i];
        }
    }

    PropagationResult res;
    res.output = add_noise(comm, channel.noise);
    res.agc_gain = gain;
    return res;
}

}  // namespace plcsim
