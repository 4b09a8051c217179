#include "plcsim/ber.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <future>
#include <map>
#include <numbers>
#include <stdexcept>

#include "plcsim/align.hpp"
#include "plcsim/noise.hpp"

namespace plcsim {

namespace {

double q_function(double x) { return 0.5 * std::erfc(x / std::sqrt(2.0)); }

// average energy per bit at the demodulator input, the shared Eb metric for
// every scheme (for OOK this averages mark and space intervals)
double measure_eb(const DiscreteSignal& comm, std::size_t n_bits) {
    double energy = 0.0;
    for (double v : comm.samples) energy += v * v;
    return n_bits == 0 ? 0.0
                       : energy / comm.sample_rate_hz / static_cast<double>(n_bits);
}

// narrow prefilter over the scheme's occupied band; concentrates the
// correlation SNR for delay estimation independently of the receiver chain
FirFilter alignment_prefilter(const ModemConfig& m) {
    const double nyq = m.sample_rate_hz / 2.0;
    double center, bw;
    if (m.scheme == Scheme::bfsk) {
        center = m.center_hz;
        bw = 2.0 * m.deviation_hz + 4.0 * m.bit_rate_hz;
    } else {
        center = m.carrier_hz;
        bw = 4.0 * m.bit_rate_hz;
    }
    double lo = std::max(center - bw / 2.0, 0.005 * nyq);
    double hi = std::min(center + bw / 2.0, 0.99 * nyq);
    return design_bandpass((lo + hi) / 2.0, hi - lo, 301, m.sample_rate_hz);
}

}  // namespace

const char* trial_status_name(TrialStatus s) {
    return s == TrialStatus::ok ? "ok" : "alignment_failed";
}

double theoretical_ber(Scheme scheme, double ebn0_db) {
    if (!std::isfinite(ebn0_db)) {
        throw std::invalid_argument("theoretical_ber: ebn0_db must be finite");
    }
    const double g = std::pow(10.0, ebn0_db / 10.0);
    switch (scheme) {
        case Scheme::bpsk: return q_function(std::sqrt(2.0 * g));
        case Scheme::bfsk: return 0.5 * std::exp(-g / 2.0);
        case Scheme::ask: return 0.5 * std::exp(-g / 4.0);
    }
    throw std::logic_error("theoretical_ber: bad scheme");
}

const char* theoretical_ber_formula(Scheme scheme) {
    switch (scheme) {
        case Scheme::bpsk: return "Q(sqrt(2*Eb/N0))";
        case Scheme::bfsk: return "0.5*exp(-Eb/N0/2)";
        case Scheme::ask: return "0.5*exp(-Eb/N0/4)";
    }
    return "?";
}

BerReport run_trial(const TrialSpec& spec) {
    const auto t0 = std::chrono::steady_clock::now();
    if (spec.n_bits < 1) throw std::invalid_argument("run_trial: n_bits must be >= 1");
    ModemConfig modem = spec.modem;
    modem.scheme = spec.scheme;
    modem.validate();
    // +inf Eb/N0 means a noiseless trial
    if (std::isnan(spec.ebn0_db) ||
        spec.ebn0_db == -std::numeric_limits<double>::infinity()) {
        throw std::invalid_argument("run_trial: ebn0_db must be finite or +inf");
    }
    const std::size_t spb = modem.samples_per_bit();

    const BitStream bits = BitStream::random(spec.n_bits, mix_seed(spec.base_seed, 0xb175));
    const DiscreteSignal tx = modulate(bits, modem);

    // clean communication component at the demodulator input
    DiscreteSignal comm;
    double carrier_phase = 0.0;  // genie reference for coherent BPSK
    if (spec.mode == ChannelMode::line) {
        spec.channel.validate();
        if (spec.scheme == Scheme::bfsk) {
            if (modem.f0_hz() < spec.channel.band_low_hz ||
                modem.f1_hz() > spec.channel.band_high_hz) {
                throw std::invalid_argument("run_trial: BFSK tones outside the channel band");
            }
        }
        LineChannel quiet = spec.channel;
        quiet.noise = NoiseSpec::disabled();
        quiet.power_amplitude = 0.0;
        comm = propagate(tx, quiet).output;
        carrier_phase = std::arg(transfer_gain(spec.channel, modem.carrier_hz));
    } else {
        comm = tx;
    }

    const double eb = measure_eb(comm, spec.n_bits);
    double noise_var = 0.0;
    if (std::isfinite(spec.ebn0_db)) {
        const double gamma = std::pow(10.0, spec.ebn0_db / 10.0);
        noise_var = eb / gamma * modem.sample_rate_hz / 2.0;
    }

    DiscreteSignal rx = std::move(comm);
    if (spec.mode == ChannelMode::line && spec.channel.power_amplitude > 0.0) {
        const DiscreteSignal pf = interference_waveform(spec.channel, rx);
        for (std::size_t i = 0; i < rx.samples.size(); ++i) rx.samples[i] += pf.samples[i];
    }
    if (noise_var > 0.0) {
        rx = add_noise(rx, NoiseSpec::from_power(noise_var, mix_seed(spec.base_seed, 0x401e)));
    }

    BerReport rep;
    rep.scheme = spec.scheme;
    rep.ebn0_db = spec.ebn0_db;

    // delay alignment against the transmitted waveform. The received window
    // is prefiltered to the scheme's occupied band so that out-of-band
    // noise and interference do not dilute the normalized correlation; the
    // 0.2 failure threshold then tracks link integrity, not raw sample SNR.
    const std::size_t max_lag = std::min(rx.samples.size() - 1, 4 * spb);
    DiscreteSignal ref_win, rx_win;
    ref_win.sample_rate_hz = rx_win.sample_rate_hz = modem.sample_rate_hz;
    const std::size_t ref_len = std::min(tx.samples.size(),
                                         std::max<std::size_t>(256 * spb, 4 * max_lag));
    ref_win.samples.assign(tx.samples.begin(),
                           tx.samples.begin() + static_cast<std::ptrdiff_t>(ref_len));
    const std::size_t rx_len = std::min(rx.samples.size(), ref_len + max_lag);
    rx_win.samples.assign(rx.samples.begin(),
                          rx.samples.begin() + static_cast<std::ptrdiff_t>(rx_len));
    rx_win = apply_filter(rx_win, alignment_prefilter(modem));
    AlignResult align;
    bool ref_all_zero = true;
    for (double v : ref_win.samples) {
        if (v != 0.0) { ref_all_zero = false; break; }
    }
    if (ref_all_zero) {
        align.lag = 0;  // all-zero OOK payload: nothing to align against
        align.peak_ncc = 1.0;
    } else {
        align = align_delay(ref_win, rx_win, std::min(max_lag, rx_win.samples.size() - 1));
    }
    rep.aligned_lag = static_cast<long long>(align.lag);
    if (align.peak_ncc < 0.2) {
        rep.status = TrialStatus::alignment_failed;
        rep.bits_sent = spec.n_bits;
        rep.elapsed_s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        return rep;
    }

    DiscreteSignal rx_aligned;
    rx_aligned.sample_rate_hz = rx.sample_rate_hz;
    rx_aligned.samples.assign(rx.samples.begin() + static_cast<std::ptrdiff_t>(align.lag),
                              rx.samples.end());

    // dropping `lag` samples rotates the received carrier reference
    DemodOptions opt;
    const double w_carrier = 2.0 * std::numbers::pi * modem.carrier_hz / modem.sample_rate_hz;
    opt.psk_reference_phase_rad =
        carrier_phase + w_carrier * static_cast<double>(align.lag);
    const BitStream decoded = demodulate(rx_aligned, modem, opt);

    const std::size_t overlap = std::min(decoded.size(), bits.size());
    std::size_t errors = 0;
    for (std::size_t i = 0; i < overlap; ++i) {
        if (decoded.bits[i] != bits.bits[i]) ++errors;
    }
    rep.bits_sent = overlap;
    rep.bit_errors = errors;
    rep.ber = overlap > 0 ? static_cast<double>(errors) / static_cast<double>(overlap) : 0.0;
    if (overlap > 0) {
        const double p = rep.ber;
        rep.ci_halfwidth_95 = 1.96 * std::sqrt(p * (1.0 - p) / static_cast<double>(overlap));
    }
    rep.status = TrialStatus::ok;
    rep.elapsed_s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return rep;
}

std::vector<BerReport> ber_sweep(const std::vector<Scheme>& schemes,
                                 const std::vector<double>& ebn0_list_db,
                                 std::size_t n_bits, const ModemConfig& modem,
                                 ChannelMode mode, const LineChannel& channel,
                                 std::uint64_t base_seed, unsigned threads) {
    if (schemes.empty() || ebn0_list_db.empty()) {
        throw std::invalid_argument("ber_sweep: schemes and ebn0 lists must be nonempty");
    }
    std::vector<TrialSpec> cells;
    cells.reserve(schemes.size() * ebn0_list_db.size());
    for (std::size_t si = 0; si < schemes.size(); ++si) {
        for (std::size_t ei = 0; ei < ebn0_list_db.size(); ++ei) {
            TrialSpec t;
            t.scheme = schemes[si];
            t.modem = modem;
            t.mode = mode;
            t.channel = channel;
            t.ebn0_db = ebn0_list_db[ei];
            t.n_bits = n_bits;
            t.base_seed = mix_seed(base_seed, si + 1, ei + 1);
            cells.push_back(std::move(t));
        }
    }
    std::vector<BerReport> reports(cells.size());
    if (threads <= 1) {
        for (std::size_t i = 0; i < cells.size(); ++i) reports[i] = run_trial(cells[i]);
        return reports;
    }
    std::size_t next = 0;
    while (next < cells.size()) {
        const std::size_t batch = std::min<std::size_t>(threads, cells.size() - next);
        std::vector<std::future<BerReport>> futs;
        futs.reserve(batch);
        for (std::size_t i = 0; i < batch; ++i) {
            futs.push_back(std::async(std::launch::async, run_trial, cells[next + i]));
        }
        for (std::size_t i = 0; i < batch; ++i) reports[next + i] = futs[i].get();
        next += batch;
    }
    return reports;
}

SchemeComparison compare_schemes(const std::vector<BerReport>& reports) {
    std::map<double, std::vector<const BerReport*>> by_ebn0;
    std::map<Scheme, std::size_t> scheme_count;
    for (const auto& r : reports) {
        by_ebn0[r.ebn0_db].push_back(&r);
        ++scheme_count[r.scheme];
    }
    if (scheme_count.empty()) {
        throw std::invalid_argument("compare_schemes: no reports");
    }
    const std::size_t n_schemes = scheme_count.size();
    for (const auto& [ebn0, list] : by_ebn0) {
        if (list.size() != n_schemes) {
            throw std::invalid_argument(
                "compare_schemes: schemes do not share the Eb/N0 grid (at " +
                std::to_string(ebn0) + " dB)");
        }
    }

    SchemeComparison cmp;
    std::map<Scheme, double> worst_score;
    for (const auto& [ebn0, list] : by_ebn0) {
        ComparisonRow row;
        row.ebn0_db = ebn0;
        for (const auto* r : list) {
            row.ranking.push_back({r->scheme, r->ber, r->ci_halfwidth_95});
        }
        std::sort(row.ranking.begin(), row.ranking.end(),
                  [](const RankedEntry& a, const RankedEntry& b) { return a.ber < b.ber; });
        for (std::size_t i = 0; i + 1 < row.ranking.size(); ++i) {
            const auto& lo = row.ranking[i];
            const auto& hi = row.ranking[i + 1];
            // 3-sigma pooled binomial significance (ci = 1.96 sigma)
            const double s_lo = lo.ci_halfwidth_95 / 1.96;
            const double s_hi = hi.ci_halfwidth_95 / 1.96;
            const double gap = hi.ber - lo.ber;
            row.gap_significant.push_back(gap > 3.0 * std::sqrt(s_lo * s_lo + s_hi * s_hi));
        }
        if (!row.ranking.empty()) {
            worst_score[row.ranking.back().scheme] += 1.0;
            worst_score[row.ranking.back().scheme] += row.ranking.back().ber * 1e-9;
        }
        cmp.rows.push_back(std::move(row));
    }
    cmp.worst = std::max_element(worst_score.begin(), worst_score.end(),
                                 [](const auto& a, const auto& b) {
                                     return a.second < b.second;
                                 })
                    ->first;
    cmp.verdict = std::string("worst scheme by measured BER: ") + scheme_name(cmp.worst);
    return cmp;
}

}  // namespace plcsim
