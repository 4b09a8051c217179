#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "plcsim/channel.hpp"
#include "plcsim/modem.hpp"

namespace plcsim {

enum class ChannelMode {
    awgn_only,  // identity channel, noise set from Eb/N0 only
    line         // full line: channel FIR, AGC, 60 Hz interference, then noise
};

/// One Monte-Carlo link trial. Noise is calibrated from the average energy
/// per bit measured at the demodulator input (post channel and AGC), the
/// same metric for every scheme: N0 = Eb/gamma, per-sample variance
/// N0*fs/2. ebn0_db may be +inf for a noiseless trial.
struct TrialSpec {
    Scheme scheme = Scheme::bpsk;
    ModemConfig modem;
    ChannelMode mode = ChannelMode::awgn_only;
    LineChannel channel = LineChannel::identity();
    double ebn0_db = 10.0;
    std::size_t n_bits = 1000;
    std::uint64_t base_seed = 1;
};

enum class TrialStatus { ok, alignment_failed };

const char* trial_status_name(TrialStatus s);

struct BerReport {
    Scheme scheme = Scheme::bpsk;
    double ebn0_db = 0.0;
    std::size_t bits_sent = 0;
    std::size_t bit_errors = 0;
    double ber = 0.0;
    double ci_halfwidth_95 = 0.0;  // binomial normal approximation
    long long aligned_lag = 0;
    double elapsed_s = 0.0;
    TrialStatus status = TrialStatus::ok;
};

/// random bits -> modulate -> propagate -> noise -> align -> demodulate ->
/// count mismatches over the aligned overlap. Deterministic for a fixed
/// base_seed (elapsed_s excepted). A correlation peak below 0.2 yields
/// status alignment_failed instead of a bogus BER.
BerReport run_trial(const TrialSpec& spec);

/// One report per (scheme, Eb/N0) cell, scheme-major order. Cell seeds are
/// mix_seed(base_seed, scheme_index + 1, ebn0_index + 1), so cells are
/// deterministic and mutually decorrelated. Per-cell failures are reported
/// in the corresponding row without aborting the sweep.
std::vector<BerReport> ber_sweep(const std::vector<Scheme>& schemes,
                                 const std::vector<double>& ebn0_list_db,
                                 std::size_t n_bits, const ModemConfig& modem,
                                 ChannelMode mode, const LineChannel& channel,
                                 std::uint64_t base_seed, unsigned threads = 1);

/// Closed-form reference curves (gamma = Eb/N0, linear):
///   bpsk : Q(sqrt(2 gamma))        (coherent)
///   bfsk : exp(-gamma/2) / 2       (noncoherent orthogonal)
///   ask  : exp(-gamma/4) / 2       (noncoherent on-off keying)
double theoretical_ber(Scheme scheme, double ebn0_db);

/// Human-readable formula for the reference curve.
const char* theoretical_ber_formula(Scheme scheme);

struct RankedEntry {
    Scheme scheme;
    double ber = 0.0;
    double ci_halfwidth_95 = 0.0;
};

struct ComparisonRow {
    double ebn0_db = 0.0;
    std::vector<RankedEntry> ranking;       // best (lowest BER) first
    std::vector<bool> gap_significant;      // ranking.size()-1 adjacent gaps, 3-sigma
};

struct SchemeComparison {
    std::vector<ComparisonRow> rows;
    Scheme worst;
    std::string verdict;
};

/// Ranking table across schemes sharing an Eb/N0 grid; adjacent gaps are
/// flagged significant when they exceed 3x the pooled binomial sigma. The
/// verdict line names the worst scheme. Throws on mismatched grids.
SchemeComparison compare_schemes(const std::vector<BerReport>& reports);

}  // namespace plcsim
