#include "plcsim/fault.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "plcsim/filter.hpp"

namespace plcsim {

namespace {

constexpr double kPi = std::numbers::pi;

}  // namespace

const char* fault_type_name(FaultType t) {
    switch (t) {
        case FaultType::lg: return "lg";
        case FaultType::ll: return "ll";
        case FaultType::llg: return "llg";
        case FaultType::lll: return "lll";
        case FaultType::lllg: return "lllg";
    }
    return "?";
}

FaultType fault_type_from_name(const std::string& name) {
    if (name == "lg") return FaultType::lg;
    if (name == "ll") return FaultType::ll;
    if (name == "llg") return FaultType::llg;
    if (name == "lll") return FaultType::lll;
    if (name == "lllg") return FaultType::lllg;
    throw std::invalid_argument("unknown fault type '" + name + "' (lg|ll|llg|lll|lllg)");
}

std::size_t fault_type_phase_count(FaultType t) {
    switch (t) {
        case FaultType::lg: return 1;
        case FaultType::ll:
        case FaultType::llg: return 2;
        case FaultType::lll:
        case FaultType::lllg: return 3;
    }
    return 0;
}

const char* relay_mechanism_name(RelayMechanism m) {
    return m == RelayMechanism::carrier_sense ? "carrier_sense" : "impedance";
}

void FaultScenario::validate(const ThreePhaseWaveform& w) const {
    if (!(onset_s >= 0.0) || onset_s >= w.va.duration_s()) {
        throw std::invalid_argument("FaultScenario: onset outside the waveform duration");
    }
    if (fault_impedance_ohm < 0.0 || std::isnan(fault_impedance_ohm)) {
        throw std::invalid_argument("FaultScenario: fault impedance must be >= 0");
    }
    if (!(source_impedance_ohm > 0.0)) {
        throw std::invalid_argument("FaultScenario: source impedance must be > 0");
    }
    std::size_t n = 0;
    for (bool p : affected_phases) n += p ? 1 : 0;
    if (n != fault_type_phase_count(fault_type)) {
        throw std::invalid_argument(
            std::string("FaultScenario: ") + fault_type_name(fault_type) + " involves " +
            std::to_string(fault_type_phase_count(fault_type)) +
            " phase(s), got " + std::to_string(n));
    }
}

ThreePhaseWaveform generate_three_phase(double nominal_kv, double freq_hz,
                                        double load_ohm, double duration_s,
                                        double sample_rate_hz) {
    if (!(nominal_kv > 0.0) || !(freq_hz > 0.0) || !(duration_s > 0.0) ||
        !(sample_rate_hz > 0.0)) {
        throw std::invalid_argument("generate_three_phase: parameters must be positive");
    }
    if (!(load_ohm > 0.0)) {
        throw std::invalid_argument("generate_three_phase: load impedance must be > 0");
    }
    const auto n = static_cast<std::size_t>(std::llround(duration_s * sample_rate_hz));
    // line-to-line RMS -> per-phase peak
    const double v_peak = nominal_kv * 1e3 * std::sqrt(2.0) / std::sqrt(3.0);
    const double w = 2.0 * kPi * freq_hz / sample_rate_hz;

    ThreePhaseWaveform out;
    out.nominal_voltage_kv = nominal_kv;
    out.frequency_hz = freq_hz;
    out.load_ohm = load_ohm;
    for (DiscreteSignal* s : {&out.va, &out.vb, &out.vc, &out.ia, &out.ib, &out.ic}) {
        s->sample_rate_hz = sample_rate_hz;
        s->samples.resize(n);
    }
    const double shifts[3] = {0.0, -2.0 * kPi / 3.0, 2.0 * kPi / 3.0};
    DiscreteSignal* vs[3] = {&out.va, &out.vb, &out.vc};
    DiscreteSignal* is[3] = {&out.ia, &out.ib, &out.ic};
    for (std::size_t p = 0; p < 3; ++p) {
        for (std::size_t i = 0; i < n; ++i) {
            const double v = v_peak * std::sin(w * static_cast<double>(i) + shifts[p]);
            vs[p]->samples[i] = v;
            is[p]->samples[i] = v / load_ohm;
        }
    }
    return out;
}

ThreePhaseWaveform inject_fault(const ThreePhaseWaveform& waveform,
                                const FaultScenario& scenario) {
    scenario.validate(waveform);
    ThreePhaseWaveform out = waveform;
    if (std::isinf(scenario.fault_impedance_ohm)) return out;  // "no fault" sentinel

    const double fs = waveform.sample_rate_hz();
    const std::size_t n = waveform.size();
    auto onset = static_cast<std::size_t>(std::ceil(scenario.onset_s * fs - 1e-9));
    if (onset > n) onset = n;

    const double zs = scenario.source_impedance_ohm;
    const double zf = scenario.fault_impedance_ohm;
    const double rl = waveform.load_ohm;
    const double emf_scale = (rl + zs) / rl;  // load voltage -> source EMF

    const DiscreteSignal* v_in[3] = {&waveform.va, &waveform.vb, &waveform.vc};
    DiscreteSignal* v_out[3] = {&out.va, &out.vb, &out.vc};
    DiscreteSignal* i_out[3] = {&out.ia, &out.ib, &out.ic};

    if (scenario.fault_type == FaultType::ll) {
        // ungrounded phase pair: loop current driven by the pair EMF difference
        int p = -1, q = -1;
        for (int k = 0; k < 3; ++k) {
            if (!scenario.affected_phases[static_cast<std::size_t>(k)]) continue;
            if (p < 0) p = k; else q = k;
        }
        for (std::size_t i = onset; i < n; ++i) {
            const double ep = v_in[p]->samples[i] * emf_scale;
            const double eq = v_in[q]->samples[i] * emf_scale;
            const double loop = (ep - eq) / (2.0 * zs + zf);
            i_out[p]->samples[i] = loop;
            i_out[q]->samples[i] = -loop;
            v_out[p]->samples[i] = ep - loop * zs;
            v_out[q]->samples[i] = eq + loop * zs;
        }
        return out;
    }

    // ground-referenced faults (and the balanced three-phase case): each
    // affected phase collapses onto its own source/fault divider
    for (std::size_t p = 0; p < 3; ++p) {
        if (!scenario.affected_phases[p]) continue;
        for (std::size_t i = onset; i < n; ++i) {
            const double e = v_in[p]->samples[i] * emf_scale;
            const double cur = e / (zs + zf);
            i_out[p]->samples[i] = cur;
            v_out[p]->samples[i] = e - cur * zs;
        }
    }
    return out;
}

namespace {

// sliding mean-square over a window of w samples, ending at index t
struct SlidingPower {
    std::vector<double> prefix;
    explicit SlidingPower(const std::vector<double>& x) : prefix(x.size() + 1, 0.0) {
        for (std::size_t i = 0; i < x.size(); ++i) {
            prefix[i + 1] = prefix[i] + x[i] * x[i];
        }
    }
    double mean_square(std::size_t end, std::size_t w) const {
        return (prefix[end] - prefix[end - w]) / static_cast<double>(w);
    }
};

}  // namespace

RelayEvent carrier_sense_relay(const DiscreteSignal& line_signal, double carrier_hz,
                               double threshold_ratio, double window_cycles,
                               double power_freq_hz, double pilot_bandwidth_hz,
                               std::size_t bandpass_taps) {
    if (!(window_cycles >= 1.0)) {
        throw std::invalid_argument("carrier_sense_relay: window_cycles must be >= 1");
    }
    if (!(threshold_ratio > 0.0) || threshold_ratio >= 1.0) {
        throw std::invalid_argument("carrier_sense_relay: threshold_ratio must be in (0, 1)");
    }
    const double fs = line_signal.sample_rate_hz;
    const auto window =
        static_cast<std::size_t>(std::llround(window_cycles * fs / power_freq_hz));
    if (window < 2 || line_signal.samples.size() < 2 * window) {
        throw std::invalid_argument(
            "carrier_sense_relay: no pre-fault baseline window available");
    }
    const double bw = pilot_bandwidth_hz > 0.0 ? pilot_bandwidth_hz : 0.6 * carrier_hz;
    const FirFilter bp = design_bandpass(carrier_hz, bw, bandpass_taps, fs);
    const DiscreteSignal inband = apply_filter(line_signal, bp);

    const SlidingPower power(inband.samples);
    const double baseline = power.mean_square(window, window);

    RelayEvent ev;
    ev.mechanism = RelayMechanism::carrier_sense;
    for (std::size_t end = 2 * window; end <= inband.samples.size(); ++end) {
        if (power.mean_square(end, window) < threshold_ratio * baseline) {
            ev.tripped = true;
            ev.trip_time_s = static_cast<double>(end) / fs;
            break;
        }
    }
    return ev;
}

RelayEvent impedance_relay(const DiscreteSignal& voltage_signal,
                           const DiscreteSignal& current_signal, double reach_ohm,
                           double window_cycles, double power_freq_hz,
                           double current_floor_a) {
    if (voltage_signal.samples.size() != current_signal.samples.size() ||
        voltage_signal.sample_rate_hz != current_signal.sample_rate_hz) {
        throw std::invalid_argument("impedance_relay: voltage/current signals must align");
    }
    if (!(window_cycles >= 1.0)) {
        throw std::invalid_argument("impedance_relay: window_cycles must be >= 1");
    }
    const double fs = voltage_signal.sample_rate_hz;
    const auto window =
        static_cast<std::size_t>(std::llround(window_cycles * fs / power_freq_hz));
    if (window < 2 || voltage_signal.samples.size() < window) {
        throw std::invalid_argument("impedance_relay: signal shorter than one window");
    }

    const SlidingPower pv(voltage_signal.samples);
    const SlidingPower pi(current_signal.samples);

    RelayEvent ev;
    ev.mechanism = RelayMechanism::impedance;
    bool any_live = false;
    for (std::size_t end = window; end <= voltage_signal.samples.size(); ++end) {
        const double rms_i = std::sqrt(pi.mean_square(end, window));
        if (rms_i < current_floor_a) continue;  // dead line, not a trip
        any_live = true;
        const double rms_v = std::sqrt(pv.mean_square(end, window));
        if (rms_v / rms_i < reach_ohm) {
            ev.tripped = true;
            ev.trip_time_s = static_cast<double>(end) / fs;
            break;
        }
    }
    if (!ev.tripped && !any_live) ev.status = RelayStatus::no_current;
    return ev;
}

RelayEvent latency_from_onset(RelayEvent event, double onset_s, double freq_hz) {
    if (event.tripped) {
        event.latency_cycles = std::max(0.0, (event.trip_time_s - onset_s) * freq_hz);
    }
    return event;
}

}  // namespace plcsim
