#pragma once

#include <array>
#include <string>

#include "plcsim/signal.hpp"

namespace plcsim {

/// Balanced three-phase voltages and the matching load currents.
struct ThreePhaseWaveform {
    DiscreteSignal va, vb, vc;  // phase voltages, volts
    DiscreteSignal ia, ib, ic;  // phase currents, amperes
    double nominal_voltage_kv = 138.0;  // line-to-line RMS
    double frequency_hz = 60.0;
    double load_ohm = 1000.0;

    std::size_t size() const { return va.samples.size(); }
    double sample_rate_hz() const { return va.sample_rate_hz; }
};

enum class FaultType { lg, ll, llg, lll, lllg };

const char* fault_type_name(FaultType t);
FaultType fault_type_from_name(const std::string& name);

/// Number of phases a fault type must involve.
std::size_t fault_type_phase_count(FaultType t);

struct FaultScenario {
    FaultType fault_type = FaultType::lllg;
    double onset_s = 0.1;
    double fault_impedance_ohm = 0.001;     // +inf = "no fault" sentinel
    std::array<bool, 3> affected_phases = {true, true, true};  // a, b, c
    double source_impedance_ohm = 5.0;      // Thevenin source model

    void validate(const ThreePhaseWaveform& w) const;
};

enum class RelayMechanism { carrier_sense, impedance };
enum class RelayStatus { ok, no_current };

struct RelayEvent {
    RelayMechanism mechanism = RelayMechanism::carrier_sense;
    bool tripped = false;
    double trip_time_s = 0.0;       // valid when tripped
    double latency_cycles = 0.0;    // filled by latency_from_onset()
    RelayStatus status = RelayStatus::ok;
};

const char* relay_mechanism_name(RelayMechanism m);

/// Balanced sinusoidal set; per-phase peak = nominal_kv * sqrt(2)/sqrt(3) * 1e3,
/// phases at 0 / -120 / +120 degrees, currents = voltage / load (resistive).
ThreePhaseWaveform generate_three_phase(double nominal_kv, double freq_hz,
                                        double load_ohm, double duration_s,
                                        double sample_rate_hz);

/// Thevenin-model fault injection: samples strictly before the onset are
/// copied unchanged; from the onset on, the affected phases follow
///   ground faults : I = E/(Zs + Zf),        V = E - I*Zs
///   L-L fault     : I = (Ep - Eq)/(2 Zs + Zf) through the phase pair
/// with E the source EMF reconstructed from the pre-fault divider.
/// An infinite fault impedance returns the waveform unchanged.
ThreePhaseWaveform inject_fault(const ThreePhaseWaveform& waveform,
                                const FaultScenario& scenario);

/// Loss-of-carrier detection: in-band pilot power over a sliding window
/// (window_cycles power cycles) against the first-window baseline; trips
/// when the power stays below threshold_ratio * baseline for a full window.
/// threshold_ratio compares powers, not amplitudes.
RelayEvent carrier_sense_relay(const DiscreteSignal& line_signal, double carrier_hz,
                               double threshold_ratio, double window_cycles,
                               double power_freq_hz,
                               double pilot_bandwidth_hz = 0.0,  // 0 -> 0.6 * carrier
                               std::size_t bandpass_taps = 301);

/// Distance relay: apparent impedance RMS(V)/RMS(I) per sliding window;
/// trips when it drops strictly below reach_ohm. Windows whose current RMS
/// is below current_floor_a are dead; if every window is dead the event
/// reports status no_current instead of a trip decision.
RelayEvent impedance_relay(const DiscreteSignal& voltage_signal,
                           const DiscreteSignal& current_signal, double reach_ohm,
                           double window_cycles, double power_freq_hz,
                           double current_floor_a = 1e-3);

/// Trip latency in power cycles relative to the fault onset.
RelayEvent latency_from_onset(RelayEvent event, double onset_s, double freq_hz);

}  // namespace plcsim
