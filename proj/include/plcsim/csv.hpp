#pragma once

#include <string>
#include <vector>

#include "plcsim/ber.hpp"
#include "plcsim/fault.hpp"
#include "plcsim/signal.hpp"
#include "plcsim/spectrum.hpp"

namespace plcsim {

/// All CSV values are written with 9 significant digits.

/// header: time_s,amplitude
void write_signal_csv(const std::string& path, const DiscreteSignal& signal);
DiscreteSignal read_signal_csv(const std::string& path);

/// header: freq_hz,magnitude
void write_spectrum_csv(const std::string& path, const Spectrum& spectrum);

/// header: time_s,va,vb,vc,ia,ib,ic
void write_three_phase_csv(const std::string& path, const ThreePhaseWaveform& w);

/// header: mechanism,tripped,trip_time_s,latency_cycles
void write_relay_log_csv(const std::string& path, const std::vector<RelayEvent>& events);

/// header: scheme,ebn0_db,bits,errors,ber,ci95,theory_ber,status
void write_ber_csv(const std::string& path, const std::vector<BerReport>& reports);

/// header: freq_hz,mag,phase_deg
void write_response_csv(const std::string& path, const std::vector<double>& freq_hz,
                        const std::vector<double>& mag,
                        const std::vector<double>& phase_deg);

void write_text_file(const std::string& path, const std::string& text);
std::string read_text_file(const std::string& path);

}  // namespace plcsim
