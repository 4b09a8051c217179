#include "plcsim/csv.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace plcsim {

namespace {

std::string fmt9(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.9g", v);
    return buf;
}

std::ofstream open_out(const std::string& path) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error("cannot open for writing: " + path);
    return f;
}

}  // namespace

void write_text_file(const std::string& path, const std::string& text) {
    auto f = open_out(path);
    f << text;
}

std::string read_text_file(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error("cannot open for reading: " + path);
    std::ostringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

void write_signal_csv(const std::string& path, const DiscreteSignal& signal) {
    auto f = open_out(path);
    f << "time_s,amplitude\n";
    for (std::size_t i = 0; i < signal.samples.size(); ++i) {
        f << fmt9(signal.time_at(i)) << ',' << fmt9(signal.samples[i]) << '\n';
    }
}

DiscreteSignal read_signal_csv(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw std::runtime_error("cannot open for reading: " + path);
    std::string line;
    if (!std::getline(f, line)) throw std::runtime_error(path + ": empty file");
    if (line.rfind("time_s,amplitude", 0) != 0) {
        throw std::runtime_error(path + ": expected header 'time_s,amplitude'");
    }
    std::vector<double> times, amps;
    while (std::getline(f, line)) {
        if (line.empty()) continue;
        const auto comma = line.find(',');
        if (comma == std::string::npos) {
            throw std::runtime_error(path + ": malformed row '" + line + "'");
        }
        times.push_back(std::stod(line.substr(0, comma)));
        amps.push_back(std::stod(line.substr(comma + 1)));
    }
    if (times.size() < 2) throw std::runtime_error(path + ": need at least 2 samples");
    DiscreteSignal s;
    s.start_time_s = times.front();
    const double dt = (times.back() - times.front()) / static_cast<double>(times.size() - 1);
    if (!(dt > 0.0)) throw std::runtime_error(path + ": non-increasing time column");
    s.sample_rate_hz = 1.0 / dt;
    s.samples = std::move(amps);
    s.validate("read_signal_csv");
    return s;
}

void write_spectrum_csv(const std::string& path, const Spectrum& spectrum) {
    auto f = open_out(path);
    f << "freq_hz,magnitude\n";
    for (std::size_t i = 0; i < spectrum.magnitudes.size(); ++i) {
        f << fmt9(spectrum.bin_freqs_hz[i]) << ',' << fmt9(spectrum.magnitudes[i]) << '\n';
    }
}

void write_three_phase_csv(const std::string& path, const ThreePhaseWaveform& w) {
    auto f = open_out(path);
    f << "time_s,va,vb,vc,ia,ib,ic\n";
    for (std::size_t i = 0; i < w.size(); ++i) {
        f << fmt9(w.va.time_at(i)) << ',' << fmt9(w.va.samples[i]) << ','
          << fmt9(w.vb.samples[i]) << ',' << fmt9(w.vc.samples[i]) << ','
          << fmt9(w.ia.samples[i]) << ',' << fmt9(w.ib.samples[i]) << ','
          << fmt9(w.ic.samples[i]) << '\n';
    }
}

void write_relay_log_csv(const std::string& path, const std::vector<RelayEvent>& events) {
    auto f = open_out(path);
    f << "mechanism,tripped,trip_time_s,latency_cycles\n";
    for (const auto& e : events) {
        f << relay_mechanism_name(e.mechanism) << ',' << (e.tripped ? "true" : "false")
          << ',' << (e.tripped ? fmt9(e.trip_time_s) : std::string("nan")) << ','
          << (e.tripped ? fmt9(e.latency_cycles) : std::string("nan")) << '\n';
    }
}

void write_ber_csv(const std::string& path, const std::vector<BerReport>& reports) {
    auto f = open_out(path);
    f << "scheme,ebn0_db,bits,errors,ber,ci95,theory_ber,status\n";
    for (const auto& r : reports) {
        const double theory =
            std::isfinite(r.ebn0_db) ? theoretical_ber(r.scheme, r.ebn0_db) : 0.0;
        f << scheme_name(r.scheme) << ',' << fmt9(r.ebn0_db) << ',' << r.bits_sent << ','
          << r.bit_errors << ',' << fmt9(r.ber) << ',' << fmt9(r.ci_halfwidth_95) << ','
          << fmt9(theory) << ',' << trial_status_name(r.status) << '\n';
    }
}

void write_response_csv(const std::string& path, const std::vector<double>& freq_hz,
                        const std::vector<double>& mag,
                        const std::vector<double>& phase_deg) {
    auto f = open_out(path);
    f << "freq_hz,mag,phase_deg\n";
    for (std::size_t i = 0; i < freq_hz.size(); ++i) {
        f << fmt9(freq_hz[i]) << ',' << fmt9(mag[i]) << ',' << fmt9(phase_deg[i]) << '\n';
    }
}

}  // namespace plcsim
