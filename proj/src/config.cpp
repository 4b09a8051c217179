#include "plcsim/config.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <sstream>

namespace plcsim {

namespace {

enum class Check {
    none,          // free-form string
    positive,      // double > 0
    non_negative,  // double >= 0
    pos_or_inf,    // double > 0 or "inf"
    odd_count,     // odd integer >= 3
    count,         // integer >= 1
    seed,          // 64-bit unsigned
    boolean,       // true/false
    scheme_list,   // csv of ask|bfsk|bpsk
    double_list,   // csv of finite doubles
    scheme_one,    // single scheme
    noise_kind,    // white|one_over_f
    channel_mode,  // awgn|line
    window_kind,   // rect|hann|hamming
    fault_type,    // lg|ll|llg|lll|lllg
    phases,        // nonempty subset of "abc"
    nan_or_double  // "nan" or finite double
};

struct KeySpec {
    const char* name;
    const char* units;
    const char* def;
    Check check;
    const char* desc;
};

const KeySpec kKeys[] = {
    {"base_seed", "-", "1", Check::seed, "master seed; every data output is a pure function of config+seed"},
    {"out_dir", "path", "out", Check::none, "output directory (env PLCSIM_OUT_DIR overrides the file value; --out_dir wins)"},
    {"sample_rate_hz", "Hz", "2400000", Check::positive, "simulation sample rate"},
    // channel
    {"r_per_m", "ohm/m", "0.2", Check::positive, "line resistance per meter"},
    {"l_per_m", "H/m", "0.0005", Check::positive, "line inductance per meter"},
    {"length_m", "m", "9800", Check::positive, "line length"},
    {"termination_ohm", "ohm", "1000", Check::positive, "receiver termination"},
    {"band_low_hz", "Hz", "99000", Check::positive, "allocated band lower edge"},
    {"band_high_hz", "Hz", "400000", Check::positive, "allocated band upper edge"},
    {"power_freq_hz", "Hz", "60", Check::positive, "power system frequency"},
    {"power_amplitude", "V", "10", Check::non_negative, "60 Hz interference amplitude at the channel output"},
    {"agc_enabled", "bool", "true", Check::boolean, "receiver AGC (restore in-band communication power)"},
    {"channel_fir_taps", "taps", "1025", Check::odd_count, "channel FIR realization length (odd)"},
    {"noise_kind", "white|one_over_f", "white", Check::noise_kind, "channel noise spectral shape"},
    {"noise_snr_db", "dB", "inf", Check::pos_or_inf, "channel noise SNR vs composite received power; inf = off"},
    {"noise_power", "V^2", "nan", Check::nan_or_double, "channel noise variance; overrides noise_snr_db when set"},
    // modem
    {"scheme", "ask|bfsk|bpsk", "bfsk", Check::scheme_one, "modulation scheme for modulate/demodulate"},
    {"bit_rate_hz", "bit/s", "10000", Check::positive, "bit rate"},
    {"carrier_hz", "Hz", "250000", Check::positive, "ASK/BPSK carrier frequency"},
    {"center_hz", "Hz", "250000", Check::positive, "BFSK center frequency"},
    {"deviation_hz", "Hz", "50000", Check::positive, "BFSK frequency deviation"},
    {"amplitude", "V", "1", Check::positive, "transmit amplitude"},
    {"rx_bandpass_center_hz", "Hz", "250000", Check::positive, "receiver bandpass center"},
    {"rx_bandpass_bandwidth_hz", "Hz", "150000", Check::positive, "receiver bandpass width"},
    {"rx_bandpass_taps", "taps", "301", Check::odd_count, "receiver bandpass length (odd)"},
    {"rx_lowpass_cutoff_hz", "Hz", "0", Check::non_negative, "ASK envelope lowpass cutoff; 0 = bit rate"},
    {"rx_lowpass_taps", "taps", "301", Check::odd_count, "ASK envelope lowpass length (odd)"},
    {"psk_reference_phase_deg", "deg", "nan", Check::nan_or_double, "BPSK coherent reference phase; nan = estimate"},
    // ber harness
    {"schemes", "list", "ask,bfsk,bpsk", Check::scheme_list, "schemes for ber-sweep"},
    {"ebn0_list_db", "dB list", "0,2,4,6,8,10,12", Check::double_list, "Eb/N0 grid for ber-sweep"},
    {"n_bits", "bits", "10000", Check::count, "bits per sweep cell"},
    {"channel_mode", "awgn|line", "line", Check::channel_mode, "ber-sweep link model"},
    {"threads", "-", "1", Check::count, "parallel sweep cells"},
    // io
    {"bits_file", "path", "bits.txt", Check::none, "input bit file for modulate (ASCII 0/1)"},
    {"input_csv", "path", "input.csv", Check::none, "input waveform CSV for demodulate/spectrum"},
    {"spectrum_window", "rect|hann|hamming", "rect", Check::window_kind, "spectrum window"},
    {"response_points", "-", "1001", Check::count, "points for channel-response"},
    // fault simulation
    {"nominal_kv", "kV", "138", Check::positive, "line-to-line RMS voltage"},
    {"load_ohm", "ohm", "1000", Check::positive, "per-phase resistive load"},
    {"source_ohm", "ohm", "5", Check::positive, "Thevenin source impedance"},
    {"duration_s", "s", "0.2", Check::positive, "fault simulation duration"},
    {"fault_type", "lg|ll|llg|lll|lllg", "lllg", Check::fault_type, "fault class"},
    {"fault_onset_s", "s", "0.1", Check::non_negative, "fault onset time"},
    {"fault_impedance_ohm", "ohm", "0.001", Check::non_negative, "fault impedance; inf = no fault"},
    {"affected_phases", "subset of abc", "abc", Check::phases, "phases involved in the fault"},
    {"pilot_amplitude", "V", "1000", Check::non_negative, "carrier-sense pilot amplitude on the line"},
    {"relay_reach_ohm", "ohm", "400", Check::positive, "impedance relay reach"},
    {"relay_threshold_ratio", "ratio", "0.5", Check::positive, "carrier-sense power threshold (fraction of baseline)"},
    {"relay_window_cycles", "cycles", "1", Check::positive, "relay decision window, power cycles"},
    {"current_floor_a", "A", "0.001", Check::positive, "impedance relay dead-line current floor"},
};

const KeySpec* find_key(const std::string& name) {
    for (const auto& k : kKeys) {
        if (name == k.name) return &k;
    }
    return nullptr;
}

double parse_double(const std::string& key, const std::string& value) {
    try {
        std::size_t pos = 0;
        const double v = std::stod(value, &pos);
        while (pos < value.size() && std::isspace(static_cast<unsigned char>(value[pos]))) ++pos;
        if (pos != value.size()) throw std::invalid_argument("trailing characters");
        return v;
    } catch (const std::exception&) {
        throw ConfigError("config key '" + key + "': malformed number '" + value + "'");
    }
}

void check_value(const std::string& key, const std::string& value, Check check) {
    switch (check) {
        case Check::none:
            if (value.empty()) throw ConfigError("config key '" + key + "': empty value");
            return;
        case Check::positive: {
            const double v = parse_double(key, value);
            if (!(v > 0.0) || !std::isfinite(v)) {
                throw ConfigError("config key '" + key + "': must be > 0, got " + value);
            }
            return;
        }
        case Check::non_negative: {
            const double v = parse_double(key, value);
            if (v < 0.0 || !std::isfinite(v)) {
                throw ConfigError("config key '" + key + "': must be >= 0, got " + value);
            }
            return;
        }
        case Check::pos_or_inf: {
            if (value == "inf") return;
            const double v = parse_double(key, value);
            if (std::isnan(v) || v == -std::numeric_limits<double>::infinity()) {
                throw ConfigError("config key '" + key + "': must be a dB value or inf");
            }
            return;
        }
        case Check::nan_or_double: {
            if (value == "nan") return;
            const double v = parse_double(key, value);
            if (!std::isfinite(v)) {
                throw ConfigError("config key '" + key + "': must be finite or nan");
            }
            return;
        }
        case Check::odd_count: {
            const double v = parse_double(key, value);
            if (v < 3.0 || v != std::floor(v) || static_cast<long long>(v) % 2 == 0) {
                throw ConfigError("config key '" + key + "': must be an odd integer >= 3");
            }
            return;
        }
        case Check::count: {
            const double v = parse_double(key, value);
            if (v < 1.0 || v != std::floor(v)) {
                throw ConfigError("config key '" + key + "': must be an integer >= 1");
            }
            return;
        }
        case Check::seed: {
            try {
                (void)std::stoull(value);
            } catch (const std::exception&) {
                throw ConfigError("config key '" + key + "': malformed seed '" + value + "'");
            }
            return;
        }
        case Check::boolean:
            if (value != "true" && value != "false") {
                throw ConfigError("config key '" + key + "': must be true or false");
            }
            return;
        case Check::scheme_one:
            (void)scheme_from_name(value);
            return;
        case Check::noise_kind:
            if (value != "white" && value != "one_over_f") {
                throw ConfigError("config key '" + key + "': must be white or one_over_f");
            }
            return;
        case Check::channel_mode:
            if (value != "awgn" && value != "line") {
                throw ConfigError("config key '" + key + "': must be awgn or line");
            }
            return;
        case Check::window_kind:
            if (value != "rect" && value != "hann" && value != "hamming") {
                throw ConfigError("config key '" + key + "': must be rect, hann or hamming");
            }
            return;
        case Check::fault_type:
            try {
                (void)fault_type_from_name(value);
            } catch (const std::exception& e) {
                throw ConfigError("config key '" + key + "': " + e.what());
            }
            return;
        case Check::phases: {
            if (value.empty() || value.size() > 3) {
                throw ConfigError("config key '" + key + "': expected a subset of abc");
            }
            for (char c : value) {
                if (c != 'a' && c != 'b' && c != 'c') {
                    throw ConfigError("config key '" + key + "': expected a subset of abc");
                }
            }
            return;
        }
        case Check::scheme_list:
        case Check::double_list: {
            std::stringstream ss(value);
            std::string item;
            std::size_t n = 0;
            while (std::getline(ss, item, ',')) {
                if (item.empty()) continue;
                ++n;
                if (check == Check::scheme_list) {
                    try {
                        (void)scheme_from_name(item);
                    } catch (const std::exception& e) {
                        throw ConfigError("config key '" + key + "': " + e.what());
                    }
                } else {
                    const double v = parse_double(key, item);
                    if (!std::isfinite(v)) {
                        throw ConfigError("config key '" + key + "': non-finite entry");
                    }
                }
            }
            if (n == 0) throw ConfigError("config key '" + key + "': empty list");
            return;
        }
    }
}

std::string trim(const std::string& s) {
    std::size_t b = 0, e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
    return s.substr(b, e - b);
}

}  // namespace

bool is_known_key(const std::string& key) { return find_key(key) != nullptr; }

RunConfig parse_config(const std::string& file_text,
                       const std::vector<std::string>& flags) {
    RunConfig cfg;
    for (const auto& k : kKeys) {
        cfg.values[k.name] = k.def;
        cfg.sources[k.name] = KeySource::def;
    }

    auto apply = [&cfg](const std::string& key, const std::string& value, KeySource src) {
        const KeySpec* spec = find_key(key);
        if (!spec) throw ConfigError("unknown config key '" + key + "'");
        check_value(key, value, spec->check);
        cfg.values[key] = value;
        cfg.sources[key] = src;
    };

    std::stringstream ss(file_text);
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(ss, line)) {
        ++line_no;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos) {
            throw ConfigError("config line " + std::to_string(line_no) +
                              ": expected 'key = value', got '" + line + "'");
        }
        apply(trim(line.substr(0, eq)), trim(line.substr(eq + 1)), KeySource::file);
    }

    if (const char* env = std::getenv("PLCSIM_OUT_DIR"); env && *env) {
        apply("out_dir", env, KeySource::env);
    }

    for (std::size_t i = 0; i < flags.size(); ++i) {
        std::string key = flags[i];
        if (key.rfind("--", 0) != 0 || key.size() <= 2) {
            throw ConfigError("expected a --key flag, got '" + key + "'");
        }
        key = key.substr(2);
        if (i + 1 >= flags.size()) {
            throw ConfigError("flag --" + key + " is missing its value");
        }
        apply(key, flags[++i], KeySource::flag);
    }
    return cfg;
}

const std::string& RunConfig::raw(const std::string& key) const {
    const auto it = values.find(key);
    if (it == values.end()) throw ConfigError("unknown config key '" + key + "'");
    return it->second;
}

KeySource RunConfig::source(const std::string& key) const {
    const auto it = sources.find(key);
    if (it == sources.end()) throw ConfigError("unknown config key '" + key + "'");
    return it->second;
}

double RunConfig::get_double(const std::string& key) const {
    const std::string& v = raw(key);
    if (v == "inf") return std::numeric_limits<double>::infinity();
    if (v == "nan") return std::numeric_limits<double>::quiet_NaN();
    return parse_double(key, v);
}

std::size_t RunConfig::get_size(const std::string& key) const {
    return static_cast<std::size_t>(get_double(key));
}

std::uint64_t RunConfig::get_seed(const std::string& key) const {
    return std::stoull(raw(key));
}

bool RunConfig::get_bool(const std::string& key) const { return raw(key) == "true"; }

std::vector<double> RunConfig::get_double_list(const std::string& key) const {
    std::vector<double> out;
    std::stringstream ss(raw(key));
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (!item.empty()) out.push_back(parse_double(key, item));
    }
    return out;
}

std::vector<std::string> RunConfig::get_string_list(const std::string& key) const {
    std::vector<std::string> out;
    std::stringstream ss(raw(key));
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (!item.empty()) out.push_back(item);
    }
    return out;
}

LineChannel RunConfig::make_channel() const {
    LineChannel c;
    c.r_per_m = get_double("r_per_m");
    c.l_per_m = get_double("l_per_m");
    c.length_m = get_double("length_m");
    c.termination_ohm = get_double("termination_ohm");
    c.band_low_hz = get_double("band_low_hz");
    c.band_high_hz = get_double("band_high_hz");
    c.power_freq_hz = get_double("power_freq_hz");
    c.power_amplitude = get_double("power_amplitude");
    c.agc_enabled = get_bool("agc_enabled");
    c.fir_taps = get_size("channel_fir_taps");
    const NoiseKind kind = raw("noise_kind") == "white" ? NoiseKind::white
                                                        : NoiseKind::one_over_f;
    const double power = get_double("noise_power");
    const double snr = get_double("noise_snr_db");
    const std::uint64_t seed = get_seed("base_seed");
    if (!std::isnan(power)) {
        c.noise = NoiseSpec::from_power(power, seed, kind);
    } else if (std::isfinite(snr)) {
        c.noise = NoiseSpec::from_snr_db(snr, seed, kind);
    } else {
        c.noise = NoiseSpec::disabled();
    }
    c.validate();
    return c;
}

ModemConfig RunConfig::make_modem() const {
    ModemConfig m;
    m.scheme = scheme_from_name(raw("scheme"));
    m.bit_rate_hz = get_double("bit_rate_hz");
    m.carrier_hz = get_double("carrier_hz");
    m.center_hz = get_double("center_hz");
    m.deviation_hz = get_double("deviation_hz");
    m.amplitude = get_double("amplitude");
    m.sample_rate_hz = get_double("sample_rate_hz");
    m.rx_bandpass_center_hz = get_double("rx_bandpass_center_hz");
    m.rx_bandpass_bandwidth_hz = get_double("rx_bandpass_bandwidth_hz");
    m.rx_bandpass_taps = get_size("rx_bandpass_taps");
    m.rx_lowpass_cutoff_hz = get_double("rx_lowpass_cutoff_hz");
    m.rx_lowpass_taps = get_size("rx_lowpass_taps");
    m.validate();
    return m;
}

FaultScenario RunConfig::make_fault_scenario() const {
    FaultScenario s;
    s.fault_type = fault_type_from_name(raw("fault_type"));
    s.onset_s = get_double("fault_onset_s");
    s.fault_impedance_ohm = get_double("fault_impedance_ohm");
    s.source_impedance_ohm = get_double("source_ohm");
    s.affected_phases = {false, false, false};
    for (char c : raw("affected_phases")) {
        s.affected_phases[static_cast<std::size_t>(c - 'a')] = true;
    }
    return s;
}

std::string config_help_text() {
    std::ostringstream out;
    out << "configuration keys (key = value in the config file, --key value on the command line):\n";
    for (const auto& k : kKeys) {
        out << "  " << k.name;
        for (std::size_t i = std::string(k.name).size(); i < 26; ++i) out << ' ';
        out << "[" << k.units << "] default " << k.def << "  " << k.desc << "\n";
    }
    return out.str();
}

}  // namespace plcsim
