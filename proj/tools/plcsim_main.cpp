// plcsim command line: narrowband PLC link and protection relay simulator.
//
// verbs: modulate, demodulate, channel-response, ber-sweep, fault-sim, spectrum
// exit codes: 0 ok, 1 usage, 2 config error, 3 alignment failure, 4 runtime error

#include <cmath>
#include <filesystem>
#include <iostream>
#include <numbers>
#include <optional>
#include <string>
#include <vector>

#include "plcsim/align.hpp"
#include "plcsim/ber.hpp"
#include "plcsim/channel.hpp"
#include "plcsim/config.hpp"
#include "plcsim/csv.hpp"
#include "plcsim/fault.hpp"
#include "plcsim/modem.hpp"
#include "plcsim/spectrum.hpp"

namespace {

using namespace plcsim;

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitConfig = 2;
constexpr int kExitAlignment = 3;
constexpr int kExitRuntime = 4;

void print_usage(std::ostream& os) {
    os << "usage: plcsim <verb> [--config FILE] [--key value ...]\n"
          "\n"
          "verbs:\n"
          "  modulate          bits file -> waveform CSV (out_dir/modulated.csv)\n"
          "  demodulate        waveform CSV -> bits file (out_dir/bits_out.txt)\n"
          "  channel-response  line transfer function -> out_dir/channel_response.csv\n"
          "  ber-sweep         Monte-Carlo BER grid -> out_dir/ber_sweep.csv\n"
          "  fault-sim         three-phase fault + relays -> waveform & relay CSVs\n"
          "  spectrum          waveform CSV -> spectrum CSV\n"
          "\n"
          "  plcsim help       full key listing with units and defaults\n";
}

std::filesystem::path ensure_out_dir(const RunConfig& cfg) {
    std::filesystem::path dir = cfg.raw("out_dir");
    std::filesystem::create_directories(dir);
    return dir;
}

DemodOptions demod_options(const RunConfig& cfg) {
    DemodOptions opt;
    const double deg = cfg.get_double("psk_reference_phase_deg");
    if (!std::isnan(deg)) {
        opt.psk_reference_phase_rad = deg * std::numbers::pi / 180.0;
    }
    return opt;
}

int verb_modulate(const RunConfig& cfg) {
    const auto dir = ensure_out_dir(cfg);
    const BitStream bits = BitStream::from_string(read_text_file(cfg.raw("bits_file")));
    const ModemConfig modem = cfg.make_modem();
    const DiscreteSignal wave = modulate(bits, modem);
    write_signal_csv((dir / "modulated.csv").string(), wave);
    std::cout << "modulate: " << bits.size() << " bits -> " << wave.size()
              << " samples (" << scheme_name(modem.scheme) << ") -> "
              << (dir / "modulated.csv").string() << "\n";
    return kExitOk;
}

int verb_demodulate(const RunConfig& cfg) {
    const auto dir = ensure_out_dir(cfg);
    const DiscreteSignal wave = read_signal_csv(cfg.raw("input_csv"));
    const ModemConfig modem = cfg.make_modem();
    const BitStream bits = demodulate(wave, modem, demod_options(cfg));
    write_text_file((dir / "bits_out.txt").string(), bits.to_string() + "\n");
    std::cout << "demodulate: " << wave.size() << " samples -> " << bits.size()
              << " bits (" << scheme_name(modem.scheme) << ") -> "
              << (dir / "bits_out.txt").string() << "\n";
    return kExitOk;
}

int verb_channel_response(const RunConfig& cfg) {
    const auto dir = ensure_out_dir(cfg);
    const LineChannel channel = cfg.make_channel();
    const std::size_t points = cfg.get_size("response_points");
    const double fs = cfg.get_double("sample_rate_hz");
    std::vector<double> freq(points), mag(points), phase(points);
    for (std::size_t i = 0; i < points; ++i) {
        freq[i] = fs / 2.0 * static_cast<double>(i) / static_cast<double>(points - 1);
        const auto h = transfer_gain(channel, freq[i]);
        mag[i] = std::abs(h);
        phase[i] = std::arg(h) * 180.0 / std::numbers::pi;
    }
    write_response_csv((dir / "channel_response.csv").string(), freq, mag, phase);
    std::cout << "channel-response: " << points << " points over [0, " << fs / 2.0
              << " Hz] -> " << (dir / "channel_response.csv").string() << "\n";
    return kExitOk;
}

int verb_ber_sweep(const RunConfig& cfg) {
    const auto dir = ensure_out_dir(cfg);
    std::vector<Scheme> schemes;
    for (const auto& name : cfg.get_string_list("schemes")) {
        schemes.push_back(scheme_from_name(name));
    }
    const auto ebn0 = cfg.get_double_list("ebn0_list_db");
    const ModemConfig modem = cfg.make_modem();
    const LineChannel channel =
        cfg.raw("channel_mode") == "line" ? cfg.make_channel() : LineChannel::identity();
    const ChannelMode mode =
        cfg.raw("channel_mode") == "line" ? ChannelMode::line : ChannelMode::awgn_only;

    const auto reports =
        ber_sweep(schemes, ebn0, cfg.get_size("n_bits"), modem, mode, channel,
                  cfg.get_seed("base_seed"),
                  static_cast<unsigned>(cfg.get_size("threads")));
    write_ber_csv((dir / "ber_sweep.csv").string(), reports);

    std::size_t failed = 0;
    for (const auto& r : reports) {
        if (r.status != TrialStatus::ok) ++failed;
    }
    std::cout << "ber-sweep: " << reports.size() << " cells (" << schemes.size()
              << " schemes x " << ebn0.size() << " points, " << cfg.raw("n_bits")
              << " bits each), " << failed << " alignment failure(s) -> "
              << (dir / "ber_sweep.csv").string() << "\n";
    return failed == 0 ? kExitOk : kExitAlignment;
}

int verb_fault_sim(const RunConfig& cfg) {
    const auto dir = ensure_out_dir(cfg);
    const double fs = cfg.get_double("sample_rate_hz");
    const double f_power = cfg.get_double("power_freq_hz");
    const ThreePhaseWaveform healthy = generate_three_phase(
        cfg.get_double("nominal_kv"), f_power, cfg.get_double("load_ohm"),
        cfg.get_double("duration_s"), fs);
    const FaultScenario scenario = cfg.make_fault_scenario();
    const ThreePhaseWaveform faulted = inject_fault(healthy, scenario);
    write_three_phase_csv((dir / "fault_waveform.csv").string(), faulted);

    // carrier-sense pilot rides phase a; the fault interrupts it by the same
    // divider that collapses the faulted phase voltage
    const double carrier_hz = cfg.get_double("carrier_hz");
    const double pilot_amp = cfg.get_double("pilot_amplitude");
    DiscreteSignal line = faulted.va;
    {
        const DiscreteSignal pilot =
            generate_carrier(carrier_hz, pilot_amp, 0.0, line.duration_s(), fs);
        const bool hits_pilot_phase = scenario.affected_phases[0] &&
                                      !std::isinf(scenario.fault_impedance_ohm);
        const double sag = scenario.fault_impedance_ohm /
                           (scenario.source_impedance_ohm + scenario.fault_impedance_ohm);
        const auto onset = static_cast<std::size_t>(std::ceil(scenario.onset_s * fs - 1e-9));
        for (std::size_t i = 0; i < line.samples.size() && i < pilot.samples.size(); ++i) {
            const double k = (hits_pilot_phase && i >= onset) ? sag : 1.0;
            line.samples[i] += k * pilot.samples[i];
        }
    }

    const double window = cfg.get_double("relay_window_cycles");
    RelayEvent carrier = carrier_sense_relay(line, carrier_hz,
                                             cfg.get_double("relay_threshold_ratio"),
                                             window, f_power);
    carrier = latency_from_onset(carrier, scenario.onset_s, f_power);
    RelayEvent impedance = impedance_relay(faulted.va, faulted.ia,
                                           cfg.get_double("relay_reach_ohm"), window,
                                           f_power, cfg.get_double("current_floor_a"));
    impedance = latency_from_onset(impedance, scenario.onset_s, f_power);
    write_relay_log_csv((dir / "relay_log.csv").string(), {carrier, impedance});

    std::cout << "fault-sim: " << fault_type_name(scenario.fault_type) << " at "
              << scenario.onset_s << " s; carrier_sense "
              << (carrier.tripped ? "tripped @ " + std::to_string(carrier.trip_time_s) + " s"
                                  : "no trip")
              << ", impedance "
              << (impedance.tripped ? "tripped @ " + std::to_string(impedance.trip_time_s) + " s"
                                    : "no trip")
              << " -> " << (dir / "relay_log.csv").string() << "\n";
    return kExitOk;
}

int verb_spectrum(const RunConfig& cfg) {
    const auto dir = ensure_out_dir(cfg);
    const DiscreteSignal wave = read_signal_csv(cfg.raw("input_csv"));
    const std::string wname = cfg.raw("spectrum_window");
    const WindowKind window = wname == "rect"   ? WindowKind::rect
                              : wname == "hann" ? WindowKind::hann
                                                : WindowKind::hamming;
    const Spectrum spec = spectrum(wave, window);
    write_spectrum_csv((dir / "spectrum.csv").string(), spec);
    std::cout << "spectrum: " << wave.size() << " samples -> "
              << spec.magnitudes.size() << " bins (resolution " << spec.resolution_hz
              << " Hz) -> " << (dir / "spectrum.csv").string() << "\n";
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    if (argc < 2) {
        print_usage(std::cerr);
        return kExitUsage;
    }
    const std::string verb = argv[1];
    if (verb == "help" || verb == "--help" || verb == "-h") {
        print_usage(std::cout);
        std::cout << "\n" << config_help_text();
        return kExitOk;
    }

    std::vector<std::string> flags;
    std::string config_text;
    for (int i = 2; i < argc; ++i) {
        std::string arg = argv[i];
        if (arg == "--config") {
            if (i + 1 >= argc) {
                std::cerr << "--config is missing its file argument\n";
                return kExitConfig;
            }
            try {
                config_text = plcsim::read_text_file(argv[++i]);
            } catch (const std::exception& e) {
                std::cerr << "error: " << e.what() << "\n";
                return kExitConfig;
            }
            continue;
        }
        flags.push_back(std::move(arg));
    }

    try {
        const plcsim::RunConfig cfg = plcsim::parse_config(config_text, flags);
        if (verb == "modulate") return verb_modulate(cfg);
        if (verb == "demodulate") return verb_demodulate(cfg);
        if (verb == "channel-response") return verb_channel_response(cfg);
        if (verb == "ber-sweep") return verb_ber_sweep(cfg);
        if (verb == "fault-sim") return verb_fault_sim(cfg);
        if (verb == "spectrum") return verb_spectrum(cfg);
        std::cerr << "unknown verb '" << verb << "'\n\n";
        print_usage(std::cerr);
        return kExitUsage;
    } catch (const plcsim::ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const std::invalid_argument& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitRuntime;
    }
}
