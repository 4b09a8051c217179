#pragma once

#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "plcsim/ber.hpp"
#include "plcsim/channel.hpp"
#include "plcsim/fault.hpp"
#include "plcsim/modem.hpp"

namespace plcsim {

struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

enum class KeySource { def, file, env, flag };

/// Flat key = value configuration with per-key provenance. Unknown keys and
/// out-of-range values are errors naming the offending key. Precedence:
/// flags > env (out_dir only) > file > defaults.
struct RunConfig {
    std::map<std::string, std::string> values;
    std::map<std::string, KeySource> sources;

    const std::string& raw(const std::string& key) const;
    double get_double(const std::string& key) const;
    std::size_t get_size(const std::string& key) const;
    std::uint64_t get_seed(const std::string& key) const;
    bool get_bool(const std::string& key) const;
    std::vector<double> get_double_list(const std::string& key) const;
    std::vector<std::string> get_string_list(const std::string& key) const;
    KeySource source(const std::string& key) const;

    /// Assembled domain objects (validated).
    LineChannel make_channel() const;
    ModemConfig make_modem() const;
    FaultScenario make_fault_scenario() const;
};

/// file_text: flat `key = value` lines, '#' comments. flags: alternating
/// "--key value" tokens. Every known key receives exactly one effective
/// value; range checks run for every provided value.
RunConfig parse_config(const std::string& file_text,
                       const std::vector<std::string>& flags);

/// Key table listing: name, units, default and description per key.
std::string config_help_text();

/// True when the key exists in the table.
bool is_known_key(const std::string& key);

}  // namespace plcsim
