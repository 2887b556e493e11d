#ifndef CHIPNOISE_CONFIG_HPP
#define CHIPNOISE_CONFIG_HPP

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "chipnoise/core_model.hpp"
#include "chipnoise/gpe.hpp"
#include "chipnoise/noise_spectra.hpp"
#include "chipnoise/units.hpp"

// Flat key-value config files: one `key = value [unit]` per line,
// `#` comments. Keys are checked against a fixed schema, units against
// the key's dimension, and values against the module preconditions, so
// a config that parses cleanly is ready to run.

namespace chipnoise {

struct ConfigEntry {
    double si_value = 0.0;     // converted value (numeric keys)
    std::string raw;           // verbatim value token(s)
    std::string unit;          // unit token as written
    bool numeric = true;
    int line = 0;              // 0 for values set programmatically
};

class ChipConfig {
public:
    ChipConfig() = default;

    static ChipConfig parse_file(const std::string& path);
    static ChipConfig parse_string(const std::string& text,
                                   const std::string& origin = "<string>");

    // "key = value unit" or "key=value"; same validation as file lines
    void set(const std::string& assignment);
    void set(const std::string& key, const std::string& value_and_unit);

    bool has(const std::string& key) const;
    double get(const std::string& key) const;
    double get_or(const std::string& key, double fallback) const;
    std::string get_raw(const std::string& key) const;
    std::vector<double> get_list(const std::string& key) const;

    const std::map<std::string, ConfigEntry>& entries() const { return entries_; }

    // Checks required keys (reporting every missing one at once) and all
    // module preconditions; throws ConfigError.
    void validate() const;

    // Builders for the physics bundles; call validate() first.
    SideGuideConfig guide() const;
    ElectronVelocityDist electron_dist() const;
    CondensateConfig gpe_config() const;

    // Canonical echo: sorted `key = value` lines, SI values at full
    // precision. Re-parsing the echo reproduces the config exactly.
    std::string echo() const;

private:
    void set_impl(const std::string& key, const std::string& value,
                  const std::string& unit, int line, const std::string& origin);

    std::map<std::string, ConfigEntry> entries_;
};

}  // namespace chipnoise

#endif
