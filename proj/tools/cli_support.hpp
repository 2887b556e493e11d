#ifndef CHIPNOISE_CLI_SUPPORT_HPP
#define CHIPNOISE_CLI_SUPPORT_HPP

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "json.hpp"

// CLI-side plumbing: deterministic CSV emission, content digests,
// run manifests and sweep specs. Everything here is independent of the
// physics; the physics comes in through the chipnoise C API only.

namespace cli {

using ordered_json = nlohmann::ordered_json;

// 9 significant digits, scientific, locale-independent
std::string format_number(double v);

// FNV-1a 64-bit content digest, hex-encoded
std::string fnv1a_hex(const std::string& bytes);

struct SweepSpec {
    std::string key;
    double start = 0.0;
    double stop = 0.0;
    int count = 0;
    bool log_scale = false;

    // "KEY:START:STOP:COUNT:{lin|log}"
    static SweepSpec parse(const std::string& text);
    std::vector<double> values() const;
};

class CsvWriter {
public:
    void comment(const std::string& line);       // "# ..." header lines
    void header(const std::vector<std::string>& columns);
    void row(const std::vector<double>& values);
    const std::string& str() const { return buf_; }

private:
    std::string buf_;
};

struct OutputRecord {
    std::string path;    // relative to the output directory
    std::string digest;
    std::uint64_t bytes = 0;
};

class Manifest {
public:
    void set_command(std::string cmd) { command_ = std::move(cmd); }
    void set_subcommand(std::string sub) { subcommand_ = std::move(sub); }
    void set_tool_version(std::string v) { tool_version_ = std::move(v); }
    void set_seed(std::uint64_t seed) { seed_ = seed; has_seed_ = true; }
    void set_sweep(const SweepSpec& sweep);
    void set_config_echo(std::map<std::string, std::string> echo) {
        config_echo_ = std::move(echo);
    }
    void set_extra(const std::string& key, const ordered_json& value) {
        extra_[key] = value;
    }
    void mark_started();
    void mark_finished();
    void add_output(const OutputRecord& rec) { outputs_.push_back(rec); }

    ordered_json to_json() const;
    static Manifest from_json(const ordered_json& j);

    const std::string& subcommand() const { return subcommand_; }
    const std::map<std::string, std::string>& config_echo() const {
        return config_echo_;
    }
    bool has_seed() const { return has_seed_; }
    std::uint64_t seed() const { return seed_; }
    bool has_sweep() const { return has_sweep_; }
    const SweepSpec& sweep() const { return sweep_; }
    const std::vector<OutputRecord>& outputs() const { return outputs_; }
    const std::map<std::string, ordered_json>& extra() const { return extra_; }

private:
    std::string command_;
    std::string subcommand_;
    std::string tool_version_;
    std::map<std::string, std::string> config_echo_;
    std::uint64_t seed_ = 0;
    bool has_seed_ = false;
    SweepSpec sweep_;
    bool has_sweep_ = false;
    std::string started_, finished_;
    std::vector<OutputRecord> outputs_;
    std::map<std::string, ordered_json> extra_;
};

// Writes `content` to dir/name (creating dir), records it in the manifest.
OutputRecord write_output(const std::string& dir, const std::string& name,
                          const std::string& content);

}  // namespace cli

#endif
