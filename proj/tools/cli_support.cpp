#include "cli_support.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace cli {

std::string format_number(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.8e", v);
    return buf;
}

std::string fnv1a_hex(const std::string& bytes) {
    std::uint64_t h = 1469598103934665603ull;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 1099511628211ull;
    }
    char buf[20];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

SweepSpec SweepSpec::parse(const std::string& text) {
    SweepSpec s;
    std::vector<std::string> parts;
    std::stringstream ss(text);
    std::string tok;
    while (std::getline(ss, tok, ':')) parts.push_back(tok);
    if (parts.size() != 5)
        throw std::runtime_error(
            "sweep must look like KEY:START:STOP:COUNT:{lin|log}, got '" +
            text + "'");
    s.key = parts[0];
    s.start = std::stod(parts[1]);
    s.stop = std::stod(parts[2]);
    s.count = std::stoi(parts[3]);
    if (parts[4] == "lin")
        s.log_scale = false;
    else if (parts[4] == "log")
        s.log_scale = true;
    else
        throw std::runtime_error("sweep scale must be lin or log, got '" +
                                 parts[4] + "'");
    if (s.count < 2) throw std::runtime_error("sweep count must be >= 2");
    if (!(s.start < s.stop))
        throw std::runtime_error("sweep requires start < stop");
    if (s.log_scale && s.start <= 0.0)
        throw std::runtime_error("log sweep requires positive endpoints");
    return s;
}

std::vector<double> SweepSpec::values() const {
    std::vector<double> out(static_cast<std::size_t>(count));
    for (int i = 0; i < count; ++i) {
        const double f = static_cast<double>(i) / (count - 1);
        out[static_cast<std::size_t>(i)] =
            log_scale ? start * std::pow(stop / start, f)
                      : start + (stop - start) * f;
    }
    return out;
}

void CsvWriter::comment(const std::string& line) {
    buf_ += "# ";
    buf_ += line;
    buf_ += "\n";
}

void CsvWriter::header(const std::vector<std::string>& columns) {
    for (std::size_t i = 0; i < columns.size(); ++i) {
        if (i) buf_ += ",";
        buf_ += columns[i];
    }
    buf_ += "\n";
}

void CsvWriter::row(const std::vector<double>& values) {
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (i) buf_ += ",";
        buf_ += format_number(values[i]);
    }
    buf_ += "\n";
}

namespace {
std::string iso_now() {
    const auto now = std::chrono::system_clock::now();
    const std::time_t t = std::chrono::system_clock::to_time_t(now);
    char buf[32];
    std::tm tm_utc{};
    gmtime_r(&t, &tm_utc);
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm_utc);
    return buf;
}
}  // namespace

void Manifest::set_sweep(const SweepSpec& sweep) {
    sweep_ = sweep;
    has_sweep_ = true;
}

void Manifest::mark_started() { started_ = iso_now(); }
void Manifest::mark_finished() { finished_ = iso_now(); }

ordered_json Manifest::to_json() const {
    ordered_json j;
    j["schema_version"] = 1;
    j["tool_version"] = tool_version_;
    j["command"] = command_;
    j["subcommand"] = subcommand_;
    ordered_json echo = ordered_json::object();
    for (const auto& [k, v] : config_echo_) echo[k] = v;
    j["config_echo"] = echo;
    if (has_seed_) j["seed"] = seed_;
    if (has_sweep_) {
        j["sweep"] = {{"key", sweep_.key},     {"start", sweep_.start},
                      {"stop", sweep_.stop},   {"count", sweep_.count},
                      {"scale", sweep_.log_scale ? "log" : "lin"}};
    }
    for (const auto& [k, v] : extra_) j[k] = v;
    j["started"] = started_;
    j["finished"] = finished_;
    ordered_json outs = ordered_json::array();
    for (const auto& o : outputs_)
        outs.push_back({{"path", o.path}, {"digest", o.digest}, {"bytes", o.bytes}});
    j["outputs"] = outs;
    return j;
}

Manifest Manifest::from_json(const ordered_json& j) {
    Manifest m;
    m.command_ = j.value("command", "");
    m.subcommand_ = j.value("subcommand", "");
    if (j.contains("config_echo"))
        for (auto it = j["config_echo"].begin(); it != j["config_echo"].end(); ++it)
            m.config_echo_[it.key()] = it.value().get<std::string>();
    if (j.contains("seed")) {
        m.seed_ = j["seed"].get<std::uint64_t>();
        m.has_seed_ = true;
    }
    if (j.contains("sweep")) {
        const auto& s = j["sweep"];
        m.sweep_.key = s["key"].get<std::string>();
        m.sweep_.start = s["start"].get<double>();
        m.sweep_.stop = s["stop"].get<double>();
        m.sweep_.count = s["count"].get<int>();
        m.sweep_.log_scale = s["scale"].get<std::string>() == "log";
        m.has_sweep_ = true;
    }
    for (auto it = j.begin(); it != j.end(); ++it) {
        const std::string& k = it.key();
        if (k == "schema_version" || k == "tool_version" || k == "command" ||
            k == "subcommand" || k == "config_echo" || k == "seed" ||
            k == "sweep" || k == "started" || k == "finished" || k == "outputs")
            continue;
        m.extra_[k] = it.value();
    }
    if (j.contains("outputs"))
        for (const auto& o : j["outputs"])
            m.outputs_.push_back({o["path"].get<std::string>(),
                                  o["digest"].get<std::string>(),
                                  o["bytes"].get<std::uint64_t>()});
    return m;
}

OutputRecord write_output(const std::string& dir, const std::string& name,
                          const std::string& content) {
    namespace fs = std::filesystem;
    fs::create_directories(dir);
    const fs::path path = fs::path(dir) / name;
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path.string());
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    out.close();
    if (!out) throw std::runtime_error("short write on " + path.string());
    return {name, fnv1a_hex(content), content.size()};
}

}  // namespace cli
