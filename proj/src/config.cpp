#include "chipnoise/config.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "chipnoise/constants.hpp"

namespace chipnoise {

namespace {

struct KeySpec {
    Dimension dim = Dimension::dimensionless;
    bool required = false;
    bool is_string = false;  // enum-like values
    bool is_list = false;    // comma-separated numbers, no units
};

const std::map<std::string, KeySpec>& schema() {
    static const std::map<std::string, KeySpec> s = {
        {"current", {Dimension::current, true}},
        {"bias_field", {Dimension::magnetic_field, true}},
        {"longitudinal_field", {Dimension::magnetic_field}},
        {"trap_frequency", {Dimension::frequency}},
        {"gravity", {Dimension::acceleration}},
        {"atom.mass", {Dimension::mass, true}},
        {"atom.mu_parallel", {Dimension::magnetic_moment, true}},
        {"atom.delta_mu_parallel", {Dimension::magnetic_moment}},
        {"atom.spin_F", {Dimension::dimensionless}},
        {"atom.g_factor", {Dimension::dimensionless}},
        {"material.resistivity", {Dimension::resistivity, true}},
        {"material.temperature", {Dimension::temperature, true}},
        {"wire.radius", {Dimension::length}},
        {"current_noise.ratio", {Dimension::dimensionless}},
        {"electron.distribution",
         {Dimension::dimensionless, false, /*is_string=*/true}},
        {"electron.v_char", {Dimension::velocity}},
        {"electron.v_drift", {Dimension::velocity}},
        {"electron.temperature", {Dimension::temperature}},
        {"seed", {Dimension::dimensionless}},
        // scaled-unit blocks (harmonic-oscillator units, dimensionless)
        {"decohere.gamma", {Dimension::dimensionless}},
        {"decohere.l_c", {Dimension::dimensionless}},
        {"decohere.correlation",
         {Dimension::dimensionless, false, /*is_string=*/true}},
        {"decohere.times",
         {Dimension::dimensionless, false, false, /*is_list=*/true}},
        {"decohere.grid_z", {Dimension::dimensionless}},
        {"decohere.grid_p", {Dimension::dimensionless}},
        {"decohere.box_length", {Dimension::dimensionless}},
        {"decohere.dt", {Dimension::dimensionless}},
        {"decohere.s_max", {Dimension::dimensionless}},
        {"gpe.g", {Dimension::dimensionless}},
        {"gpe.gamma", {Dimension::dimensionless}},
        {"gpe.l_c", {Dimension::dimensionless}},
        {"gpe.realizations", {Dimension::dimensionless}},
        {"gpe.grid_points", {Dimension::dimensionless}},
        {"gpe.box_length", {Dimension::dimensionless}},
        {"gpe.dt", {Dimension::dimensionless}},
        {"gpe.t_final", {Dimension::dimensionless}},
        {"gpe.snapshots",
         {Dimension::dimensionless, false, false, /*is_list=*/true}},
        {"gpe.s_max", {Dimension::dimensionless}},
    };
    return s;
}

std::string trim(const std::string& s) {
    const auto a = s.find_first_not_of(" \t\r\n");
    if (a == std::string::npos) return "";
    const auto b = s.find_last_not_of(" \t\r\n");
    return s.substr(a, b - a + 1);
}

bool parse_number(const std::string& tok, double* out) {
    char extra;
    return std::sscanf(tok.c_str(), "%lf %c", out, &extra) == 1;
}

std::string format_si(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

}  // namespace

ChipConfig ChipConfig::parse_file(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw ConfigError("cannot open config file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_string(buf.str(), path);
}

ChipConfig ChipConfig::parse_string(const std::string& text,
                                    const std::string& origin) {
    ChipConfig cfg;
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw ConfigError(origin + ":" + std::to_string(lineno) +
                              ": expected 'key = value', got '" + line + "'");
        const std::string key = trim(line.substr(0, eq));
        const std::string rest = trim(line.substr(eq + 1));
        if (cfg.entries_.count(key))
            throw ConfigError(origin + ":" + std::to_string(lineno) +
                              ": duplicate key '" + key + "'");
        // split value from optional trailing unit token
        std::string value = rest, unit;
        const auto sp = rest.find_last_of(" \t");
        if (sp != std::string::npos) {
            const std::string tail = trim(rest.substr(sp + 1));
            double ignored;
            if (!tail.empty() && !parse_number(tail, &ignored)) {
                value = trim(rest.substr(0, sp));
                unit = tail;
            }
        }
        cfg.set_impl(key, value, unit, lineno, origin);
    }
    return cfg;
}

void ChipConfig::set(const std::string& assignment) {
    const auto eq = assignment.find('=');
    if (eq == std::string::npos)
        throw ConfigError("override must look like key=value, got '" +
                          assignment + "'");
    set(trim(assignment.substr(0, eq)), trim(assignment.substr(eq + 1)));
}

void ChipConfig::set(const std::string& key, const std::string& value_and_unit) {
    std::string value = value_and_unit, unit;
    const auto sp = value_and_unit.find_last_of(" \t");
    if (sp != std::string::npos) {
        const std::string tail = trim(value_and_unit.substr(sp + 1));
        double ignored;
        if (!tail.empty() && !parse_number(tail, &ignored)) {
            value = trim(value_and_unit.substr(0, sp));
            unit = tail;
        }
    }
    entries_.erase(key);
    set_impl(key, value, unit, 0, "<set>");
}

void ChipConfig::set_impl(const std::string& key, const std::string& value,
                          const std::string& unit, int line,
                          const std::string& origin) {
    const auto where = line > 0 ? origin + ":" + std::to_string(line) + ": "
                                : origin + ": ";
    auto it = schema().find(key);
    if (it == schema().end())
        throw ConfigError(where + "unknown key '" + key + "'");
    const KeySpec& spec = it->second;
    ConfigEntry e;
    e.raw = value;
    e.unit = unit;
    e.line = line;
    if (spec.is_string || spec.is_list) {
        if (!unit.empty())
            throw ConfigError(where + "key '" + key + "' takes no unit");
        e.numeric = false;
        if (spec.is_list) {
            // validate now so errors carry the line number
            std::stringstream ss(value);
            std::string tok;
            while (std::getline(ss, tok, ',')) {
                double v;
                if (!parse_number(trim(tok), &v))
                    throw ConfigError(where + "key '" + key +
                                      "': bad list element '" + trim(tok) + "'");
            }
        }
    } else {
        double v;
        if (!parse_number(value, &v))
            throw ConfigError(where + "key '" + key + "': unparseable number '" +
                              value + "'");
        try {
            e.si_value = convert_to_si(v, unit, spec.dim);
        } catch (const ConfigError& err) {
            throw ConfigError(where + "key '" + key + "': " + err.what());
        }
    }
    entries_[key] = std::move(e);
}

bool ChipConfig::has(const std::string& key) const {
    return entries_.count(key) != 0;
}

double ChipConfig::get(const std::string& key) const {
    auto it = entries_.find(key);
    if (it == entries_.end())
        throw ConfigError("missing config key '" + key + "'");
    if (!it->second.numeric)
        throw ConfigError("config key '" + key + "' is not numeric");
    return it->second.si_value;
}

double ChipConfig::get_or(const std::string& key, double fallback) const {
    auto it = entries_.find(key);
    if (it == entries_.end()) return fallback;
    return get(key);
}

std::string ChipConfig::get_raw(const std::string& key) const {
    auto it = entries_.find(key);
    if (it == entries_.end())
        throw ConfigError("missing config key '" + key + "'");
    return it->second.raw;
}

std::vector<double> ChipConfig::get_list(const std::string& key) const {
    const std::string raw = get_raw(key);
    std::vector<double> out;
    std::stringstream ss(raw);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        double v;
        if (!parse_number(trim(tok), &v))
            throw ConfigError("config key '" + key + "': bad list element '" +
                              trim(tok) + "'");
        out.push_back(v);
    }
    return out;
}

void ChipConfig::validate() const {
    std::vector<std::string> missing;
    for (const auto& [key, spec] : schema())
        if (spec.required && !entries_.count(key)) missing.push_back(key);
    if (!missing.empty()) {
        std::string msg = "missing required config keys:";
        for (const auto& k : missing) msg += " " + k;
        throw ConfigError(msg);
    }

    auto positive = [&](const std::string& key) {
        if (get(key) <= 0.0) {
            const int line = entries_.at(key).line;
            throw ConfigError("config key '" + key + "' must be > 0" +
                              (line > 0 ? " (line " + std::to_string(line) + ")"
                                        : ""));
        }
    };
    positive("current");
    positive("bias_field");
    positive("atom.mass");
    positive("material.resistivity");
    if (get("material.temperature") < 0.0)
        throw ConfigError("config key 'material.temperature' must be >= 0");

    const double F = get_or("atom.spin_F", 0.5);
    if (F <= 0.0 || std::abs(2.0 * F - std::round(2.0 * F)) > 1e-9)
        throw ConfigError("config key 'atom.spin_F' must be a positive half-integer");

    if (has("wire.radius")) {
        positive("wire.radius");
        const double h = guide_height(get("current"), get("bias_field"));
        if (h <= get("wire.radius"))
            throw ConfigError("derived guide height " + format_si(h) +
                              " m does not exceed wire.radius; thin-wire "
                              "model requires radius < h");
    }
    if (has("trap_frequency") && get("trap_frequency") < 0.0)
        throw ConfigError("config key 'trap_frequency' must be >= 0");
    if (has("current_noise.ratio") && get("current_noise.ratio") < 0.0)
        throw ConfigError("config key 'current_noise.ratio' must be >= 0");
    if (has("electron.distribution")) {
        const std::string d = get_raw("electron.distribution");
        if (d != "maxwell" && d != "fermi" && d != "delta")
            throw ConfigError("electron.distribution must be maxwell, fermi or delta");
    }
    if (has("decohere.correlation")) {
        const std::string c = get_raw("decohere.correlation");
        if (c != "lorentzian" && c != "nearfield")
            throw ConfigError("decohere.correlation must be lorentzian or nearfield");
    }
}

SideGuideConfig ChipConfig::guide() const {
    SideGuideConfig g;
    g.current = get("current");
    g.bias_field = get("bias_field");
    g.longitudinal_field = get_or("longitudinal_field", 0.0);
    g.trap_frequency = get_or("trap_frequency", 0.0);
    g.material = Material(get("material.resistivity"),
                          get("material.temperature"));
    const double mu = get("atom.mu_parallel");
    g.atom = AtomSpecies(get("atom.mass"), mu,
                         get_or("atom.delta_mu_parallel", mu),
                         get_or("atom.spin_F", 0.5), get_or("atom.g_factor", 2.0));
    if (has("wire.radius"))
        g.wire = WireGeometry::thin_wire(get("wire.radius"));
    g.validate();
    return g;
}

ElectronVelocityDist ChipConfig::electron_dist() const {
    const std::string kind = has("electron.distribution")
                                 ? get_raw("electron.distribution")
                                 : std::string("fermi");
    const double v_char = get_or("electron.v_char", 1.57e6);
    const double drift = get_or("electron.v_drift", 0.0);
    if (kind == "maxwell") return ElectronVelocityDist::maxwell(v_char, drift);
    if (kind == "delta") return ElectronVelocityDist::delta(v_char, drift);
    const double t_e = get_or("electron.temperature",
                              get_or("material.temperature", 300.0));
    return ElectronVelocityDist::fermi_dirac(
        v_char, fermi_edge_smearing(v_char, t_e), drift);
}

CondensateConfig ChipConfig::gpe_config() const {
    CondensateConfig c;
    c.g = get_or("gpe.g", c.g);
    c.gamma = get_or("gpe.gamma", c.gamma);
    c.l_c = get_or("gpe.l_c", c.l_c);
    c.n_realizations = static_cast<int>(get_or("gpe.realizations", c.n_realizations));
    c.n_z = static_cast<int>(get_or("gpe.grid_points", c.n_z));
    c.box_length = get_or("gpe.box_length", c.box_length);
    c.dt = get_or("gpe.dt", c.dt);
    c.t_final = get_or("gpe.t_final", c.t_final);
    c.s_max = get_or("gpe.s_max", 0.0);
    c.seed = static_cast<std::uint64_t>(get_or("seed", 1.0));
    if (has("gpe.snapshots")) c.snapshot_times = get_list("gpe.snapshots");
    if (c.snapshot_times.empty()) c.snapshot_times = {c.t_final};
    const double tmax = *std::max_element(c.snapshot_times.begin(),
                                          c.snapshot_times.end());
    c.t_final = std::max(c.t_final, tmax);
    c.validate();
    return c;
}

std::string ChipConfig::echo() const {
    std::string out;
    for (const auto& [key, e] : entries_) {
        out += key;
        out += " = ";
        out += e.numeric ? format_si(e.si_value) : e.raw;
        out += "\n";
    }
    return out;
}

}  // namespace chipnoise
