// chipnoise command-line front end. All physics goes through the C API
// in chipnoise/chipnoise.h; this layer only parses arguments, drives
// sweeps, and serializes CSV/JSON outputs with reproducible manifests.

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <memory>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "chipnoise/chipnoise.h"
#include "cli_support.hpp"

namespace {

using cli::CsvWriter;
using cli::Manifest;
using cli::OutputRecord;
using cli::SweepSpec;
using cli::ordered_json;

struct ConfigHandle {
    chipnoise_config* ptr = nullptr;
    ConfigHandle() = default;
    explicit ConfigHandle(chipnoise_config* p) : ptr(p) {}
    ~ConfigHandle() { chipnoise_config_free(ptr); }
    ConfigHandle(ConfigHandle&& o) noexcept : ptr(o.ptr) { o.ptr = nullptr; }
    ConfigHandle& operator=(ConfigHandle&& o) noexcept {
        if (this != &o) {
            chipnoise_config_free(ptr);
            ptr = o.ptr;
            o.ptr = nullptr;
        }
        return *this;
    }
    ConfigHandle(const ConfigHandle&) = delete;
    ConfigHandle& operator=(const ConfigHandle&) = delete;
};

void check(chipnoise_status st, const std::string& context) {
    if (st != CHIPNOISE_OK)
        throw std::runtime_error(context + ": " + chipnoise_last_error());
}

void drain_warnings() {
    while (const char* w = chipnoise_next_warning())
        std::cerr << "warning: " << w << "\n";
}

std::map<std::string, std::string> config_echo(const ConfigHandle& cfg) {
    std::map<std::string, std::string> echo;
    const size_t n = chipnoise_config_count(cfg.ptr);
    for (size_t i = 0; i < n; ++i) {
        const char *k = nullptr, *v = nullptr;
        check(chipnoise_config_entry(cfg.ptr, i, &k, &v), "config entry");
        echo[k] = v;
    }
    return echo;
}

ConfigHandle config_from_echo(const std::map<std::string, std::string>& echo) {
    chipnoise_config* raw = nullptr;
    check(chipnoise_config_create(&raw), "config create");
    ConfigHandle cfg(raw);
    for (const auto& [k, v] : echo)
        check(chipnoise_config_set(cfg.ptr, (k + "=" + v).c_str()),
              "config set " + k);
    return cfg;
}

ConfigHandle load_config(const std::string& path,
                         const std::vector<std::string>& sets) {
    chipnoise_config* raw = nullptr;
    if (!path.empty())
        check(chipnoise_config_parse(path.c_str(), &raw), "parse " + path);
    else
        check(chipnoise_config_create(&raw), "config create");
    ConfigHandle cfg(raw);
    for (const auto& s : sets)
        check(chipnoise_config_set(cfg.ptr, s.c_str()), "--set " + s);
    return cfg;
}

double get(const ConfigHandle& cfg, const std::string& key) {
    double v = 0;
    check(chipnoise_config_get(cfg.ptr, key.c_str(), &v), "get " + key);
    return v;
}

double get_or(const ConfigHandle& cfg, const std::string& key, double fallback) {
    if (!chipnoise_config_has(cfg.ptr, key.c_str())) return fallback;
    return get(cfg, key);
}

std::vector<double> parse_list(const std::string& raw) {
    std::vector<double> out;
    std::stringstream ss(raw);
    std::string tok;
    while (std::getline(ss, tok, ',')) out.push_back(std::stod(tok));
    return out;
}

// apply one sweep value; "height" back-solves the wire current at fixed
// bias (the way the paper's distance scans ramp I at constant I/h)
void apply_sweep_value(ConfigHandle& cfg, const std::string& key, double value) {
    if (key == "height") {
        chipnoise_constants k{};
        chipnoise_get_constants(&k);
        const double bias = get(cfg, "bias_field");
        const double current = value * bias * 2.0 * M_PI / k.mu0;
        check(chipnoise_config_set(cfg.ptr,
                                   ("current=" + cli::format_number(current))
                                       .c_str()),
              "sweep height");
        return;
    }
    char buf[64];
    std::snprintf(buf, sizeof buf, "%s=%.17g", key.c_str(), value);
    check(chipnoise_config_set(cfg.ptr, buf), "sweep " + key);
}

void echo_comments(CsvWriter& csv, const std::map<std::string, std::string>& echo) {
    for (const auto& [k, v] : echo) csv.comment(k + " = " + v);
}

std::string describe_time(double t) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%g", t);
    return buf;
}

// Writes the output set plus a manifest when an output directory is
// given; otherwise streams the primary artifact to stdout.
int finalize(Manifest& manifest, const std::string& out_dir,
             std::vector<std::pair<std::string, std::string>> files,
             bool stdout_already_served = false) {
    if (out_dir.empty()) {
        if (!files.empty() && !stdout_already_served)
            std::cout << files.front().second;
        return 0;
    }
    for (auto& [name, content] : files)
        manifest.add_output(cli::write_output(out_dir, name, content));
    manifest.mark_finished();
    const std::string mjson = manifest.to_json().dump(2) + "\n";
    cli::write_output(out_dir, "manifest.json", mjson);
    std::cout << "wrote " << files.size() << " output file(s) + manifest to "
              << out_dir << "\n";
    return 0;
}

// ---- spectrum ---------------------------------------------------------

int run_spectrum(const ConfigHandle& cfg, const std::string& model,
                 const SweepSpec* sweep, const std::string& out_dir,
                 const std::string& command) {
    check(chipnoise_config_validate(cfg.ptr), "config");
    const auto echo = config_echo(cfg);

    SweepSpec omega_sweep;
    if (sweep) {
        if (sweep->key != "omega")
            throw std::runtime_error(
                "spectrum sweeps run over 'omega'; use the rates command to "
                "scan geometry keys");
        omega_sweep = *sweep;
    } else {
        omega_sweep =
            SweepSpec::parse("omega:6.283185307179586e3:6.283185307179586e9:61:log");
    }

    const double rho = get(cfg, "material.resistivity");
    const double temp = get(cfg, "material.temperature");
    const double current = get(cfg, "current");
    const double bias = get(cfg, "bias_field");
    double h = 0;
    check(chipnoise_guide_height(current, bias, &h), "guide height");
    const double noise_ratio = get_or(cfg, "current_noise.ratio", 1.0);

    chipnoise_electron_dist dist{};
    dist.kind = CHIPNOISE_DIST_FERMI_DIRAC;
    dist.characteristic_velocity = get_or(cfg, "electron.v_char", 1.57e6);
    dist.drift_velocity = get_or(cfg, "electron.v_drift", 0.0);
    if (chipnoise_config_has(cfg.ptr, "electron.distribution")) {
        // the raw string lives in the echo
        const std::string kind = echo.at("electron.distribution");
        if (kind == "maxwell") dist.kind = CHIPNOISE_DIST_MAXWELL;
        else if (kind == "delta") dist.kind = CHIPNOISE_DIST_DELTA;
    }
    if (dist.kind == CHIPNOISE_DIST_FERMI_DIRAC) {
        chipnoise_constants kc{};
        chipnoise_get_constants(&kc);
        const double te = get_or(cfg, "electron.temperature",
                                 get_or(cfg, "material.temperature", 300.0));
        dist.smearing = kc.kB * te / (kc.m_e * dist.characteristic_velocity);
    }

    CsvWriter csv;
    csv.comment("spectrum model: " + model);
    csv.comment(model == "halfspace"
                    ? "axes: cartesian surface (x, y = surface normal, z = guide)"
                    : "axes: cylindrical wire (x = azimuthal, y = radial, "
                      "z = longitudinal)");
    csv.comment("derived guide height h = " + cli::format_number(h) + " m");
    echo_comments(csv, echo);
    csv.header({"omega_rad_s", "S_xx", "S_yy", "S_zz", "S_offdiag_max"});

    for (double omega : omega_sweep.values()) {
        chipnoise_noise_tensor t{};
        if (model == "halfspace") {
            check(chipnoise_halfspace_spectrum(rho, temp, h, omega, 0, &t),
                  "halfspace spectrum");
        } else if (model == "thinwire") {
            if (!chipnoise_config_has(cfg.ptr, "wire.radius"))
                throw std::runtime_error("thinwire model needs wire.radius");
            check(chipnoise_thin_wire_spectrum(rho, temp, get(cfg, "wire.radius"),
                                               h, omega, &t),
                  "thin wire spectrum");
        } else if (model == "current") {
            double s = 0;
            check(chipnoise_current_noise_field_spectrum(current, h, noise_ratio,
                                                         &s),
                  "current noise");
            t.components[0] = s;  // azimuthal
            t.axes = CHIPNOISE_AXES_CYLINDRICAL_WIRE;
        } else if (model == "shot") {
            double s = 0;
            check(chipnoise_shot_noise_spectrum(current, h, h, 0.0, omega, &dist,
                                                &s),
                  "shot noise spectrum");
            t.components[0] = s;  // azimuthal
            t.axes = CHIPNOISE_AXES_CYLINDRICAL_WIRE;
        } else {
            throw std::runtime_error("unknown spectrum model '" + model + "'");
        }
        drain_warnings();
        const double offdiag =
            std::max({std::abs(t.components[1]), std::abs(t.components[2]),
                      std::abs(t.components[5])});
        csv.row({omega, t.components[0], t.components[4], t.components[8],
                 offdiag});
    }

    Manifest manifest;
    manifest.set_tool_version(chipnoise_version());
    manifest.set_command(command);
    manifest.set_subcommand("spectrum");
    manifest.set_config_echo(echo);
    manifest.set_sweep(omega_sweep);
    manifest.set_extra("model", model);
    manifest.mark_started();
    return finalize(manifest, out_dir, {{"spectrum.csv", csv.str()}});
}

// ---- rates ------------------------------------------------------------

ordered_json report_to_json(const chipnoise_rate_report& r) {
    ordered_json j;
    j["eq6_eq8_flip_rate_s"] = r.flip_rate;
    j["eq9_nearfield_flip_estimate_s"] = r.flip_estimate;
    j["eq12_current_flip_estimate_s"] = r.current_flip_estimate;
    j["eq14_dephasing_rate_s"] = r.dephasing_rate;
    j["eq20_heating_01_s"] = r.heating_01;
    j["eq21_nearfield_heating_estimate_s"] = r.heating_estimate;
    j["eq23_displacement_heating_estimate_s"] = r.displacement_estimate;
    j["eq25_parametric_heating_s"] = r.heating_02;
    j["temperature_rise_K_s"] = r.temperature_rise;
    j["loss_timescale_s"] = r.loss_timescale;
    j["omega_larmor_rad_s"] = r.omega_larmor;
    j["height_m"] = r.height;
    j["correlation_length_m"] = r.correlation_length;
    j["dominant_channel"] = r.dominant_channel;
    return j;
}

std::string report_to_text(const chipnoise_rate_report& r) {
    char buf[2048];
    std::snprintf(
        buf, sizeof buf,
        "side guide: h = %.4g m, omega_L/2pi = %.4g Hz, l_c = %.4g m\n"
        "\n"
        "first-principles rates\n"
        "  spin flip (eq6 x eq8)        %12.5g 1/s\n"
        "  dephasing (eq14)             %12.5g 1/s\n"
        "  heating 0->1 (eq20)          %12.5g 1/s\n"
        "  parametric 0->2 (eq25)       %12.5g 1/s\n"
        "  temperature rise             %12.5g K/s\n"
        "  loss timescale               %12.5g s\n"
        "\n"
        "scaling estimates\n"
        "  near-field flip (eq9)        %12.5g 1/s\n"
        "  current-noise flip (eq12)    %12.5g 1/s\n"
        "  near-field heating (eq21)    %12.5g 1/s\n"
        "  displacement heating (eq23)  %12.5g 1/s\n"
        "  parametric heating (eq25)    %12.5g 1/s\n"
        "\n"
        "dominant channel: %s\n",
        r.height, r.omega_larmor / (2 * M_PI), r.correlation_length,
        r.flip_rate, r.dephasing_rate, r.heating_01, r.heating_02,
        r.temperature_rise, r.loss_timescale, r.flip_estimate,
        r.current_flip_estimate, r.heating_estimate, r.displacement_estimate,
        r.parametric_estimate, r.dominant_channel);
    return buf;
}

int run_rates(const ConfigHandle& cfg, bool as_json, const SweepSpec* sweep,
              const std::string& out_dir, const std::string& command) {
    check(chipnoise_config_validate(cfg.ptr), "config");
    const auto echo = config_echo(cfg);

    Manifest manifest;
    manifest.set_tool_version(chipnoise_version());
    manifest.set_command(command);
    manifest.set_subcommand("rates");
    manifest.set_config_echo(echo);
    manifest.mark_started();

    if (!sweep) {
        chipnoise_rate_report rep{};
        check(chipnoise_compute_rates(cfg.ptr, &rep), "rates");
        drain_warnings();
        const std::string text = report_to_text(rep);
        const std::string json = report_to_json(rep).dump(2) + "\n";
        std::cout << (as_json ? json : text);
        if (out_dir.empty()) return 0;
        return finalize(manifest, out_dir,
                        {{"rates.json", json}, {"rates.txt", text}},
                        /*stdout_already_served=*/true);
    }

    manifest.set_sweep(*sweep);
    CsvWriter csv;
    csv.comment("rates sweep over " + sweep->key);
    echo_comments(csv, echo);
    csv.header({sweep->key, "height_m", "flip_rate_eq6_eq8",
                "flip_estimate_eq9", "current_flip_eq12", "dephasing_eq14",
                "heating01_eq20", "heating_estimate_eq21",
                "displacement_eq23", "parametric_eq25",
                "temperature_rise_K_s", "loss_timescale_s"});
    for (double v : sweep->values()) {
        ConfigHandle point = config_from_echo(echo);
        apply_sweep_value(point, sweep->key, v);
        check(chipnoise_config_validate(point.ptr), "sweep config");
        chipnoise_rate_report rep{};
        check(chipnoise_compute_rates(point.ptr, &rep), "rates");
        drain_warnings();
        csv.row({v, rep.height, rep.flip_rate, rep.flip_estimate,
                 rep.current_flip_estimate, rep.dephasing_rate, rep.heating_01,
                 rep.heating_estimate, rep.displacement_estimate,
                 rep.parametric_estimate, rep.temperature_rise,
                 rep.loss_timescale});
    }
    return finalize(manifest, out_dir, {{"rates_sweep.csv", csv.str()}});
}

// ---- decohere ----------------------------------------------------------

int run_decohere(const ConfigHandle& cfg, const std::string& out_dir,
                 const std::string& command) {
    const auto echo = config_echo(cfg);
    chipnoise_decohere_params p{};
    chipnoise_decohere_params_init(&p);
    p.gamma = get_or(cfg, "decohere.gamma", 1.0);
    p.l_c = get_or(cfg, "decohere.l_c", 1.0);
    p.n_z = static_cast<int>(get_or(cfg, "decohere.grid_z", 128));
    p.n_p = static_cast<int>(get_or(cfg, "decohere.grid_p", 1024));
    p.box_length = get_or(cfg, "decohere.box_length", 0.0);
    p.dt = get_or(cfg, "decohere.dt", 0.0);
    p.s_max = get_or(cfg, "decohere.s_max", 0.0);
    if (chipnoise_config_has(cfg.ptr, "decohere.correlation") &&
        echo.at("decohere.correlation") == "nearfield")
        p.correlation = 1;
    std::vector<double> times{0.5, 1.0};
    if (chipnoise_config_has(cfg.ptr, "decohere.times"))
        times = parse_list(echo.at("decohere.times"));

    chipnoise_decohere_result* raw = nullptr;
    check(chipnoise_decohere_run(&p, times.data(), times.size(), &raw),
          "decohere");
    std::unique_ptr<chipnoise_decohere_result,
                    decltype(&chipnoise_decohere_free)>
        res(raw, &chipnoise_decohere_free);
    drain_warnings();

    CsvWriter csv;
    csv.comment("scaled units: hbar = M = 1");
    csv.comment("gamma = " + cli::format_number(p.gamma) +
                ", l_c = " + cli::format_number(p.l_c) +
                ", correlation = " +
                std::string(p.correlation ? "nearfield" : "lorentzian"));
    echo_comments(csv, echo);
    std::vector<std::string> cols{"s"};
    const size_t nt = chipnoise_decohere_n_times(res.get());
    for (size_t m = 0; m < nt; ++m) {
        const std::string tag =
            describe_time(chipnoise_decohere_time_at(res.get(), m));
        cols.push_back("abs_rho_t" + tag);
        cols.push_back("analytic_t" + tag);
    }
    csv.header(cols);
    const size_t ns = chipnoise_decohere_n_s(res.get());
    for (size_t i = 0; i < ns; ++i) {
        std::vector<double> row{chipnoise_decohere_s_at(res.get(), i)};
        for (size_t m = 0; m < nt; ++m) {
            row.push_back(chipnoise_decohere_coherence(res.get(), m, i));
            row.push_back(chipnoise_decohere_analytic(res.get(), m, i));
        }
        csv.row(row);
    }

    ordered_json sidecar;
    sidecar["gamma"] = p.gamma;
    sidecar["l_c"] = p.l_c;
    sidecar["correlation"] = p.correlation ? "nearfield" : "lorentzian";
    sidecar["grid_z"] = p.n_z;
    sidecar["grid_p"] = p.n_p;
    sidecar["box_length"] = p.box_length;
    sidecar["dt"] = p.dt;
    sidecar["times"] = times;

    Manifest manifest;
    manifest.set_tool_version(chipnoise_version());
    manifest.set_command(command);
    manifest.set_subcommand("decohere");
    manifest.set_config_echo(echo);
    manifest.set_extra("decohere_params", sidecar);
    manifest.mark_started();
    return finalize(manifest, out_dir,
                    {{"decohere.csv", csv.str()},
                     {"decohere.json", sidecar.dump(2) + "\n"}});
}

// ---- gpe ---------------------------------------------------------------

int run_gpe(const ConfigHandle& cfg, const std::string& out_dir,
            const std::string& command) {
    const auto echo = config_echo(cfg);
    chipnoise_gpe_params p{};
    chipnoise_gpe_params_init(&p);
    p.g = get_or(cfg, "gpe.g", p.g);
    p.gamma = get_or(cfg, "gpe.gamma", p.gamma);
    p.l_c = get_or(cfg, "gpe.l_c", p.l_c);
    p.n_realizations =
        static_cast<int>(get_or(cfg, "gpe.realizations", p.n_realizations));
    p.n_z = static_cast<int>(get_or(cfg, "gpe.grid_points", p.n_z));
    p.box_length = get_or(cfg, "gpe.box_length", p.box_length);
    p.dt = get_or(cfg, "gpe.dt", p.dt);
    p.t_final = get_or(cfg, "gpe.t_final", p.t_final);
    p.s_max = get_or(cfg, "gpe.s_max", 0.0);
    p.seed = static_cast<uint64_t>(get_or(cfg, "seed", 1.0));
    std::vector<double> snaps{p.t_final};
    if (chipnoise_config_has(cfg.ptr, "gpe.snapshots"))
        snaps = parse_list(echo.at("gpe.snapshots"));
    p.snapshots = snaps.data();
    p.n_snapshots = snaps.size();

    chipnoise_gpe_result* raw = nullptr;
    check(chipnoise_gpe_run(&p, &raw), "gpe");
    std::unique_ptr<chipnoise_gpe_result, decltype(&chipnoise_gpe_free)> res(
        raw, &chipnoise_gpe_free);

    std::vector<std::pair<std::string, std::string>> files;
    const size_t nt = chipnoise_gpe_n_times(res.get());
    const size_t ns = chipnoise_gpe_n_s(res.get());
    std::vector<double> actual_times;
    for (size_t m = 0; m < nt; ++m) {
        const double t = chipnoise_gpe_time_at(res.get(), m);
        actual_times.push_back(t);
        CsvWriter csv;
        csv.comment("harmonic-oscillator units; snapshot t = " +
                    describe_time(t));
        csv.comment("ensemble of " + std::to_string(p.n_realizations) +
                    " realizations, seed " + std::to_string(p.seed));
        echo_comments(csv, echo);
        csv.header({"s", "re_rho", "im_rho", "abs_rho_normalized", "stderr"});
        for (size_t i = 0; i < ns; ++i) {
            csv.row({chipnoise_gpe_s_at(res.get(), i),
                     chipnoise_gpe_mean_re(res.get(), m, i),
                     chipnoise_gpe_mean_im(res.get(), m, i),
                     chipnoise_gpe_abs_normalized(res.get(), m, i),
                     chipnoise_gpe_stderr(res.get(), m, i)});
        }
        files.emplace_back("gpe_t" + std::to_string(m) + ".csv", csv.str());
    }

    Manifest manifest;
    manifest.set_tool_version(chipnoise_version());
    manifest.set_command(command);
    manifest.set_subcommand("gpe");
    manifest.set_config_echo(echo);
    manifest.set_seed(p.seed);
    manifest.set_extra("snapshot_times", actual_times);
    manifest.set_extra("realizations", p.n_realizations);
    manifest.set_extra("wall_seconds", chipnoise_gpe_wall_seconds(res.get()));
    manifest.mark_started();
    return finalize(manifest, out_dir, std::move(files));
}

// ---- replay -------------------------------------------------------------

int run_replay(const std::string& manifest_path, std::string out_dir) {
    std::ifstream in(manifest_path);
    if (!in) throw std::runtime_error("cannot open manifest " + manifest_path);
    ordered_json j;
    in >> j;
    const Manifest recorded = Manifest::from_json(j);
    if (out_dir.empty()) out_dir = "replay_out";

    ConfigHandle cfg = config_from_echo(recorded.config_echo());
    const std::string sub = recorded.subcommand();
    const std::string cmd = "replay " + manifest_path;
    if (sub == "spectrum") {
        std::string model = "halfspace";
        if (recorded.extra().count("model"))
            model = recorded.extra().at("model").get<std::string>();
        const SweepSpec sweep = recorded.sweep();
        run_spectrum(cfg, model, recorded.has_sweep() ? &sweep : nullptr,
                     out_dir, cmd);
    } else if (sub == "rates") {
        const SweepSpec sweep = recorded.sweep();
        run_rates(cfg, false, recorded.has_sweep() ? &sweep : nullptr, out_dir,
                  cmd);
    } else if (sub == "decohere") {
        run_decohere(cfg, out_dir, cmd);
    } else if (sub == "gpe") {
        run_gpe(cfg, out_dir, cmd);
    } else {
        throw std::runtime_error("manifest has unknown subcommand '" + sub + "'");
    }

    // compare the rewritten outputs against the recorded digests
    bool all_match = true;
    for (const auto& rec : recorded.outputs()) {
        const std::filesystem::path path = std::filesystem::path(out_dir) / rec.path;
        std::ifstream f(path, std::ios::binary);
        std::ostringstream buf;
        buf << f.rdbuf();
        const std::string digest = cli::fnv1a_hex(buf.str());
        const bool ok = f.good() && digest == rec.digest;
        all_match = all_match && ok;
        std::cout << rec.path << ": " << (ok ? "MATCH" : "MISMATCH") << " ("
                  << digest << (ok ? "" : " != " + rec.digest) << ")\n";
    }
    if (!all_match) throw std::runtime_error("replay outputs differ");
    std::cout << "replay reproduced " << recorded.outputs().size()
              << " output(s) bit-exactly\n";
    return 0;
}

std::string rebuild_command(const std::string& sub,
                            const std::vector<std::string>& parts) {
    std::string cmd = sub;
    for (const auto& p : parts) {
        cmd += " ";
        cmd += p;
    }
    return cmd;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"chipnoise: magnetic-noise limits for atom-chip microtraps"};
    app.set_version_flag("--version", std::string(chipnoise_version()));
    app.require_subcommand(1);

    std::string config_path, out_dir, sweep_text, model = "halfspace";
    std::vector<std::string> sets;
    bool as_json = false;
    std::uint64_t seed = 0;
    bool seed_given = false;
    int realizations = 0;
    std::string manifest_path;

    auto add_common = [&](CLI::App* sub, bool with_config = true) {
        if (with_config)
            sub->add_option("--config", config_path, "config file (key = value unit)");
        sub->add_option("--set", sets, "override, key=value (repeatable)");
        sub->add_option("--out", out_dir, "output directory (enables manifest)");
    };

    CLI::App* spectrum = app.add_subcommand(
        "spectrum", "magnetic noise power spectral density vs frequency");
    add_common(spectrum);
    spectrum->add_option("--sweep", sweep_text, "omega:START:STOP:COUNT:{lin|log}");
    spectrum->add_option("--model", model,
                         "halfspace | thinwire | current | shot");

    CLI::App* rates = app.add_subcommand(
        "rates", "trap loss, dephasing and heating rates");
    add_common(rates);
    rates->add_option("--sweep", sweep_text, "KEY:START:STOP:COUNT:{lin|log}");
    rates->add_flag("--json", as_json, "print the report as JSON");

    CLI::App* decohere = app.add_subcommand(
        "decohere", "wigner master equation coherence decay (scaled units)");
    add_common(decohere);

    CLI::App* gpe = app.add_subcommand(
        "gpe", "stochastic condensate ensemble (scaled units)");
    add_common(gpe);
    gpe->add_option("--seed", seed, "master seed")->each([&](const std::string&) {
        seed_given = true;
    });
    gpe->add_option("--realizations", realizations, "ensemble size");

    CLI::App* replay = app.add_subcommand(
        "replay", "re-run a manifest and verify bit-exact outputs");
    replay->add_option("manifest", manifest_path, "manifest.json path")
        ->required();
    replay->add_option("--out", out_dir, "output directory");

    CLI11_PARSE(app, argc, argv);

    try {
        std::vector<std::string> cmdparts(argv + 2, argv + argc);
        const std::string sub = app.get_subcommands().front()->get_name();
        const std::string command = rebuild_command(sub, cmdparts);

        if (replay->parsed()) return run_replay(manifest_path, out_dir);

        ConfigHandle cfg = load_config(config_path, sets);
        if (gpe->parsed()) {
            if (seed_given)
                check(chipnoise_config_set(
                          cfg.ptr, ("seed=" + std::to_string(seed)).c_str()),
                      "--seed");
            if (realizations > 0)
                check(chipnoise_config_set(
                          cfg.ptr,
                          ("gpe.realizations=" + std::to_string(realizations))
                              .c_str()),
                      "--realizations");
            return run_gpe(cfg, out_dir, command);
        }

        SweepSpec sweep;
        const bool has_sweep = !sweep_text.empty();
        if (has_sweep) sweep = SweepSpec::parse(sweep_text);

        if (spectrum->parsed())
            return run_spectrum(cfg, model, has_sweep ? &sweep : nullptr,
                                out_dir, command);
        if (rates->parsed())
            return run_rates(cfg, as_json, has_sweep ? &sweep : nullptr, out_dir,
                             command);
        if (decohere->parsed()) return run_decohere(cfg, out_dir, command);
        throw std::runtime_error("no subcommand");
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
