#pragma once

#include "thermoplate/errors.hpp"
#include "thermoplate/linsolve.hpp"
#include "thermoplate/model.hpp"
#include "thermoplate/stepper.hpp"

#include <array>
#include <charconv>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <functional>
#include <istream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace thermoplate {

enum class Experiment { Smooth, LShape, Example1Ted, Example1Tpe, Custom };

inline std::string to_string(Experiment e) {
    switch (e) {
        case Experiment::Smooth: return "smooth";
        case Experiment::LShape: return "lshape";
        case Experiment::Example1Ted: return "example1-ted";
        case Experiment::Example1Tpe: return "example1-tpe";
        case Experiment::Custom: return "custom";
    }
    return "?";
}

inline Experiment parse_experiment(const std::string& s) {
    for (auto e : {Experiment::Smooth, Experiment::LShape, Experiment::Example1Ted, Experiment::Example1Tpe,
                   Experiment::Custom})
        if (to_string(e) == s) return e;
    throw ConfigError("unknown experiment '" + s + "'");
}

enum class DtPolicy {
    Refined,  // dt = 2^{-3/2} h
    Fixed,
};

/// Axis-aligned observation cell [x0,x1] x [y0,y1].
struct CellRect {
    double x0 = 5.0 / 64.0, x1 = 6.0 / 64.0, y0 = 5.0 / 64.0, y1 = 6.0 / 64.0;
    [[nodiscard]] double area() const { return (x1 - x0) * (y1 - y0); }
};

struct RunConfig {
    Experiment experiment = Experiment::Smooth;
    double gamma = -1.0;  // smooth / lshape presets
    std::vector<int> levels{4, 8, 16, 32};
    double final_time = 1.0;
    DtPolicy dt_policy = DtPolicy::Refined;
    double dt = 0.25;
    double sigma_ip = kDefaultSigmaIp;
    SolverKind solver = SolverKind::DirectLU;
    std::string output_dir = "out";
    int snapshot_every = 0;  // 0: no snapshots

    // custom experiment: smooth exact solution with these coefficients
    ModelCoefficients coeffs = smooth_study_coefficients(-1.0);

    // example1
    Material3D material = copper_ted();
    double thickness = 0.5;
    int mesh_n = 64;
    CellRect cell;

    void validate() const {
        if (levels.empty()) throw ConfigError("run.levels must not be empty");
        for (std::size_t i = 0; i < levels.size(); ++i) {
            if (levels[i] < 1) throw ConfigError("run.levels entries must be >= 1");
            if (i > 0 && levels[i] <= levels[i - 1]) throw ConfigError("run.levels must be strictly increasing");
        }
        if (!(final_time > 0.0) || !std::isfinite(final_time)) throw ConfigError("run.final_time must be positive");
        if (!(dt > 0.0) || !std::isfinite(dt)) throw ConfigError("run.dt must be positive");
        if (!(sigma_ip > 0.0) || !std::isfinite(sigma_ip)) throw ConfigError("run.sigma_ip must be positive");
        if (snapshot_every < 0) throw ConfigError("run.snapshot_every must be >= 0");
        if (!(thickness > 0.0)) throw ConfigError("example1.thickness must be positive");
        if (mesh_n < 1) throw ConfigError("example1.mesh must be >= 1");
        if (!(cell.x0 < cell.x1 && cell.y0 < cell.y1)) throw ConfigError("example1.cell is empty");
        if (cell.x0 < 0.0 || cell.y0 < 0.0 || cell.x1 > 1.0 || cell.y1 > 1.0)
            throw ConfigError("example1.cell must lie inside the unit square");
        if (gamma != 1.0 && gamma != -1.0 && (experiment == Experiment::Smooth || experiment == Experiment::LShape))
            throw ConfigError("run.gamma must be +1 or -1 for the smooth and lshape presets");
    }
};

/// Preset defaults of each experiment before any config file is applied.
inline RunConfig preset(Experiment e) {
    RunConfig c;
    c.experiment = e;
    switch (e) {
        case Experiment::Smooth:
        case Experiment::Custom: break;
        case Experiment::LShape:
            c.levels = {2, 4, 8, 16, 32};
            c.dt_policy = DtPolicy::Fixed;
            c.dt = 0.25;
            break;
        case Experiment::Example1Ted:
            c.material = copper_ted();
            c.final_time = 10.0;
            c.dt_policy = DtPolicy::Fixed;
            c.dt = 1.0 / 8.0;
            break;
        case Experiment::Example1Tpe:
            c.material = berea_tpe();
            c.final_time = 100.0;
            c.dt_policy = DtPolicy::Fixed;
            c.dt = 10.0 / 8.0;
            break;
    }
    return c;
}

/// Flat `[section]` / `key = value` text with `#` comments.
using IniData = std::map<std::string, std::map<std::string, std::pair<std::string, int>>>;  // value, line

inline std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return {};
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

inline IniData parse_ini(std::istream& in) {
    IniData data;
    std::string line, section;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        if (line.front() == '[') {
            if (line.back() != ']') throw ConfigError("line " + std::to_string(lineno) + ": malformed section header");
            section = trim(line.substr(1, line.size() - 2));
            data[section];
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string::npos) throw ConfigError("line " + std::to_string(lineno) + ": expected key = value");
        if (section.empty()) throw ConfigError("line " + std::to_string(lineno) + ": key outside of any section");
        const std::string key = trim(line.substr(0, eq));
        if (!data[section].emplace(key, std::pair{trim(line.substr(eq + 1)), lineno}).second)
            throw ConfigError("line " + std::to_string(lineno) + ": duplicate key " + section + "." + key);
    }
    return data;
}

namespace detail {

inline double parse_number(const std::string& key, const std::string& s) {
    // fractions such as 1/8 are accepted for time steps and cell bounds
    if (const auto slash = s.find('/'); slash != std::string::npos)
        return parse_number(key, trim(s.substr(0, slash))) / parse_number(key, trim(s.substr(slash + 1)));
    double v = 0.0;
    const auto* end = s.data() + s.size();
    const auto [ptr, ec] = std::from_chars(s.data(), end, v);
    if (ec != std::errc() || ptr != end || s.empty()) throw ConfigError(key + ": cannot parse '" + s + "' as a number");
    return v;
}

inline int parse_int(const std::string& key, const std::string& s) {
    int v = 0;
    const auto* end = s.data() + s.size();
    const auto [ptr, ec] = std::from_chars(s.data(), end, v);
    if (ec != std::errc() || ptr != end || s.empty()) throw ConfigError(key + ": cannot parse '" + s + "' as an integer");
    return v;
}

inline std::vector<std::string> split_list(const std::string& s) {
    std::vector<std::string> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) out.push_back(trim(item));
    return out;
}

}  // namespace detail

/// Applies parsed INI data on top of `cfg`. Unknown sections or keys are
/// rejected with the offending name.
inline void apply_ini(RunConfig& cfg, const IniData& data) {
    using Setter = std::function<void(const std::string&, const std::string&)>;
    auto num = [](double& dst) -> Setter {
        return [&dst](const std::string& k, const std::string& v) { dst = detail::parse_number(k, v); };
    };
    std::map<std::string, Setter> setters{
        {"run.gamma", num(cfg.gamma)},
        {"run.levels",
         [&](const std::string& k, const std::string& v) {
             cfg.levels.clear();
             for (const auto& item : detail::split_list(v)) cfg.levels.push_back(detail::parse_int(k, item));
         }},
        {"run.final_time", num(cfg.final_time)},
        {"run.dt_policy",
         [&](const std::string& k, const std::string& v) {
             if (v == "refined") cfg.dt_policy = DtPolicy::Refined;
             else if (v == "fixed") cfg.dt_policy = DtPolicy::Fixed;
             else throw ConfigError(k + ": expected refined or fixed, got '" + v + "'");
         }},
        {"run.dt",
         [&](const std::string& k, const std::string& v) {
             cfg.dt = detail::parse_number(k, v);
             cfg.dt_policy = DtPolicy::Fixed;
         }},
        {"run.sigma_ip", num(cfg.sigma_ip)},
        {"run.solver",
         [&](const std::string& k, const std::string& v) {
             if (v == "lu") cfg.solver = SolverKind::DirectLU;
             else if (v == "iterative") cfg.solver = SolverKind::Iterative;
             else throw ConfigError(k + ": expected lu or iterative, got '" + v + "'");
         }},
        {"run.output_dir", [&](const std::string&, const std::string& v) { cfg.output_dir = v; }},
        {"run.snapshot_every",
         [&](const std::string& k, const std::string& v) { cfg.snapshot_every = detail::parse_int(k, v); }},
        {"coefficients.a0", num(cfg.coeffs.a0)},
        {"coefficients.d0", num(cfg.coeffs.d0)},
        {"coefficients.alpha", num(cfg.coeffs.alpha)},
        {"coefficients.beta", num(cfg.coeffs.beta)},
        {"coefficients.a1", num(cfg.coeffs.a1)},
        {"coefficients.gamma", num(cfg.coeffs.gamma)},
        {"coefficients.b1", num(cfg.coeffs.b1)},
        {"coefficients.c1", num(cfg.coeffs.c1)},
        {"coefficients.a2", num(cfg.coeffs.a2)},
        {"coefficients.kappa", num(cfg.coeffs.kappa)},
        {"material.preset",
         [&](const std::string& k, const std::string& v) {
             if (v == "copper") cfg.material = copper_ted();
             else if (v == "berea") cfg.material = berea_tpe();
             else throw ConfigError(k + ": expected copper or berea, got '" + v + "'");
         }},
        {"material.lambda", num(cfg.material.lambda)},
        {"material.mu", num(cfg.material.mu)},
        {"material.varrho", num(cfg.material.varrho)},
        {"material.alpha_t", num(cfg.material.alpha_t)},
        {"material.alpha_c", num(cfg.material.alpha_c)},
        {"material.varpi", num(cfg.material.varpi)},
        {"material.rho", num(cfg.material.rho)},
        {"material.c_e", num(cfg.material.c_e)},
        {"material.t0", num(cfg.material.t0)},
        {"material.k1", num(cfg.material.k1)},
        {"material.k2", num(cfg.material.k2)},
        {"material.gamma_star", num(cfg.material.gamma_star)},
        {"material.beta_star", num(cfg.material.beta_star)},
        {"example1.thickness", num(cfg.thickness)},
        {"example1.mesh", [&](const std::string& k, const std::string& v) { cfg.mesh_n = detail::parse_int(k, v); }},
        {"example1.cell",
         [&](const std::string& k, const std::string& v) {
             const auto items = detail::split_list(v);
             if (items.size() != 4) throw ConfigError(k + ": expected x0, x1, y0, y1");
             cfg.cell = {detail::parse_number(k, items[0]), detail::parse_number(k, items[1]),
                         detail::parse_number(k, items[2]), detail::parse_number(k, items[3])};
         }},
    };
    // material.preset must be applied before individual constants
    std::vector<std::pair<std::string, std::string>> ordered;
    for (const auto& [section, keys] : data)
        for (const auto& [key, entry] : keys) {
            const std::string full = section + "." + key;
            if (!setters.count(full))
                throw ConfigError("line " + std::to_string(entry.second) + ": unknown key '" + full + "'");
            if (full == "material.preset") ordered.insert(ordered.begin(), {full, entry.first});
            else ordered.emplace_back(full, entry.first);
        }
    for (const auto& [key, value] : ordered) setters.at(key)(key, value);
}

/// Reads `path`: the experiment named in [run] selects the preset, the
/// remaining keys override it.
inline RunConfig load_config(std::istream& in) {
    IniData data = parse_ini(in);
    Experiment e = Experiment::Smooth;
    if (auto s = data.find("run"); s != data.end())
        if (auto k = s->second.find("experiment"); k != s->second.end()) {
            e = parse_experiment(k->second.first);
            s->second.erase(k);
        }
    RunConfig cfg = preset(e);
    apply_ini(cfg, data);
    cfg.validate();
    return cfg;
}

inline RunConfig load_config(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file " + path.string());
    return load_config(in);
}

}  // namespace thermoplate
