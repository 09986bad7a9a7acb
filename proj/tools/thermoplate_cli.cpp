// Command-line driver: convergence studies, Example 1 plate runs and the
// energy checks.
#include "thermoplate/config.hpp"
#include "thermoplate/experiments.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

using namespace thermoplate;

namespace {

struct CommonFlags {
    std::string config;
    std::optional<double> gamma;
    bool extended = false;
    std::optional<int> snapshots;
    std::optional<std::string> out;
};

void add_common(CLI::App* cmd, CommonFlags& f) {
    cmd->add_option("--config", f.config, "run configuration file")->check(CLI::ExistingFile);
    cmd->add_option("--gamma", f.gamma, "sign of the coupling coefficient gamma (+1 or -1)")
        ->check(CLI::IsMember({-1.0, 1.0}));
    cmd->add_flag("--extended", f.extended, "add the n = 64, 128 levels");
    cmd->add_option("--snapshots", f.snapshots, "write nodal snapshots every k steps")->check(CLI::NonNegativeNumber);
    cmd->add_option("--out", f.out, "output directory");
}

RunConfig resolve(const CommonFlags& f, Experiment fallback, const std::vector<Experiment>& allowed) {
    RunConfig cfg = f.config.empty() ? preset(fallback) : load_config(std::filesystem::path(f.config));
    if (std::find(allowed.begin(), allowed.end(), cfg.experiment) == allowed.end())
        throw ConfigError("experiment '" + to_string(cfg.experiment) + "' does not match this subcommand");
    if (f.gamma) cfg.gamma = *f.gamma;
    if (f.extended)
        for (int n : {64, 128})
            if (cfg.levels.back() < n) cfg.levels.push_back(n);
    if (f.snapshots) cfg.snapshot_every = *f.snapshots;
    if (f.out) cfg.output_dir = *f.out;
    cfg.validate();
    return cfg;
}

void print_rates(const ErrorReport& report) {
    std::cout << "rates:";
    for (int c = 0; c < kNumErrors; ++c) std::cout << ' ' << kErrorColumnNames[static_cast<std::size_t>(c)];
    std::cout << '\n';
    for (std::size_t i = 1; i < report.rows.size(); ++i) {
        std::cout << "  n=" << report.rows[i - 1].n << "->" << report.rows[i].n;
        for (int c = 0; c < kNumErrors; ++c) {
            const auto r = report.rate(i, c);
            std::cout << ' ' << (r ? format_double("%.4f", *r) : std::string("undefined"));
        }
        std::cout << '\n';
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Finite element solver for thermoelastic diffusion and thermo-poroelastic plates"};
    app.require_subcommand(1);

    CommonFlags conv_flags, ex1_flags, energy_flags;
    std::string conv_case;
    auto* conv = app.add_subcommand("convergence", "spatial convergence study against a manufactured solution");
    add_common(conv, conv_flags);
    conv->add_option("--case", conv_case, "smooth or lshape (when no config file is given)")
        ->check(CLI::IsMember({"smooth", "lshape"}));

    std::string plate = "ted";
    auto* ex1 = app.add_subcommand("example1", "plate under a transverse load, cell-averaged time series");
    add_common(ex1, ex1_flags);
    ex1->add_option("--plate", plate, "ted (copper) or tpe (Berea sandstone)")->check(CLI::IsMember({"ted", "tpe"}));

    int energy_n = 16, energy_steps = 200;
    auto* energy = app.add_subcommand("energy-check", "discrete energy boundedness and Newmark conservation");
    add_common(energy, energy_flags);
    energy->add_option("--mesh", energy_n, "mesh parameter n")->check(CLI::PositiveNumber);
    energy->add_option("--steps", energy_steps, "number of time steps")->check(CLI::Range(2, 1000000));

    CLI11_PARSE(app, argc, argv);

    try {
        if (conv->parsed()) {
            const Experiment fallback = conv_case == "lshape" ? Experiment::LShape : Experiment::Smooth;
            RunConfig cfg = resolve(conv_flags, fallback, {Experiment::Smooth, Experiment::LShape, Experiment::Custom});
            if (!conv_case.empty() && !conv_flags.config.empty() && to_string(cfg.experiment) != conv_case)
                throw ConfigError("--case " + conv_case + " conflicts with the config experiment");
            const ErrorReport report = run_convergence(cfg, &std::cout);
            print_rates(report);
            std::cout << "wrote " << cfg.output_dir << "/convergence_"
                      << (cfg.experiment == Experiment::Custom ? "custom" : to_string(cfg.experiment)) << ".csv\n";
        } else if (ex1->parsed()) {
            const Experiment fallback = plate == "tpe" ? Experiment::Example1Tpe : Experiment::Example1Ted;
            RunConfig cfg = resolve(ex1_flags, fallback, {Experiment::Example1Ted, Experiment::Example1Tpe});
            const ModelCoefficients c = example1_coefficients(cfg);
            std::cout << "coefficients: a0=" << c.a0 << " d0=" << c.d0 << " alpha=" << c.alpha << " beta=" << c.beta
                      << " a1=" << c.a1 << " gamma=" << c.gamma << " b1=" << c.b1 << " c1=" << c.c1 << " a2=" << c.a2
                      << " kappa=" << c.kappa << '\n';
            const CellObservation obs = run_example1(cfg);
            const auto& last = obs.series.back();
            std::cout << "steps=" << obs.series.size() - 1 << " final t=" << last[0] << " U_2D=" << last[1]
                      << " Theta_2D=" << last[2] << " P_2D=" << last[3] << '\n';
            std::cout << "wrote " << cfg.output_dir << '/'
                      << (cfg.experiment == Experiment::Example1Ted ? "example1_ted.csv" : "example1_tpe.csv") << '\n';
        } else {
            RunConfig cfg = resolve(energy_flags, Experiment::Smooth, {Experiment::Smooth, Experiment::Custom});
            const ModelCoefficients c =
                cfg.experiment == Experiment::Custom ? cfg.coeffs : smooth_study_coefficients(cfg.gamma);
            const auto bound = energy_boundedness(c, energy_n, energy_steps, 0.01, 20240601, cfg.sigma_ip);
            const auto newmark = newmark_conservation(c, energy_n, std::min(energy_steps, 100), 0.01, 20240602,
                                                      cfg.sigma_ip);
            std::filesystem::create_directories(cfg.output_dir);
            std::ofstream csv(std::filesystem::path(cfg.output_dir) / "energy.csv");
            csv << "level,E_h,accumulator\n";
            for (std::size_t k = 0; k < bound.energy.size(); ++k)
                csv << k + 1 << ',' << format_double("%.10e", bound.energy[k]) << ','
                    << format_double("%.10e", bound.accumulator[k]) << '\n';
            std::cout << "max E_h / E_h(m=1) = " << format_double("%.6f", bound.ratio) << " (bound 10)\n";
            std::cout << "Newmark energy relative drift = " << format_double("%.3e", newmark.max_relative_drift)
                      << " (bound 1e-10)\n";
            std::cout << "wrote " << cfg.output_dir << "/energy.csv\n";
            if (bound.ratio > 10.0 || newmark.max_relative_drift > 1e-10) return 1;
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }
    return 0;
}
