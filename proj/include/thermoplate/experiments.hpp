#pragma once

#include "thermoplate/config.hpp"
#include "thermoplate/errors.hpp"
#include "thermoplate/fem.hpp"
#include "thermoplate/mesh.hpp"
#include "thermoplate/mms.hpp"
#include "thermoplate/norms.hpp"
#include "thermoplate/stepper.hpp"

#include <array>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <ostream>
#include <random>
#include <string>
#include <vector>

namespace thermoplate {

inline std::shared_ptr<const TriMesh> make_mesh(Domain d, int n) {
    return std::make_shared<const TriMesh>(d == Domain::LShape ? build_lshape(n) : build_unit_square(n));
}

/// Step count for mesh size h under the configured policy.
inline TimeGrid time_grid(const RunConfig& cfg, double h) {
    const double dt = cfg.dt_policy == DtPolicy::Refined ? std::pow(2.0, -1.5) * h : cfg.dt;
    const double steps = cfg.final_time / dt;
    const long n = std::lround(steps);
    if (std::abs(steps - static_cast<double>(n)) > 1e-9 * steps)
        throw ConfigError("time step " + std::to_string(dt) + " does not divide final time " +
                          std::to_string(cfg.final_time));
    return {cfg.final_time, static_cast<int>(n)};
}

inline ManufacturedCase make_case(const RunConfig& cfg) {
    switch (cfg.experiment) {
        case Experiment::Smooth: return smooth_case(cfg.gamma);
        case Experiment::LShape: return lshape_case(cfg.gamma);
        case Experiment::Custom: cfg.coeffs.validate(); return smooth_case(cfg.coeffs);
        default: throw InvalidArgument("make_case: " + to_string(cfg.experiment) + " has no exact solution");
    }
}

/// Nodal values (vertices only) of the three fields.
inline void write_snapshot(const std::filesystem::path& path, const Operators& op, const StateHistory& s, double t) {
    const Eigen::VectorXd U = extend_from_free(op.v, s.U), Th = extend_from_free(op.w, s.Th),
                          P = extend_from_free(op.w, s.P);
    std::ofstream os(path);
    os << "# t = " << format_double("%.10e", t) << "\nx,y,u,theta,p\n";
    for (std::size_t i = 0; i < op.mesh->vertices.size(); ++i) {
        const auto k = static_cast<Eigen::Index>(i);
        os << format_double("%.10e", op.mesh->vertices[i].x) << ',' << format_double("%.10e", op.mesh->vertices[i].y)
           << ',' << format_double("%.10e", U[k]) << ',' << format_double("%.10e", Th[k]) << ','
           << format_double("%.10e", P[k]) << '\n';
    }
}

struct SnapshotOptions {
    int every = 0;
    std::filesystem::path dir;
    std::string tag;
};

/// Accumulates the seven error norms of one run, fed level by level.
class ErrorTracker {
public:
    ErrorTracker(const Operators& op, const ManufacturedCase& mc, const TimeGrid& grid)
        : op_(&op), mc_(&mc), grid_(grid) {}

    void observe(const StateHistory& s) {
        const auto& mc = *mc_;
        const double t = grid_.t(s.n);
        const Eigen::VectorXd U = extend_from_free(op_->v, s.U), Th = extend_from_free(op_->w, s.Th),
                              P = extend_from_free(op_->w, s.P);
        u_.push_back(l2_error(op_->v, U, [&](double x, double y) { return mc.u(t, x, y); }));
        grad_u_.push_back(h1_semi_error(op_->v, U, [&](double x, double y) { return mc.grad_u(t, x, y); }));
        theta_.push_back(l2_error(op_->w, Th, [&](double x, double y) { return mc.theta(t, x, y); }));
        p_.push_back(l2_error(op_->w, P, [&](double x, double y) { return mc.p(t, x, y); }));
        if (s.n == 0) return;

        const double t0 = grid_.t(s.n - 1);
        const Eigen::VectorXd Uh = extend_from_free(op_->v, Eigen::VectorXd(0.5 * (s.U + s.U_prev)));
        const ExactH2 exact{
            [&](double x, double y) { return Mat2(0.5 * (mc.hess_u(t, x, y) + mc.hess_u(t0, x, y))); },
            [&](double x, double y) { return Vec2(0.5 * (mc.grad_u(t, x, y) + mc.grad_u(t0, x, y))); }};
        u_h_.push_back(h_norm_error(op_->v, Uh, exact, op_->sigma_ip));
        const Eigen::VectorXd Thh = extend_from_free(op_->w, Eigen::VectorXd(0.5 * (s.Th + s.Th_prev)));
        const Eigen::VectorXd Ph = extend_from_free(op_->w, Eigen::VectorXd(0.5 * (s.P + s.P_prev)));
        grad_theta_.push_back(h1_semi_error(op_->w, Thh, [&](double x, double y) {
            return Vec2(0.5 * (mc.grad_theta(t, x, y) + mc.grad_theta(t0, x, y)));
        }));
        grad_p_.push_back(h1_semi_error(op_->w, Ph, [&](double x, double y) {
            return Vec2(0.5 * (mc.grad_p(t, x, y) + mc.grad_p(t0, x, y)));
        }));
    }

    [[nodiscard]] std::array<double, kNumErrors> errors() const {
        const double dt = grid_.dt();
        std::array<double, kNumErrors> e{};
        e[kEu] = accumulate(Accumulation::LinfAtLevels, u_, dt);
        e[kGradEu] = accumulate(Accumulation::LinfAtLevels, grad_u_, dt);
        e[kEuH] = accumulate(Accumulation::LinfAtHalfLevels, u_h_, dt);
        e[kETheta] = accumulate(Accumulation::LinfAtLevels, theta_, dt);
        e[kGradETheta] = accumulate(Accumulation::L2OfHalfLevels, grad_theta_, dt);
        e[kEp] = accumulate(Accumulation::LinfAtLevels, p_, dt);
        e[kGradEp] = accumulate(Accumulation::L2OfHalfLevels, grad_p_, dt);
        return e;
    }

    [[nodiscard]] const std::vector<double>& theta_series() const { return theta_; }

private:
    const Operators* op_;
    const ManufacturedCase* mc_;
    TimeGrid grid_;
    std::vector<double> u_, grad_u_, theta_, p_, u_h_, grad_theta_, grad_p_;
};

/// One refinement level of a convergence study.
inline ErrorRow run_level(const ManufacturedCase& mc, int n, const TimeGrid& grid, double sigma_ip,
                          SolverKind solver = SolverKind::DirectLU, const SnapshotOptions& snaps = {}) {
    const auto start = std::chrono::steady_clock::now();
    const auto mesh = make_mesh(mc.domain, n);
    const Operators op = build_operators(mesh, sigma_ip);
    Stepper stepper(op, mc, grid, solver);
    ErrorTracker tracker(op, mc, grid);
    stepper.run(project_initial(mc, op), [&](const StateHistory& s) {
        tracker.observe(s);
        if (snaps.every > 0 && s.n % snaps.every == 0)
            write_snapshot(snaps.dir / (snaps.tag + "_n" + std::to_string(n) + "_step" + std::to_string(s.n) + ".csv"),
                           op, s, grid.t(s.n));
    });
    ErrorRow row;
    row.n = n;
    row.h = mesh->h;
    row.dt = grid.dt();
    row.errors = tracker.errors();
    row.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return row;
}

inline void write_manifest(const std::filesystem::path& path, const RunConfig& cfg,
                           const std::vector<std::pair<std::string, std::string>>& extra = {}) {
    std::ofstream os(path);
    auto num = [](double v) { return format_double("%.17g", v); };
    os << "experiment = " << to_string(cfg.experiment) << '\n';
    os << "gamma = " << num(cfg.gamma) << '\n';
    os << "levels =";
    for (std::size_t i = 0; i < cfg.levels.size(); ++i) os << (i ? ", " : " ") << cfg.levels[i];
    os << '\n';
    os << "final_time = " << num(cfg.final_time) << '\n';
    os << "dt_policy = " << (cfg.dt_policy == DtPolicy::Refined ? "refined" : "fixed") << '\n';
    if (cfg.dt_policy == DtPolicy::Fixed) os << "dt = " << num(cfg.dt) << '\n';
    os << "sigma_ip = " << num(cfg.sigma_ip) << '\n';
    os << "solver = " << (cfg.solver == SolverKind::DirectLU ? "lu" : "iterative") << '\n';
    os << "output_dir = " << cfg.output_dir << '\n';
    os << "snapshot_every = " << cfg.snapshot_every << '\n';
    for (const auto& [k, v] : extra) os << k << " = " << v << '\n';
}

inline void write_coefficients(std::vector<std::pair<std::string, std::string>>& out, const ModelCoefficients& c) {
    auto num = [](double v) { return format_double("%.17g", v); };
    out.insert(out.end(), {{"a0", num(c.a0)}, {"d0", num(c.d0)}, {"alpha", num(c.alpha)}, {"beta", num(c.beta)},
                           {"a1", num(c.a1)}, {"gamma_coefficient", num(c.gamma)}, {"b1", num(c.b1)},
                           {"c1", num(c.c1)}, {"a2", num(c.a2)}, {"kappa", num(c.kappa)}});
}

/// Runs every level of a smooth / lshape / custom study and writes
/// `<out>/convergence_<name>.csv` plus the run manifest.
inline ErrorReport run_convergence(const RunConfig& cfg, std::ostream* log = nullptr) {
    cfg.validate();
    const ManufacturedCase mc = make_case(cfg);
    const std::filesystem::path out(cfg.output_dir);
    std::filesystem::create_directories(out);
    SnapshotOptions snaps{cfg.snapshot_every, out / "snapshots", mc.name};
    if (snaps.every > 0) std::filesystem::create_directories(snaps.dir);

    ErrorReport report;
    for (int n : cfg.levels) {
        const TimeGrid grid = time_grid(cfg, make_mesh(mc.domain, n)->h);
        try {
            report.rows.push_back(run_level(mc, n, grid, cfg.sigma_ip, cfg.solver, snaps));
        } catch (const std::exception& e) {
            throw SolverError("level n=" + std::to_string(n) + " failed: " + e.what());
        }
        if (log) {
            const auto& r = report.rows.back();
            *log << "n=" << n << " h=" << format_double("%.4f", r.h) << " dt=" << format_double("%.5f", r.dt);
            for (int c = 0; c < kNumErrors; ++c)
                *log << ' ' << kErrorColumnNames[static_cast<std::size_t>(c)] << '='
                     << format_double("%.3e", r.errors[static_cast<std::size_t>(c)]);
            *log << " (" << format_double("%.1f", r.seconds) << " s)\n";
        }
    }
    const std::string suffix = cfg.experiment == Experiment::Custom ? "custom" : mc.name;
    std::ofstream csv(out / ("convergence_" + suffix + ".csv"));
    write_csv(csv, report);
    std::vector<std::pair<std::string, std::string>> extra;
    write_coefficients(extra, mc.coeffs);
    write_manifest(out / "manifest.txt", cfg, extra);
    return report;
}

// Example 1 --------------------------------------------------------------

namespace detail {

/// Sutherland-Hodgman clip of a convex polygon by one half plane
/// `sign * (coord - bound) <= 0` on axis 0 (x) or 1 (y).
inline std::vector<Point> clip_half_plane(const std::vector<Point>& poly, int axis, double bound, double sign) {
    std::vector<Point> out;
    auto val = [&](const Point& p) { return sign * ((axis == 0 ? p.x : p.y) - bound); };
    for (std::size_t i = 0; i < poly.size(); ++i) {
        const Point& a = poly[i];
        const Point& b = poly[(i + 1) % poly.size()];
        const double va = val(a), vb = val(b);
        if (va <= 0.0) out.push_back(a);
        if ((va < 0.0 && vb > 0.0) || (va > 0.0 && vb < 0.0)) out.push_back(a + (va / (va - vb)) * (b - a));
    }
    return out;
}

}  // namespace detail

/// Exact integral of a discrete field over the rectangle: each triangle is
/// clipped to the rectangle and the piece integrated with a degree-4 rule.
inline double cell_integral(const FeSpace& space, const Eigen::VectorXd& coeffs, const CellRect& r) {
    if (coeffs.size() != space.n_dofs()) throw InvalidArgument("cell_integral: coefficient size mismatch");
    const TriMesh& mesh = *space.mesh;
    const TriQuadRule rule = tri_quadrature(4);
    double total = 0.0;
    for (int t = 0; t < space.n_cells(); ++t) {
        const auto& tri = mesh.triangles[static_cast<std::size_t>(t)];
        std::vector<Point> poly{mesh.vertices[tri[0]], mesh.vertices[tri[1]], mesh.vertices[tri[2]]};
        poly = detail::clip_half_plane(poly, 0, r.x0, -1.0);
        poly = detail::clip_half_plane(poly, 0, r.x1, 1.0);
        poly = detail::clip_half_plane(poly, 1, r.y0, -1.0);
        poly = detail::clip_half_plane(poly, 1, r.y1, 1.0);
        if (poly.size() < 3) continue;
        const CellGeometry geo(mesh, t);
        const auto dofs = space.cell_dofs(t);
        for (std::size_t k = 1; k + 1 < poly.size(); ++k) {
            const Point a = poly[0], b = poly[k], c = poly[k + 1];
            const double area = 0.5 * ((b.x - a.x) * (c.y - a.y) - (c.x - a.x) * (b.y - a.y));
            if (area <= 0.0) continue;
            for (std::size_t q = 0; q < rule.size(); ++q) {
                const auto& l = rule.points[q];
                const Point x = l[0] * a + l[1] * b + l[2] * c;
                const Vec2 xi = geo.jac_inv * Vec2(x.x - geo.v0.x, x.y - geo.v0.y);
                const auto basis = eval_basis(space.kind, Bary{1.0 - xi[0] - xi[1], xi[0], xi[1]});
                double v = 0.0;
                for (std::size_t j = 0; j < dofs.size(); ++j) v += coeffs[dofs[j]] * basis.values[j];
                total += 2.0 * area * rule.weights[q] * v;
            }
        }
    }
    return total;
}

inline double cell_average(const FeSpace& space, const Eigen::VectorXd& coeffs, const CellRect& r) {
    return cell_integral(space, coeffs, r) / r.area();
}

struct CellObservation {
    CellRect cell;
    std::vector<std::array<double, 4>> series;  // t, U_2D, Theta_2D, P_2D
};

inline ModelCoefficients example1_coefficients(const RunConfig& cfg) {
    if (cfg.experiment == Experiment::Example1Ted) return ted_coefficients(cfg.material, cfg.thickness);
    if (cfg.experiment == Experiment::Example1Tpe) return tpe_coefficients(cfg.material, cfg.thickness);
    throw InvalidArgument("example1_coefficients: experiment is " + to_string(cfg.experiment));
}

inline void write_series_csv(std::ostream& os, const CellObservation& obs) {
    os << "t,U_2D,Theta_2D,P_2D\n";
    for (const auto& row : obs.series)
        os << format_double("%.10e", row[0]) << ',' << format_double("%.10e", row[1]) << ','
           << format_double("%.10e", row[2]) << ',' << format_double("%.10e", row[3]) << '\n';
}

/// Runs the plate under the Example 1 loads and records the cell-averaged
/// fields at every time level. Writes `<out>/example1_<ted|tpe>.csv` when
/// `write_files` is set.
inline CellObservation run_example1(const RunConfig& cfg, bool write_files = true) {
    cfg.validate();
    const ModelCoefficients coeffs = example1_coefficients(cfg);  // material errors surface here
    const PlateKind kind = cfg.experiment == Experiment::Example1Ted ? PlateKind::TED : PlateKind::TPE;
    const ManufacturedCase mc = example1_case(kind, coeffs, cfg.thickness);
    const auto mesh = make_mesh(Domain::UnitSquare, cfg.mesh_n);
    const Operators op = build_operators(mesh, cfg.sigma_ip);
    const TimeGrid grid = time_grid(cfg, mesh->h);
    Stepper stepper(op, mc, grid, cfg.solver);

    const std::filesystem::path out(cfg.output_dir);
    SnapshotOptions snaps{cfg.snapshot_every, out / "snapshots", mc.name};
    if (write_files) std::filesystem::create_directories(out);
    if (write_files && snaps.every > 0) std::filesystem::create_directories(snaps.dir);

    CellObservation obs;
    obs.cell = cfg.cell;
    stepper.run(project_initial(mc, op), [&](const StateHistory& s) {
        const std::array<double, 4> row{grid.t(s.n), cell_average(op.v, extend_from_free(op.v, s.U), cfg.cell),
                                        cell_average(op.w, extend_from_free(op.w, s.Th), cfg.cell),
                                        cell_average(op.w, extend_from_free(op.w, s.P), cfg.cell)};
        for (double v : row)
            if (!std::isfinite(v)) throw SolverError("non-finite cell average at level " + std::to_string(s.n));
        obs.series.push_back(row);
        if (write_files && snaps.every > 0 && s.n % snaps.every == 0)
            write_snapshot(snaps.dir / (snaps.tag + "_step" + std::to_string(s.n) + ".csv"), op, s, grid.t(s.n));
    });

    if (write_files) {
        std::ofstream csv(out / (kind == PlateKind::TED ? "example1_ted.csv" : "example1_tpe.csv"));
        write_series_csv(csv, obs);
        std::vector<std::pair<std::string, std::string>> extra{
            {"thickness", format_double("%.17g", cfg.thickness)},
            {"mesh", std::to_string(cfg.mesh_n)},
            {"cell", format_double("%.17g", cfg.cell.x0) + ", " + format_double("%.17g", cfg.cell.x1) + ", " +
                         format_double("%.17g", cfg.cell.y0) + ", " + format_double("%.17g", cfg.cell.y1)}};
        write_coefficients(extra, coeffs);
        write_manifest(out / "manifest.txt", cfg, extra);
    }
    return obs;
}

// Energy checks ----------------------------------------------------------

/// Source-free problem (zero loads, zero exact fields) with the given
/// coefficients.
inline ManufacturedCase source_free_case(const ModelCoefficients& c) {
    ManufacturedCase mc = example1_case(PlateKind::TED, c, 1.0);
    mc.name = "source-free";
    mc.f = mc.phi = mc.g = detail::zero_field();
    return mc;
}

/// Initial data with entries uniform in [-1, 1] (fixed seed).
inline InitialData random_initial_data(const Operators& op, std::uint64_t seed, bool with_velocity) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> dist(-1.0, 1.0);
    auto draw = [&](int n) {
        Eigen::VectorXd v(n);
        for (int i = 0; i < n; ++i) v[i] = dist(rng);
        return v;
    };
    InitialData d;
    d.U0 = draw(op.v.n_free);
    d.Th0 = draw(op.w.n_free);
    d.P0 = draw(op.w.n_free);
    d.velocity_load = with_velocity ? Eigen::VectorXd(op.Mv * draw(op.v.n_free)) : Eigen::VectorXd::Zero(op.v.n_free);
    return d;
}

struct EnergyBoundResult {
    std::vector<double> energy;  // E_h at levels 1..N
    std::vector<double> accumulator;
    double ratio = 0.0;          // max_m E_h / E_h(m = 1)
};

/// Zero-source run from random data on the n x n unit square; E_h(m = 1)
/// is the energy at level 2 (m + 1 = 2).
inline EnergyBoundResult energy_boundedness(const ModelCoefficients& c, int n = 16, int steps = 200,
                                            double dt = 0.01, std::uint64_t seed = 20240601,
                                            double sigma_ip = kDefaultSigmaIp) {
    const auto mesh = make_mesh(Domain::UnitSquare, n);
    const Operators op = build_operators(mesh, sigma_ip);
    const TimeGrid grid(dt * steps, steps);
    Stepper stepper(op, source_free_case(c), grid);
    EnergyMonitor monitor(op, c, grid.dt());
    stepper.run(random_initial_data(op, seed, true), [&](const StateHistory& s) { monitor.observe(s); });
    EnergyBoundResult r;
    for (const auto& e : monitor.history()) {
        r.energy.push_back(e.total());
        r.accumulator.push_back(e.accumulator);
    }
    double mx = 0.0;
    for (double e : r.energy) mx = std::max(mx, e);
    r.ratio = mx / r.energy.at(1);
    return r;
}

struct NewmarkResult {
    std::vector<double> energy;  // levels 1..N
    double max_relative_drift = 0.0;
};

/// Decoupled (alpha = beta = 0) source-free run; the Newmark energy of the
/// main loop should be constant from level 1 on.
inline NewmarkResult newmark_conservation(ModelCoefficients c, int n = 16, int steps = 100, double dt = 0.01,
                                          std::uint64_t seed = 20240602, double sigma_ip = kDefaultSigmaIp) {
    c.alpha = c.beta = 0.0;
    const auto mesh = make_mesh(Domain::UnitSquare, n);
    const Operators op = build_operators(mesh, sigma_ip);
    const TimeGrid grid(dt * steps, steps);
    Stepper stepper(op, source_free_case(c), grid);
    NewmarkResult r;
    stepper.run(random_initial_data(op, seed, true), [&](const StateHistory& s) {
        if (s.n >= 1) r.energy.push_back(newmark_energy(op, c, grid.dt(), s));
    });
    for (double e : r.energy)
        r.max_relative_drift = std::max(r.max_relative_drift, std::abs(e - r.energy.front()) / r.energy.front());
    return r;
}

}  // namespace thermoplate
