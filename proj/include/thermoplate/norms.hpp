#pragma once

#include "thermoplate/assembly.hpp"
#include "thermoplate/errors.hpp"
#include "thermoplate/fem.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <vector>

namespace thermoplate {

inline constexpr int kErrorQuadDegree = 8;

/// ||exact - u_h||_{L2} with a degree-8 rule per triangle.
template <class Fn>
double l2_error(const FeSpace& space, const Eigen::VectorXd& coeffs, Fn&& exact, int degree = kErrorQuadDegree) {
    if (coeffs.size() != space.n_dofs()) throw InvalidArgument("l2_error: coefficient size mismatch");
    const BasisTable table(space.kind, tri_quadrature(degree));
    double sum = 0.0;
    for (int t = 0; t < space.n_cells(); ++t) {
        const auto dofs = space.cell_dofs(t);
        const CellGeometry geo(*space.mesh, t);
        double cell = 0.0;
        for (std::size_t q = 0; q < table.rule.size(); ++q) {
            double uh = 0.0;
            for (std::size_t k = 0; k < dofs.size(); ++k) uh += coeffs[dofs[k]] * table.at[q].values[k];
            const Point p = geo.map(table.rule.points[q]);
            const double e = exact(p.x, p.y) - uh;
            cell += table.rule.weights[q] * e * e;
        }
        sum += 2.0 * geo.area * cell;
    }
    return std::sqrt(sum);
}

/// ||grad(exact - u_h)||_{L2}; `exact_grad` returns a Vec2.
template <class Fn>
double h1_semi_error(const FeSpace& space, const Eigen::VectorXd& coeffs, Fn&& exact_grad,
                     int degree = kErrorQuadDegree) {
    if (coeffs.size() != space.n_dofs()) throw InvalidArgument("h1_semi_error: coefficient size mismatch");
    const BasisTable table(space.kind, tri_quadrature(degree));
    double sum = 0.0;
    for (int t = 0; t < space.n_cells(); ++t) {
        const auto dofs = space.cell_dofs(t);
        const CellGeometry geo(*space.mesh, t);
        double cell = 0.0;
        for (std::size_t q = 0; q < table.rule.size(); ++q) {
            Vec2 gref = Vec2::Zero();
            for (std::size_t k = 0; k < dofs.size(); ++k) gref += coeffs[dofs[k]] * table.at[q].grads[k];
            const Point p = geo.map(table.rule.points[q]);
            const Vec2 e = exact_grad(p.x, p.y) - geo.grad(gref);
            cell += table.rule.weights[q] * e.squaredNorm();
        }
        sum += 2.0 * geo.area * cell;
    }
    return std::sqrt(sum);
}

/// ||exact - u_h||_h: piecewise Hessian error plus the penalised
/// normal-derivative jumps (exact part contributes on boundary edges only).
inline double h_norm_error(const FeSpace& space, const Eigen::VectorXd& coeffs, const ExactH2& exact, double sigma_ip,
                           int degree = kErrorQuadDegree) {
    return std::sqrt(broken_h_norm_parts(space, sigma_ip, coeffs, &exact, degree, 4).total());
}

enum class Accumulation {
    LinfAtLevels,      // max_n e(t_n)
    LinfAtHalfLevels,  // max_n e(t_{n+1/2})
    L2OfHalfLevels,    // (dt sum_n e(t_{n+1/2})^2)^{1/2}
};

/// Time accumulation of per-step error values.
inline double accumulate(Accumulation mode, std::span<const double> series, double dt) {
    if (series.empty()) throw InvalidArgument("accumulate: empty series");
    if (mode == Accumulation::L2OfHalfLevels) {
        double s = 0.0;
        for (double v : series) s += v * v;
        return std::sqrt(dt * s);
    }
    return *std::max_element(series.begin(), series.end());
}

/// Rate = log(e_fine / e_coarse) / log(h_fine / h_coarse); nullopt when an
/// error is zero (rate undefined).
inline std::optional<double> eoc(double e_coarse, double e_fine, double h_coarse, double h_fine) {
    if (!(h_fine < h_coarse) || h_fine <= 0.0) throw InvalidArgument("eoc: need 0 < h_fine < h_coarse");
    if (!(e_coarse > 0.0) || !(e_fine > 0.0)) return std::nullopt;
    return std::log(e_fine / e_coarse) / std::log(h_fine / h_coarse);
}

enum ErrorColumn : int {
    kEu = 0,        // ||e_u||^{l-inf}
    kGradEu,        // ||grad e_u||^{l-inf}
    kEuH,           // ||e_u-hat||_h^{l-inf}
    kETheta,        // ||e_theta||^{l-inf}
    kGradETheta,    // ||grad e_theta-hat||^{l2}
    kEp,            // ||e_p||^{l-inf}
    kGradEp,        // ||grad e_p-hat||^{l2}
    kNumErrors
};

inline constexpr std::array<const char*, kNumErrors> kErrorColumnNames{
    "e_u_linf", "grad_e_u_linf", "e_u_hnorm", "e_theta_linf", "grad_e_theta_l2", "e_p_linf", "grad_e_p_l2"};

struct ErrorRow {
    int n = 0;  // mesh parameter
    double h = 0.0;
    double dt = 0.0;
    std::array<double, kNumErrors> errors{};
    double seconds = 0.0;
};

struct ErrorReport {
    std::vector<ErrorRow> rows;

    /// Rate of column c between rows i-1 and i (i >= 1).
    [[nodiscard]] std::optional<double> rate(std::size_t i, int c) const {
        if (i == 0 || i >= rows.size()) return std::nullopt;
        return eoc(rows[i - 1].errors[static_cast<std::size_t>(c)], rows[i].errors[static_cast<std::size_t>(c)],
                   rows[i - 1].h, rows[i].h);
    }
};

inline std::string format_double(const char* fmt, double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, fmt, v);
    return buf;
}

/// CSV with columns h, dt, then (error, rate) pairs; rates blank on the
/// first row and `undefined` when an error is zero.
inline void write_csv(std::ostream& os, const ErrorReport& report) {
    os << "h,dt";
    for (const char* name : kErrorColumnNames) os << ',' << name << ",rate";
    os << '\n';
    for (std::size_t i = 0; i < report.rows.size(); ++i) {
        const auto& row = report.rows[i];
        os << format_double("%.10e", row.h) << ',' << format_double("%.10e", row.dt);
        for (int c = 0; c < kNumErrors; ++c) {
            os << ',' << format_double("%.10e", row.errors[static_cast<std::size_t>(c)]) << ',';
            if (i > 0) {
                const auto r = report.rate(i, c);
                os << (r ? format_double("%.6f", *r) : std::string("undefined"));
            }
        }
        os << '\n';
    }
}

}  // namespace thermoplate
