#pragma once

#include "thermoplate/errors.hpp"

#include <cmath>
#include <limits>
#include <string>
#include <string_view>
#include <utility>

namespace thermoplate {

/// Coefficients of the 2D plate system
///   u_tt - a0 lap u_tt + d0 lap^2 u + alpha lap theta + beta lap p = f
///   a1 theta_t - gamma p_t + b1 theta - c1 lap theta - alpha lap u_t = phi
///   a2 p_t - gamma theta_t - kappa lap p - beta lap u_t = g
struct ModelCoefficients {
    double a0 = 1.0;
    double d0 = 1.0;
    double alpha = 1.0;
    double beta = 1.0;
    double a1 = 1.0;
    double gamma = 0.0;
    double b1 = 1.0;
    double c1 = 1.0;
    double a2 = 1.0;
    double kappa = 1.0;

    /// Throws unless all coefficients but gamma are positive and
    /// a1*a2 - gamma^2 > 0. `allow_zero_coupling` admits alpha = beta = 0
    /// (decoupled plate, used by the energy checks).
    void validate(bool allow_zero_coupling = false) const {
        const std::pair<const char*, double> positive[] = {{"a0", a0}, {"d0", d0}, {"alpha", alpha}, {"beta", beta},
                                                           {"a1", a1}, {"b1", b1}, {"c1", c1},      {"a2", a2},
                                                           {"kappa", kappa}};
        for (const auto& [name, v] : positive) {
            const bool coupling = std::string_view(name) == "alpha" || std::string_view(name) == "beta";
            if (allow_zero_coupling && coupling && v == 0.0) continue;
            if (!(v > 0.0) || !std::isfinite(v))
                throw InvalidArgument(std::string("model coefficient ") + name + " must be positive, got " +
                                      std::to_string(v));
        }
        if (!std::isfinite(gamma)) throw InvalidArgument("model coefficient gamma is not finite");
        if (!(a1 * a2 - gamma * gamma > 0.0))
            throw CouplingConditionError("a1*a2 - gamma^2 must be positive (a1=" + std::to_string(a1) +
                                         ", a2=" + std::to_string(a2) + ", gamma=" + std::to_string(gamma) + ")");
    }
};

/// Coefficients of the smooth convergence study: all ones except a1 = 35,
/// a2 = 40 and the given gamma.
inline ModelCoefficients smooth_study_coefficients(double gamma) {
    ModelCoefficients c;
    c.a1 = 35.0;
    c.a2 = 40.0;
    c.gamma = gamma;
    return c;
}

/// 3D material constants (SI units). TED plates use varrho, alpha_c, varpi
/// and k2 (diffusion conductivity); TPE plates use varrho as the Biot modulus
/// varrho*, k2 as the permeability k2*, gamma_star and beta_star.
struct Material3D {
    double lambda = 0.0;
    double mu = 0.0;
    double varrho = 0.0;
    double alpha_t = 0.0;
    double alpha_c = 0.0;
    double varpi = 0.0;
    double rho = 0.0;
    double c_e = 0.0;
    double t0 = 0.0;
    double k1 = 0.0;
    double k2 = 0.0;
    double gamma_star = 0.0;
    double beta_star = 0.0;
};

/// Copper constants for thermoelastic diffusion.
inline Material3D copper_ted() {
    Material3D m;
    m.lambda = 7.76e10;
    m.mu = 3.36e10;
    m.varrho = 9.0e5;
    m.alpha_t = 1.78e-5;
    m.alpha_c = 1.98e-4;
    m.varpi = 1.2e4;
    m.rho = 8954.0;
    m.c_e = 383.1;
    m.t0 = 293.0;
    m.k1 = 386.0;
    m.k2 = 8.5e-9;
    return m;
}

/// Berea sandstone constants for thermo-poroelasticity.
inline Material3D berea_tpe() {
    Material3D m;
    m.lambda = 10.22e9;
    m.mu = 4.09e9;
    m.alpha_t = 3e-5;
    m.varrho = 12e9;
    m.beta_star = 0.79;
    m.rho = 2280.0;
    m.c_e = 800.0;
    m.t0 = 293.0;
    m.gamma_star = 5e-5;
    m.k1 = 1e-6;
    m.k2 = 1.9e-13;
    return m;
}

namespace detail {

inline void require_positive(const char* name, double v) {
    if (!(v > 0.0) || !std::isfinite(v))
        throw MaterialError(std::string("material constant ") + name + " must be positive, got " + std::to_string(v));
}

}  // namespace detail

/// Shifted Lame constant lambda0 = lambda - (3 lambda + 2 mu)^2 alpha_c^2 / varrho.
inline double ted_lambda0(const Material3D& m) {
    const double s = 3.0 * m.lambda + 2.0 * m.mu;
    return m.lambda - s * s * m.alpha_c * m.alpha_c / m.varrho;
}

/// Thin-plate reduction of the 3D thermoelastic-diffusion constants.
inline ModelCoefficients ted_coefficients(const Material3D& m, double d) {
    if (!(d > 0.0)) throw InvalidArgument("ted_coefficients: thickness must be positive");
    for (const auto& [name, v] : {std::pair{"lambda", m.lambda}, {"mu", m.mu}, {"varrho", m.varrho},
                                  {"alpha_t", m.alpha_t}, {"alpha_c", m.alpha_c}, {"varpi", m.varpi},
                                  {"rho", m.rho}, {"c_E", m.c_e}, {"T0", m.t0}, {"k1", m.k1}, {"k2", m.k2}})
        detail::require_positive(name, v);
    const double lambda0 = ted_lambda0(m);
    if (!(lambda0 + m.mu > 0.0))
        throw MaterialError("lambda0 + mu must be positive, got " + std::to_string(lambda0 + m.mu));

    const double s = 3.0 * m.lambda + 2.0 * m.mu;
    const double gamma1 = s * (m.alpha_t + m.varpi / m.varrho * m.alpha_c);
    const double gamma2 = s * m.alpha_c / m.varrho;
    const double l2mu = lambda0 + 2.0 * m.mu;
    const double scale = 12.0 / (m.rho * std::pow(d, 4));

    ModelCoefficients c;
    c.a0 = d * d / 12.0;
    c.d0 = 4.0 * m.mu * d * d * (lambda0 + m.mu) / (12.0 * m.rho * l2mu);
    c.alpha = 2.0 * m.mu * gamma1 / (m.rho * d * l2mu);
    c.beta = 2.0 * m.mu * gamma2 / (m.rho * d * l2mu);
    c.a1 = scale * (m.rho * m.c_e / m.t0 + m.varpi * m.varpi / m.varrho + gamma1 * gamma1 / l2mu);
    c.gamma = -scale * (m.varpi / m.varrho + gamma1 * gamma2 / l2mu);
    c.b1 = 12.0 * m.k1 / (m.rho * d * d * d);
    c.c1 = scale * m.k1;
    c.a2 = scale * (1.0 / m.varrho + gamma2 * gamma2 / l2mu);
    c.kappa = scale * m.k2;
    c.validate();
    return c;
}

/// Thin-plate reduction of the 3D thermo-poroelastic constants.
inline ModelCoefficients tpe_coefficients(const Material3D& m, double d) {
    if (!(d > 0.0)) throw InvalidArgument("tpe_coefficients: thickness must be positive");
    for (const auto& [name, v] : {std::pair{"lambda", m.lambda}, {"mu", m.mu}, {"varrho*", m.varrho},
                                  {"alpha_t", m.alpha_t}, {"rho", m.rho}, {"c_E", m.c_e}, {"T0", m.t0},
                                  {"k1", m.k1}, {"k2*", m.k2}, {"gamma*", m.gamma_star}, {"beta*", m.beta_star}})
        detail::require_positive(name, v);

    const double gamma1 = m.alpha_t * (3.0 * m.lambda + 2.0 * m.mu);
    const double gamma2 = m.beta_star;
    const double l2mu = m.lambda + 2.0 * m.mu;
    const double scale = 12.0 / (m.rho * std::pow(d, 4));

    ModelCoefficients c;
    c.a0 = d * d / 12.0;
    c.d0 = 4.0 * m.mu * d * d * (m.lambda + m.mu) / (12.0 * m.rho * l2mu);
    c.alpha = 2.0 * m.mu * gamma1 / (m.rho * d * l2mu);
    c.beta = 2.0 * m.mu * gamma2 / (m.rho * d * l2mu);
    c.a1 = scale * (m.rho * m.c_e / m.t0 + gamma1 * gamma1 / l2mu);
    c.gamma = scale * (3.0 * m.gamma_star - gamma1 * gamma2 / l2mu);
    c.b1 = 12.0 * m.k1 / (m.rho * d * d * d);
    c.c1 = scale * m.k1;
    c.a2 = scale * (1.0 / m.varrho + gamma2 * gamma2 / l2mu);
    c.kappa = scale * m.k2;
    c.validate();
    return c;
}

/// Open interval (|gamma|/a1, a2/|gamma|) of admissible gamma0 values, for
/// which a1 - |gamma|/gamma0 > 0 and a2 - |gamma| gamma0 > 0. The upper end
/// is +infinity when gamma = 0.
inline std::pair<double, double> gamma0_interval(const ModelCoefficients& c) {
    if (!(c.a1 * c.a2 - c.gamma * c.gamma > 0.0))
        throw CouplingConditionError("gamma0_interval: a1*a2 - gamma^2 must be positive");
    const double g = std::abs(c.gamma);
    if (g == 0.0) return {0.0, std::numeric_limits<double>::infinity()};
    return {g / c.a1, c.a2 / g};
}

/// sqrt(a2/a1): the geometric mean of the interval ends, always inside it.
inline double default_gamma0(const ModelCoefficients& c) { return std::sqrt(c.a2 / c.a1); }

}  // namespace thermoplate
