#pragma once

#include "thermoplate/detail/lshape_fields.hpp"
#include "thermoplate/errors.hpp"
#include "thermoplate/fem.hpp"
#include "thermoplate/mesh.hpp"
#include "thermoplate/model.hpp"

#include <cmath>
#include <functional>
#include <numbers>
#include <string>

namespace thermoplate {

using TimeField = std::function<double(double, double, double)>;  // (t, x, y)
using TimeGrad = std::function<Vec2(double, double, double)>;
using TimeHess = std::function<Mat2(double, double, double)>;

/// Data of one run of the plate system: forcing, initial data via the exact
/// fields at t = 0, and (when `has_exact`) the exact solution used for error
/// norms.
struct ManufacturedCase {
    std::string name;
    Domain domain = Domain::UnitSquare;
    ModelCoefficients coeffs;
    bool has_exact = true;

    TimeField u, u_t, theta, p;
    TimeGrad grad_u, grad_u_t, grad_theta, grad_p;
    TimeHess hess_u;
    TimeField f, phi, g;
};

namespace detail {

inline TimeField zero_field() {
    return [](double, double, double) { return 0.0; };
}
inline TimeGrad zero_grad() {
    return [](double, double, double) { return Vec2::Zero().eval(); };
}
inline TimeHess zero_hess() {
    return [](double, double, double) { return Mat2::Zero().eval(); };
}

/// Spatial factor S = (x(x-1) y(y-1))^2 of the smooth deflection.
struct SmoothSpatial {
    double s, s_x, s_y, s_xx, s_xy, s_yy, lap_s, bilap_s;
};

inline SmoothSpatial smooth_spatial(double x, double y) {
    const double X = x * (x - 1.0), Xp = 2.0 * x - 1.0;
    const double Y = y * (y - 1.0), Yp = 2.0 * y - 1.0;
    const double x2pp = 2.0 * Xp * Xp + 4.0 * X;  // (X^2)''
    const double y2pp = 2.0 * Yp * Yp + 4.0 * Y;
    SmoothSpatial o{};
    o.s = X * X * Y * Y;
    o.s_x = 2.0 * X * Xp * Y * Y;
    o.s_y = 2.0 * X * X * Y * Yp;
    o.s_xx = x2pp * Y * Y;
    o.s_yy = X * X * y2pp;
    o.s_xy = 4.0 * X * Xp * Y * Yp;
    o.lap_s = o.s_xx + o.s_yy;
    o.bilap_s = 24.0 * Y * Y + 2.0 * x2pp * y2pp + 24.0 * X * X;
    return o;
}

}  // namespace detail

/// Smooth solution on (0,1)^2:
///   u = e^{5t} (x(x-1)y(y-1))^2,  theta = e^{-t} sin(pi x) sin(pi y),
///   p = cos(t) sin(pi x) sin(pi y),
/// with forcing computed in closed form for the given coefficients.
inline ManufacturedCase smooth_case(const ModelCoefficients& c) {
    using std::cos, std::exp, std::sin;
    constexpr double pi = std::numbers::pi;
    ManufacturedCase mc;
    mc.name = "smooth";
    mc.domain = Domain::UnitSquare;
    mc.coeffs = c;

    auto q = [](double x, double y) { return sin(pi * x) * sin(pi * y); };
    auto grad_q = [](double x, double y) {
        return Vec2(pi * cos(pi * x) * sin(pi * y), pi * sin(pi * x) * cos(pi * y));
    };

    mc.u = [](double t, double x, double y) { return exp(5.0 * t) * detail::smooth_spatial(x, y).s; };
    mc.u_t = [](double t, double x, double y) { return 5.0 * exp(5.0 * t) * detail::smooth_spatial(x, y).s; };
    mc.grad_u = [](double t, double x, double y) {
        const auto s = detail::smooth_spatial(x, y);
        return Vec2(exp(5.0 * t) * Vec2(s.s_x, s.s_y));
    };
    mc.grad_u_t = [](double t, double x, double y) {
        const auto s = detail::smooth_spatial(x, y);
        return Vec2(5.0 * exp(5.0 * t) * Vec2(s.s_x, s.s_y));
    };
    mc.hess_u = [](double t, double x, double y) {
        const auto s = detail::smooth_spatial(x, y);
        Mat2 h;
        h << s.s_xx, s.s_xy, s.s_xy, s.s_yy;
        return Mat2(exp(5.0 * t) * h);
    };
    mc.theta = [q](double t, double x, double y) { return exp(-t) * q(x, y); };
    mc.grad_theta = [grad_q](double t, double x, double y) { return Vec2(exp(-t) * grad_q(x, y)); };
    mc.p = [q](double t, double x, double y) { return cos(t) * q(x, y); };
    mc.grad_p = [grad_q](double t, double x, double y) { return Vec2(cos(t) * grad_q(x, y)); };

    const double two_pi2 = 2.0 * pi * pi;
    mc.f = [c, q, two_pi2](double t, double x, double y) {
        const auto s = detail::smooth_spatial(x, y);
        const double e5 = exp(5.0 * t);
        return e5 * (25.0 * s.s - 25.0 * c.a0 * s.lap_s + c.d0 * s.bilap_s) -
               two_pi2 * q(x, y) * (c.alpha * exp(-t) + c.beta * cos(t));
    };
    mc.phi = [c, q, two_pi2](double t, double x, double y) {
        const auto s = detail::smooth_spatial(x, y);
        const double qq = q(x, y);
        return -c.a1 * exp(-t) * qq + c.gamma * sin(t) * qq + c.b1 * exp(-t) * qq + c.c1 * two_pi2 * exp(-t) * qq -
               5.0 * c.alpha * exp(5.0 * t) * s.lap_s;
    };
    mc.g = [c, q, two_pi2](double t, double x, double y) {
        const auto s = detail::smooth_spatial(x, y);
        const double qq = q(x, y);
        return -c.a2 * sin(t) * qq + c.gamma * exp(-t) * qq + c.kappa * two_pi2 * cos(t) * qq -
               5.0 * c.beta * exp(5.0 * t) * s.lap_s;
    };
    return mc;
}

/// Smooth study preset: unit coefficients except a1 = 35, a2 = 40 and gamma = +-1.
inline ManufacturedCase smooth_case(double gamma) {
    if (gamma != 1.0 && gamma != -1.0) throw InvalidArgument("smooth_case: gamma must be +1 or -1");
    return smooth_case(smooth_study_coefficients(gamma));
}

/// Exponent of the corner singularity of the clamped plate at the 3pi/2 angle.
inline constexpr double kLShapeExponent = 0.5444837;
/// Ball around the reentrant corner where derivatives are not evaluated.
inline constexpr double kLShapeExcludedRadius = 1e-6;

namespace detail {

inline LShapeSpatial lshape_checked(double x, double y) {
    if (std::hypot(x, y) < kLShapeExcludedRadius)
        throw ExcludedPointError("L-shape exact derivatives are not evaluated within r < 1e-6 of the corner");
    return lshape_spatial(x, y);
}

inline LShapeSpatial lshape_values(double x, double y) {
    if (std::hypot(x, y) < 1e-300) return LShapeSpatial{};  // both fields vanish at the corner
    return lshape_spatial(x, y);
}

}  // namespace detail

/// Singular solution on [-1,1]^2 \ [-1,0]^2 with polar angle measured from
/// the lower reentrant leg (phi + pi/2):
///   u = t^2 (y^2-1)^2 (x^2-1)^2 r^{1+v} G(phi + pi/2),
///   theta = p = 2t (y^2-1)(x^2-1) r^{2/3} sin(2/3 (phi + pi/2)).
/// Forcing uses the generated derivatives in detail/lshape_fields.hpp.
inline ManufacturedCase lshape_case(const ModelCoefficients& c) {
    ManufacturedCase mc;
    mc.name = "lshape";
    mc.domain = Domain::LShape;
    mc.coeffs = c;
    mc.u = [](double t, double x, double y) { return t * t * detail::lshape_values(x, y).s; };
    mc.u_t = [](double t, double x, double y) { return 2.0 * t * detail::lshape_values(x, y).s; };
    mc.grad_u = [](double t, double x, double y) {
        const auto s = detail::lshape_checked(x, y);
        return Vec2(t * t * Vec2(s.s_x, s.s_y));
    };
    mc.grad_u_t = [](double t, double x, double y) {
        const auto s = detail::lshape_checked(x, y);
        return Vec2(2.0 * t * Vec2(s.s_x, s.s_y));
    };
    mc.hess_u = [](double t, double x, double y) {
        const auto s = detail::lshape_checked(x, y);
        Mat2 h;
        h << s.s_xx, s.s_xy, s.s_xy, s.s_yy;
        return Mat2(t * t * h);
    };
    mc.theta = [](double t, double x, double y) { return 2.0 * t * detail::lshape_values(x, y).r; };
    mc.grad_theta = [](double t, double x, double y) {
        const auto s = detail::lshape_checked(x, y);
        return Vec2(2.0 * t * Vec2(s.r_x, s.r_y));
    };
    mc.p = mc.theta;
    mc.grad_p = mc.grad_theta;

    mc.f = [c](double t, double x, double y) {
        const auto s = detail::lshape_checked(x, y);
        return 2.0 * s.s - 2.0 * c.a0 * s.lap_s + c.d0 * t * t * s.bilap_s + 2.0 * t * (c.alpha + c.beta) * s.lap_r;
    };
    mc.phi = [c](double t, double x, double y) {
        const auto s = detail::lshape_checked(x, y);
        return 2.0 * (c.a1 - c.gamma) * s.r + 2.0 * t * (c.b1 * s.r - c.c1 * s.lap_r - c.alpha * s.lap_s);
    };
    mc.g = [c](double t, double x, double y) {
        const auto s = detail::lshape_checked(x, y);
        return 2.0 * (c.a2 - c.gamma) * s.r - 2.0 * t * (c.kappa * s.lap_r + c.beta * s.lap_s);
    };
    return mc;
}

/// L-shape study preset (same coefficients as the smooth study).
inline ManufacturedCase lshape_case(double gamma = -1.0) { return lshape_case(smooth_study_coefficients(gamma)); }

enum class PlateKind { TED, TPE };

struct Example1Loads {
    TimeField f, phi, g;
};

/// Plate moments of the 3D sources f3 = t^2 sin(pi x) sin(pi y),
/// phi = t xy(x-1)(y-1), g = t sin(pi x) sin(pi y). The sources do not
/// depend on z, so the first moments (phi, g) vanish and f is the thickness
/// average f3.
inline Example1Loads example1_loads(PlateKind /*kind*/, double d) {
    if (!(d > 0.0)) throw InvalidArgument("example1_loads: thickness must be positive");
    constexpr double pi = std::numbers::pi;
    Example1Loads l;
    l.f = [](double t, double x, double y) { return t * t * std::sin(pi * x) * std::sin(pi * y); };
    l.phi = detail::zero_field();
    l.g = detail::zero_field();
    return l;
}

/// Example 1 problem: zero initial data, loads from example1_loads, no exact
/// solution.
inline ManufacturedCase example1_case(PlateKind kind, const ModelCoefficients& c, double d) {
    ManufacturedCase mc;
    mc.name = kind == PlateKind::TED ? "example1-ted" : "example1-tpe";
    mc.domain = Domain::UnitSquare;
    mc.coeffs = c;
    mc.has_exact = false;
    mc.u = mc.u_t = mc.theta = mc.p = detail::zero_field();
    mc.grad_u = mc.grad_u_t = mc.grad_theta = mc.grad_p = detail::zero_grad();
    mc.hess_u = detail::zero_hess();
    const auto loads = example1_loads(kind, d);
    mc.f = loads.f;
    mc.phi = loads.phi;
    mc.g = loads.g;
    return mc;
}

}  // namespace thermoplate
