#pragma once

#include "thermoplate/errors.hpp"

#include <array>
#include <cmath>
#include <numbers>
#include <string>
#include <vector>

namespace thermoplate {

/// Quadrature on the reference triangle (barycentric points, weights summing
/// to 1/2) or on [0,1] (points in `s`, weights summing to 1).
struct TriQuadRule {
    int degree = 0;
    std::vector<std::array<double, 3>> points;
    std::vector<double> weights;
    [[nodiscard]] std::size_t size() const { return weights.size(); }
};

struct EdgeQuadRule {
    int degree = 0;
    std::vector<double> points;
    std::vector<double> weights;
    [[nodiscard]] std::size_t size() const { return weights.size(); }
};

/// k-point Gauss-Legendre rule on [0,1] (Newton iteration on P_k).
inline EdgeQuadRule gauss_legendre(int k) {
    if (k < 1) throw InvalidArgument("gauss_legendre: k must be >= 1");
    EdgeQuadRule rule;
    rule.degree = 2 * k - 1;
    rule.points.resize(static_cast<std::size_t>(k));
    rule.weights.resize(static_cast<std::size_t>(k));
    for (int i = 0; i < k; ++i) {
        double x = std::cos(std::numbers::pi * (i + 0.75) / (k + 0.5));
        double dp = 0.0;
        for (int it = 0; it < 100; ++it) {
            double p0 = 1.0, p1 = x;
            for (int j = 2; j <= k; ++j) {
                const double p2 = ((2.0 * j - 1.0) * x * p1 - (j - 1.0) * p0) / j;
                p0 = p1;
                p1 = p2;
            }
            if (k == 1) p0 = 1.0, p1 = x;
            dp = k * (x * p1 - p0) / (x * x - 1.0);
            const double dx = p1 / dp;
            x -= dx;
            if (std::abs(dx) < 1e-16) break;
        }
        // Recompute the derivative at the converged root for the weight.
        double p0 = 1.0, p1 = x;
        for (int j = 2; j <= k; ++j) {
            const double p2 = ((2.0 * j - 1.0) * x * p1 - (j - 1.0) * p0) / j;
            p0 = p1;
            p1 = p2;
        }
        dp = k * (x * p1 - p0) / (x * x - 1.0);
        const auto idx = static_cast<std::size_t>(k - 1 - i);
        rule.points[idx] = 0.5 * (1.0 + x);
        rule.weights[idx] = 1.0 / ((1.0 - x * x) * dp * dp);  // 2/((1-x^2)P'^2) scaled by 1/2
    }
    return rule;
}

/// Gauss rule with `points` nodes on [0,1]; exact to degree 2*points-1.
inline EdgeQuadRule edge_quadrature(int points) {
    if (points < 2 || points > 4)
        throw InvalidArgument("edge_quadrature: supported point counts are 2, 3, 4; got " +
                              std::to_string(points));
    return gauss_legendre(points);
}

namespace detail {

inline void add_s3(TriQuadRule& r, double w) {
    r.points.push_back({1.0 / 3.0, 1.0 / 3.0, 1.0 / 3.0});
    r.weights.push_back(0.5 * w);
}

inline void add_s21(TriQuadRule& r, double a, double w) {
    const double b = 1.0 - 2.0 * a;
    r.points.push_back({a, a, b});
    r.points.push_back({a, b, a});
    r.points.push_back({b, a, a});
    for (int i = 0; i < 3; ++i) r.weights.push_back(0.5 * w);
}

inline void add_s111(TriQuadRule& r, double a, double b, double w) {
    const double c = 1.0 - a - b;
    r.points.push_back({a, b, c});
    r.points.push_back({a, c, b});
    r.points.push_back({b, a, c});
    r.points.push_back({b, c, a});
    r.points.push_back({c, a, b});
    r.points.push_back({c, b, a});
    for (int i = 0; i < 6; ++i) r.weights.push_back(0.5 * w);
}

}  // namespace detail

/// Conical-product (collapsed Gauss) rule exact to `degree` on the reference
/// triangle. Used where no symmetric table is provided.
inline TriQuadRule collapsed_tri_quadrature(int degree) {
    const int k = (degree + 3) / 2;  // (degree + 1) in the collapsed direction
    const EdgeQuadRule g = gauss_legendre(k);
    TriQuadRule r;
    r.degree = degree;
    for (int i = 0; i < k; ++i)
        for (int j = 0; j < k; ++j) {
            const double u = g.points[static_cast<std::size_t>(i)];
            const double v = g.points[static_cast<std::size_t>(j)];
            const double xi = u, eta = v * (1.0 - u);
            r.points.push_back({1.0 - xi - eta, xi, eta});
            r.weights.push_back(g.weights[static_cast<std::size_t>(i)] *
                                g.weights[static_cast<std::size_t>(j)] * (1.0 - u));
        }
    return r;
}

/// Symmetric (Dunavant) rules for degrees 2, 4, 5, 6, 8; degree 10 falls back
/// to a conical product rule.
inline TriQuadRule tri_quadrature(int degree) {
    TriQuadRule r;
    r.degree = degree;
    switch (degree) {
        case 2:
            detail::add_s21(r, 1.0 / 6.0, 1.0 / 3.0);
            break;
        case 4:
            detail::add_s21(r, 0.445948490915965, 0.223381589678011);
            detail::add_s21(r, 0.091576213509771, 0.109951743655322);
            break;
        case 5: {
            const double s15 = std::sqrt(15.0);
            detail::add_s3(r, 9.0 / 40.0);
            detail::add_s21(r, (6.0 - s15) / 21.0, (155.0 - s15) / 1200.0);
            detail::add_s21(r, (6.0 + s15) / 21.0, (155.0 + s15) / 1200.0);
            break;
        }
        case 6:
            detail::add_s21(r, 0.063089014491502, 0.050844906370207);
            detail::add_s21(r, 0.249286745170910, 0.116786275726379);
            detail::add_s111(r, 0.053145049844817, 0.310352451033784, 0.082851075618374);
            break;
        case 8:
            detail::add_s3(r, 0.144315607677787);
            detail::add_s21(r, 0.459292588292723, 0.095091634267285);
            detail::add_s21(r, 0.170569307751760, 0.103217370534718);
            detail::add_s21(r, 0.050547228317031, 0.032458497623198);
            detail::add_s111(r, 0.008394777409958, 0.263112829634638, 0.027230314174435);
            break;
        case 10:
            return collapsed_tri_quadrature(10);
        default:
            throw InvalidArgument("tri_quadrature: unsupported degree " + std::to_string(degree) +
                                  " (supported: 2, 4, 5, 6, 8, 10)");
    }
    return r;
}

}  // namespace thermoplate
