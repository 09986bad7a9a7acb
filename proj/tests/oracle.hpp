#pragma once

// Dense brute-force reference implementations used only by the tests. Nothing
// here goes through the library's reference element, quadrature tables, edge
// table or DOF map: bases are built from monomials on the physical triangle,
// quadrature comes from Boost's Gauss-Legendre nodes, and edges and DOFs are
// found geometrically.

#include "thermoplate/fem.hpp"
#include "thermoplate/mesh.hpp"

#include <boost/math/quadrature/gauss.hpp>

#include <Eigen/Dense>

#include <algorithm>
#include <array>
#include <cmath>
#include <functional>
#include <map>
#include <stdexcept>
#include <utility>
#include <vector>

namespace oracle {

using thermoplate::FeKind;
using thermoplate::FeSpace;
using thermoplate::Point;
using thermoplate::TriMesh;
using Dense = Eigen::MatrixXd;
using Vec = Eigen::VectorXd;
using V2 = Eigen::Vector2d;
using M2 = Eigen::Matrix2d;

struct Rule1D {
    std::vector<double> x, w;  // on [0, 1]
};

/// 10-point Gauss-Legendre on [0, 1] (exact to degree 19).
inline const Rule1D& gauss01() {
    static const Rule1D rule = [] {
        using G = boost::math::quadrature::gauss<double, 10>;
        Rule1D r;
        const auto& a = G::abscissa();
        const auto& w = G::weights();
        for (std::size_t i = 0; i < a.size(); ++i) {
            r.x.push_back(0.5 * (1.0 - a[i]));
            r.w.push_back(0.5 * w[i]);
            r.x.push_back(0.5 * (1.0 + a[i]));
            r.w.push_back(0.5 * w[i]);
        }
        return r;
    }();
    return rule;
}

struct QPoint {
    double x, y, w;
};

/// Duffy-collapsed tensor Gauss rule on the physical triangle (a, b, c).
inline std::vector<QPoint> triangle_rule(Point a, Point b, Point c) {
    const Rule1D& g = gauss01();
    const double jac = std::abs((b.x - a.x) * (c.y - a.y) - (c.x - a.x) * (b.y - a.y));
    std::vector<QPoint> pts;
    for (std::size_t i = 0; i < g.x.size(); ++i)
        for (std::size_t j = 0; j < g.x.size(); ++j) {
            const double u = g.x[i], v = g.x[j] * (1.0 - u);
            pts.push_back({a.x + u * (b.x - a.x) + v * (c.x - a.x), a.y + u * (b.y - a.y) + v * (c.y - a.y),
                           g.w[i] * g.w[j] * (1.0 - u) * jac});
        }
    return pts;
}

/// Nodal basis on one physical triangle, from monomial coefficients solved
/// against the node values. P2 nodes: vertices then edge midpoints.
class LocalBasis {
public:
    LocalBasis(const std::array<Point, 3>& v, FeKind kind) : p2_(kind == FeKind::P2) {
        c_ = {(v[0].x + v[1].x + v[2].x) / 3.0, (v[0].y + v[1].y + v[2].y) / 3.0};
        nodes_.assign(v.begin(), v.end());
        if (p2_)
            for (int k = 0; k < 3; ++k)
                nodes_.push_back({0.5 * (v[k].x + v[(k + 1) % 3].x), 0.5 * (v[k].y + v[(k + 1) % 3].y)});
        const int n = size();
        Dense vander(n, n);
        for (int i = 0; i < n; ++i) vander.row(i) = monomials(nodes_[i].x, nodes_[i].y).transpose();
        coef_ = vander.fullPivLu().inverse();  // column k: coefficients of basis k
    }

    [[nodiscard]] int size() const { return p2_ ? 6 : 3; }
    [[nodiscard]] const std::vector<Point>& nodes() const { return nodes_; }

    [[nodiscard]] double value(int k, double x, double y) const { return monomials(x, y).dot(coef_.col(k)); }
    [[nodiscard]] V2 grad(int k, double x, double y) const {
        const double X = x - c_.x, Y = y - c_.y;
        const auto& a = coef_.col(k);
        if (!p2_) return {a[1], a[2]};
        return {a[1] + 2.0 * a[3] * X + a[4] * Y, a[2] + a[4] * X + 2.0 * a[5] * Y};
    }
    [[nodiscard]] M2 hess(int k) const {
        M2 h = M2::Zero();
        if (!p2_) return h;
        const auto& a = coef_.col(k);
        h << 2.0 * a[3], a[4], a[4], 2.0 * a[5];
        return h;
    }

private:
    [[nodiscard]] Vec monomials(double x, double y) const {
        const double X = x - c_.x, Y = y - c_.y;
        Vec m(size());
        if (p2_)
            m << 1.0, X, Y, X * X, X * Y, Y * Y;
        else
            m << 1.0, X, Y;
        return m;
    }

    bool p2_;
    Point c_;
    std::vector<Point> nodes_;
    Dense coef_;
};

inline std::array<Point, 3> corners(const TriMesh& m, int t) {
    const auto& tri = m.triangles[static_cast<std::size_t>(t)];
    return {m.vertices[tri[0]], m.vertices[tri[1]], m.vertices[tri[2]]};
}

/// Global DOF located at point p (coordinate search).
inline int dof_at(const FeSpace& s, Point p) {
    for (int d = 0; d < s.n_dofs(); ++d) {
        const Point q = s.dof_coords[static_cast<std::size_t>(d)];
        if (std::abs(q.x - p.x) < 1e-12 && std::abs(q.y - p.y) < 1e-12) return d;
    }
    throw std::logic_error("oracle: no DOF at point");
}

inline std::vector<int> local_to_global(const FeSpace& s, const LocalBasis& b) {
    std::vector<int> g;
    for (const Point& p : b.nodes()) g.push_back(dof_at(s, p));
    return g;
}

inline bool on_unit_square_boundary(Point p) {
    auto near = [](double a, double b) { return std::abs(a - b) < 1e-13; };
    return near(p.x, 0.0) || near(p.x, 1.0) || near(p.y, 0.0) || near(p.y, 1.0);
}

/// Interior DOFs of a unit-square space, in increasing global order.
inline std::vector<int> free_dofs(const FeSpace& s) {
    std::vector<int> f;
    for (int d = 0; d < s.n_dofs(); ++d)
        if (!on_unit_square_boundary(s.dof_coords[static_cast<std::size_t>(d)])) f.push_back(d);
    return f;
}

inline Dense restrict(const Dense& a, const std::vector<int>& rows, const std::vector<int>& cols) {
    Dense r(rows.size(), cols.size());
    for (std::size_t i = 0; i < rows.size(); ++i)
        for (std::size_t j = 0; j < cols.size(); ++j) r(i, j) = a(rows[i], cols[j]);
    return r;
}

inline Vec restrict(const Vec& v, const std::vector<int>& rows) {
    Vec r(rows.size());
    for (std::size_t i = 0; i < rows.size(); ++i) r[i] = v[rows[i]];
    return r;
}

// Volume terms

inline Dense mass(const FeSpace& s) {
    Dense a = Dense::Zero(s.n_dofs(), s.n_dofs());
    for (int t = 0; t < s.n_cells(); ++t) {
        const auto v = corners(*s.mesh, t);
        const LocalBasis b(v, s.kind);
        const auto g = local_to_global(s, b);
        for (const QPoint& q : triangle_rule(v[0], v[1], v[2]))
            for (int i = 0; i < b.size(); ++i)
                for (int j = 0; j < b.size(); ++j) a(g[i], g[j]) += q.w * b.value(i, q.x, q.y) * b.value(j, q.x, q.y);
    }
    return a;
}

inline Dense stiffness(const FeSpace& s) {
    Dense a = Dense::Zero(s.n_dofs(), s.n_dofs());
    for (int t = 0; t < s.n_cells(); ++t) {
        const auto v = corners(*s.mesh, t);
        const LocalBasis b(v, s.kind);
        const auto g = local_to_global(s, b);
        for (const QPoint& q : triangle_rule(v[0], v[1], v[2]))
            for (int i = 0; i < b.size(); ++i)
                for (int j = 0; j < b.size(); ++j) a(g[i], g[j]) += q.w * b.grad(i, q.x, q.y).dot(b.grad(j, q.x, q.y));
    }
    return a;
}

/// B(i, j) = (grad chi_j, grad v_i), v in the P2 space, chi in the P1 space.
inline Dense coupling(const FeSpace& vs, const FeSpace& ws) {
    Dense a = Dense::Zero(vs.n_dofs(), ws.n_dofs());
    for (int t = 0; t < vs.n_cells(); ++t) {
        const auto v = corners(*vs.mesh, t);
        const LocalBasis bv(v, FeKind::P2), bw(v, FeKind::P1);
        const auto gv = local_to_global(vs, bv), gw = local_to_global(ws, bw);
        for (const QPoint& q : triangle_rule(v[0], v[1], v[2]))
            for (int i = 0; i < 6; ++i)
                for (int j = 0; j < 3; ++j) a(gv[i], gw[j]) += q.w * bv.grad(i, q.x, q.y).dot(bw.grad(j, q.x, q.y));
    }
    return a;
}

template <class Fn>
Vec load(const FeSpace& s, Fn&& f) {
    Vec b = Vec::Zero(s.n_dofs());
    for (int t = 0; t < s.n_cells(); ++t) {
        const auto v = corners(*s.mesh, t);
        const LocalBasis lb(v, s.kind);
        const auto g = local_to_global(s, lb);
        for (const QPoint& q : triangle_rule(v[0], v[1], v[2]))
            for (int i = 0; i < lb.size(); ++i) b[g[i]] += q.w * f(q.x, q.y) * lb.value(i, q.x, q.y);
    }
    return b;
}

template <class GradFn>
Vec load_grad(const FeSpace& s, GradFn&& gf) {
    Vec b = Vec::Zero(s.n_dofs());
    for (int t = 0; t < s.n_cells(); ++t) {
        const auto v = corners(*s.mesh, t);
        const LocalBasis lb(v, s.kind);
        const auto g = local_to_global(s, lb);
        for (const QPoint& q : triangle_rule(v[0], v[1], v[2]))
            for (int i = 0; i < lb.size(); ++i) b[g[i]] += q.w * V2(gf(q.x, q.y)).dot(lb.grad(i, q.x, q.y));
    }
    return b;
}

// C0 interior penalty

struct GeoEdge {
    Point a, b;
    std::vector<int> tris;  // ascending; size 1 on the boundary
    V2 normal;              // from tris[0] outwards
    double length = 0.0;
};

/// Edges found by pairing triangle sides; normal oriented away from the
/// centroid of the lower-indexed neighbour.
inline std::vector<GeoEdge> edges(const TriMesh& m) {
    std::map<std::pair<int, int>, std::vector<int>> side;
    for (int t = 0; t < static_cast<int>(m.triangles.size()); ++t)
        for (int k = 0; k < 3; ++k) {
            int a = m.triangles[t][k], b = m.triangles[t][(k + 1) % 3];
            side[{std::min(a, b), std::max(a, b)}].push_back(t);
        }
    std::vector<GeoEdge> out;
    for (auto& [key, tris] : side) {
        GeoEdge e;
        e.a = m.vertices[key.first];
        e.b = m.vertices[key.second];
        std::sort(tris.begin(), tris.end());
        e.tris = tris;
        const V2 d(e.b.x - e.a.x, e.b.y - e.a.y);
        e.length = d.norm();
        e.normal = V2(-d.y(), d.x()) / e.length;
        const auto c = corners(m, tris[0]);
        const V2 cen((c[0].x + c[1].x + c[2].x) / 3.0, (c[0].y + c[1].y + c[2].y) / 3.0);
        if (e.normal.dot(V2(e.a.x, e.a.y) - cen) < 0.0) e.normal = -e.normal;
        out.push_back(e);
    }
    return out;
}

struct C0ipParts {
    Dense volume, consistency, penalty;
    [[nodiscard]] Dense total() const { return volume + consistency + penalty; }
};

inline C0ipParts c0ip(const FeSpace& s, double sigma) {
    const int n = s.n_dofs();
    C0ipParts parts{Dense::Zero(n, n), Dense::Zero(n, n), Dense::Zero(n, n)};
    const TriMesh& m = *s.mesh;
    for (int t = 0; t < s.n_cells(); ++t) {
        const auto v = corners(m, t);
        const LocalBasis b(v, FeKind::P2);
        const auto g = local_to_global(s, b);
        for (const QPoint& q : triangle_rule(v[0], v[1], v[2]))
            for (int i = 0; i < 6; ++i)
                for (int j = 0; j < 6; ++j) parts.volume(g[i], g[j]) += q.w * b.hess(i).cwiseProduct(b.hess(j)).sum();
    }
    const Rule1D& r = gauss01();
    for (const GeoEdge& e : edges(m)) {
        std::vector<LocalBasis> side;
        std::vector<std::vector<int>> glob;
        for (int t : e.tris) {
            side.emplace_back(corners(m, t), FeKind::P2);
            glob.push_back(local_to_global(s, side.back()));
        }
        for (std::size_t q = 0; q < r.x.size(); ++q) {
            const double x = e.a.x + r.x[q] * (e.b.x - e.a.x), y = e.a.y + r.x[q] * (e.b.y - e.a.y);
            const double w = r.w[q] * e.length;
            std::map<int, V2> jump;
            std::map<int, M2> avg;
            for (std::size_t k = 0; k < side.size(); ++k)
                for (int i = 0; i < 6; ++i) {
                    const int d = glob[k][i];
                    if (!jump.count(d)) {
                        jump[d] = V2::Zero();
                        avg[d] = M2::Zero();
                    }
                    jump[d] += (k == 0 ? 1.0 : -1.0) * side[k].grad(i, x, y);
                    avg[d] += (side.size() == 1 ? 1.0 : 0.5) * side[k].hess(i);
                }
            for (const auto& [di, ji] : jump)
                for (const auto& [dj, jj] : jump) {
                    parts.consistency(di, dj) -=
                        w * (jj.dot(avg[di] * e.normal) + ji.dot(avg[dj] * e.normal));
                    parts.penalty(di, dj) += w * sigma / e.length * ji.dot(e.normal) * jj.dot(e.normal);
                }
        }
    }
    return parts;
}

// Dense linear algebra

/// Gaussian elimination with partial pivoting.
inline Vec gauss_solve(Dense a, Vec b) {
    const Eigen::Index n = a.rows();
    for (Eigen::Index k = 0; k < n; ++k) {
        Eigen::Index p = k;
        for (Eigen::Index i = k + 1; i < n; ++i)
            if (std::abs(a(i, k)) > std::abs(a(p, k))) p = i;
        if (a(p, k) == 0.0) throw std::runtime_error("oracle: singular matrix");
        a.row(k).swap(a.row(p));
        std::swap(b[k], b[p]);
        for (Eigen::Index i = k + 1; i < n; ++i) {
            const double f = a(i, k) / a(k, k);
            a.row(i) -= f * a.row(k);
            b[i] -= f * b[k];
        }
    }
    Vec x(n);
    for (Eigen::Index i = n - 1; i >= 0; --i) {
        double s = b[i];
        for (Eigen::Index j = i + 1; j < n; ++j) s -= a(i, j) * x[j];
        x[i] = s / a(i, i);
    }
    return x;
}

inline double max_abs_diff(const Dense& a, const Dense& b) { return (a - b).cwiseAbs().maxCoeff(); }

}  // namespace oracle
