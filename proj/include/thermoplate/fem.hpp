#pragma once

#include "thermoplate/errors.hpp"
#include "thermoplate/mesh.hpp"
#include "thermoplate/quadrature.hpp"

#include <Eigen/Dense>

#include <array>
#include <memory>
#include <span>
#include <string>
#include <vector>

namespace thermoplate {

using Vec2 = Eigen::Vector2d;
using Mat2 = Eigen::Matrix2d;
using Bary = std::array<double, 3>;

enum class FeKind { P1, P2 };

constexpr int dofs_per_cell(FeKind kind) { return kind == FeKind::P2 ? 6 : 3; }

/// Values, reference gradients and reference Hessians of an N-function basis.
template <int N>
struct BasisValues {
    std::array<double, N> values{};
    std::array<Vec2, N> grads;
    std::array<Mat2, N> hessians;
};

namespace detail {
inline const std::array<Vec2, 3>& ref_bary_grads() {
    static const std::array<Vec2, 3> g{Vec2(-1.0, -1.0), Vec2(1.0, 0.0), Vec2(0.0, 1.0)};
    return g;
}
}  // namespace detail

/// P1 Lagrange basis on the reference triangle (0,0),(1,0),(0,1).
inline BasisValues<3> eval_p1_basis(const Bary& l) {
    BasisValues<3> b;
    const auto& g = detail::ref_bary_grads();
    for (int k = 0; k < 3; ++k) {
        b.values[k] = l[k];
        b.grads[k] = g[k];
        b.hessians[k].setZero();
    }
    return b;
}

/// P2 Lagrange basis. Local DOFs 0-2 are the vertices, 3+k is the midpoint of
/// the edge opposite vertex k.
inline BasisValues<6> eval_p2_basis(const Bary& l) {
    BasisValues<6> b;
    const auto& g = detail::ref_bary_grads();
    for (int k = 0; k < 3; ++k) {
        b.values[k] = l[k] * (2.0 * l[k] - 1.0);
        b.grads[k] = (4.0 * l[k] - 1.0) * g[k];
        b.hessians[k] = 4.0 * g[k] * g[k].transpose();
        const int i = (k + 1) % 3, j = (k + 2) % 3;
        b.values[3 + k] = 4.0 * l[i] * l[j];
        b.grads[3 + k] = 4.0 * (l[j] * g[i] + l[i] * g[j]);
        b.hessians[3 + k] = 4.0 * (g[i] * g[j].transpose() + g[j] * g[i].transpose());
    }
    return b;
}

/// Affine map F(xi) = v0 + J xi from the reference triangle onto a mesh cell.
struct CellGeometry {
    Point v0;
    Mat2 jac;
    Mat2 jac_inv;
    double area = 0.0;

    CellGeometry() = default;
    CellGeometry(const TriMesh& mesh, int t) {
        const auto& tri = mesh.triangles[static_cast<std::size_t>(t)];
        v0 = mesh.vertices[tri[0]];
        const Point a = mesh.vertices[tri[1]] - v0, b = mesh.vertices[tri[2]] - v0;
        jac << a.x, b.x, a.y, b.y;
        jac_inv = jac.inverse();
        area = 0.5 * jac.determinant();
    }

    [[nodiscard]] Point map(const Bary& l) const {
        const Vec2 p = jac * Vec2(l[1], l[2]);
        return {v0.x + p.x(), v0.y + p.y()};
    }
    [[nodiscard]] Vec2 grad(const Vec2& ref) const { return jac_inv.transpose() * ref; }
    [[nodiscard]] Mat2 hessian(const Mat2& ref) const { return jac_inv.transpose() * ref * jac_inv; }
};

/// Degrees-of-freedom layout of a Lagrange space on a triangulation, with the
/// homogeneous Dirichlet mask on the whole boundary.
struct FeSpace {
    FeKind kind = FeKind::P1;
    std::shared_ptr<const TriMesh> mesh;
    std::vector<Point> dof_coords;
    std::vector<int> cell_dof_table;  // stride dofs_per_cell(kind)
    std::vector<bool> dirichlet_mask;
    std::vector<int> free_index;      // DOF -> free number, -1 if constrained
    std::vector<int> free_dofs;       // free number -> DOF
    int n_free = 0;

    [[nodiscard]] int n_dofs() const { return static_cast<int>(dof_coords.size()); }
    [[nodiscard]] int local_size() const { return dofs_per_cell(kind); }
    [[nodiscard]] std::span<const int> cell_dofs(int t) const {
        const auto n = static_cast<std::size_t>(local_size());
        return {cell_dof_table.data() + static_cast<std::size_t>(t) * n, n};
    }
    [[nodiscard]] int n_cells() const { return static_cast<int>(mesh->triangles.size()); }
};

inline FeSpace build_space(std::shared_ptr<const TriMesh> mesh, FeKind kind) {
    if (!mesh) throw InvalidArgument("build_space: null mesh");
    FeSpace s;
    s.kind = kind;
    s.mesh = mesh;
    const auto nv = mesh->vertices.size();
    const auto ne = mesh->edges.size();
    s.dof_coords = mesh->vertices;
    s.dirichlet_mask.assign(nv, false);
    if (kind == FeKind::P2) {
        s.dof_coords.reserve(nv + ne);
        for (const auto& e : mesh->edges)
            s.dof_coords.push_back(0.5 * (mesh->vertices[e.verts[0]] + mesh->vertices[e.verts[1]]));
        s.dirichlet_mask.resize(nv + ne, false);
    }
    for (std::size_t e = 0; e < ne; ++e) {
        const auto& edge = mesh->edges[e];
        if (!edge.boundary) continue;
        s.dirichlet_mask[static_cast<std::size_t>(edge.verts[0])] = true;
        s.dirichlet_mask[static_cast<std::size_t>(edge.verts[1])] = true;
        if (kind == FeKind::P2) s.dirichlet_mask[nv + e] = true;
    }

    const int ldofs = dofs_per_cell(kind);
    s.cell_dof_table.reserve(mesh->triangles.size() * static_cast<std::size_t>(ldofs));
    for (std::size_t t = 0; t < mesh->triangles.size(); ++t) {
        for (int k = 0; k < 3; ++k) s.cell_dof_table.push_back(mesh->triangles[t][static_cast<std::size_t>(k)]);
        if (kind == FeKind::P2)
            for (int k = 0; k < 3; ++k)
                s.cell_dof_table.push_back(static_cast<int>(nv) + mesh->tri_edges[t][static_cast<std::size_t>(k)]);
    }

    s.free_index.assign(s.dof_coords.size(), -1);
    for (int d = 0; d < s.n_dofs(); ++d)
        if (!s.dirichlet_mask[static_cast<std::size_t>(d)]) {
            s.free_index[static_cast<std::size_t>(d)] = s.n_free++;
            s.free_dofs.push_back(d);
        }
    return s;
}

inline FeSpace build_space(const TriMesh& mesh, FeKind kind) {
    return build_space(std::make_shared<const TriMesh>(mesh), kind);
}

/// Local basis evaluation dispatched on the space kind (P1 padded into the
/// first three slots of a six-function record).
inline BasisValues<6> eval_basis(FeKind kind, const Bary& l) {
    if (kind == FeKind::P2) return eval_p2_basis(l);
    BasisValues<6> out;
    const auto p1 = eval_p1_basis(l);
    for (int k = 0; k < 3; ++k) {
        out.values[k] = p1.values[k];
        out.grads[k] = p1.grads[k];
        out.hessians[k] = p1.hessians[k];
    }
    for (int k = 3; k < 6; ++k) {
        out.grads[k].setZero();
        out.hessians[k].setZero();
    }
    return out;
}

/// Reference basis tabulated at the points of a triangle rule.
struct BasisTable {
    FeKind kind;
    TriQuadRule rule;
    std::vector<BasisValues<6>> at;

    BasisTable(FeKind k, TriQuadRule r) : kind(k), rule(std::move(r)) {
        at.reserve(rule.size());
        for (const auto& p : rule.points) at.push_back(eval_basis(kind, p));
    }
};

/// Nodal interpolant of `fn` (full DOF vector, boundary DOFs included).
template <class Fn>
Eigen::VectorXd interpolate(const FeSpace& space, Fn&& fn) {
    Eigen::VectorXd v(space.n_dofs());
    for (int d = 0; d < space.n_dofs(); ++d) {
        const Point p = space.dof_coords[static_cast<std::size_t>(d)];
        v[d] = fn(p.x, p.y);
    }
    return v;
}

/// Restriction of a full DOF vector to its free entries and the inverse
/// embedding (constrained entries set to zero).
inline Eigen::VectorXd restrict_to_free(const FeSpace& space, const Eigen::VectorXd& full) {
    Eigen::VectorXd v(space.n_free);
    for (int i = 0; i < space.n_free; ++i) v[i] = full[space.free_dofs[static_cast<std::size_t>(i)]];
    return v;
}

inline Eigen::VectorXd extend_from_free(const FeSpace& space, const Eigen::VectorXd& free) {
    if (free.size() != space.n_free) throw InvalidArgument("extend_from_free: size mismatch");
    Eigen::VectorXd v = Eigen::VectorXd::Zero(space.n_dofs());
    for (int i = 0; i < space.n_free; ++i) v[space.free_dofs[static_cast<std::size_t>(i)]] = free[i];
    return v;
}

/// Value, physical gradient and physical Hessian of a discrete field at a
/// point of cell t given in barycentric coordinates.
struct FieldSample {
    double value = 0.0;
    Vec2 grad = Vec2::Zero();
    Mat2 hessian = Mat2::Zero();
};

inline FieldSample sample_field(const FeSpace& space, const Eigen::VectorXd& coeffs,
                                const CellGeometry& geo, int t, const BasisValues<6>& b) {
    FieldSample s;
    const auto dofs = space.cell_dofs(t);
    Vec2 gref = Vec2::Zero();
    Mat2 href = Mat2::Zero();
    for (std::size_t k = 0; k < dofs.size(); ++k) {
        const double c = coeffs[dofs[k]];
        s.value += c * b.values[k];
        gref += c * b.grads[k];
        href += c * b.hessians[k];
    }
    s.grad = geo.grad(gref);
    s.hessian = geo.hessian(href);
    return s;
}

/// Local vertex index of global vertex v in triangle t, or -1.
inline int local_vertex(const TriMesh& mesh, int t, int v) {
    const auto& tri = mesh.triangles[static_cast<std::size_t>(t)];
    for (int k = 0; k < 3; ++k)
        if (tri[static_cast<std::size_t>(k)] == v) return k;
    return -1;
}

}  // namespace thermoplate
