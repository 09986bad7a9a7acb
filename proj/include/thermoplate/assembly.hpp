#pragma once

#include "thermoplate/errors.hpp"
#include "thermoplate/fem.hpp"

#include <Eigen/Sparse>

#include <algorithm>
#include <cmath>
#include <functional>
#include <optional>
#include <ostream>
#include <vector>

namespace thermoplate {

/// Compressed-row sparse matrix; column indices sorted within each row.
using SparseMatrix = Eigen::SparseMatrix<double, Eigen::RowMajor>;
using Triplets = std::vector<Eigen::Triplet<double>>;

/// Compress a triplet buffer, summing duplicates.
inline SparseMatrix compress(Eigen::Index rows, Eigen::Index cols, const Triplets& trips) {
    SparseMatrix a(rows, cols);
    a.setFromTriplets(trips.begin(), trips.end());
    a.makeCompressed();
    return a;
}

inline double max_asymmetry(const SparseMatrix& a) {
    const SparseMatrix at = a.transpose();
    const SparseMatrix d = a - at;
    double m = 0.0;
    for (int k = 0; k < d.outerSize(); ++k)
        for (SparseMatrix::InnerIterator it(d, k); it; ++it) m = std::max(m, std::abs(it.value()));
    return m;
}

/// Debug export: one `row col value` line per stored entry.
inline void export_coo(std::ostream& os, const SparseMatrix& a) {
    os.precision(17);
    for (int r = 0; r < a.outerSize(); ++r)
        for (SparseMatrix::InnerIterator it(a, r); it; ++it) os << it.row() << ' ' << it.col() << ' ' << it.value() << '\n';
}

/// Sub-matrix on the free DOFs of the row and column spaces.
inline SparseMatrix restrict_to_free(const SparseMatrix& a, const FeSpace& rows, const FeSpace& cols) {
    Triplets trips;
    trips.reserve(static_cast<std::size_t>(a.nonZeros()));
    for (int r = 0; r < a.outerSize(); ++r) {
        const int fr = rows.free_index[static_cast<std::size_t>(r)];
        if (fr < 0) continue;
        for (SparseMatrix::InnerIterator it(a, r); it; ++it) {
            const int fc = cols.free_index[static_cast<std::size_t>(it.col())];
            if (fc >= 0) trips.emplace_back(fr, fc, it.value());
        }
    }
    return compress(rows.n_free, cols.n_free, trips);
}

// Volume terms

/// L2 mass matrix (phi_j, phi_i).
inline SparseMatrix mass_matrix(const FeSpace& space, int degree = 4) {
    const BasisTable table(space.kind, tri_quadrature(degree));
    const int n = space.local_size();
    Triplets trips;
    trips.reserve(static_cast<std::size_t>(space.n_cells() * n * n));
    for (int t = 0; t < space.n_cells(); ++t) {
        const CellGeometry geo(*space.mesh, t);
        const auto dofs = space.cell_dofs(t);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) {
                double v = 0.0;
                for (std::size_t q = 0; q < table.rule.size(); ++q)
                    v += table.rule.weights[q] * table.at[q].values[i] * table.at[q].values[j];
                trips.emplace_back(dofs[i], dofs[j], 2.0 * geo.area * v);
            }
    }
    return compress(space.n_dofs(), space.n_dofs(), trips);
}

/// H1 stiffness matrix (grad phi_j, grad phi_i).
inline SparseMatrix h1_matrix(const FeSpace& space, int degree = 2) {
    const BasisTable table(space.kind, tri_quadrature(degree));
    const int n = space.local_size();
    Triplets trips;
    trips.reserve(static_cast<std::size_t>(space.n_cells() * n * n));
    for (int t = 0; t < space.n_cells(); ++t) {
        const CellGeometry geo(*space.mesh, t);
        const auto dofs = space.cell_dofs(t);
        for (std::size_t q = 0; q < table.rule.size(); ++q) {
            const double w = 2.0 * geo.area * table.rule.weights[q];
            std::array<Vec2, 6> g;
            for (int i = 0; i < n; ++i) g[i] = geo.grad(table.at[q].grads[i]);
            for (int i = 0; i < n; ++i)
                for (int j = 0; j < n; ++j) trips.emplace_back(dofs[i], dofs[j], w * g[i].dot(g[j]));
        }
    }
    return compress(space.n_dofs(), space.n_dofs(), trips);
}

/// Cross-space gradient pairing B[i][j] = (grad chi_j, grad v_i) with v_i in
/// the P2 space and chi_j in the P1 space.
inline SparseMatrix coupling_matrix(const FeSpace& v_space, const FeSpace& w_space, int degree = 2) {
    if (v_space.mesh != w_space.mesh &&
        (v_space.mesh->triangles != w_space.mesh->triangles || v_space.n_cells() != w_space.n_cells()))
        throw InvalidArgument("coupling_matrix: spaces live on different meshes");
    const BasisTable vt(v_space.kind, tri_quadrature(degree));
    const BasisTable wt(w_space.kind, tri_quadrature(degree));
    const int nv = v_space.local_size(), nw = w_space.local_size();
    Triplets trips;
    for (int t = 0; t < v_space.n_cells(); ++t) {
        const CellGeometry geo(*v_space.mesh, t);
        const auto vd = v_space.cell_dofs(t);
        const auto wd = w_space.cell_dofs(t);
        for (std::size_t q = 0; q < vt.rule.size(); ++q) {
            const double w = 2.0 * geo.area * vt.rule.weights[q];
            for (int i = 0; i < nv; ++i) {
                const Vec2 gv = geo.grad(vt.at[q].grads[i]);
                for (int j = 0; j < nw; ++j) trips.emplace_back(vd[i], wd[j], w * gv.dot(geo.grad(wt.at[q].grads[j])));
            }
        }
    }
    return compress(v_space.n_dofs(), w_space.n_dofs(), trips);
}

// C0 interior penalty form

/// Which parts of a_h to assemble. `consistency` covers both symmetric
/// jump-average terms.
struct C0ipTerms {
    bool volume = true;
    bool consistency = true;
    bool penalty = true;
};

namespace detail {

/// Traces of all patch basis functions at one point of an edge: jump of the
/// gradient and average of the Hessian, one entry per patch DOF.
struct EdgeTrace {
    std::vector<int> dofs;
    std::vector<Vec2> jump_grad;
    std::vector<Mat2> avg_hess;
};

/// Barycentric coordinates in triangle t of the point (1-s)*a + s*b on edge (a,b).
inline Bary edge_point_bary(const TriMesh& mesh, int t, const Edge& e, double s) {
    Bary l{0.0, 0.0, 0.0};
    l[static_cast<std::size_t>(local_vertex(mesh, t, e.verts[0]))] = 1.0 - s;
    l[static_cast<std::size_t>(local_vertex(mesh, t, e.verts[1]))] = s;
    return l;
}

inline EdgeTrace edge_trace(const FeSpace& space, const Edge& e, double s) {
    EdgeTrace tr;
    const TriMesh& mesh = *space.mesh;
    const int sides = e.boundary ? 1 : 2;
    const double avg_w = e.boundary ? 1.0 : 0.5;
    for (int side = 0; side < sides; ++side) {
        const int t = e.tris[static_cast<std::size_t>(side)];
        const CellGeometry geo(mesh, t);
        const auto b = eval_basis(space.kind, edge_point_bary(mesh, t, e, s));
        const auto dofs = space.cell_dofs(t);
        const double sign = side == 0 ? 1.0 : -1.0;
        for (std::size_t k = 0; k < dofs.size(); ++k) {
            auto it = std::find(tr.dofs.begin(), tr.dofs.end(), dofs[k]);
            std::size_t idx;
            if (it == tr.dofs.end()) {
                idx = tr.dofs.size();
                tr.dofs.push_back(dofs[k]);
                tr.jump_grad.push_back(Vec2::Zero());
                tr.avg_hess.push_back(Mat2::Zero());
            } else {
                idx = static_cast<std::size_t>(it - tr.dofs.begin());
            }
            tr.jump_grad[idx] += sign * geo.grad(b.grads[k]);
            tr.avg_hess[idx] += avg_w * geo.hessian(b.hessians[k]);
        }
    }
    return tr;
}

}  // namespace detail

/// Matrix of a_h(phi_j, phi_i) on the P2 space:
///   (D2 w, D2 v) - sum_e <[grad w], {D2 v} n> - sum_e <[grad v], {D2 w} n>
///     + sum_e sigma/h_e <[dw/dn], [dv/dn]>
/// over all edges, boundary edges included.
inline SparseMatrix c0ip_matrix(const FeSpace& space, double sigma_ip, C0ipTerms terms = {},
                                int edge_points = 2) {
    if (!(sigma_ip > 0.0)) throw InvalidArgument("c0ip_matrix: sigma_ip must be positive");
    const TriMesh& mesh = *space.mesh;
    Triplets trips;

    if (terms.volume) {
        const BasisTable table(space.kind, tri_quadrature(2));
        const int n = space.local_size();
        for (int t = 0; t < space.n_cells(); ++t) {
            const CellGeometry geo(mesh, t);
            const auto dofs = space.cell_dofs(t);
            for (std::size_t q = 0; q < table.rule.size(); ++q) {
                const double w = 2.0 * geo.area * table.rule.weights[q];
                std::array<Mat2, 6> hs;
                for (int i = 0; i < n; ++i) hs[i] = geo.hessian(table.at[q].hessians[i]);
                for (int i = 0; i < n; ++i)
                    for (int j = 0; j < n; ++j) trips.emplace_back(dofs[i], dofs[j], w * hs[i].cwiseProduct(hs[j]).sum());
            }
        }
    }

    if (terms.consistency || terms.penalty) {
        const EdgeQuadRule rule = edge_quadrature(edge_points);
        for (const Edge& e : mesh.edges) {
            const Vec2 n(e.normal.x, e.normal.y);
            const double pen = sigma_ip / e.length;
            for (std::size_t q = 0; q < rule.size(); ++q) {
                const auto tr = detail::edge_trace(space, e, rule.points[q]);
                const double w = rule.weights[q] * e.length;
                const std::size_t m = tr.dofs.size();
                std::vector<double> jn(m);
                std::vector<Vec2> hn(m);
                for (std::size_t i = 0; i < m; ++i) {
                    jn[i] = tr.jump_grad[i].dot(n);
                    hn[i] = tr.avg_hess[i] * n;
                }
                for (std::size_t i = 0; i < m; ++i)
                    for (std::size_t j = 0; j < m; ++j) {
                        double v = 0.0;
                        if (terms.consistency) v -= tr.jump_grad[j].dot(hn[i]) + tr.jump_grad[i].dot(hn[j]);
                        if (terms.penalty) v += pen * jn[i] * jn[j];
                        if (v != 0.0) trips.emplace_back(tr.dofs[i], tr.dofs[j], w * v);
                    }
            }
        }
    }
    return compress(space.n_dofs(), space.n_dofs(), trips);
}

// Broken norm

using ScalarField = std::function<double(double, double)>;
using GradField = std::function<Vec2(double, double)>;
using HessField = std::function<Mat2(double, double)>;

/// Optional exact part of an error field u - U: its Hessian (volume term) and
/// gradient (boundary normal-derivative term; interior jumps of an H^2
/// function vanish).
struct ExactH2 {
    HessField hessian;
    GradField gradient;
};

/// Squared broken norm, split into its volume and jump parts.
struct BrokenNormParts {
    double volume = 0.0;
    double jumps = 0.0;
    [[nodiscard]] double total() const { return volume + jumps; }
};

/// ||v||_h^2 parts for v = exact - discrete (exact omitted -> pure discrete).
inline BrokenNormParts broken_h_norm_parts(const FeSpace& space, double sigma_ip, const Eigen::VectorXd& coeffs,
                                           const ExactH2* exact = nullptr, int volume_degree = 8,
                                           int edge_points = 4) {
    if (coeffs.size() != space.n_dofs()) throw InvalidArgument("broken_h_norm: coefficient size mismatch");
    const TriMesh& mesh = *space.mesh;
    BrokenNormParts parts;
    const BasisTable table(space.kind, tri_quadrature(exact ? volume_degree : 2));
    for (int t = 0; t < space.n_cells(); ++t) {
        const CellGeometry geo(mesh, t);
        for (std::size_t q = 0; q < table.rule.size(); ++q) {
            Mat2 hd = sample_field(space, coeffs, geo, t, table.at[q]).hessian;
            if (exact) {
                const Point p = geo.map(table.rule.points[q]);
                hd = exact->hessian(p.x, p.y) - hd;
            }
            parts.volume += 2.0 * geo.area * table.rule.weights[q] * hd.squaredNorm();
        }
    }
    const EdgeQuadRule rule = edge_quadrature(edge_points);
    for (const Edge& e : mesh.edges) {
        const Vec2 n(e.normal.x, e.normal.y);
        for (std::size_t q = 0; q < rule.size(); ++q) {
            const double s = rule.points[q];
            double jump = 0.0;
            const int sides = e.boundary ? 1 : 2;
            for (int side = 0; side < sides; ++side) {
                const int t = e.tris[static_cast<std::size_t>(side)];
                const CellGeometry geo(mesh, t);
                const auto b = eval_basis(space.kind, detail::edge_point_bary(mesh, t, e, s));
                const Vec2 g = sample_field(space, coeffs, geo, t, b).grad;
                jump += (side == 0 ? 1.0 : -1.0) * g.dot(n);
            }
            if (exact && e.boundary && exact->gradient) {
                const Point p = (1.0 - s) * mesh.vertices[e.verts[0]] + s * mesh.vertices[e.verts[1]];
                jump = exact->gradient(p.x, p.y).dot(n) - jump;
            }
            parts.jumps += sigma_ip / e.length * rule.weights[q] * e.length * jump * jump;
        }
    }
    return parts;
}

inline double broken_h_norm(const FeSpace& space, double sigma_ip, const Eigen::VectorXd& coeffs,
                            const ExactH2* exact = nullptr) {
    return std::sqrt(broken_h_norm_parts(space, sigma_ip, coeffs, exact).total());
}

// Load vectors

/// (f, phi_i) for a spatial callable f(x, y).
template <class Fn>
Eigen::VectorXd load_vector(const FeSpace& space, Fn&& f, int degree = 8) {
    const BasisTable table(space.kind, tri_quadrature(degree));
    Eigen::VectorXd b = Eigen::VectorXd::Zero(space.n_dofs());
    const int n = space.local_size();
    for (int t = 0; t < space.n_cells(); ++t) {
        const CellGeometry geo(*space.mesh, t);
        const auto dofs = space.cell_dofs(t);
        for (std::size_t q = 0; q < table.rule.size(); ++q) {
            const Point p = geo.map(table.rule.points[q]);
            const double w = 2.0 * geo.area * table.rule.weights[q] * f(p.x, p.y);
            for (int i = 0; i < n; ++i) b[dofs[i]] += w * table.at[q].values[i];
        }
    }
    return b;
}

/// (f(t,.), phi_i) for a time-space callable f(t, x, y).
template <class Fn>
Eigen::VectorXd load_vector(const FeSpace& space, Fn&& f, double t, int degree) {
    return load_vector(space, [&](double x, double y) { return f(t, x, y); }, degree);
}

/// (grad g, grad phi_i) for a vector callable returning grad g(x, y).
template <class Fn>
Eigen::VectorXd load_vector_grad(const FeSpace& space, Fn&& grad_g, int degree = 8) {
    const BasisTable table(space.kind, tri_quadrature(degree));
    Eigen::VectorXd b = Eigen::VectorXd::Zero(space.n_dofs());
    const int n = space.local_size();
    for (int t = 0; t < space.n_cells(); ++t) {
        const CellGeometry geo(*space.mesh, t);
        const auto dofs = space.cell_dofs(t);
        for (std::size_t q = 0; q < table.rule.size(); ++q) {
            const Point p = geo.map(table.rule.points[q]);
            const Vec2 g = grad_g(p.x, p.y);
            const double w = 2.0 * geo.area * table.rule.weights[q];
            for (int i = 0; i < n; ++i) b[dofs[i]] += w * g.dot(geo.grad(table.at[q].grads[i]));
        }
    }
    return b;
}

}  // namespace thermoplate
