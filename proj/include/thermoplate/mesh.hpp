#pragma once

#include "thermoplate/errors.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <fstream>
#include <map>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

namespace thermoplate {

struct Point {
    double x = 0.0;
    double y = 0.0;
};

inline Point operator+(Point a, Point b) { return {a.x + b.x, a.y + b.y}; }
inline Point operator-(Point a, Point b) { return {a.x - b.x, a.y - b.y}; }
inline Point operator*(double s, Point a) { return {s * a.x, s * a.y}; }
inline double dot(Point a, Point b) { return a.x * b.x + a.y * b.y; }
inline double norm(Point a) { return std::hypot(a.x, a.y); }

enum class Domain { UnitSquare, LShape };

/// One edge of the triangulation. `tris[0]` is always the lower-indexed
/// adjacent triangle (K+); `tris[1]` is K- or -1 on the boundary. The unit
/// normal points from K+ towards K- (outward on the boundary).
struct Edge {
    std::array<int, 2> verts{};  // sorted ascending
    std::array<int, 2> tris{-1, -1};
    bool boundary = false;
    double length = 0.0;
    Point normal;
};

struct TriMesh {
    Domain domain = Domain::UnitSquare;
    std::vector<Point> vertices;
    std::vector<std::array<int, 3>> triangles;  // counterclockwise
    std::vector<Edge> edges;
    /// tri_edges[t][k] is the edge opposite local vertex k of triangle t.
    std::vector<std::array<int, 3>> tri_edges;
    double h = 0.0;

    [[nodiscard]] double signed_area(int t) const {
        const auto& tri = triangles[static_cast<std::size_t>(t)];
        const Point a = vertices[tri[0]], b = vertices[tri[1]], c = vertices[tri[2]];
        return 0.5 * ((b.x - a.x) * (c.y - a.y) - (c.x - a.x) * (b.y - a.y));
    }

    [[nodiscard]] double total_area() const {
        double s = 0.0;
        for (int t = 0; t < static_cast<int>(triangles.size()); ++t) s += signed_area(t);
        return s;
    }

    [[nodiscard]] std::size_t n_interior_edges() const {
        return static_cast<std::size_t>(
            std::count_if(edges.begin(), edges.end(), [](const Edge& e) { return !e.boundary; }));
    }
};

namespace detail {

inline double longest_edge(const TriMesh& m, const std::array<int, 3>& tri) {
    double longest = 0.0;
    for (int k = 0; k < 3; ++k)
        longest = std::max(longest, norm(m.vertices[tri[(k + 1) % 3]] - m.vertices[tri[k]]));
    return longest;
}

}  // namespace detail

/// Builds the edge table of `mesh` from its triangle list: lexicographic
/// ordering on sorted vertex pairs, K+ = lower-indexed neighbour, normal
/// K+ -> K-. Also fills `tri_edges` and `h`.
inline std::vector<Edge> edge_topology(TriMesh& mesh) {
    std::map<std::pair<int, int>, std::vector<int>> adjacency;
    for (int t = 0; t < static_cast<int>(mesh.triangles.size()); ++t) {
        const auto& tri = mesh.triangles[static_cast<std::size_t>(t)];
        for (int k = 0; k < 3; ++k) {
            int a = tri[(k + 1) % 3], b = tri[(k + 2) % 3];
            if (a > b) std::swap(a, b);
            adjacency[{a, b}].push_back(t);
        }
    }

    std::vector<Edge> edges;
    edges.reserve(adjacency.size());
    std::map<std::pair<int, int>, int> edge_id;
    for (const auto& [key, tris] : adjacency) {
        if (tris.size() > 2)
            throw TopologyError("edge (" + std::to_string(key.first) + "," +
                                std::to_string(key.second) + ") is shared by " +
                                std::to_string(tris.size()) + " triangles");
        Edge e;
        e.verts = {key.first, key.second};
        e.tris[0] = std::min(tris.front(), tris.back());
        e.boundary = tris.size() == 1;
        if (!e.boundary) e.tris[1] = std::max(tris.front(), tris.back());

        const Point a = mesh.vertices[key.first], b = mesh.vertices[key.second];
        const Point d = b - a;
        e.length = norm(d);
        Point n{d.y / e.length, -d.x / e.length};
        // Orient away from the vertex of K+ that is not on this edge.
        const auto& plus = mesh.triangles[static_cast<std::size_t>(e.tris[0])];
        for (int v : plus)
            if (v != key.first && v != key.second && dot(n, mesh.vertices[v] - a) > 0.0)
                n = -1.0 * n;
        e.normal = n;
        edge_id[key] = static_cast<int>(edges.size());
        edges.push_back(e);
    }

    mesh.tri_edges.assign(mesh.triangles.size(), {-1, -1, -1});
    mesh.h = 0.0;
    for (std::size_t t = 0; t < mesh.triangles.size(); ++t) {
        const auto& tri = mesh.triangles[t];
        for (int k = 0; k < 3; ++k) {
            int a = tri[(k + 1) % 3], b = tri[(k + 2) % 3];
            if (a > b) std::swap(a, b);
            mesh.tri_edges[t][static_cast<std::size_t>(k)] = edge_id.at({a, b});
        }
        mesh.h = std::max(mesh.h, detail::longest_edge(mesh, tri));
    }
    return edges;
}

inline void finalize(TriMesh& mesh) { mesh.edges = edge_topology(mesh); }

/// Uniform mesh of (0,1)^2: n x n squares, each cut along its
/// bottom-left -> top-right diagonal.
inline TriMesh build_unit_square(int n) {
    if (n < 1) throw InvalidArgument("build_unit_square: n must be >= 1, got " + std::to_string(n));
    TriMesh m;
    m.domain = Domain::UnitSquare;
    const int np = n + 1;
    m.vertices.reserve(static_cast<std::size_t>(np * np));
    for (int j = 0; j <= n; ++j)
        for (int i = 0; i <= n; ++i)
            m.vertices.push_back({static_cast<double>(i) / n, static_cast<double>(j) / n});
    m.triangles.reserve(static_cast<std::size_t>(2 * n * n));
    for (int j = 0; j < n; ++j)
        for (int i = 0; i < n; ++i) {
            const int v00 = j * np + i, v10 = v00 + 1, v01 = v00 + np, v11 = v01 + 1;
            m.triangles.push_back({v00, v10, v11});
            m.triangles.push_back({v00, v11, v01});
        }
    finalize(m);
    return m;
}

/// L-shaped domain [-1,1]^2 \ [-1,0]^2 with n cells per unit length, so the
/// reentrant corner (0,0) is always a vertex.
inline TriMesh build_lshape(int n) {
    if (n < 1) throw InvalidArgument("build_lshape: n must be >= 1, got " + std::to_string(n));
    TriMesh m;
    m.domain = Domain::LShape;
    const int np = 2 * n + 1;
    auto inside_cell = [n](int i, int j) { return !(i < n && j < n); };  // cell (i,j) of the 2n x 2n grid
    std::vector<int> id(static_cast<std::size_t>(np * np), -1);
    for (int j = 0; j < np; ++j)
        for (int i = 0; i < np; ++i) {
            // A grid point is used when it touches at least one kept cell.
            bool used = false;
            for (int dj = -1; dj <= 0 && !used; ++dj)
                for (int di = -1; di <= 0 && !used; ++di) {
                    const int ci = i + di, cj = j + dj;
                    if (ci >= 0 && cj >= 0 && ci < 2 * n && cj < 2 * n && inside_cell(ci, cj)) used = true;
                }
            if (!used) continue;
            id[static_cast<std::size_t>(j * np + i)] = static_cast<int>(m.vertices.size());
            m.vertices.push_back({-1.0 + static_cast<double>(i) / n, -1.0 + static_cast<double>(j) / n});
        }
    for (int j = 0; j < 2 * n; ++j)
        for (int i = 0; i < 2 * n; ++i) {
            if (!inside_cell(i, j)) continue;
            auto at = [&](int ii, int jj) { return id[static_cast<std::size_t>(jj * np + ii)]; };
            const int v00 = at(i, j), v10 = at(i + 1, j), v01 = at(i, j + 1), v11 = at(i + 1, j + 1);
            m.triangles.push_back({v00, v10, v11});
            m.triangles.push_back({v00, v11, v01});
        }
    finalize(m);
    return m;
}

/// Debug dump: `#vertices` then `#triangles` sections, one entity per line.
inline void write_mesh(std::ostream& os, const TriMesh& mesh) {
    os.precision(17);
    os << "#vertices " << mesh.vertices.size() << '\n';
    for (const auto& v : mesh.vertices) os << v.x << ' ' << v.y << '\n';
    os << "#triangles " << mesh.triangles.size() << '\n';
    for (const auto& t : mesh.triangles) os << t[0] << ' ' << t[1] << ' ' << t[2] << '\n';
}

inline void write_mesh(const std::string& path, const TriMesh& mesh) {
    std::ofstream os(path);
    if (!os) throw InvalidArgument("write_mesh: cannot open " + path);
    write_mesh(os, mesh);
}

}  // namespace thermoplate
