#pragma once

// Straight-line spatial graphs with integer vertices, linking numbers of
// disjoint polygonal cycles, and the mod-2 Conway-Gordon sum for K6.

#include <algorithm>
#include <array>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "obstrukt/errors.hpp"
#include "obstrukt/scalar.hpp"
#include "obstrukt/seeds.hpp"

namespace obstrukt {

using Point3 = std::array<long long, 3>;

struct Graph {
    std::vector<std::string> vertices;
    std::vector<std::pair<int, int>> edges; ///< indices into vertices, first < second

    std::optional<int> index_of(const std::string& v) const
    {
        for (std::size_t i = 0; i < vertices.size(); ++i)
            if (vertices[i] == v) return static_cast<int>(i);
        return std::nullopt;
    }
    bool has_edge(int a, int b) const
    {
        const auto e = std::minmax(a, b);
        return std::find(edges.begin(), edges.end(), std::pair<int, int>(e.first, e.second)) != edges.end();
    }

    static Graph complete(int m)
    {
        if (m < 1) throw InvalidInput("complete graph needs m >= 1");
        Graph g;
        for (int i = 1; i <= m; ++i) g.vertices.push_back("v" + std::to_string(i));
        for (int i = 0; i < m; ++i)
            for (int j = i + 1; j < m; ++j) g.edges.emplace_back(i, j);
        return g;
    }
};

/// Closed polygon through points[0], points[1], ..., back to points[0].
struct PolygonalCycle {
    std::vector<Point3> points;

    PolygonalCycle reversed() const
    {
        PolygonalCycle c{points};
        std::reverse(c.points.begin(), c.points.end());
        return c;
    }
};

namespace detail {

inline Integer I(long long v) { return Integer(static_cast<long>(v)); }

inline std::array<Integer, 3> sub(const Point3& a, const Point3& b)
{
    return {I(a[0]) - I(b[0]), I(a[1]) - I(b[1]), I(a[2]) - I(b[2])};
}

inline std::array<Integer, 3> cross(const std::array<Integer, 3>& a, const std::array<Integer, 3>& b)
{
    return {a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]};
}

inline Integer dot(const std::array<Integer, 3>& a, const std::array<Integer, 3>& b)
{
    return a[0] * b[0] + a[1] * b[1] + a[2] * b[2];
}

inline bool is_zero3(const std::array<Integer, 3>& a) { return sgn(a[0]) == 0 && sgn(a[1]) == 0 && sgn(a[2]) == 0; }

/// p on the closed segment [a, b].
inline bool point_on_segment(const Point3& p, const Point3& a, const Point3& b)
{
    const auto ab = sub(b, a), ap = sub(p, a);
    if (!is_zero3(cross(ab, ap))) return false;
    const Integer t = dot(ap, ab);
    return sgn(t) >= 0 && t <= dot(ab, ab);
}

/// Closed segments [a, b] and [c, d] share a point.
inline bool segments_meet(const Point3& a, const Point3& b, const Point3& c, const Point3& d)
{
    const auto ab = sub(b, a), ac = sub(c, a), ad = sub(d, a), cd = sub(d, c);
    // coplanarity
    if (sgn(dot(cross(ab, ac), ad)) != 0) return false;
    if (point_on_segment(a, c, d) || point_on_segment(b, c, d) || point_on_segment(c, a, b) ||
        point_on_segment(d, a, b))
        return true;
    // proper crossing inside the common plane: c, d strictly on opposite sides of line ab, and vice versa
    const auto n1 = cross(ab, ac), n2 = cross(ab, ad);
    const auto ca = sub(a, c), cb = sub(b, c);
    const auto m1 = cross(cd, ca), m2 = cross(cd, cb);
    return sgn(dot(n1, n2)) < 0 && sgn(dot(m1, m2)) < 0;
}

} // namespace detail

struct GraphEmbedding {
    Graph graph;
    std::vector<Point3> coords; ///< one per graph vertex

    /// First violated embedding condition, or nullopt.
    std::optional<std::string> violation() const
    {
        if (coords.size() != graph.vertices.size()) return "coordinate count does not match the vertex count";
        for (std::size_t i = 0; i < coords.size(); ++i)
            for (std::size_t j = i + 1; j < coords.size(); ++j)
                if (coords[i] == coords[j]) return "vertices " + graph.vertices[i] + " and " + graph.vertices[j] + " coincide";
        for (const auto& [a, b] : graph.edges)
            for (std::size_t v = 0; v < coords.size(); ++v) {
                if (static_cast<int>(v) == a || static_cast<int>(v) == b) continue;
                if (detail::point_on_segment(coords[v], coords[a], coords[b]))
                    return "edge " + graph.vertices[a] + graph.vertices[b] + " passes through " + graph.vertices[v];
            }
        for (std::size_t i = 0; i < graph.edges.size(); ++i)
            for (std::size_t j = i + 1; j < graph.edges.size(); ++j) {
                const auto [a, b] = graph.edges[i];
                const auto [c, d] = graph.edges[j];
                const bool adjacent = a == c || a == d || b == c || b == d;
                if (!adjacent) {
                    if (detail::segments_meet(coords[a], coords[b], coords[c], coords[d]))
                        return "edges " + graph.vertices[a] + graph.vertices[b] + " and " + graph.vertices[c] +
                               graph.vertices[d] + " intersect";
                } else {
                    // adjacent edges may only share their common endpoint: reject collinear overlap
                    const int shared = (a == c || a == d) ? a : b;
                    const int p = (a == shared) ? b : a;
                    const int q = (c == shared) ? d : c;
                    if (detail::point_on_segment(coords[p], coords[shared], coords[q]) ||
                        detail::point_on_segment(coords[q], coords[shared], coords[p]))
                        return "adjacent edges overlap";
                }
            }
        return std::nullopt;
    }
    bool valid() const { return !violation().has_value(); }

    PolygonalCycle cycle(const std::vector<int>& vertex_cycle) const
    {
        if (vertex_cycle.size() < 3) throw InvalidInput("a cycle needs at least three vertices");
        PolygonalCycle c;
        for (std::size_t i = 0; i < vertex_cycle.size(); ++i) {
            const int a = vertex_cycle[i], b = vertex_cycle[(i + 1) % vertex_cycle.size()];
            if (!graph.has_edge(a, b)) throw InvalidInput("cycle uses a non-edge");
            c.points.push_back(coords.at(a));
        }
        return c;
    }
};

inline constexpr int kProjectionRetryBudget = 100;

namespace detail {

struct Projection {
    std::array<Integer, 3> d, u, w;

    explicit Projection(const Point3& dir)
    {
        d = {I(dir[0]), I(dir[1]), I(dir[2])};
        std::array<Integer, 3> e{Integer(1), Integer(0), Integer(0)};
        if (is_zero3(cross(d, e))) e = {Integer(0), Integer(1), Integer(0)};
        u = cross(d, e);
        w = cross(d, u);
    }
    std::array<Integer, 2> operator()(const Point3& p) const
    {
        const std::array<Integer, 3> q{I(p[0]), I(p[1]), I(p[2])};
        return {dot(q, u), dot(q, w)};
    }
};

inline Integer orient2(const std::array<Integer, 2>& a, const std::array<Integer, 2>& b, const std::array<Integer, 2>& c)
{
    return (b[0] - a[0]) * (c[1] - a[1]) - (b[1] - a[1]) * (c[0] - a[0]);
}

/// For c collinear with a b: whether c lies on the closed segment.
inline bool on_segment2(const std::array<Integer, 2>& c, const std::array<Integer, 2>& a, const std::array<Integer, 2>& b)
{
    const Integer t = (c[0] - a[0]) * (b[0] - a[0]) + (c[1] - a[1]) * (b[1] - a[1]);
    const Integer len = (b[0] - a[0]) * (b[0] - a[0]) + (b[1] - a[1]) * (b[1] - a[1]);
    return sgn(t) >= 0 && t <= len;
}

/// Sum of crossing signs with A over B, or nullopt if the direction is not generic.
inline std::optional<long long> crossing_sum(const PolygonalCycle& A, const PolygonalCycle& B, const Point3& dir)
{
    const Projection P(dir);
    std::vector<std::array<Integer, 2>> a2, b2;
    for (const auto& p : A.points) a2.push_back(P(p));
    for (const auto& p : B.points) b2.push_back(P(p));
    const std::size_t na = A.points.size(), nb = B.points.size();
    long long total = 0;
    for (std::size_t i = 0; i < na; ++i)
        for (std::size_t j = 0; j < nb; ++j) {
            const auto &p0 = a2[i], &p1 = a2[(i + 1) % na], &q0 = b2[j], &q1 = b2[(j + 1) % nb];
            const Integer o1 = orient2(p0, p1, q0), o2 = orient2(p0, p1, q1);
            const Integer o3 = orient2(q0, q1, p0), o4 = orient2(q0, q1, p1);
            if (p0 == p1 || q0 == q1) return std::nullopt;
            if ((sgn(o1) == 0 && on_segment2(q0, p0, p1)) || (sgn(o2) == 0 && on_segment2(q1, p0, p1)) ||
                (sgn(o3) == 0 && on_segment2(p0, q0, q1)) || (sgn(o4) == 0 && on_segment2(p1, q0, q1)))
                return std::nullopt;
            // a collinear endpoint off the other segment leaves no crossing
            if (sgn(o1) == 0 || sgn(o2) == 0 || sgn(o3) == 0 || sgn(o4) == 0) continue;
            if (sgn(o1) == sgn(o2) || sgn(o3) == sgn(o4)) continue;
            // crossing: s along A, t along B
            const Rational s = Rational(o3) / Rational(o3 - o4), t = Rational(o1) / Rational(o1 - o2);
            std::array<Rational, 3> pa, pb;
            const auto& A0 = A.points[i];
            const auto& A1 = A.points[(i + 1) % na];
            const auto& B0 = B.points[j];
            const auto& B1 = B.points[(j + 1) % nb];
            for (int k = 0; k < 3; ++k) {
                pa[k] = Rational(I(A0[k])) + s * Rational(I(A1[k]) - I(A0[k]));
                pb[k] = Rational(I(B0[k])) + t * Rational(I(B1[k]) - I(B0[k]));
            }
            // B = A + lambda d; lambda > 0 puts A nearer a viewer at -infinity d
            Rational lambda = 0;
            for (int k = 0; k < 3; ++k) lambda += (pb[k] - pa[k]) * Rational(P.d[k]);
            if (sgn(lambda) == 0) throw InvalidInput("linking_number: cycles intersect");
            if (sgn(lambda) < 0) continue;
            // sign of det[over direction, under direction, -d]
            const auto da = sub(A1, A0), db = sub(B1, B0);
            const std::array<Integer, 3> toward{-P.d[0], -P.d[1], -P.d[2]};
            const int sign = sgn(dot(cross(da, db), toward));
            total += sign;
        }
    return total;
}

} // namespace detail

/// Linking number of disjoint closed polygons: crossings of A over B in a
/// generic projection, signed by the right-handed frame (over, under, viewer).
inline long long linking_number(const PolygonalCycle& A, const PolygonalCycle& B)
{
    if (A.points.size() < 3 || B.points.size() < 3) throw InvalidInput("linking_number needs closed polygons");
    for (const auto* C : {&A, &B})
        for (std::size_t i = 0; i < C->points.size(); ++i)
            if (C->points[i] == C->points[(i + 1) % C->points.size()])
                throw InvalidInput("linking_number: consecutive polygon points coincide");
    for (std::size_t i = 0; i < A.points.size(); ++i)
        for (std::size_t j = 0; j < B.points.size(); ++j)
            if (detail::segments_meet(A.points[i], A.points[(i + 1) % A.points.size()], B.points[j],
                                      B.points[(j + 1) % B.points.size()]))
                throw InvalidInput("linking_number: cycles are not disjoint");
    RandomStream dirs = SeedRegistry(0).stream("projection");
    for (int attempt = 0; attempt < kProjectionRetryBudget; ++attempt) {
        Point3 d{dirs.uniform(-50, 50), dirs.uniform(-50, 50), dirs.uniform(-50, 50)};
        if (d == Point3{0, 0, 0}) continue;
        if (auto v = detail::crossing_sum(A, B, d)) return *v;
    }
    throw DegenerateInput("linking_number: no generic projection direction found");
}

/// Unordered pairs of vertex-disjoint triangles (3-cycles) of a graph.
inline std::vector<std::pair<std::array<int, 3>, std::array<int, 3>>> disjoint_triangle_pairs(const Graph& g)
{
    std::vector<std::array<int, 3>> tri;
    const int n = static_cast<int>(g.vertices.size());
    for (int a = 0; a < n; ++a)
        for (int b = a + 1; b < n; ++b)
            for (int c = b + 1; c < n; ++c)
                if (g.has_edge(a, b) && g.has_edge(b, c) && g.has_edge(a, c)) tri.push_back({a, b, c});
    std::vector<std::pair<std::array<int, 3>, std::array<int, 3>>> out;
    for (std::size_t i = 0; i < tri.size(); ++i)
        for (std::size_t j = i + 1; j < tri.size(); ++j) {
            bool disjoint = true;
            for (int x : tri[i])
                for (int y : tri[j])
                    if (x == y) disjoint = false;
            if (disjoint) out.emplace_back(tri[i], tri[j]);
        }
    return out;
}

inline bool is_complete_graph_on(const Graph& g, int m)
{
    if (static_cast<int>(g.vertices.size()) != m) return false;
    if (static_cast<int>(g.edges.size()) != m * (m - 1) / 2) return false;
    for (int i = 0; i < m; ++i)
        for (int j = i + 1; j < m; ++j)
            if (!g.has_edge(i, j)) return false;
    return true;
}

/// Sum of linking numbers mod 2 over the 10 pairs of disjoint triangles of an embedded K6.
inline int conway_gordon_omega(const GraphEmbedding& e)
{
    if (!is_complete_graph_on(e.graph, 6)) throw InvalidInput("conway_gordon_omega needs an embedding of K6");
    if (auto why = e.violation()) throw InvalidInput("invalid embedding: " + *why);
    long long sum = 0;
    for (const auto& [s, t] : disjoint_triangle_pairs(e.graph)) {
        const auto A = e.cycle({s[0], s[1], s[2]});
        const auto B = e.cycle({t[0], t[1], t[2]});
        sum += linking_number(A, B);
    }
    return static_cast<int>(((sum % 2) + 2) % 2);
}

inline constexpr long long kEmbeddingBound = 1000;

inline GraphEmbedding random_embedding(const Graph& g, std::uint64_t seed, int budget = 100)
{
    RandomStream rng = SeedRegistry(seed).stream("embedding");
    GraphEmbedding e;
    e.graph = g;
    for (int attempt = 0; attempt < budget; ++attempt) {
        e.coords.clear();
        for (std::size_t v = 0; v < g.vertices.size(); ++v)
            e.coords.push_back({rng.uniform(-kEmbeddingBound, kEmbeddingBound), rng.uniform(-kEmbeddingBound, kEmbeddingBound),
                                rng.uniform(-kEmbeddingBound, kEmbeddingBound)});
        if (e.valid()) return e;
    }
    throw DegenerateInput("random_embedding: no valid embedding within the retry budget");
}

} // namespace obstrukt
