#pragma once

// Independent reference implementations used only by the tests and the
// acceptance battery. They share no code paths with the production routines
// they check.

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "obstrukt/links.hpp"
#include "obstrukt/seeds.hpp"
#include "obstrukt/word.hpp"

namespace obstrukt::oracles {

/// Noncommutative polynomial keyed by monomial strings ("" is the constant),
/// truncated above a fixed degree.
using Polynomial = std::map<std::string, long long>;

inline Polynomial poly_mul(const Polynomial& a, const Polynomial& b, int degree)
{
    Polynomial c;
    for (const auto& [ma, ca] : a)
        for (const auto& [mb, cb] : b) {
            if (static_cast<int>(ma.size() + mb.size()) > degree) continue;
            c[ma + mb] += ca * cb;
        }
    std::erase_if(c, [](const auto& kv) { return kv.second == 0; });
    return c;
}

/// Magnus expansion by direct polynomial multiplication. Monomials are
/// strings over "XYZW".
inline Polynomial magnus_bruteforce(const Word& w, int degree)
{
    Polynomial acc{{"", 1}};
    for (Word::Letter l : w.letters()) {
        const int g = (l > 0 ? l : -l) - 1;
        const std::string X(1, "XYZW"[g]);
        Polynomial letter{{"", 1}};
        std::string power;
        for (int d = 1; d <= degree; ++d) {
            power += X;
            if (l > 0 && d == 1) letter[power] = 1;
            if (l < 0) letter[power] = (d % 2 == 0) ? 1 : -1;
        }
        acc = poly_mul(acc, letter, degree);
    }
    return acc;
}

/// Lowest positive degree with a nonzero coefficient, or nullopt.
inline std::optional<int> lcs_bruteforce(const Word& w, int degree)
{
    std::optional<int> best;
    for (const auto& [m, c] : magnus_bruteforce(w, degree))
        if (!m.empty() && c != 0 && (!best || static_cast<int>(m.size()) < *best)) best = static_cast<int>(m.size());
    return best;
}

namespace detail {

inline long long det3(const Point3& a, const Point3& b, const Point3& c, const Point3& d)
{
    // det[b-a, c-a, d-a]; coordinates stay small in tests so this fits in 64 bits
    const long long u0 = b[0] - a[0], u1 = b[1] - a[1], u2 = b[2] - a[2];
    const long long v0 = c[0] - a[0], v1 = c[1] - a[1], v2 = c[2] - a[2];
    const long long w0 = d[0] - a[0], w1 = d[1] - a[1], w2 = d[2] - a[2];
    return u0 * (v1 * w2 - v2 * w1) - u1 * (v0 * w2 - v2 * w0) + u2 * (v0 * w1 - v1 * w0);
}

inline int sign(long long v) { return (v > 0) - (v < 0); }

inline bool on_line(const Point3& q, const Point3& a, const Point3& b)
{
    const long long ux = b[0] - a[0], uy = b[1] - a[1], uz = b[2] - a[2];
    const long long vx = q[0] - a[0], vy = q[1] - a[1], vz = q[2] - a[2];
    return uy * vz - uz * vy == 0 && uz * vx - ux * vz == 0 && ux * vy - uy * vx == 0;
}

} // namespace detail

/// Linking number as the signed count of B's segments through the cone of A
/// over an apex, oriented so that its boundary is A. Apexes are drawn from a
/// fixed stream until every test is non-degenerate. Coordinates must stay
/// below about 10^5 in absolute value.
inline long long cone_linking_number(const PolygonalCycle& A, const PolygonalCycle& B)
{
    RandomStream apexes = SeedRegistry(0).stream("cone-oracle");
    const std::size_t na = A.points.size(), nb = B.points.size();
    for (int attempt = 0; attempt < 200; ++attempt) {
        const Point3 p{apexes.uniform(-97, 97), apexes.uniform(-89, 89), apexes.uniform(-83, 83)};
        bool degenerate = false;
        long long total = 0;
        for (std::size_t i = 0; i < na && !degenerate; ++i) {
            const Point3& a = A.points[i];
            const Point3& b = A.points[(i + 1) % na];
            for (std::size_t j = 0; j < nb && !degenerate; ++j) {
                const Point3& q0 = B.points[j];
                const Point3& q1 = B.points[(j + 1) % nb];
                // A B-vertex on the line ab, or q0 q1 coplanar with ab, can only
                // meet the triangle on that line outside the edge ab (the cycles
                // are disjoint), whatever the apex. Those pairs contribute nothing.
                if (detail::on_line(q0, a, b) || detail::on_line(q1, a, b)) continue;
                const int s0 = detail::sign(detail::det3(p, a, b, q0));
                const int s1 = detail::sign(detail::det3(p, a, b, q1));
                if (s0 == 0 || s1 == 0) {
                    degenerate = true;
                    break;
                }
                if (s0 == s1) continue;
                const int e1 = detail::sign(detail::det3(q0, q1, a, b));
                if (e1 == 0) continue;
                // the line q0 q1 meets the plane; test which side of each triangle edge
                const int e0 = detail::sign(detail::det3(q0, q1, p, a));
                const int e2 = detail::sign(detail::det3(q0, q1, b, p));
                if (e0 == 0 || e2 == 0) {
                    degenerate = true;
                    break;
                }
                if (e0 == e1 && e1 == e2) total += s1;
            }
        }
        if (!degenerate) return total;
    }
    throw DegenerateInput("cone oracle: no generic apex");
}

} // namespace obstrukt::oracles
