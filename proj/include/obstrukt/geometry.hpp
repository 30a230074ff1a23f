#pragma once

// Generic linear maps K -> R^{2n} with integer vertex coordinates, checked
// for general position exactly, and signed intersection numbers of images of
// vertex-disjoint n-simplices.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "obstrukt/complex.hpp"
#include "obstrukt/linalg/matrix.hpp"
#include "obstrukt/seeds.hpp"

namespace obstrukt {

struct GenericMap {
    int n = 0;
    /// points[v] has 2n coordinates; v indexes the complex's sorted vertex list.
    std::vector<std::vector<Integer>> points;
    std::uint64_t seed = 0;
    int attempts = 0;
};

inline constexpr long long kCoordinateBound = 1000000;
inline constexpr int kGenericRetryBudget = 100;

namespace detail {

/// Rank over Q by fraction-free elimination.
inline std::size_t integer_rank(IntMatrix m)
{
    std::size_t rank = 0;
    Integer prev = 1;
    for (std::size_t c = 0; c < m.cols() && rank < m.rows(); ++c) {
        std::size_t p = rank;
        while (p < m.rows() && sgn(m(p, c)) == 0) ++p;
        if (p == m.rows()) continue;
        m.swap_rows(rank, p);
        for (std::size_t i = rank + 1; i < m.rows(); ++i) {
            for (std::size_t j = c + 1; j < m.cols(); ++j) {
                m(i, j) = m(rank, c) * m(i, j) - m(i, c) * m(rank, j);
                mpz_divexact(m(i, j).get_mpz_t(), m(i, j).get_mpz_t(), prev.get_mpz_t());
            }
            m(i, c) = 0;
        }
        prev = m(rank, c);
        ++rank;
    }
    return rank;
}

/// Rows are the difference vectors p_k - p_0.
inline bool affinely_independent(const std::vector<const std::vector<Integer>*>& pts)
{
    if (pts.size() <= 1) return true;
    const std::size_t dim = pts.front()->size();
    if (pts.size() - 1 > dim) return false;
    IntMatrix m(pts.size() - 1, dim);
    for (std::size_t k = 1; k < pts.size(); ++k)
        for (std::size_t j = 0; j < dim; ++j) m(k - 1, j) = (*pts[k])[j] - (*pts[0])[j];
    return integer_rank(std::move(m)) == pts.size() - 1;
}

/// Signs of the barycentric solution sum l_i a_i = sum m_j b_j, sum l = sum m = 1,
/// via Cramer's rule. Empty when the system is singular.
inline std::vector<int> barycentric_signs(const std::vector<const std::vector<Integer>*>& a,
                                          const std::vector<const std::vector<Integer>*>& b)
{
    const std::size_t dim = a.front()->size();
    const std::size_t N = a.size() + b.size();
    if (N != dim + 2) throw InternalError("barycentric system is not square");
    IntMatrix M(N, N);
    for (std::size_t r = 0; r < dim; ++r) {
        for (std::size_t i = 0; i < a.size(); ++i) M(r, i) = (*a[i])[r];
        for (std::size_t j = 0; j < b.size(); ++j) M(r, a.size() + j) = -(*b[j])[r];
    }
    for (std::size_t i = 0; i < a.size(); ++i) M(dim, i) = 1;
    for (std::size_t j = 0; j < b.size(); ++j) M(dim + 1, a.size() + j) = 1;
    const int s = sgn(determinant(M));
    if (s == 0) return {};
    std::vector<int> signs(N);
    for (std::size_t k = 0; k < N; ++k) {
        IntMatrix Mk = M;
        for (std::size_t r = 0; r < N; ++r) Mk(r, k) = (r >= dim) ? 1 : 0;
        signs[k] = s * sgn(determinant(std::move(Mk)));
    }
    return signs;
}

inline std::vector<const std::vector<Integer>*> image_of(const GenericMap& f, const std::vector<int>& verts)
{
    std::vector<const std::vector<Integer>*> out;
    for (int v : verts) out.push_back(&f.points.at(v));
    return out;
}

} // namespace detail

/// Exact general-position check. Returns the first violation found, or nullopt.
///
/// For every pair of distinct maximal simplices with vertex union U: when
/// |U| <= 2n+1 the images of U are affinely independent (so the two images
/// meet exactly in the image of the common face); when |U| = 2n+2 (two
/// disjoint n-simplices) the barycentric system is nonsingular and has no
/// zero coordinate, so any intersection is one transverse interior point.
inline std::optional<std::string> general_position_violation(const SimplicialComplex& K, const GenericMap& f)
{
    const std::size_t dim = static_cast<std::size_t>(2 * f.n);
    if (f.points.size() != K.vertex_count()) return "map has " + std::to_string(f.points.size()) + " points for " +
                                                     std::to_string(K.vertex_count()) + " vertices";
    for (const auto& p : f.points)
        if (p.size() != dim) return "point with wrong number of coordinates";

    std::vector<std::vector<int>> maximal;
    for (const auto& names : K.maximal_simplices()) {
        std::vector<int> v;
        for (const auto& nm : names) v.push_back(*K.vertex_index(nm));
        std::sort(v.begin(), v.end());
        maximal.push_back(std::move(v));
    }
    for (const auto& s : maximal)
        if (!detail::affinely_independent(detail::image_of(f, s))) return "a simplex does not embed";

    for (std::size_t i = 0; i < maximal.size(); ++i)
        for (std::size_t j = i + 1; j < maximal.size(); ++j) {
            std::vector<int> u;
            std::set_union(maximal[i].begin(), maximal[i].end(), maximal[j].begin(), maximal[j].end(),
                           std::back_inserter(u));
            if (u.size() <= dim + 1) {
                if (!detail::affinely_independent(detail::image_of(f, u)))
                    return "images of two simplices meet outside their common face";
            } else {
                auto signs = detail::barycentric_signs(detail::image_of(f, maximal[i]), detail::image_of(f, maximal[j]));
                if (signs.empty()) return "images of two disjoint simplices are not transverse";
                if (std::find(signs.begin(), signs.end(), 0) != signs.end())
                    return "intersection point lies on a proper face";
            }
        }
    return std::nullopt;
}

inline bool is_generic(const SimplicialComplex& K, const GenericMap& f)
{
    return !general_position_violation(K, f).has_value();
}

/// Random integer coordinates in [-10^6, 10^6], redrawn until the map is in
/// general position. Deterministic in (K, n, seed).
inline GenericMap generic_map(const SimplicialComplex& K, int n, std::uint64_t seed)
{
    if (n < 1) throw InvalidInput("generic_map: n must be positive");
    if (K.dimension() > n)
        throw HypothesisViolation("generic_map: dim K = " + std::to_string(K.dimension()) + " exceeds n = " +
                                  std::to_string(n));
    RandomStream rng = SeedRegistry(seed).stream("generic_map");
    GenericMap f;
    f.n = n;
    f.seed = seed;
    for (int attempt = 1; attempt <= kGenericRetryBudget; ++attempt) {
        f.attempts = attempt;
        f.points.assign(K.vertex_count(), std::vector<Integer>(2 * n));
        for (auto& p : f.points)
            for (auto& x : p) x = static_cast<long>(rng.uniform(-kCoordinateBound, kCoordinateBound));
        if (is_generic(K, f)) return f;
    }
    throw DegenerateInput("generic_map: no map in general position after " + std::to_string(kGenericRetryBudget) +
                          " attempts");
}

/// Signed intersection number of f(sigma) and f(tau) for vertex-disjoint
/// n-simplices. Orientation: sign of det[a_1-a_0, ..., a_n-a_0, b_1-b_0, ..., b_n-b_0]
/// with vertices in the complex's sorted order.
inline int pair_intersection(const GenericMap& f, const Simplex& sigma, const Simplex& tau)
{
    if (sigma.dim() != f.n || tau.dim() != f.n) throw InvalidInput("pair_intersection expects two n-simplices");
    for (int v : sigma.vertices)
        if (std::find(tau.vertices.begin(), tau.vertices.end(), v) != tau.vertices.end())
            throw InvalidInput("pair_intersection expects vertex-disjoint simplices");
    const auto a = detail::image_of(f, sigma.vertices);
    const auto b = detail::image_of(f, tau.vertices);
    const auto signs = detail::barycentric_signs(a, b);
    if (signs.empty()) throw DegenerateInput("pair_intersection: map is not in general position");
    for (int s : signs)
        if (s <= 0) return 0;
    const std::size_t dim = static_cast<std::size_t>(2 * f.n);
    IntMatrix frame(dim, dim);
    for (std::size_t k = 1; k < a.size(); ++k)
        for (std::size_t r = 0; r < dim; ++r) frame(r, k - 1) = (*a[k])[r] - (*a[0])[r];
    for (std::size_t k = 1; k < b.size(); ++k)
        for (std::size_t r = 0; r < dim; ++r) frame(r, a.size() - 1 + k - 1) = (*b[k])[r] - (*b[0])[r];
    const int s = sgn(determinant(std::move(frame)));
    if (s == 0) throw DegenerateInput("pair_intersection: images are not transverse");
    return s;
}

} // namespace obstrukt
