#pragma once

#include <algorithm>
#include <cstddef>
#include <type_traits>
#include <optional>
#include <string>
#include <vector>

#include "obstrukt/linalg/matrix.hpp"
#include "obstrukt/linalg/sparse_solve.hpp"

namespace obstrukt {

/// Finitely generated abelian group Z^betti + sum Z/t_i.
struct HomologyGroup {
    std::size_t betti = 0;
    std::vector<Integer> torsion; ///< divisibility chain, every entry > 1

    friend bool operator==(const HomologyGroup&, const HomologyGroup&) = default;
};

/// Cellular chain complex: boundary[d] maps C_d -> C_{d-1}; boundary[0] is a 0 x n_0 matrix.
struct ChainComplex {
    std::vector<std::size_t> cells;
    std::vector<SparseIntMatrix> boundary;

    int top_degree() const { return static_cast<int>(cells.size()) - 1; }
};

/// Cochain complex: coboundary[d] maps C^d -> C^{d+1} (rows = (d+1)-cells).
/// The last entry maps into the zero group.
struct CochainComplex {
    std::vector<std::size_t> cells;
    std::vector<SparseIntMatrix> coboundary;

    int top_degree() const { return static_cast<int>(cells.size()) - 1; }

    static CochainComplex dual(const ChainComplex& cc)
    {
        CochainComplex out;
        out.cells = cc.cells;
        for (std::size_t d = 0; d < cc.cells.size(); ++d) {
            if (d + 1 < cc.cells.size())
                out.coboundary.push_back(cc.boundary[d + 1].transposed());
            else
                out.coboundary.emplace_back(0, cc.cells[d]);
        }
        return out;
    }
};

namespace detail {

inline HomologyGroup group_from(std::size_t n, std::size_t rank_in, std::size_t rank_out,
                                std::vector<Integer> torsion)
{
    HomologyGroup g;
    g.betti = n - rank_in - rank_out;
    g.torsion = std::move(torsion);
    return g;
}

inline std::vector<Integer> torsion_of(const SparseIntMatrix& M)
{
    std::vector<Integer> t;
    const SparseEliminator<IntegerRing> e(M);
    for (const Integer& f : e.core_invariant_factors())
        if (f > 1) t.push_back(f);
    return t;
}

} // namespace detail

/// H_d of a chain complex with coefficients in Z, Q or Z/2.
inline HomologyGroup homology(const ChainComplex& cc, int d, Coefficients coeff)
{
    if (d < 0 || d > cc.top_degree())
        throw InvalidInput("homology degree " + std::to_string(d) + " out of range");
    const auto n = cc.cells[d];
    const std::size_t rin = d >= 1 ? rank_over(cc.boundary[d], coeff) : 0;
    const std::size_t rout = d + 1 <= cc.top_degree() ? rank_over(cc.boundary[d + 1], coeff) : 0;
    std::vector<Integer> torsion;
    if (coeff == Coefficients::Z && d + 1 <= cc.top_degree()) torsion = detail::torsion_of(cc.boundary[d + 1]);
    return detail::group_from(n, rin, rout, std::move(torsion));
}

/// H^d of a cochain complex.
inline HomologyGroup cohomology(const CochainComplex& cc, int d, Coefficients coeff)
{
    if (d < 0 || d > cc.top_degree())
        throw InvalidInput("cohomology degree " + std::to_string(d) + " out of range");
    const auto n = cc.cells[d];
    const std::size_t rout = rank_over(cc.coboundary[d], coeff);
    const std::size_t rin = d >= 1 ? rank_over(cc.coboundary[d - 1], coeff) : 0;
    std::vector<Integer> torsion;
    if (coeff == Coefficients::Z && d >= 1) torsion = detail::torsion_of(cc.coboundary[d - 1]);
    return detail::group_from(n, rin, rout, std::move(torsion));
}

template <class Ring>
std::vector<typename Ring::value_type> convert_cochain(const std::vector<Integer>& c)
{
    std::vector<typename Ring::value_type> out;
    out.reserve(c.size());
    for (const Integer& v : c) {
        if constexpr (std::is_same_v<Ring, IntegerRing>) out.push_back(v);
        else if constexpr (std::is_same_v<Ring, RationalField>) out.emplace_back(v);
        else out.emplace_back(v);
    }
    return out;
}

/// Decides whether the degree-d cocycles in `targets` are coboundaries over Ring.
/// Returns one witness x (delta x = c, verified exactly) per target, or nullopt.
/// Throws InvalidInput when a target is not a cocycle.
template <class Ring>
std::vector<std::optional<std::vector<typename Ring::value_type>>>
coboundary_witnesses(const CochainComplex& cc, int d, const std::vector<std::vector<typename Ring::value_type>>& targets)
{
    using T = typename Ring::value_type;
    if (d < 0 || d > cc.top_degree()) throw InvalidInput("cochain degree out of range");
    for (const auto& c : targets) {
        if (c.size() != cc.cells[d]) throw InvalidInput("cochain length does not match the complex");
        const auto dc = cc.coboundary[d].template apply<Ring>(c);
        for (const T& v : dc)
            if (!Ring::is_zero(v)) throw InvalidInput("cochain is not a cocycle");
    }
    std::vector<std::optional<std::vector<T>>> out;
    if (d == 0) {
        for (const auto& c : targets) {
            bool zero = std::all_of(c.begin(), c.end(), [](const T& v) { return Ring::is_zero(v); });
            out.push_back(zero ? std::optional<std::vector<T>>(std::vector<T>{}) : std::nullopt);
        }
        return out;
    }
    const SparseIntMatrix& delta = cc.coboundary[d - 1];
    SparseEliminator<Ring> elim(delta, targets);
    for (std::size_t k = 0; k < targets.size(); ++k) {
        auto x = elim.solution(k);
        if (x) {
            const auto check = delta.template apply<Ring>(*x);
            for (std::size_t i = 0; i < check.size(); ++i)
                OBSTRUKT_CHECK(check[i] == targets[k][i], "coboundary witness failed re-substitution");
        }
        out.push_back(std::move(x));
    }
    return out;
}

template <class Ring>
std::optional<std::vector<typename Ring::value_type>>
is_coboundary(const CochainComplex& cc, int d, const std::vector<typename Ring::value_type>& c)
{
    return coboundary_witnesses<Ring>(cc, d, {c}).front();
}

} // namespace obstrukt
