#pragma once

// Smith normal form over the integers.
//
// Pivoting: the nonzero entry of least absolute value in the active block,
// scanned row-major, is moved to the diagonal; its row and column are
// cleared by integer division, and the process repeats on the remainders
// until the pivot divides everything in its row, its column and the rest of
// the block. The scan order is fixed, so the output is deterministic.

#include <cstddef>
#include <optional>
#include <vector>

#include "obstrukt/linalg/matrix.hpp"

namespace obstrukt {

/// U * A * V = D, with D diagonal, d_1 | d_2 | ..., d_i >= 0, and U, V unimodular.
struct SNFDecomposition {
    IntMatrix U;
    IntMatrix D;
    IntMatrix V;

    std::size_t rank() const
    {
        std::size_t r = 0;
        const std::size_t n = std::min(D.rows(), D.cols());
        while (r < n && sgn(D(r, r)) != 0) ++r;
        return r;
    }

    /// Diagonal entries d_1 .. d_rank.
    std::vector<Integer> invariant_factors() const
    {
        std::vector<Integer> out;
        for (std::size_t i = 0; i < rank(); ++i) out.push_back(D(i, i));
        return out;
    }
};

namespace detail {

inline int cmpabs(const Integer& a, const Integer& b) { return mpz_cmpabs(a.get_mpz_t(), b.get_mpz_t()); }

template <bool Track>
struct SnfState {
    IntMatrix& D;
    IntMatrix* U;
    IntMatrix* V;

    void swap_rows(std::size_t a, std::size_t b)
    {
        D.swap_rows(a, b);
        if constexpr (Track) U->swap_rows(a, b);
    }
    void swap_cols(std::size_t a, std::size_t b)
    {
        D.swap_cols(a, b);
        if constexpr (Track) V->swap_cols(a, b);
    }
    void add_row(std::size_t dst, std::size_t src, const Integer& f)
    {
        D.add_row(dst, src, f);
        if constexpr (Track) U->add_row(dst, src, f);
    }
    void add_col(std::size_t dst, std::size_t src, const Integer& f)
    {
        D.add_col(dst, src, f);
        if constexpr (Track) V->add_col(dst, src, f);
    }
    void negate_row(std::size_t r)
    {
        D.negate_row(r);
        if constexpr (Track) U->negate_row(r);
    }

    void run()
    {
        const std::size_t m = D.rows();
        const std::size_t n = D.cols();
        for (std::size_t t = 0; t < std::min(m, n); ++t) {
            // least |entry| in the active block
            std::optional<std::pair<std::size_t, std::size_t>> best;
            for (std::size_t i = t; i < m; ++i)
                for (std::size_t j = t; j < n; ++j) {
                    if (sgn(D(i, j)) == 0) continue;
                    if (!best || cmpabs(D(i, j), D(best->first, best->second)) < 0) best = {{i, j}};
                }
            if (!best) break;
            swap_rows(t, best->first);
            swap_cols(t, best->second);

            for (;;) {
                bool clean = true;
                Integer q;
                for (std::size_t i = t + 1; i < m; ++i) {
                    if (sgn(D(i, t)) == 0) continue;
                    mpz_tdiv_q(q.get_mpz_t(), D(i, t).get_mpz_t(), D(t, t).get_mpz_t());
                    add_row(i, t, -q);
                    if (sgn(D(i, t)) != 0) clean = false;
                }
                for (std::size_t j = t + 1; j < n; ++j) {
                    if (sgn(D(t, j)) == 0) continue;
                    mpz_tdiv_q(q.get_mpz_t(), D(t, j).get_mpz_t(), D(t, t).get_mpz_t());
                    add_col(j, t, -q);
                    if (sgn(D(t, j)) != 0) clean = false;
                }
                if (!clean) {
                    // a remainder smaller than the pivot survived: promote it
                    std::size_t bi = t, bj = t;
                    for (std::size_t i = t + 1; i < m; ++i)
                        if (sgn(D(i, t)) != 0 && cmpabs(D(i, t), D(bi, bj)) < 0) bi = i, bj = t;
                    for (std::size_t j = t + 1; j < n; ++j)
                        if (sgn(D(t, j)) != 0 && cmpabs(D(t, j), D(bi, bj)) < 0) bi = t, bj = j;
                    swap_rows(t, bi);
                    swap_cols(t, bj);
                    continue;
                }
                // divisibility of the remaining block
                std::optional<std::size_t> bad_row;
                for (std::size_t i = t + 1; i < m && !bad_row; ++i)
                    for (std::size_t j = t + 1; j < n; ++j)
                        if (sgn(D(i, j)) != 0 && !mpz_divisible_p(D(i, j).get_mpz_t(), D(t, t).get_mpz_t())) {
                            bad_row = i;
                            break;
                        }
                if (!bad_row) break;
                add_row(t, *bad_row, Integer(1));
            }
            if (sgn(D(t, t)) < 0) negate_row(t);
        }
    }
};

} // namespace detail

/// Full decomposition with unimodular transforms.
inline SNFDecomposition smith_normal_form(const IntMatrix& A)
{
    SNFDecomposition s{IntMatrix::identity(A.rows()), A, IntMatrix::identity(A.cols())};
    detail::SnfState<true>{s.D, &s.U, &s.V}.run();
    return s;
}

/// Invariant factors only (no transforms), for homology computations.
inline std::vector<Integer> invariant_factors(const IntMatrix& A)
{
    IntMatrix D = A;
    detail::SnfState<false>{D, nullptr, nullptr}.run();
    std::vector<Integer> out;
    for (std::size_t i = 0; i < std::min(D.rows(), D.cols()) && sgn(D(i, i)) != 0; ++i)
        out.push_back(D(i, i));
    return out;
}

/// Checks every invariant of an SNFDecomposition against its source matrix.
inline bool verify_snf(const IntMatrix& A, const SNFDecomposition& s)
{
    if (s.U.rows() != A.rows() || s.V.cols() != A.cols()) return false;
    if (!(s.U * A * s.V == s.D)) return false;
    for (std::size_t i = 0; i < s.D.rows(); ++i)
        for (std::size_t j = 0; j < s.D.cols(); ++j)
            if (i != j && sgn(s.D(i, j)) != 0) return false;
    const std::size_t r = s.rank();
    for (std::size_t i = 0; i < std::min(s.D.rows(), s.D.cols()); ++i) {
        if (i < r && sgn(s.D(i, i)) <= 0) return false;
        if (i >= r && sgn(s.D(i, i)) != 0) return false;
        if (i + 1 < r && !mpz_divisible_p(s.D(i + 1, i + 1).get_mpz_t(), s.D(i, i).get_mpz_t())) return false;
    }
    const Integer du = determinant(s.U);
    const Integer dv = determinant(s.V);
    return abs(du) == 1 && abs(dv) == 1;
}

/// Solves A x = b over the integers via U A V = D. Returns nullopt when no
/// integral solution exists.
inline std::optional<std::vector<Integer>> solve_integer(const SNFDecomposition& s,
                                                        const std::vector<Integer>& b)
{
    const std::size_t m = s.D.rows();
    const std::size_t n = s.D.cols();
    if (b.size() != m) throw InvalidInput("solve_integer: rhs length mismatch");
    std::vector<Integer> ub(m);
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t k = 0; k < m; ++k)
            if (sgn(s.U(i, k)) != 0 && sgn(b[k]) != 0) ub[i] += s.U(i, k) * b[k];
    const std::size_t r = s.rank();
    std::vector<Integer> y(n);
    for (std::size_t i = 0; i < m; ++i) {
        if (i < r) {
            if (!mpz_divisible_p(ub[i].get_mpz_t(), s.D(i, i).get_mpz_t())) return std::nullopt;
            mpz_divexact(y[i].get_mpz_t(), ub[i].get_mpz_t(), s.D(i, i).get_mpz_t());
        } else if (sgn(ub[i]) != 0) {
            return std::nullopt;
        }
    }
    std::vector<Integer> x(n);
    for (std::size_t j = 0; j < n; ++j)
        for (std::size_t k = 0; k < r; ++k)
            if (sgn(s.V(j, k)) != 0 && sgn(y[k]) != 0) x[j] += s.V(j, k) * y[k];
    return x;
}

} // namespace obstrukt
