#pragma once

// Exact sparse Gaussian elimination for A x = b over Z, Q or Z/2.
//
// Pivots are restricted to units of the ring (+-1 over Z), chosen by a
// minimum-degree rule: singleton rows first, otherwise the column with the
// fewest live entries and, inside it, the shortest row. Boundary and
// coboundary matrices of cell complexes mostly collapse this way with little
// fill. Over Z, whatever survives without a unit pivot forms a (hopefully
// small) dense core that is finished with the Smith normal form.
//
// Several right-hand sides can be carried through one elimination.

#include <cstdint>
#include <functional>
#include <optional>
#include <queue>
#include <utility>
#include <vector>

#include "obstrukt/linalg/matrix.hpp"
#include "obstrukt/linalg/smith.hpp"

namespace obstrukt {

template <class Ring>
class SparseEliminator {
public:
    using T = typename Ring::value_type;
    using Entry = std::pair<std::uint32_t, T>;
    using Row = std::vector<Entry>;

    explicit SparseEliminator(const SparseIntMatrix& A, std::vector<std::vector<T>> rhs = {})
        : nrows_(A.rows()), ncols_(A.cols()), rhs_(std::move(rhs))
    {
        for (const auto& b : rhs_)
            if (b.size() != nrows_) throw InvalidInput("eliminator: rhs length does not match row count");
        load(A);
        eliminate();
        finish_core();
    }

    std::size_t rows() const { return nrows_; }
    std::size_t cols() const { return ncols_; }
    std::size_t rank() const { return pivots_.size() + core_rank_; }
    std::size_t rhs_count() const { return rhs_.size(); }
    /// Number of rows/cols that had no unit pivot (always 0 over a field).
    std::size_t core_rows() const { return core_rows_.size(); }
    std::size_t core_cols() const { return core_cols_.size(); }

    /// Invariant factors of the matrix, minus the leading ones contributed by
    /// unit pivots. Entries > 1 are the torsion coefficients of coker A.
    const std::vector<Integer>& core_invariant_factors() const { return core_factors_; }

    bool solvable(std::size_t k) const { return solutions_.at(k).has_value(); }
    const std::optional<std::vector<T>>& solution(std::size_t k) const { return solutions_.at(k); }

    /// Rows never used as pivots. Over a field their unit vectors span a
    /// complement of the column space.
    const std::vector<std::size_t>& free_rows() const { return free_rows_; }

    /// Coordinates of rhs k in C / im A with respect to free_rows(). Field only.
    std::vector<T> residual(std::size_t k) const
    {
        static_assert(Ring::is_field, "residual coordinates are only meaningful over a field");
        std::vector<T> out;
        out.reserve(free_rows_.size());
        for (std::size_t r : free_rows_) out.push_back(rhs_.at(k)[r]);
        return out;
    }

    /// Non-pivot columns; kernel_basis()[k] is 1 at kernel_columns()[k] and 0 at the others.
    std::vector<std::size_t> kernel_columns() const
    {
        std::vector<std::size_t> out;
        for (std::size_t j = 0; j < ncols_; ++j)
            if (!is_pivot_col_[j]) out.push_back(j);
        return out;
    }

    /// Basis of ker A (field only): one vector per non-pivot column.
    std::vector<std::vector<T>> kernel_basis() const
    {
        static_assert(Ring::is_field, "kernel basis requires a field");
        std::vector<std::vector<T>> basis;
        for (std::size_t j = 0; j < ncols_; ++j) {
            if (is_pivot_col_[j]) continue;
            std::vector<T> x(ncols_, Ring::from_int(0));
            x[j] = Ring::from_int(1);
            back_substitute(x, nullptr);
            basis.push_back(std::move(x));
        }
        return basis;
    }

private:
    void load(const SparseIntMatrix& A)
    {
        rows_.resize(nrows_);
        col_rows_.resize(ncols_);
        col_count_.assign(ncols_, 0);
        row_active_.assign(nrows_, true);
        col_active_.assign(ncols_, true);
        is_pivot_col_.assign(ncols_, false);
        for (std::size_t r = 0; r < nrows_; ++r) {
            for (const auto& [c, v] : A.row(r)) {
                T t = Ring::from_int(v);
                if (Ring::is_zero(t)) continue;
                rows_[r].emplace_back(c, std::move(t));
                col_rows_[c].push_back(static_cast<std::uint32_t>(r));
                ++col_count_[c];
            }
        }
    }

    const T* find(std::size_t r, std::uint32_t c) const
    {
        const Row& row = rows_[r];
        auto it = std::lower_bound(row.begin(), row.end(), c,
                                   [](const Entry& e, std::uint32_t col) { return e.first < col; });
        return (it != row.end() && it->first == c) ? &it->second : nullptr;
    }

    // row[dst] -= f * row[src]; keeps column bookkeeping in sync.
    void axpy(std::size_t dst, std::size_t src, const T& f, std::uint32_t pivot_col)
    {
        const Row& s = rows_[src];
        Row& d = rows_[dst];
        Row out;
        out.reserve(d.size() + s.size());
        std::size_t i = 0, j = 0;
        while (i < d.size() || j < s.size()) {
            if (j == s.size() || (i < d.size() && d[i].first < s[j].first)) {
                out.push_back(std::move(d[i++]));
            } else if (i == d.size() || s[j].first < d[i].first) {
                const std::uint32_t c = s[j].first;
                T v = -(f * s[j].second);
                ++j;
                if (c == pivot_col) continue;
                ++col_count_[c];
                col_rows_[c].push_back(static_cast<std::uint32_t>(dst));
                touched_.push_back(c);
                out.emplace_back(c, std::move(v));
            } else {
                const std::uint32_t c = d[i].first;
                T v = d[i].second - f * s[j].second;
                ++i;
                ++j;
                if (Ring::is_zero(v) || c == pivot_col) {
                    --col_count_[c];
                    touched_.push_back(c);
                    continue;
                }
                out.emplace_back(c, std::move(v));
            }
        }
        d = std::move(out);
    }

    void pivot(std::size_t r, std::uint32_t c)
    {
        const T p = *find(r, c);
        const T pinv = Ring::unit_inverse(p);
        // snapshot: col_rows_ grows during axpy
        std::vector<std::uint32_t> others;
        for (std::uint32_t r2 : col_rows_[c])
            if (r2 != r && row_active_[r2] && find(r2, c)) others.push_back(r2);
        std::sort(others.begin(), others.end());
        others.erase(std::unique(others.begin(), others.end()), others.end());
        for (std::uint32_t r2 : others) {
            const T f = *find(r2, c) * pinv;
            axpy(r2, r, f, c);
            for (auto& b : rhs_)
                if (!Ring::is_zero(b[r])) b[r2] -= f * b[r];
            if (rows_[r2].size() == 1) singleton_rows_.push_back(r2);
        }
        row_active_[r] = false;
        for (const auto& [c2, v] : rows_[r]) {
            --col_count_[c2];
            touched_.push_back(c2);
        }
        col_active_[c] = false;
        is_pivot_col_[c] = true;
        pivots_.emplace_back(r, c);
        for (std::uint32_t t : touched_)
            if (col_active_[t]) heap_.emplace(col_count_[t], t);
        touched_.clear();
    }

    void compact_column(std::uint32_t c)
    {
        auto& list = col_rows_[c];
        std::sort(list.begin(), list.end());
        list.erase(std::unique(list.begin(), list.end()), list.end());
        std::erase_if(list, [&](std::uint32_t r) { return !row_active_[r] || !find(r, c); });
    }

    void eliminate()
    {
        for (std::size_t r = 0; r < nrows_; ++r)
            if (rows_[r].size() == 1) singleton_rows_.push_back(r);
        for (std::uint32_t c = 0; c < ncols_; ++c) heap_.emplace(col_count_[c], c);

        for (;;) {
            bool progressed = false;
            while (!singleton_rows_.empty()) {
                const std::size_t r = singleton_rows_.back();
                singleton_rows_.pop_back();
                if (!row_active_[r] || rows_[r].size() != 1) continue;
                const auto& [c, v] = rows_[r].front();
                if (!Ring::is_unit(v)) continue;
                pivot(r, c);
                progressed = true;
            }
            if (heap_.empty()) {
                if (!progressed) break;
                continue;
            }
            const auto [count, c] = heap_.top();
            heap_.pop();
            if (!col_active_[c] || count != col_count_[c]) continue;
            if (count == 0) {
                col_active_[c] = false;
                continue;
            }
            if (col_rows_[c].size() > 2 * static_cast<std::size_t>(count) + 8) compact_column(c);
            std::optional<std::size_t> best;
            for (std::uint32_t r : col_rows_[c]) {
                if (!row_active_[r]) continue;
                const T* v = find(r, c);
                if (!v || !Ring::is_unit(*v)) continue;
                if (!best || rows_[r].size() < rows_[*best].size()) best = r;
            }
            if (!best) continue; // no unit in this column right now; revisited if it changes
            pivot(*best, c);
        }
    }

    void finish_core()
    {
        for (std::size_t r = 0; r < nrows_; ++r)
            if (row_active_[r]) {
                free_rows_.push_back(r);
                if (!rows_[r].empty()) core_rows_.push_back(r);
            }
        std::vector<std::int64_t> core_col_index(ncols_, -1);
        for (std::size_t r : core_rows_)
            for (const auto& [c, v] : rows_[r])
                if (core_col_index[c] < 0) core_col_index[c] = 0;
        for (std::size_t c = 0; c < ncols_; ++c)
            if (core_col_index[c] >= 0) {
                core_col_index[c] = static_cast<std::int64_t>(core_cols_.size());
                core_cols_.push_back(c);
            }
        for (std::size_t c : core_cols_) is_pivot_col_[c] = true; // determined by the core solve

        std::optional<SNFDecomposition> snf;
        if constexpr (!Ring::is_field) {
            if (!core_rows_.empty()) {
                IntMatrix core(core_rows_.size(), core_cols_.size());
                for (std::size_t i = 0; i < core_rows_.size(); ++i)
                    for (const auto& [c, v] : rows_[core_rows_[i]]) core(i, core_col_index[c]) = v;
                snf = smith_normal_form(core);
                core_rank_ = snf->rank();
                core_factors_ = snf->invariant_factors();
            }
        } else {
            OBSTRUKT_CHECK(core_rows_.empty(), "field elimination left a nonempty core");
        }

        solutions_.resize(rhs_.size());
        for (std::size_t k = 0; k < rhs_.size(); ++k) {
            const auto& b = rhs_[k];
            std::vector<T> x(ncols_, Ring::from_int(0));
            bool ok = true;
            for (std::size_t r : free_rows_)
                if (rows_[r].empty() && !Ring::is_zero(b[r])) ok = false;
            if (ok && snf) {
                if constexpr (!Ring::is_field) {
                    std::vector<Integer> cb;
                    for (std::size_t r : core_rows_) cb.push_back(b[r]);
                    auto y = solve_integer(*snf, cb);
                    if (!y) ok = false;
                    else
                        for (std::size_t i = 0; i < core_cols_.size(); ++i) x[core_cols_[i]] = (*y)[i];
                }
            }
            if (!ok) continue;
            back_substitute(x, &b);
            solutions_[k] = std::move(x);
        }
    }

    void back_substitute(std::vector<T>& x, const std::vector<T>* b) const
    {
        for (auto it = pivots_.rbegin(); it != pivots_.rend(); ++it) {
            const auto [r, c] = *it;
            T acc = b ? (*b)[r] : Ring::from_int(0);
            const T* p = nullptr;
            for (const auto& [j, v] : rows_[r]) {
                if (j == c) {
                    p = &v;
                    continue;
                }
                if (!Ring::is_zero(x[j])) acc -= v * x[j];
            }
            x[c] = acc * Ring::unit_inverse(*p);
        }
    }

    std::size_t nrows_;
    std::size_t ncols_;
    std::vector<std::vector<T>> rhs_;
    std::vector<Row> rows_;
    std::vector<std::vector<std::uint32_t>> col_rows_;
    std::vector<int> col_count_;
    std::vector<bool> row_active_;
    std::vector<bool> col_active_;
    std::vector<bool> is_pivot_col_;
    std::vector<std::pair<std::size_t, std::uint32_t>> pivots_;
    std::vector<std::size_t> singleton_rows_;
    std::vector<std::uint32_t> touched_;
    std::priority_queue<std::pair<int, std::uint32_t>, std::vector<std::pair<int, std::uint32_t>>,
                        std::greater<>>
        heap_;
    std::vector<std::size_t> free_rows_;
    std::vector<std::size_t> core_rows_;
    std::vector<std::size_t> core_cols_;
    std::size_t core_rank_ = 0;
    std::vector<Integer> core_factors_;
    std::vector<std::optional<std::vector<T>>> solutions_;
};

/// Rank of an integer matrix over the given ring.
template <class Ring>
std::size_t rank_over(const SparseIntMatrix& A)
{
    return SparseEliminator<Ring>(A).rank();
}

inline std::size_t rank_over(const SparseIntMatrix& A, Coefficients coeff)
{
    switch (coeff) {
    case Coefficients::Z:
    case Coefficients::Q: return rank_over<RationalField>(A);
    case Coefficients::Z2: return rank_over<GF2Field>(A);
    }
    return 0;
}

} // namespace obstrukt
