#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "obstrukt/errors.hpp"
#include "obstrukt/scalar.hpp"

namespace obstrukt {

/// Dense matrix of arbitrary-precision integers, row-major.
class IntMatrix {
public:
    IntMatrix() = default;
    IntMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}
    IntMatrix(std::initializer_list<std::initializer_list<long>> init)
    {
        rows_ = init.size();
        cols_ = rows_ == 0 ? 0 : init.begin()->size();
        data_.reserve(rows_ * cols_);
        for (const auto& row : init) {
            if (row.size() != cols_) throw InvalidInput("ragged matrix literal");
            for (long v : row) data_.emplace_back(v);
        }
    }

    static IntMatrix identity(std::size_t n)
    {
        IntMatrix m(n, n);
        for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
        return m;
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    Integer& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
    const Integer& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

    void swap_rows(std::size_t a, std::size_t b)
    {
        if (a == b) return;
        for (std::size_t j = 0; j < cols_; ++j) std::swap((*this)(a, j), (*this)(b, j));
    }
    void swap_cols(std::size_t a, std::size_t b)
    {
        if (a == b) return;
        for (std::size_t i = 0; i < rows_; ++i) std::swap((*this)(i, a), (*this)(i, b));
    }
    /// row[dst] += factor * row[src]
    void add_row(std::size_t dst, std::size_t src, const Integer& factor)
    {
        if (sgn(factor) == 0) return;
        for (std::size_t j = 0; j < cols_; ++j)
            if (sgn((*this)(src, j)) != 0) (*this)(dst, j) += factor * (*this)(src, j);
    }
    /// col[dst] += factor * col[src]
    void add_col(std::size_t dst, std::size_t src, const Integer& factor)
    {
        if (sgn(factor) == 0) return;
        for (std::size_t i = 0; i < rows_; ++i)
            if (sgn((*this)(i, src)) != 0) (*this)(i, dst) += factor * (*this)(i, src);
    }
    void negate_row(std::size_t r)
    {
        for (std::size_t j = 0; j < cols_; ++j) (*this)(r, j) = -(*this)(r, j);
    }

    bool is_zero() const
    {
        return std::all_of(data_.begin(), data_.end(), [](const Integer& v) { return sgn(v) == 0; });
    }

    friend bool operator==(const IntMatrix& a, const IntMatrix& b)
    {
        return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
    }

    friend IntMatrix operator*(const IntMatrix& a, const IntMatrix& b)
    {
        if (a.cols_ != b.rows_) throw InvalidInput("matrix product dimension mismatch");
        IntMatrix c(a.rows_, b.cols_);
        for (std::size_t i = 0; i < a.rows_; ++i)
            for (std::size_t k = 0; k < a.cols_; ++k) {
                const Integer& aik = a(i, k);
                if (sgn(aik) == 0) continue;
                for (std::size_t j = 0; j < b.cols_; ++j)
                    if (sgn(b(k, j)) != 0) c(i, j) += aik * b(k, j);
            }
        return c;
    }

    IntMatrix transposed() const
    {
        IntMatrix t(cols_, rows_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
        return t;
    }

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<Integer> data_;
};

/// Fraction-free (Bareiss) determinant of a square integer matrix.
inline Integer determinant(IntMatrix m)
{
    if (m.rows() != m.cols()) throw InvalidInput("determinant of a non-square matrix");
    const std::size_t n = m.rows();
    if (n == 0) return 1;
    Integer sign = 1;
    Integer prev = 1;
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (sgn(m(k, k)) == 0) {
            std::size_t p = k + 1;
            while (p < n && sgn(m(p, k)) == 0) ++p;
            if (p == n) return 0;
            m.swap_rows(k, p);
            sign = -sign;
        }
        for (std::size_t i = k + 1; i < n; ++i)
            for (std::size_t j = k + 1; j < n; ++j) {
                Integer v = m(i, j) * m(k, k) - m(i, k) * m(k, j);
                mpz_divexact(v.get_mpz_t(), v.get_mpz_t(), prev.get_mpz_t());
                m(i, j) = v;
            }
        prev = m(k, k);
    }
    return sign * m(n - 1, n - 1);
}

/// Sparse integer matrix stored by rows; entries are small machine integers.
/// Used for boundary and coboundary operators, whose entries are incidence signs.
class SparseIntMatrix {
public:
    using Entry = std::pair<std::uint32_t, std::int64_t>;
    using Row = std::vector<Entry>;

    SparseIntMatrix() = default;
    SparseIntMatrix(std::size_t rows, std::size_t cols) : cols_(cols), rows_(rows) {}

    std::size_t rows() const { return rows_.size(); }
    std::size_t cols() const { return cols_; }
    const Row& row(std::size_t r) const { return rows_[r]; }
    const std::vector<Row>& row_data() const { return rows_; }

    /// Accumulates v at (r, c). Call finalize() once all entries are in.
    void add(std::size_t r, std::size_t c, std::int64_t v)
    {
        if (r >= rows_.size() || c >= cols_) throw InternalError("sparse entry out of range");
        rows_[r].emplace_back(static_cast<std::uint32_t>(c), v);
    }

    /// Sorts rows, merges duplicate columns and drops zeros.
    void finalize()
    {
        for (Row& row : rows_) {
            std::sort(row.begin(), row.end(),
                      [](const Entry& a, const Entry& b) { return a.first < b.first; });
            Row merged;
            merged.reserve(row.size());
            for (const Entry& e : row) {
                if (!merged.empty() && merged.back().first == e.first)
                    merged.back().second += e.second;
                else
                    merged.push_back(e);
            }
            std::erase_if(merged, [](const Entry& e) { return e.second == 0; });
            row = std::move(merged);
        }
    }

    std::int64_t at(std::size_t r, std::size_t c) const
    {
        const Row& row = rows_[r];
        auto it = std::lower_bound(row.begin(), row.end(), c,
                                   [](const Entry& e, std::size_t col) { return e.first < col; });
        return (it != row.end() && it->first == c) ? it->second : 0;
    }

    std::size_t nonzeros() const
    {
        std::size_t n = 0;
        for (const Row& r : rows_) n += r.size();
        return n;
    }

    SparseIntMatrix transposed() const
    {
        SparseIntMatrix t(cols_, rows_.size());
        for (std::size_t r = 0; r < rows_.size(); ++r)
            for (const auto& [c, v] : rows_[r]) t.rows_[c].emplace_back(static_cast<std::uint32_t>(r), v);
        return t; // already sorted: rows visited in increasing order
    }

    IntMatrix to_dense() const
    {
        IntMatrix d(rows_.size(), cols_);
        for (std::size_t r = 0; r < rows_.size(); ++r)
            for (const auto& [c, v] : rows_[r]) d(r, c) = static_cast<long>(v);
        return d;
    }

    /// y = A x over any ring whose elements can be built from machine integers.
    template <class Ring>
    std::vector<typename Ring::value_type> apply(const std::vector<typename Ring::value_type>& x) const
    {
        using T = typename Ring::value_type;
        if (x.size() != cols_) throw InvalidInput("sparse apply: vector length mismatch");
        std::vector<T> y(rows_.size(), Ring::from_int(0));
        for (std::size_t r = 0; r < rows_.size(); ++r) {
            T acc = Ring::from_int(0);
            for (const auto& [c, v] : rows_[r])
                if (!Ring::is_zero(x[c])) acc += Ring::from_int(v) * x[c];
            y[r] = acc;
        }
        return y;
    }

    friend bool operator==(const SparseIntMatrix& a, const SparseIntMatrix& b)
    {
        return a.cols_ == b.cols_ && a.rows_ == b.rows_;
    }

private:
    std::size_t cols_ = 0;
    std::vector<Row> rows_;
};

/// Product of two sparse matrices (used for the d∘d = 0 checks).
inline SparseIntMatrix multiply(const SparseIntMatrix& a, const SparseIntMatrix& b)
{
    if (a.cols() != b.rows()) throw InvalidInput("sparse product dimension mismatch");
    SparseIntMatrix c(a.rows(), b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (const auto& [k, v] : a.row(i))
            for (const auto& [j, w] : b.row(k)) c.add(i, j, v * w);
    c.finalize();
    return c;
}

} // namespace obstrukt
