#pragma once

// Product cell complexes of pairwise vertex-disjoint simplex tuples.
//
// A cell of C^m(K) is an ordered m-tuple of simplices with no vertex in
// common; its dimension is the sum of the factor dimensions and it carries
// the product orientation. The boundary follows the graded Leibniz rule
//   d(s_1 x ... x s_m) = sum_i (-1)^{p_1 + ... + p_{i-1}} s_1 x ... x d s_i x ... x s_m.
// Faces of vertex-disjoint simplices are vertex-disjoint, so the complex is
// closed under faces and no incidence ever lands on the simplicial diagonal.
//
// Permuting the factors acts by cellular chain maps with the Koszul sign
// (-1)^{p_i p_j} for every pair of factors that changes order.

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <optional>
#include <span>
#include <unordered_map>
#include <vector>

#include "obstrukt/complex.hpp"
#include "obstrukt/linalg/homology.hpp"

namespace obstrukt {

namespace detail {

struct TupleHash {
    std::size_t operator()(const std::vector<std::uint32_t>& v) const noexcept
    {
        std::uint64_t h = 1469598103934665603ull;
        for (std::uint32_t x : v) {
            h ^= x;
            h *= 1099511628211ull;
        }
        return static_cast<std::size_t>(h);
    }
};

} // namespace detail

/// A cell of a product complex with its position in the per-degree cell list.
struct ProductCell {
    int dim = 0;
    std::size_t index = 0;
};

class ProductComplex {
public:
    ProductComplex(const SimplicialComplex& K, int m) : base_(K), m_(m)
    {
        if (m < 1) throw InvalidInput("product complex needs at least one factor");
        index_simplices();
        enumerate();
        build_boundaries();
    }

    const SimplicialComplex& base() const { return base_; }
    int factors() const { return m_; }
    /// -1 when there are no cells at all.
    int top_degree() const { return static_cast<int>(cells_.size()) - 1; }
    std::size_t count(int d) const
    {
        return (d < 0 || d > top_degree()) ? 0 : cells_[d].size() / static_cast<std::size_t>(m_);
    }

    /// Global simplex ids of the factors of cell (d, i).
    std::span<const std::uint32_t> cell(int d, std::size_t i) const
    {
        return {cells_.at(d).data() + i * m_, static_cast<std::size_t>(m_)};
    }

    /// Dimension / per-dimension index / vertex labels of a global simplex id.
    int simplex_dim(std::uint32_t g) const { return gdim_[g]; }
    std::size_t simplex_local(std::uint32_t g) const { return glocal_[g]; }
    std::uint32_t global_id(int d, std::size_t local) const { return offset_.at(d) + static_cast<std::uint32_t>(local); }
    const Simplex& factor_simplex(std::uint32_t g) const { return base_.simplex(gdim_[g], glocal_[g]); }

    std::optional<std::size_t> index_of(int d, const std::vector<std::uint32_t>& factors) const
    {
        if (d < 0 || d > top_degree()) return std::nullopt;
        auto it = lookup_[d].find(factors);
        if (it == lookup_[d].end()) return std::nullopt;
        return it->second;
    }

    /// Cellular boundary C_d -> C_{d-1}.
    const SparseIntMatrix& boundary(int d) const
    {
        if (d < 1 || d > top_degree()) throw InvalidInput("product boundary degree out of range");
        return boundary_[d];
    }

    ChainComplex chain_complex() const
    {
        ChainComplex cc;
        for (int d = 0; d <= top_degree(); ++d) {
            cc.cells.push_back(count(d));
            cc.boundary.push_back(d == 0 ? SparseIntMatrix(0, count(0)) : boundary_[d]);
        }
        return cc;
    }
    CochainComplex cochain_complex() const { return CochainComplex::dual(chain_complex()); }

    /// Image of cell (d, i) under the factor permutation `perm` (factor k moves
    /// to position perm[k]), with its Koszul sign.
    std::pair<std::size_t, int> act(const std::vector<int>& perm, int d, std::size_t i) const
    {
        if (static_cast<int>(perm.size()) != m_) throw InvalidInput("permutation size mismatch");
        const auto c = cell(d, i);
        std::vector<std::uint32_t> moved(m_);
        int sign = 1;
        for (int a = 0; a < m_; ++a) {
            moved[perm[a]] = c[a];
            for (int b = a + 1; b < m_; ++b)
                if (perm[a] > perm[b] && (gdim_[c[a]] * gdim_[c[b]]) % 2 != 0) sign = -sign;
        }
        auto j = index_of(d, moved);
        OBSTRUKT_CHECK(j.has_value(), "permuted cell missing");
        return {*j, sign};
    }

    /// Cell dimension profile as vertex-label lists (for reports).
    std::vector<std::vector<VertexId>> describe(int d, std::size_t i) const
    {
        std::vector<std::vector<VertexId>> out;
        for (std::uint32_t g : cell(d, i)) out.push_back(base_.names_of(factor_simplex(g)));
        return out;
    }

private:
    void index_simplices()
    {
        const std::size_t words = (base_.vertex_count() + 63) / 64;
        for (int d = 0; d <= base_.dimension(); ++d) {
            offset_.push_back(static_cast<std::uint32_t>(gdim_.size()));
            for (std::size_t i = 0; i < base_.count(d); ++i) {
                gdim_.push_back(d);
                glocal_.push_back(i);
                std::vector<std::uint64_t> mask(words, 0);
                for (int v : base_.simplex(d, i).vertices) mask[v / 64] |= (1ull << (v % 64));
                masks_.push_back(std::move(mask));
            }
        }
    }

    bool disjoint(const std::vector<std::uint64_t>& a, const std::vector<std::uint64_t>& b) const
    {
        for (std::size_t w = 0; w < a.size(); ++w)
            if (a[w] & b[w]) return false;
        return true;
    }

    void enumerate()
    {
        const std::size_t n = gdim_.size();
        std::vector<std::vector<std::vector<std::uint32_t>>> by_dim;
        std::vector<std::uint32_t> current;
        std::vector<std::uint64_t> used(n == 0 ? 0 : masks_[0].size(), 0);
        auto rec = [&](auto&& self, int depth, int dim) -> void {
            if (depth == m_) {
                if (static_cast<int>(by_dim.size()) <= dim) by_dim.resize(dim + 1);
                by_dim[dim].push_back(current);
                return;
            }
            for (std::uint32_t g = 0; g < n; ++g) {
                if (!disjoint(used, masks_[g])) continue;
                for (std::size_t w = 0; w < used.size(); ++w) used[w] |= masks_[g][w];
                current.push_back(g);
                self(self, depth + 1, dim + gdim_[g]);
                current.pop_back();
                for (std::size_t w = 0; w < used.size(); ++w) used[w] &= ~masks_[g][w];
            }
        };
        if (n > 0) rec(rec, 0, 0);
        cells_.resize(by_dim.size());
        lookup_.resize(by_dim.size());
        for (std::size_t d = 0; d < by_dim.size(); ++d) {
            std::sort(by_dim[d].begin(), by_dim[d].end());
            for (std::size_t i = 0; i < by_dim[d].size(); ++i) {
                cells_[d].insert(cells_[d].end(), by_dim[d][i].begin(), by_dim[d][i].end());
                lookup_[d].emplace(by_dim[d][i], i);
            }
        }
    }

    void build_boundaries()
    {
        boundary_.resize(cells_.size());
        for (int d = 1; d <= top_degree(); ++d) {
            SparseIntMatrix B(count(d - 1), count(d));
            for (std::size_t i = 0; i < count(d); ++i) {
                const auto c = cell(d, i);
                std::vector<std::uint32_t> face(c.begin(), c.end());
                int before = 0;
                for (int k = 0; k < m_; ++k) {
                    const int p = gdim_[c[k]];
                    if (p > 0) {
                        const auto& f = base_.faces(p, glocal_[c[k]]);
                        for (std::size_t j = 0; j < f.size(); ++j) {
                            face[k] = offset_[p - 1] + f[j];
                            auto row = index_of(d - 1, face);
                            OBSTRUKT_CHECK(row.has_value(), "face of a product cell missing");
                            const int sign = ((before + static_cast<int>(j)) % 2 == 0) ? 1 : -1;
                            B.add(*row, i, sign);
                        }
                        face[k] = c[k];
                    }
                    before += p;
                }
            }
            B.finalize();
            boundary_[d] = std::move(B);
        }
    }

    SimplicialComplex base_;
    int m_;
    std::vector<std::uint32_t> offset_;
    std::vector<int> gdim_;
    std::vector<std::size_t> glocal_;
    std::vector<std::vector<std::uint64_t>> masks_;
    std::vector<std::vector<std::uint32_t>> cells_;
    std::vector<std::unordered_map<std::vector<std::uint32_t>, std::size_t, detail::TupleHash>> lookup_;
    std::vector<SparseIntMatrix> boundary_;
};

/// Deleted product K* = C^2(K) with its swap involution.
class DeletedProduct : public ProductComplex {
public:
    explicit DeletedProduct(const SimplicialComplex& K) : ProductComplex(K, 2)
    {
        if (K.vertex_count() == 0) throw InvalidInput("deleted product of an empty complex");
    }

    /// (sigma, tau) -> (-1)^{dim sigma * dim tau} (tau, sigma).
    std::pair<std::size_t, int> swap(int d, std::size_t i) const { return act({1, 0}, d, i); }
};

/// Simplicial configuration complex C^m(K) with its S_m action.
class ConfigurationComplex : public ProductComplex {
public:
    ConfigurationComplex(const SimplicialComplex& K, int m) : ProductComplex(K, m)
    {
        if (m < 2) throw InvalidInput("configuration complex needs m >= 2");
    }
};

/// Z/2-equivariant cochains of K*: cochains c with c(T x) = c(x) for the
/// geometric swap T. Such a cochain is determined by its values on one
/// representative per orbit (the cell whose factor tuple is lexicographically
/// smaller), and c(tau x sigma) = (-1)^{pq} c(sigma x tau). In top degree
/// 2n this is the coefficient twist (-1)^n; for n even the complex is the
/// cellular cochain complex of K*/(Z/2).
class EquivariantCochainComplex {
public:
    struct OrbitSlot {
        std::size_t rep = 0; ///< position in representatives(d)
        int sign = 1;        ///< c(cell) = sign * c(representative)
    };

    EquivariantCochainComplex(const DeletedProduct& P, int n) : P_(&P), n_(n)
    {
        const int top = P.top_degree();
        reps_.resize(top + 1);
        slots_.resize(top + 1);
        for (int d = 0; d <= top; ++d) {
            slots_[d].resize(P.count(d));
            for (std::size_t i = 0; i < P.count(d); ++i) {
                const auto c = P.cell(d, i);
                if (c[0] < c[1]) {
                    slots_[d][i] = {reps_[d].size(), 1};
                    reps_[d].push_back(i);
                }
            }
            for (std::size_t k = 0; k < reps_[d].size(); ++k) {
                auto [j, s] = P.swap(d, reps_[d][k]);
                OBSTRUKT_CHECK(j != reps_[d][k], "swap fixed a cell");
                slots_[d][j] = {k, s};
            }
            OBSTRUKT_CHECK(2 * reps_[d].size() == P.count(d), "swap action is not free");
        }
        complex_.cells.resize(top + 1);
        for (int d = 0; d <= top; ++d) {
            complex_.cells[d] = reps_[d].size();
            if (d == top) {
                complex_.coboundary.emplace_back(0, reps_[d].size());
                continue;
            }
            // (delta c)(r) = c(boundary r) for each representative r of degree d+1
            SparseIntMatrix delta(reps_[d + 1].size(), reps_[d].size());
            const SparseIntMatrix Bt = P.boundary(d + 1).transposed(); // rows: (d+1)-cells
            for (std::size_t k = 0; k < reps_[d + 1].size(); ++k)
                for (const auto& [face, coef] : Bt.row(reps_[d + 1][k])) {
                    const OrbitSlot& s = slots_[d][face];
                    delta.add(k, s.rep, coef * s.sign);
                }
            delta.finalize();
            complex_.coboundary.push_back(std::move(delta));
        }
    }

    const DeletedProduct& product() const { return *P_; }
    int n() const { return n_; }
    /// Sign relating a top cell's value to its swap: (-1)^n.
    int twist() const { return n_ % 2 == 0 ? 1 : -1; }
    const CochainComplex& complex() const { return complex_; }
    const std::vector<std::size_t>& representatives(int d) const { return reps_.at(d); }
    const OrbitSlot& slot(int d, std::size_t cell) const { return slots_.at(d).at(cell); }

    /// Full cochain on K* from values on representatives.
    template <class T>
    std::vector<T> expand(int d, const std::vector<T>& on_reps) const
    {
        std::vector<T> full(P_->count(d));
        for (std::size_t i = 0; i < full.size(); ++i) {
            const auto& s = slots_[d][i];
            full[i] = s.sign > 0 ? T(on_reps[s.rep]) : T(-on_reps[s.rep]);
        }
        return full;
    }

    /// Values on representatives; throws if `full` is not equivariant.
    template <class T>
    std::vector<T> restrict(int d, const std::vector<T>& full) const
    {
        if (full.size() != P_->count(d)) throw InvalidInput("cochain length mismatch");
        std::vector<T> reps(reps_[d].size());
        for (std::size_t k = 0; k < reps.size(); ++k) reps[k] = full[reps_[d][k]];
        for (std::size_t i = 0; i < full.size(); ++i) {
            const auto& s = slots_[d][i];
            const T expect = s.sign > 0 ? T(reps[s.rep]) : T(-reps[s.rep]);
            if (!(expect == full[i])) throw InvalidInput("cochain is not swap-equivariant");
        }
        return reps;
    }

private:
    const DeletedProduct* P_;
    int n_;
    std::vector<std::vector<std::size_t>> reps_;
    std::vector<std::vector<OrbitSlot>> slots_;
    CochainComplex complex_;
};

inline DeletedProduct deleted_product(const SimplicialComplex& K) { return DeletedProduct(K); }

inline ConfigurationComplex configuration_complex(const SimplicialComplex& K, int m)
{
    return ConfigurationComplex(K, m);
}

} // namespace obstrukt
