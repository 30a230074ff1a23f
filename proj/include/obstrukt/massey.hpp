#pragma once

// Rational simplicial cochains, the Alexander-Whitney cup product, and Massey
// products built from defining systems
//   c_ii = alpha_i,  delta c_ik = sum_{j=i}^{k-1} c_ij u c_{j+1,k}   (i < k, (i,k) != (1,m)),
// whose product is the class of sum_{j=1}^{m-1} c_1j u c_{j+1,m}.

#include <optional>
#include <string>
#include <vector>

#include "obstrukt/complex.hpp"
#include "obstrukt/linalg/homology.hpp"
#include "obstrukt/linalg/sparse_solve.hpp"

namespace obstrukt {

/// Rational cochain on all d-simplices of one complex.
class OrderedCochain {
public:
    OrderedCochain() = default;
    OrderedCochain(const SimplicialComplex& K, int degree)
        : owner_(K.identity()), degree_(degree), values_(K.count(degree))
    {
        if (degree < 0 || degree > K.dimension()) throw InvalidInput("cochain degree out of range");
    }
    OrderedCochain(const SimplicialComplex& K, int degree, std::vector<Rational> values) : OrderedCochain(K, degree)
    {
        if (values.size() != values_.size()) throw InvalidInput("cochain length does not match the complex");
        values_ = std::move(values);
    }

    const void* owner() const { return owner_; }
    int degree() const { return degree_; }
    const std::vector<Rational>& values() const { return values_; }
    Rational& operator[](std::size_t i) { return values_.at(i); }
    const Rational& operator[](std::size_t i) const { return values_.at(i); }

    bool is_zero() const
    {
        return std::all_of(values_.begin(), values_.end(), [](const Rational& v) { return sgn(v) == 0; });
    }

    OrderedCochain& operator+=(const OrderedCochain& o)
    {
        check_compatible(o);
        for (std::size_t i = 0; i < values_.size(); ++i) values_[i] += o.values_[i];
        return *this;
    }
    friend OrderedCochain operator+(OrderedCochain a, const OrderedCochain& b) { return a += b; }
    friend OrderedCochain operator*(const Rational& s, OrderedCochain a)
    {
        for (auto& v : a.values_) v *= s;
        return a;
    }
    friend bool operator==(const OrderedCochain&, const OrderedCochain&) = default;

    void check_compatible(const OrderedCochain& o) const
    {
        if (owner_ != o.owner_) throw InvalidInput("cochains live on different complexes");
        if (degree_ != o.degree_) throw InvalidInput("cochain degrees differ");
    }
    void check_owner(const SimplicialComplex& K) const
    {
        if (owner_ != K.identity()) throw InvalidInput("cochain belongs to a different complex");
    }

private:
    const void* owner_ = nullptr;
    int degree_ = 0;
    std::vector<Rational> values_;
};

/// (a u b)(v_0 ... v_{p+q}) = a(v_0 ... v_p) b(v_p ... v_{p+q}), vertices in the complex's order.
inline OrderedCochain cup(const SimplicialComplex& K, const OrderedCochain& a, const OrderedCochain& b)
{
    a.check_owner(K);
    b.check_owner(K);
    const int p = a.degree(), q = b.degree();
    if (p + q > K.dimension()) throw InvalidInput("cup product lands above the dimension of the complex");
    OrderedCochain out(K, p + q);
    for (std::size_t i = 0; i < K.count(p + q); ++i) {
        const auto& v = K.simplex(p + q, i).vertices;
        const std::vector<int> front(v.begin(), v.begin() + p + 1);
        const std::vector<int> back(v.begin() + p, v.end());
        const Rational& x = a[*K.index_of(front)];
        if (sgn(x) == 0) continue;
        out[i] = x * b[*K.index_of(back)];
    }
    return out;
}

inline OrderedCochain coboundary(const SimplicialComplex& K, const OrderedCochain& c)
{
    c.check_owner(K);
    const int d = c.degree();
    if (d + 1 > K.dimension()) throw InvalidInput("coboundary of a top-degree cochain");
    OrderedCochain out(K, d + 1);
    for (std::size_t i = 0; i < K.count(d + 1); ++i) {
        const auto& f = K.faces(d + 1, i);
        for (std::size_t j = 0; j < f.size(); ++j) out[i] += (j % 2 == 0) ? c[f[j]] : Rational(-c[f[j]]);
    }
    return out;
}

/// Kronecker pairing with an integral chain of the same degree.
inline Rational evaluate(const OrderedCochain& c, const Chain<Integer>& z)
{
    if (c.degree() != z.dim) throw InvalidInput("evaluate: cochain and chain degrees differ");
    Rational s = 0;
    for (const auto& [i, v] : z.coefficients) s += c[i] * Rational(v);
    return s;
}

inline bool is_cocycle(const SimplicialComplex& K, const OrderedCochain& c)
{
    return c.degree() == K.dimension() || coboundary(K, c).is_zero();
}

/// x with delta x = c over Q, or nullopt.
inline std::optional<OrderedCochain> coboundary_preimage(const SimplicialComplex& K, const OrderedCochain& c)
{
    c.check_owner(K);
    if (!is_cocycle(K, c)) throw InvalidInput("coboundary_preimage: target is not a cocycle");
    if (c.degree() == 0) return c.is_zero() ? std::optional<OrderedCochain>(OrderedCochain()) : std::nullopt;
    const auto cc = CochainComplex::dual(chain_complex(K));
    auto x = is_coboundary<RationalField>(cc, c.degree(), c.values());
    if (!x) return std::nullopt;
    return OrderedCochain(K, c.degree() - 1, std::move(*x));
}

/// 1-cocycles c_i with c_i(loop_j) = delta_ij, from one rational solve.
inline std::vector<OrderedCochain> cocycle_dual_to_loops(const SimplicialComplex& K, const std::vector<EdgeLoop>& loops)
{
    if (K.dimension() < 1) throw InvalidInput("cocycle_dual_to_loops needs edges");
    const std::size_t tri = K.count(2);
    SparseIntMatrix A(tri + loops.size(), K.count(1));
    if (K.dimension() >= 2) {
        const auto B = boundary_matrix(K, 2); // edges x triangles
        for (std::size_t e = 0; e < B.rows(); ++e)
            for (const auto& [t, v] : B.row(e)) A.add(t, e, v);
    }
    for (std::size_t j = 0; j < loops.size(); ++j)
        for (const auto& [e, v] : loop_chain(K, loops[j]).coefficients) A.add(tri + j, e, v.get_si());
    A.finalize();
    std::vector<std::vector<Rational>> rhs(loops.size(), std::vector<Rational>(A.rows()));
    for (std::size_t j = 0; j < loops.size(); ++j) rhs[j][tri + j] = 1;
    SparseEliminator<RationalField> e(A, rhs);
    std::vector<OrderedCochain> out;
    for (std::size_t j = 0; j < loops.size(); ++j) {
        if (!e.solvable(j)) throw InvalidInput("loops are not independent in H_1(K; Q)");
        out.emplace_back(K, 1, *e.solution(j));
    }
    return out;
}

/// Cocycles representing a basis of H^1(K; Q).
inline std::vector<OrderedCochain> h1_basis(const SimplicialComplex& K)
{
    std::vector<OrderedCochain> out;
    if (K.dimension() < 1) return out;
    const auto cc = CochainComplex::dual(chain_complex(K));
    std::vector<std::vector<Rational>> Z;
    if (K.dimension() >= 2) {
        Z = SparseEliminator<RationalField>(cc.coboundary[1]).kernel_basis();
    } else {
        for (std::size_t e = 0; e < K.count(1); ++e) {
            Z.emplace_back(K.count(1));
            Z.back()[e] = 1;
        }
    }
    // classes of the cocycles in C^1 / im delta^0; keep an independent subset
    const SparseEliminator<RationalField> red(cc.coboundary[0], Z);
    std::vector<std::vector<Rational>> echelon; // residuals reduced against each other
    std::vector<std::size_t> lead;
    for (std::size_t k = 0; k < Z.size(); ++k) {
        auto v = red.residual(k);
        for (std::size_t e = 0; e < echelon.size(); ++e)
            if (sgn(v[lead[e]]) != 0) {
                const Rational f = v[lead[e]] / echelon[e][lead[e]];
                for (std::size_t i = 0; i < v.size(); ++i) v[i] -= f * echelon[e][i];
            }
        std::size_t l = 0;
        while (l < v.size() && sgn(v[l]) == 0) ++l;
        if (l == v.size()) continue;
        echelon.push_back(std::move(v));
        lead.push_back(l);
        out.emplace_back(K, 1, Z[k]);
    }
    return out;
}

struct DefiningSystem {
    int m = 0;
    /// c[i][k] for 0 <= i <= k < m (0-based), c[0][m-1] unused.
    std::vector<std::vector<OrderedCochain>> c;
};

struct MasseyReport {
    std::vector<OrderedCochain> inputs;
    bool defined = false;
    /// When undefined: the 0-based window (i, k) whose equation had no solution,
    /// and the obstructing cocycle sum_j c_ij u c_{j+1,k}.
    std::optional<std::pair<int, int>> failed_stage;
    std::optional<OrderedCochain> obstruction;
    DefiningSystem system;
    OrderedCochain representative;
    /// Spanning set of alpha_1 u H^1 + H^1 u alpha_m; empty for m = 2, where
    /// the product is a plain cup product. For m >= 4 this is the part of the
    /// indeterminacy seen by changing the outermost entries only.
    std::vector<OrderedCochain> indeterminacy;
    /// Filled by massey_product when a cycle is supplied.
    std::optional<Rational> value;
    std::vector<Rational> indeterminacy_values;

    std::string status() const
    {
        if (defined) return "defined";
        return "undefined-at-stage-(" + std::to_string(failed_stage->first + 1) + "," +
               std::to_string(failed_stage->second + 1) + ")";
    }
};

namespace detail {

inline OrderedCochain window_sum(const SimplicialComplex& K, const DefiningSystem& s, int i, int k)
{
    OrderedCochain sum(K, 2);
    for (int j = i; j < k; ++j) sum += cup(K, s.c[i][j], s.c[j + 1][k]);
    return sum;
}

} // namespace detail

/// Greedy defining system, by increasing window length and then by i. The
/// defining equations are re-verified exactly before the report is returned.
inline MasseyReport massey_product(const SimplicialComplex& K, const std::vector<OrderedCochain>& alphas,
                                   const std::optional<Chain<Integer>>& cycle = std::nullopt)
{
    const int m = static_cast<int>(alphas.size());
    if (m < 2) throw InvalidInput("massey_product needs at least two classes");
    if (K.dimension() < 2) throw InvalidInput("massey_product needs a complex with triangles");
    for (const auto& a : alphas) {
        a.check_owner(K);
        if (a.degree() != 1) throw InvalidInput("massey_product takes degree-1 classes");
        if (!is_cocycle(K, a)) throw InvalidInput("massey_product input is not a cocycle");
    }
    MasseyReport r;
    r.inputs = alphas;
    r.system.m = m;
    r.system.c.assign(m, std::vector<OrderedCochain>(m));
    for (int i = 0; i < m; ++i) r.system.c[i][i] = alphas[i];

    for (int len = 1; len <= m - 1; ++len)
        for (int i = 0; i + len < m; ++i) {
            const int k = i + len;
            if (i == 0 && k == m - 1) continue;
            const OrderedCochain target = detail::window_sum(K, r.system, i, k);
            auto x = coboundary_preimage(K, target);
            if (!x) {
                r.failed_stage = {i, k};
                r.obstruction = target;
                return r;
            }
            r.system.c[i][k] = std::move(*x);
        }
    // post hoc verification of every defining equation
    for (int len = 1; len <= m - 1; ++len)
        for (int i = 0; i + len < m; ++i) {
            const int k = i + len;
            if (i == 0 && k == m - 1) continue;
            OBSTRUKT_CHECK(coboundary(K, r.system.c[i][k]) == detail::window_sum(K, r.system, i, k),
                           "defining system equation fails");
        }
    r.defined = true;
    r.representative = detail::window_sum(K, r.system, 0, m - 1);
    OBSTRUKT_CHECK(is_cocycle(K, r.representative), "Massey representative is not a cocycle");
    if (m >= 3)
        for (const auto& h : h1_basis(K)) {
            r.indeterminacy.push_back(cup(K, alphas.front(), h));
            r.indeterminacy.push_back(cup(K, h, alphas.back()));
        }
    if (cycle) {
        r.value = evaluate(r.representative, *cycle);
        for (const auto& g : r.indeterminacy) r.indeterminacy_values.push_back(evaluate(g, *cycle));
    }
    return r;
}

} // namespace obstrukt
