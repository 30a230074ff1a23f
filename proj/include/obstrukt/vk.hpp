#pragma once

// The Van Kampen obstruction of an n-complex K.
//
// A generic linear map f: K -> R^{2n} gives the cochain o_f on top cells of
// the deleted product, o_f(sigma x tau) = f(sigma) . f(tau). It is
// swap-equivariant and its class in the equivariant cohomology H^{2n} does
// not depend on f. K embeds in R^{2n} for n != 2 iff the class vanishes.
//
// Also here: the non-equivariant rational image of the class, and the
// pullback of a bilinear form on H_2(K; Q) to H^4(K*; Q) through
// H^4(K x K; Q) = Hom(H_2 (x) H_2, Q) and restriction to K*.

#include <map>
#include <memory>
#include <numeric>
#include <optional>
#include <string>
#include <vector>

#include "obstrukt/complex.hpp"
#include "obstrukt/geometry.hpp"
#include "obstrukt/linalg/homology.hpp"
#include "obstrukt/linalg/sparse_solve.hpp"
#include "obstrukt/products.hpp"

namespace obstrukt {

/// Deleted product and equivariant cochain complex of (K, n), built once.
class ObstructionContext {
public:
    ObstructionContext(const SimplicialComplex& K, int n) : K_(K), n_(n)
    {
        if (n < 1) throw InvalidInput("obstruction dimension n must be positive");
        if (K.dimension() > n)
            throw HypothesisViolation("dim K = " + std::to_string(K.dimension()) + " exceeds n = " + std::to_string(n));
        P_ = std::make_unique<DeletedProduct>(K);
        E_ = std::make_unique<EquivariantCochainComplex>(*P_, n);
    }
    ObstructionContext(const ObstructionContext&) = delete;
    ObstructionContext& operator=(const ObstructionContext&) = delete;

    const SimplicialComplex& complex() const { return K_; }
    int n() const { return n_; }
    int top() const { return 2 * n_; }
    const DeletedProduct& product() const { return *P_; }
    const EquivariantCochainComplex& equivariant() const { return *E_; }
    std::size_t top_cells() const { return P_->count(top()); }
    std::size_t top_orbits() const { return top() <= P_->top_degree() ? E_->representatives(top()).size() : 0; }

private:
    SimplicialComplex K_;
    int n_;
    std::unique_ptr<DeletedProduct> P_;
    std::unique_ptr<EquivariantCochainComplex> E_;
};

struct ObstructionCochain {
    int n = 0;
    std::vector<Integer> on_orbits; ///< indexed like equivariant().representatives(2n)
    std::vector<Integer> on_cells;  ///< every top cell of K*
};

/// o_f on every top cell. Checks the swap symmetry o(tau, sigma) = (-1)^n o(sigma, tau)
/// and the cocycle condition.
inline ObstructionCochain vk_cochain(const ObstructionContext& ctx, const GenericMap& f)
{
    if (f.n != ctx.n()) throw InvalidInput("map dimension does not match the obstruction degree");
    const auto& P = ctx.product();
    const int top = ctx.top();
    ObstructionCochain o;
    o.n = ctx.n();
    o.on_cells.resize(P.count(top));
    for (std::size_t i = 0; i < P.count(top); ++i) {
        const auto c = P.cell(top, i);
        o.on_cells[i] = pair_intersection(f, P.factor_simplex(c[0]), P.factor_simplex(c[1]));
    }
    if (P.count(top) == 0) return o;
    const auto& E = ctx.equivariant();
    const int twist = E.twist();
    for (std::size_t i = 0; i < P.count(top); ++i) {
        auto [j, s] = P.swap(top, i);
        OBSTRUKT_CHECK(s == twist, "swap sign on top cells differs from (-1)^n");
        OBSTRUKT_CHECK(o.on_cells[j] == twist * o.on_cells[i], "o_f violates the swap symmetry");
    }
    o.on_orbits = E.restrict(top, o.on_cells);
    const auto& cc = E.complex();
    const auto d = cc.coboundary[top].apply<IntegerRing>(o.on_orbits);
    for (const auto& v : d) OBSTRUKT_CHECK(sgn(v) == 0, "o_f is not a cocycle");
    return o;
}

inline ObstructionCochain vk_cochain(const SimplicialComplex& K, int n, const GenericMap& f)
{
    ObstructionContext ctx(K, n);
    return vk_cochain(ctx, f);
}

struct ObstructionReport {
    bool zero = false;
    Coefficients coeff = Coefficients::Z;
    /// How the verdict was established.
    std::string certificate;
    /// When zero: x with delta x = o_f on orbit representatives of degree 2n-1
    /// (entries 0/1 over Z/2).
    std::optional<std::vector<Rational>> witness;
    ObstructionCochain cochain;
    GenericMap map;
    std::size_t top_cells = 0;
    std::size_t top_orbits = 0;
};

namespace detail {

template <class Ring>
std::optional<std::vector<Rational>> equivariant_witness(const ObstructionContext& ctx, const ObstructionCochain& o)
{
    const auto& cc = ctx.equivariant().complex();
    const int top = ctx.top();
    auto w = coboundary_witnesses<Ring>(cc, top, {convert_cochain<Ring>(o.on_orbits)}).front();
    if (!w) return std::nullopt;
    std::vector<Rational> out;
    out.reserve(w->size());
    for (const auto& v : *w) out.push_back(Ring::to_rational(v));
    return out;
}

} // namespace detail

/// Decides whether o_f is an equivariant coboundary over the given ring.
/// Over Z: a nonzero class mod 2 certifies nonvanishing; otherwise the
/// integral system is solved, and an unsolvable one is classified as
/// rationally nonzero or torsion.
inline ObstructionReport vk_class(const ObstructionContext& ctx, Coefficients coeff, const GenericMap& f)
{
    ObstructionReport r;
    r.coeff = coeff;
    r.map = f;
    r.cochain = vk_cochain(ctx, f);
    r.top_cells = ctx.top_cells();
    r.top_orbits = ctx.top_orbits();
    const int top = ctx.top();
    if (top > ctx.equivariant().complex().top_degree()) {
        // no pair of disjoint n-simplices
        r.zero = true;
        r.certificate = "no top cells";
        const auto& cells = ctx.equivariant().complex().cells;
        r.witness = std::vector<Rational>(top - 1 < static_cast<int>(cells.size()) ? cells[top - 1] : 0);
        return r;
    }
    switch (coeff) {
    case Coefficients::Z2:
        r.witness = detail::equivariant_witness<GF2Field>(ctx, r.cochain);
        r.certificate = r.witness ? "coboundary mod 2" : "not a coboundary mod 2";
        break;
    case Coefficients::Q:
        r.witness = detail::equivariant_witness<RationalField>(ctx, r.cochain);
        r.certificate = r.witness ? "coboundary over Q" : "not a coboundary over Q";
        break;
    case Coefficients::Z:
        if (!detail::equivariant_witness<GF2Field>(ctx, r.cochain)) {
            r.certificate = "nonzero mod 2";
            break;
        }
        r.witness = detail::equivariant_witness<IntegerRing>(ctx, r.cochain);
        if (r.witness) {
            r.certificate = "integral coboundary";
        } else if (!detail::equivariant_witness<RationalField>(ctx, r.cochain)) {
            r.certificate = "nonzero over Q";
        } else {
            r.certificate = "torsion: integral system unsolvable (Smith form of the core)";
        }
        break;
    }
    r.zero = r.witness.has_value();
    return r;
}

inline ObstructionReport vk_class(const SimplicialComplex& K, int n, Coefficients coeff, std::uint64_t seed)
{
    ObstructionContext ctx(K, n);
    return vk_class(ctx, coeff, generic_map(K, n, seed));
}

/// Re-checks delta(witness) = o_f exactly in the report's ring.
inline bool verify_witness(const ObstructionContext& ctx, const ObstructionReport& r)
{
    if (!r.witness) return false;
    const int top = ctx.top();
    const auto& cc = ctx.equivariant().complex();
    if (top > cc.top_degree()) return true;
    const auto& delta = cc.coboundary[top - 1];
    if (r.witness->size() != delta.cols()) return false;
    std::vector<Rational> dx(delta.rows());
    for (std::size_t i = 0; i < delta.rows(); ++i)
        for (const auto& [c, v] : delta.row(i)) dx[i] += Rational(static_cast<long>(v)) * (*r.witness)[c];
    for (std::size_t i = 0; i < dx.size(); ++i) {
        const Rational& target = r.cochain.on_orbits[i];
        if (r.coeff == Coefficients::Z2) {
            if (dx[i].get_den() != 1) return false;
            const Integer diff = dx[i].get_num() - target.get_num();
            if (mpz_odd_p(diff.get_mpz_t())) return false;
        } else if (dx[i] != target) {
            return false;
        }
    }
    if (r.coeff == Coefficients::Z)
        for (const auto& v : *r.witness)
            if (v.get_den() != 1) return false;
    return true;
}

/// Class in C^d / im delta over Q, as coordinates on a fixed complement of
/// im delta. Descriptors from the same complex are directly comparable.
struct ClassDescriptor {
    std::vector<Rational> coords;

    bool is_zero() const
    {
        return std::all_of(coords.begin(), coords.end(), [](const Rational& v) { return sgn(v) == 0; });
    }
    std::size_t dimension() const { return coords.size(); }

    friend ClassDescriptor operator+(const ClassDescriptor& a, const ClassDescriptor& b)
    {
        if (a.coords.size() != b.coords.size()) throw InvalidInput("class descriptors from different groups");
        ClassDescriptor c = a;
        for (std::size_t i = 0; i < c.coords.size(); ++i) c.coords[i] += b.coords[i];
        return c;
    }
    friend bool operator==(const ClassDescriptor&, const ClassDescriptor&) = default;
};

/// Reduces top-degree cochains of K* (non-equivariant) modulo coboundaries.
/// All descriptors are computed in one elimination.
inline std::vector<ClassDescriptor> top_classes_rational(const ObstructionContext& ctx,
                                                         const std::vector<std::vector<Rational>>& cochains)
{
    const auto& P = ctx.product();
    const int top = ctx.top();
    std::vector<ClassDescriptor> out(cochains.size());
    if (P.count(top) == 0) return out;
    for (const auto& c : cochains)
        if (c.size() != P.count(top)) throw InvalidInput("cochain length does not match the top cells of K*");
    if (top == 0) {
        for (std::size_t k = 0; k < cochains.size(); ++k) out[k].coords = cochains[k];
        return out;
    }
    const SparseIntMatrix delta = P.boundary(top).transposed();
    SparseEliminator<RationalField> e(delta, cochains);
    for (std::size_t k = 0; k < cochains.size(); ++k) out[k].coords = e.residual(k);
    return out;
}

/// dim H^{2n}(K*; Q).
inline std::size_t top_betti_rational(const ObstructionContext& ctx)
{
    const auto& P = ctx.product();
    if (P.count(ctx.top()) == 0) return 0;
    return homology(P.chain_complex(), ctx.top(), Coefficients::Q).betti;
}

/// Image of the obstruction under forgetting the swap, in H^4(K*; Q).
inline ClassDescriptor vk_image_rational(const ObstructionContext& ctx, const ObstructionCochain& o)
{
    if (ctx.n() != 2) throw HypothesisViolation("vk_image_rational is defined for n = 2");
    std::vector<Rational> c(o.on_cells.begin(), o.on_cells.end());
    return top_classes_rational(ctx, {c}).front();
}

/// Rational bilinear form on H_2(K; Q) in a fixed cycle basis.
struct BilinearFormH2 {
    /// Primitive integral 2-cycles, one coefficient per triangle of K.
    std::vector<std::vector<Integer>> cycles;
    std::vector<std::vector<Rational>> matrix;

    std::size_t rank() const { return cycles.size(); }
};

/// Basis of Z_2(K; Q) = H_2(K; Q) for a complex of dimension <= 2, scaled to
/// primitive integer vectors. pivots[i] is a triangle where cycle i is the
/// only basis cycle with a nonzero coefficient.
struct CycleBasis {
    std::vector<std::vector<Integer>> cycles;
    std::vector<std::size_t> pivots;
};

inline CycleBasis h2_cycle_basis(const SimplicialComplex& K)
{
    if (K.dimension() > 2) throw HypothesisViolation("H_2 cycle basis expects dim K <= 2");
    CycleBasis b;
    if (K.dimension() < 2) return b;
    SparseEliminator<RationalField> e(boundary_matrix(K, 2));
    const auto basis = e.kernel_basis();
    b.pivots = e.kernel_columns();
    for (const auto& z : basis) {
        Integer l = 1;
        for (const auto& v : z) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), v.get_den_mpz_t());
        std::vector<Integer> zi(z.size());
        Integer g = 0;
        for (std::size_t k = 0; k < z.size(); ++k) {
            zi[k] = z[k].get_num() * (l / z[k].get_den());
            mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), zi[k].get_mpz_t());
        }
        for (auto& v : zi) v /= g;
        b.cycles.push_back(std::move(zi));
    }
    return b;
}

/// iota_f(a, b) = -(extension of o_f)(a x b): o_f on vertex-disjoint pairs,
/// `diagonal[t]` on t x t (the framing term, 0 when absent), 0 elsewhere.
inline BilinearFormH2 intersection_form_from_cochain(const ObstructionContext& ctx, const ObstructionCochain& o,
                                                     const std::map<std::size_t, Rational>& diagonal = {})
{
    if (ctx.n() != 2) throw HypothesisViolation("intersection forms are taken on H_2 (n = 2)");
    const auto& K = ctx.complex();
    const auto& P = ctx.product();
    const CycleBasis basis = h2_cycle_basis(K);
    BilinearFormH2 form;
    form.cycles = basis.cycles;
    const std::size_t t = K.count(2);
    const std::size_t b = basis.cycles.size();
    std::vector<std::vector<Rational>> ext(t, std::vector<Rational>(t));
    for (std::size_t i = 0; i < P.count(4); ++i) {
        const auto c = P.cell(4, i);
        ext[P.simplex_local(c[0])][P.simplex_local(c[1])] = o.on_cells[i];
    }
    for (const auto& [s, v] : diagonal) {
        if (s >= t) throw InvalidInput("framing value for a nonexistent triangle");
        ext[s][s] = v;
    }
    // -Z^T ext Z
    std::vector<std::vector<Rational>> ez(t, std::vector<Rational>(b));
    for (std::size_t s = 0; s < t; ++s)
        for (std::size_t u = 0; u < t; ++u) {
            if (sgn(ext[s][u]) == 0) continue;
            for (std::size_t j = 0; j < b; ++j)
                if (sgn(basis.cycles[j][u]) != 0) ez[s][j] += ext[s][u] * basis.cycles[j][u];
        }
    form.matrix.assign(b, std::vector<Rational>(b));
    for (std::size_t i = 0; i < b; ++i)
        for (std::size_t s = 0; s < t; ++s) {
            if (sgn(basis.cycles[i][s]) == 0) continue;
            for (std::size_t j = 0; j < b; ++j) form.matrix[i][j] -= basis.cycles[i][s] * ez[s][j];
        }
    return form;
}

/// Restriction to K* of the product cocycle sum_ij B_ij phi_i x phi_j, where
/// phi_i is dual to the cycle basis (phi_i(z_j) = delta_ij).
inline std::vector<Rational> pairing_cochain(const ObstructionContext& ctx, const BilinearFormH2& form)
{
    const auto& K = ctx.complex();
    const auto& P = ctx.product();
    const CycleBasis basis = h2_cycle_basis(K);
    const std::size_t b = basis.cycles.size();
    if (form.matrix.size() != b) throw InvalidInput("form size does not match b_2(K)");
    for (const auto& row : form.matrix)
        if (row.size() != b) throw InvalidInput("form matrix is not square");
    // phi_i = e_{pivot_i} / z_i[pivot_i]; the form is transported to this basis
    // when the caller's cycles differ from the canonical ones.
    std::vector<std::vector<Rational>> B = form.matrix;
    if (!form.cycles.empty() && form.cycles != basis.cycles) {
        if (form.cycles.size() != b) throw InvalidInput("form cycles do not form a basis of H_2");
        // express canonical cycles in the caller's basis: canonical_j = sum_k M_kj form_k
        std::vector<std::vector<Rational>> M(b, std::vector<Rational>(b));
        for (std::size_t k = 0; k < b; ++k)
            for (std::size_t j = 0; j < b; ++j)
                M[k][j] = Rational(form.cycles[k][basis.pivots[j]]) / Rational(basis.cycles[j][basis.pivots[j]]);
        std::vector<std::vector<Rational>> A = M, inv(b, std::vector<Rational>(b));
        for (std::size_t i = 0; i < b; ++i) inv[i][i] = 1;
        for (std::size_t c = 0; c < b; ++c) {
            std::size_t p = c;
            while (p < b && sgn(A[p][c]) == 0) ++p;
            if (p == b) throw InvalidInput("form cycles are linearly dependent");
            std::swap(A[p], A[c]);
            std::swap(inv[p], inv[c]);
            const Rational piv = A[c][c];
            for (std::size_t j = 0; j < b; ++j) {
                A[c][j] /= piv;
                inv[c][j] /= piv;
            }
            for (std::size_t r = 0; r < b; ++r) {
                if (r == c || sgn(A[r][c]) == 0) continue;
                const Rational f = A[r][c];
                for (std::size_t j = 0; j < b; ++j) {
                    A[r][j] -= f * A[c][j];
                    inv[r][j] -= f * inv[c][j];
                }
            }
        }
        // form_k = sum_j M[k][j] canonical_j, so canonical_j = sum_k inv[j][k] form_k
        std::vector<std::vector<Rational>> Bc(b, std::vector<Rational>(b));
        for (std::size_t i = 0; i < b; ++i)
            for (std::size_t j = 0; j < b; ++j)
                for (std::size_t k = 0; k < b; ++k) {
                    if (sgn(inv[i][k]) == 0) continue;
                    for (std::size_t l = 0; l < b; ++l)
                        if (sgn(inv[j][l]) != 0) Bc[i][j] += inv[i][k] * inv[j][l] * form.matrix[k][l];
                }
        B = std::move(Bc);
    }
    std::vector<std::int64_t> which(K.count(2), -1);
    for (std::size_t i = 0; i < b; ++i) which[basis.pivots[i]] = static_cast<std::int64_t>(i);
    std::vector<Rational> phi(P.count(4));
    for (std::size_t c = 0; c < P.count(4); ++c) {
        const auto cell = P.cell(4, c);
        const auto i = which[P.simplex_local(cell[0])];
        const auto j = which[P.simplex_local(cell[1])];
        if (i < 0 || j < 0) continue;
        phi[c] = B[i][j] / (Rational(basis.cycles[i][basis.pivots[i]]) * Rational(basis.cycles[j][basis.pivots[j]]));
    }
    return phi;
}

inline ClassDescriptor pairing_pullback(const ObstructionContext& ctx, const BilinearFormH2& form)
{
    if (ctx.n() != 2) throw HypothesisViolation("pairing_pullback is defined for n = 2");
    return top_classes_rational(ctx, {pairing_cochain(ctx, form)}).front();
}

struct TrivialPairingResult {
    bool exists_with_zero_form = false;
    std::string statement;
    ObstructionReport report;
};

/// A thickening with trivial intersection pairing is available exactly when
/// the integral obstruction vanishes.
inline TrivialPairingResult trivial_pairing_witness(const SimplicialComplex& K, std::uint64_t seed)
{
    ObstructionContext ctx(K, 2);
    TrivialPairingResult out;
    out.report = vk_class(ctx, Coefficients::Z, generic_map(K, 2, seed));
    out.exists_with_zero_form = out.report.zero;
    out.statement = out.report.zero
                        ? "o(K) = 0 in H^4_Z2(K*; Z): a 4-dimensional thickening with zero intersection form exists"
                        : "o(K) != 0 (" + out.report.certificate + "): no thickening with zero intersection form";
    return out;
}

} // namespace obstrukt
