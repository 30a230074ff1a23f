#pragma once

// Acceptance battery: ten criteria with pinned runtime limits. Shared by the
// `suite` command and the standalone acceptance binary.

#include <chrono>
#include <functional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "obstrukt/generators.hpp"
#include "obstrukt/linalg/smith.hpp"
#include "obstrukt/links.hpp"
#include "obstrukt/magnus.hpp"
#include "obstrukt/massey.hpp"
#include "obstrukt/testing/oracles.hpp"
#include "obstrukt/vk.hpp"

namespace obstrukt::acceptance {

struct Criterion {
    int id;
    std::string name;
    double limit_seconds;
};

inline const std::vector<Criterion>& criteria()
{
    static const std::vector<Criterion> all{
        {1, "vk-positive", 10},    {2, "vk-negative", 30},      {3, "graphs", 8},
        {4, "kalpha-vk", 600},     {5, "certificates", 1},      {6, "pairing-identity", 180},
        {7, "links", 30},          {8, "massey", 30},           {9, "seed-invariance", 120},
        {10, "infrastructure", 60}};
    return all;
}

struct Options {
    /// Criterion names or numbers; empty runs everything.
    std::set<std::string> only;
    /// "snf" corrupts one Smith decomposition before it is verified.
    std::string fault;
    std::uint64_t seed = kDefaultSeed;
};

struct Result {
    Criterion criterion;
    bool pass = false;
    double seconds = 0;
    std::string detail;

    std::string line() const
    {
        std::ostringstream s;
        s.setf(std::ios::fixed);
        s.precision(2);
        s << (pass ? "PASS" : "FAIL") << "  " << criterion.id << " " << criterion.name << "  " << seconds << "s (limit "
          << criterion.limit_seconds << "s)  " << detail;
        return s.str();
    }
};

namespace detail {

struct Outcome {
    bool pass = true;
    std::ostringstream detail;

    void require(bool ok, const std::string& what)
    {
        if (!ok) {
            pass = false;
            detail << "FAILED " << what << "; ";
        }
    }
};

inline void vk_positive(Outcome& o, const Options& opt)
{
    const auto K = skeleton_of_simplex(6, 2);
    ObstructionContext ctx(K, 2);
    const auto f = generic_map(K, 2, opt.seed);
    const auto z2 = vk_class(ctx, Coefficients::Z2, f);
    const auto z = vk_class(ctx, Coefficients::Z, f);
    o.require(!z2.zero, "nonzero over Z/2");
    o.require(!z.zero, "nonzero over Z");
    o.detail << "6-simplex 2-skeleton: Z/2 " << (z2.zero ? "zero" : "nonzero") << ", Z " << (z.zero ? "zero" : "nonzero")
             << " (" << z.certificate << ")";
}

inline void vk_negative(Outcome& o, const Options& opt)
{
    const auto K = complex_Cbar();
    ObstructionContext ctx(K, 2);
    const auto r = vk_class(ctx, Coefficients::Z, generic_map(K, 2, opt.seed));
    o.require(r.zero, "C-bar class zero over Z");
    o.require(r.witness.has_value() && verify_witness(ctx, r), "witness re-substitution");
    o.detail << "C-bar: " << (r.zero ? "zero" : "nonzero") << " over Z, witness "
             << (r.witness && verify_witness(ctx, r) ? "verified" : "missing");
}

inline void graphs(Outcome& o, const Options& opt)
{
    const std::vector<std::pair<SimplicialComplex, bool>> cases{
        {complete_graph(5), false}, {complete_bipartite(3, 3), false}, {complete_graph(4), true}, {cycle_graph(4), true}};
    for (const auto& [K, expect_zero] : cases) {
        const auto start = std::chrono::steady_clock::now();
        ObstructionContext ctx(K, 1);
        const auto f = generic_map(K, 1, opt.seed);
        const auto z = vk_class(ctx, Coefficients::Z, f);
        const auto z2 = vk_class(ctx, Coefficients::Z2, f);
        const double t = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        o.require(z.zero == expect_zero && z2.zero == expect_zero, K.name() + " verdict");
        if (expect_zero) o.require(z.witness && verify_witness(ctx, z), K.name() + " witness");
        o.require(t < 2.0, K.name() + " within 2 s");
        o.detail << K.name() << " " << (z.zero ? "zero" : "nonzero") << "; ";
    }
}

inline void kalpha_vk(Outcome& o, const Options& opt)
{
    for (const char* w : {"[x,y]", "[[x,y],y]"}) {
        const auto start = std::chrono::steady_clock::now();
        const auto K = k_alpha(parse_word(w));
        ObstructionContext ctx(K, 2);
        const auto r = vk_class(ctx, Coefficients::Z, generic_map(K, 2, opt.seed));
        const double t = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        o.require(r.zero, std::string("K_") + w + " zero");
        o.require(r.witness && verify_witness(ctx, r), std::string("K_") + w + " witness");
        o.require(t < 300.0, std::string("K_") + w + " within 5 min");
        o.detail << "K_" << w << " (" << ctx.top_orbits() << " orbits) " << (r.zero ? "zero" : "nonzero") << "; ";
    }
}

inline void certificates(Outcome& o, const Options&)
{
    const std::vector<std::pair<const char*, int>> cases{{"[x,y]", 3}, {"[[x,y],y]", 4}};
    for (const auto& [w, level] : cases) {
        const Word a = parse_word(w);
        const auto c = higher_obstruction_certificate(a);
        o.require(c.level == level, std::string(w) + " level");
        const auto oracle = oracles::lcs_bruteforce(a, kDefaultMaxDegree);
        o.require(oracle && *oracle == lcs_class(a).m, std::string(w) + " lcs class against oracle");
        const auto poly = oracles::magnus_bruteforce(a, c.m);
        const auto it = poly.find(MagnusSeries::monomial_name(c.monomial));
        o.require(it != poly.end() && Integer(static_cast<long>(it->second)) == c.coefficient,
                  std::string(w) + " witnessing coefficient against oracle");
        o.detail << w << " -> level " << c.level << " via " << MagnusSeries::monomial_name(c.monomial) << "="
                 << c.coefficient.get_str() << "; ";
    }
}

inline void pairing_identity(Outcome& o, const Options& opt)
{
    for (const auto& K : {complex_Cbar(), k_alpha(parse_word("[x,y]")), skeleton_of_simplex(6, 2)}) {
        const auto start = std::chrono::steady_clock::now();
        ObstructionContext ctx(K, 2);
        const auto ob = vk_cochain(ctx, generic_map(K, 2, opt.seed));
        const auto form = intersection_form_from_cochain(ctx, ob);
        const auto sum = pairing_pullback(ctx, form) + vk_image_rational(ctx, ob);
        const double t = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        o.require(sum.is_zero(), K.name() + " pullback + image = 0");
        o.require(t < 60.0, K.name() + " within 1 min");
        o.detail << K.name() << " (b2=" << form.rank() << ") ok; ";
    }
}

inline void links(Outcome& o, const Options& opt)
{
    int ones = 0;
    for (std::uint64_t s = 0; s < 200; ++s)
        if (conway_gordon_omega(random_embedding(Graph::complete(6), opt.seed + s)) == 1) ++ones;
    o.require(ones == 200, "omega = 1 for every embedding");
    o.detail << ones << "/200 random K6 embeddings have omega = 1";
}

inline void massey(Outcome& o, const Options&)
{
    const std::vector<std::pair<const char*, int>> cases{{"[x,y]", 2}, {"[[x,y],y]", 3}, {"[x,[x,y]]", 3}};
    for (const auto& [rel, m] : cases) {
        const auto X = one_relator(parse_word(rel));
        const auto& K = X.complex();
        const auto duals = cocycle_dual_to_loops(K, {X.x_loop, X.y_loop});
        // every product of lower order must vanish in cohomology
        for (int lower = 2; lower < m; ++lower)
            for (unsigned mask = 0; mask < (1u << lower); ++mask) {
                std::vector<OrderedCochain> a;
                for (int j = 0; j < lower; ++j) a.push_back(duals[(mask >> (lower - 1 - j)) & 1u]);
                const auto r = massey_product(K, a, X.attached.disk);
                o.require(r.defined && coboundary_preimage(K, r.representative).has_value(),
                          std::string(rel) + " lower-order product vanishes");
            }
        bool any_nonzero = false;
        for (unsigned mask = 0; mask < (1u << m); ++mask) {
            std::vector<int> idx;
            std::vector<OrderedCochain> a;
            for (int j = 0; j < m; ++j) {
                idx.push_back(static_cast<int>((mask >> (m - 1 - j)) & 1u));
                a.push_back(duals[idx.back()]);
            }
            const auto r = massey_product(K, a, X.attached.disk);
            const Integer mu = mu_coefficient(X.relator, idx);
            // fixed convention: <a_1..a_m>[D] = (-1)^m mu(i_1..i_m)
            o.require(r.defined && r.value && *r.value == Rational((m % 2 == 0 ? 1 : -1) * mu),
                      std::string(rel) + " monomial " + MagnusSeries::monomial_name(idx));
            for (const auto& v : r.indeterminacy_values) o.require(sgn(v) == 0, std::string(rel) + " indeterminacy");
            if (sgn(mu) != 0) any_nonzero = true;
        }
        o.require(any_nonzero, std::string(rel) + " has a nonzero product");
        o.detail << rel << " order " << m << " ok; ";
    }
    o.detail << "sign rule (-1)^m";
}

inline void seed_invariance(Outcome& o, const Options&)
{
    const std::vector<std::pair<SimplicialComplex, int>> cases{{complete_graph(5), 1},
                                                               {complete_bipartite(3, 3), 1},
                                                               {complex_Cbar(), 2},
                                                               {skeleton_of_simplex(6, 2), 2}};
    for (const auto& [K, n] : cases) {
        ObstructionContext ctx(K, n);
        std::vector<ObstructionCochain> os;
        for (std::uint64_t s = 1; s <= 5; ++s) os.push_back(vk_cochain(ctx, generic_map(K, n, s)));
        std::vector<std::vector<Integer>> diffs;
        for (std::size_t a = 0; a < os.size(); ++a)
            for (std::size_t b = a + 1; b < os.size(); ++b) {
                std::vector<Integer> d(os[a].on_orbits.size());
                for (std::size_t i = 0; i < d.size(); ++i) d[i] = os[a].on_orbits[i] - os[b].on_orbits[i];
                diffs.push_back(std::move(d));
            }
        const auto w = coboundary_witnesses<IntegerRing>(ctx.equivariant().complex(), ctx.top(), diffs);
        std::size_t ok = 0;
        for (const auto& x : w)
            if (x) ++ok;
        o.require(ok == diffs.size(), K.name() + " differences are coboundaries");
        o.detail << K.name() << " " << ok << "/" << diffs.size() << "; ";
    }
}

inline void infrastructure(Outcome& o, const Options& opt)
{
    RandomStream rng = SeedRegistry(opt.seed).stream("acceptance-snf");
    int good = 0;
    for (int k = 0; k < 1000; ++k) {
        const std::size_t r = 1 + rng.index(40), c = 1 + rng.index(40);
        IntMatrix A(r, c);
        // mix dense and sparse matrices, so that ranks and torsion vary
        const bool sparse = rng.uniform(0, 1) == 1;
        for (std::size_t i = 0; i < r; ++i)
            for (std::size_t j = 0; j < c; ++j)
                if (!sparse || rng.uniform(0, 4) == 0) A(i, j) = static_cast<long>(rng.uniform(-50, 50));
        auto s = smith_normal_form(A);
        if (k == 0 && opt.fault == "snf") s.D(0, 0) += 1;
        if (verify_snf(A, s)) ++good;
    }
    o.require(good == 1000, "U A V = D on every matrix");
    o.detail << good << "/1000 Smith forms verified; ";
    int skeleta = 0, matched = 0;
    for (int n = 1; n <= 7; ++n)
        for (int k = 0; k <= n; ++k) {
            const auto K = skeleton_of_simplex(n, k);
            std::size_t expected = 1;
            for (int i = 1; i <= k + 1; ++i) expected = expected * static_cast<std::size_t>(n - (k + 1) + i) / static_cast<std::size_t>(i);
            const auto h = homology(K, k, Coefficients::Z);
            // the binomial counts reduced homology
            const std::size_t reduced = k == 0 ? h.betti - 1 : h.betti;
            ++skeleta;
            if (reduced == expected && h.torsion.empty()) ++matched;
        }
    o.require(matched == skeleta, "skeleton homology");
    o.detail << matched << "/" << skeleta << " skeleta have reduced H_k of rank C(n,k+1)";
}

inline void dispatch(int id, Outcome& o, const Options& opt)
{
    switch (id) {
    case 1: return vk_positive(o, opt);
    case 2: return vk_negative(o, opt);
    case 3: return graphs(o, opt);
    case 4: return kalpha_vk(o, opt);
    case 5: return certificates(o, opt);
    case 6: return pairing_identity(o, opt);
    case 7: return links(o, opt);
    case 8: return massey(o, opt);
    case 9: return seed_invariance(o, opt);
    case 10: return infrastructure(o, opt);
    }
    throw InvalidInput("unknown criterion");
}

} // namespace detail

inline bool selected(const Criterion& c, const Options& opt)
{
    return opt.only.empty() || opt.only.count(c.name) || opt.only.count(std::to_string(c.id));
}

inline std::vector<Result> run(const Options& opt, const std::function<void(const Result&)>& on_result = {})
{
    for (const auto& name : opt.only) {
        bool known = false;
        for (const auto& c : criteria())
            if (c.name == name || std::to_string(c.id) == name) known = true;
        if (!known) throw InvalidInput("unknown acceptance criterion '" + name + "'");
    }
    if (!opt.fault.empty() && opt.fault != "snf") throw InvalidInput("unknown fault '" + opt.fault + "' (expected snf)");
    std::vector<Result> out;
    for (const auto& c : criteria()) {
        if (!selected(c, opt)) continue;
        Result r{c, false, 0, ""};
        detail::Outcome o;
        const auto start = std::chrono::steady_clock::now();
        try {
            detail::dispatch(c.id, o, opt);
        } catch (const std::exception& e) {
            o.pass = false;
            o.detail << "exception: " << e.what();
        }
        r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        r.detail = o.detail.str();
        while (!r.detail.empty() && (r.detail.back() == ' ' || r.detail.back() == ';')) r.detail.pop_back();
        r.pass = o.pass && r.seconds < c.limit_seconds;
        if (o.pass && !r.pass) r.detail += " (over the time limit)";
        out.push_back(r);
        if (on_result) on_result(r);
    }
    return out;
}

} // namespace obstrukt::acceptance
