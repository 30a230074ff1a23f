#pragma once

// Named complexes: simplex skeleta, complete (bipartite) graphs, the complexes
// C, C-bar and K_alpha, and one-relator presentation complexes.

#include <string>
#include <vector>

#include "obstrukt/complex.hpp"
#include "obstrukt/word.hpp"

namespace obstrukt {

/// All (k+1)-subsets of the vertices v1 .. v{n+1}.
inline SimplicialComplex skeleton_of_simplex(int n, int k)
{
    if (n < 0 || k < 0 || k > n) throw InvalidInput("skeleton_of_simplex needs 0 <= k <= n");
    if (n > 24) throw InvalidInput("skeleton_of_simplex: n too large");
    std::vector<std::vector<VertexId>> maximal;
    std::vector<int> pick(k + 1);
    auto rec = [&](auto&& self, int pos, int start) -> void {
        if (pos == k + 1) {
            std::vector<VertexId> s;
            for (int v : pick) s.push_back("v" + std::to_string(v + 1));
            maximal.push_back(std::move(s));
            return;
        }
        for (int v = start; v <= n; ++v) {
            pick[pos] = v;
            self(self, pos + 1, v + 1);
        }
    };
    rec(rec, 0, 0);
    return build_complex(maximal, "skeleton(" + std::to_string(n) + "," + std::to_string(k) + ")");
}

/// 2-skeleton of the 6-simplex without the triangle v1 v2 v3 (its edges stay).
inline SimplicialComplex complex_C()
{
    const auto full = skeleton_of_simplex(6, 2);
    std::vector<std::vector<VertexId>> maximal;
    for (const auto& s : full.maximal_simplices())
        if (s != std::vector<VertexId>{"v1", "v2", "v3"}) maximal.push_back(s);
    return build_complex(maximal, "C");
}

/// C wedged with a primed copy C' along v7 = v7'. C' has vertices v1' .. v6'.
inline SimplicialComplex complex_Cbar()
{
    const auto C = complex_C();
    auto K = wedge(C, "v7", C, "v7");
    std::vector<std::vector<VertexId>> maximal = K.maximal_simplices();
    return build_complex(maximal, "Cbar");
}

/// The loop v7 v1 v2 v3 v1 v7 in C (primed vertices for the copy C').
inline EdgeLoop gamma_loop(bool primed = false)
{
    const std::string p = primed ? "'" : "";
    return EdgeLoop{{"v7", "v1" + p, "v2" + p, "v3" + p, "v1" + p, "v7"}};
}

/// Edge loop of a word in C-bar: x follows gamma, y follows gamma', inverse
/// letters traverse the loop backwards.
inline EdgeLoop word_loop(const Word& w)
{
    if (w.rank() > 2) throw InvalidInput("K_alpha words use only the generators x and y");
    EdgeLoop loop{{"v7"}};
    for (Word::Letter l : w.letters()) {
        auto g = gamma_loop(l == 2 || l == -2).vertices;
        if (l < 0) std::reverse(g.begin(), g.end());
        loop.vertices.insert(loop.vertices.end(), g.begin() + 1, g.end());
    }
    return loop;
}

/// C-bar with a disk attached along the loop of a cyclically reduced word.
inline AttachedDisk k_alpha_detailed(const Word& w)
{
    if (w.empty()) throw InvalidInput("k_alpha needs a nonempty word");
    if (!w.cyclically_reduced()) throw InvalidInput("k_alpha needs a cyclically reduced word, got " + w.str());
    auto A = attach_disk_detailed(complex_Cbar(), word_loop(w));
    std::vector<std::vector<VertexId>> maximal = A.complex.maximal_simplices();
    A.complex = build_complex(maximal, "K_" + w.str());
    return A;
}

inline SimplicialComplex k_alpha(const Word& w) { return k_alpha_detailed(w).complex; }

inline SimplicialComplex complete_graph(int m)
{
    if (m < 1) throw InvalidInput("complete_graph needs m >= 1");
    std::vector<std::vector<VertexId>> maximal;
    if (m == 1) maximal.push_back({"v1"});
    for (int i = 1; i <= m; ++i)
        for (int j = i + 1; j <= m; ++j) maximal.push_back({"v" + std::to_string(i), "v" + std::to_string(j)});
    return build_complex(maximal, "K" + std::to_string(m));
}

/// Parts a1 .. ap and b1 .. bq.
inline SimplicialComplex complete_bipartite(int p, int q)
{
    if (p < 1 || q < 1) throw InvalidInput("complete_bipartite needs p, q >= 1");
    std::vector<std::vector<VertexId>> maximal;
    for (int i = 1; i <= p; ++i)
        for (int j = 1; j <= q; ++j) maximal.push_back({"a" + std::to_string(i), "b" + std::to_string(j)});
    return build_complex(maximal, "K" + std::to_string(p) + "," + std::to_string(q));
}

inline SimplicialComplex cycle_graph(int m)
{
    if (m < 3) throw InvalidInput("cycle_graph needs m >= 3");
    std::vector<std::vector<VertexId>> maximal;
    for (int i = 1; i <= m; ++i) maximal.push_back({"v" + std::to_string(i), "v" + std::to_string(i % m + 1)});
    return build_complex(maximal, "C" + std::to_string(m));
}

/// Presentation complex of <x, y | r>: two triangle circles a b c and a d e
/// wedged at a, with a disk attached along the loop of r.
struct OneRelatorComplex {
    AttachedDisk attached;
    Word relator;
    EdgeLoop x_loop;
    EdgeLoop y_loop;

    const SimplicialComplex& complex() const { return attached.complex; }
};

inline OneRelatorComplex one_relator(const Word& r)
{
    if (r.empty()) throw InvalidInput("one_relator needs a nonempty relator");
    if (r.rank() > 2) throw InvalidInput("one_relator supports the generators x and y");
    OneRelatorComplex out;
    out.relator = r;
    out.x_loop = EdgeLoop{{"a", "b", "c", "a"}};
    out.y_loop = EdgeLoop{{"a", "d", "e", "a"}};
    const auto base = build_complex({{"a", "b"}, {"b", "c"}, {"a", "c"}, {"a", "d"}, {"d", "e"}, {"a", "e"}}, "S1vS1");
    EdgeLoop loop{{"a"}};
    for (Word::Letter l : r.letters()) {
        auto g = (l == 1 || l == -1) ? out.x_loop.vertices : out.y_loop.vertices;
        if (l < 0) std::reverse(g.begin(), g.end());
        loop.vertices.insert(loop.vertices.end(), g.begin() + 1, g.end());
    }
    out.attached = attach_disk_detailed(base, loop);
    return out;
}

} // namespace obstrukt
