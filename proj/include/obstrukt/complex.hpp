#pragma once

// Finite abstract simplicial complexes with string vertex labels.
//
// Every simplex is stored with its vertices in the global (sorted label)
// order, and that order fixes its orientation. Boundary signs, cup products
// and product-cell orientations all derive from it.

#include <algorithm>
#include <cstdint>
#include <array>
#include <map>
#include <set>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "obstrukt/errors.hpp"
#include "obstrukt/linalg/homology.hpp"
#include "obstrukt/linalg/matrix.hpp"

namespace obstrukt {

using VertexId = std::string;

/// Vertex indices into the owning complex's sorted vertex list, strictly increasing.
struct Simplex {
    std::vector<int> vertices;

    int dim() const { return static_cast<int>(vertices.size()) - 1; }
    friend auto operator<=>(const Simplex&, const Simplex&) = default;
};

/// Formal sum of d-simplices, keyed by simplex index.
template <class T = Integer>
struct Chain {
    int dim = 0;
    std::map<std::size_t, T> coefficients;

    void add(std::size_t simplex, const T& v)
    {
        T& slot = coefficients[simplex];
        slot += v;
        if (slot == 0) coefficients.erase(simplex);
    }
    bool is_zero() const { return coefficients.empty(); }
    friend bool operator==(const Chain&, const Chain&) = default;
};

/// Closed edge path v_0 ... v_L with v_L = v_0.
struct EdgeLoop {
    std::vector<VertexId> vertices;

    std::size_t length() const { return vertices.empty() ? 0 : vertices.size() - 1; }
};

class SimplicialComplex {
public:
    SimplicialComplex() : data_(std::make_shared<Data>()) {}

    const std::string& name() const { return data_->name; }
    const std::vector<VertexId>& vertices() const { return data_->vertex_names; }
    std::size_t vertex_count() const { return data_->vertex_names.size(); }

    /// -1 for the empty complex.
    int dimension() const { return static_cast<int>(data_->simplices.size()) - 1; }

    std::size_t count(int d) const
    {
        return (d < 0 || d > dimension()) ? 0 : data_->simplices[d].size();
    }
    const std::vector<Simplex>& simplices(int d) const
    {
        if (d < 0 || d > dimension()) throw InvalidInput("no simplices of dimension " + std::to_string(d));
        return data_->simplices[d];
    }
    const Simplex& simplex(int d, std::size_t i) const { return simplices(d).at(i); }

    std::vector<std::size_t> f_vector() const
    {
        std::vector<std::size_t> f;
        for (const auto& level : data_->simplices) f.push_back(level.size());
        return f;
    }

    std::optional<int> vertex_index(std::string_view name) const
    {
        auto it = data_->vertex_index.find(std::string(name));
        if (it == data_->vertex_index.end()) return std::nullopt;
        return it->second;
    }
    const VertexId& vertex_name(int v) const { return data_->vertex_names.at(v); }

    /// Index of the simplex with exactly these (sorted) vertices.
    std::optional<std::size_t> index_of(std::span<const int> sorted_vertices) const
    {
        const int d = static_cast<int>(sorted_vertices.size()) - 1;
        if (d < 0 || d > dimension()) return std::nullopt;
        const auto& idx = data_->index[d];
        auto it = idx.find(std::vector<int>(sorted_vertices.begin(), sorted_vertices.end()));
        if (it == idx.end()) return std::nullopt;
        return it->second;
    }

    std::optional<std::size_t> index_of_names(const std::vector<VertexId>& names) const
    {
        std::vector<int> v;
        for (const auto& n : names) {
            auto i = vertex_index(n);
            if (!i) return std::nullopt;
            v.push_back(*i);
        }
        std::sort(v.begin(), v.end());
        if (std::adjacent_find(v.begin(), v.end()) != v.end()) return std::nullopt;
        return index_of(v);
    }

    /// Codimension-one faces of simplex (d, i); entry j omits vertex j and has sign (-1)^j.
    const std::vector<std::uint32_t>& faces(int d, std::size_t i) const { return data_->faces.at(d).at(i); }

    std::vector<std::string> names_of(const Simplex& s) const
    {
        std::vector<std::string> out;
        for (int v : s.vertices) out.push_back(data_->vertex_names[v]);
        return out;
    }

    /// Simplices not contained in a larger one, as label lists.
    std::vector<std::vector<VertexId>> maximal_simplices() const
    {
        std::vector<std::vector<VertexId>> out;
        const int top = dimension();
        for (int d = 0; d <= top; ++d) {
            std::vector<bool> covered(count(d), false);
            if (d < top)
                for (std::size_t j = 0; j < count(d + 1); ++j)
                    for (std::uint32_t f : faces(d + 1, j)) covered[f] = true;
            for (std::size_t i = 0; i < count(d); ++i)
                if (!covered[i]) out.push_back(names_of(simplices(d)[i]));
        }
        return out;
    }

    long long euler_characteristic() const
    {
        long long chi = 0;
        for (int d = 0; d <= dimension(); ++d) chi += (d % 2 == 0 ? 1 : -1) * static_cast<long long>(count(d));
        return chi;
    }

    /// Identity of the underlying immutable data; equal for copies.
    const void* identity() const { return data_.get(); }

    friend SimplicialComplex build_complex(const std::vector<std::vector<VertexId>>& maximal, std::string name);

private:
    struct Data {
        std::string name;
        std::vector<VertexId> vertex_names;
        std::unordered_map<std::string, int> vertex_index;
        std::vector<std::vector<Simplex>> simplices;
        std::vector<std::map<std::vector<int>, std::size_t>> index;
        std::vector<std::vector<std::vector<std::uint32_t>>> faces;
    };
    std::shared_ptr<const Data> data_;
};

/// Face closure of the given simplices. Vertex order is the sorted order of labels.
inline SimplicialComplex build_complex(const std::vector<std::vector<VertexId>>& maximal, std::string name = "")
{
    std::vector<VertexId> labels;
    for (const auto& s : maximal) {
        if (s.empty()) throw InvalidInput("empty simplex in complex description");
        std::vector<VertexId> sorted = s;
        std::sort(sorted.begin(), sorted.end());
        if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
            throw InvalidInput("duplicate vertex inside a simplex");
        if (s.size() > 24) throw InvalidInput("simplex too large for face enumeration");
        labels.insert(labels.end(), s.begin(), s.end());
    }
    std::sort(labels.begin(), labels.end());
    labels.erase(std::unique(labels.begin(), labels.end()), labels.end());

    auto data = std::make_shared<SimplicialComplex::Data>();
    data->name = std::move(name);
    data->vertex_names = labels;
    for (std::size_t i = 0; i < labels.size(); ++i) data->vertex_index.emplace(labels[i], static_cast<int>(i));

    std::vector<std::set<std::vector<int>>> levels;
    for (const auto& s : maximal) {
        std::vector<int> v;
        for (const auto& l : s) v.push_back(data->vertex_index.at(l));
        std::sort(v.begin(), v.end());
        const std::size_t k = v.size();
        if (levels.size() < k) levels.resize(k);
        for (std::uint32_t mask = 1; mask < (1u << k); ++mask) {
            std::vector<int> face;
            for (std::size_t b = 0; b < k; ++b)
                if (mask & (1u << b)) face.push_back(v[b]);
            levels[face.size() - 1].insert(std::move(face));
        }
    }
    data->simplices.resize(levels.size());
    data->index.resize(levels.size());
    data->faces.resize(levels.size());
    for (std::size_t d = 0; d < levels.size(); ++d) {
        for (const auto& verts : levels[d]) {
            data->index[d].emplace(verts, data->simplices[d].size());
            data->simplices[d].push_back(Simplex{verts});
        }
    }
    for (std::size_t d = 1; d < levels.size(); ++d) {
        data->faces[d].resize(data->simplices[d].size());
        for (std::size_t i = 0; i < data->simplices[d].size(); ++i) {
            const auto& verts = data->simplices[d][i].vertices;
            for (std::size_t j = 0; j < verts.size(); ++j) {
                std::vector<int> face = verts;
                face.erase(face.begin() + static_cast<std::ptrdiff_t>(j));
                data->faces[d][i].push_back(static_cast<std::uint32_t>(data->index[d - 1].at(face)));
            }
        }
    }
    SimplicialComplex K;
    K.data_ = std::move(data);
    return K;
}

/// Boundary operator C_d -> C_{d-1}: rows are (d-1)-simplices, columns d-simplices.
inline SparseIntMatrix boundary_matrix(const SimplicialComplex& K, int d)
{
    if (d < 1 || d > K.dimension())
        throw InvalidInput("boundary_matrix: dimension " + std::to_string(d) + " outside [1, dim K]");
    SparseIntMatrix B(K.count(d - 1), K.count(d));
    for (std::size_t i = 0; i < K.count(d); ++i) {
        const auto& f = K.faces(d, i);
        for (std::size_t j = 0; j < f.size(); ++j) B.add(f[j], i, (j % 2 == 0) ? 1 : -1);
    }
    B.finalize();
    return B;
}

inline ChainComplex chain_complex(const SimplicialComplex& K)
{
    ChainComplex cc;
    for (int d = 0; d <= K.dimension(); ++d) {
        cc.cells.push_back(K.count(d));
        cc.boundary.push_back(d == 0 ? SparseIntMatrix(0, K.count(0)) : boundary_matrix(K, d));
    }
    return cc;
}

inline HomologyGroup homology(const SimplicialComplex& K, int d, Coefficients coeff)
{
    if (d < 0 || d > K.dimension()) throw InvalidInput("homology degree out of range");
    return homology(chain_complex(K), d, coeff);
}

/// Simplex index and orientation sign of an ordered vertex tuple (permutation parity).
inline std::pair<std::size_t, int> oriented_simplex(const SimplicialComplex& K, std::vector<int> ordered)
{
    int sign = 1;
    for (std::size_t i = 0; i < ordered.size(); ++i)
        for (std::size_t j = i + 1; j < ordered.size(); ++j)
            if (ordered[i] > ordered[j]) sign = -sign;
            else if (ordered[i] == ordered[j]) throw InvalidInput("degenerate oriented simplex");
    std::sort(ordered.begin(), ordered.end());
    auto idx = K.index_of(ordered);
    if (!idx) throw InvalidInput("oriented simplex not present in the complex");
    return {*idx, sign};
}

template <class T>
Chain<T> boundary(const SimplicialComplex& K, const Chain<T>& c)
{
    Chain<T> out;
    out.dim = c.dim - 1;
    if (c.dim == 0) return out;
    for (const auto& [i, v] : c.coefficients) {
        const auto& f = K.faces(c.dim, i);
        for (std::size_t j = 0; j < f.size(); ++j) out.add(f[j], (j % 2 == 0) ? T(v) : T(-v));
    }
    return out;
}

/// Checks the EdgeLoop invariants against K and returns vertex indices v_0..v_L.
inline std::vector<int> validate_loop(const SimplicialComplex& K, const EdgeLoop& loop)
{
    const auto& vs = loop.vertices;
    if (vs.size() < 2 || vs.front() != vs.back()) throw InvalidInput("loop must be closed (v_L = v_0)");
    std::vector<int> idx;
    for (const auto& v : vs) {
        auto i = K.vertex_index(v);
        if (!i) throw InvalidInput("loop vertex '" + v + "' not in complex");
        idx.push_back(*i);
    }
    for (std::size_t i = 0; i + 1 < idx.size(); ++i) {
        if (idx[i] == idx[i + 1]) throw InvalidInput("loop has equal consecutive vertices at position " + std::to_string(i));
        std::vector<int> e{std::min(idx[i], idx[i + 1]), std::max(idx[i], idx[i + 1])};
        if (!K.index_of(e)) throw InvalidInput("loop step " + vs[i] + "-" + vs[i + 1] + " is not an edge");
    }
    return idx;
}

/// The 1-chain traversed by a loop.
inline Chain<Integer> loop_chain(const SimplicialComplex& K, const EdgeLoop& loop)
{
    const auto idx = validate_loop(K, loop);
    Chain<Integer> c;
    c.dim = 1;
    for (std::size_t i = 0; i + 1 < idx.size(); ++i) {
        auto [e, s] = oriented_simplex(K, {idx[i], idx[i + 1]});
        c.add(e, Integer(s));
    }
    return c;
}

namespace detail {

inline std::string fresh_prefix(const SimplicialComplex& K, const std::string& stem)
{
    for (int k = 0;; ++k) {
        const std::string p = stem + std::to_string(k) + ".";
        bool clash = std::any_of(K.vertices().begin(), K.vertices().end(),
                                 [&](const std::string& v) { return v.rfind(p, 0) == 0; });
        if (!clash) return p;
    }
}

} // namespace detail

/// Result of attaching a triangulated disk: the new complex, the disk's
/// oriented 2-chain (boundary = the loop's 1-chain) and the fresh labels.
struct AttachedDisk {
    SimplicialComplex complex;
    Chain<Integer> disk;
    std::vector<VertexId> ring;
    VertexId apex;
};

/// Glues a disk along an edge loop of length L >= 3 using a ring of L fresh
/// vertices and one apex. Triangles per step i (indices mod L):
/// (v_i, v_{i+1}, r_i), (v_{i+1}, r_i, r_{i+1}), (r_i, r_{i+1}, a).
/// Every new triangle contains a fresh ring vertex, so repeated loop edges
/// never produce coincident simplices.
inline AttachedDisk attach_disk_detailed(const SimplicialComplex& K, const EdgeLoop& loop)
{
    validate_loop(K, loop);
    const std::size_t L = loop.length();
    if (L < 3) throw InvalidInput("attach_disk needs a loop of length >= 3");
    const std::string prefix = detail::fresh_prefix(K, "disk");
    AttachedDisk out;
    for (std::size_t i = 0; i < L; ++i) out.ring.push_back(prefix + "r" + std::to_string(i));
    out.apex = prefix + "apex";

    auto maximal = K.maximal_simplices();
    // ordered triples, each listed with the disk orientation
    std::vector<std::array<VertexId, 3>> oriented;
    for (std::size_t i = 0; i < L; ++i) {
        const VertexId& v0 = loop.vertices[i];
        const VertexId& v1 = loop.vertices[i + 1];
        const VertexId& r0 = out.ring[i];
        const VertexId& r1 = out.ring[(i + 1) % L];
        oriented.push_back({v0, v1, r0});
        oriented.push_back({v1, r1, r0});
        oriented.push_back({r0, r1, out.apex});
    }
    for (const auto& t : oriented) maximal.push_back({t[0], t[1], t[2]});
    out.complex = build_complex(maximal, K.name().empty() ? "disk" : K.name() + "+disk");

    out.disk.dim = 2;
    for (const auto& t : oriented) {
        std::vector<int> idx;
        for (const auto& v : t) idx.push_back(*out.complex.vertex_index(v));
        auto [s, sign] = oriented_simplex(out.complex, idx);
        out.disk.add(s, Integer(sign));
    }
    return out;
}

inline SimplicialComplex attach_disk(const SimplicialComplex& K, const EdgeLoop& loop)
{
    return attach_disk_detailed(K, loop).complex;
}

/// Renaming applied to the second summand of a wedge.
inline std::map<VertexId, VertexId> wedge_renaming(const SimplicialComplex& K1, const VertexId& v1,
                                                   const SimplicialComplex& K2, const VertexId& v2)
{
    if (!K1.vertex_index(v1)) throw InvalidInput("wedge: vertex '" + v1 + "' not in first complex");
    if (!K2.vertex_index(v2)) throw InvalidInput("wedge: vertex '" + v2 + "' not in second complex");
    std::set<VertexId> taken(K1.vertices().begin(), K1.vertices().end());
    std::map<VertexId, VertexId> rename;
    for (const auto& v : K2.vertices()) {
        if (v == v2) {
            rename[v] = v1;
            continue;
        }
        VertexId n = v;
        while (taken.count(n)) n += "'";
        taken.insert(n);
        rename[v] = n;
    }
    return rename;
}

/// One-point union: v1 and v2 identified, every other vertex of K2 primed
/// until it no longer clashes with K1.
inline SimplicialComplex wedge(const SimplicialComplex& K1, const VertexId& v1, const SimplicialComplex& K2,
                               const VertexId& v2)
{
    const auto rename = wedge_renaming(K1, v1, K2, v2);
    auto maximal = K1.maximal_simplices();
    for (auto s : K2.maximal_simplices()) {
        for (auto& v : s) v = rename.at(v);
        maximal.push_back(std::move(s));
    }
    return build_complex(maximal, "wedge(" + K1.name() + "," + K2.name() + ")");
}

/// Stellar subdivision at the barycenter of one simplex.
inline SimplicialComplex stellar_subdivide(const SimplicialComplex& K, const std::vector<VertexId>& simplex)
{
    auto target = K.index_of_names(simplex);
    if (!target) throw InvalidInput("stellar_subdivide: simplex not in complex");
    const std::string center = detail::fresh_prefix(K, "star") + "c";
    std::vector<std::vector<VertexId>> maximal;
    const std::set<VertexId> sigma(simplex.begin(), simplex.end());
    for (const auto& rho : K.maximal_simplices()) {
        const std::set<VertexId> r(rho.begin(), rho.end());
        if (!std::includes(r.begin(), r.end(), sigma.begin(), sigma.end())) {
            maximal.push_back(rho);
            continue;
        }
        for (const auto& drop : sigma) {
            std::vector<VertexId> s;
            for (const auto& v : rho)
                if (v != drop) s.push_back(v);
            s.push_back(center);
            maximal.push_back(std::move(s));
        }
    }
    return build_complex(maximal, K.name() + "*");
}

} // namespace obstrukt
