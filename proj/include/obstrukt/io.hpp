#pragma once

// JSON formats for complexes, spatial graph embeddings and reports.
//
// Complex file:
//   {"name": "...", "simplices": [["v1","v2","v3"], ...],
//    "loops": {"x": ["a","b","c","a"]},            optional edge loops
//    "cycles": {"relator": [[1, ["a","b","c"]]]}}  optional oriented 2-chains
// Vertex labels may be strings or integers. Simplices are face-closed.
//
// Embedding file:
//   {"graph": "K6" | {"vertices": [...], "edges": [["v1","v2"], ...]},
//    "coords": {"v1": [x, y, z], ...}}
//
// Reports use insertion-ordered objects so that output is byte-stable.

#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "obstrukt/complex.hpp"
#include "obstrukt/linalg/homology.hpp"
#include "obstrukt/links.hpp"
#include "obstrukt/magnus.hpp"
#include "obstrukt/massey.hpp"
#include "obstrukt/seeds.hpp"
#include "obstrukt/vk.hpp"

namespace obstrukt {

using Json = nlohmann::ordered_json;

/// A complex together with the named loops and 2-chains stored alongside it.
struct ComplexFile {
    SimplicialComplex complex;
    std::map<std::string, EdgeLoop> loops;
    std::map<std::string, Chain<Integer>> cycles;
};

namespace detail {

inline std::string label_of(const Json& v)
{
    if (v.is_string()) return v.get<std::string>();
    if (v.is_number_integer()) return std::to_string(v.get<long long>());
    throw InvalidInput("vertex labels must be strings or integers");
}

inline std::vector<std::string> labels_of(const Json& arr, const std::string& what)
{
    if (!arr.is_array()) throw InvalidInput(what + " must be an array of vertex labels");
    std::vector<std::string> out;
    for (const auto& v : arr) out.push_back(label_of(v));
    return out;
}

inline Json parse_json_text(const std::string& text, const std::string& source)
{
    try {
        return Json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw InvalidInput(source + ": malformed JSON (" + e.what() + ")");
    }
}

inline Json rational_json(const Rational& q) { return q.get_str(); }

inline Json integer_json(const Integer& v)
{
    if (v.fits_slong_p()) return v.get_si();
    return v.get_str();
}

} // namespace detail

inline std::string read_file(const std::string& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in) throw InvalidInput("cannot open '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

/// 16 hex digits of FNV-1a over the bytes.
inline std::string digest(std::string_view bytes)
{
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(fnv1a(bytes)));
    return buf;
}

inline ComplexFile complex_from_json(const Json& j)
{
    if (!j.is_object()) throw InvalidInput("complex file must be a JSON object");
    if (!j.contains("simplices")) throw InvalidInput("complex file needs a \"simplices\" array");
    const auto& s = j.at("simplices");
    if (!s.is_array()) throw InvalidInput("\"simplices\" must be an array");
    std::vector<std::vector<VertexId>> maximal;
    for (const auto& simplex : s) {
        auto labels = detail::labels_of(simplex, "each simplex");
        if (labels.empty()) throw InvalidInput("empty simplex in \"simplices\"");
        maximal.push_back(std::move(labels));
    }
    std::string name;
    if (j.contains("name")) {
        if (!j.at("name").is_string()) throw InvalidInput("\"name\" must be a string");
        name = j.at("name").get<std::string>();
    }
    ComplexFile f;
    f.complex = build_complex(maximal, name);
    if (j.contains("loops")) {
        if (!j.at("loops").is_object()) throw InvalidInput("\"loops\" must be an object");
        for (const auto& [key, v] : j.at("loops").items()) {
            EdgeLoop loop{detail::labels_of(v, "loop " + key)};
            validate_loop(f.complex, loop);
            f.loops.emplace(key, std::move(loop));
        }
    }
    if (j.contains("cycles")) {
        if (!j.at("cycles").is_object()) throw InvalidInput("\"cycles\" must be an object");
        for (const auto& [key, v] : j.at("cycles").items()) {
            if (!v.is_array()) throw InvalidInput("cycle " + key + " must be a list of [coefficient, simplex]");
            Chain<Integer> c;
            c.dim = -1;
            for (const auto& term : v) {
                if (!term.is_array() || term.size() != 2 || !term[0].is_number_integer())
                    throw InvalidInput("cycle " + key + ": each term is [integer, [vertices]]");
                std::vector<int> idx;
                for (const auto& l : detail::labels_of(term[1], "cycle simplex")) {
                    auto i = f.complex.vertex_index(l);
                    if (!i) throw InvalidInput("cycle " + key + ": unknown vertex '" + l + "'");
                    idx.push_back(*i);
                }
                const int d = static_cast<int>(idx.size()) - 1;
                if (c.dim == -1) c.dim = d;
                if (d != c.dim) throw InvalidInput("cycle " + key + " mixes dimensions");
                const auto [s_idx, sign] = oriented_simplex(f.complex, idx);
                c.add(s_idx, Integer(static_cast<long>(sign * term[0].get<long long>())));
            }
            if (c.dim >= 1 && !boundary(f.complex, c).is_zero()) throw InvalidInput("cycle " + key + " has nonzero boundary");
            f.cycles.emplace(key, std::move(c));
        }
    }
    return f;
}

inline ComplexFile parse_complex(const std::string& text, const std::string& source = "input")
{
    return complex_from_json(detail::parse_json_text(text, source));
}

inline ComplexFile load_complex(const std::string& path) { return parse_complex(read_file(path), path); }

inline Json chain_to_json(const SimplicialComplex& K, const Chain<Integer>& c)
{
    Json out = Json::array();
    for (const auto& [i, v] : c.coefficients)
        out.push_back(Json::array({detail::integer_json(v), K.names_of(K.simplex(c.dim, i))}));
    return out;
}

inline Json complex_to_json(const SimplicialComplex& K, const std::map<std::string, EdgeLoop>& loops = {},
                            const std::map<std::string, Chain<Integer>>& cycles = {})
{
    Json j;
    j["name"] = K.name();
    j["simplices"] = K.maximal_simplices();
    if (!loops.empty()) {
        Json l = Json::object();
        for (const auto& [k, v] : loops) l[k] = v.vertices;
        j["loops"] = l;
    }
    if (!cycles.empty()) {
        Json c = Json::object();
        for (const auto& [k, v] : cycles) c[k] = chain_to_json(K, v);
        j["cycles"] = c;
    }
    return j;
}

/// "K<m>" or an explicit vertex/edge object.
inline Graph graph_from_json(const Json& g)
{
    if (g.is_string()) {
        const auto s = g.get<std::string>();
        if (s.size() >= 2 && s[0] == 'K' && s.find_first_not_of("0123456789", 1) == std::string::npos && s.size() <= 4)
            return Graph::complete(std::stoi(s.substr(1)));
        throw InvalidInput("unknown graph name '" + s + "' (expected K<m> or an object)");
    }
    if (!g.is_object() || !g.contains("vertices") || !g.contains("edges"))
        throw InvalidInput("graph must be \"K<m>\" or {\"vertices\": [...], \"edges\": [...]}");
    Graph out;
    out.vertices = detail::labels_of(g.at("vertices"), "graph vertices");
    for (std::size_t i = 0; i < out.vertices.size(); ++i)
        for (std::size_t j = i + 1; j < out.vertices.size(); ++j)
            if (out.vertices[i] == out.vertices[j]) throw InvalidInput("duplicate graph vertex " + out.vertices[i]);
    if (!g.at("edges").is_array()) throw InvalidInput("graph edges must be an array");
    for (const auto& e : g.at("edges")) {
        const auto ends = detail::labels_of(e, "edge");
        if (ends.size() != 2) throw InvalidInput("an edge has two endpoints");
        auto a = out.index_of(ends[0]), b = out.index_of(ends[1]);
        if (!a || !b) throw InvalidInput("edge uses an unknown vertex");
        if (*a == *b) throw InvalidInput("loop edges are not allowed");
        if (out.has_edge(*a, *b)) throw InvalidInput("duplicate edge");
        out.edges.emplace_back(std::min(*a, *b), std::max(*a, *b));
    }
    return out;
}

inline GraphEmbedding embedding_from_json(const Json& j)
{
    if (!j.is_object() || !j.contains("graph") || !j.contains("coords"))
        throw InvalidInput("embedding file needs \"graph\" and \"coords\"");
    GraphEmbedding e;
    e.graph = graph_from_json(j.at("graph"));
    const auto& c = j.at("coords");
    if (!c.is_object()) throw InvalidInput("\"coords\" must map vertex labels to [x, y, z]");
    for (const auto& v : e.graph.vertices) {
        if (!c.contains(v)) throw InvalidInput("no coordinates for vertex " + v);
        const auto& p = c.at(v);
        if (!p.is_array() || p.size() != 3) throw InvalidInput("coordinates of " + v + " must be [x, y, z]");
        Point3 q{};
        for (int k = 0; k < 3; ++k) {
            if (!p[k].is_number_integer()) throw InvalidInput("coordinates of " + v + " must be integers");
            q[k] = p[k].get<long long>();
            if (q[k] > 1'000'000'000LL || q[k] < -1'000'000'000LL) throw InvalidInput("coordinate out of range");
        }
        e.coords.push_back(q);
    }
    if (c.size() != e.graph.vertices.size()) throw InvalidInput("coordinates given for unknown vertices");
    return e;
}

inline GraphEmbedding load_embedding(const std::string& path)
{
    return embedding_from_json(detail::parse_json_text(read_file(path), path));
}

inline Json embedding_to_json(const GraphEmbedding& e)
{
    Json j;
    if (is_complete_graph_on(e.graph, static_cast<int>(e.graph.vertices.size())) && e.graph.vertices.size() >= 1) {
        bool standard = true;
        for (std::size_t i = 0; i < e.graph.vertices.size(); ++i)
            if (e.graph.vertices[i] != "v" + std::to_string(i + 1)) standard = false;
        if (standard) j["graph"] = "K" + std::to_string(e.graph.vertices.size());
    }
    if (!j.contains("graph")) {
        Json edges = Json::array();
        for (const auto& [a, b] : e.graph.edges) edges.push_back({e.graph.vertices[a], e.graph.vertices[b]});
        j["graph"] = Json{{"vertices", e.graph.vertices}, {"edges", edges}};
    }
    Json coords = Json::object();
    for (std::size_t i = 0; i < e.coords.size(); ++i) coords[e.graph.vertices[i]] = e.coords[i];
    j["coords"] = coords;
    return j;
}

// report fragments

inline Json to_json(const HomologyGroup& h)
{
    Json t = Json::array();
    for (const auto& v : h.torsion) t.push_back(detail::integer_json(v));
    return Json{{"betti", h.betti}, {"torsion", t}};
}

inline Json to_json(const ObstructionReport& r, bool witness_verified)
{
    Json j;
    j["verdict"] = r.zero ? "zero" : "nonzero";
    j["coefficients"] = std::string(to_string(r.coeff));
    j["certificate"] = r.certificate;
    j["top_cells"] = r.top_cells;
    j["top_orbits"] = r.top_orbits;
    std::size_t support = 0;
    for (const auto& v : r.cochain.on_orbits)
        if (sgn(v) != 0) ++support;
    j["cochain_support"] = support;
    j["map"] = Json{{"seed", r.map.seed}, {"attempts", r.map.attempts}};
    if (r.witness) {
        std::size_t ws = 0;
        for (const auto& v : *r.witness)
            if (sgn(v) != 0) ++ws;
        j["witness"] = Json{{"support", ws}, {"verified", witness_verified}};
    }
    return j;
}

inline Json to_json(const LcsClass& c) { return Json{{"class", c.str()}, {"exact", c.exact}, {"m", c.m}}; }

inline Json to_json(const MagnusSeries& s)
{
    Json terms = Json::object();
    for (int d = 0; d <= s.degree(); ++d)
        for (std::size_t i = 0; i < s.count(d); ++i)
            if (sgn(s.at(d, i)) != 0)
                terms[d == 0 ? std::string("1") : MagnusSeries::monomial_name(s.monomial(d, i))] =
                    detail::integer_json(s.at(d, i));
    return Json{{"degree", s.degree()}, {"series", s.str()}, {"terms", terms}};
}

inline Json to_json(const ObstructionCertificate& c)
{
    return Json{{"word", c.word.str()},
                {"m", c.m},
                {"level", c.level},
                {"monomial", MagnusSeries::monomial_name(c.monomial)},
                {"coefficient", detail::integer_json(c.coefficient)},
                {"statement", c.statement}};
}

inline Json to_json(const MasseyReport& r)
{
    Json j;
    j["order"] = r.inputs.size();
    j["status"] = r.status();
    if (!r.defined) {
        std::size_t support = 0;
        for (const auto& v : r.obstruction->values())
            if (sgn(v) != 0) ++support;
        j["obstruction_support"] = support;
        return j;
    }
    std::size_t support = 0;
    for (const auto& v : r.representative.values())
        if (sgn(v) != 0) ++support;
    j["representative_support"] = support;
    j["indeterminacy_generators"] = r.indeterminacy.size();
    if (r.value) {
        j["value"] = detail::rational_json(*r.value);
        Json iv = Json::array();
        for (const auto& v : r.indeterminacy_values) iv.push_back(detail::rational_json(v));
        j["indeterminacy_values"] = iv;
    }
    return j;
}

} // namespace obstrukt
