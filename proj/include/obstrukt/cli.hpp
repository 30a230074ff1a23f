#pragma once

// Command-line front end. Every command except `gen` prints a JSON run
// report: command echo, input digests, seed registry, result, and timings
// when --timings is given. Without --timings the output is byte-stable.
//
// Exit codes: 0 success or zero class, 1 nonzero class or failed suite,
// 2 invalid input, 3 degeneracy budget exhausted, 4 internal error.

#include <chrono>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "obstrukt/generators.hpp"
#include "obstrukt/io.hpp"
#include "obstrukt/testing/acceptance.hpp"

namespace obstrukt::cli {

enum ExitCode : int { kOk = 0, kNonzero = 1, kInvalid = 2, kDegenerate = 3, kInternal = 4 };

struct RunContext {
    std::vector<std::string> argv;
    std::optional<std::uint64_t> seed_flag;
    bool timings = false;
    std::string output;

    std::uint64_t seed() const { return SeedRegistry::from_environment(seed_flag).base(); }
};

class Report {
public:
    Report(const RunContext& ctx, const std::string& command) : ctx_(ctx)
    {
        j_["command"] = ctx.argv;
        j_["subcommand"] = command;
        j_["inputs"] = Json::object();
    }

    void input(const std::string& path, const std::string& bytes) { j_["inputs"][path] = digest(bytes); }

    void seeds(std::uint64_t base, const std::vector<std::string>& streams)
    {
        const SeedRegistry reg(base);
        Json s = Json::object();
        for (const auto& n : streams) s[n] = std::to_string(reg.key(n));
        j_["seeds"] = Json{{"base", base}, {"streams", s}};
    }

    Json& result() { return j_["result"]; }

    template <class F>
    auto timed(const std::string& phase, F&& f)
    {
        const auto start = std::chrono::steady_clock::now();
        auto r = f();
        times_[phase] = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        return r;
    }

    void emit(std::ostream& out)
    {
        if (ctx_.timings) j_["timings"] = times_;
        write(ctx_, j_, out);
    }

    static void write(const RunContext& ctx, const Json& j, std::ostream& out)
    {
        const std::string text = j.dump(2) + "\n";
        if (ctx.output.empty() || ctx.output == "-") {
            out << text;
            return;
        }
        std::ofstream f(ctx.output, std::ios::binary);
        if (!f) throw InvalidInput("cannot write '" + ctx.output + "'");
        f << text;
    }

private:
    const RunContext& ctx_;
    Json j_;
    Json times_ = Json::object();
};

namespace detail {

inline std::vector<std::string> split(const std::string& s, char sep)
{
    std::vector<std::string> out;
    std::string cur;
    for (char c : s) {
        if (c == sep) {
            out.push_back(cur);
            cur.clear();
        } else if (c != ' ') {
            cur += c;
        }
    }
    out.push_back(cur);
    for (const auto& p : out)
        if (p.empty()) throw InvalidInput("empty item in list '" + s + "'");
    return out;
}

inline ComplexFile load_with_digest(Report& rep, const std::string& path)
{
    const auto bytes = read_file(path);
    rep.input(path, bytes);
    return parse_complex(bytes, path);
}

inline Json h_all(const SimplicialComplex& K, Coefficients c)
{
    Json h = Json::array();
    for (int d = 0; d <= K.dimension(); ++d) h.push_back(to_json(homology(K, d, c)));
    return h;
}

inline Json vk_result(const SimplicialComplex& K, int n, Coefficients coeff, std::uint64_t seed, Report& rep, int& code)
{
    ObstructionContext ctx(K, n);
    const auto f = rep.timed("generic_map", [&] { return generic_map(K, n, seed); });
    const auto r = rep.timed("vk_class", [&] { return vk_class(ctx, coeff, f); });
    const bool verified = r.witness && verify_witness(ctx, r);
    if (r.zero && !verified) throw InternalError("coboundary witness failed re-substitution");
    code = r.zero ? kOk : kNonzero;
    Json j = to_json(r, verified);
    j["complex"] = Json{{"name", K.name()}, {"f_vector", K.f_vector()}};
    j["n"] = n;
    return j;
}

} // namespace detail

inline int cmd_gen(const RunContext& ctx, std::ostream& out, const std::string& family, int n, int k, int m, int p, int q,
                   const std::string& word)
{
    std::map<std::string, EdgeLoop> loops;
    std::map<std::string, Chain<Integer>> cycles;
    SimplicialComplex K;
    if (family == "skeleton") {
        K = skeleton_of_simplex(n, k);
    } else if (family == "C") {
        K = complex_C();
    } else if (family == "Cbar") {
        K = complex_Cbar();
        loops = {{"gamma", gamma_loop(false)}, {"gamma_prime", gamma_loop(true)}};
    } else if (family == "kalpha") {
        const Word w = parse_word(word);
        auto A = k_alpha_detailed(w);
        K = A.complex;
        loops = {{"alpha", word_loop(w)}};
        cycles = {{"disk", A.disk}};
    } else if (family == "one-relator") {
        auto X = one_relator(parse_word(word));
        K = X.complex();
        loops = {{"x", X.x_loop}, {"y", X.y_loop}};
        cycles = {{"relator", X.attached.disk}};
    } else if (family == "complete") {
        K = complete_graph(m);
    } else if (family == "bipartite") {
        K = complete_bipartite(p, q);
    } else if (family == "cycle") {
        K = cycle_graph(m);
    } else {
        throw InvalidInput("unknown family '" + family + "'");
    }
    // a disk whose relator is not null-homologous is no cycle; the loader would reject it
    std::erase_if(cycles, [&](const auto& c) { return !boundary(K, c.second).is_zero(); });
    Report::write(ctx, complex_to_json(K, loops, cycles), out);
    return kOk;
}

inline int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err)
{
    RunContext ctx;
    for (int i = 0; i < argc; ++i) ctx.argv.emplace_back(argv[i]);
    if (!ctx.argv.empty()) ctx.argv.front() = "obstrukt";

    CLI::App app{"Embedding obstructions for simplicial complexes", "obstrukt"};
    app.require_subcommand(1);
    app.fallthrough();
    std::uint64_t seed_value = 0;
    auto* seed_opt = app.add_option("--seed", seed_value, "base seed (overrides OBSTRUKT_SEED)");
    app.add_flag("--timings", ctx.timings, "add wall-clock timings to the report");
    app.add_option("-o,--output", ctx.output, "write JSON here instead of stdout");

    // gen
    auto* gen = app.add_subcommand("gen", "write a complex from a built-in family");
    std::string family, word;
    int gn = 6, gk = 2, gm = 5, gp = 3, gq = 3;
    gen->add_option("family", family, "skeleton | C | Cbar | kalpha | one-relator | complete | bipartite | cycle")
        ->required();
    gen->add_option("--n", gn, "simplex dimension (skeleton)");
    gen->add_option("--k", gk, "skeleton dimension (skeleton)");
    gen->add_option("--m", gm, "vertex count (complete, cycle)");
    gen->add_option("--p", gp, "first part (bipartite)");
    gen->add_option("--q", gq, "second part (bipartite)");
    gen->add_option("--word", word, "word in x, y (kalpha, one-relator)");

    // homology
    auto* hom = app.add_subcommand("homology", "homology groups of a complex");
    std::string hom_file, hom_coeff = "z";
    hom->add_option("file", hom_file)->required();
    hom->add_option("--coeff", hom_coeff, "z | z2 | q");

    // vk check
    auto* vk = app.add_subcommand("vk", "Van Kampen obstruction");
    vk->require_subcommand(1);
    auto* vk_check = vk->add_subcommand("check", "decide whether the obstruction class vanishes");
    std::string vk_file, vk_coeff = "z";
    int vk_dim = -1;
    vk_check->add_option("file", vk_file)->required();
    vk_check->add_option("--dim", vk_dim, "n, target R^{2n} (default: dim K)");
    vk_check->add_option("--coeff", vk_coeff, "z | z2 | q");
    vk_check->add_option("--seed", seed_value, "base seed")->excludes(seed_opt);

    // kalpha
    auto* ka = app.add_subcommand("kalpha", "obstruction and higher certificate for K_word");
    std::string ka_word, ka_coeff = "z";
    ka->add_option("word", ka_word)->required();
    ka->add_option("--coeff", ka_coeff, "z | z2 | q");

    // magnus class
    auto* mag = app.add_subcommand("magnus", "Magnus expansion");
    mag->require_subcommand(1);
    auto* mag_class = mag->add_subcommand("class", "lower central series class of a word");
    std::string mag_word;
    int mag_degree = kDefaultMaxDegree;
    mag_class->add_option("word", mag_word)->required();
    mag_class->add_option("--max-degree", mag_degree, "truncation degree");

    // massey
    auto* ms = app.add_subcommand("massey", "Massey product of degree-1 classes");
    std::string ms_file, ms_classes, ms_cycle;
    int ms_order = 0;
    ms->add_option("file", ms_file)->required();
    ms->add_option("--classes", ms_classes, "loop names from the file, or indices into the H^1 basis")->required();
    ms->add_option("--order", ms_order, "number of classes");
    ms->add_option("--cycle", ms_cycle, "2-chain from the file to evaluate on");

    // links
    auto* ln = app.add_subcommand("links", "spatial graphs");
    ln->require_subcommand(1);
    auto* lk = ln->add_subcommand("lk", "linking number of two cycles of an embedded graph");
    std::string lk_file;
    std::vector<std::string> lk_cycles;
    lk->add_option("file", lk_file)->required();
    lk->add_option("--cycle", lk_cycles, "comma-separated vertex cycle")->required()->expected(2);
    auto* om = ln->add_subcommand("omega", "Conway-Gordon invariant of an embedded K6");
    std::string om_file;
    om->add_option("file", om_file)->required();

    // product (debugging aid)
    auto* pr = app.add_subcommand("product", "cell counts of the deleted product or configuration complex");
    std::string pr_file;
    int pr_m = 2;
    bool pr_boundaries = false;
    pr->add_option("file", pr_file)->required();
    pr->add_option("--m", pr_m, "number of factors; 2 is the deleted product");
    pr->add_flag("--boundaries", pr_boundaries, "also dump cells and sparse boundary matrices");

    // suite
    auto* su = app.add_subcommand("suite", "run the acceptance battery");
    std::string su_only, su_fault;
    su->add_option("--only", su_only, "comma-separated criterion names or numbers");
    su->add_option("--inject-fault", su_fault, "snf");

    try {
        std::vector<std::string> args(ctx.argv.rbegin(), ctx.argv.rend() - 1);
        app.parse(args);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kOk;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return kOk;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n";
        return kInvalid;
    }
    if (seed_opt->count() > 0 || vk_check->get_option("--seed")->count() > 0) ctx.seed_flag = seed_value;

    try {
        const std::uint64_t seed = ctx.seed();
        if (*gen) return cmd_gen(ctx, out, family, gn, gk, gm, gp, gq, word);

        if (*hom) {
            Report rep(ctx, "homology");
            const auto f = detail::load_with_digest(rep, hom_file);
            const auto c = parse_coefficients(hom_coeff);
            auto& r = rep.result();
            r["complex"] = Json{{"name", f.complex.name()}, {"f_vector", f.complex.f_vector()}};
            r["euler_characteristic"] = f.complex.euler_characteristic();
            r["coefficients"] = std::string(to_string(c));
            r["homology"] = rep.timed("homology", [&] { return detail::h_all(f.complex, c); });
            rep.emit(out);
            return kOk;
        }

        if (*vk_check) {
            Report rep(ctx, "vk check");
            const auto f = detail::load_with_digest(rep, vk_file);
            const int n = vk_dim >= 0 ? vk_dim : f.complex.dimension();
            rep.seeds(seed, {"generic_map"});
            int code = kOk;
            rep.result() = detail::vk_result(f.complex, n, parse_coefficients(vk_coeff), seed, rep, code);
            rep.emit(out);
            return code;
        }

        if (*ka) {
            Report rep(ctx, "kalpha");
            const Word w = parse_word(ka_word);
            // the certificate checks the hypothesis on the word before the expensive part
            const auto cert = rep.timed("certificate", [&] { return higher_obstruction_certificate(w); });
            const auto K = k_alpha(w);
            rep.seeds(seed, {"generic_map"});
            int code = kOk;
            auto& r = rep.result();
            r["word"] = w.str();
            r["vk"] = detail::vk_result(K, 2, parse_coefficients(ka_coeff), seed, rep, code);
            r["certificate"] = to_json(cert);
            r["embeds_in_R4"] = false;
            rep.emit(out);
            return code;
        }

        if (*mag_class) {
            Report rep(ctx, "magnus class");
            const Word w = parse_word(mag_word);
            if (mag_degree < 1 || mag_degree > 16) throw InvalidInput("--max-degree must be in [1, 16]");
            auto& r = rep.result();
            r["word"] = w.str();
            const auto c = lcs_class(w, mag_degree);
            r["lcs"] = to_json(c);
            r["expansion"] = to_json(expand(w, mag_degree));
            if (c.exact && c.m >= 2) r["certificate"] = to_json(higher_obstruction_certificate(w, mag_degree));
            rep.emit(out);
            return kOk;
        }

        if (*ms) {
            Report rep(ctx, "massey");
            const auto f = detail::load_with_digest(rep, ms_file);
            const auto& K = f.complex;
            const auto names = detail::split(ms_classes, ',');
            if (ms_order != 0 && ms_order != static_cast<int>(names.size()))
                throw InvalidInput("--order " + std::to_string(ms_order) + " but " + std::to_string(names.size()) +
                                   " classes given");
            std::vector<std::string> loop_names;
            for (const auto& s : names)
                if (f.loops.count(s) && std::find(loop_names.begin(), loop_names.end(), s) == loop_names.end())
                    loop_names.push_back(s);
            std::vector<EdgeLoop> loops;
            for (const auto& s : loop_names) loops.push_back(f.loops.at(s));
            const auto duals = loops.empty() ? std::vector<OrderedCochain>{} : cocycle_dual_to_loops(K, loops);
            std::optional<std::vector<OrderedCochain>> basis;
            std::vector<OrderedCochain> alphas;
            for (const auto& s : names) {
                const auto it = std::find(loop_names.begin(), loop_names.end(), s);
                if (it != loop_names.end()) {
                    alphas.push_back(duals[static_cast<std::size_t>(it - loop_names.begin())]);
                    continue;
                }
                if (s.find_first_not_of("0123456789") != std::string::npos)
                    throw InvalidInput("class '" + s + "' is neither a loop in the file nor an H^1 basis index");
                if (!basis) basis = h1_basis(K);
                const std::size_t i = std::stoul(s);
                if (i >= basis->size())
                    throw InvalidInput("H^1 basis has " + std::to_string(basis->size()) + " elements, index " + s);
                alphas.push_back((*basis)[i]);
            }
            std::optional<Chain<Integer>> cycle;
            std::string cycle_name = ms_cycle;
            if (cycle_name.empty() && f.cycles.size() == 1) cycle_name = f.cycles.begin()->first;
            if (!cycle_name.empty()) {
                if (!f.cycles.count(cycle_name)) throw InvalidInput("no cycle named '" + cycle_name + "'");
                cycle = f.cycles.at(cycle_name);
                if (cycle->dim != 2) throw InvalidInput("cycle '" + cycle_name + "' is not a 2-chain");
            }
            const auto m = rep.timed("massey", [&] { return massey_product(K, alphas, cycle); });
            auto& r = rep.result();
            r["classes"] = names;
            if (cycle) r["cycle"] = cycle_name;
            r["massey"] = to_json(m);
            rep.emit(out);
            return kOk;
        }

        if (*lk || *om) {
            const std::string& path = *lk ? lk_file : om_file;
            Report rep(ctx, *lk ? "links lk" : "links omega");
            const auto bytes = read_file(path);
            rep.input(path, bytes);
            const auto e = embedding_from_json(obstrukt::detail::parse_json_text(bytes, path));
            if (auto why = e.violation()) throw InvalidInput("invalid embedding: " + *why);
            auto& r = rep.result();
            if (*lk) {
                std::vector<PolygonalCycle> cs;
                Json echo = Json::array();
                for (const auto& text : lk_cycles) {
                    std::vector<int> idx;
                    for (const auto& v : detail::split(text, ',')) {
                        const auto i = e.graph.index_of(v);
                        if (!i) throw InvalidInput("unknown vertex '" + v + "'");
                        idx.push_back(*i);
                    }
                    cs.push_back(e.cycle(idx));
                    echo.push_back(text);
                }
                r["cycles"] = echo;
                r["linking_number"] = linking_number(cs[0], cs[1]);
            } else {
                Json pairs = Json::array();
                for (const auto& [s, t] : disjoint_triangle_pairs(e.graph)) {
                    const auto name = [&](const std::array<int, 3>& tri) {
                        return e.graph.vertices[tri[0]] + "," + e.graph.vertices[tri[1]] + "," + e.graph.vertices[tri[2]];
                    };
                    const long long v =
                        linking_number(e.cycle({s[0], s[1], s[2]}), e.cycle({t[0], t[1], t[2]}));
                    pairs.push_back(Json{{"a", name(s)}, {"b", name(t)}, {"lk", v}});
                }
                r["omega"] = conway_gordon_omega(e);
                r["pairs"] = pairs;
            }
            rep.emit(out);
            return kOk;
        }

        if (*pr) {
            Report rep(ctx, "product");
            const auto f = detail::load_with_digest(rep, pr_file);
            if (pr_m < 2 || pr_m > 6) throw InvalidInput("--m must be in [2, 6]");
            std::unique_ptr<ProductComplex> P;
            if (pr_m == 2)
                P = std::make_unique<DeletedProduct>(f.complex);
            else
                P = std::make_unique<ConfigurationComplex>(f.complex, pr_m);
            auto& r = rep.result();
            r["factors"] = pr_m;
            Json counts = Json::array();
            for (int d = 0; d <= P->top_degree(); ++d) counts.push_back(P->count(d));
            r["cell_counts"] = counts;
            if (pr_m == 2) {
                // construction checks that the swap acts freely
                const EquivariantCochainComplex E(static_cast<const DeletedProduct&>(*P), 2);
                Json orbits = Json::array();
                for (int d = 0; d <= P->top_degree(); ++d) orbits.push_back(E.representatives(d).size());
                r["swap_orbits"] = orbits;
            }
            if (pr_boundaries) {
                Json cells = Json::array(), bd = Json::array();
                for (int d = 0; d <= P->top_degree(); ++d) {
                    Json cd = Json::array();
                    for (std::size_t i = 0; i < P->count(d); ++i) cd.push_back(P->describe(d, i));
                    cells.push_back(cd);
                    Json entries = Json::array();
                    if (d >= 1) {
                        const auto& B = P->boundary(d);
                        for (std::size_t i = 0; i < B.rows(); ++i)
                            for (const auto& [c, v] : B.row(i)) entries.push_back(Json::array({i, c, v}));
                    }
                    bd.push_back(entries);
                }
                r["cells"] = cells;
                r["boundaries"] = bd;
            }
            rep.emit(out);
            return kOk;
        }

        if (*su) {
            Report rep(ctx, "suite");
            acceptance::Options opt;
            opt.seed = seed;
            if (!su_only.empty())
                for (const auto& s : detail::split(su_only, ',')) opt.only.insert(s);
            opt.fault = su_fault;
            rep.seeds(seed, {"generic_map", "embedding", "acceptance-snf"});
            Json results = Json::array();
            bool all = true;
            acceptance::run(opt, [&](const acceptance::Result& a) {
                err << a.line() << "\n";
                Json j{{"id", a.criterion.id}, {"name", a.criterion.name}, {"pass", a.pass}, {"detail", a.detail}};
                if (ctx.timings) j["seconds"] = a.seconds;
                results.push_back(j);
                all = all && a.pass;
            });
            rep.result() = Json{{"passed", all}, {"criteria", results}};
            if (!su_fault.empty()) rep.result()["injected_fault"] = su_fault;
            rep.emit(out);
            return all ? kOk : kNonzero;
        }
    } catch (const DegenerateInput& e) {
        err << "degenerate: " << e.what() << "\n";
        return kDegenerate;
    } catch (const InvalidInput& e) {
        err << "invalid input: " << e.what() << "\n";
        return kInvalid;
    } catch (const std::exception& e) {
        err << "internal error: " << e.what() << "\n";
        return kInternal;
    }
    return kInvalid;
}

} // namespace obstrukt::cli
