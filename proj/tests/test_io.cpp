#include <gtest/gtest.h>

#include "obstrukt/generators.hpp"
#include "obstrukt/io.hpp"

using namespace obstrukt;

TEST(ComplexJson, RoundTrip)
{
    for (const auto& K : {skeleton_of_simplex(4, 2), complex_Cbar(), complete_bipartite(3, 3), k_alpha(parse_word("[x,y]"))}) {
        const auto text = complex_to_json(K).dump();
        const auto back = parse_complex(text).complex;
        EXPECT_EQ(back.f_vector(), K.f_vector()) << K.name();
        EXPECT_EQ(back.maximal_simplices(), K.maximal_simplices());
        EXPECT_EQ(back.name(), K.name());
        EXPECT_EQ(complex_to_json(back).dump(), text);
    }
}

TEST(ComplexJson, IntegerLabelsAndFaceClosure)
{
    const auto f = parse_complex(R"({"simplices": [[1, 2, 3], [3, 4]]})");
    EXPECT_EQ(f.complex.f_vector(), (std::vector<std::size_t>{4, 4, 1}));
    EXPECT_TRUE(f.complex.vertex_index("4").has_value());
}

TEST(ComplexJson, LoopsAndCycles)
{
    const auto X = one_relator(parse_word("[x,y]"));
    const std::map<std::string, EdgeLoop> loops{{"x", X.x_loop}, {"y", X.y_loop}};
    const std::map<std::string, Chain<Integer>> cycles{{"relator", X.attached.disk}};
    const auto f = parse_complex(complex_to_json(X.complex(), loops, cycles).dump());
    EXPECT_EQ(f.loops.at("x").vertices, X.x_loop.vertices);
    const auto& c = f.cycles.at("relator");
    EXPECT_EQ(c.dim, 2);
    EXPECT_EQ(c.coefficients, X.attached.disk.coefficients);
}

TEST(ComplexJson, RejectsBadInput)
{
    for (const char* bad : {
             "{",                                                         // malformed
             "[]",                                                        // not an object
             R"({"name": "x"})",                                          // no simplices
             R"({"simplices": [[]]})",                                    // empty simplex
             R"({"simplices": [[1.5, 2]]})",                              // bad label
             R"({"simplices": [[1, 2]], "loops": {"l": [1, 2, 3, 1]}})",  // loop leaves the complex
             R"({"simplices": [[1, 2, 3]], "cycles": {"z": [[1, [1, 2, 3]]]}})", // has a boundary
             R"({"simplices": [[1, 2, 3]], "cycles": {"z": [[1, [1, 9, 3]]]}})", // unknown vertex
         })
        EXPECT_THROW(parse_complex(bad), InvalidInput) << bad;
}

TEST(EmbeddingJson, RoundTripAndValidation)
{
    const auto e = random_embedding(Graph::complete(6), 3);
    const auto j = embedding_to_json(e);
    EXPECT_EQ(j.at("graph"), "K6");
    const auto back = embedding_from_json(j);
    EXPECT_EQ(back.coords, e.coords);
    EXPECT_EQ(back.graph.edges, e.graph.edges);

    const auto custom = embedding_from_json(Json::parse(
        R"({"graph": {"vertices": ["a", "b", "c"], "edges": [["a", "b"], ["b", "c"]]},
            "coords": {"a": [0, 0, 0], "b": [1, 0, 0], "c": [0, 1, 0]}})"));
    EXPECT_EQ(custom.graph.edges.size(), 2u);
    EXPECT_EQ(embedding_to_json(custom).at("graph").at("edges").size(), 2u);

    for (const char* bad : {
             R"({"graph": "K3"})",
             R"({"graph": "Q3", "coords": {}})",
             R"({"graph": "K2", "coords": {"v1": [0, 0, 0]}})",
             R"({"graph": "K2", "coords": {"v1": [0, 0, 0], "v2": [0, 0.5, 0]}})",
             R"({"graph": "K2", "coords": {"v1": [0, 0, 0], "v2": [0, 0]}})",
             R"({"graph": "K2", "coords": {"v1": [0, 0, 0], "v2": [1, 0, 0], "v3": [2, 0, 0]}})",
             R"({"graph": {"vertices": ["a", "a"], "edges": []}, "coords": {"a": [0, 0, 0]}})",
         })
        EXPECT_THROW(embedding_from_json(Json::parse(bad)), InvalidInput) << bad;
}

TEST(Reports, Deterministic)
{
    const auto K = complete_graph(5);
    ObstructionContext ctx(K, 1);
    const auto a = to_json(vk_class(ctx, Coefficients::Z, generic_map(K, 1, 4)), false).dump();
    const auto b = to_json(vk_class(ctx, Coefficients::Z, generic_map(K, 1, 4)), false).dump();
    EXPECT_EQ(a, b);
    EXPECT_EQ(digest("abc"), digest("abc"));
    EXPECT_NE(digest("abc"), digest("abd"));
    EXPECT_EQ(digest("").size(), 16u);
}

TEST(Reports, Fragments)
{
    EXPECT_EQ(to_json(HomologyGroup{2, {Integer(2)}}).dump(), R"({"betti":2,"torsion":[2]})");
    const auto m = to_json(expand(parse_word("[x,y]"), 2));
    EXPECT_EQ(m.at("terms").at("XY"), 1);
    EXPECT_EQ(m.at("terms").at("YX"), -1);
    EXPECT_EQ(to_json(lcs_class(parse_word("[x,y]"))).at("class"), "2");
    const auto c = to_json(higher_obstruction_certificate(parse_word("[[x,y],y]")));
    EXPECT_EQ(c.at("level"), 4);
}
