#include <gtest/gtest.h>

#include "obstrukt/magnus.hpp"
#include "obstrukt/seeds.hpp"
#include "obstrukt/testing/oracles.hpp"

using namespace obstrukt;

namespace {

Word random_word(RandomStream& rng, int length, int generators = 2)
{
    std::vector<Word::Letter> l;
    for (int i = 0; i < length; ++i) {
        const auto g = static_cast<Word::Letter>(rng.uniform(1, generators));
        l.push_back(rng.uniform(0, 1) ? g : static_cast<Word::Letter>(-g));
    }
    return Word(l);
}

void expect_matches_oracle(const Word& w, int D)
{
    const auto s = expand(w, D);
    auto oracle = oracles::magnus_bruteforce(w, D);
    for (int d = 0; d <= D; ++d)
        for (std::size_t i = 0; i < s.count(d); ++i) {
            const std::string name = d == 0 ? "" : MagnusSeries::monomial_name(s.monomial(d, i));
            const long long expected = oracle.count(name) ? oracle.at(name) : 0;
            EXPECT_EQ(s.at(d, i), Integer(static_cast<long>(expected))) << w.str() << " " << name;
        }
}

} // namespace

TEST(Word, ParsingAndReduction)
{
    EXPECT_EQ(parse_word("[x,y]").str(), "xyXY");
    EXPECT_EQ(parse_word("x X").str(), "1");
    EXPECT_EQ(parse_word("[[x,y],y]").str(), "xyXyxYXY");
    EXPECT_EQ(parse_word("1").length(), 0u);
    EXPECT_EQ(commutator(parse_word("x"), parse_word("y")), parse_word("xyXY"));
    EXPECT_EQ(inverse(parse_word("xy")).str(), "YX");
    EXPECT_TRUE(concat(parse_word("x"), parse_word("X")).empty());
    EXPECT_FALSE(parse_word("xyX").cyclically_reduced());
    EXPECT_TRUE(parse_word("[x,y]").cyclically_reduced());
    for (const char* bad : {"[x,y", "q", "[x y]", "x]", "[,]"}) EXPECT_THROW(parse_word(bad), InvalidInput) << bad;
}

TEST(Magnus, SmallExpansions)
{
    EXPECT_EQ(expand(parse_word("x"), 3).str(), "1 + X");
    EXPECT_EQ(expand(parse_word("[x,y]"), 2).str(), "1 + XY - YX");
    EXPECT_TRUE(expand(parse_word("xX"), 5).is_one());
    EXPECT_EQ(expand(parse_word("X"), 3).str(), "1 - X + XX - XXX");
    EXPECT_THROW(expand(parse_word("x"), 0), InvalidInput);
}

TEST(Magnus, DegreeThreeCommutator)
{
    const auto s = expand(parse_word("[[x,y],y]"), 3);
    EXPECT_EQ(s.coefficient({0, 1, 1}), 1);
    EXPECT_EQ(s.coefficient({1, 0, 1}), -2);
    EXPECT_EQ(s.coefficient({1, 1, 0}), 1);
    for (std::size_t i = 0; i < s.count(2); ++i) EXPECT_EQ(s.at(2, i), 0);
}

TEST(Magnus, MatchesBruteForceOracle)
{
    RandomStream rng = SeedRegistry(3).stream("words");
    for (int k = 0; k < 40; ++k) expect_matches_oracle(random_word(rng, 1 + static_cast<int>(rng.index(12))), 5);
    expect_matches_oracle(parse_word("[[x,y],[x,[x,y]]]"), 6);
}

TEST(Magnus, Multiplicative)
{
    RandomStream rng = SeedRegistry(4).stream("words");
    for (int k = 0; k < 30; ++k) {
        const Word u = random_word(rng, 6), v = random_word(rng, 6);
        EXPECT_EQ(expand(u * v, 5), expand(u, 5) * expand(v, 5));
        EXPECT_TRUE((expand(u, 5) * expand(u.inverse(), 5)).is_one());
    }
}

TEST(Magnus, ClassIsConjugationInvariant)
{
    RandomStream rng = SeedRegistry(5).stream("words");
    for (const char* w : {"[x,y]", "[[x,y],y]", "[x,[x,y]]", "[[[x,y],y],y]"}) {
        const Word a = parse_word(w);
        for (int k = 0; k < 5; ++k) {
            const Word g = random_word(rng, 5);
            EXPECT_EQ(lcs_class(g * a * g.inverse(), 6).m, lcs_class(a, 6).m) << w;
        }
    }
}

TEST(Magnus, CommutatorsRaiseTheClass)
{
    RandomStream rng = SeedRegistry(6).stream("words");
    for (int k = 0; k < 30; ++k) {
        const Word u = random_word(rng, 4), v = random_word(rng, 4);
        const Word c = commutator(u, v);
        if (u.empty() || v.empty() || c.empty()) continue;
        const auto cu = lcs_class(u, 7), cv = lcs_class(v, 7), cc = lcs_class(c, 7);
        EXPECT_GE(cc.m, std::min(cu.m + cv.m, 8)) << u.str() << " " << v.str();
    }
}

TEST(Magnus, LowerCentralSeriesClass)
{
    EXPECT_EQ(lcs_class(parse_word("x")).m, 1);
    EXPECT_EQ(lcs_class(parse_word("[x,y]")).m, 2);
    EXPECT_EQ(lcs_class(parse_word("[[x,y],y]")).m, 3);
    EXPECT_EQ(lcs_class(parse_word("[[[x,y],y],x]")).m, 4);
    const auto deep = lcs_class(parse_word("[[[x,y],y],x]"), 3);
    EXPECT_FALSE(deep.exact);
    EXPECT_EQ(deep.str(), ">= 4");
    EXPECT_THROW(lcs_class(Word()), InvalidInput);
    RandomStream rng = SeedRegistry(7).stream("words");
    for (int k = 0; k < 40; ++k) {
        const Word w = random_word(rng, 10);
        if (w.empty()) continue;
        const auto oracle = oracles::lcs_bruteforce(w, 6);
        const auto c = lcs_class(w, 6);
        EXPECT_EQ(c.exact, oracle.has_value());
        if (oracle) {
            EXPECT_EQ(c.m, *oracle);
        }
    }
}

TEST(Magnus, MuCoefficients)
{
    EXPECT_EQ(mu_coefficient(parse_word("[x,y]"), {0, 1}), 1);
    EXPECT_EQ(mu_coefficient(parse_word("[x,y]"), {0, 0}), 0);
    EXPECT_EQ(mu_coefficient(parse_word("xx"), {0}), 2);
}

TEST(Certificate, LevelsThreeAndFour)
{
    const auto c3 = higher_obstruction_certificate(parse_word("[x,y]"));
    EXPECT_EQ(c3.m, 2);
    EXPECT_EQ(c3.level, 3);
    EXPECT_EQ(c3.monomial, (std::vector<int>{0, 1}));
    EXPECT_EQ(c3.coefficient, 1);
    const auto c4 = higher_obstruction_certificate(parse_word("[[x,y],y]"));
    EXPECT_EQ(c4.level, 4);
    EXPECT_NE(c4.coefficient, 0);
    EXPECT_EQ(expand(c4.word, 3).coefficient(c4.monomial), c4.coefficient);
    EXPECT_THROW(higher_obstruction_certificate(parse_word("x")), HypothesisViolation);
    EXPECT_THROW(higher_obstruction_certificate(parse_word("[[[x,y],y],x]"), 3), InvalidInput);
}
