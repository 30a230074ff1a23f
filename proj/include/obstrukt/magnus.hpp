#pragma once

// Truncated Magnus expansion of free-group words.
//
// x_g -> 1 + X_g and x_g^-1 -> 1 - X_g + X_g^2 - ... in the ring of
// noncommuting power series, truncated above degree D. A word lies in the
// m-th term of the lower central series, but not the next, exactly when m is
// the lowest positive degree with a nonzero coefficient.

#include <optional>
#include <string>
#include <vector>

#include "obstrukt/scalar.hpp"
#include "obstrukt/word.hpp"

namespace obstrukt {

inline constexpr int kDefaultMaxDegree = 8;

/// Power series in k noncommuting variables, truncated above degree D. Degree
/// d coefficients are stored densely; monomial X_{i1}...X_{id} sits at index
/// sum i_j k^{d-j} (first letter most significant).
class MagnusSeries {
public:
    MagnusSeries(int generators, int degree) : k_(generators), D_(degree), coeff_(degree + 1)
    {
        if (generators < 1) throw InvalidInput("Magnus series needs at least one variable");
        if (degree < 0) throw InvalidInput("negative truncation degree");
        std::size_t size = 1;
        for (int d = 0; d <= degree; ++d) {
            coeff_[d].assign(size, Integer(0));
            size *= static_cast<std::size_t>(generators);
        }
    }

    static MagnusSeries one(int generators, int degree)
    {
        MagnusSeries s(generators, degree);
        s.coeff_[0][0] = 1;
        return s;
    }

    int generators() const { return k_; }
    int degree() const { return D_; }

    const Integer& at(int d, std::size_t index) const { return coeff_.at(d).at(index); }
    Integer& at(int d, std::size_t index) { return coeff_.at(d).at(index); }
    std::size_t count(int d) const { return coeff_.at(d).size(); }

    /// Coefficient of X_{i1} ... X_{id}.
    Integer coefficient(const std::vector<int>& monomial) const
    {
        if (static_cast<int>(monomial.size()) > D_) throw InvalidInput("monomial longer than the truncation degree");
        std::size_t idx = 0;
        for (int g : monomial) {
            if (g < 0 || g >= k_) throw InvalidInput("monomial uses an unknown variable");
            idx = idx * static_cast<std::size_t>(k_) + static_cast<std::size_t>(g);
        }
        return coeff_[monomial.size()][idx];
    }

    std::vector<int> monomial(int d, std::size_t index) const
    {
        std::vector<int> m(d);
        for (int j = d - 1; j >= 0; --j) {
            m[j] = static_cast<int>(index % static_cast<std::size_t>(k_));
            index /= static_cast<std::size_t>(k_);
        }
        return m;
    }

    friend MagnusSeries operator*(const MagnusSeries& a, const MagnusSeries& b)
    {
        if (a.k_ != b.k_ || a.D_ != b.D_) throw InvalidInput("Magnus series of different shapes");
        MagnusSeries c(a.k_, a.D_);
        for (int da = 0; da <= a.D_; ++da)
            for (std::size_t ia = 0; ia < a.coeff_[da].size(); ++ia) {
                const Integer& x = a.coeff_[da][ia];
                if (sgn(x) == 0) continue;
                for (int db = 0; da + db <= a.D_; ++db) {
                    const std::size_t shift = b.coeff_[db].size();
                    for (std::size_t ib = 0; ib < shift; ++ib) {
                        const Integer& y = b.coeff_[db][ib];
                        if (sgn(y) != 0) c.coeff_[da + db][ia * shift + ib] += x * y;
                    }
                }
            }
        return c;
    }
    friend bool operator==(const MagnusSeries&, const MagnusSeries&) = default;

    bool is_one() const { return *this == one(k_, D_); }

    /// Nonzero terms as "c*XY" strings, lowest degree first.
    std::string str() const
    {
        std::string s;
        for (int d = 0; d <= D_; ++d)
            for (std::size_t i = 0; i < coeff_[d].size(); ++i) {
                const Integer& c = coeff_[d][i];
                if (sgn(c) == 0) continue;
                if (!s.empty()) s += sgn(c) > 0 ? " + " : " - ";
                else if (sgn(c) < 0) s += "-";
                const Integer a = abs(c);
                const std::string m = monomial_name(monomial(d, i));
                if (d == 0) s += a.get_str();
                else s += (a == 1 ? "" : a.get_str()) + m;
            }
        return s.empty() ? "0" : s;
    }

    static std::string monomial_name(const std::vector<int>& m)
    {
        std::string s;
        for (int g : m) s += static_cast<char>(std::toupper(static_cast<unsigned char>(kGeneratorLetters[g])));
        return s;
    }

private:
    int k_;
    int D_;
    std::vector<std::vector<Integer>> coeff_;
};

/// Expansion of a single letter.
inline MagnusSeries letter_series(Word::Letter l, int generators, int degree)
{
    MagnusSeries s = MagnusSeries::one(generators, degree);
    const int g = (l > 0 ? l : -l) - 1;
    if (g >= generators) throw InvalidInput("letter outside the generator range");
    // index of X_g^d is g * (k^{d-1} + ... + 1)
    std::size_t idx = 0;
    for (int d = 1; d <= degree; ++d) {
        idx = idx * static_cast<std::size_t>(generators) + static_cast<std::size_t>(g);
        if (l > 0) {
            if (d == 1) s.at(1, idx) = 1;
        } else {
            s.at(d, idx) = (d % 2 == 0) ? 1 : -1;
        }
    }
    return s;
}

inline MagnusSeries expand(const Word& w, int degree, int generators = 2)
{
    if (degree < 1) throw InvalidInput("expansion degree must be at least 1");
    generators = std::max(generators, w.rank());
    MagnusSeries s = MagnusSeries::one(generators, degree);
    for (Word::Letter l : w.letters()) s = s * letter_series(l, generators, degree);
    return s;
}

/// Position of a word in the lower central series, as far as degree Dmax can see.
struct LcsClass {
    int m = 0;             ///< first nonvanishing positive degree, when found
    bool exact = false;    ///< false: all degrees 1..Dmax vanish, so m >= Dmax + 1
    int lower_bound() const { return m; }
    std::string str() const { return exact ? std::to_string(m) : ">= " + std::to_string(m); }
};

inline LcsClass lcs_class(const Word& w, int max_degree = kDefaultMaxDegree)
{
    if (w.empty()) throw InvalidInput("lcs_class of the trivial word");
    const MagnusSeries s = expand(w, max_degree);
    for (int d = 1; d <= max_degree; ++d)
        for (std::size_t i = 0; i < s.count(d); ++i)
            if (sgn(s.at(d, i)) != 0) return {d, true};
    return {max_degree + 1, false};
}

inline Integer mu_coefficient(const Word& w, const std::vector<int>& multi_index)
{
    const int d = std::max<int>(1, static_cast<int>(multi_index.size()));
    return expand(w, d).coefficient(multi_index);
}

struct ObstructionCertificate {
    Word word;
    int m = 0;      ///< lower-central-series class of the word
    int level = 0;  ///< m + 1
    std::vector<int> monomial;
    Integer coefficient;
    std::string statement;
};

/// For a word in F^m \ F^{m+1} with m >= 2: the obstruction of level m+1 of
/// the complex K_word is defined and does not contain zero, so K_word does
/// not embed in R^4. The witness is the first monomial of degree m (in
/// index order) with nonzero coefficient.
inline ObstructionCertificate higher_obstruction_certificate(const Word& w, int max_degree = kDefaultMaxDegree)
{
    const LcsClass c = lcs_class(w, max_degree);
    if (!c.exact)
        throw InvalidInput("word " + w.str() + " has no nonzero Magnus coefficient up to degree " +
                           std::to_string(max_degree) + "; raise the maximum degree");
    if (c.m < 2)
        throw HypothesisViolation("word " + w.str() + " is not in the commutator subgroup (class 1)");
    const MagnusSeries s = expand(w, c.m);
    ObstructionCertificate cert;
    cert.word = w;
    cert.m = c.m;
    cert.level = c.m + 1;
    for (std::size_t i = 0; i < s.count(c.m); ++i)
        if (sgn(s.at(c.m, i)) != 0) {
            cert.monomial = s.monomial(c.m, i);
            cert.coefficient = s.at(c.m, i);
            break;
        }
    cert.statement = "o_" + std::to_string(cert.level) + "(K_" + w.str() +
                     ") is defined and does not contain zero; K_" + w.str() + " does not embed in R^4";
    return cert;
}

} // namespace obstrukt
