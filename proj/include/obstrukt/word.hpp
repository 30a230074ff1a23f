#pragma once

// Freely reduced words in a free group on up to four generators x, y, z, w.
//
// Grammar: letters x y z w, capitals for inverses, `[u,v]` for the
// commutator u v u^-1 v^-1, juxtaposition for products, `1` for the identity.
// Whitespace is ignored.

#include <cctype>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "obstrukt/errors.hpp"

namespace obstrukt {

inline constexpr std::string_view kGeneratorLetters = "xyzw";

class Word {
public:
    /// +g+1 for generator g, -(g+1) for its inverse.
    using Letter = std::int8_t;

    Word() = default;
    /// Letters are freely reduced on construction.
    explicit Word(const std::vector<Letter>& letters)
    {
        for (Letter l : letters) push(l);
    }

    static Word generator(int g, bool inverse = false)
    {
        if (g < 0 || g >= static_cast<int>(kGeneratorLetters.size())) throw InvalidInput("generator index out of range");
        return Word({static_cast<Letter>(inverse ? -(g + 1) : g + 1)});
    }

    const std::vector<Letter>& letters() const { return letters_; }
    std::size_t length() const { return letters_.size(); }
    bool empty() const { return letters_.empty(); }

    /// Highest generator index used, plus one.
    int rank() const
    {
        int r = 0;
        for (Letter l : letters_) r = std::max(r, static_cast<int>(l > 0 ? l : -l));
        return r;
    }

    /// Freely reduced and no cancellation between the last and first letter.
    bool cyclically_reduced() const { return letters_.size() < 2 || letters_.front() != -letters_.back(); }

    Word inverse() const
    {
        Word w;
        for (auto it = letters_.rbegin(); it != letters_.rend(); ++it) w.push(static_cast<Letter>(-*it));
        return w;
    }

    friend Word operator*(const Word& a, const Word& b)
    {
        Word w = a;
        for (Letter l : b.letters_) w.push(l);
        return w;
    }
    friend bool operator==(const Word&, const Word&) = default;

    std::string str() const
    {
        if (letters_.empty()) return "1";
        std::string s;
        for (Letter l : letters_) {
            const char c = kGeneratorLetters[(l > 0 ? l : -l) - 1];
            s += l > 0 ? c : static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
        }
        return s;
    }

private:
    void push(Letter l)
    {
        if (l == 0) throw InvalidInput("invalid letter");
        if (!letters_.empty() && letters_.back() == -l) letters_.pop_back();
        else letters_.push_back(l);
    }

    std::vector<Letter> letters_;
};

inline Word concat(const Word& u, const Word& v) { return u * v; }
inline Word inverse(const Word& u) { return u.inverse(); }
inline Word commutator(const Word& u, const Word& v) { return u * v * u.inverse() * v.inverse(); }

namespace detail {

class WordParser {
public:
    explicit WordParser(std::string_view s) : s_(s) {}

    Word parse()
    {
        Word w = product();
        skip();
        if (pos_ != s_.size()) fail("unexpected '" + std::string(1, s_[pos_]) + "'");
        return w;
    }

private:
    Word product()
    {
        Word w;
        for (;;) {
            skip();
            if (pos_ == s_.size() || s_[pos_] == ',' || s_[pos_] == ']') return w;
            w = w * atom();
        }
    }

    Word atom()
    {
        const char c = s_[pos_];
        if (c == '[') {
            ++pos_;
            Word u = product();
            expect(',');
            Word v = product();
            expect(']');
            if (u.empty() && v.empty()) fail("empty commutator");
            return commutator(u, v);
        }
        if (c == '1') {
            ++pos_;
            return Word();
        }
        const auto lower = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
        const auto g = kGeneratorLetters.find(lower);
        if (g == std::string_view::npos) fail("unknown letter '" + std::string(1, c) + "'");
        ++pos_;
        return Word::generator(static_cast<int>(g), c != lower);
    }

    void expect(char c)
    {
        skip();
        if (pos_ == s_.size() || s_[pos_] != c) fail(std::string("expected '") + c + "'");
        ++pos_;
    }
    void skip()
    {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    }
    [[noreturn]] void fail(const std::string& why) const
    {
        throw InvalidInput("word \"" + std::string(s_) + "\": " + why + " at position " + std::to_string(pos_));
    }

    std::string_view s_;
    std::size_t pos_ = 0;
};

} // namespace detail

inline Word parse_word(std::string_view s) { return detail::WordParser(s).parse(); }

} // namespace obstrukt
