#pragma once

// Exact scalar types and the coefficient rings used throughout the library.

#include <gmpxx.h>

#include <cstdint>
#include <ostream>
#include <string>
#include <string_view>

#include "obstrukt/errors.hpp"

namespace obstrukt {

using Integer = mpz_class;
using Rational = mpq_class;

/// Element of the field with two elements.
class GF2 {
public:
    constexpr GF2() = default;
    constexpr explicit GF2(long long v) : bit_(static_cast<std::uint8_t>(v & 1)) {}
    explicit GF2(const Integer& v) : bit_(mpz_odd_p(v.get_mpz_t()) ? 1 : 0) {}

    constexpr bool is_zero() const { return bit_ == 0; }
    constexpr std::uint8_t bit() const { return bit_; }

    friend constexpr GF2 operator+(GF2 a, GF2 b) { return GF2(a.bit_ ^ b.bit_); }
    friend constexpr GF2 operator-(GF2 a, GF2 b) { return GF2(a.bit_ ^ b.bit_); }
    friend constexpr GF2 operator*(GF2 a, GF2 b) { return GF2(a.bit_ & b.bit_); }
    constexpr GF2 operator-() const { return *this; }
    constexpr GF2& operator+=(GF2 o) { bit_ ^= o.bit_; return *this; }
    constexpr GF2& operator-=(GF2 o) { bit_ ^= o.bit_; return *this; }
    constexpr GF2& operator*=(GF2 o) { bit_ &= o.bit_; return *this; }
    friend constexpr bool operator==(GF2 a, GF2 b) { return a.bit_ == b.bit_; }
    friend constexpr bool operator==(GF2 a, int b) { return a.bit_ == (b & 1); }
    friend std::ostream& operator<<(std::ostream& os, GF2 a) { return os << int(a.bit_); }

private:
    std::uint8_t bit_ = 0;
};

/// The three coefficient rings the obstruction machinery works over.
enum class Coefficients { Z, Q, Z2 };

inline std::string_view to_string(Coefficients c)
{
    switch (c) {
    case Coefficients::Z: return "z";
    case Coefficients::Q: return "q";
    case Coefficients::Z2: return "z2";
    }
    return "?";
}

inline Coefficients parse_coefficients(std::string_view s)
{
    if (s == "z" || s == "Z") return Coefficients::Z;
    if (s == "q" || s == "Q") return Coefficients::Q;
    if (s == "z2" || s == "Z2") return Coefficients::Z2;
    throw InvalidInput("unknown coefficient ring '" + std::string(s) + "' (expected z, q or z2)");
}

// Ring traits. Each provides value_type, is_unit, unit_inverse, from_int,
// and whether every nonzero element is invertible.

struct IntegerRing {
    using value_type = Integer;
    static constexpr bool is_field = false;
    static constexpr Coefficients tag = Coefficients::Z;
    static bool is_zero(const Integer& a) { return sgn(a) == 0; }
    static bool is_unit(const Integer& a) { return a == 1 || a == -1; }
    static Integer unit_inverse(const Integer& a) { return a; }
    static Integer from_int(long long v) { return Integer(static_cast<long>(v)); }
    static Rational to_rational(const Integer& a) { return Rational(a); }
};

struct RationalField {
    using value_type = Rational;
    static constexpr bool is_field = true;
    static constexpr Coefficients tag = Coefficients::Q;
    static bool is_zero(const Rational& a) { return sgn(a) == 0; }
    static bool is_unit(const Rational& a) { return sgn(a) != 0; }
    static Rational unit_inverse(const Rational& a) { return Rational(1) / a; }
    static Rational from_int(long long v) { return Rational(static_cast<long>(v)); }
    static Rational to_rational(const Rational& a) { return a; }
};

struct GF2Field {
    using value_type = GF2;
    static constexpr bool is_field = true;
    static constexpr Coefficients tag = Coefficients::Z2;
    static bool is_zero(GF2 a) { return a.is_zero(); }
    static bool is_unit(GF2 a) { return !a.is_zero(); }
    static GF2 unit_inverse(GF2 a) { return a; }
    static GF2 from_int(long long v) { return GF2(v); }
    static Rational to_rational(GF2 a) { return Rational(a.bit()); }
};

inline long long to_ll(const Integer& v)
{
    if (!v.fits_slong_p()) throw InternalError("integer does not fit in 64 bits: " + v.get_str());
    return v.get_si();
}

} // namespace obstrukt
