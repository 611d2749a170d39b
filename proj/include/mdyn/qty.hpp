#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <algorithm>
#include <compare>
#include <cstdint>
#include <type_traits>
#include <ostream>
#include <string>
#include <string_view>

#include "mdyn/errors.hpp"

namespace mdyn {

using BigInt = boost::multiprecision::cpp_int;
using BigRational = boost::multiprecision::cpp_rational;

/// Exact non-negative rational scalar. Depending on context it is a price
/// (X per unit of Y), a volume (units of Y) or an amount of money (units
/// of X). All arithmetic is exact; subtraction below zero throws.
class Qty {
public:
    Qty() = default;
    template <typename T>
        requires std::is_integral_v<T>
    Qty(T n) : v_(check_non_negative(n)) {}  // NOLINT(google-explicit-constructor)

    explicit Qty(BigRational v) : v_(std::move(v)) {
        if (v_ < 0) throw DomainError("Qty: negative value");
    }

    static Qty ratio(const BigInt& num, const BigInt& den) {
        if (den == 0) throw DomainError("Qty: zero denominator");
        return Qty(BigRational(num, den));
    }

    /// Exact conversion of a finite double (doubles are dyadic rationals).
    static Qty from_double_exact(double v) {
        if (!(v >= 0.0)) throw DomainError("Qty: negative or non-finite double");
        return Qty(BigRational(v));
    }

    /// Parses "123", "123.45" or "123/7". Rejects signs, exponents, blanks.
    static Qty parse(std::string_view text);

    const BigRational& value() const { return v_; }
    BigInt numerator() const { return boost::multiprecision::numerator(v_); }
    BigInt denominator() const { return boost::multiprecision::denominator(v_); }

    bool is_zero() const { return v_.is_zero(); }
    double to_double() const { return v_.convert_to<double>(); }

    /// Canonical exact text: integer, finite decimal (no trailing zeros,
    /// no exponent) or "num/den" when the denominator is not 2^a*5^b.
    std::string str() const;

    Qty& operator+=(const Qty& o) {
        v_ += o.v_;
        return *this;
    }
    Qty& operator-=(const Qty& o) {
        if (v_ < o.v_) throw DomainError("Qty: subtraction below zero");
        v_ -= o.v_;
        return *this;
    }
    Qty& operator*=(const Qty& o) {
        v_ *= o.v_;
        return *this;
    }
    Qty& operator/=(const Qty& o) {
        if (o.is_zero()) throw DomainError("Qty: division by zero");
        v_ /= o.v_;
        return *this;
    }

    friend Qty operator+(Qty a, const Qty& b) { return a += b; }
    friend Qty operator-(Qty a, const Qty& b) { return a -= b; }
    friend Qty operator*(Qty a, const Qty& b) { return a *= b; }
    friend Qty operator/(Qty a, const Qty& b) { return a /= b; }

    friend bool operator==(const Qty& a, const Qty& b) { return a.v_ == b.v_; }
    friend std::strong_ordering operator<=>(const Qty& a, const Qty& b) {
        if (a.v_ < b.v_) return std::strong_ordering::less;
        if (a.v_ > b.v_) return std::strong_ordering::greater;
        return std::strong_ordering::equal;
    }

    friend std::ostream& operator<<(std::ostream& os, const Qty& q) { return os << q.str(); }

private:
    template <typename T>
    static T check_non_negative(T n) {
        if constexpr (std::is_signed_v<T>) {
            if (n < 0) throw DomainError("Qty: negative value");
        }
        return n;
    }

    BigRational v_{};
};

inline const Qty& min(const Qty& a, const Qty& b) { return b < a ? b : a; }
inline const Qty& max(const Qty& a, const Qty& b) { return a < b ? b : a; }

/// max(a - b, 0): the clamped difference used throughout clearing.
inline Qty saturating_sub(const Qty& a, const Qty& b) { return a <= b ? Qty() : a - b; }

inline Qty Qty::parse(std::string_view text) {
    const auto fail = [&] { throw ParseError("Qty: cannot parse \"" + std::string(text) + "\""); };
    if (text.empty()) fail();

    const auto parse_digits = [&](std::string_view digits) -> BigInt {
        if (digits.empty()) fail();
        for (char c : digits) {
            if (c < '0' || c > '9') fail();
        }
        // a leading zero would make the bignum constructor read octal
        while (digits.size() > 1 && digits.front() == '0') digits.remove_prefix(1);
        return BigInt(std::string(digits));
    };

    if (auto slash = text.find('/'); slash != std::string_view::npos) {
        BigInt num = parse_digits(text.substr(0, slash));
        BigInt den = parse_digits(text.substr(slash + 1));
        if (den == 0) fail();
        return Qty::ratio(num, den);
    }

    auto dot = text.find('.');
    if (dot == std::string_view::npos) return Qty(BigRational(parse_digits(text)));

    std::string_view int_part = text.substr(0, dot);
    std::string_view frac_part = text.substr(dot + 1);
    if (int_part.empty() && frac_part.empty()) fail();
    BigInt scaled = 0;
    if (!int_part.empty()) scaled = parse_digits(int_part);
    BigInt den = 1;
    if (!frac_part.empty()) {
        BigInt frac = parse_digits(frac_part);
        for (std::size_t i = 0; i < frac_part.size(); ++i) den *= 10;
        scaled = scaled * den + frac;
    }
    return Qty::ratio(scaled, den);
}

inline std::string Qty::str() const {
    BigInt num = numerator();
    BigInt den = denominator();
    if (den == 1) return num.str();

    // Count the 2s and 5s in the denominator; anything else has no finite
    // decimal expansion and is emitted as a fraction.
    BigInt rest = den;
    unsigned twos = 0;
    unsigned fives = 0;
    while (rest % 2 == 0) {
        rest /= 2;
        ++twos;
    }
    while (rest % 5 == 0) {
        rest /= 5;
        ++fives;
    }
    if (rest != 1) return num.str() + "/" + den.str();

    const unsigned digits = std::max(twos, fives);
    for (unsigned i = twos; i < digits; ++i) num *= 2;
    for (unsigned i = fives; i < digits; ++i) num *= 5;
    std::string s = num.str();
    if (s.size() <= digits) s.insert(0, digits + 1 - s.size(), '0');
    s.insert(s.size() - digits, ".");
    while (s.back() == '0') s.pop_back();
    if (s.back() == '.') s.pop_back();
    return s;
}

}  // namespace mdyn
