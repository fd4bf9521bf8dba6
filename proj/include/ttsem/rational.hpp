#pragma once

// Exact rational scalars and their extension by +/- infinity.

#include <gmpxx.h>

#include <compare>
#include <ostream>
#include <stdexcept>
#include <string>
#include <string_view>

namespace ttsem {

using Rational = mpq_class;

/// Thrown for every precondition violation in the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

inline Rational make_rational(long num, long den = 1)
{
    Rational q(num, den);
    q.canonicalize();
    return q;
}

/// Parses "p", "p/q", or a finite decimal such as "-4.25".
inline Rational parse_rational(std::string_view text)
{
    std::string s(text);
    if (s.empty())
        throw Error("empty rational literal");
    const auto dot = s.find('.');
    try {
        if (dot == std::string::npos) {
            Rational q(s, 10);
            if (q.get_den() == 0)
                throw Error("zero denominator in '" + s + "'");
            q.canonicalize();
            return q;
        }
        if (s.find('/') != std::string::npos)
            throw Error("mixed decimal/fraction literal '" + s + "'");
        std::string digits = s.substr(0, dot) + s.substr(dot + 1);
        if (digits.empty() || digits == "-" || digits == "+")
            throw Error("malformed decimal '" + s + "'");
        mpz_class scale = 1;
        for (std::size_t i = dot + 1; i < s.size(); ++i)
            scale *= 10;
        Rational q(mpz_class(digits, 10), scale);
        q.canonicalize();
        return q;
    } catch (const std::invalid_argument&) {
        throw Error("malformed rational '" + s + "'");
    }
}

inline std::string to_string(const Rational& q)
{
    return q.get_str(10);
}

inline double to_double(const Rational& q)
{
    return q.get_d();
}

inline Rational rabs(const Rational& q)
{
    return q < 0 ? Rational(-q) : q;
}

inline const Rational& rmin(const Rational& a, const Rational& b)
{
    return b < a ? b : a;
}

inline const Rational& rmax(const Rational& a, const Rational& b)
{
    return a < b ? b : a;
}

/// A rational or one of the two infinities.
class ExtRational {
public:
    enum class Kind { neg_inf, finite, pos_inf };

    ExtRational() = default;
    ExtRational(Rational q) : kind_(Kind::finite), value_(std::move(q)) {}
    ExtRational(long v) : kind_(Kind::finite), value_(v) {}

    static ExtRational pos_inf() { return ExtRational(Kind::pos_inf); }
    static ExtRational neg_inf() { return ExtRational(Kind::neg_inf); }

    Kind kind() const { return kind_; }
    bool is_finite() const { return kind_ == Kind::finite; }
    bool is_pos_inf() const { return kind_ == Kind::pos_inf; }
    bool is_neg_inf() const { return kind_ == Kind::neg_inf; }

    const Rational& value() const
    {
        if (!is_finite())
            throw Error("finite value requested from an infinite quantity");
        return value_;
    }

    friend bool operator==(const ExtRational& a, const ExtRational& b)
    {
        if (a.kind_ != b.kind_)
            return false;
        return !a.is_finite() || a.value_ == b.value_;
    }

    friend std::strong_ordering operator<=>(const ExtRational& a, const ExtRational& b)
    {
        if (a.kind_ != b.kind_)
            return static_cast<int>(a.kind_) <=> static_cast<int>(b.kind_);
        if (!a.is_finite())
            return std::strong_ordering::equal;
        const int c = cmp(a.value_, b.value_);
        return c < 0 ? std::strong_ordering::less
                     : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
    }

    friend ExtRational operator-(const ExtRational& a)
    {
        switch (a.kind_) {
        case Kind::neg_inf: return pos_inf();
        case Kind::pos_inf: return neg_inf();
        default: return ExtRational(Rational(-a.value_));
        }
    }

    friend ExtRational operator+(const ExtRational& a, const ExtRational& b)
    {
        if (a.is_finite() && b.is_finite())
            return ExtRational(Rational(a.value_ + b.value_));
        if ((a.is_pos_inf() && b.is_neg_inf()) || (a.is_neg_inf() && b.is_pos_inf()))
            throw Error("indeterminate sum of opposite infinities");
        return a.is_finite() ? b : a;
    }

    friend ExtRational operator-(const ExtRational& a, const ExtRational& b) { return a + (-b); }

    /// Product with the convention 0 * inf = 0, which is what the signed-part
    /// formulas of Kaucher multiplication need.
    friend ExtRational operator*(const ExtRational& a, const ExtRational& b)
    {
        if (a.is_finite() && b.is_finite())
            return ExtRational(Rational(a.value_ * b.value_));
        const int sa = a.sign();
        const int sb = b.sign();
        if (sa == 0 || sb == 0)
            return ExtRational(0);
        return sa * sb > 0 ? pos_inf() : neg_inf();
    }

    int sign() const
    {
        switch (kind_) {
        case Kind::neg_inf: return -1;
        case Kind::pos_inf: return 1;
        default: return sgn(value_);
        }
    }

    friend std::string to_string(const ExtRational& e)
    {
        switch (e.kind_) {
        case Kind::neg_inf: return "-inf";
        case Kind::pos_inf: return "inf";
        default: return to_string(e.value_);
        }
    }

    friend std::ostream& operator<<(std::ostream& os, const ExtRational& e) { return os << to_string(e); }

private:
    explicit ExtRational(Kind k) : kind_(k) {}

    Kind kind_ = Kind::finite;
    Rational value_ = 0;
};

inline ExtRational parse_ext_rational(std::string_view text)
{
    if (text == "inf" || text == "+inf")
        return ExtRational::pos_inf();
    if (text == "-inf")
        return ExtRational::neg_inf();
    return ExtRational(parse_rational(text));
}

inline const ExtRational& emin(const ExtRational& a, const ExtRational& b)
{
    return b < a ? b : a;
}

inline const ExtRational& emax(const ExtRational& a, const ExtRational& b)
{
    return a < b ? b : a;
}

} // namespace ttsem
