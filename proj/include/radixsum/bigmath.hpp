#pragma once

/**
 * @file bigmath.hpp
 * @brief Exact integer and rational arithmetic for the digit-sum identities.
 *
 * Three value types:
 * - Natural:  nonnegative integer of unbounded size
 * - Integer:  signed integer of unbounded size (floor/ceiling outputs)
 * - Rational: signed fraction, always in lowest terms with positive denominator
 *
 * plus the real-to-integer maps floor, ceiling, frac and sawtooth, an exact
 * integer logarithm and exact powers. Nothing here touches floating point.
 */

#include <gmpxx.h>

#include <compare>
#include <concepts>
#include <cstdint>
#include <limits>
#include <ostream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>

namespace radixsum {

namespace detail {

inline std::strong_ordering to_ordering(int c) {
    if (c < 0) return std::strong_ordering::less;
    if (c > 0) return std::strong_ordering::greater;
    return std::strong_ordering::equal;
}

inline bool is_decimal_digits(std::string_view s) {
    if (s.empty()) return false;
    for (char c : s)
        if (c < '0' || c > '9') return false;
    return true;
}

inline mpz_class make_mpz(std::integral auto v) {
    using T = decltype(v);
    if constexpr (std::is_signed_v<T>) {
        if (v >= std::numeric_limits<long>::min() && v <= std::numeric_limits<long>::max())
            return mpz_class(static_cast<long>(v));
    } else {
        if (v <= std::numeric_limits<unsigned long>::max())
            return mpz_class(static_cast<unsigned long>(v));
    }
    return mpz_class(std::to_string(v));
}

}  // namespace detail

class Integer;
class Rational;

/// Nonnegative integer of unbounded size. Subtraction that would go
/// negative throws std::domain_error.
class Natural {
  public:
    Natural() = default;

    template <std::integral T>
    Natural(T v) : value_(detail::make_mpz(v)) {  // NOLINT(google-explicit-constructor)
        if (value_ < 0) throw std::domain_error("Natural: negative value");
    }

    explicit Natural(mpz_class v) : value_(std::move(v)) {
        if (value_ < 0) throw std::domain_error("Natural: negative value");
    }

    /// Parses a nonempty string of decimal digits.
    static Natural parse(std::string_view text) {
        if (!detail::is_decimal_digits(text))
            throw std::invalid_argument("not a nonnegative decimal integer: '" + std::string(text) + "'");
        return Natural(mpz_class(std::string(text), 10));
    }

    /// Builds a Natural from little-endian 64-bit words.
    template <typename Range>
    static Natural from_words(const Range& words) {
        mpz_class out;
        std::size_t shift = 0;
        for (std::uint64_t w : words) {
            mpz_class part = detail::make_mpz(w);
            out += part << shift;
            shift += 64;
        }
        return Natural(std::move(out));
    }

    const mpz_class& mpz() const { return value_; }

    bool is_zero() const { return value_ == 0; }
    bool fits_ulong() const { return value_.fits_ulong_p(); }
    unsigned long to_ulong() const {
        if (!fits_ulong()) throw std::overflow_error("Natural too large for unsigned long");
        return value_.get_ui();
    }
    std::size_t bit_length() const { return is_zero() ? 0 : mpz_sizeinbase(value_.get_mpz_t(), 2); }

    std::string to_string() const { return value_.get_str(10); }

    Natural& operator+=(const Natural& rhs) {
        value_ += rhs.value_;
        return *this;
    }
    Natural& operator-=(const Natural& rhs) {
        if (value_ < rhs.value_) throw std::domain_error("Natural subtraction underflow");
        value_ -= rhs.value_;
        return *this;
    }
    Natural& operator*=(const Natural& rhs) {
        value_ *= rhs.value_;
        return *this;
    }
    Natural& operator/=(const Natural& rhs) {
        if (rhs.is_zero()) throw std::domain_error("division by zero");
        mpz_fdiv_q(value_.get_mpz_t(), value_.get_mpz_t(), rhs.value_.get_mpz_t());
        return *this;
    }
    Natural& operator%=(const Natural& rhs) {
        if (rhs.is_zero()) throw std::domain_error("division by zero");
        mpz_fdiv_r(value_.get_mpz_t(), value_.get_mpz_t(), rhs.value_.get_mpz_t());
        return *this;
    }
    Natural& operator++() {
        ++value_;
        return *this;
    }

    friend Natural operator+(Natural a, const Natural& b) { return a += b; }
    friend Natural operator-(Natural a, const Natural& b) { return a -= b; }
    friend Natural operator*(Natural a, const Natural& b) { return a *= b; }
    friend Natural operator/(Natural a, const Natural& b) { return a /= b; }
    friend Natural operator%(Natural a, const Natural& b) { return a %= b; }

    friend bool operator==(const Natural& a, const Natural& b) { return a.value_ == b.value_; }
    friend std::strong_ordering operator<=>(const Natural& a, const Natural& b) {
        return detail::to_ordering(cmp(a.value_, b.value_));
    }

    friend std::ostream& operator<<(std::ostream& os, const Natural& n) { return os << n.to_string(); }

  private:
    mpz_class value_;
};

/// Quotient and remainder of a / b.
inline std::pair<Natural, Natural> divmod(const Natural& a, const Natural& b) {
    if (b.is_zero()) throw std::domain_error("division by zero");
    mpz_class q, r;
    mpz_fdiv_qr(q.get_mpz_t(), r.get_mpz_t(), a.mpz().get_mpz_t(), b.mpz().get_mpz_t());
    return {Natural(std::move(q)), Natural(std::move(r))};
}

/// a / b, throwing std::logic_error when b does not divide a.
inline Natural exact_div(const Natural& a, const Natural& b) {
    auto [q, r] = divmod(a, b);
    if (!r.is_zero())
        throw std::logic_error("inexact division: " + a.to_string() + " / " + b.to_string());
    return q;
}

/// Signed integer of unbounded size.
class Integer {
  public:
    Integer() = default;

    template <std::integral T>
    Integer(T v) : value_(detail::make_mpz(v)) {}  // NOLINT(google-explicit-constructor)

    Integer(const Natural& n) : value_(n.mpz()) {}  // NOLINT(google-explicit-constructor)

    explicit Integer(mpz_class v) : value_(std::move(v)) {}

    /// Parses an optionally signed decimal integer.
    static Integer parse(std::string_view text) {
        bool negative = false;
        std::string_view body = text;
        if (!body.empty() && (body.front() == '-' || body.front() == '+')) {
            negative = body.front() == '-';
            body.remove_prefix(1);
        }
        if (!detail::is_decimal_digits(body))
            throw std::invalid_argument("not a decimal integer: '" + std::string(text) + "'");
        mpz_class v(std::string(body), 10);
        return Integer(negative ? mpz_class(-v) : v);
    }

    const mpz_class& mpz() const { return value_; }

    int sign() const { return sgn(value_); }
    bool is_zero() const { return value_ == 0; }
    Integer abs() const { return Integer(mpz_class(::abs(value_))); }

    /// Narrowing to Natural; throws std::domain_error when negative.
    Natural to_natural() const { return Natural(value_); }

    std::string to_string() const { return value_.get_str(10); }

    Integer& operator+=(const Integer& rhs) {
        value_ += rhs.value_;
        return *this;
    }
    Integer& operator-=(const Integer& rhs) {
        value_ -= rhs.value_;
        return *this;
    }
    Integer& operator*=(const Integer& rhs) {
        value_ *= rhs.value_;
        return *this;
    }
    Integer operator-() const { return Integer(mpz_class(-value_)); }

    friend Integer operator+(Integer a, const Integer& b) { return a += b; }
    friend Integer operator-(Integer a, const Integer& b) { return a -= b; }
    friend Integer operator*(Integer a, const Integer& b) { return a *= b; }

    friend bool operator==(const Integer& a, const Integer& b) { return a.value_ == b.value_; }
    friend std::strong_ordering operator<=>(const Integer& a, const Integer& b) {
        return detail::to_ordering(cmp(a.value_, b.value_));
    }

    friend std::ostream& operator<<(std::ostream& os, const Integer& z) { return os << z.to_string(); }

  private:
    mpz_class value_;
};

/// Exact fraction in lowest terms; the sign lives on the numerator and zero is 0/1.
class Rational {
  public:
    Rational() = default;

    template <std::integral T>
    Rational(T v) : value_(detail::make_mpz(v)) {}  // NOLINT(google-explicit-constructor)

    Rational(const Natural& n) : value_(n.mpz()) {}  // NOLINT(google-explicit-constructor)
    Rational(const Integer& z) : value_(z.mpz()) {}  // NOLINT(google-explicit-constructor)

    Rational(const Integer& num, const Integer& den) {
        if (den.is_zero()) throw std::domain_error("Rational: zero denominator");
        value_ = mpq_class(num.mpz(), den.mpz());
        value_.canonicalize();
    }

    explicit Rational(mpq_class v) : value_(std::move(v)) { value_.canonicalize(); }

    /**
     * Parses "p", "p/q" (q > 0) or a terminating decimal "d.ddd".
     * A leading '-' or '+' is accepted on the integer part. Decimals are
     * converted exactly: "7.5" becomes 15/2.
     */
    static Rational parse(std::string_view text) {
        auto fail = [&] { return std::invalid_argument("not a rational literal: '" + std::string(text) + "'"); };
        if (auto slash = text.find('/'); slash != std::string_view::npos) {
            Integer num = Integer::parse(text.substr(0, slash));
            std::string_view den_text = text.substr(slash + 1);
            if (!detail::is_decimal_digits(den_text)) throw fail();
            Natural den = Natural::parse(den_text);
            if (den.is_zero()) throw std::invalid_argument("zero denominator in '" + std::string(text) + "'");
            return Rational(num, Integer(den));
        }
        if (auto dot = text.find('.'); dot != std::string_view::npos) {
            std::string_view whole = text.substr(0, dot);
            std::string_view frac_digits = text.substr(dot + 1);
            bool negative = false;
            if (!whole.empty() && (whole.front() == '-' || whole.front() == '+')) {
                negative = whole.front() == '-';
                whole.remove_prefix(1);
            }
            if (whole.empty() || !detail::is_decimal_digits(whole) || !detail::is_decimal_digits(frac_digits))
                throw fail();
            mpz_class scale;
            mpz_ui_pow_ui(scale.get_mpz_t(), 10, frac_digits.size());
            mpz_class num(std::string(whole) + std::string(frac_digits), 10);
            if (negative) num = -num;
            return Rational(mpq_class(num, scale));
        }
        return Rational(Integer::parse(text));
    }

    const mpq_class& mpq() const { return value_; }

    Integer numerator() const { return Integer(mpz_class(value_.get_num())); }
    Natural denominator() const { return Natural(mpz_class(value_.get_den())); }

    int sign() const { return sgn(value_); }
    bool is_zero() const { return sign() == 0; }
    bool is_integer() const { return value_.get_den() == 1; }

    /// Canonical "p/q", or "p" when q = 1.
    std::string to_string() const {
        if (is_integer()) return value_.get_num().get_str(10);
        return value_.get_num().get_str(10) + "/" + value_.get_den().get_str(10);
    }

    Rational& operator+=(const Rational& rhs) {
        value_ += rhs.value_;
        return *this;
    }
    Rational& operator-=(const Rational& rhs) {
        value_ -= rhs.value_;
        return *this;
    }
    Rational& operator*=(const Rational& rhs) {
        value_ *= rhs.value_;
        return *this;
    }
    Rational& operator/=(const Rational& rhs) {
        if (rhs.is_zero()) throw std::domain_error("division by zero");
        value_ /= rhs.value_;
        return *this;
    }
    Rational operator-() const { return Rational(mpq_class(-value_)); }

    friend Rational operator+(Rational a, const Rational& b) { return a += b; }
    friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
    friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
    friend Rational operator/(Rational a, const Rational& b) { return a /= b; }

    friend bool operator==(const Rational& a, const Rational& b) { return a.value_ == b.value_; }
    friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
        return detail::to_ordering(cmp(a.value_, b.value_));
    }

    friend std::ostream& operator<<(std::ostream& os, const Rational& q) { return os << q.to_string(); }

  private:
    mpq_class value_;
};

/// Greatest integer <= q.
inline Integer floor(const Rational& q) {
    mpz_class out;
    mpz_fdiv_q(out.get_mpz_t(), q.mpq().get_num_mpz_t(), q.mpq().get_den_mpz_t());
    return Integer(std::move(out));
}

/// Least integer >= q.
inline Integer ceiling(const Rational& q) {
    mpz_class out;
    mpz_cdiv_q(out.get_mpz_t(), q.mpq().get_num_mpz_t(), q.mpq().get_den_mpz_t());
    return Integer(std::move(out));
}

/// q - floor(q), always in [0, 1).
inline Rational frac(const Rational& q) { return q - Rational(floor(q)); }

/// The sawtooth ((q)): frac(q) - 1/2 off the integers, 0 on them.
inline Rational sawtooth(const Rational& q) {
    if (q.is_integer()) return Rational();
    return frac(q) - Rational(1, 2);
}

/// Exact b^k. The exponent must fit in an unsigned long unless b <= 1.
inline Natural pow(const Natural& b, const Natural& k) {
    if (b <= Natural(1)) return k.is_zero() ? Natural(1) : b;
    mpz_class out;
    mpz_pow_ui(out.get_mpz_t(), b.mpz().get_mpz_t(), k.to_ulong());
    return Natural(std::move(out));
}

/// The K with b^K <= q < b^(K+1), found by repeated exact multiplication.
inline Natural ilog(const Natural& b, const Rational& q) {
    if (b < Natural(2)) throw std::domain_error("ilog: base must be >= 2");
    if (q < Rational(1)) throw std::domain_error("ilog: argument must be >= 1");
    // b^(K+1) > q  <=>  b^(K+1) > floor(q) for integer powers, so compare against floor(q).
    const Natural target = floor(q).to_natural();
    Natural k;
    Natural next = b;
    while (next <= target) {
        next *= b;
        ++k;
    }
    return k;
}

inline Natural ilog(const Natural& b, const Natural& n) { return ilog(b, Rational(n)); }

/// The Iverson bracket [p].
inline Natural iverson(bool p) { return p ? Natural(1) : Natural(0); }

}  // namespace radixsum
