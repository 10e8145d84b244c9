#pragma once

/**
 * @file identities.hpp
 * @brief Closed forms for floor, ceiling, fractional-part and sawtooth sums in base b.
 *
 * Notation, for n = (c_m ... c_0)_b with c_m != 0:
 *   s    digit sum s_b(n)
 *   m    leading digit position
 *   nu   b-adic valuation of n (lowest nonzero digit index)
 *   L(t) number of digits >= t, with L(b) = 0
 *
 * Every evaluator reads its digit facts from one expansion of n and returns
 * an exact Natural or Rational.
 */

#include <radixsum/bigmath.hpp>
#include <radixsum/radix.hpp>
#include <radixsum/sum_spec.hpp>

#include <stdexcept>

namespace radixsum {

namespace detail {

inline void require_j(const Natural& j, const Natural& b, bool allow_zero) {
    if (j >= b) throw std::domain_error("j must be < base, got j = " + j.to_string() + ", base = " + b.to_string());
    if (!allow_zero && j.is_zero()) throw std::domain_error("j must be > 0");
}

/// (n - s_b(n)) / (b - 1); b - 1 always divides n - s_b(n), and exact_div throws if it ever did not.
inline Natural digit_quotient(const Natural& n, const DigitExpansion& e) {
    return exact_div(n - digit_sum(e), e.base() - Natural(1));
}

/// (s_b(n) - n / b^(m+1)) / (b - 1), shared by the frac and sawtooth forms.
inline Rational scaled_digit_gap(const Natural& n, const DigitExpansion& e) {
    const Natural& b = e.base();
    const Natural top = pow(b, Natural(static_cast<unsigned long>(e.size())));
    return (Rational(digit_sum(e)) - Rational(Integer(n), Integer(top))) / Rational(b - Natural(1));
}

}  // namespace detail

/// Sum over k >= 1 of floor((n + j b^(k-1)) / b^k), for 0 <= j < b:
///   (n - s) / (b - 1) + L(b - j).
inline Natural floor_sum(const Natural& n, const Natural& b, const Natural& j) {
    detail::require_base(b);
    detail::require_j(j, b, true);
    const DigitExpansion e = expand(n, b);
    return detail::digit_quotient(n, e) + conjugate(e).at(b - j);
}

/// The same sum taken over all 0 < j < b, which collapses to n.
inline Natural floor_double_sum(const Natural& n, const Natural& b) {
    detail::require_base(b);
    return n;
}

/// (n - s_p(n)) / (p - 1), the exponent of p in n! when p is prime.
inline Natural legendre_valuation(const Natural& n, const Natural& p) {
    detail::require_base(p);
    return detail::digit_quotient(n, expand(n, p));
}

namespace detail {

struct CeilTerms {
    Natural leading_form;
    Natural leading_pos;
};

inline CeilTerms ceil_terms(const Rational& x, const Natural& b, const Natural& j) {
    require_base(b);
    require_j(j, b, false);
    if (x < Rational(1)) throw std::domain_error("ceil sums need x >= 1, got " + x.to_string());
    const Natural n = ceiling(x).to_natural();
    const DigitExpansion e = expand(n, b);
    const Natural m = radixsum::leading_pos(e);
    return {digit_quotient(n, e) + m + conjugate(e).at(b - j) + iverson(lowest_nonzero_digit(e) != b - j), m};
}

}  // namespace detail

/**
 * The leading-digit expression for the ceiling sum,
 *   (n - s) / (b - 1) + m + L(b - j) + [c_nu != b - j],   n = ceil(x).
 *
 * It equals the sum over 0 <= k <= log_b x whenever floor(log_b x) = m.
 * For non-integer x with ceil(x) = b^m the sum has only m terms, the
 * missing k = m term is 1, and this expression is one too large; ceil_sum
 * applies that correction.
 */
inline Natural ceil_sum_uncorrected(const Rational& x, const Natural& b, const Natural& j) {
    return detail::ceil_terms(x, b, j).leading_form;
}

/// Sum over 0 <= k <= log_b x of ceil((x + j b^k) / b^(k+1)), for rational x >= 1 and 0 < j < b.
inline Natural ceil_sum(const Rational& x, const Natural& b, const Natural& j) {
    auto [value, m] = detail::ceil_terms(x, b, j);
    if (ilog(b, x) + Natural(1) == m) value -= Natural(1);
    return value;
}

/// (b - 1)(floor(log_b x) + 1) + ceil(x) - 1, the ceiling sum over all 0 < j < b.
inline Natural ceil_double_sum(const Rational& x, const Natural& b) {
    detail::require_base(b);
    if (x < Rational(1)) throw std::domain_error("ceil sums need x >= 1, got " + x.to_string());
    const Natural n = ceiling(x).to_natural();
    return (b - Natural(1)) * (ilog(b, x) + Natural(1)) + n - Natural(1);
}

/// (b - 1)(m + 1) + n - 1 with m read from n = ceil(x). Differs from
/// ceil_double_sum by b - 1 when x is not an integer and ceil(x) = b^m.
inline Natural ceil_double_sum_leading_form(const Rational& x, const Natural& b) {
    detail::require_base(b);
    if (x < Rational(1)) throw std::domain_error("ceil sums need x >= 1, got " + x.to_string());
    const Natural n = ceiling(x).to_natural();
    return (b - Natural(1)) * (leading_pos(n, b) + Natural(1)) + n - Natural(1);
}

/// Sum over 0 <= k <= m of frac((n + j b^k) / b^(k+1)), for n >= 1 and 0 < j < b:
///   (s - n / b^(m+1)) / (b - 1) + (m + 1) j / b - L(b - j).
inline Rational frac_sum(const Natural& n, const Natural& b, const Natural& j) {
    detail::require_base(b);
    detail::require_j(j, b, false);
    detail::require_positive(n, "frac sum closed form");
    const DigitExpansion e = expand(n, b);
    const Rational terms(leading_pos(e) + Natural(1));
    return detail::scaled_digit_gap(n, e) + terms * Rational(Integer(j), Integer(b)) - Rational(conjugate(e).at(b - j));
}

/// (m + 1)(b - 1) / 2 - n / b^(m+1), the frac sum over all 0 < j < b.
inline Rational frac_double_sum(const Natural& n, const Natural& b) {
    detail::require_base(b);
    detail::require_positive(n, "frac sum closed form");
    const Natural terms = leading_pos(n, b) + Natural(1);
    return Rational(Integer(terms * (b - Natural(1))), Integer(2)) - Rational(Integer(n), Integer(pow(b, terms)));
}

/**
 * Sum over 0 <= k <= m of the sawtooth ((n + j b^k) / b^(k+1)), for n >= 1 and 0 < j < b:
 *   (s - n / b^(m+1)) / (b - 1) + (m + 1)(j / b - 1/2) - L(b - j) + [c_nu = b - j] / 2.
 *
 * At most one of the m + 1 fractions is an integer (k = nu, when c_nu = b - j);
 * the bracket accounts for it and is 0 when none is.
 */
inline Rational sawtooth_sum(const Natural& n, const Natural& b, const Natural& j) {
    detail::require_base(b);
    detail::require_j(j, b, false);
    detail::require_positive(n, "sawtooth sum closed form");
    const DigitExpansion e = expand(n, b);
    const Rational half(1, 2);
    const Rational terms(leading_pos(e) + Natural(1));
    const Rational integer_term = lowest_nonzero_digit(e) == b - j ? half : Rational();
    return detail::scaled_digit_gap(n, e) + terms * (Rational(Integer(j), Integer(b)) - half) -
           Rational(conjugate(e).at(b - j)) + integer_term;
}

/// 1/2 - n / b^(m+1), the sawtooth sum over all 0 < j < b.
inline Rational sawtooth_double_sum(const Natural& n, const Natural& b) {
    detail::require_base(b);
    detail::require_positive(n, "sawtooth sum closed form");
    const Natural terms = leading_pos(n, b) + Natural(1);
    return Rational(1, 2) - Rational(Integer(n), Integer(pow(b, terms)));
}

/// Closed-form value of any SumSpec.
inline Rational evaluate_closed(const SumSpec& spec) {
    spec.validate();
    const bool single = spec.scope == Scope::single;
    switch (spec.family) {
        case Family::floor:
            return single ? Rational(floor_sum(spec.n(), spec.base, *spec.j)) : Rational(floor_double_sum(spec.n(), spec.base));
        case Family::ceil:
            return single ? Rational(ceil_sum(spec.arg, spec.base, *spec.j)) : Rational(ceil_double_sum(spec.arg, spec.base));
        case Family::frac:
            return single ? frac_sum(spec.n(), spec.base, *spec.j) : frac_double_sum(spec.n(), spec.base);
        case Family::sawtooth:
            return single ? sawtooth_sum(spec.n(), spec.base, *spec.j) : sawtooth_double_sum(spec.n(), spec.base);
    }
    throw std::logic_error("unknown family");
}

}  // namespace radixsum
