#pragma once

/**
 * @file oracle.hpp
 * @brief Brute-force evaluation of every sum and auxiliary lemma.
 *
 * Each function here evaluates its sum term by term with exact rationals.
 * Only bigmath and radix are used; identities.hpp is never included, so a
 * disagreement between the two layers always means something.
 */

#include <radixsum/bigmath.hpp>
#include <radixsum/radix.hpp>
#include <radixsum/sum_spec.hpp>

#include <optional>
#include <span>
#include <stdexcept>
#include <string>

namespace radixsum::oracle {

namespace detail {

inline void require_j(const Natural& j, const Natural& b, bool allow_zero) {
    if (j >= b) throw std::domain_error("j must be < base");
    if (!allow_zero && j.is_zero()) throw std::domain_error("j must be > 0");
}

/// (n + j b^k) / b^(k+1)
inline Rational shifted_ratio(const Natural& n, const Natural& b, const Natural& j, const Natural& k) {
    const Natural bk = pow(b, k);
    return Rational(Integer(n + j * bk), Integer(bk * b));
}

}  // namespace detail

/**
 * Sum over k >= 1 of floor((n + j b^(k-1)) / b^k).
 *
 * Stops at the first k with b^(k-1) > n: from there n / b^k < 1/b, so
 * every later term is floor(n / b^k + j / b) = 0.
 */
inline Natural floor_sum_direct(const Natural& n, const Natural& b, const Natural& j) {
    radixsum::detail::require_base(b);
    detail::require_j(j, b, true);
    Natural total;
    Natural lower(1);  // b^(k-1)
    while (lower <= n) {
        const Natural upper = lower * b;
        total += floor(Rational(Integer(n + j * lower), Integer(upper))).to_natural();
        lower = upper;
    }
#ifndef NDEBUG
    for (int extra = 0; extra < 2; ++extra, lower *= b) {
        if (!floor(Rational(Integer(n + j * lower), Integer(lower * b))).is_zero())
            throw std::logic_error("floor_sum_direct: nonzero term past the stopping point");
    }
#endif
    return total;
}

/// Number of terms floor_sum_direct adds for (n, b): one per k with b^(k-1) <= n.
inline Natural floor_sum_direct_term_count(const Natural& n, const Natural& b) {
    radixsum::detail::require_base(b);
    Natural count;
    for (Natural lower(1); lower <= n; lower *= b) ++count;
    return count;
}

/**
 * Sum over 0 <= k <= log_b x of ceil((x + j b^k) / b^(k+1)).
 *
 * Each term exceeds floor(ceil(x) / b^(k+1)) by 1 or 2; anything else throws
 * std::logic_error.
 */
inline Natural ceil_sum_direct(const Rational& x, const Natural& b, const Natural& j) {
    radixsum::detail::require_base(b);
    detail::require_j(j, b, false);
    if (x < Rational(1)) throw std::domain_error("ceil sums need x >= 1");
    const Natural last = ilog(b, x);
    const Natural n = ceiling(x).to_natural();
    Natural total;
    Natural bk(1);
    for (Natural k; k <= last; ++k, bk *= b) {
        const Integer term = ceiling((x + Rational(j * bk)) / Rational(bk * b));
        // the part of the term beyond floor(ceil(x) / b^(k+1)) is 1 or 2
        const Integer tail = term - Integer(n / (bk * b));
        if (tail < Integer(1) || tail > Integer(2))
            throw std::logic_error("ceil_sum_direct: term " + term.to_string() + " has digit tail " + tail.to_string() +
                                   " outside {1, 2}");
        total += term.to_natural();
    }
    return total;
}

/// Sum over 0 <= k <= floor(log_b n) of frac((n + j b^k) / b^(k+1)).
inline Rational frac_sum_direct(const Natural& n, const Natural& b, const Natural& j) {
    radixsum::detail::require_base(b);
    detail::require_j(j, b, false);
    if (n.is_zero()) throw std::domain_error("frac sum is taken over n >= 1");
    const Natural last = ilog(b, n);
    Rational total;
    for (Natural k; k <= last; ++k) total += frac(detail::shifted_ratio(n, b, j, k));
    return total;
}

/// Sum over 0 <= k <= floor(log_b n) of ((n + j b^k) / b^(k+1)).
inline Rational sawtooth_sum_direct(const Natural& n, const Natural& b, const Natural& j) {
    radixsum::detail::require_base(b);
    detail::require_j(j, b, false);
    if (n.is_zero()) throw std::domain_error("sawtooth sum is taken over n >= 1");
    const Natural last = ilog(b, n);
    Rational total;
    for (Natural k; k <= last; ++k) total += sawtooth(detail::shifted_ratio(n, b, j, k));
    return total;
}

/**
 * floor((c_k + j) / b + c_(k-1) / b^2 + ... + c_0 / b^(k+1)) for the digit
 * prefix c_0..c_k (little-endian), evaluated exactly.
 *
 * The result is always [c_k + j >= b]; a violation throws std::logic_error.
 */
inline Natural lemma1_tail_floor(std::span<const Natural> prefix, const Natural& j, const Natural& b) {
    radixsum::detail::require_base(b);
    detail::require_j(j, b, true);
    if (prefix.empty()) throw std::domain_error("digit prefix must hold at least c_0");
    for (const auto& c : prefix)
        if (c >= b) throw std::domain_error("digit " + c.to_string() + " out of range for base " + b.to_string());
    const std::size_t k = prefix.size() - 1;
    Rational value(Integer(prefix[k] + j), Integer(b));
    Natural scale = b;
    for (std::size_t s = k; s-- > 0;) {
        scale *= b;
        value += Rational(Integer(prefix[s]), Integer(scale));
    }
    const Integer result = floor(value);
    const bool carries = prefix[k] + j >= b;
    if (result != Integer(carries ? 1 : 0))
        throw std::logic_error("lemma1_tail_floor: floor is " + result.to_string() + ", bracket is " + (carries ? "1" : "0"));
    return result.to_natural();
}

/// Whether floor(x) + floor(x + 1/m) + ... + floor(x + (m-1)/m) = floor(m x).
inline bool hermite_check(const Rational& x, const Natural& m) {
    if (m.is_zero()) throw std::domain_error("hermite_check needs m >= 1");
    Integer lhs;
    for (Natural i; i < m; ++i) lhs += floor(x + Rational(Integer(i), Integer(m)));
    return lhs == floor(Rational(m) * x);
}

/**
 * Scans k = 0..floor(log_b n) for an integral (n + j b^k) / b^(k+1).
 *
 * At most one k qualifies, and it does exactly when the lowest nonzero
 * digit c_nu equals b - j, at k = nu. Either violation throws std::logic_error.
 */
inline std::optional<Natural> integer_term_locator(const Natural& n, const Natural& b, const Natural& j) {
    radixsum::detail::require_base(b);
    detail::require_j(j, b, false);
    if (n.is_zero()) throw std::domain_error("integer_term_locator needs n >= 1");
    const Natural last = ilog(b, n);
    std::optional<Natural> found;
    for (Natural k; k <= last; ++k) {
        if (!detail::shifted_ratio(n, b, j, k).is_integer()) continue;
        if (found) throw std::logic_error("integer_term_locator: more than one integral term");
        found = k;
    }
    const DigitExpansion e = expand(n, b);
    const Natural nu = valuation(e);
    const bool expected = lowest_nonzero_digit(e) == b - j;
    if (expected != found.has_value() || (found && *found != nu))
        throw std::logic_error("integer_term_locator: scan disagrees with the lowest nonzero digit");
    return found;
}

/// Exponent of p in n!, by trial division of each of 1..n.
inline Natural factorial_valuation_direct(const Natural& n, const Natural& p) {
    radixsum::detail::require_base(p);
    Natural total;
    for (Natural i(1); i <= n; ++i) {
        Natural rest = i;
        for (;;) {
            auto [q, r] = divmod(rest, p);
            if (!r.is_zero()) break;
            ++total;
            rest = std::move(q);
        }
    }
    return total;
}

/// Brute-force value of any SumSpec; double sums add the single sums over 0 < j < b.
inline Rational evaluate_direct(const SumSpec& spec) {
    spec.validate();
    auto single = [&](const Natural& j) -> Rational {
        switch (spec.family) {
            case Family::floor: return Rational(floor_sum_direct(spec.n(), spec.base, j));
            case Family::ceil: return Rational(ceil_sum_direct(spec.arg, spec.base, j));
            case Family::frac: return frac_sum_direct(spec.n(), spec.base, j);
            case Family::sawtooth: return sawtooth_sum_direct(spec.n(), spec.base, j);
        }
        throw std::logic_error("unknown family");
    };
    if (spec.scope == Scope::single) return single(*spec.j);
    Rational total;
    for (Natural j(1); j < spec.base; ++j) total += single(j);
    return total;
}

}  // namespace radixsum::oracle
