#pragma once

/**
 * @file radix.hpp
 * @brief b-ary expansions and the digit statistics the closed forms consume.
 *
 * For n = c_m b^m + ... + c_1 b + c_0 (leading digit nonzero):
 * - digit_sum:  s_b(n) = c_0 + ... + c_m
 * - leading_pos: m
 * - valuation:  largest k with b^k | n, i.e. the index of the lowest nonzero digit
 * - partition_of_digits: the digits sorted weakly decreasing
 * - conjugate:  the transposed partition, entry t counting digits >= t
 *
 * Zero expands to the empty digit sequence, so its digit sum is 0 and every
 * conjugate entry is 0. leading_pos and valuation are undefined at zero and
 * reject it.
 */

#include <radixsum/bigmath.hpp>

#include <algorithm>
#include <functional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace radixsum {

namespace detail {

inline void require_base(const Natural& b) {
    if (b < Natural(2)) throw std::domain_error("base must be >= 2, got " + b.to_string());
}

inline void require_positive(const Natural& n, const char* what) {
    if (n.is_zero()) throw std::domain_error(std::string(what) + " is undefined for n = 0");
}

}  // namespace detail

/// Little-endian digits of n in base b: digits()[s] is c_s.
class DigitExpansion {
  public:
    DigitExpansion(Natural base, std::vector<Natural> digits) : base_(std::move(base)), digits_(std::move(digits)) {
        detail::require_base(base_);
        for (const auto& d : digits_)
            if (d >= base_) throw std::domain_error("digit " + d.to_string() + " out of range for base " + base_.to_string());
        if (!digits_.empty() && digits_.back().is_zero())
            throw std::domain_error("most significant digit must be nonzero");
    }

    const Natural& base() const { return base_; }
    std::span<const Natural> digits() const { return digits_; }
    std::size_t size() const { return digits_.size(); }
    bool empty() const { return digits_.empty(); }

    /// c_s, with c_s = 0 beyond the leading digit.
    Natural digit(std::size_t s) const { return s < digits_.size() ? digits_[s] : Natural(); }

    /// Sum of c_s b^s.
    Natural value() const {
        Natural out;
        for (auto it = digits_.rbegin(); it != digits_.rend(); ++it) out = out * base_ + *it;
        return out;
    }

    /// Most-significant-first rendering with the base annotation, e.g. "(1101221)_3".
    /// Digits of a base above 10 are written in decimal and separated by commas.
    std::string to_string() const {
        std::string body;
        const bool wide = base_ > Natural(10);
        for (auto it = digits_.rbegin(); it != digits_.rend(); ++it) {
            if (wide && !body.empty()) body += ',';
            body += it->to_string();
        }
        return "(" + body + ")_" + base_.to_string();
    }

    friend bool operator==(const DigitExpansion&, const DigitExpansion&) = default;

  private:
    Natural base_;
    std::vector<Natural> digits_;
};

/// Weakly decreasing sequence of parts.
class Partition {
  public:
    Partition() = default;
    explicit Partition(std::vector<Natural> parts) : parts_(std::move(parts)) {
        if (!std::is_sorted(parts_.begin(), parts_.end(), std::greater<>{}))
            throw std::domain_error("partition parts must be weakly decreasing");
    }

    std::span<const Natural> parts() const { return parts_; }
    std::size_t size() const { return parts_.size(); }

    Natural weight() const {
        Natural out;
        for (const auto& p : parts_) out += p;
        return out;
    }

    /// Transpose entry t (t >= 1): the number of parts >= t.
    Natural transpose_at(const Natural& t) const {
        // parts are decreasing, so the parts >= t form a prefix
        auto end = std::partition_point(parts_.begin(), parts_.end(), [&](const Natural& p) { return p >= t; });
        return Natural(static_cast<unsigned long>(end - parts_.begin()));
    }

    friend bool operator==(const Partition&, const Partition&) = default;

  private:
    std::vector<Natural> parts_;
};

/**
 * The conjugate of the digit partition: at(t) is the number of digits >= t
 * for t = 1..b-1. at(b) is 0 (no digit reaches b), which lets the j = 0
 * floor sum query index b - 0 with no special case.
 *
 * Only the sorted digits are stored, so a huge base costs nothing until
 * counts() materializes all b-1 entries.
 */
class ConjugateProfile {
  public:
    ConjugateProfile(Natural base, Partition digits) : base_(std::move(base)), digits_(std::move(digits)) {
        detail::require_base(base_);
    }

    const Natural& base() const { return base_; }

    Natural at(const Natural& t) const {
        if (t.is_zero() || t > base_) throw std::out_of_range("conjugate index " + t.to_string() + " outside 1.." + base_.to_string());
        if (t == base_) return Natural();
        return digits_.transpose_at(t);
    }

    /// (at(1), ..., at(b-1)).
    std::vector<Natural> counts() const {
        std::vector<Natural> out;
        out.reserve(base_.to_ulong() - 1);
        for (Natural t(1); t < base_; ++t) out.push_back(at(t));
        return out;
    }

    /// counts() with trailing zeros dropped, i.e. the conjugate as a partition.
    std::vector<Natural> nonzero_counts() const {
        std::vector<Natural> out;
        for (Natural t(1); t < base_; ++t) {
            Natural c = at(t);
            if (c.is_zero()) break;
            out.push_back(std::move(c));
        }
        return out;
    }

    Natural total() const { return digits_.weight(); }

  private:
    Natural base_;
    Partition digits_;
};

inline DigitExpansion expand(const Natural& n, const Natural& b) {
    detail::require_base(b);
    std::vector<Natural> digits;
    Natural rest = n;
    while (!rest.is_zero()) {
        auto [q, r] = divmod(rest, b);
        digits.push_back(std::move(r));
        rest = std::move(q);
    }
    return DigitExpansion(b, std::move(digits));
}

inline Natural digit_sum(const DigitExpansion& e) {
    Natural out;
    for (const auto& d : e.digits()) out += d;
    return out;
}

inline Natural digit_sum(const Natural& n, const Natural& b) { return digit_sum(expand(n, b)); }

inline Natural leading_pos(const DigitExpansion& e) {
    if (e.empty()) throw std::domain_error("leading position is undefined for n = 0");
    return Natural(static_cast<unsigned long>(e.size() - 1));
}

inline Natural leading_pos(const Natural& n, const Natural& b) {
    detail::require_base(b);
    detail::require_positive(n, "leading position");
    return leading_pos(expand(n, b));
}

/// Index of the lowest nonzero digit.
inline std::size_t valuation_index(const DigitExpansion& e) {
    if (e.empty()) throw std::domain_error("valuation is undefined for n = 0");
    std::size_t s = 0;
    while (e.digits()[s].is_zero()) ++s;
    return s;
}

inline Natural valuation(const DigitExpansion& e) { return Natural(static_cast<unsigned long>(valuation_index(e))); }

inline Natural valuation(const Natural& n, const Natural& b) {
    detail::require_base(b);
    detail::require_positive(n, "valuation");
    return valuation(expand(n, b));
}

/// c_{nu_b(n)}, the lowest nonzero digit.
inline Natural lowest_nonzero_digit(const DigitExpansion& e) { return e.digits()[valuation_index(e)]; }

inline Partition partition_of_digits(const DigitExpansion& e) {
    std::vector<Natural> parts(e.digits().begin(), e.digits().end());
    std::sort(parts.begin(), parts.end(), std::greater<>{});
    return Partition(std::move(parts));
}

inline ConjugateProfile conjugate(const DigitExpansion& e) { return ConjugateProfile(e.base(), partition_of_digits(e)); }

}  // namespace radixsum
