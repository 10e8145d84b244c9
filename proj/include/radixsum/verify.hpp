#pragma once

/**
 * @file verify.hpp
 * @brief Closed form vs. oracle comparison, singly and over sweeps.
 *
 * check() pairs one closed-form evaluation with its brute-force twin.
 * run_sweep() drives every family over a range of n, a grid of rational x,
 * the ceiling edge family x = b^m - 1/2 and seeded random 256-bit n, and
 * tallies mismatches per category. Work fans out over threads but the
 * tallies and the reported first mismatch depend only on the inputs.
 */

#include <radixsum/bigmath.hpp>
#include <radixsum/identities.hpp>
#include <radixsum/oracle.hpp>
#include <radixsum/radix.hpp>
#include <radixsum/sum_spec.hpp>

#include <algorithm>
#include <array>
#include <atomic>
#include <cstdint>
#include <cstdlib>
#include <functional>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <string_view>
#include <thread>
#include <vector>

namespace radixsum {

struct OracleReport {
    SumSpec spec;
    std::optional<Rational> direct_value;
    std::optional<Rational> closed_value;
    bool match = false;
    std::string error;  // set when either side threw
};

inline std::string describe(const SumSpec& spec) {
    std::ostringstream os;
    os << to_string(spec.family) << '/' << to_string(spec.scope) << ' '
       << (spec.family == Family::ceil ? "x=" : "n=") << spec.arg << " b=" << spec.base;
    if (spec.j) os << " j=" << *spec.j;
    return os.str();
}

inline OracleReport check(const SumSpec& spec) {
    OracleReport report{spec, std::nullopt, std::nullopt, false, {}};
    try {
        report.closed_value = evaluate_closed(spec);
        report.direct_value = oracle::evaluate_direct(spec);
        report.match = *report.closed_value == *report.direct_value;
    } catch (const std::exception& e) {
        report.error = e.what();
    }
    return report;
}

inline bool is_prime(const Natural& p) {
    return p >= Natural(2) && mpz_probab_prime_p(p.mpz().get_mpz_t(), 30) > 0;
}

enum class Category : std::size_t {
    floor_single,
    floor_double,
    legendre,
    ceil_integer,
    ceil_rational,
    ceil_edge,
    ceil_double,
    frac_single,
    frac_double,
    sawtooth_single,
    sawtooth_double,
    integer_term,
    random_256,
    count_
};

inline constexpr std::size_t kCategoryCount = static_cast<std::size_t>(Category::count_);

inline constexpr std::array<std::string_view, kCategoryCount> kCategoryNames = {
    "floor",        "floor-double", "legendre", "ceil-integer", "ceil-rational",   "ceil-edge",    "ceil-double",
    "frac",         "frac-double",  "sawtooth", "sawtooth-double", "integer-term", "random-256",
};

struct SweepConfig {
    Natural n_first;
    Natural n_last{256};
    std::vector<Natural> bases;
    std::optional<Natural> x_den;  // rational grid t / x_den over [max(1, n_first), n_last]
    bool edge_family = true;       // x = b^m - 1/2, m = 1..4
    std::uint64_t seed = 1;
    std::size_t random_count = 0;  // random 256-bit n per base
    std::size_t legendre_limit = 1024;  // factorial oracle is O(n); cap the n it runs on
    unsigned threads = 1;
};

struct CategoryTally {
    std::string_view name;
    std::uint64_t checks = 0;
    std::uint64_t mismatches = 0;
};

struct SweepSummary {
    std::array<CategoryTally, kCategoryCount> tallies{};
    std::optional<std::string> first_mismatch;

    std::uint64_t total_checks() const {
        std::uint64_t t = 0;
        for (const auto& c : tallies) t += c.checks;
        return t;
    }
    std::uint64_t total_mismatches() const {
        std::uint64_t t = 0;
        for (const auto& c : tallies) t += c.mismatches;
        return t;
    }
};

namespace detail {

struct UnitResult {
    std::array<std::uint64_t, kCategoryCount> checks{};
    std::array<std::uint64_t, kCategoryCount> mismatches{};
    std::optional<std::string> first;

    void record(Category c, bool ok, const std::function<std::string()>& what) {
        const auto i = static_cast<std::size_t>(c);
        ++checks[i];
        if (ok) return;
        ++mismatches[i];
        if (!first) first = std::string(kCategoryNames[i]) + ": " + what();
    }

    void record(Category c, const OracleReport& r) {
        record(c, r.match, [&] {
            std::string out = describe(r.spec);
            if (!r.error.empty()) return out + " threw: " + r.error;
            return out + " closed=" + r.closed_value->to_string() + " direct=" + r.direct_value->to_string();
        });
    }

    /// Runs fn, counting a thrown exception as a mismatch.
    void guarded(Category c, const std::string& label, const std::function<bool()>& fn) {
        std::string error;
        bool ok = false;
        try {
            ok = fn();
        } catch (const std::exception& e) {
            error = e.what();
        }
        record(c, ok, [&] { return error.empty() ? label : label + " threw: " + error; });
    }
};

inline SumSpec single_spec(Family f, const Rational& arg, const Natural& b, const Natural& j) {
    return SumSpec{f, Scope::single, arg, b, j};
}

inline SumSpec double_spec(Family f, const Rational& arg, const Natural& b) {
    return SumSpec{f, Scope::all_j, arg, b, std::nullopt};
}

/// j-sum of the closed single forms equals the closed double form equals the oracle.
inline void check_double(UnitResult& out, Category c, Family f, const Rational& arg, const Natural& b) {
    const SumSpec spec = double_spec(f, arg, b);
    OracleReport report = check(spec);
    if (report.match) {
        try {
            Rational recomposed;
            for (Natural j(1); j < b; ++j) recomposed += evaluate_closed(single_spec(f, arg, b, j));
            if (recomposed != *report.closed_value) {
                report.match = false;
                report.error = "sum of single closed forms is " + recomposed.to_string();
            }
        } catch (const std::exception& e) {
            report.match = false;
            report.error = e.what();
        }
    }
    out.record(c, report);
}

/// Every check keyed on one integer n and one base.
inline void check_integer(UnitResult& out, const Natural& n, const Natural& b, bool legendre, Category single_override) {
    auto cat = [&](Category c) { return single_override == Category::count_ ? c : single_override; };
    const Rational arg(n);
    for (Natural j; j < b; ++j) out.record(cat(Category::floor_single), check(single_spec(Family::floor, arg, b, j)));
    check_double(out, cat(Category::floor_double), Family::floor, arg, b);
    if (legendre) {
        out.guarded(cat(Category::legendre), "legendre n=" + n.to_string() + " p=" + b.to_string(),
                    [&] { return legendre_valuation(n, b) == oracle::factorial_valuation_direct(n, b); });
    }
    if (n.is_zero()) return;
    for (Natural j(1); j < b; ++j) {
        out.record(cat(Category::ceil_integer), check(single_spec(Family::ceil, arg, b, j)));
        out.record(cat(Category::frac_single), check(single_spec(Family::frac, arg, b, j)));
        out.record(cat(Category::sawtooth_single), check(single_spec(Family::sawtooth, arg, b, j)));
        out.guarded(cat(Category::integer_term),
                    "integer-term n=" + n.to_string() + " b=" + b.to_string() + " j=" + j.to_string(), [&] {
                        (void)oracle::integer_term_locator(n, b, j);
                        return true;
                    });
    }
    check_double(out, cat(Category::ceil_double), Family::ceil, arg, b);
    check_double(out, cat(Category::frac_double), Family::frac, arg, b);
    check_double(out, cat(Category::sawtooth_double), Family::sawtooth, arg, b);
}

/// Ceiling checks for one rational x: every j, the double form, and the leading-digit
/// expression's known offset.
inline void check_rational(UnitResult& out, const Rational& x, const Natural& b, Category c) {
    for (Natural j(1); j < b; ++j) {
        const OracleReport r = check(single_spec(Family::ceil, x, b, j));
        out.record(c, r);
        if (!r.match) continue;
        // The uncorrected expression must be off by exactly [floor(log_b x) = m - 1].
        out.guarded(c, "ceil uncorrected offset x=" + x.to_string() + " b=" + b.to_string() + " j=" + j.to_string(), [&] {
            const Natural n = ceiling(x).to_natural();
            const bool short_sum = ilog(b, x) + Natural(1) == leading_pos(n, b);
            return ceil_sum_uncorrected(x, b, j) == ceil_sum(x, b, j) + iverson(short_sum);
        });
    }
    check_double(out, Category::ceil_double, Family::ceil, x, b);
}

struct Unit {
    enum class Kind { integer, rational, edge, random } kind;
    Rational value;
    Natural base;
};

inline UnitResult run_unit(const Unit& u, const SweepConfig& cfg) {
    UnitResult out;
    switch (u.kind) {
        case Unit::Kind::integer: {
            const Natural n = u.value.numerator().to_natural();
            const bool legendre = is_prime(u.base) && n <= Natural(static_cast<unsigned long>(cfg.legendre_limit));
            check_integer(out, n, u.base, legendre, Category::count_);
            break;
        }
        case Unit::Kind::rational: check_rational(out, u.value, u.base, Category::ceil_rational); break;
        case Unit::Kind::edge: check_rational(out, u.value, u.base, Category::ceil_edge); break;
        case Unit::Kind::random:
            check_integer(out, u.value.numerator().to_natural(), u.base, false, Category::random_256);
            break;
    }
    return out;
}

inline std::vector<Unit> plan_units(const SweepConfig& cfg) {
    std::vector<Unit> units;
    for (const auto& b : cfg.bases) {
        radixsum::detail::require_base(b);
        for (Natural n = cfg.n_first; n <= cfg.n_last; ++n) units.push_back({Unit::Kind::integer, Rational(n), b});
        if (cfg.x_den) {
            const Natural& d = *cfg.x_den;
            if (d.is_zero()) throw std::domain_error("x grid denominator must be >= 1");
            const Natural lo = std::max(cfg.n_first, Natural(1));
            // integer points are already covered by the integer units
            for (Natural t = lo * d; t <= cfg.n_last * d; ++t) {
                Rational x{Integer(t), Integer(d)};
                if (!x.is_integer()) units.push_back({Unit::Kind::rational, std::move(x), b});
            }
        }
        if (cfg.edge_family) {
            for (unsigned long m = 1; m <= 4; ++m)
                units.push_back({Unit::Kind::edge, Rational(pow(b, Natural(m))) - Rational(1, 2), b});
        }
    }
    std::mt19937_64 rng(cfg.seed);
    for (const auto& b : cfg.bases) {
        for (std::size_t i = 0; i < cfg.random_count; ++i) {
            std::array<std::uint64_t, 4> words{};
            for (auto& w : words) w = rng();
            units.push_back({Unit::Kind::random, Rational(Natural::from_words(words)), b});
        }
    }
    return units;
}

}  // namespace detail

/// Thread count from RADIX_VERIFY_THREADS, defaulting to 1.
inline unsigned threads_from_env() {
    const char* raw = std::getenv("RADIX_VERIFY_THREADS");
    if (raw == nullptr || *raw == '\0') return 1;
    char* end = nullptr;
    const unsigned long v = std::strtoul(raw, &end, 10);
    if (*end != '\0' || v == 0) return 1;
    return static_cast<unsigned>(std::min<unsigned long>(v, 256));
}

inline SweepSummary run_sweep(const SweepConfig& cfg) {
    const std::vector<detail::Unit> units = detail::plan_units(cfg);
    std::vector<detail::UnitResult> results(units.size());

    const unsigned workers = std::max(1u, std::min<unsigned>(cfg.threads, static_cast<unsigned>(units.size())));
    std::atomic<std::size_t> next{0};
    auto work = [&] {
        for (std::size_t i = next++; i < units.size(); i = next++) results[i] = detail::run_unit(units[i], cfg);
    };
    if (workers <= 1) {
        work();
    } else {
        std::vector<std::jthread> pool;
        pool.reserve(workers);
        for (unsigned t = 0; t < workers; ++t) pool.emplace_back(work);
    }

    SweepSummary summary;
    for (std::size_t i = 0; i < kCategoryCount; ++i) summary.tallies[i].name = kCategoryNames[i];
    for (const auto& r : results) {
        for (std::size_t i = 0; i < kCategoryCount; ++i) {
            summary.tallies[i].checks += r.checks[i];
            summary.tallies[i].mismatches += r.mismatches[i];
        }
        if (!summary.first_mismatch && r.first) summary.first_mismatch = r.first;
    }
    return summary;
}

}  // namespace radixsum
