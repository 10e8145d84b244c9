#pragma once

// radixsum command-line front end: digits, eval, verify, table.
//
// Exit codes: 0 success, 1 verification mismatch, 2 usage or domain error.

#include <radixsum/bigmath.hpp>
#include <radixsum/identities.hpp>
#include <radixsum/oracle.hpp>
#include <radixsum/radix.hpp>
#include <radixsum/record.hpp>
#include <radixsum/sum_spec.hpp>
#include <radixsum/verify.hpp>

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <iomanip>
#include <optional>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace radixsum::cli {

inline constexpr int kOk = 0;
inline constexpr int kMismatch = 1;
inline constexpr int kUsage = 2;

/// Thrown for malformed arguments; maps to exit code 2.
struct UsageError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

enum class Mode { closed, direct, both };

struct Range {
    Natural first;
    Natural last;
};

/// "a..b" or a single "a".
inline Range parse_range(const std::string& text) {
    const auto dots = text.find("..");
    try {
        if (dots == std::string::npos) {
            Natural v = Natural::parse(text);
            return {v, v};
        }
        Range r{Natural::parse(text.substr(0, dots)), Natural::parse(text.substr(dots + 2))};
        if (r.last < r.first) throw UsageError("empty range '" + text + "'");
        return r;
    } catch (const UsageError&) {
        throw;
    } catch (const std::exception&) {
        throw UsageError("bad range '" + text + "', expected a..b");
    }
}

inline std::vector<Natural> parse_bases(const std::string& text) {
    std::vector<Natural> out;
    std::stringstream ss(text);
    for (std::string item; std::getline(ss, item, ',');) {
        try {
            out.push_back(Natural::parse(item));
        } catch (const std::exception&) {
            throw UsageError("bad base '" + item + "'");
        }
        if (out.back() < Natural(2)) throw UsageError("base must be >= 2, got " + item);
    }
    if (out.empty()) throw UsageError("no bases given");
    return out;
}

inline Mode parse_mode(const std::string& s) {
    if (s == "closed") return Mode::closed;
    if (s == "direct") return Mode::direct;
    if (s == "both") return Mode::both;
    throw UsageError("unknown mode '" + s + "', expected closed, direct or both");
}

/// "floor", "floor-double", ... -> family and scope. An explicit scope wins over the suffix.
inline std::pair<Family, Scope> parse_family_name(const std::string& name, const std::string& scope_text) {
    std::string base_name = name;
    Scope scope = Scope::single;
    if (constexpr std::string_view suffix = "-double"; name.size() > suffix.size() && name.ends_with(suffix)) {
        base_name = name.substr(0, name.size() - suffix.size());
        scope = Scope::all_j;
    }
    auto family = parse_family(base_name);
    if (!family) throw UsageError("unknown family '" + name + "'");
    if (!scope_text.empty()) {
        auto s = parse_scope(scope_text);
        if (!s) throw UsageError("unknown scope '" + scope_text + "', expected single or double");
        scope = *s;
    }
    return {*family, scope};
}

inline Natural parse_natural_arg(const std::string& text, const char* what) {
    try {
        return Natural::parse(text);
    } catch (const std::exception&) {
        throw UsageError(std::string("bad ") + what + " '" + text + "'");
    }
}

inline Rational parse_rational_arg(const std::string& text) {
    try {
        return Rational::parse(text);
    } catch (const std::exception&) {
        throw UsageError("bad rational '" + text + "', expected p/q or a terminating decimal");
    }
}

/// Evaluates one SumSpec into a record. Domain errors propagate as std::domain_error.
inline OutputRecord evaluate(const std::string& command, const SumSpec& spec, Mode mode) {
    spec.validate();
    OutputRecord r;
    r.command = command;
    r.family = spec.family;
    r.scope = spec.scope;
    r.base = spec.base;
    r.j = spec.j;
    if (spec.family == Family::ceil)
        r.x = spec.arg;
    else
        r.n = spec.n();

    const bool empty_sum = (spec.family == Family::frac || spec.family == Family::sawtooth) && spec.n().is_zero();
    if (empty_sum) {
        if (mode != Mode::direct) r.closed_value = Rational();
        if (mode != Mode::closed) r.direct_value = Rational();
        r.notes.push_back("n = 0: the sum over 0 <= k <= log_b n is empty, so its value is 0; the closed form needs n >= 1");
    } else {
        if (mode != Mode::direct) r.closed_value = evaluate_closed(spec);
        if (mode != Mode::closed) r.direct_value = oracle::evaluate_direct(spec);
    }
    if (mode == Mode::both) r.match = *r.closed_value == *r.direct_value;

    if (spec.family == Family::ceil) {
        const Natural n = ceiling(spec.arg).to_natural();
        const Natural m = leading_pos(n, spec.base);
        if (ilog(spec.base, spec.arg) + Natural(1) == m) {
            std::string note = "ceil(x) = " + n.to_string() + " = b^" + m.to_string() +
                               " with x not an integer: the sum has only " + m.to_string() + " terms";
            if (spec.scope == Scope::single)
                note += "; the leading-digit expression gives " +
                        ceil_sum_uncorrected(spec.arg, spec.base, *spec.j).to_string() + ", corrected by -1";
            else
                note += "; (b-1)(m+1)+n-1 gives " + ceil_double_sum_leading_form(spec.arg, spec.base).to_string() +
                        ", (b-1)(floor(log_b x)+1)+ceil(x)-1 is used";
            r.notes.push_back(std::move(note));
        }
    }
    if (spec.family == Family::sawtooth && spec.scope == Scope::single && !empty_sum) {
        if (auto k = oracle::integer_term_locator(spec.n(), spec.base, *spec.j))
            r.notes.push_back("the k = " + k->to_string() + " term is an integer and contributes 0");
    }
    return r;
}

inline std::string input_text(const OutputRecord& r) {
    if (r.x) return "x=" + r.x->to_string();
    if (r.n) return "n=" + r.n->to_string();
    return "";
}

inline void print_text(std::ostream& out, const OutputRecord& r) {
    out << r.command;
    if (r.family) out << ' ' << to_string(*r.family) << ' ' << to_string(*r.scope);
    if (!input_text(r).empty()) out << ' ' << input_text(r);
    out << " b=" << r.base;
    if (r.j) out << " j=" << *r.j;
    out << '\n';
    if (r.digits) {
        const auto& d = *r.digits;
        auto list = [](const std::vector<Natural>& v) {
            std::string s = "(";
            for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + v[i].to_string();
            return s + ")";
        };
        out << "expansion: " << d.expansion << '\n'
            << "digit sum: " << d.digit_sum << '\n'
            << "leading position m: " << (d.leading_pos ? d.leading_pos->to_string() : "undefined") << '\n'
            << "valuation nu: " << (d.valuation ? d.valuation->to_string() : "undefined") << '\n'
            << "partition: " << list(d.partition) << '\n'
            << "conjugate: " << list(d.conjugate) << '\n';
    }
    if (r.closed_value) out << "closed: " << *r.closed_value << '\n';
    if (r.direct_value) out << "direct: " << *r.direct_value << '\n';
    if (r.match) out << "match: " << (*r.match ? "yes" : "NO") << '\n';
    for (const auto& note : r.notes) out << "note: " << note << '\n';
}

inline void emit(std::ostream& out, const OutputRecord& r, const std::string& format) {
    if (format == "json")
        out << nlohmann::json(r).dump(2) << '\n';
    else
        print_text(out, r);
}

inline void require_format(const std::string& format, std::initializer_list<std::string_view> allowed) {
    if (std::find(allowed.begin(), allowed.end(), format) == allowed.end())
        throw UsageError("unknown format '" + format + "'");
}

// --- table rendering -------------------------------------------------------

inline std::vector<std::string> table_row(const OutputRecord& r) {
    auto opt = [](const auto& v) { return v ? v->to_string() : std::string(); };
    return {std::string(to_string(*r.family)),
            std::string(to_string(*r.scope)),
            r.base.to_string(),
            opt(r.j),
            r.x ? r.x->to_string() : opt(r.n),
            opt(r.closed_value),
            opt(r.direct_value),
            r.match ? (*r.match ? "true" : "false") : ""};
}

inline const std::vector<std::string>& table_header() {
    static const std::vector<std::string> h = {"family", "scope", "base", "j", "input", "closed", "direct", "match"};
    return h;
}

inline void render_table(std::ostream& out, const std::vector<OutputRecord>& records, const std::string& format) {
    if (format == "json") {
        out << nlohmann::json(records).dump(2) << '\n';
        return;
    }
    std::vector<std::vector<std::string>> rows;
    rows.reserve(records.size());
    for (const auto& r : records) rows.push_back(table_row(r));
    const auto& header = table_header();
    if (format == "csv") {
        auto line = [&](const std::vector<std::string>& cells) {
            for (std::size_t i = 0; i < cells.size(); ++i) out << (i ? "," : "") << cells[i];
            out << '\n';
        };
        line(header);
        for (const auto& row : rows) line(row);
        return;
    }
    if (format == "md") {
        auto line = [&](const std::vector<std::string>& cells) {
            out << '|';
            for (const auto& c : cells) out << ' ' << c << " |";
            out << '\n';
        };
        line(header);
        out << '|';
        for (std::size_t i = 0; i < header.size(); ++i) out << " --- |";
        out << '\n';
        for (const auto& row : rows) line(row);
        return;
    }
    // text: space-aligned columns
    std::vector<std::size_t> width(header.size());
    for (std::size_t i = 0; i < header.size(); ++i) width[i] = header[i].size();
    for (const auto& row : rows)
        for (std::size_t i = 0; i < row.size(); ++i) width[i] = std::max(width[i], row[i].size());
    auto line = [&](const std::vector<std::string>& cells) {
        std::string s;
        for (std::size_t i = 0; i < cells.size(); ++i) {
            s += cells[i];
            if (i + 1 < cells.size()) s += std::string(width[i] - cells[i].size() + 2, ' ');
        }
        while (!s.empty() && s.back() == ' ') s.pop_back();
        out << s << '\n';
    };
    line(header);
    for (const auto& row : rows) line(row);
}

// --- verify rendering ------------------------------------------------------

inline void render_summary(std::ostream& out, const SweepSummary& s, const std::string& format) {
    if (format == "json") {
        nlohmann::json j;
        j["checks"] = s.total_checks();
        j["mismatches"] = s.total_mismatches();
        auto cats = nlohmann::json::array();
        for (const auto& t : s.tallies)
            cats.push_back({{"name", std::string(t.name)}, {"checks", t.checks}, {"mismatches", t.mismatches}});
        j["categories"] = cats;
        j["first_mismatch"] = s.first_mismatch ? nlohmann::json(*s.first_mismatch) : nlohmann::json(nullptr);
        out << j.dump(2) << '\n';
        return;
    }
    for (const auto& t : s.tallies)
        out << std::left << std::setw(16) << t.name << " checks=" << std::setw(10) << t.checks
            << " mismatches=" << t.mismatches << '\n';
    out << "total: " << s.total_checks() << " checks, " << s.total_mismatches() << " mismatches\n";
    if (s.first_mismatch) out << "first mismatch: " << *s.first_mismatch << '\n';
}

// --- entry point -----------------------------------------------------------

/// Runs the CLI on args (program name excluded).
inline int run(std::vector<std::string> args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Closed forms and brute-force checks for floor, ceiling, fractional-part and sawtooth digit sums"};
    app.name("radixsum");
    app.require_subcommand(1);

    std::string n_text, x_text, base_text, j_text, family_text, scope_text, mode_text = "closed", format = "text";
    std::string range_text = "0..256", bases_text = "2,3,4,5,6,7,8,9,10,16", xden_text;
    std::uint64_t seed = 1;
    std::size_t count = 0;
    bool no_edge = false;

    auto* digits = app.add_subcommand("digits", "Show the b-ary expansion and digit statistics of n");
    digits->add_option("--n", n_text, "Nonnegative integer n")->required();
    digits->add_option("--base", base_text, "Base b >= 2")->required();
    digits->add_option("--format", format, "text or json");

    auto* eval = app.add_subcommand("eval", "Evaluate one sum in closed form and/or by direct summation");
    eval->add_option("--family", family_text, "floor, ceil, frac, sawtooth (optionally with -double)")->required();
    eval->add_option("--scope", scope_text, "single or double");
    eval->add_option("--n", n_text, "Nonnegative integer n");
    eval->add_option("--x", x_text, "Rational x >= 1 (ceil family): p/q or a terminating decimal");
    eval->add_option("--base", base_text, "Base b >= 2")->required();
    eval->add_option("--j", j_text, "Shift j (single scope)");
    eval->add_option("--mode", mode_text, "closed, direct or both");
    eval->add_option("--format", format, "text or json");

    auto* verify = app.add_subcommand("verify", "Compare every closed form with its oracle over a sweep");
    verify->add_option("--n", range_text, "Range a..b of n (default 0..256)");
    verify->add_option("--bases", bases_text, "Comma-separated bases");
    verify->add_option("--x-den", xden_text, "Denominator d of the rational grid t/d for the ceil family");
    verify->add_option("--seed", seed, "Seed for the random 256-bit inputs");
    verify->add_option("--count", count, "Random 256-bit n per base");
    verify->add_flag("--no-edge", no_edge, "Skip the x = b^m - 1/2 edge family");
    verify->add_option("--format", format, "text or json");

    auto* table = app.add_subcommand("table", "Tabulate one family over a range of n or a grid of x");
    table->add_option("--family", family_text, "floor, ceil, frac, sawtooth (optionally with -double)")->required();
    table->add_option("--scope", scope_text, "single or double");
    table->add_option("--base", base_text, "Base b >= 2")->required();
    table->add_option("--n", range_text, "Range a..b of n (ceil family: range of x)");
    table->add_option("--x-den", xden_text, "Ceil family: tabulate x = t/d over the range");
    table->add_option("--j", j_text, "Shift j for single scope (default 1)");
    table->add_option("--mode", mode_text, "closed, direct or both");
    table->add_option("--format", format, "text, csv, md or json");

    std::reverse(args.begin(), args.end());
    try {
        app.parse(args);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e, out, err);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e, out, err);
    } catch (const CLI::ParseError& e) {
        app.exit(e, out, err);
        return kUsage;
    }

    try {
        if (digits->parsed()) {
            require_format(format, {"text", "json"});
            const Natural b = parse_natural_arg(base_text, "base");
            if (b < Natural(2)) throw UsageError("base must be >= 2");
            OutputRecord r;
            r.command = "digits";
            r.n = parse_natural_arg(n_text, "n");
            r.base = b;
            r.digits = digit_info(*r.n, b);
            emit(out, r, format);
            return kOk;
        }

        if (eval->parsed()) {
            require_format(format, {"text", "json"});
            auto [family, scope] = parse_family_name(family_text, scope_text);
            const Mode mode = parse_mode(mode_text);
            SumSpec spec;
            spec.family = family;
            spec.scope = scope;
            spec.base = parse_natural_arg(base_text, "base");
            if (!x_text.empty() && !n_text.empty()) throw UsageError("give --n or --x, not both");
            if (!x_text.empty()) {
                if (family != Family::ceil) throw UsageError("--x is only accepted by the ceil family");
                spec.arg = parse_rational_arg(x_text);
            } else if (!n_text.empty()) {
                spec.arg = Rational(parse_natural_arg(n_text, "n"));
            } else {
                throw UsageError(family == Family::ceil ? "--x or --n is required" : "--n is required");
            }
            if (scope == Scope::single) {
                if (j_text.empty()) throw UsageError("--j is required for single-j sums");
                spec.j = parse_natural_arg(j_text, "j");
            } else if (!j_text.empty()) {
                throw UsageError("double sums take no --j");
            }
            const OutputRecord r = evaluate("eval", spec, mode);
            emit(out, r, format);
            return r.match.value_or(true) ? kOk : kMismatch;
        }

        if (verify->parsed()) {
            require_format(format, {"text", "json"});
            const Range range = parse_range(range_text);
            SweepConfig cfg;
            cfg.n_first = range.first;
            cfg.n_last = range.last;
            cfg.bases = parse_bases(bases_text);
            if (!xden_text.empty()) {
                cfg.x_den = parse_natural_arg(xden_text, "x-den");
                if (cfg.x_den->is_zero()) throw UsageError("--x-den must be >= 1");
            }
            cfg.edge_family = !no_edge;
            cfg.seed = seed;
            cfg.random_count = count;
            cfg.threads = threads_from_env();
            const SweepSummary summary = run_sweep(cfg);
            render_summary(out, summary, format);
            return summary.total_mismatches() == 0 ? kOk : kMismatch;
        }

        if (table->parsed()) {
            require_format(format, {"text", "csv", "md", "json"});
            auto [family, scope] = parse_family_name(family_text, scope_text);
            const Mode mode = parse_mode(mode_text);
            const Natural b = parse_natural_arg(base_text, "base");
            const Range range = parse_range(range_text);
            std::optional<Natural> j;
            if (scope == Scope::single) j = j_text.empty() ? Natural(1) : parse_natural_arg(j_text, "j");
            else if (!j_text.empty()) throw UsageError("double sums take no --j");

            std::vector<Rational> inputs;
            if (!xden_text.empty()) {
                if (family != Family::ceil) throw UsageError("--x-den is only accepted by the ceil family");
                const Natural d = parse_natural_arg(xden_text, "x-den");
                if (d.is_zero()) throw UsageError("--x-den must be >= 1");
                for (Natural t = range.first * d; t <= range.last * d; ++t) inputs.emplace_back(Integer(t), Integer(d));
            } else {
                for (Natural v = range.first; v <= range.last; ++v) inputs.emplace_back(v);
            }
            std::vector<OutputRecord> records;
            records.reserve(inputs.size());
            bool all_match = true;
            for (const auto& arg : inputs) {
                records.push_back(evaluate("table", SumSpec{family, scope, arg, b, j}, mode));
                all_match = all_match && records.back().match.value_or(true);
            }
            render_table(out, records, format);
            return all_match ? kOk : kMismatch;
        }
    } catch (const std::invalid_argument& e) {
        err << "error: " << e.what() << '\n';
        return kUsage;
    } catch (const std::domain_error& e) {
        err << "error: " << e.what() << '\n';
        return kUsage;
    } catch (const std::logic_error& e) {
        // a broken postcondition in a closed form or oracle
        err << "internal check failed: " << e.what() << '\n';
        return kMismatch;
    }
    return kUsage;
}

}  // namespace radixsum::cli
