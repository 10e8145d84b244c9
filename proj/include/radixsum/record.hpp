#pragma once

/**
 * @file record.hpp
 * @brief OutputRecord, the unit the CLI prints, and its JSON form.
 *
 * Every key is always present; absent values are null. Numbers are exact
 * decimal strings, rationals are "p/q" (or "p" when the denominator is 1):
 *
 *   {
 *     "command": "eval",
 *     "inputs": {"family": "floor", "scope": "single", "n": "1024", "x": null,
 *                "base": "3", "j": "1"},
 *     "closed_value": "510", "direct_value": "510", "match": true,
 *     "digits": {"expansion": "(1101221)_3", "digit_sum": "8", "leading_pos": "6",
 *                "valuation": "0", "partition": ["2", ...], "conjugate": ["6", "2"]},
 *     "notes": []
 *   }
 */

#include <radixsum/bigmath.hpp>
#include <radixsum/radix.hpp>
#include <radixsum/sum_spec.hpp>

#include <json.hpp>

#include <optional>
#include <string>
#include <vector>

namespace radixsum {

struct DigitInfo {
    std::string expansion;
    Natural digit_sum;
    std::optional<Natural> leading_pos;
    std::optional<Natural> valuation;
    std::vector<Natural> partition;
    std::vector<Natural> conjugate;

    friend bool operator==(const DigitInfo&, const DigitInfo&) = default;
};

inline DigitInfo digit_info(const Natural& n, const Natural& b) {
    const DigitExpansion e = expand(n, b);
    DigitInfo info;
    info.expansion = e.to_string();
    info.digit_sum = radixsum::digit_sum(e);
    if (!e.empty()) {
        info.leading_pos = radixsum::leading_pos(e);
        info.valuation = radixsum::valuation(e);
    }
    const Partition p = partition_of_digits(e);
    info.partition.assign(p.parts().begin(), p.parts().end());
    info.conjugate = radixsum::conjugate(e).nonzero_counts();
    return info;
}

struct OutputRecord {
    std::string command;
    std::optional<Family> family;
    std::optional<Scope> scope;
    std::optional<Natural> n;
    std::optional<Rational> x;
    Natural base{2};
    std::optional<Natural> j;
    std::optional<Rational> closed_value;
    std::optional<Rational> direct_value;
    std::optional<bool> match;
    std::optional<DigitInfo> digits;
    std::vector<std::string> notes;

    friend bool operator==(const OutputRecord&, const OutputRecord&) = default;
};

namespace detail {

template <typename T>
nlohmann::json opt_string(const std::optional<T>& v) {
    if (!v) return nullptr;
    if constexpr (std::is_same_v<T, Family> || std::is_same_v<T, Scope>)
        return std::string(to_string(*v));
    else
        return v->to_string();
}

inline nlohmann::json string_list(const std::vector<Natural>& v) {
    auto out = nlohmann::json::array();
    for (const auto& x : v) out.push_back(x.to_string());
    return out;
}

inline std::vector<Natural> natural_list(const nlohmann::json& j) {
    std::vector<Natural> out;
    for (const auto& x : j) out.push_back(Natural::parse(x.get<std::string>()));
    return out;
}

template <typename T, typename Parse>
std::optional<T> read_opt(const nlohmann::json& j, const char* key, Parse parse) {
    const auto& v = j.at(key);
    if (v.is_null()) return std::nullopt;
    return parse(v.get<std::string>());
}

}  // namespace detail

inline void to_json(nlohmann::json& j, const DigitInfo& d) {
    j = nlohmann::json{{"expansion", d.expansion},
                       {"digit_sum", d.digit_sum.to_string()},
                       {"leading_pos", detail::opt_string(d.leading_pos)},
                       {"valuation", detail::opt_string(d.valuation)},
                       {"partition", detail::string_list(d.partition)},
                       {"conjugate", detail::string_list(d.conjugate)}};
}

inline void from_json(const nlohmann::json& j, DigitInfo& d) {
    auto nat = [](const std::string& s) { return Natural::parse(s); };
    d.expansion = j.at("expansion").get<std::string>();
    d.digit_sum = Natural::parse(j.at("digit_sum").get<std::string>());
    d.leading_pos = detail::read_opt<Natural>(j, "leading_pos", nat);
    d.valuation = detail::read_opt<Natural>(j, "valuation", nat);
    d.partition = detail::natural_list(j.at("partition"));
    d.conjugate = detail::natural_list(j.at("conjugate"));
}

inline void to_json(nlohmann::json& j, const OutputRecord& r) {
    j = nlohmann::json{
        {"command", r.command},
        {"inputs",
         {{"family", detail::opt_string(r.family)},
          {"scope", detail::opt_string(r.scope)},
          {"n", detail::opt_string(r.n)},
          {"x", detail::opt_string(r.x)},
          {"base", r.base.to_string()},
          {"j", detail::opt_string(r.j)}}},
        {"closed_value", detail::opt_string(r.closed_value)},
        {"direct_value", detail::opt_string(r.direct_value)},
        {"match", r.match ? nlohmann::json(*r.match) : nlohmann::json(nullptr)},
        {"digits", r.digits ? nlohmann::json(*r.digits) : nlohmann::json(nullptr)},
        {"notes", r.notes},
    };
}

inline void from_json(const nlohmann::json& j, OutputRecord& r) {
    auto nat = [](const std::string& s) { return Natural::parse(s); };
    auto rat = [](const std::string& s) { return Rational::parse(s); };
    auto family = [](const std::string& s) {
        auto f = parse_family(s);
        if (!f) throw std::invalid_argument("unknown family '" + s + "'");
        return *f;
    };
    auto scope = [](const std::string& s) {
        auto v = parse_scope(s);
        if (!v) throw std::invalid_argument("unknown scope '" + s + "'");
        return *v;
    };
    const auto& in = j.at("inputs");
    r.command = j.at("command").get<std::string>();
    r.family = detail::read_opt<Family>(in, "family", family);
    r.scope = detail::read_opt<Scope>(in, "scope", scope);
    r.n = detail::read_opt<Natural>(in, "n", nat);
    r.x = detail::read_opt<Rational>(in, "x", rat);
    r.base = Natural::parse(in.at("base").get<std::string>());
    r.j = detail::read_opt<Natural>(in, "j", nat);
    r.closed_value = detail::read_opt<Rational>(j, "closed_value", rat);
    r.direct_value = detail::read_opt<Rational>(j, "direct_value", rat);
    r.match = j.at("match").is_null() ? std::nullopt : std::optional<bool>(j.at("match").get<bool>());
    r.digits = j.at("digits").is_null() ? std::nullopt : std::optional<DigitInfo>(j.at("digits").get<DigitInfo>());
    r.notes = j.at("notes").get<std::vector<std::string>>();
}

}  // namespace radixsum
