#pragma once
// Text forms of laws, root systems and degree ranges.

#include "fgalab/fgl.hpp"
#include "fgalab/rootdata.hpp"

#include <nlohmann/json.hpp>

#include <fstream>
#include <map>
#include <string>
#include <utility>

namespace fgalab {

/// Malformed user input; the CLI maps it to a usage error.
struct UsageError : Error {
    using Error::Error;
};

namespace detail {

inline Integer parse_integer(const std::string &s, const std::string &token) {
    std::size_t i = (!s.empty() && (s[0] == '-' || s[0] == '+')) ? 1 : 0;
    if (i == s.size())
        throw UsageError("expected an integer in '" + token + "'");
    for (std::size_t k = i; k < s.size(); ++k)
        if (s[k] < '0' || s[k] > '9')
            throw UsageError("expected an integer in '" + token + "'");
    return Integer(s[0] == '+' ? s.substr(1) : s);
}

/// "a=1,b=2" -> {a: 1, b: 2}
inline std::map<std::string, Integer> parse_params(const std::string &body, const std::string &token) {
    std::map<std::string, Integer> out;
    std::size_t pos = 0;
    while (pos <= body.size()) {
        auto comma = body.find(',', pos);
        auto item = body.substr(pos, comma == std::string::npos ? std::string::npos : comma - pos);
        auto eq = item.find('=');
        if (eq == std::string::npos || eq == 0)
            throw UsageError("expected key=value in '" + token + "'");
        auto key = item.substr(0, eq);
        if (out.count(key))
            throw UsageError("repeated parameter '" + key + "' in '" + token + "'");
        out[key] = parse_integer(item.substr(eq + 1), token);
        if (comma == std::string::npos)
            break;
        pos = comma + 1;
    }
    return out;
}

inline Integer take(std::map<std::string, Integer> &params, const std::string &key, const std::string &token,
                    bool required) {
    auto it = params.find(key);
    if (it == params.end()) {
        if (required)
            throw UsageError("missing parameter '" + key + "' in '" + token + "'");
        return 0;
    }
    Integer v = it->second;
    params.erase(it);
    return v;
}

inline void require_consumed(const std::map<std::string, Integer> &params, const std::string &token) {
    if (!params.empty())
        throw UsageError("unknown parameter '" + params.begin()->first + "' in '" + token + "'");
}

inline std::map<std::pair<int, int>, Integer> read_table(const std::string &path) {
    std::ifstream in(path);
    if (!in)
        throw UsageError("cannot open coefficient table '" + path + "'");
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception &e) {
        throw UsageError("coefficient table '" + path + "' is not valid JSON: " + e.what());
    }
    if (!j.is_object())
        throw UsageError("coefficient table must map \"i,j\" to coefficients");
    std::map<std::pair<int, int>, Integer> table;
    for (const auto &[key, val] : j.items()) {
        auto comma = key.find(',');
        if (comma == std::string::npos)
            throw UsageError("table key '" + key + "' is not of the form i,j");
        int i = 0, k = 0;
        try {
            i = std::stoi(key.substr(0, comma));
            k = std::stoi(key.substr(comma + 1));
        } catch (const std::exception &) {
            throw UsageError("table key '" + key + "' is not of the form i,j");
        }
        std::string text = val.is_string() ? val.get<std::string>() : val.dump();
        table[{i, k}] = parse_integer(text, key);
    }
    return table;
}

} // namespace detail

/// Integer-coefficient law from "additive", "multiplicative:a=<int>",
/// "lorentz:beta=<int>", "elliptic:a1=..,a2=..,a3=..,a4=..,a6=.." (missing
/// a_i are 0) or "table:<path>".
inline FormalGroupLaw<Integer> parse_fgl(const std::string &spec, int trunc) {
    const IntegerRing ring;
    auto colon = spec.find(':');
    auto head = spec.substr(0, colon);
    auto body = colon == std::string::npos ? std::string{} : spec.substr(colon + 1);
    if (head == "additive") {
        if (colon != std::string::npos)
            throw UsageError("additive takes no parameters: '" + spec + "'");
        return make_additive<Integer>(ring, trunc);
    }
    if (head == "table") {
        if (body.empty())
            throw UsageError("table needs a path: '" + spec + "'");
        return law_from_table(detail::read_table(body), trunc, spec);
    }
    if (colon == std::string::npos)
        throw UsageError("unknown formal group law '" + spec + "'");
    auto params = detail::parse_params(body, spec);
    if (head == "multiplicative") {
        auto a = detail::take(params, "a", spec, true);
        detail::require_consumed(params, spec);
        return make_multiplicative<Integer>(a, ring, trunc);
    }
    if (head == "lorentz") {
        auto b = detail::take(params, "beta", spec, true);
        detail::require_consumed(params, spec);
        return make_lorentz<Integer>(b, ring, trunc);
    }
    if (head == "elliptic") {
        WeierstrassCoefficients<Integer> w{detail::take(params, "a1", spec, false),
                                           detail::take(params, "a2", spec, false),
                                           detail::take(params, "a3", spec, false),
                                           detail::take(params, "a4", spec, false),
                                           detail::take(params, "a6", spec, false)};
        detail::require_consumed(params, spec);
        auto name = "elliptic:a1=" + w.a1.get_str() + ",a2=" + w.a2.get_str() + ",a3=" + w.a3.get_str() +
                    ",a4=" + w.a4.get_str() + ",a6=" + w.a6.get_str();
        return make_elliptic<Integer>(w, ring, trunc, name);
    }
    throw UsageError("unknown formal group law '" + spec + "'");
}

inline RootSystem parse_root_system(const std::string &spec) {
    try {
        return RootSystem::parse(spec);
    } catch (const Error &e) {
        throw UsageError(e.what());
    }
}

/// "a..b" or a single "d"; "n" stands for the rank when one is given.
inline std::pair<int, int> parse_degrees(const std::string &spec, int rank = 0) {
    auto one = [&](const std::string &s) {
        if (s == "n") {
            if (rank <= 0)
                throw UsageError("'n' needs a root system");
            return rank;
        }
        auto v = detail::parse_integer(s, spec);
        if (!v.fits_sint_p() || v < 0)
            throw UsageError("degree out of range in '" + spec + "'");
        return static_cast<int>(v.get_si());
    };
    auto dots = spec.find("..");
    if (dots == std::string::npos) {
        int d = one(spec);
        return {d, d};
    }
    return {one(spec.substr(0, dots)), one(spec.substr(dots + 2))};
}

} // namespace fgalab
