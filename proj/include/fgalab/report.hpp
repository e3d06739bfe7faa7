#pragma once
// Structured pass/fail records tying a claim to computed witnesses.

#include "fgalab/exactnum.hpp"

#include <nlohmann/json.hpp>

#include <string>
#include <vector>

namespace fgalab {

enum class Status { pass, fail, not_applicable };

inline std::string to_string(Status s) {
    switch (s) {
    case Status::pass:
        return "pass";
    case Status::fail:
        return "fail";
    case Status::not_applicable:
        return "not-applicable";
    }
    return "?";
}

struct Check {
    std::string name;
    Status status = Status::pass;
    std::string detail;
};

struct Instance {
    std::string type; // "B", "D" or empty for root-system free checks
    int rank = 0;
    int degree = 0;
    std::vector<std::string> fgls;
    int trunc = 0;
};

struct VerificationReport {
    std::string suite;
    Instance instance;
    std::vector<Check> checks;
    nlohmann::json computed = nlohmann::json::object();
    nlohmann::json bound = nullptr;
    std::vector<std::string> caveats;

    void add(std::string name, bool ok, std::string detail = {}) {
        checks.push_back({std::move(name), ok ? Status::pass : Status::fail, std::move(detail)});
    }
    void add_not_applicable(std::string name, std::string detail) {
        checks.push_back({std::move(name), Status::not_applicable, std::move(detail)});
    }

    /// fail if any check failed; not-applicable only if nothing was checked.
    Status status() const {
        bool any_pass = false;
        for (const auto &c : checks) {
            if (c.status == Status::fail)
                return Status::fail;
            any_pass |= c.status == Status::pass;
        }
        return any_pass ? Status::pass : Status::not_applicable;
    }
    bool passed() const { return status() != Status::fail; }

    const Check *find(const std::string &name) const {
        for (const auto &c : checks)
            if (c.name == name)
                return &c;
        return nullptr;
    }
};

/// Integers that fit in 64 bits are emitted as JSON numbers, others as strings.
inline nlohmann::json int_json(const Integer &z) {
    if (z.fits_slong_p())
        return z.get_si();
    return z.get_str();
}

inline nlohmann::json to_json(const VerificationReport &r) {
    nlohmann::json checks = nlohmann::json::array();
    for (const auto &c : r.checks)
        checks.push_back({{"name", c.name}, {"status", to_string(c.status)}, {"detail", c.detail}});
    nlohmann::json inst = {{"type", r.instance.type},
                           {"rank", r.instance.rank},
                           {"degree", r.instance.degree},
                           {"fgl", r.instance.fgls},
                           {"trunc", r.instance.trunc}};
    return {{"suite", r.suite},     {"instance", inst},   {"status", to_string(r.status())},
            {"checks", checks},     {"computed", r.computed}, {"paper_bound", r.bound},
            {"caveats", r.caveats}};
}

} // namespace fgalab
