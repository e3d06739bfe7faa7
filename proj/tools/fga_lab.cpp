// fga-lab: verification suites and raw computations over formal group algebras.
//
//   fga-lab verify  --rs B3 --fgl additive --suites lemma48,lemma52 --degrees 2..5
//   fga-lab compute tau --rs B3 --from multiplicative:a=1 --to additive --d 2
//   fga-lab report  --rs D4 --fgl additive --degrees 2..5
//
// Exit codes: 0 pass, 1 verification failure, 2 usage error, 3 internal error.

#include "fgalab/suites.hpp"

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include <fstream>
#include <iostream>

using namespace fgalab;

namespace {

enum Exit { kPass = 0, kFail = 1, kUsage = 2, kInternal = 3 };

struct Flags {
    std::string config;
    std::string rs = "B3";
    std::vector<std::string> fgls;
    std::string fgl2;
    std::string d;
    std::string degrees;
    int trunc = 8;
    std::vector<std::string> suites;
    int jobs = 1;
    std::string out;
    std::string format = "json";
    bool allow_low_trunc = false;
    bool stabilize = false;
    long m = 2;
    std::string query;
};

std::vector<std::string> split_commas(const std::string &s) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : s) {
        if (c == ',') {
            if (!cur.empty())
                out.push_back(cur);
            cur.clear();
        } else {
            cur += c;
        }
    }
    if (!cur.empty())
        out.push_back(cur);
    return out;
}

/// Fill every flag the command line left unset from the JSON config file.
void apply_config(Flags &f, const CLI::App &app) {
    if (f.config.empty())
        return;
    std::ifstream in(f.config);
    if (!in)
        throw UsageError("cannot open config '" + f.config + "'");
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception &e) {
        throw UsageError("config '" + f.config + "' is not valid JSON: " + e.what());
    }
    auto unset = [&](const char *flag) { return app.count(flag) == 0; };
    auto strings = [](const nlohmann::json &v) {
        if (v.is_array())
            return v.get<std::vector<std::string>>();
        return std::vector<std::string>{v.get<std::string>()};
    };
    try {
        for (const auto &[key, v] : j.items()) {
            if (key == "rs") {
                if (unset("--rs"))
                    f.rs = v.get<std::string>();
            } else if (key == "fgl") {
                if (unset("--fgl"))
                    f.fgls = strings(v);
            } else if (key == "fgl2") {
                if (unset("--fgl2"))
                    f.fgl2 = v.get<std::string>();
            } else if (key == "d") {
                if (unset("--d"))
                    f.d = v.is_string() ? v.get<std::string>() : v.dump();
            } else if (key == "degrees") {
                if (unset("--degrees"))
                    f.degrees = v.get<std::string>();
            } else if (key == "trunc") {
                if (unset("--trunc"))
                    f.trunc = v.get<int>();
            } else if (key == "suites") {
                if (unset("--suites"))
                    f.suites = v.is_array() ? v.get<std::vector<std::string>>() : split_commas(v.get<std::string>());
            } else if (key == "jobs") {
                if (unset("--jobs"))
                    f.jobs = v.get<int>();
            } else if (key == "out") {
                if (unset("--out"))
                    f.out = v.get<std::string>();
            } else if (key == "format") {
                if (unset("--format"))
                    f.format = v.get<std::string>();
            } else if (key == "allow_low_trunc") {
                if (unset("--allow-low-trunc"))
                    f.allow_low_trunc = v.get<bool>();
            } else if (key == "stabilize") {
                if (unset("--stabilize"))
                    f.stabilize = v.get<bool>();
            } else {
                throw UsageError("unknown config key '" + key + "'");
            }
        }
    } catch (const nlohmann::json::exception &e) {
        throw UsageError(std::string("config value has the wrong type: ") + e.what());
    }
}

RunConfig to_run_config(const Flags &f) {
    RunConfig c;
    c.root_system = f.rs;
    if (!f.fgls.empty())
        c.fgls = f.fgls;
    if (!f.fgl2.empty())
        c.fgl2 = f.fgl2;
    const int rank = parse_root_system(f.rs).rank();
    if (!f.d.empty() && !f.degrees.empty())
        throw UsageError("give either --d or --degrees, not both");
    if (!f.d.empty())
        c.degrees = parse_degrees(f.d, rank);
    else if (!f.degrees.empty())
        c.degrees = parse_degrees(f.degrees, rank);
    c.trunc = f.trunc;
    for (const auto &s : f.suites)
        for (const auto &part : split_commas(s))
            c.suites.push_back(part);
    c.jobs = f.jobs;
    c.allow_low_trunc = f.allow_low_trunc;
    c.stabilize = f.stabilize;
    return c;
}

void emit(const std::string &text, const std::string &path) {
    if (path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream o(path);
    if (!o)
        throw Error("cannot write '" + path + "'");
    o << text;
}

int run_verify(const Flags &f) {
    auto c = to_run_config(f);
    if (c.suites.empty())
        throw UsageError("no suites given (--suites lemma48,...)");
    if (f.format != "json" && f.format != "csv")
        throw UsageError("--format must be json or csv");
    auto reports = run_suite(c);
    emit(f.format == "csv" ? reports_csv(reports) : to_json(reports).dump(2) + "\n", f.out);
    return all_passed(reports) ? kPass : kFail;
}

int run_report(const Flags &f) {
    auto c = to_run_config(f);
    if (f.format != "csv" && f.format != "json")
        throw UsageError("--format must be json or csv");
    auto table = report_table(c);
    emit(table.csv, f.out);
    return table.passed ? kPass : kFail;
}

int single_degree(const Flags &f, int rank) {
    if (f.d.empty())
        throw UsageError("compute " + f.query + " needs --d");
    auto [lo, hi] = parse_degrees(f.d, rank);
    if (lo != hi)
        throw UsageError("compute " + f.query + " takes a single degree");
    return lo;
}

int run_compute(const Flags &f) {
    const auto &q = f.query;
    const std::string law = f.fgls.empty() ? "additive" : f.fgls.front();
    nlohmann::json out;
    if (q == "inverse" || q == "nseries") {
        auto F = parse_fgl(law, f.trunc);
        auto s = q == "inverse" ? formal_inverse(F) : n_series(F, f.m);
        out = to_json(s);
        out["fgl"] = F.name();
    } else if (q == "theta" || q == "invariants" || q == "ideal" || q == "kernel") {
        auto rs = parse_root_system(f.rs);
        const int d = single_degree(f, rs.rank());
        auto ctx = make_context(rs, parse_fgl(law, f.trunc));
        if (q == "theta") {
            if (d < 1 || d > rs.rank())
                throw UsageError("theta index must lie in 1.." + std::to_string(rs.rank()));
            auto t = theta(ctx, d);
            out = to_json(t);
            out["content"] = int_json(content_gcd(t.series));
        } else {
            if (d < 1 || d > f.trunc)
                throw UsageError("degree must lie in 1.." + std::to_string(f.trunc));
            auto l = q == "invariants" ? invariant_graded_lattice(ctx, d)
                     : q == "ideal"    ? ideal_graded_lattice(ctx, d)
                                       : kernel_model(ctx, d);
            out = to_json(l);
        }
    } else if (q == "tau") {
        auto rs = parse_root_system(f.rs);
        const int d = single_degree(f, rs.rank());
        if (d < 1 || d > f.trunc)
            throw UsageError("degree must lie in 1.." + std::to_string(f.trunc));
        auto from = make_context(rs, parse_fgl(law, f.trunc));
        auto to = make_context(rs, parse_fgl(f.fgl2.empty() ? "additive" : f.fgl2, f.trunc));
        out = to_json(deformation_exponent(from, to, d));
    } else {
        throw UsageError("unknown query '" + q + "' (theta, inverse, nseries, invariants, ideal, kernel, tau)");
    }
    emit(out.dump(2) + "\n", f.out);
    return kPass;
}

void common_flags(CLI::App *cmd, Flags &f) {
    cmd->add_option("--config", f.config, "JSON config file; flags given on the command line win");
    cmd->add_option("--rs", f.rs, "root system: B3, B4, D4, D5, ...");
    cmd->add_option("--fgl,--from", f.fgls, "formal group law (repeatable)")->allow_extra_args(false);
    cmd->add_option("--fgl2,--to", f.fgl2, "second law (tau target; default additive)");
    cmd->add_option("--d", f.d, "single degree or theta index; 'n' means the rank");
    cmd->add_option("--degrees", f.degrees, "degree range a..b");
    cmd->add_option("--trunc", f.trunc, "truncation degree");
    cmd->add_option("--jobs", f.jobs, "worker threads");
    cmd->add_option("--out", f.out, "output file (default stdout)");
    cmd->add_option("--format", f.format, "json or csv");
    cmd->add_flag("--allow-low-trunc", f.allow_low_trunc, "skip the trunc >= degree + 2 headroom rule");
}

} // namespace

int main(int argc, char **argv) {
    CLI::App app{"formal group algebra lab"};
    app.require_subcommand(1);
    Flags f;

    auto *verify = app.add_subcommand("verify", "run verification suites");
    common_flags(verify, f);
    verify->add_option("--suites,--suite", f.suites,
                       "comma-separated: axioms, lemma43, lemma45, lemma48, lemma51, lemma52, theorem11, cor63, tau")
        ->allow_extra_args(false);
    verify->add_flag("--stabilize", f.stabilize, "also compare lattices at trunc + 2");

    auto *compute = app.add_subcommand("compute", "print one computed object as JSON");
    compute->add_option("query", f.query, "theta, inverse, nseries, invariants, ideal, kernel or tau")->required();
    common_flags(compute, f);
    compute->add_option("--m", f.m, "multiplier for nseries");

    auto *report = app.add_subcommand("report", "CSV table of constants and multipliers per degree");
    common_flags(report, f);

    try {
        app.parse(argc, argv);
    } catch (const CLI::Success &e) {
        return app.exit(e);
    } catch (const CLI::ParseError &e) {
        app.exit(e);
        return kUsage;
    }

    try {
        CLI::App *cmd = verify->parsed() ? verify : compute->parsed() ? compute : report;
        apply_config(f, *cmd);
        if (verify->parsed())
            return run_verify(f);
        if (compute->parsed())
            return run_compute(f);
        return run_report(f);
    } catch (const UsageError &e) {
        std::cerr << "fga-lab: " << e.what() << '\n';
        return kUsage;
    } catch (const std::exception &e) {
        std::cerr << "fga-lab: error: " << e.what() << '\n';
        return kInternal;
    }
}
