#pragma once
// Suite runner behind the command-line tool: cells of (suite, law, degree)
// evaluated on a worker pool, results kept in submission order.

#include "fgalab/checks.hpp"
#include "fgalab/parse.hpp"

#include <algorithm>
#include <atomic>
#include <functional>
#include <map>
#include <mutex>
#include <sstream>
#include <thread>

namespace fgalab {

struct RunConfig {
    std::string root_system = "B3";
    std::vector<std::string> fgls{"additive"};
    std::string fgl2 = "additive"; // comparison law for tau
    std::pair<int, int> degrees{2, 5};
    int trunc = 8;
    std::vector<std::string> suites;
    int jobs = 1;
    bool allow_low_trunc = false;
    bool stabilize = false; // recompute lattices at trunc + 2 and compare
};

inline const std::vector<std::string> &known_suites() {
    static const std::vector<std::string> names{"axioms",  "lemma43",   "lemma45", "lemma48", "lemma51",
                                                "lemma52", "theorem11", "cor63",   "tau"};
    return names;
}

inline bool suite_uses_degrees(const std::string &s) { return s != "axioms" && s != "lemma43"; }

/// Throws UsageError naming the offending piece.
inline void validate(const RunConfig &c) {
    for (const auto &s : c.suites)
        if (std::find(known_suites().begin(), known_suites().end(), s) == known_suites().end())
            throw UsageError("unknown suite '" + s + "'");
    if (c.fgls.empty())
        throw UsageError("no formal group law given");
    if (c.jobs < 1)
        throw UsageError("--jobs must be at least 1");
    if (c.trunc < 1 || c.trunc > kMaxTrunc)
        throw UsageError("truncation must lie in 1.." + std::to_string(kMaxTrunc));
    const bool ranged = std::any_of(c.suites.begin(), c.suites.end(), suite_uses_degrees);
    if (ranged && c.degrees.first <= c.degrees.second) {
        if (c.degrees.first < 1)
            throw UsageError("degrees start at 1");
        const int need = c.degrees.second + 2;
        if (c.trunc < need && !c.allow_low_trunc)
            throw UsageError("truncation " + std::to_string(c.trunc) + " too small for degree " +
                             std::to_string(c.degrees.second) + ": need at least " + std::to_string(need) +
                             " (or pass --allow-low-trunc)");
        if (c.trunc < c.degrees.second)
            throw UsageError("truncation " + std::to_string(c.trunc) + " is below the requested degree " +
                             std::to_string(c.degrees.second));
    }
}

/// Runs independent tasks on `jobs` threads; results[i] belongs to tasks[i].
template <class T> std::vector<T> run_pool(const std::vector<std::function<T()>> &tasks, int jobs) {
    std::vector<T> out(tasks.size());
    std::vector<std::exception_ptr> errors(tasks.size());
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t i = next++; i < tasks.size(); i = next++) {
            try {
                out[i] = tasks[i]();
            } catch (...) {
                errors[i] = std::current_exception();
            }
        }
    };
    const auto n = std::min<std::size_t>(static_cast<std::size_t>(std::max(jobs, 1)), tasks.size());
    std::vector<std::thread> pool;
    for (std::size_t t = 1; t < n; ++t)
        pool.emplace_back(worker);
    worker();
    for (auto &t : pool)
        t.join();
    for (const auto &e : errors)
        if (e)
            std::rethrow_exception(e);
    return out;
}

namespace detail {

/// One algebra per (law, truncation), shared by every cell that needs it.
class ContextCache {
  public:
    ContextCache(RootSystem rs) : rs_(std::move(rs)) {}

    ContextPtr<Integer> get(const std::string &fgl, int trunc) {
        std::lock_guard lock(mu_);
        auto &slot = cache_[{fgl, trunc}];
        if (!slot)
            slot = make_context(rs_, parse_fgl(fgl, trunc));
        return slot;
    }

  private:
    RootSystem rs_;
    std::mutex mu_;
    std::map<std::pair<std::string, int>, ContextPtr<Integer>> cache_;
};

inline void add_stabilization(VerificationReport &rep, const ContextPtr<Integer> &lo, const ContextPtr<Integer> &hi,
                              int d) {
    const std::string t = std::to_string(hi->trunc());
    rep.add("invariant lattice stable at truncation " + t,
            invariant_graded_lattice(lo, d) == invariant_graded_lattice(hi, d));
    rep.add("ideal lattice stable at truncation " + t, ideal_graded_lattice(lo, d) == ideal_graded_lattice(hi, d));
}

} // namespace detail

/// Every (suite, law, degree) cell in a fixed order.
inline std::vector<VerificationReport> run_suite(const RunConfig &config) {
    validate(config);
    const auto rs = parse_root_system(config.root_system);
    detail::ContextCache cache(rs);
    // parse every law up front so malformed input fails before any work
    for (const auto &f : config.fgls)
        cache.get(f, config.trunc);
    if (std::find(config.suites.begin(), config.suites.end(), "tau") != config.suites.end())
        cache.get(config.fgl2, config.trunc);

    std::vector<std::function<VerificationReport()>> tasks;
    const int T = config.trunc;
    for (const auto &suite : config.suites) {
        for (const auto &fgl : config.fgls) {
            if (!suite_uses_degrees(suite)) {
                tasks.push_back([&cache, suite, fgl, T] {
                    auto ctx = cache.get(fgl, T);
                    auto rep = suite == "axioms" ? check_axioms(ctx->law()) : inverse_parity_check(ctx->law());
                    rep.suite = suite;
                    return rep;
                });
                continue;
            }
            for (int d = config.degrees.first; d <= config.degrees.second; ++d) {
                tasks.push_back([&cache, &config, suite, fgl, d, T] {
                    auto ctx = cache.get(fgl, T);
                    VerificationReport rep;
                    bool lattice = true;
                    if (suite == "lemma45") {
                        rep = theta_parity_check(ctx, d);
                        lattice = false;
                    } else if (suite == "lemma48") {
                        rep = zeta_bound_check(ctx, d);
                    } else if (suite == "lemma51" || suite == "lemma52") {
                        rep = eta_bound_check(ctx, d);
                    } else if (suite == "theorem11") {
                        rep = annihilator_check(ctx, d);
                    } else if (suite == "cor63") {
                        rep = multiplicative_comparison_check(ctx, d);
                    } else {
                        rep = tau_check(ctx, cache.get(config.fgl2, T), d);
                    }
                    if (lattice && config.stabilize)
                        detail::add_stabilization(rep, ctx, cache.get(fgl, T + 2), d);
                    rep.suite = suite;
                    return rep;
                });
            }
        }
    }
    return run_pool(tasks, config.jobs);
}

inline bool all_passed(const std::vector<VerificationReport> &reports) {
    return std::all_of(reports.begin(), reports.end(), [](const auto &r) { return r.passed(); });
}

inline nlohmann::json to_json(const std::vector<VerificationReport> &reports) {
    nlohmann::json a = nlohmann::json::array();
    for (const auto &r : reports)
        a.push_back(to_json(r));
    return a;
}

namespace detail {

inline std::string csv_field(const std::string &s) {
    if (s.find_first_of(",\"\n") == std::string::npos)
        return s;
    std::string q = "\"";
    for (char c : s)
        q += c == '"' ? std::string("\"\"") : std::string(1, c);
    return q + "\"";
}

inline std::string join(const std::vector<std::string> &v, const std::string &sep) {
    std::string out;
    for (std::size_t i = 0; i < v.size(); ++i)
        out += (i ? sep : "") + v[i];
    return out;
}

inline std::string tau_text(const ExponentReport &e) { return e.tau ? e.tau->get_str() : "infinite"; }

} // namespace detail

inline std::string reports_csv(const std::vector<VerificationReport> &reports) {
    std::ostringstream out;
    out << "suite,type,rank,degree,fgl,trunc,status,failed_checks\n";
    for (const auto &r : reports) {
        std::vector<std::string> failed;
        for (const auto &c : r.checks)
            if (c.status == Status::fail)
                failed.push_back(c.name);
        out << r.suite << ',' << r.instance.type << ',' << r.instance.rank << ',' << r.instance.degree << ','
            << detail::csv_field(detail::join(r.instance.fgls, " ")) << ',' << r.instance.trunc << ','
            << to_string(r.status()) << ',' << detail::csv_field(detail::join(failed, "; ")) << '\n';
    }
    return out.str();
}

struct TableResult {
    std::string csv;
    bool passed = true;
};

/// One row per (law, degree): constants and the computed multipliers of the
/// zeta, eta and annihilator checks.
inline TableResult report_table(RunConfig config) {
    config.suites = {"lemma48"};
    validate(config);
    const auto rs = parse_root_system(config.root_system);
    detail::ContextCache cache(rs);
    for (const auto &f : config.fgls)
        cache.get(f, config.trunc);

    struct Row {
        std::string line;
        bool ok = true;
    };
    std::vector<std::function<Row()>> tasks;
    for (const auto &fgl : config.fgls) {
        for (int d = config.degrees.first; d <= config.degrees.second; ++d) {
            tasks.push_back([&cache, &rs, &config, fgl, d] {
                auto ctx = cache.get(fgl, config.trunc);
                auto c = constants(rs, d);
                auto z = zeta_bound_check(ctx, d);
                auto e = eta_bound_check(ctx, d);
                auto a = annihilator_check(ctx, d);
                auto tau_of = [](const nlohmann::json &j) {
                    const auto &t = j.at("tau");
                    return t.is_string() ? t.get<std::string>() : t.dump();
                };
                std::ostringstream line;
                line << rs.name() << ',' << rs.rank() << ',' << d << ',' << detail::csv_field(fgl) << ','
                     << config.trunc << ',' << (c.r ? c.r->get_str() : "") << ',' << c.zeta.get_str() << ','
                     << c.eta.get_str() << ',' << tau_of(z.computed["invariant_to_theta_products"]) << ','
                     << tau_of(z.computed["ideal_to_theta_span"]) << ',' << tau_of(e.computed["e"]) << ','
                     << tau_of(a.computed["kernel_to_additive_ideal"]) << ',' << to_string(z.status()) << ','
                     << to_string(e.status()) << ',' << to_string(a.status()) << '\n';
                return Row{line.str(), z.passed() && e.passed() && a.passed()};
            });
        }
    }
    TableResult out;
    out.csv = "root_system,rank,degree,fgl,trunc,r_d,zeta_d,eta_d,invariant_multiplier,ideal_multiplier,"
              "kernel_multiplier,annihilator_multiplier,zeta_status,eta_status,annihilator_status\n";
    for (auto &row : run_pool(tasks, config.jobs)) {
        out.csv += row.line;
        out.passed = out.passed && row.ok;
    }
    return out;
}

} // namespace fgalab
