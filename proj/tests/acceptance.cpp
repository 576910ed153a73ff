// Acceptance gate: one PASS/FAIL line per criterion, nonzero exit if any fails.

#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "isa/commands.hpp"
#include "property_cases.hpp"

namespace fs = std::filesystem;
using namespace isa;

namespace {

// Pinned tolerances and sizes.
constexpr double table_tolerance = 0.005;
constexpr std::size_t exact_specs = 50;
constexpr double exact_tolerance = 1e-8;
constexpr std::size_t oracle_instances = 100;
constexpr double oracle_step = 1e-3;
constexpr double oracle_tolerance = 1e-3 + 1e-6;
constexpr std::size_t variance_replications = 200;
constexpr double variance_margin = 0.10;
constexpr std::size_t rootn_replications = 200;
constexpr double rootn_low = 1.19, rootn_high = 1.70;
constexpr std::size_t throughput_docs = 100000;
constexpr std::size_t throughput_stems = 2000;
constexpr double throughput_seconds = 60.0;
constexpr std::size_t property_cases = 1000;

struct Verdict {
    bool pass = false;
    std::string detail;
};

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::string num(double v, int digits = 4) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*g", digits, v);
    return buf;
}

Verdict yearly_table_rows() {
    struct Row {
        int year;
        swbi::ComponentScores components;
        double expected;
    };
    const std::array<Row, 4> rows{{
        {2012, {60.55, 67.76, 34.10, 55.10, 43.88, 59.22, 53.91, 16.44}, 48.87},
        {2013, {57.32, 73.31, 37.35, 57.19, 55.03, 64.04, 58.04, 15.50}, 52.22},
        {2014, {48.24, 68.26, 39.73, 56.11, 52.37, 62.59, 55.15, 15.10}, 49.69},
        {2015, {49.50, 54.57, 55.35, 54.30, 36.72, 40.40, 57.81, 39.33}, 48.50},
    }};
    Verdict v{true, ""};
    for (const auto& r : rows) {
        const double got = swbi::swbi(r.components);
        const bool ok = std::abs(got - r.expected) <= table_tolerance;
        v.pass = v.pass && ok;
        v.detail += std::to_string(r.year) + "=" + fixed(got, 4) + (ok ? " " : "(want " + fixed(r.expected) + ") ");
    }
    v.detail += "tol=" + num(table_tolerance);
    return v;
}

Verdict exact_recovery() {
    std::mt19937_64 rng(2024);
    double worst = 0.0;
    std::size_t max_k = 0;
    for (std::size_t s = 0; s < exact_specs; ++s) {
        const std::size_t c = 2 + rng() % 4;     // M+1 in [2, 5]
        const std::size_t l = c + rng() % (6 - c);  // K = 2^L <= 32
        const auto spec = simlab::random_structured_spec(rng, c, l);
        const auto cond = simlab::analytic_conditional(spec);
        max_k = std::max(max_k, cond.patterns());
        Eigen::VectorXd p(static_cast<Eigen::Index>(c));
        for (std::size_t i = 0; i < c; ++i) p(static_cast<Eigen::Index>(i)) = spec.true_p[i];
        const Eigen::VectorXd ps = cond.values * p;
        const auto est = estimate_isa(cond, std::vector<double>(ps.data(), ps.data() + ps.size()));
        for (std::size_t i = 0; i < c; ++i) worst = std::max(worst, std::abs(est[i] - spec.true_p[i]));
    }
    return {worst < exact_tolerance, std::to_string(exact_specs) + " specs, K<=" + std::to_string(max_k) +
                                         ", max |error|=" + num(worst, 3) + " (limit " + num(exact_tolerance) + ")"};
}

Verdict oracle_equivalence() {
    std::mt19937_64 rng(77);
    double worst = 0.0, worst_gap = -1.0;
    for (std::size_t t = 0; t < oracle_instances; ++t) {
        const std::size_t c = 2 + rng() % 2;  // M+1 in {2, 3}
        const std::size_t l = c + rng() % (4 - c);
        const auto spec = simlab::random_structured_spec(rng, c, l);
        const auto cond = simlab::analytic_conditional(spec);
        const auto k = cond.patterns();
        std::vector<double> ps(k);
        if (t % 2 == 0) {
            // noisy image of a simplex point
            Eigen::VectorXd p(static_cast<Eigen::Index>(c));
            for (std::size_t i = 0; i < c; ++i) p(static_cast<Eigen::Index>(i)) = spec.true_p[i];
            const Eigen::VectorXd clean = cond.values * p;
            double sum = 0;
            for (std::size_t i = 0; i < k; ++i) {
                ps[i] = std::max(0.0, clean(static_cast<Eigen::Index>(i)) + 0.05 * (props::uniform(rng) - 0.5));
                sum += ps[i];
            }
            for (auto& v : ps) v /= sum;
        } else {
            // arbitrary point; the constrained optimum often sits on a face
            ps = props::random_simplex(rng, k);
        }
        const auto isa = estimate_isa(cond, ps);
        const auto grid = simlab::brute_force_simplex(cond, ps, oracle_step);
        for (std::size_t i = 0; i < c; ++i) worst = std::max(worst, std::abs(isa[i] - grid[i]));
        const Eigen::Map<const Eigen::VectorXd> b(ps.data(), static_cast<Eigen::Index>(k));
        const Eigen::Map<const Eigen::VectorXd> xi(isa.probs.data(), static_cast<Eigen::Index>(c));
        const Eigen::Map<const Eigen::VectorXd> xg(grid.probs.data(), static_cast<Eigen::Index>(c));
        // excess <= 0: the solver is at least as good as the best grid point
        worst_gap = std::max(worst_gap, (cond.values * xi - b).squaredNorm() - (cond.values * xg - b).squaredNorm());
    }
    const bool pass = worst <= oracle_tolerance && worst_gap <= 1e-12;
    return {pass, std::to_string(oracle_instances) + " instances, max |isa-grid|=" + num(worst, 3) + " (limit " +
                      num(oracle_tolerance, 6) + "), max objective excess=" + num(worst_gap, 3)};
}

simlab::SyntheticSpec variance_spec() {
    return simlab::SyntheticSpec::from(FlatConfig::load(fs::path(ISA_SAMPLES) / "simlab" / "variance.cfg"));
}

Verdict variance_ordering() {
    const auto spec = variance_spec();
    const auto mc = simlab::run_monte_carlo(spec, variance_replications);
    const auto labels = spec.category_set().labels();
    const auto check = cli::check_ordering(mc.summary, labels, variance_margin);
    std::string d = "R=" + std::to_string(variance_replications) + " failures=" + std::to_string(mc.summary.failures);
    for (std::size_t i = 0; i < labels.size(); ++i)
        d += " sd_" + labels[i] + "=" + fixed(mc.summary.isa.sd_pp[i], 2) + "/" + fixed(mc.summary.cc.sd_pp[i], 2) + "pp";
    d += " mae=" + num(mc.summary.isa.mae_mean) + "/" + num(mc.summary.cc.mae_mean) + " (isa/cc, margin " +
         num(variance_margin) + ")";
    return {check.holds && mc.summary.failures == 0, d};
}

Verdict root_n() {
    auto spec = variance_spec();
    const auto small = simlab::run_monte_carlo(spec, rootn_replications);
    spec.n_total *= 2;
    const auto large = simlab::run_monte_carlo(spec, rootn_replications);
    const double ratio = small.summary.isa.rms_sd / large.summary.isa.rms_sd;
    return {ratio >= rootn_low && ratio <= rootn_high,
            "rms sd " + num(small.summary.isa.rms_sd) + " at n=" + std::to_string(spec.n_total / 2) + ", " +
                num(large.summary.isa.rms_sd) + " at n=" + std::to_string(spec.n_total) + ", ratio=" + num(ratio) +
                " (want [" + num(rootn_low) + ", " + num(rootn_high) + "])"};
}

Verdict throughput() {
    const auto dir = fs::temp_directory_path() / "isa_acceptance_throughput";
    fs::remove_all(dir);
    // sparse emissions: background 0.004, each category with its own block of 100 stems at 0.04
    const std::size_t c = 4;
    std::ostringstream spec;
    spec << "M = " << c - 1 << "\nL = " << throughput_stems << "\ntrue_p = 0.55, 0.15, 0.1, 0.2\n"
         << "n_total = " << throughput_docs << "\ntrain_fraction = 0.1\nseed = 11\nemission = ";
    for (std::size_t k = 0; k < c; ++k) {
        if (k) spec << "; ";
        for (std::size_t l = 0; l < throughput_stems; ++l)
            spec << (l ? "," : "") << (l / 100 == k ? "0.04" : "0.004");
    }
    spec << '\n';
    write_file(dir / "spec.cfg", spec.str());
    std::ostringstream log;
    cli::cmd_generate(dir / "spec.cfg", dir / "gen", std::nullopt, log);

    const auto rc = cli::RunConfig::from(FlatConfig::load(dir / "gen" / "estimate.cfg"));
    const auto t0 = std::chrono::steady_clock::now();
    const auto res = cli::cmd_estimate(rc);
    const double elapsed = seconds_since(t0);
    fs::remove_all(dir);
    return {elapsed < throughput_seconds && res.documents == throughput_docs && res.stems <= throughput_stems,
            std::to_string(res.documents) + " docs, L=" + std::to_string(res.stems) + ", K=" +
                std::to_string(res.patterns) + " in " + num(elapsed, 3) + " s (limit " + num(throughput_seconds) +
                " s)"};
}

Verdict invariants() {
    const std::array<std::pair<const char*, std::function<props::Outcome(std::size_t)>>, 4> suites{{
        {"simplex_closure", [](std::size_t n) { return props::simplex_closure(n); }},
        {"offtopic_invariance", [](std::size_t n) { return props::offtopic_invariance(n); }},
        {"integration_linearity", [](std::size_t n) { return props::integration_linearity(n); }},
        {"parallel_determinism", [](std::size_t n) { return props::parallel_determinism(n); }},
    }};
    Verdict v{true, ""};
    for (const auto& [name, run] : suites) {
        const auto o = run(property_cases);
        const bool ok = o.ok() && o.cases >= property_cases;
        v.pass = v.pass && ok;
        v.detail += std::string(name) + "=" + std::to_string(o.cases - o.failures) + "/" + std::to_string(o.cases) + " ";
        if (!o.messages.empty()) v.detail += "[" + o.messages.front() + "] ";
    }
    return v;
}

}  // namespace

int main() {
    const std::array<std::pair<const char*, std::function<Verdict()>>, 7> criteria{{
        {"yearly-table-arithmetic", yearly_table_rows},
        {"exact-recovery", exact_recovery},
        {"oracle-equivalence", oracle_equivalence},
        {"variance-ordering", variance_ordering},
        {"root-n-consistency", root_n},
        {"pipeline-throughput", throughput},
        {"invariant-suites", invariants},
    }};
    int failed = 0;
    for (const auto& [name, check] : criteria) {
        const auto t0 = std::chrono::steady_clock::now();
        Verdict v;
        try {
            v = check();
        } catch (const std::exception& e) {
            v = {false, std::string("threw: ") + e.what()};
        }
        if (!v.pass) ++failed;
        std::printf("%s %s: %s [%.2f s]\n", v.pass ? "PASS" : "FAIL", name, v.detail.c_str(), seconds_since(t0));
        std::fflush(stdout);
    }
    std::printf("%d of %zu criteria failed\n", failed, criteria.size());
    return failed == 0 ? 0 : 1;
}
