// isa: aggregate opinion estimation, well-being index and Monte Carlo lab.

#include <filesystem>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "isa/commands.hpp"

namespace {

namespace fs = std::filesystem;
using namespace isa;

constexpr const char* exit_codes_help =
    "Exit codes:\n"
    "  0  success\n"
    "  1  usage error (bad flags, R < 2)\n"
    "  2  configuration error (missing file or key, invalid value)\n"
    "  3  data error (malformed records, empty vocabulary, empty test set)\n"
    "  4  numerical error (collinear categories, underdetermined, unidentifiable)\n"
    "  5  assertion failure (--assert-ordering)\n"
    "Errors are reported on stderr as one line:\n"
    "  error kind=<kind> code=<n> message=\"...\"\n";

struct Overrides {
    std::optional<std::int64_t> seed;
    std::optional<std::int64_t> bootstrap;
    std::optional<double> baseline;
    std::optional<std::string> score_map;
    std::optional<std::string> output;
    std::optional<int> workers;
    bool geo = false;

    void apply(FlatConfig& cfg) const {
        if (seed) cfg.set("seed", std::to_string(*seed));
        if (bootstrap) cfg.set("bootstrap", std::to_string(*bootstrap));
        if (baseline) cfg.set("baseline", exact(*baseline));
        if (score_map) cfg.set("score_map", *score_map);
        if (workers) cfg.set("workers", std::to_string(*workers));
        if (geo) cfg.set("geo", "true");
        // flag paths are relative to the working directory, not the config
        if (output) cfg.set("output", fs::absolute(*output).lexically_normal().string());
    }
};

FlatConfig load_config(const std::string& path, const Overrides& o) {
    auto cfg = path.empty() ? FlatConfig::parse("", fs::current_path()) : FlatConfig::load(path);
    o.apply(cfg);
    return cfg;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Aggregate opinion estimation (iSA), Social Well Being Index and Monte Carlo lab"};
    app.footer(exit_codes_help);
    app.require_subcommand(1);

    std::string config_path;
    Overrides o;
    std::string inject;
    std::string spec_path, results_path;
    std::size_t replications = 200;
    bool assert_ordering = false;
    double margin = 0.0;

    auto add_common = [&](CLI::App* cmd) {
        cmd->add_option("--config", config_path, "run config file (key = value)");
        cmd->add_option("--seed", o.seed, "RNG seed");
        cmd->add_option("--output", o.output, "output directory");
        cmd->add_option("--workers", o.workers, "worker threads, 0 = all cores")->check(CLI::NonNegativeNumber);
    };

    auto* estimate = app.add_subcommand("estimate", "estimate P(D) for the uncoded documents of a corpus");
    add_common(estimate);
    estimate->add_option("--bootstrap", o.bootstrap, "bootstrap replications B for standard errors (0 = off)");

    auto* swbi_cmd = app.add_subcommand("swbi", "daily, monthly and yearly well-being index from eight code sets");
    add_common(swbi_cmd);
    swbi_cmd->add_option("--baseline", o.baseline, "neutral level for the monthly integral (default 50)");
    swbi_cmd->add_option("--score-map", o.score_map, "component score map")
        ->check(CLI::IsMember({"positive-share", "signed-balance"}));
    swbi_cmd->add_flag("--geo", o.geo, "also write one output tree per geo code");
    swbi_cmd->add_option("--inject-component-means", inject,
                         "CSV of component values per date; skips estimation");

    auto* simulate = app.add_subcommand("simulate", "Monte Carlo comparison of iSA and classify-and-count");
    simulate->add_option("--spec,--config", spec_path, "synthetic spec file")->required();
    simulate->add_option("-R,--replications", replications, "replications R (>= 2)");
    simulate->add_option("--seed", o.seed, "override the spec seed");
    simulate->add_option("--output", o.output, "results file (default simulation.csv)");
    simulate->add_option("--workers", o.workers, "worker threads, 0 = all cores")->check(CLI::NonNegativeNumber);
    simulate->add_flag("--assert-ordering", assert_ordering,
                       "exit 5 unless iSA sd <= (1-margin) cc sd per coordinate and likewise for mean MAE");
    simulate->add_option("--margin", margin, "relative margin for --assert-ordering (default 0)")
        ->check(CLI::Range(0.0, 1.0));

    auto* report = app.add_subcommand("report", "recompute the summary of a simulation results file");
    report->add_option("results", results_path, "results file written by simulate")->required();
    report->add_flag("--assert-ordering", assert_ordering, "as for simulate");
    report->add_option("--margin", margin, "as for simulate")->check(CLI::Range(0.0, 1.0));

    auto* generate = app.add_subcommand("generate", "write a synthetic corpus, codes and truth from a spec");
    generate->add_option("--spec,--config", spec_path, "synthetic spec file")->required();
    generate->add_option("--seed", o.seed, "override the spec seed");
    generate->add_option("--output", o.output, "output directory")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << cli::error_record("usage", cli::exit_usage, e.what()) << '\n';
        return cli::exit_usage;
    }

    try {
        if (*estimate) {
            const auto rc = cli::RunConfig::from(load_config(config_path, o));
            const auto res = cli::cmd_estimate(rc);
            for (std::size_t i = 0; i < res.labels.size(); ++i)
                std::cout << res.labels[i] << ' ' << cli::format_probability(res.isa[i]) << '\n';
            std::cout << "wrote " << (rc.output / "estimate.csv").string() << '\n';
        } else if (*swbi_cmd) {
            const auto rc = cli::RunConfig::from(load_config(config_path, o));
            const auto res = inject.empty() ? cli::cmd_swbi(rc) : cli::cmd_swbi_injected(rc, inject);
            std::cout << res.overall.records.size() << " days, " << res.overall.gaps.size() << " gaps; wrote "
                      << rc.output.string() << '\n';
        } else if (*simulate) {
            if (replications < 2) {
                std::cerr << cli::error_record("usage", cli::exit_usage, "R must be >= 2") << '\n';
                return cli::exit_usage;
            }
            cli::SimulateOptions so;
            so.replications = replications;
            if (o.seed) so.seed = static_cast<std::uint64_t>(*o.seed);
            if (o.workers) so.workers = static_cast<unsigned>(*o.workers);
            so.assert_ordering = assert_ordering;
            so.margin = margin;
            if (o.output) so.output = *o.output;
            cli::cmd_simulate(spec_path, so, std::cout);
        } else if (*report) {
            cli::cmd_report(results_path, assert_ordering, margin, std::cout);
        } else if (*generate) {
            std::optional<std::uint64_t> seed;
            if (o.seed) seed = static_cast<std::uint64_t>(*o.seed);
            const auto gen = cli::cmd_generate(spec_path, *o.output, seed, std::cerr);
            std::cout << gen.ids.size() << " documents written to " << *o.output << '\n';
        }
    } catch (const Error& e) {
        const int code = cli::exit_code(e.kind());
        std::cerr << cli::error_record(to_string(e.kind()), code, e.what()) << '\n';
        return code;
    } catch (const std::exception& e) {
        std::cerr << cli::error_record("internal", cli::exit_config, e.what()) << '\n';
        return cli::exit_config;
    }
    return cli::exit_ok;
}
