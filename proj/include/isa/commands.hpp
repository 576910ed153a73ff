#pragma once

#include <algorithm>
#include <cstdint>
#include <filesystem>
#include <iostream>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <tuple>
#include <vector>

#include "isa/bootstrap.hpp"
#include "isa/categories.hpp"
#include "isa/corpus.hpp"
#include "isa/error.hpp"
#include "isa/estimator.hpp"
#include "isa/flat_config.hpp"
#include "isa/parallel.hpp"
#include "isa/report_io.hpp"
#include "isa/simlab.hpp"
#include "isa/swbi.hpp"
#include "isa/swbi_export.hpp"

namespace isa::cli {

namespace fs = std::filesystem;

enum ExitCode : int {
    exit_ok = 0,
    exit_usage = 1,
    exit_config = 2,
    exit_data = 3,
    exit_numerical = 4,
    exit_assertion = 5,
};

inline int exit_code(ErrorKind kind) {
    switch (kind) {
        case ErrorKind::config: return exit_config;
        case ErrorKind::data: return exit_data;
        case ErrorKind::numerical: return exit_numerical;
        case ErrorKind::assertion: return exit_assertion;
    }
    return exit_config;
}

/// `error kind=<kind> code=<n> message="<text>"`, one line, quotes and
/// backslashes escaped.
inline std::string error_record(std::string_view kind, int code, std::string_view message) {
    std::string escaped;
    for (char ch : message) {
        if (ch == '"' || ch == '\\') escaped += '\\';
        if (ch == '\n' || ch == '\r') ch = ' ';
        escaped += ch;
    }
    return "error kind=" + std::string(kind) + " code=" + std::to_string(code) + " message=\"" + escaped + "\"";
}

inline bool parse_bool(std::string_view text, std::string_view what) {
    if (text == "true" || text == "1" || text == "yes" || text == "on") return true;
    if (text == "false" || text == "0" || text == "no" || text == "off") return false;
    throw config_error(std::string(what) + ": expected true or false, got '" + std::string(text) + "'");
}

inline const std::vector<std::string> path_keys = {"corpus", "codes", "output", "spec", "emission_file"};

inline bool is_path_key(const std::string& key) {
    if (key.rfind("codes.", 0) == 0) return true;
    for (const auto& k : path_keys)
        if (k == key) return true;
    return false;
}

/// Config with relative paths resolved against the config file's directory,
/// so a written manifest is a complete, relocatable run description.
inline FlatConfig resolve_paths(const FlatConfig& cfg) {
    FlatConfig out = FlatConfig::parse("", cfg.base_dir());
    for (const auto& [k, v] : cfg.entries()) {
        if (is_path_key(k)) out.set(k, fs::absolute(*cfg.get_path(k)).lexically_normal().string());
        else out.set(k, v);
    }
    return out;
}

/// Everything a run needs, read from the layered config.
struct RunConfig {
    FlatConfig config;  ///< effective config, paths absolute; hashed into every header
    fs::path corpus;
    std::optional<fs::path> codes;
    std::map<swbi::ComponentId, fs::path> component_codes;
    std::vector<std::string> categories;
    PipelineConfig pipeline;
    double alpha = default_alpha;
    std::size_t bootstrap = 0;
    std::uint64_t seed = 1;
    bool classify_and_count = true;
    swbi::ScoreMap score_map = swbi::ScoreMap::positive_share;
    double baseline = swbi::default_baseline;
    bool geo = false;
    fs::path output = "output";
    unsigned workers = 0;

    std::string hash() const { return config.hash(); }
    OutputHeader header() const { return OutputHeader::standard(hash(), seed); }

    static RunConfig from(const FlatConfig& raw) {
        RunConfig rc;
        rc.config = resolve_paths(raw);
        const auto& c = rc.config;
        if (auto p = c.get("corpus")) rc.corpus = *p;
        if (auto p = c.get("codes")) rc.codes = fs::path(*p);
        for (auto comp : swbi::all_components)
            if (auto p = c.get("codes." + std::string(swbi::name(comp)))) rc.component_codes[comp] = *p;
        rc.categories = c.get_list("categories");
        rc.pipeline = PipelineConfig::from(c);
        rc.alpha = c.get_double("alpha", default_alpha);
        if (!(rc.alpha >= 0.0)) throw config_error("alpha must be >= 0");
        const auto b = c.get_int("bootstrap", 0);
        if (b < 0 || b == 1) throw config_error("bootstrap must be 0 (off) or >= 2");
        rc.bootstrap = static_cast<std::size_t>(b);
        const auto seed = c.get_int("seed", 1);
        if (seed < 0) throw config_error("seed must be >= 0");
        rc.seed = static_cast<std::uint64_t>(seed);
        if (auto v = c.get("classify_and_count")) rc.classify_and_count = parse_bool(*v, "classify_and_count");
        if (auto v = c.get("score_map")) rc.score_map = swbi::parse_score_map(*v);
        rc.baseline = c.get_double("baseline", swbi::default_baseline);
        if (!(rc.baseline >= 0.0 && rc.baseline <= 100.0)) throw config_error("baseline must lie in [0, 100]");
        if (auto v = c.get("geo")) rc.geo = parse_bool(*v, "geo");
        if (auto p = c.get("output")) rc.output = *p;
        const auto w = c.get_int("workers", 0);
        if (w < 0) throw config_error("workers must be >= 0");
        rc.workers = static_cast<unsigned>(w);
        return rc;
    }
};

inline void require_file(const std::optional<fs::path>& p, const std::string& what) {
    if (!p || p->empty()) throw config_error("missing " + what + " path in config");
    if (!fs::is_regular_file(*p)) throw config_error(what + " file not found: " + p->string());
}

inline std::string format_probability(double v) { return fixed(v, 10); }

inline std::string estimate_csv(const CategoryDistribution& d, const std::vector<std::string>& labels,
                                const OutputHeader& header) {
    std::ostringstream os;
    header.write(os);
    os << "category,estimate,se\n";
    for (std::size_t i = 0; i < d.size(); ++i) {
        os << labels[i] << ',' << format_probability(d[i]) << ',';
        if (d.se) os << format_probability((*d.se)[i]);
        os << '\n';
    }
    return os.str();
}

struct EstimateResult {
    CategoryDistribution isa;
    std::optional<CategoryDistribution> cc;
    std::vector<std::string> labels;
    std::size_t documents = 0, coded = 0, uncoded = 0, patterns = 0, stems = 0;
};

/// Corpus + codes -> pattern table -> P(S|D) -> P(D), with optional
/// classify-and-count baseline and bootstrap standard errors. Writes
/// estimate.csv, estimate_cc.csv (when enabled) and manifest.txt.
inline EstimateResult cmd_estimate(const RunConfig& rc) {
    require_file(rc.corpus, "corpus");
    require_file(rc.codes, "codes");
    if (rc.categories.empty()) throw config_error("missing config key: categories");
    CategorySet categories(rc.categories);

    const auto posts = read_corpus(rc.corpus);
    const auto processed = process_corpus(posts, rc.pipeline, rc.workers);
    const auto corpus = CodedCorpus::from_labels(processed.table, categories, read_codes(*rc.codes));
    const auto training = corpus.training();
    if (training.empty()) throw data_error("no coded training documents");
    const auto counts = corpus.test_counts();
    const auto ps = to_distribution(counts);
    const auto cond = fit_conditional(training, corpus.table().size(), categories, rc.alpha);

    EstimateResult res;
    res.labels = categories.labels();
    res.documents = corpus.table().total();
    res.coded = corpus.training_size();
    res.uncoded = corpus.test_size();
    res.patterns = corpus.table().size();
    res.stems = processed.vocabulary.size();
    if (rc.bootstrap >= 2) {
        BootstrapOptions opt;
        opt.replications = rc.bootstrap;
        opt.seed = rc.seed;
        opt.alpha = rc.alpha;
        opt.workers = rc.workers;
        res.isa = bootstrap(training, corpus.table().size(), categories, ps, opt).estimate;
    } else {
        res.isa = estimate_isa(cond, ps);
    }
    if (rc.classify_and_count)
        res.cc = estimate_classify_and_count(cond, training_prior(training, categories.size()), counts);

    const auto header = rc.header();
    write_file(rc.output / "estimate.csv", estimate_csv(res.isa, res.labels, header));
    if (res.cc) write_file(rc.output / "estimate_cc.csv", estimate_csv(*res.cc, res.labels, header));

    std::ostringstream m;
    header.write(m);
    OutputHeader counts_header;
    counts_header.add("documents", std::to_string(res.documents))
        .add("coded", std::to_string(res.coded))
        .add("uncoded", std::to_string(res.uncoded))
        .add("K", std::to_string(res.patterns))
        .add("L", std::to_string(res.stems))
        .add("M", std::to_string(categories.size() - 1));
    counts_header.write(m);
    m << rc.config.canonical();
    write_file(rc.output / "manifest.txt", m.str());
    return res;
}

/// Filesystem-safe rendering of a geo code.
inline std::string geo_dir_name(const std::string& geo) {
    std::string out;
    for (char ch : geo) {
        const bool ok = (ch >= 'a' && ch <= 'z') || (ch >= 'A' && ch <= 'Z') || (ch >= '0' && ch <= '9') ||
                        ch == '-' || ch == '_';
        out += ok ? ch : '_';
    }
    return out.empty() ? "_" : out;
}

inline void write_swbi_outputs(const fs::path& dir, const swbi::DailySeries& series, const RunConfig& rc) {
    const auto header = rc.header();
    const auto months = swbi::integrate_monthly(series.records, rc.baseline);
    write_file(dir / "series.csv", swbi::series_csv(series.records, header));
    write_file(dir / "monthly.csv", swbi::monthly_csv(months, header));
    write_file(dir / "yearly.csv",
               swbi::yearly_csv(series.records.empty() ? std::vector<swbi::YearlyRow>{}
                                                       : swbi::yearly_table(series.records),
                                header));
    write_file(dir / "gaps.csv", swbi::gaps_csv(series.gaps, header));
    write_file(dir / "chart.svg", swbi::chart_svg(series.records, months, rc.baseline, header));
}

struct SwbiResult {
    swbi::DailySeries overall;
    std::map<std::string, swbi::DailySeries> by_geo;
};

/// Component values supplied directly; estimation is skipped.
inline SwbiResult cmd_swbi_injected(const RunConfig& rc, const fs::path& values) {
    if (!fs::is_regular_file(values)) throw config_error("component values file not found: " + values.string());
    SwbiResult res;
    res.overall = swbi::daily_series_from_scores(swbi::read_component_values(values));
    write_swbi_outputs(rc.output, res.overall, rc);
    return res;
}

/// One estimation per (component, day[, geo]). P(S|D) for a component is fit
/// on all of its coded documents; each day's P(S) comes from that day's
/// documents not coded for the component.
inline SwbiResult cmd_swbi(const RunConfig& rc) {
    require_file(rc.corpus, "corpus");
    for (auto comp : swbi::all_components) {
        auto it = rc.component_codes.find(comp);
        require_file(it == rc.component_codes.end() ? std::nullopt : std::optional<fs::path>(it->second),
                     "codes." + std::string(swbi::name(comp)));
    }
    CategorySet categories(rc.categories.empty() ? std::vector<std::string>{"off", "neg", "neu", "pos"}
                                                 : rc.categories);
    if (categories.size() != 4)
        throw config_error("swbi needs four categories in the order: off-topic, negative, neutral, positive");

    const auto posts = read_corpus(rc.corpus);
    const auto processed = process_corpus(posts, rc.pipeline, rc.workers);
    const auto& table = processed.table;

    // partition key per document: (geo or "", day)
    std::map<std::string, std::pair<std::string, Day>> doc_key;
    for (const auto& p : posts) doc_key.emplace(p.id, std::make_pair(p.geo.value_or(swbi::unlocated), day_of(p)));

    struct Job {
        swbi::ComponentId component;
        std::string geo;  ///< empty = all records
        Day day;
        std::vector<std::size_t> counts;
        std::optional<swbi::PolarityDistribution> dist;
        std::string error;
    };
    std::vector<Job> jobs;
    std::vector<ConditionalMatrix> conds;
    for (auto comp : swbi::all_components) {
        const auto corpus =
            CodedCorpus::from_labels(table, categories, read_codes(rc.component_codes.at(comp)));
        const auto training = corpus.training();
        if (training.empty())
            throw data_error("component " + std::string(swbi::name(comp)) + ": no coded training documents");
        auto cond = fit_conditional(training, table.size(), categories, rc.alpha);
        require_identifiable(cond);
        conds.push_back(std::move(cond));

        std::map<std::pair<std::string, Day>, std::vector<std::size_t>> partitions;
        for (const auto& [id, k] : table.doc_to_pattern()) {
            if (corpus.is_coded(id)) continue;
            const auto& [geo, day] = doc_key.at(id);
            auto add = [&, k = k](const std::string& g) {
                auto& v = partitions[{g, day}];
                if (v.empty()) v.assign(table.size(), 0);
                ++v[k];
            };
            add("");
            if (rc.geo) add(geo);
        }
        for (auto& [key, counts] : partitions) jobs.push_back({comp, key.first, key.second, std::move(counts), {}, {}});
    }

    parallel_for(jobs.size(), rc.workers, [&](std::size_t j) {
        auto& job = jobs[j];
        try {
            const auto est = estimate_isa(conds[swbi::index(job.component)], to_distribution(job.counts));
            job.dist = swbi::PolarityDistribution::from(est);
        } catch (const Error& e) {
            job.error = e.what();
        }
    });

    SwbiResult res;
    std::map<std::string, std::vector<swbi::ComponentDayEstimate>> estimates;
    std::map<std::string, std::vector<swbi::Gap>> failures;
    for (const auto& job : jobs) {
        if (job.dist) estimates[job.geo].push_back({job.day, job.component, *job.dist});
        else failures[job.geo].push_back({job.day, std::string(swbi::name(job.component)), job.error});
    }
    auto build = [&](const std::string& geo) {
        auto series = swbi::daily_series(estimates[geo], rc.score_map);
        auto& f = failures[geo];
        // estimation failures replace the "missing" entries daily_series derives for them
        std::vector<swbi::Gap> gaps;
        for (auto& g : series.gaps) {
            bool replaced = false;
            for (const auto& x : f)
                if (x.date == g.date && x.component == g.component) replaced = true;
            if (!replaced) gaps.push_back(std::move(g));
        }
        gaps.insert(gaps.end(), f.begin(), f.end());
        std::sort(gaps.begin(), gaps.end(), [](const auto& a, const auto& b) {
            return std::tie(a.date, a.component) < std::tie(b.date, b.component);
        });
        series.gaps = std::move(gaps);
        return series;
    };
    res.overall = build("");
    write_swbi_outputs(rc.output, res.overall, rc);
    if (rc.geo) {
        std::set<std::string> geos;
        for (const auto& job : jobs)
            if (!job.geo.empty()) geos.insert(job.geo);
        for (const auto& g : geos) {
            res.by_geo[g] = build(g);
            write_swbi_outputs(rc.output / "geo" / geo_dir_name(g), res.by_geo[g], rc);
        }
    }
    return res;
}

struct OrderingCheck {
    bool holds = true;
    std::vector<std::string> lines;
};

/// iSA sd <= (1 - margin) cc sd per coordinate, and the same for mean MAE.
/// A 1e-9 slack lets exactly tied estimators (separable specs) pass at
/// margin 0.
inline OrderingCheck check_ordering(const simlab::MonteCarloSummary& s, const std::vector<std::string>& labels,
                                    double margin) {
    OrderingCheck out;
    if (s.isa.sd.empty() || s.cc.sd.empty()) {
        out.holds = false;
        out.lines.push_back("fewer than two successful replications");
        return out;
    }
    auto check = [&](const std::string& what, double isa, double cc) {
        const bool ok = isa <= (1.0 - margin) * cc + 1e-9;
        out.holds = out.holds && ok;
        out.lines.push_back(what + " isa=" + exact(isa) + " cc=" + exact(cc) + (ok ? " ok" : " VIOLATED"));
    };
    for (std::size_t i = 0; i < s.isa.sd.size(); ++i) check("sd[" + labels[i] + "]", s.isa.sd[i], s.cc.sd[i]);
    check("mae_mean", s.isa.mae_mean, s.cc.mae_mean);
    return out;
}

struct SimulationTable {
    OutputHeader header;
    std::vector<std::string> labels;
    std::vector<double> true_p;
    std::vector<simlab::ReplicationResult> rows;
};

inline std::string summary_block(const simlab::MonteCarloSummary& s, const std::vector<std::string>& labels) {
    std::ostringstream os;
    os << "summary,metric,isa,cc\n";
    os << "summary,replications," << s.replications << ',' << s.replications << '\n';
    os << "summary,failures," << s.failures << ',' << s.failures << '\n';
    os << "summary,mae_mean," << exact(s.isa.mae_mean) << ',' << exact(s.cc.mae_mean) << '\n';
    os << "summary,mae_sd," << exact(s.isa.mae_sd) << ',' << exact(s.cc.mae_sd) << '\n';
    os << "summary,rms_sd," << exact(s.isa.rms_sd) << ',' << exact(s.cc.rms_sd) << '\n';
    for (std::size_t i = 0; i < labels.size() && i < s.isa.mean.size(); ++i) {
        os << "summary,mean_" << labels[i] << ',' << exact(s.isa.mean[i]) << ',' << exact(s.cc.mean[i]) << '\n';
        os << "summary,sd_pp_" << labels[i] << ',' << fixed(s.isa.sd_pp[i], 4) << ',' << fixed(s.cc.sd_pp[i], 4)
           << '\n';
    }
    return os.str();
}

inline std::string simulation_csv(const simlab::SyntheticSpec& spec, const std::string& spec_hash,
                                  const simlab::MonteCarloResult& mc) {
    const auto labels = spec.category_set().labels();
    std::ostringstream os;
    OutputHeader h = OutputHeader::standard(spec_hash, spec.seed);
    h.add("replications", std::to_string(mc.replications.size()))
        .add("n_total", std::to_string(spec.n_total))
        .add("train_fraction", exact(spec.train_fraction))
        .add("alpha", exact(spec.alpha));
    std::string tp;
    for (double v : spec.true_p) tp += (tp.empty() ? "" : ";") + exact(v);
    std::string cats;
    for (const auto& l : labels) cats += (cats.empty() ? "" : ";") + l;
    h.add("categories", cats).add("true_p", tp);
    h.write(os);
    os << "replication,status,isa_mae,cc_mae";
    for (const auto& l : labels) os << ",isa_" << l;
    for (const auto& l : labels) os << ",cc_" << l;
    os << ",error\n";
    for (const auto& r : mc.replications) {
        os << r.replication << ',' << (r.ok ? "ok" : "failed") << ',';
        if (r.ok) {
            os << exact(r.isa_mae) << ',' << exact(r.cc_mae);
            for (double v : r.isa.probs) os << ',' << exact(v);
            for (double v : r.cc.probs) os << ',' << exact(v);
            os << ",\n";
        } else {
            os << ',';
            for (std::size_t i = 0; i < 2 * labels.size(); ++i) os << ',';
            std::string msg = r.error;
            std::replace(msg.begin(), msg.end(), ',', ';');
            os << ',' << msg << '\n';
        }
    }
    os << summary_block(mc.summary, labels);
    return os.str();
}

/// Reads the per-replication rows back; summary lines are ignored because
/// the report recomputes them.
inline SimulationTable read_simulation_csv(const fs::path& path) {
    std::istringstream in(read_file(path));
    SimulationTable t;
    std::string line;
    bool have_columns = false;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.rfind("# ", 0) == 0) {
            const auto eq = line.find('=');
            if (eq == std::string::npos) continue;
            const auto key = line.substr(2, eq - 2);
            const auto value = line.substr(eq + 1);
            t.header.add(key, value);
            if (key == "categories") t.labels = split(value, ';');
            if (key == "true_p")
                for (const auto& v : split(value, ';')) t.true_p.push_back(parse_double(v, "true_p"));
            continue;
        }
        if (trim(line).empty() || line.rfind("summary,", 0) == 0) continue;
        if (!have_columns) {
            if (line.rfind("replication,status", 0) != 0) throw data_error("simulation results: missing column row");
            if (t.labels.empty()) throw data_error("simulation results: header lacks categories");
            have_columns = true;
            continue;
        }
        const auto cells = split(line, ',');
        const auto n = t.labels.size();
        if (cells.size() != 5 + 2 * n)
            throw data_error("simulation results line " + std::to_string(line_no) + ": wrong number of fields");
        simlab::ReplicationResult r;
        r.replication = static_cast<std::size_t>(parse_int(cells[0], "replication"));
        r.ok = cells[1] == "ok";
        if (r.ok) {
            r.isa_mae = parse_double(cells[2], "isa_mae");
            r.cc_mae = parse_double(cells[3], "cc_mae");
            for (std::size_t i = 0; i < n; ++i) {
                r.isa.probs.push_back(parse_double(cells[4 + i], "isa estimate"));
                r.cc.probs.push_back(parse_double(cells[4 + n + i], "cc estimate"));
            }
        } else {
            r.error = cells.back();
        }
        t.rows.push_back(std::move(r));
    }
    if (!have_columns) throw data_error("simulation results: no replication rows");
    return t;
}

struct SimulateOptions {
    std::size_t replications = 200;
    std::optional<std::uint64_t> seed;
    unsigned workers = 0;
    bool assert_ordering = false;
    double margin = 0.0;
    fs::path output = "simulation.csv";
};

struct SimulateResult {
    simlab::MonteCarloResult mc;
    std::optional<OrderingCheck> ordering;
};

/// Monte Carlo over the spec; writes the results table and, when asked,
/// checks the iSA-vs-classify-and-count ordering (assertion error if it fails).
inline SimulateResult cmd_simulate(const fs::path& spec_path, const SimulateOptions& options, std::ostream& log) {
    if (options.replications < 2) throw config_error("R must be >= 2");
    if (!fs::is_regular_file(spec_path)) throw config_error("spec file not found: " + spec_path.string());
    auto cfg = FlatConfig::load(spec_path);
    if (options.seed) cfg.set("seed", std::to_string(*options.seed));
    const auto spec = simlab::SyntheticSpec::from(cfg);
    for (const auto& w : simlab::spec_warnings(spec)) log << w << '\n';
    simlab::MonteCarloOptions mco;
    mco.workers = options.workers;
    SimulateResult res;
    res.mc = simlab::run_monte_carlo(spec, options.replications, mco);
    write_file(options.output, simulation_csv(spec, resolve_paths(cfg).hash(), res.mc));
    log << summary_block(res.mc.summary, spec.category_set().labels());
    if (options.assert_ordering) {
        res.ordering = check_ordering(res.mc.summary, spec.category_set().labels(), options.margin);
        for (const auto& l : res.ordering->lines) log << "ordering " << l << '\n';
        if (!res.ordering->holds) throw assertion_error("iSA vs classify-and-count ordering does not hold");
    }
    return res;
}

/// Recomputes the summary of a results file.
inline simlab::MonteCarloSummary cmd_report(const fs::path& results, bool assert_ordering, double margin,
                                            std::ostream& out) {
    const auto table = read_simulation_csv(results);
    const auto summary = simlab::summarize(table.rows);
    out << summary_block(summary, table.labels);
    if (assert_ordering) {
        const auto check = check_ordering(summary, table.labels, margin);
        for (const auto& l : check.lines) out << "ordering " << l << '\n';
        if (!check.holds) throw assertion_error("iSA vs classify-and-count ordering does not hold");
    }
    return summary;
}

/// Writes a synthetic corpus as input files for `estimate`: corpus.jsonl
/// (tokens s<l>), codes.csv, truth.csv and a ready-to-run estimate.cfg.
inline simlab::GeneratedCorpus cmd_generate(const fs::path& spec_path, const fs::path& out_dir,
                                            std::optional<std::uint64_t> seed, std::ostream& log) {
    if (!fs::is_regular_file(spec_path)) throw config_error("spec file not found: " + spec_path.string());
    auto cfg = FlatConfig::load(spec_path);
    if (seed) cfg.set("seed", std::to_string(*seed));
    const auto spec = simlab::SyntheticSpec::from(cfg);
    auto gen = simlab::generate_corpus(spec);
    for (const auto& w : gen.warnings) log << w << '\n';
    const auto& table = gen.corpus.table();
    const auto labels = spec.category_set().labels();

    std::string corpus, codes = "doc_id,label\n", truth;
    const auto header = OutputHeader::standard(resolve_paths(cfg).hash(), spec.seed);
    {
        std::ostringstream os;
        header.write(os);
        os << "doc_id,label\n";
        truth = os.str();
    }
    for (std::size_t j = 0; j < gen.ids.size(); ++j) {
        const auto& id = gen.ids[j];
        RawPost post;
        post.id = id;
        post.timestamp = Timestamp{std::chrono::sys_days{std::chrono::year{2014} / 1 / 1}};
        post.text = simlab::pattern_text(table.patterns()[table.pattern_of(id)]);
        corpus += post_to_json(post) + '\n';
        if (gen.corpus.is_coded(id)) codes += id + ',' + labels[gen.truth[j]] + '\n';
        truth += id + ',' + labels[gen.truth[j]] + '\n';
    }
    write_file(out_dir / "corpus.jsonl", corpus);
    write_file(out_dir / "codes.csv", codes);
    write_file(out_dir / "truth.csv", truth);
    std::string cats;
    for (const auto& l : labels) cats += (cats.empty() ? "" : ",") + l;
    write_file(out_dir / "estimate.cfg", "corpus = corpus.jsonl\ncodes = codes.csv\ncategories = " + cats +
                                             "\nstemmer = identity\nalpha = " + exact(spec.alpha) +
                                             "\nseed = " + std::to_string(spec.seed) + "\noutput = estimate\n");
    return gen;
}

}  // namespace isa::cli
