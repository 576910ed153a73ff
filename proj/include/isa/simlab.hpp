#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <limits>
#include <map>
#include <random>
#include <span>
#include <sstream>
#include <string>
#include <unordered_map>
#include <vector>

#include <Eigen/Dense>

#include "isa/bootstrap.hpp"
#include "isa/categories.hpp"
#include "isa/error.hpp"
#include "isa/estimator.hpp"
#include "isa/flat_config.hpp"
#include "isa/parallel.hpp"
#include "isa/patterns.hpp"
#include "isa/report_io.hpp"

namespace isa::simlab {

/// Ground truth for a synthetic corpus: documents draw a category from
/// `true_p`, then one independent presence bit per stem from that category's
/// column of `emission` (L rows, M+1 columns).
struct SyntheticSpec {
    std::size_t m = 1;
    std::size_t l = 1;
    std::vector<double> true_p;
    Eigen::MatrixXd emission;
    std::size_t n_total = 10000;
    double train_fraction = 0.1;
    std::uint64_t seed = 1;
    double alpha = default_alpha;
    std::vector<std::string> labels;  ///< empty: D0..DM

    std::size_t categories() const { return m + 1; }

    CategorySet category_set() const {
        if (!labels.empty()) return CategorySet(labels);
        std::vector<std::string> out;
        for (std::size_t i = 0; i <= m; ++i) out.push_back("D" + std::to_string(i));
        return CategorySet(std::move(out));
    }

    std::size_t coded_count() const {
        return static_cast<std::size_t>(std::ceil(static_cast<double>(n_total) * train_fraction - 1e-9));
    }

    void validate() const {
        if (m < 1) throw config_error("synthetic spec: M must be >= 1");
        if (l < 1) throw config_error("synthetic spec: L must be >= 1");
        if (true_p.size() != m + 1)
            throw config_error("synthetic spec: true_p needs M+1 = " + std::to_string(m + 1) + " entries");
        double sum = 0.0;
        for (double v : true_p) {
            if (!(v >= 0.0)) throw config_error("synthetic spec: true_p entries must be >= 0");
            sum += v;
        }
        if (std::abs(sum - 1.0) > 1e-9) throw config_error("synthetic spec: true_p must sum to 1");
        if (emission.rows() != static_cast<Eigen::Index>(l) || emission.cols() != static_cast<Eigen::Index>(m + 1))
            throw config_error("synthetic spec: emission must be L x (M+1)");
        for (Eigen::Index r = 0; r < emission.rows(); ++r)
            for (Eigen::Index c = 0; c < emission.cols(); ++c)
                if (!(emission(r, c) >= 0.0 && emission(r, c) <= 1.0))
                    throw config_error("synthetic spec: emission probabilities must lie in [0, 1]");
        if (!(train_fraction > 0.0 && train_fraction < 1.0))
            throw config_error("synthetic spec: train_fraction must lie in (0, 1)");
        if (n_total < 2) throw config_error("synthetic spec: n_total must be >= 2");
        if (coded_count() >= n_total) throw config_error("synthetic spec: no uncoded documents left");
        if (!(alpha >= 0.0)) throw config_error("synthetic spec: alpha must be >= 0");
        if (!labels.empty() && labels.size() != m + 1)
            throw config_error("synthetic spec: categories needs M+1 labels");
    }

    /// Spec file keys: M, L, true_p, emission (one `;`-separated group of L
    /// values per category) or emission_file, n_total, train_fraction, seed,
    /// alpha, categories.
    static SyntheticSpec from(const FlatConfig& cfg) {
        SyntheticSpec s;
        s.m = static_cast<std::size_t>(cfg.get_int("M", -1));
        s.l = static_cast<std::size_t>(cfg.get_int("L", -1));
        if (!cfg.contains("M") || !cfg.contains("L")) throw config_error("synthetic spec: M and L are required");
        for (const auto& v : split(cfg.require("true_p"), ',')) s.true_p.push_back(parse_double(v, "true_p"));
        std::string emission_text;
        if (auto path = cfg.get_path("emission_file")) {
            emission_text = read_file(*path);
            for (auto& ch : emission_text)
                if (ch == '\n') ch = ';';
        } else {
            emission_text = cfg.require("emission");
        }
        std::vector<std::vector<double>> rows;
        for (const auto& group : split(emission_text, ';')) {
            const auto t = trim(group);
            if (t.empty() || t.front() == '#') continue;
            std::vector<double> row;
            for (const auto& v : split(std::string(t), ',')) row.push_back(parse_double(v, "emission"));
            rows.push_back(std::move(row));
        }
        if (rows.size() != s.m + 1)
            throw config_error("synthetic spec: emission needs M+1 = " + std::to_string(s.m + 1) + " category rows");
        s.emission.resize(static_cast<Eigen::Index>(s.l), static_cast<Eigen::Index>(s.m + 1));
        for (std::size_t c = 0; c < rows.size(); ++c) {
            if (rows[c].size() != s.l)
                throw config_error("synthetic spec: emission row " + std::to_string(c) + " needs L = " +
                                   std::to_string(s.l) + " values");
            for (std::size_t r = 0; r < s.l; ++r)
                s.emission(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = rows[c][r];
        }
        s.n_total = static_cast<std::size_t>(cfg.get_int("n_total", 10000));
        s.train_fraction = cfg.get_double("train_fraction", 0.1);
        s.seed = static_cast<std::uint64_t>(cfg.get_int("seed", 1));
        s.alpha = cfg.get_double("alpha", default_alpha);
        s.labels = cfg.get_list("categories");
        s.validate();
        return s;
    }
};

/// Uniform double in [0, 1) from the top 53 bits; identical on every platform.
inline double uniform01(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

inline std::size_t draw_category(std::mt19937_64& rng, const std::vector<double>& p) {
    const double u = uniform01(rng);
    double acc = 0.0;
    for (std::size_t i = 0; i + 1 < p.size(); ++i) {
        acc += p[i];
        if (u < acc) return i;
    }
    // rounding leftovers land on the last category with mass
    for (std::size_t i = p.size(); i-- > 0;)
        if (p[i] > 0.0) return i;
    return p.size() - 1;
}

/// A drawn corpus in compact form. Documents are in id order, the first
/// `coded` of them hand coded; pattern indices follow first appearance,
/// which matches the canonical PatternTable order.
struct Sample {
    std::vector<StemVector> patterns;
    std::vector<std::size_t> doc_pattern;
    std::vector<std::size_t> doc_category;
    std::size_t coded = 0;

    std::vector<LabeledPattern> training() const {
        std::vector<LabeledPattern> out;
        out.reserve(coded);
        for (std::size_t j = 0; j < coded; ++j) out.push_back({doc_pattern[j], doc_category[j]});
        return out;
    }

    std::vector<std::size_t> test_counts() const {
        std::vector<std::size_t> counts(patterns.size(), 0);
        for (std::size_t j = coded; j < doc_pattern.size(); ++j) ++counts[doc_pattern[j]];
        return counts;
    }

    /// Realised category shares among the uncoded documents.
    std::vector<double> test_truth(std::size_t categories) const {
        std::vector<double> p(categories, 0.0);
        for (std::size_t j = coded; j < doc_category.size(); ++j) p[doc_category[j]] += 1.0;
        for (auto& v : p) v /= static_cast<double>(doc_category.size() - coded);
        return p;
    }
};

inline Sample draw_sample(const SyntheticSpec& spec, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    Sample s;
    s.coded = spec.coded_count();
    s.doc_pattern.resize(spec.n_total);
    s.doc_category.resize(spec.n_total);
    std::unordered_map<StemVector, std::size_t, StemVectorHash> index;
    StemVector v(spec.l);
    for (std::size_t j = 0; j < spec.n_total; ++j) {
        const auto cat = draw_category(rng, spec.true_p);
        const auto col = static_cast<Eigen::Index>(cat);
        for (std::size_t r = 0; r < spec.l; ++r)
            v.set(r, uniform01(rng) < spec.emission(static_cast<Eigen::Index>(r), col));
        auto [it, inserted] = index.try_emplace(v, s.patterns.size());
        if (inserted) s.patterns.push_back(v);
        s.doc_pattern[j] = it->second;
        s.doc_category[j] = cat;
    }
    return s;
}

inline std::string document_id(std::size_t j, std::size_t n_total) {
    int width = 7;
    for (std::size_t n = n_total; n >= 10000000; n /= 10) ++width;
    char buf[32];
    std::snprintf(buf, sizeof buf, "d%0*zu", width, j);
    return buf;
}

/// Collinearity warnings: categories sharing an identical emission column
/// cannot be told apart by any estimator.
inline std::vector<std::string> spec_warnings(const SyntheticSpec& spec) {
    std::vector<std::string> out;
    const auto labels = spec.category_set().labels();
    for (Eigen::Index a = 0; a < spec.emission.cols(); ++a)
        for (Eigen::Index b = a + 1; b < spec.emission.cols(); ++b)
            if (spec.emission.col(a) == spec.emission.col(b))
                out.push_back("collinearity warning: categories " + labels[static_cast<std::size_t>(a)] + " and " +
                              labels[static_cast<std::size_t>(b)] + " have identical emission columns");
    for (std::size_t i = 0; i < spec.true_p.size(); ++i)
        if (spec.true_p[i] == 0.0)
            out.push_back("warning: category " + labels[i] + " has no mass in true_p and will have no training data");
    return out;
}

struct GeneratedCorpus {
    CodedCorpus corpus;
    std::vector<std::size_t> truth;  ///< true category per document, in id order
    std::vector<std::string> ids;
    std::vector<std::string> warnings;
};

/// Draws the corpus for `spec.seed`; ids d0000000, d0000001, ... and the
/// first ceil(n_total * train_fraction) documents carry their true label.
inline GeneratedCorpus generate_corpus(const SyntheticSpec& spec) {
    spec.validate();
    const auto sample = draw_sample(spec, spec.seed);
    GeneratedCorpus out;
    out.warnings = spec_warnings(spec);
    std::vector<DocumentVector> docs;
    docs.reserve(spec.n_total);
    std::map<std::string, std::size_t> codes;
    for (std::size_t j = 0; j < spec.n_total; ++j) {
        auto id = document_id(j, spec.n_total);
        docs.emplace_back(id, sample.patterns[sample.doc_pattern[j]]);
        if (j < sample.coded) codes.emplace_hint(codes.end(), id, sample.doc_category[j]);
        out.ids.push_back(std::move(id));
    }
    out.truth = sample.doc_category;
    out.corpus = CodedCorpus(build_pattern_table(std::move(docs)), spec.category_set(), std::move(codes));
    return out;
}

/// Text rendering of a stem vector: tokens s<l> for each present stem.
inline std::string pattern_text(const StemVector& v) {
    std::string text;
    for (std::size_t r = 0; r < v.size(); ++r)
        if (v.test(r)) {
            if (!text.empty()) text += ' ';
            text += 's' + std::to_string(r);
        }
    return text;
}

/// Exact P(S|D) for the given patterns under the Bernoulli model.
inline Eigen::MatrixXd pattern_likelihood(const SyntheticSpec& spec, const std::vector<StemVector>& patterns) {
    Eigen::MatrixXd out(static_cast<Eigen::Index>(patterns.size()), spec.emission.cols());
    for (std::size_t k = 0; k < patterns.size(); ++k)
        for (Eigen::Index c = 0; c < spec.emission.cols(); ++c) {
            double p = 1.0;
            for (std::size_t r = 0; r < spec.l; ++r) {
                const double e = spec.emission(static_cast<Eigen::Index>(r), c);
                p *= patterns[k].test(r) ? e : 1.0 - e;
            }
            out(static_cast<Eigen::Index>(k), c) = p;
        }
    return out;
}

/// All 2^L patterns, pattern k having bit r = (k >> r) & 1.
inline std::vector<StemVector> all_patterns(std::size_t l) {
    if (l > 20) throw config_error("pattern enumeration limited to L <= 20");
    std::vector<StemVector> out;
    for (std::size_t k = 0; k < (std::size_t{1} << l); ++k) {
        StemVector v(l);
        for (std::size_t r = 0; r < l; ++r) v.set(r, (k >> r) & 1U);
        out.push_back(std::move(v));
    }
    return out;
}

/// The exact conditional matrix over every possible pattern.
inline ConditionalMatrix analytic_conditional(const SyntheticSpec& spec) {
    ConditionalMatrix cond;
    cond.values = pattern_likelihood(spec, all_patterns(spec.l));
    cond.labels = spec.category_set().labels();
    cond.alpha = 0.0;
    return cond;
}

/// Random spec in which each category has a dominant signature stem
/// (probability in [dominant_lo, dominant_hi]) and low background rates
/// elsewhere; stems beyond the first M+1 are shared background.
inline SyntheticSpec random_structured_spec(std::mt19937_64& rng, std::size_t categories, std::size_t l,
                                            double dominant_lo = 0.7, double dominant_hi = 0.95,
                                            double background_lo = 0.05, double background_hi = 0.3) {
    if (categories < 2 || l < categories) throw config_error("structured spec needs 2 <= M+1 <= L");
    SyntheticSpec s;
    s.m = categories - 1;
    s.l = l;
    s.emission.resize(static_cast<Eigen::Index>(l), static_cast<Eigen::Index>(categories));
    for (std::size_t c = 0; c < categories; ++c)
        for (std::size_t r = 0; r < l; ++r) {
            const bool own = r == c;
            const double lo = own ? dominant_lo : background_lo;
            const double hi = own ? dominant_hi : background_hi;
            s.emission(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = lo + (hi - lo) * uniform01(rng);
        }
    double sum = 0.0;
    for (std::size_t c = 0; c < categories; ++c) {
        s.true_p.push_back(0.05 + uniform01(rng));
        sum += s.true_p.back();
    }
    for (auto& v : s.true_p) v /= sum;
    return s;
}

/// Exhaustive search of the simplex grid with the given step for the point
/// minimising ||ps - cond p||^2. Limited to M+1 <= 4.
inline CategoryDistribution brute_force_simplex(const ConditionalMatrix& cond, std::span<const double> ps,
                                                double step) {
    const auto c = cond.categories();
    if (c > 4) throw config_error("oracle limited to small instances (M+1 <= 4)");
    if (c == 0) throw data_error("oracle: no categories");
    if (ps.size() != cond.patterns()) throw data_error("oracle: P(S) does not match the conditional matrix");
    if (!(step > 0.0 && step <= 1e-2)) throw config_error("oracle: grid step must lie in (0, 0.01]");
    const double steps_real = 1.0 / step;
    const auto n = static_cast<long>(std::llround(steps_real));
    if (std::abs(steps_real - static_cast<double>(n)) > 1e-6) throw config_error("oracle: grid step must divide 1");
    if (c == 1) return {{1.0}, std::nullopt};

    // ||b - A p||^2 = p'Hp - 2 g'p + const
    const Eigen::Map<const Eigen::VectorXd> b(ps.data(), static_cast<Eigen::Index>(ps.size()));
    const Eigen::MatrixXd h = cond.values.transpose() * cond.values;
    const Eigen::VectorXd g = cond.values.transpose() * b;
    const double inv = 1.0 / static_cast<double>(n);

    double best = std::numeric_limits<double>::infinity();
    std::array<long, 4> best_idx{};
    std::array<long, 4> idx{};
    std::array<double, 4> p{};
    auto evaluate = [&] {
        double f = 0.0;
        for (std::size_t i = 0; i < c; ++i) {
            double row = 0.0;
            for (std::size_t j = 0; j < c; ++j)
                row += h(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) * p[j];
            f += p[i] * (row - 2.0 * g(static_cast<Eigen::Index>(i)));
        }
        if (f < best) {
            best = f;
            best_idx = idx;
        }
    };
    // enumerate compositions of n into c parts
    auto recurse = [&](auto&& self, std::size_t pos, long remaining) -> void {
        if (pos + 1 == c) {
            idx[pos] = remaining;
            p[pos] = static_cast<double>(remaining) * inv;
            evaluate();
            return;
        }
        for (long v = 0; v <= remaining; ++v) {
            idx[pos] = v;
            p[pos] = static_cast<double>(v) * inv;
            self(self, pos + 1, remaining - v);
        }
    };
    recurse(recurse, 0, n);
    std::vector<double> out(c);
    for (std::size_t i = 0; i < c; ++i) out[i] = static_cast<double>(best_idx[i]) * inv;
    return {std::move(out), std::nullopt};
}

struct ReplicationResult {
    std::size_t replication = 0;  ///< 1-based
    std::uint64_t seed = 0;
    bool ok = false;
    std::string error;
    CategoryDistribution isa;
    CategoryDistribution cc;
    double isa_mae = 0.0;
    double cc_mae = 0.0;
};

struct MonteCarloOptions {
    unsigned workers = 1;
    /// Replication r uses seed + r * seed_stride; 0 makes every replication
    /// identical.
    std::uint64_t seed_stride = 1;
};

struct EstimatorSummary {
    double mae_mean = 0.0;
    double mae_sd = 0.0;
    std::vector<double> mean;    ///< per coordinate
    std::vector<double> sd;      ///< per coordinate, probability units
    std::vector<double> sd_pp;   ///< per coordinate, percentage points
    double rms_sd = 0.0;         ///< root mean square of the coordinate sds
};

struct MonteCarloSummary {
    std::size_t replications = 0;
    std::size_t failures = 0;
    EstimatorSummary isa;
    EstimatorSummary cc;
};

struct MonteCarloResult {
    std::vector<ReplicationResult> replications;
    MonteCarloSummary summary;
};

inline double mean_absolute_error(const std::vector<double>& a, const std::vector<double>& b) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += std::abs(a[i] - b[i]);
    return s / static_cast<double>(a.size());
}

/// Runs both estimators on one corpus drawn with `seed`.
inline ReplicationResult run_replication(const SyntheticSpec& spec, std::size_t replication, std::uint64_t seed) {
    ReplicationResult r;
    r.replication = replication;
    r.seed = seed;
    try {
        const auto sample = draw_sample(spec, seed);
        const auto training = sample.training();
        const auto categories = spec.category_set();
        const auto cond = fit_conditional(training, sample.patterns.size(), categories, spec.alpha);
        const auto counts = sample.test_counts();
        r.isa = estimate_isa(cond, to_distribution(counts));
        r.cc = estimate_classify_and_count(cond, training_prior(training, categories.size()), counts);
        r.isa_mae = mean_absolute_error(r.isa.probs, spec.true_p);
        r.cc_mae = mean_absolute_error(r.cc.probs, spec.true_p);
        r.ok = true;
    } catch (const Error& e) {
        r.ok = false;
        r.error = e.what();
    }
    return r;
}

inline EstimatorSummary summarize(const std::vector<std::vector<double>>& estimates, const std::vector<double>& maes) {
    EstimatorSummary s;
    if (estimates.empty()) return s;
    const auto n = static_cast<double>(estimates.size());
    const auto dim = estimates.front().size();
    s.mean.assign(dim, 0.0);
    for (const auto& e : estimates)
        for (std::size_t j = 0; j < dim; ++j) s.mean[j] += e[j];
    for (auto& v : s.mean) v /= n;
    for (double m : maes) s.mae_mean += m;
    s.mae_mean /= n;
    if (estimates.size() >= 2) {
        s.sd = column_sd(estimates);
        std::vector<std::vector<double>> mae_rows;
        for (double m : maes) mae_rows.push_back({m});
        s.mae_sd = column_sd(mae_rows)[0];
    } else {
        s.sd.assign(dim, 0.0);
    }
    double sq = 0.0;
    for (double v : s.sd) {
        s.sd_pp.push_back(100.0 * v);
        sq += v * v;
    }
    s.rms_sd = std::sqrt(sq / static_cast<double>(dim));
    return s;
}

inline MonteCarloSummary summarize(const std::vector<ReplicationResult>& reps) {
    MonteCarloSummary s;
    s.replications = reps.size();
    std::vector<std::vector<double>> isa, cc;
    std::vector<double> isa_mae, cc_mae;
    for (const auto& r : reps) {
        if (!r.ok) {
            ++s.failures;
            continue;
        }
        isa.push_back(r.isa.probs);
        cc.push_back(r.cc.probs);
        isa_mae.push_back(r.isa_mae);
        cc_mae.push_back(r.cc_mae);
    }
    s.isa = summarize(isa, isa_mae);
    s.cc = summarize(cc, cc_mae);
    return s;
}

/// R independent corpora (seeds seed+1 .. seed+R), both estimators on each.
/// Failed replications are kept and counted, not dropped.
inline MonteCarloResult run_monte_carlo(const SyntheticSpec& spec, std::size_t replications,
                                        const MonteCarloOptions& options = {}) {
    spec.validate();
    if (replications < 2) throw config_error("Monte Carlo needs R >= 2 replications");
    MonteCarloResult out;
    out.replications.resize(replications);
    parallel_for(replications, options.workers, [&](std::size_t i) {
        const auto r = i + 1;
        out.replications[i] = run_replication(spec, r, spec.seed + options.seed_stride * r);
    });
    out.summary = summarize(out.replications);
    return out;
}

}  // namespace isa::simlab
