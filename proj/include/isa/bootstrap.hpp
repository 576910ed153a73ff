#pragma once

#include <cmath>
#include <cstdint>
#include <random>
#include <span>
#include <vector>

#include "isa/categories.hpp"
#include "isa/error.hpp"
#include "isa/estimator.hpp"
#include "isa/parallel.hpp"

namespace isa {

struct BootstrapOptions {
    std::size_t replications = 200;
    std::uint64_t seed = 1;
    double alpha = default_alpha;
    unsigned workers = 1;
    std::size_t max_attempts = 100;
};

struct BootstrapResult {
    CategoryDistribution estimate;                   ///< point estimate with se filled
    std::vector<std::vector<double>> replicates;     ///< in replication order
};

/// Sample standard deviation per coordinate. Deviations are taken from the
/// first row so identical rows give exactly zero.
inline std::vector<double> column_sd(const std::vector<std::vector<double>>& rows) {
    if (rows.size() < 2) throw data_error("standard deviation needs at least two rows");
    const auto dim = rows.front().size();
    std::vector<double> sd(dim, 0.0);
    const auto n = static_cast<double>(rows.size());
    for (std::size_t j = 0; j < dim; ++j) {
        double sum = 0.0, sum_sq = 0.0;
        for (const auto& r : rows) {
            const double d = r[j] - rows.front()[j];
            sum += d;
            sum_sq += d * d;
        }
        sd[j] = std::sqrt(std::max(0.0, (sum_sq - sum * sum / n) / (n - 1.0)));
    }
    return sd;
}

/// Resamples the coded training documents with replacement, refits P(S|D)
/// and re-solves for P(D) each time. Replicate b uses an RNG seeded with
/// seed + b; a replicate that loses a category present in the training set is
/// redrawn from the same stream.
inline BootstrapResult bootstrap(std::span<const LabeledPattern> training, std::size_t pattern_count,
                                 const CategorySet& categories, std::span<const double> test_ps,
                                 const BootstrapOptions& options) {
    if (options.replications < 2) throw config_error("bootstrap needs B >= 2 replications");
    if (training.empty()) throw data_error("bootstrap: no training documents");

    BootstrapResult result;
    const auto full = fit_conditional(training, pattern_count, categories, options.alpha);
    result.estimate = estimate_isa(full, test_ps);

    std::vector<bool> present(categories.size(), false);
    for (const auto& doc : training) present[doc.label] = true;

    result.replicates.resize(options.replications);
    parallel_for(options.replications, options.workers, [&](std::size_t b) {
        std::mt19937_64 rng(options.seed + b);
        std::uniform_int_distribution<std::size_t> pick(0, training.size() - 1);
        std::vector<LabeledPattern> sample(training.size());
        for (std::size_t attempt = 0;; ++attempt) {
            if (attempt == options.max_attempts)
                throw numerical_error("bootstrap replicate " + std::to_string(b) + " lost a category in " +
                                      std::to_string(options.max_attempts) + " consecutive draws");
            std::vector<bool> seen(categories.size(), false);
            for (auto& s : sample) {
                s = training[pick(rng)];
                seen[s.label] = true;
            }
            bool complete = true;
            for (std::size_t i = 0; i < present.size(); ++i)
                if (present[i] && !seen[i]) complete = false;
            if (complete) break;
        }
        const auto cond = fit_conditional(sample, pattern_count, categories, options.alpha);
        result.replicates[b] = estimate_isa(cond, test_ps).probs;
    });
    result.estimate.se = column_sd(result.replicates);
    return result;
}

inline CategoryDistribution bootstrap_se(const CodedCorpus& corpus, std::span<const double> test_ps,
                                         const BootstrapOptions& options) {
    const auto training = corpus.training();
    return bootstrap(training, corpus.table().size(), corpus.categories(), test_ps, options).estimate;
}

}  // namespace isa
