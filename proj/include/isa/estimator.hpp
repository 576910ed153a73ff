#pragma once

#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "isa/categories.hpp"
#include "isa/error.hpp"
#include "isa/simplex_lsq.hpp"

namespace isa {

/// P(S|D): K patterns by M+1 categories, one column per category.
struct ConditionalMatrix {
    Eigen::MatrixXd values;
    std::vector<std::string> labels;
    double alpha = 0.0;

    std::size_t patterns() const { return static_cast<std::size_t>(values.rows()); }
    std::size_t categories() const { return static_cast<std::size_t>(values.cols()); }
};

inline constexpr double default_alpha = 0.5;

/// Entry (k, i) = (n_ki + alpha) / (n_i + alpha K), where n_ki counts training
/// documents with pattern k and label i.
inline ConditionalMatrix fit_conditional(std::span<const LabeledPattern> training, std::size_t pattern_count,
                                         const CategorySet& categories, double alpha = default_alpha) {
    if (!(alpha >= 0.0)) throw config_error("smoothing constant alpha must be >= 0");
    if (pattern_count == 0) throw data_error("fit_conditional: no patterns");
    const auto k_rows = static_cast<Eigen::Index>(pattern_count);
    const auto c_cols = static_cast<Eigen::Index>(categories.size());
    Eigen::MatrixXd counts = Eigen::MatrixXd::Zero(k_rows, c_cols);
    for (const auto& doc : training) {
        if (doc.pattern >= pattern_count || doc.label >= categories.size())
            throw data_error("fit_conditional: training document outside the pattern/category range");
        counts(static_cast<Eigen::Index>(doc.pattern), static_cast<Eigen::Index>(doc.label)) += 1.0;
    }
    ConditionalMatrix cond;
    cond.labels = categories.labels();
    cond.alpha = alpha;
    cond.values.resize(k_rows, c_cols);
    for (Eigen::Index i = 0; i < c_cols; ++i) {
        const double n_i = counts.col(i).sum();
        if (n_i == 0.0 && alpha == 0.0)
            throw numerical_error("unidentifiable category '" + categories.label(static_cast<std::size_t>(i)) +
                                  "': no training documents and alpha = 0");
        const double denom = n_i + alpha * static_cast<double>(pattern_count);
        cond.values.col(i) = (counts.col(i).array() + alpha) / denom;
    }
    return cond;
}

inline ConditionalMatrix fit_conditional(const CodedCorpus& corpus, double alpha = default_alpha) {
    const auto training = corpus.training();
    if (training.empty()) throw data_error("fit_conditional: no coded training documents");
    return fit_conditional(training, corpus.table().size(), corpus.categories(), alpha);
}

/// Throws unless P(S|D) has full column rank: K >= M+1 and no category
/// column is a combination of the others.
inline void require_identifiable(const ConditionalMatrix& cond) {
    const auto k = cond.patterns();
    const auto c = cond.categories();
    if (k < c)
        throw numerical_error("underdetermined: " + std::to_string(k) + " patterns for " + std::to_string(c) +
                              " categories (need K >= M+1)");
    const auto rank = lsq::column_rank(cond.values);
    if (rank.rank < static_cast<Eigen::Index>(c)) {
        std::string set;
        for (auto col : rank.dependent_columns) {
            if (!set.empty()) set += ", ";
            set += static_cast<std::size_t>(col) < cond.labels.size() ? cond.labels[static_cast<std::size_t>(col)]
                                                                      : std::to_string(col);
        }
        throw numerical_error("collinear categories: {" + set + "}");
    }
}

/// Aggregate inverse estimator: the P(D) on the simplex that best explains
/// the test pattern distribution, P(S) ~ P(S|D) P(D), in least squares.
/// Coincides with [P(S|D)'P(S|D)]^-1 P(S|D)' P(S) whenever that is feasible.
inline CategoryDistribution estimate_isa(const ConditionalMatrix& cond, std::span<const double> ps) {
    const auto k = cond.patterns();
    const auto c = cond.categories();
    if (ps.size() != k)
        throw data_error("estimate_isa: P(S) has " + std::to_string(ps.size()) + " entries, conditional matrix has " +
                         std::to_string(k) + " patterns");
    if (c == 0) throw data_error("estimate_isa: no categories");
    if (c == 1) return {{1.0}, std::nullopt};
    require_identifiable(cond);
    const Eigen::Map<const Eigen::VectorXd> b(ps.data(), static_cast<Eigen::Index>(ps.size()));
    const auto sol = lsq::simplex_least_squares(cond.values, b);
    return {std::vector<double>(sol.x.data(), sol.x.data() + sol.x.size()), std::nullopt};
}

/// Label frequencies of the training set; the default prior for the
/// individual classifier.
inline CategoryDistribution training_prior(std::span<const LabeledPattern> training, std::size_t category_count) {
    if (training.empty()) throw data_error("training prior: no training documents");
    std::vector<double> p(category_count, 0.0);
    for (const auto& doc : training) p.at(doc.label) += 1.0;
    for (auto& v : p) v /= static_cast<double>(training.size());
    return {std::move(p), std::nullopt};
}

/// Bayes rule for one pattern: argmax_i P(S_k|D_i) prior_i, lowest index on ties.
inline std::size_t classify_bayes(const ConditionalMatrix& cond, const CategoryDistribution& prior,
                                  std::size_t pattern_index) {
    if (pattern_index >= cond.patterns())
        throw data_error("classify_bayes: pattern " + std::to_string(pattern_index) + " does not exist");
    if (prior.size() != cond.categories()) throw data_error("classify_bayes: prior does not match the categories");
    const auto k = static_cast<Eigen::Index>(pattern_index);
    std::size_t best = 0;
    double best_value = -1.0;
    for (std::size_t i = 0; i < cond.categories(); ++i) {
        const double posterior = cond.values(k, static_cast<Eigen::Index>(i)) * prior[i];
        if (posterior > best_value) {
            best_value = posterior;
            best = i;
        }
    }
    if (!(best_value > 0.0))
        throw numerical_error("unseen pattern " + std::to_string(pattern_index) + ": posterior mass is zero");
    return best;
}

/// Classify every test document by its pattern, then tally.
inline CategoryDistribution estimate_classify_and_count(const ConditionalMatrix& cond, const CategoryDistribution& prior,
                                                        std::span<const std::size_t> test_counts) {
    if (test_counts.size() != cond.patterns())
        throw data_error("classify-and-count: test counts do not match the pattern count");
    std::vector<double> tally(cond.categories(), 0.0);
    std::size_t total = 0;
    for (std::size_t k = 0; k < test_counts.size(); ++k) {
        if (test_counts[k] == 0) continue;
        tally[classify_bayes(cond, prior, k)] += static_cast<double>(test_counts[k]);
        total += test_counts[k];
    }
    if (total == 0) throw data_error("classify-and-count: empty test set");
    for (auto& v : tally) v /= static_cast<double>(total);
    return {std::move(tally), std::nullopt};
}

inline CategoryDistribution estimate_classify_and_count(const ConditionalMatrix& cond, const CategoryDistribution& prior,
                                                        const PatternTable& test) {
    return estimate_classify_and_count(cond, prior, std::span<const std::size_t>(test.counts()));
}

}  // namespace isa
