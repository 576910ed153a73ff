#pragma once

#include <algorithm>
#include <cmath>
#include <set>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "isa/error.hpp"

namespace isa {

using StemmedDoc = std::vector<std::string>;

struct VocabularyConfig {
    std::set<int> ngrams{1};
    std::size_t min_df = 1;
    double max_df_ratio = 1.0;
};

/// Distinct n-grams of a document; orders > 1 join stems with '_'.
inline std::vector<std::string> document_ngrams(const StemmedDoc& doc, const std::set<int>& orders) {
    std::vector<std::string> grams;
    for (int n : orders) {
        if (n < 1) continue;
        const auto order = static_cast<std::size_t>(n);
        if (doc.size() < order) continue;
        for (std::size_t i = 0; i + order <= doc.size(); ++i) {
            std::string g = doc[i];
            for (std::size_t k = 1; k < order; ++k) {
                g += '_';
                g += doc[i + k];
            }
            grams.push_back(std::move(g));
        }
    }
    std::sort(grams.begin(), grams.end());
    grams.erase(std::unique(grams.begin(), grams.end()), grams.end());
    return grams;
}

class Vocabulary {
public:
    Vocabulary() = default;

    Vocabulary(std::vector<std::string> stems, std::vector<std::size_t> doc_frequency, VocabularyConfig config)
        : stems_(std::move(stems)), doc_frequency_(std::move(doc_frequency)), config_(std::move(config)) {
        if (stems_.size() != doc_frequency_.size())
            throw data_error("vocabulary: stems and document frequencies differ in length");
        index_.reserve(stems_.size());
        for (std::size_t i = 0; i < stems_.size(); ++i) {
            if (i > 0 && !(stems_[i - 1] < stems_[i]))
                throw data_error("vocabulary: stems must be sorted and distinct");
            index_.emplace(stems_[i], i);
        }
    }

    std::size_t size() const { return stems_.size(); }
    bool empty() const { return stems_.empty(); }
    const std::vector<std::string>& stems() const { return stems_; }
    const std::vector<std::size_t>& doc_frequency() const { return doc_frequency_; }
    const VocabularyConfig& config() const { return config_; }

    /// Position of a stem, or size() when out of vocabulary.
    std::size_t find(const std::string& stem) const {
        auto it = index_.find(stem);
        return it == index_.end() ? stems_.size() : it->second;
    }

private:
    std::vector<std::string> stems_;
    std::vector<std::size_t> doc_frequency_;
    VocabularyConfig config_;
    std::unordered_map<std::string, std::size_t> index_;
};

/// Keeps the n-grams whose document frequency lies in
/// [min_df, max_df_ratio * N], sorted lexicographically.
inline Vocabulary build_vocabulary(const std::vector<StemmedDoc>& corpus, const VocabularyConfig& config) {
    if (config.min_df < 1) throw config_error("min_df must be >= 1");
    if (!(config.max_df_ratio > 0.0 && config.max_df_ratio <= 1.0))
        throw config_error("max_df_ratio must lie in (0, 1]");
    if (config.ngrams.empty() || *config.ngrams.begin() < 1)
        throw config_error("ngrams must be a non-empty set of orders >= 1");

    std::unordered_map<std::string, std::size_t> df;
    for (const auto& doc : corpus)
        for (auto& g : document_ngrams(doc, config.ngrams)) ++df[g];

    // tolerate representation error in ratio * N, e.g. 0.7 * 10
    const auto max_df = static_cast<std::size_t>(
        std::floor(config.max_df_ratio * static_cast<double>(corpus.size()) + 1e-9));
    std::vector<std::pair<std::string, std::size_t>> kept;
    for (auto& [g, count] : df)
        if (count >= config.min_df && count <= max_df) kept.emplace_back(g, count);
    if (kept.empty()) throw data_error("empty vocabulary: no stem survives document-frequency pruning");
    std::sort(kept.begin(), kept.end());

    std::vector<std::string> stems;
    std::vector<std::size_t> freq;
    stems.reserve(kept.size());
    freq.reserve(kept.size());
    for (auto& [g, count] : kept) {
        stems.push_back(g);
        freq.push_back(count);
    }
    return Vocabulary(std::move(stems), std::move(freq), config);
}

}  // namespace isa
