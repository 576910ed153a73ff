#pragma once

#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "isa/error.hpp"
#include "isa/flat_config.hpp"
#include "isa/patterns.hpp"

namespace isa {

/// Ordered categories D0..DM. D0, the off-topic/noise class, sits at
/// `noise_index` (0 by convention).
class CategorySet {
public:
    CategorySet() = default;

    explicit CategorySet(std::vector<std::string> labels, std::size_t noise_index = 0)
        : labels_(std::move(labels)), noise_index_(noise_index) {
        if (labels_.size() < 2) throw config_error("category set needs D0 plus at least one category");
        if (noise_index_ >= labels_.size()) throw config_error("category set: noise index out of range");
        for (std::size_t i = 0; i < labels_.size(); ++i) {
            if (labels_[i].empty()) throw config_error("category set: empty label");
            for (std::size_t j = 0; j < i; ++j)
                if (labels_[i] == labels_[j]) throw config_error("category set: duplicate label '" + labels_[i] + "'");
        }
    }

    /// `categories = off, neg, neu, pos`; the first entry is D0.
    static CategorySet from(const FlatConfig& cfg, const std::string& key = "categories") {
        return CategorySet(split(cfg.require(key), ','));
    }

    std::size_t size() const { return labels_.size(); }
    const std::vector<std::string>& labels() const { return labels_; }
    const std::string& label(std::size_t i) const { return labels_.at(i); }
    std::size_t noise_index() const { return noise_index_; }

    std::optional<std::size_t> index_of(const std::string& label) const {
        for (std::size_t i = 0; i < labels_.size(); ++i)
            if (labels_[i] == label) return i;
        return std::nullopt;
    }

    friend bool operator==(const CategorySet&, const CategorySet&) = default;

private:
    std::vector<std::string> labels_;
    std::size_t noise_index_ = 0;
};

/// P(D) over a category order, with optional bootstrap standard errors.
struct CategoryDistribution {
    std::vector<double> probs;
    std::optional<std::vector<double>> se;

    std::size_t size() const { return probs.size(); }
    double operator[](std::size_t i) const { return probs[i]; }
};

struct LabeledPattern {
    std::size_t pattern;
    std::size_t label;
};

/// A pattern table whose documents are partly hand coded. Coded documents
/// form the training subset, the rest the test subset.
class CodedCorpus {
public:
    CodedCorpus() = default;

    CodedCorpus(PatternTable table, CategorySet categories, std::map<std::string, std::size_t> codes)
        : table_(std::move(table)), categories_(std::move(categories)), codes_(std::move(codes)) {
        for (const auto& [id, label] : codes_) {
            if (!table_.doc_to_pattern().count(id)) throw data_error("coded document '" + id + "' is not in the corpus");
            if (label >= categories_.size()) throw data_error("code for '" + id + "' is outside the category set");
        }
    }

    /// Codes given as labels; every label must belong to the category set.
    static CodedCorpus from_labels(PatternTable table, CategorySet categories,
                                   const std::map<std::string, std::string>& labels) {
        std::map<std::string, std::size_t> codes;
        for (const auto& [id, label] : labels) {
            auto idx = categories.index_of(label);
            if (!idx) throw data_error("document '" + id + "' has label '" + label + "' not declared in categories");
            codes.emplace(id, *idx);
        }
        return CodedCorpus(std::move(table), std::move(categories), std::move(codes));
    }

    const PatternTable& table() const { return table_; }
    const CategorySet& categories() const { return categories_; }
    const std::map<std::string, std::size_t>& codes() const { return codes_; }

    std::size_t training_size() const { return codes_.size(); }
    std::size_t test_size() const { return table_.total() - codes_.size(); }
    bool is_coded(const std::string& doc_id) const { return codes_.count(doc_id) != 0; }

    /// Training documents as (pattern, label), ordered by document id.
    std::vector<LabeledPattern> training() const {
        std::vector<LabeledPattern> out;
        out.reserve(codes_.size());
        for (const auto& [id, label] : codes_) out.push_back({table_.pattern_of(id), label});
        return out;
    }

    /// Pattern counts over the uncoded documents, optionally restricted to
    /// the ids accepted by `keep`.
    template <typename Keep>
    std::vector<std::size_t> test_counts(Keep&& keep) const {
        std::vector<std::size_t> counts(table_.size(), 0);
        for (const auto& [id, k] : table_.doc_to_pattern())
            if (!codes_.count(id) && keep(id)) ++counts[k];
        return counts;
    }
    std::vector<std::size_t> test_counts() const {
        return test_counts([](const std::string&) { return true; });
    }

private:
    PatternTable table_;
    CategorySet categories_;
    std::map<std::string, std::size_t> codes_;
};

/// Normalises pattern counts into P(S).
inline std::vector<double> to_distribution(const std::vector<std::size_t>& counts) {
    std::size_t total = 0;
    for (auto c : counts) total += c;
    if (total == 0) throw data_error("empty test set: no uncoded documents to estimate from");
    std::vector<double> p(counts.size());
    for (std::size_t k = 0; k < counts.size(); ++k) p[k] = static_cast<double>(counts[k]) / static_cast<double>(total);
    return p;
}

/// Training-codes file: `doc_id,label` per line (comma, tab or semicolon),
/// an optional header row and `#` comments.
inline std::map<std::string, std::string> read_codes(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw config_error("cannot open codes file: " + path.string());
    std::map<std::string, std::string> codes;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const auto t = trim(line);
        if (t.empty() || t.front() == '#') continue;
        const auto delim = t.find_first_of(",\t;");
        if (delim == std::string_view::npos)
            throw data_error("codes line " + std::to_string(line_no) + ": expected doc_id,label");
        std::string id(trim(t.substr(0, delim)));
        std::string label(trim(t.substr(delim + 1)));
        if (line_no == 1 && id == "doc_id") continue;
        if (id.empty() || label.empty())
            throw data_error("codes line " + std::to_string(line_no) + ": empty doc_id or label");
        if (!codes.emplace(id, label).second)
            throw data_error("codes line " + std::to_string(line_no) + ": duplicate doc_id '" + id + "'");
    }
    return codes;
}

}  // namespace isa
