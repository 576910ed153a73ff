#pragma once

#include <algorithm>
#include <cstdint>
#include <functional>
#include <map>
#include <span>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "isa/error.hpp"
#include "isa/vocabulary.hpp"

namespace isa {

/// Binary stem-presence vector of fixed length L, packed 64 bits per word.
class StemVector {
public:
    StemVector() = default;
    explicit StemVector(std::size_t length) : length_(length), words_((length + 63) / 64, 0) {}

    static StemVector from_bits(std::span<const int> bits) {
        StemVector v(bits.size());
        for (std::size_t i = 0; i < bits.size(); ++i) {
            if (bits[i] != 0 && bits[i] != 1) throw data_error("stem vector entries must be 0 or 1");
            if (bits[i] == 1) v.set(i);
        }
        return v;
    }
    static StemVector from_bits(std::initializer_list<int> bits) {
        return from_bits(std::span<const int>(bits.begin(), bits.size()));
    }

    std::size_t size() const { return length_; }
    bool test(std::size_t i) const { return (words_[i / 64] >> (i % 64)) & 1U; }
    void set(std::size_t i, bool value = true) {
        const std::uint64_t mask = std::uint64_t{1} << (i % 64);
        if (value) words_[i / 64] |= mask;
        else words_[i / 64] &= ~mask;
    }

    std::size_t count() const {
        std::size_t c = 0;
        for (auto w : words_) c += static_cast<std::size_t>(__builtin_popcountll(w));
        return c;
    }

    std::vector<int> bits() const {
        std::vector<int> out(length_);
        for (std::size_t i = 0; i < length_; ++i) out[i] = test(i) ? 1 : 0;
        return out;
    }

    std::string to_string() const {
        std::string s(length_, '0');
        for (std::size_t i = 0; i < length_; ++i)
            if (test(i)) s[i] = '1';
        return s;
    }

    std::size_t hash() const {
        std::size_t h = std::hash<std::size_t>{}(length_);
        for (auto w : words_) h ^= std::hash<std::uint64_t>{}(w) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
        return h;
    }

    friend bool operator==(const StemVector&, const StemVector&) = default;

private:
    std::size_t length_ = 0;
    std::vector<std::uint64_t> words_;
};

struct StemVectorHash {
    std::size_t operator()(const StemVector& v) const { return v.hash(); }
};

/// Bit i is set iff vocabulary entry i occurs in the document (n-grams of the
/// orders the vocabulary was built with). Unknown stems are ignored.
inline StemVector vectorize(const StemmedDoc& doc, const Vocabulary& vocab) {
    if (vocab.empty()) throw data_error("vectorize: vocabulary is empty");
    StemVector v(vocab.size());
    for (const auto& g : document_ngrams(doc, vocab.config().ngrams)) {
        const auto idx = vocab.find(g);
        if (idx < vocab.size()) v.set(idx);
    }
    return v;
}

using DocumentVector = std::pair<std::string, StemVector>;

/// The K distinct patterns of a corpus with their multiplicities.
///
/// Canonical form: documents are keyed by id and a pattern's index is the
/// rank of the smallest document id carrying it, so the table does not
/// depend on the order documents arrive in.
class PatternTable {
public:
    PatternTable() = default;

    std::size_t size() const { return patterns_.size(); }
    std::size_t stem_count() const { return stem_count_; }
    std::size_t total() const { return doc_to_pattern_.size(); }

    const std::vector<StemVector>& patterns() const { return patterns_; }
    const std::vector<std::size_t>& counts() const { return counts_; }
    const std::map<std::string, std::size_t>& doc_to_pattern() const { return doc_to_pattern_; }

    std::size_t pattern_of(const std::string& doc_id) const {
        auto it = doc_to_pattern_.find(doc_id);
        if (it == doc_to_pattern_.end()) throw data_error("unknown document id: " + doc_id);
        return it->second;
    }

    /// Empirical P(S) = counts / total.
    std::vector<double> empirical() const {
        std::vector<double> p(counts_.size(), 0.0);
        const auto n = static_cast<double>(total());
        if (n == 0) return p;
        for (std::size_t k = 0; k < counts_.size(); ++k) p[k] = static_cast<double>(counts_[k]) / n;
        return p;
    }

    friend PatternTable build_pattern_table(std::vector<DocumentVector> docs);

private:
    std::size_t stem_count_ = 0;
    std::vector<StemVector> patterns_;
    std::vector<std::size_t> counts_;
    std::map<std::string, std::size_t> doc_to_pattern_;
};

inline PatternTable build_pattern_table(std::vector<DocumentVector> docs) {
    PatternTable table;
    if (docs.empty()) return table;
    std::sort(docs.begin(), docs.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
    const std::size_t length = docs.front().second.size();
    std::unordered_map<StemVector, std::size_t, StemVectorHash> index;
    for (std::size_t i = 0; i < docs.size(); ++i) {
        auto& [id, vec] = docs[i];
        if (vec.size() != length)
            throw data_error("pattern table: document '" + id + "' has " + std::to_string(vec.size()) +
                             " stems, expected " + std::to_string(length));
        if (i > 0 && docs[i - 1].first == id) throw data_error("pattern table: duplicate document id '" + id + "'");
        auto [it, inserted] = index.try_emplace(vec, table.patterns_.size());
        if (inserted) {
            table.patterns_.push_back(vec);
            table.counts_.push_back(0);
        }
        ++table.counts_[it->second];
        table.doc_to_pattern_.emplace_hint(table.doc_to_pattern_.end(), id, it->second);
    }
    table.stem_count_ = length;
    return table;
}

/// Union of two tables over disjoint document sets. Associative and
/// commutative: the result is the canonical table of all documents.
inline PatternTable merge(const PatternTable& a, const PatternTable& b) {
    std::vector<DocumentVector> docs;
    docs.reserve(a.total() + b.total());
    for (const auto* t : {&a, &b})
        for (const auto& [id, k] : t->doc_to_pattern()) docs.emplace_back(id, t->patterns()[k]);
    return build_pattern_table(std::move(docs));
}

}  // namespace isa
