#pragma once

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "isa/error.hpp"
#include "isa/flat_config.hpp"
#include "isa/parallel.hpp"
#include "isa/patterns.hpp"
#include "isa/stemmer.hpp"
#include "isa/tokenize.hpp"
#include "isa/utf8.hpp"
#include "isa/vocabulary.hpp"

namespace isa {

using Timestamp = std::chrono::sys_seconds;
using Day = std::chrono::sys_days;

struct RawPost {
    std::string id;
    Timestamp timestamp;
    std::string text;
    std::optional<std::string> geo;
    std::optional<std::string> lang;
};

namespace detail {

inline bool read_digits(std::string_view s, std::size_t& pos, std::size_t count, int& out) {
    if (pos + count > s.size()) return false;
    int v = 0;
    for (std::size_t i = 0; i < count; ++i) {
        const char c = s[pos + i];
        if (c < '0' || c > '9') return false;
        v = v * 10 + (c - '0');
    }
    out = v;
    pos += count;
    return true;
}

}  // namespace detail

/// ISO-8601 subset: YYYY-MM-DD, optionally followed by T or space,
/// hh:mm[:ss[.fraction]] and a zone (Z or +hh:mm / -hh:mm / +hhmm).
/// Converted to UTC; fractions are truncated.
inline Timestamp parse_timestamp(std::string_view text) {
    using namespace std::chrono;
    const auto s = trim(text);
    auto fail = [&]() -> Error { return data_error("invalid ISO-8601 timestamp: '" + std::string(s) + "'"); };
    std::size_t pos = 0;
    int y = 0, mo = 0, d = 0, hh = 0, mi = 0, ss = 0;
    if (!detail::read_digits(s, pos, 4, y) || pos >= s.size() || s[pos++] != '-' ||
        !detail::read_digits(s, pos, 2, mo) || pos >= s.size() || s[pos++] != '-' ||
        !detail::read_digits(s, pos, 2, d))
        throw fail();
    const year_month_day ymd{year{y}, month{static_cast<unsigned>(mo)}, day{static_cast<unsigned>(d)}};
    if (!ymd.ok()) throw fail();
    int offset_minutes = 0;
    if (pos < s.size()) {
        if (s[pos] != 'T' && s[pos] != ' ') throw fail();
        ++pos;
        if (!detail::read_digits(s, pos, 2, hh) || pos >= s.size() || s[pos++] != ':' ||
            !detail::read_digits(s, pos, 2, mi))
            throw fail();
        if (pos < s.size() && s[pos] == ':') {
            ++pos;
            if (!detail::read_digits(s, pos, 2, ss)) throw fail();
            if (pos < s.size() && (s[pos] == '.' || s[pos] == ',')) {
                ++pos;
                const auto start = pos;
                while (pos < s.size() && s[pos] >= '0' && s[pos] <= '9') ++pos;
                if (pos == start) throw fail();
            }
        }
        if (hh > 23 || mi > 59 || ss > 60) throw fail();
        if (pos < s.size()) {
            if (s[pos] == 'Z') {
                ++pos;
            } else if (s[pos] == '+' || s[pos] == '-') {
                const int sign = s[pos] == '-' ? -1 : 1;
                ++pos;
                int oh = 0, om = 0;
                if (!detail::read_digits(s, pos, 2, oh)) throw fail();
                if (pos < s.size() && s[pos] == ':') ++pos;
                if (!detail::read_digits(s, pos, 2, om)) throw fail();
                offset_minutes = sign * (oh * 60 + om);
            } else {
                throw fail();
            }
        }
        if (pos != s.size()) throw fail();
    }
    return sys_days{ymd} + hours{hh} + minutes{mi} + seconds{ss} - minutes{offset_minutes};
}

inline std::string format_day(Day day) {
    const std::chrono::year_month_day ymd{day};
    char buf[16];
    std::snprintf(buf, sizeof buf, "%04d-%02u-%02u", static_cast<int>(ymd.year()),
                  static_cast<unsigned>(ymd.month()), static_cast<unsigned>(ymd.day()));
    return buf;
}

inline Day parse_day(std::string_view text) {
    return std::chrono::floor<std::chrono::days>(parse_timestamp(text));
}

inline Day day_of(const RawPost& post) { return std::chrono::floor<std::chrono::days>(post.timestamp); }

/// Parses one JSON-lines record: {"id":..,"ts":..,"text":..,"geo":..,"lang":..}.
/// Invalid UTF-8 is replaced before parsing.
inline RawPost parse_post(std::string_view line, std::size_t line_no = 0) {
    const auto where = [&] { return line_no ? " (line " + std::to_string(line_no) + ")" : std::string(); };
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(utf8::sanitize(line));
    } catch (const nlohmann::json::exception& e) {
        throw data_error("corpus record is not a JSON object" + where() + ": " + e.what());
    }
    if (!j.is_object()) throw data_error("corpus record is not a JSON object" + where());
    auto str_field = [&](const char* key, bool required) -> std::optional<std::string> {
        auto it = j.find(key);
        if (it == j.end() || it->is_null()) {
            if (required) throw data_error(std::string("corpus record missing '") + key + "'" + where());
            return std::nullopt;
        }
        if (it->is_string()) return it->get<std::string>();
        if (it->is_number_integer()) return std::to_string(it->get<long long>());
        throw data_error(std::string("corpus field '") + key + "' must be a string" + where());
    };
    RawPost post;
    post.id = *str_field("id", true);
    if (post.id.empty()) throw data_error("corpus record has an empty id" + where());
    post.timestamp = parse_timestamp(*str_field("ts", true));
    post.text = str_field("text", false).value_or("");
    post.geo = str_field("geo", false);
    post.lang = str_field("lang", false);
    if (post.geo && post.geo->empty()) post.geo.reset();
    return post;
}

inline std::vector<RawPost> read_corpus(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw config_error("cannot open corpus file: " + path.string());
    std::vector<RawPost> posts;
    std::set<std::string> seen;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (trim(line).empty()) continue;
        auto post = parse_post(line, line_no);
        if (!seen.insert(post.id).second)
            throw data_error("duplicate document id '" + post.id + "' (line " + std::to_string(line_no) + ")");
        posts.push_back(std::move(post));
    }
    return posts;
}

inline std::string post_to_json(const RawPost& post) {
    using namespace std::chrono;
    const auto day = floor<days>(post.timestamp);
    const hh_mm_ss tod{post.timestamp - day};
    char ts[32];
    std::snprintf(ts, sizeof ts, "%sT%02d:%02d:%02dZ", format_day(day).c_str(), static_cast<int>(tod.hours().count()),
                  static_cast<int>(tod.minutes().count()), static_cast<int>(tod.seconds().count()));
    nlohmann::ordered_json j;
    j["id"] = post.id;
    j["ts"] = ts;
    j["text"] = post.text;
    if (post.geo) j["geo"] = *post.geo;
    if (post.lang) j["lang"] = *post.lang;
    return j.dump();
}

struct PipelineConfig {
    StemmerId stemmer = StemmerId::identity;
    VocabularyConfig vocabulary;

    /// Reads `stemmer`, `ngrams`, `min_df`, `max_df_ratio`; absent keys keep defaults.
    static PipelineConfig from(const FlatConfig& cfg) {
        PipelineConfig out;
        if (auto s = cfg.get("stemmer")) out.stemmer = parse_stemmer_id(*s);
        if (cfg.contains("ngrams")) {
            out.vocabulary.ngrams.clear();
            for (const auto& item : cfg.get_list("ngrams")) {
                const auto n = parse_int(item, "ngrams");
                if (n < 1) throw config_error("ngrams: orders must be >= 1");
                out.vocabulary.ngrams.insert(static_cast<int>(n));
            }
            if (out.vocabulary.ngrams.empty()) throw config_error("ngrams: empty list");
        }
        const auto min_df = cfg.get_int("min_df", 1);
        if (min_df < 1) throw config_error("min_df must be >= 1");
        out.vocabulary.min_df = static_cast<std::size_t>(min_df);
        out.vocabulary.max_df_ratio = cfg.get_double("max_df_ratio", 1.0);
        if (!(out.vocabulary.max_df_ratio > 0.0 && out.vocabulary.max_df_ratio <= 1.0))
            throw config_error("max_df_ratio must lie in (0, 1]");
        return out;
    }
};

inline StemmedDoc preprocess(std::string_view text, StemmerId stemmer) { return stem(tokenize(text), stemmer); }

struct ProcessedCorpus {
    Vocabulary vocabulary;
    PatternTable table;
};

/// tokenize -> stem -> vocabulary -> vectorize -> pattern table.
/// Per-document work is spread over `workers`; the result is canonical.
inline ProcessedCorpus process_corpus(const std::vector<RawPost>& posts, const PipelineConfig& config,
                                      unsigned workers = 1) {
    std::vector<StemmedDoc> docs(posts.size());
    parallel_for(posts.size(), workers, [&](std::size_t i) { docs[i] = preprocess(posts[i].text, config.stemmer); });
    ProcessedCorpus out;
    out.vocabulary = build_vocabulary(docs, config.vocabulary);
    std::vector<DocumentVector> vectors(posts.size());
    parallel_for(posts.size(), workers, [&](std::size_t i) {
        vectors[i] = DocumentVector(posts[i].id, vectorize(docs[i], out.vocabulary));
    });
    out.table = build_pattern_table(std::move(vectors));
    return out;
}

}  // namespace isa
