#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "isa/error.hpp"
#include "isa/porter.hpp"
#include "isa/snowball_it.hpp"

namespace isa {

enum class StemmerId { identity, suffix_en, suffix_it };

inline StemmerId parse_stemmer_id(std::string_view id) {
    if (id == "identity") return StemmerId::identity;
    if (id == "suffix-en") return StemmerId::suffix_en;
    if (id == "suffix-it") return StemmerId::suffix_it;
    throw config_error("unknown stemmer id '" + std::string(id) +
                       "' (expected identity, suffix-en or suffix-it)");
}

inline std::string_view to_string(StemmerId id) {
    switch (id) {
        case StemmerId::identity: return "identity";
        case StemmerId::suffix_en: return "suffix-en";
        case StemmerId::suffix_it: return "suffix-it";
    }
    return "identity";
}

inline std::string stem_word(std::string_view token, StemmerId stemmer) {
    switch (stemmer) {
        case StemmerId::suffix_en: return porter::stem(token);
        case StemmerId::suffix_it: return snowball_it::stem(token);
        case StemmerId::identity: break;
    }
    return std::string(token);
}

/// One stem per token, same order.
inline std::vector<std::string> stem(const std::vector<std::string>& tokens, StemmerId stemmer) {
    std::vector<std::string> out;
    out.reserve(tokens.size());
    for (const auto& t : tokens) out.push_back(stem_word(t, stemmer));
    return out;
}

inline std::vector<std::string> stem(const std::vector<std::string>& tokens, std::string_view stemmer) {
    return stem(tokens, parse_stemmer_id(stemmer));
}

}  // namespace isa
