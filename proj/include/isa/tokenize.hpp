#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "isa/utf8.hpp"

namespace isa {

namespace detail {

inline bool is_space(char32_t c) {
    return c == U' ' || (c >= 0x09 && c <= 0x0D) || c == 0x85 || c == 0xA0 || c == 0x1680 ||
           (c >= 0x2000 && c <= 0x200A) || c == 0x2028 || c == 0x2029 || c == 0x202F ||
           c == 0x205F || c == 0x3000;
}

inline bool is_apostrophe(char32_t c) { return c == U'\'' || c == 0x2019; }

/// Letters, digits, underscore and any code point outside the punctuation,
/// symbol and emoji blocks.
inline bool is_word_char(char32_t c) {
    if (c < 0x80) {
        return (c >= U'a' && c <= U'z') || (c >= U'A' && c <= U'Z') || (c >= U'0' && c <= U'9') ||
               c == U'_';
    }
    if (c <= 0xBF) return false;  // C1 controls, Latin-1 punctuation and symbols
    if (c == 0xD7 || c == 0xF7) return false;
    if (c >= 0x2000 && c <= 0x2BFF) return false;  // general punctuation .. misc symbols/arrows
    if (c >= 0x3000 && c <= 0x303F) return false;
    if (c >= 0xFE00 && c <= 0xFE0F) return false;
    if (c == utf8::replacement) return false;
    if (c >= 0x1F000 && c <= 0x1FAFF) return false;  // emoji and pictographs
    return true;
}

inline bool starts_with_ci(std::u32string_view s, std::u32string_view prefix) {
    if (s.size() < prefix.size()) return false;
    for (std::size_t i = 0; i < prefix.size(); ++i)
        if (utf8::to_lower(s[i]) != prefix[i]) return false;
    return true;
}

inline void emit_words(std::u32string_view chunk, std::vector<std::string>& out) {
    std::u32string word;
    auto flush = [&] {
        if (!word.empty()) out.push_back(utf8::encode(word));
        word.clear();
    };
    for (std::size_t i = 0; i < chunk.size(); ++i) {
        const char32_t c = chunk[i];
        if (is_word_char(c)) {
            word.push_back(utf8::to_lower(c));
        } else if ((is_apostrophe(c) || c == U'-') && !word.empty() && i + 1 < chunk.size() &&
                   is_word_char(chunk[i + 1])) {
            word.push_back(is_apostrophe(c) ? U'\'' : U'-');
        } else {
            flush();
        }
    }
    flush();
}

}  // namespace detail

/// Social-media tokenizer with a frozen rule set:
///  - text is lowercased; invalid UTF-8 is replaced, never fatal;
///  - whitespace-separated chunks that are URLs (http://, https://, www.)
///    or user mentions (@name) are dropped;
///  - hashtags are kept with the leading '#' stripped;
///  - punctuation separates words; an apostrophe or hyphen survives only
///    between two word characters ("let's", "well-being");
///  - token order follows the text.
inline std::vector<std::string> tokenize(std::string_view text) {
    const std::u32string decoded = utf8::decode(text);
    std::u32string_view rest(decoded);
    std::vector<std::string> tokens;
    std::size_t i = 0;
    while (i < rest.size()) {
        while (i < rest.size() && detail::is_space(rest[i])) ++i;
        std::size_t j = i;
        while (j < rest.size() && !detail::is_space(rest[j])) ++j;
        if (j == i) break;
        auto chunk = rest.substr(i, j - i);
        i = j;

        // skip opening punctuation such as "(" or quotes, but not the markers
        std::size_t lead = 0;
        while (lead < chunk.size() && !detail::is_word_char(chunk[lead]) && chunk[lead] != U'#' &&
               chunk[lead] != U'@')
            ++lead;
        chunk = chunk.substr(lead);
        if (chunk.empty()) continue;
        if (chunk.front() == U'@') continue;
        if (detail::starts_with_ci(chunk, U"http://") || detail::starts_with_ci(chunk, U"https://") ||
            detail::starts_with_ci(chunk, U"www."))
            continue;
        while (!chunk.empty() && chunk.front() == U'#') chunk.remove_prefix(1);
        detail::emit_words(chunk, tokens);
    }
    return tokens;
}

}  // namespace isa
