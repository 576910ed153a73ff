#pragma once

#include <array>
#include <string>
#include <string_view>

namespace isa::porter {

// Porter's 1980 suffix stripper, original rule set (ABLI -> ABLE, no LOGI
// rule). Operates on lowercase bytes; non-ASCII bytes count as consonants.

namespace detail {

struct Rule {
    std::string_view suffix;
    std::string_view replacement;
};

inline bool is_consonant(std::string_view w, std::size_t i) {
    switch (w[i]) {
        case 'a': case 'e': case 'i': case 'o': case 'u': return false;
        case 'y': return i == 0 ? true : !is_consonant(w, i - 1);
        default: return true;
    }
}

/// m in [C](VC)^m[V].
inline int measure(std::string_view s) {
    int m = 0;
    std::size_t i = 0;
    const std::size_t n = s.size();
    while (i < n && is_consonant(s, i)) ++i;
    while (i < n) {
        while (i < n && !is_consonant(s, i)) ++i;
        if (i >= n) break;
        while (i < n && is_consonant(s, i)) ++i;
        ++m;
    }
    return m;
}

inline bool has_vowel(std::string_view s) {
    for (std::size_t i = 0; i < s.size(); ++i)
        if (!is_consonant(s, i)) return true;
    return false;
}

inline bool ends_double_consonant(std::string_view s) {
    const auto n = s.size();
    return n >= 2 && s[n - 1] == s[n - 2] && is_consonant(s, n - 1);
}

/// *o: stem ends consonant-vowel-consonant, last not w, x or y.
inline bool ends_cvc(std::string_view s) {
    const auto n = s.size();
    if (n < 3) return false;
    if (!is_consonant(s, n - 1) || is_consonant(s, n - 2) || !is_consonant(s, n - 3)) return false;
    const char c = s[n - 1];
    return c != 'w' && c != 'x' && c != 'y';
}

inline bool ends_with(std::string_view w, std::string_view suffix) {
    return w.size() >= suffix.size() && w.substr(w.size() - suffix.size()) == suffix;
}

/// Applies the rule with the longest matching suffix, if its stem passes
/// `cond`. A matching rule whose condition fails ends the step.
template <std::size_t N, typename Cond>
void apply_longest(std::string& w, const std::array<Rule, N>& rules, Cond cond) {
    const Rule* best = nullptr;
    for (const auto& r : rules)
        if (ends_with(w, r.suffix) && (!best || r.suffix.size() > best->suffix.size())) best = &r;
    if (!best) return;
    const std::string_view stem(w.data(), w.size() - best->suffix.size());
    if (!cond(stem, *best)) return;
    w.resize(stem.size());
    w += best->replacement;
}

inline void step1a(std::string& w) {
    if (ends_with(w, "sses")) w.resize(w.size() - 2);
    else if (ends_with(w, "ies")) w.resize(w.size() - 2);
    else if (ends_with(w, "ss")) return;
    else if (ends_with(w, "s")) w.pop_back();
}

inline void step1b(std::string& w) {
    if (ends_with(w, "eed")) {
        if (measure(std::string_view(w).substr(0, w.size() - 3)) > 0) w.pop_back();
        return;
    }
    std::size_t cut = 0;
    if (ends_with(w, "ed") && has_vowel(std::string_view(w).substr(0, w.size() - 2))) cut = 2;
    else if (ends_with(w, "ing") && has_vowel(std::string_view(w).substr(0, w.size() - 3))) cut = 3;
    if (cut == 0) return;
    w.resize(w.size() - cut);
    if (ends_with(w, "at") || ends_with(w, "bl") || ends_with(w, "iz")) {
        w += 'e';
    } else if (ends_double_consonant(w)) {
        const char c = w.back();
        if (c != 'l' && c != 's' && c != 'z') w.pop_back();
    } else if (measure(w) == 1 && ends_cvc(w)) {
        w += 'e';
    }
}

inline void step1c(std::string& w) {
    if (ends_with(w, "y") && has_vowel(std::string_view(w).substr(0, w.size() - 1))) w.back() = 'i';
}

inline void step2(std::string& w) {
    static constexpr std::array<Rule, 20> rules{{
        {"ational", "ate"}, {"tional", "tion"}, {"enci", "ence"}, {"anci", "ance"},
        {"izer", "ize"},    {"abli", "able"},   {"alli", "al"},   {"entli", "ent"},
        {"eli", "e"},       {"ousli", "ous"},   {"ization", "ize"}, {"ation", "ate"},
        {"ator", "ate"},    {"alism", "al"},    {"iveness", "ive"}, {"fulness", "ful"},
        {"ousness", "ous"}, {"aliti", "al"},    {"iviti", "ive"}, {"biliti", "ble"},
    }};
    apply_longest(w, rules, [](std::string_view stem, const Rule&) { return measure(stem) > 0; });
}

inline void step3(std::string& w) {
    static constexpr std::array<Rule, 7> rules{{
        {"icate", "ic"}, {"ative", ""}, {"alize", "al"}, {"iciti", "ic"},
        {"ical", "ic"},  {"ful", ""},   {"ness", ""},
    }};
    apply_longest(w, rules, [](std::string_view stem, const Rule&) { return measure(stem) > 0; });
}

inline void step4(std::string& w) {
    static constexpr std::array<Rule, 19> rules{{
        {"al", ""},   {"ance", ""}, {"ence", ""}, {"er", ""},  {"ic", ""},   {"able", ""},  {"ible", ""},
        {"ant", ""},  {"ement", ""}, {"ment", ""}, {"ent", ""}, {"ion", ""}, {"ou", ""},    {"ism", ""},
        {"ate", ""},  {"iti", ""},  {"ous", ""},  {"ive", ""}, {"ize", ""},
    }};
    apply_longest(w, rules, [](std::string_view stem, const Rule& r) {
        if (measure(stem) <= 1) return false;
        if (r.suffix == "ion") return !stem.empty() && (stem.back() == 's' || stem.back() == 't');
        return true;
    });
}

inline void step5(std::string& w) {
    if (ends_with(w, "e")) {
        const std::string_view stem(w.data(), w.size() - 1);
        const int m = measure(stem);
        if (m > 1 || (m == 1 && !ends_cvc(stem))) w.pop_back();
    }
    if (ends_with(w, "ll") && measure(w) > 1) w.pop_back();
}

}  // namespace detail

inline std::string stem(std::string_view word) {
    std::string w(word);
    detail::step1a(w);
    detail::step1b(w);
    detail::step1c(w);
    detail::step2(w);
    detail::step3(w);
    detail::step4(w);
    detail::step5(w);
    return w;
}

}  // namespace isa::porter
