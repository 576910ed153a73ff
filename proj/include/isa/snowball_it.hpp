#pragma once

#include <array>
#include <string>
#include <string_view>

#include "isa/utf8.hpp"

namespace isa::snowball_it {

// Snowball Italian stemmer. Works on code points; 'I' and 'U' mark the
// non-vowel i/u of the prelude and are lowered again at the end.

namespace detail {

inline bool is_vowel(char32_t c) {
    switch (c) {
        case U'a': case U'e': case U'i': case U'o': case U'u':
        case U'à': case U'è': case U'ì': case U'ò': case U'ù':
            return true;
        default:
            return false;
    }
}

inline bool ends_with(const std::u32string& w, std::u32string_view s) {
    return w.size() >= s.size() && std::u32string_view(w).substr(w.size() - s.size()) == s;
}

/// Longest entry of `list` that `w` ends with, or empty.
template <std::size_t N>
std::u32string_view longest_suffix(const std::u32string& w, const std::array<std::u32string_view, N>& list) {
    std::u32string_view best;
    for (auto s : list)
        if (s.size() > best.size() && ends_with(w, s)) best = s;
    return best;
}

struct Regions {
    std::size_t r1, r2, rv;
};

inline std::size_t after_non_vowel_following_vowel(const std::u32string& w, std::size_t from) {
    for (std::size_t i = from + 1; i < w.size(); ++i)
        if (!is_vowel(w[i]) && is_vowel(w[i - 1])) return i + 1;
    return w.size();
}

inline Regions mark_regions(const std::u32string& w) {
    Regions r{};
    const std::size_t n = w.size();
    r.r1 = after_non_vowel_following_vowel(w, 0);
    r.r2 = r.r1 >= n ? n : after_non_vowel_following_vowel(w, r.r1);
    r.rv = n;
    if (n >= 2) {
        if (!is_vowel(w[1])) {
            for (std::size_t i = 2; i < n; ++i)
                if (is_vowel(w[i])) { r.rv = i + 1; break; }
        } else if (is_vowel(w[0])) {
            for (std::size_t i = 2; i < n; ++i)
                if (!is_vowel(w[i])) { r.rv = i + 1; break; }
        } else {
            r.rv = n >= 3 ? 3 : n;
        }
    }
    return r;
}

inline void prelude(std::u32string& w) {
    for (auto& c : w) {
        switch (c) {
            case U'á': c = U'à'; break;
            case U'é': c = U'è'; break;
            case U'í': c = U'ì'; break;
            case U'ó': c = U'ò'; break;
            case U'ú': c = U'ù'; break;
            default: break;
        }
    }
    for (std::size_t i = 1; i < w.size(); ++i)
        if (w[i - 1] == U'q' && w[i] == U'u') w[i] = U'U';
    for (std::size_t i = 1; i + 1 < w.size(); ++i) {
        if (is_vowel(w[i - 1]) && is_vowel(w[i + 1])) {
            if (w[i] == U'u') w[i] = U'U';
            else if (w[i] == U'i') w[i] = U'I';
        }
    }
}

inline void chop(std::u32string& w, std::size_t n) { w.resize(w.size() - n); }

inline bool in_region(const std::u32string& w, std::size_t suffix_len, std::size_t region) {
    return w.size() >= suffix_len && w.size() - suffix_len >= region;
}

inline void attached_pronoun(std::u32string& w, const Regions& r) {
    static constexpr std::array<std::u32string_view, 37> pronouns{
        U"ci",     U"gli",    U"la",     U"le",     U"li",     U"lo",     U"mi",     U"ne",
        U"si",     U"ti",     U"vi",     U"sene",   U"gliela", U"gliele", U"glieli", U"glielo",
        U"gliene", U"mela",   U"mele",   U"meli",   U"melo",   U"mene",   U"tela",   U"tele",
        U"teli",   U"telo",   U"tene",   U"cela",   U"cele",   U"celi",   U"celo",   U"cene",
        U"vela",   U"vele",   U"veli",   U"velo",   U"vene"};
    // longest pronoun lying inside RV
    std::u32string_view pron;
    for (auto s : pronouns)
        if (s.size() > pron.size() && ends_with(w, s) && in_region(w, s.size(), r.rv)) pron = s;
    if (pron.empty()) return;
    std::u32string head = w.substr(0, w.size() - pron.size());
    for (std::u32string_view g : {std::u32string_view(U"ando"), std::u32string_view(U"endo")}) {
        if (ends_with(head, g) && in_region(head, g.size(), r.rv)) {
            w = head;
            return;
        }
    }
    for (std::u32string_view g : {std::u32string_view(U"ar"), std::u32string_view(U"er"), std::u32string_view(U"ir")}) {
        if (ends_with(head, g) && in_region(head, g.size(), r.rv)) {
            w = head + U"e";
            return;
        }
    }
}

/// Returns true when a suffix was removed or replaced.
inline bool standard_suffix(std::u32string& w, const Regions& r) {
    static constexpr std::array<std::u32string_view, 51> suffixes{
        U"anza",   U"anze",   U"ico",    U"ici",    U"ica",    U"ice",    U"iche",   U"ichi",
        U"ismo",   U"ismi",   U"abile",  U"abili",  U"ibile",  U"ibili",  U"ista",   U"iste",
        U"isti",   U"istà", U"istè", U"istì", U"oso", U"osi", U"osa", U"ose",
        U"mente",  U"atrice", U"atrici", U"ante",   U"anti",   U"azione", U"azioni", U"atore",
        U"atori",  U"logia",  U"logie",  U"uzione", U"uzioni", U"usione", U"usioni", U"enza",
        U"enze",   U"amento", U"amenti", U"imento", U"imenti", U"amente", U"ità", U"ivo",
        U"ivi",    U"iva",    U"ive"};
    const auto s = longest_suffix(w, suffixes);
    if (s.empty()) return false;
    const std::size_t len = s.size();
    auto in_r2 = [&](std::size_t n) { return in_region(w, n, r.r2); };

    if (s == U"amente") {
        if (!in_region(w, len, r.r1)) return false;
        chop(w, len);
        if (ends_with(w, U"iv") && in_r2(2)) {
            chop(w, 2);
            if (ends_with(w, U"at") && in_r2(2)) chop(w, 2);
        } else if (ends_with(w, U"abil") && in_r2(4)) {
            chop(w, 4);
        } else if ((ends_with(w, U"os") || ends_with(w, U"ic")) && in_r2(2)) {
            chop(w, 2);
        }
        return true;
    }
    if (s == U"amento" || s == U"amenti" || s == U"imento" || s == U"imenti") {
        if (!in_region(w, len, r.rv)) return false;
        chop(w, len);
        return true;
    }
    if (!in_r2(len)) return false;
    if (s == U"azione" || s == U"azioni" || s == U"atore" || s == U"atori") {
        chop(w, len);
        if (ends_with(w, U"ic") && in_r2(2)) chop(w, 2);
    } else if (s == U"logia" || s == U"logie") {
        chop(w, 2);
    } else if (s == U"uzione" || s == U"uzioni" || s == U"usione" || s == U"usioni") {
        chop(w, len - 1);
    } else if (s == U"enza" || s == U"enze") {
        chop(w, 2);
        w += U"te";
    } else if (s == U"ità") {
        chop(w, len);
        if (ends_with(w, U"abil") && in_r2(4)) chop(w, 4);
        else if ((ends_with(w, U"ic") || ends_with(w, U"iv")) && in_r2(2)) chop(w, 2);
    } else if (s == U"ivo" || s == U"ivi" || s == U"iva" || s == U"ive") {
        chop(w, len);
        if (ends_with(w, U"at") && in_r2(2)) {
            chop(w, 2);
            if (ends_with(w, U"ic") && in_r2(2)) chop(w, 2);
        }
    } else {
        chop(w, len);
    }
    return true;
}

inline void verb_suffix(std::u32string& w, const Regions& r) {
    static constexpr std::array<std::u32string_view, 86> suffixes{
        U"ammo",    U"ando",     U"ano",     U"are",     U"arono",   U"asse",    U"assero",
        U"assi",    U"assimo",   U"ata",     U"ate",     U"ati",     U"ato",     U"ava",
        U"avamo",   U"avano",    U"avate",   U"avi",     U"avo",     U"emmo",    U"enda",
        U"ende",    U"endi",     U"endo",    U"erà", U"erai",   U"eranno",  U"ere",
        U"erebbe",  U"erebbero", U"erei",    U"eremmo",  U"eremo",   U"ereste",  U"eresti",
        U"erete",   U"erò", U"erono",   U"essero",  U"ete",     U"eva",     U"evamo",
        U"evano",   U"evate",    U"evi",     U"evo",     U"iamo",    U"immo",
        U"irà", U"irai",    U"iranno",  U"ire",     U"irebbe",  U"irebbero", U"irei",
        U"iremmo",  U"iremo",    U"ireste",  U"iresti",  U"irete",   U"irò", U"irono",
        U"isca",    U"iscano",   U"isce",    U"isci",    U"isco",    U"iscono",  U"issero",
        U"ita",     U"ite",      U"iti",     U"ito",     U"iva",     U"ivamo",   U"ivano",
        U"ivate",   U"ivi",      U"ivo",     U"ono",     U"uta",     U"ute",     U"uti",
        U"uto",     U"ar",       U"ir"};
    std::u32string_view best;
    for (auto s : suffixes)
        if (s.size() > best.size() && ends_with(w, s) && in_region(w, s.size(), r.rv)) best = s;
    if (!best.empty()) chop(w, best.size());
}

inline void vowel_suffix(std::u32string& w, const Regions& r) {
    if (!w.empty() && in_region(w, 1, r.rv)) {
        switch (w.back()) {
            case U'a': case U'e': case U'i': case U'o':
            case U'à': case U'è': case U'ì': case U'ò':
                chop(w, 1);
                if (ends_with(w, U"i") && in_region(w, 1, r.rv)) chop(w, 1);
                break;
            default:
                break;
        }
    }
    if ((ends_with(w, U"ch") || ends_with(w, U"gh")) && in_region(w, 2, r.rv)) chop(w, 1);
}

}  // namespace detail

inline std::string stem(std::string_view word) {
    std::u32string w = utf8::decode(word);
    for (auto& c : w) c = utf8::to_lower(c);
    detail::prelude(w);
    const auto regions = detail::mark_regions(w);
    detail::attached_pronoun(w, regions);
    if (!detail::standard_suffix(w, regions)) detail::verb_suffix(w, regions);
    detail::vowel_suffix(w, regions);
    for (auto& c : w) {
        if (c == U'I') c = U'i';
        else if (c == U'U') c = U'u';
    }
    return utf8::encode(w);
}

}  // namespace isa::snowball_it
