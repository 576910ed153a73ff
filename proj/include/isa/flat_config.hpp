#pragma once

#include <charconv>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "isa/error.hpp"

namespace isa {

inline std::string_view trim(std::string_view s) {
    const auto first = s.find_first_not_of(" \t\r\n");
    if (first == std::string_view::npos) return {};
    const auto last = s.find_last_not_of(" \t\r\n");
    return s.substr(first, last - first + 1);
}

inline std::vector<std::string> split(std::string_view s, char delim) {
    std::vector<std::string> out;
    std::size_t start = 0;
    while (true) {
        const auto pos = s.find(delim, start);
        out.emplace_back(trim(s.substr(start, pos == std::string_view::npos ? pos : pos - start)));
        if (pos == std::string_view::npos) break;
        start = pos + 1;
    }
    return out;
}

inline double parse_double(std::string_view text, std::string_view what) {
    const auto t = trim(text);
    double value = 0.0;
    const auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), value);
    if (ec != std::errc() || ptr != t.data() + t.size() || t.empty())
        throw config_error(std::string(what) + ": not a number: '" + std::string(t) + "'");
    return value;
}

inline std::int64_t parse_int(std::string_view text, std::string_view what) {
    const auto t = trim(text);
    std::int64_t value = 0;
    const auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), value);
    if (ec != std::errc() || ptr != t.data() + t.size() || t.empty())
        throw config_error(std::string(what) + ": not an integer: '" + std::string(t) + "'");
    return value;
}

/// FNV-1a, 64 bit. Used for config fingerprints in output headers.
inline std::uint64_t fnv1a64(std::string_view data) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : data) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return h;
}

inline std::string hex64(std::uint64_t v) {
    static constexpr char digits[] = "0123456789abcdef";
    std::string out(16, '0');
    for (int i = 15; i >= 0; --i, v >>= 4) out[static_cast<std::size_t>(i)] = digits[v & 0xF];
    return out;
}

/// `key = value` file, one entry per line, `#` starts a comment. Later
/// assignments override earlier ones, which is how CLI flags layer on top.
class FlatConfig {
public:
    FlatConfig() = default;

    static FlatConfig parse(std::string_view text, std::filesystem::path base_dir = {}) {
        FlatConfig cfg;
        cfg.base_dir_ = std::move(base_dir);
        std::size_t line_no = 0;
        std::size_t start = 0;
        while (start <= text.size()) {
            const auto end = text.find('\n', start);
            auto line = text.substr(start, end == std::string_view::npos ? text.size() - start : end - start);
            ++line_no;
            if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
            line = trim(line);
            if (!line.empty()) {
                const auto eq = line.find('=');
                if (eq == std::string_view::npos)
                    throw config_error("config line " + std::to_string(line_no) + ": expected key = value");
                const auto key = trim(line.substr(0, eq));
                if (key.empty())
                    throw config_error("config line " + std::to_string(line_no) + ": empty key");
                cfg.set(std::string(key), std::string(trim(line.substr(eq + 1))));
            }
            if (end == std::string_view::npos) break;
            start = end + 1;
        }
        return cfg;
    }

    static FlatConfig load(const std::filesystem::path& path) {
        std::ifstream in(path, std::ios::binary);
        if (!in) throw config_error("cannot open config file: " + path.string());
        std::ostringstream ss;
        ss << in.rdbuf();
        return parse(ss.str(), path.parent_path());
    }

    void set(std::string key, std::string value) { entries_[std::move(key)] = std::move(value); }

    bool contains(const std::string& key) const { return entries_.count(key) != 0; }

    std::optional<std::string> get(const std::string& key) const {
        if (auto it = entries_.find(key); it != entries_.end()) return it->second;
        return std::nullopt;
    }

    std::string require(const std::string& key) const {
        if (auto v = get(key)) return *v;
        throw config_error("missing config key: " + key);
    }

    std::string get_or(const std::string& key, std::string fallback) const {
        return get(key).value_or(std::move(fallback));
    }

    double get_double(const std::string& key, double fallback) const {
        if (auto v = get(key)) return parse_double(*v, key);
        return fallback;
    }

    std::int64_t get_int(const std::string& key, std::int64_t fallback) const {
        if (auto v = get(key)) return parse_int(*v, key);
        return fallback;
    }

    std::vector<std::string> get_list(const std::string& key) const {
        if (auto v = get(key)) return split(*v, ',');
        return {};
    }

    /// Resolves a path-valued key against the directory of the config file.
    std::optional<std::filesystem::path> get_path(const std::string& key) const {
        auto v = get(key);
        if (!v) return std::nullopt;
        std::filesystem::path p(*v);
        if (p.is_relative() && !base_dir_.empty()) p = base_dir_ / p;
        return p;
    }

    const std::map<std::string, std::string>& entries() const { return entries_; }
    const std::filesystem::path& base_dir() const { return base_dir_; }

    /// Sorted `key=value` lines; the input to the config hash.
    std::string canonical() const {
        std::string out;
        for (const auto& [k, v] : entries_) out += k + "=" + v + "\n";
        return out;
    }

    std::string hash() const { return hex64(fnv1a64(canonical())); }

private:
    std::map<std::string, std::string> entries_;
    std::filesystem::path base_dir_;
};

}  // namespace isa
