#pragma once

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <ostream>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "isa/error.hpp"

namespace isa {

inline constexpr const char* version = "0.1.0";
inline constexpr const char* module_versions = "textpipe/1 estimator/1 swbi/1 simlab/1";

/// Fixed-point formatting that never prints "-0.00".
inline std::string fixed(double v, int decimals = 2) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*f", decimals, v);
    std::string s(buf);
    if (s.front() == '-' && s.find_first_not_of("-0.") == std::string::npos) s.erase(0, 1);
    return s;
}

/// Round-trip precision for numbers other tools read back.
inline std::string exact(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

/// `# key=value` lines at the top of every output file.
struct OutputHeader {
    std::vector<std::pair<std::string, std::string>> fields;

    OutputHeader& add(std::string key, std::string value) {
        fields.emplace_back(std::move(key), std::move(value));
        return *this;
    }

    static OutputHeader standard(const std::string& config_hash, std::uint64_t seed) {
        OutputHeader h;
        h.add("generator", std::string("isa ") + version)
            .add("modules", module_versions)
            .add("config_hash", config_hash)
            .add("seed", std::to_string(seed));
        return h;
    }

    void write(std::ostream& os, const char* prefix = "# ") const {
        for (const auto& [k, v] : fields) os << prefix << k << '=' << v << '\n';
    }
};

inline void write_file(const std::filesystem::path& path, const std::string& content) {
    if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw config_error("cannot write output file: " + path.string());
    out << content;
    if (!out) throw config_error("write failed: " + path.string());
}

inline std::string read_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw config_error("cannot open file: " + path.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

}  // namespace isa
