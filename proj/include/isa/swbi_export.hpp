#pragma once

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "isa/corpus.hpp"
#include "isa/flat_config.hpp"
#include "isa/report_io.hpp"
#include "isa/swbi.hpp"

namespace isa::swbi {

inline std::string format_month(std::chrono::year_month ym) {
    char buf[16];
    std::snprintf(buf, sizeof buf, "%04d-%02u", static_cast<int>(ym.year()), static_cast<unsigned>(ym.month()));
    return buf;
}

inline std::string component_header() {
    std::string h;
    for (auto c : all_components) {
        h += ',';
        h += name(c);
    }
    return h;
}

/// date,emo,fun,rel,res,sat,tru,vit,wor,swbi with two decimals.
inline std::string series_csv(const std::vector<SwbiRecord>& series, const OutputHeader& header) {
    std::ostringstream os;
    header.write(os);
    os << "date" << component_header() << ",swbi\n";
    for (const auto& r : series) {
        os << format_day(r.date);
        for (double v : r.components) os << ',' << fixed(v);
        os << ',' << fixed(r.swbi) << '\n';
    }
    return os.str();
}

inline std::string monthly_csv(const std::vector<MonthlyValue>& months, const OutputHeader& header) {
    std::ostringstream os;
    header.write(os);
    os << "year-month,integrated\n";
    for (const auto& m : months) os << format_month(m.month) << ',' << fixed(m.integrated) << '\n';
    return os.str();
}

/// Yearly means; also the data behind the radar view of the components.
inline std::string yearly_csv(const std::vector<YearlyRow>& rows, const OutputHeader& header) {
    std::ostringstream os;
    header.write(os);
    os << "year" << component_header() << ",swbi,days\n";
    for (const auto& r : rows) {
        os << r.year;
        for (double v : r.components) os << ',' << fixed(v);
        os << ',' << fixed(r.swbi) << ',' << r.days << '\n';
    }
    return os.str();
}

inline std::string gaps_csv(const std::vector<Gap>& gaps, const OutputHeader& header) {
    std::ostringstream os;
    header.write(os);
    os << "date,component,reason\n";
    for (const auto& g : gaps) {
        std::string reason = g.reason;
        std::replace(reason.begin(), reason.end(), ',', ';');
        os << format_day(g.date) << ',' << g.component << ',' << reason << '\n';
    }
    return os.str();
}

/// Two-panel SVG: monthly integrated balance as bars on top, daily SWBI as
/// a line below.
inline std::string chart_svg(const std::vector<SwbiRecord>& series, const std::vector<MonthlyValue>& months,
                             double baseline, const OutputHeader& header) {
    constexpr double width = 960, height = 560, left = 70, right = 20;
    constexpr double top_y0 = 40, top_y1 = 250, bottom_y0 = 310, bottom_y1 = 520;
    const double plot_w = width - left - right;
    std::ostringstream os;
    os << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n<!--\n";
    header.write(os, "  ");
    os << "-->\n";
    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\"" << height
       << "\" viewBox=\"0 0 " << width << ' ' << height << "\" font-family=\"sans-serif\" font-size=\"11\">\n";
    os << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    os << "<text x=\"" << left << "\" y=\"24\" font-size=\"13\">Monthly integrated SWBI (sum of daily deviations from "
       << fixed(baseline) << ")</text>\n";
    os << "<text x=\"" << left << "\" y=\"" << bottom_y0 - 16 << "\" font-size=\"13\">Daily SWBI</text>\n";

    // top panel
    if (!months.empty()) {
        double lim = 1.0;
        for (const auto& m : months) lim = std::max(lim, std::abs(m.integrated));
        const double zero_y = (top_y0 + top_y1) / 2;
        const double scale = (top_y1 - top_y0) / 2 / lim;
        const double slot = plot_w / static_cast<double>(months.size());
        os << "<g id=\"monthly\">\n";
        for (std::size_t i = 0; i < months.size(); ++i) {
            const double v = months[i].integrated;
            const double h = std::abs(v) * scale;
            const double x = left + slot * static_cast<double>(i) + slot * 0.1;
            const double y = v >= 0 ? zero_y - h : zero_y;
            os << "<rect x=\"" << fixed(x) << "\" y=\"" << fixed(y) << "\" width=\"" << fixed(slot * 0.8)
               << "\" height=\"" << fixed(h) << "\" fill=\"" << (v >= 0 ? "#2a9d8f" : "#e76f51") << "\"><title>"
               << format_month(months[i].month) << ": " << fixed(v) << "</title></rect>\n";
            if (months.size() <= 24 || static_cast<unsigned>(months[i].month.month()) == 1)
                os << "<text x=\"" << fixed(x) << "\" y=\"" << top_y1 + 14 << "\" font-size=\"9\">"
                   << format_month(months[i].month) << "</text>\n";
        }
        os << "<line x1=\"" << left << "\" x2=\"" << width - right << "\" y1=\"" << zero_y << "\" y2=\"" << zero_y
           << "\" stroke=\"black\"/>\n";
        os << "<text x=\"" << left - 6 << "\" y=\"" << top_y0 + 4 << "\" text-anchor=\"end\">" << fixed(lim)
           << "</text>\n";
        os << "<text x=\"" << left - 6 << "\" y=\"" << top_y1 << "\" text-anchor=\"end\">" << fixed(-lim)
           << "</text>\n";
        os << "</g>\n";
    }

    // bottom panel
    if (!series.empty()) {
        double lo = baseline, hi = baseline;
        for (const auto& r : series) {
            lo = std::min(lo, r.swbi);
            hi = std::max(hi, r.swbi);
        }
        if (hi - lo < 1e-9) {
            lo -= 1;
            hi += 1;
        }
        const auto first = series.front().date;
        const double span = std::max(1.0, static_cast<double>((series.back().date - first).count()));
        auto px = [&](Day d) { return left + plot_w * static_cast<double>((d - first).count()) / span; };
        auto py = [&](double v) { return bottom_y1 - (bottom_y1 - bottom_y0) * (v - lo) / (hi - lo); };
        os << "<g id=\"daily\">\n";
        os << "<line x1=\"" << left << "\" x2=\"" << width - right << "\" y1=\"" << fixed(py(baseline))
           << "\" y2=\"" << fixed(py(baseline)) << "\" stroke=\"#999\" stroke-dasharray=\"4 3\"/>\n";
        os << "<polyline fill=\"none\" stroke=\"#264653\" stroke-width=\"1\" points=\"";
        for (std::size_t i = 0; i < series.size(); ++i) {
            if (i) os << ' ';
            os << fixed(px(series[i].date)) << ',' << fixed(py(series[i].swbi));
        }
        os << "\"/>\n";
        os << "<text x=\"" << left - 6 << "\" y=\"" << bottom_y0 + 4 << "\" text-anchor=\"end\">" << fixed(hi)
           << "</text>\n";
        os << "<text x=\"" << left - 6 << "\" y=\"" << bottom_y1 << "\" text-anchor=\"end\">" << fixed(lo)
           << "</text>\n";
        os << "<text x=\"" << left << "\" y=\"" << bottom_y1 + 16 << "\">" << format_day(series.front().date)
           << "</text>\n";
        os << "<text x=\"" << width - right << "\" y=\"" << bottom_y1 + 16 << "\" text-anchor=\"end\">"
           << format_day(series.back().date) << "</text>\n";
        os << "</g>\n";
    }
    os << "</svg>\n";
    return os.str();
}

/// Component values supplied directly: a header naming `date` and the eight
/// components (any order), then one row per day. `#` lines are skipped.
inline std::vector<std::pair<Day, ComponentScores>> read_component_values(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw config_error("cannot open component values file: " + path.string());
    std::string line;
    std::vector<std::size_t> column_of;  // csv column -> component index, npos for date
    std::size_t date_col = std::string::npos;
    std::vector<std::pair<Day, ComponentScores>> rows;
    std::size_t line_no = 0;
    bool have_header = false;
    while (std::getline(in, line)) {
        ++line_no;
        const auto t = trim(line);
        if (t.empty() || t.front() == '#') continue;
        const auto cells = split(t, ',');
        if (!have_header) {
            std::vector<bool> seen(component_count, false);
            for (std::size_t i = 0; i < cells.size(); ++i) {
                if (cells[i] == "date") {
                    date_col = i;
                    column_of.push_back(std::string::npos);
                } else if (auto c = parse_component(cells[i])) {
                    column_of.push_back(index(*c));
                    seen[index(*c)] = true;
                } else {
                    column_of.push_back(std::string::npos - 1);  // ignored column, e.g. swbi
                }
            }
            if (date_col == std::string::npos) throw data_error("component values: header lacks a 'date' column");
            for (auto c : all_components)
                if (!seen[index(c)])
                    throw data_error("component values: missing component '" + std::string(name(c)) + "'");
            have_header = true;
            continue;
        }
        if (cells.size() != column_of.size())
            throw data_error("component values line " + std::to_string(line_no) + ": wrong number of fields");
        ComponentScores scores{};
        for (std::size_t i = 0; i < cells.size(); ++i)
            if (column_of[i] < component_count) scores[column_of[i]] = parse_double(cells[i], "component value");
        rows.emplace_back(parse_day(cells[date_col]), scores);
    }
    if (!have_header) throw data_error("component values: empty file");
    return rows;
}

}  // namespace isa::swbi
