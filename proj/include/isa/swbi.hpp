#pragma once

#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "isa/categories.hpp"
#include "isa/corpus.hpp"
#include "isa/error.hpp"

namespace isa::swbi {

/// The eight well-being components, in fixed output order.
enum class ComponentId { emo, fun, rel, res, sat, tru, vit, wor };

inline constexpr std::size_t component_count = 8;
inline constexpr std::array<ComponentId, component_count> all_components{
    ComponentId::emo, ComponentId::fun, ComponentId::rel, ComponentId::res,
    ComponentId::sat, ComponentId::tru, ComponentId::vit, ComponentId::wor};

inline std::string_view name(ComponentId c) {
    static constexpr std::array<std::string_view, component_count> names{"emo", "fun", "rel", "res",
                                                                         "sat", "tru", "vit", "wor"};
    return names[static_cast<std::size_t>(c)];
}

inline std::optional<ComponentId> parse_component(std::string_view s) {
    for (auto c : all_components)
        if (name(c) == s) return c;
    return std::nullopt;
}

inline std::size_t index(ComponentId c) { return static_cast<std::size_t>(c); }

struct PolarityDistribution {
    double p_off = 0.0;
    double p_neg = 0.0;
    double p_neu = 0.0;
    double p_pos = 0.0;

    double on_topic() const { return p_neg + p_neu + p_pos; }

    /// From a four-category estimate ordered D0, -1, 0, +1.
    static PolarityDistribution from(const CategoryDistribution& d) {
        if (d.size() != 4) throw data_error("polarity distribution needs exactly four categories (D0, -1, 0, +1)");
        PolarityDistribution p{d[0], d[1], d[2], d[3]};
        p.validate();
        return p;
    }

    void validate() const {
        for (double v : {p_off, p_neg, p_neu, p_pos})
            if (!(v >= 0.0)) throw data_error("polarity distribution has a negative or NaN entry");
        if (std::abs(p_off + p_neg + p_neu + p_pos - 1.0) > 1e-9)
            throw data_error("polarity distribution does not sum to one");
    }
};

enum class ScoreMap {
    positive_share,  ///< 100 * p_pos / (p_pos + p_neu + p_neg)
    signed_balance,  ///< 100 * (s_pos - s_neg + 1) / 2 on on-topic shares
};

inline ScoreMap parse_score_map(std::string_view s) {
    if (s == "positive-share") return ScoreMap::positive_share;
    if (s == "signed-balance") return ScoreMap::signed_balance;
    throw config_error("unknown score map '" + std::string(s) + "' (expected positive-share or signed-balance)");
}

inline std::string_view to_string(ScoreMap m) {
    return m == ScoreMap::positive_share ? "positive-share" : "signed-balance";
}

/// Component value on [0, 100]. Off-topic mass never enters the score.
inline double component_score(const PolarityDistribution& dist, ScoreMap map = ScoreMap::positive_share) {
    const double on = dist.on_topic();
    if (!(on > 0.0)) throw numerical_error("no signal: zero on-topic mass");
    double score = 0.0;
    if (map == ScoreMap::positive_share) {
        score = 100.0 * dist.p_pos / on;
    } else {
        score = 100.0 * (dist.p_pos / on - dist.p_neg / on + 1.0) / 2.0;
    }
    return std::clamp(score, 0.0, 100.0);
}

using ComponentScores = std::array<double, component_count>;

inline double swbi(const ComponentScores& scores) {
    double sum = 0.0;
    for (double s : scores) sum += s;
    return sum / static_cast<double>(component_count);
}

/// Same, from a keyed set; every component must be present.
inline double swbi(const std::map<ComponentId, double>& scores) {
    ComponentScores arr{};
    for (auto c : all_components) {
        auto it = scores.find(c);
        if (it == scores.end()) throw data_error("missing component '" + std::string(name(c)) + "'");
        arr[index(c)] = it->second;
    }
    return swbi(arr);
}

/// Weighted mean with weights on the simplex.
inline double swbi_weighted(const ComponentScores& scores, const std::array<double, component_count>& weights) {
    double wsum = 0.0;
    for (double w : weights) {
        if (!(w >= 0.0)) throw config_error("SWBI weights must be non-negative");
        wsum += w;
    }
    if (std::abs(wsum - 1.0) > 1e-9) throw config_error("SWBI weights must sum to one");
    double out = 0.0;
    for (std::size_t i = 0; i < component_count; ++i) out += weights[i] * scores[i];
    return out;
}

struct SwbiRecord {
    Day date;
    ComponentScores components{};
    double swbi = 0.0;

    static SwbiRecord make(Day date, const ComponentScores& scores) {
        for (double s : scores)
            if (!(s >= 0.0 && s <= 100.0)) throw data_error("component score outside [0, 100] on " + format_day(date));
        return {date, scores, swbi::swbi(scores)};
    }
};

struct ComponentDayEstimate {
    Day date;
    ComponentId component;
    PolarityDistribution dist;
};

struct Gap {
    Day date;
    std::string component;  ///< component name, or "*" for the whole day
    std::string reason;
};

struct DailySeries {
    std::vector<SwbiRecord> records;
    std::vector<Gap> gaps;
};

/// One record per day with all eight components scored, ascending by date.
/// Days with a missing or no-signal component go to the gap report.
inline DailySeries daily_series(const std::vector<ComponentDayEstimate>& estimates,
                                ScoreMap map = ScoreMap::positive_share) {
    std::map<Day, std::array<std::optional<PolarityDistribution>, component_count>> by_day;
    for (const auto& e : estimates) {
        auto& slot = by_day[e.date][index(e.component)];
        if (slot)
            throw data_error("duplicate estimate for " + format_day(e.date) + " component " +
                             std::string(name(e.component)));
        slot = e.dist;
    }
    DailySeries out;
    for (const auto& [day, comps] : by_day) {
        ComponentScores scores{};
        bool complete = true;
        for (auto c : all_components) {
            const auto& d = comps[index(c)];
            if (!d) {
                out.gaps.push_back({day, std::string(name(c)), "missing"});
                complete = false;
                continue;
            }
            try {
                scores[index(c)] = component_score(*d, map);
            } catch (const Error& e) {
                out.gaps.push_back({day, std::string(name(c)), e.what()});
                complete = false;
            }
        }
        if (complete) out.records.push_back(SwbiRecord::make(day, scores));
    }
    return out;
}

/// Direct component values, bypassing estimation.
inline DailySeries daily_series_from_scores(const std::vector<std::pair<Day, ComponentScores>>& rows) {
    std::map<Day, ComponentScores> sorted;
    for (const auto& [day, scores] : rows)
        if (!sorted.emplace(day, scores).second) throw data_error("duplicate day " + format_day(day));
    DailySeries out;
    for (const auto& [day, scores] : sorted) out.records.push_back(SwbiRecord::make(day, scores));
    return out;
}

struct MonthlyValue {
    std::chrono::year_month month;
    double integrated = 0.0;
    std::size_t days = 0;
};

inline constexpr double default_baseline = 50.0;

/// Per calendar month: sum over complete days of (swbi - baseline).
inline std::vector<MonthlyValue> integrate_monthly(const std::vector<SwbiRecord>& series,
                                                   double baseline = default_baseline) {
    if (!(baseline >= 0.0 && baseline <= 100.0)) throw config_error("baseline must lie in [0, 100]");
    std::map<std::chrono::year_month, MonthlyValue> months;
    for (const auto& r : series) {
        const std::chrono::year_month_day ymd{r.date};
        const std::chrono::year_month ym{ymd.year(), ymd.month()};
        auto& m = months[ym];
        m.month = ym;
        m.integrated += r.swbi - baseline;
        ++m.days;
    }
    std::vector<MonthlyValue> out;
    out.reserve(months.size());
    for (auto& [ym, m] : months) out.push_back(m);
    return out;
}

struct YearlyRow {
    int year = 0;
    ComponentScores components{};
    double swbi = 0.0;
    std::size_t days = 0;
};

/// Unweighted per-year means over available days; the SWBI column is the
/// mean of the yearly component means.
inline std::vector<YearlyRow> yearly_table(const std::vector<SwbiRecord>& series) {
    if (series.empty()) throw data_error("yearly table: empty series");
    std::map<int, YearlyRow> years;
    for (const auto& r : series) {
        const int y = static_cast<int>(std::chrono::year_month_day{r.date}.year());
        auto& row = years[y];
        row.year = y;
        for (std::size_t i = 0; i < component_count; ++i) row.components[i] += r.components[i];
        ++row.days;
    }
    std::vector<YearlyRow> out;
    for (auto& [y, row] : years) {
        for (auto& v : row.components) v /= static_cast<double>(row.days);
        row.swbi = swbi(row.components);
        out.push_back(row);
    }
    return out;
}

inline const std::string unlocated = "unlocated";

struct GeoEstimate {
    std::optional<std::string> geo;
    ComponentDayEstimate estimate;
};

/// Independent daily series per geo code; records without one go to
/// "unlocated".
inline std::map<std::string, DailySeries> group_by_geo(const std::vector<GeoEstimate>& estimates,
                                                       ScoreMap map = ScoreMap::positive_share) {
    std::map<std::string, std::vector<ComponentDayEstimate>> parts;
    for (const auto& e : estimates) parts[e.geo.value_or(unlocated)].push_back(e.estimate);
    std::map<std::string, DailySeries> out;
    for (const auto& [geo, part] : parts) out.emplace(geo, daily_series(part, map));
    return out;
}

}  // namespace isa::swbi
