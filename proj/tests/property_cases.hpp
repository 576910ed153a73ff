#pragma once

// Randomised invariant checks shared by the property tests and the
// acceptance binary. Each suite returns the number of cases run and the
// first few failures.

#include <chrono>
#include <cmath>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "isa/bootstrap.hpp"
#include "isa/corpus.hpp"
#include "isa/estimator.hpp"
#include "isa/swbi.hpp"

namespace props {

using namespace isa;

struct Outcome {
    std::size_t cases = 0;
    std::size_t failures = 0;
    std::vector<std::string> messages;

    void fail(std::size_t seed, const std::string& what) {
        ++failures;
        if (messages.size() < 5) messages.push_back("case " + std::to_string(seed) + ": " + what);
    }
    bool ok() const { return failures == 0 && cases > 0; }
};

inline double uniform(std::mt19937_64& rng, double lo = 0.0, double hi = 1.0) {
    return std::uniform_real_distribution<double>(lo, hi)(rng);
}

inline std::vector<double> random_simplex(std::mt19937_64& rng, std::size_t n) {
    std::vector<double> v(n);
    double sum = 0;
    for (auto& x : v) sum += (x = -std::log(1.0 - uniform(rng)));
    for (auto& x : v) x /= sum;
    return v;
}

inline ConditionalMatrix random_conditional(std::mt19937_64& rng, std::size_t k, std::size_t c) {
    ConditionalMatrix cond;
    cond.values.resize(static_cast<Eigen::Index>(k), static_cast<Eigen::Index>(c));
    for (std::size_t j = 0; j < c; ++j) {
        const auto col = random_simplex(rng, k);
        for (std::size_t i = 0; i < k; ++i) cond.values(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = col[i];
    }
    for (std::size_t j = 0; j < c; ++j) cond.labels.push_back("c" + std::to_string(j));
    return cond;
}

/// iSA and classify-and-count outputs are probability vectors for any input.
inline Outcome simplex_closure(std::size_t cases, std::uint64_t seed = 101) {
    Outcome out;
    for (std::size_t t = 0; t < cases; ++t) {
        std::mt19937_64 rng(seed + t);
        const std::size_t c = 2 + rng() % 5;
        const std::size_t k = c + rng() % 12;
        const auto cond = random_conditional(rng, k, c);
        // P(S) anywhere on the simplex, not only inside the cone of P(S|D)
        const auto ps = random_simplex(rng, k);
        std::vector<std::size_t> counts(k);
        for (auto& n : counts) n = rng() % 20;
        counts[0] += 1;
        ++out.cases;
        try {
            CategoryDistribution prior;
            prior.probs = random_simplex(rng, c);
            for (const auto& d : {estimate_isa(cond, ps), estimate_classify_and_count(cond, prior, counts)}) {
                double sum = 0;
                for (double v : d.probs) {
                    if (!(v >= 0.0)) out.fail(t, "negative entry");
                    sum += v;
                }
                if (std::abs(sum - 1.0) > 1e-9) out.fail(t, "sum " + std::to_string(sum));
            }
        } catch (const Error& e) {
            out.fail(t, e.what());
        }
    }
    return out;
}

/// Component scores depend only on the on-topic shares: moving mass into or
/// out of D0 while keeping the on-topic ratios leaves every score unchanged.
inline Outcome offtopic_invariance(std::size_t cases, std::uint64_t seed = 202) {
    Outcome out;
    for (std::size_t t = 0; t < cases; ++t) {
        std::mt19937_64 rng(seed + t);
        const auto on = random_simplex(rng, 3);
        const double off_a = uniform(rng, 0.0, 0.99), off_b = uniform(rng, 0.0, 0.99);
        auto make = [&](double off) {
            return swbi::PolarityDistribution{off, (1 - off) * on[0], (1 - off) * on[1], (1 - off) * on[2]};
        };
        ++out.cases;
        for (auto map : {swbi::ScoreMap::positive_share, swbi::ScoreMap::signed_balance}) {
            const double a = swbi::component_score(make(off_a), map), b = swbi::component_score(make(off_b), map);
            if (std::abs(a - b) > 1e-9) out.fail(t, "score moved from " + std::to_string(a) + " to " + std::to_string(b));
            if (!(a >= 0.0 && a <= 100.0)) out.fail(t, "score outside [0, 100]");
        }
    }
    return out;
}

/// integrate(series, b) == integrate(series, 0) - b * days, per month.
inline Outcome integration_linearity(std::size_t cases, std::uint64_t seed = 303) {
    using namespace std::chrono;
    Outcome out;
    for (std::size_t t = 0; t < cases; ++t) {
        std::mt19937_64 rng(seed + t);
        std::vector<swbi::SwbiRecord> series;
        const std::size_t n = 1 + rng() % 90;
        sys_days day = sys_days{year{2012} / 1 / 1} + days{static_cast<int>(rng() % 1000)};
        for (std::size_t i = 0; i < n; ++i) {
            swbi::ComponentScores s{};
            for (auto& v : s) v = uniform(rng, 0, 100);
            series.push_back(swbi::SwbiRecord::make(day, s));
            day += days{1 + static_cast<int>(rng() % 3)};
        }
        const double b = uniform(rng, 0, 100);
        ++out.cases;
        const auto zero = swbi::integrate_monthly(series, 0.0);
        const auto shifted = swbi::integrate_monthly(series, b);
        if (zero.size() != shifted.size()) {
            out.fail(t, "month count differs");
            continue;
        }
        std::size_t total_days = 0;
        for (std::size_t m = 0; m < zero.size(); ++m) {
            total_days += zero[m].days;
            const double expect = zero[m].integrated - b * static_cast<double>(zero[m].days);
            if (std::abs(shifted[m].integrated - expect) > 1e-9 * (1.0 + std::abs(expect)))
                out.fail(t, "month " + std::to_string(m) + " off by " + std::to_string(shifted[m].integrated - expect));
        }
        if (total_days != n) out.fail(t, "days not conserved");
    }
    return out;
}

/// Same results with one worker and with several: pattern tables from the
/// text pipeline and bootstrap standard errors.
inline Outcome parallel_determinism(std::size_t cases, std::uint64_t seed = 404) {
    static const std::vector<std::string> words{"lavoro", "lavorare", "felice", "felicità", "amici", "amico",
                                                "crisi",  "governo",  "bello",  "brutto",   "oggi",  "festa"};
    Outcome out;
    for (std::size_t t = 0; t < cases; ++t) {
        std::mt19937_64 rng(seed + t);
        std::vector<RawPost> posts(5 + rng() % 40);
        for (std::size_t i = 0; i < posts.size(); ++i) {
            posts[i].id = "d" + std::to_string(i);
            const std::size_t len = 1 + rng() % 5;
            for (std::size_t w = 0; w < len; ++w) posts[i].text += (w ? " " : "") + words[rng() % words.size()];
        }
        PipelineConfig cfg;
        cfg.stemmer = (t % 2) ? StemmerId::suffix_it : StemmerId::identity;
        const unsigned workers = 2 + static_cast<unsigned>(rng() % 4);
        ++out.cases;
        try {
            const auto a = process_corpus(posts, cfg, 1);
            const auto b = process_corpus(posts, cfg, workers);
            if (a.vocabulary.stems() != b.vocabulary.stems()) out.fail(t, "vocabulary differs");
            if (a.table.patterns() != b.table.patterns() || a.table.counts() != b.table.counts() ||
                a.table.doc_to_pattern() != b.table.doc_to_pattern())
                out.fail(t, "pattern table differs");

            if (t % 10 == 0) {
                const std::size_t k = a.table.size();
                CategorySet cats({"off", "pos"});
                std::vector<LabeledPattern> training;
                for (std::size_t i = 0; i < 20; ++i) training.push_back({rng() % k, i % 2});
                const auto ps = random_simplex(rng, k);
                BootstrapOptions o1, o2;
                o1.replications = o2.replications = 10;
                o1.seed = o2.seed = t;
                o1.workers = 1;
                o2.workers = workers;
                const auto r1 = bootstrap(training, k, cats, ps, o1);
                const auto r2 = bootstrap(training, k, cats, ps, o2);
                if (r1.estimate.probs != r2.estimate.probs || r1.estimate.se != r2.estimate.se)
                    out.fail(t, "bootstrap differs");
            }
        } catch (const Error& e) {
            const std::string msg = e.what();
            // tiny random corpora can legitimately be unidentifiable; both runs must agree on that
            if (msg.find("collinear") == std::string::npos && msg.find("underdetermined") == std::string::npos &&
                msg.find("unidentifiable") == std::string::npos)
                out.fail(t, msg);
        }
    }
    return out;
}

}  // namespace props
