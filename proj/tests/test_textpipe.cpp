#include <algorithm>
#include <random>
#include <string>
#include <vector>

#include <gtest/gtest.h>

#include "isa/corpus.hpp"
#include "isa/patterns.hpp"
#include "isa/tokenize.hpp"
#include "isa/vocabulary.hpp"

using namespace isa;
using Tokens = std::vector<std::string>;

TEST(Tokenize, EmptyText) { EXPECT_TRUE(tokenize("").empty()); }

TEST(Tokenize, DropsUrlsAndMentionsAndLowercases) {
    EXPECT_EQ(tokenize("Oggi LAVORO http://t.co/x @amico"), (Tokens{"oggi", "lavoro"}));
}

TEST(Tokenize, KeepsApostropheInsideWordsAndDropsPunctuation) {
    EXPECT_EQ(tokenize("ok, let's go to work again today"),
              (Tokens{"ok", "let's", "go", "to", "work", "again", "today"}));
}

TEST(Tokenize, HashtagsLoseTheMarker) {
    EXPECT_EQ(tokenize("#Felicità e #lavoro!"), (Tokens{"felicità", "e", "lavoro"}));
}

TEST(Tokenize, StandalonePunctuationAndWwwLinks) {
    EXPECT_EQ(tokenize("ciao - ... !! www.example.com https://x.y/z?q=1 fine."), (Tokens{"ciao", "fine"}));
}

TEST(Tokenize, InvalidUtf8IsReplacedNotFatal) {
    const std::string text = std::string("buon") + char(0xff) + " giorno";
    const auto tokens = tokenize(text);
    ASSERT_FALSE(tokens.empty());
    EXPECT_EQ(tokens.back(), "giorno");
}

TEST(Tokenize, CurlyApostropheNormalised) {
    EXPECT_EQ(tokenize("l’amico"), (Tokens{"l'amico"}));
}

TEST(Tokenize, OrderPreserved) { EXPECT_EQ(tokenize("c b a"), (Tokens{"c", "b", "a"})); }

TEST(Stem, IdentityIsUnchanged) {
    EXPECT_EQ(stem(Tokens{"happy", "days"}, "identity"), (Tokens{"happy", "days"}));
    EXPECT_TRUE(stem(Tokens{}, "identity").empty());
}

TEST(Stem, UnknownStemmerIsConfigError) {
    try {
        stem(Tokens{"x"}, "lancaster");
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::config);
    }
}

TEST(Stem, SameLengthAsInput) {
    const Tokens in{"working", "worked", "works", "a"};
    EXPECT_EQ(stem(in, "suffix-en").size(), in.size());
    EXPECT_EQ(stem(in, "suffix-it").size(), in.size());
}

TEST(Vocabulary, AllStemsKept) {
    std::vector<StemmedDoc> docs(3, StemmedDoc{"a", "b"});
    const auto v = build_vocabulary(docs, {});
    EXPECT_EQ(v.stems(), (Tokens{"a", "b"}));
    EXPECT_EQ(v.doc_frequency(), (std::vector<std::size_t>{3, 3}));
}

TEST(Vocabulary, ThresholdAboveCorpusSizeIsEmptyVocabulary) {
    std::vector<StemmedDoc> docs(3, StemmedDoc{"a", "b"});
    VocabularyConfig cfg;
    cfg.min_df = 4;
    try {
        build_vocabulary(docs, cfg);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::data);
        EXPECT_NE(std::string(e.what()).find("empty vocabulary"), std::string::npos);
    }
}

TEST(Vocabulary, BigramsOnly) {
    std::vector<StemmedDoc> docs{{"a", "b"}, {"b", "c"}};
    VocabularyConfig cfg;
    cfg.ngrams = {2};
    const auto v = build_vocabulary(docs, cfg);
    EXPECT_EQ(v.stems(), (Tokens{"a_b", "b_c"}));
    EXPECT_EQ(v.doc_frequency(), (std::vector<std::size_t>{1, 1}));
}

TEST(Vocabulary, MaxDfRatioPrunesCommonStems) {
    std::vector<StemmedDoc> docs{{"a", "b"}, {"a", "c"}, {"a", "d"}, {"a"}};
    VocabularyConfig cfg;
    cfg.max_df_ratio = 0.5;
    const auto v = build_vocabulary(docs, cfg);
    EXPECT_EQ(v.stems(), (Tokens{"b", "c", "d"}));
}

TEST(Vocabulary, RaisingMinDfNeverAddsStems) {
    std::mt19937_64 rng(7);
    std::vector<StemmedDoc> docs;
    for (int d = 0; d < 200; ++d) {
        StemmedDoc doc;
        for (int t = 0; t < 6; ++t) doc.push_back("w" + std::to_string(rng() % 40));
        docs.push_back(doc);
    }
    std::vector<std::string> previous;
    for (std::size_t min_df = 1; min_df <= 60; ++min_df) {
        VocabularyConfig cfg;
        cfg.min_df = min_df;
        std::vector<std::string> stems;
        try {
            stems = build_vocabulary(docs, cfg).stems();
        } catch (const Error&) {
        }
        if (min_df > 1) {
            EXPECT_TRUE(std::includes(previous.begin(), previous.end(), stems.begin(), stems.end()));
        }
        previous = stems;
    }
}

TEST(Vectorize, PresenceNotCount) {
    const auto v = build_vocabulary({{"a", "b", "c"}}, {});
    EXPECT_EQ(vectorize({"b", "b", "z"}, v).bits(), (std::vector<int>{0, 1, 0}));
    EXPECT_EQ(vectorize({}, v).bits(), (std::vector<int>{0, 0, 0}));
    EXPECT_EQ(vectorize({"c", "a"}, v).bits(), (std::vector<int>{1, 0, 1}));
}

TEST(Vectorize, Idempotent) {
    const auto v = build_vocabulary({{"a", "b", "c", "d"}}, {});
    const StemmedDoc doc{"d", "a", "x"};
    const auto once = vectorize(doc, v);
    StemmedDoc back;
    for (std::size_t i = 0; i < v.size(); ++i)
        if (once.test(i)) back.push_back(v.stems()[i]);
    EXPECT_EQ(vectorize(back, v), once);
}

TEST(StemVectorType, RejectsNonBinaryEntries) {
    EXPECT_THROW(StemVector::from_bits({0, 2}), Error);
    EXPECT_EQ(StemVector::from_bits({1, 0, 1}).count(), 2u);
}

TEST(PatternTableBuild, CountsAndEmpirical) {
    const auto t = build_pattern_table({{"1", StemVector::from_bits({1, 0})},
                                        {"2", StemVector::from_bits({1, 0})},
                                        {"3", StemVector::from_bits({0, 1})}});
    ASSERT_EQ(t.size(), 2u);
    EXPECT_EQ(t.counts(), (std::vector<std::size_t>{2, 1}));
    EXPECT_DOUBLE_EQ(t.empirical()[0], 2.0 / 3.0);
    EXPECT_DOUBLE_EQ(t.empirical()[1], 1.0 / 3.0);
    EXPECT_EQ(t.pattern_of("3"), 1u);
}

TEST(PatternTableBuild, SingleDocumentAndAllDistinct) {
    const auto one = build_pattern_table({{"x", StemVector::from_bits({0, 0})}});
    EXPECT_EQ(one.size(), 1u);
    EXPECT_EQ(one.empirical(), std::vector<double>{1.0});

    std::vector<DocumentVector> docs;
    for (int i = 0; i < 8; ++i)
        docs.emplace_back("d" + std::to_string(i), StemVector::from_bits({i & 1, (i >> 1) & 1, (i >> 2) & 1}));
    EXPECT_EQ(build_pattern_table(docs).size(), 8u);
}

TEST(PatternTableBuild, AllZeroPatternRetained) {
    const auto t = build_pattern_table({{"a", StemVector(3)}, {"b", StemVector::from_bits({1, 0, 0})}});
    EXPECT_EQ(t.size(), 2u);
    EXPECT_EQ(t.patterns()[0].count(), 0u);
}

TEST(PatternTableBuild, MixedLengthsAreStructuralError) {
    EXPECT_THROW(build_pattern_table({{"a", StemVector(2)}, {"b", StemVector(3)}}), Error);
}

TEST(PatternTableBuild, DuplicateIdsRejected) {
    EXPECT_THROW(build_pattern_table({{"a", StemVector(2)}, {"a", StemVector(2)}}), Error);
}

TEST(PatternTableBuild, ArrivalOrderDoesNotMatterAndMergeIsAssociative) {
    std::mt19937_64 rng(11);
    std::vector<DocumentVector> docs;
    for (int i = 0; i < 300; ++i) {
        StemVector v(5);
        for (std::size_t b = 0; b < 5; ++b) v.set(b, rng() % 3 == 0);
        docs.emplace_back("doc" + std::to_string(i), v);
    }
    const auto reference = build_pattern_table(docs);
    auto shuffled = docs;
    std::shuffle(shuffled.begin(), shuffled.end(), rng);
    const auto t2 = build_pattern_table(shuffled);
    EXPECT_EQ(t2.patterns(), reference.patterns());
    EXPECT_EQ(t2.counts(), reference.counts());
    EXPECT_EQ(t2.doc_to_pattern(), reference.doc_to_pattern());

    const std::vector<DocumentVector> a(shuffled.begin(), shuffled.begin() + 100);
    const std::vector<DocumentVector> b(shuffled.begin() + 100, shuffled.begin() + 200);
    const std::vector<DocumentVector> c(shuffled.begin() + 200, shuffled.end());
    const auto ta = build_pattern_table(a), tb = build_pattern_table(b), tc = build_pattern_table(c);
    const auto left = merge(merge(ta, tb), tc);
    const auto right = merge(ta, merge(tc, tb));
    EXPECT_EQ(left.patterns(), reference.patterns());
    EXPECT_EQ(right.patterns(), reference.patterns());
    EXPECT_EQ(right.counts(), reference.counts());

    std::size_t total = 0;
    for (auto n : reference.counts()) total += n;
    EXPECT_EQ(total, docs.size());
    double sum = 0.0;
    for (double p : reference.empirical()) sum += p;
    EXPECT_NEAR(sum, 1.0, 1e-12);
}

TEST(Corpus, ParsesRecordsAndTimestamps) {
    const auto p = parse_post(R"({"id":"t1","ts":"2014-03-05T23:30:00+02:00","text":"Ciao","geo":"MI"})");
    EXPECT_EQ(p.id, "t1");
    EXPECT_EQ(format_day(day_of(p)), "2014-03-05");
    ASSERT_TRUE(p.geo);
    EXPECT_EQ(*p.geo, "MI");
    EXPECT_FALSE(p.lang);
    const auto q = parse_post(R"({"id":7,"ts":"2014-03-05T23:30:00-02:00"})");
    EXPECT_EQ(q.id, "7");
    EXPECT_EQ(q.text, "");
    EXPECT_EQ(format_day(day_of(q)), "2014-03-06");
}

TEST(Corpus, MalformedRecordsAreDataErrors) {
    for (const char* line : {R"({"ts":"2014-01-01"})", R"({"id":"","ts":"2014-01-01"})",
                             R"({"id":"a","ts":"yesterday"})", "not json"}) {
        try {
            parse_post(line);
            ADD_FAILURE() << line;
        } catch (const Error& e) {
            EXPECT_EQ(e.kind(), ErrorKind::data) << line;
        }
    }
}

TEST(Corpus, JsonRoundTrip) {
    RawPost p;
    p.id = "x\"1";
    p.timestamp = parse_timestamp("2015-11-30T12:34:56Z");
    p.text = "perché \"sì\"";
    p.lang = "it";
    const auto q = parse_post(post_to_json(p));
    EXPECT_EQ(q.id, p.id);
    EXPECT_EQ(q.timestamp, p.timestamp);
    EXPECT_EQ(q.text, p.text);
    EXPECT_EQ(q.lang, p.lang);
}

TEST(Corpus, EmptyTextMapsToAllZeroPattern) {
    std::vector<RawPost> posts(2);
    posts[0].id = "a";
    posts[0].text = "ciao mondo";
    posts[1].id = "b";
    const auto processed = process_corpus(posts, {}, 1);
    EXPECT_EQ(processed.table.total(), 2u);
    EXPECT_EQ(processed.table.patterns()[processed.table.pattern_of("b")].count(), 0u);
}

TEST(Corpus, DeterministicAcrossWorkerCounts) {
    std::mt19937_64 rng(3);
    std::vector<RawPost> posts;
    for (int i = 0; i < 500; ++i) {
        RawPost p;
        p.id = "p" + std::to_string(rng());
        for (int t = 0; t < 5; ++t) p.text += "parola" + std::to_string(rng() % 30) + " ";
        posts.push_back(p);
    }
    PipelineConfig cfg;
    cfg.vocabulary.ngrams = {1, 2};
    cfg.vocabulary.min_df = 2;
    const auto a = process_corpus(posts, cfg, 1);
    std::reverse(posts.begin(), posts.end());
    const auto b = process_corpus(posts, cfg, 4);
    EXPECT_EQ(a.vocabulary.stems(), b.vocabulary.stems());
    EXPECT_EQ(a.vocabulary.doc_frequency(), b.vocabulary.doc_frequency());
    EXPECT_EQ(a.table.patterns(), b.table.patterns());
    EXPECT_EQ(a.table.counts(), b.table.counts());
    EXPECT_EQ(a.table.doc_to_pattern(), b.table.doc_to_pattern());
}

TEST(Corpus, PipelineConfigKeys) {
    const auto cfg = FlatConfig::parse("stemmer = suffix-it\nngrams = 1,2\nmin_df = 3\nmax_df_ratio = 0.5\n");
    const auto p = PipelineConfig::from(cfg);
    EXPECT_EQ(p.stemmer, StemmerId::suffix_it);
    EXPECT_EQ(p.vocabulary.ngrams, (std::set<int>{1, 2}));
    EXPECT_EQ(p.vocabulary.min_df, 3u);
    EXPECT_DOUBLE_EQ(p.vocabulary.max_df_ratio, 0.5);
    EXPECT_THROW(PipelineConfig::from(FlatConfig::parse("max_df_ratio = 0\n")), Error);
    EXPECT_THROW(PipelineConfig::from(FlatConfig::parse("stemmer = nope\n")), Error);
}
