#include <gtest/gtest.h>

#include <cmath>
#include <set>

#include "dexp/error.hpp"
#include "dexp/segmentation.hpp"
#include "support.hpp"

using namespace dexp;

namespace {

/// Sentence of n tokens "<tag>0 ... <tag>n-1." .
std::string sentence(std::string const& tag, std::size_t n) {
    std::string s;
    for (std::size_t i = 0; i < n; ++i) {
        s += (i ? " " : "") + tag + std::to_string(i);
    }
    return s + ". ";
}

Document six_sentences() {
    std::string text;
    for (char c = 'a'; c < 'g'; ++c) {
        text += sentence(std::string(1, c), 20);
    }
    return {"six", text};
}

/// Random document of sentences with random lengths.
Document random_doc(oracle::Gen& gen, std::string id) {
    std::string text;
    auto n = gen.uniform(1, 14);
    for (std::size_t s = 0; s < n; ++s) {
        auto len = gen.uniform(1, 35);
        for (std::size_t i = 0; i < len; ++i) {
            text += gen.word(40) + " ";
        }
        text += gen.coin(0.8) ? ". " : "\n\n";
    }
    return {std::move(id), text};
}

IdfTable flat_idf() { return IdfTable(1, {}); }

}  // namespace

TEST(Concat, SingleShortSentence) {
    auto w = segment_concat({"d", sentence("t", 10)});
    ASSERT_EQ(w.size(), 1u);
    EXPECT_EQ(w[0].token_count, 10u);
}

TEST(Concat, SixSentenceFixture) {
    auto w = segment_concat(six_sentences(), {}, 60, 30);
    ASSERT_EQ(w.size(), 3u);
    EXPECT_EQ(w[0].first_sentence, 0u);
    EXPECT_EQ(w[1].first_sentence, 2u);
    EXPECT_EQ(w[2].first_sentence, 4u);
    EXPECT_EQ(w[0].last_sentence, 2u);
    EXPECT_EQ(w[1].last_sentence, 4u);
    EXPECT_EQ(w[2].last_sentence, 5u);
    EXPECT_EQ(w[0].token_count, 60u);
    EXPECT_EQ(w[2].token_count, 40u);
    for (std::size_t i = 0; i < w.size(); ++i) {
        EXPECT_EQ(w[i].window_index, i);
        EXPECT_EQ(w[i].doc_id, "six");
    }
    EXPECT_EQ(analyze_terms(w[1].text).front(), "c0");
    EXPECT_EQ(analyze_terms(w[1].text).back(), "e19");
}

TEST(Concat, EmptyDocument) { EXPECT_TRUE(segment_concat({"e", "  ... "}).empty()); }

TEST(Concat, ParamValidation) {
    EXPECT_THROW((void)segment_concat({"d", "x"}, {}, 0, 1), std::invalid_argument);
    EXPECT_THROW((void)segment_concat({"d", "x"}, {}, 10, 0), std::invalid_argument);
    EXPECT_THROW((void)segment_concat({"d", "x"}, {}, 10, 11), std::invalid_argument);
}

TEST(Concat, CoverageAndMonotonicity) {
    oracle::Gen gen(31);
    for (int trial = 0; trial < 300; ++trial) {
        auto doc = random_doc(gen, "r");
        auto target = gen.uniform(1, 80);
        auto stride = gen.uniform(1, target);
        auto sentences = split_sentences(doc.text);
        auto windows = segment_concat(doc, {}, target, stride);
        ASSERT_FALSE(windows.empty());
        EXPECT_EQ(windows.front().first_sentence, 0u);
        EXPECT_EQ(windows.back().last_sentence, sentences.size() - 1);
        std::set<std::size_t> covered;
        for (std::size_t i = 0; i < windows.size(); ++i) {
            auto const& w = windows[i];
            EXPECT_GE(w.token_count, 1u);
            std::size_t tokens = 0;
            for (auto s = w.first_sentence; s <= w.last_sentence; ++s) {
                covered.insert(s);
                tokens += sentences[s].tokens.size();
            }
            EXPECT_EQ(tokens, w.token_count);
            // shortest run reaching target, or the tail
            if (w.last_sentence + 1 < sentences.size()) {
                EXPECT_GE(w.token_count, target);
            }
            EXPECT_LT(w.token_count - sentences[w.last_sentence].tokens.size(), target);
            if (i > 0) {
                EXPECT_GT(w.first_sentence, windows[i - 1].first_sentence);
                // next window: first sentence starting >= stride tokens later
                auto start = sentences[windows[i - 1].first_sentence].tokens.begin;
                EXPECT_GE(sentences[w.first_sentence].tokens.begin, start + stride);
                EXPECT_LT(sentences[w.first_sentence - 1].tokens.begin, start + stride);
            }
        }
        EXPECT_EQ(covered.size(), sentences.size());
    }
}

TEST(FirstK, MinRule) {
    Document three{"d", "One two. Three four. Five six."};
    auto w = segment_first_k(three, {}, 5);
    EXPECT_EQ(w.first_sentence, 0u);
    EXPECT_EQ(w.last_sentence, 2u);

    std::string text;
    for (int i = 0; i < 10; ++i) {
        text += sentence("s" + std::to_string(i) + "x", static_cast<std::size_t>(i + 1));
    }
    auto ten = segment_first_k({"d", text}, {}, 5);
    EXPECT_EQ(ten.last_sentence, 4u);
    EXPECT_EQ(ten.token_count, 1u + 2 + 3 + 4 + 5);
    EXPECT_THROW((void)segment_first_k({"d", ""}), std::invalid_argument);
    EXPECT_THROW((void)segment_first_k(three, {}, 0), std::invalid_argument);
}

TEST(Head, StopsOnceTargetReached) {
    auto w = segment_head(six_sentences(), {}, 50);
    ASSERT_TRUE(w);
    EXPECT_EQ(w->last_sentence, 2u);
    EXPECT_FALSE(segment_head({"d", ""}, {}, 50));
}

TEST(Homogeneity, WholeDocumentIsOne) {
    Document doc{"d", "alpha beta. beta gamma gamma."};
    PassageWindow whole;
    whole.text = doc.text;
    EXPECT_NEAR(homogeneity_score(whole, doc, flat_idf()), 1.0, 1e-12);
}

TEST(Homogeneity, DisjointWindowHandCosine) {
    Document doc{"d", "x y. z z."};
    PassageWindow w;
    w.text = "x y.";
    // tf vectors (1,1,0) and (1,1,2) under equal idf
    EXPECT_NEAR(homogeneity_score(w, doc, flat_idf()), 2.0 / std::sqrt(2.0 * 6.0), 1e-12);
    std::unordered_map<std::string, std::uint32_t> df{{"x", 1}, {"y", 2}, {"z", 2}};
    IdfTable idf(4, df);
    double ix = std::log(1 + 4.0);
    double iy = std::log(1 + 2.0);
    double iz = std::log(1 + 2.0);
    double expected = (ix * ix + iy * iy) /
                      (std::sqrt(ix * ix + iy * iy) * std::sqrt(ix * ix + iy * iy + 4 * iz * iz));
    EXPECT_NEAR(homogeneity_score(w, doc, idf), expected, 1e-12);
}

TEST(Homogeneity, ZeroVectorWindow) {
    AnalyzerConfig config;
    config.stopwords = {"the"};
    PassageWindow w;
    w.text = "the the";
    EXPECT_EQ(homogeneity_score(w, {"d", "the cat"}, flat_idf(), config), 0.0);
}

TEST(PI, SingleWindow) {
    Document doc{"d", sentence("t", 10)};
    auto w = select_passage_pi(doc, flat_idf());
    EXPECT_EQ(w.window_index, 0u);
    EXPECT_THROW((void)select_passage_pi({"d", ""}, flat_idf()), std::invalid_argument);
}

TEST(PI, PicksRepresentativeWindow) {
    Document doc{"d", "u v w x. p p q q. p r."};
    // windows (u v w x) (p p q q) (p r) score 0.47, 0.83, 0.67 under flat idf
    auto w = select_passage_pi(doc, flat_idf(), {}, 4, 4);
    EXPECT_EQ(w.window_index, 1u);
}

TEST(PI, ThreeWindowFixtureMatchesHandCosines) {
    Document doc{"d", "a a b. c d. a b b."};
    auto windows = segment_concat(doc, {}, 2, 2);
    ASSERT_EQ(windows.size(), 3u);
    // doc tf: a3 b3 c1 d1 ; windows (a2 b1) (c1 d1) (a1 b2)
    auto cosine = [](std::vector<double> w) {
        std::vector<double> d{3, 3, 1, 1};
        double dot = 0, wn = 0, dn = 0;
        for (std::size_t i = 0; i < 4; ++i) {
            dot += w[i] * d[i];
            wn += w[i] * w[i];
            dn += d[i] * d[i];
        }
        return dot / std::sqrt(wn * dn);
    };
    double s0 = cosine({2, 1, 0, 0});
    double s1 = cosine({0, 0, 1, 1});
    double s2 = cosine({1, 2, 0, 0});
    EXPECT_NEAR(homogeneity_score(windows[0], doc, flat_idf()), s0, 1e-12);
    EXPECT_NEAR(homogeneity_score(windows[1], doc, flat_idf()), s1, 1e-12);
    EXPECT_NEAR(homogeneity_score(windows[2], doc, flat_idf()), s2, 1e-12);
    // s0 == s2: the earliest window wins the tie
    EXPECT_EQ(select_passage_pi(doc, flat_idf(), {}, 2, 2).window_index, 0u);
}

TEST(SelectPassages, ShortDocumentsComeBackWhole) {
    Document doc{"d", "Short one. Two here."};
    SegmentationParams p;
    p.k_sentences = 1;
    auto idf = flat_idf();
    for (auto strategy : {PassageStrategy::concat, PassageStrategy::first_k, PassageStrategy::pi}) {
        auto sel = select_passages(doc, strategy, p, {}, &idf);
        ASSERT_EQ(sel.windows.size(), 1u);
        EXPECT_EQ(sel.windows[0].text, "Short one. Two here.");
    }
}

TEST(SelectPassages, CardinalityAndDeterminism) {
    oracle::Gen gen(47);
    std::vector<Document> docs;
    for (int i = 0; i < 100; ++i) {
        docs.push_back(random_doc(gen, "d" + std::to_string(i)));
    }
    auto idx = build_index(docs);
    IdfTable idf(idx);
    SegmentationParams p;
    for (auto const& doc : docs) {
        auto concat = select_passages(doc, PassageStrategy::concat, p, {}, &idf);
        auto first = select_passages(doc, PassageStrategy::first_k, p, {}, &idf);
        auto pi = select_passages(doc, PassageStrategy::pi, p, {}, &idf);
        EXPECT_GE(concat.windows.size(), 1u);
        EXPECT_EQ(first.windows.size(), 1u);
        EXPECT_EQ(pi.windows.size(), 1u);
        EXPECT_EQ(first.windows, select_passages(doc, PassageStrategy::first_k, p, {}, &idf).windows);
        EXPECT_EQ(pi.windows, select_passages(doc, PassageStrategy::pi, p, {}, &idf).windows);
        // the pi window is one of the concat windows and no other scores higher
        bool found = false;
        double chosen = homogeneity_score(pi.windows[0], doc, idf);
        for (auto const& w : concat.windows) {
            found = found || w == pi.windows[0];
            EXPECT_LE(homogeneity_score(w, doc, idf), chosen);
        }
        EXPECT_TRUE(found);
    }
    EXPECT_THROW((void)select_passages({"e", ""}, PassageStrategy::first_k, p), std::invalid_argument);
    EXPECT_TRUE(select_passages({"e", ""}, PassageStrategy::concat, p).windows.empty());
    EXPECT_THROW((void)select_passages(six_sentences(), PassageStrategy::pi, {1, 1, 1}), std::invalid_argument);
}

TEST(PassagePosition, Fixture) {
    auto doc = six_sentences();
    EXPECT_EQ(passage_position(doc, sentence("a", 20)), 0u);
    EXPECT_EQ(passage_position(doc, sentence("f", 20)), 2u);
    EXPECT_EQ(passage_position(doc, "c5 c6 c7"), 0u);
    EXPECT_FALSE(passage_position(doc, "not present"));
    EXPECT_FALSE(passage_position(doc, "..."));
    // crosses sentences 3 and 4, first held whole by window 1
    EXPECT_EQ(passage_position(doc, "d19 e0"), 1u);
}

TEST(PassageId, RoundTrip) {
    EXPECT_EQ(passage_id("doc#x", 3), "doc#x#3");
    EXPECT_EQ(parse_passage_id("doc#x#3"), (std::pair<std::string, std::size_t>{"doc#x", 3}));
    EXPECT_THROW((void)parse_passage_id("nohash"), FormatError);
    EXPECT_THROW((void)parse_passage_id("d#"), FormatError);
    EXPECT_THROW((void)parse_passage_id("#1"), FormatError);
    EXPECT_THROW((void)parse_passage_id("d#1a"), FormatError);
}

TEST(Strategy, Names) {
    EXPECT_EQ(parse_passage_strategy("first-k"), PassageStrategy::first_k);
    EXPECT_EQ(parse_passage_strategy("first_k"), PassageStrategy::first_k);
    EXPECT_EQ(to_string(PassageStrategy::pi), "pi");
    EXPECT_THROW((void)parse_passage_strategy("random"), std::invalid_argument);
}
