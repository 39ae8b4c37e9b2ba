#include <gtest/gtest.h>

#include "dexp/rm3.hpp"
#include "support.hpp"

using namespace dexp;
using testing_support::index_of;

namespace {

std::vector<oracle::Hit> to_hits(std::vector<ScoredDoc> const& docs) {
    std::vector<oracle::Hit> hits;
    for (auto const& d : docs) {
        hits.push_back({d.doc_id, d.score});
    }
    return hits;
}

double total(WeightedQuery const& q) {
    double s = 0;
    for (auto const& t : q.terms) {
        s += t.weight;
    }
    return s;
}

}  // namespace

TEST(RM3, AlphaOneIsIdentity) {
    std::vector<Document> docs{{"d1", "x x y z"}, {"d2", "y w"}, {"d3", "q q q"}};
    auto idx = build_index(docs);
    RM3Params p;
    p.alpha = 1.0;
    std::vector<ScoredDoc> fp{{"d1", 2.0}, {"d2", 1.0}};
    auto e = rm3_expand(idx, "y y w", fp, p);
    EXPECT_EQ(e.status, SearchStatus::ok);
    EXPECT_EQ(e.query.as_map(), normalized_query("y y w", idx.analyzer()).as_map());
    EXPECT_EQ(e.query.as_map(), (std::map<std::string, double>{{"w", 1.0 / 3.0}, {"y", 2.0 / 3.0}}));
}

TEST(RM3, HandComputedSingleFeedbackDoc) {
    std::vector<Document> docs{{"fb", "x x y z"}, {"other", "k"}};
    auto idx = build_index(docs);
    RM3Params p;
    p.alpha = 0.0;
    p.fb_docs = 1;
    p.fb_terms = 2;
    std::vector<ScoredDoc> fp{{"fb", 3.2}};
    auto e = rm3_expand(idx, "x", fp, p);
    ASSERT_EQ(e.query.terms.size(), 2u);
    EXPECT_EQ(e.query.terms[0].term, "x");
    EXPECT_NEAR(e.query.terms[0].weight, 2.0 / 3.0, 1e-15);
    EXPECT_EQ(e.query.terms[1].term, "y");
    EXPECT_NEAR(e.query.terms[1].weight, 1.0 / 3.0, 1e-15);
}

TEST(RM3, EqualScoresGiveEqualDocWeights) {
    std::vector<Document> docs{{"d1", "a"}, {"d2", "b"}, {"d3", "c"}};
    auto idx = build_index(docs);
    RM3Params p;
    p.alpha = 0.0;
    std::vector<ScoredDoc> fp{{"d1", 1.5}, {"d2", 1.5}};
    auto m = rm3_expand(idx, "a", fp, p).query.as_map();
    EXPECT_EQ(m, (std::map<std::string, double>{{"a", 0.5}, {"b", 0.5}}));
}

TEST(RM3, EmptyFirstPassKeepsQuery) {
    std::vector<Document> docs{{"d1", "a b"}};
    auto idx = build_index(docs);
    auto e = rm3_expand(idx, "a b", {}, RM3Params{});
    EXPECT_EQ(e.status, SearchStatus::no_feedback);
    EXPECT_EQ(e.query.as_map(), (std::map<std::string, double>{{"a", 0.5}, {"b", 0.5}}));
    EXPECT_EQ(rm3_expand(idx, "!!", {}, RM3Params{}).status, SearchStatus::empty_query);
}

TEST(RM3, CommonTermsExcludedUnlessKept) {
    std::vector<Document> docs{{"d1", "the cat"}, {"d2", "the dog"}};
    auto idx = build_index(docs);
    RM3Params p;
    p.alpha = 0.0;
    std::vector<ScoredDoc> fp{{"d1", 1.0}};
    EXPECT_EQ(rm3_expand(idx, "cat", fp, p).query.as_map().count("the"), 0u);
    p.exclude_common_terms = false;
    EXPECT_EQ(rm3_expand(idx, "cat", fp, p).query.as_map().count("the"), 1u);
}

TEST(RM3, ParamValidation) {
    RM3Params p;
    p.fb_docs = 0;
    EXPECT_THROW(p.validate(), std::invalid_argument);
    p = {};
    p.fb_terms = 0;
    EXPECT_THROW(p.validate(), std::invalid_argument);
    p = {};
    p.alpha = 1.01;
    EXPECT_THROW(p.validate(), std::invalid_argument);
}

TEST(RM3, MatchesStepByStepOracle) {
    oracle::Gen gen(555);
    int checked = 0;
    for (int trial = 0; trial < 100; ++trial) {
        auto raw = gen.corpus(25, 20, 15, 2);
        auto idx = index_of(raw);
        if (idx.total_terms() == 0) {
            continue;
        }
        auto q = gen.query(20, 4);
        SearchOptions first;
        first.scorer.kind = static_cast<ScorerKind>(gen.uniform(0, 2));
        RM3Params p;
        p.fb_docs = gen.uniform(1, 6);
        p.fb_terms = gen.uniform(1, 8);
        p.alpha = gen.coin(0.1) ? 0.0 : gen.real(0, 1);
        p.exclude_common_terms = gen.coin(0.7);
        first.k = p.fb_docs;
        auto text = testing_support::join(q);
        auto fp = search(idx, text, first).docs;
        auto got = rm3_expand(idx, text, fp, p).query;
        auto expected = oracle::rm3(raw, q, to_hits(fp), p.fb_docs, p.fb_terms, p.alpha, p.exclude_common_terms);
        auto m = got.as_map();
        ASSERT_EQ(m.size(), expected.size());
        for (auto const& [t, w] : expected) {
            ASSERT_TRUE(m.count(t)) << t;
            EXPECT_NEAR(m[t], w, 1e-9);
        }
        EXPECT_NEAR(total(got), 1.0, 1e-9);
        for (std::size_t i = 0; i < got.terms.size(); ++i) {
            EXPECT_GT(got.terms[i].weight, 0.0);
            if (i > 0) {
                EXPECT_GE(got.terms[i - 1].weight, got.terms[i].weight);
            }
        }
        ++checked;
    }
    EXPECT_GT(checked, 80);
}

TEST(RM3Search, AlphaOneMatchesPlainRanking) {
    oracle::Gen gen(556);
    for (int trial = 0; trial < 50; ++trial) {
        auto raw = gen.corpus(20, 15, 12, 2);
        auto idx = index_of(raw);
        if (idx.total_terms() == 0) {
            continue;
        }
        auto text = testing_support::join(gen.query(15, 3));
        SearchOptions o;
        RM3Params p;
        p.alpha = 1.0;
        auto plain = search(idx, text, o).docs;
        auto fb = rm3_search(idx, idx, text, o, p).docs;
        ASSERT_EQ(plain.size(), fb.size());
        for (std::size_t i = 0; i < plain.size(); ++i) {
            EXPECT_EQ(plain[i].doc_id, fb[i].doc_id);
        }
    }
}

TEST(RM3Search, SeparateFeedbackIndex) {
    std::vector<Document> expanded{{"d1", "cat feline"}, {"d2", "dog canine"}, {"d3", "bird"}};
    std::vector<Document> original{{"d1", "cat"}, {"d2", "dog"}, {"d3", "bird"}};
    auto idx = build_index(expanded);
    auto source = build_index(original);
    RM3Params p;
    p.alpha = 0.5;
    auto with_source = rm3_expand(source, "cat", search(idx, "cat", {}).docs, p).query.as_map();
    EXPECT_EQ(with_source.count("feline"), 0u);
    auto with_self = rm3_expand(idx, "cat", search(idx, "cat", {}).docs, p).query.as_map();
    EXPECT_EQ(with_self.count("feline"), 1u);
    EXPECT_FALSE(rm3_search(idx, source, "cat", {}, p).docs.empty());
}
