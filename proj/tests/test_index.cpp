#include <gtest/gtest.h>

#include <sstream>

#include "dexp/error.hpp"
#include "dexp/index.hpp"
#include "support.hpp"

using namespace dexp;
using testing_support::index_of;
using testing_support::TempDir;

namespace {

InvertedIndex toy() {
    std::vector<Document> docs{{"d1", "a b a"}, {"d2", "b c"}};
    return build_index(docs);
}

void expect_same_stats(InvertedIndex const& a, InvertedIndex const& b) {
    ASSERT_EQ(a.num_terms(), b.num_terms());
    EXPECT_EQ(a.num_docs(), b.num_docs());
    EXPECT_EQ(a.total_terms(), b.total_terms());
    EXPECT_DOUBLE_EQ(a.avgdl(), b.avgdl());
    for (TermId t = 0; t < a.num_terms(); ++t) {
        EXPECT_EQ(a.term(t), b.term(t));
        EXPECT_EQ(a.df(t), b.df(t));
        EXPECT_EQ(a.cf(t), b.cf(t));
    }
}

}  // namespace

TEST(Index, ToyStatistics) {
    auto idx = toy();
    EXPECT_EQ(idx.df("a"), 1u);
    EXPECT_EQ(idx.cf("a"), 2u);
    EXPECT_EQ(idx.df("b"), 2u);
    EXPECT_EQ(idx.cf("b"), 2u);
    EXPECT_EQ(idx.num_docs(), 2u);
    EXPECT_DOUBLE_EQ(idx.avgdl(), 2.5);
    EXPECT_EQ(idx.total_terms(), 5u);
}

TEST(Index, SingleEmptyDocument) {
    std::vector<Document> docs{{"only", ""}};
    auto idx = build_index(docs);
    EXPECT_EQ(idx.num_docs(), 1u);
    EXPECT_EQ(idx.total_terms(), 0u);
    EXPECT_EQ(idx.avgdl(), 0.0);
    EXPECT_EQ(idx.num_terms(), 0u);
    idx.check_invariants();
}

TEST(Index, EmptyCorpusIsAnError) {
    std::vector<Document> docs;
    EXPECT_THROW((void)build_index(docs), std::invalid_argument);
}

TEST(Index, DuplicateIdIsAnError) {
    std::vector<Document> docs{{"a", "x"}, {"a", "y"}};
    EXPECT_THROW((void)build_index(docs), std::invalid_argument);
}

TEST(Index, Lookup) {
    auto idx = toy();
    auto a = idx.lookup("a");
    ASSERT_EQ(a.size(), 1u);
    EXPECT_EQ(idx.doc_id(a[0].doc), "d1");
    EXPECT_EQ(a[0].tf, 2u);
    EXPECT_TRUE(idx.lookup("zzz").empty());
    EXPECT_EQ(idx.lookup("b").size(), idx.num_docs());
    EXPECT_EQ(idx.df("zzz"), 0u);
    EXPECT_EQ(idx.cf("zzz"), 0u);
}

TEST(Index, ForwardIndexMatchesPostings) {
    auto idx = toy();
    auto d1 = *idx.ordinal("d1");
    auto terms = idx.doc_terms(d1);
    ASSERT_EQ(terms.size(), 2u);
    EXPECT_EQ(idx.term(terms[0].term), "a");
    EXPECT_EQ(terms[0].tf, 2u);
    EXPECT_EQ(idx.tf(*idx.term_id("c"), d1), 0u);
    EXPECT_FALSE(idx.ordinal("nope"));
}

TEST(Index, RejectsInconsistentParts) {
    IndexParts parts;
    parts.doc_ids = {"x"};
    parts.doc_lengths = {2};
    parts.terms = {"b", "a"};
    parts.offsets = {0, 1, 2};
    parts.postings = {{0, 1}, {0, 1}};
    EXPECT_THROW(InvertedIndex{parts}, std::invalid_argument);  // unsorted terms
    parts.terms = {"a", "b"};
    parts.doc_lengths = {3};
    EXPECT_THROW(InvertedIndex{parts}, std::invalid_argument);  // lengths disagree with postings
    parts.doc_lengths = {2};
    parts.postings = {{0, 0}, {0, 2}};
    EXPECT_THROW(InvertedIndex{parts}, std::invalid_argument);  // tf 0
    parts.postings = {{0, 1}, {0, 1}};
    EXPECT_NO_THROW(InvertedIndex{parts});
}

TEST(Index, RandomizedInvariantsAgainstRecount) {
    oracle::Gen gen(101);
    for (int trial = 0; trial < 100; ++trial) {
        auto raw = gen.corpus(30, 25, 15);
        auto idx = index_of(raw);
        idx.check_invariants();
        oracle::Stats s(raw);
        ASSERT_EQ(idx.num_terms(), s.df.size());
        std::uint64_t sum_cf = 0;
        for (TermId t = 0; t < idx.num_terms(); ++t) {
            EXPECT_EQ(idx.df(t), s.get_df(idx.term(t)));
            EXPECT_EQ(idx.cf(t), s.get_cf(idx.term(t)));
            EXPECT_EQ(idx.postings(t).size(), idx.df(t));
            auto p = idx.postings(t);
            for (std::size_t i = 1; i < p.size(); ++i) {
                EXPECT_LT(p[i - 1].doc, p[i].doc);
            }
            sum_cf += idx.cf(t);
        }
        EXPECT_EQ(sum_cf, idx.total_terms());
        EXPECT_EQ(static_cast<double>(idx.total_terms()), s.total);
        for (DocOrdinal d = 0; d < idx.num_docs(); ++d) {
            EXPECT_EQ(idx.doc_length(d), raw[d].tokens.size());
        }
    }
}

TEST(Index, RebuildIsDeterministic) {
    oracle::Gen gen(7);
    auto raw = gen.corpus(40, 30, 20);
    auto a = index_of(raw);
    auto b = index_of(raw);
    expect_same_stats(a, b);
    EXPECT_EQ(a.parts().postings, b.parts().postings);
    EXPECT_EQ(a.parts().offsets, b.parts().offsets);
}

TEST(Index, PermutationChangesOnlyOrdinals) {
    oracle::Gen gen(9);
    for (int trial = 0; trial < 50; ++trial) {
        auto raw = gen.corpus(20, 15, 10);
        auto shuffled = raw;
        gen.shuffle(shuffled);
        auto a = index_of(raw);
        auto b = index_of(shuffled);
        expect_same_stats(a, b);
        for (auto const& d : raw) {
            EXPECT_EQ(a.doc_length(*a.ordinal(d.id)), b.doc_length(*b.ordinal(d.id)));
        }
    }
}

TEST(Index, LargeSyntheticCorpus) {
    oracle::Gen gen(12);
    auto raw = gen.corpus(1000, 500, 40, 1000);
    auto idx = index_of(raw);
    EXPECT_EQ(idx.num_docs(), 1000u);
    idx.check_invariants();
}

TEST(Index, StopwordsAreApplied) {
    AnalyzerConfig config;
    config.stopwords = {"the"};
    std::vector<Document> docs{{"a", "The cat"}};
    auto idx = build_index(docs, config);
    EXPECT_EQ(idx.df("the"), 0u);
    EXPECT_EQ(idx.doc_length(0), 1u);
}

TEST(Index, StreamedBuildAppliesExpansions) {
    auto reader = CorpusReader(
        std::make_unique<std::istringstream>(R"({"id":"d1","contents":"cats purr"})" "\n" R"({"id":"d2","contents":"dogs"})"),
        CorpusFormat::jsonl);
    ExpansionSet e;
    e.add("d1", {"why purr"});
    auto idx = build_index(reader, {}, &e, 2);
    EXPECT_EQ(idx.doc_length(0), 6u);
    EXPECT_EQ(idx.cf("purr"), 3u);
    EXPECT_EQ(idx.doc_length(1), 1u);
}

TEST(Snapshot, RoundTrip) {
    oracle::Gen gen(21);
    for (int trial = 0; trial < 20; ++trial) {
        auto raw = gen.corpus(15, 20, 12);
        auto idx = index_of(raw);
        std::stringstream buf;
        write_index(idx, buf);
        auto back = read_index(buf);
        expect_same_stats(idx, back);
        EXPECT_EQ(idx.parts().doc_ids, back.parts().doc_ids);
        EXPECT_EQ(idx.parts().doc_lengths, back.parts().doc_lengths);
        EXPECT_EQ(idx.parts().postings, back.parts().postings);
    }
}

TEST(Snapshot, PreservesAnalyzer) {
    AnalyzerConfig config;
    config.stopwords = {"the", "of"};
    std::vector<Document> docs{{"a", "The end of it"}};
    auto idx = build_index(docs, config);
    TempDir dir;
    save_index(idx, dir.file("i.idx"));
    auto back = load_index(dir.file("i.idx"));
    EXPECT_EQ(back.analyzer(), config);
}

TEST(Snapshot, RejectsBadInput) {
    std::stringstream buf;
    write_index(toy(), buf);
    auto bytes = buf.str();

    std::istringstream bad_magic("YIDX1" + bytes.substr(5));
    EXPECT_THROW((void)read_index(bad_magic), FormatError);

    auto wrong_version = bytes;
    wrong_version[5] = static_cast<char>(snapshot_version + 1);
    std::istringstream v(wrong_version);
    EXPECT_THROW((void)read_index(v), FormatError);

    for (std::size_t cut : {std::size_t{0}, std::size_t{3}, std::size_t{6}, bytes.size() / 2, bytes.size() - 1}) {
        std::istringstream truncated(bytes.substr(0, cut));
        EXPECT_THROW((void)read_index(truncated), FormatError) << cut;
    }
    EXPECT_THROW((void)load_index("/nonexistent/file.idx"), std::exception);
}
