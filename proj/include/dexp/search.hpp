#pragma once

#include <cstddef>
#include <functional>
#include <ostream>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "dexp/corpus.hpp"
#include "dexp/index.hpp"
#include "dexp/scoring.hpp"

namespace dexp {

struct ScoredDoc {
    std::string doc_id;
    double score = 0.0;

    friend bool operator==(ScoredDoc const&, ScoredDoc const&) = default;
};

/// Ranking order: higher score first, ties by ascending doc id.
[[nodiscard]] inline bool ranks_before(ScoredDoc const& a, ScoredDoc const& b) {
    return a.score > b.score || (a.score == b.score && a.doc_id < b.doc_id);
}

enum class SearchStatus {
    ok,
    /// the query text analyzed to zero tokens
    empty_query,
    /// RM3 had no first-pass results to learn from
    no_feedback,
};

struct SearchResult {
    std::vector<ScoredDoc> docs;
    SearchStatus status = SearchStatus::ok;
};

struct SearchOptions {
    ScorerConfig scorer;
    std::size_t k = 1000;
    /// Score every document instead of only those sharing a term with the
    /// query. Only changes results for the query-likelihood scorers.
    bool exhaustive = false;
};

/// Document-at-a-time top-k evaluation with a bounded heap. Candidates are
/// the union of the query terms' postings (all documents when exhaustive).
/// BM25 never returns documents without a query term.
[[nodiscard]] SearchResult search_weighted(InvertedIndex const& index, std::span<WeightedTerm const> terms,
                                           SearchOptions const& options);

/// Analyzes query_text with the index's analyzer; repeated terms weigh by count.
[[nodiscard]] SearchResult search(InvertedIndex const& index, std::string_view query_text,
                                  SearchOptions const& options);

struct QueryRun {
    std::string query_id;
    std::vector<ScoredDoc> docs;

    friend bool operator==(QueryRun const&, QueryRun const&) = default;
};

/// Per-query rankings in query-file order.
struct RunRanking {
    std::vector<QueryRun> queries;

    friend bool operator==(RunRanking const&, RunRanking const&) = default;
};

struct BatchResult {
    RunRanking run;
    /// Human-readable per-query warnings, in query order.
    std::vector<std::string> warnings;
};

using QueryProcessor = std::function<SearchResult(std::string_view query_text)>;

/// Runs every query through process, possibly on several threads. Output
/// order follows the input. Throws std::invalid_argument naming a duplicate qid.
[[nodiscard]] BatchResult run_batch(std::span<QueryRecord const> queries, QueryProcessor const& process,
                                    unsigned threads = 1);

[[nodiscard]] BatchResult run_batch(InvertedIndex const& index, std::span<QueryRecord const> queries,
                                    SearchOptions const& options, unsigned threads = 1);

/// TREC run format: "qid Q0 docid rank score tag", rank from 1, score with 6 decimals.
void write_run(std::ostream& out, RunRanking const& run, std::string_view tag);

}  // namespace dexp
