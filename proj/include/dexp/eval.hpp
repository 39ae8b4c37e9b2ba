#pragma once

#include <cstddef>
#include <istream>
#include <map>
#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <unordered_set>
#include <vector>

#include "dexp/search.hpp"

namespace dexp {

/// Relevance judgments: query id -> doc id -> grade (>= 0). Grade > 0 is relevant.
struct Qrels {
    std::map<std::string, std::map<std::string, int>> judgments;

    [[nodiscard]] std::unordered_set<std::string> relevant(std::string const& query_id) const;
};

/// 4-column TREC qrels: "qid iter docid grade", whitespace separated.
[[nodiscard]] Qrels parse_qrels(std::istream& in);
[[nodiscard]] Qrels load_qrels(std::string const& path);

/// 6-column TREC run. Documents of a query are ordered by the rank column;
/// queries keep their first-appearance order.
[[nodiscard]] RunRanking parse_run(std::istream& in);
[[nodiscard]] RunRanking load_run(std::string const& path);

using RelevantSet = std::unordered_set<std::string>;

/// Mean of precision at each relevant rank within cutoff, over |relevant|.
/// nullopt when the relevant set is empty.
[[nodiscard]] std::optional<double> average_precision(std::span<ScoredDoc const> ranking, RelevantSet const& relevant,
                                                      std::size_t cutoff = 1000);

/// |relevant in top k| / k, even when fewer than k documents were returned.
[[nodiscard]] double precision_at_k(std::span<ScoredDoc const> ranking, RelevantSet const& relevant, std::size_t k);

/// |relevant in top k| / |relevant|; nullopt when the relevant set is empty.
[[nodiscard]] std::optional<double> recall_at_k(std::span<ScoredDoc const> ranking, RelevantSet const& relevant,
                                                std::size_t k);

struct QueryMetrics {
    std::string query_id;
    double ap = 0.0;
    double recall_100 = 0.0;
    double recall_10 = 0.0;
    double precision_10 = 0.0;
    double precision_5 = 0.0;
    std::size_t num_relevant = 0;
    std::size_t num_retrieved = 0;
    std::size_t relevant_retrieved = 0;
};

struct MetricReport {
    /// One row per judged query (at least one relevant document), sorted by query id.
    std::vector<QueryMetrics> per_query;
    /// Means over judged queries; query_id is "all".
    QueryMetrics mean;
    /// Queries present in the run.
    std::size_t query_count = 0;
    std::size_t judged_query_count = 0;
};

/// Judged queries missing from the run score zero; run queries without
/// judgments are ignored.
[[nodiscard]] MetricReport evaluate(RunRanking const& run, Qrels const& qrels, std::size_t map_cutoff = 1000);

void write_report_table(std::ostream& out, MetricReport const& report);
void write_report_jsonl(std::ostream& out, MetricReport const& report);

}  // namespace dexp
