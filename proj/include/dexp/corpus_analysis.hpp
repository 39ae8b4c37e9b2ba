#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "dexp/analysis.hpp"
#include "dexp/corpus.hpp"
#include "dexp/weak_supervision.hpp"

namespace dexp {

/// (bucket, count) pairs in ascending bucket order; bucket = length / width.
/// Empty buckets are omitted.
using Histogram = std::vector<std::pair<std::size_t, std::size_t>>;

[[nodiscard]] Histogram length_histogram(std::span<std::size_t const> lengths, std::size_t bucket_width);

/// Histogram of analyzer token counts over a streamed corpus.
[[nodiscard]] Histogram doc_length_histogram(CorpusReader& reader, AnalyzerConfig const& analyzer,
                                             std::size_t bucket_width);

/// A passage known to be relevant (answer-bearing) and the document it came from.
struct PassageRecord {
    std::string doc_id;
    std::string passage_text;
};

struct PassageDistribution {
    /// (window index, count) in ascending window order.
    Histogram windows;
    std::size_t not_found = 0;
    /// Records whose document is not in the corpus; also counted in not_found.
    std::size_t missing_documents = 0;
};

/// Locates each passage among its document's CONCAT windows.
[[nodiscard]] PassageDistribution relevant_passage_distribution(DocumentStore const& docs,
                                                                std::span<PassageRecord const> records,
                                                                AnalyzerConfig const& analyzer = {},
                                                                std::size_t target_tokens = 60,
                                                                std::size_t stride_tokens = 30);

/// jsonl with string fields "doc_id" and "passage".
[[nodiscard]] std::vector<PassageRecord> load_passage_records(std::string const& path);

}  // namespace dexp
