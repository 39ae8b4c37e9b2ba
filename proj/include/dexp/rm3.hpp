#pragma once

#include <cstddef>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "dexp/index.hpp"
#include "dexp/scoring.hpp"
#include "dexp/search.hpp"

namespace dexp {

struct RM3Params {
    std::size_t fb_docs = 10;
    std::size_t fb_terms = 10;
    /// Weight of the original query in the final interpolation.
    double alpha = 0.5;
    /// Drop feedback terms that occur in every document of the feedback index.
    bool exclude_common_terms = true;
    /// Added to shifted first-pass scores so the lowest-ranked feedback doc keeps some weight.
    double epsilon = 1e-6;

    void validate() const;
};

/// Term distribution with unique terms and strictly positive weights summing
/// to one. Terms are ordered by descending weight, then term.
struct WeightedQuery {
    std::vector<WeightedTerm> terms;

    [[nodiscard]] std::map<std::string, double> as_map() const;
};

struct RM3Expansion {
    WeightedQuery query;
    SearchStatus status = SearchStatus::ok;
};

/// Maximum-likelihood distribution of the analyzed query text.
[[nodiscard]] WeightedQuery normalized_query(std::string_view query_text, AnalyzerConfig const& analyzer);

/// RM3 over the top fb_docs of first_pass. Feedback statistics come from
/// feedback_index; documents missing from it are ignored. Document weights are
/// first-pass scores shifted by their minimum plus epsilon and normalized;
/// the relevance model is the weighted mix of feedback document language
/// models, truncated to fb_terms terms and interpolated with the original query.
[[nodiscard]] RM3Expansion rm3_expand(InvertedIndex const& feedback_index, std::string_view query_text,
                                      std::span<ScoredDoc const> first_pass, RM3Params const& params);

/// First pass on index, expansion against feedback_index, second pass on index.
[[nodiscard]] SearchResult rm3_search(InvertedIndex const& index, InvertedIndex const& feedback_index,
                                      std::string_view query_text, SearchOptions const& options,
                                      RM3Params const& params);

}  // namespace dexp
