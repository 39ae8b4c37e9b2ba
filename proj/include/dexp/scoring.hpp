#pragma once

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "dexp/index.hpp"

namespace dexp {

/// Okapi BM25 with the Lucene idf, ln(1 + (N - df + 0.5) / (df + 0.5)).
struct BM25Params {
    double k1 = 0.9;
    double b = 0.4;

    void validate() const;
};

/// Query likelihood with Dirichlet prior smoothing.
struct DirichletParams {
    double mu = 1000.0;

    void validate() const;
};

/// Query likelihood with Jelinek-Mercer smoothing; lambda is the background weight.
struct JMParams {
    double lambda = 0.1;

    void validate() const;
};

enum class ScorerKind { bm25, qld, qljm };

[[nodiscard]] ScorerKind parse_scorer_kind(std::string_view name);
[[nodiscard]] std::string_view to_string(ScorerKind kind);

struct ScorerConfig {
    ScorerKind kind = ScorerKind::bm25;
    BM25Params bm25;
    DirichletParams qld;
    JMParams qljm;

    /// Throws std::invalid_argument when the selected scorer's parameters are out of range.
    void validate() const;
};

struct WeightedTerm {
    std::string term;
    double weight = 1.0;

    friend bool operator==(WeightedTerm const&, WeightedTerm const&) = default;
};

/// Collapses a term sequence into unique terms (first-occurrence order)
/// weighted by their query frequency.
[[nodiscard]] std::vector<WeightedTerm> count_terms(std::span<std::string const> terms);

/// Per-query scorer: resolves terms against the index once, then scores any
/// document as the weighted sum of per-term contributions. BM25 contributions
/// vanish for absent terms; the query-likelihood scorers add a background
/// contribution for every query term with cf > 0 and skip terms unseen in the
/// collection.
class QueryScorer {
  public:
    QueryScorer(InvertedIndex const& index, std::span<WeightedTerm const> terms, ScorerConfig const& config);

    struct Term {
        TermId id;
        double weight;
        /// BM25: idf. QLD: mu * P(t|C). QLJM: lambda * P(t|C).
        double constant;
    };

    /// Terms that can contribute, in query order. Unknown terms are dropped.
    [[nodiscard]] std::span<Term const> terms() const { return m_terms; }

    /// Contribution of terms()[i] to a document of length doc_length with the given tf.
    [[nodiscard]] double contribution(std::size_t i, std::uint32_t tf, std::uint32_t doc_length) const;

    /// tf_of(i) must return the tf of terms()[i] in the document.
    template <typename TfOf>
    [[nodiscard]] double score(std::uint32_t doc_length, TfOf&& tf_of) const {
        double s = 0.0;
        for (std::size_t i = 0; i < m_terms.size(); ++i) {
            s += contribution(i, tf_of(i), doc_length);
        }
        return s;
    }

    [[nodiscard]] double score(DocOrdinal doc) const;

  private:
    InvertedIndex const& m_index;
    ScorerConfig m_config;
    std::vector<Term> m_terms;
};

/// Pointwise scorers over an analyzed query (duplicates count as query frequency).
[[nodiscard]] double bm25_score(std::span<std::string const> query_terms, DocOrdinal doc,
                                InvertedIndex const& index, BM25Params const& params = {});
[[nodiscard]] double qld_score(std::span<std::string const> query_terms, DocOrdinal doc,
                               InvertedIndex const& index, DirichletParams const& params = {});
[[nodiscard]] double qljm_score(std::span<std::string const> query_terms, DocOrdinal doc,
                                InvertedIndex const& index, JMParams const& params = {});

[[nodiscard]] double score_document(std::span<WeightedTerm const> terms, DocOrdinal doc,
                                    InvertedIndex const& index, ScorerConfig const& config);

}  // namespace dexp
