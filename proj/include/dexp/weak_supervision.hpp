#pragma once

#include <cstddef>
#include <functional>
#include <ostream>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "dexp/corpus.hpp"
#include "dexp/index.hpp"
#include "dexp/search.hpp"

namespace dexp {

/// A pseudo-relevant (passage, query) example.
struct TrainingPair {
    std::string passage_text;
    std::string query_text;
    std::string source_query_id;
    std::size_t rank = 1;
    double score = 0.0;

    friend bool operator==(TrainingPair const&, TrainingPair const&) = default;
};

/// Raw document text by id, for turning retrieved ids back into passages.
class DocumentStore {
  public:
    void add(Document doc);
    [[nodiscard]] Document const* find(std::string const& id) const;
    [[nodiscard]] std::size_t size() const { return m_docs.size(); }

    [[nodiscard]] static DocumentStore from_corpus(CorpusReader& reader);

  private:
    std::unordered_map<std::string, Document> m_docs;
};

struct WeakSupervisionParams {
    SearchOptions search{.scorer = {}, .k = 1, .exhaustive = false};
    std::size_t max_passage_tokens = 60;
};

/// Issues every query against the target index and turns each of its top-k
/// documents into a pair. Documents longer than max_passage_tokens are cut to
/// their head sentences. Queries that retrieve nothing yield no pairs and a
/// warning. sink receives pairs in query order, then rank order.
void generate_pairs(InvertedIndex const& index, DocumentStore const& docs, std::span<QueryRecord const> queries,
                    WeakSupervisionParams const& params, std::function<void(TrainingPair const&)> const& sink,
                    std::vector<std::string>* warnings = nullptr);

[[nodiscard]] std::vector<TrainingPair> generate_pairs(InvertedIndex const& index, DocumentStore const& docs,
                                                       std::span<QueryRecord const> queries,
                                                       WeakSupervisionParams const& params,
                                                       std::vector<std::string>* warnings = nullptr);

/// {"query": ..., "passage": ..., "qid": ..., "rank": ..., "score": ...}
void write_pair(std::ostream& out, TrainingPair const& pair);

}  // namespace dexp
