#include "dexp/weak_supervision.hpp"

#include <stdexcept>

#include <fmt/format.h>
#include <json.hpp>

#include "dexp/segmentation.hpp"

namespace dexp {

void DocumentStore::add(Document doc) {
    auto id = doc.id;
    if (!m_docs.emplace(std::move(id), std::move(doc)).second) {
        throw std::invalid_argument("duplicate document id in store");
    }
}

Document const* DocumentStore::find(std::string const& id) const {
    auto it = m_docs.find(id);
    return it == m_docs.end() ? nullptr : &it->second;
}

DocumentStore DocumentStore::from_corpus(CorpusReader& reader) {
    DocumentStore store;
    while (auto doc = reader.next()) {
        store.add(std::move(*doc));
    }
    return store;
}

void generate_pairs(InvertedIndex const& index, DocumentStore const& docs, std::span<QueryRecord const> queries,
                    WeakSupervisionParams const& params, std::function<void(TrainingPair const&)> const& sink,
                    std::vector<std::string>* warnings) {
    if (params.max_passage_tokens < 1) {
        throw std::invalid_argument("max_passage_tokens must be >= 1");
    }
    auto batch = run_batch(index, queries, params.search);
    if (warnings != nullptr) {
        warnings->insert(warnings->end(), batch.warnings.begin(), batch.warnings.end());
    }
    for (std::size_t q = 0; q < queries.size(); ++q) {
        auto const& hits = batch.run.queries[q].docs;
        if (hits.empty() && warnings != nullptr) {
            warnings->push_back(fmt::format("query {}: retrieved no documents", queries[q].id));
        }
        for (std::size_t r = 0; r < hits.size(); ++r) {
            auto const* doc = docs.find(hits[r].doc_id);
            if (doc == nullptr) {
                throw std::runtime_error(fmt::format("document {} is in the index but not in the corpus",
                                                     hits[r].doc_id));
            }
            auto head = segment_head(*doc, index.analyzer(), params.max_passage_tokens);
            if (!head) {
                continue;
            }
            sink(TrainingPair{std::move(head->text), queries[q].text, queries[q].id, r + 1, hits[r].score});
        }
    }
}

std::vector<TrainingPair> generate_pairs(InvertedIndex const& index, DocumentStore const& docs,
                                         std::span<QueryRecord const> queries, WeakSupervisionParams const& params,
                                         std::vector<std::string>* warnings) {
    std::vector<TrainingPair> pairs;
    generate_pairs(
        index, docs, queries, params, [&](TrainingPair const& p) { pairs.push_back(p); }, warnings);
    return pairs;
}

void write_pair(std::ostream& out, TrainingPair const& pair) {
    nlohmann::ordered_json obj;
    obj["query"] = pair.query_text;
    obj["passage"] = pair.passage_text;
    obj["qid"] = pair.source_query_id;
    obj["rank"] = pair.rank;
    obj["score"] = pair.score;
    out << obj.dump() << '\n';
}

}  // namespace dexp
