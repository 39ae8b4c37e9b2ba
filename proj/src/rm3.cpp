#include "dexp/rm3.hpp"

#include <algorithm>
#include <stdexcept>

#include <fmt/format.h>

namespace dexp {

namespace {

bool heavier(WeightedTerm const& a, WeightedTerm const& b) {
    return a.weight > b.weight || (a.weight == b.weight && a.term < b.term);
}

void normalize(std::vector<WeightedTerm>& terms) {
    double sum = 0.0;
    for (auto const& t : terms) {
        sum += t.weight;
    }
    for (auto& t : terms) {
        t.weight /= sum;
    }
}

}  // namespace

void RM3Params::validate() const {
    if (fb_docs == 0) {
        throw std::invalid_argument("rm3 fbDocs must be >= 1");
    }
    if (fb_terms == 0) {
        throw std::invalid_argument("rm3 fbTerms must be >= 1");
    }
    if (!(alpha >= 0.0 && alpha <= 1.0)) {
        throw std::invalid_argument(fmt::format("rm3 alpha must be in [0, 1] (got {})", alpha));
    }
    if (!(epsilon > 0.0)) {
        throw std::invalid_argument("rm3 epsilon must be > 0");
    }
}

std::map<std::string, double> WeightedQuery::as_map() const {
    std::map<std::string, double> m;
    for (auto const& t : terms) {
        m.emplace(t.term, t.weight);
    }
    return m;
}

WeightedQuery normalized_query(std::string_view query_text, AnalyzerConfig const& analyzer) {
    auto terms = analyze_terms(query_text, analyzer);
    WeightedQuery q{count_terms(terms)};
    normalize(q.terms);
    std::sort(q.terms.begin(), q.terms.end(), heavier);
    return q;
}

RM3Expansion rm3_expand(InvertedIndex const& feedback_index, std::string_view query_text,
                        std::span<ScoredDoc const> first_pass, RM3Params const& params) {
    params.validate();
    RM3Expansion out;
    out.query = normalized_query(query_text, feedback_index.analyzer());
    if (out.query.terms.empty()) {
        out.status = SearchStatus::empty_query;
        return out;
    }
    if (first_pass.empty()) {
        out.status = SearchStatus::no_feedback;
        return out;
    }
    if (params.alpha == 1.0) {
        return out;
    }

    // feedback documents and their weights
    std::vector<std::pair<DocOrdinal, double>> docs;
    for (std::size_t i = 0; i < first_pass.size() && i < params.fb_docs; ++i) {
        if (auto d = feedback_index.ordinal(first_pass[i].doc_id)) {
            docs.emplace_back(*d, first_pass[i].score);
        }
    }
    if (docs.empty()) {
        out.status = SearchStatus::no_feedback;
        return out;
    }
    double min_score = docs.front().second;
    for (auto const& [d, s] : docs) {
        min_score = std::min(min_score, s);
    }
    double weight_sum = 0.0;
    for (auto& [d, s] : docs) {
        s = s - min_score + params.epsilon;
        weight_sum += s;
    }

    // relevance model over document language models
    std::map<TermId, double> mass;
    auto const n_docs = feedback_index.num_docs();
    for (auto const& [d, s] : docs) {
        auto len = feedback_index.doc_length(d);
        if (len == 0) {
            continue;
        }
        double w = s / weight_sum;
        for (auto const& dt : feedback_index.doc_terms(d)) {
            if (params.exclude_common_terms && feedback_index.df(dt.term) == n_docs) {
                continue;
            }
            mass[dt.term] += w * static_cast<double>(dt.tf) / static_cast<double>(len);
        }
    }
    if (mass.empty()) {
        return out;
    }
    std::vector<WeightedTerm> model;
    model.reserve(mass.size());
    for (auto const& [id, m] : mass) {
        model.push_back(WeightedTerm{feedback_index.term(id), m});
    }
    normalize(model);
    std::sort(model.begin(), model.end(), heavier);
    if (model.size() > params.fb_terms) {
        model.resize(params.fb_terms);
    }
    normalize(model);

    // interpolation with the original query
    std::map<std::string, double> mixed;
    for (auto const& t : out.query.terms) {
        mixed[t.term] += params.alpha * t.weight;
    }
    for (auto const& t : model) {
        mixed[t.term] += (1.0 - params.alpha) * t.weight;
    }
    WeightedQuery expanded;
    for (auto const& [term, w] : mixed) {
        if (w > 0.0) {
            expanded.terms.push_back(WeightedTerm{term, w});
        }
    }
    normalize(expanded.terms);
    std::sort(expanded.terms.begin(), expanded.terms.end(), heavier);
    out.query = std::move(expanded);
    return out;
}

SearchResult rm3_search(InvertedIndex const& index, InvertedIndex const& feedback_index,
                        std::string_view query_text, SearchOptions const& options, RM3Params const& params) {
    params.validate();
    SearchOptions first = options;
    first.k = params.fb_docs;
    auto first_pass = search(index, query_text, first);
    if (first_pass.status != SearchStatus::ok) {
        return first_pass;
    }
    auto expansion = rm3_expand(feedback_index, query_text, first_pass.docs, params);
    auto result = search_weighted(index, expansion.query.terms, options);
    if (expansion.status != SearchStatus::ok) {
        result.status = expansion.status;
    }
    return result;
}

}  // namespace dexp
