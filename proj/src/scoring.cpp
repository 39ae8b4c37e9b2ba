#include "dexp/scoring.hpp"

#include <cmath>
#include <stdexcept>
#include <unordered_map>

#include <fmt/format.h>

namespace dexp {

void BM25Params::validate() const {
    if (!(k1 >= 0.0) || !std::isfinite(k1)) {
        throw std::invalid_argument(fmt::format("bm25 k1 must be >= 0 (got {})", k1));
    }
    if (!(b >= 0.0 && b <= 1.0)) {
        throw std::invalid_argument(fmt::format("bm25 b must be in [0, 1] (got {})", b));
    }
}

void DirichletParams::validate() const {
    if (!(mu > 0.0) || !std::isfinite(mu)) {
        throw std::invalid_argument(fmt::format("qld mu must be > 0 (got {})", mu));
    }
}

void JMParams::validate() const {
    if (!(lambda > 0.0 && lambda < 1.0)) {
        throw std::invalid_argument(fmt::format("qljm lambda must be in (0, 1) (got {})", lambda));
    }
}

ScorerKind parse_scorer_kind(std::string_view name) {
    if (name == "bm25") {
        return ScorerKind::bm25;
    }
    if (name == "qld") {
        return ScorerKind::qld;
    }
    if (name == "qljm") {
        return ScorerKind::qljm;
    }
    throw std::invalid_argument(fmt::format("unknown scorer '{}' (expected bm25, qld or qljm)", name));
}

std::string_view to_string(ScorerKind kind) {
    switch (kind) {
    case ScorerKind::bm25: return "bm25";
    case ScorerKind::qld: return "qld";
    case ScorerKind::qljm: return "qljm";
    }
    return "?";
}

void ScorerConfig::validate() const {
    bm25.validate();
    qld.validate();
    qljm.validate();
}

std::vector<WeightedTerm> count_terms(std::span<std::string const> terms) {
    std::vector<WeightedTerm> out;
    std::unordered_map<std::string_view, std::size_t> slot;
    for (auto const& t : terms) {
        auto [it, inserted] = slot.try_emplace(t, out.size());
        if (inserted) {
            out.push_back(WeightedTerm{t, 1.0});
        } else {
            out[it->second].weight += 1.0;
        }
    }
    return out;
}

QueryScorer::QueryScorer(InvertedIndex const& index, std::span<WeightedTerm const> terms,
                         ScorerConfig const& config)
    : m_index(index), m_config(config) {
    m_config.validate();
    auto const n = static_cast<double>(index.num_docs());
    auto const total = static_cast<double>(index.total_terms());
    for (auto const& wt : terms) {
        auto id = index.term_id(wt.term);
        if (!id) {
            continue;
        }
        double constant = 0.0;
        switch (m_config.kind) {
        case ScorerKind::bm25: {
            auto df = static_cast<double>(index.df(*id));
            constant = std::log(1.0 + (n - df + 0.5) / (df + 0.5));
            break;
        }
        case ScorerKind::qld:
            constant = m_config.qld.mu * static_cast<double>(index.cf(*id)) / total;
            break;
        case ScorerKind::qljm:
            constant = m_config.qljm.lambda * static_cast<double>(index.cf(*id)) / total;
            break;
        }
        m_terms.push_back(Term{*id, wt.weight, constant});
    }
}

double QueryScorer::contribution(std::size_t i, std::uint32_t tf, std::uint32_t doc_length) const {
    auto const& t = m_terms[i];
    auto const f = static_cast<double>(tf);
    auto const len = static_cast<double>(doc_length);
    switch (m_config.kind) {
    case ScorerKind::bm25: {
        if (tf == 0) {
            return 0.0;
        }
        auto const& p = m_config.bm25;
        double norm = 1.0 - p.b + p.b * len / m_index.avgdl();
        return t.weight * t.constant * f / (f + p.k1 * norm);
    }
    case ScorerKind::qld:
        return t.weight * std::log((f + t.constant) / (len + m_config.qld.mu));
    case ScorerKind::qljm: {
        double ml = doc_length == 0 ? 0.0 : f / len;
        return t.weight * std::log((1.0 - m_config.qljm.lambda) * ml + t.constant);
    }
    }
    return 0.0;
}

double QueryScorer::score(DocOrdinal doc) const {
    return score(m_index.doc_length(doc), [&](std::size_t i) { return m_index.tf(m_terms[i].id, doc); });
}

double score_document(std::span<WeightedTerm const> terms, DocOrdinal doc, InvertedIndex const& index,
                      ScorerConfig const& config) {
    return QueryScorer(index, terms, config).score(doc);
}

double bm25_score(std::span<std::string const> query_terms, DocOrdinal doc, InvertedIndex const& index,
                  BM25Params const& params) {
    ScorerConfig config;
    config.kind = ScorerKind::bm25;
    config.bm25 = params;
    return score_document(count_terms(query_terms), doc, index, config);
}

double qld_score(std::span<std::string const> query_terms, DocOrdinal doc, InvertedIndex const& index,
                 DirichletParams const& params) {
    ScorerConfig config;
    config.kind = ScorerKind::qld;
    config.qld = params;
    return score_document(count_terms(query_terms), doc, index, config);
}

double qljm_score(std::span<std::string const> query_terms, DocOrdinal doc, InvertedIndex const& index,
                  JMParams const& params) {
    ScorerConfig config;
    config.kind = ScorerKind::qljm;
    config.qljm = params;
    return score_document(count_terms(query_terms), doc, index, config);
}

}  // namespace dexp
