#include "dexp/index.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

#include <fmt/format.h>

namespace dexp {

InvertedIndex::InvertedIndex(IndexParts parts) : m_parts(std::move(parts)) {
    auto const n_docs = m_parts.doc_ids.size();
    auto const n_terms = m_parts.terms.size();
    if (m_parts.doc_lengths.size() != n_docs) {
        throw std::invalid_argument("doc_lengths and doc_ids differ in size");
    }
    if (m_parts.offsets.size() != n_terms + 1 || m_parts.offsets.front() != 0 ||
        m_parts.offsets.back() != m_parts.postings.size()) {
        throw std::invalid_argument("postings offsets do not match the dictionary");
    }
    for (std::size_t i = 1; i < n_terms; ++i) {
        if (!(m_parts.terms[i - 1] < m_parts.terms[i])) {
            throw std::invalid_argument("dictionary terms are not sorted and unique");
        }
    }
    for (DocOrdinal d = 0; d < n_docs; ++d) {
        if (!m_ordinals.emplace(m_parts.doc_ids[d], d).second) {
            throw std::invalid_argument("duplicate document id: " + m_parts.doc_ids[d]);
        }
    }

    m_cf.assign(n_terms, 0);
    std::vector<std::uint64_t> forward_counts(n_docs, 0);
    for (TermId t = 0; t < n_terms; ++t) {
        if (m_parts.offsets[t + 1] <= m_parts.offsets[t]) {
            throw std::invalid_argument("empty postings list for term " + m_parts.terms[t]);
        }
        auto list = postings(t);
        DocOrdinal prev = 0;
        for (std::size_t i = 0; i < list.size(); ++i) {
            auto const& p = list[i];
            if (p.tf == 0 || p.doc >= n_docs || (i > 0 && p.doc <= prev)) {
                throw std::invalid_argument("invalid postings for term " + m_parts.terms[t]);
            }
            prev = p.doc;
            m_cf[t] += p.tf;
            ++forward_counts[p.doc];
        }
    }

    m_forward_offsets.assign(n_docs + 1, 0);
    for (DocOrdinal d = 0; d < n_docs; ++d) {
        m_forward_offsets[d + 1] = m_forward_offsets[d] + forward_counts[d];
    }
    m_forward.resize(m_parts.postings.size());
    std::vector<std::uint64_t> cursor(m_forward_offsets.begin(), m_forward_offsets.end() - 1);
    std::vector<std::uint64_t> length_check(n_docs, 0);
    // terms are visited in id order, so every term vector comes out sorted
    for (TermId t = 0; t < n_terms; ++t) {
        for (auto const& p : postings(t)) {
            m_forward[cursor[p.doc]++] = DocTerm{t, p.tf};
            length_check[p.doc] += p.tf;
        }
    }
    for (DocOrdinal d = 0; d < n_docs; ++d) {
        if (length_check[d] != m_parts.doc_lengths[d]) {
            throw std::invalid_argument("document length disagrees with postings for " +
                                        m_parts.doc_ids[d]);
        }
    }

    m_total_terms = std::accumulate(m_parts.doc_lengths.begin(), m_parts.doc_lengths.end(),
                                    std::uint64_t{0});
    m_avgdl = n_docs == 0 ? 0.0 : static_cast<double>(m_total_terms) / static_cast<double>(n_docs);
}

std::optional<DocOrdinal> InvertedIndex::ordinal(std::string const& doc_id) const {
    auto it = m_ordinals.find(doc_id);
    if (it == m_ordinals.end()) {
        return std::nullopt;
    }
    return it->second;
}

std::optional<TermId> InvertedIndex::term_id(std::string_view term) const {
    auto const& terms = m_parts.terms;
    auto it = std::lower_bound(terms.begin(), terms.end(), term,
                               [](std::string const& a, std::string_view b) { return a < b; });
    if (it == terms.end() || *it != term) {
        return std::nullopt;
    }
    return static_cast<TermId>(it - terms.begin());
}

std::span<Posting const> InvertedIndex::postings(TermId id) const {
    auto begin = m_parts.offsets[id];
    auto end = m_parts.offsets[id + 1];
    return std::span<Posting const>(m_parts.postings).subspan(begin, end - begin);
}

std::span<Posting const> InvertedIndex::lookup(std::string_view term) const {
    auto id = term_id(term);
    return id ? postings(*id) : std::span<Posting const>{};
}

std::uint32_t InvertedIndex::df(TermId id) const {
    return static_cast<std::uint32_t>(m_parts.offsets[id + 1] - m_parts.offsets[id]);
}

std::uint32_t InvertedIndex::df(std::string_view term) const {
    auto id = term_id(term);
    return id ? df(*id) : 0;
}

std::uint64_t InvertedIndex::cf(std::string_view term) const {
    auto id = term_id(term);
    return id ? cf(*id) : 0;
}

std::span<DocTerm const> InvertedIndex::doc_terms(DocOrdinal doc) const {
    auto begin = m_forward_offsets[doc];
    auto end = m_forward_offsets[doc + 1];
    return std::span<DocTerm const>(m_forward).subspan(begin, end - begin);
}

std::uint32_t InvertedIndex::tf(TermId id, DocOrdinal doc) const {
    auto terms = doc_terms(doc);
    auto it = std::lower_bound(terms.begin(), terms.end(), id,
                               [](DocTerm const& dt, TermId t) { return dt.term < t; });
    return (it != terms.end() && it->term == id) ? it->tf : 0;
}

void InvertedIndex::check_invariants() const {
    std::uint64_t cf_sum = 0;
    for (TermId t = 0; t < num_terms(); ++t) {
        auto list = postings(t);
        if (df(t) != list.size()) {
            throw std::logic_error("df mismatch for term " + term(t));
        }
        std::uint64_t tf_sum = 0;
        for (auto const& p : list) {
            tf_sum += p.tf;
        }
        if (tf_sum != cf(t)) {
            throw std::logic_error("cf mismatch for term " + term(t));
        }
        cf_sum += tf_sum;
    }
    std::uint64_t length_sum = 0;
    for (auto len : m_parts.doc_lengths) {
        length_sum += len;
    }
    if (cf_sum != m_total_terms || length_sum != m_total_terms) {
        throw std::logic_error(fmt::format("conservation violated: sum cf={} sum |d|={} total={}",
                                           cf_sum, length_sum, m_total_terms));
    }
    if (num_docs() > 0 &&
        m_avgdl != static_cast<double>(m_total_terms) / static_cast<double>(num_docs())) {
        throw std::logic_error("avgdl mismatch");
    }
}

IndexBuilder::IndexBuilder(AnalyzerConfig analyzer) : m_analyzer(std::move(analyzer)) {}

void IndexBuilder::add(Document const& doc) {
    auto ordinal = static_cast<DocOrdinal>(m_doc_ids.size());
    if (!m_seen_ids.emplace(doc.id, ordinal).second) {
        throw std::invalid_argument("duplicate document id: " + doc.id);
    }
    auto terms = analyze_terms(doc.text, m_analyzer);
    for (auto& term : terms) {
        auto [it, inserted] = m_term_ids.try_emplace(term, static_cast<std::uint32_t>(m_terms.size()));
        if (inserted) {
            m_terms.push_back(term);
            m_postings.emplace_back();
        }
        auto& list = m_postings[it->second];
        if (list.empty() || list.back().doc != ordinal) {
            list.push_back(Posting{ordinal, 1});
        } else {
            ++list.back().tf;
        }
    }
    m_doc_ids.push_back(doc.id);
    m_doc_lengths.push_back(static_cast<std::uint32_t>(terms.size()));
}

InvertedIndex IndexBuilder::build() && {
    if (m_doc_ids.empty()) {
        throw std::invalid_argument("cannot build an index from an empty corpus");
    }
    std::vector<std::uint32_t> order(m_terms.size());
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(),
              [&](std::uint32_t a, std::uint32_t b) { return m_terms[a] < m_terms[b]; });

    IndexParts parts;
    parts.analyzer = std::move(m_analyzer);
    parts.doc_ids = std::move(m_doc_ids);
    parts.doc_lengths = std::move(m_doc_lengths);
    parts.terms.reserve(order.size());
    parts.offsets.reserve(order.size() + 1);
    parts.offsets.push_back(0);
    for (auto old_id : order) {
        parts.terms.push_back(std::move(m_terms[old_id]));
        auto& list = m_postings[old_id];
        parts.postings.insert(parts.postings.end(), list.begin(), list.end());
        parts.offsets.push_back(parts.postings.size());
        std::vector<Posting>().swap(list);
    }
    m_term_ids.clear();
    m_seen_ids.clear();
    return InvertedIndex(std::move(parts));
}

InvertedIndex build_index(std::span<Document const> docs, AnalyzerConfig const& analyzer) {
    IndexBuilder builder(analyzer);
    for (auto const& doc : docs) {
        builder.add(doc);
    }
    return std::move(builder).build();
}

InvertedIndex build_index(CorpusReader& reader, AnalyzerConfig const& analyzer,
                          ExpansionSet const* expansions, int repeat) {
    IndexBuilder builder(analyzer);
    while (auto doc = reader.next()) {
        if (expansions != nullptr) {
            builder.add(apply_expansions(std::move(*doc), *expansions, repeat));
        } else {
            builder.add(*doc);
        }
    }
    return std::move(builder).build();
}

}  // namespace dexp
