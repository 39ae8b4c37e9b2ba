#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "dexp/analysis.hpp"
#include "dexp/corpus.hpp"

namespace dexp {

using DocOrdinal = std::uint32_t;
using TermId = std::uint32_t;

struct Posting {
    DocOrdinal doc = 0;
    std::uint32_t tf = 0;

    friend bool operator==(Posting const&, Posting const&) = default;
};

/// One entry of a document's term vector.
struct DocTerm {
    TermId term = 0;
    std::uint32_t tf = 0;

    friend bool operator==(DocTerm const&, DocTerm const&) = default;
};

/// Everything an InvertedIndex is made of. Terms are sorted and unique; the
/// postings of term i are postings[offsets[i] .. offsets[i + 1]).
struct IndexParts {
    AnalyzerConfig analyzer;
    std::vector<std::string> doc_ids;
    std::vector<std::uint32_t> doc_lengths;
    std::vector<std::string> terms;
    std::vector<std::uint64_t> offsets;
    std::vector<Posting> postings;
};

/// Immutable in-memory inverted index with the collection statistics needed by
/// BM25 and the query-likelihood scorers. Document ordinals follow ingestion
/// order; term ids follow lexicographic term order. A forward index (document
/// term vectors) is derived from the postings for feedback and diagnostics.
class InvertedIndex {
  public:
    /// Validates parts and derives statistics. Throws std::invalid_argument on
    /// inconsistent input.
    explicit InvertedIndex(IndexParts parts);

    [[nodiscard]] std::size_t num_docs() const { return m_parts.doc_ids.size(); }
    [[nodiscard]] std::size_t num_terms() const { return m_parts.terms.size(); }
    [[nodiscard]] std::uint64_t total_terms() const { return m_total_terms; }
    [[nodiscard]] double avgdl() const { return m_avgdl; }

    [[nodiscard]] std::string const& doc_id(DocOrdinal doc) const { return m_parts.doc_ids[doc]; }
    [[nodiscard]] std::uint32_t doc_length(DocOrdinal doc) const { return m_parts.doc_lengths[doc]; }
    [[nodiscard]] std::optional<DocOrdinal> ordinal(std::string const& doc_id) const;

    [[nodiscard]] std::optional<TermId> term_id(std::string_view term) const;
    [[nodiscard]] std::string const& term(TermId id) const { return m_parts.terms[id]; }

    [[nodiscard]] std::span<Posting const> postings(TermId id) const;
    /// Empty for unknown terms.
    [[nodiscard]] std::span<Posting const> lookup(std::string_view term) const;

    [[nodiscard]] std::uint32_t df(TermId id) const;
    [[nodiscard]] std::uint64_t cf(TermId id) const { return m_cf[id]; }
    [[nodiscard]] std::uint32_t df(std::string_view term) const;
    [[nodiscard]] std::uint64_t cf(std::string_view term) const;

    /// Term vector of a document, sorted by term id.
    [[nodiscard]] std::span<DocTerm const> doc_terms(DocOrdinal doc) const;
    /// tf of a term in a document; 0 if absent.
    [[nodiscard]] std::uint32_t tf(TermId id, DocOrdinal doc) const;

    [[nodiscard]] AnalyzerConfig const& analyzer() const { return m_parts.analyzer; }
    [[nodiscard]] IndexParts const& parts() const { return m_parts; }

    /// Re-verifies df/cf/total-terms conservation. Throws std::logic_error.
    void check_invariants() const;

  private:
    IndexParts m_parts;
    std::vector<std::uint64_t> m_cf;
    std::uint64_t m_total_terms = 0;
    double m_avgdl = 0.0;
    std::unordered_map<std::string, DocOrdinal> m_ordinals;
    std::vector<std::uint64_t> m_forward_offsets;
    std::vector<DocTerm> m_forward;
};

/// Single-writer index construction. Documents are analyzed as they arrive;
/// ordinals are assigned in add() order.
class IndexBuilder {
  public:
    explicit IndexBuilder(AnalyzerConfig analyzer = {});

    void add(Document const& doc);
    [[nodiscard]] std::size_t size() const { return m_doc_ids.size(); }

    /// Throws std::invalid_argument on an empty corpus.
    [[nodiscard]] InvertedIndex build() &&;

  private:
    AnalyzerConfig m_analyzer;
    std::vector<std::string> m_doc_ids;
    std::vector<std::uint32_t> m_doc_lengths;
    std::unordered_map<std::string, DocOrdinal> m_seen_ids;
    std::unordered_map<std::string, std::uint32_t> m_term_ids;
    std::vector<std::string> m_terms;
    std::vector<std::vector<Posting>> m_postings;
};

[[nodiscard]] InvertedIndex build_index(std::span<Document const> docs, AnalyzerConfig const& analyzer = {});

/// Streams a corpus into an index, appending expansions to each document first
/// when provided.
[[nodiscard]] InvertedIndex build_index(CorpusReader& reader, AnalyzerConfig const& analyzer = {},
                                        ExpansionSet const* expansions = nullptr, int repeat = 1);

/// Binary snapshot: magic "XIDX1", a version byte, then little-endian
/// analyzer, document, and dictionary/postings sections.
void save_index(InvertedIndex const& index, std::string const& path);
void write_index(InvertedIndex const& index, std::ostream& out);
/// Throws FormatError on a bad magic, unsupported version, or truncated file.
[[nodiscard]] InvertedIndex load_index(std::string const& path);
[[nodiscard]] InvertedIndex read_index(std::istream& in);

inline constexpr std::uint8_t snapshot_version = 1;

}  // namespace dexp
