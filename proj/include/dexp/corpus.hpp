#pragma once

#include <cstddef>
#include <istream>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <unordered_set>
#include <vector>

namespace dexp {

struct Document {
    std::string id;
    std::string text;

    friend bool operator==(Document const&, Document const&) = default;
};

struct QueryRecord {
    std::string id;
    std::string text;

    friend bool operator==(QueryRecord const&, QueryRecord const&) = default;
};

enum class CorpusFormat { jsonl, trecweb };

[[nodiscard]] CorpusFormat parse_corpus_format(std::string_view name);

/// Streams documents from a jsonl or trecweb corpus, one at a time, in file
/// order. Only the set of ids seen so far is retained between calls.
///
/// jsonl: one object per line with string fields "id" and "contents"; blank
/// lines are skipped. trecweb: <DOC> records with a <DOCNO> and zero or more
/// <TEXT> sections (joined by a newline); without <TEXT> the record body after
/// </DOCNO> is used verbatim.
///
/// Throws FormatError carrying the line number and document ordinal on a
/// malformed record, or naming the id on a duplicate.
class CorpusReader {
  public:
    CorpusReader(std::string const& path, CorpusFormat format);
    CorpusReader(std::unique_ptr<std::istream> in, CorpusFormat format);

    [[nodiscard]] std::optional<Document> next();

    /// Bytes consumed from the underlying stream so far.
    [[nodiscard]] std::size_t bytes_consumed() const { return m_bytes; }
    [[nodiscard]] std::size_t documents_read() const { return m_ordinal; }

  private:
    std::optional<Document> next_jsonl();
    std::optional<Document> next_trecweb();
    bool read_line(std::string& line);
    void check_unique(std::string const& id);

    std::unique_ptr<std::istream> m_in;
    CorpusFormat m_format;
    std::size_t m_line = 0;
    std::size_t m_ordinal = 0;
    std::size_t m_bytes = 0;
    std::unordered_set<std::string> m_seen;
};

/// Convenience: materializes a whole corpus.
[[nodiscard]] std::vector<Document> load_corpus(std::string const& path, CorpusFormat format);

/// Query file: one "qid<TAB>query text" per line. Blank lines are skipped.
[[nodiscard]] std::vector<QueryRecord> load_queries(std::string const& path);
[[nodiscard]] std::vector<QueryRecord> parse_queries(std::istream& in);

/// Generated expansion strings keyed by document id. Documents keep the order
/// in which they were first added, and each document's expansions keep their
/// insertion order.
class ExpansionSet {
  public:
    /// Appends to any expansions already present for doc_id. Empty strings are rejected.
    void add(std::string const& doc_id, std::vector<std::string> expansions);

    /// nullptr when doc_id has no expansions.
    [[nodiscard]] std::vector<std::string> const* find(std::string_view doc_id) const;

    [[nodiscard]] std::size_t size() const { return m_entries.size(); }
    [[nodiscard]] bool empty() const { return m_entries.empty(); }

    [[nodiscard]] auto begin() const { return m_entries.begin(); }
    [[nodiscard]] auto end() const { return m_entries.end(); }

    friend bool operator==(ExpansionSet const& a, ExpansionSet const& b) {
        return a.m_entries == b.m_entries;
    }

  private:
    std::vector<std::pair<std::string, std::vector<std::string>>> m_entries;
    std::unordered_map<std::string, std::size_t> m_lookup;
};

/// Expansion jsonl: {"id": <doc id>, "predicted_queries": [<string>, ...]} per line.
[[nodiscard]] ExpansionSet load_expansions(std::string const& path);
[[nodiscard]] ExpansionSet parse_expansions(std::istream& in);
void write_expansions(std::ostream& out, ExpansionSet const& expansions);

/// Returns doc with every expansion appended `repeat` times, space separated.
/// Documents without expansions are returned unchanged.
[[nodiscard]] Document apply_expansions(Document doc, ExpansionSet const& expansions, int repeat = 1);

/// Checks that every doc id referenced by expansions is in known_ids; returns the missing ones.
[[nodiscard]] std::vector<std::string>
missing_expansion_targets(ExpansionSet const& expansions,
                          std::unordered_set<std::string> const& known_ids);

}  // namespace dexp
