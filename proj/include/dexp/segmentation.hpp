#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "dexp/analysis.hpp"
#include "dexp/corpus.hpp"
#include "dexp/index.hpp"

namespace dexp {

/// A run of whole sentences [first_sentence, last_sentence] of one document.
struct PassageWindow {
    std::string doc_id;
    std::size_t window_index = 0;
    std::size_t first_sentence = 0;
    std::size_t last_sentence = 0;
    std::size_t token_count = 0;
    /// Slice of the document text from the first sentence's start to the last sentence's end.
    std::string text;

    friend bool operator==(PassageWindow const&, PassageWindow const&) = default;
};

enum class PassageStrategy { concat, first_k, pi };

[[nodiscard]] PassageStrategy parse_passage_strategy(std::string_view name);
[[nodiscard]] std::string_view to_string(PassageStrategy strategy);

struct SegmentationParams {
    std::size_t target_tokens = 60;
    std::size_t stride_tokens = 30;
    std::size_t k_sentences = 5;

    void validate() const;
};

struct PassageSelection {
    std::string doc_id;
    PassageStrategy strategy = PassageStrategy::concat;
    std::vector<PassageWindow> windows;
};

/// Overlapping sentence-aligned windows. Each window is the shortest run of
/// sentences reaching target_tokens (or the document tail); the next window
/// starts at the first sentence beginning at least stride_tokens tokens after
/// the current window's first token. Stops once a window reaches the last
/// sentence. Empty documents give no windows.
[[nodiscard]] std::vector<PassageWindow> segment_concat(Document const& doc, AnalyzerConfig const& analyzer = {},
                                                        std::size_t target_tokens = 60,
                                                        std::size_t stride_tokens = 30);

/// The first min(k, #sentences) sentences. Throws std::invalid_argument on an empty document.
[[nodiscard]] PassageWindow segment_first_k(Document const& doc, AnalyzerConfig const& analyzer = {},
                                            std::size_t k_sentences = 5);

/// Leading sentences up to the first that brings the count to at least
/// target_tokens (or the whole document). nullopt for an empty document.
[[nodiscard]] std::optional<PassageWindow> segment_head(Document const& doc, AnalyzerConfig const& analyzer = {},
                                                        std::size_t target_tokens = 60);

/// Inverse document frequencies ln(1 + N / df), from an index or from counts
/// collected over a corpus. Terms never seen are treated as df = 1.
class IdfTable {
  public:
    explicit IdfTable(InvertedIndex const& index);
    IdfTable(std::size_t num_docs, std::unordered_map<std::string, std::uint32_t> document_frequencies);

    /// Counts document frequencies while streaming a corpus.
    [[nodiscard]] static IdfTable from_corpus(CorpusReader& reader, AnalyzerConfig const& analyzer);

    [[nodiscard]] double idf(std::string const& term) const;
    [[nodiscard]] std::size_t num_docs() const { return m_num_docs; }

  private:
    InvertedIndex const* m_index = nullptr;
    std::size_t m_num_docs = 0;
    std::unordered_map<std::string, std::uint32_t> m_df;
};

/// Cosine similarity of the tf-idf vectors of window and whole document, in [0, 1].
/// A window with no tokens scores 0.
[[nodiscard]] double homogeneity_score(PassageWindow const& window, Document const& doc, IdfTable const& idf,
                                       AnalyzerConfig const& analyzer = {});

/// The CONCAT window most similar to the whole document; earliest wins ties.
/// Throws std::invalid_argument on an empty document.
[[nodiscard]] PassageWindow select_passage_pi(Document const& doc, IdfTable const& idf,
                                              AnalyzerConfig const& analyzer = {}, std::size_t target_tokens = 60,
                                              std::size_t stride_tokens = 30);

/// Applies a strategy to one document. Documents with fewer than
/// target_tokens tokens come back as a single window holding the whole text,
/// whatever the strategy. idf is required for PassageStrategy::pi.
[[nodiscard]] PassageSelection select_passages(Document const& doc, PassageStrategy strategy,
                                               SegmentationParams const& params, AnalyzerConfig const& analyzer = {},
                                               IdfTable const* idf = nullptr);

/// Index of the first CONCAT window whose token sequence contains the analyzed
/// passage contiguously; nullopt when absent or when the passage has no tokens.
[[nodiscard]] std::optional<std::size_t> passage_position(Document const& doc, std::string_view passage_text,
                                                          AnalyzerConfig const& analyzer = {},
                                                          std::size_t target_tokens = 60,
                                                          std::size_t stride_tokens = 30);

/// Passage id used on the wire: "<doc_id>#<window_index>".
[[nodiscard]] std::string passage_id(std::string_view doc_id, std::size_t window_index);

/// Splits a passage id at its last '#'. Throws FormatError when malformed.
[[nodiscard]] std::pair<std::string, std::size_t> parse_passage_id(std::string_view id);

}  // namespace dexp
