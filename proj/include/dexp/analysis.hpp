#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace dexp {

/// Settings for the tokenizer shared by indexing, querying, and segmentation.
struct AnalyzerConfig {
    /// Terms (already lowercased) dropped from the token stream. Empty by default.
    std::set<std::string, std::less<>> stopwords;

    [[nodiscard]] bool is_stopword(std::string_view term) const {
        return !stopwords.empty() && stopwords.find(term) != stopwords.end();
    }

    friend bool operator==(AnalyzerConfig const&, AnalyzerConfig const&) = default;
};

struct Token {
    std::string term;
    std::uint32_t position = 0;

    friend bool operator==(Token const&, Token const&) = default;
};

/// Half-open range [begin, end) over a token stream.
struct TokenSpan {
    std::size_t begin = 0;
    std::size_t end = 0;

    [[nodiscard]] std::size_t size() const { return end - begin; }
    friend bool operator==(TokenSpan const&, TokenSpan const&) = default;
};

struct Sentence {
    std::string text;
    TokenSpan tokens;
    /// Byte range of the sentence in the source text.
    std::size_t char_begin = 0;
    std::size_t char_end = 0;
};

/// Lowercases and splits on every code point that is not a letter or digit.
/// Invalid UTF-8 bytes act as separators. Positions are 0-based and gapless
/// after stopword removal.
[[nodiscard]] std::vector<Token> analyze(std::string_view text, AnalyzerConfig const& config = {});

/// Same as analyze() without positions.
[[nodiscard]] std::vector<std::string> analyze_terms(std::string_view text,
                                                     AnalyzerConfig const& config = {});

/// Rule-based sentence splitter. A sentence ends after '.', '!' or '?' when
/// followed by whitespace, and at a blank line. Fragments without any token
/// are folded into a neighbouring sentence so that sentence token spans tile
/// the analyze() stream exactly. Text with no tokens yields no sentences.
[[nodiscard]] std::vector<Sentence> split_sentences(std::string_view text,
                                                    AnalyzerConfig const& config = {});

/// Reads one stopword per line; blank lines and lines starting with '#' are skipped.
[[nodiscard]] std::set<std::string, std::less<>> load_stopwords(std::string const& path);

}  // namespace dexp
