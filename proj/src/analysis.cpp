#include "dexp/analysis.hpp"

#include <fstream>
#include <stdexcept>

#include <unicode/uchar.h>
#include <unicode/utf8.h>

namespace dexp {

namespace {

bool is_ascii_space(char c) {
    return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' || c == '\v';
}

bool is_terminator(char c) { return c == '.' || c == '!' || c == '?'; }

void append_utf8(std::string& out, UChar32 cp) {
    char buf[U8_MAX_LENGTH];
    std::int32_t len = 0;
    U8_APPEND_UNSAFE(buf, len, cp);
    out.append(buf, static_cast<std::size_t>(len));
}

/// Calls emit(term) for every token of text, before stopword filtering.
template <typename Emit>
void for_each_term(std::string_view text, Emit&& emit) {
    auto const* bytes = reinterpret_cast<std::uint8_t const*>(text.data());
    auto const length = static_cast<std::int32_t>(text.size());
    std::string current;
    std::int32_t i = 0;
    while (i < length) {
        UChar32 cp = 0;
        if (bytes[i] < 0x80) {
            cp = bytes[i++];
        } else {
            U8_NEXT(bytes, i, length, cp);
        }
        if (cp >= 0 && u_isalnum(cp)) {
            if (cp < 0x80) {
                current.push_back(static_cast<char>(cp >= 'A' && cp <= 'Z' ? cp + ('a' - 'A') : cp));
            } else {
                append_utf8(current, u_tolower(cp));
            }
        } else if (!current.empty()) {
            emit(std::move(current));
            current.clear();
        }
    }
    if (!current.empty()) {
        emit(std::move(current));
    }
}

std::size_t count_terms(std::string_view text, AnalyzerConfig const& config) {
    std::size_t n = 0;
    for_each_term(text, [&](std::string&& term) {
        if (!config.is_stopword(term)) {
            ++n;
        }
    });
    return n;
}

/// Byte ranges of raw sentence fragments, before token-less fragments are merged.
std::vector<std::pair<std::size_t, std::size_t>> raw_fragments(std::string_view text) {
    std::vector<std::pair<std::size_t, std::size_t>> out;
    std::size_t start = 0;
    std::size_t i = 0;
    while (i < text.size()) {
        char c = text[i];
        if (is_terminator(c) && i + 1 < text.size() && is_ascii_space(text[i + 1])) {
            out.emplace_back(start, i + 1);
            start = i + 1;
            ++i;
            continue;
        }
        if (c == '\n') {
            // blank line: newline, optional horizontal whitespace, newline
            std::size_t j = i + 1;
            while (j < text.size() && is_ascii_space(text[j]) && text[j] != '\n') {
                ++j;
            }
            if (j < text.size() && text[j] == '\n') {
                out.emplace_back(start, i);
                start = i;
                i = j;
                continue;
            }
        }
        ++i;
    }
    out.emplace_back(start, text.size());
    return out;
}

std::pair<std::size_t, std::size_t> trim(std::string_view text, std::size_t begin, std::size_t end) {
    while (begin < end && is_ascii_space(text[begin])) {
        ++begin;
    }
    while (end > begin && is_ascii_space(text[end - 1])) {
        --end;
    }
    return {begin, end};
}

}  // namespace

std::vector<Token> analyze(std::string_view text, AnalyzerConfig const& config) {
    std::vector<Token> tokens;
    for_each_term(text, [&](std::string&& term) {
        if (!config.is_stopword(term)) {
            auto pos = static_cast<std::uint32_t>(tokens.size());
            tokens.push_back(Token{std::move(term), pos});
        }
    });
    return tokens;
}

std::vector<std::string> analyze_terms(std::string_view text, AnalyzerConfig const& config) {
    std::vector<std::string> terms;
    for_each_term(text, [&](std::string&& term) {
        if (!config.is_stopword(term)) {
            terms.push_back(std::move(term));
        }
    });
    return terms;
}

std::vector<Sentence> split_sentences(std::string_view text, AnalyzerConfig const& config) {
    std::vector<Sentence> sentences;
    std::size_t token_cursor = 0;
    constexpr auto none = std::string_view::npos;
    std::size_t pending_begin = none;  // leading token-less fragments
    for (auto [begin, end] : raw_fragments(text)) {
        std::size_t n = count_terms(text.substr(begin, end - begin), config);
        if (n == 0) {
            if (sentences.empty()) {
                if (pending_begin == none) {
                    pending_begin = begin;
                }
            } else {
                sentences.back().char_end = end;
            }
            continue;
        }
        Sentence s;
        s.char_begin = pending_begin == none ? begin : pending_begin;
        s.char_end = end;
        s.tokens = TokenSpan{token_cursor, token_cursor + n};
        token_cursor += n;
        pending_begin = none;
        sentences.push_back(std::move(s));
    }
    for (auto& s : sentences) {
        auto [b, e] = trim(text, s.char_begin, s.char_end);
        s.char_begin = b;
        s.char_end = e;
        s.text = std::string(text.substr(b, e - b));
    }
    return sentences;
}

std::set<std::string, std::less<>> load_stopwords(std::string const& path) {
    std::ifstream in(path);
    if (!in) {
        throw std::runtime_error("cannot open stopword file: " + path);
    }
    std::set<std::string, std::less<>> words;
    std::string line;
    while (std::getline(in, line)) {
        auto [b, e] = trim(line, 0, line.size());
        if (b == e || line[b] == '#') {
            continue;
        }
        for (auto& term : analyze_terms(std::string_view(line).substr(b, e - b))) {
            words.insert(std::move(term));
        }
    }
    return words;
}

}  // namespace dexp
