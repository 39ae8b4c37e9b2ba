#include "dexp/segmentation.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <map>
#include <stdexcept>

#include <fmt/format.h>

#include "dexp/error.hpp"

namespace dexp {

namespace {

PassageWindow make_window(Document const& doc, std::vector<Sentence> const& sentences, std::size_t first,
                          std::size_t last, std::size_t index) {
    PassageWindow w;
    w.doc_id = doc.id;
    w.window_index = index;
    w.first_sentence = first;
    w.last_sentence = last;
    w.token_count = sentences[last].tokens.end - sentences[first].tokens.begin;
    auto begin = sentences[first].char_begin;
    w.text = doc.text.substr(begin, sentences[last].char_end - begin);
    return w;
}

std::vector<PassageWindow> concat_windows(Document const& doc, std::vector<Sentence> const& sentences,
                                          std::size_t target, std::size_t stride) {
    std::vector<PassageWindow> windows;
    std::size_t start = 0;
    while (start < sentences.size()) {
        auto first_token = sentences[start].tokens.begin;
        std::size_t last = start;
        while (last + 1 < sentences.size() && sentences[last].tokens.end - first_token < target) {
            ++last;
        }
        windows.push_back(make_window(doc, sentences, start, last, windows.size()));
        if (last + 1 == sentences.size()) {
            break;
        }
        std::size_t next = start + 1;
        while (sentences[next].tokens.begin < first_token + stride) {
            ++next;
        }
        start = next;
    }
    return windows;
}

void check_window_params(std::size_t target, std::size_t stride) {
    if (target < 1) {
        throw std::invalid_argument("target_tokens must be >= 1");
    }
    if (stride < 1 || stride > target) {
        throw std::invalid_argument(
            fmt::format("stride_tokens must be in [1, target_tokens] (got {}, target {})", stride, target));
    }
}

std::map<std::string, double> tfidf(std::vector<std::string> const& terms, IdfTable const& idf) {
    std::map<std::string, double> v;
    for (auto const& t : terms) {
        v[t] += 1.0;
    }
    for (auto& [t, w] : v) {
        w *= idf.idf(t);
    }
    return v;
}

}  // namespace

PassageStrategy parse_passage_strategy(std::string_view name) {
    if (name == "concat") {
        return PassageStrategy::concat;
    }
    if (name == "first-k" || name == "first_k") {
        return PassageStrategy::first_k;
    }
    if (name == "pi") {
        return PassageStrategy::pi;
    }
    throw std::invalid_argument(fmt::format("unknown strategy '{}' (expected concat, first-k or pi)", name));
}

std::string_view to_string(PassageStrategy strategy) {
    switch (strategy) {
    case PassageStrategy::concat: return "concat";
    case PassageStrategy::first_k: return "first-k";
    case PassageStrategy::pi: return "pi";
    }
    return "?";
}

void SegmentationParams::validate() const {
    check_window_params(target_tokens, stride_tokens);
    if (k_sentences < 1) {
        throw std::invalid_argument("k_sentences must be >= 1");
    }
}

std::vector<PassageWindow> segment_concat(Document const& doc, AnalyzerConfig const& analyzer,
                                          std::size_t target_tokens, std::size_t stride_tokens) {
    check_window_params(target_tokens, stride_tokens);
    auto sentences = split_sentences(doc.text, analyzer);
    return concat_windows(doc, sentences, target_tokens, stride_tokens);
}

PassageWindow segment_first_k(Document const& doc, AnalyzerConfig const& analyzer, std::size_t k_sentences) {
    if (k_sentences < 1) {
        throw std::invalid_argument("k_sentences must be >= 1");
    }
    auto sentences = split_sentences(doc.text, analyzer);
    if (sentences.empty()) {
        throw std::invalid_argument("document " + doc.id + " has no tokens to expand");
    }
    auto last = std::min(k_sentences, sentences.size()) - 1;
    return make_window(doc, sentences, 0, last, 0);
}

std::optional<PassageWindow> segment_head(Document const& doc, AnalyzerConfig const& analyzer,
                                          std::size_t target_tokens) {
    auto sentences = split_sentences(doc.text, analyzer);
    if (sentences.empty()) {
        return std::nullopt;
    }
    std::size_t last = 0;
    while (last + 1 < sentences.size() && sentences[last].tokens.end < target_tokens) {
        ++last;
    }
    return make_window(doc, sentences, 0, last, 0);
}

IdfTable::IdfTable(InvertedIndex const& index) : m_index(&index), m_num_docs(index.num_docs()) {}

IdfTable::IdfTable(std::size_t num_docs, std::unordered_map<std::string, std::uint32_t> document_frequencies)
    : m_num_docs(num_docs), m_df(std::move(document_frequencies)) {}

IdfTable IdfTable::from_corpus(CorpusReader& reader, AnalyzerConfig const& analyzer) {
    std::unordered_map<std::string, std::uint32_t> df;
    std::size_t n = 0;
    while (auto doc = reader.next()) {
        ++n;
        auto terms = analyze_terms(doc->text, analyzer);
        std::sort(terms.begin(), terms.end());
        terms.erase(std::unique(terms.begin(), terms.end()), terms.end());
        for (auto& t : terms) {
            ++df[std::move(t)];
        }
    }
    return IdfTable(n, std::move(df));
}

double IdfTable::idf(std::string const& term) const {
    std::uint32_t df = 0;
    if (m_index != nullptr) {
        df = m_index->df(term);
    } else if (auto it = m_df.find(term); it != m_df.end()) {
        df = it->second;
    }
    auto const n = static_cast<double>(std::max<std::size_t>(m_num_docs, 1));
    return std::log(1.0 + n / static_cast<double>(std::max<std::uint32_t>(df, 1)));
}

double homogeneity_score(PassageWindow const& window, Document const& doc, IdfTable const& idf,
                         AnalyzerConfig const& analyzer) {
    auto wv = tfidf(analyze_terms(window.text, analyzer), idf);
    auto dv = tfidf(analyze_terms(doc.text, analyzer), idf);
    double dot = 0.0;
    double wn = 0.0;
    double dn = 0.0;
    for (auto const& [t, w] : wv) {
        wn += w * w;
        if (auto it = dv.find(t); it != dv.end()) {
            dot += w * it->second;
        }
    }
    for (auto const& [t, w] : dv) {
        dn += w * w;
    }
    if (wn == 0.0 || dn == 0.0) {
        return 0.0;
    }
    return std::clamp(dot / (std::sqrt(wn) * std::sqrt(dn)), 0.0, 1.0);
}

PassageWindow select_passage_pi(Document const& doc, IdfTable const& idf, AnalyzerConfig const& analyzer,
                                std::size_t target_tokens, std::size_t stride_tokens) {
    auto windows = segment_concat(doc, analyzer, target_tokens, stride_tokens);
    if (windows.empty()) {
        throw std::invalid_argument("document " + doc.id + " has no tokens to expand");
    }
    std::size_t best = 0;
    double best_score = -1.0;
    for (std::size_t i = 0; i < windows.size(); ++i) {
        double s = homogeneity_score(windows[i], doc, idf, analyzer);
        if (s > best_score) {
            best = i;
            best_score = s;
        }
    }
    return std::move(windows[best]);
}

PassageSelection select_passages(Document const& doc, PassageStrategy strategy, SegmentationParams const& params,
                                 AnalyzerConfig const& analyzer, IdfTable const* idf) {
    params.validate();
    PassageSelection sel;
    sel.doc_id = doc.id;
    sel.strategy = strategy;
    auto sentences = split_sentences(doc.text, analyzer);
    if (sentences.empty()) {
        if (strategy == PassageStrategy::concat) {
            return sel;
        }
        throw std::invalid_argument("document " + doc.id + " has no tokens to expand");
    }
    if (sentences.back().tokens.end < params.target_tokens) {
        sel.windows.push_back(make_window(doc, sentences, 0, sentences.size() - 1, 0));
        return sel;
    }
    switch (strategy) {
    case PassageStrategy::concat:
        sel.windows = concat_windows(doc, sentences, params.target_tokens, params.stride_tokens);
        break;
    case PassageStrategy::first_k:
        sel.windows.push_back(make_window(doc, sentences, 0, std::min(params.k_sentences, sentences.size()) - 1, 0));
        break;
    case PassageStrategy::pi:
        if (idf == nullptr) {
            throw std::invalid_argument("the pi strategy needs corpus statistics");
        }
        sel.windows.push_back(select_passage_pi(doc, *idf, analyzer, params.target_tokens, params.stride_tokens));
        break;
    }
    return sel;
}

std::optional<std::size_t> passage_position(Document const& doc, std::string_view passage_text,
                                            AnalyzerConfig const& analyzer, std::size_t target_tokens,
                                            std::size_t stride_tokens) {
    auto needle = analyze_terms(passage_text, analyzer);
    if (needle.empty()) {
        return std::nullopt;
    }
    auto sentences = split_sentences(doc.text, analyzer);
    auto windows = concat_windows(doc, sentences, target_tokens, stride_tokens);
    auto tokens = analyze_terms(doc.text, analyzer);
    for (auto const& w : windows) {
        auto begin = tokens.begin() + static_cast<std::ptrdiff_t>(sentences[w.first_sentence].tokens.begin);
        auto end = tokens.begin() + static_cast<std::ptrdiff_t>(sentences[w.last_sentence].tokens.end);
        if (std::search(begin, end, needle.begin(), needle.end()) != end) {
            return w.window_index;
        }
    }
    return std::nullopt;
}

std::string passage_id(std::string_view doc_id, std::size_t window_index) {
    return fmt::format("{}#{}", doc_id, window_index);
}

std::pair<std::string, std::size_t> parse_passage_id(std::string_view id) {
    auto hash = id.rfind('#');
    if (hash == std::string_view::npos || hash == 0 || hash + 1 == id.size()) {
        throw FormatError(fmt::format("malformed passage id '{}' (expected <doc_id>#<window_index>)", id));
    }
    std::size_t index = 0;
    auto digits = id.substr(hash + 1);
    auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), index);
    if (ec != std::errc{} || ptr != digits.data() + digits.size()) {
        throw FormatError(fmt::format("malformed passage id '{}' (window index is not a number)", id));
    }
    return {std::string(id.substr(0, hash)), index};
}

}  // namespace dexp
