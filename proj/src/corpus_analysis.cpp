#include "dexp/corpus_analysis.hpp"

#include <fstream>
#include <map>
#include <stdexcept>

#include <fmt/format.h>
#include <json.hpp>

#include "dexp/error.hpp"
#include "dexp/segmentation.hpp"

namespace dexp {

namespace {

Histogram to_histogram(std::map<std::size_t, std::size_t> const& counts) {
    return Histogram(counts.begin(), counts.end());
}

}  // namespace

Histogram length_histogram(std::span<std::size_t const> lengths, std::size_t bucket_width) {
    if (bucket_width < 1) {
        throw std::invalid_argument("bucket width must be >= 1");
    }
    std::map<std::size_t, std::size_t> counts;
    for (auto len : lengths) {
        ++counts[len / bucket_width];
    }
    return to_histogram(counts);
}

Histogram doc_length_histogram(CorpusReader& reader, AnalyzerConfig const& analyzer, std::size_t bucket_width) {
    if (bucket_width < 1) {
        throw std::invalid_argument("bucket width must be >= 1");
    }
    std::map<std::size_t, std::size_t> counts;
    while (auto doc = reader.next()) {
        ++counts[analyze_terms(doc->text, analyzer).size() / bucket_width];
    }
    return to_histogram(counts);
}

PassageDistribution relevant_passage_distribution(DocumentStore const& docs, std::span<PassageRecord const> records,
                                                  AnalyzerConfig const& analyzer, std::size_t target_tokens,
                                                  std::size_t stride_tokens) {
    PassageDistribution dist;
    std::map<std::size_t, std::size_t> counts;
    for (auto const& r : records) {
        auto const* doc = docs.find(r.doc_id);
        if (doc == nullptr) {
            ++dist.missing_documents;
            ++dist.not_found;
            continue;
        }
        if (auto pos = passage_position(*doc, r.passage_text, analyzer, target_tokens, stride_tokens)) {
            ++counts[*pos];
        } else {
            ++dist.not_found;
        }
    }
    dist.windows = to_histogram(counts);
    return dist;
}

std::vector<PassageRecord> load_passage_records(std::string const& path) {
    std::ifstream in(path);
    if (!in) {
        throw std::runtime_error("cannot open file: " + path);
    }
    std::vector<PassageRecord> records;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.find_first_not_of(" \t\r") == std::string::npos) {
            continue;
        }
        try {
            auto obj = nlohmann::json::parse(line);
            records.push_back(PassageRecord{obj.at("doc_id").get<std::string>(), obj.at("passage").get<std::string>()});
        } catch (nlohmann::json::exception const& e) {
            throw FormatError(fmt::format("line {}: {}", line_no, e.what()), line_no);
        }
    }
    return records;
}

}  // namespace dexp
