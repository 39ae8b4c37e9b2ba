#include "dexp/corpus.hpp"

#include <fstream>
#include <stdexcept>

#include <fmt/format.h>
#include <json.hpp>

#include "dexp/error.hpp"

namespace dexp {

using nlohmann::json;

namespace {

std::string_view trim(std::string_view s) {
    auto const ws = " \t\r\n\f\v";
    auto b = s.find_first_not_of(ws);
    if (b == std::string_view::npos) {
        return {};
    }
    auto e = s.find_last_not_of(ws);
    return s.substr(b, e - b + 1);
}

std::unique_ptr<std::istream> open_file(std::string const& path) {
    auto in = std::make_unique<std::ifstream>(path, std::ios::binary);
    if (!*in) {
        throw std::runtime_error("cannot open file: " + path);
    }
    return in;
}

std::string required_string(json const& obj, char const* field, std::size_t line) {
    auto it = obj.find(field);
    if (it == obj.end()) {
        throw FormatError(fmt::format("line {}: missing field \"{}\"", line, field), line);
    }
    if (!it->is_string()) {
        throw FormatError(fmt::format("line {}: field \"{}\" is not a string", line, field), line);
    }
    return it->get<std::string>();
}

}  // namespace

CorpusFormat parse_corpus_format(std::string_view name) {
    if (name == "jsonl") {
        return CorpusFormat::jsonl;
    }
    if (name == "trecweb") {
        return CorpusFormat::trecweb;
    }
    throw std::invalid_argument(fmt::format("unknown corpus format '{}' (expected jsonl or trecweb)", name));
}

CorpusReader::CorpusReader(std::string const& path, CorpusFormat format)
    : CorpusReader(open_file(path), format) {}

CorpusReader::CorpusReader(std::unique_ptr<std::istream> in, CorpusFormat format)
    : m_in(std::move(in)), m_format(format) {}

bool CorpusReader::read_line(std::string& line) {
    if (!std::getline(*m_in, line)) {
        return false;
    }
    ++m_line;
    m_bytes += line.size() + 1;
    if (!line.empty() && line.back() == '\r') {
        line.pop_back();
    }
    return true;
}

void CorpusReader::check_unique(std::string const& id) {
    if (!m_seen.insert(id).second) {
        throw FormatError(
            fmt::format("line {} (document {}): duplicate document id '{}'", m_line, m_ordinal, id),
            m_line, m_ordinal);
    }
}

std::optional<Document> CorpusReader::next() {
    return m_format == CorpusFormat::jsonl ? next_jsonl() : next_trecweb();
}

std::optional<Document> CorpusReader::next_jsonl() {
    std::string line;
    while (read_line(line)) {
        if (trim(line).empty()) {
            continue;
        }
        ++m_ordinal;
        json obj;
        try {
            obj = json::parse(line);
        } catch (json::parse_error const& e) {
            throw FormatError(fmt::format("line {} (document {}): malformed json: {}", m_line,
                                          m_ordinal, e.what()),
                              m_line, m_ordinal);
        }
        if (!obj.is_object()) {
            throw FormatError(
                fmt::format("line {} (document {}): expected a json object", m_line, m_ordinal),
                m_line, m_ordinal);
        }
        Document doc;
        try {
            doc.id = required_string(obj, "id", m_line);
            doc.text = required_string(obj, "contents", m_line);
        } catch (FormatError const& e) {
            throw FormatError(fmt::format("{} (document {})", e.what(), m_ordinal), m_line, m_ordinal);
        }
        if (doc.id.empty()) {
            throw FormatError(fmt::format("line {} (document {}): empty id", m_line, m_ordinal),
                              m_line, m_ordinal);
        }
        check_unique(doc.id);
        return doc;
    }
    return std::nullopt;
}

std::optional<Document> CorpusReader::next_trecweb() {
    std::string line;
    std::string record;
    std::size_t start_line = 0;
    bool inside = false;
    while (read_line(line)) {
        auto t = trim(line);
        if (!inside) {
            if (t.empty()) {
                continue;
            }
            if (!t.starts_with("<DOC>")) {
                throw FormatError(fmt::format("line {} (document {}): expected <DOC>", m_line,
                                              m_ordinal + 1),
                                  m_line, m_ordinal + 1);
            }
            inside = true;
            start_line = m_line;
            ++m_ordinal;
            record.append(t.substr(5));
            record.push_back('\n');
        } else {
            record.append(line);
            record.push_back('\n');
        }
        auto close = record.find("</DOC>");
        if (close == std::string::npos) {
            continue;
        }
        std::string_view body(record.data(), close);
        auto fail = [&](std::string const& what) {
            return FormatError(
                fmt::format("line {} (document {}): {}", start_line, m_ordinal, what), start_line,
                m_ordinal);
        };
        auto no_open = body.find("<DOCNO>");
        auto no_close = body.find("</DOCNO>");
        if (no_open == std::string_view::npos || no_close == std::string_view::npos ||
            no_close < no_open) {
            throw fail("missing <DOCNO>");
        }
        Document doc;
        doc.id = std::string(trim(body.substr(no_open + 7, no_close - no_open - 7)));
        if (doc.id.empty()) {
            throw fail("empty <DOCNO>");
        }
        auto rest = body.substr(no_close + 8);
        std::size_t pos = 0;
        bool found_text = false;
        while (true) {
            auto open = rest.find("<TEXT>", pos);
            if (open == std::string_view::npos) {
                break;
            }
            auto end = rest.find("</TEXT>", open);
            if (end == std::string_view::npos) {
                throw fail("unterminated <TEXT>");
            }
            if (found_text) {
                doc.text.push_back('\n');
            }
            doc.text.append(trim(rest.substr(open + 6, end - open - 6)));
            found_text = true;
            pos = end + 7;
        }
        if (!found_text) {
            doc.text = std::string(trim(rest));
        }
        check_unique(doc.id);
        return doc;
    }
    if (inside) {
        throw FormatError(fmt::format("line {} (document {}): unterminated <DOC>", start_line,
                                      m_ordinal),
                          start_line, m_ordinal);
    }
    return std::nullopt;
}

std::vector<Document> load_corpus(std::string const& path, CorpusFormat format) {
    CorpusReader reader(path, format);
    std::vector<Document> docs;
    while (auto doc = reader.next()) {
        docs.push_back(std::move(*doc));
    }
    return docs;
}

std::vector<QueryRecord> parse_queries(std::istream& in) {
    std::vector<QueryRecord> queries;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') {
            line.pop_back();
        }
        if (trim(line).empty()) {
            continue;
        }
        auto tab = line.find('\t');
        if (tab == std::string::npos) {
            throw FormatError(fmt::format("line {}: expected \"qid<TAB>query\"", line_no), line_no);
        }
        QueryRecord q{std::string(trim(std::string_view(line).substr(0, tab))), line.substr(tab + 1)};
        if (q.id.empty()) {
            throw FormatError(fmt::format("line {}: empty query id", line_no), line_no);
        }
        queries.push_back(std::move(q));
    }
    return queries;
}

std::vector<QueryRecord> load_queries(std::string const& path) {
    auto in = open_file(path);
    return parse_queries(*in);
}

void ExpansionSet::add(std::string const& doc_id, std::vector<std::string> expansions) {
    if (doc_id.empty()) {
        throw std::invalid_argument("expansion doc id must be non-empty");
    }
    for (auto const& e : expansions) {
        if (e.empty()) {
            throw std::invalid_argument("empty expansion string for document " + doc_id);
        }
    }
    auto [it, inserted] = m_lookup.try_emplace(doc_id, m_entries.size());
    if (inserted) {
        m_entries.emplace_back(doc_id, std::move(expansions));
        return;
    }
    auto& list = m_entries[it->second].second;
    list.insert(list.end(), std::make_move_iterator(expansions.begin()),
                std::make_move_iterator(expansions.end()));
}

std::vector<std::string> const* ExpansionSet::find(std::string_view doc_id) const {
    auto it = m_lookup.find(std::string(doc_id));
    return it == m_lookup.end() ? nullptr : &m_entries[it->second].second;
}

ExpansionSet parse_expansions(std::istream& in) {
    ExpansionSet set;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (trim(line).empty()) {
            continue;
        }
        json obj;
        try {
            obj = json::parse(line);
        } catch (json::parse_error const& e) {
            throw FormatError(fmt::format("line {}: malformed json: {}", line_no, e.what()), line_no);
        }
        if (!obj.is_object()) {
            throw FormatError(fmt::format("line {}: expected a json object", line_no), line_no);
        }
        auto id = required_string(obj, "id", line_no);
        auto it = obj.find("predicted_queries");
        if (it == obj.end()) {
            throw FormatError(fmt::format("line {}: missing field \"predicted_queries\"", line_no),
                              line_no);
        }
        if (!it->is_array()) {
            throw FormatError(
                fmt::format("line {}: field \"predicted_queries\" is not an array", line_no), line_no);
        }
        std::vector<std::string> expansions;
        for (auto const& q : *it) {
            if (!q.is_string() || q.get_ref<std::string const&>().empty()) {
                throw FormatError(
                    fmt::format("line {}: \"predicted_queries\" must hold non-empty strings", line_no),
                    line_no);
            }
            expansions.push_back(q.get<std::string>());
        }
        if (id.empty()) {
            throw FormatError(fmt::format("line {}: empty id", line_no), line_no);
        }
        set.add(id, std::move(expansions));
    }
    return set;
}

ExpansionSet load_expansions(std::string const& path) {
    auto in = open_file(path);
    return parse_expansions(*in);
}

void write_expansions(std::ostream& out, ExpansionSet const& expansions) {
    for (auto const& [id, list] : expansions) {
        json obj = {{"id", id}, {"predicted_queries", list}};
        out << obj.dump() << '\n';
    }
}

Document apply_expansions(Document doc, ExpansionSet const& expansions, int repeat) {
    if (repeat < 1) {
        throw std::invalid_argument("repeat must be >= 1");
    }
    auto const* list = expansions.find(doc.id);
    if (list == nullptr || list->empty()) {
        return doc;
    }
    for (auto const& e : *list) {
        for (int r = 0; r < repeat; ++r) {
            doc.text.push_back(' ');
            doc.text.append(e);
        }
    }
    return doc;
}

std::vector<std::string> missing_expansion_targets(ExpansionSet const& expansions,
                                                   std::unordered_set<std::string> const& known_ids) {
    std::vector<std::string> missing;
    for (auto const& [id, list] : expansions) {
        if (!known_ids.contains(id)) {
            missing.push_back(id);
        }
    }
    return missing;
}

}  // namespace dexp
