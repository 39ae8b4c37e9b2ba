#include "dexp/eval.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <unordered_map>

#include <fmt/format.h>
#include <json.hpp>

#include "dexp/error.hpp"

namespace dexp {

namespace {

std::vector<std::string> split_ws(std::string const& line) {
    std::vector<std::string> fields;
    std::istringstream ss(line);
    std::string f;
    while (ss >> f) {
        fields.push_back(std::move(f));
    }
    return fields;
}

template <typename T>
bool parse_number(std::string const& s, T& out) {
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
    return ec == std::errc{} && ptr == s.data() + s.size();
}

std::size_t hits_in_top(std::span<ScoredDoc const> ranking, RelevantSet const& relevant, std::size_t k) {
    std::size_t hits = 0;
    auto n = std::min(k, ranking.size());
    for (std::size_t i = 0; i < n; ++i) {
        hits += relevant.contains(ranking[i].doc_id) ? 1 : 0;
    }
    return hits;
}

std::ifstream open(std::string const& path) {
    std::ifstream in(path);
    if (!in) {
        throw std::runtime_error("cannot open file: " + path);
    }
    return in;
}

}  // namespace

std::unordered_set<std::string> Qrels::relevant(std::string const& query_id) const {
    std::unordered_set<std::string> rel;
    if (auto it = judgments.find(query_id); it != judgments.end()) {
        for (auto const& [doc, grade] : it->second) {
            if (grade > 0) {
                rel.insert(doc);
            }
        }
    }
    return rel;
}

Qrels parse_qrels(std::istream& in) {
    Qrels qrels;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        auto f = split_ws(line);
        if (f.empty()) {
            continue;
        }
        int grade = 0;
        if (f.size() != 4 || !parse_number(f[3], grade)) {
            throw FormatError(fmt::format("qrels line {}: expected \"qid iter docid grade\"", line_no), line_no);
        }
        if (grade < 0) {
            throw FormatError(fmt::format("qrels line {}: negative grade {}", line_no, grade), line_no);
        }
        qrels.judgments[f[0]][f[2]] = grade;
    }
    return qrels;
}

Qrels load_qrels(std::string const& path) {
    auto in = open(path);
    return parse_qrels(in);
}

RunRanking parse_run(std::istream& in) {
    struct Row {
        std::size_t rank;
        ScoredDoc doc;
    };
    std::vector<std::string> order;
    std::unordered_map<std::string, std::vector<Row>> rows;
    std::unordered_map<std::string, std::unordered_set<std::string>> seen;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        auto f = split_ws(line);
        if (f.empty()) {
            continue;
        }
        Row row{};
        double score = 0.0;
        if (f.size() != 6 || !parse_number(f[3], row.rank)) {
            throw FormatError(fmt::format("run line {}: expected \"qid Q0 docid rank score tag\"", line_no), line_no);
        }
        try {
            std::size_t used = 0;
            score = std::stod(f[4], &used);
            if (used != f[4].size()) {
                throw std::invalid_argument("trailing characters");
            }
        } catch (std::exception const&) {
            throw FormatError(fmt::format("run line {}: bad score '{}'", line_no, f[4]), line_no);
        }
        if (!seen[f[0]].insert(f[2]).second) {
            throw FormatError(fmt::format("run line {}: document {} repeated for query {}", line_no, f[2], f[0]),
                              line_no);
        }
        auto [it, inserted] = rows.try_emplace(f[0]);
        if (inserted) {
            order.push_back(f[0]);
        }
        row.doc = ScoredDoc{f[2], score};
        it->second.push_back(std::move(row));
    }
    RunRanking run;
    for (auto const& qid : order) {
        auto& list = rows[qid];
        std::stable_sort(list.begin(), list.end(), [](Row const& a, Row const& b) { return a.rank < b.rank; });
        QueryRun q{qid, {}};
        for (auto& r : list) {
            q.docs.push_back(std::move(r.doc));
        }
        run.queries.push_back(std::move(q));
    }
    return run;
}

RunRanking load_run(std::string const& path) {
    auto in = open(path);
    return parse_run(in);
}

std::optional<double> average_precision(std::span<ScoredDoc const> ranking, RelevantSet const& relevant,
                                        std::size_t cutoff) {
    if (relevant.empty()) {
        return std::nullopt;
    }
    double sum = 0.0;
    std::size_t hits = 0;
    auto n = std::min(cutoff, ranking.size());
    for (std::size_t i = 0; i < n; ++i) {
        if (relevant.contains(ranking[i].doc_id)) {
            ++hits;
            sum += static_cast<double>(hits) / static_cast<double>(i + 1);
        }
    }
    return sum / static_cast<double>(relevant.size());
}

double precision_at_k(std::span<ScoredDoc const> ranking, RelevantSet const& relevant, std::size_t k) {
    if (k == 0) {
        throw std::invalid_argument("k must be >= 1");
    }
    return static_cast<double>(hits_in_top(ranking, relevant, k)) / static_cast<double>(k);
}

std::optional<double> recall_at_k(std::span<ScoredDoc const> ranking, RelevantSet const& relevant, std::size_t k) {
    if (k == 0) {
        throw std::invalid_argument("k must be >= 1");
    }
    if (relevant.empty()) {
        return std::nullopt;
    }
    return static_cast<double>(hits_in_top(ranking, relevant, k)) / static_cast<double>(relevant.size());
}

MetricReport evaluate(RunRanking const& run, Qrels const& qrels, std::size_t map_cutoff) {
    std::unordered_map<std::string, QueryRun const*> by_id;
    for (auto const& q : run.queries) {
        by_id.emplace(q.query_id, &q);
    }
    MetricReport report;
    report.query_count = run.queries.size();
    report.mean.query_id = "all";
    std::vector<ScoredDoc> const none;
    for (auto const& [qid, judged] : qrels.judgments) {
        auto relevant = qrels.relevant(qid);
        if (relevant.empty()) {
            continue;
        }
        auto it = by_id.find(qid);
        std::span<ScoredDoc const> ranking = it == by_id.end() ? std::span<ScoredDoc const>(none)
                                                               : std::span<ScoredDoc const>(it->second->docs);
        QueryMetrics m;
        m.query_id = qid;
        m.ap = *average_precision(ranking, relevant, map_cutoff);
        m.recall_100 = *recall_at_k(ranking, relevant, 100);
        m.recall_10 = *recall_at_k(ranking, relevant, 10);
        m.precision_10 = precision_at_k(ranking, relevant, 10);
        m.precision_5 = precision_at_k(ranking, relevant, 5);
        m.num_relevant = relevant.size();
        m.num_retrieved = ranking.size();
        m.relevant_retrieved = hits_in_top(ranking, relevant, ranking.size());
        report.per_query.push_back(std::move(m));
    }
    report.judged_query_count = report.per_query.size();
    if (!report.per_query.empty()) {
        auto& mean = report.mean;
        for (auto const& m : report.per_query) {
            mean.ap += m.ap;
            mean.recall_100 += m.recall_100;
            mean.recall_10 += m.recall_10;
            mean.precision_10 += m.precision_10;
            mean.precision_5 += m.precision_5;
            mean.num_relevant += m.num_relevant;
            mean.num_retrieved += m.num_retrieved;
            mean.relevant_retrieved += m.relevant_retrieved;
        }
        auto n = static_cast<double>(report.per_query.size());
        mean.ap /= n;
        mean.recall_100 /= n;
        mean.recall_10 /= n;
        mean.precision_10 /= n;
        mean.precision_5 /= n;
    }
    return report;
}

void write_report_table(std::ostream& out, MetricReport const& report) {
    auto row = [&](QueryMetrics const& m) {
        out << fmt::format("{:<12} {:>8.4f} {:>8.4f} {:>8.4f} {:>8.4f} {:>8.4f} {:>7} {:>7}\n", m.query_id, m.ap,
                           m.recall_100, m.recall_10, m.precision_10, m.precision_5, m.num_relevant,
                           m.relevant_retrieved);
    };
    out << fmt::format("{:<12} {:>8} {:>8} {:>8} {:>8} {:>8} {:>7} {:>7}\n", "query", "MAP", "R@100", "R@10",
                       "P@10", "P@5", "rel", "relret");
    for (auto const& m : report.per_query) {
        row(m);
    }
    row(report.mean);
    out << fmt::format("queries in run: {}, judged queries: {}\n", report.query_count, report.judged_query_count);
}

void write_report_jsonl(std::ostream& out, MetricReport const& report) {
    auto emit = [&](QueryMetrics const& m) {
        nlohmann::ordered_json obj;
        obj["qid"] = m.query_id;
        obj["map"] = m.ap;
        obj["recall_100"] = m.recall_100;
        obj["recall_10"] = m.recall_10;
        obj["p_10"] = m.precision_10;
        obj["p_5"] = m.precision_5;
        obj["num_rel"] = m.num_relevant;
        obj["num_ret"] = m.num_retrieved;
        obj["num_rel_ret"] = m.relevant_retrieved;
        out << obj.dump() << '\n';
    };
    for (auto const& m : report.per_query) {
        emit(m);
    }
    emit(report.mean);
}

}  // namespace dexp
