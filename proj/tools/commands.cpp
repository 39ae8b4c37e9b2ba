#include "commands.hpp"

#include <fstream>
#include <iostream>
#include <map>
#include <memory>
#include <stdexcept>
#include <unordered_set>

#include <fmt/format.h>
#include <json.hpp>

#include "dexp/corpus.hpp"
#include "dexp/corpus_analysis.hpp"
#include "dexp/error.hpp"
#include "dexp/eval.hpp"
#include "dexp/index.hpp"
#include "dexp/search.hpp"
#include "dexp/weak_supervision.hpp"

namespace dexp::cli {

namespace {

/// A file, or stdout for "-".
class Output {
  public:
    explicit Output(std::string const& path) {
        if (path == "-") {
            m_out = &std::cout;
            return;
        }
        m_file = std::make_unique<std::ofstream>(path, std::ios::binary | std::ios::trunc);
        if (!*m_file) {
            throw std::runtime_error("cannot open for writing: " + path);
        }
        m_out = m_file.get();
    }

    std::ostream& stream() { return *m_out; }

    void close() {
        m_out->flush();
        if (!*m_out) {
            throw std::runtime_error("write failed");
        }
    }

  private:
    std::unique_ptr<std::ofstream> m_file;
    std::ostream* m_out = nullptr;
};

void warn(std::string const& message) { std::cerr << "warning: " << message << '\n'; }

AnalyzerConfig analyzer_from(std::string const& stopwords) {
    AnalyzerConfig config;
    if (!stopwords.empty()) {
        config.stopwords = load_stopwords(stopwords);
    }
    return config;
}

}  // namespace

void run_index(IndexOptions const& o) {
    if (o.repeat < 1) {
        throw std::invalid_argument("--repeat must be >= 1");
    }
    auto analyzer = analyzer_from(o.stopwords);
    std::optional<ExpansionSet> expansions;
    if (!o.expansions.empty()) {
        expansions = load_expansions(o.expansions);
    }
    CorpusReader reader(o.input, parse_corpus_format(o.format));
    auto index = build_index(reader, analyzer, expansions ? &*expansions : nullptr, o.repeat);
    index.check_invariants();
    if (expansions) {
        std::size_t missing = 0;
        for (auto const& [id, list] : *expansions) {
            if (!index.ordinal(id)) {
                if (missing < 5) {
                    std::cerr << "error: expansions reference unknown document " << id << '\n';
                }
                ++missing;
            }
        }
        if (missing > 0) {
            throw FormatError(fmt::format("{} expansion record(s) reference documents not in the corpus", missing));
        }
    }
    save_index(index, o.output);
    std::cerr << fmt::format("indexed {} documents, {} terms, {} tokens\n", index.num_docs(), index.num_terms(),
                             index.total_terms());
}

void run_search(SearchCommandOptions o) {
    o.scorer_config.kind = parse_scorer_kind(o.scorer);
    o.scorer_config.validate();
    if (o.k < 1) {
        throw std::invalid_argument("--k must be >= 1");
    }
    o.rm3_params.exclude_common_terms = !o.rm3_keep_common;
    if (o.rm3) {
        o.rm3_params.validate();
    }
    auto index = load_index(o.index);
    std::optional<InvertedIndex> source;
    if (o.rm3 && !o.rm3_source.empty()) {
        source.emplace(load_index(o.rm3_source));
    }
    auto queries = load_queries(o.queries);

    SearchOptions options{o.scorer_config, o.k, o.exhaustive};
    InvertedIndex const& feedback = source ? *source : index;
    QueryProcessor process = [&](std::string_view text) {
        return o.rm3 ? rm3_search(index, feedback, text, options, o.rm3_params) : search(index, text, options);
    };
    auto batch = run_batch(queries, process, o.threads);
    for (auto const& w : batch.warnings) {
        warn(w);
    }
    Output out(o.output);
    write_run(out.stream(), batch.run, o.run_tag);
    out.close();
}

void run_segment(SegmentOptions const& o) {
    auto strategy = parse_passage_strategy(o.strategy);
    o.params.validate();
    auto analyzer = analyzer_from(o.stopwords);
    auto format = parse_corpus_format(o.format);

    std::optional<InvertedIndex> index;
    std::optional<IdfTable> idf;
    if (strategy == PassageStrategy::pi) {
        if (!o.index.empty()) {
            index.emplace(load_index(o.index));
            idf.emplace(*index);
        } else {
            CorpusReader stats_reader(o.input, format);
            idf.emplace(IdfTable::from_corpus(stats_reader, analyzer));
        }
    }

    Output out(o.output);
    CorpusReader reader(o.input, format);
    while (auto doc = reader.next()) {
        PassageSelection selection;
        try {
            selection = select_passages(*doc, strategy, o.params, analyzer, idf ? &*idf : nullptr);
        } catch (std::invalid_argument const& e) {
            warn(fmt::format("skipping {}: {}", doc->id, e.what()));
            continue;
        }
        if (selection.windows.empty()) {
            warn(fmt::format("skipping {}: no tokens", doc->id));
        }
        for (auto const& w : selection.windows) {
            nlohmann::ordered_json obj;
            obj["id"] = passage_id(doc->id, w.window_index);
            obj["contents"] = w.text;
            obj["parent"] = doc->id;
            out.stream() << obj.dump() << '\n';
        }
    }
    out.close();
}

void run_fold(FoldOptions const& o) {
    auto per_passage = load_expansions(o.input);
    std::vector<std::string> parents;
    std::map<std::string, std::multimap<std::size_t, std::vector<std::string> const*>> grouped;
    for (auto const& [id, list] : per_passage) {
        auto [parent, window] = parse_passage_id(id);
        auto [it, inserted] = grouped.try_emplace(parent);
        if (inserted) {
            parents.push_back(parent);
        }
        it->second.emplace(window, &list);
    }
    ExpansionSet folded;
    for (auto const& parent : parents) {
        std::vector<std::string> all;
        for (auto const& [window, list] : grouped[parent]) {
            all.insert(all.end(), list->begin(), list->end());
        }
        folded.add(parent, std::move(all));
    }
    Output out(o.output);
    write_expansions(out.stream(), folded);
    out.close();
}

void run_weak_pairs(WeakPairsOptions o) {
    o.scorer_config.kind = parse_scorer_kind(o.scorer);
    o.scorer_config.validate();
    if (o.k < 1) {
        throw std::invalid_argument("--k must be >= 1");
    }
    auto index = load_index(o.index);
    CorpusReader reader(o.corpus, parse_corpus_format(o.format));
    auto docs = DocumentStore::from_corpus(reader);
    auto queries = load_queries(o.queries);

    WeakSupervisionParams params;
    params.search = SearchOptions{o.scorer_config, o.k, false};
    params.max_passage_tokens = o.max_passage_tokens;
    Output out(o.output);
    std::vector<std::string> warnings;
    generate_pairs(
        index, docs, queries, params, [&](TrainingPair const& p) { write_pair(out.stream(), p); }, &warnings);
    for (auto const& w : warnings) {
        warn(w);
    }
    out.close();
}

void run_evaluate(EvaluateOptions const& o) {
    auto run = load_run(o.run);
    auto qrels = load_qrels(o.qrels);
    auto report = evaluate(run, qrels, o.map_cutoff);
    Output out(o.output);
    write_report_table(out.stream(), report);
    out.close();
    if (!o.jsonl.empty()) {
        Output rows(o.jsonl);
        write_report_jsonl(rows.stream(), report);
        rows.close();
    }
}

void run_lengths(LengthsOptions const& o) {
    CorpusReader reader(o.input, parse_corpus_format(o.format));
    auto hist = doc_length_histogram(reader, analyzer_from(o.stopwords), o.bucket_width);
    Output out(o.output);
    out.stream() << "bucket\tlower\tupper\tcount\n";
    for (auto const& [bucket, count] : hist) {
        out.stream() << fmt::format("{}\t{}\t{}\t{}\n", bucket, bucket * o.bucket_width,
                                    (bucket + 1) * o.bucket_width - 1, count);
    }
    out.close();
}

void run_passages(PassagesOptions const& o) {
    if (o.stride < 1 || o.stride > o.window || o.window < 1) {
        throw std::invalid_argument("need 1 <= --stride <= --window");
    }
    CorpusReader reader(o.corpus, parse_corpus_format(o.format));
    auto docs = DocumentStore::from_corpus(reader);
    auto records = load_passage_records(o.passages);
    auto dist = relevant_passage_distribution(docs, records, analyzer_from(o.stopwords), o.window, o.stride);
    if (dist.missing_documents > 0) {
        warn(fmt::format("{} passage record(s) reference documents not in the corpus", dist.missing_documents));
    }
    Output out(o.output);
    out.stream() << "window\tcount\n";
    for (auto const& [window, count] : dist.windows) {
        out.stream() << fmt::format("{}\t{}\n", window, count);
    }
    out.stream() << fmt::format("not_found\t{}\n", dist.not_found);
    out.close();
}

}  // namespace dexp::cli
