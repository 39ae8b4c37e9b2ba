// dexp: document expansion retrieval harness.
//
// Exit codes: 0 success, 1 runtime failure, 2 usage or input format error.

#include <exception>
#include <iostream>
#include <memory>

#include <CLI11.hpp>

#include "commands.hpp"
#include "dexp/error.hpp"

namespace {

using namespace dexp::cli;

void add_scorer_flags(CLI::App* cmd, std::string& scorer, dexp::ScorerConfig& config) {
    cmd->add_option("--scorer", scorer, "Ranking function: bm25, qld or qljm")->capture_default_str();
    cmd->add_option("--bm25.k1", config.bm25.k1, "BM25 k1 (>= 0)")->capture_default_str();
    cmd->add_option("--bm25.b", config.bm25.b, "BM25 b in [0, 1]")->capture_default_str();
    cmd->add_option("--qld.mu", config.qld.mu, "Dirichlet prior mu (> 0)")->capture_default_str();
    cmd->add_option("--qljm.lambda", config.qljm.lambda, "Jelinek-Mercer background weight in (0, 1)")
        ->capture_default_str();
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Document expansion retrieval harness: indexing, search, RM3, passage segmentation, "
                 "weak supervision and TREC evaluation."};
    app.require_subcommand(1);
    auto config = std::make_shared<CLI::ConfigTOML>();
    config->parentSeparator('/');
    app.config_formatter(config);
    app.set_config("--config", "", "TOML-style config file; [subcommand] sections hold option=value lines, "
                                   "command-line flags take precedence");

    IndexOptions index_opts;
    auto* index_cmd = app.add_subcommand("index", "Build an index snapshot from a corpus");
    index_cmd->add_option("--input", index_opts.input, "Corpus file")->required();
    index_cmd->add_option("--format", index_opts.format, "Corpus format: jsonl ({\"id\",\"contents\"} per line) "
                                                         "or trecweb (<DOC><DOCNO><TEXT>)")
        ->capture_default_str();
    index_cmd->add_option("--output", index_opts.output, "Snapshot file to write")->required();
    index_cmd->add_option("--expansions", index_opts.expansions,
                          "Expansion jsonl ({\"id\",\"predicted_queries\":[...]}) appended to documents before indexing");
    index_cmd->add_option("--repeat", index_opts.repeat, "Times each expansion is appended")->capture_default_str();
    index_cmd->add_option("--stopwords", index_opts.stopwords, "Stopword file, one term per line");

    SearchCommandOptions search_opts;
    auto* search_cmd = app.add_subcommand("search", "Rank documents for a query file and write a TREC run");
    search_cmd->add_option("--index", search_opts.index, "Index snapshot")->required();
    search_cmd->add_option("--queries", search_opts.queries, "Query file, \"qid<TAB>text\" per line")->required();
    add_scorer_flags(search_cmd, search_opts.scorer, search_opts.scorer_config);
    search_cmd->add_option("--k", search_opts.k, "Results per query")->capture_default_str();
    search_cmd->add_flag("--exhaustive", search_opts.exhaustive,
                         "Score every document with the query-likelihood scorers, not only term-matching ones");
    search_cmd->add_flag("--rm3", search_opts.rm3, "Expand queries with RM3 pseudo-relevance feedback");
    search_cmd->add_option("--rm3.fbDocs", search_opts.rm3_params.fb_docs, "Feedback documents")
        ->capture_default_str();
    search_cmd->add_option("--rm3.fbTerms", search_opts.rm3_params.fb_terms, "Feedback terms")
        ->capture_default_str();
    search_cmd->add_option("--rm3.alpha", search_opts.rm3_params.alpha, "Original query weight in [0, 1]")
        ->capture_default_str();
    search_cmd->add_option("--rm3.source", search_opts.rm3_source,
                           "Index snapshot to draw feedback statistics from (default: the searched index)");
    search_cmd->add_flag("--rm3.keepCommonTerms", search_opts.rm3_keep_common,
                         "Keep feedback terms that occur in every document");
    search_cmd->add_option("--run-tag", search_opts.run_tag, "Tag written in the last run column")
        ->capture_default_str();
    search_cmd->add_option("--output", search_opts.output, "Run file (qid Q0 docid rank score tag)")->required();
    search_cmd->add_option("--threads", search_opts.threads, "Worker threads")->capture_default_str();

    SegmentOptions segment_opts;
    auto* segment_cmd = app.add_subcommand(
        "segment", "Emit passages for the expansion generator: {\"id\":\"<doc>#<window>\",\"contents\",\"parent\"}");
    segment_cmd->add_option("--input", segment_opts.input, "Corpus file")->required();
    segment_cmd->add_option("--format", segment_opts.format, "jsonl or trecweb")->capture_default_str();
    segment_cmd->add_option("--strategy", segment_opts.strategy,
                            "concat (all overlapping windows), first-k (leading sentences) or pi "
                            "(window most similar to the whole document)")
        ->capture_default_str();
    segment_cmd->add_option("--window", segment_opts.params.target_tokens, "Window size in tokens")
        ->capture_default_str();
    segment_cmd->add_option("--stride", segment_opts.params.stride_tokens, "Window stride in tokens")
        ->capture_default_str();
    segment_cmd->add_option("--k-sentences", segment_opts.params.k_sentences, "Sentences kept by first-k")
        ->capture_default_str();
    segment_cmd->add_option("--index", segment_opts.index,
                            "Index snapshot supplying idf for pi (default: statistics of the input corpus)");
    segment_cmd->add_option("--stopwords", segment_opts.stopwords, "Stopword file");
    segment_cmd->add_option("--output", segment_opts.output, "Passages jsonl")->required();

    FoldOptions fold_opts;
    auto* fold_cmd = app.add_subcommand("fold-expansions",
                                        "Regroup per-passage expansions (ids <doc>#<window>) into per-document ones");
    fold_cmd->add_option("--passages-expansions", fold_opts.input, "Per-passage expansion jsonl")->required();
    fold_cmd->add_option("--output", fold_opts.output, "Per-document expansion jsonl")->required();

    WeakPairsOptions weak_opts;
    auto* weak_cmd = app.add_subcommand(
        "weak-pairs", "Pseudo-annotate (passage, query) pairs from top-k retrieval: "
                      "{\"query\",\"passage\",\"qid\",\"rank\",\"score\"} per line");
    weak_cmd->add_option("--index", weak_opts.index, "Index snapshot of the target corpus")->required();
    weak_cmd->add_option("--corpus", weak_opts.corpus, "Target corpus (for passage text)")->required();
    weak_cmd->add_option("--format", weak_opts.format, "jsonl or trecweb")->capture_default_str();
    weak_cmd->add_option("--queries", weak_opts.queries, "Out-of-domain query file")->required();
    add_scorer_flags(weak_cmd, weak_opts.scorer, weak_opts.scorer_config);
    weak_cmd->add_option("--k", weak_opts.k, "Documents treated as relevant per query")->capture_default_str();
    weak_cmd->add_option("--max-passage-tokens", weak_opts.max_passage_tokens,
                         "Longer documents are cut to their head sentences")
        ->capture_default_str();
    weak_cmd->add_option("--output", weak_opts.output, "Pairs jsonl")->required();

    EvaluateOptions eval_opts;
    auto* eval_cmd = app.add_subcommand("evaluate", "MAP, R@100, R@10, P@10 and P@5 of a run against qrels");
    eval_cmd->add_option("--run", eval_opts.run, "TREC run file")->required();
    eval_cmd->add_option("--qrels", eval_opts.qrels, "TREC qrels (qid iter docid grade)")->required();
    eval_cmd->add_option("--output", eval_opts.output, "Report table ('-' for stdout)")->capture_default_str();
    eval_cmd->add_option("--jsonl", eval_opts.jsonl, "Per-query metrics jsonl");
    eval_cmd->add_option("--map-cutoff", eval_opts.map_cutoff, "Rank cutoff for average precision")
        ->capture_default_str();

    auto* analyze_cmd = app.add_subcommand("analyze", "Corpus analyses");
    analyze_cmd->require_subcommand(1);
    LengthsOptions lengths_opts;
    auto* lengths_cmd = analyze_cmd->add_subcommand("lengths", "Document length histogram (analyzer tokens)");
    lengths_cmd->add_option("--input", lengths_opts.input, "Corpus file")->required();
    lengths_cmd->add_option("--format", lengths_opts.format, "jsonl or trecweb")->capture_default_str();
    lengths_cmd->add_option("--bucket-width", lengths_opts.bucket_width, "Bucket width in tokens")
        ->capture_default_str();
    lengths_cmd->add_option("--stopwords", lengths_opts.stopwords, "Stopword file");
    lengths_cmd->add_option("--output", lengths_opts.output, "TSV bucket/lower/upper/count")->capture_default_str();
    PassagesOptions passages_opts;
    auto* passages_cmd = analyze_cmd->add_subcommand(
        "passages", "Window index distribution of relevant passages ({\"doc_id\",\"passage\"} jsonl)");
    passages_cmd->add_option("--corpus", passages_opts.corpus, "Corpus file")->required();
    passages_cmd->add_option("--format", passages_opts.format, "jsonl or trecweb")->capture_default_str();
    passages_cmd->add_option("--passages", passages_opts.passages, "Relevant passage records")->required();
    passages_cmd->add_option("--window", passages_opts.window, "Window size in tokens")->capture_default_str();
    passages_cmd->add_option("--stride", passages_opts.stride, "Window stride in tokens")->capture_default_str();
    passages_cmd->add_option("--stopwords", passages_opts.stopwords, "Stopword file");
    passages_cmd->add_option("--output", passages_opts.output, "TSV window/count")->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (CLI::CallForHelp const& e) {
        return app.exit(e);
    } catch (CLI::CallForAllHelp const& e) {
        return app.exit(e);
    } catch (CLI::ParseError const& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (*index_cmd) {
            run_index(index_opts);
        } else if (*search_cmd) {
            run_search(search_opts);
        } else if (*segment_cmd) {
            run_segment(segment_opts);
        } else if (*fold_cmd) {
            run_fold(fold_opts);
        } else if (*weak_cmd) {
            run_weak_pairs(weak_opts);
        } else if (*eval_cmd) {
            run_evaluate(eval_opts);
        } else if (*lengths_cmd) {
            run_lengths(lengths_opts);
        } else if (*passages_cmd) {
            run_passages(passages_opts);
        }
    } catch (dexp::FormatError const& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (std::invalid_argument const& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (std::exception const& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
