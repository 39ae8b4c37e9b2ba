#pragma once

#include <cstddef>
#include <optional>
#include <string>

#include "dexp/rm3.hpp"
#include "dexp/scoring.hpp"
#include "dexp/segmentation.hpp"

namespace dexp::cli {

struct IndexOptions {
    std::string input;
    std::string format = "jsonl";
    std::string output;
    std::string expansions;
    int repeat = 1;
    std::string stopwords;
};

struct SearchCommandOptions {
    std::string index;
    std::string queries;
    std::string scorer = "bm25";
    ScorerConfig scorer_config;
    std::size_t k = 1000;
    bool exhaustive = false;
    bool rm3 = false;
    RM3Params rm3_params;
    bool rm3_keep_common = false;
    std::string rm3_source;
    std::string run_tag = "dexp";
    std::string output;
    unsigned threads = 1;
};

struct SegmentOptions {
    std::string input;
    std::string format = "jsonl";
    std::string strategy = "concat";
    SegmentationParams params;
    std::string index;
    std::string stopwords;
    std::string output;
};

struct FoldOptions {
    std::string input;
    std::string output;
};

struct WeakPairsOptions {
    std::string index;
    std::string corpus;
    std::string format = "jsonl";
    std::string queries;
    std::string scorer = "bm25";
    ScorerConfig scorer_config;
    std::size_t k = 1;
    std::size_t max_passage_tokens = 60;
    std::string output;
};

struct EvaluateOptions {
    std::string run;
    std::string qrels;
    std::string output = "-";
    std::string jsonl;
    std::size_t map_cutoff = 1000;
};

struct LengthsOptions {
    std::string input;
    std::string format = "jsonl";
    std::size_t bucket_width = 100;
    std::string stopwords;
    std::string output = "-";
};

struct PassagesOptions {
    std::string corpus;
    std::string format = "jsonl";
    std::string passages;
    std::size_t window = 60;
    std::size_t stride = 30;
    std::string stopwords;
    std::string output = "-";
};

void run_index(IndexOptions const& o);
void run_search(SearchCommandOptions o);
void run_segment(SegmentOptions const& o);
void run_fold(FoldOptions const& o);
void run_weak_pairs(WeakPairsOptions o);
void run_evaluate(EvaluateOptions const& o);
void run_lengths(LengthsOptions const& o);
void run_passages(PassagesOptions const& o);

}  // namespace dexp::cli
