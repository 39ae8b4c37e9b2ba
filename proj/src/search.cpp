#include "dexp/search.hpp"

#include <algorithm>
#include <limits>
#include <queue>
#include <stdexcept>
#include <thread>
#include <unordered_set>

#include <fmt/format.h>

namespace dexp {

namespace {

struct WorseFirst {
    bool operator()(ScoredDoc const& a, ScoredDoc const& b) const { return ranks_before(a, b); }
};

class TopK {
  public:
    explicit TopK(std::size_t k) : m_k(k) {}

    void push(InvertedIndex const& index, DocOrdinal doc, double score) {
        if (m_heap.size() < m_k) {
            m_heap.push(ScoredDoc{index.doc_id(doc), score});
            return;
        }
        auto const& worst = m_heap.top();
        if (score < worst.score || (score == worst.score && !(index.doc_id(doc) < worst.doc_id))) {
            return;
        }
        m_heap.pop();
        m_heap.push(ScoredDoc{index.doc_id(doc), score});
    }

    std::vector<ScoredDoc> take() && {
        std::vector<ScoredDoc> out;
        out.reserve(m_heap.size());
        while (!m_heap.empty()) {
            out.push_back(m_heap.top());
            m_heap.pop();
        }
        std::reverse(out.begin(), out.end());
        return out;
    }

  private:
    std::size_t m_k;
    std::priority_queue<ScoredDoc, std::vector<ScoredDoc>, WorseFirst> m_heap;
};

}  // namespace

SearchResult search_weighted(InvertedIndex const& index, std::span<WeightedTerm const> terms,
                             SearchOptions const& options) {
    if (options.k == 0) {
        throw std::invalid_argument("k must be >= 1");
    }
    SearchResult result;
    if (terms.empty()) {
        result.status = SearchStatus::empty_query;
        return result;
    }
    QueryScorer scorer(index, terms, options.scorer);
    auto const& qterms = scorer.terms();
    if (qterms.empty()) {
        return result;
    }
    TopK top(options.k);

    if (options.exhaustive && options.scorer.kind != ScorerKind::bm25) {
        for (DocOrdinal d = 0; d < index.num_docs(); ++d) {
            top.push(index, d, scorer.score(d));
        }
        result.docs = std::move(top).take();
        return result;
    }

    struct Cursor {
        std::span<Posting const> list;
        std::size_t pos = 0;
        [[nodiscard]] DocOrdinal doc() const {
            return pos < list.size() ? list[pos].doc : std::numeric_limits<DocOrdinal>::max();
        }
    };
    std::vector<Cursor> cursors;
    cursors.reserve(qterms.size());
    for (auto const& t : qterms) {
        cursors.push_back(Cursor{index.postings(t.id)});
    }
    constexpr auto end = std::numeric_limits<DocOrdinal>::max();
    while (true) {
        DocOrdinal current = end;
        for (auto const& c : cursors) {
            current = std::min(current, c.doc());
        }
        if (current == end) {
            break;
        }
        double s = scorer.score(index.doc_length(current), [&](std::size_t i) -> std::uint32_t {
            auto const& c = cursors[i];
            return c.doc() == current ? c.list[c.pos].tf : 0;
        });
        top.push(index, current, s);
        for (auto& c : cursors) {
            if (c.doc() == current) {
                ++c.pos;
            }
        }
    }
    result.docs = std::move(top).take();
    return result;
}

SearchResult search(InvertedIndex const& index, std::string_view query_text, SearchOptions const& options) {
    auto terms = analyze_terms(query_text, index.analyzer());
    auto weighted = count_terms(terms);
    return search_weighted(index, weighted, options);
}

BatchResult run_batch(std::span<QueryRecord const> queries, QueryProcessor const& process, unsigned threads) {
    std::unordered_set<std::string> seen;
    for (auto const& q : queries) {
        if (!seen.insert(q.id).second) {
            throw std::invalid_argument("duplicate query id: " + q.id);
        }
    }

    std::vector<SearchResult> results(queries.size());
    std::vector<std::exception_ptr> errors(queries.size());
    auto work = [&](std::size_t first, std::size_t stride) {
        for (std::size_t i = first; i < queries.size(); i += stride) {
            try {
                results[i] = process(queries[i].text);
            } catch (...) {
                errors[i] = std::current_exception();
            }
        }
    };
    threads = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(queries.size())));
    if (threads <= 1) {
        work(0, 1);
    } else {
        std::vector<std::jthread> pool;
        for (unsigned t = 0; t < threads; ++t) {
            pool.emplace_back(work, t, threads);
        }
    }
    for (auto const& e : errors) {
        if (e) {
            std::rethrow_exception(e);
        }
    }

    BatchResult out;
    out.run.queries.reserve(queries.size());
    for (std::size_t i = 0; i < queries.size(); ++i) {
        switch (results[i].status) {
        case SearchStatus::empty_query:
            out.warnings.push_back(fmt::format("query {}: analyzes to zero tokens", queries[i].id));
            break;
        case SearchStatus::no_feedback:
            out.warnings.push_back(
                fmt::format("query {}: no first-pass results; feedback skipped", queries[i].id));
            break;
        case SearchStatus::ok: break;
        }
        out.run.queries.push_back(QueryRun{queries[i].id, std::move(results[i].docs)});
    }
    return out;
}

BatchResult run_batch(InvertedIndex const& index, std::span<QueryRecord const> queries,
                      SearchOptions const& options, unsigned threads) {
    options.scorer.validate();
    return run_batch(
        queries, [&](std::string_view text) { return search(index, text, options); }, threads);
}

void write_run(std::ostream& out, RunRanking const& run, std::string_view tag) {
    fmt::memory_buffer buf;
    for (auto const& q : run.queries) {
        std::size_t rank = 1;
        for (auto const& d : q.docs) {
            fmt::format_to(std::back_inserter(buf), "{} Q0 {} {} {:.6f} {}\n", q.query_id, d.doc_id, rank++,
                           d.score, tag);
        }
    }
    out.write(buf.data(), static_cast<std::streamsize>(buf.size()));
}

}  // namespace dexp
