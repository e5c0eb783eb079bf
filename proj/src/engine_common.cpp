#include <algorithm>
#include <chrono>

#include "gtf/engine.hpp"

namespace gtf {

std::uint8_t RunStats::max_insertions_per_path() const {
    std::uint8_t mx = 0;
    for (auto c : insert_counts) mx = std::max(mx, c);
    return mx;
}

namespace detail {

// Enumerates every one-path-per-keyword combination that contains `trigger`
// for its own keyword, taking the other keywords' paths from `lists`.
// Combinations whose union is a tree with at least two root children are
// emitted through the sink. Returns false when the top-k limit was reached.
bool emit_combinations(const DataGraph& g, const PathStore& store, const Query& q,
                       std::span<const std::span<const PathId>> lists, PathId trigger,
                       int trigger_kidx, std::uint64_t& next_rank, std::size_t top_k,
                       RunStats& stats, const AnswerSink& sink, const TraceFn& trace) {
    const int nk = static_cast<int>(q.keywords.size());
    for (int k = 0; k < nk; ++k)
        if (k != trigger_kidx && lists[k].empty()) return true;  // no combination exists

    std::vector<std::size_t> idx(nk, 0);
    std::vector<PathId> combo(nk);
    combo[trigger_kidx] = trigger;
    for (;;) {
        for (int k = 0; k < nk; ++k)
            if (k != trigger_kidx) combo[k] = lists[k][idx[k]];

        auto answer = combine_to_tree(g, store, combo, q.keywords);
        if (answer && answer->root_children >= 2) {
            answer->rank = next_rank++;
            ++stats.answers_emitted;
            if (trace) trace({EventKind::Emit, kNoPath, answer->height, answer->root, kNoNode});
            if (sink) sink(*answer);
            if (top_k != 0 && stats.answers_emitted >= top_k) return false;
        }

        // Odometer over the non-trigger keywords, last keyword fastest.
        int k = nk - 1;
        for (; k >= 0; --k) {
            if (k == trigger_kidx) continue;
            if (++idx[k] < lists[k].size()) break;
            idx[k] = 0;
        }
        if (k < 0) return true;
    }
}

}  // namespace detail

RunStats run_gtf(const DataGraph& g, const Query& q, const EngineOptions& opts, AnswerSink sink,
                 TraceFn trace) {
    GtfRun run(g, q, opts, std::move(sink), std::move(trace));
    return run.run();
}

RunStats run_naive(const DataGraph& g, const Query& q, const EngineOptions& opts, AnswerSink sink,
                   TraceFn trace) {
    NaiveRun run(g, q, opts, std::move(sink), std::move(trace));
    return run.run();
}

}  // namespace gtf
