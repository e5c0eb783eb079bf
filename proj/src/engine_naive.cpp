#include <algorithm>
#include <chrono>

#include "gtf/engine.hpp"

namespace gtf {

NaiveRun::NaiveRun(const DataGraph& g, Query q, EngineOptions opts, AnswerSink sink, TraceFn trace)
    : g_(g),
      query_(std::move(q)),
      opts_(opts),
      sink_(std::move(sink)),
      trace_(std::move(trace)),
      nk_(query_.keywords.size()) {
    if (nk_ < 2) throw GtfError("query must have at least two keywords");
    const std::size_t slots = static_cast<std::size_t>(g_.node_count()) * nk_;
    paths_.assign(slots, {});
    first_pop_seen_.assign(slots, 0);
    is_k_root_.assign(g_.node_count(), false);
    kidx_of_.assign(g_.node_count(), -1);
    for (std::size_t i = 0; i < nk_; ++i) kidx_of_[query_.keywords[i]] = static_cast<int>(i);
    for (NodeId k : query_.keywords) insert_queue(store_.singleton(g_, k));
}

int NaiveRun::kidx(NodeId keyword) const {
    int k = kidx_of_[keyword];
    if (k < 0) throw GtfError("node is not a query keyword: '" + g_.id_of(keyword) + "'");
    return k;
}

std::span<const PathId> NaiveRun::stored_paths(NodeId v, NodeId keyword) const {
    return paths_[slot(v, kidx(keyword))];
}

void NaiveRun::insert_queue(PathId p) {
    if (queue_.size() >= opts_.queue_cap) {
        stats_.queue_cap_hit = true;
        done_ = true;
        return;
    }
    if (p >= stats_.insert_counts.size()) stats_.insert_counts.resize(p + 1, 0);
    if (stats_.insert_counts[p] == 0) ++stats_.constructed_paths;
    if (stats_.insert_counts[p] < 255) ++stats_.insert_counts[p];
    ++stats_.inserts;
    const PathRecord& rec = store_.rec(p);
    queue_.push({rec.weight, next_seq_++, p});
    if (trace_) trace_({EventKind::Insert, p, rec.weight, rec.head, rec.keyword});
}

void NaiveRun::produce_answers(NodeId v, PathId trigger) {
    const int ti = kidx(store_.rec(trigger).keyword);
    std::vector<std::span<const PathId>> lists(nk_);
    for (std::size_t k = 0; k < nk_; ++k) lists[k] = paths_[slot(v, static_cast<int>(k))];
    if (!detail::emit_combinations(g_, store_, query_, lists, trigger, ti, next_rank_,
                                   opts_.top_k, stats_, sink_, trace_))
        done_ = true;
}

bool NaiveRun::step() {
    if (done_) return false;
    if (queue_.empty()) {
        done_ = true;
        return false;
    }
    auto entry = queue_.top();
    queue_.pop();
    ++stats_.pops;
    if (popped_any_ && entry.weight < max_pop_weight_) stats_.pops_monotone = false;
    max_pop_weight_before_ = popped_any_ ? max_pop_weight_ : 0;
    max_pop_weight_ = std::max(max_pop_weight_, entry.weight);
    popped_any_ = true;

    const PathId p = entry.path;
    const PathRecord& rec = store_.rec(p);
    if (trace_) trace_({EventKind::Pop, p, rec.weight, rec.head, rec.keyword});

    const NodeId v = rec.head;
    const int ki = kidx(rec.keyword);
    const std::size_t s = slot(v, ki);
    if (!first_pop_seen_[s]) {
        first_pop_seen_[s] = 1;
        stats_.visited_marks.push_back({v, rec.keyword, rec.weight});
    }

    paths_[s].push_back(p);
    if (is_k_root_[v]) {
        produce_answers(v, p);
    } else {
        bool all_reached = true;
        for (std::size_t k = 0; k < nk_ && all_reached; ++k)
            all_reached = !paths_[slot(v, static_cast<int>(k))].empty();
        if (all_reached) {
            is_k_root_[v] = true;
            ++stats_.kroots_discovered;
            Weight best = 0;
            for (std::size_t k = 0; k < nk_; ++k) {
                Weight mn = kUnreachable;
                for (PathId q : paths_[slot(v, static_cast<int>(k))])
                    if (mn == kUnreachable || store_.rec(q).weight < mn) mn = store_.rec(q).weight;
                best = std::max(best, mn);
            }
            stats_.discoveries.push_back({v, best, max_pop_weight_before_});
            if (trace_) trace_({EventKind::Discover, kNoPath, best, v, kNoNode});
            produce_answers(v, p);
        }
    }
    if (done_) return false;

    // Only acyclic extensions; all constructed paths stay simple.
    for (const ParentEdge& pe : g_.parents(v)) {
        if (store_.contains(p, pe.parent)) {
            ++stats_.discarded_cyclic;
            continue;
        }
        insert_queue(store_.extend(g_, pe.parent, pe.weight, p));
        if (done_) return false;
    }
    return !done_;
}

RunStats NaiveRun::run() {
    const auto t0 = std::chrono::steady_clock::now();
    while (step()) {
    }
    const auto t1 = std::chrono::steady_clock::now();
    stats_.wall_time_ns = std::chrono::duration_cast<std::chrono::nanoseconds>(t1 - t0).count();
    finalize();
    return stats_;
}

void NaiveRun::finalize() { stats_.max_path_nodes = store_.max_length(); }

}  // namespace gtf
