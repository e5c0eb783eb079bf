#include <algorithm>
#include <chrono>

#include "gtf/engine.hpp"

namespace gtf {

GtfRun::GtfRun(const DataGraph& g, Query q, EngineOptions opts, AnswerSink sink, TraceFn trace)
    : g_(g),
      query_(std::move(q)),
      opts_(opts),
      sink_(std::move(sink)),
      trace_(std::move(trace)),
      nk_(query_.keywords.size()) {
    if (nk_ < 2) throw GtfError("query must have at least two keywords");
    const std::size_t slots = static_cast<std::size_t>(g_.node_count()) * nk_;
    marks_.assign(slots, Mark::Active);
    frozen_.assign(slots, {});
    paths_.assign(slots, {});
    is_k_root_.assign(g_.node_count(), false);
    kidx_of_.assign(g_.node_count(), -1);
    for (std::size_t i = 0; i < nk_; ++i) kidx_of_[query_.keywords[i]] = static_cast<int>(i);
    for (NodeId k : query_.keywords) insert_queue(store_.singleton(g_, k), /*unfrozen=*/false);
}

int GtfRun::kidx(NodeId keyword) const {
    int k = kidx_of_[keyword];
    if (k < 0) throw GtfError("node is not a query keyword: '" + g_.id_of(keyword) + "'");
    return k;
}

Mark GtfRun::mark(NodeId v, NodeId keyword) const { return marks_[slot(v, kidx(keyword))]; }

std::size_t GtfRun::frozen_count(NodeId v, NodeId keyword) const {
    return frozen_[slot(v, kidx(keyword))].size();
}

std::span<const PathId> GtfRun::stored_paths(NodeId v, NodeId keyword) const {
    return paths_[slot(v, kidx(keyword))];
}

void GtfRun::insert_queue(PathId p, bool unfrozen) {
    if (queue_.size() >= opts_.queue_cap) {
        stats_.queue_cap_hit = true;
        done_ = true;
        return;
    }
    if (p >= stats_.insert_counts.size()) stats_.insert_counts.resize(p + 1, 0);
    if (stats_.insert_counts[p] == 0) ++stats_.constructed_paths;
    if (stats_.insert_counts[p] < 255) ++stats_.insert_counts[p];
    ++stats_.inserts;
    if (unfrozen) ++stats_.unfreezes;
    const PathRecord& rec = store_.rec(p);
    queue_.push({rec.weight, next_seq_++, p});
    if (trace_)
        trace_({unfrozen ? EventKind::Unfreeze : EventKind::Insert, p, rec.weight, rec.head,
                rec.keyword});
}

bool GtfRun::freeze(PathId p) {
    const PathRecord& rec = store_.rec(p);
    std::size_t s = slot(rec.head, kidx(rec.keyword));
    if (marks_[s] != Mark::Visited) return false;
    frozen_[s].push_back(p);
    ++stats_.freezes;
    if (trace_) trace_({EventKind::Freeze, p, rec.weight, rec.head, rec.keyword});
    return true;
}

void GtfRun::unfreeze(PathId p) {
    const int ki = kidx(store_.rec(p).keyword);
    for (PathId cur = p; cur != kNoPath; cur = store_.rec(cur).suffix) {
        NodeId v = store_.rec(cur).head;
        std::size_t s = slot(v, ki);
        if (marks_[s] == Mark::InAnswer) continue;
        marks_[s] = Mark::InAnswer;
        for (PathId frozen_path : frozen_[s]) insert_queue(frozen_path, /*unfrozen=*/true);
        frozen_[s].clear();
    }
}

bool GtfRun::is_essential(NodeId parent, PathId p) const {
    const int ki = kidx_of_[store_.rec(p).keyword];
    if (marks_[slot(parent, ki)] == Mark::Visited) return true;
    // Walk the rest of the section: head(p) through the next occurrence of
    // parent. The occurrence itself is the same node already checked above.
    for (PathId cur = p; cur != kNoPath; cur = store_.rec(cur).suffix) {
        NodeId u = store_.rec(cur).head;
        if (u == parent) return false;
        if (marks_[slot(u, ki)] == Mark::Visited) return true;
    }
    return false;  // parent was not on p; insertion is unconditional then
}

void GtfRun::discover_root(NodeId v) {
    is_k_root_[v] = true;
    ++stats_.kroots_discovered;

    Weight best = 0;
    for (std::size_t k = 0; k < nk_; ++k) {
        Weight mn = kUnreachable;
        for (PathId p : paths_[slot(v, static_cast<int>(k))])
            if (mn == kUnreachable || store_.rec(p).weight < mn) mn = store_.rec(p).weight;
        best = std::max(best, mn);
    }
    stats_.discoveries.push_back({v, best, popped_any_ ? max_pop_weight_before_ : 0});
    if (trace_) trace_({EventKind::Discover, kNoPath, best, v, kNoNode});

    for (std::size_t k = 0; k < nk_; ++k) {
        auto& list = paths_[slot(v, static_cast<int>(k))];
        for (PathId p : list) unfreeze(p);
        std::erase_if(list, [&](PathId p) { return !store_.is_acyclic(p); });
    }
}

void GtfRun::produce_answers(NodeId v, PathId trigger) {
    const int ti = kidx(store_.rec(trigger).keyword);
    std::vector<std::span<const PathId>> lists(nk_);
    for (std::size_t k = 0; k < nk_; ++k) lists[k] = paths_[slot(v, static_cast<int>(k))];
    if (!detail::emit_combinations(g_, store_, query_, lists, trigger, ti, next_rank_,
                                   opts_.top_k, stats_, sink_, trace_))
        done_ = true;
}

bool GtfRun::step() {
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

    if (freeze(p)) return !done_;

    const NodeId v = rec.head;
    const int ki = kidx(rec.keyword);
    const std::size_t s = slot(v, ki);
    if (marks_[s] == Mark::Active) {
        marks_[s] = Mark::Visited;
        stats_.visited_marks.push_back({v, rec.keyword, rec.weight});
    }

    bool relax = true;
    if (is_k_root_[v]) {
        unfreeze(p);
        if (store_.is_acyclic(p)) {
            paths_[s].push_back(p);
            produce_answers(v, p);
        } else {
            relax = false;
        }
    } else {
        paths_[s].push_back(p);
        bool all_reached = true;
        for (std::size_t k = 0; k < nk_ && all_reached; ++k)
            all_reached = !paths_[slot(v, static_cast<int>(k))].empty();
        if (all_reached) {
            discover_root(v);
            if (store_.is_acyclic(p)) produce_answers(v, p);
        }
    }
    if (done_) return false;

    if (relax) {
        for (const ParentEdge& pe : g_.parents(v)) {
            const bool on_path = store_.contains(p, pe.parent);
            if (!on_path || (opts_.essentiality && is_essential(pe.parent, p))) {
                insert_queue(store_.extend(g_, pe.parent, pe.weight, p), /*unfrozen=*/false);
                if (done_) return false;
            } else {
                ++stats_.discarded_cyclic;
            }
        }
    }
    return !done_;
}

RunStats GtfRun::run() {
    const auto t0 = std::chrono::steady_clock::now();
    while (step()) {
    }
    const auto t1 = std::chrono::steady_clock::now();
    stats_.wall_time_ns = std::chrono::duration_cast<std::chrono::nanoseconds>(t1 - t0).count();
    finalize();
    return stats_;
}

void GtfRun::finalize() {
    stats_.final_marks = marks_;
    stats_.max_path_nodes = store_.max_length();
}

}  // namespace gtf
