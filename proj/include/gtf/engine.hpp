#ifndef GTF_ENGINE_HPP
#define GTF_ENGINE_HPP

#include <functional>
#include <queue>
#include <span>
#include <vector>

#include "gtf/answer.hpp"
#include "gtf/common.hpp"
#include "gtf/datagraph.hpp"
#include "gtf/pathstore.hpp"

namespace gtf {

enum class Mark : std::uint8_t { Active, Visited, InAnswer };

struct EngineOptions {
    std::size_t top_k = 0;                  // 0 = unbounded
    std::size_t queue_cap = 10'000'000;     // safety valve; exceeding aborts
    bool essentiality = true;               // false drops essential cyclic paths
};

enum class EventKind : std::uint8_t { Pop, Insert, Freeze, Unfreeze, Discover, Emit };

struct TraceEvent {
    EventKind kind;
    PathId path;     // kNoPath for Emit
    Weight weight;   // path weight; answer height for Emit
    NodeId node;     // head node; root for Discover/Emit
    NodeId keyword;  // path keyword; kNoNode for Emit
};

using AnswerSink = std::function<void(const Answer&)>;
using TraceFn = std::function<void(const TraceEvent&)>;

struct DiscoveryEvent {
    NodeId node;
    Weight best_height;            // max over keywords of min stored path weight
    Weight max_pop_weight_before;  // largest weight popped in earlier iterations
};

struct VisitEvent {
    NodeId node;
    NodeId keyword;
    Weight weight;  // weight of the path that first reached (node, keyword)
};

struct RunStats {
    std::uint64_t pops = 0;
    std::uint64_t inserts = 0;
    std::uint64_t freezes = 0;
    std::uint64_t unfreezes = 0;
    std::uint64_t constructed_paths = 0;
    std::uint64_t discarded_cyclic = 0;  // relaxations rejected by the cycle test
    std::uint64_t answers_emitted = 0;
    std::uint64_t kroots_discovered = 0;
    std::int64_t wall_time_ns = 0;
    std::uint32_t max_path_nodes = 0;
    bool queue_cap_hit = false;
    bool pops_monotone = true;  // nondecreasing pop weights (naive invariant)

    // Instrumentation; every entry must stay <= 2 (a path is exposed at most
    // twice). Indexed by PathId.
    std::vector<std::uint8_t> insert_counts;
    std::vector<DiscoveryEvent> discoveries;
    std::vector<VisitEvent> visited_marks;
    // Final marks snapshot, node * |K| + kidx (GTF only; empty for naive).
    std::vector<Mark> final_marks;

    std::uint8_t max_insertions_per_path() const;
};

namespace detail {

struct QueueEntry {
    Weight weight;
    std::uint64_t seq;
    PathId path;
};

struct QueueOrder {
    bool operator()(const QueueEntry& a, const QueueEntry& b) const {
        return a.weight != b.weight ? a.weight > b.weight : a.seq > b.seq;
    }
};

using PathQueue = std::priority_queue<QueueEntry, std::vector<QueueEntry>, QueueOrder>;

// Answer production shared by both engines: the pathGroups contract.
bool emit_combinations(const DataGraph& g, const PathStore& store, const Query& q,
                       std::span<const std::span<const PathId>> lists, PathId trigger,
                       int trigger_kidx, std::uint64_t& next_rank, std::size_t top_k,
                       RunStats& stats, const AnswerSink& sink, const TraceFn& trace);

}  // namespace detail

// One GTF execution: priority-queue backward search with freezing,
// unfreezing, essential-cycle relaxation and answer production. Owns its
// path store and search state; single-threaded. The sink is called
// synchronously and must not reenter the run.
class GtfRun {
public:
    GtfRun(const DataGraph& g, Query q, EngineOptions opts, AnswerSink sink, TraceFn trace = {});

    // One main-loop iteration; false when the queue is empty, top-k was
    // reached, or the queue cap aborted the run.
    bool step();
    // Loops step() and finalizes stats.
    RunStats run();

    // If marks[head(p)][keyword(p)] is visited, parks p in the frozen list
    // and returns true; otherwise returns false.
    bool freeze(PathId p);
    // Walks p first-to-last; marks each node in-answer for keyword(p) and
    // moves its frozen paths for that keyword back onto the queue.
    void unfreeze(PathId p);
    // For a parent already on p: does the segment from parent through its
    // next occurrence contain a node still marked visited for keyword(p)?
    bool is_essential(NodeId parent, PathId p) const;

    const PathStore& store() const { return store_; }
    const RunStats& stats() const { return stats_; }
    Mark mark(NodeId v, NodeId keyword) const;
    bool is_k_root(NodeId v) const { return is_k_root_[v]; }
    std::size_t frozen_count(NodeId v, NodeId keyword) const;
    std::span<const PathId> stored_paths(NodeId v, NodeId keyword) const;
    std::size_t queue_size() const { return queue_.size(); }
    bool done() const { return done_; }

private:
    int kidx(NodeId keyword) const;
    std::size_t slot(NodeId v, int k) const { return static_cast<std::size_t>(v) * nk_ + k; }
    void insert_queue(PathId p, bool unfrozen);
    void discover_root(NodeId v);
    void produce_answers(NodeId v, PathId trigger);
    void finalize();

    const DataGraph& g_;
    Query query_;
    EngineOptions opts_;
    AnswerSink sink_;
    TraceFn trace_;
    PathStore store_;
    std::size_t nk_;

    std::vector<Mark> marks_;                   // node * nk + kidx
    std::vector<std::vector<PathId>> frozen_;   // node * nk + kidx
    std::vector<std::vector<PathId>> paths_;    // node * nk + kidx
    std::vector<bool> is_k_root_;
    std::vector<int> kidx_of_;                  // node -> keyword index or -1
    detail::PathQueue queue_;
    std::uint64_t next_seq_ = 0;
    std::uint64_t next_rank_ = 1;
    Weight max_pop_weight_ = 0;
    Weight max_pop_weight_before_ = 0;  // max over strictly earlier iterations
    bool popped_any_ = false;
    bool done_ = false;
    RunStats stats_;
};

// The baseline generalized-Dijkstra enumerator: all simple paths to each
// keyword by increasing weight, no freezing, same answer production.
class NaiveRun {
public:
    NaiveRun(const DataGraph& g, Query q, EngineOptions opts, AnswerSink sink, TraceFn trace = {});

    bool step();
    RunStats run();

    const PathStore& store() const { return store_; }
    const RunStats& stats() const { return stats_; }
    bool is_k_root(NodeId v) const { return is_k_root_[v]; }
    std::span<const PathId> stored_paths(NodeId v, NodeId keyword) const;
    std::size_t queue_size() const { return queue_.size(); }
    bool done() const { return done_; }

private:
    int kidx(NodeId keyword) const;
    std::size_t slot(NodeId v, int k) const { return static_cast<std::size_t>(v) * nk_ + k; }
    void insert_queue(PathId p);
    void produce_answers(NodeId v, PathId trigger);
    void finalize();

    const DataGraph& g_;
    Query query_;
    EngineOptions opts_;
    AnswerSink sink_;
    TraceFn trace_;
    PathStore store_;
    std::size_t nk_;

    std::vector<std::vector<PathId>> paths_;
    std::vector<std::uint8_t> first_pop_seen_;  // node * nk + kidx
    std::vector<bool> is_k_root_;
    std::vector<int> kidx_of_;
    detail::PathQueue queue_;
    std::uint64_t next_seq_ = 0;
    std::uint64_t next_rank_ = 1;
    Weight max_pop_weight_ = 0;
    Weight max_pop_weight_before_ = 0;
    bool popped_any_ = false;
    bool done_ = false;
    RunStats stats_;
};

RunStats run_gtf(const DataGraph& g, const Query& q, const EngineOptions& opts, AnswerSink sink,
                 TraceFn trace = {});
RunStats run_naive(const DataGraph& g, const Query& q, const EngineOptions& opts, AnswerSink sink,
                   TraceFn trace = {});

}  // namespace gtf

#endif
