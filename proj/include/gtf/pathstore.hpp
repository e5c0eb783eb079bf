#ifndef GTF_PATHSTORE_HPP
#define GTF_PATHSTORE_HPP

#include <iosfwd>
#include <unordered_map>
#include <vector>

#include "gtf/common.hpp"
#include "gtf/datagraph.hpp"

namespace gtf {

using PathId = std::uint32_t;
constexpr PathId kNoPath = UINT32_MAX;

// One backward-built path. head is the path's first node; suffix points to
// the rest of the path (the "tree of paths"), ending at a singleton whose
// head is the target keyword. weight sums all node and edge weights.
struct PathRecord {
    NodeId head;
    PathId suffix;       // kNoPath for a singleton
    NodeId keyword;      // last node of the path
    Weight weight;
    std::uint32_t length;
    bool cyclic;         // some node occurs twice
};

// Arena of immutable, suffix-shared path records. Extension is memoized per
// (parent, suffix), so a record handle identifies a path uniquely. Records
// live until the store is destroyed; a store belongs to a single run.
class PathStore {
public:
    // Path consisting of the single keyword node k.
    PathId singleton(const DataGraph& g, NodeId k);

    // The extension parent -> p. Requires the edge (parent, head(p)).
    PathId extend(const DataGraph& g, NodeId parent, PathId p);
    // Same, with the edge weight already in hand (used by the relax loops).
    PathId extend(const DataGraph& g, NodeId parent, Weight edge_weight, PathId p);

    const PathRecord& rec(PathId p) const { return records_[p]; }
    std::size_t size() const { return records_.size(); }
    std::uint32_t max_length() const { return max_length_; }

    // Nodes from first to last (ending at the keyword).
    std::vector<NodeId> nodes(PathId p) const;
    bool contains(PathId p, NodeId v) const;
    bool is_acyclic(PathId p) const { return !records_[p].cyclic; }

    // Debug dump, one path per line: weight<TAB>node1->node2->...->keyword
    void dump(std::ostream& out, const DataGraph& g) const;
    std::string format(const DataGraph& g, PathId p) const;

private:
    // Records longer than this get a cached node-membership bitmap; shorter
    // ones are just walked. Correctness never depends on the cache.
    static constexpr std::uint32_t kWalkLimit = 32;

    std::vector<PathRecord> records_;
    std::unordered_map<std::uint64_t, PathId> extend_memo_;
    std::unordered_map<NodeId, PathId> singleton_memo_;
    mutable std::unordered_map<PathId, std::vector<bool>> node_set_cache_;
    std::uint32_t max_length_ = 0;

    PathId push(PathRecord r);
};

}  // namespace gtf

#endif
