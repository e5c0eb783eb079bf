#ifndef GTF_ANSWER_HPP
#define GTF_ANSWER_HPP

#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "gtf/common.hpp"
#include "gtf/datagraph.hpp"
#include "gtf/pathstore.hpp"

namespace gtf {

// A rooted subtree whose leaves are exactly the query keywords. height is
// the maximum weight over root->keyword paths; total_weight sums distinct
// nodes and edges. Emission order across a run is nondecreasing in height.
struct Answer {
    NodeId root = kNoNode;
    std::vector<std::pair<NodeId, NodeId>> edges;  // first-appearance order
    std::vector<NodeId> keywords;                  // query keywords, query order
    Weight height = 0;
    Weight total_weight = 0;
    int root_children = 0;
    std::uint64_t rank = 0;

    // Sorted edge list; answer identity for set comparisons.
    std::vector<std::pair<NodeId, NodeId>> canonical_edges() const;
};

// Unions one path per keyword into a tree. All paths must share the same
// head (throws GtfError otherwise) and be acyclic. Returns nullopt when some
// node would acquire two distinct incoming edges, i.e. the union is not a
// tree. The root_children count is left for the caller's redundancy test.
std::optional<Answer> combine_to_tree(const DataGraph& g, const PathStore& store,
                                      std::span<const PathId> combo,
                                      std::span<const NodeId> keywords);

}  // namespace gtf

#endif
