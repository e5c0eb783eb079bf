#ifndef GTF_ORACLE_HPP
#define GTF_ORACLE_HPP

#include <iosfwd>
#include <span>
#include <utility>
#include <vector>

#include "gtf/answer.hpp"
#include "gtf/common.hpp"
#include "gtf/datagraph.hpp"
#include "gtf/pathstore.hpp"

namespace gtf {

// Exhaustive enumeration is exponential; graphs beyond this many nodes are
// rejected outright rather than silently truncated.
constexpr std::size_t kOracleNodeGuard = 14;

struct OracleReport {
    std::vector<Answer> answers;              // sorted (height, weight, edges)
    std::vector<std::vector<Weight>> dist;    // [kidx][node], kUnreachable if none
    std::vector<std::pair<NodeId, Weight>> best_heights;  // K-roots, by node id
};

// Every simple path from v to the keyword k, found by DFS with on-path
// marking. Paths are materialized in the given store.
std::vector<PathId> all_simple_paths(const DataGraph& g, PathStore& store, NodeId from,
                                     NodeId keyword, std::size_t node_guard = kOracleNodeGuard);

// Ground truth for small instances: for every node, every combination of one
// simple path per keyword is union-ed and kept when it forms a tree whose
// root has at least two children. The tree assembly here is deliberately
// independent of combine_to_tree.
OracleReport enumerate_all_answers(const DataGraph& g, const Query& q,
                                   std::size_t node_guard = kOracleNodeGuard);

// Single-source Dijkstra on the transpose graph from each keyword; distances
// include both endpoint node weights, so dist(k, k) = node weight of k.
std::vector<std::vector<Weight>> min_dist(const DataGraph& g, std::span<const NodeId> keywords);

// Max over keywords of the minimal-path weight from r; kUnreachable when
// some keyword cannot be reached.
Weight best_height(const DataGraph& g, NodeId r, const Query& q);

// JSON serialization for golden-file tests.
void write_report_json(std::ostream& out, const DataGraph& g, const Query& q,
                       const OracleReport& report);

}  // namespace gtf

#endif
