#include "gtf/answer.hpp"

#include <algorithm>
#include <unordered_map>

namespace gtf {

std::vector<std::pair<NodeId, NodeId>> Answer::canonical_edges() const {
    auto sorted = edges;
    std::sort(sorted.begin(), sorted.end());
    return sorted;
}

std::optional<Answer> combine_to_tree(const DataGraph& g, const PathStore& store,
                                      std::span<const PathId> combo,
                                      std::span<const NodeId> keywords) {
    if (combo.empty()) throw GtfError("combine_to_tree: empty combination");
    NodeId root = store.rec(combo.front()).head;
    for (PathId p : combo)
        if (store.rec(p).head != root)
            throw GtfError("combine_to_tree: paths have differing heads");

    Answer a;
    a.root = root;
    a.keywords.assign(keywords.begin(), keywords.end());
    std::unordered_map<NodeId, NodeId> parent_of;
    a.height = 0;
    for (PathId p : combo) {
        const PathRecord& rec = store.rec(p);
        a.height = std::max(a.height, rec.weight);
        auto seq = store.nodes(p);
        for (std::size_t i = 0; i + 1 < seq.size(); ++i) {
            NodeId u = seq[i], v = seq[i + 1];
            if (v == root) return std::nullopt;  // an edge back into the root
            auto [it, inserted] = parent_of.emplace(v, u);
            if (inserted) {
                a.edges.emplace_back(u, v);
            } else if (it->second != u) {
                return std::nullopt;  // v would get two distinct incoming edges
            }
        }
    }

    a.total_weight = g.node_weight(root);
    for (auto [u, v] : a.edges) {
        a.total_weight += g.node_weight(v) + *g.edge_weight(u, v);
        if (u == root) ++a.root_children;
    }
    return a;
}

}  // namespace gtf
