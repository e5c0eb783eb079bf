#ifndef GTF_DATAGRAPH_HPP
#define GTF_DATAGRAPH_HPP

#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "gtf/common.hpp"

namespace gtf {

struct ParentEdge {
    NodeId parent;
    Weight weight;
};

struct ChildEdge {
    NodeId child;
    Weight weight;
};

struct EdgeRec {
    NodeId src;
    NodeId dst;
    Weight weight;
};

// Immutable weighted directed data graph. Keyword nodes carry only incoming
// edges; a keyword-index maps each token to its dedicated node. The parents
// index (transpose adjacency) drives the backward path construction.
// Safe to share across concurrent query runs once built.
class DataGraph {
public:
    NodeId node_count() const { return static_cast<NodeId>(nodes_.size()); }
    std::size_t edge_count() const { return edges_.size(); }

    const std::string& id_of(NodeId v) const { return nodes_[v].id; }
    const std::string& text_of(NodeId v) const { return nodes_[v].text; }
    Weight node_weight(NodeId v) const { return nodes_[v].weight; }
    bool is_keyword(NodeId v) const { return nodes_[v].keyword; }

    std::span<const ParentEdge> parents(NodeId v) const { return parents_[v]; }
    std::span<const ChildEdge> children(NodeId v) const { return children_[v]; }
    const std::vector<EdgeRec>& edges() const { return edges_; }

    std::optional<NodeId> find_node(const std::string& id) const;
    // Token -> keyword node, if that token has a dedicated node.
    std::optional<NodeId> keyword_node(const std::string& token) const;
    std::optional<Weight> edge_weight(NodeId src, NodeId dst) const;

    const std::unordered_map<std::string, NodeId>& keyword_index() const { return keyword_index_; }

private:
    friend class GraphBuilder;

    struct NodeRec {
        std::string id;
        std::string text;
        Weight weight = 0;
        bool keyword = false;
    };

    std::vector<NodeRec> nodes_;
    std::vector<EdgeRec> edges_;
    std::vector<std::vector<ParentEdge>> parents_;
    std::vector<std::vector<ChildEdge>> children_;
    std::unordered_map<std::string, NodeId> id_index_;
    std::unordered_map<std::string, NodeId> keyword_index_;
    std::unordered_map<std::uint64_t, Weight> edge_lookup_;
};

// Accumulates nodes and edges, then validates and freezes them into a
// DataGraph. Node ids are assigned densely in insertion order, so loading
// the same document twice yields identical graphs.
class GraphBuilder {
public:
    NodeId add_node(std::string id, std::string text, Weight weight, bool keyword = false);
    void add_edge(const std::string& src_id, const std::string& dst_id, Weight weight);
    void add_edge(NodeId src, NodeId dst, Weight weight);
    DataGraph build();

private:
    DataGraph g_;
    std::vector<std::string> errors_;
};

struct KeywordConfig {
    Weight keyword_node_weight = 1000;
    Weight keyword_edge_weight = 1000;
};

// A query is a set of at least two keyword nodes; order here is the
// deduplicated input order and fixes the iteration order of the engines.
struct Query {
    std::vector<NodeId> keywords;

    std::size_t size() const { return keywords.size(); }
};

// Loads the JSON graph document. Errors: malformed document, duplicate node
// id, dangling edge endpoint, duplicate edge, non-positive weight.
DataGraph load_graph(const std::string& json_text);
DataGraph load_graph_file(const std::string& path);

// Adds one keyword node per distinct text token and an edge from every node
// containing the token. Idempotent: existing keyword nodes and edges are
// reused, never duplicated.
DataGraph augment_keywords(const DataGraph& g, const KeywordConfig& cfg = {});

// Resolves tokens to keyword nodes, deduplicating. Requires at least two
// distinct resolved keywords.
Query resolve_query(const DataGraph& g, std::span<const std::string> tokens);

// Structural and weight checks on a built graph; returns one message per
// violation. validate() throws with all of them joined.
std::vector<std::string> collect_violations(const DataGraph& g);
void validate(const DataGraph& g);

// Document-level checks that run before construction, so problems like zero
// weights and dangling edges are all reported rather than only the first.
std::vector<std::string> collect_document_violations(const std::string& json_text);

}  // namespace gtf

#endif
