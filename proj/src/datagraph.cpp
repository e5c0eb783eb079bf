#include "gtf/datagraph.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>
#include <unordered_set>

#include <json.hpp>

namespace gtf {

namespace {

std::uint64_t edge_key(NodeId src, NodeId dst) {
    return (static_cast<std::uint64_t>(src) << 32) | dst;
}

// Token a declared keyword node answers for: its id, minus an optional
// "kw:" prefix, lowercased. Must reduce to a single token.
std::string keyword_token(const std::string& id) {
    std::string_view body = id;
    if (body.starts_with("kw:")) body.remove_prefix(3);
    auto tokens = tokenize(body);
    if (tokens.size() != 1)
        throw GtfError("keyword node id does not name a single token: '" + id + "'");
    return tokens.front();
}

Weight weight_from_json(const nlohmann::json& j, const std::string& what) {
    if (j.is_string()) return parse_weight(j.get<std::string>());
    if (j.is_number_integer()) {
        auto v = j.get<std::int64_t>();
        if (v < 0) throw GtfError("malformed weight: negative " + what);
        return v * 1000;
    }
    throw GtfError("malformed weight on " + what + ": expected decimal string");
}

}  // namespace

std::optional<NodeId> DataGraph::find_node(const std::string& id) const {
    auto it = id_index_.find(id);
    if (it == id_index_.end()) return std::nullopt;
    return it->second;
}

std::optional<NodeId> DataGraph::keyword_node(const std::string& token) const {
    auto it = keyword_index_.find(token);
    if (it == keyword_index_.end()) return std::nullopt;
    return it->second;
}

std::optional<Weight> DataGraph::edge_weight(NodeId src, NodeId dst) const {
    auto it = edge_lookup_.find(edge_key(src, dst));
    if (it == edge_lookup_.end()) return std::nullopt;
    return it->second;
}

NodeId GraphBuilder::add_node(std::string id, std::string text, Weight weight, bool keyword) {
    if (g_.id_index_.count(id)) throw GtfError("duplicate node id: '" + id + "'");
    NodeId v = static_cast<NodeId>(g_.nodes_.size());
    if (keyword) {
        std::string token = keyword_token(id);
        if (g_.keyword_index_.count(token))
            throw GtfError("duplicate keyword token: '" + token + "'");
        g_.keyword_index_.emplace(std::move(token), v);
    }
    g_.id_index_.emplace(id, v);
    g_.nodes_.push_back({std::move(id), std::move(text), weight, keyword});
    return v;
}

void GraphBuilder::add_edge(const std::string& src_id, const std::string& dst_id, Weight weight) {
    auto src = g_.find_node(src_id);
    auto dst = g_.find_node(dst_id);
    if (!src) throw GtfError("dangling edge: unknown src node '" + src_id + "'");
    if (!dst) throw GtfError("dangling edge: unknown dst node '" + dst_id + "'");
    add_edge(*src, *dst, weight);
}

void GraphBuilder::add_edge(NodeId src, NodeId dst, Weight weight) {
    if (src >= g_.nodes_.size() || dst >= g_.nodes_.size())
        throw GtfError("dangling edge: node id out of range");
    std::uint64_t key = edge_key(src, dst);
    if (g_.edge_lookup_.count(key))
        throw GtfError("duplicate edge: " + g_.nodes_[src].id + " -> " + g_.nodes_[dst].id);
    g_.edge_lookup_.emplace(key, weight);
    g_.edges_.push_back({src, dst, weight});
}

DataGraph GraphBuilder::build() {
    if (g_.nodes_.empty()) throw GtfError("no nodes");
    for (const auto& n : g_.nodes_)
        if (n.weight <= 0) throw GtfError("non-positive weight on node '" + n.id + "'");
    for (const auto& e : g_.edges_) {
        if (e.weight <= 0)
            throw GtfError("non-positive weight on edge " + g_.nodes_[e.src].id + " -> " +
                           g_.nodes_[e.dst].id);
        if (g_.nodes_[e.src].keyword)
            throw GtfError("keyword node '" + g_.nodes_[e.src].id + "' has an outgoing edge");
    }
    g_.parents_.assign(g_.nodes_.size(), {});
    g_.children_.assign(g_.nodes_.size(), {});
    for (const auto& e : g_.edges_) {
        g_.parents_[e.dst].push_back({e.src, e.weight});
        g_.children_[e.src].push_back({e.dst, e.weight});
    }
    return std::move(g_);
}

DataGraph load_graph(const std::string& json_text) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(json_text);
    } catch (const nlohmann::json::exception& e) {
        throw GtfError(std::string("malformed graph document: ") + e.what());
    }
    if (!doc.is_object() || !doc.contains("nodes") || !doc["nodes"].is_array())
        throw GtfError("malformed graph document: missing nodes array");

    GraphBuilder b;
    for (const auto& n : doc["nodes"]) {
        if (!n.is_object() || !n.contains("id") || !n["id"].is_string())
            throw GtfError("malformed graph document: node without string id");
        std::string id = n["id"].get<std::string>();
        std::string text = n.value("text", std::string{});
        bool keyword = n.value("keyword", false);
        Weight w = n.contains("weight") ? weight_from_json(n["weight"], "node '" + id + "'")
                                        : 1000;
        b.add_node(std::move(id), std::move(text), w, keyword);
    }
    if (doc.contains("edges")) {
        if (!doc["edges"].is_array()) throw GtfError("malformed graph document: edges not array");
        for (const auto& e : doc["edges"]) {
            if (!e.is_object() || !e.contains("src") || !e.contains("dst"))
                throw GtfError("malformed graph document: edge without src/dst");
            std::string src = e["src"].get<std::string>();
            std::string dst = e["dst"].get<std::string>();
            Weight w = e.contains("weight")
                           ? weight_from_json(e["weight"], "edge " + src + " -> " + dst)
                           : 1000;
            b.add_edge(src, dst, w);
        }
    }
    return b.build();
}

DataGraph load_graph_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw GtfError("cannot open graph file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return load_graph(buf.str());
}

DataGraph augment_keywords(const DataGraph& g, const KeywordConfig& cfg) {
    if (cfg.keyword_node_weight <= 0 || cfg.keyword_edge_weight <= 0)
        throw GtfError("keyword config weights must be positive");

    GraphBuilder b;
    for (NodeId v = 0; v < g.node_count(); ++v)
        b.add_node(g.id_of(v), g.text_of(v), g.node_weight(v), g.is_keyword(v));
    for (const auto& e : g.edges()) b.add_edge(e.src, e.dst, e.weight);

    // Partially built graph: the builder's target is inspected through a
    // local copy of the keyword index we maintain alongside it.
    std::unordered_map<std::string, NodeId> kw_index = g.keyword_index();
    std::unordered_set<std::uint64_t> have_edge;
    for (const auto& e : g.edges()) have_edge.insert(edge_key(e.src, e.dst));

    for (NodeId v = 0; v < g.node_count(); ++v) {
        if (g.is_keyword(v)) continue;  // keywords own no outgoing edges
        std::unordered_set<std::string> seen;
        for (auto& token : tokenize(g.text_of(v))) {
            if (!seen.insert(token).second) continue;
            NodeId kw;
            auto it = kw_index.find(token);
            if (it != kw_index.end()) {
                kw = it->second;
            } else {
                std::string id = token;
                // A base node may already use the bare token as its id.
                if (g.find_node(id)) id = "kw:" + token;
                kw = b.add_node(std::move(id), "", cfg.keyword_node_weight, true);
                kw_index.emplace(token, kw);
            }
            if (have_edge.insert(edge_key(v, kw)).second)
                b.add_edge(v, kw, cfg.keyword_edge_weight);
        }
    }
    return b.build();
}

Query resolve_query(const DataGraph& g, std::span<const std::string> tokens) {
    if (tokens.empty()) throw GtfError("query must have at least two keywords");
    Query q;
    for (const auto& raw : tokens) {
        auto parts = tokenize(raw);
        if (parts.size() != 1) throw GtfError("keyword not found: " + raw);
        auto kw = g.keyword_node(parts.front());
        if (!kw) throw GtfError("keyword not found: " + parts.front());
        if (std::find(q.keywords.begin(), q.keywords.end(), *kw) == q.keywords.end())
            q.keywords.push_back(*kw);
    }
    if (q.keywords.size() < 2) throw GtfError("query must have at least two keywords");
    return q;
}

std::vector<std::string> collect_violations(const DataGraph& g) {
    std::vector<std::string> out;
    for (NodeId v = 0; v < g.node_count(); ++v)
        if (g.node_weight(v) <= 0)
            out.push_back("non-positive weight on node '" + g.id_of(v) + "'");
    for (const auto& e : g.edges()) {
        if (e.src >= g.node_count() || e.dst >= g.node_count()) {
            out.push_back("dangling edge");
            continue;
        }
        if (e.weight <= 0)
            out.push_back("non-positive weight on edge " + g.id_of(e.src) + " -> " +
                          g.id_of(e.dst));
        if (g.is_keyword(e.src))
            out.push_back("keyword node '" + g.id_of(e.src) + "' has an outgoing edge");
    }
    // Transpose consistency.
    std::size_t parent_entries = 0;
    for (NodeId v = 0; v < g.node_count(); ++v) {
        parent_entries += g.parents(v).size();
        for (const auto& pe : g.parents(v)) {
            auto w = g.edge_weight(pe.parent, v);
            if (!w || *w != pe.weight)
                out.push_back("parents index disagrees with edge list at " + g.id_of(pe.parent) +
                              " -> " + g.id_of(v));
        }
    }
    if (parent_entries != g.edge_count())
        out.push_back("parents index size disagrees with edge list");
    // Keyword coverage: a node containing an indexed token must point at it.
    for (NodeId v = 0; v < g.node_count(); ++v) {
        if (g.is_keyword(v)) continue;
        for (auto& token : tokenize(g.text_of(v))) {
            auto kw = g.keyword_node(token);
            if (kw && !g.edge_weight(v, *kw))
                out.push_back("node '" + g.id_of(v) + "' contains token '" + token +
                              "' but has no edge to its keyword node");
        }
    }
    return out;
}

void validate(const DataGraph& g) {
    auto violations = collect_violations(g);
    if (violations.empty()) return;
    std::string msg = "graph validation failed:";
    for (const auto& v : violations) msg += "\n  " + v;
    throw GtfError(msg);
}

std::vector<std::string> collect_document_violations(const std::string& json_text) {
    std::vector<std::string> out;
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(json_text);
    } catch (const nlohmann::json::exception& e) {
        out.push_back(std::string("malformed graph document: ") + e.what());
        return out;
    }
    if (!doc.is_object() || !doc.contains("nodes") || !doc["nodes"].is_array()) {
        out.push_back("malformed graph document: missing nodes array");
        return out;
    }
    std::unordered_set<std::string> ids;
    std::unordered_set<std::string> keyword_ids;
    for (const auto& n : doc["nodes"]) {
        if (!n.is_object() || !n.contains("id") || !n["id"].is_string()) {
            out.push_back("node without string id");
            continue;
        }
        std::string id = n["id"].get<std::string>();
        if (!ids.insert(id).second) out.push_back("duplicate node id: '" + id + "'");
        if (n.value("keyword", false)) keyword_ids.insert(id);
        if (n.contains("weight")) {
            try {
                if (weight_from_json(n["weight"], "node '" + id + "'") <= 0)
                    out.push_back("non-positive weight on node '" + id + "'");
            } catch (const GtfError& e) {
                out.push_back(e.what());
            }
        }
    }
    if (ids.empty()) out.push_back("no nodes");
    if (doc.contains("edges") && doc["edges"].is_array()) {
        std::unordered_set<std::string> seen_edges;
        for (const auto& e : doc["edges"]) {
            if (!e.is_object() || !e.contains("src") || !e.contains("dst")) {
                out.push_back("edge without src/dst");
                continue;
            }
            std::string src = e["src"].get<std::string>();
            std::string dst = e["dst"].get<std::string>();
            if (!ids.count(src)) out.push_back("dangling edge: unknown src node '" + src + "'");
            if (!ids.count(dst)) out.push_back("dangling edge: unknown dst node '" + dst + "'");
            if (!seen_edges.insert(src + "\x1f" + dst).second)
                out.push_back("duplicate edge: " + src + " -> " + dst);
            if (keyword_ids.count(src))
                out.push_back("keyword node '" + src + "' has an outgoing edge");
            if (e.contains("weight")) {
                try {
                    if (weight_from_json(e["weight"], "edge " + src + " -> " + dst) <= 0)
                        out.push_back("non-positive weight on edge " + src + " -> " + dst);
                } catch (const GtfError& ex) {
                    out.push_back(ex.what());
                }
            }
        }
    }
    return out;
}

}  // namespace gtf
