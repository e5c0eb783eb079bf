#include "gtf/pathstore.hpp"

#include <ostream>

namespace gtf {

namespace {
std::uint64_t memo_key(NodeId parent, PathId suffix) {
    return (static_cast<std::uint64_t>(parent) << 32) | suffix;
}
}  // namespace

PathId PathStore::push(PathRecord r) {
    records_.push_back(r);
    if (r.length > max_length_) max_length_ = r.length;
    return static_cast<PathId>(records_.size() - 1);
}

PathId PathStore::singleton(const DataGraph& g, NodeId k) {
    if (!g.is_keyword(k)) throw GtfError("not a keyword node: '" + g.id_of(k) + "'");
    auto it = singleton_memo_.find(k);
    if (it != singleton_memo_.end()) return it->second;
    PathId id = push({k, kNoPath, k, g.node_weight(k), 1, false});
    singleton_memo_.emplace(k, id);
    return id;
}

PathId PathStore::extend(const DataGraph& g, NodeId parent, PathId p) {
    auto w = g.edge_weight(parent, records_[p].head);
    if (!w)
        throw GtfError("no edge " + g.id_of(parent) + " -> " + g.id_of(records_[p].head));
    return extend(g, parent, *w, p);
}

PathId PathStore::extend(const DataGraph& g, NodeId parent, Weight edge_weight, PathId p) {
    auto it = extend_memo_.find(memo_key(parent, p));
    if (it != extend_memo_.end()) return it->second;
    const PathRecord& suf = records_[p];
    PathRecord r{parent,
                 p,
                 suf.keyword,
                 suf.weight + edge_weight + g.node_weight(parent),
                 suf.length + 1,
                 suf.cyclic || contains(p, parent)};
    PathId id = push(r);
    extend_memo_.emplace(memo_key(parent, p), id);
    return id;
}

std::vector<NodeId> PathStore::nodes(PathId p) const {
    std::vector<NodeId> out;
    out.reserve(records_[p].length);
    for (PathId cur = p; cur != kNoPath; cur = records_[cur].suffix)
        out.push_back(records_[cur].head);
    return out;
}

bool PathStore::contains(PathId p, NodeId v) const {
    if (records_[p].length <= kWalkLimit) {
        for (PathId cur = p; cur != kNoPath; cur = records_[cur].suffix)
            if (records_[cur].head == v) return true;
        return false;
    }
    auto it = node_set_cache_.find(p);
    if (it == node_set_cache_.end()) {
        std::vector<bool> set;
        for (PathId cur = p; cur != kNoPath; cur = records_[cur].suffix) {
            NodeId h = records_[cur].head;
            if (h >= set.size()) set.resize(h + 1, false);
            set[h] = true;
        }
        it = node_set_cache_.emplace(p, std::move(set)).first;
    }
    const auto& set = it->second;
    return v < set.size() && set[v];
}

std::string PathStore::format(const DataGraph& g, PathId p) const {
    std::string out = format_weight(records_[p].weight);
    out += '\t';
    bool first = true;
    for (NodeId v : nodes(p)) {
        if (!first) out += "->";
        out += g.id_of(v);
        first = false;
    }
    return out;
}

void PathStore::dump(std::ostream& out, const DataGraph& g) const {
    for (PathId p = 0; p < records_.size(); ++p) out << format(g, p) << '\n';
}

}  // namespace gtf
