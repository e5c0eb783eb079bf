#include "gtf/oracle.hpp"

#include <algorithm>
#include <map>
#include <ostream>
#include <queue>
#include <set>

namespace gtf {

namespace {

// Raw DFS enumeration used by both public oracle operations. Sequences run
// from the start node to the keyword.
void dfs_paths(const DataGraph& g, NodeId from, NodeId target, std::vector<NodeId>& stack,
               std::vector<bool>& on_path, std::vector<std::vector<NodeId>>& out) {
    stack.push_back(from);
    if (from == target) {
        out.push_back(stack);
        stack.pop_back();
        return;
    }
    on_path[from] = true;
    for (const ChildEdge& ce : g.children(from))
        if (!on_path[ce.child]) dfs_paths(g, ce.child, target, stack, on_path, out);
    on_path[from] = false;
    stack.pop_back();
}

std::vector<std::vector<NodeId>> raw_simple_paths(const DataGraph& g, NodeId from, NodeId target) {
    std::vector<std::vector<NodeId>> out;
    std::vector<NodeId> stack;
    std::vector<bool> on_path(g.node_count(), false);
    dfs_paths(g, from, target, stack, on_path, out);
    return out;
}

Weight sequence_weight(const DataGraph& g, const std::vector<NodeId>& seq) {
    Weight w = 0;
    for (std::size_t i = 0; i < seq.size(); ++i) {
        w += g.node_weight(seq[i]);
        if (i + 1 < seq.size()) w += *g.edge_weight(seq[i], seq[i + 1]);
    }
    return w;
}

void check_guard(const DataGraph& g, std::size_t node_guard) {
    if (g.node_count() > node_guard)
        throw GtfError("oracle size guard exceeded: " + std::to_string(g.node_count()) +
                       " nodes > " + std::to_string(node_guard));
}

// Combination counter safety valve; exhaustive enumeration is exponential
// and the oracle must fail loudly rather than spin.
constexpr std::uint64_t kComboGuard = 20'000'000;

}  // namespace

std::vector<PathId> all_simple_paths(const DataGraph& g, PathStore& store, NodeId from,
                                     NodeId keyword, std::size_t node_guard) {
    check_guard(g, node_guard);
    if (!g.is_keyword(keyword))
        throw GtfError("not a keyword node: '" + g.id_of(keyword) + "'");
    std::vector<PathId> out;
    for (const auto& seq : raw_simple_paths(g, from, keyword)) {
        PathId p = store.singleton(g, keyword);
        for (std::size_t i = seq.size() - 1; i-- > 0;) p = store.extend(g, seq[i], p);
        out.push_back(p);
    }
    return out;
}

std::vector<std::vector<Weight>> min_dist(const DataGraph& g, std::span<const NodeId> keywords) {
    std::vector<std::vector<Weight>> dist(keywords.size());
    for (std::size_t ki = 0; ki < keywords.size(); ++ki) {
        auto& d = dist[ki];
        d.assign(g.node_count(), kUnreachable);
        using Item = std::pair<Weight, NodeId>;
        std::priority_queue<Item, std::vector<Item>, std::greater<>> pq;
        d[keywords[ki]] = g.node_weight(keywords[ki]);
        pq.push({d[keywords[ki]], keywords[ki]});
        while (!pq.empty()) {
            auto [w, v] = pq.top();
            pq.pop();
            if (w != d[v]) continue;
            for (const ParentEdge& pe : g.parents(v)) {
                Weight cand = w + pe.weight + g.node_weight(pe.parent);
                if (d[pe.parent] == kUnreachable || cand < d[pe.parent]) {
                    d[pe.parent] = cand;
                    pq.push({cand, pe.parent});
                }
            }
        }
    }
    return dist;
}

Weight best_height(const DataGraph& g, NodeId r, const Query& q) {
    auto dist = min_dist(g, q.keywords);
    Weight best = 0;
    for (const auto& d : dist) {
        if (d[r] == kUnreachable) return kUnreachable;
        best = std::max(best, d[r]);
    }
    return best;
}

OracleReport enumerate_all_answers(const DataGraph& g, const Query& q, std::size_t node_guard) {
    check_guard(g, node_guard);
    OracleReport report;
    report.dist = min_dist(g, q.keywords);
    for (NodeId r = 0; r < g.node_count(); ++r) {
        bool root = true;
        Weight best = 0;
        for (const auto& d : report.dist) {
            if (d[r] == kUnreachable) {
                root = false;
                break;
            }
            best = std::max(best, d[r]);
        }
        if (root) report.best_heights.emplace_back(r, best);
    }

    const std::size_t nk = q.keywords.size();
    std::set<std::vector<std::pair<NodeId, NodeId>>> seen;
    std::uint64_t combos = 0;
    for (NodeId r = 0; r < g.node_count(); ++r) {
        std::vector<std::vector<std::vector<NodeId>>> per_kw(nk);
        bool reachable = true;
        for (std::size_t ki = 0; ki < nk && reachable; ++ki) {
            per_kw[ki] = raw_simple_paths(g, r, q.keywords[ki]);
            reachable = !per_kw[ki].empty();
        }
        if (!reachable) continue;

        std::vector<std::size_t> idx(nk, 0);
        for (;;) {
            if (++combos > kComboGuard) throw GtfError("oracle size guard exceeded: combinations");

            // Assemble the union from scratch; this stays independent of the
            // engines' combine path.
            std::map<NodeId, NodeId> parent_of;
            std::vector<std::pair<NodeId, NodeId>> edges;
            Weight height = 0;
            bool is_tree = true;
            for (std::size_t ki = 0; ki < nk && is_tree; ++ki) {
                const auto& seq = per_kw[ki][idx[ki]];
                height = std::max(height, sequence_weight(g, seq));
                for (std::size_t i = 0; i + 1 < seq.size(); ++i) {
                    NodeId u = seq[i], v = seq[i + 1];
                    if (v == r) {
                        is_tree = false;
                        break;
                    }
                    auto [it, inserted] = parent_of.emplace(v, u);
                    if (inserted) {
                        edges.emplace_back(u, v);
                    } else if (it->second != u) {
                        is_tree = false;
                        break;
                    }
                }
            }
            if (is_tree) {
                int root_children = 0;
                for (auto [u, v] : edges)
                    if (u == r) ++root_children;
                if (root_children >= 2) {
                    auto canon = edges;
                    std::sort(canon.begin(), canon.end());
                    if (seen.insert(canon).second) {
                        Answer a;
                        a.root = r;
                        a.edges = std::move(edges);
                        a.keywords = q.keywords;
                        a.height = height;
                        a.root_children = root_children;
                        a.total_weight = g.node_weight(r);
                        for (auto [u, v] : a.edges)
                            a.total_weight += g.node_weight(v) + *g.edge_weight(u, v);
                        report.answers.push_back(std::move(a));
                    }
                }
            }

            bool rolled_over = true;
            for (std::size_t ki = nk; ki-- > 0;) {
                if (++idx[ki] < per_kw[ki].size()) {
                    rolled_over = false;
                    break;
                }
                idx[ki] = 0;
            }
            if (rolled_over) break;
        }
    }

    std::sort(report.answers.begin(), report.answers.end(), [](const Answer& a, const Answer& b) {
        if (a.height != b.height) return a.height < b.height;
        if (a.total_weight != b.total_weight) return a.total_weight < b.total_weight;
        return a.canonical_edges() < b.canonical_edges();
    });
    for (std::size_t i = 0; i < report.answers.size(); ++i) report.answers[i].rank = i + 1;
    return report;
}

void write_report_json(std::ostream& out, const DataGraph& g, const Query& q,
                       const OracleReport& report) {
    out << "{\n  \"query\": [";
    for (std::size_t i = 0; i < q.keywords.size(); ++i)
        out << (i ? ", " : "") << '"' << g.id_of(q.keywords[i]) << '"';
    out << "],\n  \"answers\": [\n";
    for (std::size_t i = 0; i < report.answers.size(); ++i) {
        const Answer& a = report.answers[i];
        out << "    {\"root\": \"" << g.id_of(a.root) << "\", \"height\": \""
            << format_weight(a.height) << "\", \"weight\": \"" << format_weight(a.total_weight)
            << "\", \"edges\": [";
        auto canon = a.canonical_edges();
        for (std::size_t e = 0; e < canon.size(); ++e)
            out << (e ? ", " : "") << "[\"" << g.id_of(canon[e].first) << "\", \""
                << g.id_of(canon[e].second) << "\"]";
        out << "]}" << (i + 1 < report.answers.size() ? "," : "") << '\n';
    }
    out << "  ],\n  \"distances\": {\n";
    for (std::size_t ki = 0; ki < q.keywords.size(); ++ki) {
        out << "    \"" << g.id_of(q.keywords[ki]) << "\": {";
        bool first = true;
        for (NodeId v = 0; v < g.node_count(); ++v) {
            if (report.dist[ki][v] == kUnreachable) continue;
            out << (first ? "" : ", ") << '"' << g.id_of(v) << "\": \""
                << format_weight(report.dist[ki][v]) << '"';
            first = false;
        }
        out << '}' << (ki + 1 < q.keywords.size() ? "," : "") << '\n';
    }
    out << "  },\n  \"best_heights\": {";
    bool first = true;
    for (auto [v, h] : report.best_heights) {
        out << (first ? "" : ", ") << '"' << g.id_of(v) << "\": \"" << format_weight(h) << '"';
        first = false;
    }
    out << "}\n}\n";
}

}  // namespace gtf
