#include "gtf/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <unordered_map>
#include <unordered_set>

#include "gtf/oracle.hpp"

namespace gtf {

StrippedAnswer strip_keyword_nodes(const DataGraph& g, const Answer& a) {
    StrippedAnswer out;
    out.root = a.root;
    for (auto [u, v] : a.edges)
        if (!g.is_keyword(v)) out.edges.emplace_back(u, v);
    return out;
}

double MissReport::distinct_root_pct() const {
    return total == 0 ? 0.0 : 100.0 * static_cast<double>(distinct_root_missed) / total;
}

double MissReport::nonminimal_pct() const {
    return total == 0 ? 0.0 : 100.0 * static_cast<double>(nonminimal_missed) / total;
}

std::vector<bool> distinct_root_filter(std::span<const Answer> answers) {
    std::vector<bool> missed(answers.size(), false);
    std::unordered_set<NodeId> seen_roots;
    for (std::size_t i = 0; i < answers.size(); ++i)
        missed[i] = !seen_roots.insert(answers[i].root).second;
    return missed;
}

std::vector<bool> minimal_paths_filter(const DataGraph& g, std::span<const Answer> answers) {
    std::vector<bool> missed(answers.size(), false);
    if (answers.empty()) return missed;
    auto dist = min_dist(g, answers.front().keywords);

    for (std::size_t i = 0; i < answers.size(); ++i) {
        const Answer& a = answers[i];
        std::unordered_map<NodeId, NodeId> parent_of;
        for (auto [u, v] : a.edges) parent_of.emplace(v, u);
        // Weight of the unique tree path from the root to each keyword,
        // compared against the graph-wide minimal distance.
        for (std::size_t ki = 0; ki < a.keywords.size() && !missed[i]; ++ki) {
            Weight w = g.node_weight(a.keywords[ki]);
            NodeId cur = a.keywords[ki];
            while (cur != a.root) {
                NodeId parent = parent_of.at(cur);
                w += *g.edge_weight(parent, cur) + g.node_weight(parent);
                cur = parent;
            }
            if (w > dist[ki][a.root]) missed[i] = true;
        }
    }
    return missed;
}

MissReport miss_report(const DataGraph& g, std::span<const Answer> answers) {
    MissReport report;
    report.total = answers.size();
    report.distinct_root_flags = distinct_root_filter(answers);
    report.nonminimal_flags = minimal_paths_filter(g, answers);
    report.distinct_root_missed = static_cast<std::size_t>(std::count(
        report.distinct_root_flags.begin(), report.distinct_root_flags.end(), true));
    report.nonminimal_missed = static_cast<std::size_t>(
        std::count(report.nonminimal_flags.begin(), report.nonminimal_flags.end(), true));
    return report;
}

double cv(std::span<const double> samples) {
    if (samples.empty()) throw GtfError("cv: empty sample");
    double mean = 0.0;
    for (double s : samples) mean += s;
    mean /= static_cast<double>(samples.size());
    if (mean == 0.0) return 0.0;
    double var = 0.0;
    for (double s : samples) var += (s - mean) * (s - mean);
    var /= static_cast<double>(samples.size());  // population variance
    return std::sqrt(var) / mean;
}

double speedup(const RunStats& base, const RunStats& other) {
    if (base.wall_time_ns <= 0) throw GtfError("speedup: base wall time must be positive");
    if (other.wall_time_ns <= 0) throw GtfError("speedup: other wall time must be positive");
    return static_cast<double>(base.wall_time_ns) / static_cast<double>(other.wall_time_ns);
}

}  // namespace gtf
