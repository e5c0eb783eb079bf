#ifndef GTF_ANALYSIS_HPP
#define GTF_ANALYSIS_HPP

#include <span>
#include <string>
#include <utility>
#include <vector>

#include "gtf/answer.hpp"
#include "gtf/common.hpp"
#include "gtf/datagraph.hpp"
#include "gtf/engine.hpp"

namespace gtf {

// Answer with keyword leaves and their incident edges removed, leaving the
// structure comparable across systems that do not materialize keyword nodes.
struct StrippedAnswer {
    NodeId root = kNoNode;
    std::vector<std::pair<NodeId, NodeId>> edges;  // may be empty
};

StrippedAnswer strip_keyword_nodes(const DataGraph& g, const Answer& a);

struct MissReport {
    std::size_t total = 0;
    std::size_t distinct_root_missed = 0;
    std::size_t nonminimal_missed = 0;
    std::vector<bool> distinct_root_flags;  // per answer, emission order
    std::vector<bool> nonminimal_flags;

    double distinct_root_pct() const;
    double nonminimal_pct() const;
};

// Flags every answer whose root already appeared earlier in the list; these
// are the answers a one-answer-per-root system cannot produce.
std::vector<bool> distinct_root_filter(std::span<const Answer> answers);

// Flags every answer containing a non-minimal root-to-keyword path; these
// are the answers a shortest-paths-only system cannot produce.
std::vector<bool> minimal_paths_filter(const DataGraph& g, std::span<const Answer> answers);

MissReport miss_report(const DataGraph& g, std::span<const Answer> answers);

// Coefficient of variation: population standard deviation over mean.
// Throws on an empty sample.
double cv(std::span<const double> samples);

// base time / other time.
double speedup(const RunStats& base, const RunStats& other);

struct BenchRecord {
    std::string engine;
    std::string query_id;
    std::size_t query_size = 0;
    std::size_t top_k = 0;
    std::vector<double> times_s;  // measured repeats, warm-up excluded
    double mean_s = 0.0;
    double cv_value = 0.0;
    double speedup_vs_base = 1.0;
    bool error = false;
    std::string error_message;
};

}  // namespace gtf

#endif
