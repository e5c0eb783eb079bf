#include <chrono>
#include <fstream>
#include <iostream>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "gtf/analysis.hpp"
#include "gtf/datagraph.hpp"
#include "gtf/engine.hpp"
#include "gtf/generators.hpp"
#include "gtf/oracle.hpp"

namespace {

using nlohmann::ordered_json;

constexpr int kExitOk = 0;
constexpr int kExitDiff = 1;
constexpr int kExitInput = 2;
constexpr int kExitQueueCap = 3;

struct CommonOpts {
    std::string graph_path;
    std::string gen_spec;
    std::uint64_t seed = 1;
    std::string keywords_csv;
    std::size_t top_k = 0;
    std::string engine = "gtf";
    bool no_essential = false;
    std::size_t repeats = 2;
    std::string queries_path;
    std::string event_log_path;
    std::size_t queue_cap = 10'000'000;
    std::string format = "jsonl";
};

void add_graph_source(CLI::App* cmd, CommonOpts& o) {
    auto* graph = cmd->add_option("--graph", o.graph_path, "Graph JSON document");
    auto* gen = cmd->add_option("--gen", o.gen_spec, "Synthetic graph spec, e.g. lattice:500");
    graph->excludes(gen);
    cmd->add_option("--seed", o.seed, "Generator seed");
}

gtf::DataGraph load_source(const CommonOpts& o) {
    if (!o.gen_spec.empty()) return gtf::generate_graph(o.gen_spec, o.seed);
    if (o.graph_path.empty()) throw gtf::GtfError("either --graph or --gen is required");
    // Augmentation is idempotent, so documents that already declare their
    // keyword nodes pass through unchanged.
    return gtf::augment_keywords(gtf::load_graph_file(o.graph_path));
}

std::vector<std::string> split_csv(const std::string& csv) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : csv) {
        if (c == ',') {
            if (!cur.empty()) out.push_back(cur);
            cur.clear();
        } else {
            cur += c;
        }
    }
    if (!cur.empty()) out.push_back(cur);
    return out;
}

gtf::EngineOptions engine_options(const CommonOpts& o) {
    gtf::EngineOptions opts;
    opts.top_k = o.top_k;
    opts.queue_cap = o.queue_cap;
    opts.essentiality = !o.no_essential;
    return opts;
}

ordered_json answer_json(const gtf::DataGraph& g, const gtf::Answer& a,
                         const std::string& engine) {
    ordered_json j;
    j["rank"] = a.rank;
    j["engine"] = engine;
    j["root"] = g.id_of(a.root);
    j["height"] = gtf::format_weight(a.height);
    j["weight"] = gtf::format_weight(a.total_weight);
    ordered_json edges = ordered_json::array();
    for (auto [u, v] : a.edges) edges.push_back({g.id_of(u), g.id_of(v)});
    j["edges"] = std::move(edges);
    return j;
}

void print_answer(std::ostream& out, const gtf::DataGraph& g, const gtf::Answer& a,
                  const std::string& engine, const std::string& format) {
    if (format == "jsonl") {
        out << answer_json(g, a, engine).dump() << '\n';
        return;
    }
    std::string edges;
    for (auto [u, v] : a.edges) {
        if (!edges.empty()) edges += format == "csv" ? ";" : " ";
        edges += g.id_of(u) + "->" + g.id_of(v);
    }
    if (format == "csv") {
        out << a.rank << ',' << engine << ',' << g.id_of(a.root) << ','
            << gtf::format_weight(a.height) << ',' << gtf::format_weight(a.total_weight) << ','
            << edges << '\n';
    } else {
        out << a.rank << '\t' << engine << '\t' << g.id_of(a.root) << '\t'
            << gtf::format_weight(a.height) << '\t' << gtf::format_weight(a.total_weight) << '\t'
            << edges << '\n';
    }
}

void print_stats(std::ostream& out, const std::string& engine, const gtf::RunStats& s) {
    out << '[' << engine << "] pops=" << s.pops << " inserts=" << s.inserts
        << " freezes=" << s.freezes << " unfreezes=" << s.unfreezes
        << " constructed=" << s.constructed_paths << " discarded_cyclic=" << s.discarded_cyclic
        << " kroots=" << s.kroots_discovered << " answers=" << s.answers_emitted
        << " wall_ms=" << s.wall_time_ns / 1'000'000.0 << '\n';
}

gtf::TraceFn make_tracer(const gtf::DataGraph& g, std::ofstream& stream,
                         const std::string& engine) {
    if (!stream.is_open()) return {};
    return [&g, &stream, engine](const gtf::TraceEvent& ev) {
        static const char* names[] = {"pop", "insert", "freeze", "unfreeze", "discover", "emit"};
        ordered_json j;
        j["ev"] = names[static_cast<int>(ev.kind)];
        j["engine"] = engine;
        if (ev.path != gtf::kNoPath) j["path"] = ev.path;
        j["weight"] = gtf::format_weight(ev.weight);
        j["node"] = g.id_of(ev.node);
        if (ev.keyword != gtf::kNoNode) j["keyword"] = g.id_of(ev.keyword);
        stream << j.dump() << '\n';
    };
}

struct RunOutcome {
    gtf::RunStats stats;
    std::vector<gtf::Answer> answers;
};

RunOutcome run_engine(const std::string& engine, const gtf::DataGraph& g, const gtf::Query& q,
                      const gtf::EngineOptions& opts, gtf::TraceFn trace,
                      std::ostream* print_to = nullptr, const std::string& format = "jsonl") {
    RunOutcome out;
    gtf::AnswerSink sink = [&](const gtf::Answer& a) {
        out.answers.push_back(a);
        if (print_to) print_answer(*print_to, g, a, engine, format);
    };
    out.stats = engine == "naive" ? gtf::run_naive(g, q, opts, sink, std::move(trace))
                                  : gtf::run_gtf(g, q, opts, sink, std::move(trace));
    return out;
}

int cmd_query(const CommonOpts& o) {
    auto g = load_source(o);
    auto q = gtf::resolve_query(g, split_csv(o.keywords_csv));
    auto opts = engine_options(o);

    std::ofstream event_stream;
    if (!o.event_log_path.empty()) {
        event_stream.open(o.event_log_path);
        if (!event_stream) throw gtf::GtfError("cannot open event log: " + o.event_log_path);
    }

    std::vector<std::string> engines;
    if (o.engine == "both") {
        engines = {"gtf", "naive"};
    } else if (o.engine == "oracle") {
        auto report = gtf::enumerate_all_answers(g, q);
        std::size_t shown = 0;
        for (const auto& a : report.answers) {
            if (o.top_k != 0 && shown >= o.top_k) break;
            print_answer(std::cout, g, a, "oracle", o.format);
            ++shown;
        }
        std::cerr << "[oracle] answers=" << report.answers.size() << '\n';
        return kExitOk;
    } else {
        engines = {o.engine};
    }

    bool cap_hit = false;
    for (const auto& engine : engines) {
        auto outcome = run_engine(engine, g, q, opts, make_tracer(g, event_stream, engine),
                                  &std::cout, o.format);
        print_stats(std::cerr, engine, outcome.stats);
        cap_hit = cap_hit || outcome.stats.queue_cap_hit;
    }
    if (cap_hit) {
        std::cerr << "queue cap exceeded; results are partial\n";
        return kExitQueueCap;
    }
    return kExitOk;
}

std::set<std::vector<std::pair<gtf::NodeId, gtf::NodeId>>> answer_set(
    const std::vector<gtf::Answer>& answers) {
    std::set<std::vector<std::pair<gtf::NodeId, gtf::NodeId>>> out;
    for (const auto& a : answers) out.insert(a.canonical_edges());
    return out;
}

int cmd_compare(const CommonOpts& o) {
    auto g = load_source(o);
    auto q = gtf::resolve_query(g, split_csv(o.keywords_csv));
    auto opts = engine_options(o);
    opts.top_k = 0;  // equivalence is defined on the full answer sets

    auto gtf_run = run_engine("gtf", g, q, opts, {});
    auto naive_run = run_engine("naive", g, q, opts, {});
    auto report = gtf::enumerate_all_answers(g, q);

    print_stats(std::cerr, "gtf", gtf_run.stats);
    print_stats(std::cerr, "naive", naive_run.stats);
    if (gtf_run.stats.queue_cap_hit || naive_run.stats.queue_cap_hit) {
        std::cerr << "queue cap exceeded; comparison is not meaningful\n";
        return kExitQueueCap;
    }

    auto gtf_set = answer_set(gtf_run.answers);
    auto naive_set = answer_set(naive_run.answers);
    auto oracle_set = answer_set(report.answers);
    bool dup_free = gtf_set.size() == gtf_run.answers.size() &&
                    naive_set.size() == naive_run.answers.size();
    bool equal = gtf_set == oracle_set && naive_set == oracle_set && dup_free;

    std::cout << (equal ? "PASS" : "FAIL") << ": gtf " << gtf_run.answers.size() << " vs naive "
              << naive_run.answers.size() << " vs oracle " << report.answers.size() << '\n';
    if (!dup_free) std::cout << "duplicate answers emitted\n";
    return equal ? kExitOk : kExitDiff;
}

int cmd_analyze(const CommonOpts& o) {
    auto g = load_source(o);
    auto q = gtf::resolve_query(g, split_csv(o.keywords_csv));
    auto opts = engine_options(o);

    auto outcome = run_engine("gtf", g, q, opts, {});
    print_stats(std::cerr, "gtf", outcome.stats);
    if (outcome.stats.queue_cap_hit) return kExitQueueCap;

    auto report = gtf::miss_report(g, outcome.answers);
    if (report.total == 0)
        std::cerr << "warning: no answers; miss rates reported as 0%\n";

    std::ofstream csv("miss_report.csv");
    if (!csv) throw gtf::GtfError("cannot write miss_report.csv");
    csv << "engine,topk,distinct_root_miss_pct,nonminimal_miss_pct\n";
    char line[160];
    std::snprintf(line, sizeof line, "gtf,%zu,%.3f,%.3f\n", o.top_k, report.distinct_root_pct(),
                  report.nonminimal_pct());
    csv << line;

    std::cout << "answers=" << report.total
              << " distinct_root_missed=" << report.distinct_root_missed
              << " nonminimal_missed=" << report.nonminimal_missed << '\n';
    std::cout << "miss_report.csv written\n";
    return kExitOk;
}

struct BenchQuery {
    std::string id;
    std::vector<std::string> keywords;
};

std::vector<BenchQuery> load_queries(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw gtf::GtfError("cannot open queries file: " + path);
    std::vector<BenchQuery> out;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        auto tab = line.find('\t');
        if (tab == std::string::npos)
            throw gtf::GtfError("bad queries line (expected id<TAB>keywords): " + line);
        out.push_back({line.substr(0, tab), split_csv(line.substr(tab + 1))});
    }
    return out;
}

int cmd_bench(const CommonOpts& o) {
    auto g = load_source(o);
    auto queries = load_queries(o.queries_path);
    auto opts = engine_options(o);
    if (o.repeats < 1) throw gtf::GtfError("--repeats must be at least 1");

    std::ofstream csv("bench.csv");
    if (!csv) throw gtf::GtfError("cannot write bench.csv");
    csv << "engine,query,size,topk,mean_s,cv,speedup\n";

    bool any_error = false;
    for (const auto& bq : queries) {
        gtf::Query q;
        try {
            q = gtf::resolve_query(g, bq.keywords);
        } catch (const gtf::GtfError& e) {
            std::cerr << "query " << bq.id << ": " << e.what() << '\n';
            csv << "both," << bq.id << ',' << bq.keywords.size() << ',' << o.top_k
                << ",ERROR,ERROR,ERROR\n";
            any_error = true;
            continue;
        }

        double means[2] = {0.0, 0.0};
        const std::string engines[2] = {"gtf", "naive"};
        std::vector<gtf::BenchRecord> records;
        for (int e = 0; e < 2; ++e) {
            run_engine(engines[e], g, q, opts, {});  // warm-up, discarded
            gtf::BenchRecord rec;
            rec.engine = engines[e];
            rec.query_id = bq.id;
            rec.query_size = q.keywords.size();
            rec.top_k = o.top_k;
            for (std::size_t r = 0; r < o.repeats; ++r) {
                auto outcome = run_engine(engines[e], g, q, opts, {});
                rec.times_s.push_back(outcome.stats.wall_time_ns / 1e9);
                if (r == 0) print_stats(std::cerr, engines[e] + ":" + bq.id, outcome.stats);
            }
            for (double t : rec.times_s) rec.mean_s += t;
            rec.mean_s /= static_cast<double>(rec.times_s.size());
            rec.cv_value = gtf::cv(rec.times_s);
            means[e] = rec.mean_s;
            records.push_back(std::move(rec));
        }
        for (auto& rec : records) {
            rec.speedup_vs_base = rec.engine == "gtf" && means[0] > 0.0 ? means[1] / means[0] : 1.0;
            char line[256];
            std::snprintf(line, sizeof line, "%s,%s,%zu,%zu,%.6f,%.4f,%.4f\n", rec.engine.c_str(),
                          rec.query_id.c_str(), rec.query_size, rec.top_k, rec.mean_s,
                          rec.cv_value, rec.speedup_vs_base);
            csv << line;
        }
    }
    std::cout << "bench.csv written\n";
    return any_error ? kExitDiff : kExitOk;
}

int cmd_validate(const CommonOpts& o) {
    if (!o.gen_spec.empty()) {
        auto g = gtf::generate_graph(o.gen_spec, o.seed);
        gtf::validate(g);
        std::cout << "ok: " << g.node_count() << " nodes, " << g.edge_count() << " edges\n";
        return kExitOk;
    }
    if (o.graph_path.empty()) throw gtf::GtfError("either --graph or --gen is required");
    std::ifstream in(o.graph_path);
    if (!in) throw gtf::GtfError("cannot open graph file: " + o.graph_path);
    std::ostringstream buf;
    buf << in.rdbuf();
    auto violations = gtf::collect_document_violations(buf.str());
    if (!violations.empty()) {
        for (const auto& v : violations) std::cout << v << '\n';
        return kExitInput;
    }
    auto g = gtf::load_graph(buf.str());
    gtf::validate(g);
    std::cout << "ok: " << g.node_count() << " nodes, " << g.edge_count() << " edges\n";
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Keyword-search answer enumeration over weighted data graphs"};
    app.require_subcommand(1);

    CommonOpts o;

    auto* validate = app.add_subcommand("validate", "Check a graph document");
    add_graph_source(validate, o);

    auto* query = app.add_subcommand("query", "Enumerate answers by increasing height");
    add_graph_source(query, o);
    query->add_option("--keywords", o.keywords_csv, "Comma-separated query keywords")->required();
    query->add_option("--top", o.top_k, "Stop after this many answers (0 = all)");
    query->add_option("--engine", o.engine, "gtf | naive | both | oracle")
        ->check(CLI::IsMember({"gtf", "naive", "both", "oracle"}));
    query->add_flag("--no-essential", o.no_essential, "Drop essential cyclic paths (incomplete)");
    query->add_option("--event-log", o.event_log_path, "Write a JSONL event trace");
    query->add_option("--queue-cap", o.queue_cap, "Abort when the queue grows past this");
    query->add_option("--format", o.format, "jsonl | csv | table")
        ->check(CLI::IsMember({"jsonl", "csv", "table"}));

    auto* compare = app.add_subcommand("compare", "Diff gtf, naive and oracle answer sets");
    add_graph_source(compare, o);
    compare->add_option("--keywords", o.keywords_csv, "Comma-separated query keywords")
        ->required();
    compare->add_flag("--no-essential", o.no_essential,
                      "Drop essential cyclic paths (incomplete)");
    compare->add_option("--queue-cap", o.queue_cap, "Abort when the queue grows past this");

    auto* bench = app.add_subcommand("bench", "Benchmark gtf vs naive over a query batch");
    add_graph_source(bench, o);
    bench->add_option("--queries", o.queries_path, "TSV file: id<TAB>comma-keywords")->required();
    bench->add_option("--top", o.top_k, "Stop after this many answers (0 = all)");
    bench->add_option("--repeats", o.repeats, "Measured repeats after the warm-up run");
    bench->add_option("--queue-cap", o.queue_cap, "Abort when the queue grows past this");

    auto* analyze = app.add_subcommand("analyze", "Miss-rate filters over the top-k answers");
    add_graph_source(analyze, o);
    analyze->add_option("--keywords", o.keywords_csv, "Comma-separated query keywords")
        ->required();
    analyze->add_option("--top", o.top_k, "Stop after this many answers (0 = all)");
    analyze->add_option("--queue-cap", o.queue_cap, "Abort when the queue grows past this");

    CLI11_PARSE(app, argc, argv);

    try {
        if (validate->parsed()) return cmd_validate(o);
        if (query->parsed()) return cmd_query(o);
        if (compare->parsed()) return cmd_compare(o);
        if (bench->parsed()) return cmd_bench(o);
        if (analyze->parsed()) return cmd_analyze(o);
    } catch (const gtf::GtfError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitInput;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << '\n';
        return kExitInput;
    }
    return kExitOk;
}
