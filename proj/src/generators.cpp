#include "gtf/generators.hpp"

#include <algorithm>
#include <cmath>
#include <random>

namespace gtf {

namespace {

Weight pick_weight(std::mt19937_64& rng) {
    // Halves between 1.0 and 3.0; fractional values exercise the milliunit
    // arithmetic and break up ties.
    static constexpr Weight choices[] = {1000, 1500, 2000, 2500, 3000};
    return choices[rng() % 5];
}

}  // namespace

DataGraph make_lattice(std::size_t nodes_target, std::uint64_t seed) {
    if (nodes_target < 4) throw GtfError("lattice generator needs at least 4 nodes");
    const std::size_t w = static_cast<std::size_t>(std::ceil(std::sqrt(nodes_target)));
    const std::size_t h = (nodes_target + w - 1) / w;
    std::mt19937_64 rng(seed);

    GraphBuilder b;
    std::vector<std::vector<NodeId>> grid(h, std::vector<NodeId>(w));
    for (std::size_t i = 0; i < h; ++i) {
        for (std::size_t j = 0; j < w; ++j) {
            std::string text;
            if (i == h - 1 && j == w - 1) text = "alpha";
            if (i == h - 1 && j == w - 2) text = "beta";
            grid[i][j] = b.add_node("n" + std::to_string(i) + "_" + std::to_string(j),
                                    std::move(text), pick_weight(rng));
        }
    }
    std::uniform_real_distribution<double> coin(0.0, 1.0);
    for (std::size_t i = 0; i < h; ++i) {
        for (std::size_t j = 0; j < w; ++j) {
            if (i + 1 < h) b.add_edge(grid[i][j], grid[i + 1][j], pick_weight(rng));
            if (j + 1 < w) b.add_edge(grid[i][j], grid[i][j + 1], pick_weight(rng));
            // Diagonal shortcuts and upward back edges; the latter make the
            // lattice cyclic.
            if (i + 1 < h && j + 1 < w && coin(rng) < 0.15)
                b.add_edge(grid[i][j], grid[i + 1][j + 1], pick_weight(rng));
            if (i > 0 && coin(rng) < 0.10) b.add_edge(grid[i][j], grid[i - 1][j], pick_weight(rng));
        }
    }
    return augment_keywords(b.build());
}

DataGraph make_random(std::size_t nodes_target, std::uint64_t seed) {
    if (nodes_target < 4) throw GtfError("random generator needs at least 4 nodes");
    std::mt19937_64 rng(seed);
    GraphBuilder b;
    std::vector<NodeId> nodes(nodes_target);
    for (std::size_t i = 0; i < nodes_target; ++i) {
        std::string text;
        if (i == nodes_target - 1) text = "alpha";
        if (i == nodes_target - 2) text = "beta";
        nodes[i] = b.add_node("n" + std::to_string(i), std::move(text), pick_weight(rng));
    }
    std::uniform_real_distribution<double> coin(0.0, 1.0);
    std::uniform_int_distribution<std::size_t> jump(1, 4);
    for (std::size_t i = 0; i < nodes_target; ++i) {
        // Forward edges to a few nearby successors, back edge occasionally.
        std::vector<std::size_t> chosen;
        for (std::size_t tries = 0; tries < 6 && chosen.size() < 3; ++tries) {
            std::size_t j = i + jump(rng);
            if (j >= nodes_target) continue;
            if (std::find(chosen.begin(), chosen.end(), j) != chosen.end()) continue;
            if (coin(rng) < 0.7) {
                chosen.push_back(j);
                b.add_edge(nodes[i], nodes[j], pick_weight(rng));
            }
        }
        if (i + 1 < nodes_target && chosen.empty()) {
            chosen.push_back(i + 1);
            b.add_edge(nodes[i], nodes[i + 1], pick_weight(rng));
        }
        if (i > 0 && coin(rng) < 0.08) b.add_edge(nodes[i], nodes[i - 1], pick_weight(rng));
    }
    return augment_keywords(b.build());
}

DataGraph generate_graph(const std::string& spec, std::uint64_t seed) {
    auto colon = spec.find(':');
    if (colon == std::string::npos)
        throw GtfError("bad generator spec (expected kind:size): '" + spec + "'");
    const std::string kind = spec.substr(0, colon);
    std::size_t n;
    try {
        n = std::stoul(spec.substr(colon + 1));
    } catch (const std::exception&) {
        throw GtfError("bad generator size in spec: '" + spec + "'");
    }
    if (kind == "lattice") return make_lattice(n, seed);
    if (kind == "random") return make_random(n, seed);
    throw GtfError("unknown generator kind: '" + kind + "'");
}

}  // namespace gtf
