#ifndef GTF_GENERATORS_HPP
#define GTF_GENERATORS_HPP

#include <cstdint>
#include <string>

#include "gtf/datagraph.hpp"

namespace gtf {

// Grid with rightward/downward edges plus seeded shortcut and back edges,
// which make it cyclic. Two tokens, "alpha" and "beta", sit on nodes near
// the sink corner so that most nodes are roots for the query {alpha, beta}.
DataGraph make_lattice(std::size_t nodes_target, std::uint64_t seed);

// Random DAG over a topological order with a sprinkling of back edges.
// Tokens "alpha" and "beta" on the last two nodes.
DataGraph make_random(std::size_t nodes_target, std::uint64_t seed);

// Parses "lattice:N" or "random:N" and builds the graph (keywords already
// augmented). Throws GtfError on an unknown spec.
DataGraph generate_graph(const std::string& spec, std::uint64_t seed);

}  // namespace gtf

#endif
