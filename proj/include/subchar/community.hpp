#pragma once

#include <optional>
#include <vector>

#include "subchar/graph.hpp"

namespace subchar {

enum class SubgraphOrigin { explicit_members, ego, ppr };

struct Subgraph {
    std::vector<int> member_nodes; // sorted, unique
    int class_id = 0;
    SubgraphOrigin origin = SubgraphOrigin::explicit_members;
    std::optional<int> seed;
};

// Seed plus all immediate neighbors.
Subgraph ego_net(const AttributedGraph& g, int seed);

// Approximate personalized PageRank by the push procedure, then a conductance
// sweep over nodes ordered by ppr/degree. Returns the minimum-conductance
// prefix containing the seed, at most max_size nodes, ties toward the smaller
// prefix. A degree-0 seed yields {seed}.
Subgraph ppr_community(const AttributedGraph& g, int seed, double alpha, double epsilon,
                       int max_size);

// Push procedure internals, exposed for diagnostics and testing.
// Invariant: sum(ppr) + sum(residual) == 1 throughout.
struct PprVectors {
    std::vector<double> ppr;
    std::vector<double> residual;
};
PprVectors ppr_push(const AttributedGraph& g, int seed, double alpha, double epsilon);

// Nodes outside the subgraph with at least one edge into it.
std::vector<int> boundary(const AttributedGraph& g, const Subgraph& sub);

// Conductance of a node set: cut weight over the smaller side's volume.
// 0 if the cut is empty; 1 if either side has zero volume but the cut is not.
double conductance(const AttributedGraph& g, const std::vector<int>& members);

} // namespace subchar
