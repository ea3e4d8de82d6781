#pragma once

#include <string>
#include <vector>

#include "subchar/community.hpp"
#include "subchar/graph.hpp"

namespace subchar {

// Per-attribute similarity kernel between two nodes' attribute values.
// Both are linear in the attribute weights.
enum class Kernel { product, min };

struct RawContribution {
    std::vector<double> internal; // a_I per attribute
    std::vector<double> external; // a_X per attribute (non-positive)
};

struct ContributionVector {
    std::vector<double> x_hat; // a_I + a_X after global normalization
    std::vector<double> x;     // max(x_hat, 0)
    bool low_quality = false;  // true iff all x_hat entries <= 0
    std::string subgraph_id;
    int class_id = 0;
};

enum class NormKind { L1, L2 };

struct FocusWeights {
    std::vector<double> w;
    NormKind norm_kind = NormKind::L2;
    double normality = 0.0;
    bool low_quality = false;
};

// a_I(a) = sum over unordered internal pairs {i,j}, i != j, of
//          (W_ij - k_i k_j / 2e) * s_a(i, j);
// a_X(a) = -sum over internal-boundary edges (i, b) of
//          (1 - min(1, k_i k_b / 2e)) * s_a(i, b).
// Degrees and e always come from the full graph.
RawContribution compute_raw_contributions(const AttributedGraph& g, const Subgraph& sub,
                                          Kernel kernel = Kernel::product);

// Batch form: computes raw contributions for every subgraph, rescales all
// x_hat entries into [-1, 1] by one global factor (max |a_I + a_X| over the
// whole run, when it exceeds 1), clamps x at zero and sets the quality flag.
// Returns the scale factor applied.
double compute_contributions(const AttributedGraph& g, const std::vector<Subgraph>& subs,
                             const std::vector<std::string>& ids,
                             std::vector<ContributionVector>& out,
                             Kernel kernel = Kernel::product, int threads = 1);

// Single-subgraph convenience: normalized against its own max |entry|.
ContributionVector compute_contributions(const AttributedGraph& g, const Subgraph& sub,
                                         Kernel kernel = Kernel::product);

// L1: one-hot at argmax(x_hat), normality = max(x_hat); all-negative x_hat
// still picks the largest entry and marks low quality.
// L2: w(a) = x_hat(a) / ||x_hat+||_2 on positive entries, normality =
// ||x_hat+||_2; no positive entries falls back to L1 with low quality.
FocusWeights infer_weights(const ContributionVector& cv, NormKind norm_kind);

// N(g|S) = sqrt(sum_{a in S} x(a)^2); empty S gives 0.
double subspace_quality(const std::vector<double>& x, const std::vector<int>& subset);

} // namespace subchar
