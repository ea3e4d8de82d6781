#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "subchar/normality.hpp"

namespace subchar {

// All x vectors of one class, low-quality ones already excluded.
// Every vector is non-negative with at least one positive entry.
struct ClassBundle {
    int class_id = 0;
    std::vector<std::vector<double>> xs;
    int size() const { return static_cast<int>(xs.size()); }
};

struct BundleSet {
    std::vector<ClassBundle> bundles; // indexed by class_id 0..c-1
    int dropped_low_quality = 0;
    int dim = 0;
};

// Groups x vectors by class, dropping vectors with no positive entry.
// Errors if any class ends up empty or class ids are not 0..c-1 with c >= 2.
BundleSet make_bundles(const std::vector<ContributionVector>& cvs);
BundleSet make_bundles(const std::vector<int>& class_ids,
                       const std::vector<std::vector<double>>& xs);

enum class PartitionAlgorithm { brute, greedy_half, swa, simplified, topk };

struct AttributePartition {
    std::vector<int> assignment; // per attribute: class_id, or -1 if unassigned (topk)
    PartitionAlgorithm algorithm = PartitionAlgorithm::brute;
    double objective_value = 0.0;
    std::optional<int> k;
};

const char* algorithm_name(PartitionAlgorithm a);

// Welfare objective: sum over classes of the average member 2-norm restricted
// to the class's assigned attributes.
double welfare(const BundleSet& set, const std::vector<int>& assignment);

// Exhaustive search over all c^d assignments; refuses beyond the evaluation
// cap. Ties broken toward the lexicographically smallest assignment vector.
AttributePartition brute_force(const BundleSet& set, std::uint64_t eval_cap = 1ull << 20);

// Online greedy: attributes in index order, each assigned to
// the class with the largest marginal welfare gain; 1/2-approximation.
AttributePartition greedy_half(const BundleSet& set);

struct SwaOptions {
    int steps = 100;       // T
    int samples = 32;      // R per gradient estimate
    int rounding_draws = 8;
    std::uint64_t seed = 0;
};

// Continuous greedy on the multilinear extension followed by independent
// rounding (best of rounding_draws by exact welfare); (1-1/e)-approximation.
AttributePartition swa_continuous_greedy(const BundleSet& set, const SwaOptions& opts);

// Modular relaxation with pre-normalized weights: each attribute goes to
// argmax_c (1/n_c) sum_k x_k(a)^2 / ||x_k||_2, independently. Exact optimum
// of the simplified objective.
AttributePartition simplified(const BundleSet& set);

// Per-attribute simplified score table (the modular objective's gains).
std::vector<std::vector<double>> simplified_scores(const BundleSet& set);

// Per-class CELF lazy greedy for k attributes, cross-class collisions awarded
// to the class with the higher average contribution, losers refill excluding
// attributes owned elsewhere.
AttributePartition topk(const BundleSet& set, int k, std::uint64_t seed = 0);

} // namespace subchar
