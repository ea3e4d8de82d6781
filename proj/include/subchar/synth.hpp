#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "subchar/welfare.hpp"

namespace subchar {

enum class SyntheticScheme { normal, adversarial };

struct SyntheticSpec {
    SyntheticScheme scheme = SyntheticScheme::normal;
    int dim = 10;
    int class_count = 2;
    std::vector<int> sizes;      // subgraphs per class; default 100 each
    double p_param = 0.5;        // adversarial interval parameter, in (0,1)
    std::uint64_t seed = 0;
};

// Per (class, attribute): mu ~ N(0,1), sigma ~ U[0,1]; each subgraph entry
// x(a) ~ N(mu, sigma) with negative draws clamped to 0.
BundleSet gen_normal(const SyntheticSpec& spec);

// Class 0 entries uniform on [P, 1], class 1 uniform on [0, 1-P].
BundleSet gen_adversarial(const SyntheticSpec& spec);

BundleSet generate(const SyntheticSpec& spec);

// Algorithm request parsed from strings like "swa", "topk:5", "brute".
struct AlgoRequest {
    PartitionAlgorithm algorithm = PartitionAlgorithm::swa;
    int k = 0; // topk only
    std::string label;
};
AlgoRequest parse_algo(const std::string& text);

AttributePartition run_algorithm(const BundleSet& set, const AlgoRequest& request,
                                 const SwaOptions& swa_opts);

struct RatioRow {
    int dim = 0;
    std::string algorithm;
    double mean_ratio = 0.0;
    int repetitions = 0;
    bool vs_optimum = false; // brute-force denominator vs best-achieved
};

// Per (d, algorithm): mean ratio of achieved welfare to the brute-force
// optimum when feasible, otherwise to the best value achieved in the run.
std::vector<RatioRow> ratio_experiment(const std::vector<int>& dims,
                                       const std::vector<AlgoRequest>& algos,
                                       const SyntheticSpec& base_spec, int repetitions,
                                       std::uint64_t seed, std::uint64_t brute_cap = 1ull << 20);

struct TimingRow {
    int dim = 0;
    std::string algorithm;
    double seconds = 0.0;
};

// Wall-clock per (d, algorithm) on fresh synthetic bundles; one warm-up run
// excluded, then repeated until the measured span is long enough to be stable.
std::vector<TimingRow> runtime_bench(const std::vector<int>& dims,
                                     const std::vector<AlgoRequest>& algos,
                                     const SyntheticSpec& base_spec, std::uint64_t seed,
                                     double min_seconds = 0.05);

// --- Characterization vs. discrimination metrics -------------------------

struct LabeledNodeTable {
    std::vector<int> class_ids;                   // per node
    std::vector<std::vector<char>> indicators;    // per node, per attribute
    std::vector<std::string> attribute_names;
    int class_count = 0;
};

struct AttributeWeight {
    std::string attribute;
    int class_id = 0;
    double weight = 0.0; // ranking score, must be >= 0
};

struct ClassMetrics {
    int class_id = 0;
    double avg_class_support = 0.0;    // weighted mean CS
    double avg_class_confidence = 0.0; // weighted mean CC
    int undefined_confidence = 0;      // attributes never observed, scored 0
};

double confidence(const LabeledNodeTable& table, int class_id, int attribute);
double support(const LabeledNodeTable& table, int class_id, int attribute);
double class_confidence(const LabeledNodeTable& table, int class_id, int attribute);
double class_support(const LabeledNodeTable& table, int class_id, int attribute);

std::vector<ClassMetrics> class_metrics(const LabeledNodeTable& table,
                                        const std::vector<AttributeWeight>& ranking);

} // namespace subchar
