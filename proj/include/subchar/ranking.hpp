#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "subchar/welfare.hpp"

namespace subchar {

struct RankedAttribute {
    int attribute = 0;
    std::string name;
    double rc_mean = 0.0;
    double rc_std = 0.0;
    int rank = 0; // 1-based within the class
};

struct CharacterizationReport {
    std::vector<std::vector<RankedAttribute>> per_class; // indexed by class id
    double fraction = 1.0;
    int repetitions = 1;
    std::uint64_t seed = 0;
    std::string partition_algorithm;
    double partition_objective = 0.0;
};

// Relative contribution: own-class average x(a) minus, for two classes,
// the other class's average; for more classes, the maximum other average.
double relative_contribution(const BundleSet& set, int attribute, int class_id);

// Bootstrap: per repetition sample ceil(fraction * n_c) subgraphs per class
// without replacement, recompute rc for every attribute assigned to the
// class; report mean and (population) standard deviation across repetitions,
// ranked by mean descending. reps == 1 reports std 0.
CharacterizationReport bootstrap_rank(const BundleSet& set,
                                      const std::vector<std::string>& attribute_names,
                                      const AttributePartition& partition, double fraction,
                                      int repetitions, std::uint64_t seed);

// One snapshot of signed contribution vectors grouped by class. Entries hold
// x_hat (signed), since per-snapshot averages can legitimately go negative.
struct Snapshot {
    std::string label;
    std::vector<std::string> attribute_names;
    std::vector<std::vector<std::vector<double>>> xhat_by_class;
};

// Per snapshot: (1/n_c) sum_i x_hat_i(attribute) for the given class.
// The attribute is matched by name in every snapshot.
std::vector<double> contribution_series(const std::vector<Snapshot>& snapshots,
                                        const std::string& attribute_name, int class_id);

} // namespace subchar
