#include "subchar/ranking.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <random>

#include "subchar/errors.hpp"
#include "subchar/rng.hpp"

namespace subchar {

namespace {

double class_average(const std::vector<const std::vector<double>*>& xs, int attribute) {
    double sum = 0.0;
    for (const auto* x : xs) sum += (*x)[attribute];
    return xs.empty() ? 0.0 : sum / static_cast<double>(xs.size());
}

double rc_from_views(const std::vector<std::vector<const std::vector<double>*>>& views,
                     int attribute, int class_id) {
    double own = class_average(views[class_id], attribute);
    double best_other = -std::numeric_limits<double>::infinity();
    for (std::size_t c = 0; c < views.size(); ++c) {
        if (static_cast<int>(c) == class_id) continue;
        best_other = std::max(best_other, class_average(views[c], attribute));
    }
    return own - best_other;
}

std::vector<std::vector<const std::vector<double>*>> full_views(const BundleSet& set) {
    std::vector<std::vector<const std::vector<double>*>> views(set.bundles.size());
    for (std::size_t c = 0; c < set.bundles.size(); ++c)
        for (const auto& x : set.bundles[c].xs) views[c].push_back(&x);
    return views;
}

} // namespace

double relative_contribution(const BundleSet& set, int attribute, int class_id) {
    if (attribute < 0 || attribute >= set.dim) throw InputError("attribute index out of range");
    if (class_id < 0 || class_id >= static_cast<int>(set.bundles.size()))
        throw InputError("class id out of range");
    return rc_from_views(full_views(set), attribute, class_id);
}

CharacterizationReport bootstrap_rank(const BundleSet& set,
                                      const std::vector<std::string>& attribute_names,
                                      const AttributePartition& partition, double fraction,
                                      int repetitions, std::uint64_t seed) {
    if (fraction <= 0.0 || fraction > 1.0) throw InputError("fraction must be in (0, 1]");
    if (repetitions < 1) throw InputError("repetitions must be at least 1");
    if (static_cast<int>(partition.assignment.size()) != set.dim)
        throw InputError("partition does not match attribute count");
    if (static_cast<int>(attribute_names.size()) != set.dim)
        throw InputError("attribute name count mismatch");

    const int c = static_cast<int>(set.bundles.size());
    // rc samples per (attribute, repetition), for assigned attributes only
    std::vector<std::vector<double>> samples(set.dim);

    for (int rep = 0; rep < repetitions; ++rep) {
        auto rng = make_stream(seed, {0x626f6f74, static_cast<std::uint64_t>(rep)});
        std::vector<std::vector<const std::vector<double>*>> views(c);
        for (int ci = 0; ci < c; ++ci) {
            const auto& xs = set.bundles[ci].xs;
            int take = static_cast<int>(std::ceil(fraction * xs.size()));
            take = std::max(1, std::min<int>(take, static_cast<int>(xs.size())));
            std::vector<int> idx(xs.size());
            std::iota(idx.begin(), idx.end(), 0);
            // partial Fisher-Yates: first `take` entries are the sample
            for (int i = 0; i < take; ++i) {
                std::uniform_int_distribution<int> pick(i, static_cast<int>(idx.size()) - 1);
                std::swap(idx[i], idx[pick(rng)]);
            }
            // fixed summation order, so identical samples give identical sums
            std::sort(idx.begin(), idx.begin() + take);
            for (int i = 0; i < take; ++i) views[ci].push_back(&xs[idx[i]]);
        }
        for (int a = 0; a < set.dim; ++a) {
            int cls = partition.assignment[a];
            if (cls < 0) continue;
            samples[a].push_back(rc_from_views(views, a, cls));
        }
    }

    CharacterizationReport report;
    report.per_class.resize(c);
    report.fraction = fraction;
    report.repetitions = repetitions;
    report.seed = seed;
    report.partition_algorithm = algorithm_name(partition.algorithm);
    report.partition_objective = partition.objective_value;

    for (int a = 0; a < set.dim; ++a) {
        int cls = partition.assignment[a];
        if (cls < 0) continue;
        const auto& vals = samples[a];
        double mean = std::accumulate(vals.begin(), vals.end(), 0.0) / vals.size();
        bool all_equal = std::all_of(vals.begin(), vals.end(),
                                     [&](double v) { return v == vals.front(); });
        double var = 0.0;
        if (all_equal) {
            mean = vals.front(); // keep identical samples exact (fraction = 1)
        } else {
            for (double v : vals) var += (v - mean) * (v - mean);
            var /= vals.size(); // population convention
        }
        RankedAttribute ra;
        ra.attribute = a;
        ra.name = attribute_names[a];
        ra.rc_mean = mean;
        ra.rc_std = std::sqrt(var);
        report.per_class[cls].push_back(std::move(ra));
    }
    for (auto& list : report.per_class) {
        std::sort(list.begin(), list.end(), [](const RankedAttribute& a, const RankedAttribute& b) {
            if (a.rc_mean != b.rc_mean) return a.rc_mean > b.rc_mean;
            return a.attribute < b.attribute;
        });
        for (std::size_t i = 0; i < list.size(); ++i) list[i].rank = static_cast<int>(i + 1);
    }
    return report;
}

std::vector<double> contribution_series(const std::vector<Snapshot>& snapshots,
                                        const std::string& attribute_name, int class_id) {
    std::vector<double> series;
    series.reserve(snapshots.size());
    for (const auto& snap : snapshots) {
        auto it = std::find(snap.attribute_names.begin(), snap.attribute_names.end(),
                            attribute_name);
        if (it == snap.attribute_names.end())
            throw InputError("attribute '" + attribute_name + "' missing in snapshot '" +
                             snap.label + "'");
        int a = static_cast<int>(it - snap.attribute_names.begin());
        if (class_id < 0 || class_id >= static_cast<int>(snap.xhat_by_class.size()))
            throw InputError("class id out of range in snapshot '" + snap.label + "'");
        const auto& xs = snap.xhat_by_class[class_id];
        if (xs.empty()) throw InputError("class has no subgraphs in snapshot '" + snap.label + "'");
        double sum = 0.0;
        for (const auto& x : xs) sum += x[a];
        series.push_back(sum / static_cast<double>(xs.size()));
    }
    return series;
}

} // namespace subchar
