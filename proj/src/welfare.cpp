#include "subchar/welfare.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <queue>
#include <random>

#include "subchar/errors.hpp"
#include "subchar/rng.hpp"

namespace subchar {

namespace {

constexpr std::uint64_t kTagGradient = 0x67726164;
constexpr std::uint64_t kTagRounding = 0x726f756e;

// Squared entries per bundle, row-major [member][attribute].
std::vector<std::vector<std::vector<double>>> squared(const BundleSet& set) {
    std::vector<std::vector<std::vector<double>>> x2(set.bundles.size());
    for (std::size_t c = 0; c < set.bundles.size(); ++c) {
        x2[c].reserve(set.bundles[c].xs.size());
        for (const auto& x : set.bundles[c].xs) {
            std::vector<double> row(x.size());
            for (std::size_t a = 0; a < x.size(); ++a) row[a] = x[a] * x[a];
            x2[c].push_back(std::move(row));
        }
    }
    return x2;
}

void validate_bundles(const BundleSet& set) {
    if (set.bundles.size() < 2) throw InputError("need at least 2 classes");
    if (set.dim < 1) throw InputError("need at least 1 attribute");
    for (std::size_t c = 0; c < set.bundles.size(); ++c) {
        if (set.bundles[c].class_id != static_cast<int>(c))
            throw InputError("bundles must be indexed by class id");
        if (set.bundles[c].xs.empty())
            throw InputError("class " + std::to_string(c) + " has no usable subgraphs");
    }
}

} // namespace

const char* algorithm_name(PartitionAlgorithm a) {
    switch (a) {
        case PartitionAlgorithm::brute: return "brute";
        case PartitionAlgorithm::greedy_half: return "greedy";
        case PartitionAlgorithm::swa: return "swa";
        case PartitionAlgorithm::simplified: return "simplified";
        case PartitionAlgorithm::topk: return "topk";
    }
    return "?";
}

BundleSet make_bundles(const std::vector<int>& class_ids,
                       const std::vector<std::vector<double>>& xs) {
    if (class_ids.size() != xs.size()) throw InputError("class id / vector count mismatch");
    if (xs.empty()) throw InputError("no subgraph vectors given");
    int c = 0;
    for (int id : class_ids) {
        if (id < 0) throw InputError("negative class id");
        c = std::max(c, id + 1);
    }
    if (c < 2) throw InputError("need at least 2 classes");

    BundleSet set;
    set.dim = static_cast<int>(xs.front().size());
    set.bundles.resize(c);
    for (int i = 0; i < c; ++i) set.bundles[i].class_id = i;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        if (static_cast<int>(xs[i].size()) != set.dim)
            throw InputError("inconsistent vector dimension");
        bool any_positive = false;
        for (double v : xs[i]) {
            if (v < 0.0) throw InputError("bundle vectors must be non-negative");
            if (v > 0.0) any_positive = true;
        }
        if (!any_positive) {
            ++set.dropped_low_quality; // zero-norm, same as the low-quality exclusion
            continue;
        }
        set.bundles[class_ids[i]].xs.push_back(xs[i]);
    }
    validate_bundles(set);
    return set;
}

BundleSet make_bundles(const std::vector<ContributionVector>& cvs) {
    std::vector<int> ids;
    std::vector<std::vector<double>> xs;
    int dropped = 0;
    for (const auto& cv : cvs) {
        if (cv.low_quality) {
            ++dropped;
            continue;
        }
        ids.push_back(cv.class_id);
        xs.push_back(cv.x);
    }
    if (xs.empty()) throw InputError("all subgraphs are low quality");
    BundleSet set = make_bundles(ids, xs);
    set.dropped_low_quality += dropped;
    return set;
}

double welfare(const BundleSet& set, const std::vector<int>& assignment) {
    if (static_cast<int>(assignment.size()) != set.dim)
        throw InputError("assignment length does not match attribute count");
    double total = 0.0;
    for (const auto& bundle : set.bundles) {
        double sum = 0.0;
        for (const auto& x : bundle.xs) {
            double ss = 0.0;
            for (int a = 0; a < set.dim; ++a)
                if (assignment[a] == bundle.class_id) ss += x[a] * x[a];
            sum += std::sqrt(ss);
        }
        total += sum / bundle.size();
    }
    return total;
}

AttributePartition brute_force(const BundleSet& set, std::uint64_t eval_cap) {
    validate_bundles(set);
    const int c = static_cast<int>(set.bundles.size());
    const int d = set.dim;
    {
        // c^d with overflow guard
        long double combos = 1.0L;
        for (int i = 0; i < d; ++i) {
            combos *= c;
            if (combos > static_cast<long double>(eval_cap))
                throw InfeasibleError("brute force needs " + std::to_string(c) + "^" +
                                      std::to_string(d) + " evaluations, above the cap of " +
                                      std::to_string(eval_cap));
        }
    }
    auto x2 = squared(set);

    // Running sum of squares per (class, member); leaves evaluate the welfare.
    std::vector<std::vector<double>> ss(c);
    for (int ci = 0; ci < c; ++ci) ss[ci].assign(set.bundles[ci].size(), 0.0);

    std::vector<int> assignment(d, 0);
    std::vector<int> best_assignment;
    double best_value = -1.0;
    // Saved member sums per DFS level, restored exactly on backtrack.
    std::vector<std::vector<double>> saved(d);

    auto leaf_value = [&]() {
        double total = 0.0;
        for (int ci = 0; ci < c; ++ci) {
            double sum = 0.0;
            for (double s : ss[ci]) sum += std::sqrt(s);
            total += sum / set.bundles[ci].size();
        }
        return total;
    };

    // Iterative DFS in lexicographic order: strict improvement keeps the
    // lexicographically smallest assignment among ties.
    std::function<void(int)> visit = [&](int attr) {
        if (attr == d) {
            double value = leaf_value();
            double tol = 1e-12 * std::max(1.0, std::abs(best_value));
            if (value > best_value + tol) {
                best_value = value;
                best_assignment = assignment;
            }
            return;
        }
        for (int ci = 0; ci < c; ++ci) {
            assignment[attr] = ci;
            saved[attr] = ss[ci];
            auto& rows = x2[ci];
            for (std::size_t k = 0; k < rows.size(); ++k) ss[ci][k] += rows[k][attr];
            visit(attr + 1);
            ss[ci] = saved[attr];
        }
    };
    visit(0);

    AttributePartition part;
    part.algorithm = PartitionAlgorithm::brute;
    part.assignment = best_assignment;
    part.objective_value = welfare(set, best_assignment);
    return part;
}

AttributePartition greedy_half(const BundleSet& set) {
    validate_bundles(set);
    const int c = static_cast<int>(set.bundles.size());
    const int d = set.dim;
    auto x2 = squared(set);

    std::vector<std::vector<double>> ss(c);
    for (int ci = 0; ci < c; ++ci) ss[ci].assign(set.bundles[ci].size(), 0.0);

    AttributePartition part;
    part.algorithm = PartitionAlgorithm::greedy_half;
    part.assignment.assign(d, 0);
    for (int a = 0; a < d; ++a) {
        int best_class = 0;
        double best_gain = -1.0;
        for (int ci = 0; ci < c; ++ci) {
            double gain = 0.0;
            for (std::size_t k = 0; k < x2[ci].size(); ++k)
                gain += std::sqrt(ss[ci][k] + x2[ci][k][a]) - std::sqrt(ss[ci][k]);
            gain /= set.bundles[ci].size();
            if (gain > best_gain) { // strict: ties go to the lower class id
                best_gain = gain;
                best_class = ci;
            }
        }
        part.assignment[a] = best_class;
        for (std::size_t k = 0; k < x2[best_class].size(); ++k)
            ss[best_class][k] += x2[best_class][k][a];
    }
    part.objective_value = welfare(set, part.assignment);
    return part;
}

AttributePartition swa_continuous_greedy(const BundleSet& set, const SwaOptions& opts) {
    validate_bundles(set);
    if (opts.steps < 1 || opts.samples < 1 || opts.rounding_draws < 1)
        throw InputError("swa: steps, samples and rounding draws must be positive");
    const int c = static_cast<int>(set.bundles.size());
    const int d = set.dim;
    const int T = opts.steps;
    auto x2 = squared(set);

    // Fractional solution stored as integer step counts: counts[a][ci] / T.
    // Row sums equal the step number exactly, and 1 after the final step.
    std::vector<std::vector<int>> counts(d, std::vector<int>(c, 0));
    std::vector<double> gains(static_cast<std::size_t>(d) * c);
    std::vector<char> included(d);
    std::vector<double> sample_sum(d);

    for (int step = 0; step < T; ++step) {
        std::fill(gains.begin(), gains.end(), 0.0);
        for (int ci = 0; ci < c; ++ci) {
            const auto& rows = x2[ci];
            const double inv = 1.0 / (static_cast<double>(opts.samples) * rows.size());
            for (int r = 0; r < opts.samples; ++r) {
                auto rng = make_stream(opts.seed, {kTagGradient, static_cast<std::uint64_t>(step),
                                                   static_cast<std::uint64_t>(ci),
                                                   static_cast<std::uint64_t>(r)});
                std::uniform_real_distribution<double> unif(0.0, 1.0);
                // One inclusion sample shared across attributes; excluding a
                // given attribute from it recovers the marginal's R_c draw.
                for (int a = 0; a < d; ++a)
                    included[a] = unif(rng) * T < counts[a][ci] ? 1 : 0;
                std::fill(sample_sum.begin(), sample_sum.end(), 0.0);
                for (const auto& row : rows) {
                    double s = 0.0;
                    for (int a = 0; a < d; ++a)
                        if (included[a]) s += row[a];
                    double sq = std::sqrt(s);
                    double* g = gains.data() + static_cast<std::size_t>(ci) * d;
                    for (int a = 0; a < d; ++a) {
                        if (included[a])
                            g[a] += (sq - std::sqrt(std::max(s - row[a], 0.0))) * inv;
                        else
                            g[a] += (std::sqrt(s + row[a]) - sq) * inv;
                    }
                }
            }
        }
        for (int a = 0; a < d; ++a) {
            int best = 0;
            for (int ci = 1; ci < c; ++ci)
                if (gains[static_cast<std::size_t>(ci) * d + a] >
                    gains[static_cast<std::size_t>(best) * d + a])
                    best = ci;
            counts[a][best] += 1;
        }
    }

    AttributePartition part;
    part.algorithm = PartitionAlgorithm::swa;
    double best_value = -1.0;
    for (int draw = 0; draw < opts.rounding_draws; ++draw) {
        auto rng = make_stream(opts.seed, {kTagRounding, static_cast<std::uint64_t>(draw)});
        std::uniform_real_distribution<double> unif(0.0, 1.0);
        std::vector<int> assignment(d, 0);
        for (int a = 0; a < d; ++a) {
            double u = unif(rng) * T;
            int acc = 0;
            for (int ci = 0; ci < c; ++ci) {
                acc += counts[a][ci];
                if (u < acc) {
                    assignment[a] = ci;
                    break;
                }
            }
        }
        double value = welfare(set, assignment);
        if (value > best_value) {
            best_value = value;
            part.assignment = std::move(assignment);
        }
    }
    part.objective_value = best_value;
    return part;
}

std::vector<std::vector<double>> simplified_scores(const BundleSet& set) {
    validate_bundles(set);
    const int c = static_cast<int>(set.bundles.size());
    const int d = set.dim;
    std::vector<std::vector<double>> scores(c, std::vector<double>(d, 0.0));
    for (int ci = 0; ci < c; ++ci) {
        for (const auto& x : set.bundles[ci].xs) {
            double norm = 0.0;
            for (double v : x) norm += v * v;
            norm = std::sqrt(norm); // positive by bundle invariant
            for (int a = 0; a < d; ++a) scores[ci][a] += x[a] * x[a] / norm;
        }
        for (int a = 0; a < d; ++a) scores[ci][a] /= set.bundles[ci].size();
    }
    return scores;
}

AttributePartition simplified(const BundleSet& set) {
    auto scores = simplified_scores(set);
    const int c = static_cast<int>(set.bundles.size());
    AttributePartition part;
    part.algorithm = PartitionAlgorithm::simplified;
    part.assignment.assign(set.dim, 0);
    for (int a = 0; a < set.dim; ++a) {
        int best = 0;
        for (int ci = 1; ci < c; ++ci)
            if (scores[ci][a] > scores[best][a]) best = ci;
        part.assignment[a] = best;
    }
    part.objective_value = welfare(set, part.assignment);
    return part;
}

namespace {

// CELF lazy greedy for one class: extend `selected` (already-won attributes)
// to k attributes maximizing the class's average restricted 2-norm, skipping
// banned attributes. Ties break toward the lower attribute index.
std::vector<int> lazy_greedy_class(const std::vector<std::vector<double>>& x2_rows, int dim, int k,
                                   const std::vector<int>& forced, const std::vector<char>& banned) {
    std::vector<char> in_set(dim, 0);
    std::vector<double> ss(x2_rows.size(), 0.0);
    std::vector<int> selected;
    for (int a : forced) {
        in_set[a] = 1;
        selected.push_back(a);
        for (std::size_t m = 0; m < x2_rows.size(); ++m) ss[m] += x2_rows[m][a];
    }
    const double inv_n = 1.0 / static_cast<double>(x2_rows.size());
    auto marginal = [&](int a) {
        double gain = 0.0;
        for (std::size_t m = 0; m < x2_rows.size(); ++m)
            gain += std::sqrt(ss[m] + x2_rows[m][a]) - std::sqrt(ss[m]);
        return gain * inv_n;
    };

    struct Entry {
        double gain;
        int attr;
        int round; // selection round the gain was computed in
        bool operator<(const Entry& other) const {
            if (gain != other.gain) return gain < other.gain;
            return attr > other.attr; // prefer the lower attribute index
        }
    };
    std::priority_queue<Entry> queue;
    for (int a = 0; a < dim; ++a)
        if (!in_set[a] && !banned[a]) queue.push({marginal(a), a, 0});

    int round = 0;
    while (static_cast<int>(selected.size()) < k && !queue.empty()) {
        Entry top = queue.top();
        queue.pop();
        if (top.round != round) {
            top.gain = marginal(top.attr);
            top.round = round;
            queue.push(top);
            continue;
        }
        selected.push_back(top.attr);
        in_set[top.attr] = 1;
        for (std::size_t m = 0; m < x2_rows.size(); ++m) ss[m] += x2_rows[m][top.attr];
        ++round;
    }
    return selected;
}

} // namespace

AttributePartition topk(const BundleSet& set, int k, std::uint64_t /*seed*/) {
    validate_bundles(set);
    const int c = static_cast<int>(set.bundles.size());
    const int d = set.dim;
    if (k < 1) throw InputError("topk: k must be at least 1");
    if (static_cast<long long>(c) * k > d)
        throw InfeasibleError("topk: " + std::to_string(c) + " classes * k=" + std::to_string(k) +
                              " exceeds " + std::to_string(d) + " attributes");
    auto x2 = squared(set);

    // Average contribution per (class, attribute).
    std::vector<std::vector<double>> avg(c, std::vector<double>(d, 0.0));
    for (int ci = 0; ci < c; ++ci) {
        for (const auto& x : set.bundles[ci].xs)
            for (int a = 0; a < d; ++a) avg[ci][a] += x[a];
        for (int a = 0; a < d; ++a) avg[ci][a] /= set.bundles[ci].size();
    }

    std::vector<int> owner(d, -1); // contested attributes locked to a winner
    std::vector<std::vector<int>> selections(c);
    for (int iteration = 0; iteration <= d; ++iteration) {
        for (int ci = 0; ci < c; ++ci) {
            std::vector<int> forced;
            std::vector<char> banned(d, 0);
            for (int a = 0; a < d; ++a) {
                if (owner[a] == ci) forced.push_back(a);
                else if (owner[a] >= 0) banned[a] = 1;
            }
            selections[ci] = lazy_greedy_class(x2[ci], d, k, forced, banned);
        }
        // Collision detection across the per-class solutions.
        std::vector<std::vector<int>> claimants(d);
        for (int ci = 0; ci < c; ++ci)
            for (int a : selections[ci]) claimants[a].push_back(ci);
        bool conflict = false;
        for (int a = 0; a < d; ++a) {
            if (claimants[a].size() < 2) continue;
            conflict = true;
            int winner = claimants[a][0];
            for (int ci : claimants[a])
                if (avg[ci][a] > avg[winner][a]) winner = ci;
            owner[a] = winner;
        }
        if (!conflict) break;
    }

    AttributePartition part;
    part.algorithm = PartitionAlgorithm::topk;
    part.k = k;
    part.assignment.assign(d, -1);
    for (int ci = 0; ci < c; ++ci)
        for (int a : selections[ci]) part.assignment[a] = ci;
    part.objective_value = welfare(set, part.assignment);
    return part;
}

} // namespace subchar
