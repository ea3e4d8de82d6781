#include "subchar/synth.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <random>

#include "subchar/errors.hpp"
#include "subchar/rng.hpp"

namespace subchar {

namespace {

constexpr std::uint64_t kTagNormal = 0x6e6f726d;
constexpr std::uint64_t kTagAdversarial = 0x61647620;

std::vector<int> effective_sizes(const SyntheticSpec& spec) {
    if (spec.class_count < 2) throw InputError("synthetic spec needs at least 2 classes");
    if (spec.dim < 1) throw InputError("synthetic spec needs at least 1 attribute");
    std::vector<int> sizes = spec.sizes;
    if (sizes.empty()) sizes.assign(spec.class_count, 100);
    if (static_cast<int>(sizes.size()) != spec.class_count)
        throw InputError("sizes list does not match class count");
    for (int s : sizes)
        if (s < 1) throw InputError("class sizes must be positive");
    return sizes;
}

BundleSet bundles_from_matrix(const SyntheticSpec& spec, const std::vector<int>& sizes,
                              const std::vector<std::vector<std::vector<double>>>& per_class) {
    std::vector<int> class_ids;
    std::vector<std::vector<double>> xs;
    for (int c = 0; c < spec.class_count; ++c)
        for (int i = 0; i < sizes[c]; ++i) {
            class_ids.push_back(c);
            xs.push_back(per_class[c][i]);
        }
    return make_bundles(class_ids, xs);
}

// The normal scheme can clamp every entry of a class to zero on unlucky
// seeds, which leaves no usable vectors; experiments resample with a salted
// seed instead of failing.
BundleSet generate_usable(SyntheticSpec spec) {
    for (int attempt = 0; attempt < 100; ++attempt) {
        try {
            return generate(spec);
        } catch (const InputError&) {
            spec.seed = mix_seed(spec.seed, {0x7265747279ull, static_cast<std::uint64_t>(attempt)});
        }
    }
    throw InputError("could not generate a usable synthetic instance");
}

} // namespace

BundleSet gen_normal(const SyntheticSpec& spec) {
    auto sizes = effective_sizes(spec);
    std::vector<std::vector<std::vector<double>>> per_class(spec.class_count);
    for (int c = 0; c < spec.class_count; ++c) {
        auto rng = make_stream(spec.seed, {kTagNormal, static_cast<std::uint64_t>(c)});
        std::normal_distribution<double> std_normal(0.0, 1.0);
        std::uniform_real_distribution<double> unif(0.0, 1.0);
        std::vector<double> mu(spec.dim), sigma(spec.dim);
        for (int a = 0; a < spec.dim; ++a) {
            mu[a] = std_normal(rng);
            sigma[a] = unif(rng);
        }
        per_class[c].assign(sizes[c], std::vector<double>(spec.dim));
        for (int i = 0; i < sizes[c]; ++i)
            for (int a = 0; a < spec.dim; ++a) {
                double v = mu[a] + sigma[a] * std_normal(rng);
                per_class[c][i][a] = std::max(v, 0.0);
            }
    }
    return bundles_from_matrix(spec, sizes, per_class);
}

BundleSet gen_adversarial(const SyntheticSpec& spec) {
    if (spec.class_count != 2) throw InputError("adversarial scheme is defined for 2 classes");
    if (spec.p_param <= 0.0 || spec.p_param >= 1.0) throw InputError("P must be in (0, 1)");
    auto sizes = effective_sizes(spec);
    std::vector<std::vector<std::vector<double>>> per_class(2);
    for (int c = 0; c < 2; ++c) {
        auto rng = make_stream(spec.seed, {kTagAdversarial, static_cast<std::uint64_t>(c)});
        double lo = c == 0 ? spec.p_param : 0.0;
        double hi = c == 0 ? 1.0 : 1.0 - spec.p_param;
        std::uniform_real_distribution<double> unif(lo, hi);
        per_class[c].assign(sizes[c], std::vector<double>(spec.dim));
        for (int i = 0; i < sizes[c]; ++i)
            for (int a = 0; a < spec.dim; ++a) per_class[c][i][a] = unif(rng);
    }
    return bundles_from_matrix(spec, sizes, per_class);
}

BundleSet generate(const SyntheticSpec& spec) {
    return spec.scheme == SyntheticScheme::normal ? gen_normal(spec) : gen_adversarial(spec);
}

AlgoRequest parse_algo(const std::string& text) {
    AlgoRequest req;
    req.label = text;
    if (text == "brute") {
        req.algorithm = PartitionAlgorithm::brute;
    } else if (text == "greedy") {
        req.algorithm = PartitionAlgorithm::greedy_half;
    } else if (text == "swa") {
        req.algorithm = PartitionAlgorithm::swa;
    } else if (text == "simplified") {
        req.algorithm = PartitionAlgorithm::simplified;
    } else if (text.rfind("topk", 0) == 0) {
        req.algorithm = PartitionAlgorithm::topk;
        auto colon = text.find(':');
        if (colon == std::string::npos || colon + 1 >= text.size())
            throw InputError("topk needs a budget, e.g. 'topk:5'");
        try {
            req.k = std::stoi(text.substr(colon + 1));
        } catch (const std::exception&) {
            throw InputError("bad topk budget in '" + text + "'");
        }
        if (req.k < 1) throw InputError("topk budget must be positive");
    } else {
        throw InputError("unknown algorithm '" + text + "'");
    }
    return req;
}

AttributePartition run_algorithm(const BundleSet& set, const AlgoRequest& request,
                                 const SwaOptions& swa_opts) {
    switch (request.algorithm) {
        case PartitionAlgorithm::brute: return brute_force(set);
        case PartitionAlgorithm::greedy_half: return greedy_half(set);
        case PartitionAlgorithm::swa: return swa_continuous_greedy(set, swa_opts);
        case PartitionAlgorithm::simplified: return simplified(set);
        case PartitionAlgorithm::topk: return topk(set, request.k, swa_opts.seed);
    }
    throw InputError("unknown algorithm");
}

std::vector<RatioRow> ratio_experiment(const std::vector<int>& dims,
                                       const std::vector<AlgoRequest>& algos,
                                       const SyntheticSpec& base_spec, int repetitions,
                                       std::uint64_t seed, std::uint64_t brute_cap) {
    if (repetitions < 1) throw InputError("repetitions must be positive");
    if (algos.empty()) throw InputError("no algorithms requested");

    std::vector<RatioRow> rows;
    for (int d : dims) {
        bool brute_feasible = true;
        {
            long double combos = 1.0L;
            for (int i = 0; i < d && brute_feasible; ++i) {
                combos *= base_spec.class_count;
                if (combos > static_cast<long double>(brute_cap)) brute_feasible = false;
            }
        }
        for (const auto& algo : algos)
            if (algo.algorithm == PartitionAlgorithm::brute && !brute_feasible)
                throw InfeasibleError("brute force requested at d=" + std::to_string(d) +
                                      ", above the evaluation cap");

        std::vector<double> ratio_sum(algos.size(), 0.0);
        for (int rep = 0; rep < repetitions; ++rep) {
            SyntheticSpec spec = base_spec;
            spec.dim = d;
            spec.seed = mix_seed(seed, {static_cast<std::uint64_t>(d),
                                        static_cast<std::uint64_t>(rep)});
            BundleSet set = generate_usable(spec);

            SwaOptions swa_opts;
            swa_opts.seed = mix_seed(seed, {static_cast<std::uint64_t>(d),
                                            static_cast<std::uint64_t>(rep), 0x73776131});
            std::vector<double> values(algos.size());
            for (std::size_t i = 0; i < algos.size(); ++i)
                values[i] = run_algorithm(set, algos[i], swa_opts).objective_value;

            double denom;
            if (brute_feasible) {
                denom = brute_force(set, brute_cap).objective_value;
            } else {
                denom = *std::max_element(values.begin(), values.end());
            }
            for (std::size_t i = 0; i < algos.size(); ++i)
                ratio_sum[i] += denom > 0.0 ? values[i] / denom : 1.0;
        }
        for (std::size_t i = 0; i < algos.size(); ++i) {
            RatioRow row;
            row.dim = d;
            row.algorithm = algos[i].label;
            row.mean_ratio = ratio_sum[i] / repetitions;
            row.repetitions = repetitions;
            row.vs_optimum = brute_feasible;
            rows.push_back(std::move(row));
        }
    }
    return rows;
}

std::vector<TimingRow> runtime_bench(const std::vector<int>& dims,
                                     const std::vector<AlgoRequest>& algos,
                                     const SyntheticSpec& base_spec, std::uint64_t seed,
                                     double min_seconds) {
    using clock = std::chrono::steady_clock;
    std::vector<TimingRow> rows;
    for (int d : dims) {
        SyntheticSpec spec = base_spec;
        spec.dim = d;
        spec.seed = mix_seed(seed, {static_cast<std::uint64_t>(d)});
        BundleSet set = generate_usable(spec);
        SwaOptions swa_opts;
        swa_opts.seed = mix_seed(seed, {static_cast<std::uint64_t>(d), 0x73776132});
        for (const auto& algo : algos) {
            run_algorithm(set, algo, swa_opts); // warm-up, excluded
            int runs = 0;
            auto start = clock::now();
            double elapsed = 0.0;
            do {
                run_algorithm(set, algo, swa_opts);
                ++runs;
                elapsed = std::chrono::duration<double>(clock::now() - start).count();
            } while (elapsed < min_seconds);
            rows.push_back({d, algo.label, elapsed / runs});
        }
    }
    return rows;
}

namespace {

struct Counts {
    std::vector<std::vector<long long>> class_attr; // #(c, a)
    std::vector<long long> attr;                    // #(a)
    std::vector<long long> cls;                     // #(c)
};

Counts tally(const LabeledNodeTable& table) {
    int c = table.class_count;
    int d = static_cast<int>(table.attribute_names.size());
    Counts counts;
    counts.class_attr.assign(c, std::vector<long long>(d, 0));
    counts.attr.assign(d, 0);
    counts.cls.assign(c, 0);
    for (std::size_t node = 0; node < table.class_ids.size(); ++node) {
        int cid = table.class_ids[node];
        if (cid < 0 || cid >= c) throw InputError("node class id out of range");
        ++counts.cls[cid];
        for (int a = 0; a < d; ++a)
            if (table.indicators[node][a]) {
                ++counts.class_attr[cid][a];
                ++counts.attr[a];
            }
    }
    return counts;
}

} // namespace

double confidence(const LabeledNodeTable& table, int class_id, int attribute) {
    auto counts = tally(table);
    if (counts.attr[attribute] == 0) return 0.0;
    return static_cast<double>(counts.class_attr[class_id][attribute]) / counts.attr[attribute];
}

double support(const LabeledNodeTable& table, int class_id, int attribute) {
    auto counts = tally(table);
    if (counts.cls[class_id] == 0) return 0.0;
    return static_cast<double>(counts.class_attr[class_id][attribute]) / counts.cls[class_id];
}

double class_confidence(const LabeledNodeTable& table, int class_id, int attribute) {
    double own = confidence(table, class_id, attribute);
    double best_other = 0.0;
    bool first = true;
    for (int c = 0; c < table.class_count; ++c) {
        if (c == class_id) continue;
        double v = confidence(table, c, attribute);
        best_other = first ? v : std::max(best_other, v);
        first = false;
    }
    return own - best_other;
}

double class_support(const LabeledNodeTable& table, int class_id, int attribute) {
    double own = support(table, class_id, attribute);
    double best_other = 0.0;
    bool first = true;
    for (int c = 0; c < table.class_count; ++c) {
        if (c == class_id) continue;
        double v = support(table, c, attribute);
        best_other = first ? v : std::max(best_other, v);
        first = false;
    }
    return own - best_other;
}

std::vector<ClassMetrics> class_metrics(const LabeledNodeTable& table,
                                        const std::vector<AttributeWeight>& ranking) {
    if (table.class_count < 2) throw InputError("metrics need at least 2 classes");
    auto counts = tally(table);
    const int d = static_cast<int>(table.attribute_names.size());

    auto attr_index = [&](const std::string& name) {
        for (int a = 0; a < d; ++a)
            if (table.attribute_names[a] == name) return a;
        throw InputError("ranking attribute '" + name + "' not present in the node table");
    };

    std::vector<ClassMetrics> out(table.class_count);
    std::vector<double> weight_sum(table.class_count, 0.0);
    std::vector<double> cs_sum(table.class_count, 0.0);
    std::vector<double> cc_sum(table.class_count, 0.0);
    for (int c = 0; c < table.class_count; ++c) out[c].class_id = c;

    for (const auto& entry : ranking) {
        if (entry.weight < 0.0) throw InputError("ranking weights must be non-negative");
        if (entry.class_id < 0 || entry.class_id >= table.class_count)
            throw InputError("ranking class id out of range");
        int a = attr_index(entry.attribute);
        int c = entry.class_id;

        auto cfd = [&](int cls) {
            return counts.attr[a] == 0
                       ? 0.0
                       : static_cast<double>(counts.class_attr[cls][a]) / counts.attr[a];
        };
        auto sup = [&](int cls) {
            return counts.cls[cls] == 0
                       ? 0.0
                       : static_cast<double>(counts.class_attr[cls][a]) / counts.cls[cls];
        };
        if (counts.attr[a] == 0) ++out[c].undefined_confidence;

        double best_other_cfd = 0.0;
        double best_other_sup = 0.0;
        bool first = true;
        for (int other = 0; other < table.class_count; ++other) {
            if (other == c) continue;
            best_other_cfd = first ? cfd(other) : std::max(best_other_cfd, cfd(other));
            best_other_sup = first ? sup(other) : std::max(best_other_sup, sup(other));
            first = false;
        }
        weight_sum[c] += entry.weight;
        cs_sum[c] += entry.weight * (sup(c) - best_other_sup);
        cc_sum[c] += entry.weight * (cfd(c) - best_other_cfd);
    }

    for (int c = 0; c < table.class_count; ++c) {
        if (weight_sum[c] > 0.0) {
            out[c].avg_class_support = cs_sum[c] / weight_sum[c];
            out[c].avg_class_confidence = cc_sum[c] / weight_sum[c];
        }
    }
    return out;
}

} // namespace subchar
