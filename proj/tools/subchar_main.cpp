#include <cstdlib>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <unordered_map>

#include <CLI11.hpp>
#include <json.hpp>

#include "subchar/community.hpp"
#include "subchar/errors.hpp"
#include "subchar/graph.hpp"
#include "subchar/io.hpp"
#include "subchar/normality.hpp"
#include "subchar/ranking.hpp"
#include "subchar/rng.hpp"
#include "subchar/synth.hpp"
#include "subchar/welfare.hpp"

using nlohmann::json;

namespace {

double round12(double v) {
    return std::strtod(subchar::io::fmt12(v).c_str(), nullptr);
}

int default_threads() {
    if (const char* env = std::getenv("SUBCHAR_THREADS")) {
        int n = std::atoi(env);
        if (n >= 1) return n;
    }
    return 1;
}

std::vector<int> parse_int_list(const std::string& text) {
    std::vector<int> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (item.empty()) continue;
        out.push_back(std::stoi(item));
    }
    if (out.empty()) throw subchar::InputError("empty integer list '" + text + "'");
    return out;
}

std::vector<subchar::AlgoRequest> parse_algo_list(const std::string& text) {
    std::vector<subchar::AlgoRequest> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ','))
        if (!item.empty()) out.push_back(subchar::parse_algo(item));
    if (out.empty()) throw subchar::InputError("empty algorithm list");
    return out;
}

std::ofstream open_out(const std::string& path) {
    std::ofstream out(path);
    if (!out) throw subchar::InputError("cannot write file: " + path);
    return out;
}

std::string sibling_hat_path(const std::string& path) {
    auto dot = path.rfind('.');
    if (dot == std::string::npos) return path + "_hat";
    return path.substr(0, dot) + "_hat" + path.substr(dot);
}

subchar::Kernel parse_kernel(const std::string& name) {
    if (name == "product") return subchar::Kernel::product;
    if (name == "min") return subchar::Kernel::min;
    throw subchar::InputError("unknown kernel '" + name + "'");
}

// Subgraphs from a class file: explicit member lists pass through; seed
// entries become ego networks.
std::vector<subchar::Subgraph> subgraphs_from_entries(
    const subchar::AttributedGraph& g, const std::vector<subchar::io::ClassEntry>& entries,
    std::vector<std::string>& ids_out) {
    std::vector<subchar::Subgraph> subs;
    for (const auto& entry : entries) {
        subchar::Subgraph sub;
        sub.class_id = entry.class_id;
        if (entry.is_seed) {
            int seed = g.node_index(entry.id);
            if (seed < 0) throw subchar::InputError("seed node '" + entry.id + "' not in graph");
            sub = subchar::ego_net(g, seed);
            sub.class_id = entry.class_id;
        } else {
            for (const auto& name : entry.members) {
                int idx = g.node_index(name);
                if (idx < 0)
                    throw subchar::InputError("member node '" + name + "' not in graph");
                sub.member_nodes.push_back(idx);
            }
            std::sort(sub.member_nodes.begin(), sub.member_nodes.end());
            sub.member_nodes.erase(
                std::unique(sub.member_nodes.begin(), sub.member_nodes.end()),
                sub.member_nodes.end());
        }
        ids_out.push_back(entry.id);
        subs.push_back(std::move(sub));
    }
    return subs;
}

subchar::BundleSet bundles_from_table(const subchar::io::FocusVectorTable& table,
                                      int* dropped = nullptr) {
    std::vector<int> class_ids;
    std::vector<std::vector<double>> xs;
    int low = 0;
    for (const auto& row : table.rows) {
        if (row.low_quality) {
            ++low;
            continue;
        }
        class_ids.push_back(row.class_id);
        std::vector<double> x(row.values.size());
        for (std::size_t a = 0; a < row.values.size(); ++a) x[a] = std::max(row.values[a], 0.0);
        xs.push_back(std::move(x));
    }
    if (xs.empty()) throw subchar::InputError("no usable (non-low-quality) vectors in input");
    auto set = subchar::make_bundles(class_ids, xs);
    if (dropped) *dropped = low + set.dropped_low_quality;
    return set;
}

// ---------------------------------------------------------------------------

int cmd_extract(const std::string& edges, const std::string& attrs, const std::string& classes,
                const std::string& method, double alpha, double eps, int max_size,
                const std::string& out_path, std::uint64_t seed) {
    auto g = subchar::io::load_graph(edges, attrs);
    auto entries = subchar::io::load_class_file(classes);
    std::vector<subchar::io::ClassEntry> out_entries;
    for (const auto& entry : entries) {
        if (!entry.is_seed)
            throw subchar::InputError("extract expects seed-format class entries");
        int seed_node = g.node_index(entry.id);
        if (seed_node < 0)
            throw subchar::InputError("seed node '" + entry.id + "' not in graph");
        subchar::Subgraph sub = method == "ego"
                                    ? subchar::ego_net(g, seed_node)
                                    : subchar::ppr_community(g, seed_node, alpha, eps, max_size);
        subchar::io::ClassEntry out_entry;
        out_entry.id = entry.id;
        out_entry.class_id = entry.class_id;
        for (int n : sub.member_nodes) out_entry.members.push_back(g.node_names()[n]);
        out_entries.push_back(std::move(out_entry));
    }
    std::vector<std::string> meta = {
        "edges=" + edges, "attrs=" + attrs, "classes=" + classes, "method=" + method,
        "alpha=" + subchar::io::fmt12(alpha), "eps=" + subchar::io::fmt12(eps),
        "max_size=" + std::to_string(max_size), "seed=" + std::to_string(seed)};
    subchar::io::write_class_file(out_entries, out_path, meta);
    return 0;
}

int cmd_xvec(const std::string& edges, const std::string& attrs, const std::string& subgraphs,
             const std::string& kernel_name, int threads, const std::string& out_path,
             std::uint64_t seed) {
    auto g = subchar::io::load_graph(edges, attrs);
    auto entries = subchar::io::load_class_file(subgraphs);
    std::vector<std::string> ids;
    auto subs = subgraphs_from_entries(g, entries, ids);

    std::vector<subchar::ContributionVector> cvs;
    double scale = subchar::compute_contributions(g, subs, ids, cvs, parse_kernel(kernel_name),
                                                  threads);

    subchar::io::FocusVectorTable x_table, hat_table;
    x_table.attribute_names = g.attribute_names();
    hat_table.attribute_names = g.attribute_names();
    for (const auto& cv : cvs) {
        subchar::io::FocusVectorRow row;
        row.id = cv.subgraph_id;
        row.class_id = cv.class_id;
        row.low_quality = cv.low_quality;
        row.values = cv.x;
        x_table.rows.push_back(row);
        row.values = cv.x_hat;
        hat_table.rows.push_back(std::move(row));
    }
    std::vector<std::string> meta = {"edges=" + edges, "attrs=" + attrs,
                                     "subgraphs=" + subgraphs, "kernel=" + kernel_name,
                                     "scale=" + subchar::io::fmt12(scale),
                                     "seed=" + std::to_string(seed)};
    subchar::io::write_focus_csv(x_table, out_path, meta);
    subchar::io::write_focus_csv(hat_table, sibling_hat_path(out_path), meta);
    return 0;
}

int cmd_split(const std::string& input, const std::string& algo_text, int k, int swa_steps,
              int swa_samples, int swa_rounds, std::uint64_t seed, const std::string& out_path) {
    auto table = subchar::io::load_focus_csv(input);
    int dropped = 0;
    auto set = bundles_from_table(table, &dropped);

    subchar::AlgoRequest request = subchar::parse_algo(
        algo_text == "topk" ? "topk:" + std::to_string(k) : algo_text);
    subchar::SwaOptions opts;
    opts.steps = swa_steps;
    opts.samples = swa_samples;
    opts.rounding_draws = swa_rounds;
    opts.seed = seed;
    auto part = subchar::run_algorithm(set, request, opts);

    json assignment = json::object();
    for (int a = 0; a < set.dim; ++a)
        if (part.assignment[a] >= 0) assignment[table.attribute_names[a]] = part.assignment[a];
    json out = {{"algorithm", subchar::algorithm_name(part.algorithm)},
                {"seed", seed},
                {"objective_value", round12(part.objective_value)},
                {"assignment", assignment},
                {"dropped_low_quality", dropped},
                {"inputs", {input}}};
    if (part.k) out["k"] = *part.k;
    open_out(out_path) << out.dump(2) << '\n';
    return 0;
}

subchar::AttributePartition load_partition(const std::string& path,
                                           const std::vector<std::string>& attr_names) {
    std::ifstream in(path);
    if (!in) throw subchar::InputError("cannot open file: " + path);
    json j;
    try {
        in >> j;
    } catch (const json::exception& e) {
        throw subchar::InputError(path + ": bad JSON: " + e.what());
    }
    subchar::AttributePartition part;
    part.assignment.assign(attr_names.size(), -1);
    const auto& assignment = j.at("assignment");
    for (std::size_t a = 0; a < attr_names.size(); ++a) {
        auto it = assignment.find(attr_names[a]);
        if (it != assignment.end()) part.assignment[a] = it->get<int>();
    }
    std::string algo = j.value("algorithm", "brute");
    for (auto candidate : {subchar::PartitionAlgorithm::brute, subchar::PartitionAlgorithm::greedy_half,
                           subchar::PartitionAlgorithm::swa, subchar::PartitionAlgorithm::simplified,
                           subchar::PartitionAlgorithm::topk})
        if (algo == subchar::algorithm_name(candidate)) part.algorithm = candidate;
    part.objective_value = j.value("objective_value", 0.0);
    if (j.contains("k")) part.k = j["k"].get<int>();
    return part;
}

int cmd_rank(const std::string& vectors, const std::string& partition_path, double fraction,
             int reps, std::uint64_t seed, const std::string& out_json,
             const std::string& out_csv) {
    auto table = subchar::io::load_focus_csv(vectors);
    auto set = bundles_from_table(table);
    auto part = load_partition(partition_path, table.attribute_names);
    auto report = subchar::bootstrap_rank(set, table.attribute_names, part, fraction, reps, seed);

    json classes = json::array();
    for (std::size_t c = 0; c < report.per_class.size(); ++c) {
        json attrs = json::array();
        for (const auto& ra : report.per_class[c])
            attrs.push_back({{"attribute", ra.name},
                             {"rank", ra.rank},
                             {"rc_mean", round12(ra.rc_mean)},
                             {"rc_std", round12(ra.rc_std)}});
        classes.push_back({{"class_id", c}, {"attributes", attrs}});
    }
    json out = {{"classes", classes},
                {"fraction", fraction},
                {"repetitions", reps},
                {"seed", seed},
                {"partition_algorithm", report.partition_algorithm},
                {"partition_objective", round12(report.partition_objective)},
                {"inputs", {vectors, partition_path}}};
    open_out(out_json) << out.dump(2) << '\n';

    if (!out_csv.empty()) {
        auto csv = open_out(out_csv);
        csv << "# vectors=" << vectors << "\n# partition=" << partition_path
            << "\n# fraction=" << subchar::io::fmt12(fraction) << "\n# reps=" << reps
            << "\n# seed=" << seed << '\n';
        csv << "class,rank,attribute,rc_mean,rc_std\n";
        for (std::size_t c = 0; c < report.per_class.size(); ++c)
            for (const auto& ra : report.per_class[c])
                csv << c << ',' << ra.rank << ',' << ra.name << ','
                    << subchar::io::fmt12(ra.rc_mean) << ',' << subchar::io::fmt12(ra.rc_std)
                    << '\n';
    }
    return 0;
}

int cmd_series(const std::vector<std::string>& snapshot_paths,
               const std::vector<std::string>& attr_filter, const std::string& out_path) {
    std::vector<subchar::Snapshot> snapshots;
    for (const auto& path : snapshot_paths) {
        auto table = subchar::io::load_focus_csv(path);
        subchar::Snapshot snap;
        snap.label = path;
        snap.attribute_names = table.attribute_names;
        int c = 0;
        for (const auto& row : table.rows) c = std::max(c, row.class_id + 1);
        snap.xhat_by_class.resize(c);
        for (const auto& row : table.rows) {
            if (row.low_quality) continue;
            snap.xhat_by_class[row.class_id].push_back(row.values);
        }
        snapshots.push_back(std::move(snap));
    }
    if (snapshots.empty()) throw subchar::InputError("no snapshot files given");

    std::vector<std::string> attrs = attr_filter;
    if (attrs.empty()) attrs = snapshots.front().attribute_names;
    int class_count = static_cast<int>(snapshots.front().xhat_by_class.size());

    auto out = open_out(out_path);
    for (const auto& path : snapshot_paths) out << "# snapshot=" << path << '\n';
    out << "snapshot,class,attribute,avg_contribution\n";
    for (const auto& name : attrs) {
        for (int c = 0; c < class_count; ++c) {
            auto series = subchar::contribution_series(snapshots, name, c);
            for (std::size_t s = 0; s < series.size(); ++s)
                out << s << ',' << c << ',' << name << ',' << subchar::io::fmt12(series[s])
                    << '\n';
        }
    }
    return 0;
}

int cmd_synth(const std::string& scheme, int d, int classes, int n, double p_param,
              std::uint64_t seed, const std::string& out_path) {
    subchar::SyntheticSpec spec;
    spec.scheme = scheme == "normal" ? subchar::SyntheticScheme::normal
                                     : subchar::SyntheticScheme::adversarial;
    if (scheme != "normal" && scheme != "adversarial")
        throw subchar::InputError("unknown scheme '" + scheme + "'");
    spec.dim = d;
    spec.class_count = classes;
    spec.sizes.assign(classes, n);
    spec.p_param = p_param;
    spec.seed = seed;
    auto set = subchar::generate(spec);

    subchar::io::FocusVectorTable table;
    for (int a = 0; a < d; ++a) table.attribute_names.push_back("a" + std::to_string(a));
    for (const auto& bundle : set.bundles) {
        for (std::size_t i = 0; i < bundle.xs.size(); ++i) {
            subchar::io::FocusVectorRow row;
            row.id = "c" + std::to_string(bundle.class_id) + "_" + std::to_string(i);
            row.class_id = bundle.class_id;
            row.values = bundle.xs[i];
            table.rows.push_back(std::move(row));
        }
    }
    std::vector<std::string> meta = {"scheme=" + scheme,
                                     "d=" + std::to_string(d),
                                     "classes=" + std::to_string(classes),
                                     "n=" + std::to_string(n),
                                     "P=" + subchar::io::fmt12(p_param),
                                     "seed=" + std::to_string(seed),
                                     "dropped_low_quality=" +
                                         std::to_string(set.dropped_low_quality)};
    subchar::io::write_focus_csv(table, out_path, meta);
    return 0;
}

int cmd_bench_ratio(const std::string& dims_text, const std::string& algos_text, int reps,
                    std::uint64_t seed, const std::string& scheme, double p_param, int n,
                    const std::string& out_path) {
    subchar::SyntheticSpec spec;
    spec.scheme = scheme == "adversarial" ? subchar::SyntheticScheme::adversarial
                                          : subchar::SyntheticScheme::normal;
    spec.class_count = 2;
    spec.sizes = {n, n};
    spec.p_param = p_param;
    auto rows = subchar::ratio_experiment(parse_int_list(dims_text), parse_algo_list(algos_text),
                                          spec, reps, seed);
    auto out = open_out(out_path);
    out << "# dims=" << dims_text << "\n# algos=" << algos_text << "\n# reps=" << reps
        << "\n# scheme=" << scheme << "\n# P=" << subchar::io::fmt12(p_param) << "\n# n=" << n
        << "\n# seed=" << seed << '\n';
    out << "d,algorithm,mean_ratio,repetitions,vs_optimum\n";
    for (const auto& row : rows)
        out << row.dim << ',' << row.algorithm << ',' << subchar::io::fmt12(row.mean_ratio) << ','
            << row.repetitions << ',' << (row.vs_optimum ? 1 : 0) << '\n';
    return 0;
}

int cmd_bench_time(const std::string& dims_text, const std::string& algos_text,
                   std::uint64_t seed, int n, const std::string& out_path) {
    subchar::SyntheticSpec spec;
    spec.class_count = 2;
    spec.sizes = {n, n};
    auto rows = subchar::runtime_bench(parse_int_list(dims_text), parse_algo_list(algos_text),
                                       spec, seed);
    auto out = open_out(out_path);
    out << "# dims=" << dims_text << "\n# algos=" << algos_text << "\n# n=" << n
        << "\n# seed=" << seed << '\n';
    out << "d,algorithm,seconds\n";
    for (const auto& row : rows)
        out << row.dim << ',' << row.algorithm << ',' << subchar::io::fmt12(row.seconds) << '\n';
    return 0;
}

// Node table for metrics: attribute file (without requiring a graph) plus a
// seed-format class file. Attribute values binarize as value > 0.
subchar::LabeledNodeTable load_node_table(const std::string& attr_path,
                                          const std::string& class_path) {
    auto entries = subchar::io::load_class_file(class_path);
    std::unordered_map<std::string, int> node_class;
    int class_count = 0;
    for (const auto& entry : entries) {
        if (!entry.is_seed)
            throw subchar::InputError("metrics expects 'node<TAB>class_id' class entries");
        node_class[entry.id] = entry.class_id;
        class_count = std::max(class_count, entry.class_id + 1);
    }

    // Reuse the graph attribute parser by synthesizing an empty edge set is
    // not possible (graphs reject unknown nodes), so parse directly.
    std::ifstream in(attr_path);
    if (!in) throw subchar::InputError("cannot open file: " + attr_path);
    std::vector<std::string> attr_names;
    std::unordered_map<std::string, int> attr_index;
    std::map<std::string, std::vector<std::pair<int, double>>> values; // node -> (attr, value)

    std::string line;
    bool dense = attr_path.size() > 4 && attr_path.substr(attr_path.size() - 4) == ".csv";
    bool have_header = false;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty() || line[0] == '#') continue;
        std::vector<std::string> fields;
        {
            std::stringstream ss(line);
            std::string f;
            while (std::getline(ss, f, dense ? ',' : '\t')) fields.push_back(f);
        }
        if (dense && !have_header) {
            for (std::size_t i = 1; i < fields.size(); ++i) {
                attr_index[fields[i]] = static_cast<int>(attr_names.size());
                attr_names.push_back(fields[i]);
            }
            have_header = true;
            continue;
        }
        if (dense) {
            for (std::size_t i = 1; i < fields.size() && i <= attr_names.size(); ++i)
                values[fields[0]].emplace_back(static_cast<int>(i - 1),
                                               fields[i].empty() ? 0.0 : std::stod(fields[i]));
        } else {
            if (fields.size() != 3)
                throw subchar::InputError(attr_path + ":" + std::to_string(line_no) +
                                          ": expected 'node<TAB>attribute<TAB>value'");
            auto [it, inserted] = attr_index.emplace(fields[1],
                                                     static_cast<int>(attr_names.size()));
            if (inserted) attr_names.push_back(fields[1]);
            values[fields[0]].emplace_back(it->second, std::stod(fields[2]));
        }
    }
    if (attr_names.empty()) throw subchar::InputError(attr_path + ": no attributes found");

    subchar::LabeledNodeTable table;
    table.attribute_names = attr_names;
    table.class_count = class_count;
    for (const auto& [node, cls] : node_class) {
        table.class_ids.push_back(cls);
        std::vector<char> row(attr_names.size(), 0);
        auto it = values.find(node);
        if (it != values.end())
            for (auto [a, v] : it->second)
                if (v > 0.0) row[a] = 1;
        table.indicators.push_back(std::move(row));
    }
    return table;
}

int cmd_metrics(const std::string& attrs, const std::string& classes,
                const std::string& ranking_path, const std::string& out_path) {
    auto table = load_node_table(attrs, classes);

    // Ranking file: either our `rank` CSV output or an imported
    // attribute,class_id,weight CSV.
    std::ifstream in(ranking_path);
    if (!in) throw subchar::InputError("cannot open file: " + ranking_path);
    std::vector<subchar::AttributeWeight> ranking;
    std::string line;
    bool have_header = false;
    bool rank_format = false;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty() || line[0] == '#') continue;
        std::vector<std::string> fields;
        std::stringstream ss(line);
        std::string f;
        while (std::getline(ss, f, ',')) fields.push_back(f);
        if (!have_header) {
            if (fields.size() >= 5 && fields[0] == "class" && fields[2] == "attribute")
                rank_format = true;
            else if (fields.size() == 3 && fields[0] == "attribute")
                rank_format = false;
            else
                throw subchar::InputError(ranking_path +
                                          ": expected a 'class,rank,attribute,rc_mean,rc_std' or "
                                          "'attribute,class_id,weight' header");
            have_header = true;
            continue;
        }
        subchar::AttributeWeight entry;
        if (rank_format) {
            entry.class_id = std::stoi(fields[0]);
            entry.attribute = fields[2];
            entry.weight = std::max(std::stod(fields[3]), 0.0); // rc can be negative
        } else {
            entry.attribute = fields[0];
            entry.class_id = std::stoi(fields[1]);
            entry.weight = std::stod(fields[2]);
        }
        ranking.push_back(std::move(entry));
    }
    if (ranking.empty()) throw subchar::InputError(ranking_path + ": no ranking entries");

    auto metrics = subchar::class_metrics(table, ranking);
    auto out = open_out(out_path);
    out << "# attrs=" << attrs << "\n# classes=" << classes << "\n# ranking=" << ranking_path
        << '\n';
    out << "class,avg_class_support,avg_class_confidence,undefined_confidence\n";
    for (const auto& m : metrics)
        out << m.class_id << ',' << subchar::io::fmt12(m.avg_class_support) << ','
            << subchar::io::fmt12(m.avg_class_confidence) << ',' << m.undefined_confidence
            << '\n';
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Characterize classes of attributed subgraphs: extract local communities, "
                 "compute focus-attribute vectors, partition attributes across classes, rank."};
    app.require_subcommand(1);

    std::uint64_t seed = 0;
    int threads = default_threads();
    app.add_option("--seed", seed, "Base RNG seed, recorded in all outputs");
    app.add_option("--threads", threads, "Worker threads for parallelizable stages");

    // extract
    std::string edges, attrs, classes, method = "ego", out_path;
    double alpha = 0.15, eps = 1e-5;
    int max_size = 100;
    auto* extract = app.add_subcommand("extract", "Extract per-seed local subgraphs");
    extract->add_option("--edges", edges)->required();
    extract->add_option("--attrs", attrs)->required();
    extract->add_option("--classes", classes, "Seed class file: node<TAB>class_id")->required();
    extract->add_option("--method", method)->check(CLI::IsMember({"ego", "ppr"}));
    extract->add_option("--alpha", alpha, "PPR teleport probability");
    extract->add_option("--eps", eps, "PPR push tolerance");
    extract->add_option("--max-size", max_size, "Community size cap");
    extract->add_option("--out", out_path)->required();

    // xvec
    std::string subgraph_path, kernel_name = "product";
    auto* xvec = app.add_subcommand("xvec", "Compute focus-attribute vectors per subgraph");
    xvec->add_option("--edges", edges)->required();
    xvec->add_option("--attrs", attrs)->required();
    xvec->add_option("--subgraphs", subgraph_path, "Class file (explicit members or seeds)")
        ->required();
    xvec->add_option("--kernel", kernel_name)->check(CLI::IsMember({"product", "min"}));
    xvec->add_option("--out", out_path)->required();

    // split
    std::string split_input, algo = "swa";
    int k = 5, swa_steps = 100, swa_samples = 32, swa_rounds = 8;
    auto* split = app.add_subcommand("split", "Partition attributes across classes");
    split->add_option("--input", split_input, "FocusVector CSV")->required();
    split->add_option("--algo", algo)
        ->check(CLI::IsMember({"brute", "greedy", "swa", "simplified", "topk"}));
    split->add_option("--k", k, "Top-k budget per class");
    split->add_option("--swa-steps", swa_steps);
    split->add_option("--swa-samples", swa_samples);
    split->add_option("--swa-rounds", swa_rounds);
    split->add_option("--out", out_path)->required();

    // rank
    std::string vectors, partition_path, out_csv;
    double fraction = 0.9;
    int reps = 100;
    auto* rank = app.add_subcommand("rank", "Bootstrap relative-contribution ranking");
    rank->add_option("--vectors", vectors, "FocusVector CSV")->required();
    rank->add_option("--partition", partition_path, "Partition JSON from split")->required();
    rank->add_option("--fraction", fraction);
    rank->add_option("--reps", reps);
    rank->add_option("--out", out_path, "Report JSON")->required();
    rank->add_option("--csv", out_csv, "Plot-ready CSV");

    // series
    std::vector<std::string> snapshot_paths, attr_filter;
    auto* series = app.add_subcommand("series", "Per-snapshot signed contribution series");
    series->add_option("snapshots", snapshot_paths, "x_hat CSVs in snapshot order")->required();
    series->add_option("--attr", attr_filter, "Restrict to these attribute names");
    series->add_option("--out", out_path)->required();

    // synth
    std::string scheme = "normal";
    int synth_d = 10, synth_classes = 2, synth_n = 100;
    double p_param = 0.5;
    auto* synth = app.add_subcommand("synth", "Generate synthetic x-vector bundles");
    synth->add_option("--scheme", scheme)->check(CLI::IsMember({"normal", "adversarial"}));
    synth->add_option("--d", synth_d);
    synth->add_option("--classes", synth_classes);
    synth->add_option("--n", synth_n, "Subgraphs per class");
    synth->add_option("--P", p_param, "Adversarial interval parameter");
    synth->add_option("--out", out_path)->required();

    // bench
    auto* bench = app.add_subcommand("bench", "Synthetic benchmarks");
    bench->require_subcommand(1);
    std::string dims_text = "50,100,500,1000", algos_text = "swa,simplified";
    int bench_reps = 10, bench_n = 100;
    auto* bench_ratio = bench->add_subcommand("ratio", "Objective-value ratio experiment");
    bench_ratio->add_option("--dims", dims_text);
    bench_ratio->add_option("--algos", algos_text);
    bench_ratio->add_option("--reps", bench_reps);
    bench_ratio->add_option("--scheme", scheme)->check(CLI::IsMember({"normal", "adversarial"}));
    bench_ratio->add_option("--P", p_param);
    bench_ratio->add_option("--n", bench_n);
    bench_ratio->add_option("--out", out_path)->required();
    auto* bench_time = bench->add_subcommand("time", "Runtime scaling");
    bench_time->add_option("--dims", dims_text);
    bench_time->add_option("--algos", algos_text);
    bench_time->add_option("--n", bench_n);
    bench_time->add_option("--out", out_path)->required();

    // metrics
    std::string ranking_path;
    auto* metrics = app.add_subcommand("metrics", "Class support/confidence of a ranking");
    metrics->add_option("--attrs", attrs)->required();
    metrics->add_option("--classes", classes, "Node class file")->required();
    metrics->add_option("--ranking", ranking_path, "Rank CSV or attribute,class_id,weight CSV")
        ->required();
    metrics->add_option("--out", out_path)->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e); // --help
        app.exit(e);
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }

    try {
        if (*extract)
            return cmd_extract(edges, attrs, classes, method, alpha, eps, max_size, out_path,
                               seed);
        if (*xvec) return cmd_xvec(edges, attrs, subgraph_path, kernel_name, threads, out_path,
                                   seed);
        if (*split)
            return cmd_split(split_input, algo, k, swa_steps, swa_samples, swa_rounds, seed,
                             out_path);
        if (*rank) return cmd_rank(vectors, partition_path, fraction, reps, seed, out_path,
                                   out_csv);
        if (*series) return cmd_series(snapshot_paths, attr_filter, out_path);
        if (*synth) return cmd_synth(scheme, synth_d, synth_classes, synth_n, p_param, seed,
                                     out_path);
        if (*bench) {
            if (*bench_ratio)
                return cmd_bench_ratio(dims_text, algos_text, bench_reps, seed, scheme, p_param,
                                       bench_n, out_path);
            return cmd_bench_time(dims_text, algos_text, seed, bench_n, out_path);
        }
        if (*metrics) return cmd_metrics(attrs, classes, ranking_path, out_path);
    } catch (const subchar::InfeasibleError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 1;
}
