#include "subchar/graph.hpp"

#include <algorithm>
#include <set>
#include <unordered_map>

#include "subchar/errors.hpp"

namespace subchar {

AttributedGraph::AttributedGraph(std::vector<std::string> node_names,
                                 std::vector<WeightedEdge> edges,
                                 std::vector<std::vector<double>> attributes,
                                 std::vector<std::string> attribute_names)
    : node_names_(std::move(node_names)),
      edges_(std::move(edges)),
      attributes_(std::move(attributes)),
      attribute_names_(std::move(attribute_names)) {
    const int n = node_count();
    if (attribute_names_.empty()) throw InputError("graph requires at least one attribute");
    {
        std::set<std::string> uniq(attribute_names_.begin(), attribute_names_.end());
        if (static_cast<int>(uniq.size()) != attribute_count())
            throw InputError("duplicate attribute names");
    }
    if (static_cast<int>(attributes_.size()) != n)
        throw InputError("attribute matrix row count does not match node count");
    for (auto& row : attributes_)
        if (static_cast<int>(row.size()) != attribute_count())
            throw InputError("attribute matrix column count does not match attribute names");

    adjacency_.resize(n);
    degrees_.assign(n, 0.0);
    std::set<std::pair<int, int>> seen;
    for (auto& e : edges_) {
        if (e.u < 0 || e.u >= n || e.v < 0 || e.v >= n)
            throw InputError("edge endpoint out of range");
        if (e.u == e.v)
            throw InputError("self-loop on node '" + node_names_[e.u] + "'");
        if (e.w < 0) throw InputError("negative edge weight");
        auto key = std::minmax(e.u, e.v);
        if (!seen.insert(key).second)
            throw InputError("duplicate edge between '" + node_names_[e.u] + "' and '" +
                             node_names_[e.v] + "'");
        adjacency_[e.u].emplace_back(e.v, e.w);
        adjacency_[e.v].emplace_back(e.u, e.w);
        degrees_[e.u] += e.w;
        degrees_[e.v] += e.w;
        total_edge_weight_ += e.w;
    }
    for (auto& adj : adjacency_) std::sort(adj.begin(), adj.end());
}

double AttributedGraph::edge_weight(int u, int v) const {
    const auto& adj = adjacency_[u];
    auto it = std::lower_bound(adj.begin(), adj.end(), std::make_pair(v, 0.0),
                               [](const auto& a, const auto& b) { return a.first < b.first; });
    if (it != adj.end() && it->first == v) return it->second;
    return 0.0;
}

int AttributedGraph::node_index(const std::string& name) const {
    for (int i = 0; i < node_count(); ++i)
        if (node_names_[i] == name) return i;
    return -1;
}

std::pair<std::vector<std::vector<double>>, std::vector<std::string>>
one_hot_encode(const std::vector<std::string>& labels) {
    if (labels.empty()) throw InputError("one_hot_encode: empty label column");
    std::vector<std::string> distinct;
    std::unordered_map<std::string, int> index;
    for (const auto& l : labels) {
        if (index.emplace(l, static_cast<int>(distinct.size())).second) distinct.push_back(l);
    }
    std::vector<std::vector<double>> columns(distinct.size(),
                                             std::vector<double>(labels.size(), 0.0));
    for (std::size_t row = 0; row < labels.size(); ++row)
        columns[index[labels[row]]][row] = 1.0;
    return {std::move(columns), std::move(distinct)};
}

} // namespace subchar
