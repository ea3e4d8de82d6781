#pragma once

#include <string>
#include <utility>
#include <vector>

namespace subchar {

struct WeightedEdge {
    int u = 0;
    int v = 0;
    double w = 1.0;
};

// Immutable undirected attributed graph. Node ids are dense 0..n-1; the
// original string ids from the input files are kept in node_names().
// Construction validates: no self-loops, no duplicate undirected edges,
// non-negative weights, unique attribute names.
class AttributedGraph {
public:
    AttributedGraph(std::vector<std::string> node_names,
                    std::vector<WeightedEdge> edges,
                    std::vector<std::vector<double>> attributes, // node_count x d
                    std::vector<std::string> attribute_names);

    int node_count() const { return static_cast<int>(node_names_.size()); }
    int attribute_count() const { return static_cast<int>(attribute_names_.size()); }
    double total_edge_weight() const { return total_edge_weight_; }

    double degree(int node) const { return degrees_[node]; }
    const std::vector<WeightedEdge>& edges() const { return edges_; }
    const std::vector<std::pair<int, double>>& neighbors(int node) const { return adjacency_[node]; }

    // Weight of edge {u, v}, 0 if absent.
    double edge_weight(int u, int v) const;

    double attribute(int node, int attr) const { return attributes_[node][attr]; }
    const std::vector<double>& attribute_row(int node) const { return attributes_[node]; }

    const std::vector<std::string>& node_names() const { return node_names_; }
    const std::vector<std::string>& attribute_names() const { return attribute_names_; }
    int node_index(const std::string& name) const; // -1 if unknown

private:
    std::vector<std::string> node_names_;
    std::vector<WeightedEdge> edges_;
    std::vector<std::vector<std::pair<int, double>>> adjacency_; // sorted by neighbor id
    std::vector<double> degrees_;
    double total_edge_weight_ = 0.0;
    std::vector<std::vector<double>> attributes_;
    std::vector<std::string> attribute_names_;
};

// One-hot encode a categorical column: one binary column per distinct label,
// labels ordered by first appearance. Returns (columns, labels).
std::pair<std::vector<std::vector<double>>, std::vector<std::string>>
one_hot_encode(const std::vector<std::string>& labels);

} // namespace subchar
