#pragma once

#include <string>
#include <vector>

#include "subchar/graph.hpp"

namespace subchar::io {

// Edge file: TSV `src<TAB>dst[<TAB>weight]`, '#' comments ignored.
// Attribute file: sparse TSV `node<TAB>attribute<TAB>value` (.tsv) or dense
// CSV with header row of attribute names and first column node id (.csv).
// Node ids are arbitrary strings, densely re-indexed on load.
AttributedGraph load_graph(const std::string& edge_path, const std::string& attr_path);

void write_edge_file(const AttributedGraph& g, const std::string& path);
void write_attr_file_sparse(const AttributedGraph& g, const std::string& path);

struct ClassEntry {
    std::string id;                   // seed node name or subgraph id
    int class_id = 0;
    std::vector<std::string> members; // empty for seed-format entries
    bool is_seed = false;
};

// Class file: TSV `node<TAB>class_id` (seeds) or
// `subgraph_id<TAB>class_id<TAB>node1,node2,...` (explicit member lists).
std::vector<ClassEntry> load_class_file(const std::string& path);
void write_class_file(const std::vector<ClassEntry>& entries, const std::string& path,
                      const std::vector<std::string>& metadata);

struct FocusVectorRow {
    std::string id;
    int class_id = 0;
    bool low_quality = false;
    std::vector<double> values;
};

struct FocusVectorTable {
    std::vector<std::string> attribute_names;
    std::vector<FocusVectorRow> rows;
};

FocusVectorTable load_focus_csv(const std::string& path);
void write_focus_csv(const FocusVectorTable& table, const std::string& path,
                     const std::vector<std::string>& metadata);

// Double formatted with 12 significant digits.
std::string fmt12(double v);

} // namespace subchar::io
