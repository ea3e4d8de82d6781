#include "subchar/io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>
#include <unordered_map>

#include "subchar/errors.hpp"

namespace subchar::io {

namespace {

std::vector<std::string> split(const std::string& line, char sep) {
    std::vector<std::string> out;
    std::string field;
    std::istringstream ss(line);
    while (std::getline(ss, field, sep)) out.push_back(field);
    if (!line.empty() && line.back() == sep) out.emplace_back();
    return out;
}

bool is_comment_or_blank(const std::string& line) {
    return line.empty() || line[0] == '#' || line == "\r";
}

std::string strip_cr(std::string s) {
    if (!s.empty() && s.back() == '\r') s.pop_back();
    return s;
}

double parse_double(const std::string& s, const std::string& where, int line_no) {
    try {
        std::size_t pos = 0;
        double v = std::stod(s, &pos);
        if (pos != s.size()) throw std::invalid_argument("trailing");
        return v;
    } catch (const std::exception&) {
        throw InputError(where + ":" + std::to_string(line_no) + ": bad number '" + s + "'");
    }
}

int parse_int(const std::string& s, const std::string& where, int line_no) {
    try {
        std::size_t pos = 0;
        int v = std::stoi(s, &pos);
        if (pos != s.size()) throw std::invalid_argument("trailing");
        return v;
    } catch (const std::exception&) {
        throw InputError(where + ":" + std::to_string(line_no) + ": bad integer '" + s + "'");
    }
}

std::ifstream open_or_throw(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot open file: " + path);
    return in;
}

bool ends_with(const std::string& s, const std::string& suffix) {
    return s.size() >= suffix.size() && s.compare(s.size() - suffix.size(), suffix.size(), suffix) == 0;
}

} // namespace

std::string fmt12(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    return buf;
}

AttributedGraph load_graph(const std::string& edge_path, const std::string& attr_path) {
    std::vector<std::string> node_names;
    std::unordered_map<std::string, int> node_index;
    auto intern = [&](const std::string& name) {
        auto [it, inserted] = node_index.emplace(name, static_cast<int>(node_names.size()));
        if (inserted) node_names.push_back(name);
        return it->second;
    };

    std::vector<WeightedEdge> edges;
    {
        auto in = open_or_throw(edge_path);
        std::string line;
        int line_no = 0;
        while (std::getline(in, line)) {
            ++line_no;
            line = strip_cr(line);
            if (is_comment_or_blank(line)) continue;
            auto fields = split(line, '\t');
            if (fields.size() < 2 || fields.size() > 3)
                throw InputError(edge_path + ":" + std::to_string(line_no) +
                                 ": expected 'src<TAB>dst[<TAB>weight]'");
            WeightedEdge e;
            e.u = intern(fields[0]);
            e.v = intern(fields[1]);
            e.w = fields.size() == 3 ? parse_double(fields[2], edge_path, line_no) : 1.0;
            if (e.u == e.v)
                throw InputError(edge_path + ":" + std::to_string(line_no) +
                                 ": self-loop on node '" + fields[0] + "'");
            edges.push_back(e);
        }
    }

    std::vector<std::string> attr_names;
    std::unordered_map<std::string, int> attr_index;
    // (node, attr) -> value, dense matrix filled at the end; missing entries are 0.
    std::vector<std::vector<std::pair<int, double>>> sparse_rows;
    auto set_value = [&](int node, int attr, double value) {
        if (node >= static_cast<int>(sparse_rows.size())) sparse_rows.resize(node + 1);
        sparse_rows[node].emplace_back(attr, value);
    };

    auto in = open_or_throw(attr_path);
    if (ends_with(attr_path, ".csv")) {
        std::string line;
        int line_no = 0;
        bool have_header = false;
        while (std::getline(in, line)) {
            ++line_no;
            line = strip_cr(line);
            if (is_comment_or_blank(line)) continue;
            auto fields = split(line, ',');
            if (!have_header) {
                if (fields.size() < 2)
                    throw InputError(attr_path + ":" + std::to_string(line_no) +
                                     ": dense header needs node column plus attributes");
                for (std::size_t i = 1; i < fields.size(); ++i) {
                    if (!attr_index.emplace(fields[i], static_cast<int>(attr_names.size())).second)
                        throw InputError(attr_path + ":" + std::to_string(line_no) +
                                         ": duplicate attribute name '" + fields[i] + "'");
                    attr_names.push_back(fields[i]);
                }
                have_header = true;
                continue;
            }
            if (fields.size() != attr_names.size() + 1)
                throw InputError(attr_path + ":" + std::to_string(line_no) +
                                 ": wrong column count");
            int node = node_index.count(fields[0]) ? node_index[fields[0]] : -1;
            if (node < 0)
                throw InputError(attr_path + ":" + std::to_string(line_no) +
                                 ": node '" + fields[0] + "' not present in edge file");
            for (std::size_t i = 1; i < fields.size(); ++i) {
                double v = fields[i].empty() ? 0.0 : parse_double(fields[i], attr_path, line_no);
                if (v != 0.0) set_value(node, static_cast<int>(i - 1), v);
            }
        }
        if (!have_header) throw InputError(attr_path + ": empty dense attribute file");
    } else {
        std::string line;
        int line_no = 0;
        while (std::getline(in, line)) {
            ++line_no;
            line = strip_cr(line);
            if (is_comment_or_blank(line)) continue;
            auto fields = split(line, '\t');
            if (fields.size() != 3)
                throw InputError(attr_path + ":" + std::to_string(line_no) +
                                 ": expected 'node<TAB>attribute<TAB>value'");
            int node = node_index.count(fields[0]) ? node_index[fields[0]] : -1;
            if (node < 0)
                throw InputError(attr_path + ":" + std::to_string(line_no) +
                                 ": node '" + fields[0] + "' not present in edge file");
            auto [it, inserted] = attr_index.emplace(fields[1], static_cast<int>(attr_names.size()));
            if (inserted) attr_names.push_back(fields[1]);
            double v = fields[2].empty() ? 0.0 : parse_double(fields[2], attr_path, line_no);
            set_value(node, it->second, v);
        }
    }
    if (attr_names.empty()) throw InputError(attr_path + ": no attributes found");

    std::vector<std::vector<double>> matrix(node_names.size(),
                                            std::vector<double>(attr_names.size(), 0.0));
    for (std::size_t node = 0; node < sparse_rows.size(); ++node)
        for (auto [attr, value] : sparse_rows[node]) matrix[node][attr] = value;

    return AttributedGraph(std::move(node_names), std::move(edges), std::move(matrix),
                           std::move(attr_names));
}

void write_edge_file(const AttributedGraph& g, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw InputError("cannot write file: " + path);
    for (const auto& e : g.edges())
        out << g.node_names()[e.u] << '\t' << g.node_names()[e.v] << '\t' << fmt12(e.w) << '\n';
}

void write_attr_file_sparse(const AttributedGraph& g, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw InputError("cannot write file: " + path);
    // Attribute-major so the reloaded column order matches the original.
    for (int a = 0; a < g.attribute_count(); ++a)
        for (int i = 0; i < g.node_count(); ++i)
            if (g.attribute(i, a) != 0.0)
                out << g.node_names()[i] << '\t' << g.attribute_names()[a] << '\t'
                    << fmt12(g.attribute(i, a)) << '\n';
}

std::vector<ClassEntry> load_class_file(const std::string& path) {
    auto in = open_or_throw(path);
    std::vector<ClassEntry> entries;
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        line = strip_cr(line);
        if (is_comment_or_blank(line)) continue;
        auto fields = split(line, '\t');
        ClassEntry entry;
        if (fields.size() == 2) {
            entry.id = fields[0];
            entry.class_id = parse_int(fields[1], path, line_no);
            entry.is_seed = true;
        } else if (fields.size() == 3) {
            entry.id = fields[0];
            entry.class_id = parse_int(fields[1], path, line_no);
            entry.members = split(fields[2], ',');
            if (entry.members.empty())
                throw InputError(path + ":" + std::to_string(line_no) + ": empty member list");
        } else {
            throw InputError(path + ":" + std::to_string(line_no) +
                             ": expected 2 (seed) or 3 (explicit) tab-separated fields");
        }
        if (entry.class_id < 0)
            throw InputError(path + ":" + std::to_string(line_no) + ": negative class id");
        entries.push_back(std::move(entry));
    }
    if (entries.empty()) throw InputError(path + ": no class entries");
    return entries;
}

void write_class_file(const std::vector<ClassEntry>& entries, const std::string& path,
                      const std::vector<std::string>& metadata) {
    std::ofstream out(path);
    if (!out) throw InputError("cannot write file: " + path);
    for (const auto& m : metadata) out << "# " << m << '\n';
    for (const auto& e : entries) {
        if (e.is_seed) {
            out << e.id << '\t' << e.class_id << '\n';
        } else {
            out << e.id << '\t' << e.class_id << '\t';
            for (std::size_t i = 0; i < e.members.size(); ++i) {
                if (i) out << ',';
                out << e.members[i];
            }
            out << '\n';
        }
    }
}

FocusVectorTable load_focus_csv(const std::string& path) {
    auto in = open_or_throw(path);
    FocusVectorTable table;
    std::string line;
    int line_no = 0;
    bool have_header = false;
    while (std::getline(in, line)) {
        ++line_no;
        line = strip_cr(line);
        if (is_comment_or_blank(line)) continue;
        auto fields = split(line, ',');
        if (!have_header) {
            if (fields.size() < 4 || fields[0] != "subgraph_id" || fields[1] != "class_id" ||
                fields[2] != "low_quality")
                throw InputError(path + ":" + std::to_string(line_no) +
                                 ": expected header 'subgraph_id,class_id,low_quality,<attrs...>'");
            table.attribute_names.assign(fields.begin() + 3, fields.end());
            have_header = true;
            continue;
        }
        if (fields.size() != table.attribute_names.size() + 3)
            throw InputError(path + ":" + std::to_string(line_no) + ": wrong column count");
        FocusVectorRow row;
        row.id = fields[0];
        row.class_id = parse_int(fields[1], path, line_no);
        row.low_quality = parse_int(fields[2], path, line_no) != 0;
        for (std::size_t i = 3; i < fields.size(); ++i)
            row.values.push_back(parse_double(fields[i], path, line_no));
        table.rows.push_back(std::move(row));
    }
    if (!have_header) throw InputError(path + ": missing header row");
    return table;
}

void write_focus_csv(const FocusVectorTable& table, const std::string& path,
                     const std::vector<std::string>& metadata) {
    std::ofstream out(path);
    if (!out) throw InputError("cannot write file: " + path);
    for (const auto& m : metadata) out << "# " << m << '\n';
    out << "subgraph_id,class_id,low_quality";
    for (const auto& name : table.attribute_names) out << ',' << name;
    out << '\n';
    for (const auto& row : table.rows) {
        out << row.id << ',' << row.class_id << ',' << (row.low_quality ? 1 : 0);
        for (double v : row.values) out << ',' << fmt12(v);
        out << '\n';
    }
}

} // namespace subchar::io
