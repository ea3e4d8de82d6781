#include "subchar/community.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <limits>
#include <unordered_set>

#include "subchar/errors.hpp"

namespace subchar {

namespace {

void check_node(const AttributedGraph& g, int node) {
    if (node < 0 || node >= g.node_count()) throw InputError("node index out of range");
}

} // namespace

Subgraph ego_net(const AttributedGraph& g, int seed) {
    check_node(g, seed);
    Subgraph sub;
    sub.origin = SubgraphOrigin::ego;
    sub.seed = seed;
    sub.member_nodes.push_back(seed);
    for (auto [v, w] : g.neighbors(seed)) sub.member_nodes.push_back(v);
    std::sort(sub.member_nodes.begin(), sub.member_nodes.end());
    sub.member_nodes.erase(std::unique(sub.member_nodes.begin(), sub.member_nodes.end()),
                           sub.member_nodes.end());
    return sub;
}

PprVectors ppr_push(const AttributedGraph& g, int seed, double alpha, double epsilon) {
    check_node(g, seed);
    if (alpha <= 0.0 || alpha >= 1.0) throw InputError("alpha must be in (0,1)");
    if (epsilon <= 0.0) throw InputError("epsilon must be positive");

    PprVectors vec;
    vec.ppr.assign(g.node_count(), 0.0);
    vec.residual.assign(g.node_count(), 0.0);
    vec.residual[seed] = 1.0;
    if (g.degree(seed) <= 0.0) return vec;

    std::deque<int> queue{seed};
    std::vector<char> queued(g.node_count(), 0);
    queued[seed] = 1;
    while (!queue.empty()) {
        int u = queue.front();
        queue.pop_front();
        queued[u] = 0;
        double du = g.degree(u);
        double ru = vec.residual[u];
        if (du <= 0.0 || ru < epsilon * du) continue;
        // Lazy-walk push: half the leftover mass stays on u, half spreads
        // along edges proportional to weight.
        vec.ppr[u] += alpha * ru;
        double spread = (1.0 - alpha) * ru * 0.5;
        vec.residual[u] = spread;
        for (auto [v, w] : g.neighbors(u)) {
            vec.residual[v] += spread * w / du;
            if (!queued[v] && g.degree(v) > 0.0 && vec.residual[v] >= epsilon * g.degree(v)) {
                queue.push_back(v);
                queued[v] = 1;
            }
        }
        if (vec.residual[u] >= epsilon * du && !queued[u]) {
            queue.push_back(u);
            queued[u] = 1;
        }
    }
    return vec;
}

double conductance(const AttributedGraph& g, const std::vector<int>& members) {
    std::unordered_set<int> inside(members.begin(), members.end());
    double vol = 0.0;
    double cut = 0.0;
    for (int u : members) {
        vol += g.degree(u);
        for (auto [v, w] : g.neighbors(u))
            if (!inside.count(v)) cut += w;
    }
    if (cut == 0.0) return 0.0;
    double other = 2.0 * g.total_edge_weight() - vol;
    double denom = std::min(vol, other);
    if (denom <= 0.0) return 1.0;
    return cut / denom;
}

Subgraph ppr_community(const AttributedGraph& g, int seed, double alpha, double epsilon,
                       int max_size) {
    check_node(g, seed);
    if (max_size < 1) throw InputError("max_size must be at least 1");

    Subgraph sub;
    sub.origin = SubgraphOrigin::ppr;
    sub.seed = seed;
    if (g.degree(seed) <= 0.0 || max_size == 1) {
        sub.member_nodes = {seed};
        return sub;
    }

    PprVectors vec = ppr_push(g, seed, alpha, epsilon);
    std::vector<int> order;
    for (int u = 0; u < g.node_count(); ++u)
        if (vec.ppr[u] > 0.0) order.push_back(u);
    std::sort(order.begin(), order.end(), [&](int a, int b) {
        double ra = vec.ppr[a] / std::max(g.degree(a), 1e-300);
        double rb = vec.ppr[b] / std::max(g.degree(b), 1e-300);
        if (ra != rb) return ra > rb;
        return a < b;
    });
    if (order.empty()) order.push_back(seed);

    // Incremental sweep over prefixes: track volume and cut, keep the best
    // prefix that contains the seed.
    std::unordered_set<int> inside;
    double vol = 0.0;
    double cut = 0.0;
    double total_vol = 2.0 * g.total_edge_weight();
    bool seen_seed = false;
    double best_phi = std::numeric_limits<double>::infinity();
    int best_len = 0;
    int limit = std::min<int>(max_size, static_cast<int>(order.size()));
    for (int idx = 0; idx < limit; ++idx) {
        int u = order[idx];
        double internal = 0.0;
        for (auto [v, w] : g.neighbors(u))
            if (inside.count(v)) internal += w;
        inside.insert(u);
        vol += g.degree(u);
        cut += g.degree(u) - 2.0 * internal;
        if (u == seed) seen_seed = true;
        if (!seen_seed) continue;
        double denom = std::min(vol, total_vol - vol);
        if (denom <= 1e-12) continue; // prefix swallows the whole volume
        double phi = cut <= 1e-15 ? 0.0 : cut / denom;
        if (phi < best_phi) { // strict: ties go to the smaller prefix
            best_phi = phi;
            best_len = idx + 1;
        }
    }
    if (best_len == 0) {
        sub.member_nodes = {seed};
        return sub;
    }
    sub.member_nodes.assign(order.begin(), order.begin() + best_len);
    std::sort(sub.member_nodes.begin(), sub.member_nodes.end());
    return sub;
}

std::vector<int> boundary(const AttributedGraph& g, const Subgraph& sub) {
    std::unordered_set<int> inside(sub.member_nodes.begin(), sub.member_nodes.end());
    std::unordered_set<int> out;
    for (int u : sub.member_nodes)
        for (auto [v, w] : g.neighbors(u))
            if (!inside.count(v)) out.insert(v);
    std::vector<int> result(out.begin(), out.end());
    std::sort(result.begin(), result.end());
    return result;
}

} // namespace subchar
