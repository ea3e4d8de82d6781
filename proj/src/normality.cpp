#include "subchar/normality.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <thread>

#include "subchar/errors.hpp"

namespace subchar {

namespace {

double kernel_value(Kernel k, double a, double b) {
    return k == Kernel::product ? a * b : std::min(a, b);
}

void finalize(ContributionVector& cv, const RawContribution& raw, double scale) {
    const std::size_t d = raw.internal.size();
    cv.x_hat.resize(d);
    cv.x.resize(d);
    double max_entry = -std::numeric_limits<double>::infinity();
    for (std::size_t a = 0; a < d; ++a) {
        cv.x_hat[a] = (raw.internal[a] + raw.external[a]) / scale;
        cv.x[a] = std::max(cv.x_hat[a], 0.0);
        max_entry = std::max(max_entry, cv.x_hat[a]);
    }
    cv.low_quality = max_entry <= 0.0;
}

} // namespace

RawContribution compute_raw_contributions(const AttributedGraph& g, const Subgraph& sub,
                                          Kernel kernel) {
    const int d = g.attribute_count();
    const double two_e = 2.0 * g.total_edge_weight();
    RawContribution raw;
    raw.internal.assign(d, 0.0);
    raw.external.assign(d, 0.0);

    const auto& members = sub.member_nodes;
    for (std::size_t p = 0; p < members.size(); ++p) {
        int i = members[p];
        for (std::size_t q = p + 1; q < members.size(); ++q) {
            int j = members[q];
            double coeff = g.edge_weight(i, j);
            if (two_e > 0.0) coeff -= g.degree(i) * g.degree(j) / two_e;
            if (coeff == 0.0) continue;
            for (int a = 0; a < d; ++a)
                raw.internal[a] += coeff * kernel_value(kernel, g.attribute(i, a), g.attribute(j, a));
        }
    }

    std::vector<char> inside(g.node_count(), 0);
    for (int u : members) inside[u] = 1;
    for (int i : members) {
        for (auto [b, w] : g.neighbors(i)) {
            if (inside[b]) continue;
            double coeff = 1.0;
            if (two_e > 0.0) coeff = 1.0 - std::min(1.0, g.degree(i) * g.degree(b) / two_e);
            if (coeff == 0.0) continue;
            for (int a = 0; a < d; ++a)
                raw.external[a] -= coeff * kernel_value(kernel, g.attribute(i, a), g.attribute(b, a));
        }
    }
    return raw;
}

double compute_contributions(const AttributedGraph& g, const std::vector<Subgraph>& subs,
                             const std::vector<std::string>& ids,
                             std::vector<ContributionVector>& out, Kernel kernel, int threads) {
    if (ids.size() != subs.size()) throw InputError("subgraph id count mismatch");
    std::vector<RawContribution> raws(subs.size());
    auto worker = [&](std::size_t begin, std::size_t end) {
        for (std::size_t i = begin; i < end; ++i)
            raws[i] = compute_raw_contributions(g, subs[i], kernel);
    };
    if (threads <= 1 || subs.size() < 2) {
        worker(0, subs.size());
    } else {
        int nt = std::min<int>(threads, static_cast<int>(subs.size()));
        std::vector<std::thread> pool;
        std::size_t chunk = (subs.size() + nt - 1) / nt;
        for (int t = 0; t < nt; ++t) {
            std::size_t b = t * chunk;
            std::size_t e = std::min(subs.size(), b + chunk);
            if (b < e) pool.emplace_back(worker, b, e);
        }
        for (auto& th : pool) th.join();
    }

    double max_abs = 0.0;
    for (const auto& raw : raws)
        for (std::size_t a = 0; a < raw.internal.size(); ++a)
            max_abs = std::max(max_abs, std::abs(raw.internal[a] + raw.external[a]));
    double scale = std::max(max_abs, 1.0);

    out.resize(subs.size());
    for (std::size_t i = 0; i < subs.size(); ++i) {
        out[i].subgraph_id = ids[i];
        out[i].class_id = subs[i].class_id;
        finalize(out[i], raws[i], scale);
    }
    return scale;
}

ContributionVector compute_contributions(const AttributedGraph& g, const Subgraph& sub,
                                         Kernel kernel) {
    RawContribution raw = compute_raw_contributions(g, sub, kernel);
    double max_abs = 0.0;
    for (std::size_t a = 0; a < raw.internal.size(); ++a)
        max_abs = std::max(max_abs, std::abs(raw.internal[a] + raw.external[a]));
    ContributionVector cv;
    cv.class_id = sub.class_id;
    finalize(cv, raw, std::max(max_abs, 1.0));
    return cv;
}

FocusWeights infer_weights(const ContributionVector& cv, NormKind norm_kind) {
    const std::size_t d = cv.x_hat.size();
    if (d == 0) throw InputError("infer_weights: empty contribution vector");

    FocusWeights fw;
    fw.norm_kind = norm_kind;
    fw.w.assign(d, 0.0);

    double pos_sq = 0.0;
    for (double v : cv.x_hat)
        if (v > 0.0) pos_sq += v * v;

    if (norm_kind == NormKind::L2 && pos_sq > 0.0) {
        double norm = std::sqrt(pos_sq);
        for (std::size_t a = 0; a < d; ++a)
            if (cv.x_hat[a] > 0.0) fw.w[a] = cv.x_hat[a] / norm;
        fw.normality = norm;
        return fw;
    }

    // L1, or L2 fallback when no entry is positive.
    std::size_t best = 0;
    for (std::size_t a = 1; a < d; ++a)
        if (cv.x_hat[a] > cv.x_hat[best]) best = a;
    fw.w[best] = 1.0;
    fw.normality = cv.x_hat[best];
    fw.low_quality = cv.x_hat[best] <= 0.0;
    return fw;
}

double subspace_quality(const std::vector<double>& x, const std::vector<int>& subset) {
    double sum = 0.0;
    for (int a : subset) sum += x[a] * x[a];
    return std::sqrt(sum);
}

} // namespace subchar
