#include "eaqturbo/spectrum.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

namespace eaqturbo {

std::optional<int> DistanceSpectrum::free_distance() const {
    for (int w = 0; w <= truncation; ++w)
        if (!counts[w].is_zero()) return w;
    return std::nullopt;
}

namespace {

struct SparseRows {
    // collapsed parallel edges per from-vertex, sorted by target
    std::vector<std::vector<std::pair<uint32_t, WeightPoly>>> full;
    std::vector<std::vector<std::pair<uint32_t, WeightPoly>>> log0;
};

SparseRows collapse_edges(const StateDiagram& d, const ZeroCycleAnalysis& zc, int truncation) {
    size_t numv = d.num_vertices();
    SparseRows rows;
    rows.full.resize(numv);
    rows.log0.resize(numv);
    for (size_t v = 0; v < numv; ++v) {
        std::map<uint32_t, WeightPoly> full, log0;
        d.for_each_edge_from(static_cast<uint32_t>(v), [&](const DiagramEdge& e) {
            if (zc.on_zero_cycle(e)) return;  // inadmissible everywhere
            if (e.phys_weight > truncation) return;
            auto [it, fresh] = full.try_emplace(e.to, truncation);
            it->second.add_term(e.phys_weight, BigUint(1));
            if (e.log_weight == 0) {
                auto [it0, fresh0] = log0.try_emplace(e.to, truncation);
                it0->second.add_term(e.phys_weight, BigUint(1));
            }
        });
        rows.full[v].assign(full.begin(), full.end());
        rows.log0[v].assign(log0.begin(), log0.end());
    }
    return rows;
}

// row u of B = sum_{i>=1} A^i with truncated polynomial arithmetic; exact
// because the excluded edges leave the zero-weight subgraph acyclic
std::vector<WeightPoly> power_sum_row(
    const std::vector<std::vector<std::pair<uint32_t, WeightPoly>>>& a, uint32_t u,
    int truncation, size_t numv) {
    std::vector<WeightPoly> acc(numv, WeightPoly(truncation));
    std::vector<WeightPoly> r(numv, WeightPoly(truncation));
    r[u].add_term(0, BigUint(1));
    uint64_t cap = (uint64_t)(truncation + 1) * numv + 2;
    for (uint64_t iter = 0; iter < cap; ++iter) {
        std::vector<WeightPoly> next(numv, WeightPoly(truncation));
        bool any = false;
        for (size_t v = 0; v < numv; ++v) {
            if (r[v].is_zero()) continue;
            for (const auto& [to, poly] : a[v]) next[to].add_product(r[v], poly);
        }
        for (size_t v = 0; v < numv; ++v) {
            if (!next[v].is_zero()) {
                any = true;
                acc[v] += next[v];
            }
        }
        if (!any) return acc;
        r = std::move(next);
    }
    throw std::runtime_error("distance spectrum power sum failed to stabilize");
}

}  // namespace

std::vector<std::vector<WeightPoly>> weight_adjacency(const StateDiagram& d, int truncation) {
    if (d.encoder().sig().memory > 8)
        throw std::invalid_argument("weight adjacency matrix limited to m <= 8");
    ZeroCycleAnalysis zc(d);
    size_t numv = d.num_vertices();
    std::vector<std::vector<WeightPoly>> a(numv,
                                           std::vector<WeightPoly>(numv, WeightPoly(truncation)));
    d.for_each_edge([&](const DiagramEdge& e) {
        if (zc.on_zero_cycle(e)) return;
        a[e.from][e.to].add_term(e.phys_weight, BigUint(1));
    });
    return a;
}

DistanceSpectrum distance_spectrum(const StateDiagram& d, int truncation) {
    if (truncation < 1) throw std::invalid_argument("truncation degree must be >= 1");
    ZeroCycleAnalysis zc(d);
    SparseRows rows = collapse_edges(d, zc, truncation);
    const auto& z = zc.cycle_vertices();

    DistanceSpectrum spec;
    spec.truncation = truncation;
    spec.counts.assign(truncation + 1, BigUint());
    for (uint32_t u : z) {
        auto b = power_sum_row(rows.full, u, truncation, d.num_vertices());
        auto b0 = power_sum_row(rows.log0, u, truncation, d.num_vertices());
        for (uint32_t v : z) {
            for (int w = 0; w <= truncation; ++w) {
                spec.counts[w] += b[v].coeff(w);
                spec.counts[w] -= b0[v].coeff(w);
            }
        }
    }
    return spec;
}

std::optional<int> free_distance(const StateDiagram& d, int truncation) {
    return distance_spectrum(d, truncation).free_distance();
}

DistanceSpectrum spectrum_oracle(const StateDiagram& d, int truncation) {
    if (d.encoder().sig().memory > 2 || truncation > 7)
        throw std::invalid_argument("spectrum oracle covers m <= 2 and truncation <= 7");
    if (d.edges_per_vertex() > 1024)
        throw std::invalid_argument("spectrum oracle budget exceeded");

    ZeroCycleAnalysis zc(d);
    struct OracleEdge {
        uint32_t to;
        int w;
        bool log;
    };
    size_t numv = d.num_vertices();
    std::vector<std::vector<OracleEdge>> adj(numv);
    for (size_t v = 0; v < numv; ++v) {
        d.for_each_edge_from(static_cast<uint32_t>(v), [&](const DiagramEdge& e) {
            if (zc.on_zero_cycle(e)) return;
            adj[v].push_back({e.to, e.phys_weight, e.log_weight > 0});
        });
        std::stable_sort(adj[v].begin(), adj[v].end(),
                         [](const OracleEdge& a, const OracleEdge& b) { return a.w < b.w; });
    }
    std::vector<bool> in_z(numv, false);
    for (uint32_t v : zc.cycle_vertices()) in_z[v] = true;

    DistanceSpectrum spec;
    spec.truncation = truncation;
    spec.counts.assign(truncation + 1, BigUint());

    uint64_t budget = 500000000;
    auto dfs = [&](auto&& self, uint32_t v, int w, bool haslog) -> void {
        for (const OracleEdge& e : adj[v]) {
            if (w + e.w > truncation) break;
            if (budget-- == 0) throw std::runtime_error("spectrum oracle budget exceeded");
            bool hl = haslog || e.log;
            if (hl && in_z[e.to]) spec.counts[w + e.w] += BigUint(1);
            self(self, e.to, w + e.w, hl);
        }
    };
    for (uint32_t u : zc.cycle_vertices()) dfs(dfs, u, 0, false);
    return spec;
}

}  // namespace eaqturbo
