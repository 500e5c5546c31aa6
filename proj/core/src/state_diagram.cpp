#include "eaqturbo/state_diagram.hpp"

#include <algorithm>
#include <bit>
#include <stdexcept>
#include <unordered_map>

namespace eaqturbo {

namespace {

// packed [z | x] layout over all N qubits, qubit 0 in the low bit of each half
uint64_t pack_row(const PauliOperator& row) {
    size_t n = row.num_qubits();
    uint64_t w = 0;
    for (size_t q = 0; q < n; ++q) {
        if (row.z.get(q)) w |= uint64_t{1} << q;
        if (row.x.get(q)) w |= uint64_t{1} << (n + q);
    }
    return w;
}

}  // namespace

StateDiagram::StateDiagram(ConvolutionalEncoder enc) : enc_(std::move(enc)) {
    const auto& sig = enc_.sig();
    if (sig.memory > 13) throw std::invalid_argument("state diagram memory budget is m <= 13");
    size_t N = static_cast<size_t>(sig.total_qubits());
    if (N > 32) throw std::invalid_argument("state diagram supports at most 32 total qubits");

    num_vertices_ = size_t{1} << (2 * sig.memory);
    edges_per_vertex_ = (uint64_t{1} << (2 * sig.logical)) * (uint64_t{1} << sig.ancilla) *
                        (uint64_t{1} << (2 * sig.cbit)) * (uint64_t{1} << (2 * sig.gauge));

    row_bits_.resize(2 * N);
    for (size_t i = 0; i < 2 * N; ++i) row_bits_[i] = pack_row(enc_.seed().row(i));

    int m = sig.memory;
    auto leg_images = [&](int offset, int width, bool z_only) {
        size_t count = z_only ? (size_t{1} << width) : (size_t{1} << (2 * width));
        std::vector<uint64_t> images(count, 0);
        for (size_t idx = 0; idx < count; ++idx) {
            uint64_t img = 0;
            if (z_only) {
                for (int q = 0; q < width; ++q)
                    if ((idx >> q) & 1) img ^= row_bits_[m + offset + q];
            } else {
                uint64_t zpart = idx >> width, xpart = idx & ((uint64_t{1} << width) - 1);
                for (int q = 0; q < width; ++q) {
                    // decimal layout: qubit 1 is the most significant bit
                    if ((zpart >> (width - 1 - q)) & 1) img ^= row_bits_[m + offset + q];
                    if ((xpart >> (width - 1 - q)) & 1) img ^= row_bits_[N + m + offset + q];
                }
            }
            images[idx] = img;
        }
        return images;
    };

    logical_images_ = leg_images(sig.logical_offset(), sig.logical, false);
    ancilla_images_ = leg_images(sig.ancilla_offset(), sig.ancilla, true);
    cbit_images_ = leg_images(sig.cbit_offset(), sig.cbit, false);
    gauge_images_ = leg_images(sig.gauge_offset(), sig.gauge, false);

    logical_weights_.resize(size_t{1} << (2 * sig.logical));
    for (size_t lq = 0; lq < logical_weights_.size(); ++lq) {
        uint64_t zpart = lq >> sig.logical, xpart = lq & ((uint64_t{1} << sig.logical) - 1);
        logical_weights_[lq] = static_cast<uint8_t>(std::popcount(zpart | xpart));
    }
}

PauliOperator StateDiagram::vertex_pauli(uint32_t v) const {
    return decimal_to_pauli(v, enc_.sig().memory);
}

uint32_t StateDiagram::vertex_of(const PauliOperator& memory) const {
    return static_cast<uint32_t>(pauli_to_decimal(memory));
}

uint64_t StateDiagram::memory_image(uint32_t v) const {
    const auto& sig = enc_.sig();
    int m = sig.memory;
    size_t N = static_cast<size_t>(sig.total_qubits());
    uint64_t img = 0;
    for (int q = 0; q < m; ++q) {
        if ((v >> (2 * m - 1 - q)) & 1) img ^= row_bits_[q];      // Z on memory qubit q
        if ((v >> (m - 1 - q)) & 1) img ^= row_bits_[N + q];      // X on memory qubit q
    }
    return img;
}

DiagramEdge StateDiagram::make_edge(uint32_t from, uint64_t mem_image, uint64_t lq, uint32_t sz,
                                    uint64_t cb, uint64_t gg) const {
    const auto& sig = enc_.sig();
    int m = sig.memory, n = sig.frame_qubits();
    size_t N = static_cast<size_t>(sig.total_qubits());
    uint64_t img = mem_image ^ logical_images_[lq] ^ ancilla_images_[sz] ^ cbit_images_[cb] ^
                   gauge_images_[gg];
    uint64_t zhalf = img & ((uint64_t{1} << N) - 1);
    uint64_t xhalf = img >> N;

    uint32_t to = 0;
    for (int q = 0; q < m; ++q) {
        if ((zhalf >> q) & 1) to |= uint32_t{1} << (2 * m - 1 - q);
        if ((xhalf >> q) & 1) to |= uint32_t{1} << (m - 1 - q);
    }
    uint64_t pz = (zhalf >> m) & ((uint64_t{1} << n) - 1);
    uint64_t px = (xhalf >> m) & ((uint64_t{1} << n) - 1);

    DiagramEdge e;
    e.from = from;
    e.to = to;
    e.physical = pz | (px << n);
    e.phys_weight = static_cast<uint8_t>(std::popcount(pz | px));
    uint32_t cbx = static_cast<uint32_t>(cb & ((uint64_t{1} << sig.cbit) - 1));
    e.label = static_cast<uint32_t>((lq << sig.cbit) | cbx);
    e.log_weight = static_cast<uint8_t>(logical_weights_[lq] + std::popcount(cbx));
    return e;
}

void StateDiagram::for_each_edge_from(uint32_t from,
                                      const std::function<void(const DiagramEdge&)>& f) const {
    const auto& sig = enc_.sig();
    uint64_t mem_image = memory_image(from);
    size_t n_lq = size_t{1} << (2 * sig.logical);
    size_t n_sz = size_t{1} << sig.ancilla;
    size_t n_cb = size_t{1} << (2 * sig.cbit);
    size_t n_gg = size_t{1} << (2 * sig.gauge);
    for (size_t lq = 0; lq < n_lq; ++lq)
        for (size_t sz = 0; sz < n_sz; ++sz)
            for (size_t cb = 0; cb < n_cb; ++cb)
                for (size_t gg = 0; gg < n_gg; ++gg)
                    f(make_edge(from, mem_image, lq, static_cast<uint32_t>(sz), cb, gg));
}

void StateDiagram::for_each_edge(const std::function<void(const DiagramEdge&)>& f) const {
    for (size_t v = 0; v < num_vertices_; ++v)
        for_each_edge_from(static_cast<uint32_t>(v), f);
}

DiagramEdge StateDiagram::edge_for_input(uint32_t from, uint64_t logical_dec, uint32_t ancilla_z,
                                         uint64_t cbit_dec, uint64_t gauge_dec) const {
    return make_edge(from, memory_image(from), logical_dec, ancilla_z, cbit_dec, gauge_dec);
}

std::pair<uint32_t, int> StateDiagram::identity_step(uint32_t v) const {
    DiagramEdge e = make_edge(v, memory_image(v), 0, 0, 0, 0);
    return {e.to, e.phys_weight};
}

std::vector<DiagramEdge> StateDiagram::materialize() const {
    if (num_edges() > (uint64_t{1} << 26))
        throw std::invalid_argument("state diagram too large to materialize");
    std::vector<DiagramEdge> edges;
    edges.reserve(num_edges());
    for_each_edge([&](const DiagramEdge& e) { edges.push_back(e); });
    return edges;
}

PauliOperator StateDiagram::physical_pauli(const DiagramEdge& e) const {
    int n = enc_.sig().frame_qubits();
    PauliOperator p(n);
    for (int q = 0; q < n; ++q) {
        p.z.set(q, (e.physical >> q) & 1);
        p.x.set(q, (e.physical >> (n + q)) & 1);
    }
    return p;
}

LogicalLabel StateDiagram::label_of(const DiagramEdge& e) const {
    const auto& sig = enc_.sig();
    LogicalLabel label;
    label.logical = decimal_to_pauli(e.label >> sig.cbit, sig.logical);
    label.cbit_x = e.label & ((uint32_t{1} << sig.cbit) - 1);
    return label;
}

std::string describe_edge(const StateDiagram& d, const DiagramEdge& e) {
    LogicalLabel label = d.label_of(e);
    std::string s = "M=" + d.vertex_pauli(e.from).str() + " --(L=" + label.logical.str();
    if (d.encoder().sig().cbit > 0) s += "|c:" + std::to_string(label.cbit_x);
    s += ", P=" + d.physical_pauli(e).str() + ")--> M'=" + d.vertex_pauli(e.to).str();
    return s;
}

namespace {

// Tarjan over a sparse subgraph given as an adjacency map on vertex ids.
// Returns component ids (vertices absent from the map are their own
// singleton component) and the set of vertices on cycles.
struct SccResult {
    std::unordered_map<uint32_t, uint32_t> comp;
    std::vector<uint32_t> cyclic_vertices;
};

SccResult tarjan_scc(const std::unordered_map<uint32_t, std::vector<uint32_t>>& adj,
                     const std::unordered_map<uint32_t, bool>& self_loop) {
    SccResult res;
    std::unordered_map<uint32_t, uint32_t> index, lowlink;
    std::unordered_map<uint32_t, bool> on_stack;
    std::vector<uint32_t> stack;
    uint32_t next_index = 0, next_comp = 0;

    struct Frame {
        uint32_t v;
        size_t child;
    };
    std::vector<Frame> call;

    for (const auto& [root, _] : adj) {
        if (index.count(root)) continue;
        call.push_back({root, 0});
        index[root] = lowlink[root] = next_index++;
        stack.push_back(root);
        on_stack[root] = true;
        while (!call.empty()) {
            auto& fr = call.back();
            auto it = adj.find(fr.v);
            const auto& succ = it->second;
            if (fr.child < succ.size()) {
                uint32_t w = succ[fr.child++];
                auto iw = index.find(w);
                if (iw == index.end()) {
                    if (adj.count(w)) {
                        call.push_back({w, 0});
                        index[w] = lowlink[w] = next_index++;
                        stack.push_back(w);
                        on_stack[w] = true;
                    } else {
                        // sink with no outgoing subgraph edges
                        index[w] = lowlink[w] = next_index++;
                        stack.push_back(w);
                        on_stack[w] = true;
                        // immediately close it as its own component
                        stack.pop_back();
                        on_stack[w] = false;
                        res.comp[w] = next_comp++;
                    }
                } else if (on_stack.count(w) && on_stack[w]) {
                    lowlink[fr.v] = std::min(lowlink[fr.v], iw->second);
                }
            } else {
                uint32_t v = fr.v;
                call.pop_back();
                if (!call.empty())
                    lowlink[call.back().v] = std::min(lowlink[call.back().v], lowlink[v]);
                if (lowlink[v] == index[v]) {
                    std::vector<uint32_t> members;
                    for (;;) {
                        uint32_t w = stack.back();
                        stack.pop_back();
                        on_stack[w] = false;
                        res.comp[w] = next_comp;
                        members.push_back(w);
                        if (w == v) break;
                    }
                    ++next_comp;
                    bool cyclic = members.size() > 1;
                    if (!cyclic) {
                        auto sl = self_loop.find(v);
                        cyclic = sl != self_loop.end() && sl->second;
                    }
                    if (cyclic)
                        for (uint32_t w : members) res.cyclic_vertices.push_back(w);
                }
            }
        }
    }
    return res;
}

void check_analysis_budget(const StateDiagram& d) {
    if (d.encoder().sig().memory > 10)
        throw std::invalid_argument("property analysis supports m <= 10");
}

// decoration-only edges (identity logical label)
template <typename F>
void for_each_log0_edge_from(const StateDiagram& d, uint32_t v, F&& f) {
    const auto& sig = d.encoder().sig();
    size_t n_sz = size_t{1} << sig.ancilla;
    size_t n_cz = size_t{1} << sig.cbit;
    size_t n_gg = size_t{1} << (2 * sig.gauge);
    for (size_t sz = 0; sz < n_sz; ++sz)
        for (size_t cz = 0; cz < n_cz; ++cz)
            for (size_t gg = 0; gg < n_gg; ++gg)
                f(d.edge_for_input(v, 0, static_cast<uint32_t>(sz), cz << sig.cbit, gg));
}

// edges whose logical label has weight exactly one
template <typename F>
void for_each_log1_edge_from(const StateDiagram& d, uint32_t v, F&& f) {
    const auto& sig = d.encoder().sig();
    size_t n_sz = size_t{1} << sig.ancilla;
    size_t n_cz = size_t{1} << sig.cbit;
    size_t n_gg = size_t{1} << (2 * sig.gauge);
    auto decorations = [&](uint64_t lq, uint32_t cbx) {
        for (size_t sz = 0; sz < n_sz; ++sz)
            for (size_t cz = 0; cz < n_cz; ++cz)
                for (size_t gg = 0; gg < n_gg; ++gg)
                    f(d.edge_for_input(v, lq, static_cast<uint32_t>(sz), (cz << sig.cbit) | cbx,
                                       gg));
    };
    for (int i = 0; i < sig.logical; ++i) {
        uint64_t zbit = uint64_t{1} << (2 * sig.logical - 1 - i);
        uint64_t xbit = uint64_t{1} << (sig.logical - 1 - i);
        decorations(xbit, 0);         // X_i
        decorations(zbit, 0);         // Z_i
        decorations(zbit | xbit, 0);  // Y_i
    }
    for (int j = 0; j < sig.cbit; ++j) decorations(0, uint32_t{1} << j);
}

}  // namespace

ZeroCycleAnalysis::ZeroCycleAnalysis(const StateDiagram& d) {
    check_analysis_budget(d);
    std::unordered_map<uint32_t, std::vector<uint32_t>> adj;
    std::unordered_map<uint32_t, bool> self_loop;
    d.for_each_edge([&](const DiagramEdge& e) {
        if (e.phys_weight != 0) return;
        adj[e.from].push_back(e.to);
        if (e.from == e.to) self_loop[e.from] = true;
    });
    SccResult scc = tarjan_scc(adj, self_loop);
    comp_.assign(d.num_vertices(), 0);
    for (const auto& [v, c] : scc.comp) comp_[v] = c + 1;
    cyclic_ = std::move(scc.cyclic_vertices);
    std::sort(cyclic_.begin(), cyclic_.end());
    cyclic_.erase(std::unique(cyclic_.begin(), cyclic_.end()), cyclic_.end());
    cyclic_mask_.assign(d.num_vertices(), false);
    for (uint32_t v : cyclic_) cyclic_mask_[v] = true;
}

bool ZeroCycleAnalysis::in_cycle(uint32_t v) const { return cyclic_mask_[v]; }

bool ZeroCycleAnalysis::on_zero_cycle(const DiagramEdge& e) const {
    if (e.phys_weight != 0) return false;
    return comp_[e.from] != 0 && comp_[e.from] == comp_[e.to];
}

std::vector<uint32_t> zero_cycle_vertices(const StateDiagram& d) {
    return ZeroCycleAnalysis(d).cycle_vertices();
}

CatastrophicityReport check_non_catastrophic(const StateDiagram& d) {
    ZeroCycleAnalysis zc(d);
    CatastrophicityReport rep;
    d.for_each_edge([&](const DiagramEdge& e) {
        if (!rep.non_catastrophic) return;
        if (e.log_weight > 0 && zc.on_zero_cycle(e)) {
            rep.non_catastrophic = false;
            rep.witness = e;
        }
    });
    return rep;
}

RecursionReport check_recursive(const StateDiagram& d) {
    check_analysis_budget(d);
    const auto& sig = d.encoder().sig();
    ZeroCycleAnalysis zc(d);
    const std::vector<uint32_t>& starts = zc.cycle_vertices();

    auto edge_on_zero_cycle = [&](const DiagramEdge& e) { return zc.on_zero_cycle(e); };

    // cycles that are both physically silent and logically trivial
    std::unordered_map<uint32_t, std::vector<uint32_t>> h_adj;
    std::unordered_map<uint32_t, bool> h_self;
    for (size_t v = 0; v < d.num_vertices(); ++v) {
        for_each_log0_edge_from(d, static_cast<uint32_t>(v), [&](const DiagramEdge& e) {
            if (e.phys_weight != 0) return;
            h_adj[e.from].push_back(e.to);
            if (e.from == e.to) h_self[e.from] = true;
        });
    }
    SccResult scc_h = tarjan_scc(h_adj, h_self);

    // vertices that can reach such a cycle through logically trivial edges
    std::unordered_map<uint32_t, std::vector<uint32_t>> rev0;
    for (size_t v = 0; v < d.num_vertices(); ++v) {
        for_each_log0_edge_from(d, static_cast<uint32_t>(v), [&](const DiagramEdge& e) {
            rev0[e.to].push_back(e.from);
        });
    }
    std::vector<uint8_t> reaches(d.num_vertices(), 0);
    std::vector<uint32_t> queue;
    for (uint32_t v : scc_h.cyclic_vertices) {
        if (!reaches[v]) {
            reaches[v] = 1;
            queue.push_back(v);
        }
    }
    while (!queue.empty()) {
        uint32_t v = queue.back();
        queue.pop_back();
        auto it = rev0.find(v);
        if (it == rev0.end()) continue;
        for (uint32_t u : it->second) {
            if (!reaches[u]) {
                reaches[u] = 1;
                queue.push_back(u);
            }
        }
    }

    RecursionReport rep;
    for (uint32_t v : starts) {
        if (!rep.recursive) break;
        for_each_log1_edge_from(d, v, [&](const DiagramEdge& e) {
            if (!rep.recursive) return;
            if (edge_on_zero_cycle(e)) return;  // inadmissible first edge
            if (reaches[e.to]) {
                rep.recursive = false;
                rep.witness = e;
            }
        });
    }

    // quasi-recursiveness follows the single undecorated continuation
    for (uint32_t v : starts) {
        if (!rep.quasi_recursive) break;
        for (int i = 0; i < sig.logical && rep.quasi_recursive; ++i) {
            uint64_t zbit = uint64_t{1} << (2 * sig.logical - 1 - i);
            uint64_t xbit = uint64_t{1} << (sig.logical - 1 - i);
            for (uint64_t lq : {xbit, zbit, zbit | xbit}) {
                DiagramEdge first = d.edge_for_input(v, lq, 0, 0, 0);
                if (edge_on_zero_cycle(first)) continue;
                // walk the all-identity response until the memory revisits
                std::unordered_map<uint32_t, size_t> seen;
                std::vector<int> step_weight;
                uint32_t cur = first.to;
                for (;;) {
                    auto [ins, fresh] = seen.emplace(cur, step_weight.size());
                    if (!fresh) {
                        bool cycle_silent = true;
                        for (size_t s = ins->second; s < step_weight.size(); ++s)
                            if (step_weight[s] > 0) cycle_silent = false;
                        if (cycle_silent) {
                            rep.quasi_recursive = false;
                            rep.quasi_witness = first;
                        }
                        break;
                    }
                    auto [nxt, w] = d.identity_step(cur);
                    step_weight.push_back(w);
                    cur = nxt;
                }
                if (!rep.quasi_recursive) break;
            }
        }
    }
    return rep;
}

PropertyReport analyze_properties(const StateDiagram& d) {
    PropertyReport rep;
    rep.zero_cycle_vertices = zero_cycle_vertices(d);
    CatastrophicityReport cat = check_non_catastrophic(d);
    RecursionReport rec = check_recursive(d);
    rep.non_catastrophic = cat.non_catastrophic;
    rep.recursive = rec.recursive;
    rep.quasi_recursive = rec.quasi_recursive;
    if (cat.witness)
        rep.witness = "catastrophic: " + describe_edge(d, *cat.witness);
    else if (rec.witness)
        rep.witness = "finite response: " + describe_edge(d, *rec.witness);
    return rep;
}

}  // namespace eaqturbo
