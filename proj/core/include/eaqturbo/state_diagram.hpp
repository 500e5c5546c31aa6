#ifndef EAQTURBO_STATE_DIAGRAM_HPP
#define EAQTURBO_STATE_DIAGRAM_HPP

#include <functional>
#include <optional>
#include <vector>

#include "eaqturbo/encoder.hpp"

namespace eaqturbo {

/// One edge of the state diagram. `label` packs the logical label as
/// (decimal of the logical-qubit Pauli << cbit count) | cbit X pattern.
/// `physical` packs the physical output as [z bits | x bits], qubit 0 in the
/// low bit of each half.
struct DiagramEdge {
    uint32_t from = 0;
    uint32_t to = 0;
    uint32_t label = 0;
    uint64_t physical = 0;
    uint8_t phys_weight = 0;
    uint8_t log_weight = 0;
};

/// Directed multigraph on the 4^m memory Paulis. Vertices are indexed by the
/// decimal codec of the memory Pauli. Edges are (M : L_q : S^z : I_c :
/// L_c^x + C^z : G^x + G^z) transitions, enumerated lazily per vertex so
/// large logical legs do not have to be materialized.
class StateDiagram {
   public:
    explicit StateDiagram(ConvolutionalEncoder enc);

    const ConvolutionalEncoder& encoder() const { return enc_; }
    size_t num_vertices() const { return num_vertices_; }
    uint64_t edges_per_vertex() const { return edges_per_vertex_; }
    uint64_t num_edges() const { return num_vertices_ * edges_per_vertex_; }

    PauliOperator vertex_pauli(uint32_t v) const;
    uint32_t vertex_of(const PauliOperator& memory) const;

    void for_each_edge_from(uint32_t from, const std::function<void(const DiagramEdge&)>& f) const;
    void for_each_edge(const std::function<void(const DiagramEdge&)>& f) const;

    /// The unique edge matching a fully specified input.
    DiagramEdge edge_for_input(uint32_t from, uint64_t logical_dec, uint32_t ancilla_z,
                               uint64_t cbit_dec, uint64_t gauge_dec) const;

    /// Successor and physical weight under the all-identity input.
    std::pair<uint32_t, int> identity_step(uint32_t v) const;

    std::vector<DiagramEdge> materialize() const;

    /// Physical output as an n-qubit Pauli.
    PauliOperator physical_pauli(const DiagramEdge& e) const;
    /// Logical label of an edge.
    LogicalLabel label_of(const DiagramEdge& e) const;

   private:
    DiagramEdge make_edge(uint32_t from, uint64_t mem_image, uint64_t lq, uint32_t sz,
                          uint64_t cb, uint64_t gg) const;
    uint64_t memory_image(uint32_t v) const;

    ConvolutionalEncoder enc_;
    size_t num_vertices_ = 1;
    uint64_t edges_per_vertex_ = 1;
    // packed [z|x] images (over all N qubits) of each input basis generator
    std::vector<uint64_t> row_bits_;          // 2N rows
    std::vector<uint64_t> logical_images_;    // 4^{k_q}
    std::vector<uint64_t> ancilla_images_;    // 2^a (Z decorations)
    std::vector<uint64_t> cbit_images_;       // 4^{k_c}
    std::vector<uint64_t> gauge_images_;      // 4^g
    std::vector<uint8_t> logical_weights_;    // weight of each logical-qubit Pauli
};

/// Strongly connected structure of the zero-physical-weight subgraph:
/// which vertices sit on silent cycles, and which edges lie on one.
class ZeroCycleAnalysis {
   public:
    explicit ZeroCycleAnalysis(const StateDiagram& d);

    const std::vector<uint32_t>& cycle_vertices() const { return cyclic_; }
    bool in_cycle(uint32_t v) const;
    bool on_zero_cycle(const DiagramEdge& e) const;

   private:
    std::vector<uint32_t> comp_;     // component id per vertex, 0 = not in subgraph
    std::vector<uint32_t> cyclic_;   // sorted vertices on zero-weight cycles
    std::vector<bool> cyclic_mask_;
};

struct CatastrophicityReport {
    bool non_catastrophic = true;
    std::optional<DiagramEdge> witness;  // zero-weight in-cycle edge with logical weight
};

struct RecursionReport {
    bool recursive = true;
    bool quasi_recursive = true;
    std::optional<DiagramEdge> witness;        // offending first edge
    std::optional<DiagramEdge> quasi_witness;  // offending undecorated first edge
};

struct PropertyReport {
    bool non_catastrophic = false;
    bool quasi_recursive = false;
    bool recursive = false;
    std::vector<uint32_t> zero_cycle_vertices;
    std::string witness;
};

/// Vertices lying on some cycle of the zero-physical-weight subgraph
/// (self-loops count).
std::vector<uint32_t> zero_cycle_vertices(const StateDiagram& d);

CatastrophicityReport check_non_catastrophic(const StateDiagram& d);
RecursionReport check_recursive(const StateDiagram& d);
PropertyReport analyze_properties(const StateDiagram& d);

std::string describe_edge(const StateDiagram& d, const DiagramEdge& e);

}  // namespace eaqturbo

#endif
