#ifndef EAQTURBO_ENCODER_HPP
#define EAQTURBO_ENCODER_HPP

#include <cstdint>
#include <iosfwd>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "eaqturbo/symplectic.hpp"

namespace eaqturbo {

struct invalid_encoder_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Input leg counts of a convolutional seed transformation. Leg order within
/// a frame is fixed: memory, logical, ancilla, ebit, cbit, gauge; the output
/// order is memory, physical.
struct ResourceSignature {
    int memory = 0;   // m
    int logical = 0;  // k_q
    int ancilla = 0;  // a
    int ebit = 0;     // c
    int cbit = 0;     // k_c
    int gauge = 0;    // g

    int frame_qubits() const { return logical + ancilla + ebit + cbit + gauge; }  // n
    int total_qubits() const { return memory + frame_qubits(); }                  // N = m + n

    // leg offsets within the n frame qubits
    int logical_offset() const { return 0; }
    int ancilla_offset() const { return logical; }
    int ebit_offset() const { return logical + ancilla; }
    int cbit_offset() const { return logical + ancilla + ebit; }
    int gauge_offset() const { return logical + ancilla + ebit + cbit; }

    void validate() const;
    bool operator==(const ResourceSignature&) const = default;
};

/// Per-frame content of the input legs after decomposition.
struct LegDecomposition {
    PauliOperator logical;  // k_q qubits
    PauliOperator ancilla;  // a qubits
    PauliOperator ebit;     // c qubits
    PauliOperator cbit;     // k_c qubits
    PauliOperator gauge;    // g qubits
};

/// Measured syndrome bits of one frame. Bit i of ancilla_x is set iff
/// ancilla leg i carries X or Y. (ebit_x, ebit_z) are the Bell outcomes,
/// bit i of each for ebit i. cbit_flip records X support on cbit legs.
struct FrameSyndrome {
    uint32_t ancilla_x = 0;
    uint32_t ebit_x = 0;
    uint32_t ebit_z = 0;
    uint32_t cbit_flip = 0;
    bool operator==(const FrameSyndrome&) const = default;
    bool is_zero() const { return ancilla_x == 0 && ebit_x == 0 && ebit_z == 0; }
};

/// Logical content of one frame: a Pauli on the logical qubits plus the
/// X-only pattern on cbit legs (a Z on a cbit is an irrelevant phase).
struct LogicalLabel {
    PauliOperator logical;  // k_q qubits
    uint32_t cbit_x = 0;    // k_c bits
    bool operator==(const LogicalLabel&) const = default;
    int weight() const;
    bool is_identity() const;
};

class ConvolutionalEncoder {
   public:
    ConvolutionalEncoder() = default;
    ConvolutionalEncoder(ResourceSignature sig, SymplecticMatrix seed);

    const ResourceSignature& sig() const { return sig_; }
    const SymplecticMatrix& seed() const { return seed_; }
    const SymplecticMatrix& seed_inverse() const { return seed_inv_; }

    /// Split/join between a frame Pauli on n qubits and the typed legs.
    LegDecomposition split_legs(const PauliOperator& frame) const;
    PauliOperator join_legs(const LegDecomposition& legs) const;

    /// (memory' : physical) = (memory : frame) * seed
    std::pair<PauliOperator, PauliOperator> step(const PauliOperator& memory,
                                                 const PauliOperator& frame) const;
    /// (memory : frame) = (memory' : physical) * seed^{-1}
    std::pair<PauliOperator, PauliOperator> step_back(const PauliOperator& memory_after,
                                                      const PauliOperator& physical) const;

    /// True iff the per-frame map from input legs to physical qubits (with
    /// zero memory) is invertible over GF(2); required for pin-initial
    /// stream inversion.
    bool leg_response_invertible() const;

    bool operator==(const ConvolutionalEncoder&) const = default;

   private:
    ResourceSignature sig_;
    SymplecticMatrix seed_;
    SymplecticMatrix seed_inv_;
};

/// Decode 2N decimal row values (order Z_1..Z_N, X_1..X_N) into an encoder.
/// Validates the symplectic form and names the offending row pair on failure.
ConvolutionalEncoder load_encoder(const ResourceSignature& sig, std::span<const uint64_t> decimals);

std::vector<uint64_t> encoder_decimals(const ConvolutionalEncoder& enc);

/// Text format: header "m k_q a c k_c g", then 2N decimal row values.
ConvolutionalEncoder read_encoder(std::istream& in);
ConvolutionalEncoder read_encoder_file(const std::string& path);
void write_encoder(std::ostream& out, const ConvolutionalEncoder& enc);
void write_encoder_file(const std::string& path, const ConvolutionalEncoder& enc);

struct EncodedStream {
    std::vector<PauliOperator> physical;  // one n-qubit Pauli per frame
    PauliOperator final_memory;
};

/// Frame-wise application of the seed transformation, threading memory.
EncodedStream encode_stream(const ConvolutionalEncoder& enc,
                            std::span<const PauliOperator> frames,
                            const PauliOperator& initial_memory);
EncodedStream encode_stream(const ConvolutionalEncoder& enc, std::span<const PauliOperator> frames);

/// Which end of the memory thread is pinned when decomposing a physical
/// stream. PinFinal applies the inverse seed frame-reversed from an assumed
/// final memory (always solvable). PinInitial assumes the stream starts with
/// the given memory content and solves each frame forward; it requires an
/// invertible leg response.
enum class MemoryPin { Final, Initial };

struct InvertedStream {
    std::vector<LegDecomposition> frames;
    PauliOperator boundary_memory;  // at the opposite end of the pinned one
};

InvertedStream invert_stream(const ConvolutionalEncoder& enc,
                             std::span<const PauliOperator> physical,
                             MemoryPin pin = MemoryPin::Final,
                             const PauliOperator* pinned_memory = nullptr);

FrameSyndrome syndrome_of(const ConvolutionalEncoder& enc, const LegDecomposition& legs);
LogicalLabel logical_of(const ConvolutionalEncoder& enc, const LegDecomposition& legs);

/// Same symplectic matrix with re-labeled legs. The new signature must keep
/// the memory size and total frame width.
ConvolutionalEncoder substitute_resources(const ConvolutionalEncoder& enc,
                                          const ResourceSignature& new_sig);

}  // namespace eaqturbo

#endif
