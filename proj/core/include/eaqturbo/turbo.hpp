#ifndef EAQTURBO_TURBO_HPP
#define EAQTURBO_TURBO_HPP

#include <cstdint>
#include <numeric>
#include <span>

#include "eaqturbo/encoder.hpp"
#include "eaqturbo/rng.hpp"

namespace eaqturbo {

/// Permutation of qubit positions; applying it to a Pauli moves the
/// (z_i, x_i) pair of position i to position perm[i].
class Interleaver {
   public:
    Interleaver() = default;
    explicit Interleaver(std::vector<uint32_t> perm);

    static Interleaver identity(size_t size);
    static Interleaver random(size_t size, Rng& rng);

    size_t size() const { return perm_.size(); }
    uint32_t destination(size_t i) const { return perm_[i]; }

    PauliOperator apply(const PauliOperator& p) const;
    PauliOperator apply_inverse(const PauliOperator& p) const;

   private:
    std::vector<uint32_t> perm_;
};

struct Rational {
    int64_t num = 0;
    int64_t den = 1;
    void reduce() {
        int64_t g = std::gcd(num, den);
        if (g > 0) {
            num /= g;
            den /= g;
        }
    }
    bool operator==(const Rational&) const = default;
};

/// Serial concatenation: outer encoder, qubit interleaver on the outer
/// physical stream, inner encoder. The outer physical stream feeds the
/// inner logical legs, matched at stream granularity.
struct TurboCode {
    ConvolutionalEncoder outer;
    ConvolutionalEncoder inner;
    size_t frames_outer = 0;
    size_t frames_inner = 0;
    Interleaver interleaver;

    size_t outer_stream_qubits() const { return frames_outer * outer.sig().frame_qubits(); }
    size_t physical_qubits() const { return frames_inner * inner.sig().frame_qubits(); }
    size_t logical_qubits() const { return frames_outer * outer.sig().logical; }

    Rational quantum_rate() const;
    Rational entanglement_rate() const;
};

TurboCode build_turbo(ConvolutionalEncoder outer, ConvolutionalEncoder inner,
                      size_t frames_outer, Rng& rng);
TurboCode build_turbo(ConvolutionalEncoder outer, ConvolutionalEncoder inner,
                      size_t frames_outer, Interleaver interleaver);

/// Error-domain decomposition of a physical-stream Pauli through both
/// stages. Bob-side ebit errors, when present, fold into the Bell syndromes
/// (a Bob-side Z flips e_x, a Bob-side X flips e_z); they never touch the
/// logical content.
struct TurboInversion {
    std::vector<LegDecomposition> inner_frames;
    std::vector<LegDecomposition> outer_frames;
    std::vector<FrameSyndrome> inner_syndromes;
    std::vector<FrameSyndrome> outer_syndromes;
    std::vector<LogicalLabel> outer_labels;  // true logical error, one per outer frame
};

TurboInversion turbo_invert(const TurboCode& code, const PauliOperator& error,
                            std::span<const Pauli> inner_bob_ebits = {},
                            std::span<const Pauli> outer_bob_ebits = {});

/// Minimum-distance scaling exponent (d* - 2) / d* of a serial turbo code
/// whose outer encoder has free distance d*.
Rational min_distance_scaling(int outer_free_distance);

}  // namespace eaqturbo

#endif
