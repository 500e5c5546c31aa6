#ifndef EAQTURBO_DECODER_HPP
#define EAQTURBO_DECODER_HPP

#include <array>
#include <memory>
#include <span>

#include "eaqturbo/channel.hpp"
#include "eaqturbo/turbo.hpp"

namespace eaqturbo {

/// Distribution over {I, X, Z, Y} for one qubit, indexed by the Pauli enum.
using QubitPrior = std::array<double, 4>;

QubitPrior channel_prior(double p);

/// Soft-input/soft-output decoder for one convolutional stage: an exact
/// forward-backward pass over the frame-indexed chain of memory states.
/// Transitions are all leg assignments whose syndrome content matches the
/// observed bits; ancilla-Z, cbit-Z and gauge content are summed out.
class SisoDecoder {
   public:
    explicit SisoDecoder(ConvolutionalEncoder enc);

    const ConvolutionalEncoder& encoder() const { return enc_; }
    size_t num_states() const { return num_states_; }
    size_t num_labels() const { return num_labels_; }

    /// Per-frame Pauli of logical-label slot `slot` under label index `label`.
    Pauli label_slot(uint32_t label, int slot) const;

    struct Result {
        bool failed = false;  // zero total likelihood
        std::vector<std::vector<double>> logical_posterior;  // [frame][label]
        std::vector<std::vector<double>> logical_extrinsic;  // [frame][label]
        std::vector<QubitPrior> physical_posterior;          // [frame * n + qubit]
        std::vector<QubitPrior> physical_extrinsic;          // [frame * n + qubit]
    };

    /// `physical_priors` has one entry per physical qubit (frame-major).
    /// `logical_priors` may be empty for uniform priors. `p_ebit` > 0 turns
    /// the Bell-syndrome constraint into a likelihood over Bob-side errors.
    Result decode(std::span<const FrameSyndrome> syndromes,
                  std::span<const QubitPrior> physical_priors,
                  std::span<const std::vector<double>> logical_priors, double p_ebit = 0.0) const;

   private:
    struct Entry {
        uint32_t label;      // (logical decimal << k_c) | cbit_x
        uint32_t next;       // next memory state
        uint32_t phys_code;  // 2 bits per physical qubit, Pauli enum order
    };

    size_t bucket_index(size_t state, uint32_t s_key, uint32_t ex_key, uint32_t ez_key) const;

    ConvolutionalEncoder enc_;
    size_t num_states_ = 1;
    size_t num_labels_ = 1;
    size_t num_keys_ = 1;  // 2^(a + 2c)
    std::vector<Entry> entries_;
    std::vector<uint32_t> bucket_start_;  // num_states * num_keys + 1 offsets
};

struct TurboDecodeResult {
    std::vector<LogicalLabel> estimate;  // one per outer frame
    int iterations = 0;
    bool converged = false;
    bool failed = false;
};

/// Iterative decoder for a serial turbo code: inner stage with channel
/// priors, extrinsics exchanged through the interleaver as factorized
/// per-qubit Pauli distributions, outer stage produces the hard decision.
/// Stops when the hard decision repeats or after max_iterations.
class TurboDecoder {
   public:
    explicit TurboDecoder(const TurboCode& code);

    /// Shares prebuilt trellis tables; they depend on the encoders only, so
    /// one pair serves every interleaver draw.
    TurboDecoder(const TurboCode& code, const SisoDecoder& inner, const SisoDecoder& outer);

    TurboDecodeResult decode(std::span<const FrameSyndrome> inner_syndromes,
                             std::span<const FrameSyndrome> outer_syndromes,
                             const ChannelModel& model, int max_iterations = 12) const;

   private:
    const TurboCode* code_;
    const SisoDecoder* inner_;
    const SisoDecoder* outer_;
    std::unique_ptr<std::pair<SisoDecoder, SisoDecoder>> owned_;
};

/// Success iff the estimated logical label stream equals the true one.
bool judge(const TurboDecodeResult& result, std::span<const LogicalLabel> truth);

}  // namespace eaqturbo

#endif
