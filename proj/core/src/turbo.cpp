#include "eaqturbo/turbo.hpp"

#include <stdexcept>

namespace eaqturbo {

Interleaver::Interleaver(std::vector<uint32_t> perm) : perm_(std::move(perm)) {
    std::vector<bool> seen(perm_.size(), false);
    for (uint32_t p : perm_) {
        if (p >= perm_.size() || seen[p]) throw std::invalid_argument("not a permutation");
        seen[p] = true;
    }
}

Interleaver Interleaver::identity(size_t size) {
    std::vector<uint32_t> perm(size);
    for (size_t i = 0; i < size; ++i) perm[i] = static_cast<uint32_t>(i);
    return Interleaver(std::move(perm));
}

Interleaver Interleaver::random(size_t size, Rng& rng) {
    std::vector<uint32_t> perm(size);
    for (size_t i = 0; i < size; ++i) perm[i] = static_cast<uint32_t>(i);
    for (size_t i = size; i > 1; --i) std::swap(perm[i - 1], perm[rng.below(i)]);
    return Interleaver(std::move(perm));
}

PauliOperator Interleaver::apply(const PauliOperator& p) const {
    if (p.num_qubits() != perm_.size()) throw std::invalid_argument("interleaver size mismatch");
    PauliOperator out(p.num_qubits());
    for (size_t i = 0; i < perm_.size(); ++i) out.set_qubit(perm_[i], p.qubit(i));
    return out;
}

PauliOperator Interleaver::apply_inverse(const PauliOperator& p) const {
    if (p.num_qubits() != perm_.size()) throw std::invalid_argument("interleaver size mismatch");
    PauliOperator out(p.num_qubits());
    for (size_t i = 0; i < perm_.size(); ++i) out.set_qubit(i, p.qubit(perm_[i]));
    return out;
}

Rational TurboCode::quantum_rate() const {
    Rational r{static_cast<int64_t>(frames_outer) * outer.sig().logical,
               static_cast<int64_t>(frames_inner) * inner.sig().frame_qubits()};
    r.reduce();
    return r;
}

Rational TurboCode::entanglement_rate() const {
    Rational r{static_cast<int64_t>(frames_outer) * outer.sig().ebit +
                   static_cast<int64_t>(frames_inner) * inner.sig().ebit,
               static_cast<int64_t>(frames_inner) * inner.sig().frame_qubits()};
    r.reduce();
    return r;
}

namespace {

TurboCode make_turbo(ConvolutionalEncoder outer, ConvolutionalEncoder inner,
                     size_t frames_outer) {
    if (frames_outer == 0) throw std::invalid_argument("need at least one outer frame");
    size_t stream = frames_outer * outer.sig().frame_qubits();
    size_t k_in = inner.sig().logical;
    if (k_in == 0 || stream % k_in != 0)
        throw std::invalid_argument("outer physical stream does not divide into inner frames");
    TurboCode code;
    code.outer = std::move(outer);
    code.inner = std::move(inner);
    code.frames_outer = frames_outer;
    code.frames_inner = stream / k_in;
    return code;
}

}  // namespace

TurboCode build_turbo(ConvolutionalEncoder outer, ConvolutionalEncoder inner,
                      size_t frames_outer, Rng& rng) {
    TurboCode code = make_turbo(std::move(outer), std::move(inner), frames_outer);
    code.interleaver = Interleaver::random(code.outer_stream_qubits(), rng);
    return code;
}

TurboCode build_turbo(ConvolutionalEncoder outer, ConvolutionalEncoder inner,
                      size_t frames_outer, Interleaver interleaver) {
    TurboCode code = make_turbo(std::move(outer), std::move(inner), frames_outer);
    if (interleaver.size() != code.outer_stream_qubits())
        throw std::invalid_argument("interleaver size must match the outer physical stream");
    code.interleaver = std::move(interleaver);
    return code;
}

namespace {

void fold_bob_ebits(std::vector<FrameSyndrome>& syndromes, int ebits_per_frame,
                    std::span<const Pauli> bob) {
    if (bob.empty()) return;
    if (bob.size() != syndromes.size() * static_cast<size_t>(ebits_per_frame))
        throw std::invalid_argument("bob-side ebit error count mismatch");
    for (size_t t = 0; t < syndromes.size(); ++t) {
        for (int i = 0; i < ebits_per_frame; ++i) {
            Pauli b = bob[t * ebits_per_frame + i];
            if (pauli_z(b)) syndromes[t].ebit_x ^= uint32_t{1} << i;
            if (pauli_x(b)) syndromes[t].ebit_z ^= uint32_t{1} << i;
        }
    }
}

}  // namespace

TurboInversion turbo_invert(const TurboCode& code, const PauliOperator& error,
                            std::span<const Pauli> inner_bob_ebits,
                            std::span<const Pauli> outer_bob_ebits) {
    if (error.num_qubits() != code.physical_qubits())
        throw std::invalid_argument("error length does not match the code");

    int n_in = code.inner.sig().frame_qubits();
    int k_in = code.inner.sig().logical;
    std::vector<PauliOperator> inner_phys(code.frames_inner);
    for (size_t t = 0; t < code.frames_inner; ++t)
        inner_phys[t] = slice(error, t * n_in, n_in);

    TurboInversion inv;
    auto inner_result = invert_stream(code.inner, inner_phys, MemoryPin::Final);
    inv.inner_frames = std::move(inner_result.frames);

    inv.inner_syndromes.reserve(code.frames_inner);
    for (const auto& legs : inv.inner_frames)
        inv.inner_syndromes.push_back(syndrome_of(code.inner, legs));
    fold_bob_ebits(inv.inner_syndromes, code.inner.sig().ebit, inner_bob_ebits);

    // the inner logical stream, de-interleaved, is the outer physical error
    PauliOperator interleaved(code.outer_stream_qubits());
    for (size_t t = 0; t < code.frames_inner; ++t)
        for (int q = 0; q < k_in; ++q)
            interleaved.set_qubit(t * k_in + q, inv.inner_frames[t].logical.qubit(q));
    PauliOperator outer_stream = code.interleaver.apply_inverse(interleaved);

    int n_out = code.outer.sig().frame_qubits();
    std::vector<PauliOperator> outer_phys(code.frames_outer);
    for (size_t t = 0; t < code.frames_outer; ++t)
        outer_phys[t] = slice(outer_stream, t * n_out, n_out);

    auto outer_result = invert_stream(code.outer, outer_phys, MemoryPin::Final);
    inv.outer_frames = std::move(outer_result.frames);

    inv.outer_syndromes.reserve(code.frames_outer);
    inv.outer_labels.reserve(code.frames_outer);
    for (const auto& legs : inv.outer_frames) {
        inv.outer_syndromes.push_back(syndrome_of(code.outer, legs));
        inv.outer_labels.push_back(logical_of(code.outer, legs));
    }
    fold_bob_ebits(inv.outer_syndromes, code.outer.sig().ebit, outer_bob_ebits);
    return inv;
}

Rational min_distance_scaling(int outer_free_distance) {
    if (outer_free_distance < 2) throw std::invalid_argument("free distance must be >= 2");
    Rational r{outer_free_distance - 2, outer_free_distance};
    r.reduce();
    return r;
}

}  // namespace eaqturbo
