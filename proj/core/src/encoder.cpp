#include "eaqturbo/encoder.hpp"

#include <algorithm>
#include <bit>
#include <fstream>
#include <sstream>

namespace eaqturbo {

void ResourceSignature::validate() const {
    if (memory < 0 || logical < 0 || ancilla < 0 || ebit < 0 || cbit < 0 || gauge < 0)
        throw invalid_encoder_error("signature: negative leg count");
    if (frame_qubits() < 1) throw invalid_encoder_error("signature: need at least one frame qubit");
}

int LogicalLabel::weight() const {
    return logical.weight() + std::popcount(cbit_x);
}

bool LogicalLabel::is_identity() const { return logical.is_identity() && cbit_x == 0; }

ConvolutionalEncoder::ConvolutionalEncoder(ResourceSignature sig, SymplecticMatrix seed)
    : sig_(sig), seed_(std::move(seed)) {
    sig_.validate();
    if (seed_.num_qubits() != static_cast<size_t>(sig_.total_qubits()))
        throw invalid_encoder_error("seed size does not match signature");
    seed_inv_ = seed_.inverse();
}

LegDecomposition ConvolutionalEncoder::split_legs(const PauliOperator& frame) const {
    if (frame.num_qubits() != static_cast<size_t>(sig_.frame_qubits()))
        throw std::invalid_argument("split_legs: frame width mismatch");
    LegDecomposition d;
    d.logical = slice(frame, sig_.logical_offset(), sig_.logical);
    d.ancilla = slice(frame, sig_.ancilla_offset(), sig_.ancilla);
    d.ebit = slice(frame, sig_.ebit_offset(), sig_.ebit);
    d.cbit = slice(frame, sig_.cbit_offset(), sig_.cbit);
    d.gauge = slice(frame, sig_.gauge_offset(), sig_.gauge);
    return d;
}

PauliOperator ConvolutionalEncoder::join_legs(const LegDecomposition& legs) const {
    PauliOperator frame = legs.logical;
    frame = concat(frame, legs.ancilla);
    frame = concat(frame, legs.ebit);
    frame = concat(frame, legs.cbit);
    frame = concat(frame, legs.gauge);
    if (frame.num_qubits() != static_cast<size_t>(sig_.frame_qubits()))
        throw std::invalid_argument("join_legs: leg widths do not match signature");
    return frame;
}

std::pair<PauliOperator, PauliOperator> ConvolutionalEncoder::step(
    const PauliOperator& memory, const PauliOperator& frame) const {
    if (memory.num_qubits() != static_cast<size_t>(sig_.memory) ||
        frame.num_qubits() != static_cast<size_t>(sig_.frame_qubits()))
        throw std::invalid_argument("step: leg-width mismatch");
    PauliOperator image = seed_.apply(concat(memory, frame));
    return {slice(image, 0, sig_.memory), slice(image, sig_.memory, sig_.frame_qubits())};
}

std::pair<PauliOperator, PauliOperator> ConvolutionalEncoder::step_back(
    const PauliOperator& memory_after, const PauliOperator& physical) const {
    if (memory_after.num_qubits() != static_cast<size_t>(sig_.memory) ||
        physical.num_qubits() != static_cast<size_t>(sig_.frame_qubits()))
        throw std::invalid_argument("step_back: leg-width mismatch");
    PauliOperator pre = seed_inv_.apply(concat(memory_after, physical));
    return {slice(pre, 0, sig_.memory), slice(pre, sig_.memory, sig_.frame_qubits())};
}

namespace {

// Rows of the per-frame map from input legs to physical qubits (memory held
// at identity), as 2n-bit words in [z-legs | x-legs] -> [z-phys | x-phys]
// layout. Requires 2n <= 64.
std::vector<uint64_t> leg_response_rows(const ConvolutionalEncoder& enc) {
    const auto& sig = enc.sig();
    int m = sig.memory, n = sig.frame_qubits(), N = sig.total_qubits();
    if (2 * n > 64) throw std::invalid_argument("leg response limited to 2n <= 64");
    auto phys_bits = [&](const PauliOperator& row) {
        uint64_t w = 0;
        for (int q = 0; q < n; ++q) {
            if (row.z.get(m + q)) w |= uint64_t{1} << q;
            if (row.x.get(m + q)) w |= uint64_t{1} << (n + q);
        }
        return w;
    };
    std::vector<uint64_t> rows(2 * n);
    for (int i = 0; i < n; ++i) {
        rows[i] = phys_bits(enc.seed().row(m + i));          // Z image of leg i
        rows[n + i] = phys_bits(enc.seed().row(N + m + i));  // X image of leg i
    }
    return rows;
}

// Inverse of a GF(2) matrix given as bit rows; empty result if singular.
std::vector<uint64_t> gf2_inverse(std::vector<uint64_t> a, int dim) {
    std::vector<uint64_t> inv(dim);
    for (int i = 0; i < dim; ++i) inv[i] = uint64_t{1} << i;
    for (int col = 0; col < dim; ++col) {
        int pivot = -1;
        for (int r = col; r < dim; ++r) {
            if ((a[r] >> col) & 1) {
                pivot = r;
                break;
            }
        }
        if (pivot < 0) return {};
        std::swap(a[col], a[pivot]);
        std::swap(inv[col], inv[pivot]);
        for (int r = 0; r < dim; ++r) {
            if (r != col && ((a[r] >> col) & 1)) {
                a[r] ^= a[col];
                inv[r] ^= inv[col];
            }
        }
    }
    return inv;
}

uint64_t frame_to_bits(const PauliOperator& p, int n) {
    uint64_t w = 0;
    for (int q = 0; q < n; ++q) {
        if (p.z.get(q)) w |= uint64_t{1} << q;
        if (p.x.get(q)) w |= uint64_t{1} << (n + q);
    }
    return w;
}

PauliOperator bits_to_frame(uint64_t w, int n) {
    PauliOperator p(n);
    for (int q = 0; q < n; ++q) {
        p.z.set(q, (w >> q) & 1);
        p.x.set(q, (w >> (n + q)) & 1);
    }
    return p;
}

uint64_t mul_row_matrix(uint64_t v, const std::vector<uint64_t>& rows) {
    uint64_t out = 0;
    for (size_t i = 0; i < rows.size(); ++i)
        if ((v >> i) & 1) out ^= rows[i];
    return out;
}

}  // namespace

bool ConvolutionalEncoder::leg_response_invertible() const {
    return !gf2_inverse(leg_response_rows(*this), 2 * sig_.frame_qubits()).empty();
}

ConvolutionalEncoder load_encoder(const ResourceSignature& sig,
                                  std::span<const uint64_t> decimals) {
    sig.validate();
    size_t N = static_cast<size_t>(sig.total_qubits());
    if (decimals.size() != 2 * N) {
        throw invalid_encoder_error("expected " + std::to_string(2 * N) + " row values, got " +
                                    std::to_string(decimals.size()));
    }
    std::vector<PauliOperator> rows;
    rows.reserve(2 * N);
    for (size_t i = 0; i < decimals.size(); ++i) {
        if (N < 32 && decimals[i] >= (uint64_t{1} << (2 * N)))
            throw invalid_encoder_error("row " + std::to_string(i + 1) + " value " +
                                        std::to_string(decimals[i]) + " out of range for N = " +
                                        std::to_string(N));
        rows.push_back(decimal_to_pauli(decimals[i], N));
    }
    SymplecticMatrix seed(N, std::move(rows));
    if (auto bad = seed.form_violation()) {
        auto name = [&](size_t r) {
            return (r < N ? "Z" + std::to_string(r + 1) : "X" + std::to_string(r - N + 1));
        };
        throw invalid_encoder_error("symplectic form violated by rows " + name(bad->first) +
                                    " and " + name(bad->second));
    }
    return ConvolutionalEncoder(sig, std::move(seed));
}

std::vector<uint64_t> encoder_decimals(const ConvolutionalEncoder& enc) {
    std::vector<uint64_t> out;
    size_t two_n = 2 * enc.seed().num_qubits();
    out.reserve(two_n);
    for (size_t i = 0; i < two_n; ++i) out.push_back(pauli_to_decimal(enc.seed().row(i)));
    return out;
}

ConvolutionalEncoder read_encoder(std::istream& in) {
    std::string line;
    ResourceSignature sig;
    bool have_header = false;
    std::vector<uint64_t> values;
    size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        auto hash = line.find('#');
        if (hash != std::string::npos) line.resize(hash);
        std::istringstream ss(line);
        if (!have_header) {
            if (ss >> sig.memory >> sig.logical >> sig.ancilla >> sig.ebit >> sig.cbit >> sig.gauge) {
                std::string extra;
                if (ss >> extra)
                    throw invalid_encoder_error("line " + std::to_string(line_no) +
                                                ": trailing tokens after header");
                have_header = true;
            } else if (!line.empty() && line.find_first_not_of(" \t\r") != std::string::npos) {
                throw invalid_encoder_error("line " + std::to_string(line_no) + ": malformed header");
            }
            continue;
        }
        std::string tok;
        while (ss >> tok) {
            try {
                size_t pos = 0;
                uint64_t v = std::stoull(tok, &pos);
                if (pos != tok.size()) throw std::invalid_argument(tok);
                values.push_back(v);
            } catch (const std::exception&) {
                throw invalid_encoder_error("line " + std::to_string(line_no) +
                                            ": malformed decimal \"" + tok + "\"");
            }
        }
    }
    if (!have_header) throw invalid_encoder_error("missing header line");
    return load_encoder(sig, values);
}

ConvolutionalEncoder read_encoder_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw invalid_encoder_error("cannot open encoder file: " + path);
    try {
        return read_encoder(in);
    } catch (const invalid_encoder_error& e) {
        throw invalid_encoder_error(path + ": " + e.what());
    }
}

void write_encoder(std::ostream& out, const ConvolutionalEncoder& enc) {
    const auto& s = enc.sig();
    out << s.memory << ' ' << s.logical << ' ' << s.ancilla << ' ' << s.ebit << ' ' << s.cbit
        << ' ' << s.gauge << '\n';
    for (uint64_t v : encoder_decimals(enc)) out << v << '\n';
}

void write_encoder_file(const std::string& path, const ConvolutionalEncoder& enc) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write encoder file: " + path);
    write_encoder(out, enc);
}

EncodedStream encode_stream(const ConvolutionalEncoder& enc,
                            std::span<const PauliOperator> frames,
                            const PauliOperator& initial_memory) {
    EncodedStream out;
    out.physical.reserve(frames.size());
    PauliOperator memory = initial_memory;
    for (const auto& frame : frames) {
        auto [next, phys] = enc.step(memory, frame);
        out.physical.push_back(std::move(phys));
        memory = std::move(next);
    }
    out.final_memory = std::move(memory);
    return out;
}

EncodedStream encode_stream(const ConvolutionalEncoder& enc,
                            std::span<const PauliOperator> frames) {
    return encode_stream(enc, frames, PauliOperator::identity(enc.sig().memory));
}

InvertedStream invert_stream(const ConvolutionalEncoder& enc,
                             std::span<const PauliOperator> physical, MemoryPin pin,
                             const PauliOperator* pinned_memory) {
    const auto& sig = enc.sig();
    PauliOperator memory =
        pinned_memory ? *pinned_memory : PauliOperator::identity(sig.memory);
    if (memory.num_qubits() != static_cast<size_t>(sig.memory))
        throw std::invalid_argument("invert_stream: pinned memory width mismatch");
    size_t T = physical.size();
    InvertedStream out;
    out.frames.resize(T);

    if (pin == MemoryPin::Final) {
        for (size_t t = T; t-- > 0;) {
            auto [mem_before, frame] = enc.step_back(memory, physical[t]);
            out.frames[t] = enc.split_legs(frame);
            memory = std::move(mem_before);
        }
        out.boundary_memory = std::move(memory);  // induced initial-memory content
        return out;
    }

    // pin == MemoryPin::Initial: solve each frame forward
    int n = sig.frame_qubits();
    auto inv = gf2_inverse(leg_response_rows(enc), 2 * n);
    if (inv.empty())
        throw invalid_encoder_error(
            "pin-initial inversion needs an invertible leg response; this encoder routes "
            "some leg content entirely into memory");
    for (size_t t = 0; t < T; ++t) {
        PauliOperator mem_image = enc.seed().apply(concat(memory, PauliOperator(n)));
        PauliOperator target = slice(mem_image, sig.memory, n) * physical[t];
        PauliOperator frame = bits_to_frame(mul_row_matrix(frame_to_bits(target, n), inv), n);
        auto [next, phys] = enc.step(memory, frame);
        if (!(phys == physical[t])) throw std::logic_error("invert_stream: forward solve failed");
        out.frames[t] = enc.split_legs(frame);
        memory = std::move(next);
    }
    out.boundary_memory = std::move(memory);  // final-memory content
    return out;
}

FrameSyndrome syndrome_of(const ConvolutionalEncoder& enc, const LegDecomposition& legs) {
    const auto& sig = enc.sig();
    FrameSyndrome s;
    for (int i = 0; i < sig.ancilla; ++i)
        if (legs.ancilla.x.get(i)) s.ancilla_x |= uint32_t{1} << i;
    for (int i = 0; i < sig.ebit; ++i) {
        if (legs.ebit.x.get(i)) s.ebit_x |= uint32_t{1} << i;
        if (legs.ebit.z.get(i)) s.ebit_z |= uint32_t{1} << i;
    }
    for (int i = 0; i < sig.cbit; ++i)
        if (legs.cbit.x.get(i)) s.cbit_flip |= uint32_t{1} << i;
    return s;
}

LogicalLabel logical_of(const ConvolutionalEncoder& enc, const LegDecomposition& legs) {
    const auto& sig = enc.sig();
    LogicalLabel label;
    label.logical = legs.logical;
    for (int i = 0; i < sig.cbit; ++i)
        if (legs.cbit.x.get(i)) label.cbit_x |= uint32_t{1} << i;
    return label;
}

ConvolutionalEncoder substitute_resources(const ConvolutionalEncoder& enc,
                                          const ResourceSignature& new_sig) {
    new_sig.validate();
    if (new_sig.memory != enc.sig().memory || new_sig.frame_qubits() != enc.sig().frame_qubits())
        throw invalid_encoder_error("substitution must keep memory size and frame width");
    return ConvolutionalEncoder(new_sig, enc.seed());
}

}  // namespace eaqturbo
