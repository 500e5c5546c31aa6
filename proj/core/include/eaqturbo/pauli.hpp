#ifndef EAQTURBO_PAULI_HPP
#define EAQTURBO_PAULI_HPP

#include <cstdint>
#include <string>
#include <vector>

namespace eaqturbo {

/// Packed bit vector over GF(2). The first 64 bits live inline so the
/// operators typical of one frame never touch the heap.
class BitVec {
   public:
    BitVec() = default;
    explicit BitVec(size_t n) : n_(n), rest_(n > 64 ? (n - 1) / 64 : 0, 0) {}

    size_t size() const { return n_; }

    bool get(size_t i) const { return (word(i >> 6) >> (i & 63)) & 1; }

    void set(size_t i, bool v) {
        uint64_t mask = uint64_t{1} << (i & 63);
        uint64_t& w = word(i >> 6);
        if (v)
            w |= mask;
        else
            w &= ~mask;
    }

    void flip(size_t i) { word(i >> 6) ^= uint64_t{1} << (i & 63); }

    BitVec& operator^=(const BitVec& other);
    friend BitVec operator^(BitVec a, const BitVec& b) { return a ^= b; }

    /// GF(2) inner product with another vector of the same length.
    bool dot(const BitVec& other) const;

    int popcount() const;
    bool any() const;
    bool operator==(const BitVec& other) const = default;

   private:
    uint64_t& word(size_t k) { return k == 0 ? w0_ : rest_[k - 1]; }
    const uint64_t& word(size_t k) const { return k == 0 ? w0_ : rest_[k - 1]; }

    size_t n_ = 0;
    uint64_t w0_ = 0;
    std::vector<uint64_t> rest_;  // words beyond the first
};

/// Single-qubit Pauli, phase-free, encoded as (z, x) bits.
enum class Pauli : uint8_t { I = 0, X = 1, Z = 2, Y = 3 };

inline Pauli make_pauli(bool z, bool x) {
    return static_cast<Pauli>((z ? 2 : 0) | (x ? 1 : 0));
}
inline bool pauli_z(Pauli p) { return static_cast<uint8_t>(p) & 2; }
inline bool pauli_x(Pauli p) { return static_cast<uint8_t>(p) & 1; }
char pauli_char(Pauli p);

/// An n-qubit Pauli operator, phase-free, as paired z/x bit vectors.
class PauliOperator {
   public:
    PauliOperator() = default;
    explicit PauliOperator(size_t n) : z(n), x(n) {}

    /// Parse from a string like "ZIX" (left-to-right = qubit 1..n).
    static PauliOperator from_string(const std::string& s);
    static PauliOperator identity(size_t n) { return PauliOperator(n); }

    size_t num_qubits() const { return z.size(); }

    Pauli qubit(size_t i) const { return make_pauli(z.get(i), x.get(i)); }
    void set_qubit(size_t i, Pauli p) {
        z.set(i, pauli_z(p));
        x.set(i, pauli_x(p));
    }

    /// Number of qubits with non-identity support.
    int weight() const;
    bool is_identity() const { return !z.any() && !x.any(); }

    /// Phase-free composition (GF(2) sum of the symplectic vectors).
    PauliOperator& operator*=(const PauliOperator& other) {
        z ^= other.z;
        x ^= other.x;
        return *this;
    }
    friend PauliOperator operator*(PauliOperator a, const PauliOperator& b) { return a *= b; }

    bool operator==(const PauliOperator& other) const = default;

    std::string str() const;

    BitVec z, x;
};

/// 1 iff a and b anticommute. Throws std::invalid_argument on length mismatch.
int symplectic_product(const PauliOperator& a, const PauliOperator& b);

/// Tensor-product concatenation and qubit-range extraction.
PauliOperator concat(const PauliOperator& a, const PauliOperator& b);
PauliOperator slice(const PauliOperator& p, size_t begin, size_t count);

/// Decimal codec: the 2n-bit string [z_1..z_n | x_1..x_n], z_1 most
/// significant, read as an integer. Limited to n <= 32.
uint64_t pauli_to_decimal(const PauliOperator& p);
PauliOperator decimal_to_pauli(uint64_t d, size_t n);

}  // namespace eaqturbo

#endif
