#include "eaqturbo/pauli.hpp"

#include <bit>
#include <stdexcept>

namespace eaqturbo {

BitVec& BitVec::operator^=(const BitVec& other) {
    if (n_ != other.n_) throw std::invalid_argument("BitVec length mismatch");
    w0_ ^= other.w0_;
    for (size_t i = 0; i < rest_.size(); ++i) rest_[i] ^= other.rest_[i];
    return *this;
}

bool BitVec::dot(const BitVec& other) const {
    if (n_ != other.n_) throw std::invalid_argument("BitVec length mismatch");
    uint64_t acc = w0_ & other.w0_;
    for (size_t i = 0; i < rest_.size(); ++i) acc ^= rest_[i] & other.rest_[i];
    return std::popcount(acc) & 1;
}

int BitVec::popcount() const {
    int c = std::popcount(w0_);
    for (uint64_t w : rest_) c += std::popcount(w);
    return c;
}

bool BitVec::any() const {
    if (w0_) return true;
    for (uint64_t w : rest_)
        if (w) return true;
    return false;
}

char pauli_char(Pauli p) {
    switch (p) {
        case Pauli::I: return 'I';
        case Pauli::X: return 'X';
        case Pauli::Y: return 'Y';
        case Pauli::Z: return 'Z';
    }
    return '?';
}

PauliOperator PauliOperator::from_string(const std::string& s) {
    PauliOperator p(s.size());
    for (size_t i = 0; i < s.size(); ++i) {
        switch (s[i]) {
            case 'I': break;
            case 'X': p.set_qubit(i, Pauli::X); break;
            case 'Y': p.set_qubit(i, Pauli::Y); break;
            case 'Z': p.set_qubit(i, Pauli::Z); break;
            default: throw std::invalid_argument("bad Pauli character in \"" + s + "\"");
        }
    }
    return p;
}

int PauliOperator::weight() const {
    int c = 0;
    for (size_t i = 0; i < num_qubits(); ++i)
        if (z.get(i) || x.get(i)) ++c;
    return c;
}

std::string PauliOperator::str() const {
    std::string s;
    s.reserve(num_qubits());
    for (size_t i = 0; i < num_qubits(); ++i) s.push_back(pauli_char(qubit(i)));
    return s;
}

int symplectic_product(const PauliOperator& a, const PauliOperator& b) {
    if (a.num_qubits() != b.num_qubits())
        throw std::invalid_argument("symplectic_product: dimension mismatch");
    return (a.z.dot(b.x) ^ a.x.dot(b.z)) ? 1 : 0;
}

PauliOperator concat(const PauliOperator& a, const PauliOperator& b) {
    PauliOperator out(a.num_qubits() + b.num_qubits());
    for (size_t i = 0; i < a.num_qubits(); ++i) out.set_qubit(i, a.qubit(i));
    for (size_t i = 0; i < b.num_qubits(); ++i) out.set_qubit(a.num_qubits() + i, b.qubit(i));
    return out;
}

PauliOperator slice(const PauliOperator& p, size_t begin, size_t count) {
    if (begin + count > p.num_qubits()) throw std::out_of_range("slice: range exceeds operator");
    PauliOperator out(count);
    for (size_t i = 0; i < count; ++i) out.set_qubit(i, p.qubit(begin + i));
    return out;
}

uint64_t pauli_to_decimal(const PauliOperator& p) {
    size_t n = p.num_qubits();
    if (n > 32) throw std::out_of_range("decimal codec supports at most 32 qubits");
    uint64_t d = 0;
    for (size_t i = 0; i < n; ++i) d = (d << 1) | (p.z.get(i) ? 1 : 0);
    for (size_t i = 0; i < n; ++i) d = (d << 1) | (p.x.get(i) ? 1 : 0);
    return d;
}

PauliOperator decimal_to_pauli(uint64_t d, size_t n) {
    if (n > 32) throw std::out_of_range("decimal codec supports at most 32 qubits");
    if (n < 32 && d >= (uint64_t{1} << (2 * n)))
        throw std::out_of_range("decimal value out of range for qubit count");
    PauliOperator p(n);
    for (size_t i = 0; i < n; ++i) p.x.set(n - 1 - i, (d >> i) & 1);
    for (size_t i = 0; i < n; ++i) p.z.set(n - 1 - i, (d >> (n + i)) & 1);
    return p;
}

}  // namespace eaqturbo
