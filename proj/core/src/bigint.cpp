#include "eaqturbo/bigint.hpp"

#include <stdexcept>

namespace eaqturbo {

using u128 = unsigned __int128;

BigUint::BigUint(uint64_t v) {
    if (v) limbs_.push_back(v);
}

void BigUint::normalize() {
    while (!limbs_.empty() && limbs_.back() == 0) limbs_.pop_back();
}

BigUint& BigUint::operator+=(const BigUint& other) {
    if (other.limbs_.size() > limbs_.size()) limbs_.resize(other.limbs_.size(), 0);
    uint64_t carry = 0;
    for (size_t i = 0; i < limbs_.size(); ++i) {
        u128 sum = (u128)limbs_[i] + carry + (i < other.limbs_.size() ? other.limbs_[i] : 0);
        limbs_[i] = (uint64_t)sum;
        carry = (uint64_t)(sum >> 64);
    }
    if (carry) limbs_.push_back(carry);
    return *this;
}

BigUint& BigUint::operator-=(const BigUint& other) {
    if (*this < other) throw std::underflow_error("BigUint subtraction would go negative");
    uint64_t borrow = 0;
    for (size_t i = 0; i < limbs_.size(); ++i) {
        u128 rhs = (u128)(i < other.limbs_.size() ? other.limbs_[i] : 0) + borrow;
        if ((u128)limbs_[i] >= rhs) {
            limbs_[i] = (uint64_t)((u128)limbs_[i] - rhs);
            borrow = 0;
        } else {
            limbs_[i] = (uint64_t)(((u128)1 << 64) + limbs_[i] - rhs);
            borrow = 1;
        }
    }
    normalize();
    return *this;
}

BigUint BigUint::operator*(const BigUint& other) const {
    if (is_zero() || other.is_zero()) return BigUint();
    BigUint out;
    out.limbs_.assign(limbs_.size() + other.limbs_.size(), 0);
    for (size_t i = 0; i < limbs_.size(); ++i) {
        uint64_t carry = 0;
        for (size_t j = 0; j < other.limbs_.size(); ++j) {
            u128 cur = (u128)limbs_[i] * other.limbs_[j] + out.limbs_[i + j] + carry;
            out.limbs_[i + j] = (uint64_t)cur;
            carry = (uint64_t)(cur >> 64);
        }
        out.limbs_[i + other.limbs_.size()] += carry;
    }
    out.normalize();
    return out;
}

std::strong_ordering BigUint::operator<=>(const BigUint& other) const {
    if (limbs_.size() != other.limbs_.size()) return limbs_.size() <=> other.limbs_.size();
    for (size_t i = limbs_.size(); i-- > 0;) {
        if (limbs_[i] != other.limbs_[i]) return limbs_[i] <=> other.limbs_[i];
    }
    return std::strong_ordering::equal;
}

std::string BigUint::str() const {
    if (is_zero()) return "0";
    std::vector<uint64_t> work = limbs_;
    std::string digits;
    while (!work.empty()) {
        // divide by 10^19 across limbs
        constexpr uint64_t base = 10000000000000000000ULL;
        u128 rem = 0;
        for (size_t i = work.size(); i-- > 0;) {
            u128 cur = (rem << 64) | work[i];
            work[i] = (uint64_t)(cur / base);
            rem = cur % base;
        }
        while (!work.empty() && work.back() == 0) work.pop_back();
        std::string chunk = std::to_string((uint64_t)rem);
        if (work.empty()) {
            digits.insert(0, chunk);
        } else {
            digits.insert(0, std::string(19 - chunk.size(), '0') + chunk);
        }
    }
    return digits;
}

BigUint BigUint::from_string(const std::string& s) {
    if (s.empty()) throw std::invalid_argument("BigUint::from_string: empty");
    BigUint out;
    for (char c : s) {
        if (c < '0' || c > '9') throw std::invalid_argument("BigUint::from_string: bad digit");
        out = out * BigUint(10) + BigUint(uint64_t(c - '0'));
    }
    return out;
}

uint64_t BigUint::to_u64() const {
    if (limbs_.size() > 1) throw std::overflow_error("BigUint does not fit in 64 bits");
    return limbs_.empty() ? 0 : limbs_[0];
}

double BigUint::to_double() const {
    double out = 0;
    for (size_t i = limbs_.size(); i-- > 0;) out = out * 18446744073709551616.0 + (double)limbs_[i];
    return out;
}

}  // namespace eaqturbo
