#ifndef EAQTURBO_BIGINT_HPP
#define EAQTURBO_BIGINT_HPP

#include <compare>
#include <cstdint>
#include <string>
#include <vector>

namespace eaqturbo {

/// Arbitrary-precision unsigned integer. Path counts in distance spectra
/// outgrow 64 bits well before the truncation degrees of interest.
class BigUint {
   public:
    BigUint() = default;
    BigUint(uint64_t v);

    bool is_zero() const { return limbs_.empty(); }

    BigUint& operator+=(const BigUint& other);
    BigUint& operator-=(const BigUint& other);  // requires *this >= other
    friend BigUint operator+(BigUint a, const BigUint& b) { return a += b; }
    friend BigUint operator-(BigUint a, const BigUint& b) { return a -= b; }
    BigUint operator*(const BigUint& other) const;
    BigUint& operator*=(const BigUint& other) { return *this = *this * other; }

    std::strong_ordering operator<=>(const BigUint& other) const;
    bool operator==(const BigUint& other) const = default;

    std::string str() const;
    static BigUint from_string(const std::string& s);

    /// Throws std::overflow_error if the value does not fit.
    uint64_t to_u64() const;
    double to_double() const;

   private:
    void normalize();
    std::vector<uint64_t> limbs_;  // little-endian, no trailing zero limbs
};

}  // namespace eaqturbo

#endif
