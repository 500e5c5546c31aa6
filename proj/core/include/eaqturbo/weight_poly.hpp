#ifndef EAQTURBO_WEIGHT_POLY_HPP
#define EAQTURBO_WEIGHT_POLY_HPP

#include <vector>

#include "eaqturbo/bigint.hpp"

namespace eaqturbo {

/// Counting polynomial in x with exact nonnegative integer coefficients,
/// truncated above a fixed degree. Addition and multiplication drop terms
/// beyond the truncation degree.
class WeightPoly {
   public:
    WeightPoly() = default;
    explicit WeightPoly(int truncation) : coeffs_(truncation + 1) {}

    static WeightPoly monomial(int truncation, int degree, BigUint coeff = BigUint(1));

    int truncation() const { return static_cast<int>(coeffs_.size()) - 1; }
    const BigUint& coeff(int degree) const { return coeffs_[degree]; }

    void add_term(int degree, const BigUint& v);

    bool is_zero() const;

    WeightPoly& operator+=(const WeightPoly& other);
    WeightPoly& operator-=(const WeightPoly& other);
    WeightPoly operator*(const WeightPoly& other) const;
    friend WeightPoly operator+(WeightPoly a, const WeightPoly& b) { return a += b; }
    friend WeightPoly operator-(WeightPoly a, const WeightPoly& b) { return a -= b; }

    /// Accumulate a * b into this polynomial.
    void add_product(const WeightPoly& a, const WeightPoly& b);

    bool operator==(const WeightPoly& other) const = default;

    std::string str() const;

   private:
    std::vector<BigUint> coeffs_;  // degree 0..truncation
};

}  // namespace eaqturbo

#endif
