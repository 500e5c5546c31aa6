#include "eaqturbo/weight_poly.hpp"

#include <stdexcept>

namespace eaqturbo {

WeightPoly WeightPoly::monomial(int truncation, int degree, BigUint coeff) {
    WeightPoly p(truncation);
    p.add_term(degree, coeff);
    return p;
}

void WeightPoly::add_term(int degree, const BigUint& v) {
    if (degree < 0) throw std::invalid_argument("negative degree");
    if (degree <= truncation()) coeffs_[degree] += v;
}

bool WeightPoly::is_zero() const {
    for (const auto& c : coeffs_)
        if (!c.is_zero()) return false;
    return true;
}

WeightPoly& WeightPoly::operator+=(const WeightPoly& other) {
    if (truncation() != other.truncation()) throw std::invalid_argument("truncation mismatch");
    for (size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] += other.coeffs_[i];
    return *this;
}

WeightPoly& WeightPoly::operator-=(const WeightPoly& other) {
    if (truncation() != other.truncation()) throw std::invalid_argument("truncation mismatch");
    for (size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] -= other.coeffs_[i];
    return *this;
}

WeightPoly WeightPoly::operator*(const WeightPoly& other) const {
    if (truncation() != other.truncation()) throw std::invalid_argument("truncation mismatch");
    WeightPoly out(truncation());
    out.add_product(*this, other);
    return out;
}

void WeightPoly::add_product(const WeightPoly& a, const WeightPoly& b) {
    int w = truncation();
    for (int i = 0; i <= w; ++i) {
        if (a.coeffs_[i].is_zero()) continue;
        for (int j = 0; i + j <= w; ++j) {
            if (b.coeffs_[j].is_zero()) continue;
            coeffs_[i + j] += a.coeffs_[i] * b.coeffs_[j];
        }
    }
}

std::string WeightPoly::str() const {
    std::string s;
    for (int d = 0; d <= truncation(); ++d) {
        if (coeffs_[d].is_zero()) continue;
        if (!s.empty()) s += " + ";
        s += coeffs_[d].str();
        if (d > 0) s += "x^" + std::to_string(d);
    }
    return s.empty() ? "0" : s;
}

}  // namespace eaqturbo
