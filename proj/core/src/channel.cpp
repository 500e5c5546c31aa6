#include "eaqturbo/channel.hpp"

#include <cmath>
#include <stdexcept>

namespace eaqturbo {

namespace {

void check_probability(double p) {
    if (!(p >= 0.0 && p <= 1.0)) throw std::domain_error("probability outside [0, 1]");
}

Pauli sample_single(double p, Rng& rng) {
    double u = rng.next_double();
    if (u >= p) return Pauli::I;
    switch (rng.below(3)) {
        case 0: return Pauli::X;
        case 1: return Pauli::Y;
        default: return Pauli::Z;
    }
}

}  // namespace

PauliOperator sample_error(const ChannelModel& model, size_t n, Rng& rng) {
    check_probability(model.p);
    PauliOperator e(n);
    for (size_t q = 0; q < n; ++q) e.set_qubit(q, sample_single(model.p, rng));
    return e;
}

std::vector<Pauli> sample_ebit_error(const ChannelModel& model, size_t count, Rng& rng) {
    check_probability(model.p_ebit);
    std::vector<Pauli> out(count, Pauli::I);
    if (model.p_ebit == 0.0) return out;
    for (size_t i = 0; i < count; ++i) out[i] = sample_single(model.p_ebit, rng);
    return out;
}

double binary_entropy(double p) {
    check_probability(p);
    if (p == 0.0 || p == 1.0) return 0.0;
    return -p * std::log2(p) - (1.0 - p) * std::log2(1.0 - p);
}

double hashing_q(double p) {
    check_probability(p);
    return 1.0 - (binary_entropy(p) + p * std::log2(3.0));
}

double hashing_ea(double p) {
    check_probability(p);
    return 1.0 - 0.5 * (binary_entropy(p) + p * std::log2(3.0));
}

double father_ebit_rate(double p) {
    check_probability(p);
    return 0.5 * (binary_entropy(p) + p * std::log2(3.0));
}

double noise_limit(double rate, bool assisted) {
    if (!(rate > 0.0 && rate < 1.0)) throw std::domain_error("rate outside (0, 1)");
    // H2(p) + p log2 3 increases up to p = 3/4, so both hashing bounds are
    // strictly decreasing on [0, 3/4]; the positive branch lives there.
    double lo = 0.0, hi = 0.75;
    auto f = [&](double p) { return (assisted ? hashing_ea(p) : hashing_q(p)) - rate; };
    for (int iter = 0; iter < 200 && hi - lo > 1e-12; ++iter) {
        double mid = 0.5 * (lo + hi);
        if (f(mid) > 0.0)
            lo = mid;
        else
            hi = mid;
    }
    return 0.5 * (lo + hi);
}

}  // namespace eaqturbo
