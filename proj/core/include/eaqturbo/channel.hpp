#ifndef EAQTURBO_CHANNEL_HPP
#define EAQTURBO_CHANNEL_HPP

#include <vector>

#include "eaqturbo/pauli.hpp"
#include "eaqturbo/rng.hpp"

namespace eaqturbo {

/// Depolarizing channel: each qubit stays I with probability 1-p and picks
/// X, Y or Z with probability p/3 each. p_ebit is the separate rate on
/// Bob's ebit halves.
struct ChannelModel {
    double p = 0.0;
    double p_ebit = 0.0;
};

PauliOperator sample_error(const ChannelModel& model, size_t n, Rng& rng);

/// i.i.d. Bob-side errors for `count` ebit halves, at rate p_ebit.
std::vector<Pauli> sample_ebit_error(const ChannelModel& model, size_t count, Rng& rng);

/// H2 with the endpoints continued to zero.
double binary_entropy(double p);

/// Hashing bound for quantum communication: 1 - [H2(p) + p log2 3].
double hashing_q(double p);

/// Hashing bound with entanglement assistance: 1 - (1/2)[H2(p) + p log2 3].
double hashing_ea(double p);

/// Entanglement consumption rate of the father protocol:
/// (1/2)[H2(p) + p log2 3]. Satisfies hashing_ea(p) + father_ebit_rate(p) = 1.
double father_ebit_rate(double p);

/// Depolarizing parameter at which the relevant hashing bound equals the
/// given rate, found by bisection on the monotone branch.
double noise_limit(double rate, bool assisted);

}  // namespace eaqturbo

#endif
