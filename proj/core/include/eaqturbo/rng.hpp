#ifndef EAQTURBO_RNG_HPP
#define EAQTURBO_RNG_HPP

#include <cstdint>

namespace eaqturbo {

/// xoshiro256** seeded through splitmix64. Each Monte Carlo trial derives an
/// independent stream from (master seed, cell index, trial index), so results
/// do not depend on worker scheduling.
class Rng {
   public:
    explicit Rng(uint64_t seed);

    static Rng for_trial(uint64_t master_seed, uint64_t cell, uint64_t trial);

    uint64_t next_u64();

    /// Uniform integer in [0, bound), bound >= 1. Unbiased.
    uint64_t below(uint64_t bound);

    /// Uniform double in [0, 1).
    double next_double();

    bool next_bit() { return next_u64() >> 63; }

   private:
    uint64_t s_[4];
};

}  // namespace eaqturbo

#endif
