#include "eaqturbo/rng.hpp"

namespace eaqturbo {

namespace {

uint64_t splitmix64(uint64_t& state) {
    uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

uint64_t rotl(uint64_t v, int k) { return (v << k) | (v >> (64 - k)); }

}  // namespace

Rng::Rng(uint64_t seed) {
    uint64_t sm = seed;
    for (auto& s : s_) s = splitmix64(sm);
}

Rng Rng::for_trial(uint64_t master_seed, uint64_t cell, uint64_t trial) {
    uint64_t sm = master_seed;
    uint64_t a = splitmix64(sm);
    sm = a ^ (cell * 0xd6e8feb86659fd93ULL + 0x2545f4914f6cdd1dULL);
    uint64_t b = splitmix64(sm);
    sm = b ^ (trial * 0x9e3779b97f4a7c15ULL + 1);
    return Rng(splitmix64(sm));
}

uint64_t Rng::next_u64() {
    uint64_t result = rotl(s_[1] * 5, 7) * 9;
    uint64_t t = s_[1] << 17;
    s_[2] ^= s_[0];
    s_[3] ^= s_[1];
    s_[1] ^= s_[2];
    s_[0] ^= s_[3];
    s_[2] ^= t;
    s_[3] = rotl(s_[3], 45);
    return result;
}

uint64_t Rng::below(uint64_t bound) {
    // rejection sampling on the top of the range
    uint64_t threshold = (0 - bound) % bound;
    for (;;) {
        uint64_t r = next_u64();
        if (r >= threshold) return r % bound;
    }
}

double Rng::next_double() {
    return (next_u64() >> 11) * 0x1.0p-53;
}

}  // namespace eaqturbo
