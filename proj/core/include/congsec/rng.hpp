#pragma once

#include <cstdint>
#include <tuple>

#include "congsec/bits.hpp"

namespace congsec {

inline uint64_t mix64(uint64_t x) {
    // splitmix64 finalizer
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

// Identifies one independent randomness slot. Draws keyed by distinct
// TapeKeys never share state, so draw order cannot matter.
struct TapeKey {
    uint32_t purpose = 0;
    int32_t a = 0;
    int32_t b = 0;
    int32_t c = 0;

    friend bool operator==(const TapeKey& x, const TapeKey& y) {
        return x.purpose == y.purpose && x.a == y.a && x.b == y.b && x.c == y.c;
    }
    friend bool operator<(const TapeKey& x, const TapeKey& y) {
        return std::tie(x.purpose, x.a, x.b, x.c) < std::tie(y.purpose, y.a, y.b, y.c);
    }
};

// Stateless counter-mode generator: word(key, i) is a pure function of
// (seed, key, i).
class CounterRng {
public:
    explicit CounterRng(uint64_t seed) : seed_(seed) {}

    uint64_t word(const TapeKey& k, uint64_t idx) const {
        uint64_t h = mix64(seed_ ^ 0x6a09e667f3bcc909ULL);
        h = mix64(h ^ (uint64_t(k.purpose) << 32 | uint64_t(uint32_t(k.a))));
        h = mix64(h ^ (uint64_t(uint32_t(k.b)) << 32 | uint64_t(uint32_t(k.c))));
        return mix64(h ^ idx);
    }

    BitString bits(const TapeKey& k, size_t nbits) const {
        BitString r(nbits);
        for (size_t i = 0; i < nbits; ++i) {
            uint64_t w = word(k, i >> 6);
            if ((w >> (i & 63)) & 1) r.set(i, true);
        }
        return r;
    }

    // Uniform integer in [0, bound) by rejection.
    uint64_t below(const TapeKey& k, uint64_t bound, uint64_t stream = 0) const {
        if (bound == 0) return 0;
        uint64_t idx = stream << 8;
        for (;;) {
            uint64_t w = word(k, idx++);
            uint64_t lim = UINT64_MAX - UINT64_MAX % bound;
            if (w < lim) return w % bound;
        }
    }

    uint64_t seed() const { return seed_; }

private:
    uint64_t seed_;
};

// Pluggable randomness: the normal path draws from a seeded counter
// generator; privacy-harness enumeration substitutes explicit assignments
// for the slots under test.
class RandomSource {
public:
    virtual ~RandomSource() = default;
    virtual BitString draw(const TapeKey& k, size_t nbits) = 0;
};

class SeededSource final : public RandomSource {
public:
    explicit SeededSource(uint64_t seed) : rng_(seed) {}
    BitString draw(const TapeKey& k, size_t nbits) override { return rng_.bits(k, nbits); }

private:
    CounterRng rng_;
};

} // namespace congsec
