#pragma once

#include <cstdint>

namespace regroup {

// xoshiro256** with splitmix64 seeding. Chosen over std engines so that
// generated fixtures are byte-reproducible across standard libraries; the
// algorithm is pinned in the fixture format documentation.
class Xoshiro256 {
  public:
    explicit Xoshiro256(uint64_t seed)
    {
        uint64_t x = seed;
        for (auto &word : state_) {
            // splitmix64
            x += 0x9e3779b97f4a7c15ULL;
            uint64_t z = x;
            z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
            z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
            word = z ^ (z >> 31);
        }
    }

    uint64_t next()
    {
        const uint64_t result = rotl(state_[1] * 5, 7) * 9;
        const uint64_t t = state_[1] << 17;
        state_[2] ^= state_[0];
        state_[3] ^= state_[1];
        state_[1] ^= state_[2];
        state_[0] ^= state_[3];
        state_[2] ^= t;
        state_[3] = rotl(state_[3], 45);
        return result;
    }

    // Unbiased uniform draw from [0, n).
    uint64_t below(uint64_t n)
    {
        if (n == 0)
            return 0;
        const uint64_t limit = UINT64_MAX - UINT64_MAX % n;
        uint64_t x = next();
        while (x >= limit)
            x = next();
        return x % n;
    }

    // Uniform draw from [-amplitude, +amplitude].
    int jitter(int amplitude)
    {
        if (amplitude <= 0)
            return 0;
        return static_cast<int>(below(2 * static_cast<uint64_t>(amplitude) + 1)) - amplitude;
    }

  private:
    static uint64_t rotl(uint64_t v, int k) { return (v << k) | (v >> (64 - k)); }

    uint64_t state_[4];
};

} // namespace regroup
