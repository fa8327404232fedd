#pragma once

#include <cstdint>

namespace onlinecol {

// Counter-based splittable generator. A stream is identified by a 64-bit
// key; drawing advances a counter, splitting derives a child key from the
// parent key and a salt without touching the parent's draw state. Two
// splits with the same salt yield identical streams, so callers must salt
// children with distinct indices (trial number, recursion path, ...).
// This makes sampled constructions reproducible independently of the order
// in which subtrees are materialized.
class SplitRng {
public:
    explicit SplitRng(std::uint64_t seed) : key_(mix(seed ^ 0x8f1bbcdcu)) {}

    std::uint64_t next_u64() { return mix(key_ + kGamma * ++counter_); }

    bool next_bit() { return (next_u64() >> 63) != 0; }

    // Unbiased integer in [0, bound) via rejection sampling.
    std::uint32_t next_below(std::uint32_t bound) {
        const std::uint64_t limit = ~std::uint64_t{0} - ~std::uint64_t{0} % bound;
        for (;;) {
            std::uint64_t r = next_u64();
            if (r < limit) return static_cast<std::uint32_t>(r % bound);
        }
    }

    double next_unit() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    SplitRng split(std::uint64_t salt) const {
        return SplitRng(from_key{}, mix(key_ ^ mix(salt + 0x632be59bd9b4e019u)));
    }

private:
    struct from_key {};
    SplitRng(from_key, std::uint64_t key) : key_(key) {}

    static constexpr std::uint64_t kGamma = 0x9e3779b97f4a7c15u;

    static std::uint64_t mix(std::uint64_t z) {
        z += kGamma;
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9u;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebu;
        return z ^ (z >> 31);
    }

    std::uint64_t key_ = 0;
    std::uint64_t counter_ = 0;
};

} // namespace onlinecol
