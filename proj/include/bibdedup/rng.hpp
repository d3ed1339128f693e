#pragma once

#include <cstdint>

namespace bibdedup {

// Deterministic 64-bit generator (splitmix64). All randomness in the toolkit
// flows through explicit seeds so runs are reproducible across machines;
// std::mt19937 distributions are avoided because their output is
// implementation-defined.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next() {
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ull);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
        return z ^ (z >> 31);
    }

    // Uniform in [0, n). n must be nonzero; modulo bias is irrelevant at the
    // ranges used here (n << 2^64).
    std::uint64_t below(std::uint64_t n) { return next() % n; }

    bool coin() { return (next() & 1ull) != 0; }

    // Uniform double in [0, 1).
    double real01() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

private:
    std::uint64_t state_;
};

// Stateless hash mix, used to derive independent per-record streams from
// (seed, index) without any sequential dependence.
inline std::uint64_t mix64(std::uint64_t a, std::uint64_t b) {
    std::uint64_t z = a ^ (b + 0x9e3779b97f4a7c15ull + (a << 6) + (a >> 2));
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
}

} // namespace bibdedup
