// rng.hpp -- deterministic seeded randomness with labeled stream forking.
#pragma once

#include <cstdint>
#include <stdexcept>
#include <string_view>

namespace qpkc {

// SplitMix64 stream. fork() derives an independent stream from the original
// seed and a label, so consuming more values in one subsystem never perturbs
// another. All sampling is platform-independent (no std distributions).
class Rng {
public:
    explicit Rng(std::uint64_t seed) : seed_(seed), state_(seed) {}

    std::uint64_t next() {
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    // Uniform in [0, bound) by rejection.
    std::uint64_t below(std::uint64_t bound) {
        if (bound == 0) throw std::invalid_argument("Rng::below: zero bound");
        std::uint64_t threshold = (0 - bound) % bound;
        for (;;) {
            std::uint64_t x = next();
            if (x >= threshold) return x % bound;
        }
    }

    // Uniform double in [0, 1).
    double real() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

    bool coin() { return next() & 1u; }

    Rng fork(std::string_view label) const {
        std::uint64_t h = 0xcbf29ce484222325ULL; // FNV-1a
        for (char c : label) {
            h ^= static_cast<unsigned char>(c);
            h *= 0x100000001b3ULL;
        }
        return Rng(mix(seed_ ^ h));
    }

    std::uint64_t seed() const { return seed_; }

private:
    static std::uint64_t mix(std::uint64_t z) {
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    std::uint64_t seed_;
    std::uint64_t state_;
};

} // namespace qpkc
