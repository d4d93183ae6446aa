#pragma once

#include <cstdint>
#include <random>

namespace mmsa {

// splitmix64 finalizer; full 64-bit avalanche
inline std::uint64_t mix64(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

// Independent stream for (seed, a, b), e.g. (run seed, replicate, branch).
inline std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t a, std::uint64_t b) {
    std::uint64_t z = mix64(seed + 0x9e3779b97f4a7c15ULL);
    z = mix64(z ^ (a + 0x9e3779b97f4a7c15ULL));
    z = mix64(z ^ (b + 0x632be59bd9b4e019ULL));
    return z;
}

// Seeded generator with explicit sampling helpers. std::mt19937_64 output is
// fixed by the standard; the distributions below are written out by hand so
// that identical seeds give identical streams on every platform.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : eng_(seed) {}

    std::uint64_t next() { return eng_(); }

    // uniform in [0,1) with 53 random bits
    double u01() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

    // uniform integer in [0, bound), bound >= 1, rejection sampled
    std::uint64_t below(std::uint64_t bound) {
        const std::uint64_t threshold = (0 - bound) % bound;
        std::uint64_t r;
        do {
            r = next();
        } while (r < threshold);
        return r % bound;
    }

    bool bernoulli(double p) { return u01() < p; }

private:
    std::mt19937_64 eng_;
};

}  // namespace mmsa
