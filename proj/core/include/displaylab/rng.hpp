#pragma once
#include <cstdint>
#include <random>

namespace dlab {

// Seeded generator that can be split into independent, reproducible streams.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : seed_(seed), eng_(mix(seed)) {}

    Rng split(std::uint64_t stream) const { return Rng(mix(seed_ ^ mix(stream + 0x632be59bd9b4e019ULL))); }
    std::uint64_t seed() const { return seed_; }

    std::uint64_t next() { return eng_(); }
    // uniform in [0, n)
    std::uint64_t below(std::uint64_t n) { return std::uniform_int_distribution<std::uint64_t>(0, n - 1)(eng_); }
    std::int64_t range(std::int64_t lo, std::int64_t hi) {
        return std::uniform_int_distribution<std::int64_t>(lo, hi)(eng_);
    }
    bool coin() { return below(2) == 1; }

    static std::uint64_t mix(std::uint64_t z) {
        z += 0x9e3779b97f4a7c15ULL;
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

private:
    std::uint64_t seed_;
    std::mt19937_64 eng_;
};

}  // namespace dlab
