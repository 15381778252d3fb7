#pragma once

#include <cstdint>
#include <random>
#include <vector>

namespace frsim {

// splitmix64 finalizer; used as the declared mixing rule for every derived
// seed in the project (drop seeds, placement/shadowing streams, game
// permutations). Keeping one rule here makes runs reproducible bit-for-bit.
inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

inline std::uint64_t mix_seed(std::uint64_t a, std::uint64_t b) {
    return splitmix64(splitmix64(a) ^ (0x9e3779b97f4a7c15ULL + b));
}

inline std::uint64_t mix_seed(std::uint64_t a, std::uint64_t b, std::uint64_t c) {
    return mix_seed(mix_seed(a, b), c);
}

// Stream tags so independent random quantities never share a generator.
enum : std::uint64_t {
    kStreamFbsPlacement = 0xF1,
    kStreamMuePlacement = 0xF2,
    kStreamShadowing = 0xF3,
    kStreamGameOrder = 0xF4,
    kStreamQueueOracle = 0xF5,
};

// mt19937_64 with explicit double conversions. The standard pins down the
// engine output but not the distributions, so uniform/normal are hand-rolled
// to keep output files byte-identical across toolchains.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : eng_(seed) {}

    std::uint64_t next_u64() { return eng_(); }

    // [0, 1), 53-bit resolution
    double uniform01() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

    // modulo draw; bias is irrelevant at the ranges used here (node counts)
    std::uint64_t below(std::uint64_t n) { return n == 0 ? 0 : next_u64() % n; }

    double normal(double mean, double stddev);

private:
    std::mt19937_64 eng_;
    bool has_spare_ = false;
    double spare_ = 0.0;
};

// Fisher-Yates with explicit draws (std::shuffle is implementation-defined).
template <typename T>
void shuffle_inplace(std::vector<T>& v, Rng& rng) {
    for (std::size_t i = v.size(); i > 1; --i) {
        const std::size_t j = static_cast<std::size_t>(rng.below(i));
        std::swap(v[i - 1], v[j]);
    }
}

}  // namespace frsim
