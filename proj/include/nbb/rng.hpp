#ifndef NBB_RNG_HPP
#define NBB_RNG_HPP

#include <cstdint>

namespace nbb {

/// splitmix64 finalizer (Steele, Lea, Flood 2014).
constexpr std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ull;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
    return x ^ (x >> 31);
}

/// Per-cell key: depends only on (seed, embedded coordinate), so every
/// layout produces the identical initial pattern.
constexpr std::uint64_t cell_key(std::uint64_t seed, std::int64_t x,
                                 std::int64_t y) {
    return splitmix64(splitmix64(seed) ^
                      (static_cast<std::uint64_t>(x) << 32) ^
                      static_cast<std::uint64_t>(static_cast<std::uint32_t>(y)));
}

/// Deterministic Bernoulli draw from the cell key. density 0 -> never,
/// density 1 -> always.
constexpr bool cell_alive(std::uint64_t seed, std::int64_t x, std::int64_t y,
                          double density) {
    // top 53 bits give an exact dyadic rational in [0,1)
    const double u = static_cast<double>(cell_key(seed, x, y) >> 11) *
                     (1.0 / 9007199254740992.0);
    return u < density;
}

/// Order-independent contribution of one alive cell to a state hash.
constexpr std::uint64_t coord_mix(std::int64_t x, std::int64_t y) {
    return splitmix64((static_cast<std::uint64_t>(x) << 32) ^
                      static_cast<std::uint64_t>(static_cast<std::uint32_t>(y)));
}

/// Small sequential generator for tests and randomized trials.
class SplitMix {
public:
    explicit SplitMix(std::uint64_t seed) : state_(seed) {}
    std::uint64_t next() { return splitmix64(state_++); }
    std::uint64_t next_below(std::uint64_t bound) { return next() % bound; }
    double next_unit() {
        return static_cast<double>(next() >> 11) * (1.0 / 9007199254740992.0);
    }

private:
    std::uint64_t state_;
};

} // namespace nbb

#endif
