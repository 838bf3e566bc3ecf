#ifndef NBB_ORACLE_HPP
#define NBB_ORACLE_HPP

#include <cstdint>
#include <functional>
#include <string>
#include <unordered_map>
#include <vector>

#include "nbb/stencil.hpp"

namespace nbb {

/// Packs an (x, y) pair into one key for the oracle mapping.
constexpr std::uint64_t pack_coord(std::int64_t x, std::int64_t y) {
    return (static_cast<std::uint64_t>(x) << 32) |
           static_cast<std::uint64_t>(static_cast<std::uint32_t>(y));
}

/// Brute-force compact layout built by direct recursion: start with
/// {(0,0) -> (0,0)}; to grow from level mu to mu+1, place replica i's
/// translated cells at compact offset i * unfold_stride(k, mu). Independent
/// of the closed-form maps. Throws CapacityError past max_cells.
std::unordered_map<std::uint64_t, std::uint64_t>
unfold_compact_oracle(const FractalDescriptor& desc, int level,
                      std::int64_t max_cells = 1'000'000);

struct VerifyReport {
    bool pass = true;
    std::int64_t cells_checked = 0;
    std::vector<std::string> violations;
    std::string summary() const;
};

/// Checks, over every fractal cell at the level:
///   (a) the forward map equals the unfolding oracle,
///   (b) the forward map is a bijection onto the full compact rectangle,
///   (c) round trips in both directions are identities,
///   (d) the matrix-encoded map equals the scalar map.
VerifyReport verify_maps(const FractalDescriptor& desc, int level);

/// Runs the three backends in lockstep and reports the first divergent
/// (iteration, embedded coordinate). post_step runs after each iteration
/// with the three simulations (fault-injection seam for tests).
using LockstepHook = std::function<void(std::int64_t iteration,
                                        std::vector<Simulation*>&)>;
VerifyReport verify_stencil(const FractalDescriptor& desc, int level,
                            const StencilRule& rule, std::uint64_t seed,
                            double density, std::int64_t steps,
                            const LockstepHook& post_step = nullptr);

} // namespace nbb

#endif
