#ifndef NBB_STENCIL_HPP
#define NBB_STENCIL_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "nbb/grid.hpp"

namespace nbb {

enum class Neighborhood { VonNeumann, Moore };

/// Outer-totalistic birth/survival rule over a radius-1 neighborhood.
struct StencilRule {
    std::uint16_t birth = 0;   // bit c set: a dead cell with c alive neighbors is born
    std::uint16_t survive = 0; // bit c set: an alive cell with c alive neighbors survives
    Neighborhood neighborhood = Neighborhood::Moore;

    bool born_with(int count) const { return (birth >> count) & 1; }
    bool survives_with(int count) const { return (survive >> count) & 1; }

    /// Parses "B<digits>/S<digits>", e.g. "B3/S23". Digits are neighbor
    /// counts in [0,8]; either set may be empty.
    static StencilRule parse(std::string_view text,
                             Neighborhood nb = Neighborhood::Moore);
    std::string to_string() const;
};

/// Conway defaults.
inline StencilRule conway_rule() { return StencilRule::parse("B3/S23"); }

/// Neighbor displacement list; von Neumann is the 4 axis offsets, Moore
/// adds the 4 diagonals. Never contains (0,0).
const std::vector<std::pair<int, int>>& neighbor_offsets(Neighborhood nb);

/// Compact coordinate of a neighbor: maps c to embedded space, applies the
/// offset, and maps back. Absent when the neighbor falls outside the
/// bounding box or on a hole (treated as dead).
std::optional<CompactCoord> resolve_neighbor(const CoordMapper& mapper,
                                             CompactCoord c,
                                             std::pair<int, int> offset);
std::optional<CompactCoord> resolve_neighbor(const FractalDescriptor& desc,
                                             int level, CompactCoord c,
                                             std::pair<int, int> offset);

/// The three execution strategies:
///   BoundingBox  scans the full n x n embedded box (the baseline)
///   CompactGrid  iterates exactly k^r cells but keeps embedded storage
///   Compact      iterates k^r compact slots over compact storage
enum class Backend { BoundingBox, CompactGrid, Compact };

std::string_view backend_name(Backend b);           // "bb", "lambda", "compact"
Backend parse_backend(std::string_view name);

struct SimOptions {
    int block_size = 0; // Compact backend only: 0 = linear, rho = blocked
    int workers = 1;
    bool neighbor_table = false; // Compact linear only: precompute neighbor slots
    std::uint64_t memory_cap = kDefaultMemoryCap;
};

/// Double-buffered cellular-automaton state on one backend. Each step reads
/// the front buffer, writes disjoint slots of the back buffer across
/// workers, then swaps; results are bitwise independent of the partitioning.
class Simulation {
public:
    Simulation(const FractalDescriptor& desc, int level, Backend backend,
               SimOptions options = {});

    Backend backend() const { return backend_; }
    int level() const { return level_; }
    std::int64_t side() const { return side_; }
    std::int64_t iteration() const { return iteration_; }
    const Grid& front() const { return front_; }
    const FractalDescriptor& descriptor() const { return desc_; }

    /// Each fractal cell independently alive with probability density,
    /// keyed by (seed, embedded coordinate); identical across backends.
    void seed_random(std::uint64_t seed, double density);

    void step(const StencilRule& rule);

    /// Embedded-coordinate view; non-fractal positions read as dead.
    std::uint8_t cell(EmbeddedCoord e) const;
    /// Direct write for tests (fault injection); requires a fractal cell.
    void set_cell(EmbeddedCoord e, std::uint8_t state);

    /// Order-independent hash over alive embedded coordinates.
    std::uint64_t state_hash() const;

private:
    void step_bounding_box(const StencilRule& rule, std::int64_t row0,
                           std::int64_t row1);
    void step_compact_grid(const StencilRule& rule, std::int64_t i0,
                           std::int64_t i1);
    void step_compact_linear(const StencilRule& rule, std::int64_t i0,
                             std::int64_t i1);
    void step_compact_blocked(const StencilRule& rule, std::int64_t b0,
                              std::int64_t b1);
    void build_neighbor_table(const StencilRule& rule);
    void parallel_for(std::int64_t domain,
                      void (Simulation::*body)(const StencilRule&, std::int64_t,
                                               std::int64_t),
                      const StencilRule& rule);

    FractalDescriptor desc_;
    int level_;
    Backend backend_;
    SimOptions options_;
    std::int64_t side_;
    CoordMapper mapper_; // full-level map, all backends
    Grid front_;
    Grid back_;
    std::int64_t iteration_ = 0;
    // Compact linear + neighbor_table: k^r x degree slot indices, -1 absent.
    std::vector<std::int64_t> neighbor_table_;
    int table_degree_ = 0;
};

struct RunResult {
    std::uint64_t state_hash = 0;
    std::int64_t steps = 0;
    std::vector<double> step_ms; // wall time per iteration, monotonic clock
    double total_ms = 0.0;
};

RunResult run_simulation(const FractalDescriptor& desc, int level,
                         Backend backend, const StencilRule& rule,
                         std::int64_t steps, std::uint64_t seed, double density,
                         SimOptions options = {});

} // namespace nbb

#endif
