#ifndef NBB_BENCH_HPP
#define NBB_BENCH_HPP

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "nbb/stencil.hpp"

namespace nbb {

/// One timed configuration. Configurations whose storage exceeds the
/// memory cap are recorded as skipped with empty timing fields; that a
/// bounding-box run does not fit while the compact one does is itself a
/// result.
struct BenchRecord {
    std::string fractal;
    int level = 0;
    std::int64_t n = 0;
    std::string backend;
    int block_size = 0; // 0 prints as "-"
    int reps = 0;
    int iters = 0;
    std::optional<double> mean_ms;   // per iteration, mean over reps
    std::optional<double> stddev_ms; // over reps
    std::int64_t mem_cells = 0;
    std::optional<double> speedup_vs_bb; // T_bb / T_this at equal (fractal, r)
    std::string skip_reason;             // non-empty when skipped
};

struct BenchConfig {
    FractalDescriptor desc;
    std::vector<int> levels;
    std::vector<Backend> backends = {Backend::BoundingBox, Backend::CompactGrid,
                                     Backend::Compact};
    /// Compact-backend block sizes to sweep; 0 = linear. Values that are
    /// not powers of s, or exceed the level, are skipped with a note.
    std::vector<int> block_sizes = {0};
    int reps = 5;
    int iters = 50;
    StencilRule rule = conway_rule();
    std::uint64_t seed = 42;
    double density = 0.5;
    std::uint64_t memory_cap = kDefaultMemoryCap;
    int workers = 1;
    bool warmup = true; // one untimed batch of iters before timing
};

/// Runs every (level, backend, block size) configuration sequentially and
/// computes the speedup of each row against the bounding-box row of the
/// same level. Never throws for infeasible configurations; those become
/// skipped records.
std::vector<BenchRecord> bench_run(const BenchConfig& config,
                                   std::ostream* progress = nullptr);

inline constexpr const char* kCsvHeader =
    "fractal,level,n,backend,block_size,reps,iters,mean_ms,stddev_ms,"
    "mem_cells,speedup_vs_bb";

/// RFC-4180-style CSV with the fixed header above, one row per record.
void write_csv(const std::vector<BenchRecord>& records, std::ostream& out);

/// Round-trip reader for the same schema.
std::vector<BenchRecord> read_csv(std::istream& in);

} // namespace nbb

#endif
