#ifndef NBB_GEOMETRY_HPP
#define NBB_GEOMETRY_HPP

#include <cstdint>
#include <vector>

#include "nbb/descriptor.hpp"

namespace nbb {

/// Integer coordinate in the n x n embedded domain, origin upper-left,
/// x right, y down.
struct EmbeddedCoord {
    std::int64_t x = 0;
    std::int64_t y = 0;
    friend bool operator==(EmbeddedCoord a, EmbeddedCoord b) {
        return a.x == b.x && a.y == b.y;
    }
};

/// Integer coordinate in the compact domain.
struct CompactCoord {
    std::int64_t cx = 0;
    std::int64_t cy = 0;
    friend bool operator==(CompactCoord a, CompactCoord b) {
        return a.cx == b.cx && a.cy == b.cy;
    }
};

/// base^exp with an overflow check against 2^63-1; throws CapacityError.
std::int64_t ipow_checked(std::int64_t base, int exp);

/// Embedded side length n = s^r.
std::int64_t side_length(const FractalDescriptor& desc, int level);

/// Number of fractal cells k^r (exact, overflow-checked).
std::int64_t cell_count(const FractalDescriptor& desc, int level);

/// True iff e is a fractal cell: at every scale level mu < r the sub-box
/// (floor(x/s^mu) mod s, floor(y/s^mu) mod s) is an occupied replica.
/// Throws OutOfDomain if e lies outside [0, s^r)^2.
bool contains(const FractalDescriptor& desc, int level, EmbeddedCoord e);

/// All fractal cells at the given level in row-major embedded order
/// (y outer, x inner). Length is exactly cell_count().
std::vector<EmbeddedCoord> enumerate_cells(const FractalDescriptor& desc,
                                           int level);

/// log(k)/log(s).
double hausdorff_dimension(const FractalDescriptor& desc);

enum class Layout {
    Embedded,       // full n x n bounding box
    LinearCompact,  // exactly k^r cells, unfolded layout
    BlockedCompact, // k^(r-m) mini bounding boxes of rho x rho, rho = s^m
};

/// Stored cell count for a layout: s^2r (embedded), k^r (linear),
/// k^(r-m) * rho^2 (blocked). Throws CapacityError on overflow and
/// OutOfDomain if rho is not a power of s with s^m <= s^r.
std::int64_t stored_cells(const FractalDescriptor& desc, int level,
                          Layout layout, int block_size = 0);

/// Exact compaction ratio embedded-cells / stored-cells as a
/// (numerator, denominator) pair of exact integers.
struct CompressionRatio {
    std::int64_t embedded_cells = 0;
    std::int64_t stored = 0;
    double value() const {
        return static_cast<double>(embedded_cells) / static_cast<double>(stored);
    }
};
CompressionRatio compression_ratio(const FractalDescriptor& desc, int level,
                                   Layout layout = Layout::LinearCompact,
                                   int block_size = 0);

/// compression_ratio(...).value()
double compression_factor(const FractalDescriptor& desc, int level,
                          Layout layout = Layout::LinearCompact,
                          int block_size = 0);

/// Exponent m such that s^m == rho, or -1 if rho is not a power of s.
int block_exponent(int growth, int block_size);

} // namespace nbb

#endif
