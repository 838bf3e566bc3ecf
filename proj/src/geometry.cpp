#include "nbb/geometry.hpp"
#include "nbb/errors.hpp"

#include <cmath>
#include <limits>
#include <string>

namespace nbb {

std::int64_t ipow_checked(std::int64_t base, int exp) {
    if (base < 0 || exp < 0)
        throw CapacityError("ipow_checked: negative base or exponent");
    std::int64_t result = 1;
    for (int i = 0; i < exp; ++i) {
        if (base != 0 && result > std::numeric_limits<std::int64_t>::max() / base)
            throw CapacityError("integer overflow computing " +
                                std::to_string(base) + "^" + std::to_string(exp));
        result *= base;
    }
    return result;
}

std::int64_t side_length(const FractalDescriptor& desc, int level) {
    if (level < 0)
        throw OutOfDomain("scale level must be >= 0");
    return ipow_checked(desc.growth, level);
}

std::int64_t cell_count(const FractalDescriptor& desc, int level) {
    if (level < 0)
        throw OutOfDomain("scale level must be >= 0");
    return ipow_checked(desc.replica_count, level);
}

bool contains(const FractalDescriptor& desc, int level, EmbeddedCoord e) {
    const std::int64_t n = side_length(desc, level);
    if (e.x < 0 || e.y < 0 || e.x >= n || e.y >= n)
        throw OutOfDomain("embedded coordinate (" + std::to_string(e.x) + "," +
                          std::to_string(e.y) + ") outside [0," +
                          std::to_string(n) + ")^2");
    std::int64_t x = e.x, y = e.y;
    const int s = desc.growth;
    for (int mu = 0; mu < level; ++mu) {
        if (desc.replica_index(static_cast<int>(x % s), static_cast<int>(y % s)) < 0)
            return false;
        x /= s;
        y /= s;
    }
    return true;
}

std::vector<EmbeddedCoord> enumerate_cells(const FractalDescriptor& desc,
                                           int level) {
    const std::int64_t n = side_length(desc, level);
    std::vector<EmbeddedCoord> cells;
    cells.reserve(static_cast<std::size_t>(cell_count(desc, level)));
    for (std::int64_t y = 0; y < n; ++y)
        for (std::int64_t x = 0; x < n; ++x)
            if (contains(desc, level, {x, y}))
                cells.push_back({x, y});
    return cells;
}

double hausdorff_dimension(const FractalDescriptor& desc) {
    return std::log(static_cast<double>(desc.replica_count)) /
           std::log(static_cast<double>(desc.growth));
}

int block_exponent(int growth, int block_size) {
    if (block_size < 1)
        return -1;
    int m = 0;
    long long p = 1;
    while (p < block_size) {
        p *= growth;
        ++m;
    }
    return p == block_size ? m : -1;
}

std::int64_t stored_cells(const FractalDescriptor& desc, int level,
                          Layout layout, int block_size) {
    switch (layout) {
    case Layout::Embedded: {
        const std::int64_t n = side_length(desc, level);
        if (n > std::numeric_limits<std::int64_t>::max() / n)
            throw CapacityError("embedded cell count overflows");
        return n * n;
    }
    case Layout::LinearCompact:
        return cell_count(desc, level);
    case Layout::BlockedCompact: {
        const int m = block_exponent(desc.growth, block_size);
        if (m < 0)
            throw OutOfDomain("block size " + std::to_string(block_size) +
                              " is not a power of s=" +
                              std::to_string(desc.growth));
        if (m > level)
            throw OutOfDomain("block size " + std::to_string(block_size) +
                              " exceeds the level-" + std::to_string(level) +
                              " fractal");
        const std::int64_t blocks = ipow_checked(desc.replica_count, level - m);
        const std::int64_t per_block =
            static_cast<std::int64_t>(block_size) * block_size;
        if (blocks > std::numeric_limits<std::int64_t>::max() / per_block)
            throw CapacityError("blocked cell count overflows");
        return blocks * per_block;
    }
    }
    throw OutOfDomain("unknown layout");
}

CompressionRatio compression_ratio(const FractalDescriptor& desc, int level,
                                   Layout layout, int block_size) {
    return {stored_cells(desc, level, Layout::Embedded),
            stored_cells(desc, level, layout, block_size)};
}

double compression_factor(const FractalDescriptor& desc, int level,
                          Layout layout, int block_size) {
    return compression_ratio(desc, level, layout, block_size).value();
}

} // namespace nbb
