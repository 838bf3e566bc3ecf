#include "nbb/grid.hpp"
#include "nbb/errors.hpp"

#include <algorithm>
#include <string>

namespace nbb {

Grid::Grid(const FractalDescriptor& desc, int level, Layout layout,
           int block_size, std::uint64_t memory_cap)
    : desc_(desc),
      level_(level),
      layout_(layout),
      block_size_(layout == Layout::BlockedCompact ? block_size : 0),
      block_levels_(0),
      side_(side_length(desc, level)),
      block_cols_(0) {
    const std::int64_t cells = stored_cells(desc, level, layout, block_size);
    if (static_cast<std::uint64_t>(cells) > memory_cap)
        throw CapacityError("grid of " + std::to_string(cells) +
                            " cells exceeds the memory cap of " +
                            std::to_string(memory_cap) + " bytes");
    switch (layout_) {
    case Layout::Embedded:
        break;
    case Layout::LinearCompact:
        mapper_.emplace(desc_, level_);
        break;
    case Layout::BlockedCompact:
        block_levels_ = block_exponent(desc.growth, block_size);
        mapper_.emplace(desc_, level_ - block_levels_);
        block_cols_ = mapper_->compact_width();
        break;
    }
    cells_.assign(static_cast<std::size_t>(cells), 0);
}

std::int64_t Grid::storage_index(EmbeddedCoord e) const {
    if (e.x < 0 || e.y < 0 || e.x >= side_ || e.y >= side_)
        throw OutOfDomain("embedded coordinate (" + std::to_string(e.x) + "," +
                          std::to_string(e.y) + ") outside [0," +
                          std::to_string(side_) + ")^2");
    switch (layout_) {
    case Layout::Embedded:
        return e.y * side_ + e.x;
    case Layout::LinearCompact: {
        CompactCoord c;
        if (!mapper_->try_to_compact(e, c))
            throw NotInFractal("embedded coordinate (" + std::to_string(e.x) +
                               "," + std::to_string(e.y) +
                               ") is not a fractal cell");
        return c.cy * mapper_->compact_width() + c.cx;
    }
    case Layout::BlockedCompact: {
        const std::int64_t rho = block_size_;
        CompactCoord coarse;
        if (!mapper_->try_to_compact({e.x / rho, e.y / rho}, coarse))
            throw NotInFractal("coarse cell of (" + std::to_string(e.x) + "," +
                               std::to_string(e.y) +
                               ") is not in the coarse fractal");
        const std::int64_t block = coarse.cy * block_cols_ + coarse.cx;
        return block * rho * rho + (e.y % rho) * rho + (e.x % rho);
    }
    }
    throw OutOfDomain("unknown layout");
}

} // namespace nbb
