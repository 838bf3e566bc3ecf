#ifndef NBB_GRID_HPP
#define NBB_GRID_HPP

#include <cstdint>
#include <optional>
#include <vector>

#include "nbb/geometry.hpp"
#include "nbb/maps.hpp"

namespace nbb {

inline constexpr std::uint64_t kDefaultMemoryCap = 2ull << 30; // 2 GiB

/// Cell-state container (one byte per cell) in one of three layouts, all
/// addressed by embedded coordinates:
///   embedded        y*n + x over the full bounding box
///   linear compact  row-major over the unfolded w x h rectangle
///   blocked compact block-major mini bounding boxes of rho x rho,
///                   row-major inside each block
class Grid {
public:
    Grid(const FractalDescriptor& desc, int level, Layout layout,
         int block_size = 0, std::uint64_t memory_cap = kDefaultMemoryCap);

    const FractalDescriptor& descriptor() const { return desc_; }
    int level() const { return level_; }
    Layout layout() const { return layout_; }
    int block_size() const { return block_size_; }
    std::int64_t side() const { return side_; }

    /// Buffer slot for an embedded coordinate. Linear layout requires a
    /// fractal cell; blocked layout requires the coarse rho-cell to be in
    /// the coarse fractal (filler slots inside blocks are addressable).
    std::int64_t storage_index(EmbeddedCoord e) const;

    std::uint8_t get(EmbeddedCoord e) const { return cells_[storage_index(e)]; }
    void set(EmbeddedCoord e, std::uint8_t state) {
        cells_[storage_index(e)] = state;
    }

    std::int64_t stored_cell_count() const {
        return static_cast<std::int64_t>(cells_.size());
    }
    std::uint64_t footprint_bytes() const { return cells_.size(); }

    std::uint8_t* data() { return cells_.data(); }
    const std::uint8_t* data() const { return cells_.data(); }

    /// Mapper at the full level (linear) or the coarse level r-m (blocked);
    /// absent for embedded grids.
    const std::optional<CoordMapper>& mapper() const { return mapper_; }

    void fill_dead() { std::fill(cells_.begin(), cells_.end(), 0); }

private:
    FractalDescriptor desc_;
    int level_;
    Layout layout_;
    int block_size_; // rho, 0 unless blocked
    int block_levels_; // m with s^m == rho
    std::int64_t side_;
    std::int64_t block_cols_; // compact width at the coarse level (blocked)
    std::optional<CoordMapper> mapper_;
    std::vector<std::uint8_t> cells_;
};

} // namespace nbb

#endif
