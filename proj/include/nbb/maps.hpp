#ifndef NBB_MAPS_HPP
#define NBB_MAPS_HPP

#include <cstdint>
#include <utility>
#include <vector>

#include "nbb/geometry.hpp"

namespace nbb {

/// Replica ID of the sub-box containing e at scale level mu, i.e. the
/// descriptor index of (floor(x/s^mu) mod s, floor(y/s^mu) mod s).
/// Throws NotInFractal if that sub-box is a hole.
int replica_id(const FractalDescriptor& desc, EmbeddedCoord e, int mu);

/// Procedural fast path for the Sierpinski triangle layout
/// [(0,0),(1,0),(0,1)]: bit_mu(x) + 2*bit_mu(y). Returns 3 for the hole
/// sub-box (1,1), which is never a valid ID. Agrees with replica_id on
/// every fractal cell.
int triangle_replica_id(EmbeddedCoord e, int mu);

/// Per-level unfolding stride: replica i of level mu+1 sits at compact
/// offset i * stride(mu). Even levels unfold right, odd levels down:
///   x stride = k^(mu/2) if mu even else 0
///   y stride = k^(mu/2) if mu odd  else 0
std::pair<std::int64_t, std::int64_t> unfold_stride(int replica_count, int mu);

/// Compact rectangle (w, h) = (k^ceil(r/2), k^floor(r/2)); w*h = k^r.
std::pair<std::int64_t, std::int64_t> compact_dims(const FractalDescriptor& desc,
                                                   int level);

/// Precomputed tables for one (descriptor, level); makes the maps cheap
/// enough for per-neighbor use inside stencil loops.
class CoordMapper {
public:
    CoordMapper(const FractalDescriptor& desc, int level);

    int level() const { return level_; }
    std::int64_t side() const { return side_; }
    std::int64_t compact_width() const { return width_; }
    std::int64_t compact_height() const { return height_; }

    /// Embedded -> compact (the forward map). Returns false if e is not a
    /// fractal cell. Does not range-check e; callers guard the box.
    bool try_to_compact(EmbeddedCoord e, CompactCoord& out) const;

    /// Embedded -> compact; throws NotInFractal / OutOfDomain.
    /// levels_touched, when given, receives the loop iteration count.
    CompactCoord to_compact(EmbeddedCoord e, int* levels_touched = nullptr) const;

    /// Compact -> embedded (the inverse map): digits of cx in base k fill
    /// even levels, digits of cy fill odd levels; each digit selects a
    /// replica position scaled by s^mu. Throws OutOfDomain.
    EmbeddedCoord to_embedded(CompactCoord c, int* levels_touched = nullptr) const;

    /// Membership test via the same digit tables (no range check).
    bool cell_in_fractal(EmbeddedCoord e) const;

private:
    int level_;
    int growth_;
    int replica_count_;
    std::int64_t side_;
    std::int64_t width_, height_;
    bool power_of_two_; // s == 2: digit extraction by shift/mask
    std::vector<std::int64_t> spow_;         // s^mu, mu in [0, level]
    std::vector<std::int16_t> id_of_subbox_; // s*s, -1 = hole
    std::vector<std::int32_t> rep_gx_, rep_gy_;
    std::vector<std::int64_t> stride_x_, stride_y_; // unfold strides per level
};

/// One-shot wrappers over CoordMapper.
CompactCoord to_compact(const FractalDescriptor& desc, int level, EmbeddedCoord e,
                        int* levels_touched = nullptr);
EmbeddedCoord to_embedded(const FractalDescriptor& desc, int level, CompactCoord c,
                          int* levels_touched = nullptr);

/// The forward map encoded as a small matrix product: row 0 of A holds the
/// x strides, row 1 the y strides, column 0 of B the replica IDs of e, all
/// zero-padded to a square fragment of side max(16, r). (A*B)[0][0] and
/// (A*B)[1][0] are the compact coordinates.
struct MapMatrices {
    int side = 0;
    std::vector<std::int64_t> a; // row-major side x side
    std::vector<std::int64_t> b;

    std::int64_t& at_a(int row, int col) { return a[row * side + col]; }
    std::int64_t& at_b(int row, int col) { return b[row * side + col]; }
    std::int64_t at_a(int row, int col) const { return a[row * side + col]; }
    std::int64_t at_b(int row, int col) const { return b[row * side + col]; }
};

MapMatrices build_map_matrices(const FractalDescriptor& desc, int level,
                               EmbeddedCoord e);

/// Generic integer matrix-multiply-accumulate kernel seam:
/// c += a * b for row-major side x side matrices.
using MmaKernel = void (*)(const std::int64_t* a, const std::int64_t* b,
                           std::int64_t* c, int side);

/// Default (naive triple-loop) kernel.
void mma_multiply_accumulate(const std::int64_t* a, const std::int64_t* b,
                             std::int64_t* c, int side);

/// Forward map computed through the matrix encoding; exact integers,
/// equals to_compact on every fractal cell.
CompactCoord to_compact_via_mma(const FractalDescriptor& desc, int level,
                                EmbeddedCoord e,
                                MmaKernel kernel = mma_multiply_accumulate);

} // namespace nbb

#endif
