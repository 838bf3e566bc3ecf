#include "nbb/maps.hpp"
#include "nbb/errors.hpp"

#include <algorithm>
#include <string>

namespace nbb {

int replica_id(const FractalDescriptor& desc, EmbeddedCoord e, int mu) {
    if (mu < 0)
        throw OutOfDomain("level index must be >= 0");
    const std::int64_t scale = ipow_checked(desc.growth, mu);
    const int gx = static_cast<int>((e.x / scale) % desc.growth);
    const int gy = static_cast<int>((e.y / scale) % desc.growth);
    const int id = desc.replica_index(gx, gy);
    if (id < 0)
        throw NotInFractal("sub-box (" + std::to_string(gx) + "," +
                           std::to_string(gy) + ") at level " +
                           std::to_string(mu) + " is not an occupied replica");
    return id;
}

int triangle_replica_id(EmbeddedCoord e, int mu) {
    return static_cast<int>((e.x >> mu) & 1) +
           2 * static_cast<int>((e.y >> mu) & 1);
}

std::pair<std::int64_t, std::int64_t> unfold_stride(int replica_count, int mu) {
    if (mu < 0)
        throw OutOfDomain("level index must be >= 0");
    const std::int64_t p = ipow_checked(replica_count, mu / 2);
    return (mu % 2 == 0) ? std::pair<std::int64_t, std::int64_t>{p, 0}
                         : std::pair<std::int64_t, std::int64_t>{0, p};
}

std::pair<std::int64_t, std::int64_t> compact_dims(const FractalDescriptor& desc,
                                                   int level) {
    if (level < 0)
        throw OutOfDomain("scale level must be >= 0");
    const std::int64_t w = ipow_checked(desc.replica_count, (level + 1) / 2);
    const std::int64_t h = ipow_checked(desc.replica_count, level / 2);
    return {w, h};
}

CoordMapper::CoordMapper(const FractalDescriptor& desc, int level)
    : level_(level),
      growth_(desc.growth),
      replica_count_(desc.replica_count),
      side_(side_length(desc, level)) {
    desc.validate();
    auto [w, h] = compact_dims(desc, level);
    width_ = w;
    height_ = h;
    power_of_two_ = (growth_ == 2);

    spow_.resize(level + 1);
    spow_[0] = 1;
    for (int mu = 0; mu < level; ++mu)
        spow_[mu + 1] = spow_[mu] * growth_;

    id_of_subbox_.assign(static_cast<std::size_t>(growth_) * growth_, -1);
    rep_gx_.resize(desc.replicas.size());
    rep_gy_.resize(desc.replicas.size());
    for (std::size_t i = 0; i < desc.replicas.size(); ++i) {
        const auto [gx, gy] = desc.replicas[i];
        id_of_subbox_[gy * growth_ + gx] = static_cast<std::int16_t>(i);
        rep_gx_[i] = gx;
        rep_gy_[i] = gy;
    }

    stride_x_.resize(level);
    stride_y_.resize(level);
    for (int mu = 0; mu < level; ++mu) {
        auto [tx, ty] = unfold_stride(replica_count_, mu);
        stride_x_[mu] = tx;
        stride_y_[mu] = ty;
    }
}

bool CoordMapper::try_to_compact(EmbeddedCoord e, CompactCoord& out) const {
    std::int64_t cx = 0, cy = 0;
    std::int64_t x = e.x, y = e.y;
    if (power_of_two_) {
        for (int mu = 0; mu < level_; ++mu) {
            const int id =
                id_of_subbox_[((y & 1) << 1) | (x & 1)];
            if (id < 0)
                return false;
            cx += stride_x_[mu] * id;
            cy += stride_y_[mu] * id;
            x >>= 1;
            y >>= 1;
        }
    } else {
        for (int mu = 0; mu < level_; ++mu) {
            const int id = id_of_subbox_[(y % growth_) * growth_ + (x % growth_)];
            if (id < 0)
                return false;
            cx += stride_x_[mu] * id;
            cy += stride_y_[mu] * id;
            x /= growth_;
            y /= growth_;
        }
    }
    out = {cx, cy};
    return true;
}

CompactCoord CoordMapper::to_compact(EmbeddedCoord e, int* levels_touched) const {
    if (e.x < 0 || e.y < 0 || e.x >= side_ || e.y >= side_)
        throw OutOfDomain("embedded coordinate (" + std::to_string(e.x) + "," +
                          std::to_string(e.y) + ") outside [0," +
                          std::to_string(side_) + ")^2");
    if (levels_touched)
        *levels_touched = level_;
    CompactCoord out;
    if (!try_to_compact(e, out))
        throw NotInFractal("embedded coordinate (" + std::to_string(e.x) + "," +
                           std::to_string(e.y) + ") is not a fractal cell");
    return out;
}

EmbeddedCoord CoordMapper::to_embedded(CompactCoord c, int* levels_touched) const {
    if (c.cx < 0 || c.cy < 0 || c.cx >= width_ || c.cy >= height_)
        throw OutOfDomain("compact coordinate (" + std::to_string(c.cx) + "," +
                          std::to_string(c.cy) + ") outside [0," +
                          std::to_string(width_) + ")x[0," +
                          std::to_string(height_) + ")");
    if (levels_touched)
        *levels_touched = level_;
    std::int64_t x = 0, y = 0;
    std::int64_t cx = c.cx, cy = c.cy;
    for (int mu = 0; mu < level_; ++mu) {
        int digit;
        if (mu % 2 == 0) {
            digit = static_cast<int>(cx % replica_count_);
            cx /= replica_count_;
        } else {
            digit = static_cast<int>(cy % replica_count_);
            cy /= replica_count_;
        }
        x += rep_gx_[digit] * spow_[mu];
        y += rep_gy_[digit] * spow_[mu];
    }
    return {x, y};
}

bool CoordMapper::cell_in_fractal(EmbeddedCoord e) const {
    CompactCoord scratch;
    return try_to_compact(e, scratch);
}

CompactCoord to_compact(const FractalDescriptor& desc, int level, EmbeddedCoord e,
                        int* levels_touched) {
    return CoordMapper(desc, level).to_compact(e, levels_touched);
}

EmbeddedCoord to_embedded(const FractalDescriptor& desc, int level, CompactCoord c,
                          int* levels_touched) {
    return CoordMapper(desc, level).to_embedded(c, levels_touched);
}

MapMatrices build_map_matrices(const FractalDescriptor& desc, int level,
                               EmbeddedCoord e) {
    const std::int64_t n = side_length(desc, level);
    if (e.x < 0 || e.y < 0 || e.x >= n || e.y >= n)
        throw OutOfDomain("embedded coordinate outside the bounding box");
    MapMatrices m;
    m.side = std::max(16, level);
    m.a.assign(static_cast<std::size_t>(m.side) * m.side, 0);
    m.b.assign(static_cast<std::size_t>(m.side) * m.side, 0);
    for (int mu = 0; mu < level; ++mu) {
        auto [tx, ty] = unfold_stride(desc.replica_count, mu);
        m.at_a(0, mu) = tx;
        m.at_a(1, mu) = ty;
        m.at_b(mu, 0) = replica_id(desc, e, mu); // throws NotInFractal on holes
    }
    return m;
}

void mma_multiply_accumulate(const std::int64_t* a, const std::int64_t* b,
                             std::int64_t* c, int side) {
    for (int i = 0; i < side; ++i)
        for (int l = 0; l < side; ++l) {
            const std::int64_t av = a[i * side + l];
            if (av == 0)
                continue;
            for (int j = 0; j < side; ++j)
                c[i * side + j] += av * b[l * side + j];
        }
}

CompactCoord to_compact_via_mma(const FractalDescriptor& desc, int level,
                                EmbeddedCoord e, MmaKernel kernel) {
    const MapMatrices m = build_map_matrices(desc, level, e);
    std::vector<std::int64_t> c(static_cast<std::size_t>(m.side) * m.side, 0);
    kernel(m.a.data(), m.b.data(), c.data(), m.side);
    return {c[0], c[m.side]};
}

} // namespace nbb
