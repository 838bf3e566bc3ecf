#include "nbb/stencil.hpp"
#include "nbb/errors.hpp"
#include "nbb/rng.hpp"

#include <chrono>
#include <string>
#include <thread>

namespace nbb {

StencilRule StencilRule::parse(std::string_view text, Neighborhood nb) {
    StencilRule rule;
    rule.neighborhood = nb;
    std::size_t pos = 0;
    auto expect = [&](char upper, char lower) {
        if (pos >= text.size() || (text[pos] != upper && text[pos] != lower))
            throw ParseError("malformed rule '" + std::string(text) +
                             "' (expected B<digits>/S<digits>)");
        ++pos;
    };
    auto digits = [&](std::uint16_t& mask) {
        while (pos < text.size() && text[pos] >= '0' && text[pos] <= '9') {
            const int count = text[pos] - '0';
            if (count > 8)
                throw ParseError("neighbor count " + std::to_string(count) +
                                 " out of range [0,8] in rule '" +
                                 std::string(text) + "'");
            mask |= static_cast<std::uint16_t>(1u << count);
            ++pos;
        }
    };
    expect('B', 'b');
    digits(rule.birth);
    expect('/', '/');
    expect('S', 's');
    digits(rule.survive);
    if (pos != text.size())
        throw ParseError("trailing characters in rule '" + std::string(text) +
                         "'");
    return rule;
}

std::string StencilRule::to_string() const {
    std::string out = "B";
    for (int c = 0; c <= 8; ++c)
        if (born_with(c))
            out += static_cast<char>('0' + c);
    out += "/S";
    for (int c = 0; c <= 8; ++c)
        if (survives_with(c))
            out += static_cast<char>('0' + c);
    return out;
}

const std::vector<std::pair<int, int>>& neighbor_offsets(Neighborhood nb) {
    static const std::vector<std::pair<int, int>> von_neumann = {
        {1, 0}, {-1, 0}, {0, 1}, {0, -1}};
    static const std::vector<std::pair<int, int>> moore = {
        {1, 0}, {-1, 0}, {0, 1}, {0, -1}, {1, 1}, {1, -1}, {-1, 1}, {-1, -1}};
    return nb == Neighborhood::VonNeumann ? von_neumann : moore;
}

std::optional<CompactCoord> resolve_neighbor(const CoordMapper& mapper,
                                             CompactCoord c,
                                             std::pair<int, int> offset) {
    const EmbeddedCoord e = mapper.to_embedded(c);
    const EmbeddedCoord shifted{e.x + offset.first, e.y + offset.second};
    if (shifted.x < 0 || shifted.y < 0 || shifted.x >= mapper.side() ||
        shifted.y >= mapper.side())
        return std::nullopt;
    CompactCoord out;
    if (!mapper.try_to_compact(shifted, out))
        return std::nullopt;
    return out;
}

std::optional<CompactCoord> resolve_neighbor(const FractalDescriptor& desc,
                                             int level, CompactCoord c,
                                             std::pair<int, int> offset) {
    return resolve_neighbor(CoordMapper(desc, level), c, offset);
}

std::string_view backend_name(Backend b) {
    switch (b) {
    case Backend::BoundingBox:
        return "bb";
    case Backend::CompactGrid:
        return "lambda";
    case Backend::Compact:
        return "compact";
    }
    return "?";
}

Backend parse_backend(std::string_view name) {
    if (name == "bb")
        return Backend::BoundingBox;
    if (name == "lambda")
        return Backend::CompactGrid;
    if (name == "compact")
        return Backend::Compact;
    throw ParseError("unknown backend '" + std::string(name) +
                     "' (expected bb, lambda or compact)");
}

namespace {

Layout layout_for(Backend backend, int block_size) {
    if (backend == Backend::Compact)
        return block_size > 0 ? Layout::BlockedCompact : Layout::LinearCompact;
    return Layout::Embedded;
}

} // namespace

Simulation::Simulation(const FractalDescriptor& desc, int level, Backend backend,
                       SimOptions options)
    : desc_(desc),
      level_(level),
      backend_(backend),
      options_(options),
      side_(side_length(desc, level)),
      mapper_(desc, level),
      front_(desc, level, layout_for(backend, options.block_size),
             options.block_size, options.memory_cap),
      back_(desc, level, layout_for(backend, options.block_size),
            options.block_size, options.memory_cap) {
    if (backend_ != Backend::Compact && options_.block_size > 0)
        throw OutOfDomain("block size applies to the compact backend only");
    if (options_.neighbor_table &&
        (backend_ != Backend::Compact || options_.block_size > 0))
        throw OutOfDomain("the neighbor table applies to the linear compact "
                          "backend only");
    if (options_.workers < 1)
        options_.workers = 1;
}

void Simulation::seed_random(std::uint64_t seed, double density) {
    if (!(density >= 0.0 && density <= 1.0))
        throw OutOfDomain("density must be in [0,1]");
    front_.fill_dead();
    back_.fill_dead();
    iteration_ = 0;
    std::uint8_t* f = front_.data();
    switch (front_.layout()) {
    case Layout::Embedded:
        for (std::int64_t y = 0; y < side_; ++y)
            for (std::int64_t x = 0; x < side_; ++x)
                if (mapper_.cell_in_fractal({x, y}))
                    f[y * side_ + x] = cell_alive(seed, x, y, density) ? 1 : 0;
        break;
    case Layout::LinearCompact: {
        const std::int64_t total = front_.stored_cell_count();
        const std::int64_t w = mapper_.compact_width();
        for (std::int64_t i = 0; i < total; ++i) {
            const EmbeddedCoord e = mapper_.to_embedded({i % w, i / w});
            f[i] = cell_alive(seed, e.x, e.y, density) ? 1 : 0;
        }
        break;
    }
    case Layout::BlockedCompact: {
        const std::int64_t rho = front_.block_size();
        const CoordMapper& coarse = *front_.mapper();
        const std::int64_t blocks = front_.stored_cell_count() / (rho * rho);
        const std::int64_t wc = coarse.compact_width();
        for (std::int64_t b = 0; b < blocks; ++b) {
            const EmbeddedCoord corner = coarse.to_embedded({b % wc, b / wc});
            for (std::int64_t ly = 0; ly < rho; ++ly)
                for (std::int64_t lx = 0; lx < rho; ++lx) {
                    const EmbeddedCoord e{corner.x * rho + lx,
                                          corner.y * rho + ly};
                    if (mapper_.cell_in_fractal(e))
                        f[b * rho * rho + ly * rho + lx] =
                            cell_alive(seed, e.x, e.y, density) ? 1 : 0;
                }
        }
        break;
    }
    }
}

std::uint8_t Simulation::cell(EmbeddedCoord e) const {
    if (e.x < 0 || e.y < 0 || e.x >= side_ || e.y >= side_)
        throw OutOfDomain("embedded coordinate outside the bounding box");
    if (!mapper_.cell_in_fractal(e))
        return 0;
    return front_.get(e);
}

void Simulation::set_cell(EmbeddedCoord e, std::uint8_t state) {
    if (!mapper_.cell_in_fractal(e))
        throw NotInFractal("set_cell requires a fractal cell");
    front_.set(e, state);
}

std::uint64_t Simulation::state_hash() const {
    std::uint64_t hash = 0;
    const std::uint8_t* f = front_.data();
    switch (front_.layout()) {
    case Layout::Embedded: {
        const std::int64_t total = front_.stored_cell_count();
        for (std::int64_t i = 0; i < total; ++i)
            if (f[i])
                hash += coord_mix(i % side_, i / side_);
        break;
    }
    case Layout::LinearCompact: {
        const std::int64_t total = front_.stored_cell_count();
        const std::int64_t w = mapper_.compact_width();
        for (std::int64_t i = 0; i < total; ++i)
            if (f[i]) {
                const EmbeddedCoord e = mapper_.to_embedded({i % w, i / w});
                hash += coord_mix(e.x, e.y);
            }
        break;
    }
    case Layout::BlockedCompact: {
        const std::int64_t rho = front_.block_size();
        const CoordMapper& coarse = *front_.mapper();
        const std::int64_t blocks = front_.stored_cell_count() / (rho * rho);
        const std::int64_t wc = coarse.compact_width();
        for (std::int64_t b = 0; b < blocks; ++b) {
            const EmbeddedCoord corner = coarse.to_embedded({b % wc, b / wc});
            for (std::int64_t ly = 0; ly < rho; ++ly)
                for (std::int64_t lx = 0; lx < rho; ++lx)
                    if (f[b * rho * rho + ly * rho + lx])
                        hash += coord_mix(corner.x * rho + lx,
                                          corner.y * rho + ly);
        }
        break;
    }
    }
    return hash;
}

void Simulation::parallel_for(std::int64_t domain,
                              void (Simulation::*body)(const StencilRule&,
                                                       std::int64_t,
                                                       std::int64_t),
                              const StencilRule& rule) {
    const int workers = options_.workers;
    if (workers <= 1 || domain < 2) {
        (this->*body)(rule, 0, domain);
        return;
    }
    const std::int64_t chunk = (domain + workers - 1) / workers;
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(workers));
    for (int w = 0; w < workers; ++w) {
        const std::int64_t lo = w * chunk;
        const std::int64_t hi = std::min(domain, lo + chunk);
        if (lo >= hi)
            break;
        pool.emplace_back([this, body, &rule, lo, hi] {
            (this->*body)(rule, lo, hi);
        });
    }
    for (auto& t : pool)
        t.join();
}

void Simulation::step(const StencilRule& rule) {
    switch (backend_) {
    case Backend::BoundingBox:
        parallel_for(side_, &Simulation::step_bounding_box, rule);
        break;
    case Backend::CompactGrid:
        // exactly k^r cells, even though storage stays embedded
        parallel_for(mapper_.compact_width() * mapper_.compact_height(),
                     &Simulation::step_compact_grid, rule);
        break;
    case Backend::Compact:
        if (front_.layout() == Layout::LinearCompact) {
            if (options_.neighbor_table &&
                table_degree_ !=
                    static_cast<int>(neighbor_offsets(rule.neighborhood).size()))
                build_neighbor_table(rule);
            parallel_for(front_.stored_cell_count(),
                         &Simulation::step_compact_linear, rule);
        } else {
            const std::int64_t rho = front_.block_size();
            parallel_for(front_.stored_cell_count() / (rho * rho),
                         &Simulation::step_compact_blocked, rule);
        }
        break;
    }
    std::swap(front_, back_);
    ++iteration_;
}

void Simulation::step_bounding_box(const StencilRule& rule, std::int64_t row0,
                                   std::int64_t row1) {
    const auto& offsets = neighbor_offsets(rule.neighborhood);
    const std::uint8_t* f = front_.data();
    std::uint8_t* b = back_.data();
    const std::int64_t n = side_;
    for (std::int64_t y = row0; y < row1; ++y)
        for (std::int64_t x = 0; x < n; ++x) {
            if (!mapper_.cell_in_fractal({x, y}))
                continue; // holes never change state
            int count = 0;
            for (const auto [dx, dy] : offsets) {
                const std::int64_t nx = x + dx, ny = y + dy;
                if (nx >= 0 && ny >= 0 && nx < n && ny < n)
                    count += f[ny * n + nx];
            }
            const std::uint8_t alive = f[y * n + x];
            b[y * n + x] = alive ? (rule.survives_with(count) ? 1 : 0)
                                 : (rule.born_with(count) ? 1 : 0);
        }
}

void Simulation::step_compact_grid(const StencilRule& rule, std::int64_t i0,
                                   std::int64_t i1) {
    const auto& offsets = neighbor_offsets(rule.neighborhood);
    const std::uint8_t* f = front_.data();
    std::uint8_t* b = back_.data();
    const std::int64_t n = side_;
    const std::int64_t w = mapper_.compact_width();
    for (std::int64_t i = i0; i < i1; ++i) {
        const EmbeddedCoord e = mapper_.to_embedded({i % w, i / w});
        int count = 0;
        for (const auto [dx, dy] : offsets) {
            const std::int64_t nx = e.x + dx, ny = e.y + dy;
            if (nx >= 0 && ny >= 0 && nx < n && ny < n)
                count += f[ny * n + nx];
        }
        const std::uint8_t alive = f[e.y * n + e.x];
        b[e.y * n + e.x] = alive ? (rule.survives_with(count) ? 1 : 0)
                                 : (rule.born_with(count) ? 1 : 0);
    }
}

void Simulation::step_compact_linear(const StencilRule& rule, std::int64_t i0,
                                     std::int64_t i1) {
    const auto& offsets = neighbor_offsets(rule.neighborhood);
    const std::uint8_t* f = front_.data();
    std::uint8_t* b = back_.data();
    const std::int64_t w = mapper_.compact_width();
    if (!neighbor_table_.empty()) {
        const int deg = table_degree_;
        for (std::int64_t i = i0; i < i1; ++i) {
            int count = 0;
            const std::int64_t* row = neighbor_table_.data() + i * deg;
            for (int j = 0; j < deg; ++j)
                if (row[j] >= 0)
                    count += f[row[j]];
            b[i] = f[i] ? (rule.survives_with(count) ? 1 : 0)
                        : (rule.born_with(count) ? 1 : 0);
        }
        return;
    }
    const std::int64_t n = side_;
    for (std::int64_t i = i0; i < i1; ++i) {
        const EmbeddedCoord e = mapper_.to_embedded({i % w, i / w});
        int count = 0;
        for (const auto [dx, dy] : offsets) {
            const EmbeddedCoord ne{e.x + dx, e.y + dy};
            if (ne.x < 0 || ne.y < 0 || ne.x >= n || ne.y >= n)
                continue;
            CompactCoord nc;
            if (mapper_.try_to_compact(ne, nc))
                count += f[nc.cy * w + nc.cx];
        }
        b[i] = f[i] ? (rule.survives_with(count) ? 1 : 0)
                    : (rule.born_with(count) ? 1 : 0);
    }
}

void Simulation::step_compact_blocked(const StencilRule& rule, std::int64_t b0,
                                      std::int64_t b1) {
    const auto& offsets = neighbor_offsets(rule.neighborhood);
    const std::uint8_t* f = front_.data();
    std::uint8_t* bk = back_.data();
    const std::int64_t n = side_;
    const std::int64_t rho = front_.block_size();
    const CoordMapper& coarse = *front_.mapper();
    const std::int64_t wc = coarse.compact_width();
    for (std::int64_t b = b0; b < b1; ++b) {
        const EmbeddedCoord corner = coarse.to_embedded({b % wc, b / wc});
        for (std::int64_t ly = 0; ly < rho; ++ly)
            for (std::int64_t lx = 0; lx < rho; ++lx) {
                const EmbeddedCoord e{corner.x * rho + lx, corner.y * rho + ly};
                if (!mapper_.cell_in_fractal(e))
                    continue; // filler slot, stays dead
                int count = 0;
                for (const auto [dx, dy] : offsets) {
                    const EmbeddedCoord ne{e.x + dx, e.y + dy};
                    if (ne.x < 0 || ne.y < 0 || ne.x >= n || ne.y >= n)
                        continue;
                    if (mapper_.cell_in_fractal(ne))
                        count += f[front_.storage_index(ne)];
                }
                const std::int64_t slot = b * rho * rho + ly * rho + lx;
                bk[slot] = f[slot] ? (rule.survives_with(count) ? 1 : 0)
                                   : (rule.born_with(count) ? 1 : 0);
            }
    }
}

void Simulation::build_neighbor_table(const StencilRule& rule) {
    const auto& offsets = neighbor_offsets(rule.neighborhood);
    const int deg = static_cast<int>(offsets.size());
    const std::int64_t total = front_.stored_cell_count();
    const std::int64_t w = mapper_.compact_width();
    neighbor_table_.assign(static_cast<std::size_t>(total) * deg, -1);
    for (std::int64_t i = 0; i < total; ++i) {
        const CompactCoord c{i % w, i / w};
        for (int j = 0; j < deg; ++j)
            if (auto nc = resolve_neighbor(mapper_, c, offsets[j]))
                neighbor_table_[i * deg + j] = nc->cy * w + nc->cx;
    }
    table_degree_ = deg;
}

RunResult run_simulation(const FractalDescriptor& desc, int level,
                         Backend backend, const StencilRule& rule,
                         std::int64_t steps, std::uint64_t seed, double density,
                         SimOptions options) {
    if (steps < 0)
        throw OutOfDomain("steps must be >= 0");
    Simulation sim(desc, level, backend, options);
    sim.seed_random(seed, density);
    RunResult result;
    result.step_ms.reserve(static_cast<std::size_t>(steps));
    const auto t0 = std::chrono::steady_clock::now();
    for (std::int64_t i = 0; i < steps; ++i) {
        const auto a = std::chrono::steady_clock::now();
        sim.step(rule);
        const auto b = std::chrono::steady_clock::now();
        result.step_ms.push_back(
            std::chrono::duration<double, std::milli>(b - a).count());
    }
    const auto t1 = std::chrono::steady_clock::now();
    result.total_ms = std::chrono::duration<double, std::milli>(t1 - t0).count();
    result.steps = steps;
    result.state_hash = sim.state_hash();
    return result;
}

} // namespace nbb
