#include "nbb/oracle.hpp"
#include "nbb/errors.hpp"
#include "nbb/maps.hpp"

#include <memory>
#include <sstream>

namespace nbb {

std::unordered_map<std::uint64_t, std::uint64_t>
unfold_compact_oracle(const FractalDescriptor& desc, int level,
                      std::int64_t max_cells) {
    desc.validate();
    if (level < 0)
        throw OutOfDomain("scale level must be >= 0");
    if (cell_count(desc, level) > max_cells)
        throw CapacityError("oracle size guard: " +
                            std::to_string(cell_count(desc, level)) +
                            " cells exceed the limit of " +
                            std::to_string(max_cells));
    std::unordered_map<std::uint64_t, std::uint64_t> mapping;
    mapping.reserve(static_cast<std::size_t>(cell_count(desc, level)));
    mapping[pack_coord(0, 0)] = pack_coord(0, 0);
    std::int64_t embedded_scale = 1; // s^mu
    for (int mu = 0; mu < level; ++mu) {
        const auto [tx, ty] = unfold_stride(desc.replica_count, mu);
        std::unordered_map<std::uint64_t, std::uint64_t> next;
        next.reserve(mapping.size() * desc.replicas.size());
        for (std::size_t i = 0; i < desc.replicas.size(); ++i) {
            const auto [gx, gy] = desc.replicas[i];
            const std::int64_t id = static_cast<std::int64_t>(i);
            for (const auto& [ekey, ckey] : mapping) {
                const std::int64_t ex =
                    static_cast<std::int64_t>(ekey >> 32) + gx * embedded_scale;
                const std::int64_t ey =
                    static_cast<std::int64_t>(static_cast<std::int32_t>(ekey)) +
                    gy * embedded_scale;
                const std::int64_t cx =
                    static_cast<std::int64_t>(ckey >> 32) + id * tx;
                const std::int64_t cy =
                    static_cast<std::int64_t>(static_cast<std::int32_t>(ckey)) +
                    id * ty;
                next[pack_coord(ex, ey)] = pack_coord(cx, cy);
            }
        }
        mapping = std::move(next);
        embedded_scale *= desc.growth;
    }
    return mapping;
}

std::string VerifyReport::summary() const {
    std::ostringstream out;
    out << (pass ? "pass" : "FAIL") << ", " << cells_checked << " cells checked";
    if (!violations.empty())
        out << ", " << violations.size() << " violation(s)";
    return out.str();
}

VerifyReport verify_maps(const FractalDescriptor& desc, int level) {
    VerifyReport report;
    auto note = [&](const std::string& msg) {
        report.pass = false;
        if (report.violations.size() < 100)
            report.violations.push_back(msg);
    };

    const auto oracle = unfold_compact_oracle(desc, level);
    const CoordMapper mapper(desc, level);
    const std::int64_t w = mapper.compact_width();
    const std::int64_t h = mapper.compact_height();

    std::vector<std::uint8_t> hit(static_cast<std::size_t>(w * h), 0);
    for (const auto& [ekey, ckey] : oracle) {
        const EmbeddedCoord e{static_cast<std::int64_t>(ekey >> 32),
                              static_cast<std::int64_t>(
                                  static_cast<std::int32_t>(ekey))};
        const CompactCoord expected{static_cast<std::int64_t>(ckey >> 32),
                                    static_cast<std::int64_t>(
                                        static_cast<std::int32_t>(ckey))};
        ++report.cells_checked;
        CompactCoord c;
        if (!mapper.try_to_compact(e, c)) {
            note("forward map rejects oracle cell (" + std::to_string(e.x) +
                 "," + std::to_string(e.y) + ")");
            continue;
        }
        if (!(c == expected))
            note("forward map (" + std::to_string(e.x) + "," +
                 std::to_string(e.y) + ") -> (" + std::to_string(c.cx) + "," +
                 std::to_string(c.cy) + "), oracle says (" +
                 std::to_string(expected.cx) + "," +
                 std::to_string(expected.cy) + ")");
        if (c.cx < 0 || c.cy < 0 || c.cx >= w || c.cy >= h) {
            note("compact coordinate out of rectangle for (" +
                 std::to_string(e.x) + "," + std::to_string(e.y) + ")");
            continue;
        }
        if (hit[c.cy * w + c.cx]++)
            note("collision at compact (" + std::to_string(c.cx) + "," +
                 std::to_string(c.cy) + ")");
        const EmbeddedCoord back = mapper.to_embedded(c);
        if (!(back == e))
            note("inverse round trip (" + std::to_string(e.x) + "," +
                 std::to_string(e.y) + ") came back as (" +
                 std::to_string(back.x) + "," + std::to_string(back.y) + ")");
        const CompactCoord via_mma = to_compact_via_mma(desc, level, e);
        if (!(via_mma == c))
            note("matrix-form map disagrees at (" + std::to_string(e.x) + "," +
                 std::to_string(e.y) + ")");
    }
    // density: every compact slot covered exactly once
    for (std::int64_t i = 0; i < w * h; ++i)
        if (hit[static_cast<std::size_t>(i)] != 1)
            note("compact slot (" + std::to_string(i % w) + "," +
                 std::to_string(i / w) + ") covered " +
                 std::to_string(int(hit[static_cast<std::size_t>(i)])) +
                 " times");
    // other direction: compact -> embedded -> compact is the identity
    for (std::int64_t cy = 0; cy < h; ++cy)
        for (std::int64_t cx = 0; cx < w; ++cx) {
            const CompactCoord c{cx, cy};
            CompactCoord again;
            if (!mapper.try_to_compact(mapper.to_embedded(c), again) ||
                !(again == c))
                note("compact round trip fails at (" + std::to_string(cx) +
                     "," + std::to_string(cy) + ")");
        }
    return report;
}

VerifyReport verify_stencil(const FractalDescriptor& desc, int level,
                            const StencilRule& rule, std::uint64_t seed,
                            double density, std::int64_t steps,
                            const LockstepHook& post_step) {
    VerifyReport report;
    auto note = [&](const std::string& msg) {
        report.pass = false;
        if (report.violations.size() < 100)
            report.violations.push_back(msg);
    };

    std::vector<std::unique_ptr<Simulation>> sims;
    sims.emplace_back(
        std::make_unique<Simulation>(desc, level, Backend::BoundingBox));
    sims.emplace_back(
        std::make_unique<Simulation>(desc, level, Backend::CompactGrid));
    sims.emplace_back(
        std::make_unique<Simulation>(desc, level, Backend::Compact));
    for (auto& sim : sims)
        sim->seed_random(seed, density);

    std::vector<Simulation*> raw;
    for (auto& sim : sims)
        raw.push_back(sim.get());

    const auto cells = enumerate_cells(desc, level);
    auto compare_states = [&](std::int64_t iteration) {
        for (const auto& e : cells) {
            const std::uint8_t reference = raw[0]->cell(e);
            for (std::size_t s = 1; s < raw.size(); ++s)
                if (raw[s]->cell(e) != reference) {
                    note("backend " +
                         std::string(backend_name(raw[s]->backend())) +
                         " diverges from bb at iteration " +
                         std::to_string(iteration) + ", cell (" +
                         std::to_string(e.x) + "," + std::to_string(e.y) + ")");
                    return false;
                }
            ++report.cells_checked;
        }
        return true;
    };

    if (!compare_states(0))
        return report;
    for (std::int64_t it = 1; it <= steps; ++it) {
        for (auto* sim : raw)
            sim->step(rule);
        if (post_step)
            post_step(it, raw);
        if (!compare_states(it))
            return report;
    }
    return report;
}

} // namespace nbb
