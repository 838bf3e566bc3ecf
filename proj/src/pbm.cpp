#include "nbb/pbm.hpp"
#include "nbb/errors.hpp"

#include <fstream>
#include <ostream>

namespace nbb {

void write_pbm(const Simulation& sim, std::ostream& out,
               std::int64_t render_cap) {
    const std::int64_t n = sim.side();
    if (n > render_cap)
        throw CapacityError("side " + std::to_string(n) +
                            " exceeds the render cap of " +
                            std::to_string(render_cap));
    out << "P1\n" << n << " " << n << "\n";
    std::string row(static_cast<std::size_t>(n), '0');
    for (std::int64_t y = 0; y < n; ++y) {
        for (std::int64_t x = 0; x < n; ++x)
            row[static_cast<std::size_t>(x)] = sim.cell({x, y}) ? '1' : '0';
        out << row << "\n";
    }
}

void write_pbm(const Simulation& sim, const std::string& path,
               std::int64_t render_cap) {
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw CapacityError("cannot open '" + path + "' for writing");
    write_pbm(sim, out, render_cap);
    if (!out)
        throw CapacityError("write to '" + path + "' failed");
}

} // namespace nbb
