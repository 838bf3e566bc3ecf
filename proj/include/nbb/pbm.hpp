#ifndef NBB_PBM_HPP
#define NBB_PBM_HPP

#include <iosfwd>
#include <string>

#include "nbb/stencil.hpp"

namespace nbb {

inline constexpr std::int64_t kDefaultRenderCap = 1 << 14; // max side 16384

/// Writes the embedded n x n view as plain PBM (P1): alive cells 1,
/// dead and non-fractal positions 0. Compact states render through the
/// inverse map, so equal states produce byte-identical files on every
/// backend.
void write_pbm(const Simulation& sim, std::ostream& out,
               std::int64_t render_cap = kDefaultRenderCap);
void write_pbm(const Simulation& sim, const std::string& path,
               std::int64_t render_cap = kDefaultRenderCap);

} // namespace nbb

#endif
