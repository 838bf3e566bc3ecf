#ifndef NBB_DESCRIPTOR_HPP
#define NBB_DESCRIPTOR_HPP

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace nbb {

/// Position of one replica on the s x s sub-box grid of the next scale level.
struct ReplicaPos {
    int gx = 0;
    int gy = 0;
    friend bool operator==(ReplicaPos a, ReplicaPos b) {
        return a.gx == b.gx && a.gy == b.gy;
    }
};

/// An NBB fractal: k translated, non-overlapping replicas per level on an
/// s x s sub-box grid. The order of `replicas` defines replica IDs 0..k-1;
/// every map in this library shares that single numbering.
struct FractalDescriptor {
    std::string name;
    int replica_count = 0; // k
    int growth = 0;        // s, linear scale factor per level
    std::vector<ReplicaPos> replicas;

    /// Throws ParseError if any invariant is violated (k >= 1, s >= 2,
    /// k <= s^2, positions distinct and inside the s x s grid,
    /// list length == k).
    void validate() const;

    /// Replica ID for a sub-box position, or -1 if the position is a hole.
    int replica_index(int gx, int gy) const;
};

/// Canonical descriptors: "sierpinski-triangle", "sierpinski-carpet", "vicsek".
FractalDescriptor builtin_descriptor(std::string_view name);

/// Parses the line-based key=value descriptor format:
///   name=<text>
///   k=<int>
///   s=<int>
///   replicas=gx,gy;gx,gy;...   (k pairs, order = IDs)
/// Lines starting with '#' are comments; whitespace around tokens is ignored.
FractalDescriptor parse_descriptor(std::string_view text);

/// Resolves a CLI-style fractal spec: a builtin name, or "@path" to a
/// descriptor file.
FractalDescriptor load_descriptor(std::string_view spec);

} // namespace nbb

#endif
