#pragma once

#include <cstdint>
#include <vector>

#include "ffdyn/projmap.hpp"

namespace ffdyn {

/// Per-map dynamical summary.
struct OrbitCensus {
    std::uint32_t q_plus_1 = 0;
    std::uint32_t periodic_count = 0;
    /// |phi^0(P^1)|, ..., |phi^{N+1}(P^1)| where N is the stabilization index
    /// (so the last two entries are equal).
    std::vector<std::uint32_t> image_sizes;
    std::uint32_t stabilization_index = 0;
    /// Cycle lengths, ascending. Sums to periodic_count.
    std::vector<std::uint32_t> cycle_lengths;
};

/// Reusable scratch space so ensemble loops stay allocation-free per map.
struct DynWorkspace {
    std::vector<std::uint32_t> next;   // functional graph: index -> index
    std::vector<std::uint8_t> state;
    std::vector<std::uint32_t> pos;
    std::vector<std::uint32_t> path;
};

/// Fills ws.next with the functional graph of the map on point indices
/// (finite points in field-element order, then infinity at index q).
void build_graph(const RatMap& map, DynWorkspace& ws);

/// Exact periodic set by three-color traversal of the functional graph: walk
/// each unvisited forward orbit; when the walk meets a point of the current
/// path a new cycle has been found and the segment from that point on is
/// periodic, everything before it is tail. O(q) evaluations total.
std::vector<ProjPoint> periodic_points(const RatMap& map);

/// Independent oracle route: the stabilized iterated image
/// S_{k+1} = phi(S_k), S_0 = P^1, returned as a sorted point list. Must equal
/// periodic_points as a set.
std::vector<ProjPoint> periodic_points_via_image(const RatMap& map);

/// Sizes |phi^0(P^1)|, |phi^1(P^1)|, ... truncated at min(n_max, N+1) where N
/// is the stabilization index.
std::vector<std::uint32_t> image_sequence(const RatMap& map, std::uint32_t n_max);

/// |Per| / (q+1) as an exact rational.
Rat periodic_proportion(const RatMap& map);

OrbitCensus census(const RatMap& map);

/// Hot path used by ensemble kernels: periodic count only, no allocation
/// beyond the workspace.
std::uint32_t periodic_count_fast(const RatMap& map, DynWorkspace& ws);

/// Same traversal on an externally filled ws.next (kernels that build the
/// graph themselves).
std::uint32_t periodic_count_from_graph(DynWorkspace& ws, std::uint32_t n_points);

}  // namespace ffdyn
