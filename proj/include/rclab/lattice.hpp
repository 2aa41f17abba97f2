#pragma once

/// @file lattice.hpp
/// @brief Integer sites of Z^d with the L-infinity (Chebyshev) metric.

#include <array>
#include <cstdint>
#include <string>
#include <vector>

namespace rclab {

/// Largest lattice dimension supported by the embedders and the flux simulator.
inline constexpr int kMaxDim = 4;

/// A lattice site. Coordinates beyond the active dimension are zero.
using Site = std::array<int, kMaxDim>;

int linf_norm(const Site& s, int d);
int linf_distance(const Site& a, const Site& b, int d);

/// Sites at exactly L-infinity radius r, in lexicographic order.
std::vector<Site> shell_sites(int d, int r);

/// Number of sites on the radius-r shell: (2r+1)^d - (2r-1)^d, and 1 for r = 0.
std::int64_t shell_capacity(int d, int r);

/// Number of sites in the closed radius-r ball: (2r+1)^d.
std::int64_t ball_site_count(int d, int r);

/// "(x,y,z)" with d coordinates.
std::string format_site(const Site& s, int d);

void check_dimension(int d);

}  // namespace rclab
