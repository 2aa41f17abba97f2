#pragma once

/// @file geometry.hpp
/// @brief Euclidean causal geometry: ball volumes, sphere areas, packing and the minimal-time law.
///
/// Only flat space is modelled. Positive curvature only shrinks balls, so the
/// Euclidean figures are the worst case for the bounds derived from them.

#include <cstdint>

#include "rclab/lattice.hpp"

namespace rclab {

/// The set of sites a signal leaving `center` at tick t0 can reach at speed c.
///
/// Membership uses the lattice L-infinity metric, which is the exact causal
/// cone of unit-speed nearest-neighbour moves (diagonals included).
struct CausalRegion {
    Site center{};
    int t0 = 0;
    int c = 1;
    int d = 2;

    int radius(int t) const;
    bool contains(const Site& s, int t) const;
};

struct GeometryConstants {
    double omega_d = 0;    ///< volume of the unit d-ball
    double omega_dm1 = 0;  ///< area of the unit sphere bounding it (d * omega_d)
    double ell = 1;        ///< minimum separation between gates
};

/// Unit-ball volume pi^(d/2) / Gamma(d/2 + 1).
double unit_ball_volume(int d);

GeometryConstants geometry_constants(int d, double ell = 1.0);

double ball_volume(int d, double r);

/// d * omega_d * r^(d-1). For d = 1 the "sphere" is the two endpoints and the value is 2.
double sphere_area(int d, double r);

/// floor(V(r + ell/2) / V(ell/2)): points with pairwise distance >= ell inside a radius-r ball.
std::int64_t packing_capacity(int d, double r, double ell = 1.0);

/// ceil((n / K)^(1/(d-1))). Rejects d = 1, where the width law carries no information.
std::int64_t min_time_lower_bound(double n, int d, double K = 1.0);

/// ceil that treats values within a relative 1e-9 of an integer as that integer.
std::int64_t robust_ceil(double x);

}  // namespace rclab
