#include "rclab/geometry.hpp"

#include <cmath>
#include <numbers>

#include "rclab/error.hpp"

namespace rclab {

int CausalRegion::radius(int t) const {
    if (t < t0) throw Error("causal region queried before its start tick");
    return c * (t - t0);
}

bool CausalRegion::contains(const Site& s, int t) const {
    if (t < t0) return false;
    return linf_distance(s, center, d) <= radius(t);
}

double unit_ball_volume(int d) {
    if (d < 1) throw Error("dimension must be >= 1");
    return std::pow(std::numbers::pi, d / 2.0) / std::tgamma(d / 2.0 + 1.0);
}

GeometryConstants geometry_constants(int d, double ell) {
    if (ell <= 0) throw Error("separation must be positive");
    double w = unit_ball_volume(d);
    return {w, d * w, ell};
}

double ball_volume(int d, double r) {
    if (r < 0) throw Error("radius must be non-negative");
    return unit_ball_volume(d) * std::pow(r, d);
}

double sphere_area(int d, double r) {
    if (r < 0) throw Error("radius must be non-negative");
    if (d == 1) return 2.0;
    return d * unit_ball_volume(d) * std::pow(r, d - 1);
}

std::int64_t robust_ceil(double x) {
    double nearest = std::round(x);
    if (std::abs(x - nearest) <= 1e-9 * std::max(1.0, std::abs(x))) return static_cast<std::int64_t>(nearest);
    return static_cast<std::int64_t>(std::ceil(x));
}

std::int64_t packing_capacity(int d, double r, double ell) {
    if (r < 0) throw Error("radius must be non-negative");
    if (ell <= 0) throw Error("separation must be positive");
    double ratio = ball_volume(d, r + ell / 2) / ball_volume(d, ell / 2);
    double nearest = std::round(ratio);
    if (std::abs(ratio - nearest) <= 1e-9 * std::max(1.0, ratio)) return static_cast<std::int64_t>(nearest);
    return static_cast<std::int64_t>(std::floor(ratio));
}

std::int64_t min_time_lower_bound(double n, int d, double K) {
    if (d == 1) {
        throw Error("min_time_lower_bound: d=1 has no width law; use the recurrent module for one-dimensional time");
    }
    if (d < 1) throw Error("dimension must be >= 2");
    if (n < 1) throw Error("input length must be >= 1");
    if (K <= 0) throw Error("width constant must be positive");
    double x = std::pow(n / K, 1.0 / (d - 1));
    return std::max<std::int64_t>(1, robust_ceil(x));
}

}  // namespace rclab
