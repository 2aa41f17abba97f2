#include <algorithm>
#include <cmath>
#include <numbers>
#include <set>

#include "doctest.h"
#include "rclab/error.hpp"
#include "rclab/geometry.hpp"
#include "rclab/lattice.hpp"

using namespace rclab;

namespace {

// Closed forms by parity of d, independent of the Gamma-function implementation.
double omega_closed_form(int d) {
    const double pi = std::numbers::pi;
    if (d % 2 == 0) {
        int k = d / 2;
        double f = 1;
        for (int i = 2; i <= k; ++i) f *= i;
        return std::pow(pi, k) / f;
    }
    int k = (d - 1) / 2;
    double num = std::pow(2.0, 2 * k + 1) * std::pow(pi, k);
    double kf = 1, df = 1;
    for (int i = 2; i <= k; ++i) kf *= i;
    for (int i = 2; i <= 2 * k + 1; ++i) df *= i;
    return num * kf / df;
}

// Greedy count of Z^2 points inside the Euclidean radius-r disk; they are pairwise >= 1 apart.
std::int64_t lattice_points_in_disk(int r) {
    std::int64_t n = 0;
    for (int x = -r; x <= r; ++x) {
        for (int y = -r; y <= r; ++y) n += x * x + y * y <= r * r;
    }
    return n;
}

}  // namespace

TEST_CASE("ball_volume examples") {
    CHECK(ball_volume(2, 3) == doctest::Approx(9 * std::numbers::pi).epsilon(1e-12));
    CHECK(ball_volume(2, 3) == doctest::Approx(28.2743).epsilon(1e-5));
    CHECK(ball_volume(3, 1) == doctest::Approx(4 * std::numbers::pi / 3).epsilon(1e-12));
    CHECK(ball_volume(1, 5) == doctest::Approx(10).epsilon(1e-12));
}

TEST_CASE("unit ball coefficients match closed forms for d <= 8") {
    for (int d = 1; d <= 8; ++d) {
        auto g = geometry_constants(d);
        CHECK(std::abs(g.omega_d - omega_closed_form(d)) <= 1e-12 * omega_closed_form(d));
        CHECK(std::abs(g.omega_dm1 - d * omega_closed_form(d)) <= 1e-12 * d * omega_closed_form(d));
    }
}

TEST_CASE("sphere_area examples") {
    CHECK(sphere_area(3, 2) == doctest::Approx(16 * std::numbers::pi).epsilon(1e-12));
    CHECK(sphere_area(2, 1) == doctest::Approx(2 * std::numbers::pi).epsilon(1e-12));
    CHECK(sphere_area(1, 7) == 2.0);
    // Central finite difference of the volume.
    const double h = 1e-4;
    double fd = (ball_volume(3, 10 + h) - ball_volume(3, 10 - h)) / (2 * h);
    CHECK(std::abs(fd - sphere_area(3, 10)) <= 1e-6 * sphere_area(3, 10));
}

TEST_CASE("sphere area integrates to ball volume") {
    for (int d = 2; d <= 5; ++d) {
        const double R = 3.0;
        const int steps = 10000;
        double sum = 0;
        for (int i = 0; i < steps; ++i) sum += sphere_area(d, (i + 0.5) * R / steps) * (R / steps);
        CHECK(std::abs(sum - ball_volume(d, R)) <= 1e-4 * ball_volume(d, R));
    }
}

TEST_CASE("packing_capacity") {
    CHECK(packing_capacity(1, 5, 1) == 11);
    CHECK(packing_capacity(2, 0, 1) == 1);
    CHECK(packing_capacity(2, 3, 1) >= lattice_points_in_disk(3));
    for (int r = 0; r <= 20; ++r) {
        CHECK(packing_capacity(2, r, 1) >= lattice_points_in_disk(r));
        // Every L-infinity lattice ball fits the Euclidean packing figure exactly.
        for (int d = 1; d <= 4; ++d) CHECK(packing_capacity(d, r, 1) >= ball_site_count(d, r));
    }
}

TEST_CASE("min_time_lower_bound examples and errors") {
    CHECK(min_time_lower_bound(1024, 3, 1) == 32);
    CHECK(min_time_lower_bound(1024, 2, 1) == 1024);
    CHECK(min_time_lower_bound(1000, 4, 1) == 10);
    CHECK_THROWS_AS(min_time_lower_bound(10, 1, 1), Error);
    CHECK_THROWS_AS(min_time_lower_bound(0, 2, 1), Error);
    CHECK_THROWS_AS(min_time_lower_bound(10, 2, 0), Error);
}

TEST_CASE("min time is monotone in dimension") {
    for (double n : {1.0, 2.0, 7.0, 100.0, 1000.0, 12345.0, 1e6}) {
        for (int d = 2; d <= 7; ++d) CHECK(min_time_lower_bound(n, d + 1, 1) <= min_time_lower_bound(n, d, 1));
    }
    for (int d = 2; d <= 7; ++d) CHECK(min_time_lower_bound(1e6, d + 1, 1) < min_time_lower_bound(1e6, d, 1));
}

TEST_CASE("speed-up degree identity") {
    for (double n = 1; n <= 5000; n += 13) {
        for (int d = 2; d <= 5; ++d) {
            double t1 = n;
            auto expect = static_cast<std::int64_t>(std::ceil(std::pow(t1, 1.0 / (d - 1)) - 1e-9));
            CHECK(min_time_lower_bound(n, d, 1) == expect);
        }
    }
}

TEST_CASE("causal region membership") {
    CausalRegion reg{Site{}, 2, 1, 2};
    CHECK(reg.radius(2) == 0);
    CHECK(reg.radius(5) == 3);
    CHECK(reg.contains(Site{3, -3}, 5));
    CHECK_FALSE(reg.contains(Site{4, 0}, 5));
    CHECK_FALSE(reg.contains(Site{}, 1));
}

TEST_CASE("lattice shells") {
    for (int d = 1; d <= 4; ++d) {
        std::int64_t total = 0;
        for (int r = 0; r <= 4; ++r) {
            auto s = shell_sites(d, r);
            CHECK(static_cast<std::int64_t>(s.size()) == shell_capacity(d, r));
            for (const auto& x : s) CHECK(linf_norm(x, d) == r);
            CHECK(std::set<Site>(s.begin(), s.end()).size() == s.size());
            CHECK(std::is_sorted(s.begin(), s.end()));
            total += static_cast<std::int64_t>(s.size());
        }
        CHECK(total == ball_site_count(d, 4));
    }
    CHECK(shell_capacity(2, 1) == 8);
    CHECK(shell_capacity(3, 1) == 26);
}
