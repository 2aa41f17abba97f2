#include <cmath>

#include "doctest.h"
#include "rclab/checker.hpp"
#include "rclab/error.hpp"
#include "rclab/geometry.hpp"

using namespace rclab;

namespace {

SweepRow synthetic(int n, int T, std::size_t size, int cut) {
    SweepRow r;
    r.n = n;
    r.stats.makespan = T;
    r.stats.size = size;
    r.stats.max_crossings = cut;
    r.stats.radius = T;
    r.basis.max_fanin = 2;
    r.basis.max_fanout = 2;
    return r;
}

// Integer scan oracle: last n in [2, limit] where (log2 n)^p >= n, plus one.
std::int64_t scan_threshold(int p, std::int64_t n0, std::int64_t limit) {
    std::int64_t last_fail = 1;
    for (std::int64_t n = 2; n <= limit; ++n) {
        if (std::pow(std::log2(static_cast<long double>(n)), p) >= n) last_fail = n;
    }
    return std::max(last_fail + 1, n0);
}

}  // namespace

TEST_CASE("fit_scaling_exponent examples") {
    auto sq = fit_scaling_exponent({{2, 4}, {4, 16}, {8, 64}});
    CHECK(sq.slope == doctest::Approx(2.0).epsilon(1e-12));
    CHECK(sq.r2 == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(fit_scaling_exponent({{1, 5}, {10, 5}, {100, 5}}).slope == doctest::Approx(0.0));
    CHECK(fit_scaling_exponent({{2, 2}, {4, 4}, {8, 8}}).slope == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(std::exp(sq.intercept) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK_THROWS_AS(fit_scaling_exponent({{1, 1}, {2, 0}, {3, 1}}), Error);
    CHECK_THROWS_AS(fit_scaling_exponent({{1, 1}, {2, 2}}), Error);
    CHECK_THROWS_AS(fit_scaling_exponent({{1, 1}, {1, 2}, {3, 3}}), Error);
}

TEST_CASE("check_rc on shell-embedded parity sweeps") {
    const std::vector<int> sizes = {8, 16, 32, 64, 128, 256};
    for (int d = 2; d <= 3; ++d) {
        auto rows = rows_from_series(makespan_series(Family::Parity, sizes, d, Placer::Shell, {}, 4));
        REQUIRE(rows.size() == sizes.size());
        auto rep = check_rc(rows, d);
        CHECK(rep.gates.pass);
        CHECK(rep.size.pass);
        CHECK(rep.width.pass);
        CHECK(rep.min_time.pass);
        CHECK(rep.size.fitted_exponent <= d + 0.15);
        CHECK(rep.width.fitted_exponent <= d - 1 + 0.15);
        CHECK(report_text(rep) == report_text(check_rc(rows, d)));
    }
}

TEST_CASE("check_rc rejects a super-volume size law") {
    for (int d = 2; d <= 3; ++d) {
        std::vector<SweepRow> rows;
        for (int T : {4, 8, 16, 32}) {
            rows.push_back(synthetic(T, T, static_cast<std::size_t>(std::pow(T, d + 1)), 1));
        }
        auto rep = check_rc(rows, d);
        CHECK_FALSE(rep.size.pass);
        CHECK(rep.size.fitted_exponent == doctest::Approx(d + 1).epsilon(1e-9));
        CHECK_FALSE(rep.pass());
    }
    CHECK_THROWS_AS(check_rc({synthetic(1, 1, 1, 1), synthetic(2, 2, 2, 1)}, 2), Error);
}

TEST_CASE("check_rc flags broken fan-out") {
    std::vector<SweepRow> rows = {synthetic(4, 4, 16, 2), synthetic(8, 8, 64, 4), synthetic(16, 16, 256, 8)};
    rows[1].basis.max_fanout = 9;
    CHECK_FALSE(check_rc(rows, 2).gates.pass);
}

TEST_CASE("min-time verdict uses the sweep's own constant") {
    std::vector<SweepRow> rows = {synthetic(10, 5, 50, 2), synthetic(40, 10, 200, 4), synthetic(160, 20, 800, 8)};
    auto rep = check_rc(rows, 3);
    CHECK(rep.min_time.K_fit == doctest::Approx(0.4));
    CHECK(rep.min_time.pass);
    for (std::size_t i = 0; i < rows.size(); ++i) {
        CHECK(rep.min_time.bounds[i] == min_time_lower_bound(rows[i].n, 3, rep.min_time.K_fit));
    }
}

TEST_CASE("strictness_witness") {
    CHECK(strictness_witness(2, 1, 2).n == 2);
    CHECK(strictness_witness(3, 1, 2).n == 17);
    CHECK(strictness_witness(2, 2, 2).n == 17);
    CHECK(strictness_witness(3, 1, 100).n == 100);
    for (int d = 2; d <= 4; ++d) {
        for (int k = 1; k <= 2; ++k) {
            int p = k * (d - 1);
            if (p > 4) continue;
            CHECK(strictness_witness(d, k, 2).n == scan_threshold(p, 2, 200000));
        }
    }
    auto w = strictness_witness(4, 3, 2);
    CHECK(w.budget < static_cast<double>(w.n));
    CHECK_FALSE(w.explanation.empty());
}

TEST_CASE("greedy makespan grows near-linearly in n at d=2") {
    auto rows = rows_from_series(makespan_series(Family::Parity, {8, 16, 32, 64, 128, 256}, 2, Placer::Greedy, {}, 4));
    REQUIRE(rows.size() == 6);
    std::vector<std::pair<double, double>> pts;
    for (const auto& r : rows) pts.emplace_back(r.n, r.stats.makespan);
    auto fit = fit_scaling_exponent(pts);
    MESSAGE("greedy d=2 makespan exponent: " << fit.slope);
    CHECK(fit.slope >= 1.0 / (2 - 1) - 0.1);
}
