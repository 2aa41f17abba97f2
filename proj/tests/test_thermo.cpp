#include <cmath>
#include <random>

#include "doctest.h"
#include "rclab/error.hpp"
#include "rclab/families.hpp"
#include "rclab/thermo.hpp"

using namespace rclab;

namespace {

double h2(double p) { return p <= 0 || p >= 1 ? 0.0 : -p * std::log2(p) - (1 - p) * std::log2(1 - p); }

FiniteDistribution random_distribution(std::mt19937_64& rng) {
    std::uniform_int_distribution<int> nv(1, 4), al(1, 4);
    std::exponential_distribution<double> ex(1.0);
    std::bernoulli_distribution sparse(0.3);
    FiniteDistribution d;
    d.n_vars = nv(rng);
    d.alphabet = al(rng);
    std::size_t n = 1;
    for (int i = 0; i < d.n_vars; ++i) n *= d.alphabet;
    double sum = 0;
    for (std::size_t k = 0; k < n; ++k) {
        double w = sparse(rng) ? 0.0 : ex(rng);
        d.probs.push_back(w);
        sum += w;
    }
    if (sum == 0) {
        d.probs[0] = 1;
        sum = 1;
    }
    for (auto& p : d.probs) p /= sum;
    return d;
}

}  // namespace

TEST_CASE("joint entropy examples") {
    CHECK(joint_entropy(FiniteDistribution::uniform(2, 2)) == doctest::Approx(2.0).epsilon(1e-12));
    CHECK(joint_entropy({1, 4, {0, 1, 0, 0}}) == 0.0);
    CHECK(joint_entropy({1, 3, {0.5, 0.25, 0.25}}) == doctest::Approx(1.5).epsilon(1e-12));
    CHECK_THROWS_AS(joint_entropy({1, 2, {0.5, 0.4}}), Error);
    CHECK_THROWS_AS(joint_entropy({1, 2, {1.5, -0.5}}), Error);
    CHECK_THROWS_AS(joint_entropy({2, 2, {0.5, 0.5}}), Error);
}

TEST_CASE("marginal entropies examples") {
    auto ind = marginal_entropies(FiniteDistribution::uniform(2, 2));
    CHECK(ind[0] == doctest::Approx(1.0));
    CHECK(ind[1] == doctest::Approx(1.0));
    // Outcomes 00 and 11 only.
    auto cor = marginal_entropies({2, 2, {0.5, 0, 0, 0.5}});
    CHECK(cor[0] == doctest::Approx(1.0));
    CHECK(cor[1] == doctest::Approx(1.0));
    auto det = marginal_entropies({2, 2, {0, 0, 1, 0}});
    CHECK(det[0] == 0.0);
    CHECK(det[1] == 0.0);
}

TEST_CASE("triangle check: equality iff independence") {
    auto ind = triangle_check(FiniteDistribution::uniform(2, 2));
    CHECK(ind.holds);
    CHECK(ind.equality);
    auto cor = triangle_check({2, 2, {0.5, 0, 0, 0.5}});
    CHECK(cor.holds);
    CHECK_FALSE(cor.equality);
    CHECK(cor.joint == doctest::Approx(1.0));
    CHECK(cor.marginal_sum == doctest::Approx(2.0));

    // Product of two arbitrary marginals is independent.
    std::vector<double> a = {0.2, 0.8}, b = {0.1, 0.6, 0.3};
    FiniteDistribution prod{2, 3, std::vector<double>(9, 0.0)};
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 3; ++j) prod.probs[i * 3 + j] = a[i] * b[j];
    CHECK(triangle_check(prod).equality);
}

TEST_CASE("triangle inequality on 1000 random distributions") {
    std::mt19937_64 rng(42);
    for (int k = 0; k < 1000; ++k) {
        auto d = random_distribution(rng);
        auto r = triangle_check(d);
        REQUIRE(r.holds);
        // Also never below the largest marginal.
        for (double h : marginal_entropies(d)) REQUIRE(r.joint >= h - 1e-9);
    }
}

TEST_CASE("single NAND info-theoretic erasure") {
    CircuitBuilder b;
    GateId x = b.input(), y = b.input();
    GateId n = b.nand(x, y);
    b.output(n);
    auto c = std::move(b).build();
    // Oracle: 4 equiprobable input pairs; the output is 0 only for (1,1).
    double p0 = 0;
    for (int v = 0; v < 4; ++v) p0 += ((v & 1) && (v >> 1)) ? 0.25 : 0.0;
    const double expect = 2.0 - h2(p0);
    auto L = erasures_from_trace(c, ErasureRule::InfoTheoretic);
    CHECK(L.per_gate[n] == doctest::Approx(expect).epsilon(1e-12));
    CHECK(L.per_gate[n] == doctest::Approx(1.1887).epsilon(1e-4));
    CHECK(L.total() == doctest::Approx(expect).epsilon(1e-12));
    CHECK(erasures_from_trace(c).total() == 1.0);
}

TEST_CASE("buffers and wires erase nothing") {
    CircuitBuilder b;
    GateId x = b.input();
    b.output(b.buf(b.buf(x)));
    auto c = std::move(b).build();
    CHECK(erasures_from_trace(c).total() == 0.0);
    CHECK(erasures_from_trace(c, ErasureRule::InfoTheoretic).total() == 0.0);
}

TEST_CASE("parity_tree(4) conservative count follows the block structure") {
    auto c = build_parity_tree(4);
    int nands = 0;
    for (const auto& g : c.gates()) nands += g.kind == GateKind::Nand;
    auto L = erasures_from_trace(c);
    CHECK(L.total() == nands);
    CHECK(L.total() == 3 * 4);  // 3 XOR blocks, 4 NAND firings each
    for (std::size_t t = 1; t < L.cumulative.size(); ++t) CHECK(L.cumulative[t] >= L.cumulative[t - 1]);
}

TEST_CASE("info-theoretic per-gate erasure lies in [0, fan-in]") {
    for (std::uint64_t seed = 0; seed < 60; ++seed) {
        auto c = random_dag(4, 14, seed);
        auto all = erasures_from_trace(c, ErasureRule::InfoTheoretic);
        auto s = InputSet::sampled(4, 37, seed);
        auto sampled = erasures_from_trace(c, ErasureRule::InfoTheoretic, &s);
        for (const auto& g : c.gates()) {
            REQUIRE(all.per_gate[g.id] >= 0.0);
            REQUIRE(all.per_gate[g.id] <= g.inputs.size() + 1e-12);
            REQUIRE(sampled.per_gate[g.id] <= g.inputs.size() + 1e-12);
        }
        for (std::size_t t = 1; t < all.cumulative.size(); ++t) REQUIRE(all.cumulative[t] >= all.cumulative[t - 1]);
    }
}

TEST_CASE("erasure accounting rejects feedback circuits") {
    CircuitBuilder b;
    GateId s = b.input();
    GateId o = b.output(b.inv(s));
    b.feedback(o, s);
    CHECK_THROWS_AS(erasures_from_trace(std::move(b).build()), Error);
}

TEST_CASE("rate budget examples") {
    CHECK(erasure_rate_budget(10, 3, 1) == doctest::Approx(100));
    for (int d = 1; d <= 4; ++d) CHECK(erasure_rate_budget(1, d, 2.5) == doctest::Approx(2.5));
    CHECK(erasure_rate_budget(1, 1, 3) == erasure_rate_budget(1000, 1, 3));
    CHECK_THROWS_AS(erasure_rate_budget(10, 3, 1, 0.0), Error);
    CHECK_THROWS_AS(erasure_rate_budget(10, 3, 1, -4.0), Error);
    CHECK_THROWS_AS(erasure_rate_budget(0.5, 3, 1), Error);
    // SI: one bit at 300 K costs k_B * 300 * ln 2 joules.
    const double joule_per_bit = 1.380649e-23 * 300 * std::log(2.0);
    CHECK(erasure_rate_budget(1, 2, 1e-20, 300.0) == doctest::Approx(1e-20 / joule_per_bit).epsilon(1e-12));
}

TEST_CASE("cumulative budget examples and quadrature") {
    CHECK(erasure_cumulative_budget(10, 3, 3) == doctest::Approx(1000));
    CHECK(erasure_cumulative_budget(1, 2, 2) == doctest::Approx(1));
    for (int d = 1; d <= 4; ++d) {
        // Midpoint rule on the rate, independent of the closed form.
        const double T = 100;
        const int steps = 200000;
        double sum = 0;
        for (int i = 0; i < steps; ++i) {
            const double t = (i + 0.5) * T / steps;
            sum += 1.7 * std::pow(t, d - 1) * (T / steps);
        }
        CHECK(erasure_cumulative_budget(T, d, 1.7) == doctest::Approx(sum).epsilon(1e-3));
    }
}

TEST_CASE("discrete sum of the rate tracks the cumulative budget") {
    // sum_{t<=T} t^(d-1) exceeds T^d/d by about (d/2)/T relatively, so the 2%
    // window starts at T = 50 for d <= 2 and at T = 100 for d = 3.
    auto rel = [](int T, int d) {
        double s = 0;
        for (int t = 1; t <= T; ++t) s += erasure_rate_budget(t, d, 1);
        const double c = erasure_cumulative_budget(T, d, 1);
        return std::abs(s - c) / c;
    };
    for (int T = 50; T <= 500; T += 10) {
        CHECK(rel(T, 1) <= 0.02 + 1e-12);
        CHECK(rel(T, 2) <= 0.02 + 1e-12);
    }
    for (int T = 100; T <= 500; T += 10) CHECK(rel(T, 3) <= 0.02);
    CHECK(rel(50, 3) > 0.02);  // outside the window
}

TEST_CASE("ledger csv") {
    auto L = erasures_from_trace(build_parity_tree(2), ErasureRule::Conservative, nullptr, 2, 1.0);
    CHECK(ledger_csv(L) == "# rclab-erasure v1\ntick,erased,cumulative,budget\n1,1,1,1\n2,2,3,2\n3,1,4,3\n4,0,4,4\n");
    CHECK(parse_erasure_rule("info-theoretic") == ErasureRule::InfoTheoretic);
    CHECK_FALSE(parse_erasure_rule("x"));
}
