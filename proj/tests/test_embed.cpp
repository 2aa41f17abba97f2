#include <algorithm>

#include "doctest.h"
#include "rclab/embed.hpp"
#include "rclab/embed_io.hpp"
#include "rclab/error.hpp"
#include "rclab/geometry.hpp"

using namespace rclab;

namespace {

bool has_rule(const std::vector<Violation>& vs, const std::string& rule) {
    return std::any_of(vs.begin(), vs.end(), [&](const Violation& v) { return v.rule == rule; });
}

Circuit single_hop() {
    CircuitBuilder b;
    b.output(b.input());
    return std::move(b).build();
}

// Boundary crossings recounted directly from the definition, without the library helper.
std::size_t crossing_moves(const Embedding& e) {
    std::size_t n = 0;
    for (const auto& [w, p] : e.routes) {
        for (std::size_t k = 1; k < p.size(); ++k) {
            int t = e.firing_time[w.src] + static_cast<int>(k);
            int ra = linf_norm(p[k - 1], e.d), rb = linf_norm(p[k], e.d);
            n += (ra < t) != (rb < t);
        }
    }
    return n;
}

}  // namespace

TEST_CASE("leveling inserts buffer chains") {
    auto c = build_parity_tree(4);
    CHECK_FALSE(is_leveled(c));
    auto l = level_circuit(c);
    CHECK(is_leveled(l));
    CHECK(validate(l).empty());
    CHECK(l.depth() == c.depth());
    for (std::uint64_t w = 0; w < 16; ++w) {
        std::vector<std::uint8_t> in{std::uint8_t(w & 1), std::uint8_t(w >> 1 & 1), std::uint8_t(w >> 2 & 1),
                                     std::uint8_t(w >> 3 & 1)};
        CHECK(evaluate(l, in) == evaluate(c, in));
    }
    auto odd = build_parity_family(7);
    auto lo = level_circuit(odd);
    CHECK(is_leveled(lo));
    CHECK(summarize_basis(lo).max_fanout <= summarize_basis(odd).max_fanout);
}

TEST_CASE("shell embedding examples") {
    SUBCASE("parity_tree(8) in d=3") {
        auto sh = embed_shells(build_parity_tree(8), 3);
        CHECK(verify_embedding(sh.embedding, sh.circuit).empty());
        CHECK(embedding_stats(sh.embedding).makespan >= 9);
    }
    SUBCASE("single hop in d=2") {
        auto sh = embed_shells(single_hop(), 2);
        auto st = embedding_stats(sh.embedding);
        CHECK(st.makespan == 1);
        CHECK(st.radius == 1);
        auto prof = boundary_cut_profile(sh.embedding);
        REQUIRE(prof.size() == 1);
        CHECK(prof[0] == std::pair{1, 1});
    }
    SUBCASE("parity_tree(4) in d=2") {
        auto sh = embed_shells(build_parity_tree(4), 2);
        CHECK(verify_embedding(sh.embedding, sh.circuit).empty());
    }
    SUBCASE("unleveled input is rejected") { CHECK_THROWS_AS(embed_layered_shells(build_parity_tree(4), 2), Error); }
    SUBCASE("d=1 is rejected") { CHECK_THROWS_AS(embed_shells(build_parity_tree(4), 1), Error); }
}

TEST_CASE("greedy embedding examples") {
    auto c = build_parity_tree(16);
    auto e = embed_greedy(c, 2);
    CHECK(verify_embedding(e, c).empty());
    CHECK(embed_greedy(c, 2) == e);

    std::vector<Gate> one = {{0, GateKind::Const1, {}}};
    Circuit c1(one, {});
    auto e1 = embed_greedy(c1, 2);
    CHECK(e1.placement[0] == Site{});
    CHECK(embedding_stats(e1).makespan == 1);
}

TEST_CASE("verify_embedding catches hand-built faults") {
    CircuitBuilder b;
    GateId x = b.input();
    GateId o = b.output(x);
    Circuit c = std::move(b).build();
    Embedding e;
    e.d = 2;
    e.placement = {Site{}, Site{5, 0}};
    e.firing_time = {0, 3};
    e.routes[{x, o, 0}] = {Site{0, 0}, Site{1, 0}, Site{2, 0}, Site{3, 0}, Site{4, 0}, Site{5, 0}};
    auto vs = verify_embedding(e, c);
    CHECK(has_rule(vs, "speed"));
    CHECK(has_rule(vs, "causal"));

    e.firing_time = {0, 5};
    CHECK(verify_embedding(e, c).empty());

    e.placement[1] = Site{};
    e.routes[{x, o, 0}] = {Site{}};
    CHECK(has_rule(verify_embedding(e, c), "separation"));
}

TEST_CASE("verify_embedding: delay, adjacency, congestion, missing routes") {
    CircuitBuilder b;
    GateId x = b.input(), y = b.input();
    GateId g1 = b.inv(x), g2 = b.inv(y);
    Circuit c = std::move(b).build();
    Embedding e;
    e.d = 2;
    e.placement = {Site{-1, 0}, Site{1, 0}, Site{-1, 3}, Site{1, 3}};
    e.firing_time = {1, 1, 4, 4};
    // Both signals pass (0,1) at tick 2.
    e.routes[{x, g1, 0}] = {Site{-1, 0}, Site{0, 1}, Site{-1, 2}, Site{-1, 3}};
    e.routes[{x, g1, 1}] = {Site{-1, 0}, Site{-1, 1}, Site{-1, 2}, Site{-1, 3}};
    e.routes[{y, g2, 0}] = {Site{1, 0}, Site{0, 1}, Site{1, 2}, Site{1, 3}};
    e.routes[{y, g2, 1}] = {Site{1, 0}, Site{1, 1}, Site{1, 2}, Site{1, 3}};
    auto vs = verify_embedding(e, c);
    CHECK(has_rule(vs, "congestion"));
    e.congestion_cap = 2;
    CHECK(verify_embedding(e, c).empty());

    e.firing_time[2] = 1;
    CHECK(has_rule(verify_embedding(e, c), "delay"));
    e.firing_time[2] = 4;
    e.routes[{x, g1, 1}] = {Site{-1, 0}, Site{-1, 3}};
    CHECK(has_rule(verify_embedding(e, c), "adjacency"));
    e.routes.erase({x, g1, 1});
    CHECK(has_rule(verify_embedding(e, c), "missing_route"));
}

TEST_CASE("embedding invariants across placers and dimensions") {
    for (int d = 2; d <= 3; ++d) {
        for (int n : {3, 8, 16, 21}) {
            auto c = build_parity_family(n);
            auto sh = embed_shells(c, d);
            auto g = embed_greedy(c, d);
            for (const auto* pair : {&sh.embedding, &g}) {
                const Circuit& circ = pair == &g ? c : sh.circuit;
                REQUIRE(verify_embedding(*pair, circ).empty());
                auto st = embedding_stats(*pair);
                CHECK(static_cast<std::int64_t>(st.size) <= packing_capacity(d, st.radius, 1));
                std::size_t sum = 0;
                for (auto [t, k] : boundary_cut_profile(*pair)) sum += k;
                CHECK(sum == crossing_moves(*pair));
                CHECK(total_route_moves(*pair) >= sum);
            }
        }
    }
}

TEST_CASE("random DAGs embed validly with the greedy placer") {
    for (std::uint64_t seed = 0; seed < 30; ++seed) {
        auto c = random_dag(4, 30, seed);
        auto e = embed_greedy(c, 2);
        CHECK(verify_embedding(e, c).empty());
    }
}

TEST_CASE("cut profile respects the shell envelope") {
    auto sh = embed_shells(build_parity_tree(8), 2);
    auto prof = boundary_cut_profile(sh.embedding);
    double C = 0;
    for (auto [t, k] : prof) C = std::max(C, static_cast<double>(k) / t);
    for (auto [t, k] : prof) CHECK(k <= C * t + 1e-9);
    // Crossings at tick t land on distinct cells of the radius-t shell, except at endpoint sites.
    int io = sh.circuit.n_inputs() + sh.circuit.n_outputs();
    for (auto [t, k] : prof) CHECK(k <= shell_capacity(2, t) * sh.embedding.congestion_cap + io + 1);
}

TEST_CASE("routes that stay inside the sphere do not cross it") {
    CircuitBuilder b;
    GateId x = b.input();
    GateId g = b.inv(x);
    Circuit c = std::move(b).build();
    Embedding e;
    e.d = 2;
    e.placement = {Site{}, Site{1, 0}};
    e.firing_time = {0, 3};
    e.routes[{x, g, 0}] = {Site{}, Site{}, Site{}, Site{1, 0}};
    e.routes[{x, g, 1}] = {Site{}, Site{}, Site{}, Site{1, 0}};
    REQUIRE(verify_embedding(e, c).empty());
    auto prof = boundary_cut_profile(e);
    CHECK(prof == std::vector<std::pair<int, int>>{{1, 0}, {2, 0}, {3, 0}});
}

TEST_CASE("makespan series") {
    auto s2 = makespan_series(Family::Parity, {8, 16, 32}, 2, Placer::Shell);
    auto s3 = makespan_series(Family::Parity, {8, 16, 32}, 3, Placer::Shell, {}, 3);
    for (std::size_t i = 0; i < s2.size(); ++i) {
        REQUIRE(s2[i].stats);
        REQUIRE(s3[i].stats);
        CHECK(s3[i].stats->makespan <= s2[i].stats->makespan);
        if (i) CHECK(s2[i].stats->makespan >= s2[i - 1].stats->makespan);
    }
    double K = 0;
    for (const auto& p : s2) K = std::max(K, p.n / static_cast<double>(p.stats->makespan));
    for (const auto& p : s2) CHECK(p.stats->makespan >= min_time_lower_bound(p.n, 2, K));
    CHECK_THROWS_AS(makespan_series(Family::Parity, {16, 8}, 2, Placer::Shell), Error);
    auto again = makespan_series(Family::Parity, {8, 16, 32}, 3, Placer::Shell);
    for (std::size_t i = 0; i < s3.size(); ++i) CHECK(again[i].stats->makespan == s3[i].stats->makespan);
}

TEST_CASE("embedding file round trip") {
    auto sh = embed_shells(build_parity_tree(4), 2);
    auto text = embedding_to_text(sh.embedding);
    CHECK(text.rfind("rclab-embedding v1\n", 0) == 0);
    CHECK(embedding_from_text(text) == sh.embedding);
    CHECK_THROWS_AS(embedding_from_text("{}"), Error);
    auto csv = sweep_csv(makespan_series(Family::Parity, {4, 8}, 2, Placer::Shell));
    CHECK(csv.rfind("# rclab-sweep v1\n", 0) == 0);
}
