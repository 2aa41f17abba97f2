#include <algorithm>
#include <map>
#include <random>

#include "doctest.h"
#include "rclab/error.hpp"
#include "rclab/recurrent.hpp"

using namespace rclab;

namespace {

/// Independent TM interpreter on an unbounded tape.
struct OracleRun {
    std::map<long, char> tape;
    long head = 0;
    std::string state;
    int steps = 0;
};

OracleRun oracle_run(const TuringMachine& tm, const std::string& input, int max_steps) {
    OracleRun o;
    for (std::size_t i = 0; i < input.size(); ++i) o.tape[static_cast<long>(i)] = input[i];
    o.state = tm.start;
    while (o.steps < max_steps && !tm.is_halt(o.state)) {
        const char sym = o.tape.contains(o.head) ? o.tape[o.head] : tm.blank;
        const TmRule* hit = nullptr;
        for (const auto& r : tm.rules) {
            if (r.state == o.state && r.read == sym) hit = &r;
        }
        REQUIRE(hit != nullptr);
        o.tape[o.head] = hit->write;
        o.head += hit->move == Move::L ? -1 : 1;
        o.state = hit->next;
        ++o.steps;
    }
    return o;
}

std::string strip(const std::string& s, char blank) {
    auto a = s.find_first_not_of(blank);
    if (a == std::string::npos) return "";
    return s.substr(a, s.find_last_not_of(blank) - a + 1);
}

std::string oracle_tape(const OracleRun& o, char blank) {
    std::string s;
    if (o.tape.empty()) return s;
    for (long i = o.tape.begin()->first; i <= o.tape.rbegin()->first; ++i) {
        s.push_back(o.tape.contains(i) ? o.tape.at(i) : blank);
    }
    return strip(s, blank);
}

TuringMachine random_tm(std::mt19937_64& rng) {
    TuringMachine tm;
    tm.name = "random";
    tm.blank = '0';
    tm.start = "q0";
    tm.halt = {"h"};
    const std::vector<std::string> qs = {"q0", "q1", "q2"};
    for (const auto& q : qs) {
        for (char ch : {'0', '1'}) {
            TmRule r{q, ch, qs[rng() % 3], static_cast<char>('0' + rng() % 2), rng() % 2 ? Move::L : Move::R};
            if (rng() % 12 == 0) r.next = "h";
            tm.rules.push_back(r);
        }
    }
    return tm;
}

}  // namespace

TEST_CASE("unary increment appends a 1") {
    auto tm = bundled_tm("unary-increment");
    auto rep = run_lockstep(tm, "111", 100);
    CHECK_FALSE(rep.divergence);
    CHECK(rep.halted);
    CHECK(strip(rep.final_tape, '_') == oracle_tape(oracle_run(tm, "111", 100), '_'));
    CHECK(strip(rep.final_tape, '_') == "1111");
}

TEST_CASE("immediate halt is a fixed point at tick 0") {
    auto tm = bundled_tm("halt");
    auto rep = run_lockstep(tm, "", 10, 2);
    CHECK(rep.ticks == 0);
    CHECK(rep.halted);
    CHECK_FALSE(rep.divergence);

    auto rule = compile_tm(tm);
    auto a = LatticeAutomaton1D::from_config(rule, initial_config(tm, "", 2));
    auto before = a.cells();
    a.step();
    CHECK(a.cells() == before);
}

TEST_CASE("busy beaver matches the direct run at every tick") {
    auto tm = bundled_tm("bb3");
    auto o = oracle_run(tm, "", 1000);
    CHECK(o.steps == 13);
    auto rep = run_lockstep(tm, "", 1000, 16, nullptr, true);
    CHECK(rep.ticks == o.steps);
    CHECK(rep.halted);
    CHECK_FALSE(rep.divergence);
    CHECK(std::count(rep.final_tape.begin(), rep.final_tape.end(), '1') == 6);
    CHECK(strip(rep.final_tape, '0') == oracle_tape(o, '0'));

    // Every recorded tape agrees with the oracle truncated to that tick.
    for (const auto& [t, tape] : rep.trace) {
        CHECK(strip(tape, '0') == oracle_tape(oracle_run(tm, "", t), '0'));
    }
}

TEST_CASE("binary increment adds one") {
    auto tm = bundled_tm("binary-increment");
    for (unsigned v = 0; v < 300; ++v) {
        std::string in;
        for (unsigned x = v; x > 0; x >>= 1) in.insert(in.begin(), static_cast<char>('0' + (x & 1)));
        if (in.empty()) in = "0";
        auto rep = run_lockstep(tm, in, 10000, 2);
        REQUIRE_FALSE(rep.divergence);
        REQUIRE(rep.halted);
        unsigned out = 0;
        for (char ch : strip(rep.final_tape, '_')) out = out * 2 + static_cast<unsigned>(ch - '0');
        CHECK(out == v + 1);
    }
}

TEST_CASE("lockstep on bundled machines, tapes up to 64 cells") {
    for (int k = 0; k <= 64; ++k) {
        auto rep = run_lockstep(bundled_tm("unary-increment"), std::string(k, '1'), 10000);
        REQUIRE_FALSE(rep.divergence);
        CHECK(rep.ticks == k + 1);
    }
    std::mt19937_64 rng(7);
    for (int trial = 0; trial < 40; ++trial) {
        std::string in(1 + rng() % 64, '0');
        for (auto& ch : in) ch = static_cast<char>('0' + rng() % 2);
        in[0] = '1';
        REQUIRE_FALSE(run_lockstep(bundled_tm("binary-increment"), in, 10000, 2).divergence);
    }
    CHECK_FALSE(run_lockstep(bundled_tm("bb3"), "", 10000).divergence);
    CHECK_FALSE(run_lockstep(bundled_tm("halt"), "", 10000).divergence);
}

TEST_CASE("corrupted rule diverges at tick 1") {
    auto tm = bundled_tm("unary-increment");
    auto rule = compile_tm(tm);
    const auto e = rule.state_index("scan") * rule.alphabet.size() + rule.symbol_index('1');
    rule.write[e] = rule.symbol_index('_');
    auto rep = run_lockstep(tm, "111", 100, 16, &rule);
    REQUIRE(rep.divergence);
    CHECK(*rep.divergence == 1);
}

TEST_CASE("tape overflow names the required lattice size") {
    auto tm = bundled_tm("unary-increment");
    try {
        run_lockstep(tm, "111", 100, 1);
        FAIL("expected overflow");
    } catch (const Error& e) {
        // Input cells 0..2, the 1 is written at cell 3 and the head halts on cell 4.
        CHECK(std::string(e.what()).find("5 cells are required") != std::string::npos);
    }
}

TEST_CASE("invalid machines are rejected") {
    auto tm = bundled_tm("unary-increment");
    auto conflict = tm;
    conflict.rules.push_back({"scan", '1', "done", '1', Move::L});
    CHECK_THROWS_AS(compile_tm(conflict), Error);
    auto partial = tm;
    partial.rules.pop_back();
    CHECK_THROWS_AS(compile_tm(partial), Error);
    CHECK_THROWS_AS(parse_tm("name x\n"), Error);
    CHECK_THROWS_AS(bundled_tm("nope"), Error);
    CHECK_THROWS_AS(parse_tm("rclab-tm v1\nstart a\nhalt h\na 0 -> h 1 X\n"), Error);
}

TEST_CASE("tm text round trip") {
    for (const auto& name : bundled_tm_names()) {
        auto tm = bundled_tm(name);
        auto back = parse_tm(tm_to_text(tm));
        CHECK(tm_to_text(back) == tm_to_text(tm));
        CHECK(back.start == tm.start);
        CHECK(back.rules.size() == tm.rules.size());
    }
    auto rep = run_lockstep(bundled_tm("unary-increment"), "1", 10, 2, nullptr, true);
    CHECK(trace_csv(rep) == "# rclab-tm-trace v1\ntick,tape\n0,__1__\n1,__1__\n2,__11_\n");
}

TEST_CASE("locality: a sentinel outside the window has no effect") {
    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 200; ++trial) {
        auto tm = random_tm(rng);
        auto rule = compile_tm(tm);
        std::string in(20, '0');
        for (auto& ch : in) ch = static_cast<char>('0' + rng() % 2);
        auto cfg = initial_config(tm, in, 4);
        auto a = LatticeAutomaton1D::from_config(rule, cfg);
        auto cells = a.cells();
        const int j = static_cast<int>(rng() % cells.size());
        if (std::abs(j - cfg.head) <= 1) continue;
        cells[j].symbol ^= 1;  // sentinel
        LatticeAutomaton1D b(rule, cells);
        try {
            a.step();
            b.step();
        } catch (const Error&) {
            continue;
        }
        for (int i = 0; i < static_cast<int>(cells.size()); ++i) {
            if (std::abs(i - j) > 1) REQUIRE(a.cells()[i] == b.cells()[i]);
        }
    }
}

TEST_CASE("head marker stays unique over random runs") {
    std::mt19937_64 rng(5);
    int ticks = 0;
    for (int trial = 0; trial < 100 && ticks < 1000; ++trial) {
        auto tm = random_tm(rng);
        auto a = LatticeAutomaton1D::from_config(compile_tm(tm), initial_config(tm, "", 40));
        for (int t = 0; t < 60 && !a.halted(); ++t) {
            try {
                a.step();
            } catch (const Error&) {
                break;
            }
            ++ticks;
            REQUIRE(a.head_count() == 1);
        }
    }
    CHECK(ticks >= 1000);
}

TEST_CASE("run_recurrent examples") {
    SUBCASE("identity feedback holds its value") {
        CircuitBuilder b;
        GateId x = b.input();
        GateId o = b.output(x);
        b.feedback(o, x);
        auto c = std::move(b).build();
        for (std::uint8_t v : {0, 1}) {
            auto tr = run_recurrent(c, {v}, 10);
            CHECK(tr.size() == 11);
            for (const auto& w : tr) CHECK(w[0] == v);
        }
    }
    SUBCASE("NOT feedback alternates") {
        CircuitBuilder b;
        GateId x = b.input();
        GateId o = b.output(b.inv(x));
        b.feedback(o, x);
        auto tr = run_recurrent(std::move(b).build(), {0}, 8);
        for (std::size_t t = 0; t < tr.size(); ++t) CHECK(tr[t][0] == t % 2);
    }
    SUBCASE("width mismatch and missing latch rejected") {
        CircuitBuilder b;
        GateId x = b.input();
        GateId o = b.output(x);
        b.feedback(o, x);
        CHECK_THROWS_AS(run_recurrent(std::move(b).build(), {0, 1}, 3), Error);
        CircuitBuilder u;
        u.output(u.input());
        CHECK_THROWS_AS(run_recurrent(std::move(u).build(), {}, 3), Error);
    }
}

TEST_CASE("3-bit shift register period matches the state-graph oracle") {
    // s0' = s1, s1' = s2, s2' = s0 xor s1
    CircuitBuilder b;
    GateId s0 = b.input(), s1 = b.input(), s2 = b.input();
    GateId x = b.xor2(s0, s1);
    b.output(x);
    b.feedback(s1, s0);
    b.feedback(s2, s1);
    b.feedback(x, s2);
    auto c = std::move(b).build();
    CHECK(state_width(c) == 3);

    auto next = [](unsigned w) {
        unsigned a = w & 1, bb = (w >> 1) & 1, cc = (w >> 2) & 1;
        return bb | (cc << 1) | ((a ^ bb) << 2);
    };
    for (unsigned seed = 0; seed < 8; ++seed) {
        // Oracle: walk the 8-node state graph until a state repeats.
        std::map<unsigned, int> seen;
        unsigned w = seed;
        int t = 0;
        while (!seen.contains(w)) {
            seen[w] = t++;
            w = next(w);
        }
        const int period = t - seen[w];

        auto tr = run_recurrent(c, {static_cast<std::uint8_t>(seed & 1), static_cast<std::uint8_t>((seed >> 1) & 1),
                                    static_cast<std::uint8_t>((seed >> 2) & 1)},
                                20);
        int measured = 0;
        for (int p = 1; p <= 8 && !measured; ++p) {
            if (tr[10 + p] == tr[10]) measured = p;
        }
        CHECK(measured == period);
        CHECK(period == (seed == 0 ? 1 : 7));
    }
}
