#pragma once

/// @file recurrent.hpp
/// @brief Turing machines compiled to 1D lattice automata, and feedback circuits iterated in time.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "rclab/circuit.hpp"

namespace rclab {

enum class Move : std::uint8_t { L, R };

struct TmRule {
    std::string state;
    char read = '_';
    std::string next;
    char write = '_';
    Move move = Move::R;
};

/// Single-tape deterministic TM. States and the alphabet are collected from
/// the rules plus start, halt and blank.
struct TuringMachine {
    std::string name;
    char blank = '_';
    std::string start;
    std::vector<std::string> halt;   ///< halting (accept/reject) states
    std::vector<TmRule> rules;

    std::vector<std::string> states() const;
    std::string alphabet() const;
    bool is_halt(const std::string& state) const;
};

/// Throws Error naming the first problem: conflicting rules, a rule out of a
/// halt state, a missing (state, symbol) entry for a non-halt state.
void validate_tm(const TuringMachine& tm);

/// Text format:
///   rclab-tm v1
///   name <name>
///   blank <char>
///   start <state>
///   halt <state> [<state> ...]
///   <state> <read> -> <next> <write> <L|R>
/// '#' starts a comment.
TuringMachine parse_tm(const std::string& text);
std::string tm_to_text(const TuringMachine& tm);

/// Bundled machines: "unary-increment", "binary-increment", "bb3", "halt".
std::vector<std::string> bundled_tm_names();
TuringMachine bundled_tm(const std::string& name);

/// Direct TM configuration on a fixed window of cells.
struct TmConfig {
    std::string tape;
    int head = 0;
    std::string state;
    int steps = 0;
    bool halted = false;
};

/// Head at the first input cell, `margin` blank cells on both sides.
TmConfig initial_config(const TuringMachine& tm, const std::string& input, int margin);

/// One direct step. Throws Error when the head leaves the window.
void tm_step(const TuringMachine& tm, TmConfig& cfg);

/// Index tables for the local update. Public so a fixture can corrupt an entry.
struct LocalRule {
    std::vector<std::string> states;
    std::string alphabet;
    std::vector<std::uint8_t> halting;  ///< per state
    /// Indexed by state * |alphabet| + symbol; unused for halting states.
    std::vector<int> next;
    std::vector<int> write;
    std::vector<Move> move;
    int blank = 0;

    int symbol_index(char ch) const;
    int state_index(const std::string& s) const;
};

struct Cell {
    int symbol = 0;
    int head = -1;  ///< state index when the head sits here, else -1

    friend bool operator==(const Cell&, const Cell&) = default;
};

/// Cell i after one tick, computed from cells i-1, i, i+1 only.
Cell local_update(const LocalRule& rule, const Cell& left, const Cell& self, const Cell& right);

/// Rejects nondeterministic or non-total tables (validate_tm).
LocalRule compile_tm(const TuringMachine& tm);

/// Fixed-size lattice. Cells outside the lattice read as blank without head.
class LatticeAutomaton1D {
public:
    LatticeAutomaton1D(LocalRule rule, std::vector<Cell> cells);

    static LatticeAutomaton1D from_config(const LocalRule& rule, const TmConfig& cfg);

    /// Throws Error when the head would leave the lattice.
    void step();

    const std::vector<Cell>& cells() const { return cells_; }
    const LocalRule& rule() const { return rule_; }
    int tick() const { return tick_; }
    std::string tape() const;
    int head_count() const;
    std::optional<int> head_position() const;
    bool halted() const;

private:
    LocalRule rule_;
    std::vector<Cell> cells_;
    int tick_ = 0;
};

struct LockstepReport {
    int ticks = 0;                 ///< steps executed by both
    bool halted = false;
    std::optional<int> divergence; ///< first tick whose configurations differ
    std::string final_tape;
    std::vector<std::pair<int, std::string>> trace;  ///< (tick, tape) when recorded
};

/// Runs the TM and its automaton side by side for up to max_ticks steps.
///
/// The lattice has the input plus `margin` cells on each side. Throws Error with
/// the required lattice size when the TM head runs off it. `rule_override`
/// replaces the compiled rule (used to inject faults).
LockstepReport run_lockstep(const TuringMachine& tm, const std::string& input, int max_ticks, int margin = 16,
                            const LocalRule* rule_override = nullptr, bool record_trace = false);

/// "# rclab-tm-trace v1" then tick,tape rows.
std::string trace_csv(const LockstepReport& report);

/// Number of state bits: INPUT gates written by feedback edges, in id order.
int state_width(const Circuit& circuit);

/// w(t+1) = F(w(t)) with feedback latching once per tick. The trace holds
/// w(0) .. w(ticks). Every INPUT gate must be a feedback destination.
std::vector<std::vector<std::uint8_t>> run_recurrent(const Circuit& circuit, const std::vector<std::uint8_t>& state,
                                                     int ticks);

}  // namespace rclab
