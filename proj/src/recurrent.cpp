#include "rclab/recurrent.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>

#include "rclab/error.hpp"

namespace rclab {

std::vector<std::string> TuringMachine::states() const {
    std::vector<std::string> out;
    auto add = [&](const std::string& s) {
        if (std::find(out.begin(), out.end(), s) == out.end()) out.push_back(s);
    };
    add(start);
    for (const auto& r : rules) {
        add(r.state);
        add(r.next);
    }
    for (const auto& h : halt) add(h);
    return out;
}

std::string TuringMachine::alphabet() const {
    std::string out(1, blank);
    auto add = [&](char ch) {
        if (out.find(ch) == std::string::npos) out.push_back(ch);
    };
    for (const auto& r : rules) {
        add(r.read);
        add(r.write);
    }
    return out;
}

bool TuringMachine::is_halt(const std::string& state) const {
    return std::find(halt.begin(), halt.end(), state) != halt.end();
}

void validate_tm(const TuringMachine& tm) {
    if (tm.start.empty()) throw Error("turing machine '" + tm.name + "' has no start state");
    std::map<std::pair<std::string, char>, const TmRule*> table;
    for (const auto& r : tm.rules) {
        if (tm.is_halt(r.state)) throw Error("rule out of halt state '" + r.state + "'");
        auto [it, fresh] = table.emplace(std::make_pair(r.state, r.read), &r);
        if (!fresh) {
            const TmRule& o = *it->second;
            if (o.next != r.next || o.write != r.write || o.move != r.move) {
                throw Error("nondeterministic table: two rules for (" + r.state + ", " + std::string(1, r.read) + ")");
            }
        }
    }
    const std::string sigma = tm.alphabet();
    for (const auto& q : tm.states()) {
        if (tm.is_halt(q)) continue;
        for (char ch : sigma) {
            if (!table.contains({q, ch})) {
                throw Error("transition table not total: no rule for (" + q + ", " + std::string(1, ch) + ")");
            }
        }
    }
}

namespace {

constexpr const char* kTmHeader = "rclab-tm v1";

char single_char(const std::string& tok, int line) {
    if (tok.size() != 1) throw Error("tm line " + std::to_string(line) + ": expected one symbol, got '" + tok + "'");
    return tok[0];
}

}  // namespace

TuringMachine parse_tm(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    bool header = false;
    TuringMachine tm;
    while (std::getline(in, line)) {
        ++lineno;
        if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        std::istringstream ls(line);
        std::vector<std::string> tok;
        for (std::string t; ls >> t;) tok.push_back(t);
        if (tok.empty()) continue;
        if (!header) {
            if (tok.size() != 2 || tok[0] + " " + tok[1] != kTmHeader) throw Error("missing 'rclab-tm v1' header");
            header = true;
            continue;
        }
        const std::string& key = tok[0];
        if (key == "name" && tok.size() == 2) {
            tm.name = tok[1];
        } else if (key == "blank" && tok.size() == 2) {
            tm.blank = single_char(tok[1], lineno);
        } else if (key == "start" && tok.size() == 2) {
            tm.start = tok[1];
        } else if (key == "halt" && tok.size() >= 2) {
            tm.halt.assign(tok.begin() + 1, tok.end());
        } else if (tok.size() == 6 && tok[2] == "->") {
            TmRule r;
            r.state = tok[0];
            r.read = single_char(tok[1], lineno);
            r.next = tok[3];
            r.write = single_char(tok[4], lineno);
            if (tok[5] == "L") {
                r.move = Move::L;
            } else if (tok[5] == "R") {
                r.move = Move::R;
            } else {
                throw Error("tm line " + std::to_string(lineno) + ": move must be L or R");
            }
            tm.rules.push_back(r);
        } else {
            throw Error("tm line " + std::to_string(lineno) + ": cannot parse '" + line + "'");
        }
    }
    if (!header) throw Error("missing 'rclab-tm v1' header");
    validate_tm(tm);
    return tm;
}

std::string tm_to_text(const TuringMachine& tm) {
    std::ostringstream out;
    out << kTmHeader << "\nname " << tm.name << "\nblank " << tm.blank << "\nstart " << tm.start << "\nhalt";
    for (const auto& h : tm.halt) out << ' ' << h;
    out << '\n';
    for (const auto& r : tm.rules) {
        out << r.state << ' ' << r.read << " -> " << r.next << ' ' << r.write << ' ' << (r.move == Move::L ? 'L' : 'R')
            << '\n';
    }
    return out.str();
}

std::vector<std::string> bundled_tm_names() { return {"unary-increment", "binary-increment", "bb3", "halt"}; }

TuringMachine bundled_tm(const std::string& name) {
    const char* text = nullptr;
    if (name == "unary-increment") {
        text = R"(rclab-tm v1
name unary-increment
blank _
start scan
halt done
scan 1 -> scan 1 R
scan _ -> done 1 R
)";
    } else if (name == "binary-increment") {
        // Most significant bit first; the head starts on it.
        text = R"(rclab-tm v1
name binary-increment
blank _
start right
halt done
right 0 -> right 0 R
right 1 -> right 1 R
right _ -> carry _ L
carry 1 -> carry 0 L
carry 0 -> done 1 L
carry _ -> done 1 L
)";
    } else if (name == "bb3") {
        text = R"(rclab-tm v1
name bb3
blank 0
start A
halt H
A 0 -> B 1 R
A 1 -> C 1 L
B 0 -> A 1 L
B 1 -> B 1 R
C 0 -> B 1 L
C 1 -> H 1 R
)";
    } else if (name == "halt") {
        text = R"(rclab-tm v1
name halt
blank _
start done
halt done
)";
    } else {
        throw Error("unknown bundled turing machine '" + name + "'");
    }
    return parse_tm(text);
}

TmConfig initial_config(const TuringMachine& tm, const std::string& input, int margin) {
    if (margin < 1) throw Error("margin must be at least 1");
    TmConfig cfg;
    cfg.tape = std::string(margin, tm.blank) + input + std::string(margin, tm.blank);
    cfg.head = margin;
    cfg.state = tm.start;
    cfg.halted = tm.is_halt(tm.start);
    return cfg;
}

void tm_step(const TuringMachine& tm, TmConfig& cfg) {
    if (cfg.halted) return;
    const char sym = cfg.tape.at(cfg.head);
    for (const auto& r : tm.rules) {
        if (r.state != cfg.state || r.read != sym) continue;
        const int to = cfg.head + (r.move == Move::L ? -1 : 1);
        if (to < 0 || to >= static_cast<int>(cfg.tape.size())) throw Error("tape overflow at step " + std::to_string(cfg.steps + 1));
        cfg.tape[cfg.head] = r.write;
        cfg.head = to;
        cfg.state = r.next;
        ++cfg.steps;
        cfg.halted = tm.is_halt(cfg.state);
        return;
    }
    throw Error("no rule for (" + cfg.state + ", " + std::string(1, sym) + ")");
}

int LocalRule::symbol_index(char ch) const {
    auto p = alphabet.find(ch);
    if (p == std::string::npos) throw Error("symbol '" + std::string(1, ch) + "' not in the tape alphabet");
    return static_cast<int>(p);
}

int LocalRule::state_index(const std::string& s) const {
    auto it = std::find(states.begin(), states.end(), s);
    if (it == states.end()) throw Error("unknown state '" + s + "'");
    return static_cast<int>(it - states.begin());
}

Cell local_update(const LocalRule& rule, const Cell& left, const Cell& self, const Cell& right) {
    const int k = static_cast<int>(rule.alphabet.size());
    Cell out{self.symbol, -1};
    if (self.head >= 0) {
        if (rule.halting[self.head]) return self;
        out.symbol = rule.write[self.head * k + self.symbol];
    }
    if (left.head >= 0 && !rule.halting[left.head]) {
        const int e = left.head * k + left.symbol;
        if (rule.move[e] == Move::R) out.head = rule.next[e];
    }
    if (right.head >= 0 && !rule.halting[right.head]) {
        const int e = right.head * k + right.symbol;
        if (rule.move[e] == Move::L) out.head = rule.next[e];
    }
    return out;
}

LocalRule compile_tm(const TuringMachine& tm) {
    validate_tm(tm);
    LocalRule rule;
    rule.states = tm.states();
    rule.alphabet = tm.alphabet();
    rule.blank = 0;
    const std::size_t n = rule.states.size() * rule.alphabet.size();
    rule.next.assign(n, 0);
    rule.write.assign(n, 0);
    rule.move.assign(n, Move::R);
    rule.halting.assign(rule.states.size(), 0);
    for (std::size_t q = 0; q < rule.states.size(); ++q) rule.halting[q] = tm.is_halt(rule.states[q]);
    for (const auto& r : tm.rules) {
        const auto e = rule.state_index(r.state) * rule.alphabet.size() + rule.symbol_index(r.read);
        rule.next[e] = rule.state_index(r.next);
        rule.write[e] = rule.symbol_index(r.write);
        rule.move[e] = r.move;
    }
    return rule;
}

LatticeAutomaton1D::LatticeAutomaton1D(LocalRule rule, std::vector<Cell> cells)
    : rule_(std::move(rule)), cells_(std::move(cells)) {
    if (head_count() != 1) throw Error("automaton needs exactly one head marker");
}

LatticeAutomaton1D LatticeAutomaton1D::from_config(const LocalRule& rule, const TmConfig& cfg) {
    std::vector<Cell> cells(cfg.tape.size());
    for (std::size_t i = 0; i < cells.size(); ++i) cells[i].symbol = rule.symbol_index(cfg.tape[i]);
    cells.at(cfg.head).head = rule.state_index(cfg.state);
    return LatticeAutomaton1D(rule, std::move(cells));
}

void LatticeAutomaton1D::step() {
    const Cell outside{rule_.blank, -1};
    const int n = static_cast<int>(cells_.size());
    const int k = static_cast<int>(rule_.alphabet.size());
    for (int edge : {0, n - 1}) {
        const Cell& c = cells_[edge];
        if (c.head < 0 || rule_.halting[c.head]) continue;
        const Move m = rule_.move[c.head * k + c.symbol];
        if ((edge == 0 && m == Move::L) || (edge == n - 1 && m == Move::R)) {
            throw Error("head leaves the lattice of " + std::to_string(n) + " cells at tick " + std::to_string(tick_ + 1));
        }
    }
    std::vector<Cell> next(cells_.size());
    for (int i = 0; i < n; ++i) {
        const Cell& l = i > 0 ? cells_[i - 1] : outside;
        const Cell& r = i + 1 < n ? cells_[i + 1] : outside;
        next[i] = local_update(rule_, l, cells_[i], r);
    }
    cells_ = std::move(next);
    ++tick_;
}

std::string LatticeAutomaton1D::tape() const {
    std::string s;
    s.reserve(cells_.size());
    for (const auto& c : cells_) s.push_back(rule_.alphabet.at(c.symbol));
    return s;
}

int LatticeAutomaton1D::head_count() const {
    return static_cast<int>(std::count_if(cells_.begin(), cells_.end(), [](const Cell& c) { return c.head >= 0; }));
}

std::optional<int> LatticeAutomaton1D::head_position() const {
    for (std::size_t i = 0; i < cells_.size(); ++i) {
        if (cells_[i].head >= 0) return static_cast<int>(i);
    }
    return std::nullopt;
}

bool LatticeAutomaton1D::halted() const {
    auto h = head_position();
    return h && rule_.halting[cells_[*h].head];
}

namespace {

bool same_config(const TmConfig& cfg, const LatticeAutomaton1D& a) {
    if (a.head_count() != 1) return false;
    auto h = a.head_position();
    return a.tape() == cfg.tape && *h == cfg.head && a.rule().states[a.cells()[*h].head] == cfg.state;
}

/// Cells spanned by the input and every head position within max_ticks steps.
int required_cells(const TuringMachine& tm, const std::string& input, int max_ticks) {
    std::map<long, char> tape;
    for (std::size_t i = 0; i < input.size(); ++i) tape[static_cast<long>(i)] = input[i];
    long head = 0, lo = 0, hi = std::max<long>(0, static_cast<long>(input.size()) - 1);
    std::string state = tm.start;
    for (int t = 0; t < max_ticks && !tm.is_halt(state); ++t) {
        auto it = tape.find(head);
        const char sym = it == tape.end() ? tm.blank : it->second;
        auto r = std::find_if(tm.rules.begin(), tm.rules.end(),
                              [&](const TmRule& x) { return x.state == state && x.read == sym; });
        tape[head] = r->write;
        head += r->move == Move::L ? -1 : 1;
        state = r->next;
        lo = std::min(lo, head);
        hi = std::max(hi, head);
    }
    return static_cast<int>(hi - lo + 1);
}

}  // namespace

LockstepReport run_lockstep(const TuringMachine& tm, const std::string& input, int max_ticks, int margin,
                            const LocalRule* rule_override, bool record_trace) {
    if (max_ticks < 0) throw Error("max_ticks must be non-negative");
    const LocalRule rule = rule_override ? *rule_override : compile_tm(tm);
    TmConfig cfg = initial_config(tm, input, margin);
    LatticeAutomaton1D automaton = LatticeAutomaton1D::from_config(rule, cfg);

    LockstepReport rep;
    auto record = [&] {
        if (record_trace) rep.trace.emplace_back(automaton.tick(), automaton.tape());
    };
    record();
    if (!same_config(cfg, automaton)) rep.divergence = 0;
    try {
        while (!rep.divergence && !cfg.halted && rep.ticks < max_ticks) {
            tm_step(tm, cfg);
            automaton.step();
            ++rep.ticks;
            record();
            if (!same_config(cfg, automaton) || automaton.halted() != cfg.halted) rep.divergence = rep.ticks;
        }
    } catch (const Error&) {
        const int lattice = static_cast<int>(cfg.tape.size());
        throw Error("tape overflow: lattice of " + std::to_string(lattice) + " cells is too small, " +
                    std::to_string(required_cells(tm, input, max_ticks)) + " cells are required");
    }
    rep.halted = cfg.halted;
    rep.final_tape = automaton.tape();
    return rep;
}

std::string trace_csv(const LockstepReport& report) {
    std::string out = "# rclab-tm-trace v1\ntick,tape\n";
    for (const auto& [t, tape] : report.trace) out += std::to_string(t) + "," + tape + "\n";
    return out;
}

namespace {

/// Position of each INPUT gate in the state vector, checked for one-to-one latching.
std::vector<std::pair<GateId, std::size_t>> latch_map(const Circuit& circuit) {
    std::map<GateId, std::size_t> slot;
    for (std::size_t i = 0; i < circuit.inputs().size(); ++i) slot[circuit.inputs()[i]] = i;
    std::vector<std::pair<GateId, std::size_t>> out;
    std::set<GateId> seen;
    for (const auto& fb : circuit.feedback_edges()) {
        auto it = slot.find(fb.dst);
        if (it == slot.end()) throw Error("feedback edge into non-INPUT gate " + std::to_string(fb.dst));
        if (!seen.insert(fb.dst).second) throw Error("INPUT gate " + std::to_string(fb.dst) + " latched twice");
        out.emplace_back(fb.src, it->second);
    }
    return out;
}

}  // namespace

int state_width(const Circuit& circuit) { return static_cast<int>(latch_map(circuit).size()); }

std::vector<std::vector<std::uint8_t>> run_recurrent(const Circuit& circuit, const std::vector<std::uint8_t>& state,
                                                     int ticks) {
    const auto latches = latch_map(circuit);
    if (static_cast<int>(latches.size()) != circuit.n_inputs()) {
        throw Error("every INPUT gate must be a feedback destination (" + std::to_string(latches.size()) + " of " +
                    std::to_string(circuit.n_inputs()) + ")");
    }
    if (state.size() != latches.size()) {
        throw Error("state width mismatch: got " + std::to_string(state.size()) + ", circuit has " +
                    std::to_string(latches.size()));
    }
    if (ticks < 0) throw Error("ticks must be non-negative");
    std::vector<std::vector<std::uint8_t>> trace{state};
    trace.reserve(ticks + 1);
    for (int t = 0; t < ticks; ++t) {
        auto values = evaluate_all(circuit, trace.back());
        std::vector<std::uint8_t> next(state.size());
        for (const auto& [src, slot] : latches) next[slot] = values[src];
        trace.push_back(std::move(next));
    }
    return trace;
}

}  // namespace rclab
