#include "rclab/circuit.hpp"

#include <algorithm>
#include <array>
#include <queue>

#include "rclab/error.hpp"

namespace rclab {

namespace {

constexpr std::array<std::string_view, 6> kKindNames = {"INPUT", "OUTPUT", "NAND",
                                                        "CONST0", "CONST1", "BUF"};

}  // namespace

int required_fanin(GateKind kind) {
    switch (kind) {
        case GateKind::Input:
        case GateKind::Const0:
        case GateKind::Const1:
            return 0;
        case GateKind::Output:
        case GateKind::Buf:
            return 1;
        case GateKind::Nand:
            return 2;
    }
    return 0;
}

std::string_view kind_name(GateKind kind) { return kKindNames[static_cast<std::size_t>(kind)]; }

std::optional<GateKind> parse_kind(std::string_view name) {
    for (std::size_t i = 0; i < kKindNames.size(); ++i) {
        if (kKindNames[i] == name) return static_cast<GateKind>(i);
    }
    return std::nullopt;
}

Circuit::Circuit(std::vector<Gate> gates, std::vector<FeedbackEdge> feedback, int fanout_bound)
    : gates_(std::move(gates)), feedback_(std::move(feedback)), fanout_bound_(fanout_bound) {
    std::sort(feedback_.begin(), feedback_.end());
    for (const Gate& g : gates_) {
        if (g.kind == GateKind::Input) inputs_.push_back(g.id);
        if (g.kind == GateKind::Output) outputs_.push_back(g.id);
    }
}

std::vector<Wire> Circuit::wires() const {
    std::vector<Wire> out;
    for (const Gate& g : gates_) {
        for (std::uint32_t p = 0; p < g.inputs.size(); ++p) out.push_back({g.inputs[p], g.id, p});
    }
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<std::vector<std::pair<GateId, std::uint32_t>>> Circuit::fanout_lists() const {
    std::vector<std::vector<std::pair<GateId, std::uint32_t>>> out(gates_.size());
    for (const Gate& g : gates_) {
        for (std::uint32_t p = 0; p < g.inputs.size(); ++p) {
            if (g.inputs[p] < gates_.size()) out[g.inputs[p]].emplace_back(g.id, p);
        }
    }
    return out;
}

std::vector<int> Circuit::fanout_counts() const {
    std::vector<int> out(gates_.size(), 0);
    for (const Gate& g : gates_) {
        for (GateId in : g.inputs) {
            if (in < gates_.size()) ++out[in];
        }
    }
    for (const FeedbackEdge& e : feedback_) {
        if (e.src < gates_.size()) ++out[e.src];
    }
    return out;
}

std::optional<std::vector<GateId>> Circuit::topological_order() const {
    const std::size_t n = gates_.size();
    std::vector<int> indegree(n, 0);
    for (const Gate& g : gates_) {
        for (GateId in : g.inputs) {
            if (in >= n) return std::nullopt;
        }
        indegree[g.id] = static_cast<int>(g.inputs.size());
    }
    auto users = fanout_lists();
    // Min-heap keeps the order deterministic: lowest ready id first.
    std::priority_queue<GateId, std::vector<GateId>, std::greater<>> ready;
    for (GateId i = 0; i < n; ++i) {
        if (indegree[i] == 0) ready.push(i);
    }
    std::vector<GateId> order;
    order.reserve(n);
    while (!ready.empty()) {
        GateId g = ready.top();
        ready.pop();
        order.push_back(g);
        for (auto [dst, port] : users[g]) {
            if (--indegree[dst] == 0) ready.push(dst);
        }
    }
    if (order.size() != n) return std::nullopt;
    return order;
}

std::vector<int> Circuit::levels() const {
    auto order = topological_order();
    if (!order) throw Error("levels: circuit has a combinational cycle");
    std::vector<int> level(gates_.size(), 0);
    for (GateId g : *order) {
        int lv = 0;
        for (GateId in : gates_[g].inputs) lv = std::max(lv, level[in] + 1);
        level[g] = lv;
    }
    return level;
}

int Circuit::depth() const {
    auto lv = levels();
    return lv.empty() ? 0 : *std::max_element(lv.begin(), lv.end());
}

GateId CircuitBuilder::xor2(GateId a, GateId b) {
    GateId n1 = nand(a, b);
    GateId n2 = nand(a, n1);
    GateId n3 = nand(b, n1);
    return nand(n2, n3);
}

GateId CircuitBuilder::add(GateKind kind, std::vector<GateId> inputs) {
    auto id = static_cast<GateId>(gates_.size());
    gates_.push_back(Gate{id, kind, std::move(inputs)});
    return id;
}

Circuit CircuitBuilder::build() && {
    return Circuit(std::move(gates_), std::move(feedback_), fanout_bound_);
}

Circuit CircuitBuilder::build() const& { return Circuit(gates_, feedback_, fanout_bound_); }

std::vector<Violation> validate(const Circuit& circuit) {
    std::vector<Violation> out;
    const auto& gates = circuit.gates();
    const std::size_t n = gates.size();

    if (circuit.fanout_bound() < 1) {
        out.push_back({0, "fanout_bound", "fanout bound must be positive"});
    }
    for (std::size_t i = 0; i < n; ++i) {
        const Gate& g = gates[i];
        if (g.id != i) {
            out.push_back({static_cast<GateId>(i), "dense_id",
                           "gate at index " + std::to_string(i) + " has id " + std::to_string(g.id)});
        }
        int want = required_fanin(g.kind);
        if (static_cast<int>(g.inputs.size()) != want) {
            out.push_back({g.id, "arity",
                           std::string(kind_name(g.kind)) + " needs " + std::to_string(want) +
                               " inputs, has " + std::to_string(g.inputs.size())});
        }
        for (GateId in : g.inputs) {
            if (in >= n) {
                out.push_back({g.id, "dangling_ref", "input " + std::to_string(in) + " does not exist"});
            } else if (gates[in].kind == GateKind::Output) {
                out.push_back({g.id, "output_as_input", "OUTPUT " + std::to_string(in) + " drives a gate"});
            }
        }
    }
    for (const FeedbackEdge& e : circuit.feedback_edges()) {
        if (e.src >= n || e.dst >= n) {
            out.push_back({e.src, "dangling_feedback",
                           "feedback " + std::to_string(e.src) + "->" + std::to_string(e.dst)});
            continue;
        }
        if (gates[e.dst].kind != GateKind::Input) {
            out.push_back({e.dst, "feedback_target", "feedback must latch into an INPUT gate"});
        }
    }
    bool refs_ok = std::none_of(out.begin(), out.end(),
                                [](const Violation& v) { return v.rule == "dangling_ref"; });
    if (refs_ok && !circuit.topological_order()) {
        out.push_back({0, "cycle", "graph without feedback edges is not acyclic"});
    }
    auto fanout = circuit.fanout_counts();
    for (std::size_t i = 0; i < n; ++i) {
        if (fanout[i] > circuit.fanout_bound()) {
            out.push_back({static_cast<GateId>(i), "fanout",
                           "fan-out " + std::to_string(fanout[i]) + " exceeds bound " +
                               std::to_string(circuit.fanout_bound())});
        }
    }
    return out;
}

std::vector<std::uint8_t> evaluate_all(const Circuit& circuit,
                                       const std::vector<std::uint8_t>& inputs) {
    if (static_cast<int>(inputs.size()) != circuit.n_inputs()) {
        throw Error("evaluate: expected " + std::to_string(circuit.n_inputs()) + " inputs, got " +
                    std::to_string(inputs.size()));
    }
    auto order = circuit.topological_order();
    if (!order) throw Error("evaluate: circuit has a combinational cycle");
    std::vector<std::uint8_t> value(circuit.size(), 0);
    std::size_t next_input = 0;
    std::vector<std::size_t> input_pos(circuit.size(), 0);
    for (GateId g : circuit.inputs()) input_pos[g] = next_input++;
    for (GateId id : *order) {
        const Gate& g = circuit.gate(id);
        switch (g.kind) {
            case GateKind::Input: value[id] = inputs[input_pos[id]] ? 1 : 0; break;
            case GateKind::Const0: value[id] = 0; break;
            case GateKind::Const1: value[id] = 1; break;
            case GateKind::Output:
            case GateKind::Buf: value[id] = value[g.inputs[0]]; break;
            case GateKind::Nand: value[id] = !(value[g.inputs[0]] && value[g.inputs[1]]); break;
        }
    }
    return value;
}

std::vector<std::uint8_t> evaluate(const Circuit& circuit, const std::vector<std::uint8_t>& inputs) {
    if (!circuit.feedback_edges().empty()) {
        throw Error("evaluate: circuit has feedback edges; use run_recurrent");
    }
    auto value = evaluate_all(circuit, inputs);
    std::vector<std::uint8_t> out;
    out.reserve(circuit.outputs().size());
    for (GateId g : circuit.outputs()) out.push_back(value[g]);
    return out;
}

BasisSummary summarize_basis(const Circuit& circuit) {
    BasisSummary s;
    s.fanout_bound = circuit.fanout_bound();
    for (const Gate& g : circuit.gates()) {
        if (static_cast<int>(g.inputs.size()) != required_fanin(g.kind)) s.all_in_basis = false;
        s.max_fanin = std::max(s.max_fanin, static_cast<int>(g.inputs.size()));
    }
    for (int f : circuit.fanout_counts()) s.max_fanout = std::max(s.max_fanout, f);
    return s;
}

}  // namespace rclab
