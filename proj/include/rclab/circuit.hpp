#pragma once

/// @file circuit.hpp
/// @brief Bounded fan-in Boolean circuits over the NAND basis.

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace rclab {

using GateId = std::uint32_t;

enum class GateKind : std::uint8_t { Input, Output, Nand, Const0, Const1, Buf };

/// Number of input references a gate of this kind carries.
int required_fanin(GateKind kind);

std::string_view kind_name(GateKind kind);
std::optional<GateKind> parse_kind(std::string_view name);

/// True for gates that lose information when they fire (NAND only).
inline bool is_irreversible(GateKind kind) { return kind == GateKind::Nand; }

struct Gate {
    GateId id = 0;
    GateKind kind = GateKind::Input;
    std::vector<GateId> inputs;

    friend bool operator==(const Gate&, const Gate&) = default;
};

/// Feedback edge: the value of `src` at tick t is latched into INPUT `dst` at tick t+1.
struct FeedbackEdge {
    GateId src = 0;
    GateId dst = 0;

    friend auto operator<=>(const FeedbackEdge&, const FeedbackEdge&) = default;
};

/// One wire of the circuit: the driver, the consumer, and the consumer's input port.
struct Wire {
    GateId src = 0;
    GateId dst = 0;
    std::uint32_t port = 0;

    friend auto operator<=>(const Wire&, const Wire&) = default;
};

struct Violation {
    GateId gate = 0;
    std::string rule;
    std::string detail;
};

inline constexpr int kDefaultFanoutBound = 4;

/// A Boolean DAG with optional feedback edges.
///
/// Gate ids are dense: gates[i].id == i. INPUT gates are numbered in id order
/// to give the input bit positions; OUTPUT gates likewise give the output order.
/// The value is immutable once built; use CircuitBuilder to construct one.
class Circuit {
public:
    Circuit() = default;
    Circuit(std::vector<Gate> gates, std::vector<FeedbackEdge> feedback,
            int fanout_bound = kDefaultFanoutBound);

    const std::vector<Gate>& gates() const { return gates_; }
    const Gate& gate(GateId id) const { return gates_.at(id); }
    std::size_t size() const { return gates_.size(); }
    const std::vector<FeedbackEdge>& feedback_edges() const { return feedback_; }
    int fanout_bound() const { return fanout_bound_; }

    int n_inputs() const { return static_cast<int>(inputs_.size()); }
    int n_outputs() const { return static_cast<int>(outputs_.size()); }
    const std::vector<GateId>& inputs() const { return inputs_; }
    const std::vector<GateId>& outputs() const { return outputs_; }

    /// Every wire, ordered by (src, dst, port).
    std::vector<Wire> wires() const;

    /// Consumers of each gate as (dst, port) pairs, in dst/port order.
    std::vector<std::vector<std::pair<GateId, std::uint32_t>>> fanout_lists() const;

    /// Uses as an input plus feedback out-edges.
    std::vector<int> fanout_counts() const;

    /// Topological order ignoring feedback edges; nullopt if a cycle remains.
    std::optional<std::vector<GateId>> topological_order() const;

    /// Longest path (in gates) from a source gate; sources sit at level 0.
    std::vector<int> levels() const;
    int depth() const;

    friend bool operator==(const Circuit&, const Circuit&) = default;

private:
    std::vector<Gate> gates_;
    std::vector<FeedbackEdge> feedback_;
    int fanout_bound_ = kDefaultFanoutBound;
    std::vector<GateId> inputs_;
    std::vector<GateId> outputs_;
};

class CircuitBuilder {
public:
    explicit CircuitBuilder(int fanout_bound = kDefaultFanoutBound) : fanout_bound_(fanout_bound) {}

    GateId input() { return add(GateKind::Input, {}); }
    GateId constant(bool value) { return add(value ? GateKind::Const1 : GateKind::Const0, {}); }
    GateId nand(GateId a, GateId b) { return add(GateKind::Nand, {a, b}); }
    GateId buf(GateId a) { return add(GateKind::Buf, {a}); }
    GateId output(GateId a) { return add(GateKind::Output, {a}); }
    void feedback(GateId src, GateId dst) { feedback_.push_back({src, dst}); }

    /// NOT, AND, XOR as NAND macros.
    GateId inv(GateId a) { return nand(a, a); }
    GateId and2(GateId a, GateId b) { return inv(nand(a, b)); }
    GateId xor2(GateId a, GateId b);

    GateId add(GateKind kind, std::vector<GateId> inputs);
    std::size_t size() const { return gates_.size(); }

    Circuit build() &&;
    Circuit build() const&;

private:
    int fanout_bound_;
    std::vector<Gate> gates_;
    std::vector<FeedbackEdge> feedback_;
};

/// All invariant violations; empty iff the circuit is well formed.
std::vector<Violation> validate(const Circuit& circuit);

/// Combinational evaluation. Rejects circuits with feedback edges.
std::vector<std::uint8_t> evaluate(const Circuit& circuit, const std::vector<std::uint8_t>& inputs);

/// Values of every gate for one input vector, feedback edges ignored.
std::vector<std::uint8_t> evaluate_all(const Circuit& circuit,
                                       const std::vector<std::uint8_t>& inputs);

/// Summary used by the gate-set constraint.
struct BasisSummary {
    bool all_in_basis = true;
    int max_fanin = 0;
    int max_fanout = 0;
    int fanout_bound = kDefaultFanoutBound;
};

BasisSummary summarize_basis(const Circuit& circuit);

}  // namespace rclab
