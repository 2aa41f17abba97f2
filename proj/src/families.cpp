#include "rclab/families.hpp"

#include <algorithm>
#include <random>

#include "rclab/error.hpp"

namespace rclab {

namespace el = encoding_layout;

namespace {

// Parity-family id arithmetic. Heap node p >= 1 was created at growth step
// p-1, which appended INPUT at 7+5(p-1) followed by its four block NANDs.
constexpr GateId kCoreGates = 7;
constexpr GateId kOutputId = 6;

GateId input_id(int label) {  // 1-based input label
    if (label == 1) return 0;
    if (label == 2) return 1;
    return kCoreGates + 5 * static_cast<GateId>(label - 3);
}

GateId block_first(int node) {  // id of n1 in the block of an internal node
    if (node == 0) return 2;
    return kCoreGates + 5 * static_cast<GateId>(node - 1) + 1;
}

// Input label stored at a heap leaf (see build_parity_family).
int leaf_label(int node) {
    while (node > 0 && node % 2 == 1) node = (node - 1) / 2;
    return node == 0 ? 1 : node / 2 + 1;
}

bool is_power_of_two(int n) { return n > 0 && (n & (n - 1)) == 0; }

std::string_view record(const std::string& bytes, std::size_t n_feedback, GateId id) {
    std::size_t off = el::gate_record_offset(n_feedback, id);
    if (off + el::kGateRecordLen > bytes.size()) throw Error("extend_family: gate record out of range");
    return std::string_view(bytes).substr(off, el::kGateRecordLen);
}

GateId record_ref(std::string_view rec, int port) {
    return static_cast<GateId>(parse_id(rec.substr(el::kRefOffset[port], el::kIdWidth)));
}

bool record_is(std::string_view rec, std::string_view kind) {
    auto col = rec.substr(el::kKindOffset, el::kKindWidth);
    return col.substr(0, kind.size()) == kind &&
           col.find_first_not_of(' ', kind.size()) == std::string_view::npos;
}

void append_gate(std::string& bytes, GateId id, std::string_view kind, std::optional<GateId> a,
                 std::optional<GateId> b) {
    bytes += "gate ";
    bytes += format_id(id);
    bytes += ' ';
    std::string k(kind);
    k.resize(el::kKindWidth, ' ');
    bytes += k;
    bytes += ' ';
    bytes += a ? format_id(*a) : std::string("--------");
    bytes += ' ';
    bytes += b ? format_id(*b) : std::string("--------");
    bytes += '\n';
}

}  // namespace

std::string_view family_name(Family f) {
    switch (f) {
        case Family::Parity: return "parity";
        case Family::Disjointness: return "disj";
    }
    return "?";
}

std::optional<Family> parse_family(std::string_view name) {
    if (name == "parity") return Family::Parity;
    if (name == "disj") return Family::Disjointness;
    return std::nullopt;
}

Circuit build_parity_family(int n) {
    if (n < 2) throw Error("parity family needs n >= 2, got " + std::to_string(n));
    const GateId total = kCoreGates + 5 * static_cast<GateId>(n - 2);
    std::vector<Gate> gates(total);
    for (GateId i = 0; i < total; ++i) gates[i].id = i;

    auto signal_of = [n](int node) -> GateId {
        return node <= n - 2 ? block_first(node) + 3 : input_id(leaf_label(node));
    };
    for (int label = 1; label <= n; ++label) gates[input_id(label)].kind = GateKind::Input;
    for (int node = 0; node <= n - 2; ++node) {
        GateId a = signal_of(2 * node + 1);
        GateId b = signal_of(2 * node + 2);
        GateId n1 = block_first(node);
        gates[n1] = {n1, GateKind::Nand, {a, b}};
        gates[n1 + 1] = {n1 + 1, GateKind::Nand, {a, n1}};
        gates[n1 + 2] = {n1 + 2, GateKind::Nand, {b, n1}};
        gates[n1 + 3] = {n1 + 3, GateKind::Nand, {n1 + 1, n1 + 2}};
    }
    gates[kOutputId] = {kOutputId, GateKind::Output, {block_first(0) + 3}};
    return Circuit(std::move(gates), {});
}

Circuit build_parity_tree(int n) {
    if (n < 2 || !is_power_of_two(n)) {
        throw Error("parity tree needs a power of two >= 2, got " + std::to_string(n));
    }
    return build_parity_family(n);
}

Circuit build_disjointness(int m) {
    if (m < 1) throw Error("disjointness needs m >= 1");
    CircuitBuilder b;
    std::vector<GateId> x(m), y(m);
    for (auto& g : x) g = b.input();
    for (auto& g : y) g = b.input();
    // NAND(x_i, y_i) is 1 iff position i is not shared; DISJ is their AND.
    std::vector<GateId> level;
    for (int i = 0; i < m; ++i) level.push_back(b.nand(x[i], y[i]));
    while (level.size() > 1) {
        std::vector<GateId> next;
        for (std::size_t i = 0; i + 1 < level.size(); i += 2) next.push_back(b.and2(level[i], level[i + 1]));
        if (level.size() % 2 == 1) next.push_back(level.back());
        level = std::move(next);
    }
    b.output(level.front());
    return std::move(b).build();
}

Circuit build_family_member(Family f, int n) {
    switch (f) {
        case Family::Parity: return build_parity_family(n);
        case Family::Disjointness: return build_disjointness(n);
    }
    throw Error("unknown family");
}

EditStats extend_family_inplace(CircuitEncoding& enc, Family family) {
    if (family != Family::Parity) {
        throw Error("extend_family: no local extension for family " + std::string(family_name(family)));
    }
    std::string& bytes = enc.bytes;
    EditStats stats;
    const std::size_t header_end = el::gates_line_offset(0) + el::kGatesLineLen;
    if (bytes.size() < header_end) throw Error("extend_family: encoding too short");
    stats.bytes_read += header_end;

    auto field = [&](std::size_t off) { return parse_id(std::string_view(bytes).substr(off, el::kIdWidth)); };
    if (std::string_view(bytes).substr(0, el::kMagicLen) != "rclab-circuit v1\n") {
        throw Error("extend_family: not a circuit encoding");
    }
    const auto n = static_cast<int>(field(el::inputs_value_offset()));
    const auto n_outputs = field(el::kMagicLen + el::kInputsLineLen + 10);
    const auto n_feedback = field(el::kMagicLen + el::kInputsLineLen + el::kOutputsLineLen +
                                  el::kFanoutLineLen + 11);
    const auto n_gates = field(el::gates_value_offset(0));
    if (n < 2 || n_outputs != 1 || n_feedback != 0 ||
        n_gates != kCoreGates + 5 * static_cast<std::uint64_t>(n - 2) ||
        bytes.size() != el::gate_record_offset(0, n_gates)) {
        throw Error("extend_family: header does not describe a parity family member");
    }

    auto out_rec = record(bytes, 0, kOutputId);
    stats.bytes_read += out_rec.size();
    if (!record_is(out_rec, "OUTPUT") || record_ref(out_rec, 0) != block_first(0) + 3) {
        throw Error("extend_family: output record does not match the parity family");
    }

    // Split heap leaf p = n-1; its parent block q consumes the leaf's input.
    const int p = n - 1;
    const int q = (p - 1) / 2;
    const bool left = (p % 2) == 1;
    const GateId old_signal = input_id(leaf_label(p));
    const GateId q1 = block_first(q);
    // Slots of block q that carry the leaf: left -> n1.a, n2.a ; right -> n1.b, n3.a.
    const std::pair<GateId, int> slots[2] = {{q1, left ? 0 : 1}, {left ? q1 + 1 : q1 + 2, 0}};
    for (auto [gid, port] : slots) {
        auto rec = record(bytes, 0, gid);
        stats.bytes_read += rec.size();
        if (!record_is(rec, "NAND") || record_ref(rec, port) != old_signal) {
            throw Error("extend_family: block " + std::to_string(q) + " is not wired as a parity member");
        }
    }
    auto leaf_rec = record(bytes, 0, old_signal);
    stats.bytes_read += leaf_rec.size();
    if (!record_is(leaf_rec, "INPUT")) throw Error("extend_family: leaf signal is not an INPUT");

    const auto new_input = static_cast<GateId>(n_gates);
    const GateId b1 = new_input + 1;
    const GateId new_root = b1 + 3;
    for (auto [gid, port] : slots) {
        std::size_t off = el::gate_record_offset(0, gid) + el::kRefOffset[port];
        bytes.replace(off, el::kIdWidth, format_id(new_root));
        stats.bytes_written += el::kIdWidth;
    }
    const std::size_t before = bytes.size();
    append_gate(bytes, new_input, "INPUT", std::nullopt, std::nullopt);
    append_gate(bytes, b1, "NAND", old_signal, new_input);
    append_gate(bytes, b1 + 1, "NAND", old_signal, b1);
    append_gate(bytes, b1 + 2, "NAND", new_input, b1);
    append_gate(bytes, b1 + 3, "NAND", b1 + 1, b1 + 2);
    stats.bytes_written += bytes.size() - before;

    bytes.replace(el::inputs_value_offset(), el::kIdWidth, format_id(static_cast<std::uint64_t>(n + 1)));
    bytes.replace(el::gates_value_offset(0), el::kIdWidth, format_id(n_gates + 5));
    stats.bytes_written += 2 * el::kIdWidth;
    stats.n_before = n;
    stats.n_after = n + 1;
    return stats;
}

ExtendResult extend_family(const CircuitEncoding& enc, Family family) {
    ExtendResult r{enc, {}};
    r.stats = extend_family_inplace(r.encoding, family);
    return r;
}

namespace {

// Canonical relabelling: inputs keep their order, remaining gates are numbered
// by post-order DFS from the outputs, then any unreachable gates in id order.
std::vector<Gate> canonical_form(const Circuit& c) {
    const std::size_t n = c.size();
    std::vector<GateId> rename(n, UINT32_MAX);
    GateId next = 0;
    for (GateId g : c.inputs()) rename[g] = next++;
    std::vector<std::pair<GateId, std::size_t>> stack;
    auto visit = [&](GateId root) {
        if (rename[root] != UINT32_MAX) return;
        stack.push_back({root, 0});
        while (!stack.empty()) {
            auto& [g, child] = stack.back();
            const auto& ins = c.gate(g).inputs;
            if (child < ins.size()) {
                GateId in = ins[child++];
                if (rename[in] == UINT32_MAX) stack.push_back({in, 0});
            } else {
                if (rename[g] == UINT32_MAX) rename[g] = next++;
                stack.pop_back();
            }
        }
    };
    for (GateId o : c.outputs()) visit(o);
    for (GateId g = 0; g < n; ++g) visit(g);
    std::vector<Gate> out(n);
    for (const Gate& g : c.gates()) {
        Gate r{rename[g.id], g.kind, {}};
        for (GateId in : g.inputs) r.inputs.push_back(rename[in]);
        out[r.id] = std::move(r);
    }
    return out;
}

}  // namespace

bool structurally_equal(const Circuit& a, const Circuit& b) {
    if (a.size() != b.size() || a.n_inputs() != b.n_inputs() || a.n_outputs() != b.n_outputs() ||
        a.fanout_bound() != b.fanout_bound() || a.feedback_edges().size() != b.feedback_edges().size()) {
        return false;
    }
    if (!a.feedback_edges().empty()) return a == b;
    return canonical_form(a) == canonical_form(b);
}

Circuit random_dag(int n_inputs, int total_gates, std::uint64_t seed) {
    if (n_inputs < 1 || total_gates < n_inputs + 2) throw Error("random_dag: too few gates");
    std::mt19937_64 rng(seed);
    CircuitBuilder b;
    std::vector<int> uses;
    for (int i = 0; i < n_inputs; ++i) {
        b.input();
        uses.push_back(0);
    }
    const int n_outputs = total_gates - n_inputs >= 4 ? 2 : 1;
    const int n_nands = total_gates - n_inputs - n_outputs;
    auto pick = [&](std::size_t limit) {
        std::vector<GateId> open;
        for (GateId g = 0; g < limit; ++g) {
            if (uses[g] < kDefaultFanoutBound) open.push_back(g);
        }
        if (open.empty()) throw Error("random_dag: fan-out exhausted");
        return open[std::uniform_int_distribution<std::size_t>(0, open.size() - 1)(rng)];
    };
    for (int i = 0; i < n_nands; ++i) {
        GateId x = pick(b.size());
        ++uses[x];
        GateId y = pick(b.size());
        ++uses[y];
        b.nand(x, y);
        uses.push_back(0);
    }
    // Outputs tap the last NAND and, when present, a random earlier gate.
    const std::size_t before_outputs = b.size();
    GateId last = static_cast<GateId>(before_outputs - 1);
    while (last > 0 && uses[last] >= kDefaultFanoutBound) --last;
    ++uses[last];
    b.output(last);
    if (n_outputs == 2) {
        GateId other = pick(before_outputs - 1);
        ++uses[other];
        b.output(other);
    }
    return std::move(b).build();
}

}  // namespace rclab
