#pragma once

/// @file width.hpp
/// @brief Circuit width as a unit-capacity edge min-cut.
///
/// One wire carries one bit per tick, so the minimum number of wires whose
/// removal separates the sources from the sinks bounds the information rate
/// between them.

#include <cstdint>
#include <string_view>
#include <vector>

#include "rclab/circuit.hpp"

namespace rclab {

enum class CutMethod { MaxFlow, BruteForce };
std::string_view cut_method_name(CutMethod m);

struct CutReport {
    int value = 0;
    std::vector<Wire> witness;  ///< removing these wires disconnects sources from sinks
    CutMethod method = CutMethod::MaxFlow;
    std::vector<GateId> sources;
    std::vector<GateId> sinks;
};

/// Exact min cut by Dinic max flow. Throws Error when the sets overlap or one is empty.
CutReport cut_width(const Circuit& circuit, const std::vector<GateId>& sources, const std::vector<GateId>& sinks);

inline constexpr std::size_t kBruteForceMaxGates = 14;

/// Exhaustive search over wire subsets by increasing size, lexicographic within a size.
CutReport brute_force_cut(const Circuit& circuit, const std::vector<GateId>& sources,
                          const std::vector<GateId>& sinks);

/// True when no directed path joins a source to a sink once `removed` is deleted.
bool separates(const Circuit& circuit, const std::vector<Wire>& removed, const std::vector<GateId>& sources,
               const std::vector<GateId>& sinks);

/// The input-to-output cut: sources are the INPUT gates, sinks the OUTPUT gates.
CutReport input_output_cut(const Circuit& circuit);

/// True when toggling each input at a random assignment flips some output.
bool depends_on_all_inputs(const Circuit& circuit, std::uint64_t seed);

/// Ticks needed to push n bits through a cut of width w: ceil(n / w).
std::int64_t min_delivery_ticks(std::int64_t n, std::int64_t w);

}  // namespace rclab
