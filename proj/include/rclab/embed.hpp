#pragma once

/// @file embed.hpp
/// @brief Timed placement and routing of circuits on Z^d.
///
/// Model: L-infinity adjacency, signal speed c cells per tick, the causal
/// center at the origin and the clock starting at tick 0. A route for wire
/// (src, dst, port) is the sequence of sites the signal occupies; entry k is
/// occupied at tick firing_time(src) + ceil(k / c). Repeated entries are waits.
/// The route starts at the source site and ends at the destination site.

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "rclab/circuit.hpp"
#include "rclab/families.hpp"
#include "rclab/lattice.hpp"

namespace rclab {

using Path = std::vector<Site>;

struct Embedding {
    int d = 2;
    int c = 1;
    int congestion_cap = 1;
    std::vector<Site> placement;   ///< indexed by gate id
    std::vector<int> firing_time;  ///< indexed by gate id
    std::map<Wire, Path> routes;

    friend bool operator==(const Embedding&, const Embedding&) = default;
};

struct EmbeddingStats {
    int makespan = 0;         ///< T = max firing time
    int radius = 0;           ///< max L-infinity norm of a placed site
    std::size_t size = 0;     ///< gate count
    int max_crossings = 0;    ///< max over ticks of boundary_cut_profile
};

struct EmbedOptions {
    int c = 1;
    int congestion_cap = 1;
    int max_retries = 64;  ///< extra ticks of slack the router may spend on one wire
};

/// Tick at which path entry k is occupied, relative to the source firing time.
inline int path_tick_offset(std::size_t k, int c) { return static_cast<int>((k + c - 1) / c); }

/// Ticks a path needs: ceil((size - 1) / c).
int path_duration(const Path& p, int c);

/// Inserts BUF chains so every wire joins adjacent levels. Sources stay at level 0.
///
/// One chain is shared by all far consumers of a source, so fan-out never grows.
Circuit level_circuit(const Circuit& circuit);

/// True when every wire spans exactly one level.
bool is_leveled(const Circuit& circuit);

struct ShellEmbedding {
    Circuit circuit;  ///< the circuit that was embedded (leveled copy)
    Embedding embedding;
    int stride = 1;   ///< radial distance between consecutive layer shells
    int r0 = 0;       ///< shell radius of layer 0
};

/// Layer i on the L-infinity shell of radius r0 + i*stride, wires routed outward.
///
/// The stride is the smallest value for which every shell holds its layer;
/// r0 is 0 for a single-gate first layer and stride otherwise. The input must
/// already be leveled (see level_circuit). Throws Error when a layer cannot be
/// placed or a wire cannot be routed.
ShellEmbedding embed_layered_shells(const Circuit& leveled, int d, const EmbedOptions& opt = {});

/// level_circuit followed by embed_layered_shells.
ShellEmbedding embed_shells(const Circuit& circuit, int d, const EmbedOptions& opt = {});

/// Greedy placer: sources at the free sites nearest the center, every other gate
/// at the free site nearest the centroid of its predecessors, routed in level order.
///
/// `pinned` optionally fixes the site of some gates (index = gate id).
Embedding embed_greedy(const Circuit& circuit, int d, const EmbedOptions& opt = {},
                       const std::vector<std::optional<Site>>& pinned = {});

/// Every violated embedding invariant; empty iff valid.
///
/// Rules: shape, separation, causal, delay, missing_route, extra_route,
/// endpoints, adjacency, speed, congestion.
std::vector<Violation> verify_embedding(const Embedding& e, const Circuit& circuit);

/// Moves crossing the sphere r(t) = c*t at each tick t = 1..T.
///
/// A move at tick t from a to b crosses when exactly one of ||a|| < r(t),
/// ||b|| < r(t) holds.
std::vector<std::pair<int, int>> boundary_cut_profile(const Embedding& e);

/// Total number of route moves (consecutive entries that differ).
std::size_t total_route_moves(const Embedding& e);

EmbeddingStats embedding_stats(const Embedding& e);

enum class Placer { Shell, Greedy };
std::string_view placer_name(Placer p);
std::optional<Placer> parse_placer(std::string_view name);

struct SweepPoint {
    int n = 0;
    std::optional<EmbeddingStats> stats;  ///< empty when embedding failed
    BasisSummary basis;
    std::string error;
};

/// Embeds each family member and records its statistics; failures become gaps.
std::vector<SweepPoint> makespan_series(Family family, const std::vector<int>& sizes, int d, Placer placer,
                                        const EmbedOptions& opt = {}, int threads = 1);

/// Embed one family member with the chosen placer.
SweepPoint sweep_point(Family family, int n, int d, Placer placer, const EmbedOptions& opt = {});

}  // namespace rclab
