#pragma once

/// @file flux.hpp
/// @brief Volume-preserving token flows on a lattice box and their flux through a moving ball.
///
/// Tokens sit on the sites of [-L, L]^d with at most rho_max tokens per site.
/// Each tick the flow rule proposes one move per token; the accepted moves
/// form a partial matching of sites, so the token count never changes. The
/// ball B(t) = { x : |x|_inf <= r(t) }, r(t) = r0 + c_ball * t.
///
/// Two counter pairs are kept per tick t -> t+1:
///  - crossings_in / crossings_out: tokens whose membership changes between
///    B(t) before the move and B(t+1) after it (the moving-boundary flux);
///  - flow_in / flow_out: moves that cross the fixed sphere of radius r(t).

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "rclab/lattice.hpp"

namespace rclab {

enum class FlowRule { Zero, RadialOut, RadialIn, RandomWalk, Rotation, Drift };

std::string_view flow_rule_name(FlowRule r);
std::optional<FlowRule> parse_flow_rule(std::string_view name);

enum class FillKind { Empty, Uniform, Ball, Tokens };

struct FluxConfig {
    int d = 2;
    int extent = 20;  ///< L: the box is [-L, L]^d
    int rho_max = 1;
    int c_flow = 1;   ///< max L-infinity move per tick
    int c_ball = 1;   ///< ball growth per tick, 0 <= c_ball <= c_flow
    int r0 = 0;
    FlowRule rule = FlowRule::Zero;
    std::uint64_t seed = 1;  ///< drives rule randomness and uniform fills

    FillKind fill = FillKind::Empty;
    double density = 0.5;    ///< Uniform: probability that a site holds one token
    int fill_radius = 0;     ///< Ball: every site with norm <= fill_radius holds rho_max tokens
    std::vector<Site> tokens;  ///< Tokens: explicit positions (repeats allowed up to rho_max)
};

struct FluxState {
    FluxConfig config;
    int tick = 0;
    std::vector<Site> tokens;
    std::vector<int> occupancy;  ///< per box site, row-major
    std::int64_t total_in = 0;
    std::int64_t total_out = 0;
    std::int64_t total_flow_in = 0;
    std::int64_t total_flow_out = 0;
    std::int64_t total_blocked = 0;

    int radius() const { return config.r0 + config.c_ball * tick; }
    int occupancy_at(const Site& s) const;
    bool in_box(const Site& s) const;
};

struct FluxRow {
    int t = 0;  ///< tick at the start of the step
    int r = 0;  ///< r(t)
    std::int64_t crossings_in = 0;
    std::int64_t crossings_out = 0;
    std::int64_t flow_in = 0;
    std::int64_t flow_out = 0;
    std::int64_t blocked = 0;
    double bound = 0;  ///< rho_max (c_flow + c_ball) * area

    std::int64_t net() const { return crossings_in - crossings_out; }
    std::int64_t flow_net() const { return flow_in - flow_out; }
};

struct FluxTrace {
    std::vector<FluxRow> rows;
    FluxState final_state;
};

/// Discrete sphere area used by the bound: the site count of the L-infinity
/// shell at the outer edge r + c_flow + c_ball of the band tokens can cross from.
double flux_bound(const FluxConfig& cfg, int r);

/// Validates the configuration and places the initial tokens.
FluxState make_flux_state(const FluxConfig& cfg);

/// One tick; `row` (if given) receives this tick's counters.
FluxState step(const FluxState& state, FluxRow* row = nullptr);

FluxTrace run_flux(const FluxConfig& cfg, int T);

/// "# rclab-flux v1" header then t,r,in,out,flow_in,flow_out,blocked,bound rows.
std::string flux_csv(const FluxTrace& trace);

struct AchievabilityResult {
    std::vector<int> ticks;
    std::vector<std::int64_t> crossings;
    std::vector<double> bound;
    std::vector<double> fraction;
    double min_fraction = 0;     ///< over t in [T/2, T]
    double threshold = 0;        ///< 1 - eps - slack
    double slack = 0.1;          ///< lattice allowance: discrete shell vs continuum area
    double fitted_exponent = 0;  ///< crossings vs t over [T/2, T]
    bool pass = false;
};

/// Fills the band of shells r(t)+1 .. r(t)+c_flow+c_ball just outside the ball,
/// moves it radially inward for one tick and compares the inflow to the bound.
/// The band is reseeded at every tick t = 1..T.
AchievabilityResult annulus_achievability(int d, double eps, int T, int c_ball = 1, int r0 = 0, int rho_max = 1);

}  // namespace rclab
